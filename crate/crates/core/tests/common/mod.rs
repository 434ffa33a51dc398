#![allow(dead_code)]

use std::path::PathBuf;

use framelex::Store;

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/fn17-mini")
}

pub fn open() -> Store {
    Store::open(fixture_dir()).expect("fixture opens")
}

/// One-set LU file around a single sentence, for hand-built cases.
pub fn lu_file(text: &str, layers: &str) -> String {
    format!(
        r#"<?xml version="1.0" encoding="UTF-8"?>
<lexUnit ID="900" name="test.n" frame="Test" frameID="90" POS="N" status="Finished_Initial"
         xmlns="http://framenet.icsi.berkeley.edu">
  <subCorpus name="manual">
    <sentence ID="1" sentNo="0" aPos="0">
      <text>{text}</text>
      <annotationSet ID="10" status="UNANN"/>
      <annotationSet ID="11" status="MANUAL">{layers}</annotationSet>
    </sentence>
  </subCorpus>
</lexUnit>"#
    )
}
