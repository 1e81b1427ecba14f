//! Regenerates the bundled corpus files from the catalog.
//!
//! Run with `cargo run -p corner --example write_corpus`.

use std::path::Path;

use corner::corpus;
use corner::io::emit_spec;

fn main() -> std::io::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    for name in corpus::names() {
        let doc = corpus::reference(name).expect("every bundled name has a reference document");
        std::fs::write(dir.join(format!("{name}.json")), emit_spec(&doc))?;
        println!("wrote {name}.json");
    }
    Ok(())
}
