//! Write the sample problem documents to a directory and run each one.
//!
//!     cargo run --example documents -- /tmp/lmhodge-docs
//!     lmhodge rmf /tmp/lmhodge-docs/rmf-elliptic.json

use lmhodge::corpus::sample_documents;
use lmhodge::document::run;

fn main() -> std::io::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "documents".into());
    std::fs::create_dir_all(&dir)?;
    for (name, doc) in sample_documents() {
        std::fs::write(format!("{dir}/{name}.json"), doc.to_json() + "\n")?;
        match run(&doc) {
            Ok(r) => println!("{name:24} {:?}", r.verdict),
            Err(e) => println!("{name:24} error: {e}"),
        }
    }
    Ok(())
}
