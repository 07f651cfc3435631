//! Writes every shipped corpus document: `cargo run --example export_corpus [dir]`.

use qgroupoid::{corpus, format};

fn main() -> std::io::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "corpus".into());
    std::fs::create_dir_all(&dir)?;
    for (stem, doc) in corpus::documents() {
        std::fs::write(format!("{dir}/{stem}.json"), format::emit(&doc))?;
    }
    Ok(())
}
