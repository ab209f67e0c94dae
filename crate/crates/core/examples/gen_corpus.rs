//! Regenerates the serialized corpus files from their programmatic
//! constructors: `cargo run -p trb-core --example gen_corpus`

use trb_core::corpus;

fn main() {
    let dir = corpus::corpus_dir();
    std::fs::create_dir_all(&dir).expect("create corpus dir");
    for entry in corpus::corpus() {
        let path = dir.join(format!("{}.json", entry.name));
        let text = entry
            .instance
            .to_canonical_string()
            .expect("serialize corpus instance");
        std::fs::write(&path, text).expect("write corpus file");
        println!("wrote {}", path.display());
    }
}
