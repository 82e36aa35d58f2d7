//! Read and write contexts and concept listings.
//!
//! `cargo run --example file_formats`

use polyadic::enumeration::enumerate_concepts;
use polyadic::io::{parse_concepts_json, parse_context, serialize_concepts, serialize_context, ConceptFormat};
use polyadic::Result;

const TEXT: &str = "\
# two objects, two colours, two sizes
NCTX 1 3
sizes 2 2 2
labels 1 ball box
labels 2 red blue
labels 3 small large
mode holes
1 2 2
2 1 1
";

pub fn run() -> Result<String> {
    let ctx = parse_context(TEXT)?;
    let mut out = format!("canonical form:\n{}", serialize_context(&ctx));
    let concepts = enumerate_concepts(&ctx);
    for format in [ConceptFormat::Text, ConceptFormat::Json, ConceptFormat::Csv] {
        out.push_str(&format!("\n{format:?}:\n{}", serialize_concepts(&ctx, &concepts, format)?));
    }
    let json = serialize_concepts(&ctx, &concepts, ConceptFormat::Json)?;
    assert_eq!(parse_concepts_json(&ctx, &json)?, concepts);
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run()?);
    Ok(())
}
