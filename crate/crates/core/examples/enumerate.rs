//! Enumerate the concepts of a small triadic context and inspect them.
//!
//! `cargo run --example enumerate`

use polyadic::context::check_n_ordered;
use polyadic::enumeration::{count_concepts, enumerate_concepts};
use polyadic::generators::fixture;
use polyadic::io::format_concept;
use polyadic::Result;

pub fn run() -> Result<String> {
    let ctx = fixture("running")?;
    let mut out = format!(
        "{} objects, sizes {:?}, {} crosses\n",
        ctx.size(0),
        ctx.sizes(),
        ctx.relation_size()
    );

    let concepts = enumerate_concepts(&ctx);
    for c in &concepts {
        out.push_str(&format_concept(&ctx, c));
        out.push('\n');
    }
    assert_eq!(count_concepts(&ctx), concepts.len() as u64);

    // every concept set satisfies antiordinal dependency and uniqueness
    let report = check_n_ordered(concepts.concepts(), 10);
    out.push_str(&format!("{} concepts, n-ordered: {}\n", concepts.len(), report.is_ok()));

    let features = concepts.features();
    out.push_str(&format!("{} distinct features\n", features.len()));
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run()?);
    Ok(())
}
