//! Rewrite a context so that objects correspond to classes of features that
//! must occur together, then confirm the concept features are unchanged.
//!
//! `cargo run --example canonical_context`

use polyadic::generators::fixture;
use polyadic::implications::{canonical_context, lattice_equivalent};
use polyadic::io::serialize_context;
use polyadic::Result;

pub fn run() -> Result<String> {
    let ctx = fixture("minimize-input")?;
    let minimized = canonical_context(&ctx)?;
    let mut out = format!("input:\n{}\n", serialize_context(&ctx));
    out.push_str(&format!("rewritten:\n{}\n", serialize_context(&minimized)));
    out.push_str(&format!(
        "same features: {}\n",
        lattice_equivalent(&ctx, &minimized)?
    ));
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run()?);
    Ok(())
}
