//! Generate the parametric context families and count their concepts.
//!
//! `cargo run --example families`

use polyadic::enumeration::count_concepts;
use polyadic::generators::{b_class, contranominal, random_context, rook_context, Shape};
use polyadic::Result;

pub fn run() -> Result<String> {
    let mut out = String::new();
    for (n, s) in [(2, 4), (3, 3), (4, 2)] {
        out.push_str(&format!(
            "contranominal({n},{s}): {} concepts\n",
            count_concepts(&contranominal(n, s)?)
        ));
    }
    for sizes in [vec![2, 2], vec![3, 3], vec![2, 2, 2]] {
        let ctx = b_class(&sizes)?;
        out.push_str(&format!(
            "b_class({sizes:?}): {} objects, {} concepts\n",
            ctx.size(0),
            count_concepts(&ctx)
        ));
    }
    out.push_str(&format!("rook(4,3): {} concepts\n", count_concepts(&rook_context(4, 3, 0)?)));
    let r = random_context(&Shape::cubic(3, 4)?, 0.7, 42)?;
    out.push_str(&format!("random 4x4x4 at density 0.7, seed 42: {} concepts\n", count_concepts(&r)));
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run()?);
    Ok(())
}
