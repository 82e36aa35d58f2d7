//! Flatten and slice an n-context into 2-contexts, and add contexts together.
//!
//! `cargo run --example transforms`

use polyadic::enumeration::count_concepts;
use polyadic::generators::{contranominal, fixture};
use polyadic::io::{label_set, serialize_context};
use polyadic::transforms::{direct_sum, flatten, slice, Bipartition};
use polyadic::Result;

pub fn run() -> Result<String> {
    let ctx = fixture("running")?;
    let mut out = String::new();

    // objects against (number, letter) pairs
    let flat = flatten(&ctx, &Bipartition::objects_vs_rest(3)?)?;
    out.push_str(&format!("objects vs rest:\n{}\n", serialize_context(&flat)));

    // keep the (object, number) pairs crossed for letter `a`
    let keep = label_set(ctx.labels(2), ["a"])?;
    out.push_str(&format!("slice on {{a}}:\n{}\n", serialize_context(&slice(&ctx, 2, &keep)?)));

    // concept counts multiply under direct sums
    let a = contranominal(3, 1)?;
    let b = contranominal(3, 2)?;
    let sum = direct_sum(&a, &b)?;
    out.push_str(&format!(
        "{} x {} = {} concepts in the sum\n",
        count_concepts(&a),
        count_concepts(&b),
        count_concepts(&sum)
    ));
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run()?);
    Ok(())
}
