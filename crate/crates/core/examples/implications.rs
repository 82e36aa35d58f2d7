//! Check implications in flattenings and slices, compute an implication base,
//! and separate structural from contextual implications.
//!
//! `cargo run --example implications`

use polyadic::generators::fixture;
use polyadic::implications::{classify_with, dg_base, holds, Implication, Scope, StructuralCloser};
use polyadic::io::{format_implication, format_subset, label_set, parse_implication};
use polyadic::Result;

pub fn run() -> Result<String> {
    let mut out = String::new();
    let ctx = fixture("running")?;

    // slice on letter `a`, then objects against numbers
    let scope = Scope::new(3, vec![(2, label_set(ctx.labels(2), ["a"])?)], vec![0], vec![1])?;
    let sliced = scope.apply(&ctx)?;
    let (p, c) = parse_implication(sliced.labels(1), "3 -> 1,2")?;
    let imp = Implication::new(p, c, scope)?;
    out.push_str(&format!("{{3}} -> {{1,2}} under slice {{a}}: {}\n", holds(&ctx, &imp)?));

    out.push_str("base of the sliced context:\n");
    for rule in dg_base(&sliced)? {
        out.push_str(&format!("  {}\n", format_implication(sliced.labels(1), &rule.premise, &rule.conclusion)));
    }

    for name in ["pair-left", "pair-right"] {
        let ctx = fixture(name)?;
        let scope = Scope::objects_vs_rest(3)?;
        let cells = scope.apply(&ctx)?.labels(1).to_vec();
        let closer = StructuralCloser::new(&ctx)?;
        out.push_str(&format!("{name}:\n"));
        for text in ["(1,b),(1,c) -> (1,a)", "(2,b) -> (1,a)", "(1,a) -> (2,a)"] {
            let (p, c) = parse_implication(&cells, text)?;
            let r = classify_with(&ctx, &closer, &Implication::new(p, c, scope.clone())?)?;
            out.push_str(&format!(
                "  {text}: {} (support {})\n",
                r.classification,
                format_subset(ctx.labels(0), &r.support)
            ));
        }
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run()?);
    Ok(())
}
