//! Self-check of the library against the published worked examples, used by
//! the `verify-paper` command.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::ElementSet;
use crate::bounds::{exhaustive_fn, lower_bound_context_4d, naive_bounds, SearchOptions};
use crate::context::{NConcept, NContext};
use crate::enumeration::{count_concepts, enumerate_concepts};
use crate::error::Result;
use crate::generators::{b_class, contranominal, fixture, random_context, rook_context, Shape};
use crate::implications::{canonical_context, classify, holds, lattice_equivalent, Classification, Implication, Scope};
use crate::io::{label_set, parse_attribute_set};
use crate::transforms::{direct_sum, flatten, slice, Bipartition};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.to_string(),
        passed,
        detail: detail.into(),
    }
}

type Listed = &'static [&'static [&'static str]];

const PAIR_LEFT_CONCEPTS: &[Listed] = &[
    &[&[], &["1", "2", "3"], &["a", "b", "c"]],
    &[&["α", "β"], &[], &["a", "b", "c"]],
    &[&["α", "β"], &["1", "2", "3"], &[]],
    &[&["α"], &["1"], &["a", "b", "c"]],
    &[&["α"], &["1", "2", "3"], &["a"]],
    &[&["α", "β"], &["1"], &["a"]],
    &[&["β"], &["2"], &["b"]],
];

const PAIR_RIGHT_CONCEPTS: &[Listed] = &[
    &[&[], &["1", "2", "3"], &["a", "b", "c"]],
    &[&["α", "β", "γ"], &[], &["a", "b", "c"]],
    &[&["α", "β", "γ"], &["1", "2", "3"], &[]],
    &[&["α"], &["1"], &["a", "b", "c"]],
    &[&["β"], &["1", "2", "3"], &["a"]],
    &[&["α", "β", "γ"], &["1"], &["a"]],
    &[&["γ"], &["2"], &["b"]],
];

fn listed_concept(ctx: &NContext, comps: Listed) -> Result<NConcept> {
    let sets = comps
        .iter()
        .enumerate()
        .map(|(d, ls)| label_set(ctx.labels(d), ls.iter().copied()))
        .collect::<Result<Vec<_>>>()?;
    Ok(NConcept::new(sets))
}

fn concept_list_check(name: &str, fixture_name: &str, expected: &[Listed]) -> Result<Check> {
    let ctx = fixture(fixture_name)?;
    let want: BTreeSet<NConcept> = expected
        .iter()
        .map(|c| listed_concept(&ctx, c))
        .collect::<Result<_>>()?;
    let got: BTreeSet<NConcept> = enumerate_concepts(&ctx).iter().cloned().collect();
    Ok(check(name, got == want, format!("{} concepts", got.len())))
}

/// `(object, row labels)` of a 2-context.
fn rows(ctx: &NContext) -> Vec<(String, Vec<String>)> {
    (0..ctx.size(0))
        .map(|o| {
            let d = ctx.description(o).expect("object in range");
            (
                ctx.labels(0)[o].clone(),
                d.iter().map(|a| ctx.labels(1)[a].clone()).collect(),
            )
        })
        .collect()
}

fn rows_match(ctx: &NContext, want: &[(&str, &[&str])]) -> bool {
    let got = rows(ctx);
    got.len() == want.len()
        && got
            .iter()
            .zip(want)
            .all(|((o, r), (wo, wr))| o == wo && r.iter().map(String::as_str).eq(wr.iter().copied()))
}

fn objects_scope(arity: usize) -> Result<Scope> {
    Scope::objects_vs_rest(arity)
}

fn flat_implication(ctx: &NContext, premise: &str, conclusion: &str) -> Result<Implication> {
    let flat = flatten(ctx, &Bipartition::objects_vs_rest(ctx.arity())?)?;
    Implication::new(
        parse_attribute_set(flat.labels(1), premise)?,
        parse_attribute_set(flat.labels(1), conclusion)?,
        objects_scope(ctx.arity())?,
    )
}

fn classification_check(name: &str, fixture_name: &str, p: &str, c: &str, want: Classification) -> Result<Check> {
    let ctx = fixture(fixture_name)?;
    let got = classify(&ctx, &flat_implication(&ctx, p, c)?)?.classification;
    Ok(check(name, got == want, format!("{got}, expected {want}")))
}

fn sliced_implication(ctx: &NContext, dim: usize, keep: &[&str], p: &str, c: &str) -> Result<Implication> {
    let keep = label_set(ctx.labels(dim), keep.iter().copied())?;
    let rest: Vec<usize> = (1..ctx.arity()).filter(|&d| d != dim).collect();
    let scope = Scope::new(ctx.arity(), vec![(dim, keep)], vec![0], rest)?;
    let attrs = scope.apply(ctx)?;
    Implication::new(
        parse_attribute_set(attrs.labels(1), p)?,
        parse_attribute_set(attrs.labels(1), c)?,
        scope,
    )
}

fn descriptions(ctx: &NContext) -> BTreeSet<ElementSet> {
    (0..ctx.size(0))
        .map(|o| ctx.description(o).expect("object in range"))
        .collect()
}

/// Every check, in a fixed order.
pub fn run_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();

    out.push(concept_list_check("pair-left concept list", "pair-left", PAIR_LEFT_CONCEPTS)?);
    out.push(concept_list_check("pair-right concept list", "pair-right", PAIR_RIGHT_CONCEPTS)?);

    let running = fixture("running")?;
    let spot = listed_concept(&running, &[&["α", "β"], &["1", "2"], &["a"]])?;
    out.push(check(
        "running example contains ({α,β},{1,2},{a})",
        enumerate_concepts(&running).contains(&spot),
        "",
    ));

    let flat = flatten(&running, &Bipartition::objects_vs_rest(3)?)?;
    let flat_ok = rows_match(
        &flat,
        &[
            ("α", &["(1,a)", "(2,a)", "(3,a)", "(3,b)"]),
            ("β", &["(1,a)", "(1,c)", "(2,a)", "(3,b)"]),
            ("γ", &["(1,c)", "(3,b)", "(3,c)"]),
        ],
    );
    let by_a = slice(&running, 2, &label_set(running.labels(2), ["a"])?)?;
    let a_ok = rows_match(&by_a, &[("α", &["1", "2", "3"]), ("β", &["1", "2"]), ("γ", &[])]);
    let by_13 = slice(&running, 1, &label_set(running.labels(1), ["1", "3"])?)?;
    let n_ok = rows_match(&by_13, &[("α", &["a"]), ("β", &[]), ("γ", &["c"])]);
    out.push(check(
        "running example flattening and slices",
        flat_ok && a_ok && n_ok,
        format!("flatten {flat_ok}, slice {{a}} {a_ok}, slice {{1,3}} {n_ok}"),
    ));

    let imps = [
        sliced_implication(&running, 2, &["a"], "3", "1,2")?,
        sliced_implication(&running, 1, &["3"], "∅", "b")?,
        flat_implication(&running, "(1,a)", "(3,b)")?,
    ];
    let held: Vec<bool> = imps.iter().map(|i| holds(&running, i)).collect::<Result<_>>()?;
    out.push(check(
        "running example implications hold",
        held.iter().all(|&h| h),
        format!("{held:?}"),
    ));

    use Classification::*;
    for (ctxname, p, c, want) in [
        ("pair-left", "(1,b),(1,c)", "(1,a)", Structural),
        ("pair-right", "(1,b),(1,c)", "(1,a)", Structural),
        ("pair-left", "(2,a)", "(3,a)", Structural),
        ("pair-right", "(2,a)", "(3,a)", Structural),
        ("pair-left", "(2,b)", "(1,a)", Contextual),
        ("pair-right", "(2,b)", "(1,a)", Contextual),
        ("pair-left", "(1,b),(2,a)", "(3,a),(1,c)", Contextual),
    ] {
        let name = format!("{ctxname}: {{{p}}} -> {{{c}}} is {want}");
        out.push(classification_check(&name, ctxname, p, c, want)?);
    }
    let right = fixture("pair-right")?;
    let got = classify(&right, &flat_implication(&right, "(1,b),(2,a)", "(3,a),(1,c)")?)?.classification;
    out.push(check(
        "pair-right: {(1,b),(2,a)} -> {(3,a),(1,c)} is not contextual",
        got != Contextual,
        got.to_string(),
    ));

    let input = fixture("minimize-input")?;
    let minimized = canonical_context(&input)?;
    let same = descriptions(&minimized) == descriptions(&fixture("minimize-output")?)
        && minimized.size(0) == 4;
    let kept = lattice_equivalent(&input, &minimized)?;
    out.push(check(
        "canonical context of minimize-input",
        same && kept,
        format!("matches expected {same}, features kept {kept}"),
    ));

    let mut bad = Vec::new();
    for n in 2..=4 {
        for s in 1..=4 {
            let k = count_concepts(&contranominal(n, s)?);
            if k as u128 != (n as u128).pow(s as u32) {
                bad.push(format!("({n},{s}) gave {k}"));
            }
        }
    }
    out.push(check("contranominal scales have n^s concepts", bad.is_empty(), bad.join(", ")));

    let b33 = b_class(&[3, 3])?;
    let k33 = count_concepts(&b33);
    let compact = fixture("bclass-2x2-compact")?;
    let fs = enumerate_concepts(&compact).features();
    let all_rects = ElementSet::all_subsets(2).filter(|x| !x.is_empty()).all(|y| {
        ElementSet::all_subsets(2)
            .filter(|z| !z.is_empty())
            .all(|z| fs.iter().any(|f| f.components == [y.clone(), z.clone()]))
    });
    let alt = lattice_equivalent(&fixture("bclass-3x3-alt")?, &b33)?;
    out.push(check(
        "b-class counts and equivalence",
        k33 == 51 && fs.len() == 11 && all_rects && alt,
        format!("3x3: {k33}, compact 2x2: {} features, all rectangles {all_rects}, alternative equivalent {alt}", fs.len()),
    ));

    let rook = fixture("rook-4x3")?;
    let kr = count_concepts(&rook);
    let same = rook_context(4, 3, 0)? == rook;
    out.push(check("rook context", kr == 112 && same, format!("{kr} concepts, generated identical {same}")));

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut failures = 0;
    for i in 0..50 {
        let shape = |rng: &mut ChaCha8Rng| {
            Shape::new((0..3).map(|_| rng.gen_range(1..=2)).collect()).expect("nonempty")
        };
        let (s1, s2) = (shape(&mut rng), shape(&mut rng));
        let c1 = random_context(&s1, 0.5, i)?;
        let c2 = random_context(&s2, 0.5, 1000 + i)?;
        if count_concepts(&direct_sum(&c1, &c2)?) != count_concepts(&c1) * count_concepts(&c2) {
            failures += 1;
        }
    }
    let k4 = count_concepts(&lower_bound_context_4d(4)?);
    out.push(check(
        "direct sums multiply concept counts",
        failures == 0 && k4 == 448,
        format!("{failures} random failures, 4-dimensional side 4: {k4}"),
    ));

    let mut outside = 0;
    for (i, (n, s)) in [(3usize, 2usize), (3, 3), (4, 2)].iter().cycle().take(200).enumerate() {
        let (_, hi) = naive_bounds(*n, *s)?;
        let k = count_concepts(&random_context(&Shape::cubic(*n, *s)?, 0.6, i as u64)?) as u128;
        if k > hi {
            outside += 1;
        }
    }
    out.push(check("random contexts respect the upper bound", outside == 0, format!("{outside} violations")));

    let r22 = exhaustive_fn(2, 2, &SearchOptions::default())?;
    let r32 = exhaustive_fn(3, 2, &SearchOptions::default())?;
    // a 2-dimensional contranominal scale up to permutation: one hole per row and column
    let witness_ok = r22.witnesses.len() == 1 && {
        let w = &r22.witnesses[0];
        let per_row = (0..2).all(|o| w.description(o).map(|d| d.count() == 1).unwrap_or(false));
        let per_col = (0..2).all(|a| (0..2).filter(|&o| !w.contains_unchecked(&[o, a])).count() == 1);
        per_row && per_col
    };
    out.push(check(
        "exhaustive search at side 2",
        r22.max_count == 4 && witness_ok && (9..=11).contains(&r32.max_count) && r32.exact,
        format!("f_2(2) = {}, f_3(2) = {}", r22.max_count, r32.max_count),
    ));

    Ok(out)
}

/// The check table, one line per check.
pub fn render(checks: &[Check]) -> String {
    let width = checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for c in checks {
        let pad = width - c.name.chars().count();
        out.push_str(&format!(
            "{}  {}{}  {}\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            " ".repeat(pad),
            c.detail
        ));
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    out.push_str(&format!("{passed}/{} checks passed\n", checks.len()));
    out
}
