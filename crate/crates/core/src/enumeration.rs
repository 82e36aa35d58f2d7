//! Enumeration of all n-concepts of an n-context.
//!
//! The main enumerator slices the context along its smallest dimension `d`.
//! The `d`-component of any concept is an intent of the 2-context pairing
//! tuples over the other dimensions with the elements of `d`, so only those
//! intents are visited. For each intent `D` the (n-1)-concepts of the slice
//! `C_D` are enumerated recursively and kept when `D` cannot grow.

use rayon::prelude::*;

use crate::bitset::ElementSet;
use crate::closure::{closed_sets, Dyadic};
use crate::context::{for_each_product, ConceptSet, NConcept, NContext};
use crate::error::{Error, Result};
use crate::transforms::slice_unchecked;

/// Default cap on the number of candidate tuples of subsets the brute-force
/// oracle will iterate.
pub const DEFAULT_BRUTE_FORCE_CAP: u128 = 1 << 24;

/// All n-concepts by testing every n-tuple of subsets against the definition.
pub fn brute_force_concepts(ctx: &NContext) -> Result<ConceptSet> {
    brute_force_concepts_capped(ctx, DEFAULT_BRUTE_FORCE_CAP)
}

pub fn brute_force_concepts_capped(ctx: &NContext, cap: u128) -> Result<ConceptSet> {
    let bits: usize = ctx.sizes().iter().sum();
    if bits >= 127 || (1u128 << bits) > cap {
        return Err(Error::ResourceLimit {
            what: format!("brute force over 2^{bits} candidate boxes"),
            cap,
        });
    }
    let choices: Vec<Vec<usize>> = ctx
        .sizes()
        .iter()
        .map(|&s| (0..1usize << s).collect())
        .collect();
    let sizes = ctx.sizes();
    let mut found = Vec::new();
    for_each_product(&choices, |masks| {
        let comps: Vec<ElementSet> = masks
            .iter()
            .zip(&sizes)
            .map(|(&m, &s)| ElementSet::from_mask(s, m as u64))
            .collect();
        if ctx.is_concept(&comps).expect("components match the context") {
            found.push(NConcept::new(comps));
        }
        true
    });
    Ok(ConceptSet::new(ctx.arity(), found))
}

/// Dimension to slice along: the smallest, ties broken towards the last.
fn pivot(ctx: &NContext) -> usize {
    let sizes = ctx.sizes();
    (0..sizes.len()).rev().min_by_key(|&d| sizes[d]).unwrap_or(0)
}

/// Intents of the 2-context (tuples over the other dimensions) x (elements of `dim`).
fn pivot_intents(ctx: &NContext, dim: usize) -> Vec<ElementSet> {
    let sizes = ctx.sizes();
    let rest: usize = sizes
        .iter()
        .enumerate()
        .filter(|&(d, _)| d != dim)
        .map(|(_, &s)| s)
        .product();
    let inner: usize = sizes[dim + 1..].iter().product();
    let dy = Dyadic::from_fn(rest, sizes[dim], |r, x| {
        // r enumerates the other dimensions row-major; reinsert x at `dim`
        let hi = r / inner;
        let lo = r % inner;
        ctx.cells()
            .contains(hi * inner * sizes[dim] + x * inner + lo)
    });
    closed_sets(sizes[dim], |s| dy.closure(s))
}

fn visit(ctx: &NContext, emit: &mut dyn FnMut(Vec<ElementSet>)) {
    if ctx.arity() == 1 {
        emit(vec![ctx.cells().clone()]);
        return;
    }
    let d = pivot(ctx);
    for keep in pivot_intents(ctx, d) {
        visit_with(ctx, d, keep, emit);
    }
}

fn visit_with(ctx: &NContext, d: usize, keep: ElementSet, emit: &mut dyn FnMut(Vec<ElementSet>)) {
    let sub = slice_unchecked(ctx, d, &keep);
    visit(&sub, &mut |mut comps| {
        comps.insert(d, keep.clone());
        if ctx.maximal_in_dim(&comps, d) {
            emit(comps);
        }
    });
}

/// Calls `f` on every concept, in no particular order.
pub fn for_each_concept(ctx: &NContext, mut f: impl FnMut(NConcept)) {
    visit(ctx, &mut |comps| f(NConcept::new(comps)));
}

/// All n-concepts in canonical order. Top-level branches run on the rayon
/// pool; the result does not depend on the thread count.
pub fn enumerate_concepts(ctx: &NContext) -> ConceptSet {
    if ctx.arity() == 1 {
        return ConceptSet::new(1, vec![NConcept::new(vec![ctx.cells().clone()])]);
    }
    let d = pivot(ctx);
    let found: Vec<NConcept> = pivot_intents(ctx, d)
        .into_par_iter()
        .flat_map_iter(|keep| {
            let mut local = Vec::new();
            visit_with(ctx, d, keep, &mut |c| local.push(NConcept::new(c)));
            local
        })
        .collect();
    ConceptSet::new(ctx.arity(), found)
}

/// Number of n-concepts, without materializing them.
pub fn count_concepts(ctx: &NContext) -> u64 {
    if ctx.arity() == 1 {
        return 1;
    }
    let d = pivot(ctx);
    pivot_intents(ctx, d)
        .into_par_iter()
        .map(|keep| {
            let mut n = 0u64;
            visit_with(ctx, d, keep, &mut |_| n += 1);
            n
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::numeric_labels;

    #[test]
    fn empty_square_has_two_concepts() {
        let c = NContext::empty(vec![numeric_labels(2), numeric_labels(2)]).unwrap();
        assert_eq!(count_concepts(&c), 2);
        assert_eq!(enumerate_concepts(&c), brute_force_concepts(&c).unwrap());
    }

    #[test]
    fn one_cell_empty_context_has_n_concepts() {
        for n in 2..=5 {
            let c = NContext::empty(vec![numeric_labels(1); n]).unwrap();
            let cs = enumerate_concepts(&c);
            assert_eq!(cs.len(), n);
            for concept in &cs {
                let empties = concept.components.iter().filter(|x| x.is_empty()).count();
                assert_eq!(empties, 1);
            }
            assert_eq!(cs, brute_force_concepts(&c).unwrap());
        }
    }

    #[test]
    fn full_cube_has_single_concept() {
        let c = NContext::from_predicate(vec![numeric_labels(2); 3], |_| true).unwrap();
        let cs = enumerate_concepts(&c);
        assert_eq!(cs, brute_force_concepts(&c).unwrap());
        assert_eq!(cs.len(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        let c = NContext::empty(vec![numeric_labels(9); 3]).unwrap();
        let err = brute_force_concepts(&c).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { .. }));
        let small = NContext::empty(vec![numeric_labels(3); 3]).unwrap();
        assert!(brute_force_concepts_capped(&small, 1 << 9).is_ok());
        assert!(brute_force_concepts_capped(&small, (1 << 9) - 1).is_err());
    }

    #[test]
    fn count_matches_enumeration_on_uneven_shape() {
        let c = NContext::from_predicate(
            vec![numeric_labels(3), numeric_labels(2), numeric_labels(4)],
            |t| (t[0] * 7 + t[1] * 3 + t[2]) % 3 != 0,
        )
        .unwrap();
        let cs = enumerate_concepts(&c);
        assert_eq!(cs, brute_force_concepts(&c).unwrap());
        assert_eq!(count_concepts(&c), cs.len() as u64);
    }
}
