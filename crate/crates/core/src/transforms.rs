//! Flattening, slicing and direct sums of n-contexts.

use std::collections::HashSet;

use crate::bitset::ElementSet;
use crate::context::{for_each_product, NContext};
use crate::error::{Error, Result};

/// A split of the dimensions `{0, .., n-1}` into two nonempty disjoint parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    left: Vec<usize>,
    right: Vec<usize>,
}

impl Bipartition {
    pub fn new(arity: usize, left: &[usize], right: &[usize]) -> Result<Self> {
        let mut l = left.to_vec();
        let mut r = right.to_vec();
        l.sort_unstable();
        l.dedup();
        r.sort_unstable();
        r.dedup();
        if l.is_empty() || r.is_empty() {
            return Err(Error::invalid("both sides of a bipartition must be nonempty"));
        }
        if l.len() != left.len() || r.len() != right.len() {
            return Err(Error::invalid("repeated dimension in bipartition"));
        }
        let all: HashSet<usize> = l.iter().chain(&r).copied().collect();
        if all.len() != l.len() + r.len() {
            return Err(Error::invalid("bipartition sides overlap"));
        }
        if all.len() != arity || all.iter().any(|&d| d >= arity) {
            return Err(Error::invalid(format!(
                "bipartition must cover exactly the {arity} dimensions"
            )));
        }
        Ok(Bipartition { left: l, right: r })
    }

    /// `{0}` against everything else.
    pub fn objects_vs_rest(arity: usize) -> Result<Self> {
        let rest: Vec<usize> = (1..arity).collect();
        Self::new(arity, &[0], &rest)
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }
}

/// Labels of the tuples of the product of `dims`, row-major.
/// A single dimension keeps its bare labels; several give `(x,y,..)`.
fn tuple_labels(ctx: &NContext, dims: &[usize]) -> Vec<String> {
    if dims.len() == 1 {
        return ctx.labels(dims[0]).to_vec();
    }
    let lists: Vec<Vec<usize>> = dims.iter().map(|&d| (0..ctx.size(d)).collect()).collect();
    let mut out = Vec::new();
    for_each_product(&lists, |t| {
        let parts: Vec<&str> = t
            .iter()
            .zip(dims)
            .map(|(&i, &d)| ctx.labels(d)[i].as_str())
            .collect();
        out.push(format!("({})", parts.join(",")));
        true
    });
    out
}

/// Splits a row-major index over `sizes` into coordinates.
fn unrank(mut idx: usize, sizes: &[usize], out: &mut [usize]) {
    for d in (0..sizes.len()).rev() {
        out[d] = idx % sizes[d];
        idx /= sizes[d];
    }
}

/// The 2-context whose objects are tuples over the left dimensions and whose
/// attributes are tuples over the right dimensions.
pub fn flatten(ctx: &NContext, p: &Bipartition) -> Result<NContext> {
    // revalidate against this context's arity
    let p = Bipartition::new(ctx.arity(), p.left(), p.right())?;
    let left_sizes: Vec<usize> = p.left().iter().map(|&d| ctx.size(d)).collect();
    let right_sizes: Vec<usize> = p.right().iter().map(|&d| ctx.size(d)).collect();
    let labels = vec![tuple_labels(ctx, p.left()), tuple_labels(ctx, p.right())];
    let mut lt = vec![0; left_sizes.len()];
    let mut rt = vec![0; right_sizes.len()];
    let mut full = vec![0; ctx.arity()];
    NContext::from_predicate(labels, |t| {
        unrank(t[0], &left_sizes, &mut lt);
        unrank(t[1], &right_sizes, &mut rt);
        for (&d, &v) in p.left().iter().zip(&lt) {
            full[d] = v;
        }
        for (&d, &v) in p.right().iter().zip(&rt) {
            full[d] = v;
        }
        ctx.contains_unchecked(&full)
    })
}

/// Removes dimension `dim`, keeping the tuples crossed for every element of
/// `keep`. An empty `keep` yields the full relation.
pub fn slice(ctx: &NContext, dim: usize, keep: &ElementSet) -> Result<NContext> {
    if dim >= ctx.arity() {
        return Err(Error::invalid(format!(
            "dimension {} out of range for arity {}",
            dim + 1,
            ctx.arity()
        )));
    }
    if ctx.arity() < 2 {
        return Err(Error::invalid("cannot slice a 1-context"));
    }
    if keep.universe() != ctx.size(dim) {
        return Err(Error::invalid(format!(
            "slice set drawn from a universe of size {}, dimension {} has {}",
            keep.universe(),
            dim + 1,
            ctx.size(dim)
        )));
    }
    Ok(slice_unchecked(ctx, dim, keep))
}

pub(crate) fn slice_unchecked(ctx: &NContext, dim: usize, keep: &ElementSet) -> NContext {
    let mut labels = ctx.all_labels().to_vec();
    labels.remove(dim);
    let kept: Vec<usize> = keep.iter().collect();
    let mut full = vec![0; ctx.arity()];
    NContext::from_predicate(labels, |t| {
        full[..dim].copy_from_slice(&t[..dim]);
        full[dim + 1..].copy_from_slice(&t[dim..]);
        kept.iter().all(|&x| {
            full[dim] = x;
            ctx.contains_unchecked(&full)
        })
    })
    .expect("labels of a valid context stay valid")
}

fn merged_labels(a: &[String], b: &[String]) -> Vec<String> {
    let left: HashSet<&str> = a.iter().map(String::as_str).collect();
    let right: HashSet<&str> = b.iter().map(String::as_str).collect();
    let rename = |l: &String, other: &HashSet<&str>, suffix: &str| {
        if other.contains(l.as_str()) {
            format!("{l}{suffix}")
        } else {
            l.clone()
        }
    };
    a.iter()
        .map(|l| rename(l, &right, "#1"))
        .chain(b.iter().map(|l| rename(l, &left, "#2")))
        .collect()
}

/// Direct sum: dimensions are concatenated; a tuple is absent only when all
/// its coordinates come from one summand and it is absent there.
pub fn direct_sum(c1: &NContext, c2: &NContext) -> Result<NContext> {
    if c1.arity() != c2.arity() {
        return Err(Error::invalid(format!(
            "direct sum of contexts of arity {} and {}",
            c1.arity(),
            c2.arity()
        )));
    }
    let offsets = c1.sizes();
    let labels: Vec<Vec<String>> = (0..c1.arity())
        .map(|d| merged_labels(c1.labels(d), c2.labels(d)))
        .collect();
    let mut shifted = vec![0; c1.arity()];
    NContext::from_predicate(labels, |t| {
        let in_first = t.iter().zip(&offsets).filter(|(i, o)| i < o).count();
        if in_first == t.len() {
            c1.contains_unchecked(t)
        } else if in_first == 0 {
            for ((s, &i), &o) in shifted.iter_mut().zip(t).zip(&offsets) {
                *s = i - o;
            }
            c2.contains_unchecked(&shifted)
        } else {
            true
        }
    })
}

/// Folds `direct_sum` over a nonempty list.
pub fn direct_sum_all(parts: &[NContext]) -> Result<NContext> {
    let (first, rest) = parts
        .split_first()
        .ok_or_else(|| Error::invalid("direct sum of no contexts"))?;
    rest.iter().try_fold(first.clone(), |acc, c| direct_sum(&acc, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::numeric_labels;

    fn ctx2() -> NContext {
        NContext::new(
            vec![numeric_labels(2), numeric_labels(3)],
            vec![vec![0, 0], vec![1, 2], vec![1, 1]],
        )
        .unwrap()
    }

    #[test]
    fn bipartition_validation() {
        assert!(Bipartition::new(3, &[0], &[1, 2]).is_ok());
        assert!(Bipartition::new(3, &[0], &[1]).is_err());
        assert!(Bipartition::new(3, &[0, 1], &[1, 2]).is_err());
        assert!(Bipartition::new(3, &[], &[0, 1, 2]).is_err());
        assert!(Bipartition::new(2, &[0], &[5]).is_err());
    }

    #[test]
    fn identity_flattening() {
        let c = ctx2();
        let f = flatten(&c, &Bipartition::new(2, &[0], &[1]).unwrap()).unwrap();
        assert_eq!(f, c);
    }

    #[test]
    fn swapped_flattening_transposes() {
        let c = ctx2();
        let f = flatten(&c, &Bipartition::new(2, &[1], &[0]).unwrap()).unwrap();
        assert_eq!(f.sizes(), vec![3, 2]);
        assert!(f.contains(&[2, 1]).unwrap());
        assert!(!f.contains(&[2, 0]).unwrap());
        assert_eq!(f.relation_size(), c.relation_size());
    }

    #[test]
    fn slice_empty_set_is_full() {
        let c = ctx2();
        let s = slice(&c, 1, &ElementSet::empty(3)).unwrap();
        assert_eq!(s.arity(), 1);
        assert!(s.cells().is_full());
    }

    #[test]
    fn slice_bad_dimension() {
        let c = ctx2();
        assert!(slice(&c, 2, &ElementSet::empty(3)).is_err());
        assert!(slice(&c, 1, &ElementSet::empty(2)).is_err());
    }

    #[test]
    fn sum_arity_mismatch() {
        let a = ctx2();
        let b = NContext::empty(vec![numeric_labels(1); 3]).unwrap();
        assert!(direct_sum(&a, &b).is_err());
    }

    #[test]
    fn sum_relabels_collisions() {
        let a = NContext::empty(vec![numeric_labels(1); 2]).unwrap();
        let s = direct_sum(&a, &a).unwrap();
        assert_eq!(s.labels(0), ["1#1", "1#2"]);
        // two empty one-cell contexts: only the diagonal is missing
        assert_eq!(s.relation_size(), 2);
        assert!(!s.contains(&[0, 0]).unwrap() && !s.contains(&[1, 1]).unwrap());
    }
}
