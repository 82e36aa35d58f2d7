//! n-contexts, boxes, n-concepts and their features.

use std::collections::{BTreeSet, HashSet};

use crate::bitset::ElementSet;
use crate::error::{Error, Result};

/// An n-dimensional cross table.
///
/// Dimension 0 holds the objects. Cells are indexed row-major with the last
/// dimension varying fastest, so the cells of one object form a contiguous
/// block that doubles as the attribute order of the objects-vs-rest
/// flattening.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NContext {
    labels: Vec<Vec<String>>,
    strides: Vec<usize>,
    cells: ElementSet,
}

pub(crate) fn strides_for(sizes: &[usize]) -> Vec<usize> {
    let mut strides = vec![1; sizes.len()];
    for d in (0..sizes.len().saturating_sub(1)).rev() {
        strides[d] = strides[d + 1] * sizes[d + 1];
    }
    strides
}

/// Labels `"1" ..= "size"`.
pub fn numeric_labels(size: usize) -> Vec<String> {
    (1..=size).map(|i| i.to_string()).collect()
}

/// Calls `f` on every tuple of the product of `comps` until it returns false.
/// Returns false iff `f` stopped the iteration.
pub(crate) fn for_each_product(comps: &[Vec<usize>], mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if comps.iter().any(|c| c.is_empty()) {
        return true;
    }
    let mut pos = vec![0usize; comps.len()];
    let mut tuple: Vec<usize> = comps.iter().map(|c| c[0]).collect();
    loop {
        if !f(&tuple) {
            return false;
        }
        let mut d = comps.len();
        loop {
            if d == 0 {
                return true;
            }
            d -= 1;
            pos[d] += 1;
            if pos[d] < comps[d].len() {
                tuple[d] = comps[d][pos[d]];
                break;
            }
            pos[d] = 0;
            tuple[d] = comps[d][0];
        }
    }
}

impl NContext {
    /// Builds a context from per-dimension labels and crossed tuples.
    pub fn new<I>(labels: Vec<Vec<String>>, tuples: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        let mut ctx = Self::empty(labels)?;
        for t in tuples {
            ctx.check_tuple(&t)?;
            let idx = ctx.cell_index(&t);
            ctx.cells.insert(idx);
        }
        Ok(ctx)
    }

    pub fn empty(labels: Vec<Vec<String>>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::invalid("a context needs at least one dimension"));
        }
        for (d, dim) in labels.iter().enumerate() {
            let mut seen = HashSet::new();
            for l in dim {
                if l.is_empty() || l.starts_with('#') || l.chars().any(char::is_whitespace) {
                    return Err(Error::Validation(format!(
                        "label {l:?} in dimension {} must be nonempty, whitespace-free and not start with '#'",
                        d + 1
                    )));
                }
                if !seen.insert(l.as_str()) {
                    return Err(Error::Validation(format!(
                        "duplicate label {l:?} in dimension {}",
                        d + 1
                    )));
                }
            }
        }
        let sizes: Vec<usize> = labels.iter().map(Vec::len).collect();
        let total = sizes
            .iter()
            .try_fold(1usize, |acc, &s| acc.checked_mul(s))
            .ok_or_else(|| Error::Overflow("cell count".into()))?;
        Ok(NContext {
            strides: strides_for(&sizes),
            cells: ElementSet::empty(total),
            labels,
        })
    }

    /// Builds a context by evaluating `crossed` on every tuple.
    pub fn from_predicate(
        labels: Vec<Vec<String>>,
        mut crossed: impl FnMut(&[usize]) -> bool,
    ) -> Result<Self> {
        let mut ctx = Self::empty(labels)?;
        for idx in 0..ctx.cells.universe() {
            let t = ctx.cell_tuple(idx);
            if crossed(&t) {
                ctx.cells.insert(idx);
            }
        }
        Ok(ctx)
    }

    pub(crate) fn from_cells(labels: Vec<Vec<String>>, cells: ElementSet) -> Self {
        let sizes: Vec<usize> = labels.iter().map(Vec::len).collect();
        debug_assert_eq!(cells.universe(), sizes.iter().product::<usize>());
        NContext {
            strides: strides_for(&sizes),
            cells,
            labels,
        }
    }

    pub fn arity(&self) -> usize {
        self.labels.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn size(&self, dim: usize) -> usize {
        self.labels[dim].len()
    }

    pub fn labels(&self, dim: usize) -> &[String] {
        &self.labels[dim]
    }

    pub fn all_labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    pub fn label_index(&self, dim: usize, label: &str) -> Option<usize> {
        self.labels.get(dim)?.iter().position(|l| l == label)
    }

    /// Replaces the labels of one dimension, keeping the relation.
    pub fn relabel(mut self, dim: usize, labels: Vec<String>) -> Result<Self> {
        if dim >= self.arity() || labels.len() != self.size(dim) {
            return Err(Error::invalid(format!(
                "relabel of dimension {} needs {} labels",
                dim + 1,
                self.size(dim.min(self.arity() - 1))
            )));
        }
        let mut all = self.labels.clone();
        all[dim] = labels;
        let checked = Self::empty(all)?;
        self.labels = checked.labels;
        Ok(self)
    }

    /// Number of cells of the full product.
    pub fn cell_count(&self) -> usize {
        self.cells.universe()
    }

    /// Number of crosses.
    pub fn relation_size(&self) -> usize {
        self.cells.count()
    }

    pub fn cells(&self) -> &ElementSet {
        &self.cells
    }

    pub fn cell_index(&self, t: &[usize]) -> usize {
        t.iter().zip(&self.strides).map(|(i, s)| i * s).sum()
    }

    pub fn cell_tuple(&self, mut idx: usize) -> Vec<usize> {
        self.strides
            .iter()
            .map(|s| {
                let v = idx / s;
                idx %= s;
                v
            })
            .collect()
    }

    fn check_tuple(&self, t: &[usize]) -> Result<()> {
        if t.len() != self.arity() {
            return Err(Error::invalid(format!(
                "tuple of length {} for a context of arity {}",
                t.len(),
                self.arity()
            )));
        }
        for (d, (&i, dim)) in t.iter().zip(&self.labels).enumerate() {
            if i >= dim.len() {
                return Err(Error::invalid(format!(
                    "index {} out of range for dimension {} of size {}",
                    i,
                    d + 1,
                    dim.len()
                )));
            }
        }
        Ok(())
    }

    /// Membership of a tuple of 0-based element indices.
    pub fn contains(&self, t: &[usize]) -> Result<bool> {
        self.check_tuple(t)?;
        Ok(self.contains_unchecked(t))
    }

    pub(crate) fn contains_unchecked(&self, t: &[usize]) -> bool {
        self.cells.contains(self.cell_index(t))
    }

    /// Crossed tuples in cell order.
    pub fn tuples(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.cells.iter().map(|i| self.cell_tuple(i))
    }

    /// Sizes of dimensions `1..n`, the space descriptions and features live in.
    pub fn feature_sizes(&self) -> Vec<usize> {
        self.sizes()[1..].to_vec()
    }

    pub fn feature_space_size(&self) -> usize {
        self.feature_sizes().iter().product()
    }

    /// The cells `(s_2, .., s_n)` crossed for object `object`.
    pub fn description(&self, object: usize) -> Result<ElementSet> {
        if object >= self.size(0) {
            return Err(Error::invalid(format!("object index {object} out of range")));
        }
        Ok(self.description_unchecked(object))
    }

    pub(crate) fn description_unchecked(&self, object: usize) -> ElementSet {
        let width = self.feature_space_size();
        let base = object * width;
        ElementSet::from_indices(
            width,
            (0..width).filter(|&c| self.cells.contains(base + c)),
        )
    }

    fn check_components(&self, comps: &[ElementSet]) -> Result<()> {
        if comps.len() != self.arity() {
            return Err(Error::invalid(format!(
                "{} components for a context of arity {}",
                comps.len(),
                self.arity()
            )));
        }
        for (d, c) in comps.iter().enumerate() {
            if c.universe() != self.size(d) {
                return Err(Error::invalid(format!(
                    "component {} is drawn from a universe of size {}, expected {}",
                    d + 1,
                    c.universe(),
                    self.size(d)
                )));
            }
        }
        Ok(())
    }

    /// True iff the product of `comps` is contained in the relation.
    /// Any empty component makes the product empty, hence full.
    pub fn box_full(&self, comps: &[ElementSet]) -> Result<bool> {
        self.check_components(comps)?;
        Ok(self.box_full_unchecked(comps))
    }

    pub(crate) fn box_full_unchecked(&self, comps: &[ElementSet]) -> bool {
        let lists: Vec<Vec<usize>> = comps.iter().map(|c| c.iter().collect()).collect();
        for_each_product(&lists, |t| self.contains_unchecked(t))
    }

    /// True iff adding any single element to component `dim` breaks fullness.
    /// Assumes the box itself is full.
    pub(crate) fn maximal_in_dim(&self, comps: &[ElementSet], dim: usize) -> bool {
        let mut lists: Vec<Vec<usize>> = comps.iter().map(|c| c.iter().collect()).collect();
        for x in 0..self.size(dim) {
            if comps[dim].contains(x) {
                continue;
            }
            lists[dim] = vec![x];
            if for_each_product(&lists, |t| self.contains_unchecked(t)) {
                return false;
            }
        }
        true
    }

    /// A maximal full box: full, and no component can grow by one element.
    pub fn is_concept(&self, comps: &[ElementSet]) -> Result<bool> {
        self.check_components(comps)?;
        Ok(self.box_full_unchecked(comps)
            && (0..self.arity()).all(|d| self.maximal_in_dim(comps, d)))
    }
}

/// A product of subsets over a selection of dimensions.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct CellBox {
    pub dims: Vec<usize>,
    pub components: Vec<ElementSet>,
}

impl CellBox {
    pub fn new(dims: Vec<usize>, components: Vec<ElementSet>) -> Result<Self> {
        if dims.len() != components.len() {
            return Err(Error::invalid("one component per selected dimension"));
        }
        Ok(CellBox { dims, components })
    }

    /// Cells of the product, indexed row-major over the selected dimensions.
    pub fn cells(&self) -> ElementSet {
        product_cells(&self.components)
    }
}

/// Row-major cell set of the product of `components`.
pub fn product_cells(components: &[ElementSet]) -> ElementSet {
    let sizes: Vec<usize> = components.iter().map(ElementSet::universe).collect();
    let strides = strides_for(&sizes);
    let mut cells = ElementSet::empty(sizes.iter().product());
    let lists: Vec<Vec<usize>> = components.iter().map(|c| c.iter().collect()).collect();
    for_each_product(&lists, |t| {
        cells.insert(t.iter().zip(&strides).map(|(i, s)| i * s).sum());
        true
    });
    cells
}

/// An n-tuple of subsets, one per dimension.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct NConcept {
    pub components: Vec<ElementSet>,
}

impl NConcept {
    pub fn new(components: Vec<ElementSet>) -> Self {
        NConcept { components }
    }

    pub fn extent(&self) -> &ElementSet {
        &self.components[0]
    }

    pub fn feature(&self) -> Feature {
        Feature {
            components: self.components[1..].to_vec(),
        }
    }
}

/// The last n-1 components of an n-concept.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Feature {
    pub components: Vec<ElementSet>,
}

impl Feature {
    pub fn cells(&self) -> ElementSet {
        product_cells(&self.components)
    }

    /// Componentwise inclusion.
    pub fn contains_box(&self, other: &[ElementSet]) -> bool {
        self.components
            .iter()
            .zip(other)
            .all(|(a, b)| b.is_subset(a))
    }

    pub fn has_empty_component(&self) -> bool {
        self.components.iter().any(ElementSet::is_empty)
    }
}

/// The concepts of one context in canonical order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConceptSet {
    arity: usize,
    concepts: Vec<NConcept>,
}

impl ConceptSet {
    /// Sorts and deduplicates.
    pub fn new(arity: usize, mut concepts: Vec<NConcept>) -> Self {
        concepts.sort();
        concepts.dedup();
        ConceptSet { arity, concepts }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn concepts(&self) -> &[NConcept] {
        &self.concepts
    }

    pub fn iter(&self) -> std::slice::Iter<'_, NConcept> {
        self.concepts.iter()
    }

    pub fn contains(&self, c: &NConcept) -> bool {
        self.concepts.binary_search(c).is_ok()
    }

    /// Projection onto components 2..n, deduplicated.
    pub fn features(&self) -> BTreeSet<Feature> {
        self.concepts.iter().map(NConcept::feature).collect()
    }
}

impl<'a> IntoIterator for &'a ConceptSet {
    type Item = &'a NConcept;
    type IntoIter = std::slice::Iter<'a, NConcept>;
    fn into_iter(self) -> Self::IntoIter {
        self.concepts.iter()
    }
}

/// `a ≲_dim b`: inclusion of the `dim`-th components.
pub fn quasi_leq(dim: usize, a: &NConcept, b: &NConcept) -> bool {
    a.components[dim].is_subset(&b.components[dim])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderViolation {
    /// `a ≲_i b` for every `i != dim` but not `b ≲_dim a`.
    Antiordinal { a: usize, b: usize, dim: usize },
    /// Two entries agree on every component.
    Uniqueness { a: usize, b: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrderReport {
    pub violations: Vec<OrderViolation>,
}

impl OrderReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks antiordinal dependency and the uniqueness condition over all pairs.
/// At most `limit` violations are collected.
pub fn check_n_ordered(concepts: &[NConcept], limit: usize) -> OrderReport {
    let mut report = OrderReport::default();
    let n = concepts.first().map_or(0, |c| c.components.len());
    'outer: for (ia, a) in concepts.iter().enumerate() {
        for (ib, b) in concepts.iter().enumerate() {
            if ia == ib {
                continue;
            }
            if ia < ib && a == b {
                report.violations.push(OrderViolation::Uniqueness { a: ia, b: ib });
            }
            for dim in 0..n {
                let premise = (0..n).filter(|&i| i != dim).all(|i| quasi_leq(i, a, b));
                if premise && !quasi_leq(dim, b, a) {
                    report
                        .violations
                        .push(OrderViolation::Antiordinal { a: ia, b: ib, dim });
                }
            }
            if report.violations.len() >= limit {
                report.violations.truncate(limit);
                break 'outer;
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(len: usize, items: &[usize]) -> ElementSet {
        ElementSet::from_indices(len, items.iter().copied())
    }

    fn small() -> NContext {
        // 2 x 2 x 2 with crosses (0,0,0), (0,1,0), (1,0,0)
        NContext::new(
            vec![numeric_labels(2), numeric_labels(2), numeric_labels(2)],
            vec![vec![0, 0, 0], vec![0, 1, 0], vec![1, 0, 0]],
        )
        .unwrap()
    }

    #[test]
    fn contains_checks_range() {
        let c = small();
        assert!(c.contains(&[0, 1, 0]).unwrap());
        assert!(!c.contains(&[1, 1, 0]).unwrap());
        assert!(matches!(c.contains(&[2, 0, 0]), Err(Error::InvalidArgument(_))));
        assert!(matches!(c.contains(&[0, 0]), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn duplicate_labels_rejected() {
        let err = NContext::empty(vec![vec!["x".into(), "x".into()]]).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn duplicate_tuples_are_set_semantics() {
        let c = NContext::new(
            vec![numeric_labels(1), numeric_labels(1)],
            vec![vec![0, 0], vec![0, 0]],
        )
        .unwrap();
        assert_eq!(c.relation_size(), 1);
    }

    #[test]
    fn cell_index_round_trip() {
        let c = NContext::empty(vec![numeric_labels(2), numeric_labels(3), numeric_labels(4)])
            .unwrap();
        for i in 0..c.cell_count() {
            assert_eq!(c.cell_index(&c.cell_tuple(i)), i);
        }
    }

    #[test]
    fn empty_component_box_is_full() {
        let c = small();
        let b = [set(2, &[]), set(2, &[0, 1]), set(2, &[0, 1])];
        assert!(c.box_full(&b).unwrap());
    }

    #[test]
    fn box_full_arity_mismatch() {
        let c = small();
        assert!(c.box_full(&[set(2, &[0])]).is_err());
    }

    #[test]
    fn concept_and_non_concept() {
        let c = small();
        assert!(c.is_concept(&[set(2, &[0]), set(2, &[0, 1]), set(2, &[0])]).unwrap());
        assert!(c.is_concept(&[set(2, &[0, 1]), set(2, &[0]), set(2, &[0])]).unwrap());
        // extendable by object 1
        assert!(!c.is_concept(&[set(2, &[0]), set(2, &[0]), set(2, &[0])]).unwrap());
    }

    #[test]
    fn description_block() {
        let c = small();
        assert_eq!(c.description(0).unwrap(), set(4, &[0, 2]));
        assert_eq!(c.description(1).unwrap(), set(4, &[0]));
        assert!(c.description(2).is_err());
    }

    #[test]
    fn product_cells_row_major() {
        let cells = product_cells(&[set(3, &[0, 2]), set(3, &[1])]);
        assert_eq!(cells, set(9, &[1, 7]));
        assert!(product_cells(&[set(3, &[]), set(3, &[1])]).is_empty());
    }

    #[test]
    fn quasi_order_is_reflexive() {
        let a = NConcept::new(vec![set(2, &[0]), set(2, &[1])]);
        assert!(quasi_leq(0, &a, &a) && quasi_leq(1, &a, &a));
    }

    #[test]
    fn uniqueness_violation_detected() {
        let a = NConcept::new(vec![set(2, &[0]), set(2, &[1])]);
        let report = check_n_ordered(&[a.clone(), a], 10);
        assert!(report
            .violations
            .contains(&OrderViolation::Uniqueness { a: 0, b: 1 }));
    }

    #[test]
    fn antiordinal_violation_detected() {
        // same second component, strictly growing first: must shrink somewhere else
        let a = NConcept::new(vec![set(2, &[0]), set(2, &[1])]);
        let b = NConcept::new(vec![set(2, &[0, 1]), set(2, &[1])]);
        let report = check_n_ordered(&[a, b], 10);
        assert!(!report.is_ok());
    }
}
