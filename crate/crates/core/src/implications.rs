//! Dyadic implications over flattenings and slices, and the split of the
//! implications of the objects-vs-rest flattening into structural and
//! contextual ones.
//!
//! Structural entailment works on the feature space `S_2 x .. x S_n`. A box
//! `B` inside the premise implies every cell of the componentwise
//! intersection of the concept features containing `B`; if no feature
//! contains `B` it implies every cell. The closure is the least fixpoint of
//! these steps, where only the maximal boxes inside the current set need to
//! be visited (a smaller box is contained in more features, so it implies
//! less).

use std::collections::BTreeSet;

use crate::bitset::ElementSet;
use crate::closure::{next_closure, Dyadic};
use crate::context::{numeric_labels, product_cells, Feature, NContext};
use crate::enumeration::{enumerate_concepts, for_each_concept};
use crate::error::{Error, Result};
use crate::generators::object_labels;
use crate::transforms::{flatten, slice, Bipartition};

/// Attribute count above which [`dg_base`] refuses to run.
pub const DG_BASE_ATTRIBUTE_CAP: usize = 20;

/// The recipe turning an n-context into the 2-context an implication is
/// stated over: slices first, then a flattening of the remaining dimensions.
/// All dimension indices refer to the original context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scope {
    arity: usize,
    slices: Vec<(usize, ElementSet)>,
    left: Vec<usize>,
    right: Vec<usize>,
}

impl Scope {
    pub fn new(
        arity: usize,
        mut slices: Vec<(usize, ElementSet)>,
        left: Vec<usize>,
        right: Vec<usize>,
    ) -> Result<Self> {
        slices.sort_by_key(|(d, _)| *d);
        if slices.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::invalid("a dimension is sliced twice"));
        }
        if let Some((d, _)) = slices.iter().find(|(d, _)| *d >= arity) {
            return Err(Error::invalid(format!("slice dimension {} out of range", d + 1)));
        }
        let rest: Vec<usize> = (0..arity)
            .filter(|d| slices.iter().all(|(s, _)| s != d))
            .collect();
        let remap = |dims: &[usize]| -> Result<Vec<usize>> {
            dims.iter()
                .map(|d| {
                    rest.iter().position(|r| r == d).ok_or_else(|| {
                        Error::invalid(format!("dimension {} is sliced or out of range", d + 1))
                    })
                })
                .collect()
        };
        Bipartition::new(rest.len(), &remap(&left)?, &remap(&right)?)?;
        Ok(Scope {
            arity,
            slices,
            left,
            right,
        })
    }

    /// Objects against all other dimensions, no slicing.
    pub fn objects_vs_rest(arity: usize) -> Result<Self> {
        Scope::new(arity, vec![], vec![0], (1..arity).collect())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn slices(&self) -> &[(usize, ElementSet)] {
        &self.slices
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    pub fn is_objects_vs_rest(&self) -> bool {
        self.slices.is_empty() && self.left == [0]
    }

    /// The 2-context this scope describes.
    pub fn apply(&self, ctx: &NContext) -> Result<NContext> {
        if ctx.arity() != self.arity {
            return Err(Error::invalid(format!(
                "scope is for arity {}, context has arity {}",
                self.arity,
                ctx.arity()
            )));
        }
        let mut cur = ctx.clone();
        // highest dimension first so lower indices stay valid
        for (d, keep) in self.slices.iter().rev() {
            cur = slice(&cur, *d, keep)?;
        }
        let rest: Vec<usize> = (0..self.arity)
            .filter(|d| self.slices.iter().all(|(s, _)| s != d))
            .collect();
        let pos = |d: &usize| rest.iter().position(|r| r == d).expect("validated");
        let left: Vec<usize> = self.left.iter().map(pos).collect();
        let right: Vec<usize> = self.right.iter().map(pos).collect();
        flatten(&cur, &Bipartition::new(rest.len(), &left, &right)?)
    }
}

/// `premise -> conclusion` over the attributes of a scope's 2-context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Implication {
    pub premise: ElementSet,
    pub conclusion: ElementSet,
    pub scope: Scope,
}

impl Implication {
    pub fn new(premise: ElementSet, conclusion: ElementSet, scope: Scope) -> Result<Self> {
        if premise.universe() != conclusion.universe() {
            return Err(Error::invalid("premise and conclusion over different attribute sets"));
        }
        Ok(Implication {
            premise,
            conclusion,
            scope,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Structural,
    Contextual,
    NotHolding,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Classification::Structural => "structural",
            Classification::Contextual => "contextual",
            Classification::NotHolding => "not-holding",
        })
    }
}

fn dyadic(ctx2: &NContext) -> Result<Dyadic> {
    Dyadic::from_context(ctx2)
}

fn check_attrs(ctx2: &NContext, x: &ElementSet) -> Result<()> {
    if x.universe() != ctx2.size(1) {
        return Err(Error::invalid(format!(
            "attribute set over {} attributes, context has {}",
            x.universe(),
            ctx2.size(1)
        )));
    }
    Ok(())
}

/// `X''` in a 2-context. All attributes when no object has `X`.
pub fn closure2(ctx2: &NContext, x: &ElementSet) -> Result<ElementSet> {
    let d = dyadic(ctx2)?;
    check_attrs(ctx2, x)?;
    Ok(d.closure(x))
}

/// Objects of a 2-context whose row contains `x`.
pub fn support2(ctx2: &NContext, x: &ElementSet) -> Result<ElementSet> {
    let d = dyadic(ctx2)?;
    check_attrs(ctx2, x)?;
    Ok(d.extent(x))
}

/// Whether the implication holds in the 2-context its scope derives from `ctx`.
pub fn holds(ctx: &NContext, imp: &Implication) -> Result<bool> {
    let ctx2 = imp.scope.apply(ctx)?;
    let close = closure2(&ctx2, &imp.premise)?;
    Ok(imp.conclusion.is_subset(&close))
}

/// Closure of `x` under `base`, firing a rule only when its premise is a
/// proper subset of the current set.
fn pseudo_close(x: &ElementSet, base: &[(ElementSet, ElementSet)]) -> ElementSet {
    let mut cur = x.clone();
    loop {
        let mut grown = false;
        for (p, c) in base {
            if p.is_proper_subset(&cur) && !c.is_subset(&cur) {
                cur.union_with(c);
                grown = true;
            }
        }
        if !grown {
            return cur;
        }
    }
}

/// The Duquenne-Guigues base of a 2-context, premises in lectic order.
/// Each conclusion is the full closure of its premise.
pub fn dg_base(ctx2: &NContext) -> Result<Vec<Implication>> {
    dg_base_capped(ctx2, DG_BASE_ATTRIBUTE_CAP)
}

pub fn dg_base_capped(ctx2: &NContext, cap: usize) -> Result<Vec<Implication>> {
    let d = dyadic(ctx2)?;
    let m = d.attributes();
    if m > cap {
        return Err(Error::ResourceLimit {
            what: format!("Duquenne-Guigues base over {m} attributes"),
            cap: cap as u128,
        });
    }
    let mut base: Vec<(ElementSet, ElementSet)> = Vec::new();
    let mut cur = Some(ElementSet::empty(m));
    while let Some(a) = cur {
        let closed = d.closure(&a);
        if closed != a {
            base.push((a.clone(), closed));
        }
        cur = next_closure(&a, |s| pseudo_close(s, &base));
    }
    let scope = Scope::objects_vs_rest(2)?;
    Ok(base
        .into_iter()
        .map(|(premise, conclusion)| Implication {
            premise,
            conclusion,
            scope: scope.clone(),
        })
        .collect())
}

/// Closure of `x` under a list of rules, firing on any premise inside the set.
pub fn close_under(x: &ElementSet, rules: &[Implication]) -> ElementSet {
    let mut cur = x.clone();
    loop {
        let mut grown = false;
        for r in rules {
            if r.premise.is_subset(&cur) && !r.conclusion.is_subset(&cur) {
                cur.union_with(&r.conclusion);
                grown = true;
            }
        }
        if !grown {
            return cur;
        }
    }
}

/// Precomputed features of a context, for repeated structural closures.
#[derive(Clone, Debug)]
pub struct StructuralCloser {
    feature_sizes: Vec<usize>,
    features: Vec<Feature>,
}

impl StructuralCloser {
    pub fn new(ctx: &NContext) -> Result<Self> {
        if ctx.arity() < 2 {
            return Err(Error::invalid("structural closure needs arity >= 2"));
        }
        let features = enumerate_concepts(ctx).features().into_iter().collect();
        Ok(StructuralCloser {
            feature_sizes: ctx.feature_sizes(),
            features,
        })
    }

    pub fn feature_space_size(&self) -> usize {
        self.feature_sizes.iter().product()
    }

    /// Maximal boxes inside `x` with every component nonempty.
    pub fn maximal_boxes(&self, x: &ElementSet) -> Vec<Vec<ElementSet>> {
        let labels = self.feature_sizes.iter().map(|&s| numeric_labels(s)).collect();
        let inner = NContext::from_cells(labels, x.clone());
        let mut out = Vec::new();
        for_each_concept(&inner, |c| {
            if c.components.iter().all(|s| !s.is_empty()) {
                out.push(c.components);
            }
        });
        out
    }

    /// Cells implied by the box `b` on its own.
    pub fn box_consequence(&self, b: &[ElementSet]) -> ElementSet {
        let empty_box = b.iter().any(ElementSet::is_empty);
        let mut meet: Option<Vec<ElementSet>> = None;
        for f in &self.features {
            if empty_box || f.contains_box(b) {
                match meet.as_mut() {
                    None => meet = Some(f.components.clone()),
                    Some(m) => m.iter_mut().zip(&f.components).for_each(|(a, c)| a.intersect_with(c)),
                }
            }
        }
        match meet {
            Some(m) => product_cells(&m),
            None => ElementSet::full(self.feature_space_size()),
        }
    }

    pub fn close(&self, x: &ElementSet) -> Result<ElementSet> {
        if x.universe() != self.feature_space_size() {
            return Err(Error::invalid(format!(
                "cell set over {} cells, feature space has {}",
                x.universe(),
                self.feature_space_size()
            )));
        }
        let mut cur = x.clone();
        loop {
            let mut boxes = self.maximal_boxes(&cur);
            if boxes.is_empty() {
                boxes.push(self.feature_sizes.iter().map(|&s| ElementSet::empty(s)).collect());
            }
            let mut next = cur.clone();
            for b in &boxes {
                next.union_with(&self.box_consequence(b));
            }
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
    }
}

/// Smallest superset of `x` closed under the implications between boxes.
pub fn struct_closure(ctx: &NContext, x: &ElementSet) -> Result<ElementSet> {
    StructuralCloser::new(ctx)?.close(x)
}

/// Classification of one implication, with the objects supporting its premise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport {
    pub classification: Classification,
    pub support: ElementSet,
}

fn check_objects_scope(ctx: &NContext, imp: &Implication) -> Result<()> {
    if imp.scope.arity() != ctx.arity() || !imp.scope.is_objects_vs_rest() {
        return Err(Error::invalid(
            "classification needs an implication over the objects-vs-rest flattening",
        ));
    }
    if imp.premise.universe() != ctx.feature_space_size() {
        return Err(Error::invalid("implication is not over the feature cells of this context"));
    }
    Ok(())
}

/// Classifies using precomputed features.
pub fn classify_with(ctx: &NContext, closer: &StructuralCloser, imp: &Implication) -> Result<ClassReport> {
    check_objects_scope(ctx, imp)?;
    let support = ElementSet::from_indices(
        ctx.size(0),
        (0..ctx.size(0)).filter(|&o| imp.premise.is_subset(&ctx.description_unchecked(o))),
    );
    let classification = if !holds(ctx, imp)? {
        Classification::NotHolding
    } else if imp.conclusion.is_subset(&closer.close(&imp.premise)?) {
        Classification::Structural
    } else {
        Classification::Contextual
    };
    Ok(ClassReport {
        classification,
        support,
    })
}

pub fn classify(ctx: &NContext, imp: &Implication) -> Result<ClassReport> {
    classify_with(ctx, &StructuralCloser::new(ctx)?, imp)
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// The context with one object per class of features that must share
/// objects. Two features are linked when their intersection is a nonempty
/// box that is not itself a feature; classes are the connected components.
/// Only features of concepts with a nonempty extent and nonempty cells are
/// placed; the rest are recreated by the empty and full components the new
/// objects induce.
pub fn canonical_context(ctx: &NContext) -> Result<NContext> {
    if ctx.arity() < 2 {
        return Err(Error::invalid("canonical context needs arity >= 2"));
    }
    let concepts = enumerate_concepts(ctx);
    let all: BTreeSet<Feature> = concepts.features();
    let placed: Vec<Feature> = concepts
        .iter()
        .filter(|c| !c.extent().is_empty())
        .map(|c| c.feature())
        .filter(|f| !f.has_empty_component())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let mut parent: Vec<usize> = (0..placed.len()).collect();
    for i in 0..placed.len() {
        for j in i + 1..placed.len() {
            let meet: Vec<ElementSet> = placed[i]
                .components
                .iter()
                .zip(&placed[j].components)
                .map(|(a, b)| a.intersection(b))
                .collect();
            if meet.iter().any(ElementSet::is_empty) {
                continue;
            }
            if !all.contains(&Feature { components: meet }) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut classes: Vec<(usize, ElementSet)> = Vec::new();
    for (i, f) in placed.iter().enumerate() {
        let root = find(&mut parent, i);
        let cells = f.cells();
        match classes.iter_mut().find(|(r, _)| *r == root) {
            Some((_, d)) => d.union_with(&cells),
            None => classes.push((root, cells)),
        }
    }
    let width = ctx.feature_space_size();
    let mut labels = ctx.all_labels().to_vec();
    labels[0] = object_labels(classes.len());
    let mut cells = ElementSet::empty(classes.len() * width);
    for (o, (_, d)) in classes.iter().enumerate() {
        for c in d.iter() {
            cells.insert(o * width + c);
        }
    }
    Ok(NContext::from_cells(labels, cells))
}

/// Whether two contexts over the same dimensions 2..n have the same concept
/// features, i.e. isomorphic quasi-orders on dimensions 2..n.
pub fn lattice_equivalent(c1: &NContext, c2: &NContext) -> Result<bool> {
    if c1.arity() != c2.arity() || c1.all_labels()[1..] != c2.all_labels()[1..] {
        return Err(Error::invalid(
            "lattice equivalence needs identical dimensions 2..n",
        ));
    }
    Ok(enumerate_concepts(c1).features() == enumerate_concepts(c2).features())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{contranominal, fixture};
    use crate::io::parse_attribute_set;

    fn flat_labels(ctx: &NContext) -> Vec<String> {
        flatten(ctx, &Bipartition::objects_vs_rest(ctx.arity()).unwrap())
            .unwrap()
            .labels(1)
            .to_vec()
    }

    fn cells(ctx: &NContext, s: &str) -> ElementSet {
        parse_attribute_set(&flat_labels(ctx), s).unwrap()
    }

    fn imp(ctx: &NContext, p: &str, c: &str) -> Implication {
        Implication::new(cells(ctx, p), cells(ctx, c), Scope::objects_vs_rest(ctx.arity()).unwrap()).unwrap()
    }

    #[test]
    fn scope_validation() {
        assert!(Scope::new(3, vec![], vec![0], vec![1]).is_err());
        assert!(Scope::new(3, vec![(2, ElementSet::empty(3))], vec![0], vec![2]).is_err());
        assert!(Scope::new(3, vec![(2, ElementSet::empty(3))], vec![0], vec![1]).is_ok());
    }

    #[test]
    fn closure2_on_flattened_running_example() {
        let c = fixture("running").unwrap();
        let c2 = Scope::objects_vs_rest(3).unwrap().apply(&c).unwrap();
        let x = cells(&c, "(1,a)");
        assert_eq!(closure2(&c2, &x).unwrap(), cells(&c, "(1,a),(2,a),(3,b)"));
        let all = ElementSet::full(9);
        assert_eq!(closure2(&c2, &all).unwrap(), all);
    }

    #[test]
    fn dg_base_small_cases() {
        let full = NContext::from_predicate(vec![numeric_labels(2); 2], |_| true).unwrap();
        let b = dg_base(&full).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b[0].premise.is_empty() && b[0].conclusion.is_full());

        let n = contranominal(2, 3).unwrap();
        assert!(dg_base(&n).unwrap().is_empty());
    }

    #[test]
    fn struct_closure_on_left_context() {
        let c = fixture("pair-left").unwrap();
        let cl = struct_closure(&c, &cells(&c, "(1,b),(1,c)")).unwrap();
        assert!(cl.contains(flat_labels(&c).iter().position(|l| l == "(1,a)").unwrap()));
        let cl = struct_closure(&c, &cells(&c, "(2,a)")).unwrap();
        assert!(cl.contains(flat_labels(&c).iter().position(|l| l == "(3,a)").unwrap()));
    }

    #[test]
    fn dyadic_struct_closure_is_double_prime() {
        let c = NContext::from_predicate(vec![numeric_labels(4), numeric_labels(4)], |t| {
            (t[0] + 2 * t[1]) % 3 != 0
        })
        .unwrap();
        let c2 = Scope::objects_vs_rest(2).unwrap().apply(&c).unwrap();
        for x in ElementSet::all_subsets(4) {
            assert_eq!(struct_closure(&c, &x).unwrap(), closure2(&c2, &x).unwrap());
        }
    }

    #[test]
    fn classification_examples() {
        for name in ["pair-left", "pair-right"] {
            let c = fixture(name).unwrap();
            let r = classify(&c, &imp(&c, "(2,b)", "(1,a)")).unwrap();
            assert_eq!(r.classification, Classification::Contextual, "{name}");
            let r = classify(&c, &imp(&c, "(2,a)", "(3,a)")).unwrap();
            assert_eq!(r.classification, Classification::Structural, "{name}");
        }
        let c = fixture("pair-left").unwrap();
        let r = classify(&c, &imp(&c, "(1,a)", "(1,b)")).unwrap();
        assert_eq!(r.classification, Classification::NotHolding);
        assert_eq!(r.support.count(), 2);
    }

    #[test]
    fn canonical_context_of_stored_example() {
        let c = fixture("minimize-input").unwrap();
        let m = canonical_context(&c).unwrap();
        let expected = fixture("minimize-output").unwrap();
        let descs = |x: &NContext| -> BTreeSet<ElementSet> {
            (0..x.size(0)).map(|o| x.description(o).unwrap()).collect()
        };
        assert_eq!(m.size(0), 4);
        assert_eq!(descs(&m), descs(&expected));
        assert!(lattice_equivalent(&c, &m).unwrap());
    }

    #[test]
    fn equivalence_needs_matching_dims() {
        let a = fixture("pair-left").unwrap();
        let b = fixture("pair-right").unwrap();
        assert!(lattice_equivalent(&a, &b).unwrap());
        let c = fixture("bclass-2x2-compact").unwrap();
        assert!(lattice_equivalent(&a, &c).is_err());
    }
}
