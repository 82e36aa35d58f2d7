//! Dyadic derivation operators and the lectic-order closure enumeration.

use crate::bitset::ElementSet;
use crate::context::NContext;
use crate::error::{Error, Result};

/// A 2-context as object rows and attribute columns.
#[derive(Clone, Debug)]
pub struct Dyadic {
    rows: Vec<ElementSet>,
    cols: Vec<ElementSet>,
}

impl Dyadic {
    pub fn from_context(ctx: &NContext) -> Result<Self> {
        if ctx.arity() != 2 {
            return Err(Error::invalid(format!(
                "expected a 2-context, got arity {}",
                ctx.arity()
            )));
        }
        let (g, m) = (ctx.size(0), ctx.size(1));
        Ok(Self::from_fn(g, m, |o, a| ctx.contains_unchecked(&[o, a])))
    }

    pub fn from_fn(objects: usize, attributes: usize, crossed: impl Fn(usize, usize) -> bool) -> Self {
        let mut rows = vec![ElementSet::empty(attributes); objects];
        let mut cols = vec![ElementSet::empty(objects); attributes];
        for (o, row) in rows.iter_mut().enumerate() {
            for (a, col) in cols.iter_mut().enumerate() {
                if crossed(o, a) {
                    row.insert(a);
                    col.insert(o);
                }
            }
        }
        Dyadic { rows, cols }
    }

    pub fn objects(&self) -> usize {
        self.rows.len()
    }

    pub fn attributes(&self) -> usize {
        self.cols.len()
    }

    pub fn row(&self, object: usize) -> &ElementSet {
        &self.rows[object]
    }

    /// Objects having every attribute of `attrs`.
    pub fn extent(&self, attrs: &ElementSet) -> ElementSet {
        let mut ext = ElementSet::full(self.objects());
        for a in attrs.iter() {
            ext.intersect_with(&self.cols[a]);
        }
        ext
    }

    /// Attributes shared by every object of `objs`; all attributes when
    /// `objs` is empty.
    pub fn intent(&self, objs: &ElementSet) -> ElementSet {
        let mut int = ElementSet::full(self.attributes());
        for o in objs.iter() {
            int.intersect_with(&self.rows[o]);
        }
        int
    }

    pub fn closure(&self, attrs: &ElementSet) -> ElementSet {
        self.intent(&self.extent(attrs))
    }

    /// All intents in lectic order.
    pub fn intents(&self) -> Vec<ElementSet> {
        closed_sets(self.attributes(), |s| self.closure(s))
    }
}

/// The lectically next closed set after `current`, or `None` if `current`
/// is the last one.
pub fn next_closure(
    current: &ElementSet,
    close: impl Fn(&ElementSet) -> ElementSet,
) -> Option<ElementSet> {
    let mut a = current.clone();
    for i in (0..current.universe()).rev() {
        if a.contains(i) {
            a.remove(i);
        } else {
            let b = close(&a.with(i));
            let mut new = b.difference(&a);
            new.truncate_below(i);
            if new.is_empty() {
                return Some(b);
            }
        }
    }
    None
}

/// Every closed set of `close` over a universe of size `len`, in lectic order.
pub fn closed_sets(len: usize, close: impl Fn(&ElementSet) -> ElementSet) -> Vec<ElementSet> {
    let mut out = Vec::new();
    let mut cur = Some(close(&ElementSet::empty(len)));
    while let Some(a) = cur {
        cur = next_closure(&a, &close);
        out.push(a);
    }
    out
}
