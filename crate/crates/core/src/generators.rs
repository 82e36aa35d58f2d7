//! Parametric context families, stored fixtures and seeded random contexts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::context::{numeric_labels, NContext};
use crate::error::{Error, Result};
use crate::io::parse_context;

/// Dimension sizes of a context to generate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    sizes: Vec<usize>,
}

impl Shape {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::invalid("a shape needs at least one dimension"));
        }
        Ok(Shape { sizes })
    }

    pub fn cubic(arity: usize, size: usize) -> Result<Self> {
        Shape::new(vec![size; arity])
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn cell_count(&self) -> usize {
        self.sizes.iter().product()
    }
}

const GREEK: [&str; 24] = [
    "α", "β", "γ", "δ", "ε", "ζ", "η", "θ", "ι", "κ", "λ", "μ", "ν", "ξ", "ο", "π", "ρ", "σ", "τ",
    "υ", "φ", "χ", "ψ", "ω",
];

/// `α, β, ...` for up to 24 objects, `o1, o2, ...` beyond.
pub fn object_labels(count: usize) -> Vec<String> {
    if count <= GREEK.len() {
        GREEK[..count].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=count).map(|i| format!("o{i}")).collect()
    }
}

/// `a, b, ...` for up to 26 elements, numbers beyond.
pub fn letter_labels(count: usize) -> Vec<String> {
    if count <= 26 {
        (0..count).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        numeric_labels(count)
    }
}

/// The n-ary contranominal scale of size s: everything except the diagonal.
pub fn contranominal(arity: usize, size: usize) -> Result<NContext> {
    if arity < 2 || size == 0 {
        return Err(Error::invalid("contranominal scale needs arity >= 2 and size >= 1"));
    }
    NContext::from_predicate(vec![numeric_labels(size); arity], |t| {
        t.iter().any(|&x| x != t[0])
    })
}

/// Context whose objects each miss exactly one slab `{x_k = x}` of the
/// feature grid `j_2 x .. x j_n`. Objects are ordered from the last element of
/// the last feature dimension backwards.
pub fn b_class(feature_sizes: &[usize]) -> Result<NContext> {
    if feature_sizes.is_empty() || feature_sizes.contains(&0) {
        return Err(Error::invalid("b-class needs at least one nonempty feature dimension"));
    }
    let slabs: Vec<(usize, usize)> = (0..feature_sizes.len())
        .rev()
        .flat_map(|k| (0..feature_sizes[k]).rev().map(move |x| (k, x)))
        .collect();
    let mut labels = vec![object_labels(slabs.len())];
    for (k, &s) in feature_sizes.iter().enumerate() {
        labels.push(if k == 1 { letter_labels(s) } else { numeric_labels(s) });
    }
    NContext::from_predicate(labels, |t| {
        let (k, x) = slabs[t[0]];
        t[k + 1] != x
    })
}

/// Cubic context of size s whose holes are the tuples with
/// `x_2 = x_1 + x_3 + .. + x_n + offset (mod s)` (0-based indices).
pub fn rook_context(arity: usize, size: usize, offset: usize) -> Result<NContext> {
    if arity < 2 || size == 0 {
        return Err(Error::invalid("rook context needs arity >= 2 and size >= 1"));
    }
    NContext::from_predicate(vec![numeric_labels(size); arity], |t| {
        let sum: usize = t[0] + t[2..].iter().sum::<usize>() + offset;
        t[1] != sum % size
    })
}

const FIXTURES: [(&str, &str); 9] = [
    ("running", include_str!("../fixtures/running.ctx")),
    ("pair-left", include_str!("../fixtures/pair-left.ctx")),
    ("pair-right", include_str!("../fixtures/pair-right.ctx")),
    ("bclass-3x3", include_str!("../fixtures/bclass-3x3.ctx")),
    ("minimize-input", include_str!("../fixtures/minimize-input.ctx")),
    ("minimize-output", include_str!("../fixtures/minimize-output.ctx")),
    ("bclass-2x2-compact", include_str!("../fixtures/bclass-2x2-compact.ctx")),
    ("bclass-3x3-alt", include_str!("../fixtures/bclass-3x3-alt.ctx")),
    ("rook-4x3", include_str!("../fixtures/rook-4x3.ctx")),
];

pub fn fixture_names() -> Vec<&'static str> {
    FIXTURES.iter().map(|(n, _)| *n).collect()
}

/// One of the bundled example contexts, by name.
pub fn fixture(name: &str) -> Result<NContext> {
    let (_, text) = FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| {
            Error::invalid(format!(
                "unknown fixture {name:?}; known: {}",
                fixture_names().join(", ")
            ))
        })?;
    parse_context(text)
}

/// Each cell crossed independently with probability `density`.
pub fn random_context(shape: &Shape, density: f64, seed: u64) -> Result<NContext> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::invalid(format!("density {density} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels = shape.sizes().iter().map(|&s| numeric_labels(s)).collect();
    NContext::from_predicate(labels, |_| rng.gen_bool(density))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::count_concepts;

    #[test]
    fn contranominal_counts() {
        assert_eq!(count_concepts(&contranominal(2, 3).unwrap()), 8);
        assert_eq!(count_concepts(&contranominal(3, 2).unwrap()), 9);
        assert_eq!(count_concepts(&contranominal(3, 3).unwrap()), 27);
    }

    #[test]
    fn b_class_matches_stored_fixture() {
        let b = b_class(&[3, 3]).unwrap();
        assert_eq!(b, fixture("bclass-3x3").unwrap());
        assert_eq!(b.relation_size(), 6 * 6);
    }

    #[test]
    fn rook_matches_stored_fixture() {
        assert_eq!(rook_context(4, 3, 0).unwrap(), fixture("rook-4x3").unwrap());
    }

    #[test]
    fn fixtures_all_parse() {
        for name in fixture_names() {
            fixture(name).unwrap();
        }
        assert!(fixture("nope").is_err());
    }

    #[test]
    fn random_is_seeded() {
        let s = Shape::cubic(3, 4).unwrap();
        assert_eq!(random_context(&s, 0.5, 7).unwrap(), random_context(&s, 0.5, 7).unwrap());
        assert_ne!(random_context(&s, 0.5, 7).unwrap(), random_context(&s, 0.5, 8).unwrap());
        assert_eq!(random_context(&s, 0.0, 1).unwrap().relation_size(), 0);
        assert_eq!(random_context(&s, 1.0, 1).unwrap().relation_size(), 64);
        assert!(random_context(&s, 1.5, 1).is_err());
    }
}
