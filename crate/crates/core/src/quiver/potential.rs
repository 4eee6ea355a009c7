use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use super::{CyclicClass, Path, Quiver, QuiverError};
use crate::kernel::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PotentialError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("cycle {0:?} is not primitive")]
    NotPrimitive(Vec<String>),
    #[error("cycle {cycle:?} has winding degree {winding}, expected 1")]
    Inhomogeneous { cycle: Vec<String>, winding: usize },
}

/// Finite linear combination of paths with nonzero rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathCombination {
    terms: BTreeMap<Path, Rational>,
}

impl PathCombination {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, p: Path, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &PathCombination, c: &Rational) {
        for (p, v) in &other.terms {
            self.add_term(p.clone(), &(v * c));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &Path) -> Rational {
        self.terms.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn format(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, c)| format!("({})*{}", crate::kernel::format_rational(c), q.path_ids(p).join(".")))
            .collect();
        parts.join(" + ")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PotentialOptions {
    /// Accept cycles whose winding degree is not 1.
    pub allow_any_winding: bool,
    /// Accept non-primitive cycles such as `x³` on a loop.
    pub allow_non_primitive: bool,
}

impl PotentialOptions {
    pub fn relaxed() -> Self {
        Self { allow_any_winding: true, allow_non_primitive: true }
    }
}

/// Coefficient map on cyclic classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Potential {
    terms: BTreeMap<CyclicClass, Rational>,
}

impl Potential {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    /// Sums repeated classes and drops zero coefficients.
    pub fn new(
        q: &Quiver,
        terms: impl IntoIterator<Item = (CyclicClass, Rational)>,
        opts: PotentialOptions,
    ) -> Result<Self, PotentialError> {
        let mut map: BTreeMap<CyclicClass, Rational> = BTreeMap::new();
        for (c, v) in terms {
            if !opts.allow_non_primitive && !c.is_primitive(q) {
                return Err(PotentialError::NotPrimitive(c.ids(q)));
            }
            if !opts.allow_any_winding {
                let w = c.winding_degree(q)?;
                if w != 1 {
                    return Err(PotentialError::Inhomogeneous { cycle: c.ids(q), winding: w });
                }
            }
            *map.entry(c).or_insert_with(Rational::zero) += v;
        }
        map.retain(|_, v| !v.is_zero());
        Ok(Self { terms: map })
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CyclicClass, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, c: &CyclicClass) -> Rational {
        self.terms.get(c).cloned().unwrap_or_else(Rational::zero)
    }

    /// `αΦ + βΨ`
    pub fn linear_combination(&self, alpha: &Rational, other: &Potential, beta: &Rational) -> Potential {
        let mut map = BTreeMap::new();
        for (c, v) in &self.terms {
            *map.entry(c.clone()).or_insert_with(Rational::zero) += v * alpha;
        }
        for (c, v) in &other.terms {
            *map.entry(c.clone()).or_insert_with(Rational::zero) += v * beta;
        }
        map.retain(|_, v: &mut Rational| !v.is_zero());
        Potential { terms: map }
    }
}

/// `∂/∂a` of a single cycle given by any right-to-left representative.
pub fn cyclic_derivative_of_class(q: &Quiver, cycle: &[usize], a: usize) -> PathCombination {
    let mut out = PathCombination::new();
    let one = Rational::one();
    for (idx, &b) in cycle.iter().enumerate() {
        if b != a {
            continue;
        }
        // a_{i−1} ⋯ a_1 a_k ⋯ a_{i+1}
        let mut v: Vec<usize> = cycle[idx + 1..].to_vec();
        v.extend_from_slice(&cycle[..idx]);
        let p = if v.is_empty() { Path::Trivial(q.t(a)) } else { Path::Arrows(v) };
        out.add_term(p, &one);
    }
    out
}

pub fn cyclic_derivative(q: &Quiver, phi: &Potential, a: usize) -> PathCombination {
    let mut out = PathCombination::new();
    for (c, v) in phi.terms() {
        out.add_scaled(&cyclic_derivative_of_class(q, c.arrows(), a), v);
    }
    out
}

/// One relation `∂Φ/∂a` per arrow, in arrow order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSet {
    pub relations: Vec<(usize, PathCombination)>,
    pub warnings: Vec<String>,
    pub degenerate: bool,
}

impl RelationSet {
    pub fn nonzero(&self) -> impl Iterator<Item = &(usize, PathCombination)> {
        self.relations.iter().filter(|(_, r)| !r.is_zero())
    }

    pub fn for_arrow(&self, a: usize) -> Option<&PathCombination> {
        self.relations.iter().find(|(b, _)| *b == a).map(|(_, r)| r)
    }
}

pub fn jacobian_relations(q: &Quiver, phi: &Potential) -> RelationSet {
    let mut relations = Vec::with_capacity(q.num_arrows());
    let mut warnings = Vec::new();
    for a in 0..q.num_arrows() {
        let r = cyclic_derivative(q, phi, a);
        if r.is_zero() {
            warnings.push(format!("relation for arrow {} is zero", q.arrow_id(a)));
        }
        relations.push((a, r));
    }
    let degenerate = relations.iter().all(|(_, r)| r.is_zero());
    if degenerate {
        warnings.push("potential is zero; all relations vanish".to_string());
    }
    RelationSet { relations, warnings, degenerate }
}
