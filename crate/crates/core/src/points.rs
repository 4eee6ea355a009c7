//! Point representations: dimension vector `(1, …, 1)` on the directed
//! one-level part of the covering quiver, counted over small prime fields.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::graded::lift_end;
use crate::kernel::{format_rational, Field, KernelError, PrimeField, Rational};
use crate::quiver::{CoverVertex, Quiver, QuiverError, RelationSet};
use crate::sklyanin::projective_points;

/// Enumeration budget for [`count_point_representations`].
pub const POINT_BUDGET: u128 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointError {
    #[error("enumeration needs {size} block assignments, budget is {budget}")]
    TooLarge { size: u128, budget: u128 },
    #[error("invalid system: {0}")]
    Invalid(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// Arrows sharing source and target; scaled together.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub source: u32,
    pub target: u32,
    pub vars: Vec<usize>,
}

/// Polynomial in the system variables; monomials are sorted variable lists.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    pub terms: BTreeMap<Vec<usize>, Rational>,
}

impl Polynomial {
    pub fn add_term(&mut self, mut monomial: Vec<usize>, c: &Rational) {
        monomial.sort_unstable();
        let e = self.terms.entry(monomial).or_insert_with(Rational::zero);
        *e += c;
        self.terms.retain(|_, v| !v.is_zero());
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let vars: Vec<&str> = m.iter().map(|&i| names[i].as_str()).collect();
                format!("({})*{}", format_rational(c), vars.join("*"))
            })
            .collect();
        parts.join(" + ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSystem {
    pub variables: Vec<String>,
    pub blocks: Vec<Block>,
    pub equations: Vec<Polynomial>,
    pub scaling: String,
}

impl fmt::Display for PointSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "variables: {}", self.variables.join(" "))?;
        for b in &self.blocks {
            let vs: Vec<&str> = b.vars.iter().map(|&i| self.variables[i].as_str()).collect();
            writeln!(f, "block {} -> {}: {}", b.source, b.target, vs.join(" "))?;
        }
        for e in &self.equations {
            writeln!(f, "{} = 0", e.format(&self.variables))?;
        }
        writeln!(f, "scaling: {}", self.scaling)
    }
}

impl PointSystem {
    /// Every variable must lie in exactly one block.
    pub fn new(variables: Vec<String>, blocks: Vec<Block>, equations: Vec<Polynomial>) -> Result<Self, PointError> {
        let mut seen = vec![0; variables.len()];
        for b in &blocks {
            for &v in &b.vars {
                *seen.get_mut(v).ok_or_else(|| PointError::Invalid(format!("variable index {v}")))? += 1;
            }
        }
        if let Some(v) = seen.iter().position(|&k| k != 1) {
            return Err(PointError::Invalid(format!("variable {} is not in exactly one block", variables[v])));
        }
        for e in &equations {
            if e.terms.keys().flatten().any(|&v| v >= variables.len()) {
                return Err(PointError::Invalid("equation uses an unknown variable".into()));
            }
        }
        let scaling = format!("(k*)^{} scaling each arrow block independently", blocks.len());
        Ok(Self { variables, blocks, equations, scaling })
    }

    /// Substitutes `v_i = Σ_j g[i][j] v'_j` for the variables of one block.
    pub fn change_block_basis(&self, block: usize, g: &[Vec<i64>]) -> Result<Self, PointError> {
        let vars = &self.blocks.get(block).ok_or_else(|| PointError::Invalid(format!("block {block}")))?.vars;
        if g.len() != vars.len() || g.iter().any(|r| r.len() != vars.len()) {
            return Err(PointError::Invalid("basis change has the wrong size".into()));
        }
        let slot: BTreeMap<usize, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut equations = Vec::with_capacity(self.equations.len());
        for e in &self.equations {
            let mut out = Polynomial::default();
            for (m, c) in &e.terms {
                // expand the product one factor at a time
                let mut partial: Vec<(Vec<usize>, Rational)> = vec![(Vec::new(), c.clone())];
                for &v in m {
                    partial = match slot.get(&v) {
                        None => partial
                            .into_iter()
                            .map(|(mut mm, cc)| {
                                mm.push(v);
                                (mm, cc)
                            })
                            .collect(),
                        Some(&i) => partial
                            .into_iter()
                            .flat_map(|(mm, cc)| {
                                (0..vars.len()).filter(|&j| g[i][j] != 0).map(move |j| {
                                    let mut m2 = mm.clone();
                                    m2.push(vars[j]);
                                    (m2, &cc * Rational::from_integer(g[i][j].into()))
                                })
                            })
                            .collect(),
                    };
                }
                for (mm, cc) in partial {
                    out.add_term(mm, &cc);
                }
            }
            equations.push(out);
        }
        Ok(Self { equations, ..self.clone() })
    }
}

/// One variable per non-wrap arrow; one equation per relation whose lift from
/// level 0 stays on level 0.
pub fn point_representation_system(q: &Quiver, rels: &RelationSet) -> Result<PointSystem, PointError> {
    let mut var_of = vec![None; q.num_arrows()];
    let mut variables = Vec::new();
    let mut blocks: Vec<Block> = Vec::new();
    for a in 0..q.num_arrows() {
        if q.is_wrap(a)? {
            continue;
        }
        let v = variables.len();
        var_of[a] = Some(v);
        variables.push(q.arrow_id(a).to_string());
        let (s, t) = (q.vertices()[q.s(a)], q.vertices()[q.t(a)]);
        match blocks.iter_mut().find(|b| b.source == s && b.target == t) {
            Some(b) => b.vars.push(v),
            None => blocks.push(Block { source: s, target: t, vars: vec![v] }),
        }
    }
    let mut equations = Vec::new();
    for (b, r) in rels.nonzero() {
        let start = CoverVertex { vertex: q.t(*b), level: 0 };
        let mut eq = Polynomial::default();
        let mut fits = true;
        for (p, c) in r.terms() {
            let trav = p.traversal();
            if lift_end(q, start, &trav)?.level != 0 {
                fits = false;
                break;
            }
            let mono: Option<Vec<usize>> = trav.iter().map(|&a| var_of[a]).collect();
            eq.add_term(mono.expect("level-0 paths use non-wrap arrows"), c);
        }
        if fits && !eq.is_zero() {
            equations.push(eq);
        }
    }
    PointSystem::new(variables, blocks, equations)
}

/// Solutions with every block vector nonzero, modulo scaling each block.
pub fn count_point_representations(sys: &PointSystem, p: u64) -> Result<u64, PointError> {
    let f = PrimeField::new(p)?;
    let size = sys.blocks.iter().fold(1u128, |acc, b| {
        let n = b.vars.len() as u32;
        acc.saturating_mul((u128::from(p).pow(n) - 1) / (u128::from(p) - 1))
    });
    if size > POINT_BUDGET {
        return Err(PointError::TooLarge { size, budget: POINT_BUDGET });
    }
    let block_of: BTreeMap<usize, usize> =
        sys.blocks.iter().enumerate().flat_map(|(k, b)| b.vars.iter().map(move |&v| (v, k))).collect();
    // equations are checked as soon as their last block is assigned
    let mut due: Vec<Vec<Vec<(Vec<usize>, u64)>>> = vec![Vec::new(); sys.blocks.len()];
    for e in &sys.equations {
        let terms = e
            .terms
            .iter()
            .map(|(m, c)| Ok((m.clone(), f.from_rational(c)?)))
            .collect::<Result<Vec<_>, KernelError>>()?;
        match e.terms.keys().flatten().map(|v| block_of[v]).max() {
            Some(k) => due[k].push(terms),
            // constant equation
            None if terms.iter().all(|(_, c)| *c == 0) => {}
            None => return Ok(0),
        }
    }
    let points: Vec<Vec<Vec<u64>>> = sys.blocks.iter().map(|b| projective_points(p, b.vars.len())).collect();
    let mut values = vec![0u64; sys.variables.len()];

    fn go(
        k: usize,
        f: &PrimeField,
        sys: &PointSystem,
        points: &[Vec<Vec<u64>>],
        due: &[Vec<Vec<(Vec<usize>, u64)>>],
        values: &mut [u64],
    ) -> u64 {
        if k == sys.blocks.len() {
            return 1;
        }
        let mut total = 0;
        for pt in &points[k] {
            for (&v, &x) in sys.blocks[k].vars.iter().zip(pt) {
                values[v] = x;
            }
            let ok = due[k].iter().all(|eq| {
                eq.iter().fold(0, |acc, (m, c)| f.add(&acc, &m.iter().fold(*c, |a, &v| f.mul(&a, &values[v])))) == 0
            });
            if ok {
                total += go(k + 1, f, sys, points, due, values);
            }
        }
        total
    }
    Ok(go(0, &f, sys, &points, &due, &mut values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::jacobian_relations;
    use crate::sklyanin::{sklyanin_potential, SklyaninParams};

    fn system(a: i64, b: i64, c: i64) -> PointSystem {
        let (q, phi) = sklyanin_potential(&SklyaninParams::from_ints(a, b, c).unwrap()).unwrap();
        point_representation_system(&q, &jacobian_relations(&q, &phi)).unwrap()
    }

    #[test]
    fn plane_system_shape() {
        let s = system(1, 2, 3);
        assert_eq!(s.variables.len(), 6);
        assert_eq!(s.blocks.len(), 2);
        assert_eq!(s.equations.len(), 3);
        assert!(s.equations.iter().all(|e| e.degree() == 2 && e.terms.len() == 3));
    }

    #[test]
    fn commutative_counts_the_plane() {
        assert_eq!(count_point_representations(&system(1, -1, 0), 5).unwrap(), 31);
    }

    #[test]
    fn no_relations() {
        let s = PointSystem::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![Block { source: 1, target: 2, vars: vec![0, 1, 2] }],
            vec![],
        )
        .unwrap();
        assert_eq!(count_point_representations(&s, 2).unwrap(), 7);
        let q = crate::sklyanin::plane_quiver();
        let empty =
            point_representation_system(&q, &jacobian_relations(&q, &crate::quiver::Potential::zero())).unwrap();
        assert!(empty.equations.is_empty());
    }

    #[test]
    fn budget_and_validation() {
        let s = PointSystem::new(
            (0..12).map(|i| format!("v{i}")).collect(),
            vec![Block { source: 1, target: 2, vars: (0..12).collect() }],
            vec![],
        )
        .unwrap();
        assert!(matches!(count_point_representations(&s, 13), Err(PointError::TooLarge { .. })));
        assert!(PointSystem::new(vec!["a".into()], vec![], vec![]).is_err());
        assert!(count_point_representations(&system(1, 2, 3), 4).is_err());
    }

    #[test]
    fn basis_change_preserves_count() {
        let s = system(1, 2, 3);
        let g = vec![vec![1, 1, 0], vec![0, 1, 0], vec![2, 1, 1]];
        let t = s.change_block_basis(0, &g).unwrap().change_block_basis(1, &g).unwrap();
        assert_ne!(s.equations, t.equations);
        for p in [5, 7] {
            assert_eq!(count_point_representations(&s, p).unwrap(), count_point_representations(&t, p).unwrap());
        }
    }
}
