//! Arrow counts of the rolled-up helix quiver from the K-theoretic shadow of
//! the covering-quiver resolution of each simple.
//!
//! For vertex `i` the resolution
//! `0 → P(i,d−1) → ⊕_{š(b)=(i,d−1)} P(ť(b)) → ⊕_{ť(a)=(i,d)} P(š(a)) → P(i,d)`
//! has alternating class sum zero once `P(j,d) ↦ [E_j]` and
//! `P(j,d−1) ↦ ρ[E_j]` with `ρ = − ⊗ ω`. Collecting terms gives
//! `[E_i] − ρ[E_i] + Σ_{j<i} d_ij [E_j] + Σ_{j>i} d_ij ρ[E_j] = 0` with
//! `d_ij = a(i→j) − a(j→i)`.

use std::fmt;

use num_traits::ToPrimitive;
use thiserror::Error;

use super::{Arrow, Quiver, QuiverError};
use crate::collections::{check_collection, ExceptionalSequence};
use crate::kernel::{int, solve_unique_integer, ExactMatrix, KernelError, Rational};
use crate::lattice::{canonical_twist, KClass, LatticeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RollupError {
    #[error("vertex {vertex}: arrow counts are not determined (column rank {rank} < {cols})")]
    NonUnique { vertex: usize, rank: usize, cols: usize },
    #[error("vertex {vertex}: the class equation has no solution")]
    NoSolution { vertex: usize },
    #[error("vertex {vertex}: arrow count {value} is not an integer")]
    NonIntegral { vertex: usize, value: String },
    #[error("d_{i}{j} = {dij} but d_{j}{i} = {dji}; the systems are not antisymmetric")]
    NegativePairInconsistent { i: usize, j: usize, dij: i64, dji: i64 },
    #[error("foundation has length {got}, helix period is {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// One entry of a resolution template: `P(vertex, d + level_offset)^multiplicity`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateTerm {
    pub vertex: usize,
    pub level_offset: i64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionTemplate {
    pub vertex: usize,
    /// Targets of arrows out of `(i, d−1)`.
    pub out_of_previous: Vec<TemplateTerm>,
    /// Sources of arrows into `(i, d)`.
    pub into_current: Vec<TemplateTerm>,
}

fn group_terms(q: &Quiver, mut raw: Vec<(usize, i64)>) -> Result<Vec<TemplateTerm>, QuiverError> {
    let mut keyed = Vec::with_capacity(raw.len());
    for (v, off) in raw.drain(..) {
        keyed.push(((off, q.position(v)?), v));
    }
    keyed.sort();
    let mut out: Vec<TemplateTerm> = Vec::new();
    for ((off, _), v) in keyed {
        match out.last_mut() {
            Some(t) if t.vertex == v && t.level_offset == off => t.multiplicity += 1,
            _ => out.push(TemplateTerm { vertex: v, level_offset: off, multiplicity: 1 }),
        }
    }
    Ok(out)
}

/// Shape of the resolution of the simple at vertex index `i`.
pub fn resolution_template(q: &Quiver, i: usize) -> Result<ResolutionTemplate, QuiverError> {
    let mut out = Vec::new();
    let mut into = Vec::new();
    for a in 0..q.num_arrows() {
        let wrap = i64::from(q.is_wrap(a)?);
        if q.s(a) == i {
            out.push((q.t(a), -1 + wrap));
        }
        if q.t(a) == i {
            into.push((q.s(a), -wrap));
        }
    }
    Ok(ResolutionTemplate { vertex: i, out_of_previous: group_terms(q, out)?, into_current: group_terms(q, into)? })
}

impl ResolutionTemplate {
    pub fn format(&self, q: &Quiver) -> String {
        let p = |v: usize, off: i64| {
            let lvl = if off == 0 { "d".to_string() } else { format!("d{off:+}") };
            format!("P({},{lvl})", q.vertices()[v],)
        };
        let terms = |ts: &[TemplateTerm]| {
            if ts.is_empty() {
                return "0".to_string();
            }
            ts.iter()
                .map(|t| {
                    if t.multiplicity == 1 {
                        p(t.vertex, t.level_offset)
                    } else {
                        format!("{}^{}", p(t.vertex, t.level_offset), t.multiplicity)
                    }
                })
                .collect::<Vec<_>>()
                .join(" + ")
        };
        format!(
            "0 -> {} -> {} -> {} -> {} -> S({},d) -> 0",
            p(self.vertex, -1),
            terms(&self.out_of_previous),
            terms(&self.into_current),
            p(self.vertex, 0),
            q.vertices()[self.vertex]
        )
    }
}

/// Alternating class sum of a template; zero for a consistent rolled-up quiver.
/// `classes[p]` is the foundation member at order position `p`.
pub fn resolution_euler_defect(
    q: &Quiver,
    t: &ResolutionTemplate,
    classes: &[KClass],
    ctx: crate::lattice::SurfaceContext,
) -> Result<KClass, RollupError> {
    let class_of = |v: usize, off: i64| -> Result<KClass, RollupError> {
        let c = classes[q.position(v)?].clone();
        Ok(if off == 0 { c } else { canonical_twist(&c, ctx)? })
    };
    let mut sum = class_of(t.vertex, 0)?.sub_scaled(1, &class_of(t.vertex, -1)?);
    for term in &t.into_current {
        sum = sum.sub_scaled(term.multiplicity as i64, &class_of(term.vertex, term.level_offset)?);
    }
    for term in &t.out_of_previous {
        sum = sum.add(&class_of(term.vertex, term.level_offset)?.scale(term.multiplicity as i64));
    }
    Ok(sum)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RollupReport {
    pub lines: Vec<String>,
}

impl fmt::Display for RollupReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct RolledUpQuiver {
    pub quiver: Quiver,
    /// `differences[i][j] = d_ij = a(i→j) − a(j→i)`, 0-based.
    pub differences: Vec<Vec<i64>>,
    /// `multiplicities[i][j] = a(i→j)`.
    pub multiplicities: Vec<Vec<usize>>,
    pub report: RollupReport,
}

/// Arrow id for the `k`-th arrow from `i` to `j` (1-based labels).
pub fn rollup_arrow_id(j: usize, i: usize, k: usize, wide: bool) -> String {
    if wide {
        format!("x{j}_{i}_{k}")
    } else {
        format!("x{j}{i}{k}")
    }
}

fn coordinates(c: &KClass) -> Vec<Rational> {
    c.coordinates().into_iter().map(int).collect()
}

/// Solves the per-vertex class equations and builds the quiver with the
/// no-2-cycle convention `a(i→j) = max(d_ij, 0)`.
pub fn rollup_quiver_from_foundation(f: &ExceptionalSequence) -> Result<RolledUpQuiver, RollupError> {
    let ctx = f.ctx;
    let l = f.len();
    if l != ctx.helix_period() {
        return Err(RollupError::WrongLength { expected: ctx.helix_period(), got: l });
    }
    let twisted = f.classes.iter().map(|c| canonical_twist(c, ctx)).collect::<Result<Vec<_>, _>>()?;
    let dim = ctx.k0_rank();

    let mut systems = Vec::with_capacity(l);
    for i in 0..l {
        let cols: Vec<usize> = (0..l).filter(|&j| j != i).collect();
        let mut entries = vec![Rational::from_integer(0.into()); dim * cols.len()];
        for (c, &j) in cols.iter().enumerate() {
            let v = if j < i { coordinates(&f.classes[j]) } else { coordinates(&twisted[j]) };
            for (r, x) in v.into_iter().enumerate() {
                entries[r * cols.len() + c] = x;
            }
        }
        let m = ExactMatrix::new(dim, cols.len(), entries).expect("shape");
        let rhs: Vec<Rational> =
            coordinates(&twisted[i]).into_iter().zip(coordinates(&f.classes[i])).map(|(a, b)| a - b).collect();
        let rank = crate::kernel::rank_rational(&m);
        if rank < cols.len() {
            return Err(RollupError::NonUnique { vertex: i + 1, rank, cols: cols.len() });
        }
        systems.push((cols, m, rhs));
    }

    let mut d = vec![vec![0i64; l]; l];
    for (i, (cols, m, rhs)) in systems.iter().enumerate() {
        let x = solve_unique_integer(m, rhs).map_err(|e| match e {
            KernelError::NonUnique { rank, cols } => RollupError::NonUnique { vertex: i + 1, rank, cols },
            KernelError::NonIntegral { value, .. } => RollupError::NonIntegral { vertex: i + 1, value },
            _ => RollupError::NoSolution { vertex: i + 1 },
        })?;
        for (&j, v) in cols.iter().zip(x) {
            d[i][j] = v.to_i64().expect("arrow count fits in i64");
        }
    }
    for i in 0..l {
        for j in i + 1..l {
            if d[i][j] != -d[j][i] {
                return Err(RollupError::NegativePairInconsistent { i: i + 1, j: j + 1, dij: d[i][j], dji: d[j][i] });
            }
        }
    }

    let mult: Vec<Vec<usize>> = d.iter().map(|row| row.iter().map(|&x| x.max(0) as usize).collect()).collect();
    let wide = l > 9 || mult.iter().flatten().any(|&m| m > 9);
    let mut arrows = Vec::new();
    for (i, row) in mult.iter().enumerate() {
        for (j, &m) in row.iter().enumerate() {
            for k in 1..=m {
                arrows.push(Arrow {
                    id: rollup_arrow_id(j + 1, i + 1, k, wide),
                    source: (i + 1) as u32,
                    target: (j + 1) as u32,
                });
            }
        }
    }
    let ids: Vec<u32> = (1..=l as u32).collect();
    let quiver = Quiver::new(ids.clone(), arrows, Some(ids))?;

    let mut lines = Vec::new();
    lines.push(format!("rolled-up quiver for {} foundation of length {l}", ctx));
    let coll = check_collection(f);
    if !coll.passed() {
        lines.push(format!("warning: foundation fails the collection check: {}", coll.failure.as_ref().unwrap()));
    }
    for i in 0..l {
        let t = resolution_template(&quiver, i)?;
        let defect = resolution_euler_defect(&quiver, &t, &f.classes, ctx)?;
        let ok = defect.coordinates().iter().all(|&c| c == 0);
        let ds: Vec<String> = (0..l).filter(|&j| j != i).map(|j| format!("d{}{}={}", i + 1, j + 1, d[i][j])).collect();
        lines.push(format!("vertex {}: {}", i + 1, ds.join(" ")));
        lines.push(format!("  covering form:  {}", t.format(&quiver)));
        lines.push(format!("  index form:     {}", index_shape(&mult, i)));
        lines.push(format!("  euler identity: {}", if ok { "ok" } else { "VIOLATED" }));
    }
    Ok(RolledUpQuiver { quiver, differences: d, multiplicities: mult, report: RollupReport { lines } })
}

/// `0 → P_{i−ℓ} → ⊕_{i<j≤ℓ} P_{j−ℓ}^{m_ji} → ⊕_{1≤j<i} P_j^{m_ij} → P_i`,
/// which lists no wrap-arrow terms.
fn index_shape(mult: &[Vec<usize>], i: usize) -> String {
    let l = mult.len();
    let fmt_terms = |v: Vec<String>| if v.is_empty() { "0".to_string() } else { v.join(" + ") };
    let left: Vec<String> =
        (i + 1..l).filter(|&j| mult[i][j] > 0).map(|j| format!("P_{{{}-l}}^{}", j + 1, mult[i][j])).collect();
    let right: Vec<String> =
        (0..i).filter(|&j| mult[j][i] > 0).map(|j| format!("P_{}^{}", j + 1, mult[j][i])).collect();
    format!("0 -> P_{{{}-l}} -> {} -> {} -> P_{}", i + 1, fmt_terms(left), fmt_terms(right), i + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{line_bundle_class, DivisorClass, SurfaceContext};

    fn foundation(ctx: SurfaceContext, divs: &[&[i64]]) -> ExceptionalSequence {
        let classes = divs.iter().map(|d| line_bundle_class(&DivisorClass(d.to_vec()), ctx).unwrap()).collect();
        ExceptionalSequence::new(ctx, classes, 1).unwrap()
    }

    #[test]
    fn plane_rollup() {
        let f = foundation(SurfaceContext::plane(), &[&[0], &[1], &[2]]);
        let r = rollup_quiver_from_foundation(&f).unwrap();
        assert_eq!(r.differences[0][1], 3);
        assert_eq!(r.differences[0][2], -3);
        assert_eq!(r.multiplicities, vec![vec![0, 3, 0], vec![0, 0, 3], vec![3, 0, 0]]);
        assert_eq!(r.quiver.arrows()[0].id, "x211");
        assert!(r.report.lines.iter().all(|l| !l.contains("VIOLATED")));
    }

    #[test]
    fn quadric_rollup() {
        let q = SurfaceContext::Quadric;
        let f = foundation(q, &[&[0, 0], &[0, 1], &[1, 1], &[1, 2]]);
        let r = rollup_quiver_from_foundation(&f).unwrap();
        let expect = vec![vec![0, 2, 0, 0], vec![0, 0, 2, 0], vec![0, 0, 0, 2], vec![2, 0, 0, 0]];
        assert_eq!(r.multiplicities, expect);
    }

    #[test]
    fn repeated_class_is_not_unique() {
        let f = foundation(SurfaceContext::plane(), &[&[0], &[1], &[1]]);
        assert!(matches!(rollup_quiver_from_foundation(&f), Err(RollupError::NonUnique { .. })));
        let f = foundation(SurfaceContext::plane(), &[&[0], &[0], &[2]]);
        assert!(matches!(rollup_quiver_from_foundation(&f), Err(RollupError::NonUnique { .. })));
    }

    #[test]
    fn plane_templates() {
        let f = foundation(SurfaceContext::plane(), &[&[0], &[1], &[2]]);
        let r = rollup_quiver_from_foundation(&f).unwrap();
        let t1 = resolution_template(&r.quiver, 0).unwrap();
        assert_eq!(t1.out_of_previous, vec![TemplateTerm { vertex: 1, level_offset: -1, multiplicity: 3 }]);
        assert_eq!(t1.into_current, vec![TemplateTerm { vertex: 2, level_offset: -1, multiplicity: 3 }]);
        let t2 = resolution_template(&r.quiver, 1).unwrap();
        assert_eq!(t2.out_of_previous, vec![TemplateTerm { vertex: 2, level_offset: -1, multiplicity: 3 }]);
        assert_eq!(t2.into_current, vec![TemplateTerm { vertex: 0, level_offset: 0, multiplicity: 3 }]);

        let lonely = Quiver::new(vec![1, 2], vec![], Some(vec![1, 2])).unwrap();
        let t = resolution_template(&lonely, 0).unwrap();
        assert!(t.out_of_previous.is_empty() && t.into_current.is_empty());
    }
}
