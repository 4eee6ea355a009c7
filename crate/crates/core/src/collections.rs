//! Numerical exceptional collections, mutations, braid words and helices.
//!
//! Everything here works on K-theory classes only. A left mutation replaces
//! `(E, F)` by `(L_E F, E)` with `[L_E F] = [F] − χ(E, F)[E]`; a right mutation
//! replaces `(E, F)` by `(F, R_F E)` with `[R_F E] = [E] − χ(E, F)[F]`. Shifts
//! are invisible except through signs, and all reports say that the checks are
//! necessary conditions unless every class is a line bundle.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::kernel::det_integer;
use crate::lattice::{
    canonical_twist, euler_pairing, inverse_canonical_twist, CohomologyOracle, KClass, LatticeError, SurfaceContext,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CollectionError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("mutation position {position} out of range for a collection of length {len} (letter {letter})")]
    PositionOutOfRange { letter: usize, position: usize, len: usize },
    #[error("cannot parse braid word token {0:?}")]
    BadBraidToken(String),
    #[error("invalid foundation: {0}")]
    InvalidFoundation(String),
    #[error("window bounds lo = {lo} > hi = {hi}")]
    EmptyWindow { lo: i64, hi: i64 },
    #[error("helix window contains classes that are not line bundles (index {index})")]
    NotLineBundles { index: i64 },
    #[error("normalization failed: {0}")]
    NormalizationFailed(String),
}

/// Ordered list of classes on one surface; `base_index` is the helix index of
/// the first member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalSequence {
    pub ctx: SurfaceContext,
    pub classes: Vec<KClass>,
    pub base_index: i64,
}

impl ExceptionalSequence {
    pub fn new(ctx: SurfaceContext, classes: Vec<KClass>, base_index: i64) -> Result<Self, CollectionError> {
        for c in &classes {
            ctx.check_class(c)?;
        }
        Ok(Self { ctx, classes, base_index })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn chi(&self, i: usize, j: usize) -> Result<i64, CollectionError> {
        Ok(euler_pairing(&self.classes[i], &self.classes[j], self.ctx)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Left,
    Right,
}

/// One generator `L_i` or `R_i`, position 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BraidLetter {
    pub position: usize,
    pub direction: Direction,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BraidWord {
    pub letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn new(letters: Vec<BraidLetter>) -> Self {
        Self { letters }
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The word acting as the inverse map.
    pub fn inverse(&self) -> Self {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|l| BraidLetter {
                position: l.position,
                direction: match l.direction {
                    Direction::Left => Direction::Right,
                    Direction::Right => Direction::Left,
                },
            })
            .collect();
        Self { letters }
    }
}

impl FromStr for BraidWord {
    type Err = CollectionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = s
            .split_whitespace()
            .map(|tok| {
                let bad = || CollectionError::BadBraidToken(tok.to_string());
                let mut chars = tok.chars();
                let direction = match chars.next() {
                    Some('L') => Direction::Left,
                    Some('R') => Direction::Right,
                    _ => return Err(bad()),
                };
                let position: usize = chars.as_str().parse().map_err(|_| bad())?;
                if position == 0 {
                    return Err(bad());
                }
                Ok(BraidLetter { position, direction })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { letters })
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self
            .letters
            .iter()
            .map(|l| format!("{}{}", if l.direction == Direction::Left { 'L' } else { 'R' }, l.position))
            .collect();
        write!(f, "{}", toks.join(" "))
    }
}

/// First violated condition found by [`check_collection`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CollectionFailure {
    NotExceptional { index: usize, chi: i64 },
    NotSemiorthogonal { earlier: usize, later: usize, chi: i64 },
    NotUnimodular { det: String },
    Lattice(String),
}

impl fmt::Display for CollectionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CollectionFailure::NotExceptional { index, chi } => {
                write!(f, "chi(E_{0}, E_{0}) = {chi} != 1", index + 1)
            }
            CollectionFailure::NotSemiorthogonal { earlier, later, chi } => {
                write!(f, "chi(E_{}, E_{}) = {chi} != 0", later + 1, earlier + 1)
            }
            CollectionFailure::NotUnimodular { det } => write!(f, "Gram determinant {det} is not +-1"),
            CollectionFailure::Lattice(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollectionReport {
    pub length: usize,
    pub full_length: bool,
    pub failure: Option<CollectionFailure>,
}

impl CollectionReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for CollectionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => writeln!(f, "collection: PASS (length {})", self.length)?,
            Some(e) => writeln!(f, "collection: FAIL ({e})")?,
        }
        writeln!(f, "note: numerical necessary conditions only; Hom/Ext vanishing is certified only for line bundles")
    }
}

/// Numerical exceptionality, semiorthogonality and (for full length) unimodularity.
pub fn check_collection(s: &ExceptionalSequence) -> CollectionReport {
    let n = s.len();
    let full_length = n == s.ctx.k0_rank();
    let report = |failure| CollectionReport { length: n, full_length, failure };
    let gram = match gram_matrix(s) {
        Ok(g) => g,
        Err(e) => return report(Some(CollectionFailure::Lattice(e.to_string()))),
    };
    for (i, row) in gram.iter().enumerate() {
        if row[i] != 1 {
            return report(Some(CollectionFailure::NotExceptional { index: i, chi: row[i] }));
        }
    }
    for i in 0..n {
        for (j, row) in gram.iter().enumerate().skip(i + 1) {
            if row[i] != 0 {
                return report(Some(CollectionFailure::NotSemiorthogonal { earlier: i, later: j, chi: row[i] }));
            }
        }
    }
    if full_length {
        let det = det_integer(&gram);
        if det != 1.into() && det != (-1).into() {
            return report(Some(CollectionFailure::NotUnimodular { det: det.to_string() }));
        }
    }
    report(None)
}

/// `G[i][j] = χ(E_i, E_j)`.
pub fn gram_matrix(s: &ExceptionalSequence) -> Result<Vec<Vec<i64>>, CollectionError> {
    let n = s.len();
    let mut g = vec![vec![0; n]; n];
    for (i, row) in g.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = s.chi(i, j)?;
        }
    }
    Ok(g)
}

/// `[L_E F] = [F] − χ(E, F)[E]`
pub fn left_mutate_class(e: &KClass, f: &KClass, ctx: SurfaceContext) -> Result<KClass, LatticeError> {
    Ok(f.sub_scaled(euler_pairing(e, f, ctx)?, e))
}

/// `[R_F E] = [E] − χ(E, F)[F]`
pub fn right_mutate_class(e: &KClass, f: &KClass, ctx: SurfaceContext) -> Result<KClass, LatticeError> {
    Ok(e.sub_scaled(euler_pairing(e, f, ctx)?, f))
}

fn check_position(s: &ExceptionalSequence, i: usize, letter: usize) -> Result<(), CollectionError> {
    if i == 0 || i >= s.len() {
        return Err(CollectionError::PositionOutOfRange { letter, position: i, len: s.len() });
    }
    Ok(())
}

/// `L_i`, with `i` 1-based.
pub fn left_mutation(s: &ExceptionalSequence, i: usize) -> Result<ExceptionalSequence, CollectionError> {
    check_position(s, i, 0)?;
    let mut out = s.clone();
    let (e, f) = (&s.classes[i - 1], &s.classes[i]);
    out.classes[i - 1] = left_mutate_class(e, f, s.ctx)?;
    out.classes[i] = e.clone();
    Ok(out)
}

/// `R_i`, with `i` 1-based.
pub fn right_mutation(s: &ExceptionalSequence, i: usize) -> Result<ExceptionalSequence, CollectionError> {
    check_position(s, i, 0)?;
    let mut out = s.clone();
    let (e, f) = (&s.classes[i - 1], &s.classes[i]);
    out.classes[i - 1] = f.clone();
    out.classes[i] = right_mutate_class(e, f, s.ctx)?;
    Ok(out)
}

/// Applies the letters left to right.
pub fn apply_braid(s: &ExceptionalSequence, w: &BraidWord) -> Result<ExceptionalSequence, CollectionError> {
    let mut cur = s.clone();
    for (k, l) in w.letters.iter().enumerate() {
        check_position(&cur, l.position, k + 1)?;
        cur = match l.direction {
            Direction::Left => left_mutation(&cur, l.position)?,
            Direction::Right => right_mutation(&cur, l.position)?,
        };
    }
    Ok(cur)
}

fn require_foundation(f: &ExceptionalSequence) -> Result<(), CollectionError> {
    let period = f.ctx.helix_period();
    if f.len() != period {
        return Err(CollectionError::InvalidFoundation(format!(
            "length {} but the helix period of {} is {period}",
            f.len(),
            f.ctx
        )));
    }
    let report = check_collection(f);
    match report.failure {
        None => Ok(()),
        Some(e) => Err(CollectionError::InvalidFoundation(e.to_string())),
    }
}

/// Helix member `E_k`, using `E_{k−ℓ} = E_k ⊗ ω`.
pub fn helix_member(f: &ExceptionalSequence, k: i64) -> Result<KClass, CollectionError> {
    let period = f.len() as i64;
    let offset = k - f.base_index;
    let r = offset.rem_euclid(period);
    let shifts = offset.div_euclid(period);
    let mut c = f.classes[r as usize].clone();
    for _ in 0..shifts.abs() {
        c = if shifts > 0 { inverse_canonical_twist(&c, f.ctx)? } else { canonical_twist(&c, f.ctx)? };
    }
    Ok(c)
}

/// Helix members with indices `lo..=hi`.
pub fn helix_window(
    foundation: &ExceptionalSequence,
    lo: i64,
    hi: i64,
) -> Result<ExceptionalSequence, CollectionError> {
    if lo > hi {
        return Err(CollectionError::EmptyWindow { lo, hi });
    }
    require_foundation(foundation)?;
    let classes = (lo..=hi).map(|k| helix_member(foundation, k)).collect::<Result<Vec<_>, _>>()?;
    Ok(ExceptionalSequence { ctx: foundation.ctx, classes, base_index: lo })
}

/// The composite `L_{E_{i−ℓ+1}} ∘ ⋯ ∘ L_{E_{i−1}}(E_i)` at the class level,
/// where `E_i` is `window.classes[last]` and `last ≥ ℓ − 1`.
pub fn composite_left_mutation(
    window: &ExceptionalSequence,
    last: usize,
    period: usize,
) -> Result<KClass, CollectionError> {
    let mut x = window.classes[last].clone();
    for k in (last + 1 - period..last).rev() {
        x = left_mutate_class(&window.classes[k], &x, window.ctx)?;
    }
    Ok(x)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VeryStrongFailure {
    Collection(CollectionFailure),
    Cohomology { earlier: i64, later: i64, degree: u8, dim: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VeryStrongReport {
    pub window: (i64, i64),
    pub pairs_checked: usize,
    pub failure: Option<VeryStrongFailure>,
}

impl VeryStrongReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for VeryStrongReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.window;
        match &self.failure {
            None => writeln!(f, "very strong: PASS on helix indices {lo}..{hi} ({} pairs)", self.pairs_checked),
            Some(VeryStrongFailure::Collection(e)) => {
                writeln!(f, "very strong: FAIL at semiorthogonality stage ({e})")
            }
            Some(VeryStrongFailure::Cohomology { earlier, later, degree, dim }) => {
                writeln!(f, "very strong: FAIL, Ext^{degree}(E_{earlier}, E_{later}) has dimension {dim}")
            }
        }
    }
}

/// Checks `H^k(D_j − D_i) = 0` for `k ≠ 0` and all `i < j` in a window of
/// `periods` consecutive periods starting at the foundation.
pub fn check_very_strong_line_bundles(
    foundation: &ExceptionalSequence,
    periods: usize,
) -> Result<VeryStrongReport, CollectionError> {
    let ctx = foundation.ctx;
    for (k, c) in foundation.classes.iter().enumerate() {
        if !c.is_line_bundle(ctx) {
            return Err(CollectionError::NotLineBundles { index: foundation.base_index + k as i64 });
        }
    }
    let lo = foundation.base_index;
    let hi = lo + (periods * foundation.len()) as i64 - 1;
    let mut report = VeryStrongReport { window: (lo, hi), pairs_checked: 0, failure: None };
    if let Some(e) = check_collection(foundation).failure {
        report.failure = Some(VeryStrongFailure::Collection(e));
        return Ok(report);
    }
    let window = helix_window(foundation, lo, hi)?;
    let oracle = CohomologyOracle::new(ctx);
    for i in 0..window.len() {
        for j in i + 1..window.len() {
            let diff = window.classes[j].c1.sub(&window.classes[i].c1);
            let coh = oracle.cohomology(&diff)?;
            report.pairs_checked += 1;
            for (degree, dim) in [(1u8, coh.h1), (2u8, coh.h2)] {
                if dim != 0 {
                    report.failure = Some(VeryStrongFailure::Cohomology {
                        earlier: lo + i as i64,
                        later: lo + j as i64,
                        degree,
                        dim,
                    });
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalization {
    /// Classes of `O, O(l), O(2l)` after sign normalization.
    pub plane_block: Vec<KClass>,
    /// Rank-zero classes of type `O_{l_k}(−1)`.
    pub point_classes: Vec<KClass>,
    pub notes: Vec<String>,
}

const PLANE_GRAM: [[i64; 3]; 3] = [[1, 3, 6], [0, 1, 3], [0, 0, 1]];

/// Applies the word for `σ^{-1}` and checks that the result has the shape
/// `(O_{l_1}(−1), …, O_{l_n}(−1), O, O(l), O(2l))` numerically.
pub fn beilinson_orlov_normalize(
    foundation: &ExceptionalSequence,
    w: &BraidWord,
) -> Result<Normalization, CollectionError> {
    let fail = |m: String| CollectionError::NormalizationFailed(m);
    let SurfaceContext::Blowup { n } = foundation.ctx else {
        return Err(fail("the quadric is not a blow-up of the plane".into()));
    };
    let n = n as usize;
    if foundation.len() != n + 3 {
        return Err(fail(format!("collection has length {}, expected {}", foundation.len(), n + 3)));
    }
    let s = apply_braid(foundation, w).map_err(|e| fail(e.to_string()))?;
    let ctx = s.ctx;
    let mut notes = Vec::new();
    let mut signed = Vec::with_capacity(s.len());
    for (k, c) in s.classes.iter().enumerate() {
        // odd shifts negate classes
        let lead = if k < n { first_nonzero_sign(&c.c1.0) } else { c.rank.signum() };
        if lead < 0 {
            notes.push(format!("member {} negated (odd shift)", k + 1));
            signed.push(c.neg());
        } else {
            signed.push(c.clone());
        }
    }
    let plane_block: Vec<KClass> = signed[n..].to_vec();
    for (k, c) in plane_block.iter().enumerate() {
        if c.rank != 1 {
            return Err(fail(format!("plane block member {} has rank {}", k + 1, c.rank)));
        }
    }
    for a in 0..3 {
        for b in 0..3 {
            let chi = euler_pairing(&plane_block[a], &plane_block[b], ctx)?;
            if chi != PLANE_GRAM[a][b] {
                return Err(fail(format!(
                    "plane block pairing chi({}, {}) = {chi}, expected {}",
                    a + 1,
                    b + 1,
                    PLANE_GRAM[a][b]
                )));
            }
        }
    }
    let point_classes: Vec<KClass> = signed[..n].to_vec();
    for (k, c) in point_classes.iter().enumerate() {
        if c.rank != 0 {
            return Err(fail(format!("point class {} has rank {}", k + 1, c.rank)));
        }
        let chi = euler_pairing(c, c, ctx)?;
        if chi != 1 {
            return Err(fail(format!("point class {} has chi(F, F) = {chi}", k + 1)));
        }
    }
    for a in 0..n {
        for b in 0..n {
            if a != b {
                let chi = euler_pairing(&point_classes[a], &point_classes[b], ctx)?;
                if chi != 0 {
                    return Err(fail(format!(
                        "point classes {} and {} are not orthogonal (chi = {chi})",
                        a + 1,
                        b + 1
                    )));
                }
            }
        }
    }
    Ok(Normalization { plane_block, point_classes, notes })
}

fn first_nonzero_sign(v: &[i64]) -> i64 {
    v.iter().find(|&&x| x != 0).map_or(0, |x| x.signum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{line_bundle_class, DivisorClass};

    fn lb(ctx: SurfaceContext, d: &[i64]) -> KClass {
        line_bundle_class(&DivisorClass(d.to_vec()), ctx).unwrap()
    }

    fn p2(classes: &[&[i64]]) -> ExceptionalSequence {
        let ctx = SurfaceContext::plane();
        ExceptionalSequence::new(ctx, classes.iter().map(|d| lb(ctx, d)).collect(), 1).unwrap()
    }

    #[test]
    fn check_collection_examples() {
        assert!(check_collection(&p2(&[&[0], &[1], &[2]])).passed());
        let rep = check_collection(&p2(&[&[0], &[0]]));
        assert_eq!(rep.failure, Some(CollectionFailure::NotSemiorthogonal { earlier: 0, later: 1, chi: 1 }));
        let rep = check_collection(&p2(&[&[1], &[0]]));
        assert_eq!(rep.failure, Some(CollectionFailure::NotSemiorthogonal { earlier: 0, later: 1, chi: 3 }));
    }

    #[test]
    fn mutation_examples() {
        let s = p2(&[&[0], &[1]]);
        let l = left_mutation(&s, 1).unwrap();
        assert_eq!(l.classes[0], KClass::new(-2, vec![1], 1));
        assert_eq!(l.classes[1], s.classes[0]);
        assert_eq!(right_mutation(&l, 1).unwrap(), s);
        // χ = 0 in the mutated direction: pure transposition
        let orth = p2(&[&[1], &[0]]);
        let t = left_mutation(&orth, 1).unwrap();
        assert_eq!(t.classes, vec![orth.classes[1].clone(), orth.classes[0].clone()]);
        assert!(matches!(left_mutation(&s, 2), Err(CollectionError::PositionOutOfRange { .. })));
        assert!(matches!(left_mutation(&s, 0), Err(CollectionError::PositionOutOfRange { .. })));
    }

    #[test]
    fn braid_words() {
        let s = p2(&[&[0], &[1], &[2]]);
        assert_eq!(apply_braid(&s, &BraidWord::default()).unwrap(), s);
        assert_eq!(apply_braid(&s, &"L1 R1".parse().unwrap()).unwrap(), s);
        let a = apply_braid(&s, &"L1 L2 L1".parse().unwrap()).unwrap();
        let b = apply_braid(&s, &"L2 L1 L2".parse().unwrap()).unwrap();
        assert_eq!(a, b);
        let w: BraidWord = "L1 R2 L2".parse().unwrap();
        assert_eq!(w.to_string(), "L1 R2 L2");
        assert_eq!(apply_braid(&apply_braid(&s, &w).unwrap(), &w.inverse()).unwrap(), s);
        assert!(matches!(
            apply_braid(&s, &"L1 L9".parse().unwrap()),
            Err(CollectionError::PositionOutOfRange { letter: 2, position: 9, len: 3 })
        ));
        assert!("X1".parse::<BraidWord>().is_err());
        assert!("L0".parse::<BraidWord>().is_err());
    }

    #[test]
    fn helix_examples() {
        let f = p2(&[&[0], &[1], &[2]]);
        assert_eq!(helix_member(&f, 0).unwrap(), lb(SurfaceContext::plane(), &[-1]));
        assert_eq!(helix_member(&f, 4).unwrap(), lb(SurfaceContext::plane(), &[3]));
        assert_eq!(helix_window(&f, 1, 3).unwrap(), f);
        assert!(matches!(helix_window(&p2(&[&[0], &[0], &[1]]), 0, 1), Err(CollectionError::InvalidFoundation(_))));
    }

    #[test]
    fn omega_twist_matches_composite_mutation() {
        let f = p2(&[&[0], &[1], &[2]]);
        let w = helix_window(&f, 1, 6).unwrap();
        for last in 2..6 {
            let lhs = composite_left_mutation(&w, last, 3).unwrap();
            assert_eq!(lhs, canonical_twist(&w.classes[last], w.ctx).unwrap(), "last = {last}");
        }
    }

    #[test]
    fn gram_examples() {
        assert_eq!(gram_matrix(&p2(&[&[0], &[1], &[2]])).unwrap(), vec![vec![1, 3, 6], vec![0, 1, 3], vec![0, 0, 1]]);
        let q = SurfaceContext::Quadric;
        let f = ExceptionalSequence::new(q, vec![lb(q, &[0, 0]), lb(q, &[0, 1]), lb(q, &[1, 1]), lb(q, &[1, 2])], 1)
            .unwrap();
        let g = gram_matrix(&f).unwrap();
        assert_eq!((g[0][1], g[1][2], g[2][3]), (2, 2, 2));
        for i in 0..4 {
            assert_eq!(g[i][i], 1);
            for j in 0..i {
                assert_eq!(g[i][j], 0);
            }
        }
    }

    #[test]
    fn very_strong_examples() {
        let r = check_very_strong_line_bundles(&p2(&[&[0], &[1], &[2]]), 3).unwrap();
        assert!(r.passed());
        assert_eq!(r.pairs_checked, 36);
        let r = check_very_strong_line_bundles(&p2(&[&[0], &[2], &[1]]), 3).unwrap();
        assert!(matches!(r.failure, Some(VeryStrongFailure::Collection(_))));
        let bad = ExceptionalSequence::new(SurfaceContext::plane(), vec![KClass::new(2, vec![0], 0)], 1).unwrap();
        assert!(matches!(check_very_strong_line_bundles(&bad, 1), Err(CollectionError::NotLineBundles { .. })));
    }

    #[test]
    fn normalization_examples() {
        let f = p2(&[&[0], &[1], &[2]]);
        let n = beilinson_orlov_normalize(&f, &BraidWord::default()).unwrap();
        assert_eq!(n.plane_block, f.classes);
        assert!(n.point_classes.is_empty());
        assert!(matches!(
            beilinson_orlov_normalize(&f, &"L1".parse().unwrap()),
            Err(CollectionError::NormalizationFailed(_))
        ));
        assert!(matches!(
            beilinson_orlov_normalize(&f, &"L5".parse().unwrap()),
            Err(CollectionError::NormalizationFailed(_))
        ));

        let ctx = SurfaceContext::blowup(1).unwrap();
        let f = ExceptionalSequence::new(
            ctx,
            vec![lb(ctx, &[0, 0]), lb(ctx, &[0, 1]), lb(ctx, &[1, 0]), lb(ctx, &[2, 0])],
            1,
        )
        .unwrap();
        let n = beilinson_orlov_normalize(&f, &"L1".parse().unwrap()).unwrap();
        // [O(e_1)] − [O] = [O_{e_1}(−1)]
        assert_eq!(n.point_classes, vec![KClass::new(0, vec![0, 1], -1)]);
        assert_eq!(euler_pairing(&n.point_classes[0], &n.point_classes[0], ctx), Ok(1));
    }
}
