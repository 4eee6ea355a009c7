//! Sklyanin potentials on the plane quiver, their point-scheme cubics and
//! Hesse-form smoothness.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::formats::{builtin_foundation, FormatError};
use crate::kernel::{format_rational, int, parse_rational, Field, KernelError, PrimeField, Rational};
use crate::quiver::{
    jacobian_relations, rollup_quiver_from_foundation, CyclicClass, Potential, PotentialError, PotentialOptions,
    Quiver, RelationSet,
};

#[derive(Debug, Error)]
pub enum SklyaninError {
    #[error("parameters (a, b, c) are all zero")]
    AllZeroParams,
    #[error("cannot parse parameters {0:?}; expected a,b,c")]
    BadParams(String),
    #[error("relations are not of uniform block shape: {0}")]
    MalformedRelations(String),
    #[error("cubic is not of the form l*xyz + m*(x^3 + y^3 + z^3)")]
    NotHesseFamily,
    #[error("Hesse smoothness criterion needs characteristic other than 3")]
    CharacteristicThree,
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error(transparent)]
    Format(#[from] FormatError),
}

/// Projective parameters `(a : b : c)`, first nonzero coordinate 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SklyaninParams {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl SklyaninParams {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self, SklyaninError> {
        let lead = [&a, &b, &c].into_iter().find(|x| !x.is_zero()).cloned().ok_or(SklyaninError::AllZeroParams)?;
        Ok(Self { a: a / &lead, b: b / &lead, c: c / &lead })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self, SklyaninError> {
        Self::new(int(a), int(b), int(c))
    }

    /// `"a,b,c"` with each entry an integer or `p/q`.
    pub fn parse(s: &str) -> Result<Self, SklyaninError> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(SklyaninError::BadParams(s.to_string()));
        }
        let v = parts.iter().map(|p| parse_rational(p)).collect::<Result<Vec<_>, _>>()?;
        let [a, b, c]: [Rational; 3] = v.try_into().expect("three entries");
        Self::new(a, b, c)
    }
}

impl fmt::Display for SklyaninParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {} : {})", format_rational(&self.a), format_rational(&self.b), format_rational(&self.c))
    }
}

/// Rolled-up quiver of `O, O(h), O(2h)`: blocks `1→2`, `2→3`, `3→1`, with
/// `x, y, z` the arrows numbered 1, 2, 3 in each block.
pub fn plane_quiver() -> Quiver {
    let f = builtin_foundation("p2").expect("shipped foundation");
    rollup_quiver_from_foundation(&f).expect("plane foundation rolls up").quiver
}

const A_PATTERNS: [[usize; 3]; 3] = [[1, 2, 3], [2, 3, 1], [3, 1, 2]];
const B_PATTERNS: [[usize; 3]; 3] = [[1, 3, 2], [3, 2, 1], [2, 1, 3]];
const C_PATTERNS: [[usize; 3]; 3] = [[1, 1, 1], [2, 2, 2], [3, 3, 3]];

fn plane_cycle(q: &Quiver, p: [usize; 3]) -> CyclicClass {
    let ids = [format!("x13{}", p[2]), format!("x32{}", p[1]), format!("x21{}", p[0])];
    CyclicClass::from_ids(q, &ids).expect("plane quiver arrows")
}

/// `Φ = a Σ_{(x,y,z) cyclic} + b Σ_{(x,z,y) cyclic} + c Σ (x,x,x)`, where a
/// pattern lists the arrow letters used on blocks 1, 2, 3.
pub fn sklyanin_potential(params: &SklyaninParams) -> Result<(Quiver, Potential), SklyaninError> {
    let q = plane_quiver();
    let mut terms = Vec::with_capacity(9);
    for (patterns, coeff) in [(A_PATTERNS, &params.a), (B_PATTERNS, &params.b), (C_PATTERNS, &params.c)] {
        for p in patterns {
            terms.push((plane_cycle(&q, p), coeff.clone()));
        }
    }
    let phi = Potential::new(&q, terms, PotentialOptions::default())?;
    Ok((q, phi))
}

/// Matrix whose entries are linear forms in the first-block variables:
/// `r_k = Σ_l M_{kl}(first) · second_l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFormMatrix {
    /// Arrows whose relations give the rows.
    pub relation_arrows: Vec<usize>,
    pub first_block: Vec<usize>,
    pub second_block: Vec<usize>,
    /// `entries[k][l][i]` is the coefficient of first-block variable `i` in `M_{kl}`.
    pub entries: Vec<Vec<Vec<Rational>>>,
}

impl LinearFormMatrix {
    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().flatten().all(Zero::is_zero)
    }

    pub fn format(&self, vars: &[&str]) -> String {
        let form = |f: &[Rational]| {
            let parts: Vec<String> = f
                .iter()
                .zip(vars)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, v)| if c.is_one() { v.to_string() } else { format!("{}*{v}", format_rational(c)) })
                .collect();
            if parts.is_empty() {
                "0".to_string()
            } else {
                parts.join(" + ")
            }
        };
        self.entries
            .iter()
            .map(|row| row.iter().map(|f| form(f)).collect::<Vec<_>>().join("\t"))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Rows come from the relations `∂Φ/∂b` for arrows `b` closing the block pair
/// `first = (u → v)`, `second = (v → w)`; as vertex indices.
pub fn multilinearize_relations(
    q: &Quiver,
    rels: &RelationSet,
    first: (usize, usize),
    second: (usize, usize),
) -> Result<LinearFormMatrix, SklyaninError> {
    if first.1 != second.0 {
        return Err(SklyaninError::MalformedRelations("blocks are not consecutive".into()));
    }
    let first_block: Vec<usize> = q.arrows_between(first.0, first.1).collect();
    let second_block: Vec<usize> = q.arrows_between(second.0, second.1).collect();
    let relation_arrows: Vec<usize> = q.arrows_between(second.1, first.0).collect();
    let mut entries = vec![vec![vec![Rational::zero(); first_block.len()]; second_block.len()]; relation_arrows.len()];
    for (k, &b) in relation_arrows.iter().enumerate() {
        let Some(r) = rels.for_arrow(b) else { continue };
        for (p, c) in r.terms() {
            let t = p.traversal();
            let (Some(i), Some(l)) = (
                t.first().and_then(|a| first_block.iter().position(|x| x == a)),
                t.get(1).and_then(|a| second_block.iter().position(|x| x == a)),
            ) else {
                return Err(SklyaninError::MalformedRelations(format!("term {:?}", q.path_ids(p))));
            };
            if t.len() != 2 {
                return Err(SklyaninError::MalformedRelations(format!("term {:?}", q.path_ids(p))));
            }
            entries[k][l][i] += c;
        }
    }
    Ok(LinearFormMatrix { relation_arrows, first_block, second_block, entries })
}

/// The 3×3 matrix of the Sklyanin relations on blocks `1→2`, `2→3`.
pub fn sklyanin_point_matrix(params: &SklyaninParams) -> Result<LinearFormMatrix, SklyaninError> {
    let (q, phi) = sklyanin_potential(params)?;
    let rels = jacobian_relations(&q, &phi);
    let v = |id: u32| q.vertex_index(id).expect("plane vertex");
    multilinearize_relations(&q, &rels, (v(1), v(2)), (v(2), v(3)))
}

/// Exponents `(i, j, k)` of `x^i y^j z^k` in lexicographic order.
pub const CUBIC_MONOMIALS: [[u8; 3]; 10] =
    [[3, 0, 0], [2, 1, 0], [2, 0, 1], [1, 2, 0], [1, 1, 1], [1, 0, 2], [0, 3, 0], [0, 2, 1], [0, 1, 2], [0, 0, 3]];

/// Ternary cubic, coefficients ordered as [`CUBIC_MONOMIALS`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicForm {
    pub coefficients: [Rational; 10],
}

impl CubicForm {
    pub fn new(coefficients: [Rational; 10]) -> Self {
        Self { coefficients }
    }

    /// `λ·xyz + μ·(x³ + y³ + z³)`
    pub fn hesse(lambda: Rational, mu: Rational) -> Self {
        let mut c: [Rational; 10] = std::array::from_fn(|_| Rational::zero());
        c[4] = lambda;
        c[0] = mu.clone();
        c[6] = mu.clone();
        c[9] = mu;
        Self { coefficients: c }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self { coefficients: std::array::from_fn(|i| &self.coefficients[i] * s) }
    }

    /// `(λ, μ)` if the cubic lies in the Hesse family.
    pub fn hesse_parameters(&self) -> Option<(Rational, Rational)> {
        let c = &self.coefficients;
        let others = [1, 2, 3, 5, 7, 8];
        if others.iter().any(|&i| !c[i].is_zero()) || c[0] != c[6] || c[0] != c[9] {
            return None;
        }
        Some((c[4].clone(), c[0].clone()))
    }

    fn residues(&self, f: &PrimeField) -> Result<[u64; 10], KernelError> {
        let v = self.coefficients.iter().map(|c| f.from_rational(c)).collect::<Result<Vec<_>, _>>()?;
        Ok(v.try_into().expect("ten coefficients"))
    }

    /// Number of points of `P²(F_p)` on the cubic.
    pub fn zero_count_modp(&self, p: u64) -> Result<u64, KernelError> {
        let f = PrimeField::new(p)?;
        let c = self.residues(&f)?;
        let mut count = 0;
        for pt in projective_points(p, 3) {
            let val = CUBIC_MONOMIALS.iter().zip(&c).fold(0u64, |acc, (e, &k)| {
                let m = (0..3).fold(k, |m, i| f.mul(&m, &f.pow(pt[i], u64::from(e[i]))));
                f.add(&acc, &m)
            });
            if val == 0 {
                count += 1;
            }
        }
        Ok(count)
    }

    pub fn format(&self) -> String {
        self.coefficients.iter().map(format_rational).collect::<Vec<_>>().join(" ")
    }
}

/// Normalized representatives (first nonzero coordinate 1) of `P^{n−1}(F_p)`.
pub fn projective_points(p: u64, n: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for lead in 0..n {
        let free = n - lead - 1;
        let total = p.pow(free as u32);
        for mut k in 0..total {
            let mut v = vec![0; n];
            v[lead] = 1;
            for x in v.iter_mut().skip(lead + 1) {
                *x = k % p;
                k /= p;
            }
            out.push(v);
        }
    }
    out
}

/// Result of taking the determinant of a point matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointScheme {
    Cubic(CubicForm),
    /// The determinant vanishes: the point scheme is the whole plane.
    IdenticallyZero,
}

type Poly3 = BTreeMap<[u8; 3], Rational>;

fn poly_mul(a: &Poly3, b: &Poly3) -> Poly3 {
    let mut out = Poly3::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
            *out.entry(e).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Symbolic determinant of a 3×3 matrix of linear forms in three variables.
pub fn point_scheme_cubic(m: &LinearFormMatrix) -> Result<PointScheme, SklyaninError> {
    let square = m.entries.len() == 3 && m.entries.iter().all(|r| r.len() == 3 && r.iter().all(|f| f.len() == 3));
    if !square {
        return Err(SklyaninError::MalformedRelations("point matrix must be 3x3 in three variables".into()));
    }
    let lin = |f: &[Rational]| -> Poly3 {
        let mut p = Poly3::new();
        for (i, c) in f.iter().enumerate() {
            if !c.is_zero() {
                let mut e = [0u8; 3];
                e[i] = 1;
                p.insert(e, c.clone());
            }
        }
        p
    };
    let mut det = Poly3::new();
    for (perm, sign) in
        [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([0, 2, 1], -1), ([2, 1, 0], -1), ([1, 0, 2], -1)]
    {
        let t = poly_mul(
            &poly_mul(&lin(&m.entries[0][perm[0]]), &lin(&m.entries[1][perm[1]])),
            &lin(&m.entries[2][perm[2]]),
        );
        for (e, c) in t {
            *det.entry(e).or_insert_with(Rational::zero) += c * Rational::from_integer(sign.into());
        }
    }
    det.retain(|_, c| !c.is_zero());
    if det.is_empty() {
        return Ok(PointScheme::IdenticallyZero);
    }
    let coefficients = std::array::from_fn(|i| det.get(&CUBIC_MONOMIALS[i]).cloned().unwrap_or_else(Rational::zero));
    Ok(PointScheme::Cubic(CubicForm { coefficients }))
}

/// Smooth iff `μ ≠ 0` and `(λ / (−3μ))³ ≠ 1`.
pub fn hesse_smoothness(f: &CubicForm) -> Result<bool, SklyaninError> {
    let (lambda, mu) = f.hesse_parameters().ok_or(SklyaninError::NotHesseFamily)?;
    if mu.is_zero() {
        return Ok(false);
    }
    let t = lambda / (mu * Rational::from_integer((-3).into()));
    Ok(&t * &t * &t != Rational::one())
}

/// The same criterion for the reduction mod `p` (with `p ≠ 3`).
pub fn hesse_smoothness_modp(f: &CubicForm, p: u64) -> Result<bool, SklyaninError> {
    let (lambda, mu) = f.hesse_parameters().ok_or(SklyaninError::NotHesseFamily)?;
    if p == 3 {
        return Err(SklyaninError::CharacteristicThree);
    }
    let fp = PrimeField::new(p)?;
    let (l, m) = (fp.from_rational(&lambda)?, fp.from_rational(&mu)?);
    if m == 0 {
        return Ok(false);
    }
    let t = fp.mul(&l, &fp.inv(&fp.neg(&fp.mul(&fp.from_i64(3), &m))));
    Ok(fp.pow(t, 3) != 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubic(p: &SklyaninParams) -> PointScheme {
        point_scheme_cubic(&sklyanin_point_matrix(p).unwrap()).unwrap()
    }

    #[test]
    fn params_normalize() {
        let p = SklyaninParams::from_ints(2, 4, 6).unwrap();
        assert_eq!((p.a, p.b, p.c), (int(1), int(2), int(3)));
        let p = SklyaninParams::parse("0, -1/2, 1").unwrap();
        assert_eq!((p.a, p.b, p.c), (int(0), int(1), int(-2)));
        assert!(matches!(SklyaninParams::from_ints(0, 0, 0), Err(SklyaninError::AllZeroParams)));
        assert!(SklyaninParams::parse("1,2").is_err());
    }

    #[test]
    fn potential_shape() {
        let (q, phi) = sklyanin_potential(&SklyaninParams::from_ints(1, 2, 3).unwrap()).unwrap();
        assert_eq!(phi.len(), 9);
        let rels = jacobian_relations(&q, &phi);
        assert_eq!(rels.nonzero().count(), 9);
        assert!(rels.nonzero().all(|(_, r)| r.terms().all(|(p, _)| p.len() == 2)));
        // ∂/∂x_3 = a·z₂y₁ + b·y₂z₁ + c·x₂x₁
        let x3 = q.arrow_index("x131").unwrap();
        let r = rels.for_arrow(x3).unwrap();
        assert_eq!(r.coefficient(&q.path_from_ids(&["x323", "x212"]).unwrap()), int(1));
        assert_eq!(r.coefficient(&q.path_from_ids(&["x322", "x213"]).unwrap()), int(2));
        assert_eq!(r.coefficient(&q.path_from_ids(&["x321", "x211"]).unwrap()), int(3));
    }

    #[test]
    fn point_matrix_layout() {
        let m = sklyanin_point_matrix(&SklyaninParams::from_ints(1, 2, 3).unwrap()).unwrap();
        assert_eq!(m.format(&["x", "y", "z"]), "3/1*x\t2/1*z\ty\nz\t3/1*y\t2/1*x\n2/1*y\tx\t3/1*z");
        let zero = (0..3).map(|_| (0..3).map(|_| vec![int(0); 3]).collect()).collect();
        let z = LinearFormMatrix { relation_arrows: vec![], first_block: vec![], second_block: vec![], entries: zero };
        assert_eq!(point_scheme_cubic(&z).unwrap(), PointScheme::IdenticallyZero);
    }

    #[test]
    fn cubic_examples() {
        // det = (a³+b³+c³)·xyz − abc·(x³+y³+z³)
        let PointScheme::Cubic(f) = cubic(&SklyaninParams::from_ints(1, 2, 3).unwrap()) else { panic!() };
        assert_eq!(f, CubicForm::hesse(int(36), int(-6)));
        assert_eq!(cubic(&SklyaninParams::from_ints(1, -1, 0).unwrap()), PointScheme::IdenticallyZero);

        let mut diag: Vec<Vec<Vec<Rational>>> = (0..3).map(|_| (0..3).map(|_| vec![int(0); 3]).collect()).collect();
        for i in 0..3 {
            diag[i][i][i] = int(1);
        }
        let m = LinearFormMatrix { relation_arrows: vec![], first_block: vec![], second_block: vec![], entries: diag };
        let PointScheme::Cubic(f) = point_scheme_cubic(&m).unwrap() else { panic!() };
        assert_eq!(f.format(), "0/1 0/1 0/1 0/1 1/1 0/1 0/1 0/1 0/1 0/1");
    }

    #[test]
    fn hesse_examples() {
        assert!(hesse_smoothness(&CubicForm::hesse(int(0), int(1))).unwrap());
        assert!(!hesse_smoothness(&CubicForm::hesse(int(1), int(0))).unwrap());
        assert!(!hesse_smoothness(&CubicForm::hesse(int(-3), int(1))).unwrap());
        let mut general = CubicForm::hesse(int(1), int(1));
        general.coefficients[1] = int(1);
        assert!(matches!(hesse_smoothness(&general), Err(SklyaninError::NotHesseFamily)));
        assert!(hesse_smoothness_modp(&CubicForm::hesse(int(0), int(1)), 7).unwrap());
        assert!(!hesse_smoothness_modp(&CubicForm::hesse(int(4), int(1)), 7).unwrap());
        // 4 ≡ −3
    }

    #[test]
    fn zero_counts() {
        assert_eq!(projective_points(2, 3).len(), 7);
        // the coordinate triangle xyz has 3p points
        assert_eq!(CubicForm::hesse(int(1), int(0)).zero_count_modp(5).unwrap(), 15);
    }
}
