//! Quivers, paths and cyclic classes.
//!
//! Paths are written right to left: `arrows[0]` is the last arrow traversed,
//! so the concatenation `p · q` is the list `p.arrows ++ q.arrows`. Vertices
//! and arrows are referred to by their index in the owning [`Quiver`].

mod covering;
mod potential;
mod rollup;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

pub use covering::{covering_segment, CoverArrow, CoverVertex, CoveringSegment};
pub use potential::{
    cyclic_derivative, cyclic_derivative_of_class, jacobian_relations, PathCombination, Potential, PotentialError,
    PotentialOptions, RelationSet,
};
pub use rollup::{
    resolution_euler_defect, resolution_template, rollup_arrow_id, rollup_quiver_from_foundation, ResolutionTemplate,
    RolledUpQuiver, RollupError, RollupReport, TemplateTerm,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("duplicate vertex {0}")]
    DuplicateVertex(u32),
    #[error("duplicate arrow id {0:?}")]
    DuplicateArrow(String),
    #[error("arrow {arrow:?} has unknown endpoint {vertex}")]
    UnknownEndpoint { arrow: String, vertex: u32 },
    #[error("unknown arrow id {0:?}")]
    UnknownArrow(String),
    #[error("vertex order is not a permutation of the vertex set")]
    BadOrder,
    #[error("quiver carries no vertex order")]
    UndefinedOrder,
    #[error("arrows {0:?} do not compose to a path")]
    NotComposable(Vec<String>),
    #[error("path {0:?} is not a cycle")]
    NotCyclic(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub source: u32,
    pub target: u32,
}

#[derive(Debug, Clone)]
pub struct Quiver {
    vertices: Vec<u32>,
    arrows: Vec<Arrow>,
    order: Option<Vec<u32>>,
    vertex_index: HashMap<u32, usize>,
    arrow_index: HashMap<String, usize>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    // position of each vertex index in the vertex order
    position: Option<Vec<usize>>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows && self.order == other.order
    }
}

impl Eq for Quiver {}

impl Quiver {
    pub fn new(vertices: Vec<u32>, arrows: Vec<Arrow>, order: Option<Vec<u32>>) -> Result<Self, QuiverError> {
        let mut vertex_index = HashMap::new();
        for (i, &v) in vertices.iter().enumerate() {
            if vertex_index.insert(v, i).is_some() {
                return Err(QuiverError::DuplicateVertex(v));
            }
        }
        let mut arrow_index = HashMap::new();
        let mut src = Vec::with_capacity(arrows.len());
        let mut tgt = Vec::with_capacity(arrows.len());
        for (k, a) in arrows.iter().enumerate() {
            if arrow_index.insert(a.id.clone(), k).is_some() {
                return Err(QuiverError::DuplicateArrow(a.id.clone()));
            }
            for v in [a.source, a.target] {
                if !vertex_index.contains_key(&v) {
                    return Err(QuiverError::UnknownEndpoint { arrow: a.id.clone(), vertex: v });
                }
            }
            src.push(vertex_index[&a.source]);
            tgt.push(vertex_index[&a.target]);
        }
        let position = match &order {
            None => None,
            Some(ord) => {
                if ord.len() != vertices.len() {
                    return Err(QuiverError::BadOrder);
                }
                let mut pos = vec![usize::MAX; vertices.len()];
                for (p, v) in ord.iter().enumerate() {
                    let i = *vertex_index.get(v).ok_or(QuiverError::BadOrder)?;
                    if pos[i] != usize::MAX {
                        return Err(QuiverError::BadOrder);
                    }
                    pos[i] = p;
                }
                Some(pos)
            }
        };
        Ok(Self { vertices, arrows, order, vertex_index, arrow_index, src, tgt, position })
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_order(&self) -> Option<&[u32]> {
        self.order.as_deref()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_index(&self, v: u32) -> Option<usize> {
        self.vertex_index.get(&v).copied()
    }

    pub fn arrow_index(&self, id: &str) -> Result<usize, QuiverError> {
        self.arrow_index.get(id).copied().ok_or_else(|| QuiverError::UnknownArrow(id.to_string()))
    }

    pub fn arrow_id(&self, a: usize) -> &str {
        &self.arrows[a].id
    }

    /// Source vertex index of arrow `a`.
    pub fn s(&self, a: usize) -> usize {
        self.src[a]
    }

    /// Target vertex index of arrow `a`.
    pub fn t(&self, a: usize) -> usize {
        self.tgt[a]
    }

    /// Position of vertex index `v` in the vertex order.
    pub fn position(&self, v: usize) -> Result<usize, QuiverError> {
        self.position.as_ref().map(|p| p[v]).ok_or(QuiverError::UndefinedOrder)
    }

    /// Whether arrow `a` goes weakly backwards in the vertex order, i.e. moves
    /// up one level in the covering quiver.
    pub fn is_wrap(&self, a: usize) -> Result<bool, QuiverError> {
        Ok(self.position(self.s(a))? >= self.position(self.t(a))?)
    }

    /// Vertex indices listed in the vertex order.
    pub fn ordered_vertices(&self) -> Result<Vec<usize>, QuiverError> {
        let pos = self.position.as_ref().ok_or(QuiverError::UndefinedOrder)?;
        let mut v: Vec<usize> = (0..self.vertices.len()).collect();
        v.sort_by_key(|&i| pos[i]);
        Ok(v)
    }

    pub fn arrows_between(&self, from: usize, to: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.src[a] == from && self.tgt[a] == to)
    }

    pub fn arrows_from(&self, from: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.src[a] == from)
    }

    /// Parses a right-to-left list of arrow ids into a path.
    pub fn path_from_ids<S: AsRef<str>>(&self, ids: &[S]) -> Result<Path, QuiverError> {
        let arrows = ids.iter().map(|id| self.arrow_index(id.as_ref())).collect::<Result<Vec<_>, _>>()?;
        Path::from_arrows(self, arrows)
            .ok_or_else(|| QuiverError::NotComposable(ids.iter().map(|s| s.as_ref().to_string()).collect()))
    }

    pub fn path_ids(&self, p: &Path) -> Vec<String> {
        match p {
            Path::Trivial(v) => vec![format!("e{}", self.vertices[*v])],
            Path::Arrows(a) => a.iter().map(|&i| self.arrows[i].id.clone()).collect(),
        }
    }
}

/// A path of length zero at a vertex, or a composable arrow list written right to left.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Path {
    Trivial(usize),
    Arrows(Vec<usize>),
}

impl Path {
    /// Validates `s(a_{i+1}) = t(a_i)`; `None` when the list does not compose
    /// or is empty.
    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Option<Self> {
        if arrows.is_empty() || arrows.iter().any(|&a| a >= q.num_arrows()) {
            return None;
        }
        let ok = arrows.windows(2).all(|w| q.s(w[0]) == q.t(w[1]));
        ok.then_some(Path::Arrows(arrows))
    }

    pub fn len(&self) -> usize {
        match self {
            Path::Trivial(_) => 0,
            Path::Arrows(a) => a.len(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, Path::Trivial(_))
    }

    pub fn source(&self, q: &Quiver) -> usize {
        match self {
            Path::Trivial(v) => *v,
            Path::Arrows(a) => q.s(*a.last().expect("nonempty")),
        }
    }

    pub fn target(&self, q: &Quiver) -> usize {
        match self {
            Path::Trivial(v) => *v,
            Path::Arrows(a) => q.t(a[0]),
        }
    }

    /// Arrows in the order they are traversed.
    pub fn traversal(&self) -> Vec<usize> {
        match self {
            Path::Trivial(_) => Vec::new(),
            Path::Arrows(a) => a.iter().rev().copied().collect(),
        }
    }

    pub fn is_cycle(&self, q: &Quiver) -> bool {
        !self.is_trivial() && self.source(q) == self.target(q)
    }
}

/// `p · q` (first `q`, then `p`), or `None` for the zero path.
pub fn compose_paths(q: &Quiver, p: &Path, r: &Path) -> Option<Path> {
    if p.source(q) != r.target(q) {
        return None;
    }
    match (p, r) {
        (Path::Trivial(_), _) => Some(r.clone()),
        (_, Path::Trivial(_)) => Some(p.clone()),
        (Path::Arrows(a), Path::Arrows(b)) => {
            let mut v = a.clone();
            v.extend_from_slice(b);
            Some(Path::Arrows(v))
        }
    }
}

/// Rotation class of a cycle, represented by its lexicographically least
/// rotation (comparing arrow indices along the right-to-left list).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicClass {
    arrows: Vec<usize>,
}

impl CyclicClass {
    pub fn from_path(q: &Quiver, p: &Path) -> Result<Self, QuiverError> {
        if !p.is_cycle(q) {
            return Err(QuiverError::NotCyclic(q.path_ids(p)));
        }
        let Path::Arrows(a) = p else { unreachable!() };
        Ok(Self { arrows: canonical_rotation(a) })
    }

    pub fn from_ids<S: AsRef<str>>(q: &Quiver, ids: &[S]) -> Result<Self, QuiverError> {
        let p = q.path_from_ids(ids)?;
        Self::from_path(q, &p)
    }

    /// Canonical right-to-left arrow list.
    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn representative(&self) -> Path {
        Path::Arrows(self.arrows.clone())
    }

    /// All `k` rotations `(a_k, …, a_1) ↦ (a_1, a_k, …, a_2)`, starting with the representative.
    pub fn rotations(&self) -> Vec<Path> {
        let k = self.arrows.len();
        (0..k)
            .map(|r| {
                let mut v = self.arrows.clone();
                v.rotate_right(r);
                Path::Arrows(v)
            })
            .collect()
    }

    /// Primitive iff no rotation passes through its base point before closing,
    /// i.e. the cycle visits each vertex at most once.
    pub fn is_primitive(&self, q: &Quiver) -> bool {
        let mut seen = BTreeSet::new();
        self.arrows.iter().all(|&a| seen.insert(q.s(a)))
    }

    /// Number of arrows going weakly backwards in the vertex order.
    pub fn winding_degree(&self, q: &Quiver) -> Result<usize, QuiverError> {
        winding_of_arrows(q, &self.arrows)
    }

    pub fn ids(&self, q: &Quiver) -> Vec<String> {
        self.arrows.iter().map(|&a| q.arrow_id(a).to_string()).collect()
    }
}

pub(crate) fn winding_of_arrows(q: &Quiver, arrows: &[usize]) -> Result<usize, QuiverError> {
    let mut w = 0;
    for &a in arrows {
        if q.is_wrap(a)? {
            w += 1;
        }
    }
    Ok(w)
}

pub fn winding_degree(q: &Quiver, c: &CyclicClass) -> Result<usize, QuiverError> {
    c.winding_degree(q)
}

fn canonical_rotation(a: &[usize]) -> Vec<usize> {
    let k = a.len();
    (0..k)
        .map(|r| {
            let mut v = a.to_vec();
            v.rotate_left(r);
            v
        })
        .min()
        .unwrap_or_default()
}

/// All primitive cyclic classes of length `≤ maxlen`, ordered by length and
/// then by canonical representative.
pub fn enumerate_primitive_cycles(q: &Quiver, maxlen: usize) -> Vec<CyclicClass> {
    let mut found = BTreeSet::new();
    let n = q.num_vertices();
    let mut on_path = vec![false; n];
    let mut trail = Vec::new();
    for start in 0..n {
        on_path[start] = true;
        simple_cycles_from(q, start, start, maxlen, &mut on_path, &mut trail, &mut found);
        on_path[start] = false;
    }
    let mut out: Vec<CyclicClass> = found.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn simple_cycles_from(
    q: &Quiver,
    start: usize,
    at: usize,
    maxlen: usize,
    on_path: &mut [bool],
    trail: &mut Vec<usize>,
    found: &mut BTreeSet<CyclicClass>,
) {
    if trail.len() == maxlen {
        return;
    }
    for a in q.arrows_from(at).collect::<Vec<_>>() {
        let t = q.t(a);
        trail.push(a);
        if t == start {
            let rtl: Vec<usize> = trail.iter().rev().copied().collect();
            found.insert(CyclicClass { arrows: canonical_rotation(&rtl) });
        } else if !on_path[t] {
            on_path[t] = true;
            simple_cycles_from(q, start, t, maxlen, on_path, trail, found);
            on_path[t] = false;
        }
        trail.pop();
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {}", self.id, self.source, self.target)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Three vertices, three arrows on each of 1→2, 2→3, 3→1.
    pub fn p2_quiver() -> Quiver {
        let mut arrows = Vec::new();
        for (s, t) in [(1, 2), (2, 3), (3, 1)] {
            for k in 1..=3 {
                arrows.push(Arrow { id: format!("x{t}{s}{k}"), source: s, target: t });
            }
        }
        Quiver::new(vec![1, 2, 3], arrows, Some(vec![1, 2, 3])).unwrap()
    }

    pub fn loop_quiver(names: &[&str]) -> Quiver {
        let arrows = names.iter().map(|n| Arrow { id: n.to_string(), source: 1, target: 1 }).collect();
        Quiver::new(vec![1], arrows, Some(vec![1])).unwrap()
    }

    #[test]
    fn validation() {
        let a = |id: &str, s, t| Arrow { id: id.into(), source: s, target: t };
        assert_eq!(Quiver::new(vec![1, 1], vec![], None), Err(QuiverError::DuplicateVertex(1)));
        assert!(matches!(Quiver::new(vec![1], vec![a("x", 1, 2)], None), Err(QuiverError::UnknownEndpoint { .. })));
        assert!(matches!(
            Quiver::new(vec![1], vec![a("x", 1, 1), a("x", 1, 1)], None),
            Err(QuiverError::DuplicateArrow(_))
        ));
        assert_eq!(Quiver::new(vec![1, 2], vec![], Some(vec![1, 1])), Err(QuiverError::BadOrder));
    }

    #[test]
    fn concatenation() {
        let q = p2_quiver();
        let a = q.path_from_ids(&["x211"]).unwrap();
        let b = q.path_from_ids(&["x321"]).unwrap();
        assert_eq!(compose_paths(&q, &b, &a), Some(Path::Arrows(vec![3, 0])));
        assert_eq!(compose_paths(&q, &a, &b), None);
        let e1 = Path::Trivial(0);
        assert_eq!(compose_paths(&q, &a, &e1), Some(a.clone()));
        assert_eq!(compose_paths(&q, &Path::Trivial(1), &a), Some(a.clone()));
        assert_eq!(compose_paths(&q, &e1, &a), None);
        assert!(q.path_from_ids(&["x211", "x321"]).is_err());
    }

    #[test]
    fn primitive_cycles() {
        let q = p2_quiver();
        let c3 = enumerate_primitive_cycles(&q, 3);
        assert_eq!(c3.len(), 27);
        assert!(c3.iter().all(|c| c.len() == 3 && c.is_primitive(&q)));
        assert_eq!(enumerate_primitive_cycles(&q, 6), c3);
        assert!(enumerate_primitive_cycles(&q, 2).is_empty());
        let l = loop_quiver(&["x"]);
        let cl = enumerate_primitive_cycles(&l, 3);
        assert_eq!(cl.len(), 1);
        let xx = CyclicClass::from_ids(&l, &["x", "x"]).unwrap();
        assert!(!xx.is_primitive(&l));
    }

    #[test]
    fn canonicalization_and_winding() {
        let q = p2_quiver();
        let c = CyclicClass::from_ids(&q, &["x132", "x321", "x213"]).unwrap();
        for r in c.rotations() {
            assert_eq!(CyclicClass::from_path(&q, &r).unwrap(), c);
        }
        assert_eq!(c.winding_degree(&q), Ok(1));
        let l = loop_quiver(&["x"]);
        assert_eq!(CyclicClass::from_ids(&l, &["x"]).unwrap().winding_degree(&l), Ok(1));
        assert_eq!(CyclicClass::from_ids(&l, &["x", "x"]).unwrap().winding_degree(&l), Ok(2));
        let unordered = Quiver::new(vec![1], vec![Arrow { id: "x".into(), source: 1, target: 1 }], None).unwrap();
        let x = CyclicClass::from_ids(&unordered, &["x"]).unwrap();
        assert_eq!(x.winding_degree(&unordered), Err(QuiverError::UndefinedOrder));
    }
}
