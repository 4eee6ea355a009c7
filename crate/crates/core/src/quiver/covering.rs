use std::collections::HashMap;
use std::fmt;

use super::{Path, Quiver, QuiverError};

/// Vertex `(i, d)` of the covering quiver; `vertex` is an index into the base quiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoverVertex {
    pub vertex: usize,
    pub level: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoverArrow {
    pub arrow: usize,
    pub level: i64,
    pub source: CoverVertex,
    pub target: CoverVertex,
}

/// Finite window `d_lo ≤ d ≤ d_hi` of the covering quiver.
#[derive(Debug, Clone)]
pub struct CoveringSegment {
    pub base: Quiver,
    pub d_lo: i64,
    pub d_hi: i64,
    /// Sorted by the order `≺`.
    pub vertices: Vec<CoverVertex>,
    pub arrows: Vec<CoverArrow>,
    index: HashMap<(usize, i64), usize>,
}

impl CoveringSegment {
    pub fn contains(&self, v: CoverVertex) -> bool {
        self.d_lo <= v.level && v.level <= self.d_hi && v.vertex < self.base.num_vertices()
    }

    /// Position of `v` in `≺`, identified with the helix index offset
    /// `position(i) + d·|Q_0|`.
    pub fn order_key(&self, v: CoverVertex) -> i64 {
        let pos = self.base.position(v.vertex).expect("segment quivers carry an order") as i64;
        pos + v.level * self.base.num_vertices() as i64
    }

    /// `ť(a, j)` for the lift of `a` starting at level `j`.
    pub fn lift_target(&self, a: usize, level: i64) -> CoverVertex {
        let wrap = self.base.is_wrap(a).expect("segment quivers carry an order");
        CoverVertex { vertex: self.base.t(a), level: level + i64::from(wrap) }
    }

    /// End point of the lift of `p` starting at `start`, if the lift stays in the window.
    pub fn lift_path(&self, start: CoverVertex, p: &Path) -> Option<CoverVertex> {
        if !self.contains(start) || p.source(&self.base) != start.vertex {
            return None;
        }
        let mut at = start;
        for a in p.traversal() {
            at = self.lift_target(a, at.level);
            if !self.contains(at) {
                return None;
            }
        }
        Some(at)
    }

    /// Arrows of the segment leaving `v`.
    pub fn arrows_from(&self, v: CoverVertex) -> impl Iterator<Item = &CoverArrow> {
        self.arrows.iter().filter(move |a| a.source == v)
    }

    pub fn arrows_into(&self, v: CoverVertex) -> impl Iterator<Item = &CoverArrow> {
        self.arrows.iter().filter(move |a| a.target == v)
    }

    pub fn arrow_at(&self, arrow: usize, level: i64) -> Option<&CoverArrow> {
        self.index.get(&(arrow, level)).map(|&k| &self.arrows[k])
    }

    /// Index into `arrows` of the lift `(arrow, level)`.
    pub fn arrow_index_at(&self, arrow: usize, level: i64) -> Option<usize> {
        self.index.get(&(arrow, level)).copied()
    }

    pub fn vertex_index(&self, v: CoverVertex) -> Option<usize> {
        if !self.contains(v) {
            return None;
        }
        let n = self.base.num_vertices();
        Some((v.level - self.d_lo) as usize * n + self.base.position(v.vertex).ok()?)
    }

    pub fn format_vertex(&self, v: CoverVertex) -> String {
        format!("({},{})", self.base.vertices()[v.vertex], v.level)
    }
}

impl fmt::Display for CoveringSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "covering segment, levels {}..{}", self.d_lo, self.d_hi)?;
        for a in &self.arrows {
            writeln!(
                f,
                "({},{})\t{}\t{}",
                self.base.arrow_id(a.arrow),
                a.level,
                self.format_vertex(a.source),
                self.format_vertex(a.target)
            )?;
        }
        Ok(())
    }
}

/// The window of `Q̌` on levels `d_lo..=d_hi`; an arrow `(a, j)` is kept when
/// both of its endpoints lie in the window.
pub fn covering_segment(q: &Quiver, d_lo: i64, d_hi: i64) -> Result<CoveringSegment, QuiverError> {
    let order = q.ordered_vertices()?;
    let mut vertices = Vec::new();
    let mut arrows = Vec::new();
    let mut index = HashMap::new();
    if d_lo <= d_hi {
        for level in d_lo..=d_hi {
            vertices.extend(order.iter().map(|&vertex| CoverVertex { vertex, level }));
        }
        for level in d_lo..=d_hi {
            for a in 0..q.num_arrows() {
                let target = CoverVertex { vertex: q.t(a), level: level + i64::from(q.is_wrap(a)?) };
                if target.level > d_hi {
                    continue;
                }
                index.insert((a, level), arrows.len());
                arrows.push(CoverArrow { arrow: a, level, source: CoverVertex { vertex: q.s(a), level }, target });
            }
        }
    }
    Ok(CoveringSegment { base: q.clone(), d_lo, d_hi, vertices, arrows, index })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::tests::p2_quiver;

    #[test]
    fn single_level_drops_wrap_arrows() {
        let q = p2_quiver();
        let seg = covering_segment(&q, 0, 0).unwrap();
        assert_eq!(seg.vertices.len(), 3);
        assert_eq!(seg.arrows.len(), 6);
        assert!(seg.arrows.iter().all(|a| !q.is_wrap(a.arrow).unwrap()));
    }

    #[test]
    fn wrap_arrow_lands_one_level_up() {
        let q = p2_quiver();
        let seg = covering_segment(&q, 0, 1).unwrap();
        let wrap = q.arrow_index("x131").unwrap();
        let a = seg.arrow_at(wrap, 0).unwrap();
        assert_eq!(seg.format_vertex(a.target), "(1,1)");
        assert!(seg.arrow_at(wrap, 1).is_none());
        assert_eq!(seg.arrows.len(), 15);
        // source precedes target in ≺ for every arrow
        assert!(seg.arrows.iter().all(|a| seg.order_key(a.source) < seg.order_key(a.target)));
    }

    #[test]
    fn empty_quiver() {
        let q = Quiver::new(vec![], vec![], Some(vec![])).unwrap();
        let seg = covering_segment(&q, 0, 3).unwrap();
        assert!(seg.vertices.is_empty() && seg.arrows.is_empty());
    }
}
