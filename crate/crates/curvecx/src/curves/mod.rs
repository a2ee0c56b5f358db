//! Normal coordinates for multicurves on ideal triangulations.
//!
//! A multicurve in normal position meets every triangle in corner arcs, so
//! it is determined by one nonnegative weight per edge. A weight vector is
//! admissible when every triangle has even weight sum and satisfies the
//! triangle inequalities; the corner count at corner `c` (sides `c-1` and
//! `c` flanking, side `c+1` opposite) is `(w(c-1) + w(c) - w(c+1)) / 2`.
//!
//! Positions along an edge are numbered `1..=w` in the direction of the
//! edge's designated slot (the smaller one); an antiparallel gluing reads
//! positions in reverse from the other side. Only the component partition
//! produced by [`trace`] is used by the higher layers, and that partition
//! does not depend on the direction convention.

mod cut;
mod enumerate;
mod walk;

pub use cut::{
    classify, cut_along, piece_of_disjoint_curve, Classification, CurveClass, CurveKind,
    CutPiece, CutResult, TrivialityVerdict,
};
pub use enumerate::enumerate_vertices;
pub use walk::{arc_neighborhood_curves, puncture_link_coords};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::triangulation::{EdgeIdx, Flag, FlipResult, TriError, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("weight vector has {got} entries, triangulation has {expected} edges")]
    LengthMismatch { expected: usize, got: usize },
    #[error("weights are not admissible at triangle {triangle}")]
    NotAdmissible { triangle: usize },
    #[error("curve is not connected ({components} components)")]
    NotConnected { components: usize },
    #[error("curve is empty")]
    EmptyCurve,
    #[error("the two weight vectors are identical: same curve class")]
    SameClass,
    #[error("untransportable across this flip: {0}")]
    Untransportable(&'static str),
    #[error("degenerate configuration: {0}")]
    Degenerate(&'static str),
    #[error(transparent)]
    Tri(#[from] TriError),
}

/// A weight vector tagged with the triangulation it lives on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalCoords {
    pub triangulation: String,
    pub weights: Vec<u32>,
}

impl NormalCoords {
    pub fn new(tri: &Triangulation, weights: Vec<u32>) -> Self {
        NormalCoords { triangulation: tri.id(), weights }
    }

    pub fn matches(&self, tri: &Triangulation) -> bool {
        self.triangulation == tri.id() && self.weights.len() == tri.edge_count()
    }
}

pub(crate) fn check_len(tri: &Triangulation, w: &[u32]) -> Result<(), CurveError> {
    if w.len() != tri.edge_count() {
        return Err(CurveError::LengthMismatch { expected: tri.edge_count(), got: w.len() });
    }
    Ok(())
}

/// Weights of the three sides of triangle `u` (a self-glued edge is read on
/// both of its sides).
pub(crate) fn side_weights(tri: &Triangulation, w: &[u32], u: usize) -> [u32; 3] {
    [
        w[tri.edge_of_slot(3 * u)],
        w[tri.edge_of_slot(3 * u + 1)],
        w[tri.edge_of_slot(3 * u + 2)],
    ]
}

/// Corner counts of triangle `u`, negative when the triangle inequality
/// fails; `None` when the parity is odd.
pub(crate) fn corner_counts(tri: &Triangulation, w: &[u32], u: usize) -> Option<[i64; 3]> {
    let s = side_weights(tri, w, u);
    let sum = s[0] as i64 + s[1] as i64 + s[2] as i64;
    if sum % 2 != 0 {
        return None;
    }
    let mut out = [0i64; 3];
    for c in 0..3 {
        out[c] = (s[c] as i64 + s[(c + 2) % 3] as i64 - s[(c + 1) % 3] as i64) / 2;
    }
    Some(out)
}

/// True when per-triangle parity and triangle inequalities hold.
pub fn is_admissible(tri: &Triangulation, w: &[u32]) -> Result<bool, CurveError> {
    check_len(tri, w)?;
    Ok((0..tri.triangle_count())
        .all(|u| matches!(corner_counts(tri, w, u), Some(c) if c.iter().all(|&x| x >= 0))))
}

pub(crate) fn check_admissible(tri: &Triangulation, w: &[u32]) -> Result<(), CurveError> {
    check_len(tri, w)?;
    for u in 0..tri.triangle_count() {
        match corner_counts(tri, w, u) {
            Some(c) if c.iter().all(|&x| x >= 0) => {}
            _ => return Err(CurveError::NotAdmissible { triangle: u }),
        }
    }
    Ok(())
}

/// A corner arc of the normal multicurve: depth `depth` at corner `corner`
/// of triangle `tri`, joining points `p1` (on side `corner - 1`) and `p2`
/// (on side `corner`).
#[derive(Debug, Clone, Copy)]
pub(crate) struct CornerArc {
    pub tri: u32,
    pub corner: u8,
    pub depth: u32,
    pub p1: u32,
    pub p2: u32,
}

/// Point-level layout of an admissible multicurve.
pub(crate) struct CurveGeometry<'a> {
    pub tri: &'a Triangulation,
    pub w: &'a [u32],
    pub corner: Vec<[u32; 3]>,
    /// Per-edge offset into the global point numbering.
    pub offset: Vec<u32>,
    pub total_points: usize,
    pub arcs: Vec<CornerArc>,
}

impl<'a> CurveGeometry<'a> {
    pub fn new(tri: &'a Triangulation, w: &'a [u32]) -> Result<Self, CurveError> {
        check_admissible(tri, w)?;
        let corner: Vec<[u32; 3]> = (0..tri.triangle_count())
            .map(|u| {
                let c = corner_counts(tri, w, u).expect("admissible");
                [c[0] as u32, c[1] as u32, c[2] as u32]
            })
            .collect();
        let mut offset = Vec::with_capacity(tri.edge_count());
        let mut total = 0u32;
        for &we in w {
            offset.push(total);
            total += we;
        }
        let mut geom = CurveGeometry {
            tri,
            w,
            corner,
            offset,
            total_points: total as usize,
            arcs: Vec::new(),
        };
        geom.build_arcs();
        Ok(geom)
    }

    /// Global point id of local position `i` (1-based from the slot's start
    /// corner) on the edge underlying `slot`.
    pub fn point_at(&self, slot: usize, i: u32) -> u32 {
        let e = self.tri.edge_of_slot(slot);
        let (a, _) = self.tri.edge_slots(e);
        let we = self.w[e];
        debug_assert!(1 <= i && i <= we);
        let pos = if slot == a {
            i
        } else {
            match self.tri.edge_flag(e) {
                Flag::Parallel => i,
                Flag::Antiparallel => we + 1 - i,
            }
        };
        self.offset[e] + pos - 1
    }

    /// Edge and 1-based position of a global point id.
    pub fn locate(&self, point: u32) -> (EdgeIdx, u32) {
        let e = match self.offset.binary_search(&point) {
            Ok(mut k) => {
                // skip zero-weight edges sharing the offset
                while self.w[k] == 0 {
                    k += 1;
                }
                k
            }
            Err(k) => k - 1,
        };
        (e, point - self.offset[e] + 1)
    }

    fn build_arcs(&mut self) {
        for u in 0..self.tri.triangle_count() {
            for c in 0..3usize {
                let n = self.corner[u][c];
                if n == 0 {
                    continue;
                }
                let side_prev = 3 * u + (c + 2) % 3;
                let side_cur = 3 * u + c;
                let w_prev = self.w[self.tri.edge_of_slot(side_prev)];
                for depth in 1..=n {
                    self.arcs.push(CornerArc {
                        tri: u as u32,
                        corner: c as u8,
                        depth,
                        p1: self.point_at(side_prev, w_prev + 1 - depth),
                        p2: self.point_at(side_cur, depth),
                    });
                }
            }
        }
    }

    /// Connected components as (weight vector, point set) pairs.
    pub fn components(&self) -> Vec<Component> {
        let mut parent: Vec<u32> = (0..self.total_points as u32).collect();
        fn find(parent: &mut [u32], x: u32) -> u32 {
            let mut root = x;
            while parent[root as usize] != root {
                root = parent[root as usize];
            }
            let mut cur = x;
            while parent[cur as usize] != root {
                let next = parent[cur as usize];
                parent[cur as usize] = root;
                cur = next;
            }
            root
        }
        for arc in &self.arcs {
            let (ra, rb) = (find(&mut parent, arc.p1), find(&mut parent, arc.p2));
            if ra != rb {
                let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                parent[hi as usize] = lo;
            }
        }
        let mut by_root: std::collections::BTreeMap<u32, Component> = Default::default();
        for p in 0..self.total_points as u32 {
            let r = find(&mut parent, p);
            let comp = by_root.entry(r).or_insert_with(|| Component {
                weights: vec![0; self.w.len()],
                points: Vec::new(),
            });
            let (e, _) = self.locate(p);
            comp.weights[e] += 1;
            comp.points.push(p);
        }
        by_root.into_values().collect()
    }
}

/// One connected component of a traced multicurve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub weights: Vec<u32>,
    /// Global point ids in the geometry of the traced vector.
    pub points: Vec<u32>,
}

/// Decomposes an admissible vector into the connected components of its
/// normal multicurve. Component weights sum to the input.
pub fn trace(tri: &Triangulation, w: &[u32]) -> Result<Vec<Component>, CurveError> {
    Ok(CurveGeometry::new(tri, w)?.components())
}

/// True when `w` traces to exactly one component (a connected curve).
pub fn is_connected_curve(tri: &Triangulation, w: &[u32]) -> Result<bool, CurveError> {
    if w.iter().all(|&x| x == 0) {
        return Err(CurveError::EmptyCurve);
    }
    Ok(trace(tri, w)?.len() == 1)
}

/// Disjointness of two distinct connected curve classes: the multicurve
/// with the summed coordinates must decompose exactly into the two inputs.
pub fn disjoint(tri: &Triangulation, w1: &[u32], w2: &[u32]) -> Result<bool, CurveError> {
    check_len(tri, w1)?;
    check_len(tri, w2)?;
    if w1 == w2 {
        return Err(CurveError::SameClass);
    }
    let sum: Vec<u32> = w1.iter().zip(w2).map(|(a, b)| a + b).collect();
    if !is_admissible(tri, &sum)? {
        return Ok(false);
    }
    let comps = trace(tri, &sum)?;
    if comps.len() != 2 {
        return Ok(false);
    }
    Ok((comps[0].weights == w1 && comps[1].weights == w2)
        || (comps[0].weights == w2 && comps[1].weights == w1))
}

/// A curve carried across a flip.
#[derive(Debug, Clone)]
pub struct Transported {
    pub flip: FlipResult,
    /// Weights on `flip.tri`.
    pub weights: Vec<u32>,
}

/// Carries normal coordinates across a flip: the new diagonal weight is
/// `max(w(a) + w(c), w(b) + w(d)) - w(e)` over the two opposite pairs of
/// the quadrilateral. Requires the four quad sides to be pairwise distinct
/// embedded edges.
pub fn transport_flip(
    tri: &Triangulation,
    w: &[u32],
    edge: EdgeIdx,
) -> Result<Transported, CurveError> {
    check_admissible(tri, w)?;
    let flip = tri.flip(edge)?;
    let q = flip.quad;
    for i in 0..4 {
        if q[i] == edge {
            return Err(CurveError::Untransportable("quad side equals the diagonal"));
        }
        for j in i + 1..4 {
            if q[i] == q[j] {
                return Err(CurveError::Untransportable("quad sides are not pairwise distinct"));
            }
        }
    }
    let mut out = vec![0u32; flip.tri.edge_count()];
    for (k, &val) in w.iter().enumerate() {
        if let Some(nk) = flip.edge_map[k] {
            out[nk] = val;
        }
    }
    let across = (w[q[0]] as i64 + w[q[2]] as i64).max(w[q[1]] as i64 + w[q[3]] as i64)
        - w[edge] as i64;
    debug_assert!(across >= 0, "admissible vectors satisfy the quad bound");
    out[flip.new_edge] = across as u32;
    if !is_admissible(&flip.tri, &out)? {
        return Err(CurveError::Untransportable("transported vector is not admissible"));
    }
    Ok(Transported { flip, weights: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::SurfaceSig;

    fn n12() -> Triangulation {
        Triangulation::reference(SurfaceSig::nonorientable(1, 2).unwrap()).unwrap()
    }

    #[test]
    fn zero_vector_is_admissible_and_empty() {
        let tri = n12();
        let w = vec![0, 0, 0];
        assert!(is_admissible(&tri, &w).unwrap());
        assert!(trace(&tri, &w).unwrap().is_empty());
    }

    #[test]
    fn odd_sum_is_inadmissible() {
        let tri = n12();
        assert!(!is_admissible(&tri, &[0, 1, 0]).unwrap());
    }

    #[test]
    fn length_mismatch_errors() {
        let tri = n12();
        assert!(matches!(
            is_admissible(&tri, &[0, 0]),
            Err(CurveError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn crosscap_core_traces_connected() {
        let tri = n12();
        let comps = trace(&tri, &[1, 0, 1]).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].weights, vec![1, 0, 1]);
    }

    #[test]
    fn doubled_core_is_one_component() {
        let tri = n12();
        let comps = trace(&tri, &[2, 0, 2]).unwrap();
        assert_eq!(comps.len(), 1, "double of a one-sided curve stays connected");
    }

    #[test]
    fn component_weights_sum_to_input() {
        let tri = n12();
        for w in [[2, 2, 2], [4, 2, 2], [2, 0, 2], [3, 2, 1]] {
            if !is_admissible(&tri, &w).unwrap() {
                continue;
            }
            let comps = trace(&tri, &w).unwrap();
            let mut sum = vec![0u32; 3];
            for c in &comps {
                for (s, x) in sum.iter_mut().zip(&c.weights) {
                    *s += x;
                }
            }
            assert_eq!(sum, w.to_vec());
        }
    }

    #[test]
    fn disjoint_rejects_same_vector() {
        let tri = n12();
        assert!(matches!(
            disjoint(&tri, &[1, 0, 1], &[1, 0, 1]),
            Err(CurveError::SameClass)
        ));
    }

    #[test]
    fn admissibility_closed_under_sum() {
        let tri = Triangulation::reference(SurfaceSig::nonorientable(1, 3).unwrap()).unwrap();
        let e = tri.edge_count();
        let mut found = 0;
        // sweep small vectors; admissible + admissible stays admissible
        let mut vectors = Vec::new();
        let mut w = vec![0u32; e];
        loop {
            if is_admissible(&tri, &w).unwrap() {
                vectors.push(w.clone());
            }
            let mut i = 0;
            loop {
                if i == e {
                    break;
                }
                if w[i] < 2 {
                    w[i] += 1;
                    break;
                }
                w[i] = 0;
                i += 1;
            }
            if i == e {
                break;
            }
        }
        for a in vectors.iter().take(40) {
            for b in vectors.iter().take(40) {
                let sum: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                assert!(is_admissible(&tri, &sum).unwrap());
                found += 1;
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn transport_round_trip_is_identity() {
        let tri = Triangulation::reference(SurfaceSig::nonorientable(1, 3).unwrap()).unwrap();
        for e in 0..tri.edge_count() {
            if tri.is_self_folded(e) {
                continue;
            }
            for w in [[1, 0, 0, 1, 1, 0], [2, 2, 0, 0, 2, 2], [1, 1, 1, 1, 0, 0]] {
                if !is_admissible(&tri, &w).unwrap() {
                    continue;
                }
                let fwd = match transport_flip(&tri, &w, e) {
                    Ok(t) => t,
                    Err(CurveError::Untransportable(_)) => continue,
                    Err(other) => panic!("{other}"),
                };
                let back = transport_flip(&fwd.flip.tri, &fwd.weights, fwd.flip.new_edge).unwrap();
                // map the round-tripped weights back through both flips
                let mut original = vec![0u32; tri.edge_count()];
                for (k, &val) in w.iter().enumerate() {
                    original[k] = val;
                }
                let mut recovered = vec![0u32; tri.edge_count()];
                for k in 0..tri.edge_count() {
                    let mid = if k == e { fwd.flip.new_edge } else { fwd.flip.edge_map[k].unwrap() };
                    let fin = if mid == fwd.flip.new_edge {
                        back.flip
                            .edge_map
                            .get(mid)
                            .copied()
                            .flatten()
                            .unwrap_or(back.flip.new_edge)
                    } else {
                        back.flip.edge_map[mid].unwrap()
                    };
                    recovered[k] = back.weights[fin];
                }
                assert_eq!(recovered, original, "edge {e}, vector {w:?}");
            }
        }
    }

    #[test]
    fn transport_leaves_far_weights_unchanged() {
        let tri = Triangulation::reference(SurfaceSig::nonorientable(1, 4).unwrap()).unwrap();
        // a vector supported away from the quad of some flippable edge
        'outer: for e in 0..tri.edge_count() {
            if tri.is_self_folded(e) {
                continue;
            }
            let flip = tri.flip(e).unwrap();
            let mut w = vec![0u32; tri.edge_count()];
            // weight on an edge not in the quad and not the diagonal
            for k in 0..tri.edge_count() {
                if k != e && !flip.quad.contains(&k) {
                    w[k] = 2;
                    if !is_admissible(&tri, &w).unwrap() {
                        w[k] = 0;
                        continue;
                    }
                    let t = match transport_flip(&tri, &w, e) {
                        Ok(t) => t,
                        Err(_) => continue 'outer,
                    };
                    assert_eq!(t.weights[t.flip.edge_map[k].unwrap()], 2);
                    assert_eq!(t.weights[t.flip.new_edge], 0);
                    break 'outer;
                }
            }
        }
    }
}
