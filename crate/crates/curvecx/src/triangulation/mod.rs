//! Combinatorial ideal triangulations of punctured surfaces.
//!
//! A triangulation is a set of `t` triangles whose `3t` side slots are glued
//! in pairs. Slot `3*tri + side` is the side running from corner `side` to
//! corner `(side + 1) % 3` of its triangle. Each glued pair carries a
//! reversal flag: [`Flag::Parallel`] identifies the two sides preserving
//! their direction (start to start), [`Flag::Antiparallel`] reverses it.
//! Punctures are the corner orbits, so every vertex of the triangulation is
//! a puncture.
//!
//! Genus, orientability and puncture count are derived from the gluing and
//! cached; [`Triangulation::flip`] replaces the diagonal of the
//! quadrilateral spanned by two distinct triangles, and
//! [`canonical::CanonicalForm`] provides a relabeling-invariant identity
//! used by the flip-graph searches.

mod canonical;
mod flip_graph;

pub use canonical::{relabeled, CanonicalForm};
pub use flip_graph::{flip_bfs, flip_path, replay_flip_path, FlipGraph, FlipNode};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::surface::{SurfaceError, SurfaceSig};

/// Index into the edges (glued slot pairs) of a triangulation.
pub type EdgeIdx = usize;

/// How a glued pair of sides is identified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flag {
    /// Start of one side maps to start of the other.
    Parallel,
    /// Start of one side maps to end of the other.
    Antiparallel,
}

impl Flag {
    pub fn toggled(self, toggle: bool) -> Flag {
        if toggle {
            match self {
                Flag::Parallel => Flag::Antiparallel,
                Flag::Antiparallel => Flag::Parallel,
            }
        } else {
            self
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriError {
    #[error("invalid gluing: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("edge {0} out of range")]
    EdgeOutOfRange(EdgeIdx),
    #[error("unflippable edge {0}: both sides lie in one triangle")]
    UnflippableEdge(EdgeIdx),
    #[error("triangulations describe different surfaces")]
    SurfaceMismatch,
    #[error("triangulation too large for canonical encoding (t > 255)")]
    TooLarge,
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// Serialized form: triangle count plus the glued slot pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawTriangulation {
    pub t: usize,
    pub gluing: Vec<(usize, usize, Flag)>,
}

/// Structural facts derived from a gluing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub connected: bool,
    /// Euler characteristic of the punctured surface, `t - e`.
    pub euler_char: i64,
    pub orientable: bool,
    pub genus: u32,
    pub punctures: u32,
}

impl ValidationReport {
    pub fn sig(&self) -> SurfaceSig {
        SurfaceSig { orientable: self.orientable, genus: self.genus, punctures: self.punctures }
    }
}

/// A validated ideal triangulation. Immutable; flips return new values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    t: usize,
    partner: Vec<u32>,
    flags: Vec<Flag>,
    /// Glued pairs `(lo, hi)` with `lo < hi`, ascending by `lo`.
    edges: Vec<(u32, u32)>,
    edge_of_slot: Vec<u32>,
    /// Corner (= slot) to puncture label.
    corner_orbit: Vec<u32>,
    sig: SurfaceSig,
}

/// Result of flipping one edge.
#[derive(Debug, Clone)]
pub struct FlipResult {
    pub tri: Triangulation,
    /// Index of the replacement diagonal in `tri`.
    pub new_edge: EdgeIdx,
    /// The four quadrilateral sides as edges of the source triangulation,
    /// in cyclic order; opposite pairs are `(quad[0], quad[2])` and
    /// `(quad[1], quad[3])`.
    pub quad: [EdgeIdx; 4],
    /// Old edge index to new edge index; `None` exactly at the flipped edge.
    pub edge_map: Vec<Option<EdgeIdx>>,
}

struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller root so labels stay stable
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

impl Triangulation {
    /// Builds and validates a triangulation from glued slot pairs.
    pub fn from_gluing(t: usize, gluing: &[(usize, usize, Flag)]) -> Result<Self, TriError> {
        let mut violations = Vec::new();
        if t == 0 {
            violations.push("triangle count must be positive".to_string());
        }
        if t % 2 == 1 {
            violations.push("triangle count must be even".to_string());
        }
        if !violations.is_empty() {
            return Err(TriError::Invalid(violations));
        }
        let slots = 3 * t;
        let mut partner = vec![u32::MAX; slots];
        let mut flags = vec![Flag::Parallel; slots];
        for &(a, b, flag) in gluing {
            if a >= slots || b >= slots {
                violations.push(format!("slot pair ({a}, {b}) out of range"));
                continue;
            }
            if a == b {
                violations.push(format!("fixed point in gluing: slot {a}"));
                continue;
            }
            if partner[a] != u32::MAX || partner[b] != u32::MAX {
                violations.push(format!("slot reused in pair ({a}, {b})"));
                continue;
            }
            partner[a] = b as u32;
            partner[b] = a as u32;
            flags[a] = flag;
            flags[b] = flag;
        }
        for (s, &p) in partner.iter().enumerate() {
            if p == u32::MAX {
                violations.push(format!("slot {s} unmatched"));
            }
        }
        if !violations.is_empty() {
            return Err(TriError::Invalid(violations));
        }

        // connectivity over triangles
        let mut comp = DisjointSet::new(t);
        for s in 0..slots {
            comp.union(s / 3, partner[s] as usize / 3);
        }
        let connected = (0..t).all(|u| comp.find(u) == comp.find(0));
        if !connected {
            return Err(TriError::Invalid(vec!["gluing graph is disconnected".into()]));
        }

        // corner orbits: start corner of slot s is corner s itself
        let mut orbits = DisjointSet::new(slots);
        let end = |s: usize| (s / 3) * 3 + (s % 3 + 1) % 3;
        for s in 0..slots {
            let p = partner[s] as usize;
            match flags[s] {
                Flag::Parallel => {
                    orbits.union(s, p);
                    orbits.union(end(s), end(p));
                }
                Flag::Antiparallel => {
                    orbits.union(s, end(p));
                    orbits.union(end(s), p);
                }
            }
        }
        let mut roots = Vec::new();
        let mut corner_orbit = vec![u32::MAX; slots];
        for c in 0..slots {
            let r = orbits.find(c);
            if r == c {
                roots.push(c);
            }
        }
        roots.sort_unstable();
        for c in 0..slots {
            let r = orbits.find(c);
            let label = roots.binary_search(&r).unwrap();
            corner_orbit[c] = label as u32;
        }
        let punctures = roots.len();

        // orientability: 2-coloring of triangles with parity constraints
        let orientable = {
            let mut color = vec![2u8; t];
            let mut ok = true;
            let mut stack = vec![0usize];
            color[0] = 0;
            while let Some(u) = stack.pop() {
                for side in 0..3 {
                    let s = 3 * u + side;
                    let p = partner[s] as usize;
                    let v = p / 3;
                    let want = match flags[s] {
                        Flag::Antiparallel => color[u],
                        Flag::Parallel => 1 - color[u],
                    };
                    if color[v] == 2 {
                        color[v] = want;
                        stack.push(v);
                    } else if color[v] != want {
                        ok = false;
                    }
                }
            }
            ok
        };

        let e = slots / 2;
        let chi_closed = punctures as i64 - e as i64 + t as i64;
        let (genus, sig) = if orientable {
            let two_g = 2 - chi_closed;
            if two_g < 0 || two_g % 2 != 0 {
                return Err(TriError::Invalid(vec![format!(
                    "orientable gluing with closed Euler characteristic {chi_closed}"
                )]));
            }
            let g = (two_g / 2) as u32;
            (g, SurfaceSig::orientable(g, punctures as u32))
        } else {
            let g = 2 - chi_closed;
            if g < 1 {
                return Err(TriError::Invalid(vec![format!(
                    "nonorientable gluing with closed Euler characteristic {chi_closed}"
                )]));
            }
            (g as u32, SurfaceSig { orientable: false, genus: g as u32, punctures: punctures as u32 })
        };
        let _ = genus;

        let mut edges: Vec<(u32, u32)> = (0..slots)
            .filter(|&s| s < partner[s] as usize)
            .map(|s| (s as u32, partner[s]))
            .collect();
        edges.sort_unstable();
        let mut edge_of_slot = vec![0u32; slots];
        for (k, &(a, b)) in edges.iter().enumerate() {
            edge_of_slot[a as usize] = k as u32;
            edge_of_slot[b as usize] = k as u32;
        }

        Ok(Triangulation { t, partner, flags, edges, edge_of_slot, corner_orbit, sig })
    }

    /// Deterministic reference triangulation for a surface signature.
    ///
    /// Spheres are built as the double of a fan-triangulated polygon whose
    /// vertices are the punctures; punctured projective planes as a
    /// fan-triangulated `2n`-gon with antipodal boundary identification.
    /// Everything else is a fan-triangulated identification polygon:
    /// handle blocks `a b a⁻¹ b⁻¹`, crosscap blocks `x x`, and one spur
    /// `y y⁻¹` per additional puncture.
    pub fn reference(sig: SurfaceSig) -> Result<Self, TriError> {
        sig.ideal_triangulation_counts()?;
        if sig.orientable && sig.genus == 0 {
            return Self::sphere_reference(sig.punctures as usize);
        }
        if !sig.orientable && sig.genus == 1 {
            return Self::projective_reference(sig.punctures as usize);
        }
        // identification polygon word: letter id plus sign
        let mut word: Vec<(u32, bool)> = Vec::new();
        let mut next = 0u32;
        if sig.orientable {
            for _ in 0..sig.genus {
                let (a, b) = (next, next + 1);
                next += 2;
                word.extend([(a, true), (b, true), (a, false), (b, false)]);
            }
        } else {
            for _ in 0..sig.genus {
                let x = next;
                next += 1;
                word.extend([(x, true), (x, true)]);
            }
        }
        for _ in 1..sig.punctures {
            let y = next;
            next += 1;
            word.extend([(y, true), (y, false)]);
        }
        let tri = Self::polygon_fan(&word)?;
        debug_assert_eq!(tri.sig, sig, "reference construction must realize the signature");
        if tri.sig != sig {
            return Err(TriError::Invalid(vec![format!(
                "reference construction produced {} instead of {}",
                tri.sig, sig
            )]));
        }
        Ok(tri)
    }

    /// Fan triangulation of an identification polygon.
    fn polygon_fan(word: &[(u32, bool)]) -> Result<Self, TriError> {
        let m = word.len();
        assert!(m >= 4 && m % 2 == 0, "polygon must have at least 4 sides");
        let t = m - 2;
        // polygon boundary side j as a triangle slot
        let boundary_slot = |j: usize| -> usize {
            if j == 0 {
                0 // triangle 0 side 0
            } else if j <= m - 2 {
                3 * (j - 1) + 1
            } else {
                3 * (m - 3) + 2
            }
        };
        let mut gluing: Vec<(usize, usize, Flag)> = Vec::new();
        // interior diagonals of the fan
        for i in 0..m - 4 + 1 {
            if i + 1 <= m - 3 {
                gluing.push((3 * i + 2, 3 * (i + 1), Flag::Antiparallel));
            }
        }
        // boundary identifications by letter
        let mut seen: std::collections::BTreeMap<u32, (usize, bool)> = Default::default();
        for (j, &(letter, sign)) in word.iter().enumerate() {
            if let Some((j0, sign0)) = seen.remove(&letter) {
                let flag = if sign0 == sign { Flag::Parallel } else { Flag::Antiparallel };
                gluing.push((boundary_slot(j0), boundary_slot(j), flag));
            } else {
                seen.insert(letter, (j, sign));
            }
        }
        assert!(seen.is_empty(), "every polygon letter must appear twice");
        let _ = t;
        Self::from_gluing(m - 2, &gluing)
    }

    /// Fan-triangulated `2n`-gon with antipodal boundary identification:
    /// the projective plane with `n` punctures, arranged in a cycle.
    fn projective_reference(n: usize) -> Result<Self, TriError> {
        assert!(n >= 2);
        let m = 2 * n;
        let boundary_slot = |j: usize| -> usize {
            if j == 0 {
                0
            } else if j <= m - 2 {
                3 * (j - 1) + 1
            } else {
                3 * (m - 3) + 2
            }
        };
        let mut gluing: Vec<(usize, usize, Flag)> = Vec::new();
        for i in 0..m - 3 {
            gluing.push((3 * i + 2, 3 * (i + 1), Flag::Antiparallel));
        }
        for j in 0..n {
            gluing.push((boundary_slot(j), boundary_slot(j + n), Flag::Parallel));
        }
        Self::from_gluing(m - 2, &gluing)
    }

    /// Double of a fan-triangulated `n`-gon: the sphere with `n` punctures.
    fn sphere_reference(n: usize) -> Result<Self, TriError> {
        assert!(n >= 3);
        let per = n - 2; // triangles per copy
        let mut gluing: Vec<(usize, usize, Flag)> = Vec::new();
        for copy in 0..2 {
            let base = copy * per;
            for i in 0..per.saturating_sub(1) {
                gluing.push((3 * (base + i) + 2, 3 * (base + i + 1), Flag::Antiparallel));
            }
        }
        let boundary_slot = |copy: usize, j: usize| -> usize {
            let base = copy * per;
            if j == 0 {
                3 * base
            } else if j <= n - 2 {
                3 * (base + j - 1) + 1
            } else {
                3 * (base + per - 1) + 2
            }
        };
        for j in 0..n {
            gluing.push((boundary_slot(0, j), boundary_slot(1, j), Flag::Parallel));
        }
        Self::from_gluing(2 * per, &gluing)
    }

    pub fn triangle_count(&self) -> usize {
        self.t
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn puncture_count(&self) -> usize {
        self.sig.punctures as usize
    }

    pub fn sig(&self) -> SurfaceSig {
        self.sig
    }

    /// The two slots of an edge, `(lo, hi)`; positions along the edge are
    /// numbered in the direction of `lo`.
    pub fn edge_slots(&self, edge: EdgeIdx) -> (usize, usize) {
        let (a, b) = self.edges[edge];
        (a as usize, b as usize)
    }

    pub fn edge_flag(&self, edge: EdgeIdx) -> Flag {
        self.flags[self.edges[edge].0 as usize]
    }

    pub fn edge_of_slot(&self, slot: usize) -> EdgeIdx {
        self.edge_of_slot[slot] as usize
    }

    pub fn partner(&self, slot: usize) -> usize {
        self.partner[slot] as usize
    }

    pub fn slot_flag(&self, slot: usize) -> Flag {
        self.flags[slot]
    }

    /// Puncture label at a corner (corner `c` of triangle `u` is `3u + c`).
    pub fn corner_puncture(&self, corner: usize) -> u32 {
        self.corner_orbit[corner]
    }

    /// Puncture labels at the start and end of the designated slot.
    pub fn edge_endpoints(&self, edge: EdgeIdx) -> (u32, u32) {
        let (a, _) = self.edges[edge];
        let s = a as usize;
        let e = (s / 3) * 3 + (s % 3 + 1) % 3;
        (self.corner_orbit[s], self.corner_orbit[e])
    }

    /// Number of ends of `edge` incident to `puncture` (0, 1 or 2).
    pub fn edge_ends_at(&self, edge: EdgeIdx, puncture: u32) -> u32 {
        let (p, q) = self.edge_endpoints(edge);
        (p == puncture) as u32 + (q == puncture) as u32
    }

    /// True when both slots of the edge lie in one triangle.
    pub fn is_self_folded(&self, edge: EdgeIdx) -> bool {
        let (a, b) = self.edges[edge];
        a as usize / 3 == b as usize / 3
    }

    pub fn report(&self) -> ValidationReport {
        ValidationReport {
            connected: true,
            euler_char: self.t as i64 - self.edges.len() as i64,
            orientable: self.sig.orientable,
            genus: self.sig.genus,
            punctures: self.sig.punctures,
        }
    }

    /// Replaces the diagonal `edge` of the quadrilateral spanned by its two
    /// (distinct) triangles with the other diagonal.
    pub fn flip(&self, edge: EdgeIdx) -> Result<FlipResult, TriError> {
        if edge >= self.edges.len() {
            return Err(TriError::EdgeOutOfRange(edge));
        }
        let (d0, d1) = self.edge_slots(edge);
        let (ta, ia) = (d0 / 3, d0 % 3);
        let (tb, ib) = (d1 / 3, d1 % 3);
        if ta == tb {
            return Err(TriError::UnflippableEdge(edge));
        }
        let diag_flag = self.flags[d0];
        // quadrilateral boundary in cyclic order: (old slot, reversed)
        let quad_sides: [(usize, bool); 4] = match diag_flag {
            Flag::Antiparallel => [
                (3 * ta + (ia + 2) % 3, false),
                (3 * tb + (ib + 1) % 3, false),
                (3 * tb + (ib + 2) % 3, false),
                (3 * ta + (ia + 1) % 3, false),
            ],
            Flag::Parallel => [
                (3 * ta + (ia + 2) % 3, false),
                (3 * tb + (ib + 2) % 3, true),
                (3 * tb + (ib + 1) % 3, true),
                (3 * ta + (ia + 1) % 3, false),
            ],
        };
        // re-house the quad sides: sides 0,1 of ta and 0,1 of tb
        let new_home = [3 * ta, 3 * ta + 1, 3 * tb, 3 * tb + 1];
        let slot_map = |s: usize| -> (usize, bool) {
            for (k, &(old, rev)) in quad_sides.iter().enumerate() {
                if old == s {
                    return (new_home[k], rev);
                }
            }
            (s, false)
        };
        let mut gluing: Vec<(usize, usize, Flag)> = Vec::new();
        for (k, &(a, b)) in self.edges.iter().enumerate() {
            if k == edge {
                continue;
            }
            let (na, ra) = slot_map(a as usize);
            let (nb, rb) = slot_map(b as usize);
            gluing.push((na, nb, self.flags[a as usize].toggled(ra ^ rb)));
        }
        gluing.push((3 * ta + 2, 3 * tb + 2, Flag::Antiparallel));
        let tri = Self::from_gluing(self.t, &gluing)?;
        debug_assert_eq!(tri.sig, self.sig, "flips preserve the surface");

        let new_edge = tri.edge_of_slot(3 * ta + 2);
        let mut edge_map = vec![None; self.edges.len()];
        for (k, &(a, _)) in self.edges.iter().enumerate() {
            if k == edge {
                continue;
            }
            let (na, _) = slot_map(a as usize);
            edge_map[k] = Some(tri.edge_of_slot(na));
        }
        let quad = [
            self.edge_of_slot(quad_sides[0].0),
            self.edge_of_slot(quad_sides[1].0),
            self.edge_of_slot(quad_sides[2].0),
            self.edge_of_slot(quad_sides[3].0),
        ];
        Ok(FlipResult { tri, new_edge, quad, edge_map })
    }

    /// Relabeling-invariant identity; see [`canonical`].
    pub fn canonical_form(&self) -> Result<CanonicalForm, TriError> {
        canonical::canonical_form(self)
    }

    pub fn to_raw(&self) -> RawTriangulation {
        RawTriangulation {
            t: self.t,
            gluing: self
                .edges
                .iter()
                .map(|&(a, b)| (a as usize, b as usize, self.flags[a as usize]))
                .collect(),
        }
    }

    pub fn from_raw(raw: &RawTriangulation) -> Result<Self, TriError> {
        Self::from_gluing(raw.t, &raw.gluing)
    }

    /// Stable content id of the labeled gluing (FNV-1a of the pair list).
    pub fn id(&self) -> String {
        let mut hash: u64 = 0xcbf29ce484222325;
        let mut eat = |byte: u8| {
            hash ^= byte as u64;
            hash = hash.wrapping_mul(0x100000001b3);
        };
        eat(self.t as u8);
        for &(a, b) in &self.edges {
            eat(a as u8);
            eat(b as u8);
            eat(match self.flags[a as usize] {
                Flag::Parallel => 1,
                Flag::Antiparallel => 0,
            });
        }
        format!("{hash:016x}")
    }
}
