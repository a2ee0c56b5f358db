//! Cutting a surface along a connected normal curve.
//!
//! The curve's corner arcs divide each triangle into regions: nested corner
//! regions at each corner plus one central region. The cut surface is the
//! union of all regions, glued along the edge segments between consecutive
//! curve points but not across the arcs. Pieces are the connected
//! components of that region graph; each piece's Euler characteristic,
//! orientability, boundary circle count and genus are computed from the
//! cell structure, and punctures keep their original labels.

use serde::{Deserialize, Serialize};

use super::{is_connected_curve, CurveError, CurveGeometry};
use crate::triangulation::{EdgeIdx, Flag, Triangulation};

/// One connected piece of the cut surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutPiece {
    pub orientable: bool,
    pub genus: u32,
    /// Original puncture labels carried by this piece, sorted.
    pub punctures: Vec<u32>,
    pub boundary_count: u32,
}

impl CutPiece {
    /// Euler characteristic with punctures removed and boundary kept.
    pub fn euler_char(&self) -> i64 {
        let g = self.genus as i64;
        let closed = if self.orientable { 2 - 2 * g } else { 2 - g };
        closed - self.boundary_count as i64 - self.punctures.len() as i64
    }

    /// Disc with some punctures: orientable, genus 0, one boundary circle.
    pub fn is_punctured_disc(&self) -> bool {
        self.orientable && self.genus == 0 && self.boundary_count == 1
    }

    fn sort_key(&self) -> (Vec<u32>, bool, u32, u32) {
        (self.punctures.clone(), self.orientable, self.genus, self.boundary_count)
    }
}

/// The pieces of a cut, plus enough layout to answer which piece a point of
/// the complement lies in.
#[derive(Debug, Clone)]
pub struct CutResult {
    pub pieces: Vec<CutPiece>,
    /// Boundary circles created by the cut: 1 for a one-sided curve, 2 for
    /// a two-sided one.
    pub new_boundaries: u32,
    /// Per edge, per segment index `0..=w(edge)`: piece index.
    seg_piece: Vec<Vec<u32>>,
}

impl CutResult {
    /// Piece containing segment `seg` of `edge` (segments are numbered
    /// along the edge's designated direction; the curve's points separate
    /// segment `k` from segment `k + 1`).
    pub fn piece_of_segment(&self, edge: EdgeIdx, seg: usize) -> usize {
        self.seg_piece[edge][seg] as usize
    }
}

/// Triviality of a connected curve, read off the cut pieces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TrivialityVerdict {
    Nontrivial,
    BoundsDisc,
    BoundsOncePuncturedDisc,
    BoundsMobiusBand,
}

/// Topological type of a nontrivial connected curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurveKind {
    OneSided,
    TwoSidedNonseparating,
    Separating { pieces: [CutPiece; 2] },
}

impl CurveKind {
    pub fn is_one_sided(&self) -> bool {
        matches!(self, CurveKind::OneSided)
    }

    pub fn is_separating(&self) -> bool {
        matches!(self, CurveKind::Separating { .. })
    }

    /// Short name for reports.
    pub fn label(&self) -> &'static str {
        match self {
            CurveKind::OneSided => "one-sided",
            CurveKind::TwoSidedNonseparating => "two-sided nonseparating",
            CurveKind::Separating { .. } => "separating",
        }
    }
}

/// A classified nontrivial connected curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveClass {
    pub weights: Vec<u32>,
    pub kind: CurveKind,
    /// `k` when some complement piece is a disc with `k` punctures (the
    /// smaller count when both pieces are punctured discs).
    pub k_separating: Option<u32>,
}

impl CurveClass {
    /// The k-separating predicate: some complement piece is a disc with
    /// exactly `k` punctures. On a sphere a separating curve satisfies this
    /// for two values of `k` at once; `k_separating` records the smaller.
    pub fn is_k_separating(&self, k: u32) -> bool {
        match &self.kind {
            CurveKind::Separating { pieces } => pieces
                .iter()
                .any(|p| p.is_punctured_disc() && p.punctures.len() == k as usize),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub verdict: TrivialityVerdict,
    pub class: Option<CurveClass>,
}

struct RegionLayout {
    /// Region id of the central region of each triangle.
    central: Vec<u32>,
    /// Region id of corner region (u, c, depth): base + depth - 1.
    corner_base: Vec<[u32; 3]>,
    count: usize,
}

impl RegionLayout {
    fn new(geom: &CurveGeometry) -> Self {
        let t = geom.tri.triangle_count();
        let mut central = Vec::with_capacity(t);
        let mut corner_base = Vec::with_capacity(t);
        let mut next = 0u32;
        for u in 0..t {
            central.push(next);
            next += 1;
            let mut bases = [0u32; 3];
            for c in 0..3 {
                bases[c] = next;
                next += geom.corner[u][c];
            }
            corner_base.push(bases);
        }
        RegionLayout { central, corner_base, count: next as usize }
    }

    fn corner_region(&self, u: usize, c: usize, depth: u32) -> u32 {
        self.corner_base[u][c] + depth - 1
    }

    /// Region adjacent to local segment `k` (0-based, `0..=w`) of `slot`.
    fn region_of_local_segment(&self, geom: &CurveGeometry, slot: usize, k: u32) -> u32 {
        let u = slot / 3;
        let c = slot % 3;
        let c_end = (c + 1) % 3;
        let w = geom.w[geom.tri.edge_of_slot(slot)];
        let ns = geom.corner[u][c];
        let ne = geom.corner[u][c_end];
        debug_assert_eq!(ns + ne, w);
        if k < ns {
            self.corner_region(u, c, k + 1)
        } else if k > w - ne {
            self.corner_region(u, c_end, w - k + 1)
        } else {
            self.central[u]
        }
    }

    /// Region touching the corner point itself.
    fn region_at_corner(&self, geom: &CurveGeometry, u: usize, c: usize) -> u32 {
        if geom.corner[u][c] > 0 {
            self.corner_region(u, c, 1)
        } else {
            self.central[u]
        }
    }
}

/// Local segment index (for a slot) of edge segment `m`.
fn local_segment(tri: &Triangulation, w: &[u32], slot: usize, m: u32) -> u32 {
    let e = tri.edge_of_slot(slot);
    let (a, _) = tri.edge_slots(e);
    if slot == a {
        m
    } else {
        match tri.edge_flag(e) {
            Flag::Parallel => m,
            Flag::Antiparallel => w[e] - m,
        }
    }
}

/// Edge segment index of a local segment of `slot`.
fn edge_segment(tri: &Triangulation, w: &[u32], slot: usize, local: u32) -> u32 {
    // the map is an involution
    local_segment(tri, w, slot, local)
}

/// Cuts the surface along a connected curve `w`.
pub fn cut_along(tri: &Triangulation, w: &[u32]) -> Result<CutResult, CurveError> {
    let comps = super::trace(tri, w)?;
    if comps.is_empty() {
        return Err(CurveError::EmptyCurve);
    }
    if comps.len() != 1 {
        return Err(CurveError::NotConnected { components: comps.len() });
    }
    let geom = CurveGeometry::new(tri, w)?;
    let layout = RegionLayout::new(&geom);

    // union regions across edge segments
    let mut parent: Vec<u32> = (0..layout.count as u32).collect();
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
    let union = |parent: &mut Vec<u32>, a: u32, b: u32| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            parent[hi as usize] = lo;
        }
    };
    // region pair on the two sides of each edge segment
    let seg_regions: Vec<Vec<(u32, u32)>> = (0..tri.edge_count())
        .map(|e| {
            let (a, b) = tri.edge_slots(e);
            (0..=w[e])
                .map(|m| {
                    let ra = layout.region_of_local_segment(&geom, a, local_segment(tri, w, a, m));
                    let rb = layout.region_of_local_segment(&geom, b, local_segment(tri, w, b, m));
                    (ra, rb)
                })
                .collect()
        })
        .collect();
    for per_edge in &seg_regions {
        for &(ra, rb) in per_edge {
            union(&mut parent, ra, rb);
        }
    }

    // piece indices in deterministic root order
    let mut roots: Vec<u32> = (0..layout.count as u32)
        .filter(|&r| find(&mut parent, r) == r)
        .collect();
    roots.sort_unstable();
    let piece_of_region = |parent: &mut Vec<u32>, r: u32| -> usize {
        let root = find(parent, r);
        roots.binary_search(&root).expect("root")
    };
    let piece_count = roots.len();

    // punctures: every corner of an orbit must land in one piece
    let mut piece_punctures: Vec<Vec<u32>> = vec![Vec::new(); piece_count];
    {
        let mut seen: Vec<Option<usize>> = vec![None; tri.puncture_count()];
        for u in 0..tri.triangle_count() {
            for c in 0..3 {
                let label = tri.corner_puncture(3 * u + c) as usize;
                let piece = piece_of_region(&mut parent, layout.region_at_corner(&geom, u, c));
                match seen[label] {
                    None => {
                        seen[label] = Some(piece);
                        piece_punctures[piece].push(label as u32);
                    }
                    Some(prev) => {
                        debug_assert_eq!(prev, piece, "puncture split across pieces");
                    }
                }
            }
        }
    }
    for list in &mut piece_punctures {
        list.sort_unstable();
    }

    // cell counts per piece
    let mut faces = vec![0i64; piece_count];
    for r in 0..layout.count as u32 {
        faces[piece_of_region(&mut parent, r)] += 1;
    }
    let mut segs = vec![0i64; piece_count];
    let mut seg_piece: Vec<Vec<u32>> = Vec::with_capacity(tri.edge_count());
    for per_edge in &seg_regions {
        let mut row = Vec::with_capacity(per_edge.len());
        for &(ra, _) in per_edge {
            let p = piece_of_region(&mut parent, ra);
            segs[p] += 1;
            row.push(p as u32);
        }
        seg_piece.push(row);
    }
    // doubled curve points: one vertex on each side of each point
    let mut verts = vec![0i64; piece_count];
    for p in 0..piece_count {
        verts[p] += piece_punctures[p].len() as i64;
    }
    for point in 0..geom.total_points as u32 {
        let (e, pos) = geom.locate(point);
        verts[seg_piece[e][(pos - 1) as usize] as usize] += 1; // before side
        verts[seg_piece[e][pos as usize] as usize] += 1; // after side
    }
    // doubled arcs: each corner arc contributes one boundary edge per side
    let arc_sides = |arc: &super::CornerArc| -> [(u32, [(u32, u32); 2]); 2] {
        let u = arc.tri as usize;
        let c = arc.corner as usize;
        let side_prev = 3 * u + (c + 2) % 3;
        let side_cur = 3 * u + c;
        let w_prev = geom.w[tri.edge_of_slot(side_prev)];
        let inner = layout.corner_region(u, c, arc.depth);
        let outer = if arc.depth < geom.corner[u][c] {
            layout.corner_region(u, c, arc.depth + 1)
        } else {
            layout.central[u]
        };
        // boundary nodes: (point, local segment) at each endpoint per side
        let inner_nodes = [
            (arc.p1, edge_segment(tri, geom.w, side_prev, w_prev + 1 - arc.depth)),
            (arc.p2, edge_segment(tri, geom.w, side_cur, arc.depth - 1)),
        ];
        let outer_nodes = [
            (arc.p1, edge_segment(tri, geom.w, side_prev, w_prev - arc.depth)),
            (arc.p2, edge_segment(tri, geom.w, side_cur, arc.depth)),
        ];
        [(inner, inner_nodes), (outer, outer_nodes)]
    };
    let mut bedges = vec![0i64; piece_count];
    // boundary cycle tracing on doubled points: node = 2 * point + side
    let mut bnd_adj: Vec<Vec<u32>> = vec![Vec::new(); 2 * geom.total_points];
    let mut bnd_piece: Vec<u32> = vec![u32::MAX; 2 * geom.total_points];
    for arc in &geom.arcs {
        for (region, nodes) in arc_sides(arc) {
            let p = piece_of_region(&mut parent, region);
            bedges[p] += 1;
            let ids: Vec<u32> = nodes
                .iter()
                .map(|&(point, seg)| {
                    let (_, pos) = geom.locate(point);
                    debug_assert!(seg == pos - 1 || seg == pos, "arc endpoint beside its point");
                    let side = (seg == pos) as u32; // 0 = before, 1 = after
                    2 * point + side
                })
                .collect();
            bnd_adj[ids[0] as usize].push(ids[1]);
            bnd_adj[ids[1] as usize].push(ids[0]);
            for &id in &ids {
                debug_assert!(bnd_piece[id as usize] == u32::MAX || bnd_piece[id as usize] == p as u32);
                bnd_piece[id as usize] = p as u32;
            }
        }
    }
    let mut boundary = vec![0u32; piece_count];
    let mut total_cycles = 0u32;
    {
        let mut seen = vec![false; 2 * geom.total_points];
        for start in 0..2 * geom.total_points {
            if seen[start] || bnd_adj[start].is_empty() {
                continue;
            }
            debug_assert_eq!(bnd_adj[start].len(), 2, "boundary graph is 2-regular");
            let mut stack = vec![start as u32];
            seen[start] = true;
            while let Some(x) = stack.pop() {
                for &y in &bnd_adj[x as usize] {
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        stack.push(y);
                    }
                }
            }
            boundary[bnd_piece[start] as usize] += 1;
            total_cycles += 1;
        }
    }

    // orientability per piece: 2-coloring of regions across segments
    let orientable_piece = {
        let mut color: Vec<u8> = vec![2; layout.count];
        let mut ok = vec![true; piece_count];
        // adjacency lists per region
        let mut adj: Vec<Vec<(u32, bool)>> = vec![Vec::new(); layout.count];
        for (e, per_edge) in seg_regions.iter().enumerate() {
            let same = tri.edge_flag(e) == Flag::Antiparallel;
            for &(ra, rb) in per_edge {
                adj[ra as usize].push((rb, same));
                adj[rb as usize].push((ra, same));
            }
        }
        for start in 0..layout.count {
            if color[start] != 2 {
                continue;
            }
            color[start] = 0;
            let mut stack = vec![start as u32];
            let piece = piece_of_region(&mut parent, start as u32);
            while let Some(x) = stack.pop() {
                for &(y, same) in &adj[x as usize] {
                    let want = if same { color[x as usize] } else { 1 - color[x as usize] };
                    if color[y as usize] == 2 {
                        color[y as usize] = want;
                        stack.push(y);
                    } else if color[y as usize] != want {
                        ok[piece] = false;
                    }
                }
            }
        }
        ok
    };

    let mut pieces = Vec::with_capacity(piece_count);
    for p in 0..piece_count {
        let chi = verts[p] - (segs[p] + bedges[p]) + faces[p];
        let b = boundary[p] as i64;
        let orientable = orientable_piece[p];
        let genus = if orientable {
            let two_g = 2 - chi - b;
            debug_assert!(two_g >= 0 && two_g % 2 == 0, "piece {p}: chi {chi}, b {b}");
            (two_g / 2) as u32
        } else {
            let g = 2 - chi - b;
            debug_assert!(g >= 1, "piece {p}: chi {chi}, b {b}");
            g as u32
        };
        pieces.push(CutPiece {
            orientable,
            genus,
            punctures: piece_punctures[p].clone(),
            boundary_count: boundary[p],
        });
    }

    // reorder pieces deterministically and remap the segment table
    let mut order: Vec<usize> = (0..piece_count).collect();
    order.sort_by(|&a, &b| pieces[a].sort_key().cmp(&pieces[b].sort_key()));
    let mut rank = vec![0u32; piece_count];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new as u32;
    }
    let pieces: Vec<CutPiece> = order.iter().map(|&i| pieces[i].clone()).collect();
    for row in &mut seg_piece {
        for x in row.iter_mut() {
            *x = rank[*x as usize];
        }
    }

    Ok(CutResult { pieces, new_boundaries: total_cycles, seg_piece })
}

/// Classifies a connected curve: triviality verdict plus, when nontrivial,
/// its topological type.
pub fn classify(tri: &Triangulation, w: &[u32]) -> Result<Classification, CurveError> {
    let cut = cut_along(tri, w)?;
    match cut.pieces.len() {
        1 => {
            let kind = match cut.new_boundaries {
                1 => CurveKind::OneSided,
                2 => CurveKind::TwoSidedNonseparating,
                other => panic!("nonseparating cut with {other} boundary circles"),
            };
            Ok(Classification {
                verdict: TrivialityVerdict::Nontrivial,
                class: Some(CurveClass { weights: w.to_vec(), kind, k_separating: None }),
            })
        }
        2 => {
            debug_assert_eq!(cut.new_boundaries, 2);
            let mut verdict = TrivialityVerdict::Nontrivial;
            for piece in &cut.pieces {
                if piece.is_punctured_disc() && piece.punctures.is_empty() {
                    verdict = TrivialityVerdict::BoundsDisc;
                    break;
                }
                if piece.is_punctured_disc() && piece.punctures.len() == 1 {
                    verdict = TrivialityVerdict::BoundsOncePuncturedDisc;
                    break;
                }
                if !piece.orientable
                    && piece.genus == 1
                    && piece.boundary_count == 1
                    && piece.punctures.is_empty()
                {
                    verdict = TrivialityVerdict::BoundsMobiusBand;
                    break;
                }
            }
            if verdict != TrivialityVerdict::Nontrivial {
                return Ok(Classification { verdict, class: None });
            }
            let k_separating = cut
                .pieces
                .iter()
                .filter(|p| p.is_punctured_disc())
                .map(|p| p.punctures.len() as u32)
                .min();
            let pieces = [cut.pieces[0].clone(), cut.pieces[1].clone()];
            Ok(Classification {
                verdict: TrivialityVerdict::Nontrivial,
                class: Some(CurveClass {
                    weights: w.to_vec(),
                    kind: CurveKind::Separating { pieces },
                    k_separating,
                }),
            })
        }
        other => panic!("cut along a connected curve produced {other} pieces"),
    }
}

/// Which piece of `cut` (the cut along `v`) carries the curve `u`,
/// given that `u` and `v` are disjoint classes. Every point of `u` in the
/// traced union must fall in the same piece; inconsistency is an error.
pub fn piece_of_disjoint_curve(
    tri: &Triangulation,
    v: &[u32],
    cut: &CutResult,
    u: &[u32],
) -> Result<usize, CurveError> {
    let sum: Vec<u32> = v.iter().zip(u).map(|(a, b)| a + b).collect();
    let comps = super::trace(tri, &sum)?;
    if comps.len() != 2 {
        return Err(CurveError::Degenerate("curves are not disjoint"));
    }
    let ucomp = comps
        .iter()
        .find(|c| c.weights == u)
        .ok_or(CurveError::Degenerate("union does not split into the two classes"))?;
    let geom = CurveGeometry::new(tri, &sum)?;
    let mut piece: Option<usize> = None;
    // per-edge sorted u-point positions for prefix counting
    let mut upts: Vec<Vec<u32>> = vec![Vec::new(); tri.edge_count()];
    for &p in &ucomp.points {
        let (e, pos) = geom.locate(p);
        upts[e].push(pos);
    }
    for row in &mut upts {
        row.sort_unstable();
    }
    for (e, row) in upts.iter().enumerate() {
        for (i, &pos) in row.iter().enumerate() {
            // v-points before this u-point along the edge
            let seg = (pos as usize - 1) - i;
            let pc = cut.piece_of_segment(e, seg);
            match piece {
                None => piece = Some(pc),
                Some(prev) if prev == pc => {}
                Some(_) => return Err(CurveError::Degenerate("curve straddles the cut")),
            }
        }
    }
    piece.ok_or(CurveError::EmptyCurve)
}

/// Connectivity plus nontriviality in one call; used by the enumerator.
pub fn connected_nontrivial_class(
    tri: &Triangulation,
    w: &[u32],
) -> Result<Option<CurveClass>, CurveError> {
    if !is_connected_curve(tri, w)? {
        return Ok(None);
    }
    Ok(classify(tri, w)?.class)
}
