//! Bounded snapshots of the complex of curves.
//!
//! A snapshot enumerates every curve class whose normal coordinates stay
//! within a weight bound and records the disjointness relation between
//! them. Simplices of the complex appear as cliques; links, dual links,
//! side partitions along separating vertices, pentagons, simple pairs and
//! chains are all read off the snapshot.
//!
//! A clique can only be certified maximal in the full complex when its
//! dimension reaches the top of the maximal-simplex range, or, on
//! nonorientable surfaces of genus at least 3, when the pants-count
//! relation `3k = n + m + 2(l + 1 - m)` holds with the right parity of the
//! one-sided count; everything else is flagged snapshot-maximal only.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curves::{
    cut_along, disjoint, enumerate_vertices, piece_of_disjoint_curve, CurveClass, CurveError,
    CutResult,
};
use crate::surface::{SurfaceError, SurfaceSig};
use crate::triangulation::{EdgeIdx, TriError, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("vertex {0} not in snapshot")]
    UnknownVertex(usize),
    #[error("duplicate vertices in tuple")]
    DuplicateVertices,
    #[error("wrong vertex type: {0}")]
    WrongVertexType(&'static str),
    #[error("snapshot surface does not satisfy: {0}")]
    WrongSurface(&'static str),
    #[error("snapshot file does not match its reference triangulation")]
    StaleSnapshot,
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Tri(#[from] TriError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// Bounded vertex set of the complex of curves with its disjointness
/// relation.
#[derive(Debug, Clone)]
pub struct ComplexSnapshot {
    pub sig: SurfaceSig,
    pub bound: u32,
    pub triangulation: Triangulation,
    pub vertices: Vec<CurveClass>,
    /// Row-major bit matrix, `words` u64 words per row.
    adj: Vec<u64>,
    words: usize,
}

impl ComplexSnapshot {
    /// Enumerates the vertices on the reference triangulation and fills in
    /// the pairwise disjointness relation.
    pub fn build(sig: SurfaceSig, bound: u32) -> Result<Self, ComplexError> {
        let triangulation = Triangulation::reference(sig)?;
        let vertices = enumerate_vertices(&triangulation, bound)?;
        Self::from_vertices(sig, bound, triangulation, vertices)
    }

    fn from_vertices(
        sig: SurfaceSig,
        bound: u32,
        triangulation: Triangulation,
        vertices: Vec<CurveClass>,
    ) -> Result<Self, ComplexError> {
        let n = vertices.len();
        let words = n.div_ceil(64).max(1);
        let rows: Vec<Vec<u64>> = {
            use rayon::prelude::*;
            (0..n)
                .into_par_iter()
                .map(|i| {
                    let mut row = vec![0u64; words];
                    for j in 0..n {
                        if i == j {
                            continue;
                        }
                        let d = disjoint(&triangulation, &vertices[i].weights, &vertices[j].weights)
                            .expect("enumerated vertices are connected and distinct");
                        if d {
                            row[j / 64] |= 1 << (j % 64);
                        }
                    }
                    row
                })
                .collect()
        };
        let mut adj = vec![0u64; n * words];
        for (i, row) in rows.into_iter().enumerate() {
            adj[i * words..(i + 1) * words].copy_from_slice(&row);
        }
        let snap = ComplexSnapshot { sig, bound, triangulation, vertices, adj, words };
        debug_assert!(snap.symmetric());
        Ok(snap)
    }

    fn symmetric(&self) -> bool {
        (0..self.len()).all(|i| (0..self.len()).all(|j| i == j || self.adjacent(i, j) == self.adjacent(j, i)))
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> &CurveClass {
        &self.vertices[i]
    }

    pub fn check_vertex(&self, i: usize) -> Result<(), ComplexError> {
        if i >= self.len() {
            return Err(ComplexError::UnknownVertex(i));
        }
        Ok(())
    }

    /// Disjointness of two distinct vertices.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        debug_assert_ne!(i, j, "adjacency is undefined on the diagonal");
        self.adj[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.adj[i * self.words..(i + 1) * self.words]
    }

    pub fn is_one_sided(&self, i: usize) -> bool {
        self.vertices[i].kind.is_one_sided()
    }

    pub fn k_separating(&self, i: usize) -> Option<u32> {
        self.vertices[i].k_separating
    }

    /// Vertices disjoint from `v`.
    pub fn link(&self, v: usize) -> Result<Vec<usize>, ComplexError> {
        self.check_vertex(v)?;
        Ok((0..self.len()).filter(|&u| u != v && self.adjacent(v, u)).collect())
    }

    /// The dual link: link vertices joined when they are *not* disjoint.
    pub fn dual_link(&self, v: usize) -> Result<DualLinkView, ComplexError> {
        let vertices = self.link(v)?;
        let mut edges = Vec::new();
        for (a, &i) in vertices.iter().enumerate() {
            for &j in vertices.iter().skip(a + 1) {
                if !self.adjacent(i, j) {
                    edges.push((i, j));
                }
            }
        }
        // components via union-find over link positions
        let mut parent: Vec<usize> = (0..vertices.len()).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut c = x;
            while parent[c] != r {
                let n = parent[c];
                parent[c] = r;
                c = n;
            }
            r
        }
        let index_of: std::collections::BTreeMap<usize, usize> =
            vertices.iter().enumerate().map(|(pos, &id)| (id, pos)).collect();
        for &(i, j) in &edges {
            let (a, b) = (index_of[&i], index_of[&j]);
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                parent[hi] = lo;
            }
        }
        let mut comp_map: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for (pos, &id) in vertices.iter().enumerate() {
            comp_map.entry(find(&mut parent, pos)).or_default().push(id);
        }
        let components: Vec<Vec<usize>> = comp_map.into_values().collect();
        Ok(DualLinkView { center: v, vertices, edges, components })
    }

    /// Assigns every link vertex of a separating vertex to the complement
    /// piece carrying it.
    pub fn side_partition(&self, v: usize) -> Result<SidePartition, ComplexError> {
        self.check_vertex(v)?;
        if !self.vertices[v].kind.is_separating() {
            return Err(ComplexError::WrongVertexType("side partitions need a separating vertex"));
        }
        let cut = cut_along(&self.triangulation, &self.vertices[v].weights)?;
        let mut assignment = Vec::new();
        for u in self.link(v)? {
            let piece = piece_of_disjoint_curve(
                &self.triangulation,
                &self.vertices[v].weights,
                &cut,
                &self.vertices[u].weights,
            )?;
            assignment.push((u, piece));
        }
        Ok(SidePartition { center: v, assignment, cut })
    }

    /// All maximal cliques of the disjointness graph, audited against the
    /// dimension range and the pants-count relation.
    pub fn maximal_simplices(&self) -> Vec<CliqueAudit> {
        let cliques = self.maximal_cliques();
        let range = self.sig.maximal_simplex_range().ok();
        let pants = self.sig.pants_count().ok();
        let n = self.sig.punctures as i64;
        let g = self.sig.genus as i64;
        let mut audits: Vec<CliqueAudit> = cliques
            .into_iter()
            .map(|clique| {
                let dimension = clique.len() as i64 - 1;
                let onesided = clique.iter().filter(|&&i| self.is_one_sided(i)).count() as u32;
                let m = onesided as i64;
                let eq1_ok = match (self.sig.orientable, pants) {
                    (false, Some(k)) => Some(3 * k as i64 == n + m + 2 * (dimension + 1 - m)),
                    _ => None,
                };
                let certified = match &range {
                    Some(r) => {
                        dimension == r.hi
                            || (!self.sig.orientable
                                && g >= 3
                                && eq1_ok == Some(true)
                                && m % 2 == g % 2
                                && r.contains(dimension))
                    }
                    None => false,
                };
                CliqueAudit { clique, dimension, onesided, eq1_ok, certified }
            })
            .collect();
        audits.sort_by(|a, b| a.clique.cmp(&b.clique));
        audits
    }

    /// Bron-Kerbosch with pivoting over the disjointness relation.
    fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        let words = self.words;
        let mut all = vec![0u64; words];
        for i in 0..n {
            all[i / 64] |= 1 << (i % 64);
        }
        let mut r = Vec::new();
        self.bron_kerbosch(&mut r, all, vec![0u64; words], &mut out);
        out
    }

    fn bron_kerbosch(&self, r: &mut Vec<usize>, p: Vec<u64>, x: Vec<u64>, out: &mut Vec<Vec<usize>>) {
        let ones = |set: &[u64]| -> usize { set.iter().map(|w| w.count_ones() as usize).sum() };
        if ones(&p) == 0 && ones(&x) == 0 {
            let mut clique = r.clone();
            clique.sort_unstable();
            out.push(clique);
            return;
        }
        // pivot: vertex of P or X leaving the fewest candidates
        let mut pivot = None;
        let mut best = usize::MAX;
        for set in [&p, &x] {
            for (wi, &word) in set.iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let v = wi * 64 + b;
                    let row = self.row(v);
                    let in_p: usize =
                        row.iter().zip(&p).map(|(a, b)| (a & b).count_ones() as usize).sum();
                    let missing = ones(&p) - in_p;
                    if missing < best {
                        best = missing;
                        pivot = Some(v);
                    }
                }
            }
        }
        let pivot_row: Vec<u64> = match pivot {
            Some(v) => self.row(v).to_vec(),
            None => vec![0; p.len()],
        };
        let mut cands = Vec::new();
        for (wi, (&pw, &nw)) in p.iter().zip(&pivot_row).enumerate() {
            let mut bits = pw & !nw;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                cands.push(wi * 64 + b);
            }
        }
        let mut p = p;
        let mut x = x;
        for v in cands {
            let row = self.row(v);
            let np: Vec<u64> = p.iter().zip(row).map(|(a, b)| a & b).collect();
            let nx: Vec<u64> = x.iter().zip(row).map(|(a, b)| a & b).collect();
            r.push(v);
            self.bron_kerbosch(r, np, nx, out);
            r.pop();
            p[v / 64] &= !(1 << (v % 64));
            x[v / 64] |= 1 << (v % 64);
        }
    }

    /// Cyclic disjointness pattern of an ordered 5-tuple: consecutive pairs
    /// disjoint, everything else intersecting. The pattern is invariant
    /// under cyclic permutations and inversion of the tuple.
    pub fn is_pentagon(&self, ids: [usize; 5]) -> Result<bool, ComplexError> {
        for &i in &ids {
            self.check_vertex(i)?;
        }
        let mut sorted = ids;
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(ComplexError::DuplicateVertices);
        }
        for a in 0..5 {
            for b in a + 1..5 {
                let gap = b - a;
                let cyclic_adjacent = gap == 1 || gap == 4;
                if self.adjacent(ids[a], ids[b]) != cyclic_adjacent {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn to_file(&self) -> SnapshotFile {
        let mut adjacency = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.adjacent(i, j) {
                    adjacency.push((i, j));
                }
            }
        }
        SnapshotFile {
            surface: self.sig,
            triangulation: self.triangulation.id(),
            bound: self.bound,
            vertices: self.vertices.clone(),
            adjacency,
        }
    }

    pub fn from_file(file: SnapshotFile) -> Result<Self, ComplexError> {
        let triangulation = Triangulation::reference(file.surface)?;
        if triangulation.id() != file.triangulation {
            return Err(ComplexError::StaleSnapshot);
        }
        let n = file.vertices.len();
        let words = n.div_ceil(64).max(1);
        let mut adj = vec![0u64; n * words];
        for &(i, j) in &file.adjacency {
            if i >= n || j >= n {
                return Err(ComplexError::UnknownVertex(i.max(j)));
            }
            adj[i * words + j / 64] |= 1 << (j % 64);
            adj[j * words + i / 64] |= 1 << (i % 64);
        }
        Ok(ComplexSnapshot {
            sig: file.surface,
            bound: file.bound,
            triangulation,
            vertices: file.vertices,
            adj,
            words,
        })
    }
}

/// Serialized snapshot: vertices plus the sorted disjointness pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SnapshotFile {
    pub surface: SurfaceSig,
    pub triangulation: String,
    pub bound: u32,
    pub vertices: Vec<CurveClass>,
    pub adjacency: Vec<(usize, usize)>,
}

/// Link of a vertex with the complementary (intersection) edges.
#[derive(Debug, Clone, Serialize)]
pub struct DualLinkView {
    pub center: usize,
    pub vertices: Vec<usize>,
    /// Pairs of link vertices that are *not* disjoint.
    pub edges: Vec<(usize, usize)>,
    pub components: Vec<Vec<usize>>,
}

impl DualLinkView {
    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }
}

/// Assignment of link vertices to complement pieces of a separating vertex.
#[derive(Debug, Clone)]
pub struct SidePartition {
    pub center: usize,
    pub assignment: Vec<(usize, usize)>,
    pub cut: CutResult,
}

impl SidePartition {
    pub fn side(&self, piece: usize) -> Vec<usize> {
        self.assignment.iter().filter(|&&(_, p)| p == piece).map(|&(u, _)| u).collect()
    }
}

/// One maximal clique with its audit record.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CliqueAudit {
    pub clique: Vec<usize>,
    pub dimension: i64,
    /// Number of one-sided members, `m`.
    #[serde(rename = "m")]
    pub onesided: u32,
    /// Pants-count relation check; absent on orientable surfaces.
    pub eq1_ok: Option<bool>,
    /// Certified maximal in the full complex, not merely in the snapshot.
    pub certified: bool,
}

/// Witness data for a simple pair on a punctured projective plane.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplePairWitness {
    /// `(gamma_1, gamma_2, alpha, gamma_3, beta)`.
    pub pentagon: [usize; 5],
    /// `gamma_1 .. gamma_{n-1}`, with `gamma_k` k-separating for `k >= 3`.
    pub gammas: Vec<usize>,
    /// The one-sided vertex completing the four top-dimensional simplices.
    pub delta: usize,
}

fn is_k_separating(snap: &ComplexSnapshot, i: usize, k: u32) -> bool {
    snap.vertices[i].is_k_separating(k)
}

/// Searches the snapshot of a punctured projective plane for vertices
/// witnessing that two 2-separating vertices form a simple pair: a pentagon
/// `(gamma_1, gamma_2, alpha, gamma_3, beta)`, typed vertices
/// `gamma_1 .. gamma_{n-1}` and a one-sided `delta` such that the four
/// prescribed simplices all reach the top dimension `n - 2`. Candidates are
/// tried in vertex order and the first witness is returned.
pub fn find_simple_pair_witness(
    snap: &ComplexSnapshot,
    alpha: usize,
    beta: usize,
) -> Result<Option<SimplePairWitness>, ComplexError> {
    if snap.sig.orientable || snap.sig.genus != 1 || snap.sig.punctures < 5 {
        return Err(ComplexError::WrongSurface(
            "simple-pair witnesses live on a projective plane with at least 5 punctures",
        ));
    }
    snap.check_vertex(alpha)?;
    snap.check_vertex(beta)?;
    if alpha == beta {
        return Err(ComplexError::DuplicateVertices);
    }
    for v in [alpha, beta] {
        if !is_k_separating(snap, v, 2) {
            return Err(ComplexError::WrongVertexType("alpha and beta must be 2-separating"));
        }
    }
    // a pentagon needs alpha and beta to intersect
    if snap.adjacent(alpha, beta) {
        return Ok(None);
    }
    let n = snap.sig.punctures as usize;
    let pool_k: Vec<Vec<usize>> = (0..=n)
        .map(|k| {
            (0..snap.len())
                .filter(|&i| i != alpha && i != beta && is_k_separating(snap, i, k as u32))
                .collect()
        })
        .collect();
    let onesided: Vec<usize> =
        (0..snap.len()).filter(|&i| i != alpha && i != beta && snap.is_one_sided(i)).collect();

    let mut sigma = vec![0usize; n.saturating_sub(4)];
    search_sigma(snap, alpha, beta, &pool_k, &onesided, &mut sigma, 0, n)
}

fn search_sigma(
    snap: &ComplexSnapshot,
    alpha: usize,
    beta: usize,
    pool_k: &[Vec<usize>],
    onesided: &[usize],
    sigma: &mut Vec<usize>,
    depth: usize,
    n: usize,
) -> Result<Option<SimplePairWitness>, ComplexError> {
    if depth == sigma.len() {
        return finish_witness(snap, alpha, beta, pool_k, onesided, sigma);
    }
    // sigma holds gamma_4 .. gamma_{n-1}
    let k = 4 + depth;
    for &cand in &pool_k[k] {
        if sigma[..depth].contains(&cand) {
            continue;
        }
        if !snap.adjacent(cand, alpha) || !snap.adjacent(cand, beta) {
            continue;
        }
        if sigma[..depth].iter().any(|&s| !snap.adjacent(s, cand)) {
            continue;
        }
        sigma[depth] = cand;
        if let Some(w) = search_sigma(snap, alpha, beta, pool_k, onesided, sigma, depth + 1, n)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn finish_witness(
    snap: &ComplexSnapshot,
    alpha: usize,
    beta: usize,
    pool_k: &[Vec<usize>],
    onesided: &[usize],
    sigma: &[usize],
) -> Result<Option<SimplePairWitness>, ComplexError> {
    let disjoint_from_sigma = |v: usize| sigma.iter().all(|&s| s != v && snap.adjacent(s, v));
    for &delta in onesided {
        if !snap.adjacent(delta, alpha) || !snap.adjacent(delta, beta) {
            continue;
        }
        if !disjoint_from_sigma(delta) {
            continue;
        }
        for &g2 in &pool_k[3] {
            // gamma_2: disjoint from alpha, delta, sigma; intersects beta
            if g2 == delta
                || !snap.adjacent(g2, alpha)
                || snap.adjacent(g2, beta)
                || !snap.adjacent(g2, delta)
                || !disjoint_from_sigma(g2)
            {
                continue;
            }
            for &g3 in &pool_k[3] {
                // gamma_3: disjoint from alpha, beta, delta, sigma; intersects gamma_2
                if g3 == g2
                    || g3 == delta
                    || !snap.adjacent(g3, alpha)
                    || !snap.adjacent(g3, beta)
                    || snap.adjacent(g3, g2)
                    || !snap.adjacent(g3, delta)
                    || !disjoint_from_sigma(g3)
                {
                    continue;
                }
                for &g1 in &pool_k[2] {
                    // gamma_1: disjoint from gamma_2, beta, delta, sigma;
                    // intersects alpha and gamma_3
                    if g1 == g2
                        || g1 == g3
                        || g1 == delta
                        || !snap.adjacent(g1, g2)
                        || !snap.adjacent(g1, beta)
                        || snap.adjacent(g1, alpha)
                        || snap.adjacent(g1, g3)
                        || !snap.adjacent(g1, delta)
                        || !disjoint_from_sigma(g1)
                    {
                        continue;
                    }
                    let mut gammas = vec![g1, g2, g3];
                    gammas.extend_from_slice(sigma);
                    let witness =
                        SimplePairWitness { pentagon: [g1, g2, alpha, g3, beta], gammas, delta };
                    debug_assert!(validate_witness(snap, alpha, beta, &witness));
                    return Ok(Some(witness));
                }
            }
        }
    }
    Ok(None)
}

/// Re-validates a witness verbatim: the pentagon, the vertex types, and the
/// four simplices of dimension `n - 2`.
pub fn validate_witness(
    snap: &ComplexSnapshot,
    alpha: usize,
    beta: usize,
    witness: &SimplePairWitness,
) -> bool {
    let n = snap.sig.punctures as usize;
    if witness.gammas.len() != n - 1 {
        return false;
    }
    let g = &witness.gammas;
    if witness.pentagon != [g[0], g[1], alpha, g[2], beta] {
        return false;
    }
    if snap.is_pentagon(witness.pentagon) != Ok(true) {
        return false;
    }
    if !is_k_separating(snap, g[0], 2) || !is_k_separating(snap, g[1], 3) {
        return false;
    }
    // gamma_k = g[k - 1] is k-separating for 3 <= k <= n - 1
    for k in 3..=n - 1 {
        if !is_k_separating(snap, g[k - 1], k as u32) {
            return false;
        }
    }
    if !snap.is_one_sided(witness.delta) {
        return false;
    }
    let sigma: Vec<usize> = g[3..].to_vec();
    let simplices = [
        [vec![alpha, g[2]], sigma.clone(), vec![witness.delta]].concat(),
        [vec![alpha, g[1]], sigma.clone(), vec![witness.delta]].concat(),
        [vec![beta, g[2]], sigma.clone(), vec![witness.delta]].concat(),
        [vec![g[0], g[1]], sigma, vec![witness.delta]].concat(),
    ];
    for simplex in simplices {
        if simplex.len() != n - 1 {
            return false;
        }
        let mut sorted = simplex.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != simplex.len() {
            return false;
        }
        for a in 0..simplex.len() {
            for b in a + 1..simplex.len() {
                if !snap.adjacent(simplex[a], simplex[b]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Validates the sphere form of the simple-pair characterization: pentagon
/// `(gamma_1, gamma_2, alpha, gamma_3, beta)`, endpoint types (`gamma_1`
/// and `gamma_{n-2}` 2-separating, `gamma_2` 3-separating, `gamma_k` and
/// `gamma_{n-k}` k-separating) and four simplices of dimension `n - 4`
/// built from `sigma = gamma_4 .. gamma_{n-2}`.
pub fn sphere_pentagon_check(
    snap: &ComplexSnapshot,
    alpha: usize,
    beta: usize,
    gammas: &[usize],
) -> Result<bool, ComplexError> {
    if !snap.sig.orientable || snap.sig.genus != 0 || snap.sig.punctures < 5 {
        return Err(ComplexError::WrongSurface(
            "the sphere characterization needs a sphere with at least 5 punctures",
        ));
    }
    snap.check_vertex(alpha)?;
    snap.check_vertex(beta)?;
    for &i in gammas {
        snap.check_vertex(i)?;
    }
    for v in [alpha, beta] {
        if !is_k_separating(snap, v, 2) {
            return Err(ComplexError::WrongVertexType("alpha and beta must be 2-separating"));
        }
    }
    let n = snap.sig.punctures as usize;
    // gammas lists gamma_1 .. gamma_{n-2}
    if gammas.len() != n - 2 {
        return Ok(false);
    }
    let mut all: Vec<usize> = gammas.to_vec();
    all.extend([alpha, beta]);
    all.sort_unstable();
    all.dedup();
    if all.len() != gammas.len() + 2 {
        return Ok(false);
    }
    if !snap.is_pentagon([gammas[0], gammas[1], alpha, gammas[2], beta])? {
        return Ok(false);
    }
    // gamma_1 and gamma_{n-2} 2-separating, gamma_2 3-separating,
    // gamma_k and gamma_{n-k} k-separating for 3 <= k <= n/2
    if !is_k_separating(snap, gammas[0], 2) || !is_k_separating(snap, gammas[n - 3], 2) {
        return Ok(false);
    }
    if !is_k_separating(snap, gammas[1], 3) {
        return Ok(false);
    }
    let mut k = 3;
    while 2 * k <= n {
        if !is_k_separating(snap, gammas[k - 1], k as u32) {
            return Ok(false);
        }
        if !is_k_separating(snap, gammas[n - k - 1], k as u32) {
            return Ok(false);
        }
        k += 1;
    }
    // sigma = gamma_4 .. gamma_{n-2}; the four simplices have dimension n-4
    let sigma: Vec<usize> = gammas[3..].to_vec();
    let simplices = [
        [vec![alpha, gammas[2]], sigma.clone()].concat(),
        [vec![alpha, gammas[1]], sigma.clone()].concat(),
        [vec![beta, gammas[2]], sigma.clone()].concat(),
        [vec![gammas[0], gammas[1]], sigma].concat(),
    ];
    for simplex in simplices {
        if simplex.len() != n - 3 {
            return Ok(false);
        }
        for a in 0..simplex.len() {
            for b in a + 1..simplex.len() {
                if !snap.adjacent(simplex[a], simplex[b]) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// A chain of arcs: consecutive edges share exactly one endpoint and the
/// puncture itinerary is injective. Loops never chain.
pub fn is_chain(tri: &Triangulation, edges: &[EdgeIdx]) -> bool {
    if edges.is_empty() {
        return false;
    }
    for &e in edges {
        if e >= tri.edge_count() {
            return false;
        }
        let (p, q) = tri.edge_endpoints(e);
        if p == q {
            return false;
        }
    }
    if edges.len() == 1 {
        return true;
    }
    let (a1, b1) = tri.edge_endpoints(edges[0]);
    let (a2, b2) = tri.edge_endpoints(edges[1]);
    let shared: Vec<u32> = [a1, b1].iter().copied().filter(|x| *x == a2 || *x == b2).collect();
    if shared.len() != 1 {
        return false;
    }
    let mut itinerary = Vec::with_capacity(edges.len() + 1);
    let s = shared[0];
    itinerary.push(if a1 == s { b1 } else { a1 });
    itinerary.push(s);
    for window in edges.windows(2) {
        let prev = *itinerary.last().unwrap();
        let (a, b) = tri.edge_endpoints(window[1]);
        let next = if a == prev {
            b
        } else if b == prev {
            a
        } else {
            return false;
        };
        itinerary.push(next);
    }
    // distinct punctures throughout forces "exactly one shared endpoint"
    let mut sorted = itinerary.clone();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len() == itinerary.len()
}

/// Triangles whose corners are three distinct punctures and whose sides are
/// three distinct edges; such a triangle bounds itself, a disc.
pub fn good_triangles(tri: &Triangulation) -> Vec<usize> {
    (0..tri.triangle_count())
        .filter(|&u| {
            let p: Vec<u32> = (0..3).map(|c| tri.corner_puncture(3 * u + c)).collect();
            let mut e: Vec<EdgeIdx> = (0..3).map(|c| tri.edge_of_slot(3 * u + c)).collect();
            e.sort_unstable();
            e.dedup();
            p[0] != p[1] && p[1] != p[2] && p[0] != p[2] && e.len() == 3
        })
        .collect()
}

/// Disjointness decided through the cut machinery instead of the component
/// multiset: `u` is disjoint from `v` exactly when all of `u`'s weight can
/// be carried on one side of the cut along `v`. Used as a cross-check.
pub fn cut_based_disjoint(
    tri: &Triangulation,
    v: &[u32],
    u: &[u32],
) -> Result<bool, ComplexError> {
    let cut = cut_along(tri, v)?;
    match piece_of_disjoint_curve(tri, v, &cut, u) {
        Ok(_) => Ok(true),
        Err(CurveError::Degenerate(_)) => Ok(false),
        Err(other) => Err(other.into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snapshot(text: &str, bound: u32) -> ComplexSnapshot {
        ComplexSnapshot::build(text.parse().unwrap(), bound).unwrap()
    }

    #[test]
    fn n12_snapshot_two_vertices_no_edges() {
        let snap = snapshot("N1,2", 6);
        assert_eq!(snap.len(), 2);
        assert!(!snap.adjacent(0, 1));
    }

    #[test]
    fn s03_snapshot_empty() {
        let snap = snapshot("S0,3", 8);
        assert!(snap.is_empty());
    }

    #[test]
    fn s04_discrete() {
        let snap = snapshot("S0,4", 6);
        assert!(snap.len() >= 2);
        for i in 0..snap.len() {
            for j in i + 1..snap.len() {
                assert!(!snap.adjacent(i, j), "four-punctured sphere is discrete");
            }
        }
    }

    #[test]
    fn dual_link_edges_complement_adjacency() {
        let snap = snapshot("N1,3", 4);
        for v in 0..snap.len() {
            let dual = snap.dual_link(v).unwrap();
            for (pos, &i) in dual.vertices.iter().enumerate() {
                for &j in dual.vertices.iter().skip(pos + 1) {
                    let in_dual = dual.edges.contains(&(i.min(j), i.max(j)))
                        || dual.edges.contains(&(i.max(j), i.min(j)));
                    assert_eq!(in_dual, !snap.adjacent(i, j));
                }
            }
        }
    }

    #[test]
    fn genus1_cliques_at_most_n_minus_2() {
        let snap = snapshot("N1,3", 4);
        let audits = snap.maximal_simplices();
        assert!(!audits.is_empty());
        let max = audits.iter().map(|a| a.dimension).max().unwrap();
        assert_eq!(max, 1, "N1,3 has maximal simplices of dimension n-2 = 1");
    }

    #[test]
    fn side_partition_respects_dual_link() {
        let snap = snapshot("N1,4", 3);
        let mut checked = 0;
        for v in 0..snap.len() {
            if snap.k_separating(v).map_or(true, |k| k < 3) {
                continue;
            }
            let part = snap.side_partition(v).unwrap();
            let dual = snap.dual_link(v).unwrap();
            let side_of: std::collections::BTreeMap<usize, usize> =
                part.assignment.iter().copied().collect();
            for &(i, j) in &dual.edges {
                assert_eq!(side_of[&i], side_of[&j], "dual-link edge crosses the cut");
            }
            checked += 1;
        }
        assert!(checked > 0, "N1,4 at bound 3 has a 3-separating vertex");
    }

    #[test]
    fn chains_on_the_sphere_reference() {
        let tri = Triangulation::reference("S0,5".parse().unwrap()).unwrap();
        // boundary edges of the doubled polygon visit the punctures in a cycle
        let mut path = Vec::new();
        let mut puncture_path: Vec<u32> = Vec::new();
        for e in 0..tri.edge_count() {
            let (p, q) = tri.edge_endpoints(e);
            if p != q {
                if path.is_empty() {
                    puncture_path.push(p);
                    puncture_path.push(q);
                    path.push(e);
                } else if puncture_path.last() == Some(&p) && !puncture_path.contains(&q) {
                    puncture_path.push(q);
                    path.push(e);
                }
            }
        }
        assert!(path.len() >= 2);
        assert!(is_chain(&tri, &path));
        assert!(is_chain(&tri, &path[..1]));
        assert!(!is_chain(&tri, &[path[0], path[0]]));
    }

    #[test]
    fn good_triangles_on_s03() {
        let tri = Triangulation::reference("S0,3".parse().unwrap()).unwrap();
        assert_eq!(good_triangles(&tri), vec![0, 1]);
    }

    #[test]
    fn good_triangles_excludes_repeated_corners() {
        let tri = Triangulation::reference("N1,3".parse().unwrap()).unwrap();
        for u in good_triangles(&tri) {
            let p: Vec<u32> = (0..3).map(|c| tri.corner_puncture(3 * u + c)).collect();
            assert!(p[0] != p[1] && p[1] != p[2] && p[0] != p[2]);
        }
    }

    #[test]
    fn snapshot_file_round_trip() {
        let snap = snapshot("N1,3", 3);
        let file = snap.to_file();
        let json = serde_json::to_string(&file).unwrap();
        let back: SnapshotFile = serde_json::from_str(&json).unwrap();
        let snap2 = ComplexSnapshot::from_file(back).unwrap();
        assert_eq!(snap.len(), snap2.len());
        for i in 0..snap.len() {
            for j in 0..snap.len() {
                if i != j {
                    assert_eq!(snap.adjacent(i, j), snap2.adjacent(i, j));
                }
            }
        }
    }

    #[test]
    fn cut_based_disjoint_agrees_with_trace() {
        let snap = snapshot("N1,3", 3);
        for i in 0..snap.len().min(12) {
            for j in 0..snap.len().min(12) {
                if i == j {
                    continue;
                }
                let expected = snap.adjacent(i, j);
                let got = cut_based_disjoint(
                    &snap.triangulation,
                    &snap.vertices[i].weights,
                    &snap.vertices[j].weights,
                )
                .unwrap();
                assert_eq!(got, expected, "pair ({i}, {j})");
            }
        }
    }

    #[test]
    fn pentagon_rejects_duplicates_and_flat_tuples() {
        let snap = snapshot("N1,3", 4);
        if snap.len() >= 5 {
            assert!(matches!(
                snap.is_pentagon([0, 0, 1, 2, 3]),
                Err(ComplexError::DuplicateVertices)
            ));
        }
    }
}
