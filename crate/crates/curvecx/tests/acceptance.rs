//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Run with `cargo test --test acceptance -- --nocapture` to see the
//! lines; every tolerance is pinned in code.

use curvecx::complex::{find_simple_pair_witness, validate_witness, ComplexSnapshot};
use curvecx::curves::{
    arc_neighborhood_curves, classify, enumerate_vertices, is_admissible, trace, transport_flip,
    CurveKind,
};
use curvecx::surface::SurfaceSig;
use curvecx::triangulation::{flip_path, replay_flip_path, Triangulation};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn sig(text: &str) -> SurfaceSig {
    text.parse().unwrap()
}

fn verdict(name: &str, pass: bool, detail: &str) {
    println!("{}: {name} — {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "{name}: {detail}");
}

/// Criterion 1: the thrice-punctured sphere has no curve classes at all.
#[test]
fn c01_sphere_three_punctures_vacuous() {
    let tri = Triangulation::reference(sig("S0,3")).unwrap();
    let classes = enumerate_vertices(&tri, 10).unwrap();
    verdict(
        "criterion 1 (S0,3 vacuity)",
        classes.is_empty(),
        &format!("{} classes at bound 10", classes.len()),
    );
}

/// Criterion 2: the twice-punctured projective plane has exactly two
/// vertices and no edge.
#[test]
fn c02_twice_punctured_projective_plane() {
    let snap = ComplexSnapshot::build(sig("N1,2"), 6).unwrap();
    let edges = if snap.len() == 2 { snap.adjacent(0, 1) as usize } else { usize::MAX };
    verdict(
        "criterion 2 (N1,2 two vertices, no edges)",
        snap.len() == 2 && edges == 0,
        &format!("{} vertices, {} edges", snap.len(), edges),
    );
}

/// Criterion 3: the four-punctured sphere is infinite discrete: vertex
/// counts strictly grow with the bound and no edges ever appear.
#[test]
fn c03_four_punctured_sphere_discrete() {
    let small = ComplexSnapshot::build(sig("S0,4"), 4).unwrap();
    let large = ComplexSnapshot::build(sig("S0,4"), 8).unwrap();
    let edge_free = |snap: &ComplexSnapshot| {
        (0..snap.len()).all(|i| (i + 1..snap.len()).all(|j| !snap.adjacent(i, j)))
    };
    let pass = small.len() < large.len() && edge_free(&small) && edge_free(&large);
    verdict(
        "criterion 3 (S0,4 infinite discrete)",
        pass,
        &format!(
            "counts {} < {}, discrete: {} and {}",
            small.len(),
            large.len(),
            edge_free(&small),
            edge_free(&large)
        ),
    );
}

/// Criterion 4: genus-1 maximal simplices all have dimension n - 2.
#[test]
fn c04_constant_dimension_genus_one() {
    for (surface, bound) in [("N1,3", 5u32), ("N1,4", 4)] {
        let s = sig(surface);
        let snap = ComplexSnapshot::build(s, bound).unwrap();
        let audits = snap.maximal_simplices();
        let expected = s.punctures as i64 - 2;
        let max = audits.iter().map(|a| a.dimension).max().unwrap_or(-1);
        let witnessed = audits.iter().any(|a| a.dimension == expected);
        verdict(
            &format!("criterion 4 ({surface} constant dimension)"),
            max <= expected && witnessed,
            &format!("max {max} vs n-2 = {expected}, witnessed: {witnessed}"),
        );
    }
}

/// Criterion 5: N3,1 certified maximal cliques live in dimensions {2, 3},
/// both witnessed, with odd one-sided counts satisfying the pants count
/// relation 3k = n + m + 2(l + 1 - m).
#[test]
fn c05_dimension_range_genus_three() {
    let s = sig("N3,1");
    let snap = ComplexSnapshot::build(s, 3).unwrap();
    let audits = snap.maximal_simplices();
    let certified: Vec<_> = audits.iter().filter(|a| a.certified).collect();
    let dims: std::collections::BTreeSet<i64> = certified.iter().map(|a| a.dimension).collect();
    let in_range = dims.iter().all(|d| *d == 2 || *d == 3);
    let both = dims.contains(&2) && dims.contains(&3);
    let relation = certified.iter().all(|a| {
        let m = a.onesided as i64;
        let l = a.dimension;
        m % 2 == 1 && 3 * 2 == 1 + m + 2 * (l + 1 - m)
    });
    verdict(
        "criterion 5 (N3,1 dimension range and pants relation)",
        in_range && both && relation,
        &format!("certified dims {dims:?}, relation holds: {relation}"),
    );
}

/// Criterion 6: the once-punctured torus snapshot has maximum clique
/// dimension 0.
#[test]
fn c06_torus_dimension() {
    let snap = ComplexSnapshot::build(sig("S1,1"), 6).unwrap();
    let audits = snap.maximal_simplices();
    let max = audits.iter().map(|a| a.dimension).max().unwrap_or(-1);
    verdict(
        "criterion 6 (S1,1 dimension 0)",
        max == 0 && snap.len() > 0,
        &format!("max clique dimension {max} over {} vertices", snap.len()),
    );
}

/// Criterion 7: on N1,5 every k-separating vertex (k >= 3) admits a side
/// partition, both sides are populated, and no dual-link edge crosses the
/// cut.
#[test]
fn c07_dual_link_separation() {
    let snap = ComplexSnapshot::build(sig("N1,5"), 3).unwrap();
    let mut examined = 0;
    let mut pass = true;
    let mut detail = String::new();
    for v in 0..snap.len() {
        let Some(k) = snap.k_separating(v) else { continue };
        if k < 3 {
            continue;
        }
        examined += 1;
        let part = match snap.side_partition(v) {
            Ok(p) => p,
            Err(e) => {
                pass = false;
                detail = format!("vertex {v}: {e}");
                break;
            }
        };
        let side_of: std::collections::BTreeMap<usize, usize> =
            part.assignment.iter().copied().collect();
        if part.side(0).is_empty() || part.side(1).is_empty() {
            pass = false;
            detail = format!("vertex {v} (k={k}): starved side");
            break;
        }
        let dual = snap.dual_link(v).unwrap();
        if dual.edges.iter().any(|&(i, j)| side_of[&i] != side_of[&j]) {
            pass = false;
            detail = format!("vertex {v}: dual-link edge crosses the cut");
            break;
        }
    }
    verdict(
        "criterion 7 (N1,5 dual-link separation)",
        pass && examined > 0,
        &if pass { format!("{examined} vertices examined") } else { detail },
    );
}

/// Criterion 8: dual links of one-sided and 2-separating vertices of the
/// N1,4 snapshot are connected. Bounded evidence is monotone: vertices
/// whose links are starved at the snapshot bound are re-sampled in a
/// larger ambient snapshot.
#[test]
fn c08_dual_link_connectivity_evidence() {
    let snap = ComplexSnapshot::build(sig("N1,4"), 4).unwrap();
    let ambient = ComplexSnapshot::build(sig("N1,4"), 6).unwrap();
    let mut scope = 0;
    let mut at_bound = 0;
    let mut connected = 0;
    for v in 0..snap.len() {
        if !(snap.is_one_sided(v) || snap.k_separating(v) == Some(2)) {
            continue;
        }
        scope += 1;
        if snap.dual_link(v).unwrap().is_connected() {
            at_bound += 1;
            connected += 1;
            continue;
        }
        let va = ambient
            .vertices
            .binary_search_by(|c| c.weights.as_slice().cmp(&snap.vertex(v).weights))
            .expect("superset");
        if ambient.dual_link(va).unwrap().is_connected() {
            connected += 1;
        }
    }
    verdict(
        "criterion 8 (N1,4 dual-link connectivity evidence)",
        scope > 0 && connected == scope,
        &format!("{at_bound}/{scope} connected at bound 4, {connected}/{scope} within bound 6"),
    );
}

/// Criterion 9: a constructed simple pair on N1,5 yields a witness that
/// re-validates all three conditions, including the four simplices of
/// dimension n - 2 = 3.
#[test]
fn c09_pentagon_witness() {
    let s = sig("N1,5");
    let tri = Triangulation::reference(s).unwrap();
    // two reference arcs with exactly one common endpoint
    let mut pair = None;
    let non_loop: Vec<usize> = (0..tri.edge_count())
        .filter(|&e| {
            let (p, q) = tri.edge_endpoints(e);
            p != q
        })
        .collect();
    'outer: for (i, &e1) in non_loop.iter().enumerate() {
        for &e2 in non_loop.iter().skip(i + 1) {
            let (a, b) = tri.edge_endpoints(e1);
            let (c, d) = tri.edge_endpoints(e2);
            if [a, b].iter().filter(|x| **x == c || **x == d).count() == 1 {
                pair = Some((e1, e2));
                break 'outer;
            }
        }
    }
    let (e1, e2) = pair.expect("arcs sharing one endpoint");
    let alpha_w = arc_neighborhood_curves(&tri, e1).unwrap().remove(0);
    let beta_w = arc_neighborhood_curves(&tri, e2).unwrap().remove(0);

    let mut outcome = None;
    for bound in 3..=5u32 {
        let snap = ComplexSnapshot::build(s, bound).unwrap();
        let locate = |w: &[u32]| {
            snap.vertices.binary_search_by(|c| c.weights.as_slice().cmp(w)).ok()
        };
        let (Some(alpha), Some(beta)) = (locate(&alpha_w), locate(&beta_w)) else { continue };
        if let Some(witness) = find_simple_pair_witness(&snap, alpha, beta).unwrap() {
            outcome = Some((bound, snap, alpha, beta, witness));
            break;
        }
    }
    match outcome {
        None => verdict("criterion 9 (N1,5 pentagon witness)", false, "no witness up to bound 5"),
        Some((bound, snap, alpha, beta, witness)) => {
            let pentagon_ok = snap.is_pentagon(witness.pentagon).unwrap();
            let full_ok = validate_witness(&snap, alpha, beta, &witness);
            // the four prescribed simplices have dimension n - 2 = 3
            let sigma: Vec<usize> = witness.gammas[3..].to_vec();
            let dim_ok = {
                let g = &witness.gammas;
                [
                    [vec![alpha, g[2]], sigma.clone(), vec![witness.delta]].concat(),
                    [vec![alpha, g[1]], sigma.clone(), vec![witness.delta]].concat(),
                    [vec![beta, g[2]], sigma.clone(), vec![witness.delta]].concat(),
                    [vec![g[0], g[1]], sigma.clone(), vec![witness.delta]].concat(),
                ]
                .iter()
                .all(|s| s.len() as i64 - 1 == 3)
            };
            verdict(
                "criterion 9 (N1,5 pentagon witness)",
                pentagon_ok && full_ok && dim_ok,
                &format!(
                    "witness at bound {bound}: pentagon {pentagon_ok}, conditions {full_ok}, dimensions {dim_ok}"
                ),
            );
        }
    }
}

/// Criterion 10: 100 seeded random flip walks of length <= 8 on N1,3 all
/// return within depth 8; intermediate triangulations stay valid with the
/// same surface and share all but one edge.
#[test]
fn c10_flip_round_trips() {
    let s = sig("N1,3");
    let tri = Triangulation::reference(s).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = Vec::new();
    for walk in 0..100 {
        let steps = rng.gen_range(1..=8u32);
        let mut cur = tri.clone();
        for _ in 0..steps {
            let flippable: Vec<usize> =
                (0..cur.edge_count()).filter(|&e| !cur.is_self_folded(e)).collect();
            let e = *flippable.choose(&mut rng).unwrap();
            let flip = cur.flip(e).unwrap();
            if flip.tri.sig() != s || !flip.tri.report().connected {
                failures.push(format!("walk {walk}: surface changed"));
            }
            if flip.edge_map.iter().flatten().count() != cur.edge_count() - 1 {
                failures.push(format!("walk {walk}: shared-edge count"));
            }
            cur = flip.tri;
        }
        match flip_path(&tri, &cur, 8).unwrap() {
            None => failures.push(format!("walk {walk}: no return path")),
            Some(path) => {
                if path.len() > 8 {
                    failures.push(format!("walk {walk}: path too long"));
                }
                let replayed = replay_flip_path(&tri, &path).unwrap();
                if replayed.canonical_form().unwrap() != cur.canonical_form().unwrap() {
                    failures.push(format!("walk {walk}: replay mismatch"));
                }
            }
        }
    }
    verdict(
        "criterion 10 (N1,3 flip round trips)",
        failures.is_empty(),
        &if failures.is_empty() {
            "100/100 walks returned".to_string()
        } else {
            failures.join("; ")
        },
    );
}

/// Criterion 11: 1000 seeded (curve, flip) samples on N1,3 keep their
/// classification under transport and round-trip to the original vector.
#[test]
fn c11_transport_consistency() {
    let s = sig("N1,3");
    let tri = Triangulation::reference(s).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let flippable: Vec<usize> =
        (0..tri.edge_count()).filter(|&e| !tri.is_self_folded(e)).collect();
    let mut done = 0;
    let mut kind_ok = 0;
    let mut round_ok = 0;
    let mut attempts = 0u64;
    while done < 1000 && attempts < 2_000_000 {
        attempts += 1;
        let w: Vec<u32> = (0..tri.edge_count()).map(|_| rng.gen_range(0..=4u32)).collect();
        if !is_admissible(&tri, &w).unwrap() || w.iter().all(|&x| x == 0) {
            continue;
        }
        if trace(&tri, &w).unwrap().len() != 1 {
            continue;
        }
        let e = *flippable.choose(&mut rng).unwrap();
        let t = match transport_flip(&tri, &w, e) {
            Ok(t) => t,
            Err(_) => continue,
        };
        done += 1;
        let before = classify(&tri, &w).unwrap();
        let after = classify(&t.flip.tri, &t.weights).unwrap();
        let same = match (&before.class, &after.class) {
            (Some(a), Some(b)) => {
                std::mem::discriminant(&a.kind) == std::mem::discriminant(&b.kind)
                    && a.k_separating == b.k_separating
            }
            (None, None) => before.verdict == after.verdict,
            _ => false,
        };
        if same {
            kind_ok += 1;
        }
        let back = transport_flip(&t.flip.tri, &t.weights, t.flip.new_edge).unwrap();
        let mut good = true;
        for k in 0..tri.edge_count() {
            let mid = if k == e { t.flip.new_edge } else { t.flip.edge_map[k].unwrap() };
            let fin = if mid == t.flip.new_edge {
                back.flip.new_edge
            } else {
                back.flip.edge_map[mid].unwrap()
            };
            if back.weights[fin] != w[k] {
                good = false;
            }
        }
        if good {
            round_ok += 1;
        }
    }
    verdict(
        "criterion 11 (N1,3 transport consistency)",
        done == 1000 && kind_ok == 1000 && round_ok == 1000,
        &format!("{done} samples, kinds {kind_ok}/1000, round trips {round_ok}/1000"),
    );
}

/// Criterion 12: cutting every enumerated curve of N1,4 preserves the
/// Euler characteristic and creates as many boundary circles as the
/// sidedness dictates.
#[test]
fn c12_cut_bookkeeping() {
    let s = sig("N1,4");
    let tri = Triangulation::reference(s).unwrap();
    let classes = enumerate_vertices(&tri, 4).unwrap();
    let mut pass = true;
    let mut detail = format!("{} curves checked", classes.len());
    for class in &classes {
        let cut = curvecx::curves::cut_along(&tri, &class.weights).unwrap();
        let total: i64 = cut.pieces.iter().map(|p| p.euler_char()).sum();
        if total != -3 {
            pass = false;
            detail = format!("chi sum {total} for {:?}", class.weights);
            break;
        }
        let expected_boundaries = match class.kind {
            CurveKind::OneSided => 1,
            _ => 2,
        };
        if cut.new_boundaries != expected_boundaries {
            pass = false;
            detail = format!(
                "{} boundaries for {} curve {:?}",
                cut.new_boundaries,
                class.kind.label(),
                class.weights
            );
            break;
        }
    }
    verdict("criterion 12 (N1,4 cut bookkeeping)", pass && !classes.is_empty(), &detail);
}

/// Criterion 13: doubling any one-sided class of N1,3 yields a connected
/// multicurve (the boundary of the Möbius neighborhood).
#[test]
fn c13_one_sided_doubling() {
    let tri = Triangulation::reference(sig("N1,3")).unwrap();
    let classes = enumerate_vertices(&tri, 4).unwrap();
    let mut one_sided = 0;
    let mut pass = true;
    for class in &classes {
        if !class.kind.is_one_sided() {
            continue;
        }
        one_sided += 1;
        let doubled: Vec<u32> = class.weights.iter().map(|x| 2 * x).collect();
        if trace(&tri, &doubled).unwrap().len() != 1 {
            pass = false;
            break;
        }
    }
    verdict(
        "criterion 13 (N1,3 one-sided doubling)",
        pass && one_sided > 0,
        &format!("{one_sided} one-sided classes doubled"),
    );
}
