//! Independent oracles for the enumerator and for transport chains.

use curvecx::curves::{
    classify, enumerate_vertices, is_admissible, trace, transport_flip, CurveClass,
};
use curvecx::triangulation::Triangulation;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn reference(text: &str) -> Triangulation {
    Triangulation::reference(text.parse().unwrap()).unwrap()
}

/// Plain odometer sweep of the whole weight box, no pruning: the oracle
/// for the depth-first enumerator.
fn enumerate_by_odometer(tri: &Triangulation, bound: u32) -> Vec<CurveClass> {
    let e = tri.edge_count();
    let mut w = vec![0u32; e];
    let mut out = Vec::new();
    loop {
        if w.iter().any(|&x| x > 0)
            && is_admissible(tri, &w).unwrap()
            && trace(tri, &w).unwrap().len() == 1
        {
            if let Some(class) = classify(tri, &w).unwrap().class {
                out.push(class);
            }
        }
        let mut i = 0;
        loop {
            if i == e {
                out.sort_by(|a, b| a.weights.cmp(&b.weights));
                return out;
            }
            if w[i] < bound {
                w[i] += 1;
                break;
            }
            w[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn enumerator_matches_the_odometer() {
    for (text, bound) in [("N1,2", 5u32), ("N1,3", 3), ("S0,4", 4), ("N1,4", 2), ("S1,1", 4)] {
        let tri = reference(text);
        let fast = enumerate_vertices(&tri, bound).unwrap();
        let slow = enumerate_by_odometer(&tri, bound);
        assert_eq!(fast.len(), slow.len(), "{text} at bound {bound}");
        for (a, b) in fast.iter().zip(&slow) {
            assert_eq!(a.weights, b.weights, "{text} at bound {bound}");
            assert_eq!(a.k_separating, b.k_separating);
        }
    }
}

#[test]
fn transport_chains_preserve_class_and_invert() {
    // flips restore a triangulation only up to relabeling, so original
    // edges are tracked through the composed edge maps
    let tri = reference("N1,3");
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let classes = enumerate_vertices(&tri, 3).unwrap();
    let follow = |idx: &mut Vec<usize>, e: usize, flip: &curvecx::triangulation::FlipResult| {
        for slot in idx.iter_mut() {
            *slot = if *slot == e { flip.new_edge } else { flip.edge_map[*slot].unwrap() };
        }
    };
    for start in classes.iter().step_by(7) {
        let mut cur_tri = tri.clone();
        let mut cur_w = start.weights.clone();
        let mut idx: Vec<usize> = (0..tri.edge_count()).collect();
        let mut diagonals: Vec<usize> = Vec::new();
        let before = classify(&cur_tri, &cur_w).unwrap();
        for _ in 0..6 {
            let candidates: Vec<usize> = (0..cur_tri.edge_count())
                .filter(|&e| !cur_tri.is_self_folded(e))
                .collect();
            let e = *candidates.choose(&mut rng).unwrap();
            let t = match transport_flip(&cur_tri, &cur_w, e) {
                Ok(t) => t,
                Err(_) => continue,
            };
            follow(&mut idx, e, &t.flip);
            follow(&mut diagonals, e, &t.flip);
            diagonals.push(t.flip.new_edge);
            cur_tri = t.flip.tri;
            cur_w = t.weights;
            let here = classify(&cur_tri, &cur_w).unwrap();
            assert_eq!(
                std::mem::discriminant(&before.class.as_ref().unwrap().kind),
                std::mem::discriminant(&here.class.as_ref().unwrap().kind),
                "class kind along the walk"
            );
        }
        // undo in reverse order via the tracked diagonal positions
        while let Some(e) = diagonals.pop() {
            let t = transport_flip(&cur_tri, &cur_w, e).unwrap();
            follow(&mut idx, e, &t.flip);
            follow(&mut diagonals, e, &t.flip);
            cur_tri = t.flip.tri;
            cur_w = t.weights;
        }
        assert_eq!(
            cur_tri.canonical_form().unwrap(),
            tri.canonical_form().unwrap(),
            "the reversed walk restores the class of the triangulation"
        );
        for (k, &image) in idx.iter().enumerate() {
            assert_eq!(cur_w[image], start.weights[k], "weight of original edge {k}");
        }
    }
}
