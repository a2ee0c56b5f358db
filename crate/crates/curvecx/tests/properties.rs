//! Property tests over admissible vectors and relabelings. Raw random
//! vectors almost never satisfy the triangle constraints, so the
//! strategies index into precomputed admissible pools.

use std::sync::OnceLock;

use curvecx::curves::{disjoint, is_admissible, trace};
use curvecx::triangulation::{relabeled, Triangulation};
use proptest::prelude::*;

fn reference(text: &str) -> Triangulation {
    Triangulation::reference(text.parse().unwrap()).unwrap()
}

/// Every admissible vector with entries at most `cap`.
fn admissible_pool(tri: &Triangulation, cap: u32) -> Vec<Vec<u32>> {
    let e = tri.edge_count();
    let mut w = vec![0u32; e];
    let mut out = Vec::new();
    loop {
        if is_admissible(tri, &w).unwrap() {
            out.push(w.clone());
        }
        let mut i = 0;
        loop {
            if i == e {
                return out;
            }
            if w[i] < cap {
                w[i] += 1;
                break;
            }
            w[i] = 0;
            i += 1;
        }
    }
}

fn n14_pool() -> &'static Vec<Vec<u32>> {
    static POOL: OnceLock<Vec<Vec<u32>>> = OnceLock::new();
    POOL.get_or_init(|| admissible_pool(&reference("N1,4"), 2))
}

fn n13_connected_pool() -> &'static Vec<Vec<u32>>  {
    static POOL: OnceLock<Vec<Vec<u32>>> = OnceLock::new();
    POOL.get_or_init(|| {
        let tri = reference("N1,3");
        admissible_pool(&tri, 3)
            .into_iter()
            .filter(|w| w.iter().any(|&x| x > 0) && trace(&tri, w).unwrap().len() == 1)
            .collect()
    })
}

proptest! {
    #[test]
    fn admissible_vectors_are_closed_under_sum(ia in any::<prop::sample::Index>(), ib in any::<prop::sample::Index>()) {
        let tri = reference("N1,4");
        let pool = n14_pool();
        let a = &pool[ia.index(pool.len())];
        let b = &pool[ib.index(pool.len())];
        let sum: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        prop_assert!(is_admissible(&tri, &sum).unwrap());
    }

    #[test]
    fn components_partition_the_weights(
        ia in any::<prop::sample::Index>(),
        ib in any::<prop::sample::Index>(),
        scale in 1u32..3,
    ) {
        let tri = reference("N1,4");
        let pool = n14_pool();
        let a = &pool[ia.index(pool.len())];
        let b = &pool[ib.index(pool.len())];
        let w: Vec<u32> = a.iter().zip(b).map(|(x, y)| scale * x + y).collect();
        let comps = trace(&tri, &w).unwrap();
        let mut sum = vec![0u32; w.len()];
        for comp in &comps {
            prop_assert!(comp.weights.iter().any(|&x| x > 0));
            for (s, x) in sum.iter_mut().zip(&comp.weights) {
                *s += x;
            }
        }
        prop_assert_eq!(sum, w);
    }

    #[test]
    fn disjointness_is_symmetric(ia in any::<prop::sample::Index>(), ib in any::<prop::sample::Index>()) {
        let tri = reference("N1,3");
        let pool = n13_connected_pool();
        let a = &pool[ia.index(pool.len())];
        let b = &pool[ib.index(pool.len())];
        prop_assume!(a != b);
        prop_assert_eq!(
            disjoint(&tri, a, b).unwrap(),
            disjoint(&tri, b, a).unwrap()
        );
    }

    #[test]
    fn canonical_form_ignores_labels(
        perm_seed in 0u64..1000,
        syms in proptest::collection::vec((0u8..3, any::<bool>()), 4),
    ) {
        let tri = reference("N1,3");
        let mut perm: Vec<usize> = (0..4).collect();
        // cheap deterministic shuffle from the seed
        let mut s = perm_seed;
        for i in (1..4usize).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let image = relabeled(&tri, &perm, &syms).unwrap();
        prop_assert_eq!(
            image.canonical_form().unwrap(),
            tri.canonical_form().unwrap()
        );
    }
}
