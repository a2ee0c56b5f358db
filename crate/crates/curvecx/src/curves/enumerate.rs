//! Bounded enumeration of curve classes.
//!
//! Every admissible vector with entries at most the bound is visited by a
//! depth-first sweep; triangles are checked as soon as their last edge gets
//! a value, which prunes most of the box. Vectors tracing to one nontrivial
//! component become curve classes.

use super::cut::connected_nontrivial_class;
use super::{corner_counts, CurveClass, CurveError};
use crate::triangulation::Triangulation;

struct Sweep<'a> {
    tri: &'a Triangulation,
    bound: u32,
    order: Vec<usize>,
    /// Triangles fully assigned once the value at this position is set.
    check_at: Vec<Vec<usize>>,
    w: Vec<u32>,
    out: Vec<CurveClass>,
}

impl<'a> Sweep<'a> {
    fn run(&mut self, pos: usize) -> Result<(), CurveError> {
        if pos == self.order.len() {
            if self.w.iter().any(|&x| x > 0) {
                if let Some(class) = connected_nontrivial_class(self.tri, &self.w)? {
                    self.out.push(class);
                }
            }
            return Ok(());
        }
        let k = self.order[pos];
        for v in 0..=self.bound {
            self.w[k] = v;
            let ok = self.check_at[pos].iter().all(|&u| {
                matches!(corner_counts(self.tri, &self.w, u), Some(c) if c.iter().all(|&x| x >= 0))
            });
            if ok {
                self.run(pos + 1)?;
            }
        }
        self.w[k] = 0;
        Ok(())
    }
}

/// Every connected nontrivial curve class whose normal coordinates have
/// maximum edge weight at most `bound`, sorted lexicographically by vector.
pub fn enumerate_vertices(tri: &Triangulation, bound: u32) -> Result<Vec<CurveClass>, CurveError> {
    let e = tri.edge_count();
    let mut order = Vec::with_capacity(e);
    let mut seen = vec![false; e];
    for u in 0..tri.triangle_count() {
        for c in 0..3 {
            let k = tri.edge_of_slot(3 * u + c);
            if !seen[k] {
                seen[k] = true;
                order.push(k);
            }
        }
    }
    let mut pos_of = vec![0usize; e];
    for (i, &k) in order.iter().enumerate() {
        pos_of[k] = i;
    }
    let mut check_at: Vec<Vec<usize>> = vec![Vec::new(); e];
    for u in 0..tri.triangle_count() {
        let last = (0..3).map(|c| pos_of[tri.edge_of_slot(3 * u + c)]).max().unwrap();
        check_at[last].push(u);
    }
    let mut sweep = Sweep { tri, bound, order, check_at, w: vec![0; e], out: Vec::new() };
    sweep.run(0)?;
    let mut out = sweep.out;
    out.sort_by(|a, b| a.weights.cmp(&b.weights));
    out.dedup_by(|a, b| a.weights == b.weights);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::CurveKind;
    use crate::surface::SurfaceSig;

    fn reference(text: &str) -> Triangulation {
        Triangulation::reference(text.parse::<SurfaceSig>().unwrap()).unwrap()
    }

    #[test]
    fn thrice_punctured_sphere_has_no_classes() {
        let tri = reference("S0,3");
        assert!(enumerate_vertices(&tri, 10).unwrap().is_empty());
    }

    #[test]
    fn twice_punctured_projective_plane_has_two() {
        let tri = reference("N1,2");
        let classes = enumerate_vertices(&tri, 6).unwrap();
        assert_eq!(classes.len(), 2, "vectors: {:?}", classes.iter().map(|c| &c.weights).collect::<Vec<_>>());
        for class in &classes {
            assert!(matches!(class.kind, CurveKind::OneSided), "{:?}", class.weights);
        }
    }

    #[test]
    fn four_punctured_sphere_grows() {
        let tri = reference("S0,4");
        let small = enumerate_vertices(&tri, 4).unwrap();
        let large = enumerate_vertices(&tri, 8).unwrap();
        assert!(small.len() >= 2);
        assert!(small.len() < large.len());
    }

    #[test]
    fn output_is_sorted_and_deduplicated() {
        let tri = reference("N1,3");
        let classes = enumerate_vertices(&tri, 3).unwrap();
        for pair in classes.windows(2) {
            assert!(pair[0].weights < pair[1].weights);
        }
        assert!(!classes.is_empty());
    }
}
