//! Curves built by walking around punctures and arcs.
//!
//! The boundary of a regular neighborhood of an arc together with its
//! endpoint punctures is constructed by walking the corner wedges around
//! each endpoint and running parallel to the arc between them. The raw walk
//! can fail to be normal where the linking circles absorb the arc; strands
//! that enter and leave a triangle through the same side are removed by
//! free cyclic reduction before the crossing counts are read off.

use std::collections::BTreeSet;

use super::{CurveError, Triangulation};
use crate::triangulation::{EdgeIdx, Flag};

/// One end of a triangle side: `at_start` selects the corner the side
/// starts at.
type SideEnd = (usize, bool);

fn cross(tri: &Triangulation, (slot, at_start): SideEnd) -> SideEnd {
    let p = tri.partner(slot);
    match tri.slot_flag(slot) {
        Flag::Parallel => (p, at_start),
        Flag::Antiparallel => (p, !at_start),
    }
}

/// The other flank of the corner wedge this side end touches.
fn other_flank((slot, at_start): SideEnd) -> SideEnd {
    let u = slot / 3;
    let c = slot % 3;
    if at_start {
        (3 * u + (c + 2) % 3, false)
    } else {
        (3 * u + (c + 1) % 3, true)
    }
}

/// Removes strands entering and leaving a triangle through the same side,
/// cyclically, until none remain. `seq` holds the slots the curve exits
/// through, in order.
fn reduce_cyclic(tri: &Triangulation, mut seq: Vec<usize>) -> Vec<usize> {
    loop {
        let len = seq.len();
        if len < 2 {
            return seq;
        }
        let mut redex = None;
        for i in 0..len {
            let j = (i + 1) % len;
            if seq[j] == tri.partner(seq[i]) {
                redex = Some((i, j));
                break;
            }
        }
        match redex {
            None => return seq,
            Some((i, j)) => {
                if i < j {
                    seq.remove(j);
                    seq.remove(i);
                } else {
                    seq.remove(i);
                    seq.remove(j);
                }
            }
        }
    }
}

fn weights_of_sequence(tri: &Triangulation, seq: &[usize]) -> Vec<u32> {
    let mut w = vec![0u32; tri.edge_count()];
    for &slot in seq {
        w[tri.edge_of_slot(slot)] += 1;
    }
    w
}

/// Normal coordinates of the circle linking `puncture`: one crossing per
/// edge end incident to the puncture.
pub fn puncture_link_coords(tri: &Triangulation, puncture: u32) -> Result<Vec<u32>, CurveError> {
    if puncture as usize >= tri.puncture_count() {
        return Err(CurveError::Degenerate("puncture label out of range"));
    }
    let mut w = vec![0u32; tri.edge_count()];
    for e in 0..tri.edge_count() {
        w[e] = tri.edge_ends_at(e, puncture);
    }
    debug_assert!(super::is_admissible(tri, &w)?, "puncture link is normal");
    Ok(w)
}

/// Boundary circles of a regular neighborhood of edge-arc `edge` together
/// with its endpoint punctures: one circle when the endpoints differ or the
/// neighborhood is a once-punctured Möbius band, two otherwise. Each result
/// is the normal coordinate vector of one boundary circle.
pub fn arc_neighborhood_curves(
    tri: &Triangulation,
    edge: EdgeIdx,
) -> Result<Vec<Vec<u32>>, CurveError> {
    if edge >= tri.edge_count() {
        return Err(CurveError::Tri(crate::triangulation::TriError::EdgeOutOfRange(edge)));
    }
    let (sd, so) = tri.edge_slots(edge);
    let mut remaining: BTreeSet<SideEnd> =
        [(sd, true), (sd, false), (so, true), (so, false)].into_iter().collect();
    let mut components: Vec<Vec<usize>> = Vec::new();
    let step_cap = 16 * (3 * tri.triangle_count() + 4);

    while let Some(&start) = remaining.iter().next() {
        remaining.remove(&start);
        let mut cur = start;
        let mut seq: Vec<usize> = Vec::new();
        let mut steps = 0;
        loop {
            steps += 1;
            if steps > step_cap {
                return Err(CurveError::Degenerate("neighborhood walk did not close"));
            }
            let exit = other_flank(cur);
            if tri.edge_of_slot(exit.0) == edge {
                // run parallel to the arc to the far corner of this side
                let arrival = (exit.0, !exit.1);
                remaining.remove(&exit);
                if arrival == start {
                    components.push(seq);
                    break;
                }
                if !remaining.remove(&arrival) {
                    return Err(CurveError::Degenerate("neighborhood walk re-entered a consumed end"));
                }
                cur = arrival;
            } else {
                seq.push(exit.0);
                cur = cross(tri, exit);
            }
        }
    }
    debug_assert!(components.len() == 1 || components.len() == 2);

    let mut out = Vec::new();
    for seq in components {
        let reduced = reduce_cyclic(tri, seq);
        if reduced.is_empty() {
            return Err(CurveError::Degenerate("neighborhood boundary is contractible"));
        }
        let w = weights_of_sequence(tri, &reduced);
        if !super::is_admissible(tri, &w)? {
            return Err(CurveError::Degenerate("reduced boundary is not normal"));
        }
        debug_assert_eq!(super::trace(tri, &w)?.len(), 1);
        out.push(w);
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{classify, CurveKind, TrivialityVerdict};
    use crate::surface::SurfaceSig;

    fn reference(text: &str) -> Triangulation {
        Triangulation::reference(text.parse::<SurfaceSig>().unwrap()).unwrap()
    }

    #[test]
    fn puncture_links_bound_punctured_discs() {
        for text in ["N1,2", "N1,3", "S0,4", "N3,1", "S1,1"] {
            let tri = reference(text);
            for p in 0..tri.puncture_count() as u32 {
                let w = puncture_link_coords(&tri, p).unwrap();
                let got = classify(&tri, &w).unwrap();
                assert_eq!(
                    got.verdict,
                    TrivialityVerdict::BoundsOncePuncturedDisc,
                    "link of puncture {p} on {text}"
                );
            }
        }
    }

    #[test]
    fn mobius_boundaries_from_arcs_in_n12() {
        // each arc between the two punctures of N1,2 has a trivial
        // neighborhood circle: it bounds a Möbius band on the far side
        let tri = reference("N1,2");
        let mut checked = 0;
        for e in 0..tri.edge_count() {
            let (p, q) = tri.edge_endpoints(e);
            if p == q {
                continue;
            }
            let curves = arc_neighborhood_curves(&tri, e).unwrap();
            assert_eq!(curves.len(), 1);
            let got = classify(&tri, &curves[0]).unwrap();
            assert_eq!(got.verdict, TrivialityVerdict::BoundsMobiusBand);
            checked += 1;
        }
        assert!(checked >= 1);
    }

    #[test]
    fn distinct_endpoint_arcs_give_two_separating_circles() {
        let tri = reference("N1,5");
        let mut found = 0;
        for e in 0..tri.edge_count() {
            let (p, q) = tri.edge_endpoints(e);
            if p == q {
                continue;
            }
            let curves = arc_neighborhood_curves(&tri, e).unwrap();
            assert_eq!(curves.len(), 1, "edge {e} joins distinct punctures");
            let got = classify(&tri, &curves[0]).unwrap();
            if got.verdict != TrivialityVerdict::Nontrivial {
                continue;
            }
            let class = got.class.unwrap();
            assert_eq!(class.k_separating, Some(2), "edge {e}");
            match class.kind {
                CurveKind::Separating { pieces } => {
                    let disc = pieces.iter().find(|x| x.is_punctured_disc()).unwrap();
                    assert_eq!(disc.punctures, vec![p.min(q), p.max(q)]);
                }
                other => panic!("expected separating, got {other:?}"),
            }
            found += 1;
        }
        assert!(found >= 2, "N1,5 reference has several such arcs");
    }

    #[test]
    fn loop_arcs_split_by_sidedness() {
        // one-sided loops give a single circle (once-punctured Möbius
        // neighborhood), two-sided loops give two
        let mut singles = 0;
        let mut doubles = 0;
        for text in ["N1,3", "N1,5", "N3,1"] {
            let tri = reference(text);
            for e in 0..tri.edge_count() {
                let (p, q) = tri.edge_endpoints(e);
                if p != q {
                    continue;
                }
                match arc_neighborhood_curves(&tri, e).unwrap().len() {
                    1 => singles += 1,
                    2 => doubles += 1,
                    other => panic!("loop arc {e} on {text} gave {other} circles"),
                }
            }
        }
        assert!(singles > 0, "some loop arc is one-sided");
        assert!(doubles > 0, "some loop arc is two-sided");
    }

    #[test]
    fn chain_arcs_with_disjoint_endpoints_give_disjoint_circles() {
        let tri = reference("N1,5");
        let mut checked = 0;
        for i in 0..tri.edge_count() {
            for j in i + 1..tri.edge_count() {
                let (a, b) = tri.edge_endpoints(i);
                let (c, d) = tri.edge_endpoints(j);
                if a == b || c == d || a == c || a == d || b == c || b == d {
                    continue;
                }
                let ci = arc_neighborhood_curves(&tri, i).unwrap().remove(0);
                let cj = arc_neighborhood_curves(&tri, j).unwrap().remove(0);
                if ci == cj
                    || classify(&tri, &ci).unwrap().class.is_none()
                    || classify(&tri, &cj).unwrap().class.is_none()
                {
                    continue;
                }
                assert!(
                    crate::curves::disjoint(&tri, &ci, &cj).unwrap(),
                    "arcs {i}, {j} have no common endpoint"
                );
                checked += 1;
            }
        }
        assert!(checked >= 3);
    }
}
