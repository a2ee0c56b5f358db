//! Breadth-first exploration of the flip graph on canonical classes.
//!
//! Nodes are canonical forms; two nodes are adjacent when some flip of a
//! representative of one lands in the other. Flip sequences returned by
//! [`flip_path`] index edges of the *canonical representative* of the
//! current class at each step; [`replay_flip_path`] implements exactly that
//! convention.

use std::collections::BTreeMap;

use super::{CanonicalForm, EdgeIdx, TriError, Triangulation};

#[derive(Debug, Clone)]
pub struct FlipNode {
    pub form: CanonicalForm,
    pub distance: u32,
}

/// Flip classes reachable within a radius, with flip adjacency.
#[derive(Debug, Clone)]
pub struct FlipGraph {
    /// Sorted by (distance, form bytes).
    pub nodes: Vec<FlipNode>,
    /// Index pairs `(a, b)` with `a <= b`, sorted and deduplicated; a loop
    /// `(a, a)` records a flip landing in an isomorphic triangulation.
    pub edges: Vec<(usize, usize)>,
}

fn canonical_rep(tri: &Triangulation) -> Result<(CanonicalForm, Triangulation), TriError> {
    let form = tri.canonical_form()?;
    let rep = form.decode()?;
    Ok((form, rep))
}

/// Flips of the canonical representative, as (edge index, resulting form).
fn neighbors(rep: &Triangulation) -> Result<Vec<(EdgeIdx, CanonicalForm)>, TriError> {
    let mut out = Vec::new();
    for e in 0..rep.edge_count() {
        if rep.is_self_folded(e) {
            continue;
        }
        let flipped = rep.flip(e)?;
        // codimension one: the two triangulations share all edges but one
        debug_assert_eq!(
            flipped.edge_map.iter().flatten().count(),
            rep.edge_count() - 1
        );
        out.push((e, flipped.tri.canonical_form()?));
    }
    Ok(out)
}

/// All canonical classes within `radius` flips of `start`.
pub fn flip_bfs(start: &Triangulation, radius: u32) -> Result<FlipGraph, TriError> {
    let (root, root_rep) = canonical_rep(start)?;
    let mut dist: BTreeMap<CanonicalForm, u32> = BTreeMap::new();
    let mut reps: BTreeMap<CanonicalForm, Triangulation> = BTreeMap::new();
    let mut edge_set: std::collections::BTreeSet<(CanonicalForm, CanonicalForm)> = Default::default();
    dist.insert(root.clone(), 0);
    reps.insert(root.clone(), root_rep);
    let mut level: Vec<CanonicalForm> = vec![root];
    let mut d = 0;
    while !level.is_empty() {
        let mut next: Vec<CanonicalForm> = Vec::new();
        for form in &level {
            let rep = reps[form].clone();
            for (_, nb) in neighbors(&rep)? {
                let within = dist.get(&nb).is_some();
                if !within && d < radius {
                    dist.insert(nb.clone(), d + 1);
                    reps.insert(nb.clone(), nb.decode()?);
                    next.push(nb.clone());
                }
                // record the edge when both endpoints are in the ball
                if dist.contains_key(&nb) {
                    let (lo, hi) = if *form <= nb { (form.clone(), nb) } else { (nb, form.clone()) };
                    edge_set.insert((lo, hi));
                }
            }
        }
        next.sort();
        next.dedup();
        level = next;
        d += 1;
        if d > radius {
            break;
        }
    }

    let mut nodes: Vec<FlipNode> =
        dist.iter().map(|(form, &distance)| FlipNode { form: form.clone(), distance }).collect();
    nodes.sort_by(|a, b| (a.distance, &a.form).cmp(&(b.distance, &b.form)));
    let index: BTreeMap<&CanonicalForm, usize> =
        nodes.iter().enumerate().map(|(i, n)| (&n.form, i)).collect();
    let mut edges: Vec<(usize, usize)> = edge_set
        .iter()
        .map(|(a, b)| {
            let (x, y) = (index[a], index[b]);
            if x <= y {
                (x, y)
            } else {
                (y, x)
            }
        })
        .collect();
    edges.sort_unstable();
    edges.dedup();
    Ok(FlipGraph { nodes, edges })
}

/// Bidirectional search for a flip sequence from `from` to `to` of length at
/// most `max_depth`. `None` is the not-found value.
pub fn flip_path(
    from: &Triangulation,
    to: &Triangulation,
    max_depth: u32,
) -> Result<Option<Vec<EdgeIdx>>, TriError> {
    if from.sig() != to.sig() {
        return Err(TriError::SurfaceMismatch);
    }
    let (cf, _) = canonical_rep(from)?;
    let (ct, _) = canonical_rep(to)?;
    if cf == ct {
        return Ok(Some(Vec::new()));
    }

    // parent maps: form -> (previous form, edge flipped at the previous rep)
    type Parents = BTreeMap<CanonicalForm, Option<(CanonicalForm, EdgeIdx)>>;
    let mut fwd: Parents = BTreeMap::new();
    let mut bwd: Parents = BTreeMap::new();
    fwd.insert(cf.clone(), None);
    bwd.insert(ct.clone(), None);
    let mut fwd_level = vec![cf.clone()];
    let mut bwd_level = vec![ct.clone()];
    let (mut df, mut db) = (0u32, 0u32);
    let mut meet: Option<CanonicalForm> = None;

    'search: while meet.is_none() {
        if df + db >= max_depth {
            break;
        }
        // expand the smaller frontier
        let expand_fwd = fwd_level.len() <= bwd_level.len();
        let (level, this, other) = if expand_fwd {
            (&mut fwd_level, &mut fwd, &bwd)
        } else {
            (&mut bwd_level, &mut bwd, &fwd)
        };
        if level.is_empty() {
            break;
        }
        let mut next = Vec::new();
        for form in level.iter() {
            let rep = form.decode()?;
            for (e, nb) in neighbors(&rep)? {
                if this.contains_key(&nb) {
                    continue;
                }
                this.insert(nb.clone(), Some((form.clone(), e)));
                if other.contains_key(&nb) {
                    meet = Some(nb);
                    break 'search;
                }
                next.push(nb);
            }
        }
        next.sort();
        next.dedup();
        *level = next;
        if expand_fwd {
            df += 1;
        } else {
            db += 1;
        }
    }

    let Some(meet) = meet else { return Ok(None) };

    // forward half: edge indices from the start class to the meeting class
    let mut fwd_chain = Vec::new();
    let mut cur = meet.clone();
    while let Some(Some((prev, e))) = fwd.get(&cur) {
        fwd_chain.push(*e);
        cur = prev.clone();
    }
    fwd_chain.reverse();

    // backward half: classes from the target out to the meeting class,
    // inverted by scanning each representative for a flip landing one step
    // closer to the target
    let mut back_classes = vec![meet.clone()];
    let mut cur = meet;
    while let Some(Some((prev, _))) = bwd.get(&cur) {
        back_classes.push(prev.clone());
        cur = prev.clone();
    }
    let mut path = fwd_chain;
    for w in back_classes.windows(2) {
        let rep = w[0].decode()?;
        let mut found = None;
        for e in 0..rep.edge_count() {
            if rep.is_self_folded(e) {
                continue;
            }
            if rep.flip(e)?.tri.canonical_form()? == w[1] {
                found = Some(e);
                break;
            }
        }
        path.push(found.expect("backward step must be invertible"));
    }
    if path.len() as u32 > max_depth {
        return Ok(None);
    }
    Ok(Some(path))
}

/// Replays a sequence returned by [`flip_path`]: at each step the recorded
/// edge index applies to the canonical representative of the current class.
pub fn replay_flip_path(
    start: &Triangulation,
    path: &[EdgeIdx],
) -> Result<Triangulation, TriError> {
    let (_, mut cur) = canonical_rep(start)?;
    for &e in path {
        let flipped = cur.flip(e)?;
        cur = flipped.tri.canonical_form()?.decode()?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::SurfaceSig;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn radius_zero_is_single_node() {
        let tri = Triangulation::reference(SurfaceSig::nonorientable(1, 2).unwrap()).unwrap();
        let graph = flip_bfs(&tri, 0).unwrap();
        assert_eq!(graph.nodes.len(), 1);
    }

    #[test]
    fn identical_triangulations_have_empty_path() {
        let tri = Triangulation::reference(SurfaceSig::nonorientable(1, 3).unwrap()).unwrap();
        assert_eq!(flip_path(&tri, &tri, 5).unwrap(), Some(vec![]));
    }

    #[test]
    fn mismatched_surfaces_error() {
        let a = Triangulation::reference(SurfaceSig::nonorientable(1, 2).unwrap()).unwrap();
        let b = Triangulation::reference(SurfaceSig::orientable(0, 3)).unwrap();
        assert!(matches!(flip_path(&a, &b, 3), Err(TriError::SurfaceMismatch)));
    }

    #[test]
    fn random_walks_return_within_length() {
        let tri = Triangulation::reference(SurfaceSig::nonorientable(1, 3).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let mut cur = tri.clone();
            let len = rng.gen_range(1..=6);
            for _ in 0..len {
                let flippable: Vec<usize> =
                    (0..cur.edge_count()).filter(|&e| !cur.is_self_folded(e)).collect();
                let e = *flippable.choose(&mut rng).unwrap();
                cur = cur.flip(e).unwrap().tri;
            }
            let path = flip_path(&tri, &cur, len).unwrap().expect("walk is a witness");
            assert!(path.len() <= len as usize);
            let replayed = replay_flip_path(&tri, &path).unwrap();
            assert_eq!(
                replayed.canonical_form().unwrap(),
                cur.canonical_form().unwrap()
            );
        }
    }
}
