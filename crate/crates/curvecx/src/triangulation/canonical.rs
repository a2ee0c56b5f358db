//! Relabeling-invariant canonical forms for triangulations.
//!
//! Two triangulations are isomorphic when a bijection of triangles combined
//! with a symmetry of each triangle (rotation or reflection of its sides)
//! carries one gluing onto the other; reflections reverse side directions,
//! which toggles the reversal flag once per reflected endpoint. The
//! canonical form runs a breadth-first relabeling from every (start
//! triangle, start framing) choice and keeps the lexicographically smallest
//! encoding. Searching all `6t` starts is exhaustive, which is fine at desk
//! scale (`t <= 12` in practice, capped at 255 by the byte encoding).

use serde::{Deserialize, Serialize};

use super::{Flag, TriError, Triangulation};

/// A framing of one triangle: `base` is the old side that becomes side 0;
/// `reflected` reverses side order and direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Framing {
    base: u8,
    reflected: bool,
}

impl Framing {
    fn old_side(&self, new_side: u8) -> u8 {
        if self.reflected {
            (self.base + 3 - new_side) % 3
        } else {
            (self.base + new_side) % 3
        }
    }

    fn new_side(&self, old_side: u8) -> u8 {
        if self.reflected {
            (self.base + 3 - old_side) % 3
        } else {
            (old_side + 3 - self.base) % 3
        }
    }
}

/// Byte encoding that identifies a triangulation up to relabeling.
///
/// Layout: `[t]` then, for each relabeled slot in order, the partner's
/// triangle label, side index, and flag. Decodable via
/// [`CanonicalForm::decode`]; the decoded representative canonicalizes to
/// the same form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm(pub Vec<u8>);

impl CanonicalForm {
    pub fn bytes(&self) -> &[u8] {
        &self.0
    }

    /// Rebuilds the canonical representative triangulation.
    pub fn decode(&self) -> Result<Triangulation, TriError> {
        let t = self.0[0] as usize;
        let mut gluing = Vec::new();
        for slot in 0..3 * t {
            let v = self.0[1 + 3 * slot] as usize;
            let side = self.0[2 + 3 * slot] as usize;
            let flag = if self.0[3 + 3 * slot] == 1 { Flag::Parallel } else { Flag::Antiparallel };
            let other = 3 * v + side;
            if slot < other {
                gluing.push((slot, other, flag));
            }
        }
        Triangulation::from_gluing(t, &gluing)
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn encode_from(tri: &Triangulation, start: usize, start_framing: Framing) -> Vec<u8> {
    let t = tri.triangle_count();
    let mut label = vec![usize::MAX; t];
    let mut framing = vec![Framing { base: 0, reflected: false }; t];
    let mut order = Vec::with_capacity(t);

    label[start] = 0;
    framing[start] = start_framing;
    order.push(start);

    // breadth-first discovery: process triangles in label order, sides in
    // relabeled order; a neighbor's framing is pinned so the discovery edge
    // becomes its side 0 glued antiparallel in the new labels
    let mut next = 0usize;
    while next < order.len() {
        let u = order[next];
        next += 1;
        for new_side in 0..3u8 {
            let old_side = framing[u].old_side(new_side);
            let slot = 3 * u + old_side as usize;
            let p = tri.partner(slot);
            let v = p / 3;
            if label[v] != usize::MAX {
                continue;
            }
            let flag_par = tri.slot_flag(slot) == Flag::Parallel;
            let reflected = flag_par ^ framing[u].reflected;
            label[v] = order.len();
            framing[v] = Framing { base: (p % 3) as u8, reflected };
            order.push(v);
        }
    }
    debug_assert_eq!(order.len(), t, "triangulations are connected");

    let mut bytes = Vec::with_capacity(1 + 9 * t);
    bytes.push(t as u8);
    for &u in order.iter() {
        let _ = u;
    }
    // emit in new-label order
    let mut by_label = vec![0usize; t];
    for (tri_idx, &lbl) in label.iter().enumerate() {
        by_label[lbl] = tri_idx;
    }
    for lbl in 0..t {
        let u = by_label[lbl];
        for new_side in 0..3u8 {
            let old_side = framing[u].old_side(new_side);
            let slot = 3 * u + old_side as usize;
            let p = tri.partner(slot);
            let v = p / 3;
            let v_side = framing[v].new_side((p % 3) as u8);
            let flag_par = tri.slot_flag(slot) == Flag::Parallel;
            let flag_new = flag_par ^ framing[u].reflected ^ framing[v].reflected;
            bytes.push(label[v] as u8);
            bytes.push(v_side);
            bytes.push(flag_new as u8);
        }
    }
    bytes
}

pub(super) fn canonical_form(tri: &Triangulation) -> Result<CanonicalForm, TriError> {
    let t = tri.triangle_count();
    if t > 255 {
        return Err(TriError::TooLarge);
    }
    let mut best: Option<Vec<u8>> = None;
    for start in 0..t {
        for base in 0..3u8 {
            for reflected in [false, true] {
                let enc = encode_from(tri, start, Framing { base, reflected });
                if best.as_ref().is_none_or(|b| enc < *b) {
                    best = Some(enc);
                }
            }
        }
    }
    Ok(CanonicalForm(best.expect("at least one triangle")))
}

/// Applies a triangle permutation and per-triangle symmetries, producing an
/// isomorphic triangulation. `perm[u]` is the new index of old triangle `u`;
/// `syms[u] = (base, reflected)` reframes old triangle `u`. Used to exercise
/// relabeling invariance.
pub fn relabeled(
    tri: &Triangulation,
    perm: &[usize],
    syms: &[(u8, bool)],
) -> Result<Triangulation, TriError> {
    let t = tri.triangle_count();
    assert_eq!(perm.len(), t);
    assert_eq!(syms.len(), t);
    let map = |slot: usize| -> (usize, bool) {
        let u = slot / 3;
        let f = Framing { base: syms[u].0, reflected: syms[u].1 };
        let new_side = f.new_side((slot % 3) as u8);
        (3 * perm[u] + new_side as usize, f.reflected)
    };
    let mut gluing = Vec::new();
    for e in 0..tri.edge_count() {
        let (a, b) = tri.edge_slots(e);
        let (na, ra) = map(a);
        let (nb, rb) = map(b);
        gluing.push((na, nb, tri.edge_flag(e).toggled(ra ^ rb)));
    }
    Triangulation::from_gluing(t, &gluing)
}
