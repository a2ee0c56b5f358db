//! C ABI for the curvecx toolkit.
//!
//! Objects cross the boundary as opaque handles with explicit `_free`
//! functions. Fallible calls return a [`CxStatus`]; the message of the most
//! recent failure on the current thread is available through
//! [`cx_last_error`]. Strings returned by the library are released with
//! [`cx_string_free`]. The C header is generated into `include/curvecx.h`
//! at build time.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use curvecx::complex::ComplexSnapshot;
use curvecx::curves::{classify, disjoint, enumerate_vertices, is_admissible, CurveClass, CurveKind, TrivialityVerdict};
use curvecx::surface::{SmallComplexKind, SurfaceSig};
use curvecx::triangulation::{RawTriangulation, Triangulation};

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl std::fmt::Display) {
    let text = CString::new(message.to_string()).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = text);
}

/// Status codes returned by fallible calls.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum CxStatus {
    Ok = 0,
    NullArgument = -1,
    InvalidArgument = -2,
    Undefined = -3,
    BufferTooSmall = -4,
    Panic = -5,
}

/// Topological type of a connected nontrivial curve.
#[repr(C)]
pub enum CxCurveKind {
    OneSided = 0,
    TwoSidedNonseparating = 1,
    Separating = 2,
}

/// Triviality verdict of a connected curve.
#[repr(C)]
pub enum CxVerdict {
    Nontrivial = 0,
    BoundsDisc = 1,
    BoundsOncePuncturedDisc = 2,
    BoundsMobiusBand = 3,
}

/// Low-complexity classification of the complex of curves.
#[repr(C)]
pub enum CxSmallComplex {
    Empty = 0,
    InfiniteDiscrete = 1,
    SingleVertex = 2,
    TwoVertices = 3,
    Generic = 4,
}

/// Opaque surface signature.
pub struct CxSurface(SurfaceSig);
/// Opaque ideal triangulation.
pub struct CxTriangulation(Triangulation);
/// Opaque enumerated curve list.
pub struct CxCurveSet(Vec<CurveClass>);
/// Opaque snapshot of the complex of curves.
pub struct CxSnapshot(ComplexSnapshot);

fn guarded<T>(fallback: T, body: impl FnOnce() -> Result<T, String>) -> T {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(value)) => value,
        Ok(Err(message)) => {
            set_error(message);
            fallback
        }
        Err(_) => {
            set_error("internal panic");
            fallback
        }
    }
}

/// Message of the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cx_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must have been returned by a curvecx function and not freed before.
#[no_mangle]
pub unsafe extern "C" fn cx_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---- surfaces --------------------------------------------------------

/// Parses shorthand like "N3,1" or "S0,4"; NULL on error.
///
/// # Safety
/// `text` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn cx_surface_parse(text: *const c_char) -> *mut CxSurface {
    guarded(std::ptr::null_mut(), || {
        if text.is_null() {
            return Err("null text".into());
        }
        let text = CStr::from_ptr(text).to_str().map_err(|e| e.to_string())?;
        let sig: SurfaceSig = text.parse().map_err(|e: curvecx::SurfaceError| e.to_string())?;
        Ok(Box::into_raw(Box::new(CxSurface(sig))))
    })
}

/// Builds a signature from parts; NULL when the genus is invalid.
#[no_mangle]
pub extern "C" fn cx_surface_new(
    orientable: bool,
    genus: u32,
    punctures: u32,
) -> *mut CxSurface {
    guarded(std::ptr::null_mut(), || {
        let sig = SurfaceSig::new(orientable, genus, punctures).map_err(|e| e.to_string())?;
        Ok(Box::into_raw(Box::new(CxSurface(sig))))
    })
}

/// # Safety
/// `surface` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cx_surface_free(surface: *mut CxSurface) {
    if !surface.is_null() {
        drop(Box::from_raw(surface));
    }
}

/// # Safety
/// `surface` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cx_surface_euler_char(surface: *const CxSurface) -> i64 {
    guarded(i64::MIN, || {
        let sig = surface.as_ref().ok_or("null surface")?.0;
        Ok(sig.euler_char())
    })
}

/// Writes the curve-complex dimension; `CX_STATUS_UNDEFINED` for the
/// exceptional small surfaces.
///
/// # Safety
/// `surface` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cx_surface_complex_dimension(
    surface: *const CxSurface,
    out: *mut i64,
) -> CxStatus {
    guarded(CxStatus::Panic, || {
        let sig = surface.as_ref().ok_or("null surface")?.0;
        let out = out.as_mut().ok_or("null out")?;
        match sig.complex_dimension() {
            Some(d) => {
                *out = d;
                Ok(CxStatus::Ok)
            }
            None => Ok(CxStatus::Undefined),
        }
    })
}

/// Writes the maximal-simplex dimension range.
///
/// # Safety
/// All pointers must be live and writable.
#[no_mangle]
pub unsafe extern "C" fn cx_surface_simplex_range(
    surface: *const CxSurface,
    lo: *mut i64,
    hi: *mut i64,
    extrapolated: *mut bool,
) -> CxStatus {
    guarded(CxStatus::Panic, || {
        let sig = surface.as_ref().ok_or("null surface")?.0;
        match sig.maximal_simplex_range() {
            Ok(range) => {
                *lo.as_mut().ok_or("null lo")? = range.lo;
                *hi.as_mut().ok_or("null hi")? = range.hi;
                *extrapolated.as_mut().ok_or("null extrapolated")? = range.extrapolated;
                Ok(CxStatus::Ok)
            }
            Err(e) => {
                set_error(e);
                Ok(CxStatus::Undefined)
            }
        }
    })
}

/// # Safety
/// `surface` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cx_surface_pants_count(
    surface: *const CxSurface,
    out: *mut u32,
) -> CxStatus {
    guarded(CxStatus::Panic, || {
        let sig = surface.as_ref().ok_or("null surface")?.0;
        match sig.pants_count() {
            Ok(k) => {
                *out.as_mut().ok_or("null out")? = k;
                Ok(CxStatus::Ok)
            }
            Err(e) => {
                set_error(e);
                Ok(CxStatus::Undefined)
            }
        }
    })
}

/// # Safety
/// `surface` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cx_surface_small_complex(surface: *const CxSurface) -> CxSmallComplex {
    guarded(CxSmallComplex::Generic, || {
        let sig = surface.as_ref().ok_or("null surface")?.0;
        Ok(match sig.small_complex_table() {
            SmallComplexKind::Empty => CxSmallComplex::Empty,
            SmallComplexKind::InfiniteDiscrete => CxSmallComplex::InfiniteDiscrete,
            SmallComplexKind::SingleVertex => CxSmallComplex::SingleVertex,
            SmallComplexKind::TwoVertices => CxSmallComplex::TwoVertices,
            SmallComplexKind::Generic => CxSmallComplex::Generic,
        })
    })
}

// ---- triangulations --------------------------------------------------

/// Reference triangulation of a surface; NULL when none exists.
///
/// # Safety
/// `surface` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cx_tri_reference(surface: *const CxSurface) -> *mut CxTriangulation {
    guarded(std::ptr::null_mut(), || {
        let sig = surface.as_ref().ok_or("null surface")?.0;
        let tri = Triangulation::reference(sig).map_err(|e| e.to_string())?;
        Ok(Box::into_raw(Box::new(CxTriangulation(tri))))
    })
}

/// Parses the JSON gluing format; NULL on error.
///
/// # Safety
/// `json` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn cx_tri_from_json(json: *const c_char) -> *mut CxTriangulation {
    guarded(std::ptr::null_mut(), || {
        if json.is_null() {
            return Err("null json".into());
        }
        let text = CStr::from_ptr(json).to_str().map_err(|e| e.to_string())?;
        let raw: RawTriangulation = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let tri = Triangulation::from_raw(&raw).map_err(|e| e.to_string())?;
        Ok(Box::into_raw(Box::new(CxTriangulation(tri))))
    })
}

/// Serializes the gluing as JSON; free with `cx_string_free`.
///
/// # Safety
/// `tri` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cx_tri_to_json(tri: *const CxTriangulation) -> *mut c_char {
    guarded(std::ptr::null_mut(), || {
        let tri = &tri.as_ref().ok_or("null triangulation")?.0;
        let text = serde_json::to_string(&tri.to_raw()).map_err(|e| e.to_string())?;
        Ok(CString::new(text).map_err(|e| e.to_string())?.into_raw())
    })
}

/// # Safety
/// `tri` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cx_tri_free(tri: *mut CxTriangulation) {
    if !tri.is_null() {
        drop(Box::from_raw(tri));
    }
}

/// # Safety
/// `tri` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cx_tri_triangle_count(tri: *const CxTriangulation) -> usize {
    guarded(0, || Ok(tri.as_ref().ok_or("null triangulation")?.0.triangle_count()))
}

/// # Safety
/// `tri` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cx_tri_edge_count(tri: *const CxTriangulation) -> usize {
    guarded(0, || Ok(tri.as_ref().ok_or("null triangulation")?.0.edge_count()))
}

/// # Safety
/// `tri` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cx_tri_puncture_count(tri: *const CxTriangulation) -> u32 {
    guarded(0, || Ok(tri.as_ref().ok_or("null triangulation")?.0.puncture_count() as u32))
}

/// # Safety
/// `tri` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cx_tri_is_self_folded(
    tri: *const CxTriangulation,
    edge: usize,
) -> bool {
    guarded(false, || {
        let tri = &tri.as_ref().ok_or("null triangulation")?.0;
        if edge >= tri.edge_count() {
            return Err("edge out of range".into());
        }
        Ok(tri.is_self_folded(edge))
    })
}

/// Flips an edge; returns the new triangulation and writes the index of
/// the replacement diagonal. NULL on unflippable edges.
///
/// # Safety
/// `tri` must be a live handle; `new_edge` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn cx_tri_flip(
    tri: *const CxTriangulation,
    edge: usize,
    new_edge: *mut usize,
) -> *mut CxTriangulation {
    guarded(std::ptr::null_mut(), || {
        let tri = &tri.as_ref().ok_or("null triangulation")?.0;
        let flip = tri.flip(edge).map_err(|e| e.to_string())?;
        if let Some(out) = new_edge.as_mut() {
            *out = flip.new_edge;
        }
        Ok(Box::into_raw(Box::new(CxTriangulation(flip.tri))))
    })
}

/// Hex encoding of the relabeling-invariant canonical form; free with
/// `cx_string_free`.
///
/// # Safety
/// `tri` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cx_tri_canonical_hex(tri: *const CxTriangulation) -> *mut c_char {
    guarded(std::ptr::null_mut(), || {
        let tri = &tri.as_ref().ok_or("null triangulation")?.0;
        let form = tri.canonical_form().map_err(|e| e.to_string())?;
        Ok(CString::new(form.to_hex()).map_err(|e| e.to_string())?.into_raw())
    })
}

// ---- curves ----------------------------------------------------------

/// # Safety
/// `tri` must be live; `weights` must point to `len` readable entries.
#[no_mangle]
pub unsafe extern "C" fn cx_curve_is_admissible(
    tri: *const CxTriangulation,
    weights: *const u32,
    len: usize,
    out: *mut bool,
) -> CxStatus {
    guarded(CxStatus::Panic, || {
        let tri = &tri.as_ref().ok_or("null triangulation")?.0;
        if weights.is_null() {
            return Err("null weights".into());
        }
        let w = std::slice::from_raw_parts(weights, len);
        match is_admissible(tri, w) {
            Ok(value) => {
                *out.as_mut().ok_or("null out")? = value;
                Ok(CxStatus::Ok)
            }
            Err(e) => {
                set_error(e);
                Ok(CxStatus::InvalidArgument)
            }
        }
    })
}

/// Classifies a connected curve: verdict, kind (meaningful when the
/// verdict is nontrivial) and the separating `k` (`-1` when absent).
///
/// # Safety
/// `tri` must be live; `weights` must point to `len` readable entries; out
/// pointers may be NULL.
#[no_mangle]
pub unsafe extern "C" fn cx_curve_classify(
    tri: *const CxTriangulation,
    weights: *const u32,
    len: usize,
    verdict: *mut CxVerdict,
    kind: *mut CxCurveKind,
    k_separating: *mut i32,
) -> CxStatus {
    guarded(CxStatus::Panic, || {
        let tri = &tri.as_ref().ok_or("null triangulation")?.0;
        if weights.is_null() {
            return Err("null weights".into());
        }
        let w = std::slice::from_raw_parts(weights, len);
        let got = match classify(tri, w) {
            Ok(got) => got,
            Err(e) => {
                set_error(e);
                return Ok(CxStatus::InvalidArgument);
            }
        };
        if let Some(slot) = verdict.as_mut() {
            *slot = match got.verdict {
                TrivialityVerdict::Nontrivial => CxVerdict::Nontrivial,
                TrivialityVerdict::BoundsDisc => CxVerdict::BoundsDisc,
                TrivialityVerdict::BoundsOncePuncturedDisc => CxVerdict::BoundsOncePuncturedDisc,
                TrivialityVerdict::BoundsMobiusBand => CxVerdict::BoundsMobiusBand,
            };
        }
        if let Some(class) = &got.class {
            if let Some(slot) = kind.as_mut() {
                *slot = match class.kind {
                    CurveKind::OneSided => CxCurveKind::OneSided,
                    CurveKind::TwoSidedNonseparating => CxCurveKind::TwoSidedNonseparating,
                    CurveKind::Separating { .. } => CxCurveKind::Separating,
                };
            }
            if let Some(slot) = k_separating.as_mut() {
                *slot = class.k_separating.map(|k| k as i32).unwrap_or(-1);
            }
        }
        Ok(CxStatus::Ok)
    })
}

/// # Safety
/// `tri` must be live; both weight buffers must hold `len` entries.
#[no_mangle]
pub unsafe extern "C" fn cx_curves_disjoint(
    tri: *const CxTriangulation,
    w1: *const u32,
    w2: *const u32,
    len: usize,
    out: *mut bool,
) -> CxStatus {
    guarded(CxStatus::Panic, || {
        let tri = &tri.as_ref().ok_or("null triangulation")?.0;
        if w1.is_null() || w2.is_null() {
            return Err("null weights".into());
        }
        let a = std::slice::from_raw_parts(w1, len);
        let b = std::slice::from_raw_parts(w2, len);
        match disjoint(tri, a, b) {
            Ok(value) => {
                *out.as_mut().ok_or("null out")? = value;
                Ok(CxStatus::Ok)
            }
            Err(e) => {
                set_error(e);
                Ok(CxStatus::InvalidArgument)
            }
        }
    })
}

/// Enumerates every curve class within a weight bound; NULL on error.
///
/// # Safety
/// `tri` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cx_curves_enumerate(
    tri: *const CxTriangulation,
    bound: u32,
) -> *mut CxCurveSet {
    guarded(std::ptr::null_mut(), || {
        let tri = &tri.as_ref().ok_or("null triangulation")?.0;
        let classes = enumerate_vertices(tri, bound).map_err(|e| e.to_string())?;
        Ok(Box::into_raw(Box::new(CxCurveSet(classes))))
    })
}

/// # Safety
/// `set` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cx_curveset_free(set: *mut CxCurveSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// # Safety
/// `set` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cx_curveset_len(set: *const CxCurveSet) -> usize {
    guarded(0, || Ok(set.as_ref().ok_or("null set")?.0.len()))
}

/// Copies the weight vector of entry `index` into `buf`.
///
/// # Safety
/// `set` must be live; `buf` must hold `cap` writable entries.
#[no_mangle]
pub unsafe extern "C" fn cx_curveset_weights(
    set: *const CxCurveSet,
    index: usize,
    buf: *mut u32,
    cap: usize,
) -> CxStatus {
    guarded(CxStatus::Panic, || {
        let set = &set.as_ref().ok_or("null set")?.0;
        let class = set.get(index).ok_or("index out of range")?;
        if cap < class.weights.len() {
            return Ok(CxStatus::BufferTooSmall);
        }
        if buf.is_null() {
            return Err("null buffer".into());
        }
        let out = std::slice::from_raw_parts_mut(buf, class.weights.len());
        out.copy_from_slice(&class.weights);
        Ok(CxStatus::Ok)
    })
}

/// # Safety
/// `set` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cx_curveset_kind(set: *const CxCurveSet, index: usize) -> CxCurveKind {
    guarded(CxCurveKind::OneSided, || {
        let set = &set.as_ref().ok_or("null set")?.0;
        let class = set.get(index).ok_or("index out of range")?;
        Ok(match class.kind {
            CurveKind::OneSided => CxCurveKind::OneSided,
            CurveKind::TwoSidedNonseparating => CxCurveKind::TwoSidedNonseparating,
            CurveKind::Separating { .. } => CxCurveKind::Separating,
        })
    })
}

// ---- snapshots -------------------------------------------------------

/// Builds a bounded snapshot of the complex of curves; NULL on error.
///
/// # Safety
/// `surface` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cx_snapshot_build(
    surface: *const CxSurface,
    bound: u32,
) -> *mut CxSnapshot {
    guarded(std::ptr::null_mut(), || {
        let sig = surface.as_ref().ok_or("null surface")?.0;
        let snap = ComplexSnapshot::build(sig, bound).map_err(|e| e.to_string())?;
        Ok(Box::into_raw(Box::new(CxSnapshot(snap))))
    })
}

/// # Safety
/// `snap` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cx_snapshot_free(snap: *mut CxSnapshot) {
    if !snap.is_null() {
        drop(Box::from_raw(snap));
    }
}

/// # Safety
/// `snap` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cx_snapshot_len(snap: *const CxSnapshot) -> usize {
    guarded(0, || Ok(snap.as_ref().ok_or("null snapshot")?.0.len()))
}

/// Disjointness of two distinct vertices; false on bad indices (check
/// `cx_last_error`).
///
/// # Safety
/// `snap` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cx_snapshot_adjacent(
    snap: *const CxSnapshot,
    i: usize,
    j: usize,
) -> bool {
    guarded(false, || {
        let snap = &snap.as_ref().ok_or("null snapshot")?.0;
        if i == j || i >= snap.len() || j >= snap.len() {
            return Err("vertex indices out of range or equal".into());
        }
        Ok(snap.adjacent(i, j))
    })
}

/// Largest maximal-clique dimension in the snapshot (-1 when empty).
///
/// # Safety
/// `snap` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cx_snapshot_max_clique_dimension(snap: *const CxSnapshot) -> i64 {
    guarded(i64::MIN, || {
        let snap = &snap.as_ref().ok_or("null snapshot")?.0;
        Ok(snap.maximal_simplices().iter().map(|a| a.dimension).max().unwrap_or(-1))
    })
}

/// Snapshot as JSON (vertices plus sorted adjacency pairs); free with
/// `cx_string_free`.
///
/// # Safety
/// `snap` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cx_snapshot_to_json(snap: *const CxSnapshot) -> *mut c_char {
    guarded(std::ptr::null_mut(), || {
        let snap = &snap.as_ref().ok_or("null snapshot")?.0;
        let text = serde_json::to_string(&snap.to_file()).map_err(|e| e.to_string())?;
        Ok(CString::new(text).map_err(|e| e.to_string())?.into_raw())
    })
}
