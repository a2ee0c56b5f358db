#ifndef CURVECX_H
#define CURVECX_H

/* Generated by cbindgen from curvecx-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Topological type of a connected nontrivial curve.
 */
typedef enum CxCurveKind {
  CX_CURVE_KIND_ONE_SIDED = 0,
  CX_CURVE_KIND_TWO_SIDED_NONSEPARATING = 1,
  CX_CURVE_KIND_SEPARATING = 2,
} CxCurveKind;

/**
 * Low-complexity classification of the complex of curves.
 */
typedef enum CxSmallComplex {
  CX_SMALL_COMPLEX_EMPTY = 0,
  CX_SMALL_COMPLEX_INFINITE_DISCRETE = 1,
  CX_SMALL_COMPLEX_SINGLE_VERTEX = 2,
  CX_SMALL_COMPLEX_TWO_VERTICES = 3,
  CX_SMALL_COMPLEX_GENERIC = 4,
} CxSmallComplex;

/**
 * Status codes returned by fallible calls.
 */
typedef enum CxStatus {
  CX_STATUS_OK = 0,
  CX_STATUS_NULL_ARGUMENT = -1,
  CX_STATUS_INVALID_ARGUMENT = -2,
  CX_STATUS_UNDEFINED = -3,
  CX_STATUS_BUFFER_TOO_SMALL = -4,
  CX_STATUS_PANIC = -5,
} CxStatus;

/**
 * Triviality verdict of a connected curve.
 */
typedef enum CxVerdict {
  CX_VERDICT_NONTRIVIAL = 0,
  CX_VERDICT_BOUNDS_DISC = 1,
  CX_VERDICT_BOUNDS_ONCE_PUNCTURED_DISC = 2,
  CX_VERDICT_BOUNDS_MOBIUS_BAND = 3,
} CxVerdict;

/**
 * Opaque enumerated curve list.
 */
typedef struct CxCurveSet CxCurveSet;

/**
 * Opaque snapshot of the complex of curves.
 */
typedef struct CxSnapshot CxSnapshot;

/**
 * Opaque surface signature.
 */
typedef struct CxSurface CxSurface;

/**
 * Opaque ideal triangulation.
 */
typedef struct CxTriangulation CxTriangulation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent failure on this thread. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *cx_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must have been returned by a curvecx function and not freed before.
 */
void cx_string_free(char *s);

/**
 * Parses shorthand like "N3,1" or "S0,4"; NULL on error.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string.
 */
struct CxSurface *cx_surface_parse(const char *text);

/**
 * Builds a signature from parts; NULL when the genus is invalid.
 */
struct CxSurface *cx_surface_new(bool orientable, uint32_t genus, uint32_t punctures);

/**
 * # Safety
 * `surface` must come from this library and not be freed twice.
 */
void cx_surface_free(struct CxSurface *surface);

/**
 * # Safety
 * `surface` must be a live handle.
 */
int64_t cx_surface_euler_char(const struct CxSurface *surface);

/**
 * Writes the curve-complex dimension; `CX_STATUS_UNDEFINED` for the
 * exceptional small surfaces.
 *
 * # Safety
 * `surface` must be a live handle and `out` writable.
 */
enum CxStatus cx_surface_complex_dimension(const struct CxSurface *surface, int64_t *out);

/**
 * Writes the maximal-simplex dimension range.
 *
 * # Safety
 * All pointers must be live and writable.
 */
enum CxStatus cx_surface_simplex_range(const struct CxSurface *surface,
                                       int64_t *lo,
                                       int64_t *hi,
                                       bool *extrapolated);

/**
 * # Safety
 * `surface` must be live and `out` writable.
 */
enum CxStatus cx_surface_pants_count(const struct CxSurface *surface, uint32_t *out);

/**
 * # Safety
 * `surface` must be a live handle.
 */
enum CxSmallComplex cx_surface_small_complex(const struct CxSurface *surface);

/**
 * Reference triangulation of a surface; NULL when none exists.
 *
 * # Safety
 * `surface` must be a live handle.
 */
struct CxTriangulation *cx_tri_reference(const struct CxSurface *surface);

/**
 * Parses the JSON gluing format; NULL on error.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string.
 */
struct CxTriangulation *cx_tri_from_json(const char *json);

/**
 * Serializes the gluing as JSON; free with `cx_string_free`.
 *
 * # Safety
 * `tri` must be a live handle.
 */
char *cx_tri_to_json(const struct CxTriangulation *tri);

/**
 * # Safety
 * `tri` must come from this library and not be freed twice.
 */
void cx_tri_free(struct CxTriangulation *tri);

/**
 * # Safety
 * `tri` must be a live handle.
 */
uintptr_t cx_tri_triangle_count(const struct CxTriangulation *tri);

/**
 * # Safety
 * `tri` must be a live handle.
 */
uintptr_t cx_tri_edge_count(const struct CxTriangulation *tri);

/**
 * # Safety
 * `tri` must be a live handle.
 */
uint32_t cx_tri_puncture_count(const struct CxTriangulation *tri);

/**
 * # Safety
 * `tri` must be a live handle.
 */
bool cx_tri_is_self_folded(const struct CxTriangulation *tri, uintptr_t edge);

/**
 * Flips an edge; returns the new triangulation and writes the index of
 * the replacement diagonal. NULL on unflippable edges.
 *
 * # Safety
 * `tri` must be a live handle; `new_edge` may be NULL.
 */
struct CxTriangulation *cx_tri_flip(const struct CxTriangulation *tri,
                                    uintptr_t edge,
                                    uintptr_t *new_edge);

/**
 * Hex encoding of the relabeling-invariant canonical form; free with
 * `cx_string_free`.
 *
 * # Safety
 * `tri` must be a live handle.
 */
char *cx_tri_canonical_hex(const struct CxTriangulation *tri);

/**
 * # Safety
 * `tri` must be live; `weights` must point to `len` readable entries.
 */
enum CxStatus cx_curve_is_admissible(const struct CxTriangulation *tri,
                                     const uint32_t *weights,
                                     uintptr_t len,
                                     bool *out);

/**
 * Classifies a connected curve: verdict, kind (meaningful when the
 * verdict is nontrivial) and the separating `k` (`-1` when absent).
 *
 * # Safety
 * `tri` must be live; `weights` must point to `len` readable entries; out
 * pointers may be NULL.
 */
enum CxStatus cx_curve_classify(const struct CxTriangulation *tri,
                                const uint32_t *weights,
                                uintptr_t len,
                                enum CxVerdict *verdict,
                                enum CxCurveKind *kind,
                                int32_t *k_separating);

/**
 * # Safety
 * `tri` must be live; both weight buffers must hold `len` entries.
 */
enum CxStatus cx_curves_disjoint(const struct CxTriangulation *tri,
                                 const uint32_t *w1,
                                 const uint32_t *w2,
                                 uintptr_t len,
                                 bool *out);

/**
 * Enumerates every curve class within a weight bound; NULL on error.
 *
 * # Safety
 * `tri` must be a live handle.
 */
struct CxCurveSet *cx_curves_enumerate(const struct CxTriangulation *tri, uint32_t bound);

/**
 * # Safety
 * `set` must come from this library and not be freed twice.
 */
void cx_curveset_free(struct CxCurveSet *set);

/**
 * # Safety
 * `set` must be a live handle.
 */
uintptr_t cx_curveset_len(const struct CxCurveSet *set);

/**
 * Copies the weight vector of entry `index` into `buf`.
 *
 * # Safety
 * `set` must be live; `buf` must hold `cap` writable entries.
 */
enum CxStatus cx_curveset_weights(const struct CxCurveSet *set,
                                  uintptr_t index,
                                  uint32_t *buf,
                                  uintptr_t cap);

/**
 * # Safety
 * `set` must be a live handle.
 */
enum CxCurveKind cx_curveset_kind(const struct CxCurveSet *set, uintptr_t index);

/**
 * Builds a bounded snapshot of the complex of curves; NULL on error.
 *
 * # Safety
 * `surface` must be a live handle.
 */
struct CxSnapshot *cx_snapshot_build(const struct CxSurface *surface, uint32_t bound);

/**
 * # Safety
 * `snap` must come from this library and not be freed twice.
 */
void cx_snapshot_free(struct CxSnapshot *snap);

/**
 * # Safety
 * `snap` must be a live handle.
 */
uintptr_t cx_snapshot_len(const struct CxSnapshot *snap);

/**
 * Disjointness of two distinct vertices; false on bad indices (check
 * `cx_last_error`).
 *
 * # Safety
 * `snap` must be a live handle.
 */
bool cx_snapshot_adjacent(const struct CxSnapshot *snap, uintptr_t i, uintptr_t j);

/**
 * Largest maximal-clique dimension in the snapshot (-1 when empty).
 *
 * # Safety
 * `snap` must be a live handle.
 */
int64_t cx_snapshot_max_clique_dimension(const struct CxSnapshot *snap);

/**
 * Snapshot as JSON (vertices plus sorted adjacency pairs); free with
 * `cx_string_free`.
 *
 * # Safety
 * `snap` must be a live handle.
 */
char *cx_snapshot_to_json(const struct CxSnapshot *snap);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* CURVECX_H */
