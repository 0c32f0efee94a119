#ifndef BIKEGEOM_H
#define BIKEGEOM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum {
  BG_STATUS_OK = 0,
  BG_STATUS_NULL_POINTER = 1,
  BG_STATUS_INVALID_ARGUMENT = 2,
  BG_STATUS_INVALID_INPUT = 3,
  BG_STATUS_NOT_ARCLENGTH = 4,
  BG_STATUS_NOT_CONVEX = 5,
  BG_STATUS_NOT_CONCYCLIC = 6,
  BG_STATUS_BUFFER_TOO_SMALL = 7,
  BG_STATUS_PANIC = 8,
} BgStatus;

/**
 * Sampled closed curve.
 */
typedef struct BgCurve BgCurve;

/**
 * Wave front given by odd harmonics of its radius of curvature.
 */
typedef struct BgFront BgFront;

/**
 * Cyclic polygon.
 */
typedef struct BgPolygon BgPolygon;

/**
 * Chord spreads of a curve at a rotation number.
 */
typedef struct {
  double length_spread;
  double angle_spread;
  double half_chord;
} BgBicycleResidual;

/**
 * Side and diagonal spreads of a polygon.
 */
typedef struct {
  double side_spread;
  double diag_spread;
  bool convex;
  bool bicycle;
} BgPolygonReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the next call.
 */
const char *bg_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *bg_version(void);

/**
 * Release a string returned by a `*_to_json` call.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void bg_string_free(char *s);

/**
 * Curve from `n` interleaved `(x, y)` pairs.
 *
 * # Safety
 * `xy` must point to `2 * n` doubles; `out` must be writable.
 */
BgStatus bg_curve_new(const double *xy, size_t n, bool arclength, BgCurve **out);

/**
 * Curve from its JSON form `{"samples": [[x, y], ...], "arclength": bool}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
BgStatus bg_curve_from_json(const char *json, BgCurve **out);

/**
 * JSON form of a curve; release with [`bg_string_free`].
 *
 * # Safety
 * `curve` must be a live handle; `out` must be writable.
 */
BgStatus bg_curve_to_json(const BgCurve *curve, char **out);

/**
 * # Safety
 * `curve` must be null or a handle not yet freed.
 */
void bg_curve_free(BgCurve *curve);

/**
 * Number of samples, or 0 for a null handle.
 *
 * # Safety
 * `curve` must be null or a live handle.
 */
size_t bg_curve_len(const BgCurve *curve);

/**
 * Copy the samples into `out` (room for `cap` points); `count` receives the sample count.
 *
 * # Safety
 * `curve` must be live; `out` must hold `2 * cap` doubles; `count` must be writable.
 */
BgStatus bg_curve_samples(const BgCurve *curve, double *out, size_t cap, size_t *count);

/**
 * Perimeter of the trigonometric interpolant.
 *
 * # Safety
 * `curve` must be live; `out` must be writable.
 */
BgStatus bg_curve_length(const BgCurve *curve, double *out);

/**
 * Arc-length resampling to `n` points, optionally scaled to perimeter 2π.
 *
 * # Safety
 * `curve` must be live; `out` must be writable.
 */
BgStatus bg_curve_resample_arclength(const BgCurve *curve, size_t n, bool rescale, BgCurve **out);

/**
 * Front track `γ + L γ′/|γ′|` (or `γ − L γ′/|γ′|` when `reverse`).
 *
 * # Safety
 * `curve` must be live; `out` must be writable.
 */
BgStatus bg_front_track(const BgCurve *curve, double length, bool reverse, BgCurve **out);

/**
 * Hausdorff distance between the forward and reverse front tracks.
 *
 * # Safety
 * `curve` must be live; `out` must be writable.
 */
BgStatus bg_ambiguity_distance(const BgCurve *curve, double length, double *out);

/**
 * Chord spreads of an arc-length curve of perimeter 2π at rotation number `rho`.
 *
 * # Safety
 * `curve` must be live; `out` must be writable.
 */
BgStatus bg_bicycle_residual(const BgCurve *curve, double rho, BgBicycleResidual *out);

/**
 * Front `r(θ) = Σ c_i cos m_i θ + s_i sin m_i θ` over `count` odd harmonics `m_i ≥ 3`.
 *
 * # Safety
 * `m`, `cos`, `sin` must each point to `count` values; `out` must be writable.
 */
BgStatus bg_front_new(const uint32_t *m,
                      const double *cos,
                      const double *sin,
                      size_t count,
                      BgFront **out);

/**
 * Front from its JSON form `{"harmonics": {"3": [c, s], ...}, "basepoint": [x, y]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
BgStatus bg_front_from_json(const char *json, BgFront **out);

/**
 * # Safety
 * `front` must be null or a handle not yet freed.
 */
void bg_front_free(BgFront *front);

/**
 * Smallest half-chord for which the rotation-number-1/2 construction is convex.
 *
 * # Safety
 * `front` must be live; `out` must be writable.
 */
BgStatus bg_front_min_convex_l(const BgFront *front, double *out);

/**
 * Bicycle curve with rotation number 1/2 swept by a chord of half-length
 * `half_chord` centred on the front; `n` arc-length samples, perimeter 2π.
 *
 * # Safety
 * `front` must be live; `out` must be writable.
 */
BgStatus bg_rho_half_construct(const BgFront *front, double half_chord, size_t n, BgCurve **out);

/**
 * Roots `ω ∈ (0, π)` of `n tan ω = tan nω`; `count` receives the number of roots.
 *
 * # Safety
 * `out` must hold `cap` doubles; `count` must be writable.
 */
BgStatus bg_mode_roots(uint32_t n, double *out, size_t cap, size_t *count);

/**
 * Eigenvalue `θ_r` of the `(n, k)` diagonal constraint circulant.
 *
 * # Safety
 * `re` and `im` must be writable.
 */
BgStatus bg_polygon_theta(size_t n, size_t k, size_t r, double *re, double *im);

/**
 * Polygon from `n` interleaved `(x, y)` pairs.
 *
 * # Safety
 * `xy` must point to `2 * n` doubles; `out` must be writable.
 */
BgStatus bg_polygon_new(const double *xy, size_t n, BgPolygon **out);

/**
 * Regular `n`-gon of the given circumradius.
 *
 * # Safety
 * `out` must be writable.
 */
BgStatus bg_polygon_regular(size_t n, double circumradius, BgPolygon **out);

/**
 * Member of the flexible `(n, k)` family at apex altitude `h`.
 *
 * # Safety
 * `out` must be writable.
 */
BgStatus bg_polygon_flexible(size_t n, size_t k, double h, BgPolygon **out);

/**
 * # Safety
 * `polygon` must be null or a handle not yet freed.
 */
void bg_polygon_free(BgPolygon *polygon);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `polygon` must be null or a live handle.
 */
size_t bg_polygon_len(const BgPolygon *polygon);

/**
 * Copy the vertices into `out` (room for `cap` points); `count` receives the vertex count.
 *
 * # Safety
 * `polygon` must be live; `out` must hold `2 * cap` doubles; `count` must be writable.
 */
BgStatus bg_polygon_vertices(const BgPolygon *polygon, double *out, size_t cap, size_t *count);

/**
 * Side and `k`-diagonal spreads; `bicycle` is set when both are below `tol`.
 *
 * # Safety
 * `polygon` must be live; `out` must be writable.
 */
BgStatus bg_polygon_verify(const BgPolygon *polygon, size_t k, double tol, BgPolygonReport *out);

/**
 * JSON form of a polygon; release with [`bg_string_free`].
 *
 * # Safety
 * `polygon` must be live; `out` must be writable.
 */
BgStatus bg_polygon_to_json(const BgPolygon *polygon, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BIKEGEOM_H */
