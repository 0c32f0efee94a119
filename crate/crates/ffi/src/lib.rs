//! C ABI for `bikegeom`.
//!
//! Objects are opaque heap handles released with their `*_free` function.
//! Every fallible call returns a [`BgStatus`]; on failure the message is
//! available from [`bg_last_error`] on the same thread until the next call.
//! Panics never cross the boundary.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bikegeom::curves::{resample_arclength, ClosedCurve, WaveFront};
use bikegeom::polygons::{self, Polygon};
use bikegeom::{circle_deform, io, polygon_deform, rho_half, tracks, Error, Vec2};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidInput = 3,
    NotArclength = 4,
    NotConvex = 5,
    NotConcyclic = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// Sampled closed curve.
pub struct BgCurve {
    inner: ClosedCurve,
}

/// Wave front given by odd harmonics of its radius of curvature.
pub struct BgFront {
    inner: WaveFront,
}

/// Cyclic polygon.
pub struct BgPolygon {
    inner: Polygon,
}

/// Chord spreads of a curve at a rotation number.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct BgBicycleResidual {
    pub length_spread: f64,
    pub angle_spread: f64,
    pub half_chord: f64,
}

/// Side and diagonal spreads of a polygon.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct BgPolygonReport {
    pub side_spread: f64,
    pub diag_spread: f64,
    pub convex: bool,
    pub bicycle: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> BgStatus {
    match e {
        Error::InvalidArgument { .. } | Error::AltitudeOutOfRange { .. } | Error::EmptyKernel { .. } => {
            BgStatus::InvalidArgument
        }
        Error::NotArclength | Error::PerimeterNotNormalized { .. } => BgStatus::NotArclength,
        Error::NotConvex { .. } => BgStatus::NotConvex,
        Error::NotConcyclic { .. } => BgStatus::NotConcyclic,
        _ => BgStatus::InvalidInput,
    }
}

struct Fail(BgStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(BgStatus::NullPointer, format!("`{what}` is null"))
}

/// Run `f`, converting errors and panics into a status and the last-error message.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> BgStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BgStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal panic: {msg}"));
            BgStatus::Panic
        }
    }
}

unsafe fn as_ref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    unsafe { p.as_ref() }.ok_or_else(|| null(what))
}

unsafe fn points(xy: *const f64, n: usize) -> Result<Vec<Vec2>, Fail> {
    if xy.is_null() {
        return Err(null("xy"));
    }
    let flat: &[f64] = unsafe { std::slice::from_raw_parts(xy, 2 * n) };
    Ok(flat.chunks_exact(2).map(|c| Vec2::new(c[0], c[1])).collect())
}

unsafe fn put<T>(out: *mut *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    unsafe { *out = Box::into_raw(Box::new(value)) };
    Ok(())
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    unsafe { *out = value };
    Ok(())
}

/// Copy points into `out` (`2 * cap` doubles); `count` receives the number needed.
unsafe fn copy_points(src: &[Vec2], out: *mut f64, cap: usize, count: *mut usize) -> Result<(), Fail> {
    unsafe { write(count, src.len(), "count")? };
    if cap < src.len() {
        return Err(Fail(BgStatus::BufferTooSmall, format!("buffer holds {cap} points, {} needed", src.len())));
    }
    if out.is_null() {
        return Err(null("out"));
    }
    let dst = unsafe { std::slice::from_raw_parts_mut(out, 2 * src.len()) };
    for (d, p) in dst.chunks_exact_mut(2).zip(src) {
        d[0] = p.x;
        d[1] = p.y;
    }
    Ok(())
}

unsafe fn json_in<T: serde::de::DeserializeOwned>(text: *const c_char) -> Result<T, Fail> {
    if text.is_null() {
        return Err(null("json"));
    }
    let s = unsafe { CStr::from_ptr(text) }
        .to_str()
        .map_err(|e| Fail(BgStatus::InvalidInput, format!("json is not UTF-8: {e}")))?;
    Ok(io::from_json(s)?)
}

unsafe fn json_out<T: serde::Serialize>(value: &T, out: *mut *mut c_char) -> Result<(), Fail> {
    let s = CString::new(io::to_json(value)).expect("JSON contains no NUL");
    unsafe { write(out, s.into_raw(), "out") }
}

/// Message of the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn bg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Release a string returned by a `*_to_json` call.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Curve from `n` interleaved `(x, y)` pairs.
///
/// # Safety
/// `xy` must point to `2 * n` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bg_curve_new(xy: *const f64, n: usize, arclength: bool, out: *mut *mut BgCurve) -> BgStatus {
    guard(|| {
        let inner = ClosedCurve::new(unsafe { points(xy, n)? }, arclength)?;
        unsafe { put(out, BgCurve { inner }, "out") }
    })
}

/// Curve from its JSON form `{"samples": [[x, y], ...], "arclength": bool}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bg_curve_from_json(json: *const c_char, out: *mut *mut BgCurve) -> BgStatus {
    guard(|| {
        let inner = unsafe { json_in(json)? };
        unsafe { put(out, BgCurve { inner }, "out") }
    })
}

/// JSON form of a curve; release with [`bg_string_free`].
///
/// # Safety
/// `curve` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bg_curve_to_json(curve: *const BgCurve, out: *mut *mut c_char) -> BgStatus {
    guard(|| unsafe { json_out(&as_ref(curve, "curve")?.inner, out) })
}

/// # Safety
/// `curve` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bg_curve_free(curve: *mut BgCurve) {
    if !curve.is_null() {
        drop(unsafe { Box::from_raw(curve) });
    }
}

/// Number of samples, or 0 for a null handle.
///
/// # Safety
/// `curve` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bg_curve_len(curve: *const BgCurve) -> usize {
    unsafe { curve.as_ref() }.map_or(0, |c| c.inner.len())
}

/// Copy the samples into `out` (room for `cap` points); `count` receives the sample count.
///
/// # Safety
/// `curve` must be live; `out` must hold `2 * cap` doubles; `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bg_curve_samples(
    curve: *const BgCurve,
    out: *mut f64,
    cap: usize,
    count: *mut usize,
) -> BgStatus {
    guard(|| unsafe { copy_points(as_ref(curve, "curve")?.inner.samples(), out, cap, count) })
}

/// Perimeter of the trigonometric interpolant.
///
/// # Safety
/// `curve` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bg_curve_length(curve: *const BgCurve, out: *mut f64) -> BgStatus {
    guard(|| unsafe { write(out, as_ref(curve, "curve")?.inner.length(), "out") })
}

/// Arc-length resampling to `n` points, optionally scaled to perimeter 2π.
///
/// # Safety
/// `curve` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bg_curve_resample_arclength(
    curve: *const BgCurve,
    n: usize,
    rescale: bool,
    out: *mut *mut BgCurve,
) -> BgStatus {
    guard(|| {
        let inner = resample_arclength(&unsafe { as_ref(curve, "curve")? }.inner, n, rescale)?;
        unsafe { put(out, BgCurve { inner }, "out") }
    })
}

/// Front track `γ + L γ′/|γ′|` (or `γ − L γ′/|γ′|` when `reverse`).
///
/// # Safety
/// `curve` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bg_front_track(
    curve: *const BgCurve,
    length: f64,
    reverse: bool,
    out: *mut *mut BgCurve,
) -> BgStatus {
    guard(|| {
        let gamma = &unsafe { as_ref(curve, "curve")? }.inner;
        let inner =
            if reverse { tracks::reverse_front_track(gamma, length)? } else { tracks::front_track(gamma, length)? };
        unsafe { put(out, BgCurve { inner }, "out") }
    })
}

/// Hausdorff distance between the forward and reverse front tracks.
///
/// # Safety
/// `curve` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bg_ambiguity_distance(curve: *const BgCurve, length: f64, out: *mut f64) -> BgStatus {
    guard(|| {
        let d = tracks::ambiguity_distance(&unsafe { as_ref(curve, "curve")? }.inner, length)?;
        unsafe { write(out, d, "out") }
    })
}

/// Chord spreads of an arc-length curve of perimeter 2π at rotation number `rho`.
///
/// # Safety
/// `curve` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bg_bicycle_residual(curve: *const BgCurve, rho: f64, out: *mut BgBicycleResidual) -> BgStatus {
    guard(|| {
        let r = tracks::bicycle_residual(&unsafe { as_ref(curve, "curve")? }.inner, rho)?;
        let value = BgBicycleResidual {
            length_spread: r.length_spread,
            angle_spread: r.angle_spread,
            half_chord: r.half_chord,
        };
        unsafe { write(out, value, "out") }
    })
}

/// Front `r(θ) = Σ c_i cos m_i θ + s_i sin m_i θ` over `count` odd harmonics `m_i ≥ 3`.
///
/// # Safety
/// `m`, `cos`, `sin` must each point to `count` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bg_front_new(
    m: *const u32,
    cos: *const f64,
    sin: *const f64,
    count: usize,
    out: *mut *mut BgFront,
) -> BgStatus {
    guard(|| {
        if m.is_null() || cos.is_null() || sin.is_null() {
            return Err(null("m/cos/sin"));
        }
        let (m, c, s) = unsafe {
            (
                std::slice::from_raw_parts(m, count),
                std::slice::from_raw_parts(cos, count),
                std::slice::from_raw_parts(sin, count),
            )
        };
        let mut harmonics = BTreeMap::new();
        for i in 0..count {
            if harmonics.insert(m[i], (c[i], s[i])).is_some() {
                return Err(Fail(BgStatus::InvalidArgument, format!("harmonic {} given twice", m[i])));
            }
        }
        let inner = WaveFront::new(harmonics, Vec2::ZERO)?;
        unsafe { put(out, BgFront { inner }, "out") }
    })
}

/// Front from its JSON form `{"harmonics": {"3": [c, s], ...}, "basepoint": [x, y]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bg_front_from_json(json: *const c_char, out: *mut *mut BgFront) -> BgStatus {
    guard(|| {
        let inner = unsafe { json_in(json)? };
        unsafe { put(out, BgFront { inner }, "out") }
    })
}

/// # Safety
/// `front` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bg_front_free(front: *mut BgFront) {
    if !front.is_null() {
        drop(unsafe { Box::from_raw(front) });
    }
}

/// Smallest half-chord for which the rotation-number-1/2 construction is convex.
///
/// # Safety
/// `front` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bg_front_min_convex_l(front: *const BgFront, out: *mut f64) -> BgStatus {
    guard(|| unsafe { write(out, rho_half::min_convex_l(&as_ref(front, "front")?.inner), "out") })
}

/// Bicycle curve with rotation number 1/2 swept by a chord of half-length
/// `half_chord` centred on the front; `n` arc-length samples, perimeter 2π.
///
/// # Safety
/// `front` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bg_rho_half_construct(
    front: *const BgFront,
    half_chord: f64,
    n: usize,
    out: *mut *mut BgCurve,
) -> BgStatus {
    guard(|| {
        let built = rho_half::construct(&unsafe { as_ref(front, "front")? }.inner, half_chord, n)?;
        unsafe { put(out, BgCurve { inner: built.curve }, "out") }
    })
}

/// Roots `ω ∈ (0, π)` of `n tan ω = tan nω`; `count` receives the number of roots.
///
/// # Safety
/// `out` must hold `cap` doubles; `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bg_mode_roots(n: u32, out: *mut f64, cap: usize, count: *mut usize) -> BgStatus {
    guard(|| {
        let roots = circle_deform::mode_roots(n)?;
        unsafe { write(count, roots.len(), "count")? };
        if cap < roots.len() {
            return Err(Fail(BgStatus::BufferTooSmall, format!("buffer holds {cap} roots, {} needed", roots.len())));
        }
        if !roots.is_empty() {
            if out.is_null() {
                return Err(null("out"));
            }
            let dst = unsafe { std::slice::from_raw_parts_mut(out, roots.len()) };
            for (d, r) in dst.iter_mut().zip(&roots) {
                *d = r.omega;
            }
        }
        Ok(())
    })
}

/// Eigenvalue `θ_r` of the `(n, k)` diagonal constraint circulant.
///
/// # Safety
/// `re` and `im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bg_polygon_theta(n: usize, k: usize, r: usize, re: *mut f64, im: *mut f64) -> BgStatus {
    guard(|| {
        let t = polygon_deform::theta_direct(n, k, r)?;
        unsafe {
            write(re, t.re, "re")?;
            write(im, t.im, "im")
        }
    })
}

/// Polygon from `n` interleaved `(x, y)` pairs.
///
/// # Safety
/// `xy` must point to `2 * n` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bg_polygon_new(xy: *const f64, n: usize, out: *mut *mut BgPolygon) -> BgStatus {
    guard(|| {
        let inner = Polygon::new(unsafe { points(xy, n)? })?;
        unsafe { put(out, BgPolygon { inner }, "out") }
    })
}

/// Regular `n`-gon of the given circumradius.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bg_polygon_regular(n: usize, circumradius: f64, out: *mut *mut BgPolygon) -> BgStatus {
    guard(|| {
        let inner = polygons::regular(n, circumradius)?;
        unsafe { put(out, BgPolygon { inner }, "out") }
    })
}

/// Member of the flexible `(n, k)` family at apex altitude `h`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bg_polygon_flexible(n: usize, k: usize, h: f64, out: *mut *mut BgPolygon) -> BgStatus {
    guard(|| {
        let inner = polygons::flexible(n, k, h)?;
        unsafe { put(out, BgPolygon { inner }, "out") }
    })
}

/// # Safety
/// `polygon` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bg_polygon_free(polygon: *mut BgPolygon) {
    if !polygon.is_null() {
        drop(unsafe { Box::from_raw(polygon) });
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `polygon` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bg_polygon_len(polygon: *const BgPolygon) -> usize {
    unsafe { polygon.as_ref() }.map_or(0, |p| p.inner.len())
}

/// Copy the vertices into `out` (room for `cap` points); `count` receives the vertex count.
///
/// # Safety
/// `polygon` must be live; `out` must hold `2 * cap` doubles; `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bg_polygon_vertices(
    polygon: *const BgPolygon,
    out: *mut f64,
    cap: usize,
    count: *mut usize,
) -> BgStatus {
    guard(|| unsafe { copy_points(as_ref(polygon, "polygon")?.inner.vertices(), out, cap, count) })
}

/// Side and `k`-diagonal spreads; `bicycle` is set when both are below `tol`.
///
/// # Safety
/// `polygon` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bg_polygon_verify(
    polygon: *const BgPolygon,
    k: usize,
    tol: f64,
    out: *mut BgPolygonReport,
) -> BgStatus {
    guard(|| {
        let r = polygons::verify(&unsafe { as_ref(polygon, "polygon")? }.inner, k, tol)?;
        let value = BgPolygonReport {
            side_spread: r.side_spread,
            diag_spread: r.diag_spread,
            convex: r.convex,
            bicycle: r.bicycle,
        };
        unsafe { write(out, value, "out") }
    })
}

/// JSON form of a polygon; release with [`bg_string_free`].
///
/// # Safety
/// `polygon` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bg_polygon_to_json(polygon: *const BgPolygon, out: *mut *mut c_char) -> BgStatus {
    guard(|| unsafe { json_out(&as_ref(polygon, "polygon")?.inner, out) })
}
