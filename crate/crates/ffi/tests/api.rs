use std::ffi::{CStr, CString};
use std::ptr;

use bikegeom_ffi::*;

fn last_error() -> String {
    let p = bg_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn circle_xy(n: usize, r: f64) -> Vec<f64> {
    (0..n)
        .flat_map(|j| {
            let t = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
            [r * t.cos(), r * t.sin()]
        })
        .collect()
}

#[test]
fn curve_lifecycle_and_tracks() {
    unsafe {
        let xy = circle_xy(128, 3.0);
        let mut c = ptr::null_mut();
        assert_eq!(bg_curve_new(xy.as_ptr(), 128, true, &mut c), BgStatus::Ok);
        assert_eq!(bg_curve_len(c), 128);
        let mut len = 0.0;
        assert_eq!(bg_curve_length(c, &mut len), BgStatus::Ok);
        assert!((len - 6.0 * std::f64::consts::PI).abs() < 1e-12);

        let mut front = ptr::null_mut();
        assert_eq!(bg_front_track(c, 1.0, false, &mut front), BgStatus::Ok);
        let mut buf = vec![0.0; 256];
        let mut count = 0;
        assert_eq!(bg_curve_samples(front, buf.as_mut_ptr(), 128, &mut count), BgStatus::Ok);
        assert_eq!(count, 128);
        assert!((buf[0].hypot(buf[1]) - 10f64.sqrt()).abs() < 1e-12);

        let mut d = f64::NAN;
        assert_eq!(bg_ambiguity_distance(c, 1.0, &mut d), BgStatus::Ok);
        assert!(d < 1e-8);

        assert_eq!(bg_curve_samples(front, buf.as_mut_ptr(), 10, &mut count), BgStatus::BufferTooSmall);
        assert_eq!(count, 128);
        bg_curve_free(front);
        bg_curve_free(c);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut c = ptr::null_mut();
        assert_eq!(bg_curve_new(ptr::null(), 10, false, &mut c), BgStatus::NullPointer);
        assert!(last_error().contains("xy"));
        assert!(c.is_null());

        let xy = [0.0, 0.0, 0.0, 0.0, 1.0, 1.0];
        assert_eq!(bg_curve_new(xy.as_ptr(), 3, false, &mut c), BgStatus::InvalidInput);
        assert!(!last_error().is_empty());

        let bad = CString::new(r#"{"samples": [[0, 0], [1, "x"]], "arclength": false}"#).unwrap();
        assert_eq!(bg_curve_from_json(bad.as_ptr(), &mut c), BgStatus::InvalidInput);
        assert!(last_error().contains("samples[1]"));

        let mut f = ptr::null_mut();
        let m = [4u32];
        assert_eq!(bg_front_new(m.as_ptr(), [1.0].as_ptr(), [0.0].as_ptr(), 1, &mut f), BgStatus::InvalidInput);

        // a successful call clears the message
        let mut p = ptr::null_mut();
        assert_eq!(bg_polygon_regular(6, 1.0, &mut p), BgStatus::Ok);
        assert!(bg_last_error().is_null());
        bg_polygon_free(p);

        assert_eq!(bg_curve_len(ptr::null()), 0);
        bg_curve_free(ptr::null_mut());
    }
}

#[test]
fn json_round_trip() {
    unsafe {
        let xy = circle_xy(64, 1.5);
        let mut c = ptr::null_mut();
        assert_eq!(bg_curve_new(xy.as_ptr(), 64, false, &mut c), BgStatus::Ok);
        let mut text = ptr::null_mut();
        assert_eq!(bg_curve_to_json(c, &mut text), BgStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(bg_curve_from_json(text, &mut back), BgStatus::Ok);
        let (mut a, mut b) = (vec![0.0; 128], vec![0.0; 128]);
        let mut n = 0;
        bg_curve_samples(c, a.as_mut_ptr(), 64, &mut n);
        bg_curve_samples(back, b.as_mut_ptr(), 64, &mut n);
        assert_eq!(a, b);
        bg_string_free(text);
        bg_curve_free(back);
        bg_curve_free(c);
    }
}

#[test]
fn rho_half_pipeline() {
    unsafe {
        let json = CString::new(r#"{"harmonics": {"3": [1.0, 0.0]}}"#).unwrap();
        let mut f = ptr::null_mut();
        assert_eq!(bg_front_from_json(json.as_ptr(), &mut f), BgStatus::Ok);
        let mut threshold = 0.0;
        assert_eq!(bg_front_min_convex_l(f, &mut threshold), BgStatus::Ok);
        assert!((threshold - 3.0).abs() < 1e-9);

        let mut curve = ptr::null_mut();
        assert_eq!(bg_rho_half_construct(f, 4.0, 512, &mut curve), BgStatus::Ok);
        let mut res = BgBicycleResidual::default();
        assert_eq!(bg_bicycle_residual(curve, 0.5, &mut res), BgStatus::Ok);
        assert!(res.length_spread < 1e-8 && res.angle_spread < 1e-8);
        bg_curve_free(curve);
        bg_front_free(f);
    }
}

#[test]
fn roots_and_polygons() {
    unsafe {
        let mut roots = [0.0; 4];
        let mut count = 0;
        assert_eq!(bg_mode_roots(4, roots.as_mut_ptr(), 4, &mut count), BgStatus::Ok);
        assert_eq!(count, 2);
        assert!((roots[0] - 5f64.sqrt().atan()).abs() < 1e-13);
        assert_eq!(bg_mode_roots(3, ptr::null_mut(), 0, &mut count), BgStatus::Ok);
        assert_eq!(count, 0);

        let mut p = ptr::null_mut();
        assert_eq!(bg_polygon_flexible(8, 3, 0.2, &mut p), BgStatus::Ok);
        let mut report = BgPolygonReport::default();
        assert_eq!(bg_polygon_verify(p, 3, 1e-9, &mut report), BgStatus::Ok);
        assert!(report.bicycle && report.convex);
        assert_eq!(bg_polygon_len(p), 8);
        bg_polygon_free(p);

        assert_eq!(bg_polygon_flexible(8, 3, 5.0, &mut p), BgStatus::InvalidArgument);

        let (mut re, mut im) = (1.0, 1.0);
        assert_eq!(bg_polygon_theta(8, 3, 4, &mut re, &mut im), BgStatus::Ok);
        assert!(re.hypot(im) < 1e-12);
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(bg_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
