//! JSON and CSV serialization.
//!
//! JSON numbers use the shortest representation that parses back to the same
//! bits; CSV numbers are written with 17 significant digits.

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::circle_deform::{ModeRoot, Trajectory};
use crate::error::{Error, Result};
use crate::polygon_deform::PolygonSpectrum;
use crate::tracks::ChordProfile;

/// `x` with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("value is serializable");
    s.push('\n');
    s
}

/// Parse JSON, reporting the path of the offending field on failure.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::Parse { path: if path == "." { "<root>".into() } else { path }, message: e.into_inner().to_string() }
    })
}

fn table<const W: usize>(header: [&str; W], rows: impl Iterator<Item = [String; W]>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// `n,omega,rho,residual`.
pub fn roots_csv(roots: &[ModeRoot]) -> String {
    table(
        ["n", "omega", "rho", "residual"],
        roots.iter().map(|r| [r.n.to_string(), fmt_f64(r.omega), fmt_f64(r.rho), fmt_f64(r.residual)]),
    )
}

/// `x,beta,dbeta,f,energy`.
pub fn trajectory_csv(t: &Trajectory) -> String {
    table(
        ["x", "beta", "dbeta", "f", "energy"],
        t.points.iter().map(|p| [fmt_f64(p.x), fmt_f64(p.beta), fmt_f64(p.dbeta), fmt_f64(p.f), fmt_f64(p.energy)]),
    )
}

/// `x,chord,alpha_start,alpha_end` at the curve parameters `x`.
pub fn profile_csv(x: &[f64], profile: &ChordProfile) -> String {
    table(
        ["x", "chord", "alpha_start", "alpha_end"],
        (0..x.len()).map(|i| {
            [fmt_f64(x[i]), fmt_f64(profile.chord[i]), fmt_f64(profile.alpha_start[i]), fmt_f64(profile.alpha_end[i])]
        }),
    )
}

/// `n,k,r,re,im,abs,zero`.
pub fn spectrum_csv(s: &PolygonSpectrum) -> String {
    table(
        ["n", "k", "r", "re", "im", "abs", "zero"],
        s.theta.iter().enumerate().map(|(r, &[re, im])| {
            [
                s.n.to_string(),
                s.k.to_string(),
                r.to_string(),
                fmt_f64(re),
                fmt_f64(im),
                fmt_f64(re.hypot(im)),
                s.zero[r].to_string(),
            ]
        }),
    )
}

/// Numeric columns of a CSV table (header skipped; `true`/`false` read as 1/0).
pub fn parse_csv(text: &str) -> Result<Vec<Vec<f64>>> {
    text.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, line)| {
            line.split(',')
                .map(|cell| match cell.trim() {
                    "true" => Ok(1.0),
                    "false" => Ok(0.0),
                    c => c
                        .parse::<f64>()
                        .map_err(|e| Error::Parse { path: format!("row {}", i + 1), message: format!("`{c}`: {e}") }),
                })
                .collect()
        })
        .collect()
}
