pub mod circle_deform;
pub mod cli;
pub mod curves;
pub mod distance;
pub mod error;
pub mod geom;
pub mod io;
pub mod polygon_deform;
pub mod polygons;
pub mod rho_half;
pub mod rigidity;
pub mod spectral;
pub mod svg;
pub mod tracks;

pub use error::{Error, Result};
pub use geom::Vec2;
