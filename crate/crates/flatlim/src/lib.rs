//! Exact certification of flat limits of disjoint line unions on a smooth
//! quadric surface in projective 3-space.
//!
//! The toolkit degenerates the union of d pairwise-disjoint lines on the
//! quadric x(x+w) = yz to a multiple structure on a single line, by taking
//! the initial ideal for the weight vector (d,2,1,1) and saturating. It then
//! certifies whether the limit is the extremal multiple line with ideal
//! generated by x^2, xy, y^d, xG - y^(d-1)F, checking Hilbert data, the
//! complete-intersection Hilbert function of the K[z,w]/(F,G) module, and,
//! in the degenerate case of colliding point sums, the embedded-point length.
//!
//! Layers, bottom up: [`scalar`] (exact fields), [`poly`] (monomials, term
//! orders, polynomials), [`groebner`] (Buchberger engine and ideal calculus),
//! [`linalg`] (exact dense rank), [`hilbert`] (Hilbert series/functions/
//! polynomials), [`family`] (the line-family constructions and the
//! certification pipeline), [`report`] (serializable run records), [`cli`]
//! (command-line frontend, used by the `flatlim` binary).

pub mod scalar;
pub mod poly;
pub mod groebner;
pub mod linalg;
pub mod hilbert;
pub mod family;
pub mod report;
pub mod cli;

pub(crate) mod log {
    use std::sync::OnceLock;

    /// Verbosity from FLATLIM_LOG: 0 quiet (default), 1 stage info, 2 debug.
    pub fn level() -> u8 {
        static LEVEL: OnceLock<u8> = OnceLock::new();
        *LEVEL.get_or_init(|| match std::env::var("FLATLIM_LOG").ok().as_deref() {
            Some("1") | Some("info") => 1,
            Some("2") | Some("debug") => 2,
            _ => 0,
        })
    }

    macro_rules! flog {
        ($lvl:expr, $($arg:tt)*) => {
            if crate::log::level() >= $lvl {
                eprintln!("[flatlim] {}", format!($($arg)*));
            }
        };
    }
    pub(crate) use flog;
}
