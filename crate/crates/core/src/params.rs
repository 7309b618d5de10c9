use std::fmt;

use crate::error::Error;

/// Schläfli parameters of a hyperbolic `{p,q}` tessellation: regular
/// `p`-gons, `q` of them around every vertex. Hyperbolic means
/// `(p-2)(q-2) > 4`; Euclidean and spherical inputs are rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TessellationParams {
    p: u32,
    q: u32,
}

impl TessellationParams {
    pub fn new(p: u32, q: u32) -> Result<Self, Error> {
        if p < 3 || q < 3 || (p - 2) * (q - 2) <= 4 {
            return Err(Error::NonHyperbolic { p, q });
        }
        Ok(TessellationParams { p, q })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Dual tessellation `{q,p}` (also hyperbolic).
    pub fn dual(&self) -> TessellationParams {
        TessellationParams { p: self.q, q: self.p }
    }

    /// Tile count of the complete 2-layer patch: `1 + p(q-2)`.
    pub fn layer2_tiles(&self) -> u64 {
        1 + self.p as u64 * (self.q as u64 - 2)
    }
}

impl fmt::Display for TessellationParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.p, self.q)
    }
}

/// The eleven tessellations exercised across the test suite.
pub const TEST_GRID: [(u32, u32); 11] = [
    (3, 7),
    (3, 8),
    (4, 5),
    (4, 6),
    (5, 4),
    (5, 5),
    (6, 4),
    (7, 3),
    (8, 3),
    (8, 4),
    (10, 5),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_hyperbolic() {
        for (p, q) in TEST_GRID {
            assert!(TessellationParams::new(p, q).is_ok(), "{{{p},{q}}}");
        }
    }

    #[test]
    fn rejects_euclidean_and_spherical() {
        for (p, q) in [(4, 4), (3, 6), (6, 3), (5, 3), (3, 5), (4, 3), (3, 4), (3, 3), (2, 7), (7, 2)] {
            assert!(TessellationParams::new(p, q).is_err(), "{{{p},{q}}}");
        }
    }
}
