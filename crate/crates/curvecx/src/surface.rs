//! Surface signatures and closed-form invariants.
//!
//! A [`SurfaceSig`] records the topological type of a punctured surface:
//! orientability, genus (crosscap count in the nonorientable case) and the
//! number of punctures. Boundary components are folded into punctures, so a
//! signature never carries a separate boundary count.
//!
//! The operations here are pure arithmetic: Euler characteristics, the
//! dimension of the complex of curves, the range of maximal-simplex
//! dimensions, pair-of-pants counts and the low-complexity exception table.
//! Each formula is only evaluated where its hypotheses hold; out-of-range
//! inputs produce a [`SurfaceError`] naming the violated hypothesis instead
//! of an extrapolated value.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors from surface arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("nonorientable genus must be at least 1")]
    ZeroNonorientableGenus,
    #[error("hypothesis not met: {0}")]
    Hypothesis(&'static str),
    #[error("no ideal triangulation: {0}")]
    NoIdealTriangulation(&'static str),
    #[error("dimension {dim} outside the maximal-simplex range [{lo}, {hi}]")]
    DimensionOutOfRange { dim: i64, lo: i64, hi: i64 },
    #[error("cannot parse surface signature {0:?}: expected e.g. \"N3,1\" or \"S0,4\"")]
    BadShorthand(String),
}

/// Topological type of a punctured surface.
///
/// `genus` counts handles when `orientable` and crosscaps otherwise; a
/// nonorientable signature has genus at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SurfaceSig {
    pub orientable: bool,
    pub genus: u32,
    pub punctures: u32,
}

#[derive(Deserialize)]
struct RawSig {
    orientable: bool,
    genus: u32,
    punctures: u32,
}

impl TryFrom<RawSig> for SurfaceSig {
    type Error = SurfaceError;
    fn try_from(raw: RawSig) -> Result<Self, SurfaceError> {
        SurfaceSig::new(raw.orientable, raw.genus, raw.punctures)
    }
}

impl<'de> Deserialize<'de> for SurfaceSig {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = RawSig::deserialize(de)?;
        SurfaceSig::try_from(raw).map_err(serde::de::Error::custom)
    }
}

impl SurfaceSig {
    pub fn new(orientable: bool, genus: u32, punctures: u32) -> Result<Self, SurfaceError> {
        if !orientable && genus == 0 {
            return Err(SurfaceError::ZeroNonorientableGenus);
        }
        Ok(SurfaceSig { orientable, genus, punctures })
    }

    pub fn orientable(genus: u32, punctures: u32) -> Self {
        SurfaceSig { orientable: true, genus, punctures }
    }

    pub fn nonorientable(genus: u32, punctures: u32) -> Result<Self, SurfaceError> {
        Self::new(false, genus, punctures)
    }

    /// Euler characteristic of the punctured surface:
    /// `2 - 2g - n` orientable, `2 - g - n` nonorientable.
    pub fn euler_char(&self) -> i64 {
        let g = self.genus as i64;
        let n = self.punctures as i64;
        if self.orientable {
            2 - 2 * g - n
        } else {
            2 - g - n
        }
    }

    /// Dimension of the complex of curves, where the closed forms apply.
    ///
    /// Returns `None` for the exceptional small surfaces; those are handled
    /// by [`SurfaceSig::small_complex_table`].
    pub fn complex_dimension(&self) -> Option<i64> {
        let g = self.genus as i64;
        let n = self.punctures as i64;
        if self.orientable {
            // covers the sphere (n - 4) as the g = 0 case
            if 2 * g + n >= 4 {
                Some(3 * g + n - 4)
            } else {
                None
            }
        } else if g == 1 {
            if n >= 2 {
                Some(n - 2)
            } else {
                None
            }
        } else if self.euler_char() < 0 {
            if g % 2 == 1 {
                let r = (g - 1) / 2;
                Some(4 * r + n - 2)
            } else {
                // g = 2r + 2 gives 4r + n
                Some(2 * g - 4 + n)
            }
        } else {
            None
        }
    }

    /// Range of dimensions attained by maximal simplices in the complex of
    /// curves.
    ///
    /// Degenerate (`lo == hi`) exactly for orientable surfaces and the
    /// genus-1 nonorientable ones. Genus-2 nonorientable surfaces use the
    /// even-genus formula with `r = 1` and are flagged `extrapolated`.
    pub fn maximal_simplex_range(&self) -> Result<SimplexDimRange, SurfaceError> {
        let g = self.genus as i64;
        let n = self.punctures as i64;
        if self.orientable {
            if 2 * g + n < 4 {
                return Err(SurfaceError::Hypothesis(
                    "orientable surfaces require 2g + n >= 4",
                ));
            }
            let d = 3 * g + n - 4;
            return Ok(SimplexDimRange { lo: d, hi: d, extrapolated: false });
        }
        if g == 1 {
            if n < 2 {
                return Err(SurfaceError::Hypothesis(
                    "genus-1 nonorientable surfaces require at least 2 punctures",
                ));
            }
            let d = n - 2;
            return Ok(SimplexDimRange { lo: d, hi: d, extrapolated: false });
        }
        if self.euler_char() >= 0 {
            return Err(SurfaceError::Hypothesis(
                "negative Euler characteristic required",
            ));
        }
        if g % 2 == 1 {
            let r = (g - 1) / 2;
            Ok(SimplexDimRange {
                lo: 3 * r + n - 2,
                hi: 4 * r + n - 2,
                extrapolated: false,
            })
        } else {
            let r = g / 2;
            Ok(SimplexDimRange {
                lo: 3 * r + n - 4,
                hi: 4 * r + n - 4,
                extrapolated: g == 2,
            })
        }
    }

    /// Number of one-sided classes in a maximal simplex of dimension `dim`
    /// on this nonorientable surface.
    ///
    /// Odd genus `2r + 1` forces an odd count `m` with
    /// `dim = 3r + n - 2 + (m - 1) / 2`; even genus `2r` forces an even `m`
    /// with `dim = 3r + n - 4 + m / 2`.
    pub fn onesided_count_for_dimension(&self, dim: i64) -> Result<u32, SurfaceError> {
        if self.orientable {
            return Err(SurfaceError::Hypothesis(
                "one-sided counts apply to nonorientable surfaces",
            ));
        }
        let range = self.maximal_simplex_range()?;
        if dim < range.lo || dim > range.hi {
            return Err(SurfaceError::DimensionOutOfRange {
                dim,
                lo: range.lo,
                hi: range.hi,
            });
        }
        let g = self.genus as i64;
        let n = self.punctures as i64;
        let m = if g % 2 == 1 {
            let r = (g - 1) / 2;
            2 * (dim - (3 * r + n - 2)) + 1
        } else {
            let r = g / 2;
            2 * (dim - (3 * r + n - 4))
        };
        debug_assert!(m >= 0 && m <= g);
        Ok(m as u32)
    }

    /// Number of pairs of pants in a pants decomposition: `-euler_char`.
    pub fn pants_count(&self) -> Result<u32, SurfaceError> {
        let chi = self.euler_char();
        if chi >= 0 {
            return Err(SurfaceError::Hypothesis(
                "negative Euler characteristic required",
            ));
        }
        Ok((-chi) as u32)
    }

    /// The low-complexity exception table for the complex of curves.
    pub fn small_complex_table(&self) -> SmallComplexKind {
        match (self.orientable, self.genus, self.punctures) {
            (true, 0, 0..=3) => SmallComplexKind::Empty,
            (true, 0, 4) => SmallComplexKind::InfiniteDiscrete,
            (false, 1, 0 | 1) => SmallComplexKind::SingleVertex,
            (false, 1, 2) => SmallComplexKind::TwoVertices,
            _ => SmallComplexKind::Generic,
        }
    }

    /// Triangle and edge counts of any ideal triangulation: `(-2chi, -3chi)`.
    pub fn ideal_triangulation_counts(&self) -> Result<(u32, u32), SurfaceError> {
        if self.punctures == 0 {
            return Err(SurfaceError::NoIdealTriangulation(
                "at least one puncture required",
            ));
        }
        let chi = self.euler_char();
        if chi >= 0 {
            return Err(SurfaceError::NoIdealTriangulation(
                "Euler characteristic must be negative",
            ));
        }
        Ok(((-2 * chi) as u32, (-3 * chi) as u32))
    }
}

/// Range `lo..=hi` of maximal-simplex dimensions.
///
/// `extrapolated` marks genus-2 nonorientable surfaces, where the even-genus
/// formula is applied outside its stated low-genus hypothesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplexDimRange {
    pub lo: i64,
    pub hi: i64,
    pub extrapolated: bool,
}

impl SimplexDimRange {
    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, dim: i64) -> bool {
        self.lo <= dim && dim <= self.hi
    }
}

/// Classification of the exceptional small curve complexes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SmallComplexKind {
    Empty,
    InfiniteDiscrete,
    SingleVertex,
    TwoVertices,
    Generic,
}

impl fmt::Display for SurfaceSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.orientable { 'S' } else { 'N' };
        write!(f, "{}{},{}", tag, self.genus, self.punctures)
    }
}

impl FromStr for SurfaceSig {
    type Err = SurfaceError;

    /// Parses the CLI shorthand `N{g},{n}` / `S{g},{n}`.
    fn from_str(s: &str) -> Result<Self, SurfaceError> {
        let bad = || SurfaceError::BadShorthand(s.to_string());
        let mut chars = s.chars();
        let orientable = match chars.next() {
            Some('N') | Some('n') => false,
            Some('S') | Some('s') => true,
            _ => return Err(bad()),
        };
        let rest = chars.as_str();
        let (g, n) = rest.split_once(',').ok_or_else(bad)?;
        let genus = g.trim().parse::<u32>().map_err(|_| bad())?;
        let punctures = n.trim().parse::<u32>().map_err(|_| bad())?;
        SurfaceSig::new(orientable, genus, punctures)
    }
}
