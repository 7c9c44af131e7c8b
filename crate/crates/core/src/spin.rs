//! Total spin quantum number, stored losslessly as 2J.

use crate::error::Error;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Largest supported 2J. Caps the single-spin dimension at 33 and the
/// two-spin product dimension at 33^2 = 1089.
pub const MAX_TWO_J: u32 = 32;

/// A total spin quantum number J, held as the integer 2J so half-integer
/// spins (J = 1/2, 3/2, ...) stay exact and comparisons never touch floats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpinJ {
    two_j: u32,
}

impl SpinJ {
    /// Builds a spin from 2J. Requires 1 <= 2J <= 32 (J = 1/2 up to J = 16).
    pub fn from_two_j(two_j: u32) -> Result<Self, Error> {
        if two_j == 0 {
            return Err(Error::InvalidSpin("J must be at least 1/2".into()));
        }
        if two_j > MAX_TWO_J {
            return Err(Error::InvalidSpin(format!(
                "2J = {two_j} exceeds the supported maximum {MAX_TWO_J}"
            )));
        }
        Ok(Self { two_j })
    }

    /// Parses "8", "0.5", "1.5" or fraction form "1/2", "3/2".
    pub fn parse(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = |why: &str| Error::InvalidSpin(format!("cannot parse J from {s:?}: {why}"));
        if let Some((num, den)) = s.split_once('/') {
            let num: u32 = num.trim().parse().map_err(|_| bad("bad numerator"))?;
            let den: u32 = den.trim().parse().map_err(|_| bad("bad denominator"))?;
            if den != 2 {
                return Err(bad("fractional J must have denominator 2"));
            }
            return Self::from_two_j(num);
        }
        let x: f64 = s.parse().map_err(|_| bad("not a number"))?;
        let two_j = 2.0 * x;
        if two_j.fract() != 0.0 || !two_j.is_finite() || two_j < 0.0 {
            return Err(bad("J must be a non-negative integer or half-integer"));
        }
        Self::from_two_j(two_j as u32)
    }

    pub fn two_j(self) -> u32 {
        self.two_j
    }

    pub fn j(self) -> f64 {
        f64::from(self.two_j) / 2.0
    }

    /// Hilbert-space dimension 2J + 1, exact.
    pub fn dim(self) -> usize {
        self.two_j as usize + 1
    }

    /// Dimension of the two-spin product space, (2J+1)^2.
    pub fn pair_dim(self) -> usize {
        self.dim() * self.dim()
    }

    /// Magnetic quantum number of basis index n (index 0 is m_j = -J).
    pub fn m(self, index: usize) -> f64 {
        index as f64 - self.j()
    }

    /// Basis index of the sublevel |m_j = -J + n>, i.e. n itself.
    pub fn index_of_m(self, m_j: f64) -> usize {
        (m_j + self.j()).round() as usize
    }
}

impl fmt::Display for SpinJ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.two_j % 2 == 0 {
            write!(f, "{}", self.two_j / 2)
        } else {
            write!(f, "{}/2", self.two_j)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimal_and_fraction_forms() {
        assert_eq!(SpinJ::parse("0.5").unwrap().two_j(), 1);
        assert_eq!(SpinJ::parse("1/2").unwrap().two_j(), 1);
        assert_eq!(SpinJ::parse("3/2").unwrap().two_j(), 3);
        assert_eq!(SpinJ::parse("1.5").unwrap().two_j(), 3);
        assert_eq!(SpinJ::parse("8").unwrap().two_j(), 16);
        assert!(SpinJ::parse("0.3").is_err());
        assert!(SpinJ::parse("-1").is_err());
        assert!(SpinJ::parse("1/3").is_err());
        assert!(SpinJ::parse("0").is_err());
        assert!(SpinJ::parse("17").is_err());
    }

    #[test]
    fn dimension_and_labels_are_exact() {
        let j = SpinJ::from_two_j(16).unwrap(); // J = 8
        assert_eq!(j.dim(), 17);
        assert_eq!(j.pair_dim(), 289);
        assert_eq!(j.m(0), -8.0);
        assert_eq!(j.m(16), 8.0);
        assert_eq!(j.index_of_m(-8.0), 0);
        let j = SpinJ::from_two_j(1).unwrap();
        assert_eq!(j.m(0), -0.5);
        assert_eq!(j.m(1), 0.5);
        assert_eq!(format!("{j}"), "1/2");
        assert_eq!(format!("{}", SpinJ::from_two_j(4).unwrap()), "2");
    }
}
