use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// A point of `[0, ∞]`: an exact non-negative rational or infinity.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    Finite(Ratio<i64>),
    Infinity,
}

impl Param {
    pub const ZERO: Param = Param::Finite(Ratio::new_raw(0, 1));

    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Invalid("zero denominator".into()));
        }
        let r = Ratio::new(num, den);
        if r.is_negative() {
            return Err(Error::Invalid(format!("negative parameter {r}")));
        }
        Ok(Param::Finite(r))
    }

    pub fn int(n: i64) -> Self {
        Param::new(n, 1).expect("non-negative integer")
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Param::Finite(_))
    }

    pub fn is_zero(self) -> bool {
        matches!(self, Param::Finite(r) if r.is_zero())
    }
}

impl Default for Param {
    fn default() -> Self {
        Param::ZERO
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Finite(r) => write!(f, "{r}"),
            Param::Infinity => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Param {
    type Err = Error;

    /// Accepts `inf`, integers, `num/den` and plain decimals such as `2.25`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Invalid(format!("cannot parse parameter {s:?}"));
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(Param::Infinity);
        }
        if let Some((n, d)) = s.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            return Param::new(n, d);
        }
        if let Some((whole, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 15 {
                return Err(bad());
            }
            let den = 10i64.pow(frac.len() as u32);
            let w: i64 = if whole.is_empty() {
                0
            } else {
                whole.parse().map_err(|_| bad())?
            };
            if w < 0 || whole.starts_with('-') {
                return Err(Error::Invalid(format!("negative parameter {s}")));
            }
            let f: i64 = frac.parse().map_err(|_| bad())?;
            let num = w
                .checked_mul(den)
                .and_then(|v| v.checked_add(f))
                .ok_or_else(bad)?;
            return Param::new(num, den);
        }
        let n: i64 = s.parse().map_err(|_| bad())?;
        Param::new(n, 1)
    }
}

/// Check a grid is strictly increasing, finite and starts at 0.
pub fn validate_grid(grid: &[Param]) -> Result<()> {
    if grid.first() != Some(&Param::ZERO) {
        return Err(Error::BadGrid);
    }
    if grid.iter().any(|t| !t.is_finite()) || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadGrid);
    }
    Ok(())
}

/// Sorted union of two grids.
pub fn merge_grids(a: &[Param], b: &[Param]) -> Vec<Param> {
    let mut g: Vec<Param> = a.iter().chain(b).copied().collect();
    g.sort();
    g.dedup();
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_and_parsing() {
        let half: Param = "1/2".parse().unwrap();
        assert_eq!(half, "0.5".parse().unwrap());
        assert_eq!(half, "2/4".parse().unwrap());
        assert!(Param::ZERO < half && half < Param::int(1) && Param::int(1000) < Param::Infinity);
        assert_eq!("inf".parse::<Param>().unwrap(), Param::Infinity);
        assert_eq!(Param::new(6, 4).unwrap().to_string(), "3/2");
        assert_eq!(Param::int(3).to_string(), "3");
        assert!("-1".parse::<Param>().is_err());
        assert!("1/0".parse::<Param>().is_err());
        assert!("x".parse::<Param>().is_err());
        assert!("-0.5".parse::<Param>().is_err());
    }

    #[test]
    fn grids() {
        let g = vec![Param::ZERO, Param::int(1)];
        assert!(validate_grid(&g).is_ok());
        assert!(validate_grid(&[Param::int(1)]).is_err());
        assert!(validate_grid(&[Param::ZERO, Param::ZERO]).is_err());
        assert!(validate_grid(&[Param::ZERO, Param::Infinity]).is_err());
        let m = merge_grids(&g, &[Param::ZERO, Param::int(2)]);
        assert_eq!(m, vec![Param::ZERO, Param::int(1), Param::int(2)]);
    }
}
