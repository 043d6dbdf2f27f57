//! Exact rational γ.
//!
//! Every threshold the solver derives from γ (`⌈γ(s-1)⌉`, `⌊(1-γ)(s-1)⌋`,
//! `⌊(lb-1)γ⌋`, `⌈c/γ⌉`) is computed in integer arithmetic. Binary floating
//! point cannot represent 0.55 or 0.65 and flips floors and ceilings at exact
//! boundaries such as `0.75 · 4 = 3`.

use core::fmt;
use core::str::FromStr;

use crate::Error;

/// A ratio `num/den` in `(0, 1]`, always stored in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gamma {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Gamma {
    pub const ONE: Gamma = Gamma { num: 1, den: 1 };
    pub const HALF: Gamma = Gamma { num: 1, den: 2 };

    pub fn new(num: u64, den: u64) -> Result<Self, Error> {
        if den == 0 || num == 0 || num > den {
            return Err(Error::InvalidGamma);
        }
        let g = gcd(num, den);
        Ok(Gamma {
            num: num / g,
            den: den / g,
        })
    }

    /// Parses `"0.75"`, `"1"`, `"1.0"`, `".6"` or `"3/4"`.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let text = text.trim();
        if let Some((n, d)) = text.split_once('/') {
            let num = n.trim().parse::<u64>().map_err(|_| Error::InvalidGamma)?;
            let den = d.trim().parse::<u64>().map_err(|_| Error::InvalidGamma)?;
            return Gamma::new(num, den);
        }
        let (int_part, frac_part) = match text.split_once('.') {
            Some((i, f)) => (i, f),
            None => (text, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(Error::InvalidGamma);
        }
        let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
        if !all_digits(int_part) || !all_digits(frac_part) || frac_part.len() > 18 {
            return Err(Error::InvalidGamma);
        }
        let frac_part = frac_part.trim_end_matches('0');
        let den = 10u64.pow(frac_part.len() as u32);
        let int: u64 = if int_part.is_empty() {
            0
        } else {
            int_part.parse().map_err(|_| Error::InvalidGamma)?
        };
        let frac: u64 = if frac_part.is_empty() {
            0
        } else {
            frac_part.parse().map_err(|_| Error::InvalidGamma)?
        };
        let num = int
            .checked_mul(den)
            .and_then(|v| v.checked_add(frac))
            .ok_or(Error::InvalidGamma)?;
        Gamma::new(num, den)
    }

    pub fn numer(self) -> u64 {
        self.num
    }

    pub fn denom(self) -> u64 {
        self.den
    }

    /// True when `0.5 ≤ γ ≤ 1`, the range the solver accepts.
    pub fn in_solver_range(self) -> bool {
        2 * self.num >= self.den
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `⌈γ·x⌉`
    pub fn ceil_mul(self, x: usize) -> usize {
        let p = self.num as u128 * x as u128;
        p.div_ceil(self.den as u128) as usize
    }

    /// `⌊γ·x⌋`
    pub fn floor_mul(self, x: usize) -> usize {
        (self.num as u128 * x as u128 / self.den as u128) as usize
    }

    /// `⌊(1-γ)·x⌋`
    pub fn floor_complement_mul(self, x: usize) -> usize {
        ((self.den - self.num) as u128 * x as u128 / self.den as u128) as usize
    }

    /// `⌈x/γ⌉`
    pub fn ceil_div(self, x: usize) -> usize {
        let p = self.den as u128 * x as u128;
        p.div_ceil(self.num as u128) as usize
    }

    /// Minimum internal degree a member of a size-`size` quasi-clique needs.
    pub fn degree_threshold(self, size: usize) -> usize {
        self.ceil_mul(size.saturating_sub(1))
    }
}

impl FromStr for Gamma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Gamma::parse(s)
    }
}

impl fmt::Display for Gamma {
    /// Terminating decimals print as decimals (`0.75`), anything else as `num/den`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == self.den {
            return write!(f, "1");
        }
        let mut d = self.den;
        let (mut twos, mut fives) = (0u32, 0u32);
        while d % 2 == 0 {
            d /= 2;
            twos += 1;
        }
        while d % 5 == 0 {
            d /= 5;
            fives += 1;
        }
        if d != 1 {
            return write!(f, "{}/{}", self.num, self.den);
        }
        let digits = twos.max(fives);
        let scale = 10u128.pow(digits);
        let scaled = self.num as u128 * scale / self.den as u128;
        write!(f, "0.{:0width$}", scaled, width = digits as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(Gamma::parse("0.75").unwrap(), Gamma::new(3, 4).unwrap());
        assert_eq!(Gamma::parse("0.55").unwrap(), Gamma::new(11, 20).unwrap());
        assert_eq!(Gamma::parse("1").unwrap(), Gamma::ONE);
        assert_eq!(Gamma::parse("1.000").unwrap(), Gamma::ONE);
        assert_eq!(Gamma::parse(".5").unwrap(), Gamma::HALF);
        assert_eq!(Gamma::parse("3/4").unwrap(), Gamma::new(3, 4).unwrap());
    }

    #[test]
    fn rejects_out_of_domain() {
        for bad in ["0", "0.0", "1.01", "2", "-0.5", "abc", "", ".", "0.5.1", "1/0"] {
            assert!(Gamma::parse(bad).is_err(), "{bad}");
        }
        assert!(!Gamma::parse("0.3").unwrap().in_solver_range());
        assert!(Gamma::parse("0.5").unwrap().in_solver_range());
    }

    #[test]
    fn boundary_arithmetic_is_exact() {
        let g = Gamma::parse("0.75").unwrap();
        assert_eq!(g.ceil_mul(4), 3);
        assert_eq!(g.ceil_mul(3), 3);
        assert_eq!(g.ceil_mul(2), 2);
        assert_eq!(g.floor_mul(2), 1);
        assert_eq!(g.floor_mul(3), 2);
        assert_eq!(g.ceil_div(3), 4);
        assert_eq!(g.ceil_div(2), 3);
        let g = Gamma::parse("0.55").unwrap();
        // 0.45 * 7 = 3.15, 0.45 * 6 = 2.7, 0.45 * 20 = 9 exactly
        assert_eq!(g.floor_complement_mul(7), 3);
        assert_eq!(g.floor_complement_mul(6), 2);
        assert_eq!(g.floor_complement_mul(20), 9);
    }

    #[test]
    fn display_round_trips() {
        for s in ["0.5", "0.55", "0.75", "0.9", "1", "0.125"] {
            let g = Gamma::parse(s).unwrap();
            assert_eq!(g.to_string(), s);
            assert_eq!(Gamma::parse(&g.to_string()).unwrap(), g);
        }
        assert_eq!(Gamma::new(2, 3).unwrap().to_string(), "2/3");
    }
}
