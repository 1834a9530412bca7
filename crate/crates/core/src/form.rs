use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::gcd;

/// A diagonal positive definite form `a1*x1^2 + ... + an*xn^2`, written
/// `<a1,...,an>`, with `1 <= n <= 4`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct DiagonalForm {
    coeffs: Vec<u64>,
    det: u128,
}

impl DiagonalForm {
    pub fn new(coeffs: impl Into<Vec<u64>>) -> Result<Self> {
        let coeffs = coeffs.into();
        if coeffs.is_empty() || coeffs.len() > 4 {
            return Err(Error::BadRank(coeffs.len()));
        }
        if coeffs.contains(&0) {
            return Err(Error::ZeroCoefficient);
        }
        let det = coeffs
            .iter()
            .try_fold(1u128, |acc, &c| acc.checked_mul(c as u128))
            .ok_or(Error::DeterminantOverflow)?;
        Ok(Self { coeffs, det })
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn det(&self) -> u128 {
        self.det
    }

    pub fn content(&self) -> u64 {
        self.coeffs.iter().fold(0, |g, &c| gcd(g, c))
    }

    /// Whether the coefficients are coprime, i.e. the lattice has scale `Z`.
    pub fn has_unit_scale(&self) -> bool {
        self.content() == 1
    }

    pub fn max_coeff(&self) -> u64 {
        self.coeffs.iter().copied().max().unwrap_or(1)
    }

    /// Evaluates the form, `None` on overflow.
    pub fn eval(&self, x: &[i64]) -> Option<u128> {
        assert_eq!(x.len(), self.rank(), "vector length must match rank");
        self.coeffs.iter().zip(x).try_fold(0u128, |acc, (&c, &xi)| {
            let sq = (xi.unsigned_abs() as u128).checked_mul(xi.unsigned_abs() as u128)?;
            acc.checked_add((c as u128).checked_mul(sq)?)
        })
    }

    /// Rank 4 with unit scale, which every genus-level operation assumes.
    pub(crate) fn require_quaternary(&self) -> Result<()> {
        if self.rank() != 4 {
            return Err(Error::RankNotFour(self.rank()));
        }
        let g = self.content();
        if g != 1 {
            return Err(Error::ScaleNotOne(g));
        }
        Ok(())
    }

    /// Distinct primes dividing some coefficient, ascending.
    pub fn det_primes(&self) -> Vec<u64> {
        let mut primes: Vec<u64> = self
            .coeffs
            .iter()
            .flat_map(|&c| crate::padic::prime_factors(c))
            .collect();
        primes.sort_unstable();
        primes.dedup();
        primes
    }
}

impl fmt::Display for DiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ">")
    }
}

impl FromStr for DiagonalForm {
    type Err = Error;

    /// Parses `"1,3,9,9"`; surrounding `<>` and whitespace are tolerated.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('<').trim_end_matches('>');
        let coeffs = body
            .split(',')
            .map(|t| {
                t.trim().parse::<u64>().map_err(|e| Error::Parse {
                    input: s.to_string(),
                    reason: format!("coefficient {:?}: {e}", t.trim()),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }
}

impl TryFrom<Vec<u64>> for DiagonalForm {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<DiagonalForm> for Vec<u64> {
    fn from(f: DiagonalForm) -> Self {
        f.coeffs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_is_product() {
        let f = DiagonalForm::new([1, 3, 9, 81]).unwrap();
        assert_eq!(f.det(), 2187);
        assert_eq!(f.rank(), 4);
        assert!(f.has_unit_scale());
    }

    #[test]
    fn rejects_bad_shapes() {
        assert_eq!(DiagonalForm::new(Vec::<u64>::new()), Err(Error::BadRank(0)));
        assert_eq!(DiagonalForm::new([1, 1, 1, 1, 1]), Err(Error::BadRank(5)));
        assert_eq!(DiagonalForm::new([1, 0]), Err(Error::ZeroCoefficient));
    }

    #[test]
    fn scale_flag() {
        let f = DiagonalForm::new([2, 4, 6, 8]).unwrap();
        assert!(!f.has_unit_scale());
        assert_eq!(f.require_quaternary(), Err(Error::ScaleNotOne(2)));
        let t = DiagonalForm::new([1, 1, 1]).unwrap();
        assert_eq!(t.require_quaternary(), Err(Error::RankNotFour(3)));
    }

    #[test]
    fn parse_and_display() {
        let f: DiagonalForm = "<1, 3,9,9>".parse().unwrap();
        assert_eq!(f.coeffs(), &[1, 3, 9, 9]);
        assert_eq!(f.to_string(), "<1,3,9,9>");
        assert!("1,x".parse::<DiagonalForm>().is_err());
        assert_eq!(f.det_primes(), vec![3]);
    }

    #[test]
    fn eval_vector() {
        let f = DiagonalForm::new([1, 1, 1, 2]).unwrap();
        assert_eq!(f.eval(&[2, 1, 0, 1]), Some(7));
        assert_eq!(f.eval(&[-2, 1, 0, -1]), Some(7));
    }
}
