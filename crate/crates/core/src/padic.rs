//! p-adic scalar primitives: orders, unit parts and square classes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::progressions::{Progression, ProgressionUnion};

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u128, b: u128) -> Option<u128> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    let mut x = a;
    let mut y = b;
    while y != 0 {
        (x, y) = (y, x % y);
    }
    (a / x).checked_mul(b)
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Distinct prime factors by trial division, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `(ord_p n, n / p^ord)` without validating `p`.
pub(crate) fn split_order(p: u64, mut n: u128) -> (u32, u128) {
    debug_assert!(n != 0 && p >= 2);
    let p = p as u128;
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    (e, n)
}

/// Largest `e` with `p^e | n`.
pub fn ord(p: u64, n: u64) -> Result<u32> {
    require_prime(p)?;
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    Ok(split_order(p, n as u128).0)
}

/// Euler's criterion `b^((p-1)/2) mod p` for odd prime `p` and `p ∤ b`.
pub(crate) fn is_square_unit_mod(p: u64, b: u64) -> bool {
    pow_mod(b % p, (p - 1) / 2, p) == 1
}

pub(crate) fn least_nonresidue(p: u64) -> u64 {
    (2..p)
        .find(|&b| !is_square_unit_mod(p, b))
        .expect("odd prime has a nonresidue")
}

/// Unit part of a square class: the quadratic character for odd `p`,
/// the residue mod 8 for `p = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum UnitTag {
    Residue,
    Nonresidue,
    Mod8(u8),
}

impl fmt::Display for UnitTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitTag::Residue => write!(f, "R"),
            UnitTag::Nonresidue => write!(f, "NR"),
            UnitTag::Mod8(u) => write!(f, "{u}"),
        }
    }
}

impl From<UnitTag> for String {
    fn from(t: UnitTag) -> Self {
        t.to_string()
    }
}

impl TryFrom<String> for UnitTag {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        match s.as_str() {
            "R" => Ok(UnitTag::Residue),
            "NR" => Ok(UnitTag::Nonresidue),
            "1" | "3" | "5" | "7" => Ok(UnitTag::Mod8(s.parse().unwrap())),
            _ => Err(Error::Parse {
                input: s,
                reason: "unit tag must be R, NR, 1, 3, 5 or 7".into(),
            }),
        }
    }
}

/// The class `p^ell * u * (Z_p^x)^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SquareClass {
    pub p: u64,
    pub ell: u32,
    pub unit: UnitTag,
}

impl SquareClass {
    pub fn new(p: u64, ell: u32, unit: UnitTag) -> Result<Self> {
        require_prime(p)?;
        let ok = match unit {
            UnitTag::Mod8(u) => p == 2 && matches!(u, 1 | 3 | 5 | 7),
            UnitTag::Residue | UnitTag::Nonresidue => p != 2,
        };
        if !ok {
            return Err(Error::Parse {
                input: format!("({p}, {ell}, {unit})"),
                reason: "unit tag does not match the prime".into(),
            });
        }
        Ok(Self { p, ell, unit })
    }

    /// All unit tags for `p`, in canonical order.
    pub fn unit_tags(p: u64) -> Vec<UnitTag> {
        if p == 2 {
            [1, 3, 5, 7].into_iter().map(UnitTag::Mod8).collect()
        } else {
            vec![UnitTag::Residue, UnitTag::Nonresidue]
        }
    }

    /// Unit part of the canonical representative: 1 or the least
    /// nonresidue for odd `p`, `u` itself for `p = 2`.
    pub fn unit_representative(&self) -> u64 {
        match self.unit {
            UnitTag::Residue => 1,
            UnitTag::Nonresidue => least_nonresidue(self.p),
            UnitTag::Mod8(u) => u as u64,
        }
    }

    /// `p^ell * unit_representative()`, `None` on overflow.
    pub fn representative(&self) -> Option<u64> {
        self.p
            .checked_pow(self.ell)?
            .checked_mul(self.unit_representative())
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.ell, self.unit)
    }
}

pub fn squareclass_of(p: u64, a: u64) -> Result<SquareClass> {
    require_prime(p)?;
    if a == 0 {
        return Err(Error::ZeroSquareClass);
    }
    let (ell, b) = split_order(p, a as u128);
    let unit = if p == 2 {
        UnitTag::Mod8((b % 8) as u8)
    } else if is_square_unit_mod(p, (b % p as u128) as u64) {
        UnitTag::Residue
    } else {
        UnitTag::Nonresidue
    };
    Ok(SquareClass { p, ell, unit })
}

pub fn same_squareclass(p: u64, a: u64, b: u64) -> Result<bool> {
    Ok(squareclass_of(p, a)? == squareclass_of(p, b)?)
}

/// The positive integers lying in the square class, as admissible
/// progressions: `(p-1)/2` progressions mod `p^(ell+1)` for odd `p`, one
/// progression mod `2^(ell+3)` for `p = 2`.
pub fn class_to_progressions(c: &SquareClass) -> Result<ProgressionUnion> {
    let overflow = || Error::ModulusTooLarge(c.p as u128);
    let scale = c.p.checked_pow(c.ell).ok_or_else(overflow)?;
    let parts = match c.unit {
        UnitTag::Mod8(u) => {
            let m = scale.checked_mul(8).ok_or_else(overflow)?;
            vec![Progression::new(scale * u as u64, m)?]
        }
        UnitTag::Residue | UnitTag::Nonresidue => {
            let want = c.unit == UnitTag::Residue;
            let m = scale.checked_mul(c.p).ok_or_else(overflow)?;
            (1..c.p)
                .filter(|&e| is_square_unit_mod(c.p, e) == want)
                .map(|e| Progression::new(scale * e, m))
                .collect::<Result<Vec<_>>>()?
        }
    };
    Ok(ProgressionUnion::new(parts))
}
