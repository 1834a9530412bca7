//! Arithmetic progressions `A_{a,m} = {a + m*x : x >= 0}` with `0 < a < m`,
//! and finite unions of them.
//!
//! Because `a < m`, a progression is exactly the set of positive integers in
//! one residue class mod `m`, so unions can be compared through residue sets
//! modulo the lcm of their moduli.

mod cover;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::padic::{lcm, prime_factors, require_prime, split_order};

pub use cover::{minimal_cover, minimal_cover_over, CoverCertificate, CoverResult};

/// Largest lcm for which residue sets are materialized.
pub const RESIDUE_LIMIT: u128 = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawProgression")]
pub struct Progression {
    a: u64,
    m: u64,
}

#[derive(Deserialize)]
struct RawProgression {
    a: u64,
    m: u64,
}

impl TryFrom<RawProgression> for Progression {
    type Error = Error;

    fn try_from(raw: RawProgression) -> Result<Self> {
        Self::new(raw.a, raw.m)
    }
}

impl Progression {
    pub fn new(a: u64, m: u64) -> Result<Self> {
        if a == 0 || a >= m {
            return Err(Error::InvalidProgression { a, m });
        }
        Ok(Self { a, m })
    }

    pub fn offset(&self) -> u64 {
        self.a
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn contains(&self, n: u64) -> bool {
        n > 0 && n % self.m == self.a
    }

    /// The first prime `p | m` with `ord_p a >= ord_p m`, if any.
    pub fn inadmissible_prime(&self) -> Option<u64> {
        prime_factors(self.m).into_iter().find(|&p| {
            let (ea, _) = split_order(p, self.a as u128);
            let (em, _) = split_order(p, self.m as u128);
            ea >= em
        })
    }

    /// Sort key used for every canonical ordering: modulus, then offset.
    fn key(&self) -> (u64, u64) {
        (self.m, self.a)
    }
}

impl PartialOrd for Progression {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Progression {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for Progression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.a, self.m)
    }
}

impl FromStr for Progression {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let (a, m) = s
            .split_once(',')
            .ok_or_else(|| parse_err("expected \"a,m\""))?;
        let a = a.trim().parse().map_err(|_| parse_err("bad offset"))?;
        let m = m.trim().parse().map_err(|_| parse_err("bad modulus"))?;
        Self::new(a, m)
    }
}

/// `ord_p a < ord_p m` for every prime `p | m`.
pub fn is_admissible(prog: &Progression) -> bool {
    prog.inadmissible_prime().is_none()
}

/// A finite union of progressions. Parts are kept sorted and deduplicated.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<Progression>", into = "Vec<Progression>")]
pub struct ProgressionUnion {
    parts: Vec<Progression>,
}

impl ProgressionUnion {
    pub fn new(parts: impl IntoIterator<Item = Progression>) -> Self {
        let mut parts: Vec<_> = parts.into_iter().collect();
        parts.sort();
        parts.dedup();
        Self { parts }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[Progression] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.parts.iter().any(|p| p.contains(n))
    }

    pub fn extend(&mut self, other: &ProgressionUnion) {
        self.parts.extend_from_slice(&other.parts);
        self.parts.sort();
        self.parts.dedup();
    }

    pub fn max_modulus(&self) -> u64 {
        self.parts.iter().map(|p| p.m).max().unwrap_or(1)
    }

    /// lcm of all moduli (1 for the empty union).
    pub fn lcm_modulus(&self) -> Result<u64> {
        let l = self
            .parts
            .iter()
            .try_fold(1u128, |acc, p| lcm(acc, p.m as u128))
            .ok_or(Error::ModulusTooLarge(u128::MAX))?;
        u64::try_from(l).map_err(|_| Error::ModulusTooLarge(l))
    }

    pub fn check_admissible(&self) -> Result<()> {
        for p in &self.parts {
            if let Some(q) = p.inadmissible_prime() {
                return Err(Error::Inadmissible {
                    a: p.a,
                    m: p.m,
                    p: q,
                });
            }
        }
        Ok(())
    }

    /// Residue classes mod `modulus` covered by the union; `modulus` must be
    /// a multiple of every part modulus.
    pub(crate) fn residue_set(&self, modulus: u64) -> Result<BitSet> {
        if modulus as u128 > RESIDUE_LIMIT {
            return Err(Error::ModulusTooLarge(modulus as u128));
        }
        let mut set = BitSet::new(modulus as usize);
        for p in &self.parts {
            debug_assert_eq!(modulus % p.m, 0);
            let mut r = p.a;
            while r < modulus {
                set.set(r as usize);
                r += p.m;
            }
        }
        Ok(set)
    }

    /// The sorted residues `r in [0, lcm)` whose positive class lies in the union.
    pub fn residues(&self) -> Result<(u64, Vec<u64>)> {
        let m = self.lcm_modulus()?;
        let set = self.residue_set(m)?;
        Ok((m, set.iter_ones().map(|r| r as u64).collect()))
    }
}

impl From<Vec<Progression>> for ProgressionUnion {
    fn from(v: Vec<Progression>) -> Self {
        Self::new(v)
    }
}

impl From<ProgressionUnion> for Vec<Progression> {
    fn from(u: ProgressionUnion) -> Self {
        u.parts
    }
}

impl FromIterator<Progression> for ProgressionUnion {
    fn from_iter<I: IntoIterator<Item = Progression>>(iter: I) -> Self {
        Self::new(iter)
    }
}

impl fmt::Display for ProgressionUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for ProgressionUnion {
    type Err = Error;

    /// `"a1,m1;a2,m2;..."`; the empty string is the empty union.
    fn from_str(s: &str) -> Result<Self> {
        s.split(';')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect()
    }
}

/// Splits `A_{a,m}` into the `p` progressions `A_{a+jm, pm}`, `0 <= j < p`.
pub fn refine(prog: &Progression, p: u64) -> Result<ProgressionUnion> {
    require_prime(p)?;
    let m = prog
        .m
        .checked_mul(p)
        .ok_or(Error::ModulusTooLarge(prog.m as u128 * p as u128))?;
    (0..p)
        .map(|j| Progression::new((prog.a + j * prog.m) % m, m))
        .collect()
}

pub fn union_contains(u: &ProgressionUnion, n: u64) -> bool {
    u.contains(n)
}

/// Exact set equality over the positive integers.
pub fn unions_equal(u1: &ProgressionUnion, u2: &ProgressionUnion) -> Result<bool> {
    let m1 = u1.lcm_modulus()?;
    let m2 = u2.lcm_modulus()?;
    let m = lcm(m1 as u128, m2 as u128).ok_or(Error::ModulusTooLarge(u128::MAX))?;
    let m = u64::try_from(m).map_err(|_| Error::ModulusTooLarge(m))?;
    Ok(u1.residue_set(m)? == u2.residue_set(m)?)
}

/// Whether every positive integer of `inner` lies in `outer`.
pub fn union_subset(inner: &ProgressionUnion, outer: &ProgressionUnion) -> Result<bool> {
    let m = lcm(inner.lcm_modulus()? as u128, outer.lcm_modulus()? as u128)
        .ok_or(Error::ModulusTooLarge(u128::MAX))?;
    let m = u64::try_from(m).map_err(|_| Error::ModulusTooLarge(m))?;
    Ok(inner.residue_set(m)?.is_subset(&outer.residue_set(m)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ap(a: u64, m: u64) -> Progression {
        Progression::new(a, m).unwrap()
    }

    fn un(parts: &[(u64, u64)]) -> ProgressionUnion {
        parts.iter().map(|&(a, m)| ap(a, m)).collect()
    }

    #[test]
    fn construction() {
        assert!(Progression::new(0, 3).is_err());
        assert!(Progression::new(3, 3).is_err());
        assert!(Progression::new(5, 3).is_err());
        assert!(ap(2, 3).contains(2) && ap(2, 3).contains(5) && !ap(2, 3).contains(3));
    }

    #[test]
    fn admissibility_examples() {
        assert!(is_admissible(&ap(2, 3)));
        assert!(is_admissible(&ap(6, 9)));
        assert!(!is_admissible(&ap(2, 6)));
        assert_eq!(ap(2, 6).inadmissible_prime(), Some(2));
        assert!(is_admissible(&ap(7, 8)));
        assert!(is_admissible(&ap(10, 16)));
    }

    #[test]
    fn refine_examples() {
        assert_eq!(refine(&ap(3, 4), 2).unwrap(), un(&[(3, 8), (7, 8)]));
        assert_eq!(refine(&ap(2, 3), 3).unwrap(), un(&[(2, 9), (5, 9), (8, 9)]));
        assert_eq!(refine(&ap(7, 8), 2).unwrap(), un(&[(7, 16), (15, 16)]));
        assert!(refine(&ap(7, 8), 4).is_err());
    }

    #[test]
    fn contains_examples() {
        assert!(union_contains(&un(&[(2, 3), (6, 9)]), 15));
        assert!(union_contains(&un(&[(7, 8)]), 23));
        assert!(!union_contains(&ProgressionUnion::empty(), 1));
    }

    #[test]
    fn equality_examples() {
        assert!(unions_equal(&un(&[(3, 4)]), &un(&[(3, 8), (7, 8)])).unwrap());
        assert!(
            unions_equal(&un(&[(3, 4)]), &un(&[(3, 16), (7, 16), (11, 16), (15, 16)])).unwrap()
        );
        assert!(unions_equal(&ProgressionUnion::empty(), &ProgressionUnion::empty()).unwrap());
        assert!(!unions_equal(&un(&[(2, 3)]), &un(&[(2, 9)])).unwrap());
        assert!(union_subset(&un(&[(2, 9)]), &un(&[(2, 3)])).unwrap());
        assert!(!union_subset(&un(&[(2, 3)]), &un(&[(2, 9)])).unwrap());
    }

    #[test]
    fn text_syntax() {
        let u: ProgressionUnion = "6,9; 2,3;2,3".parse().unwrap();
        assert_eq!(u, un(&[(2, 3), (6, 9)]));
        assert_eq!(u.to_string(), "2,3;6,9");
        assert_eq!(
            "".parse::<ProgressionUnion>().unwrap(),
            ProgressionUnion::empty()
        );
        assert!("2;3".parse::<ProgressionUnion>().is_err());
        assert!("4,3".parse::<ProgressionUnion>().is_err());
    }

    #[test]
    fn admissibility_check_names_prime() {
        let u = un(&[(2, 3), (2, 6)]);
        assert_eq!(
            u.check_admissible(),
            Err(Error::Inadmissible { a: 2, m: 6, p: 2 })
        );
    }

    fn arb_progression() -> impl Strategy<Value = Progression> {
        (2u64..200).prop_flat_map(|m| (1..m).prop_map(move |a| ap(a, m)))
    }

    fn small_progression() -> impl Strategy<Value = Progression> {
        (2u64..=24).prop_flat_map(|m| (1..m).prop_map(move |a| ap(a, m)))
    }

    proptest! {
        #[test]
        fn refine_preserves_membership(prog in arb_progression(), pi in 0usize..4) {
            let p = [2u64, 3, 5, 7][pi];
            let r = refine(&prog, p).unwrap();
            prop_assert_eq!(r.len(), p as usize);
            for n in 1..=10_000 {
                prop_assert_eq!(r.contains(n), prog.contains(n));
            }
            if prog.modulus() % p == 0 && is_admissible(&prog) {
                prop_assert!(r.parts().iter().all(is_admissible));
            }
        }

        #[test]
        fn equality_is_semantic(parts in proptest::collection::vec(small_progression(), 0..4),
                                others in proptest::collection::vec(small_progression(), 0..4)) {
            let u1 = ProgressionUnion::new(parts);
            let u2 = ProgressionUnion::new(others);
            let period = lcm(u1.lcm_modulus().unwrap() as u128, u2.lcm_modulus().unwrap() as u128).unwrap() as u64;
            prop_assume!(period <= 100_000);
            let brute = (1..=2 * period).all(|n| u1.contains(n) == u2.contains(n));
            prop_assert_eq!(unions_equal(&u1, &u2).unwrap(), brute);
        }
    }
}
