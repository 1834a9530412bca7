//! Exact global enumeration of the values a diagonal form takes up to a bound.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::form::DiagonalForm;
use crate::progressions::ProgressionUnion;

/// Largest bound accepted by the sieve (12.5 MB of bits).
pub const SIEVE_LIMIT: u64 = 100_000_000;

/// Membership map of `Q(F) ∩ [0, bound]`.
#[derive(Debug, Clone)]
pub struct RepresentedSet {
    form: DiagonalForm,
    bound: u64,
    member: BitSet,
}

impl RepresentedSet {
    pub fn form(&self) -> &DiagonalForm {
        &self.form
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// `false` above the bound.
    pub fn contains(&self, v: u64) -> bool {
        v <= self.bound && self.member.get(v as usize)
    }

    pub fn represented(&self) -> impl Iterator<Item = u64> + '_ {
        self.member.iter_ones().map(|v| v as u64)
    }

    /// Positive integers up to the bound that are not represented, ascending.
    pub fn excluded(&self) -> Vec<u64> {
        (1..=self.bound).filter(|&v| !self.contains(v)).collect()
    }
}

fn check_bound(bound: u64) -> Result<()> {
    if bound == 0 {
        return Err(Error::BoundTooSmall {
            bound,
            reason: "need at least 1".into(),
        });
    }
    if bound > SIEVE_LIMIT {
        return Err(Error::BoundTooLarge {
            bound,
            limit: SIEVE_LIMIT,
        });
    }
    Ok(())
}

/// Values `<= bound` of `Σ c_i x_i^2` for a group of at most two coefficients.
fn small_group(coeffs: &[u64], bound: u64) -> BitSet {
    let mut set = BitSet::new(bound as usize + 1);
    match *coeffs {
        [] => set.set(0),
        [c] => {
            for x in 0.. {
                let v = c * x * x;
                if v > bound {
                    break;
                }
                set.set(v as usize);
            }
        }
        [c, d] => {
            for x in 0.. {
                let vx = c * x * x;
                if vx > bound {
                    break;
                }
                for y in 0.. {
                    let v = vx + d * y * y;
                    if v > bound {
                        break;
                    }
                    set.set(v as usize);
                }
            }
        }
        _ => unreachable!("groups have at most two coefficients"),
    }
    set
}

/// `Q(F) ∩ [0, N]` by a meet-in-the-middle sieve: the two smallest
/// coefficients are materialized as a bit map, the distinct values of the
/// remaining (largest) ones shift it into place.
pub fn represented_upto(form: &DiagonalForm, bound: u64) -> Result<RepresentedSet> {
    check_bound(bound)?;
    let mut sorted = form.coeffs().to_vec();
    sorted.sort_unstable();
    let split = sorted.len().min(2);
    let (low, high) = if sorted.len() <= 2 {
        // rank <= 2: materialize everything but the largest coefficient
        sorted.split_at(sorted.len() - 1)
    } else {
        sorted.split_at(split)
    };
    let base = small_group(low, bound);
    let shifts: Vec<usize> = small_group(high, bound).iter_ones().collect();

    let member = shifts
        .par_chunks(256)
        .fold(
            || BitSet::new(bound as usize + 1),
            |mut acc, chunk| {
                for &s in chunk {
                    acc.or_shifted(&base, s);
                }
                acc
            },
        )
        .reduce(
            || BitSet::new(bound as usize + 1),
            |mut a, b| {
                a.union_with(&b);
                a
            },
        );

    Ok(RepresentedSet {
        form: form.clone(),
        bound,
        member,
    })
}

pub fn excluded_upto(form: &DiagonalForm, bound: u64) -> Result<Vec<u64>> {
    Ok(represented_upto(form, bound)?.excluded())
}

/// A vector `x` with `F(x) = n`, found by bounded search. Coordinates are
/// listed in the form's coefficient order.
pub fn find_representation(form: &DiagonalForm, n: u64) -> Option<Vec<u64>> {
    fn go(coeffs: &[u64], rem: u64, out: &mut Vec<u64>) -> bool {
        match coeffs {
            [] => rem == 0,
            [c] => {
                if !rem.is_multiple_of(*c) {
                    return false;
                }
                let q = rem / c;
                let r = q.isqrt();
                if r * r == q {
                    out.push(r);
                    true
                } else {
                    false
                }
            }
            [c, rest @ ..] => {
                let mut x = 0u64;
                while c * x * x <= rem {
                    out.push(x);
                    if go(rest, rem - c * x * x, out) {
                        return true;
                    }
                    out.pop();
                    x += 1;
                }
                false
            }
        }
    }
    let mut out = Vec::with_capacity(form.rank());
    go(form.coeffs(), n, &mut out).then_some(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictStatus {
    Match,
    Mismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    ClaimedExcludedButRepresented,
    ExcludedButNotClaimed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub n: u64,
    pub kind: WitnessKind,
    /// Representing vector, present for `ClaimedExcludedButRepresented`.
    pub vector: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefixVerdict {
    pub status: VerdictStatus,
    pub bound: u64,
    /// Size of the symmetric difference on `[1, bound]`.
    pub disagreements: u64,
    /// The least disagreements, at most [`MAX_WITNESSES`].
    pub witnesses: Vec<Witness>,
}

pub const MAX_WITNESSES: usize = 10;

/// Compares `E(F) ∩ [1, N]` with `U ∩ [1, N]`.
pub fn verify_union_prefix(
    form: &DiagonalForm,
    claimed: &ProgressionUnion,
    bound: u64,
) -> Result<PrefixVerdict> {
    if bound < claimed.max_modulus() {
        return Err(Error::BoundTooSmall {
            bound,
            reason: format!(
                "must be at least the largest modulus {}",
                claimed.max_modulus()
            ),
        });
    }
    let rep = represented_upto(form, bound)?;
    Ok(compare_prefix(&rep, claimed))
}

pub(crate) fn compare_prefix(rep: &RepresentedSet, claimed: &ProgressionUnion) -> PrefixVerdict {
    let mut witnesses = Vec::new();
    let mut disagreements = 0;
    for n in 1..=rep.bound {
        let excluded = !rep.contains(n);
        let kind = match (claimed.contains(n), excluded) {
            (true, false) => WitnessKind::ClaimedExcludedButRepresented,
            (false, true) => WitnessKind::ExcludedButNotClaimed,
            _ => continue,
        };
        disagreements += 1;
        if witnesses.len() < MAX_WITNESSES {
            let vector = match kind {
                WitnessKind::ClaimedExcludedButRepresented => find_representation(&rep.form, n),
                WitnessKind::ExcludedButNotClaimed => None,
            };
            witnesses.push(Witness { n, kind, vector });
        }
    }
    PrefixVerdict {
        status: if disagreements == 0 {
            VerdictStatus::Match
        } else {
            VerdictStatus::Mismatch
        },
        bound: rep.bound,
        disagreements,
        witnesses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::progressions::Progression;
    use proptest::prelude::*;

    fn form(c: &[u64]) -> DiagonalForm {
        DiagonalForm::new(c.to_vec()).unwrap()
    }

    fn un(parts: &[(u64, u64)]) -> ProgressionUnion {
        parts
            .iter()
            .map(|&(a, m)| Progression::new(a, m).unwrap())
            .collect()
    }

    /// Naive nested loops over all vectors.
    fn naive_represented(coeffs: &[u64], bound: u64) -> Vec<bool> {
        let mut out = vec![false; bound as usize + 1];
        fn go(coeffs: &[u64], acc: u64, bound: u64, out: &mut [bool]) {
            match coeffs.split_first() {
                None => out[acc as usize] = true,
                Some((&c, rest)) => {
                    let mut x = 0u64;
                    while acc + c * x * x <= bound {
                        go(rest, acc + c * x * x, bound, out);
                        x += 1;
                    }
                }
            }
        }
        go(coeffs, 0, bound, &mut out);
        out
    }

    #[test]
    fn four_squares() {
        let rep = represented_upto(&form(&[1, 1, 1, 1]), 100).unwrap();
        assert!((0..=100).all(|v| rep.contains(v)));
        assert!(excluded_upto(&form(&[1, 1, 1, 1]), 50).unwrap().is_empty());
    }

    #[test]
    fn small_ternaries() {
        let rep = represented_upto(&form(&[1, 3, 9]), 10).unwrap();
        assert_eq!(
            rep.represented().collect::<Vec<_>>(),
            vec![0, 1, 3, 4, 7, 9, 10]
        );
        assert_eq!(rep.excluded(), vec![2, 5, 6, 8]);
        assert_eq!(excluded_upto(&form(&[1, 1, 1]), 10).unwrap(), vec![7]);
    }

    #[test]
    fn excluded_examples() {
        assert_eq!(
            excluded_upto(&form(&[1, 3, 9, 9]), 20).unwrap(),
            vec![2, 5, 6, 8, 11, 14, 15, 17, 20]
        );
        assert_eq!(
            excluded_upto(&form(&[1, 1, 1, 8]), 30).unwrap(),
            vec![7, 15, 23]
        );
    }

    #[test]
    fn bound_guards() {
        assert!(matches!(
            represented_upto(&form(&[1]), 0),
            Err(Error::BoundTooSmall { .. })
        ));
        assert!(matches!(
            represented_upto(&form(&[1]), SIEVE_LIMIT + 1),
            Err(Error::BoundTooLarge { .. })
        ));
        assert!(matches!(
            verify_union_prefix(&form(&[1, 1, 1, 8]), &un(&[(7, 8)]), 7),
            Err(Error::BoundTooSmall { .. })
        ));
    }

    #[test]
    fn prefix_examples() {
        let v = verify_union_prefix(&form(&[1, 3, 9, 9]), &un(&[(2, 3), (6, 9)]), 10_000).unwrap();
        assert_eq!(v.status, VerdictStatus::Match);
        assert!(v.witnesses.is_empty());

        let v = verify_union_prefix(&form(&[1, 1, 1, 1]), &ProgressionUnion::empty(), 100).unwrap();
        assert_eq!(v.status, VerdictStatus::Match);

        let f = form(&[1, 2, 3, 4]);
        let v = verify_union_prefix(&f, &un(&[(10, 16)]), 100).unwrap();
        assert_eq!(v.status, VerdictStatus::Mismatch);
        let w = &v.witnesses[0];
        assert_eq!(w.n, 10);
        assert_eq!(w.kind, WitnessKind::ClaimedExcludedButRepresented);
        let x: Vec<i64> = w
            .vector
            .as_ref()
            .unwrap()
            .iter()
            .map(|&c| c as i64)
            .collect();
        assert_eq!(f.eval(&x), Some(10));
    }

    #[test]
    fn unclaimed_exclusions_are_reported() {
        let v = verify_union_prefix(&form(&[1, 1, 1]), &ProgressionUnion::empty(), 40).unwrap();
        assert_eq!(v.status, VerdictStatus::Mismatch);
        let ns: Vec<u64> = v.witnesses.iter().map(|w| w.n).collect();
        assert_eq!(ns, vec![7, 15, 23, 28, 31, 39]);
        assert!(v.witnesses.iter().all(|w| w.vector.is_none()));
    }

    #[test]
    fn representation_search() {
        let f = form(&[1, 1, 1, 2]);
        let x = find_representation(&f, 7).unwrap();
        let xi: Vec<i64> = x.iter().map(|&c| c as i64).collect();
        assert_eq!(f.eval(&xi), Some(7));
        assert_eq!(find_representation(&form(&[1, 1, 1]), 7), None);
    }

    fn arb_form() -> impl Strategy<Value = Vec<u64>> {
        proptest::collection::vec(1u64..=12, 1..=4)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn sieve_matches_naive(coeffs in arb_form(), bound in 1u64..=500) {
            let rep = represented_upto(&form(&coeffs), bound).unwrap();
            let naive = naive_represented(&coeffs, bound);
            for v in 0..=bound {
                prop_assert_eq!(rep.contains(v), naive[v as usize], "v = {}", v);
            }
        }

        #[test]
        fn ternary_values_persist_in_quaternary(abc in proptest::collection::vec(1u64..=10, 3), d in 1u64..=40) {
            let t = represented_upto(&form(&abc), 2000).unwrap();
            let mut q = abc.clone();
            q.push(d);
            let q = represented_upto(&form(&q), 2000).unwrap();
            prop_assert!(t.represented().all(|v| q.contains(v)));
        }

        #[test]
        fn scaling(coeffs in proptest::collection::vec(1u64..=10, 4), t in 1u64..=6) {
            const N: u64 = 3000;
            let scaled: Vec<u64> = coeffs.iter().map(|c| c * t).collect();
            let big = represented_upto(&form(&scaled), N).unwrap();
            let small = represented_upto(&form(&coeffs), N / t).unwrap();
            for v in 0..=N {
                prop_assert_eq!(big.contains(v), v % t == 0 && small.contains(v / t));
            }
        }
    }
}
