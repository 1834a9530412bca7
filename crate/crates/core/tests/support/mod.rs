//! Brute-force oracles shared by the property and acceptance suites. None of
//! them calls into the code paths they are used to check.
#![allow(dead_code)]

use qform_core::{
    is_admissible, jordan_exponent, ord, DiagonalForm, Progression, ProgressionUnion,
};

/// Values of `F(x) mod P` over all `x in (Z/P)^n`, as a bit map of length `P`.
pub fn reachable_mod(coeffs: &[u64], modulus: usize) -> Vec<bool> {
    let words = modulus.div_ceil(64);
    let mut reach = vec![0u64; words];
    reach[0] = 1;
    for &c in coeffs {
        let mut seen = vec![false; modulus];
        let mut values = Vec::new();
        for x in 0..modulus as u64 {
            let v = ((c as u128 * x as u128 * x as u128) % modulus as u128) as usize;
            if !seen[v] {
                seen[v] = true;
                values.push(v);
            }
        }
        // doubled copy so that a cyclic shift becomes a plain window read
        let mut doubled = vec![0u64; (2 * modulus).div_ceil(64) + 1];
        for i in 0..modulus {
            if reach[i / 64] >> (i % 64) & 1 == 1 {
                doubled[i / 64] |= 1 << (i % 64);
                let j = i + modulus;
                doubled[j / 64] |= 1 << (j % 64);
            }
        }
        let mut next = vec![0u64; words];
        for v in values {
            // next[i] |= reach[(i - v) mod P] = doubled[i + P - v]
            let start = modulus - v;
            let (ws, bs) = (start / 64, start % 64);
            for (w, slot) in next.iter_mut().enumerate() {
                let lo = doubled[ws + w] >> bs;
                let hi = if bs == 0 {
                    0
                } else {
                    doubled[ws + w + 1] << (64 - bs)
                };
                *slot |= lo | hi;
            }
        }
        let extra = words * 64 - modulus;
        if extra > 0 {
            next[words - 1] &= u64::MAX >> extra;
        }
        reach = next;
    }
    (0..modulus)
        .map(|i| reach[i / 64] >> (i % 64) & 1 == 1)
        .collect()
}

/// Precision at which solvability of `F(x) = a (mod p^k)` decides
/// representability of every `a <= max_a` over `Z_p`:
/// `k >= ord_p(a) + 2 ord_p(2) + 2 jordan + 1`.
pub fn oracle_precision(form: &DiagonalForm, p: u64, max_a: u64) -> u32 {
    let max_ord = (1..=max_a).map(|a| ord(p, a).unwrap()).max().unwrap();
    let two = u32::from(p == 2);
    max_ord + 2 * two + 2 * jordan_exponent(form, p).unwrap() + 1
}

/// `Q(F) ∩ [0, bound]` by nested loops over all vectors.
pub fn naive_represented(coeffs: &[u64], bound: u64) -> Vec<bool> {
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
    let mut out = vec![false; bound as usize + 1];
    go(coeffs, 0, bound, &mut out);
    out
}

/// Minimal cover size by exhaustive subset search over every admissible
/// progression with modulus dividing `m` that lies inside `u`.
pub fn exhaustive_cover_k(u: &ProgressionUnion, m: u64) -> usize {
    assert!(m <= 128, "residue masks are 128 bits");
    let mask_of = |a: u64, d: u64| -> u128 {
        (0..m)
            .filter(|r| r % d == a)
            .fold(0u128, |acc, r| acc | 1 << r)
    };
    let target = u
        .parts()
        .iter()
        .fold(0u128, |acc, p| acc | mask_of(p.offset(), p.modulus()));
    let mut cands = Vec::new();
    for d in (2..=m).filter(|d| m.is_multiple_of(*d)) {
        for a in 1..d {
            let mask = mask_of(a, d);
            if is_admissible(&Progression::new(a, d).unwrap()) && mask & !target == 0 {
                cands.push(mask);
            }
        }
    }
    fn reach(cands: &[u128], start: usize, acc: u128, left: usize, target: u128) -> bool {
        if acc == target {
            return true;
        }
        if left == 0 {
            return false;
        }
        (start..cands.len()).any(|i| reach(cands, i + 1, acc | cands[i], left - 1, target))
    }
    (0..=u.len())
        .find(|&k| reach(&cands, 0, 0, k, target))
        .expect("the input parts themselves are a cover")
}
