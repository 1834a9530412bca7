//! Representability over the p-adic integers and the genus-level excluded set.
//!
//! `locally_represents` decides `a ∈ Q(F ⊗ Z_p)` by valuation descent on a
//! diagonal form `Σ p^{e_i} u_i x_i^2`:
//!
//! * if every `e_i >= 1`, the form and `a` are divided by `p^{min e_i}`;
//! * otherwise solutions split by whether some coordinate with `e_i = 0` is a
//!   unit. Such a solution has a unit gradient entry (up to the factor 2), so
//!   by Hensel's lemma it exists iff one exists modulo `p` (odd `p`) or
//!   modulo 8 (`p = 2`);
//! * in the remaining case every such coordinate is `p y_i`, which replaces
//!   `e_i = 0` by `e_i = 2` and the loop continues.
//!
//! Each round after the first divides `a` by `p`, so the descent stops after at
//! most `2 ord_p(a) + 2` rounds. Only the order and the unit residue of each
//! coefficient are tracked (mod `p`, or mod 8 for `p = 2`).

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::form::DiagonalForm;
use crate::padic::{
    class_to_progressions, is_square_unit_mod, require_prime, split_order, SquareClass,
};
use crate::progressions::ProgressionUnion;

/// Per-prime obstruction summary for a rank 4 form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalReport {
    pub form: DiagonalForm,
    pub p: u64,
    pub jordan_exp: u32,
    pub excluded: Vec<SquareClass>,
}

impl LocalReport {
    /// The excluded classes as positive integer progressions.
    pub fn excluded_union(&self) -> Result<ProgressionUnion> {
        let mut u = ProgressionUnion::empty();
        for c in &self.excluded {
            u.extend(&class_to_progressions(c)?);
        }
        Ok(u)
    }
}

/// `max_i ord_p(a_i)`: the scale exponent of the last Jordan component.
pub fn jordan_exponent(form: &DiagonalForm, p: u64) -> Result<u32> {
    require_prime(p)?;
    Ok(jordan_exp_unchecked(form, p))
}

fn jordan_exp_unchecked(form: &DiagonalForm, p: u64) -> u32 {
    form.coeffs()
        .iter()
        .map(|&c| split_order(p, c as u128).0)
        .max()
        .unwrap_or(0)
}

#[derive(Debug, Clone, Copy)]
struct Term {
    exp: u32,
    unit: u64,
}

pub fn locally_represents(form: &DiagonalForm, p: u64, a: u64) -> Result<bool> {
    require_prime(p)?;
    Ok(represents_unchecked(form, p, a))
}

pub(crate) fn represents_unchecked(form: &DiagonalForm, p: u64, a: u64) -> bool {
    if a == 0 {
        return true;
    }
    let unit_mod = if p == 2 { 8 } else { p as u128 };
    let mut terms: Vec<Term> = form
        .coeffs()
        .iter()
        .map(|&c| {
            let (exp, u) = split_order(p, c as u128);
            Term {
                exp,
                unit: (u % unit_mod) as u64,
            }
        })
        .collect();
    let (mut a_exp, a_unit) = split_order(p, a as u128);
    let a_unit = (a_unit % unit_mod) as u64;

    loop {
        let min = terms.iter().map(|t| t.exp).min().expect("rank >= 1");
        if min > 0 {
            if a_exp < min {
                return false;
            }
            a_exp -= min;
            for t in &mut terms {
                t.exp -= min;
            }
        }
        let found = if p == 2 {
            unit_coordinate_solution_mod8(&terms, a_exp, a_unit)
        } else {
            unit_coordinate_solution_mod_p(&terms, p, a_exp, a_unit)
        };
        if found {
            return true;
        }
        for t in terms.iter_mut().filter(|t| t.exp == 0) {
            t.exp = 2;
        }
    }
}

/// Nonzero `x` over `F_p` in the unit-coefficient variables with
/// `Σ u_i x_i^2 = a (mod p)`.
fn unit_coordinate_solution_mod_p(terms: &[Term], p: u64, a_exp: u32, a_unit: u64) -> bool {
    let units: Vec<u64> = terms
        .iter()
        .filter(|t| t.exp == 0)
        .map(|t| t.unit)
        .collect();
    let target = if a_exp == 0 { a_unit % p } else { 0 };
    match (units.len(), target) {
        (0, _) => false,
        (1, 0) => false,
        (1, t) => is_square_unit_mod(p, (t as u128 * units[0] as u128 % p as u128) as u64),
        (2, 0) => {
            let prod = (units[0] as u128 * units[1] as u128 % p as u128) as u64;
            let minus_prod = (p - prod) % p;
            is_square_unit_mod(p, minus_prod)
        }
        _ => true,
    }
}

/// `x mod 8` with some odd coordinate on a unit coefficient and
/// `Σ 2^{e_i} u_i x_i^2 = a (mod 8)`.
fn unit_coordinate_solution_mod8(terms: &[Term], a_exp: u32, a_unit: u64) -> bool {
    if terms.iter().all(|t| t.exp > 0) {
        return false;
    }
    let coeff = |t: &Term| if t.exp >= 3 { 0 } else { (t.unit << t.exp) % 8 };
    let target = if a_exp >= 3 { 0 } else { (a_unit << a_exp) % 8 };
    // x^2 mod 8 is 0, 1 or 4; only the parity of a unit-coefficient coordinate matters
    let coeffs: Vec<u64> = terms.iter().map(coeff).collect();
    let unit_slot: Vec<bool> = terms.iter().map(|t| t.exp == 0).collect();
    let n = coeffs.len();
    let mut choice = vec![0usize; n];
    const SQUARES: [u64; 3] = [0, 4, 1];
    loop {
        let value: u64 = (0..n).map(|i| coeffs[i] * SQUARES[choice[i]]).sum::<u64>() % 8;
        let has_unit = (0..n).any(|i| unit_slot[i] && choice[i] == 2);
        if has_unit && value == target {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            choice[i] += 1;
            if choice[i] < 3 {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Square classes `p^ell u (Z_p^x)^2` with `ell < jordan_exponent` that the
/// form misses over `Z_p`. Classes with `ell >= jordan_exponent` are always
/// represented by a rank 4 form.
pub fn excluded_squareclasses(form: &DiagonalForm, p: u64) -> Result<LocalReport> {
    require_prime(p)?;
    form.require_quaternary()?;
    let jordan_exp = jordan_exp_unchecked(form, p);
    let mut excluded = Vec::new();
    for ell in 0..jordan_exp {
        for unit in SquareClass::unit_tags(p) {
            let class = SquareClass { p, ell, unit };
            let rep = class
                .representative()
                .ok_or(crate::Error::ModulusTooLarge(p as u128))?;
            if !represents_unchecked(form, p, rep) {
                excluded.push(class);
            }
        }
    }
    Ok(LocalReport {
        form: form.clone(),
        p,
        jordan_exp,
        excluded,
    })
}

/// Primes at which the form can fail to be universal: 2 together with the
/// primes dividing the determinant.
pub fn relevant_primes(form: &DiagonalForm) -> Vec<u64> {
    let mut primes = form.det_primes();
    if !primes.contains(&2) {
        primes.insert(0, 2);
    }
    primes
}

/// `E(gen F)`: the union over relevant primes of the traces of the locally
/// excluded square classes.
pub fn genus_excluded_union(form: &DiagonalForm) -> Result<ProgressionUnion> {
    form.require_quaternary()?;
    let mut u = ProgressionUnion::empty();
    for p in relevant_primes(form) {
        u.extend(&excluded_squareclasses(form, p)?.excluded_union()?);
    }
    Ok(u)
}
