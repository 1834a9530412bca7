//! Minimum number of admissible progressions whose union is a given union.
//!
//! Every admissible progression inside the union coarsens, without leaving
//! the union, to one whose modulus divides the lcm `M` of the input moduli,
//! so the search runs over residue sets of `Z/M`:
//!
//! 1. enumerate admissible `A_{b,d}` with `d | M` whose trace lies in the
//!    union `S`,
//! 2. drop candidates strictly contained in another candidate,
//! 3. compress `S` into atoms (residues covered by the same candidates),
//! 4. iterative-deepening branch and bound on the atoms.

use serde::{Deserialize, Serialize};

use super::{Progression, ProgressionUnion};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::padic::{prime_factors, split_order};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCertificate {
    /// Modulus of the residue space searched.
    pub modulus: u64,
    /// Residues mod `modulus` making up the union.
    pub residues: Vec<u64>,
    /// Admissible progressions inside the union that are maximal under inclusion.
    pub maximal_candidates: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverResult {
    pub k: usize,
    pub cover: Vec<Progression>,
    pub certificate: CoverCertificate,
}

pub fn minimal_cover(u: &ProgressionUnion) -> Result<CoverResult> {
    let m = u.lcm_modulus()?;
    minimal_cover_over(u, m)
}

/// Like [`minimal_cover`] but with candidate moduli ranging over the divisors
/// of `modulus`, which must be a multiple of every part modulus.
pub fn minimal_cover_over(u: &ProgressionUnion, modulus: u64) -> Result<CoverResult> {
    u.check_admissible()?;
    if u.parts()
        .iter()
        .any(|p| !modulus.is_multiple_of(p.modulus()))
    {
        return Err(Error::Invariant(format!(
            "search modulus {modulus} is not a multiple of the union moduli"
        )));
    }
    let target = u.residue_set(modulus)?;
    let residues: Vec<u64> = target.iter_ones().map(|r| r as u64).collect();

    let candidates = maximal(candidates_within(&target, modulus));
    let (atom_sets, n_atoms) = atomize(&target, modulus, &candidates);
    let chosen = search(&atom_sets, n_atoms);

    let cover: Vec<Progression> = chosen.into_iter().map(|i| candidates[i]).collect();
    Ok(CoverResult {
        k: cover.len(),
        cover,
        certificate: CoverCertificate {
            modulus,
            residues,
            maximal_candidates: candidates.len(),
        },
    })
}

fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for p in prime_factors(n) {
        let (e, _) = split_order(p, n as u128);
        let base = divs.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            divs.extend(base.iter().map(|d| d * pk));
        }
    }
    divs.sort_unstable();
    divs
}

fn admissible(b: u64, d: u64, primes: &[u64]) -> bool {
    primes
        .iter()
        .filter(|&&p| d.is_multiple_of(p))
        .all(|&p| split_order(p, b as u128).0 < split_order(p, d as u128).0)
}

/// Admissible progressions with modulus dividing `modulus` lying inside `target`,
/// ordered by modulus then offset.
fn candidates_within(target: &BitSet, modulus: u64) -> Vec<Progression> {
    let primes = prime_factors(modulus);
    let mut out = Vec::new();
    for d in divisors(modulus).into_iter().filter(|&d| d > 1) {
        for b in 1..d {
            if !target.get(b as usize) || !admissible(b, d, &primes) {
                continue;
            }
            let inside = (b..modulus)
                .step_by(d as usize)
                .all(|r| target.get(r as usize));
            if inside {
                out.push(Progression { a: b, m: d });
            }
        }
    }
    out
}

/// Removes candidates contained in a coarser candidate. `A_{b,d}` lies in
/// `A_{b',d'}` exactly when `d' | d` and `b ≡ b' (mod d')`.
fn maximal(cands: Vec<Progression>) -> Vec<Progression> {
    cands
        .iter()
        .filter(|c| {
            !cands
                .iter()
                .any(|o| o.m < c.m && c.m % o.m == 0 && c.a % o.m == o.a)
        })
        .copied()
        .collect()
}

/// Groups the residues of `target` by the set of candidates containing them.
/// Returns each candidate's atom set and the atom count.
fn atomize(target: &BitSet, modulus: u64, cands: &[Progression]) -> (Vec<BitSet>, usize) {
    use std::collections::HashMap;

    let mut signature: Vec<BitSet> = vec![BitSet::new(cands.len()); target.len()];
    for (ci, c) in cands.iter().enumerate() {
        for r in (c.a..modulus).step_by(c.m as usize) {
            signature[r as usize].set(ci);
        }
    }
    let mut atom_of: HashMap<&BitSet, usize> = HashMap::new();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); cands.len()];
    for r in target.iter_ones() {
        let next = atom_of.len();
        let atom = *atom_of.entry(&signature[r]).or_insert_with(|| {
            for ci in signature[r].iter_ones() {
                members[ci].push(next);
            }
            next
        });
        debug_assert!(atom <= next);
    }
    let n_atoms = atom_of.len();
    let sets = members
        .into_iter()
        .map(|atoms| {
            let mut s = BitSet::new(n_atoms);
            for a in atoms {
                s.set(a);
            }
            s
        })
        .collect();
    (sets, n_atoms)
}

/// Smallest set of candidate indices covering every atom. Depths are tried in
/// increasing order and branches follow candidate order, so the first cover
/// found is both minimum and deterministic.
fn search(sets: &[BitSet], n_atoms: usize) -> Vec<usize> {
    let mut uncovered = BitSet::new(n_atoms);
    for a in 0..n_atoms {
        uncovered.set(a);
    }
    if n_atoms == 0 {
        return Vec::new();
    }
    let covering: Vec<Vec<usize>> = (0..n_atoms)
        .map(|a| (0..sets.len()).filter(|&c| sets[c].get(a)).collect())
        .collect();
    let mut chosen = Vec::new();
    for depth in 1..=sets.len() {
        if dfs(sets, &covering, &uncovered, depth, &mut chosen) {
            return chosen;
        }
    }
    unreachable!("the maximal candidates always cover the union")
}

fn dfs(
    sets: &[BitSet],
    covering: &[Vec<usize>],
    uncovered: &BitSet,
    depth: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    let remaining = uncovered.count_ones();
    if remaining == 0 {
        return true;
    }
    if depth == 0 {
        return false;
    }
    let best_gain = sets
        .iter()
        .map(|s| s.intersection_count(uncovered))
        .max()
        .unwrap_or(0);
    if best_gain * depth < remaining {
        return false;
    }
    // branch on the uncovered atom with the fewest covering candidates
    let pivot = uncovered
        .iter_ones()
        .min_by_key(|&a| covering[a].len())
        .expect("nonempty");
    for &c in &covering[pivot] {
        let mut next = uncovered.clone();
        next.difference_with(&sets[c]);
        chosen.push(c);
        if dfs(sets, covering, &next, depth - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}
