//! Prime-field elimination and certified multi-modular rank computation.
//!
//! Ranks are computed modulo several independent random primes in
//! `(2^30, 2^31)`. A rank can only drop under reduction mod p, so agreement
//! across all sampled primes certifies the rational value with overwhelming
//! probability; kernels and echelons are always recomputed rationally, the
//! modular pass only supplies the rank and the pivot profile.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::elim::{eliminate, ElimOps, Elimination, IntRow, PivotRule};
use super::LinalgError;

/// Retry rounds before giving up on certification.
const PRIME_ROUNDS: usize = 3;

/// Fixed stream seed so every run samples the same primes and reports are
/// byte-identical across runs and thread counts.
const PRIME_SEED: u64 = 0x706f_6c65_7370_6563;

pub(crate) struct ModOps {
    pub p: u64,
}

impl ModOps {
    fn mul(&self, a: u64, b: u64) -> u64 {
        (a as u128 * b as u128 % self.p as u128) as u64
    }

    fn inv(&self, a: u64) -> u64 {
        // Fermat: p is prime and a != 0 mod p.
        let mut base = a % self.p;
        let mut exp = self.p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

impl ElimOps for ModOps {
    type C = u64;

    fn row_eliminate(
        &self,
        target: &[(usize, u64)],
        tval: &u64,
        piv: &[(usize, u64)],
        pval: &u64,
        skip_col: usize,
    ) -> Vec<(usize, u64)> {
        // target - (tval/pval) * piv
        let factor = self.mul(*tval, self.inv(*pval));
        let p = self.p;
        super::elim::merge_rows(target, piv, skip_col, |t, pv| {
            let t = t.copied().unwrap_or(0);
            let pv = pv.copied().unwrap_or(0);
            (t + p - self.mul(factor, pv)) % p
        })
    }
}

fn is_prime_u64(n: u64) -> bool {
    // Deterministic Miller-Rabin for n < 3_215_031_751 with bases 2, 3, 5, 7.
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7] {
        let mut x = 1u64;
        let mut base = a % n;
        let mut e = d;
        while e > 0 {
            if e & 1 == 1 {
                x = (x as u128 * base as u128 % n as u128) as u64;
            }
            base = (base as u128 * base as u128 % n as u128) as u64;
            e >>= 1;
        }
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = (x as u128 * x as u128 % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Sample `count` distinct primes in `(2^30, 2^31)` from the fixed stream,
/// skipping the first `skip` sampled primes (used by retry rounds).
pub(crate) fn sample_primes(count: usize, skip: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(PRIME_SEED);
    let mut primes = Vec::new();
    while primes.len() < skip + count {
        let candidate = rng.gen_range((1u64 << 30) + 1..(1u64 << 31)) | 1;
        if is_prime_u64(candidate) && !primes.contains(&candidate) {
            primes.push(candidate);
        }
    }
    primes.split_off(skip)
}

fn reduce_row_mod_p(row: &IntRow, p: u64) -> Vec<(usize, u64)> {
    let pb = BigInt::from(p);
    row.iter()
        .filter_map(|(c, v)| {
            let r = v.mod_floor(&pb).to_u64().expect("residue fits u64");
            (r != 0).then_some((*c, r))
        })
        .collect()
}

pub(crate) struct CertifiedRank {
    pub rank: usize,
    /// Pivot profile, present only when it agreed across all primes.
    pub profile: Option<Vec<(usize, usize)>>,
}

/// Rank of integer rows certified by agreement across `num_primes` primes.
pub(crate) fn certified_rank(
    rows: &[(usize, IntRow)],
    ncols: usize,
    num_primes: usize,
    rule: PivotRule,
) -> Result<CertifiedRank, LinalgError> {
    let num_primes = num_primes.max(1);
    for round in 0..PRIME_ROUNDS {
        let primes = sample_primes(num_primes, round * num_primes);
        let mut runs: Vec<Elimination<u64>> = Vec::with_capacity(num_primes);
        for &p in &primes {
            let ops = ModOps { p };
            let mod_rows: Vec<(usize, Vec<(usize, u64)>)> = rows
                .iter()
                .map(|(id, r)| (*id, reduce_row_mod_p(r, p)))
                .collect();
            runs.push(eliminate(mod_rows, ncols, None, rule, &ops));
        }
        let rank = runs[0].rank();
        if runs.iter().all(|e| e.rank() == rank) {
            let profile_agrees = runs.iter().all(|e| e.pivots == runs[0].pivots);
            return Ok(CertifiedRank {
                rank,
                profile: profile_agrees.then(|| runs[0].pivots.clone()),
            });
        }
    }
    Err(LinalgError::ModularUncertified {
        rounds: PRIME_ROUNDS,
    })
}
