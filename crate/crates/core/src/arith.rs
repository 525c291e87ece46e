//! Integer arithmetic behind the Bohr correspondence.
//!
//! Primes are indexed from 1, so `p_1 = 2`, `p_2 = 3`, and a positive integer
//! `n = ∏ p_j^{κ_j}` is identified with its multi-index `κ(n)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::{Error, Result};

/// Number of primes in the table shared by the free functions of this module.
/// Covers every integer whose prime factors are at most 1 299 709.
pub const DEFAULT_TABLE_SIZE: usize = 100_000;

/// Exponent vector `κ(n)` with trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        Self(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// `|κ| = Σ κ_j`, which equals `Ω(n)`.
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Index of the largest prime involved (0 for the empty index).
    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// The first `len()` primes in increasing order, immutable once built.
#[derive(Clone, Debug)]
pub struct PrimeTable {
    primes: Vec<u64>,
    logs: Vec<f64>,
}

/// First `count` primes by a sieve of Eratosthenes.
pub fn sieve_primes(count: usize) -> PrimeTable {
    let count = count.max(1);
    // Rosser's bound p_n < n (ln n + ln ln n) for n >= 6.
    let limit = if count < 6 {
        15
    } else {
        let n = count as f64;
        (n * (n.ln() + n.ln().ln())).ceil() as usize + 1
    };
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::with_capacity(count);
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        if primes.len() == count {
            break;
        }
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    debug_assert_eq!(primes.len(), count);
    let logs = primes.iter().map(|&p| (p as f64).ln()).collect();
    PrimeTable { primes, logs }
}

impl PrimeTable {
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn largest(&self) -> u64 {
        *self.primes.last().expect("table is never empty")
    }

    /// `p_j` with 1-based `j`.
    pub fn prime(&self, j: usize) -> Result<u64> {
        j.checked_sub(1)
            .and_then(|i| self.primes.get(i).copied())
            .ok_or(Error::PrimeIndexOutOfRange(j))
    }

    /// `log p_j` with 1-based `j`.
    pub fn log_prime(&self, j: usize) -> Result<f64> {
        j.checked_sub(1)
            .and_then(|i| self.logs.get(i).copied())
            .ok_or(Error::PrimeIndexOutOfRange(j))
    }

    /// 1-based index of the prime `p`, if it is in the table.
    pub fn index_of(&self, p: u64) -> Option<usize> {
        self.primes.binary_search(&p).ok().map(|i| i + 1)
    }

    /// `κ(n)` by trial division against the table.
    pub fn factorize(&self, n: u64) -> Result<MultiIndex> {
        if n == 0 {
            return Err(Error::Zero);
        }
        let mut rest = n;
        let mut exponents = Vec::new();
        for (i, &p) in self.primes.iter().enumerate() {
            if rest == 1 {
                break;
            }
            if p.saturating_mul(p) > rest {
                let j = self.index_of(rest).ok_or(Error::OutOfRange(n))?;
                exponents.resize(j, 0);
                exponents[j - 1] += 1;
                rest = 1;
                break;
            }
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            if e > 0 {
                exponents.resize(i + 1, 0);
                exponents[i] = e;
            }
        }
        if rest != 1 {
            return Err(Error::OutOfRange(n));
        }
        Ok(MultiIndex::new(exponents))
    }

    /// `Ω(n)`, the number of prime factors counted with multiplicity.
    pub fn omega(&self, n: u64) -> Result<u32> {
        Ok(self.factorize(n)?.order())
    }

    /// `d(n) = ∏ (κ_j + 1)`.
    pub fn divisor_count(&self, n: u64) -> Result<u64> {
        Ok(self
            .factorize(n)?
            .exponents()
            .iter()
            .map(|&e| u64::from(e) + 1)
            .product())
    }

    /// `log n` as `Σ κ_j log p_j`, never as the float logarithm of `n`.
    pub fn log(&self, n: u64) -> Result<f64> {
        let kappa = self.factorize(n)?;
        Ok(self.log_of_index(&kappa))
    }

    pub fn log_of_index(&self, kappa: &MultiIndex) -> f64 {
        kappa
            .exponents()
            .iter()
            .zip(&self.logs)
            .map(|(&e, &l)| f64::from(e) * l)
            .sum()
    }

    /// Inverse of the Bohr lift: `∏ p_j^{κ_j}`.
    pub fn bohr_drop(&self, kappa: &MultiIndex) -> Result<u64> {
        let mut n: u64 = 1;
        for (j, &e) in kappa.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let p = self.prime(j + 1)?;
            for _ in 0..e {
                n = n.checked_mul(p).ok_or(Error::Overflow)?;
            }
        }
        Ok(n)
    }

    /// All divisors of `n`, increasing, enumerated over the lattice `0 ≤ μ ≤ κ(n)`.
    pub fn divisors(&self, n: u64) -> Result<Vec<u64>> {
        let kappa = self.factorize(n)?;
        let mut divisors = vec![1u64];
        for (j, &e) in kappa.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let p = self.primes[j];
            let base = divisors.len();
            let mut power = 1;
            for _ in 0..e {
                power *= p;
                for i in 0..base {
                    divisors.push(divisors[i] * power);
                }
            }
        }
        divisors.sort_unstable();
        Ok(divisors)
    }

    /// Ordered factorizations `n = m · (n/m)` with both factors at least `min_factor`,
    /// sorted by `m`.
    pub fn divisor_pairs(&self, n: u64, min_factor: u64) -> Result<Vec<(u64, u64)>> {
        Ok(self
            .divisors(n)?
            .into_iter()
            .map(|m| (m, n / m))
            .filter(|&(m, k)| m >= min_factor && k >= min_factor)
            .collect())
    }
}

/// Table of the first [`DEFAULT_TABLE_SIZE`] primes, built on first use.
pub fn default_table() -> &'static PrimeTable {
    static TABLE: OnceLock<PrimeTable> = OnceLock::new();
    TABLE.get_or_init(|| sieve_primes(DEFAULT_TABLE_SIZE))
}

pub fn factorize(n: u64) -> Result<MultiIndex> {
    default_table().factorize(n)
}

pub fn omega(n: u64) -> Result<u32> {
    default_table().omega(n)
}

pub fn divisor_count(n: u64) -> Result<u64> {
    default_table().divisor_count(n)
}

pub fn log_n(n: u64) -> Result<f64> {
    default_table().log(n)
}

pub fn divisor_pairs(n: u64, min_factor: u64) -> Result<Vec<(u64, u64)>> {
    default_table().divisor_pairs(n, min_factor)
}

/// `κ(n)`: the Bohr lift of the monomial `n^{-s}`.
pub fn bohr_lift(n: u64) -> Result<MultiIndex> {
    factorize(n)
}

pub fn bohr_drop(kappa: &MultiIndex) -> Result<u64> {
    default_table().bohr_drop(kappa)
}

/// Memoized [`divisor_pairs`] for repeated lookups during matrix assembly.
#[derive(Debug, Default)]
pub struct DivisorCache {
    min_factor: u64,
    pairs: HashMap<u64, Vec<(u64, u64)>>,
}

impl DivisorCache {
    pub fn new(min_factor: u64) -> Self {
        Self {
            min_factor,
            pairs: HashMap::new(),
        }
    }

    pub fn pairs(&mut self, n: u64) -> Result<&[(u64, u64)]> {
        if !self.pairs.contains_key(&n) {
            let pairs = divisor_pairs(n, self.min_factor)?;
            self.pairs.insert(n, pairs);
        }
        Ok(&self.pairs[&n])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn sieve_small_counts() {
        assert_eq!(sieve_primes(5).primes(), &[2, 3, 5, 7, 11]);
        assert_eq!(sieve_primes(1).primes(), &[2]);
        assert_eq!(sieve_primes(10).largest(), 29);
        assert_eq!(sieve_primes(10_000).largest(), 104_729);
    }

    #[test]
    fn sieve_entries_are_prime_and_increasing() {
        let table = sieve_primes(2000);
        assert_eq!(table.prime(1).unwrap(), 2);
        assert!(table.primes().windows(2).all(|w| w[0] < w[1]));
        assert!(table.primes().iter().all(|&p| is_prime(p)));
        // no prime skipped
        let count = (2..=table.largest()).filter(|&n| is_prime(n)).count();
        assert_eq!(count, table.len());
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).unwrap().is_empty());
        assert_eq!(factorize(12).unwrap().exponents(), &[2, 1]);
        assert_eq!(factorize(45_000).unwrap().exponents(), &[3, 2, 4]);
        assert!(matches!(factorize(0), Err(Error::Zero)));
        assert_eq!(factorize(12).unwrap().to_string(), "(2,1)");
    }

    #[test]
    fn factorize_beyond_table_is_rejected() {
        let table = sieve_primes(4);
        assert_eq!(table.factorize(49).unwrap().exponents(), &[0, 0, 0, 2]);
        assert!(matches!(table.factorize(11), Err(Error::OutOfRange(11))));
        assert!(matches!(table.factorize(121), Err(Error::OutOfRange(121))));
    }

    #[test]
    fn omega_and_divisor_count_examples() {
        assert_eq!(omega(1).unwrap(), 0);
        assert_eq!(omega(12).unwrap(), 3);
        for p in [2, 3, 97, 7919] {
            assert_eq!(omega(p).unwrap(), 1);
            assert_eq!(divisor_count(p * p).unwrap(), 3);
        }
        assert_eq!(divisor_count(1).unwrap(), 1);
        assert_eq!(divisor_count(12).unwrap(), 6);
        assert!(omega(0).is_err());
        assert!(divisor_count(0).is_err());
    }

    #[test]
    fn divisor_pairs_examples() {
        assert_eq!(
            divisor_pairs(6, 1).unwrap(),
            vec![(1, 6), (2, 3), (3, 2), (6, 1)]
        );
        assert_eq!(divisor_pairs(6, 2).unwrap(), vec![(2, 3), (3, 2)]);
        assert!(divisor_pairs(13, 2).unwrap().is_empty());
        assert_eq!(divisor_pairs(1, 1).unwrap(), vec![(1, 1)]);
    }

    #[test]
    fn semiprime_pairs_are_disjoint() {
        let table = default_table();
        for i in 1..30 {
            for j in (i + 1)..30 {
                let (p, q) = (table.prime(i).unwrap(), table.prime(j).unwrap());
                assert_eq!(divisor_pairs(p * q, 2).unwrap(), vec![(p, q), (q, p)]);
            }
        }
    }

    #[test]
    fn bohr_examples() {
        assert_eq!(bohr_drop(&MultiIndex::new(vec![1, 1])).unwrap(), 6);
        assert_eq!(bohr_drop(&MultiIndex::default()).unwrap(), 1);
        assert_eq!(MultiIndex::new(vec![1, 0, 0]).exponents(), &[1]);
    }

    #[test]
    fn identities_up_to_a_million() {
        let table = default_table();
        for n in 1..=1_000_000u64 {
            let kappa = table.factorize(n).unwrap();
            assert_eq!(table.bohr_drop(&kappa).unwrap(), n);
            let d: u64 = kappa.exponents().iter().map(|&e| u64::from(e) + 1).product();
            if n % 997 == 0 {
                assert_eq!(table.divisor_pairs(n, 1).unwrap().len() as u64, d);
            }
        }
    }

    #[test]
    fn log_is_additive() {
        let table = default_table();
        let l6 = table.log(6).unwrap();
        assert_eq!(l6, table.log(2).unwrap() + table.log(3).unwrap());
        assert!((table.log(1000).unwrap() - 1000f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn divisor_cache_memoizes() {
        let mut cache = DivisorCache::new(2);
        assert_eq!(cache.pairs(12).unwrap(), &[(2, 6), (3, 4), (4, 3), (6, 2)]);
        assert_eq!(cache.pairs(12).unwrap().len(), 4);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn bohr_round_trip(exps in proptest::collection::vec(0u32..3, 0..8)) {
            let kappa = MultiIndex::new(exps);
            let n = bohr_drop(&kappa).unwrap();
            prop_assert_eq!(bohr_lift(n).unwrap(), kappa);
        }

        #[test]
        fn divisor_pairs_match_count(n in 1u64..200_000) {
            prop_assert_eq!(
                divisor_pairs(n, 1).unwrap().len() as u64,
                divisor_count(n).unwrap()
            );
            prop_assert_eq!(omega(n).unwrap(), factorize(n).unwrap().order());
        }
    }
}
