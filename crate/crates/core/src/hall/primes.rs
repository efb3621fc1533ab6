use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A set of primes `π`, or its complement `π'` when `complement` is set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PrimeSet {
    primes: BTreeSet<u64>,
    complement: bool,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl PrimeSet {
    pub fn new(primes: impl IntoIterator<Item = u64>) -> Result<Self> {
        let primes: BTreeSet<u64> = primes.into_iter().collect();
        if let Some(p) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::Semantic(format!("{p} is not prime")));
        }
        Ok(PrimeSet {
            primes,
            complement: false,
        })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn single(p: u64) -> Result<Self> {
        Self::new([p])
    }

    /// `π'`.
    pub fn complement(&self) -> Self {
        PrimeSet {
            primes: self.primes.clone(),
            complement: !self.complement,
        }
    }

    pub fn is_complement(&self) -> bool {
        self.complement
    }

    /// The listed primes (the excluded ones for a complement view).
    pub fn listed(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().copied()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.contains(&p) != self.complement
    }

    /// The members of the set that divide `n`.
    pub fn restricted_to(&self, n: u64) -> Vec<u64> {
        prime_divisors(n).into_iter().filter(|&p| self.contains(p)).collect()
    }

    pub fn is_pi_number(&self, n: u64) -> bool {
        pi_part(n, self) == n
    }

    /// Every subset of the primes dividing `n`, smallest first.
    pub fn all_subsets_for(n: u64) -> Vec<PrimeSet> {
        let ps = prime_divisors(n);
        let mut out: Vec<PrimeSet> = (0..1u32 << ps.len())
            .map(|mask| PrimeSet {
                primes: ps
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &p)| p)
                    .collect(),
                complement: false,
            })
            .collect();
        out.sort_by(|a, b| (a.primes.len(), &a.primes).cmp(&(b.primes.len(), &b.primes)));
        out
    }
}

/// Largest divisor of `n` whose prime factors all lie in `pi`.
pub fn pi_part(mut n: u64, pi: &PrimeSet) -> u64 {
    let mut part = 1;
    let mut d = 2;
    while d * d <= n {
        while n % d == 0 {
            n /= d;
            if pi.contains(d) {
                part *= d;
            }
        }
        d += 1;
    }
    if n > 1 && pi.contains(n) {
        part *= n;
    }
    part
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<String> = self.primes.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", list.join(","))?;
        if self.complement {
            write!(f, "'")?;
        }
        Ok(())
    }
}

impl FromStr for PrimeSet {
    type Err = Error;

    /// Comma-separated primes; the empty string is the empty set.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('{').trim_end_matches('}');
        let mut primes = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let p: u64 = part
                .parse()
                .map_err(|_| Error::Semantic(format!("not a prime: {part:?}")))?;
            primes.push(p);
        }
        PrimeSet::new(primes)
    }
}

impl Serialize for PrimeSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pi_part_examples() {
        let pi: PrimeSet = "2,3".parse().unwrap();
        assert_eq!(pi_part(168, &pi), 24);
        assert_eq!(pi_part(336, &pi), 48);
        assert_eq!(pi_part(168, &PrimeSet::empty()), 1);
        assert_eq!(pi_part(168, &pi.complement()), 7);
    }

    #[test]
    fn parsing() {
        assert_eq!("".parse::<PrimeSet>().unwrap(), PrimeSet::empty());
        assert_eq!("3, 2".parse::<PrimeSet>().unwrap().to_string(), "{2,3}");
        assert!("2,4".parse::<PrimeSet>().is_err());
        assert!("x".parse::<PrimeSet>().is_err());
    }

    #[test]
    fn subsets() {
        let subs = PrimeSet::all_subsets_for(60);
        assert_eq!(subs.len(), 8);
        assert_eq!(subs[0], PrimeSet::empty());
    }

    proptest! {
        #[test]
        fn pi_and_complement_parts_multiply(n in 1u64..100_000, mask in 0u8..16) {
            let pi = PrimeSet::new([2u64, 3, 5, 7].into_iter().enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p)).unwrap();
            let a = pi_part(n, &pi);
            let b = pi_part(n, &pi.complement());
            prop_assert_eq!(a * b, n);
            prop_assert!(pi.is_pi_number(a));
            prop_assert_eq!(crate::perm_core::gcd(b, a), 1);
        }
    }
}
