//! Bernoulli numbers, exact and memoized.

use std::sync::Mutex;

use super::{binomial, Rat};
use crate::{Error, Result};

static CACHE: Mutex<Vec<Rat>> = Mutex::new(Vec::new());

/// The Bernoulli number B_n for positive even n (convention B₁ = −1/2, so
/// B₂ = 1/6, B₄ = −1/30, …). Odd or nonpositive indices are rejected.
///
/// Computed by the defining recurrence Σ_{k=0..n} C(n+1,k)·B_k = 0 and
/// memoized, so a table of the first N values costs O(N²) rational
/// operations once per process.
pub fn bernoulli(n: i64) -> Result<Rat> {
    if n <= 0 || n % 2 != 0 {
        return Err(Error::BernoulliIndex(n));
    }
    let n = n as usize;
    let mut cache = CACHE.lock().unwrap();
    if cache.is_empty() {
        cache.push(Rat::from(1));
        cache.push(Rat::from((-1, 2)));
    }
    while cache.len() <= n {
        let k = cache.len();
        if k % 2 == 1 {
            cache.push(Rat::new());
            continue;
        }
        let mut acc = Rat::new();
        for (j, b) in cache.iter().enumerate() {
            if b.cmp0() != std::cmp::Ordering::Equal {
                acc += Rat::from(b * binomial(k as u64 + 1, j as u64));
            }
        }
        acc /= binomial(k as u64 + 1, k as u64);
        cache.push(-acc);
    }
    Ok(cache[n].clone())
}
