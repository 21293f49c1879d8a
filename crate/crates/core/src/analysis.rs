//! Keyspace size: the number of invertible `lambda x lambda` matrices over
//! F_p, i.e. `|GL_lambda(F_p)| = prod_{i=0}^{lambda-1} (p^lambda - p^i)`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::numtheory::Prime;

/// Largest search space [`brute_force_gl_count`] will enumerate.
pub const BRUTE_FORCE_LIMIT: u128 = 10_000_000;

/// `|GL_lambda(F_p)|` computed exactly.
pub fn gl_order(lambda: u32, p: Prime) -> BigUint {
    let p = BigUint::from(p.get());
    let top: BigUint = Pow::pow(&p, lambda);
    (0..lambda)
        .map(|i| &top - Pow::pow(&p, i))
        .fold(BigUint::one(), |acc, f| acc * f)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyspaceReport {
    pub lambda: u32,
    pub p: Prime,
    pub gl_order: BigUint,
    /// `floor(log10(gl_order))`.
    pub decimal_magnitude: u32,
}

impl KeyspaceReport {
    pub fn new(lambda: u32, p: Prime) -> Self {
        let gl_order = gl_order(lambda, p);
        let decimal_magnitude = gl_order.to_string().len() as u32 - 1;
        KeyspaceReport {
            lambda,
            p,
            gl_order,
            decimal_magnitude,
        }
    }

    /// First `digits` significant digits as `d.ddd`.
    pub fn significand(&self, digits: usize) -> String {
        let s = self.gl_order.to_string();
        let head: String = s.chars().take(digits.max(1)).collect();
        if head.len() == 1 {
            head
        } else {
            format!("{}.{}", &head[..1], &head[1..])
        }
    }
}

impl fmt::Display for KeyspaceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "lambda={} p={} gl_order={} magnitude=10^{}",
            self.lambda, self.p, self.gl_order, self.decimal_magnitude
        )
    }
}

fn cofactor_det(m: &[i64], n: usize, p: i64) -> i64 {
    if n == 1 {
        return m[0].rem_euclid(p);
    }
    let mut total = 0i64;
    let mut minor = Vec::with_capacity((n - 1) * (n - 1));
    for j in 0..n {
        if m[j] == 0 {
            continue;
        }
        minor.clear();
        for r in 1..n {
            for c in (0..n).filter(|&c| c != j) {
                minor.push(m[r * n + c]);
            }
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        total = (total + sign * m[j] * cofactor_det(&minor, n - 1, p)).rem_euclid(p);
    }
    total
}

/// Counts invertible matrices by enumerating all `p^(lambda^2)` of them.
pub fn brute_force_gl_count(lambda: u32, p: Prime) -> Result<u64> {
    let pm = p.get();
    let cells = (lambda * lambda) as usize;
    let size = (pm as u128)
        .checked_pow(lambda * lambda)
        .unwrap_or(u128::MAX);
    if size > BRUTE_FORCE_LIMIT {
        return Err(Error::SearchSpaceTooLarge {
            size,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    if lambda == 0 {
        return Ok(1);
    }
    let mut m = vec![0i64; cells];
    let mut count = 0u64;
    for _ in 0..size {
        if cofactor_det(&m, lambda as usize, pm as i64) != 0 {
            count += 1;
        }
        // odometer increment
        for cell in m.iter_mut() {
            *cell += 1;
            if *cell < pm as i64 {
                break;
            }
            *cell = 0;
        }
    }
    Ok(count)
}
