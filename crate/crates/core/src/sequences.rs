//! Two-ended generalized Fibonacci and Lucas sequences of order `k`.
//!
//! Both satisfy `x[n+k] = x[n+k-1] + ... + x[n]`. Negative indices come from
//! solving that relation for its lowest term:
//! `x[n] = x[n+k] - (x[n+k-1] + ... + x[n+1])`.
//!
//! * Fibonacci initials: `0, ..., 0, 1` (`k-1` zeros).
//! * Lucas initials: `k, 1, 3, 7, ..., 2^(k-1) - 1`, the traces of `Q_k^r`.

use std::collections::VecDeque;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numtheory::{Prime, Residue};

/// Which recurrence family a term belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Fibonacci,
    Lucas,
}

/// Address of a single term: order `k >= 2` and signed index `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SequenceSpec {
    order: usize,
    index: i64,
}

impl SequenceSpec {
    pub fn new(order: usize, index: i64) -> Result<Self> {
        check_order(order)?;
        Ok(SequenceSpec { order, index })
    }

    pub fn order(self) -> usize {
        self.order
    }

    pub fn index(self) -> i64 {
        self.index
    }
}

pub(crate) fn check_order(order: usize) -> Result<()> {
    if order < 2 {
        return Err(Error::InvalidOrder {
            got: order,
            min: 2,
        });
    }
    Ok(())
}

/// Initial window `x[0..k)` for a family, over the integers.
pub fn initials(family: Family, k: usize) -> Result<Vec<BigInt>> {
    check_order(k)?;
    Ok(match family {
        Family::Fibonacci => {
            let mut v = vec![BigInt::zero(); k];
            v[k - 1] = BigInt::one();
            v
        }
        Family::Lucas => std::iter::once(BigInt::from(k))
            .chain((1..k).map(|r| (BigInt::one() << r) - 1))
            .collect(),
    })
}

/// `[k, 1, 3, 7, ..., 2^(k-1) - 1]`.
pub fn lucas_initials(k: usize) -> Result<Vec<BigInt>> {
    initials(Family::Lucas, k)
}

/// Walks the recurrence outward from the initial window and collects
/// `x[from..=to]`. Memory is `O(k + (to - from))` regardless of how far the
/// range sits from zero.
fn walk<T>(init: &[T], from: i64, to: i64) -> Vec<T>
where
    T: Clone + Add<Output = T> + Sub<Output = T>,
{
    if from > to {
        return Vec::new();
    }
    let k = init.len() as i64;
    let mut backward = Vec::new();
    let mut forward = Vec::new();

    if from < 0 {
        let mut window: VecDeque<T> = init.iter().cloned().collect();
        let mut i = -1;
        while i >= from {
            let mut next = window[(k - 1) as usize].clone();
            for t in window.iter().take((k - 1) as usize) {
                next = next - t.clone();
            }
            window.pop_back();
            window.push_front(next.clone());
            if i <= to {
                backward.push(next);
            }
            i -= 1;
        }
        backward.reverse();
    }

    if to >= 0 {
        let mut window: VecDeque<T> = init.iter().cloned().collect();
        for i in 0..=to {
            let value = if i < k {
                init[i as usize].clone()
            } else {
                let mut iter = window.iter().cloned();
                let first = iter.next().expect("window is non-empty");
                let next = iter.fold(first, |acc, t| acc + t);
                window.pop_front();
                window.push_back(next.clone());
                next
            };
            if i >= from {
                forward.push(value);
            }
        }
    }

    backward.extend(forward);
    backward
}

fn reduce_initials(init: &[BigInt], p: Prime) -> Vec<Residue> {
    init.iter()
        .map(|v| Residue::new(p.reduce_big(v), p))
        .collect()
}

/// Exact terms `x[from..=to]` of the given family.
pub fn range(family: Family, k: usize, from: i64, to: i64) -> Result<Vec<BigInt>> {
    Ok(walk(&initials(family, k)?, from, to))
}

/// Terms `x[from..=to]` reduced mod p, computed in residue arithmetic.
pub fn range_mod(family: Family, k: usize, from: i64, to: i64, p: Prime) -> Result<Vec<Residue>> {
    let init = reduce_initials(&initials(family, k)?, p);
    Ok(walk(&init, from, to))
}

fn single(family: Family, spec: SequenceSpec) -> BigInt {
    let init = initials(family, spec.order).expect("order checked by SequenceSpec");
    walk(&init, spec.index, spec.index)
        .pop()
        .expect("one term requested")
}

/// `f_{k,n}`.
pub fn fib_term(spec: SequenceSpec) -> BigInt {
    single(Family::Fibonacci, spec)
}

/// `l_{k,n}`.
pub fn lucas_term(spec: SequenceSpec) -> BigInt {
    single(Family::Lucas, spec)
}

/// `l_{k,n} mod p`, run directly in residue arithmetic.
pub fn lucas_term_mod(spec: SequenceSpec, p: Prime) -> Residue {
    let init = reduce_initials(
        &initials(Family::Lucas, spec.order).expect("order checked by SequenceSpec"),
        p,
    );
    walk(&init, spec.index, spec.index)
        .pop()
        .expect("one term requested")
}
