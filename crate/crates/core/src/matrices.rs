//! Generalized Fibonacci (GFM) and generalized Lucas (GLM) matrices, plus the
//! square-matrix algebra over Z/pZ they need.
//!
//! `Q_k^n` is the n-th power of the k-step companion matrix. `L_k^(n)` is the
//! Lucas matrix, which factors as `Q_k^n L_k^(0) = L_k^(0) Q_k^n`. Working
//! mod p through that factorization keeps every entry small even when `n` is
//! huge; the entrywise Lucas-term template is kept around as a cross-check.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numtheory::{mul_mod, scalar_inverse, Prime, Residue};
use crate::sequences::{self, check_order, Family};

/// Default cap on matrix order for user-facing entry points.
pub const DEFAULT_MAX_ORDER: usize = 64;

/// Square matrix with arbitrary-precision signed entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    order: usize,
    entries: Vec<BigInt>,
}

impl ExactMatrix {
    pub fn new(order: usize, entries: Vec<BigInt>) -> Result<Self> {
        if order == 0 || entries.len() != order * order {
            return Err(Error::DimensionMismatch {
                left: order,
                right: (entries.len() as f64).sqrt() as usize,
            });
        }
        Ok(ExactMatrix { order, entries })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let order = rows.len();
        let mut entries = Vec::with_capacity(order * order);
        for row in rows {
            let row = row.as_ref();
            if row.len() != order {
                return Err(Error::DimensionMismatch {
                    left: order,
                    right: row.len(),
                });
            }
            entries.extend(row.iter().map(|&v| BigInt::from(v)));
        }
        ExactMatrix::new(order, entries)
    }

    pub fn identity(order: usize) -> Self {
        let mut entries = vec![BigInt::zero(); order * order];
        for i in 0..order {
            entries[i * order + i] = BigInt::one();
        }
        ExactMatrix { order, entries }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.order + col]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.order != other.order {
            return Err(Error::DimensionMismatch {
                left: self.order,
                right: other.order,
            });
        }
        let k = self.order;
        let mut entries = vec![BigInt::zero(); k * k];
        for i in 0..k {
            for t in 0..k {
                let a = &self.entries[i * k + t];
                if a.is_zero() {
                    continue;
                }
                for j in 0..k {
                    entries[i * k + j] += a * &other.entries[t * k + j];
                }
            }
        }
        Ok(ExactMatrix { order: k, entries })
    }

    pub fn pow(&self, mut exp: u32) -> ExactMatrix {
        let mut acc = ExactMatrix::identity(self.order);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).expect("same order");
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base).expect("same order");
            }
        }
        acc
    }

    pub fn trace(&self) -> BigInt {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn det(&self) -> BigInt {
        let k = self.order;
        let mut m = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for c in 0..k {
            let Some(pivot) = (c..k).find(|&r| !m[r * k + c].is_zero()) else {
                return BigInt::zero();
            };
            if pivot != c {
                for j in 0..k {
                    m.swap(c * k + j, pivot * k + j);
                }
                sign = -sign;
            }
            for r in c + 1..k {
                for j in c + 1..k {
                    let v = &m[r * k + j] * &m[c * k + c] - &m[r * k + c] * &m[c * k + j];
                    m[r * k + j] = v / &prev;
                }
                m[r * k + c] = BigInt::zero();
            }
            prev = m[c * k + c].clone();
        }
        sign * &m[k * k - 1]
    }

    /// Entrywise reduction into `[0, p)`.
    pub fn reduce(&self, p: Prime) -> ResidueMatrix {
        ResidueMatrix {
            order: self.order,
            modulus: p,
            entries: self.entries.iter().map(|v| p.reduce_big(v)).collect(),
        }
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, self.order, &self.entries)
    }
}

fn write_rows<T: fmt::Display>(f: &mut fmt::Formatter<'_>, order: usize, entries: &[T]) -> fmt::Result {
    for row in entries.chunks(order) {
        let mut first = true;
        for v in row {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        writeln!(f)?;
    }
    Ok(())
}

/// Square matrix of residues mod a prime, row-major, every entry in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResidueMatrix {
    order: usize,
    modulus: Prime,
    entries: Vec<u64>,
}

impl ResidueMatrix {
    /// Builds a matrix from row-major values, reducing each one mod p.
    pub fn new(modulus: Prime, order: usize, entries: Vec<u64>) -> Result<Self> {
        if order == 0 || entries.len() != order * order {
            return Err(Error::DimensionMismatch {
                left: order,
                right: (entries.len() as f64).sqrt() as usize,
            });
        }
        let p = modulus.get();
        Ok(ResidueMatrix {
            order,
            modulus,
            entries: entries.into_iter().map(|v| v % p).collect(),
        })
    }

    /// Builds a matrix from signed rows, reducing each entry mod p.
    pub fn from_rows<R: AsRef<[i64]>>(modulus: Prime, rows: &[R]) -> Result<Self> {
        Ok(ExactMatrix::from_rows(rows)?.reduce(modulus))
    }

    pub fn identity(order: usize, modulus: Prime) -> Self {
        let mut entries = vec![0; order * order];
        for i in 0..order {
            entries[i * order + i] = 1 % modulus.get();
        }
        ResidueMatrix {
            order,
            modulus,
            entries,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn modulus(&self) -> Prime {
        self.modulus
    }

    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.entries[row * self.order + col]
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u64]> {
        self.entries.chunks(self.order)
    }

    pub fn is_identity(&self) -> bool {
        *self == ResidueMatrix::identity(self.order, self.modulus)
    }

    fn check_compatible(&self, other: &ResidueMatrix) -> Result<()> {
        if self.order != other.order {
            return Err(Error::DimensionMismatch {
                left: self.order,
                right: other.order,
            });
        }
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.get(),
                right: other.modulus.get(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &ResidueMatrix) -> Result<ResidueMatrix> {
        self.check_compatible(other)?;
        let k = self.order;
        let p = self.modulus.get();
        let mut entries = vec![0u64; k * k];
        for i in 0..k {
            for j in 0..k {
                let mut acc: u128 = 0;
                for t in 0..k {
                    acc += self.entries[i * k + t] as u128 * other.entries[t * k + j] as u128;
                }
                entries[i * k + j] = (acc % p as u128) as u64;
            }
        }
        Ok(ResidueMatrix {
            order: k,
            modulus: self.modulus,
            entries,
        })
    }

    pub fn pow(&self, mut exp: u64) -> ResidueMatrix {
        let mut acc = ResidueMatrix::identity(self.order, self.modulus);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).expect("same shape");
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base).expect("same shape");
            }
        }
        acc
    }

    /// Row vector times matrix: `v * self`.
    pub fn left_mul_vector(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.order {
            return Err(Error::DimensionMismatch {
                left: self.order,
                right: v.len(),
            });
        }
        let k = self.order;
        let p = self.modulus.get();
        Ok((0..k)
            .map(|j| {
                let acc: u128 = (0..k)
                    .map(|i| v[i] as u128 * self.entries[i * k + j] as u128)
                    .sum();
                (acc % p as u128) as u64
            })
            .collect())
    }

    pub fn trace(&self) -> Residue {
        let p = self.modulus.get();
        let t = (0..self.order).fold(0u64, |acc, i| (acc + self.get(i, i)) % p);
        Residue::new(t, self.modulus)
    }

    /// Determinant by Gaussian elimination. Pivots are the first nonzero
    /// entry at or below the diagonal.
    pub fn det(&self) -> Residue {
        let k = self.order;
        let p = self.modulus.get();
        let mut m = self.entries.clone();
        let mut det = 1 % p;
        for c in 0..k {
            let Some(pivot) = (c..k).find(|&r| m[r * k + c] != 0) else {
                return Residue::zero(self.modulus);
            };
            if pivot != c {
                for j in 0..k {
                    m.swap(c * k + j, pivot * k + j);
                }
                det = (p - det) % p;
            }
            let pv = m[c * k + c];
            det = mul_mod(det, pv, p);
            let inv = scalar_inverse(Residue::new(pv, self.modulus))
                .expect("nonzero residue mod a prime")
                .value();
            for r in c + 1..k {
                let factor = mul_mod(m[r * k + c], inv, p);
                if factor == 0 {
                    continue;
                }
                for j in c..k {
                    let sub = mul_mod(factor, m[c * k + j], p);
                    m[r * k + j] = (m[r * k + j] + p - sub) % p;
                }
            }
        }
        Residue::new(det, self.modulus)
    }

    /// Gauss–Jordan inverse over Z/pZ.
    pub fn inverse(&self) -> Result<ResidueMatrix> {
        let k = self.order;
        let p = self.modulus.get();
        let w = 2 * k;
        let mut aug = vec![0u64; k * w];
        for i in 0..k {
            aug[i * w..i * w + k].copy_from_slice(&self.entries[i * k..(i + 1) * k]);
            aug[i * w + k + i] = 1 % p;
        }
        for c in 0..k {
            let pivot = (c..k)
                .find(|&r| aug[r * w + c] != 0)
                .ok_or(Error::SingularMatrix(p))?;
            if pivot != c {
                for j in 0..w {
                    aug.swap(c * w + j, pivot * w + j);
                }
            }
            let inv = scalar_inverse(Residue::new(aug[c * w + c], self.modulus))?.value();
            for j in 0..w {
                aug[c * w + j] = mul_mod(aug[c * w + j], inv, p);
            }
            for r in 0..k {
                if r == c {
                    continue;
                }
                let factor = aug[r * w + c];
                if factor == 0 {
                    continue;
                }
                for j in 0..w {
                    let sub = mul_mod(factor, aug[c * w + j], p);
                    aug[r * w + j] = (aug[r * w + j] + p - sub) % p;
                }
            }
        }
        let entries = (0..k)
            .flat_map(|i| aug[i * w + k..(i + 1) * w].to_vec())
            .collect();
        Ok(ResidueMatrix {
            order: k,
            modulus: self.modulus,
            entries,
        })
    }
}

impl fmt::Display for ResidueMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, self.order, &self.entries)
    }
}

/// Companion matrix `Q_k`: first row all ones, ones on the subdiagonal.
pub fn q_one(k: usize) -> Result<ExactMatrix> {
    check_order(k)?;
    let mut entries = vec![BigInt::zero(); k * k];
    entries[..k].fill(BigInt::one());
    for i in 1..k {
        entries[i * k + (i - 1)] = BigInt::one();
    }
    ExactMatrix::new(k, entries)
}

/// `Q_k^{-1}`: ones on the superdiagonal, last row `1, -1, ..., -1`.
pub fn q_inverse_one(k: usize) -> Result<ExactMatrix> {
    check_order(k)?;
    let mut entries = vec![BigInt::zero(); k * k];
    for i in 0..k - 1 {
        entries[i * k + i + 1] = BigInt::one();
    }
    entries[(k - 1) * k] = BigInt::one();
    for j in 1..k {
        entries[(k - 1) * k + j] = -BigInt::one();
    }
    ExactMatrix::new(k, entries)
}

/// `Q_k^n mod p` for any signed `n`.
pub fn gfm(k: usize, n: i64, p: Prime) -> Result<ResidueMatrix> {
    let base = if n >= 0 { q_one(k)? } else { q_inverse_one(k)? };
    Ok(base.reduce(p).pow(n.unsigned_abs()))
}

/// Fills the Lucas-matrix template at index `n` from a term lookup.
///
/// Entry `(i, 0)` is `l[k+n-1-i]`; entry `(i, j)` for `j >= 1` is
/// `l[n+j-1-i] + ... + l[k+n-2-i]` (0-based `i`, `j`).
fn fill_template<T, F>(k: usize, n: i64, term: F, zero: T) -> Vec<T>
where
    T: Clone + std::ops::Add<Output = T>,
    F: Fn(i64) -> T,
{
    let k_i = k as i64;
    let mut out = Vec::with_capacity(k * k);
    for i in 0..k_i {
        out.push(term(k_i + n - 1 - i));
        for j in 1..k_i {
            let sum = (n + j - 1 - i..=k_i + n - 2 - i).fold(zero.clone(), |acc, t| acc + term(t));
            out.push(sum);
        }
    }
    out
}

fn template_span(k: usize, n: i64) -> (i64, i64) {
    (n + 1 - k as i64, n + k as i64 - 1)
}

/// `L_k^(n)` over the integers, filled entry by entry from exact Lucas terms.
pub fn glm_template(k: usize, n: i64) -> Result<ExactMatrix> {
    let (lo, hi) = template_span(k, n);
    let terms = sequences::range(Family::Lucas, k, lo, hi)?;
    let entries = fill_template(k, n, |t| terms[(t - lo) as usize].clone(), BigInt::zero());
    ExactMatrix::new(k, entries)
}

/// `L_k^(n) mod p` filled from Lucas terms computed in residue arithmetic.
pub fn glm_template_mod(k: usize, n: i64, p: Prime) -> Result<ResidueMatrix> {
    let (lo, hi) = template_span(k, n);
    let terms = sequences::range_mod(Family::Lucas, k, lo, hi, p)?;
    let entries = fill_template(k, n, |t| terms[(t - lo) as usize], Residue::zero(p))
        .into_iter()
        .map(Residue::value)
        .collect();
    ResidueMatrix::new(p, k, entries)
}

/// Initial Lucas matrix `L_k^(0)`.
pub fn glm_initial(k: usize) -> Result<ExactMatrix> {
    glm_template(k, 0)
}

/// `H = (L_k^(0))^2`, which satisfies `L^(n) L^(-n) = H` for every `n`.
pub fn h_matrix(k: usize) -> Result<ExactMatrix> {
    let l0 = glm_initial(k)?;
    l0.mul(&l0)
}

/// `L_k^(n) mod p` as `Q_k^n · L_k^(0)`.
pub fn glm(k: usize, n: i64, p: Prime) -> Result<ResidueMatrix> {
    let q = gfm(k, n, p)?;
    q.mul(&glm_initial(k)?.reduce(p))
}

/// Inverse of `L_k^(n) mod p` in closed form: `L_k^(-n) · H^{-1}`.
pub fn glm_closed_inverse(k: usize, n: i64, p: Prime) -> Result<ResidueMatrix> {
    let h_inv = h_matrix(k)?.reduce(p).inverse()?;
    glm(k, -n, p)?.mul(&h_inv)
}

/// Sign of `det(Q_k^n)`: `(-1)^((k-1) n)`, as a residue.
pub fn gfm_det_expected(k: usize, n: i64, p: Prime) -> Residue {
    let odd = ((k as i64 - 1) * n).rem_euclid(2) == 1;
    Residue::from_i64(if odd { -1 } else { 1 }, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    fn rm(m: u64, rows: &[&[i64]]) -> ResidueMatrix {
        ResidueMatrix::from_rows(p(m), rows).unwrap()
    }

    fn em(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn companion_matrices() {
        assert_eq!(q_one(2).unwrap(), em(&[&[1, 1], &[1, 0]]));
        assert_eq!(
            q_one(3).unwrap(),
            em(&[&[1, 1, 1], &[1, 0, 0], &[0, 1, 0]])
        );
        let q4 = q_one(4).unwrap();
        let row_sums: Vec<BigInt> = q4.entries().chunks(4).map(|r| r.iter().sum()).collect();
        assert_eq!(row_sums, [4, 1, 1, 1].map(BigInt::from).to_vec());
        assert!(q_one(1).is_err());
    }

    #[test]
    fn companion_inverses() {
        assert_eq!(q_inverse_one(2).unwrap(), em(&[&[0, 1], &[1, -1]]));
        assert_eq!(
            q_inverse_one(3).unwrap(),
            em(&[&[0, 1, 0], &[0, 0, 1], &[1, -1, -1]])
        );
        for k in 2..=8 {
            let prod = q_one(k).unwrap().mul(&q_inverse_one(k).unwrap()).unwrap();
            assert_eq!(prod, ExactMatrix::identity(k));
        }
    }

    #[test]
    fn gfm_examples() {
        assert!(gfm(3, 0, p(37)).unwrap().is_identity());
        // f_{2,4} = 3, f_{2,5} = 5, f_{2,6} = 8 by iterating the recurrence.
        assert_eq!(gfm(2, 5, p(101)).unwrap(), rm(101, &[&[8, 5], &[5, 3]]));
        assert_eq!(gfm(3, 18, p(1_000_000_007)).unwrap().trace().value(), 58035);
    }

    /// Oracle: the GFM template from Fibonacci terms, filled like the Lucas one.
    fn gfm_template(k: usize, n: i64) -> ExactMatrix {
        let (lo, hi) = template_span(k, n);
        let terms = sequences::range(Family::Fibonacci, k, lo, hi).unwrap();
        let entries = fill_template(k, n, |t| terms[(t - lo) as usize].clone(), BigInt::zero());
        ExactMatrix::new(k, entries).unwrap()
    }

    #[test]
    fn gfm_matches_fibonacci_template() {
        for k in 2..=6 {
            for n in -12..=12 {
                assert_eq!(
                    gfm(k, n, p(1_000_003)).unwrap(),
                    gfm_template(k, n).reduce(p(1_000_003)),
                    "k={k} n={n}"
                );
            }
        }
    }

    #[test]
    fn glm_initial_examples() {
        assert_eq!(glm_initial(2).unwrap(), em(&[&[1, 2], &[2, -1]]));
        assert_eq!(
            glm_initial(3).unwrap(),
            em(&[&[3, 4, 1], &[1, 2, 3], &[3, -2, -1]])
        );
        assert_eq!(
            glm_initial(4).unwrap(),
            em(&[&[7, 8, 4, 3], &[3, 4, 5, 1], &[1, 2, 3, 4], &[4, -3, -2, -1]])
        );
        let l5 = glm_initial(5).unwrap();
        assert_eq!(
            &l5.entries()[..5],
            &[15, 16, 11, 10, 7].map(BigInt::from)[..]
        );
        assert_eq!(
            l5,
            em(&[
                &[15, 16, 11, 10, 7],
                &[7, 8, 9, 4, 3],
                &[3, 4, 5, 6, 1],
                &[1, 2, 3, 4, 5],
                &[5, -4, -3, -2, -1]
            ])
        );
    }

    /// The closed pattern for `L_k^(0)` read off row by row: the first entry
    /// of row `i` is `l_{k,k-1-i}`; the last two rows are `1, 2, ..., k` and
    /// `k, 1-k, 2-k, ..., -1`; the top row begins `2^(k-1)-1, 2^(k-1)` and
    /// ends `2^(k-2)-1`.
    #[test]
    fn initial_matrix_closed_pattern() {
        for k in 2..=8usize {
            let l0 = glm_initial(k).unwrap();
            let ki = k as i64;
            let last: Vec<BigInt> = std::iter::once(ki)
                .chain((1..ki).map(|j| j - ki))
                .map(BigInt::from)
                .collect();
            assert_eq!(&l0.entries()[(k - 1) * k..], &last[..], "k={k}");
            if k >= 3 {
                let second_last: Vec<BigInt> = (1..=ki).map(BigInt::from).collect();
                assert_eq!(&l0.entries()[(k - 2) * k..(k - 1) * k], &second_last[..]);
            }
            if k >= 3 {
                let top = BigInt::one() << (k - 1);
                assert_eq!(l0.get(0, 0), &(&top - 1));
                assert_eq!(l0.get(0, 1), &top);
                assert_eq!(l0.get(0, k - 1), &((BigInt::one() << (k - 2)) - 1));
            }
            if k >= 4 {
                // Row 1 (0-based) starts 2^(k-2)-1, 2^(k-2), 2^(k-2)+1.
                let top = BigInt::one() << (k - 2);
                assert_eq!(l0.get(1, 0), &(&top - 1));
                assert_eq!(l0.get(1, 1), &top);
                assert_eq!(l0.get(1, 2), &(&top + 1));
                assert_eq!(l0.get(0, 2), &((BigInt::one() << (k - 1)) - ki));
            }
        }
    }

    #[test]
    fn glm_examples() {
        assert_eq!(
            glm(3, 18, p(37)).unwrap(),
            rm(37, &[&[9, 17, 35], &[35, 11, 19], &[19, 16, 29]])
        );
        assert_eq!(
            glm(3, 0, p(37)).unwrap(),
            rm(37, &[&[3, 4, 1], &[1, 2, 3], &[3, 35, 36]])
        );
        // Q_2 · L_2^(0) = [[1,1],[1,0]]·[[1,2],[2,-1]] = [[3,1],[1,2]]
        assert_eq!(glm(2, 1, p(5)).unwrap(), rm(5, &[&[3, 1], &[1, 2]]));
    }

    #[test]
    fn glm_factorization_matches_template() {
        for k in 2..=6 {
            for n in -15..=15 {
                let m = p(101);
                let via_powers = glm(k, n, m).unwrap();
                assert_eq!(via_powers, glm_template_mod(k, n, m).unwrap(), "k={k} n={n}");
                assert_eq!(via_powers, glm_template(k, n).unwrap().reduce(m));
            }
        }
    }

    #[test]
    fn matrix_product_identities() {
        let m = p(37);
        let a = rm(37, &[&[9, 17, 35], &[35, 11, 19], &[19, 16, 29]]);
        assert_eq!(a.mul(&ResidueMatrix::identity(3, m)).unwrap(), a);
        let q = q_one(3).unwrap().reduce(m);
        let qi = q_inverse_one(3).unwrap().reduce(m);
        assert!(q.mul(&qi).unwrap().is_identity());
        let k_star = rm(37, &[&[18, 36, 7], &[7, 11, 29], &[29, 15, 19]]);
        assert!(a.mul(&k_star).unwrap().is_identity());
    }

    #[test]
    fn mul_shape_errors() {
        let a = ResidueMatrix::identity(3, p(37));
        let b = ResidueMatrix::identity(2, p(37));
        let c = ResidueMatrix::identity(3, p(5));
        assert_eq!(
            a.mul(&b),
            Err(Error::DimensionMismatch { left: 3, right: 2 })
        );
        assert_eq!(
            a.mul(&c),
            Err(Error::ModulusMismatch { left: 37, right: 5 })
        );
        assert!(ResidueMatrix::new(p(5), 2, vec![1, 2, 3]).is_err());
        assert!(a.left_mul_vector(&[1, 2]).is_err());
    }

    #[test]
    fn determinants() {
        assert_eq!(glm_initial(3).unwrap().det(), BigInt::from(44));
        assert_eq!(gfm(3, 5, p(37)).unwrap().det().value(), 1);
        assert_eq!(gfm(2, 3, p(37)).unwrap().det().value(), 36);
        assert_eq!(ResidueMatrix::identity(4, p(7)).det().value(), 1);
        // needs a row swap: det [[0,1],[1,0]] = -1
        assert_eq!(rm(7, &[&[0, 1], &[1, 0]]).det().value(), 6);
        assert_eq!(rm(7, &[&[1, 2], &[2, 4]]).det().value(), 0);
    }

    /// Oracle: cofactor expansion over i128.
    fn cofactor_det(m: &[Vec<i128>]) -> i128 {
        let n = m.len();
        if n == 1 {
            return m[0][0];
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * cofactor_det(&minor)
            })
            .sum()
    }

    #[test]
    fn determinants_agree_with_cofactor_expansion() {
        let mut seed = 0x2545_f491_4f6c_dd1du64;
        let mut next = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed % 41) as i64 - 20
        };
        for order in 1..=5 {
            for _ in 0..40 {
                let rows: Vec<Vec<i64>> = (0..order).map(|_| (0..order).map(|_| next()).collect()).collect();
                let wide: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
                let expected = cofactor_det(&wide);
                let exact = ExactMatrix::from_rows(&rows).unwrap();
                assert_eq!(exact.det(), BigInt::from(expected));
                for m in [2u64, 5, 37, 101] {
                    let reduced = exact.reduce(p(m));
                    assert_eq!(reduced.det().value(), (expected.rem_euclid(m as i128)) as u64);
                }
            }
        }
    }

    #[test]
    fn inverse_examples() {
        let i = ResidueMatrix::identity(3, p(37));
        assert_eq!(i.inverse().unwrap(), i);
        let h = h_matrix(3).unwrap();
        assert_eq!(h, em(&[&[16, 18, 14], &[14, 2, 4], &[4, 10, -2]]));
        let h37 = h.reduce(p(37));
        let h_inv = h37.inverse().unwrap();
        assert!(h37.mul(&h_inv).unwrap().is_identity());
        assert!(h_inv.mul(&h37).unwrap().is_identity());
        assert_eq!(
            rm(5, &[&[2, 0], &[0, 1]]).inverse().unwrap(),
            rm(5, &[&[3, 0], &[0, 1]])
        );
        assert_eq!(
            rm(7, &[&[1, 2], &[2, 4]]).inverse(),
            Err(Error::SingularMatrix(7))
        );
    }

    #[test]
    fn closed_form_inverse_examples() {
        assert_eq!(
            glm_closed_inverse(3, 18, p(37)).unwrap(),
            rm(37, &[&[18, 36, 7], &[7, 11, 29], &[29, 15, 19]])
        );
        assert_eq!(
            glm_closed_inverse(3, 0, p(37)).unwrap(),
            glm_initial(3).unwrap().reduce(p(37)).inverse().unwrap()
        );
        assert_eq!(
            glm_closed_inverse(2, 4, p(11)).unwrap(),
            glm(2, 4, p(11)).unwrap().inverse().unwrap()
        );
        // det L_3^(0) = 44 = 4·11, so H is singular mod 11.
        assert_eq!(glm_closed_inverse(3, 5, p(11)), Err(Error::SingularMatrix(11)));
    }

    #[test]
    fn lucas_is_trace_of_gfm() {
        let m = p(1_000_000_007);
        for k in 2..=5 {
            for n in -10..=10 {
                let l = sequences::lucas_term(sequences::SequenceSpec::new(k, n).unwrap());
                assert_eq!(gfm(k, n, m).unwrap().trace().value(), m.reduce_big(&l), "k={k} n={n}");
                assert_eq!(gfm_template(k, n).trace(), l);
            }
        }
    }

    #[test]
    fn display_rows() {
        let k = glm(3, 18, p(37)).unwrap();
        assert_eq!(k.to_string(), "9 17 35\n35 11 19\n19 16 29\n");
        assert_eq!(glm_initial(2).unwrap().to_string(), "1 2\n2 -1\n");
    }

    #[test]
    fn row_vector_product() {
        let k = glm(3, 18, p(37)).unwrap();
        // 13·9 + 14·35 + 1·19 = 626 ≡ 34
        assert_eq!(k.left_mul_vector(&[13, 14, 1]).unwrap()[0], 34);
    }
}
