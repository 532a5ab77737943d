//! Exact Bernoulli and Euler number tables.
//!
//! Both tables are generated once from their defining recurrences in exact
//! arithmetic (arbitrary-precision rationals / integers) and shared
//! process-wide. The convention is B_1 = -1/2.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Highest index kept in the exact tables.
pub const MAX_INDEX: usize = 64;

/// Exact Bernoulli numbers B_n and Euler numbers E_n up to [`MAX_INDEX`].
pub struct RationalSpecialNumbers {
    bernoulli: Vec<BigRational>,
    euler: Vec<BigInt>,
    max_index: usize,
}

fn big_binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    let k = k.min(n - k);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl RationalSpecialNumbers {
    /// Generate the tables up to `max_index` from the recurrences
    /// sum_{k<n} C(n+1,k) B_k = -(n+1) B_n and
    /// sum_{j<=n} C(2n,2j) E_{2j} = 0.
    pub fn generate(max_index: usize) -> Self {
        let mut bernoulli: Vec<BigRational> = Vec::with_capacity(max_index + 1);
        bernoulli.push(BigRational::one());
        for n in 1..=max_index {
            let mut acc = BigRational::zero();
            for (k, b) in bernoulli.iter().enumerate() {
                acc += BigRational::from(big_binomial(n + 1, k)) * b;
            }
            let bn = -acc / BigRational::from(BigInt::from(n as i64 + 1));
            bernoulli.push(bn);
        }

        let mut euler: Vec<BigInt> = vec![BigInt::zero(); max_index + 1];
        euler[0] = BigInt::one();
        for m in 1..=(max_index / 2) {
            let mut acc = BigInt::zero();
            for j in 0..m {
                acc += big_binomial(2 * m, 2 * j) * &euler[2 * j];
            }
            euler[2 * m] = -acc;
        }

        RationalSpecialNumbers {
            bernoulli,
            euler,
            max_index,
        }
    }

    pub fn max_index(&self) -> usize {
        self.max_index
    }

    pub fn bernoulli(&self, n: usize) -> Result<&BigRational> {
        self.bernoulli.get(n).ok_or(Error::IndexOutOfRange {
            op: "bernoulli",
            index: n,
            max: self.max_index,
        })
    }

    pub fn euler(&self, n: usize) -> Result<&BigInt> {
        self.euler.get(n).ok_or(Error::IndexOutOfRange {
            op: "euler_number",
            index: n,
            max: self.max_index,
        })
    }

    pub fn bernoulli_f64(&self, n: usize) -> Result<f64> {
        let b = self.bernoulli(n)?;
        Ok(ratio_to_f64(b))
    }

    pub fn euler_f64(&self, n: usize) -> Result<f64> {
        let e = self.euler(n)?;
        Ok(e.to_f64().unwrap_or(f64::NAN))
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    // Direct numer/denom conversion; both stay well inside f64 range for n <= 64.
    let n = r.numer().to_f64().unwrap_or(f64::NAN);
    let d = r.denom().to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Process-wide shared tables.
pub fn tables() -> &'static RationalSpecialNumbers {
    static TABLES: OnceLock<RationalSpecialNumbers> = OnceLock::new();
    TABLES.get_or_init(|| RationalSpecialNumbers::generate(MAX_INDEX))
}

/// Bernoulli number B_n as f64 (errors past the table end).
pub fn bernoulli_f64(n: usize) -> Result<f64> {
    tables().bernoulli_f64(n)
}

/// Euler number E_n (exact integer, errors past the table end).
pub fn euler_number(n: usize) -> Result<&'static BigInt> {
    tables().euler(n)
}

/// Euler number E_n as f64.
pub fn euler_f64(n: usize) -> Result<f64> {
    tables().euler_f64(n)
}

/// Bernoulli polynomial B_n(w) = sum_k C(n,k) B_k w^{n-k}, complex argument.
pub fn bernoulli_polynomial(n: usize, w: crate::C) -> Result<crate::C> {
    let t = tables();
    if n > t.max_index() {
        return Err(Error::IndexOutOfRange {
            op: "bernoulli_polynomial",
            index: n,
            max: t.max_index(),
        });
    }
    // Horner in w: B_n(w) = sum_{k=0}^{n} C(n,k) B_{n-k} w^k.
    let mut acc = crate::C::new(0.0, 0.0);
    for k in (0..=n).rev() {
        let coeff = big_binomial(n, k).to_f64().unwrap() * t.bernoulli_f64(n - k)?;
        acc = acc * w + coeff;
    }
    Ok(acc)
}

/// Binomial coefficient as f64 (exact for the small indices used here).
pub fn binomial_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    big_binomial(n, k).to_f64().unwrap_or(f64::INFINITY)
}

/// Factorial as f64.
pub fn factorial_f64(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}
