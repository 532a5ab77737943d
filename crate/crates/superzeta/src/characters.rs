//! Real primitive Dirichlet characters attached to fundamental
//! discriminants via the Kronecker symbol.
//!
//! The character of discriminant D has modulus |D|, parity 0 (even) for
//! D > 0 and 1 (odd) for D < 0, and values chi(n) = (D | n) stored as a
//! dense table over the residues mod |D|.

use crate::error::{Error, Result};
use crate::C;
use std::f64::consts::PI;

/// A real primitive Dirichlet character, immutable after construction.
#[derive(Debug, Clone)]
pub struct RealPrimitiveCharacter {
    modulus: u64,
    values: Vec<i8>,
    parity: u8,
    discriminant: i64,
}

/// Outcome of the invariant checks on a character table.
#[derive(Debug, Clone)]
pub struct CharacterCertificate {
    pub modulus: u64,
    pub discriminant: i64,
    pub checks: Vec<(String, bool)>,
    /// Value of (-i)^a d^{-1/2} sum chi(n) e^{2 pi i n / d}; must be 1.
    pub gaussian_sum: C,
}

impl CharacterCertificate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Kronecker symbol (a | n) for arbitrary integers.
pub fn kronecker_symbol(a: i64, n: i64) -> i64 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut a = a;
    let mut n = n;
    let mut result = 1i64;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    // factor out twos from n; (a | 2) = 0 for even a, else chi_8(a)
    while n % 2 == 0 {
        n /= 2;
        if a % 2 == 0 {
            return 0;
        }
        let r = a.rem_euclid(8);
        if r == 3 || r == 5 {
            result = -result;
        }
    }
    if n == 1 {
        return result;
    }
    // now n odd > 1: Jacobi symbol loop
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n.rem_euclid(8);
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.rem_euclid(4) == 3 && n.rem_euclid(4) == 3 {
            result = -result;
        }
        a = a.rem_euclid(n);
    }
    if n == 1 {
        result
    } else {
        0
    }
}

fn squarefree(mut m: u64) -> bool {
    let mut p = 2u64;
    while p * p <= m {
        if m % (p * p) == 0 {
            return false;
        }
        while m % p == 0 {
            m /= p;
        }
        p += 1;
    }
    true
}

/// Fundamental discriminant test: D = 1 mod 4 squarefree, or D = 4m with
/// m = 2 or 3 mod 4 squarefree. D = 1 is excluded (trivial character).
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    if d.rem_euclid(4) == 1 {
        return squarefree(d.unsigned_abs());
    }
    if d % 4 == 0 {
        let m = d / 4;
        let r = m.rem_euclid(4);
        return (r == 2 || r == 3) && squarefree(m.unsigned_abs());
    }
    false
}

/// Build the Kronecker character of a fundamental discriminant D (|D| > 1).
pub fn kronecker_character(d: i64) -> Result<RealPrimitiveCharacter> {
    if !is_fundamental_discriminant(d) {
        return Err(Error::NonFundamentalDiscriminant { d });
    }
    let modulus = d.unsigned_abs();
    let values = (0..modulus)
        .map(|n| kronecker_symbol(d, n as i64) as i8)
        .collect();
    Ok(RealPrimitiveCharacter {
        modulus,
        values,
        parity: if d > 0 { 0 } else { 1 },
        discriminant: d,
    })
}

impl RealPrimitiveCharacter {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Parity index a: chi(-1) = (-1)^a.
    pub fn parity(&self) -> u8 {
        self.parity
    }

    pub fn discriminant(&self) -> i64 {
        self.discriminant
    }

    /// chi(n), reducing n mod the modulus.
    pub fn eval(&self, n: i64) -> i8 {
        self.values[n.rem_euclid(self.modulus as i64) as usize]
    }

    /// The dense value table over residues 0..d-1.
    pub fn values(&self) -> &[i8] {
        &self.values
    }

    /// Check every structural invariant plus the Gaussian-sum condition
    /// (-i)^a d^{-1/2} sum_n chi(n) e^{2 pi i n/d} = 1 to 1e-10.
    pub fn validate(&self) -> Result<CharacterCertificate> {
        let d = self.modulus;
        let mut checks = Vec::new();

        let zero_iff_noncoprime = (0..d).all(|n| {
            let is_zero = self.values[n as usize] == 0;
            is_zero == (gcd(n, d) > 1)
        });
        checks.push(("zero exactly on non-coprime residues".into(), zero_iff_noncoprime));

        let multiplicative = {
            let mut ok = true;
            'outer: for m in 0..d {
                for n in 0..d {
                    let lhs = self.values[((m * n) % d) as usize];
                    let rhs = self.values[m as usize] * self.values[n as usize];
                    if lhs != rhs {
                        ok = false;
                        break 'outer;
                    }
                }
            }
            ok
        };
        checks.push(("completely multiplicative".into(), multiplicative));

        let parity_ok = self.values[(d - 1) as usize] == if self.parity == 0 { 1 } else { -1 };
        checks.push(("chi(-1) = (-1)^a".into(), parity_ok));

        let sum_zero = self.values.iter().map(|&v| v as i64).sum::<i64>() == 0;
        checks.push(("sum over residues vanishes".into(), sum_zero));

        // primitivity: for every proper divisor e of d there is n = 1 mod e,
        // coprime to d, with chi(n) != 1.
        let mut primitive = true;
        for e in 1..d {
            if d % e != 0 || e == d {
                continue;
            }
            let mut witness = false;
            let mut n = 1 + e;
            while n < d + e {
                let r = n % d;
                if gcd(r, d) == 1 && self.values[r as usize] != 1 {
                    witness = true;
                    break;
                }
                n += e;
            }
            if !witness {
                primitive = false;
                break;
            }
        }
        checks.push(("primitive (no smaller induced modulus)".into(), primitive));

        let mut g = C::new(0.0, 0.0);
        for n in 0..d {
            let chi = self.values[n as usize] as f64;
            if chi != 0.0 {
                let theta = 2.0 * PI * n as f64 / d as f64;
                g += chi * C::new(theta.cos(), theta.sin());
            }
        }
        let rot = if self.parity == 0 {
            C::new(1.0, 0.0)
        } else {
            C::new(0.0, -1.0)
        };
        let gaussian_sum = rot * g / (d as f64).sqrt();
        let gauss_ok = (gaussian_sum - C::new(1.0, 0.0)).norm() <= 1e-10;
        checks.push(("normalized Gaussian sum equals 1".into(), gauss_ok));

        let cert = CharacterCertificate {
            modulus: d,
            discriminant: self.discriminant,
            checks,
            gaussian_sum,
        };
        if let Some((which, _)) = cert.checks.iter().find(|(_, ok)| !ok) {
            return Err(Error::CharacterInvariant {
                which: format!("d = {}: {}", d, which),
            });
        }
        Ok(cert)
    }
}

/// Construct a character directly from a value table (used by tests to
/// exercise validation failures).
pub fn character_from_table(
    modulus: u64,
    values: Vec<i8>,
    parity: u8,
    discriminant: i64,
) -> RealPrimitiveCharacter {
    RealPrimitiveCharacter {
        modulus,
        values,
        parity,
        discriminant,
    }
}
