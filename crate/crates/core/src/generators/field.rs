//! Arithmetic tables for the finite fields GF(q), q a prime power up to 13.
//!
//! Elements are encoded as integers `0..q` whose base-`p` digits are polynomial
//! coefficients (lowest degree first) modulo a fixed irreducible polynomial.

use crate::error::GenError;

/// `(q, p, k, reduction)`: `x^k = sum reduction[i] x^i` in GF(p)[x].
const FIELDS: &[(usize, usize, usize, &[usize])] = &[
    (2, 2, 1, &[0]),
    (3, 3, 1, &[0]),
    (4, 2, 2, &[1, 1]),    // x^2 + x + 1
    (5, 5, 1, &[0]),
    (7, 7, 1, &[0]),
    (8, 2, 3, &[1, 1, 0]), // x^3 + x + 1
    (9, 3, 2, &[2, 0]),    // x^2 + 1
    (11, 11, 1, &[0]),
    (13, 13, 1, &[0]),
];

#[derive(Debug, Clone)]
pub struct FiniteField {
    q: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
}

impl FiniteField {
    pub fn new(q: usize) -> Result<Self, GenError> {
        let &(_, p, k, reduction) = FIELDS
            .iter()
            .find(|f| f.0 == q)
            .ok_or(GenError::UnsupportedFieldOrder { q })?;
        let digits = |mut x: usize| -> Vec<usize> {
            (0..k)
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect()
        };
        let encode = |d: &[usize]| d.iter().rev().fold(0, |acc, &c| acc * p + c);
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&sum);

                let mut prod = vec![0usize; 2 * k - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                // Reduce the highest-degree terms with x^k = reduction.
                for deg in (k..prod.len()).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for (i, r) in reduction.iter().enumerate() {
                        prod[deg - k + i] = (prod[deg - k + i] + c * r) % p;
                    }
                }
                mul[a * q + b] = encode(&prod[..k]);
            }
        }
        Ok(Self { q, add, mul })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b]
    }
}
