//! Bivariate integer polynomials, just enough for Tutte arithmetic.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Polynomial in two variables with `BigInt` coefficients, stored sparsely
/// by exponent pair `(i, j)` for the monomial `x^i y^j`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BivarPoly {
    coeffs: BTreeMap<(u32, u32), BigInt>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly::default()
    }

    pub fn one() -> Self {
        BivarPoly::monomial(0, 0)
    }

    /// The monomial `x^i y^j`.
    pub fn monomial(i: u32, j: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert((i, j), BigInt::one());
        BivarPoly { coeffs }
    }

    pub fn constant(c: i64) -> Self {
        let mut out = BivarPoly::zero();
        out.insert((0, 0), BigInt::from(c));
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = BivarPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn x() -> Self {
        BivarPoly::monomial(1, 0)
    }

    pub fn y() -> Self {
        BivarPoly::monomial(0, 1)
    }

    pub fn coefficient(&self, i: u32, j: u32) -> BigInt {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval_i64(&self, x: i64, y: i64) -> BigInt {
        let (bx, by) = (BigInt::from(x), BigInt::from(y));
        let mut acc = BigInt::zero();
        for (&(i, j), c) in &self.coeffs {
            acc += c * bx.pow(i) * by.pow(j);
        }
        acc
    }

    /// Swap the two variables: `p(x, y) -> p(y, x)`.
    pub fn swap_vars(&self) -> BivarPoly {
        let mut coeffs = BTreeMap::new();
        for (&(i, j), c) in &self.coeffs {
            coeffs.insert((j, i), c.clone());
        }
        BivarPoly { coeffs }
    }

    fn insert(&mut self, key: (u32, u32), val: BigInt) {
        if val.is_zero() {
            return;
        }
        match self.coeffs.entry(key) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(val);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += val;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

impl Add for BivarPoly {
    type Output = BivarPoly;

    fn add(mut self, rhs: BivarPoly) -> BivarPoly {
        for (k, v) in rhs.coeffs {
            self.insert(k, v);
        }
        self
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;

    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (&(i1, j1), c1) in &self.coeffs {
            for (&(i2, j2), c2) in &rhs.coeffs {
                out.insert((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        // Highest total degree first; deterministic.
        let mut terms: Vec<(&(u32, u32), &BigInt)> = self.coeffs.iter().collect();
        terms.sort_by_key(|(&(i, j), _)| (core::cmp::Reverse(i + j), core::cmp::Reverse(i)));
        let mut first = true;
        for (&(i, j), c) in terms {
            let mut t = String::new();
            let abs = c.magnitude();
            if !abs.is_one() || (i == 0 && j == 0) {
                t.push_str(&alloc::format!("{abs}"));
            }
            if i > 0 {
                t.push('x');
                if i > 1 {
                    t.push_str(&alloc::format!("^{i}"));
                }
            }
            if j > 0 {
                t.push('y');
                if j > 1 {
                    t.push_str(&alloc::format!("^{j}"));
                }
            }
            if first {
                if c.sign() == num_bigint::Sign::Minus {
                    write!(f, "-")?;
                }
                write!(f, "{t}")?;
                first = false;
            } else if c.sign() == num_bigint::Sign::Minus {
                write!(f, " - {t}")?;
            } else {
                write!(f, " + {t}")?;
            }
        }
        Ok(())
    }
}
