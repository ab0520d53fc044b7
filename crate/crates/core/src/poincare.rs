//! Integer polynomials and Poincaré polynomials of finite Coxeter groups.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::classify::{classify, CoxeterType, Family};
use crate::graph::CoxeterGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PoincareError {
    #[error("type {0} is not spherical")]
    NotSpherical(String),
    #[error("polynomial division is not exact")]
    NonDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("`{0}` is not a codimension-one face of the given subset")]
    InvalidFace(String),
}

/// Dense polynomial in `q` with arbitrary-precision integer coefficients,
/// lowest degree first. Never has a trailing zero; zero is the empty list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    /// `1 + q + ... + q^e`.
    pub fn q_integer(e: u32) -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::one(); e as usize + 1],
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = IntPolynomial::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Long division. Each step needs the divisor's leading coefficient to
    /// divide the running leading coefficient; otherwise `NonDivisible`.
    pub fn div_rem(&self, divisor: &IntPolynomial) -> Result<(IntPolynomial, IntPolynomial), PoincareError> {
        let lead = divisor.leading().ok_or(PoincareError::DivisionByZero)?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((IntPolynomial::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for shift in (0..quot.len()).rev() {
            let top = &rem[shift + dd];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(PoincareError::NonDivisible);
            }
            for (k, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + k] -= &c * d;
            }
            quot[shift] = c;
        }
        Ok((IntPolynomial::new(quot), IntPolynomial::new(rem)))
    }

    /// Quotient of an exact division.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Result<IntPolynomial, PoincareError> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PoincareError::NonDivisible)
        }
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
            .collect();
        IntPolynomial::new(coeffs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::new(coeffs)
    }
}

impl Mul for IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: IntPolynomial) -> IntPolynomial {
        &self * &rhs
    }
}

impl fmt::Display for IntPolynomial {
    /// Ascending powers: `1 + 2q + q^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            let coeff = if mag.is_one() && k > 0 {
                String::new()
            } else {
                mag.to_string()
            };
            match k {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{coeff}q")?,
                _ => write!(f, "{coeff}q^{k}")?,
            }
        }
        Ok(())
    }
}

fn not_spherical(t: &CoxeterType) -> PoincareError {
    PoincareError::NotSpherical(t.to_string())
}

/// Exponents of an irreducible finite Coxeter group.
pub fn exponents(t: &CoxeterType) -> Result<Vec<u32>, PoincareError> {
    let n = t.rank as u32;
    let e = match t.family {
        Family::A => (1..=n).collect(),
        Family::B => (1..=n).map(|i| 2 * i - 1).collect(),
        Family::D => {
            let mut e: Vec<u32> = (1..n).map(|i| 2 * i - 1).collect();
            e.push(n - 1);
            e.sort_unstable();
            e
        }
        Family::E6 => vec![1, 4, 5, 7, 8, 11],
        Family::E7 => vec![1, 5, 7, 9, 11, 13, 17],
        Family::E8 => vec![1, 7, 11, 13, 17, 19, 23, 29],
        Family::F4 => vec![1, 5, 7, 11],
        Family::H3 => vec![1, 5, 9],
        Family::H4 => vec![1, 11, 19, 29],
        Family::I2 => {
            let m = t.dihedral_m().ok_or_else(|| not_spherical(t))?;
            vec![1, m - 1]
        }
        _ => return Err(not_spherical(t)),
    };
    Ok(e)
}

/// Coxeter number `h` of an irreducible finite Coxeter group.
pub fn coxeter_number(t: &CoxeterType) -> Result<u64, PoincareError> {
    let n = t.rank as u64;
    let h = match t.family {
        Family::A => n + 1,
        Family::B => 2 * n,
        Family::D => 2 * n - 2,
        Family::E6 => 12,
        Family::E7 => 18,
        Family::E8 => 30,
        Family::F4 => 12,
        Family::H3 => 10,
        Family::H4 => 30,
        Family::I2 => t.dihedral_m().ok_or_else(|| not_spherical(t))? as u64,
        _ => return Err(not_spherical(t)),
    };
    Ok(h)
}

/// Order of the finite Coxeter group, from the classical closed forms.
pub fn group_order(t: &CoxeterType) -> Result<BigUint, PoincareError> {
    let factorial = |k: usize| (1..=k).fold(BigUint::one(), |acc, i| acc * BigUint::from(i));
    let n = t.rank;
    let order = match t.family {
        Family::A => factorial(n + 1),
        Family::B => (BigUint::one() << n) * factorial(n),
        Family::D => (BigUint::one() << (n - 1)) * factorial(n),
        Family::E6 => BigUint::from(51_840u32),
        Family::E7 => BigUint::from(2_903_040u32),
        Family::E8 => BigUint::from(696_729_600u32),
        Family::F4 => BigUint::from(1_152u32),
        Family::H3 => BigUint::from(120u32),
        Family::H4 => BigUint::from(14_400u32),
        Family::I2 => BigUint::from(2 * t.dihedral_m().ok_or_else(|| not_spherical(t))?),
        _ => return Err(not_spherical(t)),
    };
    Ok(order)
}

/// `W(q) = prod_i (1 + q + ... + q^{e_i})` over the exponents `e_i`.
pub fn poincare_polynomial(t: &CoxeterType) -> Result<IntPolynomial, PoincareError> {
    Ok(exponents(t)?
        .into_iter()
        .fold(IntPolynomial::one(), |acc, e| &acc * &IntPolynomial::q_integer(e)))
}

/// Poincaré polynomial of the parabolic subgroup on `subset`: the product
/// over the irreducible components of the induced subgraph.
pub fn poincare_of_subset(g: &CoxeterGraph, subset: &[usize]) -> Result<IntPolynomial, PoincareError> {
    let induced = g.induced(subset);
    classify(&induced)
        .types()
        .iter()
        .try_fold(IntPolynomial::one(), |acc, t| Ok(&acc * &poincare_polynomial(t)?))
}

/// `W_sigma(q) / W_tau(q)` evaluated at `q = -1`, for a codimension-one
/// face `tau` of `sigma`. Both subsets are index lists.
pub fn boundary_coefficient(g: &CoxeterGraph, sigma: &[usize], tau: &[usize]) -> Result<BigInt, PoincareError> {
    let is_face = tau.len() + 1 == sigma.len() && tau.iter().all(|v| sigma.contains(v));
    if !is_face {
        return Err(PoincareError::InvalidFace(alloc::format!("{tau:?}")));
    }
    let top = poincare_of_subset(g, sigma)?;
    let bottom = poincare_of_subset(g, tau)?;
    quotient_at_minus_one(&top, &bottom)
}

pub(crate) fn quotient_at_minus_one(top: &IntPolynomial, bottom: &IntPolynomial) -> Result<BigInt, PoincareError> {
    Ok(top.div_exact(bottom)?.eval(&BigInt::from(-1)))
}
