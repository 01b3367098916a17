//! Exact polynomial arithmetic over the rationals, plus cyclotomic
//! polynomials by recursive division.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use num::BigInt;

use crate::numtheory::divisors;

/// Dense polynomial with exact rational coefficients, ascending degree.
/// The zero polynomial has an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(
            coeffs
                .iter()
                .map(|&c| BigRational::from(BigInt::from(c)))
                .collect(),
        )
    }

    /// c * x^deg.
    pub fn monomial(c: BigRational, deg: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        coeffs[deg] = c;
        Poly::from_coeffs(coeffs)
    }

    /// x^n - 1.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[0] = -BigRational::one();
        coeffs[n] = BigRational::one();
        Poly::from_coeffs(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of x^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(0)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.leading().expect("nonzero").recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let q = &rem[k] * &lead_inv;
            if q.is_zero() {
                continue;
            }
            for j in 0..=dd {
                let sub = &q * &divisor.coeffs[j];
                rem[k - dd + j] -= sub;
            }
            quot[k - dd] = q;
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Exact quotient when the divisor divides self.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero for two zero inputs).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        match a.leading() {
            None => a,
            Some(lead) => {
                let inv = lead.recip();
                a.scale(&inv)
            }
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c = self.coeff(k) + rhs.coeff(k);
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c = self.coeff(k) - rhs.coeff(k);
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

/// The d-th cyclotomic polynomial: (x^d - 1) divided by Phi_e(x) for every
/// proper divisor e of d.
pub fn cyclotomic(d: u64) -> Poly {
    assert!(d >= 1, "cyclotomic: d must be positive");
    if d == 1 {
        return Poly::from_integers(&[-1, 1]);
    }
    let mut result = Poly::x_pow_minus_one(d as usize);
    for e in divisors(d) {
        if e == d {
            continue;
        }
        result = result
            .exact_div(&cyclotomic(e))
            .expect("cyclotomic factors divide x^d - 1");
    }
    result
}

fn fmt_coeff(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    /// Sparse "c*x^k" syntax, ascending powers: `1 - 2*x + 3/2*x^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{}", fmt_coeff(&mag))?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{}*x", fmt_coeff(&mag))?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{}*x^{k}", fmt_coeff(&mag))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_round_trip() {
        let a = Poly::from_integers(&[2, 0, -3, 1, 5]);
        let b = Poly::from_integers(&[1, 2, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        let common = Poly::from_integers(&[-1, 1]); // x - 1
        let a = &common * &Poly::from_integers(&[1, 1]);
        let b = &common * &Poly::from_integers(&[2, 0, 1]);
        assert_eq!(a.gcd(&b), common);
        assert_eq!(Poly::zero().gcd(&b), b.scale(&b.leading().unwrap().recip()));
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), Poly::from_integers(&[-1, 1]));
        assert_eq!(cyclotomic(2), Poly::from_integers(&[1, 1]));
        assert_eq!(cyclotomic(4), Poly::from_integers(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), Poly::from_integers(&[1, -1, 1]));
        assert_eq!(cyclotomic(10), Poly::from_integers(&[1, -1, 1, -1, 1]));
        assert_eq!(cyclotomic(12), Poly::from_integers(&[1, 0, -1, 0, 1]));
        // 105 is the first index with a coefficient of magnitude 2.
        let c105 = cyclotomic(105);
        assert!(c105
            .coeffs()
            .iter()
            .any(|c| c.abs() == BigRational::from(BigInt::from(2))));
    }

    #[test]
    fn cyclotomics_multiply_to_x_pow_minus_one() {
        use crate::numtheory::euler_phi;
        for d in 1..=40u64 {
            let mut prod = Poly::one();
            for e in divisors(d) {
                prod = &prod * &cyclotomic(e);
            }
            assert_eq!(prod, Poly::x_pow_minus_one(d as usize));
            assert_eq!(cyclotomic(d).degree(), Some(euler_phi(d) as usize));
        }
    }

    #[test]
    fn display_syntax() {
        assert_eq!(Poly::from_integers(&[1, -2, 0, 3]).to_string(), "1 - 2*x + 3*x^3");
        assert_eq!(Poly::from_integers(&[0, 1]).to_string(), "x");
        assert_eq!(Poly::from_integers(&[0, -1]).to_string(), "-x");
        assert_eq!(Poly::zero().to_string(), "0");
        let half = Poly::from_coeffs(vec![BigRational::new(BigInt::from(3), BigInt::from(2))]);
        assert_eq!(half.to_string(), "3/2");
    }
}
