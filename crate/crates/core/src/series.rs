//! Periodic coefficient series and their scalar carriers.
//!
//! An element of `R(L, kappa)` is the series `sum k^(kappa-1) a(k) x^k` with
//! `a` periodic of period `L`; here it is stored as the triple
//! `(L, kappa, a(0..L-1))`. The carrier of the coefficients is generic:
//! structural identities run on exact scalars (rationals or roots of unity
//! in exponent form), while rank computations evaluate to complex doubles.

use num::complex::Complex64;
use num::rational::BigRational;
use num::traits::Zero;
use serde::Serialize;

use crate::numtheory::{divisors, gcd, lcm};

/// Tolerance used for approximate scalar comparisons (complex doubles).
const APPROX_EQ_TOL: f64 = 1e-9;

/// A root of unity in exponent form, or zero.
///
/// `Root { order, exp }` denotes e^(2 pi i exp / order), kept in canonical
/// form: `exp < order` and gcd(exp, order) reduced out, so equal values have
/// equal representations (`Root { order: 1, exp: 0 }` is 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CycValue {
    Zero,
    Root { order: u64, exp: u64 },
}

impl CycValue {
    pub fn one() -> Self {
        CycValue::Root { order: 1, exp: 0 }
    }

    /// e^(2 pi i exp / order), canonicalized.
    pub fn root(order: u64, exp: u64) -> Self {
        assert!(order >= 1);
        let exp = exp % order;
        let g = gcd(exp, order);
        if exp == 0 {
            CycValue::one()
        } else {
            CycValue::Root {
                order: order / g,
                exp: exp / g,
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, CycValue::Zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (CycValue::Zero, _) | (_, CycValue::Zero) => CycValue::Zero,
            (
                CycValue::Root { order: o1, exp: e1 },
                CycValue::Root { order: o2, exp: e2 },
            ) => {
                let o = lcm(*o1, *o2);
                CycValue::root(o, (e1 * (o / o1) + e2 * (o / o2)) % o)
            }
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        match self {
            CycValue::Zero => None,
            CycValue::Root { order, exp } => Some(CycValue::root(*order, (order - exp) % order)),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            CycValue::Zero => Complex64::new(0.0, 0.0),
            CycValue::Root { order, exp } => Complex64::from_polar(
                1.0,
                2.0 * std::f64::consts::PI * *exp as f64 / *order as f64,
            ),
        }
    }
}

/// Scalar operations needed by the structural eigen checks. `ratio` returns
/// `b / a` for nonzero `a`; comparisons are exact for exact carriers and
/// tolerance-based for complex doubles.
pub trait Coeff: Clone + std::fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn ratio(b: &Self, a: &Self) -> Option<Self>;
    fn approx_eq(&self, other: &Self) -> bool;
}

impl Coeff for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ratio(b: &Self, a: &Self) -> Option<Self> {
        if Zero::is_zero(a) {
            None
        } else {
            Some(b / a)
        }
    }
    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }
}

impl Coeff for CycValue {
    fn zero() -> Self {
        CycValue::Zero
    }
    fn is_zero(&self) -> bool {
        CycValue::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        CycValue::mul(self, other)
    }
    fn ratio(b: &Self, a: &Self) -> Option<Self> {
        a.inverse().map(|inv| b.mul(&inv))
    }
    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }
}

impl Coeff for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.norm() <= APPROX_EQ_TOL
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ratio(b: &Self, a: &Self) -> Option<Self> {
        if Coeff::is_zero(a) {
            None
        } else {
            Some(b / a)
        }
    }
    fn approx_eq(&self, other: &Self) -> bool {
        (self - other).norm() <= APPROX_EQ_TOL
    }
}

/// A periodic coefficient series: the element
/// `sum_{k>=0} k^(weight-1) a(k mod level) x^k` of `R(level, weight)`.
///
/// The stored level need not be minimal; [`PeriodicSeries::minimal_level`]
/// returns the least period of the coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicSeries<S> {
    level: u64,
    weight: u64,
    coeffs: Vec<S>,
}

impl<S: Coeff> PeriodicSeries<S> {
    pub fn new(level: u64, weight: u64, coeffs: Vec<S>) -> Self {
        assert!(level >= 1 && weight >= 1);
        assert_eq!(coeffs.len() as u64, level, "one coefficient per residue");
        PeriodicSeries {
            level,
            weight,
            coeffs,
        }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Coefficient of the periodic part at `k` (reduced mod the level).
    pub fn coeff(&self, k: u64) -> &S {
        &self.coeffs[(k % self.level) as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Least period of the coefficient vector (a divisor of the level).
    pub fn minimal_level(&self) -> u64 {
        'outer: for d in divisors(self.level) {
            for k in 0..self.level {
                if !self.coeffs[k as usize].approx_eq(&self.coeffs[(k % d) as usize]) {
                    continue 'outer;
                }
            }
            return d;
        }
        self.level
    }

    /// The same series re-stored at period `new_level` (a multiple of the
    /// current level).
    pub fn extend_to_level(&self, new_level: u64) -> Self {
        assert!(new_level % self.level == 0, "period extension only");
        let coeffs = (0..new_level)
            .map(|k| self.coeffs[(k % self.level) as usize].clone())
            .collect();
        PeriodicSeries::new(new_level, self.weight, coeffs)
    }
}

impl PeriodicSeries<CycValue> {
    pub fn to_complex(&self) -> PeriodicSeries<Complex64> {
        PeriodicSeries::new(
            self.level,
            self.weight,
            self.coeffs.iter().map(CycValue::to_complex).collect(),
        )
    }
}

impl PeriodicSeries<BigRational> {
    pub fn to_complex(&self) -> PeriodicSeries<Complex64> {
        use num::ToPrimitive;
        PeriodicSeries::new(
            self.level,
            self.weight,
            self.coeffs
                .iter()
                .map(|r| Complex64::new(r.to_f64().expect("finite rational"), 0.0))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn cyc_values_canonicalize() {
        assert_eq!(CycValue::root(4, 2), CycValue::root(2, 1)); // both are -1
        assert_eq!(CycValue::root(6, 0), CycValue::one());
        assert_eq!(
            CycValue::root(6, 2).mul(&CycValue::root(6, 4)),
            CycValue::one()
        );
        assert_eq!(
            CycValue::root(4, 1).mul(&CycValue::root(4, 1)),
            CycValue::root(2, 1)
        );
        let w = CycValue::root(5, 2);
        assert_eq!(w.mul(&w.inverse().unwrap()), CycValue::one());
    }

    #[test]
    fn minimal_level_detects_true_period() {
        let s = PeriodicSeries::new(6, 1, vec![rat(1), rat(2), rat(1), rat(2), rat(1), rat(2)]);
        assert_eq!(s.minimal_level(), 2);
        let t = PeriodicSeries::new(6, 1, vec![rat(1), rat(2), rat(1), rat(2), rat(1), rat(3)]);
        assert_eq!(t.minimal_level(), 6);
        let u = PeriodicSeries::new(4, 2, vec![rat(7); 4]);
        assert_eq!(u.minimal_level(), 1);
    }

    #[test]
    fn extension_preserves_values() {
        let s = PeriodicSeries::new(2, 1, vec![rat(3), rat(5)]);
        let e = s.extend_to_level(6);
        for k in 0..12 {
            assert_eq!(e.coeff(k), s.coeff(k));
        }
        assert_eq!(e.minimal_level(), 2);
    }
}
