//! Rational-function front end for the dissection operators.
//!
//! Rational functions analytic at the origin are held as exact
//! numerator/denominator pairs, normalized so the denominator has constant
//! term 1 and the fraction is in lowest terms. `U_n` acts by expanding a
//! Taylor prefix, keeping every n-th coefficient, and recovering the
//! minimal rational function from the dissected sequence via its shortest
//! linear recurrence. Levels and weights are detected by trial division of
//! the denominator by cyclotomic polynomials.

mod poly;

use std::collections::BTreeMap;
use std::fmt;

use num::rational::BigRational;
use num::traits::{One, Zero};
use num::BigInt;

pub use poly::{cyclotomic, Poly};

use crate::error::{Error, Result};
use crate::numtheory::{euler_phi, lcm};
use crate::series::PeriodicSeries;

/// Default bound on the cyclotomic indices tried by [`level_weight`].
pub const DEFAULT_CYCLOTOMIC_BOUND: u64 = 200;

/// A rational function p(x)/q(x) with q(0) = 1 and gcd(p, q) = 1; the
/// canonical form makes equality structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    /// Normalize a fraction; rejects denominators vanishing at the origin
    /// (including the zero denominator).
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() || den.constant_term().is_zero() {
            return Err(Error::PoleAtOrigin);
        }
        if num.is_zero() {
            return Ok(RationalFunction {
                num: Poly::zero(),
                den: Poly::one(),
            });
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).expect("gcd divides");
        let den = den.exact_div(&g).expect("gcd divides");
        let c = den.constant_term();
        debug_assert!(!c.is_zero());
        let inv = c.recip();
        Ok(RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn from_integers(num: &[i64], den: &[i64]) -> Result<Self> {
        RationalFunction::new(Poly::from_integers(num), Poly::from_integers(den))
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{} / {}", self.num, self.den)
        }
    }
}

/// First `terms` Taylor coefficients at the origin, via the linear
/// recurrence induced by the denominator.
pub fn taylor(f: &RationalFunction, terms: usize) -> Vec<BigRational> {
    let den = f.denominator();
    let deg = den.degree().expect("denominator is nonzero");
    debug_assert!(den.constant_term().is_one());
    let mut out = Vec::with_capacity(terms);
    for k in 0..terms {
        let mut acc = f.num.coeff(k);
        for i in 1..=deg.min(k) {
            let prev: &BigRational = &out[k - i];
            acc -= den.coeff(i) * prev;
        }
        out.push(acc);
    }
    out
}

/// Keep every n-th entry: `out[k] = input[n k]`. The output length is
/// `floor((len - 1)/n) + 1`.
pub fn dissect<T: Clone>(coeffs: &[T], n: u64) -> Vec<T> {
    assert!(n >= 1, "dissect: n must be positive");
    assert!(!coeffs.is_empty(), "dissect: empty input");
    coeffs.iter().step_by(n as usize).cloned().collect()
}

/// Shortest linear recurrence annihilating the sequence
/// (Berlekamp-Massey over the rationals). Returns the recurrence order and
/// the connection polynomial `c` with c(0) = 1.
fn minimal_recurrence(seq: &[BigRational]) -> (usize, Vec<BigRational>) {
    let n = seq.len();
    let mut conn = vec![BigRational::one()];
    let mut prev = vec![BigRational::one()];
    let mut order = 0usize;
    let mut shift = 1usize;
    let mut prev_disc = BigRational::one();
    for i in 0..n {
        let mut disc = BigRational::zero();
        for (j, c) in conn.iter().enumerate().take(order + 1) {
            if j <= i {
                disc += c * &seq[i - j];
            }
        }
        if disc.is_zero() {
            shift += 1;
            continue;
        }
        let coef = &disc / &prev_disc;
        if 2 * order <= i {
            let keep = conn.clone();
            if conn.len() < prev.len() + shift {
                conn.resize(prev.len() + shift, BigRational::zero());
            }
            for (j, b) in prev.iter().enumerate() {
                conn[j + shift] -= &coef * b;
            }
            order = i + 1 - order;
            prev = keep;
            prev_disc = disc;
            shift = 1;
        } else {
            if conn.len() < prev.len() + shift {
                conn.resize(prev.len() + shift, BigRational::zero());
            }
            for (j, b) in prev.iter().enumerate() {
                conn[j + shift] -= &coef * b;
            }
            shift += 1;
        }
    }
    while conn.last().is_some_and(Zero::is_zero) {
        conn.pop();
    }
    (order, conn)
}

/// Reconstruct the minimal rational function generating `seq`.
///
/// The sequence must be long enough to pin the recurrence down: an order-r
/// recurrence needs at least 2r + 2 terms, otherwise
/// [`Error::InsufficientTerms`] is returned. The all-zero sequence yields
/// the zero function.
pub fn reconstruct(seq: &[BigRational]) -> Result<RationalFunction> {
    assert!(!seq.is_empty(), "reconstruct: empty input");
    if seq.iter().all(Zero::is_zero) {
        return Ok(RationalFunction::zero());
    }
    let (order, conn) = minimal_recurrence(seq);
    if 2 * order + 2 > seq.len() {
        return Err(Error::InsufficientTerms {
            terms: seq.len(),
            order,
        });
    }
    let den = Poly::from_coeffs(conn.clone());
    // Numerator = (connection polynomial) * (sequence), truncated to the
    // first `order` coefficients; everything beyond cancels.
    let mut num_coeffs = vec![BigRational::zero(); order];
    for (k, c) in num_coeffs.iter_mut().enumerate() {
        for (j, cj) in conn.iter().enumerate().take(k + 1) {
            *c += cj * &seq[k - j];
        }
    }
    let out = RationalFunction::new(Poly::from_coeffs(num_coeffs), den)?;
    debug_assert_eq!(taylor(&out, seq.len()), seq, "reconstruction round trip");
    Ok(out)
}

/// Apply the dissection operator `U_n` to a rational function: expand,
/// keep every n-th coefficient, reconstruct. The term budget starts at
/// `2 (deg p + deg q + 4) n` and doubles on retry, four retries at most.
pub fn apply_un(f: &RationalFunction, n: u64) -> Result<RationalFunction> {
    assert!(n >= 1, "apply_un: n must be positive");
    let dn = f.num.degree().unwrap_or(0);
    let dd = f.den.degree().unwrap_or(0);
    let mut budget = 2 * (dn + dd + 4) * n as usize;
    let mut last = None;
    for _ in 0..=4 {
        let prefix = taylor(f, budget);
        let dissected = dissect(&prefix, n);
        match reconstruct(&dissected) {
            Ok(g) => return Ok(g),
            Err(e @ Error::InsufficientTerms { .. }) => {
                last = Some(e);
                budget *= 2;
            }
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// Cyclotomic factorization of the denominator: which `Phi_d` divide it,
/// with what multiplicities, and what is left over.
#[derive(Debug, Clone)]
pub struct LevelWeightReport {
    /// lcm of the cyclotomic indices present (1 when none).
    pub level: u64,
    /// Common multiplicity of the cyclotomic factors; None when there are
    /// no such factors or the multiplicities are not uniform.
    pub weight: Option<u64>,
    /// Index -> multiplicity for every dividing cyclotomic.
    pub factors: BTreeMap<u64, u32>,
    /// Denominator part left after removing all cyclotomic factors;
    /// a constant exactly when every pole is a root of unity.
    pub residual: Poly,
}

impl LevelWeightReport {
    pub fn poles_on_unit_roots(&self) -> bool {
        self.residual.degree() == Some(0)
    }
}

/// Trial-divide the denominator by `Phi_d` for d up to `d_max`.
pub fn level_weight(f: &RationalFunction, d_max: u64) -> LevelWeightReport {
    assert!(d_max >= 1);
    if f.is_zero() {
        return LevelWeightReport {
            level: 1,
            weight: Some(1),
            factors: BTreeMap::new(),
            residual: Poly::one(),
        };
    }
    let mut residual = f.den.clone();
    let mut factors = BTreeMap::new();
    for d in 1..=d_max {
        let remaining = residual.degree().expect("nonzero denominator");
        if remaining == 0 {
            break;
        }
        if euler_phi(d) as usize > remaining {
            continue;
        }
        let phi_d = cyclotomic(d);
        let mut mult = 0u32;
        while let Some(q) = residual.exact_div(&phi_d) {
            residual = q;
            mult += 1;
        }
        if mult > 0 {
            factors.insert(d, mult);
        }
    }
    let level = factors.keys().fold(1u64, |acc, &d| lcm(acc, d));
    let mut mults = factors.values();
    let weight = match mults.next() {
        None => None,
        Some(&first) => mults
            .all(|&m| m == first)
            .then_some(first as u64),
    };
    LevelWeightReport {
        level,
        weight,
        factors,
        residual,
    }
}

fn weight_power(k: u64, weight: u64) -> BigRational {
    // k^(weight-1), with 0^0 = 1 for the constant term at weight 1.
    if weight == 1 {
        BigRational::one()
    } else {
        BigRational::from(BigInt::from(k).pow(u32::try_from(weight - 1).expect("small weight")))
    }
}

/// Read a rational function as an element of `R(L, kappa)`: level and
/// weight from the cyclotomic report, coefficients `a(k) = t_k / k^(kappa-1)`.
/// The coefficient at residue 0 is pinned by periodicity (read at k = L).
/// Functions outside every `R(L, kappa)` are rejected.
pub fn to_periodic(f: &RationalFunction, d_max: u64) -> Result<PeriodicSeries<BigRational>> {
    if f.is_zero() {
        return Ok(PeriodicSeries::new(1, 1, vec![BigRational::zero()]));
    }
    let report = level_weight(f, d_max);
    if !report.poles_on_unit_roots() {
        return Err(Error::NotInRLKappa(
            "some pole is not a root of unity".into(),
        ));
    }
    let Some(weight) = report.weight else {
        return Err(Error::NotInRLKappa(if report.factors.is_empty() {
            "no poles, so no weight".into()
        } else {
            "pole multiplicities are not uniform".into()
        }));
    };
    let level = report.level;
    let prefix = taylor(f, level as usize + 1);
    let mut coeffs = vec![BigRational::zero(); level as usize];
    for k in 1..=level {
        let a = &prefix[k as usize] / weight_power(k, weight);
        coeffs[(k % level) as usize] = a;
    }
    if weight == 1 {
        // Residue 0 is directly visible in the constant coefficient; the
        // k = L reading above must agree, which the rebuild check enforces.
        coeffs[0] = prefix[0].clone();
    }
    let candidate = PeriodicSeries::new(level, weight, coeffs);
    if &from_periodic(&candidate)? != f {
        return Err(Error::NotInRLKappa(
            "coefficients are not k^(kappa-1) times an L-periodic sequence".into(),
        ));
    }
    Ok(candidate)
}

/// The rational function `sum_k k^(kappa-1) a(k mod L) x^k`.
pub fn from_periodic(p: &PeriodicSeries<BigRational>) -> Result<RationalFunction> {
    let level = p.level();
    let weight = p.weight();
    let terms = 2 * (level * weight) as usize + 6;
    let seq: Vec<BigRational> = (0..terms as u64)
        .map(|k| weight_power(k, weight) * p.coeff(k))
        .collect();
    reconstruct(&seq)
}

/// Parse "p(x) / q(x)" in sparse `c*x^k` syntax. The numerator/denominator
/// separator is a slash surrounded by spaces; rational coefficients are
/// written without spaces (`3/2*x^2`). A missing denominator means 1.
pub fn parse_rational_function(text: &str) -> Result<RationalFunction> {
    let (num_text, den_text) = match text.split_once(" / ") {
        Some((a, b)) => (a, b),
        None => (text, "1"),
    };
    RationalFunction::new(parse_poly(num_text)?, parse_poly(den_text)?)
}

fn parse_poly(text: &str) -> Result<Poly> {
    let squeezed: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if squeezed.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    // Split into signed terms.
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, ch) in squeezed.char_indices().skip(1) {
        if ch == '+' || ch == '-' {
            terms.push(&squeezed[start..i]);
            start = i;
        }
    }
    terms.push(&squeezed[start..]);

    let mut acc = Poly::zero();
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-BigRational::one(), rest),
            None => (BigRational::one(), term.strip_prefix('+').unwrap_or(term)),
        };
        if body.is_empty() {
            return Err(Error::Parse(format!("dangling sign in '{text}'")));
        }
        let (coeff_text, degree) = match body.split_once('x') {
            None => (body, 0usize),
            Some((c, rest)) => {
                let deg = match rest.strip_prefix('^') {
                    None if rest.is_empty() => 1usize,
                    None => return Err(Error::Parse(format!("bad term '{term}'"))),
                    Some(d) => d
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad exponent in '{term}'")))?,
                };
                (c.strip_suffix('*').unwrap_or(c), deg)
            }
        };
        let coeff = if coeff_text.is_empty() {
            BigRational::one()
        } else {
            coeff_text
                .parse::<BigRational>()
                .map_err(|_| Error::Parse(format!("bad coefficient '{coeff_text}'")))?
        };
        acc = &acc + &Poly::monomial(sign * coeff, degree);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn rats(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&n| rat(n)).collect()
    }

    #[test]
    fn geometric_series() {
        let f = RationalFunction::from_integers(&[1], &[1, -1]).unwrap();
        assert_eq!(taylor(&f, 5), rats(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn binomial_and_fibonacci_series() {
        let f = RationalFunction::from_integers(&[1], &[1, -2, 1]).unwrap();
        assert_eq!(taylor(&f, 5), rats(&[1, 2, 3, 4, 5]));
        let fib = RationalFunction::from_integers(&[0, 1], &[1, -1, -1]).unwrap();
        assert_eq!(taylor(&fib, 7), rats(&[0, 1, 1, 2, 3, 5, 8]));
    }

    #[test]
    fn dissect_indexing() {
        let v = rats(&[1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(dissect(&v, 1), v);
        assert_eq!(dissect(&v, 2), rats(&[1, 3, 5, 7]));
        assert_eq!(dissect(&v, 3), rats(&[1, 4, 7]));
        assert_eq!(dissect(&v, 10), rats(&[1]));
    }

    #[test]
    fn reconstruct_fixtures() {
        let ones = reconstruct(&rats(&[1, 1, 1, 1, 1, 1])).unwrap();
        assert_eq!(ones, RationalFunction::from_integers(&[1], &[1, -1]).unwrap());

        let fib = reconstruct(&rats(&[0, 1, 1, 2, 3, 5, 8])).unwrap();
        assert_eq!(fib, RationalFunction::from_integers(&[0, 1], &[1, -1, -1]).unwrap());

        let zero = reconstruct(&rats(&[0, 0, 0])).unwrap();
        assert!(zero.is_zero());

        // a(3k) = 8^k from 1/(1-2x).
        let f = RationalFunction::from_integers(&[1], &[1, -2]).unwrap();
        let dis = dissect(&taylor(&f, 40), 3);
        assert_eq!(
            reconstruct(&dis).unwrap(),
            RationalFunction::from_integers(&[1], &[1, -8]).unwrap()
        );
    }

    #[test]
    fn reconstruct_needs_enough_terms() {
        // Fibonacci needs 2*2 + 2 = 6 terms.
        let short = rats(&[0, 1, 1, 2, 3]);
        assert!(matches!(
            reconstruct(&short),
            Err(Error::InsufficientTerms { .. })
        ));
    }

    #[test]
    fn reconstruct_handles_polynomial_parts() {
        // x^3/(1-x) has a delayed start.
        let f = RationalFunction::from_integers(&[0, 0, 0, 1], &[1, -1]).unwrap();
        let t = taylor(&f, 12);
        assert_eq!(reconstruct(&t).unwrap(), f);
        // A plain polynomial comes back as itself over denominator 1.
        let p = RationalFunction::from_integers(&[5, 0, 2], &[1]).unwrap();
        assert_eq!(reconstruct(&taylor(&p, 10)).unwrap(), p);
    }

    #[test]
    fn trivial_eigenfunction_is_fixed_by_every_un() {
        let f = RationalFunction::from_integers(&[1], &[1, -1]).unwrap();
        for n in 1..=20 {
            assert_eq!(apply_un(&f, n).unwrap(), f);
        }
    }

    #[test]
    fn apply_un_semigroup_spot_check() {
        let f = RationalFunction::from_integers(&[1, 3], &[1, 0, 0, -1]).unwrap();
        let u2u3 = apply_un(&apply_un(&f, 3).unwrap(), 2).unwrap();
        let u6 = apply_un(&f, 6).unwrap();
        assert_eq!(u2u3, u6);
    }

    #[test]
    fn level_weight_fixtures() {
        let f = RationalFunction::from_integers(&[1], &[1, -1]).unwrap();
        let r = level_weight(&f, 20);
        assert_eq!(r.level, 1);
        assert_eq!(r.weight, Some(1));
        assert!(r.poles_on_unit_roots());

        // Denominator 1 - 2 cos(2 pi / 10) x + x^2 = Phi_10 (real minimal
        // form of the zeta_10 pole pair) is detected at level 10; here we
        // use the full 1 - x^10 which carries every divisor of 10.
        let g = RationalFunction::new(Poly::one(), Poly::x_pow_minus_one(10).scale(&-rat(1)))
            .unwrap();
        let r = level_weight(&g, 20);
        assert_eq!(r.level, 10);
        assert_eq!(r.weight, Some(1));
        assert_eq!(r.factors.len(), 4); // d = 1, 2, 5, 10

        let h = RationalFunction::from_integers(&[1], &[1, -2]).unwrap();
        let r = level_weight(&h, 20);
        assert!(!r.poles_on_unit_roots());
        assert_eq!(r.residual, Poly::from_integers(&[1, -2]));
    }

    #[test]
    fn phi_10_alone_is_level_10() {
        // Poles exactly at the primitive 10th roots of unity, as for the
        // cosine series 2 cos(2 pi k / 10).
        let f = RationalFunction::new(Poly::from_integers(&[2, -1]), cyclotomic(10)).unwrap();
        let r = level_weight(&f, 20);
        assert_eq!(r.level, 10);
        assert_eq!(r.weight, Some(1));
        assert_eq!(r.factors.get(&10), Some(&1));
    }

    #[test]
    fn periodic_round_trips() {
        let ones = RationalFunction::from_integers(&[1], &[1, -1]).unwrap();
        let q = to_periodic(&ones, 50).unwrap();
        assert_eq!((q.level(), q.weight()), (1, 1));
        assert_eq!(q.coeffs(), &[rat(1)]);

        let p = PeriodicSeries::new(4, 1, rats(&[0, 3, 0, 17]));
        let f = from_periodic(&p).unwrap();
        assert_eq!(to_periodic(&f, 50).unwrap(), p);

        // Weight 2 with a nonzero residue-0 coefficient: periodicity pins
        // a(0) even though the k = 0 term vanishes.
        let q = PeriodicSeries::new(3, 2, rats(&[7, 1, 2]));
        let g = from_periodic(&q).unwrap();
        assert_eq!(to_periodic(&g, 50).unwrap(), q);
    }

    #[test]
    fn kernel_membership_at_level_four() {
        // L = 4, a = (0, 3, 0, 17): U_2 annihilates it.
        let p = PeriodicSeries::new(4, 1, rats(&[0, 3, 0, 17]));
        let f = from_periodic(&p).unwrap();
        assert!(apply_un(&f, 2).unwrap().is_zero());
    }

    #[test]
    fn to_periodic_rejects_non_members() {
        // Pole off the unit circle.
        let f = RationalFunction::from_integers(&[1], &[1, -2]).unwrap();
        assert!(matches!(
            to_periodic(&f, 50),
            Err(Error::NotInRLKappa(_))
        ));
        // Mixed weights: 1/(1-x) + 1/(1-x)^2 has non-uniform multiplicity.
        let g = RationalFunction::from_integers(&[2, -1], &[1, -2, 1]).unwrap();
        assert!(matches!(to_periodic(&g, 50), Err(Error::NotInRLKappa(_))));
        // A nonzero polynomial has no weight.
        let p = RationalFunction::from_integers(&[5], &[1]).unwrap();
        assert!(matches!(to_periodic(&p, 50), Err(Error::NotInRLKappa(_))));
    }

    #[test]
    fn parse_and_display() {
        let f = parse_rational_function("3*x + 17*x^3 / 1 - x^4").unwrap();
        assert_eq!(f, RationalFunction::from_integers(&[0, 3, 0, 17], &[1, 0, 0, 0, -1]).unwrap());
        assert_eq!(f.to_string(), "3*x + 17*x^3 / 1 - x^4");

        let g = parse_rational_function("x / 1 - x - x^2").unwrap();
        assert_eq!(g, RationalFunction::from_integers(&[0, 1], &[1, -1, -1]).unwrap());

        let h = parse_rational_function("1/2 - 1/2*x^2").unwrap();
        assert_eq!(h.to_string(), "1/2 - 1/2*x^2");

        let round = parse_rational_function(&g.to_string()).unwrap();
        assert_eq!(round, g);

        assert!(parse_rational_function("x^ / 1").is_err());
        assert!(parse_rational_function("1 / x").is_err()); // pole at origin
    }

    #[test]
    fn normalization_cancels_common_factors() {
        // (x-1)(x+2) / (x-1)(1+x) reduces to (2+x)/(1+x), constant term 1.
        let num = &Poly::from_integers(&[-1, 1]) * &Poly::from_integers(&[2, 1]);
        let den = &Poly::from_integers(&[-1, 1]) * &Poly::from_integers(&[1, 1]);
        let f = RationalFunction::new(num, den).unwrap();
        assert_eq!(f, RationalFunction::from_integers(&[2, 1], &[1, 1]).unwrap());
    }
}
