//! Simultaneous eigenfunctions of all the dissection operators.
//!
//! A series that is an eigenfunction of every `U_n` (zero eigenvalues
//! allowed) has a completely multiplicative, periodic eigenvalue map - a
//! Dirichlet character. The span `V(L, kappa)` of all simultaneous
//! eigenfunctions has a basis of character series indexed by the unitary
//! divisors of `L`, and its dimension is both `prod (phi(q_i) + 1)` over
//! the prime powers of `L` and `sum phi(M)` over the unitary divisors.

use std::collections::BTreeMap;

use num::complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::numtheory::{characters_mod, euler_phi, factorize, unitary_divisors};
use crate::series::{Coeff, CycValue, PeriodicSeries};

/// Tolerance for the stacked-basis rank computation.
const RANK_TOL: f64 = 1e-8;

/// The series `sum_k k^(kappa-1) chi(k) x^k` for a Dirichlet character
/// `chi` of the given modulus, stored in exponent form.
#[derive(Debug, Clone, Serialize)]
pub struct CharacterSeries {
    pub modulus: u64,
    /// Index of the character within `characters_mod(modulus)`.
    pub index: usize,
    pub kappa: u64,
    /// Common denominator of the value exponents.
    pub order: u64,
    /// Value exponent per residue; None encodes zero (non-units).
    pub exponents: Vec<Option<u64>>,
}

impl CharacterSeries {
    pub fn series(&self) -> PeriodicSeries<CycValue> {
        let coeffs = self
            .exponents
            .iter()
            .map(|e| match e {
                None => CycValue::Zero,
                Some(x) => CycValue::root(self.order, *x),
            })
            .collect();
        PeriodicSeries::new(self.modulus, self.kappa, coeffs)
    }

    /// Coefficient row of length `level` (the series read mod `level`),
    /// evaluated to complex doubles.
    pub fn complex_row(&self, level: u64) -> Vec<Complex64> {
        let series = self.series();
        (0..level).map(|k| series.coeff(k).to_complex()).collect()
    }
}

/// All `phi(modulus)` character series at one modulus.
pub fn character_series(modulus: u64, kappa: u64) -> Vec<CharacterSeries> {
    characters_mod(modulus)
        .into_iter()
        .enumerate()
        .map(|(index, chi)| CharacterSeries {
            modulus,
            index,
            kappa,
            order: chi.order(),
            exponents: (0..modulus).map(|k| chi.exponent_at(k)).collect(),
        })
        .collect()
}

/// Basis report for `V(L, kappa)`: members, and three independently
/// computed dimensions that must agree.
#[derive(Debug, Clone, Serialize)]
pub struct VBasisReport {
    #[serde(rename = "L")]
    pub level: u64,
    pub kappa: u64,
    pub members: Vec<CharacterSeries>,
    /// prod (phi(q) + 1) over prime powers q exactly dividing L.
    pub dim_product: u64,
    /// sum of phi(M) over unitary divisors M of L.
    pub dim_sum: u64,
    /// Numeric rank of the stacked coefficient matrix.
    pub dim_rank: usize,
}

pub fn v_basis(level: u64, kappa: u64) -> Result<VBasisReport> {
    v_basis_with_tol(level, kappa, RANK_TOL)
}

pub fn v_basis_with_tol(level: u64, kappa: u64, rel_tol: f64) -> Result<VBasisReport> {
    assert!(level >= 1 && kappa >= 1);
    let unitary = unitary_divisors(level);
    let mut members = Vec::new();
    for &m in &unitary {
        members.extend(character_series(m, kappa));
    }
    let dim_sum: u64 = unitary.iter().map(|&m| euler_phi(m)).sum();
    let dim_product: u64 = factorize(level)
        .into_iter()
        .map(|(p, e)| euler_phi(p.pow(e)) + 1)
        .product();
    let rows: Vec<Vec<Complex64>> = members.iter().map(|m| m.complex_row(level)).collect();
    let dim_rank = linalg::rank(rows, rel_tol);
    if dim_sum != dim_product || dim_sum != members.len() as u64 || dim_rank as u64 != dim_sum {
        return Err(Error::InternalTheoremViolation(format!(
            "dim V({level},{kappa}): product {dim_product}, sum {dim_sum}, members {}, rank {dim_rank}",
            members.len()
        )));
    }
    Ok(VBasisReport {
        level,
        kappa,
        members,
        dim_product,
        dim_sum,
        dim_rank,
    })
}

/// The set of `n` for which `f` is an eigenfunction of `U_n` (eigenvalue 0
/// admitted), with the eigenvalue map `omega_f`.
#[derive(Debug, Clone)]
pub struct CSetReport<S> {
    pub n_max: u64,
    pub members: Vec<u64>,
    pub omega: BTreeMap<u64, S>,
}

/// Scan `n = 1..=n_max` for the eigen-or-zero property
/// `a(n k mod L) = omega a(k)`, then check the closure laws: membership is
/// closed under products (within the bound) and under translation by the
/// level, with `omega_f` multiplicative and L-periodic.
pub fn c_set<S: Coeff>(f: &PeriodicSeries<S>, n_max: u64) -> Result<CSetReport<S>> {
    assert!(!f.is_zero(), "c_set: zero series");
    let level = f.level();
    let mut members = Vec::new();
    let mut omega = BTreeMap::new();
    for n in 1..=n_max {
        if let Some(w) = eigen_or_zero(f, n) {
            members.push(n);
            omega.insert(n, w);
        }
    }
    // Closure checks (consequences of the eigenfunction lemma).
    for &a in &members {
        for &b in &members {
            if a * b > n_max {
                continue;
            }
            let Some(w) = omega.get(&(a * b)) else {
                return Err(Error::InternalTheoremViolation(format!(
                    "C(f) not closed under product: {a} * {b}"
                )));
            };
            if !w.approx_eq(&omega[&a].mul(&omega[&b])) {
                return Err(Error::InternalTheoremViolation(format!(
                    "omega_f not multiplicative at {a} * {b}"
                )));
            }
        }
        if a + level <= n_max {
            match omega.get(&(a + level)) {
                Some(w) if w.approx_eq(&omega[&a]) => {}
                _ => {
                    return Err(Error::InternalTheoremViolation(format!(
                        "omega_f not periodic at {a} + {level}"
                    )))
                }
            }
        }
    }
    Ok(CSetReport {
        n_max,
        members,
        omega,
    })
}

/// Like [`crate::specop::verify_eigen`] but admitting the zero eigenvalue:
/// returns the scalar `omega` with `a(n k) = omega a(k)`, zero included.
fn eigen_or_zero<S: Coeff>(f: &PeriodicSeries<S>, n: u64) -> Option<S> {
    let level = f.level();
    let mut ratio: Option<S> = None;
    let mut needs_zero = false;
    for k in 0..level {
        let a = f.coeff(k);
        let b = f.coeff((n % level) * k % level);
        match (a.is_zero(), b.is_zero()) {
            (true, true) => {}
            (true, false) => return None,
            (false, true) => needs_zero = true,
            (false, false) => {
                let r = S::ratio(b, a)?;
                match &ratio {
                    None => ratio = Some(r),
                    Some(w) => {
                        if !w.approx_eq(&r) {
                            return None;
                        }
                    }
                }
            }
        }
    }
    match (needs_zero, ratio) {
        (true, Some(_)) => None,
        (true, None) | (false, None) => Some(S::zero()),
        (false, Some(w)) => Some(w),
    }
}

/// Identify the unique Dirichlet character modulo the minimal level of `f`
/// that matches `omega_f` on the whole tested range. Requires `f` to be
/// simultaneous on `[1, n_max]`; returns None otherwise.
pub fn match_character(f: &PeriodicSeries<CycValue>, n_max: u64) -> Option<(u64, usize)> {
    let cs = c_set(f, n_max).ok()?;
    if cs.members.len() as u64 != n_max {
        return None;
    }
    let modulus = f.minimal_level();
    for (index, chi) in characters_mod(modulus).iter().enumerate() {
        let matches = (1..=n_max).all(|n| {
            let expected = match chi.exponent_at(n) {
                None => CycValue::Zero,
                Some(e) => CycValue::root(chi.order(), e),
            };
            cs.omega[&n] == expected
        });
        if matches {
            return Some((modulus, index));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::{divisors, gcd};
    use num::rational::BigRational;
    use num::BigInt;

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn v_dimension_fixtures() {
        assert_eq!(v_basis(30, 1).unwrap().dim_sum, 30); // squarefree
        assert_eq!(v_basis(8, 1).unwrap().dim_sum, 5); // phi(8) + 1
        assert_eq!(v_basis(9, 2).unwrap().dim_sum, 7); // phi(9) + 1
        let r = v_basis(12, 1).unwrap();
        assert_eq!(r.dim_sum, 9);
        assert_eq!(r.dim_product, 9);
        assert_eq!(r.dim_rank, 9);
        assert_eq!(
            r.members.iter().map(|m| m.modulus).collect::<Vec<_>>(),
            vec![1, 3, 3, 4, 4, 12, 12, 12, 12]
        );
        assert_eq!(v_basis(1, 1).unwrap().dim_sum, 1);
    }

    #[test]
    fn unitary_divisor_splitting() {
        // A_L = A_{L/q} union q * A_{L/q} for each prime power q || L.
        for l in 2..=120u64 {
            for (p, e) in factorize(l) {
                let q = p.pow(e);
                let rest = l / q;
                let mut expected: Vec<u64> = unitary_divisors(rest)
                    .into_iter()
                    .flat_map(|d| [d, q * d])
                    .collect();
                expected.sort_unstable();
                assert_eq!(expected, unitary_divisors(l), "L={l} q={q}");
            }
        }
    }

    #[test]
    fn character_series_are_simultaneous() {
        for modulus in [1u64, 4, 5, 8, 12] {
            for cs in character_series(modulus, 1) {
                let f = cs.series();
                let report = c_set(&f, 3 * modulus.max(2)).unwrap();
                assert_eq!(report.members.len() as u64, 3 * modulus.max(2));
                // omega_f(n) = chi(n), zero exactly off the units.
                for &n in &report.members {
                    assert_eq!(
                        report.omega[&n].is_zero(),
                        gcd(n, modulus) > 1,
                        "modulus {modulus} n {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn chi_mod_4_has_omega_minus_one_at_3() {
        let chi = PeriodicSeries::new(
            4,
            1,
            vec![rat(0), rat(1), rat(0), rat(-1)],
        );
        let report = c_set(&chi, 12).unwrap();
        assert_eq!(report.omega[&3], rat(-1));
        assert_eq!(report.omega[&5], rat(1));
        assert!(report.omega[&2].is_zero());
        assert_eq!(report.members.len(), 12);
    }

    #[test]
    fn all_ones_series_matches_the_principal_character() {
        let ones = PeriodicSeries::new(1, 1, vec![CycValue::one()]);
        let report = c_set(&ones, 10).unwrap();
        assert!(report.omega.values().all(|w| *w == CycValue::one()));
        assert_eq!(match_character(&ones, 10), Some((1, 0)));
    }

    #[test]
    fn basis_members_identify_their_own_character() {
        // The match is against the minimal level of the series: a character
        // induced from a smaller modulus (e.g. the principal character mod
        // 8, whose series has period 2) identifies as the character there.
        for modulus in [1u64, 5, 8, 12] {
            for cs in character_series(modulus, 1) {
                let f = cs.series();
                let (matched_mod, matched_idx) =
                    match_character(&f, 4 * modulus.max(4)).expect("simultaneous");
                assert_eq!(matched_mod, f.minimal_level(), "modulus {modulus}");
                if f.minimal_level() == modulus {
                    assert_eq!(matched_idx, cs.index, "modulus {modulus}");
                } else {
                    // The matched character's series must tile back to f.
                    let tiled = character_series(matched_mod, 1)[matched_idx]
                        .series()
                        .extend_to_level(modulus);
                    assert_eq!(tiled.coeffs(), f.coeffs(), "modulus {modulus}");
                }
            }
        }
    }

    #[test]
    fn combinations_of_two_characters_are_not_simultaneous() {
        // chi_0 + chi_1 at modulus 5 fails the eigen test at some n.
        let series = character_series(5, 1);
        let a = series[0].series().to_complex();
        let b = series[1].series().to_complex();
        let sum = PeriodicSeries::new(
            5,
            1,
            (0..5)
                .map(|k| a.coeff(k) + b.coeff(k))
                .collect::<Vec<_>>(),
        );
        let report = c_set(&sum, 15).unwrap();
        assert!(report.members.len() < 15);
        assert_eq!(match_character(&series[1].series(), 15), Some((5, 1)));
    }

    #[test]
    fn dim_v_is_multiplicative() {
        for l1 in 1..=12u64 {
            for l2 in 1..=12u64 {
                if gcd(l1, l2) != 1 {
                    continue;
                }
                let d1 = v_basis(l1, 1).unwrap().dim_sum;
                let d2 = v_basis(l2, 1).unwrap().dim_sum;
                let d12 = v_basis(l1 * l2, 1).unwrap().dim_sum;
                assert_eq!(d12, d1 * d2, "{l1} * {l2}");
            }
        }
    }

    #[test]
    fn divisor_union_spans_no_more_than_unitary_union() {
        // The unitary divisors suffice: every chi mod a non-unitary divisor
        // lies in the span. Spot-check at L = 12: characters mod 6 exist
        // but add no rank.
        let r = v_basis(12, 1).unwrap();
        let mut rows: Vec<Vec<Complex64>> =
            r.members.iter().map(|m| m.complex_row(12)).collect();
        for cs in character_series(6, 1) {
            rows.push(cs.complex_row(12));
        }
        assert_eq!(linalg::rank(rows, 1e-8), 9);
        let _ = divisors(12);
    }
}
