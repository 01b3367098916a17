//! The dissection operator `U_n` restricted to `R(L, kappa)`.
//!
//! On the periodic part the operator is the L x L matrix with the single
//! nonzero `n^(kappa-1)` in row `k`, column `n k mod L`: the weight enters
//! only through that global scalar, and all structure lives in the
//! Zolotarev graph `Z(n, L)`. The kernel is spanned by the leaf indicators,
//! the eigenspace for `n^(kappa-1) omega` (omega a primitive m-th root of
//! unity) has one basis function per cycle whose length is a multiple of
//! `m`, and `U_n` is diagonalizable exactly when the graph has no branches.

use std::collections::VecDeque;

use num::complex::Complex64;
use num::rational::BigRational;
use num::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::numtheory::{
    divisors, euler_phi, gcd, gcd_pow_minus_one_mod, mobius, mult_order, pow_mod, primes_up_to,
    simplified_level,
};
use crate::series::{Coeff, CycValue, PeriodicSeries};
use crate::zgraph::{build, census_formula, ZolotarevGraph};

/// Default relative threshold for numeric rank decisions.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

/// e^(2 pi i / m), exact where representable so that matrices that ought to
/// vanish do so exactly instead of leaving float noise.
fn principal_root_of_unity(m: u64) -> Complex64 {
    match m {
        1 => Complex64::new(1.0, 0.0),
        2 => Complex64::new(-1.0, 0.0),
        4 => Complex64::new(0.0, 1.0),
        _ => Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / m as f64),
    }
}

/// Matrix model of `U_n` on the coefficient vectors of `R(L, kappa)`:
/// row `k` reads `a'(k) = n^(kappa-1) a(n k mod L)`.
#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    n: u64,
    level: u64,
    weight: u64,
    scale: u64,
    succ: Vec<usize>,
}

/// Build the operator matrix for `U_n` on `R(level, weight)`.
pub fn operator_matrix(n: u64, level: u64, weight: u64) -> OperatorMatrix {
    assert!(n >= 1 && level >= 1 && weight >= 1);
    let scale = n
        .checked_pow(u32::try_from(weight - 1).expect("small weight"))
        .expect("n^(kappa-1) fits in u64");
    let reduced = n % level;
    let succ = (0..level)
        .map(|k| ((reduced as u128 * k as u128) % level as u128) as usize)
        .collect();
    OperatorMatrix {
        n,
        level,
        weight,
        scale,
        succ,
    }
}

impl OperatorMatrix {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    /// The global scalar n^(kappa-1).
    pub fn scale(&self) -> u64 {
        self.scale
    }

    /// Entry at (row, col): `n^(kappa-1)` when col = n row mod L, else 0.
    pub fn entry(&self, row: u64, col: u64) -> u64 {
        if self.succ[(row % self.level) as usize] as u64 == col % self.level {
            self.scale
        } else {
            0
        }
    }

    /// Dense complex matrix divided by the scale (all nonzeros are 1).
    pub fn dense_normalized(&self) -> Vec<Vec<Complex64>> {
        let l = self.level as usize;
        let mut m = vec![vec![Complex64::new(0.0, 0.0); l]; l];
        for (row, &col) in self.succ.iter().enumerate() {
            m[row][col] += Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn apply_rational(&self, f: &PeriodicSeries<BigRational>) -> PeriodicSeries<BigRational> {
        assert_eq!(f.level(), self.level);
        let scale = BigRational::from(BigInt::from(self.scale));
        let coeffs = (0..self.level)
            .map(|k| &scale * f.coeff(self.succ[k as usize] as u64))
            .collect();
        PeriodicSeries::new(self.level, self.weight, coeffs)
    }

    pub fn apply_complex(&self, f: &PeriodicSeries<Complex64>) -> PeriodicSeries<Complex64> {
        assert_eq!(f.level(), self.level);
        let coeffs = (0..self.level)
            .map(|k| self.scale as f64 * f.coeff(self.succ[k as usize] as u64))
            .collect();
        PeriodicSeries::new(self.level, self.weight, coeffs)
    }

    /// Numeric nullity of the matrix, singular directions measured after
    /// dividing out the scale.
    pub fn nullity(&self, rel_tol: f64) -> usize {
        linalg::nullity(self.dense_normalized(), rel_tol)
    }

    /// Numeric nullity of `M - n^(kappa-1) omega I` for `omega = e^(2 pi i/m)`.
    pub fn eigen_nullity(&self, m: u64, rel_tol: f64) -> usize {
        assert!(m >= 1);
        let omega = principal_root_of_unity(m);
        let mut mat = self.dense_normalized();
        for (k, row) in mat.iter_mut().enumerate() {
            row[k] -= omega;
        }
        linalg::nullity(mat, rel_tol)
    }
}

/// Kernel of `U_n` on `R(L, kappa)`: dimension `L - L/gcd(n, L)`, spanned by
/// the indicators of the leaves of `Z(n, L)`. The numeric nullity of the
/// matrix is cross-checked against the closed form.
#[derive(Debug, Clone, Serialize)]
pub struct KernelReport {
    pub n: u64,
    #[serde(rename = "L")]
    pub level: u64,
    pub kappa: u64,
    pub dim: u64,
    pub leaves: Vec<u64>,
    pub nullity: usize,
}

impl KernelReport {
    /// Indicator series of the leaves: a basis of the kernel.
    pub fn basis(&self) -> Vec<PeriodicSeries<BigRational>> {
        self.leaves
            .iter()
            .map(|&leaf| {
                let coeffs = (0..self.level)
                    .map(|k| {
                        if k == leaf {
                            BigRational::from(BigInt::from(1))
                        } else {
                            <BigRational as Coeff>::zero()
                        }
                    })
                    .collect();
                PeriodicSeries::new(self.level, self.kappa, coeffs)
            })
            .collect()
    }
}

pub fn kernel(n: u64, level: u64, weight: u64) -> Result<KernelReport> {
    kernel_with_tol(n, level, weight, DEFAULT_RANK_TOL)
}

pub fn kernel_with_tol(n: u64, level: u64, weight: u64, rel_tol: f64) -> Result<KernelReport> {
    let graph = build(n, level);
    let leaves = graph.leaves();
    let dim = level - level / gcd(n, level);
    if leaves.len() as u64 != dim {
        return Err(Error::InternalTheoremViolation(format!(
            "kernel dimension: {} leaves vs closed form {dim} for Z({n},{level})",
            leaves.len()
        )));
    }
    let nullity = operator_matrix(n, level, weight).nullity(rel_tol);
    if nullity as u64 != dim {
        return Err(Error::InternalTheoremViolation(format!(
            "kernel of U_{n} on R({level},{weight}): numeric nullity {nullity} vs {dim}"
        )));
    }
    Ok(KernelReport {
        n,
        level,
        kappa: weight,
        dim,
        leaves,
        nullity,
    })
}

/// One basis eigenfunction: coefficients `omega^(-d(i, root))` on the
/// component of `root`, zero elsewhere, stored as exponents mod `order`.
#[derive(Debug, Clone, Serialize)]
pub struct EigenBasisFunction {
    pub n: u64,
    #[serde(rename = "L")]
    pub level: u64,
    pub kappa: u64,
    /// Order m of the root of unity omega.
    pub order: u64,
    /// Minimum residue of the cycle.
    pub root: u64,
    pub cycle_length: u64,
    /// Exponent of omega per residue; None encodes the zero coefficient.
    pub exponents: Vec<Option<u64>>,
}

impl EigenBasisFunction {
    pub fn to_cyc_series(&self) -> PeriodicSeries<CycValue> {
        let coeffs = self
            .exponents
            .iter()
            .map(|e| match e {
                None => CycValue::Zero,
                Some(x) => CycValue::root(self.order, *x),
            })
            .collect();
        PeriodicSeries::new(self.level, self.kappa, coeffs)
    }

    pub fn to_complex_series(&self) -> PeriodicSeries<Complex64> {
        self.to_cyc_series().to_complex()
    }
}

/// Basis and dimension of the eigenspace `E_n(omega, L, kappa)` for omega a
/// primitive m-th root of unity.
#[derive(Debug, Clone, Serialize)]
pub struct EigenReport {
    pub n: u64,
    #[serde(rename = "L")]
    pub level: u64,
    #[serde(rename = "L_n")]
    pub simplified_level: u64,
    pub kappa: u64,
    pub m: u64,
    pub dim_formula: u64,
    pub dim_rank: usize,
    pub basis: Vec<EigenBasisFunction>,
}

/// Distances from every node of the component of `target` to `target`,
/// by reverse breadth-first search along predecessor lists.
fn distances_to(graph: &ZolotarevGraph, target: u64) -> Vec<Option<u64>> {
    let l = graph.level() as usize;
    let t = (target % graph.level()) as usize;
    let mut dist: Vec<Option<u64>> = vec![None; l];
    dist[t] = Some(0);
    let mut queue = VecDeque::from([t]);
    while let Some(v) = queue.pop_front() {
        let next = dist[v].expect("visited") + 1;
        for &p in graph.predecessors(v as u64) {
            let p = p as usize;
            if dist[p].is_none() {
                dist[p] = Some(next);
                queue.push_back(p);
            }
        }
    }
    dist
}

pub fn eigenbasis(n: u64, level: u64, weight: u64, m: u64) -> Result<EigenReport> {
    eigenbasis_with_tol(n, level, weight, m, DEFAULT_RANK_TOL)
}

pub fn eigenbasis_with_tol(
    n: u64,
    level: u64,
    weight: u64,
    m: u64,
    rel_tol: f64,
) -> Result<EigenReport> {
    assert!(m >= 1);
    let graph = build(n, level);
    let census = census_formula(n, level)?;
    let dim_formula: u64 = census
        .entries()
        .iter()
        .filter(|(&j, _)| j % m == 0)
        .map(|(_, &b)| b)
        .sum();

    let mut basis = Vec::new();
    for cyc in graph.cycles() {
        if cyc.len() as u64 % m != 0 {
            continue;
        }
        let root = cyc[0];
        let dist = distances_to(&graph, root);
        let exponents = dist
            .iter()
            .map(|d| d.map(|steps| (m - steps % m) % m))
            .collect();
        basis.push(EigenBasisFunction {
            n,
            level,
            kappa: weight,
            order: m,
            root,
            cycle_length: cyc.len() as u64,
            exponents,
        });
    }
    if basis.len() as u64 != dim_formula {
        return Err(Error::InternalTheoremViolation(format!(
            "E_{n}(omega_{m}, {level}, {weight}): {} basis functions vs formula {dim_formula}",
            basis.len()
        )));
    }

    let dim_rank = operator_matrix(n, level, weight).eigen_nullity(m, rel_tol);
    if dim_rank as u64 != dim_formula {
        return Err(Error::InternalTheoremViolation(format!(
            "E_{n}(omega_{m}, {level}, {weight}): rank nullity {dim_rank} vs formula {dim_formula}"
        )));
    }

    debug_assert!(basis
        .iter()
        .all(|f| verify_eigen(&f.to_cyc_series(), n) == Some(CycValue::root(m, 1))));

    Ok(EigenReport {
        n,
        level,
        simplified_level: simplified_level(level, n).value,
        kappa: weight,
        m,
        dim_formula,
        dim_rank,
        basis,
    })
}

/// Check the level-reduction identity `E_n(omega, L, kappa) =
/// E_n(omega, L_n, kappa)`: equal dimensions, and every reduced-level basis
/// function lifts (by period extension) into the span of the full-level
/// basis.
pub fn level_reduction_check(n: u64, level: u64, weight: u64, m: u64) -> bool {
    let Ok(full) = eigenbasis(n, level, weight, m) else {
        return false;
    };
    let ln = simplified_level(level, n).value;
    let Ok(reduced) = eigenbasis(n, ln, weight, m) else {
        return false;
    };
    if full.dim_formula != reduced.dim_formula {
        return false;
    }
    let rows: Vec<Vec<Complex64>> = full
        .basis
        .iter()
        .map(|f| f.to_complex_series().coeffs().to_vec())
        .collect();
    reduced.basis.iter().all(|f| {
        let lifted = f.to_cyc_series().extend_to_level(level).to_complex();
        linalg::in_row_span(&rows, lifted.coeffs(), DEFAULT_RANK_TOL)
    })
}

/// Dimension of `S_n(L, kappa)`, the span of all nonzero-eigenvalue
/// eigenfunctions. Returns `L_n` after asserting the totient decomposition
/// `sum_{m | c} phi(m) dim E_n(omega_m) = L_n` with `c = ord_{L_n}(n)`.
pub fn s_dimension(n: u64, level: u64, weight: u64) -> Result<u64> {
    let _ = weight;
    let ln = simplified_level(level, n).value;
    let c = mult_order(n, ln).expect("n is a unit mod L_n");
    let census = census_formula(n, level)?;
    let mut total = 0u64;
    for m in divisors(c) {
        let dim_m: u64 = census
            .entries()
            .iter()
            .filter(|(&j, _)| j % m == 0)
            .map(|(_, &b)| b)
            .sum();
        total += euler_phi(m) * dim_m;
    }
    if total != ln {
        return Err(Error::InternalTheoremViolation(format!(
            "dim S_{n}({level}): totient decomposition {total} vs L_n = {ln}"
        )));
    }
    Ok(ln)
}

/// The five equivalent diagonalizability conditions, evaluated
/// independently. Condition (e) is `H(1) = 1` in the branch-free theorem;
/// when gcd(n, L) = 1 the graph has height 0 and the operator is a scaled
/// permutation, so the height test is taken as `H(1) <= 1`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DiagonalizabilityReport {
    pub n: u64,
    #[serde(rename = "L")]
    pub level: u64,
    /// dim S + dim ker = L.
    pub dimension_sum: bool,
    /// L / gcd(n, L) = L_n.
    pub level_ratio: bool,
    /// Z(n, L) has no branches.
    pub no_branches: bool,
    /// n is a root of Z(n, L).
    pub multiplier_is_root: bool,
    /// H(1) <= 1.
    pub height_at_most_one: bool,
    pub diagonalizable: bool,
}

pub fn diagonalizable(n: u64, level: u64) -> Result<DiagonalizabilityReport> {
    let graph = build(n, level);
    let (_, leaves, branches) = graph.counts();
    let dim_s = s_dimension(n, level, 1)?;
    let conds = [
        dim_s + leaves == level,
        level / gcd(n, level) == graph.simplified().value,
        branches == 0,
        graph.is_root(n % level),
        graph.graph_height() <= 1,
    ];
    if conds.iter().any(|&c| c != conds[0]) {
        return Err(Error::InternalTheoremViolation(format!(
            "diagonalizability conditions disagree for U_{n} on R({level}, kappa): {conds:?}"
        )));
    }
    Ok(DiagonalizabilityReport {
        n,
        level,
        dimension_sum: conds[0],
        level_ratio: conds[1],
        no_branches: conds[2],
        multiplier_is_root: conds[3],
        height_at_most_one: conds[4],
        diagonalizable: conds[0],
    })
}

/// Witness that `e^(2 pi i / target) n^(kappa-1)` lies in the spectrum of
/// `U_n`: a level with `target | ord_L(n)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SpectrumWitness {
    pub n: u64,
    pub target: u64,
    pub kappa: u64,
    #[serde(rename = "L")]
    pub level: u64,
    /// ord_L(n).
    pub order: u64,
    /// order / target, so that e^(2 pi i m / order) = e^(2 pi i / target).
    pub m: u64,
}

/// Smallest level `L <= level_bound` with gcd(n, L) = 1 and
/// `target | ord_L(n)`. `None` means inconclusive below the bound, never
/// absence from the spectrum.
pub fn spectrum_search(n: u64, target: u64, kappa: u64, level_bound: u64) -> Option<SpectrumWitness> {
    assert!(n >= 2 && target >= 1 && kappa >= 1);
    for level in 1..=level_bound {
        if gcd(n, level) != 1 {
            continue;
        }
        let order = mult_order(n, level).expect("coprime");
        if order % target == 0 {
            return Some(SpectrumWitness {
                n,
                target,
                kappa,
                level,
                order,
                m: order / target,
            });
        }
    }
    None
}

/// Test whether a periodic series satisfies `a(n k mod L) = omega a(k)` for
/// a single root of unity `omega`; returns it if so. A zero dissection
/// (eigenvalue 0) returns `None` - the kernel is reported elsewhere.
pub fn verify_eigen<S: Coeff>(f: &PeriodicSeries<S>, n: u64) -> Option<S> {
    if f.is_zero() {
        return None;
    }
    let level = f.level();
    let mut omega: Option<S> = None;
    let mut saw_zero_ratio = false;
    for k in 0..level {
        let a = f.coeff(k);
        let b = f.coeff((n % level) * k % level);
        match (a.is_zero(), b.is_zero()) {
            (true, true) => {}
            (true, false) => return None,
            (false, true) => saw_zero_ratio = true,
            (false, false) => {
                let ratio = S::ratio(b, a)?;
                match &omega {
                    None => omega = Some(ratio),
                    Some(w) => {
                        if !w.approx_eq(&ratio) {
                            return None;
                        }
                    }
                }
            }
        }
    }
    if saw_zero_ratio {
        return None;
    }
    let omega = omega?;
    // omega must be a root of unity: its order divides some cycle length,
    // so omega^j = 1 for some j <= L.
    let one = S::ratio(&omega, &omega)?;
    let mut power = omega.clone();
    let mut is_root = false;
    for _ in 0..level {
        if power.approx_eq(&one) {
            is_root = true;
            break;
        }
        power = power.mul(&omega);
    }
    if is_root {
        Some(omega)
    } else {
        None
    }
}

/// Per-prime Artin predicate scan: for each odd prime `p <= bound` not
/// dividing `n`, the formula predicate `b_{p-1} = 1` must coincide with the
/// direct order predicate `ord_p(n) = p - 1`.
#[derive(Debug, Clone, Serialize)]
pub struct ArtinReport {
    pub n: u64,
    pub bound: u64,
    pub scanned: u64,
    pub qualifying: Vec<u64>,
    pub count: u64,
    pub density: f64,
    pub rows: Vec<ArtinRow>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ArtinRow {
    pub p: u64,
    pub qualifies: bool,
    pub ord: u64,
}

pub fn artin_scan(n: u64, bound: u64) -> Result<ArtinReport> {
    assert!(n >= 2 && bound >= 3);
    let mut rows = Vec::new();
    let mut qualifying = Vec::new();
    for p in primes_up_to(bound) {
        if p == 2 || n % p == 0 {
            continue;
        }
        // b_{p-1} through the Moebius formula at prime level.
        let top = p - 1;
        let mut sum: i128 = 0;
        for d in divisors(top) {
            sum += mobius(top / d) as i128 * gcd_pow_minus_one_mod(n, d, p) as i128;
        }
        if sum < 0 || sum % top as i128 != 0 {
            return Err(Error::InternalFormulaViolation(format!(
                "b_{top} for Z({n},{p}): sum {sum} is not a nonnegative multiple of {top}"
            )));
        }
        let formula_predicate = sum / top as i128 == 1;
        let ord = mult_order(n, p).expect("p does not divide n");
        let order_predicate = ord == top;
        if formula_predicate != order_predicate {
            return Err(Error::InternalTheoremViolation(format!(
                "Artin predicates disagree at p = {p} for n = {n}"
            )));
        }
        if order_predicate {
            qualifying.push(p);
        }
        rows.push(ArtinRow {
            p,
            qualifies: order_predicate,
            ord,
        });
    }
    let scanned = rows.len() as u64;
    let count = qualifying.len() as u64;
    Ok(ArtinReport {
        n,
        bound,
        scanned,
        qualifying,
        count,
        density: if scanned == 0 {
            0.0
        } else {
            count as f64 / scanned as f64
        },
        rows,
    })
}

/// Witness that `e^(2 pi i / target)` is an eigenvalue of some `U_b` when
/// `target` lies in the image of Euler's totient: a prime `p = 1 mod
/// target` and a base whose order mod `p` is exactly `target`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PhiImageWitness {
    pub target: u64,
    /// Some x with phi(x) = target (the membership certificate).
    pub totient_preimage: u64,
    pub prime: u64,
    pub base: u64,
    pub order: u64,
}

pub fn phi_image_eigenvalue_check(target: u64, level_bound: u64) -> Option<PhiImageWitness> {
    assert!(target >= 1 && level_bound >= 2);
    // phi(x) = N forces x <= 2 N^2 at this scale.
    let preimage = (1..=2 * target * target + 2).find(|&x| euler_phi(x) == target)?;
    for p in primes_up_to(level_bound) {
        if (p - 1) % target != 0 {
            continue;
        }
        let g = (1..p)
            .find(|&g| mult_order(g, p) == Ok(p - 1))
            .expect("primes have primitive roots");
        let base = pow_mod(g, (p - 1) / target, p);
        let order = mult_order(base, p).expect("unit");
        debug_assert_eq!(order, target);
        return Some(PhiImageWitness {
            target,
            totient_preimage: preimage,
            prime: p,
            base,
            order,
        });
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::traits::One;

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn identity_operator() {
        let m = operator_matrix(1, 6, 3);
        assert_eq!(m.scale(), 1);
        for k in 0..6 {
            assert_eq!(m.entry(k, k), 1);
        }
        assert_eq!(m.nullity(DEFAULT_RANK_TOL), 0);
    }

    #[test]
    fn dissection_rows_for_u2_level4() {
        let m = operator_matrix(2, 4, 1);
        let f = PeriodicSeries::new(4, 1, vec![rat(10), rat(11), rat(12), rat(13)]);
        let g = m.apply_rational(&f);
        // a' = (a0, a2, a0, a2)
        assert_eq!(g.coeffs(), &[rat(10), rat(12), rat(10), rat(12)]);
    }

    #[test]
    fn cosine_series_is_fixed_by_u9() {
        let l = 10u64;
        let coeffs: Vec<Complex64> = (0..l)
            .map(|k| {
                Complex64::new(
                    2.0 * (2.0 * std::f64::consts::PI * k as f64 / 10.0).cos(),
                    0.0,
                )
            })
            .collect();
        let f = PeriodicSeries::new(l, 1, coeffs);
        let m = operator_matrix(9, l, 1);
        let g = m.apply_complex(&f);
        for k in 0..l {
            assert!((g.coeff(k) - f.coeff(k)).norm() < 1e-12);
        }
        assert_eq!(verify_eigen(&f, 9).map(|w| (w - 1.0).norm() < 1e-9), Some(true));
    }

    #[test]
    fn kernel_fixtures() {
        let k = kernel(2, 4, 1).unwrap();
        assert_eq!(k.dim, 2);
        assert_eq!(k.leaves, vec![1, 3]);
        assert_eq!(k.basis().len(), 2);

        let k = kernel(6, 60, 1).unwrap();
        assert_eq!(k.dim, 50);

        for (n, l) in [(3, 7), (7, 30), (9, 10)] {
            assert_eq!(kernel(n, l, 2).unwrap().dim, 0);
        }
    }

    #[test]
    fn kernel_members_die_under_the_operator() {
        let k = kernel(2, 4, 1).unwrap();
        let m = operator_matrix(2, 4, 1);
        for f in k.basis() {
            assert!(m.apply_rational(&f).is_zero());
        }
    }

    #[test]
    fn eigen_dimension_fixtures() {
        assert_eq!(eigenbasis(5, 6, 1, 2).unwrap().dim_formula, 2);
        assert_eq!(eigenbasis(3, 7, 1, 6).unwrap().dim_formula, 1);
        assert_eq!(eigenbasis(3, 7, 1, 1).unwrap().dim_formula, 2);
        assert_eq!(eigenbasis(3, 7, 1, 4).unwrap().dim_formula, 0);
        for kappa in 1..=3 {
            assert_eq!(eigenbasis(5, 6, kappa, 2).unwrap().dim_rank, 2);
        }
    }

    #[test]
    fn eigenbasis_functions_satisfy_the_relation() {
        for (n, l, m) in [(3u64, 7u64, 6u64), (5, 6, 2), (2, 20, 4), (6, 60, 1)] {
            let report = eigenbasis(n, l, 1, m).unwrap();
            for f in &report.basis {
                let series = f.to_cyc_series();
                assert_eq!(series.coeff(f.root), &CycValue::one());
                assert_eq!(verify_eigen(&series, n), Some(CycValue::root(m, 1)));
            }
        }
    }

    #[test]
    fn level_reduction() {
        assert!(level_reduction_check(2, 20, 1, 4));
        assert!(level_reduction_check(6, 60, 1, 1));
        assert!(level_reduction_check(3, 7, 1, 6)); // coprime: L = L_n
        assert!(level_reduction_check(12, 96, 2, 2));
    }

    #[test]
    fn s_dimension_fixtures() {
        assert_eq!(s_dimension(6, 60, 1).unwrap(), 5);
        assert_eq!(s_dimension(10, 20, 1).unwrap(), 1);
        for (n, l) in [(3, 7), (7, 30), (9, 10)] {
            assert_eq!(s_dimension(n, l, 1).unwrap(), l);
        }
    }

    #[test]
    fn diagonalizability_fixtures() {
        assert!(diagonalizable(8, 20).unwrap().diagonalizable);
        assert!(!diagonalizable(2, 20).unwrap().diagonalizable);
        assert!(!diagonalizable(2, 4).unwrap().diagonalizable);
        assert!(diagonalizable(3, 7).unwrap().diagonalizable); // coprime convention
        assert!(diagonalizable(20, 20).unwrap().diagonalizable); // star graph
    }

    #[test]
    fn spectrum_witnesses() {
        let w = spectrum_search(2, 14, 1, 100).unwrap();
        assert_eq!((w.level, w.m, w.order), (29, 2, 28));
        let w = spectrum_search(3, 1, 2, 10).unwrap();
        assert_eq!(w.level, 1);
        // No odd L <= 10 has ord_L(2) divisible by 100.
        assert!(spectrum_search(2, 100, 1, 10).is_none());
    }

    #[test]
    fn verify_eigen_cases() {
        // A kernel indicator dissects to zero: not an omega-eigenfunction.
        let leaf_indicator = PeriodicSeries::new(4, 1, vec![rat(0), rat(1), rat(0), rat(0)]);
        assert_eq!(verify_eigen(&leaf_indicator, 2), None);
        // The all-ones series is fixed by every U_n.
        let ones = PeriodicSeries::new(4, 1, vec![rat(1); 4]);
        for n in 1..10 {
            assert_eq!(verify_eigen(&ones, n), Some(BigRational::one()));
        }
        // chi mod 4: a = (0, 1, 0, -1), a(3k) = -a(k).
        let chi = PeriodicSeries::new(4, 1, vec![rat(0), rat(1), rat(0), rat(-1)]);
        assert_eq!(verify_eigen(&chi, 3), Some(rat(-1)));
        // Non-eigen series.
        let junk = PeriodicSeries::new(4, 1, vec![rat(1), rat(2), rat(3), rat(4)]);
        assert_eq!(verify_eigen(&junk, 3), None);
    }

    #[test]
    fn artin_scan_small() {
        let report = artin_scan(2, 100).unwrap();
        assert!(report.qualifying.contains(&29));
        assert!(!report.qualifying.contains(&17));
        // Direct recomputation.
        let direct: Vec<u64> = primes_up_to(100)
            .into_iter()
            .filter(|&p| p != 2 && mult_order(2, p) == Ok(p - 1))
            .collect();
        assert_eq!(report.qualifying, direct);
        assert_eq!(report.count as usize, direct.len());
    }

    #[test]
    fn phi_image_witnesses() {
        let w = phi_image_eigenvalue_check(4, 100).unwrap();
        assert_eq!(w.prime, 5);
        assert_eq!(w.order, 4);
        let w = phi_image_eigenvalue_check(1, 100).unwrap();
        assert_eq!(w.order, 1);
        let w = phi_image_eigenvalue_check(16, 100).unwrap();
        assert_eq!(w.prime, 17);
        assert_eq!(w.order, 16);
        // 14 is not a totient value.
        assert!(phi_image_eigenvalue_check(14, 1000).is_none());
    }
}
