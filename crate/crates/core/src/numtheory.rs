//! Exact elementary number theory shared by every other module.
//!
//! All moduli here are desk-scale (at most a few million), so trial division,
//! sieves and exhaustive primitive-root searches are the right tools.
//! Quantities of the form `n^d - 1` are computed exactly: in 128-bit integers
//! while they fit, and in big integers beyond that.

use std::collections::HashMap;

use num::bigint::BigUint;
use num::complex::Complex64;
use num::integer::Integer;

use crate::error::{Error, Result};

/// Greatest common divisor, with the convention gcd(0, m) = m.
pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Least common multiple.
pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Prime factorization by trial division, as (prime, exponent) pairs in
/// ascending prime order. `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize: n must be positive");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors: n must be positive");
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let prev = divs.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            divs.extend(prev.iter().map(|d| d * pk));
        }
    }
    divs.sort_unstable();
    divs
}

/// Moebius function mu(n).
pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1, "mobius: n must be positive");
    let factors = factorize(n);
    if factors.iter().any(|&(_, e)| e > 1) {
        return 0;
    }
    if factors.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Euler totient phi(n).
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi: n must be positive");
    let mut phi = n;
    for (p, _) in factorize(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

/// Modular exponentiation, `base^exp mod modulus` (modulus >= 1).
pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    assert!(modulus >= 1, "pow_mod: modulus must be positive");
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = (base as u128) % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `modulus`, when gcd(a, modulus) = 1.
pub fn mod_inverse(a: u64, modulus: u64) -> Option<u64> {
    assert!(modulus >= 1);
    if modulus == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (modulus as i128, (a % modulus) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(modulus as i128) as u64)
}

/// Multiplicative order of `n` modulo `modulus`.
///
/// The order is found by starting from phi(modulus) and stripping prime
/// factors, so it stays cheap even for large moduli.
pub fn mult_order(n: u64, modulus: u64) -> Result<u64> {
    assert!(modulus >= 1, "mult_order: modulus must be positive");
    if modulus == 1 {
        return Ok(1);
    }
    let r = n % modulus;
    if gcd(r, modulus) != 1 {
        return Err(Error::OrderUndefined { n, modulus });
    }
    let phi = euler_phi(modulus);
    let mut ord = phi;
    for (q, _) in factorize(phi) {
        while ord % q == 0 && pow_mod(r, ord / q, modulus) == 1 {
            ord /= q;
        }
    }
    Ok(ord)
}

/// The simplified level `L_n` together with the depth of the recursion that
/// computes it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimplifiedLevel {
    /// Largest divisor of `L` coprime to `n`.
    pub value: u64,
    /// Number of steps of `x -> x / gcd(x, n)` needed to reach `value`; this
    /// equals the height of the Zolotarev graph `Z(n, L)`.
    pub depth: u32,
}

/// Compute `L_n`, the largest divisor of `level` coprime to `n`, two ways:
/// by stripping every prime of `n` from `level`, and by the quotient
/// recursion `x_{j+1} = x_j / gcd(x_j, n)`. The two routes must agree.
pub fn simplified_level(level: u64, n: u64) -> SimplifiedLevel {
    assert!(level >= 1 && n >= 1, "simplified_level: positive inputs required");
    let mut stripped = 1u64;
    for (p, e) in factorize(level) {
        if n % p != 0 {
            stripped *= p.pow(e);
        }
    }
    let mut x = level;
    let mut depth = 0u32;
    loop {
        let g = gcd(x, n);
        if g == 1 {
            break;
        }
        x /= g;
        depth += 1;
    }
    assert_eq!(
        stripped, x,
        "simplified_level: the two computations of L_n disagree"
    );
    SimplifiedLevel { value: x, depth }
}

/// Unitary divisors of `level`: divisors `d` with gcd(d, level/d) = 1,
/// ascending. There are exactly 2^(number of distinct primes) of them.
pub fn unitary_divisors(level: u64) -> Vec<u64> {
    assert!(level >= 1);
    let out: Vec<u64> = divisors(level)
        .into_iter()
        .filter(|&d| gcd(d, level / d) == 1)
        .collect();
    debug_assert_eq!(out.len(), 1usize << factorize(level).len());
    out
}

/// All primes up to and including `bound`, ascending (sieve of Eratosthenes).
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    assert!(bound >= 2, "primes_up_to: bound must be at least 2");
    let b = bound as usize;
    let mut is_composite = vec![false; b + 1];
    let mut primes = Vec::new();
    for p in 2..=b {
        if !is_composite[p] {
            primes.push(p as u64);
            let mut m = p * p;
            while m <= b {
                is_composite[m] = true;
                m += p;
            }
        }
    }
    primes
}

/// gcd(n^d - 1, modulus), with `n^d` computed exactly: 128-bit integers
/// while the power fits, big integers beyond.
pub fn gcd_pow_minus_one(n: u64, d: u64, modulus: u64) -> u64 {
    assert!(n >= 1 && d >= 1 && modulus >= 1);
    let mut acc: i128 = 1;
    let mut fits = true;
    for _ in 0..d {
        match acc.checked_mul(n as i128) {
            Some(v) => acc = v,
            None => {
                fits = false;
                break;
            }
        }
    }
    if fits {
        return gcd_i128_u64(acc - 1, modulus);
    }
    let big = BigUint::from(n).pow(u32::try_from(d).expect("exponent fits u32"));
    gcd_big_minus_one_u64(&big, modulus)
}

/// The table `gcd(n^d - 1, modulus)` for d = 1..=d_max, computed
/// incrementally with the same exact-power policy as [`gcd_pow_minus_one`].
/// Entry 0 of the returned vector is unused (set to 0).
pub fn gcd_pow_minus_one_table(n: u64, modulus: u64, d_max: usize) -> Vec<u64> {
    assert!(n >= 1 && modulus >= 1);
    let mut out = vec![0u64; d_max + 1];
    let mut small: i128 = 1;
    let mut big: Option<BigUint> = None;
    for slot in out.iter_mut().skip(1) {
        match &mut big {
            None => match small.checked_mul(n as i128) {
                Some(v) => {
                    small = v;
                    *slot = gcd_i128_u64(small - 1, modulus);
                }
                None => {
                    let mut b = BigUint::from(small as u128);
                    b *= n;
                    *slot = gcd_big_minus_one_u64(&b, modulus);
                    big = Some(b);
                }
            },
            Some(b) => {
                *b *= n;
                *slot = gcd_big_minus_one_u64(b, modulus);
            }
        }
    }
    out
}

/// gcd(n^d - 1, modulus) through the identity gcd(x, m) = gcd(x mod m, m),
/// using modular exponentiation. Agrees with [`gcd_pow_minus_one`] on all
/// inputs; used where exponents are large.
pub fn gcd_pow_minus_one_mod(n: u64, d: u64, modulus: u64) -> u64 {
    assert!(n >= 1 && d >= 1 && modulus >= 1);
    if modulus == 1 {
        return 1;
    }
    let r = pow_mod(n, d, modulus);
    // (n^d - 1) mod modulus, avoiding underflow at r = 0.
    let rem = (r + modulus - 1) % modulus;
    gcd(rem, modulus)
}

fn gcd_i128_u64(x: i128, modulus: u64) -> u64 {
    debug_assert!(x >= 0);
    let rem = (x % modulus as i128) as u64;
    gcd(rem, modulus)
}

/// gcd(x - 1, modulus) for x >= 1, reducing x mod the modulus first (the
/// opening step of Euclid's algorithm, done as one long division instead of
/// handing a huge operand to a binary gcd).
fn gcd_big_minus_one_u64(x: &BigUint, modulus: u64) -> u64 {
    let rem = u64::try_from(x % modulus).expect("remainder below modulus");
    gcd((rem + modulus - 1) % modulus, modulus)
}

/// Decomposition of the unit group (Z/LZ)^* as a product of cyclic groups.
///
/// Built by CRT over the prime powers of the modulus: odd prime powers
/// contribute a primitive root, 2^k (k >= 3) contributes the pair {-1, 5}.
#[derive(Debug, Clone)]
pub struct UnitGroupDecomp {
    pub modulus: u64,
    /// Residues generating the unit group (lifted through CRT).
    pub generators: Vec<u64>,
    /// Orders of the generators; their product is phi(modulus).
    pub orders: Vec<u64>,
}

impl UnitGroupDecomp {
    /// Exponent of the group: lcm of the generator orders (1 for the
    /// trivial group).
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1u64, |acc, &o| lcm(acc, o))
    }
}

/// Smallest primitive root modulo an odd prime power, by exhaustive search
/// over candidates.
fn primitive_root_odd_prime_power(q: u64) -> u64 {
    let phi = euler_phi(q);
    for g in 2..q {
        if gcd(g, q) != 1 {
            continue;
        }
        if mult_order(g, q).expect("unit") == phi {
            return g;
        }
    }
    unreachable!("odd prime powers always have a primitive root")
}

/// Compute the unit group decomposition of (Z/modulus Z)^*.
pub fn unit_group(modulus: u64) -> UnitGroupDecomp {
    assert!(modulus >= 1);
    let mut generators = Vec::new();
    let mut orders = Vec::new();
    for (p, e) in factorize(modulus) {
        let q = p.pow(e);
        let rest = modulus / q;
        let local: Vec<(u64, u64)> = if p == 2 {
            match e {
                1 => vec![],
                2 => vec![(3, 2)],
                _ => vec![(q - 1, 2), (5, 1u64 << (e - 2))],
            }
        } else {
            let g = primitive_root_odd_prime_power(q);
            vec![(g, euler_phi(q))]
        };
        for (g, ord) in local {
            generators.push(crt_lift(g, q, rest));
            orders.push(ord);
        }
    }
    let decomp = UnitGroupDecomp {
        modulus,
        generators,
        orders,
    };
    debug_assert_eq!(
        decomp.orders.iter().product::<u64>(),
        euler_phi(modulus),
        "generator orders must multiply to phi"
    );
    decomp
}

/// Lift `g mod q` to the residue G mod (q * rest) with G = g mod q and
/// G = 1 mod rest.
fn crt_lift(g: u64, q: u64, rest: u64) -> u64 {
    if rest == 1 {
        return g % q;
    }
    let modulus = q as u128 * rest as u128;
    let inv_rest = mod_inverse(rest % q, q).expect("coprime prime powers") as u128;
    let inv_q = mod_inverse(q % rest, rest).expect("coprime prime powers") as u128;
    let a = g as u128 * (rest as u128) % modulus * inv_rest % modulus;
    let b = (q as u128) * inv_q % modulus;
    ((a + b) % modulus) as u64
}

/// A Dirichlet character modulo `modulus`, stored in exponent form: the
/// value at a unit `k` is e^(2 pi i * exponent / order), where `order` is the
/// exponent of the unit group; the value is 0 outside the units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    modulus: u64,
    order: u64,
    exponents: Vec<Option<u64>>,
}

impl Character {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Common denominator of all value exponents (the unit-group exponent).
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Exponent of the value at `k`, or None when gcd(k, modulus) > 1.
    pub fn exponent_at(&self, k: u64) -> Option<u64> {
        self.exponents[(k % self.modulus) as usize]
    }

    /// Value at `k` as a complex double.
    pub fn eval(&self, k: u64) -> Complex64 {
        match self.exponent_at(k) {
            None => Complex64::new(0.0, 0.0),
            Some(e) => Complex64::from_polar(
                1.0,
                2.0 * std::f64::consts::PI * e as f64 / self.order as f64,
            ),
        }
    }

    pub fn is_principal(&self) -> bool {
        self.exponents.iter().all(|v| matches!(v, None | Some(0)))
    }
}

/// All phi(modulus) Dirichlet characters modulo `modulus`.
///
/// Each generator of the unit group is assigned an independent root-of-unity
/// exponent; characters are ordered by those exponent tuples (first
/// generator fastest), so index 0 is the principal character.
pub fn characters_mod(modulus: u64) -> Vec<Character> {
    assert!(modulus >= 1);
    let decomp = unit_group(modulus);
    let e = decomp.exponent();
    let r = decomp.generators.len();

    // Discrete logarithms of every unit with respect to the generators.
    let mut dlog: HashMap<u64, Vec<u64>> = HashMap::new();
    let mut tuple = vec![0u64; r];
    loop {
        let mut residue: u64 = 1 % modulus;
        for (i, &x) in tuple.iter().enumerate() {
            residue = (residue as u128 * pow_mod(decomp.generators[i], x, modulus) as u128
                % modulus as u128) as u64;
        }
        dlog.insert(residue, tuple.clone());
        if !odometer(&mut tuple, &decomp.orders) {
            break;
        }
    }
    debug_assert_eq!(dlog.len() as u64, euler_phi(modulus));

    let mut chars = Vec::new();
    let mut t = vec![0u64; r];
    loop {
        let mut exponents = vec![None; modulus as usize];
        for (&residue, x) in &dlog {
            let mut exp = 0u64;
            for i in 0..r {
                exp = (exp + t[i] * x[i] % e * (e / decomp.orders[i])) % e;
            }
            exponents[residue as usize] = Some(exp);
        }
        chars.push(Character {
            modulus,
            order: e,
            exponents,
        });
        if !odometer(&mut t, &decomp.orders) {
            break;
        }
    }
    debug_assert_eq!(chars.len() as u64, euler_phi(modulus));
    chars
}

/// Advance a mixed-radix counter; returns false after wrapping to zero.
fn odometer(tuple: &mut [u64], radices: &[u64]) -> bool {
    for i in 0..tuple.len() {
        tuple[i] += 1;
        if tuple[i] < radices[i] {
            return true;
        }
        tuple[i] = 0;
    }
    false
}
