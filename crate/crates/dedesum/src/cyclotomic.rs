//! Exact arithmetic in cyclotomic fields ℚ(ζ_m).
//!
//! Elements are stored in the power basis 1, ζ, …, ζ^{φ(m)−1} of ℚ(ζ_m),
//! reduced modulo the m-th cyclotomic polynomial Φ_m after every product, so
//! representations are canonical per order and equality is coefficient
//! comparison after coercing both sides into ℚ(ζ_L), L = lcm of the orders.
//!
//! Orders are capped at [`MAX_ORDER`]; repeated lcm coercion cannot blow up
//! silently.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::{format_rational, parse_rational, Rational};

/// Hard cap on the cyclotomic order after lcm coercion.
pub const MAX_ORDER: u64 = 10_000;

pub fn euler_phi(m: u64) -> u64 {
    assert!(m >= 1);
    let mut n = m;
    let mut phi = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            phi -= phi / p;
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

pub fn divisors(m: u64) -> Vec<u64> {
    assert!(m >= 1);
    let mut divs = Vec::new();
    let mut i = 1;
    while i * i <= m {
        if m % i == 0 {
            divs.push(i);
            if i != m / i {
                divs.push(m / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    divs
}

fn checked_lcm(a: u64, b: u64) -> u64 {
    let l = a.lcm(&b);
    assert!(
        l <= MAX_ORDER,
        "cyclotomic order {l} exceeds the cap {MAX_ORDER}"
    );
    l
}

/// Coefficients of Φ_m, ascending degree, length φ(m)+1, monic.
///
/// Computed by dividing x^m − 1 by Φ_d for every proper divisor d | m; the
/// per-order results are cached process-wide.
pub fn cyclotomic_polynomial(m: u64) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&m) {
        return Arc::clone(hit);
    }
    let computed = compute_cyclotomic_polynomial(m);
    let arc = Arc::new(computed);
    cache
        .lock()
        .unwrap()
        .entry(m)
        .or_insert_with(|| Arc::clone(&arc));
    arc
}

fn compute_cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    assert!(m >= 1, "order must be positive");
    // x^m - 1
    let mut poly = vec![BigInt::zero(); (m + 1) as usize];
    poly[0] = -BigInt::one();
    poly[m as usize] = BigInt::one();
    for d in divisors(m) {
        if d == m {
            continue;
        }
        let phi_d = cyclotomic_polynomial(d);
        poly = divide_exact(&poly, &phi_d);
    }
    debug_assert_eq!(poly.len() as u64, euler_phi(m) + 1);
    poly
}

/// Exact division of integer polynomials; the divisor must be monic and the
/// division must leave no remainder.
fn divide_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    assert!(dn >= dd);
    let mut rem: Vec<BigInt> = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for i in (dd..=dn).rev() {
        let coef = std::mem::replace(&mut rem[i], BigInt::zero());
        if coef.is_zero() {
            continue;
        }
        for (j, dc) in den[..dd].iter().enumerate() {
            let idx = i - dd + j;
            rem[idx] -= &coef * dc;
        }
        quot[i - dd] = coef;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division left a remainder");
    quot
}

/// An exact element of ℚ(ζ_m), m the `order`, in the reduced power basis.
#[derive(Clone)]
pub struct Cyclotomic {
    order: u64,
    coeffs: Vec<Rational>, // length φ(order)
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic {
            order: 1,
            coeffs: vec![Rational::zero()],
        }
    }

    pub fn one() -> Self {
        Cyclotomic::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic {
            order: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Cyclotomic::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// ζ_m^k, with k reduced modulo m.
    pub fn root_of_unity(m: u64, k: i64) -> Self {
        assert!(m >= 1, "order must be positive");
        assert!(m <= MAX_ORDER, "order {m} exceeds the cap {MAX_ORDER}");
        let k = k.rem_euclid(m as i64) as usize;
        let mut dense = vec![Rational::zero(); m as usize];
        dense[k] = Rational::one();
        Cyclotomic::from_group_algebra(m, dense)
    }

    /// Build from a length-m exponent vector Σ v[k]·ζ_m^k and reduce mod Φ_m.
    ///
    /// This is the fast entry point for the inner loops: they accumulate in
    /// the group algebra ℚ[ℤ/m] and reduce once at the end.
    pub fn from_group_algebra(m: u64, dense: Vec<Rational>) -> Self {
        assert_eq!(dense.len() as u64, m);
        let coeffs = reduce_mod_phi(m, dense);
        Cyclotomic { order: m, coeffs }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Some(r) iff the element is the rational r (all non-constant power-basis
    /// coordinates vanish; the power basis makes this test exact).
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-express in ℚ(ζ_target); `target` must be a multiple of the order.
    pub fn to_order(&self, target: u64) -> Self {
        assert!(
            target % self.order == 0,
            "target order {target} not a multiple of {}",
            self.order
        );
        assert!(target <= MAX_ORDER, "order {target} exceeds the cap");
        if target == self.order {
            return self.clone();
        }
        let step = (target / self.order) as usize;
        let mut dense = vec![Rational::zero(); target as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                dense[k * step] = c.clone();
            }
        }
        Cyclotomic::from_group_algebra(target, dense)
    }

    fn common_order(&self, other: &Self) -> u64 {
        checked_lcm(self.order, other.order)
    }

    pub fn add(&self, other: &Self) -> Self {
        let l = self.common_order(other);
        let a = self.to_order(l);
        let b = other.to_order(l);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x + y)
            .collect();
        Cyclotomic { order: l, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scalar_mul(&self, r: &Rational) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let l = self.common_order(other);
        let a = self.to_order(l);
        let b = other.to_order(l);
        // Both operands have degree < φ(L) <= L, so the convolution folds
        // into the group algebra ℚ[ℤ/L] via x^L = 1 before one reduction.
        let mut dense = vec![Rational::zero(); l as usize];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let k = (i + j) % l as usize;
                dense[k] += x * y;
            }
        }
        Cyclotomic::from_group_algebra(l, dense)
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut result = Cyclotomic::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Complex conjugation, the automorphism ζ_m ↦ ζ_m^{m−1}.
    pub fn conj(&self) -> Self {
        let m = self.order as usize;
        let mut dense = vec![Rational::zero(); m];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                dense[(m - k) % m] += c;
            }
        }
        Cyclotomic::from_group_algebra(self.order, dense)
    }

    /// Numeric embedding Σ coeffs[k]·exp(2πik/m) in double precision.
    /// Accuracy is about φ(m)·max|coeff|·1e−15; not asserted here.
    pub fn embed(&self) -> Complex64 {
        let m = self.order as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / m;
            let v = c.to_f64().expect("rational out of f64 range");
            acc += Complex64::new(angle.cos(), angle.sin()) * v;
        }
        acc
    }
}

/// Reduce a length-m exponent vector modulo Φ_m to the power basis.
fn reduce_mod_phi(m: u64, mut dense: Vec<Rational>) -> Vec<Rational> {
    let phi = euler_phi(m) as usize;
    if dense.len() <= phi {
        dense.resize(phi, Rational::zero());
        return dense;
    }
    let modulus = cyclotomic_polynomial(m);
    for i in (phi..dense.len()).rev() {
        let coef = std::mem::replace(&mut dense[i], Rational::zero());
        if coef.is_zero() {
            continue;
        }
        for (j, pc) in modulus[..phi].iter().enumerate() {
            if !pc.is_zero() {
                let delta = &coef * pc;
                dense[i - phi + j] -= delta;
            }
        }
    }
    dense.truncate(phi);
    dense
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let l = self.common_order(other);
        self.to_order(l).coeffs == other.to_order(l).coeffs
    }
}
impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic(order={}, [", self.order)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(c))?;
        }
        write!(f, "])")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{}", c)?;
            } else if k == 1 {
                write!(f, "({})*z{}", c, self.order)?;
            } else {
                write!(f, "({})*z{}^{}", c, self.order, k)?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CyclotomicWire {
    order: u64,
    coeffs: Vec<String>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CyclotomicWire {
            order: self.order,
            coeffs: self.coeffs.iter().map(format_rational).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = CyclotomicWire::deserialize(deserializer)?;
        if wire.order < 1 || wire.order > MAX_ORDER {
            return Err(D::Error::custom(format!("bad order {}", wire.order)));
        }
        if wire.coeffs.len() as u64 != euler_phi(wire.order) {
            return Err(D::Error::custom(format!(
                "expected {} coefficients for order {}, got {}",
                euler_phi(wire.order),
                wire.order,
                wire.coeffs.len()
            )));
        }
        let coeffs = wire
            .coeffs
            .iter()
            .map(|s| parse_rational(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Cyclotomic {
            order: wire.order,
            coeffs,
        })
    }
}

/// Signed-integer view of a rational, for displays and exactness checks.
pub fn rational_is_integer(r: &Rational) -> bool {
    r.denom().is_one() || r.numer().is_zero()
}

pub fn rational_abs(r: &Rational) -> Rational {
    if r.is_negative() {
        -r
    } else {
        r.clone()
    }
}
