//! Independent floating-point verification channel.
//!
//! Everything here evaluates the analytic side at s = 1 — the Fourier
//! expansion of f_{χ₁,χ₂} and of the completed series E*, the cusp-limit φ,
//! Dirichlet L-values at 1, and the coefficient identities — so that every
//! exact value produced elsewhere in the crate can be cross-checked against
//! an implementation that shares none of its arithmetic.
//!
//! Only s = 1 is ever evaluated: there K_{1/2} collapses to an elementary
//! exponential and f(z) = Σ_{n≥1} (c_n/n) e(nz) with
//! c_n = Σ_{ab=n} χ₁(a)·conj(χ₂)(b)·b.
//!
//! The cusp limit φ(γ) is evaluated at the balanced base point
//! z = −d/c + i/|c|, where both z and γz sit at height 1/|c|, so a single
//! truncation M ≈ 6|c| drives the tail of both series below 1e−15; the
//! one-sided u → 0⁺ limit is never approached numerically.

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::characters::{gauss_sum, CharacterPair, DirichletCharacter};
use crate::cyclotomic::Cyclotomic;
use crate::dedekind::ExactCheck;
use crate::error::{Error, Result};
use crate::modgroup::GammaMatrix;
use crate::rational::rat;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;
const PI_I: Complex64 = Complex64::new(0.0, std::f64::consts::PI);

/// Embedded value table of a character: index n mod q.
fn char_table(chi: &DirichletCharacter) -> Vec<Complex64> {
    let q = chi.modulus();
    (0..q as i64).map(|n| chi.eval(n).embed()).collect()
}

pub fn tau_embedded(chi: &DirichletCharacter) -> Complex64 {
    gauss_sum(chi).embed()
}

/// Exact n-th coefficient c_n = Σ_{ab=n} χ₁(a)·conj(χ₂)(b)·b, so that
/// λ(n, 1) = c_n / √n.
pub fn coeff_exact(pair: &CharacterPair, n: u64) -> Cyclotomic {
    assert!(n >= 1);
    let chi1 = pair.chi1();
    let chi2bar = pair.chi2().conjugate();
    let m = pair.value_order();
    let mut acc = Cyclotomic::zero();
    for a in crate::cyclotomic::divisors(n) {
        let b = n / a;
        let w = chi1.eval(a as i64).mul(&chi2bar.eval(b as i64));
        if !w.is_zero() {
            acc = acc.add(&w.scalar_mul(&rat(b as i64, 1)));
        }
    }
    acc.to_order(m)
}

/// Truncated Fourier model of f_{χ₁,χ₂} at s = 1: coeffs[n−1] holds
/// c_n = n^{1/2} λ(n, 1) in double precision for 1 ≤ n ≤ M.
pub struct EisensteinSeries {
    pair: CharacterPair,
    truncation: usize,
    coeffs: Vec<Complex64>,
}

impl EisensteinSeries {
    /// Build by a divisor sieve over ab ≤ M.
    pub fn new(pair: &CharacterPair, truncation: usize) -> Self {
        assert!(truncation >= 1);
        let t1 = char_table(pair.chi1());
        let t2: Vec<Complex64> = char_table(pair.chi2())
            .into_iter()
            .map(|v| v.conj())
            .collect();
        let q1 = pair.chi1().modulus() as usize;
        let q2 = pair.chi2().modulus() as usize;
        let mut coeffs = vec![Complex64::zero(); truncation];
        for a in 1..=truncation {
            let va = t1[a % q1];
            if va.norm_sqr() == 0.0 {
                continue;
            }
            for b in 1..=truncation / a {
                let vb = t2[b % q2];
                if vb.norm_sqr() == 0.0 {
                    continue;
                }
                coeffs[a * b - 1] += va * vb * b as f64;
            }
        }
        EisensteinSeries {
            pair: pair.clone(),
            truncation,
            coeffs,
        }
    }

    pub fn pair(&self) -> &CharacterPair {
        &self.pair
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// c_n, for 1 ≤ n ≤ truncation.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs[n - 1]
    }

    /// f(z) = Σ_{n≤M} (c_n/n) e(nz); the discarded tail is below
    /// Σ_{n>M} d(n) e^{−2πn·Im z}.
    pub fn value(&self, z: Complex64) -> Complex64 {
        let w = e_of_z(z);
        let mut p = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::zero();
        for n in 1..=self.truncation {
            p *= w;
            let c = self.coeffs[n - 1];
            if c.norm_sqr() != 0.0 {
                acc += c / n as f64 * p;
            }
        }
        acc
    }
}

fn e_of_z(z: Complex64) -> Complex64 {
    // e(z) = exp(2 pi i z)
    (Complex64::new(0.0, TWO_PI) * z).exp()
}

/// f_{χ₁,χ₂}(z) truncated at M; requires Im z > 0.
pub fn f_value(pair: &CharacterPair, z: Complex64, truncation: usize) -> Complex64 {
    assert!(z.im > 0.0, "f is only evaluated on the upper half-plane");
    EisensteinSeries::new(pair, truncation).value(z)
}

/// E*(z, 1) = f_{χ₁,χ₂}(z) + χ₂(−1)·conj(f_{conj χ₁, conj χ₂}(z)).
pub fn e_star_value(pair: &CharacterPair, z: Complex64, truncation: usize) -> Complex64 {
    let holo = f_value(pair, z, truncation);
    let anti = f_value(&pair.conjugate(), z, truncation);
    holo + pair.chi2().parity() as f64 * anti.conj()
}

/// φ(γ) = f(γz) − ψ(γ)·f(z) at the balanced point z = −d/c + i/|c|.
/// Rejects c = 0 (φ = 0 trivially; callers handle translations directly).
pub fn phi_numeric(pair: &CharacterPair, g: &GammaMatrix, truncation: usize) -> Result<Complex64> {
    if g.c().is_zero() {
        return Err(Error::precondition("phi_numeric", "c != 0"));
    }
    let c = g.c().to_f64().expect("matrix entry out of f64 range");
    let d = g.d().to_f64().expect("matrix entry out of f64 range");
    let z = Complex64::new(-d / c, 1.0 / c.abs());
    phi_numeric_at(pair, g, z, truncation)
}

/// φ evaluated from an arbitrary base point; used for the base-point
/// independence checks.
pub fn phi_numeric_at(
    pair: &CharacterPair,
    g: &GammaMatrix,
    z: Complex64,
    truncation: usize,
) -> Result<Complex64> {
    let a = g.a().to_f64().expect("matrix entry out of f64 range");
    let b = g.b().to_f64().expect("matrix entry out of f64 range");
    let c = g.c().to_f64().expect("matrix entry out of f64 range");
    let d = g.d().to_f64().expect("matrix entry out of f64 range");
    let gz = (a * z + b) / (c * z + d);
    let series = EisensteinSeries::new(pair, truncation);
    let psi = pair
        .psi_eval(mod_level(g.d(), pair.level()))
        .embed();
    Ok(series.value(gz) - psi * series.value(z))
}

fn mod_level(x: &num_bigint::BigInt, level: u64) -> i64 {
    use num_integer::Integer;
    x.mod_floor(&num_bigint::BigInt::from(level)).to_i64().unwrap()
}

/// S via the analytic route: τ(conj χ₁)/(πi)·φ(γ).
pub fn s_numeric(pair: &CharacterPair, g: &GammaMatrix, truncation: usize) -> Result<Complex64> {
    let tau = tau_embedded(&pair.chi1().conjugate());
    Ok(tau / PI_I * phi_numeric(pair, g, truncation)?)
}

/// The Fricke pseudo-eigenvalue δ = χ₂(−1)·τ(χ₁)·q₂ / (τ(χ₂)·q₁).
pub fn fricke_delta(pair: &CharacterPair) -> Complex64 {
    let q1 = pair.chi1().modulus() as f64;
    let q2 = pair.chi2().modulus() as f64;
    pair.chi2().parity() as f64 * tau_embedded(pair.chi1()) * q2
        / (tau_embedded(pair.chi2()) * q1)
}

/// φ(ω) = f_{χ₁,χ₂}(ωz) − δ·f_{χ₂,χ₁}(z), evaluated by default at the
/// self-dual point z = i/√N where ωz = z.
pub fn fricke_phi_numeric(pair: &CharacterPair, truncation: usize) -> Complex64 {
    let z = Complex64::new(0.0, 1.0 / (pair.level() as f64).sqrt());
    fricke_phi_numeric_at(pair, z, truncation)
}

pub fn fricke_phi_numeric_at(pair: &CharacterPair, z: Complex64, truncation: usize) -> Complex64 {
    let n = pair.level() as f64;
    let omega_z = -1.0 / (n * z);
    f_value(pair, omega_z, truncation) - fricke_delta(pair) * f_value(&pair.swap(), z, truncation)
}

/// S(ω) via the analytic route: τ(conj χ₁)/(πi)·φ(ω).
pub fn fricke_s_numeric(pair: &CharacterPair, truncation: usize) -> Complex64 {
    tau_embedded(&pair.chi1().conjugate()) / PI_I * fricke_phi_numeric(pair, truncation)
}

/// L(1, χ) by the partial sum Σ_{l≤M} χ(l)/l plus an Abel-style tail
/// correction from the block expansion
/// Σ_{k≥K} Σ_r χ(r)/(qk+r) = Σ_{j≥1} (−1)^j S_j/q^{j+1} ζ(j+1, K),
/// taken to j = 2; the plain partial sum alone is within 2q/M, the
/// corrected value within about 1/K³.
///
/// Rejects the principal character (the series diverges).
pub fn l_one(chi: &DirichletCharacter, truncation: usize) -> Result<Complex64> {
    if chi.is_principal() {
        return Err(Error::PrincipalCharacter {
            context: "l_one".to_string(),
        });
    }
    let q = chi.modulus() as usize;
    let table = char_table(chi);
    // sum complete blocks: M' = q * ceil(max(M, 10q)/q)
    let blocks = truncation.max(10 * q).div_ceil(q);
    let m_full = blocks * q;
    let mut acc = Complex64::zero();
    for l in 1..=m_full {
        let v = table[l % q];
        if v.norm_sqr() != 0.0 {
            acc += v / l as f64;
        }
    }
    // power sums S_j = sum_r chi(r) r^j over one period
    let mut s1 = Complex64::zero();
    let mut s2 = Complex64::zero();
    for (r, v) in table.iter().enumerate().take(q).skip(1) {
        s1 += v * r as f64;
        s2 += v * (r * r) as f64;
    }
    let k = blocks as f64 + 1.0; // tail starts at block k = K
    let qf = q as f64;
    // zeta(2, K) and zeta(3, K) by Euler-Maclaurin
    let z2 = 1.0 / k + 1.0 / (2.0 * k * k) + 1.0 / (6.0 * k.powi(3));
    let z3 = 1.0 / (2.0 * k * k) + 1.0 / (2.0 * k.powi(3)) + 1.0 / (4.0 * k.powi(4));
    let tail = -s1 / (qf * qf) * z2 + s2 / (qf * qf * qf) * z3;
    Ok(acc + tail)
}

/// The exact closed form −πi·B_{1,χ}(0)/τ(conj χ) of L(1, χ) for odd
/// primitive χ, embedded. The independent channel l_one is checked against
/// this in the verification campaigns.
pub fn l_one_closed_form(chi: &DirichletCharacter) -> Result<Complex64> {
    if chi.parity() != -1 {
        return Err(Error::precondition(
            "l_one_closed_form",
            format!("chi must be odd, got parity {}", chi.parity()),
        ));
    }
    let b = crate::bernoulli::b1_chi(chi, &rat(0, 1))?;
    Ok(-PI_I * b.embed() / tau_embedded(&chi.conjugate()))
}

/// Exact Hecke multiplicativity at the coefficient level:
/// c_{mn} = c_m·c_n for gcd(m, n) = 1.
pub fn hecke_multiplicativity_check(pair: &CharacterPair, m: u64, n: u64) -> Result<ExactCheck> {
    if num_integer::gcd(m, n) != 1 {
        return Err(Error::precondition(
            "hecke_multiplicativity_check",
            format!("gcd({m}, {n}) = 1 fails"),
        ));
    }
    let lhs = coeff_exact(pair, m * n);
    let rhs = coeff_exact(pair, m).mul(&coeff_exact(pair, n));
    Ok(ExactCheck::compare(
        format!("c_{}*{} pair ({}, {})", m, n, pair.labels()[0], pair.labels()[1]),
        &lhs,
        &rhs,
    ))
}

/// Coefficient-level Eichler–Shimura identity: the n-th coefficient of the
/// term-wise derivative of (1/πi)·Σ (c_k/k) e(kz) equals the n-th coefficient
/// 2·n^{1/2}λ(n,1) of the weight-2 series. The left side goes through the
/// f-expansion scaling, the right side through its own divisor enumeration.
pub fn eichler_shimura_coeff_check(pair: &CharacterPair, n: u64) -> ExactCheck {
    // derivative of (c_n/n) e(nz) contributes (1/pi i)(2 pi i n)(c_n/n) = 2 c_n
    let f_coeff = coeff_exact(pair, n).scalar_mul(&rat(1, n as i64));
    let lhs = f_coeff.scalar_mul(&rat(2 * n as i64, 1));
    // weight-2 coefficient: 2 sum_{d | n} chi1(d) conj(chi2)(n/d) (n/d)
    let chi1 = pair.chi1();
    let chi2bar = pair.chi2().conjugate();
    let mut rhs = Cyclotomic::zero();
    for d in crate::cyclotomic::divisors(n) {
        let e = n / d;
        let w = chi1.eval(d as i64).mul(&chi2bar.eval(e as i64));
        if !w.is_zero() {
            rhs = rhs.add(&w.scalar_mul(&rat(2 * e as i64, 1)));
        }
    }
    ExactCheck::compare(
        format!(
            "weight-2 coefficient {} pair ({}, {})",
            n,
            pair.labels()[0],
            pair.labels()[1]
        ),
        &lhs,
        &rhs,
    )
}
