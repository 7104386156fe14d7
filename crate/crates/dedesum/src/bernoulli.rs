//! The sawtooth B₁, the twisted Bernoulli function B_{1,χ}, and the closed
//! form of the cusp limit of the theta series θ_χ.
//!
//! B₁ takes exact rationals only; there is deliberately no floating-point
//! entry point, since the integer-detection at j/c ∈ ℤ must be exact.

use num_traits::Zero;

use crate::characters::DirichletCharacter;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::rational::{rat, Rational};

/// B₁(x) = x − ⌊x⌋ − 1/2 for non-integral x, and 0 on the integers.
pub fn b1(x: &Rational) -> Rational {
    if x.is_integer() {
        return Rational::zero();
    }
    x - x.floor() - rat(1, 2)
}

/// The twisted Bernoulli function
/// B_{1,χ}(x) = Σ_{n=1}^{q−1} conj(χ)(n)·B₁((x+n)/q), exact in ℚ(ζ_ord(χ)).
///
/// Requires χ primitive.
pub fn b1_chi(chi: &DirichletCharacter, x: &Rational) -> Result<Cyclotomic> {
    if !chi.is_primitive() {
        return Err(Error::NotPrimitive {
            conductor: chi.conductor(),
            modulus: chi.modulus(),
        });
    }
    let q = chi.modulus();
    let ord = chi.order();
    let chibar = chi.conjugate();
    let q_rat = rat(q as i64, 1);
    let mut dense = vec![Rational::zero(); ord as usize];
    for n in 1..q {
        if let Some(k) = chibar.eval_exponent(n as i64) {
            let arg = (x + rat(n as i64, 1)) / &q_rat;
            dense[k as usize] += b1(&arg);
        }
    }
    Ok(Cyclotomic::from_group_algebra(ord, dense))
}

/// The u → 0⁺ limit of θ_χ(a/c + iu, l) in closed form:
/// −Σ_{j mod c} conj(χ)(j)·B₁(j/c)·e_c(alj), exact in ℚ(ζ_{lcm(ord(χ), c)}).
///
/// Preconditions (each reported by name on violation): χ primitive of
/// conductor q, q | c, gcd(a, c) = 1, and l ≢ 0 (mod c/q).
pub fn theta_limit(chi: &DirichletCharacter, a: i64, c: u64, l: i64) -> Result<Cyclotomic> {
    const OP: &str = "theta_limit";
    if !chi.is_primitive() {
        return Err(Error::precondition(
            OP,
            format!(
                "conductor(chi) = q: character {} has conductor {} < modulus {}",
                chi.label(),
                chi.conductor(),
                chi.modulus()
            ),
        ));
    }
    let q = chi.modulus();
    if c == 0 || c % q != 0 {
        return Err(Error::precondition(OP, format!("q | c fails: q = {q}, c = {c}")));
    }
    if num_integer::gcd(a, c as i64) != 1 {
        return Err(Error::precondition(
            OP,
            format!("gcd(a, c) = 1 fails: a = {a}, c = {c}"),
        ));
    }
    let block = (c / q) as i64;
    if l.rem_euclid(block) == 0 {
        return Err(Error::precondition(
            OP,
            format!("l != 0 (mod c/q) fails: l = {l}, c/q = {block}"),
        ));
    }

    let ord = chi.order();
    let big_l = num_integer::lcm(ord, c);
    let chibar = chi.conjugate();
    let mut dense = vec![Rational::zero(); big_l as usize];
    for j in 1..c {
        if let Some(k) = chibar.eval_exponent(j as i64) {
            let root_exp = ((a as i128 * l as i128 * j as i128).rem_euclid(c as i128)) as u64;
            let exp = ((k as u128 * (big_l / ord) as u128
                + root_exp as u128 * (big_l / c) as u128)
                % big_l as u128) as usize;
            // B1(j/c) = (2j - c) / 2c for 0 < j < c
            dense[exp] -= rat(2 * j as i64 - c as i64, 2 * c as i64);
        }
    }
    Ok(Cyclotomic::from_group_algebra(big_l, dense))
}
