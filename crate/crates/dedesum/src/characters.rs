//! Dirichlet characters with exact root-of-unity values.
//!
//! A character mod q is stored as an exponent tuple with respect to a fixed
//! generator basis of (ℤ/q)^*, built via CRT over the prime powers of q:
//! for odd p^k the least primitive root, for 4 the generator 3, and for 2^k
//! with k ≥ 3 the pair (2^k − 1, 5). Prime powers are taken in ascending
//! order of p, so labels `"q:e1,e2,..."` are deterministic.
//!
//! Evaluation goes through a precomputed discrete-log table per modulus
//! (moduli are capped at 10^4, so tables are cheap); values come back as
//! exact elements of ℚ(ζ_ord(χ)).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use serde::Serialize;

use crate::cyclotomic::{divisors, euler_phi, Cyclotomic};
use crate::error::{Error, Result};

const MAX_MODULUS: u64 = 10_000;

fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut acc: u128 = 1;
    let m = modulus as u128;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

fn multiplicative_order(a: u64, modulus: u64, group_order: u64) -> u64 {
    let mut ord = group_order;
    for d in divisors(group_order) {
        if pow_mod(a, d, modulus) == 1 {
            ord = d;
            break;
        }
    }
    ord
}

/// Least primitive root modulo an odd prime power p^k.
fn least_primitive_root(pk: u64, p: u64) -> u64 {
    let phi = euler_phi(pk);
    'g: for g in 2..pk {
        if g % p == 0 {
            continue;
        }
        for d in divisors(phi) {
            if d < phi && pow_mod(g, d, pk) == 1 {
                continue 'g;
            }
        }
        return g;
    }
    unreachable!("no primitive root mod {pk}")
}

/// Generators of (ℤ/q)^* with their orders, CRT-lifted to modulus q.
///
/// Product of the orders equals φ(q). For q ≤ 2 the group is trivial and the
/// list is empty.
pub fn unit_group_generators(q: u64) -> Vec<(u64, u64)> {
    assert!(q >= 1, "modulus must be positive");
    assert!(q <= MAX_MODULUS, "modulus {q} exceeds the cap {MAX_MODULUS}");
    let mut factors: Vec<(u64, u64)> = Vec::new(); // (p, p^k)
    let mut n = q;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut pk = 1;
            while n % p == 0 {
                n /= p;
                pk *= p;
            }
            factors.push((p, pk));
        }
        p += 1;
    }
    if n > 1 {
        factors.push((n, n));
    }
    factors.sort_unstable();

    let mut gens = Vec::new();
    for &(p, pk) in &factors {
        let local: Vec<(u64, u64)> = if p == 2 {
            match pk {
                2 => vec![],
                4 => vec![(3, 2)],
                _ => vec![(pk - 1, 2), (5, pk / 4)],
            }
        } else {
            vec![(least_primitive_root(pk, p), euler_phi(pk))]
        };
        // CRT lift: g mod pk, 1 mod q/pk
        let rest = q / pk;
        for (g, ord) in local {
            let lifted = crt_lift(g, pk, 1, rest);
            debug_assert_eq!(multiplicative_order(lifted, q, euler_phi(q)), ord);
            gens.push((lifted, ord));
        }
    }
    debug_assert_eq!(gens.iter().map(|&(_, o)| o).product::<u64>(), euler_phi(q));
    gens
}

fn crt_lift(a: u64, m: u64, b: u64, n: u64) -> u64 {
    // x = a mod m, x = b mod n with gcd(m, n) = 1
    if n == 1 {
        return a % m.max(1);
    }
    if m == 1 {
        return b % n;
    }
    let (g, inv, _) = extended_gcd(m as i128, n as i128);
    debug_assert_eq!(g, 1);
    let mn = (m * n) as i128;
    let diff = b as i128 - a as i128;
    let x = (a as i128 + (diff * inv).rem_euclid(n as i128) * m as i128).rem_euclid(mn);
    x as u64
}

pub(crate) fn extended_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        return (a, 1, 0);
    }
    let (g, x, y) = extended_gcd(b, a % b);
    (g, y, x - (a / b) * y)
}

/// The shared per-modulus data: generator basis and discrete-log table.
#[derive(Debug)]
pub struct UnitGroupBasis {
    modulus: u64,
    generators: Vec<(u64, u64)>,
    group_exponent: u64,
    /// residue -> exponents in the generator basis, None off the units
    dlog: Vec<Option<Vec<u64>>>,
}

impl UnitGroupBasis {
    fn build(q: u64) -> Self {
        let generators = unit_group_generators(q);
        let group_exponent = generators
            .iter()
            .fold(1u64, |acc, &(_, o)| acc.lcm(&o));
        let mut dlog: Vec<Option<Vec<u64>>> = vec![None; q as usize];
        // enumerate all exponent tuples
        let k = generators.len();
        let mut exps = vec![0u64; k];
        loop {
            let mut residue: u128 = 1;
            for (i, &(g, _)) in generators.iter().enumerate() {
                residue = residue * pow_mod(g, exps[i], q) as u128 % q.max(1) as u128;
            }
            let idx = if q == 1 { 0 } else { residue as usize };
            debug_assert!(dlog[idx].is_none(), "duplicate residue in dlog table");
            dlog[idx] = Some(exps.clone());
            // mixed-radix increment
            let mut i = 0;
            loop {
                if i == k {
                    // done
                    return UnitGroupBasis {
                        modulus: q,
                        generators,
                        group_exponent,
                        dlog,
                    };
                }
                exps[i] += 1;
                if exps[i] < generators[i].1 {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generators(&self) -> &[(u64, u64)] {
        &self.generators
    }
}

fn basis(q: u64) -> Arc<UnitGroupBasis> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<UnitGroupBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&q) {
        return Arc::clone(hit);
    }
    let built = Arc::new(UnitGroupBasis::build(q));
    Arc::clone(
        cache
            .lock()
            .unwrap()
            .entry(q)
            .or_insert_with(|| Arc::clone(&built)),
    )
}

/// A Dirichlet character mod q, defined by χ(g_i) = ζ_{o_i}^{e_i} on the
/// generator basis. Immutable; cheap to clone (the table is shared).
#[derive(Clone)]
pub struct DirichletCharacter {
    basis: Arc<UnitGroupBasis>,
    exponents: Vec<u64>,
    /// order of χ as a group character
    order: u64,
    /// scale between the group exponent and the character order:
    /// χ(n) = ζ_order^(t/step) where t is the raw exponent mod group_exponent
    step: u64,
    parity: i8,
    conductor: u64,
}

impl std::fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "chi[{}]", self.label())
    }
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.exponents == other.exponents
    }
}
impl Eq for DirichletCharacter {}

impl DirichletCharacter {
    /// Build from the exponent tuple with respect to the documented basis.
    pub fn new(q: u64, exponents: Vec<u64>) -> Result<Self> {
        let basis = basis(q);
        if exponents.len() != basis.generators.len() {
            return Err(Error::InvalidLabel {
                label: format!("{q}:{exponents:?}"),
                reason: format!(
                    "expected {} exponents for modulus {q}",
                    basis.generators.len()
                ),
            });
        }
        for (i, (&e, &(_, o))) in exponents.iter().zip(&basis.generators).enumerate() {
            if e >= o {
                return Err(Error::InvalidLabel {
                    label: format!("{q}:{exponents:?}"),
                    reason: format!("exponent {e} at position {i} must be < {o}"),
                });
            }
        }
        let big_o = basis.group_exponent;
        // image subgroup index: d = gcd(O, e_i * O / o_i over i)
        let mut d = big_o;
        for (&e, &(_, o)) in exponents.iter().zip(&basis.generators) {
            d = d.gcd(&(e * (big_o / o)));
        }
        let order = big_o / d;
        let mut chi = DirichletCharacter {
            basis,
            exponents,
            order,
            step: d,
            parity: 1,
            conductor: 1,
        };
        chi.parity = if q <= 2 {
            1
        } else {
            match chi.eval_exponent(q as i64 - 1) {
                Some(0) => 1,
                Some(_) => -1,
                None => unreachable!("-1 is always a unit"),
            }
        };
        chi.conductor = chi.compute_conductor();
        Ok(chi)
    }

    pub fn modulus(&self) -> u64 {
        self.basis.modulus
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// χ(−1) as ±1.
    pub fn parity(&self) -> i8 {
        self.parity
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus()
    }

    pub fn is_principal(&self) -> bool {
        self.order == 1
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Deterministic external label `"q:e1,e2,..."`.
    pub fn label(&self) -> String {
        let exps: Vec<String> = self.exponents.iter().map(|e| e.to_string()).collect();
        format!("{}:{}", self.modulus(), exps.join(","))
    }

    pub fn from_label(label: &str) -> Result<Self> {
        let (q_str, exps_str) = label.split_once(':').ok_or_else(|| Error::InvalidLabel {
            label: label.to_string(),
            reason: "expected \"q:e1,e2,...\"".to_string(),
        })?;
        let q: u64 = q_str.trim().parse().map_err(|_| Error::InvalidLabel {
            label: label.to_string(),
            reason: format!("bad modulus {q_str:?}"),
        })?;
        if q < 1 {
            return Err(Error::InvalidLabel {
                label: label.to_string(),
                reason: "modulus must be >= 1".to_string(),
            });
        }
        let exps: Vec<u64> = if exps_str.trim().is_empty() {
            vec![]
        } else {
            exps_str
                .split(',')
                .map(|s| {
                    s.trim().parse().map_err(|_| Error::InvalidLabel {
                        label: label.to_string(),
                        reason: format!("bad exponent {s:?}"),
                    })
                })
                .collect::<Result<_>>()?
        };
        DirichletCharacter::new(q, exps)
    }

    /// Exponent k with χ(n) = ζ_order^k, or None off the units.
    pub fn eval_exponent(&self, n: i64) -> Option<u64> {
        let q = self.modulus();
        let r = n.rem_euclid(q as i64) as usize;
        let a = self.basis.dlog[r].as_ref()?;
        let big_o = self.basis.group_exponent;
        let mut t: u128 = 0;
        for ((&e, &ai), &(_, o)) in self
            .exponents
            .iter()
            .zip(a)
            .zip(&self.basis.generators)
        {
            t += e as u128 * ai as u128 * (big_o / o) as u128;
        }
        let t = (t % big_o.max(1) as u128) as u64;
        debug_assert_eq!(t % self.step, 0);
        Some((t / self.step) % self.order)
    }

    /// χ(n) as an exact element of ℚ(ζ_ord(χ)); zero off the units.
    pub fn eval(&self, n: i64) -> Cyclotomic {
        match self.eval_exponent(n) {
            None => Cyclotomic::zero(),
            Some(k) => Cyclotomic::root_of_unity(self.order, k as i64),
        }
    }

    pub fn conjugate(&self) -> Self {
        let exps = self
            .exponents
            .iter()
            .zip(&self.basis.generators)
            .map(|(&e, &(_, o))| if e == 0 { 0 } else { o - e })
            .collect();
        DirichletCharacter::new(self.modulus(), exps).expect("conjugate exponents are valid")
    }

    /// Smallest f | q such that χ is trivial on units ≡ 1 (mod f), by
    /// enumeration over divisors.
    fn compute_conductor(&self) -> u64 {
        let q = self.modulus();
        'f: for f in divisors(q) {
            for n in 1..q.max(2) {
                if n % f != 1 % f || q.gcd(&n) != 1 {
                    continue;
                }
                if self.eval_exponent(n as i64) != Some(0) {
                    continue 'f;
                }
            }
            return f;
        }
        q
    }
}

/// All φ(q) characters mod q as exponent tuples, in mixed-radix order; with
/// `primitive_only`, only those of conductor exactly q.
pub fn enumerate_characters(q: u64, primitive_only: bool) -> Vec<DirichletCharacter> {
    let b = basis(q);
    let k = b.generators.len();
    let mut out = Vec::new();
    let mut exps = vec![0u64; k];
    loop {
        let chi = DirichletCharacter::new(q, exps.clone()).expect("enumerated exponents valid");
        if !primitive_only || chi.is_primitive() {
            out.push(chi);
        }
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            exps[i] += 1;
            if exps[i] < b.generators[i].1 {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// Gauss sum τ(χ) = Σ_{n mod q} χ(n) e_q(n), exact in ℚ(ζ_{lcm(ord(χ), q)}).
pub fn gauss_sum(chi: &DirichletCharacter) -> Cyclotomic {
    let q = chi.modulus();
    let ord = chi.order();
    let l = ord.lcm(&q);
    let mut dense = vec![crate::rational::Rational::from_integer(0.into()); l as usize];
    let one = crate::rational::rat_int(1);
    for n in 1..=q {
        if let Some(k) = chi.eval_exponent(n as i64) {
            let exp = (k as u128 * (l / ord) as u128 + n as u128 * (l / q) as u128) % l as u128;
            dense[exp as usize] += &one;
        }
    }
    Cyclotomic::from_group_algebra(l, dense)
}

/// JSON shape for the `chars` command.
#[derive(Serialize)]
pub struct CharacterRecord {
    pub modulus: u64,
    pub label: String,
    pub order: u64,
    pub parity: i8,
    pub conductor: u64,
}

impl From<&DirichletCharacter> for CharacterRecord {
    fn from(chi: &DirichletCharacter) -> Self {
        CharacterRecord {
            modulus: chi.modulus(),
            label: chi.label(),
            order: chi.order(),
            parity: chi.parity(),
            conductor: chi.conductor(),
        }
    }
}

/// An admissible pair (χ₁, χ₂): both primitive with modulus > 1 and
/// χ₁χ₂(−1) = 1. Carries the level N = q₁q₂, the central character
/// ψ = χ₁·conj(χ₂) viewed mod N, and the value order lcm(ord χ₁, ord χ₂).
#[derive(Clone)]
pub struct CharacterPair {
    chi1: DirichletCharacter,
    chi2: DirichletCharacter,
    level: u64,
    psi: DirichletCharacter,
    value_order: u64,
}

impl std::fmt::Debug for CharacterPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "pair({}, {})", self.chi1.label(), self.chi2.label())
    }
}

impl CharacterPair {
    pub fn new(chi1: DirichletCharacter, chi2: DirichletCharacter) -> Result<Self> {
        for (which, chi) in [("chi1", &chi1), ("chi2", &chi2)] {
            if chi.modulus() <= 1 {
                return Err(Error::InadmissiblePair {
                    reason: format!("{which} has modulus {} but q > 1 is required", chi.modulus()),
                });
            }
            if !chi.is_primitive() {
                return Err(Error::InadmissiblePair {
                    reason: format!(
                        "{which} ({}) is imprimitive: conductor {} < modulus {}",
                        chi.label(),
                        chi.conductor(),
                        chi.modulus()
                    ),
                });
            }
        }
        if chi1.parity() * chi2.parity() != 1 {
            return Err(Error::InadmissiblePair {
                reason: format!(
                    "parity hypothesis chi1*chi2(-1) = 1 fails: chi1(-1) = {}, chi2(-1) = {}",
                    chi1.parity(),
                    chi2.parity()
                ),
            });
        }
        let level = chi1.modulus() * chi2.modulus();
        let value_order = chi1.order().lcm(&chi2.order());
        let psi = product_with_conjugate(&chi1, &chi2, level, value_order);
        Ok(CharacterPair {
            chi1,
            chi2,
            level,
            psi,
            value_order,
        })
    }

    pub fn from_labels(l1: &str, l2: &str) -> Result<Self> {
        CharacterPair::new(
            DirichletCharacter::from_label(l1)?,
            DirichletCharacter::from_label(l2)?,
        )
    }

    pub fn chi1(&self) -> &DirichletCharacter {
        &self.chi1
    }

    pub fn chi2(&self) -> &DirichletCharacter {
        &self.chi2
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn value_order(&self) -> u64 {
        self.value_order
    }

    /// The central character ψ = χ₁·conj(χ₂) mod N.
    pub fn psi(&self) -> &DirichletCharacter {
        &self.psi
    }

    /// ψ(d) = χ₁(d)·conj(χ₂)(d); zero iff gcd(d, N) > 1.
    pub fn psi_eval(&self, d: i64) -> Cyclotomic {
        self.psi.eval(d)
    }

    /// The swapped pair (χ₂, χ₁); admissible since the parity product is
    /// unchanged.
    pub fn swap(&self) -> Self {
        CharacterPair::new(self.chi2.clone(), self.chi1.clone()).expect("swap stays admissible")
    }

    /// The conjugate pair (conj χ₁, conj χ₂).
    pub fn conjugate(&self) -> Self {
        CharacterPair::new(self.chi1.conjugate(), self.chi2.conjugate())
            .expect("conjugation stays admissible")
    }

    pub fn labels(&self) -> [String; 2] {
        [self.chi1.label(), self.chi2.label()]
    }
}

/// χ₁·conj(χ₂) expressed as a character mod `level`.
fn product_with_conjugate(
    chi1: &DirichletCharacter,
    chi2: &DirichletCharacter,
    level: u64,
    value_order: u64,
) -> DirichletCharacter {
    let b = basis(level);
    let m = value_order;
    let mut exps = Vec::with_capacity(b.generators.len());
    for &(g, o) in b.generators.iter() {
        let t1 = chi1
            .eval_exponent(g as i64)
            .expect("generator is a unit mod q1");
        let t2 = chi2
            .eval_exponent(g as i64)
            .expect("generator is a unit mod q2");
        // psi(g) = zeta_m^u
        let u = (t1 as u128 * (m / chi1.order()) as u128
            + (chi2.order() - t2) as u128 % chi2.order() as u128 * (m / chi2.order()) as u128)
            % m as u128;
        // psi(g) has order dividing o, so u*o/m is integral
        debug_assert_eq!((u * o as u128) % m as u128, 0);
        exps.push(((u * o as u128 / m as u128) % o as u128) as u64);
    }
    DirichletCharacter::new(level, exps).expect("product character exponents valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    #[test]
    fn generator_bases() {
        assert_eq!(unit_group_generators(3), vec![(2, 2)]);
        assert_eq!(unit_group_generators(8), vec![(7, 2), (5, 2)]);
        assert_eq!(unit_group_generators(9), vec![(2, 6)]);
        assert_eq!(unit_group_generators(1), vec![]);
        assert_eq!(unit_group_generators(2), vec![]);
        // CRT lift for 12 = 4 * 3: generators 7 (= 3 mod 4) and 5 (= 2 mod 3)
        assert_eq!(unit_group_generators(12), vec![(7, 2), (5, 2)]);
    }

    #[test]
    fn generator_orders_multiply_to_phi() {
        for q in 1..=200u64 {
            let gens = unit_group_generators(q);
            let prod: u64 = gens.iter().map(|&(_, o)| o).product();
            assert_eq!(prod, euler_phi(q), "q = {q}");
        }
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(enumerate_characters(3, true).len(), 1);
        assert_eq!(enumerate_characters(4, true).len(), 1);
        assert_eq!(enumerate_characters(9, true).len(), 4);
        assert_eq!(enumerate_characters(9, false).len(), 6);
        assert_eq!(enumerate_characters(1, false).len(), 1);
    }

    #[test]
    fn conductor_examples() {
        let trivial = DirichletCharacter::new(3, vec![0]).unwrap();
        assert_eq!(trivial.conductor(), 1);
        let quad = DirichletCharacter::new(3, vec![1]).unwrap();
        assert_eq!(quad.conductor(), 3);
        // lift of the quadratic mod-3 character to modulus 9: exponent 3 on the
        // order-6 generator 2 (2 mod 3 = 2 generates, and the lift sends it to -1)
        let lifted = DirichletCharacter::new(9, vec![3]).unwrap();
        assert_eq!(lifted.conductor(), 3);
        assert!(!lifted.is_primitive());
    }

    #[test]
    fn eval_examples() {
        let chi3 = DirichletCharacter::new(3, vec![1]).unwrap();
        assert_eq!(chi3.eval(2), Cyclotomic::from_integer(-1));
        assert_eq!(chi3.eval(1), Cyclotomic::one());
        let chi9 = DirichletCharacter::new(9, vec![1]).unwrap();
        assert!(chi9.eval(3).is_zero());
        assert!(chi9.eval(6).is_zero());
        // order-4 character mod 5 with chi(2) = zeta_4: chi(4) = -1
        let chi5 = DirichletCharacter::new(5, vec![1]).unwrap();
        assert_eq!(chi5.eval(2), Cyclotomic::root_of_unity(4, 1));
        assert_eq!(chi5.eval(4), Cyclotomic::from_integer(-1));
    }

    #[test]
    fn parity_matches_eval_at_minus_one() {
        for q in 3..=50u64 {
            for chi in enumerate_characters(q, false) {
                let at = chi.eval(q as i64 - 1);
                let expect = Cyclotomic::from_integer(chi.parity() as i64);
                assert_eq!(at, expect, "chi = {}", chi.label());
            }
        }
    }

    #[test]
    fn complete_multiplicativity_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for q in [3u64, 4, 5, 7, 8, 9, 12, 16, 21, 40, 45, 49, 50] {
            for chi in enumerate_characters(q, false) {
                for _ in 0..20 {
                    let m = rng.gen_range(0..200i64);
                    let n = rng.gen_range(0..200i64);
                    assert_eq!(
                        chi.eval(m * n),
                        chi.eval(m).mul(&chi.eval(n)),
                        "chi = {} at {m} * {n}",
                        chi.label()
                    );
                }
            }
        }
    }

    #[test]
    fn character_sums_vanish() {
        for q in 2..=50u64 {
            for chi in enumerate_characters(q, false) {
                if chi.is_principal() {
                    continue;
                }
                let mut acc = Cyclotomic::zero();
                for n in 0..q {
                    acc = acc.add(&chi.eval(n as i64));
                }
                assert!(acc.is_zero(), "sum of {} over Z/{q}", chi.label());
            }
        }
    }

    #[test]
    fn gauss_sum_examples() {
        // quadratic mod 3: zeta3 - zeta3^2
        let chi3 = DirichletCharacter::new(3, vec![1]).unwrap();
        let tau3 = gauss_sum(&chi3);
        let expect = Cyclotomic::root_of_unity(3, 1).sub(&Cyclotomic::root_of_unity(3, 2));
        assert_eq!(tau3, expect);
        // odd quadratic mod 4: 2i
        let chi4 = DirichletCharacter::new(4, vec![1]).unwrap();
        let tau4 = gauss_sum(&chi4);
        assert_eq!(
            tau4,
            Cyclotomic::root_of_unity(4, 1).scalar_mul(&rat_int(2))
        );
    }

    #[test]
    fn labels_round_trip() {
        for q in [3u64, 8, 9, 12, 40] {
            for chi in enumerate_characters(q, false) {
                let back = DirichletCharacter::from_label(&chi.label()).unwrap();
                assert_eq!(back, chi);
            }
        }
        assert!(DirichletCharacter::from_label("9:7").is_err());
        assert!(DirichletCharacter::from_label("nonsense").is_err());
    }

    #[test]
    fn pair_admissibility() {
        let chi3 = DirichletCharacter::new(3, vec![1]).unwrap();
        let chi4 = DirichletCharacter::new(4, vec![1]).unwrap();
        // odd * odd -> admissible
        let pair = CharacterPair::new(chi3.clone(), chi4.clone()).unwrap();
        assert_eq!(pair.level(), 12);
        assert_eq!(pair.value_order(), 2);
        // psi(5) = chi3(5) * conj(chi4)(5) = chi3(2) * chi4(1) = -1
        assert_eq!(pair.psi_eval(5), Cyclotomic::from_integer(-1));
        assert!(pair.psi_eval(6).is_zero());
        // odd * even -> rejected with the parity hypothesis named
        let chi12 = DirichletCharacter::new(12, vec![1, 1]).unwrap();
        assert_eq!(chi12.parity(), 1);
        let err = CharacterPair::new(chi3.clone(), chi12).unwrap_err();
        assert!(err.to_string().contains("chi1*chi2(-1) = 1"), "{err}");
        // imprimitive rejected
        let lifted = DirichletCharacter::new(9, vec![3]).unwrap();
        assert!(CharacterPair::new(chi3, lifted).is_err());
    }

    #[test]
    fn psi_of_conjugate_self_pair_is_principal() {
        let chi3 = DirichletCharacter::new(3, vec![1]).unwrap();
        let pair = CharacterPair::new(chi3.clone(), chi3).unwrap();
        assert!(pair.psi().is_principal());
        assert_eq!(pair.psi_eval(2), Cyclotomic::one());
    }
}
