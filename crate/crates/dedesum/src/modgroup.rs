//! Integer 2×2 matrix algebra for the congruence subgroup Γ₀(N):
//! validated construction, bottom-row completion by extended Euclid,
//! matrix product, the Fricke conjugate γ ↦ γ′, and seeded sampling.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element (a b; c d) of Γ₀(N): det = 1 and N | c.
#[derive(Clone, PartialEq, Eq)]
pub struct GammaMatrix {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
    level: u64,
}

impl std::fmt::Debug for GammaMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({}, {}; {}, {})@{}",
            self.a, self.b, self.c, self.d, self.level
        )
    }
}

impl std::fmt::Display for GammaMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}; {}, {})", self.a, self.b, self.c, self.d)
    }
}

impl GammaMatrix {
    /// Validated construction; the two failure modes are named explicitly.
    pub fn make(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
        level: u64,
    ) -> Result<Self> {
        assert!(level >= 1, "level must be positive");
        let (a, b, c, d) = (a.into(), b.into(), c.into(), d.into());
        let det = &a * &d - &b * &c;
        if !det.is_one() {
            return Err(Error::DeterminantNotOne {
                det: det.to_string(),
            });
        }
        if !(&c % BigInt::from(level)).is_zero() {
            return Err(Error::LevelDoesNotDivide {
                level,
                c: c.to_string(),
            });
        }
        Ok(GammaMatrix { a, b, c, d, level })
    }

    pub fn identity(level: u64) -> Self {
        GammaMatrix::make(1, 0, 0, 1, level).expect("identity is valid")
    }

    /// The translation (1 n; 0 1).
    pub fn translation(level: u64, n: i64) -> Self {
        GammaMatrix::make(1, n, 0, 1, level).expect("translation is valid")
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }
    pub fn c(&self) -> &BigInt {
        &self.c
    }
    pub fn d(&self) -> &BigInt {
        &self.d
    }
    pub fn level(&self) -> u64 {
        self.level
    }

    /// −γ, which acts identically on the upper half-plane.
    pub fn neg(&self) -> Self {
        GammaMatrix {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
            level: self.level,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.level != other.level {
            return Err(Error::LevelMismatch {
                left: self.level,
                right: other.level,
            });
        }
        Ok(GammaMatrix {
            a: &self.a * &other.a + &self.b * &other.c,
            b: &self.a * &other.b + &self.b * &other.d,
            c: &self.c * &other.a + &self.d * &other.c,
            d: &self.c * &other.b + &self.d * &other.d,
            level: self.level,
        })
    }

    pub fn inverse(&self) -> Self {
        GammaMatrix {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
            level: self.level,
        }
    }

    /// The Fricke conjugate γ′ with ωγ = γ′ω: for γ = (a b; c̃N d),
    /// γ′ = (d −c̃; −bN a). Involution; preserves the level.
    pub fn gamma_prime(&self) -> Self {
        let n = BigInt::from(self.level);
        let c_tilde = &self.c / &n;
        GammaMatrix {
            a: self.d.clone(),
            b: -c_tilde,
            c: -&self.b * &n,
            d: self.a.clone(),
            level: self.level,
        }
    }
}

/// Canonical lift of a bottom row (c, d) with N | c and gcd(c, d) = 1 to an
/// element of Γ₀(N), normalized so 0 ≤ a < |c| when c ≠ 0. For c = 0 the
/// lift is (d, 0; 0, d) with d = ±1.
pub fn complete_bottom_row(c: impl Into<BigInt>, d: impl Into<BigInt>, level: u64) -> Result<GammaMatrix> {
    let (c, d) = (c.into(), d.into());
    if !(&c % BigInt::from(level)).is_zero() {
        return Err(Error::LevelDoesNotDivide {
            level,
            c: c.to_string(),
        });
    }
    let g = c.gcd(&d);
    if !g.is_one() {
        return Err(Error::BottomRowNotCoprime {
            c: c.to_string(),
            d: d.to_string(),
            g: g.to_string(),
        });
    }
    if c.is_zero() {
        // d = ±1; (d, 0; 0, d) has determinant d^2 = 1
        return Ok(GammaMatrix {
            a: d.clone(),
            b: BigInt::zero(),
            c: BigInt::zero(),
            d,
            level,
        });
    }
    // a = d^{-1} mod |c|, shifted into [0, |c|); then b = (ad - 1)/c exactly
    let c_abs = c.abs();
    let ext = d.extended_gcd(&c_abs);
    debug_assert!(ext.gcd.is_one());
    let a = ext.x.mod_floor(&c_abs);
    let b = (&a * &d - BigInt::one()) / &c;
    let m = GammaMatrix {
        a,
        b,
        c,
        d,
        level,
    };
    debug_assert!((&m.a * &m.d - &m.b * &m.c).is_one());
    m.check();
    Ok(m)
}

impl GammaMatrix {
    fn check(&self) {
        debug_assert!((&self.a * &self.d - &self.b * &self.c).is_one());
        debug_assert!((&self.c % BigInt::from(self.level)).is_zero());
    }
}

/// Deterministic seeded sample from Γ₀(N): c is a nonzero multiple of N with
/// |c| ≤ c_bound, d is uniform in [1, |c|] among residues coprime to c, and
/// the top row is the canonical completion.
pub fn random_gamma0(level: u64, c_bound: u64, seed: u64) -> GammaMatrix {
    assert!(c_bound >= level, "c_bound must be at least the level");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_k = c_bound / level;
    let k = rng.gen_range(1..=max_k) as i64;
    let sign = if rng.gen::<bool>() { 1 } else { -1 };
    let c = sign * k * level as i64;
    let d = loop {
        let d = rng.gen_range(1..=c.unsigned_abs()) as i64;
        if num_integer::gcd(d, c) == 1 {
            break d;
        }
    };
    complete_bottom_row(c, d, level).expect("sampled row is completable")
}

#[derive(Serialize, Deserialize)]
struct MatrixWire {
    a: String,
    b: String,
    c: String,
    d: String,
    level: u64,
}

impl Serialize for GammaMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixWire {
            a: self.a.to_string(),
            b: self.b.to_string(),
            c: self.c.to_string(),
            d: self.d.to_string(),
            level: self.level,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GammaMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let w = MatrixWire::deserialize(deserializer)?;
        let parse = |s: &String| {
            s.parse::<BigInt>()
                .map_err(|_| D::Error::custom(format!("bad integer {s:?}")))
        };
        GammaMatrix::make(parse(&w.a)?, parse(&w.b)?, parse(&w.c)?, parse(&w.d)?, w.level)
            .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_validates() {
        assert!(GammaMatrix::make(1, 1, 0, 1, 9).is_ok());
        assert!(GammaMatrix::make(1, 0, 9, 1, 9).is_ok());
        let err = GammaMatrix::make(2, 0, 9, 1, 9).unwrap_err();
        assert!(err.to_string().contains("determinant is 2"), "{err}");
        let err = GammaMatrix::make(1, 0, 3, 1, 9).unwrap_err();
        assert!(err.to_string().contains("does not divide"), "{err}");
    }

    #[test]
    fn completion_examples() {
        let m = complete_bottom_row(9, 1, 9).unwrap();
        assert_eq!(m, GammaMatrix::make(1, 0, 9, 1, 9).unwrap());
        let m = complete_bottom_row(9, 2, 9).unwrap();
        assert_eq!(m, GammaMatrix::make(5, 1, 9, 2, 9).unwrap());
        let err = complete_bottom_row(9, 3, 9).unwrap_err();
        assert!(err.to_string().contains("gcd(9, 3) = 3"), "{err}");
    }

    #[test]
    fn completion_normalization() {
        for c in [-36i64, -9, 9, 18, 36] {
            for d in 1..=c.unsigned_abs() as i64 {
                if num_integer::gcd(c, d) != 1 {
                    continue;
                }
                let m = complete_bottom_row(c, d, 9).unwrap();
                assert!(m.a() >= &BigInt::from(0) && m.a() < &BigInt::from(c.abs()));
                // uniqueness of the representative: a is determined mod |c|
                let m2 = complete_bottom_row(c, d, 9).unwrap();
                assert_eq!(m, m2);
            }
        }
        // c = 0 needs d = ±1
        assert_eq!(
            complete_bottom_row(0, 1, 9).unwrap(),
            GammaMatrix::identity(9)
        );
        assert_eq!(
            complete_bottom_row(0, -1, 9).unwrap(),
            GammaMatrix::identity(9).neg()
        );
        assert!(complete_bottom_row(0, 5, 9).is_err());
    }

    #[test]
    fn product_and_closure() {
        let g = GammaMatrix::make(5, 1, 9, 2, 9).unwrap();
        let id = GammaMatrix::identity(9);
        assert_eq!(g.mul(&id).unwrap(), g);
        let t = GammaMatrix::translation(9, 1);
        let u = GammaMatrix::make(1, 0, 9, 1, 9).unwrap();
        let p = t.mul(&u).unwrap();
        assert_eq!(p, GammaMatrix::make(10, 1, 9, 1, 9).unwrap());
        assert_eq!(g.mul(&g.inverse()).unwrap(), id);
        // closure on random pairs
        for s in 0..50 {
            let x = random_gamma0(12, 60, s);
            let y = random_gamma0(12, 60, s + 1000);
            let xy = x.mul(&y).unwrap();
            xy.check();
        }
        let other = GammaMatrix::identity(12);
        assert!(g.mul(&other).is_err());
    }

    #[test]
    fn gamma_prime_examples() {
        let g = GammaMatrix::make(1, 0, 9, 1, 9).unwrap();
        assert_eq!(g.gamma_prime(), GammaMatrix::make(1, -1, 0, 1, 9).unwrap());
        let g = GammaMatrix::make(5, 1, 9, 2, 9).unwrap();
        assert_eq!(
            g.gamma_prime(),
            GammaMatrix::make(2, -1, -9, 5, 9).unwrap()
        );
    }

    #[test]
    fn gamma_prime_is_involution() {
        for s in 0..100 {
            let g = random_gamma0(9, 90, s);
            let gpp = g.gamma_prime().gamma_prime();
            assert_eq!(gpp, g, "seed {s}");
            assert_eq!(g.gamma_prime().level(), 9);
            g.gamma_prime().check();
        }
    }

    #[test]
    fn sampler_is_deterministic_and_valid() {
        let a = random_gamma0(9, 270, 42);
        let b = random_gamma0(9, 270, 42);
        assert_eq!(a, b);
        for s in 0..1000 {
            let g = random_gamma0(9, 270, s);
            g.check();
            assert!(!g.c().is_zero());
            assert!(g.c().abs() <= BigInt::from(270));
        }
    }

    #[test]
    fn sampler_covers_all_admissible_d() {
        // exhaustive tally at N = 9 restricted to samples with c = 9
        use std::collections::HashSet;
        let mut seen = HashSet::new();
        for s in 0..4000 {
            let g = random_gamma0(9, 9, s);
            if *g.c() == BigInt::from(9) {
                seen.insert(g.d().clone());
            }
        }
        for d in [1u64, 2, 4, 5, 7, 8] {
            assert!(seen.contains(&BigInt::from(d)), "d = {d} never sampled");
        }
    }

    #[test]
    fn matrix_json_round_trip() {
        let g = GammaMatrix::make(5, 1, 9, 2, 9).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"a":"5","b":"1","c":"9","d":"2","level":9}"#);
        let back: GammaMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        // invalid entries rejected on the way in
        let bad = r#"{"a":"2","b":"0","c":"9","d":"1","level":9}"#;
        assert!(serde_json::from_str::<GammaMatrix>(bad).is_err());
    }
}
