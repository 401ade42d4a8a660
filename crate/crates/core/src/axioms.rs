//! Randomized checks of the power-structure axioms.

use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::lpoly::{LPoly, Q};
use crate::power::{power_standard, power_via_lambda, ConfigInt, LambdaStructure, Opposite, ZetaInt, ZetaL};
use crate::series::{Ring, Series};

/// An exponentiation `(A(t), m) ↦ A(t)^m` with exponents in `E`.
pub trait PowerOp<R: Ring, E: Ring> {
    fn pow(&self, a: &Series<R>, m: &E) -> Result<Series<R>>;
    /// The image of an exponent in the coefficient ring, used by
    /// `(1 + a₁t + …)^m = 1 + m·a₁t + …`.
    fn embed(&self, m: &E) -> R;
    fn name(&self) -> String;
}

/// The binomial-multinomial expansion with integer exponents.
#[derive(Clone, Copy, Debug, Default)]
pub struct Standard;

impl<R: Ring> PowerOp<R, BigInt> for Standard {
    fn pow(&self, a: &Series<R>, m: &BigInt) -> Result<Series<R>> {
        Ok(power_standard(a, m))
    }
    fn embed(&self, m: &BigInt) -> R {
        R::from_int(m)
    }
    fn name(&self) -> String {
        "standard".into()
    }
}

/// The power structure generated by a λ-structure.
#[derive(Clone, Copy, Debug, Default)]
pub struct ViaLambda<L>(pub L);

impl<R: Ring, L: LambdaStructure<R>> PowerOp<R, R> for ViaLambda<L> {
    fn pow(&self, a: &Series<R>, m: &R) -> Result<Series<R>> {
        power_via_lambda(a, m, &self.0)
    }
    fn embed(&self, m: &R) -> R {
        m.clone()
    }
    fn name(&self) -> String {
        self.0.name()
    }
}

pub const AXIOM_NAMES: [&str; 8] = [
    "(1) A^0 = 1",
    "(2) A^1 = A",
    "(3) (AB)^m = A^m B^m",
    "(4) A^(m+n) = A^m A^n",
    "(5) A^(mn) = (A^n)^m",
    "(6) (1 + a t + ...)^m = 1 + m a t + ...",
    "(7) A(t^k)^m = A^m(t^k)",
    "finite determinacy",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomResult {
    pub name: &'static str,
    pub checked: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub power: String,
    pub n: usize,
    pub seed: u64,
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.failed == 0 && r.checked > 0)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "power structure: {} (N = {}, seed = {})", self.power, self.n, self.seed)?;
        for r in &self.results {
            let status = if r.failed == 0 { "PASS" } else { "FAIL" };
            writeln!(f, "  {status} {} ({}/{} trials)", r.name, r.checked - r.failed, r.checked)?;
            if let Some(msg) = &r.first_failure {
                writeln!(f, "       first failure: {msg}")?;
            }
        }
        Ok(())
    }
}

/// Random inputs for [`verify_power_axioms`].
pub trait Sampler<R, E> {
    fn coefficient(&self, rng: &mut ChaCha8Rng) -> R;
    fn exponent(&self, rng: &mut ChaCha8Rng) -> E;
}

/// Integer coefficients in `[-3, 3]`, integer exponents in `[-3, 3]`.
#[derive(Clone, Copy, Debug, Default)]
pub struct IntSampler;

impl Sampler<BigInt, BigInt> for IntSampler {
    fn coefficient(&self, rng: &mut ChaCha8Rng) -> BigInt {
        BigInt::from(rng.gen_range(-3i64..=3))
    }
    fn exponent(&self, rng: &mut ChaCha8Rng) -> BigInt {
        BigInt::from(rng.gen_range(-3i64..=3))
    }
}

fn random_lpoly(rng: &mut ChaCha8Rng, terms: usize, max_coeff: i64) -> LPoly {
    let mut p = LPoly::zero();
    for _ in 0..rng.gen_range(0..=terms) {
        let q = Q::new(rng.gen_range(0..=4), 2);
        p = p.add(&LPoly::term(rng.gen_range(-max_coeff..=max_coeff), q));
    }
    p
}

/// `ℤ[L^{1/2}]` coefficients; exponents either integers or `LPoly`s.
#[derive(Clone, Copy, Debug, Default)]
pub struct LPolySampler;

impl Sampler<LPoly, BigInt> for LPolySampler {
    fn coefficient(&self, rng: &mut ChaCha8Rng) -> LPoly {
        random_lpoly(rng, 2, 2)
    }
    fn exponent(&self, rng: &mut ChaCha8Rng) -> BigInt {
        BigInt::from(rng.gen_range(-3i64..=3))
    }
}

impl Sampler<LPoly, LPoly> for LPolySampler {
    fn coefficient(&self, rng: &mut ChaCha8Rng) -> LPoly {
        random_lpoly(rng, 2, 2)
    }
    fn exponent(&self, rng: &mut ChaCha8Rng) -> LPoly {
        random_lpoly(rng, 2, 2)
    }
}

fn random_series<R: Ring, E>(s: &impl Sampler<R, E>, rng: &mut ChaCha8Rng, n: usize, from: usize) -> Series<R> {
    Series::from_fn(n, |i| match i {
        0 => R::one(),
        i if i < from => R::zero(),
        _ => s.coefficient(rng),
    })
}

/// Checks axioms (1)–(7) and finite determinacy on `trials` random
/// instances truncated at `t^n`.
pub fn verify_power_axioms<R: Ring, E: Ring>(
    power: &impl PowerOp<R, E>,
    sampler: &impl Sampler<R, E>,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<AxiomReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut results: Vec<AxiomResult> = AXIOM_NAMES
        .iter()
        .map(|&name| AxiomResult { name, checked: 0, failed: 0, first_failure: None })
        .collect();
    let mut record = |i: usize, ok: bool, detail: &dyn Fn() -> String| {
        let r = &mut results[i];
        r.checked += 1;
        if !ok {
            r.failed += 1;
            r.first_failure.get_or_insert_with(detail);
        }
    };
    for _ in 0..trials {
        let a = random_series(sampler, &mut rng, n, 1);
        let b = random_series(sampler, &mut rng, n, 1);
        let m = sampler.exponent(&mut rng);
        let e = sampler.exponent(&mut rng);
        let am = power.pow(&a, &m)?;

        let p0 = power.pow(&a, &E::zero())?;
        record(0, p0 == Series::one(n), &|| format!("A = {a:?}: got {p0:?}"));

        let p1 = power.pow(&a, &E::one())?;
        record(1, p1 == a, &|| format!("A = {a:?}: got {p1:?}"));

        let lhs = power.pow(&a.mul(&b)?, &m)?;
        let rhs = am.mul(&power.pow(&b, &m)?)?;
        record(2, lhs == rhs, &|| format!("A = {a:?}, B = {b:?}, m = {m:?}"));

        let lhs = power.pow(&a, &m.add(&e))?;
        let rhs = am.mul(&power.pow(&a, &e)?)?;
        record(3, lhs == rhs, &|| format!("A = {a:?}, m = {m:?}, n = {e:?}"));

        let lhs = power.pow(&a, &m.mul(&e))?;
        let rhs = power.pow(&power.pow(&a, &e)?, &m)?;
        record(4, lhs == rhs, &|| format!("A = {a:?}, m = {m:?}, n = {e:?}"));

        let expected = power.embed(&m).mul(a.coeff(1));
        record(5, *am.coeff(0) == R::one() && *am.coeff(1) == expected, &|| {
            format!("A = {a:?}, m = {m:?}: linear coefficient {:?}", am.coeff(1))
        });

        let k = rng.gen_range(2..=3);
        let lhs = power.pow(&a.substitute_power(k), &m)?;
        let rhs = am.substitute_power(k);
        record(6, lhs == rhs, &|| format!("A = {a:?}, m = {m:?}, k = {k}"));

        let k = rng.gen_range(1..=n.max(1));
        let c = random_series(sampler, &mut rng, n, k);
        let pc = power.pow(&c, &m)?;
        record(7, pc.is_one_mod(k), &|| format!("A = {c:?} ≡ 1 mod t^{k}, m = {m:?}: got {pc:?}"));
    }
    Ok(AxiomReport { power: power.name(), n, seed, results })
}

/// Ring and structure choices for [`verify_named`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomTarget {
    IntStandard,
    IntZeta,
    IntConfig,
    IntOppositeZeta,
    LPolyStandard,
    LPolyZeta,
    LPolyOppositeZeta,
}

impl AxiomTarget {
    pub const ALL: [AxiomTarget; 7] = [
        AxiomTarget::IntStandard,
        AxiomTarget::IntZeta,
        AxiomTarget::IntConfig,
        AxiomTarget::IntOppositeZeta,
        AxiomTarget::LPolyStandard,
        AxiomTarget::LPolyZeta,
        AxiomTarget::LPolyOppositeZeta,
    ];
}

pub fn verify_named(target: AxiomTarget, n: usize, trials: usize, seed: u64) -> Result<AxiomReport> {
    let mut r = match target {
        AxiomTarget::IntStandard => verify_power_axioms::<BigInt, BigInt>(&Standard, &IntSampler, n, trials, seed),
        AxiomTarget::IntZeta => verify_power_axioms(&ViaLambda(ZetaInt), &IntSampler, n, trials, seed),
        AxiomTarget::IntConfig => verify_power_axioms(&ViaLambda(ConfigInt), &IntSampler, n, trials, seed),
        AxiomTarget::IntOppositeZeta => verify_power_axioms(&ViaLambda(Opposite(ZetaInt)), &IntSampler, n, trials, seed),
        AxiomTarget::LPolyStandard => verify_power_axioms::<LPoly, BigInt>(&Standard, &LPolySampler, n, trials, seed),
        AxiomTarget::LPolyZeta => verify_power_axioms::<LPoly, LPoly>(&ViaLambda(ZetaL), &LPolySampler, n, trials, seed),
        AxiomTarget::LPolyOppositeZeta => {
            verify_power_axioms::<LPoly, LPoly>(&ViaLambda(Opposite(ZetaL)), &LPolySampler, n, trials, seed)
        }
    }?;
    let ring = match target {
        AxiomTarget::IntStandard | AxiomTarget::IntZeta | AxiomTarget::IntConfig | AxiomTarget::IntOppositeZeta => "Z",
        _ => "Z[L^(1/2)]",
    };
    r.power = format!("{} over {ring}", r.power);
    Ok(r)
}

/// Over ℤ the ζ- and configuration-generated powers agree with the
/// closed-form standard power. Returns the first disagreeing input.
pub fn compare_integer_powers(n: usize, trials: usize, seed: u64) -> Result<Option<String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let a = random_series(&IntSampler, &mut rng, n, 1);
        let m = IntSampler.exponent(&mut rng);
        let std = power_standard(&a, &m);
        let zeta = power_via_lambda(&a, &m, &ZetaInt)?;
        let config = power_via_lambda(&a, &m, &ConfigInt)?;
        if std != zeta || std != config {
            return Ok(Some(format!("A = {a:?}, m = {m}")));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_target_satisfies_the_axioms() {
        for t in AxiomTarget::ALL {
            let r = verify_named(t, 5, 20, 7).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn integer_routes_agree() {
        assert_eq!(compare_integer_powers(6, 50, 1).unwrap(), None);
    }

    struct Broken;

    impl PowerOp<BigInt, BigInt> for Broken {
        fn pow(&self, a: &Series<BigInt>, m: &BigInt) -> Result<Series<BigInt>> {
            Ok(a.scale(m))
        }
        fn embed(&self, m: &BigInt) -> BigInt {
            m.clone()
        }
        fn name(&self) -> String {
            "scaling".into()
        }
    }

    #[test]
    fn a_non_power_is_caught() {
        let r = verify_power_axioms(&Broken, &IntSampler, 4, 10, 3).unwrap();
        assert!(!r.passed());
        assert!(r.results[0].failed > 0);
    }
}
