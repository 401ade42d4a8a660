//! The acceptance battery: fourteen identity checks plus a check of the
//! wreath-product action convention.
//!
//! Every check computes both sides independently and compares them
//! exactly; the outcome carries the data it compared so failures can be
//! read off the report.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::axioms::{compare_integer_powers, verify_named, AxiomTarget};
use crate::bundle::{
    eigenphase_oracle, generalized_chi, verify_wreath_bundle_theorem, AgeData, CharacterBundle, WreathPowerBundle,
};
use crate::error::Result;
use crate::euler::{chi_k_recursive, chi_k_tuples, verify_induction_invariance, verify_tamanoi};
use crate::grp::{find_embedding, named_group, subgroup_generated, wreath_product, Elem, FiniteGroup};
use crate::gset::{symmetric_power, GSet};
use crate::k0::{FgrClass, GroupClassId, PRESET_NAMES};
use crate::limits::Limits;
use crate::lpoly::{LPoly, Q};
use crate::power::macdonald_rhs;
use crate::series::{binomial, partitions, Series};
use crate::zeta::{effective_power, lambda_series_model, series_is_effective, zeta_lambda_divergence};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_240_917;

/// Criteria whose failure is explained by a defect in the identity they
/// check rather than in this library (see the README). They are still run
/// and reported.
pub const KNOWN_FAILURES: [u8; 2] = [10, 11];

#[derive(Clone, Debug)]
pub struct Outcome {
    /// `0` for the action check, `1..=14` for the criteria.
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Option<Duration>,
}

impl Outcome {
    pub fn within_budget(&self) -> bool {
        self.budget.is_none_or(|b| self.elapsed <= b)
    }

    pub fn ok(&self) -> bool {
        self.passed && self.within_budget()
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.ok() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} [{:>2}] {} ({:.2?})", self.id, self.title, self.elapsed)?;
        if !self.within_budget() {
            write!(f, " over budget {:?}", self.budget.unwrap())?;
        }
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

fn run(id: u8, title: &'static str, budget: Option<u64>, f: impl FnOnce() -> Result<(bool, String)>) -> Outcome {
    let start = Instant::now();
    let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    Outcome { id, title, passed, detail, elapsed: start.elapsed(), budget: budget.map(Duration::from_secs) }
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn show(v: &[BigInt]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn g(name: &str) -> Result<FiniteGroup> {
    named_group(name)
}

// ------------------------------------------------------- wreath convention

/// How `((g_i), σ)` moves a tuple `x`; `act` is the base action.
pub type WreathRule = fn(g: &[Elem], sigma: &[usize], x: &[usize], act: &dyn Fn(Elem, usize) -> usize) -> Vec<usize>;

/// `((g_i), σ)·x` has coordinate `σ(j)` equal to `g_{σ(j)}·x_j`.
pub fn standard_wreath_rule(g: &[Elem], sigma: &[usize], x: &[usize], act: &dyn Fn(Elem, usize) -> usize) -> Vec<usize> {
    let mut out = vec![0; x.len()];
    for (j, &xj) in x.iter().enumerate() {
        out[sigma[j]] = act(g[sigma[j]], xj);
    }
    out
}

/// Builds `Xⁿ` over `G ≀ S_n` from `rule` and compares it with the
/// library's wreath power. A rule that is not an action fails here.
pub fn wreath_action_check(rule: WreathRule) -> Outcome {
    run(0, "wreath product action on tuples", None, || {
        let s3 = g("S3")?;
        let c2 = g("C2")?;
        let h = subgroup_generated(&s3, &[s3.generators()[0]]);
        let cases = [
            (GSet::regular(&c2), 2),
            (GSet::regular(&c2), 3),
            (GSet::trivial(&c2, vec![0, 1]), 2),
            (GSet::cosets(&s3, &h)?, 2),
            (GSet::regular(&s3), 2),
        ];
        for (x, n) in cases {
            let w = wreath_product(x.group(), n)?;
            let m = x.len();
            let decode = |mut i: usize| {
                let mut t = vec![0; n];
                for j in (0..n).rev() {
                    t[j] = i % m;
                    i /= m;
                }
                t
            };
            let encode = |t: &[usize]| t.iter().fold(0, |acc, &c| acc * m + c);
            let dims: Vec<u32> = (0..m.pow(n as u32)).map(|i| decode(i).iter().map(|&c| x.dim(c)).sum()).collect();
            let built = GSet::from_action(&w, dims, |e, i| {
                let (gs, sigma) = w.wreath_parts(e).expect("wreath element");
                encode(&rule(&gs, &sigma, &decode(i), &|a, c| x.act(a, c)))
            });
            let built = match built {
                Ok(b) => b,
                Err(e) => return Ok((false, format!("{} cells, n = {n}: {e}", x.len()))),
            };
            let reference = x.wreath_power_over(n, &w)?;
            if w.elements().any(|e| built.permutation(e) != reference.permutation(e)) {
                return Ok((false, format!("{} cells, n = {n}: tables differ", x.len())));
            }
        }
        Ok((true, "5 base sets".into()))
    })
}

// -------------------------------------------------------------- criteria

fn tamanoi_trivial_k1() -> Outcome {
    run(1, "chi^(1) of symmetric products of a point, n <= 8", Some(5), || {
        Limits::current().with_max_group_order(50_000).scope(|| {
            let r = verify_tamanoi(&GSet::point(&FiniteGroup::trivial()), 1, 8)?;
            let expected = ints(&[1, 1, 2, 3, 5, 7, 11, 15, 22]);
            let counted: Vec<BigInt> = (0..=8).map(|n| BigInt::from(partitions(n).len())).collect();
            let ok = r.passed() && r.lhs == expected && counted == expected;
            Ok((ok, format!("lhs {} rhs {}", show(&r.lhs), show(&r.rhs))))
        })
    })
}

fn tamanoi_c2_k1() -> Outcome {
    run(2, "chi^(1) of wreath powers of (pt, C2), n <= 3", Some(5), || {
        let c2 = g("C2")?;
        let pt = GSet::point(&c2);
        let r = verify_tamanoi(&pt, 1, 3)?;
        let classes: Vec<BigInt> = (1..=3)
            .map(|n| Ok(BigInt::from(crate::grp::conjugacy_classes(&wreath_product(&c2, n)?).len())))
            .collect::<Result<_>>()?;
        let rhs = Series::one(3)
            .sub(&Series::monomial(BigInt::from(1), 1, 3))?
            .pow_int(-2)?
            .mul(&Series::one(3).sub(&Series::monomial(BigInt::from(1), 2, 3))?.pow_int(-2)?)?
            .mul(&Series::one(3).sub(&Series::monomial(BigInt::from(1), 3, 3))?.pow_int(-2)?)?;
        let ok = r.passed()
            && r.lhs[1..] == classes[..]
            && r.rhs == rhs.coeffs()
            && r.lhs == ints(&[1, 2, 5, 10]);
        Ok((ok, format!("lhs {} rhs {}", show(&r.lhs), show(&r.rhs))))
    })
}

fn tamanoi_trivial_k2() -> Outcome {
    run(3, "chi^(2) of symmetric products of a point by triples, n <= 3", Some(30), || {
        let pt = GSet::point(&FiniteGroup::trivial());
        let mut lhs = vec![BigInt::from(1)];
        for n in 1..=3 {
            lhs.push(chi_k_tuples(&pt.wreath_power(n)?, 2)?);
        }
        let rhs = macdonald_rhs(&BigInt::from(1), 2, 3)?.into_coeffs();
        let recursive = verify_tamanoi(&pt, 2, 3)?;
        let ok = lhs == rhs && recursive.passed() && recursive.lhs == lhs;
        Ok((ok, format!("lhs {} rhs {}", show(&lhs), show(&rhs))))
    })
}

fn classical_macdonald() -> Outcome {
    run(4, "symmetric powers of finite sets", Some(1), || {
        let mut rows = Vec::new();
        for points in [2usize, 3] {
            let chi = BigInt::from(points);
            let series = Series::one(6).sub(&Series::monomial(BigInt::from(1), 1, 6))?.pow_int(-(points as i64))?;
            for n in 0..=6 {
                let count = BigInt::from(symmetric_power(points, n).len());
                let closed = binomial(&(&chi + BigInt::from(n) - 1), n);
                if count != closed || &count != series.coeff(n) {
                    return Ok((false, format!("|X| = {points}, n = {n}: {count} vs {closed} vs {}", series.coeff(n))));
                }
                rows.push(count);
            }
        }
        Ok((true, show(&rows)))
    })
}

/// G-sets used wherever a broad sample is needed.
pub fn battery() -> Result<Vec<(String, GSet)>> {
    let mut out = Vec::new();
    for name in PRESET_NAMES {
        let grp = g(name)?;
        out.push((format!("pt/{name}"), GSet::point(&grp)));
        out.push((format!("reg/{name}"), GSet::regular(&grp)));
        out.push((format!("2pt[0,1]/{name}"), GSet::trivial(&grp, vec![0, 1])));
    }
    let s3 = g("S3")?;
    let d4 = g("D4")?;
    let c4 = g("C4")?;
    let c2 = g("C2")?;
    let c3 = g("C3")?;
    let t = s3.elements().find(|&e| s3.elem_order(e) == 2).expect("transposition");
    let r = s3.elements().find(|&e| s3.elem_order(e) == 3).expect("3-cycle");
    out.push(("S3/C2".into(), GSet::cosets(&s3, &subgroup_generated(&s3, &[t]))?));
    out.push(("S3/C3".into(), GSet::cosets(&s3, &subgroup_generated(&s3, &[r]))?));
    let refl = d4.generators()[1];
    out.push(("D4/<s>".into(), GSet::cosets(&d4, &subgroup_generated(&d4, &[refl]))?));
    let sq = c4.mul(c4.generators()[0], c4.generators()[0]);
    out.push(("C4/C2".into(), GSet::cosets(&c4, &subgroup_generated(&c4, &[sq]))?));
    out.push(("pt^2/C2wr2".into(), GSet::point(&c2).wreath_power(2)?));
    out.push(("pt^3/C2wr3".into(), GSet::point(&c2).wreath_power(3)?));
    out.push(("reg^2/C2wr2".into(), GSet::regular(&c2).wreath_power(2)?));
    out.push(("pt^2/C3wr2".into(), GSet::point(&c3).wreath_power(2)?));
    out.push(("pt^2/S3wr2".into(), GSet::point(&s3).wreath_power(2)?));
    out.push(("2pt^3/1wr3".into(), GSet::trivial(&FiniteGroup::trivial(), vec![0, 1]).wreath_power(3)?));
    out.push(("regC2 x ptC3".into(), GSet::regular(&c2).product(&GSet::point(&c3))?));
    out.push(("reg^2/S3 diag".into(), GSet::regular(&s3).diagonal_product(&GSet::regular(&s3))?));
    Ok(out)
}

fn definitions_agree() -> Outcome {
    run(5, "tuple and recursive definitions agree, k <= 3", Some(60), || {
        let cases = battery()?;
        for (name, x) in &cases {
            for k in 0..=3 {
                let a = chi_k_tuples(x, k)?;
                let b = chi_k_recursive(x, k);
                if a != b {
                    return Ok((false, format!("{name}, k = {k}: {a} vs {b}")));
                }
            }
        }
        Ok((true, format!("{} cases", cases.len())))
    })
}

fn induction_invariance() -> Outcome {
    run(6, "induction invariance of chi^(k), k <= 3", None, || {
        let mut count = 0;
        for (small, big) in [("C2", "S3"), ("C3", "S3"), ("C2", "C4"), ("V4", "D4")] {
            let (h, k) = (g(small)?, g(big)?);
            let emb = find_embedding(&h, &k)?.expect("embedding exists");
            let first = subgroup_generated(&h, &[h.generators()[0]]);
            let sets = [
                GSet::point(&h),
                GSet::regular(&h),
                GSet::trivial(&h, vec![0, 2]),
                GSet::cosets(&h, &first)?.disjoint_union(&GSet::point(&h))?,
            ];
            for z in &sets {
                let r = verify_induction_invariance(z, &emb, 3)?;
                if !r.passed() {
                    return Ok((false, format!("{small} in {big}: {r:?}")));
                }
                count += 1;
            }
        }
        Ok((true, format!("{count} G-sets over 4 embeddings")))
    })
}

fn random_class(rng: &mut ChaCha8Rng) -> Result<FgrClass> {
    let mut x = FgrClass::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let id = GroupClassId::from_index(rng.gen_range(0..PRESET_NAMES.len() as u32))?;
        x = x.add(&FgrClass::term(id, rng.gen_range(0..=2), rng.gen_range(-3..=3)));
    }
    Ok(x)
}

fn ring_homomorphism(seed: u64) -> Outcome {
    run(7, "chi^(k) is multiplicative on classes, k <= 3", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for trial in 0..100 {
            let a = random_class(&mut rng)?;
            let b = random_class(&mut rng)?;
            let ab = a.try_mul(&b)?;
            for k in 0..=3 {
                if ab.chi_k(k) != a.chi_k(k) * b.chi_k(k) {
                    return Ok((false, format!("trial {trial}, k = {k}: a = {a}, b = {b}")));
                }
            }
        }
        Ok((true, "100 random pairs".into()))
    })
}

fn power_axioms(seed: u64) -> Outcome {
    run(8, "power structure axioms over Z and Z[L^(1/2)]", None, || {
        let mut failed = Vec::new();
        for t in AxiomTarget::ALL {
            let r = verify_named(t, 6, 100, seed)?;
            if !r.passed() {
                failed.push(r.to_string());
            }
        }
        if let Some(m) = compare_integer_powers(6, 100, seed)? {
            failed.push(format!("integer routes disagree at {m}"));
        }
        let n = AxiomTarget::ALL.len();
        Ok((failed.is_empty(), if failed.is_empty() { format!("{n} structures, 100 trials each") } else { failed.join("; ") }))
    })
}

fn effective_power_check() -> Outcome {
    run(9, "geometric power of 1+t is the configuration series", None, || {
        let triv = FiniteGroup::trivial();
        let c2 = g("C2")?;
        let mut exps = Vec::new();
        for dims in [vec![0], vec![0, 0], vec![0, 0, 0], vec![1], vec![0, 1], vec![2, 0, 1]] {
            exps.push(GSet::trivial(&triv, dims.clone()));
            exps.push(GSet::trivial(&c2, dims));
        }
        let reg = GSet::regular(&c2);
        exps.push(reg.clone());
        exps.push(reg.disjoint_union(&GSet::point(&c2))?);
        exps.push(reg.disjoint_union(&GSet::trivial(&c2, vec![1]))?);
        let a = [GSet::point(&triv)];
        for m in &exps {
            let p = effective_power(&a, m, 3)?;
            let l = lambda_series_model(m, 3)?;
            if p != l || !series_is_effective(&p) {
                return Ok((false, format!("M = {m:?}: {p:?} vs {l:?}")));
            }
        }
        Ok((true, format!("{} exponents", exps.len())))
    })
}

fn divergence() -> Outcome {
    run(10, "zeta and configuration powers differ at t^2", None, || {
        let c2 = g("C2")?;
        let mut ok = true;
        let mut parts = Vec::new();
        for (name, z) in [("regular C2-set", GSet::regular(&c2)), ("two fixed points", GSet::trivial(&c2, vec![0, 0]))] {
            let r = zeta_lambda_divergence(&z)?;
            ok &= r.differ() && r.consistent();
            parts.push(format!(
                "{name}: diagonal {} vs swapped {} ({})",
                r.diagonal,
                r.swapped,
                if r.differ() { "differ" } else { "equal" }
            ));
        }
        Ok((ok, parts.join("; ")))
    })
}

fn wreath_bundle() -> Outcome {
    run(11, "wreath-bundle product formula for the sign character", Some(60), || {
        let b = CharacterBundle::sign_on_point(&g("C2")?)?;
        let mut ok = true;
        let mut parts = Vec::new();
        for phi in [Q::from_integer(0), Q::from_integer(1)] {
            let r = verify_wreath_bundle_theorem(&b, 1, &[phi], 3)?;
            let exponent = LPoly::one().add(&LPoly::l_pow(phi / 2));
            let pass = r.passed() && r.exponents.get(&1) == Some(&exponent);
            ok &= pass;
            parts.push(format!("k=1 phi=({phi}) {}", if pass { "ok" } else { "differs" }));
        }
        let phi = [Q::from_integer(1), Q::from_integer(1)];
        let r = verify_wreath_bundle_theorem(&b, 2, &phi, 2)?;
        ok &= r.passed();
        if r.passed() {
            parts.push("k=2 phi=(1,1) ok".into());
        } else {
            let n = (0..r.lhs.len()).find(|&i| r.lhs[i] != r.rhs[i]).unwrap_or(0);
            parts.push(format!("k=2 phi=(1,1) differs at t^{n}: {} vs {}", r.lhs[n], r.rhs[n]));
        }
        Ok((ok, parts.join("; ")))
    })
}

fn rank_zero() -> Outcome {
    run(12, "rank-zero bundle reproduces chi^(1) of wreath powers", None, || {
        let pt = GSet::point(&g("C2")?);
        let r = verify_wreath_bundle_theorem(&CharacterBundle::zero(&pt), 1, &[Q::from_integer(1)], 3)?;
        let expected: Vec<LPoly> = [1, 2, 5, 10].into_iter().map(LPoly::constant).collect();
        let t = verify_tamanoi(&pt, 1, 3)?;
        let plain: Vec<LPoly> = t.lhs.iter().map(|c| LPoly::constant(c.clone())).collect();
        let ok = r.passed() && r.lhs == expected && plain == expected;
        let shown: Vec<String> = r.lhs.iter().map(ToString::to_string).collect();
        Ok((ok, shown.join(",")))
    })
}

fn oracle_agreement(seed: u64) -> Outcome {
    run(13, "closed-form wreath eigenphases match a numerical oracle", None, || {
        // C6 ≀ S4 has order 31104
        Limits::current().with_max_group_order(50_000).scope(|| oracle_cases(seed))
    })
}

fn oracle_cases(seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    for case in 0..50 {
        let m: usize = rng.gen_range(2..=6);
        let cm = g(&format!("C{m}"))?;
        let a = cm.generators()[0];
        let rank = rng.gen_range(1..=2);
        let chars = (0..rank).map(|_| vec![(a, Q::new(rng.gen_range(0..m as i64), m as i64))]).collect();
        let b = CharacterBundle::on_point(&cm, chars)?;
        let n = rng.gen_range(1..=4);
        let w = WreathPowerBundle::new(&b, n)?;
        let grp = w.base().group().clone();
        let e = grp.elem(rng.gen_range(0..grp.order()))?;
        let exact = w.phases(0, e)?;
        let oracle = eigenphase_oracle(&w, 0, e)?;
        if !oracle.agrees_with(&exact, 1e-9) {
            return Ok((false, format!("case {case}: C{m}, rank {rank}, n = {n}: {exact:?} vs {oracle:?}")));
        }
    }
    Ok((true, "50 random cases".into()))
}

fn generalized_chi_homomorphism() -> Outcome {
    run(14, "generalized chi is invariant under induction and multiplicative", None, || {
        let c2 = g("C2")?;
        let sign = CharacterBundle::sign_on_point(&c2)?;
        let s3 = g("S3")?;
        let ind = sign.induced(&find_embedding(&c2, &s3)?.expect("C2 embeds in S3"))?;
        let c3 = g("C3")?;
        let third = CharacterBundle::on_point(&c3, vec![vec![(c3.generators()[0], Q::new(1, 3))]])?;
        let free = CharacterBundle::zero(&GSet::regular(&c2));
        let pairs = [(sign.clone(), sign.clone()), (sign.clone(), third), (sign.clone(), free)];
        let weights: [&[i64]; 4] = [&[0], &[1], &[1, 1], &[1, 2]];
        let mut checked = 0;
        for w in weights {
            let phi: Vec<Q> = w.iter().map(|&x| Q::from_integer(x)).collect();
            for k in 0..=phi.len().min(2) {
                let base = generalized_chi(&sign, k, &phi)?;
                if generalized_chi(&ind, k, &phi)? != base {
                    return Ok((false, format!("induction, k = {k}, phi = {w:?}")));
                }
                for (x, y) in &pairs {
                    let lhs = generalized_chi(&x.product(y)?, k, &phi)?;
                    let rhs = generalized_chi(x, k, &phi)?.mul(&generalized_chi(y, k, &phi)?);
                    if lhs != rhs {
                        return Ok((false, format!("product, k = {k}, phi = {w:?}: {lhs} vs {rhs}")));
                    }
                }
                checked += 1;
            }
        }
        Ok((true, format!("{checked} (k, phi) pairs")))
    })
}

/// Runs the fourteen criteria in order.
pub fn criteria(seed: u64) -> Vec<Outcome> {
    vec![
        tamanoi_trivial_k1(),
        tamanoi_c2_k1(),
        tamanoi_trivial_k2(),
        classical_macdonald(),
        definitions_agree(),
        induction_invariance(),
        ring_homomorphism(seed),
        power_axioms(seed),
        effective_power_check(),
        divergence(),
        wreath_bundle(),
        rank_zero(),
        oracle_agreement(seed),
        generalized_chi_homomorphism(),
    ]
}

/// The action check followed by the criteria.
pub fn selftest(seed: u64, rule: WreathRule) -> Vec<Outcome> {
    let mut out = vec![wreath_action_check(rule)];
    out.extend(criteria(seed));
    out
}

/// Failures outside [`KNOWN_FAILURES`].
pub fn unexpected_failures(outcomes: &[Outcome]) -> Vec<&Outcome> {
    outcomes.iter().filter(|o| !o.ok() && !KNOWN_FAILURES.contains(&o.id)).collect()
}
