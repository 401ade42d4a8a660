//! Equivariant vector bundles over G-sets, their ages, and the generalized
//! Euler characteristics of all orders with values in `ℤ[L^ℚ]`.
//!
//! Fibres are direct sums of one-dimensional characters of the basepoint
//! stabilizer. Wreath powers are handled separately by
//! [`WreathPowerBundle`], whose fibres are not diagonal over the wreath
//! stabilizer; their eigenphases come from a closed form.

mod oracle;
mod vect;

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::grp::{direct_product, Elem, FiniteGroup, Homomorphism, Subgroup};
use crate::gset::GSet;
use crate::lpoly::{frac, LPoly, Q};
use crate::power::{bounded_product_tuples, power_via_lambda, tuple_weight, ZetaL};
use crate::series::Series;

pub use oracle::{eigenphase_oracle, OraclePhases};
pub(crate) use vect::canonical_key;
pub use vect::{class_of_vect, lambda_vect_series, zeta_vect_series, PointPhases, VectClass, VectKey};

/// A G-set with a fibre at each cell on which stabilizers act with finite
/// order.
pub trait AgeData {
    fn base(&self) -> &GSet;
    fn rank(&self, x: usize) -> u32;
    /// Sorted eigenphases in `[0, 1)` of `g` on the fibre at `x`; `g` fixes `x`.
    fn phases_at(&self, x: usize, g: Elem) -> Vec<Q>;

    fn phases(&self, x: usize, g: Elem) -> Result<Vec<Q>> {
        if self.base().act(g, x) != x {
            return Err(Error::NotFixed { cell: x });
        }
        Ok(self.phases_at(x, g))
    }

    /// The age (fermion shift): the sum of the eigenphases.
    fn age(&self, x: usize, g: Elem) -> Result<Q> {
        Ok(self.phases(x, g)?.into_iter().sum())
    }
}

/// A character of a stabilizer with values in `ℚ/ℤ`, stored as
/// representatives in `[0, 1)` aligned with the stabilizer's members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    values: Vec<Q>,
}

impl Character {
    pub fn values(&self) -> &[Q] {
        &self.values
    }
}

#[derive(Clone, Debug)]
pub struct BundleOrbit {
    pub basepoint: usize,
    pub stabilizer: Subgroup,
    pub characters: Vec<Character>,
}

impl BundleOrbit {
    pub fn rank(&self) -> u32 {
        self.characters.len() as u32
    }

    fn value(&self, c: usize, s: Elem) -> Q {
        let i = self.stabilizer.local(s).expect("stabilizer element").index();
        self.characters[c].values[i]
    }
}

/// Fibre data for one orbit: a basepoint and, per fibre line, character
/// values on some stabilizer elements. The values must determine a
/// homomorphism on the whole stabilizer.
#[derive(Clone, Debug, Default)]
pub struct OrbitSpec {
    pub basepoint: usize,
    pub characters: Vec<Vec<(Elem, Q)>>,
}

#[derive(Clone, Debug)]
pub struct CharacterBundle {
    base: GSet,
    orbits: Vec<BundleOrbit>,
    orbit_of: Vec<usize>,
    /// `transport[x]·basepoint = x`.
    transport: Vec<Elem>,
}

fn stabilizer(z: &GSet, x: usize) -> Subgroup {
    let g = z.group();
    let members = g.elements().filter(|&e| z.act(e, x) == x).map(|e| e.0).collect();
    Subgroup::from_sorted_unchecked(g, members)
}

/// Extends partial values to a homomorphism `S → ℚ/ℤ`.
fn extend_character(s: &Subgroup, given: &[(Elem, Q)]) -> Result<Character> {
    let g = s.parent();
    let mut values: Vec<Option<Q>> = vec![None; s.order()];
    let mut known = Vec::new();
    let set = |values: &mut Vec<Option<Q>>, known: &mut Vec<Elem>, e: Elem, q: Q| -> Result<()> {
        let i = s
            .local(e)
            .ok_or_else(|| Error::BadBundle(format!("element {} is not in the stabilizer", e.index())))?
            .index();
        let q = frac(q);
        match values[i] {
            Some(old) if old != q => Err(Error::BadBundle(format!(
                "character is not a homomorphism: value at element {} is both {old} and {q}",
                e.index()
            ))),
            Some(_) => Ok(()),
            None => {
                values[i] = Some(q);
                known.push(e);
                Ok(())
            }
        }
    };
    set(&mut values, &mut known, Elem::IDENTITY, Q::from_integer(0))?;
    for &(e, q) in given {
        set(&mut values, &mut known, e, q)?;
    }
    let mut i = 0;
    while i < known.len() {
        let a = known[i];
        let qa = values[s.local(a).unwrap().index()].unwrap();
        for j in 0..=i {
            let b = known[j];
            let qb = values[s.local(b).unwrap().index()].unwrap();
            set(&mut values, &mut known, g.mul(a, b), qa + qb)?;
            set(&mut values, &mut known, g.mul(b, a), qa + qb)?;
        }
        i += 1;
    }
    let values: Vec<Q> = values
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| Error::BadBundle("character values do not generate the stabilizer".into()))?;
    for (i, a) in s.members().enumerate() {
        let ord = g.elem_order(a) as i64;
        if !frac(values[i] * Q::from_integer(ord)).is_zero_q() {
            return Err(Error::BadBundle(format!("value at element {} violates its order", a.index())));
        }
    }
    Ok(Character { values })
}

trait IsZeroQ {
    fn is_zero_q(&self) -> bool;
}

impl IsZeroQ for Q {
    fn is_zero_q(&self) -> bool {
        *self.numer() == 0
    }
}

impl CharacterBundle {
    /// Orbits not mentioned in `specs` get rank 0.
    pub fn new(base: &GSet, specs: &[OrbitSpec]) -> Result<CharacterBundle> {
        let quotient = base.quotient();
        let mut given: Vec<Option<&OrbitSpec>> = vec![None; quotient.len()];
        for spec in specs {
            if spec.basepoint >= base.len() {
                return Err(Error::BadBundle(format!("basepoint {} is not a cell", spec.basepoint)));
            }
            let o = quotient.orbit_of(spec.basepoint);
            if given[o].replace(spec).is_some() {
                return Err(Error::BadBundle(format!("orbit of cell {} given twice", spec.basepoint)));
            }
        }
        let g = base.group();
        let mut orbits = Vec::with_capacity(quotient.len());
        for (o, spec) in quotient.orbits.iter().zip(&given) {
            let basepoint = spec.map_or(o.base, |s| s.basepoint);
            let stab = stabilizer(base, basepoint);
            let characters = match spec {
                Some(spec) => spec.characters.iter().map(|c| extend_character(&stab, c)).collect::<Result<_>>()?,
                None => Vec::new(),
            };
            orbits.push(BundleOrbit { basepoint, stabilizer: stab, characters });
        }
        let orbit_of: Vec<usize> = (0..base.len()).map(|x| quotient.orbit_of(x)).collect();
        let transport = (0..base.len())
            .map(|x| {
                let bp = orbits[orbit_of[x]].basepoint;
                g.mul(quotient.transport(x), g.inv(quotient.transport(bp)))
            })
            .collect();
        Ok(CharacterBundle { base: base.clone(), orbits, orbit_of, transport })
    }

    pub fn zero(base: &GSet) -> CharacterBundle {
        CharacterBundle::new(base, &[]).expect("rank-zero bundle")
    }

    /// One orbit, a point, with the given characters of the whole group.
    pub fn on_point(group: &FiniteGroup, characters: Vec<Vec<(Elem, Q)>>) -> Result<CharacterBundle> {
        CharacterBundle::new(&GSet::point(group), &[OrbitSpec { basepoint: 0, characters }])
    }

    /// The sign-like character of `C₂` (value 1/2 at the generator) on a
    /// point.
    pub fn sign_on_point(c2: &FiniteGroup) -> Result<CharacterBundle> {
        let s = c2.elements().find(|&e| e != Elem::IDENTITY).ok_or_else(|| Error::BadBundle("trivial group".into()))?;
        CharacterBundle::on_point(c2, vec![vec![(s, Q::new(1, 2))]])
    }

    pub fn orbits(&self) -> &[BundleOrbit] {
        &self.orbits
    }

    pub fn orbit_of(&self, x: usize) -> &BundleOrbit {
        &self.orbits[self.orbit_of[x]]
    }

    /// Per fibre line, the phase by which `g` carries the fibre at `x` to
    /// the fibre at `g·x`, in the trivialization by transport from the
    /// basepoint.
    pub fn line_values(&self, x: usize, g: Elem) -> Vec<Q> {
        let grp = self.base.group();
        let gx = self.base.act(g, x);
        let s = grp.mul(grp.mul(grp.inv(self.transport[gx]), g), self.transport[x]);
        let o = self.orbit_of(x);
        (0..o.characters.len()).map(|c| o.value(c, s)).collect()
    }

    /// Restriction to an invariant subset, cells renumbered in the given
    /// (sorted) order.
    pub fn restrict(&self, cells: &[usize]) -> Result<CharacterBundle> {
        let sub = self.base.invariant_subset(cells)?;
        let mut specs = Vec::new();
        let mut done = vec![false; self.orbits.len()];
        for (i, &c) in cells.iter().enumerate() {
            let o = self.orbit_of[c];
            if !done[o] {
                done[o] = true;
                let orbit = &self.orbits[o];
                let stab = stabilizer(&self.base, c);
                let characters = (0..orbit.characters.len())
                    .map(|j| stab.members().map(|s| (s, self.line_values(c, s)[j])).collect())
                    .collect();
                specs.push(OrbitSpec { basepoint: i, characters });
            }
        }
        CharacterBundle::new(&sub, &specs)
    }

    /// `Z₍d₎ = {x : rank E_x = d}` with the restricted bundles.
    pub fn rank_stratify(&self) -> Result<BTreeMap<u32, CharacterBundle>> {
        let mut cells: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for x in 0..self.base.len() {
            cells.entry(self.rank(x)).or_default().push(x);
        }
        cells.into_iter().map(|(d, c)| Ok((d, self.restrict(&c)?))).collect()
    }

    /// The bundle induced along an injective homomorphism.
    pub fn induced(&self, emb: &Homomorphism) -> Result<CharacterBundle> {
        let base = self.base.induced(emb)?;
        // cells (identity coset, x) keep their index
        let specs: Vec<OrbitSpec> = self
            .orbits
            .iter()
            .map(|o| OrbitSpec {
                basepoint: o.basepoint,
                characters: (0..o.characters.len())
                    .map(|c| o.stabilizer.members().map(|s| (emb.apply(s), o.value(c, s))).collect())
                    .collect(),
            })
            .collect();
        CharacterBundle::new(&base, &specs)
    }

    /// Both bundles over one acting group, side by side.
    pub fn disjoint_union(&self, other: &CharacterBundle) -> Result<CharacterBundle> {
        let base = self.base.disjoint_union(&other.base)?;
        let n = self.base.len();
        let spec = |o: &BundleOrbit, shift: usize| OrbitSpec {
            basepoint: o.basepoint + shift,
            characters: (0..o.characters.len())
                .map(|c| o.stabilizer.members().map(|s| (s, o.value(c, s))).collect())
                .collect(),
        };
        let specs: Vec<OrbitSpec> =
            self.orbits.iter().map(|o| spec(o, 0)).chain(other.orbits.iter().map(|o| spec(o, n))).collect();
        CharacterBundle::new(&base, &specs)
    }

    /// The external product over `G × G'`, fibres added.
    pub fn product(&self, other: &CharacterBundle) -> Result<CharacterBundle> {
        let p = direct_product(self.base.group(), other.base.group())?;
        let base = self.base.product_over(&other.base, &p)?;
        let m = other.base.len();
        let mut specs = Vec::new();
        for o in base.quotient().orbits {
            let (x, y) = (o.base / m, o.base % m);
            let parts: Vec<(Elem, Elem, Elem)> = o
                .stabilizer
                .members()
                .map(|e| {
                    let (s, t) = p.product_parts(e).expect("product element");
                    (e, s, t)
                })
                .collect();
            let mut characters = Vec::new();
            for c in 0..self.rank(x) as usize {
                characters.push(parts.iter().map(|&(e, s, _)| (e, self.line_values(x, s)[c])).collect());
            }
            for c in 0..other.rank(y) as usize {
                characters.push(parts.iter().map(|&(e, _, t)| (e, other.line_values(y, t)[c])).collect());
            }
            specs.push(OrbitSpec { basepoint: o.base, characters });
        }
        CharacterBundle::new(&base, &specs)
    }
}

impl AgeData for CharacterBundle {
    fn base(&self) -> &GSet {
        &self.base
    }

    fn rank(&self, x: usize) -> u32 {
        self.orbit_of(x).rank()
    }

    fn phases_at(&self, x: usize, g: Elem) -> Vec<Q> {
        let mut v = self.line_values(x, g);
        v.sort();
        v
    }
}

/// `(Zⁿ, Eⁿ, G_n)`, or its restriction to `Zⁿ ∖ Δ_G`.
#[derive(Clone, Debug)]
pub struct WreathPowerBundle {
    base: CharacterBundle,
    n: usize,
    set: GSet,
    tuples: Vec<Vec<u32>>,
}

impl WreathPowerBundle {
    pub fn new(base: &CharacterBundle, n: usize) -> Result<WreathPowerBundle> {
        WreathPowerBundle::build(base, n, false)
    }

    /// Over tuples whose coordinates lie in pairwise distinct orbits.
    pub fn distinct(base: &CharacterBundle, n: usize) -> Result<WreathPowerBundle> {
        WreathPowerBundle::build(base, n, true)
    }

    fn build(base: &CharacterBundle, n: usize, distinct: bool) -> Result<WreathPowerBundle> {
        let z = &base.base;
        let w = crate::grp::wreath_product(z.group(), n)?;
        let mut tuples = z.all_tuples(n)?;
        if distinct {
            tuples.retain(|t| {
                let mut seen = std::collections::HashSet::new();
                t.iter().all(|&x| seen.insert(base.orbit_of[x as usize]))
            });
        }
        let set = z.tuples_over_wreath(n, &w, tuples.clone())?;
        Ok(WreathPowerBundle { base: base.clone(), n, set, tuples })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn base_bundle(&self) -> &CharacterBundle {
        &self.base
    }

    pub fn tuple(&self, x: usize) -> &[u32] {
        &self.tuples[x]
    }

    /// Cycles of `σ`, each listed as `j, σ(j), σ²(j), …` from its least
    /// index.
    fn cycles(sigma: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; sigma.len()];
        let mut out = Vec::new();
        for j in 0..sigma.len() {
            if !seen[j] {
                let mut c = vec![j];
                seen[j] = true;
                let mut i = sigma[j];
                while i != j {
                    seen[i] = true;
                    c.push(i);
                    i = sigma[i];
                }
                out.push(c);
            }
        }
        out
    }
}

/// The age of `((g_i), σ)` at a fixed tuple: over the cycles `c` of `σ` of
/// length `r`, `age(x_c, h_c) + rank(x_c)·(r−1)/2` with
/// `h_c = g_j·g_{σ^{r−1}j}⋯g_{σj}` fixing `x_j`.
pub fn age_wreath(b: &WreathPowerBundle, x: usize, e: Elem) -> Result<Q> {
    b.age(x, e)
}

impl AgeData for WreathPowerBundle {
    fn base(&self) -> &GSet {
        &self.set
    }

    fn rank(&self, x: usize) -> u32 {
        self.tuples[x].iter().map(|&y| self.base.rank(y as usize)).sum()
    }

    fn phases_at(&self, x: usize, e: Elem) -> Vec<Q> {
        let w = self.set.group();
        let g0 = self.base.base.group();
        let (g, sigma) = w.wreath_parts(e).expect("wreath element");
        let t = &self.tuples[x];
        let mut out = Vec::new();
        for c in WreathPowerBundle::cycles(&sigma) {
            let r = c.len();
            let mut h = g[c[0]];
            for &i in c[1..].iter().rev() {
                h = g0.mul(h, g[i]);
            }
            let xj = t[c[0]] as usize;
            for theta in self.base.phases_at(xj, h) {
                out.extend((0..r as i64).map(|m| (theta + Q::from_integer(m)) / Q::from_integer(r as i64)));
            }
        }
        out.sort();
        out
    }
}

/// `Z^⟨g⟩` split by the age of `g`, each stratum as a `C_G(g)`-set.
pub fn age_stratify(b: &impl AgeData, g: Elem) -> Result<BTreeMap<Q, GSet>> {
    let z = b.base();
    let cent = crate::grp::centralizer(z.group(), g);
    let mut strata: BTreeMap<Q, Vec<usize>> = BTreeMap::new();
    for x in z.fixed_cells(&[g]) {
        strata.entry(b.age(x, g)?).or_default().push(x);
    }
    strata.into_iter().map(|(q, cells)| Ok((q, z.sub_gset(&cells, &cent)?))).collect()
}

/// Largest subgroup order whose member list is used as a memo key.
const MEMO_ORDER: usize = 2048;

struct GeneralizedChi<'a, A: ?Sized> {
    b: &'a A,
    phi: &'a [Q],
    memo: HashMap<(Vec<usize>, Vec<u32>, usize), LPoly>,
}

impl<A: AgeData + ?Sized> GeneralizedChi<'_, A> {
    fn run(&mut self, cells: &[usize], sub: &Subgroup, k: usize) -> LPoly {
        if cells.is_empty() {
            return LPoly::zero();
        }
        let z = self.b.base();
        if k == 0 {
            let mut out = LPoly::zero();
            for o in z.orbits_within(cells, sub) {
                out = out.add(&LPoly::l_pow(Q::from_integer(z.dim(o[0]) as i64)));
            }
            return out;
        }
        let key = (sub.order() <= MEMO_ORDER).then(|| (cells.to_vec(), sub.members_raw().to_vec(), k));
        if let Some(v) = key.as_ref().and_then(|key| self.memo.get(key)) {
            return v.clone();
        }
        let mut total = LPoly::zero();
        for class in sub.conjugacy_classes() {
            let g = class.representative;
            let mut strata: BTreeMap<Q, Vec<usize>> = BTreeMap::new();
            for &c in cells {
                if z.act(g, c) == c {
                    strata.entry(self.b.phases_at(c, g).into_iter().sum()).or_default().push(c);
                }
            }
            if strata.is_empty() {
                continue;
            }
            let cent = sub.centralizer(g);
            for (q, stratum) in strata {
                let inner = self.run(&stratum, &cent, k - 1);
                total = total.add(&inner.mul(&LPoly::l_pow(self.phi[k - 1] * q)));
            }
        }
        if let Some(key) = key {
            self.memo.insert(key, total.clone());
        }
        total
    }
}

/// `[Z,E,G]^k_φ`: `Σ_{[g]} Σ_q [Z^⟨g⟩_q, E|, C_G(g)]^{k−1}·L^{φ_k·q}`, with
/// `[Z,E,G]^0 = [Z/G]`.
pub fn generalized_chi(b: &(impl AgeData + ?Sized), k: usize, phi: &[Q]) -> Result<LPoly> {
    if phi.len() < k {
        return Err(Error::WeightsTooShort { len: phi.len(), k });
    }
    let z = b.base();
    let cells: Vec<usize> = (0..z.len()).collect();
    Ok(GeneralizedChi { b, phi, memo: HashMap::new() }.run(&cells, &Subgroup::whole(z.group()), k))
}

/// `Φ_k(r) = φ₁(r₁−1) + φ₂r₁(r₂−1) + … + φ_k r₁⋯r_{k−1}(r_k−1)`.
pub fn phi_k(r: &[usize], phi: &[Q]) -> Result<Q> {
    if phi.len() < r.len() {
        return Err(Error::LengthMismatch { expected: r.len(), got: phi.len() });
    }
    let mut prefix = 1i64;
    let mut out = Q::from_integer(0);
    for (&ri, &p) in r.iter().zip(phi) {
        out += p * Q::from_integer(prefix * (ri as i64 - 1));
        prefix *= ri as i64;
    }
    Ok(out)
}

/// Both sides of the Macdonald-type identity for wreath powers of a bundle.
#[derive(Clone, Debug)]
pub struct WreathBundleReport {
    pub k: usize,
    pub phi: Vec<Q>,
    /// `[Z₍d₎, E|, G]^k` per fibre rank `d`.
    pub exponents: BTreeMap<u32, LPoly>,
    pub lhs: Vec<LPoly>,
    pub rhs: Vec<LPoly>,
}

impl WreathBundleReport {
    pub fn passed(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `∏_{r₁⋯r_k ≤ n} (1 − L^{Φ_k(r)d/2} t^{r₁⋯r_k})^{r₂r₃²⋯r_k^{k−1}}`.
pub fn wreath_bundle_factor(k: usize, phi: &[Q], d: u32, n: usize) -> Result<Series<LPoly>> {
    let tuples = if k == 0 { vec![Vec::new()] } else { bounded_product_tuples(k, n) };
    let mut p = Series::one(n);
    for r in tuples {
        let deg = if r.is_empty() { 1 } else { r.iter().product() };
        let q = phi_k(&r, phi)? * Q::new(d as i64, 2);
        let factor = Series::one(n).sub(&Series::monomial(LPoly::l_pow(q), deg, n))?;
        p = p.mul(&factor.pow_int(tuple_weight(&r) as i64)?)?;
    }
    Ok(p)
}

pub fn verify_wreath_bundle_theorem(b: &CharacterBundle, k: usize, phi: &[Q], n: usize) -> Result<WreathBundleReport> {
    if phi.len() < k {
        return Err(Error::WeightsTooShort { len: phi.len(), k });
    }
    let mut lhs = vec![LPoly::one()];
    for m in 1..=n {
        lhs.push(generalized_chi(&WreathPowerBundle::new(b, m)?, k, phi)?);
    }
    let mut rhs = Series::one(n);
    let mut exponents = BTreeMap::new();
    for (d, stratum) in b.rank_stratify()? {
        let e = generalized_chi(&stratum, k, phi)?;
        let factor = wreath_bundle_factor(k, phi, d, n)?;
        rhs = rhs.mul(&power_via_lambda(&factor, &e.neg(), &ZetaL)?)?;
        exponents.insert(d, e);
    }
    Ok(WreathBundleReport { k, phi: phi.to_vec(), exponents, lhs, rhs: rhs.into_coeffs() })
}

/// `generalized_chi` of a rank-zero bundle as an integer, for comparison
/// with `χ^(k)`.
pub fn degree_zero(p: &LPoly) -> Option<BigInt> {
    p.as_integer()
}

#[cfg(test)]
mod tests;
