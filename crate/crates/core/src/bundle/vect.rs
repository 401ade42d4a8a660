//! Classes of G-sets with equivariant bundles up to induction.
//!
//! An orbit is recorded by its stabilizer's class, its dimension, and the
//! function sending each element of the representative group to its sorted
//! eigenphases on the fibre. That function determines the fibre character,
//! hence the representation; it is canonicalized over automorphisms of the
//! representative.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{generalized_chi, AgeData, CharacterBundle, WreathPowerBundle};
use crate::error::Result;
use crate::grp::{automorphisms, direct_product, Elem, FiniteGroup};
use crate::gset::GSet;
use crate::k0::{class_with_iso, FgrClass, GroupClassId};
use crate::lpoly::{LPoly, Q};
use crate::series::{Ring, Series};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VectKey {
    pub group: GroupClassId,
    pub dim: u32,
    /// Sorted eigenphases per element of the representative group.
    pub phases: Vec<Vec<Q>>,
}

impl VectKey {
    pub fn rank(&self) -> usize {
        self.phases.first().map_or(0, Vec::len)
    }
}

type AutTable = Arc<Vec<Vec<u32>>>;

fn automorphism_table(id: GroupClassId) -> Result<AutTable> {
    static CACHE: OnceLock<Mutex<HashMap<GroupClassId, AutTable>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&id) {
        return Ok(t.clone());
    }
    let rep = id.representative();
    let perms: Vec<Vec<u32>> = automorphisms(&rep)?
        .iter()
        .map(|a| rep.elements().map(|e| a.apply(e).0).collect())
        .collect();
    let perms = Arc::new(perms);
    cache.lock().unwrap().insert(id, perms.clone());
    Ok(perms)
}

/// Builds the canonical key of a point with stabilizer `g` whose element
/// `e` has eigenphases `phases(e)`.
pub(crate) fn canonical_key(g: &FiniteGroup, dim: u32, phases: impl Fn(Elem) -> Vec<Q>) -> Result<VectKey> {
    let (id, iso) = class_with_iso(g)?;
    let inv = iso.inverse().expect("isomorphism onto the representative");
    let rep = id.representative();
    let on_rep: Vec<Vec<Q>> = rep.elements().map(|r| phases(inv.apply(r))).collect();
    let mut best: Option<Vec<Vec<Q>>> = None;
    if on_rep.iter().any(|p| !p.is_empty()) {
        for a in automorphism_table(id)?.iter() {
            let moved: Vec<Vec<Q>> = a.iter().map(|&i| on_rep[i as usize].clone()).collect();
            if best.as_ref().is_none_or(|b| moved < *b) {
                best = Some(moved);
            }
        }
    }
    Ok(VectKey { group: id, dim, phases: best.unwrap_or(on_rep) })
}

/// `(pt, V, R)` with `R` the representative group of a key.
#[derive(Clone, Debug)]
pub struct PointPhases {
    point: GSet,
    key: VectKey,
}

impl PointPhases {
    pub fn new(key: &VectKey) -> PointPhases {
        PointPhases { point: GSet::point_with_dim(&key.group.representative(), key.dim), key: key.clone() }
    }
}

impl AgeData for PointPhases {
    fn base(&self) -> &GSet {
        &self.point
    }
    fn rank(&self, _: usize) -> u32 {
        self.key.rank() as u32
    }
    fn phases_at(&self, _: usize, g: Elem) -> Vec<Q> {
        self.key.phases[g.index()].clone()
    }
}

/// An element of the modeled Grothendieck ring of G-sets with equivariant
/// bundles.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VectClass {
    terms: BTreeMap<VectKey, BigInt>,
}

impl VectClass {
    pub fn zero() -> VectClass {
        VectClass::default()
    }

    pub fn one() -> VectClass {
        VectClass::term(VectKey { group: GroupClassId::TRIVIAL, dim: 0, phases: vec![Vec::new()] }, 1)
    }

    pub fn term(key: VectKey, c: impl Into<BigInt>) -> VectClass {
        let mut out = VectClass::zero();
        out.add_term(key, c.into());
        out
    }

    fn add_term(&mut self, key: VectKey, c: BigInt) {
        let slot = self.terms.entry(key).or_default();
        *slot += c;
        if Zero::is_zero(slot) {
            self.terms.retain(|_, v| !Zero::is_zero(v));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&VectKey, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn add(&self, other: &VectClass) -> VectClass {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> VectClass {
        VectClass { terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &VectClass) -> VectClass {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> VectClass {
        if Zero::is_zero(c) {
            return VectClass::zero();
        }
        VectClass { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    fn key_product(a: &VectKey, b: &VectKey) -> Result<VectKey> {
        let (ra, rb) = (a.group.representative(), b.group.representative());
        let p = direct_product(&ra, &rb)?;
        canonical_key(&p, a.dim + b.dim, |e| {
            let (x, y) = p.product_parts(e).expect("product element");
            let mut v: Vec<Q> = a.phases[x.index()].iter().chain(&b.phases[y.index()]).copied().collect();
            v.sort();
            v
        })
    }

    /// Products of stabilizers, dimensions added, fibres summed.
    pub fn try_mul(&self, other: &VectClass) -> Result<VectClass> {
        let mut out = VectClass::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                out.add_term(VectClass::key_product(ka, kb)?, ca * cb);
            }
        }
        Ok(out)
    }

    /// Forgets the bundle.
    pub fn forget(&self) -> FgrClass {
        let mut out = FgrClass::zero();
        for (k, c) in &self.terms {
            out = out.add(&FgrClass::term(k.group, k.dim, c.clone()));
        }
        out
    }

    /// The rank-zero bundle over each term.
    pub fn from_fgr(x: &FgrClass) -> VectClass {
        let mut out = VectClass::zero();
        for (g, d, c) in x.terms() {
            let phases = vec![Vec::new(); g.order()];
            out.add_term(VectKey { group: g, dim: d, phases }, c.clone());
        }
        out
    }

    /// `[·]^k_φ`, evaluated termwise on representatives.
    pub fn generalized_chi(&self, k: usize, phi: &[Q]) -> Result<LPoly> {
        let mut out = LPoly::zero();
        for (key, c) in &self.terms {
            out = out.add(&generalized_chi(&PointPhases::new(key), k, phi)?.scale(c));
        }
        Ok(out)
    }
}

impl Ring for VectClass {
    fn zero() -> Self {
        VectClass::zero()
    }
    fn one() -> Self {
        VectClass::one()
    }
    fn add(&self, other: &Self) -> Self {
        VectClass::add(self, other)
    }
    fn neg(&self) -> Self {
        VectClass::neg(self)
    }
    /// Panics when a product group exceeds the isomorphism bound; use
    /// [`VectClass::try_mul`] to get an error instead.
    fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("product within the isomorphism bound")
    }
    fn is_zero(&self) -> bool {
        VectClass::is_zero(self)
    }
    fn scale(&self, n: &BigInt) -> Self {
        VectClass::scale(self, n)
    }
}

impl fmt::Debug for VectClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// E.g. `2(C2,0)[[] [1/2]]`: eigenphases per element of the representative.
impl fmt::Display for VectClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mag != BigInt::from(1) {
                write!(f, "{mag}")?;
            }
            write!(f, "({},{})", k.group, k.dim)?;
            if k.rank() > 0 {
                let parts: Vec<String> = k
                    .phases
                    .iter()
                    .map(|p| format!("[{}]", p.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",")))
                    .collect();
                write!(f, "[{}]", parts.join(" "))?;
            }
        }
        Ok(())
    }
}

pub fn class_of_vect(b: &(impl AgeData + ?Sized)) -> Result<VectClass> {
    let mut out = VectClass::zero();
    for o in b.base().quotient().orbits {
        let g = o.stabilizer.as_group();
        let members = o.stabilizer.members_raw();
        let key = canonical_key(&g, o.dim, |e| b.phases_at(o.base, Elem(members[e.index()])))?;
        out.add_term(key, BigInt::from(1));
    }
    Ok(out)
}

/// `1 + Σ [(Zⁿ, Eⁿ, G_n)] tⁿ`.
pub fn zeta_vect_series(b: &CharacterBundle, n: usize) -> Result<Series<VectClass>> {
    let mut coeffs = vec![VectClass::one()];
    for m in 1..=n {
        coeffs.push(class_of_vect(&WreathPowerBundle::new(b, m)?)?);
    }
    Ok(Series::new(coeffs, n))
}

/// `1 + Σ [(Zⁿ∖Δ_G, Eⁿ|, G_n)] tⁿ`.
pub fn lambda_vect_series(b: &CharacterBundle, n: usize) -> Result<Series<VectClass>> {
    let orbits = b.orbits().len();
    let mut coeffs = vec![VectClass::one()];
    for m in 1..=n.min(orbits) {
        coeffs.push(class_of_vect(&WreathPowerBundle::distinct(b, m)?)?);
    }
    Ok(Series::new(coeffs, n))
}
