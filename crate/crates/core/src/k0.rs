//! Normal forms for classes of G-sets modulo induction: integer
//! combinations of `(isomorphism class of a stabilizer, dimension)`.
//!
//! A transitive G-set with stabilizer `S` is induced from a point with `S`
//! acting, so its class is that of `(pt, S)`; a cell of dimension `d`
//! contributes `𝕃^d`. Equal normal forms therefore mean equal classes.
//! Distinct normal forms are only known to differ inside this model.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, MutexGuard, OnceLock};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::grp::{are_isomorphic, count_commuting_tuples, direct_product, named_group, FiniteGroup, GroupInvariants, Homomorphism};
use crate::gset::GSet;
use crate::lpoly::{LPoly, Q};
use crate::series::Ring;

/// Handle to an isomorphism class of finite groups. Handles are assigned in
/// registration order; the named groups `trivial, C2, C3, C4, V4, S3, D4`
/// always get handles `0..7` in that order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupClassId(pub(crate) u32);

pub const PRESET_NAMES: [&str; 7] = ["trivial", "C2", "C3", "C4", "V4", "S3", "D4"];

impl GroupClassId {
    pub const TRIVIAL: GroupClassId = GroupClassId(0);

    pub fn index(self) -> u32 {
        self.0
    }

    /// Registers `g` if no isomorphic group is known yet.
    pub fn of(g: &FiniteGroup) -> Result<GroupClassId> {
        Ok(class_with_iso(g)?.0)
    }

    pub fn representative(self) -> FiniteGroup {
        registry().entries[self.0 as usize].group.clone()
    }

    pub fn order(self) -> usize {
        registry().entries[self.0 as usize].group.order()
    }

    pub fn name(self) -> Option<&'static str> {
        PRESET_NAMES.get(self.0 as usize).copied()
    }

    /// Handle with a given index, if registered.
    pub fn from_index(index: u32) -> Result<GroupClassId> {
        if (index as usize) < registry().entries.len() {
            Ok(GroupClassId(index))
        } else {
            Err(Error::UnknownClass(index))
        }
    }
}

impl fmt::Display for GroupClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.name() {
            Some(n) => f.write_str(n),
            None => write!(f, "G{}", self.0),
        }
    }
}

struct Entry {
    group: FiniteGroup,
}

#[derive(Default)]
struct Registry {
    entries: Vec<Entry>,
    by_invariants: HashMap<GroupInvariants, Vec<u32>>,
    /// Multiplication table → (class, isomorphism onto the representative).
    exact: HashMap<Vec<u32>, (u32, Vec<u32>)>,
    products: HashMap<(u32, u32), u32>,
    chi: HashMap<(u32, usize), BigInt>,
}

/// Groups up to this order are cached by their exact multiplication table.
const EXACT_CACHE_ORDER: usize = 128;

fn registry() -> MutexGuard<'static, Registry> {
    static REGISTRY: OnceLock<Mutex<Registry>> = OnceLock::new();
    let m = REGISTRY.get_or_init(|| {
        let mut r = Registry::default();
        for name in PRESET_NAMES {
            let g = named_group(name).expect("preset group");
            r.lookup_or_insert(&g).expect("preset groups are small");
        }
        Mutex::new(r)
    });
    m.lock().unwrap_or_else(|e| e.into_inner())
}

fn flat_table(g: &FiniteGroup) -> Vec<u32> {
    g.multiplication_table().into_iter().flatten().map(|x| x as u32).collect()
}

impl Registry {
    fn lookup_or_insert(&mut self, g: &FiniteGroup) -> Result<(GroupClassId, Vec<u32>)> {
        let key = (g.order() <= EXACT_CACHE_ORDER).then(|| flat_table(g));
        if let Some((id, map)) = key.as_ref().and_then(|k| self.exact.get(k)) {
            return Ok((GroupClassId(*id), map.clone()));
        }
        let inv = GroupInvariants::of(g);
        let mut found = None;
        for &id in self.by_invariants.get(&inv).map(Vec::as_slice).unwrap_or(&[]) {
            if let Some(iso) = are_isomorphic(g, &self.entries[id as usize].group)? {
                found = Some((id, g.elements().map(|e| iso.apply(e).index() as u32).collect::<Vec<_>>()));
                break;
            }
        }
        let (id, map) = match found {
            Some(f) => f,
            None => {
                let id = self.entries.len() as u32;
                self.entries.push(Entry { group: g.clone() });
                self.by_invariants.entry(inv).or_default().push(id);
                (id, (0..g.order() as u32).collect())
            }
        };
        if let Some(k) = key {
            self.exact.insert(k, (id, map.clone()));
        }
        Ok((GroupClassId(id), map))
    }
}

/// The class of `g` and an isomorphism from `g` onto its representative.
pub fn class_with_iso(g: &FiniteGroup) -> Result<(GroupClassId, Homomorphism)> {
    let (id, map) = registry().lookup_or_insert(g)?;
    let rep = id.representative();
    let images: Vec<_> = map.iter().map(|&x| rep.elem(x as usize).expect("registry map")).collect();
    let iso = Homomorphism::new(g, &rep, &images)?;
    Ok((id, iso))
}

/// Class of the direct product of two representatives.
pub fn product_class(a: GroupClassId, b: GroupClassId) -> Result<GroupClassId> {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    if a == GroupClassId::TRIVIAL {
        return Ok(b);
    }
    if let Some(&id) = registry().products.get(&(a.0, b.0)) {
        return Ok(GroupClassId(id));
    }
    let p = direct_product(&a.representative(), &b.representative())?;
    let id = GroupClassId::of(&p)?;
    registry().products.insert((a.0, b.0), id.0);
    Ok(id)
}

/// Number of registered classes.
pub fn registry_len() -> usize {
    registry().entries.len()
}

/// `χ^(k)(pt, S) = #{pairwise commuting (k+1)-tuples in S} / |S|`.
pub fn chi_k_point(id: GroupClassId, k: usize) -> BigInt {
    if let Some(v) = registry().chi.get(&(id.0, k)) {
        return v.clone();
    }
    let g = id.representative();
    let count = count_commuting_tuples(&g, k + 1);
    debug_assert_eq!(count % g.order() as u128, 0);
    let v = BigInt::from(count / g.order() as u128);
    registry().chi.insert((id.0, k), v.clone());
    v
}

/// An element of the modeled Grothendieck ring.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FgrClass {
    terms: BTreeMap<(GroupClassId, u32), BigInt>,
}

impl FgrClass {
    pub fn zero() -> FgrClass {
        FgrClass::default()
    }

    /// `[(pt, {e})]`.
    pub fn one() -> FgrClass {
        FgrClass::term(GroupClassId::TRIVIAL, 0, 1)
    }

    /// `c·[(𝕃^dim, S)]` with `S` acting trivially.
    pub fn term(group: GroupClassId, dim: u32, c: impl Into<BigInt>) -> FgrClass {
        let mut out = FgrClass::zero();
        out.add_term(group, dim, c.into());
        out
    }

    /// `[(pt, G)]`.
    pub fn point(g: &FiniteGroup) -> Result<FgrClass> {
        Ok(FgrClass::term(GroupClassId::of(g)?, 0, 1))
    }

    fn add_term(&mut self, group: GroupClassId, dim: u32, c: BigInt) {
        let e = self.terms.entry((group, dim)).or_default();
        *e += c;
        if Zero::is_zero(e) {
            self.terms.remove(&(group, dim));
        }
    }

    /// `((class, dim), coefficient)` in increasing key order.
    pub fn terms(&self) -> impl Iterator<Item = (GroupClassId, u32, &BigInt)> {
        self.terms.iter().map(|((g, d), c)| (*g, *d, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// All coefficients nonnegative: the class of an honest G-set.
    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn add(&self, other: &FgrClass) -> FgrClass {
        let mut out = self.clone();
        for (&(g, d), c) in &other.terms {
            out.add_term(g, d, c.clone());
        }
        out
    }

    pub fn neg(&self) -> FgrClass {
        FgrClass { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    pub fn sub(&self, other: &FgrClass) -> FgrClass {
        self.add(&other.neg())
    }

    pub fn scale(&self, n: &BigInt) -> FgrClass {
        if Zero::is_zero(n) {
            return FgrClass::zero();
        }
        FgrClass { terms: self.terms.iter().map(|(k, c)| (*k, c * n)).collect() }
    }

    /// `(S₁,d₁)·(S₂,d₂) = (S₁×S₂, d₁+d₂)`, extended bilinearly.
    pub fn try_mul(&self, other: &FgrClass) -> Result<FgrClass> {
        let mut out = FgrClass::zero();
        for (&(g1, d1), c1) in &self.terms {
            for (&(g2, d2), c2) in &other.terms {
                out.add_term(product_class(g1, g2)?, d1 + d2, c1 * c2);
            }
        }
        Ok(out)
    }

    /// The map `p`: `(S, d) ↦ 𝕃^d`, the class of the quotient.
    pub fn map_p(&self) -> LPoly {
        LPoly::from_terms(self.terms.iter().map(|((_, d), c)| (Q::from_integer(*d as i64), c.clone())))
    }

    /// The map `i`: a plain class `Σ c_d 𝕃^d` with the trivial group acting.
    pub fn map_i(plain: &LPoly) -> Result<FgrClass> {
        let mut out = FgrClass::zero();
        for (q, c) in plain.terms() {
            if !q.is_integer() || q.is_negative() {
                return Err(Error::descriptor("class", format!("exponent {q} is not a dimension")));
            }
            out.add_term(GroupClassId::TRIVIAL, *q.numer() as u32, c.clone());
        }
        Ok(out)
    }

    /// `Σ c·χ^(k)(pt, S)`; each cell has Euler characteristic 1.
    pub fn chi_k(&self, k: usize) -> BigInt {
        self.terms.iter().map(|((g, _), c)| c * chi_k_point(*g, k)).sum()
    }
}

impl fmt::Debug for FgrClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// E.g. `2(C2,0) - (trivial,1)`.
impl fmt::Display for FgrClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((g, d), c)) in self.terms.iter().enumerate() {
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
            write!(f, "({g},{d})")?;
        }
        Ok(())
    }
}

impl Ring for FgrClass {
    fn zero() -> Self {
        FgrClass::zero()
    }
    fn one() -> Self {
        FgrClass::one()
    }
    fn add(&self, other: &Self) -> Self {
        FgrClass::add(self, other)
    }
    fn neg(&self) -> Self {
        FgrClass::neg(self)
    }
    /// Panics if a product group falls outside the isomorphism bound; use
    /// [`FgrClass::try_mul`] to handle that case.
    fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("product of classes outside the isomorphism bound")
    }
    fn is_zero(&self) -> bool {
        FgrClass::is_zero(self)
    }
    fn from_int(n: &BigInt) -> Self {
        FgrClass::one().scale(n)
    }
    fn scale(&self, n: &BigInt) -> Self {
        FgrClass::scale(self, n)
    }
}

/// `Σ_orbits (class of the stabilizer, dim)`.
pub fn class_of(x: &GSet) -> Result<FgrClass> {
    let mut out = FgrClass::zero();
    for o in x.quotient().orbits {
        out.add_term(GroupClassId::of(&o.stabilizer.as_group())?, o.dim, BigInt::from(1));
    }
    Ok(out)
}

/// Symmetric-group degree of `g` if it is realized as the full symmetric
/// group on `0..m`.
fn symmetric_degree(g: &FiniteGroup) -> Option<usize> {
    let perm = g.as_permutation(g.identity())?;
    let m = perm.len();
    let full: usize = (1..=m).product();
    (g.order() == full).then_some(m)
}

/// `ind_{S_m×S_n}^{S_{m+n}} (X × Y)`, with `S_m` on the first `m` points and
/// `S_n` on the last `n`.
pub fn gp_box(x: &GSet, y: &GSet) -> Result<GSet> {
    let (m, n) = match (symmetric_degree(x.group()), symmetric_degree(y.group())) {
        (Some(m), Some(n)) => (m, n),
        _ => return Err(Error::GroupMismatch("both acting groups must be full symmetric groups".into())),
    };
    let big = named_group(&format!("S{}", m + n))?;
    let p = direct_product(x.group(), y.group())?;
    let images = p
        .elements()
        .map(|e| {
            let (a, b) = p.product_parts(e).expect("product element");
            let mut perm = x.group().as_permutation(a).expect("symmetric");
            perm.extend(y.group().as_permutation(b).expect("symmetric").into_iter().map(|v| v + m));
            big.find_permutation(&perm).expect("S_{m+n} contains every permutation")
        })
        .collect::<Vec<_>>();
    let emb = Homomorphism::new(&p, &big, &images)?;
    x.product_over(y, &p)?.induced(&emb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{find_embedding, named_group, subgroup_generated, wreath_product};

    fn g(name: &str) -> FiniteGroup {
        named_group(name).unwrap()
    }

    fn id(name: &str) -> GroupClassId {
        GroupClassId::of(&g(name)).unwrap()
    }

    #[test]
    fn presets_have_fixed_handles() {
        for (i, name) in PRESET_NAMES.iter().enumerate() {
            assert_eq!(id(name).index(), i as u32);
            assert_eq!(id(name).to_string(), *name);
        }
        let w = wreath_product(&g("C2"), 2).unwrap();
        assert_eq!(GroupClassId::of(&w).unwrap(), id("D4"));
    }

    #[test]
    fn coset_space_has_the_class_of_a_point() {
        let s3 = g("S3");
        let t = s3.find_permutation(&[1, 0, 2]).unwrap();
        let x = GSet::cosets(&s3, &subgroup_generated(&s3, &[t])).unwrap();
        assert_eq!(class_of(&x).unwrap(), class_of(&GSet::point(&g("C2"))).unwrap());
        assert_eq!(class_of(&GSet::regular(&s3)).unwrap(), FgrClass::one());
        let c2 = g("C2");
        assert_eq!(class_of(&GSet::trivial(&c2, vec![0, 0])).unwrap(), FgrClass::term(id("C2"), 0, 2));
        assert_ne!(FgrClass::term(id("C2"), 0, 1), FgrClass::term(GroupClassId::TRIVIAL, 0, 2));
    }

    #[test]
    fn multiplication_of_terms() {
        let c2 = FgrClass::term(id("C2"), 0, 1);
        let v4 = c2.try_mul(&c2).unwrap();
        assert_eq!(v4, FgrClass::term(id("V4"), 0, 1));
        assert_ne!(v4, FgrClass::term(id("C4"), 0, 1));
        let l1 = FgrClass::term(GroupClassId::TRIVIAL, 1, 1);
        let l2 = FgrClass::term(GroupClassId::TRIVIAL, 2, 1);
        assert_eq!(l1.try_mul(&l2).unwrap(), FgrClass::term(GroupClassId::TRIVIAL, 3, 1));
        assert_eq!(c2.try_mul(&FgrClass::one()).unwrap(), c2);
    }

    #[test]
    fn maps_between_plain_and_equivariant_classes() {
        assert_eq!(FgrClass::term(id("C2"), 0, 1).map_p(), LPoly::one());
        assert_eq!(class_of(&GSet::regular(&g("S3"))).unwrap().map_p(), LPoly::one());
        let x = LPoly::constant(3).add(&LPoly::term(-2, Q::from_integer(2)));
        assert_eq!(FgrClass::map_i(&x).unwrap().map_p(), x);
        assert!(FgrClass::map_i(&LPoly::l_pow(Q::new(1, 2))).is_err());
    }

    #[test]
    fn chi_of_point_classes() {
        assert_eq!(FgrClass::term(id("S3"), 0, 1).chi_k(1), BigInt::from(3));
        assert_eq!(FgrClass::term(id("S3"), 0, 1).chi_k(2), BigInt::from(8));
        for k in 0..4 {
            assert_eq!(FgrClass::one().chi_k(k), BigInt::from(1));
        }
    }

    #[test]
    fn induction_preserves_classes() {
        let c2 = g("C2");
        let s3 = g("S3");
        let emb = find_embedding(&c2, &s3).unwrap().unwrap();
        for z in [GSet::point(&c2), GSet::regular(&c2), GSet::trivial(&c2, vec![0, 2])] {
            assert_eq!(class_of(&z.induced(&emb).unwrap()).unwrap(), class_of(&z).unwrap());
        }
    }

    #[test]
    fn box_product_of_points() {
        let s1 = g("S1");
        let b = gp_box(&GSet::point(&s1), &GSet::point(&s1)).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(class_of(&b).unwrap(), FgrClass::one());
        let s2 = g("S2");
        let b = gp_box(&GSet::point(&s2), &GSet::point(&s1)).unwrap();
        assert_eq!(b.len(), 3);
        assert_eq!(class_of(&b).unwrap(), FgrClass::term(id("C2"), 0, 1));
        assert!(gp_box(&GSet::point(&g("C3")), &GSet::point(&s1)).is_err());
    }

    #[test]
    fn effectiveness() {
        let a = FgrClass::term(id("C2"), 0, 2);
        assert!(a.is_effective());
        assert!(!a.sub(&FgrClass::one()).is_effective());
        assert_eq!(a.sub(&FgrClass::one()).to_string(), "-(trivial,0) + 2(C2,0)");
    }
}
