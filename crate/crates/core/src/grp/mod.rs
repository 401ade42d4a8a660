//! Explicit finite groups.
//!
//! Every group is materialized as a list of element keys in closure order
//! (breadth-first from the generators, identity first). Small groups also
//! carry a full multiplication table; larger ones multiply keys on the fly
//! and look the product up in a hash index.
//!
//! The wreath product uses the convention
//! `((g),σ)·((g'),σ') = ((g_i·g'_{σ⁻¹(i)})_i, σσ')` where `σσ'` applies `σ'`
//! first. Under it, `((g),σ)·(x_1..x_n) = (g_i·x_{σ⁻¹(i)})_i` is a left
//! action on n-tuples.

mod iso;
mod subgroup;

pub use iso::{are_isomorphic, automorphisms, find_embedding, GroupInvariants, GroupIso, Homomorphism};
pub use subgroup::{
    centralizer, commuting_tuples, commuting_tuples_by_class, conjugacy_classes, count_commuting_tuples,
    subgroup_generated, ConjugacyClass, Subgroup,
};

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::limits::Limits;

/// Groups up to this order get a full multiplication table.
const TABLE_LIMIT: usize = 1024;

const NONE: u32 = u32::MAX;

/// An element id, valid only relative to the group that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const IDENTITY: Elem = Elem(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone)]
enum Kind {
    Permutation { degree: usize },
    Table { n: usize, table: Arc<Vec<u32>> },
    Product { left: FiniteGroup, right: FiniteGroup },
    Wreath { base: FiniteGroup, n: usize },
    Twisted { base: FiniteGroup, parts: Vec<(FiniteGroup, usize)> },
    Subgroup { parent: FiniteGroup },
}

/// Which construction produced a group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Realization {
    Permutation { degree: usize },
    Table,
    DirectProduct,
    Wreath { n: usize },
    TwistedProduct,
    Subgroup,
}

struct GroupData {
    kind: Kind,
    keys: Vec<Box<[u32]>>,
    index: HashMap<Box<[u32]>, u32>,
    table: Option<Vec<u32>>,
    inv: Vec<u32>,
    orders: Vec<u32>,
    gens: Vec<u32>,
    classes: OnceLock<Vec<ConjugacyClass>>,
}

/// An immutable finite group; cloning is cheap.
#[derive(Clone)]
pub struct FiniteGroup(Arc<GroupData>);

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order())
            .field("realization", &self.realization())
            .finish()
    }
}

/// Components of a twisted-product element: the `G`-coordinates, the
/// coordinates in each part group, and one permutation per part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedParts {
    pub base: Vec<Elem>,
    pub parts: Vec<Vec<Elem>>,
    pub perms: Vec<Vec<usize>>,
}

fn compose(kind: &Kind, a: &[u32], b: &[u32]) -> Box<[u32]> {
    match kind {
        Kind::Permutation { .. } => b.iter().map(|&x| a[x as usize]).collect(),
        Kind::Table { n, table } => Box::new([table[a[0] as usize * n + b[0] as usize]]),
        Kind::Product { left, right } => Box::new([left.mul_raw(a[0], b[0]), right.mul_raw(a[1], b[1])]),
        Kind::Wreath { base, n } => {
            let mut out = vec![0u32; 2 * n];
            compose_block(base, &a[..*n], &b[..*n], &a[*n..], &b[*n..], &mut out, *n);
            out.into_boxed_slice()
        }
        Kind::Twisted { base, parts } => {
            let total: usize = parts.iter().map(|p| p.1).sum();
            let mut out = vec![0u32; a.len()];
            let mut g_off = 0;
            let mut a_off = total;
            let mut s_off = 2 * total;
            for (group, k) in parts {
                let k = *k;
                let (sa, sb) = (&a[s_off..s_off + k], &b[s_off..s_off + k]);
                let mut sa_inv = vec![0u32; k];
                for (i, &s) in sa.iter().enumerate() {
                    sa_inv[s as usize] = i as u32;
                }
                for i in 0..k {
                    let j = sa_inv[i] as usize;
                    out[g_off + i] = base.mul_raw(a[g_off + i], b[g_off + j]);
                    out[a_off + i] = group.mul_raw(a[a_off + i], b[a_off + j]);
                    out[s_off + i] = sa[sb[i] as usize];
                }
                g_off += k;
                a_off += k;
                s_off += k;
            }
            out.into_boxed_slice()
        }
        Kind::Subgroup { parent } => Box::new([parent.mul_raw(a[0], b[0])]),
    }
}

/// `out = (g_i·g'_{σ⁻¹(i)}, σσ')` for one wreath block of size `n`; `out`
/// holds the group part followed by the permutation part.
fn compose_block(base: &FiniteGroup, ga: &[u32], gb: &[u32], sa: &[u32], sb: &[u32], out: &mut [u32], n: usize) {
    let mut sa_inv = vec![0u32; n];
    for (i, &s) in sa.iter().enumerate() {
        sa_inv[s as usize] = i as u32;
    }
    for i in 0..n {
        out[i] = base.mul_raw(ga[i], gb[sa_inv[i] as usize]);
        out[n + i] = sa[sb[i] as usize];
    }
}

fn check_bound(order: u128) -> Result<()> {
    let bound = Limits::current().max_group_order;
    if order > bound as u128 {
        return Err(Error::GroupTooLarge { order, bound });
    }
    Ok(())
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Breadth-first closure of `gens` under right multiplication.
fn build_closure(kind: Kind, identity: Box<[u32]>, gens: Vec<Box<[u32]>>) -> Result<FiniteGroup> {
    let bound = Limits::current().max_group_order;
    let mut keys = vec![identity.clone()];
    let mut index = HashMap::new();
    index.insert(identity, 0u32);
    let mut i = 0;
    while i < keys.len() {
        for g in &gens {
            let p = compose(&kind, &keys[i], g);
            if !index.contains_key(&p) {
                if keys.len() >= bound {
                    return Err(Error::GroupTooLarge { order: keys.len() as u128 + 1, bound });
                }
                index.insert(p.clone(), keys.len() as u32);
                keys.push(p);
            }
        }
        i += 1;
    }
    let gen_ids = gens.iter().map(|g| index[g]).collect();
    Ok(finish(kind, keys, index, gen_ids))
}

fn finish(kind: Kind, keys: Vec<Box<[u32]>>, index: HashMap<Box<[u32]>, u32>, gens: Vec<u32>) -> FiniteGroup {
    let n = keys.len();
    let mut data = GroupData {
        kind,
        keys,
        index,
        table: None,
        inv: Vec::new(),
        orders: Vec::new(),
        gens,
        classes: OnceLock::new(),
    };
    if n <= TABLE_LIMIT {
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let p = compose(&data.kind, &data.keys[a], &data.keys[b]);
                table[a * n + b] = data.index[&p];
            }
        }
        data.table = Some(table);
    }
    let mut inv = vec![0u32; n];
    let mut orders = vec![1u32; n];
    for a in 1..n as u32 {
        let mut prev = a;
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            prev = x;
            x = data.mul_raw(x, a);
            k += 1;
        }
        orders[a as usize] = k;
        inv[a as usize] = prev;
    }
    data.inv = inv;
    data.orders = orders;
    FiniteGroup(Arc::new(data))
}

impl GroupData {
    fn mul_raw(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.keys.len() + b as usize],
            None => {
                let p = compose(&self.kind, &self.keys[a as usize], &self.keys[b as usize]);
                self.index[&p]
            }
        }
    }
}

impl FiniteGroup {
    pub fn trivial() -> FiniteGroup {
        group_from_permutations(1, &[]).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.0.keys.len()
    }

    pub fn identity(&self) -> Elem {
        Elem::IDENTITY
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Elem> + ExactSizeIterator + '_ {
        (0..self.order() as u32).map(Elem)
    }

    /// Checked conversion from a raw index.
    pub fn elem(&self, index: usize) -> Result<Elem> {
        if index < self.order() {
            Ok(Elem(index as u32))
        } else {
            Err(Error::ForeignElement { index, order: self.order() })
        }
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.mul_raw(a.0, b.0))
    }

    pub(crate) fn mul_raw(&self, a: u32, b: u32) -> u32 {
        self.0.mul_raw(a, b)
    }

    pub fn inv(&self, a: Elem) -> Elem {
        Elem(self.0.inv[a.index()])
    }

    pub(crate) fn inv_raw(&self, a: u32) -> u32 {
        self.0.inv[a as usize]
    }

    pub fn pow(&self, a: Elem, k: u32) -> Elem {
        let mut r = Elem::IDENTITY;
        for _ in 0..k % self.elem_order(a) {
            r = self.mul(r, a);
        }
        r
    }

    pub fn elem_order(&self, a: Elem) -> u32 {
        self.0.orders[a.index()]
    }

    /// `h⁻¹·g·h`.
    pub fn conj(&self, g: Elem, h: Elem) -> Elem {
        self.mul(self.inv(h), self.mul(g, h))
    }

    pub fn commutes(&self, a: Elem, b: Elem) -> bool {
        self.mul_raw(a.0, b.0) == self.mul_raw(b.0, a.0)
    }

    /// Generators in the order used to build the group.
    pub fn generators(&self) -> Vec<Elem> {
        self.0.gens.iter().map(|&g| Elem(g)).collect()
    }

    pub(crate) fn gens_raw(&self) -> &[u32] {
        &self.0.gens
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter().all(|&a| gens.iter().all(|&b| self.commutes(a, b)))
    }

    pub fn center_order(&self) -> usize {
        let gens = self.generators();
        self.elements().filter(|&z| gens.iter().all(|&g| self.commutes(z, g))).count()
    }

    /// True when both handles refer to the same constructed group.
    pub fn same_as(&self, other: &FiniteGroup) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn realization(&self) -> Realization {
        match &self.0.kind {
            Kind::Permutation { degree } => Realization::Permutation { degree: *degree },
            Kind::Table { .. } => Realization::Table,
            Kind::Product { .. } => Realization::DirectProduct,
            Kind::Wreath { n, .. } => Realization::Wreath { n: *n },
            Kind::Twisted { .. } => Realization::TwistedProduct,
            Kind::Subgroup { .. } => Realization::Subgroup,
        }
    }

    pub(crate) fn cached_classes(&self) -> &OnceLock<Vec<ConjugacyClass>> {
        &self.0.classes
    }

    /// The permutation of an element, for permutation groups and for wreath
    /// products over the trivial group (both realize symmetric-group style
    /// actions on `0..degree`).
    pub fn as_permutation(&self, e: Elem) -> Option<Vec<usize>> {
        let key = &self.0.keys[e.index()];
        match &self.0.kind {
            Kind::Permutation { .. } => Some(key.iter().map(|&x| x as usize).collect()),
            Kind::Wreath { base, n } if base.order() == 1 => Some(key[*n..].iter().map(|&x| x as usize).collect()),
            _ => None,
        }
    }

    /// The label an element had in the multiplication table a table group
    /// was built from.
    pub fn table_label(&self, e: Elem) -> Option<usize> {
        match &self.0.kind {
            Kind::Table { .. } => Some(self.0.keys[e.index()][0] as usize),
            _ => None,
        }
    }

    pub fn find_table_label(&self, label: usize) -> Option<Elem> {
        match &self.0.kind {
            Kind::Table { .. } => {
                let key: Box<[u32]> = Box::new([u32::try_from(label).ok()?]);
                self.0.index.get(&key).map(|&i| Elem(i))
            }
            _ => None,
        }
    }

    pub fn find_permutation(&self, perm: &[usize]) -> Option<Elem> {
        let key: Box<[u32]> = match &self.0.kind {
            Kind::Permutation { .. } => perm.iter().map(|&x| x as u32).collect(),
            Kind::Wreath { base, n } if base.order() == 1 && perm.len() == *n => {
                std::iter::repeat_n(0, *n).chain(perm.iter().map(|&x| x as u32)).collect()
            }
            _ => return None,
        };
        self.0.index.get(&key).map(|&i| Elem(i))
    }

    pub fn product_factors(&self) -> Option<(&FiniteGroup, &FiniteGroup)> {
        match &self.0.kind {
            Kind::Product { left, right } => Some((left, right)),
            _ => None,
        }
    }

    pub fn product_parts(&self, e: Elem) -> Option<(Elem, Elem)> {
        match &self.0.kind {
            Kind::Product { .. } => {
                let k = &self.0.keys[e.index()];
                Some((Elem(k[0]), Elem(k[1])))
            }
            _ => None,
        }
    }

    pub fn find_product(&self, a: Elem, b: Elem) -> Option<Elem> {
        match &self.0.kind {
            Kind::Product { .. } => self.0.index.get(&[a.0, b.0][..]).map(|&i| Elem(i)),
            _ => None,
        }
    }

    pub fn wreath_base(&self) -> Option<(&FiniteGroup, usize)> {
        match &self.0.kind {
            Kind::Wreath { base, n } => Some((base, *n)),
            _ => None,
        }
    }

    /// `((g_1..g_n), σ)` with `σ[i]` the image of `i`.
    pub fn wreath_parts(&self, e: Elem) -> Option<(Vec<Elem>, Vec<usize>)> {
        match &self.0.kind {
            Kind::Wreath { n, .. } => {
                let k = &self.0.keys[e.index()];
                Some((k[..*n].iter().map(|&x| Elem(x)).collect(), k[*n..].iter().map(|&x| x as usize).collect()))
            }
            _ => None,
        }
    }

    pub fn find_wreath(&self, g: &[Elem], sigma: &[usize]) -> Option<Elem> {
        match &self.0.kind {
            Kind::Wreath { n, .. } if g.len() == *n && sigma.len() == *n => {
                let key: Box<[u32]> = g.iter().map(|e| e.0).chain(sigma.iter().map(|&s| s as u32)).collect();
                self.0.index.get(&key).map(|&i| Elem(i))
            }
            _ => None,
        }
    }

    pub fn twisted_layout(&self) -> Option<(&FiniteGroup, &[(FiniteGroup, usize)])> {
        match &self.0.kind {
            Kind::Twisted { base, parts } => Some((base, parts)),
            _ => None,
        }
    }

    pub fn twisted_parts(&self, e: Elem) -> Option<TwistedParts> {
        let Kind::Twisted { parts, .. } = &self.0.kind else { return None };
        let k = &self.0.keys[e.index()];
        let total: usize = parts.iter().map(|p| p.1).sum();
        let base = k[..total].iter().map(|&x| Elem(x)).collect();
        let mut out_parts = Vec::new();
        let mut perms = Vec::new();
        let mut a_off = total;
        let mut s_off = 2 * total;
        for (_, kp) in parts {
            out_parts.push(k[a_off..a_off + kp].iter().map(|&x| Elem(x)).collect());
            perms.push(k[s_off..s_off + kp].iter().map(|&x| x as usize).collect());
            a_off += kp;
            s_off += kp;
        }
        Some(TwistedParts { base, parts: out_parts, perms })
    }

    /// For a group built by [`Subgroup::as_group`], the parent group.
    pub fn parent_group(&self) -> Option<&FiniteGroup> {
        match &self.0.kind {
            Kind::Subgroup { parent } => Some(parent),
            _ => None,
        }
    }

    pub fn parent_element(&self, e: Elem) -> Option<Elem> {
        match &self.0.kind {
            Kind::Subgroup { .. } => Some(Elem(self.0.keys[e.index()][0])),
            _ => None,
        }
    }

    /// Full multiplication table as nested rows of element indices.
    pub fn multiplication_table(&self) -> Vec<Vec<usize>> {
        let n = self.order() as u32;
        (0..n).map(|a| (0..n).map(|b| self.mul_raw(a, b) as usize).collect()).collect()
    }

    /// Exhaustive identity and inverse laws, plus associativity on all
    /// triples (`order ≤ 24`) or `samples` pseudo-random triples.
    pub fn verify_axioms(&self, samples: usize) -> bool {
        let n = self.order() as u32;
        for a in 0..n {
            if self.mul_raw(a, 0) != a || self.mul_raw(0, a) != a {
                return false;
            }
            let ai = self.inv_raw(a);
            if self.mul_raw(a, ai) != 0 || self.mul_raw(ai, a) != 0 {
                return false;
            }
        }
        let assoc = |a: u32, b: u32, c: u32| self.mul_raw(self.mul_raw(a, b), c) == self.mul_raw(a, self.mul_raw(b, c));
        if n <= 24 {
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| assoc(a, b, c))))
        } else {
            let mut state = 0x9e37_79b9_7f4a_7c15u64;
            let mut next = || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state % n as u64) as u32
            };
            (0..samples).all(|_| {
                let (a, b, c) = (next(), next(), next());
                assoc(a, b, c)
            })
        }
    }

    /// A small generating set chosen greedily, largest element orders
    /// first.
    pub(crate) fn small_generating_set(&self) -> Vec<u32> {
        let n = self.order();
        let mut by_order: Vec<u32> = (0..n as u32).collect();
        by_order.sort_by_key(|&e| (std::cmp::Reverse(self.0.orders[e as usize]), e));
        let mut gens: Vec<u32> = Vec::new();
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut count = 1;
        for e in by_order {
            if count == n {
                break;
            }
            if inside[e as usize] {
                continue;
            }
            gens.push(e);
            // recompute closure
            inside.iter_mut().for_each(|b| *b = false);
            inside[0] = true;
            let mut queue = VecDeque::from([0u32]);
            count = 1;
            while let Some(x) = queue.pop_front() {
                for &g in &gens {
                    let y = self.mul_raw(x, g);
                    if !inside[y as usize] {
                        inside[y as usize] = true;
                        count += 1;
                        queue.push_back(y);
                    }
                }
            }
        }
        gens
    }
}

pub(crate) fn from_sorted_members(parent: &FiniteGroup, members: &[u32], gens: &[u32]) -> FiniteGroup {
    let keys: Vec<Box<[u32]>> = members.iter().map(|&m| Box::new([m]) as Box<[u32]>).collect();
    let index: HashMap<Box<[u32]>, u32> = keys.iter().enumerate().map(|(i, k)| (k.clone(), i as u32)).collect();
    let local_gens = gens.iter().map(|g| index[&[*g][..]]).collect();
    finish(Kind::Subgroup { parent: parent.clone() }, keys, index, local_gens)
}

/// Closure of permutation generators under composition; `(a·b)(x) = a(b(x))`.
pub fn group_from_permutations(degree: usize, generators: &[Vec<usize>]) -> Result<FiniteGroup> {
    if degree == 0 {
        return Err(Error::NotBijective { index: 0, degree });
    }
    let mut gens = Vec::with_capacity(generators.len());
    for (index, g) in generators.iter().enumerate() {
        let mut seen = vec![false; degree];
        if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
            return Err(Error::NotBijective { index, degree });
        }
        gens.push(g.iter().map(|&x| x as u32).collect::<Box<[u32]>>());
    }
    let identity: Box<[u32]> = (0..degree as u32).collect();
    build_closure(Kind::Permutation { degree }, identity, gens)
}

/// A group given by its multiplication table on `0..n`. Elements are
/// relabelled in closure order, so the identity becomes element 0.
pub fn group_from_table(mul: &[Vec<usize>]) -> Result<FiniteGroup> {
    let n = mul.len();
    if n == 0 {
        return Err(Error::BadTable("empty table".into()));
    }
    check_bound(n as u128)?;
    if mul.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
        return Err(Error::BadTable("table must be square with entries in 0..n".into()));
    }
    let table: Vec<u32> = mul.iter().flatten().map(|&x| x as u32).collect();
    let at = |a: usize, b: usize| table[a * n + b] as usize;
    let e = (0..n)
        .find(|&e| (0..n).all(|a| at(e, a) == a && at(a, e) == a))
        .ok_or_else(|| Error::BadTable("no identity element".into()))?;
    for a in 0..n {
        if !(0..n).any(|b| at(a, b) == e && at(b, a) == e) {
            return Err(Error::BadTable(format!("element {a} has no inverse")));
        }
    }
    let triples_ok = if n <= 64 {
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| at(at(a, b), c) == at(a, at(b, c)))))
    } else {
        let mut s = 0x2545_f491_4f6c_dd1du64;
        (0..20_000).all(|_| {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            let (a, b, c) = ((s % n as u64) as usize, ((s >> 20) % n as u64) as usize, ((s >> 40) % n as u64) as usize);
            at(at(a, b), c) == at(a, at(b, c))
        })
    };
    if !triples_ok {
        return Err(Error::BadTable("multiplication is not associative".into()));
    }
    // greedy generators on the original labels
    let mut inside = vec![false; n];
    inside[e] = true;
    let mut gens: Vec<usize> = Vec::new();
    for cand in 0..n {
        if inside[cand] {
            continue;
        }
        gens.push(cand);
        let mut members: Vec<usize> = (0..n).filter(|&x| inside[x]).collect();
        let mut i = 0;
        while i < members.len() {
            for &g in &gens {
                let y = at(members[i], g);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
    }
    let kind = Kind::Table { n, table: Arc::new(table) };
    build_closure(kind, Box::new([e as u32]), gens.iter().map(|&g| Box::new([g as u32]) as Box<[u32]>).collect())
}

pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    check_bound(g.order() as u128 * h.order() as u128)?;
    let mut gens: Vec<Box<[u32]>> = g.gens_raw().iter().map(|&a| Box::new([a, 0]) as Box<[u32]>).collect();
    gens.extend(h.gens_raw().iter().map(|&b| Box::new([0, b]) as Box<[u32]>));
    build_closure(Kind::Product { left: g.clone(), right: h.clone() }, Box::new([0, 0]), gens)
}

fn symmetric_generators(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if n >= 2 {
        let mut t: Vec<u32> = (0..n as u32).collect();
        t.swap(0, 1);
        out.push(t);
    }
    if n >= 3 {
        out.push((0..n as u32).map(|i| (i + 1) % n as u32).collect());
    }
    out
}

/// `G ≀ S_n = Gⁿ ⋊ S_n`.
pub fn wreath_product(g: &FiniteGroup, n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::GroupMismatch("wreath product needs n ≥ 1".into()));
    }
    let order = (g.order() as u128).checked_pow(n as u32).and_then(|p| p.checked_mul(factorial(n)));
    check_bound(order.unwrap_or(u128::MAX))?;
    let identity: Box<[u32]> = std::iter::repeat_n(0, n).chain(0..n as u32).collect();
    let mut gens = Vec::new();
    for &a in g.gens_raw() {
        let mut k = identity.to_vec();
        k[0] = a;
        gens.push(k.into_boxed_slice());
    }
    for s in symmetric_generators(n) {
        let k: Box<[u32]> = std::iter::repeat_n(0, n).chain(s).collect();
        gens.push(k);
    }
    build_closure(Kind::Wreath { base: g.clone(), n }, identity, gens)
}

/// The group `G_{{k_i}}`: `G^{Σk_i} × ∏ G_i^{k_i}` extended by `∏ S_{k_i}`,
/// each `S_{k_i}` permuting its block of `G`-coordinates and its block of
/// `G_i`-coordinates simultaneously.
pub fn twisted_product_group(g: &FiniteGroup, parts: &[(FiniteGroup, usize)]) -> Result<FiniteGroup> {
    let total: usize = parts.iter().map(|p| p.1).sum();
    let mut order: Option<u128> = (g.order() as u128).checked_pow(total as u32);
    for (gi, k) in parts {
        order = order
            .and_then(|o| o.checked_mul((gi.order() as u128).checked_pow(*k as u32)?))
            .and_then(|o| o.checked_mul(factorial(*k)));
    }
    check_bound(order.unwrap_or(u128::MAX))?;
    let mut identity = vec![0u32; 2 * total];
    for (_, k) in parts {
        identity.extend(0..*k as u32);
    }
    let mut gens = Vec::new();
    let mut g_off = 0;
    let mut a_off = total;
    let mut s_off = 2 * total;
    for (gi, k) in parts {
        let k = *k;
        if k > 0 {
            for &a in g.gens_raw() {
                let mut key = identity.clone();
                key[g_off] = a;
                gens.push(key.into_boxed_slice());
            }
            for &a in gi.gens_raw() {
                let mut key = identity.clone();
                key[a_off] = a;
                gens.push(key.into_boxed_slice());
            }
            for s in symmetric_generators(k) {
                let mut key = identity.clone();
                key[s_off..s_off + k].copy_from_slice(&s);
                gens.push(key.into_boxed_slice());
            }
        }
        g_off += k;
        a_off += k;
        s_off += k;
    }
    build_closure(Kind::Twisted { base: g.clone(), parts: parts.to_vec() }, identity.into_boxed_slice(), gens)
}

/// Cyclic, symmetric, dihedral, Klein four and trivial groups by name:
/// `trivial`, `C<n>`, `S<n>`, `D<n>` (order `2n`), `V4`.
pub fn named_group(name: &str) -> Result<FiniteGroup> {
    let bad = || Error::descriptor("name", format!("unknown group name {name:?}"));
    if name == "trivial" || name == "1" {
        return Ok(FiniteGroup::trivial());
    }
    if name == "V4" {
        return group_from_permutations(4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]]);
    }
    let (head, tail) = name.split_at(1.min(name.len()));
    let n: usize = tail.parse().map_err(|_| bad())?;
    match head {
        "C" if n >= 1 => group_from_permutations(n, &[(0..n).map(|i| (i + 1) % n).collect()]),
        "S" if n >= 1 => {
            let gens: Vec<Vec<usize>> =
                symmetric_generators(n).into_iter().map(|g| g.into_iter().map(|x| x as usize).collect()).collect();
            group_from_permutations(n, &gens)
        }
        "D" if n >= 3 => group_from_permutations(
            n,
            &[(0..n).map(|i| (i + 1) % n).collect(), (0..n).map(|i| (n - i) % n).collect()],
        ),
        _ => Err(bad()),
    }
}
