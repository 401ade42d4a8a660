//! Subgroups, conjugacy classes, centralizers and commuting tuples.

use std::collections::VecDeque;
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::{from_sorted_members, Elem, FiniteGroup};

/// A subgroup stored as the sorted list of its member ids in the parent.
#[derive(Clone)]
pub struct Subgroup {
    parent: FiniteGroup,
    members: Arc<Vec<u32>>,
    gens: Arc<OnceLock<Vec<u32>>>,
    group: Arc<OnceLock<FiniteGroup>>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup").field("members", &self.members).finish()
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent.same_as(&other.parent) && self.members == other.members
    }
}

impl Eq for Subgroup {}

/// Breadth-first closure of `gens` under right multiplication.
fn closure(g: &FiniteGroup, gens: &[u32]) -> Vec<u32> {
    let mut inside = vec![false; g.order()];
    inside[0] = true;
    let mut out = vec![0u32];
    let mut i = 0;
    while i < out.len() {
        for &s in gens {
            let y = g.mul_raw(out[i], s);
            if !inside[y as usize] {
                inside[y as usize] = true;
                out.push(y);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

impl Subgroup {
    fn new(parent: &FiniteGroup, members: Vec<u32>) -> Subgroup {
        Subgroup {
            parent: parent.clone(),
            members: Arc::new(members),
            gens: Arc::new(OnceLock::new()),
            group: Arc::new(OnceLock::new()),
        }
    }

    pub fn whole(g: &FiniteGroup) -> Subgroup {
        let s = Subgroup::new(g, (0..g.order() as u32).collect());
        let _ = s.gens.set(g.gens_raw().iter().copied().filter(|&x| x != 0).collect());
        s
    }

    pub fn trivial(g: &FiniteGroup) -> Subgroup {
        let s = Subgroup::new(g, vec![0]);
        let _ = s.gens.set(Vec::new());
        s
    }

    pub fn generated(g: &FiniteGroup, gens: &[Elem]) -> Subgroup {
        let raw: Vec<u32> = gens.iter().map(|e| e.0).collect();
        Subgroup::new(g, closure(g, &raw))
    }

    /// Checks closure under multiplication; finite, so inverses follow.
    pub fn from_members(g: &FiniteGroup, members: &[Elem]) -> Option<Subgroup> {
        let mut m: Vec<u32> = members.iter().map(|e| e.0).collect();
        m.sort_unstable();
        m.dedup();
        if m.first() != Some(&0) {
            return None;
        }
        let mut inside = vec![false; g.order()];
        m.iter().for_each(|&x| inside[x as usize] = true);
        let closed = m.iter().all(|&a| m.iter().all(|&b| inside[g.mul_raw(a, b) as usize]));
        closed.then(|| Subgroup::new(g, m))
    }

    pub(crate) fn from_sorted_unchecked(g: &FiniteGroup, members: Vec<u32>) -> Subgroup {
        Subgroup::new(g, members)
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.iter().map(|&m| Elem(m))
    }

    pub(crate) fn members_raw(&self) -> &[u32] {
        &self.members
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.members.binary_search(&e.0).is_ok()
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent.order()
    }

    /// A generating set, chosen greedily from the members in id order.
    pub fn generators(&self) -> Vec<Elem> {
        self.gens_raw().iter().map(|&g| Elem(g)).collect()
    }

    pub(crate) fn gens_raw(&self) -> &[u32] {
        self.gens.get_or_init(|| {
            let g = &self.parent;
            let mut gens = Vec::new();
            let mut inside = vec![false; g.order()];
            inside[0] = true;
            let mut count = 1;
            for &m in self.members.iter() {
                if count == self.members.len() {
                    break;
                }
                if inside[m as usize] {
                    continue;
                }
                gens.push(m);
                let c = closure(g, &gens);
                count = c.len();
                inside.iter_mut().for_each(|b| *b = false);
                c.iter().for_each(|&x| inside[x as usize] = true);
            }
            gens
        })
    }

    /// The subgroup as a group in its own right; element `i` of the result
    /// is the `i`-th smallest member.
    pub fn as_group(&self) -> FiniteGroup {
        self.group.get_or_init(|| from_sorted_members(&self.parent, &self.members, self.gens_raw())).clone()
    }

    /// Index of a member inside [`Subgroup::as_group`].
    pub fn local(&self, e: Elem) -> Option<Elem> {
        self.members.binary_search(&e.0).ok().map(|i| Elem(i as u32))
    }

    pub fn centralizer(&self, g: Elem) -> Subgroup {
        let p = &self.parent;
        Subgroup::new(p, self.members.iter().copied().filter(|&h| p.commutes(Elem(h), g)).collect())
    }

    /// Elements of this subgroup commuting with every element of `set`.
    pub fn centralizer_of_all(&self, set: &[Elem]) -> Subgroup {
        let p = &self.parent;
        Subgroup::new(
            p,
            self.members.iter().copied().filter(|&h| set.iter().all(|&s| p.commutes(Elem(h), s))).collect(),
        )
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        Subgroup::new(&self.parent, self.members.iter().copied().filter(|&m| other.contains(Elem(m))).collect())
    }

    /// Conjugacy classes of the subgroup (conjugation by its own members),
    /// ordered by representative, each representative its least member.
    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        let p = &self.parent;
        let gens = self.gens_raw();
        let mut seen = vec![false; p.order()];
        let mut out = Vec::new();
        for &m in self.members.iter() {
            if seen[m as usize] {
                continue;
            }
            seen[m as usize] = true;
            let mut members = vec![m];
            let mut queue = VecDeque::from([m]);
            while let Some(x) = queue.pop_front() {
                for &s in gens {
                    let y = p.mul_raw(p.inv_raw(s), p.mul_raw(x, s));
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(ConjugacyClass { representative: Elem(m), members: members.into_iter().map(Elem).collect() });
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: Elem,
    /// Sorted by id.
    pub members: Vec<Elem>,
}

impl ConjugacyClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn conjugacy_classes(g: &FiniteGroup) -> &[ConjugacyClass] {
    g.cached_classes().get_or_init(|| Subgroup::whole(g).conjugacy_classes())
}

pub fn centralizer(g: &FiniteGroup, e: Elem) -> Subgroup {
    Subgroup::whole(g).centralizer(e)
}

pub fn subgroup_generated(g: &FiniteGroup, gens: &[Elem]) -> Subgroup {
    Subgroup::generated(g, gens)
}

fn visit_rec(g: &FiniteGroup, cands: &[u32], tuple: &mut Vec<Elem>, arity: usize, visit: &mut dyn FnMut(&[Elem])) -> u64 {
    if tuple.len() == arity {
        visit(tuple);
        return 1;
    }
    let mut count = 0;
    for &x in cands {
        let next: Vec<u32> = cands.iter().copied().filter(|&y| g.commutes(Elem(x), Elem(y))).collect();
        tuple.push(Elem(x));
        count += visit_rec(g, &next, tuple, arity, visit);
        tuple.pop();
    }
    count
}

/// Visits every pairwise-commuting `arity`-tuple exactly once; coordinate
/// `i+1` ranges over the common centralizer of the earlier ones. Returns the
/// number of tuples visited.
pub fn commuting_tuples(g: &FiniteGroup, arity: usize, mut visit: impl FnMut(&[Elem])) -> u64 {
    let all: Vec<u32> = (0..g.order() as u32).collect();
    visit_rec(g, &all, &mut Vec::with_capacity(arity), arity, &mut visit)
}

/// Like [`commuting_tuples`], but the first coordinate runs over class
/// representatives only; each visit carries the class size as weight.
/// Every statistic invariant under simultaneous conjugation can be summed
/// this way.
pub fn commuting_tuples_by_class(g: &FiniteGroup, arity: usize, mut visit: impl FnMut(&[Elem], u64)) {
    if arity == 0 {
        visit(&[], 1);
        return;
    }
    for class in conjugacy_classes(g) {
        let rep = class.representative;
        let weight = class.len() as u64;
        let cands: Vec<u32> = centralizer(g, rep).members_raw().to_vec();
        let mut tuple = vec![rep];
        visit_rec(g, &cands, &mut tuple, arity, &mut |t| visit(t, weight));
    }
}

fn count_rec(g: &FiniteGroup, cands: &[u32], remaining: usize) -> u128 {
    if remaining == 0 {
        return 1;
    }
    if remaining == 1 {
        return cands.len() as u128;
    }
    cands
        .iter()
        .map(|&x| {
            let next: Vec<u32> = cands.iter().copied().filter(|&y| g.commutes(Elem(x), Elem(y))).collect();
            count_rec(g, &next, remaining - 1)
        })
        .sum()
}

/// Number of pairwise-commuting `arity`-tuples, summed over conjugacy
/// classes of the first coordinate.
pub fn count_commuting_tuples(g: &FiniteGroup, arity: usize) -> u128 {
    if arity == 0 {
        return 1;
    }
    conjugacy_classes(g)
        .iter()
        .map(|c| c.len() as u128 * count_rec(g, centralizer(g, c.representative).members_raw(), arity - 1))
        .sum()
}
