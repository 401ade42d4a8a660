//! Homomorphisms and isomorphism testing by backtracking on generator
//! images.

use std::collections::BTreeMap;

use super::subgroup::conjugacy_classes;
use super::{Elem, FiniteGroup, NONE};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// A map between two groups, given on every element.
#[derive(Clone, Debug)]
pub struct Homomorphism {
    source: FiniteGroup,
    target: FiniteGroup,
    map: Vec<u32>,
}

/// A bijective homomorphism.
pub type GroupIso = Homomorphism;

impl Homomorphism {
    /// Checks the homomorphism law on every pair.
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, images: &[Elem]) -> Result<Homomorphism> {
        if images.len() != source.order() {
            return Err(Error::LengthMismatch { expected: source.order(), got: images.len() });
        }
        if let Some(bad) = images.iter().find(|e| e.index() >= target.order()) {
            return Err(Error::ForeignElement { index: bad.index(), order: target.order() });
        }
        let h = Homomorphism { source: source.clone(), target: target.clone(), map: images.iter().map(|e| e.0).collect() };
        if !h.verify() {
            return Err(Error::NotHomomorphism);
        }
        Ok(h)
    }

    /// The homomorphism determined by images of the source generators,
    /// extended along the closure order.
    pub fn from_generator_images(source: &FiniteGroup, target: &FiniteGroup, images: &[Elem]) -> Result<Homomorphism> {
        let gens = source.gens_raw();
        if images.len() != gens.len() {
            return Err(Error::LengthMismatch { expected: gens.len(), got: images.len() });
        }
        let mut map = vec![NONE; source.order()];
        map[0] = 0;
        let mut queue = vec![0u32];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for (s, img) in gens.iter().zip(images) {
                let y = source.mul_raw(x, *s) as usize;
                let fy = target.mul_raw(map[x as usize], img.0);
                if map[y] == NONE {
                    map[y] = fy;
                    queue.push(y as u32);
                } else if map[y] != fy {
                    return Err(Error::NotHomomorphism);
                }
            }
            i += 1;
        }
        let h = Homomorphism { source: source.clone(), target: target.clone(), map };
        if !h.verify() {
            return Err(Error::NotHomomorphism);
        }
        Ok(h)
    }

    pub fn identity(g: &FiniteGroup) -> Homomorphism {
        Homomorphism { source: g.clone(), target: g.clone(), map: (0..g.order() as u32).collect() }
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn apply(&self, e: Elem) -> Elem {
        Elem(self.map[e.index()])
    }

    /// Exhaustive check of `f(a·b) = f(a)·f(b)`.
    pub fn verify(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        let n = s.order() as u32;
        (0..n).all(|a| (0..n).all(|b| self.map[s.mul_raw(a, b) as usize] == t.mul_raw(self.map[a as usize], self.map[b as usize])))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y as usize], true))
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<Homomorphism> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0u32; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        Some(Homomorphism { source: self.target.clone(), target: self.source.clone(), map: inv })
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Homomorphism) -> Result<Homomorphism> {
        if !self.target.same_as(&other.source) {
            return Err(Error::GroupMismatch("composed maps do not share a middle group".into()));
        }
        Ok(Homomorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            map: self.map.iter().map(|&y| other.map[y as usize]).collect(),
        })
    }
}

/// Cheap isomorphism invariants used to rule out most non-isomorphic pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupInvariants {
    pub order: usize,
    /// `(element order, count)` pairs.
    pub order_histogram: Vec<(u32, usize)>,
    pub abelian: bool,
    pub center: usize,
    /// `((class size, element order), count)` pairs.
    pub class_histogram: Vec<((usize, u32), usize)>,
}

impl GroupInvariants {
    pub fn of(g: &FiniteGroup) -> GroupInvariants {
        let mut orders = BTreeMap::new();
        for e in g.elements() {
            *orders.entry(g.elem_order(e)).or_insert(0) += 1;
        }
        let mut classes = BTreeMap::new();
        let mut center = 0;
        for c in conjugacy_classes(g) {
            if c.len() == 1 {
                center += 1;
            }
            *classes.entry((c.len(), g.elem_order(c.representative))).or_insert(0) += 1;
        }
        GroupInvariants {
            order: g.order(),
            order_histogram: orders.into_iter().collect(),
            abelian: center == g.order(),
            center,
            class_histogram: classes.into_iter().collect(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Iso,
    Embed,
}

struct Search<'a> {
    src: &'a FiniteGroup,
    dst: &'a FiniteGroup,
    gens: Vec<u32>,
    candidates: Vec<Vec<u32>>,
    map: Vec<u32>,
    used: Vec<bool>,
    domain: Vec<u32>,
    found: Vec<Vec<u32>>,
    all: bool,
}

impl Search<'_> {
    /// Assigns `gens[level] ↦ image` and closes the partial map; on
    /// inconsistency undoes everything and returns false.
    fn assign(&mut self, level: usize, image: u32) -> Option<usize> {
        let start = self.domain.len();
        let s = self.gens[level];
        if self.map[s as usize] != NONE || self.used[image as usize] {
            return None;
        }
        let assigned = &self.gens[..=level];
        // new elements are products of the old domain with generators
        let mut frontier: Vec<u32> = self.domain.clone();
        let mut ok = true;
        let mut i = 0;
        'outer: while i < frontier.len() {
            let x = frontier[i];
            for (j, &g) in assigned.iter().enumerate() {
                let y = self.src.mul_raw(x, g);
                let gimg = if j == level { image } else { self.map[g as usize] };
                let fy = self.dst.mul_raw(self.map[x as usize], gimg);
                let slot = self.map[y as usize];
                if slot == NONE {
                    if self.used[fy as usize] {
                        ok = false;
                        break 'outer;
                    }
                    self.map[y as usize] = fy;
                    self.used[fy as usize] = true;
                    self.domain.push(y);
                    frontier.push(y);
                } else if slot != fy {
                    ok = false;
                    break 'outer;
                }
            }
            i += 1;
        }
        if ok {
            Some(start)
        } else {
            self.undo(start);
            None
        }
    }

    fn undo(&mut self, start: usize) {
        for y in self.domain.drain(start..) {
            let fy = self.map[y as usize];
            self.used[fy as usize] = false;
            self.map[y as usize] = NONE;
        }
    }

    /// Returns true when the search should stop.
    fn run(&mut self, level: usize) -> bool {
        if level == self.gens.len() {
            self.found.push(self.map.clone());
            return !self.all;
        }
        for idx in 0..self.candidates[level].len() {
            let c = self.candidates[level][idx];
            if let Some(start) = self.assign(level, c) {
                let stop = self.run(level + 1);
                self.undo(start);
                if stop {
                    return true;
                }
            }
        }
        false
    }
}

fn search(src: &FiniteGroup, dst: &FiniteGroup, mode: Mode, all: bool) -> Vec<Vec<u32>> {
    let gens = src.small_generating_set();
    let class_size = |g: &FiniteGroup| {
        let mut size = vec![0usize; g.order()];
        for c in conjugacy_classes(g) {
            for m in &c.members {
                size[m.index()] = c.len();
            }
        }
        size
    };
    let (src_sizes, dst_sizes) = match mode {
        Mode::Iso => (class_size(src), class_size(dst)),
        Mode::Embed => (Vec::new(), Vec::new()),
    };
    let candidates = gens
        .iter()
        .map(|&s| {
            dst.elements()
                .map(|e| e.0)
                .filter(|&t| {
                    dst.elem_order(Elem(t)) == src.elem_order(Elem(s))
                        && (mode == Mode::Embed || dst_sizes[t as usize] == src_sizes[s as usize])
                })
                .collect()
        })
        .collect();
    let mut map = vec![NONE; src.order()];
    map[0] = 0;
    let mut used = vec![false; dst.order()];
    used[0] = true;
    let mut s = Search { src, dst, gens, candidates, map, used, domain: vec![0], found: Vec::new(), all };
    s.run(0);
    s.found
}

fn check_iso_bound(order: usize) -> Result<()> {
    let bound = Limits::current().max_iso_order;
    if order > bound {
        return Err(Error::IsoOutOfRange { order, bound });
    }
    Ok(())
}

/// An isomorphism `g → h` if one exists.
pub fn are_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Result<Option<GroupIso>> {
    check_iso_bound(g.order())?;
    check_iso_bound(h.order())?;
    if GroupInvariants::of(g) != GroupInvariants::of(h) {
        return Ok(None);
    }
    Ok(search(g, h, Mode::Iso, false)
        .pop()
        .map(|map| Homomorphism { source: g.clone(), target: h.clone(), map }))
}

/// An injective homomorphism `g → h` if one exists.
pub fn find_embedding(g: &FiniteGroup, h: &FiniteGroup) -> Result<Option<Homomorphism>> {
    check_iso_bound(g.order())?;
    if !h.order().is_multiple_of(g.order()) {
        return Ok(None);
    }
    Ok(search(g, h, Mode::Embed, false)
        .pop()
        .map(|map| Homomorphism { source: g.clone(), target: h.clone(), map }))
}

/// Every automorphism of `g`, identity first.
pub fn automorphisms(g: &FiniteGroup) -> Result<Vec<GroupIso>> {
    check_iso_bound(g.order())?;
    let mut maps = search(g, g, Mode::Iso, true);
    maps.sort();
    Ok(maps.into_iter().map(|map| Homomorphism { source: g.clone(), target: g.clone(), map }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{direct_product, group_from_permutations, named_group, twisted_product_group, wreath_product};

    fn iso(a: &FiniteGroup, b: &FiniteGroup) -> bool {
        let r = are_isomorphic(a, b).unwrap();
        if let Some(f) = &r {
            assert!(f.verify() && f.is_bijective());
        }
        r.is_some()
    }

    #[test]
    fn cyclic_two_in_different_degrees() {
        let a = group_from_permutations(2, &[vec![1, 0]]).unwrap();
        let b = group_from_permutations(4, &[vec![1, 0, 3, 2]]).unwrap();
        assert!(iso(&a, &b) && iso(&b, &a));
    }

    #[test]
    fn c4_is_not_klein_four() {
        let c2 = named_group("C2").unwrap();
        let v = direct_product(&c2, &c2).unwrap();
        let c4 = named_group("C4").unwrap();
        assert!(!iso(&c4, &v) && !iso(&v, &c4));
        assert!(iso(&v, &named_group("V4").unwrap()));
    }

    #[test]
    fn wreath_c2_squared_is_dihedral_of_order_eight() {
        let c2 = named_group("C2").unwrap();
        let w = wreath_product(&c2, 2).unwrap();
        let square = group_from_permutations(4, &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]).unwrap();
        assert!(iso(&w, &square));
        assert!(iso(&twisted_product_group(&FiniteGroup::trivial(), &[(c2.clone(), 2)]).unwrap(), &w));
    }

    #[test]
    fn wreath_of_trivial_is_symmetric() {
        for n in 1..=4 {
            let w = wreath_product(&FiniteGroup::trivial(), n).unwrap();
            let s = named_group(&format!("S{n}")).unwrap();
            assert!(iso(&w, &s), "n = {n}");
            let t = twisted_product_group(&FiniteGroup::trivial(), &[(FiniteGroup::trivial(), n)]).unwrap();
            assert!(iso(&t, &s), "n = {n}");
        }
    }

    #[test]
    fn product_with_trivial_and_reflexivity() {
        for name in ["C2", "C3", "C4", "V4", "S3", "D4"] {
            let g = named_group(name).unwrap();
            assert!(iso(&g, &g));
            assert!(iso(&direct_product(&g, &FiniteGroup::trivial()).unwrap(), &g));
        }
    }

    #[test]
    fn automorphism_counts() {
        let count = |n: &str| automorphisms(&named_group(n).unwrap()).unwrap().len();
        assert_eq!(count("C2"), 1);
        assert_eq!(count("C3"), 2);
        assert_eq!(count("V4"), 6);
        assert_eq!(count("S3"), 6);
        assert_eq!(count("D4"), 8);
    }

    #[test]
    fn embeddings() {
        let c2 = named_group("C2").unwrap();
        let s3 = named_group("S3").unwrap();
        let e = find_embedding(&c2, &s3).unwrap().unwrap();
        assert!(e.verify() && e.is_injective());
        assert!(find_embedding(&named_group("C4").unwrap(), &named_group("V4").unwrap()).unwrap().is_none());
    }

    #[test]
    fn bound_is_enforced() {
        let s5 = named_group("S5").unwrap();
        assert!(matches!(are_isomorphic(&s5, &s5), Err(Error::IsoOutOfRange { order: 120, bound: 64 })));
    }
}
