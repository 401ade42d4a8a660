//! Finite G-sets of dimension-weighted cells.
//!
//! A cell of dimension `d` stands for a piece of class `𝕃^d` on which its
//! stabilizer acts trivially. The action is stored as a full table indexed
//! by `(group element, cell)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grp::{direct_product, wreath_product, Elem, FiniteGroup, Homomorphism, Subgroup};
use crate::limits::Limits;
use crate::lpoly::{LPoly, Q};

#[derive(Clone)]
pub struct GSet {
    group: FiniteGroup,
    dims: Arc<Vec<u32>>,
    /// `table[g·len + x] = g·x`.
    table: Arc<Vec<u32>>,
}

impl fmt::Debug for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GSet").field("group", &self.group).field("dims", &self.dims).finish()
    }
}

fn check_cells(count: u128) -> Result<()> {
    let bound = Limits::current().max_group_order;
    if count > bound as u128 {
        return Err(Error::GroupTooLarge { order: count, bound });
    }
    Ok(())
}

impl GSet {
    fn from_table(group: &FiniteGroup, dims: Vec<u32>, table: Vec<u32>) -> GSet {
        GSet { group: group.clone(), dims: Arc::new(dims), table: Arc::new(table) }
    }

    /// Builds the table from `f` and checks that it is an action: the
    /// identity acts trivially, each element permutes the cells,
    /// `(x·s)·p = x·(s·p)` along every generator edge, and dimensions are
    /// constant on orbits.
    pub fn from_action(group: &FiniteGroup, dims: Vec<u32>, f: impl Fn(Elem, usize) -> usize) -> Result<GSet> {
        let n = dims.len();
        let mut table = Vec::with_capacity(group.order() * n);
        for g in group.elements() {
            for x in 0..n {
                let y = f(g, x);
                if y >= n {
                    return Err(Error::NotAnAction(format!("cell {x} is sent to {y}, outside 0..{n}")));
                }
                table.push(y as u32);
            }
        }
        let set = GSet::from_table(group, dims, table);
        set.validate()?;
        Ok(set)
    }

    /// An action given by the images of the group generators (in the order of
    /// [`FiniteGroup::generators`]); the rest of the table follows by closure.
    pub fn from_generator_images(group: &FiniteGroup, dims: Vec<u32>, images: &[Vec<usize>]) -> Result<GSet> {
        let gens = group.generators();
        if images.len() != gens.len() {
            return Err(Error::LengthMismatch { expected: gens.len(), got: images.len() });
        }
        let n = dims.len();
        for (i, img) in images.iter().enumerate() {
            let mut seen = vec![false; n];
            if img.len() != n || img.iter().any(|&y| y >= n || std::mem::replace(&mut seen[y], true)) {
                return Err(Error::NotAnAction(format!("image list of generator {i} is not a permutation of the cells")));
            }
        }
        const UNSET: u32 = u32::MAX;
        let mut table = vec![UNSET; group.order() * n];
        table[..n].iter_mut().enumerate().for_each(|(x, t)| *t = x as u32);
        let mut queue = vec![Elem::IDENTITY];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for (s, img) in gens.iter().zip(images) {
                let y = group.mul(x, *s);
                if table[y.index() * n] == UNSET {
                    for p in 0..n {
                        table[y.index() * n + p] = table[x.index() * n + img[p]];
                    }
                    queue.push(y);
                }
            }
            i += 1;
        }
        let set = GSet::from_table(group, dims, table);
        set.validate()?;
        Ok(set)
    }

    fn validate(&self) -> Result<()> {
        let n = self.len();
        let g = &self.group;
        if (0..n).any(|x| self.act(Elem::IDENTITY, x) != x) {
            return Err(Error::NotAnAction("the identity moves a cell".into()));
        }
        for e in g.elements() {
            let mut seen = vec![false; n];
            if (0..n).any(|x| std::mem::replace(&mut seen[self.act(e, x)], true)) {
                return Err(Error::NotAnAction(format!("element {} does not permute the cells", e.index())));
            }
        }
        for e in g.elements() {
            for s in g.generators() {
                let es = g.mul(e, s);
                if (0..n).any(|p| self.act(es, p) != self.act(e, self.act(s, p))) {
                    return Err(Error::NotAnAction("the table is not compatible with the multiplication".into()));
                }
            }
        }
        for s in g.generators() {
            if (0..n).any(|x| self.dims[self.act(s, x)] != self.dims[x]) {
                return Err(Error::NotAnAction("dimension is not constant on an orbit".into()));
            }
        }
        Ok(())
    }

    pub fn empty(group: &FiniteGroup) -> GSet {
        GSet::from_table(group, Vec::new(), Vec::new())
    }

    pub fn point(group: &FiniteGroup) -> GSet {
        GSet::point_with_dim(group, 0)
    }

    pub fn point_with_dim(group: &FiniteGroup, dim: u32) -> GSet {
        GSet::trivial(group, vec![dim])
    }

    /// Every cell fixed by every element.
    pub fn trivial(group: &FiniteGroup, dims: Vec<u32>) -> GSet {
        let n = dims.len();
        let row: Vec<u32> = (0..n as u32).collect();
        let table = row.iter().copied().cycle().take(n * group.order()).collect();
        GSet::from_table(group, dims, table)
    }

    /// `G` acting on itself by left multiplication.
    pub fn regular(group: &FiniteGroup) -> GSet {
        let n = group.order();
        let mut table = Vec::with_capacity(n * n);
        for g in group.elements() {
            table.extend(group.elements().map(|x| group.mul(g, x).0));
        }
        GSet::from_table(group, vec![0; n], table)
    }

    /// `G` acting on the left cosets `gH`, ordered by least member.
    pub fn cosets(group: &FiniteGroup, h: &Subgroup) -> Result<GSet> {
        if !h.parent().same_as(group) {
            return Err(Error::GroupMismatch("subgroup of another group".into()));
        }
        let mut coset_of = vec![usize::MAX; group.order()];
        let mut count = 0;
        for g in group.elements() {
            if coset_of[g.index()] == usize::MAX {
                for m in h.members() {
                    coset_of[group.mul(g, m).index()] = count;
                }
                count += 1;
            }
        }
        let reps: Vec<Elem> = {
            let mut r = vec![Elem::IDENTITY; count];
            for g in group.elements().rev() {
                r[coset_of[g.index()]] = g;
            }
            r
        };
        let mut table = Vec::with_capacity(group.order() * count);
        for g in group.elements() {
            table.extend(reps.iter().map(|&r| coset_of[group.mul(g, r).index()] as u32));
        }
        Ok(GSet::from_table(group, vec![0; count], table))
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn dim(&self, x: usize) -> u32 {
        self.dims[x]
    }

    pub fn act(&self, g: Elem, x: usize) -> usize {
        self.table[g.index() * self.len() + x] as usize
    }

    /// Images of every cell under `g`.
    pub fn permutation(&self, g: Elem) -> Vec<usize> {
        (0..self.len()).map(|x| self.act(g, x)).collect()
    }

    /// Exhaustive check of `g·(h·x) = (gh)·x` and `e·x = x`.
    pub fn verify_action(&self) -> bool {
        let g = &self.group;
        (0..self.len()).all(|x| self.act(Elem::IDENTITY, x) == x)
            && g.elements().all(|a| {
                g.elements().all(|b| (0..self.len()).all(|x| self.act(a, self.act(b, x)) == self.act(g.mul(a, b), x)))
            })
    }

    /// Cells fixed by every element of `elems` (hence by the subgroup they
    /// generate).
    pub fn fixed_cells(&self, elems: &[Elem]) -> Vec<usize> {
        (0..self.len()).filter(|&x| elems.iter().all(|&g| self.act(g, x) == x)).collect()
    }

    /// The fixed cells of `elems`, acted on by `acting`, which must preserve
    /// them (for instance a subgroup normalizing `⟨elems⟩`).
    pub fn fixed_set(&self, elems: &[Elem], acting: &Subgroup) -> Result<GSet> {
        self.sub_gset(&self.fixed_cells(elems), acting)
    }

    /// The cells `cells` (in the given order) with the action of `acting`,
    /// as a G-set over `acting.as_group()`.
    pub fn sub_gset(&self, cells: &[usize], acting: &Subgroup) -> Result<GSet> {
        if !acting.parent().same_as(&self.group) {
            return Err(Error::GroupMismatch("subgroup of another group".into()));
        }
        let mut pos = vec![u32::MAX; self.len()];
        for (i, &c) in cells.iter().enumerate() {
            pos[c] = i as u32;
        }
        let sub = acting.as_group();
        let mut table = Vec::with_capacity(sub.order() * cells.len());
        for e in sub.elements() {
            let g = sub.parent_element(e).expect("subgroup view");
            for &c in cells {
                let y = pos[self.act(g, c)];
                if y == u32::MAX {
                    return Err(Error::NotInvariant);
                }
                table.push(y);
            }
        }
        Ok(GSet::from_table(&sub, cells.iter().map(|&c| self.dims[c]).collect(), table))
    }

    /// An invariant subset of cells with the same acting group.
    pub fn invariant_subset(&self, cells: &[usize]) -> Result<GSet> {
        let mut pos = vec![u32::MAX; self.len()];
        for (i, &c) in cells.iter().enumerate() {
            pos[c] = i as u32;
        }
        let mut table = Vec::with_capacity(self.group.order() * cells.len());
        for g in self.group.elements() {
            for &c in cells {
                let y = pos[self.act(g, c)];
                if y == u32::MAX {
                    return Err(Error::NotInvariant);
                }
                table.push(y);
            }
        }
        Ok(GSet::from_table(&self.group, cells.iter().map(|&c| self.dims[c]).collect(), table))
    }

    pub fn restrict_action(&self, s: &Subgroup) -> Result<GSet> {
        self.sub_gset(&(0..self.len()).collect::<Vec<_>>(), s)
    }

    /// Orbits of `cells` (an invariant subset) under the subgroup `sub`, each
    /// sorted, ordered by least cell.
    pub fn orbits_within(&self, cells: &[usize], sub: &Subgroup) -> Vec<Vec<usize>> {
        let gens = sub.generators();
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        let mut sorted = cells.to_vec();
        sorted.sort_unstable();
        for &c in &sorted {
            if seen[c] {
                continue;
            }
            seen[c] = true;
            let mut orbit = vec![c];
            let mut i = 0;
            while i < orbit.len() {
                for &s in &gens {
                    let y = self.act(s, orbit[i]);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn quotient(&self) -> OrbitDecomposition {
        let g = &self.group;
        let gens = g.generators();
        let mut orbit_of = vec![usize::MAX; self.len()];
        let mut transport = vec![Elem::IDENTITY; self.len()];
        let mut orbits = Vec::new();
        for base in 0..self.len() {
            if orbit_of[base] != usize::MAX {
                continue;
            }
            let idx = orbits.len();
            orbit_of[base] = idx;
            let mut cells = vec![base];
            let mut i = 0;
            while i < cells.len() {
                let x = cells[i];
                for &s in &gens {
                    let y = self.act(s, x);
                    if orbit_of[y] == usize::MAX {
                        orbit_of[y] = idx;
                        transport[y] = g.mul(s, transport[x]);
                        cells.push(y);
                    }
                }
                i += 1;
            }
            cells.sort_unstable();
            let members = g.elements().filter(|&e| self.act(e, base) == base).map(|e| e.0).collect();
            orbits.push(Orbit {
                base,
                dim: self.dims[base],
                stabilizer: Subgroup::from_sorted_unchecked(g, members),
                cells,
            });
        }
        OrbitDecomposition { orbits, orbit_of, transport }
    }

    /// `Σ_orbits 𝕃^{dim}`.
    pub fn quotient_class(&self) -> LPoly {
        let mut out = LPoly::zero();
        for o in self.quotient().orbits {
            out = out.add(&LPoly::l_pow(Q::from_integer(o.dim as i64)));
        }
        out
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits_within(&(0..self.len()).collect::<Vec<_>>(), &Subgroup::whole(&self.group)).len()
    }

    pub fn disjoint_union(&self, other: &GSet) -> Result<GSet> {
        if !self.group.same_as(&other.group) {
            return Err(Error::GroupMismatch("disjoint union needs one acting group".into()));
        }
        let (n, m) = (self.len(), other.len());
        let mut table = Vec::with_capacity(self.group.order() * (n + m));
        for g in self.group.elements() {
            table.extend((0..n).map(|x| self.act(g, x) as u32));
            table.extend((0..m).map(|x| (n + other.act(g, x)) as u32));
        }
        let dims = self.dims.iter().chain(other.dims.iter()).copied().collect();
        Ok(GSet::from_table(&self.group, dims, table))
    }

    /// `X × Y` over `G × H`; cell `(x, y)` has id `x·|Y| + y`.
    pub fn product(&self, other: &GSet) -> Result<GSet> {
        let p = direct_product(&self.group, &other.group)?;
        self.product_over(other, &p)
    }

    /// [`GSet::product`] over an existing product group of the two acting
    /// groups.
    pub fn product_over(&self, other: &GSet, p: &FiniteGroup) -> Result<GSet> {
        match p.product_factors() {
            Some((a, b)) if a.same_as(&self.group) && b.same_as(&other.group) => {}
            _ => return Err(Error::GroupMismatch("not the product of the two acting groups".into())),
        }
        check_cells(self.len() as u128 * other.len() as u128)?;
        let m = other.len();
        let mut table = Vec::with_capacity(p.order() * self.len() * m);
        for e in p.elements() {
            let (a, b) = p.product_parts(e).expect("product element");
            for x in 0..self.len() {
                let ax = self.act(a, x) * m;
                table.extend((0..m).map(|y| (ax + other.act(b, y)) as u32));
            }
        }
        let dims = self.dims.iter().flat_map(|&d| other.dims.iter().map(move |&e| d + e)).collect();
        Ok(GSet::from_table(p, dims, table))
    }

    /// `X × Y` with one group acting diagonally.
    pub fn diagonal_product(&self, other: &GSet) -> Result<GSet> {
        if !self.group.same_as(&other.group) {
            return Err(Error::GroupMismatch("diagonal product needs one acting group".into()));
        }
        check_cells(self.len() as u128 * other.len() as u128)?;
        let m = other.len();
        let dims = self.dims.iter().flat_map(|&d| other.dims.iter().map(move |&e| d + e)).collect();
        let mut table = Vec::with_capacity(self.group.order() * self.len() * m);
        for g in self.group.elements() {
            for x in 0..self.len() {
                let gx = self.act(g, x) * m;
                table.extend((0..m).map(|y| (gx + other.act(g, y)) as u32));
            }
        }
        Ok(GSet::from_table(&self.group, dims, table))
    }

    /// Cells of `Xⁿ` in lexicographic order.
    pub(crate) fn all_tuples(&self, n: usize) -> Result<Vec<Vec<u32>>> {
        let count = (self.len() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        check_cells(count)?;
        let mut out: Vec<Vec<u32>> = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|t| {
                    (0..self.len() as u32).map(move |x| {
                        let mut t = t.clone();
                        t.push(x);
                        t
                    })
                })
                .collect();
        }
        Ok(out)
    }

    /// `Xⁿ` with `((g),σ)·(x_1..x_n) = (g_i·x_{σ⁻¹(i)})_i`.
    pub fn wreath_power(&self, n: usize) -> Result<GSet> {
        let w = wreath_product(&self.group, n)?;
        self.wreath_power_over(n, &w)
    }

    pub fn wreath_power_over(&self, n: usize, w: &FiniteGroup) -> Result<GSet> {
        let tuples = self.all_tuples(n)?;
        self.tuples_over_wreath(n, w, tuples)
    }

    pub(crate) fn tuples_over_wreath(&self, n: usize, w: &FiniteGroup, tuples: Vec<Vec<u32>>) -> Result<GSet> {
        match w.wreath_base() {
            Some((b, k)) if b.same_as(&self.group) && k == n => {}
            _ => return Err(Error::GroupMismatch(format!("not the wreath product of the acting group with S_{n}"))),
        }
        let dims = tuples.iter().map(|t| t.iter().map(|&x| self.dims[x as usize]).sum()).collect();
        tuple_gset(w, tuples, dims, |e, t| {
            let (g, sigma) = w.wreath_parts(e).expect("wreath element");
            let mut out = vec![0u32; n];
            for (j, &x) in t.iter().enumerate() {
                out[sigma[j]] = self.act(g[sigma[j]], x as usize) as u32;
            }
            out
        })
    }

    /// Tuples whose coordinates lie in pairwise distinct orbits, and its
    /// complement (the big diagonal), both over `G ≀ S_n`.
    pub fn wreath_power_split(&self, n: usize) -> Result<(GSet, GSet)> {
        let w = wreath_product(&self.group, n)?;
        let orbit_of = self.quotient().orbit_of;
        let (distinct, diagonal): (Vec<_>, Vec<_>) = self.all_tuples(n)?.into_iter().partition(|t| {
            let mut seen = std::collections::HashSet::new();
            t.iter().all(|&x| seen.insert(orbit_of[x as usize]))
        });
        Ok((self.tuples_over_wreath(n, &w, distinct)?, self.tuples_over_wreath(n, &w, diagonal)?))
    }

    /// `Xⁿ ∖ Δ_G`: tuples with coordinates in pairwise distinct orbits.
    pub fn big_diagonal_complement(&self, n: usize) -> Result<GSet> {
        Ok(self.wreath_power_split(n)?.0)
    }

    /// Left cosets of the image of `emb` times `Z`: the cell `(j, x)` (id
    /// `j·|Z| + x`) is the class of `(t_j, x)`, with `t_j` the least member of
    /// the `j`-th coset.
    pub fn induced(&self, emb: &Homomorphism) -> Result<GSet> {
        if !emb.source().same_as(&self.group) {
            return Err(Error::GroupMismatch("embedding does not start at the acting group".into()));
        }
        if !emb.verify() {
            return Err(Error::NotHomomorphism);
        }
        if !emb.is_injective() {
            return Err(Error::NotInjective);
        }
        let h = emb.target();
        let mut preimage = vec![u32::MAX; h.order()];
        for g in self.group.elements() {
            preimage[emb.apply(g).index()] = g.0;
        }
        let mut coset_of = vec![usize::MAX; h.order()];
        let mut reps = Vec::new();
        for x in h.elements() {
            if coset_of[x.index()] == usize::MAX {
                for g in self.group.elements() {
                    coset_of[h.mul(x, emb.apply(g)).index()] = reps.len();
                }
                reps.push(x);
            }
        }
        let z = self.len();
        check_cells(reps.len() as u128 * z as u128)?;
        let mut table = Vec::with_capacity(h.order() * reps.len() * z);
        for e in h.elements() {
            for &t in &reps {
                let et = h.mul(e, t);
                let j = coset_of[et.index()];
                let g = Elem(preimage[h.mul(h.inv(reps[j]), et).index()]);
                table.extend((0..z).map(|x| (j * z + self.act(g, x)) as u32));
            }
        }
        let dims = (0..reps.len()).flat_map(|_| self.dims.iter().copied()).collect();
        Ok(GSet::from_table(h, dims, table))
    }
}

/// A G-set whose cells are the given tuples, with `act` computing the image
/// tuple. Used for powers and their subsets.
pub(crate) fn tuple_gset(
    group: &FiniteGroup,
    tuples: Vec<Vec<u32>>,
    dims: Vec<u32>,
    act: impl Fn(Elem, &[u32]) -> Vec<u32>,
) -> Result<GSet> {
    let index: HashMap<&[u32], u32> = tuples.iter().enumerate().map(|(i, t)| (t.as_slice(), i as u32)).collect();
    let mut table = Vec::with_capacity(group.order() * tuples.len());
    for e in group.elements() {
        for t in &tuples {
            let img = act(e, t);
            table.push(*index.get(img.as_slice()).ok_or(Error::NotInvariant)?);
        }
    }
    Ok(GSet::from_table(group, dims, table))
}

#[derive(Clone, Debug)]
pub struct Orbit {
    /// Least cell of the orbit.
    pub base: usize,
    pub dim: u32,
    pub stabilizer: Subgroup,
    /// Sorted.
    pub cells: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct OrbitDecomposition {
    pub orbits: Vec<Orbit>,
    orbit_of: Vec<usize>,
    transport: Vec<Elem>,
}

impl OrbitDecomposition {
    pub fn orbit_of(&self, x: usize) -> usize {
        self.orbit_of[x]
    }

    /// An element `h` with `h·base = x`, `base` the basepoint of `x`'s orbit.
    pub fn transport(&self, x: usize) -> Elem {
        self.transport[x]
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }
}

/// Multisets of size `n` from `points` points, as non-decreasing tuples.
pub fn symmetric_power(points: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, points: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in start..points {
            cur.push(x);
            rec(x, points, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, points, n, &mut Vec::new(), &mut out);
    out
}

/// Subsets of size `n` of `points` points, as increasing tuples.
pub fn configuration_space(points: usize, n: usize) -> Vec<Vec<usize>> {
    symmetric_power(points, n)
        .into_iter()
        .filter(|t| t.windows(2).all(|w| w[0] < w[1]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{find_embedding, named_group, subgroup_generated};

    fn s3() -> FiniteGroup {
        named_group("S3").unwrap()
    }

    #[test]
    fn coset_space_fixed_points() {
        let g = s3();
        let t = g.find_permutation(&[1, 0, 2]).unwrap();
        let h = subgroup_generated(&g, &[t]);
        let x = GSet::cosets(&g, &h).unwrap();
        assert_eq!(x.len(), 3);
        assert!(x.verify_action());
        assert_eq!(x.fixed_cells(&[t]).len(), 1);
        assert_eq!(x.fixed_cells(&[Elem::IDENTITY]).len(), 3);
        let c2 = named_group("C2").unwrap();
        let r = GSet::regular(&c2);
        assert!(r.fixed_cells(&[c2.generators()[0]]).is_empty());
    }

    #[test]
    fn restriction_to_subgroups() {
        let g = s3();
        let reg = GSet::regular(&g);
        let c3 = subgroup_generated(&g, &[g.find_permutation(&[1, 2, 0]).unwrap()]);
        assert_eq!(reg.restrict_action(&c3).unwrap().quotient().len(), 2);
        let triv = reg.restrict_action(&Subgroup::trivial(&g)).unwrap();
        assert_eq!(triv.quotient().len(), 6);
        let whole = reg.restrict_action(&Subgroup::whole(&g)).unwrap();
        assert_eq!(whole.len(), 6);
        assert_eq!(whole.quotient().len(), 1);
    }

    #[test]
    fn quotients() {
        let g = s3();
        assert_eq!(GSet::regular(&g).quotient_class(), LPoly::one());
        assert_eq!(GSet::trivial(&g, vec![0; 4]).quotient().len(), 4);
        let c2 = subgroup_generated(&g, &[g.find_permutation(&[1, 0, 2]).unwrap()]);
        let c3 = subgroup_generated(&g, &[g.find_permutation(&[1, 2, 0]).unwrap()]);
        let u = GSet::cosets(&g, &c2).unwrap().disjoint_union(&GSet::cosets(&g, &c3).unwrap()).unwrap();
        assert_eq!(u.quotient_class(), LPoly::constant(2));
        let d = u.quotient();
        for o in &d.orbits {
            assert_eq!(o.cells.len() * o.stabilizer.order(), 6);
            for &c in &o.cells {
                assert_eq!(u.act(d.transport(c), o.base), c);
            }
        }
    }

    #[test]
    fn induction_from_subgroups() {
        let g = s3();
        let c2 = named_group("C2").unwrap();
        let emb = find_embedding(&c2, &g).unwrap().unwrap();
        let ind = GSet::point(&c2).induced(&emb).unwrap();
        assert_eq!(ind.len(), 3);
        assert!(ind.verify_action());
        assert_eq!(ind.quotient().len(), 1);
        let id = Homomorphism::identity(&g);
        let x = GSet::regular(&g);
        assert_eq!(x.induced(&id).unwrap().permutation(g.generators()[1]), x.permutation(g.generators()[1]));
        let triv = FiniteGroup::trivial();
        let e = find_embedding(&triv, &g).unwrap().unwrap();
        let reg = GSet::point(&triv).induced(&e).unwrap();
        assert_eq!(reg.len(), 6);
        assert!(reg.fixed_cells(&[g.generators()[0]]).is_empty());
    }

    #[test]
    fn products_add_dimensions() {
        let c2 = named_group("C2").unwrap();
        let x = GSet::trivial(&c2, vec![1, 2]);
        let y = GSet::regular(&s3());
        let p = x.product(&y).unwrap();
        assert_eq!(p.len(), 12);
        assert!(p.verify_action());
        assert_eq!(p.dims()[0], 1);
        assert_eq!(p.dims()[6], 2);
        let pt = GSet::point(&FiniteGroup::trivial());
        assert_eq!(x.product(&pt).unwrap().dims(), x.dims());
    }

    #[test]
    fn wreath_powers() {
        let c2 = named_group("C2").unwrap();
        let free = GSet::regular(&c2);
        let w = free.wreath_power(2).unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.quotient().len(), 1);
        for n in 1..=3 {
            for x in [GSet::point(&c2), GSet::trivial(&c2, vec![0, 1]), GSet::regular(&c2)] {
                let p = x.wreath_power(n).unwrap();
                assert!(p.verify_action(), "n = {n}");
            }
        }
        let s = GSet::regular(&named_group("C3").unwrap()).wreath_power(2).unwrap();
        assert!(s.verify_action());
        assert_eq!(GSet::point(&c2).wreath_power(3).unwrap().len(), 1);
    }

    #[test]
    fn big_diagonals() {
        let triv = FiniteGroup::trivial();
        let two = GSet::trivial(&triv, vec![0, 0]);
        let (off, diag) = two.wreath_power_split(2).unwrap();
        assert_eq!(off.len(), 2);
        assert_eq!(diag.len(), 2);
        assert!(two.big_diagonal_complement(3).unwrap().is_empty());
        let c2 = named_group("C2").unwrap();
        assert!(GSet::regular(&c2).big_diagonal_complement(2).unwrap().is_empty());
    }

    #[test]
    fn symmetric_and_configuration_counts() {
        for n in 0..6 {
            assert_eq!(symmetric_power(2, n).len(), n + 1);
            assert_eq!(configuration_space(4, n).len(), [1, 4, 6, 4, 1, 0][n]);
        }
        assert_eq!(symmetric_power(3, 1), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn invalid_actions_are_rejected() {
        let c3 = named_group("C3").unwrap();
        // a transposition cannot be the image of an element of order 3
        let err = GSet::from_generator_images(&c3, vec![0, 0], &[vec![1, 0]]).unwrap_err();
        assert!(matches!(err, Error::NotAnAction(_)));
        let err = GSet::from_generator_images(&c3, vec![0, 1, 0], &[vec![1, 2, 0]]).unwrap_err();
        assert!(matches!(err, Error::NotAnAction(_)));
        let ok = GSet::from_generator_images(&c3, vec![0, 0, 0], &[vec![1, 2, 0]]).unwrap();
        assert_eq!(ok.quotient().len(), 1);
    }

    #[test]
    fn disjoint_union_needs_one_group() {
        let a = GSet::point(&named_group("C2").unwrap());
        let b = GSet::point(&named_group("C2").unwrap());
        assert!(matches!(a.disjoint_union(&b), Err(Error::GroupMismatch(_))));
        assert_eq!(a.disjoint_union(&GSet::empty(a.group())).unwrap().len(), 1);
    }
}
