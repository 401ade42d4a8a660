//! Euler characteristics of G-sets: the plain one, and `χ^(k)` both as an
//! average over commuting tuples and by recursion over conjugacy classes.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::grp::{centralizer, commuting_tuples_by_class, conjugacy_classes, Homomorphism, Subgroup};
use crate::gset::GSet;
use crate::k0::{class_of, FgrClass};
use crate::power::macdonald_rhs;

/// Largest order accepted by [`EulerOrder::new`].
pub const MAX_EULER_ORDER: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EulerOrder(usize);

impl EulerOrder {
    pub fn new(k: usize) -> Result<EulerOrder> {
        if k > MAX_EULER_ORDER {
            return Err(Error::descriptor("k", format!("order {k} exceeds the maximum {MAX_EULER_ORDER}")));
        }
        Ok(EulerOrder(k))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

/// Number of cells; each cell has Euler characteristic 1.
pub fn euler_char(x: &GSet) -> BigInt {
    BigInt::from(x.len())
}

/// `(1/|G|)·Σ χ(X^⟨g_0..g_k⟩)` over pairwise commuting `(k+1)`-tuples. The
/// first coordinate runs over class representatives weighted by class
/// size; the division is checked to be exact.
pub fn chi_k_tuples(x: &GSet, k: usize) -> Result<BigInt> {
    let g = x.group();
    let mut total = BigInt::zero();
    commuting_tuples_by_class(g, k + 1, |tuple, weight| {
        let fixed = (0..x.len()).filter(|&c| tuple.iter().all(|&e| x.act(e, c) == c)).count();
        total += BigInt::from(weight) * BigInt::from(fixed);
    });
    let (q, r) = total.div_rem(&BigInt::from(g.order()));
    if !r.is_zero() {
        return Err(Error::InexactDivision { sum: total.to_string(), order: g.order() });
    }
    Ok(q)
}

/// `χ^(k)(X,G) = Σ_{[g]} χ^(k−1)(X^⟨g⟩, C_G(g))`, `χ^(0)(X,G) = #orbits`.
pub fn chi_k_recursive(x: &GSet, k: usize) -> BigInt {
    let cells: Vec<usize> = (0..x.len()).collect();
    Recursion { x, memo: HashMap::new() }.run(&cells, &Subgroup::whole(x.group()), k)
}

/// Largest subgroup order whose member list is used as a memo key.
const MEMO_ORDER: usize = 2048;

struct Recursion<'a> {
    x: &'a GSet,
    memo: HashMap<(Vec<usize>, Vec<u32>, usize), BigInt>,
}

impl Recursion<'_> {
    fn run(&mut self, cells: &[usize], sub: &Subgroup, k: usize) -> BigInt {
        if cells.is_empty() {
            return BigInt::zero();
        }
        if k == 0 {
            return BigInt::from(self.x.orbits_within(cells, sub).len());
        }
        let key = (sub.order() <= MEMO_ORDER).then(|| (cells.to_vec(), sub.members_raw().to_vec(), k));
        if let Some(v) = key.as_ref().and_then(|key| self.memo.get(key)) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        for class in sub.conjugacy_classes() {
            let g = class.representative;
            let fixed: Vec<usize> = cells.iter().copied().filter(|&c| self.x.act(g, c) == c).collect();
            if !fixed.is_empty() {
                total += self.run(&fixed, &sub.centralizer(g), k - 1);
            }
        }
        if let Some(key) = key {
            self.memo.insert(key, total.clone());
        }
        total
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductionRow {
    pub k: usize,
    pub original_tuples: BigInt,
    pub induced_tuples: BigInt,
    pub original_recursive: BigInt,
    pub induced_recursive: BigInt,
}

impl InductionRow {
    pub fn passed(&self) -> bool {
        self.original_tuples == self.induced_tuples
            && self.original_recursive == self.induced_recursive
            && self.original_tuples == self.original_recursive
    }
}

#[derive(Clone, Debug)]
pub struct InductionReport {
    pub rows: Vec<InductionRow>,
    /// Classes `[g]` of the small group whose fixed-set decomposition was
    /// compared.
    pub classes_checked: usize,
    /// Whether every fixed-set decomposition matched at class level.
    pub decomposition_ok: bool,
}

impl InductionReport {
    pub fn passed(&self) -> bool {
        self.decomposition_ok && self.rows.iter().all(InductionRow::passed)
    }
}

/// Compares `χ^(k)(ind Z, H)` with `χ^(k)(Z, G)` for `k ≤ kmax` by both
/// definitions. Also checks, for each `g ∈ G`, that the `C_H(g)`-set
/// `(ind Z)^g` has the class of `⊔ (Z^{g'}, C_G(g'))` over the classes
/// `[g']` of `G` that fuse with `[g]` in `H`, and that elements of `H` not
/// conjugate into `G` fix nothing.
pub fn verify_induction_invariance(z: &GSet, emb: &Homomorphism, kmax: usize) -> Result<InductionReport> {
    let ind = z.induced(emb)?;
    let mut rows = Vec::new();
    for k in 0..=kmax {
        rows.push(InductionRow {
            k,
            original_tuples: chi_k_tuples(z, k)?,
            induced_tuples: chi_k_tuples(&ind, k)?,
            original_recursive: chi_k_recursive(z, k),
            induced_recursive: chi_k_recursive(&ind, k),
        });
    }
    let (g, h) = (z.group(), emb.target());
    let mut h_class = vec![0usize; h.order()];
    for (i, c) in conjugacy_classes(h).iter().enumerate() {
        for m in &c.members {
            h_class[m.index()] = i;
        }
    }
    let mut ok = true;
    let g_classes = conjugacy_classes(g);
    let mut meets = vec![false; conjugacy_classes(h).len()];
    for c in g_classes {
        let image = emb.apply(c.representative);
        meets[h_class[image.index()]] = true;
        let lhs = class_of(&ind.fixed_set(&[image], &centralizer(h, image))?)?;
        let mut rhs = FgrClass::zero();
        for d in g_classes.iter().filter(|d| h_class[emb.apply(d.representative).index()] == h_class[image.index()]) {
            let gp = d.representative;
            rhs = rhs.add(&class_of(&z.fixed_set(&[gp], &centralizer(g, gp))?)?);
        }
        ok &= lhs == rhs;
    }
    for (i, c) in conjugacy_classes(h).iter().enumerate() {
        if !meets[i] {
            ok &= ind.fixed_cells(&[c.representative]).is_empty();
        }
    }
    Ok(InductionReport { rows, classes_checked: g_classes.len(), decomposition_ok: ok })
}

/// Both sides of the Macdonald-type identity for `χ^(k)` of wreath powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TamanoiReport {
    pub k: usize,
    /// `χ^(k)(X, G)`, the exponent on the product side.
    pub chi: BigInt,
    /// `χ^(k)(Xⁿ, G_n)` for `n = 0..=N`.
    pub lhs: Vec<BigInt>,
    /// Coefficients of the product side.
    pub rhs: Vec<BigInt>,
}

impl TamanoiReport {
    pub fn passed(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn verify_tamanoi(x: &GSet, k: usize, n: usize) -> Result<TamanoiReport> {
    let chi = chi_k_recursive(x, k);
    let mut lhs = vec![BigInt::from(1)];
    for m in 1..=n {
        lhs.push(chi_k_recursive(&x.wreath_power(m)?, k));
    }
    let rhs = macdonald_rhs(&chi, k, n)?.into_coeffs();
    Ok(TamanoiReport { k, chi, lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{find_embedding, named_group, subgroup_generated, FiniteGroup};

    fn g(name: &str) -> FiniteGroup {
        named_group(name).unwrap()
    }

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn tamanoi_over_a_point() {
        let r = verify_tamanoi(&GSet::point(&FiniteGroup::trivial()), 1, 6).unwrap();
        assert!(r.passed());
        assert_eq!(r.lhs, [1, 1, 2, 3, 5, 7, 11].map(int));
        let r = verify_tamanoi(&GSet::point(&g("C2")), 1, 3).unwrap();
        assert_eq!(r.lhs, [1, 2, 5, 10].map(int));
        assert!(r.passed());
        let r = verify_tamanoi(&GSet::trivial(&g("C2"), vec![0, 0]), 2, 2).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn plain_euler_characteristic_counts_cells() {
        let c2 = g("C2");
        assert_eq!(euler_char(&GSet::empty(&c2)), int(0));
        let x = GSet::trivial(&c2, vec![0, 3, 1]);
        assert_eq!(euler_char(&x), int(3));
        assert_eq!(euler_char(&x.wreath_power(2).unwrap()), int(9));
    }

    #[test]
    fn point_values() {
        let s3 = GSet::point(&g("S3"));
        assert_eq!(chi_k_tuples(&s3, 1).unwrap(), int(3));
        assert_eq!(chi_k_tuples(&s3, 2).unwrap(), int(8));
        assert_eq!(chi_k_recursive(&s3, 1), int(3));
        assert_eq!(chi_k_recursive(&s3, 2), int(8));
        let c2 = GSet::point(&g("C2"));
        assert_eq!(chi_k_recursive(&c2, 1), int(2));
        assert_eq!(chi_k_recursive(&c2, 2), int(4));
    }

    #[test]
    fn transitive_sets_have_one_orbit() {
        let s3 = g("S3");
        let h = subgroup_generated(&s3, &[s3.find_permutation(&[1, 0, 2]).unwrap()]);
        assert_eq!(chi_k_recursive(&GSet::cosets(&s3, &h).unwrap(), 0), int(1));
    }

    #[test]
    fn trivial_group_gives_plain_count() {
        let x = GSet::trivial(&FiniteGroup::trivial(), vec![0, 0, 2, 1]);
        for k in 0..4 {
            assert_eq!(chi_k_tuples(&x, k).unwrap(), int(4));
            assert_eq!(chi_k_recursive(&x, k), int(4));
        }
    }

    #[test]
    fn not_multiplicative_within_one_group() {
        let c2 = g("C2");
        let pt = GSet::point(&c2);
        let sq = pt.diagonal_product(&pt).unwrap();
        assert_eq!(chi_k_recursive(&sq, 1), int(2));
        let across = pt.product(&pt).unwrap();
        assert_eq!(chi_k_recursive(&across, 1), int(4));
    }

    #[test]
    fn order_bound() {
        assert!(EulerOrder::new(4).is_ok());
        assert!(EulerOrder::new(5).is_err());
    }

    #[test]
    fn induction_from_c2_into_s3() {
        let (c2, s3) = (g("C2"), g("S3"));
        let emb = find_embedding(&c2, &s3).unwrap().unwrap();
        for z in [GSet::point(&c2), GSet::regular(&c2), GSet::trivial(&c2, vec![0, 1])] {
            let r = verify_induction_invariance(&z, &emb, 3).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        let r = verify_induction_invariance(&GSet::point(&c2), &emb, 1).unwrap();
        assert_eq!(r.rows[1].induced_recursive, int(2));
    }
}
