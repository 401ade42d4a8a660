//! Values computed here by brute force, independently of the library, then
//! compared with what the library returns.

use num_bigint::BigInt;
use orbichar::euler::{chi_k_recursive, chi_k_tuples, verify_tamanoi};
use orbichar::grp::{conjugacy_classes, named_group, wreath_product, FiniteGroup};
use orbichar::gset::{symmetric_power, GSet};
use orbichar::power::macdonald_rhs;
use orbichar::series::partitions;

type Perm = Vec<usize>;

fn all_perms(n: usize) -> Vec<Perm> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_perms(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn compose(a: &Perm, b: &Perm) -> Perm {
    b.iter().map(|&i| a[i]).collect()
}

fn commute(a: &Perm, b: &Perm) -> bool {
    compose(a, b) == compose(b, a)
}

/// Number of pairwise commuting `arity`-tuples in `elems`.
fn commuting_tuples(elems: &[Perm], arity: usize) -> u64 {
    fn rec(elems: &[Perm], chosen: &mut Vec<usize>, arity: usize) -> u64 {
        if chosen.len() == arity {
            return 1;
        }
        let mut total = 0;
        for i in 0..elems.len() {
            if chosen.iter().all(|&j| commute(&elems[i], &elems[j])) {
                chosen.push(i);
                total += rec(elems, chosen, arity);
                chosen.pop();
            }
        }
        total
    }
    rec(elems, &mut Vec::new(), arity)
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

#[test]
fn chi_of_a_point_under_symmetric_groups() {
    for n in 1..=4 {
        let elems = all_perms(n);
        let x = GSet::point(&named_group(&format!("S{n}")).unwrap());
        for k in 0..=2 {
            let expected = BigInt::from(commuting_tuples(&elems, k + 1) / factorial(n as u64));
            assert_eq!(chi_k_tuples(&x, k).unwrap(), expected, "S{n}, k = {k}");
            assert_eq!(chi_k_recursive(&x, k), expected, "S{n}, k = {k}");
        }
    }
}

fn closure(gens: &[Perm]) -> Vec<Perm> {
    let mut out = vec![(0..gens[0].len()).collect::<Perm>()];
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let y = compose(&out[i], g);
            if !out.contains(&y) {
                out.push(y);
            }
        }
        i += 1;
    }
    out
}

#[test]
fn frozen_point_values() {
    // commuting-tuple counts divided by the group order, frozen from the
    // brute-force enumeration below
    let d4 = closure(&[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]);
    assert_eq!(d4.len(), 8);
    let brute: Vec<u64> = (1..=4).map(|a| commuting_tuples(&d4, a) / 8).collect();
    assert_eq!(brute, [1, 5, 22, 92]);
    let x = GSet::point(&named_group("D4").unwrap());
    let got: Vec<BigInt> = (0..4).map(|k| chi_k_recursive(&x, k)).collect();
    assert_eq!(got, [1, 5, 22, 92].map(BigInt::from));
    let x = GSet::point(&named_group("S3").unwrap());
    let got: Vec<BigInt> = (0..4).map(|k| chi_k_recursive(&x, k)).collect();
    assert_eq!(got, [1, 3, 8, 21].map(BigInt::from));
}

#[test]
fn partition_numbers() {
    // p(n) by the recurrence over the largest part
    let n = 7;
    let mut p = vec![vec![0u64; n + 1]; n + 1];
    p[0].fill(1);
    for k in 1..=n {
        for m in 1..=n {
            p[k][m] = p[k][m - 1] + if k >= m { p[k - m][m] } else { 0 };
        }
    }
    let oracle: Vec<BigInt> = (0..=n).map(|k| BigInt::from(p[k][n.min(k).max(1)])).collect();
    assert_eq!(oracle, [1, 1, 2, 3, 5, 7, 11, 15].map(BigInt::from));
    let counted: Vec<BigInt> = (0..=n).map(|k| BigInt::from(partitions(k).len())).collect();
    assert_eq!(counted, oracle);
    let r = verify_tamanoi(&GSet::point(&FiniteGroup::trivial()), 1, n).unwrap();
    assert_eq!(r.lhs, oracle);
    assert_eq!(r.rhs, oracle);
}

#[test]
fn commuting_triples_of_symmetric_groups_match_the_product() {
    let oracle: Vec<BigInt> = std::iter::once(BigInt::from(1))
        .chain((1..=4).map(|n| BigInt::from(commuting_tuples(&all_perms(n), 3) / factorial(n as u64))))
        .collect();
    assert_eq!(oracle, [1, 1, 4, 8, 21].map(BigInt::from));
    assert_eq!(macdonald_rhs(&BigInt::from(1), 2, 4).unwrap().into_coeffs(), oracle);
}

/// Signed permutations of `0..n` as permutations of `0..2n` (`i` and `i+n`
/// are the two signs of `i`).
fn hyperoctahedral(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    for p in all_perms(n) {
        for signs in 0..(1u32 << n) {
            let mut q = vec![0; 2 * n];
            for i in 0..n {
                let flip = signs >> i & 1 == 1;
                let (a, b) = if flip { (p[i] + n, p[i]) } else { (p[i], p[i] + n) };
                q[i] = a;
                q[i + n] = b;
            }
            out.push(q);
        }
    }
    out
}

fn class_count(elems: &[Perm]) -> usize {
    let mut seen = std::collections::HashSet::new();
    let mut classes = 0;
    for x in elems {
        if seen.contains(x) {
            continue;
        }
        classes += 1;
        for g in elems {
            let inv = {
                let mut v = vec![0; g.len()];
                for (i, &gi) in g.iter().enumerate() {
                    v[gi] = i;
                }
                v
            };
            seen.insert(compose(&compose(g, x), &inv));
        }
    }
    classes
}

#[test]
fn wreath_class_counts() {
    let c2 = named_group("C2").unwrap();
    for (n, expected) in [(1, 2), (2, 5), (3, 10)] {
        assert_eq!(class_count(&hyperoctahedral(n)), expected);
        assert_eq!(conjugacy_classes(&wreath_product(&c2, n).unwrap()).len(), expected);
    }
}

#[test]
fn multisets() {
    for points in 1..=3usize {
        for n in 0..=5usize {
            let mut count = 0;
            let total = points.pow(n as u32);
            for i in 0..total {
                let mut digits = Vec::with_capacity(n);
                let mut j = i;
                for _ in 0..n {
                    digits.push(j % points);
                    j /= points;
                }
                if digits.windows(2).all(|w| w[0] <= w[1]) {
                    count += 1;
                }
            }
            assert_eq!(symmetric_power(points, n).len(), count, "{points} points, n = {n}");
        }
    }
}
