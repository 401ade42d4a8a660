//! Power structures: the closed binomial formula, λ-structures and the
//! power structure each λ-structure determines by unique factorization.

use num_bigint::BigInt;


use crate::error::Result;
use crate::lpoly::LPoly;
use crate::series::{binomial, partitions, Ring, Series};

/// `(A(t))^m` by the multinomial formula
/// `Σ_k Σ_{Σik_i=k} m(m−1)⋯(m−s+1)/∏k_i! · ∏a_i^{k_i} t^k`, `s = Σk_i`.
/// The scalar is always an integer, so this works over any ring.
pub fn power_standard<R: Ring>(a: &Series<R>, m: &BigInt) -> Series<R> {
    let n = a.order();
    let mut out = Series::one(n).into_coeffs();
    for (k, slot) in out.iter_mut().enumerate().skip(1) {
        let mut total = R::zero();
        for p in partitions(k) {
            let s: usize = p.iter().sum();
            // multinomial: binom(m, s) · s! / ∏k_i!
            let mut scalar = binomial(m, s);
            let mut rest = s;
            for &ki in &p {
                scalar *= binomial(&BigInt::from(rest), ki);
                rest -= ki;
            }
            if scalar == BigInt::from(0) {
                continue;
            }
            let mut prod = R::one();
            for (i, &ki) in p.iter().enumerate() {
                for _ in 0..ki {
                    prod = prod.mul(a.coeff(i + 1));
                }
            }
            total = total.add(&prod.scale(&scalar));
        }
        *slot = total;
    }
    Series::new(out, n)
}

/// An additive-to-multiplicative map `a ↦ λ_a(t) = 1 + a·t + …`.
pub trait LambdaStructure<R: Ring> {
    /// `λ_a(t)` modulo `t^{n+1}`.
    fn lambda(&self, a: &R, n: usize) -> Result<Series<R>>;

    fn name(&self) -> String;
}

impl<R: Ring, L: LambdaStructure<R> + ?Sized> LambdaStructure<R> for &L {
    fn lambda(&self, a: &R, n: usize) -> Result<Series<R>> {
        (**self).lambda(a, n)
    }
    fn name(&self) -> String {
        (**self).name()
    }
}

/// `λ_m(t) = (1−t)^{−m}` over ℤ.
#[derive(Clone, Copy, Debug, Default)]
pub struct ZetaInt;

impl LambdaStructure<BigInt> for ZetaInt {
    fn lambda(&self, m: &BigInt, n: usize) -> Result<Series<BigInt>> {
        Ok(Series::from_fn(n, |i| binomial(&(m + BigInt::from(i) - 1), i)))
    }
    fn name(&self) -> String {
        "zeta".into()
    }
}

/// `λ_m(t) = (1+t)^m` over ℤ.
#[derive(Clone, Copy, Debug, Default)]
pub struct ConfigInt;

impl LambdaStructure<BigInt> for ConfigInt {
    fn lambda(&self, m: &BigInt, n: usize) -> Result<Series<BigInt>> {
        Ok(Series::from_fn(n, |i| binomial(m, i)))
    }
    fn name(&self) -> String {
        "configuration".into()
    }
}

/// `λ_{Σc_q𝕃^q}(t) = ∏_q (1 − 𝕃^q t)^{−c_q}` on `ℤ[𝕃^ℚ]`; on integers it
/// is [`ZetaInt`], and `λ_{𝕃^q·m}(t) = λ_m(𝕃^q t)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ZetaL;

impl LambdaStructure<LPoly> for ZetaL {
    fn lambda(&self, a: &LPoly, n: usize) -> Result<Series<LPoly>> {
        let mut out = Series::one(n);
        for (q, c) in a.terms() {
            let factor = Series::from_fn(n, |i| {
                LPoly::term(binomial(&(c + BigInt::from(i) - 1), i), q * num_rational::Rational64::from_integer(i as i64))
            });
            out = out.mul(&factor)?;
        }
        Ok(out)
    }
    fn name(&self) -> String {
        "zeta-L".into()
    }
}

/// `λ'_a(t) = (λ_a(−t))^{−1}`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Opposite<L>(pub L);

impl<R: Ring, L: LambdaStructure<R>> LambdaStructure<R> for Opposite<L> {
    fn lambda(&self, a: &R, n: usize) -> Result<Series<R>> {
        self.0.lambda(a, n)?.negate_variable().inverse()
    }
    fn name(&self) -> String {
        format!("opposite({})", self.0.name())
    }
}

/// `b_1..b_N` with `A(t) = ∏_i λ_{b_i}(t^i) mod t^{N+1}`; entry 0 of the
/// result is `b_1`.
pub fn lambda_factorize<R: Ring, L: LambdaStructure<R>>(a: &Series<R>, structure: &L) -> Result<Vec<R>> {
    let n = a.order();
    if *a.coeff(0) != R::one() {
        return Err(crate::error::Error::NonUnitConstant);
    }
    let mut rest = a.clone();
    let mut b = Vec::with_capacity(n);
    for i in 1..=n {
        let bi = rest.coeff(i).clone();
        if !bi.is_zero() {
            let factor = lambda_at_power(structure, &bi, i, n)?;
            rest = rest.mul(&factor.inverse()?)?;
        }
        b.push(bi);
    }
    debug_assert!(rest.is_one_mod(n + 1));
    Ok(b)
}

/// `λ_b(t^i)` modulo `t^{n+1}`.
fn lambda_at_power<R: Ring, L: LambdaStructure<R>>(structure: &L, b: &R, i: usize, n: usize) -> Result<Series<R>> {
    let short = structure.lambda(b, n / i)?;
    Ok(Series::new(short.into_coeffs(), n).substitute_power(i))
}

/// `∏_i λ_{b_i}(t^i)`.
pub fn lambda_product<R: Ring, L: LambdaStructure<R>>(b: &[R], structure: &L, n: usize) -> Result<Series<R>> {
    let mut out = Series::one(n);
    for (i, bi) in b.iter().enumerate().take(n) {
        if !bi.is_zero() {
            out = out.mul(&lambda_at_power(structure, bi, i + 1, n)?)?;
        }
    }
    Ok(out)
}

/// `(A(t))^m = ∏_i λ_{m·b_i}(t^i)` for the factorization `A = ∏ λ_{b_i}(t^i)`.
pub fn power_via_lambda<R: Ring, L: LambdaStructure<R>>(a: &Series<R>, m: &R, structure: &L) -> Result<Series<R>> {
    let b = lambda_factorize(a, structure)?;
    let mb: Vec<R> = b.iter().map(|x| m.mul(x)).collect();
    lambda_product(&mb, structure, a.order())
}

/// Tuples `(r_1..r_k)` of positive integers with `r_1⋯r_k ≤ n`, in
/// lexicographic order.
pub fn bounded_product_tuples(k: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, budget: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for r in 1..=budget {
            cur.push(r);
            rec(k, budget / r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, n, &mut Vec::new(), &mut out);
    out
}

/// `r_2·r_3²⋯r_k^{k−1}`.
pub fn tuple_weight(r: &[usize]) -> u64 {
    r.iter().enumerate().map(|(i, &x)| (x as u64).pow(i as u32)).product()
}

/// `∏_{r_1⋯r_k ≤ N} (1 − t^{r_1⋯r_k})^{r_2 r_3²⋯r_k^{k−1}}`, raised to
/// `−chi` with the standard power structure. For `k = 0` this is
/// `(1−t)^{−chi}`.
pub fn macdonald_rhs(chi: &BigInt, k: usize, n: usize) -> Result<Series<BigInt>> {
    let base = if k == 0 {
        Series::new(vec![BigInt::from(1), -BigInt::from(1)], n)
    } else {
        let mut p = Series::one(n);
        for r in bounded_product_tuples(k, n) {
            let deg: usize = r.iter().product();
            let factor = Series::new(vec![BigInt::from(1)], n).sub(&Series::monomial(BigInt::from(1), deg, n))?;
            p = p.mul(&factor.pow_int(tuple_weight(&r) as i64)?)?;
        }
        p
    };
    Ok(power_standard(&base, &-chi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lpoly::Q;

    fn z(v: &[i64], n: usize) -> Series<BigInt> {
        Series::new(v.iter().map(|&x| BigInt::from(x)).collect(), n)
    }

    fn ints(s: &Series<BigInt>) -> Vec<i64> {
        s.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn standard_power_examples() {
        let one_plus_t = z(&[1, 1], 5);
        assert_eq!(ints(&power_standard(&one_plus_t, &BigInt::from(-1))), vec![1, -1, 1, -1, 1, -1]);
        let one_minus_t = z(&[1, -1], 5);
        assert_eq!(ints(&power_standard(&one_minus_t, &BigInt::from(-2))), vec![1, 2, 3, 4, 5, 6]);
        let a = z(&[1, 3, -2, 7], 5);
        assert_eq!(power_standard(&a, &BigInt::from(0)), Series::one(5));
        assert_eq!(power_standard(&a, &BigInt::from(1)), a);
        assert_eq!(power_standard(&a, &BigInt::from(3)), a.pow_int(3).unwrap());
        assert_eq!(power_standard(&a, &BigInt::from(-2)), a.pow_int(-2).unwrap());
    }

    #[test]
    fn factorization_examples() {
        let a = z(&[1, 1, 1], 6);
        let b = lambda_factorize(&a, &ZetaInt).unwrap();
        assert_eq!(b, [1, 0, -1, 0, 0, 0].map(BigInt::from).to_vec());
        assert_eq!(lambda_product(&b, &ZetaInt, 6).unwrap(), a);
        let c = ZetaInt.lambda(&BigInt::from(4), 6).unwrap();
        assert_eq!(lambda_factorize(&c, &ZetaInt).unwrap(), [4, 0, 0, 0, 0, 0].map(BigInt::from).to_vec());
        assert!(lambda_factorize(&Series::<BigInt>::one(4), &ConfigInt).unwrap().iter().all(|x| *x == BigInt::from(0)));
    }

    #[test]
    fn power_of_geometric_series_is_binomial() {
        let g = ZetaInt.lambda(&BigInt::from(1), 6).unwrap();
        for m in -3..=4 {
            let m = BigInt::from(m);
            let expected = Series::from_fn(6, |k| binomial(&(&m + BigInt::from(k) - 1), k));
            assert_eq!(power_via_lambda(&g, &m, &ZetaInt).unwrap(), expected);
            assert_eq!(power_via_lambda(&g, &m, &ConfigInt).unwrap(), expected);
            assert_eq!(power_standard(&g, &m), expected);
        }
    }

    #[test]
    fn opposite_of_zeta_is_configuration() {
        for m in -2..=3 {
            let m = BigInt::from(m);
            assert_eq!(Opposite(ZetaInt).lambda(&m, 6).unwrap(), ConfigInt.lambda(&m, 6).unwrap());
            assert_eq!(Opposite(Opposite(ZetaInt)).lambda(&m, 6).unwrap(), ZetaInt.lambda(&m, 6).unwrap());
        }
    }

    #[test]
    fn zeta_on_l_powers_shifts_the_variable() {
        let l = LPoly::l_pow(Q::from_integer(1));
        let s = ZetaL.lambda(&l, 4).unwrap();
        let expected = Series::from_fn(4, |i| LPoly::l_pow(Q::from_integer(i as i64)));
        assert_eq!(s, expected);
        assert_eq!(ZetaL.lambda(&LPoly::one(), 3).unwrap(), Series::new(vec![LPoly::one(); 4], 3));
    }

    #[test]
    fn macdonald_right_hand_sides() {
        let p = macdonald_rhs(&BigInt::from(1), 1, 8).unwrap();
        assert_eq!(ints(&p), vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(ints(&macdonald_rhs(&BigInt::from(2), 0, 4).unwrap()), vec![1, 2, 3, 4, 5]);
        assert_eq!(macdonald_rhs(&BigInt::from(0), 3, 5).unwrap(), Series::one(5));
        assert_eq!(ints(&macdonald_rhs(&BigInt::from(2), 1, 3).unwrap()), vec![1, 2, 5, 10]);
    }

    #[test]
    fn bounded_tuples() {
        assert_eq!(bounded_product_tuples(2, 3), vec![vec![1, 1], vec![1, 2], vec![1, 3], vec![2, 1], vec![3, 1]]);
        assert_eq!(tuple_weight(&[2, 3, 2]), 3 * 4);
    }
}
