//! Kapranov zeta and configuration series of G-sets, the λ-structures they
//! define on [`FgrClass`], and the explicit geometric power formula.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::grp::{twisted_product_group, FiniteGroup};
use crate::gset::{tuple_gset, GSet};
use crate::k0::{class_of, FgrClass, GroupClassId};
use crate::limits::Limits;
use crate::power::{power_via_lambda, LambdaStructure};
use crate::series::Series;

/// `1 + Σ_n [(Zⁿ, G_n)] tⁿ`.
pub fn kapranov_zeta_model(z: &GSet, n: usize) -> Result<Series<FgrClass>> {
    let mut coeffs = vec![FgrClass::one()];
    for k in 1..=n {
        coeffs.push(class_of(&z.wreath_power(k)?)?);
    }
    Ok(Series::new(coeffs, n))
}

/// `1 + Σ_n [(Zⁿ∖Δ_G, G_n)] tⁿ`.
pub fn lambda_series_model(z: &GSet, n: usize) -> Result<Series<FgrClass>> {
    let orbits = z.quotient().len();
    let mut coeffs = vec![FgrClass::one()];
    for k in 1..=n.min(orbits) {
        coeffs.push(class_of(&z.big_diagonal_complement(k)?)?);
    }
    Ok(Series::new(coeffs, n))
}

/// A cell of dimension `d` with the representative of `id` acting.
fn point_of(id: GroupClassId, dim: u32) -> GSet {
    GSet::point_with_dim(&id.representative(), dim)
}

fn extend_over_terms(
    a: &FgrClass,
    n: usize,
    mut series: impl FnMut(GroupClassId, u32) -> Result<Series<FgrClass>>,
) -> Result<Series<FgrClass>> {
    let mut out = Series::one(n);
    for (g, d, c) in a.terms() {
        let c = i64::try_from(c).map_err(|_| Error::descriptor("exponent", "coefficient too large"))?;
        out = out.mul(&series(g, d)?.pow_int(c)?)?;
    }
    Ok(out)
}

/// `λ_{[(Z,G)]} = ζ_{(Z,G)}`, extended to all classes multiplicatively.
#[derive(Clone, Copy, Debug, Default)]
pub struct FgrZeta;

impl LambdaStructure<FgrClass> for FgrZeta {
    fn lambda(&self, a: &FgrClass, n: usize) -> Result<Series<FgrClass>> {
        extend_over_terms(a, n, |g, d| kapranov_zeta_model(&point_of(g, d), n))
    }
    fn name(&self) -> String {
        "zeta".into()
    }
}

/// `λ_{[(Z,G)]} = λ_{(Z,G)}`, the configuration series. On a point class
/// it is `1 + (S,d)·t`.
#[derive(Clone, Copy, Debug, Default)]
pub struct FgrConfig;

impl LambdaStructure<FgrClass> for FgrConfig {
    fn lambda(&self, a: &FgrClass, n: usize) -> Result<Series<FgrClass>> {
        extend_over_terms(a, n, |g, d| lambda_series_model(&point_of(g, d), n))
    }
    fn name(&self) -> String {
        "configuration".into()
    }
}

/// One summand of a series coefficient: the G-set `set` placed in degree
/// `degree ≥ 1`. A series `1 + Σ [A_i] tⁱ` is the list `(i, A_i)`; several
/// pieces may share a degree.
#[derive(Clone, Debug)]
pub struct Piece {
    pub degree: usize,
    pub set: GSet,
}

impl Piece {
    pub fn new(degree: usize, set: GSet) -> Piece {
        Piece { degree, set }
    }
}

/// The series `1 + Σ [piece]·t^{degree}` as classes.
pub fn pieces_series(pieces: &[Piece], n: usize) -> Result<Series<FgrClass>> {
    let mut coeffs = vec![FgrClass::zero(); n + 1];
    coeffs[0] = FgrClass::one();
    for p in pieces.iter().filter(|p| p.degree <= n) {
        coeffs[p.degree] = coeffs[p.degree].add(&class_of(&p.set)?);
    }
    Ok(Series::new(coeffs, n))
}

/// Multiplicity vectors `k_p` over the pieces with `Σ degree_p·k_p = k`, in
/// lexicographic order.
fn piece_partitions(degrees: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(degrees: &[usize], i: usize, remaining: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == degrees.len() {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for m in 0..=remaining / degrees[i] {
            cur.push(m);
            rec(degrees, i + 1, remaining - m * degrees[i], cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(degrees, 0, k, &mut Vec::new(), &mut out);
    out
}

fn checked_cells(m: usize, total: usize, parts: &[(usize, usize)]) -> Result<()> {
    let mut count: u128 = (m as u128).checked_pow(total as u32).unwrap_or(u128::MAX);
    for &(len, k) in parts {
        count = count.saturating_mul((len as u128).checked_pow(k as u32).unwrap_or(u128::MAX));
    }
    let bound = Limits::current().max_group_order;
    if count > bound as u128 {
        return Err(Error::GroupTooLarge { order: count, bound });
    }
    Ok(())
}

/// The G-set `(M^{Σk_p}∖Δ_G) × ∏ A_p^{k_p}` over `G_{{k_p}}`, where each
/// `S_{k_p}` permutes its block of `(M × A_p)` coordinates.
pub fn power_summand(m: &GSet, pieces: &[&GSet], ks: &[usize]) -> Result<GSet> {
    let parts: Vec<(FiniteGroup, usize)> = pieces.iter().zip(ks).map(|(a, &k)| (a.group().clone(), k)).collect();
    let group = twisted_product_group(m.group(), &parts)?;
    let total: usize = ks.iter().sum();
    checked_cells(m.len(), total, &pieces.iter().zip(ks).map(|(a, &k)| (a.len(), k)).collect::<Vec<_>>())?;
    let orbit_of = m.quotient();
    // m-coordinates in pairwise distinct orbits
    let mut heads: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..total {
        heads = heads
            .into_iter()
            .flat_map(|t| {
                (0..m.len() as u32)
                    .filter(|&x| t.iter().all(|&y| orbit_of.orbit_of(y as usize) != orbit_of.orbit_of(x as usize)))
                    .map(|x| {
                        let mut t = t.clone();
                        t.push(x);
                        t
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    let mut tuples = heads;
    for (a, &k) in pieces.iter().zip(ks) {
        for _ in 0..k {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    (0..a.len() as u32).map(move |x| {
                        let mut t = t.clone();
                        t.push(x);
                        t
                    })
                })
                .collect();
        }
    }
    let dims = tuples
        .iter()
        .map(|t| {
            let mut d: u32 = t[..total].iter().map(|&x| m.dim(x as usize)).sum();
            let mut off = total;
            for (a, &k) in pieces.iter().zip(ks) {
                d += t[off..off + k].iter().map(|&x| a.dim(x as usize)).sum::<u32>();
                off += k;
            }
            d
        })
        .collect();
    tuple_gset(&group, tuples, dims, |e, t| {
        let parts = group.twisted_parts(e).expect("twisted element");
        let mut out = vec![0u32; t.len()];
        let mut m_off = 0;
        let mut a_off = total;
        for (p, a) in pieces.iter().enumerate() {
            let sigma = &parts.perms[p];
            for (j, &s) in sigma.iter().enumerate() {
                out[m_off + s] = m.act(parts.base[m_off + s], t[m_off + j] as usize) as u32;
                out[a_off + s] = a.act(parts.parts[p][s], t[a_off + j] as usize) as u32;
            }
            m_off += sigma.len();
            a_off += sigma.len();
        }
        out
    })
}

/// The summand G-sets of `(A(t))^{[M]}` by degree, for `A` given by pieces.
pub fn effective_power_sets(pieces: &[Piece], m: &GSet, n: usize) -> Result<Vec<Vec<GSet>>> {
    let mut out = vec![Vec::new(); n + 1];
    out[0].push(GSet::point(&FiniteGroup::trivial()));
    let pieces: Vec<&Piece> = pieces.iter().filter(|p| p.degree >= 1 && p.degree <= n).collect();
    let degrees: Vec<usize> = pieces.iter().map(|p| p.degree).collect();
    let orbits = m.quotient().len();
    for (k, slot) in out.iter_mut().enumerate().skip(1) {
        for ks in piece_partitions(&degrees, k) {
            if ks.iter().sum::<usize>() > orbits {
                continue;
            }
            let used: Vec<(usize, usize)> = ks.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, &c)| (i, c)).collect();
            let sets: Vec<&GSet> = used.iter().map(|&(i, _)| &pieces[i].set).collect();
            let counts: Vec<usize> = used.iter().map(|&(_, c)| c).collect();
            slot.push(power_summand(m, &sets, &counts)?);
        }
    }
    Ok(out)
}

/// `(A(t))^{[(M,G)]}` by the geometric formula, for `A` given by pieces.
pub fn effective_power_pieces(pieces: &[Piece], m: &GSet, n: usize) -> Result<Series<FgrClass>> {
    let mut coeffs = Vec::with_capacity(n + 1);
    for sets in effective_power_sets(pieces, m, n)? {
        let mut c = FgrClass::zero();
        for s in &sets {
            c = c.add(&class_of(s)?);
        }
        coeffs.push(c);
    }
    Ok(Series::new(coeffs, n))
}

/// `(1 + [A_1]t + [A_2]t² + …)^{[(M,G)]}`; `a[i]` is `A_{i+1}`.
pub fn effective_power(a: &[GSet], m: &GSet, n: usize) -> Result<Series<FgrClass>> {
    let pieces: Vec<Piece> = a.iter().enumerate().map(|(i, s)| Piece::new(i + 1, s.clone())).collect();
    effective_power_pieces(&pieces, m, n)
}

/// The `t²` data separating the ζ and configuration power structures on
/// `(1+t)^{[(Z,G)]}`.
#[derive(Clone, Debug)]
pub struct DivergenceReport {
    /// `[(Δ_G, G₂)]`, the big diagonal of `Z²`.
    pub diagonal: FgrClass,
    /// `[(Z, G×S₂)]` with `S₂` acting trivially.
    pub swapped: FgrClass,
    /// Coefficient of `t²` of `(1+t)^{[Z]}` in the ζ power structure.
    pub zeta_t2: FgrClass,
    /// Coefficient of `t²` of `(1+t)^{[Z]}` in the configuration power
    /// structure.
    pub lambda_t2: FgrClass,
}

impl DivergenceReport {
    /// Whether the two `t²` classes have different normal forms.
    pub fn differ(&self) -> bool {
        self.diagonal != self.swapped
    }

    /// `zeta_t2 − lambda_t2 = diagonal − swapped`.
    pub fn consistent(&self) -> bool {
        self.zeta_t2.sub(&self.lambda_t2) == self.diagonal.sub(&self.swapped)
    }

    /// Whether the ζ coefficient has a negative term, i.e. is not the class
    /// of a G-set in this model.
    pub fn zeta_not_effective(&self) -> bool {
        !self.zeta_t2.is_effective()
    }
}

pub fn zeta_lambda_divergence(z: &GSet) -> Result<DivergenceReport> {
    let (_, diag) = z.wreath_power_split(2)?;
    let s2 = crate::grp::named_group("S2")?;
    let swapped = z.product(&GSet::point(&s2))?;
    let class = class_of(z)?;
    let one_plus_t = Series::new(vec![FgrClass::one(), FgrClass::one()], 2);
    let zeta = power_via_lambda(&one_plus_t, &class, &FgrZeta)?;
    let lambda = power_via_lambda(&one_plus_t, &class, &FgrConfig)?;
    Ok(DivergenceReport {
        diagonal: class_of(&diag)?,
        swapped: class_of(&swapped)?,
        zeta_t2: zeta.coeff(2).clone(),
        lambda_t2: lambda.coeff(2).clone(),
    })
}

/// Every coefficient of `s` is effective.
pub fn series_is_effective(s: &Series<FgrClass>) -> bool {
    s.coeffs().iter().all(FgrClass::is_effective)
}

/// `Σ [(pt, S)]`-weighted integer images `χ^(k)` of each coefficient.
pub fn chi_k_series(s: &Series<FgrClass>, k: usize) -> Vec<BigInt> {
    s.coeffs().iter().map(|c| c.chi_k(k)).collect()
}
