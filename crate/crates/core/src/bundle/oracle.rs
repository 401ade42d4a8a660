//! Eigenphases of wreath elements on fibres of a wreath power, computed
//! numerically from the explicit monomial matrix.

use num_complex::Complex64;

use super::{AgeData, WreathPowerBundle};
use crate::error::{Error, Result};
use crate::grp::Elem;
use crate::lpoly::{q_to_f64, Q};

/// Powers tried when searching for the order of the matrix.
const MAX_ORDER: usize = 10_000;
const EPS: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct OraclePhases {
    /// Order of the fibre operator.
    pub order: usize,
    /// Multiplicity of `e^{2πi m/order}` for each `m`, as computed.
    pub multiplicities: Vec<Complex64>,
    /// `Σ (m/order)·multiplicity`.
    pub phase_sum: f64,
}

impl OraclePhases {
    /// Rounded multiplicities expanded into a sorted phase list, or `None`
    /// if some multiplicity is not close to a non-negative integer.
    pub fn phases(&self) -> Option<Vec<Q>> {
        let mut out = Vec::new();
        for (m, c) in self.multiplicities.iter().enumerate() {
            let r = c.re.round();
            if (c.re - r).abs() > 1e-6 || c.im.abs() > 1e-6 || r < 0.0 {
                return None;
            }
            out.extend(std::iter::repeat_n(Q::new(m as i64, self.order as i64), r as usize));
        }
        Some(out)
    }

    /// Whether the exact phases match within `tol`, both as a multiset and
    /// as a sum.
    pub fn agrees_with(&self, exact: &[Q], tol: f64) -> bool {
        let sum: f64 = exact.iter().map(q_to_f64).sum();
        (sum - self.phase_sum).abs() <= tol && self.phases().as_deref() == Some(exact)
    }
}

type Matrix = Vec<Vec<Complex64>>;

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn is_identity(a: &Matrix) -> bool {
    a.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, z)| {
            let target = if i == j { 1.0 } else { 0.0 };
            (z.re - target).abs() < EPS && z.im.abs() < EPS
        })
    })
}

/// Builds the matrix of `e = ((g_i), σ)` on `⊕_j E_{x_j}`: line `l` of block
/// `j` goes to line `l` of block `σ(j)`, scaled by `g_{σ(j)}`'s transition
/// phase, then reads off the eigenvalue multiplicities from the traces of
/// its powers.
pub fn eigenphase_oracle(b: &WreathPowerBundle, x: usize, e: Elem) -> Result<OraclePhases> {
    if b.base().act(e, x) != x {
        return Err(Error::NotFixed { cell: x });
    }
    let w = b.base().group();
    let (g, sigma) = w.wreath_parts(e).expect("wreath element");
    let t = b.tuple(x);
    let base = b.base_bundle();
    let mut offsets = Vec::with_capacity(t.len());
    let mut dim = 0;
    for &y in t {
        offsets.push(dim);
        dim += base.rank(y as usize) as usize;
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut m = vec![vec![zero; dim]; dim];
    for (j, &y) in t.iter().enumerate() {
        let s = sigma[j];
        for (l, v) in base.line_values(y as usize, g[s]).into_iter().enumerate() {
            m[offsets[s] + l][offsets[j] + l] = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * q_to_f64(&v));
        }
    }
    let mut traces = vec![Complex64::new(dim as f64, 0.0)];
    let mut p = m.clone();
    let mut order = 1;
    while !is_identity(&p) {
        if order >= MAX_ORDER {
            return Err(Error::BadBundle("fibre operator has no small finite order".into()));
        }
        traces.push((0..dim).map(|i| p[i][i]).sum());
        p = mat_mul(&m, &p);
        order += 1;
    }
    let multiplicities: Vec<Complex64> = (0..order)
        .map(|k| {
            let s: Complex64 = traces
                .iter()
                .enumerate()
                .map(|(p, tr)| tr * Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * (k * p) as f64 / order as f64))
                .sum();
            s / order as f64
        })
        .collect();
    let phase_sum = multiplicities.iter().enumerate().map(|(k, c)| c.re * k as f64 / order as f64).sum();
    Ok(OraclePhases { order, multiplicities, phase_sum })
}
