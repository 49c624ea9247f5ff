//! Verlinde fusion rules, units and sum rules of D(G).

use num_bigint::BigUint;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::double::ModularData;
use crate::error::{Error, Result};
use crate::linalg::{split, CMatrix, RMatrix};

pub const INTEGRALITY_TOL: f64 = 1e-6;
pub const VANISHING_TOL: f64 = 1e-8;
const PHASE_TOL: f64 = 1e-6;

/// Sparse N_ij^k: rows[i][j] lists (k, N_ij^k) with N > 0, k increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionTensor {
    pub rank: usize,
    pub rows: Vec<Vec<Vec<(u32, u32)>>>,
}

impl FusionTensor {
    pub fn get(&self, i: usize, j: usize, k: usize) -> u32 {
        self.rows[i][j]
            .binary_search_by_key(&(k as u32), |e| e.0)
            .map(|p| self.rows[i][j][p].1)
            .unwrap_or(0)
    }

    /// Dense N_i with (N_i)_{jk} = N_ij^k.
    pub fn matrix(&self, i: usize) -> Vec<Vec<u64>> {
        let mut m = vec![vec![0u64; self.rank]; self.rank];
        for (j, row) in self.rows[i].iter().enumerate() {
            for &(k, v) in row {
                m[j][k as usize] = v as u64;
            }
        }
        m
    }

    pub fn nonzeros(&self) -> usize {
        self.rows.iter().flatten().map(|r| r.len()).sum()
    }

    /// Lines "m n p N" (1-based) for every nonzero entry.
    pub fn to_triples(&self) -> String {
        let mut s = String::new();
        for (i, rows) in self.rows.iter().enumerate() {
            for (j, row) in rows.iter().enumerate() {
                for &(k, v) in row {
                    s.push_str(&format!("{} {} {} {}\n", i + 1, j + 1, k + 1, v));
                }
            }
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct FusionData {
    pub tensor: Option<FusionTensor>,
    pub qdims: Vec<usize>,
    /// phi[(i, l)] = S_il / S_1l.
    pub phi: CMatrix,
    /// X = Σ_i N_i.
    pub x: Vec<Vec<u64>>,
    /// row_sums[i][j] = Σ_k N_ij^k.
    pub row_sums: Vec<Vec<u64>>,
    pub d_b: BigUint,
    pub global_dimension: BigUint,
    pub max_residual: f64,
}

fn phi_matrix(s: &CMatrix) -> CMatrix {
    CMatrix::from_fn(s.nrows(), s.ncols(), |i, l| s[(i, l)] / s[(0, l)])
}

/// Round a real/imaginary pair of matrices to non-negative integers.
fn round_checked(re: &RMatrix, im: &RMatrix, what: &str) -> Result<(Vec<Vec<u64>>, f64)> {
    let mut worst: f64 = 0.0;
    let mut out = vec![vec![0u64; re.ncols()]; re.nrows()];
    for i in 0..re.nrows() {
        for j in 0..re.ncols() {
            let v = re[(i, j)];
            let r = v.round();
            let res = (v - r).abs().max(im[(i, j)].abs());
            worst = worst.max(res);
            if res > INTEGRALITY_TOL || r < 0.0 {
                return Err(Error::VerlindeIntegrality(format!(
                    "{what} entry ({}, {}) = {v} + {}i",
                    i + 1,
                    j + 1,
                    im[(i, j)]
                )));
            }
            out[i][j] = r as u64;
        }
    }
    Ok((out, worst))
}

/// A · diag(d) · B where all three are complex, evaluated with real GEMMs.
fn sandwich(a_re: &RMatrix, a_im: &RMatrix, d: &[Complex64], b_re: &RMatrix, b_im: &RMatrix) -> (RMatrix, RMatrix) {
    let r = a_re.nrows();
    let n = a_re.ncols();
    let mut lr = RMatrix::zeros(r, n);
    let mut li = RMatrix::zeros(r, n);
    for j in 0..n {
        let (p, q) = (d[j].re, d[j].im);
        for i in 0..r {
            let (x, y) = (a_re[(i, j)], a_im[(i, j)]);
            lr[(i, j)] = x * p - y * q;
            li[(i, j)] = x * q + y * p;
        }
    }
    let re = &lr * b_re - &li * b_im;
    let im = &lr * b_im + &li * b_re;
    (re, im)
}

struct Prepared {
    s_re: RMatrix,
    s_im: RMatrix,
    /// S† split.
    sd_re: RMatrix,
    sd_im: RMatrix,
    phi: CMatrix,
}

fn prepare(md: &ModularData) -> Prepared {
    let (s_re, s_im) = split(&md.s);
    let (sd_re, sd_im) = split(&md.s.adjoint());
    Prepared {
        s_re,
        s_im,
        sd_re,
        sd_im,
        phi: phi_matrix(&md.s),
    }
}

fn fusion_matrix_prepared(p: &Prepared, i: usize) -> Result<(Vec<Vec<u64>>, f64)> {
    let d: Vec<Complex64> = p.phi.row(i).iter().copied().collect();
    let (re, im) = sandwich(&p.s_re, &p.s_im, &d, &p.sd_re, &p.sd_im);
    round_checked(&re, &im, &format!("N_{}", i + 1))
}

/// Dense N_i = S · diag(φ_i) · S†.
pub fn fusion_matrix(md: &ModularData, i: usize) -> Result<Vec<Vec<u64>>> {
    if i >= md.rank() {
        return Err(Error::IndexOutOfRange(i + 1));
    }
    Ok(fusion_matrix_prepared(&prepare(md), i)?.0)
}

/// Full sparse tensor, one fusion matrix per irrep.
pub fn verlinde_tensor(md: &ModularData) -> Result<(FusionTensor, f64)> {
    let p = prepare(md);
    let rows: Vec<(Vec<Vec<(u32, u32)>>, f64)> = (0..md.rank())
        .into_par_iter()
        .map(|i| {
            let (m, res) = fusion_matrix_prepared(&p, i)?;
            let sparse = m
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .enumerate()
                        .filter(|&(_, v)| v > 0)
                        .map(|(k, v)| (k as u32, v as u32))
                        .collect()
                })
                .collect();
            Ok((sparse, res))
        })
        .collect::<Result<_>>()?;
    let worst = rows.iter().map(|r| r.1).fold(0.0, f64::max);
    Ok((
        FusionTensor {
            rank: md.rank(),
            rows: rows.into_iter().map(|r| r.0).collect(),
        },
        worst,
    ))
}

/// μ_i = S_i1 / S_11, checked against |[c]|·d_σ.
pub fn quantum_dimensions(md: &ModularData) -> Result<Vec<usize>> {
    (0..md.rank())
        .map(|i| {
            let v = md.s[(i, 0)] / md.s[(0, 0)];
            let r = v.re.round();
            if (v - Complex64::new(r, 0.0)).norm() > VANISHING_TOL || r as usize != md.qdims[i] {
                return Err(Error::QdimInconsistency(i + 1));
            }
            Ok(r as usize)
        })
        .collect()
}

/// Σ_j = Σ_i S_ij.
pub fn column_sums(md: &ModularData) -> Vec<Complex64> {
    (0..md.rank()).map(|j| md.s.column(j).iter().sum()).collect()
}

fn d_b_of(row_sums: &[Vec<u64>]) -> BigUint {
    row_sums
        .iter()
        .map(|row| {
            let t = BigUint::from(row.iter().sum::<u64>());
            &t * &t
        })
        .sum()
}

/// Fusion data; with `full` the whole tensor is built, otherwise only the
/// aggregates X, row sums and d_B are computed from S directly.
pub fn fusion_data(md: &ModularData, full: bool) -> Result<FusionData> {
    let r = md.rank();
    let qdims = quantum_dimensions(md)?;
    let global_dimension: BigUint = qdims.iter().map(|&q| BigUint::from(q) * BigUint::from(q)).sum();
    if global_dimension != BigUint::from(md.group_order) * BigUint::from(md.group_order) {
        return Err(Error::QdimInconsistency(0));
    }
    let p = prepare(md);
    let (tensor, x, row_sums, res) = if full {
        let (t, res) = verlinde_tensor(md)?;
        let mut x = vec![vec![0u64; r]; r];
        let mut sums = vec![vec![0u64; r]; r];
        for i in 0..r {
            for j in 0..r {
                for &(k, v) in &t.rows[i][j] {
                    x[j][k as usize] += v as u64;
                    sums[i][j] += v as u64;
                }
            }
        }
        (Some(t), x, sums, res)
    } else {
        let sigma = column_sums(md);
        let s1: Vec<Complex64> = (0..r).map(|m| md.s[(0, m)]).collect();
        // R = S diag(conj(Σ)/S_1) Sᵀ, X = S diag(Σ/S_1) S†
        let dr: Vec<Complex64> = (0..r).map(|m| sigma[m].conj() / s1[m]).collect();
        let dx: Vec<Complex64> = (0..r).map(|m| sigma[m] / s1[m]).collect();
        let st_re = p.s_re.transpose();
        let st_im = p.s_im.transpose();
        let (rr, ri) = sandwich(&p.s_re, &p.s_im, &dr, &st_re, &st_im);
        let (xr, xi) = sandwich(&p.s_re, &p.s_im, &dx, &p.sd_re, &p.sd_im);
        let (sums, r1) = round_checked(&rr, &ri, "row sums")?;
        let (x, r2) = round_checked(&xr, &xi, "X")?;
        (None, x, sums, r1.max(r2))
    };
    Ok(FusionData {
        tensor,
        qdims,
        phi: p.phi,
        d_b: d_b_of(&row_sums),
        x,
        row_sums,
        global_dimension,
        max_residual: res,
    })
}

/// Prime factorization by trial division, written like 2^2·4126561.
pub fn factor_string(n: &BigUint) -> String {
    let one = BigUint::from(1u32);
    if *n <= one {
        return n.to_string();
    }
    let mut m = n.clone();
    let mut parts = Vec::new();
    let mut p = BigUint::from(2u32);
    while &p * &p <= m {
        let mut e = 0;
        while (&m % &p) == BigUint::from(0u32) {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            parts.push(if e == 1 { p.to_string() } else { format!("{p}^{e}") });
        }
        p += 1u32;
    }
    if m > one {
        parts.push(m.to_string());
    }
    parts.join("·")
}

#[derive(Clone, Debug, Serialize)]
pub struct UnitsData {
    pub unit_indices: Vec<usize>,
    /// permutations[u][j] = J_u(j).
    pub permutations: Vec<Vec<usize>>,
    pub expected: usize,
}

fn as_permutation(m: &[Vec<u64>]) -> Option<Vec<usize>> {
    let r = m.len();
    let mut img = Vec::with_capacity(r);
    let mut hit = vec![false; r];
    for row in m {
        let mut ones = row.iter().enumerate().filter(|(_, &v)| v != 0);
        let (k, &v) = ones.next()?;
        if v != 1 || ones.next().is_some() || hit[k] {
            return None;
        }
        hit[k] = true;
        img.push(k);
    }
    Some(img)
}

/// Units: μ = 1 with permutation fusion matrix; their number must be
/// `expected` = |Z(G)|·|G/G′|.
pub fn units(md: &ModularData, fd: &FusionData, expected: usize) -> Result<UnitsData> {
    let p = prepare(md);
    let mut unit_indices = Vec::new();
    let mut permutations = Vec::new();
    for i in 0..md.rank() {
        if fd.qdims[i] != 1 {
            continue;
        }
        let m = match &fd.tensor {
            Some(t) => t.matrix(i),
            None => fusion_matrix_prepared(&p, i)?.0,
        };
        if let Some(perm) = as_permutation(&m) {
            unit_indices.push(i);
            permutations.push(perm);
        }
    }
    if unit_indices.len() != expected {
        return Err(Error::UnitGroupAnomaly {
            found: unit_indices.len(),
            expected,
        });
    }
    Ok(UnitsData {
        unit_indices,
        permutations,
        expected,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IrrepType {
    Real,
    Complex,
    Quaternionic,
}

/// Frobenius–Schur indicators of D(G) from S and T, factorized as
/// ν_i = Σ_m S_im* A_m B_m / S_1m with A = Σ_j S_1j θ_j² S_jm and
/// B = Σ_k S_1k θ_k⁻² S_km.
pub fn fs_indicators(md: &ModularData) -> Vec<Complex64> {
    let r = md.rank();
    let s = &md.s;
    let a: Vec<Complex64> = (0..r)
        .map(|m| (0..r).map(|j| s[(0, j)] * md.t[j] * md.t[j] * s[(j, m)]).sum())
        .collect();
    let b: Vec<Complex64> = (0..r)
        .map(|m| (0..r).map(|k| s[(0, k)] * (md.t[k] * md.t[k]).inv() * s[(k, m)]).sum())
        .collect();
    (0..r)
        .map(|i| (0..r).map(|m| s[(i, m)].conj() * a[m] * b[m] / s[(0, m)]).sum())
        .collect()
}

pub fn type_classification(md: &ModularData) -> Result<Vec<IrrepType>> {
    fs_indicators(md)
        .into_iter()
        .enumerate()
        .map(|(i, nu)| {
            let self_dual = md.conjugate[i] == i;
            let near = |v: f64| (nu - Complex64::new(v, 0.0)).norm() < INTEGRALITY_TOL;
            match (self_dual, near(1.0), near(-1.0), near(0.0)) {
                (false, _, _, true) => Ok(IrrepType::Complex),
                (true, true, _, _) => Ok(IrrepType::Real),
                (true, _, true, _) => Ok(IrrepType::Quaternionic),
                (true, _, _, true) => Err(Error::IndicatorFailure(i + 1, "zero indicator on a self-dual irrep".into())),
                _ => Err(Error::IndicatorFailure(i + 1, format!("indicator {nu}"))),
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct TypeCount {
    pub total: usize,
    pub vanishing: usize,
    pub accidental: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SumRuleReport {
    pub sigma: Vec<[f64; 2]>,
    pub vanishing: Vec<bool>,
    pub unit_explained: Vec<bool>,
    pub accidental: Vec<bool>,
    pub types: Vec<IrrepType>,
    pub row_sum_rule: bool,
    /// Irreps i with R[i][j] ≠ R[ī][j] for some j.
    pub row_sum_violators: Vec<usize>,
    /// Complex irreps i satisfying R[i][·] = R[ī][·].
    pub row_sum_complex_satisfying: usize,
    pub x_conjugation_rule: bool,
    pub real: TypeCount,
    pub complex: TypeCount,
    pub quaternionic: TypeCount,
}

pub fn sum_rules(md: &ModularData, fd: &FusionData, units: &UnitsData) -> Result<SumRuleReport> {
    let r = md.rank();
    let sigma = column_sums(md);
    let vanishing: Vec<bool> = sigma.iter().map(|z| z.norm() < VANISHING_TOL).collect();
    let unit_explained: Vec<bool> = (0..r)
        .map(|j| {
            units
                .unit_indices
                .iter()
                .any(|&u| (fd.phi[(u, j)] - 1.0).norm() > PHASE_TOL)
        })
        .collect();
    for j in 0..r {
        if unit_explained[j] && !vanishing[j] {
            return Err(Error::TheoremViolation(format!(
                "irrep {} has a nontrivial unit phase but Σ = {}",
                j + 1,
                sigma[j]
            )));
        }
    }
    let accidental: Vec<bool> = (0..r).map(|j| vanishing[j] && !unit_explained[j]).collect();
    let conj = &md.conjugate;
    let row_sum_violators: Vec<usize> = (0..r).filter(|&i| fd.row_sums[i] != fd.row_sums[conj[i]]).collect();
    let row_sum_rule = row_sum_violators.is_empty();
    let complex_vanish = (0..r).filter(|&j| conj[j] != j).all(|j| vanishing[j]);
    if row_sum_rule != complex_vanish {
        return Err(Error::TheoremViolation(format!(
            "row-sum symmetry is {row_sum_rule} but vanishing of complex Σ is {complex_vanish}"
        )));
    }
    let row_sum_complex_satisfying = (0..r)
        .filter(|&i| conj[i] != i && fd.row_sums[i] == fd.row_sums[conj[i]])
        .count();
    let x_conjugation_rule = (0..r).all(|j| (0..r).all(|k| fd.x[j][k] == fd.x[j][conj[k]]));
    let types = type_classification(md)?;
    let mut counts = [TypeCount::default(); 3];
    for j in 0..r {
        let slot = match types[j] {
            IrrepType::Real => 0,
            IrrepType::Complex => 1,
            IrrepType::Quaternionic => 2,
        };
        counts[slot].total += 1;
        counts[slot].vanishing += vanishing[j] as usize;
        counts[slot].accidental += accidental[j] as usize;
    }
    Ok(SumRuleReport {
        sigma: sigma.iter().map(|z| [z.re, z.im]).collect(),
        vanishing,
        unit_explained,
        accidental,
        types,
        row_sum_rule,
        row_sum_violators,
        row_sum_complex_satisfying,
        x_conjugation_rule,
        real: counts[0],
        complex: counts[1],
        quaternionic: counts[2],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_format() {
        assert_eq!(factor_string(&BigUint::from(46656u32)), "2^6·3^6");
        assert_eq!(factor_string(&BigUint::from(1116928u32)), "2^8·4363");
        assert_eq!(factor_string(&BigUint::from(1u32)), "1");
        assert_eq!(factor_string(&BigUint::from(97u32)), "97");
    }

    #[test]
    fn permutation_detection() {
        assert_eq!(as_permutation(&[vec![0, 1], vec![1, 0]]), Some(vec![1, 0]));
        assert_eq!(as_permutation(&[vec![1, 1], vec![1, 0]]), None);
        assert_eq!(as_permutation(&[vec![0, 1], vec![0, 1]]), None);
    }
}
