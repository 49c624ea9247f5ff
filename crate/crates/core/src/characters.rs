//! Complex character tables via the class algebra.
//!
//! Central characters are the common eigenvectors of the class
//! multiplication matrices; a seeded random combination of them is
//! diagonalized numerically and each value is then snapped to an exact
//! sum of roots of unity using eigenvalue multiplicities from power maps.

use std::cmp::Ordering;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groups::GroupData;

pub const DEFAULT_SEED: u64 = 0xD0B1E;
const CLUSTER_TOL: f64 = 1e-6;
const ORTHO_TOL: f64 = 1e-8;
const MAX_RESEEDS: u64 = 16;

#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub order: usize,
    pub class_sizes: Vec<usize>,
    pub class_orders: Vec<usize>,
    pub degrees: Vec<usize>,
    /// values[r][c] = χ_r at class c.
    pub values: Vec<Vec<Complex64>>,
    pub inverse_class_map: Vec<usize>,
    /// power_maps[k][c] = class of g^k for g in c, k = 0..=exponent.
    pub power_maps: Vec<Vec<usize>>,
    pub fs_indicators: Vec<i8>,
    /// r ↦ r̄, the complex conjugate character.
    pub conjugate: Vec<usize>,
}

pub fn root_of_unity(o: usize, k: usize) -> Complex64 {
    let t = std::f64::consts::TAU * (k % o) as f64 / o as f64;
    Complex64::new(t.cos(), t.sin())
}

/// a[i][j][k] = #{x ∈ K_i : x⁻¹ z_k ∈ K_j}, z_k the representative of K_k.
pub fn class_structure_constants(g: &GroupData) -> Vec<Vec<Vec<f64>>> {
    let l = g.class_number();
    let mut a = vec![vec![vec![0.0; l]; l]; l];
    for (k, ck) in g.classes().iter().enumerate() {
        let z = ck.representative;
        for x in 0..g.order() {
            let i = g.class_of(x);
            let j = g.class_of(g.mul(g.inv(x), z));
            a[i][j][k] += 1.0;
        }
    }
    a
}

pub fn character_table(g: &GroupData) -> Result<CharacterTable> {
    character_table_seeded(g, DEFAULT_SEED)
}

pub fn character_table_seeded(g: &GroupData, seed: u64) -> Result<CharacterTable> {
    let consts = class_structure_constants(g);
    let mut last = Error::DegenerateSpectrum;
    for attempt in 0..MAX_RESEEDS {
        match table_attempt(g, &consts, seed.wrapping_add(attempt)) {
            Ok(t) => return Ok(t),
            Err(e @ (Error::DegenerateSpectrum | Error::CharacterRecovery(_))) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

fn power_maps(g: &GroupData) -> Vec<Vec<usize>> {
    (0..=g.exponent())
        .map(|k| {
            g.classes()
                .iter()
                .map(|c| g.class_of(g.pow(c.representative, k)))
                .collect()
        })
        .collect()
}

fn null_vector(m: &DMatrix<Complex64>) -> Option<Vec<Complex64>> {
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t?;
    let (idx, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(Ordering::Equal))?;
    Some(v_t.row(idx).iter().map(|z| z.conj()).collect())
}

fn table_attempt(g: &GroupData, consts: &[Vec<Vec<f64>>], seed: u64) -> Result<CharacterTable> {
    let l = g.class_number();
    let n = g.order();
    let sizes: Vec<usize> = g.classes().iter().map(|c| c.size()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coef: Vec<f64> = (0..l).map(|_| rng.random::<f64>()).collect();
    let mut m = DMatrix::<f64>::zeros(l, l);
    for (i, ci) in coef.iter().enumerate() {
        for j in 0..l {
            for k in 0..l {
                m[(j, k)] += ci * consts[i][j][k];
            }
        }
    }
    let eig: Vec<Complex64> = m.complex_eigenvalues().iter().copied().collect();
    let scale = eig.iter().map(|z| z.norm()).fold(1.0, f64::max);
    for a in 0..l {
        for b in a + 1..l {
            if (eig[a] - eig[b]).norm() < CLUSTER_TOL * scale {
                return Err(Error::DegenerateSpectrum);
            }
        }
    }
    let mc = m.map(|x| Complex64::new(x, 0.0));
    let pmaps = power_maps(g);
    let mut rows: Vec<(usize, Vec<Complex64>)> = Vec::with_capacity(l);
    for lam in &eig {
        let shifted = &mc - DMatrix::<Complex64>::identity(l, l) * *lam;
        let w = null_vector(&shifted).ok_or(Error::DegenerateSpectrum)?;
        if w[0].norm() < 1e-12 {
            return Err(Error::DegenerateSpectrum);
        }
        let w0 = w[0];
        let omega: Vec<Complex64> = w.iter().map(|x| x / w0).collect();
        let s: f64 = omega
            .iter()
            .zip(&sizes)
            .map(|(x, &sz)| x.norm_sqr() / sz as f64)
            .sum();
        let d = (n as f64 / s).sqrt();
        let dr = d.round();
        if (d - dr).abs() > 1e-6 || dr < 1.0 {
            return Err(Error::CharacterRecovery(format!("degree {d} not integral")));
        }
        let raw: Vec<Complex64> = omega
            .iter()
            .zip(&sizes)
            .map(|(x, &sz)| x * dr / sz as f64)
            .collect();
        rows.push((dr as usize, snap_row(g, &pmaps, &raw, dr as usize)?));
    }
    rows.sort_by(|a, b| row_order(a, b));
    let degrees: Vec<usize> = rows.iter().map(|r| r.0).collect();
    let values: Vec<Vec<Complex64>> = rows.into_iter().map(|r| r.1).collect();
    let inverse_class_map: Vec<usize> = g.classes().iter().map(|c| g.class_of(g.inv(c.representative))).collect();
    let mut t = CharacterTable {
        order: n,
        class_sizes: sizes,
        class_orders: g.classes().iter().map(|c| c.rep_order).collect(),
        degrees,
        values,
        inverse_class_map,
        power_maps: pmaps,
        fs_indicators: Vec::new(),
        conjugate: Vec::new(),
    };
    t.verify()?;
    t.conjugate = (0..l)
        .map(|r| {
            (0..l)
                .find(|&s| {
                    t.values[s]
                        .iter()
                        .zip(&t.values[r])
                        .all(|(a, b)| (a - b.conj()).norm() < ORTHO_TOL)
                })
                .ok_or_else(|| Error::CharacterRecovery("conjugate row missing".into()))
        })
        .collect::<Result<_>>()?;
    t.fs_indicators = (0..l).map(|r| t.fs_indicator(r)).collect::<Result<_>>()?;
    Ok(t)
}

/// Recover exact values from eigenvalue multiplicities on each cyclic subgroup.
fn snap_row(g: &GroupData, pmaps: &[Vec<usize>], raw: &[Complex64], d: usize) -> Result<Vec<Complex64>> {
    let mut out = Vec::with_capacity(raw.len());
    for (c, class) in g.classes().iter().enumerate() {
        let o = class.rep_order;
        let mut value = Complex64::new(0.0, 0.0);
        let mut total = 0i64;
        for j in 0..o {
            let mut m = Complex64::new(0.0, 0.0);
            for t in 0..o {
                m += raw[pmaps[t][c]] * root_of_unity(o, (o - (j * t) % o) % o);
            }
            m /= o as f64;
            let mr = m.re.round();
            if (m - Complex64::new(mr, 0.0)).norm() > 1e-4 || mr < 0.0 {
                return Err(Error::CharacterRecovery(format!(
                    "eigenvalue multiplicity {m} at class {c}"
                )));
            }
            total += mr as i64;
            value += root_of_unity(o, j) * mr;
        }
        if total != d as i64 {
            return Err(Error::CharacterRecovery(format!("multiplicities sum to {total}, not {d}")));
        }
        out.push(value);
    }
    Ok(out)
}

fn cmp_tol(a: f64, b: f64) -> Ordering {
    if (a - b).abs() < 1e-9 {
        Ordering::Equal
    } else if a < b {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

fn is_real_row(v: &[Complex64]) -> bool {
    v.iter().all(|z| z.im.abs() < 1e-9)
}

/// Degree ascending; real-valued rows before complex ones; then the value
/// vector, comparing real parts descending and imaginary parts descending.
fn row_order(a: &(usize, Vec<Complex64>), b: &(usize, Vec<Complex64>)) -> Ordering {
    a.0.cmp(&b.0)
        .then_with(|| is_real_row(&b.1).cmp(&is_real_row(&a.1)))
        .then_with(|| {
            for (x, y) in a.1.iter().zip(&b.1) {
                let o = cmp_tol(y.re, x.re).then_with(|| cmp_tol(y.im, x.im));
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
}

impl CharacterTable {
    pub fn class_number(&self) -> usize {
        self.degrees.len()
    }

    fn verify(&self) -> Result<()> {
        let l = self.class_number();
        let sum_sq: usize = self.degrees.iter().map(|d| d * d).sum();
        if sum_sq != self.order {
            return Err(Error::CharacterRecovery(format!(
                "sum of squared degrees {sum_sq} != {}",
                self.order
            )));
        }
        for r in 0..l {
            for s in r..l {
                let ip = self.inner(&self.values[r], &self.values[s]);
                let expect = if r == s { 1.0 } else { 0.0 };
                if (ip - Complex64::new(expect, 0.0)).norm() > ORTHO_TOL {
                    return Err(Error::CharacterRecovery(format!(
                        "orthogonality failure between rows {r} and {s}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// ⟨a, b⟩ = (1/|G|) Σ_c |c| a_c b_c*.
    pub fn inner(&self, a: &[Complex64], b: &[Complex64]) -> Complex64 {
        let s: Complex64 = a
            .iter()
            .zip(b)
            .zip(&self.class_sizes)
            .map(|((x, y), &sz)| x * y.conj() * sz as f64)
            .sum();
        s / self.order as f64
    }

    /// Largest deviation from row and column orthogonality.
    pub fn orthogonality_residual(&self) -> f64 {
        let l = self.class_number();
        let mut worst: f64 = 0.0;
        for r in 0..l {
            for s in 0..l {
                let ip = self.inner(&self.values[r], &self.values[s]);
                let e = if r == s { 1.0 } else { 0.0 };
                worst = worst.max((ip - e).norm());
            }
        }
        for c in 0..l {
            for d in 0..l {
                let s: Complex64 = (0..l).map(|r| self.values[r][c] * self.values[r][d].conj()).sum();
                let e = if c == d { self.order as f64 / self.class_sizes[c] as f64 } else { 0.0 };
                worst = worst.max((s - e).norm() / (self.order as f64));
            }
        }
        worst
    }

    /// (1/|G|) Σ_g χ(g²), rounded.
    pub fn fs_indicator(&self, r: usize) -> Result<i8> {
        let v = self.values.get(r).ok_or(Error::IndexOutOfRange(r))?;
        let sq = &self.power_maps[2 % (self.power_maps.len() - 1)];
        let s: Complex64 = (0..self.class_number())
            .map(|c| v[sq[c]] * self.class_sizes[c] as f64)
            .sum::<Complex64>()
            / self.order as f64;
        let nu = s.re.round();
        if (s - Complex64::new(nu, 0.0)).norm() > ORTHO_TOL || nu.abs() > 1.0 {
            return Err(Error::IndicatorAnomaly(s.re));
        }
        Ok(nu as i8)
    }

    /// Classes on which χ_r equals its degree.
    pub fn kernel_classes(&self, r: usize) -> Vec<usize> {
        let d = self.degrees[r] as f64;
        (0..self.class_number())
            .filter(|&c| (self.values[r][c] - d).norm() < ORTHO_TOL)
            .collect()
    }

    /// Element indices of the kernel of χ_r.
    pub fn kernel(&self, g: &GroupData, r: usize) -> Vec<usize> {
        let mut k: Vec<usize> = self
            .kernel_classes(r)
            .into_iter()
            .flat_map(|c| g.classes()[c].members.iter().copied())
            .collect();
        k.sort_unstable();
        k
    }

    pub fn kernel_order(&self, r: usize) -> usize {
        self.kernel_classes(r).iter().map(|&c| self.class_sizes[c]).sum()
    }

    pub fn is_faithful(&self, r: usize) -> bool {
        self.kernel_order(r) == 1
    }

    /// N_rs^t = Σ_c (|c|/|G|) χ_r χ_s χ_t*, as an ℓ×ℓ×ℓ integer tensor.
    pub fn tensor_multiplicities(&self) -> Result<Vec<Vec<Vec<u64>>>> {
        let l = self.class_number();
        let mut out = vec![vec![vec![0u64; l]; l]; l];
        for r in 0..l {
            for s in 0..l {
                let prod: Vec<Complex64> = (0..l).map(|c| self.values[r][c] * self.values[s][c]).collect();
                for t in 0..l {
                    let v = self.inner(&prod, &self.values[t]);
                    let vr = v.re.round();
                    let res = (v - Complex64::new(vr, 0.0)).norm();
                    if res > 1e-6 || vr < 0.0 {
                        return Err(Error::NonIntegralMultiplicity(res.max(-vr)));
                    }
                    out[r][s][t] = vr as u64;
                }
            }
        }
        Ok(out)
    }

    /// Whether Σ_k N_ij^k = Σ_k N_īj^k for all i, j; returns the violating i.
    pub fn group_sumrule(&self) -> Result<(bool, Vec<usize>)> {
        let n = self.tensor_multiplicities()?;
        let l = self.class_number();
        let rows: Vec<Vec<u64>> = (0..l).map(|i| (0..l).map(|j| n[i][j].iter().sum()).collect()).collect();
        let violators: Vec<usize> = (0..l).filter(|&i| rows[i] != rows[self.conjugate[i]]).collect();
        Ok((violators.is_empty(), violators))
    }

    /// Classes as rows, irreps as columns, values written "a+bi".
    pub fn to_csv(&self) -> String {
        let l = self.class_number();
        let mut s = String::from("class,size,order");
        for r in 0..l {
            s.push_str(&format!(",chi{}", r + 1));
        }
        s.push('\n');
        for c in 0..l {
            s.push_str(&format!("{},{},{}", c + 1, self.class_sizes[c], self.class_orders[c]));
            for r in 0..l {
                s.push(',');
                s.push_str(&format_complex(self.values[r][c]));
            }
            s.push('\n');
        }
        s
    }
}

fn clean(x: f64) -> f64 {
    let r = (x * 1e10).round() / 1e10;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn format_complex(z: Complex64) -> String {
    let (re, im) = (clean(z.re), clean(z.im));
    if im < 0.0 {
        format!("{re}-{}i", -im)
    } else {
        format!("{re}+{im}i")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::catalog;

    #[test]
    fn abelian_and_tetrahedral() {
        let t = character_table(&catalog("Z6").unwrap()).unwrap();
        assert_eq!(t.degrees, vec![1; 6]);
        let t = character_table(&catalog("binary_tetrahedral").unwrap()).unwrap();
        assert_eq!(t.degrees, vec![1, 1, 1, 2, 2, 2, 3]);
        assert_eq!(t.fs_indicators[3], -1);
    }

    #[test]
    fn csv_shape() {
        let t = character_table(&catalog("Z5").unwrap()).unwrap();
        let csv = t.to_csv();
        assert_eq!(csv.lines().count(), 6);
        assert!(csv.lines().nth(1).unwrap().starts_with("1,1,1,1+0i"));
        assert_eq!(format_complex(Complex64::new(0.5, -0.25)), "0.5-0.25i");
    }
}
