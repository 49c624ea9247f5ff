//! Irreps and modular data of the Drinfeld double D(G).

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::{character_table_seeded, CharacterTable, DEFAULT_SEED};
use crate::error::{Error, Result};
use crate::groups::GroupData;
use crate::linalg::{cmul, max_diff, CMatrix};

pub const MODULAR_TOL: f64 = 1e-9;

/// Irrep ([c], σ) of D(G). Indices are 0-based; reports add one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleIrrep {
    pub class_index: usize,
    pub centralizer_irrep: usize,
    pub quantum_dimension: usize,
    pub global_index: usize,
}

/// Centralizer of a class representative with its character table.
#[derive(Clone, Debug)]
pub struct Centralizer {
    pub group: GroupData,
    pub table: CharacterTable,
    /// Global element index ↦ class of the centralizer (usize::MAX outside).
    local_class: Vec<usize>,
}

impl Centralizer {
    fn value(&self, sigma: usize, x: usize) -> Complex64 {
        let k = self.local_class[x];
        debug_assert!(k != usize::MAX, "element outside centralizer");
        self.table.values[sigma][k]
    }
}

pub struct Double<'g> {
    pub group: &'g GroupData,
    pub centralizers: Vec<Centralizer>,
    pub irreps: Vec<DoubleIrrep>,
    block_start: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ModularData {
    pub s: CMatrix,
    pub t: Vec<Complex64>,
    pub conjugate: Vec<usize>,
    pub blocks: Vec<usize>,
    pub qdims: Vec<usize>,
    pub group_order: usize,
    pub exponent: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModularReport {
    pub symmetry: f64,
    pub unitarity: f64,
    pub s4_identity: f64,
    pub st_cubed: f64,
    pub first_row: f64,
    pub conjugation: f64,
    pub c_is_permutation: bool,
    pub c_matches_conjugation: bool,
    pub t_order: usize,
    pub exponent: usize,
}

impl ModularReport {
    pub fn max_residual(&self) -> f64 {
        [
            self.symmetry,
            self.unitarity,
            self.s4_identity,
            self.st_cubed,
            self.first_row,
            self.conjugation,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

impl<'g> Double<'g> {
    pub fn new(group: &'g GroupData) -> Result<Self> {
        Self::with_seed(group, DEFAULT_SEED)
    }

    pub fn with_seed(group: &'g GroupData, seed: u64) -> Result<Self> {
        let centralizers = group
            .classes()
            .par_iter()
            .enumerate()
            .map(|(ci, class)| {
                let sub = group.subgroup(&format!("C{}", ci + 1), &class.centralizer)?;
                let table = character_table_seeded(&sub, seed)?;
                let mut local_class = vec![usize::MAX; group.order()];
                for local in 0..sub.order() {
                    let global = sub.parent_index(local).expect("subgroup element");
                    local_class[global] = sub.class_of(local);
                }
                Ok(Centralizer {
                    group: sub,
                    table,
                    local_class,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut irreps = Vec::new();
        let mut block_start = Vec::new();
        for (ci, cent) in centralizers.iter().enumerate() {
            block_start.push(irreps.len());
            let size = group.classes()[ci].size();
            for (si, d) in cent.table.degrees.iter().enumerate() {
                irreps.push(DoubleIrrep {
                    class_index: ci,
                    centralizer_irrep: si,
                    quantum_dimension: size * d,
                    global_index: irreps.len(),
                });
            }
        }
        Ok(Double {
            group,
            centralizers,
            irreps,
            block_start,
        })
    }

    pub fn rank(&self) -> usize {
        self.irreps.len()
    }

    /// N_c: number of centralizer irreps per class.
    pub fn blocks(&self) -> Vec<usize> {
        self.centralizers.iter().map(|c| c.table.class_number()).collect()
    }

    pub fn qdims(&self) -> Vec<usize> {
        self.irreps.iter().map(|i| i.quantum_dimension).collect()
    }

    pub fn index_of(&self, class: usize, sigma: usize) -> usize {
        self.block_start[class] + sigma
    }

    fn class_elements(&self, c: usize) -> (usize, Vec<usize>) {
        let g = self.group;
        let rep = g.classes()[c].representative;
        let left = g
            .coset_representatives(&g.classes()[c].centralizer)
            .expect("centralizer is a subgroup");
        // x = a⁻¹ for left coset representatives a, so x⁻¹ c x runs over [c]
        (rep, left.into_iter().map(|a| g.inv(a)).collect())
    }

    /// S from the coset sum: pairs (x, y) of right coset representatives
    /// whose conjugates x⁻¹cx and y⁻¹dy commute, with g = x y⁻¹.
    pub fn s_matrix(&self) -> CMatrix {
        let g = self.group;
        let l = g.class_number();
        let cosets: Vec<(usize, Vec<usize>)> = (0..l).map(|c| self.class_elements(c)).collect();
        let blocks: Vec<(usize, usize, Vec<Vec<Complex64>>)> = (0..l * l)
            .into_par_iter()
            .map(|bd| {
                let (c, d) = (bd / l, bd % l);
                let (rc, xs) = &cosets[c];
                let (rd, ys) = &cosets[d];
                let cc = &self.centralizers[c];
                let cd = &self.centralizers[d];
                let lc = cc.table.class_number();
                let ld = cd.table.class_number();
                let mut counts = vec![0u64; lc * ld];
                for &x in xs {
                    let cx = g.mul(g.mul(g.inv(x), *rc), x);
                    for &y in ys {
                        let dy = g.mul(g.mul(g.inv(y), *rd), y);
                        if g.mul(cx, dy) != g.mul(dy, cx) {
                            continue;
                        }
                        // g' d g'⁻¹ = x dy x⁻¹ and g'⁻¹ c g' = y cx y⁻¹
                        let a = g.mul(g.mul(x, dy), g.inv(x));
                        let b = g.mul(g.mul(y, cx), g.inv(y));
                        counts[cc.local_class[a] * ld + cd.local_class[b]] += 1;
                    }
                }
                let block = pair_block(&cc.table, &cd.table, &counts, g.order() as f64);
                (c, d, block)
            })
            .collect();
        self.assemble(blocks)
    }

    /// Direct evaluation over all g ∈ G; slow reference for the coset sum.
    pub fn s_matrix_direct(&self) -> CMatrix {
        let g = self.group;
        let l = g.class_number();
        let blocks: Vec<(usize, usize, Vec<Vec<Complex64>>)> = (0..l * l)
            .into_par_iter()
            .map(|bd| {
                let (c, d) = (bd / l, bd % l);
                let rc = g.classes()[c].representative;
                let rd = g.classes()[d].representative;
                let cc = &self.centralizers[c];
                let cd = &self.centralizers[d];
                let norm = (cc.group.order() * cd.group.order()) as f64;
                let mut block = vec![vec![Complex64::new(0.0, 0.0); cd.table.class_number()]; cc.table.class_number()];
                for h in 0..g.order() {
                    let a = g.mul(g.mul(h, rd), g.inv(h));
                    if g.mul(rc, a) != g.mul(a, rc) {
                        continue;
                    }
                    let b = g.mul(g.mul(g.inv(h), rc), h);
                    for (si, row) in block.iter_mut().enumerate() {
                        let u = cc.value(si, a).conj();
                        for (ti, v) in row.iter_mut().enumerate() {
                            *v += u * cd.value(ti, b).conj();
                        }
                    }
                }
                for row in block.iter_mut() {
                    for v in row.iter_mut() {
                        *v /= norm;
                    }
                }
                (c, d, block)
            })
            .collect();
        self.assemble(blocks)
    }

    fn assemble(&self, blocks: Vec<(usize, usize, Vec<Vec<Complex64>>)>) -> CMatrix {
        let r = self.rank();
        let mut s = CMatrix::zeros(r, r);
        for (c, d, block) in blocks {
            for (i, row) in block.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    s[(self.block_start[c] + i, self.block_start[d] + j)] = *v;
                }
            }
        }
        s
    }

    /// T_([c],σ) = χ_σ(c)/χ_σ(e).
    pub fn t_matrix(&self) -> Result<Vec<Complex64>> {
        let g = self.group;
        self.irreps
            .iter()
            .map(|irr| {
                let cent = &self.centralizers[irr.class_index];
                let rep = g.classes()[irr.class_index].representative;
                let v = cent.value(irr.centralizer_irrep, rep)
                    / cent.table.degrees[irr.centralizer_irrep] as f64;
                if (v.norm() - 1.0).abs() > MODULAR_TOL {
                    return Err(Error::NonUnitaryT(irr.global_index));
                }
                Ok(v)
            })
            .collect()
    }

    /// ([c], σ) ↦ ([c⁻¹], σ̄) transported to the chosen representative of [c⁻¹].
    pub fn conjugate_map(&self) -> Result<Vec<usize>> {
        let g = self.group;
        let mut out = vec![0usize; self.rank()];
        for (c, class) in g.classes().iter().enumerate() {
            let rc = class.representative;
            let cbar = g.class_of(g.inv(rc));
            let target = g.classes()[cbar].representative;
            let k = (0..g.order())
                .find(|&k| g.mul(g.mul(k, g.inv(rc)), g.inv(k)) == target)
                .expect("conjugate exists");
            let src = &self.centralizers[c];
            let dst = &self.centralizers[cbar];
            for sigma in 0..src.table.class_number() {
                let wanted: Vec<Complex64> = dst
                    .group
                    .classes()
                    .iter()
                    .map(|cl| {
                        let y = dst.group.parent_index(cl.representative).expect("subgroup element");
                        src.value(sigma, g.mul(g.mul(g.inv(k), y), k)).conj()
                    })
                    .collect();
                let tau = dst
                    .table
                    .values
                    .iter()
                    .position(|row| row.iter().zip(&wanted).all(|(a, b)| (a - b).norm() < 1e-8))
                    .ok_or_else(|| Error::ModularInconsistent("conjugate irrep not found".into()))?;
                out[self.index_of(c, sigma)] = self.index_of(cbar, tau);
            }
        }
        Ok(out)
    }

    pub fn modular_data(&self) -> Result<ModularData> {
        Ok(ModularData {
            s: self.s_matrix(),
            t: self.t_matrix()?,
            conjugate: self.conjugate_map()?,
            blocks: self.blocks(),
            qdims: self.qdims(),
            group_order: self.group.order(),
            exponent: self.group.exponent(),
        })
    }
}

/// (1/|G|) · conj(X M Yᵀ) for centralizer tables X, Y and class counts M.
fn pair_block(x: &CharacterTable, y: &CharacterTable, counts: &[u64], order: f64) -> Vec<Vec<Complex64>> {
    let lc = x.class_number();
    let ld = y.class_number();
    let mut xm = vec![vec![Complex64::new(0.0, 0.0); ld]; lc];
    for (si, row) in xm.iter_mut().enumerate() {
        for k1 in 0..lc {
            let u = x.values[si][k1];
            for (k2, v) in row.iter_mut().enumerate() {
                let m = counts[k1 * ld + k2];
                if m != 0 {
                    *v += u * m as f64;
                }
            }
        }
    }
    (0..lc)
        .map(|si| {
            (0..ld)
                .map(|ti| {
                    let s: Complex64 = (0..ld).map(|k2| xm[si][k2] * y.values[ti][k2]).sum();
                    s.conj() / order
                })
                .collect()
        })
        .collect()
}

/// Multiplicative order of a root of unity, searching divisors of `bound`.
fn root_order(z: Complex64, bound: usize) -> Option<usize> {
    (1..=bound).find(|&k| bound % k == 0 && (z.powu(k as u32) - 1.0).norm() < 1e-8)
}

fn lcm(a: usize, b: usize) -> usize {
    num_integer::lcm(a, b)
}

impl ModularData {
    pub fn rank(&self) -> usize {
        self.t.len()
    }

    pub fn c_matrix(&self) -> CMatrix {
        let r = self.rank();
        let mut c = CMatrix::zeros(r, r);
        for (i, &j) in self.conjugate.iter().enumerate() {
            c[(i, j)] = Complex64::new(1.0, 0.0);
        }
        c
    }

    /// Residuals of the modular relations. Never fails; see `verify`.
    pub fn report(&self) -> ModularReport {
        let r = self.rank();
        let s = &self.s;
        let id = CMatrix::identity(r, r);
        let st = s.transpose();
        let sd = s.adjoint();
        let s2 = cmul(s, s);
        let s4 = cmul(&s2, &s2);
        let stm = CMatrix::from_fn(r, r, |i, j| s[(i, j)] * self.t[j]);
        let st3 = cmul(&cmul(&stm, &stm), &stm);
        let rounded = s2.map(|z| Complex64::new(z.re.round(), z.im.round()));
        let c_is_permutation = (0..r).all(|i| {
            let row: Vec<f64> = (0..r).map(|j| rounded[(i, j)].re).collect();
            row.iter().filter(|&&v| v == 1.0).count() == 1
                && row.iter().all(|&v| v == 0.0 || v == 1.0)
                && (0..r).all(|j| rounded[(i, j)].im == 0.0)
        }) && (0..r).all(|j| (0..r).filter(|&i| rounded[(i, j)].re == 1.0).count() == 1);
        let c_matches_conjugation = max_diff(&rounded, &self.c_matrix()) == 0.0;
        let order = self.group_order as f64;
        let first_row = (0..r)
            .map(|j| (s[(0, j)] - self.qdims[j] as f64 / order).norm())
            .fold(0.0, f64::max);
        let conjugation = (0..r)
            .flat_map(|i| (0..r).map(move |j| (i, j)))
            .map(|(i, j)| (s[(i, j)].conj() - s[(self.conjugate[i], j)]).norm())
            .fold(0.0, f64::max);
        let bound = self.exponent.max(1);
        let t_order = self
            .t
            .iter()
            .map(|&z| root_order(z, bound).unwrap_or(0))
            .fold(1, |acc, o| if o == 0 || acc == 0 { 0 } else { lcm(acc, o) });
        ModularReport {
            symmetry: max_diff(s, &st),
            unitarity: max_diff(&cmul(s, &sd), &id),
            s4_identity: max_diff(&s4, &id),
            st_cubed: max_diff(&st3, &s2),
            first_row,
            conjugation,
            c_is_permutation,
            c_matches_conjugation,
            t_order,
            exponent: self.exponent,
        }
    }

    pub fn verify(&self) -> Result<ModularReport> {
        let rep = self.report();
        let checks = [
            ("S - S^T", rep.symmetry),
            ("S S^dagger - I", rep.unitarity),
            ("S^4 - I", rep.s4_identity),
            ("(ST)^3 - S^2", rep.st_cubed),
            ("first row", rep.first_row),
            ("conjugation symmetry", rep.conjugation),
        ];
        for (name, v) in checks {
            if !(v < MODULAR_TOL) {
                return Err(Error::ModularInconsistent(format!("{name} residual {v:e}")));
            }
        }
        if !rep.c_is_permutation || !rep.c_matches_conjugation {
            return Err(Error::ModularInconsistent("S^2 is not the conjugation permutation".into()));
        }
        if rep.t_order != rep.exponent {
            return Err(Error::ModularInconsistent(format!(
                "order of T is {} but exponent is {}",
                rep.t_order, rep.exponent
            )));
        }
        Ok(rep)
    }

    pub fn to_json(&self) -> String {
        let doc = ModularJson {
            rank: self.rank(),
            blocks: self.blocks.clone(),
            s: (0..self.rank())
                .map(|i| (0..self.rank()).map(|j| [self.s[(i, j)].re, self.s[(i, j)].im]).collect())
                .collect(),
            t: self.t.iter().map(|z| [z.re, z.im]).collect(),
        };
        serde_json::to_string(&doc).expect("serializable")
    }
}

/// On-disk form of S and T.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModularJson {
    pub rank: usize,
    pub blocks: Vec<usize>,
    #[serde(rename = "S")]
    pub s: Vec<Vec<[f64; 2]>>,
    #[serde(rename = "T")]
    pub t: Vec<[f64; 2]>,
}

impl ModularJson {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn s_matrix(&self) -> CMatrix {
        CMatrix::from_fn(self.rank, self.rank, |i, j| Complex64::new(self.s[i][j][0], self.s[i][j][1]))
    }

    pub fn t_vector(&self) -> Vec<Complex64> {
        self.t.iter().map(|v| Complex64::new(v[0], v[1])).collect()
    }
}
