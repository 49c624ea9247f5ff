//! Reference values and comparison against computed reports.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::fusion::TypeCount;
use crate::linalg::CMatrix;
use crate::report::{decode_qdims, ReportBundle};

const BUILTIN: &str = include_str!("../fixtures/reference.toml");

/// Tolerance on entries of scale·S.
pub const S_MATRIX_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixtureSet {
    pub group: Vec<GroupFixture>,
    #[serde(default)]
    pub s_matrix: Option<SMatrixFixture>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupFixture {
    pub name: String,
    pub order: usize,
    pub class_number: usize,
    pub rank: usize,
    #[serde(default)]
    pub exponent: Option<usize>,
    #[serde(default)]
    pub blocks: Option<Vec<usize>>,
    #[serde(default)]
    pub qdims: Option<String>,
    #[serde(default)]
    pub d_b: Option<String>,
    #[serde(default)]
    pub embedding: Option<Vec<usize>>,
    #[serde(default)]
    pub mckay: Option<String>,
    /// Quantities whose published value contradicts its own definition;
    /// a mismatch there is reported but not counted as a failure.
    #[serde(default)]
    pub disputed: Vec<String>,
    pub row: RowFixture,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RowFixture {
    pub row_sum_group: bool,
    /// "all" or a count.
    pub satisfying: String,
    pub complex: [usize; 3],
    pub quaternionic: [usize; 3],
    pub real: [usize; 3],
    pub units: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SMatrixFixture {
    pub group: String,
    pub scale: i64,
    pub conductor: u32,
    pub root_power: i64,
    pub block_sizes: Vec<usize>,
    pub alpha: Vec<Vec<i64>>,
    pub block: Vec<BlockFixture>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockFixture {
    /// 1-based (I, J) with I <= J.
    pub at: [usize; 2],
    pub factor: i64,
    #[serde(default)]
    pub rows: Vec<String>,
}

impl FixtureSet {
    pub fn builtin() -> Self {
        Self::from_toml(BUILTIN).expect("embedded fixtures parse")
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Fixture(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Fixture(e.to_string()))
    }

    /// JSON if the extension says so, TOML otherwise.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Fixture(format!("{}: {e}", path.display())))?;
        if path.extension().is_some_and(|e| e == "json") {
            Self::from_json(&text)
        } else {
            Self::from_toml(&text)
        }
    }

    pub fn get(&self, name: &str) -> Option<&GroupFixture> {
        self.group.iter().find(|g| g.name == name)
    }
}

/// One compared quantity.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub group: String,
    pub quantity: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
    pub disputed: bool,
}

impl Check {
    /// Passed, or failed only on a disputed value.
    pub fn ok(&self) -> bool {
        self.pass || self.disputed
    }

    pub fn status(&self) -> &'static str {
        match (self.pass, self.disputed) {
            (true, _) => "ok",
            (false, true) => "DISPUTED",
            (false, false) => "FAIL",
        }
    }

    fn new(group: &str, quantity: &str, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Check {
            group: group.to_string(),
            quantity: quantity.to_string(),
            pass: expected == actual,
            disputed: false,
            expected,
            actual,
        }
    }
}

fn triple(c: &TypeCount) -> String {
    format!("{}/{}/{}", c.total, c.vanishing, c.accidental)
}

fn fixture_triple(t: &[usize; 3]) -> String {
    format!("{}/{}/{}", t[0], t[1], t[2])
}

pub fn compare_group(fx: &GroupFixture, b: &ReportBundle) -> Vec<Check> {
    let n = fx.name.as_str();
    let mut out = vec![
        Check::new(n, "order", fx.order, b.order),
        Check::new(n, "class_number", fx.class_number, b.class_number),
        Check::new(n, "rank", fx.rank, b.rank),
    ];
    if let Some(e) = fx.exponent {
        out.push(Check::new(n, "exponent", e, b.exponent));
        out.push(Check::new(n, "t_order", e, b.t_order));
    }
    if let Some(bl) = &fx.blocks {
        out.push(Check::new(n, "blocks", format!("{bl:?}"), format!("{:?}", b.blocks)));
    }
    if let Some(q) = &fx.qdims {
        let mut c = Check::new(n, "qdims", q, &b.qdims);
        c.pass = matches!((decode_qdims(q), b.qdim_blocks()), (Ok(x), Ok(y)) if x == y);
        out.push(c);
    }
    if let Some(d) = &fx.d_b {
        out.push(Check::new(n, "d_B", d, &b.d_b));
    }
    if let Some(e) = &fx.embedding {
        let mut c = Check::new(n, "embedding", format!("{e:?}"), format!("{:?}", b.embedding));
        c.pass = !e.is_empty() && e.iter().all(|l| b.embedding.contains(l));
        out.push(c);
    }
    if let Some(m) = &fx.mckay {
        out.push(Check::new(n, "mckay", m, b.mckay.as_deref().unwrap_or("none")));
    }
    let r = &fx.row;
    let t = &b.table;
    let satisfying = if r.satisfying == "all" {
        r.complex[0].to_string()
    } else {
        r.satisfying.clone()
    };
    let row_sum_double = satisfying == r.complex[0].to_string();
    out.extend([
        Check::new(n, "row_sum_group", r.row_sum_group, t.row_sum_group),
        Check::new(n, "row_sum_double", row_sum_double, t.row_sum_double),
        Check::new(n, "complex_satisfying", satisfying, t.complex_satisfying),
        Check::new(n, "complex", fixture_triple(&r.complex), triple(&t.complex)),
        Check::new(n, "quaternionic", fixture_triple(&r.quaternionic), triple(&t.quaternionic)),
        Check::new(n, "real", fixture_triple(&r.real), triple(&t.real)),
        Check::new(n, "units", r.units, t.units),
    ]);
    for c in &mut out {
        c.disputed = fx.disputed.contains(&c.quantity);
    }
    out
}

impl SMatrixFixture {
    /// The expected scale·S as a dense complex matrix.
    pub fn matrix(&self) -> Result<CMatrix> {
        let bad = |m: String| Error::Fixture(m);
        let alphas: Vec<Complex64> = self
            .alpha
            .iter()
            .map(|x| Cyclotomic::from_poly_in(self.conductor, self.root_power, x).embed())
            .collect();
        let starts: Vec<usize> = self
            .block_sizes
            .iter()
            .scan(0, |acc, &s| {
                let st = *acc;
                *acc += s;
                Some(st)
            })
            .collect();
        let r: usize = self.block_sizes.iter().sum();
        let mut m = CMatrix::zeros(r, r);
        let nb = self.block_sizes.len();
        let mut seen = vec![vec![false; nb]; nb];
        for blk in &self.block {
            let [bi, bj] = blk.at;
            if bi == 0 || bj == 0 || bi > nb || bj > nb || bi > bj {
                return Err(bad(format!("block index {:?}", blk.at)));
            }
            let (bi, bj) = (bi - 1, bj - 1);
            seen[bi][bj] = true;
            let (u, v) = (self.block_sizes[bi], self.block_sizes[bj]);
            if blk.factor == 0 || blk.rows.is_empty() {
                continue;
            }
            if blk.rows.len() != u {
                return Err(bad(format!("block {:?} has {} rows, expected {u}", blk.at, blk.rows.len())));
            }
            for (a, row) in blk.rows.iter().enumerate() {
                let toks: Vec<&str> = row.split_whitespace().collect();
                if toks.len() != v {
                    return Err(bad(format!("block {:?} row {} has {} entries", blk.at, a + 1, toks.len())));
                }
                for (c, tok) in toks.iter().enumerate() {
                    let (sign, body) = match tok.strip_prefix('-') {
                        Some(rest) => (-1.0, rest),
                        None => (1.0, *tok),
                    };
                    let val = if let Some(k) = body.strip_prefix('a') {
                        let k: usize = k.parse().map_err(|_| bad(format!("entry '{tok}'")))?;
                        *alphas.get(k.wrapping_sub(1)).ok_or_else(|| bad(format!("no alpha {k}")))?
                    } else {
                        Complex64::new(body.parse::<f64>().map_err(|_| bad(format!("entry '{tok}'")))?, 0.0)
                    };
                    let z = val * sign * blk.factor as f64;
                    let (x, y) = (starts[bi] + a, starts[bj] + c);
                    m[(x, y)] = z;
                    m[(y, x)] = z;
                }
            }
        }
        for i in 0..nb {
            for j in i..nb {
                if !seen[i][j] {
                    return Err(bad(format!("missing block ({}, {})", i + 1, j + 1)));
                }
            }
        }
        Ok(m)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SMatrixMatch {
    pub entries: usize,
    /// Largest deviation under the best relabeling found.
    pub max_error: f64,
    /// Computed index for each fixture index, when a match exists.
    pub relabeling: Option<Vec<usize>>,
}

impl SMatrixMatch {
    pub fn pass(&self) -> bool {
        self.relabeling.is_some() && self.max_error <= S_MATRIX_TOLERANCE
    }
}

fn row_signature(m: &CMatrix, i: usize) -> Vec<(i64, i64)> {
    let q = |x: f64| (x * 1e6).round() as i64;
    let mut v: Vec<(i64, i64)> = m.row(i).iter().map(|z| (q(z.re), q(z.im))).collect();
    v.sort_unstable();
    v
}

/// Search for a simultaneous relabeling π with computed[π i][π j] equal to
/// expected[i][j]; irreps only get exchanged among rows that look alike.
pub fn match_up_to_relabeling(expected: &CMatrix, computed: &CMatrix, tol: f64) -> SMatrixMatch {
    let n = expected.nrows();
    let entries = n * n;
    if computed.nrows() != n {
        return SMatrixMatch {
            entries,
            max_error: f64::INFINITY,
            relabeling: None,
        };
    }
    let sig_e: Vec<_> = (0..n).map(|i| row_signature(expected, i)).collect();
    let sig_c: Vec<_> = (0..n).map(|i| row_signature(computed, i)).collect();
    let cands: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&k| sig_c[k] == sig_e[i]).collect())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| cands[i].len());

    struct Search<'a> {
        e: &'a CMatrix,
        c: &'a CMatrix,
        tol: f64,
        cands: &'a [Vec<usize>],
        order: &'a [usize],
        map: Vec<usize>,
        used: Vec<bool>,
    }
    impl Search<'_> {
        fn run(&mut self, depth: usize) -> bool {
            if depth == self.order.len() {
                return true;
            }
            let i = self.order[depth];
            for idx in 0..self.cands[i].len() {
                let k = self.cands[i][idx];
                if self.used[k] {
                    continue;
                }
                let ok = (self.e[(i, i)] - self.c[(k, k)]).norm() <= self.tol
                    && self.order[..depth].iter().all(|&j| {
                        let kj = self.map[j];
                        (self.e[(i, j)] - self.c[(k, kj)]).norm() <= self.tol
                    });
                if ok {
                    self.map[i] = k;
                    self.used[k] = true;
                    if self.run(depth + 1) {
                        return true;
                    }
                    self.used[k] = false;
                }
            }
            false
        }
    }
    let mut s = Search {
        e: expected,
        c: computed,
        tol,
        cands: &cands,
        order: &order,
        map: vec![usize::MAX; n],
        used: vec![false; n],
    };
    if !s.run(0) {
        return SMatrixMatch {
            entries,
            max_error: f64::INFINITY,
            relabeling: None,
        };
    }
    let map = s.map;
    let mut max_error: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            max_error = max_error.max((expected[(i, j)] - computed[(map[i], map[j])]).norm());
        }
    }
    SMatrixMatch {
        entries,
        max_error,
        relabeling: Some(map),
    }
}

/// Compare scale·S of the computed modular data with the S-matrix fixture.
pub fn check_s_matrix(fx: &SMatrixFixture, s: &CMatrix) -> Result<SMatrixMatch> {
    let expected = fx.matrix()?;
    let scaled = s.map(|z| z * fx.scale as f64);
    Ok(match_up_to_relabeling(&expected, &scaled, S_MATRIX_TOLERANCE))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_fixtures_parse() {
        let f = FixtureSet::builtin();
        assert_eq!(f.group.len(), 20);
        let a = f.s_matrix.as_ref().unwrap();
        let m = a.matrix().unwrap();
        assert_eq!(m.nrows(), 32);
        // unitarity of S = m / 168
        let s = m.map(|z| z / 168.0);
        let p = crate::linalg::cmul(&s, &s.adjoint());
        assert!(crate::linalg::max_diff(&p, &CMatrix::identity(32, 32)) < 1e-12);
    }

    #[test]
    fn relabeling_found() {
        let m = CMatrix::from_fn(3, 3, |i, j| Complex64::new((i * 3 + j * j) as f64, 0.0));
        let m = &m + m.transpose();
        let p = [2, 0, 1];
        let c = CMatrix::from_fn(3, 3, |i, j| {
            let inv = |x: usize| p.iter().position(|&y| y == x).unwrap();
            m[(inv(i), inv(j))]
        });
        let r = match_up_to_relabeling(&m, &c, 1e-12);
        assert!(r.pass());
        assert_eq!(r.relabeling.unwrap(), p.to_vec());
    }
}
