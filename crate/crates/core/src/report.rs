//! Per-group pipeline and the summary record written by the CLI.

use serde::{Deserialize, Serialize};

use crate::characters::CharacterTable;
use crate::double::{Double, ModularData, ModularReport};
use crate::error::{Error, Result};
use crate::fusion::{factor_string, fusion_data, sum_rules, units, FusionData, SumRuleReport, TypeCount, UnitsData};
use crate::graphs::{connectivity_conjecture, embedding_irreps, mckay_check, ConjectureReport, EmbeddingSelection};
use crate::groups::{Family, GroupData};

/// Encode per-block quantum dimensions as "(1_3,2_3,3;4_6;...)": `p_s`
/// means s copies of p, a bare p means one.
pub fn encode_qdims(blocks: &[Vec<usize>]) -> String {
    let parts: Vec<String> = blocks
        .iter()
        .map(|b| {
            let mut v = b.clone();
            v.sort_unstable();
            let mut runs: Vec<(usize, usize)> = Vec::new();
            for x in v {
                match runs.last_mut() {
                    Some((p, s)) if *p == x => *s += 1,
                    _ => runs.push((x, 1)),
                }
            }
            runs.iter()
                .map(|&(p, s)| if s == 1 { p.to_string() } else { format!("{p}_{s}") })
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    format!("({})", parts.join(";"))
}

/// Inverse of `encode_qdims`; each block comes back sorted.
pub fn decode_qdims(text: &str) -> Result<Vec<Vec<usize>>> {
    let bad = || Error::Parse(format!("bad quantum dimension list '{text}'"));
    let inner = text.trim().strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(bad)?;
    let mut blocks = Vec::new();
    for block in inner.split(';') {
        let mut v = Vec::new();
        for tok in block.split(',') {
            let tok = tok.trim();
            let (p, s) = match tok.split_once('_') {
                Some((p, s)) => (p, s.parse::<usize>().map_err(|_| bad())?),
                None => (tok, 1),
            };
            let p: usize = p.parse().map_err(|_| bad())?;
            if s == 0 {
                return Err(bad());
            }
            v.extend(std::iter::repeat_n(p, s));
        }
        v.sort_unstable();
        blocks.push(v);
    }
    Ok(blocks)
}

/// One line of the sum-rule summary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    /// Row sums of the tensor-product rule agree for conjugate irreps of G.
    pub row_sum_group: bool,
    /// Same identity for the fusion ring of D(G).
    pub row_sum_double: bool,
    /// Complex irreps i of D(G) whose row sums agree with those of ī.
    pub complex_satisfying: usize,
    pub complex: TypeCount,
    pub quaternionic: TypeCount,
    pub real: TypeCount,
    pub units: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportBundle {
    pub name: String,
    pub order: usize,
    pub class_number: usize,
    pub rank: usize,
    pub exponent: usize,
    pub blocks: Vec<usize>,
    pub qdims: String,
    pub d_b: String,
    pub d_b_value: String,
    pub embedding: Vec<usize>,
    pub composite_embedding: bool,
    pub table: TableRow,
    pub x_conjugation_rule: bool,
    pub modular_residual: f64,
    pub t_order: usize,
    pub verlinde_residual: f64,
    pub conjecture_holds: Option<bool>,
    pub mckay: Option<String>,
}

impl ReportBundle {
    pub fn qdim_blocks(&self) -> Result<Vec<Vec<usize>>> {
        decode_qdims(&self.qdims)
    }

    pub fn csv_header() -> &'static str {
        "name,order,class_number,rank,exponent,d_b,row_sum_group,row_sum_double,complex_satisfying,\
complex,complex_vanishing,complex_accidental,quaternionic,quaternionic_vanishing,quaternionic_accidental,\
real,real_vanishing,real_accidental,units,qdims"
    }

    pub fn csv_row(&self) -> String {
        let t = &self.table;
        let tc = |c: &TypeCount| format!("{},{},{}", c.total, c.vanishing, c.accidental);
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},\"{}\"",
            self.name,
            self.order,
            self.class_number,
            self.rank,
            self.exponent,
            self.d_b,
            t.row_sum_group,
            t.row_sum_double,
            t.complex_satisfying,
            tc(&t.complex),
            tc(&t.quaternionic),
            tc(&t.real),
            t.units,
            self.qdims
        )
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    /// Skip the full fusion tensor and keep only the aggregates.
    pub aggregates_only: bool,
    pub family: Option<Family>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: crate::characters::DEFAULT_SEED,
            aggregates_only: false,
            family: None,
        }
    }
}

/// Everything computed for one group.
pub struct Analysis {
    pub name: String,
    pub table: CharacterTable,
    pub modular: ModularData,
    pub modular_report: ModularReport,
    pub fusion: FusionData,
    pub units: UnitsData,
    pub sum_rules: SumRuleReport,
    pub embedding: Option<EmbeddingSelection>,
    pub conjecture: Option<ConjectureReport>,
    pub mckay: Option<String>,
    pub row_sum_group: bool,
    pub bundle: ReportBundle,
}

pub fn analyze(name: &str, g: &GroupData, opts: &Options) -> Result<Analysis> {
    let d = Double::with_seed(g, opts.seed)?;
    let md = d.modular_data()?;
    let modular_report = md.verify()?;
    let fd = fusion_data(&md, !opts.aggregates_only)?;
    let inv = g.structure_invariants();
    let u = units(&md, &fd, inv.center.len() * inv.abelianization_order)?;
    let sr = sum_rules(&md, &fd, &u)?;
    let table = d.centralizers[0].table.clone();
    let (row_sum_group, _) = table.group_sumrule()?;

    let (embedding, conjecture, mckay) = match opts.family {
        Some(family) => {
            let sel = embedding_irreps(g, &table, family);
            let conj = if sel.embeddings.is_empty() {
                None
            } else {
                Some(connectivity_conjecture(&d, &md, &fd, &sel)?)
            };
            let mk = match family {
                Family::SU2 if g.order() > 1 => Some(mckay_check(&d, &md, &fd, &sel)?),
                _ => None,
            };
            (Some(sel), conj, mk)
        }
        None => (None, None, None),
    };

    let blocks = md.blocks.clone();
    let mut qblocks = Vec::new();
    let mut start = 0;
    for &b in &blocks {
        qblocks.push(md.qdims[start..start + b].to_vec());
        start += b;
    }
    let bundle = ReportBundle {
        name: name.to_string(),
        order: g.order(),
        class_number: g.class_number(),
        rank: md.rank(),
        exponent: g.exponent(),
        blocks,
        qdims: encode_qdims(&qblocks),
        d_b: factor_string(&fd.d_b),
        d_b_value: fd.d_b.to_string(),
        embedding: embedding.as_ref().map(|s| s.labels()).unwrap_or_default(),
        composite_embedding: embedding.as_ref().is_some_and(|s| s.composite),
        table: TableRow {
            row_sum_group,
            row_sum_double: sr.row_sum_rule,
            complex_satisfying: sr.row_sum_complex_satisfying,
            complex: sr.complex.clone(),
            quaternionic: sr.quaternionic.clone(),
            real: sr.real.clone(),
            units: u.unit_indices.len(),
        },
        x_conjugation_rule: sr.x_conjugation_rule,
        modular_residual: modular_report.max_residual(),
        t_order: modular_report.t_order,
        verlinde_residual: fd.max_residual,
        conjecture_holds: conjecture.as_ref().map(|c| c.holds),
        mckay: mckay.clone(),
    };
    Ok(Analysis {
        name: name.to_string(),
        table,
        modular: md,
        modular_report,
        fusion: fd,
        units: u,
        sum_rules: sr,
        embedding,
        conjecture,
        mckay,
        row_sum_group,
        bundle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qdim_notation() {
        let text = "(1,3_2,6,7,8;21_4,42;56_3)";
        let b = decode_qdims(text).unwrap();
        assert_eq!(b[0], vec![1, 3, 3, 6, 7, 8]);
        assert_eq!(b[2], vec![56, 56, 56]);
        assert_eq!(encode_qdims(&b), text);
        assert!(decode_qdims("1_2").is_err());
        assert!(decode_qdims("(1_0)").is_err());
    }
}
