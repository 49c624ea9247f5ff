//! Fusion graphs, embedding irreps, connectivity and McKay checks, DOT I/O.

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::characters::CharacterTable;
use crate::double::{Double, ModularData};
use crate::error::{Error, Result};
use crate::fusion::{fusion_matrix, FusionData};
use crate::groups::{Family, GroupData};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionGraph {
    /// Irreps whose fusion matrices were summed (one unless composite).
    pub irreps: Vec<usize>,
    pub adjacency: Vec<Vec<u64>>,
    pub weak_components: Vec<Vec<usize>>,
    pub oriented: bool,
}

pub fn weak_components(adj: &[Vec<u64>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut uf = UnionFind::<usize>::new(n);
    for (j, row) in adj.iter().enumerate() {
        for (k, &v) in row.iter().enumerate() {
            if v > 0 {
                uf.union(j, k);
            }
        }
    }
    let labels = uf.into_labeling();
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for v in 0..n {
        let root = labels[v];
        if slot[root] == usize::MAX {
            slot[root] = comps.len();
            comps.push(Vec::new());
        }
        comps[slot[root]].push(v);
    }
    comps
}

impl FusionGraph {
    pub fn from_adjacency(irreps: Vec<usize>, adjacency: Vec<Vec<u64>>) -> Self {
        let n = adjacency.len();
        let oriented = (0..n).any(|j| (0..n).any(|k| adjacency[j][k] != adjacency[k][j]));
        let weak_components = weak_components(&adjacency);
        FusionGraph {
            irreps,
            adjacency,
            weak_components,
            oriented,
        }
    }

    pub fn component_count(&self) -> usize {
        self.weak_components.len()
    }

    /// Induced subgraph on the first `n` vertices.
    pub fn leading_block(&self, n: usize) -> Vec<Vec<u64>> {
        self.adjacency[..n].iter().map(|row| row[..n].to_vec()).collect()
    }
}

/// Graph of N_i (or of Σ N_i over `irreps`).
pub fn fusion_graph(md: &ModularData, fd: &FusionData, irreps: &[usize]) -> Result<FusionGraph> {
    let r = md.rank();
    let mut adj = vec![vec![0u64; r]; r];
    for &i in irreps {
        if i >= r {
            return Err(Error::IndexOutOfRange(i + 1));
        }
        let m = match &fd.tensor {
            Some(t) => t.matrix(i),
            None => fusion_matrix(md, i)?,
        };
        for (a, row) in adj.iter_mut().zip(m) {
            for (x, y) in a.iter_mut().zip(row) {
                *x += y;
            }
        }
    }
    Ok(FusionGraph::from_adjacency(irreps.to_vec(), adj))
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingSelection {
    /// Each embedding is a list of irreps of G summed into one representation.
    pub embeddings: Vec<Vec<usize>>,
    pub composite: bool,
}

impl EmbeddingSelection {
    /// 1-based labels of all irreps taking part in some embedding.
    pub fn labels(&self) -> Vec<usize> {
        let mut l: Vec<usize> = self.embeddings.iter().flatten().map(|i| i + 1).collect();
        l.sort_unstable();
        l.dedup();
        l
    }
}

/// Faithful irreps realizing G inside SU(2) or SU(3). Cyclic groups use
/// a reducible pair χ ⊕ χ̄ of faithful linear characters.
pub fn embedding_irreps(g: &GroupData, t: &CharacterTable, target: Family) -> EmbeddingSelection {
    let l = t.class_number();
    if target == Family::SU2 && g.is_cyclic() {
        let first = (0..l).find(|&r| t.degrees[r] == 1 && t.is_faithful(r) && t.conjugate[r] != r);
        let pick = first.or_else(|| (0..l).find(|&r| t.degrees[r] == 1 && t.is_faithful(r)));
        return EmbeddingSelection {
            embeddings: pick.map(|r| vec![vec![r, t.conjugate[r]]]).unwrap_or_default(),
            composite: true,
        };
    }
    let embeddings = (0..l)
        .filter(|&r| t.is_faithful(r))
        .filter(|&r| match target {
            Family::SU2 => t.degrees[r] == 2 && t.fs_indicators[r] == -1,
            Family::SU3 => t.degrees[r] == 3,
        })
        .map(|r| vec![r])
        .collect();
    EmbeddingSelection {
        embeddings,
        composite: false,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureResult {
    /// 1-based labels of the summed irreps.
    pub labels: Vec<usize>,
    pub components: usize,
    pub component_sizes: Vec<usize>,
    pub matches_blocks: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub class_number: usize,
    pub results: Vec<ConjectureResult>,
    pub holds: bool,
}

/// Whether every component is exactly the set of irreps of one class block.
pub fn components_match_blocks(graph: &FusionGraph, d: &Double) -> bool {
    let l = d.group.class_number();
    let mut seen = vec![false; l];
    for comp in &graph.weak_components {
        let c = d.irreps[comp[0]].class_index;
        if seen[c] || comp.iter().any(|&v| d.irreps[v].class_index != c) {
            return false;
        }
        seen[c] = true;
        if comp.len() != d.centralizers[c].table.class_number() {
            return false;
        }
    }
    seen.iter().all(|&s| s)
}

pub fn connectivity_conjecture(
    d: &Double,
    md: &ModularData,
    fd: &FusionData,
    sel: &EmbeddingSelection,
) -> Result<ConjectureReport> {
    let l = d.group.class_number();
    let mut results = Vec::new();
    for emb in &sel.embeddings {
        // irrep ([e], ρ) of D(G) has the same index as ρ
        let lifted: Vec<usize> = emb.iter().map(|&r| d.index_of(0, r)).collect();
        let graph = fusion_graph(md, fd, &lifted)?;
        results.push(ConjectureResult {
            labels: emb.iter().map(|r| r + 1).collect(),
            components: graph.component_count(),
            component_sizes: graph.weak_components.iter().map(|c| c.len()).collect(),
            matches_blocks: components_match_blocks(&graph, d),
        });
    }
    let holds = !results.is_empty() && results.iter().all(|r| r.components == l && r.matches_blocks);
    Ok(ConjectureReport {
        class_number: l,
        results,
        holds,
    })
}

fn add_edge(a: &mut [Vec<u64>], i: usize, j: usize) {
    a[i][j] += 1;
    a[j][i] += 1;
}

/// Star with arms of the given lengths; vertex 0 is the center.
fn star(arms: &[usize]) -> Vec<Vec<u64>> {
    let n = 1 + arms.iter().sum::<usize>();
    let mut a = vec![vec![0; n]; n];
    let mut next = 1;
    for &len in arms {
        let mut prev = 0;
        for _ in 0..len {
            add_edge(&mut a, prev, next);
            prev = next;
            next += 1;
        }
    }
    a
}

/// Affine Dynkin diagrams with `vertices` nodes, with their labels.
pub fn affine_diagrams(vertices: usize) -> Vec<(String, Vec<Vec<u64>>)> {
    let n = vertices;
    let mut out = Vec::new();
    if n == 2 {
        out.push(("A1^(1)".to_string(), vec![vec![0, 2], vec![2, 0]]));
    } else if n >= 3 {
        let mut a = vec![vec![0; n]; n];
        for i in 0..n {
            add_edge(&mut a, i, (i + 1) % n);
        }
        out.push((format!("A{}^(1)", n - 1), a));
    }
    if n >= 5 {
        // chain of n-4 nodes, two leaves at each end
        let chain = n - 4;
        let mut a = vec![vec![0; n]; n];
        for i in 0..chain - 1 {
            add_edge(&mut a, i, i + 1);
        }
        add_edge(&mut a, 0, chain);
        add_edge(&mut a, 0, chain + 1);
        add_edge(&mut a, chain - 1, chain + 2);
        add_edge(&mut a, chain - 1, chain + 3);
        out.push((format!("D{}^(1)", n - 1), a));
    }
    match n {
        7 => out.push(("E6^(1)".to_string(), star(&[2, 2, 2]))),
        8 => out.push(("E7^(1)".to_string(), star(&[3, 3, 1]))),
        9 => out.push(("E8^(1)".to_string(), star(&[5, 2, 1]))),
        _ => {}
    }
    out
}

/// Exact isomorphism of multigraphs given by adjacency matrices.
pub fn isomorphic(a: &[Vec<u64>], b: &[Vec<u64>]) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let sig = |m: &[Vec<u64>], i: usize| (m[i].iter().sum::<u64>(), m[i][i]);
    let mut sa: Vec<_> = (0..n).map(|i| sig(a, i)).collect();
    let mut sb: Vec<_> = (0..n).map(|i| sig(b, i)).collect();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return false;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(a: &[Vec<u64>], b: &[Vec<u64>], i: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        let n = a.len();
        if i == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] || a[i].iter().sum::<u64>() != b[cand].iter().sum::<u64>() {
                continue;
            }
            // map holds images of earlier vertices in b
            let ok = a[i][i] == b[cand][cand]
                && (0..i).all(|j| a[i][j] == b[cand][map[j]] && a[j][i] == b[map[j]][cand]);
            if ok {
                map[i] = cand;
                used[cand] = true;
                if extend(a, b, i + 1, map, used) {
                    return true;
                }
                used[cand] = false;
                map[i] = usize::MAX;
            }
        }
        false
    }
    extend(a, b, 0, &mut map, &mut used)
}

/// Classical block of the embedding graph against the affine ADE list.
pub fn mckay_check(d: &Double, md: &ModularData, fd: &FusionData, sel: &EmbeddingSelection) -> Result<String> {
    let emb = sel.embeddings.first().ok_or(Error::McKayFailure)?;
    let l = d.group.class_number();
    let lifted: Vec<usize> = emb.iter().map(|&r| d.index_of(0, r)).collect();
    let graph = fusion_graph(md, fd, &lifted)?;
    let block = graph.leading_block(l);
    let sym: Vec<Vec<u64>> = (0..l)
        .map(|i| (0..l).map(|j| block[i][j].max(block[j][i])).collect())
        .collect();
    affine_diagrams(l)
        .into_iter()
        .find(|(_, a)| isomorphic(&sym, a))
        .map(|(name, _)| name)
        .ok_or(Error::McKayFailure)
}

/// Vertex names "(class:irrep)", 1-based.
pub fn vertex_labels(d: &Double) -> Vec<String> {
    d.irreps
        .iter()
        .map(|i| format!("({}:{})", i.class_index + 1, i.centralizer_irrep + 1))
        .collect()
}

pub fn dot_export(graph: &FusionGraph, labels: &[String], name: &str) -> String {
    let (kw, arrow) = if graph.oriented { ("digraph", "->") } else { ("graph", "--") };
    let mut s = format!("{kw} \"{name}\" {{\n");
    for l in labels {
        s.push_str(&format!("  \"{l}\";\n"));
    }
    let n = graph.adjacency.len();
    for j in 0..n {
        for k in 0..n {
            if !graph.oriented && k < j {
                continue;
            }
            for _ in 0..graph.adjacency[j][k] {
                s.push_str(&format!("  \"{}\" {arrow} \"{}\";\n", labels[j], labels[k]));
            }
        }
    }
    s.push_str("}\n");
    s
}

fn quoted(s: &str) -> Option<(&str, &str)> {
    let s = s.trim_start().strip_prefix('"')?;
    let end = s.find('"')?;
    Some((&s[..end], &s[end + 1..]))
}

/// Parse DOT text written by `dot_export` back into names and adjacency.
pub fn dot_parse(text: &str) -> Result<(Vec<String>, Vec<Vec<u64>>)> {
    let bad = |l: &str| Error::Parse(format!("unexpected DOT line '{l}'"));
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty DOT".into()))?;
    let directed = if header.starts_with("digraph") {
        true
    } else if header.starts_with("graph") {
        false
    } else {
        return Err(bad(header));
    };
    let mut names: Vec<String> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for line in lines {
        if line == "}" {
            break;
        }
        let body = line.strip_suffix(';').ok_or_else(|| bad(line))?;
        let (a, rest) = quoted(body).ok_or_else(|| bad(line))?;
        let rest = rest.trim();
        if rest.is_empty() {
            names.push(a.to_string());
            continue;
        }
        let rest = rest
            .strip_prefix("->")
            .or_else(|| rest.strip_prefix("--"))
            .ok_or_else(|| bad(line))?;
        let (b, tail) = quoted(rest).ok_or_else(|| bad(line))?;
        if !tail.trim().is_empty() {
            return Err(bad(line));
        }
        let pos = |x: &str| names.iter().position(|n| n == x).ok_or_else(|| bad(line));
        edges.push((pos(a)?, pos(b)?));
    }
    let n = names.len();
    let mut adj = vec![vec![0u64; n]; n];
    for (a, b) in edges {
        adj[a][b] += 1;
        if !directed && a != b {
            adj[b][a] += 1;
        }
    }
    Ok((names, adj))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_diagram_shapes() {
        let d = affine_diagrams(5);
        let d4 = &d.iter().find(|(n, _)| n == "D4^(1)").unwrap().1;
        let degs: Vec<u64> = d4.iter().map(|r| r.iter().sum()).collect();
        assert_eq!(degs.iter().filter(|&&x| x == 4).count(), 1);
        for n in [7, 8, 9] {
            let list = affine_diagrams(n);
            let e = list.iter().find(|(l, _)| l.starts_with('E')).unwrap();
            let edges: u64 = e.1.iter().flatten().sum::<u64>() / 2;
            assert_eq!(edges as usize, n - 1);
        }
    }

    #[test]
    fn isomorphism_basics() {
        let cyc = &affine_diagrams(6)[0].1;
        let mut relabeled = vec![vec![0u64; 6]; 6];
        let p = [3, 0, 4, 1, 5, 2];
        for i in 0..6 {
            for j in 0..6 {
                relabeled[p[i]][p[j]] = cyc[i][j];
            }
        }
        assert!(isomorphic(cyc, &relabeled));
        assert!(!isomorphic(cyc, &affine_diagrams(6)[1].1));
    }

    #[test]
    fn components_by_union_find() {
        let adj = vec![vec![1, 0, 0], vec![0, 0, 1], vec![0, 0, 0]];
        assert_eq!(weak_components(&adj), vec![vec![0], vec![1, 2]]);
    }
}
