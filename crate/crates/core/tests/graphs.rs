use qdouble_core::characters::character_table;
use qdouble_core::double::Double;
use qdouble_core::fusion::{fusion_data, units};
use qdouble_core::graphs::*;
use qdouble_core::groups::{catalog, family_of, Family};

fn setup(name: &str) -> (qdouble_core::groups::GroupData, Family) {
    (catalog(name).unwrap(), family_of(name).unwrap())
}

#[test]
fn hurwitz_n2_components_and_dot_round_trip() {
    let (g, _) = setup("Sigma168");
    let d = Double::new(&g).unwrap();
    let md = d.modular_data().unwrap();
    let fd = fusion_data(&md, true).unwrap();
    let gr = fusion_graph(&md, &fd, &[1]).unwrap();
    assert!(gr.oriented);
    let sizes: Vec<usize> = gr.weak_components.iter().map(Vec::len).collect();
    assert_eq!(sizes, vec![6, 5, 3, 4, 7, 7]);
    let labels = vertex_labels(&d);
    let text = dot_export(&gr, &labels, "N2");
    assert!(text.starts_with("digraph"));
    let (names, adj) = dot_parse(&text).unwrap();
    assert_eq!(names, labels);
    assert_eq!(adj, gr.adjacency);
}

#[test]
fn identity_graph_is_self_loops() {
    let (g, _) = setup("Z6");
    let d = Double::new(&g).unwrap();
    let md = d.modular_data().unwrap();
    let fd = fusion_data(&md, false).unwrap();
    let gr = fusion_graph(&md, &fd, &[0]).unwrap();
    assert_eq!(gr.component_count(), 36);
    assert!(!gr.oriented);
    let text = dot_export(&gr, &vertex_labels(&d), "N1");
    assert!(text.starts_with("graph"));
    assert_eq!(text.matches(" -- ").count(), 36);
    assert_eq!(dot_parse(&text).unwrap().1, gr.adjacency);
}

#[test]
fn classical_block_is_the_group_tensor_product_graph() {
    for name in ["binary_tetrahedral", "F21", "Sigma60", "Dhat4"] {
        let (g, fam) = setup(name);
        let d = Double::new(&g).unwrap();
        let md = d.modular_data().unwrap();
        let fd = fusion_data(&md, false).unwrap();
        let t = character_table(&g).unwrap();
        let mult = t.tensor_multiplicities().unwrap();
        let l = g.class_number();
        for emb in embedding_irreps(&g, &t, fam).embeddings {
            let gr = fusion_graph(&md, &fd, &[d.index_of(0, emb[0])]).unwrap();
            let block = gr.leading_block(l);
            for j in 0..l {
                for k in 0..l {
                    assert_eq!(block[j][k], mult[emb[0]][j][k] as u64, "{name}");
                }
            }
        }
    }
}

#[test]
fn unit_relabeling_is_a_graph_automorphism() {
    for name in ["Sigma36x3", "Dhat3", "binary_tetrahedral"] {
        let (g, _) = setup(name);
        let d = Double::new(&g).unwrap();
        let md = d.modular_data().unwrap();
        let fd = fusion_data(&md, true).unwrap();
        let inv = g.structure_invariants();
        let u = units(&md, &fd, inv.center.len() * inv.abelianization_order).unwrap();
        let tensor = fd.tensor.as_ref().unwrap();
        for perm in &u.permutations {
            for i in (0..md.rank()).step_by(5) {
                let n = tensor.matrix(i);
                for j in 0..md.rank() {
                    for k in 0..md.rank() {
                        assert_eq!(n[perm[j]][perm[k]], n[j][k], "{name} N{}", i + 1);
                    }
                }
            }
        }
    }
}

#[test]
fn embedding_selection_examples() {
    let pick = |name: &str| {
        let (g, fam) = setup(name);
        let t = character_table(&g).unwrap();
        (embedding_irreps(&g, &t, fam), t)
    };
    let (s, _) = pick("Sigma168xZ3");
    assert_eq!(s.labels(), vec![6, 7, 8, 9]);
    let (s, t) = pick("binary_octahedral");
    assert_eq!(s.labels(), vec![4, 5]);
    assert!(!t.is_faithful(2) && t.fs_indicators[2] == 1);
    let (s, _) = pick("Z6");
    assert!(s.composite);
    assert_eq!(s.embeddings.len(), 1);
    let (s, _) = pick("Sigma60");
    assert_eq!(s.labels(), vec![2, 3]);
}

#[test]
fn conjecture_on_small_cases() {
    for (name, comps) in [("Dhat3", 6), ("trivial", 1), ("Z2", 2)] {
        let (g, fam) = setup(name);
        let d = Double::new(&g).unwrap();
        let md = d.modular_data().unwrap();
        let fd = fusion_data(&md, false).unwrap();
        let sel = embedding_irreps(&g, &d.centralizers[0].table, fam);
        let rep = connectivity_conjecture(&d, &md, &fd, &sel).unwrap();
        assert!(rep.holds, "{name}");
        assert!(rep.results.iter().all(|r| r.components == comps));
    }
}

#[test]
fn mckay_types() {
    for (name, want) in [("Z6", "A5^(1)"), ("Z2", "A1^(1)"), ("Dhat2", "D4^(1)"), ("binary_icosahedral", "E8^(1)")] {
        let (g, fam) = setup(name);
        let d = Double::new(&g).unwrap();
        let md = d.modular_data().unwrap();
        let fd = fusion_data(&md, false).unwrap();
        let sel = embedding_irreps(&g, &d.centralizers[0].table, fam);
        assert_eq!(mckay_check(&d, &md, &fd, &sel).unwrap(), want);
    }
}
