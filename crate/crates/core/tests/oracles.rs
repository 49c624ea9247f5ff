mod common;

use qdouble_core::double::Double;
use qdouble_core::fixtures::match_up_to_relabeling;
use qdouble_core::fusion::verlinde_tensor;
use qdouble_core::groups::{catalog, catalog_names};
use qdouble_core::linalg::{max_diff, CMatrix};

#[test]
fn coset_and_direct_s_agree_up_to_order_48() {
    let mut names: Vec<String> = catalog_names().iter().map(|s| s.to_string()).collect();
    names.extend(["trivial", "Z2", "Z7", "Dhat6", "Delta3_3", "Delta6_3"].map(String::from));
    let mut tested = 0;
    for name in names {
        let g = catalog(&name).unwrap();
        if g.order() > 48 {
            continue;
        }
        let d = Double::new(&g).unwrap();
        let diff = max_diff(&d.s_matrix(), &d.s_matrix_direct());
        assert!(diff < 1e-10, "{name}: {diff:e}");
        tested += 1;
    }
    assert!(tested >= 15);
}

#[test]
fn ds3_exact_s_is_real_and_unitary() {
    let s = common::ds3_s_exact();
    assert_eq!(s.len(), 8);
    for row in &s {
        for x in row {
            assert_eq!(*x, x.conj());
        }
    }
    // first row: quantum dimensions / |G|
    let q: Vec<f64> = s[0].iter().map(|x| x.embed().re * 6.0).collect();
    assert_eq!(q, vec![1.0, 1.0, 2.0, 3.0, 3.0, 2.0, 2.0, 2.0]);
}

#[test]
fn ds3_fusion_matches_exact_verlinde() {
    let exact_s = common::ds3_s_exact();
    let n_exact = common::ds3_fusion_exact(&exact_s);
    let g = common::s3_group();
    let d = Double::new(&g).unwrap();
    let md = d.modular_data().unwrap();
    let expected = CMatrix::from_fn(8, 8, |i, j| exact_s[i][j].embed());
    let m = match_up_to_relabeling(&expected, &md.s, 1e-12);
    let pi = m.relabeling.expect("S of D(S3) matches the exact oracle");
    let (tensor, residual) = verlinde_tensor(&md).unwrap();
    assert!(residual < 1e-9);
    for a in 0..8 {
        for b in 0..8 {
            for c in 0..8 {
                assert_eq!(tensor.get(pi[a], pi[b], pi[c]) as i64, n_exact[a][b][c], "N[{a}][{b}][{c}]");
            }
        }
    }
    let dims = [1, 1, 2, 3, 3, 2, 2, 2];
    for a in 0..8 {
        for b in 0..8 {
            let lhs: i64 = (0..8).map(|c| n_exact[a][b][c] * dims[c]).sum();
            assert_eq!(lhs, dims[a] * dims[b]);
        }
    }
}
