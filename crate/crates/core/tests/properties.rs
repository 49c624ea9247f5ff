use proptest::prelude::*;

use qdouble_core::cyclotomic::Cyclotomic;
use qdouble_core::double::{Double, ModularJson};
use qdouble_core::fusion::{fusion_data, units};
use qdouble_core::groups::catalog;
use qdouble_core::report::{decode_qdims, encode_qdims};

fn cyclo(n: u32) -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec(-5i64..=5, 1..8).prop_map(move |c| Cyclotomic::from_poly_in(n, 1, &c))
}

fn small_group() -> impl Strategy<Value = String> {
    prop_oneof![
        (1u32..=12).prop_map(|n| format!("Z{n}")),
        (2u32..=6).prop_map(|n| format!("Dhat{n}")),
        (1u32..=3).prop_map(|n| format!("Delta3_{n}")),
        (1u32..=2).prop_map(|n| format!("Delta6_{n}")),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn embedding_is_a_ring_homomorphism((x, y) in prop::sample::select(vec![3u32, 4, 7, 8, 12, 14]).prop_flat_map(|n| (cyclo(n), cyclo(n)))) {
        let (ex, ey) = (x.embed(), y.embed());
        prop_assert!(((&x + &y).embed() - (ex + ey)).norm() < 1e-9);
        prop_assert!(((&x * &y).embed() - ex * ey).norm() < 1e-9);
        prop_assert!((x.conj().embed() - ex.conj()).norm() < 1e-9);
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
    }

    #[test]
    fn cyclotomic_text_round_trips(x in cyclo(12)) {
        let back: Cyclotomic = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn qdim_notation_round_trips(blocks in prop::collection::vec(prop::collection::vec(1usize..100, 1..12), 1..10)) {
        let text = encode_qdims(&blocks);
        let back = decode_qdims(&text).unwrap();
        let sorted: Vec<Vec<usize>> = blocks.iter().map(|b| { let mut b = b.clone(); b.sort_unstable(); b }).collect();
        prop_assert_eq!(back, sorted);
    }

    #[test]
    fn class_equation_and_associativity(name in small_group(), x in any::<u64>()) {
        let g = catalog(&name).unwrap();
        let total: usize = g.classes().iter().map(|c| c.members.len()).sum();
        prop_assert_eq!(total, g.order());
        for c in g.classes() {
            prop_assert_eq!(g.order() % c.members.len(), 0);
        }
        let n = g.order() as u64;
        let (a, b, c) = ((x % n) as usize, ((x / n) % n) as usize, ((x / n / n) % n) as usize);
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
    }

    #[test]
    fn modular_json_round_trips_bit_exactly(name in small_group()) {
        let g = catalog(&name).unwrap();
        let md = Double::new(&g).unwrap().modular_data().unwrap();
        let parsed = ModularJson::parse(&md.to_json()).unwrap();
        let s = parsed.s_matrix();
        for (a, b) in s.iter().zip(md.s.iter()) {
            prop_assert_eq!(a.re.to_bits(), b.re.to_bits());
            prop_assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
        for (a, b) in parsed.t_vector().iter().zip(&md.t) {
            prop_assert_eq!(a.re.to_bits(), b.re.to_bits());
            prop_assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn unit_matrices_commute_with_fusion(name in small_group()) {
        let g = catalog(&name).unwrap();
        let md = Double::new(&g).unwrap().modular_data().unwrap();
        let fd = fusion_data(&md, true).unwrap();
        let inv = g.structure_invariants();
        let u = units(&md, &fd, inv.center.len() * inv.abelianization_order).unwrap();
        let t = fd.tensor.as_ref().unwrap();
        let r = md.rank();
        for (ui, perm) in u.unit_indices.iter().zip(&u.permutations) {
            // N_u is the permutation j -> u·j
            let mut seen = vec![false; r];
            for j in 0..r {
                prop_assert_eq!(t.get(*ui, j, perm[j]), 1);
                prop_assert!(!seen[perm[j]]);
                seen[perm[j]] = true;
            }
            for i in 0..r {
                for j in 0..r {
                    for k in 0..r {
                        prop_assert_eq!(t.get(i, perm[j], perm[k]), t.get(i, j, k));
                    }
                }
            }
        }
    }
}
