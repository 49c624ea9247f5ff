//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use qdouble_core::cyclotomic::{as_integer, Cyclotomic};
use qdouble_core::groups::{GroupData, GroupElement, Permutation};

type Perm = [usize; 3];

fn compose(a: &Perm, b: &Perm) -> Perm {
    [a[b[0]], a[b[1]], a[b[2]]]
}

fn inverse(a: &Perm) -> Perm {
    let mut r = [0; 3];
    for i in 0..3 {
        r[a[i]] = i;
    }
    r
}

fn fixed_points(a: &Perm) -> usize {
    (0..3).filter(|&i| a[i] == i).count()
}

const E: Perm = [0, 1, 2];
const T: Perm = [1, 0, 2];
const C: Perm = [1, 2, 0];

fn s3() -> Vec<Perm> {
    vec![E, T, [0, 2, 1], [2, 1, 0], C, compose(&C, &C)]
}

/// Class representatives in the order e, transposition, 3-cycle.
fn reps() -> [Perm; 3] {
    [E, T, C]
}

fn class_of(g: &Perm) -> usize {
    match fixed_points(g) {
        3 => 0,
        1 => 1,
        _ => 2,
    }
}

/// Hand-written character tables of C(e) = S3, C(t) = Z2, C(c) = Z3.
fn centralizer_char(class: usize, irrep: usize, h: &Perm) -> Cyclotomic {
    let int = |v| Cyclotomic::from_int(3, v);
    match class {
        0 => match (irrep, fixed_points(h)) {
            (0, _) => int(1),
            (1, 1) => int(-1),
            (1, _) => int(1),
            (2, 3) => int(2),
            (2, 1) => int(0),
            (2, _) => int(-1),
            _ => unreachable!(),
        },
        1 => int(if irrep == 1 && *h != E { -1 } else { 1 }),
        _ => {
            let j = if *h == E {
                0
            } else if *h == C {
                1
            } else {
                2
            };
            Cyclotomic::zeta_pow(3, (j * irrep) as i64)
        }
    }
}

const IRREPS_PER_CLASS: [usize; 3] = [3, 2, 3];

pub fn ds3_labels() -> Vec<(usize, usize)> {
    (0..3).flat_map(|c| (0..IRREPS_PER_CLASS[c]).map(move |i| (c, i))).collect()
}

/// x with x · rep · x⁻¹ = g.
fn transporter(g: &Perm) -> Perm {
    let rep = reps()[class_of(g)];
    *s3()
        .iter()
        .find(|x| compose(&compose(x, &rep), &inverse(x)) == *g)
        .unwrap()
}

/// Exact S of D(S3) in Q(ζ3) from the double-coset-free sum over commuting pairs.
pub fn ds3_s_exact() -> Vec<Vec<Cyclotomic>> {
    let labels = ds3_labels();
    let g = s3();
    let sixth = Cyclotomic::from_rational(3, num_rational::BigRational::new(1.into(), 6.into()));
    labels
        .iter()
        .map(|&(a, al)| {
            labels
                .iter()
                .map(|&(b, be)| {
                    let mut acc = Cyclotomic::zero(3);
                    for x in g.iter().filter(|x| class_of(x) == a) {
                        for y in g.iter().filter(|y| class_of(y) == b) {
                            if compose(x, y) != compose(y, x) {
                                continue;
                            }
                            let tx = transporter(x);
                            let ty = transporter(y);
                            let h_in_cx = compose(&compose(&inverse(&tx), y), &tx);
                            let g_in_cy = compose(&compose(&inverse(&ty), x), &ty);
                            let term = &centralizer_char(a, al, &h_in_cx).conj()
                                * &centralizer_char(b, be, &g_in_cy).conj();
                            acc = &acc + &term;
                        }
                    }
                    &acc * &sixth
                })
                .collect()
        })
        .collect()
}

/// Verlinde sums evaluated exactly; panics unless every value is an integer.
pub fn ds3_fusion_exact(s: &[Vec<Cyclotomic>]) -> Vec<Vec<Vec<i64>>> {
    let r = s.len();
    let mut n = vec![vec![vec![0; r]; r]; r];
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                let mut acc = Cyclotomic::zero(3);
                for m in 0..r {
                    let t = &(&s[a][m] * &s[b][m]) * &s[c][m].conj();
                    acc = &acc + &t.checked_div(&s[0][m]).unwrap();
                }
                n[a][b][c] = as_integer(&acc).expect("integral fusion coefficient");
            }
        }
    }
    n
}

pub fn s3_group() -> GroupData {
    let gens = [
        GroupElement::Perm(Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap()),
        GroupElement::Perm(Permutation::from_cycles(3, &[&[0, 1]]).unwrap()),
    ];
    GroupData::enumerate("S3", &gens, 100).unwrap()
}
