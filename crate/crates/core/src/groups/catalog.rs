//! Named finite subgroups of SU(2) and SU(3) with concrete generators.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::element::{CycloMatrix, FfMatrix, FiniteField, GroupElement, Permutation};
use super::{GroupData, DEFAULT_LIMIT};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    SU2,
    SU3,
}

#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub family: Family,
}

/// Named groups used for full regression runs, in report order.
pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry { name: "Z5", family: Family::SU2 },
    CatalogEntry { name: "Z6", family: Family::SU2 },
    CatalogEntry { name: "Dhat2", family: Family::SU2 },
    CatalogEntry { name: "Dhat3", family: Family::SU2 },
    CatalogEntry { name: "Dhat4", family: Family::SU2 },
    CatalogEntry { name: "Dhat5", family: Family::SU2 },
    CatalogEntry { name: "binary_tetrahedral", family: Family::SU2 },
    CatalogEntry { name: "binary_octahedral", family: Family::SU2 },
    CatalogEntry { name: "binary_icosahedral", family: Family::SU2 },
    CatalogEntry { name: "Delta3_2", family: Family::SU3 },
    CatalogEntry { name: "Delta6_2", family: Family::SU3 },
    CatalogEntry { name: "F21", family: Family::SU3 },
    CatalogEntry { name: "Sigma60", family: Family::SU3 },
    CatalogEntry { name: "Sigma36x3", family: Family::SU3 },
    CatalogEntry { name: "Sigma168", family: Family::SU3 },
    CatalogEntry { name: "Sigma60xZ3", family: Family::SU3 },
    CatalogEntry { name: "Sigma72x3", family: Family::SU3 },
    CatalogEntry { name: "Sigma168xZ3", family: Family::SU3 },
    CatalogEntry { name: "Sigma216x3", family: Family::SU3 },
    CatalogEntry { name: "Sigma360x3", family: Family::SU3 },
];

pub fn catalog_names() -> Vec<&'static str> {
    CATALOG.iter().map(|e| e.name).collect()
}

/// Family of a catalog name, including parametric ones.
pub fn family_of(name: &str) -> Option<Family> {
    if name == "trivial" || parse_param(name, "Z").is_some() || parse_param(name, "Dhat").is_some() {
        return Some(Family::SU2);
    }
    if parse_param(name, "Delta3_").is_some() || parse_param(name, "Delta6_").is_some() {
        return Some(Family::SU3);
    }
    CATALOG.iter().find(|e| e.name == name).map(|e| e.family)
}

fn parse_param(name: &str, prefix: &str) -> Option<u32> {
    name.strip_prefix(prefix)?.parse().ok().filter(|&n| n >= 1)
}

fn cyc(c: &[u32], degree: usize) -> GroupElement {
    GroupElement::Perm(Permutation::from_cycles(degree, &[c]).expect("valid cycle"))
}

fn perm_images(images: Vec<u32>) -> GroupElement {
    GroupElement::Perm(Permutation::from_images(images).expect("valid permutation"))
}

fn ff(field: &std::sync::Arc<FiniteField>, entries: &[u16]) -> GroupElement {
    let n = (entries.len() as f64).sqrt() as usize;
    GroupElement::Finite(FfMatrix::new(field.clone(), n, entries.to_vec()).expect("valid matrix"))
}

fn cm(entries: Vec<Cyclotomic>) -> GroupElement {
    let n = (entries.len() as f64).sqrt() as usize;
    GroupElement::Cyclo(CycloMatrix::new(n, entries).expect("valid matrix"))
}

fn scale(k: &Cyclotomic, v: Vec<Cyclotomic>) -> Vec<Cyclotomic> {
    v.iter().map(|x| k * x).collect()
}

/// ζ_n^k as an element of conductor n.
fn z(n: u32, k: i64) -> Cyclotomic {
    Cyclotomic::zeta_pow(n, k)
}

fn int(n: u32, v: i64) -> Cyclotomic {
    Cyclotomic::from_int(n, v)
}

fn half(n: u32) -> Cyclotomic {
    Cyclotomic::from_rational(n, BigRational::new(BigInt::from(1), BigInt::from(2)))
}

/// The cyclic permutation matrix E (e_i ↦ e_{i-1}).
fn cyclic3(n: u32) -> Vec<Cyclotomic> {
    let (o, l) = (int(n, 0), int(n, 1));
    vec![o.clone(), l.clone(), o.clone(), o.clone(), o.clone(), l.clone(), l, o.clone(), o]
}

fn diag3(a: Cyclotomic, b: Cyclotomic, c: Cyclotomic) -> Vec<Cyclotomic> {
    let o = Cyclotomic::zero(a.conductor());
    vec![a, o.clone(), o.clone(), o.clone(), b, o.clone(), o.clone(), o, c]
}

/// Generators of Σ(36×3) over Q(ζ_3): S, T and the normalized DFT V.
fn sigma36_generators(n: u32) -> Vec<GroupElement> {
    let w = z(n, n as i64 / 3);
    let w2 = z(n, 2 * n as i64 / 3);
    let one = int(n, 1);
    let kappa = (&w - &w2).inverse().expect("nonzero");
    let s = diag3(one.clone(), w.clone(), w2.clone());
    let v = scale(
        &kappa,
        vec![
            one.clone(), one.clone(), one.clone(),
            one.clone(), w.clone(), w2.clone(),
            one, w2, w,
        ],
    );
    vec![cm(s), cm(cyclic3(n)), cm(v)]
}

fn sigma72_u(n: u32) -> GroupElement {
    let w = z(n, n as i64 / 3);
    let w2 = z(n, 2 * n as i64 / 3);
    let one = int(n, 1);
    let kappa = (&w - &w2).inverse().expect("nonzero");
    cm(scale(
        &kappa,
        vec![
            one.clone(), one.clone(), w2,
            one.clone(), w.clone(), w.clone(),
            w.clone(), one, w,
        ],
    ))
}

/// Σ(60) ⊂ SO(3) over Q(ζ_n), 5 | n.
fn sigma60_matrices(n: u32) -> Vec<GroupElement> {
    let f5 = n as i64 / 5;
    // μ1 = 2cos(2π/5), μ2 = 2cos(4π/5)
    let mu1 = &z(n, f5) + &z(n, -f5);
    let mu2 = &z(n, 2 * f5) + &z(n, -2 * f5);
    let m1 = int(n, -1);
    let f = diag3(int(n, 1), m1.clone(), m1.clone());
    let h = scale(
        &half(n),
        vec![
            m1.clone(), mu2.clone(), mu1.clone(),
            mu2.clone(), mu1.clone(), m1.clone(),
            mu1, m1, mu2,
        ],
    );
    vec![cm(cyclic3(n)), cm(f), cm(h)]
}

/// Permutations of the 7 nonzero vectors of F_2^3 induced by GL(3,2).
fn gl32_on_points(m: [[u8; 3]; 3]) -> GroupElement {
    let images = (1u32..8)
        .map(|v| {
            let bits = [v & 1, (v >> 1) & 1, (v >> 2) & 1];
            let mut out = 0;
            for (i, row) in m.iter().enumerate() {
                let b: u32 = row.iter().zip(bits).map(|(&a, x)| a as u32 * x).sum::<u32>() % 2;
                out |= b << i;
            }
            out - 1
        })
        .collect();
    perm_images(images)
}

fn sigma168_perms() -> Vec<GroupElement> {
    vec![
        gl32_on_points([[0, 0, 1], [1, 0, 1], [0, 1, 0]]),
        gl32_on_points([[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
    ]
}

fn extend_perm(g: &GroupElement, degree: usize) -> GroupElement {
    match g {
        GroupElement::Perm(p) => {
            let mut img: Vec<u32> = (0..p.degree() as u32).map(|x| p.image(x)).collect();
            img.extend(p.degree() as u32..degree as u32);
            perm_images(img)
        }
        _ => unreachable!("only permutations are extended"),
    }
}

/// Append a disjoint 3-cycle, realizing G × Z_3.
fn times_z3(gens: Vec<GroupElement>, degree: usize) -> Vec<GroupElement> {
    let d = degree as u32;
    let mut out: Vec<GroupElement> = gens.iter().map(|g| extend_perm(g, degree + 3)).collect();
    out.push(cyc(&[d, d + 1, d + 2], degree + 3));
    out
}

fn binary_dihedral(n: u32) -> Vec<GroupElement> {
    let c = 2 * n;
    let o = Cyclotomic::zero(c);
    let a = vec![z(c, 1), o.clone(), o.clone(), z(c, -1)];
    let b = vec![o.clone(), int(c, 1), int(c, -1), o];
    vec![cm(a), cm(b)]
}

fn delta3(n: u32) -> Vec<GroupElement> {
    vec![cm(cyclic3(n)), cm(diag3(z(n, 1), int(n, 1), z(n, -1)))]
}

fn delta6(n: u32) -> Vec<GroupElement> {
    let c = num_integer::lcm(n, 2);
    let o = Cyclotomic::zero(c);
    let m1 = int(c, -1);
    let p = vec![o.clone(), o.clone(), m1.clone(), o.clone(), m1.clone(), o.clone(), m1, o.clone(), o];
    vec![cm(cyclic3(c)), cm(diag3(z(c, (c / n) as i64), int(c, 1), z(c, -((c / n) as i64)))), cm(p)]
}

/// Generators of the named group.
pub fn generators(name: &str) -> Result<Vec<GroupElement>> {
    if name == "trivial" {
        return Ok(vec![]);
    }
    if let Some(n) = parse_param(name, "Z") {
        let c: Vec<u32> = (0..n).collect();
        return Ok(vec![cyc(&c, n as usize)]);
    }
    if let Some(n) = parse_param(name, "Dhat") {
        return Ok(binary_dihedral(n));
    }
    if let Some(n) = parse_param(name, "Delta3_") {
        return Ok(delta3(n));
    }
    if let Some(n) = parse_param(name, "Delta6_") {
        return Ok(delta6(n));
    }
    let gens = match name {
        "binary_tetrahedral" => {
            let f = FiniteField::prime(3);
            vec![ff(&f, &[1, 1, 0, 1]), ff(&f, &[1, 0, 1, 1])]
        }
        "binary_octahedral" => {
            // F_9 = F_3[u]/(u²+1); u encodes as 3, -u as 6
            let f = FiniteField::new(3, &[1, 0, 1]);
            vec![ff(&f, &[2, 1, 0, 2]), ff(&f, &[6, 6, 6, 0])]
        }
        "binary_icosahedral" => {
            let f = FiniteField::prime(5);
            vec![ff(&f, &[1, 1, 0, 1]), ff(&f, &[1, 0, 1, 1])]
        }
        "F21" => vec![
            cyc(&[0, 1, 2, 3, 4, 5, 6], 7),
            perm_images((0..7).map(|x| (2 * x) % 7).collect()),
        ],
        "Sigma60" => vec![cyc(&[0, 1, 2, 3, 4], 5), cyc(&[0, 1, 2], 5)],
        "Sigma60xZ3" => times_z3(vec![cyc(&[0, 1, 2, 3, 4], 5), cyc(&[0, 1, 2], 5)], 5),
        "Sigma168" => sigma168_perms(),
        "Sigma168xZ3" => times_z3(sigma168_perms(), 7),
        "Sigma36x3" => sigma36_generators(3),
        "Sigma72x3" => {
            let mut g = sigma36_generators(3);
            g.push(sigma72_u(3));
            g
        }
        "Sigma216x3" => {
            let mut g = sigma36_generators(9);
            // diag(ε, ε, εω) with ε³ = ω²
            g.push(cm(diag3(z(9, 2), z(9, 2), z(9, 5))));
            g
        }
        "Sigma360x3" => {
            let mut g = sigma60_matrices(15);
            let o = Cyclotomic::zero(15);
            let j = vec![
                int(15, -1), o.clone(), o.clone(),
                o.clone(), o.clone(), -z(15, 5),
                o.clone(), -z(15, 10), o,
            ];
            g.push(cm(j));
            g
        }
        _ => return Err(Error::NotInCatalog(name.to_string())),
    };
    Ok(gens)
}

/// The named group, fully enumerated.
pub fn catalog(name: &str) -> Result<GroupData> {
    let gens = generators(name)?;
    let limit = if name.starts_with("Delta") || name.starts_with('Z') || name.starts_with("Dhat") {
        usize::MAX
    } else {
        DEFAULT_LIMIT
    };
    GroupData::enumerate(name, &gens, limit)
}
