use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

/// Permutation of `0..n`, composed right to left: (a*b)(x) = a(b(x)).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let slot = seen
                .get_mut(x as usize)
                .ok_or_else(|| Error::InvalidGenerator(format!("image {x} out of range")))?;
            if *slot {
                return Err(Error::InvalidGenerator(format!("repeated image {x}")));
            }
            *slot = true;
        }
        Ok(Permutation(images))
    }

    /// Build from disjoint cycles over 0-based points on `degree` points.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut img: Vec<u32> = (0..degree as u32).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a as usize >= degree || b as usize >= degree {
                    return Err(Error::InvalidGenerator(format!("point {a} exceeds degree")));
                }
                img[a as usize] = b;
            }
        }
        Self::from_images(img)
    }

    /// Parse 1-based cycle notation such as "(1,2,3)(4,5)".
    pub fn parse_cycles(s: &str, degree: usize) -> Result<Self> {
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in '{s}'")))?;
            let end = body
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in '{s}'")))?;
            let pts = body[..end]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| match t.parse::<u32>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => Err(Error::Parse(format!("bad point '{t}'"))),
                })
                .collect::<Result<Vec<_>>>()?;
            cycles.push(pts);
            rest = body[end + 1..].trim_start();
        }
        let refs: Vec<&[u32]> = cycles.iter().map(|c| c.as_slice()).collect();
        Self::from_cycles(degree, &refs)
    }

    /// Largest 1-based point mentioned in cycle notation.
    pub fn max_point(s: &str) -> usize {
        s.split(|c: char| !c.is_ascii_digit())
            .filter_map(|t| t.parse::<usize>().ok())
            .max()
            .unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, x: u32) -> u32 {
        self.0[x as usize]
    }

    pub fn compose(&self, other: &Self) -> Self {
        Permutation(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }
}

/// Finite field GF(p^k) with lookup tables. Elements are integers
/// a_0 + a_1 p + … encoding polynomials in the generator u.
#[derive(Debug)]
pub struct FiniteField {
    p: u16,
    q: u16,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl FiniteField {
    /// `modulus` is monic of degree k, lowest coefficient first.
    pub fn new(p: u16, modulus: &[u16]) -> Arc<Self> {
        let k = modulus.len() - 1;
        let q = (p as usize).pow(k as u32);
        let digits = |mut x: usize| {
            let mut d = vec![0u16; k];
            for v in d.iter_mut() {
                *v = (x % p as usize) as u16;
                x /= p as usize;
            }
            d
        };
        let encode = |d: &[u16]| d.iter().rev().fold(0usize, |acc, &v| acc * p as usize + v as usize) as u16;
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u16> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&s);
                let mut prod = vec![0u32; 2 * k];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x as u32 * y as u32) % p as u32;
                    }
                }
                for t in (k..2 * k).rev() {
                    let c = prod[t];
                    if c != 0 {
                        for (j, &m) in modulus.iter().enumerate().take(k) {
                            let sub = c * m as u32 % p as u32;
                            prod[t - k + j] = (prod[t - k + j] + p as u32 - sub) % p as u32;
                        }
                        prod[t] = 0;
                    }
                }
                let r: Vec<u16> = prod[..k].iter().map(|&v| v as u16).collect();
                mul[a * q + b] = encode(&r);
            }
        }
        let mut neg = vec![0u16; q];
        let mut inv = vec![0u16; q];
        for a in 0..q {
            for b in 0..q {
                if add[a * q + b] == 0 {
                    neg[a] = b as u16;
                }
                if a != 0 && mul[a * q + b] == 1 {
                    inv[a] = b as u16;
                }
            }
        }
        Arc::new(FiniteField {
            p,
            q: q as u16,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn prime(p: u16) -> Arc<Self> {
        Self::new(p, &[0, 1])
    }

    pub fn order(&self) -> u16 {
        self.q
    }

    pub fn characteristic(&self) -> u16 {
        self.p
    }

    /// Map a signed integer into the prime subfield.
    pub fn from_int(&self, v: i64) -> u16 {
        v.rem_euclid(self.p as i64) as u16
    }

    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }
}

/// Square matrix over a finite field, row major.
#[derive(Clone, Debug)]
pub struct FfMatrix {
    field: Arc<FiniteField>,
    n: usize,
    e: Vec<u16>,
}

impl FfMatrix {
    pub fn new(field: Arc<FiniteField>, n: usize, entries: Vec<u16>) -> Result<Self> {
        if entries.len() != n * n || entries.iter().any(|&v| v >= field.order()) {
            return Err(Error::InvalidGenerator("malformed matrix over finite field".into()));
        }
        Ok(FfMatrix { field, n, e: entries })
    }

    /// Entries given as integers in the prime subfield.
    pub fn from_ints(field: Arc<FiniteField>, n: usize, entries: &[i64]) -> Result<Self> {
        let e = entries.iter().map(|&v| field.from_int(v)).collect();
        Self::new(field, n, e)
    }

    pub fn identity(&self) -> Self {
        let mut e = vec![0u16; self.n * self.n];
        for i in 0..self.n {
            e[i * self.n + i] = 1;
        }
        FfMatrix {
            field: self.field.clone(),
            n: self.n,
            e,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn entries(&self) -> &[u16] {
        &self.e
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        let f = &self.field;
        let mut e = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0;
                for k in 0..n {
                    acc = f.add(acc, f.mul(self.e[i * n + k], o.e[k * n + j]));
                }
                e[i * n + j] = acc;
            }
        }
        FfMatrix {
            field: self.field.clone(),
            n,
            e,
        }
    }

    pub fn det(&self) -> u16 {
        let n = self.n;
        let f = &self.field;
        let mut m = self.e.clone();
        let mut det = 1u16;
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| m[r * n + c] != 0) else {
                return 0;
            };
            if p != c {
                for k in 0..n {
                    m.swap(p * n + k, c * n + k);
                }
                det = f.neg(det);
            }
            let pv = m[c * n + c];
            det = f.mul(det, pv);
            let pinv = f.inv(pv);
            for r in c + 1..n {
                let factor = f.mul(m[r * n + c], pinv);
                if factor == 0 {
                    continue;
                }
                for k in c..n {
                    let t = f.mul(factor, m[c * n + k]);
                    m[r * n + k] = f.add(m[r * n + k], f.neg(t));
                }
            }
        }
        det
    }
}

impl PartialEq for FfMatrix {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n && self.field.order() == o.field.order() && self.e == o.e
    }
}
impl Eq for FfMatrix {}
impl Hash for FfMatrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.e.hash(state);
    }
}

/// Square matrix with exact cyclotomic entries, all of one conductor.
#[derive(Clone, Debug)]
pub struct CycloMatrix {
    n: usize,
    e: Vec<Cyclotomic>,
}

impl CycloMatrix {
    pub fn new(n: usize, entries: Vec<Cyclotomic>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::InvalidGenerator("matrix has wrong number of entries".into()));
        }
        let m = entries
            .iter()
            .map(|x| x.conductor())
            .fold(1u32, num_integer::lcm);
        let e = entries.into_iter().map(|x| x.lift(m)).collect();
        Ok(CycloMatrix { n, e })
    }

    pub fn conductor(&self) -> u32 {
        self.e.first().map_or(1, |x| x.conductor())
    }

    /// Rewrite all entries over a larger conductor.
    pub fn lift(&self, m: u32) -> Self {
        CycloMatrix {
            n: self.n,
            e: self.e.iter().map(|x| x.lift(m)).collect(),
        }
    }

    pub fn identity(&self) -> Self {
        let c = self.conductor();
        let mut e = vec![Cyclotomic::zero(c); self.n * self.n];
        for i in 0..self.n {
            e[i * self.n + i] = Cyclotomic::one(c);
        }
        CycloMatrix { n: self.n, e }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.e[i * self.n + j]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        let mut e = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Cyclotomic::zero(self.conductor());
                for k in 0..n {
                    let a = &self.e[i * n + k];
                    let b = &o.e[k * n + j];
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                e.push(acc);
            }
        }
        CycloMatrix { n, e }
    }

    pub fn det(&self) -> Cyclotomic {
        let n = self.n;
        let mut m = self.e.clone();
        let mut det = Cyclotomic::one(self.conductor());
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r * n + c].is_zero()) else {
                return Cyclotomic::zero(self.conductor());
            };
            if p != c {
                for k in 0..n {
                    m.swap(p * n + k, c * n + k);
                }
                det = -det;
            }
            let pv = m[c * n + c].clone();
            det = &det * &pv;
            let pinv = pv.inverse().expect("nonzero pivot");
            for r in c + 1..n {
                if m[r * n + c].is_zero() {
                    continue;
                }
                let factor = &m[r * n + c] * &pinv;
                for k in c..n {
                    let t = &factor * &m[c * n + k];
                    m[r * n + k] = &m[r * n + k] - &t;
                }
            }
        }
        det
    }
}

impl PartialEq for CycloMatrix {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n && self.e == o.e
    }
}
impl Eq for CycloMatrix {}
impl Hash for CycloMatrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for x in &self.e {
            x.coefficients().hash(state);
        }
    }
}

/// A concrete group element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Perm(Permutation),
    Finite(FfMatrix),
    Cyclo(CycloMatrix),
    /// Element of a parent group, referenced by its index there.
    Index(u32),
}

impl GroupElement {
    pub fn identity_like(&self) -> GroupElement {
        match self {
            GroupElement::Perm(p) => GroupElement::Perm(Permutation::identity(p.degree())),
            GroupElement::Finite(m) => GroupElement::Finite(m.identity()),
            GroupElement::Cyclo(m) => GroupElement::Cyclo(m.identity()),
            GroupElement::Index(_) => GroupElement::Index(0),
        }
    }

    /// Product self·other. Panics on mismatched realizations, which
    /// `enumerate` rules out before multiplying.
    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        match (self, other) {
            (GroupElement::Perm(a), GroupElement::Perm(b)) => GroupElement::Perm(a.compose(b)),
            (GroupElement::Finite(a), GroupElement::Finite(b)) => GroupElement::Finite(a.mul(b)),
            (GroupElement::Cyclo(a), GroupElement::Cyclo(b)) => GroupElement::Cyclo(a.mul(b)),
            _ => panic!("multiplying elements of different realizations"),
        }
    }

    /// Check the element can serve as a generator next to `reference`.
    pub(crate) fn validate(&self, reference: &GroupElement) -> Result<()> {
        match (self, reference) {
            (GroupElement::Perm(a), GroupElement::Perm(b)) if a.degree() == b.degree() => Ok(()),
            (GroupElement::Finite(a), GroupElement::Finite(b))
                if a.dim() == b.dim() && a.field().order() == b.field().order() =>
            {
                if a.det() == 0 {
                    Err(Error::InvalidGenerator("singular matrix".into()))
                } else {
                    Ok(())
                }
            }
            (GroupElement::Cyclo(a), GroupElement::Cyclo(b))
                if a.dim() == b.dim() && a.conductor() == b.conductor() =>
            {
                if a.det().is_zero() {
                    Err(Error::InvalidGenerator("singular matrix".into()))
                } else {
                    Ok(())
                }
            }
            (GroupElement::Index(_), _) => Err(Error::InvalidGenerator(
                "index elements cannot generate".into(),
            )),
            _ => Err(Error::InvalidGenerator(
                "generators use different realizations".into(),
            )),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Perm(p) => {
                let mut seen = vec![false; p.degree()];
                let mut any = false;
                for start in 0..p.degree() {
                    if seen[start] || p.image(start as u32) as usize == start {
                        continue;
                    }
                    any = true;
                    let mut cyc = Vec::new();
                    let mut x = start;
                    while !seen[x] {
                        seen[x] = true;
                        cyc.push((x + 1).to_string());
                        x = p.image(x as u32) as usize;
                    }
                    write!(f, "({})", cyc.join(","))?;
                }
                if !any {
                    write!(f, "()")?;
                }
                Ok(())
            }
            GroupElement::Finite(m) => {
                let rows: Vec<String> = m
                    .entries()
                    .chunks(m.dim())
                    .map(|r| format!("({})", r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
                    .collect();
                write!(f, "({})", rows.join(","))
            }
            GroupElement::Cyclo(m) => {
                let mut rows = Vec::new();
                for i in 0..m.dim() {
                    let r: Vec<String> = (0..m.dim()).map(|j| m.entry(i, j).to_string()).collect();
                    rows.push(format!("[{}]", r.join(", ")));
                }
                write!(f, "[{}]", rows.join(", "))
            }
            GroupElement::Index(i) => write!(f, "#{i}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_of_nine_elements() {
        let f = FiniteField::new(3, &[1, 0, 1]);
        assert_eq!(f.order(), 9);
        // u = 3, u² = -1 = 2
        assert_eq!(f.mul(3, 3), 2);
        for a in 1..9 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
            assert_eq!(f.add(a, f.neg(a)), 0);
        }
    }

    #[test]
    fn cycle_notation_round_trip() {
        let p = Permutation::parse_cycles("(1,2,3)(4,5)", 5).unwrap();
        assert_eq!(GroupElement::Perm(p.clone()).to_string(), "(1,2,3)(4,5)");
        assert_eq!(p.compose(&p).compose(&p).image(3), 4);
        assert!(Permutation::parse_cycles("(1,2", 3).is_err());
        assert!(Permutation::from_images(vec![0, 0]).is_err());
    }

    #[test]
    fn determinants() {
        let f = FiniteField::prime(5);
        let m = FfMatrix::from_ints(f, 2, &[1, 2, 3, 4]).unwrap();
        assert_eq!(m.det(), f64::rem_euclid(-2.0, 5.0) as u16);
        let z = Cyclotomic::zeta_pow(3, 1);
        let c = CycloMatrix::new(2, vec![z.clone(), Cyclotomic::zero(3), Cyclotomic::zero(3), z.conj()]).unwrap();
        assert!(c.det().is_one());
    }
}
