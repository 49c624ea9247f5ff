//! Exact arithmetic in cyclotomic fields Q(ζ_n).
//!
//! Elements are stored in the power basis 1, ζ, …, ζ^(φ(n)-1) reduced
//! modulo the n-th cyclotomic polynomial, so two elements of the same
//! conductor are equal iff their coefficient vectors are equal.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest supported conductor.
pub const MAX_CONDUCTOR: u32 = 168;

pub fn euler_phi(n: u32) -> u32 {
    let mut m = n;
    let mut phi = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    phi
}

fn poly_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of Φ_n, lowest degree first. Monic of degree φ(n).
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1);
    if let Some(p) = poly_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Φ_d with d | n, d < n
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let div = cyclotomic_polynomial(d);
            num = exact_div(&num, &div);
        }
    }
    let p = Arc::new(num);
    poly_cache().lock().unwrap().insert(n, p.clone());
    p
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qlen = num.len() - dn;
    let mut q = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn];
        q[k] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[k + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

/// An element of Q(ζ_n).
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    n: u32,
    c: Vec<BigRational>,
}

fn check_conductor(n: u32) {
    assert!(
        (1..=MAX_CONDUCTOR).contains(&n),
        "conductor {n} outside 1..={MAX_CONDUCTOR}"
    );
}

/// Reduce a polynomial in ζ_n (any length) to canonical form.
fn reduce(n: u32, mut poly: Vec<BigRational>) -> Vec<BigRational> {
    let phi = euler_phi(n) as usize;
    let p = cyclotomic_polynomial(n);
    if poly.len() > phi {
        for k in (phi..poly.len()).rev() {
            if poly[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut poly[k], BigRational::zero());
            for (j, &pj) in p.iter().enumerate().take(phi) {
                if pj != 0 {
                    poly[k - phi + j] -= &c * BigRational::from_integer(BigInt::from(pj));
                }
            }
        }
    }
    poly.resize(phi, BigRational::zero());
    poly
}

impl Cyclotomic {
    pub fn zero(n: u32) -> Self {
        check_conductor(n);
        Cyclotomic {
            n,
            c: vec![BigRational::zero(); euler_phi(n) as usize],
        }
    }

    pub fn one(n: u32) -> Self {
        Self::from_rational(n, BigRational::one())
    }

    pub fn from_int(n: u32, v: i64) -> Self {
        Self::from_rational(n, BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(n: u32, v: BigRational) -> Self {
        let mut x = Self::zero(n);
        x.c[0] = v;
        x
    }

    /// ζ_n^k for any integer k.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        check_conductor(n);
        let e = k.rem_euclid(n as i64) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        Cyclotomic { n, c: reduce(n, poly) }
    }

    /// Build from coefficients of powers of ζ_n (any length, reduced here).
    pub fn from_coeffs(n: u32, coeffs: Vec<BigRational>) -> Self {
        check_conductor(n);
        Cyclotomic { n, c: reduce(n, coeffs) }
    }

    /// Integer polynomial in ζ_n^step, e.g. a polynomial in a chosen root.
    pub fn from_poly_in(n: u32, root_power: i64, coeffs: &[i64]) -> Self {
        let mut acc = Self::zero(n);
        for (k, &a) in coeffs.iter().enumerate() {
            if a != 0 {
                acc = &acc + &(&Self::zeta_pow(n, root_power * k as i64) * &Self::from_int(n, a));
            }
        }
        acc
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(|x| x.is_zero())
    }

    /// Rewrite in Q(ζ_m) for a multiple m of the conductor.
    pub fn lift(&self, m: u32) -> Self {
        assert!(m % self.n == 0, "{m} is not a multiple of {}", self.n);
        if m == self.n {
            return self.clone();
        }
        check_conductor(m);
        let step = (m / self.n) as usize;
        let mut poly = vec![BigRational::zero(); step * (self.c.len().max(1) - 1) + 1];
        for (k, a) in self.c.iter().enumerate() {
            poly[k * step] = a.clone();
        }
        Cyclotomic { n: m, c: reduce(m, poly) }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.n == b.n {
            return (a.clone(), b.clone());
        }
        let m = a.n.lcm(&b.n);
        (a.lift(m), b.lift(m))
    }

    /// Complex conjugate (ζ ↦ ζ⁻¹).
    pub fn conj(&self) -> Self {
        let n = self.n as usize;
        let mut poly = vec![BigRational::zero(); n];
        for (k, a) in self.c.iter().enumerate() {
            if !a.is_zero() {
                poly[(n - k) % n] += a;
            }
        }
        Cyclotomic { n: self.n, c: reduce(self.n, poly) }
    }

    pub fn embed(&self) -> Complex64 {
        let n = self.n as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let v = a.to_f64().unwrap_or(f64::NAN);
            let t = std::f64::consts::TAU * k as f64 / n;
            re += v * t.cos();
            im += v * t.sin();
        }
        Complex64::new(re, im)
    }

    fn mul_same(&self, other: &Self) -> Self {
        let la = self.c.len();
        let lb = other.c.len();
        let mut poly = vec![BigRational::zero(); la + lb - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if !b.is_zero() {
                    poly[i + j] += a * b;
                }
            }
        }
        Cyclotomic { n: self.n, c: reduce(self.n, poly) }
    }

    /// Multiplicative inverse by solving the multiplication-by-self system.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let phi = self.c.len();
        // column k of M is self * ζ^k
        let mut m: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); phi + 1]; phi];
        for k in 0..phi {
            let col = self.mul_same(&Self::zeta_pow(self.n, k as i64));
            for (r, v) in col.c.into_iter().enumerate() {
                m[r][k] = v;
            }
        }
        m[0][phi] = BigRational::one();
        for col in 0..phi {
            let piv = (col..phi)
                .find(|&r| !m[r][col].is_zero())
                .ok_or(Error::DivisionByZero)?;
            m.swap(col, piv);
            let inv = m[col][col].recip();
            for v in m[col].iter_mut() {
                *v *= &inv;
            }
            for r in 0..phi {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for k in col..=phi {
                        let t = &f * &m[col][k];
                        m[r][k] -= t;
                    }
                }
            }
        }
        let c = m.into_iter().map(|row| row[phi].clone()).collect();
        Ok(Cyclotomic { n: self.n, c })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        let (a, b) = Self::common(self, other);
        Ok(a.mul_same(&b.inverse()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_same(&base);
            }
            base = base.mul_same(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Trace to Q divided by φ(n); independent of the conductor used.
    pub fn normalized_trace(&self) -> BigRational {
        let n = self.n;
        let phi = BigRational::from_integer(BigInt::from(euler_phi(n)));
        let mut acc = BigRational::zero();
        for (k, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let d = n / n.gcd(&(k as u32));
            let t = mobius(d) * euler_phi(n) as i64 / euler_phi(d) as i64;
            acc += a * BigRational::from_integer(BigInt::from(t));
        }
        acc / phi
    }
}

fn mobius(mut n: u32) -> i64 {
    let mut s = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            s = -s;
        }
        p += 1;
    }
    if n > 1 {
        s = -s;
    }
    s
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            self.c == other.c
        } else {
            let (a, b) = Self::common(self, other);
            a.c == b.c
        }
    }
}

impl Eq for Cyclotomic {}

impl Hash for Cyclotomic {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.normalized_trace().hash(state);
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = Cyclotomic::common(self, rhs);
        for (x, y) in a.c.iter_mut().zip(b.c.iter()) {
            *x += y;
        }
        a
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = Cyclotomic::common(self, rhs);
        for (x, y) in a.c.iter_mut().zip(b.c.iter()) {
            *x -= y;
        }
        a
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.n == rhs.n {
            self.mul_same(rhs)
        } else {
            let (a, b) = Cyclotomic::common(self, rhs);
            a.mul_same(&b)
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            n: self.n,
            c: self.c.iter().map(|x| -x).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $f(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$f(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            terms.push(match k {
                0 => format!("{a}"),
                1 => format!("{a}*z"),
                _ => format!("{a}*z^{k}"),
            });
        }
        if terms.is_empty() {
            terms.push("0".into());
        }
        write!(f, "{}@{}", terms.join(" + "), self.n)
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad coefficient '{s}'"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(s.trim()).map_err(|_| bad())?,
        )),
    }
}

impl FromStr for Cyclotomic {
    type Err = Error;

    /// Parses "c0 + c1*z + c2*z^2@n"; exponents may exceed φ(n).
    fn from_str(s: &str) -> Result<Self> {
        let (body, n) = s
            .rsplit_once('@')
            .ok_or_else(|| Error::Parse(format!("missing conductor in '{s}'")))?;
        let n: u32 = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad conductor in '{s}'")))?;
        if n == 0 || n > MAX_CONDUCTOR {
            return Err(Error::Parse(format!("conductor {n} out of range")));
        }
        let mut poly: Vec<BigRational> = Vec::new();
        for term in body.split(" + ") {
            let term = term.trim();
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in '{s}'")));
            }
            let (coef, power) = match term.split_once('z') {
                None => (parse_rational(term)?, 0usize),
                Some((c, rest)) => {
                    let c = c.trim().trim_end_matches('*').trim();
                    let coef = match c {
                        "" => BigRational::one(),
                        "-" => -BigRational::one(),
                        c => parse_rational(c)?,
                    };
                    let power = match rest.trim().strip_prefix('^') {
                        None if rest.trim().is_empty() => 1,
                        None => return Err(Error::Parse(format!("bad term '{term}'"))),
                        Some(p) => p
                            .trim()
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad exponent in '{term}'")))?,
                    };
                    (coef, power % n as usize)
                }
            };
            if poly.len() <= power {
                poly.resize(power + 1, BigRational::zero());
            }
            poly[power] += coef;
        }
        Ok(Cyclotomic::from_coeffs(n, poly))
    }
}

/// Helper used by realizations: is the value a small integer?
pub fn as_integer(x: &Cyclotomic) -> Option<i64> {
    if x.c[1..].iter().all(|v| v.is_zero()) && x.c[0].is_integer() {
        x.c[0].to_integer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        let p105 = cyclotomic_polynomial(105);
        assert_eq!(p105.len(), 49);
        assert!(p105.contains(&-2));
    }

    #[test]
    fn roots_of_unity() {
        let s = &Cyclotomic::zeta_pow(3, 1) + &Cyclotomic::zeta_pow(3, 2);
        assert_eq!(s, Cyclotomic::from_int(3, -1));
        let i = Cyclotomic::zeta_pow(4, 1);
        assert_eq!(&i * &i, Cyclotomic::from_int(4, -1));
        assert!(Cyclotomic::zeta_pow(7, 7).is_one());
    }

    #[test]
    fn lifting_preserves_equality() {
        let w = Cyclotomic::zeta_pow(3, 1);
        let w6 = Cyclotomic::zeta_pow(6, 2);
        assert_eq!(w, w6);
        let sum = &w + &Cyclotomic::zeta_pow(4, 1);
        assert_eq!(sum.conductor(), 12);
    }

    #[test]
    fn inverse_and_text() {
        let x: Cyclotomic = "1 + 2*z + -1/3*z^3@7".parse().unwrap();
        let y = x.inverse().unwrap();
        assert!((&x * &y).is_one());
        let back: Cyclotomic = x.to_string().parse().unwrap();
        assert_eq!(back, x);
        assert_eq!(Cyclotomic::zero(5).to_string(), "0@5");
        assert!(Cyclotomic::zero(5).inverse().is_err());
    }
}
