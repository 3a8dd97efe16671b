//! Scalar polynomials over Q and coordinate polynomials R[x] = R (x) Q[x].

use crate::scalar::{falling, q, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense polynomial, trailing zeros trimmed, zero = empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    c: Vec<Q>,
}


const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn reduce(x: &Q) -> Option<u64> {
    let p = BigInt::from(P);
    let n = x.numer().mod_floor(&p).to_u64()?;
    let d = x.denom().mod_floor(&p).to_u64()?;
    (d != 0).then(|| mulmod(n, powmod(d, P - 2)))
}

fn reduce_poly(f: &Poly) -> Option<Vec<u64>> {
    let v: Vec<u64> = f.c.iter().map(reduce).collect::<Option<_>>()?;
    // the leading coefficient must survive so degrees are preserved
    (v.last() != Some(&0)).then_some(v)
}

/// True only when f and g are certainly coprime over Q: their images modulo a
/// prime not dividing any denominator or leading coefficient have gcd 1.
fn coprime_mod_p(f: &Poly, g: &Poly) -> bool {
    if f.is_zero() || g.is_zero() {
        return false;
    }
    let (Some(mut a), Some(mut b)) = (reduce_poly(f), reduce_poly(g)) else {
        return false;
    };
    while !b.is_empty() {
        // a <- a mod b
        let inv = powmod(*b.last().unwrap(), P - 2);
        while a.len() >= b.len() {
            let t = mulmod(*a.last().unwrap(), inv);
            let off = a.len() - b.len();
            for (i, y) in b.iter().enumerate() {
                a[off + i] = (a[off + i] + P - mulmod(t, *y)) % P;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len() == 1
}

impl Poly {
    pub fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| q(x)).collect())
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(a: Q) -> Self {
        Self::new(vec![a])
    }

    pub fn x() -> Self {
        Self::monomial(Q::one(), 1)
    }

    pub fn monomial(a: Q, n: usize) -> Self {
        let mut c = vec![Q::zero(); n + 1];
        c[n] = a;
        Self::new(c)
    }

    /// (x - a)
    pub fn linear(a: &Q) -> Self {
        Self::new(vec![-a.clone(), Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn coeff(&self, n: usize) -> Q {
        self.c.get(n).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Length of the coefficient list (degree + 1, zero for the zero polynomial).
    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn lc(&self) -> Q {
        self.c.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, a: &Q) -> Poly {
        if a.is_zero() {
            return Poly::zero();
        }
        Poly {
            c: self.c.iter().map(|x| x * a).collect(),
        }
    }

    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Q::zero(); n];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    pub fn deriv(&self) -> Poly {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * q(k as i64))
                .collect(),
        )
    }

    /// n-th derivative.
    pub fn deriv_n(&self, n: usize) -> Poly {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(n)
                .map(|(k, a)| a * falling(k, n))
                .collect(),
        )
    }

    /// Antiderivative vanishing at 0.
    pub fn integrate(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Q::zero()];
        c.extend(
            self.c
                .iter()
                .enumerate()
                .map(|(k, a)| a / q(k as i64 + 1)),
        );
        Poly::new(c)
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn pow(&self, k: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.lc().recip())
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.c.len() - 1;
        if self.c.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut r = self.c.clone();
        let inv = d.lc().recip();
        let mut quo = vec![Q::zero(); r.len() - dd];
        for k in (0..quo.len()).rev() {
            let t = &r[k + dd] * &inv;
            if t.is_zero() {
                continue;
            }
            for (i, b) in d.c.iter().enumerate() {
                if !b.is_zero() {
                    r[k + i] -= &t * b;
                }
            }
            quo[k] = t;
        }
        r.truncate(dd);
        (Poly::new(quo), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        let (quo, r) = self.div_rem(d);
        r.is_zero().then_some(quo)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, o: &Poly) -> Poly {
        if coprime_mod_p(self, o) {
            return Poly::one();
        }
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn lcm(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(o);
        (self * o).exact_div(&g).unwrap().monic()
    }

    /// Yun's decomposition: monic a_1, a_2, ... with self = lc * prod a_i^i, each a_i
    /// squarefree and pairwise coprime (some may be 1).
    pub fn squarefree_decomposition(&self) -> Vec<Poly> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let f = self.monic();
        let fd = f.deriv();
        let a0 = f.gcd(&fd);
        let mut b = f.exact_div(&a0).unwrap();
        let mut d = &fd.exact_div(&a0).unwrap() - &b.deriv();
        let mut out = Vec::new();
        while b.degree().unwrap_or(0) > 0 {
            let ai = b.gcd(&d);
            b = b.exact_div(&ai).unwrap();
            d = &d.exact_div(&ai).unwrap() - &b.deriv();
            out.push(ai);
        }
        out
    }

    /// Rational function a/b with b monic and gcd 1.
    pub fn reduce_frac(num: &Poly, den: &Poly) -> (Poly, Poly) {
        if num.is_zero() {
            return (Poly::zero(), Poly::one());
        }
        let g = num.gcd(den);
        let n = num.exact_div(&g).unwrap();
        let d = den.exact_div(&g).unwrap();
        let lc = d.lc().recip();
        (n.scale(&lc), d.scale(&lc))
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a < &Q::zero();
            let abs = if neg { -a.clone() } else { a.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("x"))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Q::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        Poly::new(c)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            c: self.c.iter().map(|a| -a.clone()).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                &self + &o
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                &self - &o
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                &self * &o
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}
owned_ops!(Poly);

/// Element of R[x] stored as one scalar polynomial per basis coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgPoly {
    pub coords: Vec<Poly>,
}

impl AlgPoly {
    pub fn zero(d: usize) -> Self {
        AlgPoly {
            coords: vec![Poly::zero(); d],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn constant(e: &[Q]) -> Self {
        AlgPoly {
            coords: e.iter().map(|a| Poly::constant(a.clone())).collect(),
        }
    }

    /// Scalar polynomial times an algebra element.
    pub fn scalar_times(p: &Poly, e: &[Q]) -> Self {
        AlgPoly {
            coords: e.iter().map(|a| p.scale(a)).collect(),
        }
    }

    /// From coefficient vectors listed by ascending degree.
    pub fn from_coeffs(d: usize, cs: &[Vec<Q>]) -> Self {
        let mut coords = vec![Vec::new(); d];
        for c in cs {
            assert_eq!(c.len(), d);
            for s in 0..d {
                coords[s].push(c[s].clone());
            }
        }
        AlgPoly {
            coords: coords.into_iter().map(Poly::new).collect(),
        }
    }

    /// Coefficient vectors by ascending degree, trimmed.
    pub fn to_coeffs(&self) -> Vec<Vec<Q>> {
        let n = self.len();
        (0..n).map(|k| self.coeff(k)).collect()
    }

    /// Algebra element coefficient of x^n.
    pub fn coeff(&self, n: usize) -> Vec<Q> {
        self.coords.iter().map(|p| p.coeff(n)).collect()
    }

    pub fn len(&self) -> usize {
        self.coords.iter().map(|p| p.len()).max().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn degree(&self) -> Option<usize> {
        self.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, o: &AlgPoly) -> AlgPoly {
        AlgPoly {
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &AlgPoly) -> AlgPoly {
        AlgPoly {
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> AlgPoly {
        AlgPoly {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> AlgPoly {
        AlgPoly {
            coords: self.coords.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// Multiplication by a central scalar polynomial.
    pub fn mul_scalar(&self, p: &Poly) -> AlgPoly {
        AlgPoly {
            coords: self.coords.iter().map(|a| a * p).collect(),
        }
    }

    pub fn shift(&self, n: usize) -> AlgPoly {
        AlgPoly {
            coords: self.coords.iter().map(|a| a.shift(n)).collect(),
        }
    }

    pub fn deriv(&self) -> AlgPoly {
        AlgPoly {
            coords: self.coords.iter().map(|a| a.deriv()).collect(),
        }
    }

    pub fn deriv_n(&self, n: usize) -> AlgPoly {
        AlgPoly {
            coords: self.coords.iter().map(|a| a.deriv_n(n)).collect(),
        }
    }

    pub fn eval(&self, x: &Q) -> Vec<Q> {
        self.coords.iter().map(|a| a.eval(x)).collect()
    }

    /// Coordinatewise remainder modulo a scalar polynomial.
    pub fn rem_scalar(&self, h: &Poly) -> AlgPoly {
        AlgPoly {
            coords: self.coords.iter().map(|a| a.rem(h)).collect(),
        }
    }

    pub fn exact_div_scalar(&self, h: &Poly) -> Option<AlgPoly> {
        let coords: Option<Vec<Poly>> = self.coords.iter().map(|a| a.exact_div(h)).collect();
        coords.map(|coords| AlgPoly { coords })
    }

    /// Flat Q-coordinates x^k b_s -> index k*d + s, for k < n.
    pub fn flat(&self, n: usize) -> Vec<Q> {
        let d = self.dim();
        let mut v = vec![Q::zero(); n * d];
        for (s, p) in self.coords.iter().enumerate() {
            for (k, a) in p.coeffs().iter().enumerate() {
                assert!(k < n, "polynomial exceeds flattening bound");
                v[k * d + s] = a.clone();
            }
        }
        v
    }

    pub fn from_flat(d: usize, v: &[Q]) -> AlgPoly {
        let n = v.len() / d;
        AlgPoly {
            coords: (0..d)
                .map(|s| Poly::new((0..n).map(|k| v[k * d + s].clone()).collect()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qr;

    #[test]
    fn squarefree_parts() {
        let x1 = Poly::from_ints(&[-1, 1]);
        let x2 = Poly::from_ints(&[1, 0, 1]);
        let p = (&x1.pow(3) * &x2).scale(&Q::from_integer(5.into()));
        let parts = p.squarefree_decomposition();
        assert_eq!(parts, vec![x2, Poly::one(), x1]);
        assert!(Poly::from_ints(&[3]).squarefree_decomposition().is_empty());
    }

    #[test]
    fn modular_gcd_shortcut() {
        let a = Poly::from_ints(&[-1, 0, 1]);
        let b = Poly::from_ints(&[1, 1]);
        assert_eq!(a.gcd(&b), b);
        assert!(coprime_mod_p(&a, &Poly::from_ints(&[2, 1])));
        assert!(!coprime_mod_p(&a, &b));
        // leading coefficient vanishing mod p: no conclusion
        let big = Poly::new(vec![q(1), Q::from_integer(BigInt::from(P))]);
        assert!(!coprime_mod_p(&big, &a));
        assert_eq!(big.gcd(&a), Poly::one());
    }

    #[test]
    fn arithmetic() {
        let a = Poly::from_ints(&[1, 1]);
        let b = Poly::from_ints(&[-1, 1]);
        assert_eq!(&a * &b, Poly::from_ints(&[-1, 0, 1]));
        assert_eq!((&a - &a), Poly::zero());
        assert_eq!(a.pow(2), Poly::from_ints(&[1, 2, 1]));
        assert_eq!(Poly::from_ints(&[1, 2, 3]).deriv(), Poly::from_ints(&[2, 6]));
        assert_eq!(Poly::from_ints(&[1, 2, 3]).deriv_n(2), Poly::from_ints(&[6]));
        assert_eq!(
            Poly::from_ints(&[0, 2]).integrate(),
            Poly::from_ints(&[0, 0, 1])
        );
        assert_eq!(Poly::from_ints(&[1, 0, 1]).eval(&q(2)), q(5));
    }

    #[test]
    fn division_and_gcd() {
        let p = Poly::from_ints(&[-1, 0, 1]);
        let (quo, r) = p.div_rem(&Poly::from_ints(&[1, 1]));
        assert_eq!(quo, Poly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        let g = Poly::from_ints(&[-2, 0, 2]).gcd(&Poly::from_ints(&[2, 2]));
        assert_eq!(g, Poly::from_ints(&[1, 1]));
        let l = Poly::from_ints(&[-1, 1]).lcm(&Poly::from_ints(&[1, 1]));
        assert_eq!(l, p);
        let (n, d) = Poly::reduce_frac(&Poly::from_ints(&[2, 2]), &Poly::from_ints(&[-2, 0, 2]));
        assert_eq!(n, Poly::constant(q(1)));
        assert_eq!(d, Poly::from_ints(&[-1, 1]));
        assert!(p.exact_div(&Poly::from_ints(&[2, 1])).is_none());
    }

    #[test]
    fn display() {
        assert_eq!(Poly::from_ints(&[1, -2, 1]).to_string(), "x^2 - 2*x + 1");
        assert_eq!(Poly::new(vec![qr(-1, 2)]).to_string(), "-1/2");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn alg_poly_coeffs_round_trip() {
        let p = AlgPoly::from_coeffs(2, &[vec![q(1), q(0)], vec![q(0), q(3)]]);
        assert_eq!(p.coeff(1), vec![q(0), q(3)]);
        assert_eq!(AlgPoly::from_coeffs(2, &p.to_coeffs()), p);
        assert_eq!(AlgPoly::from_flat(2, &p.flat(3)), p);
    }
}
