//! Dense univariate polynomials over the base field: just enough to split
//! minimal polynomials (gcds, Bezout coefficients, root finding).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Field, Rational, Scalar};

/// Coefficients from the constant term upwards, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

/// Largest |integer| whose divisors we are willing to enumerate when
/// searching rational roots.
const RATIONAL_ROOT_SEARCH_LIMIT: u64 = 1_000_000_000_000;

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: Field) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        let f = c.field();
        Self::new(f, vec![c])
    }

    /// `t - r`
    pub fn linear(root: &Scalar) -> Self {
        let f = root.field();
        Self::new(f, vec![-root, f.one()])
    }

    pub fn x(field: Field) -> Self {
        Self::new(field, vec![field.zero(), field.one()])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inv().expect("nonzero leading coefficient");
                Self::new(self.field, self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = self.field.zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
            .collect();
        Self::new(self.field, c)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = self.field.zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) - o.coeffs.get(i).unwrap_or(&z))
            .collect();
        Self::new(self.field, c)
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.field);
        }
        let mut c = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].add_mul(a, b);
            }
        }
        Self::new(self.field, c)
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() * &lead_inv;
            if !c.is_zero() {
                let neg = -&c;
                for (i, b) in d.coeffs.iter().enumerate() {
                    rem[k + i] = rem[k + i].add_mul(&neg, b);
                }
                quot[k] = c;
            }
            rem.pop();
        }
        (Self::new(self.field, quot), Self::new(self.field, rem))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, u, v)` with `u·self + v·o = g = gcd` (monic).
    pub fn ext_gcd(&self, o: &Poly) -> (Poly, Poly, Poly) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::constant(f.one()), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::constant(f.one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let Some(l) = r0.leading().cloned() else {
            return (r0, s0, t0);
        };
        let inv = Poly::constant(l.inv().unwrap());
        (r0.mul(&inv), s0.mul(&inv), t0.mul(&inv))
    }

    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::constant(self.field.one()).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Distinct roots in the base field, sorted by their canonical display.
    ///
    /// Over the rationals the search enumerates divisors of the extreme
    /// coefficients and gives up (returning what it has) when those exceed
    /// [`RATIONAL_ROOT_SEARCH_LIMIT`]; callers treat a short list as "did not
    /// split" and retry with another element.
    pub fn distinct_roots(&self) -> Vec<Scalar> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let mut roots = match self.field {
            Field::Rationals => rational_roots(self),
            Field::Prime { p } => prime_roots(self, p),
        };
        roots.sort_by(|a, b| match (a, b) {
            (Scalar::Rat(x), Scalar::Rat(y)) => x.cmp(y),
            (Scalar::Mod { v: x, .. }, Scalar::Mod { v: y, .. }) => x.cmp(y),
            _ => std::cmp::Ordering::Equal,
        });
        roots.dedup();
        roots
    }
}

fn rational_roots(f: &Poly) -> Vec<Scalar> {
    // Scale to a primitive integer polynomial.
    let rats: Vec<&Rational> = f.coeffs.iter().map(|c| c.as_rational().unwrap()).collect();
    let lcm = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(&r.denom()));
    let mut ints: Vec<BigInt> = rats.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    let mut roots = Vec::new();
    // Strip the root 0.
    let lowest = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if lowest > 0 {
        roots.push(Scalar::Rat(Rational::ZERO));
        ints.drain(..lowest);
    }
    if ints.len() < 2 {
        return roots;
    }
    let a0 = ints[0].abs();
    let an = ints.last().unwrap().abs();
    let (Some(a0), Some(an)) = (a0.to_u64(), an.to_u64()) else {
        return roots;
    };
    if a0 > RATIONAL_ROOT_SEARCH_LIMIT || an > RATIONAL_ROOT_SEARCH_LIMIT {
        return roots;
    }
    let eval = |num: i64, den: i64| -> bool {
        // Homogenized evaluation: Σ c_k num^k den^(n-k) = 0.
        let n = ints.len() - 1;
        let (num, den) = (BigInt::from(num), BigInt::from(den));
        let mut acc = BigInt::zero();
        let mut np = BigInt::one();
        let mut dp: Vec<BigInt> = Vec::with_capacity(n + 1);
        let mut d = BigInt::one();
        for _ in 0..=n {
            dp.push(d.clone());
            d *= &den;
        }
        for (k, c) in ints.iter().enumerate() {
            acc += c * &np * &dp[n - k];
            np *= &num;
        }
        acc.is_zero()
    };
    for q in divisors(an) {
        for p in divisors(a0) {
            if (p as i64).gcd(&(q as i64)) != 1 {
                continue;
            }
            for s in [1i64, -1] {
                if eval(s * p as i64, q as i64) {
                    roots.push(Scalar::Rat(Rational::new(s * p as i64, q as i64)));
                }
            }
        }
    }
    roots
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn prime_roots(f: &Poly, p: u64) -> Vec<Scalar> {
    let field = f.field;
    if p < 1024 {
        return (0..p)
            .map(|v| Scalar::Mod { v, p })
            .filter(|x| f.eval(x).is_zero())
            .collect();
    }
    // Product of the distinct linear factors: gcd(f, t^p - t).
    let x = Poly::x(field);
    let f = f.monic();
    let xp = x.pow_mod(p, &f);
    let g = f.gcd(&xp.sub(&x));
    let mut out = Vec::new();
    split_linear(&g, p, &mut out);
    out
}

/// Equal-degree splitting of a product of distinct linear factors.
fn split_linear(g: &Poly, p: u64, out: &mut Vec<Scalar>) {
    let field = g.field;
    match g.degree() {
        None | Some(0) => {}
        Some(1) => out.push(-&g.coeffs[0]),
        Some(_) => {
            for a in 1..p {
                let shifted = Poly::x(field).add(&Poly::constant(field.from_i64(a as i64)));
                let h = shifted.pow_mod((p - 1) / 2, g).sub(&Poly::constant(field.one()));
                let d = g.gcd(&h);
                let dg = d.degree().unwrap_or(0);
                if dg > 0 && dg < g.degree().unwrap() {
                    split_linear(&d, p, out);
                    split_linear(&g.div_rem(&d).0, p, out);
                    return;
                }
            }
            unreachable!("equal-degree splitting failed for a squarefree split polynomial");
        }
    }
}
