//! Dense univariate polynomials over `Rat`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::{format_rat, Rat};

/// Coefficients in ascending degree; no trailing zeros (zero polynomial = empty).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `t`.
    pub fn var() -> Self {
        Self::monomial(Rat::one(), 1)
    }

    pub fn monomial(c: Rat, deg: usize) -> Self {
        let mut v = vec![Rat::zero(); deg + 1];
        v[deg] = c;
        Self::new(v)
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(
            cs.iter()
                .map(|&c| Rat::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lc = self.leading_coeff();
        self.scale(&(Rat::one() / lc))
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Rat::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs: v }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * t + c)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc_inv = Rat::one() / d.leading_coeff();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Exact quotient; debug-asserts the remainder vanishes.
    pub fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        (self * other).exact_div(&self.gcd(other)).monic()
    }

    /// Squarefree part (monic).
    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return Self::one();
        }
        self.exact_div(&self.gcd(&self.derivative())).monic()
    }

    /// Rational roots with multiplicity, plus the monic cofactor without rational roots.
    pub fn rational_roots(&self) -> (Vec<(Rat, usize)>, UniPoly) {
        let mut rest = self.monic();
        let mut roots = Vec::new();
        if rest.is_zero() {
            return (roots, rest);
        }
        for cand in rational_root_candidates(&rest.squarefree_part()) {
            let lin = UniPoly::new(vec![-cand.clone(), Rat::one()]);
            let mut mult = 0;
            loop {
                let (q, r) = rest.div_rem(&lin);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                roots.push((cand, mult));
            }
        }
        (roots, rest)
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let cs = format_rat(c);
            parts.push(if mono.is_empty() {
                cs
            } else if c.is_one() {
                mono
            } else if (-c).is_one() {
                format!("-{mono}")
            } else {
                format!("({cs})*{mono}")
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// Candidate rational roots `p/q` of a nonzero polynomial: `p | a0`, `q | an` after clearing denominators.
fn rational_root_candidates(f: &UniPoly) -> Vec<Rat> {
    let Some(deg) = f.degree() else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    let den_lcm = f
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f
        .coeffs
        .iter()
        .map(|c| (c * Rat::from_integer(den_lcm.clone())).to_integer())
        .collect();
    let mut out = Vec::new();
    // zero root
    let low = ints.iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        out.push(Rat::zero());
    }
    let a0 = ints[low].abs();
    let an = ints[deg].abs();
    let ps = divisors(&a0);
    let qs = divisors(&an);
    for p in &ps {
        for q in &qs {
            for s in [1i64, -1] {
                let r = Rat::new(p * BigInt::from(s), q.clone());
                if !out.contains(&r) && f.eval(&r).is_zero() {
                    out.push(r);
                }
            }
        }
    }
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let other = n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out
}

impl From<Rat> for UniPoly {
    fn from(c: Rat) -> Self {
        Self::constant(c)
    }
}

impl Zero for UniPoly {
    fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for UniPoly {
    fn one() -> Self {
        Self::constant(Rat::one())
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UniPoly::new(v)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! owned_binops {
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
pub(crate) use owned_binops;

owned_binops!(UniPoly);

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("t"))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratq};

    #[test]
    fn division_identity() {
        let a = UniPoly::from_ints(&[1, 0, -3, 2, 5]);
        let b = UniPoly::from_ints(&[2, 1, 3]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        let f = UniPoly::from_ints(&[-1, 1]); // t - 1
        let a = &f * &UniPoly::from_ints(&[2, 0, 1]);
        let b = &f.scale(&rat(3)) * &UniPoly::from_ints(&[5, 1]);
        assert_eq!(a.gcd(&b), f);
    }

    #[test]
    fn roots_with_multiplicity() {
        // (t - 1/2)^2 (t + 3) (t^2 + 1)
        let h = UniPoly::new(vec![ratq(-1, 2), rat(1)]);
        let f = &(&(&h * &h) * &UniPoly::from_ints(&[3, 1])) * &UniPoly::from_ints(&[1, 0, 1]);
        let (roots, rest) = f.rational_roots();
        assert!(roots.contains(&(ratq(1, 2), 2)));
        assert!(roots.contains(&(rat(-3), 1)));
        assert_eq!(rest, UniPoly::from_ints(&[1, 0, 1]));
        let (r0, rest0) = UniPoly::from_ints(&[0, 0, 1]).rational_roots();
        assert_eq!(r0, vec![(rat(0), 2)]);
        assert!(rest0.is_one());
    }

    #[test]
    fn derivative_and_eval() {
        let f = UniPoly::from_ints(&[1, 2, 3]);
        assert_eq!(f.derivative(), UniPoly::from_ints(&[2, 6]));
        assert_eq!(f.eval(&rat(2)), rat(17));
    }
}
