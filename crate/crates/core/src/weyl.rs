//! Normal-ordered elements of the Weyl algebra `k<x, y>/(xy - yx - 1)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::matrix::{Matrix, Ring};
use crate::poly::{owned_binops, UniPoly};
use crate::rat::{format_rat, rat, Rat};

/// Exponent pair of the monomial `x^k y^l`.
///
/// Ordered y-dominantly: first by `l`, then by `k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Exp {
    pub k: usize,
    pub l: usize,
}

impl Exp {
    pub const fn new(k: usize, l: usize) -> Self {
        Exp { k, l }
    }

    pub fn divides(&self, o: &Exp) -> bool {
        self.k <= o.k && self.l <= o.l
    }

    pub fn lcm(&self, o: &Exp) -> Exp {
        Exp::new(self.k.max(o.k), self.l.max(o.l))
    }

    pub fn degree(&self) -> usize {
        self.k + self.l
    }
}

impl Ord for Exp {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.l, self.k).cmp(&(o.l, o.k))
    }
}

impl PartialOrd for Exp {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl std::ops::Add for Exp {
    type Output = Exp;
    fn add(self, o: Exp) -> Exp {
        Exp::new(self.k + o.k, self.l + o.l)
    }
}

/// `sum c_{kl} x^k y^l`, stored sparsely with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct WeylElement {
    terms: LinComb<Exp>,
}

impl WeylElement {
    pub fn zero() -> Self {
        WeylElement {
            terms: LinComb::zero(),
        }
    }

    pub fn one() -> Self {
        Self::scalar(Rat::one())
    }

    pub fn scalar(c: Rat) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, Rat::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, Rat::one())
    }

    pub fn monomial(k: usize, l: usize, c: Rat) -> Self {
        WeylElement {
            terms: LinComb::term(Exp::new(k, l), c),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, usize, Rat)>>(it: I) -> Self {
        WeylElement {
            terms: it
                .into_iter()
                .map(|(k, l, c)| (Exp::new(k, l), c))
                .collect(),
        }
    }

    /// Integer-coefficient shorthand for tests and examples.
    pub fn from_int_terms(ts: &[(usize, usize, i64)]) -> Self {
        Self::from_terms(ts.iter().map(|&(k, l, c)| (k, l, rat(c))))
    }

    pub fn from_lincomb(terms: LinComb<Exp>) -> Self {
        WeylElement { terms }
    }

    pub fn poly_x(p: &UniPoly) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| (k, 0, c.clone())),
        )
    }

    pub fn poly_y(p: &UniPoly) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(l, c)| (0, l, c.clone())),
        )
    }

    pub fn terms(&self) -> &LinComb<Exp> {
        &self.terms
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Exp, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: usize, l: usize) -> Rat {
        self.terms.coeff(&Exp::new(k, l))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        WeylElement {
            terms: self.terms.scale(c),
        }
    }

    /// Maximal total degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Exp::degree).max()
    }

    pub fn max_x_degree(&self) -> usize {
        self.terms.keys().map(|e| e.k).max().unwrap_or(0)
    }

    pub fn max_y_degree(&self) -> usize {
        self.terms.keys().map(|e| e.l).max().unwrap_or(0)
    }

    /// The ≺-greatest term.
    pub fn leading_term(&self) -> Result<(Exp, Rat)> {
        self.terms
            .leading()
            .map(|(e, c)| (*e, c.clone()))
            .ok_or(Error::ZeroElement)
    }

    pub fn leading_exp(&self) -> Option<Exp> {
        self.terms.leading().map(|(e, _)| *e)
    }

    /// Reverses each monomial, `x^k y^l ↦ y^l x^k`, and normal-orders the result.
    pub fn tau(&self) -> Self {
        let mut out = LinComb::zero();
        for (e, c) in self.terms.iter() {
            out.add_scaled(&monomial_product(0, e.l, e.k, 0).terms, c);
        }
        WeylElement { terms: out }
    }

    /// Coefficients grouped by y-power: `self = sum_l p_l(x) y^l`.
    pub fn x_coeffs_by_y(&self) -> Vec<UniPoly> {
        let ly = self.max_y_degree();
        let mut out = vec![vec![Rat::zero(); self.max_x_degree() + 1]; ly + 1];
        for (e, c) in self.terms.iter() {
            out[e.l][e.k] = c.clone();
        }
        out.into_iter().map(UniPoly::new).collect()
    }

    /// Coefficients grouped by x-power: `self = sum_k x^k q_k(y)`.
    pub fn y_coeffs_by_x(&self) -> Vec<UniPoly> {
        let kx = self.max_x_degree();
        let mut out = vec![vec![Rat::zero(); self.max_y_degree() + 1]; kx + 1];
        for (e, c) in self.terms.iter() {
            out[e.k][e.l] = c.clone();
        }
        out.into_iter().map(UniPoly::new).collect()
    }

    /// `sum c_{kl} Y^l X^k`: the value of the τ-image at the matrix pair.
    pub fn eval_tau<T: Ring + From<Rat>>(&self, x: &Matrix<T>, y: &Matrix<T>) -> Result<Matrix<T>> {
        if !x.is_square() || !y.is_square() || x.rows() != y.rows() {
            return Err(Error::Shape(
                "eval_tau expects square matrices of equal size".into(),
            ));
        }
        let n = x.rows();
        let xp = powers(x, self.max_x_degree());
        let yp = powers(y, self.max_y_degree());
        let mut acc = Matrix::zeros(n, n);
        for (e, c) in self.terms.iter() {
            let term = yp[e.l].mul(&xp[e.k]).scale(&T::from(c.clone()));
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    pub fn to_string_xy(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mut mono = String::new();
            for (v, p) in [("x", e.k), ("y", e.l)] {
                match p {
                    0 => {}
                    1 => mono.push_str(v),
                    _ => mono.push_str(&format!("{v}^{p}")),
                }
            }
            let cs = format_rat(c);
            parts.push(if mono.is_empty() {
                cs
            } else if c.is_one() {
                mono
            } else if (-c).is_one() {
                format!("-{mono}")
            } else {
                format!("{cs}*{mono}")
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

fn powers<T: Ring>(m: &Matrix<T>, up_to: usize) -> Vec<Matrix<T>> {
    let mut out = vec![Matrix::identity(m.rows())];
    for i in 0..up_to {
        let next = out[i].mul(m);
        out.push(next);
    }
    out
}

fn binom(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Normal form of `x^a y^b · x^c y^d` using
/// `y^b x^c = sum_j (-1)^j j! C(b,j) C(c,j) x^(c-j) y^(b-j)`.
pub fn monomial_product(a: usize, b: usize, c: usize, d: usize) -> WeylElement {
    let mut out = LinComb::zero();
    let mut fact = BigInt::one();
    for j in 0..=b.min(c) {
        if j > 0 {
            fact *= BigInt::from(j);
        }
        let mut coef = &fact * binom(b, j) * binom(c, j);
        if j % 2 == 1 {
            coef = -coef;
        }
        out.add_term(Exp::new(a + c - j, b + d - j), Rat::from_integer(coef));
    }
    WeylElement { terms: out }
}

impl<'a> Mul<&'a WeylElement> for &'a WeylElement {
    type Output = WeylElement;
    fn mul(self, o: &WeylElement) -> WeylElement {
        let mut out = LinComb::zero();
        for (e1, c1) in self.terms.iter() {
            for (e2, c2) in o.terms.iter() {
                let c = c1 * c2;
                if e1.l == 0 || e2.k == 0 {
                    out.add_term(Exp::new(e1.k + e2.k, e1.l + e2.l), c);
                } else {
                    out.add_scaled(&monomial_product(e1.k, e1.l, e2.k, e2.l).terms, &c);
                }
            }
        }
        WeylElement { terms: out }
    }
}

impl<'a> Add<&'a WeylElement> for &'a WeylElement {
    type Output = WeylElement;
    fn add(self, o: &WeylElement) -> WeylElement {
        WeylElement {
            terms: &self.terms + &o.terms,
        }
    }
}

impl<'a> Sub<&'a WeylElement> for &'a WeylElement {
    type Output = WeylElement;
    fn sub(self, o: &WeylElement) -> WeylElement {
        WeylElement {
            terms: &self.terms - &o.terms,
        }
    }
}

impl Neg for &WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        WeylElement {
            terms: -&self.terms,
        }
    }
}

owned_binops!(WeylElement);

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_xy())
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_xy())
    }
}

/// Convenience: leading term of a nonzero element as `(k, l, c)`.
pub fn leading_term(a: &WeylElement) -> Result<(usize, usize, Rat)> {
    a.leading_term().map(|(e, c)| (e.k, e.l, c))
}

pub fn weyl_mul(a: &WeylElement, b: &WeylElement) -> WeylElement {
    a * b
}

pub fn weyl_tau(a: &WeylElement) -> WeylElement {
    a.tau()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(ts: &[(usize, usize, i64)]) -> WeylElement {
        WeylElement::from_int_terms(ts)
    }

    #[test]
    fn defining_relation() {
        let x = WeylElement::x();
        let y = WeylElement::y();
        assert_eq!(&(&x * &y) - &(&y * &x), WeylElement::one());
        assert_eq!(&y * &x, w(&[(1, 1, 1), (0, 0, -1)]));
    }

    #[test]
    fn small_products() {
        assert_eq!(
            &w(&[(1, 1, 1)]) * &WeylElement::x(),
            w(&[(2, 1, 1), (1, 0, -1)])
        );
        assert_eq!(
            &w(&[(0, 2, 1)]) * &WeylElement::x(),
            w(&[(1, 2, 1), (0, 1, -2)])
        );
    }

    #[test]
    fn tau_examples() {
        assert_eq!(WeylElement::x().tau(), WeylElement::x());
        assert_eq!(w(&[(1, 1, 1)]).tau(), w(&[(1, 1, 1), (0, 0, -1)]));
        assert_eq!(WeylElement::one().tau(), WeylElement::one());
    }

    #[test]
    fn leading_terms() {
        assert_eq!(
            leading_term(&w(&[(3, 0, 1), (0, 1, 1)])).unwrap(),
            (0, 1, rat(1))
        );
        assert_eq!(
            leading_term(&w(&[(1, 1, 1), (0, 0, -2)])).unwrap(),
            (1, 1, rat(1))
        );
        assert_eq!(
            leading_term(&w(&[(2, 1, 1), (1, 0, -4)])).unwrap(),
            (2, 1, rat(1))
        );
        assert!(leading_term(&WeylElement::zero()).is_err());
    }

    #[test]
    fn eval_tau_reverses_order() {
        let x = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        let y = Matrix::from_ints(&[&[0, 0], &[1, 0]]);
        let xy = w(&[(1, 1, 1)]);
        assert_eq!(xy.eval_tau(&x, &y).unwrap(), y.mul(&x));
    }
}
