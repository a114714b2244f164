//! The free algebra `k<x, y>` and commutator-preserving substitutions.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::matrix::{Matrix, Ring};
use crate::poly::UniPoly;
use crate::rat::{format_rat, Rat};
use crate::weyl::WeylElement;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Letter {
    X,
    Y,
}

pub type Word = Vec<Letter>;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeElement {
    terms: LinComb<Word>,
}

impl FreeElement {
    pub fn zero() -> Self {
        FreeElement {
            terms: LinComb::zero(),
        }
    }

    pub fn one() -> Self {
        Self::word(Vec::new(), Rat::one())
    }

    pub fn x() -> Self {
        Self::word(vec![Letter::X], Rat::one())
    }

    pub fn y() -> Self {
        Self::word(vec![Letter::Y], Rat::one())
    }

    pub fn word(w: Word, c: Rat) -> Self {
        FreeElement {
            terms: LinComb::term(w, c),
        }
    }

    pub fn terms(&self) -> &LinComb<Word> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        FreeElement {
            terms: self.terms.scale(c),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        FreeElement {
            terms: &self.terms + &o.terms,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        FreeElement {
            terms: &self.terms - &o.terms,
        }
    }

    /// Concatenation product.
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = LinComb::zero();
        for (w1, c1) in self.terms.iter() {
            for (w2, c2) in o.terms.iter() {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1 * c2);
            }
        }
        FreeElement { terms: out }
    }

    /// `p(x)` as a free-algebra element.
    pub fn poly_in(p: &UniPoly, letter: Letter) -> Self {
        let mut out = LinComb::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            out.add_term(vec![letter; i], c.clone());
        }
        FreeElement { terms: out }
    }

    /// The lift sending `x^k y^l` to the word `x..x y..y`.
    pub fn lift(a: &WeylElement) -> Self {
        let mut out = LinComb::zero();
        for (e, c) in a.iter() {
            let mut w = vec![Letter::X; e.k];
            w.extend(std::iter::repeat_n(Letter::Y, e.l));
            out.add_term(w, c.clone());
        }
        FreeElement { terms: out }
    }

    /// Image in the Weyl algebra.
    pub fn to_weyl(&self) -> WeylElement {
        let (x, y) = (WeylElement::x(), WeylElement::y());
        let mut acc = WeylElement::zero();
        for (w, c) in self.terms.iter() {
            let mut m = WeylElement::scalar(c.clone());
            for l in w {
                m = &m * if *l == Letter::X { &x } else { &y };
            }
            acc = &acc + &m;
        }
        acc
    }

    /// Replace `x` and `y` by the given elements.
    pub fn substitute(&self, img_x: &FreeElement, img_y: &FreeElement) -> Self {
        let mut acc = FreeElement::zero();
        for (w, c) in self.terms.iter() {
            let mut m = FreeElement::word(Vec::new(), c.clone());
            for l in w {
                m = m.mul(if *l == Letter::X { img_x } else { img_y });
            }
            acc = acc.add(&m);
        }
        acc
    }

    /// Right-action evaluation: the word `l1 l2 .. ln` becomes `Ln .. L2 L1`.
    pub fn eval_reversed<T: Ring + From<Rat>>(&self, x: &Matrix<T>, y: &Matrix<T>) -> Matrix<T> {
        let n = x.rows();
        let mut acc = Matrix::zeros(n, n);
        for (w, c) in self.terms.iter() {
            let mut m = Matrix::identity(n).scale(&T::from(c.clone()));
            for l in w {
                m = (if *l == Letter::X { x } else { y }).mul(&m);
            }
            acc = acc.add(&m);
        }
        acc
    }
}

impl fmt::Debug for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let s: String = w
                    .iter()
                    .map(|l| if *l == Letter::X { 'x' } else { 'y' })
                    .collect();
                format!(
                    "{}*{}",
                    format_rat(c),
                    if s.is_empty() { "1".into() } else { s }
                )
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Description of a generator of the automorphism group, kept for serialization.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AutGenerator {
    /// `x -> x, y -> y + p(x)`
    ShiftY(UniPoly),
    /// `x -> x + q(y), y -> y`
    ShiftX(UniPoly),
    /// `x -> a x + b y, y -> c x + d y` with `ad - bc = 1`
    Linear([Rat; 4]),
}

/// Algebra endomorphism of `k<x, y>` fixing `xy - yx`, with an optional known inverse.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Automorphism {
    image_x: FreeElement,
    image_y: FreeElement,
    inverse: Option<(FreeElement, FreeElement)>,
}

fn commutator_xy() -> FreeElement {
    FreeElement::x()
        .mul(&FreeElement::y())
        .sub(&FreeElement::y().mul(&FreeElement::x()))
}

impl Automorphism {
    /// Checks `σ(x)σ(y) − σ(y)σ(x) = xy − yx` in the free algebra.
    pub fn new(image_x: FreeElement, image_y: FreeElement) -> Result<Self> {
        Self::with_inverse(image_x, image_y, None)
    }

    pub fn with_inverse(
        image_x: FreeElement,
        image_y: FreeElement,
        inverse: Option<(FreeElement, FreeElement)>,
    ) -> Result<Self> {
        let c = image_x.mul(&image_y).sub(&image_y.mul(&image_x));
        if c != commutator_xy() {
            return Err(Error::InvalidAutomorphism(format!(
                "commutator maps to {c:?}"
            )));
        }
        if let Some((ix, iy)) = &inverse {
            let back_x = ix.substitute(&image_x, &image_y);
            let back_y = iy.substitute(&image_x, &image_y);
            if back_x != FreeElement::x() || back_y != FreeElement::y() {
                return Err(Error::InvalidAutomorphism(
                    "supplied inverse does not invert".into(),
                ));
            }
        }
        Ok(Automorphism {
            image_x,
            image_y,
            inverse,
        })
    }

    pub fn identity() -> Self {
        let (x, y) = (FreeElement::x(), FreeElement::y());
        Automorphism {
            image_x: x.clone(),
            image_y: y.clone(),
            inverse: Some((x, y)),
        }
    }

    pub fn from_generator(g: &AutGenerator) -> Result<Self> {
        let (x, y) = (FreeElement::x(), FreeElement::y());
        match g {
            AutGenerator::ShiftY(p) => {
                let px = FreeElement::poly_in(p, Letter::X);
                Self::with_inverse(x.clone(), y.add(&px), Some((x, y.sub(&px))))
            }
            AutGenerator::ShiftX(q) => {
                let qy = FreeElement::poly_in(q, Letter::Y);
                Self::with_inverse(x.add(&qy), y.clone(), Some((x.sub(&qy), y)))
            }
            AutGenerator::Linear([a, b, c, d]) => {
                if a * d - b * c != Rat::one() {
                    return Err(Error::InvalidAutomorphism(
                        "linear map must have determinant 1".into(),
                    ));
                }
                let lin = |p: &Rat, q: &Rat| x.scale(p).add(&y.scale(q));
                Self::with_inverse(lin(a, b), lin(c, d), Some((lin(d, &-b), lin(&-c, a))))
            }
        }
    }

    /// Composition of generators in list order: `[g1, g2]` means `g1 ∘ g2`.
    pub fn from_generators(gs: &[AutGenerator]) -> Result<Self> {
        let mut acc = Self::identity();
        for g in gs {
            acc = acc.compose(&Self::from_generator(g)?);
        }
        Ok(acc)
    }

    pub fn image_x(&self) -> &FreeElement {
        &self.image_x
    }

    pub fn image_y(&self) -> &FreeElement {
        &self.image_y
    }

    /// `(self ∘ other)(a) = self(other(a))`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        let ix = other.image_x.substitute(&self.image_x, &self.image_y);
        let iy = other.image_y.substitute(&self.image_x, &self.image_y);
        let inverse = match (&self.inverse, &other.inverse) {
            (Some((sx, sy)), Some((ox, oy))) => {
                Some((sx.substitute(ox, oy), sy.substitute(ox, oy)))
            }
            _ => None,
        };
        Automorphism {
            image_x: ix,
            image_y: iy,
            inverse,
        }
    }

    pub fn inverse(&self) -> Result<Automorphism> {
        let (ix, iy) = self.inverse.clone().ok_or(Error::NoInverse)?;
        Ok(Automorphism {
            image_x: ix,
            image_y: iy,
            inverse: Some((self.image_x.clone(), self.image_y.clone())),
        })
    }

    pub fn apply_free(&self, a: &FreeElement) -> FreeElement {
        a.substitute(&self.image_x, &self.image_y)
    }

    /// σ(a) for a normal-ordered element.
    pub fn apply(&self, a: &WeylElement) -> WeylElement {
        let ix = self.image_x.to_weyl();
        let iy = self.image_y.to_weyl();
        let mut acc = WeylElement::zero();
        let mut xp = vec![WeylElement::one()];
        let mut yp = vec![WeylElement::one()];
        for (e, c) in a.iter() {
            while xp.len() <= e.k {
                let next = xp.last().unwrap() * &ix;
                xp.push(next);
            }
            while yp.len() <= e.l {
                let next = yp.last().unwrap() * &iy;
                yp.push(next);
            }
            acc = &acc + &(&xp[e.k] * &yp[e.l]).scale(c);
        }
        acc
    }
}

pub fn apply_automorphism(s: &Automorphism, a: &WeylElement) -> WeylElement {
    s.apply(a)
}

impl Zero for FreeElement {
    fn zero() -> Self {
        FreeElement::zero()
    }
    fn is_zero(&self) -> bool {
        FreeElement::is_zero(self)
    }
}

impl std::ops::Add for FreeElement {
    type Output = FreeElement;
    fn add(self, o: FreeElement) -> FreeElement {
        FreeElement::add(&self, &o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn shift_y_examples() {
        let s = Automorphism::from_generator(&AutGenerator::ShiftY(UniPoly::from_ints(&[0, 0, 1])))
            .unwrap();
        let y = WeylElement::y();
        assert_eq!(
            s.apply(&y),
            WeylElement::from_int_terms(&[(0, 1, 1), (2, 0, 1)])
        );
        let comm = &(&WeylElement::x() * &y) - &(&y * &WeylElement::x());
        assert_eq!(s.apply(&comm), WeylElement::one());
    }

    #[test]
    fn shift_x_example() {
        let s = Automorphism::from_generator(&AutGenerator::ShiftX(UniPoly::from_ints(&[0, 1])))
            .unwrap();
        let xy = WeylElement::from_int_terms(&[(1, 1, 1)]);
        assert_eq!(
            s.apply(&xy),
            WeylElement::from_int_terms(&[(1, 1, 1), (0, 2, 1)])
        );
    }

    #[test]
    fn rejects_non_automorphism() {
        let r = Automorphism::new(FreeElement::x().scale(&rat(2)), FreeElement::y());
        assert!(matches!(r, Err(Error::InvalidAutomorphism(_))));
    }

    #[test]
    fn compose_and_inverse() {
        let a = Automorphism::from_generator(&AutGenerator::ShiftY(UniPoly::from_ints(&[0, 1])))
            .unwrap();
        let b = Automorphism::from_generator(&AutGenerator::ShiftX(UniPoly::from_ints(&[1, 0, 1])))
            .unwrap();
        let ab = a.compose(&b);
        let id = ab.compose(&ab.inverse().unwrap());
        assert_eq!(id.image_x(), &FreeElement::x());
        assert_eq!(id.image_y(), &FreeElement::y());
        let el = WeylElement::from_int_terms(&[(2, 1, 3), (0, 2, -1)]);
        assert_eq!(ab.apply(&el), a.apply(&b.apply(&el)));
    }
}
