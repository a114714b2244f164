//! Univariate rational functions as reduced fractions with monic denominator.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::poly::{owned_binops, UniPoly};
use crate::rat::Rat;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: UniPoly,
    den: UniPoly,
}

impl RatFun {
    /// Builds `num / den`, reducing and normalizing the denominator to be monic.
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num.exact_div(&g), den.exact_div(&g));
        let lc = den.leading_coeff();
        if !lc.is_one() {
            let inv = Rat::one() / lc;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFun { num, den }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFun {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    /// `t^e` for any integer `e`.
    pub fn power(e: i64) -> Self {
        if e >= 0 {
            Self::from_poly(UniPoly::monomial(Rat::one(), e as usize))
        } else {
            RatFun {
                num: UniPoly::one(),
                den: UniPoly::monomial(Rat::one(), (-e) as usize),
            }
        }
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&UniPoly> {
        self.is_poly().then_some(&self.num)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &UniPoly) -> Self {
        Self::new(&self.num * p, self.den.clone())
    }

    pub fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Self::new(self.den.clone(), self.num.clone()))
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(n, &self.den * &self.den)
    }

    /// Polynomial part: the quotient of num by den.
    pub fn poly_part(&self) -> UniPoly {
        self.num.div_rem(&self.den).0
    }

    /// The part vanishing at infinity: `rem / den`.
    pub fn vanishing_part(&self) -> Self {
        Self::new(self.num.div_rem(&self.den).1, self.den.clone())
    }

    pub fn eval(&self, t: &Rat) -> Option<Rat> {
        let d = self.den.eval(t);
        (!d.is_zero()).then(|| self.num.eval(t) / d)
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_poly() {
            self.num.display_in(var)
        } else {
            format!(
                "({}) / ({})",
                self.num.display_in(var),
                self.den.display_in(var)
            )
        }
    }
}

impl Default for RatFun {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<UniPoly> for RatFun {
    fn from(p: UniPoly) -> Self {
        Self::from_poly(p)
    }
}

impl From<Rat> for RatFun {
    fn from(c: Rat) -> Self {
        Self::constant(c)
    }
}

impl Zero for RatFun {
    fn zero() -> Self {
        RatFun {
            num: UniPoly::zero(),
            den: UniPoly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFun {
    fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }
}

impl<'a> Add<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn add(self, o: &RatFun) -> RatFun {
        if self.den == o.den {
            return RatFun::new(&self.num + &o.num, self.den.clone());
        }
        let g = self.den.gcd(&o.den);
        let a = o.den.exact_div(&g);
        let b = self.den.exact_div(&g);
        RatFun::new(&(&self.num * &a) + &(&o.num * &b), &self.den * &a)
    }
}

impl<'a> Sub<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn sub(self, o: &RatFun) -> RatFun {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn mul(self, o: &RatFun) -> RatFun {
        if self.is_zero() || o.is_zero() {
            return RatFun::zero();
        }
        RatFun::new(&self.num * &o.num, &self.den * &o.den)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Div<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn div(self, o: &RatFun) -> RatFun {
        self * &o.inverse().expect("division by the zero rational function")
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

owned_binops!(RatFun);

impl Div for RatFun {
    type Output = RatFun;
    fn div(self, o: RatFun) -> RatFun {
        &self / &o
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("t"))
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("t"))
    }
}
