//! Separated sums `Σ g(y) f(x)` and `Σ f(x) g(y)` inside the quotient skew field
//! of the Weyl algebra, with rational functions in each factor.
//!
//! The automorphism `α: x ↦ y, y ↦ −x` carries `f(x) g(y)` to `f(y) g(−x)`, so every
//! XY computation is done on the YX side and mapped back.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::rat::Rat;
use crate::ratfun::RatFun;
use crate::weyl::{monomial_product, WeylElement};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Chirality {
    /// `Σ g(y) f(x)`
    YX,
    /// `Σ f(x) g(y)`
    XY,
}

impl Chirality {
    pub fn name(self) -> &'static str {
        match self {
            Chirality::YX => "YX",
            Chirality::XY => "XY",
        }
    }
}

/// Which factor a polynomial-part projection acts on.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Projection {
    /// polynomial part of the right factor `f(x)` of a YX sum
    AcuteX,
    /// polynomial part of the left factor `g(y)` of a YX sum
    GraveY,
    /// polynomial part of the right factor `g(y)` of an XY sum
    AcuteY,
    /// polynomial part of the left factor `f(x)` of an XY sum
    GraveX,
}

impl Projection {
    fn chirality(self) -> Chirality {
        match self {
            Projection::AcuteX | Projection::GraveY => Chirality::YX,
            Projection::AcuteY | Projection::GraveX => Chirality::XY,
        }
    }

    fn acts_on_right(self) -> bool {
        matches!(self, Projection::AcuteX | Projection::AcuteY)
    }
}

/// Finite sum of products `left * right`; for YX the left factor is a function of `y`
/// and the right one of `x`, for XY the other way round.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SkewSum {
    chirality: Chirality,
    terms: Vec<(RatFun, RatFun)>,
}

/// `f(t) ↦ f(−t)`.
pub fn negate_var(f: &RatFun) -> RatFun {
    let flip = |p: &UniPoly| {
        UniPoly::new(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    };
    RatFun::new(flip(f.num()), flip(f.den()))
}

/// `α(a)` for `α: x ↦ y, y ↦ −x`.
pub fn weyl_alpha(a: &WeylElement) -> WeylElement {
    let mut acc = WeylElement::zero();
    for (e, c) in a.iter() {
        let sign = if e.l % 2 == 1 { -c.clone() } else { c.clone() };
        acc = &acc + &monomial_product(0, e.k, e.l, 0).scale(&sign);
    }
    acc
}

/// `α⁻¹(a)` for `α⁻¹: x ↦ −y, y ↦ x`.
pub fn weyl_alpha_inv(a: &WeylElement) -> WeylElement {
    let mut acc = WeylElement::zero();
    for (e, c) in a.iter() {
        let sign = if e.k % 2 == 1 { -c.clone() } else { c.clone() };
        acc = &acc + &monomial_product(0, e.k, e.l, 0).scale(&sign);
    }
    acc
}

impl SkewSum {
    pub fn new(chirality: Chirality, terms: Vec<(RatFun, RatFun)>) -> Self {
        let mut s = SkewSum {
            chirality,
            terms: Vec::new(),
        };
        for (l, r) in terms {
            s.push(l, r);
        }
        s
    }

    pub fn zero(chirality: Chirality) -> Self {
        SkewSum {
            chirality,
            terms: Vec::new(),
        }
    }

    pub fn one(chirality: Chirality) -> Self {
        Self::new(chirality, vec![(RatFun::one(), RatFun::one())])
    }

    pub fn scalar(chirality: Chirality, c: Rat) -> Self {
        Self::new(chirality, vec![(RatFun::constant(c), RatFun::one())])
    }

    /// Element of the Weyl algebra written in the given chirality.
    pub fn from_weyl(chirality: Chirality, a: &WeylElement) -> Self {
        Self::one(chirality).rmul(a)
    }

    pub fn chirality(&self) -> Chirality {
        self.chirality
    }

    pub fn terms(&self) -> &[(RatFun, RatFun)] {
        &self.terms
    }

    /// Adds a term, merging with an existing term of equal right factor.
    fn push(&mut self, left: RatFun, right: RatFun) {
        if left.is_zero() || right.is_zero() {
            return;
        }
        if let Some(pos) = self.terms.iter().position(|(_, r)| *r == right) {
            let sum = &self.terms[pos].0 + &left;
            if sum.is_zero() {
                self.terms.remove(pos);
            } else {
                self.terms[pos].0 = sum;
            }
        } else {
            self.terms.push((left, right));
        }
    }

    fn check_same(&self, o: &SkewSum) -> Result<()> {
        if self.chirality != o.chirality {
            return Err(Error::Chirality(format!(
                "cannot combine {} and {} sums termwise",
                self.chirality.name(),
                o.chirality.name()
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &SkewSum) -> Result<SkewSum> {
        self.check_same(o)?;
        let mut out = self.clone();
        for (l, r) in &o.terms {
            out.push(l.clone(), r.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &SkewSum) -> Result<SkewSum> {
        self.add(&o.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> SkewSum {
        if c.is_zero() {
            return Self::zero(self.chirality);
        }
        SkewSum {
            chirality: self.chirality,
            terms: self
                .terms
                .iter()
                .map(|(l, r)| (l.scale(c), r.clone()))
                .collect(),
        }
    }

    /// Multiply every left factor on the left by `h` (a function of the left variable).
    pub fn lmul_left_factor(&self, h: &RatFun) -> SkewSum {
        Self::new(
            self.chirality,
            self.terms.iter().map(|(l, r)| (h * l, r.clone())).collect(),
        )
    }

    /// Multiply every right factor on the right by `h` (a function of the right variable).
    pub fn rmul_right_factor(&self, h: &RatFun) -> SkewSum {
        Self::new(
            self.chirality,
            self.terms.iter().map(|(l, r)| (l.clone(), r * h)).collect(),
        )
    }

    /// `α(self)` for an XY sum, as a YX sum.
    fn alpha(&self) -> SkewSum {
        debug_assert_eq!(self.chirality, Chirality::XY);
        Self::new(
            Chirality::YX,
            self.terms
                .iter()
                .map(|(f, g)| (f.clone(), negate_var(g)))
                .collect(),
        )
    }

    /// `α⁻¹(self)` for a YX sum, as an XY sum.
    fn alpha_inv(&self) -> SkewSum {
        debug_assert_eq!(self.chirality, Chirality::YX);
        Self::new(
            Chirality::XY,
            self.terms
                .iter()
                .map(|(g, f)| (g.clone(), negate_var(f)))
                .collect(),
        )
    }

    fn yx_rmul_x(&self) -> SkewSum {
        let x = RatFun::power(1);
        self.rmul_right_factor(&x)
    }

    fn yx_rmul_y(&self) -> SkewSum {
        let y = RatFun::power(1);
        let mut out = SkewSum::zero(Chirality::YX);
        for (g, f) in &self.terms {
            out.push(g * &y, f.clone());
            out.push(g.clone(), f.derivative());
        }
        out
    }

    fn yx_lmul_x(&self) -> SkewSum {
        let x = RatFun::power(1);
        let mut out = SkewSum::zero(Chirality::YX);
        for (g, f) in &self.terms {
            out.push(g.clone(), &x * f);
            out.push(g.derivative(), f.clone());
        }
        out
    }

    fn yx_lmul_y(&self) -> SkewSum {
        self.lmul_left_factor(&RatFun::power(1))
    }

    fn yx_rmul(&self, a: &WeylElement) -> SkewSum {
        let mut acc = SkewSum::zero(Chirality::YX);
        let mut xpow = self.clone();
        let mut cur_k = 0;
        for k in 0..=a.max_x_degree() {
            while cur_k < k {
                xpow = xpow.yx_rmul_x();
                cur_k += 1;
            }
            let row: Vec<_> = a.iter().filter(|(e, _)| e.k == k).collect();
            if row.is_empty() {
                continue;
            }
            let mut ypow = xpow.clone();
            let mut cur_l = 0;
            for (e, c) in row {
                while cur_l < e.l {
                    ypow = ypow.yx_rmul_y();
                    cur_l += 1;
                }
                for (l, r) in &ypow.terms {
                    acc.push(l.scale(c), r.clone());
                }
            }
        }
        acc
    }

    fn yx_lmul(&self, a: &WeylElement) -> SkewSum {
        // x^k y^l · s = x^k (y^l s)
        let mut acc = SkewSum::zero(Chirality::YX);
        for (e, c) in a.iter() {
            let mut t = self.scale(c);
            for _ in 0..e.l {
                t = t.yx_lmul_y();
            }
            for _ in 0..e.k {
                t = t.yx_lmul_x();
            }
            for (l, r) in t.terms {
                acc.push(l, r);
            }
        }
        acc
    }

    /// `self · a`.
    pub fn rmul(&self, a: &WeylElement) -> SkewSum {
        match self.chirality {
            Chirality::YX => self.yx_rmul(a),
            Chirality::XY => self.alpha().yx_rmul(&weyl_alpha(a)).alpha_inv(),
        }
    }

    /// `a · self`.
    pub fn lmul(&self, a: &WeylElement) -> SkewSum {
        match self.chirality {
            Chirality::YX => self.yx_lmul(a),
            Chirality::XY => self.alpha().yx_lmul(&weyl_alpha(a)).alpha_inv(),
        }
    }

    /// Monic common denominator of the right factors.
    fn right_common_den(&self) -> UniPoly {
        self.terms
            .iter()
            .fold(UniPoly::one(), |acc, (_, r)| acc.lcm(r.den()))
    }

    /// For YX: with `q(x)` the common denominator of the right factors, returns `(H, q)` where
    /// `self = (Σ_t H_t(y) x^t) q(x)⁻¹`.
    fn yx_cleared(&self) -> (Vec<RatFun>, UniPoly) {
        let q = self.right_common_den();
        let mut h: Vec<RatFun> = Vec::new();
        for (g, f) in &self.terms {
            let p = f.num() * &q.exact_div(f.den());
            if h.len() < p.coeffs().len() {
                h.resize(p.coeffs().len(), RatFun::zero());
            }
            for (t, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    h[t] = &h[t] + &g.scale(c);
                }
            }
        }
        while h.last().is_some_and(Zero::is_zero) {
            h.pop();
        }
        (h, q)
    }

    /// True iff the sum vanishes in the skew field.
    pub fn is_zero(&self) -> bool {
        match self.chirality {
            Chirality::YX => self.yx_cleared().0.is_empty(),
            Chirality::XY => self.alpha().is_zero(),
        }
    }

    /// Equality in the skew field, for either combination of chiralities.
    pub fn eq_in_q(&self, o: &SkewSum) -> bool {
        match (self.chirality, o.chirality) {
            (a, b) if a == b => self.sub(o).expect("same chirality").is_zero(),
            (Chirality::XY, Chirality::YX) => mixed_eq(self, o),
            _ => mixed_eq(o, self),
        }
    }

    /// For a YX sum lying in `k(y)[x]`, the left coefficients `h_t(y)` with `self = Σ h_t(y) x^t`;
    /// for an XY sum lying in `k(x)[y]`, the coefficients `f_t(x)` with `self = Σ f_t(x) y^t`.
    pub fn poly_coeffs(&self) -> Option<Vec<RatFun>> {
        match self.chirality {
            Chirality::YX => {
                let (h, q) = self.yx_cleared();
                let deg_q = q.degree().unwrap_or(0);
                // divide Σ h_t x^t by q(x) with coefficients in k(y)
                let mut rem = h;
                if rem.len() <= deg_q {
                    return rem.iter().all(Zero::is_zero).then(Vec::new);
                }
                let mut quot = vec![RatFun::zero(); rem.len() - deg_q];
                for i in (0..quot.len()).rev() {
                    let c = rem[i + deg_q].clone();
                    if c.is_zero() {
                        continue;
                    }
                    for (j, qc) in q.coeffs().iter().enumerate() {
                        rem[i + j] = &rem[i + j] - &c.scale(qc);
                    }
                    quot[i] = c;
                }
                if rem[..deg_q].iter().any(|c| !c.is_zero()) {
                    return None;
                }
                while quot.last().is_some_and(Zero::is_zero) {
                    quot.pop();
                }
                Some(quot)
            }
            Chirality::XY => {
                let h = self.alpha().poly_coeffs()?;
                Some(
                    h.into_iter()
                        .enumerate()
                        .map(|(t, c)| if t % 2 == 1 { -c } else { c })
                        .collect(),
                )
            }
        }
    }

    pub fn in_poly_ring(&self) -> bool {
        self.poly_coeffs().is_some()
    }

    pub fn project(&self, which: Projection) -> Result<SkewSum> {
        if which.chirality() != self.chirality {
            return Err(Error::Chirality(format!(
                "projection {:?} needs a {} sum, got {}",
                which,
                which.chirality().name(),
                self.chirality.name()
            )));
        }
        let on_right = which.acts_on_right();
        Ok(Self::new(
            self.chirality,
            self.terms
                .iter()
                .map(|(l, r)| {
                    if on_right {
                        (l.clone(), RatFun::from_poly(r.poly_part()))
                    } else {
                        (RatFun::from_poly(l.poly_part()), r.clone())
                    }
                })
                .collect(),
        ))
    }

    /// The element of the Weyl algebra represented by a sum of polynomial products.
    pub fn to_weyl(&self) -> Result<WeylElement> {
        let mut acc = WeylElement::zero();
        for (l, r) in &self.terms {
            let (Some(lp), Some(rp)) = (l.as_poly(), r.as_poly()) else {
                return Err(Error::Membership(format!(
                    "{} sum has a non-polynomial factor",
                    self.chirality.name()
                )));
            };
            let prod = match self.chirality {
                Chirality::YX => &WeylElement::poly_y(lp) * &WeylElement::poly_x(rp),
                Chirality::XY => &WeylElement::poly_x(lp) * &WeylElement::poly_y(rp),
            };
            acc = &acc + &prod;
        }
        Ok(acc)
    }

    /// Writes `self = L⁻¹ · C · R⁻¹` with `C` in the Weyl algebra, `L` the common denominator of
    /// the left factors and `R` of the right ones.
    fn split_denominators(&self) -> (UniPoly, WeylElement, UniPoly) {
        let l_den = self
            .terms
            .iter()
            .fold(UniPoly::one(), |acc, (l, _)| acc.lcm(l.den()));
        let r_den = self.right_common_den();
        let cleared = Self::new(
            self.chirality,
            self.terms
                .iter()
                .map(|(l, r)| (l.mul_poly(&l_den), r.mul_poly(&r_den)))
                .collect(),
        );
        let c = cleared.to_weyl().expect("cleared factors are polynomial");
        (l_den, c, r_den)
    }

    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let (lv, rv) = match self.chirality {
            Chirality::YX => ("y", "x"),
            Chirality::XY => ("x", "y"),
        };
        self.terms
            .iter()
            .map(|(l, r)| format!("[{}]*[{}]", l.display_in(lv), r.display_in(rv)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `s = t` for an XY sum `s = P(x)⁻¹ C Q(y)⁻¹` and a YX sum `t`: equivalent to `P t Q = C`.
fn mixed_eq(s: &SkewSum, t: &SkewSum) -> bool {
    let (p, c, q) = s.split_denominators();
    let lhs = t
        .lmul(&WeylElement::poly_x(&p))
        .rmul(&WeylElement::poly_y(&q));
    lhs.sub(&SkewSum::from_weyl(Chirality::YX, &c))
        .expect("YX")
        .is_zero()
}

/// Decides `a · b = target` in the skew field when `a` and `b` have opposite chiralities.
pub fn product_equals(a: &SkewSum, b: &SkewSum, target: &SkewSum) -> Result<bool> {
    match (a.chirality, b.chirality) {
        (Chirality::XY, Chirality::YX) => {
            // a = P(x)⁻¹ C Q(y)⁻¹: a b = target ⇔ C (Q⁻¹ b) = P target
            let (p, c, q) = a.split_denominators();
            let q_inv = RatFun::new(UniPoly::one(), q);
            let lhs = b.lmul_left_factor(&q_inv).lmul(&c);
            let rhs = target.lmul(&WeylElement::poly_x(&p));
            Ok(lhs.eq_in_q(&rhs))
        }
        (Chirality::YX, Chirality::XY) => {
            // a = Q(y)⁻¹ D P(x)⁻¹: a b = target ⇔ D (P⁻¹ b) = Q target
            let (q, d, p) = a.split_denominators();
            let p_inv = RatFun::new(UniPoly::one(), p);
            let lhs = b.lmul_left_factor(&p_inv).lmul(&d);
            let rhs = target.lmul(&WeylElement::poly_y(&q));
            Ok(lhs.eq_in_q(&rhs))
        }
        _ => {
            if let Ok(bw) = b.to_weyl() {
                return Ok(a.rmul(&bw).eq_in_q(target));
            }
            if let Ok(aw) = a.to_weyl() {
                return Ok(b.lmul(&aw).eq_in_q(target));
            }
            Err(Error::Chirality(
                "product of two non-polynomial sums of equal chirality".into(),
            ))
        }
    }
}

/// `φ(a) = ρ̀_y ρ́_x(κ·a)` for a YX sum `κ`.
pub fn phi(a: &WeylElement, kappa: &SkewSum) -> Result<WeylElement> {
    if kappa.chirality() != Chirality::YX {
        return Err(Error::Chirality("phi expects a YX kappa".into()));
    }
    kappa
        .rmul(a)
        .project(Projection::AcuteX)?
        .project(Projection::GraveY)?
        .to_weyl()
}

/// `ψ(a) = ρ̀_x ρ́_y(χ·a)` for an XY sum `χ = κ⁻¹`.
pub fn psi(a: &WeylElement, chi: &SkewSum) -> Result<WeylElement> {
    if chi.chirality() != Chirality::XY {
        return Err(Error::Chirality("psi expects an XY chi".into()));
    }
    chi.rmul(a)
        .project(Projection::AcuteY)?
        .project(Projection::GraveX)?
        .to_weyl()
}

/// The operator `X(a) = ψ(φ(a)·x)`.
pub fn op_x(a: &WeylElement, kappa: &SkewSum, chi: &SkewSum) -> Result<WeylElement> {
    psi(&(&phi(a, kappa)? * &WeylElement::x()), chi)
}

/// The operator `Y(a) = a·y`.
pub fn op_y(a: &WeylElement) -> WeylElement {
    a * &WeylElement::y()
}

/// `(XY − YX)a + a`, which must be a scalar for a valid `κ`.
pub fn commutator_defect(a: &WeylElement, kappa: &SkewSum, chi: &SkewSum) -> Result<Rat> {
    let xy = op_x(&op_y(a), kappa, chi)?;
    let yx = op_y(&op_x(a, kappa, chi)?);
    let d = &(&xy - &yx) + a;
    if d.iter().any(|(e, _)| e.k != 0 || e.l != 0) {
        return Err(Error::Invariant(format!(
            "commutator defect is not a scalar: {d}"
        )));
    }
    Ok(d.coeff(0, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn rf(e: i64) -> RatFun {
        RatFun::power(e)
    }

    fn yx(terms: Vec<(RatFun, RatFun)>) -> SkewSum {
        SkewSum::new(Chirality::YX, terms)
    }

    fn zero_kappa() -> SkewSum {
        yx(vec![
            (RatFun::one(), RatFun::one()),
            (rf(-1).scale(&rat(-1)), rf(-1)),
        ])
    }

    fn zero_chi() -> SkewSum {
        SkewSum::new(
            Chirality::XY,
            vec![(RatFun::one(), RatFun::one()), (rf(-1), rf(-1))],
        )
    }

    #[test]
    fn right_multiplication_examples() {
        let s = yx(vec![(rf(-1), rf(-1))]);
        assert!(s
            .rmul(&WeylElement::x())
            .eq_in_q(&yx(vec![(rf(-1), RatFun::one())])));
        let expect = yx(vec![
            (RatFun::one(), rf(-1)),
            (rf(-1).scale(&rat(-1)), rf(-2)),
        ]);
        assert!(s.rmul(&WeylElement::y()).eq_in_q(&expect));
    }

    #[test]
    fn mixed_chirality_equality() {
        // x⁻¹ y = y x⁻¹ − x⁻²
        let lhs = SkewSum::new(Chirality::XY, vec![(rf(-1), rf(1))]);
        let rhs = yx(vec![(rf(1), rf(-1)), (RatFun::constant(rat(-1)), rf(-2))]);
        assert!(lhs.eq_in_q(&rhs));
        assert!(!zero_kappa().eq_in_q(&SkewSum::one(Chirality::YX)));
    }

    #[test]
    fn projections() {
        let s = yx(vec![(rf(-1), &rf(1) + &rf(-1))]);
        assert_eq!(
            s.project(Projection::AcuteX).unwrap(),
            yx(vec![(rf(-1), rf(1))])
        );
        let t = yx(vec![(&rf(1) + &rf(-1), rf(2))]);
        assert_eq!(
            t.project(Projection::GraveY).unwrap(),
            yx(vec![(rf(1), rf(2))])
        );
        assert!(t.project(Projection::AcuteY).is_err());
    }

    #[test]
    fn chi_inverts_kappa() {
        let one = SkewSum::one(Chirality::YX);
        assert!(product_equals(&zero_chi(), &zero_kappa(), &one).unwrap());
        assert!(product_equals(&zero_kappa(), &zero_chi(), &one).unwrap());
        assert!(!product_equals(&zero_chi(), &SkewSum::one(Chirality::YX), &one).unwrap());
    }

    #[test]
    fn phi_examples() {
        let k = zero_kappa();
        assert_eq!(phi(&WeylElement::x(), &k).unwrap(), WeylElement::x());
        let xy = WeylElement::from_int_terms(&[(1, 1, 1)]);
        assert_eq!(
            phi(&xy, &k).unwrap(),
            WeylElement::from_int_terms(&[(1, 1, 1), (0, 0, -1)])
        );
        assert_eq!(phi(&WeylElement::one(), &k).unwrap(), WeylElement::one());
    }

    #[test]
    fn defect_examples() {
        let (k, c) = (zero_kappa(), zero_chi());
        assert_eq!(
            commutator_defect(&WeylElement::one(), &k, &c).unwrap(),
            rat(1)
        );
        assert_eq!(
            commutator_defect(&WeylElement::x(), &k, &c).unwrap(),
            rat(0)
        );
        let one_yx = SkewSum::one(Chirality::YX);
        let one_xy = SkewSum::one(Chirality::XY);
        let a = WeylElement::from_int_terms(&[(2, 1, 3), (0, 2, 1)]);
        assert_eq!(commutator_defect(&a, &one_yx, &one_xy).unwrap(), rat(0));
    }

    #[test]
    fn poly_coeffs_membership() {
        // (1 − y⁻¹x⁻¹)·x = x − y⁻¹
        let s = zero_kappa().rmul(&WeylElement::x());
        let c = s.poly_coeffs().unwrap();
        assert_eq!(c, vec![rf(-1).scale(&rat(-1)), RatFun::one()]);
        assert!(zero_kappa().poly_coeffs().is_none());
    }
}
