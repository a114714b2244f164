//! The maps from the envelope into the quotient field, the Δ-corrections and the
//! fractional ideals `M_y = q(y) A + κ p(x) A`, cleared of denominators.

use num_traits::{One, Zero};

use crate::cm::CMPoint;
use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::poly::UniPoly;
use crate::rat::Rat;
use crate::ratfun::RatFun;
use crate::skew::{Chirality, SkewSum};
use crate::weyl::WeylElement;

/// Which of the two maps (normalized at `x` or at `y`).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    X,
    Y,
}

/// `v ↦ j (M − t)* v / det(M − t)`, the resolvent row applied to each vector.
fn resolvent(m: &RatMatrix, j: &[Rat], vs: &[Vec<Rat>]) -> Vec<RatFun> {
    let a = m.minus_var();
    let adj = a.adjugate();
    let det = a.det();
    let n = j.len();
    vs.iter()
        .map(|v| {
            let mut num = UniPoly::zero();
            for r in 0..n {
                for c in 0..n {
                    if !j[r].is_zero() && !v[c].is_zero() {
                        num = &num + &adj[(r, c)].scale(&(&j[r] * &v[c]));
                    }
                }
            }
            RatFun::new(num, det.clone())
        })
        .collect()
}

fn pow_apply(m: &RatMatrix, v: &[Rat], e: usize) -> Vec<Rat> {
    (0..e).fold(v.to_vec(), |acc, _| m.apply(&acc))
}

/// `Δ_x^{km}(v) = −Σ_{l=1}^{m} j (X − x)⁻¹ Y^{m−l} X^k v · y^{l−1}`, in `k(x)[y]`.
pub fn delta_x(p: &CMPoint, v: &[Rat], k: usize, m: usize) -> SkewSum {
    let xv = pow_apply(&p.x, v, k);
    let ws: Vec<Vec<Rat>> = (1..=m).map(|l| pow_apply(&p.y, &xv, m - l)).collect();
    let fs = resolvent(&p.x, &p.j, &ws);
    let terms = fs
        .into_iter()
        .enumerate()
        .map(|(l, f)| (-f, RatFun::power(l as i64)))
        .collect();
    SkewSum::new(Chirality::XY, terms)
}

/// `Δ_y^{km}(v) = Σ_{l=1}^{k} j (Y − y)⁻¹ X^{k−l} v · x^{l−1} y^m`, in `k(y)[x]`.
pub fn delta_y(p: &CMPoint, v: &[Rat], k: usize, m: usize) -> SkewSum {
    let ws: Vec<Vec<Rat>> = (1..=k).map(|l| pow_apply(&p.x, v, k - l)).collect();
    let gs = resolvent(&p.y, &p.j, &ws);
    let terms = gs
        .into_iter()
        .enumerate()
        .map(|(l, g)| (g, RatFun::power(l as i64)))
        .collect();
    SkewSum::new(Chirality::YX, terms).rmul(&WeylElement::monomial(0, m, Rat::one()))
}

/// `(g_x)₂(v, x^k y^m)` built from the recurrence
/// `g₂(v, y^m) = g₂(v, y^{m−1})·y + g₂(Y^{m−1} v, y)` and `g₂(v, x^k y^m) = g₂(X^k v, y^m)`.
pub fn delta_x_recurrence(p: &CMPoint, v: &[Rat], k: usize, m: usize) -> SkewSum {
    let xv = pow_apply(&p.x, v, k);
    let inv =
        p.x.minus_var()
            .map(|q| RatFun::from_poly(q.clone()))
            .inverse()
            .expect("X − t is invertible");
    let g_y = |w: &[Rat]| -> SkewSum {
        let n = p.n;
        let f = (0..n)
            .flat_map(|r| (0..n).map(move |c| (r, c)))
            .fold(RatFun::zero(), |acc, (r, c)| {
                &acc + &inv[(r, c)].scale(&(&p.j[r] * &w[c]))
            });
        SkewSum::new(Chirality::XY, vec![(-f, RatFun::one())])
    };
    let mut acc = SkewSum::zero(Chirality::XY);
    let mut ypow = xv.clone();
    for _ in 1..=m {
        acc = acc
            .rmul(&WeylElement::y())
            .add(&g_y(&ypow))
            .expect("same chirality");
        ypow = p.y.apply(&ypow);
    }
    acc
}

/// `x^k y^m + Δ^{km}(ī)`, the image of `Y^m X^k i` with the generator sent to 1.
pub fn gmap_image(p: &CMPoint, side: Side, k: usize, m: usize) -> SkewSum {
    let mono = WeylElement::monomial(k, m, Rat::one());
    match side {
        Side::X => SkewSum::from_weyl(Chirality::XY, &mono).add(&delta_x(p, &p.i, k, m)),
        Side::Y => SkewSum::from_weyl(Chirality::YX, &mono).add(&delta_y(p, &p.i, k, m)),
    }
    .expect("same chirality")
}

/// Image of `Σ c_k X^k i` (`side` selects the map).
pub fn gmap_image_poly_x(p: &CMPoint, side: Side, poly: &UniPoly) -> SkewSum {
    let ch = match side {
        Side::X => Chirality::XY,
        Side::Y => Chirality::YX,
    };
    poly.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(SkewSum::zero(ch), |acc, (k, c)| {
            acc.add(&gmap_image(p, side, k, 0).scale(c))
                .expect("same chirality")
        })
}

/// Image of `Σ c_m Y^m i`.
pub fn gmap_image_poly_y(p: &CMPoint, side: Side, poly: &UniPoly) -> SkewSum {
    let ch = match side {
        Side::X => Chirality::XY,
        Side::Y => Chirality::YX,
    };
    poly.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(SkewSum::zero(ch), |acc, (m, c)| {
            acc.add(&gmap_image(p, side, 0, m).scale(c))
                .expect("same chirality")
        })
}

/// The monic characteristic polynomials `p = det(t − X)`, `q = det(t − Y)`.
pub fn char_polys(p: &CMPoint) -> (UniPoly, UniPoly) {
    (p.x.charpoly(), p.y.charpoly())
}

/// `M_y` with its two generators and a presentation inside `A` obtained by clearing denominators.
#[derive(Clone, Debug)]
pub struct IdealPresentation {
    pub source: CMPoint,
    /// `q(y)`
    pub gen_poly: WeylElement,
    /// `κ p(x)` as an element of `k(y)[x]`
    pub gen_skew: SkewSum,
    /// `d(y)`, monic
    pub clearing: UniPoly,
    /// `d(y) q(y)` and `d(y) κ p(x)`
    pub cleared: [WeylElement; 2],
}

impl IdealPresentation {
    pub fn cleared_generators(&self) -> Vec<WeylElement> {
        self.cleared.to_vec()
    }
}

/// `Σ c_t(y) x^t ↦ Σ (d c_t)(y) x^t` for a common denominator `d`.
fn clear(coeffs: &[RatFun]) -> (UniPoly, WeylElement) {
    let d = coeffs
        .iter()
        .fold(UniPoly::one(), |acc, c| acc.lcm(c.den()));
    let mut out = WeylElement::zero();
    for (t, c) in coeffs.iter().enumerate() {
        let dc = c.mul_poly(&d);
        let poly = dc.as_poly().expect("d clears the denominator");
        out = &out + &(&WeylElement::poly_y(poly) * &WeylElement::monomial(t, 0, Rat::one()));
    }
    (d, out)
}

pub fn omega_ideal(p: &CMPoint) -> Result<IdealPresentation> {
    if !p.validate() {
        return Err(Error::InvalidPoint("rank-one relation fails".into()));
    }
    let (px, qy) = char_polys(p);
    let (kappa, _) = p.kappa();
    let gen_skew = kappa.rmul(&WeylElement::poly_x(&px));
    let coeffs = gen_skew
        .poly_coeffs()
        .ok_or_else(|| Error::Membership("κ p(x) is not in k(y)[x]".into()))?;
    let (d, cleared_skew) = clear(&coeffs);
    let gen_poly = WeylElement::poly_y(&qy);
    let cleared_poly = &WeylElement::poly_y(&d) * &gen_poly;
    Ok(IdealPresentation {
        source: p.clone(),
        gen_poly,
        gen_skew,
        clearing: d,
        cleared: [cleared_poly, cleared_skew],
    })
}

/// `(g_x)₂(v, x) = Δ_x^{10}(v)` for each basis vector `v`.
pub fn g2_on_x(p: &CMPoint) -> Vec<SkewSum> {
    (0..p.n)
        .map(|r| {
            let v: Vec<Rat> = (0..p.n)
                .map(|t| if t == r { Rat::one() } else { Rat::zero() })
                .collect();
            delta_x(p, &v, 1, 0)
        })
        .collect()
}

/// `(g_y)₁(p(X) i) − κ p(x)`, zero by the compatibility of the two maps.
pub fn compatibility_defect(p: &CMPoint) -> SkewSum {
    let (px, _) = char_polys(p);
    let (kappa, _) = p.kappa();
    gmap_image_poly_x(p, Side::Y, &px)
        .sub(&kappa.rmul(&WeylElement::poly_x(&px)))
        .expect("YX")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn delta_zero_point() {
        let p = CMPoint::zero_point();
        let d = delta_x(&p, &[rat(1)], 0, 1);
        let expect = SkewSum::new(Chirality::XY, vec![(RatFun::power(-1), RatFun::one())]);
        assert!(d.sub(&expect).unwrap().is_zero());
        assert!(delta_x(&p, &[rat(1)], 3, 0).is_zero());
    }

    #[test]
    fn closed_form_matches_recurrence() {
        for p in [
            CMPoint::zero_point(),
            CMPoint::nilpotent2(),
            CMPoint::single(rat(1), rat(-2)),
        ] {
            for k in 0..3 {
                for m in 0..=5 {
                    let a = delta_x(&p, &p.i, k, m);
                    let b = delta_x_recurrence(&p, &p.i, k, m);
                    assert!(a.sub(&b).unwrap().is_zero(), "k={k} m={m}");
                }
            }
        }
    }

    #[test]
    fn zero_point_ideal() {
        let ip = omega_ideal(&CMPoint::zero_point()).unwrap();
        assert_eq!(ip.clearing, UniPoly::var());
        assert_eq!(ip.cleared[0], WeylElement::from_int_terms(&[(0, 2, 1)]));
        assert_eq!(
            ip.cleared[1],
            WeylElement::from_int_terms(&[(1, 1, 1), (0, 0, -2)])
        );
    }

    #[test]
    fn nilpotent_ideal() {
        let ip = omega_ideal(&CMPoint::nilpotent2()).unwrap();
        assert_eq!(ip.clearing, UniPoly::var());
        assert_eq!(ip.cleared[0], WeylElement::from_int_terms(&[(0, 3, 1)]));
        assert_eq!(
            ip.cleared[1],
            WeylElement::from_int_terms(&[(2, 1, 1), (1, 0, -4)])
        );
    }

    #[test]
    fn empty_point_is_unit_ideal() {
        let ip = omega_ideal(&CMPoint::empty()).unwrap();
        assert_eq!(ip.cleared[0], WeylElement::one());
    }

    #[test]
    fn compatibility_holds() {
        for p in [
            CMPoint::zero_point(),
            CMPoint::nilpotent2(),
            CMPoint::single(rat(1), rat(0)),
        ] {
            assert!(compatibility_defect(&p).is_zero());
        }
    }
}
