//! From a right ideal of the Weyl algebra back to a Calogero-Moser point.
//!
//! The ideal is replaced by its leading-exponent ideal `M₀ ⊆ I = i·k[x̄, ȳ]`, the right action
//! of `x`, `y` is transported to endomorphisms `X`, `Y` of `I`, and these are corrected on a
//! complement of `M₀` until `[X, Y] + Id` has image in `k·i`.

use std::cell::RefCell;
use std::collections::HashMap;

use num_traits::{One, Zero};
use rand::Rng;

use crate::cm::CMPoint;
use crate::error::{Error, Result};
use crate::groebner::{groebner_with_guard, rmul_monomial, RightIdealGB, DEFAULT_GUARD};
use crate::lincomb::LinComb;
use crate::matrix::{Matrix, RatMatrix};
use crate::rat::{format_rat, Rat};
use crate::weyl::{Exp, WeylElement};

/// Element of `k[x̄, ȳ]`, keyed by exponent.
pub type MonVec = LinComb<Exp>;

/// Which Gröbner basis element is used to lift an exponent of `Σ` to the ideal.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum TieBreak {
    /// divisor with maximal `l`, then maximal `k`
    #[default]
    MaxL,
    /// divisor with minimal `l`, then minimal `k`
    MinL,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Gen {
    X,
    Y,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExponentData {
    pub sigma_gens: Vec<Exp>,
    /// exponent of the generator `i` of `I`
    pub corner: Exp,
    pub complement: Vec<Exp>,
}

impl ExponentData {
    pub fn n(&self) -> usize {
        self.complement.len()
    }
}

pub fn exponent_data(gb: &RightIdealGB) -> Result<ExponentData> {
    Ok(ExponentData {
        sigma_gens: gb.staircase_gens.clone(),
        corner: gb.corner(),
        complement: gb.complement()?,
    })
}

/// One correction: the filtration vector and the value assigned to it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Patch {
    pub vector: MonVec,
    pub eigenvalue: Rat,
    pub value: MonVec,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Transcript {
    pub exponents: ExponentData,
    pub x_patches: Vec<Patch>,
    pub y_patches: Vec<Patch>,
}

#[derive(Clone, Debug)]
pub struct ThetaOutput {
    pub point: CMPoint,
    pub transcript: Transcript,
}

/// Transported action on `I` with lazily cached lifts.
pub struct Transport {
    gb: RightIdealGB,
    data: ExponentData,
    tie: TieBreak,
    guard: u64,
    lifts: RefCell<HashMap<Exp, WeylElement>>,
    images: RefCell<HashMap<(Exp, bool), MonVec>>,
}

fn mono(e: Exp) -> MonVec {
    MonVec::term(e, Rat::one())
}

fn shift(e: Exp, g: Gen) -> Exp {
    match g {
        Gen::X => Exp::new(e.k + 1, e.l),
        Gen::Y => Exp::new(e.k, e.l + 1),
    }
}

impl Transport {
    pub fn new(gb: RightIdealGB, tie: TieBreak, guard: u64) -> Result<Self> {
        let data = exponent_data(&gb)?;
        Ok(Transport {
            gb,
            data,
            tie,
            guard,
            lifts: RefCell::default(),
            images: RefCell::default(),
        })
    }

    pub fn data(&self) -> &ExponentData {
        &self.data
    }

    pub fn in_m0(&self, e: Exp) -> bool {
        self.gb.contains_exp(e)
    }

    pub fn in_i(&self, e: Exp) -> bool {
        self.data.corner.divides(&e)
    }

    /// The chosen element `x^k y^l + l.t.` of the ideal.
    pub fn lift(&self, e: Exp) -> Result<WeylElement> {
        if let Some(m) = self.lifts.borrow().get(&e) {
            return Ok(m.clone());
        }
        let cands = self
            .gb
            .basis
            .iter()
            .filter(|g| g.leading_exp().is_some_and(|l| l.divides(&e)));
        let key = |g: &&WeylElement| {
            let l = g.leading_exp().expect("nonzero");
            (l.l, l.k)
        };
        let g = match self.tie {
            TieBreak::MaxL => cands.max_by_key(key),
            TieBreak::MinL => cands.min_by_key(key),
        }
        .ok_or_else(|| Error::Invariant(format!("({}, {}) is not a leading exponent", e.k, e.l)))?;
        let le = g.leading_exp().expect("nonzero");
        let m = rmul_monomial(g, Exp::new(e.k - le.k, e.l - le.l));
        self.lifts.borrow_mut().insert(e, m.clone());
        Ok(m)
    }

    /// `r`: an element of the ideal written in the lifted basis.
    pub fn r(&self, m: &WeylElement) -> Result<MonVec> {
        let mut rest = m.clone();
        let mut out = MonVec::zero();
        let mut steps = 0u64;
        let mut last: Option<Exp> = None;
        while let Ok((e, c)) = rest.leading_term() {
            steps += 1;
            if steps > self.guard {
                return Err(Error::StepBound(self.guard));
            }
            if last.is_some_and(|p| e >= p) {
                return Err(Error::Invariant(
                    "leading exponent failed to decrease".into(),
                ));
            }
            last = Some(e);
            if !self.in_m0(e) {
                return Err(Error::Invariant(format!(
                    "element leaves the ideal at ({}, {})",
                    e.k, e.l
                )));
            }
            rest = &rest - &self.lift(e)?.scale(&c);
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// The untouched action: transported on `M₀`, multiplication on complement monomials.
    pub fn act(&self, a: &MonVec, g: Gen) -> Result<MonVec> {
        let mut out = MonVec::zero();
        for (e, c) in a.iter() {
            if !self.in_i(*e) {
                return Err(Error::Invariant(format!("({}, {}) is outside I", e.k, e.l)));
            }
            if self.in_m0(*e) {
                out.add_scaled(&self.transport(*e, g)?, c);
            } else {
                out.add_term(shift(*e, g), c.clone());
            }
        }
        Ok(out)
    }

    fn transport(&self, e: Exp, g: Gen) -> Result<MonVec> {
        let key = (e, g == Gen::X);
        if let Some(v) = self.images.borrow().get(&key) {
            return Ok(v.clone());
        }
        let gen = match g {
            Gen::X => WeylElement::x(),
            Gen::Y => WeylElement::y(),
        };
        let v = self.r(&(&self.lift(e)? * &gen))?;
        self.images.borrow_mut().insert(key, v.clone());
        Ok(v)
    }

    /// Coordinates of the class of `a` in `I/M₀` in the complement basis.
    pub fn project(&self, a: &MonVec) -> Vec<Rat> {
        self.data.complement.iter().map(|e| a.coeff(e)).collect()
    }

    pub fn from_coords(&self, v: &[Rat]) -> MonVec {
        self.data
            .complement
            .iter()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (*e, c.clone()))
            .collect()
    }
}

/// A linear map on `I` that vanishes on `M₀` and is given on a basis of the complement.
struct Correction {
    /// complement coordinates of the basis vectors, as columns
    vectors: Vec<Vec<Rat>>,
    values: Vec<MonVec>,
    inverse: Option<RatMatrix>,
}

impl Correction {
    fn new(vectors: Vec<Vec<Rat>>) -> Result<Self> {
        let n = vectors.len();
        let inverse = if n == 0 {
            None
        } else {
            Some(Matrix::from_fn(n, n, |r, c| vectors[c][r].clone()).inverse()?)
        };
        Ok(Correction {
            vectors,
            values: Vec::new(),
            inverse,
        })
    }

    /// Evaluates on `a`, requiring its class to lie in the span of the vectors defined so far.
    fn apply(&self, t: &Transport, a: &MonVec) -> Result<MonVec> {
        let Some(inv) = &self.inverse else {
            return Ok(MonVec::zero());
        };
        let coords = inv.apply(&t.project(a));
        let mut out = MonVec::zero();
        for (idx, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = self.values.get(idx).ok_or_else(|| {
                Error::Invariant("filtration vector used before it is corrected".into())
            })?;
            out.add_scaled(v, c);
        }
        Ok(out)
    }
}

fn mat_from_images(t: &Transport, f: impl Fn(&MonVec) -> Result<MonVec>) -> Result<RatMatrix> {
    let comp = &t.data.complement;
    let n = comp.len();
    let cols: Vec<Vec<Rat>> = comp
        .iter()
        .map(|e| f(&mono(*e)).map(|v| t.project(&v)))
        .collect::<Result<_>>()?;
    Ok(Matrix::from_fn(n, n, |r, c| cols[c][r].clone()))
}

/// A complete flag of invariant subspaces with rational eigenvalues: `(v_j, α_j)` with
/// `M v_j − α_j v_j ∈ span(v_1, …, v_{j−1})`.
pub fn invariant_flag(m: &RatMatrix) -> Result<Vec<(Vec<Rat>, Rat)>> {
    let n = m.rows();
    let (_, leftover) = m.charpoly().rational_roots();
    if !leftover.is_constant() {
        return Err(Error::NonSplitSpectrum {
            factor: leftover.display_in("t"),
        });
    }
    let mut flag: Vec<(Vec<Rat>, Rat)> = Vec::new();
    for _ in 0..n {
        let w: Vec<Vec<Rat>> = flag.iter().map(|(v, _)| v.clone()).collect();
        let mut basis = w.clone();
        for u in 0..n {
            let e: Vec<Rat> = (0..n)
                .map(|t| if t == u { Rat::one() } else { Rat::zero() })
                .collect();
            let mut trial = basis.clone();
            trial.push(e);
            let mat = Matrix::from_fn(n, trial.len(), |r, c| trial[c][r].clone());
            if mat.rank() == trial.len() {
                basis = trial;
            }
        }
        let c = Matrix::from_fn(n, n, |r, col| basis[col][r].clone());
        let cinv = c.inverse()?;
        let d = w.len();
        let induced = cinv.mul(&m.mul(&c));
        let q = Matrix::from_fn(n - d, n - d, |r, col| induced[(d + r, d + col)].clone());
        let (roots, _) = q.charpoly().rational_roots();
        let alpha =
            roots
                .first()
                .map(|(a, _)| a.clone())
                .ok_or_else(|| Error::NonSplitSpectrum {
                    factor: q.charpoly().display_in("t"),
                })?;
        let shifted = q.sub(&Matrix::identity(n - d).scale(&alpha));
        let z = shifted
            .kernel()
            .into_iter()
            .next()
            .ok_or_else(|| Error::Invariant("no eigenvector".into()))?;
        let v: Vec<Rat> = (0..n)
            .map(|r| (0..n - d).fold(Rat::zero(), |acc, t| acc + &c[(r, d + t)] * &z[t]))
            .collect();
        flag.push((v, alpha));
    }
    Ok(flag)
}

/// The state of the reconstruction after both corrections.
pub struct Theta {
    t: Transport,
    xc: Correction,
    yc: Correction,
    x_eigen: Vec<Rat>,
    y_eigen: Vec<Rat>,
}

impl Theta {
    pub fn transport(&self) -> &Transport {
        &self.t
    }

    pub fn x_act(&self, a: &MonVec) -> Result<MonVec> {
        Ok(&self.t.act(a, Gen::X)? + &self.xc.apply(&self.t, a)?)
    }

    pub fn y_act(&self, a: &MonVec) -> Result<MonVec> {
        Ok(&self.t.act(a, Gen::Y)? + &self.yc.apply(&self.t, a)?)
    }

    /// `([X, Y] + Id) a`.
    pub fn curvature(&self, a: &MonVec) -> Result<MonVec> {
        let xy = self.x_act(&self.y_act(a)?)?;
        let yx = self.y_act(&self.x_act(a)?)?;
        Ok(&(&xy - &yx) + a)
    }

    /// `j(a)` with `([X, Y] + Id) a = j(a) i`.
    pub fn j_of(&self, a: &MonVec) -> Result<Rat> {
        let d = self.curvature(a)?;
        let i = self.t.data.corner;
        if d.iter().any(|(e, c)| *e != i && !c.is_zero()) {
            return Err(Error::Invariant(format!(
                "curvature {} is not a multiple of i",
                fmt_monvec(&d)
            )));
        }
        Ok(d.coeff(&i))
    }

    /// Checks the curvature on `samples` random combinations of `M₀` monomials near the staircase.
    pub fn check_m0_samples(&self, samples: usize, rng: &mut impl Rng) -> Result<bool> {
        let data = &self.t.data;
        let mut pool: Vec<Exp> = Vec::new();
        for g in &data.sigma_gens {
            for a in 0..3 {
                for b in 0..3 {
                    pool.push(Exp::new(g.k + a, g.l + b));
                }
            }
        }
        for _ in 0..samples {
            let mut v = MonVec::zero();
            for _ in 0..3 {
                let e = pool[rng.gen_range(0..pool.len())];
                v.add_term(e, Rat::from_integer(rng.gen_range(-5i64..=5).into()));
            }
            if !self.curvature(&v)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn extract_cm(&self) -> Result<CMPoint> {
        let t = &self.t;
        let comp = &t.data.complement;
        let n = comp.len();
        if n == 0 {
            return Ok(CMPoint::empty());
        }
        let x = mat_from_images(t, |a| self.x_act(a))?;
        let y = mat_from_images(t, |a| self.y_act(a))?;
        let i = t.project(&mono(t.data.corner));
        let j = comp
            .iter()
            .map(|e| self.j_of(&mono(*e)))
            .collect::<Result<Vec<_>>>()?;
        let p = CMPoint::new(x, y, i, j)?;
        if !p.validate() {
            return Err(Error::Invariant(
                "extracted point fails the rank-one relation".into(),
            ));
        }
        Ok(p)
    }

    pub fn transcript(&self) -> Transcript {
        let patches = |c: &Correction, eig: &[Rat]| {
            c.vectors
                .iter()
                .zip(&c.values)
                .zip(eig)
                .map(|((v, val), e)| Patch {
                    vector: self.t.from_coords(v),
                    eigenvalue: e.clone(),
                    value: val.clone(),
                })
                .collect()
        };
        Transcript {
            exponents: self.t.data.clone(),
            x_patches: patches(&self.xc, &self.x_eigen),
            y_patches: patches(&self.yc, &self.y_eigen),
        }
    }
}

/// `u = (Y − α) a + b` with `b ∈ k[x̄]·i`; returns `(a, b)`.
fn split_along_y(t: &Transport, u: &MonVec, alpha: &Rat, guard: u64) -> Result<(MonVec, MonVec)> {
    let corner = t.data.corner;
    let mut rest = u.clone();
    let (mut a, mut b) = (MonVec::zero(), MonVec::zero());
    let mut steps = 0u64;
    let mut last: Option<Exp> = None;
    while let Some((e, c)) = rest.leading().map(|(e, c)| (*e, c.clone())) {
        steps += 1;
        if steps > guard {
            return Err(Error::StepBound(guard));
        }
        if last.is_some_and(|p| e >= p) {
            return Err(Error::Invariant(
                "leading exponent failed to decrease".into(),
            ));
        }
        last = Some(e);
        if e.l > corner.l {
            let s = Exp::new(e.k, e.l - 1);
            let step = &t.act(&mono(s), Gen::Y)? - &mono(s).scale(alpha);
            rest = &rest - &step.scale(&c);
            a.add_term(s, c);
        } else {
            rest = &rest - &MonVec::term(e, c.clone());
            b.add_term(e, c);
        }
    }
    Ok((a, b))
}

fn in_x_line(t: &Transport, v: &MonVec) -> bool {
    v.keys().all(|e| e.l == t.data.corner.l)
}

fn correct_x(t: &Transport, guard: u64) -> Result<(Correction, Vec<Rat>)> {
    let ybar = mat_from_images(t, |a| t.act(a, Gen::Y))?;
    let flag = invariant_flag(&ybar)?;
    let mut corr = Correction::new(flag.iter().map(|(v, _)| v.clone()).collect())?;
    let mut eig = Vec::new();
    for (vbar, alpha) in &flag {
        let v = t.from_coords(vbar);
        let yv = t.act(&v, Gen::Y)?;
        let m = &yv - &v.scale(alpha);
        let xy = t.act(&yv, Gen::X)?;
        let yx = t.act(&t.act(&v, Gen::X)?, Gen::Y)?;
        let u = &(&(&xy - &yx) + &v) + &corr.apply(t, &m)?;
        let (a, _) = split_along_y(t, &u, alpha, guard)?;
        corr.values.push(a);
        eig.push(alpha.clone());
    }
    Ok((corr, eig))
}

fn correct_y(t: &Transport, xc: &Correction, guard: u64) -> Result<(Correction, Vec<Rat>)> {
    let xn = |a: &MonVec| -> Result<MonVec> { Ok(&t.act(a, Gen::X)? + &xc.apply(t, a)?) };
    let xbar = mat_from_images(t, xn)?;
    let flag = invariant_flag(&xbar)?;
    let mut corr = Correction::new(flag.iter().map(|(v, _)| v.clone()).collect())?;
    let mut eig = Vec::new();
    let corner = t.data.corner;
    for (wbar, beta) in &flag {
        let w = t.from_coords(wbar);
        let xw = xn(&w)?;
        let m = &xw - &w.scale(beta);
        let xy = xn(&t.act(&w, Gen::Y)?)?;
        let yx = t.act(&xw, Gen::Y)?;
        let mut u = &(&(&xy - &yx) + &w) - &corr.apply(t, &m)?;
        if !in_x_line(t, &u) {
            return Err(Error::Invariant(format!(
                "{} is not in k[x̄]·i",
                fmt_monvec(&u)
            )));
        }
        let mut a = MonVec::zero();
        let mut steps = 0u64;
        let mut last: Option<Exp> = None;
        while let Some((e, c)) = u.leading().map(|(e, c)| (*e, c.clone())) {
            if e.k == corner.k {
                break;
            }
            steps += 1;
            if steps > guard {
                return Err(Error::StepBound(guard));
            }
            if last.is_some_and(|p| e >= p) {
                return Err(Error::Invariant(
                    "leading exponent failed to decrease".into(),
                ));
            }
            last = Some(e);
            let s = Exp::new(e.k - 1, e.l);
            let step = &xn(&mono(s))? - &mono(s).scale(beta);
            if !in_x_line(t, &step) {
                return Err(Error::Invariant("X leaves k[x̄]·i".into()));
            }
            u = &u - &step.scale(&c);
            a.add_term(s, -c);
        }
        corr.values.push(a);
        eig.push(beta.clone());
    }
    Ok((corr, eig))
}

#[derive(Clone, Copy, Debug)]
pub struct ThetaOptions {
    pub tie: TieBreak,
    pub guard: u64,
}

impl Default for ThetaOptions {
    fn default() -> Self {
        ThetaOptions {
            tie: TieBreak::MaxL,
            guard: DEFAULT_GUARD,
        }
    }
}

/// Runs the transport and both corrections.
pub fn theta_state(gens: &[WeylElement], opts: ThetaOptions) -> Result<Theta> {
    let gb = groebner_with_guard(gens, opts.guard)?;
    let t = Transport::new(gb, opts.tie, opts.guard)?;
    let (xc, x_eigen) = correct_x(&t, opts.guard)?;
    let (yc, y_eigen) = correct_y(&t, &xc, opts.guard)?;
    Ok(Theta {
        t,
        xc,
        yc,
        x_eigen,
        y_eigen,
    })
}

pub fn theta(gens: &[WeylElement], opts: ThetaOptions) -> Result<ThetaOutput> {
    let state = theta_state(gens, opts)?;
    Ok(ThetaOutput {
        point: state.extract_cm()?,
        transcript: state.transcript(),
    })
}

pub fn fmt_monvec(v: &MonVec) -> String {
    if v.is_zero() {
        return "0".into();
    }
    v.iter()
        .rev()
        .map(|(e, c)| format!("{}*xb^{}*yb^{}", format_rat(c), e.k, e.l))
        .collect::<Vec<_>>()
        .join(" + ")
}
