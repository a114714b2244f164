//! Two-term envelopes `K⁰ → K¹` of a Calogero-Moser point, in A∞ form and DG form,
//! truncated to a finite slice of `K⁰`, plus the axiom checker.
//!
//! `K⁰` has basis `e(k,m) = Y^m X^k i` (stored as `Exp { k, l: m }`); `K¹ = k^n`.

use std::fmt;

use num_traits::Zero;

use crate::cm::{CMPoint, LambdaTable};
use crate::error::{Error, Result};
use crate::free::{FreeElement, Letter, Word};
use crate::lincomb::LinComb;
use crate::matrix::{dot, Matrix};
use crate::rat::{format_rat, Rat};
use crate::weyl::{Exp, WeylElement};

/// Vector in the truncated `K⁰`.
pub type K0 = LinComb<Exp>;

pub fn basis(k: usize, m: usize) -> K0 {
    K0::term(Exp::new(k, m), Rat::from_integer(1.into()))
}

/// Structure maps of a two-term A∞-module over the Weyl algebra.
pub trait AinfStructure {
    fn point(&self) -> &CMPoint;
    fn trunc(&self) -> usize;
    fn m1(&self, u: &K0) -> Vec<Rat>;
    fn m2_0(&self, u: &K0, a: &WeylElement) -> Result<K0>;
    fn m2_1(&self, v: &[Rat], a: &WeylElement) -> Vec<Rat>;
    fn m3(&self, v: &[Rat], a: &WeylElement, b: &WeylElement) -> Result<K0>;
}

fn overflow(d: usize, trunc: usize) -> Error {
    Error::TruncationOverflow(format!("degree {d} exceeds truncation {trunc}"))
}

/// Shared data: the point, truncation, λ-table and the images `Y^m X^k i`.
#[derive(Clone, Debug)]
struct Core {
    point: CMPoint,
    trunc: usize,
    lambda: LambdaTable,
    /// `words[k][m] = Y^m X^k i` for `k + m ≤ trunc`
    words: Vec<Vec<Vec<Rat>>>,
    /// columns `e(k,m)` with `k + m < n`, used for preimages
    pre_basis: Vec<Exp>,
}

impl Core {
    fn new(point: &CMPoint, trunc: usize) -> Self {
        let mut words = Vec::new();
        for k in 0..=trunc {
            let mut row = Vec::new();
            let mut v = point.word_vector(0, k);
            for _ in 0..=trunc - k {
                row.push(v.clone());
                v = point.y.apply(&v);
            }
            words.push(row);
        }
        let mut pre_basis: Vec<Exp> = (0..point.n)
            .flat_map(|d| (0..=d).map(move |k| Exp::new(k, d - k)))
            .filter(|e| e.degree() <= trunc)
            .collect();
        pre_basis.sort_by_key(|e| (e.degree(), *e));
        Core {
            point: point.clone(),
            trunc,
            lambda: point.lambda_table(trunc),
            words,
            pre_basis,
        }
    }

    fn check_deg(&self, d: usize) -> Result<()> {
        if d > self.trunc {
            return Err(overflow(d, self.trunc));
        }
        Ok(())
    }

    fn m1(&self, u: &K0) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.point.n];
        for (e, c) in u.iter() {
            for (o, w) in out.iter_mut().zip(&self.words[e.k][e.l]) {
                *o += c * w;
            }
        }
        out
    }

    /// `X e(k,m) = e(k+1,m) − m e(k,m−1) + Σ_{l<m} λ_{lk} e(0,m−l−1)`.
    fn x_act(&self, u: &K0) -> Result<K0> {
        let mut out = K0::zero();
        for (e, c) in u.iter() {
            self.check_deg(e.degree() + 1)?;
            out.add_term(Exp::new(e.k + 1, e.l), c.clone());
            if e.l > 0 {
                out.add_term(Exp::new(e.k, e.l - 1), -c * Rat::from_integer(e.l.into()));
            }
            for l in 0..e.l {
                let lam = self.lambda.get(l, e.k);
                if !lam.is_zero() {
                    out.add_term(Exp::new(0, e.l - l - 1), c * lam);
                }
            }
        }
        Ok(out)
    }

    fn y_act(&self, u: &K0) -> Result<K0> {
        let mut out = K0::zero();
        for (e, c) in u.iter() {
            self.check_deg(e.degree() + 1)?;
            out.add_term(Exp::new(e.k, e.l + 1), c.clone());
        }
        Ok(out)
    }

    fn letter(&self, u: &K0, l: Letter) -> Result<K0> {
        match l {
            Letter::X => self.x_act(u),
            Letter::Y => self.y_act(u),
        }
    }

    fn word_act(&self, u: &K0, w: &[Letter]) -> Result<K0> {
        let mut cur = u.clone();
        for &l in w {
            cur = self.letter(&cur, l)?;
        }
        Ok(cur)
    }

    /// `ϱ(x^k y^m) = Y^m X^k`.
    fn m2_0(&self, u: &K0, a: &WeylElement) -> Result<K0> {
        let mut acc = K0::zero();
        for (e, c) in a.iter() {
            let mut cur = u.clone();
            for _ in 0..e.k {
                cur = self.x_act(&cur)?;
            }
            for _ in 0..e.l {
                cur = self.y_act(&cur)?;
            }
            acc.add_scaled(&cur, c);
        }
        Ok(acc)
    }

    fn m2_1(&self, v: &[Rat], a: &WeylElement) -> Vec<Rat> {
        let p = &self.point;
        let mut acc = vec![Rat::zero(); p.n];
        for (e, c) in a.iter() {
            let mut cur = v.to_vec();
            for _ in 0..e.k {
                cur = p.x.apply(&cur);
            }
            for _ in 0..e.l {
                cur = p.y.apply(&cur);
            }
            for (o, w) in acc.iter_mut().zip(cur) {
                *o += c * w;
            }
        }
        acc
    }

    fn letter_k1(&self, v: &[Rat], l: Letter) -> Vec<Rat> {
        match l {
            Letter::X => self.point.x.apply(v),
            Letter::Y => self.point.y.apply(v),
        }
    }

    /// A vector `u` of degree `< n` with `m1(u) = v`: the solution with free coordinates zero.
    fn preimage(&self, v: &[Rat]) -> Result<K0> {
        let n = self.point.n;
        if n == 0 {
            return Ok(K0::zero());
        }
        let cols = &self.pre_basis;
        let m = Matrix::from_fn(n, cols.len(), |r, c| {
            self.words[cols[c].k][cols[c].l][r].clone()
        });
        let sol = m.solve(v).ok_or_else(|| {
            Error::InvalidPoint("differential is not surjective on the truncation".into())
        })?;
        Ok(cols.iter().zip(sol).map(|(e, c)| (*e, c)).collect())
    }
}

/// A∞-envelope built from the point via the section `x^k y^m ↦ Y^m X^k`.
#[derive(Clone, Debug)]
pub struct Envelope {
    core: Core,
}

impl Envelope {
    pub fn lambda(&self) -> &LambdaTable {
        &self.core.lambda
    }

    /// The same envelope with `λ_{lk}` replaced by `λ_{lk} + delta` in the `X` structure constants.
    pub fn with_perturbed_lambda(&self, l: usize, k: usize, delta: &Rat) -> Envelope {
        let mut out = self.clone();
        out.core.lambda.values[l][k] += delta;
        out
    }

    pub fn x_act(&self, u: &K0) -> Result<K0> {
        self.core.x_act(u)
    }

    pub fn y_act(&self, u: &K0) -> Result<K0> {
        self.core.y_act(u)
    }

    pub fn preimage(&self, v: &[Rat]) -> Result<K0> {
        self.core.preimage(v)
    }

    /// `j(u) = j̄ m1(u)`.
    pub fn j(&self, u: &K0) -> Rat {
        dot(&self.core.point.j, &self.core.m1(u))
    }

    /// `{u : m1(u) = 0}` restricted to the span of `e(k,m)` with `k + m = d`, `≤ d`: dimension.
    pub fn kernel_dim_up_to(&self, d: usize) -> usize {
        let cols: Vec<Exp> = (0..=d)
            .flat_map(|t| (0..=t).map(move |k| Exp::new(k, t - k)))
            .collect();
        let n = self.core.point.n;
        if n == 0 {
            return cols.len();
        }
        let m = Matrix::from_fn(n, cols.len(), |r, c| {
            self.core.words[cols[c].k][cols[c].l][r].clone()
        });
        cols.len() - m.rank()
    }
}

pub fn build_envelope(p: &CMPoint, trunc: usize) -> Result<Envelope> {
    if !p.validate() {
        return Err(Error::InvalidPoint("rank-one relation fails".into()));
    }
    if trunc < 2 {
        return Err(Error::TruncationOverflow(
            "truncation must be at least 2".into(),
        ));
    }
    if p.n > 0 && trunc + 1 < p.n {
        return Err(Error::TruncationOverflow(format!(
            "truncation {trunc} too small for n = {}",
            p.n
        )));
    }
    Ok(Envelope {
        core: Core::new(p, trunc),
    })
}

impl AinfStructure for Envelope {
    fn point(&self) -> &CMPoint {
        &self.core.point
    }
    fn trunc(&self) -> usize {
        self.core.trunc
    }
    fn m1(&self, u: &K0) -> Vec<Rat> {
        self.core.m1(u)
    }
    fn m2_0(&self, u: &K0, a: &WeylElement) -> Result<K0> {
        self.core.m2_0(u, a)
    }
    fn m2_1(&self, v: &[Rat], a: &WeylElement) -> Vec<Rat> {
        self.core.m2_1(v, a)
    }
    /// `m2(m2(u, a), b) − m2(u, ab)` for a preimage `u` of `v`.
    fn m3(&self, v: &[Rat], a: &WeylElement, b: &WeylElement) -> Result<K0> {
        let u = self.core.preimage(v)?;
        let lhs = self.core.m2_0(&self.core.m2_0(&u, a)?, b)?;
        Ok(&lhs - &self.core.m2_0(&u, &(a * b))?)
    }
}

/// DG-module over `I ⊕ R`: `x`, `y` act by `(X, X̄)`, `(Y, Ȳ)`, and `(u, v).w = (j̄(v) i, 0)`.
#[derive(Clone, Debug)]
pub struct DgEnvelope {
    core: Core,
}

pub fn build_dg_envelope(p: &CMPoint, trunc: usize) -> Result<DgEnvelope> {
    Ok(DgEnvelope {
        core: build_envelope(p, trunc)?.core,
    })
}

impl DgEnvelope {
    pub fn point(&self) -> &CMPoint {
        &self.core.point
    }

    /// `v.w ∈ K⁰` for `v ∈ K¹`.
    pub fn w_on_k1(&self, v: &[Rat]) -> K0 {
        basis(0, 0).scale(&dot(&self.core.point.j, v))
    }

    /// `u.w` for `u ∈ K⁰`, always zero by degree.
    pub fn w_on_k0(&self, _u: &K0) -> K0 {
        K0::zero()
    }

    pub fn x_act(&self, u: &K0) -> Result<K0> {
        self.core.x_act(u)
    }

    pub fn y_act(&self, u: &K0) -> Result<K0> {
        self.core.y_act(u)
    }

    pub fn m1(&self, u: &K0) -> Vec<Rat> {
        self.core.m1(u)
    }

    /// Leibniz-rule consequences: `XY − YX + Id = i j` on `K⁰` (checked up to degree `trunc − 2`),
    /// `X̄Ȳ − ȲX̄ + Id = ī j̄`, `d` commuting with `x`, `y`, and `d(v.w) + v.dw = 0`.
    pub fn leibniz_report(&self) -> Report {
        let mut rep = Report::default();
        let core = &self.core;
        let p = &core.point;
        let n = p.n;
        let mut comm_k0 = Check::new("dg_commutator_k0");
        let mut d_x = Check::new("dg_differential_commutes_with_x");
        let mut d_y = Check::new("dg_differential_commutes_with_y");
        for e in exps_up_to(core.trunc.saturating_sub(2)) {
            let u = basis(e.k, e.l);
            let res = (|| -> Result<K0> {
                let xy = core.x_act(&core.y_act(&u)?)?;
                let yx = core.y_act(&core.x_act(&u)?)?;
                let j = dot(&p.j, &core.m1(&u));
                Ok(&(&(&xy - &yx) + &u) - &basis(0, 0).scale(&j))
            })();
            comm_k0.record_k0(&format!("u={}", fmt_exp(e)), res);
            let mx = core
                .x_act(&u)
                .map(|xu| sub_vec(&core.m1(&xu), &p.x.apply(&core.m1(&u))));
            d_x.record_vec(&format!("u={}", fmt_exp(e)), mx);
            let my = core
                .y_act(&u)
                .map(|yu| sub_vec(&core.m1(&yu), &p.y.apply(&core.m1(&u))));
            d_y.record_vec(&format!("u={}", fmt_exp(e)), my);
        }
        let mut comm_k1 = Check::new("dg_commutator_k1");
        let mut leib = Check::new("dg_leibniz_on_w");
        for r in 0..n {
            let v = unit(n, r);
            let xy = p.x.apply(&p.y.apply(&v));
            let yx = p.y.apply(&p.x.apply(&v));
            let jv = dot(&p.j, &v);
            let lhs: Vec<Rat> = (0..n)
                .map(|t| &xy[t] - &yx[t] + &v[t] - &p.i[t] * &jv)
                .collect();
            comm_k1.record_vec(&format!("v=b{r}"), Ok(lhs));
            // d(v.w) + v.(xy − yx − 1), with words acting left to right
            let dvw = core.m1(&self.w_on_k1(&v));
            let v_xy = core.letter_k1(&core.letter_k1(&v, Letter::X), Letter::Y);
            let v_yx = core.letter_k1(&core.letter_k1(&v, Letter::Y), Letter::X);
            let total: Vec<Rat> = (0..n)
                .map(|t| &dvw[t] + &v_xy[t] - &v_yx[t] - &v[t])
                .collect();
            leib.record_vec(&format!("v=b{r}"), Ok(total));
        }
        let mut iw = Check::new("dg_w_on_i_bar");
        let expect = basis(0, 0).scale(&Rat::from_integer(n.into()));
        iw.record_k0("v=i_bar", Ok(&self.w_on_k1(&p.i) - &expect));
        let mut uw = Check::new("dg_w_on_k0");
        for e in exps_up_to(core.trunc) {
            uw.record_k0(
                &format!("u={}", fmt_exp(e)),
                Ok(self.w_on_k0(&basis(e.k, e.l))),
            );
        }
        for c in [comm_k0, comm_k1, d_x, d_y, leib, iw, uw] {
            rep.entries.push(c.finish());
        }
        rep
    }
}

/// Rewrites a word to normal order using `yx = xy − 1 − w`; returns the normal-ordered
/// part and the list of `(c, p, q)` with `word = normal − Σ c p w q`.
pub fn rewrite_with_w(word: &[Letter]) -> (FreeElement, Vec<(Rat, Word, Word)>) {
    let one = Rat::from_integer(1.into());
    let mut normal = LinComb::<Word>::zero();
    let mut w_terms = Vec::new();
    let mut stack: Vec<(Word, Rat)> = vec![(word.to_vec(), one)];
    while let Some((w, c)) = stack.pop() {
        match w.windows(2).position(|p| p == [Letter::Y, Letter::X]) {
            None => normal.add_term(w, c),
            Some(t) => {
                let p = w[..t].to_vec();
                let q = w[t + 2..].to_vec();
                let mut swapped = p.clone();
                swapped.extend([Letter::X, Letter::Y]);
                swapped.extend(q.iter().copied());
                let mut short = p.clone();
                short.extend(q.iter().copied());
                stack.push((swapped, c.clone()));
                stack.push((short, -c.clone()));
                w_terms.push((c, p, q));
            }
        }
    }
    let mut out = FreeElement::zero();
    for (w, c) in normal.iter() {
        out = out.add(&FreeElement::word(w.clone(), c.clone()));
    }
    (out, w_terms)
}

/// The A∞-module obtained from the DG-envelope through the section `ϱ(x^k y^m) = x^k y^m`:
/// `m3(v, a, b) = v.ϱ₂(a, b)` with `ϱ₂(a, b) = d⁻¹(ϱ(ab) − ϱ(a)ϱ(b))`.
#[derive(Clone, Debug)]
pub struct RestrictedDg {
    dg: DgEnvelope,
}

pub fn restrict_dg_to_ainf(dg: &DgEnvelope) -> RestrictedDg {
    RestrictedDg { dg: dg.clone() }
}

fn monomial_word(e: &Exp) -> Word {
    let mut w = vec![Letter::X; e.k];
    w.extend(std::iter::repeat_n(Letter::Y, e.l));
    w
}

impl AinfStructure for RestrictedDg {
    fn point(&self) -> &CMPoint {
        &self.dg.core.point
    }
    fn trunc(&self) -> usize {
        self.dg.core.trunc
    }
    fn m1(&self, u: &K0) -> Vec<Rat> {
        self.dg.core.m1(u)
    }
    fn m2_0(&self, u: &K0, a: &WeylElement) -> Result<K0> {
        let mut acc = K0::zero();
        for (e, c) in a.iter() {
            acc.add_scaled(&self.dg.core.word_act(u, &monomial_word(e))?, c);
        }
        Ok(acc)
    }
    fn m2_1(&self, v: &[Rat], a: &WeylElement) -> Vec<Rat> {
        let core = &self.dg.core;
        let mut acc = vec![Rat::zero(); core.point.n];
        for (e, c) in a.iter() {
            let mut cur = v.to_vec();
            for l in monomial_word(e) {
                cur = core.letter_k1(&cur, l);
            }
            for (o, w) in acc.iter_mut().zip(cur) {
                *o += c * w;
            }
        }
        acc
    }
    fn m3(&self, v: &[Rat], a: &WeylElement, b: &WeylElement) -> Result<K0> {
        let core = &self.dg.core;
        let mut acc = K0::zero();
        for (ea, ca) in a.iter() {
            for (eb, cb) in b.iter() {
                let mut word = monomial_word(ea);
                word.extend(monomial_word(eb));
                // ϱ(a)ϱ(b) = ϱ(ab) − Σ c p w q, so ϱ₂(a, b) = Σ c p w q
                let (_, w_terms) = rewrite_with_w(&word);
                for (c, p, q) in w_terms {
                    let mut vp = v.to_vec();
                    for &l in &p {
                        vp = core.letter_k1(&vp, l);
                    }
                    let s = dot(&core.point.j, &vp);
                    if s.is_zero() {
                        continue;
                    }
                    let iq = core.word_act(&basis(0, 0), &q)?;
                    acc.add_scaled(&iq, &(&(&c * &s) * &(ca * cb)));
                }
            }
        }
        Ok(acc)
    }
}

/// One line of an axiom report.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AxiomResult {
    pub axiom: String,
    pub location: String,
    pub pass: bool,
    pub defect: Option<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Report {
    pub entries: Vec<AxiomResult>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn first_failure(&self) -> Option<&AxiomResult> {
        self.entries.iter().find(|e| !e.pass)
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomResult> {
        self.entries.iter().find(|e| e.axiom == axiom)
    }
}

/// Accumulates cases for one axiom, remembering the first failure.
struct Check {
    axiom: String,
    cases: usize,
    failure: Option<(String, String)>,
}

impl Check {
    fn new(axiom: &str) -> Self {
        Check {
            axiom: axiom.into(),
            cases: 0,
            failure: None,
        }
    }

    fn fail(&mut self, loc: &str, defect: String) {
        if self.failure.is_none() {
            self.failure = Some((loc.to_string(), defect));
        }
    }

    fn record_k0(&mut self, loc: &str, r: Result<K0>) {
        self.cases += 1;
        match r {
            Ok(d) if d.is_zero() => {}
            Ok(d) => self.fail(loc, fmt_k0(&d)),
            Err(e) => self.fail(loc, e.to_string()),
        }
    }

    fn record_vec(&mut self, loc: &str, r: Result<Vec<Rat>>) {
        self.cases += 1;
        match r {
            Ok(d) if d.iter().all(Zero::is_zero) => {}
            Ok(d) => self.fail(loc, fmt_vec(&d)),
            Err(e) => self.fail(loc, e.to_string()),
        }
    }

    fn finish(self) -> AxiomResult {
        match self.failure {
            None => AxiomResult {
                axiom: self.axiom,
                location: format!("all {} cases", self.cases),
                pass: true,
                defect: None,
            },
            Some((loc, d)) => AxiomResult {
                axiom: self.axiom,
                location: loc,
                pass: false,
                defect: Some(d),
            },
        }
    }
}

pub fn fmt_k0(u: &K0) -> String {
    if u.is_zero() {
        return "0".into();
    }
    u.iter()
        .map(|(e, c)| format!("{}*{}", format_rat(c), fmt_exp(*e)))
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn fmt_vec(v: &[Rat]) -> String {
    format!(
        "[{}]",
        v.iter().map(format_rat).collect::<Vec<_>>().join(", ")
    )
}

fn fmt_exp(e: Exp) -> String {
    format!("e({},{})", e.k, e.l)
}

fn fmt_mono(e: Exp) -> String {
    WeylElement::monomial(e.k, e.l, Rat::from_integer(1.into())).to_string()
}

fn exps_up_to(d: usize) -> Vec<Exp> {
    (0..=d)
        .flat_map(|t| (0..=t).map(move |k| Exp::new(k, t - k)))
        .collect()
}

fn unit(n: usize, r: usize) -> Vec<Rat> {
    (0..n)
        .map(|t| Rat::from_integer(if t == r { 1 } else { 0 }.into()))
        .collect()
}

fn sub_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn mono(e: Exp) -> WeylElement {
    WeylElement::monomial(e.k, e.l, Rat::from_integer(1.into()))
}

/// Checks the homotopy-module relations and the envelope axioms on all basis vectors and
/// monomials within the degree budget.
pub fn check_ainf_axioms<S: AinfStructure>(s: &S, budget: usize) -> Result<Report> {
    let p = s.point().clone();
    let n = p.n;
    let trunc = s.trunc();
    if budget > trunc {
        return Err(Error::TruncationOverflow(format!(
            "budget {budget} exceeds truncation {trunc}"
        )));
    }
    let room = trunc - budget;
    if n > 0 && n - 1 > room {
        return Err(Error::TruncationOverflow(format!(
            "preimages need degree {} but only {room} is left after budget {budget}",
            n - 1
        )));
    }
    let vecs = exps_up_to(room);
    let monos = exps_up_to(budget);
    let pairs: Vec<(Exp, Exp)> = monos
        .iter()
        .flat_map(|a| monos.iter().map(move |b| (*a, *b)))
        .filter(|(a, b)| a.degree() + b.degree() <= budget)
        .collect();
    let k1_basis: Vec<Vec<Rat>> = (0..n).map(|r| unit(n, r)).collect();
    let one = WeylElement::one();

    let mut rep = Report::default();
    let mut c11 = Check::new("differential_squares_to_zero");
    for e in &vecs {
        // m1 lands in K¹ and m1 vanishes on K¹ (top degree), so m1∘m1 = 0 holds on K⁰ by degree
        let _ = s.m1(&basis(e.k, e.l));
        c11.record_vec(&format!("u={}", fmt_exp(*e)), Ok(vec![]));
    }
    rep.entries.push(c11.finish());

    let mut c12 = Check::new("m1_intertwines_m2");
    for e in &vecs {
        let u = basis(e.k, e.l);
        for a in &monos {
            let am = mono(*a);
            let r = s
                .m2_0(&u, &am)
                .map(|x| sub_vec(&s.m1(&x), &s.m2_1(&s.m1(&u), &am)));
            c12.record_vec(&format!("u={} a={}", fmt_exp(*e), fmt_mono(*a)), r);
        }
    }
    rep.entries.push(c12.finish());

    let mut c13 = Check::new("homotopy_associativity_k0");
    for e in &vecs {
        let u = basis(e.k, e.l);
        for (a, b) in &pairs {
            let (am, bm) = (mono(*a), mono(*b));
            let r = (|| -> Result<K0> {
                let lhs = &s.m2_0(&s.m2_0(&u, &am)?, &bm)? - &s.m2_0(&u, &(&am * &bm))?;
                Ok(&lhs - &s.m3(&s.m1(&u), &am, &bm)?)
            })();
            c13.record_k0(
                &format!("u={} a={} b={}", fmt_exp(*e), fmt_mono(*a), fmt_mono(*b)),
                r,
            );
        }
    }
    rep.entries.push(c13.finish());

    let mut c131 = Check::new("homotopy_associativity_k1");
    for (r_idx, v) in k1_basis.iter().enumerate() {
        for (a, b) in &pairs {
            let (am, bm) = (mono(*a), mono(*b));
            let r = s.m3(v, &am, &bm).map(|m3| {
                let lhs = sub_vec(&s.m2_1(&s.m2_1(v, &am), &bm), &s.m2_1(v, &(&am * &bm)));
                sub_vec(&lhs, &s.m1(&m3))
            });
            c131.record_vec(
                &format!("v=b{r_idx} a={} b={}", fmt_mono(*a), fmt_mono(*b)),
                r,
            );
        }
    }
    rep.entries.push(c131.finish());

    let mut c110 = Check::new("quartic_compatibility");
    for (r_idx, v) in k1_basis.iter().enumerate() {
        for a in &monos {
            for b in &monos {
                for c in &monos {
                    if a.degree() + b.degree() + c.degree() > budget {
                        continue;
                    }
                    let (am, bm, cm) = (mono(*a), mono(*b), mono(*c));
                    let r = (|| -> Result<K0> {
                        let t1 = s.m3(v, &(&am * &bm), &cm)?;
                        let t2 = s.m3(v, &am, &(&bm * &cm))?;
                        let t3 = s.m3(&s.m2_1(v, &am), &bm, &cm)?;
                        let t4 = s.m2_0(&s.m3(v, &am, &bm)?, &cm)?;
                        Ok(&(&(&t2 - &t1) + &t3) - &t4)
                    })();
                    c110.record_k0(
                        &format!(
                            "v=b{r_idx} a={} b={} c={}",
                            fmt_mono(*a),
                            fmt_mono(*b),
                            fmt_mono(*c)
                        ),
                        r,
                    );
                }
            }
        }
    }
    rep.entries.push(c110.finish());

    let mut unital = Check::new("unitality");
    for e in &vecs {
        let u = basis(e.k, e.l);
        unital.record_k0(
            &format!("m2(u,1) u={}", fmt_exp(*e)),
            s.m2_0(&u, &one).map(|x| &x - &u),
        );
    }
    for (r_idx, v) in k1_basis.iter().enumerate() {
        unital.record_vec(
            &format!("m2(v,1) v=b{r_idx}"),
            Ok(sub_vec(&s.m2_1(v, &one), v)),
        );
        for a in &monos {
            let am = mono(*a);
            unital.record_k0(
                &format!("m3(v,1,a) v=b{r_idx} a={}", fmt_mono(*a)),
                s.m3(v, &one, &am),
            );
            unital.record_k0(
                &format!("m3(v,a,1) v=b{r_idx} a={}", fmt_mono(*a)),
                s.m3(v, &am, &one),
            );
        }
    }
    rep.entries.push(unital.finish());

    let mut c22 = Check::new("cyclic_vector_isomorphism");
    for e in exps_up_to(trunc) {
        let r = s
            .m2_0(&basis(0, 0), &mono(e))
            .map(|x| &x - &basis(e.k, e.l));
        c22.record_k0(&format!("a={}", fmt_mono(e)), r);
    }
    rep.entries.push(c22.finish());

    let mut c23 = Check::new("m3_vanishes_with_x_first");
    let mut c24 = Check::new("m3_vanishes_with_y_last");
    for (r_idx, v) in k1_basis.iter().enumerate() {
        for a in exps_up_to(budget.saturating_sub(1)) {
            let am = mono(a);
            c23.record_k0(
                &format!("v=b{r_idx} a={}", fmt_mono(a)),
                s.m3(v, &WeylElement::x(), &am),
            );
            c24.record_k0(
                &format!("v=b{r_idx} a={}", fmt_mono(a)),
                s.m3(v, &am, &WeylElement::y()),
            );
        }
    }
    rep.entries.push(c23.finish());
    rep.entries.push(c24.finish());

    let mut c25 = Check::new("m3_yx_is_jbar_times_i");
    for (r_idx, v) in k1_basis.iter().enumerate() {
        let r = s
            .m3(v, &WeylElement::y(), &WeylElement::x())
            .map(|m| &m - &basis(0, 0).scale(&dot(&p.j, v)));
        c25.record_k0(&format!("v=b{r_idx}"), r);
    }
    rep.entries.push(c25.finish());
    Ok(rep)
}

/// Compares two A∞-structures on the same truncated complex map by map.
pub fn structure_maps_equal<S: AinfStructure, T: AinfStructure>(
    s: &S,
    t: &T,
    budget: usize,
) -> Result<Report> {
    let n = s.point().n;
    let trunc = s.trunc().min(t.trunc());
    if budget > trunc {
        return Err(Error::TruncationOverflow(format!(
            "budget {budget} exceeds truncation {trunc}"
        )));
    }
    let room = trunc - budget;
    if n > 0 && n - 1 > room {
        return Err(Error::TruncationOverflow(format!(
            "preimages need degree {} but only {room} is left after budget {budget}",
            n - 1
        )));
    }
    let mut rep = Report::default();
    let mut c1 = Check::new("equal_m1");
    let mut c20 = Check::new("equal_m2_k0");
    for e in exps_up_to(trunc) {
        let u = basis(e.k, e.l);
        c1.record_vec(
            &format!("u={}", fmt_exp(e)),
            Ok(sub_vec(&s.m1(&u), &t.m1(&u))),
        );
    }
    for e in exps_up_to(room) {
        let u = basis(e.k, e.l);
        for a in exps_up_to(budget) {
            let am = mono(a);
            let r = (|| -> Result<K0> { Ok(&s.m2_0(&u, &am)? - &t.m2_0(&u, &am)?) })();
            c20.record_k0(&format!("u={} a={}", fmt_exp(e), fmt_mono(a)), r);
        }
    }
    let mut c21 = Check::new("equal_m2_k1");
    let mut c3 = Check::new("equal_m3");
    let monos = exps_up_to(budget);
    for r_idx in 0..n {
        let v = unit(n, r_idx);
        for a in &monos {
            let am = mono(*a);
            c21.record_vec(
                &format!("v=b{r_idx} a={}", fmt_mono(*a)),
                Ok(sub_vec(&s.m2_1(&v, &am), &t.m2_1(&v, &am))),
            );
            for b in &monos {
                if a.degree() + b.degree() > budget {
                    continue;
                }
                let bm = mono(*b);
                let r = (|| -> Result<K0> { Ok(&s.m3(&v, &am, &bm)? - &t.m3(&v, &am, &bm)?) })();
                c3.record_k0(
                    &format!("v=b{r_idx} a={} b={}", fmt_mono(*a), fmt_mono(*b)),
                    r,
                );
            }
        }
    }
    for c in [c1, c20, c21, c3] {
        rep.entries.push(c.finish());
    }
    Ok(rep)
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(
                f,
                "{} {} at {}{}",
                if e.pass { "PASS" } else { "FAIL" },
                e.axiom,
                e.location,
                e.defect
                    .as_ref()
                    .map(|d| format!(": {d}"))
                    .unwrap_or_default()
            )?;
        }
        Ok(())
    }
}
