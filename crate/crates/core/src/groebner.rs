//! Right-ideal Gröbner bases in the Weyl algebra under the y-dominant lexicographic order.

use std::collections::BTreeSet;

use num_traits::One;

use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::weyl::{Exp, WeylElement};

pub const DEFAULT_GUARD: u64 = 1_000_000;

/// `g · x^k y^l`.
pub fn rmul_monomial(g: &WeylElement, e: Exp) -> WeylElement {
    g * &WeylElement::monomial(e.k, e.l, Rat::one())
}

fn monic(g: &WeylElement) -> WeylElement {
    match g.leading_term() {
        Ok((_, c)) => g.scale(&(Rat::one() / c)),
        Err(_) => g.clone(),
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RightIdealGB {
    pub generators: Vec<WeylElement>,
    /// reduced and monic, sorted by leading exponent
    pub basis: Vec<WeylElement>,
    /// minimal generators of the leading-exponent set `Σ`
    pub staircase_gens: Vec<Exp>,
}

impl RightIdealGB {
    pub fn contains_exp(&self, e: Exp) -> bool {
        self.staircase_gens.iter().any(|g| g.divides(&e))
    }

    /// `(min k, min l)` over `Σ`: the corner of the smallest principal monomial ideal containing it.
    pub fn corner(&self) -> Exp {
        let k = self.staircase_gens.iter().map(|e| e.k).min().unwrap_or(0);
        let l = self.staircase_gens.iter().map(|e| e.l).min().unwrap_or(0);
        Exp::new(k, l)
    }

    pub fn complement(&self) -> Result<Vec<Exp>> {
        staircase_complement_in(self.corner(), &self.staircase_gens)
    }

    pub fn is_unit(&self) -> bool {
        self.contains_exp(Exp::new(0, 0))
    }

    pub fn normal_form(&self, a: &WeylElement) -> Result<WeylElement> {
        normal_form_guarded(a, &self.basis, DEFAULT_GUARD)
    }
}

/// Fully reduces `a` modulo right multiples of `basis`.
pub fn normal_form_guarded(
    a: &WeylElement,
    basis: &[WeylElement],
    guard: u64,
) -> Result<WeylElement> {
    let leads: Vec<(Exp, Rat)> = basis
        .iter()
        .map(|g| g.leading_term())
        .collect::<Result<_>>()?;
    let mut rest = a.clone();
    let mut out = WeylElement::zero();
    let mut steps = 0u64;
    while let Ok((e, c)) = rest.leading_term() {
        steps += 1;
        if steps > guard {
            return Err(Error::StepBound(guard));
        }
        match leads.iter().position(|(le, _)| le.divides(&e)) {
            Some(t) => {
                let (le, lc) = &leads[t];
                let shift = Exp::new(e.k - le.k, e.l - le.l);
                let m = rmul_monomial(&basis[t], shift).scale(&(&c / lc));
                rest = &rest - &m;
            }
            None => {
                let lead = WeylElement::monomial(e.k, e.l, c);
                rest = &rest - &lead;
                out = &out + &lead;
            }
        }
    }
    Ok(out)
}

pub fn normal_form(a: &WeylElement, gb: &RightIdealGB) -> Result<WeylElement> {
    gb.normal_form(a)
}

fn s_element(f: &WeylElement, g: &WeylElement) -> Result<WeylElement> {
    let (ef, cf) = f.leading_term()?;
    let (eg, cg) = g.leading_term()?;
    let l = ef.lcm(&eg);
    let a = rmul_monomial(f, Exp::new(l.k - ef.k, l.l - ef.l)).scale(&(Rat::one() / cf));
    let b = rmul_monomial(g, Exp::new(l.k - eg.k, l.l - eg.l)).scale(&(Rat::one() / cg));
    Ok(&a - &b)
}

pub fn groebner(gens: &[WeylElement]) -> Result<RightIdealGB> {
    groebner_with_guard(gens, DEFAULT_GUARD)
}

/// Buchberger's algorithm with the normal pair-selection strategy (smallest exponent lcm first).
pub fn groebner_with_guard(gens: &[WeylElement], guard: u64) -> Result<RightIdealGB> {
    let mut basis: Vec<WeylElement> = gens.iter().filter(|g| !g.is_zero()).map(monic).collect();
    if basis.is_empty() {
        return Err(Error::ZeroElement);
    }
    let mut pairs: BTreeSet<(Exp, usize, usize)> = BTreeSet::new();
    let lead = |g: &WeylElement| g.leading_exp().expect("nonzero");
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((lead(&basis[i]).lcm(&lead(&basis[j])), i, j));
        }
    }
    let mut steps = 0u64;
    while let Some(p) = pairs.pop_first() {
        steps += 1;
        if steps > guard {
            return Err(Error::StepBound(guard));
        }
        let (_, i, j) = p;
        let s = s_element(&basis[i], &basis[j])?;
        let r = normal_form_guarded(&s, &basis, guard)?;
        if !r.is_zero() {
            let r = monic(&r);
            let lr = lead(&r);
            let t = basis.len();
            for (u, g) in basis.iter().enumerate() {
                pairs.insert((lead(g).lcm(&lr), u, t));
            }
            basis.push(r);
        }
    }
    let basis = reduce_basis(basis, guard)?;
    let staircase_gens = basis.iter().map(lead).collect();
    Ok(RightIdealGB {
        generators: gens.to_vec(),
        basis,
        staircase_gens,
    })
}

fn reduce_basis(mut basis: Vec<WeylElement>, guard: u64) -> Result<Vec<WeylElement>> {
    basis.sort_by_key(|g| g.leading_exp());
    let mut minimal: Vec<WeylElement> = Vec::new();
    for g in basis {
        let e = g.leading_exp().expect("nonzero");
        if !minimal
            .iter()
            .any(|h| h.leading_exp().expect("nonzero").divides(&e))
        {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for t in 0..minimal.len() {
        let g = &minimal[t];
        let (e, c) = g.leading_term()?;
        let tail = g - &WeylElement::monomial(e.k, e.l, c);
        let others: Vec<WeylElement> = minimal
            .iter()
            .enumerate()
            .filter(|(u, _)| *u != t)
            .map(|(_, h)| h.clone())
            .collect();
        let tail = normal_form_guarded(&tail, &others, guard)?;
        out.push(&WeylElement::monomial(e.k, e.l, Rat::one()) + &tail);
    }
    Ok(out)
}

/// Exponents in `corner + ℕ²` that are not in the monomial ideal generated by `gens`.
pub fn staircase_complement_in(corner: Exp, gens: &[Exp]) -> Result<Vec<Exp>> {
    if gens.is_empty() {
        return Err(Error::InfiniteComplement("empty exponent set".into()));
    }
    let k_end = gens
        .iter()
        .filter(|g| g.l <= corner.l)
        .map(|g| g.k.max(corner.k))
        .min();
    let l_end = gens
        .iter()
        .filter(|g| g.k <= corner.k)
        .map(|g| g.l.max(corner.l))
        .min();
    let (Some(k_end), Some(l_end)) = (k_end, l_end) else {
        return Err(Error::InfiniteComplement(format!(
            "no exponent bounds the row or column through ({}, {})",
            corner.k, corner.l
        )));
    };
    let mut out = Vec::new();
    for l in corner.l..l_end {
        for k in corner.k..k_end {
            let e = Exp::new(k, l);
            if !gens.iter().any(|g| g.divides(&e)) {
                out.push(e);
            }
        }
    }
    out.sort();
    Ok(out)
}
