use std::collections::HashMap;

use super::plus::{Basis, PlusElement, SymCtx};
use crate::error::Result;
use crate::qscalars::{c, C64, I, ONE, ZERO};

/// Generators of the dual. `QNu(t2)` is `q^{t nu}` with `t = t2 / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DualLetter {
    /// the counit `1*`
    Unit,
    Nu,
    /// `nu - (i alpha / gamma) 1*`
    NuShift,
    Beta,
    QNu(i32),
}

/// Linear combination of words in dual letters; a word denotes the dual
/// product of its letters.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DualElement {
    pub terms: Vec<(C64, Vec<DualLetter>)>,
}

impl DualElement {
    pub fn word(letters: Vec<DualLetter>) -> Self {
        Self {
            terms: vec![(ONE, letters)],
        }
    }

    pub fn letter(l: DualLetter) -> Self {
        Self::word(vec![l])
    }

    /// `e*_km = (nu - i alpha/gamma)^m q^{-k nu / 2} beta^k`.
    pub fn dual_basis(k: u32, m: u32) -> Self {
        let mut w = vec![DualLetter::NuShift; m as usize];
        w.push(DualLetter::QNu(-(k as i32)));
        w.extend(std::iter::repeat_n(DualLetter::Beta, k as usize));
        Self::word(w)
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            terms: self.terms.iter().map(|(v, w)| (v * s, w.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self { terms }
    }

    /// Dual product (concatenation of words).
    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::new();
        for (a, wa) in &self.terms {
            for (b, wb) in &other.terms {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                terms.push((a * b, w));
            }
        }
        Self { terms }
    }
}

/// Evaluates dual words on `L+` through `(f g)(x) = (f (x) g)(D x)`, with
/// memoized coproducts.
pub struct DualEval {
    ctx: SymCtx,
    coproducts: HashMap<Basis, Vec<(Basis, Basis, C64)>>,
    values: HashMap<(Vec<DualLetter>, Basis), C64>,
}

impl DualEval {
    pub fn new(ctx: SymCtx) -> Self {
        Self {
            ctx,
            coproducts: HashMap::new(),
            values: HashMap::new(),
        }
    }

    pub fn ctx(&self) -> &SymCtx {
        &self.ctx
    }

    /// Value of a single letter on a basis element.
    pub fn base_value(&self, l: DualLetter, b: Basis) -> C64 {
        let p = &self.ctx.params;
        let s = b.s();
        let dressing = p.phase(s / 2.0);
        match l {
            DualLetter::Unit => self.ctx.counit_basis(b),
            DualLetter::Nu | DualLetter::NuShift if b.k != 0 => ZERO,
            DualLetter::Nu => match b.m {
                0 => dressing * (p.offset() + s / 2.0),
                1 => dressing / p.gamma,
                _ => ZERO,
            },
            DualLetter::NuShift => match b.m {
                0 => dressing * (s / 2.0),
                1 => dressing / p.gamma,
                _ => ZERO,
            },
            DualLetter::Beta if b.k != 1 => ZERO,
            DualLetter::Beta => {
                let base = p.phase(-0.5) / (ONE + 1.0 / p.q);
                base * p.phase((s - 1.0) / 2.0)
                    * p.q_power_re((s - 1.0) / 4.0)
                    * 0.5f64.powi(b.m as i32)
            }
            DualLetter::QNu(_) if b.k != 0 => ZERO,
            DualLetter::QNu(t2) => {
                let t = t2 as f64 / 2.0;
                p.phase(t) * dressing * p.q_power_re(s * t / 2.0) * c(t.powi(b.m as i32))
            }
        }
    }

    fn coproduct(&mut self, b: Basis) -> Result<&[(Basis, Basis, C64)]> {
        if !self.coproducts.contains_key(&b) {
            let d = self.ctx.coproduct_basis(b)?;
            let flat = d
                .terms()
                .filter(|(_, v)| **v != ZERO)
                .map(|(legs, v)| (legs[0], legs[1], *v))
                .collect();
            self.coproducts.insert(b, flat);
        }
        Ok(&self.coproducts[&b])
    }

    pub fn eval_word(&mut self, word: &[DualLetter], b: Basis) -> Result<C64> {
        match word {
            [] => Ok(self.ctx.counit_basis(b)),
            [l] => Ok(self.base_value(*l, b)),
            [first, rest @ ..] => {
                let key = (word.to_vec(), b);
                if let Some(v) = self.values.get(&key) {
                    return Ok(*v);
                }
                let split = self.coproduct(b)?.to_vec();
                let mut acc = ZERO;
                for (x, y, v) in split {
                    let head = self.base_value(*first, x);
                    if head != ZERO {
                        acc += v * head * self.eval_word(rest, y)?;
                    }
                }
                self.values.insert(key, acc);
                Ok(acc)
            }
        }
    }

    pub fn eval_basis(&mut self, f: &DualElement, b: Basis) -> Result<C64> {
        let mut acc = ZERO;
        for (v, w) in &f.terms {
            acc += v * self.eval_word(w, b)?;
        }
        Ok(acc)
    }

    pub fn eval(&mut self, f: &DualElement, x: &PlusElement) -> Result<C64> {
        let mut acc = ZERO;
        for (b, v) in x.terms() {
            acc += v * self.eval_basis(f, *b)?;
        }
        Ok(acc)
    }

    /// `(f (x) g)(D x)`, with `f` and `g` evaluated as whole elements.
    pub fn eval_split(&mut self, f: &DualElement, g: &DualElement, b: Basis) -> Result<C64> {
        let split = self.coproduct(b)?.to_vec();
        let mut acc = ZERO;
        for (x, y, v) in split {
            let head = self.eval_basis(f, x)?;
            if head != ZERO {
                acc += v * head * self.eval_basis(g, y)?;
            }
        }
        Ok(acc)
    }
}

/// Opposite dual coproduct of a letter, as `(coef, left, right)`.
pub(crate) fn opposite_coproduct_letter(
    ctx: &SymCtx,
    l: DualLetter,
) -> Vec<(C64, DualLetter, DualLetter)> {
    use DualLetter::*;
    let p = &ctx.params;
    match l {
        Unit => vec![(ONE, Unit, Unit)],
        Nu => vec![(ONE, Nu, Unit), (ONE, Unit, Nu), (-p.offset(), Unit, Unit)],
        NuShift => vec![(ONE, NuShift, Unit), (ONE, Unit, NuShift)],
        Beta => {
            let phase = p.phase(-0.5);
            vec![(phase, Beta, QNu(1)), (phase * I, QNu(-1), Beta)]
        }
        QNu(t2) => vec![(p.phase(-(t2 as f64) / 2.0), QNu(t2), QNu(t2))],
    }
}

/// `(S^0)^{-1}` of a letter.
pub(crate) fn antipode_inv_letter(ctx: &SymCtx, l: DualLetter) -> DualElement {
    use DualLetter::*;
    let p = &ctx.params;
    match l {
        Unit => DualElement::letter(Unit),
        Nu => DualElement::letter(Nu)
            .scale(c(-1.0))
            .add(&DualElement::letter(Unit).scale(p.offset() * 2.0)),
        NuShift => DualElement::letter(NuShift).scale(c(-1.0)),
        Beta => DualElement::letter(Beta).scale(-p.q_power_re(-0.5)),
        QNu(t2) => DualElement::letter(QNu(-t2)).scale(p.phase(t2 as f64)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qscalars::DeformParams;

    fn eval(q: C64, kappa: i64) -> DualEval {
        DualEval::new(SymCtx::new(DeformParams::new(q, kappa).unwrap()))
    }

    #[test]
    fn generator_values() {
        let e = eval(c(1.3), 0);
        let p = e.ctx().params;
        assert!((e.base_value(DualLetter::Nu, Basis::N_PRIME) - 1.0 / p.gamma).norm() < 1e-15);
        assert!((e.base_value(DualLetter::Nu, Basis::ONE) - p.offset()).norm() < 1e-15);
        let b = e.base_value(DualLetter::Beta, Basis::e(1, 0));
        assert!((b - p.phase(-0.5) / (ONE + 1.0 / p.q)).norm() < 1e-15);
        let s = 1.5;
        let nu_s = e.base_value(DualLetter::Nu, Basis::q_pow(3));
        assert!((nu_s - p.phase(s / 2.0) * (p.offset() + s / 2.0)).norm() < 1e-15);
    }

    /// `q^{sN/2} = e^{i s alpha/2} sum_j (s gamma / 2)^j N'^j / j!`, truncated.
    fn series_value(e: &DualEval, l: DualLetter, k: u32, m: u32, s: f64) -> C64 {
        let p = e.ctx().params;
        let base = if k == 1 { Basis::e(1, 0) } else { Basis::ONE };
        let shift = s - k as f64;
        let mut acc = ZERO;
        let mut term = ONE;
        for j in 0..=40u32 {
            let b = Basis::new(k, m + j, base.s2);
            acc += term * e.base_value(l, b);
            term *= p.gamma * (shift / 2.0) / (j + 1) as f64;
        }
        acc * p.phase(shift / 2.0)
    }

    #[test]
    fn analytic_extension_matches_series() {
        let e = eval(C64::new(0.7, 0.2), 1);
        for s2 in [-3, -1, 0, 2, 5] {
            let s = s2 as f64 / 2.0;
            for m in 0..3 {
                let nu = e.base_value(DualLetter::Nu, Basis::new(0, m, s2));
                assert!((nu - series_value(&e, DualLetter::Nu, 0, m, s)).norm() < 1e-12);
                let beta = e.base_value(DualLetter::Beta, Basis::new(1, m, s2));
                assert!((beta - series_value(&e, DualLetter::Beta, 1, m, s)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn q_nu_matches_exponential_series() {
        let mut e = eval(C64::new(1.2, 0.1), 0);
        let p = e.ctx().params;
        for t2 in [-2, -1, 1, 3] {
            let t = t2 as f64 / 2.0;
            for b in [
                Basis::ONE,
                Basis::N_PRIME,
                Basis::new(0, 2, 1),
                Basis::q_pow(-3),
            ] {
                let mut acc = e.ctx().counit_basis(b);
                let mut coef = ONE;
                for j in 1..=40usize {
                    coef *= p.gamma * t / j as f64;
                    acc += coef * e.eval_word(&vec![DualLetter::Nu; j], b).unwrap();
                }
                let closed = e.base_value(DualLetter::QNu(t2), b);
                assert!(
                    (acc - closed).norm() < 1e-11,
                    "t={t} {b:?}: {acc} vs {closed}"
                );
            }
        }
    }

    #[test]
    fn dual_basis_word_shape() {
        let w = DualElement::dual_basis(2, 1);
        assert_eq!(
            w.terms[0].1,
            vec![
                DualLetter::NuShift,
                DualLetter::QNu(-2),
                DualLetter::Beta,
                DualLetter::Beta
            ]
        );
    }
}
