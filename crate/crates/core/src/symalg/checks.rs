use std::collections::BTreeMap;

use super::dual::{
    antipode_inv_letter, opposite_coproduct_letter, DualElement, DualEval, DualLetter,
};
use super::plus::{Basis, SymCtx};
use crate::error::{Error, Result};
use crate::fockrep::{FockRep, Window};
use crate::op::Op;
use crate::qscalars::{c, format_complex, DeformParams, C64, I, ONE, ZERO};
use crate::report::IdentityReport;

/// Closed form of `<e*_km, e_ln>`.
pub fn pairing_closed_form(p: &DeformParams, k: u32, m: u32, l: u32, n: u32) -> C64 {
    if k != l || m != n {
        return ZERO;
    }
    let factorial: f64 = (1..=n).map(f64::from).product();
    let phase = (-I).powu(k);
    factorial * phase * p.q_power_re(k as f64 * (k as f64 + 1.0) / 4.0) * p.half_index_product(k)
        / p.gamma.powu(n)
}

/// Gram matrix; row `(k, m)` and column `(l, n)` at `k (mmax+1) + m`.
pub fn pairing_gram(ctx: &SymCtx, kmax: u32, mmax: u32) -> Result<Op> {
    let mut eval = DualEval::new(*ctx);
    let size = ((kmax + 1) * (mmax + 1)) as usize;
    let mut gram = Op::zeros(size, size);
    for k in 0..=kmax {
        for m in 0..=mmax {
            let f = DualElement::dual_basis(k, m);
            for l in 0..=kmax {
                for n in 0..=mmax {
                    let v = eval.eval_basis(&f, Basis::e(l, n))?;
                    gram.set(
                        (k * (mmax + 1) + m) as usize,
                        (l * (mmax + 1) + n) as usize,
                        v,
                    );
                }
            }
        }
    }
    Ok(gram)
}

/// Largest deviation of the recursively evaluated pairing from the closed form.
pub fn pairing_check(ctx: &SymCtx, kmax: u32, mmax: u32) -> Result<IdentityReport> {
    let gram = pairing_gram(ctx, kmax, mmax)?;
    let (mut dev, mut scale) = (0.0f64, 1.0f64);
    for k in 0..=kmax {
        for m in 0..=mmax {
            for l in 0..=kmax {
                for n in 0..=mmax {
                    let closed = pairing_closed_form(&ctx.params, k, m, l, n);
                    let got =
                        gram.get((k * (mmax + 1) + m) as usize, (l * (mmax + 1) + n) as usize);
                    dev = dev.max((got - closed).norm());
                    scale = scale.max(closed.norm());
                }
            }
        }
    }
    Ok(
        IdentityReport::new("pairing", dev, dev / scale, ctx.params.tol)
            .param("kmax", kmax)
            .param("mmax", mmax),
    )
}

/// `nu beta - beta nu = -beta` on `e_ln`, `l, n <= 4`.
pub fn dual_bracket_check(ctx: &SymCtx) -> Result<IdentityReport> {
    let mut eval = DualEval::new(*ctx);
    let (mut dev, mut scale) = (0.0f64, 1.0f64);
    for l in 0..=4 {
        for n in 0..=4 {
            let b = Basis::e(l, n);
            let lhs = eval.eval_word(&[DualLetter::Nu, DualLetter::Beta], b)?
                - eval.eval_word(&[DualLetter::Beta, DualLetter::Nu], b)?;
            let rhs = -eval.eval_word(&[DualLetter::Beta], b)?;
            dev = dev.max((lhs - rhs).norm());
            scale = scale.max(rhs.norm());
        }
    }
    Ok(IdentityReport::new(
        "dual_bracket",
        dev,
        dev / scale,
        ctx.params.tol,
    ))
}

/// Opposite-coproduct duality `<T D0(f), x (x) y> = f(y x)` and antipode
/// duality `<(S0)^{-1} f, x> = f(S^{-1} x)` for `f` in `{nu, beta, q^{nu/2}}`
/// and `x, y` among `e_km` with `k + m <= 3`.
pub fn dual_hopf_check(ctx: &SymCtx) -> Result<IdentityReport> {
    let mut eval = DualEval::new(*ctx);
    let elements: Vec<Basis> = (0..=3u32)
        .flat_map(|k| (0..=3 - k).map(move |m| Basis::e(k, m)))
        .collect();
    let letters = [DualLetter::Nu, DualLetter::Beta, DualLetter::QNu(1)];
    let (mut dev, mut scale) = (0.0f64, 1.0f64);
    for &f in &letters {
        let f_elem = DualElement::letter(f);
        let split = opposite_coproduct_letter(ctx, f);
        for &x in &elements {
            for &y in &elements {
                let lhs: C64 = split
                    .iter()
                    .map(|(v, l, r)| v * eval.base_value(*l, x) * eval.base_value(*r, y))
                    .sum();
                let yx = ctx.multiply_basis(y, x)?;
                let rhs = eval.eval(&f_elem, &yx)?;
                dev = dev.max((lhs - rhs).norm());
                scale = scale.max(rhs.norm());
            }
            let lhs = eval.eval_basis(&antipode_inv_letter(ctx, f), x)?;
            let rhs = eval.eval(&f_elem, &ctx.antipode_inv_basis(x)?)?;
            dev = dev.max((lhs - rhs).norm());
            scale = scale.max(rhs.norm());
        }
    }
    Ok(IdentityReport::new(
        "dual_hopf",
        dev,
        dev / scale,
        ctx.params.tol,
    ))
}

/// One term `coef * plus . dual` of a straightened cross product.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossTerm {
    pub coef: C64,
    pub plus: Basis,
    pub dual: DualLetter,
}

/// Rewrite `f . x` (dual generator times `L+` generator) as a combination of
/// `x' . f'` through
/// `f x = sum <(S0)^{-1} f1, x1> <f3, x3> x2 f2`
/// with the opposite dual coproduct iterated on the left leg.
pub fn straighten_cross(ctx: &SymCtx, f: DualLetter, x: Basis) -> Result<Vec<CrossTerm>> {
    let mut eval = DualEval::new(*ctx);
    let d = ctx.coproduct_basis(x)?;
    let plus3 = ctx.coproduct_on_leg(&d, 0)?;
    let mut dual3 = Vec::new();
    for (v, l, r) in opposite_coproduct_letter(ctx, f) {
        for (w, l1, l2) in opposite_coproduct_letter(ctx, l) {
            dual3.push((v * w, l1, l2, r));
        }
    }
    let mut acc: BTreeMap<(Basis, DualLetter), C64> = BTreeMap::new();
    for (dv, b1, b2, b3) in &dual3 {
        let s_b1 = antipode_inv_letter(ctx, *b1);
        for (legs, pv) in plus3.terms() {
            let right = eval.base_value(*b3, legs[2]);
            if right == ZERO {
                continue;
            }
            let left = eval.eval_basis(&s_b1, legs[0])?;
            *acc.entry((legs[1], *b2)).or_insert(ZERO) += dv * pv * left * right;
        }
    }
    let scale = acc.values().map(|v| v.norm()).fold(0.0, f64::max);
    Ok(acc
        .into_iter()
        .filter(|(_, v)| v.norm() > 1e-13 * scale.max(1.0))
        .map(|((plus, dual), coef)| CrossTerm { coef, plus, dual })
        .collect())
}

/// Quotient `nu = N`, `beta = a` checked in a `c = 1/2` representation:
/// `[beta, a+] = [(nu+N+1)/2] - [(nu+N-1)/2]`, `[N, nu] = 0`,
/// `[nu, a+] = a+` and `[nu, beta] = -beta`.
pub fn quotient_cross_check(rep: &FockRep) -> Result<IdentityReport> {
    if (rep.c() - c(0.5)).norm() > 1e-15 {
        return Err(Error::Param(format!(
            "quotient check needs c = 1/2, got c = {}",
            format_complex(rep.c())
        )));
    }
    let window = Window::fit(rep.dim(), rep.dim(), 0, 1)?;
    let idx = window.indices(&[rep.dim()]);
    let (n, a, ad) = (rep.n(), rep.a(), rep.adag());
    let nu = n;
    let mut sum = nu.clone();
    sum.add_scaled(ONE, n);
    let p = rep.params();
    let half = |shift: f64| sum.map_diagonal(|x| p.q_number((x + shift) / 2.0));
    let pairs = [
        ("beta_adag", Op::commutator(a, ad), &half(1.0) - &half(-1.0)),
        (
            "n_nu",
            Op::commutator(n, nu),
            Op::zeros(rep.dim(), rep.dim()),
        ),
        ("nu_adag", Op::commutator(nu, ad), ad.clone()),
        ("nu_beta", Op::commutator(nu, a), a.scale(c(-1.0))),
    ];
    let mut report_parts = Vec::new();
    let (mut raw, mut worst) = (0.0f64, 0.0f64);
    for (name, lhs, rhs) in pairs {
        let (l, r) = (lhs.block(&idx), rhs.block(&idx));
        let diff = (&l - &r).frobenius();
        let norm = diff / r.frobenius().max(1.0);
        raw = raw.max(diff);
        worst = worst.max(norm);
        report_parts.push((name, norm));
    }
    let mut report = IdentityReport::new("quotient_cross", raw, worst, p.tol)
        .dims(&[rep.dim()])
        .window(window.max_index, window.guard);
    for (name, v) in report_parts {
        report = report.param(name, format!("{v:e}"));
    }
    Ok(report)
}
