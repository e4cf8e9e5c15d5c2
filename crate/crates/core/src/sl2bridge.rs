//! Realization of `U_{q^{1/2}}(sl2)` by boson matrices, the inverse map, and
//! the witness that the Casimir ideal is not a Hopf ideal.

use crate::error::{Error, Result};
use crate::fockrep::{FockRep, Window};
use crate::hopfops::{
    coproduct_op, counit_letters, letters_matrix, word_coproduct, GenWord, HopfFamily, Letter,
};
use crate::op::Op;
use crate::qscalars::{c, format_complex, DeformParams, C64, I, ONE, ZERO};
use crate::report::{Expect, IdentityReport};

/// `h, e, f` together with the base of their defining relations.
#[derive(Debug, Clone, PartialEq)]
pub struct Sl2Triple {
    pub h: Op,
    pub e: Op,
    pub f: Op,
    /// `[e, f] = [h]_base`
    pub base: DeformParams,
}

fn require_nonzero(name: &str, z: C64) -> Result<()> {
    if z.norm() == 0.0 || !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Param(format!(
            "{name} must be a finite nonzero scalar"
        )));
    }
    Ok(())
}

/// `h = 2N - 2 i alpha / gamma`, `e = lambda a+`,
/// `f = i (q^{1/2} + q^{-1/2}) / (lambda (q^{1/2} - q^{-1/2})) a`.
pub fn realize_sl2(rep: &FockRep, lambda: C64) -> Result<Sl2Triple> {
    require_nonzero("lambda", lambda)?;
    let p = rep.params();
    let mut h = rep.n().scale(c(2.0));
    h.add_scaled(-p.offset() * 2.0, &rep.identity());
    let (up, down) = (p.q_power_re(0.5), p.q_power_re(-0.5));
    let f_coef = I * (up + down) / (lambda * (up - down));
    Ok(Sl2Triple {
        h,
        e: rep.adag().scale(lambda),
        f: rep.a().scale(f_coef),
        base: p.rebased(0.5)?,
    })
}

/// Residuals of `[h, e] = 2e`, `[h, f] = -2f`, `[e, f] = [h]_base` on the
/// states `0..=max_index` (guard 1).
pub fn check_sl2(t: &Sl2Triple, max_index: usize) -> Result<IdentityReport> {
    let dim = t.h.rows();
    let window = Window::new(max_index, 1);
    window.validate(dim)?;
    let idx = window.indices(&[dim]);
    let base = t.base;
    let bracket = t.h.map_diagonal(|x| base.q_number(x));
    let pairs = [
        (Op::commutator(&t.h, &t.e), t.e.scale(c(2.0))),
        (Op::commutator(&t.h, &t.f), t.f.scale(c(-2.0))),
        (Op::commutator(&t.e, &t.f), bracket),
    ];
    let (mut raw, mut norm) = (0.0f64, 0.0f64);
    for (lhs, rhs) in pairs {
        let d = (&lhs.block(&idx) - &rhs.block(&idx)).frobenius();
        raw = raw.max(d);
        norm = norm.max(d / rhs.block(&idx).frobenius().max(1.0));
    }
    Ok(IdentityReport::new("sl2_relations", raw, norm, base.tol)
        .param("base_q", format_complex(base.q))
        .dims(&[dim])
        .window(max_index, 1))
}

/// Constant added to `h / 2` by the inverse map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NShift {
    /// `i alpha / (4 ln Q)`, `Q` the triple's base.
    Quoted,
    /// `i alpha / (2 ln Q)`, the value that undoes the forward map.
    Consistent,
}

impl NShift {
    pub fn name(self) -> &'static str {
        match self {
            NShift::Quoted => "quoted",
            NShift::Consistent => "consistent",
        }
    }
}

/// Boson matrices produced by the inverse map, with the base `Q^2` at which
/// they should satisfy `[a, a+] = [N + 1/2] - [N - 1/2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BosonTriple {
    pub n: Op,
    pub a: Op,
    pub adag: Op,
    pub base: DeformParams,
}

/// `N = h/2 + shift`, `a = mu f`, `a+ = -i (Q - Q^{-1}) / (mu (Q + Q^{-1})) e`.
pub fn inverse_realization(t: &Sl2Triple, mu: C64, shift: NShift) -> Result<BosonTriple> {
    require_nonzero("mu", mu)?;
    let base = t.base;
    let divisor = match shift {
        NShift::Quoted => 4.0,
        NShift::Consistent => 2.0,
    };
    let constant = I * base.alpha / (base.gamma * divisor);
    let mut n = t.h.scale(c(0.5));
    n.add_scaled(constant, &Op::identity(n.rows()));
    let (qq, qi) = (base.q, ONE / base.q);
    let adag_coef = -I * (qq - qi) / (mu * (qq + qi));
    Ok(BosonTriple {
        n,
        a: t.f.scale(mu),
        adag: t.e.scale(adag_coef),
        base: base.rebased(2.0)?,
    })
}

/// `[a, a+] = [N + 1/2] - [N - 1/2]` and `[N, a+] = a+` for a boson triple, at its base.
pub fn check_boson_triple(
    b: &BosonTriple,
    max_index: usize,
    shift: NShift,
) -> Result<IdentityReport> {
    let dim = b.n.rows();
    let window = Window::new(max_index, 1);
    window.validate(dim)?;
    let idx = window.indices(&[dim]);
    let p = b.base;
    let comm = Op::commutator(&b.a, &b.adag);
    let rhs =
        &b.n.map_diagonal(|x| p.q_number(x + 0.5)) - &b.n.map_diagonal(|x| p.q_number(x - 0.5));
    let half = (&comm.block(&idx) - &rhs.block(&idx)).frobenius();
    let half_norm = half / rhs.block(&idx).frobenius().max(1.0);
    let grading = (&Op::commutator(&b.n, &b.adag).block(&idx) - &b.adag.block(&idx)).frobenius();
    let grading_norm = grading / b.adag.block(&idx).frobenius().max(1.0);
    let report = IdentityReport::new(
        "sl2_inverse",
        half.max(grading),
        half_norm.max(grading_norm),
        p.tol,
    )
    .param("shift", shift.name())
    .param("half_shift_commutator", format!("{half_norm:e}"))
    .param("grading", format!("{grading_norm:e}"))
    .param("base_q", format_complex(p.q))
    .dims(&[dim])
    .window(max_index, 1);
    Ok(match shift {
        NShift::Quoted => report.expect(Expect::Any),
        NShift::Consistent => report,
    })
}

/// `[C, x]` for `x` in `{N, a, a+}`, `C = a+ a - [N - 1/2]`.
pub fn casimir_centrality(rep: &FockRep, max_index: usize) -> Result<IdentityReport> {
    let window = Window::new(max_index, 1);
    window.validate(rep.dim())?;
    let idx = window.indices(&[rep.dim()]);
    let cas = rep.casimir();
    let worst = [rep.n(), rep.a(), rep.adag()]
        .iter()
        .map(|x| Op::commutator(&cas, x).block(&idx).frobenius())
        .fold(0.0, f64::max);
    Ok(
        IdentityReport::new("casimir_central", worst, worst, rep.params().tol)
            .param("c", format_complex(rep.c()))
            .dims(&[rep.dim()])
            .window(max_index, 1),
    )
}

/// `||casimir + [c - 1/2] I||`.
pub fn casimir_scalar(rep: &FockRep) -> IdentityReport {
    let target = Op::identity(rep.dim()).scale(-rep.params().q_number(rep.c() - 0.5));
    let raw = (&rep.casimir() - &target).frobenius();
    IdentityReport::new(
        "casimir_scalar",
        raw,
        raw / target.frobenius().max(1.0),
        rep.params().tol,
    )
    .param("c", format_complex(rep.c()))
    .dims(&[rep.dim()])
}

/// Output of [`hopf_ideal_witness`].
#[derive(Debug, Clone, PartialEq)]
pub struct IdealWitness {
    /// `||(pi (x) pi) D(C)||` on the window: the witness.
    pub witness: IdentityReport,
    /// `||pi(C)||`, which must vanish for the argument to apply.
    pub casimir: IdentityReport,
    /// `(eps (x) id) D(C) - C` in the representation.
    pub counit_leg: IdentityReport,
}

/// In `rep(c = 1/2)` the Casimir represents to zero, hence so does every
/// element of `K (x) L + L (x) K`. A nonzero `(pi (x) pi) D(C)` therefore
/// certifies `D(C) not in K (x) L + L (x) K`.
pub fn hopf_ideal_witness(
    dim: usize,
    fam: &HopfFamily,
    params: &DeformParams,
    max_index: usize,
) -> Result<IdealWitness> {
    let rep = FockRep::hopf(dim, *params)?;
    let window = Window::new(max_index, 1);
    window.validate(dim)?;
    let dims = [dim, dim];
    let idx = window.indices(&dims);

    let quad = GenWord::new(vec![Letter::Adag, Letter::A]);
    let dquad = coproduct_op(&quad, &rep, &rep, fam)?;
    let dn = coproduct_op(&GenWord::letter(Letter::N), &rep, &rep, fam)?;
    let dc = &dquad - &dn.map_diagonal(|x| params.q_number(x - 0.5));
    let norm = dc.block(&idx).frobenius();
    let witness = IdentityReport::new("hopf_ideal_witness", norm, norm, params.tol)
        .param("family", fam.label())
        .param("q", format_complex(params.q))
        .dims(&dims)
        .window(max_index, 1)
        .expect(Expect::Fail);

    let single = Window::new(max_index, 1).indices(&[dim]);
    let pic = rep.casimir().block(&single).frobenius();
    let casimir = IdentityReport::new("casimir_vanishes", pic, pic, params.tol)
        .dims(&[dim])
        .window(max_index, 1);

    // (eps (x) id) D(a+ a) from the Sweedler summands; (eps (x) id) of
    // [D(N) - 1/2] is [N + eps(N) + beta - 1/2] = [N - 1/2].
    let mut leg = Op::zeros(dim, dim);
    for s in word_coproduct(&quad, fam, params) {
        let e = counit_letters(&s.legs[0], fam, params);
        if e != ZERO {
            leg.add_scaled(s.coef * e, &letters_matrix(&s.legs[1], &rep, params));
        }
    }
    let shift = counit_letters(&[Letter::N], fam, params) + fam.beta(params);
    let leg = &leg - &rep.n().map_diagonal(|x| params.q_number(x + shift - 0.5));
    let leg_res = (&leg - &rep.casimir()).block(&single).frobenius();
    let counit_leg = IdentityReport::new("witness_counit_leg", leg_res, leg_res, params.tol)
        .dims(&[dim])
        .window(max_index, 1);
    Ok(IdealWitness {
        witness,
        casimir,
        counit_leg,
    })
}
