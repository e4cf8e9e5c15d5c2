//! R-matrix candidates and their identity suite.
//!
//! Every candidate has the shape
//! `R = q^{p(N (x) 1, 1 (x) N)} sum_k c_k X_k (x) Y_k`
//! where `p` is a quadratic polynomial in the two number operators and
//! `X_k`, `Y_k` are words (`q`-power times `(a+)^k`, `q`-power times `a^k`).
//! Keeping this explicit form lets the Hopf maps act term by term.

use std::fmt;

use crate::error::{Error, Result};
use crate::exec::ExecPolicy;
use crate::fockrep::{FockRep, Window};
use crate::hopfops::{
    antipode_op, coproduct_op, counit_letters, letters_matrix, opposite_coproduct_op,
    qbar_coproduct_op, GenWord, HopfFamily, Letter, QbarBranch, Sign,
};
use crate::op::Op;
use crate::qscalars::{c, DeformParams, C64, I, ONE, ZERO};
use crate::report::{Expect, IdentityReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RKind {
    QuantumDouble,
    YanClaimed,
    GeneralFamily,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RSpec {
    /// The canonical element of the quantum double, reduced to `L`.
    QuantumDouble,
    /// The previously claimed R-matrix with the extra `-N (x) N / 2`.
    YanClaimed,
    GeneralFamily(HopfFamily),
}

impl RSpec {
    pub fn kind(&self) -> RKind {
        match self {
            RSpec::QuantumDouble => RKind::QuantumDouble,
            RSpec::YanClaimed => RKind::YanClaimed,
            RSpec::GeneralFamily(_) => RKind::GeneralFamily,
        }
    }

    pub fn general(m: f64, k: i64, sign: Sign) -> Result<Self> {
        Ok(RSpec::GeneralFamily(HopfFamily::new(m, k, sign)?))
    }

    /// The Hopf structure the candidate is meant to intertwine.
    pub fn hopf_family(&self, kappa: i64) -> HopfFamily {
        match self {
            RSpec::GeneralFamily(f) => *f,
            _ => HopfFamily::canonical(kappa),
        }
    }

    pub fn label(&self) -> String {
        match self {
            RSpec::QuantumDouble => "quantum_double".into(),
            RSpec::YanClaimed => "yan_claimed".into(),
            RSpec::GeneralFamily(f) => format!("general({})", f.label()),
        }
    }
}

impl fmt::Display for RSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// `p(x, y) = xy * x y + x_lin * x + y_lin * y + constant`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cartan {
    pub xy: C64,
    pub x_lin: C64,
    pub y_lin: C64,
    pub constant: C64,
}

impl Cartan {
    /// `scale (x + b)(y + b)`.
    fn shifted_product(scale: C64, b: C64) -> Self {
        Self {
            xy: scale,
            x_lin: scale * b,
            y_lin: scale * b,
            constant: scale * b * b,
        }
    }

    pub fn eval(&self, x: C64, y: C64) -> C64 {
        self.xy * x * y + self.x_lin * x + self.y_lin * y + self.constant
    }
}

/// One series term `coef * X (x) Y`.
#[derive(Debug, Clone, PartialEq)]
pub struct RTerm {
    pub coef: C64,
    pub left: Vec<Letter>,
    pub right: Vec<Letter>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RSeries {
    pub cartan: Cartan,
    pub terms: Vec<RTerm>,
}

fn adag_power(k: u32) -> Vec<Letter> {
    vec![Letter::Adag; k as usize]
}

fn with_q_pow(h: i32, mut rest: Vec<Letter>) -> Vec<Letter> {
    if h != 0 {
        rest.insert(0, Letter::QPow(h));
    }
    rest
}

/// Series of `spec` truncated at `k <= kmax`.
pub fn r_series(spec: &RSpec, params: &DeformParams, kmax: u32) -> RSeries {
    let b = -params.offset();
    let denominators = |k: u32| params.half_index_product(k);
    match spec {
        RSpec::QuantumDouble | RSpec::YanClaimed => {
            let yan = matches!(spec, RSpec::YanClaimed);
            let mut cartan = Cartan::shifted_product(ONE, b);
            if yan {
                cartan.xy -= 0.5;
            }
            let terms = (0..=kmax)
                .map(|k| {
                    let kf = k as f64;
                    let mut coef =
                        I.powu(k) * params.q_power_re(-kf * (kf + 1.0) / 4.0) / denominators(k);
                    let left = if yan {
                        coef *= (ONE + 1.0 / params.q).powu(k);
                        adag_power(k)
                    } else {
                        with_q_pow(k as i32, adag_power(k))
                    };
                    RTerm {
                        coef,
                        left,
                        right: with_q_pow(-(k as i32), vec![Letter::A; k as usize]),
                    }
                })
                .collect();
            RSeries { cartan, terms }
        }
        RSpec::GeneralFamily(fam) => {
            let upper = fam.sign() == Sign::Upper;
            let sgn = if upper { 1.0 } else { -1.0 };
            let beta = fam.beta(params);
            let cartan = Cartan::shifted_product(c(-sgn), beta);
            let parity: f64 = if fam.k().rem_euclid(2) == 0 {
                1.0
            } else {
                -1.0
            };
            let m = fam.m();
            let terms = (0..=kmax)
                .map(|k| {
                    let kf = k as f64;
                    let coef = (I * sgn).powu(k)
                        * parity.powi(k as i32)
                        * params.q_power_re(-m * kf * kf - sgn * kf * (kf - 1.0) / 4.0)
                        / denominators(k);
                    let h = (2.0 * m * kf) as i32;
                    RTerm {
                        coef,
                        left: with_q_pow(h, adag_power(k)),
                        right: with_q_pow(-h, vec![Letter::A; k as usize]),
                    }
                })
                .collect();
            RSeries { cartan, terms }
        }
    }
}

fn shared(rep1: &FockRep, rep2: &FockRep) -> Result<DeformParams> {
    if rep1.params() != rep2.params() {
        return Err(Error::Param(
            "tensor factors carry different deformation parameters".into(),
        ));
    }
    Ok(*rep1.params())
}

fn prefactor(cartan: &Cartan, params: &DeformParams, xs: &[C64], ys: &[C64]) -> Op {
    let diag: Vec<C64> = xs
        .iter()
        .flat_map(|&x| ys.iter().map(move |&y| params.q_power(cartan.eval(x, y))))
        .collect();
    Op::from_diag(&diag)
}

impl RSeries {
    /// `sum_k c_k X_k (x) Y_k` without the prefactor.
    fn series_op(
        &self,
        rep1: &FockRep,
        rep2: &FockRep,
        params: &DeformParams,
        policy: ExecPolicy,
    ) -> Op {
        let dim = rep1.dim() * rep2.dim();
        let mut out = Op::zeros(dim, dim);
        for t in &self.terms {
            let x = letters_matrix(&t.left, rep1, params);
            let y = letters_matrix(&t.right, rep2, params);
            out.add_scaled(t.coef, &x.kron_with(&y, policy));
        }
        out
    }

    pub fn matrix(&self, rep1: &FockRep, rep2: &FockRep) -> Result<Op> {
        self.matrix_with(rep1, rep2, ExecPolicy::default())
    }

    pub fn matrix_with(&self, rep1: &FockRep, rep2: &FockRep, policy: ExecPolicy) -> Result<Op> {
        let p = shared(rep1, rep2)?;
        let pre = prefactor(&self.cartan, &p, &rep1.levels(), &rep2.levels());
        Ok(pre.matmul_with(&self.series_op(rep1, rep2, &p, policy), policy))
    }
}

/// The series index runs to `min(D1, D2) - 1`; beyond that `(a+)^k` or
/// `a^k` vanishes identically on the truncation.
pub fn series_cutoff(rep1: &FockRep, rep2: &FockRep) -> u32 {
    (rep1.dim().min(rep2.dim()) - 1) as u32
}

pub fn build_r(spec: &RSpec, rep1: &FockRep, rep2: &FockRep) -> Result<Op> {
    build_r_with(spec, rep1, rep2, ExecPolicy::default())
}

pub fn build_r_with(
    spec: &RSpec,
    rep1: &FockRep,
    rep2: &FockRep,
    policy: ExecPolicy,
) -> Result<Op> {
    let p = shared(rep1, rep2)?;
    r_series(spec, &p, series_cutoff(rep1, rep2)).matrix_with(rep1, rep2, policy)
}

fn gen_word(gen: Letter) -> GenWord {
    GenWord::letter(gen)
}

fn gen_name(gen: Letter) -> &'static str {
    match gen {
        Letter::N => "N",
        Letter::A => "a",
        Letter::Adag => "adag",
        Letter::QPow(_) => "qpow",
    }
}

fn base_report(
    name: &str,
    spec: &RSpec,
    raw: f64,
    normalized: f64,
    params: &DeformParams,
    dims: &[usize],
    window: Window,
) -> IdentityReport {
    IdentityReport::new(name, raw, normalized, params.tol)
        .param("rspec", spec.label())
        .param("q", crate::qscalars::format_complex(params.q))
        .param("kappa", params.kappa)
        .dims(dims)
        .window(window.max_index, window.guard)
}

fn scaled_residual(diff: &Op, r: &Op, g: &Op) -> (f64, f64) {
    let raw = diff.frobenius();
    let scale = r.frobenius() * g.frobenius();
    (raw, if scale > 0.0 { raw / scale } else { raw })
}

fn relative_residual(diff: &Op, rhs: &Op) -> (f64, f64) {
    let raw = diff.frobenius();
    let scale = rhs.frobenius();
    (raw, if scale > 0.0 { raw / scale } else { raw })
}

/// Pairwise window: per-leg guard `W + 1` (the series raises the first leg
/// by at most the second leg's occupation, the generator by one more).
pub fn pair_window(max_index: usize, rep1: &FockRep, rep2: &FockRep) -> Result<Window> {
    let w = Window::new(max_index, max_index + 1);
    w.validate_all(&[rep1.dim(), rep2.dim()])?;
    Ok(w)
}

/// `T D(gen) R = R D(gen)`.
pub fn check_intertwiner(
    spec: &RSpec,
    fam: &HopfFamily,
    rep1: &FockRep,
    rep2: &FockRep,
    gen: Letter,
    max_index: usize,
) -> Result<IdentityReport> {
    let p = shared(rep1, rep2)?;
    let window = pair_window(max_index, rep1, rep2)?;
    let dims = [rep1.dim(), rep2.dim()];
    let idx = window.indices(&dims);
    let r = build_r(spec, rep1, rep2)?;
    let w = gen_word(gen);
    let d = coproduct_op(&w, rep1, rep2, fam)?;
    let td = opposite_coproduct_op(&w, rep1, rep2, fam)?;
    let diff = (&td.matmul(&r) - &r.matmul(&d)).block(&idx);
    let (raw, norm) = scaled_residual(&diff, &r.block(&idx), &d.block(&idx));
    Ok(
        base_report("intertwiner", spec, raw, norm, &p, &dims, window)
            .renamed(format!("intertwiner_{}", gen_name(gen)))
            .param("family", fam.label()),
    )
}

/// `R D(gen) = Dbar(gen) R`, with `Dbar` the `q -> 1/q` coproduct. With
/// `drop_offset` the constant term is removed from both `D(N)` and `Dbar(N)`.
#[allow(clippy::too_many_arguments)]
pub fn check_yan_relation(
    spec: &RSpec,
    fam: &HopfFamily,
    rep1: &FockRep,
    rep2: &FockRep,
    gen: Letter,
    branch: QbarBranch,
    drop_offset: bool,
    max_index: usize,
) -> Result<IdentityReport> {
    let p = shared(rep1, rep2)?;
    let window = pair_window(max_index, rep1, rep2)?;
    let dims = [rep1.dim(), rep2.dim()];
    let idx = window.indices(&dims);
    let r = build_r(spec, rep1, rep2)?;
    let w = gen_word(gen);
    let mut d = coproduct_op(&w, rep1, rep2, fam)?;
    let mut dbar = qbar_coproduct_op(&w, rep1, rep2, fam, branch)?;
    if drop_offset && gen == Letter::N {
        let id = Op::identity(d.rows());
        d.add_scaled(-d.get(0, 0) + rep1.levels()[0] + rep2.levels()[0], &id);
        dbar.add_scaled(-dbar.get(0, 0) + rep1.levels()[0] + rep2.levels()[0], &id);
    }
    let diff = (&r.matmul(&d) - &dbar.matmul(&r)).block(&idx);
    let (raw, norm) = scaled_residual(&diff, &r.block(&idx), &d.block(&idx));
    Ok(
        base_report("yan_relation", spec, raw, norm, &p, &dims, window)
            .renamed(format!("yan_relation_{}", gen_name(gen)))
            .param("branch", branch.name())
            .param("drop_offset", drop_offset),
    )
}

fn triple_dims(reps: [&FockRep; 3]) -> Result<(DeformParams, [usize; 3])> {
    let p = shared(reps[0], reps[1])?;
    shared(reps[0], reps[2])?;
    Ok((p, [reps[0].dim(), reps[1].dim(), reps[2].dim()]))
}

fn check_cap(dims: &[usize], cap: usize) -> Result<()> {
    let dim: usize = dims.iter().product();
    if dim > cap {
        return Err(Error::Cap { dim, cap });
    }
    Ok(())
}

/// `R12 R13 R23 = R23 R13 R12` on a triple window with guard `2W`.
pub fn check_yang_baxter(
    spec: &RSpec,
    reps: [&FockRep; 3],
    max_index: usize,
    cap: usize,
) -> Result<IdentityReport> {
    check_yang_baxter_with(spec, reps, max_index, cap, ExecPolicy::default())
}

pub fn check_yang_baxter_with(
    spec: &RSpec,
    reps: [&FockRep; 3],
    max_index: usize,
    cap: usize,
    policy: ExecPolicy,
) -> Result<IdentityReport> {
    let (p, dims) = triple_dims(reps)?;
    check_cap(&dims, cap)?;
    let window = Window::new(max_index, 2 * max_index);
    window.validate_all(&dims)?;
    let idx = window.indices(&dims);
    let r12 = build_r_with(spec, reps[0], reps[1], policy)?.embed(&[0, 1], &dims);
    let r13 = build_r_with(spec, reps[0], reps[2], policy)?.embed(&[0, 2], &dims);
    let r23 = build_r_with(spec, reps[1], reps[2], policy)?.embed(&[1, 2], &dims);
    let lhs = r12.matmul_with(&r13, policy).matmul_with(&r23, policy);
    let rhs = r23.matmul_with(&r13, policy).matmul_with(&r12, policy);
    let (raw, norm) = relative_residual(&(&lhs - &rhs).block(&idx), &rhs.block(&idx));
    Ok(base_report(
        "yang_baxter",
        spec,
        raw,
        norm,
        &p,
        &dims,
        window,
    ))
}

fn triple_prefactor(
    cartan: &Cartan,
    params: &DeformParams,
    levels: [&[C64]; 3],
    args: impl Fn(C64, C64, C64) -> (C64, C64),
) -> Op {
    let mut diag = Vec::with_capacity(levels.iter().map(|l| l.len()).product());
    for &a in levels[0] {
        for &b in levels[1] {
            for &c3 in levels[2] {
                let (x, y) = args(a, b, c3);
                diag.push(params.q_power(cartan.eval(x, y)));
            }
        }
    }
    Op::from_diag(&diag)
}

/// `(D (x) 1) R = R13 R23` and `(1 (x) D) R = R13 R12`.
pub fn check_fusion(
    spec: &RSpec,
    fam: &HopfFamily,
    reps: [&FockRep; 3],
    max_index: usize,
    cap: usize,
) -> Result<Vec<IdentityReport>> {
    let (p, dims) = triple_dims(reps)?;
    check_cap(&dims, cap)?;
    let [r1, r2, r3] = reps;
    let beta = fam.beta(&p);
    let series = r_series(spec, &p, (dims.iter().min().unwrap() - 1) as u32);
    let r13 = build_r(spec, r1, r3)?.embed(&[0, 2], &dims);
    let r23 = build_r(spec, r2, r3)?.embed(&[1, 2], &dims);
    let r12 = build_r(spec, r1, r2)?.embed(&[0, 1], &dims);
    let (l1, l2, l3) = (r1.levels(), r2.levels(), r3.levels());
    let size: usize = dims.iter().product();

    // (D (x) 1): x -> x1 + x2 + beta
    let mut left = Op::zeros(size, size);
    for t in &series.terms {
        let dx = coproduct_op(&GenWord::new(t.left.clone()), r1, r2, fam)?;
        let y = letters_matrix(&t.right, r3, &p);
        left.add_scaled(t.coef, &dx.kron(&y));
    }
    let pre_left = triple_prefactor(&series.cartan, &p, [&l1, &l2, &l3], |x1, x2, y| {
        (x1 + x2 + beta, y)
    });
    let left = pre_left.matmul(&left);

    // (1 (x) D): y -> y2 + y3 + beta
    let mut right = Op::zeros(size, size);
    for t in &series.terms {
        let x = letters_matrix(&t.left, r1, &p);
        let dy = coproduct_op(&GenWord::new(t.right.clone()), r2, r3, fam)?;
        right.add_scaled(t.coef, &x.kron(&dy));
    }
    let pre_right = triple_prefactor(&series.cartan, &p, [&l1, &l2, &l3], |x, y2, y3| {
        (x, y2 + y3 + beta)
    });
    let right = pre_right.matmul(&right);

    let w_left = Window::new(max_index, max_index);
    let w_right = Window::new(max_index, 2 * max_index);
    w_right.validate_all(&dims)?;
    let idx = w_left.indices(&dims);
    let rhs_left = r13.matmul(&r23);
    let rhs_right = r13.matmul(&r12);
    let (raw_l, norm_l) =
        relative_residual(&(&left - &rhs_left).block(&idx), &rhs_left.block(&idx));
    let (raw_r, norm_r) =
        relative_residual(&(&right - &rhs_right).block(&idx), &rhs_right.block(&idx));
    Ok(vec![
        base_report("fusion_left", spec, raw_l, norm_l, &p, &dims, w_left)
            .param("family", fam.label()),
        base_report("fusion_right", spec, raw_r, norm_r, &p, &dims, w_right)
            .param("family", fam.label()),
    ])
}

/// `(S (x) 1) R`, assembled term by term:
/// `sum_k c_k (S(X_k) (x) 1) q^{p(-x - 2 beta, y)} (1 (x) Y_k)`.
pub fn antipode_on_first_leg(
    spec: &RSpec,
    fam: &HopfFamily,
    rep1: &FockRep,
    rep2: &FockRep,
) -> Result<Op> {
    let p = shared(rep1, rep2)?;
    let series = r_series(spec, &p, series_cutoff(rep1, rep2));
    let beta = fam.beta(&p);
    let xs: Vec<C64> = rep1.levels().iter().map(|&x| -x - beta * 2.0).collect();
    let pre = prefactor(&series.cartan, &p, &xs, &rep2.levels());
    let (i1, i2) = (rep1.identity(), rep2.identity());
    let dim = rep1.dim() * rep2.dim();
    let mut out = Op::zeros(dim, dim);
    for t in &series.terms {
        let sx = antipode_op(&GenWord::new(t.left.clone()), rep1, fam).kron(&i2);
        let y = i1.kron(&letters_matrix(&t.right, rep2, &p));
        out.add_scaled(t.coef, &sx.matmul(&pre).matmul(&y));
    }
    Ok(out)
}

/// `R (S (x) 1)R = (S (x) 1)R R = 1` on the window (guard `W`).
pub fn check_antipode_inverse(
    spec: &RSpec,
    fam: &HopfFamily,
    rep1: &FockRep,
    rep2: &FockRep,
    max_index: usize,
) -> Result<IdentityReport> {
    let p = shared(rep1, rep2)?;
    let dims = [rep1.dim(), rep2.dim()];
    let window = Window::new(max_index, max_index);
    window.validate_all(&dims)?;
    let idx = window.indices(&dims);
    let r = build_r(spec, rep1, rep2)?;
    let sr = antipode_on_first_leg(spec, fam, rep1, rep2)?;
    let id = Op::identity(idx.len());
    let a = (&r.matmul(&sr).block(&idx) - &id).frobenius();
    let b = (&sr.matmul(&r).block(&idx) - &id).frobenius();
    let raw = a.hypot(b);
    let norm = raw / (2.0 * idx.len() as f64).sqrt();
    Ok(
        base_report("antipode_inverse", spec, raw, norm, &p, &dims, window)
            .param("family", fam.label()),
    )
}

/// `(eps (x) 1) R = 1` and `(1 (x) eps) R = 1`, evaluated on the series.
pub fn check_counit_normalization(
    spec: &RSpec,
    fam: &HopfFamily,
    rep1: &FockRep,
    rep2: &FockRep,
) -> Result<Vec<IdentityReport>> {
    let p = shared(rep1, rep2)?;
    let series = r_series(spec, &p, series_cutoff(rep1, rep2));
    let eps_n = -fam.beta(&p);
    let mut left = Op::zeros(rep2.dim(), rep2.dim());
    let pre_left = Op::from_diag(
        &rep2
            .levels()
            .iter()
            .map(|&y| p.q_power(series.cartan.eval(eps_n, y)))
            .collect::<Vec<_>>(),
    );
    let mut right = Op::zeros(rep1.dim(), rep1.dim());
    let pre_right = Op::from_diag(
        &rep1
            .levels()
            .iter()
            .map(|&x| p.q_power(series.cartan.eval(x, eps_n)))
            .collect::<Vec<_>>(),
    );
    for t in &series.terms {
        let el = counit_letters(&t.left, fam, &p);
        if el != ZERO {
            left.add_scaled(
                t.coef * el,
                &pre_left.matmul(&letters_matrix(&t.right, rep2, &p)),
            );
        }
        let er = counit_letters(&t.right, fam, &p);
        if er != ZERO {
            right.add_scaled(
                t.coef * er,
                &letters_matrix(&t.left, rep1, &p).matmul(&pre_right),
            );
        }
    }
    let mut out = Vec::new();
    for (name, m, d) in [
        ("counit_left", left, rep2.dim()),
        ("counit_right", right, rep1.dim()),
    ] {
        let id = Op::identity(d);
        let (raw, norm) = relative_residual(&(&m - &id), &id);
        out.push(
            base_report(name, spec, raw, norm, &p, &[d], Window::new(d - 1, 0))
                .param("family", fam.label()),
        );
    }
    Ok(out)
}

/// `GeneralFamily(1/2, -2 kappa - 1, lower)` against `QuantumDouble`.
pub fn check_specialization(rep1: &FockRep, rep2: &FockRep) -> Result<IdentityReport> {
    let p = shared(rep1, rep2)?;
    let fam = HopfFamily::canonical(p.kappa);
    let general = build_r(&RSpec::GeneralFamily(fam), rep1, rep2)?;
    let qd = build_r(&RSpec::QuantumDouble, rep1, rep2)?;
    let raw = general.max_abs_diff(&qd);
    let norm = raw / qd.max_abs().max(1.0);
    let dims = [rep1.dim(), rep2.dim()];
    Ok(base_report(
        "specialization",
        &RSpec::GeneralFamily(fam),
        raw,
        norm,
        &p,
        &dims,
        Window::new(rep1.dim().min(rep2.dim()) - 1, 0),
    ))
}

/// Sizes and windows for an R-matrix suite run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RSuiteConfig {
    pub pair_dim: usize,
    pub pair_window: usize,
    pub triple_dim: usize,
    pub triple_window: usize,
    pub triple_cap: usize,
    pub branch: QbarBranch,
}

impl Default for RSuiteConfig {
    fn default() -> Self {
        Self {
            pair_dim: 12,
            pair_window: 4,
            triple_dim: 8,
            triple_window: 2,
            triple_cap: 4096,
            branch: QbarBranch::FixedKappa,
        }
    }
}

fn expectation(spec: &RSpec, identity: &str) -> Expect {
    match spec {
        RSpec::YanClaimed => match identity {
            "intertwiner_N" | "antipode_inverse" | "counit_left" | "counit_right" => Expect::Any,
            _ => Expect::Fail,
        },
        _ if identity.starts_with("yan_relation") => Expect::Any,
        _ => Expect::Pass,
    }
}

fn attempt(name: &str, r: Result<IdentityReport>) -> IdentityReport {
    r.unwrap_or_else(|e| IdentityReport::errored(name, e))
}

/// Every identity for `spec` at the given parameters.
pub fn run_suite(spec: &RSpec, params: &DeformParams, cfg: &RSuiteConfig) -> Vec<IdentityReport> {
    let fam = spec.hopf_family(params.kappa);
    let pair = match FockRep::hopf(cfg.pair_dim, *params) {
        Ok(r) => r,
        Err(e) => return vec![IdentityReport::errored("rmatrix", e)],
    };
    let triple = match FockRep::hopf(cfg.triple_dim, *params) {
        Ok(r) => r,
        Err(e) => return vec![IdentityReport::errored("rmatrix", e)],
    };
    let mut out = Vec::new();
    for gen in [Letter::N, Letter::A, Letter::Adag] {
        out.push(attempt(
            "intertwiner",
            check_intertwiner(spec, &fam, &pair, &pair, gen, cfg.pair_window),
        ));
    }
    out.push(attempt(
        "yang_baxter",
        check_yang_baxter(
            spec,
            [&triple, &triple, &triple],
            cfg.triple_window,
            cfg.triple_cap,
        ),
    ));
    match check_fusion(
        spec,
        &fam,
        [&triple, &triple, &triple],
        cfg.triple_window,
        cfg.triple_cap,
    ) {
        Ok(v) => out.extend(v),
        Err(e) => out.push(IdentityReport::errored("fusion", e)),
    }
    out.push(attempt(
        "antipode_inverse",
        check_antipode_inverse(spec, &fam, &pair, &pair, cfg.pair_window),
    ));
    match check_counit_normalization(spec, &fam, &pair, &pair) {
        Ok(v) => out.extend(v),
        Err(e) => out.push(IdentityReport::errored("counit", e)),
    }
    for gen in [Letter::N, Letter::A, Letter::Adag] {
        out.push(attempt(
            "yan_relation",
            check_yan_relation(
                spec,
                &fam,
                &pair,
                &pair,
                gen,
                cfg.branch,
                false,
                cfg.pair_window,
            ),
        ));
    }
    if matches!(spec, RSpec::QuantumDouble) {
        out.push(attempt(
            "specialization",
            check_specialization(&pair, &pair),
        ));
    }
    out.into_iter()
        .map(|r| {
            if r.error.is_some() {
                return r;
            }
            let e = expectation(spec, &r.identity);
            r.expect(e)
        })
        .collect()
}
