//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Exits nonzero when a criterion fails that is not listed in
//! `KNOWN_UNATTAINABLE`. Set `QDOUBLE_ACCEPTANCE_STRICT=1` to fail on those too.

use std::process::ExitCode;
use std::time::Instant;

use qdouble::fockrep::classical_limit_residual;
use qdouble::hopfops::{canonical_coproducts, check_hopf_axioms, coproduct_op, QbarBranch};
use qdouble::qscalars::c;
use qdouble::rmatrix::{
    build_r, check_antipode_inverse, check_counit_normalization, check_fusion, check_intertwiner,
    check_yan_relation, check_yang_baxter, pair_window,
};
use qdouble::sl2bridge::{casimir_scalar, check_sl2, hopf_ideal_witness, realize_sl2};
use qdouble::symalg::{dual_bracket_check, pairing_check, SymCtx};
use qdouble::{
    DeformParams, FockRep, GenWord, HopfFamily, IdentityReport, Letter, Op, RSpec, Relation,
    Result, Sign, Window, C64,
};

/// Criteria that fail by construction; see the README.
const KNOWN_UNATTAINABLE: &[u32] = &[9];

const GENS: [Letter; 3] = [Letter::N, Letter::A, Letter::Adag];

fn q_values() -> [C64; 2] {
    [c(1.3), C64::new(0.7, 0.2)]
}

fn params(q: C64, kappa: i64) -> DeformParams {
    DeformParams::new(q, kappa).expect("valid parameters")
}

/// Running worst case against an upper bound (`below`) or lower bound.
struct Gauge {
    worst: f64,
    worst_at: String,
    ok: bool,
    notes: Vec<String>,
}

impl Gauge {
    fn new() -> Self {
        Self {
            worst: 0.0,
            worst_at: String::new(),
            ok: true,
            notes: Vec::new(),
        }
    }

    fn below(&mut self, what: impl Into<String>, value: f64, bound: f64) {
        let what = what.into();
        if value.is_nan() || value > bound {
            self.ok = false;
            self.notes.push(format!("{what}={value:.3e}>{bound:.0e}"));
        }
        if value > self.worst || self.worst_at.is_empty() || value.is_nan() {
            self.worst = value;
            self.worst_at = what;
        }
    }

    fn above(&mut self, what: impl Into<String>, value: f64, bound: f64) {
        let what = what.into();
        if value.is_nan() || value <= bound {
            self.ok = false;
            self.notes.push(format!("{what}={value:.3e}<={bound:.0e}"));
        }
    }

    fn report(&mut self, r: &IdentityReport, bound: f64) {
        let what = format!("{}[{}]", r.identity, echo(r));
        match &r.error {
            Some(e) => {
                self.ok = false;
                self.notes.push(format!("{what}: {e}"));
            }
            None => self.below(what, r.normalized_residual, bound),
        }
    }

    fn note(&mut self, text: String) {
        self.notes.push(text);
    }

    fn fail(&mut self, text: String) {
        self.ok = false;
        self.notes.push(text);
    }

    fn summary(&self) -> String {
        let mut s = format!("worst {:.3e} at {}", self.worst, self.worst_at);
        if !self.notes.is_empty() {
            s.push_str("; ");
            s.push_str(&self.notes.join("; "));
        }
        s
    }
}

fn echo(r: &IdentityReport) -> String {
    let keys = ["q", "family", "word", "c", "kappa"];
    keys.iter()
        .filter_map(|k| r.params.get(*k).map(|v| format!("{k}={v}")))
        .collect::<Vec<_>>()
        .join(",")
}

fn guarded(g: &mut Gauge, what: &str, f: impl FnOnce(&mut Gauge) -> Result<()>) {
    if let Err(e) = f(g) {
        g.fail(format!("{what}: {e}"));
    }
}

fn criterion_1() -> Gauge {
    let mut g = Gauge::new();
    for q in q_values() {
        guarded(&mut g, "relations", |g| {
            let p = params(q, 0);
            let zero = FockRep::new(12, c(0.0), p)?;
            for rel in [
                Relation::ShiftedCommutator,
                Relation::QCommutator,
                Relation::QInverseCommutator,
                Relation::NumberProducts,
            ] {
                g.report(&zero.relation_report(rel, 8)?.param("q", q), 1e-12);
            }
            let half = FockRep::hopf(12, p)?;
            for rel in [Relation::Grading, Relation::HalfShiftCommutator] {
                g.report(&half.relation_report(rel, 8)?.param("q", q), 1e-12);
            }
            Ok(())
        });
    }
    g
}

fn grid() -> Vec<HopfFamily> {
    let mut out = Vec::new();
    for m in [-0.5, 0.5, 1.0] {
        for k in [-1, 0, 1] {
            for sign in [Sign::Upper, Sign::Lower] {
                out.push(HopfFamily::new(m, k, sign).expect("grid point"));
            }
        }
    }
    out
}

fn criterion_2() -> Gauge {
    let mut g = Gauge::new();
    let sample = GenWord::default_sample();
    for q in q_values() {
        let p = params(q, 0);
        let mut families = vec![HopfFamily::canonical(0)];
        if q == c(1.3) {
            families.extend(grid());
        }
        for fam in families {
            guarded(&mut g, &fam.label(), |g| {
                let rep = FockRep::hopf(8, p)?;
                for r in check_hopf_axioms(&fam, &rep, &sample, 4)? {
                    g.report(&r.param("q", q), 1e-10);
                }
                Ok(())
            });
        }
    }
    g.note(format!(
        "{} grid points, {} words",
        grid().len(),
        sample.len()
    ));
    g
}

fn criterion_3() -> Gauge {
    let mut g = Gauge::new();
    for q in q_values() {
        guarded(&mut g, "pairing", |g| {
            g.report(
                &pairing_check(&SymCtx::new(params(q, 0)), 3, 3)?.param("q", q),
                1e-9,
            );
            Ok(())
        });
    }
    g
}

fn criterion_4() -> Gauge {
    let mut g = Gauge::new();
    for q in q_values() {
        guarded(&mut g, "dual_bracket", |g| {
            g.report(
                &dual_bracket_check(&SymCtx::new(params(q, 0)))?.param("q", q),
                1e-12,
            );
            Ok(())
        });
    }
    g
}

fn criterion_5() -> Gauge {
    let mut g = Gauge::new();
    guarded(&mut g, "quantum double", |g| {
        let p = params(c(1.3), 0);
        let fam = HopfFamily::canonical(0);
        let spec = RSpec::QuantumDouble;
        let pair = FockRep::hopf(12, p)?;
        let triple = FockRep::hopf(8, p)?;
        for gen in GENS {
            g.report(&check_intertwiner(&spec, &fam, &pair, &pair, gen, 4)?, 1e-9);
        }
        let t = [&triple, &triple, &triple];
        g.report(&check_yang_baxter(&spec, t, 2, 4096)?, 1e-8);
        for r in check_fusion(&spec, &fam, t, 2, 4096)? {
            g.report(&r, 1e-8);
        }
        g.report(&check_antipode_inverse(&spec, &fam, &pair, &pair, 4)?, 1e-9);
        for r in check_counit_normalization(&spec, &fam, &pair, &pair)? {
            g.report(&r, 1e-12);
        }
        Ok(())
    });
    g
}

fn criterion_6() -> Gauge {
    let mut g = Gauge::new();
    let spec = RSpec::YanClaimed;
    let fam = HopfFamily::canonical(0);
    for q in q_values() {
        let p = params(q, 0);
        let floor = 100.0 * p.tol;
        for (dim, w) in [(8, 3), (12, 4)] {
            guarded(&mut g, "yan", |g| {
                let rep = FockRep::hopf(dim, p)?;
                let da = check_intertwiner(&spec, &fam, &rep, &rep, Letter::A, w)?;
                let yd = check_yan_relation(
                    &spec,
                    &fam,
                    &rep,
                    &rep,
                    Letter::N,
                    QbarBranch::FixedKappa,
                    false,
                    w,
                )?;
                for r in [da, yd] {
                    let what = format!("{}[q={q},D={dim},W={w}]", r.identity);
                    g.above(what.clone(), r.normalized_residual, floor);
                    g.note(format!("{what}={:.3e}", r.normalized_residual));
                }
                Ok(())
            });
        }
    }
    g.worst_at = "lower bound 100*tol".into();
    g.worst = 100.0 * qdouble::qscalars::DEFAULT_TOL;
    g
}

fn criterion_7() -> Gauge {
    let mut g = Gauge::new();
    for kappa in [0, 1] {
        for q in q_values() {
            guarded(&mut g, "specialization", |g| {
                let p = params(q, kappa);
                let rep = FockRep::hopf(8, p)?;
                let fam = HopfFamily::canonical(kappa);
                let general = build_r(&RSpec::GeneralFamily(fam), &rep, &rep)?;
                let qd = build_r(&RSpec::QuantumDouble, &rep, &rep)?;
                let scale = qd.max_abs().max(1.0);
                g.below(
                    format!("R[q={q},kappa={kappa}]"),
                    general.max_abs_diff(&qd) / scale,
                    1e-12,
                );
                let direct = canonical_coproducts(&rep, &rep)?;
                for (gen, expect) in GENS.iter().zip(direct.iter()) {
                    let got = coproduct_op(&GenWord::letter(*gen), &rep, &rep, &fam)?;
                    let scale = expect.max_abs().max(1.0);
                    g.below(
                        format!("coproduct_{gen:?}[q={q},kappa={kappa}]"),
                        got.max_abs_diff(expect) / scale,
                        1e-12,
                    );
                }
                Ok(())
            });
        }
    }
    g
}

fn criterion_8() -> Gauge {
    let mut g = Gauge::new();
    for q in q_values() {
        guarded(&mut g, "sl2", |g| {
            let p = params(q, 0);
            let rep = FockRep::hopf(12, p)?;
            for lambda in [c(1.0), C64::new(3.0, 1.0)] {
                g.report(
                    &check_sl2(&realize_sl2(&rep, lambda)?, 10)?.param("q", q),
                    1e-12,
                );
            }
            for cp in [
                c(0.5),
                c(1.0),
                C64::new(0.3, 0.4),
                c(-0.7),
                C64::new(2.0, -1.0),
            ] {
                g.report(
                    &casimir_scalar(&FockRep::new(9, cp, p)?).param("q", q),
                    1e-12,
                );
            }
            let w = hopf_ideal_witness(8, &HopfFamily::canonical(0), &p, 4)?;
            g.above(
                format!("witness[q={q}]"),
                w.witness.normalized_residual,
                100.0 * p.tol,
            );
            g.note(format!(
                "witness[q={q}]={:.3e}",
                w.witness.normalized_residual
            ));
            g.report(&w.casimir.param("q", q), 1e-12);
            Ok(())
        });
    }
    g
}

fn criterion_9() -> Gauge {
    let mut g = Gauge::new();
    guarded(&mut g, "classical", |g| {
        let eps = 1e-6;
        let r = classical_limit_residual(12, eps)?;
        let r_half = classical_limit_residual(12, eps / 2.0)?;
        g.below("residual[eps=1e-6]", r, 1e-5);
        let ratio = r / r_half;
        g.note(format!("r(eps)/r(eps/2)={ratio:.4}"));
        if (ratio - 2.0).abs() > 0.2 * 2.0 {
            g.fail(format!(
                "halving eps scales the residual by 1/{ratio:.3}, not 1/2"
            ));
        }
        Ok(())
    });
    g
}

/// Relative deviation of two block matrices.
fn block_gap(a: &Op, b: &Op) -> f64 {
    a.max_abs_diff(b) / a.max_abs().max(1.0)
}

fn scalar_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(1.0)
}

fn criterion_10() -> Gauge {
    let mut g = Gauge::new();
    let bound = 1e-14;
    for q in q_values() {
        let p = params(q, 0);
        guarded(&mut g, "fockrep", |g| {
            for cp in [c(0.0), c(0.5)] {
                let (a, b) = (FockRep::new(12, cp, p)?, FockRep::new(24, cp, p)?);
                let ia = Window::new(8, 1).indices(&[12]);
                let ib = Window::new(8, 1).indices(&[24]);
                for (x, y) in [(a.a(), b.a()), (a.adag(), b.adag())] {
                    g.below(
                        format!("rep[q={q},c={cp}]"),
                        block_gap(&x.block(&ia), &y.block(&ib)),
                        bound,
                    );
                }
                let ca = Op::commutator(a.a(), a.adag()).block(&ia);
                let cb = Op::commutator(b.a(), b.adag()).block(&ib);
                g.below(
                    format!("commutator[q={q},c={cp}]"),
                    block_gap(&ca, &cb),
                    bound,
                );
                for rel in Relation::ALL {
                    let (ra, rb) = (a.check_relation(rel, 8)?, b.check_relation(rel, 8)?);
                    g.below(
                        format!("{}[q={q},c={cp}]", rel.key()),
                        scalar_gap(ra, rb),
                        bound,
                    );
                }
            }
            Ok(())
        });
        guarded(&mut g, "hopf", |g| {
            let sample: Vec<GenWord> = GenWord::default_sample().into_iter().take(12).collect();
            let fam = HopfFamily::canonical(0);
            let a = check_hopf_axioms(&fam, &FockRep::hopf(8, p)?, &sample, 4)?;
            let b = check_hopf_axioms(&fam, &FockRep::hopf(16, p)?, &sample, 4)?;
            for (x, y) in a.iter().zip(&b) {
                let what = format!("{}[q={q},word={}]", x.identity, x.params["word"]);
                g.below(what, scalar_gap(x.raw_residual, y.raw_residual), bound);
            }
            Ok(())
        });
        guarded(&mut g, "rmatrix", |g| {
            let fam = HopfFamily::canonical(0);
            let (a, b) = (FockRep::hopf(12, p)?, FockRep::hopf(24, p)?);
            let (ia, ib) = (
                pair_window(4, &a, &a)?.indices(&[12, 12]),
                pair_window(4, &b, &b)?.indices(&[24, 24]),
            );
            for spec in [RSpec::QuantumDouble, RSpec::YanClaimed] {
                let (ra, rb) = (build_r(&spec, &a, &a)?, build_r(&spec, &b, &b)?);
                g.below(
                    format!("R[{spec},q={q}]"),
                    block_gap(&ra.block(&ia), &rb.block(&ib)),
                    bound,
                );
                for gen in GENS {
                    let x = check_intertwiner(&spec, &fam, &a, &a, gen, 4)?;
                    let y = check_intertwiner(&spec, &fam, &b, &b, gen, 4)?;
                    g.below(
                        format!("{}[{spec},q={q}]", x.identity),
                        scalar_gap(x.raw_residual, y.raw_residual),
                        bound,
                    );
                    let x = check_yan_relation(
                        &spec,
                        &fam,
                        &a,
                        &a,
                        gen,
                        QbarBranch::FixedKappa,
                        false,
                        4,
                    )?;
                    let y = check_yan_relation(
                        &spec,
                        &fam,
                        &b,
                        &b,
                        gen,
                        QbarBranch::FixedKappa,
                        false,
                        4,
                    )?;
                    g.below(
                        format!("{}[{spec},q={q}]", x.identity),
                        scalar_gap(x.raw_residual, y.raw_residual),
                        bound,
                    );
                }
                let x = check_antipode_inverse(&spec, &fam, &a, &a, 4)?;
                let y = check_antipode_inverse(&spec, &fam, &b, &b, 4)?;
                g.below(
                    format!("antipode_inverse[{spec},q={q}]"),
                    scalar_gap(x.raw_residual, y.raw_residual),
                    bound,
                );
            }
            let (a, b) = (FockRep::hopf(4, p)?, FockRep::hopf(8, p)?);
            for spec in [RSpec::QuantumDouble, RSpec::YanClaimed] {
                let x = check_yang_baxter(&spec, [&a, &a, &a], 1, 4096)?;
                let y = check_yang_baxter(&spec, [&b, &b, &b], 1, 4096)?;
                g.below(
                    format!("yang_baxter[{spec},q={q}]"),
                    scalar_gap(x.raw_residual, y.raw_residual),
                    bound,
                );
                let xs = check_fusion(&spec, &fam, [&a, &a, &a], 1, 4096)?;
                let ys = check_fusion(&spec, &fam, [&b, &b, &b], 1, 4096)?;
                for (x, y) in xs.iter().zip(&ys) {
                    g.below(
                        format!("{}[{spec},q={q}]", x.identity),
                        scalar_gap(x.raw_residual, y.raw_residual),
                        bound,
                    );
                }
            }
            Ok(())
        });
        guarded(&mut g, "sl2", |g| {
            let (a, b) = (FockRep::hopf(12, p)?, FockRep::hopf(24, p)?);
            let x = check_sl2(&realize_sl2(&a, c(1.0))?, 10)?;
            let y = check_sl2(&realize_sl2(&b, c(1.0))?, 10)?;
            g.below(
                format!("sl2[q={q}]"),
                scalar_gap(x.raw_residual, y.raw_residual),
                bound,
            );
            let fam = HopfFamily::canonical(0);
            let x = hopf_ideal_witness(8, &fam, &p, 4)?;
            let y = hopf_ideal_witness(16, &fam, &p, 4)?;
            g.below(
                format!("witness[q={q}]"),
                scalar_gap(x.witness.raw_residual, y.witness.raw_residual),
                bound,
            );
            Ok(())
        });
    }
    g
}

type Criterion = (u32, &'static str, fn() -> Gauge);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "defining relations", criterion_1),
        (2, "hopf axioms", criterion_2),
        (3, "pairing closed form", criterion_3),
        (4, "dual bracket", criterion_4),
        (5, "quantum double R", criterion_5),
        (6, "claimed R failure", criterion_6),
        (7, "specialization", criterion_7),
        (8, "sl2 bridge", criterion_8),
        (9, "classical limit", criterion_9),
        (10, "window exactness", criterion_10),
    ];
    let strict = std::env::var("QDOUBLE_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let start = Instant::now();
    let mut unexpected = Vec::new();
    for (id, title, run) in criteria {
        let t = Instant::now();
        let g = run();
        let verdict = if g.ok { "PASS" } else { "FAIL" };
        println!(
            "criterion {id:>2} {verdict} {title} ({:.1}s): {}",
            t.elapsed().as_secs_f64(),
            g.summary()
        );
        if !g.ok && (strict || !KNOWN_UNATTAINABLE.contains(&id)) {
            unexpected.push(id);
        }
    }
    println!("total {:.1}s", start.elapsed().as_secs_f64());
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
