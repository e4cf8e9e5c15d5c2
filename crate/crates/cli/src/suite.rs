//! Suite orchestration: build the case list, run it on the worker pool, merge.

use std::path::{Path, PathBuf};
use std::time::Instant;

use qdouble::exec::map_jobs;
use qdouble::fockrep::FockRep;
use qdouble::hopfops::check_hopf_axioms;
use qdouble::qscalars::{self, c, format_complex};
use qdouble::rmatrix::{build_r, run_suite as run_rsuite, RSuiteConfig};
use qdouble::sl2bridge::{
    casimir_centrality, casimir_scalar, check_boson_triple, check_sl2, hopf_ideal_witness,
    inverse_realization, realize_sl2, NShift,
};
use qdouble::symalg::{
    dual_bracket_check, dual_hopf_check, pairing_check, pairing_gram, quotient_cross_check, SymCtx,
};
use qdouble::{
    dump, ExecPolicy, GenWord, HopfFamily, IdentityReport, Letter, RSpec, Relation, Result, C64,
};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{rspec_key, RepSpec, SuiteConfig};

/// Largest word length drawn by [`random_words`].
pub const RANDOM_WORD_MAX_LEN: usize = 4;
/// Gram table size for the pairing section.
pub const PAIRING_MAX: u32 = 3;

#[derive(Debug, Clone, PartialEq)]
enum Case {
    Scalars,
    Relations(RepSpec),
    Hopf(HopfFamily, RepSpec),
    Pairing,
    DualBracket,
    DualHopf,
    QuotientCross,
    RMatrix(RSpec),
    Sl2,
    Centrality(C64),
    Casimir(RepSpec),
    IdealWitness,
}

impl Case {
    fn section(&self) -> &'static str {
        match self {
            Case::Scalars => "qscalars",
            Case::Relations(_) => "fockrep",
            Case::Hopf(..) => "hopfops",
            Case::Pairing | Case::DualBracket | Case::DualHopf | Case::QuotientCross => "symalg",
            Case::RMatrix(_) => "rmatrix",
            _ => "sl2bridge",
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Case::Scalars => "qscalars",
            Case::Relations(_) => "relations",
            Case::Hopf(..) => "hopf_axioms",
            Case::Pairing => "pairing",
            Case::DualBracket => "dual_bracket",
            Case::DualHopf => "dual_hopf",
            Case::QuotientCross => "quotient_cross",
            Case::RMatrix(_) => "rmatrix",
            Case::Sl2 => "sl2",
            Case::Centrality(_) => "casimir_central",
            Case::Casimir(_) => "casimir_scalar",
            Case::IdealWitness => "hopf_ideal_witness",
        }
    }
}

/// `count` words of length `1..=RANDOM_WORD_MAX_LEN` over `N, a, a+, q^{hN/2}`
/// (`|h| <= 2`), determined by `seed`.
pub fn random_words(seed: u64, count: usize) -> Vec<GenWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = 1 + (rng.next_u32() as usize) % RANDOM_WORD_MAX_LEN;
            let letters = (0..len)
                .map(|_| match rng.next_u32() % 8 {
                    0 | 1 => Letter::N,
                    2 | 3 => Letter::A,
                    4 | 5 => Letter::Adag,
                    _ => Letter::QPow([-2, -1, 1, 2][(rng.next_u32() % 4) as usize]),
                })
                .collect();
            GenWord::new(letters)
        })
        .collect()
}

fn build_cases(cfg: &SuiteConfig) -> Vec<Case> {
    let mut out = vec![Case::Scalars];
    out.extend(cfg.reps.iter().map(|&r| Case::Relations(r)));
    let mut families = vec![HopfFamily::canonical(cfg.params.kappa)];
    families.extend(cfg.families.iter().copied());
    for r in cfg.reps.iter().filter(|r| r.c != c(0.0)) {
        out.extend(families.iter().map(|&f| Case::Hopf(f, *r)));
    }
    out.extend([
        Case::Pairing,
        Case::DualBracket,
        Case::DualHopf,
        Case::QuotientCross,
    ]);
    out.extend(cfg.rspecs.iter().map(|s| Case::RMatrix(*s)));
    out.push(Case::Sl2);
    out.extend([c(0.5), c(1.0)].map(Case::Centrality));
    out.extend(
        cfg.reps
            .iter()
            .filter(|r| r.c != c(0.0))
            .map(|&r| Case::Casimir(r)),
    );
    out.push(Case::IdealWitness);
    out
}

fn relations_for(rep: &RepSpec) -> &'static [Relation] {
    if rep.c == c(0.0) {
        &[
            Relation::Grading,
            Relation::ShiftedCommutator,
            Relation::QCommutator,
            Relation::QInverseCommutator,
            Relation::NumberProducts,
        ]
    } else {
        &[Relation::Grading, Relation::HalfShiftCommutator]
    }
}

fn run_case(case: &Case, cfg: &SuiteConfig, sample: &[GenWord]) -> Result<Vec<IdentityReport>> {
    let p = cfg.params;
    let pair = || FockRep::hopf(cfg.caps.pair_dim, p);
    Ok(match case {
        Case::Scalars => qscalars::self_checks(&p),
        Case::Relations(r) => {
            let rep = FockRep::new(r.dim, r.c, p)?;
            relations_for(r)
                .iter()
                .map(|&rel| rep.relation_report(rel, r.dim - 2))
                .collect::<Result<_>>()?
        }
        Case::Hopf(fam, r) => {
            let rep = FockRep::new(r.dim, r.c, p)?;
            let guard = sample.iter().map(|w| w.raising_degree()).max().unwrap_or(0);
            let max_index = cfg.window.min(r.dim.saturating_sub(guard + 1));
            check_hopf_axioms(fam, &rep, sample, max_index)?
        }
        Case::Pairing => vec![pairing_check(&SymCtx::new(p), PAIRING_MAX, PAIRING_MAX)?],
        Case::DualBracket => vec![dual_bracket_check(&SymCtx::new(p))?],
        Case::DualHopf => vec![dual_hopf_check(&SymCtx::new(p))?],
        Case::QuotientCross => vec![quotient_cross_check(&pair()?)?],
        Case::RMatrix(spec) => {
            let rcfg = RSuiteConfig {
                pair_dim: cfg.caps.pair_dim,
                pair_window: cfg.window,
                triple_dim: cfg.caps.triple_dim,
                triple_window: cfg.triple_window,
                triple_cap: cfg.caps.triple_cap,
                branch: cfg.branch,
            };
            let key = rspec_key(spec);
            run_rsuite(spec, &p, &rcfg)
                .into_iter()
                .map(|r| match cfg.expect.get(&format!("{key}.{}", r.identity)) {
                    Some(&e) if r.error.is_none() => r.expect(e),
                    _ => r,
                })
                .collect()
        }
        Case::Sl2 => {
            let rep = pair()?;
            let max_index = rep.dim() - 2;
            let triple = realize_sl2(&rep, c(1.0))?;
            let mut out = vec![check_sl2(&triple, max_index)?];
            for shift in [NShift::Quoted, NShift::Consistent] {
                let bosons = inverse_realization(&triple, c(1.0), shift)?;
                out.push(
                    check_boson_triple(&bosons, max_index, shift)?
                        .renamed(format!("sl2_inverse_{}", shift.name())),
                );
            }
            out
        }
        Case::Centrality(cp) => {
            let rep = FockRep::new(cfg.caps.pair_dim, *cp, p)?;
            vec![casimir_centrality(&rep, rep.dim() - 2)?]
        }
        Case::Casimir(r) => vec![casimir_scalar(&FockRep::new(r.dim, r.c, p)?)],
        Case::IdealWitness => {
            let d = cfg.caps.triple_dim;
            let w = hopf_ideal_witness(d, &HopfFamily::canonical(p.kappa), &p, 4.min(d - 2))?;
            vec![w.witness, w.casimir, w.counit_leg]
        }
    })
}

fn finish(mut r: IdentityReport, case: &Case, cfg: &SuiteConfig, elapsed: f64) -> IdentityReport {
    if r.error.is_none() && !matches!(case, Case::RMatrix(_)) {
        if let Some(&e) = cfg.expect.get(&r.identity) {
            r = r.expect(e);
        }
    }
    if cfg.timing {
        r.wall_time = elapsed;
    }
    r.param("section", case.section())
}

/// Every section in order: qscalars, fockrep, hopfops, symalg, rmatrix,
/// sl2bridge. Cases run on the current rayon pool; the merge preserves order.
pub fn run_suite(cfg: &SuiteConfig) -> Vec<IdentityReport> {
    let mut sample = GenWord::default_sample();
    sample.extend(random_words(cfg.seed, cfg.random_words));
    let cases = build_cases(cfg);
    let results = map_jobs(ExecPolicy::default(), &cases, |case| {
        let start = Instant::now();
        let out = run_case(case, cfg, &sample);
        (out, start.elapsed().as_secs_f64())
    });
    cases
        .iter()
        .zip(results)
        .flat_map(|(case, (out, elapsed))| {
            let reports = out.unwrap_or_else(|e| vec![IdentityReport::errored(case.name(), e)]);
            reports
                .into_iter()
                .map(move |r| finish(r, case, cfg, elapsed))
        })
        .collect()
}

fn slug(spec: &RSpec) -> String {
    match spec {
        RSpec::QuantumDouble => "quantum_double".into(),
        RSpec::YanClaimed => "yan_claimed".into(),
        RSpec::GeneralFamily(f) => format!("general_m{}_K{}_{}", f.m(), f.k(), f.sign().name()),
    }
}

fn write_dump(dir: &Path, name: &str, m: &qdouble::Op) -> std::io::Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(format!("{name}.txt"));
    std::fs::write(&path, dump::to_string(m))?;
    Ok(path)
}

/// `R` for `spec` on `rep(pair_dim) (x) rep(pair_dim)`, dumped as `R_<spec>.txt`.
pub fn dump_r(cfg: &SuiteConfig, spec: &RSpec, dir: &Path) -> std::result::Result<PathBuf, String> {
    let rep = FockRep::hopf(cfg.caps.pair_dim, cfg.params).map_err(|e| e.to_string())?;
    let r = build_r(spec, &rep, &rep).map_err(|e| e.to_string())?;
    write_dump(dir, &format!("R_{}", slug(spec)), &r).map_err(|e| format!("{}: {e}", dir.display()))
}

pub fn pairing_table(cfg: &SuiteConfig) -> Result<qdouble::Op> {
    pairing_gram(&SymCtx::new(cfg.params), PAIRING_MAX, PAIRING_MAX)
}

pub fn dump_pairing(cfg: &SuiteConfig, dir: &Path) -> std::result::Result<PathBuf, String> {
    let g = pairing_table(cfg).map_err(|e| e.to_string())?;
    write_dump(dir, "pairing_gram", &g).map_err(|e| format!("{}: {e}", dir.display()))
}

/// Text rendering of the Gram table, rows `e*_{km}` and columns `e_{ln}`.
pub fn format_pairing_table(g: &qdouble::Op) -> String {
    let n = PAIRING_MAX + 1;
    let mut out = String::from("# <e*_km, e_ln>, index = k * 4 + m\n");
    for row in 0..g.rows() {
        let (k, m) = (row as u32 / n, row as u32 % n);
        let cells: Vec<String> = (0..g.cols())
            .map(|col| format_complex(g.get(row, col)))
            .collect();
        out.push_str(&format!("k={k} m={m}: {}\n", cells.join(" ")));
    }
    out
}
