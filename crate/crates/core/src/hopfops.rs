//! Hopf-structure operators on tensor products of truncated representations.
//!
//! The general family is parametrized by a half-integer `m`, an integer `K`
//! and a sign; with `beta = i pi (2K+1) / (2 gamma)` it reads
//!
//! ```text
//! D(N)  = N (x) 1 + 1 (x) N + beta
//! D(a)  = (a (x) q^{mN} + s q^{pN} (x) a) q^{m beta}
//! D(a+) = (a+ (x) q^{-pN} + s q^{-mN} (x) a+) q^{-p beta}
//! ```
//!
//! with `p = m + 1` (upper) or `m - 1` (lower) and `s = +-(-1)^K i`. The
//! canonical structure is `m = 1/2`, `K = -2 kappa - 1`, lower sign. Note
//! `q^{t beta} = exp(i pi (2K+1) t / 2)` does not depend on `gamma`.
//!
//! Two independent routes build `D(w)` for a word `w`: the matrix route
//! multiplies letter coproduct matrices (with `D(q^{sN})` taken as the
//! exponential of the diagonal of `D(N)`), and the Sweedler route expands
//! `w` into explicit summands `X (x) Y`. The axiom checks use the Sweedler
//! route because the multiplication map `X (x) Y -> XY` is not expressible
//! by conjugation.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::fockrep::{FockRep, Window};
use crate::op::{Op, Shape};
use crate::qscalars::{c, DeformParams, C64, I, ONE, ZERO};
use crate::report::IdentityReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Upper,
    Lower,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Upper => 1.0,
            Sign::Lower => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sign::Upper => "upper",
            Sign::Lower => "lower",
        }
    }

    pub fn parse(text: &str) -> Option<Sign> {
        match text {
            "upper" | "+" => Some(Sign::Upper),
            "lower" | "-" => Some(Sign::Lower),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HopfFamily {
    twice_m: i32,
    k: i64,
    sign: Sign,
}

impl HopfFamily {
    pub fn new(m: f64, k: i64, sign: Sign) -> Result<Self> {
        let twice = 2.0 * m;
        if !(twice.is_finite() && twice.fract() == 0.0) {
            return Err(Error::Param(format!(
                "m = {m} is not an integer or half-integer"
            )));
        }
        Ok(Self {
            twice_m: twice as i32,
            k,
            sign,
        })
    }

    /// The structure reproducing the canonical coproduct for branch `kappa`.
    pub fn canonical(kappa: i64) -> Self {
        Self {
            twice_m: 1,
            k: -2 * kappa - 1,
            sign: Sign::Lower,
        }
    }

    pub fn m(&self) -> f64 {
        self.twice_m as f64 / 2.0
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// `m +- 1`.
    pub fn p(&self) -> f64 {
        self.m() + self.sign.value()
    }

    /// `beta = i pi (2K+1) / (2 gamma)`.
    pub fn beta(&self, params: &DeformParams) -> C64 {
        I * (PI * (2 * self.k + 1) as f64) / (params.gamma * 2.0)
    }

    /// `q^{t beta}`.
    pub fn q_beta(&self, t: f64) -> C64 {
        C64::from_polar(1.0, PI * (2 * self.k + 1) as f64 * t / 2.0)
    }

    /// `+-(-1)^K i`.
    pub fn mixing(&self) -> C64 {
        let parity = if self.k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        I * (self.sign.value() * parity)
    }

    /// The family with `K -> -K - 1`, i.e. `2K + 1 -> -(2K + 1)`.
    pub fn reflected(&self) -> Self {
        Self {
            k: -self.k - 1,
            ..*self
        }
    }

    pub fn label(&self) -> String {
        format!("m={},K={},{}", self.m(), self.k, self.sign.name())
    }
}

/// Generator letters. `QPow(h)` is `q^{h N / 2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    N,
    A,
    Adag,
    QPow(i32),
}

impl Letter {
    fn raises(&self) -> usize {
        matches!(self, Letter::Adag) as usize
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::N => write!(f, "N"),
            Letter::A => write!(f, "a"),
            Letter::Adag => write!(f, "adag"),
            Letter::QPow(h) => write!(f, "q^({}N/2)", h),
        }
    }
}

/// A word in the generators with a scalar prefactor.
#[derive(Debug, Clone, PartialEq)]
pub struct GenWord {
    pub coef: C64,
    pub letters: Vec<Letter>,
}

impl GenWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self { coef: ONE, letters }
    }

    pub fn identity() -> Self {
        Self::new(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Self::new(vec![l])
    }

    pub fn scaled(mut self, s: C64) -> Self {
        self.coef *= s;
        self
    }

    pub fn concat(&self, other: &GenWord) -> GenWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        GenWord {
            coef: self.coef * other.coef,
            letters,
        }
    }

    /// Number of raising letters, the window guard of the word.
    pub fn raising_degree(&self) -> usize {
        self.letters.iter().map(Letter::raises).sum()
    }

    /// Parse a space- or `*`-separated word such as `a adag N`.
    pub fn parse(text: &str) -> std::result::Result<GenWord, String> {
        let letters = text
            .split(|ch: char| ch.is_whitespace() || ch == '*' || ch == '.')
            .filter(|t| !t.is_empty())
            .map(|t| match t {
                "N" => Ok(Letter::N),
                "a" => Ok(Letter::A),
                "adag" | "a+" => Ok(Letter::Adag),
                other => Err(format!("unknown generator `{other}`")),
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(GenWord::new(letters))
    }

    /// Generators plus every word of length 2 and 3 in `{N, a, adag}`.
    pub fn default_sample() -> Vec<GenWord> {
        let gens = [Letter::N, Letter::A, Letter::Adag];
        let mut out = Vec::new();
        let mut frontier: Vec<Vec<Letter>> = vec![Vec::new()];
        for _ in 0..3 {
            frontier = frontier
                .iter()
                .flat_map(|w| {
                    gens.iter().map(move |&g| {
                        let mut next = w.clone();
                        next.push(g);
                        next
                    })
                })
                .collect();
            out.extend(frontier.iter().cloned().map(GenWord::new));
        }
        out
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// One Sweedler summand `coef * X_1 (x) ... (x) X_r`.
#[derive(Debug, Clone, PartialEq)]
pub struct Summand {
    pub coef: C64,
    pub legs: Vec<Vec<Letter>>,
}

/// Matrix of a letter string in `rep`, with `q`-powers taken under `params`.
pub fn letters_matrix(letters: &[Letter], rep: &FockRep, params: &DeformParams) -> Op {
    let mut out = rep.identity();
    for l in letters {
        let m = match l {
            Letter::N => rep.n().clone(),
            Letter::A => rep.a().clone(),
            Letter::Adag => rep.adag().clone(),
            Letter::QPow(h) => rep.q_pow_n(c(*h as f64 / 2.0), params),
        };
        out = out.matmul(&m);
    }
    out
}

pub fn word_matrix(w: &GenWord, rep: &FockRep) -> Op {
    letters_matrix(&w.letters, rep, rep.params()).scale(w.coef)
}

/// Two-leg expansion of a single letter.
pub fn letter_coproduct(l: Letter, fam: &HopfFamily, params: &DeformParams) -> Vec<Summand> {
    let s = |coef: C64, left: Vec<Letter>, right: Vec<Letter>| Summand {
        coef,
        legs: vec![left, right],
    };
    let m2 = fam.twice_m;
    let p2 = (2.0 * fam.p()) as i32;
    match l {
        Letter::N => vec![
            s(ONE, vec![Letter::N], vec![]),
            s(ONE, vec![], vec![Letter::N]),
            s(fam.beta(params), vec![], vec![]),
        ],
        Letter::QPow(h) => vec![s(
            fam.q_beta(h as f64 / 2.0),
            vec![Letter::QPow(h)],
            vec![Letter::QPow(h)],
        )],
        Letter::A => {
            let phase = fam.q_beta(fam.m());
            vec![
                s(phase, vec![Letter::A], vec![Letter::QPow(m2)]),
                s(
                    phase * fam.mixing(),
                    vec![Letter::QPow(p2)],
                    vec![Letter::A],
                ),
            ]
        }
        Letter::Adag => {
            let phase = fam.q_beta(-fam.p());
            vec![
                s(phase, vec![Letter::Adag], vec![Letter::QPow(-p2)]),
                s(
                    phase * fam.mixing(),
                    vec![Letter::QPow(-m2)],
                    vec![Letter::Adag],
                ),
            ]
        }
    }
}

fn multiply_sums(lhs: &[Summand], rhs: &[Summand]) -> Vec<Summand> {
    let mut out = Vec::with_capacity(lhs.len() * rhs.len());
    for x in lhs {
        for y in rhs {
            let legs = x
                .legs
                .iter()
                .zip(&y.legs)
                .map(|(a, b)| {
                    let mut leg = a.clone();
                    leg.extend_from_slice(b);
                    leg
                })
                .collect();
            out.push(Summand {
                coef: x.coef * y.coef,
                legs,
            });
        }
    }
    out
}

/// Sweedler expansion of `D(w)`.
pub fn word_coproduct(w: &GenWord, fam: &HopfFamily, params: &DeformParams) -> Vec<Summand> {
    let unit = vec![Summand {
        coef: w.coef,
        legs: vec![Vec::new(), Vec::new()],
    }];
    w.letters.iter().fold(unit, |acc, &l| {
        multiply_sums(&acc, &letter_coproduct(l, fam, params))
    })
}

/// Apply `D` to leg `leg` of every summand (the leg splits in two).
pub fn coproduct_on_leg(
    sums: &[Summand],
    leg: usize,
    fam: &HopfFamily,
    params: &DeformParams,
) -> Vec<Summand> {
    let mut out = Vec::new();
    for s in sums {
        for split in word_coproduct(&GenWord::new(s.legs[leg].clone()), fam, params) {
            let mut legs = Vec::with_capacity(s.legs.len() + 1);
            legs.extend_from_slice(&s.legs[..leg]);
            legs.extend(split.legs);
            legs.extend_from_slice(&s.legs[leg + 1..]);
            out.push(Summand {
                coef: s.coef * split.coef,
                legs,
            });
        }
    }
    out
}

/// Counit of a letter string.
pub fn counit_letters(letters: &[Letter], fam: &HopfFamily, params: &DeformParams) -> C64 {
    letters
        .iter()
        .map(|l| match l {
            Letter::N => -fam.beta(params),
            Letter::A | Letter::Adag => ZERO,
            Letter::QPow(h) => fam.q_beta(-(*h as f64) / 2.0),
        })
        .product()
}

pub fn counit(w: &GenWord, fam: &HopfFamily, params: &DeformParams) -> C64 {
    w.coef * counit_letters(&w.letters, fam, params)
}

fn antipode_letter(l: Letter, fam: &HopfFamily, params: &DeformParams) -> Vec<GenWord> {
    let m2 = fam.twice_m;
    let p2 = (2.0 * fam.p()) as i32;
    match l {
        Letter::N => vec![
            GenWord::letter(Letter::N).scaled(c(-1.0)),
            GenWord::identity().scaled(fam.beta(params) * -2.0),
        ],
        Letter::QPow(h) => vec![GenWord::letter(Letter::QPow(-h)).scaled(fam.q_beta(-(h as f64)))],
        Letter::A => vec![
            GenWord::new(vec![Letter::QPow(-p2), Letter::A, Letter::QPow(-m2)])
                .scaled(fam.mixing() * fam.q_beta(-2.0 * fam.m())),
        ],
        Letter::Adag => vec![
            GenWord::new(vec![Letter::QPow(m2), Letter::Adag, Letter::QPow(p2)])
                .scaled(fam.mixing() * fam.q_beta(2.0 * fam.p())),
        ],
    }
}

/// `S(w)` as a linear combination of words (letter order reversed).
pub fn antipode_word(w: &GenWord, fam: &HopfFamily, params: &DeformParams) -> Vec<GenWord> {
    let mut acc = vec![GenWord::identity().scaled(w.coef)];
    for &l in w.letters.iter().rev() {
        let images = antipode_letter(l, fam, params);
        acc = acc
            .iter()
            .flat_map(|x| images.iter().map(move |y| x.concat(y)))
            .collect();
    }
    acc
}

pub fn antipode_op(w: &GenWord, rep: &FockRep, fam: &HopfFamily) -> Op {
    let mut out = Op::zeros(rep.dim(), rep.dim());
    for term in antipode_word(w, fam, rep.params()) {
        out.add_scaled(ONE, &word_matrix(&term, rep));
    }
    out
}

fn shared_params(reps: &[&FockRep]) -> Result<DeformParams> {
    let first = *reps[0].params();
    for r in &reps[1..] {
        if *r.params() != first {
            return Err(Error::Param(
                "tensor factors carry different deformation parameters".into(),
            ));
        }
    }
    Ok(first)
}

/// Letter coproduct matrices (matrix route), cached per letter.
struct LetterCoproducts<'a> {
    rep1: &'a FockRep,
    rep2: &'a FockRep,
    fam: HopfFamily,
    params: DeformParams,
    cache: HashMap<Letter, Op>,
}

impl<'a> LetterCoproducts<'a> {
    fn delta_n_diag(&self) -> Vec<C64> {
        let beta = self.fam.beta(&self.params);
        let l1 = self.rep1.levels();
        let l2 = self.rep2.levels();
        l1.iter()
            .flat_map(|&x| l2.iter().map(move |&y| x + y + beta))
            .collect()
    }

    fn get(&mut self, l: Letter) -> &Op {
        if !self.cache.contains_key(&l) {
            let (r1, r2, p, fam) = (self.rep1, self.rep2, &self.params, &self.fam);
            let op = match l {
                Letter::N => Op::from_diag(&self.delta_n_diag()),
                Letter::QPow(h) => {
                    let t = h as f64 / 2.0;
                    let diag: Vec<C64> = self
                        .delta_n_diag()
                        .into_iter()
                        .map(|x| p.q_power(x * t))
                        .collect();
                    Op::from_diag(&diag)
                }
                Letter::A => {
                    let mut op = r1.a().kron(&r2.q_pow_n(c(fam.m()), p));
                    op.add_scaled(fam.mixing(), &r1.q_pow_n(c(fam.p()), p).kron(r2.a()));
                    op.scale(fam.q_beta(fam.m()))
                }
                Letter::Adag => {
                    let mut op = r1.adag().kron(&r2.q_pow_n(c(-fam.p()), p));
                    op.add_scaled(fam.mixing(), &r1.q_pow_n(c(-fam.m()), p).kron(r2.adag()));
                    op.scale(fam.q_beta(-fam.p()))
                }
            };
            self.cache.insert(l, op);
        }
        &self.cache[&l]
    }
}

fn coproduct_with(
    w: &GenWord,
    rep1: &FockRep,
    rep2: &FockRep,
    fam: &HopfFamily,
    params: DeformParams,
) -> Op {
    let mut builder = LetterCoproducts {
        rep1,
        rep2,
        fam: *fam,
        params,
        cache: HashMap::new(),
    };
    let dim = rep1.dim() * rep2.dim();
    let mut out = Op::identity(dim);
    for &l in &w.letters {
        out = out.matmul(builder.get(l));
    }
    out.scale(w.coef)
}

/// `D(w)` on `rep1 (x) rep2` via the matrix route.
pub fn coproduct_op(w: &GenWord, rep1: &FockRep, rep2: &FockRep, fam: &HopfFamily) -> Result<Op> {
    let params = shared_params(&[rep1, rep2])?;
    Ok(coproduct_with(w, rep1, rep2, fam, params))
}

/// `D(w)` from the explicit Sweedler summands.
pub fn coproduct_op_sweedler(
    w: &GenWord,
    rep1: &FockRep,
    rep2: &FockRep,
    fam: &HopfFamily,
) -> Result<Op> {
    let params = shared_params(&[rep1, rep2])?;
    Ok(sum_of_krons(
        &word_coproduct(w, fam, &params),
        &[rep1, rep2],
        &params,
    ))
}

pub fn swap_op(op: &Op, d1: usize, d2: usize) -> Op {
    op.permute_legs(&[d1, d2], &[1, 0])
}

/// `T D(w)`: the coproduct computed on `rep2 (x) rep1`, conjugated back by
/// the tensor swap so that it acts on `rep1 (x) rep2`.
pub fn opposite_coproduct_op(
    w: &GenWord,
    rep1: &FockRep,
    rep2: &FockRep,
    fam: &HopfFamily,
) -> Result<Op> {
    let op = coproduct_op(w, rep2, rep1, fam)?;
    Ok(swap_op(&op, rep2.dim(), rep1.dim()))
}

/// How the branch integer is treated when `q -> q^{-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QbarBranch {
    /// Keep `kappa` (hence `alpha` and `K`); `gamma -> -gamma`.
    #[default]
    FixedKappa,
    /// Also send `K -> -K - 1`, which keeps `i alpha / gamma` invariant.
    Reflected,
}

impl QbarBranch {
    pub fn name(self) -> &'static str {
        match self {
            QbarBranch::FixedKappa => "fixed_kappa",
            QbarBranch::Reflected => "reflected",
        }
    }
}

/// The coproduct with `q -> q^{-1}`, applied to the same representation
/// matrices of `N, a, a+`.
pub fn qbar_coproduct_op(
    w: &GenWord,
    rep1: &FockRep,
    rep2: &FockRep,
    fam: &HopfFamily,
    branch: QbarBranch,
) -> Result<Op> {
    let params = shared_params(&[rep1, rep2])?.inverted();
    let fam = match branch {
        QbarBranch::FixedKappa => *fam,
        QbarBranch::Reflected => fam.reflected(),
    };
    Ok(coproduct_with(w, rep1, rep2, &fam, params))
}

fn sum_of_krons(sums: &[Summand], reps: &[&FockRep], params: &DeformParams) -> Op {
    let dims: Vec<usize> = reps.iter().map(|r| r.dim()).collect();
    let size = Shape::new(&dims).size();
    let mut out = Op::zeros(size, size);
    let mut cache: HashMap<(usize, Vec<Letter>), Op> = HashMap::new();
    for s in sums {
        let mats: Vec<Op> = s
            .legs
            .iter()
            .enumerate()
            .map(|(i, leg)| {
                cache
                    .entry((i, leg.clone()))
                    .or_insert_with(|| letters_matrix(leg, reps[i], params))
                    .clone()
            })
            .collect();
        let refs: Vec<&Op> = mats.iter().collect();
        out.add_scaled(s.coef, &Op::kron_all(&refs));
    }
    out
}

/// `D_n(w) = (D (x) 1^{(n-1)}) D_{n-1}(w)` on `reps[0] (x) ... (x) reps[n]`.
pub fn iterated_coproduct(
    w: &GenWord,
    reps: &[FockRep],
    fam: &HopfFamily,
    max_dim: usize,
) -> Result<Op> {
    if reps.len() < 2 {
        return Err(Error::Dimension(
            "iterated coproduct needs n >= 1 (two factors)".into(),
        ));
    }
    let refs: Vec<&FockRep> = reps.iter().collect();
    let params = shared_params(&refs)?;
    let dim: usize = reps.iter().map(|r| r.dim()).product();
    if dim > max_dim {
        return Err(Error::Cap { dim, cap: max_dim });
    }
    let mut sums = word_coproduct(w, fam, &params);
    for _ in 2..reps.len() {
        sums = coproduct_on_leg(&sums, 0, fam, &params);
    }
    Ok(sum_of_krons(&sums, &refs, &params))
}

/// The canonical coproducts of `N, a, a+`, written out directly.
pub fn canonical_coproducts(rep1: &FockRep, rep2: &FockRep) -> Result<[Op; 3]> {
    let p = shared_params(&[rep1, rep2])?;
    let (i1, i2) = (rep1.identity(), rep2.identity());
    let mut dn = rep1.n().kron(&i2);
    dn.add_scaled(ONE, &i1.kron(rep2.n()));
    dn.add_scaled(-p.offset(), &i1.kron(&i2));
    let phase = p.phase(-0.5);
    let half = |r: &FockRep, s: f64| r.q_pow_n(c(s), &p);
    let mut da = rep1.a().kron(&half(rep2, 0.5));
    da.add_scaled(I, &half(rep1, -0.5).kron(rep2.a()));
    let mut dad = rep1.adag().kron(&half(rep2, 0.5));
    dad.add_scaled(I, &half(rep1, -0.5).kron(rep2.adag()));
    Ok([dn, da.scale(phase), dad.scale(phase)])
}

/// Window block of `sum coef * X_1 (x) ... (x) X_r`, one rep per leg.
fn windowed_sum(sums: &[Summand], rep: &FockRep, idx: &[usize]) -> Op {
    let legs = sums.first().map_or(1, |s| s.legs.len());
    let block_dim = idx.len();
    let size = block_dim.pow(legs as u32);
    let mut out = Op::zeros(size, size);
    let mut cache: HashMap<Vec<Letter>, Op> = HashMap::new();
    for s in sums {
        let blocks: Vec<Op> = s
            .legs
            .iter()
            .map(|leg| {
                cache
                    .entry(leg.clone())
                    .or_insert_with(|| letters_matrix(leg, rep, rep.params()).block(idx))
                    .clone()
            })
            .collect();
        let refs: Vec<&Op> = blocks.iter().collect();
        out.add_scaled(s.coef, &Op::kron_all(&refs));
    }
    out
}

fn relative(diff: &Op, rhs: &Op) -> (f64, f64) {
    let raw = diff.frobenius();
    (raw, raw / rhs.frobenius().max(1.0))
}

/// Residuals of the Hopf axioms for every word in `sample`, restricted to
/// states `<= max_index` of `rep`.
pub fn check_hopf_axioms(
    fam: &HopfFamily,
    rep: &FockRep,
    sample: &[GenWord],
    max_index: usize,
) -> Result<Vec<IdentityReport>> {
    if sample.is_empty() {
        return Err(Error::Param("empty word sample".into()));
    }
    let params = *rep.params();
    let tol = params.tol;
    let mut out = Vec::new();
    for w in sample {
        let window = Window::new(max_index, w.raising_degree());
        window.validate(rep.dim())?;
        let idx = window.indices(&[rep.dim()]);
        let target = word_matrix(w, rep).block(&idx);
        let sums = word_coproduct(w, fam, &params);
        let tag = |name: &str, (raw, norm): (f64, f64)| {
            IdentityReport::new(name, raw, norm, tol)
                .param("family", fam.label())
                .param("word", w)
                .dims(&[rep.dim()])
                .window(window.max_index, window.guard)
        };

        let left = coproduct_on_leg(&sums, 0, fam, &params);
        let right = coproduct_on_leg(&sums, 1, fam, &params);
        let l3 = windowed_sum(&left, rep, &idx);
        let r3 = windowed_sum(&right, rep, &idx);
        out.push(tag("hopf_coassociativity", relative(&(&l3 - &r3), &r3)));

        let mut eps_left = Op::zeros(idx.len(), idx.len());
        let mut eps_right = Op::zeros(idx.len(), idx.len());
        let mut s_left = Op::zeros(rep.dim(), rep.dim());
        let mut s_right = Op::zeros(rep.dim(), rep.dim());
        for s in &sums {
            let (x, y) = (&s.legs[0], &s.legs[1]);
            let xm = letters_matrix(x, rep, &params);
            let ym = letters_matrix(y, rep, &params);
            eps_left.add_scaled(s.coef * counit_letters(x, fam, &params), &ym.block(&idx));
            eps_right.add_scaled(s.coef * counit_letters(y, fam, &params), &xm.block(&idx));
            for term in antipode_word(&GenWord::new(x.clone()), fam, &params) {
                s_left.add_scaled(s.coef, &word_matrix(&term, rep).matmul(&ym));
            }
            for term in antipode_word(&GenWord::new(y.clone()), fam, &params) {
                s_right.add_scaled(s.coef, &xm.matmul(&word_matrix(&term, rep)));
            }
        }
        out.push(tag(
            "hopf_counit_left",
            relative(&(&eps_left - &target), &target),
        ));
        out.push(tag(
            "hopf_counit_right",
            relative(&(&eps_right - &target), &target),
        ));
        let unit = Op::identity(idx.len()).scale(counit(w, fam, &params));
        out.push(tag(
            "hopf_antipode_left",
            relative(&(&s_left.block(&idx) - &unit), &unit),
        ));
        out.push(tag(
            "hopf_antipode_right",
            relative(&(&s_right.block(&idx) - &unit), &unit),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(q: C64, d: usize) -> (DeformParams, FockRep) {
        let p = DeformParams::new(q, 0).unwrap();
        (p, FockRep::hopf(d, p).unwrap())
    }

    fn w(text: &str) -> GenWord {
        GenWord::parse(text).unwrap()
    }

    #[test]
    fn canonical_family_constants() {
        let p = DeformParams::new(c(1.3), 0).unwrap();
        for kappa in [0, 1, -1] {
            let fam = HopfFamily::canonical(kappa);
            let pk = DeformParams::new(c(1.3), kappa).unwrap();
            assert!((fam.beta(&pk) + pk.offset()).norm() < 1e-14);
            assert!((fam.q_beta(0.5) - pk.phase(-0.5)).norm() < 1e-14);
            assert!((fam.q_beta(0.5) - fam.q_beta(-fam.p())).norm() < 1e-14);
        }
        assert!(HopfFamily::new(0.3, 0, Sign::Upper).is_err());
        let _ = p;
    }

    #[test]
    fn coproduct_of_n_is_shifted_sum() {
        let (p, rep) = setup(c(1.3), 4);
        let fam = HopfFamily::canonical(0);
        let dn = coproduct_op(&w("N"), &rep, &rep, &fam).unwrap();
        assert!(dn.is_diagonal());
        for (idx, v) in dn.diagonal().into_iter().enumerate() {
            let (n1, n2) = (idx / 4, idx % 4);
            let expect = c(n1 as f64 + n2 as f64 + 1.0) - p.offset();
            assert!((v - expect).norm() < 1e-13);
        }
    }

    #[test]
    fn family_matches_canonical_builders() {
        for kappa in [0, 1] {
            let p = DeformParams::new(C64::new(0.7, 0.2), kappa).unwrap();
            let rep = FockRep::hopf(5, p).unwrap();
            let fam = HopfFamily::canonical(kappa);
            let direct = canonical_coproducts(&rep, &rep).unwrap();
            for (gen, d) in ["N", "a", "adag"].iter().zip(&direct) {
                let via = coproduct_op(&w(gen), &rep, &rep, &fam).unwrap();
                assert!(via.max_abs_diff(d) < 1e-12, "{gen} kappa={kappa}");
            }
        }
    }

    #[test]
    fn matrix_and_sweedler_routes_agree() {
        let (_, rep) = setup(C64::new(0.7, 0.2), 5);
        for fam in [
            HopfFamily::canonical(0),
            HopfFamily::new(1.0, 0, Sign::Upper).unwrap(),
            HopfFamily::new(-0.5, 1, Sign::Lower).unwrap(),
        ] {
            for word in GenWord::default_sample().iter().take(12) {
                let a = coproduct_op(word, &rep, &rep, &fam).unwrap();
                let b = coproduct_op_sweedler(word, &rep, &rep, &fam).unwrap();
                assert!(a.max_abs_diff(&b) < 1e-12 * a.max_abs().max(1.0));
            }
        }
    }

    #[test]
    fn homomorphism_by_construction() {
        let (_, rep) = setup(c(1.3), 5);
        let fam = HopfFamily::canonical(0);
        let prod = coproduct_op(&w("a adag"), &rep, &rep, &fam).unwrap();
        let a = coproduct_op(&w("a"), &rep, &rep, &fam).unwrap();
        let ad = coproduct_op(&w("adag"), &rep, &rep, &fam).unwrap();
        assert!(prod.max_abs_diff(&a.matmul(&ad)) < 1e-13);
    }

    #[test]
    fn counit_values() {
        let p = DeformParams::new(c(1.3), 0).unwrap();
        let fam = HopfFamily::canonical(0);
        assert_eq!(counit(&w("a"), &fam, &p), ZERO);
        assert!((counit(&w("N"), &fam, &p) - p.offset()).norm() < 1e-14);
        assert_eq!(counit(&w("a adag"), &fam, &p), ZERO);
        assert_eq!(counit(&GenWord::identity(), &fam, &p), ONE);
    }

    #[test]
    fn antipode_examples() {
        let (p, rep) = setup(c(1.3), 6);
        let fam = HopfFamily::canonical(0);
        let sa = antipode_op(&w("a"), &rep, &fam);
        let expect = rep.a().scale(-p.q_power_re(-0.5));
        assert!(sa.max_abs_diff(&expect) < 1e-13);
        let sad = antipode_op(&w("adag"), &rep, &fam);
        assert!(sad.max_abs_diff(&rep.adag().scale(-p.q_power_re(0.5))) < 1e-13);
        let sn = antipode_op(&w("N"), &rep, &fam);
        let mut expect_n = rep.n().scale(c(-1.0));
        expect_n.add_scaled(p.offset() * 2.0, &rep.identity());
        assert!(sn.max_abs_diff(&expect_n) < 1e-13);
        // antihomomorphism
        let sprod = antipode_op(&w("a adag"), &rep, &fam);
        assert!(sprod.max_abs_diff(&sad.matmul(&sa)) < 1e-12);
        // S^2(a) = q^{-1} a
        let twice: Op = antipode_word(&w("a"), &fam, &p)
            .iter()
            .map(|t| antipode_op(t, &rep, &fam))
            .fold(Op::zeros(6, 6), |acc, m| &acc + &m);
        assert!(twice.max_abs_diff(&rep.a().scale(c(1.0 / 1.3))) < 1e-13);
    }

    #[test]
    fn counit_of_antipode() {
        let p = DeformParams::new(C64::new(0.7, 0.2), 0).unwrap();
        for fam in [
            HopfFamily::canonical(0),
            HopfFamily::new(1.0, 1, Sign::Upper).unwrap(),
        ] {
            for word in GenWord::default_sample() {
                let lhs: C64 = antipode_word(&word, &fam, &p)
                    .iter()
                    .map(|t| counit(t, &fam, &p))
                    .sum();
                assert!((lhs - counit(&word, &fam, &p)).norm() < 1e-12, "{word}");
            }
        }
    }

    #[test]
    fn opposite_and_swap() {
        let (_, rep) = setup(c(1.3), 4);
        let fam = HopfFamily::canonical(0);
        let dn = coproduct_op(&w("N"), &rep, &rep, &fam).unwrap();
        let tdn = opposite_coproduct_op(&w("N"), &rep, &rep, &fam).unwrap();
        assert!(dn.max_abs_diff(&tdn) < 1e-15);
        let da = coproduct_op(&w("a"), &rep, &rep, &fam).unwrap();
        let tda = opposite_coproduct_op(&w("a"), &rep, &rep, &fam).unwrap();
        assert_eq!(tda, swap_op(&da, 4, 4));
        assert_eq!(swap_op(&swap_op(&da, 4, 4), 4, 4), da);
    }

    #[test]
    fn qbar_flips_constant() {
        let (p, rep) = setup(c(1.3), 4);
        let fam = HopfFamily::canonical(0);
        let dn = qbar_coproduct_op(&w("N"), &rep, &rep, &fam, QbarBranch::FixedKappa).unwrap();
        assert!((dn.get(0, 0) - (c(1.0) + p.offset())).norm() < 1e-13);
        let reflected =
            qbar_coproduct_op(&w("N"), &rep, &rep, &fam, QbarBranch::Reflected).unwrap();
        assert!((reflected.get(0, 0) - (c(1.0) - p.offset())).norm() < 1e-13);
        // a: (a (x) q^{-N/2} + i q^{N/2} (x) a) e^{-i alpha/2}
        let da = qbar_coproduct_op(&w("a"), &rep, &rep, &fam, QbarBranch::FixedKappa).unwrap();
        let mut expect = rep.a().kron(&rep.q_pow_n(c(-0.5), &p));
        expect.add_scaled(I, &rep.q_pow_n(c(0.5), &p).kron(rep.a()));
        assert!(da.max_abs_diff(&expect.scale(p.phase(-0.5))) < 1e-13);
    }

    #[test]
    fn iterated_examples() {
        let (p, rep) = setup(c(1.3), 3);
        let fam = HopfFamily::canonical(0);
        let reps = vec![rep.clone(), rep.clone()];
        let one = iterated_coproduct(&w("a"), &reps, &fam, 1000).unwrap();
        assert!(one.max_abs_diff(&coproduct_op(&w("a"), &rep, &rep, &fam).unwrap()) < 1e-14);
        let triple = vec![rep.clone(), rep.clone(), rep.clone()];
        let n3 = iterated_coproduct(&w("N"), &triple, &fam, 1000).unwrap();
        let i = rep.identity();
        let mut expect = Op::kron_all(&[rep.n(), &i, &i]);
        expect.add_scaled(ONE, &Op::kron_all(&[&i, rep.n(), &i]));
        expect.add_scaled(ONE, &Op::kron_all(&[&i, &i, rep.n()]));
        expect.add_scaled(-p.offset() * 2.0, &Op::identity(27));
        assert!(n3.max_abs_diff(&expect) < 1e-13);
        assert!(matches!(
            iterated_coproduct(&w("N"), &triple, &fam, 26),
            Err(Error::Cap { .. })
        ));
    }

    #[test]
    fn axiom_examples() {
        let (_, rep) = setup(c(1.3), 8);
        let fam = HopfFamily::canonical(0);
        let sample = vec![w("N"), w("a"), w("a adag")];
        let reports = check_hopf_axioms(&fam, &rep, &sample, 4).unwrap();
        assert_eq!(reports.len(), 15);
        for r in &reports {
            assert!(
                r.normalized_residual <= 1e-12,
                "{} {:?}",
                r.identity,
                r.params
            );
        }
        assert!(check_hopf_axioms(&fam, &rep, &sample, 7).is_err());
        assert!(check_hopf_axioms(&fam, &rep, &[], 2).is_err());
    }

    #[test]
    fn word_parsing() {
        assert_eq!(
            w("a adag N").letters,
            vec![Letter::A, Letter::Adag, Letter::N]
        );
        assert_eq!(w("a*a+").letters, vec![Letter::A, Letter::Adag]);
        assert!(GenWord::parse("b").is_err());
        assert_eq!(GenWord::default_sample().len(), 39);
        assert_eq!(w("adag a adag").raising_degree(), 2);
    }
}
