//! Truncated Fock-space representations of the q-boson algebra and the
//! leak-free window policy.
//!
//! The representation with parameter `c` acts on `|n>`, `n = 0..D-1`, by
//!
//! ```text
//! N |n>  = (n + c) |n>
//! a |n>  = ([n + c - 1/2] - [c - 1/2])^{1/2} |n - 1>
//! a+ |n> = ([n + c + 1/2] - [c - 1/2])^{1/2} |n + 1>
//! ```
//!
//! `c = 0` is the standard Fock space, `c = 1/2` the space compatible with
//! the Hopf structure. Matrices are never cut: the truncation only drops
//! `a+ |D-1>`. An entry of a product of `D`-dimensional matrices is exact as
//! long as no path through the product visits a state above `D - 1`; checks
//! therefore restrict to rows and columns `<= W` with `W + guard <= D - 1`,
//! where `guard` bounds the total raising done by the operator word.

use crate::error::{Error, Result};
use crate::op::{Op, Shape};
use crate::qscalars::{c, DeformParams, C64};
use crate::report::IdentityReport;

#[derive(Debug, Clone, PartialEq)]
pub struct FockRep {
    dim: usize,
    c: C64,
    mat_n: Op,
    mat_a: Op,
    mat_adag: Op,
    params: DeformParams,
}

/// Per-factor window bookkeeping: states `0..=max_index` are inspected,
/// `guard` is the cumulative raising degree of the word under test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub max_index: usize,
    pub guard: usize,
}

impl Window {
    pub fn new(max_index: usize, guard: usize) -> Self {
        Self { max_index, guard }
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        if dim == 0 || self.max_index + self.guard > dim - 1 {
            return Err(Error::Window {
                max_index: self.max_index,
                guard: self.guard,
                dim,
                top: dim.saturating_sub(1),
            });
        }
        Ok(())
    }

    pub fn validate_all(&self, dims: &[usize]) -> Result<()> {
        dims.iter().try_for_each(|&d| self.validate(d))
    }

    /// Flat indices of the window in a tensor product with factors `dims`.
    pub fn indices(&self, dims: &[usize]) -> Vec<usize> {
        Shape::new(dims).box_indices(self.max_index)
    }

    /// Largest window not exceeding `requested` that fits `dim` when the guard
    /// grows as `guard_per_index * W + guard_const`.
    pub fn fit(
        requested: usize,
        dim: usize,
        guard_per_index: usize,
        guard_const: usize,
    ) -> Result<Self> {
        let top = dim.saturating_sub(1);
        let mut w = requested;
        loop {
            let guard = guard_per_index * w + guard_const;
            if w + guard <= top {
                return Ok(Window::new(w, guard));
            }
            if w == 0 {
                return Err(Error::Window {
                    max_index: 0,
                    guard,
                    dim,
                    top,
                });
            }
            w -= 1;
        }
    }
}

/// The defining-relation variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `[N, a] = -a`, `[N, a+] = a+`
    Grading,
    /// `[a, a+] = [N + 1] - [N]`
    ShiftedCommutator,
    /// `a a+ - q^{-1} a+ a = q^N`
    QCommutator,
    /// `a a+ - q a+ a = q^{-N}`
    QInverseCommutator,
    /// `a+ a = [N]`, `a a+ = [N + 1]`
    NumberProducts,
    /// `[a, a+] = [N + 1/2] - [N - 1/2]`
    HalfShiftCommutator,
}

impl Relation {
    pub const ALL: [Relation; 6] = [
        Relation::Grading,
        Relation::ShiftedCommutator,
        Relation::QCommutator,
        Relation::QInverseCommutator,
        Relation::NumberProducts,
        Relation::HalfShiftCommutator,
    ];

    pub fn key(&self) -> &'static str {
        match self {
            Relation::Grading => "grading",
            Relation::ShiftedCommutator => "shifted_commutator",
            Relation::QCommutator => "q_commutator",
            Relation::QInverseCommutator => "q_inverse_commutator",
            Relation::NumberProducts => "number_products",
            Relation::HalfShiftCommutator => "half_shift_commutator",
        }
    }
}

impl FockRep {
    pub fn new(dim: usize, c_param: C64, params: DeformParams) -> Result<Self> {
        if dim < 2 {
            return Err(Error::Dimension(format!(
                "representation dimension {dim} < 2"
            )));
        }
        let levels: Vec<C64> = (0..dim).map(|n| c_param + n as f64).collect();
        // amp(n)^2 = <n-1|a|n>^2. The shifted formula needs c != 0; c = 0 is
        // the standard space with a+ a = [N].
        let amp_sq = |n: usize| {
            if c_param == C64::new(0.0, 0.0) {
                params.q_number_re(n as f64)
            } else {
                params.q_number(c_param + (n as f64 - 0.5)) - params.q_number(c_param - 0.5)
            }
        };
        let mut mat_a = Op::zeros(dim, dim);
        let mut mat_adag = Op::zeros(dim, dim);
        for n in 1..dim {
            let amp = amp_sq(n).sqrt();
            mat_a.set(n - 1, n, amp);
            mat_adag.set(n, n - 1, amp);
        }
        Ok(Self {
            dim,
            c: c_param,
            mat_n: Op::from_diag(&levels),
            mat_a,
            mat_adag,
            params,
        })
    }

    /// Standard Fock space, `N|n> = n|n>`.
    pub fn standard(dim: usize, params: DeformParams) -> Result<Self> {
        Self::new(dim, c(0.0), params)
    }

    /// Hopf-compatible space, `N|n> = (n + 1/2)|n>`.
    pub fn hopf(dim: usize, params: DeformParams) -> Result<Self> {
        Self::new(dim, c(0.5), params)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn c(&self) -> C64 {
        self.c
    }

    pub fn params(&self) -> &DeformParams {
        &self.params
    }

    pub fn n(&self) -> &Op {
        &self.mat_n
    }

    pub fn a(&self) -> &Op {
        &self.mat_a
    }

    pub fn adag(&self) -> &Op {
        &self.mat_adag
    }

    /// Eigenvalues `n + c` of `N`.
    pub fn levels(&self) -> Vec<C64> {
        self.mat_n.diagonal()
    }

    /// `q^{s N}` under the given parameters (normally `self.params()`).
    pub fn q_pow_n(&self, s: C64, params: &DeformParams) -> Op {
        self.mat_n.map_diagonal(|x| params.q_power(s * x))
    }

    /// `[N + shift]`.
    pub fn q_number_n(&self, shift: C64) -> Op {
        self.mat_n.map_diagonal(|x| self.params.q_number(x + shift))
    }

    pub fn identity(&self) -> Op {
        Op::identity(self.dim)
    }

    /// Stacked `(lhs, rhs)` pairs of the relation.
    fn relation_sides(&self, rel: Relation) -> Vec<(Op, Op)> {
        let (n, a, ad) = (&self.mat_n, &self.mat_a, &self.mat_adag);
        let q = self.params.q;
        let aad = a.matmul(ad);
        let ada = ad.matmul(a);
        match rel {
            Relation::Grading => vec![
                (Op::commutator(n, a), a.scale(c(-1.0))),
                (Op::commutator(n, ad), ad.clone()),
            ],
            Relation::ShiftedCommutator => vec![(
                &aad - &ada,
                &self.q_number_n(c(1.0)) - &self.q_number_n(c(0.0)),
            )],
            Relation::QCommutator => {
                let mut lhs = aad.clone();
                lhs.add_scaled(-(1.0 / q), &ada);
                vec![(lhs, self.q_pow_n(c(1.0), &self.params))]
            }
            Relation::QInverseCommutator => {
                let mut lhs = aad.clone();
                lhs.add_scaled(-q, &ada);
                vec![(lhs, self.q_pow_n(c(-1.0), &self.params))]
            }
            Relation::NumberProducts => vec![
                (ada, self.q_number_n(c(0.0))),
                (aad, self.q_number_n(c(1.0))),
            ],
            Relation::HalfShiftCommutator => vec![(
                &aad - &ada,
                &self.q_number_n(c(0.5)) - &self.q_number_n(c(-0.5)),
            )],
        }
    }

    /// Windowed normalized residual `||LHS - RHS||_F / max(1, ||RHS||_F)`.
    pub fn check_relation(&self, rel: Relation, max_index: usize) -> Result<f64> {
        let window = Window::new(max_index, 1);
        window.validate(self.dim)?;
        let idx = window.indices(&[self.dim]);
        let (mut diff, mut rhs_norm) = (0.0, 0.0);
        for (lhs, rhs) in self.relation_sides(rel) {
            let (l, r) = (lhs.block(&idx), rhs.block(&idx));
            diff += (&l - &r).frobenius().powi(2);
            rhs_norm += r.frobenius().powi(2);
        }
        Ok(diff.sqrt() / rhs_norm.sqrt().max(1.0))
    }

    pub fn relation_report(&self, rel: Relation, max_index: usize) -> Result<IdentityReport> {
        let residual = self.check_relation(rel, max_index)?;
        Ok(
            IdentityReport::new(rel.key(), residual, residual, self.params.tol)
                .param("c", crate::qscalars::format_complex(self.c))
                .dims(&[self.dim])
                .window(max_index, 1),
        )
    }

    /// `C = a+ a - [N - 1/2]`.
    pub fn casimir(&self) -> Op {
        &self.mat_adag.matmul(&self.mat_a) - &self.q_number_n(c(-0.5))
    }
}

/// `||[a, a+] - I||_F` in the standard Fock space at `q = 1 + eps` on the
/// largest leak-free window.
pub fn classical_limit_residual(dim: usize, eps: f64) -> Result<f64> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::Param(format!(
            "classical limit needs eps > 0 (q = 1 is excluded), got {eps}"
        )));
    }
    let params = DeformParams::new(c(1.0 + eps), 0)?;
    let rep = FockRep::standard(dim, params)?;
    let window = Window::fit(dim, dim, 0, 1)?;
    let idx = window.indices(&[dim]);
    let comm = Op::commutator(rep.a(), rep.adag());
    Ok((&comm - &rep.identity()).block(&idx).frobenius())
}
