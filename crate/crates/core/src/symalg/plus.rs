use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fockrep::FockRep;
use crate::op::Op;
use crate::qscalars::{c, DeformParams, C64, I, ONE, ZERO};

pub const DEFAULT_DEGREE_CAP: u32 = 8;

/// `E(k, m, s)`; `s2 = 2 s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Basis {
    pub k: u32,
    pub m: u32,
    pub s2: i32,
}

impl Basis {
    pub const ONE: Basis = Basis { k: 0, m: 0, s2: 0 };
    /// `N'`
    pub const N_PRIME: Basis = Basis { k: 0, m: 1, s2: 0 };
    /// `A = q^{N/2} a+`
    pub const A: Basis = Basis { k: 1, m: 0, s2: 2 };

    pub fn new(k: u32, m: u32, s2: i32) -> Self {
        Self { k, m, s2 }
    }

    /// The element `e_km = q^{kN/2} N'^m (a+)^k`.
    pub fn e(k: u32, m: u32) -> Self {
        Self {
            k,
            m,
            s2: 2 * k as i32,
        }
    }

    /// `q^{sN/2}` with `s = s2 / 2`.
    pub fn q_pow(s2: i32) -> Self {
        Self { k: 0, m: 0, s2 }
    }

    pub fn s(&self) -> f64 {
        self.s2 as f64 / 2.0
    }
}

/// Finite linear combination of basis elements.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PlusElement {
    terms: BTreeMap<Basis, C64>,
}

impl PlusElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::basis(Basis::ONE)
    }

    pub fn basis(b: Basis) -> Self {
        Self::from_terms([(b, ONE)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Basis, C64)>) -> Self {
        let mut out = Self::zero();
        for (b, v) in terms {
            out.add_term(b, v);
        }
        out
    }

    pub fn add_term(&mut self, b: Basis, v: C64) {
        *self.terms.entry(b).or_insert(ZERO) += v;
    }

    pub fn coef(&self, b: &Basis) -> C64 {
        self.terms.get(b).copied().unwrap_or(ZERO)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Basis, &C64)> {
        self.terms.iter()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::from_terms(self.terms.iter().map(|(b, v)| (*b, v * s)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, v) in &other.terms {
            out.add_term(*b, *v);
        }
        out
    }

    /// Largest coefficient difference over the union of supports.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.terms
            .keys()
            .chain(other.terms.keys())
            .map(|b| (self.coef(b) - other.coef(b)).norm())
            .fold(0.0, f64::max)
    }
}

/// Element of the `r`-fold tensor power of `L+`.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorPlus {
    rank: usize,
    terms: BTreeMap<Vec<Basis>, C64>,
}

impl TensorPlus {
    pub fn zero(rank: usize) -> Self {
        Self {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn pure(legs: Vec<Basis>, v: C64) -> Self {
        let mut out = Self::zero(legs.len());
        out.add_term(legs, v);
        out
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn add_term(&mut self, legs: Vec<Basis>, v: C64) {
        debug_assert_eq!(legs.len(), self.rank);
        *self.terms.entry(legs).or_insert(ZERO) += v;
    }

    pub fn coef(&self, legs: &[Basis]) -> C64 {
        self.terms.get(legs).copied().unwrap_or(ZERO)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Basis>, &C64)> {
        self.terms.iter()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.terms
            .keys()
            .chain(other.terms.keys())
            .map(|b| (self.coef(b) - other.coef(b)).norm())
            .fold(0.0, f64::max)
    }
}

/// Deformation parameters plus the degree cap for symbolic work.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymCtx {
    pub params: DeformParams,
    pub cap: u32,
}

impl SymCtx {
    pub fn new(params: DeformParams) -> Self {
        Self {
            params,
            cap: DEFAULT_DEGREE_CAP,
        }
    }

    pub fn with_cap(params: DeformParams, cap: u32) -> Self {
        Self { params, cap }
    }

    fn guard(&self, b: Basis) -> Result<Basis> {
        let degree = b.k.max(b.m);
        if degree > self.cap {
            return Err(Error::Overflow {
                degree,
                cap: self.cap,
            });
        }
        Ok(b)
    }

    /// `E1 E2 = q^{-s2 k1 / 2} q^{(s1+s2)N/2} N'^{m1} (N' - k1)^{m2} (a+)^{k1+k2}`.
    pub fn multiply_basis(&self, x: Basis, y: Basis) -> Result<PlusElement> {
        let k = x.k + y.k;
        self.guard(Basis::new(k, x.m + y.m, 0))?;
        let pre = self.params.q_power_re(-y.s() * x.k as f64 / 2.0);
        let shift = -(x.k as f64);
        let mut out = PlusElement::zero();
        let mut binom = 1.0;
        for j in 0..=y.m {
            let coef = binom * shift.powi((y.m - j) as i32);
            if coef != 0.0 {
                out.add_term(Basis::new(k, x.m + j, x.s2 + y.s2), pre * coef);
            }
            binom = binom * (y.m - j) as f64 / (j + 1) as f64;
        }
        Ok(out)
    }

    pub fn multiply(&self, x: &PlusElement, y: &PlusElement) -> Result<PlusElement> {
        let mut out = PlusElement::zero();
        for (bx, vx) in x.terms() {
            for (by, vy) in y.terms() {
                for (b, v) in self.multiply_basis(*bx, *by)?.terms() {
                    out.add_term(*b, vx * vy * v);
                }
            }
        }
        Ok(out)
    }

    pub fn product(&self, factors: &[PlusElement]) -> Result<PlusElement> {
        factors
            .iter()
            .try_fold(PlusElement::one(), |acc, f| self.multiply(&acc, f))
    }

    /// Legwise product in the tensor power.
    pub fn multiply_tensor(&self, x: &TensorPlus, y: &TensorPlus) -> Result<TensorPlus> {
        let mut out = TensorPlus::zero(x.rank);
        for (lx, vx) in x.terms() {
            for (ly, vy) in y.terms() {
                let mut expansions: Vec<(Vec<Basis>, C64)> = vec![(Vec::new(), vx * vy)];
                for (a, b) in lx.iter().zip(ly) {
                    let prod = self.multiply_basis(*a, *b)?;
                    expansions = expansions
                        .iter()
                        .flat_map(|(legs, v)| {
                            prod.terms().map(move |(pb, pv)| {
                                let mut next = legs.clone();
                                next.push(*pb);
                                (next, v * pv)
                            })
                        })
                        .collect();
                }
                for (legs, v) in expansions {
                    out.add_term(legs, v);
                }
            }
        }
        Ok(out)
    }

    /// `D(a+) = e^{-i alpha/2} (a+ (x) q^{N/2} + i q^{-N/2} (x) a+)`.
    fn coproduct_adag(&self) -> TensorPlus {
        let phase = self.params.phase(-0.5);
        let adag = Basis::new(1, 0, 0);
        let mut out = TensorPlus::pure(vec![adag, Basis::q_pow(2)], phase);
        out.add_term(vec![Basis::q_pow(-2), adag], phase * I);
        out
    }

    /// `D(E(k, m, s)) = D(q^{sN/2}) D(N')^m D(a+)^k`.
    pub fn coproduct_basis(&self, b: Basis) -> Result<TensorPlus> {
        self.guard(b)?;
        let cartan = TensorPlus::pure(
            vec![Basis::q_pow(b.s2), Basis::q_pow(b.s2)],
            self.params.phase(-b.s() / 2.0),
        );
        let mut dn = TensorPlus::pure(vec![Basis::N_PRIME, Basis::ONE], ONE);
        dn.add_term(vec![Basis::ONE, Basis::N_PRIME], ONE);
        let da = self.coproduct_adag();
        let mut out = cartan;
        for _ in 0..b.m {
            out = self.multiply_tensor(&out, &dn)?;
        }
        for _ in 0..b.k {
            out = self.multiply_tensor(&out, &da)?;
        }
        Ok(out)
    }

    pub fn coproduct(&self, x: &PlusElement) -> Result<TensorPlus> {
        let mut out = TensorPlus::zero(2);
        for (b, v) in x.terms() {
            for (legs, w) in self.coproduct_basis(*b)?.terms() {
                out.add_term(legs.clone(), v * w);
            }
        }
        Ok(out)
    }

    /// Apply the coproduct to leg `leg`, raising the rank by one.
    pub fn coproduct_on_leg(&self, t: &TensorPlus, leg: usize) -> Result<TensorPlus> {
        let mut out = TensorPlus::zero(t.rank + 1);
        for (legs, v) in t.terms() {
            for (split, w) in self.coproduct_basis(legs[leg])?.terms() {
                let mut next = legs[..leg].to_vec();
                next.extend_from_slice(split);
                next.extend_from_slice(&legs[leg + 1..]);
                out.add_term(next, v * w);
            }
        }
        Ok(out)
    }

    /// `eps(E(k,m,s)) = delta_k0 delta_m0 e^{i s alpha / 2}`.
    pub fn counit_basis(&self, b: Basis) -> C64 {
        if b.k == 0 && b.m == 0 {
            self.params.phase(b.s() / 2.0)
        } else {
            ZERO
        }
    }

    pub fn counit(&self, x: &PlusElement) -> C64 {
        x.terms().map(|(b, v)| v * self.counit_basis(*b)).sum()
    }

    /// Inverse antipode: `N' -> -N'`, `a+ -> -q^{-1/2} a+`,
    /// `q^{sN/2} -> e^{i s alpha} q^{-sN/2}`, extended antimultiplicatively.
    pub fn antipode_inv_basis(&self, b: Basis) -> Result<PlusElement> {
        let adag = PlusElement::basis(Basis::new(1, 0, 0)).scale(-self.params.q_power_re(-0.5));
        let n = PlusElement::basis(Basis::N_PRIME).scale(c(-1.0));
        let cartan = PlusElement::basis(Basis::q_pow(-b.s2)).scale(self.params.phase(b.s()));
        let mut factors = vec![adag; b.k as usize];
        factors.extend(std::iter::repeat_n(n, b.m as usize));
        factors.push(cartan);
        self.product(&factors)
    }

    pub fn antipode_inv(&self, x: &PlusElement) -> Result<PlusElement> {
        let mut out = PlusElement::zero();
        for (b, v) in x.terms() {
            out = out.add(&self.antipode_inv_basis(*b)?.scale(*v));
        }
        Ok(out)
    }

    /// Matrix of `E(k,m,s)` in `rep`.
    pub fn basis_matrix(&self, b: Basis, rep: &FockRep) -> Op {
        let mut nprime = rep.n().clone();
        nprime.add_scaled(-self.params.offset(), &rep.identity());
        rep.q_pow_n(c(b.s() / 2.0), &self.params)
            .matmul(&nprime.pow(b.m))
            .matmul(&rep.adag().pow(b.k))
    }

    pub fn rep_matrix(&self, x: &PlusElement, rep: &FockRep) -> Op {
        let mut out = Op::zeros(rep.dim(), rep.dim());
        for (b, v) in x.terms() {
            out.add_scaled(*v, &self.basis_matrix(*b, rep));
        }
        out
    }
}
