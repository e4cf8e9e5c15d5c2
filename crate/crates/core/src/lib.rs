//! Verification engine for the q-deformed boson Hopf algebra and its
//! quantum-double R-matrix on truncated Fock representations.

pub mod dump;
pub mod error;
pub mod exec;
pub mod fockrep;
pub mod hopfops;
pub mod op;
pub mod qscalars;
pub mod report;
pub mod rmatrix;
pub mod sl2bridge;
pub mod symalg;

pub use error::{Error, Result};
pub use exec::ExecPolicy;
pub use fockrep::{FockRep, Relation, Window};
pub use hopfops::{GenWord, HopfFamily, Letter, QbarBranch, Sign};
pub use op::Op;
pub use qscalars::{DeformParams, C64};
pub use report::{Expect, IdentityReport, Verdict};
pub use rmatrix::{RKind, RSpec};
