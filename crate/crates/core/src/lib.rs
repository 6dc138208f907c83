//! Singularity invariants of corank-one map germs `(C^n, S) -> (C^{n+1}, 0)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`poly`]: exact rational polynomials, parsing and printing.
//! * [`local`]: standard bases for the local ordering and local quotient dimensions.
//! * [`multipoint`]: multiple point spaces and their strata.
//! * [`symrep`]: characters of symmetric groups used by the equivariant counts.
//! * [`invariants`]: image Milnor numbers and related invariants.
//! * [`equising`]: transverse slices and Whitney equisingularity of families.
//! * [`report`]: the combined invariant report.

pub mod equising;
pub mod germ;
pub mod invariants;
pub mod local;
pub mod multipoint;
pub mod poly;
pub mod report;
pub mod seed;
pub mod symrep;

pub use equising::{whitney_verdict, EquisingError, FamilyVerdict, MuStar, SliceChain, Verdict};
pub use germ::{FamilySpec, GermError, GermFile, GermSpec, Loaded};
pub use invariants::{CheckReport, EquivariantTable, InvariantError, LeGreuelReport, ZeroStableCounts};
pub use local::{GenericOptions, LocalError, LocalOptions};
pub use multipoint::{MultipointError, StratumStatus, StructureReport};
pub use poly::{Poly, PolyError, Rational, VarList};
pub use report::{invariant_report, Consistency, InvariantReport};
pub use seed::DEFAULT_SEED;
