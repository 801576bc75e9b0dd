//! Fully symbolic solver for abstract dialectical frameworks (ADFs) and Boolean networks.
//!
//! The admissible, complete, grounded, preferred, 2-valued and stable semantics are computed as
//! binary decision diagrams that characterise the whole solution set, which can then be
//! counted exactly, enumerated, or sampled uniformly.
//!
//! ```
//! use bass_core::formula::parse_adf;
//! use bass_core::semantics::{Semantics, SymbolicAdf};
//! use bass_core::solutions;
//!
//! let adf = parse_adf("s(a). s(b). s(c). ac(a,c(v)). ac(b,or(neg(a),c)). ac(c,b).").unwrap();
//! let mut solver = SymbolicAdf::new(adf).unwrap();
//! let preferred = solver.solve(Semantics::Preferred, true).set;
//! assert_eq!(solutions::count(&solver, &preferred), 2u32.into());
//! ```

pub mod bdd;
pub mod cli;
pub mod encoding;
pub mod formula;
pub mod oracle;
pub mod semantics;
pub mod solutions;

pub use encoding::{Interpretation, Value};
pub use formula::{Adf, Formula};
pub use semantics::{Semantics, SolutionSet, SymbolicAdf};
