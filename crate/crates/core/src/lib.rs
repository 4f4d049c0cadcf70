//! Virtual links as Gauss diagrams: invariants, unknotting-index bounds,
//! exact bounded search and pretzel-family verification.
//!
//! ```
//! use vlink::{bounds, parse_gauss_code, search, MoveBudget};
//!
//! let hopf = parse_gauss_code("O1+ / U1+").unwrap();
//! assert_eq!(bounds::lower_bound(&hopf).to_string(), "(1, 0)");
//! let r = search::unknotting_index(&hopf, &MoveBudget::default(), &Default::default()).unwrap();
//! assert_eq!(r.exact().unwrap().to_string(), "(1, 0)");
//! ```

pub mod bounds;
pub mod cli;
pub mod error;
pub mod gauss;
pub mod index;
pub mod invariants;
pub mod moves;
pub mod pretzel;
pub mod random;
pub mod search;

pub use error::{Error, Result};
pub use gauss::{
    parse_gauss_code, Crossing, CrossingId, Diagram, Endpoint, Role, Sign, Slot, Symbol,
};
pub use index::{compare_dict, HalfInteger, IndexBound, UnknottingIndex};
pub use moves::MoveBudget;
pub use search::SearchCaps;
