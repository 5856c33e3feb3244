//! Finite k-automata with output, their minimization, and the exact opacity
//! of the automatic sequences they generate.
//!
//! The opacity of an automaton measures how well the best possible output
//! labelling of its states can echo the input digits back, in the worst case
//! over inputs, under the prefix metric. It is always `0` or `2^-(l-1)`
//! where `l` is the length of a shortest inhomogeneous path; see
//! [`opacity`] for the algorithm and [`oracle`] for a brute-force check.
//! The opacity of a sequence is that of its intrinsic automaton
//! ([`minimize::intrinsic_automaton`]).
//!
//! ```
//! use opacity::{corpus, analyze_sequence, DyadicDistance};
//!
//! let pd = corpus::build("period_doubling").unwrap();
//! let report = analyze_sequence(&pd);
//! assert_eq!(report.opacity.distance(), DyadicDistance::Pow2Inv(2));
//! assert_eq!(report.complexity.to_string(), "1/2");
//! ```

pub mod aut;
pub mod automaton;
pub mod corpus;
pub mod dot;
pub mod dyadic;
pub mod error;
pub mod exec;
pub mod gen;
pub mod minimize;
pub mod opacity;
pub mod oracle;
pub mod report;

pub use automaton::{digits_msb, validate, Automaton, Dfao, Digit, PathRun, RawDescription, Validated};
pub use dyadic::DyadicDistance;
pub use error::{Error, Result};
pub use exec::Exec;
pub use minimize::{intrinsic_automaton, is_minimal, minimize, moore_partition, FactorMap, Partition};
pub use opacity::{
    analyze_sequence, compute_opacity, is_homogeneous_automaton, is_opaque_quick, longest_homogeneous_prefix,
    shortest_inhomogeneous_path, state_homogeneity, AnalysisReport, Classification, Opacity, PathWitness,
    StateVerdict, MAX_OPACITY,
};
