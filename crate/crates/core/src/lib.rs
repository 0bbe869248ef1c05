//! Q-factorization graphs of Drinfeld polynomials for quantum affine
//! algebras of type A, with sound (incomplete) primality and reality
//! decisions that come with certificates.
//!
//! The modules build on one another:
//!
//! * [`dynkin`]: intervals, distances and reflections of the `A_n` diagram.
//! * [`redsets`]: reducibility sets of pairs of Kirillov-Reshetikhin modules.
//! * [`drinfeld`]: Drinfeld polynomials, q-strings and the q-factorization.
//! * [`graph`]: q-factorization graphs, shapes, dualities and DOT output.
//! * [`decision`]: the cut criterion for alternating lines and the verdict
//!   engine.
//! * [`qchar`]: q-characters of fundamental modules from column tableaux.
//! * [`sweep`]: exhaustive and randomized consistency checks.

pub mod catalog;
pub mod decision;
pub mod drinfeld;
pub mod dynkin;
pub mod error;
pub mod graph;
pub mod qchar;
pub mod redsets;
pub mod sweep;

pub use decision::{
    alt_line_conditions_ineq, alt_line_cut_simple, c3aline_config, case_parameters,
    dual_pair_simple, evaluate, is_prime, is_real, AltLineConfig, CaseParams, CertificateStep,
    Primality, Reality, Site, Verdict,
};
pub use drinfeld::{DrinfeldPoly, KRFactor};
pub use dynkin::{DynkinA, Interval, Node};
pub use error::{Error, Result};
pub use graph::{build_graph, Arrow, QFactGraph, ShapeClass, ShapeTag};
pub use redsets::{
    member, minimal_subdiagram, r_set, r_set_global, sl2_set, string_parameter, RSet,
};
