//! Translation of LTL formulas into nondeterministic Büchi automata
//! through their disjunctive normal form.
//!
//! ```
//! use ltl2nba::{parse, translate, Mode, Options};
//!
//! let f = parse("a U b").unwrap();
//! let t = translate(&f, Mode::Auto, &Options::default()).unwrap();
//! assert_eq!(t.automaton.stats().to_string(), "states=2 transitions=3 accepting=1");
//! ```

pub mod automaton;
pub mod expand;
pub mod export;
pub mod formula;
pub mod literal;
pub mod obligation;
pub mod oracle;
pub mod parser;

pub use automaton::{
    build_general, build_special, translate, Bounds, BuchiAutomaton, Construction, Mode, Options,
    State, Stats, Transition, TranslateError, Translation,
};
pub use expand::{dnf, expansion_set, is_release_free, is_until_free, Clause, Expander};
pub use export::{export_dot, export_hoa, validate_hoa};
pub use formula::{cf, cl, Atom, ConjunctSet, Formula, Literal, Node, StateFormula};
pub use literal::{Letter, Lit, LiteralSet};
pub use obligation::{obligation_set, sat_f, sat_once, FiniteSat, NextRule, ObligationSet};
pub use oracle::{
    accepts_lasso, enumerate_lassos, eval_lasso, is_empty, product, sample_formulas, Emptiness,
    LassoWord, ProductState,
};
pub use parser::{nnf, parse, parse_expr, Expr, ParseError};
