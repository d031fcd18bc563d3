//! Intersection types, their syntax-directed checker, bounded inhabitation
//! search, and the rank-3/order-3 encodings of Turing machine acceptance and
//! simple semi-Thue reachability as type inhabitation.

pub mod checker;
pub mod encoder;
pub mod machines;
pub mod pipeline;
pub mod random;
pub mod search;
pub mod terms;
pub mod types;
pub mod witness;

pub use checker::{check, check_multi, derive, derive_multi, Context, Judgment, Transcript};
pub use encoder::{encode_ssts, encode_tau_star_tm, EncodingBundle};
pub use machines::{Ssts, TmSpec};
pub use search::{enumerate_inhabitants, inhabit, inhabit_multi, SearchConfig, SearchResult};
pub use terms::{parse_term, Term};
pub use types::{canonicalize, parse_type, Atom, RawType, Type};
