//! Elementary integer arithmetic on three levels: concrete signs, abstract
//! arithmetical quantities (AQs) and semantic values.

pub mod aq;
pub mod config;
pub mod fspec;
pub mod paradox;
pub mod semantics;
pub mod sign;

pub use aq::{Aq, BracketedAq, Numeral};
pub use config::Config;
pub use sign::Sign;
