//! Coalition formation where players only rank individual players and
//! coalition preferences follow from the best or worst members.
//!
//! The crate covers four ways of lifting a ranking over players to a ranking
//! over coalitions ([`Variant`]), stability checks and deviation search
//! ([`stability`]), constructive solvers for the cases that admit them
//! ([`algorithms`]), exhaustive small-instance oracles ([`oracle`]),
//! better-response dynamics ([`dynamics`]), and compilers from CNF formulas
//! into games whose stable outcomes encode satisfying assignments
//! ([`reductions`]).

pub mod algorithms;
pub mod dynamics;
pub mod error;
pub mod extensions;
pub mod model;
pub mod oracle;
pub mod reductions;
pub mod stability;

pub use error::{Error, Result};
pub use model::{
    parse_game, parse_partition, Coalition, GameInstance, Partition, PlayerId, PrefProfile,
    Variant,
};
