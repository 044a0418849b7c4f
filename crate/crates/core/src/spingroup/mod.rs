//! The Sergeev group through its spin algebra `B_k`.

mod action;
mod element;
mod invariants;

pub use action::{a_actions, act_tensor, all_actions, generator_actions};
pub use element::SpinGroupElement;
pub use invariants::{delta_invariants, iso_to_symk, verify_invariants, PairSpace, SymkIsomorphism};

