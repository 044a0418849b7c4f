//! The queer Lie superalgebra q(n) and its actions.

mod element;
mod highest;
mod howe;
mod superpoly;
mod tensor;

pub use element::{p_map, Matrix, QElement, Realization};
pub use highest::{character, cyclic_module, irreducible_generator, singular_vectors, WeightedSubspace};
pub use howe::{howe_operator, realization_check, record_realization, HoweKind, HoweSpace};
pub use superpoly::{PolySpace, Variable};
pub use tensor::{
    basis_actions, factor_label, factor_parity, raising_elements, representation_defect, tensor_action,
    TensorSpace,
};

