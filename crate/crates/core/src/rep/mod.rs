//! The premodular category `M(X)`.

pub mod modular;
pub mod object;
pub mod simple;
pub mod tannakian;
pub mod vacuum;

pub use modular::{fusion, modular_data, s_matrix, transparent_simples, Fusion, ModularData};
pub use object::{braiding, char_forms, double_braiding, tensor_character, CharacterX, RepObject};
pub use simple::{decompose, simple_objects, SimpleLabel, SimpleObject, SimpleTable};
pub use tannakian::{functor_f_from_gx, gx_irreps, regular_representation};
pub use vacuum::{check_frobenius, vacuum_object, FrobeniusReport, Law, VacuumAlgebra};
