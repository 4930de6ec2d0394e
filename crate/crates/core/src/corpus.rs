//! Small named crossed modules used by the tests, the acceptance suite and
//! the bundled CLI fixtures.

use crate::crossed::CrossedModule;
use crate::error::Result;
use crate::group::{FiniteGroup, GroupAction, GroupHom};

pub fn trivial() -> CrossedModule {
    CrossedModule::drinfeld_double(&FiniteGroup::trivial())
}

/// `Z/4 -> Z/4`, `m -> 2m`, trivial action.
pub fn x4_double_cover() -> CrossedModule {
    let z4 = FiniteGroup::cyclic(4);
    let action = GroupAction::trivial(z4.clone(), 4);
    let boundary =
        GroupHom::new(z4.clone(), z4, vec![0, 2, 0, 2]).expect("doubling is a homomorphism");
    CrossedModule::new(action, boundary).expect("valid crossed module")
}

/// `X1` trivial, `X2 = Z/2`, trivial boundary.
pub fn trivial_boundary_z2() -> CrossedModule {
    let action = GroupAction::trivial(FiniteGroup::trivial(), 2);
    let boundary = GroupHom::new(FiniteGroup::cyclic(2), FiniteGroup::trivial(), vec![0, 0])
        .expect("trivial homomorphism");
    CrossedModule::new(action, boundary).expect("valid crossed module")
}

/// `X1 = Z/2` acting trivially on `X2 = Z/2`, trivial boundary.
pub fn trivial_boundary_z2_z2() -> CrossedModule {
    let z2 = FiniteGroup::cyclic(2);
    let action = GroupAction::trivial(z2.clone(), 2);
    let boundary = GroupHom::new(z2.clone(), z2, vec![0, 0]).expect("trivial homomorphism");
    CrossedModule::new(action, boundary).expect("valid crossed module")
}

/// `X1 = Z/2` acting on `X2 = Z/3` by inversion, trivial boundary. The
/// induced action of `coker d` on `ker d` is non-trivial and `G(X)` is `S3`.
pub fn inversion_on_z3() -> CrossedModule {
    let z2 = FiniteGroup::cyclic(2);
    let z3 = FiniteGroup::cyclic(3);
    let action =
        GroupAction::new(z2.clone(), 3, vec![vec![0, 1, 2], vec![0, 2, 1]]).expect("inversion");
    let boundary = GroupHom::new(z3, z2, vec![0, 0, 0]).expect("trivial homomorphism");
    CrossedModule::new(action, boundary).expect("valid crossed module")
}

/// `X1 = Z/2` acting on `X2 = Z/4` by negation, boundary reduction mod 2.
/// Equivariant, but the Peiffer identity fails at `m = n = 1`.
pub fn peiffer_violation() -> Result<CrossedModule> {
    let z2 = FiniteGroup::cyclic(2);
    let z4 = FiniteGroup::cyclic(4);
    let action = GroupAction::new(z2.clone(), 4, vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]])?;
    let boundary = GroupHom::new(z4, z2, vec![0, 1, 0, 1])?;
    CrossedModule::new(action, boundary)
}

/// The acceptance corpus, in a fixed order.
pub fn acceptance_corpus() -> Vec<(&'static str, CrossedModule)> {
    vec![
        ("trivial", trivial()),
        (
            "d_z2",
            CrossedModule::drinfeld_double(&FiniteGroup::cyclic(2)),
        ),
        (
            "d_z3",
            CrossedModule::drinfeld_double(&FiniteGroup::cyclic(3)),
        ),
        (
            "d_z4",
            CrossedModule::drinfeld_double(&FiniteGroup::cyclic(4)),
        ),
        (
            "d_s3",
            CrossedModule::drinfeld_double(&FiniteGroup::symmetric(3)),
        ),
        ("x4_double_cover", x4_double_cover()),
        ("trivial_boundary_z2", trivial_boundary_z2()),
        ("trivial_boundary_z2_z2", trivial_boundary_z2_z2()),
    ]
}
