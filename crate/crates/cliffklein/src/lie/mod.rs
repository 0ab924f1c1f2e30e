//! Symbolic Lie groups, Cartan projection cones, obstruction criteria and
//! motion groups.

mod cone;
mod group;
mod motion;
mod obstruct;

pub use cone::{
    cone_a_of_orthogonal_subgroup, cone_contains, cones_properly_disjoint, cones_similar, ConeSet, Weyl, MAX_ORBIT,
};
pub use group::{eval_int, Exceptional, Family, GroupDescriptor, GroupStats};
pub use motion::{cayley, jordan_decompose_motion, MotionElement};
pub use obstruct::{
    b_plus, benoist_obstruction, calabi_markus, maximality_obstruction, pseudo_riemannian_signature,
    rank_parity_obstruction, RootType, MAX_B_PLUS_RANK, MAX_WEYL_RANK,
};
