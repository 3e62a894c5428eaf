//! Module constructions on presentations.

mod basic;
mod powers;
mod tensor;

pub(crate) use basic::kernel_unchecked;
pub use basic::{cokernel, direct_sum, free_pullback, image, kernel, pullback, pushout};
pub use powers::{exterior_power, symmetric_power, wedge_sign};
pub use tensor::{dual, hom, hom_element, tensor, tensor_over_k, Side};
