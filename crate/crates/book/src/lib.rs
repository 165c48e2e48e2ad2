//! Doc-test shim: every chapter of the book is included as module
//! documentation, so `cargo test` runs the book's code snippets and the
//! narrative can never drift from the API. (mdbook itself cannot run
//! examples against local crates; this is the standard workaround.)

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/number-fields.md")]
pub mod number_fields {}

#[doc = include_str!("../../../book/src/hermitian-geometry.md")]
pub mod hermitian_geometry {}

#[doc = include_str!("../../../book/src/isometries.md")]
pub mod isometries {}

#[doc = include_str!("../../../book/src/trace-fields.md")]
pub mod trace_fields {}

#[doc = include_str!("../../../book/src/tetrahedra.md")]
pub mod tetrahedra {}

#[doc = include_str!("../../../book/src/arithmetic-groups.md")]
pub mod arithmetic_groups {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
