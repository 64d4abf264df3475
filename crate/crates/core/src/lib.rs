//! Chevalley groups over F_q[T] and its finite quotients.
//!
//! The crate is organised bottom-up: [`ffring`] does ring arithmetic,
//! [`rootdata`] and [`chevmat`] build root systems and matrix models,
//! [`mennicke`], [`boundgen`] and [`wordnorm`] sit on top of them.

pub mod ffring;
pub mod rootdata;
pub mod chevmat;
pub mod mennicke;
pub mod wordnorm;
pub mod boundgen;

pub use ffring::RingError;
