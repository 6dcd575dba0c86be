//! Classification of totally imaginary quartic and sextic number fields into CM fields,
//! CM-type fields that are not CM, and TR-type fields.
//!
//! Two engines answer the same question. [`classifier`] works from the group data
//! `(G, H, c)` of the Galois closure, and [`numfield`] works from a defining polynomial.

pub mod census;
pub mod classifier;
pub mod cli;
pub mod lmfdb;
pub mod numfield;
pub mod permgroup;
