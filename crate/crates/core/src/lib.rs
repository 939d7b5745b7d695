//! Enumeration and construction of 3-generated axial algebras of Monster type.

pub mod algebra;
pub mod analysis;
pub mod cases;
pub mod config;
pub mod engine;
pub mod expected;
pub mod fusion;
pub mod linalg;
pub mod ns;
pub mod permgrp;
