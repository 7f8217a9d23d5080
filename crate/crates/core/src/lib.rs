//! Exact computations with tame Langlands parameters: root data and twisted
//! characteristic polynomials, banal primes, finite matrix groups, brute-force
//! parameter enumeration and Kostant-section determinants.

mod decimal;
pub mod dualgroup;
pub mod exactalg;
pub mod fingrp;
pub mod kostant;
pub mod moduli;
pub mod rootdata;
