pub mod action;
pub mod bundle;
pub mod chart;
pub mod coeff;
pub mod compute;
pub mod config;
pub mod dupont;
pub mod equivariant;
pub mod error;
pub mod export;
pub mod form;
pub mod getzler;
pub mod lie;
pub mod oracle;
pub mod parse;
pub mod random;
pub mod scalar;
pub mod simplicial;
pub mod subst;
pub mod suites;
pub mod theorem;
pub mod vector_field;
