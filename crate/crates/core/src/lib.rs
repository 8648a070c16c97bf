pub mod embed;
pub mod error;
pub mod frame;
pub mod hom;
pub mod kite;
pub mod report;
pub mod reslat;
