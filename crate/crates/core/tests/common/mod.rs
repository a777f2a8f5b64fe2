#![allow(dead_code)]

pub mod bessel_oracle;
pub mod fd_oracle;
