pub mod avcode;
pub mod cli;
pub mod gf;
pub mod linalg;
pub mod listdec;
pub mod mpoly;
pub mod zbounds;
