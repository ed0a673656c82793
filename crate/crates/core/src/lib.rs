pub mod gf;
pub mod groups;
pub mod funcmaps;
pub mod planar;
pub mod semifield;
pub mod rds;
pub mod designs;
pub mod components;
