pub mod scalar;
pub mod frame;
pub mod base;
pub mod twistor;
pub mod curvature;
pub mod linalg;
pub mod germ;
pub mod symbolic;
pub mod report;
pub mod checks;
