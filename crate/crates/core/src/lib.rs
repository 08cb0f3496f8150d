pub mod error;
pub mod ideal;
pub mod monomial;
pub mod oracle;
pub mod order;
pub mod ring;
pub mod embedding;
pub mod classical;
pub mod extension;
pub mod field;
pub mod linalg;
pub mod distraction;
pub mod stabilize;
pub mod polarize;
pub mod io;
pub mod registry;
