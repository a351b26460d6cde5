pub mod corpus;
pub mod error;
pub mod exact;
pub mod ideal;
pub mod multiplier;
pub mod polyhedral;
pub mod resolution;
pub mod test_ideal;
pub mod toric;
pub mod verify;
