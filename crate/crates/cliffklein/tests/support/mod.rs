#[allow(dead_code)]
pub mod props;
