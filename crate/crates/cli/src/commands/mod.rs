pub mod dist;
pub mod gen;
pub mod sweep;
pub mod verify;

/// Shortest round-trip decimal form, stable across platforms.
pub(crate) fn num(x: f64) -> String {
    format!("{x}")
}
