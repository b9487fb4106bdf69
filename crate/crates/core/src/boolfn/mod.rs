//! Boolean functions over the hypercube and the middle-layer machinery shared
//! by the testers.

mod band;
mod function;
mod point;
mod table;

pub use band::{
    band_half_width, binomial, down_band_size, enumerate_down_band, mid_band, sample_band_uniform,
    sample_down_band, Band, DownBand, DEFAULT_ENUM_CAP,
};
pub(crate) use band::check_eps;
pub use function::{
    from_fn, truncate_int, truncate_uc, BooleanFunction, Builtin, BuiltinFn, FromFn, QueryCounter,
    TruncMode, Truncated,
};
pub use point::full_mask;
pub use point::{Point, MAX_ARITY};
pub use table::{TruthTable, TruthTableJson, MAX_TABLE_ARITY};
