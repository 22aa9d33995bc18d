//! Switch between rayon and plain iterators.
//!
//! With the `parallel` feature (on by default) the macros below expand to
//! rayon parallel iterators; without it they fall back to the sequential
//! std iterators. Every call site collects into an ordered container, so the
//! output order is the same either way.

#[cfg(feature = "parallel")]
pub use rayon::prelude::*;

/// `par_iter()` when `parallel` is enabled, `iter()` otherwise.
#[macro_export]
macro_rules! maybe_par_iter {
    ($e:expr) => {{
        #[cfg(feature = "parallel")]
        let it = $e.par_iter();
        #[cfg(not(feature = "parallel"))]
        let it = $e.iter();
        it
    }};
}

/// `into_par_iter()` when `parallel` is enabled, `into_iter()` otherwise.
#[macro_export]
macro_rules! maybe_into_par_iter {
    ($e:expr) => {{
        #[cfg(feature = "parallel")]
        let it = $e.into_par_iter();
        #[cfg(not(feature = "parallel"))]
        let it = $e.into_iter();
        it
    }};
}

/// Name of the active execution mode, used to label benchmark output.
pub const fn mode() -> &'static str {
    if cfg!(feature = "parallel") {
        "rayon"
    } else {
        "sequential"
    }
}
