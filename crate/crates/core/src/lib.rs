//! Exact arithmetic for the Burau representation of braid groups.

pub mod braid;
pub mod burau;
pub mod density;
pub mod depth;
pub mod error;
pub mod json;
pub mod laurent;
pub mod liealg;
pub mod linalg;
pub mod search;
pub mod verify;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction_chapter {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/laurent.md")]
mod laurent_chapter {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/braids.md")]
mod braids_chapter {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/burau.md")]
mod burau_chapter {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/depth.md")]
mod depth_chapter {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/liealg.md")]
mod liealg_chapter {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/phi.md")]
mod phi_chapter {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/density.md")]
mod density_chapter {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/search.md")]
mod search_chapter {}
#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

pub use depth::Depth;
pub use error::{Error, Result};

/// Environment variable capping worker threads.
pub const THREADS_ENV: &str = "BURAU_THREADS";

/// Runs `f` on a pool sized by `BURAU_THREADS` when set, else rayon's
/// default.
pub(crate) fn with_pool<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    let threads = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()).filter(|&t| t > 0);
    match threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}
