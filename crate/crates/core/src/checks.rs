//! Runtime toggle for post-operation exactness assertions.
//!
//! Assertions are off unless `EXACT3_DEBUG_ASSERT=1` is set in the
//! environment or [`set_assertions`] turns them on.

use std::sync::atomic::{AtomicU8, Ordering};
use std::sync::OnceLock;

const UNSET: u8 = 0;
const OFF: u8 = 1;
const ON: u8 = 2;

static OVERRIDE: AtomicU8 = AtomicU8::new(UNSET);
static FROM_ENV: OnceLock<bool> = OnceLock::new();

pub fn assertions_enabled() -> bool {
    match OVERRIDE.load(Ordering::Relaxed) {
        ON => true,
        OFF => false,
        _ => *FROM_ENV.get_or_init(|| {
            std::env::var("EXACT3_DEBUG_ASSERT").is_ok_and(|v| v.trim() == "1")
        }),
    }
}

/// Overrides the environment setting for the whole process.
pub fn set_assertions(on: bool) {
    OVERRIDE.store(if on { ON } else { OFF }, Ordering::Relaxed);
}
