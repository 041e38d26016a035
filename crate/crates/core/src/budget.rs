//! Guard on the size of symbolic expansions.
//!
//! Every fallible product in the crate counts the monomials it accumulates
//! and aborts with [`Error::TermCapExceeded`] once the count passes the cap.
//! The cap is process-wide; [`with_term_cap`] overrides it for the current
//! thread only.

use std::cell::Cell;
use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_TERM_CAP: usize = 10_000_000;

static TERM_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_TERM_CAP);

thread_local! {
    static LOCAL_CAP: Cell<Option<usize>> = const { Cell::new(None) };
}

pub fn term_cap() -> usize {
    LOCAL_CAP
        .with(|c| c.get())
        .unwrap_or_else(|| TERM_CAP.load(Ordering::Relaxed))
}

/// Sets the process-wide cap and returns the previous value.
pub fn set_term_cap(cap: usize) -> usize {
    TERM_CAP.swap(cap, Ordering::Relaxed)
}

/// Runs `f` with `cap` in force on the calling thread.
pub fn with_term_cap<T>(cap: usize, f: impl FnOnce() -> T) -> T {
    let prev = LOCAL_CAP.with(|c| c.replace(Some(cap)));
    struct Restore(Option<usize>);
    impl Drop for Restore {
        fn drop(&mut self) {
            LOCAL_CAP.with(|c| c.set(self.0));
        }
    }
    let _restore = Restore(prev);
    f()
}

#[inline]
pub(crate) fn check(terms: usize) -> Result<()> {
    let cap = term_cap();
    if terms > cap {
        Err(Error::TermCapExceeded { cap, terms })
    } else {
        Ok(())
    }
}
