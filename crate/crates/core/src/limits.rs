//! Size bounds used by group construction and isomorphism testing.
//!
//! Bounds are per-thread configuration. [`Limits::scope`] installs a set of
//! bounds for the duration of a closure; everything else reads
//! [`Limits::current`].

use std::cell::Cell;

pub const DEFAULT_MAX_GROUP_ORDER: usize = 10_000;
pub const DEFAULT_MAX_ISO_ORDER: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest group (or G-set action table) that constructions may produce.
    pub max_group_order: usize,
    /// Largest order accepted by the isomorphism test.
    pub max_iso_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_group_order: DEFAULT_MAX_GROUP_ORDER, max_iso_order: DEFAULT_MAX_ISO_ORDER }
    }
}

thread_local! {
    static CURRENT: Cell<Limits> = Cell::new(Limits::default());
}

struct Restore(Limits);

impl Drop for Restore {
    fn drop(&mut self) {
        CURRENT.with(|c| c.set(self.0));
    }
}

impl Limits {
    pub fn current() -> Limits {
        CURRENT.with(|c| c.get())
    }

    /// Installs `self` for the current thread until the process (or the
    /// thread) ends.
    pub fn install(self) {
        CURRENT.with(|c| c.set(self));
    }

    pub fn scope<R>(self, f: impl FnOnce() -> R) -> R {
        let _restore = Restore(CURRENT.with(|c| c.replace(self)));
        f()
    }

    pub fn with_max_group_order(mut self, order: usize) -> Self {
        self.max_group_order = order;
        self
    }

    pub fn with_max_iso_order(mut self, order: usize) -> Self {
        self.max_iso_order = order;
        self
    }
}
