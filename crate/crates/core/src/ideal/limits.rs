use std::cell::RefCell;
use std::sync::RwLock;
use std::time::Duration;

/// Caps for a single Gröbner computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_steps: u64,
    pub timeout: Duration,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_steps: 1_000_000,
            timeout: Duration::from_secs(60),
        }
    }
}

static GLOBAL: RwLock<Option<Limits>> = RwLock::new(None);

thread_local! {
    static OVERRIDE: RefCell<Vec<Limits>> = const { RefCell::new(Vec::new()) };
}

impl Limits {
    /// Limits in force on this thread.
    pub fn current() -> Limits {
        OVERRIDE
            .with(|o| o.borrow().last().copied())
            .or_else(|| *GLOBAL.read().unwrap())
            .unwrap_or_default()
    }

    /// Process-wide default, used by the CLI's `--timeout`.
    pub fn set_global(limits: Limits) {
        *GLOBAL.write().unwrap() = Some(limits);
    }

    /// Runs `f` with these limits on the current thread.
    pub fn scope<T>(self, f: impl FnOnce() -> T) -> T {
        OVERRIDE.with(|o| o.borrow_mut().push(self));
        struct Pop;
        impl Drop for Pop {
            fn drop(&mut self) {
                OVERRIDE.with(|o| {
                    o.borrow_mut().pop();
                });
            }
        }
        let _guard = Pop;
        f()
    }
}
