//! Thread-pool backed [`Counter`].

use std::ops::Range;
use std::sync::atomic::{AtomicU32, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use prym_core::counting::{add_tally, Counter, Tally};

/// Environment variable bounding the number of counting threads.
pub const THREADS_ENV: &str = "PRYM_THREADS";

/// Splits rows into chunks handed out to scoped worker threads.
#[derive(Clone, Copy, Debug)]
pub struct Threaded {
    threads: usize,
}

impl Threaded {
    pub fn new(threads: usize) -> Self {
        Threaded { threads: threads.max(1) }
    }

    /// `PRYM_THREADS` if set and positive, else the available parallelism.
    pub fn from_env() -> Self {
        let env = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()).filter(|&n| n > 0);
        let n = env.unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
        Self::new(n)
    }

    pub fn threads(&self) -> usize {
        self.threads
    }
}

impl Counter for Threaded {
    fn sum_rows(&self, rows: u32, kernel: &(dyn Fn(Range<u32>) -> Tally + Sync)) -> Tally {
        let workers = self.threads.min(rows as usize / 8);
        if workers <= 1 {
            return kernel(0..rows);
        }
        let chunk = (rows / (workers as u32 * 4)).max(1);
        let next = AtomicU32::new(0);
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|_| {
                    s.spawn(|| {
                        let mut acc = [0u64; 3];
                        loop {
                            let start = next.fetch_add(chunk, Ordering::Relaxed);
                            if start >= rows {
                                break acc;
                            }
                            acc = add_tally(acc, kernel(start..(start + chunk).min(rows)));
                        }
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("counting thread panicked")).fold([0; 3], add_tally)
        })
    }

    fn timed<T>(&self, f: impl FnOnce() -> T) -> (T, Option<Duration>) {
        let start = Instant::now();
        let out = f();
        (out, Some(start.elapsed()))
    }
}

/// Wraps a counter and records how many row batches it was asked to run.
#[derive(Debug, Default)]
pub struct Probe<C> {
    inner: C,
    calls: AtomicU64,
}

impl<C> Probe<C> {
    pub fn new(inner: C) -> Self {
        Probe { inner, calls: AtomicU64::new(0) }
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }
}

impl<C: Counter> Counter for Probe<C> {
    fn sum_rows(&self, rows: u32, kernel: &(dyn Fn(Range<u32>) -> Tally + Sync)) -> Tally {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.inner.sum_rows(rows, kernel)
    }

    fn timed<T>(&self, f: impl FnOnce() -> T) -> (T, Option<Duration>) {
        self.inner.timed(f)
    }
}
