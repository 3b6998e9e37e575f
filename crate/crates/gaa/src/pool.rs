use gaa_core::Executor;
use rayon::prelude::*;

/// Bounded rayon worker pool. Results are returned in index order, so the
/// worker count never changes what a computation produces.
#[derive(Debug)]
pub struct Pool {
    pool: rayon::ThreadPool,
}

impl Pool {
    pub fn new(workers: usize) -> Result<Self, rayon::ThreadPoolBuildError> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build()?;
        Ok(Pool { pool })
    }

    /// One worker per available core.
    pub fn with_default_size() -> Result<Self, rayon::ThreadPoolBuildError> {
        Self::new(default_workers())
    }

    pub fn workers(&self) -> usize {
        self.pool.current_num_threads()
    }
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

impl Executor for Pool {
    fn map<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        self.pool.install(|| (0..n).into_par_iter().map(f).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gaa_core::Serial;

    #[test]
    fn matches_serial_order() {
        let pool = Pool::new(3).unwrap();
        let f = |i: usize| (i as f64).sqrt() * 1.5;
        assert_eq!(pool.map(1000, f), Serial.map(1000, f));
        assert_eq!(pool.workers(), 3);
    }

    #[test]
    fn nested_maps() {
        let pool = Pool::new(2).unwrap();
        let out = pool.map(4, |i| pool.map(3, |j| i * 10 + j));
        assert_eq!(out[3], vec![30, 31, 32]);
    }
}
