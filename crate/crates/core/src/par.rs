//! Order-preserving maps over independent work items. `Execution::Auto`
//! uses rayon when the `parallel` feature is on and a plain loop otherwise;
//! `Execution::Sequential` always loops, which gives benchmarks a baseline.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    #[default]
    Auto,
    Sequential,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        self == Execution::Auto && cfg!(feature = "parallel")
    }
}

pub fn map_ordered<T, R, F>(exec: Execution, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.into_par_iter().map(f).collect();
    }
    let _ = exec;
    items.into_iter().map(f).collect()
}
