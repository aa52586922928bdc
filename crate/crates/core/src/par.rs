//! Data-parallel helpers. With the `parallel` feature these run on the
//! rayon pool when asked to; without it they are plain sequential loops.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Whether parallel execution is compiled in.
pub const AVAILABLE: bool = cfg!(feature = "parallel");

/// Order-preserving map over a slice.
pub fn map<T, R, F>(items: &[T], parallel: bool, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return items.par_iter().map(f).collect();
    }
    let _ = parallel;
    items.iter().map(f).collect()
}

/// Order-preserving map over `0..n`.
pub fn map_range<R, F>(n: usize, parallel: bool, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = parallel;
    (0..n).map(f).collect()
}

/// Order-preserving fallible map; the first error in input order wins.
pub fn try_map<T, R, E, F>(items: &[T], parallel: bool, f: F) -> Result<Vec<R>, E>
where
    T: Sync,
    R: Send,
    E: Send,
    F: Fn(&T) -> Result<R, E> + Sync + Send,
{
    map(items, parallel, f).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let v: Vec<u64> = (0..1000).collect();
        let a = map(&v, true, |x| x * x);
        let b = map(&v, false, |x| x * x);
        assert_eq!(a, b);
        assert_eq!(map_range(10, true, |i| i + 1), (1..=10).collect::<Vec<_>>());
        let r: Result<Vec<u64>, u64> = try_map(&v, true, |&x| if x == 7 || x == 9 { Err(x) } else { Ok(x) });
        assert_eq!(r, Err(7));
    }
}
