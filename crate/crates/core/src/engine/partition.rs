use rayon::prelude::*;

use crate::model::Triple;

/// Length of each of `workers` contiguous chunks covering `len` items.
pub(crate) fn chunk_len(len: usize, workers: usize) -> usize {
    len.div_ceil(workers.max(1)).max(1)
}

/// Runs `f` over `workers` disjoint partitions of `items` in parallel and
/// concatenates the per-partition outputs.
pub(crate) fn scan_partitioned<T, F>(items: &[T], workers: usize, f: F) -> Vec<Triple>
where
    T: Sync,
    F: Fn(&T, &mut Vec<Triple>) + Sync,
{
    if items.is_empty() {
        return Vec::new();
    }
    items
        .par_chunks(chunk_len(items.len(), workers))
        .map(|chunk| {
            let mut out = Vec::new();
            for item in chunk {
                f(item, &mut out);
            }
            out
        })
        .flatten_iter()
        .collect()
}
