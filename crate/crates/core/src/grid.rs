//! Shared mixed-radix grid scanning for the exhaustive enumerations.

/// `q^n` as a `u128` (never overflows for the supported `q <= 27` and any
/// practical `n`; saturates far beyond every budget otherwise).
pub(crate) fn size(q: u32, n: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..n {
        acc = acc.saturating_mul(q as u128);
    }
    acc
}

/// Visits every tuple of `[0, q-1]^n` in row-major order (last coordinate
/// fastest), reusing a single buffer.
pub(crate) fn scan(q: u32, n: usize, mut visit: impl FnMut(&[u32])) {
    if q == 0 {
        return;
    }
    let mut tuple = vec![0u32; n];
    loop {
        visit(&tuple);
        // increment as a base-q counter
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < q {
                break;
            }
            tuple[i] = 0;
        }
    }
}
