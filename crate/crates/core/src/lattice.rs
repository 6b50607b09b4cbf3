use std::ops::{Add, Mul};

/// One coin-then-shift step on dense arrays over `[-n, n]`.
///
/// The returned arrays cover `[-(n+1), n+1]`. The up component moves right,
/// the down component moves left.
pub(crate) fn shift_step<T>(up: &[T], down: &[T], m: [[T; 2]; 2]) -> (Vec<T>, Vec<T>)
where
    T: Copy + Default + Add<Output = T> + Mul<Output = T>,
{
    debug_assert_eq!(up.len(), down.len());
    let len = up.len() + 2;
    let mut new_up = vec![T::default(); len];
    let mut new_down = vec![T::default(); len];
    for (i, (&u, &d)) in up.iter().zip(down).enumerate() {
        new_up[i + 2] = m[0][0] * u + m[0][1] * d;
        new_down[i] = m[1][0] * u + m[1][1] * d;
    }
    (new_up, new_down)
}

/// Site index of array slot `i` in a window of half-width `n`.
#[inline]
pub(crate) fn site(i: usize, n: usize) -> i64 {
    i as i64 - n as i64
}

/// Array slot of site `j`, if inside the window.
#[inline]
pub(crate) fn slot(j: i64, n: usize) -> Option<usize> {
    let i = j + n as i64;
    (0..=2 * n as i64).contains(&i).then_some(i as usize)
}
