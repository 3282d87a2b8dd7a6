//! Seidel-style randomized incremental linear programming for a handful of
//! variables. Every subproblem carries an axis-aligned box on its remaining
//! coordinates, so the starting vertex is always a box corner.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::scalar::Scalar;

/// Half-space `a . x <= b`.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfSpace<T> {
    pub a: Vec<T>,
    pub b: T,
}

impl<T: Scalar> HalfSpace<T> {
    pub fn new(a: Vec<T>, b: T) -> Self {
        HalfSpace { a, b }
    }

    fn eval(&self, x: &[T]) -> T {
        self.a.iter().zip(x).map(|(&a, &x)| a * x).sum()
    }

    fn violated(&self, x: &[T], tol: T) -> bool {
        let scale = T::one() + self.b.abs() + self.a.iter().zip(x).map(|(&a, &x)| (a * x).abs()).sum::<T>();
        self.eval(x) > self.b + tol * scale
    }
}

/// Minimizes `c . x` subject to `cons` and `lo <= x <= hi`.
/// Returns `None` when infeasible. The seed fixes the insertion order.
pub fn minimize<T: Scalar>(c: &[T], cons: &[HalfSpace<T>], lo: &[T], hi: &[T], seed: u64) -> Option<Vec<T>> {
    let mut order: Vec<usize> = (0..cons.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let shuffled: Vec<_> = order.into_iter().map(|i| cons[i].clone()).collect();
    solve(c, &shuffled, lo, hi, T::lit(1e-12))
}

fn solve<T: Scalar>(c: &[T], cons: &[HalfSpace<T>], lo: &[T], hi: &[T], tol: T) -> Option<Vec<T>> {
    let d = c.len();
    if lo.iter().zip(hi).any(|(l, h)| l > h) {
        return None;
    }
    if d == 1 {
        return solve_1d(c[0], cons, lo[0], hi[0], tol).map(|v| vec![v]);
    }
    let mut x: Vec<T> = (0..d).map(|j| if c[j] < T::zero() { hi[j] } else { lo[j] }).collect();
    for i in 0..cons.len() {
        if !cons[i].violated(&x, tol) {
            continue;
        }
        x = on_hyperplane(c, &cons[..i], &cons[i], lo, hi, tol)?;
    }
    Some(x)
}

/// Optimum of the subproblem restricted to `h.a . x = h.b`.
fn on_hyperplane<T: Scalar>(
    c: &[T],
    prev: &[HalfSpace<T>],
    h: &HalfSpace<T>,
    lo: &[T],
    hi: &[T],
    tol: T,
) -> Option<Vec<T>> {
    let d = c.len();
    let k = (0..d).max_by(|&i, &j| crate::scalar::cmp_f(&h.a[i].abs(), &h.a[j].abs())).unwrap();
    let ak = h.a[k];
    if ak.abs() <= T::lit(1e-15) {
        // 0 . x <= b was violated
        return None;
    }
    let keep: Vec<usize> = (0..d).filter(|&j| j != k).collect();
    // x_k = (b - sum_j a_j x_j) / a_k
    let project = |g: &HalfSpace<T>| {
        let f = g.a[k] / ak;
        HalfSpace { a: keep.iter().map(|&j| g.a[j] - f * h.a[j]).collect(), b: g.b - f * h.b }
    };
    let xk_as = |sign: T, bound: T| {
        // sign * x_k <= sign * bound
        let mut a = vec![T::zero(); d];
        a[k] = sign;
        project(&HalfSpace { a, b: sign * bound })
    };
    let mut sub = Vec::with_capacity(prev.len() + 2);
    sub.push(xk_as(T::one(), hi[k]));
    sub.push(xk_as(-T::one(), lo[k]));
    sub.extend(prev.iter().map(project));
    let f = c[k] / ak;
    let c2: Vec<T> = keep.iter().map(|&j| c[j] - f * h.a[j]).collect();
    let lo2: Vec<T> = keep.iter().map(|&j| lo[j]).collect();
    let hi2: Vec<T> = keep.iter().map(|&j| hi[j]).collect();
    let y = solve(&c2, &sub, &lo2, &hi2, tol)?;
    let mut x = vec![T::zero(); d];
    let mut rest = h.b;
    for (idx, &j) in keep.iter().enumerate() {
        x[j] = y[idx];
        rest = rest - h.a[j] * y[idx];
    }
    x[k] = rest / ak;
    Some(x)
}

fn solve_1d<T: Scalar>(c: T, cons: &[HalfSpace<T>], mut lo: T, mut hi: T, tol: T) -> Option<T> {
    for g in cons {
        let (a, b) = (g.a[0], g.b);
        if a.abs() <= T::lit(1e-15) {
            if b < -tol * (T::one() + b.abs()) {
                return None;
            }
        } else if a > T::zero() {
            hi = hi.minf(b / a);
        } else {
            lo = lo.maxf(b / a);
        }
    }
    let slack = tol * (T::one() + lo.abs() + hi.abs());
    if lo > hi + slack {
        return None;
    }
    if lo > hi {
        let m = (lo + hi) * T::half();
        return Some(m);
    }
    Some(if c < T::zero() { hi } else { lo })
}
