/// Solves `A x = rhs` for tridiagonal `A` by the Thomas algorithm.
///
/// `lower[i]` is `A[i+1][i]`, `diag[i]` is `A[i][i]` and `upper[i]` is
/// `A[i][i+1]`. No pivoting is done, so every pivot met during forward
/// elimination must be nonzero; that holds for the first-step systems built
/// in [`crate::hitting`], where each pivot equals some `omega(i) > 0`.
pub fn solve_tridiagonal(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    assert!(n > 0, "empty system");
    assert_eq!(lower.len(), n - 1);
    assert_eq!(upper.len(), n - 1);
    assert_eq!(rhs.len(), n);

    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    let mut pivot = diag[0];
    if n > 1 {
        c[0] = upper[0] / pivot;
    }
    d[0] = rhs[0] / pivot;
    for i in 1..n {
        pivot = diag[i] - lower[i - 1] * c[i - 1];
        if i < n - 1 {
            c[i] = upper[i] / pivot;
        }
        d[i] = (rhs[i] - lower[i - 1] * d[i - 1]) / pivot;
    }

    let mut x = d;
    for i in (0..n - 1).rev() {
        x[i] -= c[i] * x[i + 1];
    }
    x
}
