//! Small exact linear algebra: determinants and inverses over `Q`, a linear
//! solver used by the regularization step, and a determinant over `Q(eta_N)`
//! for the Vandermonde check.

use crate::cyclo::CycloNum;
use crate::rational::Rational;
use num_traits::{One, Zero};

/// Determinant of a square rational matrix by fraction-free-ish Gaussian
/// elimination (plain division is exact over `Q`).
pub fn det_rational(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero());
        let Some(p) = pivot else { return Rational::zero() };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pv = a[col][col].clone();
        det *= &pv;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pv;
            for c in col..n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
        }
    }
    det
}

/// Inverse of a square rational matrix by Gauss–Jordan; errors if singular.
pub fn invert_rational(m: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>, String> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or("singular matrix")?;
        a.swap(pivot, col);
        inv.swap(pivot, col);
        let pv = a[col][col].clone();
        for c in 0..n {
            a[col][c] /= &pv;
            inv[col][c] /= &pv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                let va = &f * &a[col][c];
                let vi = &f * &inv[col][c];
                a[r][c] -= va;
                inv[r][c] -= vi;
            }
        }
    }
    Ok(inv)
}

/// Solves `M x = b` for rational `M` (square, nonsingular) and a vector `b`
/// of field elements; the elimination only ever divides by rational pivots.
pub fn solve_rational_system(
    m: &[Vec<Rational>],
    b: &[CycloNum],
) -> Result<Vec<CycloNum>, String> {
    let n = m.len();
    assert_eq!(b.len(), n);
    let inv = invert_rational(m)?;
    let level = b[0].level();
    let mut out = Vec::with_capacity(n);
    for row in &inv {
        let mut acc = CycloNum::zero(level);
        for (j, c) in row.iter().enumerate() {
            if !c.is_zero() {
                acc += &b[j].scale(c);
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// Determinant over `Q(eta_N)` (a field, so ordinary elimination applies).
pub fn det_cyclo(m: &[Vec<CycloNum>]) -> CycloNum {
    let n = m.len();
    let level = m[0][0].level();
    let mut a: Vec<Vec<CycloNum>> = m.to_vec();
    let mut det = CycloNum::one(level);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero());
        let Some(p) = pivot else { return CycloNum::zero(level) };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pv = a[col][col].clone();
        det *= &pv;
        let pv_inv = pv.inverse().expect("nonzero pivot");
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &pv_inv;
            for c in col..n {
                let v = &f * &a[col][c];
                a[r][c] -= &v;
            }
        }
    }
    det
}
