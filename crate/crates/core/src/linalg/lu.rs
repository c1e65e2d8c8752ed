//! LU factorization with partial pivoting.

use super::{CMatrix, C64, ONE, ZERO};
use crate::error::{Result, SrgError};

/// `PA = LU`, stored packed: unit-lower `L` below the diagonal, `U` on and above.
#[derive(Clone, Debug)]
pub struct Lu {
    packed: CMatrix,
    perm: Vec<usize>,
    swaps: usize,
}

pub fn lu(a: &CMatrix) -> Result<Lu> {
    if !a.is_square() {
        return Err(SrgError::NotSquare {
            op: "lu",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut m = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut swaps = 0;
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| m[(i, k)].norm().total_cmp(&m[(j, k)].norm()))
            .unwrap();
        if p != k {
            for j in 0..n {
                let t = m[(k, j)];
                m[(k, j)] = m[(p, j)];
                m[(p, j)] = t;
            }
            perm.swap(k, p);
            swaps += 1;
        }
        let pivot = m[(k, k)];
        if pivot == ZERO {
            continue;
        }
        for i in k + 1..n {
            let l = m[(i, k)] / pivot;
            m[(i, k)] = l;
            for j in k + 1..n {
                let u = m[(k, j)];
                m[(i, j)] -= l * u;
            }
        }
    }
    Ok(Lu {
        packed: m,
        perm,
        swaps,
    })
}

impl Lu {
    pub fn determinant(&self) -> C64 {
        let n = self.packed.rows();
        let d: C64 = (0..n).map(|i| self.packed[(i, i)]).product();
        if self.swaps % 2 == 1 {
            -d
        } else {
            d
        }
    }

    pub fn is_singular(&self) -> bool {
        let n = self.packed.rows();
        (0..n).any(|i| self.packed[(i, i)] == ZERO)
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[C64]) -> Result<Vec<C64>> {
        let n = self.packed.rows();
        if b.len() != n {
            return Err(SrgError::ShapeMismatch {
                op: "lu solve",
                expected: n.to_string(),
                got: b.len().to_string(),
            });
        }
        if self.is_singular() {
            return Err(SrgError::SingularScaling {
                condition: f64::INFINITY,
            });
        }
        let mut x: Vec<C64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let l = self.packed[(i, j)];
                let xj = x[j];
                x[i] -= l * xj;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let u = self.packed[(i, j)];
                let xj = x[j];
                x[i] -= u * xj;
            }
            x[i] /= self.packed[(i, i)];
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<CMatrix> {
        let n = self.packed.rows();
        let mut inv = CMatrix::zeros(n, n);
        let mut e = vec![ZERO; n];
        for j in 0..n {
            e.iter_mut().for_each(|v| *v = ZERO);
            e[j] = ONE;
            let col = self.solve(&e)?;
            for i in 0..n {
                inv[(i, j)] = col[i];
            }
        }
        Ok(inv)
    }
}

pub fn inverse(a: &CMatrix) -> Result<CMatrix> {
    lu(a)?.inverse()
}
