use super::{CMatrix, C64, ZERO};
use crate::error::{Result, SrgError};

const MAX_SWEEPS: usize = 100;

/// Eigendecomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermEigResult {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Unitary; column `k` pairs with `eigenvalues[k]`.
    pub eigenvectors: CMatrix,
}

impl HermEigResult {
    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty decomposition")
    }
}

/// Cyclic complex Jacobi eigensolver.
///
/// The input must be Hermitian up to `1e-10 * max(1, ||A||_F)`; the
/// Hermitian part `(A + A*)/2` is what gets diagonalized.
pub fn herm_eig(a: &CMatrix) -> Result<HermEigResult> {
    if !a.is_square() {
        return Err(SrgError::NotSquare {
            op: "herm_eig",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let scale = a.frobenius_norm();
    let defect = a.hermitian_defect();
    if defect > 1e-10 * scale.max(1.0) {
        return Err(SrgError::NotHermitian { asymmetry: defect });
    }

    let mut m = vec![ZERO; n * n];
    for i in 0..n {
        for j in 0..n {
            m[i * n + j] = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
        }
        m[i * n + i].im = 0.0;
    }
    let mut v = CMatrix::identity(n);

    let mut converged = n <= 1;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i * n + j].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale || off == 0.0 {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut m, &mut v, n, p, q, scale);
            }
        }
    }
    if !converged {
        return Err(SrgError::NotConverged {
            routine: "herm_eig (Jacobi)",
            iterations: MAX_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i * n + i].re.total_cmp(&m[j * n + j].re));
    let eigenvalues = order.iter().map(|&i| m[i * n + i].re).collect();
    let mut eigenvectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for r in 0..n {
            eigenvectors[(r, dst)] = v[(r, src)];
        }
    }
    Ok(HermEigResult {
        eigenvalues,
        eigenvectors,
    })
}

/// One Jacobi rotation annihilating `m[p][q]`.
///
/// The phase of `m[p][q]` is first absorbed into coordinate `q`, leaving a
/// real symmetric 2x2 problem solved by the usual tangent formula.
fn rotate(m: &mut [C64], v: &mut CMatrix, n: usize, p: usize, q: usize, scale: f64) {
    let apq = m[p * n + q];
    let g = apq.norm();
    if g <= 1e-300 || g <= 1e-18 * scale {
        m[p * n + q] = ZERO;
        m[q * n + p] = ZERO;
        return;
    }
    let phase = apq / g;
    let app = m[p * n + p].re;
    let aqq = m[q * n + q].re;
    let theta = (aqq - app) / (2.0 * g);
    let t = if theta.is_finite() && theta.abs() < 1e150 {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    } else {
        0.5 / theta
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // J = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane.
    let j00 = C64::new(c, 0.0);
    let j01 = C64::new(s, 0.0);
    let j10 = -phase.conj() * s;
    let j11 = phase.conj() * c;

    for k in 0..n {
        let akp = m[k * n + p];
        let akq = m[k * n + q];
        m[k * n + p] = akp * j00 + akq * j10;
        m[k * n + q] = akp * j01 + akq * j11;
    }
    for k in 0..n {
        let apk = m[p * n + k];
        let aqk = m[q * n + k];
        m[p * n + k] = j00.conj() * apk + j10.conj() * aqk;
        m[q * n + k] = j01.conj() * apk + j11.conj() * aqk;
    }
    m[p * n + q] = ZERO;
    m[q * n + p] = ZERO;
    m[p * n + p].im = 0.0;
    m[q * n + q].im = 0.0;

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * j00 + vkq * j10;
        v[(k, q)] = vkp * j01 + vkq * j11;
    }
}

/// Hermitian positive-definite inverse square root `M^{-1/2}`.
///
/// Rejects inputs with an eigenvalue at or below `1e-14 * lambda_max`.
pub fn inv_sqrt_hpd(m: &CMatrix) -> Result<CMatrix> {
    let eig = herm_eig(m)?;
    let n = m.rows();
    if n == 0 {
        return Ok(CMatrix::zeros(0, 0));
    }
    let lmax = eig.max_eigenvalue();
    let lmin = eig.eigenvalues[0];
    if lmax <= 0.0 || lmin <= 1e-14 * lmax {
        return Err(SrgError::NotPositiveDefinite {
            min_eigenvalue: lmin,
        });
    }
    let q = &eig.eigenvectors;
    let mut out = CMatrix::zeros(n, n);
    for (k, &lam) in eig.eigenvalues.iter().enumerate() {
        let w = 1.0 / lam.sqrt();
        for i in 0..n {
            let qik = q[(i, k)] * w;
            for j in 0..n {
                out[(i, j)] += qik * q[(j, k)].conj();
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ONE;

    fn random_hermitian(n: usize, seed: u64) -> CMatrix {
        let mut s = seed;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        let data = (0..n * n).map(|_| C64::new(next(), next())).collect();
        let a = CMatrix::new(n, n, data).unwrap();
        a.add(&a.adjoint()).unwrap()
    }

    fn check_contract(a: &CMatrix, eig: &HermEigResult) {
        let n = a.rows();
        let v = &eig.eigenvectors;
        let tol = 1e-10 * a.frobenius_norm().max(1.0);
        for k in 0..n {
            let x = v.column(k);
            let ax = a.mul_vec(&x);
            let res: f64 = ax
                .iter()
                .zip(&x)
                .map(|(&y, &xi)| (y - xi * eig.eigenvalues[k]).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(res <= tol, "residual {res} for pair {k}");
        }
        let gram = v.adjoint().matmul(v).unwrap();
        let defect = gram.sub(&CMatrix::identity(n)).unwrap().frobenius_norm();
        assert!(defect <= 1e-10 * n as f64);
        assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn diagonal_input_sorted() {
        let a = CMatrix::from_diag(&[C64::new(3.0, 0.0), ONE, C64::new(2.0, 0.0)]);
        let eig = herm_eig(&a).unwrap();
        assert_eq!(eig.eigenvalues, vec![1.0, 2.0, 3.0]);
        check_contract(&a, &eig);
    }

    #[test]
    fn swap_matrix() {
        let a = CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let eig = herm_eig(&a).unwrap();
        assert!((eig.eigenvalues[0] + 1.0).abs() < 1e-15);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-15);
        check_contract(&a, &eig);
    }

    #[test]
    fn random_reconstruction() {
        for seed in 0..20 {
            let a = random_hermitian(6, seed);
            let eig = herm_eig(&a).unwrap();
            check_contract(&a, &eig);
            let lam: Vec<C64> = eig.eigenvalues.iter().map(|&l| C64::new(l, 0.0)).collect();
            let v = &eig.eigenvectors;
            let rebuilt = v
                .matmul(&CMatrix::from_diag(&lam))
                .unwrap()
                .matmul(&v.adjoint())
                .unwrap();
            assert!(rebuilt.sub(&a).unwrap().frobenius_norm() < 1e-10);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(herm_eig(&a), Err(SrgError::NotHermitian { .. })));
    }

    #[test]
    fn inv_sqrt_examples() {
        let i = CMatrix::identity(3);
        assert!(inv_sqrt_hpd(&i).unwrap().sub(&i).unwrap().frobenius_norm() < 1e-15);

        let d = CMatrix::from_diag(&[C64::new(4.0, 0.0), C64::new(9.0, 0.0)]);
        let s = inv_sqrt_hpd(&d).unwrap();
        let want = CMatrix::from_diag(&[C64::new(0.5, 0.0), C64::new(1.0 / 3.0, 0.0)]);
        assert!(s.sub(&want).unwrap().frobenius_norm() < 1e-15);
    }

    #[test]
    fn inv_sqrt_defining_relation() {
        for seed in 0..10 {
            let t = random_hermitian(5, 100 + seed).scale(C64::new(0.3, 0.7));
            let m = CMatrix::identity(5)
                .add(&t.adjoint().matmul(&t).unwrap())
                .unwrap();
            let s = inv_sqrt_hpd(&m).unwrap();
            let prod = s.adjoint().matmul(&s).unwrap().matmul(&m).unwrap();
            assert!(prod.sub(&CMatrix::identity(5)).unwrap().frobenius_norm() <= 1e-9 * 5.0);
            let comm = s.matmul(&m).unwrap().sub(&m.matmul(&s).unwrap()).unwrap();
            assert!(comm.frobenius_norm() <= 1e-9);
        }
    }

    #[test]
    fn inv_sqrt_rejects_singular() {
        let d = CMatrix::from_diag(&[ONE, ZERO]);
        assert!(matches!(
            inv_sqrt_hpd(&d),
            Err(SrgError::NotPositiveDefinite { .. })
        ));
    }
}
