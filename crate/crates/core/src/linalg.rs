//! Small dense complex linear algebra shared by the gate builders and the
//! exact solver.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::C64;

pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Truncated annihilation operator on levels `0..dim`.
pub fn annihilation(dim: usize) -> CMatrix {
    let mut a = CMatrix::zeros(dim, dim);
    for n in 1..dim {
        a[(n - 1, n)] = C64::new((n as f64).sqrt(), 0.0);
    }
    a
}

/// Truncated creation operator on levels `0..dim`.
pub fn creation(dim: usize) -> CMatrix {
    annihilation(dim).adjoint()
}

/// Kronecker product `a ⊗ b` with mode 1 as the slow index.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut out = CMatrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let aij = a[(i, j)];
            if aij == C64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

fn one_norm(m: &CMatrix) -> f64 {
    (0..m.ncols())
        .map(|j| m.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Matrix exponential by scaling and squaring with a degree-13 Padé
/// approximant (Higham 2005).
pub fn expm(m: &CMatrix) -> CMatrix {
    const B: [f64; 14] = [
        64764752532480000.0,
        32382376266240000.0,
        7771770303897600.0,
        1187353796428800.0,
        129060195264000.0,
        10559470521600.0,
        670442572800.0,
        33522128640.0,
        1323241920.0,
        40840800.0,
        960960.0,
        16380.0,
        182.0,
        1.0,
    ];
    const THETA_13: f64 = 5.371920351148152;

    let n = m.nrows();
    assert_eq!(n, m.ncols(), "expm needs a square matrix");
    let norm = one_norm(m);
    let squarings = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil() as i32
    } else {
        0
    };
    let a = m.scale(0.5f64.powi(squarings));

    let ident = CMatrix::identity(n, n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let c = |k: usize| C64::new(B[k], 0.0);

    let u_inner = &a6 * (a6.scale(B[13]) + a4.scale(B[11]) + a2.scale(B[9]))
        + a6.scale(B[7])
        + a4.scale(B[5])
        + a2.scale(B[3])
        + &ident * c(1);
    let u = &a * u_inner;
    let v = &a6 * (a6.scale(B[12]) + a4.scale(B[10]) + a2.scale(B[8]))
        + a6.scale(B[6])
        + a4.scale(B[4])
        + a2.scale(B[2])
        + &ident * c(0);

    let p = &v + &u;
    let q = &v - &u;
    let mut r = q
        .lu()
        .solve(&p)
        .expect("Padé denominator is nonsingular for scaled input");
    for _ in 0..squarings {
        r = &r * &r;
    }
    r
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = CMatrix::zeros(m.nrows(), order.len());
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Eigen-decomposition of a real symmetric matrix, eigenvalues ascending.
pub fn symmetric_eigen(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(m.nrows(), order.len());
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Spectral form of `exp(t·G)` for a fixed anti-Hermitian generator `G`.
///
/// `iG` is Hermitian, so `exp(tG) = U diag(e^{-iλt}) U†`; the decomposition is
/// computed once and each evaluation costs two matrix products.
#[derive(Debug, Clone)]
pub struct SpectralGenerator {
    values: Vec<f64>,
    vectors: CMatrix,
}

impl SpectralGenerator {
    pub fn new(generator: &CMatrix) -> Self {
        let hermitian = generator * C64::i();
        let (values, vectors) = hermitian_eigen(&hermitian);
        SpectralGenerator { values, vectors }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Eigenvalues of `iG`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn vectors(&self) -> &CMatrix {
        &self.vectors
    }

    /// Dense `exp(t·G)`.
    pub fn exp(&self, t: f64) -> CMatrix {
        let n = self.dim();
        let mut scaled = self.vectors.clone();
        for (j, &lambda) in self.values.iter().enumerate() {
            let phase = C64::from_polar(1.0, -lambda * t);
            for i in 0..n {
                scaled[(i, j)] *= phase;
            }
        }
        scaled * self.vectors.adjoint()
    }
}

pub fn is_unitary(u: &CMatrix, tol: f64) -> bool {
    let n = u.nrows();
    let prod = u.adjoint() * u;
    (0..n).all(|i| {
        (0..n).all(|j| {
            let target = if i == j { 1.0 } else { 0.0 };
            (prod[(i, j)] - C64::new(target, 0.0)).norm() <= tol
        })
    })
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
