//! Dense determinant by LU factorization with partial pivoting.

/// Row-major square matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    /// Builds a matrix from `f(row, col)` with 0-based indices.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
    }

    /// Determinant; the empty matrix has determinant 1.
    pub fn det(&self) -> f64 {
        det_lu(self.clone())
    }
}

/// Gaussian elimination with partial pivoting, consuming the matrix.
pub fn det_lu(mut a: SquareMatrix) -> f64 {
    let n = a.dim;
    let mut det = 1.0;
    for col in 0..n {
        let mut pivot = col;
        let mut best = a.get(col, col).abs();
        for row in col + 1..n {
            let v = a.get(row, col).abs();
            if v > best {
                best = v;
                pivot = row;
            }
        }
        if best == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for j in col..n {
                a.data.swap(col * n + j, pivot * n + j);
            }
            det = -det;
        }
        let p = a.get(col, col);
        det *= p;
        for row in col + 1..n {
            let factor = a.get(row, col) / p;
            if factor == 0.0 {
                continue;
            }
            for j in col + 1..n {
                let v = a.get(row, j) - factor * a.get(col, j);
                a.set(row, j, v);
            }
        }
    }
    det
}
