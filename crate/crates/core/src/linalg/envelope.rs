use super::sparse::CsrMatrix;
use crate::error::{Error, Result};

/// Cholesky factor L (A = L Lᵀ) stored row by row over the envelope of A:
/// row i keeps the entries from its first nonzero column up to the diagonal.
/// Fill-in stays inside the envelope, so banded orderings stay cheap.
#[derive(Debug, Clone)]
pub struct EnvelopeCholesky {
    first: Vec<usize>,
    offset: Vec<usize>,
    data: Vec<f64>,
}

impl EnvelopeCholesky {
    /// Factors `a + shift·diag(d)` where `d` is given per row (pass an empty
    /// slice for a zero shift).
    pub fn factor(a: &CsrMatrix, shift: f64, d: &[f64]) -> Result<Self> {
        let n = a.dim();
        let first: Vec<usize> = (0..n).map(|i| a.first_column(i)).collect();
        let mut offset = Vec::with_capacity(n + 1);
        offset.push(0);
        for i in 0..n {
            offset.push(offset[i] + (i - first[i] + 1));
        }
        let mut data = vec![0.0; offset[n]];
        for i in 0..n {
            for (j, v) in a.row(i) {
                if j <= i {
                    data[offset[i] + j - first[i]] = v;
                }
            }
            if !d.is_empty() {
                data[offset[i] + i - first[i]] += shift * d[i];
            }
        }
        for i in 0..n {
            let fi = first[i];
            let (before, rest) = data.split_at_mut(offset[i]);
            let row_i = &mut rest[..i - fi + 1];
            for j in fi..i {
                let fj = first[j];
                let row_j = &before[offset[j]..offset[j] + (j - fj + 1)];
                let start = fi.max(fj);
                let li = &row_i[start - fi..j - fi];
                let lj = &row_j[start - fj..j - fj];
                let dot: f64 = li.iter().zip(lj).map(|(x, y)| x * y).sum();
                row_i[j - fi] = (row_i[j - fi] - dot) / row_j[j - fj];
            }
            let sq: f64 = row_i[..i - fi].iter().map(|x| x * x).sum();
            let pivot = row_i[i - fi] - sq;
            if !(pivot > 0.0 && pivot.is_finite()) {
                return Err(Error::Factorization(format!(
                    "non-positive pivot {pivot:e} at row {i} of {n}"
                )));
            }
            row_i[i - fi] = pivot.sqrt();
        }
        Ok(Self { first, offset, data })
    }

    pub fn dim(&self) -> usize {
        self.first.len()
    }

    /// Stored entries of L.
    pub fn envelope_size(&self) -> usize {
        self.data.len()
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.data[self.offset[i]..self.offset[i + 1]]
    }

    /// Solves (L Lᵀ) x = b in place.
    pub fn solve_in_place(&self, x: &mut [f64]) {
        let n = self.dim();
        assert_eq!(x.len(), n);
        for i in 0..n {
            let fi = self.first[i];
            let row = self.row(i);
            let dot: f64 = row[..i - fi].iter().zip(&x[fi..i]).map(|(l, v)| l * v).sum();
            x[i] = (x[i] - dot) / row[i - fi];
        }
        for i in (0..n).rev() {
            let fi = self.first[i];
            let row = self.row(i);
            x[i] /= row[i - fi];
            let xi = x[i];
            for (l, v) in row[..i - fi].iter().zip(&mut x[fi..i]) {
                *v -= l * xi;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laplacian_1d(n: usize) -> CsrMatrix {
        CsrMatrix::from_rows(
            (0..n)
                .map(|i| {
                    let mut r = vec![(i, 2.0)];
                    if i > 0 {
                        r.push((i - 1, -1.0));
                    }
                    if i + 1 < n {
                        r.push((i + 1, -1.0));
                    }
                    r
                })
                .collect(),
        )
    }

    #[test]
    fn solves_tridiagonal() {
        let a = laplacian_1d(50);
        let f = EnvelopeCholesky::factor(&a, 0.0, &[]).unwrap();
        assert_eq!(f.envelope_size(), 99);
        let want: Vec<f64> = (0..50).map(|i| (i as f64 * 0.37).sin()).collect();
        let mut b = vec![0.0; 50];
        a.mul_vec(&want, &mut b);
        f.solve_in_place(&mut b);
        for (x, y) in b.iter().zip(&want) {
            assert!((x - y).abs() < 1e-11);
        }
    }

    #[test]
    fn shift_and_indefinite_failure() {
        let a = laplacian_1d(10);
        let ones = vec![1.0; 10];
        assert!(EnvelopeCholesky::factor(&a, 1.0, &ones).is_ok());
        assert!(matches!(
            EnvelopeCholesky::factor(&a, -3.0, &ones),
            Err(Error::Factorization(_))
        ));
    }

    #[test]
    fn envelope_with_gaps() {
        // arrow matrix: row 3 couples to column 0 only
        let a = CsrMatrix::from_rows(vec![
            vec![(0, 4.0), (3, 1.0)],
            vec![(1, 3.0)],
            vec![(2, 2.0)],
            vec![(0, 1.0), (3, 5.0)],
        ]);
        let f = EnvelopeCholesky::factor(&a, 0.0, &[]).unwrap();
        let want = [1.0, -2.0, 0.5, 3.0];
        let mut b = vec![0.0; 4];
        a.mul_vec(&want, &mut b);
        f.solve_in_place(&mut b);
        for (x, y) in b.iter().zip(want) {
            assert!((x - y).abs() < 1e-14);
        }
    }
}
