use std::collections::BTreeMap;

/// Square sparse matrix in compressed-row form with sorted column indices.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    n: usize,
    row_start: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl CsrMatrix {
    /// Builds from per-row (column, value) lists; duplicate columns are summed.
    pub fn from_rows(rows: Vec<Vec<(usize, f64)>>) -> Self {
        let n = rows.len();
        let mut row_start = Vec::with_capacity(n + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_start.push(0);
        for row in rows {
            let mut merged: BTreeMap<usize, f64> = BTreeMap::new();
            for (c, v) in row {
                assert!(c < n, "column {c} out of range");
                *merged.entry(c).or_insert(0.0) += v;
            }
            for (c, v) in merged {
                cols.push(c);
                vals.push(v);
            }
            row_start.push(cols.len());
        }
        Self {
            n,
            row_start,
            cols,
            vals,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.row_start[i]..self.row_start[i + 1];
        self.cols[r.clone()].iter().copied().zip(self.vals[r].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let r = self.row_start[i]..self.row_start[i + 1];
        match self.cols[r.clone()].binary_search(&j) {
            Ok(k) => self.vals[r.start + k],
            Err(_) => 0.0,
        }
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    /// y = A x
    pub fn mul_vec(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.n);
        assert_eq!(y.len(), self.n);
        for (i, yi) in y.iter_mut().enumerate() {
            let mut s = 0.0;
            for k in self.row_start[i]..self.row_start[i + 1] {
                s += self.vals[k] * x[self.cols[k]];
            }
            *yi = s;
        }
    }

    /// All stored entries as (row, column, value).
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |i| self.row(i).map(move |(j, v)| (i, j, v)))
    }

    /// Every stored (i, j, v) has a stored (j, i, v) with identical value.
    pub fn is_symmetric(&self) -> bool {
        self.triplets().all(|(i, j, v)| {
            let r = self.row_start[j]..self.row_start[j + 1];
            matches!(self.cols[r.clone()].binary_search(&i), Ok(k) if self.vals[r.start + k] == v)
        })
    }

    /// Smallest column index stored in row i, or i for an empty row.
    pub fn first_column(&self, i: usize) -> usize {
        let r = self.row_start[i]..self.row_start[i + 1];
        self.cols[r].first().copied().unwrap_or(i).min(i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_and_multiply() {
        let a = CsrMatrix::from_rows(vec![
            vec![(0, 2.0), (1, -1.0)],
            vec![(1, 1.0), (0, -1.0), (1, 1.0), (2, -1.0)],
            vec![(1, -1.0), (2, 2.0)],
        ]);
        assert_eq!(a.get(1, 1), 2.0);
        assert_eq!(a.nnz(), 7);
        assert!(a.is_symmetric());
        let mut y = vec![0.0; 3];
        a.mul_vec(&[1.0, 1.0, 1.0], &mut y);
        assert_eq!(y, vec![1.0, 0.0, 1.0]);
        assert_eq!(a.first_column(2), 1);
    }

    #[test]
    fn asymmetry_detected() {
        let a = CsrMatrix::from_rows(vec![vec![(0, 1.0), (1, 0.5)], vec![(0, 0.25), (1, 1.0)]]);
        assert!(!a.is_symmetric());
    }
}
