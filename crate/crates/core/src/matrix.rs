use num_complex::Complex64;
use rayon::prelude::*;

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    /// Panics if `data.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Complex64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.data
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Complex64]> {
        self.data.chunks_exact(self.cols.max(1)).take(self.rows)
    }

    pub fn row_iter_mut(&mut self) -> impl Iterator<Item = &mut [Complex64]> {
        let rows = self.rows;
        self.data.chunks_exact_mut(self.cols.max(1)).take(rows)
    }

    pub(crate) fn par_rows_mut(&mut self) -> rayon::slice::ChunksExactMut<'_, Complex64> {
        let cols = self.cols.max(1);
        self.data.par_chunks_exact_mut(cols)
    }

    /// Concatenate matrices with equal row counts along the column axis.
    pub fn hconcat(parts: &[ComplexMatrix]) -> Self {
        let rows = parts.first().map_or(0, |m| m.rows);
        assert!(parts.iter().all(|m| m.rows == rows), "row counts differ");
        let cols: usize = parts.iter().map(|m| m.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for m in parts {
                data.extend_from_slice(m.row(i));
            }
        }
        Self { rows, cols, data }
    }
}

/// `Σ u_k · conj(v_k)`.
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

pub fn norm(u: &[Complex64]) -> f64 {
    u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Real part of the normalized inner product, `Re⟨u, v⟩ / (‖u‖‖v‖)`.
pub fn cosine(u: &[Complex64], v: &[Complex64]) -> f64 {
    inner(u, v).re / (norm(u) * norm(v))
}
