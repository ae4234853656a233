//! Minimal dense tensor type: row-major `f64` storage with explicit shape.
//!
//! Deliberately small — just enough arithmetic for feed-forward and
//! single-head attention networks at desk scale. No views, no broadcasting.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SpikeError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tensor {
    shape: Vec<usize>,
    data: Vec<f64>,
}

impl Tensor {
    /// Builds a tensor, checking that `shape` and `data` agree.
    pub fn new(shape: Vec<usize>, data: Vec<f64>) -> Result<Self> {
        let expected: usize = shape.iter().product();
        if shape.iter().any(|&d| d == 0) || expected != data.len() {
            return Err(SpikeError::ShapeDataMismatch {
                expected,
                got: data.len(),
                shape,
            });
        }
        Ok(Tensor { shape, data })
    }

    pub fn zeros(shape: Vec<usize>) -> Self {
        let n = shape.iter().product();
        Tensor {
            shape,
            data: vec![0.0; n],
        }
    }

    pub fn vector(data: Vec<f64>) -> Self {
        Tensor {
            shape: vec![data.len()],
            data,
        }
    }

    /// 2-D tensor from rows; all rows must have equal length.
    pub fn matrix(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(SpikeError::InvalidParam {
                name: "matrix",
                reason: "ragged rows".into(),
            });
        }
        Tensor::new(vec![r, c], rows.concat())
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Size of the last axis (the feature dimension for network inputs).
    pub fn last_dim(&self) -> usize {
        *self.shape.last().unwrap_or(&0)
    }

    /// Number of rows when the tensor is viewed as `[rows, last_dim]`.
    pub fn leading_rows(&self) -> usize {
        self.len() / self.last_dim().max(1)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Tensor {
        Tensor {
            shape: self.shape.clone(),
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn scale(&self, c: f64) -> Tensor {
        self.map(|v| c * v)
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        if self.shape != other.shape {
            return Err(SpikeError::DimensionMismatch {
                context: "tensor add".into(),
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(Tensor {
            shape: self.shape.clone(),
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Tensor) -> Result<Tensor> {
        self.add(&other.scale(-1.0))
    }

    /// Largest absolute element; 0 for empty tensors.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// 2-D matrix product `self · other`.
    pub fn matmul(&self, other: &Tensor) -> Result<Tensor> {
        let (m, k) = self.dims2("matmul lhs")?;
        let (k2, n) = other.dims2("matmul rhs")?;
        if k != k2 {
            return Err(SpikeError::DimensionMismatch {
                context: "matmul inner".into(),
                expected: k,
                got: k2,
            });
        }
        let mut out = vec![0.0; m * n];
        for i in 0..m {
            for l in 0..k {
                let a = self.data[i * k + l];
                if a == 0.0 {
                    continue;
                }
                let row = &other.data[l * n..(l + 1) * n];
                for (j, b) in row.iter().enumerate() {
                    out[i * n + j] += a * b;
                }
            }
        }
        Tensor::new(vec![m, n], out)
    }

    /// 2-D transpose.
    pub fn transposed(&self) -> Result<Tensor> {
        let (m, n) = self.dims2("transpose")?;
        let mut out = vec![0.0; m * n];
        for i in 0..m {
            for j in 0..n {
                out[j * m + i] = self.data[i * n + j];
            }
        }
        Tensor::new(vec![n, m], out)
    }

    fn dims2(&self, context: &str) -> Result<(usize, usize)> {
        if self.shape.len() != 2 {
            return Err(SpikeError::InvalidParam {
                name: "tensor rank",
                reason: format!("{context}: expected 2-D, got shape {:?}", self.shape),
            });
        }
        Ok((self.shape[0], self.shape[1]))
    }

    /// Numerically stable softmax along `axis`.
    pub fn softmax(&self, axis: usize) -> Result<Tensor> {
        if axis >= self.shape.len() {
            return Err(SpikeError::InvalidParam {
                name: "softmax axis",
                reason: format!("axis {axis} out of range for shape {:?}", self.shape),
            });
        }
        let axis_len = self.shape[axis];
        let inner: usize = self.shape[axis + 1..].iter().product();
        let outer: usize = self.shape[..axis].iter().product();
        let mut out = self.data.clone();
        for o in 0..outer {
            for i in 0..inner {
                let base = o * axis_len * inner + i;
                let mut max = f64::NEG_INFINITY;
                for a in 0..axis_len {
                    max = max.max(out[base + a * inner]);
                }
                let mut sum = 0.0;
                for a in 0..axis_len {
                    let e = (out[base + a * inner] - max).exp();
                    out[base + a * inner] = e;
                    sum += e;
                }
                for a in 0..axis_len {
                    out[base + a * inner] /= sum;
                }
            }
        }
        Tensor::new(self.shape.clone(), out)
    }
}
