//! Finite-dimensional representation checks: verify that a
//! generator-to-matrix assignment kills all relations of a presentation, and
//! evaluate elements through it for nonvanishing certificates.

use thiserror::Error;

use crate::freealg::FreeElement;
use crate::quotient::Presentation;
use crate::scalar::Cyclotomic;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("matrix for generator {0} is not {1}x{1}")]
    BadShape(usize, usize),
    #[error("representation has {got} generator matrices but the rank is {expected}")]
    RankMismatch { expected: usize, got: usize },
}

type Matrix = Vec<Vec<Cyclotomic>>;

/// One square cyclotomic matrix per generator.
#[derive(Clone)]
pub struct MatrixRep {
    dimension: usize,
    matrices: Vec<Matrix>,
}

fn zero_matrix(n: usize) -> Matrix {
    vec![vec![Cyclotomic::zero(1); n]; n]
}

fn identity_matrix(n: usize) -> Matrix {
    let mut m = zero_matrix(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Cyclotomic::one();
    }
    m
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = zero_matrix(n);
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for (j, bkj) in b[k].iter().enumerate() {
                if bkj.is_zero() {
                    continue;
                }
                out[i][j] = out[i][j].add(&aik.mul(bkj));
            }
        }
    }
    out
}

fn mat_is_zero(a: &Matrix) -> bool {
    a.iter().all(|row| row.iter().all(|c| c.is_zero()))
}

impl MatrixRep {
    pub fn new(dimension: usize, matrices: Vec<Matrix>) -> Result<Self, RepError> {
        for (g, m) in matrices.iter().enumerate() {
            if m.len() != dimension || m.iter().any(|row| row.len() != dimension) {
                return Err(RepError::BadShape(g + 1, dimension));
            }
        }
        Ok(MatrixRep { dimension, matrices })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn rank(&self) -> usize {
        self.matrices.len()
    }

    /// Evaluate the algebra map `x_i -> r_i` on an element.
    pub fn evaluate(&self, u: &FreeElement) -> Result<Matrix, RepError> {
        if u.rank() != self.matrices.len() {
            return Err(RepError::RankMismatch {
                expected: self.matrices.len(),
                got: u.rank(),
            });
        }
        let mut acc = zero_matrix(self.dimension);
        for (w, c) in u.terms() {
            let mut m = identity_matrix(self.dimension);
            for &l in w.letters() {
                m = mat_mul(&m, &self.matrices[(l - 1) as usize]);
            }
            for i in 0..self.dimension {
                for j in 0..self.dimension {
                    if !m[i][j].is_zero() {
                        acc[i][j] = acc[i][j].add(&c.mul(&m[i][j]));
                    }
                }
            }
        }
        Ok(acc)
    }

    pub fn is_nonzero(&self, u: &FreeElement) -> Result<bool, RepError> {
        Ok(!mat_is_zero(&self.evaluate(u)?))
    }
}

/// True iff every relation of `p` evaluates to the zero matrix; on failure
/// the index of the first failing relation is reported.
pub fn verify_representation(p: &Presentation, r: &MatrixRep) -> Result<Result<(), usize>, RepError> {
    if p.braiding.rank() != r.rank() {
        return Err(RepError::RankMismatch {
            expected: r.rank(),
            got: p.braiding.rank(),
        });
    }
    for (k, rel) in p.relations.iter().enumerate() {
        if !mat_is_zero(&r.evaluate(rel)?) {
            return Ok(Err(k));
        }
    }
    Ok(Ok(()))
}
