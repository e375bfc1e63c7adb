//! Dense symmetric matrices, shifted power iteration and cyclic Jacobi.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Adjacency;
use crate::scalar::Real;

/// Row-major dense symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Real> SymMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        SymMatrix { n, data: vec![T::zero(); n * n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    /// `A(G)` restricted to `verts` (in the given order).
    pub fn adjacency_of<G: Adjacency + ?Sized>(g: &G, verts: &[usize]) -> Self {
        let mut m = Self::zeros(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if g.is_adjacent(u, v) {
                    m.set(i, j, T::one());
                }
            }
        }
        m
    }

    /// `Q(G) = D(G) + A(G)` restricted to `verts`; degrees are taken in the whole graph.
    pub fn signless_laplacian_of<G: Adjacency + ?Sized>(g: &G, verts: &[usize]) -> Self {
        let mut m = Self::adjacency_of(g, verts);
        for (i, &u) in verts.iter().enumerate() {
            m.set(i, i, T::from_usize_lossy(g.degree(u)));
        }
        m
    }

    pub fn mul_vec(&self, x: &[T], y: &mut [T]) {
        for (i, yi) in y.iter_mut().enumerate() {
            let row = &self.data[i * self.n..(i + 1) * self.n];
            *yi = row.iter().zip(x).fold(T::zero(), |acc, (&a, &b)| acc + a * b);
        }
    }

    /// `‖Mx − ρx‖∞`.
    pub fn residual(&self, rho: T, x: &[T]) -> T {
        let mut y = vec![T::zero(); self.n];
        self.mul_vec(x, &mut y);
        y.iter()
            .zip(x)
            .fold(T::zero(), |acc, (&yi, &xi)| acc.max((yi - rho * xi).abs()))
    }

    pub fn rayleigh(&self, x: &[T]) -> T {
        let mut y = vec![T::zero(); self.n];
        self.mul_vec(x, &mut y);
        dot(x, &y) / dot(x, x)
    }
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

/// Which route produced a Perron pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveMethod {
    /// Trivial component (isolated vertex or edgeless graph).
    Trivial,
    PowerIteration,
    Jacobi,
}

/// Stopping rules for the eigensolver.
#[derive(Debug, Clone, Copy)]
pub struct SolverOptions<T> {
    /// Target `‖Mx − ρx‖∞` for a max-normalised `x`.
    pub tolerance: T,
    pub max_iterations: usize,
    /// Iterations between stagnation checks; power iteration hands over to
    /// Jacobi when the residual fails to halve across one window.
    pub stagnation_window: usize,
}

impl<T: Real> Default for SolverOptions<T> {
    fn default() -> Self {
        SolverOptions {
            tolerance: T::default_tolerance(),
            max_iterations: 1_000_000,
            stagnation_window: 512,
        }
    }
}

/// Result of a dominant-eigenpair solve on one irreducible block.
#[derive(Debug, Clone)]
pub(crate) struct BlockSolution<T> {
    pub radius: T,
    pub vector: Vec<T>,
    pub residual: T,
    pub iterations: usize,
    pub method: SolveMethod,
}

/// Dominant eigenpair of a nonnegative irreducible symmetric matrix.
///
/// Power iteration runs on `M + shift·I`, where `shift` makes the spectrum
/// nonnegative so the Perron root dominates in modulus.
pub(crate) fn dominant_pair<T: Real>(
    m: &SymMatrix<T>,
    shift: T,
    opts: &SolverOptions<T>,
) -> Result<BlockSolution<T>> {
    let n = m.dim();
    let mut x = vec![T::one(); n];
    let mut y = vec![T::zero(); n];
    let mut window_start = T::infinity();
    let mut residual = T::infinity();
    for it in 1..=opts.max_iterations {
        m.mul_vec(&x, &mut y);
        for (yi, &xi) in y.iter_mut().zip(&x) {
            *yi += shift * xi;
        }
        let rho = dot(&x, &y) / dot(&x, &x);
        residual = y
            .iter()
            .zip(&x)
            .fold(T::zero(), |acc, (&yi, &xi)| acc.max((yi - rho * xi).abs()));
        if residual <= opts.tolerance {
            return Ok(BlockSolution {
                radius: rho - shift,
                vector: x,
                residual,
                iterations: it,
                method: SolveMethod::PowerIteration,
            });
        }
        if it % opts.stagnation_window == 0 {
            if residual > window_start * T::from_f64(0.5).unwrap() {
                return jacobi_pair(m, opts, it);
            }
            window_start = residual;
        }
        let top = y.iter().fold(T::zero(), |acc, &v| acc.max(v));
        for (xi, &yi) in x.iter_mut().zip(&y) {
            *xi = yi / top;
        }
    }
    Err(Error::Numerical {
        iterations: opts.max_iterations,
        residual: residual.to_f64().unwrap_or(f64::NAN),
    })
}

fn jacobi_pair<T: Real>(
    m: &SymMatrix<T>,
    opts: &SolverOptions<T>,
    iterations: usize,
) -> Result<BlockSolution<T>> {
    let (values, vectors) = jacobi_eigen(m);
    let top = (0..values.len())
        .max_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite eigenvalues"))
        .expect("non-empty matrix");
    let mut v: Vec<T> = vectors[top].iter().map(|x| x.abs()).collect();
    let max = v.iter().fold(T::zero(), |acc, &x| acc.max(x));
    for x in &mut v {
        *x /= max;
    }
    let rho = m.rayleigh(&v);
    let residual = m.residual(rho, &v);
    if residual > opts.tolerance {
        return Err(Error::Numerical {
            iterations,
            residual: residual.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(BlockSolution {
        radius: rho,
        vector: v,
        residual,
        iterations,
        method: SolveMethod::Jacobi,
    })
}

/// Full eigendecomposition by cyclic Jacobi rotations.
///
/// Returns the eigenvalues and, for each, its unit eigenvector.
pub fn jacobi_eigen<T: Real>(m: &SymMatrix<T>) -> (Vec<T>, Vec<Vec<T>>) {
    let n = m.dim();
    let mut a = m.data.clone();
    let mut v = vec![T::zero(); n * n];
    for i in 0..n {
        v[i * n + i] = T::one();
    }
    let two = T::one() + T::one();
    for _sweep in 0..100 {
        let off: T = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .fold(T::zero(), |acc, (i, j)| acc + a[i * n + j] * a[i * n + j]);
        let scale: T = a.iter().fold(T::zero(), |acc, &x| acc + x * x);
        if off <= T::epsilon() * T::epsilon() * scale.max(T::min_positive_value()) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == T::zero() {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (two * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let values = (0..n).map(|i| a[i * n + i]).collect();
    let vectors = (0..n).map(|j| (0..n).map(|i| v[i * n + j]).collect()).collect();
    (values, vectors)
}
