//! Adjacency and signless-Laplacian spectral radii with Perron vectors,
//! Rayleigh quotients, closed-form radius bounds, and the two
//! edge-rotation moves (Kelmans, Hong–Zhang).

mod eigen;
mod moves;

use num_traits::{FromPrimitive, Num};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Adjacency;
use crate::scalar::Real;

pub use eigen::{jacobi_eigen, SolveMethod, SolverOptions, SymMatrix};
pub use moves::{hong_zhang_rotate, kelmans};

/// Largest eigenvalue with its nonnegative eigenvector.
///
/// The vector is scaled so that its maximum entry is exactly 1; for a
/// disconnected graph it is supported on the first component attaining
/// the radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerronPair<T> {
    pub radius: T,
    pub vector: Vec<T>,
    /// `‖M·vector − radius·vector‖∞`.
    pub residual: T,
    pub iterations: usize,
    pub method: SolveMethod,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Operator {
    Adjacency,
    SignlessLaplacian,
}

fn components<G: Adjacency + ?Sized>(g: &G) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            for w in g.neighbor_list(u) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn perron<T: Real, G: Adjacency + ?Sized>(
    g: &G,
    op: Operator,
    opts: &SolverOptions<T>,
) -> Result<PerronPair<T>> {
    let n = g.order();
    if n == 0 {
        return Err(Error::domain("spectral radius of the empty graph"));
    }
    let mut best: Option<(Vec<usize>, eigen::BlockSolution<T>)> = None;
    for comp in components(g) {
        let sol = if comp.len() == 1 {
            eigen::BlockSolution {
                radius: T::zero(),
                vector: vec![T::one()],
                residual: T::zero(),
                iterations: 0,
                method: SolveMethod::Trivial,
            }
        } else {
            let (m, shift) = match op {
                Operator::Adjacency => {
                    let dmax = comp.iter().map(|&v| g.degree(v)).max().unwrap_or(0);
                    (SymMatrix::adjacency_of(g, &comp), T::from_usize_lossy(dmax))
                }
                Operator::SignlessLaplacian => (SymMatrix::signless_laplacian_of(g, &comp), T::zero()),
            };
            eigen::dominant_pair(&m, shift, opts)?
        };
        if best.as_ref().is_none_or(|(_, b)| sol.radius > b.radius) {
            best = Some((comp, sol));
        }
    }
    let (comp, sol) = best.expect("at least one component");
    let mut vector = vec![T::zero(); n];
    for (&v, &x) in comp.iter().zip(&sol.vector) {
        vector[v] = x;
    }
    Ok(PerronPair {
        radius: sol.radius,
        vector,
        residual: sol.residual,
        iterations: sol.iterations,
        method: sol.method,
    })
}

/// λ(G), the largest adjacency eigenvalue, with its Perron vector.
pub fn adjacency_radius<G: Adjacency + ?Sized>(g: &G) -> Result<PerronPair<f64>> {
    adjacency_radius_with(g, &SolverOptions::default())
}

/// q(G), the largest eigenvalue of `Q = D + A`, with its Perron vector.
pub fn q_radius<G: Adjacency + ?Sized>(g: &G) -> Result<PerronPair<f64>> {
    q_radius_with(g, &SolverOptions::default())
}

pub fn adjacency_radius_with<T: Real, G: Adjacency + ?Sized>(
    g: &G,
    opts: &SolverOptions<T>,
) -> Result<PerronPair<T>> {
    perron(g, Operator::Adjacency, opts)
}

pub fn q_radius_with<T: Real, G: Adjacency + ?Sized>(
    g: &G,
    opts: &SolverOptions<T>,
) -> Result<PerronPair<T>> {
    perron(g, Operator::SignlessLaplacian, opts)
}

/// `xᵀQ(G)x / xᵀx`.
pub fn rayleigh_q<T: Real, G: Adjacency + ?Sized>(g: &G, x: &[T]) -> Result<T> {
    let n = g.order();
    if x.len() != n {
        return Err(Error::domain(format!("vector length {} for order {n}", x.len())));
    }
    let norm = x.iter().fold(T::zero(), |acc, &v| acc + v * v);
    if norm == T::zero() {
        return Err(Error::domain("Rayleigh quotient of the zero vector"));
    }
    let mut num = T::zero();
    for u in 0..n {
        num += T::from_usize_lossy(g.degree(u)) * x[u] * x[u];
        for v in u + 1..n {
            if g.is_adjacent(u, v) {
                num += (T::one() + T::one()) * x[u] * x[v];
            }
        }
    }
    Ok(num / norm)
}

/// Upper bound on λ(G) for a graph with `n` vertices, `e` edges and minimum
/// degree at least `delta`: `(δ − 1 + √(8e − 4δn + (δ+1)²)) / 2`.
pub fn hong_bound<T: Real>(n: usize, e: usize, delta: usize) -> Result<T> {
    let disc = 8 * e as i128 - 4 * (delta as i128) * (n as i128) + (delta as i128 + 1).pow(2);
    if disc < 0 {
        return Err(Error::domain(format!(
            "negative discriminant {disc} for n={n}, e={e}, delta={delta}"
        )));
    }
    let two = T::one() + T::one();
    let d = T::from_usize_lossy(delta);
    let root = T::from_i128(disc).expect("representable").sqrt();
    Ok((d - T::one() + root) / two)
}

/// Upper bound on q(G): `2e/(n − 1) + n − 2`.
///
/// Generic over any numeric type, so it evaluates exactly over rationals.
pub fn feng_yu_bound<T: Num + FromPrimitive + Copy>(n: usize, edges: T) -> Result<T> {
    if n < 2 {
        return Err(Error::domain(format!("Feng–Yu bound needs n ≥ 2, got {n}")));
    }
    let two = T::one() + T::one();
    let nn = T::from_usize(n).ok_or_else(|| Error::domain("order not representable"))?;
    Ok(two * edges / (nn - T::one()) + nn - two)
}
