//! Floating-point geometry of n-simplices: volumes, faces, outward normals,
//! altitudes, and the affine normalization onto the standard simplex.
//!
//! Geometry is dimension-generic; meshing and FEM downstream restrict to
//! n ∈ {2, 3}.

use crate::error::{Error, Result};
use crate::linalg::{gram_det, norm2, DenseMat};
use crate::scalar::{cast, guard, Real};
use serde::Deserialize;

/// Non-degenerate simplex in ℝⁿ, stored as the first vertex (offset) plus the
/// edge matrix `A = [p₁−p₀ … pₙ−p₀]`.
#[derive(Debug, Clone)]
pub struct Simplex<T> {
    dim: usize,
    offset: Vec<T>,
    edges: DenseMat<T>,
}

/// One boundary face `G_j` of a simplex: the face opposite vertex `j`.
#[derive(Debug, Clone)]
pub struct FaceInfo<T> {
    /// Face index: the omitted vertex.
    pub index: usize,
    /// Indices of the vertices spanning the face, ascending.
    pub vertex_indices: Vec<usize>,
    /// Unit outward normal (points away from the omitted vertex).
    pub normal: Vec<T>,
    /// (n−1)-dimensional volume of the face.
    pub measure: T,
    /// Face centroid.
    pub centroid: Vec<T>,
}

/// Affine map data onto the standard simplex: `y = B (x − p₀)` with
/// `B = A⁻¹` and the pulled-back metric `Γ = B Bᵀ`.
#[derive(Debug, Clone)]
pub struct AffineNormalization<T> {
    offset: Vec<T>,
    a: DenseMat<T>,
    b: DenseMat<T>,
    gamma: DenseMat<T>,
    det_a: T,
}

impl<T: Real> Simplex<T> {
    /// Build from `n + 1` vertices in ℝⁿ, rejecting affinely dependent input.
    pub fn new(vertices: &[Vec<T>]) -> Result<Self> {
        if vertices.is_empty() || vertices.len() < 2 {
            return Err(Error::InvalidInput("need at least 2 vertices".into()));
        }
        let dim = vertices.len() - 1;
        if vertices.iter().any(|v| v.len() != dim) {
            return Err(Error::InvalidInput(format!(
                "{} vertices require coordinates in R^{}",
                dim + 1,
                dim
            )));
        }
        let offset = vertices[0].clone();
        let mut edges = DenseMat::zeros(dim, dim);
        for j in 0..dim {
            for i in 0..dim {
                edges[(i, j)] = vertices[j + 1][i] - offset[i];
            }
        }
        let s = Self { dim, offset, edges };
        let det = s.edges.determinant().abs();
        let threshold = guard::<T>(1e-12) * s.max_edge_length().powi(dim as i32);
        if det <= threshold {
            return Err(Error::DegenerateSimplex {
                det: det.to_f64().unwrap_or(0.0),
                threshold: threshold.to_f64().unwrap_or(0.0),
            });
        }
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex(&self, i: usize) -> Vec<T> {
        if i == 0 {
            self.offset.clone()
        } else {
            (0..self.dim)
                .map(|r| self.offset[r] + self.edges[(r, i - 1)])
                .collect()
        }
    }

    pub fn vertices(&self) -> Vec<Vec<T>> {
        (0..=self.dim).map(|i| self.vertex(i)).collect()
    }

    /// The designated corner `p₀` (origin of the radial field downstream).
    pub fn corner(&self) -> &[T] {
        &self.offset
    }

    /// Edge matrix `A` (column j = `p_{j+1} − p₀`).
    pub fn edge_matrix(&self) -> &DenseMat<T> {
        &self.edges
    }

    pub fn max_edge_length(&self) -> T {
        let verts = self.vertices();
        let mut best = T::zero();
        for i in 0..verts.len() {
            for j in (i + 1)..verts.len() {
                let d: Vec<T> = verts[i]
                    .iter()
                    .zip(&verts[j])
                    .map(|(&a, &b)| a - b)
                    .collect();
                best = best.max(norm2(&d));
            }
        }
        best
    }

    /// Diameter of a simplex equals its longest edge.
    pub fn diameter(&self) -> T {
        self.max_edge_length()
    }

    /// n-volume `|det A| / n!`.
    pub fn volume(&self) -> T {
        let mut fact = T::one();
        for k in 2..=self.dim {
            fact = fact * cast::<T>(k as f64);
        }
        self.edges.determinant().abs() / fact
    }

    /// All `n + 1` faces with unit outward normals, measures, centroids.
    ///
    /// Normals come from barycentric gradients: `∇λ_j` points toward vertex
    /// j, so the outward normal of face j is `−∇λ_j / |∇λ_j|`.
    pub fn faces(&self) -> Vec<FaceInfo<T>> {
        let (b, _) = self
            .edges
            .lu_invert()
            .expect("validated at construction");
        let n = self.dim;
        let verts = self.vertices();

        let grad_lambda = |j: usize| -> Vec<T> {
            if j == 0 {
                let mut g = vec![T::zero(); n];
                for r in 0..n {
                    for c in 0..n {
                        g[c] = g[c] - b[(r, c)];
                    }
                }
                g
            } else {
                (0..n).map(|c| b[(j - 1, c)]).collect()
            }
        };

        (0..=n)
            .map(|j| {
                let g = grad_lambda(j);
                let len = norm2(&g);
                let normal: Vec<T> = g.iter().map(|&v| -v / len).collect();
                let vertex_indices: Vec<usize> = (0..=n).filter(|&i| i != j).collect();
                let span: Vec<Vec<T>> = vertex_indices[1..]
                    .iter()
                    .map(|&i| {
                        verts[i]
                            .iter()
                            .zip(&verts[vertex_indices[0]])
                            .map(|(&a, &b)| a - b)
                            .collect()
                    })
                    .collect();
                let mut fact = T::one();
                for k in 2..n {
                    fact = fact * cast::<T>(k as f64);
                }
                let measure = gram_det(&span).sqrt() / fact;
                let mut centroid = vec![T::zero(); n];
                for &i in &vertex_indices {
                    for c in 0..n {
                        centroid[c] = centroid[c] + verts[i][c];
                    }
                }
                let inv = T::one() / cast::<T>(n as f64);
                for c in 0..n {
                    centroid[c] = centroid[c] * inv;
                }
                FaceInfo {
                    index: j,
                    vertex_indices,
                    normal,
                    measure,
                    centroid,
                }
            })
            .collect()
    }

    pub fn face(&self, j: usize) -> Result<FaceInfo<T>> {
        if j > self.dim {
            return Err(Error::InvalidFace {
                face: j,
                dim: self.dim,
            });
        }
        Ok(self.faces().swap_remove(j))
    }

    /// Perpendicular distance from the vertex opposite side `j` to that
    /// side's line (triangles only), via the 2D cross product.
    pub fn altitude(&self, j: usize) -> Result<T> {
        if self.dim != 2 {
            return Err(Error::UnsupportedDimension {
                dim: self.dim,
                context: "altitude is defined for triangles",
            });
        }
        if j > 2 {
            return Err(Error::InvalidFace { face: j, dim: 2 });
        }
        let verts = self.vertices();
        let side: Vec<usize> = (0..3).filter(|&i| i != j).collect();
        let (a, b, p) = (&verts[side[0]], &verts[side[1]], &verts[j]);
        let e = [b[0] - a[0], b[1] - a[1]];
        let w = [p[0] - a[0], p[1] - a[1]];
        let cross = e[0] * w[1] - e[1] * w[0];
        Ok(cross.abs() / norm2(&e))
    }

    /// Affine normalization data (`A`, `B = A⁻¹`, `Γ = BBᵀ`, `det A`).
    pub fn normalize(&self) -> Result<AffineNormalization<T>> {
        let (b, det_a) = self.edges.lu_invert()?;
        let cond = self.edges.norm_inf() * b.norm_inf();
        // 1e12 for f64; the equivalent eps multiple for narrower scalars
        let cond_limit = cast::<T>(1e12 * f64::EPSILON) / T::epsilon();
        if cond > cond_limit {
            return Err(Error::IllConditioned {
                cond: cond.to_f64().unwrap_or(f64::INFINITY),
            });
        }
        let bt = b.transpose();
        let mut gamma = b.matmul(&bt);
        // enforce exact symmetry of the product
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let avg = (gamma[(i, j)] + gamma[(j, i)]) * cast::<T>(0.5);
                gamma[(i, j)] = avg;
                gamma[(j, i)] = avg;
            }
        }
        Ok(AffineNormalization {
            offset: self.offset.clone(),
            a: self.edges.clone(),
            b,
            gamma,
            det_a,
        })
    }

    /// (n−1)-volume of the parallelepiped spanned by the edge vectors of
    /// face `j`; equals `(n−1)! · Vol_{n−1}(G_j)`.
    pub fn parallelepiped_face_volume(&self, j: usize) -> Result<T> {
        if j > self.dim {
            return Err(Error::InvalidFace {
                face: j,
                dim: self.dim,
            });
        }
        let verts = self.vertices();
        let ids: Vec<usize> = (0..=self.dim).filter(|&i| i != j).collect();
        let span: Vec<Vec<T>> = ids[1..]
            .iter()
            .map(|&i| {
                verts[i]
                    .iter()
                    .zip(&verts[ids[0]])
                    .map(|(&a, &b)| a - b)
                    .collect()
            })
            .collect();
        Ok(gram_det(&span).sqrt())
    }
}

impl<T: Real> AffineNormalization<T> {
    pub fn matrix_a(&self) -> &DenseMat<T> {
        &self.a
    }

    pub fn matrix_b(&self) -> &DenseMat<T> {
        &self.b
    }

    /// Pulled-back metric `Γ = B Bᵀ` (symmetric positive definite).
    pub fn gamma(&self) -> &DenseMat<T> {
        &self.gamma
    }

    pub fn det_a(&self) -> T {
        self.det_a
    }

    /// `y = B (x − p₀)`; maps vertex j to the standard basis vector e_j.
    pub fn to_reference(&self, x: &[T]) -> Vec<T> {
        let shifted: Vec<T> = x.iter().zip(&self.offset).map(|(&a, &b)| a - b).collect();
        self.b.mul_vec(&shifted)
    }

    /// `x = p₀ + A y`.
    pub fn to_physical(&self, y: &[T]) -> Vec<T> {
        self.a
            .mul_vec(y)
            .iter()
            .zip(&self.offset)
            .map(|(&a, &b)| a + b)
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Shape input
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct ShapeJson {
    vertices: Vec<Vec<f64>>,
}

/// Standard simplex in dimension n: origin plus the canonical basis vectors.
pub fn standard_simplex<T: Real>(dim: usize) -> Simplex<T> {
    let mut verts = vec![vec![T::zero(); dim]];
    for j in 0..dim {
        let mut v = vec![T::zero(); dim];
        v[j] = T::one();
        verts.push(v);
    }
    Simplex::new(&verts).expect("standard simplex is non-degenerate")
}

/// The right triangle `(0,0), (π,0), (π,π)` hosting the explicit eigenbasis.
pub fn half_square_pi<T: Real>() -> Simplex<T> {
    let pi = T::PI();
    Simplex::new(&[
        vec![T::zero(), T::zero()],
        vec![pi, T::zero()],
        vec![pi, pi],
    ])
    .expect("half-square triangle is non-degenerate")
}

/// Equilateral triangle with the given side length, first vertex at origin.
pub fn equilateral<T: Real>(side: T) -> Result<Simplex<T>> {
    if side <= T::zero() {
        return Err(Error::ShapeParse("equilateral side must be positive".into()));
    }
    let h = side * cast::<T>(3f64.sqrt() / 2.0);
    Simplex::new(&[
        vec![T::zero(), T::zero()],
        vec![side, T::zero()],
        vec![side * cast::<T>(0.5), h],
    ])
}

/// Parse a shape description: a canonical name (`standard-2`, `standard-3`,
/// `half-square-pi`, `equilateral:<side>`) or inline JSON
/// `{"vertices": [[x, ...], ...]}`.
pub fn parse_shape<T: Real>(spec: &str) -> Result<Simplex<T>> {
    let spec = spec.trim();
    match spec {
        "standard-2" => return Ok(standard_simplex(2)),
        "standard-3" => return Ok(standard_simplex(3)),
        "half-square-pi" => return Ok(half_square_pi()),
        _ => {}
    }
    if let Some(side) = spec.strip_prefix("equilateral:") {
        let side: f64 = side
            .parse()
            .map_err(|e| Error::ShapeParse(format!("equilateral side: {e}")))?;
        return equilateral(cast(side));
    }
    if spec.starts_with('{') {
        let parsed: ShapeJson = serde_json::from_str(spec)
            .map_err(|e| Error::ShapeParse(format!("shape JSON: {e}")))?;
        let verts: Vec<Vec<T>> = parsed
            .vertices
            .iter()
            .map(|v| v.iter().map(|&x| cast(x)).collect())
            .collect();
        return Simplex::new(&verts);
    }
    Err(Error::ShapeParse(format!(
        "unrecognized shape '{spec}' (expected a canonical name or vertex JSON)"
    )))
}
