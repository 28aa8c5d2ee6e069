//! The classical diagonals recovered by the general machinery: the simplex
//! with its staircase realization `Δ^n = {1 >= z_1 >= ... >= z_n >= 0}` and
//! the cube `C^n = [0,1]^n`, both oriented by the all-ones vector. Closed
//! forms here; equality with the generic geometric diagonal is tested.

use crate::diagonal::{diagonal_in, DiagonalError};
use crate::polytope::{GeomError, HPolytope, Halfspace, VPolytope};
use crate::rat::{qi, qr, Q, QPoint, QVector};
use num_traits::{One, Zero};

/// `Δ^n = conv{(1,...,1,0,...,0)}` with vertex `i` carrying `i` ones,
/// oriented by `(1,...,1)`.
#[derive(Clone, Debug)]
pub struct SimplexRealization {
    pub n: usize,
    pub vertices: VPolytope,
    pub halfspaces: HPolytope,
    pub orientation: QVector,
}

impl SimplexRealization {
    pub fn new(n: usize) -> Self {
        let mut points = Vec::with_capacity(n + 1);
        let mut labels = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let coords: Vec<Q> = (0..n).map(|k| if k < i { Q::one() } else { Q::zero() }).collect();
            points.push(QVector(coords));
            labels.push(i.to_string());
        }
        let mut h = HPolytope::new(n);
        if n >= 1 {
            // 1 >= z_1, z_i >= z_{i+1}, z_n >= 0
            let mut first = QVector::zeros(n);
            first.0[0] = -Q::one();
            h.inequalities.push(Halfspace::new(first, qi(-1)));
            for i in 0..n.saturating_sub(1) {
                let mut step = QVector::zeros(n);
                step.0[i] = Q::one();
                step.0[i + 1] = -Q::one();
                h.inequalities.push(Halfspace::new(step, Q::zero()));
            }
            let mut last = QVector::zeros(n);
            last.0[n - 1] = Q::one();
            h.inequalities.push(Halfspace::new(last, Q::zero()));
        }
        SimplexRealization {
            n,
            vertices: VPolytope::with_labels(n, points, labels),
            halfspaces: h,
            orientation: QVector(vec![Q::one(); n]),
        }
    }

    pub fn contains(&self, z: &QPoint) -> bool {
        self.halfspaces.contains(z)
    }
}

/// The staircase closed form of the simplex diagonal. With
/// `i = #{k : z_k >= 1/2}` (the largest index with `z_i >= 1/2`, ties at 1/2
/// included on the left), the value is
/// `((2z_1-1, ..., 2z_i-1, 0, ..., 0), (1, ..., 1, 2z_{i+1}, ..., 2z_n))`.
pub fn aw_diagonal(n: usize, z: &QPoint) -> Result<(QPoint, QPoint), DiagonalError> {
    let simplex = SimplexRealization::new(n);
    if z.dim() != n || !simplex.contains(z) {
        return Err(DiagonalError::PointOutside);
    }
    let half = qr(1, 2);
    let i = z.0.iter().take_while(|&x| *x >= half).count();
    let two = qi(2);
    let lo = QVector(
        (0..n)
            .map(|k| if k < i { &two * &z.0[k] - Q::one() } else { Q::zero() })
            .collect(),
    );
    let hi = QVector(
        (0..n)
            .map(|k| if k < i { Q::one() } else { &two * &z.0[k] })
            .collect(),
    );
    Ok((lo, hi))
}

/// The `n+1` cells of the simplex subdivision: vertex index sets of the
/// pairs `(Δ^{0..i}, Δ^{i..n})`.
pub fn aw_cells(n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    (0..=n)
        .map(|i| ((0..=i).collect(), (i..=n).collect()))
        .collect()
}

/// `C^n = [0,1]^n` oriented by `(1,...,1)`. Vertices are labeled by their
/// 0/1 coordinate strings.
#[derive(Clone, Debug)]
pub struct CubeRealization {
    pub n: usize,
    pub vertices: VPolytope,
    pub halfspaces: HPolytope,
    pub orientation: QVector,
}

impl CubeRealization {
    pub fn new(n: usize) -> Self {
        assert!(n <= 16, "cube vertex count explodes");
        let mut points = Vec::with_capacity(1 << n);
        let mut labels = Vec::with_capacity(1 << n);
        for mask in 0..(1u32 << n) {
            let coords: Vec<Q> = (0..n)
                .map(|k| if (mask >> k) & 1 == 1 { Q::one() } else { Q::zero() })
                .collect();
            let label: String = (0..n)
                .map(|k| if (mask >> k) & 1 == 1 { '1' } else { '0' })
                .collect();
            points.push(QVector(coords));
            labels.push(label);
        }
        let mut h = HPolytope::new(n);
        for k in 0..n {
            let mut lo = QVector::zeros(n);
            lo.0[k] = Q::one();
            h.inequalities.push(Halfspace::new(lo, Q::zero()));
            let mut hi = QVector::zeros(n);
            hi.0[k] = -Q::one();
            h.inequalities.push(Halfspace::new(hi, qi(-1)));
        }
        CubeRealization {
            n,
            vertices: VPolytope::with_labels(n, points, labels),
            halfspaces: h,
            orientation: QVector(vec![Q::one(); n]),
        }
    }

    pub fn contains(&self, z: &QPoint) -> bool {
        self.halfspaces.contains(z)
    }
}

/// The coordinatewise interval diagonal of the cube:
/// `z_k ↦ (max(0, 2z_k - 1), min(1, 2z_k))`.
pub fn cube_diagonal(n: usize, z: &QPoint) -> Result<(QPoint, QPoint), DiagonalError> {
    let cube = CubeRealization::new(n);
    if z.dim() != n || !cube.contains(z) {
        return Err(DiagonalError::PointOutside);
    }
    let two = qi(2);
    let mut lo = Vec::with_capacity(n);
    let mut hi = Vec::with_capacity(n);
    for zk in &z.0 {
        let d = &two * zk;
        lo.push(if d > Q::one() { &d - &Q::one() } else { Q::zero() });
        hi.push(if d < Q::one() { d } else { Q::one() });
    }
    Ok((QVector(lo), QVector(hi)))
}

/// The `2^n` cells of the cube subdivision: per coordinate either
/// `({0}, [0,1])` or `([0,1], {1})`, returned as vertex index sets into
/// [`CubeRealization::vertices`].
pub fn cube_cells(n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::with_capacity(1 << n);
    for choice in 0..(1u32 << n) {
        // bit k set: coordinate k uses ([0,1], {1}); clear: ({0}, [0,1])
        let mut f = Vec::new();
        let mut g = Vec::new();
        for mask in 0..(1u32 << n) {
            let in_f = (0..n).all(|k| (choice >> k) & 1 == 1 || (mask >> k) & 1 == 0);
            let in_g = (0..n).all(|k| (choice >> k) & 1 == 0 || (mask >> k) & 1 == 1);
            if in_f {
                f.push(mask as usize);
            }
            if in_g {
                g.push(mask as usize);
            }
        }
        out.push((f, g));
    }
    out.sort();
    out
}

/// Generic-machinery evaluation of the simplex diagonal, for cross-checks.
pub fn simplex_diagonal_generic(
    simplex: &SimplexRealization,
    z: &QPoint,
) -> Result<(QPoint, QPoint), DiagonalError> {
    diagonal_in(&simplex.halfspaces, &simplex.orientation, z)
}

pub fn cube_diagonal_generic(
    cube: &CubeRealization,
    z: &QPoint,
) -> Result<(QPoint, QPoint), DiagonalError> {
    diagonal_in(&cube.halfspaces, &cube.orientation, z)
}

/// Vertex index set of the minimal face containing a point (a vertex belongs
/// iff it is tight on every constraint active at the point). Used to compare
/// sampled cells with the closed-form cells.
pub fn minimal_face_vertices(
    h: &HPolytope,
    v: &VPolytope,
    z: &QPoint,
) -> Result<Vec<usize>, GeomError> {
    if !h.contains(z) {
        return Err(GeomError::Infeasible);
    }
    let active = h.active_set(z);
    Ok((0..v.vertices.len())
        .filter(|&i| active.iter().all(|&a| h.inequalities[a].active_at(&v.vertices[i])))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagonal::{lower_faces, AffineMap, Sampler};

    #[test]
    fn simplex_realization_shape() {
        for n in 0..=4 {
            let s = SimplexRealization::new(n);
            assert_eq!(s.vertices.vertices.len(), n + 1);
            for p in &s.vertices.vertices {
                assert!(s.contains(p));
            }
            if n >= 1 {
                let enumerated = crate::dd::vertex_enumeration(&s.halfspaces).unwrap();
                assert!(enumerated.same_vertex_set(&s.vertices));
            }
        }
    }

    #[test]
    fn aw_examples() {
        // vertex inputs return the vertex twice
        for n in 1..=3 {
            let s = SimplexRealization::new(n);
            for v in &s.vertices.vertices {
                let (lo, hi) = aw_diagonal(n, v).unwrap();
                assert_eq!(&lo, v);
                assert_eq!(&hi, v);
            }
        }
        // n=1, z=1/3 -> ((0),(2/3))
        let (lo, hi) = aw_diagonal(1, &QVector(vec![qr(1, 3)])).unwrap();
        assert_eq!(lo, QVector(vec![qi(0)]));
        assert_eq!(hi, QVector(vec![qr(2, 3)]));
        // n=2, z=(3/4, 1/4) -> ((1/2, 0), (1, 1/2))
        let (lo, hi) = aw_diagonal(2, &QVector(vec![qr(3, 4), qr(1, 4)])).unwrap();
        assert_eq!(lo, QVector(vec![qr(1, 2), qi(0)]));
        assert_eq!(hi, QVector(vec![qi(1), qr(1, 2)]));
        // outside
        assert!(aw_diagonal(2, &QVector(vec![qr(1, 4), qr(3, 4)])).is_err());
    }

    #[test]
    fn aw_matches_generic_machinery() {
        for n in 1..=4 {
            let s = SimplexRealization::new(n);
            let mut sampler = Sampler::new(41);
            for _ in 0..60 {
                let z = sampler.sample(&s.vertices);
                let closed = aw_diagonal(n, &z).unwrap();
                let generic = simplex_diagonal_generic(&s, &z).unwrap();
                assert_eq!(closed, generic, "n={n} z={z}");
            }
            // boundary tie: a coordinate exactly 1/2 agrees with the machinery
            let mut z = QVector::zeros(n);
            z.0[0] = qr(1, 2);
            let closed = aw_diagonal(n, &z).unwrap();
            let generic = simplex_diagonal_generic(&s, &z).unwrap();
            assert_eq!(closed, generic);
        }
    }

    #[test]
    fn aw_cells_match_lower_faces() {
        for n in 1..=4usize {
            let s = SimplexRealization::new(n);
            let verts = &s.vertices.vertices;
            let m = verts.len();
            // P×P with β and ψ = ⟨x-y, 1⟩
            let mut prod = Vec::with_capacity(m * m);
            for a in verts {
                for b in verts {
                    let mut c = a.0.clone();
                    c.extend(b.0.iter().cloned());
                    prod.push(QVector(c));
                }
            }
            let half = qr(1, 2);
            let beta = AffineMap::linear(
                (0..n)
                    .map(|i| {
                        let mut r = QVector::zeros(2 * n);
                        r.0[i] = half.clone();
                        r.0[n + i] = half.clone();
                        r
                    })
                    .collect(),
            );
            let mut psi = QVector::zeros(2 * n);
            for i in 0..n {
                psi.0[i] = qi(1);
                psi.0[n + i] = qi(-1);
            }
            let cells = lower_faces(&VPolytope::new(2 * n, prod), &beta, &psi).unwrap();
            let mut got: Vec<(Vec<usize>, Vec<usize>)> = cells
                .iter()
                .map(|c| {
                    let mut f: Vec<usize> = c.vertex_indices.iter().map(|&k| k / m).collect();
                    let mut g: Vec<usize> = c.vertex_indices.iter().map(|&k| k % m).collect();
                    f.sort_unstable();
                    f.dedup();
                    g.sort_unstable();
                    g.dedup();
                    (f, g)
                })
                .collect();
            got.sort();
            assert_eq!(got, aw_cells(n), "n={n}");
            for c in &cells {
                assert_eq!(c.dim, c.projected_dim, "tightness n={n}");
            }
        }
    }

    #[test]
    fn aw_cell_dimensions() {
        for n in 0..=4 {
            let cells = aw_cells(n);
            assert_eq!(cells.len(), n + 1);
            for (f, g) in cells {
                assert_eq!((f.len() - 1) + (g.len() - 1), n);
            }
        }
    }

    #[test]
    fn cube_examples() {
        let z = QVector::zeros(3);
        let (lo, hi) = cube_diagonal(3, &z).unwrap();
        assert_eq!(lo, z);
        assert_eq!(hi, z);
        let (lo, hi) = cube_diagonal(1, &QVector(vec![qr(1, 3)])).unwrap();
        assert_eq!(lo, QVector(vec![qi(0)]));
        assert_eq!(hi, QVector(vec![qr(2, 3)]));
        let (lo, hi) = cube_diagonal(2, &QVector(vec![qr(1, 3), qr(3, 4)])).unwrap();
        assert_eq!(lo, QVector(vec![qi(0), qr(1, 2)]));
        assert_eq!(hi, QVector(vec![qr(2, 3), qi(1)]));
        assert!(cube_diagonal(2, &QVector(vec![qi(2), qi(0)])).is_err());
    }

    #[test]
    fn cube_matches_generic_machinery() {
        for n in 1..=4 {
            let c = CubeRealization::new(n);
            let mut sampler = Sampler::new(59);
            for _ in 0..40 {
                let z = sampler.sample(&c.vertices);
                let closed = cube_diagonal(n, &z).unwrap();
                let generic = cube_diagonal_generic(&c, &z).unwrap();
                assert_eq!(closed, generic, "n={n} z={z}");
            }
        }
    }

    #[test]
    fn cube_cells_are_products_of_interval_cells() {
        for n in 1..=3usize {
            let cells = cube_cells(n);
            assert_eq!(cells.len(), 1 << n);
            let c = CubeRealization::new(n);
            // each sampled diagonal lands in one of the closed-form cells
            let mut sampler = Sampler::new(5);
            for _ in 0..50 {
                let z = sampler.sample(&c.vertices);
                let (lo, hi) = cube_diagonal(n, &z).unwrap();
                let f = minimal_face_vertices(&c.halfspaces, &c.vertices, &lo).unwrap();
                let g = minimal_face_vertices(&c.halfspaces, &c.vertices, &hi).unwrap();
                assert!(
                    cells
                        .iter()
                        .any(|(cf, cg)| f.iter().all(|i| cf.contains(i))
                            && g.iter().all(|i| cg.contains(i))),
                    "n={n} z={z}"
                );
            }
        }
    }
}
