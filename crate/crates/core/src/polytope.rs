//! Halfspace and vertex representations of convex polytopes over exact
//! rationals, polyhedral cones, and affine-hull charts.

use crate::linalg::{solve_affine, QMatrix};
use crate::rat::{format_q, parse_q, Q, QPoint, QVector};
use num_traits::Zero;
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("infeasible system")]
    Infeasible,
    #[error("unbounded polyhedron")]
    Unbounded,
    #[error("optimum is not attained at a unique vertex")]
    NonUniqueOptimum,
    #[error("empty point set")]
    EmptyPointSet,
    #[error("point set is not full-dimensional in its chart")]
    NotFullDimensional,
    #[error("invalid polytope data: {0}")]
    Invalid(String),
}

/// One inequality `⟨normal, x⟩ >= rhs`, with an optional semantic label
/// (facet labels are planar-tree encodings for the realizations built here).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: QVector,
    pub rhs: Q,
    pub label: Option<String>,
}

impl Halfspace {
    pub fn new(normal: QVector, rhs: Q) -> Self {
        Halfspace { normal, rhs, label: None }
    }

    pub fn labeled(normal: QVector, rhs: Q, label: impl Into<String>) -> Self {
        Halfspace { normal, rhs, label: Some(label.into()) }
    }

    pub fn satisfied_by(&self, x: &QPoint) -> bool {
        self.normal.dot(x) >= self.rhs
    }

    pub fn active_at(&self, x: &QPoint) -> bool {
        self.normal.dot(x) == self.rhs
    }
}

/// One equality `⟨normal, x⟩ = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    pub normal: QVector,
    pub rhs: Q,
}

impl Hyperplane {
    pub fn new(normal: QVector, rhs: Q) -> Self {
        Hyperplane { normal, rhs }
    }

    pub fn satisfied_by(&self, x: &QPoint) -> bool {
        self.normal.dot(x) == self.rhs
    }
}

/// Halfspace representation: intersection of equalities and inequalities in
/// `R^dim`. Boundedness is not a structural invariant; operations that need
/// it check and report [`GeomError::Unbounded`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolytope {
    pub dim: usize,
    pub equalities: Vec<Hyperplane>,
    pub inequalities: Vec<Halfspace>,
}

impl HPolytope {
    pub fn new(dim: usize) -> Self {
        HPolytope { dim, equalities: Vec::new(), inequalities: Vec::new() }
    }

    pub fn contains(&self, x: &QPoint) -> bool {
        x.dim() == self.dim
            && self.equalities.iter().all(|e| e.satisfied_by(x))
            && self.inequalities.iter().all(|h| h.satisfied_by(x))
    }

    /// Indices of the inequalities tight at `x`. Meaningful for `x` in the
    /// polytope; the sorted index set identifies the minimal face containing
    /// `x`.
    pub fn active_set(&self, x: &QPoint) -> Vec<usize> {
        self.inequalities
            .iter()
            .enumerate()
            .filter(|(_, h)| h.active_at(x))
            .map(|(i, _)| i)
            .collect()
    }

    /// The reflection `2z - P`: each `⟨a,x⟩ >= b` becomes
    /// `⟨-a,x⟩ >= b - 2⟨a,z⟩`, and likewise for equalities.
    pub fn reflect(&self, z: &QPoint) -> Result<HPolytope, GeomError> {
        if z.dim() != self.dim {
            return Err(GeomError::DimensionMismatch(self.dim, z.dim()));
        }
        let two = crate::rat::qi(2);
        Ok(HPolytope {
            dim: self.dim,
            equalities: self
                .equalities
                .iter()
                .map(|e| Hyperplane::new(e.normal.neg(), &e.rhs - &two * e.normal.dot(z)))
                .collect(),
            inequalities: self
                .inequalities
                .iter()
                .map(|h| Halfspace::new(h.normal.neg(), &h.rhs - &two * h.normal.dot(z)))
                .collect(),
        })
    }

    /// Concatenate constraint systems. Redundancies are kept.
    pub fn intersect(&self, other: &HPolytope) -> Result<HPolytope, GeomError> {
        if self.dim != other.dim {
            return Err(GeomError::DimensionMismatch(self.dim, other.dim));
        }
        let mut out = self.clone();
        out.equalities.extend(other.equalities.iter().cloned());
        out.inequalities.extend(other.inequalities.iter().cloned());
        Ok(out)
    }

    /// Copy with the inequalities at `indices` turned into equalities;
    /// restricts to the face they carve out.
    pub fn with_tight(&self, indices: &[usize]) -> HPolytope {
        let mut out = self.clone();
        for &i in indices {
            let h = &self.inequalities[i];
            out.equalities.push(Hyperplane::new(h.normal.clone(), h.rhs.clone()));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim,
            "equalities": self.equalities.iter().map(|e| json!({
                "normal": vec_to_json(&e.normal),
                "rhs": format_q(&e.rhs),
            })).collect::<Vec<_>>(),
            "inequalities": self.inequalities.iter().map(|h| {
                let mut o = json!({
                    "normal": vec_to_json(&h.normal),
                    "rhs": format_q(&h.rhs),
                });
                if let Some(l) = &h.label {
                    o["label"] = json!(l);
                }
                o
            }).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<HPolytope, GeomError> {
        let dim = v["dim"].as_u64().ok_or_else(|| GeomError::Invalid("missing dim".into()))?
            as usize;
        let mut out = HPolytope::new(dim);
        for e in v["equalities"].as_array().ok_or_else(|| GeomError::Invalid("equalities".into()))? {
            out.equalities.push(Hyperplane::new(vec_from_json(&e["normal"], dim)?, q_from_json(&e["rhs"])?));
        }
        for h in v["inequalities"].as_array().ok_or_else(|| GeomError::Invalid("inequalities".into()))? {
            let mut hs = Halfspace::new(vec_from_json(&h["normal"], dim)?, q_from_json(&h["rhs"])?);
            if let Some(l) = h["label"].as_str() {
                hs.label = Some(l.to_string());
            }
            out.inequalities.push(hs);
        }
        Ok(out)
    }
}

/// Vertex representation: the extremal points of the polytope, optionally
/// labeled. Constructors do not re-check extremality; the enumeration and
/// recovery routines produce honest vertex sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPolytope {
    pub dim: usize,
    pub vertices: Vec<QPoint>,
    pub labels: Option<Vec<String>>,
}

impl VPolytope {
    pub fn new(dim: usize, vertices: Vec<QPoint>) -> Self {
        debug_assert!(vertices.iter().all(|v| v.dim() == dim));
        VPolytope { dim, vertices, labels: None }
    }

    pub fn with_labels(dim: usize, vertices: Vec<QPoint>, labels: Vec<String>) -> Self {
        assert_eq!(vertices.len(), labels.len());
        VPolytope { dim, vertices, labels: Some(labels) }
    }

    /// Vertices and labels sorted by coordinates, for order-insensitive
    /// comparison and deterministic output.
    pub fn sorted(&self) -> VPolytope {
        let mut idx: Vec<usize> = (0..self.vertices.len()).collect();
        idx.sort_by(|&a, &b| self.vertices[a].cmp(&self.vertices[b]));
        VPolytope {
            dim: self.dim,
            vertices: idx.iter().map(|&i| self.vertices[i].clone()).collect(),
            labels: self
                .labels
                .as_ref()
                .map(|ls| idx.iter().map(|&i| ls[i].clone()).collect()),
        }
    }

    pub fn same_vertex_set(&self, other: &VPolytope) -> bool {
        self.sorted().vertices == other.sorted().vertices
    }

    /// Sup-norm diameter: max over coordinates of (max - min) over vertices.
    pub fn linf_diameter(&self) -> Q {
        let mut best = Q::zero();
        for j in 0..self.dim {
            let mut lo: Option<&Q> = None;
            let mut hi: Option<&Q> = None;
            for v in &self.vertices {
                let x = &v.0[j];
                if lo.is_none_or(|l| x < l) {
                    lo = Some(x);
                }
                if hi.is_none_or(|h| x > h) {
                    hi = Some(x);
                }
            }
            if let (Some(l), Some(h)) = (lo, hi) {
                let d = h - l;
                if d > best {
                    best = d;
                }
            }
        }
        best
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim,
            "vertices": self.vertices.iter().enumerate().map(|(i, v)| {
                let mut o = json!({ "coords": vec_to_json(v) });
                if let Some(ls) = &self.labels {
                    o["label"] = json!(ls[i]);
                }
                o
            }).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<VPolytope, GeomError> {
        let dim = v["dim"].as_u64().ok_or_else(|| GeomError::Invalid("missing dim".into()))?
            as usize;
        let arr = v["vertices"].as_array().ok_or_else(|| GeomError::Invalid("vertices".into()))?;
        let mut vertices = Vec::with_capacity(arr.len());
        let mut labels = Vec::new();
        let mut any_label = false;
        for item in arr {
            vertices.push(vec_from_json(&item["coords"], dim)?);
            match item["label"].as_str() {
                Some(l) => {
                    any_label = true;
                    labels.push(l.to_string());
                }
                None => labels.push(String::new()),
            }
        }
        Ok(VPolytope { dim, vertices, labels: any_label.then_some(labels) })
    }
}

/// A closed convex polyhedral cone at the origin, in halfspace form
/// (`⟨e,w⟩ = 0` and `⟨a,w⟩ >= 0`) or generator form.
#[derive(Clone, Debug)]
pub struct Cone {
    pub dim: usize,
    pub rep: ConeRep,
}

#[derive(Clone, Debug)]
pub enum ConeRep {
    Halfspaces { equalities: Vec<QVector>, normals: Vec<QVector> },
    Generators(Vec<QVector>),
}

impl Cone {
    pub fn from_halfspaces(dim: usize, equalities: Vec<QVector>, normals: Vec<QVector>) -> Self {
        Cone { dim, rep: ConeRep::Halfspaces { equalities, normals } }
    }

    pub fn from_generators(dim: usize, generators: Vec<QVector>) -> Self {
        Cone { dim, rep: ConeRep::Generators(generators) }
    }
}

/// Exact parametrization of an affine subspace of `R^ambient_dim` by `R^dim`:
/// `embed(u) = origin + Σ u_j basis_j`, where `basis_j` carries a 1 in
/// coordinate `coord_cols[j]` and 0 in the other chart columns, so that
/// `project(x)_j = (x - origin)[coord_cols[j]]` inverts it on the subspace.
#[derive(Clone, Debug)]
pub struct AffineChart {
    pub ambient_dim: usize,
    pub dim: usize,
    origin: QPoint,
    basis: Vec<QVector>,
    coord_cols: Vec<usize>,
}

impl AffineChart {
    /// Chart of the solution set of the given equalities. `None` when the
    /// system is inconsistent.
    pub fn from_equalities(dim: usize, equalities: &[Hyperplane]) -> Option<AffineChart> {
        if equalities.is_empty() {
            return Some(AffineChart::identity(dim));
        }
        let rows: Vec<QVector> = equalities.iter().map(|e| e.normal.clone()).collect();
        let rhs: Vec<Q> = equalities.iter().map(|e| e.rhs.clone()).collect();
        let a = QMatrix::from_rows(&rows);
        let sol = solve_affine(&a, &rhs)?;
        let coord_cols: Vec<usize> =
            (0..dim).filter(|c| !sol.pivot_cols.contains(c)).collect();
        Some(AffineChart {
            ambient_dim: dim,
            dim: coord_cols.len(),
            origin: sol.particular,
            basis: sol.kernel_basis,
            coord_cols,
        })
    }

    /// Chart of the affine hull of a point set.
    pub fn from_points(points: &[QPoint]) -> Result<AffineChart, GeomError> {
        let first = points.first().ok_or(GeomError::EmptyPointSet)?;
        let ambient = first.dim();
        let diffs: Vec<QVector> = points[1..].iter().map(|p| p.sub(first)).collect();
        if diffs.is_empty() {
            return Ok(AffineChart {
                ambient_dim: ambient,
                dim: 0,
                origin: first.clone(),
                basis: Vec::new(),
                coord_cols: Vec::new(),
            });
        }
        let mut m = QMatrix::from_rows(&diffs);
        let pivots = m.rref();
        let basis: Vec<QVector> = (0..pivots.len()).map(|r| m.row(r)).collect();
        Ok(AffineChart {
            ambient_dim: ambient,
            dim: pivots.len(),
            origin: first.clone(),
            basis,
            coord_cols: pivots,
        })
    }

    pub fn identity(dim: usize) -> AffineChart {
        AffineChart {
            ambient_dim: dim,
            dim,
            origin: QVector::zeros(dim),
            basis: (0..dim)
                .map(|j| {
                    let mut v = QVector::zeros(dim);
                    v.0[j] = crate::rat::qi(1);
                    v
                })
                .collect(),
            coord_cols: (0..dim).collect(),
        }
    }

    pub fn embed(&self, u: &QVector) -> QPoint {
        assert_eq!(u.dim(), self.dim);
        let mut x = self.origin.clone();
        for (c, b) in u.0.iter().zip(self.basis.iter()) {
            x = x.add(&b.scale(c));
        }
        x
    }

    /// Chart coordinates of an ambient point. Only meaningful for points on
    /// the charted subspace (`embed(project(x)) = x` exactly there).
    pub fn project(&self, x: &QPoint) -> QVector {
        assert_eq!(x.dim(), self.ambient_dim);
        QVector(
            self.coord_cols
                .iter()
                .map(|&c| &x.0[c] - &self.origin.0[c])
                .collect(),
        )
    }

    pub fn on_chart(&self, x: &QPoint) -> bool {
        self.embed(&self.project(x)) == *x
    }

    /// Pull an ambient linear functional `⟨a, x⟩` back to chart coordinates:
    /// returns `(a', c)` with `⟨a', u⟩ + c = ⟨a, embed(u)⟩`.
    pub fn pull_back(&self, a: &QVector) -> (QVector, Q) {
        let coeffs = QVector(self.basis.iter().map(|b| a.dot(b)).collect());
        (coeffs, a.dot(&self.origin))
    }

    /// Push a chart-space linear functional `⟨a, u⟩` forward to ambient
    /// coordinates: returns `A` supported on the chart columns with
    /// `⟨A, x⟩ - ⟨A, origin⟩ = ⟨a, project(x)⟩`.
    pub fn push_forward(&self, a: &QVector) -> QVector {
        assert_eq!(a.dim(), self.dim);
        let mut out = QVector::zeros(self.ambient_dim);
        for (j, &c) in self.coord_cols.iter().enumerate() {
            out.0[c] = a.0[j].clone();
        }
        out
    }

    pub fn origin(&self) -> &QPoint {
        &self.origin
    }
}

fn vec_to_json(v: &QVector) -> Value {
    Value::Array(v.0.iter().map(|q| Value::String(format_q(q))).collect())
}

fn q_from_json(v: &Value) -> Result<Q, GeomError> {
    let s = v.as_str().ok_or_else(|| GeomError::Invalid(format!("expected rational string, got {v}")))?;
    parse_q(s).map_err(|e| GeomError::Invalid(e.to_string()))
}

fn vec_from_json(v: &Value, dim: usize) -> Result<QVector, GeomError> {
    let arr = v.as_array().ok_or_else(|| GeomError::Invalid("expected coordinate array".into()))?;
    if arr.len() != dim {
        return Err(GeomError::Invalid(format!("expected {dim} coordinates, got {}", arr.len())));
    }
    Ok(QVector(arr.iter().map(q_from_json).collect::<Result<_, _>>()?))
}

/// OFF export of a 3-dimensional (or lower) polytope. `facet_vertex_cycles`
/// lists each 2-face as vertex indices in boundary order. Coordinates are
/// written as exact `p/q` strings unless `decimal` is set, in which case a
/// 64-bit float approximation is emitted for viewer compatibility.
pub fn to_off(v: &VPolytope, facet_vertex_cycles: &[Vec<usize>], decimal: bool) -> String {
    use std::fmt::Write;
    let mut out = String::from("OFF\n");
    let _ = writeln!(out, "{} {} 0", v.vertices.len(), facet_vertex_cycles.len());
    for p in &v.vertices {
        let coords: Vec<String> = p
            .0
            .iter()
            .map(|q| {
                if decimal {
                    let f = to_f64(q);
                    format!("{f}")
                } else {
                    format_q(q)
                }
            })
            .collect();
        let _ = writeln!(out, "{}", coords.join(" "));
    }
    for cycle in facet_vertex_cycles {
        let idx: Vec<String> = cycle.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(out, "{} {}", cycle.len(), idx.join(" "));
    }
    out
}

/// Lossy conversion for viewer output only; the library itself never
/// computes with floats.
pub fn to_f64(q: &Q) -> f64 {
    let n = q.numer();
    let d = q.denom();
    // fits-in-i64 fast path, otherwise string round-trip
    match (i64::try_from(n), i64::try_from(d)) {
        (Ok(n), Ok(d)) => n as f64 / d as f64,
        _ => {
            let s = format!("{n}");
            let t = format!("{d}");
            s.parse::<f64>().unwrap_or(f64::NAN) / t.parse::<f64>().unwrap_or(f64::NAN)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{qi, qr};

    pub fn unit_square() -> HPolytope {
        let mut h = HPolytope::new(2);
        h.inequalities.push(Halfspace::new(QVector::from_ints(&[1, 0]), qi(0)));
        h.inequalities.push(Halfspace::new(QVector::from_ints(&[0, 1]), qi(0)));
        h.inequalities.push(Halfspace::new(QVector::from_ints(&[-1, 0]), qi(-1)));
        h.inequalities.push(Halfspace::new(QVector::from_ints(&[0, -1]), qi(-1)));
        h
    }

    #[test]
    fn containment_and_active_sets() {
        let h = unit_square();
        assert!(h.contains(&QVector(vec![qr(1, 2), qr(1, 2)])));
        assert!(!h.contains(&QVector(vec![qi(2), qi(0)])));
        assert_eq!(h.active_set(&QVector(vec![qi(0), qi(0)])), vec![0, 1]);
        assert_eq!(h.active_set(&QVector(vec![qr(1, 2), qi(1)])), vec![3]);
    }

    #[test]
    fn reflect_is_involution_on_feasible_sets() {
        let h = unit_square();
        let z = QVector(vec![qr(1, 3), qr(2, 3)]);
        let r = h.reflect(&z).unwrap();
        let rr = r.reflect(&z).unwrap();
        // same feasible set as the original: probe a grid of rationals
        for a in 0..=4 {
            for b in 0..=4 {
                let p = QVector(vec![qr(a, 4), qr(b, 4)]);
                assert_eq!(h.contains(&p), rr.contains(&p));
                // membership in the reflection = membership of the reflected point
                let q = z.scale(&qi(2)).sub(&p);
                assert_eq!(h.contains(&q), r.contains(&p));
            }
        }
        assert!(h.reflect(&QVector(vec![qi(0)])).is_err());
    }

    #[test]
    fn reflect_through_center_fixes_square() {
        let h = unit_square();
        let z = QVector(vec![qr(1, 2), qr(1, 2)]);
        let r = h.reflect(&z).unwrap();
        for a in 0..=4 {
            for b in 0..=4 {
                let p = QVector(vec![qr(a, 4), qr(b, 4)]);
                assert_eq!(h.contains(&p), r.contains(&p));
            }
        }
    }

    #[test]
    fn chart_from_equalities() {
        // plane x+y+z = 3 in R^3
        let eq = Hyperplane::new(QVector::from_ints(&[1, 1, 1]), qi(3));
        let chart = AffineChart::from_equalities(3, &[eq]).unwrap();
        assert_eq!(chart.dim, 2);
        let p = QVector(vec![qi(1), qi(1), qi(1)]);
        assert!(chart.on_chart(&p));
        assert_eq!(chart.embed(&chart.project(&p)), p);
        let off = QVector(vec![qi(1), qi(1), qi(2)]);
        assert!(!chart.on_chart(&off));
        // inconsistent system has no chart
        let bad = vec![
            Hyperplane::new(QVector::from_ints(&[1, 0, 0]), qi(0)),
            Hyperplane::new(QVector::from_ints(&[1, 0, 0]), qi(1)),
        ];
        assert!(AffineChart::from_equalities(3, &bad).is_none());
    }

    #[test]
    fn chart_from_points_and_pullback() {
        let pts = vec![
            QVector::from_ints(&[1, 0, 0]),
            QVector::from_ints(&[0, 1, 0]),
            QVector::from_ints(&[0, 0, 1]),
        ];
        let chart = AffineChart::from_points(&pts).unwrap();
        assert_eq!(chart.dim, 2);
        for p in &pts {
            assert!(chart.on_chart(p));
        }
        // pull back the functional x_1: ⟨a', project(x)⟩ + c = x_1 on the chart
        let a = QVector::from_ints(&[1, 0, 0]);
        let (au, c) = chart.pull_back(&a);
        for p in &pts {
            assert_eq!(au.dot(&chart.project(p)) + c.clone(), p.0[0]);
        }
        // push forward and check agreement on the chart
        let f = QVector::from_ints(&[2, -1]);
        let big = chart.push_forward(&f);
        for p in &pts {
            let lhs = big.dot(p) - big.dot(chart.origin());
            assert_eq!(lhs, f.dot(&chart.project(p)));
        }
    }

    #[test]
    fn json_round_trip() {
        let h = unit_square();
        let h2 = HPolytope::from_json(&h.to_json()).unwrap();
        assert_eq!(h, h2);
        let v = VPolytope::with_labels(
            1,
            vec![QVector(vec![qr(1, 2)]), QVector(vec![qi(2)])],
            vec!["a".into(), "b".into()],
        );
        let v2 = VPolytope::from_json(&v.to_json()).unwrap();
        assert_eq!(v, v2);
    }
}
