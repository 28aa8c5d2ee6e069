//! The geometric diagonal of a positively oriented polytope, the
//! matching-pair description of its image on (products of) Loday
//! realizations, and three mutually independent ways to compute the induced
//! polytopal subdivision: Tamari combinatorics, normal-cone linear programs,
//! and pointwise sampling. A general coherent-subdivision routine
//! (lower faces of a lifted projection) provides a fourth, fiber-polytope
//! route used by the classical examples.

use crate::dd::{extremal_points, facet_recovery, vertex_enumeration};
use crate::loday::{LodayError, ProductRealization};
use crate::lp::cone_feasible;
use crate::polytope::{AffineChart, Cone, GeomError, HPolytope, VPolytope};
use crate::rat::{qi, Q, QPoint, QVector};
use crate::trees::{enumerate_planar_trees, Forest, TreeError};
use crate::volume::{hull_dimension, volume_in_chart};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagonalError {
    #[error("point is not in the polytope")]
    PointOutside,
    #[error("orientation is not admissible here: optimum not attained at a unique vertex")]
    NotAdmissible,
    #[error("subdivision validation failed: {0}")]
    Validation(String),
    #[error("tree error: {0}")]
    Tree(#[from] TreeError),
    #[error("geometry error: {0}")]
    Geom(#[from] GeomError),
    #[error("realization error: {0}")]
    Loday(#[from] LodayError),
}

/// `(bm, tp)` of `P ∩ (2z - P)` for the polytope given by `h`, oriented by
/// `orientation`. The workhorse shared by realizations, faces, simplices and
/// cubes.
pub fn diagonal_in(
    h: &HPolytope,
    orientation: &QVector,
    z: &QPoint,
) -> Result<(QPoint, QPoint), DiagonalError> {
    if !h.contains(z) {
        return Err(DiagonalError::PointOutside);
    }
    let intersection = h.intersect(&h.reflect(z)?)?;
    let verts = vertex_enumeration(&intersection)?;
    let mut lo: Option<(&QPoint, Q)> = None;
    let mut hi: Option<(&QPoint, Q)> = None;
    let mut lo_tie = false;
    let mut hi_tie = false;
    for p in &verts.vertices {
        let val = orientation.dot(p);
        match &lo {
            Some((q, best)) => {
                if val < *best {
                    lo = Some((p, val.clone()));
                    lo_tie = false;
                } else if val == *best && *q != p {
                    lo_tie = true;
                }
            }
            None => lo = Some((p, val.clone())),
        }
        match &hi {
            Some((q, best)) => {
                if val > *best {
                    hi = Some((p, val));
                    hi_tie = false;
                } else if val == *best && *q != p {
                    hi_tie = true;
                }
            }
            None => hi = Some((p, val)),
        }
    }
    let (lo, _) = lo.ok_or(DiagonalError::PointOutside)?;
    let (hi, _) = hi.ok_or(DiagonalError::PointOutside)?;
    if lo_tie || hi_tie {
        return Err(DiagonalError::NotAdmissible);
    }
    // central symmetry of the intersection: tp = 2z - bm, and the section
    // property (lo + hi)/2 = z, exactly
    let reflected = z.scale(&qi(2)).sub(lo);
    debug_assert_eq!(&reflected, hi);
    if &reflected != hi {
        return Err(DiagonalError::NotAdmissible);
    }
    Ok((lo.clone(), hi.clone()))
}

/// The diagonal evaluated at one point of a (product of) realization(s),
/// with the minimal faces containing the two output points.
#[derive(Clone, Debug)]
pub struct DiagonalResult {
    pub z: QPoint,
    pub lo: QPoint,
    pub hi: QPoint,
    pub lo_face: Forest,
    pub hi_face: Forest,
}

pub fn pointwise_diagonal(
    p: &ProductRealization,
    z: &QPoint,
) -> Result<DiagonalResult, DiagonalError> {
    let (lo, hi) = diagonal_in(&p.halfspaces, &p.orientation, z)?;
    let lo_face = p.forest_of_active_facets(&p.halfspaces.active_set(&lo));
    let hi_face = p.forest_of_active_facets(&p.halfspaces.active_set(&hi));
    Ok(DiagonalResult { z: z.clone(), lo, hi, lo_face, hi_face })
}

/// A pair of faces of matching dimensions whose product lies in the image of
/// the diagonal: `tp F <= bm G` and `dim F + dim G = dim P`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MatchingPair {
    pub f: Forest,
    pub g: Forest,
}

impl MatchingPair {
    pub fn dims(&self) -> (usize, usize) {
        (self.f.face_dim(), self.g.face_dim())
    }

    pub fn to_json(&self) -> Value {
        let (df, dg) = self.dims();
        json!({
            "F": forest_json(&self.f),
            "G": forest_json(&self.g),
            "dimF": df,
            "dimG": dg,
        })
    }
}

fn forest_json(f: &Forest) -> Value {
    if f.0.len() == 1 {
        f.0[0].to_json()
    } else {
        Value::Array(f.0.iter().map(|t| t.to_json()).collect())
    }
}

/// The matching pairs of `K_n` by the Tamari-order formula, in lexicographic
/// order of the label encodings.
pub fn magical_pairs(n: usize) -> Result<Vec<MatchingPair>, DiagonalError> {
    if n < 2 {
        return Err(DiagonalError::Tree(TreeError::ArityTooSmall(2)));
    }
    let faces: Vec<Forest> = enumerate_planar_trees(n)?
        .into_iter()
        .map(Forest::single)
        .collect();
    matching_pairs_of_faces(&faces, n - 2)
}

/// Matching pairs among the given faces: `dim F + dim G = dim` and
/// `tp F <= bm G` componentwise in the Tamari order.
pub fn matching_pairs_of_faces(
    faces: &[Forest],
    dim: usize,
) -> Result<Vec<MatchingPair>, DiagonalError> {
    let mut out = Vec::new();
    for f in faces {
        for g in faces {
            if f.face_dim() + g.face_dim() != dim {
                continue;
            }
            if f.top_refinement().tamari_leq(&g.bottom_refinement())? {
                out.push(MatchingPair { f: f.clone(), g: g.clone() });
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Matching pairs of a product realization by the Tamari route.
pub fn magical_pairs_product(p: &ProductRealization) -> Result<Vec<MatchingPair>, DiagonalError> {
    matching_pairs_of_faces(&p.face_forests()?, p.dim())
}

/// The geometric oracle: pairs of matching-dimension faces admitting no
/// improving direction `w` with `⟨v,w⟩ > 0`, `x - εw` and `y + εw` staying in
/// the polytope. Normal cones are read off the labeled H-representation, so
/// this route never consults the Tamari order.
pub fn normal_cone_pairs(p: &ProductRealization) -> Result<Vec<MatchingPair>, DiagonalError> {
    let faces = p.face_forests()?;
    let d = p.dim();
    let ambient = p.ambient_dim();
    let hull_equalities: Vec<QVector> = p
        .halfspaces
        .equalities
        .iter()
        .map(|e| e.normal.clone())
        .collect();
    let tangent_cone = |forest: &Forest| -> Result<Cone, DiagonalError> {
        let active = p.active_facets_of_forest(forest)?;
        let normals: Vec<QVector> = active
            .iter()
            .map(|&i| p.halfspaces.inequalities[i].normal.clone())
            .collect();
        Ok(Cone::from_halfspaces(ambient, hull_equalities.clone(), normals))
    };
    let mut out = Vec::new();
    for f in &faces {
        let nf = tangent_cone(f)?;
        for g in &faces {
            if f.face_dim() + g.face_dim() != d {
                continue;
            }
            let ng = tangent_cone(g)?;
            if !cone_feasible(&p.orientation, &nf, &ng)? {
                out.push(MatchingPair { f: f.clone(), g: g.clone() });
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Deterministic interior sampling: convex combinations of all vertices with
/// integer weights below `denom_bound`, reduced to rationals.
pub struct Sampler {
    rng: ChaCha8Rng,
    denom_bound: u32,
}

pub const DEFAULT_DENOM_BOUND: u32 = 97;

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), denom_bound: DEFAULT_DENOM_BOUND }
    }

    pub fn with_denom_bound(seed: u64, denom_bound: u32) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), denom_bound: denom_bound.max(2) }
    }

    /// A random rational point of the polytope spanned by `vertices`.
    pub fn sample(&mut self, vertices: &VPolytope) -> QPoint {
        let n = vertices.vertices.len();
        loop {
            let weights: Vec<u32> =
                (0..n).map(|_| self.rng.gen_range(0..self.denom_bound)).collect();
            let total: u32 = weights.iter().sum();
            if total == 0 {
                continue;
            }
            let total = qi(total as i64);
            let mut z = QVector::zeros(vertices.dim);
            for (w, v) in weights.iter().zip(vertices.vertices.iter()) {
                if *w > 0 {
                    z = z.add(&v.scale(&(qi(*w as i64) / total.clone())));
                }
            }
            return z;
        }
    }
}

/// The randomized oracle: evaluate the diagonal at `trials` random points
/// and collect the pairs of minimal faces of matching total dimension.
/// Every returned pair must appear in the matching-pair enumeration
/// (soundness is a test, not an assumption here).
pub fn sample_oracle(
    p: &ProductRealization,
    trials: usize,
    seed: u64,
) -> Result<Vec<MatchingPair>, DiagonalError> {
    let mut sampler = Sampler::new(seed);
    let d = p.dim();
    let mut hits: BTreeSet<MatchingPair> = BTreeSet::new();
    for _ in 0..trials {
        let z = sampler.sample(&p.vertices);
        let res = pointwise_diagonal(p, &z)?;
        if res.lo_face.face_dim() + res.hi_face.face_dim() == d {
            hits.insert(MatchingPair { f: res.lo_face, g: res.hi_face });
        }
    }
    Ok(hits.into_iter().collect())
}

/// One cell of the induced subdivision: the midpoint polytope
/// `(F + G)/2` of a matching pair.
#[derive(Clone, Debug)]
pub struct SubdivisionCell {
    pub pair: MatchingPair,
    pub geometry: VPolytope,
}

/// The polytopal subdivision `β(F×G)` over all matching pairs, validated:
/// exact cell volumes sum to the volume of the polytope and pairwise cell
/// intersections are lower-dimensional, which together certify an
/// interior-disjoint covering.
pub struct SubdivisionComplex {
    pub cells: Vec<SubdivisionCell>,
}

pub fn subdivision(p: &ProductRealization) -> Result<SubdivisionComplex, DiagonalError> {
    let pairs = magical_pairs_product(p)?;
    let d = p.dim();
    let ambient = p.ambient_dim();
    let mut cells = Vec::with_capacity(pairs.len());
    for pair in pairs {
        let f = p.face(&pair.f)?;
        let g = p.face(&pair.g)?;
        let mut midpoints = Vec::with_capacity(f.vertices.vertices.len() * g.vertices.vertices.len());
        for x in &f.vertices.vertices {
            for y in &g.vertices.vertices {
                midpoints.push(x.midpoint(y));
            }
        }
        let geometry = extremal_points(ambient, &midpoints)?;
        cells.push(SubdivisionCell { pair, geometry });
    }

    // covering: exact volumes in a shared chart of the polytope
    let chart = AffineChart::from_points(&p.vertices.vertices)
        .map_err(DiagonalError::Geom)?;
    if chart.dim != d {
        return Err(DiagonalError::Validation(format!(
            "polytope spans dimension {} instead of {d}",
            chart.dim
        )));
    }
    if d > 0 {
        let total = volume_in_chart(&chart, &p.vertices.vertices)?;
        let mut sum = Q::zero();
        for cell in &cells {
            let v = volume_in_chart(&chart, &cell.geometry.vertices)?;
            if v.is_zero() {
                return Err(DiagonalError::Validation(format!(
                    "cell {} ⊗ {} is degenerate",
                    cell.pair.f, cell.pair.g
                )));
            }
            sum += v;
        }
        if sum != total {
            return Err(DiagonalError::Validation(format!(
                "cell volumes sum to {sum} but the polytope has volume {total}"
            )));
        }
        // interior disjointness: pairwise intersections have dimension < d
        for (i, ci) in cells.iter().enumerate() {
            let hi = facet_recovery(&ci.geometry)?;
            for (j, cj) in cells.iter().enumerate().skip(i + 1) {
                let hj = facet_recovery(&cj.geometry)?;
                let inter = hi.intersect(&hj)?;
                match vertex_enumeration(&inter) {
                    Ok(v) => {
                        let dim = hull_dimension(&v.vertices)?;
                        if dim >= d {
                            return Err(DiagonalError::Validation(format!(
                                "cells {i} and {j} overlap in dimension {dim}"
                            )));
                        }
                    }
                    Err(GeomError::Infeasible) => {}
                    Err(e) => return Err(DiagonalError::Geom(e)),
                }
            }
        }
    }
    Ok(SubdivisionComplex { cells })
}

/// An affine map `x ↦ M x + c` between coordinate spaces.
#[derive(Clone, Debug)]
pub struct AffineMap {
    pub rows: Vec<QVector>,
    pub offset: QVector,
}

impl AffineMap {
    pub fn apply(&self, x: &QPoint) -> QPoint {
        QVector(
            self.rows
                .iter()
                .zip(self.offset.0.iter())
                .map(|(r, c)| r.dot(x) + c)
                .collect(),
        )
    }

    pub fn linear(rows: Vec<QVector>) -> Self {
        let m = rows.len();
        AffineMap { rows, offset: QVector::zeros(m) }
    }
}

/// A maximal cell of the coherent collection `F^ψ`: a face of the source
/// polytope (as vertex indices), together with its dimension and the
/// dimension of its projection. The collection is tight when the two agree
/// on every cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerFace {
    pub vertex_indices: Vec<usize>,
    pub dim: usize,
    pub projected_dim: usize,
}

/// The maximal faces of the coherent subdivision induced by lifting the
/// projection `π` by the linear form `ψ` and selecting the lower facets of
/// the lifted image. Their projections subdivide `π(P)`.
pub fn lower_faces(
    p: &VPolytope,
    pi: &AffineMap,
    psi: &QVector,
) -> Result<Vec<LowerFace>, DiagonalError> {
    let lifted: Vec<QPoint> = p
        .vertices
        .iter()
        .map(|v| {
            let mut y = pi.apply(v);
            y.0.push(psi.dot(v));
            y
        })
        .collect();
    let q_dim = pi.rows.len();
    let h = facet_recovery(&VPolytope::new(q_dim + 1, lifted.clone()))?;
    // degenerate lift: when ψ is an affine function of π on the polytope,
    // every point is fiber-minimal and the whole polytope is the one cell
    if h.equalities.iter().any(|e| !e.normal.0[q_dim].is_zero()) {
        let projected: Vec<QPoint> = p.vertices.iter().map(|x| pi.apply(x)).collect();
        return Ok(vec![LowerFace {
            dim: hull_dimension(&p.vertices)?,
            projected_dim: hull_dimension(&projected)?,
            vertex_indices: (0..p.vertices.len()).collect(),
        }]);
    }
    let mut out = Vec::new();
    for facet in &h.inequalities {
        // inward normal with positive last coordinate bounds the lift from
        // below: a lower facet
        if !facet.normal.0[q_dim].is_positive() {
            continue;
        }
        let idx: Vec<usize> = (0..lifted.len())
            .filter(|&i| facet.active_at(&lifted[i]))
            .collect();
        let face_points: Vec<QPoint> = idx.iter().map(|&i| p.vertices[i].clone()).collect();
        let projected: Vec<QPoint> = face_points.iter().map(|x| pi.apply(x)).collect();
        out.push(LowerFace {
            dim: hull_dimension(&face_points)?,
            projected_dim: hull_dimension(&projected)?,
            vertex_indices: idx,
        });
    }
    out.sort_by(|a, b| a.vertex_indices.cmp(&b.vertex_indices));
    Ok(out)
}

/// The diagonal's cells recomputed through the fiber-polytope route: apply
/// [`lower_faces`] to `β : P×P -> P` with `ψ(x,y) = ⟨x-y, v⟩` and read each
/// cell as a pair of faces. Independent of both the Tamari enumeration and
/// the normal-cone programs.
pub fn lower_face_cells(p: &ProductRealization) -> Result<Vec<MatchingPair>, DiagonalError> {
    let n = p.vertices.vertices.len();
    let ambient = p.ambient_dim();
    // vertex list of P×P: index i*n + j is (v_i, w_j)
    let mut pairs = Vec::with_capacity(n * n);
    for a in &p.vertices.vertices {
        for b in &p.vertices.vertices {
            let mut coords = a.0.clone();
            coords.extend(b.0.iter().cloned());
            pairs.push(QVector(coords));
        }
    }
    let square = VPolytope::new(2 * ambient, pairs);
    // β(x, y) = (x + y)/2
    let half = crate::rat::qr(1, 2);
    let beta_rows: Vec<QVector> = (0..ambient)
        .map(|i| {
            let mut r = QVector::zeros(2 * ambient);
            r.0[i] = half.clone();
            r.0[ambient + i] = half.clone();
            r
        })
        .collect();
    // ψ(x, y) = ⟨x - y, v⟩
    let mut psi = QVector::zeros(2 * ambient);
    for i in 0..ambient {
        psi.0[i] = p.orientation.0[i].clone();
        psi.0[ambient + i] = -p.orientation.0[i].clone();
    }
    let cells = lower_faces(&square, &AffineMap::linear(beta_rows), &psi)?;

    let mut out = Vec::new();
    for cell in &cells {
        // the cell is a product face F×G; identify each side as the minimal
        // face of P containing the projected vertex set
        let firsts: BTreeSet<usize> = cell.vertex_indices.iter().map(|&k| k / n).collect();
        let seconds: BTreeSet<usize> = cell.vertex_indices.iter().map(|&k| k % n).collect();
        let label_of = |ids: &BTreeSet<usize>| -> Forest {
            let mut common: Option<BTreeSet<usize>> = None;
            for &i in ids {
                let active: BTreeSet<usize> = p
                    .halfspaces
                    .active_set(&p.vertices.vertices[i])
                    .into_iter()
                    .collect();
                common = Some(match common {
                    None => active,
                    Some(c) => c.intersection(&active).cloned().collect(),
                });
            }
            let active: Vec<usize> = common.unwrap_or_default().into_iter().collect();
            p.forest_of_active_facets(&active)
        };
        out.push(MatchingPair { f: label_of(&firsts), g: label_of(&seconds) });
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// The unsigned tensor expression `Δ(c_n) = Σ F ⊗ G` over the matching
/// pairs, as text and JSON.
pub fn dg_formula(n: usize) -> Result<(String, Value), DiagonalError> {
    let pairs = magical_pairs(n)?;
    let text = pairs
        .iter()
        .map(|p| format!("{} ⊗ {}", p.f, p.g))
        .collect::<Vec<_>>()
        .join(" + ");
    let json = Value::Array(pairs.iter().map(|p| p.to_json()).collect());
    Ok((format!("Δ(c_{n}) = {text}"), json))
}
