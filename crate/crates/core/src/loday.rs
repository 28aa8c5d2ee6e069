//! Weighted Loday realizations of the associahedra.
//!
//! For a weight `ω ∈ Z_{>0}^n` and a binary tree `t` with `n` leaves, the
//! vertex coordinates are `M(t,ω) = (α_1β_1, ..., α_{n-1}β_{n-1})`, where at
//! the i-th internal vertex (ordered left to right, sitting between leaves i
//! and i+1) `α_i` and `β_i` are the leaf-weight sums of its left and right
//! inputs. The polytope `K_ω = conv{M(t,ω)}` equals the intersection of the
//! hyperplane `Σx_i = Σ_{k<l} ω_kω_l` with the halfspaces
//! `x_{p+1}+...+x_{p+q-1} >= Σ_{p+1<=k<l<=p+q} ω_kω_l`, one per `(p,q,r)`
//! with `p+q+r = n`, `2 <= q <= n-1`; the facet for `(p,q,r)` is tight
//! exactly on the trees that factor as `u ∘_{p+1} v` with `v` of arity `q`.
//!
//! Faces are labeled by planar trees (forests, for products); any strictly
//! decreasing orientation vector turns the 1-skeleton into the Tamari
//! lattice.

use crate::dd::vertex_enumeration;
use crate::polytope::{GeomError, HPolytope, Halfspace, Hyperplane, VPolytope};
use crate::rat::{qi, Q, QPoint, QVector};
use crate::trees::{enumerate_binary_trees, graft, Forest, PlanarTree, TreeError};
use num_traits::Zero;
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LodayError {
    #[error("weight entries must be positive")]
    BadWeight,
    #[error("arity mismatch: tree has {tree} leaves, weight has length {weight}")]
    ArityMismatch { tree: usize, weight: usize },
    #[error("orientation vector must be strictly decreasing (blockwise for products)")]
    BadOrientation,
    #[error("invalid (p,q,r): p={p}, q={q}, r={r} for arity {n}")]
    BadPqr { p: usize, q: usize, r: usize, n: usize },
    #[error("tree error: {0}")]
    Tree(#[from] TreeError),
    #[error("geometry error: {0}")]
    Geom(#[from] GeomError),
    #[error("H/V disagreement while building a realization (internal bug)")]
    VertexMismatch,
}

/// Weight vector `ω`: one positive integer per leaf.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight(pub Vec<u32>);

impl Weight {
    pub fn standard(n: usize) -> Self {
        Weight(vec![1; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn check(&self) -> Result<(), LodayError> {
        if self.0.is_empty() || self.0.contains(&0) {
            return Err(LodayError::BadWeight);
        }
        Ok(())
    }

    /// `Σ_{k<l} ω_k ω_l`, the right-hand side of the defining hyperplane.
    pub fn pair_sum(&self) -> Q {
        range_pair_sum(&self.0, 0, self.0.len())
    }
}

fn range_pair_sum(w: &[u32], lo: usize, hi: usize) -> Q {
    let mut acc: i64 = 0;
    for k in lo..hi {
        for l in (k + 1)..hi {
            acc += w[k] as i64 * w[l] as i64;
        }
    }
    qi(acc)
}

/// The Loday vertex `M(t, ω)` of a binary tree.
pub fn loday_point(t: &PlanarTree, weight: &Weight) -> Result<QPoint, LodayError> {
    weight.check()?;
    if !t.is_binary() {
        return Err(LodayError::Tree(TreeError::NotBinary));
    }
    let n = t.arity();
    if n != weight.len() {
        return Err(LodayError::ArityMismatch { tree: n, weight: weight.len() });
    }
    let mut coords = vec![Q::zero(); n - 1];
    // the vertex between leaves i and i+1 contributes coordinate i (1-indexed)
    fn walk(t: &PlanarTree, offset: usize, w: &[u32], coords: &mut [Q]) {
        if t.is_leaf() {
            return;
        }
        let l = &t.children()[0];
        let r = &t.children()[1];
        let la = l.arity();
        let ra = r.arity();
        let alpha: i64 = w[offset..offset + la].iter().map(|&x| x as i64).sum();
        let beta: i64 = w[offset + la..offset + la + ra].iter().map(|&x| x as i64).sum();
        coords[offset + la - 1] = qi(alpha * beta);
        walk(l, offset, w, coords);
        walk(r, offset + la, w, coords);
    }
    walk(t, 0, &weight.0, &mut coords);
    Ok(QVector(coords))
}

/// Default orientation vector `(n-1, n-2, ..., 1)` in `R^{n-1}`.
pub fn default_orientation(n: usize) -> QVector {
    QVector((0..n.saturating_sub(1)).map(|i| qi((n - 1 - i) as i64)).collect())
}

fn is_strictly_decreasing(v: &[Q]) -> bool {
    v.windows(2).all(|w| w[0] > w[1])
}

/// A weighted Loday realization: labeled V- and H-representations plus the
/// orientation vector. Immutable once built.
#[derive(Clone, Debug)]
pub struct LodayRealization {
    pub weight: Weight,
    pub vertices: VPolytope,
    pub halfspaces: HPolytope,
    pub orientation: QVector,
    vertex_trees: Vec<PlanarTree>,
    facet_trees: Vec<PlanarTree>,
    facet_pqr: Vec<(usize, usize, usize)>,
}

impl LodayRealization {
    /// Build `K_ω` with the given orientation (default: `(n-1, ..., 1)`),
    /// asserting that vertex enumeration of the H-representation returns
    /// exactly the Loday points.
    pub fn build(weight: Weight, orientation: Option<QVector>) -> Result<Self, LodayError> {
        weight.check()?;
        let n = weight.len();
        let orientation = orientation.unwrap_or_else(|| default_orientation(n));
        if orientation.dim() != n.saturating_sub(1) {
            return Err(LodayError::BadOrientation);
        }
        if !is_strictly_decreasing(&orientation.0) {
            return Err(LodayError::BadOrientation);
        }

        let trees = enumerate_binary_trees(n)?;
        let mut points = Vec::with_capacity(trees.len());
        let mut labels = Vec::with_capacity(trees.len());
        for t in &trees {
            points.push(loday_point(t, &weight)?);
            labels.push(t.encode());
        }
        let vertices = VPolytope::with_labels(n.saturating_sub(1), points, labels);

        let mut halfspaces = HPolytope::new(n.saturating_sub(1));
        let mut facet_trees = Vec::new();
        let mut facet_pqr = Vec::new();
        if n >= 2 {
            halfspaces.equalities.push(Hyperplane::new(
                QVector(vec![qi(1); n - 1]),
                weight.pair_sum(),
            ));
            for q in 2..=(n - 1) {
                for p in 0..=(n - q) {
                    let r = n - p - q;
                    let mut normal = QVector::zeros(n - 1);
                    for i in (p + 1)..(p + q) {
                        normal.0[i - 1] = qi(1);
                    }
                    let rhs = range_pair_sum(&weight.0, p, p + q);
                    let label = facet_tree(n, p, q);
                    halfspaces
                        .inequalities
                        .push(Halfspace::labeled(normal, rhs, label.encode()));
                    facet_trees.push(label);
                    facet_pqr.push((p, q, r));
                }
            }
        }

        let realization = LodayRealization {
            weight,
            vertices,
            halfspaces,
            orientation,
            vertex_trees: trees,
            facet_trees,
            facet_pqr,
        };
        realization.check_h_v_agreement()?;
        Ok(realization)
    }

    /// Vertex enumeration of the H-representation must reproduce the Loday
    /// points exactly.
    fn check_h_v_agreement(&self) -> Result<(), LodayError> {
        let enumerated = vertex_enumeration(&self.halfspaces)?;
        if !enumerated.same_vertex_set(&self.vertices) {
            return Err(LodayError::VertexMismatch);
        }
        Ok(())
    }

    pub fn arity(&self) -> usize {
        self.weight.len()
    }

    /// Dimension of the polytope: `n - 2` (a point for `n = 1, 2`).
    pub fn dim(&self) -> usize {
        self.arity().saturating_sub(2)
    }

    pub fn ambient_dim(&self) -> usize {
        self.arity().saturating_sub(1)
    }

    pub fn vertex_trees(&self) -> &[PlanarTree] {
        &self.vertex_trees
    }

    pub fn facet_trees(&self) -> &[PlanarTree] {
        &self.facet_trees
    }

    pub fn facet_pqr(&self) -> &[(usize, usize, usize)] {
        &self.facet_pqr
    }

    /// The vertex point labeled by a binary tree.
    pub fn vertex_of(&self, t: &PlanarTree) -> Result<QPoint, LodayError> {
        loday_point(t, &self.weight)
    }

    /// Indices of the facets active on the face labeled `t`: one per
    /// internal edge of `t`.
    pub fn active_facets_of_tree(&self, t: &PlanarTree) -> Result<Vec<usize>, LodayError> {
        let n = self.arity();
        if t.arity() != n {
            return Err(LodayError::ArityMismatch { tree: t.arity(), weight: n });
        }
        let mut intervals = t.leaf_intervals();
        intervals.retain(|&(a, b)| !(a == 1 && b == n));
        let mut out = Vec::with_capacity(intervals.len());
        for (a, b) in intervals {
            let (p, q) = (a - 1, b - a + 1);
            let idx = self
                .facet_pqr
                .iter()
                .position(|&(fp, fq, _)| fp == p && fq == q)
                .expect("every internal edge interval is a facet");
            out.push(idx);
        }
        out.sort_unstable();
        Ok(out)
    }

    /// The planar tree labeling the face cut out by a set of facets.
    pub fn tree_of_active_facets(&self, active: &[usize]) -> PlanarTree {
        let n = self.arity();
        let intervals: Vec<(usize, usize)> = active
            .iter()
            .map(|&i| {
                let (p, q, _) = self.facet_pqr[i];
                (p + 1, p + q)
            })
            .collect();
        crate::trees::tree_from_intervals(n, &intervals)
    }

    /// Geometry of the face labeled `t`.
    pub fn face(&self, t: &PlanarTree) -> Result<Face, LodayError> {
        let n = self.arity();
        if t.arity() != n {
            return Err(LodayError::ArityMismatch { tree: t.arity(), weight: n });
        }
        let refinements = t.binary_refinements();
        let mut points = Vec::with_capacity(refinements.len());
        let mut labels = Vec::with_capacity(refinements.len());
        for s in &refinements {
            points.push(self.vertex_of(s)?);
            labels.push(s.encode());
        }
        let active = self.active_facets_of_tree(t)?;
        Ok(Face {
            label: Forest::single(t.clone()),
            vertices: VPolytope::with_labels(self.ambient_dim(), points, labels),
            vertex_trees: refinements.into_iter().map(Forest::single).collect(),
            halfspaces: self.halfspaces.with_tight(&active),
            dim: t.face_dim(),
        })
    }

    /// JSON per the documented schema:
    /// `{weight, vertices: [{tree, coords}], facets: [{tree, normal, rhs}], orientation}`.
    pub fn to_json(&self) -> Value {
        json!({
            "weight": self.weight.0,
            "vertices": self.vertex_trees.iter().zip(self.vertices.vertices.iter()).map(|(t, p)| json!({
                "tree": t.to_json(),
                "coords": p.0.iter().map(crate::rat::format_q).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "facets": self.facet_trees.iter().zip(self.halfspaces.inequalities.iter()).map(|(t, h)| json!({
                "tree": t.to_json(),
                "normal": h.normal.0.iter().map(crate::rat::format_q).collect::<Vec<_>>(),
                "rhs": crate::rat::format_q(&h.rhs),
            })).collect::<Vec<_>>(),
            "orientation": self.orientation.0.iter().map(crate::rat::format_q).collect::<Vec<_>>(),
        })
    }
}

/// The two-vertex tree `c_{p+1+r} ∘_{p+1} c_q` labeling the facet `(p,q,r)`.
pub fn facet_tree(n: usize, p: usize, q: usize) -> PlanarTree {
    let r = n - p - q;
    graft(&PlanarTree::corolla(p + 1 + r), p + 1, &PlanarTree::corolla(q))
        .expect("facet label construction")
}

/// A face of a realization or product, carrying its label, its vertex set
/// (with forest labels) and an H-representation obtained by tightening the
/// active facets.
#[derive(Clone, Debug)]
pub struct Face {
    pub label: Forest,
    pub vertices: VPolytope,
    pub vertex_trees: Vec<Forest>,
    pub halfspaces: HPolytope,
    pub dim: usize,
}

impl Face {
    /// Bottom and top vertices: comb refinements of the label, cross-checked
    /// against the linear program they are defined by in
    /// [`face_min_max`].
    pub fn bottom_tree(&self) -> Forest {
        self.label.bottom_refinement()
    }

    pub fn top_tree(&self) -> Forest {
        self.label.top_refinement()
    }
}

/// `(bm F, tp F)` as points: the comb refinements of the label, verified to
/// minimize and maximize `⟨orientation, ·⟩` among the face's vertices.
pub fn face_min_max(face: &Face, orientation: &QVector) -> Result<(QPoint, QPoint), LodayError> {
    let bm = face.bottom_tree();
    let tp = face.top_tree();
    let find = |f: &Forest| -> QPoint {
        let idx = face.vertex_trees.iter().position(|g| g == f).expect("comb refinement is a vertex");
        face.vertices.vertices[idx].clone()
    };
    let bm_pt = find(&bm);
    let tp_pt = find(&tp);
    let bm_val = orientation.dot(&bm_pt);
    let tp_val = orientation.dot(&tp_pt);
    for (i, p) in face.vertices.vertices.iter().enumerate() {
        let v = orientation.dot(p);
        if v < bm_val || (v == bm_val && face.vertex_trees[i] != bm) {
            return Err(LodayError::Geom(GeomError::NonUniqueOptimum));
        }
        if v > tp_val || (v == tp_val && face.vertex_trees[i] != tp) {
            return Err(LodayError::Geom(GeomError::NonUniqueOptimum));
        }
    }
    Ok((bm_pt, tp_pt))
}

/// The affine data of the block embedding `Θ`: weights `ω̄` and `ω̃` and the
/// coordinate permutation sending `(x, y)` to
/// `(x_1..x_p, y_1..y_{q-1}, x_{p+1}..x_{p+r})`, whose image is the facet
/// `(p,q,r)` of `K_ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaEmbedding {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub outer_weight: Weight,
    pub inner_weight: Weight,
}

impl ThetaEmbedding {
    /// Apply the block permutation to a pair of points.
    pub fn apply(&self, x: &QPoint, y: &QPoint) -> QPoint {
        let (p, q, r) = (self.p, self.q, self.r);
        assert_eq!(x.dim(), p + r, "outer point dimension");
        assert_eq!(y.dim(), q - 1, "inner point dimension");
        let mut out = Vec::with_capacity(p + q + r - 1);
        out.extend(x.0[..p].iter().cloned());
        out.extend(y.0.iter().cloned());
        out.extend(x.0[p..].iter().cloned());
        QVector(out)
    }

    /// The permutation as a function on coordinate indices of the codomain:
    /// `image[k] = source index in the concatenated (x, y) coordinates`.
    pub fn permutation(&self) -> Vec<usize> {
        let (p, q, r) = (self.p, self.q, self.r);
        let mut perm = Vec::with_capacity(p + q + r - 1);
        perm.extend(0..p); // x_1..x_p
        perm.extend((p + r)..(p + r + q - 1)); // y_1..y_{q-1}
        perm.extend(p..(p + r)); // x_{p+1}..x_{p+r}
        perm
    }
}

/// The `Θ` data for the facet `(p,q,r)` of `K_ω`:
/// `ω̄ = (ω_1,...,ω_p, ω_{p+1}+...+ω_{p+q}, ω_{p+q+1},...,ω_n)` and
/// `ω̃ = (ω_{p+1},...,ω_{p+q})`.
pub fn theta_embedding(p: usize, q: usize, r: usize, weight: &Weight) -> Result<ThetaEmbedding, LodayError> {
    let n = weight.len();
    if p + q + r != n || q < 2 || q > n - 1 {
        return Err(LodayError::BadPqr { p, q, r, n });
    }
    let mut outer = Vec::with_capacity(p + 1 + r);
    outer.extend(weight.0[..p].iter().cloned());
    outer.push(weight.0[p..p + q].iter().sum());
    outer.extend(weight.0[p + q..].iter().cloned());
    let inner = weight.0[p..p + q].to_vec();
    Ok(ThetaEmbedding {
        p,
        q,
        r,
        outer_weight: Weight(outer),
        inner_weight: Weight(inner),
    })
}

/// A product `K_{ω_1} × ... × K_{ω_k}` with forest-labeled faces and a
/// blockwise-decreasing orientation.
#[derive(Clone, Debug)]
pub struct ProductRealization {
    pub factors: Vec<LodayRealization>,
    pub vertices: VPolytope,
    pub halfspaces: HPolytope,
    pub orientation: QVector,
    vertex_forests: Vec<Forest>,
}

impl ProductRealization {
    pub fn new(factors: Vec<LodayRealization>) -> Result<Self, LodayError> {
        if factors.is_empty() {
            return Err(LodayError::BadWeight);
        }
        let ambient: usize = factors.iter().map(|f| f.ambient_dim()).sum();

        // blockwise concatenation of H-representations
        let mut halfspaces = HPolytope::new(ambient);
        let mut offset = 0;
        for f in &factors {
            for e in &f.halfspaces.equalities {
                halfspaces
                    .equalities
                    .push(Hyperplane::new(pad(&e.normal, offset, ambient), e.rhs.clone()));
            }
            for h in &f.halfspaces.inequalities {
                let mut hs = Halfspace::new(pad(&h.normal, offset, ambient), h.rhs.clone());
                hs.label = h.label.clone();
                halfspaces.inequalities.push(hs);
            }
            offset += f.ambient_dim();
        }

        // cartesian product of vertices, forest-labeled
        let mut vertex_forests = vec![Forest(Vec::new())];
        let mut points = vec![QVector(Vec::new())];
        for f in &factors {
            let mut next_forests = Vec::new();
            let mut next_points = Vec::new();
            for (forest, point) in vertex_forests.iter().zip(points.iter()) {
                for (t, p) in f.vertex_trees().iter().zip(f.vertices.vertices.iter()) {
                    let mut forest = forest.clone();
                    forest.0.push(t.clone());
                    next_forests.push(forest);
                    let mut point = point.clone();
                    point.0.extend(p.0.iter().cloned());
                    next_points.push(point);
                }
            }
            vertex_forests = next_forests;
            points = next_points;
        }
        let labels: Vec<String> = vertex_forests.iter().map(|f| f.encode()).collect();
        let vertices = VPolytope::with_labels(ambient, points, labels);

        // globally decreasing orientation restricts to each block decreasing
        let orientation = QVector((0..ambient).map(|i| qi((ambient - i) as i64)).collect());

        Ok(ProductRealization {
            factors,
            vertices,
            halfspaces,
            orientation,
            vertex_forests,
        })
    }

    pub fn single(k: LodayRealization) -> Result<Self, LodayError> {
        // a single factor keeps its own orientation vector
        let orientation = k.orientation.clone();
        let mut p = ProductRealization::new(vec![k])?;
        p.orientation = orientation;
        Ok(p)
    }

    pub fn standard(n: usize) -> Result<Self, LodayError> {
        ProductRealization::single(LodayRealization::build(Weight::standard(n), None)?)
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(|f| f.dim()).sum()
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices.dim
    }

    pub fn vertex_forests(&self) -> &[Forest] {
        &self.vertex_forests
    }

    /// All faces: one forest per choice of a face in each factor.
    pub fn face_forests(&self) -> Result<Vec<Forest>, LodayError> {
        let mut forests = vec![Vec::new()];
        for f in &self.factors {
            let trees = if f.arity() == 1 {
                vec![PlanarTree::leaf()]
            } else {
                crate::trees::enumerate_planar_trees(f.arity())?
            };
            let mut next = Vec::new();
            for prefix in &forests {
                for t in &trees {
                    let mut fo: Vec<PlanarTree> = prefix.clone();
                    fo.push(t.clone());
                    next.push(fo);
                }
            }
            forests = next;
        }
        let mut out: Vec<Forest> = forests.into_iter().map(Forest).collect();
        out.sort();
        Ok(out)
    }

    /// The point of a vertex labeled by a forest of binary trees.
    pub fn vertex_of(&self, forest: &Forest) -> Result<QPoint, LodayError> {
        if forest.0.len() != self.factors.len() {
            return Err(LodayError::ArityMismatch { tree: forest.0.len(), weight: self.factors.len() });
        }
        let mut coords = Vec::with_capacity(self.ambient_dim());
        for (t, f) in forest.0.iter().zip(self.factors.iter()) {
            coords.extend(f.vertex_of(t)?.0);
        }
        Ok(QVector(coords))
    }

    /// Facet indices (into the product H-representation) active on the face
    /// labeled by a forest.
    pub fn active_facets_of_forest(&self, forest: &Forest) -> Result<Vec<usize>, LodayError> {
        if forest.0.len() != self.factors.len() {
            return Err(LodayError::ArityMismatch { tree: forest.0.len(), weight: self.factors.len() });
        }
        let mut out = Vec::new();
        let mut offset = 0;
        for (t, f) in forest.0.iter().zip(self.factors.iter()) {
            for idx in f.active_facets_of_tree(t)? {
                out.push(offset + idx);
            }
            offset += f.halfspaces.inequalities.len();
        }
        Ok(out)
    }

    /// The forest labeling the minimal face with the given active facets.
    pub fn forest_of_active_facets(&self, active: &[usize]) -> Forest {
        let mut trees = Vec::with_capacity(self.factors.len());
        let mut offset = 0;
        for f in &self.factors {
            let count = f.halfspaces.inequalities.len();
            let local: Vec<usize> = active
                .iter()
                .filter(|&&i| i >= offset && i < offset + count)
                .map(|&i| i - offset)
                .collect();
            if f.arity() == 1 {
                trees.push(PlanarTree::leaf());
            } else {
                trees.push(f.tree_of_active_facets(&local));
            }
            offset += count;
        }
        Forest(trees)
    }

    /// Geometry of the face labeled by a forest.
    pub fn face(&self, forest: &Forest) -> Result<Face, LodayError> {
        if forest.0.len() != self.factors.len() {
            return Err(LodayError::ArityMismatch { tree: forest.0.len(), weight: self.factors.len() });
        }
        // refinements per factor, then cartesian product
        let per: Vec<Vec<PlanarTree>> = forest.0.iter().map(|t| t.binary_refinements()).collect();
        let mut combos: Vec<Vec<PlanarTree>> = vec![Vec::new()];
        for list in &per {
            let mut next = Vec::new();
            for prefix in &combos {
                for t in list {
                    let mut c = prefix.clone();
                    c.push(t.clone());
                    next.push(c);
                }
            }
            combos = next;
        }
        let vertex_trees: Vec<Forest> = combos.into_iter().map(Forest).collect();
        let mut points = Vec::with_capacity(vertex_trees.len());
        let mut labels = Vec::with_capacity(vertex_trees.len());
        for f in &vertex_trees {
            points.push(self.vertex_of(f)?);
            labels.push(f.encode());
        }
        let active = self.active_facets_of_forest(forest)?;
        Ok(Face {
            label: forest.clone(),
            vertices: VPolytope::with_labels(self.ambient_dim(), points, labels),
            vertex_trees,
            halfspaces: self.halfspaces.with_tight(&active),
            dim: forest.face_dim(),
        })
    }

    /// The whole polytope as a face (labeled by the forest of corollas).
    pub fn top_face(&self) -> Result<Face, LodayError> {
        let forest = Forest(
            self.factors
                .iter()
                .map(|f| {
                    if f.arity() == 1 {
                        PlanarTree::leaf()
                    } else {
                        PlanarTree::corolla(f.arity())
                    }
                })
                .collect(),
        );
        self.face(&forest)
    }
}

fn pad(v: &QVector, offset: usize, total: usize) -> QVector {
    let mut out = QVector::zeros(total);
    for (j, x) in v.0.iter().enumerate() {
        out.0[offset + j] = x.clone();
    }
    out
}
