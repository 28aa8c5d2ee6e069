//! The nonsymmetric operad structure on the Loday realizations.
//!
//! The transition map between two realizations of the same arity is the
//! unique continuous map that transports vertex labels and commutes with the
//! diagonals. It is exact on vertices, on proper faces (by recursion) and on
//! the main axis between the bottom and top vertices; elsewhere it is the
//! limit of iterated diagonal refinements, evaluated here to a chosen depth
//! with sup-norm error at most `diam(target)/2^depth`. A partial composition
//! `K_m × K_n -> K_{m+n-1}` is the transition into the weight
//! `(1,...,n,...,1)` realization followed by the block embedding of its
//! product facet.

use crate::diagonal::{diagonal_in, DiagonalError};
use crate::loday::{theta_embedding, LodayError, LodayRealization, Weight};
use crate::polytope::GeomError;
use crate::rat::{Q, QPoint};
use crate::trees::{graft, PlanarTree, TreeError};
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OperadError {
    #[error("realizations must have equal arity: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("point is not in the source polytope")]
    Membership,
    #[error("composition index {i} out of range 1..={m}")]
    IndexRange { i: usize, m: usize },
    #[error("depth must be at least 1")]
    DepthRange,
    #[error("tree error: {0}")]
    Tree(#[from] TreeError),
    #[error("realization error: {0}")]
    Loday(#[from] LodayError),
    #[error("diagonal error: {0}")]
    Diagonal(#[from] DiagonalError),
    #[error("geometry error: {0}")]
    Geom(#[from] GeomError),
}

/// The depth-bounded evaluator of the transition map `src -> dst`.
pub struct TransitionMap<'a> {
    pub src: &'a LodayRealization,
    pub dst: &'a LodayRealization,
}

impl<'a> TransitionMap<'a> {
    pub fn new(src: &'a LodayRealization, dst: &'a LodayRealization) -> Result<Self, OperadError> {
        if src.arity() != dst.arity() {
            return Err(OperadError::ArityMismatch(src.arity(), dst.arity()));
        }
        Ok(TransitionMap { src, dst })
    }

    /// Sup-norm error bound of [`Self::apply`] at the given depth:
    /// `diam(dst)/2^depth`.
    pub fn error_bound(&self, depth: u32) -> Q {
        let mut denom = Q::one();
        for _ in 0..depth {
            denom *= crate::rat::qi(2);
        }
        self.dst.vertices.linf_diameter() / denom
    }

    /// Evaluate the transition map at `z ∈ src` within the depth-`depth`
    /// error bound. Exact on vertices, faces whose recursion bottoms out in
    /// vertices and axes, and on every main axis encountered.
    pub fn apply(&self, z: &QPoint, depth: u32) -> Result<QPoint, OperadError> {
        if depth < 1 {
            return Err(OperadError::DepthRange);
        }
        if !self.src.halfspaces.contains(z) {
            return Err(OperadError::Membership);
        }
        self.eval(z, depth)
    }

    fn eval(&self, z: &QPoint, budget: u32) -> Result<QPoint, OperadError> {
        // minimal face of src containing z
        let active = self.src.halfspaces.active_set(z);
        let label = self.src.tree_of_active_facets(&active);
        if label.is_binary() {
            // vertex: transport the label
            return Ok(self.dst.vertex_of(&label)?);
        }
        let bm_tree = label.bottom_refinement();
        let tp_tree = label.top_refinement();
        let bm_src = self.src.vertex_of(&bm_tree)?;
        let tp_src = self.src.vertex_of(&tp_tree)?;
        if let Some(s) = axis_parameter(z, &bm_src, &tp_src) {
            // main axis of the face maps affinely onto the target's axis
            let bm_dst = self.dst.vertex_of(&bm_tree)?;
            let tp_dst = self.dst.vertex_of(&tp_tree)?;
            return Ok(bm_dst.add(&tp_dst.sub(&bm_dst).scale(&s)));
        }
        if budget == 0 {
            // any point of the target face is within its diameter
            let bm_dst = self.dst.vertex_of(&bm_tree)?;
            let tp_dst = self.dst.vertex_of(&tp_tree)?;
            return Ok(bm_dst.midpoint(&tp_dst));
        }
        // one diagonal step inside the face; tr(z) = (tr(lo) + tr(hi))/2
        let face = self.src.face(&label)?;
        let (lo, hi) = diagonal_in(&face.halfspaces, &self.src.orientation, z)?;
        let lo_label = self.src.tree_of_active_facets(&self.src.halfspaces.active_set(&lo));
        let hi_label = self.src.tree_of_active_facets(&self.src.halfspaces.active_set(&hi));
        let lo_interior = lo_label == label;
        let hi_interior = hi_label == label;
        let (a, b) = match (lo_interior, hi_interior) {
            // an interior component forces the other one to be a vertex;
            // spend budget on the interior recursion only
            (true, false) => (self.eval(&lo, budget - 1)?, self.eval(&hi, budget)?),
            (false, true) => (self.eval(&lo, budget)?, self.eval(&hi, budget - 1)?),
            // both components on proper faces: dimension drops
            (false, false) => (self.eval(&lo, budget)?, self.eval(&hi, budget)?),
            (true, true) => unreachable!("both diagonal components interior"),
        };
        Ok(a.midpoint(&b))
    }
}

/// If `z = (1-s)·a + s·b` for some rational `s ∈ [0,1]`, return `s`.
fn axis_parameter(z: &QPoint, a: &QPoint, b: &QPoint) -> Option<Q> {
    let dir = b.sub(a);
    let rel = z.sub(a);
    let mut s: Option<Q> = None;
    for (d, r) in dir.0.iter().zip(rel.0.iter()) {
        if d.is_zero() {
            if !r.is_zero() {
                return None;
            }
            continue;
        }
        let cand = r / d;
        match &s {
            Some(prev) if *prev != cand => return None,
            Some(_) => {}
            None => s = Some(cand),
        }
    }
    let s = s?;
    if s < Q::zero() || s > Q::one() {
        return None;
    }
    Some(s)
}

pub const DEFAULT_DEPTH: u32 = 8;

/// Pointwise partial composition `∘_i : K_m × K_n -> K_{m+n-1}`: transition
/// of `x` into the realization of weight `(1,...,n,...,1)` (the `n` in slot
/// `i`), then the block embedding applied to the pair. Exact when `x` and
/// `y` are vertices.
pub fn compose(
    m: usize,
    i: usize,
    n: usize,
    x: &QPoint,
    y: &QPoint,
    depth: u32,
) -> Result<QPoint, OperadError> {
    if i < 1 || i > m {
        return Err(OperadError::IndexRange { i, m });
    }
    let km = LodayRealization::build(Weight::standard(m), None)?;
    let kn = LodayRealization::build(Weight::standard(n), None)?;
    if !km.halfspaces.contains(x) || !kn.halfspaces.contains(y) {
        return Err(OperadError::Membership);
    }
    if n == 1 {
        // grafting the trivial tree is the identity
        return Ok(x.clone());
    }
    if m == 1 {
        return Ok(y.clone());
    }
    let total = Weight::standard(m + n - 1);
    let theta = theta_embedding(i - 1, n, m - i, &total)?;
    let pinched = LodayRealization::build(theta.outer_weight.clone(), None)?;
    let tr = TransitionMap::new(&km, &pinched)?;
    let tx = tr.apply(x, depth)?;
    Ok(theta.apply(&tx, y))
}

/// Cellular partial composition: faces compose by grafting their labels.
/// Dimensions add.
pub fn compose_cellular(
    m: usize,
    i: usize,
    n: usize,
    f: &PlanarTree,
    g: &PlanarTree,
) -> Result<PlanarTree, OperadError> {
    if i < 1 || i > m {
        return Err(OperadError::IndexRange { i, m });
    }
    if f.arity() != m {
        return Err(OperadError::ArityMismatch(f.arity(), m));
    }
    if g.arity() != n {
        return Err(OperadError::ArityMismatch(g.arity(), n));
    }
    Ok(graft(f, i, g)?)
}
