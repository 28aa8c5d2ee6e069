//! Planar rooted trees, planar binary trees, the Tamari order, grafting,
//! leaf leanings and edge collapses.
//!
//! Trees are drawn with leaves on top and the root at the bottom; leaves are
//! numbered 1..n from left to right. A tree with `k` internal edges labels a
//! codimension-`k` face of the associahedron on `n` leaves.

use serde_json::Value;
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("operation requires binary trees")]
    NotBinary,
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("leaf index {index} out of range 1..={arity}")]
    LeafIndexOutOfRange { index: usize, arity: usize },
    #[error("arity must be at least {0}")]
    ArityTooSmall(usize),
    #[error("invalid tree encoding: {0}")]
    InvalidEncoding(String),
}

/// A rooted planar tree. Leaves carry no data; an internal vertex is an
/// ordered list of at least two subtrees. Values are immutable after
/// construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlanarTree {
    children: Vec<PlanarTree>,
}

impl PlanarTree {
    pub fn leaf() -> Self {
        PlanarTree { children: Vec::new() }
    }

    /// An internal vertex over the given subtrees. Unary vertices are not
    /// representable, by construction.
    pub fn node(children: Vec<PlanarTree>) -> Self {
        assert!(children.len() >= 2, "internal vertices need >= 2 children");
        PlanarTree { children }
    }

    /// The corolla `c_n`: one vertex, `n` leaves.
    pub fn corolla(n: usize) -> Self {
        assert!(n >= 2, "corolla needs >= 2 leaves");
        PlanarTree::node(vec![PlanarTree::leaf(); n])
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn children(&self) -> &[PlanarTree] {
        &self.children
    }

    /// Number of leaves.
    pub fn arity(&self) -> usize {
        if self.is_leaf() {
            1
        } else {
            self.children.iter().map(|c| c.arity()).sum()
        }
    }

    pub fn is_binary(&self) -> bool {
        self.is_leaf() || (self.children.len() == 2 && self.children.iter().all(|c| c.is_binary()))
    }

    fn internal_vertices(&self) -> usize {
        if self.is_leaf() {
            0
        } else {
            1 + self.children.iter().map(|c| c.internal_vertices()).sum::<usize>()
        }
    }

    /// Number of internal edges; equals the codimension of the labeled face.
    pub fn internal_edges(&self) -> usize {
        self.internal_vertices().saturating_sub(1)
    }

    /// Dimension of the face of the associahedron labeled by this tree.
    /// The trivial tree and the two-leaf corolla label points (dimension 0).
    pub fn face_dim(&self) -> usize {
        self.arity().saturating_sub(2) - self.internal_edges()
    }

    /// Canonical string encoding: `|` for a leaf, `(...)` wrapping the
    /// children of an internal vertex. Injective, so equality of encodings is
    /// equality of trees; all deterministic orderings in this crate are
    /// lexicographic on it.
    pub fn encode(&self) -> String {
        let mut s = String::new();
        self.encode_into(&mut s);
        s
    }

    fn encode_into(&self, out: &mut String) {
        if self.is_leaf() {
            out.push('|');
        } else {
            out.push('(');
            for c in &self.children {
                c.encode_into(out);
            }
            out.push(')');
        }
    }

    /// JSON form: a leaf is `[]`, an internal vertex is the array of its
    /// children, e.g. `c_3` is `[[],[],[]]`.
    pub fn to_json(&self) -> Value {
        Value::Array(self.children.iter().map(|c| c.to_json()).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self, TreeError> {
        let Value::Array(items) = v else {
            return Err(TreeError::InvalidEncoding(v.to_string()));
        };
        if items.len() == 1 {
            return Err(TreeError::InvalidEncoding("unary vertex".to_string()));
        }
        if items.is_empty() {
            return Ok(PlanarTree::leaf());
        }
        let children = items
            .iter()
            .map(PlanarTree::from_json)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PlanarTree::node(children))
    }

    /// Closed interval `[first, last]` of 1-indexed leaves under each internal
    /// vertex, root included. The family is laminar and determines the tree.
    pub fn leaf_intervals(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        self.collect_intervals(0, &mut out);
        out.sort_unstable();
        out
    }

    fn collect_intervals(&self, offset: usize, out: &mut Vec<(usize, usize)>) {
        if self.is_leaf() {
            return;
        }
        let a = self.arity();
        out.push((offset + 1, offset + a));
        let mut off = offset;
        for c in &self.children {
            c.collect_intervals(off, out);
            off += c.arity();
        }
    }

    /// Whether `self` refines `other` in the face order: `other` is obtained
    /// from `self` by contracting internal edges. Requires equal arity.
    pub fn refines(&self, other: &PlanarTree) -> bool {
        debug_assert_eq!(self.arity(), other.arity());
        let fine = self.leaf_intervals();
        other.leaf_intervals().iter().all(|iv| fine.binary_search(iv).is_ok())
    }

    /// The Tamari-minimal binary refinement: every corolla becomes a left
    /// comb.
    pub fn bottom_refinement(&self) -> PlanarTree {
        if self.is_leaf() {
            return PlanarTree::leaf();
        }
        let kids: Vec<_> = self.children.iter().map(|c| c.bottom_refinement()).collect();
        let mut iter = kids.into_iter();
        let mut acc = iter.next().unwrap();
        for k in iter {
            acc = PlanarTree::node(vec![acc, k]);
        }
        acc
    }

    /// The Tamari-maximal binary refinement: every corolla becomes a right
    /// comb.
    pub fn top_refinement(&self) -> PlanarTree {
        if self.is_leaf() {
            return PlanarTree::leaf();
        }
        let kids: Vec<_> = self.children.iter().map(|c| c.top_refinement()).collect();
        let mut iter = kids.into_iter().rev();
        let mut acc = iter.next().unwrap();
        for k in iter {
            acc = PlanarTree::node(vec![k, acc]);
        }
        acc
    }

    /// All binary trees refining this tree (the vertices of its face).
    pub fn binary_refinements(&self) -> Vec<PlanarTree> {
        if self.is_leaf() {
            return vec![PlanarTree::leaf()];
        }
        let per_child: Vec<Vec<PlanarTree>> =
            self.children.iter().map(|c| c.binary_refinements()).collect();
        let shapes = enumerate_binary_trees(self.children.len()).unwrap();
        let mut out = Vec::new();
        let mut choice = vec![0usize; per_child.len()];
        loop {
            let subs: Vec<&PlanarTree> =
                choice.iter().enumerate().map(|(i, &j)| &per_child[i][j]).collect();
            for shape in &shapes {
                out.push(substitute_leaves(shape, &subs));
            }
            // odometer over per-child refinement choices
            let mut i = 0;
            loop {
                if i == choice.len() {
                    out.sort();
                    return out;
                }
                choice[i] += 1;
                if choice[i] < per_child[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }
}

fn substitute_leaves(shape: &PlanarTree, subs: &[&PlanarTree]) -> PlanarTree {
    fn go(shape: &PlanarTree, subs: &[&PlanarTree], next: &mut usize) -> PlanarTree {
        if shape.is_leaf() {
            let t = subs[*next].clone();
            *next += 1;
            t
        } else {
            PlanarTree::node(shape.children().iter().map(|c| go(c, subs, next)).collect())
        }
    }
    let mut next = 0;
    let t = go(shape, subs, &mut next);
    debug_assert_eq!(next, subs.len());
    t
}

impl PartialOrd for PlanarTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PlanarTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.encode().cmp(&other.encode())
    }
}

impl fmt::Display for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

impl fmt::Debug for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

/// All planar binary trees with `n` leaves, sorted by canonical encoding.
pub fn enumerate_binary_trees(n: usize) -> Result<Vec<PlanarTree>, TreeError> {
    if n < 1 {
        return Err(TreeError::ArityTooSmall(1));
    }
    fn gen(n: usize) -> Vec<PlanarTree> {
        if n == 1 {
            return vec![PlanarTree::leaf()];
        }
        let mut out = Vec::new();
        for k in 1..n {
            for l in gen(k) {
                for r in gen(n - k) {
                    out.push(PlanarTree::node(vec![l.clone(), r]));
                }
            }
        }
        out
    }
    let mut out = gen(n);
    out.sort();
    Ok(out)
}

/// All planar trees with `n` leaves and no unary vertices, sorted by
/// canonical encoding. These index the faces of the `(n-2)`-associahedron.
pub fn enumerate_planar_trees(n: usize) -> Result<Vec<PlanarTree>, TreeError> {
    if n < 2 {
        return Err(TreeError::ArityTooSmall(2));
    }
    fn gen(n: usize, allow_leaf: bool) -> Vec<PlanarTree> {
        let mut out = Vec::new();
        if n == 1 {
            if allow_leaf {
                out.push(PlanarTree::leaf());
            }
            return out;
        }
        // split n into k >= 2 ordered parts, each part an arbitrary subtree
        fn compositions(n: usize) -> Vec<Vec<usize>> {
            let mut out = Vec::new();
            fn go(rem: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
                if rem == 0 {
                    if acc.len() >= 2 {
                        out.push(acc.clone());
                    }
                    return;
                }
                for p in 1..=rem {
                    acc.push(p);
                    go(rem - p, acc, out);
                    acc.pop();
                }
            }
            go(n, &mut Vec::new(), &mut out);
            out
        }
        for comp in compositions(n) {
            let child_lists: Vec<Vec<PlanarTree>> = comp.iter().map(|&k| gen(k, true)).collect();
            let mut choice = vec![0usize; child_lists.len()];
            'outer: loop {
                let kids: Vec<PlanarTree> = choice
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| child_lists[i][j].clone())
                    .collect();
                out.push(PlanarTree::node(kids));
                let mut i = 0;
                loop {
                    if i == choice.len() {
                        break 'outer;
                    }
                    choice[i] += 1;
                    if choice[i] < child_lists[i].len() {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
            }
        }
        out
    }
    let mut out = gen(n, false);
    out.sort();
    Ok(out)
}

/// Grafting `s ∘_i t`: replace the `i`-th leaf of `s` (1-indexed) by `t`.
pub fn graft(s: &PlanarTree, i: usize, t: &PlanarTree) -> Result<PlanarTree, TreeError> {
    let n = s.arity();
    if i < 1 || i > n {
        return Err(TreeError::LeafIndexOutOfRange { index: i, arity: n });
    }
    fn go(s: &PlanarTree, i: usize, t: &PlanarTree) -> PlanarTree {
        if s.is_leaf() {
            debug_assert_eq!(i, 1);
            return t.clone();
        }
        let mut kids = Vec::with_capacity(s.children().len());
        let mut remaining = i;
        let mut done = false;
        for c in s.children() {
            let a = c.arity();
            if !done && remaining <= a {
                kids.push(go(c, remaining, t));
                done = true;
            } else {
                kids.push(c.clone());
            }
            if !done {
                remaining -= a;
            }
        }
        PlanarTree::node(kids)
    }
    Ok(go(s, i, t))
}

/// All Tamari covers of a binary tree: single right rotations
/// `((a b) c) -> (a (b c))` applied at one vertex.
pub fn covers(t: &PlanarTree) -> Result<Vec<PlanarTree>, TreeError> {
    if !t.is_binary() {
        return Err(TreeError::NotBinary);
    }
    fn go(t: &PlanarTree, out: &mut Vec<PlanarTree>) {
        if t.is_leaf() {
            return;
        }
        let l = &t.children()[0];
        let r = &t.children()[1];
        if !l.is_leaf() {
            let a = &l.children()[0];
            let b = &l.children()[1];
            out.push(PlanarTree::node(vec![
                a.clone(),
                PlanarTree::node(vec![b.clone(), r.clone()]),
            ]));
        }
        let before = out.len();
        go(l, out);
        for rotated in out.iter_mut().skip(before) {
            *rotated = PlanarTree::node(vec![rotated.clone(), r.clone()]);
        }
        let before = out.len();
        go(r, out);
        for rotated in out.iter_mut().skip(before) {
            *rotated = PlanarTree::node(vec![l.clone(), rotated.clone()]);
        }
    }
    let mut out = Vec::new();
    go(t, &mut out);
    out.sort();
    Ok(out)
}

/// Bracketing vector of a binary tree: entry `i` (0-indexed) is the leaf
/// count of the maximal subtree whose leftmost leaf is leaf `i+1`. Comparing
/// these vectors componentwise decides the Tamari order.
pub fn bracket_vector(t: &PlanarTree) -> Result<Vec<usize>, TreeError> {
    if !t.is_binary() {
        return Err(TreeError::NotBinary);
    }
    let n = t.arity();
    let mut best = vec![1usize; n];
    fn walk(t: &PlanarTree, offset: usize, best: &mut [usize]) {
        if t.is_leaf() {
            return;
        }
        let a = t.arity();
        if a > best[offset] {
            best[offset] = a;
        }
        let l = &t.children()[0];
        walk(l, offset, best);
        walk(&t.children()[1], offset + l.arity(), best);
    }
    walk(t, 0, &mut best);
    Ok(best)
}

/// Tamari order on binary trees of equal arity, decided by componentwise
/// comparison of bracketing vectors.
pub fn tamari_leq(s: &PlanarTree, t: &PlanarTree) -> Result<bool, TreeError> {
    if s.arity() != t.arity() {
        return Err(TreeError::ArityMismatch(s.arity(), t.arity()));
    }
    let a = bracket_vector(s)?;
    let b = bracket_vector(t)?;
    Ok(a.iter().zip(b.iter()).all(|(x, y)| x <= y))
}

/// Tamari order decided by breadth-first closure of the rotation covers.
/// Exponential; kept as an independent cross-check of [`tamari_leq`].
pub fn tamari_leq_by_rotations(s: &PlanarTree, t: &PlanarTree) -> Result<bool, TreeError> {
    if s.arity() != t.arity() {
        return Err(TreeError::ArityMismatch(s.arity(), t.arity()));
    }
    if !s.is_binary() || !t.is_binary() {
        return Err(TreeError::NotBinary);
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut stack = vec![s.clone()];
    seen.insert(s.clone());
    while let Some(u) = stack.pop() {
        if &u == t {
            return Ok(true);
        }
        for v in covers(&u)? {
            if seen.insert(v.clone()) {
                stack.push(v);
            }
        }
    }
    Ok(false)
}

/// Leaf-leaning vector of a binary tree with `n >= 2` leaves: one bit per
/// interior leaf `2..=n-1`, namely `1` when that leaf is the left input of
/// its vertex and `0` when it is the right input. Monotone for the Tamari
/// order; switching bit `i` from 0 to 1 moves the Loday point along the
/// difference direction `e_i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LeafVector(pub Vec<u8>);

impl LeafVector {
    pub fn leq(&self, other: &LeafVector) -> bool {
        self.0.len() == other.0.len()
            && self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// Number of set bits (count of interior leaves leaning via left inputs);
    /// equals the dimension of the maximal face with this tree on top.
    pub fn ones(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    pub fn zeros(&self) -> usize {
        self.0.len() - self.ones()
    }
}

pub fn leaf_vector(t: &PlanarTree) -> Result<LeafVector, TreeError> {
    if !t.is_binary() {
        return Err(TreeError::NotBinary);
    }
    let n = t.arity();
    if n < 2 {
        return Ok(LeafVector(Vec::new()));
    }
    // kind[p] for 0-indexed leaf position p: 1 = left input, 0 = right input
    let mut kind = vec![0u8; n];
    fn walk(t: &PlanarTree, offset: usize, kind: &mut [u8]) {
        if t.is_leaf() {
            return;
        }
        let l = &t.children()[0];
        let r = &t.children()[1];
        if l.is_leaf() {
            kind[offset] = 1;
        }
        if r.is_leaf() {
            kind[offset + l.arity()] = 0;
        }
        walk(l, offset, kind);
        walk(r, offset + l.arity(), kind);
    }
    walk(t, 0, &mut kind);
    Ok(LeafVector(kind[1..n - 1].to_vec()))
}

/// Which internal edges to contract in [`collapse_edges`], named by the side
/// of the parent vertex the child hangs on.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CollapseSide {
    Left,
    Right,
}

/// Contract every internal edge of a binary tree whose child vertex is the
/// left (resp. right) input of its parent.
///
/// Collapsing right-input edges yields the label of the unique maximal face
/// whose top vertex is `t`; collapsing left-input edges yields the maximal
/// face whose bottom vertex is `t`. See [`max_face_with_top`] and
/// [`max_face_with_bottom`].
pub fn collapse_edges(t: &PlanarTree, side: CollapseSide) -> Result<PlanarTree, TreeError> {
    if !t.is_binary() {
        return Err(TreeError::NotBinary);
    }
    fn go(t: &PlanarTree, side: CollapseSide) -> PlanarTree {
        if t.is_leaf() {
            return PlanarTree::leaf();
        }
        let l = go(&t.children()[0], side);
        let r = go(&t.children()[1], side);
        let mut kids = Vec::new();
        if !l.is_leaf() && side == CollapseSide::Left {
            kids.extend(l.children);
        } else {
            kids.push(l);
        }
        if !r.is_leaf() && side == CollapseSide::Right {
            kids.extend(r.children);
        } else {
            kids.push(r);
        }
        PlanarTree::node(kids)
    }
    Ok(go(t, side))
}

/// The unique maximal face whose Tamari-top vertex is `t`. Its dimension is
/// the number of set bits in `leaf_vector(t)`.
pub fn max_face_with_top(t: &PlanarTree) -> Result<PlanarTree, TreeError> {
    collapse_edges(t, CollapseSide::Right)
}

/// The unique maximal face whose Tamari-bottom vertex is `t`. Its dimension
/// is the number of clear bits in `leaf_vector(t)`.
pub fn max_face_with_bottom(t: &PlanarTree) -> Result<PlanarTree, TreeError> {
    collapse_edges(t, CollapseSide::Left)
}

/// Left comb with `n` leaves: the Tamari minimum.
pub fn left_comb(n: usize) -> PlanarTree {
    PlanarTree::corolla(n).bottom_refinement()
}

/// Right comb with `n` leaves: the Tamari maximum.
pub fn right_comb(n: usize) -> PlanarTree {
    PlanarTree::corolla(n).top_refinement()
}

/// An ordered, nonempty list of planar trees; labels the faces of a product
/// of associahedra.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Forest(pub Vec<PlanarTree>);

impl Forest {
    pub fn single(t: PlanarTree) -> Self {
        Forest(vec![t])
    }

    pub fn arity(&self) -> usize {
        self.0.iter().map(|t| t.arity()).sum()
    }

    pub fn face_dim(&self) -> usize {
        self.0.iter().map(|t| t.face_dim()).sum()
    }

    pub fn is_binary(&self) -> bool {
        self.0.iter().all(|t| t.is_binary())
    }

    pub fn encode(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|t| t.encode()).collect();
        parts.join(",")
    }

    pub fn bottom_refinement(&self) -> Forest {
        Forest(self.0.iter().map(|t| t.bottom_refinement()).collect())
    }

    pub fn top_refinement(&self) -> Forest {
        Forest(self.0.iter().map(|t| t.top_refinement()).collect())
    }

    pub fn refines(&self, other: &Forest) -> bool {
        self.0.len() == other.0.len()
            && self.0.iter().zip(other.0.iter()).all(|(a, b)| a.refines(b))
    }

    /// Componentwise Tamari order on forests of binary trees.
    pub fn tamari_leq(&self, other: &Forest) -> Result<bool, TreeError> {
        if self.0.len() != other.0.len() {
            return Err(TreeError::ArityMismatch(self.0.len(), other.0.len()));
        }
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if !tamari_leq(a, b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Concatenation of the leaf-leaning vectors of the trees.
    pub fn leaf_vector(&self) -> Result<LeafVector, TreeError> {
        let mut bits = Vec::new();
        for t in &self.0 {
            bits.extend(leaf_vector(t)?.0);
        }
        Ok(LeafVector(bits))
    }
}

impl PartialOrd for Forest {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Forest {
    fn cmp(&self, other: &Self) -> Ordering {
        self.encode().cmp(&other.encode())
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

impl fmt::Debug for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

/// Rebuild the planar tree from a laminar family of leaf intervals over
/// `1..=n`. The root interval `(1, n)` is implied. Inverse of
/// [`PlanarTree::leaf_intervals`] (minus singletons).
pub fn tree_from_intervals(n: usize, intervals: &[(usize, usize)]) -> PlanarTree {
    assert!(n >= 1);
    fn build(lo: usize, hi: usize, intervals: &[(usize, usize)]) -> PlanarTree {
        if lo == hi {
            return PlanarTree::leaf();
        }
        // maximal proper sub-intervals of [lo, hi], plus uncovered leaves
        let mut kids = Vec::new();
        let mut pos = lo;
        while pos <= hi {
            let best = intervals
                .iter()
                .filter(|&&(a, b)| a == pos && b <= hi && (a, b) != (lo, hi))
                .map(|&(_, b)| b)
                .max();
            match best {
                Some(b) => {
                    kids.push(build(pos, b, intervals));
                    pos = b + 1;
                }
                None => {
                    kids.push(PlanarTree::leaf());
                    pos += 1;
                }
            }
        }
        if kids.len() == 1 {
            kids.pop().unwrap()
        } else {
            PlanarTree::node(kids)
        }
    }
    build(1, n, intervals)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalan(n: usize) -> usize {
        // C_0 = 1, C_1 = 1, C_2 = 2, ...
        let mut c = vec![0usize; n + 1];
        c[0] = 1;
        for i in 1..=n {
            c[i] = (0..i).map(|k| c[k] * c[i - 1 - k]).sum();
        }
        c[n]
    }

    #[test]
    fn binary_counts_are_catalan() {
        for n in 1..=10 {
            let ts = enumerate_binary_trees(n).unwrap();
            assert_eq!(ts.len(), catalan(n - 1), "n={n}");
            // all distinct, all binary, sorted
            let mut enc: Vec<String> = ts.iter().map(|t| t.encode()).collect();
            let orig = enc.clone();
            enc.sort();
            enc.dedup();
            assert_eq!(enc.len(), ts.len());
            assert_eq!(enc, orig);
            assert!(ts.iter().all(|t| t.is_binary() && t.arity() == n));
        }
        assert!(enumerate_binary_trees(0).is_err());
    }

    #[test]
    fn planar_counts() {
        // 1, 3, 11, 45, 197 for n = 2..6 (super-Catalan)
        let expected = [(2, 1), (3, 3), (4, 11), (5, 45), (6, 197)];
        for (n, count) in expected {
            let ts = enumerate_planar_trees(n).unwrap();
            assert_eq!(ts.len(), count, "n={n}");
            assert!(ts.iter().all(|t| t.arity() == n));
        }
        // n=4 face counts by codimension: pentagon = 1 cell + 5 edges + 5 vertices
        let ts = enumerate_planar_trees(4).unwrap();
        let by_codim = |k: usize| ts.iter().filter(|t| t.internal_edges() == k).count();
        assert_eq!((by_codim(0), by_codim(1), by_codim(2)), (1, 5, 5));
    }

    #[test]
    fn encoding_round_trip() {
        for n in 2..=6 {
            for t in enumerate_planar_trees(n).unwrap() {
                let j = t.to_json();
                assert_eq!(PlanarTree::from_json(&j).unwrap(), t);
            }
        }
        assert_eq!(PlanarTree::corolla(3).to_json().to_string(), "[[],[],[]]");
        assert!(PlanarTree::from_json(&serde_json::json!([[]])).is_err());
    }

    #[test]
    fn graft_unit_and_combs() {
        let c2 = PlanarTree::corolla(2);
        let t = PlanarTree::corolla(3);
        assert_eq!(graft(&PlanarTree::leaf(), 1, &t).unwrap(), t);
        assert_eq!(graft(&t, 2, &PlanarTree::leaf()).unwrap(), t);
        assert!(graft(&t, 4, &c2).is_err());
        assert!(graft(&t, 0, &c2).is_err());

        // c_2 ∘_1 c_2 is the left comb with 3 leaves
        assert_eq!(graft(&c2, 1, &c2).unwrap(), left_comb(3));
        assert_eq!(graft(&c2, 2, &c2).unwrap(), right_comb(3));

        // sequential instance: (c2 ∘_1 c2) ∘_2 c2 = c2 ∘_1 (c2 ∘_2 c2)
        let lhs = graft(&graft(&c2, 1, &c2).unwrap(), 2, &c2).unwrap();
        let rhs = graft(&c2, 1, &graft(&c2, 2, &c2).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        // parallel instance: (c2 ∘_1 c2) ∘_3 c2 = (c2 ∘_2 c2) ∘_1 c2
        let lhs = graft(&graft(&c2, 1, &c2).unwrap(), 3, &c2).unwrap();
        let rhs = graft(&graft(&c2, 2, &c2).unwrap(), 1, &c2).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn graft_operad_axioms_exhaustive() {
        // sequential and parallel axioms over all planar trees of arity <= 4
        let mut pool = vec![PlanarTree::leaf()];
        for n in 2..=4 {
            pool.extend(enumerate_planar_trees(n).unwrap());
        }
        for s in &pool {
            for t in &pool {
                for u in &pool {
                    let m = s.arity();
                    for i in 1..=m {
                        // sequential: (s ∘_i t) ∘_{i+j-1} u = s ∘_i (t ∘_j u)
                        for j in 1..=t.arity() {
                            let lhs =
                                graft(&graft(s, i, t).unwrap(), i + j - 1, u).unwrap();
                            let rhs = graft(s, i, &graft(t, j, u).unwrap()).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                        // parallel: for i < k, (s ∘_i t) ∘_{k+|t|-1} u = (s ∘_k u) ∘_i t
                        for k in (i + 1)..=m {
                            let lhs =
                                graft(&graft(s, i, t).unwrap(), k + t.arity() - 1, u).unwrap();
                            let rhs = graft(&graft(s, k, u).unwrap(), i, t).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn tamari_combs_and_covers() {
        for n in 2..=6 {
            let lo = left_comb(n);
            let hi = right_comb(n);
            assert!(tamari_leq(&lo, &hi).unwrap());
            if n > 2 {
                assert!(!tamari_leq(&hi, &lo).unwrap());
            }
            assert!(covers(&hi).unwrap().is_empty());
            // every tree sits between the combs
            for t in enumerate_binary_trees(n).unwrap() {
                assert!(tamari_leq(&lo, &t).unwrap());
                assert!(tamari_leq(&t, &hi).unwrap());
            }
        }
        assert_eq!(covers(&left_comb(3)).unwrap(), vec![right_comb(3)]);
        assert_eq!(covers(&left_comb(4)).unwrap().len(), 2);
        assert!(tamari_leq(&left_comb(3), &left_comb(4)).is_err());
    }

    #[test]
    fn tamari_bracket_agrees_with_rotation_closure() {
        for n in 2..=7 {
            let ts = enumerate_binary_trees(n).unwrap();
            for s in &ts {
                for t in &ts {
                    assert_eq!(
                        tamari_leq(s, t).unwrap(),
                        tamari_leq_by_rotations(s, t).unwrap(),
                        "n={n} s={s} t={t}"
                    );
                }
            }
        }
    }

    #[test]
    fn tamari_is_partial_order_with_comb_extremes() {
        for n in 2..=7 {
            let ts = enumerate_binary_trees(n).unwrap();
            for s in &ts {
                assert!(tamari_leq(s, s).unwrap());
                for t in &ts {
                    if tamari_leq(s, t).unwrap() && tamari_leq(t, s).unwrap() {
                        assert_eq!(s, t);
                    }
                    for u in &ts {
                        if tamari_leq(s, t).unwrap() && tamari_leq(t, u).unwrap() {
                            assert!(tamari_leq(s, u).unwrap());
                        }
                    }
                }
            }
            let lo = left_comb(n);
            let hi = right_comb(n);
            assert!(ts.iter().all(|t| tamari_leq(&lo, t).unwrap()));
            assert!(ts.iter().all(|t| tamari_leq(t, &hi).unwrap()));
        }
    }

    #[test]
    fn leaf_vector_examples_and_monotonicity() {
        assert_eq!(leaf_vector(&left_comb(4)).unwrap(), LeafVector(vec![0, 0]));
        assert_eq!(leaf_vector(&right_comb(4)).unwrap(), LeafVector(vec![1, 1]));
        // c_2 ∘_2 c_2 = right comb with 3 leaves: second leaf is a left input
        let t = graft(&PlanarTree::corolla(2), 2, &PlanarTree::corolla(2)).unwrap();
        assert_eq!(leaf_vector(&t).unwrap(), LeafVector(vec![1]));

        for n in 2..=7 {
            let ts = enumerate_binary_trees(n).unwrap();
            for s in &ts {
                for t in &ts {
                    if tamari_leq(s, t).unwrap() {
                        assert!(
                            leaf_vector(s).unwrap().leq(&leaf_vector(t).unwrap()),
                            "L not monotone at s={s} t={t}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn collapse_examples() {
        for n in 3..=6 {
            let rc = right_comb(n);
            assert_eq!(collapse_edges(&rc, CollapseSide::Right).unwrap(), PlanarTree::corolla(n));
            assert_eq!(collapse_edges(&rc, CollapseSide::Left).unwrap(), rc);
            let lc = left_comb(n);
            assert_eq!(collapse_edges(&lc, CollapseSide::Left).unwrap(), PlanarTree::corolla(n));
            assert_eq!(collapse_edges(&lc, CollapseSide::Right).unwrap(), lc);
        }
        assert!(collapse_edges(&PlanarTree::corolla(3), CollapseSide::Left).is_err());
    }

    #[test]
    fn collapse_dimension_law() {
        // dim F_t + dim G_t = n - 2, with dim F_t = ones of L and dim G_t = zeros
        for n in 2..=8 {
            for t in enumerate_binary_trees(n).unwrap() {
                let f = max_face_with_top(&t).unwrap();
                let g = max_face_with_bottom(&t).unwrap();
                let lv = leaf_vector(&t).unwrap();
                assert_eq!(f.face_dim(), lv.ones(), "t={t}");
                assert_eq!(g.face_dim(), lv.zeros(), "t={t}");
                assert_eq!(f.face_dim() + g.face_dim(), n - 2);
                // t is a refinement of both, and is the claimed extreme vertex
                assert!(t.refines(&f));
                assert!(t.refines(&g));
                assert_eq!(f.top_refinement(), t);
                assert_eq!(g.bottom_refinement(), t);
            }
        }
    }

    #[test]
    fn max_faces_are_maximal() {
        // F_t really is the unique maximal face with top t (same for G_t and
        // bottom): every face with that extreme vertex sits inside it. A face
        // labeled `a` is contained in the face labeled `b` iff a.refines(b).
        for n in 3..=5 {
            let faces = enumerate_planar_trees(n).unwrap();
            for t in enumerate_binary_trees(n).unwrap() {
                let f = max_face_with_top(&t).unwrap();
                let g = max_face_with_bottom(&t).unwrap();
                for face in &faces {
                    if face.top_refinement() == t {
                        assert!(face.refines(&f), "n={n} t={t} face={face}");
                    }
                    if face.bottom_refinement() == t {
                        assert!(face.refines(&g), "n={n} t={t} face={face}");
                    }
                }
            }
        }
    }

    #[test]
    fn refinement_and_intervals() {
        let c4 = PlanarTree::corolla(4);
        for t in enumerate_binary_trees(4).unwrap() {
            assert!(t.refines(&c4));
            assert!(!c4.refines(&t));
        }
        // binary_refinements of the corolla enumerates all binary trees
        assert_eq!(c4.binary_refinements(), enumerate_binary_trees(4).unwrap());
        // a vertex face has exactly one refinement
        for t in enumerate_binary_trees(5).unwrap() {
            assert_eq!(t.binary_refinements(), vec![t.clone()]);
        }
        // round-trip through intervals
        for n in 2..=6 {
            for t in enumerate_planar_trees(n).unwrap() {
                let iv = t.leaf_intervals();
                assert_eq!(tree_from_intervals(n, &iv), t);
            }
        }
    }

    #[test]
    fn comb_refinements_are_extremes_of_faces() {
        for n in 3..=6 {
            for face in enumerate_planar_trees(n).unwrap() {
                let verts = face.binary_refinements();
                let bm = face.bottom_refinement();
                let tp = face.top_refinement();
                assert!(verts.contains(&bm));
                assert!(verts.contains(&tp));
                for v in &verts {
                    assert!(tamari_leq(&bm, v).unwrap());
                    assert!(tamari_leq(v, &tp).unwrap());
                }
            }
        }
    }
}
