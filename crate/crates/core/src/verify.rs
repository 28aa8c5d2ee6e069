//! The named verification checks behind the `verify` subcommand and the
//! acceptance suite. Each check runs one invariant at explicit sizes and
//! returns a machine-readable report row; `run_all` executes the canonical
//! battery in a fixed order regardless of how it is scheduled.

use crate::classics::{
    aw_cells, aw_diagonal, cube_diagonal, cube_diagonal_generic, simplex_diagonal_generic,
    CubeRealization, SimplexRealization,
};
use crate::diagonal::{
    diagonal_in, lower_face_cells, magical_pairs, magical_pairs_product, normal_cone_pairs,
    pointwise_diagonal, subdivision, Sampler,
};
use crate::loday::{LodayRealization, ProductRealization, Weight};
use crate::operad::{compose, compose_cellular, TransitionMap};
use crate::rat::{qi, QVector};
use crate::trees::{
    covers, enumerate_binary_trees, enumerate_planar_trees, graft, tamari_leq,
    tamari_leq_by_rotations, Forest, PlanarTree,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::time::Instant;

/// Matching-pair counts per arity. The first three are anchored in the
/// source material; 22 and 91 were derived by the first verified enumeration
/// (cross-checked against the cone and sampling oracles) and are frozen as
/// regression constants.
pub const EXPECTED_PAIR_COUNTS: [(usize, usize); 5] = [(2, 1), (3, 2), (4, 6), (5, 22), (6, 91)];

/// Hard guard on combinatorial blow-up.
pub const MAX_ARITY: usize = 8;

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub check: String,
    pub arity: Option<usize>,
    pub status: bool,
    pub counts: String,
    pub elapsed_ms: u128,
}

impl CheckReport {
    pub fn to_json(&self) -> Value {
        json!({
            "check": self.check,
            "arity": self.arity,
            "status": if self.status { "OK" } else { "FAIL" },
            "counts": self.counts,
            "elapsed_ms": self.elapsed_ms,
        })
    }

    pub fn line(&self) -> String {
        let arity = self.arity.map(|n| format!(" n={n}")).unwrap_or_default();
        format!(
            "{}{}: {} ({} ms){}",
            self.check,
            arity,
            self.counts,
            self.elapsed_ms,
            if self.status { ", OK" } else { ", FAIL" }
        )
    }
}

fn run_check(
    name: &str,
    arity: Option<usize>,
    body: impl FnOnce() -> Result<String, String>,
) -> CheckReport {
    let start = Instant::now();
    let (status, counts) = match body() {
        Ok(counts) => (true, counts),
        Err(err) => (false, err),
    };
    CheckReport {
        check: name.to_string(),
        arity,
        status,
        counts,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

fn random_weight(rng: &mut ChaCha8Rng, n: usize) -> Weight {
    Weight((0..n).map(|_| rng.gen_range(1..=6u32)).collect())
}

/// Enumeration sizes: Catalan for binary trees, the planar-tree counts for
/// faces.
pub fn check_tree_counts(max_arity: usize) -> CheckReport {
    run_check("tree_counts", None, || {
        let catalan = [1usize, 1, 2, 5, 14, 42, 132, 429, 1430, 4862];
        let planar = [0usize, 0, 1, 3, 11, 45, 197, 903, 4279];
        let mut checked = 0;
        for n in 1..=max_arity.min(9) {
            let got = enumerate_binary_trees(n).map_err(|e| e.to_string())?.len();
            if got != catalan[n - 1] {
                return Err(format!("binary count at n={n}: {got}"));
            }
            if n >= 2 {
                let got = enumerate_planar_trees(n).map_err(|e| e.to_string())?.len();
                if got != planar[n] {
                    return Err(format!("planar count at n={n}: {got}"));
                }
            }
            checked = n;
        }
        Ok(format!("arities 1..={checked}"))
    })
}

/// The bracket-vector comparison and the rotation closure decide the same
/// order, which is reflexive, antisymmetric and transitive with the combs as
/// extremes.
pub fn check_tamari_equivalence(max_arity: usize) -> CheckReport {
    run_check("tamari_equivalence", None, || {
        let cap = max_arity.min(6);
        let mut pairs = 0usize;
        for n in 2..=cap {
            let ts = enumerate_binary_trees(n).map_err(|e| e.to_string())?;
            for s in &ts {
                for t in &ts {
                    let fast = tamari_leq(s, t).map_err(|e| e.to_string())?;
                    let slow = tamari_leq_by_rotations(s, t).map_err(|e| e.to_string())?;
                    if fast != slow {
                        return Err(format!("disagreement at n={n}: {s} vs {t}"));
                    }
                    pairs += 1;
                }
            }
        }
        Ok(format!("{pairs} pairs, arities 2..={cap}"))
    })
}

/// Vertex enumeration of the H-representation returns exactly the labeled
/// Loday points, and each facet is tight precisely on the grafted trees.
pub fn check_loday_h_v(max_arity: usize, weights_per_arity: usize, seed: u64) -> CheckReport {
    run_check("loday_h_v", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cap = max_arity.min(6);
        let mut built = 0usize;
        for n in 2..=cap {
            for w in std::iter::once(Weight::standard(n))
                .chain((1..weights_per_arity).map(|_| random_weight(&mut rng, n)))
            {
                // build() itself enforces V = vertex_enumeration(H)
                let k = LodayRealization::build(w.clone(), None).map_err(|e| e.to_string())?;
                for (fi, &(p, q, _)) in k.facet_pqr().iter().enumerate() {
                    let h = &k.halfspaces.inequalities[fi];
                    for (t, pt) in k.vertex_trees().iter().zip(k.vertices.vertices.iter()) {
                        let factors = t
                            .leaf_intervals()
                            .iter()
                            .any(|&(a, b)| a == p + 1 && b == p + q && !(a == 1 && b == n));
                        if h.active_at(pt) != factors {
                            return Err(format!(
                                "facet tightness failed at n={n}, w={:?}, facet {fi}, tree {t}",
                                w.0
                            ));
                        }
                    }
                }
                built += 1;
            }
        }
        Ok(format!("{built} realizations, arities 2..={cap}"))
    })
}

/// The order generated by the oriented 1-skeleton equals the Tamari order,
/// for two distinct decreasing orientation vectors.
pub fn check_well_oriented(max_arity: usize) -> CheckReport {
    run_check("well_oriented", None, || {
        let cap = max_arity.min(6);
        for n in 2..=cap {
            let vectors = vec![
                None,
                Some(QVector((0..n - 1).map(|i| qi(1i64 << (n - 1 - i))).collect())),
            ];
            for orientation in vectors {
                let k = LodayRealization::build(Weight::standard(n), orientation)
                    .map_err(|e| e.to_string())?;
                let ts = k.vertex_trees();
                let m = ts.len();
                // closure of the oriented covering edges
                let mut reach = vec![vec![false; m]; m];
                for (i, s) in ts.iter().enumerate() {
                    reach[i][i] = true;
                    for t in covers(s).map_err(|e| e.to_string())? {
                        let j = ts.iter().position(|u| *u == t).unwrap();
                        let d = k.vertex_of(&t).unwrap().sub(&k.vertex_of(s).unwrap());
                        if k.orientation.dot(&d) <= qi(0) {
                            return Err(format!("edge not oriented upward at n={n}: {s} -> {t}"));
                        }
                        reach[i][j] = true;
                    }
                }
                for mid in 0..m {
                    for a in 0..m {
                        if reach[a][mid] {
                            let via: Vec<usize> =
                                (0..m).filter(|&b| reach[mid][b]).collect();
                            for b in via {
                                reach[a][b] = true;
                            }
                        }
                    }
                }
                for (i, s) in ts.iter().enumerate() {
                    for (j, t) in ts.iter().enumerate() {
                        if reach[i][j] != tamari_leq(s, t).map_err(|e| e.to_string())? {
                            return Err(format!("skeleton order differs at n={n}: {s} vs {t}"));
                        }
                    }
                }
            }
        }
        Ok(format!("arities 2..={cap}, 2 orientation vectors"))
    })
}

/// The Tamari enumeration and the normal-cone oracle list identical pairs,
/// with the frozen counts.
pub fn check_magical_vs_cones(n: usize) -> CheckReport {
    run_check("magical_vs_cones", Some(n), || {
        let magical = magical_pairs(n).map_err(|e| e.to_string())?;
        let p = ProductRealization::standard(n).map_err(|e| e.to_string())?;
        let cones = normal_cone_pairs(&p).map_err(|e| e.to_string())?;
        if magical != cones {
            return Err(format!("{} magical vs {} cone pairs differ", magical.len(), cones.len()));
        }
        if let Some(&(_, expect)) = EXPECTED_PAIR_COUNTS.iter().find(|&&(m, _)| m == n) {
            if magical.len() != expect {
                return Err(format!("expected {expect} pairs, found {}", magical.len()));
            }
        }
        Ok(format!("{} = {} pairs", magical.len(), cones.len()))
    })
}

/// The fiber-polytope route (lower facets of the lifted midpoint projection)
/// reproduces the same cells.
pub fn check_magical_vs_lower_faces(n: usize) -> CheckReport {
    run_check("magical_vs_lower_faces", Some(n), || {
        let magical = magical_pairs(n).map_err(|e| e.to_string())?;
        let p = ProductRealization::standard(n).map_err(|e| e.to_string())?;
        let fiber = lower_face_cells(&p).map_err(|e| e.to_string())?;
        if magical != fiber {
            return Err(format!("{} magical vs {} fiber cells", magical.len(), fiber.len()));
        }
        Ok(format!("{} = {} cells", magical.len(), fiber.len()))
    })
}

/// Pointwise section property on random rational points: `β(Δ(z)) = z`
/// exactly, the skeleton bound holds, and every full-dimensional hit is a
/// matching pair.
pub fn check_sections(max_arity: usize, samples: usize, seed: u64) -> CheckReport {
    run_check("section_property", None, || {
        let cap = max_arity.min(5);
        let mut hits_total = 0usize;
        for n in 2..=cap {
            let p = ProductRealization::standard(n).map_err(|e| e.to_string())?;
            let magical = magical_pairs(n).map_err(|e| e.to_string())?;
            let mut sampler = Sampler::new(seed ^ (n as u64));
            let mut hit = std::collections::BTreeSet::new();
            for _ in 0..samples {
                let z = sampler.sample(&p.vertices);
                let res = pointwise_diagonal(&p, &z).map_err(|e| e.to_string())?;
                if res.lo.midpoint(&res.hi) != z {
                    return Err(format!("section broke at n={n}, z={z}"));
                }
                let (df, dg) = (res.lo_face.face_dim(), res.hi_face.face_dim());
                if df + dg > p.dim() {
                    return Err(format!("skeleton bound broke at n={n}, z={z}"));
                }
                // the face pair is always a sub-pair of some matching pair
                if !magical
                    .iter()
                    .any(|m| res.lo_face.refines(&m.f) && res.hi_face.refines(&m.g))
                {
                    return Err(format!(
                        "hit ({}, {}) is not below any matching pair at n={n}",
                        res.lo_face, res.hi_face
                    ));
                }
                if df + dg == p.dim() {
                    let pair = crate::diagonal::MatchingPair { f: res.lo_face, g: res.hi_face };
                    if !magical.contains(&pair) {
                        return Err(format!("non-matching cell hit at n={n}: {} ⊗ {}", pair.f, pair.g));
                    }
                    hit.insert(pair);
                }
            }
            hits_total += hit.len();
        }
        Ok(format!("{samples} samples per arity 2..={cap}, {hits_total} cells hit"))
    })
}

/// Exact covering of each associahedron by the midpoint cells.
pub fn check_subdivision(max_arity: usize) -> CheckReport {
    run_check("subdivision_covering", None, || {
        let cap = max_arity.min(5);
        let mut cells = 0usize;
        for n in 3..=cap {
            let p = ProductRealization::standard(n).map_err(|e| e.to_string())?;
            let sub = subdivision(&p).map_err(|e| e.to_string())?;
            cells += sub.cells.len();
        }
        Ok(format!("arities 3..={cap}, {cells} cells, volumes exact"))
    })
}

/// Closed-form simplex and cube diagonals equal the generic machinery, and
/// the staircase cells match the lower-facet computation.
pub fn check_classics(samples: usize, seed: u64) -> CheckReport {
    run_check("classics", None, || {
        for n in 1..=4usize {
            let s = SimplexRealization::new(n);
            let mut sampler = Sampler::new(seed ^ (n as u64) << 3);
            for _ in 0..samples {
                let z = sampler.sample(&s.vertices);
                let closed = aw_diagonal(n, &z).map_err(|e| e.to_string())?;
                let generic = simplex_diagonal_generic(&s, &z).map_err(|e| e.to_string())?;
                if closed != generic {
                    return Err(format!("simplex mismatch n={n} z={z}"));
                }
            }
            if aw_cells(n).len() != n + 1 {
                return Err(format!("cell count n={n}"));
            }
            let c = CubeRealization::new(n);
            let mut sampler = Sampler::new(seed ^ (n as u64) << 5);
            for _ in 0..samples {
                let z = sampler.sample(&c.vertices);
                let closed = cube_diagonal(n, &z).map_err(|e| e.to_string())?;
                let generic = cube_diagonal_generic(&c, &z).map_err(|e| e.to_string())?;
                if closed != generic {
                    return Err(format!("cube mismatch n={n} z={z}"));
                }
            }
        }
        Ok(format!("{samples} samples per dimension 1..=4, exact"))
    })
}

/// The staircase cells of the simplex equal the lower-facet computation of
/// the lifted midpoint projection, tightly, in every dimension up to 4.
pub fn check_aw_cells() -> CheckReport {
    run_check("aw_cells_vs_lower_faces", None, || {
        use crate::diagonal::{lower_faces, AffineMap};
        use crate::polytope::VPolytope;
        for n in 1..=4usize {
            let s = SimplexRealization::new(n);
            let verts = &s.vertices.vertices;
            let m = verts.len();
            let mut prod = Vec::with_capacity(m * m);
            for a in verts {
                for b in verts {
                    let mut c = a.0.clone();
                    c.extend(b.0.iter().cloned());
                    prod.push(QVector(c));
                }
            }
            let half = crate::rat::qr(1, 2);
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
            let cells = lower_faces(&VPolytope::new(2 * n, prod), &beta, &psi)
                .map_err(|e| e.to_string())?;
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
            if got != aw_cells(n) {
                return Err(format!("staircase cells differ at n={n}"));
            }
            if cells.iter().any(|c| c.dim != c.projected_dim) {
                return Err(format!("subdivision not tight at n={n}"));
            }
        }
        Ok("dimensions 1..=4, tight".to_string())
    })
}

/// Cellular operad axioms on face labels, exhaustively up to a total arity.
pub fn check_operad_cellular(max_total: usize) -> CheckReport {
    run_check("operad_cellular_axioms", None, || {
        let pool = |n: usize| -> Result<Vec<PlanarTree>, String> {
            if n == 1 {
                Ok(vec![PlanarTree::leaf()])
            } else {
                enumerate_planar_trees(n).map_err(|e| e.to_string())
            }
        };
        let mut instances = 0usize;
        for l in 1..=max_total {
            for m in 1..=max_total {
                for n in 1..=max_total {
                    if l + m + n - 2 > max_total {
                        continue;
                    }
                    for f in pool(l)? {
                        for g in pool(m)? {
                            for h in pool(n)? {
                                for i in 1..=l {
                                    for j in 1..=m {
                                        let lhs = compose_cellular(
                                            l + m - 1,
                                            i + j - 1,
                                            n,
                                            &compose_cellular(l, i, m, &f, &g)
                                                .map_err(|e| e.to_string())?,
                                            &h,
                                        )
                                        .map_err(|e| e.to_string())?;
                                        let rhs = compose_cellular(
                                            l,
                                            i,
                                            m + n - 1,
                                            &f,
                                            &compose_cellular(m, j, n, &g, &h)
                                                .map_err(|e| e.to_string())?,
                                        )
                                        .map_err(|e| e.to_string())?;
                                        if lhs != rhs {
                                            return Err(format!(
                                                "sequential axiom failed: ({f} ∘_{i} {g}) ∘ {h}"
                                            ));
                                        }
                                        instances += 1;
                                    }
                                    for k in (i + 1)..=l {
                                        let lhs = compose_cellular(
                                            l + m - 1,
                                            k + m - 1,
                                            n,
                                            &compose_cellular(l, i, m, &f, &g)
                                                .map_err(|e| e.to_string())?,
                                            &h,
                                        )
                                        .map_err(|e| e.to_string())?;
                                        let rhs = compose_cellular(
                                            l + n - 1,
                                            i,
                                            m,
                                            &compose_cellular(l, k, n, &f, &h)
                                                .map_err(|e| e.to_string())?,
                                            &g,
                                        )
                                        .map_err(|e| e.to_string())?;
                                        if lhs != rhs {
                                            return Err(format!(
                                                "parallel axiom failed at ({f}, {g}, {h})"
                                            ));
                                        }
                                        instances += 1;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(format!("{instances} instances, total arity <= {max_total}"))
    })
}

/// Vertex-level composition equals grafting, exactly.
pub fn check_operad_vertices(max_total: usize) -> CheckReport {
    run_check("operad_vertex_composition", None, || {
        let mut instances = 0usize;
        for m in 1..=max_total {
            for n in 1..=max_total {
                if m + n - 1 > max_total {
                    continue;
                }
                let km = LodayRealization::build(Weight::standard(m), None)
                    .map_err(|e| e.to_string())?;
                let kn = LodayRealization::build(Weight::standard(n), None)
                    .map_err(|e| e.to_string())?;
                let target = LodayRealization::build(Weight::standard(m + n - 1), None)
                    .map_err(|e| e.to_string())?;
                for i in 1..=m {
                    for s in km.vertex_trees() {
                        for t in kn.vertex_trees() {
                            let x = km.vertex_of(s).unwrap();
                            let y = kn.vertex_of(t).unwrap();
                            let z = compose(m, i, n, &x, &y, 3).map_err(|e| e.to_string())?;
                            let grafted = graft(s, i, t).map_err(|e| e.to_string())?;
                            if z != target.vertex_of(&grafted).unwrap() {
                                return Err(format!("vertex composition failed: {s} ∘_{i} {t}"));
                            }
                            instances += 1;
                        }
                    }
                }
            }
        }
        Ok(format!("{instances} vertex compositions, total arity <= {max_total}"))
    })
}

/// Composing matching pairs componentwise yields exactly the matching pairs
/// of the image facet: the diagonal is a morphism for the cellular
/// compositions.
pub fn check_operad_diagonal_compat(max_total: usize) -> CheckReport {
    run_check("operad_diagonal_compatibility", None, || {
        let mut checked = 0usize;
        for m in 2..=max_total {
            for n in 2..=max_total {
                if m + n - 1 > max_total {
                    continue;
                }
                for i in 1..=m {
                    let outer = magical_pairs(m).map_err(|e| e.to_string())?;
                    let inner = magical_pairs(n).map_err(|e| e.to_string())?;
                    let mut composed = Vec::new();
                    for a in &outer {
                        for b in &inner {
                            composed.push(crate::diagonal::MatchingPair {
                                f: Forest::single(
                                    compose_cellular(m, i, n, &a.f.0[0], &b.f.0[0])
                                        .map_err(|e| e.to_string())?,
                                ),
                                g: Forest::single(
                                    compose_cellular(m, i, n, &a.g.0[0], &b.g.0[0])
                                        .map_err(|e| e.to_string())?,
                                ),
                            });
                        }
                    }
                    composed.sort();
                    composed.dedup();
                    let facet_label = crate::loday::facet_tree(m + n - 1, i - 1, n);
                    let faces: Vec<Forest> = enumerate_planar_trees(m + n - 1)
                        .map_err(|e| e.to_string())?
                        .into_iter()
                        .filter(|t| t.refines(&facet_label))
                        .map(Forest::single)
                        .collect();
                    let facet_pairs = crate::diagonal::matching_pairs_of_faces(
                        &faces,
                        facet_label.face_dim(),
                    )
                    .map_err(|e| e.to_string())?;
                    if composed != facet_pairs {
                        return Err(format!(
                            "cells differ for ∘_{i}: K_{m} × K_{n}: {} vs {}",
                            composed.len(),
                            facet_pairs.len()
                        ));
                    }
                    checked += 1;
                }
            }
        }
        Ok(format!("{checked} compositions, total arity <= {max_total}"))
    })
}

/// The identity transition stays within `diam/2^depth` of the identity on
/// samples, and transitions transport vertices exactly for random weights.
pub fn check_transition_bound(depth: u32, samples: usize, seed: u64) -> CheckReport {
    run_check("transition_bound", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for n in 3..=5usize {
            let k = LodayRealization::build(Weight::standard(n), None)
                .map_err(|e| e.to_string())?;
            let tr = TransitionMap::new(&k, &k).map_err(|e| e.to_string())?;
            let bound = tr.error_bound(depth);
            let mut sampler = Sampler::new(seed ^ (n as u64));
            for _ in 0..samples {
                let z = sampler.sample(&k.vertices);
                let image = tr.apply(&z, depth).map_err(|e| e.to_string())?;
                if image.linf_distance(&z) > bound {
                    return Err(format!("identity transition out of bound at n={n}, z={z}"));
                }
            }
            // vertex transport to a random-weight realization is exact
            let w = random_weight(&mut rng, n);
            let other = LodayRealization::build(w, None).map_err(|e| e.to_string())?;
            let tr = TransitionMap::new(&k, &other).map_err(|e| e.to_string())?;
            for t in k.vertex_trees() {
                if tr.apply(&k.vertex_of(t).unwrap(), depth).map_err(|e| e.to_string())?
                    != other.vertex_of(t).unwrap()
                {
                    return Err(format!("vertex transport failed at n={n}, {t}"));
                }
            }
        }
        Ok(format!("depth {depth}, {samples} samples per arity 3..=5"))
    })
}

/// The matching pairs and sampled diagonals are identical under two distinct
/// decreasing orientation vectors.
pub fn check_orientation_independence(max_arity: usize, samples: usize, seed: u64) -> CheckReport {
    run_check("orientation_independence", None, || {
        let cap = max_arity.min(5);
        for n in 2..=cap {
            let std = ProductRealization::standard(n).map_err(|e| e.to_string())?;
            let alt_vec = QVector((0..n - 1).map(|i| qi(1i64 << (n - i))).collect());
            let alt = ProductRealization::single(
                LodayRealization::build(Weight::standard(n), Some(alt_vec))
                    .map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?;
            if normal_cone_pairs(&std).map_err(|e| e.to_string())?
                != normal_cone_pairs(&alt).map_err(|e| e.to_string())?
            {
                return Err(format!("cone pairs differ under reorientation at n={n}"));
            }
            let mut sampler = Sampler::new(seed ^ (n as u64) << 1);
            for _ in 0..samples {
                let z = sampler.sample(&std.vertices);
                let a = pointwise_diagonal(&std, &z).map_err(|e| e.to_string())?;
                let b = pointwise_diagonal(&alt, &z).map_err(|e| e.to_string())?;
                if a.lo != b.lo || a.hi != b.hi {
                    return Err(format!("diagonal differs under reorientation at n={n}, z={z}"));
                }
            }
        }
        Ok(format!("arities 2..={cap}, {samples} samples each"))
    })
}

/// The cone oracle lists the same labeled pairs for every weight.
pub fn check_weight_independence(max_arity: usize, weights: usize, seed: u64) -> CheckReport {
    run_check("weight_independence", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cap = max_arity.min(5);
        for n in 2..=cap {
            let expected = magical_pairs(n).map_err(|e| e.to_string())?;
            for _ in 0..weights {
                let w = random_weight(&mut rng, n);
                let p = ProductRealization::single(
                    LodayRealization::build(w.clone(), None).map_err(|e| e.to_string())?,
                )
                .map_err(|e| e.to_string())?;
                if normal_cone_pairs(&p).map_err(|e| e.to_string())? != expected {
                    return Err(format!("pairs differ at n={n}, w={:?}", w.0));
                }
            }
        }
        Ok(format!("{weights} weights per arity 2..={cap}"))
    })
}

/// Set equality of the Tamari and cone descriptions on products of distinct
/// associahedra. An experimental observation: the equality is established
/// for single realizations, while for products only one inclusion is known,
/// so a failure here would be a finding rather than a bug.
pub fn check_product_cells_experimental() -> CheckReport {
    run_check("product_cells_experimental", None, || {
        let k = |n: usize| LodayRealization::build(Weight::standard(n), None).unwrap();
        let mut cells = 0usize;
        for factors in [vec![3usize, 3], vec![3, 4], vec![2, 4]] {
            let p = ProductRealization::new(factors.iter().map(|&n| k(n)).collect())
                .map_err(|e| e.to_string())?;
            let magical = magical_pairs_product(&p).map_err(|e| e.to_string())?;
            let cones = normal_cone_pairs(&p).map_err(|e| e.to_string())?;
            if magical != cones {
                return Err(format!(
                    "product {:?}: {} Tamari vs {} cone pairs",
                    factors,
                    magical.len(),
                    cones.len()
                ));
            }
            cells += magical.len();
        }
        Ok(format!("3 products, {cells} cells"))
    })
}

/// Diagonal restriction to faces: for z in a facet, the diagonals of the
/// polytope and of the facet agree.
pub fn check_face_restriction(max_arity: usize, seed: u64) -> CheckReport {
    run_check("face_restriction", None, || {
        let cap = max_arity.min(5);
        for n in 3..=cap {
            let k = LodayRealization::build(Weight::standard(n), None)
                .map_err(|e| e.to_string())?;
            for t in k.facet_trees().to_vec() {
                let face = k.face(&t).map_err(|e| e.to_string())?;
                let mut sampler = Sampler::new(seed ^ (n as u64) << 2);
                for _ in 0..5 {
                    let z = sampler.sample(&face.vertices);
                    let a = diagonal_in(&k.halfspaces, &k.orientation, &z)
                        .map_err(|e| e.to_string())?;
                    let b = diagonal_in(&face.halfspaces, &k.orientation, &z)
                        .map_err(|e| e.to_string())?;
                    if a != b {
                        return Err(format!("restriction failed at n={n}, facet {t}"));
                    }
                }
            }
        }
        Ok(format!("arities 3..={cap}, all facets, 5 samples each"))
    })
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub max_arity: usize,
    pub samples: usize,
    pub seed: u64,
    pub depth: u32,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { max_arity: 5, samples: 100, seed: 2020, depth: 8 }
    }
}

/// The full battery in canonical order. Independent checks could run in any
/// order (everything here is pure); the report order is fixed regardless.
pub fn run_all(cfg: &VerifyConfig) -> Vec<CheckReport> {
    let mut reports = vec![
        check_tree_counts(cfg.max_arity),
        check_tamari_equivalence(cfg.max_arity.min(6)),
        check_loday_h_v(cfg.max_arity, 10, cfg.seed),
        check_well_oriented(cfg.max_arity),
    ];
    for n in 2..=cfg.max_arity.min(MAX_ARITY) {
        reports.push(check_magical_vs_cones(n));
    }
    for n in 2..=cfg.max_arity.min(5) {
        reports.push(check_magical_vs_lower_faces(n));
    }
    reports.push(check_sections(cfg.max_arity, cfg.samples, cfg.seed));
    reports.push(check_subdivision(cfg.max_arity));
    reports.push(check_classics(cfg.samples.min(200), cfg.seed));
    reports.push(check_aw_cells());
    reports.push(check_operad_cellular(cfg.max_arity.min(6)));
    reports.push(check_operad_vertices(cfg.max_arity.min(6)));
    reports.push(check_operad_diagonal_compat(cfg.max_arity.min(5)));
    reports.push(check_transition_bound(cfg.depth, (cfg.samples / 10).max(3), cfg.seed));
    reports.push(check_orientation_independence(cfg.max_arity, (cfg.samples / 5).max(5), cfg.seed));
    reports.push(check_weight_independence(cfg.max_arity, 10, cfg.seed));
    reports.push(check_face_restriction(cfg.max_arity, cfg.seed));
    reports.push(check_product_cells_experimental());
    reports
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_battery_passes() {
        let cfg = VerifyConfig { max_arity: 4, samples: 20, seed: 7, depth: 4 };
        let reports = run_all(&cfg);
        for r in &reports {
            assert!(r.status, "{}", r.line());
        }
        // canonical order regardless of effort: names appear in fixed sequence
        let names: Vec<&str> = reports.iter().map(|r| r.check.as_str()).collect();
        let magical_at = names.iter().position(|&n| n == "magical_vs_cones").unwrap();
        assert_eq!(names[0], "tree_counts");
        assert!(names[magical_at..].starts_with(&[
            "magical_vs_cones",
            "magical_vs_cones",
            "magical_vs_cones"
        ]));
        assert_eq!(*names.last().unwrap(), "product_cells_experimental");
    }

    #[test]
    fn report_lines_render() {
        let r = check_magical_vs_cones(4);
        assert!(r.status);
        assert!(r.line().contains("6 = 6 pairs"));
        assert!(r.line().contains("OK"));
        let j = r.to_json();
        assert_eq!(j["status"], "OK");
        assert_eq!(j["arity"], 4);
    }
}
