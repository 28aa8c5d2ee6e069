//! Vertex enumeration and facet recovery by the double description method,
//! with a brute-force enumerator kept as an independent test oracle.
//!
//! The core routine enumerates the extreme rays of a pointed cone by
//! incremental constraint insertion. Polytopes are handled by first
//! projecting explicit equalities to an affine-hull chart and then
//! homogenizing; facet recovery runs vertex enumeration on a polar dual.

use crate::linalg::QMatrix;
use crate::lp;
use crate::polytope::{AffineChart, GeomError, HPolytope, Halfspace, Hyperplane, VPolytope};
use crate::rat::{Q, QPoint, QVector};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet { words: vec![0; n.div_ceil(64)] }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn intersect(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn is_subset_of(&self, other: &BitSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }
}

struct Ray {
    v: QVector,
    tight: BitSet,
}

/// Scale a rational vector by a positive factor so its entries become
/// coprime integers. Rays are directions, so positive scaling is free.
fn normalize_ray(v: &QVector) -> QVector {
    let mut lcm = BigInt::one();
    for x in &v.0 {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.0.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut gcd = BigInt::zero();
    for n in &ints {
        gcd = gcd.gcd(n);
    }
    if gcd.is_zero() {
        return QVector::zeros(v.dim());
    }
    QVector(ints.iter().map(|n| Q::from_integer(n / &gcd)).collect())
}

/// Extreme rays of the pointed cone `{x : ⟨e,x⟩ = 0, ⟨a,x⟩ >= 0}`.
/// Errors when the constraint normals do not span, i.e. the cone contains a
/// line.
pub fn extreme_rays(
    dim: usize,
    equalities: &[QVector],
    normals: &[QVector],
) -> Result<Vec<QVector>, GeomError> {
    if dim == 0 {
        return Ok(Vec::new());
    }
    let mut rows: Vec<QVector> = Vec::with_capacity(2 * equalities.len() + normals.len());
    for e in equalities {
        rows.push(e.clone());
        rows.push(e.neg());
    }
    rows.extend(normals.iter().cloned());

    // greedy full-rank subset for the initial simplicial cone
    let mut init: Vec<usize> = Vec::new();
    let mut rank = 0;
    for (i, row) in rows.iter().enumerate() {
        let mut test: Vec<QVector> = init.iter().map(|&k| rows[k].clone()).collect();
        test.push(row.clone());
        if QMatrix::from_rows(&test).rank() > rank {
            init.push(i);
            rank += 1;
            if rank == dim {
                break;
            }
        }
    }
    if rank < dim {
        return Err(GeomError::Invalid(
            "cone has nontrivial lineality".to_string(),
        ));
    }

    let b = QMatrix::from_rows(&init.iter().map(|&k| rows[k].clone()).collect::<Vec<_>>());
    let inv = b.inverse().expect("initial basis is full rank");
    let m = rows.len();
    let mut rays: Vec<Ray> = (0..dim)
        .map(|j| {
            let col = QVector((0..dim).map(|i| inv[(i, j)].clone()).collect());
            let v = normalize_ray(&col);
            let mut tight = BitSet::new(m);
            for &k in &init {
                if rows[k].dot(&v).is_zero() {
                    tight.set(k);
                }
            }
            Ray { v, tight }
        })
        .collect();

    for (j, a) in rows.iter().enumerate() {
        if init.contains(&j) {
            continue;
        }
        let vals: Vec<Q> = rays.iter().map(|r| a.dot(&r.v)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            for (r, val) in rays.iter_mut().zip(vals.iter()) {
                if val.is_zero() {
                    r.tight.set(j);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let zero: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_zero()).collect();

        let mut next: Vec<Ray> = Vec::new();
        for &p in pos.iter() {
            for &n in neg.iter() {
                let t = rays[p].tight.intersect(&rays[n].tight);
                // adjacency: no third ray is tight on everything both share
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == p || k == n || !t.is_subset_of(&r.tight));
                if !adjacent {
                    continue;
                }
                let combo = rays[n].v.scale(&vals[p]).sub(&rays[p].v.scale(&vals[n]));
                let v = normalize_ray(&combo);
                let mut tight = t;
                tight.set(j);
                next.push(Ray { v, tight });
            }
        }
        let mut kept: Vec<Ray> = Vec::new();
        for (i, r) in rays.into_iter().enumerate() {
            if vals[i].is_positive() {
                kept.push(r);
            } else if zero.contains(&i) {
                let mut r = r;
                r.tight.set(j);
                kept.push(r);
            }
        }
        kept.extend(next);
        rays = kept;
        if rays.is_empty() {
            break;
        }
    }

    let mut out: Vec<QVector> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    Ok(out)
}

/// Project the inequalities of `h` onto the affine-hull chart of its
/// equalities. `None` in the result marks a zero-normal (trivial or
/// infeasible) constraint, already checked.
fn project_inequalities(
    h: &HPolytope,
    chart: &AffineChart,
) -> Result<Vec<(QVector, Q)>, GeomError> {
    let mut out = Vec::new();
    for ineq in &h.inequalities {
        let (a, c) = chart.pull_back(&ineq.normal);
        let b = &ineq.rhs - &c;
        if a.is_zero() {
            if b.is_positive() {
                return Err(GeomError::Infeasible);
            }
            continue;
        }
        out.push((a, b));
    }
    Ok(out)
}

/// Exact vertex enumeration of a bounded H-polytope, by double description
/// on the homogenization of the chart-projected system.
pub fn vertex_enumeration(h: &HPolytope) -> Result<VPolytope, GeomError> {
    let chart = AffineChart::from_equalities(h.dim, &h.equalities)
        .ok_or(GeomError::Infeasible)?;
    let projected = project_inequalities(h, &chart)?;
    let d = chart.dim;
    if d == 0 {
        return Ok(VPolytope::new(h.dim, vec![chart.origin().clone()]));
    }
    // homogenize: (u, t) with ⟨a,u⟩ - b t >= 0 and t >= 0
    let mut rows: Vec<QVector> = Vec::with_capacity(projected.len() + 1);
    let mut t_row = QVector::zeros(d + 1);
    t_row.0[d] = Q::one();
    rows.push(t_row);
    for (a, b) in &projected {
        let mut row = QVector::zeros(d + 1);
        row.0[..d].clone_from_slice(&a.0);
        row.0[d] = -b.clone();
        rows.push(row);
    }
    let rays = match extreme_rays(d + 1, &[], &rows) {
        Ok(r) => r,
        Err(GeomError::Invalid(_)) => {
            return Err(if lp::is_feasible(h) {
                GeomError::Unbounded
            } else {
                GeomError::Infeasible
            });
        }
        Err(e) => return Err(e),
    };
    let mut vertices = Vec::new();
    let mut recession = false;
    for r in &rays {
        let t = &r.0[d];
        if t.is_zero() {
            recession = true;
        } else {
            let u = QVector(r.0[..d].iter().map(|x| x / t).collect());
            vertices.push(chart.embed(&u));
        }
    }
    if vertices.is_empty() {
        return Err(GeomError::Infeasible);
    }
    if recession {
        return Err(GeomError::Unbounded);
    }
    vertices.sort();
    Ok(VPolytope::new(h.dim, vertices))
}

/// Brute-force vertex enumeration over all chart-dimension-sized subsets of
/// tight constraints. Exponential but unarguably correct; the test oracle
/// for [`vertex_enumeration`]. Only meaningful on bounded inputs.
pub fn vertex_enumeration_brute_force(h: &HPolytope) -> Result<VPolytope, GeomError> {
    let chart = AffineChart::from_equalities(h.dim, &h.equalities)
        .ok_or(GeomError::Infeasible)?;
    let projected = project_inequalities(h, &chart)?;
    let d = chart.dim;
    if d == 0 {
        return Ok(VPolytope::new(h.dim, vec![chart.origin().clone()]));
    }
    let m = projected.len();
    if m < d {
        return Err(GeomError::Unbounded);
    }
    let mut vertices: Vec<QPoint> = Vec::new();
    let mut subset: Vec<usize> = (0..d).collect();
    loop {
        let mat = QMatrix::from_rows(
            &subset.iter().map(|&i| projected[i].0.clone()).collect::<Vec<_>>(),
        );
        if let Some(inv) = mat.inverse() {
            let b: Vec<Q> = subset.iter().map(|&i| projected[i].1.clone()).collect();
            let u = QVector(
                (0..d)
                    .map(|i| {
                        (0..d)
                            .map(|k| &inv[(i, k)] * &b[k])
                            .fold(Q::zero(), |acc, x| acc + x)
                    })
                    .collect(),
            );
            if projected.iter().all(|(a, bb)| a.dot(&u) >= *bb) {
                let x = chart.embed(&u);
                if !vertices.contains(&x) {
                    vertices.push(x);
                }
            }
        }
        // next d-subset of 0..m
        let mut i = d;
        loop {
            if i == 0 {
                vertices.sort();
                if vertices.is_empty() {
                    return Err(GeomError::Infeasible);
                }
                return Ok(VPolytope::new(h.dim, vertices));
            }
            i -= 1;
            if subset[i] != i + m - d {
                subset[i] += 1;
                for k in (i + 1)..d {
                    subset[k] = subset[k - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Scale an inequality by a positive rational so the normal has coprime
/// integer entries.
fn normalize_halfspace(normal: &QVector, rhs: &Q) -> (QVector, Q) {
    let mut lcm = BigInt::one();
    for x in normal.0.iter().chain(std::iter::once(rhs)) {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = normal.0.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut gcd = BigInt::zero();
    for n in &ints {
        gcd = gcd.gcd(n);
    }
    if gcd.is_zero() {
        gcd = BigInt::one();
    }
    let scale = Q::new(lcm, gcd);
    (
        QVector(normal.0.iter().map(|x| x * &scale).collect()),
        rhs * &scale,
    )
}

/// Irredundant halfspace representation of the convex hull of a point set,
/// including the affine-hull equalities. The input need not be extremal;
/// redundant interior points are harmless.
pub fn facet_recovery(v: &VPolytope) -> Result<HPolytope, GeomError> {
    if v.vertices.is_empty() {
        return Err(GeomError::EmptyPointSet);
    }
    let chart = AffineChart::from_points(&v.vertices)?;
    let d = chart.dim;
    let mut out = HPolytope::new(v.dim);

    // affine-hull equalities: normals orthogonal to every chart basis vector
    if d == 0 {
        for j in 0..v.dim {
            let mut e = QVector::zeros(v.dim);
            e.0[j] = Q::one();
            let rhs = chart.origin().0[j].clone();
            out.equalities.push(Hyperplane::new(e, rhs));
        }
        return Ok(out);
    }
    if d < v.dim {
        let basis_rows: Vec<QVector> = (0..d)
            .map(|i| {
                // reconstruct basis vectors as embed(e_i) - origin
                let mut e = QVector::zeros(d);
                e.0[i] = Q::one();
                chart.embed(&e).sub(chart.origin())
            })
            .collect();
        let mat = QMatrix::from_rows(&basis_rows);
        let zeros = vec![Q::zero(); d];
        let sol = crate::linalg::solve_affine(&mat, &zeros).expect("homogeneous system");
        for y in sol.kernel_basis {
            let rhs = y.dot(chart.origin());
            let (n, r) = normalize_halfspace(&y, &rhs);
            out.equalities.push(Hyperplane::new(n, r));
        }
    }

    // facets of the full-dimensional projection via the polar dual
    let us: Vec<QVector> = v.vertices.iter().map(|p| chart.project(p)).collect();
    let count = crate::rat::qi(us.len() as i64);
    let mut centroid = QVector::zeros(d);
    for u in &us {
        centroid = centroid.add(u);
    }
    centroid = centroid.scale(&count.recip());
    let mut polar = HPolytope::new(d);
    for u in &us {
        let w = u.sub(&centroid);
        polar
            .inequalities
            .push(Halfspace::new(w.neg(), crate::rat::qi(-1)));
    }
    let polar_vertices = vertex_enumeration(&polar)?;
    for y in &polar_vertices.vertices {
        // ⟨y, u - centroid⟩ <= 1 for all chart points u
        let a = y.neg();
        let b = crate::rat::qi(-1) - y.dot(&centroid);
        let big_a = chart.push_forward(&a);
        let big_b = b + big_a.dot(chart.origin());
        let (n, r) = normalize_halfspace(&big_a, &big_b);
        out.inequalities.push(Halfspace::new(n, r));
    }
    out.inequalities.sort_by(|x, y| {
        x.normal.cmp(&y.normal).then_with(|| x.rhs.cmp(&y.rhs))
    });
    Ok(out)
}

/// The extremal points of a point set: vertex set of its convex hull.
pub fn extremal_points(dim: usize, points: &[QPoint]) -> Result<VPolytope, GeomError> {
    if points.is_empty() {
        return Err(GeomError::EmptyPointSet);
    }
    let h = facet_recovery(&VPolytope::new(dim, points.to_vec()))?;
    vertex_enumeration(&h)
}

/// Order the vertices of a convex polygon (given in a 2-dimensional chart)
/// counterclockwise around their centroid, with exact sign predicates only.
fn polygon_cycle(points: &[QPoint]) -> Vec<usize> {
    use std::cmp::Ordering;
    let n = points.len();
    let count = crate::rat::qi(n as i64);
    let mut cx = Q::zero();
    let mut cy = Q::zero();
    for p in points {
        cx += &p.0[0];
        cy += &p.0[1];
    }
    cx /= &count;
    cy /= &count;
    let half = |dx: &Q, dy: &Q| -> u8 {
        // 0 for the upper half plane (incl. positive x-axis), 1 for the lower
        if dy.is_positive() || (dy.is_zero() && dx.is_positive()) {
            0
        } else {
            1
        }
    };
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| {
        let (ax, ay) = (&points[a].0[0] - &cx, &points[a].0[1] - &cy);
        let (bx, by) = (&points[b].0[0] - &cx, &points[b].0[1] - &cy);
        match half(&ax, &ay).cmp(&half(&bx, &by)) {
            Ordering::Equal => {
                let cross = &ax * &by - &ay * &bx;
                // counterclockwise: positive cross means a precedes b
                if cross.is_positive() {
                    Ordering::Less
                } else if cross.is_negative() {
                    Ordering::Greater
                } else {
                    Ordering::Equal
                }
            }
            other => other,
        }
    });
    idx
}

/// Vertex cycles of the 2-dimensional faces, for OFF export: the polygon
/// itself when the polytope is 2-dimensional, its facet polygons when
/// 3-dimensional, nothing otherwise.
pub fn facet_cycles(v: &VPolytope, h: &HPolytope) -> Result<Vec<Vec<usize>>, GeomError> {
    let chart = AffineChart::from_points(&v.vertices)?;
    match chart.dim {
        2 => {
            let local: Vec<QPoint> = v.vertices.iter().map(|p| chart.project(p)).collect();
            Ok(vec![polygon_cycle(&local)])
        }
        3 => {
            let mut cycles = Vec::new();
            for facet in &h.inequalities {
                let tight: Vec<usize> = (0..v.vertices.len())
                    .filter(|&i| facet.active_at(&v.vertices[i]))
                    .collect();
                if tight.len() < 3 {
                    continue;
                }
                let pts: Vec<QPoint> = tight.iter().map(|&i| v.vertices[i].clone()).collect();
                let fchart = AffineChart::from_points(&pts)?;
                if fchart.dim != 2 {
                    continue;
                }
                let local: Vec<QPoint> = pts.iter().map(|p| fchart.project(p)).collect();
                let cycle = polygon_cycle(&local);
                cycles.push(cycle.into_iter().map(|k| tight[k]).collect());
            }
            Ok(cycles)
        }
        _ => Ok(Vec::new()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{qi, qr};
    use proptest::prelude::*;

    fn halfspace(ints: &[i64], rhs: i64) -> Halfspace {
        Halfspace::new(QVector::from_ints(ints), qi(rhs))
    }

    fn unit_square() -> HPolytope {
        let mut h = HPolytope::new(2);
        h.inequalities.push(halfspace(&[1, 0], 0));
        h.inequalities.push(halfspace(&[0, 1], 0));
        h.inequalities.push(halfspace(&[-1, 0], -1));
        h.inequalities.push(halfspace(&[0, -1], -1));
        h
    }

    #[test]
    fn square_vertices() {
        let v = vertex_enumeration(&unit_square()).unwrap();
        let expect: Vec<QVector> = [[0, 0], [0, 1], [1, 0], [1, 1]]
            .iter()
            .map(|c| QVector::from_ints(c))
            .collect();
        assert_eq!(v.vertices, expect);
    }

    #[test]
    fn interval_in_hyperplane() {
        // x1 + x2 = 3, x1 >= 1, x2 >= 1: the 1-dimensional associahedron slice
        let mut h = HPolytope::new(2);
        h.equalities.push(Hyperplane::new(QVector::from_ints(&[1, 1]), qi(3)));
        h.inequalities.push(halfspace(&[1, 0], 1));
        h.inequalities.push(halfspace(&[0, 1], 1));
        let v = vertex_enumeration(&h).unwrap();
        assert_eq!(
            v.vertices,
            vec![QVector::from_ints(&[1, 2]), QVector::from_ints(&[2, 1])]
        );
    }

    #[test]
    fn standard_simplex_from_halfspaces() {
        for d in 1..=5usize {
            // conv{0, e_1, ..., e_d}: x_i >= 0, sum x_i <= 1
            let mut h = HPolytope::new(d);
            for i in 0..d {
                let mut n = vec![0i64; d];
                n[i] = 1;
                h.inequalities.push(halfspace(&n, 0));
            }
            h.inequalities.push(Halfspace::new(
                QVector::from_ints(&vec![-1i64; d]),
                qi(-1),
            ));
            let v = vertex_enumeration(&h).unwrap();
            assert_eq!(v.vertices.len(), d + 1, "d={d}");
        }
    }

    #[test]
    fn infeasible_and_unbounded_are_distinct() {
        let mut h = unit_square();
        h.inequalities.push(halfspace(&[1, 0], 2));
        assert_eq!(vertex_enumeration(&h), Err(GeomError::Infeasible));

        let mut open = HPolytope::new(2);
        open.inequalities.push(halfspace(&[1, 0], 0));
        open.inequalities.push(halfspace(&[0, 1], 0));
        assert_eq!(vertex_enumeration(&open), Err(GeomError::Unbounded));

        // lineality: a slab is unbounded
        let mut slab = HPolytope::new(2);
        slab.inequalities.push(halfspace(&[1, 0], 0));
        slab.inequalities.push(halfspace(&[-1, 0], -1));
        assert_eq!(vertex_enumeration(&slab), Err(GeomError::Unbounded));

        // contradictory equalities
        let mut bad = HPolytope::new(1);
        bad.equalities.push(Hyperplane::new(QVector::from_ints(&[1]), qi(0)));
        bad.equalities.push(Hyperplane::new(QVector::from_ints(&[1]), qi(1)));
        assert_eq!(vertex_enumeration(&bad), Err(GeomError::Infeasible));
    }

    #[test]
    fn zero_dimensional_cases() {
        // single point cut out by equalities only
        let mut h = HPolytope::new(2);
        h.equalities.push(Hyperplane::new(QVector::from_ints(&[1, 0]), qi(5)));
        h.equalities.push(Hyperplane::new(QVector::from_ints(&[0, 1]), qi(-2)));
        let v = vertex_enumeration(&h).unwrap();
        assert_eq!(v.vertices, vec![QVector::from_ints(&[5, -2])]);

        // ambient dimension zero
        let h0 = HPolytope::new(0);
        let v0 = vertex_enumeration(&h0).unwrap();
        assert_eq!(v0.vertices, vec![QVector(vec![])]);
    }

    #[test]
    fn segment_facets() {
        let v = VPolytope::new(1, vec![QVector::from_ints(&[0]), QVector::from_ints(&[1])]);
        let h = facet_recovery(&v).unwrap();
        assert!(h.equalities.is_empty());
        assert_eq!(h.inequalities.len(), 2);
        assert!(h.contains(&QVector(vec![qr(1, 2)])));
        assert!(!h.contains(&QVector(vec![qr(3, 2)])));
    }

    #[test]
    fn facet_recovery_includes_hull_equalities() {
        // triangle in the plane x+y+z=1
        let v = VPolytope::new(
            3,
            vec![
                QVector::from_ints(&[1, 0, 0]),
                QVector::from_ints(&[0, 1, 0]),
                QVector::from_ints(&[0, 0, 1]),
            ],
        );
        let h = facet_recovery(&v).unwrap();
        assert_eq!(h.equalities.len(), 1);
        assert_eq!(h.inequalities.len(), 3);
        let back = vertex_enumeration(&h).unwrap();
        assert!(back.same_vertex_set(&v));
    }

    #[test]
    fn recovery_tolerates_non_extremal_points() {
        let v = VPolytope::new(
            2,
            vec![
                QVector::from_ints(&[0, 0]),
                QVector::from_ints(&[2, 0]),
                QVector::from_ints(&[0, 2]),
                QVector::from_ints(&[2, 2]),
                QVector(vec![qi(1), qi(1)]), // interior
                QVector(vec![qi(1), qi(0)]), // edge midpoint
            ],
        );
        let h = facet_recovery(&v).unwrap();
        assert_eq!(h.inequalities.len(), 4);
        let ext = extremal_points(2, &v.vertices).unwrap();
        assert_eq!(ext.vertices.len(), 4);
    }

    /// Heavier randomized differential test, including equality constraints;
    /// run on demand with `cargo test -- --ignored`.
    #[test]
    #[ignore]
    fn stress_dd_vs_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xDD);
        for case in 0..1500 {
            let dim = rng.gen_range(1..=4usize);
            let mut h = HPolytope::new(dim);
            for i in 0..dim {
                let mut lo = vec![0i64; dim];
                lo[i] = 1;
                h.inequalities.push(halfspace(&lo, -3));
                let mut hi = vec![0i64; dim];
                hi[i] = -1;
                h.inequalities.push(halfspace(&hi, -3));
            }
            for _ in 0..rng.gen_range(0..6) {
                let n: Vec<i64> = (0..dim).map(|_| rng.gen_range(-3..=3)).collect();
                if n.iter().all(|&x| x == 0) {
                    continue;
                }
                h.inequalities.push(halfspace(&n, rng.gen_range(-8..=4)));
            }
            if dim >= 2 && rng.gen_bool(0.4) {
                let n: Vec<i64> = (0..dim).map(|_| rng.gen_range(-2..=2)).collect();
                if n.iter().any(|&x| x != 0) {
                    h.equalities.push(Hyperplane::new(
                        QVector::from_ints(&n),
                        qi(rng.gen_range(-2..=2)),
                    ));
                }
            }
            match (vertex_enumeration(&h), vertex_enumeration_brute_force(&h)) {
                (Ok(a), Ok(b)) => {
                    assert!(a.same_vertex_set(&b), "case {case}: {h:?}")
                }
                (Err(GeomError::Infeasible), Err(GeomError::Infeasible)) => {}
                (a, b) => panic!("case {case}: disagreement {a:?} vs {b:?} on {h:?}"),
            }
        }
    }

    #[test]
    fn round_trip_in_dimension_five() {
        // cross-polytope conv{±e_i}: 10 vertices, 32 facets
        let d = 5;
        let mut pts = Vec::new();
        for i in 0..d {
            let mut p = QVector::zeros(d);
            p.0[i] = qi(1);
            pts.push(p.clone());
            p.0[i] = qi(-1);
            pts.push(p);
        }
        let v = VPolytope::new(d, pts);
        let h = facet_recovery(&v).unwrap();
        assert_eq!(h.inequalities.len(), 32);
        let back = vertex_enumeration(&h).unwrap();
        assert!(back.same_vertex_set(&v));
    }

    #[test]
    fn reflect_at_vertex_level() {
        // vertices of 2z - P are exactly {2z - v : v vertex of P}
        let h = unit_square();
        let z = QVector(vec![qr(1, 3), qr(5, 7)]);
        let reflected = vertex_enumeration(&h.reflect(&z).unwrap()).unwrap();
        let mut expect: Vec<QPoint> = vertex_enumeration(&h)
            .unwrap()
            .vertices
            .iter()
            .map(|v| z.scale(&qi(2)).sub(v))
            .collect();
        expect.sort();
        assert_eq!(reflected.vertices, expect);
    }

    #[test]
    fn argmin_matches_enumeration_scan() {
        // LP argmin equals the brute-force scan over enumerated vertices
        let k4 = crate::loday::LodayRealization::build(
            crate::loday::Weight::standard(4),
            None,
        )
        .unwrap();
        for c in [
            QVector::from_ints(&[2, 1, 0]),
            QVector::from_ints(&[5, 2, 1]),
            QVector::from_ints(&[-1, -3, -7]),
        ] {
            let via_lp = crate::lp::argmin_vertex(&k4.halfspaces, &c).unwrap();
            let verts = vertex_enumeration(&k4.halfspaces).unwrap();
            let via_scan = verts
                .vertices
                .iter()
                .min_by(|a, b| c.dot(a).cmp(&c.dot(b)))
                .unwrap();
            assert_eq!(&via_lp, via_scan, "c={c}");
        }
        // a strictly decreasing objective is minimized at the Tamari bottom
        let lo = crate::lp::argmin_vertex(&k4.halfspaces, &QVector::from_ints(&[2, 1, 0])).unwrap();
        assert_eq!(
            lo,
            crate::loday::loday_point(
                &crate::trees::left_comb(4),
                &crate::loday::Weight::standard(4)
            )
            .unwrap()
        );
    }

    #[test]
    fn intersection_with_reflection_is_centrally_symmetric() {
        // K_4 ∩ ρ_z K_4 at an interior z: reflecting the enumerated vertex
        // set through z reproduces it
        let k4 = crate::loday::LodayRealization::build(
            crate::loday::Weight::standard(4),
            None,
        )
        .unwrap();
        let z = QVector(vec![qi(2), qi(2), qi(2)]);
        let inter = k4.halfspaces.intersect(&k4.halfspaces.reflect(&z).unwrap()).unwrap();
        let verts = vertex_enumeration(&inter).unwrap();
        assert!(verts.vertices.len() >= 3, "nonempty polygon");
        let mut reflected: Vec<QPoint> =
            verts.vertices.iter().map(|v| z.scale(&qi(2)).sub(v)).collect();
        reflected.sort();
        assert_eq!(verts.vertices, reflected);
    }

    #[test]
    fn polygon_and_facet_cycles() {
        // pentagon K_4 is one polygon with all 5 vertices
        let k4 = crate::loday::LodayRealization::build(
            crate::loday::Weight::standard(4),
            None,
        )
        .unwrap();
        let cycles = facet_cycles(&k4.vertices, &k4.halfspaces).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 5);
        // consecutive cycle vertices share an edge: their midpoint has
        // exactly one facet active
        let cyc = &cycles[0];
        for w in 0..cyc.len() {
            let a = &k4.vertices.vertices[cyc[w]];
            let b = &k4.vertices.vertices[cyc[(w + 1) % cyc.len()]];
            let mid = a.midpoint(b);
            assert_eq!(k4.halfspaces.active_set(&mid).len(), 1);
        }
        // the 3-dimensional associahedron: 9 facet polygons
        let k5 = crate::loday::LodayRealization::build(
            crate::loday::Weight::standard(5),
            None,
        )
        .unwrap();
        let cycles = facet_cycles(&k5.vertices, &k5.halfspaces).unwrap();
        assert_eq!(cycles.len(), 9);
        let total: usize = cycles.iter().map(|c| c.len()).sum();
        // every facet boundary edge is shared by two facets:
        // Σ facet sizes = 2 · #edges = 2 · 21 (21 covers among 14 trees)
        assert_eq!(total, 42);
    }

    #[test]
    fn brute_force_agrees_on_fixed_examples() {
        for h in [unit_square(), {
            let mut h = HPolytope::new(3);
            for i in 0..3 {
                let mut n = vec![0i64; 3];
                n[i] = 1;
                h.inequalities.push(halfspace(&n, 0));
            }
            h.inequalities.push(Halfspace::new(QVector::from_ints(&[-1, -1, -1]), qi(-2)));
            h.inequalities.push(Halfspace::new(QVector::from_ints(&[-1, 0, 0]), qi(-1)));
            h
        }] {
            let a = vertex_enumeration(&h).unwrap();
            let b = vertex_enumeration_brute_force(&h).unwrap();
            assert!(a.same_vertex_set(&b));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// facet_recovery then vertex_enumeration returns exactly the
        /// extremal subset of random integer point clouds.
        #[test]
        fn hull_round_trip(dim in 1usize..=3, n_pts in 1usize..=8,
                           coords in proptest::collection::vec(-4i64..=4, 24)) {
            let points: Vec<QPoint> = (0..n_pts)
                .map(|i| QVector::from_ints(&coords[i * dim..(i + 1) * dim]))
                .collect();
            let ext = extremal_points(dim, &points).unwrap();
            // every extremal point is one of the inputs
            for p in &ext.vertices {
                prop_assert!(points.contains(p));
            }
            // all inputs lie in the recovered hull
            let h = facet_recovery(&VPolytope::new(dim, points.clone())).unwrap();
            for p in &points {
                prop_assert!(h.contains(p));
            }
            // idempotent: the extremal subset recovers itself
            let again = extremal_points(dim, &ext.vertices).unwrap();
            prop_assert!(again.same_vertex_set(&ext));
        }

        /// double description agrees with brute force on random bounded
        /// H-polytopes (a box plus random cutting halfspaces).
        #[test]
        fn dd_matches_brute_force(dim in 1usize..=3,
                                  cuts in proptest::collection::vec((-3i64..=3, -3i64..=3, -3i64..=3, -6i64..=6), 0..5)) {
            let mut h = HPolytope::new(dim);
            for i in 0..dim {
                let mut lo = vec![0i64; dim];
                lo[i] = 1;
                h.inequalities.push(halfspace(&lo, -2));
                let mut hi = vec![0i64; dim];
                hi[i] = -1;
                h.inequalities.push(halfspace(&hi, -2));
            }
            for (a, b, c, r) in cuts {
                let n = [a, b, c];
                if n[..dim].iter().all(|&x| x == 0) {
                    continue;
                }
                h.inequalities.push(halfspace(&n[..dim], r));
            }
            match (vertex_enumeration(&h), vertex_enumeration_brute_force(&h)) {
                (Ok(a), Ok(b)) => prop_assert!(a.same_vertex_set(&b)),
                (Err(GeomError::Infeasible), Err(GeomError::Infeasible)) => {}
                (a, b) => prop_assert!(false, "disagreement: {a:?} vs {b:?}"),
            }
        }

        /// LP argmin agrees with the brute-force scan over enumerated
        /// vertices on random bounded polytopes, and both surface the same
        /// non-uniqueness.
        #[test]
        fn argmin_matches_scan_on_random_polytopes(
            dim in 1usize..=3,
            cuts in proptest::collection::vec((-3i64..=3, -3i64..=3, -3i64..=3, -6i64..=0), 0..4),
            c in proptest::collection::vec(-4i64..=4, 3),
        ) {
            let mut h = HPolytope::new(dim);
            for i in 0..dim {
                let mut lo = vec![0i64; dim];
                lo[i] = 1;
                h.inequalities.push(halfspace(&lo, -2));
                let mut hi = vec![0i64; dim];
                hi[i] = -1;
                h.inequalities.push(halfspace(&hi, -2));
            }
            for (a, b, cc, r) in cuts {
                let n = [a, b, cc];
                if n[..dim].iter().all(|&x| x == 0) {
                    continue;
                }
                h.inequalities.push(halfspace(&n[..dim], r));
            }
            let objective = QVector::from_ints(&c[..dim]);
            match vertex_enumeration(&h) {
                Ok(v) => {
                    let vals: Vec<Q> = v.vertices.iter().map(|p| objective.dot(p)).collect();
                    let min = vals.iter().min().unwrap();
                    let ties = vals.iter().filter(|x| *x == min).count();
                    match crate::lp::argmin_vertex(&h, &objective) {
                        Ok(point) => {
                            prop_assert_eq!(ties, 1);
                            prop_assert_eq!(&objective.dot(&point), min);
                            prop_assert!(v.vertices.contains(&point));
                        }
                        Err(GeomError::NonUniqueOptimum) => prop_assert!(ties > 1),
                        Err(e) => prop_assert!(false, "unexpected error {e:?}"),
                    }
                }
                Err(GeomError::Infeasible) => {
                    prop_assert_eq!(
                        crate::lp::argmin_vertex(&h, &objective),
                        Err(GeomError::Infeasible)
                    );
                }
                Err(e) => prop_assert!(false, "unexpected enumeration error {e:?}"),
            }
        }

        /// vertex_enumeration(facet_recovery(V)) = V for honest vertex sets.
        #[test]
        fn recovery_round_trip_on_hulls(dim in 1usize..=3,
                                        coords in proptest::collection::vec(-5i64..=5, 30)) {
            let n_pts = coords.len() / dim;
            let points: Vec<QPoint> = (0..n_pts)
                .map(|i| QVector::from_ints(&coords[i * dim..(i + 1) * dim]))
                .collect();
            let ext = extremal_points(dim, &points).unwrap();
            let h = facet_recovery(&ext).unwrap();
            let back = vertex_enumeration(&h).unwrap();
            prop_assert!(back.same_vertex_set(&ext));
        }
    }
}
