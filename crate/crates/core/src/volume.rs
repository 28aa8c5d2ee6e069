//! Exact volumes of polytopes by recursive boundary triangulation: pick an
//! apex vertex, triangulate every facet not containing it, and cone. The
//! determinant sum is computed in the coordinates the caller supplies, so
//! volumes of cells of a common subdivision are comparable as long as they
//! are measured in a single shared chart.

use crate::dd::facet_recovery;
use crate::linalg::{affine_dimension, QMatrix};
use crate::polytope::{AffineChart, GeomError, VPolytope};
use crate::rat::{qi, Q, QPoint};
use num_traits::{Signed, Zero};

/// Triangulate the convex hull of a full-dimensional point set in `R^d`.
/// Returns simplices as index tuples (d+1 indices each) into `points`.
pub fn triangulate_full_dim(points: &[QPoint]) -> Result<Vec<Vec<usize>>, GeomError> {
    let d = points.first().ok_or(GeomError::EmptyPointSet)?.dim();
    if affine_dimension(points) != Some(d) {
        return Err(GeomError::NotFullDimensional);
    }
    if d == 0 {
        return Ok(vec![vec![0]]);
    }
    // apex: the lexicographically smallest point is always extremal
    let apex = (0..points.len())
        .min_by(|&a, &b| points[a].cmp(&points[b]))
        .unwrap();
    let h = facet_recovery(&VPolytope::new(d, points.to_vec()))?;
    let mut simplices = Vec::new();
    for facet in &h.inequalities {
        if facet.active_at(&points[apex]) {
            continue;
        }
        let tight: Vec<usize> = (0..points.len())
            .filter(|&i| facet.active_at(&points[i]))
            .collect();
        let facet_points: Vec<QPoint> = tight.iter().map(|&i| points[i].clone()).collect();
        let chart = AffineChart::from_points(&facet_points)?;
        let local: Vec<QPoint> = facet_points.iter().map(|p| chart.project(p)).collect();
        for simplex in triangulate_full_dim(&local)? {
            let mut s: Vec<usize> = simplex.into_iter().map(|i| tight[i]).collect();
            s.push(apex);
            simplices.push(s);
        }
    }
    Ok(simplices)
}

/// Exact d-volume of the convex hull of a full-dimensional point set in `R^d`.
pub fn volume_full_dim(points: &[QPoint]) -> Result<Q, GeomError> {
    let d = points.first().ok_or(GeomError::EmptyPointSet)?.dim();
    if d == 0 {
        return Ok(qi(1));
    }
    let simplices = triangulate_full_dim(points)?;
    let mut factorial = qi(1);
    for k in 1..=d {
        factorial *= qi(k as i64);
    }
    let mut total = Q::zero();
    for s in simplices {
        let base = &points[s[d]];
        let rows: Vec<_> = (0..d).map(|i| points[s[i]].sub(base)).collect();
        total += QMatrix::from_rows(&rows).det().abs();
    }
    Ok(total / factorial)
}

/// Volume of a polytope given by ambient points, measured in the given
/// chart. All points must lie on the chart and span its full dimension.
pub fn volume_in_chart(chart: &AffineChart, points: &[QPoint]) -> Result<Q, GeomError> {
    let projected: Vec<QPoint> = points.iter().map(|p| chart.project(p)).collect();
    volume_full_dim(&projected)
}

/// Dimension of the convex hull of ambient points (affine-hull rank).
pub fn hull_dimension(points: &[QPoint]) -> Result<usize, GeomError> {
    affine_dimension(points).ok_or(GeomError::EmptyPointSet)
}
