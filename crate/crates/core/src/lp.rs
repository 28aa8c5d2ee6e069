//! Exact linear programming over the rationals: a dense two-phase simplex
//! with Bland's rule, plus the argmin-vertex and cone-feasibility queries
//! built on it. Problem sizes here are tiny (tens of variables), so the
//! dense tableau is the right tool.

use crate::polytope::{Cone, ConeRep, GeomError, HPolytope, Halfspace, Hyperplane};
use crate::rat::{qi, Q, QPoint, QVector};
use num_traits::{One, Signed, Zero};

/// Optimal value and an attaining point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Q,
    pub point: QPoint,
}

/// Maximize `⟨objective, x⟩` over the polytope. The point returned is a
/// basic optimal solution (a vertex when the feasible set is pointed).
pub fn maximize(h: &HPolytope, objective: &QVector) -> Result<LpSolution, GeomError> {
    if objective.dim() != h.dim {
        return Err(GeomError::DimensionMismatch(h.dim, objective.dim()));
    }
    let mut lp = StandardLp::from_polytope(h);
    let x = lp.solve(&lp.objective_from_ambient(&objective.neg()))?;
    Ok(LpSolution { value: objective.dot(&x), point: x })
}

pub fn minimize(h: &HPolytope, objective: &QVector) -> Result<LpSolution, GeomError> {
    let sol = maximize(h, &objective.neg())?;
    Ok(LpSolution { value: -sol.value, point: sol.point })
}

/// Phase-one feasibility test.
pub fn is_feasible(h: &HPolytope) -> bool {
    let mut lp = StandardLp::from_polytope(h);
    lp.phase_one().is_ok()
}

/// The unique vertex minimizing `⟨c, x⟩` over a bounded nonempty polytope.
/// Errors with [`GeomError::NonUniqueOptimum`] when the optimal face is not a
/// single point, which is how a non-admissible orientation vector surfaces.
pub fn argmin_vertex(h: &HPolytope, c: &QVector) -> Result<QPoint, GeomError> {
    let sol = minimize(h, c)?;
    // restrict to the optimal face and probe every coordinate for slack
    let mut face = h.clone();
    face.equalities.push(Hyperplane::new(c.clone(), sol.value.clone()));
    for j in 0..h.dim {
        let mut e = QVector::zeros(h.dim);
        e.0[j] = Q::one();
        let hi = maximize(&face, &e)?.value;
        let lo = minimize(&face, &e)?.value;
        if hi != lo {
            return Err(GeomError::NonUniqueOptimum);
        }
    }
    Ok(sol.point)
}

pub fn argmax_vertex(h: &HPolytope, c: &QVector) -> Result<QPoint, GeomError> {
    argmin_vertex(h, &c.neg())
}

/// Does some `w` satisfy `⟨v,w⟩ > 0`, `-w ∈ nf`, `w ∈ ng`?
///
/// This is the improving-direction question behind the normal-cone
/// description of the diagonal: `nf` and `ng` are the tangent cones of the
/// polytope along two faces, and the answer is `false` exactly when the pair
/// of faces meets the image of the diagonal map. Decided by maximizing
/// `⟨v,w⟩` over the cone intersection boxed to `|w_i| <= 1` (cones are
/// scale-invariant, so the box loses nothing).
pub fn cone_feasible(v: &QVector, nf: &Cone, ng: &Cone) -> Result<bool, GeomError> {
    let dim = v.dim();
    if nf.dim != dim || ng.dim != dim {
        return Err(GeomError::DimensionMismatch(nf.dim, ng.dim));
    }
    // variables: w, then generator coefficients for any V-represented cone
    let nf_gens = match &nf.rep {
        ConeRep::Generators(g) => g.len(),
        _ => 0,
    };
    let ng_gens = match &ng.rep {
        ConeRep::Generators(g) => g.len(),
        _ => 0,
    };
    let total = dim + nf_gens + ng_gens;
    let mut sys = HPolytope::new(total);

    let pad = |v: &QVector, offset: usize, total: usize| {
        let mut out = QVector::zeros(total);
        for (j, x) in v.0.iter().enumerate() {
            out.0[offset + j] = x.clone();
        }
        out
    };

    match &nf.rep {
        ConeRep::Halfspaces { equalities, normals } => {
            for e in equalities {
                sys.equalities.push(Hyperplane::new(pad(e, 0, total), Q::zero()));
            }
            for a in normals {
                // ⟨a, -w⟩ >= 0
                sys.inequalities.push(Halfspace::new(pad(&a.neg(), 0, total), Q::zero()));
            }
        }
        ConeRep::Generators(gens) => {
            // -w = Σ λ_i g_i, λ >= 0
            for j in 0..dim {
                let mut row = QVector::zeros(total);
                row.0[j] = Q::one();
                for (i, g) in gens.iter().enumerate() {
                    row.0[dim + i] = g.0[j].clone();
                }
                sys.equalities.push(Hyperplane::new(row, Q::zero()));
            }
            for i in 0..nf_gens {
                let mut row = QVector::zeros(total);
                row.0[dim + i] = Q::one();
                sys.inequalities.push(Halfspace::new(row, Q::zero()));
            }
        }
    }
    match &ng.rep {
        ConeRep::Halfspaces { equalities, normals } => {
            for e in equalities {
                sys.equalities.push(Hyperplane::new(pad(e, 0, total), Q::zero()));
            }
            for a in normals {
                sys.inequalities.push(Halfspace::new(pad(a, 0, total), Q::zero()));
            }
        }
        ConeRep::Generators(gens) => {
            // w = Σ μ_i g_i, μ >= 0
            for j in 0..dim {
                let mut row = QVector::zeros(total);
                row.0[j] = Q::one();
                for (i, g) in gens.iter().enumerate() {
                    row.0[dim + nf_gens + i] = -g.0[j].clone();
                }
                sys.equalities.push(Hyperplane::new(row, Q::zero()));
            }
            for i in 0..ng_gens {
                let mut row = QVector::zeros(total);
                row.0[dim + nf_gens + i] = Q::one();
                sys.inequalities.push(Halfspace::new(row, Q::zero()));
            }
        }
    }
    // |w_j| <= 1
    for j in 0..dim {
        let mut up = QVector::zeros(total);
        up.0[j] = -Q::one();
        sys.inequalities.push(Halfspace::new(up, qi(-1)));
        let mut dn = QVector::zeros(total);
        dn.0[j] = Q::one();
        sys.inequalities.push(Halfspace::new(dn, qi(-1)));
    }
    let obj = pad(v, 0, total);
    let sol = maximize(&sys, &obj)?;
    Ok(sol.value > Q::zero())
}

/// Dense standard-form problem `min c·y` s.t. `T y = b`, `y >= 0`, where the
/// ambient free variables are split as `x = y⁺ - y⁻` and each inequality
/// carries a surplus variable.
struct StandardLp {
    ambient: usize,
    nvars: usize,
    rows: Vec<Vec<Q>>,
    rhs: Vec<Q>,
    basis: Vec<usize>,
}

impl StandardLp {
    fn from_polytope(h: &HPolytope) -> StandardLp {
        let n = h.dim;
        let m = h.equalities.len() + h.inequalities.len();
        let nvars = 2 * n + h.inequalities.len();
        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        for e in &h.equalities {
            let mut row = vec![Q::zero(); nvars];
            for j in 0..n {
                row[j] = e.normal.0[j].clone();
                row[n + j] = -e.normal.0[j].clone();
            }
            rows.push(row);
            rhs.push(e.rhs.clone());
        }
        for (k, ineq) in h.inequalities.iter().enumerate() {
            let mut row = vec![Q::zero(); nvars];
            for j in 0..n {
                row[j] = ineq.normal.0[j].clone();
                row[n + j] = -ineq.normal.0[j].clone();
            }
            row[2 * n + k] = -Q::one(); // surplus: ⟨a,x⟩ - s = b
            rows.push(row);
            rhs.push(ineq.rhs.clone());
        }
        StandardLp { ambient: n, nvars, rows, rhs, basis: Vec::new() }
    }

    fn objective_from_ambient(&self, c: &QVector) -> Vec<Q> {
        let mut obj = vec![Q::zero(); self.nvars];
        for j in 0..self.ambient {
            obj[j] = c.0[j].clone();
            obj[self.ambient + j] = -c.0[j].clone();
        }
        obj
    }

    /// Phase one: finds a basic feasible solution or reports infeasibility.
    fn phase_one(&mut self) -> Result<(), GeomError> {
        let m = self.rows.len();
        // flip rows to make rhs nonnegative, then add one artificial per row
        for i in 0..m {
            if self.rhs[i].is_negative() {
                for x in self.rows[i].iter_mut() {
                    *x = -x.clone();
                }
                self.rhs[i] = -self.rhs[i].clone();
            }
        }
        let base = self.nvars;
        for (i, row) in self.rows.iter_mut().enumerate() {
            row.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
        }
        self.nvars += m;
        self.basis = (base..base + m).collect();
        let mut cost = vec![Q::zero(); self.nvars];
        for c in cost.iter_mut().skip(base) {
            *c = Q::one();
        }
        let value = self.run_simplex(&cost)?;
        if !value.is_zero() {
            return Err(GeomError::Infeasible);
        }
        // pivot surviving artificials out of the basis; drop redundant rows
        let mut drop_rows = Vec::new();
        for i in 0..self.rows.len() {
            if self.basis[i] >= base {
                match (0..base).find(|&j| !self.rows[i][j].is_zero()) {
                    Some(j) => self.pivot(i, j),
                    None => drop_rows.push(i),
                }
            }
        }
        for &i in drop_rows.iter().rev() {
            self.rows.remove(i);
            self.rhs.remove(i);
            self.basis.remove(i);
        }
        // discard artificial columns
        for row in self.rows.iter_mut() {
            row.truncate(base);
        }
        self.nvars = base;
        Ok(())
    }

    /// Full solve: phase one, then minimize `cost`. Returns the ambient point.
    fn solve(&mut self, cost: &[Q]) -> Result<QPoint, GeomError> {
        self.phase_one()?;
        self.run_simplex(cost)?;
        let mut y = vec![Q::zero(); self.nvars];
        for (i, &b) in self.basis.iter().enumerate() {
            y[b] = self.rhs[i].clone();
        }
        let x: Vec<Q> = (0..self.ambient)
            .map(|j| &y[j] - &y[self.ambient + j])
            .collect();
        Ok(QVector(x))
    }

    /// Minimize `cost` from the current basic feasible solution with Bland's
    /// rule; returns the optimal value.
    fn run_simplex(&mut self, cost: &[Q]) -> Result<Q, GeomError> {
        // reduce cost row against the current basis
        let mut red = cost.to_vec();
        red.resize(self.nvars, Q::zero());
        let mut shift = Q::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            if !red[b].is_zero() {
                let f = red[b].clone();
                for (r, a) in red.iter_mut().zip(self.rows[i].iter()) {
                    let v = &*r - &f * a;
                    *r = v;
                }
                shift += &f * &self.rhs[i];
            }
        }
        loop {
            // Bland: entering = lowest-index column with negative reduced cost
            let Some(enter) = (0..self.nvars).find(|&j| red[j].is_negative()) else {
                return Ok(shift);
            };
            let mut leave: Option<usize> = None;
            let mut best: Option<Q> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if a.is_positive() {
                    let ratio = &self.rhs[i] / a;
                    let better = match &best {
                        None => true,
                        Some(b) => {
                            ratio < *b
                                || (ratio == *b
                                    && self.basis[i] < self.basis[leave.unwrap()])
                        }
                    };
                    if better {
                        best = Some(ratio);
                        leave = Some(i);
                    }
                }
            }
            let Some(leave) = leave else {
                return Err(GeomError::Unbounded);
            };
            self.pivot(leave, enter);
            // update reduced costs
            let f = red[enter].clone();
            if !f.is_zero() {
                for (r, a) in red.iter_mut().zip(self.rows[leave].iter()) {
                    let v = &*r - &f * a;
                    *r = v;
                }
                shift += &f * &self.rhs[leave];
            }
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.rows[row][col].clone().recip();
        for x in self.rows[row].iter_mut() {
            *x = &*x * &inv;
        }
        self.rhs[row] = &self.rhs[row] * &inv;
        for i in 0..self.rows.len() {
            if i != row && !self.rows[i][col].is_zero() {
                let f = self.rows[i][col].clone();
                for j in 0..self.nvars {
                    let v = &self.rows[i][j] - &f * &self.rows[row][j];
                    self.rows[i][j] = v;
                }
                let v = &self.rhs[i] - &f * &self.rhs[row];
                self.rhs[i] = v;
            }
        }
        self.basis[row] = col;
    }
}
