use std::collections::VecDeque;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    dependence_quotient, dot_rat, kernel_basis, rat, to_i64, EchelonBasis, IntVector, Matrix, RatMatrix, RatVector,
    Rational,
};
use crate::polyhedral::{Cone, FacetData, LatticePolytope};
use crate::semigroup::fundamental_filtration;

/// `L(F') / sum L(F_i)` for a polytope, with `F'` the facet pairs `[c, eta]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TildeT1 {
    pub dim: usize,
    pub pairs: Vec<RatVector>,
    /// Rows of `L(F')` (coordinates indexed by facets) spanning a complement
    /// of `sum L(F_i)`.
    pub quotient_basis: RatMatrix,
}

/// Cone of Minkowski summands of multiples of a polytope, in edge
/// parameters: `t` describes the summand whose edge `e` is `t_e` times the
/// edge vector of `e`, so the all-ones vector is the polytope itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummandCone {
    pub polytope: LatticePolytope,
    pub edges: Vec<(usize, usize)>,
    pub edge_vectors: Vec<RatVector>,
    /// Integer basis of the linear span of the cone.
    pub span: Vec<IntVector>,
    pub extremal_rays: Vec<IntVector>,
}

impl SummandCone {
    pub fn dim(&self) -> usize {
        self.span.len()
    }

    pub fn contains(&self, t: &[Rational]) -> bool {
        if t.len() != self.edges.len() || t.iter().any(|x| x.is_negative()) {
            return false;
        }
        let mut basis = EchelonBasis::new(t.len());
        for row in &self.span {
            basis.insert_i64(row);
        }
        basis.contains_rational(t)
    }
}

/// Support numbers `eta'` of a summand and its class in `TildeT1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummandClass {
    pub support: Vec<Rational>,
    /// Values on the rows of the quotient basis.
    pub coordinates: Vec<Rational>,
}

impl SummandClass {
    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(|x| x.is_zero())
    }
}

pub fn tilde_t1(q: &LatticePolytope) -> TildeT1 {
    if q.dim() == 0 {
        return TildeT1 {
            dim: 0,
            pairs: Vec::new(),
            quotient_basis: Matrix::from_rows(0, Vec::new()),
        };
    }
    let model = if q.is_full_dimensional() {
        q.clone()
    } else {
        q.full_dimensional_model()
    };
    let ff = fundamental_filtration(&model).expect("model is full-dimensional");
    let (dim, quotient_basis) = dependence_quotient(&ff.pairs, &ff.union, &ff.subsets);
    TildeT1 {
        dim,
        pairs: ff.pairs,
        quotient_basis,
    }
}

fn sub(a: &[Rational], b: &[Rational]) -> RatVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Translate so that the lexicographically smallest vertex is the origin.
pub(crate) fn anchor(p: &LatticePolytope) -> LatticePolytope {
    let min = p.vertices().iter().min().expect("nonempty").clone();
    p.translate(&min.iter().map(|x| -x).collect::<Vec<_>>())
}

/// Integer multiple of a rational vector with coprime entries.
fn integer_row(v: &[Rational]) -> IntVector {
    let scaled = crate::linalg::integer_scaled_row(v);
    scaled.iter().map(to_i64).collect()
}

pub fn summand_cone(q: &LatticePolytope) -> SummandCone {
    let n = q.ambient_rank();
    let nv = q.vertices().len();
    let edges = q.edges();
    let edge_vectors = q.edge_vectors();
    let ne = edges.len();
    // x_w - x_u - t_e (w - u) = 0, unknowns (x_0..x_{nv-1}, t)
    let width = n * nv + ne;
    let mut rows = Vec::new();
    for (e, &(u, w)) in edges.iter().enumerate() {
        for k in 0..n {
            let mut row = vec![Rational::zero(); width];
            row[n * w + k] += rat(1);
            row[n * u + k] -= rat(1);
            row[n * nv + e] = -edge_vectors[e][k].clone();
            rows.push(row);
        }
    }
    let kernel = kernel_basis(&Matrix::from_rows(width, rows));
    let mut basis = EchelonBasis::new(ne);
    let mut span = Vec::new();
    for row in kernel.row_vecs() {
        let t: RatVector = row[n * nv..].to_vec();
        if basis.insert_rational(&t) {
            span.push(integer_row(&t));
        }
    }
    let k = span.len();
    let columns: Vec<IntVector> = (0..ne).map(|e| span.iter().map(|r| r[e]).collect()).collect();
    let lambda_cone = Cone::from_inequalities(k, &columns).expect("summand cone contains the polytope in its interior");
    let mut extremal_rays: Vec<IntVector> = lambda_cone
        .rays()
        .iter()
        .map(|lam| {
            let t: IntVector = (0..ne).map(|e| (0..k).map(|j| lam[j] * span[j][e]).sum()).collect();
            crate::linalg::primitive(&t).expect("nonzero ray")
        })
        .collect();
    extremal_rays.sort();
    SummandCone {
        polytope: q.clone(),
        edges,
        edge_vectors,
        span,
        extremal_rays,
    }
}

/// The summand with edge parameters `t`, anchored at its lexicographically
/// smallest vertex.
pub fn summand_from_parameters(sc: &SummandCone, t: &[Rational]) -> Result<LatticePolytope> {
    if !sc.contains(t) {
        return Err(Error::NotInSummandCone(crate::polyhedral::format_rat_vector(t)));
    }
    let nv = sc.polytope.vertices().len();
    let n = sc.polytope.ambient_rank();
    let mut pos: Vec<Option<RatVector>> = vec![None; nv];
    pos[0] = Some(vec![Rational::zero(); n]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        let pu = pos[u].clone().unwrap();
        for (e, &(a, b)) in sc.edges.iter().enumerate() {
            let (w, sign) = if a == u {
                (b, rat(1))
            } else if b == u {
                (a, rat(-1))
            } else {
                continue;
            };
            if pos[w].is_none() {
                let step: RatVector = sc.edge_vectors[e].iter().map(|x| x * &t[e] * &sign).collect();
                pos[w] = Some(pu.iter().zip(&step).map(|(x, y)| x + y).collect());
                queue.push_back(w);
            }
        }
    }
    let pts: Vec<RatVector> = pos.into_iter().map(|p| p.expect("edge graph is connected")).collect();
    Ok(anchor(&LatticePolytope::from_points(n, &pts)?))
}

/// Vertex of `summand` minimizing `sum_{v at alpha} c^v`, checked to minimize
/// every such `c^v`; fails when the normal fan of `q` does not refine that of
/// the summand at `alpha`.
pub(crate) fn summand_vertices(fd: &FacetData, nv: usize, summand: &LatticePolytope) -> Result<Vec<RatVector>> {
    let verts = summand.vertices();
    let minimum = |c: &[Rational]| verts.iter().map(|x| dot_rat(x, c)).min().expect("nonempty summand");
    let normals: Vec<RatVector> = fd.normals.iter().map(|c| c.iter().map(|&x| rat(x)).collect()).collect();
    (0..nv)
        .map(|alpha| {
            let at = fd.facets_at(alpha);
            let c: RatVector = (0..normals[0].len())
                .map(|k| at.iter().fold(Rational::zero(), |s, &v| s + &normals[v][k]))
                .collect();
            let m = minimum(&c);
            let argmin: Vec<&RatVector> = verts.iter().filter(|x| dot_rat(x, &c) == m).collect();
            if argmin.len() != 1 {
                return Err(Error::FanNotRefined(alpha));
            }
            let x = argmin[0];
            if at.iter().any(|&v| dot_rat(x, &normals[v]) != minimum(&normals[v])) {
                return Err(Error::FanNotRefined(alpha));
            }
            Ok(x.clone())
        })
        .collect()
}

/// Edge parameters of a summand of a multiple of a full-dimensional `q`.
pub fn summand_parameters(sc: &SummandCone, summand: &LatticePolytope) -> Result<RatVector> {
    let q = &sc.polytope;
    let fd = q.facet_data()?;
    let xs = summand_vertices(&fd, q.vertices().len(), summand)?;
    sc.edges
        .iter()
        .zip(&sc.edge_vectors)
        .map(|(&(u, w), v)| {
            let d = sub(&xs[w], &xs[u]);
            let k = v.iter().position(|x| !x.is_zero()).expect("edges are nonzero");
            let t = &d[k] / &v[k];
            if t.is_negative() || d.iter().zip(v).any(|(a, b)| *a != &t * b) {
                return Err(Error::FanNotRefined(u));
            }
            Ok(t)
        })
        .collect()
}

/// Class of a summand of a multiple of the full-dimensional `q` given the
/// data of `q`.
pub fn class_of_summand(q: &LatticePolytope, tt: &TildeT1, summand: &LatticePolytope) -> Result<SummandClass> {
    let fd = q.facet_data()?;
    summand_vertices(&fd, q.vertices().len(), summand)?;
    let support: Vec<Rational> = fd
        .normals
        .iter()
        .map(|c| {
            let cr: RatVector = c.iter().map(|&x| rat(x)).collect();
            -summand
                .vertices()
                .iter()
                .map(|x| dot_rat(x, &cr))
                .min()
                .expect("nonempty summand")
        })
        .collect();
    let coordinates = tt
        .quotient_basis
        .row_vecs()
        .iter()
        .map(|row| dot_rat(row, &support))
        .collect();
    Ok(SummandClass { support, coordinates })
}

pub fn rho_class(sc: &SummandCone, t: &[Rational]) -> Result<SummandClass> {
    let summand = summand_from_parameters(sc, t)?;
    class_of_summand(&sc.polytope, &tilde_t1(&sc.polytope), &summand)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rank, rat_vec};

    fn poly(points: &[[i64; 2]]) -> LatticePolytope {
        LatticePolytope::from_int_points(2, &points.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn q3() -> LatticePolytope {
        poly(&[[-1, -1], [-1, 0], [1, 1], [0, -1]])
    }

    #[test]
    fn tilde_t1_examples() {
        let seg = LatticePolytope::from_int_points(2, &[vec![0, 0], vec![1, 2]]).unwrap();
        assert_eq!(tilde_t1(&seg).dim, 0);
        assert_eq!(tilde_t1(&q3()).dim, 1);
        let hexagon = poly(&[[-1, -1], [0, -1], [1, 0], [1, 1], [0, 1], [-1, 0]]);
        assert_eq!(tilde_t1(&hexagon).dim, 3);
        let tri = poly(&[[0, 0], [1, 0], [0, 1]]);
        assert_eq!(tilde_t1(&tri).dim, 0);
    }

    #[test]
    fn q3_summand_cone() {
        let sc = summand_cone(&q3());
        assert_eq!(sc.dim(), 2);
        assert_eq!(sc.extremal_rays, vec![vec![0, 2, 1, 3], vec![3, 1, 2, 0]]);
        for r in &sc.extremal_rays {
            let s = summand_from_parameters(&sc, &rat_vec(r)).unwrap();
            assert_eq!(s.vertices().len(), 3);
            assert_eq!(summand_parameters(&sc, &s).unwrap(), rat_vec(r));
        }
        let tri = summand_from_parameters(&sc, &rat_vec(&[0, 2, 1, 3])).unwrap();
        let mut edges: Vec<IntVector> = tri
            .edge_vectors()
            .iter()
            .map(|e| e.iter().map(|x| to_i64(&x.to_integer())).collect())
            .collect();
        edges.sort();
        // 2*(1,2), 1*(-2,-1), 3*(0,-1)
        assert_eq!(edges, vec![vec![-2, -1], vec![0, -3], vec![2, 4]]);
    }

    #[test]
    fn square_and_triangle_cones() {
        let sq = poly(&[[0, 0], [1, 0], [1, 1], [0, 1]]);
        let sc = summand_cone(&sq);
        assert_eq!(sc.extremal_rays, vec![vec![0, 1, 0, 1], vec![1, 0, 1, 0]]);
        let tri = poly(&[[0, 0], [2, 0], [0, 1]]);
        assert_eq!(summand_cone(&tri).dim(), 1);
    }

    #[test]
    fn reconstruction_round_trips() {
        let sc = summand_cone(&q3());
        let ones = rat_vec(&[1, 1, 1, 1]);
        let q = summand_from_parameters(&sc, &ones).unwrap();
        assert_eq!(q, anchor(&q3()));
        assert_eq!(summand_from_parameters(&sc, &rat_vec(&[0, 0, 0, 0])).unwrap().dim(), 0);
        assert!(summand_from_parameters(&sc, &rat_vec(&[1, 0, 0, 0])).is_err());
        let t = rat_vec(&[4, 6, 5, 7]);
        assert!(sc.contains(&t));
        let s = summand_from_parameters(&sc, &t).unwrap();
        let sum = q
            .minkowski_sum(&summand_from_parameters(&sc, &rat_vec(&[3, 5, 4, 6])).unwrap())
            .unwrap();
        assert_eq!(anchor(&sum), s);
    }

    #[test]
    fn rho_examples() {
        let sc = summand_cone(&q3());
        assert!(rho_class(&sc, &rat_vec(&[1, 1, 1, 1])).unwrap().is_zero());
        let a = rho_class(&sc, &rat_vec(&[0, 2, 1, 3])).unwrap();
        assert!(!a.is_zero());
        let tt = tilde_t1(&q3());
        let s = summand_from_parameters(&sc, &rat_vec(&[0, 2, 1, 3])).unwrap();
        let moved = s.translate(&rat_vec(&[4, -3]));
        assert_eq!(class_of_summand(&q3(), &tt, &moved).unwrap().coordinates, a.coordinates);
        let m = Matrix::from_rows(1, vec![a.coordinates.clone()]);
        assert_eq!(rank(&m), tt.dim);
    }
}
