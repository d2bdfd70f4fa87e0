//! Graded pieces of T1 of an affine toric variety by the general
//! dependence formula, the codimension-2 formula and the face-polytope
//! formula, together with face reduction and the support of T1.

mod support;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{
    dependence_quotient, dot, kernel_basis, lattice_kernel, rat, rat_vec, EchelonBasis, IntVector, Matrix, RatMatrix,
    RatVector, Rational,
};
use crate::minkowski::tilde_t1;
use crate::polyhedral::{Cone, LatticePolytope};
use crate::semigroup::{degree_filtration_of, hilbert_basis};

pub use support::{
    degree_support, face_reduction, rigidity_report, DegreeSupport, FaceReduction, RigidityReport, SampleOptions,
    SupportEntry, Verdict,
};

/// `<a^i, R*> = g` for every ray.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GorensteinData {
    pub r_star: IntVector,
    pub g: i64,
}

/// `T1(-R)`, dual to `L(E') / sum L(E_i)` (or to the kernel in the
/// codimension-2 formula).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct T1Piece {
    pub degree: IntVector,
    pub dim: usize,
    /// Rows spanning a complement of the relations; their coordinates are
    /// indexed by `support` for the general formula and by blocks of
    /// `M_Q` per ray for the codimension-2 formula.
    pub quotient_basis: RatMatrix,
    pub support: Vec<IntVector>,
}

pub fn qgorenstein_data(c: &Cone) -> Option<GorensteinData> {
    let rays = c.rays();
    let d = c.rank();
    let rows: Vec<IntVector> = rays[1..]
        .iter()
        .map(|a| a.iter().zip(&rays[0]).map(|(x, y)| x - y).collect())
        .collect();
    let kernel = lattice_kernel(&rows, d);
    if kernel.len() != 1 {
        return None;
    }
    let mut r = kernel.into_iter().next().unwrap();
    let mut g = dot(&rays[0], &r);
    if g < 0 {
        r.iter_mut().for_each(|x| *x = -*x);
        g = -g;
    }
    debug_assert!(g > 0 && rays.iter().all(|a| dot(a, &r) == g));
    Some(GorensteinData { r_star: r, g })
}

/// A cone with its dual Hilbert basis and Gorenstein data, shared by
/// repeated degree evaluations.
#[derive(Debug, Clone)]
pub struct T1Context {
    cone: Cone,
    generators: Vec<IntVector>,
    gorenstein: Option<GorensteinData>,
}

impl T1Context {
    pub fn new(c: &Cone) -> Self {
        let generators = hilbert_basis(&c.dual()).elements;
        T1Context {
            cone: c.clone(),
            generators,
            gorenstein: qgorenstein_data(c),
        }
    }

    /// Uses an arbitrary generating list (possibly with repetitions) of the
    /// dual semigroup instead of its Hilbert basis.
    pub fn with_generators(c: &Cone, generators: Vec<IntVector>) -> Self {
        T1Context {
            cone: c.clone(),
            generators,
            gorenstein: qgorenstein_data(c),
        }
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    pub fn gorenstein(&self) -> Option<&GorensteinData> {
        self.gorenstein.as_ref()
    }

    fn check_degree(&self, r: &[i64]) -> Result<()> {
        self.cone.context().check(r)
    }

    pub fn general(&self, r: &[i64]) -> Result<T1Piece> {
        self.check_degree(r)?;
        let filt = degree_filtration_of(&self.generators, self.cone.rays(), r);
        let vectors: Vec<RatVector> = self.generators.iter().map(|s| rat_vec(s)).collect();
        let (dim, quotient_basis) = dependence_quotient(&vectors, &filt.union, &filt.subsets);
        let support = filt.union.iter().map(|&i| self.generators[i].clone()).collect();
        Ok(T1Piece {
            degree: r.to_vec(),
            dim,
            quotient_basis,
            support,
        })
    }

    pub fn codim2(&self, r: &[i64]) -> Result<T1Piece> {
        self.check_degree(r)?;
        if let Some((i, j)) = self.cone.singular_two_face() {
            return Err(Error::NotSmoothInCodim2(i, j));
        }
        let d = self.cone.rank();
        let rays = self.cone.rays();
        let n = rays.len();
        let width = n * d;
        // Equations cutting out V_i inside M_Q.
        let equations: Vec<Vec<IntVector>> = rays
            .iter()
            .map(|a| match dot(a, r) {
                k if k <= 0 => (0..d).map(|j| (0..d).map(|t| (t == j) as i64).collect()).collect(),
                1 => vec![a.clone()],
                _ => Vec::new(),
            })
            .collect();
        let block_row = |i: usize, eq: &[i64]| {
            let mut row = vec![Rational::zero(); width];
            for (t, &x) in eq.iter().enumerate() {
                row[i * d + t] = rat(x);
            }
            row
        };
        let mut rows: Vec<RatVector> = Vec::new();
        for (i, eqs) in equations.iter().enumerate() {
            rows.extend(eqs.iter().map(|e| block_row(i, e)));
        }
        for t in 0..d {
            let mut row = vec![Rational::zero(); width];
            for i in 0..n {
                row[i * d + t] = rat(1);
            }
            rows.push(row);
        }
        let kernel = kernel_basis(&Matrix::from_rows(width, rows));
        let mut relations = EchelonBasis::new(width);
        for face in self.cone.faces(2) {
            let (i, j) = (face.indices[0], face.indices[1]);
            let both: Vec<RatVector> = equations[i].iter().chain(&equations[j]).map(|e| rat_vec(e)).collect();
            for v in kernel_basis(&Matrix::from_rows(d, both)).row_vecs() {
                let mut row = vec![Rational::zero(); width];
                for (t, x) in v.into_iter().enumerate() {
                    row[j * d + t] = -x.clone();
                    row[i * d + t] = x;
                }
                relations.insert_rational(&row);
            }
        }
        let complement: Vec<RatVector> = kernel
            .row_vecs()
            .into_iter()
            .filter(|row| relations.insert_rational(row))
            .collect();
        Ok(T1Piece {
            degree: r.to_vec(),
            dim: complement.len(),
            quotient_basis: Matrix::from_rows(width, complement),
            support: Vec::new(),
        })
    }

    /// Dimension of `T~1(conv{a^i : <a^i, R> = 1})`, or 0 if some
    /// `<a^i, R> >= 2`.
    pub fn via_face_polytope(&self, gd: &GorensteinData, r: &[i64]) -> Result<usize> {
        self.check_degree(r)?;
        check_gorenstein(&self.cone, gd)?;
        if let Some((i, j)) = self.cone.singular_two_face() {
            return Err(Error::NotSmoothInCodim2(i, j));
        }
        let rays = self.cone.rays();
        if rays.iter().any(|a| dot(a, r) >= 2) {
            return Ok(0);
        }
        let face: Vec<IntVector> = rays.iter().filter(|a| dot(a, r) == 1).cloned().collect();
        if face.is_empty() {
            return Ok(0);
        }
        let q = LatticePolytope::from_int_points(self.cone.rank(), &face)?;
        Ok(tilde_t1(&q).dim)
    }
}

pub(crate) fn check_gorenstein(c: &Cone, gd: &GorensteinData) -> Result<()> {
    c.context().check(&gd.r_star)?;
    if gd.g < 1 || c.rays().iter().any(|a| dot(a, &gd.r_star) != gd.g) {
        return Err(Error::NotQGorenstein);
    }
    Ok(())
}

pub fn t1_dim_general(c: &Cone, r: &[i64]) -> Result<T1Piece> {
    T1Context::new(c).general(r)
}

pub fn t1_dim_codim2(c: &Cone, r: &[i64]) -> Result<T1Piece> {
    T1Context::with_generators(c, Vec::new()).codim2(r)
}

pub fn t1_dim_via_face_polytope(c: &Cone, gd: &GorensteinData, r: &[i64]) -> Result<usize> {
    T1Context::with_generators(c, Vec::new()).via_face_polytope(gd, r)
}
