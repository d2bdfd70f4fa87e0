//! Total spaces of toric deformations: the slice of a cone at a degree, the
//! polytope `P` built from a Minkowski decomposition, the cone over it, and
//! checks that the original cone is recovered as the special fiber.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    dot, integer_scaled_row, lattice_hnf_basis, lattice_kernel, rank, to_i64, unimodular_completion,
    unimodular_inverse, IntMatrix, IntVector, Matrix, RatVector, Rational,
};
use crate::minkowski::{class_of_summand, summand_vertices, tilde_t1};
use crate::polyhedral::{Cone, LatticePolytope};

/// The affine hyperplane `<a, r> = 1` of `N` with a lattice base point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbientSlice {
    pub cone: Cone,
    pub degree: IntVector,
    pub base_point: IntVector,
    /// Basis of `r^perp` in `N`; with the base point it is a basis of `N`.
    pub lattice_basis: Vec<IntVector>,
    /// `sigma` cut with the hyperplane, in the coordinates of `lattice_basis`.
    pub polytope: LatticePolytope,
    /// Columns `lattice_basis..., base_point`.
    frame: IntMatrix,
}

impl AmbientSlice {
    /// Coordinates `(x, g)` of a lattice point: `n = sum x_j l_j + g o`.
    pub fn coordinates(&self, n: &[i64]) -> IntVector {
        let inv = unimodular_inverse(&self.frame);
        (0..n.len())
            .map(|i| to_i64(&(0..n.len()).fold(Zero::zero(), |s: num_bigint::BigInt, j| s + inv.get(i, j) * n[j])))
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.cone.rank()
    }
}

pub fn build_ambient(c: &Cone, degree: &[i64]) -> Result<AmbientSlice> {
    c.context().check(degree)?;
    let frame = unimodular_completion(degree)?;
    if !c.dual().contains(degree) {
        return Err(Error::DegreeOutsideDualCone(degree.to_vec()));
    }
    if c.rays().iter().any(|a| dot(a, degree) == 0) {
        return Err(Error::NonCompactSlice(degree.to_vec()));
    }
    let d = c.rank();
    let column = |j: usize| -> IntVector { (0..d).map(|i| to_i64(frame.get(i, j))).collect() };
    let lattice_basis: Vec<IntVector> = (0..d - 1).map(column).collect();
    let base_point = column(d - 1);
    let mut slice = AmbientSlice {
        cone: c.clone(),
        degree: degree.to_vec(),
        base_point,
        lattice_basis,
        polytope: LatticePolytope::from_int_points(1, &[vec![0]])?,
        frame,
    };
    let points: Vec<RatVector> = c
        .rays()
        .iter()
        .map(|a| {
            let xg = slice.coordinates(a);
            let g = xg[d - 1];
            xg[..d - 1].iter().map(|&x| Rational::new(x.into(), g.into())).collect()
        })
        .collect();
    slice.polytope = LatticePolytope::from_points(d - 1, &points)?;
    Ok(slice)
}

/// The summand vertices sitting over each vertex of `Q`, and which of them
/// are lattice points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexConditionReport {
    pub summand_vertices: Vec<Vec<RatVector>>,
    pub lattice: Vec<Vec<bool>>,
}

impl VertexConditionReport {
    /// First vertex of `Q` with fewer than `m` lattice summand vertices.
    pub fn failure(&self) -> Option<usize> {
        self.lattice
            .iter()
            .position(|l| l.iter().filter(|&&b| b).count() + 1 < l.len())
    }

    pub fn holds(&self) -> bool {
        self.failure().is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformationData {
    pub slice: AmbientSlice,
    /// `R_0, ..., R_m` in slice coordinates with `R_0 + ... + R_m = Q`.
    pub summands: Vec<LatticePolytope>,
    pub vertex_condition: VertexConditionReport,
    /// Vertices `(v, e^i)` of `P`.
    pub p_vertices: Vec<RatVector>,
    pub total_cone: Cone,
    /// `r^0, ..., r^m` as vectors of the dual lattice.
    pub functionals: Vec<IntVector>,
    /// Images of the standard basis of `N`.
    pub embedding: Vec<IntVector>,
    /// Exponent pairs `(r^i, r^0)` of the binomials `x^{r^i} - x^{r^0}`.
    pub regular_sequence: Vec<(IntVector, IntVector)>,
}

impl DeformationData {
    pub fn parameters(&self) -> usize {
        self.summands.len() - 1
    }

    pub fn embed(&self, n: &[i64]) -> IntVector {
        let width = self.total_cone.rank();
        (0..width)
            .map(|t| n.iter().zip(&self.embedding).map(|(x, e)| x * e[t]).sum())
            .collect()
    }
}

fn ints(v: &[Rational]) -> Option<IntVector> {
    v.iter()
        .map(|x| x.denom().is_one().then(|| to_i64(x.numer())))
        .collect()
}

/// Builds the total space for summands of `Q` given up to translation; `R_0`
/// is moved so that the sum is `Q` itself.
pub fn build_deformation(slice: &AmbientSlice, summands: &[LatticePolytope]) -> Result<DeformationData> {
    let q = &slice.polytope;
    let n = slice.rank() - 1;
    if summands.is_empty() || summands.iter().any(|s| s.ambient_rank() != n) {
        return Err(Error::InvalidDecomposition(format!("expected summands in rank {n}")));
    }
    let sum = summands[1..]
        .iter()
        .try_fold(summands[0].clone(), |acc, s| acc.minkowski_sum(s))?;
    let lexmin = |p: &LatticePolytope| p.vertices().iter().min().expect("nonempty").clone();
    let shift: RatVector = lexmin(q).iter().zip(lexmin(&sum)).map(|(a, b)| a - b).collect();
    if sum.translate(&shift) != *q {
        return Err(Error::InvalidDecomposition(
            "summands do not add up to the slice polytope".into(),
        ));
    }
    let mut summands = summands.to_vec();
    summands[0] = summands[0].translate(&shift);
    let m = summands.len() - 1;

    let fd = q.facet_data()?;
    let nv = q.vertices().len();
    let per_summand: Vec<Vec<RatVector>> = summands
        .iter()
        .map(|s| summand_vertices(&fd, nv, s))
        .collect::<Result<_>>()?;
    let over: Vec<Vec<RatVector>> = (0..nv)
        .map(|a| per_summand.iter().map(|v| v[a].clone()).collect())
        .collect();
    let lattice = over
        .iter()
        .map(|vs| vs.iter().map(|v| ints(v).is_some()).collect())
        .collect();
    let vertex_condition = VertexConditionReport {
        summand_vertices: over,
        lattice,
    };
    if let Some(a) = vertex_condition.failure() {
        return Err(Error::VertexCondition(a));
    }

    let width = n + m + 1;
    let mut p_vertices = Vec::new();
    for (i, s) in summands.iter().enumerate() {
        for v in s.vertices() {
            let mut p = v.clone();
            p.extend((0..=m).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            p_vertices.push(p);
        }
    }
    let generators: Vec<IntVector> = p_vertices
        .iter()
        .map(|p| integer_scaled_row(p).iter().map(to_i64).collect())
        .collect();
    let total_cone = Cone::from_generators(width, &generators)?;
    let functionals: Vec<IntVector> = (0..=m)
        .map(|i| (0..width).map(|t| (t == n + i) as i64).collect())
        .collect();
    let d = slice.rank();
    let embedding = (0..d)
        .map(|k| {
            let e: IntVector = (0..d).map(|t| (t == k) as i64).collect();
            let xg = slice.coordinates(&e);
            let mut image = xg[..n].to_vec();
            image.extend(std::iter::repeat_n(xg[n], m + 1));
            image
        })
        .collect();
    let regular_sequence = (1..=m)
        .map(|i| (functionals[i].clone(), functionals[0].clone()))
        .collect();
    Ok(DeformationData {
        slice: slice.clone(),
        summands,
        vertex_condition,
        p_vertices,
        total_cone,
        functionals,
        embedding,
        regular_sequence,
    })
}

/// Outcome of the fiber identities `N = L cap (r^i - r^0)^perp` and
/// `sigma = sigma~ cap N_R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberCheck {
    pub lattice: bool,
    pub cone: bool,
    /// A ray of one side of the cone identity missing from the other.
    pub witness: Option<IntVector>,
}

impl FiberCheck {
    pub fn holds(&self) -> bool {
        self.lattice && self.cone
    }
}

pub fn verify_fiber(dd: &DeformationData) -> FiberCheck {
    let width = dd.total_cone.rank();
    let d = dd.slice.rank();
    let differences: Vec<IntVector> = dd.functionals[1..]
        .iter()
        .map(|r| r.iter().zip(&dd.functionals[0]).map(|(a, b)| a - b).collect())
        .collect();
    let kernel = lattice_kernel(&differences, width);
    let lattice = lattice_hnf_basis(&kernel, width) == lattice_hnf_basis(&dd.embedding, width);

    let pulled: Vec<IntVector> = dd
        .total_cone
        .facet_normals()
        .iter()
        .map(|f| dd.embedding.iter().map(|e| dot(f, e)).collect())
        .collect();
    let expected: BTreeSet<IntVector> = dd.slice.cone.rays().iter().cloned().collect();
    let (cone, witness) = match Cone::from_inequalities(d, &pulled) {
        Ok(fiber) => {
            let got: BTreeSet<IntVector> = fiber.rays().iter().cloned().collect();
            let witness = got.symmetric_difference(&expected).next().cloned();
            (witness.is_none(), witness)
        }
        Err(_) => (false, None),
    };
    FiberCheck { lattice, cone, witness }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KsCheck {
    pub span_dim: usize,
    pub parameters: usize,
}

impl KsCheck {
    pub fn holds(&self) -> bool {
        self.span_dim <= self.parameters
    }
}

/// Dimension of the span of the summand classes in `T~1(Q)`.
pub fn kodaira_spencer_check(dd: &DeformationData, q: &LatticePolytope) -> Result<KsCheck> {
    let tt = tilde_t1(q);
    let rows: Vec<RatVector> = dd
        .summands
        .iter()
        .map(|s| class_of_summand(q, &tt, s).map(|c| c.coordinates))
        .collect::<Result<_>>()?;
    Ok(KsCheck {
        span_dim: rank(&Matrix::from_rows(tt.dim, rows)),
        parameters: dd.parameters(),
    })
}
