use num_traits::One;

use crate::error::Result;
use crate::linalg::{dot_rat, rat, solve, Matrix, RatVector, Rational};
use crate::polyhedral::LatticePolytope;

use super::summands::summand_vertices;

/// A function on the rays of the inner normal fan of a polytope, with a
/// linear witness `a_alpha` on each maximal cone where one exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorData {
    /// Ray generators `c^v` of the fan.
    pub normals: Vec<RatVector>,
    /// `h(c^v)`.
    pub values: Vec<Rational>,
    /// Maximal cones as sets of ray indices, one per vertex of the polytope.
    pub cones: Vec<Vec<usize>>,
    pub witnesses: Vec<Option<RatVector>>,
}

impl DivisorData {
    pub fn from_values(q: &LatticePolytope, values: Vec<Rational>) -> Result<Self> {
        let fd = q.facet_data()?;
        assert_eq!(values.len(), fd.normals.len(), "one value per facet");
        let normals: Vec<RatVector> = fd.normals.iter().map(|c| c.iter().map(|&x| rat(x)).collect()).collect();
        let n = q.ambient_rank();
        let cones: Vec<Vec<usize>> = (0..q.vertices().len()).map(|a| fd.facets_at(a)).collect();
        let witnesses = cones
            .iter()
            .map(|cone| {
                let m = Matrix::from_rows(n, cone.iter().map(|&v| normals[v].clone()).collect());
                let rhs: Vec<Rational> = cone.iter().map(|&v| values[v].clone()).collect();
                solve(&m, &rhs)
            })
            .collect();
        Ok(DivisorData {
            normals,
            values,
            cones,
            witnesses,
        })
    }

    pub fn is_cartier(&self) -> bool {
        self.witnesses
            .iter()
            .all(|w| w.as_ref().is_some_and(|a| a.iter().all(|x| x.denom().is_one())))
    }

    pub fn is_nef(&self) -> bool {
        self.is_cartier() && self.check(false)
    }

    pub fn is_ample(&self) -> bool {
        self.is_cartier() && self.check(true)
    }

    /// `h(c^v) <= <a_alpha, c^v>` for all rays, strictly off the cone when
    /// `strict`.
    fn check(&self, strict: bool) -> bool {
        self.cones.iter().zip(&self.witnesses).all(|(cone, w)| {
            let a = w.as_ref().expect("cartier");
            self.normals.iter().zip(&self.values).enumerate().all(|(v, (c, h))| {
                let value = dot_rat(a, c);
                if strict && !cone.contains(&v) {
                    *h < value
                } else {
                    *h <= value
                }
            })
        })
    }
}

/// The divisor of a summand of a multiple of `q`: `h(c^v)` is the minimum of
/// `c^v` on the summand.
pub fn divisor_from_summand(q: &LatticePolytope, summand: &LatticePolytope) -> Result<DivisorData> {
    let fd = q.facet_data()?;
    summand_vertices(&fd, q.vertices().len(), summand)?;
    let values = fd
        .normals
        .iter()
        .map(|c| {
            let cr: RatVector = c.iter().map(|&x| rat(x)).collect();
            summand
                .vertices()
                .iter()
                .map(|x| dot_rat(x, &cr))
                .min()
                .expect("nonempty summand")
        })
        .collect();
    DivisorData::from_values(q, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::lattice_decompositions;
    use std::collections::BTreeSet;

    fn poly(points: &[[i64; 2]]) -> LatticePolytope {
        LatticePolytope::from_int_points(2, &points.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn q1() -> LatticePolytope {
        poly(&[[-1, 1], [-1, 0], [1, -1], [1, 0]])
    }

    #[test]
    fn polytope_itself_is_ample() {
        for q in [q1(), poly(&[[-1, -1], [0, 1], [1, 0]]), poly(&[[0, 0], [3, 0], [0, 2]])] {
            let d = divisor_from_summand(&q, &q).unwrap();
            assert!(d.is_cartier() && d.is_nef() && d.is_ample());
            for (cone, a) in d.cones.iter().zip(&d.witnesses) {
                for &v in cone {
                    assert_eq!(dot_rat(a.as_ref().unwrap(), &d.normals[v]), d.values[v]);
                }
            }
        }
    }

    #[test]
    fn q1_segment_is_nef_not_ample() {
        let ds = lattice_decompositions(&q1()).unwrap();
        for s in &ds[0].summands {
            let d = divisor_from_summand(&q1(), s).unwrap();
            assert!(d.is_cartier());
            assert!(d.is_nef());
            assert!(!d.is_ample());
            let distinct: BTreeSet<RatVector> = d.witnesses.iter().map(|w| w.clone().unwrap()).collect();
            assert_eq!(distinct.len(), 2);
        }
    }

    #[test]
    fn perturbed_values_on_singular_fan_are_not_cartier() {
        // the normal fan of this triangle has cones of index 3
        let q = poly(&[[-1, -1], [0, 1], [1, 0]]);
        let mut values = divisor_from_summand(&q, &q).unwrap().values;
        values[0] += rat(1);
        let d = DivisorData::from_values(&q, values).unwrap();
        assert!(!d.is_cartier());
        assert!(!d.is_nef());
    }

    #[test]
    fn smooth_fan_values_are_always_cartier() {
        let q5 = poly(&[[-1, -1], [0, -1], [1, 0], [1, 1], [0, 1], [-1, 0]]);
        let mut values = divisor_from_summand(&q5, &q5).unwrap().values;
        values[2] += rat(3);
        let d = DivisorData::from_values(&q5, values).unwrap();
        assert!(d.is_cartier());
        assert!(!d.is_nef());
    }
}
