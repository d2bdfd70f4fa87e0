//! Hilbert bases and the degree-filtered subsets used by the T1 formulas.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::Result;
use crate::linalg::{dot, snf, solve, to_i64, IntMatrix, IntVector, RatMatrix, RatVector, Rational};
use crate::polyhedral::{Cone, Face, LatticePolytope};

/// Minimal generating set of the lattice points of a pointed cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupBasis {
    pub cone: Cone,
    /// Sorted by grade (a fixed functional positive on the cone), then
    /// lexicographically.
    pub elements: Vec<IntVector>,
}

/// The sets `E_i = {s : 0 <= <a^i, s> < <a^i, R>}` as indices into the basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeFiltration {
    pub degree: IntVector,
    pub subsets: Vec<Vec<usize>>,
    pub union: Vec<usize>,
}

/// Fundamental generators `[c, eta]` of the dual of the cone over a
/// polytope, with `F_i` the facets through vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalFiltration {
    pub pairs: Vec<RatVector>,
    pub subsets: Vec<Vec<usize>>,
    pub union: Vec<usize>,
}

fn simplicial_pieces(lattice: &[Face], face: &Face, out: &mut Vec<Vec<usize>>) {
    if face.indices.len() == face.dim {
        out.push(face.indices.clone());
        return;
    }
    let apex = face.indices[0];
    for sub in lattice.iter().filter(|f| {
        f.dim + 1 == face.dim && !f.indices.contains(&apex) && f.indices.iter().all(|i| face.indices.contains(i))
    }) {
        let mut pieces = Vec::new();
        simplicial_pieces(lattice, sub, &mut pieces);
        for mut p in pieces {
            p.push(apex);
            p.sort();
            out.push(p);
        }
    }
}

/// Pulling triangulation of a cone by its own rays.
pub(crate) fn triangulate(c: &Cone) -> Vec<Vec<usize>> {
    let lattice = c.face_lattice();
    let top = lattice.last().expect("cone has a top face").clone();
    let mut out = Vec::new();
    simplicial_pieces(&lattice, &top, &mut out);
    out
}

/// Lattice points `sum l_j r_j` with `0 <= l_j < 1`.
fn parallelepiped_points(rays: &[IntVector]) -> Vec<IntVector> {
    let d = rays.len();
    let b = IntMatrix::from_i64_rows(d, rays);
    let (s, _, v) = snf(&b);
    // Z^d B = Z^d S V^{-1}, so the rows of V^{-1} scaled by the diagonal of S
    // span the row lattice of B.
    let vinv = crate::linalg::unimodular_inverse(&v);
    let diag: Vec<i64> = (0..d).map(|i| to_i64(s.get(i, i))).collect();
    let gens: Vec<IntVector> = (0..d).map(|i| vinv.row(i).iter().map(to_i64).collect()).collect();
    let br = RatMatrix::from_i64_rows(d, rays).transpose();
    let mut out = Vec::new();
    let mut k = vec![0i64; d];
    loop {
        let x: IntVector = (0..d).map(|c| (0..d).map(|i| k[i] * gens[i][c]).sum()).collect();
        // reduce into the half-open parallelepiped
        let xr: RatVector = x.iter().map(|&t| Rational::from_integer(t.into())).collect();
        let lam = solve(&br, &xr).expect("simplicial rays are independent");
        let floors: Vec<i64> = lam.iter().map(|l| to_i64(&l.floor().to_integer())).collect();
        let reduced: IntVector = (0..d)
            .map(|c| x[c] - (0..d).map(|j| floors[j] * rays[j][c]).sum::<i64>())
            .collect();
        out.push(reduced);
        let mut i = 0;
        loop {
            if i == d {
                return out;
            }
            k[i] += 1;
            if k[i] < diag[i] {
                break;
            }
            k[i] = 0;
            i += 1;
        }
    }
}

/// Hilbert basis of `c`: the irreducible elements of its lattice points.
pub fn hilbert_basis(c: &Cone) -> SemigroupBasis {
    let grade_vec: IntVector = (0..c.rank())
        .map(|k| c.facet_normals().iter().map(|n| n[k]).sum())
        .collect();
    let mut candidates: BTreeSet<(i64, IntVector)> = BTreeSet::new();
    for r in c.rays() {
        candidates.insert((dot(&grade_vec, r), r.clone()));
    }
    for simplex in triangulate(c) {
        let rays: Vec<IntVector> = simplex.iter().map(|&i| c.rays()[i].clone()).collect();
        for p in parallelepiped_points(&rays) {
            if p.iter().any(|&x| x != 0) {
                candidates.insert((dot(&grade_vec, &p), p));
            }
        }
    }
    let mut elements: Vec<IntVector> = Vec::new();
    for (_, x) in candidates {
        let reducible = elements.iter().any(|h| {
            let diff: IntVector = x.iter().zip(h).map(|(a, b)| a - b).collect();
            diff.iter().any(|&t| t != 0) && c.contains(&diff)
        });
        if !reducible {
            elements.push(x);
        }
    }
    SemigroupBasis {
        cone: c.clone(),
        elements,
    }
}

pub fn degree_filtration(b: &SemigroupBasis, rays: &[IntVector], degree: &[i64]) -> DegreeFiltration {
    degree_filtration_of(&b.elements, rays, degree)
}

/// Same as [`degree_filtration`] for an arbitrary generating list.
pub fn degree_filtration_of(elements: &[IntVector], rays: &[IntVector], degree: &[i64]) -> DegreeFiltration {
    let subsets: Vec<Vec<usize>> = rays
        .iter()
        .map(|a| {
            let bound = dot(a, degree);
            (0..elements.len())
                .filter(|&s| {
                    let v = dot(a, &elements[s]);
                    0 <= v && v < bound
                })
                .collect()
        })
        .collect();
    let union: BTreeSet<usize> = subsets.iter().flatten().copied().collect();
    DegreeFiltration {
        degree: degree.to_vec(),
        subsets,
        union: union.into_iter().collect(),
    }
}

/// Requires a full-dimensional polytope.
pub fn fundamental_filtration(q: &LatticePolytope) -> Result<FundamentalFiltration> {
    let fd = q.facet_data()?;
    let pairs: Vec<RatVector> = (0..fd.normals.len()).map(|v| fd.pair(v)).collect();
    let subsets: Vec<Vec<usize>> = (0..q.vertices().len()).map(|i| fd.facets_at(i)).collect();
    let union: BTreeSet<usize> = subsets.iter().flatten().copied().collect();
    debug_assert!(pairs.iter().all(|p| !p.iter().all(|x| x.is_zero())));
    Ok(FundamentalFiltration {
        pairs,
        subsets,
        union: union.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedral::cone_over_polytope;
    use proptest::prelude::*;

    /// Irreducible lattice points of the cone up to grade `max_grade`, found by
    /// enumerating every lattice point of at most that grade.
    fn brute_force(c: &Cone, max_grade: i64) -> Vec<IntVector> {
        let d = c.rank();
        let grade_vec: IntVector = (0..d).map(|k| c.facet_normals().iter().map(|n| n[k]).sum()).collect();
        let bound = c
            .rays()
            .iter()
            .map(|r| {
                let g = dot(&grade_vec, r);
                r.iter().map(|x| (x.abs() * max_grade + g - 1) / g).max().unwrap()
            })
            .max()
            .unwrap();
        let mut pts = Vec::new();
        let mut x = vec![-bound; d];
        loop {
            if x.iter().any(|&t| t != 0) && c.contains(&x) && dot(&grade_vec, &x) <= max_grade {
                pts.push(x.clone());
            }
            let mut k = 0;
            loop {
                if k == d {
                    let set: BTreeSet<IntVector> = pts.iter().cloned().collect();
                    let mut out: Vec<IntVector> = pts
                        .iter()
                        .filter(|p| {
                            !pts.iter().any(|a| {
                                let b: IntVector = p.iter().zip(a).map(|(u, v)| u - v).collect();
                                set.contains(&b)
                            })
                        })
                        .cloned()
                        .collect();
                    out.sort();
                    return out;
                }
                if x[k] < bound {
                    x[k] += 1;
                    break;
                }
                x[k] = -bound;
                k += 1;
            }
        }
    }

    fn oracle_for(c: &Cone, hb: &[IntVector]) -> Vec<IntVector> {
        let grade_vec: IntVector = (0..c.rank())
            .map(|k| c.facet_normals().iter().map(|n| n[k]).sum())
            .collect();
        let g = hb.iter().map(|h| dot(&grade_vec, h)).max().unwrap();
        brute_force(c, g + 2)
    }

    fn sorted(mut v: Vec<IntVector>) -> Vec<IntVector> {
        v.sort();
        v
    }

    #[test]
    fn quadrant() {
        let c = Cone::from_generators(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(sorted(hilbert_basis(&c).elements), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn skew_cone_matches_brute_force() {
        let c = Cone::from_generators(2, &[vec![1, 0], vec![1, 2]]).unwrap();
        let hb = sorted(hilbert_basis(&c).elements);
        assert_eq!(hb, vec![vec![1, 0], vec![1, 1], vec![1, 2]]);
        assert_eq!(hb, oracle_for(&c, &hb));
    }

    #[test]
    fn dual_of_triangle_cone_matches_brute_force() {
        let q2 = LatticePolytope::from_int_points(2, &[vec![-1, -1], vec![0, 1], vec![1, 0]]).unwrap();
        let dual = cone_over_polytope(&q2).unwrap().dual();
        let hb = sorted(hilbert_basis(&dual).elements);
        assert_eq!(hb, oracle_for(&dual, &hb));
        for r in dual.rays() {
            assert!(hb.contains(r));
        }
    }

    #[test]
    fn degree_filtration_examples() {
        let q1 = LatticePolytope::from_int_points(2, &[vec![-1, 1], vec![-1, 0], vec![1, -1], vec![1, 0]]).unwrap();
        let c = cone_over_polytope(&q1).unwrap();
        let hb = hilbert_basis(&c.dual());
        let f = degree_filtration(&hb, c.rays(), &[0, 0, -1]);
        assert!(f.union.is_empty());
        let f = degree_filtration(&hb, c.rays(), &[0, 0, 1]);
        for (i, a) in c.rays().iter().enumerate() {
            let expect: Vec<usize> = (0..hb.elements.len())
                .filter(|&s| dot(a, &hb.elements[s]) == 0)
                .collect();
            assert_eq!(f.subsets[i], expect);
        }
        let q2 = LatticePolytope::from_int_points(2, &[vec![-1, -1], vec![0, 1], vec![1, 0]]).unwrap();
        let c = cone_over_polytope(&q2).unwrap();
        let hb = hilbert_basis(&c.dual());
        let f = degree_filtration(&hb, c.rays(), &[0, 0, 2]);
        for (i, a) in c.rays().iter().enumerate() {
            for (s, e) in hb.elements.iter().enumerate() {
                if dot(a, e) <= 1 {
                    assert!(f.subsets[i].contains(&s));
                }
            }
        }
    }

    #[test]
    fn fundamental_filtration_counts() {
        let sq = LatticePolytope::from_int_points(2, &[vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 1]]).unwrap();
        let f = fundamental_filtration(&sq).unwrap();
        assert!(f.subsets.iter().all(|s| s.len() == 2));
        let q5 = LatticePolytope::from_int_points(
            2,
            &[
                vec![-1, -1],
                vec![0, -1],
                vec![1, 0],
                vec![1, 1],
                vec![0, 1],
                vec![-1, 0],
            ],
        )
        .unwrap();
        let f = fundamental_filtration(&q5).unwrap();
        assert_eq!(f.pairs.len(), 6);
        assert!(f.subsets.iter().all(|s| s.len() == 2));
        // fundamental generators lie in the Hilbert basis
        let hb = hilbert_basis(&cone_over_polytope(&q5).unwrap().dual());
        for p in &f.pairs {
            let v: IntVector = p.iter().map(|x| to_i64(&x.to_integer())).collect();
            assert!(hb.elements.contains(&v));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn random_cones_match_brute_force(
            gens in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 3..6)
        ) {
            let Ok(c) = Cone::from_generators(3, &gens) else { return Ok(()) };
            let hb = sorted(hilbert_basis(&c).elements);
            prop_assume!(hb.len() <= 40);
            let oracle = oracle_for(&c, &hb);
            prop_assert_eq!(hb, oracle);
        }
    }
}
