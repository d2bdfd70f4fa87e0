use std::cmp::Ordering;
use std::fmt::Write as _;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{dot_rat, rat, to_i64, EchelonBasis, Int, IntVector, RatVector, Rational};

use super::cone::{Cone, Face, LatticeContext};
use super::dd::extreme_rays;

/// Convex hull of finitely many rational points.
///
/// Vertices are exactly the extreme points. Polygons in the plane are
/// stored counterclockwise from the lexicographically smallest vertex,
/// every other polytope lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    ctx: LatticeContext,
    vertices: Vec<RatVector>,
    dim: usize,
}

/// Inequalities `<x, -c> <= eta` of a full-dimensional polytope, one per facet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetData {
    pub normals: Vec<IntVector>,
    pub offsets: Vec<Rational>,
    /// Vertex indices on each facet.
    pub incidence: Vec<Vec<usize>>,
}

impl FacetData {
    /// The pair `[c, eta]` as one rational vector.
    pub fn pair(&self, v: usize) -> RatVector {
        let mut p: RatVector = self.normals[v].iter().map(|&x| rat(x)).collect();
        p.push(self.offsets[v].clone());
        p
    }

    /// Facets containing vertex `i`.
    pub fn facets_at(&self, i: usize) -> Vec<usize> {
        (0..self.normals.len())
            .filter(|&v| self.incidence[v].contains(&i))
            .collect()
    }
}

pub(crate) fn format_rat_vector(v: &[Rational]) -> String {
    let mut s = String::from("(");
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{x}");
    }
    s.push(')');
    s
}

/// Integer multiple `(l x, l)` of `(x, 1)`, primitive.
fn homogenize(x: &[Rational]) -> IntVector {
    let l = x.iter().fold(Int::one(), |l, q| l.lcm(q.denom()));
    let mut v: IntVector = x
        .iter()
        .map(|q| to_i64(&(q * Rational::from_integer(l.clone())).to_integer()))
        .collect();
    v.push(to_i64(&l));
    v
}

/// Affine dimension and a set of coordinates on which the projection of
/// the affine hull is injective.
fn affine_pivots(points: &[RatVector], ambient: usize) -> Vec<usize> {
    let mut basis = EchelonBasis::new(ambient);
    for p in &points[1..] {
        let d: RatVector = p.iter().zip(&points[0]).map(|(a, b)| a - b).collect();
        basis.insert_rational(&d);
    }
    let mut piv = basis.pivot_columns();
    piv.sort();
    piv
}

fn project(p: &[Rational], cols: &[usize]) -> RatVector {
    cols.iter().map(|&c| p[c].clone()).collect()
}

fn cross(o: &[Rational], a: &[Rational], b: &[Rational]) -> Rational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

impl LatticePolytope {
    /// Convex hull of `points` in an ambient space of rank `ambient`.
    pub fn from_points(ambient: usize, points: &[RatVector]) -> Result<LatticePolytope> {
        let ctx = LatticeContext::new(ambient);
        for p in points {
            if p.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: p.len(),
                });
            }
        }
        let mut pts: Vec<RatVector> = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.is_empty() {
            return Err(Error::EmptyPolytope);
        }
        let piv = affine_pivots(&pts, ambient);
        let dim = piv.len();
        let mut vertices: Vec<RatVector> = if dim == 0 {
            pts
        } else {
            let gens: Vec<IntVector> = pts.iter().map(|p| homogenize(&project(p, &piv))).collect();
            let facets = extreme_rays(&gens, dim + 1)?;
            pts.into_iter()
                .zip(&gens)
                .filter(|(_, g)| {
                    let tight: Vec<IntVector> = facets
                        .iter()
                        .filter(|f| crate::linalg::dot(f, g) == 0)
                        .cloned()
                        .collect();
                    crate::linalg::rank_i64(&tight, dim + 1) == dim
                })
                .map(|(p, _)| p)
                .collect()
        };
        if dim == 2 && ambient == 2 {
            // lexicographically smallest first (already sorted), then by angle
            let v0 = vertices[0].clone();
            vertices[1..].sort_by(|a, b| {
                let c = cross(&v0, a, b);
                if c.is_positive() {
                    Ordering::Less
                } else if c.is_negative() {
                    Ordering::Greater
                } else {
                    Ordering::Equal
                }
            });
        }
        Ok(LatticePolytope { ctx, vertices, dim })
    }

    pub fn from_int_points(ambient: usize, points: &[IntVector]) -> Result<LatticePolytope> {
        let pts: Vec<RatVector> = points.iter().map(|p| p.iter().map(|&x| rat(x)).collect()).collect();
        LatticePolytope::from_points(ambient, &pts)
    }

    pub fn context(&self) -> LatticeContext {
        self.ctx
    }

    pub fn ambient_rank(&self) -> usize {
        self.ctx.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ctx.rank
    }

    pub fn is_polygon(&self) -> bool {
        self.dim == 2 && self.ctx.rank == 2
    }

    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(|v| v.iter().all(|x| x.is_integer()))
    }

    pub fn int_vertices(&self) -> Result<Vec<IntVector>> {
        self.vertices
            .iter()
            .map(|v| {
                if v.iter().all(|x| x.is_integer()) {
                    Ok(v.iter().map(|x| to_i64(&x.to_integer())).collect())
                } else {
                    Err(Error::NonLatticeVertex(format_rat_vector(v)))
                }
            })
            .collect()
    }

    pub fn translate(&self, t: &[Rational]) -> LatticePolytope {
        let pts: Vec<RatVector> = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(t).map(|(a, b)| a + b).collect())
            .collect();
        LatticePolytope::from_points(self.ctx.rank, &pts).expect("translation preserves the hull")
    }

    pub fn minkowski_sum(&self, other: &LatticePolytope) -> Result<LatticePolytope> {
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        LatticePolytope::from_points(self.ctx.rank, &pts)
    }

    /// Isomorphic copy in the coordinates of its own affine hull: the same
    /// points projected to a set of coordinates injective on that hull.
    pub fn full_dimensional_model(&self) -> LatticePolytope {
        let piv = affine_pivots(&self.vertices, self.ctx.rank);
        let pts: Vec<RatVector> = self.vertices.iter().map(|v| project(v, &piv)).collect();
        LatticePolytope::from_points(piv.len(), &pts).expect("projection of a nonempty hull")
    }

    /// The cone over the polytope placed at height one in its affine-hull
    /// coordinates; ray `i` corresponds to vertex `i`.
    fn hull_cone(&self) -> Cone {
        let piv = affine_pivots(&self.vertices, self.ctx.rank);
        let gens: Vec<IntVector> = self.vertices.iter().map(|v| homogenize(&project(v, &piv))).collect();
        let c = Cone::from_generators(piv.len() + 1, &gens).expect("cone over a polytope is pointed");
        debug_assert_eq!(c.rays().len(), self.vertices.len());
        c
    }

    /// Faces as vertex index sets, sorted by dimension. The empty face is
    /// omitted.
    pub fn face_lattice(&self) -> Vec<Face> {
        self.hull_cone()
            .face_lattice()
            .into_iter()
            .filter(|f| f.dim > 0)
            .map(|f| Face {
                dim: f.dim - 1,
                indices: f.indices,
            })
            .collect()
    }

    pub fn faces(&self, d: usize) -> Vec<Face> {
        self.face_lattice().into_iter().filter(|f| f.dim == d).collect()
    }

    /// Edges as vertex index pairs. For polygons edge `i` joins vertex `i`
    /// to vertex `i + 1` (cyclically).
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertices.len();
        if self.dim == 2 && self.ctx.rank == 2 {
            return (0..n).map(|i| (i, (i + 1) % n)).collect();
        }
        if self.dim == 1 {
            return vec![(0, 1)];
        }
        self.faces(1)
            .into_iter()
            .map(|f| (f.indices[0], f.indices[1]))
            .collect()
    }

    /// Edge vectors `v_j - v_i` for the edges listed by [`Self::edges`].
    pub fn edge_vectors(&self) -> Vec<RatVector> {
        self.edges()
            .into_iter()
            .map(|(i, j)| {
                self.vertices[j]
                    .iter()
                    .zip(&self.vertices[i])
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect()
    }

    /// Inner facet normals and offsets. The polytope must be full-dimensional.
    pub fn facet_data(&self) -> Result<FacetData> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional {
                expected: self.ctx.rank,
                found: self.dim,
            });
        }
        let d = self.ctx.rank;
        let gens: Vec<IntVector> = self.vertices.iter().map(|v| homogenize(v)).collect();
        let raw = extreme_rays(&gens, d + 1)?;
        let mut facets: Vec<(Vec<usize>, IntVector, Rational)> = raw
            .into_iter()
            .map(|f| {
                let g = crate::linalg::gcd_all(&f[..d]);
                let c: IntVector = f[..d].iter().map(|&x| x / g).collect();
                let eta = Rational::new(Int::from(f[d]), Int::from(g));
                let inc: Vec<usize> = (0..gens.len())
                    .filter(|&i| crate::linalg::dot(&f, &gens[i]) == 0)
                    .collect();
                (inc, c, eta)
            })
            .collect();
        if self.is_polygon() {
            let n = self.vertices.len();
            let key = |inc: &Vec<usize>| {
                if inc[0] == 0 && inc[1] == n - 1 {
                    n - 1
                } else {
                    inc[0]
                }
            };
            facets.sort_by_key(|(inc, _, _)| key(inc));
        } else {
            facets.sort();
        }
        let fd = FacetData {
            normals: facets.iter().map(|f| f.1.clone()).collect(),
            offsets: facets.iter().map(|f| f.2.clone()).collect(),
            incidence: facets.into_iter().map(|f| f.0).collect(),
        };
        for (c, eta) in fd.normals.iter().zip(&fd.offsets) {
            let cr: RatVector = c.iter().map(|&x| rat(-x)).collect();
            assert!(
                self.vertices.iter().all(|v| dot_rat(v, &cr) <= *eta),
                "facet orientation drifted"
            );
        }
        Ok(fd)
    }

    /// Lattice points strictly inside; empty unless full-dimensional.
    pub fn interior_lattice_points(&self) -> Vec<IntVector> {
        if !self.is_full_dimensional() {
            return Vec::new();
        }
        let fd = self.facet_data().expect("full-dimensional");
        let d = self.ctx.rank;
        let lo: Vec<i64> = (0..d)
            .map(|k| {
                self.vertices
                    .iter()
                    .map(|v| to_i64(&v[k].floor().to_integer()))
                    .min()
                    .unwrap()
            })
            .collect();
        let hi: Vec<i64> = (0..d)
            .map(|k| {
                self.vertices
                    .iter()
                    .map(|v| to_i64(&v[k].ceil().to_integer()))
                    .max()
                    .unwrap()
            })
            .collect();
        let mut out = Vec::new();
        let mut x = lo.clone();
        loop {
            let inside = fd.normals.iter().zip(&fd.offsets).all(|(c, eta)| {
                let s: i64 = crate::linalg::dot(&x, c);
                rat(s) + eta > Rational::zero()
            });
            if inside {
                out.push(x.clone());
            }
            let mut k = 0;
            loop {
                if k == d {
                    return out;
                }
                if x[k] < hi[k] {
                    x[k] += 1;
                    break;
                }
                x[k] = lo[k];
                k += 1;
            }
        }
    }

    /// The polar `{r : <x, r> <= 1 for x in Q}`; the origin must be interior.
    /// The result may be a rational polytope.
    pub fn polar(&self) -> Result<LatticePolytope> {
        let fd = self.facet_data().map_err(|_| Error::OriginNotInterior)?;
        if fd.offsets.iter().any(|eta| !eta.is_positive()) {
            return Err(Error::OriginNotInterior);
        }
        let pts: Vec<RatVector> = fd
            .normals
            .iter()
            .zip(&fd.offsets)
            .map(|(c, eta)| c.iter().map(|&x| rat(-x) / eta).collect())
            .collect();
        LatticePolytope::from_points(self.ctx.rank, &pts)
    }

    pub fn is_reflexive(&self) -> bool {
        if !self.is_full_dimensional() || !self.is_lattice() {
            return false;
        }
        let inner = self.interior_lattice_points();
        if inner.len() != 1 {
            return false;
        }
        let shift: RatVector = inner[0].iter().map(|&x| rat(-x)).collect();
        match self.translate(&shift).polar() {
            Ok(p) => p.is_lattice(),
            Err(_) => false,
        }
    }

    /// Whether every edge vector is primitive (lattice polygons).
    pub fn has_primitive_edges(&self) -> bool {
        self.edge_vectors().iter().all(|e| {
            e.iter().all(|x| x.is_integer()) && e.iter().fold(Int::zero(), |g, x| g.gcd(&x.to_integer())).is_one()
        })
    }
}

/// Cone in rank `d + 1` over a lattice polytope in rank `d`, rays `(v, 1)`
/// in vertex order.
pub fn cone_over_polytope(q: &LatticePolytope) -> Result<Cone> {
    let verts = q.int_vertices()?;
    let gens: Vec<IntVector> = verts
        .into_iter()
        .map(|mut v| {
            v.push(1);
            v
        })
        .collect();
    Cone::from_generators(q.ambient_rank() + 1, &gens)
}

pub fn polar_polytope(q: &LatticePolytope) -> Result<LatticePolytope> {
    q.polar()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(points: &[[i64; 2]]) -> LatticePolytope {
        LatticePolytope::from_int_points(2, &points.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn hull_drops_interior_and_orders_ccw() {
        let p = poly(&[[1, 1], [0, 0], [2, 0], [1, 0], [0, 2], [2, 2]]);
        assert_eq!(
            p.int_vertices().unwrap(),
            vec![vec![0, 0], vec![2, 0], vec![2, 2], vec![0, 2]]
        );
        let sum = p.edge_vectors().into_iter().fold(vec![Rational::zero(); 2], |acc, e| {
            acc.iter().zip(&e).map(|(a, b)| a + b).collect()
        });
        assert!(sum.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn unit_square_facets() {
        let p = poly(&[[0, 0], [1, 0], [1, 1], [0, 1]]);
        let fd = p.facet_data().unwrap();
        let pairs: Vec<(IntVector, Rational)> = fd.normals.iter().cloned().zip(fd.offsets.iter().cloned()).collect();
        assert_eq!(
            pairs,
            vec![
                (vec![0, 1], rat(0)),
                (vec![-1, 0], rat(1)),
                (vec![0, -1], rat(1)),
                (vec![1, 0], rat(0))
            ]
        );
        for inc in &fd.incidence {
            assert_eq!(inc.len(), 2);
        }
    }

    #[test]
    fn facet_tightness_on_two_vertices() {
        for q in [
            poly(&[[-1, -1], [0, 1], [1, 0]]),
            poly(&[[-1, 1], [-1, 0], [1, -1], [1, 0]]),
        ] {
            let fd = q.facet_data().unwrap();
            assert_eq!(fd.normals.len(), q.vertices().len());
            assert!(fd.incidence.iter().all(|inc| inc.len() == 2));
        }
    }

    #[test]
    fn polars() {
        let diamond = poly(&[[1, 0], [0, 1], [-1, 0], [0, -1]]);
        let sq = diamond.polar().unwrap();
        assert_eq!(
            sq.int_vertices().unwrap(),
            vec![vec![-1, -1], vec![1, -1], vec![1, 1], vec![-1, 1]]
        );
        assert_eq!(sq.polar().unwrap(), diamond);
        let q1 = poly(&[[-1, 1], [-1, 0], [1, -1], [1, 0]]);
        let mut got = q1.polar().unwrap().int_vertices().unwrap();
        got.sort();
        assert_eq!(got, vec![vec![-1, -2], vec![-1, 0], vec![1, 0], vec![1, 2]]);
        assert_eq!(poly(&[[0, 0], [1, 0], [0, 1]]).polar(), Err(Error::OriginNotInterior));
    }

    #[test]
    fn interior_points() {
        assert!(poly(&[[0, 0], [1, 0], [1, 1], [0, 1]])
            .interior_lattice_points()
            .is_empty());
        assert_eq!(
            poly(&[[0, 0], [2, 0], [2, 2], [0, 2]]).interior_lattice_points(),
            vec![vec![1, 1]]
        );
        let q5 = poly(&[[-1, -1], [0, -1], [1, 0], [1, 1], [0, 1], [-1, 0]]);
        assert_eq!(q5.interior_lattice_points(), vec![vec![0, 0]]);
    }

    #[test]
    fn reflexivity() {
        assert!(poly(&[[-1, -1], [-1, 0], [1, 1], [0, -1]]).is_reflexive());
        assert!(!poly(&[[0, 0], [1, 0], [1, 1], [0, 1]]).is_reflexive());
        assert!(poly(&[[0, 0], [3, 0], [0, 3]]).is_reflexive());
        assert!(poly(&[[0, 0], [4, 0], [0, 2]]).is_reflexive());
        assert!(!poly(&[[0, 0], [4, 0], [0, 4]]).is_reflexive());
    }

    #[test]
    fn rational_polar_is_reported_as_rational() {
        let p = poly(&[[-2, -1], [2, -1], [2, 1], [-2, 1]]);
        let polar = p.polar().unwrap();
        assert!(!polar.is_lattice());
        assert!(polar.int_vertices().is_err());
    }

    #[test]
    fn cone_over_polygon_counts() {
        let q5 = poly(&[[-1, -1], [0, -1], [1, 0], [1, 1], [0, 1], [-1, 0]]);
        let c = cone_over_polytope(&q5).unwrap();
        assert_eq!(c.rays().len(), 6);
        assert_eq!(c.faces(2).len(), 6);
        assert!(c.smooth_in_codim2());
        assert!(q5.has_primitive_edges());
        let seg = LatticePolytope::from_int_points(1, &[vec![0], vec![1]]).unwrap();
        assert_eq!(cone_over_polytope(&seg).unwrap().rays(), &[vec![0, 1], vec![1, 1]]);
        let t = poly(&[[0, 0], [2, 0], [0, 1]]);
        assert!(!cone_over_polytope(&t).unwrap().smooth_in_codim2());
        assert!(!t.has_primitive_edges());
    }

    #[test]
    fn lower_dimensional_faces_and_models() {
        let seg = LatticePolytope::from_int_points(3, &[vec![0, 0, 1], vec![2, 2, 1], vec![1, 1, 1]]).unwrap();
        assert_eq!(seg.dim(), 1);
        assert_eq!(seg.vertices().len(), 2);
        assert!(seg.facet_data().is_err());
        assert_eq!(seg.full_dimensional_model().dim(), 1);
        let cube: Vec<IntVector> = (0..8).map(|i| vec![i & 1, (i >> 1) & 1, (i >> 2) & 1]).collect();
        let c = LatticePolytope::from_int_points(3, &cube).unwrap();
        assert_eq!(c.faces(2).len(), 6);
        assert_eq!(c.edges().len(), 12);
        assert_eq!(c.faces(0).len(), 8);
    }
}
