use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::linalg::{dot, elementary_divisors, primitive, rank_i64, IntMatrix, IntVector};
use num_traits::One;

use super::dd::extreme_rays;

/// The dual pair `N`, `M` of free modules of rank `rank`, paired by the dot
/// product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeContext {
    pub rank: usize,
}

impl LatticeContext {
    pub fn new(rank: usize) -> Self {
        LatticeContext { rank }
    }

    pub fn check(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: v.len(),
            });
        }
        Ok(())
    }

    pub fn pairing(&self, n: &[i64], m: &[i64]) -> i64 {
        debug_assert_eq!(n.len(), self.rank);
        dot(n, m)
    }
}

/// A face of a cone (ray indices) or of a polytope (vertex indices).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face {
    pub dim: usize,
    pub indices: Vec<usize>,
}

/// Full-dimensional pointed rational polyhedral cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    ctx: LatticeContext,
    rays: Vec<IntVector>,
    facets: Vec<IntVector>,
}

impl Cone {
    /// Cone generated by `generators`. Zero vectors are skipped, generators
    /// are made primitive, and non-extreme ones are dropped; the surviving
    /// rays keep their input order.
    pub fn from_generators(rank: usize, generators: &[IntVector]) -> Result<Cone> {
        let ctx = LatticeContext::new(rank);
        let mut prims: Vec<IntVector> = Vec::new();
        for g in generators {
            ctx.check(g)?;
            if let Ok(p) = primitive(g) {
                if !prims.contains(&p) {
                    prims.push(p);
                }
            }
        }
        let facets = extreme_rays(&prims, rank)?;
        if rank_i64(&facets, rank) < rank {
            return Err(Error::NotPointed);
        }
        let rays = prims
            .into_iter()
            .filter(|r| {
                let tight: Vec<IntVector> = facets.iter().filter(|f| dot(f, r) == 0).cloned().collect();
                rank_i64(&tight, rank) + 1 == rank
            })
            .collect();
        Ok(Cone { ctx, rays, facets })
    }

    /// The cone `{y : <n, y> >= 0 for all n in normals}`.
    pub fn from_inequalities(rank: usize, normals: &[IntVector]) -> Result<Cone> {
        Ok(Cone::from_generators(rank, normals)?.dual())
    }

    pub fn context(&self) -> LatticeContext {
        self.ctx
    }

    pub fn rank(&self) -> usize {
        self.ctx.rank
    }

    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    pub fn facet_normals(&self) -> &[IntVector] {
        &self.facets
    }

    /// The dual cone; rays and facet normals trade places.
    pub fn dual(&self) -> Cone {
        Cone {
            ctx: self.ctx,
            rays: self.facets.clone(),
            facets: self.rays.clone(),
        }
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.facets.iter().all(|f| dot(f, v) >= 0)
    }

    pub fn contains_in_interior(&self, v: &[i64]) -> bool {
        self.facets.iter().all(|f| dot(f, v) > 0)
    }

    /// Ray indices on the facet with normal index `f`.
    pub fn facet_rays(&self, f: usize) -> Vec<usize> {
        (0..self.rays.len())
            .filter(|&i| dot(&self.rays[i], &self.facets[f]) == 0)
            .collect()
    }

    fn face_dim(&self, indices: &[usize]) -> usize {
        let rows: Vec<IntVector> = indices.iter().map(|&i| self.rays[i].clone()).collect();
        rank_i64(&rows, self.rank())
    }

    /// Whole face lattice, sorted by dimension and then by ray indices.
    pub fn face_lattice(&self) -> Vec<Face> {
        let facet_sets: Vec<BTreeSet<usize>> = (0..self.facets.len())
            .map(|f| self.facet_rays(f).into_iter().collect())
            .collect();
        let full: BTreeSet<usize> = (0..self.rays.len()).collect();
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut queue = VecDeque::from([full.clone()]);
        seen.insert(full);
        while let Some(s) = queue.pop_front() {
            for fs in &facet_sets {
                let t: BTreeSet<usize> = s.intersection(fs).copied().collect();
                if seen.insert(t.clone()) {
                    queue.push_back(t);
                }
            }
        }
        let mut faces: Vec<Face> = seen
            .into_iter()
            .map(|s| {
                let indices: Vec<usize> = s.into_iter().collect();
                Face {
                    dim: self.face_dim(&indices),
                    indices,
                }
            })
            .collect();
        faces.sort();
        faces
    }

    pub fn faces(&self, d: usize) -> Vec<Face> {
        self.face_lattice().into_iter().filter(|f| f.dim == d).collect()
    }

    /// First 2-face whose two rays are not part of a lattice basis.
    pub fn singular_two_face(&self) -> Option<(usize, usize)> {
        self.faces(2).into_iter().find_map(|f| {
            let (i, j) = (f.indices[0], f.indices[1]);
            let m = IntMatrix::from_i64_rows(self.rank(), &[self.rays[i].clone(), self.rays[j].clone()]);
            (!elementary_divisors(&m).iter().all(|d| d.is_one())).then_some((i, j))
        })
    }

    pub fn smooth_in_codim2(&self) -> bool {
        self.singular_two_face().is_none()
    }

    /// Whether the face is generated by part of a lattice basis.
    pub fn face_is_smooth(&self, face: &Face) -> bool {
        if face.indices.len() != face.dim {
            return false;
        }
        if face.dim == 0 {
            return true;
        }
        let rows: Vec<IntVector> = face.indices.iter().map(|&i| self.rays[i].clone()).collect();
        let m = IntMatrix::from_i64_rows(self.rank(), &rows);
        elementary_divisors(&m).iter().all(|d| d.is_one())
    }

    /// Every proper face is smooth.
    pub fn is_isolated(&self) -> bool {
        self.face_lattice()
            .iter()
            .filter(|f| f.dim < self.rank())
            .all(|f| self.face_is_smooth(f))
    }
}

pub fn dual_cone(c: &Cone) -> Cone {
    c.dual()
}
