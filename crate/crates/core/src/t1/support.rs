use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{dot, integer_solve, lattice_kernel, IntVector, RatVector, Rational};
use crate::minkowski::tilde_t1;
use crate::polyhedral::{Cone, Face, LatticePolytope};

use super::{check_gorenstein, GorensteinData, T1Context};

/// Data of the variety attached to a face `tau`: a basis of the saturated
/// sublattice spanned by `tau`, the cone `tau` in those coordinates, and the
/// degree induced on the quotient of `M` by `tau^perp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceReduction {
    pub face: Face,
    pub basis: Vec<IntVector>,
    pub reduced: Cone,
    pub image_degree: IntVector,
}

pub fn face_reduction(c: &Cone, r: &[i64]) -> Result<FaceReduction> {
    c.context().check(r)?;
    let rays = c.rays();
    let indices: Vec<usize> = (0..rays.len()).filter(|&i| dot(&rays[i], r) >= 1).collect();
    if indices.is_empty() {
        return Err(Error::NoQualifyingFace(format!("no ray pairs positively with {r:?}")));
    }
    let face = c
        .face_lattice()
        .into_iter()
        .find(|f| f.indices == indices)
        .ok_or_else(|| Error::NoQualifyingFace(format!("rays {indices:?} positive on {r:?} span no face")))?;
    let d = c.rank();
    let face_rays: Vec<IntVector> = indices.iter().map(|&i| rays[i].clone()).collect();
    let basis = lattice_kernel(&lattice_kernel(&face_rays, d), d);
    let k = basis.len();
    // coordinates x with sum_j x_j b_j = a
    let columns: Vec<IntVector> = (0..d).map(|t| basis.iter().map(|b| b[t]).collect()).collect();
    let coords: Vec<IntVector> = face_rays
        .iter()
        .map(|a| integer_solve(&columns, k, a).expect("ray lies in its saturated span").0)
        .collect();
    let reduced = Cone::from_generators(k, &coords)?;
    let image_degree = basis.iter().map(|b| dot(b, r)).collect();
    Ok(FaceReduction {
        face,
        basis,
        reduced,
        image_degree,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleOptions {
    /// Samples of smallest depth below the region's apex.
    pub minimal: usize,
    /// Further seeded random samples deeper inside infinite regions.
    pub random: usize,
    pub seed: u64,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions {
            minimal: 3,
            random: 2,
            seed: 0,
        }
    }
}

/// The degrees `-R*/g + int(dual cone of sigma cut by tau^perp)` for one
/// face `tau`, on whose lattice points T1 has constant dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportEntry {
    pub face: Face,
    pub dim: usize,
    pub base_point: RatVector,
    /// `<a, D - base_point> = 0` for these rays.
    pub equations: Vec<IntVector>,
    /// `<a, D - base_point> > 0` for these rays.
    pub inequalities: Vec<IntVector>,
    pub finite: bool,
    /// T1 degrees `D = -R` in the region.
    pub samples: Vec<IntVector>,
    /// Every sample has `dim T1(D) = dim` by the general formula.
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSupport {
    pub gorenstein: GorensteinData,
    pub entries: Vec<SupportEntry>,
}

impl DegreeSupport {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn negate(v: &[i64]) -> IntVector {
    v.iter().map(|x| -x).collect()
}

/// Lattice points `R` with `<a^i, R> = 1` on the face and `<= 0` elsewhere;
/// `None` when there are none.
fn sample_degrees(c: &Cone, face: &Face, opts: &SampleOptions) -> Option<(bool, Vec<IntVector>)> {
    let d = c.rank();
    let rays = c.rays();
    let on: Vec<IntVector> = face.indices.iter().map(|&i| rays[i].clone()).collect();
    let off: Vec<&IntVector> = (0..rays.len())
        .filter(|i| !face.indices.contains(i))
        .map(|i| &rays[i])
        .collect();
    let (r0, kernel) = integer_solve(&on, d, &vec![1; on.len()])?;
    if kernel.is_empty() {
        return Some((true, vec![r0]));
    }
    let valid = |r: &[i64]| off.iter().all(|a| dot(a, r) <= 0);
    let depth = |r: &[i64]| -off.iter().map(|a| dot(a, r)).sum::<i64>();
    // relative interior point of the dual cone cut by tau^perp
    let u: IntVector = c
        .facet_normals()
        .iter()
        .filter(|m| on.iter().all(|a| dot(a, m) == 0))
        .fold(vec![0; d], |acc, m| acc.iter().zip(m).map(|(x, y)| x + y).collect());
    debug_assert!(off.iter().all(|a| dot(a, &u) > 0));
    let m = off
        .iter()
        .map(|a| (dot(a, &r0) + dot(a, &u) - 1).div_euclid(dot(a, &u)))
        .max()
        .unwrap_or(0)
        .max(0);
    let base: IntVector = r0.iter().zip(&u).map(|(x, y)| x - m * y).collect();
    let combine = |start: &[i64], coeffs: &[i64]| -> IntVector {
        (0..d)
            .map(|t| start[t] + coeffs.iter().zip(&kernel).map(|(c, k)| c * k[t]).sum::<i64>())
            .collect()
    };
    let k = kernel.len();
    let mut found: BTreeSet<(i64, IntVector)> = BTreeSet::new();
    let mut bound = 1i64;
    while found.len() < opts.minimal.max(1) && bound <= 4 {
        let mut coeffs = vec![-bound; k];
        loop {
            let r = combine(&base, &coeffs);
            if valid(&r) {
                found.insert((depth(&r), r));
            }
            let mut t = 0;
            while t < k && coeffs[t] == bound {
                coeffs[t] = -bound;
                t += 1;
            }
            if t == k {
                break;
            }
            coeffs[t] += 1;
        }
        bound += 1;
    }
    let mut samples: Vec<IntVector> = found.into_iter().take(opts.minimal.max(1)).map(|(_, r)| r).collect();
    let anchor = samples[0].clone();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut added = 0;
    let mut attempts = 0;
    while added < opts.random && attempts < 100 * opts.random {
        attempts += 1;
        let t: i64 = rng.gen_range(1..=4);
        let coeffs: Vec<i64> = (0..k).map(|_| rng.gen_range(-2..=2)).collect();
        let deeper: IntVector = anchor.iter().zip(&u).map(|(x, y)| x - t * y).collect();
        let r = combine(&deeper, &coeffs);
        if valid(&r) && !samples.contains(&r) {
            samples.push(r);
            added += 1;
        }
    }
    Some((false, samples))
}

pub fn degree_support(c: &Cone, gd: &GorensteinData, opts: &SampleOptions) -> Result<DegreeSupport> {
    T1Context::new(c).degree_support(gd, opts)
}

impl T1Context {
    pub fn degree_support(&self, gd: &GorensteinData, opts: &SampleOptions) -> Result<DegreeSupport> {
        let c = self.cone();
        check_gorenstein(c, gd)?;
        if let Some((i, j)) = c.singular_two_face() {
            return Err(Error::NotSmoothInCodim2(i, j));
        }
        let rays = c.rays();
        let base_point: RatVector = gd
            .r_star
            .iter()
            .map(|&x| -Rational::new(x.into(), gd.g.into()))
            .collect();
        let mut entries = Vec::new();
        for face in c.face_lattice() {
            if face.indices.len() < 3 {
                continue;
            }
            let pts: Vec<IntVector> = face.indices.iter().map(|&i| rays[i].clone()).collect();
            let dim = tilde_t1(&LatticePolytope::from_int_points(c.rank(), &pts)?).dim;
            if dim == 0 {
                continue;
            }
            let Some((finite, degrees)) = sample_degrees(c, &face, opts) else {
                continue;
            };
            let mut verified = true;
            for r in &degrees {
                verified &= self.general(r)?.dim == dim;
            }
            let (equations, inequalities) = (0..rays.len()).partition::<Vec<usize>, _>(|i| face.indices.contains(i));
            entries.push(SupportEntry {
                face,
                dim,
                base_point: base_point.clone(),
                equations: equations.into_iter().map(|i| rays[i].clone()).collect(),
                inequalities: inequalities.into_iter().map(|i| rays[i].clone()).collect(),
                finite,
                samples: degrees.iter().map(|r| negate(r)).collect(),
                verified,
            });
        }
        Ok(DegreeSupport {
            gorenstein: gd.clone(),
            entries,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Every 2-face of the polytope is a triangle.
    RigidTriangles,
    /// Three-dimensional and not Gorenstein.
    RigidNonGorenstein,
    /// Three-dimensional Gorenstein over an N-gon: dimension N - 3.
    Finite { dim: usize },
    /// A non-triangular 2-face of the polytope.
    Infinite { face: Face },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidityReport {
    pub verdict: Verdict,
    pub support: DegreeSupport,
    /// The verdict agrees with the computed degree support.
    pub consistent: bool,
}

pub fn rigidity_report(c: &Cone) -> Result<RigidityReport> {
    T1Context::new(c).rigidity_report(&SampleOptions::default())
}

impl T1Context {
    pub fn rigidity_report(&self, opts: &SampleOptions) -> Result<RigidityReport> {
        let c = self.cone();
        let gd = self.gorenstein().cloned().ok_or(Error::NotQGorenstein)?;
        let support = self.degree_support(&gd, opts)?;
        let non_triangle = c.faces(3).into_iter().find(|f| f.indices.len() > 3);
        let verdict = match non_triangle {
            None => Verdict::RigidTriangles,
            Some(_) if c.rank() == 3 && gd.g >= 2 => Verdict::RigidNonGorenstein,
            Some(_) if c.rank() == 3 => Verdict::Finite {
                dim: c.rays().len() - 3,
            },
            Some(face) => Verdict::Infinite { face },
        };
        let consistent = match &verdict {
            Verdict::RigidTriangles | Verdict::RigidNonGorenstein => support.is_empty(),
            Verdict::Finite { dim } => {
                support.entries.len() == 1
                    && support.entries[0].finite
                    && support.entries[0].face.indices.len() == c.rays().len()
                    && support.entries[0].dim == *dim
            }
            Verdict::Infinite { .. } => support.entries.iter().any(|e| !e.finite),
        } && support.entries.iter().all(|e| e.verified);
        Ok(RigidityReport {
            verdict,
            support,
            consistent,
        })
    }
}
