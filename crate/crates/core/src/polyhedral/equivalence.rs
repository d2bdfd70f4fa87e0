//! Affine unimodular equivalence of lattice polygons via a normal form.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::linalg::IntVector;

use super::polytope::LatticePolytope;

/// `x -> matrix * x + translation` with `det matrix = +-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    pub matrix: [[i64; 2]; 2],
    pub translation: [i64; 2],
}

impl AffineMap {
    pub fn apply(&self, x: &[i64]) -> IntVector {
        let m = &self.matrix;
        vec![
            m[0][0] * x[0] + m[0][1] * x[1] + self.translation[0],
            m[1][0] * x[0] + m[1][1] * x[1] + self.translation[1],
        ]
    }
}

type M2 = [[i64; 2]; 2];

fn mul(a: &M2, b: &M2) -> M2 {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

fn apply(m: &M2, x: [i64; 2]) -> [i64; 2] {
    [m[0][0] * x[0] + m[0][1] * x[1], m[1][0] * x[0] + m[1][1] * x[1]]
}

fn inverse(m: &M2) -> M2 {
    let d = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    debug_assert!(d == 1 || d == -1);
    [[d * m[1][1], -d * m[0][1]], [-d * m[1][0], d * m[0][0]]]
}

/// Walk of the polygon starting at vertex `start`, forward or backward,
/// normalized: first edge along `(1,0)`, second edge in the upper half
/// plane with its x-coordinate reduced into `[0, y)`.
fn normalized_walk(verts: &[[i64; 2]], start: usize, forward: bool) -> (Vec<[i64; 2]>, M2) {
    let n = verts.len();
    let at = |k: usize| {
        let idx = if forward {
            (start + k) % n
        } else {
            (start + n - k % n) % n
        };
        verts[idx]
    };
    let w0 = at(0);
    let e0 = [at(1)[0] - w0[0], at(1)[1] - w0[1]];
    let g = e0[0].gcd(&e0[1]);
    let (a, b) = (e0[0] / g, e0[1] / g);
    // a*y - b*x = 1
    let ext = Integer::extended_gcd(&a, &b);
    let (x, y) = (-ext.y * ext.gcd.signum(), ext.x * ext.gcd.signum());
    debug_assert_eq!(a * y - b * x, 1);
    // B = [[a, x], [b, y]], B^{-1} = [[y, -x], [-b, a]]
    let mut m: M2 = [[y, -x], [-b, a]];
    let e1 = [at(2)[0] - at(1)[0], at(2)[1] - at(1)[1]];
    let u = apply(&m, e1);
    if u[1] < 0 {
        m = mul(&[[1, 0], [0, -1]], &m);
    }
    let u = apply(&m, e1);
    let k = -Integer::div_floor(&u[0], &u[1]);
    m = mul(&[[1, k], [0, 1]], &m);
    let walk = (0..n)
        .map(|k| apply(&m, [at(k)[0] - w0[0], at(k)[1] - w0[1]]))
        .collect();
    (walk, m)
}

fn polygon_vertices(p: &LatticePolytope) -> Result<Vec<[i64; 2]>> {
    if !p.is_polygon() {
        return Err(Error::PolygonRequired {
            rank: p.ambient_rank(),
            dim: p.dim(),
        });
    }
    Ok(p.int_vertices()?.into_iter().map(|v| [v[0], v[1]]).collect())
}

/// Best walk over all starts and both orientations, with its linear map and
/// starting vertex.
fn canonical(verts: &[[i64; 2]]) -> (Vec<[i64; 2]>, M2, [i64; 2]) {
    let n = verts.len();
    let mut best: Option<(Vec<[i64; 2]>, M2, [i64; 2])> = None;
    for start in 0..n {
        for forward in [true, false] {
            let (walk, m) = normalized_walk(verts, start, forward);
            if best.as_ref().is_none_or(|b| walk < b.0) {
                best = Some((walk, m, verts[start]));
            }
        }
    }
    best.expect("polygon has vertices")
}

/// Complete invariant of a lattice polygon up to affine unimodular maps.
pub fn normal_form(p: &LatticePolytope) -> Result<Vec<[i64; 2]>> {
    Ok(canonical(&polygon_vertices(p)?).0)
}

/// An affine unimodular map sending `p` onto `q`, if one exists. Both must
/// be lattice polygons.
pub fn unimodular_equivalent(p: &LatticePolytope, q: &LatticePolytope) -> Result<Option<AffineMap>> {
    let pv = polygon_vertices(p)?;
    let qv = polygon_vertices(q)?;
    if pv.len() != qv.len() {
        return Ok(None);
    }
    let (wp, mp, sp) = canonical(&pv);
    let (wq, mq, sq) = canonical(&qv);
    if wp != wq {
        return Ok(None);
    }
    // q = mq^{-1} mp (x - sp) + sq
    let a = mul(&inverse(&mq), &mp);
    let asp = apply(&a, sp);
    let map = AffineMap {
        matrix: a,
        translation: [sq[0] - asp[0], sq[1] - asp[1]],
    };
    let mut image: Vec<IntVector> = pv.iter().map(|v| map.apply(v)).collect();
    let mut target: Vec<IntVector> = qv.iter().map(|v| v.to_vec()).collect();
    image.sort();
    target.sort();
    assert_eq!(image, target, "normal forms agree but the witness map fails");
    Ok(Some(map))
}
