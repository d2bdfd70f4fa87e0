#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toricdef_core::linalg::{dot, IntVector};
use toricdef_core::polyhedral::{cone_over_polytope, Cone, LatticePolytope};

pub fn poly2(points: &[[i64; 2]]) -> LatticePolytope {
    LatticePolytope::from_int_points(2, &points.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
}

pub fn poly3(points: &[[i64; 3]]) -> LatticePolytope {
    LatticePolytope::from_int_points(3, &points.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
}

pub fn cone(q: &LatticePolytope) -> Cone {
    cone_over_polytope(q).unwrap()
}

/// Primitive vectors with both coordinates in [-2, 2].
fn directions() -> Vec<[i64; 2]> {
    let mut out = Vec::new();
    for x in -2i64..=2 {
        for y in -2i64..=2 {
            if num_integer::gcd(x, y) == 1 {
                out.push([x, y]);
            }
        }
    }
    out
}

/// A convex lattice N-gon with primitive edges: N distinct primitive
/// directions summing to zero, walked in angular order.
pub fn random_primitive_polygon(rng: &mut ChaCha8Rng, n: usize) -> LatticePolytope {
    let dirs = directions();
    loop {
        let mut pick: Vec<[i64; 2]> = dirs.choose_multiple(rng, n).copied().collect();
        if pick.iter().map(|d| d[0]).sum::<i64>() != 0 || pick.iter().map(|d| d[1]).sum::<i64>() != 0 {
            continue;
        }
        pick.sort_by(|a, b| {
            (a[1] as f64)
                .atan2(a[0] as f64)
                .total_cmp(&(b[1] as f64).atan2(b[0] as f64))
        });
        let shift = [rng.gen_range(-2..=2), rng.gen_range(-2..=2)];
        let mut cur = shift;
        let mut pts = Vec::new();
        for d in &pick {
            pts.push(cur);
            cur = [cur[0] + d[0], cur[1] + d[1]];
        }
        let q = poly2(&pts);
        assert_eq!(q.vertices().len(), n);
        assert!(q.has_primitive_edges());
        return q;
    }
}

pub fn random_polygons(seed: u64, per_size: usize) -> Vec<LatticePolytope> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (3..=8)
        .flat_map(|n| (0..per_size).map(move |_| n))
        .map(|n| random_primitive_polygon(&mut rng, n))
        .collect()
}

pub fn q1() -> LatticePolytope {
    poly2(&[[-1, 1], [-1, 0], [1, -1], [1, 0]])
}
pub fn q2() -> LatticePolytope {
    poly2(&[[-1, -1], [0, 1], [1, 0]])
}
pub fn q3() -> LatticePolytope {
    poly2(&[[-1, -1], [-1, 0], [1, 1], [0, -1]])
}
pub fn q4() -> LatticePolytope {
    poly2(&[[-1, 0], [-1, 1], [0, 1], [1, 0], [0, -1]])
}
pub fn q5() -> LatticePolytope {
    poly2(&[[-1, -1], [0, -1], [1, 0], [1, 1], [0, 1], [-1, 0]])
}

pub fn catalog() -> Vec<LatticePolytope> {
    vec![q1(), q2(), q3(), q4(), q5()]
}

/// Catalog polygons, their polars and a few more polygons.
pub fn polygon_corpus() -> Vec<LatticePolytope> {
    let mut out = catalog();
    for q in catalog() {
        out.push(q.polar().unwrap());
    }
    out.push(poly2(&[[0, 0], [1, 0], [1, 1], [0, 1]]));
    out.push(poly2(&[[0, 0], [1, 0], [0, 1]]));
    out.push(poly2(&[[0, 0], [3, 0], [0, 2]]));
    out.push(poly2(&[[0, 0], [2, 0], [3, 1], [3, 2], [1, 3], [0, 2]]));
    out.push(poly2(&[[0, 1], [1, 0], [2, 0], [3, 1], [3, 2], [2, 3], [1, 3], [0, 2]]));
    out
}

pub fn cube() -> LatticePolytope {
    let mut pts = Vec::new();
    for x in 0..2 {
        for y in 0..2 {
            for z in 0..2 {
                pts.push([x, y, z]);
            }
        }
    }
    poly3(&pts)
}

pub fn octahedron() -> LatticePolytope {
    poly3(&[[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]])
}

pub fn triangular_prism() -> LatticePolytope {
    poly3(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 0, 1], [0, 1, 1]])
}

pub fn hexagonal_prism() -> LatticePolytope {
    let hex = [[-1, -1], [0, -1], [1, 0], [1, 1], [0, 1], [-1, 0]];
    let pts: Vec<[i64; 3]> = hex.iter().flat_map(|p| [[p[0], p[1], 0], [p[0], p[1], 1]]).collect();
    poly3(&pts)
}

pub fn square_pyramid() -> LatticePolytope {
    poly3(&[[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0], [0, 0, 1]])
}

pub fn unit_simplex() -> LatticePolytope {
    poly3(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]])
}

pub fn wide_simplex() -> LatticePolytope {
    poly3(&[[0, 0, 0], [2, 0, 0], [0, 3, 0], [0, 0, 1]])
}

/// Degrees `R` for a rank-3 cone: `R*`, multiples, degrees with
/// `<a^i, R> >= 2` somewhere, and random box points.
pub fn sample_degrees(c: &Cone, r_star: &[i64], count: usize, seed: u64) -> Vec<IntVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<IntVector> = vec![r_star.to_vec(), r_star.iter().map(|x| 2 * x).collect()];
    let mut vanishing = 0;
    while out.len() < count || vanishing < 5 {
        let r: IntVector = (0..c.rank()).map(|_| rng.gen_range(-3..=3)).collect();
        if out.contains(&r) {
            continue;
        }
        let high = c.rays().iter().any(|a| dot(a, &r) >= 2);
        if high {
            if vanishing >= (count / 3).max(5) {
                continue;
            }
            vanishing += 1;
        }
        out.push(r);
    }
    out
}
