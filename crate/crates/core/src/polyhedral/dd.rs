//! Double description: extreme rays of `{y : <g, y> >= 0 for all g}`.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::linalg::{dot, solve, EchelonBasis, IntVector, RatMatrix, Rational};
use num_integer::Integer;
use num_traits::{One, Zero};

struct Ray {
    v: IntVector,
    zeros: FixedBitSet,
}

fn primitive_i128(v: Vec<i128>) -> IntVector {
    let g = v.iter().fold(0i128, |g, x| g.gcd(x));
    v.into_iter()
        .map(|x| i64::try_from(if g == 0 { x } else { x / g }).expect("ray coordinate exceeds the i64 range"))
        .collect()
}

/// Extreme rays of the polyhedral cone `{y in R^dim : <g, y> >= 0}`. The
/// constraint rows must span `R^dim`, which makes the cone pointed.
/// Rays are primitive and sorted lexicographically.
pub(crate) fn extreme_rays(constraints: &[IntVector], dim: usize) -> Result<Vec<IntVector>> {
    for g in constraints {
        if g.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: g.len(),
            });
        }
    }
    let m = constraints.len();
    let mut echelon = EchelonBasis::new(dim);
    let mut basis = Vec::new();
    for (i, g) in constraints.iter().enumerate() {
        if echelon.insert_i64(g) {
            basis.push(i);
        }
    }
    if basis.len() < dim {
        return Err(Error::NotFullDimensional {
            expected: dim,
            found: basis.len(),
        });
    }

    // Simplicial start: columns of the inverse of the chosen constraint rows.
    let b = RatMatrix::from_i64_rows(dim, &basis.iter().map(|&i| constraints[i].clone()).collect::<Vec<_>>());
    let mut rays: Vec<Ray> = Vec::with_capacity(dim);
    for j in 0..dim {
        let e: Vec<Rational> = (0..dim)
            .map(|i| if i == j { Rational::one() } else { Rational::zero() })
            .collect();
        let x = solve(&b, &e).expect("basis rows are independent");
        let l = x.iter().fold(num_bigint::BigInt::one(), |l, q| l.lcm(q.denom()));
        let v: Vec<i128> = x
            .iter()
            .map(|q| {
                let s = (q * Rational::from_integer(l.clone())).to_integer();
                i128::try_from(s).expect("ray coordinate exceeds the i128 range")
            })
            .collect();
        let mut zeros = FixedBitSet::with_capacity(m);
        for (k, &i) in basis.iter().enumerate() {
            if k != j {
                zeros.insert(i);
            }
        }
        rays.push(Ray {
            v: primitive_i128(v),
            zeros,
        });
    }

    let in_basis: FixedBitSet = basis.iter().copied().collect();
    for (ci, g) in constraints.iter().enumerate() {
        if in_basis.contains(ci) {
            continue;
        }
        let values: Vec<i64> = rays.iter().map(|r| dot(&r.v, g)).collect();
        if values.iter().all(|&x| x >= 0) {
            for (r, &val) in rays.iter_mut().zip(&values) {
                if val == 0 {
                    r.zeros.insert(ci);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i] > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i] < 0).collect();
        let mut created = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let mut common = rays[p].zeros.clone();
                common.intersect_with(&rays[n].zeros);
                if common.count_ones(..) + 2 < dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == p || k == n || !common.is_subset(&r.zeros));
                if !adjacent {
                    continue;
                }
                let a = values[p] as i128;
                let b = values[n] as i128;
                let v: Vec<i128> = rays[n]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(&x, &y)| a * x as i128 - b * y as i128)
                    .collect();
                common.insert(ci);
                created.push(Ray {
                    v: primitive_i128(v),
                    zeros: common,
                });
            }
        }
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (mut r, &val) in rays.into_iter().zip(&values) {
            if val > 0 {
                next.push(r);
            } else if val == 0 {
                r.zeros.insert(ci);
                next.push(r);
            }
        }
        next.extend(created);
        rays = next;
    }

    let mut out: Vec<IntVector> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    Ok(out)
}
