use crate::error::{Error, Result};
use crate::linalg::{rank, to_i64, IntVector, Matrix, RatVector};
use crate::polyhedral::LatticePolytope;

use super::summands::{anchor, class_of_summand, tilde_t1, SummandClass};

/// A lattice Minkowski decomposition of a polygon: a partition of its edges
/// into zero-sum blocks, each realized as a summand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// Edge indices per block, each sorted; blocks ordered by first edge.
    pub blocks: Vec<Vec<usize>>,
    /// One summand per block, anchored at its lexicographically smallest
    /// vertex.
    pub summands: Vec<LatticePolytope>,
    /// No block contains a smaller nonempty zero-sum subset.
    pub extremal: bool,
}

/// Span of the summand classes of a decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KsSpan {
    pub dim: usize,
    pub classes: Vec<SummandClass>,
}

fn primitive_edges(q: &LatticePolytope) -> Result<Vec<IntVector>> {
    if !q.is_polygon() {
        return Err(Error::PolygonRequired {
            rank: q.ambient_rank(),
            dim: q.dim(),
        });
    }
    q.int_vertices()?;
    q.edge_vectors()
        .into_iter()
        .enumerate()
        .map(|(index, e)| {
            let v: IntVector = e.iter().map(|x| to_i64(&x.to_integer())).collect();
            if crate::linalg::gcd_all(&v) != 1 {
                return Err(Error::NonPrimitiveEdge { index, vector: v });
            }
            Ok(v)
        })
        .collect()
}

fn sums_to_zero(block: &[usize], edges: &[IntVector]) -> bool {
    (0..2).all(|k| block.iter().map(|&i| edges[i][k]).sum::<i64>() == 0)
}

/// Whether no nonempty proper subset of `block` sums to zero.
pub fn is_minimal_zero_sum(block: &[usize], edges: &[IntVector]) -> bool {
    let n = block.len();
    (1..(1u64 << n) - 1).all(|mask| {
        let sub: Vec<usize> = (0..n).filter(|&j| mask >> j & 1 == 1).map(|j| block[j]).collect();
        !sums_to_zero(&sub, edges)
    })
}

/// Zero-sum subsets of `rest` (in index order) that contain `leader`.
fn blocks_with_leader(leader: usize, rest: &[usize], edges: &[IntVector], out: &mut Vec<Vec<usize>>) {
    fn go(i: usize, rest: &[usize], edges: &[IntVector], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == rest.len() {
            if sums_to_zero(cur, edges) {
                out.push(cur.clone());
            }
            return;
        }
        cur.push(rest[i]);
        go(i + 1, rest, edges, cur, out);
        cur.pop();
        go(i + 1, rest, edges, cur, out);
    }
    let mut cur = vec![leader];
    go(0, rest, edges, &mut cur, out);
}

fn partitions(unassigned: &[usize], edges: &[IntVector], acc: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
    let Some((&leader, rest)) = unassigned.split_first() else {
        out.push(acc.clone());
        return;
    };
    let mut blocks = Vec::new();
    blocks_with_leader(leader, rest, edges, &mut blocks);
    for b in blocks {
        let remaining: Vec<usize> = rest.iter().copied().filter(|i| !b.contains(i)).collect();
        acc.push(b);
        partitions(&remaining, edges, acc, out);
        acc.pop();
    }
}

fn block_summand(block: &[usize], edges: &[IntVector]) -> LatticePolytope {
    let mut pts = vec![vec![0i64, 0]];
    let mut cur = vec![0i64, 0];
    for &i in block {
        cur = vec![cur[0] + edges[i][0], cur[1] + edges[i][1]];
        pts.push(cur.clone());
    }
    anchor(&LatticePolytope::from_int_points(2, &pts).expect("nonempty walk"))
}

/// All partitions of the (primitive) edges of a lattice polygon into at
/// least two zero-sum blocks.
pub fn lattice_decompositions(q: &LatticePolytope) -> Result<Vec<Decomposition>> {
    let edges = primitive_edges(q)?;
    let all: Vec<usize> = (0..edges.len()).collect();
    let mut found = Vec::new();
    partitions(&all, &edges, &mut Vec::new(), &mut found);
    Ok(found
        .into_iter()
        .filter(|p| p.len() >= 2)
        .map(|blocks| {
            let summands = blocks.iter().map(|b| block_summand(b, &edges)).collect();
            let extremal = blocks.iter().all(|b| is_minimal_zero_sum(b, &edges));
            Decomposition {
                blocks,
                summands,
                extremal,
            }
        })
        .collect())
}

pub fn kodaira_spencer_span(q: &LatticePolytope, d: &Decomposition) -> Result<KsSpan> {
    let tt = tilde_t1(q);
    let classes: Vec<SummandClass> = d
        .summands
        .iter()
        .map(|s| class_of_summand(q, &tt, s))
        .collect::<Result<_>>()?;
    let rows: Vec<RatVector> = classes.iter().map(|c| c.coordinates.clone()).collect();
    let dim = rank(&Matrix::from_rows(tt.dim, rows));
    Ok(KsSpan { dim, classes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, Rational};
    use std::collections::BTreeSet;

    fn poly(points: &[[i64; 2]]) -> LatticePolytope {
        LatticePolytope::from_int_points(2, &points.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn q1() -> LatticePolytope {
        poly(&[[-1, 1], [-1, 0], [1, -1], [1, 0]])
    }

    fn q5() -> LatticePolytope {
        poly(&[[-1, -1], [0, -1], [1, 0], [1, 1], [0, 1], [-1, 0]])
    }

    /// Every set partition via restricted growth strings.
    fn oracle(edges: &[IntVector]) -> BTreeSet<Vec<Vec<usize>>> {
        let n = edges.len();
        let mut out = BTreeSet::new();
        let mut a = vec![0usize; n];
        loop {
            let k = a.iter().max().unwrap() + 1;
            let blocks: Vec<Vec<usize>> = (0..k).map(|b| (0..n).filter(|&i| a[i] == b).collect()).collect();
            if k >= 2 && blocks.iter().all(|b| sums_to_zero(b, edges)) {
                out.insert(blocks);
            }
            // next restricted growth string
            let mut i = n;
            loop {
                if i <= 1 {
                    return out;
                }
                i -= 1;
                let m = a[..i].iter().max().copied().unwrap_or(0);
                if a[i] <= m {
                    a[i] += 1;
                    for x in a.iter_mut().skip(i + 1) {
                        *x = 0;
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn q1_two_segments() {
        let ds = lattice_decompositions(&q1()).unwrap();
        assert_eq!(ds.len(), 1);
        assert!(ds[0].summands.iter().all(|s| s.dim() == 1));
        let ks = kodaira_spencer_span(&q1(), &ds[0]).unwrap();
        assert_eq!(ks.dim, 1);
    }

    #[test]
    fn q5_decompositions() {
        let q = q5();
        let ds = lattice_decompositions(&q).unwrap();
        assert_eq!(ds.len(), 5);
        let extremal: Vec<&Decomposition> = ds.iter().filter(|d| d.extremal).collect();
        assert_eq!(extremal.len(), 2);
        for d in &ds {
            let sum = d
                .summands
                .iter()
                .skip(1)
                .fold(d.summands[0].clone(), |acc, s| acc.minkowski_sum(s).unwrap());
            assert_eq!(anchor(&sum), anchor(&q));
            let ks = kodaira_spencer_span(&q, d).unwrap();
            assert_eq!(ks.dim, d.blocks.len() - 1);
            let total: Vec<Rational> = (0..3)
                .map(|k| ks.classes.iter().fold(rat(0), |s, c| s + &c.coordinates[k]))
                .collect();
            assert!(total.iter().all(|x| *x == rat(0)));
        }
        let shapes: BTreeSet<Vec<usize>> = extremal
            .iter()
            .map(|d| d.summands.iter().map(|s| s.vertices().len()).collect())
            .collect();
        assert_eq!(shapes, BTreeSet::from([vec![2, 2, 2], vec![3, 3]]));
    }

    #[test]
    fn matches_set_partition_oracle() {
        for q in [
            q1(),
            q5(),
            poly(&[[-1, -1], [-1, 0], [1, 1], [0, -1]]),
            poly(&[[0, 0], [1, 0], [1, 1], [0, 1]]),
        ] {
            let edges = primitive_edges(&q).unwrap();
            let got: BTreeSet<Vec<Vec<usize>>> = lattice_decompositions(&q)
                .unwrap()
                .into_iter()
                .map(|d| d.blocks)
                .collect();
            assert_eq!(got, oracle(&edges));
        }
    }

    #[test]
    fn refuses_non_primitive_edges() {
        let t = poly(&[[0, 0], [2, 0], [0, 1]]);
        assert_eq!(
            lattice_decompositions(&t),
            Err(Error::NonPrimitiveEdge {
                index: 0,
                vector: vec![2, 0]
            })
        );
    }
}
