//! The reflexive polygons with primitive edges (cones over Del Pezzo
//! surfaces with isolated singularity), their expected invariants, and an
//! enumeration of all reflexive polygons.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Result;
use crate::linalg::IntVector;
use crate::polyhedral::{normal_form, LatticePolytope};

/// A decomposition expected for a catalog polygon, described by the vertex
/// counts of its summands. Listed in the order of `lattice_decompositions`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectedDecomposition {
    /// Vertex counts of the summands, sorted.
    pub shapes: Vec<usize>,
    pub extremal: bool,
    pub span_dim: usize,
    /// Rays and facets of the total space cone.
    pub total_rays: usize,
    pub total_facets: usize,
    /// Name of the total space, not computed.
    pub total_space: Option<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub vertices: Vec<[i64; 2]>,
    /// Polar polygon as drawn, up to unimodular equivalence.
    pub polar_figure: Vec<[i64; 2]>,
    pub t1_dim: usize,
    pub decompositions: Vec<ExpectedDecomposition>,
    pub variety: &'static str,
    /// Base space of the semi-universal deformation, not computed.
    pub base_space: Option<&'static str>,
}

impl CatalogEntry {
    pub fn polygon(&self) -> LatticePolytope {
        let pts: Vec<IntVector> = self.vertices.iter().map(|p| p.to_vec()).collect();
        LatticePolytope::from_int_points(2, &pts).expect("catalog polygons are valid")
    }

    pub fn polar_figure_polygon(&self) -> LatticePolytope {
        let pts: Vec<IntVector> = self.polar_figure.iter().map(|p| p.to_vec()).collect();
        LatticePolytope::from_int_points(2, &pts).expect("catalog polygons are valid")
    }
}

fn dec(
    shapes: &[usize],
    extremal: bool,
    span_dim: usize,
    total: (usize, usize),
    total_space: Option<&'static str>,
) -> ExpectedDecomposition {
    ExpectedDecomposition {
        shapes: shapes.to_vec(),
        extremal,
        span_dim,
        total_rays: total.0,
        total_facets: total.1,
        total_space,
    }
}

pub fn catalog_entries() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "Q1",
            vertices: vec![[-1, 1], [-1, 0], [1, -1], [1, 0]],
            polar_figure: vec![[-1, 1], [1, 1], [1, -1], [-1, -1]],
            t1_dim: 1,
            decompositions: vec![dec(
                &[2, 2],
                true,
                1,
                (4, 4),
                Some("isolated 4-dimensional cyclic quotient singularity"),
            )],
            variety: "cone over P1 x P1 embedded by O(2,2)",
            base_space: Some("C^1"),
        },
        CatalogEntry {
            name: "Q2",
            vertices: vec![[-1, -1], [0, 1], [1, 0]],
            polar_figure: vec![[-1, 2], [-1, -1], [2, -1]],
            t1_dim: 0,
            decompositions: Vec::new(),
            variety: "cone over P2 embedded by O(3)",
            base_space: None,
        },
        CatalogEntry {
            name: "Q3",
            vertices: vec![[-1, -1], [-1, 0], [1, 1], [0, -1]],
            polar_figure: vec![[-1, -1], [1, -1], [1, 2], [-1, 0]],
            t1_dim: 1,
            decompositions: Vec::new(),
            variety: "cone over the Del Pezzo surface of degree 8",
            base_space: Some("Spec C[ε]/ε²"),
        },
        CatalogEntry {
            name: "Q4",
            vertices: vec![[-1, 0], [-1, 1], [0, 1], [1, 0], [0, -1]],
            polar_figure: vec![[-1, 0], [-1, -1], [1, -1], [1, 1], [0, 1]],
            t1_dim: 2,
            decompositions: vec![dec(&[2, 3], true, 1, (5, 6), Some("cone over P(O_P2 + O_P2(1))"))],
            variety: "cone over the Del Pezzo surface of degree 7",
            base_space: Some("complex line with one embedded component"),
        },
        CatalogEntry {
            name: "Q5",
            vertices: vec![[-1, -1], [0, -1], [1, 0], [1, 1], [0, 1], [-1, 0]],
            polar_figure: vec![[-1, -1], [0, -1], [1, 0], [1, 1], [0, 1], [-1, 0]],
            t1_dim: 3,
            decompositions: vec![
                dec(&[2, 4], false, 1, (6, 7), None),
                dec(&[2, 4], false, 1, (6, 7), None),
                dec(&[3, 3], true, 1, (6, 8), Some("cone over P1 x P1 x P1")),
                dec(&[2, 4], false, 1, (6, 7), None),
                dec(&[2, 2, 2], true, 2, (6, 9), Some("cone over P2 x P2")),
            ],
            variety: "cone over the Del Pezzo surface of degree 6",
            base_space: Some("transversal union of a complex plane with a complex line"),
        },
    ]
}

/// One polygon per affine unimodular class, keyed and sorted by normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflexiveClassList {
    pub classes: Vec<(Vec<[i64; 2]>, LatticePolytope)>,
}

impl ReflexiveClassList {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn polygons(&self) -> impl Iterator<Item = &LatticePolytope> {
        self.classes.iter().map(|(_, p)| p)
    }

    pub fn contains_class_of(&self, p: &LatticePolytope) -> Result<bool> {
        let nf = normal_form(p)?;
        Ok(self.classes.iter().any(|(k, _)| *k == nf))
    }
}

fn cross(o: [i64; 2], a: [i64; 2], b: [i64; 2]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Counterclockwise hull vertices, collinear points dropped.
fn hull(points: &BTreeSet<[i64; 2]>) -> Vec<[i64; 2]> {
    let pts: Vec<[i64; 2]> = points.iter().copied().collect();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<[i64; 2]> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<[i64; 2]> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn strictly_inside(h: &[[i64; 2]], p: [i64; 2]) -> bool {
    h.len() >= 3 && (0..h.len()).all(|i| cross(h[i], h[(i + 1) % h.len()], p) > 0)
}

/// Polygons with vertices in `[-bound, bound]^2` whose only interior
/// lattice point is the origin, one per unimodular class.
pub fn enumerate_reflexive_polygons(bound: i64) -> ReflexiveClassList {
    let grid: Vec<[i64; 2]> = (-bound..=bound)
        .flat_map(|x| (-bound..=bound).map(move |y| [x, y]))
        .collect();
    let interior_ok = |h: &[[i64; 2]]| grid.iter().all(|&p| p == [0, 0] || !strictly_inside(h, p));
    // states: hulls of point sets containing the origin with no interior
    // lattice point other than the origin
    let mut seen: BTreeSet<Vec<[i64; 2]>> = BTreeSet::new();
    let mut stack = vec![vec![[0, 0]]];
    seen.insert(vec![[0, 0]]);
    let mut classes: BTreeMap<Vec<[i64; 2]>, LatticePolytope> = BTreeMap::new();
    while let Some(h) = stack.pop() {
        if strictly_inside(&h, [0, 0]) {
            let pts: Vec<IntVector> = h.iter().map(|p| p.to_vec()).collect();
            let poly = LatticePolytope::from_int_points(2, &pts).expect("nonempty");
            let nf = normal_form(&poly).expect("lattice polygon");
            classes.entry(nf).or_insert(poly);
        }
        for &p in &grid {
            if h.contains(&p) {
                continue;
            }
            let mut pts: BTreeSet<[i64; 2]> = h.iter().copied().collect();
            pts.insert([0, 0]);
            pts.insert(p);
            let next = hull(&pts);
            if !next.contains(&p) || seen.contains(&next) {
                continue;
            }
            if interior_ok(&next) {
                seen.insert(next.clone());
                stack.push(next);
            }
        }
    }
    ReflexiveClassList {
        classes: classes.into_iter().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedral::unimodular_equivalent;

    #[test]
    fn entries_are_reflexive_with_primitive_edges() {
        for e in catalog_entries() {
            let q = e.polygon();
            assert!(q.is_reflexive(), "{}", e.name);
            assert!(q.has_primitive_edges(), "{}", e.name);
            assert_eq!(q.interior_lattice_points(), vec![vec![0, 0]]);
        }
    }

    #[test]
    fn polar_figures_match_up_to_equivalence() {
        for e in catalog_entries() {
            let polar = e.polygon().polar().unwrap();
            assert!(
                unimodular_equivalent(&polar, &e.polar_figure_polygon())
                    .unwrap()
                    .is_some(),
                "{}",
                e.name
            );
        }
        let q5 = &catalog_entries()[4];
        let polar = q5.polygon().polar().unwrap();
        assert!(unimodular_equivalent(&polar, &q5.polygon()).unwrap().is_some());
    }

    #[test]
    fn hull_drops_collinear_points() {
        let pts: BTreeSet<[i64; 2]> = [[0, 0], [1, 0], [2, 0], [2, 2], [0, 2], [1, 1]].into_iter().collect();
        assert_eq!(hull(&pts), vec![[0, 0], [2, 0], [2, 2], [0, 2]]);
        let line: BTreeSet<[i64; 2]> = [[0, 0], [1, 1], [2, 2]].into_iter().collect();
        assert_eq!(hull(&line), vec![[0, 0], [2, 2]]);
    }

    #[test]
    fn sixteen_classes() {
        let list = enumerate_reflexive_polygons(3);
        assert_eq!(list.len(), 16);
        let primitive: Vec<&LatticePolytope> = list.polygons().filter(|p| p.has_primitive_edges()).collect();
        assert_eq!(primitive.len(), 5);
        for e in catalog_entries() {
            assert!(list.contains_class_of(&e.polygon()).unwrap());
            assert!(list.contains_class_of(&e.polar_figure_polygon()).unwrap());
        }
        for p in list.polygons() {
            assert!(p.is_reflexive());
            assert!(list.contains_class_of(&p.polar().unwrap()).unwrap());
        }
    }

    #[test]
    fn nine_polygons_with_polars() {
        let mut forms = BTreeSet::new();
        for e in catalog_entries() {
            forms.insert(normal_form(&e.polygon()).unwrap());
            forms.insert(normal_form(&e.polygon().polar().unwrap()).unwrap());
        }
        assert_eq!(forms.len(), 9);
    }
}
