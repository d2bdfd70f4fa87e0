use serde_json::{json, Value};
use toricdef_core::catalog::{catalog_entries, enumerate_reflexive_polygons};
use toricdef_core::deformation::{build_ambient, build_deformation, kodaira_spencer_check, verify_fiber};
use toricdef_core::linalg::{to_i64, IntVector};
use toricdef_core::minkowski::{
    kodaira_spencer_span, lattice_decompositions, summand_cone, summand_from_parameters, tilde_t1, Decomposition,
};
use toricdef_core::polyhedral::{cone_over_polytope, normal_form, Cone, LatticePolytope};
use toricdef_core::t1::{GorensteinData, SampleOptions, T1Context, Verdict};

use crate::document::{PolytopeDocument, SCHEMA_VERSION};
use crate::error::CliError;
use crate::json::{face, int_vectors, negated, rat_vector, vertices};

/// A report, and the error to exit with after printing it.
pub struct Outcome {
    pub report: Value,
    pub error: Option<CliError>,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome { report, error: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formula {
    General,
    Codim2,
    Face,
    All,
}

fn envelope(command: &str, mut body: Value) -> Value {
    body["schema_version"] = json!(SCHEMA_VERSION);
    body["command"] = json!(command);
    body
}

fn stage<T>(name: &str, r: toricdef_core::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| CliError::from_stage(name, e))
}

struct Input {
    document: PolytopeDocument,
    polytope: LatticePolytope,
    cone: Cone,
}

fn load(doc: &PolytopeDocument) -> Result<Input, CliError> {
    let polytope = doc.polytope()?;
    let cone = stage("polyhedral", cone_over_polytope(&polytope))?;
    Ok(Input {
        document: PolytopeDocument::from_polytope(&polytope),
        polytope,
        cone,
    })
}

fn gorenstein_json(gd: Option<&GorensteinData>) -> Value {
    gd.map_or(Value::Null, |g| json!({ "r_star": g.r_star, "g": g.g }))
}

fn require_polygon(q: &LatticePolytope) -> Result<(), CliError> {
    if q.is_polygon() {
        Ok(())
    } else {
        Err(CliError::Validation(format!(
            "minkowski: polygon required for decomposition commands (dimension {} in rank {})",
            q.dim(),
            q.ambient_rank()
        )))
    }
}

fn decomposition_json(q: &LatticePolytope, index: usize, d: &Decomposition) -> Result<Value, CliError> {
    let ks = stage("minkowski", kodaira_spencer_span(q, d))?;
    Ok(json!({
        "index": index,
        "blocks": d.blocks,
        "summands": d.summands.iter().map(vertices).collect::<Vec<_>>(),
        "extremal": d.extremal,
        "ks_span_dim": ks.dim,
    }))
}

fn decompositions(q: &LatticePolytope) -> Result<Vec<Decomposition>, CliError> {
    require_polygon(q)?;
    stage("minkowski", lattice_decompositions(q))
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::RigidTriangles => json!({ "kind": "rigid", "reason": "every 2-face is a triangle" }),
        Verdict::RigidNonGorenstein => {
            json!({ "kind": "rigid", "reason": "three-dimensional, isolated, not Gorenstein" })
        }
        Verdict::Finite { dim } => json!({ "kind": "finite", "dim": dim }),
        Verdict::Infinite { face: f } => json!({ "kind": "infinite", "face": face(f) }),
    }
}

pub fn analyze(doc: &PolytopeDocument, seed: u64) -> Result<Outcome, CliError> {
    let input = load(doc)?;
    let q = &input.polytope;
    let ctx = T1Context::new(&input.cone);
    let gd = ctx.gorenstein().cloned();
    let opts = SampleOptions {
        seed,
        ..SampleOptions::default()
    };

    let mut t1 = Vec::new();
    let mut rigidity = Value::Null;
    if let Some(g) = &gd {
        match ctx.rigidity_report(&opts) {
            Ok(report) => {
                for e in &report.support.entries {
                    for d in &e.samples {
                        t1.push(json!({
                            "degree": d,
                            "R": negated(d),
                            "dim": e.dim,
                            "face": face(&e.face),
                            "finite": e.finite,
                        }));
                    }
                }
                rigidity = json!({ "verdict": verdict_json(&report.verdict), "consistent": report.consistent });
            }
            // no support description; fall back to the general formula at R*
            Err(e) => {
                let dim = stage("t1", ctx.general(&g.r_star))?.dim;
                t1.push(json!({ "degree": negated(&g.r_star), "R": g.r_star, "dim": dim }));
                rigidity = json!({ "unavailable": format!("t1: {e}") });
            }
        }
    }

    let tt = tilde_t1(q);
    let sc = summand_cone(q);
    let reconstructed: Vec<Value> = sc
        .extremal_rays
        .iter()
        .map(|t| {
            let t: Vec<_> = t.iter().map(|&x| toricdef_core::linalg::rat(x)).collect();
            stage("minkowski", summand_from_parameters(&sc, &t)).map(|s| vertices(&s))
        })
        .collect::<Result<_, _>>()?;

    let polar = match q.polar() {
        Ok(p) if p.is_lattice() => vertices(&p),
        Ok(_) => json!("not lattice"),
        Err(_) => Value::Null,
    };

    let mut report = envelope(
        "analyze",
        json!({
            "input": input.document.to_json(),
            "gorenstein": gorenstein_json(gd.as_ref()),
            "r_star": gd.as_ref().map_or(Value::Null, |g| json!(g.r_star)),
            "smooth_codim2": input.cone.smooth_in_codim2(),
            "isolated": input.cone.is_isolated(),
            "rigidity": rigidity,
            "t1": t1,
            "tilde_t1_dim": tt.dim,
            "summand_cone": {
                "dim": sc.dim(),
                "extremal_rays": int_vectors(&sc.extremal_rays),
                "summands": reconstructed,
            },
            "decompositions": Value::Null,
            "deformations": Value::Null,
            "polar": polar,
            "provenance": {
                "computed": "every field of this report is computed from the input",
                "seed": seed,
            },
        }),
    );

    let decs = match decompositions(q) {
        Ok(d) => d,
        Err(e) => return Ok(Outcome { report, error: Some(e) }),
    };
    let listed: Vec<Value> = decs
        .iter()
        .enumerate()
        .map(|(i, d)| decomposition_json(q, i, d))
        .collect::<Result<_, _>>()?;
    report["decompositions"] = json!(listed);

    let r_star = gd
        .as_ref()
        .map(|g| g.r_star.clone())
        .expect("cones over polygons are Gorenstein");
    let slice = stage("deformation", build_ambient(&input.cone, &r_star))?;
    let mut deformations = Vec::new();
    for (i, d) in decs.iter().enumerate() {
        let dd = stage("deformation", build_deformation(&slice, &d.summands))?;
        let fiber = verify_fiber(&dd);
        deformations.push(json!({
            "index": i,
            "total_space_rays": int_vectors(dd.total_cone.rays()),
            "total_space_facets": dd.total_cone.facet_normals().len(),
            "fiber_verified": fiber.holds(),
        }));
    }
    report["deformations"] = json!(deformations);
    Ok(Outcome::ok(report))
}

pub fn parse_degree(s: &str, rank: usize) -> Result<IntVector, CliError> {
    let v: IntVector = s
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Validation(format!("degree {s:?}: {e}")))?;
    if v.len() != rank {
        return Err(CliError::Validation(format!(
            "degree {s:?} has {} entries, the cone has rank {rank}",
            v.len()
        )));
    }
    Ok(v)
}

pub fn t1(doc: &PolytopeDocument, degrees: &[String], formula: Formula) -> Result<Outcome, CliError> {
    let input = load(doc)?;
    let ctx = T1Context::new(&input.cone);
    let gd = ctx.gorenstein().cloned();
    let mut rs: Vec<IntVector> = degrees
        .iter()
        .map(|s| parse_degree(s, input.cone.rank()))
        .collect::<Result<_, _>>()?;
    if rs.is_empty() {
        match &gd {
            Some(g) => rs.push(g.r_star.clone()),
            None => {
                return Err(CliError::Validation(
                    "no --degree given and the cone is not Q-Gorenstein".into(),
                ))
            }
        }
    }
    let want = |f: Formula| formula == f || formula == Formula::All;
    let mut results = Vec::new();
    let mut mismatch = None;
    for r in &rs {
        let mut entry = json!({ "R": r, "degree": negated(r) });
        let mut dims = Vec::new();
        if want(Formula::General) {
            let d = stage("t1", ctx.general(r))?.dim;
            entry["general"] = json!(d);
            dims.push(d);
        }
        if want(Formula::Codim2) {
            let d = stage("t1", ctx.codim2(r))?.dim;
            entry["codim2"] = json!(d);
            dims.push(d);
        }
        if want(Formula::Face) {
            let g = gd
                .as_ref()
                .ok_or_else(|| CliError::Precondition("t1: face formula needs a Q-Gorenstein cone".into()))?;
            let d = stage("t1", ctx.via_face_polytope(g, r))?;
            entry["face"] = json!(d);
            dims.push(d);
        }
        if dims.windows(2).any(|w| w[0] != w[1]) && mismatch.is_none() {
            mismatch = Some(CliError::Mismatch(format!(
                "t1: formulas disagree at R = {r:?}: {dims:?}"
            )));
        }
        results.push(entry);
    }
    let report = envelope(
        "t1",
        json!({
            "input": input.document.to_json(),
            "r_star": gd.as_ref().map_or(Value::Null, |g| json!(g.r_star)),
            "gorenstein": gorenstein_json(gd.as_ref()),
            "results": results,
        }),
    );
    Ok(Outcome {
        report,
        error: mismatch,
    })
}

pub fn decompose(doc: &PolytopeDocument) -> Result<Outcome, CliError> {
    let input = load(doc)?;
    let q = &input.polytope;
    let decs = decompositions(q)?;
    let listed: Vec<Value> = decs
        .iter()
        .enumerate()
        .map(|(i, d)| decomposition_json(q, i, d))
        .collect::<Result<_, _>>()?;
    Ok(Outcome::ok(envelope(
        "decompose",
        json!({
            "input": input.document.to_json(),
            "tilde_t1_dim": tilde_t1(q).dim,
            "decompositions": listed,
        }),
    )))
}

pub fn deform(doc: &PolytopeDocument, index: usize, degree: Option<&str>) -> Result<Outcome, CliError> {
    let input = load(doc)?;
    let q = &input.polytope;
    let decs = decompositions(q)?;
    if decs.is_empty() {
        return Err(CliError::NoDeformations);
    }
    let d = decs.get(index).ok_or_else(|| {
        CliError::Precondition(format!(
            "deformation: index {index} out of range ({} decompositions)",
            decs.len()
        ))
    })?;
    let gd = T1Context::new(&input.cone).gorenstein().cloned();
    let r = match degree {
        Some(s) => parse_degree(s, input.cone.rank())?,
        None => gd
            .as_ref()
            .map(|g| g.r_star.clone())
            .expect("cones over polygons are Gorenstein"),
    };
    let slice = stage("deformation", build_ambient(&input.cone, &r))?;
    let dd = stage("deformation", build_deformation(&slice, &d.summands))?;
    let fiber = verify_fiber(&dd);
    let ks = stage("deformation", kodaira_spencer_check(&dd, q))?;
    let frame: Vec<IntVector> = slice
        .lattice_basis
        .iter()
        .chain(std::iter::once(&slice.base_point))
        .cloned()
        .collect();
    let report = envelope(
        "deform",
        json!({
            "input": input.document.to_json(),
            "r_star": gd.as_ref().map_or(Value::Null, |g| json!(g.r_star)),
            "degree": negated(&r),
            "R": r,
            "index": index,
            "parameters": dd.parameters(),
            "slice": {
                "lattice_basis": int_vectors(&slice.lattice_basis),
                "base_point": slice.base_point,
                "frame": int_vectors(&frame),
                "polytope": vertices(&slice.polytope),
            },
            "summands": dd.summands.iter().map(vertices).collect::<Vec<_>>(),
            "vertex_condition": dd.vertex_condition.holds(),
            "p_vertices": dd.p_vertices.iter().map(|v| rat_vector(v)).collect::<Vec<_>>(),
            "total_space": {
                "rank": dd.total_cone.rank(),
                "rays": int_vectors(dd.total_cone.rays()),
                "facets": int_vectors(dd.total_cone.facet_normals()),
                "isolated": dd.total_cone.is_isolated(),
            },
            "functionals": int_vectors(&dd.functionals),
            "embedding": int_vectors(&dd.embedding),
            "regular_sequence": dd.regular_sequence.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
            "fiber_check": {
                "lattice": fiber.lattice,
                "cone": fiber.cone,
                "witness": fiber.witness,
                "verified": fiber.holds(),
            },
            "kodaira_spencer": { "span_dim": ks.span_dim, "parameters": ks.parameters },
        }),
    );
    Ok(Outcome::ok(report))
}

pub fn polar(doc: &PolytopeDocument) -> Result<Outcome, CliError> {
    let input = load(doc)?;
    let p = stage("polyhedral", input.polytope.polar())?;
    Ok(Outcome::ok(PolytopeDocument::from_polytope(&p).to_json()))
}

pub fn catalog(verify: bool) -> Result<Outcome, CliError> {
    let mut entries = Vec::new();
    let mut failures = Vec::new();
    for e in catalog_entries() {
        let q = e.polygon();
        let mut entry = json!({
            "name": e.name,
            "vertices": vertices(&q),
            "polar_figure": e.polar_figure,
            "t1_dim": e.t1_dim,
            "variety": e.variety,
            "decompositions": e.decompositions.iter().map(|d| json!({
                "shapes": d.shapes,
                "extremal": d.extremal,
                "span_dim": d.span_dim,
                "total_space_rays": d.total_rays,
                "total_space_facets": d.total_facets,
                "total_space": d.total_space,
            })).collect::<Vec<_>>(),
            "metadata": {
                "base_space": e.base_space,
                "note": "base_space and total_space names are recorded, not computed",
            },
        });
        if verify {
            let c = stage("polyhedral", cone_over_polytope(&q))?;
            let ctx = T1Context::new(&c);
            let r_star = ctx
                .gorenstein()
                .map(|g| g.r_star.clone())
                .expect("catalog cones are Gorenstein");
            let t1_dim = stage("t1", ctx.general(&r_star))?.dim;
            let decs = decompositions(&q)?;
            let slice = stage("deformation", build_ambient(&c, &r_star))?;
            let mut ok = t1_dim == e.t1_dim && decs.len() == e.decompositions.len();
            for (d, x) in decs.iter().zip(&e.decompositions) {
                let mut shape: Vec<usize> = d.summands.iter().map(|s| s.vertices().len()).collect();
                shape.sort();
                let span = stage("minkowski", kodaira_spencer_span(&q, d))?.dim;
                let dd = stage("deformation", build_deformation(&slice, &d.summands))?;
                ok &= shape == x.shapes
                    && d.extremal == x.extremal
                    && span == x.span_dim
                    && verify_fiber(&dd).holds()
                    && dd.total_cone.rays().len() == x.total_rays
                    && dd.total_cone.facet_normals().len() == x.total_facets;
            }
            let polar = stage("polyhedral", q.polar())?;
            let figure = e.polar_figure_polygon();
            ok &= stage("polyhedral", normal_form(&polar))? == stage("polyhedral", normal_form(&figure))?;
            if !ok {
                failures.push(e.name);
            }
            entry["verification"] = json!({
                "t1_dim": t1_dim,
                "decompositions": decs.len(),
                "passed": ok,
            });
        }
        entries.push(entry);
    }
    let report = envelope(
        "catalog",
        json!({ "entries": entries, "verified": verify.then_some(failures.is_empty()) }),
    );
    let error = (!failures.is_empty()).then(|| CliError::Mismatch(format!("catalog: entries {failures:?} disagree")));
    Ok(Outcome { report, error })
}

pub fn reflexive(bound: i64, primitive_only: bool) -> Result<Outcome, CliError> {
    if bound < 3 {
        return Err(CliError::Validation(format!(
            "reflexive: bound must be at least 3, got {bound}"
        )));
    }
    let list = enumerate_reflexive_polygons(bound);
    let keys: Vec<&Vec<[i64; 2]>> = list.classes.iter().map(|(k, _)| k).collect();
    let mut classes = Vec::new();
    for (i, (key, p)) in list.classes.iter().enumerate() {
        let primitive = p.has_primitive_edges();
        if primitive_only && !primitive {
            continue;
        }
        let polar = stage("polyhedral", p.polar())?;
        let polar_key = stage("polyhedral", normal_form(&polar))?;
        classes.push(json!({
            "class": i,
            "normal_form": key,
            "vertices": vertices(p),
            "primitive_edges": primitive,
            "polar_class": keys.iter().position(|k| **k == polar_key),
            "boundary_points": boundary_points(p),
        }));
    }
    Ok(Outcome::ok(envelope(
        "reflexive",
        json!({
            "bound": bound,
            "primitive_only": primitive_only,
            "total_classes": list.len(),
            "count": classes.len(),
            "classes": classes,
        }),
    )))
}

fn boundary_points(p: &LatticePolytope) -> i64 {
    p.edge_vectors()
        .iter()
        .map(|e| num_integer::gcd(to_i64(&e[0].to_integer()), to_i64(&e[1].to_integer())))
        .sum()
}
