//! Command implementations. Every command is a thin adapter: it resolves
//! entities, calls exactly one library operation, and serializes the
//! results; no mathematics happens here.


use algebroid::equivariant::EquivariantModule;
use algebroid::module::FModule;
use algebroid::{
    adjunction_check, amitsur_check, cartesian_check, coinduce, comodule_from_equivariant,
    comodule_of_descent, descent_of_comodule, enumerate_equivariant, equivariant_from_comodule,
    generator_witness, induce, Comodule, DescentDatum, Error as LibError, HopfAlgebroid, Matrix,
};

use crate::format::{AlgebroidRecord, Document, Record};
use crate::report::JsonReport;
use crate::resolve::{ResolveError, Resolver};

type Res<T> = Result<T, ResolveError>;

pub struct Outcome {
    pub report: JsonReport,
    pub derived: Vec<(String, Record)>,
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|&v| v as i64).collect())
        .collect()
}

fn module_record(doc: &Document, algebra_name: &str, m: &FModule) -> Res<Record> {
    if doc.get(algebra_name).is_none() {
        return Err(ResolveError::Input(format!(
            "algebra `{algebra_name}` is not in the document"
        )));
    }
    Ok(Record::Module {
        algebra: algebra_name.to_string(),
        dim: m.dim(),
        action: (0..m.algebra().dim())
            .map(|i| matrix_rows(m.action_of_basis(i)))
            .collect(),
    })
}

/// ψ back on pure-tensor coordinates: the canonical lift through the
/// section of the computed tensor basis.
fn comodule_record(algebroid_name: &str, module_name: &str, c: &Comodule) -> Record {
    let full = c.spaces().e.section().mul(c.psi());
    Record::Comodule {
        algebroid: algebroid_name.to_string(),
        module: module_name.to_string(),
        psi: matrix_rows(&full),
    }
}

fn descent_record(algebroid_name: &str, module_name: &str, d: &DescentDatum) -> Record {
    let full = d
        .spaces()
        .e
        .section()
        .mul(d.tau())
        .mul(d.descent_spaces().l.projection());
    Record::Descent {
        algebroid: algebroid_name.to_string(),
        module: module_name.to_string(),
        tau: matrix_rows(&full),
    }
}

fn equivariant_record(action_name: &str, module_name: &str, e: &EquivariantModule) -> Record {
    Record::Equivariant {
        action: action_name.to_string(),
        module: module_name.to_string(),
        pi: (0..e.action().group().order())
            .map(|g| matrix_rows(e.pi(g)))
            .collect(),
    }
}

/// The document name of an algebroid's base algebra A0.
fn a0_name(doc: &Document, algebroid_name: &str) -> Res<String> {
    match doc.get(algebroid_name) {
        Some(Record::Algebroid(AlgebroidRecord::Explicit { a0, .. })) => Ok(a0.clone()),
        Some(Record::Algebroid(AlgebroidRecord::FromAction { action })) => {
            match doc.get(action) {
                Some(Record::GroupAction { algebra, .. }) => Ok(algebra.clone()),
                _ => Err(ResolveError::Input(format!("unresolved reference `{action}`"))),
            }
        }
        _ => Err(ResolveError::Input(format!("`{algebroid_name}` is not an algebroid"))),
    }
}

fn comodule_parent_names(doc: &Document, name: &str) -> Res<(String, String)> {
    match doc.get(name) {
        Some(Record::Comodule { algebroid, module, .. }) => {
            Ok((algebroid.clone(), module.clone()))
        }
        _ => Err(ResolveError::Input(format!("`{name}` is not a comodule"))),
    }
}

pub fn check_algebroid(doc: &Document, name: &str) -> Res<Outcome> {
    let mut resolver = Resolver::new(doc);
    let mut report = JsonReport::new("check-algebroid");
    match doc.get(name) {
        Some(Record::Algebroid(AlgebroidRecord::FromAction { action })) => {
            let action = action.clone();
            let act = resolver.action(&action)?;
            match algebroid::group_action_algebroid(&act) {
                Ok((_, r)) => report.absorb(&r),
                Err(_) => {
                    // lenient re-run with the primary convention so every
                    // violated axiom is listed
                    let r = algebroid::hopf::group_action_algebroid_check(&act)
                        .map_err(|e| ResolveError::Verification(e.to_string()))?;
                    report.absorb(&r);
                }
            }
        }
        Some(Record::Algebroid(AlgebroidRecord::Explicit { .. })) => {
            let parts = resolver.algebroid_parts(name)?;
            let r = HopfAlgebroid::check(parts)
                .map_err(|e| ResolveError::Verification(e.to_string()))?;
            report.absorb(&r);
        }
        Some(_) => return Err(ResolveError::Input(format!("`{name}` is not an algebroid"))),
        None => return Err(ResolveError::Input(format!("unresolved reference `{name}`"))),
    }
    Ok(Outcome { report, derived: Vec::new() })
}

pub fn check_comodule(doc: &Document, name: &str) -> Res<Outcome> {
    let mut resolver = Resolver::new(doc);
    let (h, m, psi) = resolver.comodule_psi(name)?;
    let r = Comodule::check(&h, &m, psi).map_err(|e| ResolveError::Verification(e.to_string()))?;
    Ok(Outcome { report: JsonReport::from_check_report("check-comodule", &r), derived: vec![] })
}

pub fn check_descent(doc: &Document, name: &str) -> Res<Outcome> {
    let mut resolver = Resolver::new(doc);
    let (h, m, tau) = resolver.descent_tau(name)?;
    let r =
        DescentDatum::check(&h, &m, tau).map_err(|e| ResolveError::Verification(e.to_string()))?;
    Ok(Outcome { report: JsonReport::from_check_report("check-descent", &r), derived: vec![] })
}

pub fn check_algebroid_hom(doc: &Document, name: &str) -> Res<Outcome> {
    let mut resolver = Resolver::new(doc);
    let r = resolver.algebroid_hom_report(name)?;
    Ok(Outcome {
        report: JsonReport::from_check_report("check-algebroid-hom", &r),
        derived: vec![],
    })
}

pub fn to_comodule(doc: &Document, name: &str) -> Res<Outcome> {
    let mut resolver = Resolver::new(doc);
    let d = resolver.descent(name)?;
    let c = comodule_of_descent(&d).map_err(|e| ResolveError::Verification(e.to_string()))?;
    let Some(Record::Descent { algebroid, module, .. }) = doc.get(name) else {
        return Err(ResolveError::Input(format!("`{name}` is not a descent datum")));
    };
    let mut report = JsonReport::new("to-comodule");
    report.check("descent_valid", true, None);
    report.check("comodule_valid", true, None);
    let derived_name = format!("{name}_comodule");
    report.derived_outputs.push(derived_name.clone());
    Ok(Outcome {
        report,
        derived: vec![(derived_name, comodule_record(algebroid, module, &c))],
    })
}

pub fn to_descent(doc: &Document, name: &str) -> Res<Outcome> {
    let mut resolver = Resolver::new(doc);
    let c = resolver.comodule(name)?;
    let d = descent_of_comodule(&c).map_err(|e| ResolveError::Verification(e.to_string()))?;
    let (algebroid, module) = comodule_parent_names(doc, name)?;
    let mut report = JsonReport::new("to-descent");
    report.check("comodule_valid", true, None);
    report.check("tau_and_inverse_verified", true, None);
    let derived_name = format!("{name}_descent");
    report.derived_outputs.push(derived_name.clone());
    Ok(Outcome {
        report,
        derived: vec![(derived_name, descent_record(&algebroid, &module, &d))],
    })
}

pub fn induce_cmd(doc: &Document, hom: &str, comodule: &str) -> Res<Outcome> {
    let mut resolver = Resolver::new(doc);
    let (f, _) = resolver.algebroid_hom(hom)?;
    let c = resolver.comodule(comodule)?;
    let ind = induce(&f, &c).map_err(|e| ResolveError::Verification(e.to_string()))?;
    let Some(Record::AlgebroidHom { dst, .. }) = doc.get(hom) else {
        return Err(ResolveError::Input(format!("`{hom}` is not an algebroid_hom")));
    };
    let algebra = a0_name(doc, dst)?;
    let module_name = format!("{comodule}_induced_module");
    let comodule_name = format!("{comodule}_induced");
    let mut report = JsonReport::new("induce");
    report.check("induced_comodule_valid", true, None);
    report.notes.push(format!("induced dimension: {}", ind.comodule.dim()));
    report.derived_outputs.push(module_name.clone());
    report.derived_outputs.push(comodule_name.clone());
    Ok(Outcome {
        report,
        derived: vec![
            (module_name.clone(), module_record(doc, &algebra, ind.comodule.module())?),
            (comodule_name, comodule_record(dst, &module_name, &ind.comodule)),
        ],
    })
}

pub fn coinduce_cmd(doc: &Document, hom: &str, comodule: &str) -> Res<Outcome> {
    let mut resolver = Resolver::new(doc);
    let (f, _) = resolver.algebroid_hom(hom)?;
    let p = resolver.comodule(comodule)?;
    let (u, _) = coinduce(&f, &p).map_err(|e| ResolveError::Verification(e.to_string()))?;
    let Some(Record::AlgebroidHom { src, .. }) = doc.get(hom) else {
        return Err(ResolveError::Input(format!("`{hom}` is not an algebroid_hom")));
    };
    let algebra = a0_name(doc, src)?;
    let module_name = format!("{comodule}_coinduced_module");
    let comodule_name = format!("{comodule}_coinduced");
    let mut report = JsonReport::new("coinduce");
    report.check("coinduced_comodule_valid", true, None);
    report.notes.push(format!("coinduced dimension: {}", u.dim()));
    report.derived_outputs.push(module_name.clone());
    report.derived_outputs.push(comodule_name.clone());
    Ok(Outcome {
        report,
        derived: vec![
            (module_name.clone(), module_record(doc, &algebra, u.module())?),
            (comodule_name, comodule_record(src, &module_name, &u)),
        ],
    })
}

pub fn adjoint_check_cmd(doc: &Document, hom: &str, left: &str, right: &str) -> Res<Outcome> {
    let mut resolver = Resolver::new(doc);
    let (f, _) = resolver.algebroid_hom(hom)?;
    let m = resolver.comodule(left)?;
    let p = resolver.comodule(right)?;
    let r = adjunction_check(&f, &m, &p).map_err(|e| ResolveError::Verification(e.to_string()))?;
    let mut report = JsonReport::new("adjoint-check");
    report.check("dimensions_agree", r.dim_left == r.dim_right, None);
    report.check("mutually_inverse", r.roundtrip_ok, r.mismatch.clone());
    report.notes.push(format!("dim_left = {}, dim_right = {}", r.dim_left, r.dim_right));
    Ok(Outcome { report, derived: vec![] })
}

pub fn equivariant_to_comodule(doc: &Document, name: &str) -> Res<Outcome> {
    let mut resolver = Resolver::new(doc);
    let e = resolver.equivariant(name)?;
    let Some(Record::Equivariant { action, module, .. }) = doc.get(name) else {
        return Err(ResolveError::Input(format!("`{name}` is not an equivariant module")));
    };
    // find an algebroid entity derived from the same action, or derive one
    let mut derived = Vec::new();
    let algebroid_name = doc
        .entities
        .iter()
        .find_map(|(n, r)| match r {
            Record::Algebroid(AlgebroidRecord::FromAction { action: a }) if a == action => {
                Some(n.clone())
            }
            _ => None,
        })
        .unwrap_or_else(|| {
            let n = format!("{action}_algebroid");
            derived.push((
                n.clone(),
                Record::Algebroid(AlgebroidRecord::FromAction { action: action.clone() }),
            ));
            n
        });
    let act = resolver.action(action)?;
    let (h, _) = algebroid::group_action_algebroid(&act)
        .map_err(|e| ResolveError::Verification(e.to_string()))?;
    let c = comodule_from_equivariant(&h, &e)
        .map_err(|e| ResolveError::Verification(e.to_string()))?;
    let mut report = JsonReport::new("equivariant-to-comodule");
    report.check("comodule_valid", true, None);
    let derived_name = format!("{name}_comodule");
    report.derived_outputs.push(derived_name.clone());
    derived.push((derived_name, comodule_record(&algebroid_name, module, &c)));
    Ok(Outcome { report, derived })
}

pub fn comodule_to_equivariant(doc: &Document, name: &str) -> Res<Outcome> {
    let mut resolver = Resolver::new(doc);
    let c = resolver.comodule(name)?;
    let (algebroid_name, module_name) = comodule_parent_names(doc, name)?;
    let action_name = resolver.action_name_of_algebroid(&algebroid_name).ok_or_else(|| {
        ResolveError::Verification(LibError::NotGroupActionAlgebroid.to_string())
    })?;
    let e =
        equivariant_from_comodule(&c).map_err(|e| ResolveError::Verification(e.to_string()))?;
    let mut report = JsonReport::new("comodule-to-equivariant");
    report.check("equivariant_valid", true, None);
    let derived_name = format!("{name}_equivariant");
    report.derived_outputs.push(derived_name.clone());
    Ok(Outcome {
        report,
        derived: vec![(derived_name, equivariant_record(&action_name, &module_name, &e))],
    })
}

pub fn equivariant_enumerate(
    doc: &Document,
    action: &str,
    dim: usize,
    ceiling: u64,
) -> Res<Outcome> {
    let mut resolver = Resolver::new(doc);
    let act = resolver.action(action)?;
    let found = match enumerate_equivariant(&act, dim, ceiling) {
        Ok(v) => v,
        Err(e @ LibError::SearchSpaceTooLarge { .. }) => {
            return Err(ResolveError::Input(e.to_string()))
        }
        Err(e) => return Err(ResolveError::Verification(e.to_string())),
    };
    let Some(Record::GroupAction { algebra, .. }) = doc.get(action) else {
        return Err(ResolveError::Input(format!("`{action}` is not a group_action")));
    };
    let mut report = JsonReport::new("equivariant-enumerate");
    report.check("enumeration_complete", true, None);
    report.notes.push(format!("structures found: {}", found.len()));
    let mut derived = Vec::new();
    for (i, e) in found.iter().enumerate() {
        let module_name = format!("{action}_enum{dim}_{i}_module");
        let name = format!("{action}_enum{dim}_{i}");
        derived.push((module_name.clone(), module_record(doc, algebra, e.module())?));
        derived.push((name.clone(), equivariant_record(action, &module_name, e)));
        report.derived_outputs.push(name);
    }
    Ok(Outcome { report, derived })
}

pub fn amitsur_cmd(doc: &Document, hom: &str, module: &str) -> Res<Outcome> {
    let mut resolver = Resolver::new(doc);
    let f = resolver.hom(hom)?;
    let m = resolver.module(module)?;
    let r = amitsur_check(&f, &m).map_err(|e| ResolveError::Verification(e.to_string()))?;
    let mut report = JsonReport::new("amitsur");
    report.check("unit_map_injective", r.injective, None);
    report.check("equalizer", r.equalizer, None);
    report.check("faithfully_flat", r.faithfully_flat, None);
    report.notes.push(format!(
        "dimensions: M = {}, B(x)M = {}, B(x)B(x)M = {}",
        r.dim_m, r.dim_bm, r.dim_bbm
    ));
    Ok(Outcome { report, derived: vec![] })
}

pub fn cartesian_check_cmd(
    doc: &Document,
    hom: &str,
    src_module: &str,
    dst_module: &str,
    rho: &[Vec<i64>],
) -> Res<Outcome> {
    let mut resolver = Resolver::new(doc);
    let f = resolver.hom(hom)?;
    let mb = resolver.module(src_module)?;
    let mc = resolver.module(dst_module)?;
    let field = mb.algebra().field();
    let rows: Vec<Vec<u32>> = rho
        .iter()
        .map(|r| r.iter().map(|&v| field.reduce(v)).collect())
        .collect();
    let rho_m = Matrix::from_rows(field, rows);
    let mut report = JsonReport::new("cartesian-check");
    match cartesian_check(&f, &mb, &mc, &rho_m) {
        Ok(r) => {
            report.check("semilinear", true, None);
            report.check("cartesian", r.cartesian, None);
            report.notes.push(format!(
                "adjoint rank {} on {} -> {}",
                r.adjoint_rank, r.source_dim, r.target_dim
            ));
        }
        Err(LibError::NotSemilinear { b, m }) => {
            report.check("semilinear", false, Some(format!("({b}, {m})")));
            report.check("cartesian", false, None);
        }
        Err(e) => return Err(ResolveError::Verification(e.to_string())),
    }
    Ok(Outcome { report, derived: vec![] })
}

pub fn generator_witness_cmd(doc: &Document, name: &str, vector: &[i64]) -> Res<Outcome> {
    let mut resolver = Resolver::new(doc);
    let c = resolver.comodule(name)?;
    let field = c.module().algebra().field();
    if vector.len() != c.dim() {
        return Err(ResolveError::Input(format!(
            "vector must have length {}, got {}",
            c.dim(),
            vector.len()
        )));
    }
    let x: Vec<u32> = vector.iter().map(|&v| field.reduce(v)).collect();
    if x.iter().all(|&v| v == 0) {
        return Err(ResolveError::Input(LibError::ZeroVector.to_string()));
    }
    let (algebroid_name, _) = comodule_parent_names(doc, name)?;
    let w = generator_witness(&c, &x).map_err(|e| ResolveError::Verification(e.to_string()))?;
    let mut report = JsonReport::new("generator-witness");
    report.check("witness_found", true, None);
    report.notes.push(format!("copies of A1 used: {}", w.copies));
    report.notes.push(format!("preimage: {:?}", w.preimage));
    let module_name = format!("{name}_witness_module");
    let comodule_name = format!("{name}_witness");
    let algebra = a0_name(doc, &algebroid_name)?;
    report.derived_outputs.push(comodule_name.clone());
    Ok(Outcome {
        report,
        derived: vec![
            (module_name.clone(), module_record(doc, &algebra, w.subcomodule.module())?),
            (comodule_name, comodule_record(&algebroid_name, &module_name, &w.subcomodule)),
        ],
    })
}
