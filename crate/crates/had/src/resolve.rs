//! Resolution of parsed records into verified library objects, with
//! memoization and cycle detection. Field elements are reduced mod p
//! here, once the governing algebra is known.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use algebroid::equivariant::{EquivariantModule, FiniteGroup, GroupAction};
use algebroid::module::FModule;
use algebroid::{
    group_action_algebroid, AlgebraHom, AlgebroidHom, CheckReport, Comodule, DescentDatum,
    FiniteAlgebra, HopfAlgebroid, HopfParts, Matrix, PrimeField,
};

use crate::format::{AlgebroidRecord, Document, Record};

/// A resolution failure: either a reference problem (exit code 2) or a
/// verification failure from the library (exit code 1).
#[derive(Debug)]
pub enum ResolveError {
    /// Missing reference, cycle, or shape mismatch in the document.
    Input(String),
    /// The entity parsed but failed mathematical verification.
    Verification(String),
}

impl std::fmt::Display for ResolveError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ResolveError::Input(s) => write!(f, "input error: {s}"),
            ResolveError::Verification(s) => write!(f, "verification failed: {s}"),
        }
    }
}

type Res<T> = Result<T, ResolveError>;

pub struct Resolver<'a> {
    doc: &'a Document,
    in_progress: HashSet<String>,
    algebras: HashMap<String, Arc<FiniteAlgebra>>,
    groups: HashMap<String, Arc<FiniteGroup>>,
    homs: HashMap<String, AlgebraHom>,
    modules: HashMap<String, Arc<FModule>>,
    actions: HashMap<String, Arc<GroupAction>>,
    algebroids: HashMap<String, Arc<HopfAlgebroid>>,
    comodules: HashMap<String, Arc<Comodule>>,
}

fn reduce_matrix(f: PrimeField, rows: &[Vec<i64>], what: &str) -> Res<Matrix> {
    let cols = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != cols) {
        return Err(ResolveError::Input(format!("{what}: ragged matrix")));
    }
    let data: Vec<Vec<u32>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| f.reduce(v)).collect())
        .collect();
    Ok(Matrix::from_rows(f, data))
}

impl<'a> Resolver<'a> {
    pub fn new(doc: &'a Document) -> Self {
        Resolver {
            doc,
            in_progress: HashSet::new(),
            algebras: HashMap::new(),
            groups: HashMap::new(),
            homs: HashMap::new(),
            modules: HashMap::new(),
            actions: HashMap::new(),
            algebroids: HashMap::new(),
            comodules: HashMap::new(),
        }
    }

    fn lookup(&self, name: &str) -> Res<&Record> {
        self.doc
            .get(name)
            .ok_or_else(|| ResolveError::Input(format!("unresolved reference `{name}`")))
    }

    fn enter(&mut self, name: &str) -> Res<()> {
        if !self.in_progress.insert(name.to_string()) {
            return Err(ResolveError::Input(format!("cyclic reference through `{name}`")));
        }
        Ok(())
    }

    fn leave(&mut self, name: &str) {
        self.in_progress.remove(name);
    }

    pub fn algebra(&mut self, name: &str) -> Res<Arc<FiniteAlgebra>> {
        if let Some(a) = self.algebras.get(name) {
            return Ok(a.clone());
        }
        self.enter(name)?;
        let Record::Algebra { p, dim, unit, mul, labels } = self.lookup(name)?.clone() else {
            self.leave(name);
            return Err(ResolveError::Input(format!("`{name}` is not an algebra")));
        };
        let field = PrimeField::new(p)
            .map_err(|e| ResolveError::Verification(format!("algebra `{name}`: {e}")))?;
        if mul.len() != dim || unit.len() != dim {
            self.leave(name);
            return Err(ResolveError::Input(format!("algebra `{name}`: shape mismatch")));
        }
        let mul_u: Vec<Vec<Vec<u32>>> = mul
            .iter()
            .map(|row| row.iter().map(|v| v.iter().map(|&x| field.reduce(x)).collect()).collect())
            .collect();
        let unit_u: Vec<u32> = unit.iter().map(|&x| field.reduce(x)).collect();
        let a = FiniteAlgebra::new(p, &mul_u, &unit_u, labels)
            .map_err(|e| ResolveError::Verification(format!("algebra `{name}`: {e}")))?;
        self.leave(name);
        self.algebras.insert(name.to_string(), a.clone());
        Ok(a)
    }

    pub fn group(&mut self, name: &str) -> Res<Arc<FiniteGroup>> {
        if let Some(g) = self.groups.get(name) {
            return Ok(g.clone());
        }
        let Record::Group { table } = self.lookup(name)?.clone() else {
            return Err(ResolveError::Input(format!("`{name}` is not a group")));
        };
        let t: Vec<Vec<usize>> = table
            .iter()
            .map(|r| r.iter().map(|&v| v.max(0) as usize).collect())
            .collect();
        let g = FiniteGroup::new(t)
            .map_err(|e| ResolveError::Verification(format!("group `{name}`: {e}")))?;
        self.groups.insert(name.to_string(), g.clone());
        Ok(g)
    }

    pub fn hom(&mut self, name: &str) -> Res<AlgebraHom> {
        if let Some(h) = self.homs.get(name) {
            return Ok(h.clone());
        }
        self.enter(name)?;
        let Record::Hom { src, dst, matrix } = self.lookup(name)?.clone() else {
            self.leave(name);
            return Err(ResolveError::Input(format!("`{name}` is not a hom")));
        };
        let result = (|| {
            let s = self.algebra(&src)?;
            let d = self.algebra(&dst)?;
            let m = reduce_matrix(s.field(), &matrix, &format!("hom `{name}`"))?;
            AlgebraHom::new(s, d, m)
                .map_err(|e| ResolveError::Verification(format!("hom `{name}`: {e}")))
        })();
        self.leave(name);
        let h = result?;
        self.homs.insert(name.to_string(), h.clone());
        Ok(h)
    }

    pub fn module(&mut self, name: &str) -> Res<Arc<FModule>> {
        if let Some(m) = self.modules.get(name) {
            return Ok(m.clone());
        }
        self.enter(name)?;
        let Record::Module { algebra, dim, action } = self.lookup(name)?.clone() else {
            self.leave(name);
            return Err(ResolveError::Input(format!("`{name}` is not a module")));
        };
        let result = (|| {
            let a = self.algebra(&algebra)?;
            let mats = action
                .iter()
                .map(|m| reduce_matrix(a.field(), m, &format!("module `{name}`")))
                .collect::<Res<Vec<_>>>()?;
            FModule::new(a, dim, mats)
                .map_err(|e| ResolveError::Verification(format!("module `{name}`: {e}")))
        })();
        self.leave(name);
        let m = result?;
        self.modules.insert(name.to_string(), m.clone());
        Ok(m)
    }

    pub fn action(&mut self, name: &str) -> Res<Arc<GroupAction>> {
        if let Some(a) = self.actions.get(name) {
            return Ok(a.clone());
        }
        self.enter(name)?;
        let Record::GroupAction { group, algebra, rho } = self.lookup(name)?.clone() else {
            self.leave(name);
            return Err(ResolveError::Input(format!("`{name}` is not a group_action")));
        };
        let result = (|| {
            let g = self.group(&group)?;
            let b = self.algebra(&algebra)?;
            let mats = rho
                .iter()
                .map(|m| reduce_matrix(b.field(), m, &format!("group_action `{name}`")))
                .collect::<Res<Vec<_>>>()?;
            GroupAction::new(g, b, mats)
                .map_err(|e| ResolveError::Verification(format!("group_action `{name}`: {e}")))
        })();
        self.leave(name);
        let a = result?;
        self.actions.insert(name.to_string(), a.clone());
        Ok(a)
    }

    /// The raw components of an explicit algebroid (used by both the
    /// strict resolver and the lenient checker).
    pub fn algebroid_parts(&mut self, name: &str) -> Res<HopfParts> {
        let Record::Algebroid(AlgebroidRecord::Explicit {
            a0,
            a1,
            eta_l,
            eta_r,
            eps,
            kappa,
            nabla,
        }) = self.lookup(name)?.clone()
        else {
            return Err(ResolveError::Input(format!("`{name}` is not an explicit algebroid")));
        };
        let a0 = self.algebra(&a0)?;
        let a1 = self.algebra(&a1)?;
        let nabla_full = reduce_matrix(a0.field(), &nabla, &format!("algebroid `{name}` nabla"))?;
        Ok(HopfParts {
            a0,
            a1,
            eta_l: self.hom(&eta_l)?,
            eta_r: self.hom(&eta_r)?,
            eps: self.hom(&eps)?,
            kappa: self.hom(&kappa)?,
            nabla_full,
            hint_l: None,
            hint_r: None,
        })
    }

    pub fn algebroid(&mut self, name: &str) -> Res<Arc<HopfAlgebroid>> {
        if let Some(h) = self.algebroids.get(name) {
            return Ok(h.clone());
        }
        self.enter(name)?;
        let record = self.lookup(name)?.clone();
        let result = (|| match record {
            Record::Algebroid(AlgebroidRecord::FromAction { action }) => {
                let act = self.action(&action)?;
                group_action_algebroid(&act)
                    .map(|(h, _)| h)
                    .map_err(|e| ResolveError::Verification(format!("algebroid `{name}`: {e}")))
            }
            Record::Algebroid(AlgebroidRecord::Explicit { .. }) => {
                let parts = self.algebroid_parts(name)?;
                HopfAlgebroid::new(parts)
                    .map(|(h, _)| h)
                    .map_err(|e| ResolveError::Verification(format!("algebroid `{name}`: {e}")))
            }
            _ => Err(ResolveError::Input(format!("`{name}` is not an algebroid"))),
        })();
        self.leave(name);
        let h = result?;
        self.algebroids.insert(name.to_string(), h.clone());
        Ok(h)
    }

    pub fn algebroid_hom(&mut self, name: &str) -> Res<(AlgebroidHom, CheckReport)> {
        let Record::AlgebroidHom { src, dst, phi0, phi1 } = self.lookup(name)?.clone() else {
            return Err(ResolveError::Input(format!("`{name}` is not an algebroid_hom")));
        };
        let s = self.algebroid(&src)?;
        let d = self.algebroid(&dst)?;
        let p0 = self.hom(&phi0)?;
        let p1 = self.hom(&phi1)?;
        AlgebroidHom::new(s, d, p0, p1)
            .map_err(|e| ResolveError::Verification(format!("algebroid_hom `{name}`: {e}")))
    }

    /// The five-identity report without failing (lenient).
    pub fn algebroid_hom_report(&mut self, name: &str) -> Res<CheckReport> {
        let Record::AlgebroidHom { src, dst, phi0, phi1 } = self.lookup(name)?.clone() else {
            return Err(ResolveError::Input(format!("`{name}` is not an algebroid_hom")));
        };
        let s = self.algebroid(&src)?;
        let d = self.algebroid(&dst)?;
        let p0 = self.hom(&phi0)?;
        let p1 = self.hom(&phi1)?;
        AlgebroidHom::check(&s, &d, &p0, &p1)
            .map_err(|e| ResolveError::Verification(format!("algebroid_hom `{name}`: {e}")))
    }

    /// Resolves ψ from pure-tensor coordinates into the computed basis.
    pub fn comodule_psi(&mut self, name: &str) -> Res<(Arc<HopfAlgebroid>, Arc<FModule>, Matrix)> {
        let Record::Comodule { algebroid, module, psi } = self.lookup(name)?.clone() else {
            return Err(ResolveError::Input(format!("`{name}` is not a comodule")));
        };
        let h = self.algebroid(&algebroid)?;
        let m = self.module(&module)?;
        let psi_full = reduce_matrix(h.a0().field(), &psi, &format!("comodule `{name}` psi"))?;
        let sp = h
            .comod_spaces(&m)
            .map_err(|e| ResolveError::Verification(format!("comodule `{name}`: {e}")))?;
        if psi_full.rows() != h.a1().dim() * m.dim() || psi_full.cols() != m.dim() {
            return Err(ResolveError::Input(format!(
                "comodule `{name}`: psi must be {}x{} on pure-tensor coordinates",
                h.a1().dim() * m.dim(),
                m.dim()
            )));
        }
        Ok((h, m, sp.e.projection().mul(&psi_full)))
    }

    pub fn comodule(&mut self, name: &str) -> Res<Arc<Comodule>> {
        if let Some(c) = self.comodules.get(name) {
            return Ok(c.clone());
        }
        let (h, m, psi) = self.comodule_psi(name)?;
        let c = Comodule::new(&h, &m, psi)
            .map(|(c, _)| c)
            .map_err(|e| ResolveError::Verification(format!("comodule `{name}`: {e}")))?;
        self.comodules.insert(name.to_string(), c.clone());
        Ok(c)
    }

    /// Resolves τ from pure-tensor coordinates into the computed bases.
    pub fn descent_tau(&mut self, name: &str) -> Res<(Arc<HopfAlgebroid>, Arc<FModule>, Matrix)> {
        let Record::Descent { algebroid, module, tau } = self.lookup(name)?.clone() else {
            return Err(ResolveError::Input(format!("`{name}` is not a descent datum")));
        };
        let h = self.algebroid(&algebroid)?;
        let m = self.module(&module)?;
        let tau_full = reduce_matrix(h.a0().field(), &tau, &format!("descent `{name}` tau"))?;
        let full = h.a1().dim() * m.dim();
        if tau_full.rows() != full || tau_full.cols() != full {
            return Err(ResolveError::Input(format!(
                "descent `{name}`: tau must be {full}x{full} on pure-tensor coordinates"
            )));
        }
        let sp = h
            .comod_spaces(&m)
            .map_err(|e| ResolveError::Verification(format!("descent `{name}`: {e}")))?;
        let ds = sp
            .descent(&h)
            .map_err(|e| ResolveError::Verification(format!("descent `{name}`: {e}")))?;
        // the given full map must respect the balancing of L
        let projected = sp.e.projection().mul(&tau_full);
        if let Some((a, x, y)) = ds.l.balancing_witness(&projected) {
            return Err(ResolveError::Verification(format!(
                "descent `{name}`: tau does not respect the balancing relation at ({a}, {x}, {y})"
            )));
        }
        Ok((h, m, projected.mul(ds.l.section())))
    }

    pub fn descent(&mut self, name: &str) -> Res<Arc<DescentDatum>> {
        let (h, m, tau) = self.descent_tau(name)?;
        DescentDatum::new(&h, &m, tau)
            .map(|(d, _)| d)
            .map_err(|e| ResolveError::Verification(format!("descent `{name}`: {e}")))
    }

    pub fn equivariant(&mut self, name: &str) -> Res<EquivariantModule> {
        let Record::Equivariant { action, module, pi } = self.lookup(name)?.clone() else {
            return Err(ResolveError::Input(format!("`{name}` is not an equivariant module")));
        };
        let act = self.action(&action)?;
        let m = self.module(&module)?;
        let mats = pi
            .iter()
            .map(|x| reduce_matrix(m.algebra().field(), x, &format!("equivariant `{name}`")))
            .collect::<Res<Vec<_>>>()?;
        EquivariantModule::new(act, m, mats)
            .map_err(|e| ResolveError::Verification(format!("equivariant `{name}`: {e}")))
    }

    /// The document-declared action name behind a comodule's algebroid,
    /// when that algebroid is action-derived.
    pub fn action_name_of_algebroid(&self, name: &str) -> Option<String> {
        match self.doc.get(name) {
            Some(Record::Algebroid(AlgebroidRecord::FromAction { action })) => {
                Some(action.clone())
            }
            _ => None,
        }
    }
}
