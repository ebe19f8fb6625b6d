//! One-off generator for the shipped definition files in defs/.
//! Emits canonical serializations built through the library, so the
//! byte-identity round-trip tests pin exactly what the serializer writes.

use std::sync::Arc;
#[path = "../src/format.rs"]
mod format;

use algebroid::equivariant::{EquivariantModule, FiniteGroup, GroupAction};
use algebroid::module::FModule;
use algebroid::{
    comodule_from_equivariant, descent_of_comodule, group_action_algebroid, Comodule,
    DescentDatum, FiniteAlgebra, HopfAlgebroid, Matrix,
};
use format::{AlgebroidRecord, Document, Record};

fn rows(m: &Matrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|&v| v as i64).collect()).collect()
}

fn algebra_record(a: &FiniteAlgebra) -> Record {
    Record::Algebra {
        p: a.p() as u64,
        dim: a.dim(),
        unit: a.unit().iter().map(|&v| v as i64).collect(),
        mul: a
            .structure_constants()
            .iter()
            .map(|row| row.iter().map(|v| v.iter().map(|&x| x as i64).collect()).collect())
            .collect(),
        labels: a.labels().map(|l| l.to_vec()),
    }
}

fn module_record(algebra: &str, m: &FModule) -> Record {
    Record::Module {
        algebra: algebra.into(),
        dim: m.dim(),
        action: (0..m.algebra().dim()).map(|i| rows(m.action_of_basis(i))).collect(),
    }
}

fn comodule_record(algebroid: &str, module: &str, c: &Comodule) -> Record {
    Record::Comodule {
        algebroid: algebroid.into(),
        module: module.into(),
        psi: rows(&c.spaces().e.section().mul(c.psi())),
    }
}

fn descent_record(algebroid: &str, module: &str, d: &DescentDatum) -> Record {
    Record::Descent {
        algebroid: algebroid.into(),
        module: module.into(),
        tau: rows(&d.spaces().e.section().mul(d.tau()).mul(d.descent_spaces().l.projection())),
    }
}

fn swap_setup() -> (Arc<GroupAction>, Arc<HopfAlgebroid>) {
    let b = FiniteAlgebra::split_product(3, 2).unwrap();
    let z2 = FiniteGroup::cyclic(2).unwrap();
    let act =
        GroupAction::by_basis_permutations(z2, b, vec![vec![0, 1], vec![1, 0]]).unwrap();
    let h = group_action_algebroid(&act).unwrap().0;
    (act, h)
}

fn main() {
    std::fs::create_dir_all("defs").unwrap();

    // ---- unit_f2.had: the discrete algebroid on F_2 ----
    {
        let f2 = FiniteAlgebra::prime_field(2).unwrap();
        let mut doc = Document::default();
        doc.push("F2".into(), algebra_record(&f2)).unwrap();
        doc.push(
            "idF2".into(),
            Record::Hom { src: "F2".into(), dst: "F2".into(), matrix: vec![vec![1]] },
        )
        .unwrap();
        doc.push(
            "U".into(),
            Record::Algebroid(AlgebroidRecord::Explicit {
                a0: "F2".into(),
                a1: "F2".into(),
                eta_l: "idF2".into(),
                eta_r: "idF2".into(),
                eps: "idF2".into(),
                kappa: "idF2".into(),
                nabla: vec![vec![1]],
            }),
        )
        .unwrap();
        std::fs::write("defs/unit_f2.had", format::serialize(&doc)).unwrap();
    }

    // ---- z2_swap_f3.had: the swap action with two comodules and a descent datum ----
    {
        let (act, h) = swap_setup();
        let b = act.algebra().clone();
        let m = FModule::regular(&b);
        let regular = EquivariantModule::new(
            act.clone(),
            m.clone(),
            vec![act.rho(0).clone(), act.rho(1).clone()],
        )
        .unwrap();
        let c_reg = comodule_from_equivariant(&h, &regular).unwrap();
        let minus_swap = act.rho(1).scale(2);
        let twisted =
            EquivariantModule::new(act.clone(), m.clone(), vec![act.rho(0).clone(), minus_swap])
                .unwrap();
        let c_sign = comodule_from_equivariant(&h, &twisted).unwrap();
        let d_reg = descent_of_comodule(&c_reg).unwrap();

        let mut doc = Document::default();
        doc.push("B".into(), algebra_record(&b)).unwrap();
        doc.push("Z2".into(), Record::Group { table: vec![vec![0, 1], vec![1, 0]] }).unwrap();
        doc.push(
            "swap".into(),
            Record::GroupAction {
                group: "Z2".into(),
                algebra: "B".into(),
                rho: vec![rows(act.rho(0)), rows(act.rho(1))],
            },
        )
        .unwrap();
        doc.push("G".into(), Record::Algebroid(AlgebroidRecord::FromAction { action: "swap".into() }))
            .unwrap();
        doc.push("M".into(), module_record("B", &m)).unwrap();
        doc.push("Creg".into(), comodule_record("G", "M", &c_reg)).unwrap();
        doc.push("Csign".into(), comodule_record("G", "M", &c_sign)).unwrap();
        doc.push("Dreg".into(), descent_record("G", "M", &d_reg)).unwrap();
        std::fs::write("defs/z2_swap_f3.had", format::serialize(&doc)).unwrap();
    }

    // ---- restriction_f3.had: the four-group restriction with comodules ----
    {
        let b = FiniteAlgebra::split_product(3, 2).unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let four = FiniteGroup::product(&z2, &z2).unwrap();
        let perms: Vec<Vec<usize>> = (0..4)
            .map(|g| {
                let (x, y) = (g / 2, g % 2);
                if (x + y) % 2 == 1 {
                    vec![1, 0]
                } else {
                    vec![0, 1]
                }
            })
            .collect();
        let act_big = GroupAction::by_basis_permutations(four.clone(), b.clone(), perms).unwrap();
        let (src, _) = group_action_algebroid(&act_big).unwrap();
        let act_small =
            GroupAction::by_basis_permutations(z2, b.clone(), vec![vec![0, 1], vec![1, 0]])
                .unwrap();
        let (dst, _) = group_action_algebroid(&act_small).unwrap();
        let f = b.field();
        let nb = b.dim();
        let sub = [0usize, 2];
        let mut phi1_m = Matrix::zero(f, dst.a1().dim(), src.a1().dim());
        for (small, &big) in sub.iter().enumerate() {
            for i in 0..nb {
                phi1_m.set(small * nb + i, big * nb + i, 1);
            }
        }
        let m_src = FModule::regular(&b);
        let c_src = Comodule::extended(&src, &m_src).unwrap();
        let c_src_module = c_src.module().clone();
        let twisted = {
            let minus_swap = act_small.rho(1).scale(2);
            EquivariantModule::new(
                act_small.clone(),
                FModule::regular(&b),
                vec![act_small.rho(0).clone(), minus_swap],
            )
            .unwrap()
        };
        let p_dst = comodule_from_equivariant(&dst, &twisted).unwrap();

        let mut doc = Document::default();
        doc.push("B".into(), algebra_record(&b)).unwrap();
        doc.push("Z2".into(), Record::Group { table: vec![vec![0, 1], vec![1, 0]] }).unwrap();
        doc.push("V4".into(), Record::Group { table: four.table().iter().map(|r| r.iter().map(|&v| v as i64).collect()).collect() }).unwrap();
        doc.push(
            "act_big".into(),
            Record::GroupAction {
                group: "V4".into(),
                algebra: "B".into(),
                rho: (0..4).map(|g| rows(act_big.rho(g))).collect(),
            },
        )
        .unwrap();
        doc.push(
            "act_small".into(),
            Record::GroupAction {
                group: "Z2".into(),
                algebra: "B".into(),
                rho: (0..2).map(|g| rows(act_small.rho(g))).collect(),
            },
        )
        .unwrap();
        doc.push("Gbig".into(), Record::Algebroid(AlgebroidRecord::FromAction { action: "act_big".into() })).unwrap();
        doc.push("Gsmall".into(), Record::Algebroid(AlgebroidRecord::FromAction { action: "act_small".into() })).unwrap();
        doc.push(
            "idB".into(),
            Record::Hom {
                src: "B".into(),
                dst: "B".into(),
                matrix: vec![vec![1, 0], vec![0, 1]],
            },
        )
        .unwrap();
        // A1 algebras of the two algebroids must be named to declare phi1
        doc.push("A1big".into(), algebra_record(src.a1())).unwrap();
        doc.push("A1small".into(), algebra_record(dst.a1())).unwrap();
        doc.push(
            "res".into(),
            Record::Hom { src: "A1big".into(), dst: "A1small".into(), matrix: rows(&phi1_m) },
        )
        .unwrap();
        doc.push(
            "F".into(),
            Record::AlgebroidHom {
                src: "Gbig".into(),
                dst: "Gsmall".into(),
                phi0: "idB".into(),
                phi1: "res".into(),
            },
        )
        .unwrap();
        doc.push("Mext".into(), module_record("B", &c_src_module)).unwrap();
        doc.push("Msrc".into(), comodule_record("Gbig", "Mext", &c_src)).unwrap();
        doc.push("Mreg".into(), module_record("B", &FModule::regular(&b))).unwrap();
        doc.push("Pdst".into(), comodule_record("Gsmall", "Mreg", &p_dst)).unwrap();
        std::fs::write("defs/restriction_f3.had", format::serialize(&doc)).unwrap();
    }

    // ---- flat_f2.had: ring maps and modules for amitsur / cartesian-check ----
    {
        let a = FiniteAlgebra::truncated_poly(2, 2).unwrap();
        let f2 = FiniteAlgebra::prime_field(2).unwrap();
        let f4 = FiniteAlgebra::extension_field(2, &[1, 1]).unwrap();
        let mut doc = Document::default();
        doc.push("A".into(), algebra_record(&a)).unwrap();
        doc.push("F2".into(), algebra_record(&f2)).unwrap();
        doc.push("F4".into(), algebra_record(&f4)).unwrap();
        doc.push(
            "quot".into(),
            Record::Hom { src: "A".into(), dst: "F2".into(), matrix: vec![vec![1, 0]] },
        )
        .unwrap();
        doc.push(
            "incl".into(),
            Record::Hom { src: "F2".into(), dst: "F4".into(), matrix: vec![vec![1], vec![0]] },
        )
        .unwrap();
        let reg = FModule::regular(&a);
        doc.push("Areg".into(), module_record("A", &reg)).unwrap();
        let fld = a.field();
        let ideal = FModule::new(
            a.clone(),
            1,
            vec![Matrix::identity(fld, 1), Matrix::zero(fld, 1, 1)],
        )
        .unwrap();
        doc.push("Ideal".into(), module_record("A", &ideal)).unwrap();
        let plane = FModule::free(&f2, 2);
        doc.push("Plane".into(), module_record("F2", &plane)).unwrap();
        let f2sq = FModule::free(&f2, 2);
        let _ = f2sq;
        doc.push("F2reg".into(), module_record("F2", &FModule::regular(&f2))).unwrap();
        std::fs::write("defs/flat_f2.had", format::serialize(&doc)).unwrap();
    }

    println!("wrote defs/");
}
