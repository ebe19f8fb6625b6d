//! Shared corpus builders for the integration suites: a fixed family of
//! algebroids and a seeded, reproducible population of comodules built as
//! extended comodules plus kernels and images of sampled maps.

use std::sync::Arc;

use algebroid::equivariant::{FiniteGroup, GroupAction};
use algebroid::module::FModule;
use algebroid::{
    comodule_hom_space, comodule_image, comodule_kernel, group_action_algebroid, unit_algebroid,
    AlgebraHom, Comodule, ComoduleHom, FiniteAlgebra, HopfAlgebroid, Matrix,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn unit_dual_numbers() -> Arc<HopfAlgebroid> {
    let a = FiniteAlgebra::truncated_poly(2, 2).unwrap();
    unit_algebroid(&a).unwrap().0
}

pub fn swap_algebroid() -> Arc<HopfAlgebroid> {
    let b = FiniteAlgebra::split_product(3, 2).unwrap();
    let z2 = FiniteGroup::cyclic(2).unwrap();
    let act = GroupAction::by_basis_permutations(z2, b, vec![vec![0, 1], vec![1, 0]]).unwrap();
    group_action_algebroid(&act).unwrap().0
}

pub fn z3_algebroid() -> Arc<HopfAlgebroid> {
    let b = FiniteAlgebra::split_product(2, 3).unwrap();
    let z3 = FiniteGroup::cyclic(3).unwrap();
    let act = GroupAction::by_basis_permutations(
        z3,
        b,
        vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
    )
    .unwrap();
    group_action_algebroid(&act).unwrap().0
}

pub fn four_group_algebroid() -> Arc<HopfAlgebroid> {
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
    let act = GroupAction::by_basis_permutations(four, b, perms).unwrap();
    group_action_algebroid(&act).unwrap().0
}

/// The restriction homomorphism from the four-group algebroid to the swap
/// algebroid over F_3^2.
pub fn group_restriction_hom() -> algebroid::AlgebroidHom {
    let src = four_group_algebroid();
    let dst = swap_algebroid();
    let b = src.a0().clone();
    let f = b.field();
    let nb = b.dim();
    let phi0 = AlgebraHom::identity(&b);
    // subgroup {(0,0), (1,0)} of the four-group at indices 0, 2
    let sub = [0usize, 2];
    let mut phi1_m = Matrix::zero(f, dst.a1().dim(), src.a1().dim());
    for (small, &big) in sub.iter().enumerate() {
        for i in 0..nb {
            phi1_m.set(small * nb + i, big * nb + i, 1);
        }
    }
    let phi1 = AlgebraHom::new(src.a1().clone(), dst.a1().clone(), phi1_m).unwrap();
    algebroid::AlgebroidHom::new(src, dst, phi0, phi1).unwrap().0
}

/// Idempotent-component module of a split product algebra.
pub fn component_module(b: &Arc<FiniteAlgebra>, slots: &[usize]) -> Arc<FModule> {
    let f = b.field();
    let dim = slots.len();
    let action = (0..b.dim())
        .map(|i| {
            Matrix::from_fn(f, dim, dim, |r, c| u32::from(r == c && slots[r] == i))
        })
        .collect();
    FModule::new(b.clone(), dim, action).unwrap()
}

/// Small base modules (dims chosen so every extended comodule has
/// dimension at most 8).
pub fn base_modules(h: &Arc<HopfAlgebroid>) -> Vec<Arc<FModule>> {
    let a0 = h.a0();
    let rank = h.free_rank('R').unwrap_or(1);
    let mut out = Vec::new();
    if a0.dim() == 2 && a0.unit() == [1, 1] {
        // split product F_p x F_p: components exist
        out.push(component_module(a0, &[0]));
        out.push(component_module(a0, &[1]));
        out.push(component_module(a0, &[0, 1]));
    }
    if a0.dim() == 3 {
        out.push(component_module(a0, &[0]));
        out.push(component_module(a0, &[0, 1]));
        out.push(component_module(a0, &[0, 2]));
    }
    out.push(FModule::regular(a0));
    for r in 2..=4 {
        if rank * a0.dim() * r <= 8 {
            out.push(FModule::free(a0, r));
        }
    }
    out
}

/// A reproducible corpus of comodules over one algebroid: extended
/// comodules, kernels of sampled maps, and images of sampled maps.
pub fn comodule_corpus(h: &Arc<HopfAlgebroid>, seed: u64, target: usize) -> Vec<Arc<Comodule>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Arc<Comodule>> = Vec::new();
    for m in base_modules(h) {
        let ext = Comodule::extended(h, &m).unwrap();
        if ext.dim() <= 8 {
            out.push(ext);
        }
    }
    let extendeds: Vec<Arc<Comodule>> = out.clone();
    let mut tries = 0;
    while out.len() < target && tries < 400 {
        tries += 1;
        let x = &extendeds[rng.gen_range(0..extendeds.len())];
        let y = &extendeds[rng.gen_range(0..extendeds.len())];
        let Some(g) = sample_hom(x, y, &mut rng) else { continue };
        if rng.gen_bool(0.5) {
            let (k, _) = comodule_kernel(&g).unwrap();
            if k.dim() <= 8 {
                out.push(k);
            }
        } else {
            let (im, _) = comodule_image(&g).unwrap();
            if im.dim() <= 8 {
                out.push(im);
            }
        }
    }
    out
}

/// A random element of the comodule hom space, as a verified ComoduleHom.
pub fn sample_hom(
    src: &Arc<Comodule>,
    dst: &Arc<Comodule>,
    rng: &mut ChaCha8Rng,
) -> Option<ComoduleHom> {
    let basis = comodule_hom_space(src, dst).ok()?;
    if basis.is_empty() {
        return None;
    }
    let f = src.module().algebra().field();
    let mut g = Matrix::zero(f, dst.dim(), src.dim());
    for b in &basis {
        let c = rng.gen_range(0..f.p());
        if c != 0 {
            g = g.add(&b.scale(c));
        }
    }
    ComoduleHom::new(src.clone(), dst.clone(), g).ok()
}

/// Basis of the space of descent-data morphisms between two descent data:
/// A0-linear maps with `(id ⊗ g) τ_1 = τ_2 (id ⊗ g)`. An independent
/// solver used to cross-check functoriality of the conversions.
pub fn descent_hom_space(
    d1: &algebroid::DescentDatum,
    d2: &algebroid::DescentDatum,
) -> Vec<Matrix> {
    let h = d1.hopf();
    let f = h.a0().field();
    let (m1, m2) = (d1.module().dim(), d2.module().dim());
    if m1 == 0 || m2 == 0 {
        return Vec::new();
    }
    let unknowns = m1 * m2;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    // A0-linearity
    for a in 0..h.a0().dim() {
        let ra = d1.module().action_of_basis(a);
        let rb = d2.module().action_of_basis(a);
        for r in 0..m2 {
            for c in 0..m1 {
                let mut row = vec![0u32; unknowns];
                for k in 0..m1 {
                    row[r * m1 + k] = f.add(row[r * m1 + k], ra.get(k, c));
                }
                for k in 0..m2 {
                    row[k * m1 + c] = f.sub(row[k * m1 + c], rb.get(r, k));
                }
                rows.push(row);
            }
        }
    }
    // intertwining with canonical lifts: for each unknown basis matrix
    // E_rc compute (id ⊗ E_rc)_E τ1 - τ2 (id ⊗ E_rc)_L and use linearity
    let n1 = h.a1().dim();
    let id1 = Matrix::identity(f, n1);
    let e1 = &d1.spaces().e;
    let e2 = &d2.spaces().e;
    let l1 = &d1.descent_spaces().l;
    let l2 = &d2.descent_spaces().l;
    let mut residuals: Vec<Matrix> = Vec::with_capacity(unknowns);
    for r in 0..m2 {
        for c in 0..m1 {
            let mut basis_matrix = Matrix::zero(f, m2, m1);
            basis_matrix.set(r, c, 1);
            let on_e = e2.projection().mul(&id1.kron(&basis_matrix)).mul(e1.section());
            let on_l = l2.projection().mul(&id1.kron(&basis_matrix)).mul(l1.section());
            residuals.push(on_e.mul(d1.tau()).sub(&d2.tau().mul(&on_l)));
        }
    }
    let rdim = residuals[0].rows() * residuals[0].cols();
    for entry in 0..rdim {
        let mut row = vec![0u32; unknowns];
        for (u, res) in residuals.iter().enumerate() {
            row[u] = res.get(entry / residuals[0].cols(), entry % residuals[0].cols());
        }
        if row.iter().any(|&v| v != 0) {
            rows.push(row);
        }
    }
    let basis = Matrix::from_rows(f, rows).nullspace();
    (0..basis.cols())
        .map(|j| {
            let col = basis.col(j);
            Matrix::from_fn(f, m2, m1, |r, c| col[r * m1 + c])
        })
        .collect()
}

/// Row space spanned by flattened matrices, for comparing solution spaces.
pub fn span_fingerprint(f: algebroid::PrimeField, mats: &[Matrix]) -> Matrix {
    if mats.is_empty() {
        return Matrix::zero(f, 0, 0);
    }
    let rows: Vec<Vec<u32>> = mats
        .iter()
        .map(|m| {
            let mut flat = Vec::new();
            for i in 0..m.rows() {
                flat.extend_from_slice(m.row(i));
            }
            flat
        })
        .collect();
    Matrix::from_rows(f, rows).rref().0
}
