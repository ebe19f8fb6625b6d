//! The Amitsur equalizer for ring maps and the Cartesian condition on
//! finite diagrams of algebras.
//!
//! No topology is modeled here: these are the two finite linear-algebra
//! shadows that faithfully flat descent actually computes — exactness of
//! `M -> B ⊗ M ⇉ B ⊗ B ⊗ M`, and invertibility of the adjoint
//! `C ⊗_B M(B) -> M(C)` of a semilinear restriction map.

use std::sync::Arc;

use crate::algebra::{AlgebraHom, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::{is_faithfully_flat, FModule};
use crate::tensor::{tensor_over, TensorSpace, TwistedModule};

/// Outcome of [`amitsur_check`]; failures are report values, not errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmitsurReport {
    /// Whether `l''(x) = 1 ⊗ x` is injective.
    pub injective: bool,
    /// Whether `im(l'')` equals the agreement locus
    /// `ker((j1 ⊗ id) - (j2 ⊗ id))`.
    pub equalizer: bool,
    /// The independent faithful-flatness verdict on the ring map.
    pub faithfully_flat: bool,
    pub dim_m: usize,
    pub dim_bm: usize,
    pub dim_bbm: usize,
}

impl AmitsurReport {
    pub fn exact(&self) -> bool {
        self.injective && self.equalizer
    }
}

/// Checks exactness of the Amitsur sequence
/// `M -> B ⊗_C M ⇉ B ⊗_C B ⊗_C M` for a ring map `f: C -> B` and a
/// C-module M.
pub fn amitsur_check(f: &AlgebraHom, m: &Arc<FModule>) -> Result<AmitsurReport> {
    let c = f.src().clone();
    if m.algebra().as_ref() != c.as_ref() {
        return Err(Error::BaseMismatch);
    }
    let field = c.field();
    let id_c = AlgebraHom::identity(&c);

    let bm = tensor_over(
        &c,
        TwistedModule::regular(f),
        TwistedModule::new(m.clone(), id_c.clone())?,
    )?;
    let bb = tensor_over(&c, TwistedModule::regular(f), TwistedModule::regular(f))?;
    let bb_module = bb.action_via_left(f)?;
    let bbm = tensor_over(
        &c,
        TwistedModule::new(bb_module, id_c.clone())?,
        TwistedModule::new(m.clone(), id_c)?,
    )?;

    // l'': m -> 1 ⊗ m
    let one_b = f.dst().unit().to_vec();
    let l_cols = (0..m.dim())
        .map(|k| {
            let mut mk = vec![0u32; m.dim()];
            mk[k] = 1;
            bm.pure_tensor(&one_b, &mk)
        })
        .collect();
    let l = Matrix::from_cols(field, bm.basis_dim(), l_cols);

    // j1, j2: B -> B ⊗ B
    let nb = f.dst().dim();
    let j1 = Matrix::from_cols(
        field,
        bb.basis_dim(),
        (0..nb).map(|i| bb.pure_tensor(&basis(nb, i), &one_b)).collect(),
    );
    let j2 = Matrix::from_cols(
        field,
        bb.basis_dim(),
        (0..nb).map(|i| bb.pure_tensor(&one_b, &basis(nb, i))).collect(),
    );
    let idm = Matrix::identity(field, m.dim());
    let rho1 = bm.induced_map(&bbm, &j1.kron(&idm))?;
    let rho2 = bm.induced_map(&bbm, &j2.kron(&idm))?;

    let injective = l.rank() == m.dim();
    let difference = rho1.sub(&rho2);
    let agreement_dim = difference.nullspace().cols();
    // im(l'') is always inside the agreement locus; exactness says the
    // dimensions match on top of injectivity
    let contained = difference.mul(&l).is_zero();
    let equalizer = contained && l.rank() == agreement_dim;

    Ok(AmitsurReport {
        injective,
        equalizer,
        faithfully_flat: is_faithfully_flat(f)?,
        dim_m: m.dim(),
        dim_bm: bm.basis_dim(),
        dim_bbm: bbm.basis_dim(),
    })
}

/// Outcome of [`cartesian_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartesianReport {
    pub adjoint_rank: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    /// Whether the adjoint `C ⊗_B M(B) -> M(C)` is an isomorphism.
    pub cartesian: bool,
}

/// Checks the Cartesian condition for a restriction map `rho` along
/// `f: B -> C`, i.e. invertibility of the adjoint `c ⊗ m -> c . rho(m)`.
pub fn cartesian_check(
    f: &AlgebraHom,
    mb: &Arc<FModule>,
    mc: &Arc<FModule>,
    rho: &Matrix,
) -> Result<CartesianReport> {
    if mb.algebra().as_ref() != f.src().as_ref() || mc.algebra().as_ref() != f.dst().as_ref() {
        return Err(Error::BaseMismatch);
    }
    if rho.rows() != mc.dim() || rho.cols() != mb.dim() {
        return Err(Error::DimensionMismatch("restriction map shape".into()));
    }
    // semilinearity: rho (b . m) = f(b) . rho(m)
    for b in 0..f.src().dim() {
        let lhs = rho.mul(mb.action_of_basis(b));
        let rhs = mc.act(&f.matrix().col(b)).mul(rho);
        if let Some(col) = lhs.first_differing_col(&rhs) {
            return Err(Error::NotSemilinear { b, m: col });
        }
    }
    let adjoint = adjoint_of(f, mb, mc, rho)?;
    let cartesian = adjoint.rows() == adjoint.cols() && adjoint.inverse().is_some();
    Ok(CartesianReport {
        adjoint_rank: adjoint.rank(),
        source_dim: adjoint.cols(),
        target_dim: mc.dim(),
        cartesian,
    })
}

/// The adjoint `C ⊗_B M(B) -> M(C)`, `c ⊗ m -> c . rho(m)`, on the
/// computed tensor basis.
fn adjoint_of(
    f: &AlgebraHom,
    mb: &Arc<FModule>,
    mc: &Arc<FModule>,
    rho: &Matrix,
) -> Result<Matrix> {
    let b = f.src().clone();
    let field = b.field();
    let t = tensor_over(
        &b,
        TwistedModule::regular(f),
        TwistedModule::new(mb.clone(), AlgebraHom::identity(&b))?,
    )?;
    let mut full = Matrix::zero(field, mc.dim(), f.dst().dim() * mb.dim());
    for i in 0..f.dst().dim() {
        let act = mc.act(&basis(f.dst().dim(), i)).mul(rho);
        for k in 0..mb.dim() {
            for (r, &v) in act.col(k).iter().enumerate() {
                if v != 0 {
                    full.set(r, i * mb.dim() + k, v);
                }
            }
        }
    }
    t.map_out(&full)
}

/// One object of a finite presheaf of modules: an algebra over the base
/// with its structure map and the value module.
#[derive(Debug, Clone)]
pub struct PresheafObject {
    pub structure: AlgebraHom,
    pub value: Arc<FModule>,
}

/// One declared arrow with its semilinear restriction map.
#[derive(Debug, Clone)]
pub struct PresheafArrow {
    pub src: usize,
    pub dst: usize,
    pub hom: AlgebraHom,
    pub restriction: Matrix,
}

/// A presheaf of modules on a finite diagram of algebras over a base.
#[derive(Debug, Clone)]
pub struct FinitePresheaf {
    base: Arc<FiniteAlgebra>,
    objects: Vec<PresheafObject>,
    arrows: Vec<PresheafArrow>,
}

impl FinitePresheaf {
    /// Validates endpoints, semilinearity of every restriction, and
    /// compatibility on declared composites.
    pub fn new(
        base: Arc<FiniteAlgebra>,
        objects: Vec<PresheafObject>,
        arrows: Vec<PresheafArrow>,
    ) -> Result<Self> {
        for o in &objects {
            if o.structure.src().as_ref() != base.as_ref()
                || o.structure.dst().as_ref() != o.value.algebra().as_ref()
            {
                return Err(Error::BaseMismatch);
            }
        }
        for a in &arrows {
            let (s, d) = (&objects[a.src], &objects[a.dst]);
            if a.hom.src().as_ref() != s.value.algebra().as_ref()
                || a.hom.dst().as_ref() != d.value.algebra().as_ref()
            {
                return Err(Error::BaseMismatch);
            }
            // the arrow lives under the base
            if a.hom.compose(&s.structure)?.matrix() != d.structure.matrix() {
                return Err(Error::BaseMismatch);
            }
            // semilinearity
            for b in 0..s.value.algebra().dim() {
                let lhs = a.restriction.mul(s.value.action_of_basis(b));
                let rhs = d.value.act(&a.hom.matrix().col(b)).mul(&a.restriction);
                if let Some(col) = lhs.first_differing_col(&rhs) {
                    return Err(Error::NotSemilinear { b, m: col });
                }
            }
        }
        // composition-compatibility on declared composites
        for a1 in &arrows {
            for a2 in &arrows {
                if a2.src != a1.dst {
                    continue;
                }
                for a3 in &arrows {
                    if a3.src == a1.src
                        && a3.dst == a2.dst
                        && a3.hom.matrix() == a2.hom.compose(&a1.hom)?.matrix()
                        && a3.restriction != a2.restriction.mul(&a1.restriction)
                    {
                        return Err(Error::Internal(format!(
                            "restrictions do not compose along {} -> {} -> {}",
                            a1.src, a1.dst, a2.dst
                        )));
                    }
                }
            }
        }
        Ok(FinitePresheaf { base, objects, arrows })
    }

    pub fn base(&self) -> &Arc<FiniteAlgebra> {
        &self.base
    }

    pub fn objects(&self) -> &[PresheafObject] {
        &self.objects
    }

    pub fn arrows(&self) -> &[PresheafArrow] {
        &self.arrows
    }

    /// Runs [`cartesian_check`] over every declared arrow.
    pub fn cartesian_everywhere(&self) -> Result<bool> {
        for a in &self.arrows {
            let report = cartesian_check(
                &a.hom,
                &self.objects[a.src].value,
                &self.objects[a.dst].value,
                &a.restriction,
            )?;
            if !report.cartesian {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The value at an object whose structure map is the identity, i.e.
    /// the global sections over the base itself.
    pub fn global_sections(&self) -> Option<&Arc<FModule>> {
        self.objects
            .iter()
            .find(|o| o.structure.is_identity())
            .map(|o| &o.value)
    }
}

/// Builds the Cartesian presheaf `R -> R ⊗_A M` on a finite diagram.
///
/// `objects` supplies the structure maps `A -> R`; `arrows` the diagram
/// shape as triples `(src, dst, hom)`. At the identity object the value
/// is M itself, so global sections return M on the nose.
pub fn cartesianize(
    base: &Arc<FiniteAlgebra>,
    m: &Arc<FModule>,
    objects: &[AlgebraHom],
    arrows: &[(usize, usize, AlgebraHom)],
) -> Result<FinitePresheaf> {
    if m.algebra().as_ref() != base.as_ref() {
        return Err(Error::BaseMismatch);
    }
    let field = base.field();
    let id = AlgebraHom::identity(base);
    let mut built: Vec<(PresheafObject, Option<Arc<TensorSpace>>)> = Vec::new();
    for s in objects {
        if s.src().as_ref() != base.as_ref() {
            return Err(Error::BaseMismatch);
        }
        if s.is_identity() {
            built.push((PresheafObject { structure: s.clone(), value: m.clone() }, None));
            continue;
        }
        let t = tensor_over(
            base,
            TwistedModule::regular(s),
            TwistedModule::new(m.clone(), id.clone())?,
        )?;
        let value = t.action_via_left(&AlgebraHom::identity(s.dst()))?;
        built.push((PresheafObject { structure: s.clone(), value }, Some(t)));
    }

    let mut out_arrows = Vec::new();
    for (src, dst, hom) in arrows {
        let (src, dst) = (*src, *dst);
        let restriction = match (&built[src].1, &built[dst].1) {
            (Some(ts), Some(td)) => {
                // r ⊗ m -> hom(r) ⊗ m
                let idm = Matrix::identity(field, m.dim());
                ts.induced_map(td, &hom.matrix().kron(&idm))?
            }
            (None, Some(td)) => {
                // m -> 1 ⊗ m
                let one = hom.dst().unit().to_vec();
                let cols = (0..m.dim())
                    .map(|k| {
                        let mut mk = vec![0u32; m.dim()];
                        mk[k] = 1;
                        td.pure_tensor(&one, &mk)
                    })
                    .collect();
                Matrix::from_cols(field, td.basis_dim(), cols)
            }
            (Some(ts), None) => {
                // r ⊗ m -> hom(r) . m
                let mut full =
                    Matrix::zero(field, m.dim(), ts.left().module().dim() * m.dim());
                for i in 0..ts.left().module().dim() {
                    let act = m.act(&hom.matrix().col(i));
                    for k in 0..m.dim() {
                        for (r, &v) in act.col(k).iter().enumerate() {
                            if v != 0 {
                                full.set(r, i * m.dim() + k, v);
                            }
                        }
                    }
                }
                ts.map_out(&full)?
            }
            (None, None) => Matrix::identity(field, m.dim()),
        };
        out_arrows.push(PresheafArrow { src, dst, hom: hom.clone(), restriction });
    }
    let objects = built.into_iter().map(|(o, _)| o).collect();
    FinitePresheaf::new(base.clone(), objects, out_arrows)
}

fn basis(dim: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0u32; dim];
    v[i] = 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dual_numbers() -> Arc<FiniteAlgebra> {
        FiniteAlgebra::truncated_poly(2, 2).unwrap()
    }

    #[test]
    fn amitsur_holds_for_the_identity() {
        let a = dual_numbers();
        let report = amitsur_check(&AlgebraHom::identity(&a), &FModule::regular(&a)).unwrap();
        assert!(report.exact());
        assert!(report.faithfully_flat);
    }

    #[test]
    fn amitsur_holds_for_field_extensions() {
        let f2 = FiniteAlgebra::prime_field(2).unwrap();
        let f4 = FiniteAlgebra::extension_field(2, &[1, 1]).unwrap();
        let incl = AlgebraHom::new(
            f2.clone(),
            f4,
            Matrix::from_rows(f2.field(), vec![vec![1], vec![0]]),
        )
        .unwrap();
        for n in 1..=3 {
            let report = amitsur_check(&incl, &FModule::free(&f2, n)).unwrap();
            assert!(report.exact());
            assert!(report.faithfully_flat);
        }
    }

    #[test]
    fn amitsur_fails_for_the_quotient_on_the_regular_module() {
        // C = F_2[x]/(x^2) -> B = C/(x): 1 ⊗ x = x . (1 ⊗ 1) = 0 in B ⊗ C,
        // so l'' kills x and the sequence cannot be exact
        let c = dual_numbers();
        let b = FiniteAlgebra::prime_field(2).unwrap();
        let q = AlgebraHom::new(c.clone(), b, Matrix::from_rows(c.field(), vec![vec![1, 0]]))
            .unwrap();
        let report = amitsur_check(&q, &FModule::regular(&c)).unwrap();
        assert!(!report.injective);
        assert!(!report.exact());
        assert!(!report.faithfully_flat);
        // the ideal (x) itself survives: x does not die in B ⊗ (x), and
        // the two maps into B ⊗ B ⊗ (x) agree, so this particular module
        // does not witness the failure
        let f = c.field();
        let ideal =
            FModule::new(c.clone(), 1, vec![Matrix::identity(f, 1), Matrix::zero(f, 1, 1)])
                .unwrap();
        let report = amitsur_check(&q, &ideal).unwrap();
        assert!(report.exact());
        assert!(!report.faithfully_flat);
    }

    #[test]
    fn amitsur_fails_for_flat_but_unfaithful_projections() {
        // C = F_5 x F_5 -> B = F_5 (first projection) is flat but not
        // faithful; the second simple module is killed outright
        let c = FiniteAlgebra::split_product(5, 2).unwrap();
        let b = FiniteAlgebra::prime_field(5).unwrap();
        let pr = AlgebraHom::new(c.clone(), b, Matrix::from_rows(c.field(), vec![vec![1, 0]]))
            .unwrap();
        let f = c.field();
        let second = FModule::new(
            c.clone(),
            1,
            vec![Matrix::zero(f, 1, 1), Matrix::identity(f, 1)],
        )
        .unwrap();
        let report = amitsur_check(&pr, &second).unwrap();
        assert_eq!(report.dim_bm, 0);
        assert!(!report.injective);
        assert!(!report.faithfully_flat);
    }

    #[test]
    fn cartesian_identity_and_free_cases() {
        let b = dual_numbers();
        let id = AlgebraHom::identity(&b);
        let reg = FModule::regular(&b);
        let idm = Matrix::identity(b.field(), 2);
        let report = cartesian_check(&id, &reg, &reg, &idm).unwrap();
        assert!(report.cartesian);

        // MB = B, MC = C, rho = f: free rank-1 case
        let c = FiniteAlgebra::prime_field(2).unwrap();
        let q = AlgebraHom::new(b.clone(), c.clone(), Matrix::from_rows(b.field(), vec![vec![1, 0]]))
            .unwrap();
        let regc = FModule::regular(&c);
        let report = cartesian_check(&q, &reg, &regc, q.matrix()).unwrap();
        assert!(report.cartesian);
    }

    #[test]
    fn cartesian_fails_on_rank_deficient_adjoint() {
        // rho = (quotient, 0) into F_2^2: the adjoint has rank 1 < 2
        let b = dual_numbers();
        let c = FiniteAlgebra::prime_field(2).unwrap();
        let q = AlgebraHom::new(b.clone(), c.clone(), Matrix::from_rows(b.field(), vec![vec![1, 0]]))
            .unwrap();
        let reg = FModule::regular(&b);
        let mc = FModule::free(&c, 2);
        let rho = Matrix::from_rows(b.field(), vec![vec![1, 0], vec![0, 0]]);
        let report = cartesian_check(&q, &reg, &mc, &rho).unwrap();
        assert_eq!(report.adjoint_rank, 1);
        assert_eq!(report.target_dim, 2);
        assert!(!report.cartesian);
        // a non-semilinear rho is rejected outright
        let bad = Matrix::from_rows(b.field(), vec![vec![0, 1], vec![0, 0]]);
        assert!(matches!(
            cartesian_check(&q, &reg, &mc, &bad),
            Err(Error::NotSemilinear { .. })
        ));
    }

    #[test]
    fn cartesianize_single_object() {
        let a = dual_numbers();
        let m = FModule::regular(&a);
        let p = cartesianize(&a, &m, &[AlgebraHom::identity(&a)], &[]).unwrap();
        assert_eq!(p.global_sections().unwrap().as_ref(), m.as_ref());
    }

    #[test]
    fn cartesianize_field_extension_diagram() {
        let f2 = FiniteAlgebra::prime_field(2).unwrap();
        let f4 = FiniteAlgebra::extension_field(2, &[1, 1]).unwrap();
        let incl = AlgebraHom::new(
            f2.clone(),
            f4,
            Matrix::from_rows(f2.field(), vec![vec![1], vec![0]]),
        )
        .unwrap();
        let m = FModule::free(&f2, 2);
        let p = cartesianize(
            &f2,
            &m,
            &[AlgebraHom::identity(&f2), incl.clone()],
            &[(0, 1, incl)],
        )
        .unwrap();
        assert_eq!(p.objects()[0].value.dim(), 2);
        assert_eq!(p.objects()[1].value.dim(), 4);
        assert!(p.cartesian_everywhere().unwrap());
        assert_eq!(p.global_sections().unwrap().dim(), 2);
    }

    #[test]
    fn cartesianize_non_flat_target_still_cartesian() {
        // objects {A, A/(x)} over A = F_2[x]/(x^2) with M = (x): the
        // target is not flat over A but the canonical restriction is
        // Cartesian by construction
        let a = dual_numbers();
        let b = FiniteAlgebra::prime_field(2).unwrap();
        let q = AlgebraHom::new(a.clone(), b, Matrix::from_rows(a.field(), vec![vec![1, 0]]))
            .unwrap();
        let f = a.field();
        let ideal =
            FModule::new(a.clone(), 1, vec![Matrix::identity(f, 1), Matrix::zero(f, 1, 1)])
                .unwrap();
        let p = cartesianize(
            &a,
            &ideal,
            &[AlgebraHom::identity(&a), q.clone()],
            &[(0, 1, q)],
        )
        .unwrap();
        assert_eq!(p.objects()[1].value.dim(), 1);
        assert!(p.cartesian_everywhere().unwrap());
    }
}
