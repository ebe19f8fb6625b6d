//! Comodules `(M, ψ)` over a Hopf algebroid: validation, extended
//! comodules, kernels and cokernels, hom spaces, and the generator-witness
//! construction.
//!
//! `ψ: M -> A1 (η_R)⊗ M` is stored in the computed basis of the tensor
//! space `E`; all comparisons between maps of tensor spaces route through
//! the canonical comparison isomorphisms cached per (algebroid, module)
//! pair on the algebroid itself.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hopf::{ComodSpaces, HopfAlgebroid};
use crate::linalg::Matrix;
use crate::module::{self, FModule, ModuleHom};
use crate::report::CheckReport;

/// A verified comodule over a Hopf algebroid.
#[derive(Clone)]
pub struct Comodule {
    hopf: Arc<HopfAlgebroid>,
    module: Arc<FModule>,
    psi: Matrix,
    spaces: Arc<ComodSpaces>,
    extended_from: Option<Arc<FModule>>,
}

impl std::fmt::Debug for Comodule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Comodule")
            .field("dim", &self.module.dim())
            .field("extended", &self.extended_from.is_some())
            .finish()
    }
}

impl Comodule {
    /// Verifies twisted linearity, counitarity and coassociativity; fails
    /// on the first violated identity.
    pub fn new(
        hopf: &Arc<HopfAlgebroid>,
        module: &Arc<FModule>,
        psi: Matrix,
    ) -> Result<(Arc<Self>, CheckReport)> {
        let (candidate, report) = Self::validate(hopf, module, psi)?;
        if let Some(item) = report.first_failure() {
            let witness = item.witness.as_deref().and_then(|w| w.parse().ok()).unwrap_or(0);
            return Err(match item.id.as_str() {
                "linearity" => Error::NotLinear { witness },
                "counit" => Error::NotCounital { witness },
                _ => Error::NotCoassociative { witness },
            });
        }
        Ok((Arc::new(candidate), report))
    }

    /// Lenient mode: all three checks, report only.
    pub fn check(
        hopf: &Arc<HopfAlgebroid>,
        module: &Arc<FModule>,
        psi: Matrix,
    ) -> Result<CheckReport> {
        Ok(Self::validate(hopf, module, psi)?.1)
    }

    fn validate(
        hopf: &Arc<HopfAlgebroid>,
        module: &Arc<FModule>,
        psi: Matrix,
    ) -> Result<(Self, CheckReport)> {
        let spaces = hopf.comod_spaces(module)?;
        if psi.rows() != spaces.e.basis_dim() || psi.cols() != module.dim() {
            return Err(Error::DimensionMismatch(format!(
                "psi must be {}x{}, got {}x{}",
                spaces.e.basis_dim(),
                module.dim(),
                psi.rows(),
                psi.cols()
            )));
        }
        let mut report = CheckReport::new();

        // twisted A0-linearity: ψ(a.m) = η_L(a).ψ(m)
        let mut lin_witness = None;
        for a in 0..hopf.a0().dim() {
            let lhs = psi.mul(module.action_of_basis(a));
            let rhs = spaces.e_module.action_of_basis(a).mul(&psi);
            if let Some(c) = lhs.first_differing_col(&rhs) {
                lin_witness = Some(c.to_string());
                break;
            }
        }
        report.record("linearity", lin_witness.is_none(), lin_witness.clone());

        // counit: (ε ⊗ id) ψ = id
        let counit_comp = spaces.counit.mul(&psi);
        let idm = Matrix::identity(module.algebra().field(), module.dim());
        let cw = counit_comp.first_differing_col(&idm).map(|c| c.to_string());
        report.record("counit", cw.is_none(), cw);

        // coassociativity: (∇ ⊗ id) ψ = (id ⊗ ψ) ψ, compared in TR
        if lin_witness.is_none() {
            let n1 = hopf.a1().dim();
            let id1 = Matrix::identity(module.algebra().field(), n1);
            match spaces.e.induced_map(&spaces.tr, &id1.kron(&psi)) {
                Ok(id_psi) => {
                    let lhs = spaces.cmp.mul(&spaces.nabla_tensor_id).mul(&psi);
                    let rhs = id_psi.mul(&psi);
                    let w = lhs.first_differing_col(&rhs).map(|c| c.to_string());
                    report.record("coassociativity", w.is_none(), w);
                }
                Err(e) => report.fail("coassociativity", Some(e.to_string())),
            }
        } else {
            // without linearity (id ⊗ ψ) is not even well-defined
            report.fail("coassociativity", Some("skipped: psi is not linear".into()));
        }

        Ok((
            Comodule {
                hopf: hopf.clone(),
                module: module.clone(),
                psi,
                spaces,
                extended_from: None,
            },
            report,
        ))
    }

    /// The extended comodule `A1 (η_R)⊗ N` with structure map `∇ ⊗ id`.
    pub fn extended(hopf: &Arc<HopfAlgebroid>, n: &Arc<FModule>) -> Result<Arc<Self>> {
        let sp_n = hopf.comod_spaces(n)?;
        let m = sp_n.e_module.clone();
        // (∇ ⊗ id): E(N) -> TL(N), then the canonical TL -> TR = A1 ⊗ E(N);
        // TR is constructed identically to E(E(N)-module), so coordinates agree.
        let psi = sp_n.cmp.mul(&sp_n.nabla_tensor_id);
        let (comod, _) = Self::new(hopf, &m, psi)?;
        let mut c = (*comod).clone();
        c.extended_from = Some(n.clone());
        Ok(Arc::new(c))
    }

    pub fn hopf(&self) -> &Arc<HopfAlgebroid> {
        &self.hopf
    }

    pub fn module(&self) -> &Arc<FModule> {
        &self.module
    }

    pub fn psi(&self) -> &Matrix {
        &self.psi
    }

    pub fn spaces(&self) -> &Arc<ComodSpaces> {
        &self.spaces
    }

    /// The module the comodule was extended from, when it was built by
    /// [`Comodule::extended`].
    pub fn extended_from(&self) -> Option<&Arc<FModule>> {
        self.extended_from.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// The retraction `r = (ε ⊗ id)` with `r ψ = id` exactly.
    pub fn counit_retraction(&self) -> Result<ModuleHom> {
        let r = self.spaces.counit.clone();
        if !r.mul(&self.psi).is_identity() {
            return Err(Error::Internal("counit retraction failed".into()));
        }
        ModuleHom::new(self.spaces.e_module.clone(), self.module.clone(), r)
    }

    pub fn fingerprint(&self) -> Vec<u8> {
        let mut out = self.hopf.fingerprint();
        out.extend(self.module.fingerprint());
        out.extend(self.psi.fingerprint_bytes());
        out
    }
}

/// A map of comodules: an A0-linear map intertwining the structure maps.
#[derive(Clone)]
pub struct ComoduleHom {
    src: Arc<Comodule>,
    dst: Arc<Comodule>,
    matrix: Matrix,
}

impl std::fmt::Debug for ComoduleHom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ComoduleHom")
            .field("src_dim", &self.src.dim())
            .field("dst_dim", &self.dst.dim())
            .finish()
    }
}

impl ComoduleHom {
    pub fn new(src: Arc<Comodule>, dst: Arc<Comodule>, matrix: Matrix) -> Result<Self> {
        if src.hopf.fingerprint() != dst.hopf.fingerprint() {
            return Err(Error::BaseMismatch);
        }
        // A0-linearity
        ModuleHom::new(src.module.clone(), dst.module.clone(), matrix.clone())?;
        // intertwining: (id ⊗ f) ψ_src = ψ_dst f
        let n1 = src.hopf.a1().dim();
        let id1 = Matrix::identity(src.module.algebra().field(), n1);
        let id_f = src.spaces.e.induced_map(&dst.spaces.e, &id1.kron(&matrix))?;
        let lhs = id_f.mul(&src.psi);
        let rhs = dst.psi.mul(&matrix);
        if let Some(w) = lhs.first_differing_col(&rhs) {
            return Err(Error::NotActionLinear { i: w });
        }
        Ok(ComoduleHom { src, dst, matrix })
    }

    pub fn identity(c: &Arc<Comodule>) -> Self {
        ComoduleHom {
            src: c.clone(),
            dst: c.clone(),
            matrix: Matrix::identity(c.module.algebra().field(), c.dim()),
        }
    }

    pub fn zero(src: &Arc<Comodule>, dst: &Arc<Comodule>) -> Self {
        ComoduleHom {
            src: src.clone(),
            dst: dst.clone(),
            matrix: Matrix::zero(src.module.algebra().field(), dst.dim(), src.dim()),
        }
    }

    pub fn src(&self) -> &Arc<Comodule> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<Comodule> {
        &self.dst
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn compose(&self, other: &ComoduleHom) -> Result<ComoduleHom> {
        if other.dst.fingerprint() != self.src.fingerprint() {
            return Err(Error::DimensionMismatch("composition mismatch".into()));
        }
        Ok(ComoduleHom {
            src: other.src.clone(),
            dst: self.dst.clone(),
            matrix: self.matrix.mul(&other.matrix),
        })
    }
}

/// A basis of the space of comodule maps `src -> dst`, solving the joint
/// linear system of A0-linearity and ψ-intertwining.
pub fn comodule_hom_space(src: &Arc<Comodule>, dst: &Arc<Comodule>) -> Result<Vec<Matrix>> {
    let f = src.module().algebra().field();
    let (ms, md) = (src.dim(), dst.dim());
    if ms == 0 || md == 0 {
        return Ok(Vec::new());
    }
    let n1 = src.hopf().a1().dim();
    let unknowns = md * ms;
    let mut rows: Vec<Vec<u32>> = Vec::new();

    // linearity: g rho_src(a) - rho_dst(a) g = 0
    for a in 0..src.module().algebra().dim() {
        let ra = src.module().action_of_basis(a);
        let rb = dst.module().action_of_basis(a);
        for r in 0..md {
            for c in 0..ms {
                let mut row = vec![0u32; unknowns];
                for k in 0..ms {
                    row[r * ms + k] = f.add(row[r * ms + k], ra.get(k, c));
                }
                for k in 0..md {
                    row[k * ms + c] = f.sub(row[k * ms + c], rb.get(r, k));
                }
                rows.push(row);
            }
        }
    }

    // intertwining: P_dst (id ⊗ g) S_src ψ_src - ψ_dst g = 0; for the
    // canonical lift this is linear in g
    let p_dst = dst.spaces().e.projection();
    let s_src = src.spaces().e.section();
    let d_dst = dst.spaces().e.basis_dim();
    // lifted ψ_src: full(A1 ⊗ M_src) coordinates, per source basis vector
    let lifted = s_src.mul(src.psi());
    // residual[(row of E_dst), (source col)] as linear function of g:
    // coefficient of g[r][c] from the first term: sum over i of
    // p_dst[e, (i, r)] * lifted[(i, c'), col] at c' = c
    let mut constraint =
        vec![vec![vec![0u32; unknowns]; src.dim()]; d_dst];
    for e in 0..d_dst {
        for col in 0..ms {
            let target = &mut constraint[e][col];
            for i in 0..n1 {
                for r in 0..md {
                    let pcoef = p_dst.get(e, i * md + r);
                    if pcoef == 0 {
                        continue;
                    }
                    for c in 0..ms {
                        let lcoef = lifted.get(i * ms + c, col);
                        if lcoef != 0 {
                            let idx = r * ms + c;
                            target[idx] = f.add(target[idx], f.mul(pcoef, lcoef));
                        }
                    }
                }
            }
            // second term: -(ψ_dst g)[e][col] = -sum_k ψ_dst[e][k] g[k][col]
            for k in 0..md {
                let v = dst.psi().get(e, k);
                if v != 0 {
                    let idx = k * ms + col;
                    target[idx] = f.sub(target[idx], v);
                }
            }
        }
    }
    for e in 0..d_dst {
        for col in 0..ms {
            rows.push(constraint[e][col].clone());
        }
    }

    let basis = Matrix::from_rows(f, rows).nullspace();
    let mut out = Vec::new();
    for j in 0..basis.cols() {
        let col = basis.col(j);
        out.push(Matrix::from_fn(f, md, ms, |r, c| col[r * ms + c]));
    }
    Ok(out)
}

/// Kernel of a comodule map: the module-level kernel with the restricted
/// structure map, re-verified against all comodule axioms.
pub fn comodule_kernel(f: &ComoduleHom) -> Result<(Arc<Comodule>, ComoduleHom)> {
    let hopf = f.src().hopf();
    let mh = ModuleHom::new(
        f.src().module().clone(),
        f.dst().module().clone(),
        f.matrix().clone(),
    )?;
    let (k, incl) = module::kernel(&mh);
    let sp_k = hopf.comod_spaces(&k)?;
    let n1 = hopf.a1().dim();
    let id1 = Matrix::identity(k.algebra().field(), n1);
    let e_incl = sp_k.e.induced_map(&f.src().spaces().e, &id1.kron(incl.matrix()))?;
    let rhs = f.src().psi().mul(incl.matrix());
    let psi_k = e_incl
        .solve_unique(&rhs)
        .ok_or_else(|| Error::StructureDoesNotRestrict("kernel structure map".into()))?;
    let (kc, _) = Comodule::new(hopf, &k, psi_k)?;
    let incl_hom = ComoduleHom::new(kc.clone(), f.src().clone(), incl.matrix().clone())?;
    Ok((kc, incl_hom))
}

/// Cokernel of a comodule map: the module-level cokernel with the
/// descended structure map, re-verified.
pub fn comodule_cokernel(f: &ComoduleHom) -> Result<(Arc<Comodule>, ComoduleHom)> {
    let hopf = f.src().hopf();
    let mh = ModuleHom::new(
        f.src().module().clone(),
        f.dst().module().clone(),
        f.matrix().clone(),
    )?;
    let (q, proj) = module::cokernel(&mh);
    let sp_q = hopf.comod_spaces(&q)?;
    let n1 = hopf.a1().dim();
    let id1 = Matrix::identity(q.algebra().field(), n1);
    let e_proj = f.dst().spaces().e.induced_map(&sp_q.e, &id1.kron(proj.matrix()))?;
    let rhs = e_proj.mul(f.dst().psi());
    // ψ_q proj = rhs, unique since proj is surjective
    let psi_q = proj
        .matrix()
        .transpose()
        .solve_unique(&rhs.transpose())
        .ok_or_else(|| Error::StructureDoesNotRestrict("cokernel structure map".into()))?
        .transpose();
    let (qc, _) = Comodule::new(hopf, &q, psi_q)?;
    let proj_hom = ComoduleHom::new(f.dst().clone(), qc.clone(), proj.matrix().clone())?;
    Ok((qc, proj_hom))
}

/// The image of a comodule map as a subcomodule of the target.
pub fn comodule_image(f: &ComoduleHom) -> Result<(Arc<Comodule>, ComoduleHom)> {
    let hopf = f.src().hopf();
    let (img, incl) = module::submodule_from_span(f.dst().module(), f.matrix());
    let sp_i = hopf.comod_spaces(&img)?;
    let n1 = hopf.a1().dim();
    let id1 = Matrix::identity(img.algebra().field(), n1);
    let e_incl = sp_i.e.induced_map(&f.dst().spaces().e, &id1.kron(incl.matrix()))?;
    let rhs = f.dst().psi().mul(incl.matrix());
    let psi_i = e_incl
        .solve_unique(&rhs)
        .ok_or_else(|| Error::StructureDoesNotRestrict("image structure map".into()))?;
    let (ic, _) = Comodule::new(hopf, &img, psi_i)?;
    let incl_hom = ComoduleHom::new(ic.clone(), f.dst().clone(), incl.matrix().clone())?;
    Ok((ic, incl_hom))
}

/// The result of [`generator_witness`]: a subcomodule of a finite free
/// extended comodule `A1^n` together with a map hitting the requested
/// element.
pub struct GeneratorWitness {
    /// The subcomodule `K` of `A1^n`.
    pub subcomodule: Arc<Comodule>,
    /// `q: K -> C` with the witness in its image.
    pub map: ComoduleHom,
    /// Coordinates in `K` mapping to the requested element.
    pub preimage: Vec<u32>,
    /// The number of copies of A1 used (the size of the free presentation).
    pub copies: usize,
}

/// Realizes the generator property: given a nonzero `x` in a comodule `C`,
/// produces a subcomodule `K` of `A1^n`, a comodule map `q: K -> C`, and a
/// preimage of `x` under `q`.
pub fn generator_witness(c: &Arc<Comodule>, x: &[u32]) -> Result<GeneratorWitness> {
    if x.iter().all(|&v| v == 0) {
        return Err(Error::ZeroVector);
    }
    let hopf = c.hopf();
    let m = c.module();
    let a0 = hopf.a0();
    let f = a0.field();
    let mdim = m.dim();
    assert_eq!(x.len(), mdim);

    // free presentation p: A0^mdim -> M over the basis of M
    let free = FModule::free(a0, mdim);
    let mut p_matrix = Matrix::zero(f, mdim, a0.dim() * mdim);
    for slot in 0..mdim {
        for j in 0..a0.dim() {
            let col = m.action_of_basis(j).col(slot);
            for (r, &v) in col.iter().enumerate() {
                if v != 0 {
                    p_matrix.set(r, slot * a0.dim() + j, v);
                }
            }
        }
    }

    let ext_free = Comodule::extended(hopf, &free)?;
    let ext_m = Comodule::extended(hopf, m)?;
    let n1 = hopf.a1().dim();
    let id1 = Matrix::identity(f, n1);
    let sp_free = hopf.comod_spaces(&free)?;
    let sp_m = hopf.comod_spaces(m)?;
    let p_bar = sp_free.e.induced_map(&sp_m.e, &id1.kron(&p_matrix))?;
    // p_bar is a comodule map between the extended comodules
    let p_bar_hom = ComoduleHom::new(ext_free.clone(), ext_m.clone(), p_bar.clone())?;

    // ψ embeds C into the extended comodule on M
    let psi_hom = ComoduleHom::new(c.clone(), ext_m.clone(), c.psi().clone())?;

    // K = p_bar^{-1}(im ψ): kernel of (quotient by im ψ) ∘ p_bar
    let quotient = quotient_projection(c.psi());
    let k_basis = quotient.mul(&p_bar).nullspace();
    let (k_mod, incl_k) = module::submodule_from_span(ext_free.module(), &k_basis);
    let sp_k = hopf.comod_spaces(&k_mod)?;
    let e_incl = sp_k.e.induced_map(&ext_free.spaces().e, &id1.kron(incl_k.matrix()))?;
    let rhs = ext_free.psi().mul(incl_k.matrix());
    let psi_k = e_incl
        .solve_unique(&rhs)
        .ok_or_else(|| Error::StructureDoesNotRestrict("generator subcomodule".into()))?;
    let (kc, _) = Comodule::new(hopf, &k_mod, psi_k)?;

    // q = r ∘ p_bar ∘ incl, with r the counit retraction of C
    let r = c.counit_retraction()?;
    let q_matrix = r.matrix().mul(&p_bar).mul(incl_k.matrix());
    let q = ComoduleHom::new(kc.clone(), c.clone(), q_matrix.clone())?;

    // preimage of x
    let x_col = Matrix::from_cols(f, mdim, vec![x.to_vec()]);
    let y = q_matrix
        .solve(&x_col)
        .ok_or_else(|| Error::Internal("witness not hit by the generator map".into()))?;
    let _ = (p_bar_hom, psi_hom);
    Ok(GeneratorWitness {
        subcomodule: kc,
        map: q,
        preimage: y.col(0),
        copies: mdim,
    })
}

/// The projection onto a complement of the column span, as a plain linear
/// map (lowest-index pivoting).
fn quotient_projection(span: &Matrix) -> Matrix {
    let f = span.field();
    let n = span.rows();
    let (rref, pivots) = span.transpose().rref();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut proj = Matrix::zero(f, free.len(), n);
    for j in 0..n {
        let mut v = vec![0u32; n];
        v[j] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            let cscale = v[pc];
            if cscale != 0 {
                for t in 0..n {
                    let w = rref.get(r, t);
                    if w != 0 {
                        v[t] = f.sub(v[t], f.mul(cscale, w));
                    }
                }
            }
        }
        for (k, &fc) in free.iter().enumerate() {
            proj.set(k, j, v[fc]);
        }
    }
    proj
}
