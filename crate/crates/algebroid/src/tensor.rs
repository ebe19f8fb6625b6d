//! Balanced tensor products M ⊗_A N of twisted modules, with an explicit
//! projection/section pair onto a computed basis.
//!
//! Every map between tensor spaces in this crate is constructed on lifted
//! representatives and verified to kill the balancing relations; a failure
//! is a hard [`Error::WellDefinednessViolation`], never silently ignored.

use std::sync::Arc;

use crate::algebra::{AlgebraHom, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::FModule;

/// Default ceiling on the dimension of the ambient (un-quotiented) tensor
/// space; operations fail fast with `SizeExceeded` beyond it.
pub const DEFAULT_SIZE_CEILING: usize = 4096;

/// A module together with the twist `A -> B` through which the base acts.
///
/// An optional free-basis hint may be attached: a list of elements that is
/// claimed to be an A-basis of the module. The hint is verified before use
/// and ignored if it does not check out; it only ever changes which basis
/// the tensor quotient is expressed in, not what is computed.
#[derive(Debug, Clone)]
pub struct TwistedModule {
    module: Arc<FModule>,
    twist: AlgebraHom,
    basis_hint: Option<Vec<Vec<u32>>>,
}

impl TwistedModule {
    pub fn new(module: Arc<FModule>, twist: AlgebraHom) -> Result<Self> {
        if twist.dst().as_ref() != module.algebra().as_ref() {
            return Err(Error::BaseMismatch);
        }
        Ok(TwistedModule { module, twist, basis_hint: None })
    }

    pub fn with_hint(module: Arc<FModule>, twist: AlgebraHom, hint: Vec<Vec<u32>>) -> Result<Self> {
        let mut t = Self::new(module, twist)?;
        t.basis_hint = Some(hint);
        Ok(t)
    }

    /// The regular module of an algebra, twisted by `hom`.
    pub fn regular(hom: &AlgebraHom) -> Self {
        TwistedModule {
            module: FModule::regular(hom.dst()),
            twist: hom.clone(),
            basis_hint: None,
        }
    }

    pub fn module(&self) -> &Arc<FModule> {
        &self.module
    }

    pub fn twist(&self) -> &AlgebraHom {
        &self.twist
    }

    pub fn basis_hint(&self) -> Option<&Vec<Vec<u32>>> {
        self.basis_hint.as_ref()
    }

    /// Action of base basis element `i` through the twist.
    pub fn twisted_action(&self, i: usize) -> Matrix {
        self.module.act(&self.twist.matrix().col(i))
    }

    /// Action of an arbitrary base element through the twist.
    pub fn twisted_act(&self, a: &[u32]) -> Matrix {
        self.module.act(&self.twist.apply(a))
    }
}

/// The computed balanced tensor product of two twisted modules over a
/// common base algebra.
///
/// `projection * section = id` exactly; `projection` kills precisely the
/// subspace spanned by `(a.x) ⊗ y - x ⊗ (a.y)`.
#[derive(Debug, Clone)]
pub struct TensorSpace {
    base: Arc<FiniteAlgebra>,
    left: TwistedModule,
    right: TwistedModule,
    basis_dim: usize,
    projection: Matrix,
    section: Matrix,
}

/// `tensor_over` with the default size ceiling.
pub fn tensor_over(
    base: &Arc<FiniteAlgebra>,
    left: TwistedModule,
    right: TwistedModule,
) -> Result<Arc<TensorSpace>> {
    tensor_over_with_ceiling(base, left, right, DEFAULT_SIZE_CEILING)
}

pub fn tensor_over_with_ceiling(
    base: &Arc<FiniteAlgebra>,
    left: TwistedModule,
    right: TwistedModule,
    ceiling: usize,
) -> Result<Arc<TensorSpace>> {
    if left.twist().src().as_ref() != base.as_ref() || right.twist().src().as_ref() != base.as_ref()
    {
        return Err(Error::BaseMismatch);
    }
    let m = left.module().dim();
    let n = right.module().dim();
    let full = m * n;
    if full > ceiling {
        return Err(Error::SizeExceeded { dim: full, ceiling });
    }
    let span = if let Some((p, s)) = try_free_left(base, &left, &right)? {
        Some((p, s))
    } else if let Some((p, s)) = try_free_right(base, &left, &right)? {
        Some((p, s))
    } else {
        None
    };

    let (projection, section) = match span {
        Some(ps) => ps,
        None => generic_quotient(base, &left, &right),
    };

    let space = TensorSpace {
        base: base.clone(),
        left,
        right,
        basis_dim: projection.rows(),
        projection,
        section,
    };
    if !space.projection.mul(&space.section).is_identity() {
        return Err(Error::Internal("projection . section != id".into()));
    }
    if let Some((a, x, y)) = space.balancing_witness(&space.projection) {
        return Err(Error::WellDefinednessViolation { a, x, y });
    }
    Ok(Arc::new(space))
}

/// Free path on the left factor: if `v_1..v_r` is a verified A-basis of
/// the left module, the quotient is `N^r` with projection
/// `x ⊗ y -> (u_i(x).y)_i` where `x = Σ u_i(x).v_i`.
fn try_free_left(
    base: &Arc<FiniteAlgebra>,
    left: &TwistedModule,
    right: &TwistedModule,
) -> Result<Option<(Matrix, Matrix)>> {
    let Some(hint) = left.basis_hint() else { return Ok(None) };
    let f = base.field();
    let a = base.dim();
    let m = left.module().dim();
    let n = right.module().dim();
    let r = hint.len();
    if r * a != m || hint.iter().any(|v| v.len() != m) {
        return Ok(None);
    }
    // Phi: A^r -> M, slot-major columns (i, c) -> act(e_c) v_i
    let mut phi = Matrix::zero(f, m, r * a);
    for (i, v) in hint.iter().enumerate() {
        for c in 0..a {
            let col = left.twisted_action(c).apply(v);
            for (row, &val) in col.iter().enumerate() {
                phi.set(row, i * a + c, val);
            }
        }
    }
    let Some(phi_inv) = phi.inverse() else { return Ok(None) };

    let mut projection = Matrix::zero(f, r * n, m * n);
    for j in 0..m {
        let coords = phi_inv.col(j);
        for i in 0..r {
            let b = right.twisted_act(&coords[i * a..(i + 1) * a]);
            for l in 0..n {
                for lp in 0..n {
                    let v = b.get(l, lp);
                    if v != 0 {
                        projection.set(i * n + l, j * n + lp, v);
                    }
                }
            }
        }
    }
    let mut section = Matrix::zero(f, m * n, r * n);
    for (i, v) in hint.iter().enumerate() {
        for l in 0..n {
            for (j, &val) in v.iter().enumerate() {
                if val != 0 {
                    section.set(j * n + l, i * n + l, val);
                }
            }
        }
    }
    Ok(Some((projection, section)))
}

/// Mirror of [`try_free_left`] for a free right factor: quotient `M^r`
/// with `x ⊗ y -> (u_j(y).x)_j`.
fn try_free_right(
    base: &Arc<FiniteAlgebra>,
    left: &TwistedModule,
    right: &TwistedModule,
) -> Result<Option<(Matrix, Matrix)>> {
    let Some(hint) = right.basis_hint() else { return Ok(None) };
    let f = base.field();
    let a = base.dim();
    let m = left.module().dim();
    let n = right.module().dim();
    let r = hint.len();
    if r * a != n || hint.iter().any(|v| v.len() != n) {
        return Ok(None);
    }
    let mut phi = Matrix::zero(f, n, r * a);
    for (i, v) in hint.iter().enumerate() {
        for c in 0..a {
            let col = right.twisted_action(c).apply(v);
            for (row, &val) in col.iter().enumerate() {
                phi.set(row, i * a + c, val);
            }
        }
    }
    let Some(phi_inv) = phi.inverse() else { return Ok(None) };

    let mut projection = Matrix::zero(f, r * m, m * n);
    for l in 0..n {
        let coords = phi_inv.col(l);
        for i in 0..r {
            let b = left.twisted_act(&coords[i * a..(i + 1) * a]);
            for j in 0..m {
                for jp in 0..m {
                    let v = b.get(j, jp);
                    if v != 0 {
                        projection.set(i * m + j, jp * n + l, v);
                    }
                }
            }
        }
    }
    let mut section = Matrix::zero(f, m * n, r * m);
    for (i, v) in hint.iter().enumerate() {
        for j in 0..m {
            for (l, &val) in v.iter().enumerate() {
                if val != 0 {
                    section.set(j * n + l, i * m + j, val);
                }
            }
        }
    }
    Ok(Some((projection, section)))
}

/// Generic path: row-reduce the balancing relations (lowest-index
/// pivoting); the quotient basis is the set of non-pivot pure tensors.
fn generic_quotient(
    base: &Arc<FiniteAlgebra>,
    left: &TwistedModule,
    right: &TwistedModule,
) -> (Matrix, Matrix) {
    let f = base.field();
    let m = left.module().dim();
    let n = right.module().dim();
    let full = m * n;
    let mut gens: Vec<Vec<u32>> = Vec::new();
    for c in 0..base.dim() {
        let ta = left.twisted_action(c);
        let ua = right.twisted_action(c);
        for j in 0..m {
            let tcol = ta.col(j);
            for l in 0..n {
                let ucol = ua.col(l);
                let mut g = vec![0u32; full];
                for (i, &v) in tcol.iter().enumerate() {
                    if v != 0 {
                        g[i * n + l] = f.add(g[i * n + l], v);
                    }
                }
                for (i, &v) in ucol.iter().enumerate() {
                    if v != 0 {
                        g[j * n + i] = f.sub(g[j * n + i], v);
                    }
                }
                if g.iter().any(|&v| v != 0) {
                    gens.push(g);
                }
            }
        }
    }
    if gens.is_empty() {
        return (Matrix::identity(f, full), Matrix::identity(f, full));
    }
    let (rref, pivots) = Matrix::from_rows(f, gens).rref();
    let complement: Vec<usize> = (0..full).filter(|c| !pivots.contains(c)).collect();
    let dim = complement.len();
    let mut projection = Matrix::zero(f, dim, full);
    for (k, &jk) in complement.iter().enumerate() {
        projection.set(k, jk, 1);
        for (r, &pc) in pivots.iter().enumerate() {
            let v = rref.get(r, jk);
            if v != 0 {
                projection.set(k, pc, f.neg(v));
            }
        }
    }
    let mut section = Matrix::zero(f, full, dim);
    for (k, &jk) in complement.iter().enumerate() {
        section.set(jk, k, 1);
    }
    (projection, section)
}

impl TensorSpace {
    pub fn base(&self) -> &Arc<FiniteAlgebra> {
        &self.base
    }

    pub fn left(&self) -> &TwistedModule {
        &self.left
    }

    pub fn right(&self) -> &TwistedModule {
        &self.right
    }

    pub fn basis_dim(&self) -> usize {
        self.basis_dim
    }

    pub fn full_dim(&self) -> usize {
        self.left.module().dim() * self.right.module().dim()
    }

    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    pub fn section(&self) -> &Matrix {
        &self.section
    }

    /// Flat index of the pure tensor `e_j ⊗ e_l`.
    pub fn pure_index(&self, j: usize, l: usize) -> usize {
        j * self.right.module().dim() + l
    }

    /// Coordinates of the class of `x ⊗ y`.
    pub fn pure_tensor(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.base.field();
        let n = self.right.module().dim();
        let mut v = vec![0u32; self.full_dim()];
        for (j, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (l, &b) in y.iter().enumerate() {
                if b != 0 {
                    v[j * n + l] = f.mul(a, b);
                }
            }
        }
        self.projection.apply(&v)
    }

    /// First balancing generator not killed by `f` (a matrix with
    /// `full_dim` columns), as `(base index, left index, right index)`.
    pub fn balancing_witness(&self, f: &Matrix) -> Option<(usize, usize, usize)> {
        assert_eq!(f.cols(), self.full_dim());
        let field = self.base.field();
        let m = self.left.module().dim();
        let n = self.right.module().dim();
        let p = field.p() as u64;
        for c in 0..self.base.dim() {
            let ta = self.left.twisted_action(c);
            let ua = self.right.twisted_action(c);
            for j in 0..m {
                let tcol = ta.col(j);
                for l in 0..n {
                    let ucol = ua.col(l);
                    // g = (a.x_j) ⊗ y_l - x_j ⊗ (a.y_l), sparse
                    let mut nonzero = false;
                    'rows: for r in 0..f.rows() {
                        let mut acc: u64 = 0;
                        for (i, &v) in tcol.iter().enumerate() {
                            if v != 0 {
                                acc += f.get(r, i * n + l) as u64 * v as u64;
                            }
                        }
                        let mut acc2: u64 = 0;
                        for (i, &v) in ucol.iter().enumerate() {
                            if v != 0 {
                                acc2 += f.get(r, j * n + i) as u64 * v as u64;
                            }
                        }
                        if (acc % p) != (acc2 % p) {
                            nonzero = true;
                            break 'rows;
                        }
                    }
                    if nonzero {
                        return Some((c, j, l));
                    }
                }
            }
        }
        None
    }

    /// Induced map out of this space given its action on the full tensor
    /// space (`full` has `full_dim` columns). Verified well-defined.
    pub fn map_out(&self, full: &Matrix) -> Result<Matrix> {
        if let Some((a, x, y)) = self.balancing_witness(full) {
            return Err(Error::WellDefinednessViolation { a, x, y });
        }
        Ok(full.mul(&self.section))
    }

    /// Induced map `self -> dst` from a map of full tensor spaces.
    pub fn induced_map(&self, dst: &TensorSpace, full: &Matrix) -> Result<Matrix> {
        assert_eq!(full.rows(), dst.full_dim());
        assert_eq!(full.cols(), self.full_dim());
        self.map_out(&dst.projection.mul(full))
    }

    /// The module structure in which `D` acts through `hom: D -> B` on the
    /// left factor; verified to descend to the quotient.
    pub fn action_via_left(&self, hom: &AlgebraHom) -> Result<Arc<FModule>> {
        if hom.dst().as_ref() != self.left.module().algebra().as_ref() {
            return Err(Error::BaseMismatch);
        }
        let n = self.right.module().dim();
        let id_n = Matrix::identity(self.base.field(), n);
        let mats = (0..hom.src().dim())
            .map(|d| {
                let act = self.left.module().act(&hom.matrix().col(d));
                self.map_out(&self.projection.mul_kron(&act, &id_n))
            })
            .collect::<Result<Vec<_>>>()?;
        FModule::new(hom.src().clone(), self.basis_dim, mats)
    }

    /// The module structure in which `D` acts through `hom: D -> C` on the
    /// right factor; verified to descend.
    pub fn action_via_right(&self, hom: &AlgebraHom) -> Result<Arc<FModule>> {
        if hom.dst().as_ref() != self.right.module().algebra().as_ref() {
            return Err(Error::BaseMismatch);
        }
        let m = self.left.module().dim();
        let id_m = Matrix::identity(self.base.field(), m);
        let mats = (0..hom.src().dim())
            .map(|d| {
                let act = self.right.module().act(&hom.matrix().col(d));
                self.map_out(&self.projection.mul_kron(&id_m, &act))
            })
            .collect::<Result<Vec<_>>>()?;
        FModule::new(hom.src().clone(), self.basis_dim, mats)
    }

    /// Verifies that a full-space endomorphism descends, then returns the
    /// induced endomorphism on the computed basis.
    pub fn induced_endo(&self, full: &Matrix) -> Result<Matrix> {
        self.induced_map(self, full)
    }

    pub fn fingerprint(&self) -> Vec<u8> {
        let mut out = self.base.fingerprint();
        out.extend(self.left.module().fingerprint());
        out.extend(self.left.twist().matrix().fingerprint_bytes());
        out.extend(self.right.module().fingerprint());
        out.extend(self.right.twist().matrix().fingerprint_bytes());
        out
    }
}

impl Matrix {
    /// Canonical byte encoding of shape and entries.
    pub fn fingerprint_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(16 + 4 * self.rows() * self.cols());
        out.extend_from_slice(&(self.rows() as u64).to_le_bytes());
        out.extend_from_slice(&(self.cols() as u64).to_le_bytes());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.extend_from_slice(&self.get(i, j).to_le_bytes());
            }
        }
        out
    }
}

/// Product of two full-coordinate tensors of `algL ⊗ algR`, using the
/// componentwise algebra multiplication. Sparse in both arguments.
pub fn full_tensor_algebra_product(
    alg_l: &FiniteAlgebra,
    alg_r: &FiniteAlgebra,
    u: &[u32],
    v: &[u32],
) -> Vec<u32> {
    let f = alg_l.field();
    let nl = alg_l.dim();
    let nr = alg_r.dim();
    let mut out = vec![0u32; nl * nr];
    for (c1, &a) in u.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let (i1, j1) = (c1 / nr, c1 % nr);
        for (c2, &b) in v.iter().enumerate() {
            if b == 0 {
                continue;
            }
            let (i2, j2) = (c2 / nr, c2 % nr);
            let coeff = f.mul(a, b);
            let pl = alg_l.left_mul(i1).col(i2);
            let pr = alg_r.left_mul(j1).col(j2);
            for (il, &vl) in pl.iter().enumerate() {
                if vl == 0 {
                    continue;
                }
                for (ir, &vr) in pr.iter().enumerate() {
                    if vr != 0 {
                        let idx = il * nr + ir;
                        out[idx] = f.add(out[idx], f.mul(coeff, f.mul(vl, vr)));
                    }
                }
            }
        }
    }
    out
}
