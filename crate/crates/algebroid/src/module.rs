//! Modules over a finite algebra, module maps, kernels/cokernels, hom
//! spaces, and the projectivity / faithful-flatness tests.

use std::sync::Arc;

use crate::algebra::{AlgebraHom, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// A module over a [`FiniteAlgebra`], given by one action matrix per
/// algebra basis element. Zero-dimensional modules are allowed.
#[derive(Debug, Clone)]
pub struct FModule {
    algebra: Arc<FiniteAlgebra>,
    dim: usize,
    action: Vec<Matrix>,
}

impl PartialEq for FModule {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.dim == other.dim && self.action == other.action
    }
}
impl Eq for FModule {}

impl FModule {
    pub fn new(algebra: Arc<FiniteAlgebra>, dim: usize, action: Vec<Matrix>) -> Result<Arc<Self>> {
        if action.len() != algebra.dim()
            || action.iter().any(|m| m.rows() != dim || m.cols() != dim)
        {
            return Err(Error::DimensionMismatch("need one dim x dim matrix per algebra basis element".into()));
        }
        let module = FModule { algebra: algebra.clone(), dim, action };
        // unit acts as the identity
        if !module.act(algebra.unit()).is_identity() {
            return Err(Error::BadAction("the unit law".into()));
        }
        // rho(e_i) rho(e_j) = rho(e_i e_j)
        for i in 0..algebra.dim() {
            for j in 0..algebra.dim() {
                let lhs = module.action[i].mul(&module.action[j]);
                let rhs = module.act(&algebra.left_mul(i).col(j));
                if lhs != rhs {
                    return Err(Error::BadAction(format!("multiplicativity at pair ({i}, {j})")));
                }
            }
        }
        Ok(Arc::new(module))
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action_of_basis(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    /// Action matrix of an arbitrary algebra element.
    pub fn act(&self, a: &[u32]) -> Matrix {
        let mut m = Matrix::zero(self.algebra.field(), self.dim, self.dim);
        for (i, &c) in a.iter().enumerate() {
            if c != 0 {
                m = m.add(&self.action[i].scale(c));
            }
        }
        m
    }

    /// The algebra acting on itself by multiplication.
    pub fn regular(algebra: &Arc<FiniteAlgebra>) -> Arc<Self> {
        let action = (0..algebra.dim()).map(|i| algebra.left_mul(i).clone()).collect();
        Arc::new(FModule { algebra: algebra.clone(), dim: algebra.dim(), action })
    }

    pub fn zero(algebra: &Arc<FiniteAlgebra>) -> Arc<Self> {
        let action = (0..algebra.dim()).map(|_| Matrix::zero(algebra.field(), 0, 0)).collect();
        Arc::new(FModule { algebra: algebra.clone(), dim: 0, action })
    }

    /// Free module A^rank with the block-diagonal action.
    pub fn free(algebra: &Arc<FiniteAlgebra>, rank: usize) -> Arc<Self> {
        let n = algebra.dim();
        let action = (0..n)
            .map(|i| {
                Matrix::from_fn(algebra.field(), n * rank, n * rank, |r, c| {
                    if r / n == c / n {
                        algebra.left_mul(i).get(r % n, c % n)
                    } else {
                        0
                    }
                })
            })
            .collect();
        Arc::new(FModule { algebra: algebra.clone(), dim: n * rank, action })
    }

    pub fn direct_sum(a: &Arc<FModule>, b: &Arc<FModule>) -> Result<Arc<Self>> {
        if a.algebra != b.algebra {
            return Err(Error::BaseMismatch);
        }
        let dim = a.dim + b.dim;
        let f = a.algebra.field();
        let action = (0..a.algebra.dim())
            .map(|i| {
                Matrix::from_fn(f, dim, dim, |r, c| {
                    if r < a.dim && c < a.dim {
                        a.action[i].get(r, c)
                    } else if r >= a.dim && c >= a.dim {
                        b.action[i].get(r - a.dim, c - a.dim)
                    } else {
                        0
                    }
                })
            })
            .collect();
        Ok(Arc::new(FModule { algebra: a.algebra.clone(), dim, action }))
    }

    /// Restriction of scalars along `twist: A -> B` of a B-module.
    pub fn restrict_scalars(twist: &AlgebraHom, module: &Arc<FModule>) -> Result<Arc<Self>> {
        if twist.dst().as_ref() != module.algebra.as_ref() {
            return Err(Error::BaseMismatch);
        }
        let action = (0..twist.src().dim())
            .map(|i| module.act(&twist.matrix().col(i)))
            .collect();
        Ok(Arc::new(FModule { algebra: twist.src().clone(), dim: module.dim, action }))
    }

    pub fn fingerprint(&self) -> Vec<u8> {
        let mut out = self.algebra.fingerprint();
        out.extend_from_slice(&(self.dim as u64).to_le_bytes());
        for m in &self.action {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    out.extend_from_slice(&m.get(i, j).to_le_bytes());
                }
            }
        }
        out
    }
}

/// An A-linear map between modules over the same algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleHom {
    src: Arc<FModule>,
    dst: Arc<FModule>,
    matrix: Matrix,
}

impl ModuleHom {
    pub fn new(src: Arc<FModule>, dst: Arc<FModule>, matrix: Matrix) -> Result<Self> {
        if src.algebra != dst.algebra {
            return Err(Error::BaseMismatch);
        }
        if matrix.rows() != dst.dim() || matrix.cols() != src.dim() {
            return Err(Error::DimensionMismatch(format!(
                "module hom must be {}x{}, got {}x{}",
                dst.dim(),
                src.dim(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        for i in 0..src.algebra().dim() {
            if matrix.mul(src.action_of_basis(i)) != dst.action_of_basis(i).mul(&matrix) {
                return Err(Error::NotActionLinear { i });
            }
        }
        Ok(ModuleHom { src, dst, matrix })
    }

    pub fn identity(m: &Arc<FModule>) -> Self {
        ModuleHom {
            src: m.clone(),
            dst: m.clone(),
            matrix: Matrix::identity(m.algebra().field(), m.dim()),
        }
    }

    pub fn zero(src: &Arc<FModule>, dst: &Arc<FModule>) -> Result<Self> {
        if src.algebra != dst.algebra {
            return Err(Error::BaseMismatch);
        }
        Ok(ModuleHom {
            src: src.clone(),
            dst: dst.clone(),
            matrix: Matrix::zero(src.algebra().field(), dst.dim(), src.dim()),
        })
    }

    pub fn src(&self) -> &Arc<FModule> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<FModule> {
        &self.dst
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn compose(&self, other: &ModuleHom) -> Result<ModuleHom> {
        if other.dst != self.src {
            return Err(Error::DimensionMismatch("composition mismatch".into()));
        }
        Ok(ModuleHom {
            src: other.src.clone(),
            dst: self.dst.clone(),
            matrix: self.matrix.mul(&other.matrix),
        })
    }
}

/// Kernel of a module map: the kernel module and its inclusion. The action
/// matrices restrict because the map is A-linear.
pub fn kernel(h: &ModuleHom) -> (Arc<FModule>, ModuleHom) {
    let basis = h.matrix().nullspace(); // columns span ker
    let kdim = basis.cols();

    // restricted action: solve incl * X_i = rho_i * incl (unique, incl injective)
    let action: Vec<Matrix> = (0..h.src().algebra().dim())
        .map(|i| {
            let rhs = h.src().action_of_basis(i).mul(&basis);
            basis
                .solve_unique(&rhs)
                .expect("kernel of an A-linear map is A-invariant")
        })
        .collect();
    let module = Arc::new(FModule { algebra: h.src().algebra().clone(), dim: kdim, action });
    let incl = ModuleHom { src: module.clone(), dst: h.src().clone(), matrix: basis };
    (module, incl)
}

/// Cokernel of a module map: the quotient module and its projection.
///
/// The quotient basis is the set of standard basis vectors of the target
/// at non-pivot coordinates of the image (lowest-index pivoting), so the
/// construction is deterministic.
pub fn cokernel(h: &ModuleHom) -> (Arc<FModule>, ModuleHom) {
    let f = h.dst().algebra().field();
    let n = h.dst().dim();
    // rows of the image, reduced
    let (rref, pivots) = h.matrix().transpose().rref();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let qdim = free.len();
    // projection: v mod im(h) expressed in the free coordinates of the
    // reduced representative
    let mut proj = Matrix::zero(f, qdim, n);
    for j in 0..n {
        // reduce e_j against the rref rows of the image
        let mut v = vec![0u32; n];
        v[j] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            let c = v[pc];
            if c != 0 {
                for t in 0..n {
                    let w = rref.get(r, t);
                    if w != 0 {
                        v[t] = f.sub(v[t], f.mul(c, w));
                    }
                }
            }
        }
        for (k, &fc) in free.iter().enumerate() {
            proj.set(k, j, v[fc]);
        }
    }
    // the quotient action descends because im(h) is a submodule
    let mut sec = Matrix::zero(f, n, qdim);
    for (k, &fc) in free.iter().enumerate() {
        sec.set(fc, k, 1);
    }
    let action: Vec<Matrix> = (0..h.dst().algebra().dim())
        .map(|i| proj.mul(h.dst().action_of_basis(i)).mul(&sec))
        .collect();
    let module = Arc::new(FModule { algebra: h.dst().algebra().clone(), dim: qdim, action });
    let projection = ModuleHom { src: h.dst().clone(), dst: module.clone(), matrix: proj };
    (module, projection)
}

/// A basis of the space of A-linear maps `src -> dst`, by solving the
/// commutation system.
pub fn hom_space(src: &Arc<FModule>, dst: &Arc<FModule>) -> Result<Vec<ModuleHom>> {
    if src.algebra() != dst.algebra() {
        return Err(Error::BaseMismatch);
    }
    let f = src.algebra().field();
    let (m, n) = (src.dim(), dst.dim());
    if m == 0 || n == 0 {
        return Ok(Vec::new());
    }
    // unknowns: entries of the n x m matrix T, flat index r*m + c.
    // constraints: T rho_src(e_i) - rho_dst(e_i) T = 0 for all i.
    let mut rows = Vec::new();
    for i in 0..src.algebra().dim() {
        let a = src.action_of_basis(i);
        let b = dst.action_of_basis(i);
        for r in 0..n {
            for c in 0..m {
                let mut row = vec![0u32; n * m];
                for k in 0..m {
                    // (T a)[r][c] += T[r][k] a[k][c]
                    row[r * m + k] = f.add(row[r * m + k], a.get(k, c));
                }
                for k in 0..n {
                    // (b T)[r][c] -= b[r][k] T[k][c]
                    row[k * m + c] = f.sub(row[k * m + c], b.get(r, k));
                }
                rows.push(row);
            }
        }
    }
    let system = Matrix::from_rows(f, rows);
    let basis = system.nullspace();
    let mut out = Vec::new();
    for j in 0..basis.cols() {
        let col = basis.col(j);
        let matrix = Matrix::from_fn(f, n, m, |r, c| col[r * m + c]);
        out.push(ModuleHom { src: src.clone(), dst: dst.clone(), matrix });
    }
    Ok(out)
}

/// Whether the canonical surjection A^dim(M) -> M splits A-linearly;
/// returns the section when it does. Over these Artinian algebras this is
/// the flatness test for finitely generated modules.
pub fn is_projective(m: &Arc<FModule>) -> (bool, Option<ModuleHom>) {
    let a = m.algebra();
    let f = a.field();
    let n = a.dim();
    let md = m.dim();
    if md == 0 {
        let free = FModule::zero(a);
        return (true, Some(ModuleHom::zero(m, &free).unwrap()));
    }
    let free = FModule::free(a, md);
    // pi: A^md -> M, (a_1..a_md) -> sum a_i . m_i
    let mut pi = Matrix::zero(f, md, n * md);
    for slot in 0..md {
        for j in 0..n {
            let col = m.action_of_basis(j).col(slot);
            for (r, &v) in col.iter().enumerate() {
                pi.set(r, slot * n + j, v);
            }
        }
    }
    // unknown section s (n*md x md) with A-linearity and pi s = id.
    let unknowns = n * md * md;
    let mut rows = Vec::new();
    for i in 0..n {
        let af = free.action_of_basis(i);
        let am = m.action_of_basis(i);
        // s . am - af . s = 0
        for r in 0..n * md {
            for c in 0..md {
                let mut row = vec![0u32; unknowns];
                for k in 0..md {
                    row[r * md + k] = f.add(row[r * md + k], am.get(k, c));
                }
                for k in 0..n * md {
                    row[k * md + c] = f.sub(row[k * md + c], af.get(r, k));
                }
                rows.push(row);
            }
        }
    }
    for r in 0..md {
        for c in 0..md {
            let mut row = vec![0u32; unknowns];
            for k in 0..n * md {
                row[k * md + c] = pi.get(r, k);
            }
            rows.push(row);
        }
    }
    let lhs = Matrix::from_rows(f, rows);
    let mut rhs = Matrix::zero(f, lhs.rows(), 1);
    let offset = lhs.rows() - md * md;
    for r in 0..md {
        rhs.set(offset + r * md + r, 0, 1);
    }
    match lhs.solve(&rhs) {
        Some(sol) => {
            let s = Matrix::from_fn(f, n * md, md, |r, c| sol.get(r * md + c, 0));
            let section = ModuleHom { src: m.clone(), dst: free, matrix: s };
            (true, Some(section))
        }
        None => (false, None),
    }
}

/// Faithful flatness of `f: A -> B`: B (as an A-module via f) is
/// projective and its trace ideal is all of A.
pub fn is_faithfully_flat(f: &AlgebraHom) -> Result<bool> {
    let b_as_a = FModule::restrict_scalars(f, &FModule::regular(f.dst()))?;
    let (proj, _) = is_projective(&b_as_a);
    if !proj {
        return Ok(false);
    }
    Ok(trace_ideal_is_full(&b_as_a))
}

/// Whether the span of g(b) over all A-linear g: M -> A and b in M is all
/// of A. The span is already an ideal since a.g(b) = g(a.b).
pub fn trace_ideal_is_full(m: &Arc<FModule>) -> bool {
    let a = m.algebra();
    let reg = FModule::regular(a);
    let homs = hom_space(m, &reg).expect("same algebra");
    let mut rows = Vec::new();
    for h in &homs {
        for j in 0..m.dim() {
            rows.push(h.matrix().col(j));
        }
    }
    if rows.is_empty() {
        return a.dim() == 0;
    }
    Matrix::from_rows(a.field(), rows).rank() == a.dim()
}

/// A submodule presented by a spanning set of column vectors; returns the
/// module and its inclusion. Used to build images of module maps.
pub fn submodule_from_span(parent: &Arc<FModule>, span: &Matrix) -> (Arc<FModule>, ModuleHom) {
    let f = parent.algebra().field();
    // close under the action, then reduce to an echelon basis
    let mut gens: Vec<Vec<u32>> = (0..span.cols()).map(|j| span.col(j)).collect();
    let mut i = 0;
    while i < gens.len() {
        for a in 0..parent.algebra().dim() {
            let v = parent.action_of_basis(a).apply(&gens[i]);
            gens.push(v);
        }
        i += 1;
        if i > 4 * (parent.dim() + 1) * parent.algebra().dim().max(1) {
            break; // span is action-closed well before this
        }
    }
    let rows = Matrix::from_rows(f, gens);
    let (rref, pivots) = rows.rref();
    let basis_rows: Vec<Vec<u32>> = (0..pivots.len()).map(|r| rref.row(r).to_vec()).collect();
    let basis = if basis_rows.is_empty() {
        Matrix::zero(f, parent.dim(), 0)
    } else {
        Matrix::from_rows(f, basis_rows).transpose()
    };
    let action: Vec<Matrix> = (0..parent.algebra().dim())
        .map(|i| {
            let rhs = parent.action_of_basis(i).mul(&basis);
            basis.solve_unique(&rhs).expect("span was closed under the action")
        })
        .collect();
    let module =
        Arc::new(FModule { algebra: parent.algebra().clone(), dim: basis.cols(), action });
    let incl = ModuleHom { src: module.clone(), dst: parent.clone(), matrix: basis };
    (module, incl)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dual_numbers() -> Arc<FiniteAlgebra> {
        FiniteAlgebra::truncated_poly(2, 2).unwrap()
    }

    /// A/(x) over F_2[x]/(x^2): one-dimensional, x acts by zero.
    fn residue_module(a: &Arc<FiniteAlgebra>) -> Arc<FModule> {
        let f = a.field();
        FModule::new(
            a.clone(),
            1,
            vec![Matrix::identity(f, 1), Matrix::zero(f, 1, 1)],
        )
        .unwrap()
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        let a = dual_numbers();
        let m = FModule::regular(&a);
        let id = ModuleHom::identity(&m);
        assert_eq!(kernel(&id).0.dim(), 0);
        let z = ModuleHom::zero(&m, &m).unwrap();
        let (k, _) = kernel(&z);
        assert_eq!(k.dim(), m.dim());
        let (c, _) = cokernel(&z);
        assert_eq!(c.dim(), m.dim());
    }

    #[test]
    fn multiplication_by_x_has_one_dim_kernel_and_cokernel() {
        let a = dual_numbers();
        let m = FModule::regular(&a);
        // expected from the rank of the action matrix of x
        let x_action = m.act(&[0, 1]);
        assert_eq!(x_action.rank(), 1);
        let h = ModuleHom::new(m.clone(), m.clone(), x_action).unwrap();
        let (k, incl) = kernel(&h);
        assert_eq!(k.dim(), 1);
        assert!(h.matrix().mul(incl.matrix()).is_zero());
        let (c, proj) = cokernel(&h);
        assert_eq!(c.dim(), 1);
        assert!(proj.matrix().mul(h.matrix()).is_zero());
    }

    #[test]
    fn kernel_universal_property_sampled() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let a = dual_numbers();
        let m = FModule::regular(&a);
        let h = ModuleHom::new(m.clone(), m.clone(), m.act(&[0, 1])).unwrap();
        let (k, incl) = kernel(&h);
        // test cones: A-linear g with h g = 0 factor uniquely through incl
        let candidates = hom_space(&m, &m).unwrap();
        for _ in 0..20 {
            let mut g = Matrix::zero(a.field(), m.dim(), m.dim());
            for c in &candidates {
                if rng.gen_bool(0.5) {
                    g = g.add(c.matrix());
                }
            }
            if !h.matrix().mul(&g).is_zero() {
                continue;
            }
            let factor = incl.matrix().solve_unique(&g).expect("unique factorization");
            assert_eq!(incl.matrix().mul(&factor), g);
            let _ = k;
        }
    }

    #[test]
    fn cokernel_universal_property_sampled() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        let a = dual_numbers();
        let m = FModule::regular(&a);
        let h = ModuleHom::new(m.clone(), m.clone(), m.act(&[0, 1])).unwrap();
        let (_, proj) = cokernel(&h);
        let candidates = hom_space(&m, &m).unwrap();
        for _ in 0..20 {
            let mut g = Matrix::zero(a.field(), m.dim(), m.dim());
            for c in &candidates {
                if rng.gen_bool(0.5) {
                    g = g.add(c.matrix());
                }
            }
            if !g.mul(h.matrix()).is_zero() {
                continue;
            }
            // g factors as g = factor . proj: solve proj^T factor^T = g^T
            let factor_t = proj
                .matrix()
                .transpose()
                .solve_unique(&g.transpose())
                .expect("unique factorization");
            assert_eq!(factor_t.transpose().mul(proj.matrix()), g);
        }
    }

    #[test]
    fn regular_module_is_projective_residue_is_not() {
        let a = dual_numbers();
        let m = FModule::regular(&a);
        let (ok, section) = is_projective(&m);
        assert!(ok);
        let s = section.unwrap();
        // the independent oracle for the residue module: all 4 F_2-linear
        // maps M -> A fail to be a section of the canonical surjection
        let r = residue_module(&a);
        let mut any = false;
        for bits in 0..4u32 {
            let cand = Matrix::from_rows(a.field(), vec![vec![bits & 1], vec![(bits >> 1) & 1]]);
            // A-linearity: cand . rho_M(x) = rho_A(x) . cand, and pi . cand = id
            let linear = cand.mul(&r.act(&[0, 1])) == a.left_mul(1).mul(&cand);
            let pi = Matrix::from_rows(a.field(), vec![vec![1, 0]]); // pi(a) = a . m, coords of a.1 in M
            let sect = pi.mul(&cand).is_identity();
            any |= linear && sect;
        }
        assert!(!any);
        assert!(!is_projective(&r).0);
        // direct sum of regulars stays projective
        let m2 = FModule::direct_sum(&m, &m).unwrap();
        assert!(is_projective(&m2).0);
        let _ = s;
    }

    #[test]
    fn faithful_flatness_examples() {
        let a = dual_numbers();
        // identity is faithfully flat
        assert!(is_faithfully_flat(&AlgebraHom::identity(&a)).unwrap());
        // F_2 -> F_4 is faithfully flat
        let f2 = FiniteAlgebra::prime_field(2).unwrap();
        let f4 = FiniteAlgebra::extension_field(2, &[1, 1]).unwrap();
        let incl = AlgebraHom::new(
            f2.clone(),
            f4.clone(),
            Matrix::from_rows(f2.field(), vec![vec![1], vec![0]]),
        )
        .unwrap();
        assert!(is_faithfully_flat(&incl).unwrap());
        // the quotient F_2[x]/(x^2) -> F_2 is not flat. The spec's sketch
        // would check B ⊗_A (x); the decisive computation is that tensoring
        // the inclusion (x) -> A with B kills (x) (see tensor tests), and
        // equivalently B fails projectivity over A:
        let f2b = FiniteAlgebra::prime_field(2).unwrap();
        let q = AlgebraHom::new(a.clone(), f2b, Matrix::from_rows(a.field(), vec![vec![1, 0]]))
            .unwrap();
        assert!(!is_faithfully_flat(&q).unwrap());
        // flat but not faithful: projection F_5 x F_5 -> F_5
        let b2 = FiniteAlgebra::split_product(5, 2).unwrap();
        let f5 = FiniteAlgebra::prime_field(5).unwrap();
        let pr = AlgebraHom::new(
            b2.clone(),
            f5,
            Matrix::from_rows(b2.field(), vec![vec![1, 0]]),
        )
        .unwrap();
        assert!(!is_faithfully_flat(&pr).unwrap());
    }

    #[test]
    fn hom_space_dimensions() {
        let a = dual_numbers();
        let m = FModule::regular(&a);
        // Hom_A(A, A) = A
        assert_eq!(hom_space(&m, &m).unwrap().len(), a.dim());
        // Hom_A(A, 0) = 0
        let z = FModule::zero(&a);
        assert_eq!(hom_space(&m, &z).unwrap().len(), 0);
        // Hom_A(A/(x), A) is one-dimensional and lands in (x)
        let r = residue_module(&a);
        let homs = hom_space(&r, &m).unwrap();
        assert_eq!(homs.len(), 1);
        let img = homs[0].matrix().col(0);
        assert_eq!(img, vec![0, 1]); // the socle (x)
    }

    #[test]
    fn hom_space_dim_invariant_under_basis_permutation() {
        let a = dual_numbers();
        let m = FModule::regular(&a);
        let r = residue_module(&a);
        // an isomorphic copy of A with permuted basis: swap coordinates
        let f = a.field();
        let s = Matrix::from_rows(f, vec![vec![0, 1], vec![1, 0]]);
        let sinv = s.inverse().unwrap();
        let action = (0..a.dim()).map(|i| s.mul(m.action_of_basis(i)).mul(&sinv)).collect();
        let m2 = FModule::new(a.clone(), 2, action).unwrap();
        assert_eq!(hom_space(&r, &m).unwrap().len(), hom_space(&r, &m2).unwrap().len());
    }
}
