//! Finite-dimensional commutative unital algebras over F_p, presented by
//! structure constants, together with their homomorphisms.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::Matrix;

/// A commutative unital algebra of dimension `n` over F_p.
///
/// The multiplication is stored as one left-multiplication matrix per basis
/// element: `left_mul[i]` has column `j` equal to the coordinates of
/// `e_i * e_j`. Commutativity, associativity and the unit law are verified
/// at construction.
#[derive(Debug, Clone)]
pub struct FiniteAlgebra {
    field: PrimeField,
    dim: usize,
    left_mul: Vec<Matrix>,
    unit: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl PartialEq for FiniteAlgebra {
    fn eq(&self, other: &Self) -> bool {
        // labels are cosmetic
        self.field == other.field
            && self.dim == other.dim
            && self.left_mul == other.left_mul
            && self.unit == other.unit
    }
}
impl Eq for FiniteAlgebra {}

impl FiniteAlgebra {
    /// Builds an algebra from structure constants `mul[i][j]` = coordinates
    /// of `e_i * e_j`, and the coordinates of the unit element.
    pub fn new(
        p: u64,
        mul: &[Vec<Vec<u32>>],
        unit: &[u32],
        labels: Option<Vec<String>>,
    ) -> Result<Arc<Self>> {
        let field = PrimeField::new(p)?;
        let dim = mul.len();
        if dim == 0 {
            return Err(Error::DimensionMismatch("algebra dimension must be positive".into()));
        }
        if unit.len() != dim
            || mul.iter().any(|row| row.len() != dim || row.iter().any(|v| v.len() != dim))
        {
            return Err(Error::DimensionMismatch("structure constants have wrong shape".into()));
        }
        if let Some(l) = &labels {
            if l.len() != dim {
                return Err(Error::DimensionMismatch("label count differs from dim".into()));
            }
        }
        let left_mul: Vec<Matrix> = (0..dim)
            .map(|i| Matrix::from_fn(field, dim, dim, |k, j| mul[i][j][k]))
            .collect();
        let unit: Vec<u32> = unit.iter().map(|&v| v % field.p()).collect();
        let alg = FiniteAlgebra { field, dim, left_mul, unit, labels };

        for i in 0..dim {
            for j in i + 1..dim {
                if mul[i][j].iter().map(|&v| v % field.p()).collect::<Vec<_>>()
                    != mul[j][i].iter().map(|&v| v % field.p()).collect::<Vec<_>>()
                {
                    return Err(Error::NonCommutative { i, j });
                }
            }
        }
        // unit law before associativity: a table with no unit at all is
        // reported as BadUnit even when it is also non-associative
        for i in 0..dim {
            if alg.mul_vec(&alg.unit, &basis_vec(dim, i)) != basis_vec(dim, i) {
                return Err(Error::BadUnit { i });
            }
        }
        // (e_i e_j) e_k = e_i (e_j e_k) on all basis triples
        for i in 0..dim {
            for j in 0..dim {
                let eij = alg.left_mul[i].col(j);
                for k in 0..dim {
                    let lhs = alg.mul_vec(&eij, &basis_vec(dim, k));
                    let ejk = alg.left_mul[j].col(k);
                    let rhs = alg.mul_vec(&basis_vec(dim, i), &ejk);
                    if lhs != rhs {
                        return Err(Error::NonAssociative { i, j, k });
                    }
                }
            }
        }
        Ok(Arc::new(alg))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[u32] {
        &self.unit
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Matrix of left multiplication by basis element `i`.
    pub fn left_mul(&self, i: usize) -> &Matrix {
        &self.left_mul[i]
    }

    /// Matrix of left multiplication by an arbitrary element.
    pub fn mul_matrix(&self, x: &[u32]) -> Matrix {
        let mut m = Matrix::zero(self.field, self.dim, self.dim);
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                m = m.add(&self.left_mul[i].scale(c));
            }
        }
        m
    }

    pub fn mul_vec(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        self.mul_matrix(x).apply(y)
    }

    /// The multiplication A ⊗ A -> A as a matrix on pure-tensor
    /// coordinates `(i, j) -> i * dim + j`.
    pub fn full_multiplication(&self) -> Matrix {
        Matrix::from_fn(self.field, self.dim, self.dim * self.dim, |k, c| {
            let (i, j) = (c / self.dim, c % self.dim);
            self.left_mul[i].get(k, j)
        })
    }

    /// Structure constants `c[i][j]` = coordinates of `e_i e_j`.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<u32>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.left_mul[i].col(j)).collect())
            .collect()
    }

    /// Canonical byte encoding, used as a cache key.
    pub fn fingerprint(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(&self.field.p().to_le_bytes());
        out.extend_from_slice(&(self.dim as u64).to_le_bytes());
        for m in &self.left_mul {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    out.extend_from_slice(&m.get(i, j).to_le_bytes());
                }
            }
        }
        for &u in &self.unit {
            out.extend_from_slice(&u.to_le_bytes());
        }
        out
    }

    // ----- named builders -----

    /// F_p itself.
    pub fn prime_field(p: u64) -> Result<Arc<Self>> {
        Self::new(p, &[vec![vec![1]]], &[1], Some(vec!["1".into()]))
    }

    /// Truncated polynomials F_p[x]/(x^n), basis 1, x, ..., x^{n-1}.
    pub fn truncated_poly(p: u64, n: usize) -> Result<Arc<Self>> {
        let mul: Vec<Vec<Vec<u32>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut v = vec![0u32; n];
                        if i + j < n {
                            v[i + j] = 1;
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let mut unit = vec![0u32; n];
        unit[0] = 1;
        let labels = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        Self::new(p, &mul, &unit, Some(labels))
    }

    /// The field extension F_p[x]/(f) for a monic irreducible `f`, given by
    /// its coefficients `f = x^d + c_{d-1} x^{d-1} + ... + c_0` as
    /// `[c_0, ..., c_{d-1}]`.
    pub fn extension_field(p: u64, modulus: &[u32]) -> Result<Arc<Self>> {
        let field = PrimeField::new(p)?;
        let d = modulus.len();
        if d == 0 {
            return Err(Error::DimensionMismatch("modulus must have positive degree".into()));
        }
        if !poly_is_irreducible(field, modulus) {
            return Err(Error::Internal(format!("x^{d} + ... is not irreducible over F_{p}")));
        }
        // powers of x reduced mod f
        let mut pow = vec![0u32; d];
        pow[0] = 1;
        let mut powers = vec![pow.clone()];
        for _ in 1..2 * d {
            pow = shift_reduce(field, &pow, modulus);
            powers.push(pow.clone());
        }
        let mul: Vec<Vec<Vec<u32>>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        // x^i * x^j
                        powers[i + j].clone()
                    })
                    .collect()
            })
            .collect();
        let mut unit = vec![0u32; d];
        unit[0] = 1;
        let labels = (0..d)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        Self::new(p, &mul, &unit, Some(labels))
    }

    /// Direct product of algebras over the same prime, componentwise
    /// operations (e.g. F_3 x F_3 with its two idempotents).
    pub fn product(factors: &[Arc<FiniteAlgebra>]) -> Result<Arc<Self>> {
        let Some(first) = factors.first() else {
            return Err(Error::DimensionMismatch("empty product".into()));
        };
        let p = first.p() as u64;
        if factors.iter().any(|f| f.p() as u64 != p) {
            return Err(Error::BaseMismatch);
        }
        let dim: usize = factors.iter().map(|f| f.dim()).sum();
        let mut offsets = vec![0usize];
        for f in factors {
            offsets.push(offsets.last().unwrap() + f.dim());
        }
        let mut mul = vec![vec![vec![0u32; dim]; dim]; dim];
        let mut unit = vec![0u32; dim];
        let mut labels = Vec::new();
        for (fi, f) in factors.iter().enumerate() {
            let off = offsets[fi];
            for i in 0..f.dim() {
                for j in 0..f.dim() {
                    let prod = f.left_mul(i).col(j);
                    for (k, &v) in prod.iter().enumerate() {
                        mul[off + i][off + j][off + k] = v;
                    }
                }
                unit[off + i] = f.unit()[i];
                labels.push(match f.labels() {
                    Some(l) => format!("({}:{})", fi, l[i]),
                    None => format!("({fi}:{i})"),
                });
            }
        }
        Self::new(p, &mul, &unit, Some(labels))
    }

    /// F_p^n with componentwise operations, basis the n idempotents.
    pub fn split_product(p: u64, n: usize) -> Result<Arc<Self>> {
        let f = Self::prime_field(p)?;
        Self::product(&vec![f; n])
    }
}

fn basis_vec(dim: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0u32; dim];
    v[i] = 1;
    v
}

/// Multiplies a reduced polynomial by x and reduces mod the monic modulus.
fn shift_reduce(field: PrimeField, poly: &[u32], modulus: &[u32]) -> Vec<u32> {
    let d = modulus.len();
    let mut out = vec![0u32; d];
    for i in 0..d - 1 {
        out[i + 1] = poly[i];
    }
    let top = poly[d - 1];
    if top != 0 {
        for i in 0..d {
            out[i] = field.sub(out[i], field.mul(top, modulus[i]));
        }
    }
    out
}

/// Irreducibility by exhaustive trial division with monic divisors of
/// degree up to d/2 (fine at desk scale).
fn poly_is_irreducible(field: PrimeField, modulus: &[u32]) -> bool {
    let d = modulus.len();
    if d == 1 {
        return true;
    }
    let p = field.p() as u64;
    for deg in 1..=d / 2 {
        // iterate monic polys of degree `deg`: coefficients c_0..c_{deg-1}
        let count = p.pow(deg as u32);
        for idx in 0..count {
            let mut c = Vec::with_capacity(deg);
            let mut t = idx;
            for _ in 0..deg {
                c.push((t % p) as u32);
                t /= p;
            }
            if poly_divides(field, &c, modulus) {
                return false;
            }
        }
    }
    true
}

/// Whether the monic polynomial with low coefficients `div` (degree =
/// div.len()) divides the monic `modulus` (degree = modulus.len()).
fn poly_divides(field: PrimeField, div: &[u32], modulus: &[u32]) -> bool {
    let dd = div.len();
    let dm = modulus.len();
    let mut rem: Vec<u32> = modulus.to_vec();
    rem.push(1); // monic leading coefficient
    for k in (dd..=dm).rev() {
        let lead = rem[k];
        if lead == 0 {
            continue;
        }
        rem[k] = 0;
        for (i, &c) in div.iter().enumerate() {
            let pos = k - dd + i;
            rem[pos] = field.sub(rem[pos], field.mul(lead, c));
        }
    }
    rem.iter().all(|&v| v == 0)
}

/// An algebra homomorphism, stored as its matrix on basis coordinates.
/// Unitality and multiplicativity are verified at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraHom {
    src: Arc<FiniteAlgebra>,
    dst: Arc<FiniteAlgebra>,
    matrix: Matrix,
}

impl AlgebraHom {
    pub fn new(src: Arc<FiniteAlgebra>, dst: Arc<FiniteAlgebra>, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != dst.dim() || matrix.cols() != src.dim() {
            return Err(Error::DimensionMismatch(format!(
                "hom matrix must be {}x{}, got {}x{}",
                dst.dim(),
                src.dim(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        if src.p() != dst.p() {
            return Err(Error::BaseMismatch);
        }
        if matrix.apply(src.unit()) != dst.unit() {
            return Err(Error::NotUnital);
        }
        for i in 0..src.dim() {
            let fi = matrix.col(i);
            for j in i..src.dim() {
                let fj = matrix.col(j);
                let lhs = matrix.apply(&src.left_mul(i).col(j));
                let rhs = dst.mul_vec(&fi, &fj);
                if lhs != rhs {
                    return Err(Error::NotMultiplicative { i, j });
                }
            }
        }
        Ok(AlgebraHom { src, dst, matrix })
    }

    pub fn identity(alg: &Arc<FiniteAlgebra>) -> Self {
        AlgebraHom {
            src: alg.clone(),
            dst: alg.clone(),
            matrix: Matrix::identity(alg.field(), alg.dim()),
        }
    }

    pub fn src(&self) -> &Arc<FiniteAlgebra> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<FiniteAlgebra> {
        &self.dst
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        self.matrix.apply(v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AlgebraHom) -> Result<AlgebraHom> {
        if other.dst.as_ref() != self.src.as_ref() {
            return Err(Error::BaseMismatch);
        }
        Ok(AlgebraHom {
            src: other.src.clone(),
            dst: self.dst.clone(),
            matrix: self.matrix.mul(&other.matrix),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.src.as_ref() == self.dst.as_ref() && self.matrix.is_identity()
    }
}
