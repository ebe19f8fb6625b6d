//! Finite groups, group actions on algebras, equivariant modules, and the
//! brute-force enumeration oracle for the comodule correspondence.

use std::sync::Arc;

use crate::algebra::{AlgebraHom, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::FModule;

/// A finite group given by its Cayley table. `table[g][h]` is the product
/// `g * h`; associativity, identity and inverses are verified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Arc<Self>> {
        let order = table.len();
        if order == 0 || table.iter().any(|r| r.len() != order || r.iter().any(|&v| v >= order)) {
            return Err(Error::BadGroup("table must be a square array of element indices".into()));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::BadGroup("no identity element".into()))?;
        let mut inverse = vec![usize::MAX; order];
        for g in 0..order {
            inverse[g] = (0..order)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| Error::BadGroup(format!("element {g} has no inverse")))?;
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::BadGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(Arc::new(FiniteGroup { order, table, identity, inverse }))
    }

    pub fn trivial() -> Arc<Self> {
        FiniteGroup::new(vec![vec![0]]).unwrap()
    }

    pub fn cyclic(n: usize) -> Result<Arc<Self>> {
        FiniteGroup::new((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())
    }

    /// Direct product, elements indexed `a * other.order + b`.
    pub fn product(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> Result<Arc<Self>> {
        let n = a.order * b.order;
        let mut table = vec![vec![0usize; n]; n];
        for a1 in 0..a.order {
            for b1 in 0..b.order {
                for a2 in 0..a.order {
                    for b2 in 0..b.order {
                        table[a1 * b.order + b1][a2 * b.order + b2] =
                            a.table[a1][a2] * b.order + b.table[b1][b2];
                    }
                }
            }
        }
        FiniteGroup::new(table)
    }

    /// The symmetric group on `n` letters; elements are permutations in
    /// lexicographic order, composed as functions (left acts first index).
    pub fn symmetric(n: usize) -> Result<(Arc<Self>, Vec<Vec<usize>>)> {
        let perms = permutations(n);
        let lookup = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        let order = perms.len();
        let mut table = vec![vec![0usize; order]; order];
        for (i, p) in perms.iter().enumerate() {
            for (j, q) in perms.iter().enumerate() {
                // (p * q)(x) = p(q(x))
                let composed: Vec<usize> = (0..n).map(|x| p[q[x]]).collect();
                table[i][j] = lookup(&composed);
            }
        }
        Ok((FiniteGroup::new(table)?, perms))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn table(&self) -> &Vec<Vec<usize>> {
        &self.table
    }

    pub fn fingerprint(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(&(self.order as u64).to_le_bytes());
        for row in &self.table {
            for &v in row {
                out.extend_from_slice(&(v as u64).to_le_bytes());
            }
        }
        out
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let n = cur.len();
        if k == n {
            out.push(cur.clone());
            return;
        }
        for i in k..n {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, &mut out);
    out.sort();
    out
}

/// An action of a finite group on an algebra by algebra automorphisms.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupAction {
    group: Arc<FiniteGroup>,
    algebra: Arc<FiniteAlgebra>,
    rho: Vec<Matrix>,
}

impl GroupAction {
    pub fn new(
        group: Arc<FiniteGroup>,
        algebra: Arc<FiniteAlgebra>,
        rho: Vec<Matrix>,
    ) -> Result<Arc<Self>> {
        if rho.len() != group.order() {
            return Err(Error::DimensionMismatch("need one matrix per group element".into()));
        }
        for (g, m) in rho.iter().enumerate() {
            // automorphism: a valid algebra endomorphism that is invertible
            if AlgebraHom::new(algebra.clone(), algebra.clone(), m.clone()).is_err()
                || m.inverse().is_none()
            {
                return Err(Error::NotAutomorphism { g });
            }
        }
        if !rho[group.identity()].is_identity() {
            return Err(Error::NotAHomomorphismAction { g: group.identity(), h: group.identity() });
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                if rho[g].mul(&rho[h]) != rho[group.mul(g, h)] {
                    return Err(Error::NotAHomomorphismAction { g, h });
                }
            }
        }
        Ok(Arc::new(GroupAction { group, algebra, rho }))
    }

    /// Every group element acts as the identity.
    pub fn trivial(group: Arc<FiniteGroup>, algebra: Arc<FiniteAlgebra>) -> Arc<Self> {
        let id = Matrix::identity(algebra.field(), algebra.dim());
        let rho = vec![id; group.order()];
        Arc::new(GroupAction { group, algebra, rho })
    }

    /// Action by permutations of the basis (valid for split products and
    /// other algebras whose structure constants are permutation-invariant).
    pub fn by_basis_permutations(
        group: Arc<FiniteGroup>,
        algebra: Arc<FiniteAlgebra>,
        perms: Vec<Vec<usize>>,
    ) -> Result<Arc<Self>> {
        let n = algebra.dim();
        let rho = perms
            .iter()
            .map(|perm| Matrix::from_fn(algebra.field(), n, n, |i, j| u32::from(perm[j] == i)))
            .collect();
        Self::new(group, algebra, rho)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.algebra
    }

    pub fn rho(&self, g: usize) -> &Matrix {
        &self.rho[g]
    }

    pub fn fingerprint(&self) -> Vec<u8> {
        let mut out = self.group.fingerprint();
        out.extend(self.algebra.fingerprint());
        for m in &self.rho {
            out.extend(m.fingerprint_bytes());
        }
        out
    }
}

/// A module over `B` with a compatible linearization by the acting group:
/// `pi(g) (b . m) = (g . b) . pi(g) m`.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivariantModule {
    action: Arc<GroupAction>,
    module: Arc<FModule>,
    pi: Vec<Matrix>,
}

impl EquivariantModule {
    pub fn new(action: Arc<GroupAction>, module: Arc<FModule>, pi: Vec<Matrix>) -> Result<Self> {
        if module.algebra().as_ref() != action.algebra().as_ref() {
            return Err(Error::BaseMismatch);
        }
        let group = action.group();
        if pi.len() != group.order() {
            return Err(Error::DimensionMismatch("need one matrix per group element".into()));
        }
        if !pi[group.identity()].is_identity() {
            return Err(Error::BadAction("pi at the identity must be the identity".into()));
        }
        for (g, m) in pi.iter().enumerate() {
            if m.rows() != module.dim() || m.cols() != module.dim() {
                return Err(Error::DimensionMismatch("pi matrices must be square of dim M".into()));
            }
            if m.inverse().is_none() {
                return Err(Error::BadAction(format!("pi({g}) is not invertible")));
            }
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                if pi[g].mul(&pi[h]) != pi[group.mul(g, h)] {
                    return Err(Error::NotAHomomorphismAction { g, h });
                }
            }
        }
        // compatibility: pi(g) rho_M(b) = rho_M(g.b) pi(g)
        for g in 0..group.order() {
            for b in 0..action.algebra().dim() {
                let lhs = pi[g].mul(module.action_of_basis(b));
                let gb = action.rho(g).col(b);
                let rhs = module.act(&gb).mul(&pi[g]);
                if lhs != rhs {
                    return Err(Error::BadAction(format!(
                        "equivariance fails at (g={g}, b={b})"
                    )));
                }
            }
        }
        Ok(EquivariantModule { action, module, pi })
    }

    pub fn action(&self) -> &Arc<GroupAction> {
        &self.action
    }

    pub fn module(&self) -> &Arc<FModule> {
        &self.module
    }

    pub fn pi(&self, g: usize) -> &Matrix {
        &self.pi[g]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_and_symmetric_groups() {
        let c3 = FiniteGroup::cyclic(3).unwrap();
        assert_eq!(c3.identity(), 0);
        assert_eq!(c3.inv(1), 2);
        let (s3, perms) = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(perms.len(), 6);
        // nonabelian
        let noncomm = (0..6).any(|g| (0..6).any(|h| s3.mul(g, h) != s3.mul(h, g)));
        assert!(noncomm);
    }

    #[test]
    fn bad_tables_are_rejected() {
        // constant rows: no identity
        assert!(FiniteGroup::new(vec![vec![0, 1], vec![0, 1]]).is_err());
        // Z/2 is fine, even with the identity at index 1
        assert!(FiniteGroup::new(vec![vec![1, 0], vec![0, 1]]).is_ok());
        assert!(FiniteGroup::new(vec![vec![0, 1], vec![1, 0]]).is_ok());
    }

    #[test]
    fn swap_action_on_f3_squared() {
        let b = FiniteAlgebra::split_product(3, 2).unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let act =
            GroupAction::by_basis_permutations(z2.clone(), b.clone(), vec![vec![0, 1], vec![1, 0]])
                .unwrap();
        assert!(act.rho(1).mul(act.rho(1)).is_identity());
        // a non-multiplicative rho is rejected
        let bad = Matrix::from_rows(b.field(), vec![vec![1, 1], vec![0, 1]]);
        let err = GroupAction::new(z2, b, vec![Matrix::identity(act.algebra().field(), 2), bad])
            .unwrap_err();
        assert!(matches!(err, Error::NotAutomorphism { g: 1 }));
    }

    #[test]
    fn trivial_action_is_valid() {
        let b = FiniteAlgebra::truncated_poly(2, 2).unwrap();
        let g = FiniteGroup::trivial();
        let act = GroupAction::trivial(g, b.clone());
        assert!(act.rho(0).is_identity());
    }

    #[test]
    fn equivariant_module_laws() {
        // sign representation of Z/2 on F_3 over the trivial action
        let b = FiniteAlgebra::prime_field(3).unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let act = GroupAction::trivial(z2, b.clone());
        let m = FModule::regular(&b);
        let f = b.field();
        let sign =
            EquivariantModule::new(act.clone(), m.clone(), vec![Matrix::identity(f, 1), Matrix::from_rows(f, vec![vec![2]])]);
        assert!(sign.is_ok());
        // pi(s)^2 = -1 . id is not a Z/2 structure
        let bad = EquivariantModule::new(
            act,
            m,
            vec![Matrix::identity(f, 1), Matrix::from_rows(f, vec![vec![0]])],
        );
        assert!(bad.is_err());
    }
}

/// Default bound on the candidate-tuple count for exhaustive enumeration.
pub const DEFAULT_SEARCH_CEILING: u64 = 10_000_000;

use crate::comodule::Comodule;
use crate::hopf::HopfAlgebroid;

/// `e_g ⊗ 1` in the A1 coordinates of a group-action algebroid.
fn a1_slot(action: &GroupAction, g: usize) -> Vec<u32> {
    let nb = action.algebra().dim();
    let mut v = vec![0u32; action.group().order() * nb];
    for (i, &u) in action.algebra().unit().iter().enumerate() {
        v[g * nb + i] = u;
    }
    v
}

/// The comodule of an equivariant module over the group-action algebroid:
/// `ψ(m) = Σ_g e_g ⊗ π_{g^{-1}}(m)`.
///
/// The inverse in the index is forced jointly by the coaction convention
/// `α(b) = Σ_g e_g ⊗ (g.b)` and the equivariance law
/// `π(g)(b.m) = (g.b).π(g)m`; the round trip below pins it down.
pub fn comodule_from_equivariant(
    h: &Arc<HopfAlgebroid>,
    e: &EquivariantModule,
) -> Result<Arc<Comodule>> {
    let action = h.group_action().ok_or(Error::NotGroupActionAlgebroid)?;
    if action.as_ref() != e.action().as_ref() {
        return Err(Error::NotGroupActionAlgebroid);
    }
    let m = e.module();
    let sp = h.comod_spaces(m)?;
    let f = m.algebra().field();
    let group = action.group();
    let cols: Vec<Vec<u32>> = (0..m.dim())
        .map(|k| {
            let mut mk = vec![0u32; m.dim()];
            mk[k] = 1;
            let mut acc = vec![0u32; sp.e.basis_dim()];
            for g in 0..group.order() {
                let part = sp.e.pure_tensor(&a1_slot(action, g), &e.pi(group.inv(g)).apply(&mk));
                for (t, &v) in acc.iter_mut().zip(&part) {
                    *t = f.add(*t, v);
                }
            }
            acc
        })
        .collect();
    let psi = Matrix::from_cols(f, sp.e.basis_dim(), cols);
    Ok(Comodule::new(h, m, psi)?.0)
}

/// Recovers the equivariant module of a comodule over a group-action
/// algebroid by reading off the coefficient of each `e_g` slot.
pub fn equivariant_from_comodule(c: &Comodule) -> Result<EquivariantModule> {
    let h = c.hopf();
    let action = h.group_action().ok_or(Error::NotGroupActionAlgebroid)?.clone();
    let m = c.module();
    let f = m.algebra().field();
    let group = action.group().clone();
    let nb = action.algebra().dim();
    let md = m.dim();
    let sp = c.spaces();

    // slot extraction ξ_g((e_{g'} ⊗ b) ⊗ m) = [g' = g] (g^{-1}.b).m
    let mut pi = Vec::with_capacity(group.order());
    for g in 0..group.order() {
        let gi = group.inv(g);
        let mut full = Matrix::zero(f, md, h.a1().dim() * md);
        for gp in 0..group.order() {
            if gp != gi {
                continue;
            }
            for i in 0..nb {
                let b_pulled = action.rho(group.inv(gp)).col(i);
                let act = m.act(&b_pulled);
                for k in 0..md {
                    for (r, &v) in act.col(k).iter().enumerate() {
                        if v != 0 {
                            full.set(r, (gp * nb + i) * md + k, v);
                        }
                    }
                }
            }
        }
        let xi = sp.e.map_out(&full)?;
        pi.push(xi.mul(c.psi()));
    }
    EquivariantModule::new(action, m.clone(), pi)
}

/// Exhaustively enumerates all equivariant module structures on F_p^dim
/// over the given action, by raw exhaustion over matrix tuples with early
/// pruning on the module and group laws. This is the independent oracle
/// for the comodule correspondence and shares no code with the comodule
/// validator.
pub fn enumerate_equivariant(
    action: &Arc<GroupAction>,
    dim: usize,
    ceiling: u64,
) -> Result<Vec<EquivariantModule>> {
    let b = action.algebra();
    let group = action.group();
    let p = b.field().p() as u64;
    let cells = (dim * dim) as u32;
    // candidate tuples: one matrix per algebra basis element plus one per
    // non-identity group element (pi at the identity is forced)
    let factors = (b.dim() + group.order() - 1) as u32;
    let size = p
        .checked_pow(cells.saturating_mul(factors))
        .unwrap_or(u64::MAX);
    if size > ceiling {
        return Err(Error::SearchSpaceTooLarge { size, ceiling });
    }
    if dim == 0 {
        let module = FModule::new(b.clone(), 0, vec![Matrix::zero(b.field(), 0, 0); b.dim()])?;
        let pi = vec![Matrix::zero(b.field(), 0, 0); group.order()];
        return Ok(vec![EquivariantModule::new(action.clone(), module, pi)?]);
    }

    let mut out = Vec::new();
    let mut module_odometer = Odometer::new(p as u32, dim * dim * b.dim());
    while let Some(digits) = module_odometer.next() {
        let mats: Vec<Matrix> = (0..b.dim())
            .map(|i| {
                Matrix::from_fn(b.field(), dim, dim, |r, c| {
                    digits[i * dim * dim + r * dim + c]
                })
            })
            .collect();
        let Ok(module) = FModule::new(b.clone(), dim, mats) else {
            continue;
        };
        // assign pi for non-identity elements with backtracking
        let order: Vec<usize> = (0..group.order()).filter(|&g| g != group.identity()).collect();
        let mut assigned: Vec<Option<Matrix>> = vec![None; group.order()];
        assigned[group.identity()] = Some(Matrix::identity(b.field(), dim));
        search_pi(action, &module, &order, 0, &mut assigned, &mut out);
    }
    Ok(out)
}

fn search_pi(
    action: &Arc<GroupAction>,
    module: &Arc<FModule>,
    order: &[usize],
    pos: usize,
    assigned: &mut Vec<Option<Matrix>>,
    out: &mut Vec<EquivariantModule>,
) {
    let group = action.group();
    let b = action.algebra();
    let dim = module.dim();
    if pos == order.len() {
        let pi: Vec<Matrix> = assigned.iter().map(|m| m.clone().unwrap()).collect();
        if let Ok(e) = EquivariantModule::new(action.clone(), module.clone(), pi) {
            out.push(e);
        }
        return;
    }
    let g = order[pos];
    let mut odo = Odometer::new(b.field().p(), dim * dim);
    while let Some(digits) = odo.next() {
        let cand = Matrix::from_fn(b.field(), dim, dim, |r, c| digits[r * dim + c]);
        if cand.inverse().is_none() {
            continue;
        }
        // equivariance: cand rho_M(b) = rho_M(g.b) cand
        let compatible = (0..b.dim()).all(|i| {
            cand.mul(module.action_of_basis(i))
                == module.act(&action.rho(g).col(i)).mul(&cand)
        });
        if !compatible {
            continue;
        }
        // group law against everything already assigned
        assigned[g] = Some(cand);
        let law_ok = (0..group.order()).all(|x| {
            (0..group.order()).all(|y| {
                match (&assigned[x], &assigned[y], &assigned[group.mul(x, y)]) {
                    (Some(a), Some(b_), Some(c)) => a.mul(b_) == *c,
                    _ => true,
                }
            })
        });
        if law_ok {
            search_pi(action, module, order, pos + 1, assigned, out);
        }
        assigned[g] = None;
    }
}

/// Counts digits in base p over a fixed number of cells.
struct Odometer {
    base: u32,
    digits: Vec<u32>,
    started: bool,
    done: bool,
}

impl Odometer {
    fn new(base: u32, cells: usize) -> Self {
        Odometer { base, digits: vec![0; cells], started: false, done: false }
    }

    fn next(&mut self) -> Option<&[u32]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.digits);
        }
        for d in self.digits.iter_mut() {
            *d += 1;
            if *d < self.base {
                return Some(&self.digits);
            }
            *d = 0;
        }
        self.done = true;
        None
    }
}

#[cfg(test)]
mod correspondence_tests {
    use super::*;
    use crate::hopf::group_action_algebroid;

    fn swap_setup() -> (Arc<GroupAction>, Arc<HopfAlgebroid>) {
        let b = FiniteAlgebra::split_product(3, 2).unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let act =
            GroupAction::by_basis_permutations(z2, b, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let h = group_action_algebroid(&act).unwrap().0;
        (act, h)
    }

    #[test]
    fn regular_equivariant_round_trip() {
        let (act, h) = swap_setup();
        let m = FModule::regular(act.algebra());
        // π = ρ is the regular linearization
        let pi = vec![act.rho(0).clone(), act.rho(1).clone()];
        let e = EquivariantModule::new(act.clone(), m, pi).unwrap();
        let c = comodule_from_equivariant(&h, &e).unwrap();
        let back = equivariant_from_comodule(&c).unwrap();
        assert_eq!(back, e);
        // and the comodule side round-trips too
        let c2 = comodule_from_equivariant(&h, &back).unwrap();
        assert_eq!(c2.psi(), c.psi());
    }

    #[test]
    fn trivial_group_correspondence_is_identity_on_modules() {
        let b = FiniteAlgebra::truncated_poly(2, 2).unwrap();
        let act = GroupAction::trivial(FiniteGroup::trivial(), b.clone());
        let h = group_action_algebroid(&act).unwrap().0;
        let m = FModule::regular(&b);
        let e = EquivariantModule::new(
            act.clone(),
            m.clone(),
            vec![Matrix::identity(b.field(), 2)],
        )
        .unwrap();
        let c = comodule_from_equivariant(&h, &e).unwrap();
        // over the trivial group ψ is the canonical isomorphism
        assert_eq!(c.psi().rank(), m.dim());
        let back = equivariant_from_comodule(&c).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn sign_representation_is_a_valid_comodule() {
        let b = FiniteAlgebra::prime_field(3).unwrap();
        let act = GroupAction::trivial(FiniteGroup::cyclic(2).unwrap(), b.clone());
        let h = group_action_algebroid(&act).unwrap().0;
        let f = b.field();
        let sign = EquivariantModule::new(
            act.clone(),
            FModule::regular(&b),
            vec![Matrix::identity(f, 1), Matrix::from_rows(f, vec![vec![2]])],
        )
        .unwrap();
        let c = comodule_from_equivariant(&h, &sign).unwrap();
        assert_eq!(c.dim(), 1);
        let back = equivariant_from_comodule(&c).unwrap();
        assert_eq!(back, sign);
    }

    #[test]
    fn extended_comodule_extracts_the_regular_structure() {
        let (_, h) = swap_setup();
        let ext = Comodule::extended(&h, &FModule::regular(h.a0())).unwrap();
        let e = equivariant_from_comodule(&ext).unwrap();
        // round trip is the identity
        let c2 = comodule_from_equivariant(&h, &e).unwrap();
        assert_eq!(c2.psi(), ext.psi());
    }

    #[test]
    fn zero_comodule_round_trip() {
        let (act, h) = swap_setup();
        let z = FModule::zero(act.algebra());
        let e = EquivariantModule::new(
            act.clone(),
            z,
            vec![Matrix::zero(act.algebra().field(), 0, 0); 2],
        )
        .unwrap();
        let c = comodule_from_equivariant(&h, &e).unwrap();
        assert_eq!(c.dim(), 0);
        let back = equivariant_from_comodule(&c).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn enumerate_small_cases() {
        // trivial group, dim 1 over F_2: exactly the module structures
        let f2 = FiniteAlgebra::prime_field(2).unwrap();
        let triv = GroupAction::trivial(FiniteGroup::trivial(), f2);
        let found = enumerate_equivariant(&triv, 1, DEFAULT_SEARCH_CEILING).unwrap();
        assert_eq!(found.len(), 1);

        // Z/2 acting trivially on F_3, dim 1: pi(s) in {1, -1}
        let f3 = FiniteAlgebra::prime_field(3).unwrap();
        let t2 = GroupAction::trivial(FiniteGroup::cyclic(2).unwrap(), f3);
        let found = enumerate_equivariant(&t2, 1, DEFAULT_SEARCH_CEILING).unwrap();
        assert_eq!(found.len(), 2);

        // Z/2 swapping F_3 x F_3, dim 1: no structure survives the
        // equivariance constraint
        let (act, _) = swap_setup();
        let found = enumerate_equivariant(&act, 1, DEFAULT_SEARCH_CEILING).unwrap();
        assert_eq!(found.len(), 0);
    }

    #[test]
    fn search_ceiling_is_enforced() {
        let (act, _) = swap_setup();
        let err = enumerate_equivariant(&act, 2, 100).unwrap_err();
        assert!(matches!(err, Error::SearchSpaceTooLarge { .. }));
    }
}
