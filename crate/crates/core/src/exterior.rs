//! The pointwise exterior-algebra fiber of the spinor bundle and the
//! bracket calculus of the canonical degree-one vector fields.
//!
//! Elements of `Lambda S` at a point are sparse graded sums over subsets of
//! a spinor basis. Connections enter through their value and first-order
//! jet at the point: a flat trivialization with constant coefficient
//! matrices `A_m`, with parallel spinors modelled by the prescribed jet
//! `d_m eta = A^C_m eta`. Every identity checked here is tensorial once
//! that prescription is made, so the single-fiber model is faithful.
//!
//! The composition of a wedge factor with an endomorphism slot (written
//! `owedge` below) is kept as an abstract tensor: zero tests never multiply
//! the curvature into the wedge part.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::clifford::GammaRep;
use crate::conjugation::ChargeConjugation;
use crate::exact::{Cx, Scalar};
use crate::mat::Mat;

/// Fiber cap: `Lambda` of a spinor space of dimension at most 8.
pub const EXT_DIM_CAP: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtError {
    CapExceeded { dim_s: usize },
    NotAdmissibleOnSpinors { mu: usize, nu: usize },
    NotParallel { mu: usize },
}

impl core::fmt::Display for ExtError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ExtError::CapExceeded { dim_s } => {
                write!(f, "spinor dimension {dim_s} exceeds the fiber cap {EXT_DIM_CAP}")
            }
            ExtError::NotAdmissibleOnSpinors { mu, nu } => write!(
                f,
                "symmetric part of the deformed gamma acts nontrivially on the given spinors at ({mu},{nu})"
            ),
            ExtError::NotParallel { mu } => {
                write!(f, "spinor is not parallel: the direction-{mu} derivative does not vanish")
            }
        }
    }
}

/// Sparse element of `Lambda S`, graded by the popcount of the basis mask.
#[derive(Clone, Debug, PartialEq)]
pub struct Ext {
    pub dim_s: usize,
    comps: BTreeMap<u32, Cx>,
}

impl Ext {
    pub fn zero(dim_s: usize) -> Result<Self, ExtError> {
        if dim_s > EXT_DIM_CAP {
            return Err(ExtError::CapExceeded { dim_s });
        }
        Ok(Ext {
            dim_s,
            comps: BTreeMap::new(),
        })
    }

    pub fn scalar(dim_s: usize, c: Cx) -> Result<Self, ExtError> {
        let mut e = Ext::zero(dim_s)?;
        e.insert(0, c);
        Ok(e)
    }

    /// Grade-one element from spinor components.
    pub fn vector(v: &[Cx]) -> Result<Self, ExtError> {
        let mut e = Ext::zero(v.len())?;
        for (k, c) in v.iter().enumerate() {
            e.insert(1 << k, c.clone());
        }
        Ok(e)
    }

    pub fn basis_monomial(dim_s: usize, mask: u32) -> Result<Self, ExtError> {
        let mut e = Ext::zero(dim_s)?;
        e.insert(mask, Cx::int(1));
        Ok(e)
    }

    fn insert(&mut self, mask: u32, c: Cx) {
        if c.is_zero() {
            return;
        }
        let entry = self.comps.entry(mask).or_insert_with(|| Cx::int(0));
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.comps.remove(&mask);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn coeff(&self, mask: u32) -> Cx {
        self.comps.get(&mask).cloned().unwrap_or_else(|| Cx::int(0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &Cx)> {
        self.comps.iter()
    }

    pub fn add(&self, o: &Ext) -> Ext {
        assert_eq!(self.dim_s, o.dim_s);
        let mut out = self.clone();
        for (m, c) in &o.comps {
            out.insert(*m, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Cx) -> Ext {
        let mut out = Ext {
            dim_s: self.dim_s,
            comps: BTreeMap::new(),
        };
        for (m, v) in &self.comps {
            out.insert(*m, v.mul(c));
        }
        out
    }

    pub fn neg(&self) -> Ext {
        self.scale(&Cx::int(-1))
    }

    /// Graded-antisymmetric exterior product.
    pub fn wedge(&self, o: &Ext) -> Ext {
        assert_eq!(self.dim_s, o.dim_s);
        let mut out = Ext {
            dim_s: self.dim_s,
            comps: BTreeMap::new(),
        };
        for (ma, ca) in &self.comps {
            for (mb, cb) in &o.comps {
                if ma & mb != 0 {
                    continue;
                }
                let sign = merge_sign(*ma, *mb);
                let c = ca.mul(cb);
                out.insert(ma | mb, if sign { c.neg() } else { c });
            }
        }
        out
    }

    /// Degree-zero derivation extension of an endomorphism of `S`.
    pub fn derive(&self, m: &Mat<Cx>) -> Ext {
        assert_eq!(m.rows, self.dim_s);
        let mut out = Ext {
            dim_s: self.dim_s,
            comps: BTreeMap::new(),
        };
        for (mask, c) in &self.comps {
            for j in 0..self.dim_s {
                if mask & (1 << j) == 0 {
                    continue;
                }
                for r in 0..self.dim_s {
                    let a = m.at(r, j);
                    if a.is_zero() {
                        continue;
                    }
                    let without = mask & !(1u32 << j);
                    if without & (1 << r) != 0 {
                        continue;
                    }
                    // sign from moving the replacement into sorted position:
                    // one crossing per basis factor strictly between r and j
                    let lo = r.min(j);
                    let hi = r.max(j);
                    let range: u32 = ((1u32 << hi) - 1) & !((1u32 << (lo + 1)) - 1);
                    let crossings = (without & range).count_ones();
                    let mut coeff = c.mul(a);
                    if crossings % 2 == 1 {
                        coeff = coeff.neg();
                    }
                    out.insert(without | (1 << r), coeff);
                }
            }
        }
        out
    }

    /// Degree `-1` derivation: interior contraction with a covector.
    pub fn interior(&self, w: &[Cx]) -> Ext {
        assert_eq!(w.len(), self.dim_s);
        let mut out = Ext {
            dim_s: self.dim_s,
            comps: BTreeMap::new(),
        };
        for (mask, c) in &self.comps {
            for j in 0..self.dim_s {
                if mask & (1 << j) == 0 || w[j].is_zero() {
                    continue;
                }
                let below = (mask & ((1u32 << j) - 1)).count_ones();
                let mut coeff = c.mul(&w[j]);
                if below % 2 == 1 {
                    coeff = coeff.neg();
                }
                out.insert(mask & !(1u32 << j), coeff);
            }
        }
        out
    }

    pub fn max_grade(&self) -> u32 {
        self.comps.keys().map(|m| m.count_ones()).max().unwrap_or(0)
    }
}

/// Parity of crossings when merging two disjoint sorted masks.
fn merge_sign(a: u32, b: u32) -> bool {
    // number of pairs (i in a, j in b) with i > j
    let mut crossings = 0u32;
    let mut bits_b_below = 0u32;
    for k in 0..32 {
        if b & (1 << k) != 0 {
            bits_b_below += 1;
        }
        if a & (1 << k) != 0 {
            crossings += bits_b_below;
        }
    }
    // a-bit at position k crosses b-bits strictly below it; b-bits at the
    // same position cannot happen (disjoint)
    crossings % 2 == 1
}

// ---------------------------------------------------------------------------
// Flat constant-coefficient connection data on the fiber
// ---------------------------------------------------------------------------

/// A connection `D = d + A` with constant coefficient matrices over a flat
/// trivialization, together with everything the bracket calculus needs.
pub struct FlatConn {
    pub a: Vec<Mat<Cx>>,
    pub a_c: Vec<Mat<Cx>>,
    /// `T_mn = ad_{A_m} gamma_n - ad_{A_n} gamma_m`.
    pub t: Vec<Vec<Mat<Cx>>>,
    /// `R_mn = [A_m, A_n]`.
    pub r: Vec<Vec<Mat<Cx>>>,
}

impl FlatConn {
    pub fn new(rep: &GammaRep, conj: &ChargeConjugation, a: Vec<Mat<Cx>>) -> Self {
        let d = rep.dim();
        assert_eq!(a.len(), d);
        let a_c: Vec<Mat<Cx>> = a.iter().map(|m| conj.adjoint(m)).collect();
        let ad = |mu: usize, nu: usize| -> Mat<Cx> {
            a[mu]
                .matmul(rep.gamma_dense(nu))
                .add(&rep.gamma_dense(nu).matmul(&a_c[mu]))
        };
        let mut t = Vec::new();
        let mut r = Vec::new();
        for mu in 0..d {
            let mut trow = Vec::new();
            let mut rrow = Vec::new();
            for nu in 0..d {
                trow.push(ad(mu, nu).sub(&ad(nu, mu)));
                rrow.push(a[mu].matmul(&a[nu]).sub(&a[nu].matmul(&a[mu])));
            }
            t.push(trow);
            r.push(rrow);
        }
        FlatConn { a, a_c, t, r }
    }

    /// Symmetric part `ad_{A_(m} gamma_{n)}`, the obstruction to
    /// admissibility.
    pub fn sym_part(&self, rep: &GammaRep, conj: &ChargeConjugation, mu: usize, nu: usize) -> Mat<Cx> {
        let _ = conj;
        let ad = |m: usize, n: usize| -> Mat<Cx> {
            self.a[m]
                .matmul(rep.gamma_dense(n))
                .add(&rep.gamma_dense(n).matmul(&self.a_c[m]))
        };
        ad(mu, nu).add(&ad(nu, mu))
    }

    /// `D-hat_k T_mn` for constant coefficients: `ad^C_{A_k}(T_mn)`.
    pub fn dhat_t(&self, conj: &ChargeConjugation, k: usize, mu: usize, nu: usize) -> Mat<Cx> {
        let t = &self.t[mu][nu];
        self.a[k].matmul(t).add(&t.matmul(&conj.adjoint(&self.a[k])))
    }

    /// `(D_k R)_mn = [A_k, R_mn]`.
    pub fn d_r(&self, k: usize, mu: usize, nu: usize) -> Mat<Cx> {
        let r = &self.r[mu][nu];
        self.a[k].matmul(r).sub(&r.matmul(&self.a[k]))
    }

    /// `ad^C_{R_km} gamma_n`.
    pub fn ad_r_gamma(&self, rep: &GammaRep, conj: &ChargeConjugation, k: usize, mu: usize, nu: usize) -> Mat<Cx> {
        let r = &self.r[k][mu];
        r.matmul(rep.gamma_dense(nu))
            .add(&rep.gamma_dense(nu).matmul(&conj.adjoint(r)))
    }
}

// ---------------------------------------------------------------------------
// The bracket terms
// ---------------------------------------------------------------------------

/// Element of `Lambda^2 S tensor End(S)`: wedge parts paired with abstract
/// endomorphism slots.
pub struct BTerm {
    pub pairs: Vec<(Ext, Mat<Cx>)>,
}

impl BTerm {
    /// Zero as a tensor: expand against the wedge basis and entry grid.
    pub fn is_zero(&self) -> bool {
        tensor_pairs_zero(&self.pairs)
    }
}

/// Element of `Lambda^2 S tensor TM`: one wedge part per (raised) frame
/// direction.
pub struct DTerm {
    pub per_direction: Vec<Ext>,
}

impl DTerm {
    pub fn is_zero(&self) -> bool {
        self.per_direction.iter().all(|e| e.is_zero())
    }
}

pub fn tensor_pairs_zero(pairs: &[(Ext, Mat<Cx>)]) -> bool {
    if pairs.is_empty() {
        return true;
    }
    let (rows, cols) = (pairs[0].1.rows, pairs[0].1.cols);
    let mut masks: alloc::collections::BTreeSet<u32> = alloc::collections::BTreeSet::new();
    for (w, _) in pairs {
        for (m, _) in w.terms() {
            masks.insert(*m);
        }
    }
    for mask in masks {
        let mut acc = Mat::<Cx>::zeros(rows, cols);
        for (w, m) in pairs {
            let c = w.coeff(mask);
            if !c.is_zero() {
                acc.add_scaled(m, &c);
            }
        }
        if !acc.is_zero() {
            return false;
        }
    }
    true
}

pub(crate) fn gamma_phi(rep: &GammaRep, mu: usize, phi: &[Cx], raised: bool) -> Vec<Cx> {
    let mut v = rep.gamma(mu).apply(phi);
    if raised && rep.sig.metric(mu) < 0 {
        for c in v.iter_mut() {
            *c = c.neg();
        }
    }
    v
}

/// `B(R; phi, psi) = gamma^m phi wedge gamma^n psi owedge R_mn`.
pub fn b_term(
    rep: &GammaRep,
    fc: &FlatConn,
    phi: &[Cx],
    psi: &[Cx],
) -> Result<BTerm, ExtError> {
    let d = rep.dim();
    let mut pairs = Vec::new();
    for mu in 0..d {
        let gphi = Ext::vector(&gamma_phi(rep, mu, phi, true))?;
        for nu in 0..d {
            if fc.r[mu][nu].is_zero() {
                continue;
            }
            let gpsi = Ext::vector(&gamma_phi(rep, nu, psi, true))?;
            let w = gphi.wedge(&gpsi);
            if !w.is_zero() {
                pairs.push((w, fc.r[mu][nu].clone()));
            }
        }
    }
    Ok(BTerm { pairs })
}

/// `D(T; phi, psi) = (gamma^m phi wedge T_mn psi + gamma^m psi wedge
/// T_mn phi) tensor D^n`.
pub fn d_term(
    rep: &GammaRep,
    fc: &FlatConn,
    phi: &[Cx],
    psi: &[Cx],
) -> Result<DTerm, ExtError> {
    let d = rep.dim();
    let mut per_direction = Vec::new();
    for nu in 0..d {
        let mut acc = Ext::zero(rep.dim_s)?;
        for mu in 0..d {
            let t = &fc.t[mu][nu];
            if t.is_zero() {
                continue;
            }
            let a = Ext::vector(&gamma_phi(rep, mu, phi, true))?
                .wedge(&Ext::vector(&t.apply(psi))?);
            let b = Ext::vector(&gamma_phi(rep, mu, psi, true))?
                .wedge(&Ext::vector(&t.apply(phi))?);
            acc = acc.add(&a).add(&b);
        }
        // raised output slot
        if rep.sig.metric(nu) < 0 {
            acc = acc.neg();
        }
        per_direction.push(acc);
    }
    Ok(DTerm { per_direction })
}

// ---------------------------------------------------------------------------
// The canonical degree-one operator and its supercommutator
// ---------------------------------------------------------------------------

/// Apply the degree-one field attached to a parallel spinor to a constant
/// element: `omega -> sum_m gamma^m phi wedge D_m omega`.
pub fn iota_apply(
    rep: &GammaRep,
    fc: &FlatConn,
    phi: &[Cx],
    omega: &Ext,
) -> Result<Ext, ExtError> {
    let mut out = Ext::zero(rep.dim_s)?;
    for mu in 0..rep.dim() {
        let g = Ext::vector(&gamma_phi(rep, mu, phi, true))?;
        out = out.add(&g.wedge(&omega.derive(&fc.a[mu])));
    }
    Ok(out)
}

/// Supercommutator `[iota(phi), iota(psi)]` applied to a constant element,
/// expanded through first-order jets (`d_m phi = A^C_m phi` for parallel
/// spinors, second derivatives of a constant element vanish):
///
/// one side = `sum_mn gamma^m phi wedge (D-hat_m gamma^n) psi wedge D_n omega
///           + gamma^m phi wedge gamma^n psi wedge D_m D_n omega`.
pub fn iota_bracket_apply(
    rep: &GammaRep,
    fc: &FlatConn,
    phi: &[Cx],
    psi: &[Cx],
    omega: &Ext,
) -> Result<Ext, ExtError> {
    let d = rep.dim();
    let mut side = |phi: &[Cx], psi: &[Cx]| -> Result<Ext, ExtError> {
        let mut acc = Ext::zero(rep.dim_s)?;
        for mu in 0..d {
            let gphi = Ext::vector(&gamma_phi(rep, mu, phi, true))?;
            for nu in 0..d {
                let dhat = fc.a[mu]
                    .matmul(rep.gamma_dense(nu))
                    .add(&rep.gamma_dense(nu).matmul(&fc.a_c[mu]));
                let mut dg = dhat.apply(psi);
                if rep.sig.metric(nu) < 0 {
                    for c in dg.iter_mut() {
                        *c = c.neg();
                    }
                }
                let t1 = gphi
                    .wedge(&Ext::vector(&dg)?)
                    .wedge(&omega.derive(&fc.a[nu]));
                let gpsi = Ext::vector(&gamma_phi(rep, nu, psi, true))?;
                let t2 = gphi
                    .wedge(&gpsi)
                    .wedge(&omega.derive(&fc.a[nu]).derive(&fc.a[mu]));
                acc = acc.add(&t1).add(&t2);
            }
        }
        Ok(acc)
    };
    let s1 = side(phi, psi)?;
    let s2 = side(psi, phi)?;
    Ok(s1.add(&s2))
}

// ---------------------------------------------------------------------------
// Bracket identity and Jacobi sums
// ---------------------------------------------------------------------------

fn raise(rep: &GammaRep, mu: usize) -> i64 {
    rep.sig.metric(mu)
}

/// Verify pair admissibility on the listed spinor values.
fn check_admissible_on(
    rep: &GammaRep,
    conj: &ChargeConjugation,
    fc: &FlatConn,
    spinors: &[&[Cx]],
) -> Result<(), ExtError> {
    for mu in 0..rep.dim() {
        for nu in mu..rep.dim() {
            let s = fc.sym_part(rep, conj, mu, nu);
            for eta in spinors {
                if !s.apply(eta).iter().all(|c| c.is_zero()) {
                    return Err(ExtError::NotAdmissibleOnSpinors { mu, nu });
                }
            }
        }
    }
    Ok(())
}

/// The bracket identity: `[iota(phi), iota(psi)]` equals
/// `B(R) + D(T)/2` as operators, on a constant test element. Requires pair
/// admissibility on `{phi, psi}`.
pub fn oo_check(
    rep: &GammaRep,
    conj: &ChargeConjugation,
    fc: &FlatConn,
    phi: &[Cx],
    psi: &[Cx],
    omega: &Ext,
) -> Result<bool, ExtError> {
    check_admissible_on(rep, conj, fc, &[phi, psi])?;
    let d = rep.dim();
    let lhs = iota_bracket_apply(rep, fc, phi, psi, omega)?;

    let mut rhs = Ext::zero(rep.dim_s)?;
    // B-operator
    for mu in 0..d {
        let gphi = Ext::vector(&gamma_phi(rep, mu, phi, true))?;
        for nu in 0..d {
            if fc.r[mu][nu].is_zero() {
                continue;
            }
            let gpsi = Ext::vector(&gamma_phi(rep, nu, psi, true))?;
            rhs = rhs.add(&gphi.wedge(&gpsi).wedge(&omega.derive(&fc.r[mu][nu])));
        }
    }
    // D-operator / 2
    for nu in 0..d {
        let mut front = Ext::zero(rep.dim_s)?;
        for mu in 0..d {
            let t = &fc.t[mu][nu];
            if t.is_zero() {
                continue;
            }
            let a = Ext::vector(&gamma_phi(rep, mu, phi, true))?
                .wedge(&Ext::vector(&t.apply(psi))?);
            let b = Ext::vector(&gamma_phi(rep, mu, psi, true))?
                .wedge(&Ext::vector(&t.apply(phi))?);
            front = front.add(&a).add(&b);
        }
        let slot = omega
            .derive(&fc.a[nu])
            .scale(&Cx::ratio(raise(rep, nu), 2));
        rhs = rhs.add(&front.wedge(&slot));
    }
    Ok(lhs == rhs)
}

/// The order-(3,0) component of the iterated bracket, one assignment of the
/// spinor slots. Returned per raised output direction.
fn part_30(
    rep: &GammaRep,
    conj: &ChargeConjugation,
    fc: &FlatConn,
    phi: &[Cx],
    eta: &[Cx],
    xi: &[Cx],
) -> Result<Vec<Ext>, ExtError> {
    let d = rep.dim();
    let mut out = Vec::with_capacity(d);
    for nu in 0..d {
        let mut acc = Ext::zero(rep.dim_s)?;
        for kappa in 0..d {
            for mu in 0..d {
                let rs = Cx::ratio(raise(rep, kappa) * raise(rep, mu), 4);
                // first group: quarters of gamma/T/T wedges
                let g_phi = Ext::vector(&gamma_phi(rep, kappa, phi, false))?;
                let t_km = &fc.t[kappa][mu];
                let t_mn = &fc.t[mu][nu];
                if !t_km.is_zero() && !t_mn.is_zero() {
                    let w1 = g_phi
                        .wedge(&Ext::vector(&t_km.apply(eta))?)
                        .wedge(&Ext::vector(&t_mn.apply(xi))?);
                    let w2 = g_phi
                        .wedge(&Ext::vector(&t_km.apply(xi))?)
                        .wedge(&Ext::vector(&t_mn.apply(eta))?);
                    acc = acc.add(&w1.scale(&rs)).add(&w2.scale(&rs));
                }
                let t_nk = &fc.t[nu][kappa];
                let t_mk = &fc.t[mu][kappa];
                if !t_nk.is_zero() && !t_mk.is_zero() {
                    let tphi = Ext::vector(&t_nk.apply(phi))?;
                    let w3 = tphi
                        .wedge(&Ext::vector(&gamma_phi(rep, mu, eta, false))?)
                        .wedge(&Ext::vector(&t_mk.apply(xi))?);
                    let w4 = tphi
                        .wedge(&Ext::vector(&gamma_phi(rep, mu, xi, false))?)
                        .wedge(&Ext::vector(&t_mk.apply(eta))?);
                    acc = acc.add(&w3.scale(&rs)).add(&w4.scale(&rs));
                }
                // second group: halves with D-hat T, minus the ad R gamma
                let rs2 = Cx::ratio(raise(rep, kappa) * raise(rep, mu), 2);
                let dt = fc.dhat_t(conj, kappa, mu, nu);
                if !dt.is_zero() {
                    let w5 = g_phi
                        .wedge(&Ext::vector(&gamma_phi(rep, mu, eta, false))?)
                        .wedge(&Ext::vector(&dt.apply(xi))?);
                    let w6 = g_phi
                        .wedge(&Ext::vector(&gamma_phi(rep, mu, xi, false))?)
                        .wedge(&Ext::vector(&dt.apply(eta))?);
                    acc = acc.add(&w5.scale(&rs2)).add(&w6.scale(&rs2));
                }
                let adr = fc.ad_r_gamma(rep, conj, kappa, mu, nu);
                if !adr.is_zero() {
                    let w7 = Ext::vector(&gamma_phi(rep, kappa, eta, false))?
                        .wedge(&Ext::vector(&gamma_phi(rep, mu, xi, false))?)
                        .wedge(&Ext::vector(&adr.apply(phi))?);
                    acc = acc.add(&w7.scale(&Cx::int(-raise(rep, kappa) * raise(rep, mu))));
                }
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// The order-(4,1) component, one slot assignment, with the endomorphism
/// slots kept abstract.
#[allow(clippy::type_complexity)]
fn part_41(
    rep: &GammaRep,
    fc: &FlatConn,
    phi: &[Cx],
    eta: &[Cx],
    xi: &[Cx],
) -> Result<Vec<(Ext, Mat<Cx>)>, ExtError> {
    let d = rep.dim();
    let mut pairs = Vec::new();
    for mu in 0..d {
        for nu in 0..d {
            if !fc.r[mu][nu].is_zero() {
                let mut front = Ext::zero(rep.dim_s)?;
                for kappa in 0..d {
                    let t_kn = &fc.t[kappa][nu];
                    if t_kn.is_zero() {
                        continue;
                    }
                    let rs = Cx::ratio(raise(rep, mu) * raise(rep, kappa) * raise(rep, nu), 2);
                    let g_mu_phi = Ext::vector(&gamma_phi(rep, mu, phi, false))?;
                    let g_k_phi = Ext::vector(&gamma_phi(rep, kappa, phi, false))?;
                    let w1 = g_mu_phi
                        .wedge(&Ext::vector(&gamma_phi(rep, kappa, eta, false))?)
                        .wedge(&Ext::vector(&t_kn.apply(xi))?);
                    let w2 = g_mu_phi
                        .wedge(&Ext::vector(&gamma_phi(rep, kappa, xi, false))?)
                        .wedge(&Ext::vector(&t_kn.apply(eta))?);
                    let w3 = g_k_phi
                        .wedge(&Ext::vector(&gamma_phi(rep, mu, xi, false))?)
                        .wedge(&Ext::vector(&t_kn.apply(eta))?);
                    let w4 = g_k_phi
                        .wedge(&Ext::vector(&gamma_phi(rep, mu, eta, false))?)
                        .wedge(&Ext::vector(&t_kn.apply(xi))?);
                    front = front
                        .add(&w1.scale(&rs))
                        .add(&w2.scale(&rs))
                        .add(&w3.scale(&rs))
                        .add(&w4.scale(&rs));
                }
                if !front.is_zero() {
                    pairs.push((front, fc.r[mu][nu].clone()));
                }
            }
        }
    }
    for kappa in 0..d {
        for mu in 0..d {
            for nu in 0..d {
                let dr = fc.d_r(kappa, mu, nu);
                if dr.is_zero() {
                    continue;
                }
                let rs = Cx::int(raise(rep, kappa) * raise(rep, mu) * raise(rep, nu));
                let w = Ext::vector(&gamma_phi(rep, kappa, phi, false))?
                    .wedge(&Ext::vector(&gamma_phi(rep, mu, eta, false))?)
                    .wedge(&Ext::vector(&gamma_phi(rep, nu, xi, false))?)
                    .scale(&rs);
                if !w.is_zero() {
                    pairs.push((w, dr));
                }
            }
        }
    }
    Ok(pairs)
}

/// Residuals of the graded cyclic Jacobi sums in orders (3,0) and (4,1).
pub struct JacobiReport {
    pub res30: Vec<Ext>,
    pub res41_zero: bool,
}

impl JacobiReport {
    pub fn res30_zero(&self) -> bool {
        self.res30.iter().all(|e| e.is_zero())
    }
}

/// Assemble the displayed component expressions of the iterated bracket and
/// their graded cyclic sums. Requires pair admissibility on the triple.
pub fn jacobi_sums(
    rep: &GammaRep,
    conj: &ChargeConjugation,
    fc: &FlatConn,
    phi: &[Cx],
    eta: &[Cx],
    xi: &[Cx],
) -> Result<JacobiReport, ExtError> {
    check_admissible_on(rep, conj, fc, &[phi, eta, xi])?;
    let perms: [(&[Cx], &[Cx], &[Cx]); 3] = [(phi, eta, xi), (eta, xi, phi), (xi, phi, eta)];
    let mut res30: Vec<Ext> = (0..rep.dim())
        .map(|_| Ext::zero(rep.dim_s).unwrap())
        .collect();
    let mut pairs41 = Vec::new();
    for (a, b, c) in perms {
        let p30 = part_30(rep, conj, fc, a, b, c)?;
        for (acc, term) in res30.iter_mut().zip(p30) {
            *acc = acc.add(&term);
        }
        pairs41.extend(part_41(rep, fc, a, b, c)?);
    }
    let res41_zero = tensor_pairs_zero(&pairs41);
    Ok(JacobiReport { res30, res41_zero })
}

/// Cyclic sum of only the first summands of both component expressions,
/// with the torsion replaced by an arbitrary slot-antisymmetric tensor.
/// These vanish by symmetry alone.
pub fn first_summand_cyclic_zero(
    rep: &GammaRep,
    t: &dyn Fn(usize, usize) -> Mat<Cx>,
    phi: &[Cx],
    eta: &[Cx],
    xi: &[Cx],
) -> Result<bool, ExtError> {
    let d = rep.dim();
    let perms: [(&[Cx], &[Cx], &[Cx]); 3] = [(phi, eta, xi), (eta, xi, phi), (xi, phi, eta)];
    // order (3,0) first group
    for nu in 0..d {
        let mut acc = Ext::zero(rep.dim_s)?;
        for (a, b, c) in perms {
            for kappa in 0..d {
                for mu in 0..d {
                    let rs = Cx::ratio(raise(rep, kappa) * raise(rep, mu), 4);
                    let g_a = Ext::vector(&gamma_phi(rep, kappa, a, false))?;
                    let t_km = t(kappa, mu);
                    let t_mn = t(mu, nu);
                    if !t_km.is_zero() && !t_mn.is_zero() {
                        let w1 = g_a
                            .wedge(&Ext::vector(&t_km.apply(b))?)
                            .wedge(&Ext::vector(&t_mn.apply(c))?);
                        let w2 = g_a
                            .wedge(&Ext::vector(&t_km.apply(c))?)
                            .wedge(&Ext::vector(&t_mn.apply(b))?);
                        acc = acc.add(&w1.scale(&rs)).add(&w2.scale(&rs));
                    }
                    let t_nk = t(nu, kappa);
                    let t_mk = t(mu, kappa);
                    if !t_nk.is_zero() && !t_mk.is_zero() {
                        let ta = Ext::vector(&t_nk.apply(a))?;
                        let w3 = ta
                            .wedge(&Ext::vector(&gamma_phi(rep, mu, b, false))?)
                            .wedge(&Ext::vector(&t_mk.apply(c))?);
                        let w4 = ta
                            .wedge(&Ext::vector(&gamma_phi(rep, mu, c, false))?)
                            .wedge(&Ext::vector(&t_mk.apply(b))?);
                        acc = acc.add(&w3.scale(&rs)).add(&w4.scale(&rs));
                    }
                }
            }
        }
        if !acc.is_zero() {
            return Ok(false);
        }
    }
    // order (4,1) first group, against an arbitrary abstract slot
    let mut pairs = Vec::new();
    for (a, b, c) in perms {
        for mu in 0..d {
            for nu in 0..d {
                let mut front = Ext::zero(rep.dim_s)?;
                for kappa in 0..d {
                    let t_kn = t(kappa, nu);
                    if t_kn.is_zero() {
                        continue;
                    }
                    let rs = Cx::ratio(raise(rep, mu) * raise(rep, kappa) * raise(rep, nu), 2);
                    let g_mu_a = Ext::vector(&gamma_phi(rep, mu, a, false))?;
                    let g_k_a = Ext::vector(&gamma_phi(rep, kappa, a, false))?;
                    let w1 = g_mu_a
                        .wedge(&Ext::vector(&gamma_phi(rep, kappa, b, false))?)
                        .wedge(&Ext::vector(&t_kn.apply(c))?);
                    let w2 = g_mu_a
                        .wedge(&Ext::vector(&gamma_phi(rep, kappa, c, false))?)
                        .wedge(&Ext::vector(&t_kn.apply(b))?);
                    let w3 = g_k_a
                        .wedge(&Ext::vector(&gamma_phi(rep, mu, c, false))?)
                        .wedge(&Ext::vector(&t_kn.apply(b))?);
                    let w4 = g_k_a
                        .wedge(&Ext::vector(&gamma_phi(rep, mu, b, false))?)
                        .wedge(&Ext::vector(&t_kn.apply(c))?);
                    front = front
                        .add(&w1.scale(&rs))
                        .add(&w2.scale(&rs))
                        .add(&w3.scale(&rs))
                        .add(&w4.scale(&rs));
                }
                if !front.is_zero() {
                    // abstract slot labelled by the (mu, nu) basis matrix
                    let mut slot = Mat::<Cx>::zeros(rep.dim(), rep.dim());
                    slot.set(mu, nu, Cx::int(1));
                    slot.set(nu, mu, Cx::int(-1));
                    pairs.push((front, slot));
                }
            }
        }
    }
    Ok(tensor_pairs_zero(&pairs))
}

/// The corollary identity
/// `cycl { (D-hat_[k T_m]n - ad_{R_km} gamma_n) xi wedge gamma^k phi wedge
/// gamma^m eta } = 0`.
pub fn bianchi2_cyclic_zero(
    rep: &GammaRep,
    conj: &ChargeConjugation,
    fc: &FlatConn,
    phi: &[Cx],
    eta: &[Cx],
    xi: &[Cx],
) -> Result<bool, ExtError> {
    let d = rep.dim();
    let perms: [(&[Cx], &[Cx], &[Cx]); 3] = [(phi, eta, xi), (eta, xi, phi), (xi, phi, eta)];
    for nu in 0..d {
        let mut acc = Ext::zero(rep.dim_s)?;
        for (a, b, c) in perms {
            for kappa in 0..d {
                for mu in 0..d {
                    let m = fc
                        .dhat_t(conj, kappa, mu, nu)
                        .sub(&fc.dhat_t(conj, mu, kappa, nu))
                        .scale(&Cx::ratio(1, 2))
                        .sub(&fc.ad_r_gamma(rep, conj, kappa, mu, nu));
                    if m.is_zero() {
                        continue;
                    }
                    let rs = Cx::int(raise(rep, kappa) * raise(rep, mu));
                    let w = Ext::vector(&m.apply(c))?
                        .wedge(&Ext::vector(&gamma_phi(rep, kappa, a, false))?)
                        .wedge(&Ext::vector(&gamma_phi(rep, mu, b, false))?)
                        .scale(&rs);
                    acc = acc.add(&w);
                }
            }
        }
        if !acc.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Torsion-freeness classification and the differential criterion
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlatnessReport {
    pub strongly_torsion_free: bool,
    pub torsion_free: bool,
    pub flat: bool,
    /// The degree-one operator attached to the spinor squares to zero on a
    /// spanning test set.
    pub differential: bool,
}

/// Spanning test set for operator checks: the scalar, every grade-one basis
/// element, and every grade-two monomial.
fn spanning_test_set(dim_s: usize) -> Vec<Ext> {
    let mut out = alloc::vec![Ext::scalar(dim_s, Cx::int(1)).unwrap()];
    for k in 0..dim_s {
        out.push(Ext::basis_monomial(dim_s, 1 << k).unwrap());
    }
    for a in 0..dim_s {
        for b in (a + 1)..dim_s {
            out.push(Ext::basis_monomial(dim_s, (1 << a) | (1 << b)).unwrap());
        }
    }
    out
}

/// Whether the squared degree-one operator vanishes on the spanning set,
/// with the parallel-jet prescription for the spinor.
pub fn iota_squares_to_zero(
    rep: &GammaRep,
    fc: &FlatConn,
    eta: &[Cx],
) -> Result<bool, ExtError> {
    for omega in spanning_test_set(rep.dim_s) {
        if !iota_bracket_apply(rep, fc, eta, eta, &omega)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Torsion-freeness trichotomy for a genuinely parallel constant spinor
/// (`A^C_m eta = 0`), together with the differential criterion.
pub fn flatness(
    rep: &GammaRep,
    conj: &ChargeConjugation,
    fc: &FlatConn,
    eta: &[Cx],
) -> Result<FlatnessReport, ExtError> {
    for (mu, ac) in fc.a_c.iter().enumerate() {
        if !ac.apply(eta).iter().all(|c| c.is_zero()) {
            return Err(ExtError::NotParallel { mu });
        }
    }
    let _ = conj;
    let strongly = fc
        .t
        .iter()
        .flatten()
        .all(|t| t.apply(eta).iter().all(|c| c.is_zero()));
    let dterm = d_term(rep, fc, eta, eta)?;
    let bterm = b_term(rep, fc, eta, eta)?;
    let torsion_free = dterm.is_zero();
    let flat = torsion_free && bterm.is_zero();
    let differential = iota_squares_to_zero(rep, fc, eta)?;
    Ok(FlatnessReport {
        strongly_torsion_free: strongly,
        torsion_free,
        flat,
        differential,
    })
}
