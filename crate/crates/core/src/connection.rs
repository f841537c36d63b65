//! Form-valued spinor connections: the `ad^C` calculus, torsion,
//! admissibility, the twisted-bundle classification, and the chirality
//! projections.
//!
//! A connection differs from Levi-Civita by a one-form of endomorphisms
//! `A_m`; its torsion is `T_mn = ad^C_{A_m} gamma_n - ad^C_{A_n} gamma_m`
//! with `ad^C_W F = W F + F W^C`. The connection is admissible exactly when
//! the symmetric part `ad^C_{A_(m} gamma_{n)}` vanishes; for a single
//! homogeneous term driven by a totally antisymmetric form of degree `l`
//! this happens iff `Delta_1 Delta_l = -1`, i.e. `l = 3 mod 4` or
//! `l = 1 + Delta_0 Delta_1 mod 4` -- regardless of placement.
//!
//! On the doubled bundle with pairing `C tensor tau_i`, a term twisted by
//! `tau_j` contributes admissibly iff `Delta_l Delta_1 eps_j eps_ij = -1`.

use alloc::vec::Vec;
use core::fmt;

use crate::clifford::{GammaRep, MultiIndex};
use crate::conjugation::{tau_mono, ChargeConjugation};
use crate::exact::{Cx, Gi, Scalar};
use crate::fierz::KForm;
use crate::mat::{Mat, Mono};

// ---------------------------------------------------------------------------
// ad^C and pairings
// ---------------------------------------------------------------------------

/// The pairing a connection lives over: the plain bundle or the doubled
/// bundle with a twisted conjugation.
pub enum Pairing<'a> {
    Simple(&'a ChargeConjugation),
    /// `C tensor tau_i` on `S + S`.
    Twisted(&'a ChargeConjugation, usize),
}

impl<'a> Pairing<'a> {
    pub fn dim(&self) -> usize {
        match self {
            Pairing::Simple(c) => c.dim_s,
            Pairing::Twisted(c, _) => 2 * c.dim_s,
        }
    }

    pub fn adjoint<T: Scalar>(&self, m: &Mat<T>) -> Mat<T> {
        match self {
            Pairing::Simple(c) => c.adjoint(m),
            Pairing::Twisted(c, i) => c.adjoint_doubled(*i, m),
        }
    }

    pub fn c_mono(&self) -> Mono {
        match self {
            Pairing::Simple(c) => c.c_mono().clone(),
            Pairing::Twisted(c, i) => c.doubled_c(*i),
        }
    }

    /// Clifford generator acting on the bundle.
    pub fn gamma<T: Scalar>(&self, rep: &GammaRep, mu: usize) -> Mat<T> {
        match self {
            Pairing::Simple(_) => rep.gamma(mu).to_mat(),
            Pairing::Twisted(..) => rep.gamma(mu).kron(&Mono::identity(2)).to_mat(),
        }
    }
}

/// `ad^C_W F = W F + F W^C`.
pub fn ad_c<T: Scalar>(pairing: &Pairing, omega: &Mat<T>, phi: &Mat<T>) -> Mat<T> {
    assert_eq!(omega.rows, phi.rows, "dimension mismatch");
    omega.matmul(phi).add(&phi.matmul(&pairing.adjoint(omega)))
}

// ---------------------------------------------------------------------------
// Connection terms
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Placement {
    /// `A_m = F_{m k1..k(l-1)} gamma^{k1..k(l-1)}`, the interior slot.
    Contract,
    /// `A_m = F^{k1..kl} gamma_{m k1..kl}`, the exterior slot.
    Wedge,
    /// `A_m = F_(l) gamma^(l) gamma_m`.
    CliffordLeft,
    /// `A_m = gamma_m F_(l) gamma^(l)`.
    CliffordRight,
}

pub const ALL_PLACEMENTS: [Placement; 4] = [
    Placement::Contract,
    Placement::Wedge,
    Placement::CliffordLeft,
    Placement::CliffordRight,
];

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Placement::Contract => "contract",
            Placement::Wedge => "wedge",
            Placement::CliffordLeft => "clifford-left",
            Placement::CliffordRight => "clifford-right",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Projector {
    None,
    /// `(Id + sign gamma^*)/2` on the plain bundle.
    Chiral(i64),
    /// `Pi_{ij,w}` on the doubled bundle.
    Pi { i: usize, j: usize, w: i64 },
}

/// One homogeneous summand of a spinor connection.
#[derive(Clone)]
pub struct ConnectionTerm {
    pub degree: usize,
    pub placement: Placement,
    pub form: KForm,
    pub coeff: Cx,
    /// `tau_j` twist on the doubled bundle.
    pub twist: Option<usize>,
    /// Right `gamma^*` factor.
    pub star: bool,
    pub projector: Projector,
}

impl ConnectionTerm {
    pub fn plain(degree: usize, placement: Placement, form: KForm) -> Self {
        ConnectionTerm {
            degree,
            placement,
            form,
            coeff: Cx::int(1),
            twist: None,
            star: false,
            projector: Projector::None,
        }
    }
}

/// A sum of homogeneous terms over a flat background with constant
/// coefficients.
#[derive(Clone)]
pub struct SpinorConnection {
    pub doubled: bool,
    pub terms: Vec<ConnectionTerm>,
}

impl SpinorConnection {
    pub fn new(doubled: bool, terms: Vec<ConnectionTerm>) -> Self {
        SpinorConnection { doubled, terms }
    }

    /// Evaluate `A_m`.
    pub fn a_matrix(&self, rep: &GammaRep, mu: usize) -> Mat<Cx> {
        let dim = if self.doubled { 2 * rep.dim_s } else { rep.dim_s };
        let mut acc = Mat::zeros(dim, dim);
        for term in &self.terms {
            let base = term_base(rep, term, mu);
            let m = if self.doubled {
                base.kron(&tau_mono(term.twist.unwrap_or(0)).to_mat())
            } else {
                assert!(term.twist.is_none(), "twist needs a doubled bundle");
                base
            };
            let m = match term.projector {
                Projector::None => m,
                Projector::Chiral(s) => {
                    assert!(!self.doubled, "use the Pi projector on doubled bundles");
                    m.matmul(&chiral_projector(rep, s))
                }
                Projector::Pi { i, j, w } => {
                    assert!(self.doubled);
                    m.matmul(&pi_projector(rep, i, j, w).mat)
                }
            };
            acc.add_scaled(&m, &term.coeff);
        }
        acc
    }

    pub fn a_matrices(&self, rep: &GammaRep) -> Vec<Mat<Cx>> {
        (0..rep.dim()).map(|mu| self.a_matrix(rep, mu)).collect()
    }
}

/// `(Id + s gamma^*)/2`.
pub fn chiral_projector(rep: &GammaRep, s: i64) -> Mat<Cx> {
    let star = rep.star_dense().expect("chiral projector needs even dimension");
    Mat::<Cx>::identity(rep.dim_s)
        .add(&star.scale(&Cx::int(s)))
        .scale(&Cx::ratio(1, 2))
}

/// The untwisted, unprojected spinor part of one term at direction `mu`.
fn term_base(rep: &GammaRep, term: &ConnectionTerm, mu: usize) -> Mat<Cx> {
    let mut acc = term_base_scaled(rep, term.degree, term.placement, mu, &|idx| {
        term.form.get(idx)
    });
    if term.star {
        let star = rep.star().expect("gamma^* factor needs even dimension");
        acc = acc.matmul(&star.to_mat());
    }
    acc
}

fn term_base_scaled(
    rep: &GammaRep,
    degree: usize,
    placement: Placement,
    mu: usize,
    form: &dyn Fn(&[usize]) -> Cx,
) -> Mat<Cx> {
    let mut acc = Mat::zeros(rep.dim_s, rep.dim_s);
    match placement {
        Placement::Contract => {
            if degree == 0 {
                return acc;
            }
            for tup in rep.tuples(degree - 1) {
                if tup.contains(&mu) {
                    continue;
                }
                let mut idx = alloc::vec![mu];
                idx.extend_from_slice(&tup);
                let c = form(&idx).mul(&Cx::int(rep.sig.raise_sign(&tup)));
                if !c.is_zero() {
                    rep.mono_sorted(&tup).add_into(&mut acc, &c, 0);
                }
            }
        }
        Placement::Wedge => {
            for tup in rep.tuples(degree) {
                if tup.contains(&mu) {
                    continue;
                }
                let mut idx = alloc::vec![mu];
                idx.extend_from_slice(&tup);
                let (mi, sign) = MultiIndex::canonicalize(&idx).unwrap();
                let c = form(&tup).mul(&Cx::int(sign * rep.sig.raise_sign(&tup)));
                if !c.is_zero() {
                    rep.mono_sorted(&mi.labels).add_into(&mut acc, &c, 0);
                }
            }
        }
        Placement::CliffordLeft | Placement::CliffordRight => {
            for tup in rep.tuples(degree) {
                let c = form(&tup).mul(&Cx::int(rep.sig.raise_sign(&tup)));
                if c.is_zero() {
                    continue;
                }
                let m = match placement {
                    Placement::CliffordLeft => rep.mono_sorted(&tup).mul(rep.gamma(mu)),
                    _ => rep.gamma(mu).mul(&rep.mono_sorted(&tup)),
                };
                m.add_into(&mut acc, &c, 0);
            }
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// Torsion, deformed gamma, admissibility
// ---------------------------------------------------------------------------

/// The torsion components `T_mn`, antisymmetric in the direction slots.
pub struct Torsion {
    pub t: Vec<Vec<Mat<Cx>>>,
}

/// `(D-hat_k gamma)_n = A_k gamma_n + gamma_n A^C_k` in a flat orthonormal
/// frame.
pub fn hat_d_gamma(
    rep: &GammaRep,
    pairing: &Pairing,
    a: &[Mat<Cx>],
    kappa: usize,
) -> Vec<Mat<Cx>> {
    (0..rep.dim())
        .map(|nu| ad_c(pairing, &a[kappa], &pairing.gamma(rep, nu)))
        .collect()
}

pub fn torsion(rep: &GammaRep, pairing: &Pairing, a: &[Mat<Cx>]) -> Torsion {
    let d = rep.dim();
    let hat: Vec<Vec<Mat<Cx>>> = (0..d).map(|k| hat_d_gamma(rep, pairing, a, k)).collect();
    let t = (0..d)
        .map(|mu| {
            (0..d)
                .map(|nu| hat[mu][nu].sub(&hat[nu][mu]))
                .collect()
        })
        .collect();
    Torsion { t }
}

/// Outcome of the symmetric-part test.
pub struct AdmissibleDecision {
    pub admissible: bool,
    /// First nonvanishing symmetric component, as a witness.
    pub witness: Option<(usize, usize, Mat<Cx>)>,
}

pub fn is_admissible(rep: &GammaRep, pairing: &Pairing, a: &[Mat<Cx>]) -> AdmissibleDecision {
    let d = rep.dim();
    for mu in 0..d {
        for nu in mu..d {
            let s = ad_c(pairing, &a[mu], &pairing.gamma(rep, nu))
                .add(&ad_c(pairing, &a[nu], &pairing.gamma(rep, mu)));
            if !s.is_zero() {
                return AdmissibleDecision {
                    admissible: false,
                    witness: Some((mu, nu, s)),
                };
            }
        }
    }
    AdmissibleDecision {
        admissible: true,
        witness: None,
    }
}

/// Pair admissibility: the symmetric part acts trivially on every spinor in
/// `k_set`.
pub fn is_admissible_on(
    rep: &GammaRep,
    pairing: &Pairing,
    a: &[Mat<Cx>],
    k_set: &[Vec<Cx>],
) -> bool {
    let d = rep.dim();
    for mu in 0..d {
        for nu in mu..d {
            let s = ad_c(pairing, &a[mu], &pairing.gamma(rep, nu))
                .add(&ad_c(pairing, &a[nu], &pairing.gamma(rep, mu)));
            for eta in k_set {
                if !s.apply(eta).iter().all(|c| c.is_zero()) {
                    return false;
                }
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Closed-form admissibility rules
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TermClass {
    /// The term vanishes identically for index reasons.
    pub trivially_zero: bool,
    pub admissible: bool,
}

/// Closed-form prediction for a single untwisted homogeneous term driven by
/// a totally antisymmetric form of the given degree. Both phrasings of the
/// degree rule are evaluated and must agree.
pub fn classify_form_term(
    d: usize,
    degree: usize,
    placement: Placement,
    conj: &ChargeConjugation,
) -> TermClass {
    let trivially_zero = match placement {
        Placement::Contract => degree == 0,
        Placement::Wedge => degree + 1 > d,
        _ => false,
    };
    let dd = conj.delta0 * conj.delta1;
    let by_mod4 = degree % 4 == 3 || degree as i64 % 4 == (1 + dd).rem_euclid(4);
    let by_delta = conj.delta1 * conj.delta_formula(degree) == -1;
    assert_eq!(by_mod4, by_delta, "the two phrasings of the degree rule agree");
    TermClass {
        trivially_zero,
        admissible: trivially_zero || by_mod4,
    }
}

/// Closed-form rule for terms with a right `gamma^*` factor on an even
/// `2n`-dimensional space.
pub fn gamma_star_term_rule(n: usize, degree: usize, conj: &ChargeConjugation) -> bool {
    let dd = conj.delta0 * conj.delta1;
    let l = degree as i64 % 4;
    if n % 2 == 0 {
        l == 1 || l == (1 + dd).rem_euclid(4)
    } else {
        l == 3 || l == (1 - dd).rem_euclid(4)
    }
}

/// Twisted-bundle rule: `Delta_l Delta_1 eps_j eps_ij = -1`.
pub fn twisted_term_rule(
    conj: &ChargeConjugation,
    degree: usize,
    conj_twist: usize,
    term_twist: usize,
) -> bool {
    let (eps_ik, eps_k) = crate::conjugation::tau_eps_tables();
    conj.delta_formula(degree) * conj.delta1 * eps_k[term_twist] * eps_ik[conj_twist][term_twist]
        == -1
}

/// One row of the twisted-admissibility table: for pairing twist `i` and
/// form degree class `l mod 4`, the twist labels `j` that keep the term
/// admissible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedTableRow {
    pub i: usize,
    pub l_mod_4: usize,
    pub j: Vec<usize>,
}

/// The full 16-row table for a given sign `Delta_0 Delta_1`.
pub fn twisted_table(delta0: i64, delta1: i64) -> Vec<TwistedTableRow> {
    let (eps_ik, eps_k) = crate::conjugation::tau_eps_tables();
    let delta_l = |l: usize| -> i64 {
        let tri = if (l * (l.max(1) - 1) / 2) % 2 == 0 { 1 } else { -1 };
        let d0 = if (l + 1) % 2 == 0 { 1 } else { delta0 };
        let d1 = if l % 2 == 0 { 1 } else { delta1 };
        tri * d0 * d1
    };
    let mut rows = Vec::new();
    for i in 0..4 {
        for l in 0..4 {
            let j: Vec<usize> = (0..4)
                .filter(|&j| delta_l(l) * delta1 * eps_k[j] * eps_ik[i][j] == -1)
                .collect();
            rows.push(TwistedTableRow { i, l_mod_4: l, j });
        }
    }
    rows
}

// ---------------------------------------------------------------------------
// Chirality projections on the doubled bundle
// ---------------------------------------------------------------------------

/// `Pi_{ij,w} = (Id tensor tau_i + w gamma^* tensor tau_j)/2`.
pub struct PiProjector {
    pub i: usize,
    pub j: usize,
    pub w: i64,
    pub mat: Mat<Cx>,
}

pub fn pi_projector(rep: &GammaRep, i: usize, j: usize, w: i64) -> PiProjector {
    let star = rep.star().expect("Pi projectors need even dimension");
    let a = Mono::identity(rep.dim_s).kron(&tau_mono(i)).to_mat::<Cx>();
    let b = star.kron(&tau_mono(j)).to_mat::<Cx>().scale(&Cx::int(w));
    PiProjector {
        i,
        j,
        w,
        mat: a.add(&b).scale(&Cx::ratio(1, 2)),
    }
}

impl PiProjector {
    pub fn kernel(&self) -> Mat<Cx> {
        self.mat.nullspace()
    }

    /// Basis of the image, as rows.
    pub fn image(&self) -> Mat<Cx> {
        // rows of M^T span the column space
        let mut m = self.mat.transpose();
        let pivots = m.rref();
        let mut out = Mat::zeros(pivots.len(), self.mat.rows);
        for (r, _) in pivots.iter().enumerate() {
            for c in 0..self.mat.rows {
                out.set(r, c, m.at(r, c).clone());
            }
        }
        out
    }
}

/// The kernel descriptions of the singular projections, as subsets of
/// `S + S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelShape {
    /// `S^{aw} + S^{bw}` (chirality labels are multiples of `w`).
    Split { a: i64, b: i64 },
    /// `{(eta, s w gamma^* eta)}`.
    Graph { s: i64 },
    /// Invertible: trivial kernel.
    Trivial,
}

/// Expected kernel shapes; the `(0,2), (2,0), (1,3), (3,1)` pairs have no
/// zero eigenvalue.
pub fn expected_kernel_shape(i: usize, j: usize) -> KernelShape {
    match (i, j) {
        (0, 2) | (2, 0) | (1, 3) | (3, 1) => KernelShape::Trivial,
        (0, 0) | (1, 1) | (2, 2) | (3, 3) => KernelShape::Split { a: -1, b: -1 },
        (0, 3) | (1, 2) | (2, 1) | (3, 0) => KernelShape::Split { a: -1, b: 1 },
        (0, 1) | (1, 0) => KernelShape::Graph { s: -1 },
        (2, 3) | (3, 2) => KernelShape::Graph { s: 1 },
        _ => unreachable!(),
    }
}

/// Verify that the kernel of a projector matches a shape description by
/// span comparison.
pub fn kernel_matches_shape(rep: &GammaRep, pi: &PiProjector, shape: KernelShape) -> bool {
    let dim_s = rep.dim_s;
    let ker = pi.kernel();
    let star = rep.star_dense().unwrap();
    let chir_basis = |sgn: i64| -> Vec<Vec<Cx>> {
        let proj = Mat::<Cx>::identity(dim_s)
            .add(&star.scale(&Cx::int(sgn)))
            .scale(&Cx::ratio(1, 2));
        let mut m = proj.transpose();
        let pivots = m.rref();
        (0..pivots.len()).map(|r| m.row(r).to_vec()).collect()
    };
    let mut expected: Vec<Vec<Cx>> = Vec::new();
    match shape {
        KernelShape::Trivial => {}
        KernelShape::Split { a, b } => {
            for e in chir_basis(a * pi.w) {
                let mut v = alloc::vec![Cx::int(0); 2 * dim_s];
                for (k, c) in e.iter().enumerate() {
                    v[2 * k] = c.clone();
                }
                expected.push(v);
            }
            for e in chir_basis(b * pi.w) {
                let mut v = alloc::vec![Cx::int(0); 2 * dim_s];
                for (k, c) in e.iter().enumerate() {
                    v[2 * k + 1] = c.clone();
                }
                expected.push(v);
            }
        }
        KernelShape::Graph { s } => {
            for k in 0..dim_s {
                let mut eta = alloc::vec![Cx::int(0); dim_s];
                eta[k] = Cx::int(1);
                let tail = star.apply(&eta);
                let mut v = alloc::vec![Cx::int(0); 2 * dim_s];
                for (p, c) in eta.iter().enumerate() {
                    v[2 * p] = c.clone();
                }
                for (p, c) in tail.iter().enumerate() {
                    v[2 * p + 1] = c.mul(&Cx::int(s * pi.w));
                }
                expected.push(v);
            }
        }
    }
    if ker.rows != expected.len() {
        return false;
    }
    // every expected vector must be annihilated, and dimensions agree
    expected
        .iter()
        .all(|v| pi.mat.apply(v).iter().all(|c| c.is_zero()))
}

// ---------------------------------------------------------------------------
// Integer fast path for exhaustive scans
// ---------------------------------------------------------------------------

/// Integer-coefficient totally antisymmetric form for generic witnesses.
pub struct IForm {
    pub degree: usize,
    comps: alloc::collections::BTreeMap<Vec<usize>, i64>,
}

impl IForm {
    pub fn random(rng: &mut impl rand::Rng, d: usize, degree: usize) -> Self {
        let mut comps = alloc::collections::BTreeMap::new();
        for tup in crate::clifford::subsets(d, degree) {
            comps.insert(tup, rng.gen_range(-9i64..=9));
        }
        IForm { degree, comps }
    }

    pub fn ones(d: usize, degree: usize) -> Self {
        let mut comps = alloc::collections::BTreeMap::new();
        for tup in crate::clifford::subsets(d, degree) {
            comps.insert(tup, 1i64);
        }
        IForm { degree, comps }
    }

    pub fn get(&self, idx: &[usize]) -> i64 {
        match MultiIndex::canonicalize(idx) {
            None => 0,
            Some((mi, sign)) => sign * self.comps.get(&mi.labels).copied().unwrap_or(0),
        }
    }
}

/// Assemble the integer `A_m` for a single scan term. `star` appends a
/// `gamma^*` factor; `twist` moves to the doubled bundle.
pub fn scan_term_matrix(
    rep: &GammaRep,
    degree: usize,
    placement: Placement,
    star: bool,
    twist: Option<usize>,
    form: &IForm,
    mu: usize,
) -> Mat<Gi> {
    let mut acc: Mat<Gi> = Mat::zeros(rep.dim_s, rep.dim_s);
    let add = |acc: &mut Mat<Gi>, mono: &Mono, c: i64| {
        mono.add_into(acc, &Gi::new(c, 0), 0);
    };
    match placement {
        Placement::Contract => {
            if degree > 0 {
                for tup in rep.tuples(degree - 1) {
                    if tup.contains(&mu) {
                        continue;
                    }
                    let mut idx = alloc::vec![mu];
                    idx.extend_from_slice(&tup);
                    let c = form.get(&idx) * rep.sig.raise_sign(&tup);
                    if c != 0 {
                        add(&mut acc, &rep.mono_sorted(&tup), c);
                    }
                }
            }
        }
        Placement::Wedge => {
            for tup in rep.tuples(degree) {
                if tup.contains(&mu) {
                    continue;
                }
                let mut idx = alloc::vec![mu];
                idx.extend_from_slice(&tup);
                let (mi, sign) = MultiIndex::canonicalize(&idx).unwrap();
                let c = form.get(&tup) * sign * rep.sig.raise_sign(&tup);
                if c != 0 {
                    add(&mut acc, &rep.mono_sorted(&mi.labels), c);
                }
            }
        }
        Placement::CliffordLeft | Placement::CliffordRight => {
            for tup in rep.tuples(degree) {
                let c = form.get(&tup) * rep.sig.raise_sign(&tup);
                if c == 0 {
                    continue;
                }
                let m = match placement {
                    Placement::CliffordLeft => rep.mono_sorted(&tup).mul(rep.gamma(mu)),
                    _ => rep.gamma(mu).mul(&rep.mono_sorted(&tup)),
                };
                add(&mut acc, &m, c);
            }
        }
    }
    if star {
        acc = acc.matmul(&rep.star().expect("even dimension").to_mat());
    }
    match twist {
        None => acc,
        Some(j) => acc.kron(&tau_mono(j).to_mat()),
    }
}

/// Brute-force admissibility of integer difference-tensor matrices.
pub fn brute_admissible(rep: &GammaRep, pairing: &Pairing, a: &[Mat<Gi>]) -> bool {
    let d = rep.dim();
    let gammas: Vec<Mat<Gi>> = (0..d).map(|nu| pairing.gamma(rep, nu)).collect();
    let adj: Vec<Mat<Gi>> = a.iter().map(|m| pairing.adjoint(m)).collect();
    let ad = |mu: usize, nu: usize| -> Mat<Gi> {
        a[mu].matmul(&gammas[nu]).add(&gammas[nu].matmul(&adj[mu]))
    };
    for mu in 0..d {
        for nu in mu..d {
            if !ad(mu, nu).add(&ad(nu, mu)).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Brute-force admissibility of one scan term for two generic witness
/// forms (a seeded random one and the all-ones one).
pub fn brute_term_admissible(
    rep: &GammaRep,
    pairing: &Pairing,
    degree: usize,
    placement: Placement,
    star: bool,
    twist: Option<usize>,
    seed: u64,
) -> bool {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for form in [
        IForm::random(&mut rng, rep.dim(), degree),
        IForm::ones(rep.dim(), degree),
    ] {
        let a: Vec<Mat<Gi>> = (0..rep.dim())
            .map(|mu| scan_term_matrix(rep, degree, placement, star, twist, &form, mu))
            .collect();
        if !brute_admissible(rep, pairing, &a) {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// The eleven-dimensional supergravity difference tensor
// ---------------------------------------------------------------------------

/// `A = F3 + F5` for a 4-form `F`: the contract part with coefficient
/// `-1/6` and the wedge part with `1/12` (on sorted-tuple sums).
pub fn supergravity_connection(f: &KForm) -> SpinorConnection {
    assert_eq!(f.degree, 4);
    let mut t1 = ConnectionTerm::plain(4, Placement::Contract, f.clone());
    t1.coeff = Cx::ratio(-1, 6);
    let mut t2 = ConnectionTerm::plain(4, Placement::Wedge, f.clone());
    t2.coeff = Cx::ratio(1, 12);
    SpinorConnection::new(false, alloc::vec![t1, t2])
}

/// The closed form of `ad^C(A_m) gamma_n` for the supergravity tensor:
/// `(1/144) F^{krst} gamma_{mnkrst} + (1/6) F_{mnkr} gamma^{kr}` (full-sum
/// normalization; the contraction coefficient follows from
/// `{gamma^{(3)}, gamma_n}` with the `-1/36` three-form part).
pub fn supergravity_ad_closed(rep: &GammaRep, f: &KForm, mu: usize, nu: usize) -> Mat<Cx> {
    let mut acc = Mat::zeros(rep.dim_s, rep.dim_s);
    // (1/144) * 4! on sorted tuples
    for tup in rep.tuples(4) {
        let c = f
            .get(&tup)
            .mul(&Cx::int(rep.sig.raise_sign(&tup)))
            .mul(&Cx::ratio(24, 144));
        if c.is_zero() {
            continue;
        }
        let mut idx = alloc::vec![mu, nu];
        idx.extend_from_slice(&tup);
        acc.add_scaled(&rep.antisym_gamma(&idx), &c);
    }
    // (1/6) * 2! on sorted pairs
    for pair in rep.tuples(2) {
        let mut idx = alloc::vec![mu, nu];
        idx.extend_from_slice(&pair);
        let c = f
            .get(&idx)
            .mul(&Cx::int(rep.sig.raise_sign(&pair)))
            .mul(&Cx::ratio(1, 3));
        if c.is_zero() {
            continue;
        }
        acc.add_scaled(&rep.antisym_gamma(&pair), &c);
    }
    acc
}

/// The geometric Killing difference tensor `A = a gamma`.
pub fn killing_connection(d: usize, a: Cx) -> SpinorConnection {
    let mut form = KForm::zero(d, 0);
    form.set_sorted(Vec::new(), a);
    SpinorConnection::new(
        false,
        alloc::vec![ConnectionTerm::plain(0, Placement::Wedge, form)],
    )
}

// ---------------------------------------------------------------------------
// Type IIB field content
// ---------------------------------------------------------------------------

/// One named term of the ten-dimensional doubled-bundle connection: all odd
/// form degrees twisted by `tau_2` (degree 1 mod 4) or `tau_1` (degree
/// 3 mod 4), plus a second three-form twisted by `tau_3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IibTerm {
    pub name: &'static str,
    pub degree: usize,
    pub twist: usize,
}

pub fn iib_field_content() -> [IibTerm; 6] {
    [
        IibTerm { name: "H3", degree: 3, twist: 3 },
        IibTerm { name: "F1", degree: 1, twist: 2 },
        IibTerm { name: "F3", degree: 3, twist: 1 },
        IibTerm { name: "F5", degree: 5, twist: 2 },
        IibTerm { name: "F7", degree: 7, twist: 1 },
        IibTerm { name: "F9", degree: 9, twist: 2 },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Signature;
    use rand::{Rng, SeedableRng};

    fn rand_form(rng: &mut impl Rng, d: usize, degree: usize) -> KForm {
        let mut form = KForm::zero(d, degree);
        for tup in crate::clifford::subsets(d, degree) {
            form.set_sorted(tup, Cx::int(rng.gen_range(-5i64..=5)));
        }
        form
    }

    fn rand_mat(rng: &mut impl Rng, n: usize) -> Mat<Cx> {
        Mat::from_fn(n, n, |_, _| Cx::int(rng.gen_range(-3i64..=3)))
    }

    #[test]
    fn ad_c_representation_property() {
        let rep = GammaRep::build(Signature::new(1, 3)).unwrap();
        let conj = &ChargeConjugation::build_all(&rep)[0];
        let pairing = Pairing::Simple(conj);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let w1 = rand_mat(&mut rng, 4);
        let w2 = rand_mat(&mut rng, 4);
        let phi = rand_mat(&mut rng, 4);
        let comm = w1.matmul(&w2).sub(&w2.matmul(&w1));
        let lhs = ad_c(&pairing, &comm, &phi);
        let rhs = ad_c(&pairing, &w1, &ad_c(&pairing, &w2, &phi))
            .sub(&ad_c(&pairing, &w2, &ad_c(&pairing, &w1, &phi)));
        assert_eq!(lhs, rhs);
        // identity doubles
        let id = Mat::<Cx>::identity(4);
        assert_eq!(ad_c(&pairing, &id, &phi), phi.scale(&Cx::int(2)));
        // anti-self-adjoint arguments act by commutator
        let anti = w1.sub(&conj.adjoint(&w1)).scale(&Cx::ratio(1, 2));
        assert_eq!(
            ad_c(&pairing, &anti, &phi),
            anti.matmul(&phi).sub(&phi.matmul(&anti))
        );
        // eigenspace preservation on gamma^(k)
        for k in 0..=4 {
            for tup in rep.tuples(k).into_iter().take(2) {
                let g = rep.antisym_gamma(&tup);
                let img = ad_c(&pairing, &w1, &g);
                let want = conj.adjoint_eigenvalue(k);
                assert_eq!(conj.adjoint(&img), img.scale(&Cx::int(want)));
            }
        }
    }

    #[test]
    fn torsion_antisymmetry_and_delta1_symmetry() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for (t, s) in [(0, 4), (1, 4)] {
            let rep = GammaRep::build(Signature::new(t, s)).unwrap();
            for conj in ChargeConjugation::build_all(&rep) {
                let pairing = Pairing::Simple(&conj);
                let conn = SpinorConnection::new(
                    false,
                    alloc::vec![
                        ConnectionTerm::plain(3, Placement::Contract, rand_form(&mut rng, 5, 3)),
                        ConnectionTerm::plain(2, Placement::CliffordLeft, rand_form(&mut rng, 5, 2)),
                    ],
                );
                let a = conn.a_matrices(&rep);
                let tor = torsion(&rep, &pairing, &a);
                let c = conj.c_mat();
                for mu in 0..rep.dim() {
                    for nu in 0..rep.dim() {
                        assert_eq!(tor.t[mu][nu], tor.t[nu][mu].neg());
                        let ct = c.matmul(&tor.t[mu][nu]);
                        assert_eq!(ct.transpose(), ct.scale(&Cx::int(conj.delta1)));
                    }
                }
                // A = 0 has zero torsion
                let zero: Vec<Mat<Cx>> =
                    (0..rep.dim()).map(|_| Mat::zeros(rep.dim_s, rep.dim_s)).collect();
                let t0 = torsion(&rep, &pairing, &zero);
                assert!(t0.t.iter().flatten().all(|m| m.is_zero()));
            }
        }
    }

    #[test]
    fn killing_connection_torsion_and_admissibility() {
        // need Delta0 Delta1 = -1 for the skew Clifford action
        let rep = GammaRep::build(Signature::new(0, 4)).unwrap();
        let conj = ChargeConjugation::build_all(&rep)
            .into_iter()
            .find(|c| c.delta0 * c.delta1 == -1)
            .unwrap();
        let pairing = Pairing::Simple(&conj);
        for a_val in [Cx::int(1), Cx::int(-2), Cx::ratio(3, 7)] {
            let conn = killing_connection(4, a_val.clone());
            let a = conn.a_matrices(&rep);
            assert!(is_admissible(&rep, &pairing, &a).admissible);
            let tor = torsion(&rep, &pairing, &a);
            for mu in 0..4 {
                for nu in 0..4 {
                    let want = rep
                        .antisym_gamma(&[mu, nu])
                        .scale(&a_val)
                        .scale(&Cx::int(4));
                    assert_eq!(tor.t[mu][nu], want, "T = 4a gamma_mn");
                }
            }
            // admissible connections have T = 2 D-hat gamma
            for mu in 0..4 {
                let hat = hat_d_gamma(&rep, &pairing, &a, mu);
                for nu in 0..4 {
                    assert_eq!(tor.t[mu][nu], hat[nu].scale(&Cx::int(2)));
                }
            }
        }
        // the opposite pairing sign fails with the displayed symmetric part
        let conj_p = ChargeConjugation::build_all(&rep)
            .into_iter()
            .find(|c| c.delta0 * c.delta1 == 1);
        if let Some(conj_p) = conj_p {
            let pairing = Pairing::Simple(&conj_p);
            let conn = killing_connection(4, Cx::int(1));
            let a = conn.a_matrices(&rep);
            let dec = is_admissible(&rep, &pairing, &a);
            assert!(!dec.admissible);
            let (mu, nu, s) = dec.witness.unwrap();
            // unnormalized symmetric part: -2a (1 + D1 D0) g_mn
            let g = Cx::int(-2 * 2 * rep.sig.metric(mu) * if mu == nu { 1 } else { 0 });
            assert_eq!(s, Mat::<Cx>::identity(rep.dim_s).scale(&g), "({mu},{nu})");
        }
    }

    #[test]
    fn compatibility_of_hat_d_with_ad() {
        // D-hat(ad^C_W P) = ad^C_{DW} P + ad^C_W D-hat P on constants
        let rep = GammaRep::build(Signature::new(1, 3)).unwrap();
        let conj = &ChargeConjugation::build_all(&rep)[0];
        let pairing = Pairing::Simple(conj);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        let conn = SpinorConnection::new(
            false,
            alloc::vec![ConnectionTerm::plain(
                3,
                Placement::Contract,
                rand_form(&mut rng, 4, 3)
            )],
        );
        let a = conn.a_matrices(&rep);
        let w = rand_mat(&mut rng, rep.dim_s);
        let p = rand_mat(&mut rng, rep.dim_s);
        for k in 0..rep.dim() {
            let hat = |m: &Mat<Cx>| -> Mat<Cx> {
                a[k].matmul(m).add(&m.matmul(&conj.adjoint(&a[k])))
            };
            let dw = a[k].matmul(&w).sub(&w.matmul(&a[k]));
            let lhs = hat(&ad_c(&pairing, &w, &p));
            let rhs = ad_c(&pairing, &dw, &p).add(&ad_c(&pairing, &w, &hat(&p)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn classifier_matches_brute_force_small() {
        for (t, s) in [(0, 4), (1, 4), (1, 5), (0, 6)] {
            let rep = GammaRep::build(Signature::new(t, s)).unwrap();
            let d = rep.dim();
            for conj in ChargeConjugation::build_all(&rep) {
                let pairing = Pairing::Simple(&conj);
                for degree in 0..=d {
                    for placement in ALL_PLACEMENTS {
                        let predicted = classify_form_term(d, degree, placement, &conj);
                        let brute = brute_term_admissible(
                            &rep, &pairing, degree, placement, false, None, 99,
                        );
                        assert_eq!(
                            predicted.admissible, brute,
                            "sig=({t},{s}) D0={} deg={degree} {placement}",
                            conj.delta0
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn eleven_dim_admissible_degrees() {
        let rep = GammaRep::build(Signature::new(1, 10)).unwrap();
        let conj = &ChargeConjugation::build_all(&rep)[0];
        assert_eq!(conj.delta0 * conj.delta1, -1);
        let adm: Vec<usize> = (0..=11)
            .filter(|&l| classify_form_term(11, l, Placement::CliffordLeft, conj).admissible)
            .collect();
        assert_eq!(adm, alloc::vec![0, 3, 4, 7, 8, 11]);
    }

    #[test]
    fn star_rule_matches_brute_force_small() {
        for (t, s) in [(0, 4), (1, 5), (0, 6)] {
            let rep = GammaRep::build(Signature::new(t, s)).unwrap();
            let d = rep.dim();
            let n = d / 2;
            for conj in ChargeConjugation::build_all(&rep) {
                let pairing = Pairing::Simple(&conj);
                for degree in 0..=d {
                    let predicted = gamma_star_term_rule(n, degree, &conj);
                    let brute = brute_term_admissible(
                        &rep,
                        &pairing,
                        degree,
                        Placement::CliffordLeft,
                        true,
                        None,
                        7,
                    );
                    assert_eq!(predicted, brute, "sig=({t},{s}) deg={degree}");
                }
            }
        }
    }

    #[test]
    fn star_term_equals_dual_plain_term() {
        // F gamma^(l) gamma_m gamma^* = +- (*F) gamma^(2n-l) gamma_m
        let rep = GammaRep::build(Signature::new(0, 6)).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        let d = 6;
        for degree in 0..=d {
            let form = IForm::random(&mut rng, d, degree);
            // Hodge dual on sorted tuples
            let mut dual = alloc::collections::BTreeMap::new();
            for tup in crate::clifford::subsets(d, d - degree) {
                let compl: Vec<usize> = (0..d).filter(|k| !tup.contains(k)).collect();
                let mut seq = compl.clone();
                seq.extend_from_slice(&tup);
                let eps = crate::clifford::permutation_sign(&seq);
                let raised = rep.sig.raise_sign(&compl);
                dual.insert(tup.clone(), eps * raised * form.get(&compl));
            }
            for mu in 0..d {
                let lhs = scan_term_matrix(
                    &rep,
                    degree,
                    Placement::CliffordLeft,
                    true,
                    None,
                    &form,
                    mu,
                );
                let mut rhs: Mat<Gi> = Mat::zeros(rep.dim_s, rep.dim_s);
                for (tup, c) in &dual {
                    if *c == 0 {
                        continue;
                    }
                    let cc = *c * rep.sig.raise_sign(tup);
                    rep.mono_sorted(tup)
                        .mul(rep.gamma(mu))
                        .add_into(&mut rhs, &Gi::new(cc, 0), 0);
                }
                // proportionality with a degree-dependent unit
                let lflat = lhs.flat();
                let rflat = rhs.flat();
                let k = lflat.iter().position(|v| !v.is_zero());
                match k {
                    None => assert!(rhs.is_zero()),
                    Some(k) => {
                        let (a, b) = (lflat[k], rflat[k]);
                        assert!(!b.is_zero(), "dual term vanished unexpectedly");
                        // check cross-multiplication equality entrywise
                        for (x, y) in lflat.iter().zip(rflat.iter()) {
                            assert_eq!(x.mul(&b), y.mul(&a), "deg={degree} mu={mu}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn twisted_table_matches_brute_force() {
        let rep = GammaRep::build(Signature::new(1, 5)).unwrap();
        for conj in ChargeConjugation::build_all(&rep) {
            for i in 0..4 {
                let pairing = Pairing::Twisted(&conj, i);
                for degree in 0..=rep.dim() {
                    for j in 0..4 {
                        let predicted = twisted_term_rule(&conj, degree, i, j);
                        let brute = brute_term_admissible(
                            &rep,
                            &pairing,
                            degree,
                            Placement::CliffordLeft,
                            false,
                            Some(j),
                            31,
                        );
                        assert_eq!(predicted, brute, "deg={degree} i={i} j={j}");
                    }
                }
            }
        }
    }

    #[test]
    fn twisted_table_known_rows() {
        // for either Delta-product sign the odd classes are fixed
        for (d0, d1) in [(1i64, 1i64), (-1, 1)] {
            let rows = twisted_table(d0, d1);
            let find = |i: usize, l: usize| -> &TwistedTableRow {
                rows.iter().find(|r| r.i == i && r.l_mod_4 == l).unwrap()
            };
            assert_eq!(find(0, 1).j, alloc::vec![2]);
            assert_eq!(find(0, 3).j, alloc::vec![0, 1, 3]);
            assert_eq!(find(1, 1).j, alloc::vec![3]);
            assert_eq!(find(1, 3).j, alloc::vec![0, 1, 2]);
            assert_eq!(find(2, 1).j, alloc::vec![1, 2, 3]);
            assert_eq!(find(2, 3).j, alloc::vec![0]);
            assert_eq!(find(3, 1).j, alloc::vec![1]);
            assert_eq!(find(3, 3).j, alloc::vec![0, 2, 3]);
            // even classes depend on the product sign
            let dd = d0 * d1;
            let lminus = (1 - dd).rem_euclid(4) as usize;
            let lplus = (1 + dd).rem_euclid(4) as usize;
            assert_eq!(find(0, lminus).j, alloc::vec![2]);
            assert_eq!(find(0, lplus).j, alloc::vec![0, 1, 3]);
            assert_eq!(find(2, lminus).j, alloc::vec![1, 2, 3]);
            assert_eq!(find(2, lplus).j, alloc::vec![0]);
            // untwisted pairing and twist recover the plain rule
            for l in 0..4usize {
                let plain = l % 4 == 3 || l as i64 % 4 == (1 + dd).rem_euclid(4);
                assert_eq!(find(0, l).j.contains(&0), plain);
            }
        }
    }

    #[test]
    fn supergravity_connection_is_admissible_with_closed_ad() {
        let rep = GammaRep::build(Signature::new(1, 10)).unwrap();
        let conj = &ChargeConjugation::build_all(&rep)[0];
        let pairing = Pairing::Simple(conj);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        let f = rand_form(&mut rng, 11, 4);
        let conn = supergravity_connection(&f);
        let a = conn.a_matrices(&rep);
        assert!(is_admissible(&rep, &pairing, &a).admissible);
        for (mu, nu) in [(0usize, 1usize), (2, 7), (4, 10), (3, 3)] {
            let lhs = ad_c(&pairing, &a[mu], &pairing.gamma(&rep, nu));
            let rhs = supergravity_ad_closed(&rep, &f, mu, nu);
            assert_eq!(lhs, rhs, "({mu},{nu})");
        }
    }

    #[test]
    fn pi_projector_identities_and_kernels() {
        let rep = GammaRep::build(Signature::new(0, 4)).unwrap();
        let dim2 = 2 * rep.dim_s;
        let star = rep.star_dense().unwrap();
        let taus: Vec<Mat<Cx>> = (0..4).map(|j| tau_mono(j).to_mat()).collect();
        let id2 = Mat::<Cx>::identity(dim2);
        let (eps_ik, eps_k) = crate::conjugation::tau_eps_tables();
        for i in 0..4 {
            for j in 0..4 {
                for w in [1i64, -1] {
                    let pi = pi_projector(&rep, i, j, w);
                    // general square and opposite-product formulas
                    let sq = pi.mat.matmul(&pi.mat);
                    let prod = pi.mat.matmul(&pi_projector(&rep, i, j, -w).mat);
                    let titj = taus[i].matmul(&taus[j]);
                    let struct_part = star.kron(&titj).scale(&Cx::int(w));
                    let sq_want = id2
                        .scale(&Cx::ratio(eps_k[i] + eps_k[j], 4))
                        .add(&struct_part.scale(&Cx::ratio(1 + eps_ik[i][j], 4)));
                    let prod_want = id2
                        .scale(&Cx::ratio(eps_k[i] - eps_k[j], 4))
                        .add(&struct_part.scale(&Cx::ratio(eps_ik[i][j] - 1, 4)));
                    assert_eq!(sq, sq_want, "square ({i},{j},{w})");
                    assert_eq!(prod, prod_want, "product ({i},{j},{w})");
                    // kernels
                    let shape = expected_kernel_shape(i, j);
                    assert!(kernel_matches_shape(&rep, &pi, shape), "({i},{j},{w})");
                    match shape {
                        KernelShape::Trivial => assert_eq!(pi.kernel().rows, 0),
                        _ => {
                            assert_eq!(pi.kernel().rows, rep.dim_s);
                            // kernel/image exchange: the opposite sign for
                            // the vanishing products, the same sign for the
                            // (1,2)/(2,3) family
                            let im_w = if i == j || i == 0 || j == 0 { -w } else { w };
                            let im = pi_projector(&rep, i, j, im_w).image();
                            assert_eq!(im.rows, rep.dim_s);
                            for r in 0..im.rows {
                                let v: Vec<Cx> = im.row(r).to_vec();
                                assert!(
                                    pi.mat.apply(&v).iter().all(|c| c.is_zero()),
                                    "ker/im exchange ({i},{j},{w})"
                                );
                            }
                        }
                    }
                }
            }
        }
        // the four compressed identities, with the product signs that
        // actually hold
        for w in [1i64, -1] {
            let p02 = pi_projector(&rep, 0, 2, w);
            assert_eq!(
                p02.mat.matmul(&p02.mat),
                star.kron(&taus[2]).scale(&Cx::ratio(w, 2))
            );
            let p13 = pi_projector(&rep, 1, 3, w);
            assert_eq!(p13.mat.matmul(&p13.mat), id2.scale(&Cx::ratio(1, 2)));
            let p12 = pi_projector(&rep, 1, 2, w);
            assert_eq!(
                p12.mat.matmul(&pi_projector(&rep, 1, 2, -w).mat),
                pi_projector(&rep, 0, 3, -w).mat
            );
            let p23 = pi_projector(&rep, 2, 3, w);
            assert_eq!(
                p23.mat.matmul(&pi_projector(&rep, 2, 3, -w).mat),
                pi_projector(&rep, 0, 1, w).mat.neg()
            );
        }
    }

    #[test]
    fn opposite_projection_factorization() {
        // admissible projected term: D = 2n with n odd needs degree 3 mod 4
        let rep = GammaRep::build(Signature::new(0, 6)).unwrap();
        let conj = ChargeConjugation::build_all(&rep)
            .into_iter()
            .find(|c| {
                // degree 3 must be admissible both plainly and with star
                gamma_star_term_rule(3, 3, c)
            })
            .unwrap();
        let pairing = Pairing::Simple(&conj);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(33);
        let form = rand_form(&mut rng, 6, 3);
        for s in [1i64, -1] {
            let mut term = ConnectionTerm::plain(3, Placement::CliffordLeft, form.clone());
            term.projector = Projector::Chiral(s);
            let conn = SpinorConnection::new(false, alloc::vec![term.clone()]);
            let a = conn.a_matrices(&rep);
            assert!(is_admissible(&rep, &pairing, &a).admissible);
            // A^C = -F gamma_m gamma^(l) Pi^-s
            for mu in 0..6 {
                let mut right = ConnectionTerm::plain(3, Placement::CliffordRight, form.clone());
                right.projector = Projector::Chiral(-s);
                let rconn = SpinorConnection::new(false, alloc::vec![right]);
                assert_eq!(
                    conj.adjoint(&a[mu]),
                    rconn.a_matrix(&rep, mu).neg(),
                    "mu={mu} s={s}"
                );
            }
            // the torsion factors through the opposite projector
            let tor = torsion(&rep, &pairing, &a);
            let opp = chiral_projector(&rep, -s);
            for mu in 0..6 {
                for nu in 0..6 {
                    assert_eq!(tor.t[mu][nu].matmul(&opp), tor.t[mu][nu]);
                }
            }
        }
    }

    #[test]
    fn admissible_on_subsets() {
        let rep = GammaRep::build(Signature::new(0, 4)).unwrap();
        let conj = ChargeConjugation::build_all(&rep)
            .into_iter()
            .find(|c| c.delta0 * c.delta1 == -1)
            .unwrap();
        let pairing = Pairing::Simple(&conj);
        let conn = killing_connection(4, Cx::int(2));
        let a = conn.a_matrices(&rep);
        // fully admissible connection is admissible on any set
        let basis: Vec<Vec<Cx>> = (0..4)
            .map(|k| {
                (0..4)
                    .map(|p| if p == k { Cx::int(1) } else { Cx::int(0) })
                    .collect()
            })
            .collect();
        assert!(is_admissible_on(&rep, &pairing, &a, &basis));
        // zero set is trivially fine even for a bad connection
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(55);
        let bad = SpinorConnection::new(
            false,
            alloc::vec![ConnectionTerm::plain(
                1,
                Placement::CliffordLeft,
                rand_form(&mut rng, 4, 1)
            )],
        );
        let ab = bad.a_matrices(&rep);
        assert!(is_admissible_on(
            &rep,
            &pairing,
            &ab,
            &[alloc::vec![Cx::int(0); 4]]
        ));
    }
}
