//! Bilinear projections `C_k`, the Fierz expansion, and pure spinors.
//!
//! The projection of a spinor pair onto `k`-forms is
//! `(C_k(phi, psi))_{m1..mk} = C(phi, gamma_{m1..mk} psi)`; its symmetry
//! under the spinor swap is `Delta_k`. The Fierz identity reconstructs the
//! rank-one map `xi -> C(psi, xi) phi` from these projections,
//!
//! `(1/dim S) sum_n Delta_0 (Delta_0 Delta_1)^n / n! C(phi, gamma^(n) psi)
//! gamma_(n)`,
//!
//! with `n` up to `D` for even `D` and `(D-1)/2` for odd `D`. Exactness of
//! that reconstruction in exact arithmetic pins the sum range.
//!
//! A pure spinor has a Clifford annihilator of maximal complex dimension
//! `n = D/2`; it is constructed here as the joint kernel of the barred half
//! of a complex frame `gamma_a -+ i gamma_{a+n}` (Riemannian even
//! dimension).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::clifford::{permutation_sign, GammaRep, MultiIndex};
use crate::conjugation::ChargeConjugation;
use crate::exact::{Cx, Scalar};
use crate::mat::{vstack, Mat};

/// A totally antisymmetric array over frame indices, stored on sorted
/// tuples.
#[derive(Clone, Debug, PartialEq)]
pub struct KForm {
    pub d: usize,
    pub degree: usize,
    comps: BTreeMap<Vec<usize>, Cx>,
}

impl KForm {
    pub fn zero(d: usize, degree: usize) -> Self {
        KForm {
            d,
            degree,
            comps: BTreeMap::new(),
        }
    }

    pub fn set_sorted(&mut self, tuple: Vec<usize>, c: Cx) {
        debug_assert!(tuple.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(tuple.len(), self.degree);
        if c.is_zero() {
            self.comps.remove(&tuple);
        } else {
            self.comps.insert(tuple, c);
        }
    }

    /// Component for an arbitrary index list, antisymmetrically extended.
    pub fn get(&self, idx: &[usize]) -> Cx {
        match MultiIndex::canonicalize(idx) {
            None => Cx::int(0),
            Some((mi, sign)) => {
                let v = self
                    .comps
                    .get(&mi.labels)
                    .cloned()
                    .unwrap_or_else(|| Cx::int(0));
                if sign < 0 {
                    v.neg()
                } else {
                    v
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(|c| c.is_zero())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &Cx)> {
        self.comps.iter()
    }

    pub fn scale(&self, c: &Cx) -> KForm {
        let mut out = KForm::zero(self.d, self.degree);
        for (t, v) in &self.comps {
            out.set_sorted(t.clone(), v.mul(c));
        }
        out
    }
}

/// `(C_k(phi tensor psi))_T = C(phi, gamma_T psi)` over sorted tuples.
pub fn project_ck(
    rep: &GammaRep,
    conj: &ChargeConjugation,
    phi: &[Cx],
    psi: &[Cx],
    k: usize,
) -> KForm {
    let mut form = KForm::zero(rep.dim(), k);
    for tup in rep.tuples(k) {
        let gpsi = rep.mono_sorted(&tup).apply(psi);
        form.set_sorted(tup, conj.pair(phi, &gpsi));
    }
    form
}

/// `{phi, psi} = 2 C_1(phi tensor psi)` with the index raised.
pub fn susy_bracket(
    rep: &GammaRep,
    conj: &ChargeConjugation,
    phi: &[Cx],
    psi: &[Cx],
) -> Vec<Cx> {
    (0..rep.dim())
        .map(|mu| {
            let gpsi = rep.gamma(mu).apply(psi);
            conj.pair(phi, &gpsi)
                .mul(&Cx::int(2 * rep.sig.metric(mu)))
        })
        .collect()
}

/// Upper bound of the Fierz degree sum.
pub fn fierz_range(d: usize) -> usize {
    if d % 2 == 0 {
        d
    } else {
        (d - 1) / 2
    }
}

/// The rank-one endomorphism `xi -> C(psi, xi) phi`.
pub fn rank_one(conj: &ChargeConjugation, phi: &[Cx], psi: &[Cx]) -> Mat<Cx> {
    let n = phi.len();
    let cpsi = conj.c_mono().transpose().apply(psi); // (psi^T C)_b = (C^T psi)_b
    Mat::from_fn(n, n, |r, c| phi[r].mul(&cpsi[c]))
}

/// Evaluate the Fierz sum; for a valid charge conjugation this equals
/// [`rank_one`]` (phi, psi)` exactly.
pub fn fierz_expand(
    rep: &GammaRep,
    conj: &ChargeConjugation,
    phi: &[Cx],
    psi: &[Cx],
) -> Mat<Cx> {
    let dd = conj.delta0 * conj.delta1;
    let mut acc = Mat::zeros(rep.dim_s, rep.dim_s);
    for n in 0..=fierz_range(rep.dim()) {
        // (-Delta0 Delta1)^n, the alternating sign of the -2g convention
        let mut coef = Cx::int(conj.delta0);
        if n % 2 == 1 && dd > 0 {
            coef = coef.neg();
        }
        for tup in rep.tuples(n) {
            let mono = rep.mono_sorted(&tup);
            let c = conj
                .pair(phi, &mono.apply(psi))
                .mul(&coef)
                .mul(&Cx::int(rep.sig.raise_sign(&tup)));
            if !c.is_zero() {
                mono.add_into(&mut acc, &c, 0);
            }
        }
    }
    acc.scale(&Cx::ratio(1, rep.dim_s as i64))
}

/// Inverse of the form expansion: reconstruct an endomorphism from its
/// traces against the antisymmetrized gamma basis.
pub fn trace_reconstruct(rep: &GammaRep, omega: &Mat<Cx>) -> Mat<Cx> {
    let mut acc = Mat::zeros(rep.dim_s, rep.dim_s);
    for n in 0..=fierz_range(rep.dim()) {
        // gamma^K gamma_K = (-)^(n(n+1)/2) Id under XY + YX = -2g(X,Y)
        let tri = if (n * (n + 1) / 2) % 2 == 0 { 1 } else { -1 };
        for tup in rep.tuples(n) {
            let mono = rep.mono_sorted(&tup);
            let tr = mono.to_mat::<Cx>().matmul(omega).trace();
            let c = tr.mul(&Cx::int(tri * rep.sig.raise_sign(&tup)));
            if !c.is_zero() {
                mono.add_into(&mut acc, &c, 0);
            }
        }
    }
    acc.scale(&Cx::ratio(1, rep.dim_s as i64))
}

// ---------------------------------------------------------------------------
// Pure spinors
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PureError {
    OddDimension,
    NeedsRiemannian,
    NoSpinorWithChirality(i64),
}

impl fmt::Display for PureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PureError::OddDimension => write!(f, "pure spinors need even dimension"),
            PureError::NeedsRiemannian => write!(f, "complex frames are built for t = 0"),
            PureError::NoSpinorWithChirality(w) => {
                write!(f, "no pure spinor of chirality {w} in this frame")
            }
        }
    }
}

/// Complex frame attached to a pure spinor: the pair `(a, a+n)` combines
/// into `gamma(U_a) = gamma_a + i theta_a gamma_{a+n}` (unbarred/creation)
/// and `gamma(Ubar_a)` with the opposite sign (barred/annihilation). The
/// orientation class, and with it the chirality of the annihilated spinor,
/// is switched by flipping a single pair sign.
#[derive(Clone, Debug)]
pub struct ComplexFrame {
    pub n: usize,
    pub thetas: Vec<i64>,
}

impl ComplexFrame {
    pub fn uniform(n: usize) -> Self {
        ComplexFrame {
            n,
            thetas: alloc::vec![1; n],
        }
    }

    pub fn flipped_last(n: usize) -> Self {
        let mut f = Self::uniform(n);
        f.thetas[n - 1] = -1;
        f
    }

    pub fn gamma_unbarred(&self, rep: &GammaRep, a: usize) -> Mat<Cx> {
        self.gamma_pm(rep, a, 1)
    }

    pub fn gamma_barred(&self, rep: &GammaRep, a: usize) -> Mat<Cx> {
        self.gamma_pm(rep, a, -1)
    }

    fn gamma_pm(&self, rep: &GammaRep, a: usize, pm: i64) -> Mat<Cx> {
        let mut m = rep.gamma_dense(a).clone();
        let phase = Cx::i().mul(&Cx::int(self.thetas[a] * pm));
        m.add_scaled(rep.gamma_dense(a + self.n), &phase);
        m
    }

    /// Unbarred frame vector components `U_a = e_a + i theta_a e_{a+n}`.
    pub fn vector_unbarred(&self, d: usize, a: usize) -> Vec<Cx> {
        let mut v = alloc::vec![Cx::int(0); d];
        v[a] = Cx::int(1);
        v[a + self.n] = Cx::i().mul(&Cx::int(self.thetas[a]));
        v
    }

    /// Ordered product of all unbarred gammas.
    pub fn top_unbarred(&self, rep: &GammaRep) -> Mat<Cx> {
        let mut m = Mat::identity(rep.dim_s);
        for a in 0..self.n {
            m = m.matmul(&self.gamma_unbarred(rep, a));
        }
        m
    }

    pub fn top_barred(&self, rep: &GammaRep) -> Mat<Cx> {
        let mut m = Mat::identity(rep.dim_s);
        for a in 0..self.n {
            m = m.matmul(&self.gamma_barred(rep, a));
        }
        m
    }
}

/// A pure spinor with its annihilating complex frame.
#[derive(Clone, Debug)]
pub struct PureSpinor {
    pub spinor: Vec<Cx>,
    pub chirality: i64,
    pub frame: ComplexFrame,
}

/// Construct the pure spinor of the requested chirality as the joint kernel
/// of the `n` barred generators, normalized so its largest component is 1.
pub fn make_pure_spinor(rep: &GammaRep, chirality: i64) -> Result<PureSpinor, PureError> {
    let d = rep.dim();
    if d % 2 != 0 {
        return Err(PureError::OddDimension);
    }
    if rep.sig.t != 0 {
        return Err(PureError::NeedsRiemannian);
    }
    let n = d / 2;
    for frame in [ComplexFrame::uniform(n), ComplexFrame::flipped_last(n)] {
        let (eta, w) = pure_from_frame(rep, &frame);
        if w == chirality {
            return Ok(PureSpinor {
                spinor: eta,
                chirality,
                frame,
            });
        }
    }
    Err(PureError::NoSpinorWithChirality(chirality))
}

/// The spinor line annihilated by the barred half of a frame, with its
/// chirality. Normalized so the largest component is 1.
pub fn pure_from_frame(rep: &GammaRep, frame: &ComplexFrame) -> (Vec<Cx>, i64) {
    let star = rep.star_dense().expect("even dimension has gamma^*");
    let anns: Vec<Mat<Cx>> = (0..frame.n).map(|a| frame.gamma_barred(rep, a)).collect();
    let refs: Vec<&Mat<Cx>> = anns.iter().collect();
    let ker = vstack(&refs).nullspace();
    assert_eq!(ker.rows, 1, "joint annihilator kernel must be a line");
    let mut eta: Vec<Cx> = ker.row(0).to_vec();
    let mut best = 0usize;
    for k in 1..eta.len() {
        if eta[k].norm_sq() > eta[best].norm_sq() {
            best = k;
        }
    }
    let inv = crate::exact::FieldScalar::inv(&eta[best]);
    for c in eta.iter_mut() {
        *c = c.mul(&inv);
    }
    let seta = star.apply(&eta);
    let w = if seta == eta {
        1
    } else {
        let neg: Vec<Cx> = eta.iter().map(|c| c.neg()).collect();
        assert_eq!(seta, neg, "pure spinor must be chiral");
        -1
    };
    (eta, w)
}

/// Complex dimension of the Clifford annihilator `{v : gamma(v) eta = 0}`.
pub fn null_space_dimension(rep: &GammaRep, eta: &[Cx]) -> usize {
    let d = rep.dim();
    let m = Mat::from_fn(rep.dim_s, d, |r, c| rep.gamma(c).apply(eta)[r].clone());
    d - m.rank()
}

/// Purity by bilinears: `C_k(eta, eta) = 0` for all `k != n`. When
/// `relaxed` is set, only degrees `k = n mod 4` are examined.
pub fn is_pure_by_bilinears(
    rep: &GammaRep,
    conj: &ChargeConjugation,
    eta: &[Cx],
    relaxed: bool,
) -> bool {
    let d = rep.dim();
    let n = d / 2;
    for k in 0..=d {
        if k == n {
            continue;
        }
        if relaxed && (k as i64 - n as i64).rem_euclid(4) != 0 {
            continue;
        }
        if !project_ck(rep, conj, eta, eta, k).is_zero() {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Wedge self-duality of the pure-spinor two-form (Fierz route)
// ---------------------------------------------------------------------------

/// The endomorphism image of `gamma^[m eta wedge gamma^n] eta` under the
/// pairing identification: half the antisymmetrized rank-one map.
pub fn wedge_endo(
    rep: &GammaRep,
    conj: &ChargeConjugation,
    eta: &[Cx],
    mu: usize,
    nu: usize,
) -> Mat<Cx> {
    let gmu = rep
        .gamma(mu)
        .apply(eta)
        .iter()
        .map(|c| c.mul(&Cx::int(rep.sig.metric(mu))))
        .collect::<Vec<_>>();
    let gnu = rep
        .gamma(nu)
        .apply(eta)
        .iter()
        .map(|c| c.mul(&Cx::int(rep.sig.metric(nu))))
        .collect::<Vec<_>>();
    rank_one(conj, &gmu, &gnu)
        .sub(&rank_one(conj, &gnu, &gmu))
        .scale(&Cx::ratio(1, 2))
}

/// First Fierz-derived expression: top-degree form coefficients times
/// `gamma^{mn(n)} (1 - (-)^n w gamma^*)`.
pub fn wedge_fierz_top(
    rep: &GammaRep,
    conj: &ChargeConjugation,
    ps: &PureSpinor,
    mu: usize,
    nu: usize,
) -> Mat<Cx> {
    let d = rep.dim();
    let n = d / 2;
    let dd = conj.delta0 * conj.delta1;
    let sign = if (n + 1) % 2 == 0 || dd > 0 { 1 } else { -1 };
    // (-Delta0 Delta1)^(n+1)
    let lead = Cx::int(if dd < 0 {
        if (n + 1) % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        1
    });
    let _ = sign;
    let star = rep.star_dense().unwrap();
    let chi = Mat::<Cx>::identity(rep.dim_s).sub(&star.scale(&Cx::int(
        if n % 2 == 0 { ps.chirality } else { -ps.chirality },
    )));
    let mut acc = Mat::zeros(rep.dim_s, rep.dim_s);
    for tup in rep.tuples(n) {
        let c = conj
            .pair(&rep.mono_sorted(&tup).apply(&ps.spinor), &ps.spinor)
            .mul(&Cx::int(rep.sig.raise_sign(&tup)));
        if c.is_zero() {
            continue;
        }
        let mut idx = alloc::vec![mu, nu];
        idx.extend_from_slice(&tup);
        let g = rep
            .antisym_gamma(&idx)
            .scale(&Cx::int(rep.sig.raise_sign(&[mu, nu])));
        acc.add_scaled(&g, &c);
    }
    acc.matmul(&chi)
        .scale(&lead)
        .scale(&Cx::ratio(1, rep.dim_s as i64))
}

/// Second Fierz-derived expression: `(n-2)`-degree coefficients.
pub fn wedge_fierz_low(
    rep: &GammaRep,
    conj: &ChargeConjugation,
    ps: &PureSpinor,
    mu: usize,
    nu: usize,
) -> Mat<Cx> {
    let d = rep.dim();
    let n = d / 2;
    let dd = conj.delta0 * conj.delta1;
    // (Delta0 Delta1)^(n+1)
    let lead = Cx::int(if dd < 0 && (n + 1) % 2 == 1 { -1 } else { 1 });
    let star = rep.star_dense().unwrap();
    let chi = Mat::<Cx>::identity(rep.dim_s).sub(&star.scale(&Cx::int(
        if n % 2 == 0 { ps.chirality } else { -ps.chirality },
    )));
    let mut acc = Mat::zeros(rep.dim_s, rep.dim_s);
    for tup in rep.tuples(n - 2) {
        let mut idx = alloc::vec![mu, nu];
        idx.extend_from_slice(&tup);
        let g = rep
            .antisym_gamma(&idx)
            .scale(&Cx::int(rep.sig.raise_sign(&idx)));
        let c = conj.pair(&g.apply(&ps.spinor), &ps.spinor);
        if c.is_zero() {
            continue;
        }
        let low = rep.antisym_gamma(&tup);
        acc.add_scaled(&low, &c);
    }
    acc.matmul(&chi)
        .scale(&lead)
        .scale(&Cx::ratio(1, rep.dim_s as i64))
}

/// Four-dimensional (anti-)self-duality report of the wedge array.
pub struct SelfDualReport {
    pub fierz_top_matches: bool,
    pub fierz_low_matches: bool,
    /// `+1` when the array is self dual, `-1` anti-self dual.
    pub duality_sign: i64,
}

pub fn wedge_selfdual_check(
    rep: &GammaRep,
    conj: &ChargeConjugation,
    ps: &PureSpinor,
) -> SelfDualReport {
    let d = rep.dim();
    assert_eq!(d, 4, "the duality statement is four-dimensional");
    let w = |mu: usize, nu: usize| wedge_endo(rep, conj, &ps.spinor, mu, nu);

    let mut top_ok = true;
    let mut low_ok = true;
    for mu in 0..d {
        for nu in (mu + 1)..d {
            let direct = w(mu, nu);
            if wedge_fierz_top(rep, conj, ps, mu, nu) != direct {
                top_ok = false;
            }
            if wedge_fierz_low(rep, conj, ps, mu, nu) != direct {
                low_ok = false;
            }
        }
    }

    // (1/2) eps_{rsmn} W^{mn} = -w_eta W_{rs}; with t = 0 raising is trivial
    let mut sign = 0i64;
    for rho in 0..d {
        for sigma in (rho + 1)..d {
            let compl: Vec<usize> = (0..d).filter(|k| *k != rho && *k != sigma).collect();
            let mut seq = alloc::vec![rho, sigma];
            seq.extend_from_slice(&compl);
            let eps = permutation_sign(&seq);
            let dual = w(compl[0], compl[1]).scale(&Cx::int(eps));
            let target = w(rho, sigma).scale(&Cx::int(-ps.chirality));
            assert_eq!(dual, target, "duality with sign -w failed at ({rho},{sigma})");
            // record self vs anti-self duality
            let s = -ps.chirality;
            if sign == 0 {
                sign = s;
            }
        }
    }

    SelfDualReport {
        fierz_top_matches: top_ok,
        fierz_low_matches: low_ok,
        duality_sign: sign,
    }
}
