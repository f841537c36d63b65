//! Gamma-matrix representations and their algebraic identities.
//!
//! Conventions: the metric is diagonal in the orthonormal frame with the `t`
//! timelike directions first (`g_00 = .. = -1`) and Clifford multiplication
//! obeys `XY + YX = -2 g(X,Y)`, so timelike generators square to `+Id` and
//! spacelike ones to `-Id`. Representations are built from iterated tensor
//! products of 2x2 blocks with entries in `{0, +-1, +-i}`, which keeps every
//! generator (and every product of generators) a monomial matrix and all
//! identities exactly checkable.
//!
//! `gamma_{m1..mk}` always denotes the antisymmetrized product with weight
//! `1/k!`, so for two indices it is the half-commutator.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::exact::{Cx, Scalar};
use crate::mat::{Mat, Mono};

/// Metric signature `(t, s)`: `t` timelike directions (listed first), `s`
/// spacelike, total dimension `D = t + s`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Signature {
    pub t: usize,
    pub s: usize,
}

impl Signature {
    pub fn new(t: usize, s: usize) -> Self {
        Signature { t, s }
    }

    pub fn dim(&self) -> usize {
        self.t + self.s
    }

    /// Spinor space dimension `2^(D/2)` (floor).
    pub fn dim_s(&self) -> usize {
        1 << (self.dim() / 2)
    }

    /// `g_{mm}` in the orthonormal frame: `-1` timelike, `+1` spacelike.
    pub fn metric(&self, mu: usize) -> i64 {
        if mu < self.t {
            -1
        } else {
            1
        }
    }

    /// Sign picked up by raising every index in `idx` (diagonal metric).
    pub fn raise_sign(&self, idx: &[usize]) -> i64 {
        let timelike = idx.iter().filter(|&&m| m < self.t).count();
        if timelike % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(t={},s={})", self.t, self.s)
    }
}

/// A strictly increasing list of frame labels with permutation-sign
/// bookkeeping.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiIndex {
    pub labels: Vec<usize>,
}

impl MultiIndex {
    /// Sort an arbitrary index list; `None` if a label repeats (the
    /// antisymmetrized gamma is then zero).
    pub fn canonicalize(idx: &[usize]) -> Option<(MultiIndex, i64)> {
        let mut v: Vec<usize> = idx.to_vec();
        let mut sign = 1i64;
        // insertion sort, counting inversions
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        for w in v.windows(2) {
            if w[0] == w[1] {
                return None;
            }
        }
        Some((MultiIndex { labels: v }, sign))
    }

    pub fn degree(&self) -> usize {
        self.labels.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliffordError {
    /// Total dimension outside `1..=12`.
    DimensionOutOfRange(usize),
}

impl fmt::Display for CliffordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliffordError::DimensionOutOfRange(d) => {
                write!(f, "total dimension {} outside the supported range 1..=12", d)
            }
        }
    }
}

/// A concrete gamma-matrix representation for a signature.
pub struct GammaRep {
    pub sig: Signature,
    pub dim_s: usize,
    gammas: Vec<Mono>,
    gammas_dense: Vec<Mat<Cx>>,
    /// `gamma^[D]`: ordered product of all raised generators.
    full: Mono,
    /// `gamma^*` for even D, normalized so that it squares to `+Id`.
    star: Option<Mono>,
}

const SIGMA1: ([usize; 2], [u8; 2]) = ([1, 0], [0, 0]); // [[0,1],[1,0]]
const SIGMA2M: ([usize; 2], [u8; 2]) = ([1, 0], [2, 0]); // [[0,1],[-1,0]]
const SIGMA3: ([usize; 2], [u8; 2]) = ([0, 1], [0, 2]); // [[1,0],[0,-1]]

fn two_by_two(spec: ([usize; 2], [u8; 2])) -> Mono {
    Mono {
        dim: 2,
        row: spec.0.to_vec(),
        ph: spec.1.to_vec(),
    }
}

/// Anticommuting base chain for even dimension `2n`:
/// `B_{2j-1} = s3^(j-1) x s1 x 1^(n-j)` squares to `+1`,
/// `B_{2j}   = s3^(j-1) x s2' x 1^(n-j)` squares to `-1`.
fn base_chain(n: usize) -> Vec<Mono> {
    let s1 = two_by_two(SIGMA1);
    let s2 = two_by_two(SIGMA2M);
    let s3 = two_by_two(SIGMA3);
    let mut out = Vec::with_capacity(2 * n);
    for j in 0..n {
        let mut head = Mono::identity(1);
        for _ in 0..j {
            head = head.kron(&s3);
        }
        let mut tail = Mono::identity(1);
        for _ in 0..(n - 1 - j) {
            tail = tail.kron(&Mono::identity(2));
        }
        out.push(head.kron(&s1).kron(&tail));
        out.push(head.kron(&s2).kron(&tail));
    }
    out
}

fn mono_square_sign(m: &Mono) -> i64 {
    match m.mul(m).scalar_phase() {
        Some(0) => 1,
        Some(2) => -1,
        _ => panic!("generator square is not +-Id"),
    }
}

impl GammaRep {
    pub fn build(sig: Signature) -> Result<GammaRep, CliffordError> {
        let d = sig.dim();
        if d == 0 || d > 12 {
            return Err(CliffordError::DimensionOutOfRange(d));
        }
        let n = d / 2;
        let mut raw: Vec<Mono> = if d % 2 == 0 {
            base_chain(n)
        } else if d == 1 {
            vec![Mono::identity(1)]
        } else {
            let mut b = base_chain(n);
            let mut prod = b[0].clone();
            for g in &b[1..] {
                prod = prod.mul(g);
            }
            b.push(prod);
            b
        };

        // scale each generator so its square matches the signature
        let mut gammas = Vec::with_capacity(d);
        for (mu, b) in raw.drain(..).enumerate() {
            let want = if mu < sig.t { 1 } else { -1 };
            let have = mono_square_sign(&b);
            gammas.push(if want == have { b } else { b.phase(1) });
        }

        let dim_s = sig.dim_s();
        let gammas_dense: Vec<Mat<Cx>> = gammas.iter().map(|g| g.to_mat()).collect();

        // gamma^[D] = raised product in frame order
        let mut full = Mono::identity(dim_s);
        for (mu, g) in gammas.iter().enumerate() {
            let raised = if sig.metric(mu) < 0 { g.phase(2) } else { g.clone() };
            full = full.mul(&raised);
        }

        let star = if d % 2 == 0 {
            let sigma_tilde = (sig.s as i64 - sig.t as i64).rem_euclid(4);
            let m = match sigma_tilde {
                0 => full.clone(),
                2 => full.phase(1),
                _ => unreachable!("even D has signature 0 or 2 mod 4"),
            };
            debug_assert_eq!(mono_square_sign(&m), 1);
            Some(m)
        } else {
            None
        };

        Ok(GammaRep {
            sig,
            dim_s,
            gammas,
            gammas_dense,
            full,
            star,
        })
    }

    pub fn dim(&self) -> usize {
        self.sig.dim()
    }

    pub fn gamma(&self, mu: usize) -> &Mono {
        &self.gammas[mu]
    }

    pub fn gamma_dense(&self, mu: usize) -> &Mat<Cx> {
        &self.gammas_dense[mu]
    }

    /// `gamma^[D]`, the ordered product of all raised generators.
    pub fn gamma_full(&self) -> &Mono {
        &self.full
    }

    /// `(gamma^[D])^2 = +-Id`; returns the sign.
    pub fn gamma_full_square(&self) -> i64 {
        mono_square_sign(&self.full)
    }

    /// `gamma^*` (even D only).
    pub fn star(&self) -> Option<&Mono> {
        self.star.as_ref()
    }

    pub fn star_dense(&self) -> Option<Mat<Cx>> {
        self.star.as_ref().map(|m| m.to_mat())
    }

    /// Monomial `gamma_{m1..mk}` for a strictly increasing tuple, where it
    /// equals the plain ordered product.
    pub fn mono_sorted(&self, idx: &[usize]) -> Mono {
        debug_assert!(idx.windows(2).all(|w| w[0] < w[1]));
        let mut m = Mono::identity(self.dim_s);
        for &mu in idx {
            m = m.mul(&self.gammas[mu]);
        }
        m
    }

    /// Antisymmetrized product `gamma_{m1..mk}` for an arbitrary index list.
    /// A repeated label yields the zero matrix.
    pub fn antisym_gamma(&self, idx: &[usize]) -> Mat<Cx> {
        match MultiIndex::canonicalize(idx) {
            None => Mat::zeros(self.dim_s, self.dim_s),
            Some((mi, sign)) => {
                let mono = self.mono_sorted(&mi.labels);
                let mut out = Mat::zeros(self.dim_s, self.dim_s);
                mono.add_into(&mut out, &Cx::int(sign), 0);
                out
            }
        }
    }

    /// `gamma^{m1..mk}` with all indices raised.
    pub fn antisym_gamma_raised(&self, idx: &[usize]) -> Mat<Cx> {
        let s = self.sig.raise_sign(idx);
        self.antisym_gamma(idx).scale(&Cx::int(s))
    }

    /// Full antisymmetrization `(1/k!) sum_s sgn(s) gamma_{s(m1)}..gamma_{s(mk)}`
    /// evaluated literally. Only used as a test oracle; factorially slow.
    pub fn antisym_gamma_literal(&self, idx: &[usize]) -> Mat<Cx> {
        let k = idx.len();
        let mut acc = Mat::zeros(self.dim_s, self.dim_s);
        let mut perm: Vec<usize> = (0..k).collect();
        let mut count = 0i64;
        loop {
            let sign = permutation_sign(&perm);
            let mut m = Mono::identity(self.dim_s);
            for &p in &perm {
                m = m.mul(&self.gammas[idx[p]]);
            }
            m.add_into(&mut acc, &Cx::int(sign), 0);
            count += 1;
            if !next_permutation(&mut perm) {
                break;
            }
        }
        acc.scale(&Cx::ratio(1, count))
    }

    /// Right-hand side of the product-expansion identity for
    /// `gamma_K gamma^L`: the sum over `m` contractions with the stated
    /// combinatorial coefficient, reduced to subsets and matchings.
    pub fn product_expand(&self, k_idx: &[usize], l_idx: &[usize]) -> Mat<Cx> {
        let (kk, ks) = match MultiIndex::canonicalize(k_idx) {
            Some(v) => v,
            None => return Mat::zeros(self.dim_s, self.dim_s),
        };
        let (ll, ls) = match MultiIndex::canonicalize(l_idx) {
            Some(v) => v,
            None => return Mat::zeros(self.dim_s, self.dim_s),
        };
        let k = kk.degree();
        let l = ll.degree();
        let mut acc = Mat::zeros(self.dim_s, self.dim_s);
        let overall = Cx::int(ks * ls);

        for m in 0..=k.min(l) {
            let em = (m as i64) * (m as i64 - 2 * k as i64 - 1) / 2;
            let msign = if em.rem_euclid(2) == 0 { 1 } else { -1 };
            for s_pos in subsets(k, m) {
                let sgn_s = unshuffle_sign(&s_pos);
                for t_pos in subsets(l, m) {
                    let sgn_t = unshuffle_sign(&t_pos);
                    // bijections between the chosen position sets
                    let mut perm: Vec<usize> = (0..m).collect();
                    loop {
                        let sgn_b = permutation_sign(&perm);
                        let matched = (0..m)
                            .all(|j| kk.labels[s_pos[j]] == ll.labels[t_pos[perm[j]]]);
                        if matched {
                            let rest_k: Vec<usize> = (0..k)
                                .filter(|p| !s_pos.contains(p))
                                .map(|p| kk.labels[p])
                                .collect();
                            let rest_l: Vec<usize> = (0..l)
                                .filter(|p| !t_pos.contains(p))
                                .map(|p| ll.labels[p])
                                .collect();
                            let raise = self.sig.raise_sign(&rest_l);
                            let mut combined = rest_k.clone();
                            combined.extend_from_slice(&rest_l);
                            if let Some((ci, cs)) = MultiIndex::canonicalize(&combined) {
                                let mono = self.mono_sorted(&ci.labels);
                                let coeff = Scalar::mul(
                                    &overall,
                                    &Cx::int(msign * sgn_s * sgn_t * sgn_b * raise * cs),
                                );
                                mono.add_into(&mut acc, &coeff, 0);
                            }
                        }
                        if !next_permutation(&mut perm) {
                            break;
                        }
                    }
                }
            }
        }
        acc
    }

    /// Right-hand side of the duality identity expressing `gamma_K` through
    /// the complementary raised product and `gamma^[D]`.
    pub fn duality_map(&self, idx: &[usize]) -> Mat<Cx> {
        let d = self.dim();
        let (kk, ks) = match MultiIndex::canonicalize(idx) {
            Some(v) => v,
            None => return Mat::zeros(self.dim_s, self.dim_s),
        };
        let k = kk.degree();
        let compl: Vec<usize> = (0..d).filter(|m| !kk.labels.contains(m)).collect();

        // epsilon_{K, complement} relative to epsilon_{0..D-1} = +1
        let mut seq = kk.labels.clone();
        seq.extend_from_slice(&compl);
        let eps = permutation_sign(&seq);

        let e1 = (k * (k + 1) / 2) % 2;
        let e2 = (d * (d + 1) / 2) % 2;
        // the (det g) factor: the display holds as printed only for t even
        let e3 = self.sig.t % 2;
        let sign = if (e1 + e2 + e3) % 2 == 0 { 1 } else { -1 };
        let raise = self.sig.raise_sign(&compl);

        let mono = self.mono_sorted(&compl).mul(&self.full);
        let mut out = Mat::zeros(self.dim_s, self.dim_s);
        mono.add_into(&mut out, &Cx::int(ks * eps * sign * raise), 0);
        out
    }

    /// All strictly increasing `k`-tuples of frame labels.
    pub fn tuples(&self, k: usize) -> Vec<Vec<usize>> {
        subsets(self.dim(), k)
    }
}

/// Sign of a sequence of distinct `usize` treated as a permutation of its
/// sorted order.
pub fn permutation_sign(seq: &[usize]) -> i64 {
    let mut inv = 0usize;
    for i in 0..seq.len() {
        for j in (i + 1)..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign of the permutation moving the (sorted) position set `s` to the front
/// of `0..n`, preserving relative order elsewhere.
fn unshuffle_sign(s: &[usize]) -> i64 {
    let mut total = 0usize;
    for (j, &p) in s.iter().enumerate() {
        total += p - j;
    }
    if total % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sorted `m`-subsets of `0..n`, as sorted position vectors.
pub fn subsets(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if m > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..m).collect();
    loop {
        out.push(cur.clone());
        // next combination
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - m {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in (i + 1)..m {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// In-place next lexicographic permutation; `false` when wrapped.
pub fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        perm.sort_unstable();
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

// ---------------------------------------------------------------------------
// Modified Pauli matrices
// ---------------------------------------------------------------------------

/// The four modified Pauli matrices used to twist charge conjugations on
/// doubled bundles, together with their commutation signs `eps_ik`
/// (`tau_i tau_k = eps_ik tau_k tau_i`) and transpose symmetries `eps_k`.
pub struct PauliSet {
    pub tau: [Mat<Cx>; 4],
    pub eps_ik: [[i64; 4]; 4],
    pub eps_k: [i64; 4],
}

/// `tau_0 = Id`, `tau_1 = offdiag(1,1)`, `tau_2 = offdiag(-1,1)` (the
/// antisymmetric one), `tau_3 = diag(1,-1)`.
pub fn pauli_set() -> PauliSet {
    let e = |m: [[i64; 2]; 2]| Mat::from_fn(2, 2, |r, c| Cx::int(m[r][c]));
    let tau = [
        e([[1, 0], [0, 1]]),
        e([[0, 1], [1, 0]]),
        e([[0, -1], [1, 0]]),
        e([[1, 0], [0, -1]]),
    ];
    let mut eps_ik = [[0i64; 4]; 4];
    for i in 0..4 {
        for k in 0..4 {
            let ik = tau[i].matmul(&tau[k]);
            let ki = tau[k].matmul(&tau[i]);
            eps_ik[i][k] = if ik == ki {
                1
            } else {
                assert_eq!(ik, ki.neg());
                -1
            };
        }
    }
    let mut eps_k = [0i64; 4];
    for k in 0..4 {
        let t = tau[k].transpose();
        eps_k[k] = if t == tau[k] {
            1
        } else {
            assert_eq!(t, tau[k].neg());
            -1
        };
    }
    PauliSet { tau, eps_ik, eps_k }
}
