//! Charge conjugations: spin-invariant bilinear pairings on spinor space.
//!
//! A charge conjugation is an invertible `C` intertwining the representation
//! with its transpose, `C gamma_m C^-1 = sigma gamma_m^T` for a fixed sign
//! `sigma`. Both sign candidates are constructed as products of generators
//! and tested; in odd dimension only one survives. The symmetry constants
//! `Delta_k` (transpose symmetry of `C gamma_{m1..mk}`) are measured, not
//! assumed, and satisfy `Delta_k = -Delta_{k-2}` together with the closed
//! formula `Delta_k = (-)^(k(k-1)/2) Delta_0^(k+1) Delta_1^k`.
//!
//! The charge adjoint is `Phi^C = C^-1 Phi^T C`, characterized by
//! `C(Phi^C eta, xi) = C(eta, Phi xi)`; `gamma^(k)` lies in its
//! `Delta_0 Delta_k` eigenspace.

use alloc::vec::Vec;
use core::fmt;

use crate::clifford::{pauli_set, GammaRep};
use crate::exact::{Cx, Scalar};
use crate::mat::{Mat, Mono};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConjError {
    /// The requested `Delta_0` is not realizable; carries the realizable
    /// choices.
    Delta0NotRealizable { requested: i64, realizable: Vec<i64> },
}

impl fmt::Display for ConjError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConjError::Delta0NotRealizable {
                requested,
                realizable,
            } => write!(
                f,
                "no charge conjugation with Delta_0 = {requested}; realizable: {realizable:?}"
            ),
        }
    }
}

/// An invertible bilinear pairing `C(phi, psi) = phi^T C psi` together with
/// its measured symmetry data.
#[derive(Clone)]
pub struct ChargeConjugation {
    pub dim_s: usize,
    /// Intertwiner sign: `C gamma C^-1 = sign * gamma^T`.
    pub sign: i64,
    pub delta0: i64,
    pub delta1: i64,
    c: Mono,
    c_inv: Mono,
}

fn mono_transpose_sym(m: &Mono) -> Option<i64> {
    let t = m.transpose();
    if t == *m {
        Some(1)
    } else if t == m.phase(2) {
        Some(-1)
    } else {
        None
    }
}

impl ChargeConjugation {
    /// Build every realizable charge conjugation for the representation
    /// (two in even dimension, one in odd).
    pub fn build_all(rep: &GammaRep) -> Vec<ChargeConjugation> {
        let d = rep.dim();
        let n2 = 2 * (d / 2);
        let mut cands: Vec<Mono> = Vec::new();
        let even_prod = {
            let mut m = Mono::identity(rep.dim_s);
            for mu in (0..n2).step_by(2) {
                m = m.mul(rep.gamma(mu));
            }
            m
        };
        let odd_prod = {
            let mut m = Mono::identity(rep.dim_s);
            for mu in (1..n2).step_by(2) {
                m = m.mul(rep.gamma(mu));
            }
            m
        };
        cands.push(even_prod);
        if d > 1 {
            cands.push(odd_prod);
        }

        let mut out = Vec::new();
        'cand: for c in cands {
            // normalize the global phase: first nonzero entry (row-major) = 1
            let first_col = (0..rep.dim_s)
                .min_by_key(|&j| c.row[j] * rep.dim_s + j)
                .unwrap();
            let c = c.phase((4 - c.ph[first_col] % 4) % 4);
            let c_inv = c.inverse();

            // measure the intertwiner sign, requiring consistency
            let mut sign = 0i64;
            for mu in 0..d {
                let m = c.mul(rep.gamma(mu)).mul(&c_inv);
                let gt = rep.gamma(mu).transpose();
                let s = if m == gt {
                    1
                } else if m == gt.phase(2) {
                    -1
                } else {
                    continue 'cand;
                };
                if sign == 0 {
                    sign = s;
                } else if sign != s {
                    continue 'cand;
                }
            }

            let delta0 = mono_transpose_sym(&c).expect("candidate C not (anti)symmetric");
            let delta1 = mono_transpose_sym(&c.mul(rep.gamma(0)))
                .expect("C gamma_0 not (anti)symmetric");
            out.push(ChargeConjugation {
                dim_s: rep.dim_s,
                sign,
                delta0,
                delta1,
                c,
                c_inv,
            });
        }
        out
    }

    /// Build the conjugation with the requested `Delta_0`. If both
    /// intertwiners share it, the one with `Delta_1 = +1` is preferred.
    pub fn build(rep: &GammaRep, delta0: i64) -> Result<ChargeConjugation, ConjError> {
        let all = Self::build_all(rep);
        let mut matches: Vec<ChargeConjugation> = all
            .iter()
            .filter(|c| c.delta0 == delta0)
            .cloned()
            .collect();
        if matches.is_empty() {
            return Err(ConjError::Delta0NotRealizable {
                requested: delta0,
                realizable: all.iter().map(|c| c.delta0).collect(),
            });
        }
        matches.sort_by_key(|c| -c.delta1);
        Ok(matches.remove(0))
    }

    pub fn c_mono(&self) -> &Mono {
        &self.c
    }

    pub fn c_mat(&self) -> Mat<Cx> {
        self.c.to_mat()
    }

    /// `C(phi, psi) = phi^T C psi`.
    pub fn pair(&self, phi: &[Cx], psi: &[Cx]) -> Cx {
        let cpsi = self.c.apply(psi);
        let mut acc = Cx::int(0);
        for (a, b) in phi.iter().zip(&cpsi) {
            acc = acc.add(&a.mul(b));
        }
        acc
    }

    /// Charge adjoint `Phi^C = C^-1 Phi^T C`.
    pub fn adjoint<T: Scalar>(&self, phi: &Mat<T>) -> Mat<T> {
        assert_eq!(phi.rows, self.dim_s, "dimension mismatch");
        self.c_inv.sandwich(&phi.transpose())
    }

    /// Adjoint on a doubled bundle `S + S` with twist `tau_j` in the pairing.
    pub fn adjoint_doubled<T: Scalar>(&self, twist: usize, phi: &Mat<T>) -> Mat<T> {
        let c2 = self.doubled_c(twist);
        assert_eq!(phi.rows, c2.dim, "dimension mismatch");
        c2.inverse().sandwich(&phi.transpose())
    }

    /// `C tensor tau_j` as a monomial matrix on `S + S`.
    pub fn doubled_c(&self, twist: usize) -> Mono {
        self.c.kron(&tau_mono(twist))
    }

    /// Measured transpose symmetry of `C gamma_{m1..mk}` on the
    /// representative tuple `(0..k)`.
    pub fn delta_k(&self, rep: &GammaRep, k: usize) -> i64 {
        assert!(k <= rep.dim());
        let tuple: Vec<usize> = (0..k).collect();
        self.delta_on_tuple(rep, &tuple)
    }

    /// Measured transpose symmetry of `C gamma_T` for one index tuple.
    pub fn delta_on_tuple(&self, rep: &GammaRep, tuple: &[usize]) -> i64 {
        let m = self.c.mul(&rep.mono_sorted(tuple));
        mono_transpose_sym(&m).expect("C gamma_T not (anti)symmetric")
    }

    /// Closed formula `(-)^(k(k-1)/2) Delta_0^(k+1) Delta_1^k`.
    pub fn delta_formula(&self, k: usize) -> i64 {
        let tri = if (k * (k.max(1) - 1) / 2) % 2 == 0 { 1 } else { -1 };
        let d0 = if (k + 1) % 2 == 0 { 1 } else { self.delta0 };
        let d1 = if k % 2 == 0 { 1 } else { self.delta1 };
        tri * d0 * d1
    }

    /// Eigenvalue of `gamma^(k)` under the charge adjoint: `Delta_0 Delta_k`.
    pub fn adjoint_eigenvalue(&self, k: usize) -> i64 {
        self.delta0 * self.delta_formula(k)
    }

    /// Degrees `k` with `Delta_k Delta_0 = -1`: the span in which the
    /// difference tensor must take values for `C` to stay parallel.
    pub fn parallel_span(&self, d: usize) -> Vec<usize> {
        (0..=d)
            .filter(|&k| self.adjoint_eigenvalue(k) == -1)
            .collect()
    }

    /// Whether `C` pairs opposite `gamma^*` eigenspaces (chiral) or equal
    /// ones (non-chiral). Even dimension only; measured directly.
    pub fn chirality_pairing(&self, rep: &GammaRep) -> Chirality {
        let star = rep.star_dense().expect("chirality pairing needs even D");
        let id = Mat::<Cx>::identity(rep.dim_s);
        let proj =
            |sgn: i64| id.add(&star.scale(&Cx::int(sgn))).scale(&Cx::ratio(1, 2));
        let c = self.c_mat();
        let pp = proj(1).transpose().matmul(&c).matmul(&proj(1));
        let pm = proj(1).transpose().matmul(&c).matmul(&proj(-1));
        match (pp.is_zero(), pm.is_zero()) {
            (true, false) => Chirality::Chiral,
            (false, true) => Chirality::NonChiral,
            other => panic!("pairing is neither chiral nor non-chiral: {other:?}"),
        }
    }

    /// Per-degree symmetry plus the pairing chirality (even dimension).
    pub fn symmetry_chirality_table(&self, rep: &GammaRep) -> SymmetryChiralityTable {
        SymmetryChiralityTable {
            delta: (0..=rep.dim()).map(|k| self.delta_k(rep, k)).collect(),
            chirality: self.chirality_pairing(rep),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Chirality {
    /// `C : S^+ x S^- -> scalars`.
    Chiral,
    /// `C : S^+ x S^+ -> scalars`.
    NonChiral,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryChiralityTable {
    pub delta: Vec<i64>,
    pub chirality: Chirality,
}

/// The modified Pauli matrices as monomial matrices.
pub fn tau_mono(j: usize) -> Mono {
    match j {
        0 => Mono::identity(2),
        1 => Mono {
            dim: 2,
            row: alloc::vec![1, 0],
            ph: alloc::vec![0, 0],
        },
        2 => Mono {
            dim: 2,
            row: alloc::vec![1, 0],
            ph: alloc::vec![0, 2],
        },
        3 => Mono {
            dim: 2,
            row: alloc::vec![0, 1],
            ph: alloc::vec![0, 2],
        },
        _ => panic!("tau index out of range"),
    }
}

/// Split of the antisymmetrized gamma basis by the charge-adjoint
/// eigenvalue.
#[derive(Clone, Debug, PartialEq)]
pub struct AdjointSplit {
    pub plus_degrees: Vec<usize>,
    pub minus_degrees: Vec<usize>,
}

pub fn adjoint_split(conj: &ChargeConjugation, d: usize) -> AdjointSplit {
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for k in 0..=d {
        if conj.adjoint_eigenvalue(k) == 1 {
            plus.push(k);
        } else {
            minus.push(k);
        }
    }
    AdjointSplit {
        plus_degrees: plus,
        minus_degrees: minus,
    }
}

/// Transpose symmetry of the degree-one projection of the twisted pairing
/// `C tensor tau_i`, measured on `gamma_m tensor Id`.
pub fn twisted_degree_one_symmetry(
    rep: &GammaRep,
    conj: &ChargeConjugation,
    twist: usize,
) -> i64 {
    let c2 = conj.doubled_c(twist);
    let g2 = rep.gamma(0).kron(&Mono::identity(2));
    mono_transpose_sym(&c2.mul(&g2)).expect("twisted pairing not (anti)symmetric")
}

/// The commutation and transpose sign tables of the modified Pauli matrices.
pub fn tau_eps_tables() -> ([[i64; 4]; 4], [i64; 4]) {
    let p = pauli_set();
    (p.eps_ik, p.eps_k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Signature;
    use rand::{Rng, SeedableRng};

    fn reps_upto(dmax: usize) -> Vec<GammaRep> {
        let mut v = Vec::new();
        for d in 1..=dmax {
            for t in 0..=1.min(d) {
                v.push(GammaRep::build(Signature::new(t, d - t)).unwrap());
            }
        }
        v
    }

    #[test]
    fn invariants_all_signatures() {
        for rep in reps_upto(7) {
            let all = ChargeConjugation::build_all(&rep);
            assert!(!all.is_empty(), "no conjugation for {}", rep.sig);
            for conj in &all {
                let c = conj.c_mat();
                assert_eq!(c.transpose(), c.scale(&Cx::int(conj.delta0)));
                for mu in 0..rep.dim() {
                    let cg = c.matmul(rep.gamma_dense(mu));
                    assert_eq!(cg.transpose(), cg.scale(&Cx::int(conj.delta1)));
                }
                for k in 0..=rep.dim() {
                    let dk = conj.delta_k(&rep, k);
                    assert_eq!(dk, conj.delta_formula(k), "D={} k={k}", rep.dim());
                    if k >= 2 {
                        assert_eq!(dk, -conj.delta_k(&rep, k - 2));
                    }
                }
            }
        }
    }

    #[test]
    fn delta_same_on_every_tuple() {
        for rep in reps_upto(6) {
            for conj in ChargeConjugation::build_all(&rep) {
                for k in 0..=rep.dim() {
                    let want = conj.delta_k(&rep, k);
                    for tup in rep.tuples(k) {
                        assert_eq!(conj.delta_on_tuple(&rep, &tup), want);
                    }
                }
            }
        }
    }

    #[test]
    fn eleven_dim_split_matches_supergravity_form() {
        let rep = GammaRep::build(Signature::new(1, 10)).unwrap();
        let all = ChargeConjugation::build_all(&rep);
        assert_eq!(all.len(), 1, "odd dimension has a single intertwiner");
        let conj = &all[0];
        assert_eq!(conj.delta1, 1);
        assert_eq!(conj.delta0, -1);
        let split = adjoint_split(conj, 11);
        assert_eq!(split.minus_degrees, alloc::vec![1, 2, 5, 6, 9, 10]);
        assert_eq!(split.plus_degrees, alloc::vec![0, 3, 4, 7, 8, 11]);
    }

    #[test]
    fn ten_dim_both_choices_have_delta1_plus() {
        let rep = GammaRep::build(Signature::new(1, 9)).unwrap();
        let all = ChargeConjugation::build_all(&rep);
        assert_eq!(all.len(), 2);
        let mut d0: Vec<i64> = all.iter().map(|c| c.delta0).collect();
        d0.sort();
        assert_eq!(d0, alloc::vec![-1, 1]);
        assert!(all.iter().all(|c| c.delta1 == 1));
    }

    #[test]
    fn unavailable_delta0_reports_realizable() {
        // D = 8 Euclidean: both intertwiners are symmetric
        let rep = GammaRep::build(Signature::new(0, 8)).unwrap();
        match ChargeConjugation::build(&rep, -1) {
            Err(ConjError::Delta0NotRealizable { realizable, .. }) => {
                assert!(realizable.iter().all(|&d| d == 1));
            }
            other => panic!("expected unavailability, got {:?}", other.map(|c| c.delta0)),
        }
        let conj = ChargeConjugation::build(&rep, 1).unwrap();
        assert_eq!(conj.delta1, 1, "preference picks Delta_1 = +1");
    }

    fn rand_mat(rng: &mut impl Rng, n: usize) -> Mat<Cx> {
        Mat::from_fn(n, n, |_, _| {
            Cx::new(
                num_rational::BigRational::from_integer(rng.gen_range(-3i64..=3).into()),
                num_rational::BigRational::from_integer(rng.gen_range(-3i64..=3).into()),
            )
        })
    }

    #[test]
    fn adjoint_is_involutive_antihomomorphism() {
        let rep = GammaRep::build(Signature::new(1, 4)).unwrap();
        let conj = &ChargeConjugation::build_all(&rep)[0];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let a = rand_mat(&mut rng, rep.dim_s);
        let b = rand_mat(&mut rng, rep.dim_s);
        assert_eq!(conj.adjoint(&conj.adjoint(&a)), a);
        assert_eq!(
            conj.adjoint(&a.matmul(&b)),
            conj.adjoint(&b).matmul(&conj.adjoint(&a))
        );
        let id = Mat::<Cx>::identity(rep.dim_s);
        assert_eq!(conj.adjoint(&id), id);
        // defining property C(Phi^C eta, xi) = C(eta, Phi xi)
        let phi: Vec<Cx> = (0..rep.dim_s).map(|k| Cx::int(k as i64 + 1)).collect();
        let psi: Vec<Cx> = (0..rep.dim_s).map(|k| Cx::int(2 - k as i64)).collect();
        let lhs = conj.pair(&conj.adjoint(&a).apply(&phi), &psi);
        let rhs = conj.pair(&phi, &a.apply(&psi));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn gamma_adjoint_eigenvalues() {
        for rep in reps_upto(6) {
            for conj in ChargeConjugation::build_all(&rep) {
                for k in 0..=rep.dim() {
                    let want = conj.adjoint_eigenvalue(k);
                    for tup in rep.tuples(k).into_iter().take(4) {
                        let g = rep.antisym_gamma(&tup);
                        assert_eq!(conj.adjoint(&g), g.scale(&Cx::int(want)));
                    }
                }
            }
        }
    }

    #[test]
    fn parallel_span_pattern() {
        let rep = GammaRep::build(Signature::new(1, 10)).unwrap();
        let conj = &ChargeConjugation::build_all(&rep)[0];
        let span = conj.parallel_span(11);
        assert_eq!(span, alloc::vec![1, 2, 5, 6, 9, 10]);
        // closed form {4m+2, 4m - D0*D1} intersected with 0..=D
        let dd = conj.delta0 * conj.delta1;
        let expect: Vec<usize> = (0..=11usize)
            .filter(|&k| {
                (k as i64).rem_euclid(4) == 2 || (k as i64).rem_euclid(4) == (-dd).rem_euclid(4)
            })
            .collect();
        assert_eq!(span, expect);
        assert!(span.contains(&2), "degree 2 always present");
        // the degree-3 part of the 3-form + 5-form difference tensor falls
        // outside the span, so that connection does not keep C parallel
        assert!(!span.contains(&3));
    }

    #[test]
    fn chirality_table_riemannian() {
        // D mod 8 = 0: Delta_{2m} = (-)^m, non-chiral
        let rep8 = GammaRep::build(Signature::new(0, 8)).unwrap();
        for conj in ChargeConjugation::build_all(&rep8) {
            let t = conj.symmetry_chirality_table(&rep8);
            for m in 0..=4 {
                let want = if m % 2 == 0 { 1 } else { -1 };
                assert_eq!(t.delta[2 * m], want);
            }
            assert_eq!(t.chirality, Chirality::NonChiral);
        }
        // D mod 8 = 6: chiral
        let rep6 = GammaRep::build(Signature::new(0, 6)).unwrap();
        for conj in ChargeConjugation::build_all(&rep6) {
            assert_eq!(conj.chirality_pairing(&rep6), Chirality::Chiral);
        }
        // D mod 8 = 4: Delta_{2m} = -(-)^m, non-chiral, Delta_n = +1
        let rep4 = GammaRep::build(Signature::new(0, 4)).unwrap();
        for conj in ChargeConjugation::build_all(&rep4) {
            let t = conj.symmetry_chirality_table(&rep4);
            for m in 0..=2 {
                let want = if m % 2 == 0 { -1 } else { 1 };
                assert_eq!(t.delta[2 * m], want);
            }
            assert_eq!(t.chirality, Chirality::NonChiral);
            assert_eq!(t.delta[2], 1);
        }
    }

    #[test]
    fn twist_flips_degree_one_symmetry_by_eps() {
        let rep = GammaRep::build(Signature::new(1, 9)).unwrap();
        let (_, eps_k) = tau_eps_tables();
        for conj in ChargeConjugation::build_all(&rep) {
            for j in 0..4 {
                let sym = twisted_degree_one_symmetry(&rep, &conj, j);
                assert_eq!(sym, conj.delta1 * eps_k[j], "tau_{j}");
            }
            assert_eq!(
                twisted_degree_one_symmetry(&rep, &conj, 2),
                -conj.delta1,
                "tau_2 flips the bracket symmetry"
            );
        }
    }
}
