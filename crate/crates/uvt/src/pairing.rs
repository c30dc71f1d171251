//! The skew-Hopf pairing between the Borel halves, the invariant bilinear
//! form built from it, dual bases, and the character family attached to
//! Cartan monomials.
//!
//! The skew pairing is evaluated self-containedly from its defining axioms
//! (coproduct recursion plus the generator base cases); it is deliberately
//! not imported from the free-algebra form.  The cross-check that the two
//! forms agree up to a per-degree factor lives in the acceptance suite.

use std::sync::Arc;

use crate::algebra::{Algebra, UElement};
use crate::cartan::RootVec;
use crate::freealg::Word;
use crate::linalg;
use crate::scalars::RationalFunction;
use crate::{Error, Result};

/// Paired bases: `e_words` spans the raising side at one degree and
/// `dual_negatives` is the lowering-side list with identity Gram matrix
/// against it.
#[derive(Clone, Debug)]
pub struct DualBasisPair {
    pub degree: RootVec,
    pub e_words: Vec<Word>,
    pub dual_negatives: Vec<UElement>,
}

impl Algebra {
    /// `(K'_mu, K_nu) = v^(mu.nu) t^(<nu,mu> - <mu,nu>)`.
    pub fn kprime_k_pair(&self, mu: &RootVec, nu: &RootVec) -> RationalFunction {
        let d = self.datum();
        RationalFunction::vt_pow(d.dot(mu, nu), d.antisym(nu, mu))
    }

    /// `1 / (v_i^-1 - v_i)`, the generator base case of the skew pairing.
    fn skew_gen_pair(&self, i: usize) -> RationalFunction {
        let di = self.datum().d(i);
        RationalFunction::vt_pow(-di, 0)
            .sub_ref(&RationalFunction::vt_pow(di, 0))
            .inv()
            .expect("v^-d - v^d is nonzero")
    }

    /// The skew pairing on raw words: `(F_w, E_u)` with no Cartan factors,
    /// by peeling the last raising letter through the coproduct axioms.
    ///
    /// The printed axiom pair is only compatible with the conjugation
    /// relations when the pairing of tensors crosses its slots,
    /// `(a (x) b, c (x) d) = (a, d)(b, c)`; the recursion below is the
    /// crossed evaluation.  Each peeled letter leaves a `K'` factor that
    /// migrates past the remaining lowering letters, which is where the
    /// suffix twist comes from.
    pub(crate) fn skew_words(&self, w: &Word, u: &Word) -> RationalFunction {
        if w.is_empty() && u.is_empty() {
            return RationalFunction::one();
        }
        let rank = self.rank();
        if w.degree(rank) != u.degree(rank) {
            return RationalFunction::zero();
        }
        let key = (w.clone(), u.clone());
        if let Some(hit) = self.skew_cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let d = self.datum();
        let j = *u.0.last().unwrap() as usize;
        let u_rest = Word(u.0[..u.len() - 1].to_vec());
        let alpha_j = RootVec::simple(rank, j);
        let mut sum = RationalFunction::zero();
        for (k, &letter) in w.0.iter().enumerate() {
            if letter as usize != j {
                continue;
            }
            // suffix degree: letters strictly after position k
            let suffix = Word(w.0[k + 1..].to_vec()).degree(rank);
            let tw = RationalFunction::vt_pow(
                d.dot(&alpha_j, &suffix),
                d.antisym(&alpha_j, &suffix),
            );
            let mut w_rest = w.0.clone();
            w_rest.remove(k);
            sum = sum.add_ref(
                &tw.mul_ref(&self.skew_gen_pair(j))
                    .mul_ref(&self.skew_words(&Word(w_rest), &u_rest)),
            );
        }
        self.skew_cache.lock().unwrap().insert(key, sum.clone());
        sum
    }

    /// The skew-Hopf pairing `U^<= x U^>= -> Q(v,t)`.  The left argument may
    /// carry `K'` factors only, the right argument `K` factors only.
    pub fn skew_pair(&self, x: &UElement, y: &UElement) -> Result<RationalFunction> {
        let rank = self.rank();
        let mut out = RationalFunction::zero();
        for (kx, cx) in x.terms() {
            if !kx.e_word.is_empty() || kx.k_exp.iter().any(|&n| n != 0) {
                return Err(Error::Domain(
                    "left slot of the skew pairing must lie in the lower Borel".into(),
                ));
            }
            let mu = RootVec(kx.kp_exp.clone());
            for (ky, cy) in y.terms() {
                if !ky.f_word.is_empty() || ky.kp_exp.iter().any(|&n| n != 0) {
                    return Err(Error::Domain(
                        "right slot of the skew pairing must lie in the upper Borel".into(),
                    ));
                }
                let nu = RootVec(ky.k_exp.clone());
                let udeg = ky.e_word.degree(rank);
                // every peeled raising letter deposits one K' factor next to
                // K'_mu before the Cartan base case applies
                let base = self.kprime_k_pair(&mu.add(&udeg), &nu);
                out = out.add_ref(
                    &cx.mul_ref(cy)
                        .mul_ref(&base)
                        .mul_ref(&self.skew_words(&kx.f_word, &ky.e_word)),
                );
            }
        }
        Ok(out)
    }

    /// The character `chi_{eta,phi}(eta1, phi1) = (K'_eta, K_phi1)(K'_eta1, K_phi)`.
    pub fn chi(
        &self,
        eta: &RootVec,
        phi: &RootVec,
        eta1: &RootVec,
        phi1: &RootVec,
    ) -> RationalFunction {
        self.kprime_k_pair(eta, phi1)
            .mul_ref(&self.kprime_k_pair(eta1, phi))
    }

    /// The invariant form on the whole algebra, block by triangular block.
    pub fn ad_form(&self, u1: &UElement, u2: &UElement) -> RationalFunction {
        let rank = self.rank();
        let mut out = RationalFunction::zero();
        for (k1, c1) in u1.terms() {
            let nu = k1.f_word.degree(rank);
            let mu = k1.e_word.degree(rank);
            // K_a K'_b = K'_-nu K'_(b+nu) K_a
            let eta = RootVec(k1.kp_exp.clone()).add(&nu);
            let phi = RootVec(k1.k_exp.clone());
            for (k2, c2) in u2.terms() {
                let nu1 = k2.f_word.degree(rank);
                let mu1 = k2.e_word.degree(rank);
                // blocks pair to zero unless nu = mu1 and mu = nu1
                if nu != mu1 || mu != nu1 {
                    continue;
                }
                let eta1 = RootVec(k2.kp_exp.clone()).add(&nu1);
                let phi1 = RootVec(k2.k_exp.clone());
                let val = self
                    .skew_words(&k1.f_word, &k2.e_word)
                    .mul_ref(&self.skew_words(&k2.f_word, &k1.e_word))
                    .mul_ref(&self.chi(&eta, &phi, &eta1, &phi1))
                    .mul_ref(&RationalFunction::vt_pow(self.two_rho_dot(&nu), 0));
                out = out.add_ref(&c1.mul_ref(c2).mul_ref(&val));
            }
        }
        out
    }

    /// Dual bases at one degree: the raising basis words against the
    /// lowering combinations with identity Gram matrix.
    pub fn dual_basis(&self, nu: &RootVec) -> Result<Arc<DualBasisPair>> {
        if let Some(hit) = self.dual_cache.lock().unwrap().get(&nu.0) {
            return Ok(hit.clone());
        }
        let gb = self.free().graded_basis(nu);
        let e_words = gb.basis_words();
        // lowering-side spanning words: reversals of the raising basis
        let f_words: Vec<Word> = e_words.iter().map(|w| w.reversed()).collect();
        let n = e_words.len();
        let mut gram = linalg::zeros(n, n);
        for (i, fw) in f_words.iter().enumerate() {
            for (j, ew) in e_words.iter().enumerate() {
                gram[i][j] = self.skew_words(fw, ew);
            }
        }
        let inv = linalg::inverse(&gram)
            .ok_or_else(|| Error::DegeneratePairing(format!("{:?}", nu.0)))?;
        let dual_negatives: Vec<UElement> = (0..n)
            .map(|i| {
                let mut acc = UElement::zero();
                for (k, fw) in f_words.iter().enumerate() {
                    let part = self.f_word(fw).scale(&inv[i][k]);
                    acc = acc.add(&part);
                }
                acc
            })
            .collect();
        let pair = Arc::new(DualBasisPair {
            degree: nu.clone(),
            e_words,
            dual_negatives,
        });
        Ok(self
            .dual_cache
            .lock()
            .unwrap()
            .entry(nu.0.clone())
            .or_insert(pair)
            .clone())
    }
}
