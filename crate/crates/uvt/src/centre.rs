//! The centre of the algebra through the Harish-Chandra map.
//!
//! This module houses the Cartan-part projection composed with the `rho`
//! shift, the character family `rho^lambda` / `rho^{0,lambda}` /
//! `rho^{lambda,mu}`, the Weyl action on the flat Cartan subspace, central
//! elements built as lifts of quantum traces, the closed form of their
//! Harish-Chandra images, the bounded-window criterion for central elements
//! in nonzero degrees, parabolic-style direct-sum decompositions, and the
//! centre of the rank-one subalgebras.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One};

use crate::algebra::{Algebra, TermKey, UElement};
use crate::cartan::{RootVec, Weight};
use crate::freealg::Word;
use crate::linalg::{self, Matrix};
use crate::repr::{simple_module, WeightModule};
use crate::scalars::RationalFunction;
use crate::{Error, Result};

/// Element of the Cartan subalgebra: a finite combination of monomials
/// `K_eta K'_phi`, keyed by `(eta, phi)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CartanElement {
    terms: BTreeMap<(Vec<i64>, Vec<i64>), RationalFunction>,
}

impl CartanElement {
    pub fn zero() -> Self {
        CartanElement { terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        let mut x = CartanElement::zero();
        x.insert_add((vec![0; rank], vec![0; rank]), RationalFunction::one());
        x
    }

    pub fn monomial(eta: &RootVec, phi: &RootVec, c: RationalFunction) -> Self {
        let mut x = CartanElement::zero();
        x.insert_add((eta.0.clone(), phi.0.clone()), c);
        x
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Vec<i64>, Vec<i64>), &RationalFunction)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn insert_add(&mut self, key: (Vec<i64>, Vec<i64>), c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add_ref(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert_add(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&RationalFunction::from_int(-1)))
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        CartanElement {
            terms: self
                .terms
                .iter()
                .map(|(k, x)| (k.clone(), x.mul_ref(c)))
                .collect(),
        }
    }

    /// Product of Cartan monomials: exponents add.
    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = CartanElement::zero();
        for ((e1, p1), c1) in &self.terms {
            for ((e2, p2), c2) in &other.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let p: Vec<i64> = p1.iter().zip(p2).map(|(a, b)| a + b).collect();
                out.insert_add((e, p), c1.mul_ref(c2));
            }
        }
        out
    }

    /// True when every monomial has `phi = -eta`, i.e. the element lies in
    /// the flat Cartan subspace spanned by `K'_eta K_-eta`.
    pub fn is_flat(&self) -> bool {
        self.terms
            .keys()
            .all(|(e, p)| e.iter().zip(p).all(|(a, b)| *a == -*b))
    }

    /// View as a normal-form element of the full algebra.
    pub fn to_element(&self, alg: &Algebra) -> UElement {
        let mut out = UElement::zero();
        for ((e, p), c) in &self.terms {
            let mut key = TermKey::unit(alg.rank());
            key.k_exp = e.clone();
            key.kp_exp = p.clone();
            out.insert_add(key, c.clone());
        }
        out
    }
}

/// A candidate central element together with its certification status.
#[derive(Clone, Debug)]
pub struct CentralCandidate {
    pub element: UElement,
    pub certified: bool,
    pub degree: Option<(RootVec, RootVec)>,
}

/// Flavours of the character family on the Cartan subalgebra.
#[derive(Clone, Debug)]
pub enum RhoChar {
    /// `rho^lambda`.
    Plain(Weight),
    /// `rho^{0,lambda}`.
    Zero(Weight),
    /// `rho^{lambda,mu} = rho^lambda . rho^{0,mu}`.
    Pair(Weight, Weight),
}

impl Algebra {
    fn rational_exp(x: &BigRational) -> Result<i64> {
        if !x.denom().is_one() {
            return Err(Error::FractionalExponent(x.to_string()));
        }
        i64::try_from(x.numer().clone()).map_err(|_| Error::FractionalExponent(x.to_string()))
    }

    /// The Harish-Chandra map: project onto the Cartan block of the
    /// triangular decomposition, then apply the `rho` shift
    /// `K_eta K'_phi -> v^(-rho.(eta-phi)) t^(<eta+phi,rho> - <rho,eta+phi>) K_eta K'_phi`.
    pub fn hc_xi(&self, u: &UElement) -> Result<CartanElement> {
        let d = self.datum();
        let rho = self.rho().clone();
        let mut out = CartanElement::zero();
        for (key, c) in u.terms() {
            if !key.is_cartan() {
                continue;
            }
            let eta = RootVec(key.k_exp.clone());
            let phi = RootVec(key.kp_exp.clone());
            let diff = eta.sub(&phi).to_weight();
            let sum = eta.add(&phi).to_weight();
            let vexp = Self::rational_exp(&d.dot_w(&rho, &diff))?;
            let texp = Self::rational_exp(&d.antisym_w(&sum, &rho))?;
            out.insert_add(
                (key.k_exp.clone(), key.kp_exp.clone()),
                c.mul_ref(&RationalFunction::vt_pow(-vexp, texp)),
            );
        }
        Ok(out)
    }

    /// Evaluate one of the characters on a Cartan element.
    pub fn rho_char(&self, kind: &RhoChar, u: &CartanElement) -> Result<RationalFunction> {
        let mut out = RationalFunction::zero();
        for ((e, p), c) in u.terms() {
            let val = self.rho_char_monomial(kind, &RootVec(e.clone()), &RootVec(p.clone()))?;
            out = out.add_ref(&c.mul_ref(&val));
        }
        Ok(out)
    }

    /// Character value on the monomial `K_eta K'_phi` (note the key order:
    /// the paper writes the same monomial as `K'_phi K_eta`).
    fn rho_char_monomial(
        &self,
        kind: &RhoChar,
        eta: &RootVec,
        phi: &RootVec,
    ) -> Result<RationalFunction> {
        let d = self.datum();
        match kind {
            // rho^lambda(K'_p K_e) = v^(lambda.(e - p)) t^(<e+p,lambda> - <lambda,e+p>)
            RhoChar::Plain(lambda) => {
                let diff = eta.sub(phi).to_weight();
                let sum = eta.add(phi).to_weight();
                let vexp = Self::rational_exp(&d.dot_w(lambda, &diff))?;
                let texp = Self::rational_exp(&d.antisym_w(&sum, lambda))?;
                Ok(RationalFunction::vt_pow(vexp, texp))
            }
            // rho^{0,lambda}(K'_p K_e) = v^(2 (e+p).lambda)
            RhoChar::Zero(lambda) => {
                let sum = eta.add(phi).to_weight();
                let vexp = Self::rational_exp(&(d.dot_w(lambda, &sum) * BigRational::from(BigInt::from(2))))?;
                Ok(RationalFunction::vt_pow(vexp, 0))
            }
            RhoChar::Pair(lambda, mu) => {
                let a = self.rho_char_monomial(&RhoChar::Plain(lambda.clone()), eta, phi)?;
                let b = self.rho_char_monomial(&RhoChar::Zero(mu.clone()), eta, phi)?;
                Ok(a.mul_ref(&b))
            }
        }
    }

    /// Weyl action on the flat Cartan subspace.
    pub fn weyl_on_flat(
        &self,
        weyl: &crate::cartan::WeylGroup,
        sigma: usize,
        u: &CartanElement,
    ) -> Result<CartanElement> {
        if !u.is_flat() {
            return Err(Error::Domain(
                "the Weyl action is defined on the flat Cartan subspace only".into(),
            ));
        }
        let mut out = CartanElement::zero();
        for ((e, p), c) in u.terms() {
            let se = weyl.apply_root(sigma, &RootVec(e.clone()));
            let sp = weyl.apply_root(sigma, &RootVec(p.clone()));
            out.insert_add((se.0, sp.0), c.clone());
        }
        Ok(out)
    }

    /// Centrality by two routes that must agree: exact commutation with all
    /// generators, and the adjoint-action characterisation
    /// `ad(g) z = counit(g) z`.
    pub fn is_central(&self, u: &UElement) -> Result<bool> {
        let rank = self.rank();
        let mut by_commutators = true;
        for i in 0..rank {
            for g in [self.e(i), self.f(i), self.k(i), self.kp(i)] {
                if !self.commutator(&g, u).is_zero() {
                    by_commutators = false;
                }
            }
        }
        let mut by_adjoint = true;
        for i in 0..rank {
            for g in [self.e(i), self.f(i), self.k(i), self.kp(i)] {
                let lhs = self.adjoint(&g, u);
                let rhs = u.scale(&self.counit(&g));
                if lhs != rhs {
                    by_adjoint = false;
                }
            }
        }
        if by_commutators != by_adjoint {
            return Err(Error::Domain(
                "centrality routes disagree; internal invariant violated".into(),
            ));
        }
        Ok(by_commutators)
    }

    /// The lift of a bilinear functional (Lemma-style explicit formula):
    /// given `Psi` on the lowering basis of degree `mu` against the raising
    /// basis of degree `nu`, produce `u` in the `(nu, mu)` block with
    /// `<u | (y K'^-1_mu) K'_eta1 K_phi1 x> = (K'_eta1, K_phi)(K'_eta, K_phi1) Psi(y, x)`.
    ///
    /// `psi[k][l]` is the value on the k-th lowering basis word of degree
    /// `mu` (reversals of the raising basis) against the l-th raising basis
    /// word of degree `nu`.
    pub fn lift_functional(
        &self,
        mu: &RootVec,
        nu: &RootVec,
        psi: &Matrix,
        eta: &RootVec,
        phi: &RootVec,
    ) -> Result<UElement> {
        let dual_mu = self.dual_basis(mu)?;
        let dual_nu = self.dual_basis(nu)?;
        let d_mu = dual_mu.e_words.len();
        let d_nu = dual_nu.e_words.len();
        // Psi(v^mu_j, u^nu_i) by bilinearity: v^mu_j expands over the
        // lowering basis words of degree mu
        let f_words_mu: Vec<Word> = dual_mu.e_words.iter().map(|w| w.reversed()).collect();
        let rho_shift = RationalFunction::vt_pow(-self.two_rho_dot(nu), 0);
        let mut out = UElement::zero();
        for j in 0..d_mu {
            // expansion coefficients of v^mu_j over the lowering words
            let vj = &dual_mu.dual_negatives[j];
            let mut psi_vj = vec![RationalFunction::zero(); d_nu];
            for (key, c) in vj.terms() {
                let k = f_words_mu
                    .iter()
                    .position(|w| *w == key.f_word)
                    .ok_or_else(|| Error::Domain("dual vector leaves the basis span".into()))?;
                for (i, slot) in psi_vj.iter_mut().enumerate() {
                    *slot = slot.add_ref(&c.mul_ref(&psi[k][i]));
                }
            }
            for i in 0..d_nu {
                if psi_vj[i].is_zero() {
                    continue;
                }
                // v^nu_i (K'_nu)^-1 K'_eta K_phi u^mu_j v^(-2 rho . nu)
                let coeff = psi_vj[i].mul_ref(&rho_shift);
                for (key, c) in dual_nu.dual_negatives[i].terms() {
                    let mut new_key = key.clone();
                    new_key.k_exp = phi.0.clone();
                    new_key.kp_exp = eta.sub(nu).0.clone();
                    new_key.e_word = dual_mu.e_words[j].clone();
                    out.insert_add(new_key, c.mul_ref(&coeff));
                }
            }
        }
        Ok(out)
    }

    /// The central element attached to a dominant root-lattice weight: the
    /// lift of the quantum trace of the simple module.
    pub fn z_lambda(&self, lambda: &Weight) -> Result<CentralCandidate> {
        let d = self.datum();
        if !d.in_weight_lattice(lambda) || !d.is_dominant(lambda) {
            return Err(Error::Domain(
                "central lifts need a dominant integral weight".into(),
            ));
        }
        if lambda.to_root_vec().is_none() {
            return Err(Error::Domain(
                "central lifts are defined for weights in the root lattice only".into(),
            ));
        }
        let module = simple_module(self, lambda)?;
        let element = self.trace_lift(&module, None)?;
        let certified = self.is_central(&element)?;
        let degree = self.degree(&element);
        Ok(CentralCandidate { element, certified, degree })
    }

    /// Blockwise lift of the quantum-trace functional of a module.  With
    /// `fold_eta = Some(eta)` the Cartan data is folded to one-parameter
    /// form (coefficients specialised at `t = 1`) and re-expanded through
    /// the parity substitution into degree `(eta, eta)`.
    fn trace_lift(&self, module: &WeightModule, fold_eta: Option<&RootVec>) -> Result<UElement> {
        let rank = self.rank();
        let dim = module.dim();
        let theta = module.theta(self)?;
        let weights = &module.basis_weights;
        let wt_set: std::collections::BTreeSet<Weight> = weights.iter().cloned().collect();
        let mut out = UElement::zero();
        for b in 0..dim {
            let lam_b = &weights[b];
            // blocks nu with lam_b + nu still a weight of the module
            let mut blocks: Vec<RootVec> = Vec::new();
            for w in &wt_set {
                let diff = w.sub(lam_b);
                if let Some(nu) = diff.to_root_vec() {
                    if nu.is_nonneg() {
                        blocks.push(nu);
                    }
                }
            }
            for nu in blocks {
                let dual = self.dual_basis(&nu)?;
                let n = dual.e_words.len();
                if n == 0 {
                    continue;
                }
                let f_words: Vec<Word> = dual.e_words.iter().map(|w| w.reversed()).collect();
                // Psi(y, x) = f_b(y K'^-1_nu x . Theta m_b) on basis words
                let kp_inv_nu = module.cartan_action(&RootVec::zero(rank), &nu)?;
                let mut psi = linalg::zeros(n, n);
                let mut m_vec = vec![RationalFunction::zero(); dim];
                m_vec[b] = theta.diag[b].clone();
                for (l, ew) in dual.e_words.iter().enumerate() {
                    let raised = linalg::mat_vec(&module.action(&self.e_word(ew))?, &m_vec);
                    // K'^-1_nu is diagonal
                    let shifted: Vec<RationalFunction> = raised
                        .iter()
                        .zip(&kp_inv_nu)
                        .map(|(x, s)| x.div_ref(s).expect("Cartan action is invertible"))
                        .collect();
                    for (k, fw) in f_words.iter().enumerate() {
                        let lowered =
                            linalg::mat_vec(&module.action(&self.f_word(fw))?, &shifted);
                        psi[k][l] = lowered[b].clone();
                    }
                }
                match fold_eta {
                    None => {
                        let lam_vec = lam_b
                            .to_root_vec()
                            .ok_or_else(|| Error::Domain("weight left the root lattice".into()))?;
                        let eta = nu.add(&lam_vec);
                        let phi = eta.neg();
                        out = out.add(&self.lift_functional(&nu, &nu, &psi, &eta, &phi)?);
                    }
                    Some(eta) => {
                        out = out.add(&self.folded_lift(&nu, &psi, lam_b, eta)?);
                    }
                }
            }
        }
        Ok(out)
    }

    /// One block of the parity-substituted lift: coefficients are
    /// specialised at `t = 1` (the one-parameter fold) and the Cartan
    /// monomial of the one-parameter shadow `K_sigma` is re-expanded as
    /// `K_((eta - nu + sigma)/2) K'_((eta - nu - sigma)/2)`.
    fn folded_lift(
        &self,
        nu: &RootVec,
        psi: &Matrix,
        lam_b: &Weight,
        eta: &RootVec,
    ) -> Result<UElement> {
        let dual = self.dual_basis(nu)?;
        let n = dual.e_words.len();
        let f_words: Vec<Word> = dual.e_words.iter().map(|w| w.reversed()).collect();
        // one-parameter Cartan shadow sigma = -nu - 2 lam_b, integral by the
        // parity lift
        let two_lam = lam_b.scale(&BigRational::from(BigInt::from(2)));
        let two_lam = two_lam
            .to_root_vec()
            .ok_or_else(|| Error::FractionalExponent("2 lambda must be integral".into()))?;
        let sigma = nu.neg().sub(&two_lam);
        let a_plus = eta.sub(nu).add(&sigma);
        let a_minus = eta.sub(nu).sub(&sigma);
        if a_plus.0.iter().any(|x| x % 2 != 0) || a_minus.0.iter().any(|x| x % 2 != 0) {
            return Err(Error::Domain(
                "parity substitution needs matching parities".into(),
            ));
        }
        let k_exp = RootVec(a_plus.0.iter().map(|x| x / 2).collect());
        let kp_exp = RootVec(a_minus.0.iter().map(|x| x / 2).collect());
        let rho_shift = RationalFunction::vt_pow(-self.two_rho_dot(nu), 0);
        let mut out = UElement::zero();
        for j in 0..n {
            let vj = &dual.dual_negatives[j];
            let mut psi_vj = vec![RationalFunction::zero(); n];
            for (key, c) in vj.terms() {
                let k = f_words
                    .iter()
                    .position(|w| *w == key.f_word)
                    .ok_or_else(|| Error::Domain("dual vector leaves the basis span".into()))?;
                for (i, slot) in psi_vj.iter_mut().enumerate() {
                    *slot = slot.add_ref(&c.mul_ref(&psi[k][i]));
                }
            }
            for i in 0..n {
                let coeff = psi_vj[i].mul_ref(&rho_shift).specialize_t_one()?;
                if coeff.is_zero() {
                    continue;
                }
                for (key, c) in dual.dual_negatives[i].terms() {
                    let mut new_key = key.clone();
                    new_key.k_exp = k_exp.0.clone();
                    new_key.kp_exp = kp_exp.0.clone();
                    new_key.e_word = dual.e_words[j].clone();
                    // the substituted monomial is a chain of star products;
                    // re-reading it in the plain product inserts the
                    // accumulated degree twist
                    let twist = self.star_chain_twist(&new_key);
                    out.insert_add(
                        new_key,
                        c.specialize_t_one()?
                            .mul_ref(&coeff)
                            .mul_ref(&RationalFunction::vt_pow(0, twist)),
                    );
                }
            }
        }
        Ok(out)
    }

    /// Accumulated bracket of the factor chain
    /// `F_{w_1}, ..., F_{w_m}, K K', E_{u_1}, ..., E_{u_n}` of one monomial:
    /// the exponent by which the star-product chain differs from the plain
    /// product under the orientation that makes the rewritten relations
    /// `t`-free.
    fn star_chain_twist(&self, key: &TermKey) -> i64 {
        let rank = self.rank();
        let zero = RootVec::zero(rank);
        let mut degs: Vec<(RootVec, RootVec)> = Vec::new();
        for &i in &key.f_word.0 {
            degs.push((zero.clone(), RootVec::simple(rank, i)));
        }
        let cart: Vec<i64> = key
            .k_exp
            .iter()
            .zip(&key.kp_exp)
            .map(|(a, b)| a + b)
            .collect();
        let cart = RootVec(cart);
        if !cart.is_zero() {
            degs.push((cart.clone(), cart));
        }
        for &i in &key.e_word.0 {
            degs.push((RootVec::simple(rank, i), zero.clone()));
        }
        let mut total = 0;
        for k in 0..degs.len() {
            for l in k + 1..degs.len() {
                total += self.star_bracket(&degs[k], &degs[l]);
            }
        }
        total
    }

    /// Closed form of the Harish-Chandra image of the trace lift: the
    /// multiplicity-weighted sum of flat monomials, computed from the
    /// Freudenthal table alone.
    pub fn hc_image_of_trace(&self, lambda: &Weight) -> Result<CartanElement> {
        let mults = self.datum().weight_multiplicities(lambda)?;
        let mut out = CartanElement::zero();
        for (mu, m) in mults {
            let mu_vec = mu
                .to_root_vec()
                .ok_or_else(|| Error::Domain("weights must lie in the root lattice".into()))?;
            // K'_mu K_-mu: K-exponent -mu, K'-exponent mu
            out.insert_add(
                (mu_vec.neg().0, mu_vec.0),
                RationalFunction::from_int(m as i64),
            );
        }
        Ok(out)
    }

    /// The Weyl orbit average of the flat monomial of a weight.
    pub fn av(&self, lambda: &Weight) -> Result<CartanElement> {
        let d = self.datum();
        if lambda.to_root_vec().is_none() || !d.is_dominant(lambda) {
            return Err(Error::Domain(
                "orbit averages need a dominant root-lattice weight".into(),
            ));
        }
        let w = d.weyl_group()?;
        let order = w.order();
        let scale = RationalFunction::from_coeff(
            BigRational::new(BigInt::from(1), BigInt::from(order as i64)),
        );
        let mut out = CartanElement::zero();
        for s in 0..order {
            let img = w.apply(s, lambda);
            let img = img
                .to_root_vec()
                .expect("Weyl action preserves the root lattice");
            out.insert_add((img.neg().0, img.0), scale.clone());
        }
        Ok(out)
    }

    // -- bounded-window criterion -----------------------------------------------

    /// Search for central elements in nonzero double degrees, reported as a
    /// bounded-window certificate.
    pub fn criterion(&self, window: &CriterionWindow) -> Result<CriterionReport> {
        let d = self.datum();
        let rank = self.rank();
        let kernel = d.antisym_kernel();
        let mut certified = Vec::new();
        for basis in &kernel {
            let u = self.cartan_monomial(basis, basis);
            certified.push(CertifiedElement {
                eta: basis.clone(),
                element: crate::text::render_element(&u),
                central: self.is_central(&u)?,
            });
        }
        let mut report = CriterionReport {
            kernel_basis: kernel.clone(),
            certified,
            window: window.clone(),
            scanned: false,
            top_block_solutions: Vec::new(),
            no_extra_central_in_window: None,
        };
        if !kernel.is_empty() {
            return Ok(report);
        }
        // trivial kernel: scan every double degree (eta, eta) in the window
        // for top-block solutions
        report.scanned = true;
        let etas = signed_box(rank, window.eta_box);
        let gammas = nonneg_box(rank, window.block_tr);
        for eta in &etas {
            if eta.is_zero() || eta.tr().abs() > window.eta_tr {
                continue;
            }
            for gamma in &gammas {
                for sol in self.top_block_solutions(eta, gamma, window.shift_box)? {
                    report.top_block_solutions.push(sol);
                }
            }
        }
        report.no_extra_central_in_window = Some(report.top_block_solutions.is_empty());
        Ok(report)
    }

    /// Nonzero solutions `P` of the joint system
    /// `E_i P = v^(-sigma.alpha_i) t^(<eta-gamma,alpha_i> - <alpha_i,eta-gamma>) P E_i`
    /// over the raising space of degree `gamma`; such a `P` is what the top
    /// block of a central element of degree `(eta, eta)` would have to
    /// solve.
    fn top_block_solutions(
        &self,
        eta: &RootVec,
        gamma: &RootVec,
        shift_box: i64,
    ) -> Result<Vec<TopBlockSolution>> {
        let d = self.datum();
        let rank = self.rank();
        let gb = self.free().graded_basis(gamma);
        let words = gb.basis_words();
        let dim = words.len();
        if dim == 0 {
            return Ok(Vec::new());
        }
        let residue = eta.sub(gamma);
        let mut out = Vec::new();
        for sigma in signed_box(rank, shift_box) {
            // integrality of (eta - gamma +- sigma)/2
            if residue
                .0
                .iter()
                .zip(&sigma.0)
                .any(|(r, s)| (r + s).rem_euclid(2) != 0)
            {
                continue;
            }
            // stack E_i P - c_i P E_i over all i
            let mut rows: Matrix = Vec::new();
            for i in 0..rank {
                let ai = RootVec::simple(rank, i);
                let c_i = RationalFunction::vt_pow(
                    -d.dot(&sigma, &ai),
                    d.antisym(&residue, &ai),
                );
                let up = gamma.add(&ai);
                let target = self.free().graded_basis(&up);
                let tdim = target.basis_words().len();
                let mut left = linalg::zeros(tdim, dim);
                let mut right = linalg::zeros(tdim, dim);
                for (col, w) in words.iter().enumerate() {
                    let mut eiw = vec![i as u8];
                    eiw.extend_from_slice(&w.0);
                    for (bw, c) in self.free().reduce_word(&Word(eiw)).iter() {
                        let row = target
                            .basis_words()
                            .iter()
                            .position(|x| x == bw)
                            .expect("reduction stays in the basis");
                        left[row][col] = left[row][col].add_ref(c);
                    }
                    let mut wei = w.0.clone();
                    wei.push(i as u8);
                    for (bw, c) in self.free().reduce_word(&Word(wei)).iter() {
                        let row = target
                            .basis_words()
                            .iter()
                            .position(|x| x == bw)
                            .expect("reduction stays in the basis");
                        right[row][col] = right[row][col].add_ref(c);
                    }
                }
                for r in 0..tdim {
                    let row: Vec<RationalFunction> = (0..dim)
                        .map(|c| left[r][c].sub_ref(&c_i.mul_ref(&right[r][c])))
                        .collect();
                    rows.push(row);
                }
            }
            let kernel = linalg::nullspace(&rows, dim);
            if !kernel.is_empty() {
                out.push(TopBlockSolution {
                    eta: eta.clone(),
                    gamma: gamma.clone(),
                    sigma: sigma.clone(),
                    solution_dim: kernel.len(),
                });
            }
        }
        Ok(out)
    }

    // -- parabolic-style decomposition ---------------------------------------------

    /// Split an element into its subalgebra component and the complement,
    /// degree block by degree block, using the skew-pairing annihilators.
    pub fn decompose_uj(&self, j_set: &[usize], u: &UElement) -> Result<(UElement, UElement)> {
        let rank = self.rank();
        let mut inside = UElement::zero();
        let mut outside = UElement::zero();
        for (key, c) in u.terms() {
            let e_deg = key.e_word.degree(rank);
            let f_deg = key.f_word.degree(rank);
            let e_split = self.borel_uj_split(j_set, &e_deg, &key.e_word, false)?;
            let f_split = self.borel_uj_split(j_set, &f_deg, &key.f_word, true)?;
            // the term lands inside only through (J-part x J-part); all
            // remaining combinations belong to the complement
            for (ein, ecoeff, e_is_j) in flatten_split(&e_split, &key.e_word) {
                for (fin, fcoeff, f_is_j) in flatten_split(&f_split, &key.f_word) {
                    let mut nk = key.clone();
                    nk.e_word = ein.clone();
                    nk.f_word = fin.clone();
                    let coeff = c.mul_ref(&ecoeff).mul_ref(&fcoeff);
                    if e_is_j && f_is_j {
                        inside.insert_add(nk, coeff);
                    } else {
                        outside.insert_add(nk, coeff);
                    }
                }
            }
        }
        Ok((inside, outside))
    }

    /// Split one Borel word into its J-span and annihilator components;
    /// returns coordinates over the graded basis of the degree, tagged by
    /// which side they came from.
    fn borel_uj_split(
        &self,
        j_set: &[usize],
        deg: &RootVec,
        word: &Word,
        lowering: bool,
    ) -> Result<SplitCoords> {
        let rank = self.rank();
        let gb = self.free().graded_basis(deg);
        let basis = gb.basis_words();
        let dim = basis.len();
        // coordinates of the word over the basis
        let mut coords = vec![RationalFunction::zero(); dim];
        let expansion = if lowering {
            self.free()
                .reduce_word(&word.reversed())
                .iter()
                .map(|(w, c)| (w.reversed(), c.clone()))
                .collect::<Vec<_>>()
        } else {
            self.free().reduce_word(word).as_ref().clone()
        };
        let lookup: Vec<Word> = if lowering {
            basis.iter().map(|w| w.reversed()).collect()
        } else {
            basis.clone()
        };
        for (w, c) in expansion {
            let pos = lookup
                .iter()
                .position(|x| {
                    if lowering {
                        *x == w
                    } else {
                        *x == w
                    }
                })
                .expect("expansion stays in the degree basis");
            coords[pos] = coords[pos].add_ref(&c);
        }
        // J-span: words with letters in J, reduced to the basis
        let supported = deg
            .0
            .iter()
            .enumerate()
            .all(|(i, &k)| k == 0 || j_set.contains(&i));
        let mut j_span: Vec<Vec<RationalFunction>> = Vec::new();
        if supported {
            for w in self.free().words_of_degree(deg) {
                let mut v = vec![RationalFunction::zero(); dim];
                for (bw, c) in self.free().reduce_word(&w).iter() {
                    let pos = basis.iter().position(|x| x == bw).unwrap();
                    v[pos] = v[pos].add_ref(c);
                }
                j_span.push(v);
            }
            // deduplicate to an independent set
            let mut indep: Vec<Vec<RationalFunction>> = Vec::new();
            for v in j_span {
                let mut trial = indep.clone();
                trial.push(v.clone());
                if linalg::rank(&trial) > indep.len() {
                    indep.push(v);
                }
            }
            j_span = indep;
        }
        // annihilator: raising-side kernel pairs against J-lowering words,
        // lowering-side kernel against J-raising words
        let mut pair_rows: Matrix = Vec::new();
        for w in self.j_words_all(j_set, deg) {
            let row: Vec<RationalFunction> = basis
                .iter()
                .map(|bw| {
                    if lowering {
                        // (basis lowering word, J raising word)
                        self.skew_words(&bw.reversed(), &w)
                    } else {
                        self.skew_words(&w, bw)
                    }
                })
                .collect();
            pair_rows.push(row);
        }
        let ann = if pair_rows.is_empty() {
            // empty J-side of this degree: the annihilator is everything
            linalg::identity(dim)
        } else {
            let mut rows = linalg::nullspace(&pair_rows, dim);
            rows.drain(..).collect::<Vec<_>>()
        };
        Ok(SplitCoords { basis, coords, j_span, ann })
    }

    /// All words of a degree in the letters of `j_set` (empty unless the
    /// degree is supported there).
    fn j_words_all(&self, j_set: &[usize], deg: &RootVec) -> Vec<Word> {
        let supported = deg
            .0
            .iter()
            .enumerate()
            .all(|(i, &k)| k == 0 || j_set.contains(&i));
        if !supported {
            return Vec::new();
        }
        self.free().words_of_degree(deg)
    }

    // -- rank-one subalgebra centres --------------------------------------------------

    /// `X = K_i K'_i`.
    pub fn casimir_x(&self, i: usize) -> UElement {
        self.multiply(&self.k(i), &self.kp(i))
    }

    /// The rank-one Casimir element
    /// `Y = E_i F_i + (v^-1 K_i + v K'_i)/(v - v^-1)^2`.
    pub fn casimir_y(&self, i: usize) -> UElement {
        let denom = RationalFunction::v()
            .sub_ref(&RationalFunction::vt_pow(-1, 0));
        let denom2 = denom.mul_ref(&denom).inv().unwrap();
        let cart = self
            .k(i)
            .scale(&RationalFunction::vt_pow(-1, 0))
            .add(&self.kp(i).scale(&RationalFunction::v()))
            .scale(&denom2);
        self.multiply(&self.e(i), &self.f(i)).add(&cart)
    }

    /// The second printed form `F_i E_i + (v K_i + v^-1 K'_i)/(v - v^-1)^2`.
    pub fn casimir_y_alt(&self, i: usize) -> UElement {
        let denom = RationalFunction::v()
            .sub_ref(&RationalFunction::vt_pow(-1, 0));
        let denom2 = denom.mul_ref(&denom).inv().unwrap();
        let cart = self
            .k(i)
            .scale(&RationalFunction::v())
            .add(&self.kp(i).scale(&RationalFunction::vt_pow(-1, 0)))
            .scale(&denom2);
        self.multiply(&self.f(i), &self.e(i)).add(&cart)
    }

    /// Commutation with the generators of the rank-one subalgebra attached
    /// to `i` (plus every Cartan generator).
    pub fn is_central_in_uji(&self, i: usize, u: &UElement) -> bool {
        let mut gens = vec![self.e(i), self.f(i)];
        for j in 0..self.rank() {
            gens.push(self.k(j));
            gens.push(self.kp(j));
        }
        gens.iter().all(|g| self.commutator(g, u).is_zero())
    }

    /// Certification report for the rank-one subalgebra centre and the
    /// image comparison of the Harish-Chandra maps.
    pub fn centre_uji_check(
        &self,
        i: usize,
        z_samples: &[UElement],
    ) -> Result<UjiReport> {
        let rank = self.rank();
        let d = self.datum();
        let x = self.casimir_x(i);
        let y = self.casimir_y(i);
        let x_central = {
            // central in the rank-one subalgebra: E_i, F_i, K_i, K'_i
            let gens = [self.e(i), self.f(i), self.k(i), self.kp(i)];
            gens.iter().all(|g| self.commutator(g, &x).is_zero())
        };
        let forms_agree = y == self.casimir_y_alt(i);
        let y_central = {
            let gens = [self.e(i), self.f(i), self.k(i), self.kp(i)];
            gens.iter().all(|g| self.commutator(g, &y).is_zero())
        };
        // condition (1) samples: K_x K'_y with x, y spanned away from i and
        // E_i K_x K'_y = v^-2k K_x K'_y E_i for integral k
        let mut condition_samples = Vec::new();
        let others: Vec<usize> = (0..rank).filter(|&j| j != i).collect();
        let ai = RootVec::simple(rank, i);
        for xv in signed_box(others.len(), 1) {
            for yv in signed_box(others.len(), 1) {
                let mut xe = vec![0i64; rank];
                let mut ye = vec![0i64; rank];
                for (pos, &j) in others.iter().enumerate() {
                    xe[j] = xv.0[pos];
                    ye[j] = yv.0[pos];
                }
                let xr = RootVec(xe);
                let yr = RootVec(ye);
                let sum = xr.add(&yr);
                if d.antisym(&sum, &ai) != 0 {
                    continue;
                }
                let twok = d.dot(&xr.sub(&yr), &ai);
                if twok.rem_euclid(2) != 0 {
                    continue;
                }
                let k = twok / 2;
                // candidate K_x K'_y K_i^k Y
                let mut cand = self.cartan_monomial(&xr, &yr);
                cand = self.multiply(&cand, &self.k_pow(i, k));
                cand = self.multiply(&cand, &y);
                let central = self.is_central_in_uji(i, &cand);
                condition_samples.push(ConditionSample {
                    x: xr,
                    y: yr,
                    k,
                    central,
                });
            }
        }
        // Harish-Chandra image containment on the supplied central elements
        let mut image_checks = Vec::new();
        for z in z_samples {
            let (z1, z2) = self.decompose_uj(&[i], z)?;
            let xi_full = self.hc_xi(z)?;
            let xi_sub = self.hc_xi(&z1)?;
            let residue_clean = self.hc_xi(&z2)?.is_zero();
            image_checks.push(xi_full == xi_sub && residue_clean);
        }
        Ok(UjiReport {
            index: i,
            x_central,
            y_central,
            casimir_forms_agree: forms_agree,
            condition_samples,
            image_checks,
        })
    }

    // -- nonzero-degree lifts ------------------------------------------------------------

    /// Construct a central candidate of degree `(eta, eta)` through the
    /// parity lift: fold the trace lift of the half-weight module to its
    /// one-parameter shadow and re-expand the Cartan monomials.
    pub fn lift_degree_eta(&self, eta: &RootVec) -> Result<CentralCandidate> {
        let d = self.datum();
        if !self.datum().in_antisym_kernel(eta) {
            return Err(Error::Domain(
                "nonzero-degree central elements need a kernel direction".into(),
            ));
        }
        if eta.is_zero() {
            let one = self.one();
            return Ok(CentralCandidate {
                degree: self.degree(&one),
                element: one,
                certified: true,
            });
        }
        let nu = d
            .parity_lift(eta)
            .ok_or_else(|| Error::Domain("no parity lift found inside the search box".into()))?;
        // dominate nu/2 inside its Weyl orbit; the orbit preserves parity
        let half = nu.to_weight().scale(&BigRational::new(BigInt::from(1), BigInt::from(2)));
        let lambda = d.dominant(&half);
        let module = simple_module(self, &lambda)?;
        let element = self.trace_lift(&module, Some(eta))?;
        let certified = self.is_central(&element)?;
        let degree = self.degree(&element);
        Ok(CentralCandidate { element, certified, degree })
    }
}

/// Coordinates of a Borel word over its degree basis together with the
/// subalgebra span and the pairing annihilator.
struct SplitCoords {
    basis: Vec<Word>,
    coords: Vec<RationalFunction>,
    j_span: Vec<Vec<RationalFunction>>,
    ann: Vec<Vec<RationalFunction>>,
}

/// Resolve the coordinates into (J-part words, complement words).
fn flatten_split(
    split: &SplitCoords,
    _orig: &Word,
) -> Vec<(Word, RationalFunction, bool)> {
    let dim = split.basis.len();
    // solve coords = A [cj; cr] with columns the J-span then the annihilator
    let mut columns: Vec<Vec<RationalFunction>> = Vec::new();
    columns.extend(split.j_span.iter().cloned());
    columns.extend(split.ann.iter().cloned());
    let ncols = columns.len();
    let a: Matrix = (0..dim)
        .map(|r| (0..ncols).map(|c| columns[c][r].clone()).collect())
        .collect();
    let sol = linalg::solve(&a, &split.coords).expect("direct sum spans the degree");
    let mut out_j = vec![RationalFunction::zero(); dim];
    let mut out_r = vec![RationalFunction::zero(); dim];
    for (c, coeff) in sol.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        let target = if c < split.j_span.len() { &mut out_j } else { &mut out_r };
        for r in 0..dim {
            let s = columns[c][r].mul_ref(coeff);
            target[r] = target[r].add_ref(&s);
        }
    }
    let mut out = Vec::new();
    for (r, w) in split.basis.iter().enumerate() {
        if !out_j[r].is_zero() {
            out.push((w.clone(), out_j[r].clone(), true));
        }
        if !out_r[r].is_zero() {
            out.push((w.clone(), out_r[r].clone(), false));
        }
    }
    out
}

fn signed_box(rank: usize, bound: i64) -> Vec<RootVec> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..rank {
        let mut next = Vec::new();
        for v in &out {
            for x in -bound..=bound {
                let mut v2 = v.clone();
                v2.push(x);
                next.push(v2);
            }
        }
        out = next;
    }
    out.into_iter().map(RootVec).collect()
}

fn nonneg_box(rank: usize, tr_max: i64) -> Vec<RootVec> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..rank {
        let mut next = Vec::new();
        for v in &out {
            let used: i64 = v.iter().sum();
            for x in 0..=(tr_max - used) {
                let mut v2 = v.clone();
                v2.push(x);
                next.push(v2);
            }
        }
        out = next;
    }
    out.into_iter().map(RootVec).collect()
}

/// Window bounds of the bounded criterion scan.
#[derive(Clone, Debug)]
pub struct CriterionWindow {
    /// Componentwise bound on the double degree `eta`.
    pub eta_box: i64,
    /// Bound on `|tr(eta)|`.
    pub eta_tr: i64,
    /// Trace bound on the candidate top block.
    pub block_tr: i64,
    /// Componentwise bound on the Cartan shift parameter.
    pub shift_box: i64,
}

impl Default for CriterionWindow {
    fn default() -> Self {
        CriterionWindow { eta_box: 2, eta_tr: 4, block_tr: 3, shift_box: 4 }
    }
}

#[derive(Clone, Debug)]
pub struct CertifiedElement {
    pub eta: RootVec,
    pub element: String,
    pub central: bool,
}

#[derive(Clone, Debug)]
pub struct TopBlockSolution {
    pub eta: RootVec,
    pub gamma: RootVec,
    pub sigma: RootVec,
    pub solution_dim: usize,
}

/// Outcome of the criterion scan.
#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub kernel_basis: Vec<RootVec>,
    pub certified: Vec<CertifiedElement>,
    pub window: CriterionWindow,
    pub scanned: bool,
    pub top_block_solutions: Vec<TopBlockSolution>,
    pub no_extra_central_in_window: Option<bool>,
}

impl CriterionReport {
    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        json!({
            "kernel_basis": self.kernel_basis.iter().map(|v| v.0.clone()).collect::<Vec<_>>(),
            "certified_elements": self.certified.iter().map(|c| json!({
                "eta": c.eta.0,
                "element": c.element,
                "central": c.central,
            })).collect::<Vec<_>>(),
            "window_bounds": {
                "eta_box": self.window.eta_box,
                "eta_tr": self.window.eta_tr,
                "block_tr": self.window.block_tr,
                "shift_box": self.window.shift_box,
            },
            "scanned": self.scanned,
            "counterexamples": self.top_block_solutions.iter().map(|s| json!({
                "eta": s.eta.0,
                "gamma": s.gamma.0,
                "sigma": s.sigma.0,
                "solution_dim": s.solution_dim,
            })).collect::<Vec<_>>(),
            "no_extra_central_in_window": self.no_extra_central_in_window,
        })
    }
}

#[derive(Clone, Debug)]
pub struct ConditionSample {
    pub x: RootVec,
    pub y: RootVec,
    pub k: i64,
    pub central: bool,
}

/// Report of the rank-one subalgebra checks.
#[derive(Clone, Debug)]
pub struct UjiReport {
    pub index: usize,
    pub x_central: bool,
    pub y_central: bool,
    pub casimir_forms_agree: bool,
    pub condition_samples: Vec<ConditionSample>,
    pub image_checks: Vec<bool>,
}

impl UjiReport {
    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        json!({
            "index": self.index + 1,
            "x_central": self.x_central,
            "y_central": self.y_central,
            "casimir_forms_agree": self.casimir_forms_agree,
            "condition_samples": self.condition_samples.iter().map(|s| json!({
                "x": s.x.0,
                "y": s.y.0,
                "k": s.k,
                "central": s.central,
            })).collect::<Vec<_>>(),
            "image_checks": self.image_checks,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanDatum;
    use crate::scalars::RationalFunction as R;
    use std::sync::Arc;

    fn alg(n: usize) -> Algebra {
        Algebra::new(Arc::new(CartanDatum::type_a(n))).unwrap()
    }

    fn vt(a: i64, b: i64) -> R {
        R::vt_pow(a, b)
    }

    #[test]
    fn xi_on_flat_monomials() {
        // xi(K_eta K'_-eta) = v^(-2 rho . eta) K_eta K'_-eta
        let a = alg(2);
        let eta = RootVec(vec![1, 1]);
        let u = a.cartan_monomial(&eta, &eta.neg());
        let img = a.hc_xi(&u).unwrap();
        let expect = CartanElement::monomial(
            &eta,
            &eta.neg(),
            vt(-a.two_rho_dot(&eta), 0),
        );
        assert_eq!(img, expect);
    }

    #[test]
    fn xi_projects_the_cartan_block() {
        let a = alg(1);
        // xi(E_1 F_1): the Cartan block of the normal form is
        // (K_1 - K'_1)/(v - v^-1)
        let u = a.multiply(&a.e(0), &a.f(0));
        let img = a.hc_xi(&u).unwrap();
        let denom = vt(1, 0).sub_ref(&vt(-1, 0)).inv().unwrap();
        let rank1 = RootVec(vec![1]);
        let zero = RootVec::zero(1);
        // gamma^-rho scales K_1 by v^(-rho.alpha) = v^-1 and K'_1 by v^(+1)
        let mut expect = CartanElement::zero();
        expect.insert_add((rank1.0.clone(), zero.0.clone()), denom.mul_ref(&vt(-1, 0)));
        expect.insert_add((zero.0, rank1.0), denom.neg_ref().mul_ref(&vt(1, 0)));
        assert_eq!(img, expect);
        // a term with no Cartan block dies
        let u = a.multiply_all(&[&a.f(0), &a.k(0), &a.e(0)]);
        assert!(a.hc_xi(&u).unwrap().is_zero());
    }

    #[test]
    fn xi_is_multiplicative_on_u0() {
        let a = alg(2);
        // elements of U_0: E-degree matches F-degree termwise
        let samples = [
            a.multiply(&a.f(0), &a.e(0)),
            a.multiply_all(&[&a.f(1), &a.kp_inv(1), &a.e(1)]),
            a.cartan_monomial(&RootVec(vec![1, -1]), &RootVec(vec![0, 1])),
            a.multiply(&a.f(0), &a.e(0)).add(&a.one().scale(&vt(0, 1))),
        ];
        for x in &samples {
            for y in &samples {
                let lhs = a.hc_xi(&a.multiply(x, y)).unwrap();
                let rhs = a.hc_xi(x).unwrap().multiply(&a.hc_xi(y).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn rho_characters() {
        let a = alg(2);
        let d = a.datum().clone();
        let a1 = RootVec::simple(2, 0);
        let lam = Weight::from_ints(&[1, 1]);
        // rho^lambda(K_i) = v^(lambda.i) t^(<i,lambda> - <lambda,i>)
        let u = CartanElement::monomial(&a1, &RootVec::zero(2), R::one());
        let got = a.rho_char(&RhoChar::Plain(lam.clone()), &u).unwrap();
        let vexp = d.dot(&RootVec(vec![1, 1]), &a1);
        let texp = d.antisym(&a1, &RootVec(vec![1, 1]));
        assert_eq!(got, vt(vexp, texp));
        // rho^{0,lambda}(K'_eta K_-eta) = 1
        let flat = CartanElement::monomial(&a1.neg(), &a1, R::one());
        let got = a.rho_char(&RhoChar::Zero(lam.clone()), &flat).unwrap();
        assert!(got.is_one());
        // rho^{lambda,mu}(1) = 1
        let one = CartanElement::one(2);
        let got = a
            .rho_char(&RhoChar::Pair(lam.clone(), lam.clone()), &one)
            .unwrap();
        assert!(got.is_one());
    }

    #[test]
    fn weyl_action_on_flat() {
        let a = alg(2);
        let w = a.datum().weyl_group().unwrap();
        let a1 = RootVec::simple(2, 0);
        // sigma_i(K'_ai K_-ai) = K'_-ai K_ai
        let u = CartanElement::monomial(&a1.neg(), &a1, R::one());
        // find the simple reflection sigma_1
        let mut s1 = None;
        for idx in 0..w.order() {
            if w.words()[idx] == vec![0] {
                s1 = Some(idx);
            }
        }
        let s1 = s1.unwrap();
        let got = a.weyl_on_flat(&w, s1, &u).unwrap();
        let expect = CartanElement::monomial(&a1, &a1.neg(), R::one());
        assert_eq!(got, expect);
        // identity acts trivially
        let id = (0..w.order()).find(|&i| w.words()[i].is_empty()).unwrap();
        assert_eq!(a.weyl_on_flat(&w, id, &u).unwrap(), u);
        // non-flat input is rejected
        let bad = CartanElement::monomial(&a1, &a1, R::one());
        assert!(a.weyl_on_flat(&w, s1, &bad).is_err());
    }

    #[test]
    fn weyl_char_compatibility() {
        // rho^{sigma(lambda),mu}(u) = rho^{lambda,mu}(sigma^-1(u))
        let a = alg(2);
        let w = a.datum().weyl_group().unwrap();
        let lams = [Weight::from_ints(&[1, 0]), Weight::from_ints(&[1, 1])];
        let mus = [Weight::from_ints(&[0, 1]), Weight::from_ints(&[2, 1])];
        let flats = [
            CartanElement::monomial(&RootVec(vec![-1, 0]), &RootVec(vec![1, 0]), R::one()),
            CartanElement::monomial(&RootVec(vec![-1, -1]), &RootVec(vec![1, 1]), R::one()),
        ];
        for idx in 0..w.order() {
            let inv = w.inverse(idx);
            for lam in &lams {
                for mu in &mus {
                    for u in &flats {
                        let lhs = a
                            .rho_char(
                                &RhoChar::Pair(w.apply(idx, lam), mu.clone()),
                                u,
                            )
                            .unwrap();
                        let rhs = a
                            .rho_char(
                                &RhoChar::Pair(lam.clone(), mu.clone()),
                                &a.weyl_on_flat(&w, inv, u).unwrap(),
                            )
                            .unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn centrality_routes() {
        let a = alg(2);
        assert!(a.is_central(&a.one()).unwrap());
        assert!(!a.is_central(&a.e(0)).unwrap());
        assert!(!a.is_central(&a.k(0)).unwrap());
    }

    #[test]
    fn casimir_is_central_in_rank_one() {
        let a = alg(1);
        let y = a.casimir_y(0);
        assert_eq!(y, a.casimir_y_alt(0));
        assert!(a.is_central(&y).unwrap());
        let x = a.casimir_x(0);
        assert!(a.is_central(&x).unwrap());
    }

    #[test]
    fn lift_functional_degenerate_cases() {
        let a = alg(1);
        let zero = RootVec::zero(1);
        // mu = nu = 0, Psi = 1 -> the Cartan monomial itself
        let psi = vec![vec![R::one()]];
        let eta = RootVec(vec![2]);
        let phi = RootVec(vec![-1]);
        let got = a.lift_functional(&zero, &zero, &psi, &eta, &phi).unwrap();
        assert_eq!(got, a.cartan_monomial(&phi, &eta));
        // Psi = 0 -> 0
        let psi = vec![vec![R::zero()]];
        assert!(a.lift_functional(&zero, &zero, &psi, &eta, &phi).unwrap().is_zero());
    }

    #[test]
    fn lift_functional_defining_property() {
        // <u | (y K'^-1_mu) K'_eta1 K_phi1 x> = (K'_eta1, K_phi)(K'_eta, K_phi1) Psi(y, x)
        let a = alg(1);
        let alpha = RootVec(vec![1]);
        let psi = vec![vec![R::one()]]; // Psi(F_1, E_1) = 1 on basis words
        let eta = RootVec(vec![0]);
        let phi = RootVec(vec![0]);
        let u = a.lift_functional(&alpha, &alpha, &psi, &eta, &phi).unwrap();
        for (eta1v, phi1v) in [(0i64, 0i64), (1, 0), (0, 1), (1, -1)] {
            let eta1 = RootVec(vec![eta1v]);
            let phi1 = RootVec(vec![phi1v]);
            let probe = a.multiply_all(&[
                &a.f(0),
                &a.kp_inv(0),
                &a.cartan_monomial(&phi1, &eta1),
                &a.e(0),
            ]);
            let got = a.ad_form(&u, &probe);
            // (K'_eta1, K_phi)(K'_eta, K_phi1) with Psi(F_1, E_1) = 1
            let expect = a.chi(&eta, &phi, &eta1, &phi1);
            assert_eq!(got, expect, "defining identity fails at ({eta1v},{phi1v})");
        }
    }

    #[test]
    fn z_zero_is_one() {
        let a = alg(2);
        let z = a.z_lambda(&Weight::zero(2)).unwrap();
        assert!(z.certified);
        assert_eq!(z.element, a.one());
    }

    #[test]
    fn z_adjoint_rank_one() {
        let a = alg(1);
        let z = a.z_lambda(&Weight::from_ints(&[1])).unwrap();
        assert!(z.certified, "adjoint trace lift must be central");
        // xi(z) = K'_a K_-a + 1 + K'_-a K_a
        let img = a.hc_xi(&z.element).unwrap();
        let alpha = RootVec(vec![1]);
        let mut expect = CartanElement::one(1);
        expect.insert_add((alpha.neg().0.clone(), alpha.0.clone()), R::one());
        expect.insert_add((alpha.0.clone(), alpha.neg().0.clone()), R::one());
        assert_eq!(img, expect);
        assert_eq!(img, a.hc_image_of_trace(&Weight::from_ints(&[1])).unwrap());
    }

    #[test]
    fn hc_image_closed_form() {
        let a = alg(2);
        let lam = Weight::from_ints(&[1, 1]);
        let img = a.hc_image_of_trace(&lam).unwrap();
        // 8-dimensional adjoint: zero weight twice, six roots once
        let total: R = img
            .terms()
            .fold(R::zero(), |acc, (_, c)| acc.add_ref(c));
        assert_eq!(total, R::from_int(8));
        assert_eq!(
            img.terms()
                .find(|((e, p), _)| e.iter().all(|&x| x == 0) && p.iter().all(|&x| x == 0))
                .map(|(_, c)| c.clone()),
            Some(R::from_int(2))
        );
    }

    #[test]
    fn av_examples() {
        let a = alg(1);
        assert_eq!(a.av(&Weight::zero(1)).unwrap(), CartanElement::one(1));
        let avx = a.av(&Weight::from_ints(&[1])).unwrap();
        let alpha = RootVec(vec![1]);
        let half = R::from_coeff(BigRational::new(BigInt::from(1), BigInt::from(2)));
        let mut expect = CartanElement::zero();
        expect.insert_add((alpha.neg().0.clone(), alpha.0.clone()), half.clone());
        expect.insert_add((alpha.0.clone(), alpha.neg().0), half);
        assert_eq!(avx, expect);
    }

    #[test]
    fn av_triangularity() {
        // xi(z_lambda) - |W| av(lambda) lies in the span of av(mu), mu < lambda
        let a = alg(1);
        let lam = Weight::from_ints(&[1]);
        let img = a.hc_image_of_trace(&lam).unwrap();
        let avl = a.av(&lam).unwrap();
        let rest = img.sub(&avl.scale(&R::from_int(2)));
        // remaining part: multiplicity of the zero weight
        assert_eq!(rest, CartanElement::one(1));
    }

    #[test]
    fn kernel_membership_matches_centrality() {
        // K'_eta K_eta is central exactly for kernel directions
        let a3 = alg(3);
        let eta = RootVec(vec![1, 0, 1]);
        assert!(a3.datum().in_antisym_kernel(&eta));
        let u = a3.cartan_monomial(&eta, &eta);
        assert!(a3.is_central(&u).unwrap());
        let bad = RootVec(vec![1, 0, 0]);
        assert!(!a3.datum().in_antisym_kernel(&bad));
        let u = a3.cartan_monomial(&bad, &bad);
        assert!(!a3.is_central(&u).unwrap());
    }

    #[test]
    fn decompose_uj_examples() {
        let a = alg(2);
        // J = I: everything is inside
        let u = a.multiply(&a.e(0), &a.f(1)).add(&a.k(0));
        let (inside, outside) = a.decompose_uj(&[0, 1], &u).unwrap();
        assert_eq!(inside, u);
        assert!(outside.is_zero());
        // J = {1}: E_2 falls in the complement, E_1 inside
        let (inside, outside) = a.decompose_uj(&[0], &a.e(1)).unwrap();
        assert!(inside.is_zero());
        assert_eq!(outside, a.e(1));
        let (inside, outside) = a.decompose_uj(&[0], &a.e(0)).unwrap();
        assert_eq!(inside, a.e(0));
        assert!(outside.is_zero());
        // J empty: E_1 is outside
        let (inside, outside) = a.decompose_uj(&[], &a.e(0)).unwrap();
        assert!(inside.is_zero());
        assert_eq!(outside, a.e(0));
    }

    #[test]
    fn criterion_rank_one() {
        let a = alg(1);
        let report = a.criterion(&CriterionWindow::default()).unwrap();
        assert_eq!(report.kernel_basis.len(), 1);
        assert!(report.certified.iter().all(|c| c.central));
        assert!(!report.scanned);
    }

    #[test]
    fn lift_degree_eta_zero() {
        let a = alg(2);
        let z = a.lift_degree_eta(&RootVec::zero(2)).unwrap();
        assert!(z.certified);
        assert_eq!(z.element, a.one());
    }

    #[test]
    fn lift_degree_eta_rank_one() {
        // eta = alpha: the candidate is central of degree (alpha, alpha) and
        // proportional to the Casimir element
        let a = alg(1);
        let alpha = RootVec(vec![1]);
        let z = a.lift_degree_eta(&alpha).unwrap();
        assert!(z.certified, "folded lift must be central");
        assert_eq!(
            z.degree,
            Some((alpha.clone(), alpha.clone())),
            "degree must be (alpha, alpha)"
        );
        // z = c Y for a scalar c: compare against the Casimir
        let y = a.casimir_y(0);
        let ef_key = z
            .element
            .terms()
            .find(|(k, _)| !k.e_word.is_empty())
            .map(|(k, _)| k.clone())
            .expect("lift contains a raising-lowering term");
        let c = z.element.coeff(&ef_key).div_ref(&y.coeff(&ef_key)).unwrap();
        assert!(!c.is_zero());
        assert_eq!(z.element, y.scale(&c), "lift is proportional to the Casimir");
    }
}
