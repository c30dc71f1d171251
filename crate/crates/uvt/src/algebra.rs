//! The two-parameter quantum group itself.
//!
//! Elements are kept in triangular normal form: every term is
//! `F-word * K-monomial * K'-monomial * E-word` with the E- and F-words
//! drawn from the deterministic graded bases of [`crate::freealg`].  The
//! negative half is identified with the free quotient through the
//! word-reversal anti-isomorphism, which is the identification under which
//! the printed lowering-side Serre relations land in the radical.
//!
//! Straightening moves Cartan monomials outward with the conjugation
//! relations and resolves `E * F` products by the commutator relation,
//! recursively and with memoisation; raising/lowering words are reduced to
//! their graded bases after every step.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::cartan::{CartanDatum, RootVec};
use crate::freealg::{FreeAlgebra, FreeElement, Word};
use crate::scalars::RationalFunction;
use crate::{Error, Result};

/// One normal-form monomial: `F_{f} K_{k} K'_{kp} E_{e}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TermKey {
    pub f_word: Word,
    pub k_exp: Vec<i64>,
    pub kp_exp: Vec<i64>,
    pub e_word: Word,
}

impl TermKey {
    pub fn unit(rank: usize) -> Self {
        TermKey {
            f_word: Word::empty(),
            k_exp: vec![0; rank],
            kp_exp: vec![0; rank],
            e_word: Word::empty(),
        }
    }

    pub fn is_cartan(&self) -> bool {
        self.f_word.is_empty() && self.e_word.is_empty()
    }
}

/// Element of the algebra in triangular normal form.  Equal elements have
/// identical term maps.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UElement {
    terms: BTreeMap<TermKey, RationalFunction>,
}

impl UElement {
    pub fn zero() -> Self {
        UElement { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, key: &TermKey) -> RationalFunction {
        self.terms.get(key).cloned().unwrap_or_else(RationalFunction::zero)
    }

    pub fn insert_add(&mut self, key: TermKey, c: RationalFunction) {
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
        UElement {
            terms: self
                .terms
                .iter()
                .map(|(k, x)| (k.clone(), x.mul_ref(c)))
                .collect(),
        }
    }

    /// True when every term lies in the lower Borel (no raising letters).
    pub fn in_lower_borel(&self) -> bool {
        self.terms.keys().all(|k| k.e_word.is_empty())
    }

    /// True when every term lies in the upper Borel (no lowering letters).
    pub fn in_upper_borel(&self) -> bool {
        self.terms.keys().all(|k| k.f_word.is_empty())
    }

    /// Purely positive: E-words only, no Cartan part.
    pub fn is_positive_part(&self) -> bool {
        self.terms.keys().all(|k| {
            k.f_word.is_empty()
                && k.k_exp.iter().all(|&x| x == 0)
                && k.kp_exp.iter().all(|&x| x == 0)
        })
    }

    /// Purely negative: F-words only, no Cartan part.
    pub fn is_negative_part(&self) -> bool {
        self.terms.keys().all(|k| {
            k.e_word.is_empty()
                && k.k_exp.iter().all(|&x| x == 0)
                && k.kp_exp.iter().all(|&x| x == 0)
        })
    }
}

/// Sum of tensor-square terms with scalar coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TensorUElement {
    terms: BTreeMap<(TermKey, TermKey), RationalFunction>,
}

impl TensorUElement {
    pub fn zero() -> Self {
        TensorUElement { terms: BTreeMap::new() }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(TermKey, TermKey), &RationalFunction)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn insert_add(&mut self, key: (TermKey, TermKey), c: RationalFunction) {
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

    pub fn scale(&self, c: &RationalFunction) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TensorUElement {
            terms: self
                .terms
                .iter()
                .map(|(k, x)| (k.clone(), x.mul_ref(c)))
                .collect(),
        }
    }
}

/// Orientation of the degree twist in the star product.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StarSign {
    /// `t^-[.,.]'` with the bracket as printed.
    Printed,
    /// The negated bracket orientation; this is the one under which the
    /// rewritten defining relations come out free of `t`.
    Flipped,
}

/// The algebra context: Cartan datum, free-algebra caches, the straightening
/// memo and the pairing tables.  Operations are pure; the caches are
/// insert-if-absent.
pub struct Algebra {
    free: FreeAlgebra,
    rho: crate::cartan::Weight,
    ef_cache: Mutex<HashMap<(Word, Word), Arc<UElement>>>,
    pub(crate) skew_cache: Mutex<HashMap<(Word, Word), RationalFunction>>,
    pub(crate) dual_cache:
        Mutex<HashMap<Vec<i64>, Arc<crate::pairing::DualBasisPair>>>,
}

type RawTerm = (Word, Vec<i64>, Vec<i64>, Word, RationalFunction);

impl Algebra {
    /// Requires a symmetric-type matrix of finite type.
    pub fn new(datum: Arc<CartanDatum>) -> Result<Self> {
        if !datum.is_symmetric_type() {
            return Err(Error::NotSymmetricType);
        }
        let rho = datum.rho()?;
        Ok(Algebra {
            free: FreeAlgebra::new(datum),
            rho,
            ef_cache: Mutex::new(HashMap::new()),
            skew_cache: Mutex::new(HashMap::new()),
            dual_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn datum(&self) -> &CartanDatum {
        self.free.datum()
    }

    /// The half sum of positive roots, fixed at construction.
    pub fn rho(&self) -> &crate::cartan::Weight {
        &self.rho
    }

    /// `2 rho . nu` for a lattice vector; an integer in symmetric type.
    pub fn two_rho_dot(&self, nu: &RootVec) -> i64 {
        use num::One;
        let two_rho = self.rho.scale(&num::BigRational::from(num::BigInt::from(2)));
        let val = self.datum().dot_w(&two_rho, &nu.to_weight());
        debug_assert!(val.denom().is_one());
        i64::try_from(val.numer().clone()).expect("2 rho . nu fits an i64")
    }

    pub fn free(&self) -> &FreeAlgebra {
        &self.free
    }

    pub fn rank(&self) -> usize {
        self.free.rank()
    }

    // -- constructors --------------------------------------------------------

    pub fn one(&self) -> UElement {
        let mut u = UElement::zero();
        u.insert_add(TermKey::unit(self.rank()), RationalFunction::one());
        u
    }

    pub fn scalar(&self, c: RationalFunction) -> UElement {
        let mut u = UElement::zero();
        u.insert_add(TermKey::unit(self.rank()), c);
        u
    }

    pub fn e(&self, i: usize) -> UElement {
        let mut key = TermKey::unit(self.rank());
        key.e_word = Word::single(i);
        let mut u = UElement::zero();
        u.insert_add(key, RationalFunction::one());
        u
    }

    pub fn f(&self, i: usize) -> UElement {
        let mut key = TermKey::unit(self.rank());
        key.f_word = Word::single(i);
        let mut u = UElement::zero();
        u.insert_add(key, RationalFunction::one());
        u
    }

    pub fn k(&self, i: usize) -> UElement {
        self.k_pow(i, 1)
    }

    pub fn k_inv(&self, i: usize) -> UElement {
        self.k_pow(i, -1)
    }

    pub fn kp(&self, i: usize) -> UElement {
        self.kp_pow(i, 1)
    }

    pub fn kp_inv(&self, i: usize) -> UElement {
        self.kp_pow(i, -1)
    }

    pub fn k_pow(&self, i: usize, n: i64) -> UElement {
        let mut key = TermKey::unit(self.rank());
        key.k_exp[i] = n;
        let mut u = UElement::zero();
        u.insert_add(key, RationalFunction::one());
        u
    }

    pub fn kp_pow(&self, i: usize, n: i64) -> UElement {
        let mut key = TermKey::unit(self.rank());
        key.kp_exp[i] = n;
        let mut u = UElement::zero();
        u.insert_add(key, RationalFunction::one());
        u
    }

    pub fn e_pow(&self, i: usize, n: u32) -> UElement {
        let mut out = self.one();
        for _ in 0..n {
            out = self.multiply(&out, &self.e(i));
        }
        out
    }

    pub fn f_pow(&self, i: usize, n: u32) -> UElement {
        let mut out = self.one();
        for _ in 0..n {
            out = self.multiply(&out, &self.f(i));
        }
        out
    }

    /// `K_eta K'_phi` for lattice exponents.
    pub fn cartan_monomial(&self, eta: &RootVec, phi: &RootVec) -> UElement {
        let mut key = TermKey::unit(self.rank());
        key.k_exp = eta.0.clone();
        key.kp_exp = phi.0.clone();
        let mut u = UElement::zero();
        u.insert_add(key, RationalFunction::one());
        u
    }

    /// Raising word (already reduced to the graded basis).
    pub fn e_word(&self, w: &Word) -> UElement {
        self.normalize(vec![(
            Word::empty(),
            vec![0; self.rank()],
            vec![0; self.rank()],
            w.clone(),
            RationalFunction::one(),
        )])
    }

    /// Lowering word (already reduced to the graded basis).
    pub fn f_word(&self, w: &Word) -> UElement {
        self.normalize(vec![(
            w.clone(),
            vec![0; self.rank()],
            vec![0; self.rank()],
            Word::empty(),
            RationalFunction::one(),
        )])
    }

    /// Image of a free-algebra element under `th -> E`.
    pub fn positive_of_free(&self, x: &FreeElement) -> UElement {
        let mut raw = Vec::new();
        for (w, c) in x.terms() {
            raw.push((
                Word::empty(),
                vec![0; self.rank()],
                vec![0; self.rank()],
                w.clone(),
                c.clone(),
            ));
        }
        self.normalize(raw)
    }

    /// Image of a free-algebra element under `th -> F` (letters in the same
    /// order they are written).
    pub fn negative_of_free(&self, x: &FreeElement) -> UElement {
        let mut raw = Vec::new();
        for (w, c) in x.terms() {
            raw.push((
                w.clone(),
                vec![0; self.rank()],
                vec![0; self.rank()],
                Word::empty(),
                c.clone(),
            ));
        }
        self.normalize(raw)
    }

    // -- word reduction -------------------------------------------------------

    /// Basis expansion of a raising word.
    fn reduce_e_word(&self, w: &Word) -> Vec<(Word, RationalFunction)> {
        self.free.reduce_word(w).as_ref().clone()
    }

    /// Basis expansion of a lowering word: reduce the reversed word in the
    /// free quotient, then reverse the surviving basis words back.
    fn reduce_f_word(&self, w: &Word) -> Vec<(Word, RationalFunction)> {
        self.free
            .reduce_word(&w.reversed())
            .iter()
            .map(|(b, c)| (b.reversed(), c.clone()))
            .collect()
    }

    /// Collapse raw terms into a normal-form element.
    fn normalize(&self, raw: Vec<RawTerm>) -> UElement {
        let mut out = UElement::zero();
        for (fw, k, kp, ew, c) in raw {
            if c.is_zero() {
                continue;
            }
            let fparts = if fw.is_empty() {
                vec![(Word::empty(), RationalFunction::one())]
            } else {
                self.reduce_f_word(&fw)
            };
            let eparts = if ew.is_empty() {
                vec![(Word::empty(), RationalFunction::one())]
            } else {
                self.reduce_e_word(&ew)
            };
            for (fb, fc) in &fparts {
                for (eb, ec) in &eparts {
                    out.insert_add(
                        TermKey {
                            f_word: fb.clone(),
                            k_exp: k.clone(),
                            kp_exp: kp.clone(),
                            e_word: eb.clone(),
                        },
                        c.mul_ref(fc).mul_ref(ec),
                    );
                }
            }
        }
        out
    }

    // -- conjugation scalars ---------------------------------------------------

    fn vt(&self, a: i64, b: i64) -> RationalFunction {
        RationalFunction::vt_pow(a, b)
    }

    /// Scalar `s` with `E_w K_a K'_b = s K_a K'_b E_w` for a raising word of
    /// degree `nu`.
    fn move_cartan_left_of_e(&self, a: &[i64], b: &[i64], nu: &RootVec) -> RationalFunction {
        let d = self.datum();
        let av = RootVec(a.to_vec());
        let bv = RootVec(b.to_vec());
        let sum = av.add(&bv);
        self.vt(
            d.dot(&bv, nu) - d.dot(&av, nu),
            d.antisym(&sum, nu),
        )
    }

    /// Scalar `s` with `K_a K'_b F_w = s F_w K_a K'_b` for a lowering word of
    /// degree `nu`.
    fn move_cartan_right_of_f(&self, a: &[i64], b: &[i64], nu: &RootVec) -> RationalFunction {
        let d = self.datum();
        let av = RootVec(a.to_vec());
        let bv = RootVec(b.to_vec());
        let sum = av.add(&bv);
        self.vt(
            d.dot(&bv, nu) - d.dot(&av, nu),
            d.antisym(&sum, nu),
        )
    }

    /// `1 / (v_i - v_i^-1)`.
    fn r3_scalar(&self, i: usize) -> RationalFunction {
        let di = self.datum().d(i);
        self.vt(di, 0)
            .sub_ref(&self.vt(-di, 0))
            .inv()
            .expect("v^d - v^-d is nonzero")
    }

    // -- straightening ----------------------------------------------------------

    /// `E_i * F_f` expanded into raw triangular terms.
    fn ef_single(&self, i: usize, f: &Word) -> Vec<RawTerm> {
        let rank = self.rank();
        if f.is_empty() {
            return vec![(
                Word::empty(),
                vec![0; rank],
                vec![0; rank],
                Word::single(i),
                RationalFunction::one(),
            )];
        }
        let j = f.0[0] as usize;
        let tail = Word(f.0[1..].to_vec());
        let mut out: Vec<RawTerm> = self
            .ef_single(i, &tail)
            .into_iter()
            .map(|(g, a, b, h, c)| {
                let mut g2 = vec![j as u8];
                g2.extend_from_slice(&g.0);
                (Word(g2), a, b, h, c)
            })
            .collect();
        if i == j {
            // (K_i - K'_i)/(v_i - v_i^-1) pushed past the remaining letters
            let d = self.datum();
            let nu = tail.degree(rank);
            let alpha = RootVec::simple(rank, i);
            let tshift = d.antisym(&alpha, &nu);
            let base = self.r3_scalar(i);
            let mut k_exp = vec![0i64; rank];
            k_exp[i] = 1;
            let mut kp_exp = vec![0i64; rank];
            kp_exp[i] = 1;
            out.push((
                tail.clone(),
                k_exp,
                vec![0; rank],
                Word::empty(),
                base.mul_ref(&self.vt(-d.dot(&alpha, &nu), tshift)),
            ));
            out.push((
                tail,
                vec![0; rank],
                kp_exp,
                Word::empty(),
                base.neg_ref().mul_ref(&self.vt(d.dot(&alpha, &nu), tshift)),
            ));
        }
        out
    }

    /// Normal form of `E_e * F_f`, memoised on the raw word pair.
    fn straighten_ef(&self, e: &Word, f: &Word) -> Arc<UElement> {
        let key = (e.clone(), f.clone());
        if let Some(hit) = self.ef_cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let rank = self.rank();
        let result = if e.is_empty() {
            self.normalize(vec![(
                f.clone(),
                vec![0; rank],
                vec![0; rank],
                Word::empty(),
                RationalFunction::one(),
            )])
        } else {
            let i = *e.0.last().unwrap() as usize;
            let head = Word(e.0[..e.len() - 1].to_vec());
            let mut acc = UElement::zero();
            for (g, a, b, h, c) in self.ef_single(i, f) {
                let w = self.straighten_ef(&head, &g);
                for (key_w, cw) in w.terms() {
                    let nu_q = key_w.e_word.degree(rank);
                    let s = self.move_cartan_left_of_e(&a, &b, &nu_q);
                    let k: Vec<i64> = key_w
                        .k_exp
                        .iter()
                        .zip(&a)
                        .map(|(x, y)| x + y)
                        .collect();
                    let kp: Vec<i64> = key_w
                        .kp_exp
                        .iter()
                        .zip(&b)
                        .map(|(x, y)| x + y)
                        .collect();
                    let eword = key_w.e_word.concat(&h);
                    acc = acc.add(&self.normalize(vec![(
                        key_w.f_word.clone(),
                        k,
                        kp,
                        eword,
                        cw.mul_ref(&c).mul_ref(&s),
                    )]));
                }
            }
            acc
        };
        let result = Arc::new(result);
        self.ef_cache
            .lock()
            .unwrap()
            .entry(key)
            .or_insert(result)
            .clone()
    }

    // -- products ---------------------------------------------------------------

    fn mul_terms(
        &self,
        k1: &TermKey,
        c1: &RationalFunction,
        k2: &TermKey,
        c2: &RationalFunction,
    ) -> UElement {
        let rank = self.rank();
        let mid = self.straighten_ef(&k1.e_word, &k2.f_word);
        let mut out = UElement::zero();
        for (km, cm) in mid.terms() {
            // K_{a1}K'_{b1} past the new F-part, K_{a2}K'_{b2} past the new E-part
            let nu_g = km.f_word.degree(rank);
            let s1 = self.move_cartan_right_of_f(&k1.k_exp, &k1.kp_exp, &nu_g);
            let nu_h = km.e_word.degree(rank);
            let s2 = self.move_cartan_left_of_e(&k2.k_exp, &k2.kp_exp, &nu_h);
            let k: Vec<i64> = (0..rank)
                .map(|x| k1.k_exp[x] + km.k_exp[x] + k2.k_exp[x])
                .collect();
            let kp: Vec<i64> = (0..rank)
                .map(|x| k1.kp_exp[x] + km.kp_exp[x] + k2.kp_exp[x])
                .collect();
            let fword = k1.f_word.concat(&km.f_word);
            let eword = km.e_word.concat(&k2.e_word);
            let coeff = c1
                .mul_ref(c2)
                .mul_ref(cm)
                .mul_ref(&s1)
                .mul_ref(&s2);
            out = out.add(&self.normalize(vec![(fword, k, kp, eword, coeff)]));
        }
        out
    }

    /// Product in triangular normal form.
    pub fn multiply(&self, x: &UElement, y: &UElement) -> UElement {
        let mut out = UElement::zero();
        for (k1, c1) in x.terms() {
            for (k2, c2) in y.terms() {
                out = out.add(&self.mul_terms(k1, c1, k2, c2));
            }
        }
        out
    }

    pub fn multiply_all(&self, xs: &[&UElement]) -> UElement {
        let mut out = self.one();
        for x in xs {
            out = self.multiply(&out, x);
        }
        out
    }

    pub fn commutator(&self, x: &UElement, y: &UElement) -> UElement {
        self.multiply(x, y).sub(&self.multiply(y, x))
    }

    // -- Hopf structure -----------------------------------------------------------

    fn tensor_of(&self, a: &UElement, b: &UElement) -> TensorUElement {
        let mut out = TensorUElement::zero();
        for (k1, c1) in a.terms() {
            for (k2, c2) in b.terms() {
                out.insert_add((k1.clone(), k2.clone()), c1.mul_ref(c2));
            }
        }
        out
    }

    fn tensor_mul(&self, a: &TensorUElement, b: &TensorUElement) -> TensorUElement {
        let mut out = TensorUElement::zero();
        for ((x1, x2), c1) in a.terms() {
            for ((y1, y2), c2) in b.terms() {
                let left = self.mul_terms(x1, &RationalFunction::one(), y1, &RationalFunction::one());
                let right = self.mul_terms(x2, &RationalFunction::one(), y2, &RationalFunction::one());
                let c = c1.mul_ref(c2);
                for (kl, cl) in left.terms() {
                    for (kr, cr) in right.terms() {
                        out.insert_add(
                            (kl.clone(), kr.clone()),
                            c.mul_ref(cl).mul_ref(cr),
                        );
                    }
                }
            }
        }
        out
    }

    fn coproduct_gen(&self, kind: Gen) -> TensorUElement {
        match kind {
            Gen::E(i) => self
                .tensor_of(&self.e(i), &self.one())
                .add(&self.tensor_of(&self.k(i), &self.e(i))),
            Gen::F(i) => self
                .tensor_of(&self.one(), &self.f(i))
                .add(&self.tensor_of(&self.f(i), &self.kp(i))),
        }
    }

    /// The comultiplication, extended multiplicatively over normal forms.
    pub fn coproduct(&self, x: &UElement) -> TensorUElement {
        let mut out = TensorUElement::zero();
        for (key, c) in x.terms() {
            let mut acc = self.tensor_of(&self.one(), &self.one());
            for &i in &key.f_word.0 {
                acc = self.tensor_mul(&acc, &self.coproduct_gen(Gen::F(i as usize)));
            }
            // group-like Cartan part
            let cart = self.cartan_monomial(
                &RootVec(key.k_exp.clone()),
                &RootVec(key.kp_exp.clone()),
            );
            acc = self.tensor_mul(&acc, &self.tensor_of(&cart, &cart));
            for &i in &key.e_word.0 {
                acc = self.tensor_mul(&acc, &self.coproduct_gen(Gen::E(i as usize)));
            }
            out = out.add(&acc.scale(c));
        }
        out
    }

    /// The antipode (or its inverse), the anti-homomorphic extension of the
    /// generator table.
    pub fn antipode(&self, x: &UElement, inverse: bool) -> UElement {
        let mut out = UElement::zero();
        for (key, c) in x.terms() {
            // S(F_f K K' E_e) = S(E-letters, reversed) S(Cartan) S(F-letters, reversed)
            let mut factors: Vec<UElement> = Vec::new();
            for &i in key.e_word.0.iter().rev() {
                let i = i as usize;
                factors.push(if inverse {
                    // S^-1(E_i) = -E_i K_i^-1
                    self.multiply(&self.e(i), &self.k_inv(i)).scale(&RationalFunction::from_int(-1))
                } else {
                    // S(E_i) = -K_i^-1 E_i
                    self.multiply(&self.k_inv(i), &self.e(i)).scale(&RationalFunction::from_int(-1))
                });
            }
            factors.push(self.cartan_monomial(
                &RootVec(key.k_exp.iter().map(|x| -x).collect()),
                &RootVec(key.kp_exp.iter().map(|x| -x).collect()),
            ));
            for &i in key.f_word.0.iter().rev() {
                let i = i as usize;
                factors.push(if inverse {
                    // S^-1(F_i) = -K'_i^-1 F_i
                    self.multiply(&self.kp_inv(i), &self.f(i)).scale(&RationalFunction::from_int(-1))
                } else {
                    // S(F_i) = -F_i K'_i^-1
                    self.multiply(&self.f(i), &self.kp_inv(i)).scale(&RationalFunction::from_int(-1))
                });
            }
            let mut acc = self.one();
            for fct in &factors {
                acc = self.multiply(&acc, fct);
            }
            out = out.add(&acc.scale(c));
        }
        out
    }

    /// The counit: 1 on Cartan monomials, 0 on everything else.
    pub fn counit(&self, x: &UElement) -> RationalFunction {
        let mut out = RationalFunction::zero();
        for (key, c) in x.terms() {
            if key.is_cartan() {
                out = out.add_ref(c);
            }
        }
        out
    }

    /// The adjoint action `ad(u) m = sum u_(1) m S(u_(2))`.
    pub fn adjoint(&self, u: &UElement, m: &UElement) -> UElement {
        let mut out = UElement::zero();
        let cop = self.coproduct(u);
        for ((k1, k2), c) in cop.terms() {
            let mut u1 = UElement::zero();
            u1.insert_add(k1.clone(), RationalFunction::one());
            let mut u2 = UElement::zero();
            u2.insert_add(k2.clone(), RationalFunction::one());
            let s2 = self.antipode(&u2, false);
            let prod = self.multiply(&self.multiply(&u1, m), &s2);
            out = out.add(&prod.scale(c));
        }
        out
    }

    // -- commutation maps ------------------------------------------------------------

    /// For purely positive `x`: the pair `(p_i(x), p'_i(x))` with
    /// `x F_i - F_i x = (p_i(x) K_i - K'_i p'_i(x)) / (v_i - v_i^-1)`.
    /// For purely negative `x`: the pair `(a_i(x), a'_i(x))` with
    /// `x E_i - E_i x = (a_i(x) K'_i - K_i a'_i(x)) / (v_i - v_i^-1)`.
    pub fn commutation_maps(&self, x: &UElement, i: usize) -> Result<(UElement, UElement)> {
        let rank = self.rank();
        let d = self.datum();
        let alpha = RootVec::simple(rank, i);
        let vv = self.vt(d.d(i), 0).sub_ref(&self.vt(-d.d(i), 0));
        if x.is_positive_part() {
            let c = self.commutator(x, &self.f(i));
            let mut p = UElement::zero();
            let mut pp = UElement::zero();
            for (key, coeff) in c.terms() {
                if !key.f_word.is_empty() {
                    return Err(Error::Domain("commutator left the Borel shape".into()));
                }
                let nu = key.e_word.degree(rank);
                let mut stripped = key.clone();
                if key.k_exp == alpha.0 && key.kp_exp.iter().all(|&x| x == 0) {
                    stripped.k_exp = vec![0; rank];
                    // undo the rightward move of K_i past the E-word
                    let undo = self.vt(d.dot(&alpha, &nu), -d.antisym(&alpha, &nu));
                    p.insert_add(stripped, coeff.mul_ref(&vv).mul_ref(&undo));
                } else if key.kp_exp == alpha.0 && key.k_exp.iter().all(|&x| x == 0) {
                    stripped.kp_exp = vec![0; rank];
                    pp.insert_add(stripped, coeff.mul_ref(&vv).neg_ref());
                } else {
                    return Err(Error::Domain(
                        "commutator has an unexpected Cartan factor".into(),
                    ));
                }
            }
            Ok((p, pp))
        } else if x.is_negative_part() {
            let c = self.commutator(x, &self.e(i));
            let mut a = UElement::zero();
            let mut ap = UElement::zero();
            for (key, coeff) in c.terms() {
                if !key.e_word.is_empty() {
                    return Err(Error::Domain("commutator left the Borel shape".into()));
                }
                let nu = key.f_word.degree(rank);
                let mut stripped = key.clone();
                if key.kp_exp == alpha.0 && key.k_exp.iter().all(|&x| x == 0) {
                    stripped.kp_exp = vec![0; rank];
                    a.insert_add(stripped, coeff.mul_ref(&vv));
                } else if key.k_exp == alpha.0 && key.kp_exp.iter().all(|&x| x == 0) {
                    stripped.k_exp = vec![0; rank];
                    let undo = self.vt(d.dot(&alpha, &nu), -d.antisym(&alpha, &nu));
                    ap.insert_add(stripped, coeff.mul_ref(&vv).mul_ref(&undo).neg_ref());
                } else {
                    return Err(Error::Domain(
                        "commutator has an unexpected Cartan factor".into(),
                    ));
                }
            }
            Ok((a, ap))
        } else {
            Err(Error::Domain(
                "commutation maps need a purely positive or purely negative argument".into(),
            ))
        }
    }

    // -- grading and the star product ---------------------------------------------------

    /// Degree of one term in the double grading.
    pub fn term_degree(&self, key: &TermKey) -> (RootVec, RootVec) {
        let rank = self.rank();
        let de = key.e_word.degree(rank);
        let df = key.f_word.degree(rank);
        let cart: Vec<i64> = key
            .k_exp
            .iter()
            .zip(&key.kp_exp)
            .map(|(a, b)| a + b)
            .collect();
        (
            RootVec(de.0.iter().zip(&cart).map(|(a, b)| a + b).collect()),
            RootVec(df.0.iter().zip(&cart).map(|(a, b)| a + b).collect()),
        )
    }

    /// The common degree of a homogeneous element, if any.
    pub fn degree(&self, x: &UElement) -> Option<(RootVec, RootVec)> {
        let mut out: Option<(RootVec, RootVec)> = None;
        for (key, _) in x.terms() {
            let d = self.term_degree(key);
            match &out {
                None => out = Some(d),
                Some(prev) if *prev == d => {}
                Some(_) => return None,
            }
        }
        out
    }

    /// Split into homogeneous components of the double grading.
    pub fn degree_components(&self, x: &UElement) -> BTreeMap<(RootVec, RootVec), UElement> {
        let mut out: BTreeMap<(RootVec, RootVec), UElement> = BTreeMap::new();
        for (key, c) in x.terms() {
            out.entry(self.term_degree(key))
                .or_insert_with(UElement::zero)
                .insert_add(key.clone(), c.clone());
        }
        out
    }

    /// The bracket `[gamma, eta]' = [gamma_2, eta_2] - [gamma_1, eta_1]` on
    /// double degrees.
    pub fn star_bracket(&self, gamma: &(RootVec, RootVec), eta: &(RootVec, RootVec)) -> i64 {
        let d = self.datum();
        let sq = |a: &RootVec, b: &RootVec| {
            d.form(crate::cartan::FormKind::Square, a, b).expect("rank checked")
        };
        sq(&gamma.1, &eta.1) - sq(&gamma.0, &eta.0)
    }

    /// The degree-twisted product; inhomogeneous inputs are split by degree.
    pub fn star_multiply(&self, x: &UElement, y: &UElement, sign: StarSign) -> UElement {
        let mut out = UElement::zero();
        for (dx, cx) in self.degree_components(x) {
            for (dy, cy) in self.degree_components(y) {
                let bracket = self.star_bracket(&dx, &dy);
                let texp = match sign {
                    StarSign::Printed => -bracket,
                    StarSign::Flipped => bracket,
                };
                let tw = self.vt(0, texp);
                out = out.add(&self.multiply(&cx, &cy).scale(&tw));
            }
        }
        out
    }

    /// Render with the generator grammar (`E1`, `F2`, `K1`, `K1'`, powers).
    pub fn render(&self, x: &UElement) -> String {
        crate::text::render_element(x)
    }
}

enum Gen {
    E(usize),
    F(usize),
}

impl fmt::Display for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::render_element(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanDatum;
    use crate::scalars::RationalFunction as R;

    fn alg(n: usize) -> Algebra {
        Algebra::new(Arc::new(CartanDatum::type_a(n))).unwrap()
    }

    fn vt(a: i64, b: i64) -> R {
        R::vt_pow(a, b)
    }

    #[test]
    fn symmetric_type_is_required() {
        let d = CartanDatum::from_omega(vec![vec![2, -1], vec![-1, 1]]);
        // omega itself may be invalid; build one that is valid but not
        // symmetric type: B2-like
        let d = d.or_else(|_| CartanDatum::from_omega(vec![vec![2, -2], vec![0, 1]]));
        let d = d.expect("valid non-symmetric datum");
        assert!(!d.is_symmetric_type());
        assert!(Algebra::new(Arc::new(d)).is_err());
    }

    #[test]
    fn r1_cancels_cartan_exponents() {
        let a = alg(1);
        let prod = a.multiply(&a.k(0), &a.k_inv(0));
        assert_eq!(prod, a.one());
        let prod = a.multiply(&a.kp(0), &a.kp_inv(0));
        assert_eq!(prod, a.one());
    }

    #[test]
    fn r2_conjugations() {
        let a = alg(2);
        let d = a.datum().clone();
        for i in 0..2 {
            for j in 0..2 {
                let ai = RootVec::simple(2, i);
                let aj = RootVec::simple(2, j);
                // K_i E_j K_i^-1 = v^(i.j) t^(<j,i> - <i,j>) E_j
                let lhs = a.multiply_all(&[&a.k(i), &a.e(j), &a.k_inv(i)]);
                let rhs = a
                    .e(j)
                    .scale(&vt(d.dot(&ai, &aj), d.antisym(&aj, &ai)));
                assert_eq!(lhs, rhs, "K E conjugation at ({}, {})", i, j);
                // K'_i E_j K'_i^-1 = v^-(i.j) t^(<j,i> - <i,j>) E_j
                let lhs = a.multiply_all(&[&a.kp(i), &a.e(j), &a.kp_inv(i)]);
                let rhs = a
                    .e(j)
                    .scale(&vt(-d.dot(&ai, &aj), d.antisym(&aj, &ai)));
                assert_eq!(lhs, rhs, "K' E conjugation at ({}, {})", i, j);
                // K'_i F_j K'_i^-1 = v^(i.j) t^(<i,j> - <j,i>) F_j
                let lhs = a.multiply_all(&[&a.kp(i), &a.f(j), &a.kp_inv(i)]);
                let rhs = a
                    .f(j)
                    .scale(&vt(d.dot(&ai, &aj), d.antisym(&ai, &aj)));
                assert_eq!(lhs, rhs, "K' F conjugation at ({}, {})", i, j);
                // K_i F_j K_i^-1 = v^-(i.j) t^(<i,j> - <j,i>) F_j
                let lhs = a.multiply_all(&[&a.k(i), &a.f(j), &a.k_inv(i)]);
                let rhs = a
                    .f(j)
                    .scale(&vt(-d.dot(&ai, &aj), d.antisym(&ai, &aj)));
                assert_eq!(lhs, rhs, "K F conjugation at ({}, {})", i, j);
            }
        }
    }

    #[test]
    fn r3_commutator() {
        let a = alg(2);
        for i in 0..2 {
            for j in 0..2 {
                let c = a.commutator(&a.e(i), &a.f(j));
                if i != j {
                    assert!(c.is_zero(), "E_{} and F_{} should commute", i + 1, j + 1);
                } else {
                    let expect = a
                        .k(i)
                        .sub(&a.kp(i))
                        .scale(&vt(1, 0).sub_ref(&vt(-1, 0)).inv().unwrap());
                    assert_eq!(c, expect);
                }
            }
        }
    }

    #[test]
    fn serre_images_vanish_in_both_halves() {
        let a = alg(2);
        for (i, j) in [(0usize, 1usize), (1, 0)] {
            let s = a.free().serre_element(i, j).unwrap();
            assert!(a.positive_of_free(&s).is_zero(), "raising Serre image");
            // the lowering relation: p and p' swap places across the middle letter
            let mut lowered = UElement::zero();
            let n = 2; // 1 - 2(i.j)/(i.i) for adjacent nodes
            for p in 0..=n {
                let p2 = n - p;
                let d = a.datum().d(i);
                let texp = -d * (p as i64) * (p2 as i64)
                    + (p as i64)
                        * (a.datum().angle_gen(i, j) - a.datum().angle_gen(j, i));
                let sign = if p % 2 == 0 { 1 } else { -1 };
                let coeff = vt(0, texp).scale_coeff(&num::BigRational::from(
                    num::BigInt::from(sign),
                ));
                let fact_p = crate::scalars::quantum_factorial(p, d);
                let fact_p2 = crate::scalars::quantum_factorial(p2, d);
                let term = a.multiply_all(&[
                    &a.f_pow(i, p2),
                    &a.f(j),
                    &a.f_pow(i, p),
                ]);
                lowered = lowered.add(&term.scale(
                    &coeff
                        .div_ref(&fact_p.mul_ref(&fact_p2))
                        .unwrap(),
                ));
            }
            assert!(lowered.is_zero(), "lowering Serre image at ({}, {})", i, j);
        }
    }

    #[test]
    fn triangular_reassembly() {
        // multiply(F-part, multiply(Cartan, E-part)) reproduces the term
        let a = alg(2);
        let u = a.multiply_all(&[&a.f(0), &a.f(1), &a.k(0), &a.kp_inv(1), &a.e(1)]);
        let mut rebuilt = UElement::zero();
        for (key, c) in u.terms() {
            let fpart = a.f_word(&key.f_word);
            let cart = a.cartan_monomial(&RootVec(key.k_exp.clone()), &RootVec(key.kp_exp.clone()));
            let epart = a.e_word(&key.e_word);
            rebuilt = rebuilt.add(
                &a.multiply(&fpart, &a.multiply(&cart, &epart)).scale(c),
            );
        }
        assert_eq!(u, rebuilt);
    }

    #[test]
    fn e_f_power_commutation_closed_form() {
        // E_i F_i^n - F_i^n E_i against the displayed closed form, n <= 5
        let a = alg(1);
        let d = a.datum().clone();
        let alpha = RootVec::simple(1, 0);
        let dot = d.dot(&alpha, &alpha);
        for n in 1..=5u32 {
            let fi_n = a.f_pow(0, n);
            let lhs = a.commutator(&a.e(0), &fi_n);
            let mut rhs = UElement::zero();
            let fprev = a.f_pow(0, n - 1);
            for k in 0..n {
                let exp = (n - 1 - k) as i64 * dot;
                let term = a
                    .multiply(&fprev, &a.k(0))
                    .scale(&vt(-exp, 0))
                    .sub(&a.multiply(&fprev, &a.kp(0)).scale(&vt(exp, 0)));
                rhs = rhs.add(&term);
            }
            rhs = rhs.scale(&vt(1, 0).sub_ref(&vt(-1, 0)).inv().unwrap());
            assert_eq!(lhs, rhs, "closed form fails at n = {}", n);
        }
    }

    #[test]
    fn associativity_spot_checks() {
        let a = alg(2);
        let x = a.multiply(&a.e(0), &a.f(0)).add(&a.k(1));
        let y = a.f(1).add(&a.kp_inv(0));
        let z = a.e(1).sub(&a.one());
        let left = a.multiply(&a.multiply(&x, &y), &z);
        let right = a.multiply(&x, &a.multiply(&y, &z));
        assert_eq!(left, right);
    }

    #[test]
    fn hopf_tables() {
        let a = alg(2);
        // counit
        assert!(a.counit(&a.multiply(&a.k(0), &a.kp(1))).is_one());
        assert!(a.counit(&a.multiply(&a.e(0), &a.f(0))).is_zero());
        assert!(a.counit(&a.one()).is_one());
        // coproduct of K is group-like
        let dk = a.coproduct(&a.k(0));
        assert_eq!(dk.num_terms(), 1);
        // antipode on generators
        let se = a.antipode(&a.e(0), false);
        let expect = a.multiply(&a.k_inv(0), &a.e(0)).scale(&R::from_int(-1));
        assert_eq!(se, expect);
        // S(S^-1(x)) = x on a composite element
        let x = a.multiply_all(&[&a.e(0), &a.f(1), &a.k(1)]);
        assert_eq!(a.antipode(&a.antipode(&x, true), false), x);
        // antipode axiom m(S (x) id)Delta = unit . counit on E_i
        let cop = a.coproduct(&a.e(0));
        let mut m_s_id = UElement::zero();
        for ((k1, k2), c) in cop.terms() {
            let mut u1 = UElement::zero();
            u1.insert_add(k1.clone(), R::one());
            let mut u2 = UElement::zero();
            u2.insert_add(k2.clone(), R::one());
            m_s_id = m_s_id.add(&a.multiply(&a.antipode(&u1, false), &u2).scale(c));
        }
        assert!(m_s_id.is_zero());
    }

    #[test]
    fn adjoint_on_generators() {
        let a = alg(2);
        let d = a.datum().clone();
        // ad(K_i) E_j = v^(i.j) t^(<j,i> - <i,j>) E_j
        let got = a.adjoint(&a.k(0), &a.e(1));
        let a0 = RootVec::simple(2, 0);
        let a1 = RootVec::simple(2, 1);
        let expect = a.e(1).scale(&vt(d.dot(&a0, &a1), d.antisym(&a1, &a0)));
        assert_eq!(got, expect);
        // ad(x) 1 = counit(x) 1
        let x = a.multiply(&a.e(0), &a.f(0)).add(&a.k(1).scale(&vt(0, 2)));
        let got = a.adjoint(&x, &a.one());
        let expect = a.one().scale(&a.counit(&x));
        assert_eq!(got, expect);
        // ad(E_i) m = E_i m - K_i m K_i^-1 E_i
        let m = a.multiply(&a.f(0), &a.f(1));
        let got = a.adjoint(&a.e(0), &m);
        let expect = a.multiply(&a.e(0), &m).sub(&a.multiply_all(&[
            &a.k(0),
            &m,
            &a.k_inv(0),
            &a.e(0),
        ]));
        assert_eq!(got, expect);
        // ad(F_i) m = (F_i m - m F_i) K'_i^-1
        let got = a.adjoint(&a.f(0), &m);
        let expect = a.multiply(
            &a.commutator(&a.f(0), &m),
            &a.kp_inv(0),
        );
        assert_eq!(got, expect);
    }

    #[test]
    fn commutation_map_values() {
        let a = alg(2);
        // p_i(E_i) = p'_i(E_i) = 1
        let (p, pp) = a.commutation_maps(&a.e(0), 0).unwrap();
        assert_eq!(p, a.one());
        assert_eq!(pp, a.one());
        // p_i(E_j) = 0 for j != i
        let (p, pp) = a.commutation_maps(&a.e(1), 0).unwrap();
        assert!(p.is_zero());
        assert!(pp.is_zero());
        // a_i(F_i) = a'_i(F_i) = 1
        let (x, xp) = a.commutation_maps(&a.f(0), 0).unwrap();
        assert_eq!(x, a.one());
        assert_eq!(xp, a.one());
        // mixed input is rejected
        assert!(a.commutation_maps(&a.multiply(&a.e(0), &a.f(0)), 0).is_err());
    }

    #[test]
    fn p_map_leibniz_rule() {
        // p_i(x1 x2) = x1 p_i(x2) + v^(i.|x2|) t^(<|x2|,i> - <i,|x2|>) p_i(x1) x2.
        // The t-exponent orientation is forced by the defining commutator
        // shape together with the K-conjugation relation.
        let a = alg(2);
        let d = a.datum().clone();
        let samples = [
            (a.e(0), a.e(1)),
            (a.e(1), a.e(0)),
            (a.multiply(&a.e(0), &a.e(1)), a.e(0)),
            (a.e(0), a.multiply(&a.e(1), &a.e(0))),
        ];
        for i in 0..2 {
            let ai = RootVec::simple(2, i);
            for (x1, x2) in &samples {
                let both = a.multiply(x1, x2);
                let (p_both, _) = a.commutation_maps(&both, i).unwrap();
                let (p1, _) = a.commutation_maps(x1, i).unwrap();
                let (p2, _) = a.commutation_maps(x2, i).unwrap();
                let nu2 = a.degree(x2).unwrap().0;
                let tw = vt(d.dot(&ai, &nu2), d.antisym(&nu2, &ai));
                let expect = a
                    .multiply(x1, &p2)
                    .add(&a.multiply(&p1, x2).scale(&tw));
                assert_eq!(p_both, expect);
            }
        }
    }

    #[test]
    fn degrees() {
        let a = alg(2);
        let ef = a.multiply(&a.e(0), &a.f(0));
        let d = a.degree(&ef).unwrap();
        assert_eq!(d.0, RootVec(vec![1, 0]));
        assert_eq!(d.1, RootVec(vec![1, 0]));
        let kk = a.multiply(&a.k(0), &a.kp(0));
        let d = a.degree(&kk).unwrap();
        assert_eq!(d.0, RootVec(vec![2, 0]));
        assert_eq!(d.1, RootVec(vec![2, 0]));
        assert_eq!(
            a.degree(&a.one()).unwrap(),
            (RootVec::zero(2), RootVec::zero(2))
        );
        // E_1 + F_1 is inhomogeneous
        assert!(a.degree(&a.e(0).add(&a.f(0))).is_none());
    }

    #[test]
    fn star_product_examples() {
        let a = alg(2);
        for sign in [StarSign::Printed, StarSign::Flipped] {
            // E_i * F_i - F_i * E_i has zero twist on these degrees
            let lhs = a
                .star_multiply(&a.e(0), &a.f(0), sign)
                .sub(&a.star_multiply(&a.f(0), &a.e(0), sign));
            let expect = a
                .k(0)
                .sub(&a.kp(0))
                .scale(&vt(1, 0).sub_ref(&vt(-1, 0)).inv().unwrap());
            assert_eq!(lhs, expect);
        }
        // flipped sign: K_1 * E_2 * K_1^-1 = v^-1 E_2, free of t
        let lhs = a.star_multiply(
            &a.star_multiply(&a.k(0), &a.e(1), StarSign::Flipped),
            &a.k_inv(0),
            StarSign::Flipped,
        );
        assert_eq!(lhs, a.e(1).scale(&vt(-1, 0)));
    }

    #[test]
    fn star_associativity() {
        let a = alg(2);
        let x = a.multiply(&a.e(0), &a.k(1));
        let y = a.f(1);
        let z = a.multiply(&a.kp_inv(0), &a.e(1));
        for sign in [StarSign::Printed, StarSign::Flipped] {
            let l = a.star_multiply(&a.star_multiply(&x, &y, sign), &z, sign);
            let r = a.star_multiply(&x, &a.star_multiply(&y, &z, sign), sign);
            assert_eq!(l, r);
        }
    }
}
