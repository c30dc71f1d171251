//! The free algebra on the generators `th1, ..., thn`, its twisted tensor
//! square, the coproduct `r`, the bilinear form determined by
//! `(th_i, th_j) = delta_ij / (1 - v_i^-2)`, the one-sided derivative maps,
//! quantum Serre elements, and graded bases of the quotient by the radical
//! of the form.
//!
//! Both halves of the quantum group borrow their bases and their reduction
//! maps from here, so every choice in this module is deterministic: words of
//! a fixed degree are ordered length-lexicographically and basis selection
//! is a greedy scan in that order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::cartan::{CartanDatum, RootVec};
use crate::linalg;
use crate::scalars::{quantum_factorial, RationalFunction};
use crate::{Error, Result};

/// A word in the free generators, ordered by length first and then
/// lexicographically.  Indices are 0-based generator numbers.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(i: usize) -> Self {
        Word(vec![i as u8])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        let mut v = self.0.clone();
        v.reverse();
        Word(v)
    }

    pub fn degree(&self, rank: usize) -> RootVec {
        let mut d = vec![0i64; rank];
        for &i in &self.0 {
            d[i as usize] += 1;
        }
        RootVec(d)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|i| format!("th{}", i + 1)).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Q(v,t)-linear combination of words, graded by N[I].
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FreeElement {
    terms: BTreeMap<Word, RationalFunction>,
}

impl FreeElement {
    pub fn zero() -> Self {
        FreeElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_word(Word::empty())
    }

    pub fn theta(i: usize) -> Self {
        Self::from_word(Word::single(i))
    }

    pub fn from_word(w: Word) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, RationalFunction::one());
        FreeElement { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, RationalFunction)>) -> Self {
        let mut out = FreeElement::zero();
        for (w, c) in terms {
            out.insert_add(w, c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> RationalFunction {
        self.terms.get(w).cloned().unwrap_or_else(RationalFunction::zero)
    }

    fn insert_add(&mut self, w: Word, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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
        for (w, c) in &other.terms {
            out.insert_add(w.clone(), c.clone());
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
        FreeElement {
            terms: self
                .terms
                .iter()
                .map(|(w, x)| (w.clone(), x.mul_ref(c)))
                .collect(),
        }
    }

    /// Word concatenation extended bilinearly; degrees add.
    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = FreeElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.insert_add(w1.concat(w2), c1.mul_ref(c2));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = out.multiply(self);
        }
        out
    }

    /// The homogeneous components, keyed by degree.
    pub fn components(&self, rank: usize) -> BTreeMap<RootVec, FreeElement> {
        let mut out: BTreeMap<RootVec, FreeElement> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.degree(rank))
                .or_insert_with(FreeElement::zero)
                .insert_add(w.clone(), c.clone());
        }
        out
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{}", w)?;
            } else if w.is_empty() {
                write!(f, "({})", c)?;
            } else {
                write!(f, "({})*{}", c, w)?;
            }
        }
        Ok(())
    }
}

/// Element of the twisted tensor square.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FreeTensor {
    terms: BTreeMap<(Word, Word), RationalFunction>,
}

impl FreeTensor {
    pub fn zero() -> Self {
        FreeTensor { terms: BTreeMap::new() }
    }

    pub fn unit() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((Word::empty(), Word::empty()), RationalFunction::one());
        FreeTensor { terms }
    }

    pub fn simple(a: FreeElement, b: FreeElement) -> Self {
        let mut out = FreeTensor::zero();
        for (w1, c1) in &a.terms {
            for (w2, c2) in &b.terms {
                out.insert_add((w1.clone(), w2.clone()), c1.mul_ref(c2));
            }
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &RationalFunction)> {
        self.terms.iter()
    }

    fn insert_add(&mut self, k: (Word, Word), c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
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
        FreeTensor {
            terms: self
                .terms
                .iter()
                .map(|(k, x)| (k.clone(), x.mul_ref(c)))
                .collect(),
        }
    }
}

/// A homogeneous degree's word list with the Gram data of the bilinear form.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    pub degree: RootVec,
    /// All words of the degree, in length-lexicographic order.
    pub words: Vec<Word>,
    /// Gram matrix of the bilinear form over `words`.
    pub gram: linalg::Matrix,
    /// Indices into `words` forming a basis modulo the radical.
    pub selected: Vec<usize>,
    pub radical_dim: usize,
    inv_selected: linalg::Matrix,
    index_of: HashMap<Word, usize>,
}

impl GradedBasis {
    pub fn rank(&self) -> usize {
        self.selected.len()
    }

    pub fn basis_words(&self) -> Vec<Word> {
        self.selected.iter().map(|&i| self.words[i].clone()).collect()
    }
}

/// Context object owning the Cartan datum and every memoised table.  The
/// caches behave as if operations executed serially: concurrent readers are
/// fine and insertion is insert-if-absent.
pub struct FreeAlgebra {
    datum: Arc<CartanDatum>,
    pair_cache: Mutex<HashMap<(Word, Word), RationalFunction>>,
    split_cache: Mutex<HashMap<Word, Arc<Vec<(u8, Word, RationalFunction)>>>>,
    basis_cache: Mutex<HashMap<Vec<i64>, Arc<GradedBasis>>>,
    reduce_cache: Mutex<HashMap<Word, Arc<Vec<(Word, RationalFunction)>>>>,
}

impl FreeAlgebra {
    pub fn new(datum: Arc<CartanDatum>) -> Self {
        FreeAlgebra {
            datum,
            pair_cache: Mutex::new(HashMap::new()),
            split_cache: Mutex::new(HashMap::new()),
            basis_cache: Mutex::new(HashMap::new()),
            reduce_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    fn vt(&self, vexp: i64, texp: i64) -> RationalFunction {
        RationalFunction::vt_pow(vexp, texp)
    }

    /// The twist scalar of the tensor-square multiplication:
    /// `v^(y1 . x2) t^(<y1,x2> - <x2,y1>)` for degrees `y1` and `x2`.
    fn tensor_twist(&self, y1: &RootVec, x2: &RootVec) -> RationalFunction {
        self.vt(self.datum.dot(y1, x2), self.datum.antisym(y1, x2))
    }

    /// Multiplication on the twisted tensor square.
    pub fn twisted_tensor_multiply(&self, a: &FreeTensor, b: &FreeTensor) -> FreeTensor {
        let rank = self.rank();
        let mut out = FreeTensor::zero();
        for ((x1, x2), c1) in &a.terms {
            let dx2 = x2.degree(rank);
            for ((y1, y2), c2) in &b.terms {
                let dy1 = y1.degree(rank);
                let tw = self.tensor_twist(&dy1, &dx2);
                out.insert_add(
                    (x1.concat(y1), x2.concat(y2)),
                    c1.mul_ref(c2).mul_ref(&tw),
                );
            }
        }
        out
    }

    /// The coproduct `r`, the algebra map with `r(th_i) = th_i (x) 1 + 1 (x) th_i`.
    pub fn coproduct(&self, x: &FreeElement) -> FreeTensor {
        let mut out = FreeTensor::zero();
        for (w, c) in &x.terms {
            let mut acc = FreeTensor::unit();
            for &i in &w.0 {
                let gen = FreeTensor::simple(FreeElement::theta(i as usize), FreeElement::one())
                    .add(&FreeTensor::simple(
                        FreeElement::one(),
                        FreeElement::theta(i as usize),
                    ));
                acc = self.twisted_tensor_multiply(&acc, &gen);
            }
            out = out.add(&acc.scale(c));
        }
        out
    }

    /// `(th_i, th_i) = 1 / (1 - v_i^-2)`.
    pub fn gen_pair(&self, i: usize) -> RationalFunction {
        let d = self.datum.d(i);
        RationalFunction::one()
            .div_ref(&RationalFunction::one().sub_ref(&self.vt(-2 * d, 0)))
            .expect("1 - v^-2d is nonzero")
    }

    /// Components of `r(w)` whose left factor is a single letter, as
    /// `(letter, remaining word, coefficient)`.
    fn single_left_splits(&self, w: &Word) -> Arc<Vec<(u8, Word, RationalFunction)>> {
        if let Some(hit) = self.split_cache.lock().unwrap().get(w) {
            return hit.clone();
        }
        let r = self.coproduct(&FreeElement::from_word(w.clone()));
        let mut out = Vec::new();
        for ((a, b), c) in &r.terms {
            if a.len() == 1 {
                out.push((a.0[0], b.clone(), c.clone()));
            }
        }
        let out = Arc::new(out);
        self.split_cache
            .lock()
            .unwrap()
            .entry(w.clone())
            .or_insert(out)
            .clone()
    }

    /// The bilinear form on words, by recursion through the coproduct.
    fn pair_words(&self, x: &Word, y: &Word) -> RationalFunction {
        if x.is_empty() && y.is_empty() {
            return RationalFunction::one();
        }
        let rank = self.rank();
        if x.degree(rank) != y.degree(rank) {
            return RationalFunction::zero();
        }
        let key = (x.clone(), y.clone());
        if let Some(hit) = self.pair_cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        // (x, th_j y') = (r(x), th_j (x) y') through the twisted tensor pairing
        let j = y.0[0] as usize;
        let y_rest = Word(y.0[1..].to_vec());
        let dx = x.degree(rank);
        let alpha_j = RootVec::simple(rank, j);
        let rest_deg = dx.sub(&alpha_j);
        let bracket = self
            .datum
            .form(crate::cartan::FormKind::Square, &alpha_j, &rest_deg)
            .expect("rank checked");
        let prefactor = self.vt(0, 2 * bracket).mul_ref(&self.gen_pair(j));
        let mut sum = RationalFunction::zero();
        for (letter, rest, coeff) in self.single_left_splits(x).iter() {
            if *letter as usize == j {
                sum = sum.add_ref(&coeff.mul_ref(&self.pair_words(rest, &y_rest)));
            }
        }
        let out = prefactor.mul_ref(&sum);
        self.pair_cache.lock().unwrap().insert(key, out.clone());
        out
    }

    /// The symmetric bilinear form; inhomogeneous pairs of distinct degrees
    /// pair to zero without evaluation.
    pub fn pairing(&self, x: &FreeElement, y: &FreeElement) -> RationalFunction {
        let rank = self.rank();
        let mut out = RationalFunction::zero();
        for (w1, c1) in &x.terms {
            let d1 = w1.degree(rank);
            for (w2, c2) in &y.terms {
                if d1 != w2.degree(rank) {
                    continue;
                }
                out = out.add_ref(&c1.mul_ref(c2).mul_ref(&self.pair_words(w1, w2)));
            }
        }
        out
    }

    /// Independent evaluation of the form by the one-sided derivative maps;
    /// kept as an oracle against [`FreeAlgebra::pairing`].
    pub fn pairing_via_derivatives(&self, x: &FreeElement, y: &FreeElement) -> RationalFunction {
        let rank = self.rank();
        let mut out = RationalFunction::zero();
        for (w1, c1) in &x.terms {
            let d1 = w1.degree(rank);
            for (w2, c2) in &y.terms {
                if d1 != w2.degree(rank) {
                    continue;
                }
                out = out.add_ref(&c1.mul_ref(c2).mul_ref(&self.pair_words_derivative(w1, w2)));
            }
        }
        out
    }

    fn pair_words_derivative(&self, x: &Word, y: &Word) -> RationalFunction {
        if x.is_empty() && y.is_empty() {
            return RationalFunction::one();
        }
        let rank = self.rank();
        let j = y.0[0] as usize;
        let y_rest = FreeElement::from_word(Word(y.0[1..].to_vec()));
        let alpha_j = RootVec::simple(rank, j);
        let dx = x.degree(rank);
        let rest_deg = dx.sub(&alpha_j);
        let bracket = self
            .datum
            .form(crate::cartan::FormKind::Square, &alpha_j, &rest_deg)
            .expect("rank checked");
        let prefactor = self.vt(0, 2 * bracket).mul_ref(&self.gen_pair(j));
        let der = self.r_map(&FreeElement::from_word(x.clone()), j, Side::Left);
        prefactor.mul_ref(&self.pairing_via_derivatives(&der, &y_rest))
    }

    /// The one-sided derivative maps: `Side::Right` peels generators off the
    /// right end of words, `Side::Left` off the left end.  Degrees drop by
    /// the generator.
    pub fn r_map(&self, x: &FreeElement, i: usize, side: Side) -> FreeElement {
        let mut out = FreeElement::zero();
        for (w, c) in &x.terms {
            out = out.add(&self.r_map_word(w, i, side).scale(c));
        }
        out
    }

    fn r_map_word(&self, w: &Word, i: usize, side: Side) -> FreeElement {
        if w.is_empty() {
            return FreeElement::zero();
        }
        let rank = self.rank();
        let alpha_i = RootVec::simple(rank, i);
        match side {
            Side::Right => {
                // r_i(x th_a) = v^(i.a) t^(<a,i> - <i,a>) r_i(x) th_a + delta_ia x
                let a = *w.0.last().unwrap() as usize;
                let head = Word(w.0[..w.len() - 1].to_vec());
                let alpha_a = RootVec::simple(rank, a);
                let tw = self.vt(
                    self.datum.dot(&alpha_i, &alpha_a),
                    self.datum.antisym(&alpha_a, &alpha_i),
                );
                let mut out = self
                    .r_map_word(&head, i, Side::Right)
                    .multiply(&FreeElement::theta(a))
                    .scale(&tw);
                if a == i {
                    out = out.add(&FreeElement::from_word(head));
                }
                out
            }
            Side::Left => {
                // ir(th_a x) = delta_ia x + v^(i.a) t^(<i,a> - <a,i>) th_a ir(x)
                let a = w.0[0] as usize;
                let tail = Word(w.0[1..].to_vec());
                let alpha_a = RootVec::simple(rank, a);
                let tw = self.vt(
                    self.datum.dot(&alpha_i, &alpha_a),
                    self.datum.antisym(&alpha_i, &alpha_a),
                );
                let mut out = FreeElement::theta(a)
                    .multiply(&self.r_map_word(&tail, i, Side::Left))
                    .scale(&tw);
                if a == i {
                    out = out.add(&FreeElement::from_word(tail));
                }
                out
            }
        }
    }

    /// The quantum Serre element for a pair of distinct generators: the
    /// alternating sum of divided powers `th_i^(p) th_j th_i^(p')` over
    /// `p + p' = 1 - 2(i.j)/(i.i)`.
    pub fn serre_element(&self, i: usize, j: usize) -> Result<FreeElement> {
        if i == j {
            return Err(Error::Domain("Serre elements need distinct indices".into()));
        }
        let d = self.datum.d(i);
        let dot = self.datum.dot_gen(i, j);
        let n = 1 - dot / d; // 1 - 2(i.j)/(i.i), an integer by the datum axioms
        debug_assert!(n >= 1);
        let mut out = FreeElement::zero();
        for p in 0..=n {
            let p2 = n - p;
            // t_i exponent -p(p' - 2<i,j>/(i.i) + 2<j,i>/(i.i)) collapses to
            // the integer -d p p' + p(<i,j> - <j,i>)
            let texp = -d * p * p2 + p * (self.datum.angle_gen(i, j) - self.datum.angle_gen(j, i));
            let sign = if p % 2 == 0 { 1 } else { -1 };
            let coeff = self
                .vt(0, texp)
                .scale_coeff(&num::BigRational::from(num::BigInt::from(sign)));
            let term = self
                .divided_power(i, p as u32)
                .multiply(&FreeElement::theta(j))
                .multiply(&self.divided_power(i, p2 as u32));
            out = out.add(&term.scale(&coeff));
        }
        Ok(out)
    }

    /// `th_i^(n) = th_i^n / [n]!` with the quantum factorial in `(v_i, t_i)`.
    pub fn divided_power(&self, i: usize, n: u32) -> FreeElement {
        let fact = quantum_factorial(n, self.datum.d(i));
        FreeElement::theta(i)
            .pow(n)
            .scale(&fact.inv().expect("quantum factorial is nonzero"))
    }

    /// All words of the given degree in length-lexicographic order.
    pub fn words_of_degree(&self, nu: &RootVec) -> Vec<Word> {
        fn recurse(
            remaining: &mut Vec<i64>,
            current: &mut Vec<u8>,
            total: usize,
            out: &mut Vec<Word>,
        ) {
            if current.len() == total {
                out.push(Word(current.clone()));
                return;
            }
            for i in 0..remaining.len() {
                if remaining[i] > 0 {
                    remaining[i] -= 1;
                    current.push(i as u8);
                    recurse(remaining, current, total, out);
                    current.pop();
                    remaining[i] += 1;
                }
            }
        }
        let total: i64 = nu.0.iter().sum();
        let mut out = Vec::new();
        let mut current = Vec::new();
        let mut remaining = nu.0.clone();
        recurse(&mut remaining, &mut current, total as usize, &mut out);
        out
    }

    /// Gram data and deterministic basis selection for one degree.
    pub fn graded_basis(&self, nu: &RootVec) -> Arc<GradedBasis> {
        if let Some(hit) = self.basis_cache.lock().unwrap().get(&nu.0) {
            return hit.clone();
        }
        let words = self.words_of_degree(nu);
        let n = words.len();
        let mut gram = linalg::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let p = self.pair_words(&words[i], &words[j]);
                gram[i][j] = p.clone();
                gram[j][i] = p;
            }
        }
        // greedy scan: keep a word iff it increases the rank of the
        // principal submatrix
        let mut selected: Vec<usize> = Vec::new();
        for k in 0..n {
            let mut trial = selected.clone();
            trial.push(k);
            let sub: linalg::Matrix = trial
                .iter()
                .map(|&a| trial.iter().map(|&b| gram[a][b].clone()).collect())
                .collect();
            if linalg::rank(&sub) == trial.len() {
                selected = trial;
            }
        }
        let sub: linalg::Matrix = selected
            .iter()
            .map(|&a| selected.iter().map(|&b| gram[a][b].clone()).collect())
            .collect();
        let inv_selected = if selected.is_empty() {
            Vec::new()
        } else {
            linalg::inverse(&sub).expect("selected Gram block is nonsingular")
        };
        let index_of = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        let gb = Arc::new(GradedBasis {
            degree: nu.clone(),
            radical_dim: n - selected.len(),
            words,
            gram,
            selected,
            inv_selected,
            index_of,
        });
        self.basis_cache
            .lock()
            .unwrap()
            .entry(nu.0.clone())
            .or_insert(gb)
            .clone()
    }

    /// Expansion of a single word over the selected basis of its degree,
    /// modulo the radical.
    pub fn reduce_word(&self, w: &Word) -> Arc<Vec<(Word, RationalFunction)>> {
        if let Some(hit) = self.reduce_cache.lock().unwrap().get(w) {
            return hit.clone();
        }
        let nu = w.degree(self.rank());
        let gb = self.graded_basis(&nu);
        let wi = gb.index_of[w];
        // rhs_k = (w, b_k); coefficients = G_SS^-1 rhs
        let rhs: Vec<RationalFunction> = gb
            .selected
            .iter()
            .map(|&k| gb.gram[wi][k].clone())
            .collect();
        let coeffs = linalg::mat_vec(&gb.inv_selected, &rhs);
        let out: Vec<(Word, RationalFunction)> = gb
            .selected
            .iter()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&k, c)| (gb.words[k].clone(), c))
            .collect();
        let out = Arc::new(out);
        self.reduce_cache
            .lock()
            .unwrap()
            .entry(w.clone())
            .or_insert(out)
            .clone()
    }

    /// Reduce an arbitrary element to the selected bases, degree by degree.
    pub fn reduce(&self, x: &FreeElement) -> FreeElement {
        let mut out = FreeElement::zero();
        for (w, c) in &x.terms {
            for (b, k) in self.reduce_word(w).iter() {
                out.insert_add(b.clone(), k.mul_ref(c));
            }
        }
        out
    }
}

/// Which side the derivative map peels from.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}
