//! Exact arithmetic in Q(v,t).
//!
//! [`LaurentPoly`] is a Laurent polynomial in the two indeterminates `v` and
//! `t` with arbitrary-precision rational coefficients; [`RationalFunction`]
//! is a quotient of two of them kept in a canonical form, so that structural
//! equality decides mathematical equality.  The quantum integers
//! `[n] = ((vt)^n - (vt^-1)^-n) / (vt - (vt^-1)^-1)` and their factorials
//! live here as well.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::{Error, Result};

pub type Coeff = BigRational;

fn crat(n: i64) -> Coeff {
    BigRational::from(BigInt::from(n))
}

/// Laurent polynomial in v and t.  Terms are keyed by
/// `(v-exponent, t-exponent)`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<(i64, i64), Coeff>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(Coeff::one(), 0, 0)
    }

    pub fn constant(c: Coeff) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::monomial(crat(n), 0, 0)
    }

    /// The monomial `c * v^a * t^b`.
    pub fn monomial(c: Coeff, a: i64, b: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        LaurentPoly { terms }
    }

    pub fn v_pow(a: i64) -> Self {
        Self::monomial(Coeff::one(), a, 0)
    }

    pub fn t_pow(b: i64) -> Self {
        Self::monomial(Coeff::one(), 0, b)
    }

    /// `v^a * t^b` in one call.
    pub fn vt_pow(a: i64, b: i64) -> Self {
        Self::monomial(Coeff::one(), a, b)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&(0, 0)).map_or(false, |c| c.is_one())
    }

    /// True when the polynomial is a single term.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &Coeff)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert_add(&mut self, key: (i64, i64), c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert_add(*k, c.clone());
        }
        out
    }

    pub fn neg_ref(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                out.insert_add((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(k, x)| (*k, x * c)).collect(),
        }
    }

    /// Multiply by the monomial `v^a * t^b`.
    pub fn shift(&self, a: i64, b: i64) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|((x, y), c)| ((x + a, y + b), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = LaurentPoly::one();
        for _ in 0..n {
            out = out.mul_ref(self);
        }
        out
    }

    /// Componentwise minimum of the exponents, `(0, 0)` for the zero
    /// polynomial.
    pub fn min_exponents(&self) -> (i64, i64) {
        let mut mv = i64::MAX;
        let mut mt = i64::MAX;
        for (a, b) in self.terms.keys() {
            mv = mv.min(*a);
            mt = mt.min(*b);
        }
        if self.terms.is_empty() {
            (0, 0)
        } else {
            (mv, mt)
        }
    }

    /// Substitute `t := 1`.
    pub fn specialize_t_one(&self) -> Self {
        let mut out = LaurentPoly::zero();
        for ((a, _), c) in &self.terms {
            out.insert_add((*a, 0), c.clone());
        }
        out
    }

    /// The lexicographically least term (by `(v-exp, t-exp)`).
    pub fn lex_least(&self) -> Option<(&(i64, i64), &Coeff)> {
        self.terms.iter().next()
    }
}

// ---------------------------------------------------------------------------
// Bivariate gcd.  Polynomials with nonnegative exponents are viewed as
// elements of Q[t][v]; the gcd uses the primitive polynomial remainder
// sequence over the Euclidean ring Q[t].

/// Dense univariate polynomial in t over Q, lowest degree first.
type UniPoly = Vec<Coeff>;

fn uni_trim(p: &mut UniPoly) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn uni_is_zero(p: &UniPoly) -> bool {
    p.is_empty()
}

fn uni_mul(a: &UniPoly, b: &UniPoly) -> UniPoly {
    if uni_is_zero(a) || uni_is_zero(b) {
        return vec![];
    }
    let mut out = vec![Coeff::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    uni_trim(&mut out);
    out
}

fn uni_sub(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut out = a.clone();
    if out.len() < b.len() {
        out.resize(b.len(), Coeff::zero());
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    uni_trim(&mut out);
    out
}

/// Quotient and remainder in Q[t].
fn uni_divmod(a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly) {
    assert!(!uni_is_zero(b), "univariate division by zero");
    let mut r = a.clone();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![Coeff::zero(); r.len() - b.len() + 1];
    let lead = b.last().unwrap().clone();
    while r.len() >= b.len() && !uni_is_zero(&r) {
        let d = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        q[d] = c.clone();
        for (i, y) in b.iter().enumerate() {
            let v = &r[i + d] - y * &c;
            r[i + d] = v;
        }
        uni_trim(&mut r);
    }
    uni_trim(&mut q);
    (q, r)
}

/// Monic gcd in Q[t].
fn uni_gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    while !uni_is_zero(&y) {
        let (_, r) = uni_divmod(&x, &y);
        x = y;
        y = r;
    }
    if let Some(lead) = x.last().cloned() {
        for c in &mut x {
            *c = &*c / &lead;
        }
    }
    x
}

fn uni_exact_div(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let (q, r) = uni_divmod(a, b);
    debug_assert!(uni_is_zero(&r), "inexact univariate division");
    q
}

/// Sparse polynomial in v with coefficients in Q[t]; keys are v-degrees >= 0.
type Bivar = BTreeMap<i64, UniPoly>;

fn bivar_from(p: &LaurentPoly) -> Bivar {
    let mut out: Bivar = BTreeMap::new();
    for ((a, b), c) in &p.terms {
        debug_assert!(*a >= 0 && *b >= 0);
        let e = out.entry(*a).or_default();
        let idx = *b as usize;
        if e.len() <= idx {
            e.resize(idx + 1, Coeff::zero());
        }
        e[idx] += c;
    }
    out.retain(|_, u| {
        uni_trim(u);
        !uni_is_zero(u)
    });
    out
}

fn bivar_to_poly(b: &Bivar) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (a, u) in b {
        for (i, c) in u.iter().enumerate() {
            out.insert_add((*a, i as i64), c.clone());
        }
    }
    out
}

fn bivar_is_zero(b: &Bivar) -> bool {
    b.is_empty()
}

fn bivar_degree(b: &Bivar) -> i64 {
    b.keys().next_back().copied().unwrap_or(-1)
}

fn bivar_lead(b: &Bivar) -> UniPoly {
    b.values().next_back().cloned().unwrap_or_default()
}

fn bivar_scale_uni(b: &Bivar, u: &UniPoly) -> Bivar {
    if uni_is_zero(u) {
        return BTreeMap::new();
    }
    b.iter().map(|(k, x)| (*k, uni_mul(x, u))).collect()
}

fn bivar_sub(a: &Bivar, b: &Bivar) -> Bivar {
    let mut out = a.clone();
    for (k, u) in b {
        let e = out.entry(*k).or_default();
        *e = uni_sub(e, u);
        if uni_is_zero(e) {
            out.remove(k);
        }
    }
    out
}

fn bivar_shift_v(b: &Bivar, d: i64) -> Bivar {
    b.iter().map(|(k, u)| (k + d, u.clone())).collect()
}

/// Content in Q[t]: monic gcd of the coefficients.
fn bivar_content(b: &Bivar) -> UniPoly {
    let mut g: UniPoly = vec![];
    for u in b.values() {
        g = uni_gcd(&g, u);
        if g.len() == 1 {
            break;
        }
    }
    g
}

fn bivar_div_content(b: &Bivar, c: &UniPoly) -> Bivar {
    b.iter().map(|(k, u)| (*k, uni_exact_div(u, c))).collect()
}

/// Pseudo-remainder of a by b in Q[t][v].
fn bivar_prem(a: &Bivar, b: &Bivar) -> Bivar {
    let db = bivar_degree(b);
    let lb = bivar_lead(b);
    let mut r = a.clone();
    while !bivar_is_zero(&r) && bivar_degree(&r) >= db {
        let dr = bivar_degree(&r);
        let lr = bivar_lead(&r);
        // lb * r - lr * v^(dr-db) * b
        r = bivar_sub(
            &bivar_scale_uni(&r, &lb),
            &bivar_shift_v(&bivar_scale_uni(b, &lr), dr - db),
        );
    }
    r
}

/// Gcd in Q[v,t] of two polynomials with nonnegative exponents, normalised
/// so the leading coefficient (in v, then in t) is 1.
fn bivar_gcd(a: &Bivar, b: &Bivar) -> Bivar {
    if bivar_is_zero(a) {
        return b.clone();
    }
    if bivar_is_zero(b) {
        return a.clone();
    }
    let ca = bivar_content(a);
    let cb = bivar_content(b);
    let cg = uni_gcd(&ca, &cb);
    let mut x = bivar_div_content(a, &ca);
    let mut y = bivar_div_content(b, &cb);
    if bivar_degree(&x) < bivar_degree(&y) {
        std::mem::swap(&mut x, &mut y);
    }
    while !bivar_is_zero(&y) {
        let r = bivar_prem(&x, &y);
        x = y;
        y = if bivar_is_zero(&r) {
            r
        } else {
            let c = bivar_content(&r);
            bivar_div_content(&r, &c)
        };
    }
    let mut g = bivar_scale_uni(&x, &cg);
    // normalise: divide by content, then make monic in the lead
    let c = bivar_content(&g);
    g = bivar_div_content(&g, &c);
    g
}

/// Exact division in Q[t][v]; panics if the division is not exact.
fn bivar_exact_div(a: &Bivar, b: &Bivar) -> Bivar {
    let mut r = a.clone();
    let mut q: Bivar = BTreeMap::new();
    let db = bivar_degree(b);
    let lb = bivar_lead(b);
    while !bivar_is_zero(&r) {
        let dr = bivar_degree(&r);
        debug_assert!(dr >= db, "inexact bivariate division");
        let lr = bivar_lead(&r);
        let qc = uni_exact_div(&lr, &lb);
        let d = dr - db;
        if !uni_is_zero(&qc) {
            q.insert(d, qc.clone());
        }
        r = bivar_sub(&r, &bivar_shift_v(&bivar_scale_uni(b, &qc), d));
    }
    q
}

// ---------------------------------------------------------------------------

/// Element of Q(v,t) in canonical form: the gcd of numerator and denominator
/// is removed, the denominator has nonnegative exponents with componentwise
/// minimum zero, and its lexicographically least term has coefficient one.
/// Structural equality therefore decides equality in the field.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        RationalFunction { num: LaurentPoly::one(), den: LaurentPoly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        RationalFunction { num: LaurentPoly::from_int(n), den: LaurentPoly::one() }
    }

    pub fn from_coeff(c: Coeff) -> Self {
        RationalFunction { num: LaurentPoly::constant(c), den: LaurentPoly::one() }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RationalFunction { num: p, den: LaurentPoly::one() }
    }

    /// `v^a * t^b`.
    pub fn vt_pow(a: i64, b: i64) -> Self {
        Self::from_poly(LaurentPoly::vt_pow(a, b))
    }

    pub fn v() -> Self {
        Self::vt_pow(1, 0)
    }

    pub fn t() -> Self {
        Self::vt_pow(0, 1)
    }

    /// Build `num / den`, normalising to canonical form.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: LaurentPoly, den: LaurentPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        // Clear Laurent shifts: carry the monomial part into the numerator.
        let (nv, nt) = num.min_exponents();
        let (dv, dt) = den.min_exponents();
        let n0 = num.shift(-nv, -nt);
        let d0 = den.shift(-dv, -dt);
        let (shift_v, shift_t) = (nv - dv, nt - dt);

        // Fast path: monomial denominator needs no gcd.
        let (mut n1, mut d1);
        if d0.is_one() || d0.is_monomial() {
            // after the shift a monomial denominator is a constant
            n1 = n0;
            d1 = d0;
        } else if n0.is_monomial() {
            n1 = n0;
            d1 = d0;
        } else {
            let a = bivar_from(&n0);
            let b = bivar_from(&d0);
            let g = bivar_gcd(&a, &b);
            if bivar_degree(&g) > 0 || bivar_lead(&g).len() > 1 {
                n1 = bivar_to_poly(&bivar_exact_div(&a, &g));
                d1 = bivar_to_poly(&bivar_exact_div(&b, &g));
            } else {
                n1 = n0;
                d1 = d0;
            }
        }
        // Lead normalisation: the denominator's lexicographically least term
        // gets coefficient 1.
        let c = d1.lex_least().map(|(_, c)| c.clone()).unwrap();
        if !c.is_one() {
            let inv = Coeff::one() / c;
            n1 = n1.scale(&inv);
            d1 = d1.scale(&inv);
        }
        RationalFunction { num: n1.shift(shift_v, shift_t), den: d1 }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::normalized(self.num.add_ref(&other.num), self.den.clone());
        }
        Self::normalized(
            self.num.mul_ref(&other.den).add_ref(&other.num.mul_ref(&self.den)),
            self.den.mul_ref(&other.den),
        )
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> Self {
        RationalFunction { num: self.num.neg_ref(), den: self.den.clone() }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::normalized(self.num.mul_ref(&other.num), self.den.mul_ref(&other.den))
    }

    pub fn div_ref(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(
            self.num.mul_ref(&other.den),
            self.den.mul_ref(&other.num),
        ))
    }

    pub fn inv(&self) -> Result<Self> {
        Self::one().div_ref(self)
    }

    pub fn scale_coeff(&self, c: &Coeff) -> Self {
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, n: i32) -> Result<Self> {
        let p = self.pow_abs(n.unsigned_abs());
        if n < 0 {
            p.inv()
        } else {
            Ok(p)
        }
    }

    fn pow_abs(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = out.mul_ref(self);
        }
        out
    }

    /// Substitute `t := 1`; fails when the denominator vanishes there.
    pub fn specialize_t_one(&self) -> Result<Self> {
        let den = self.den.specialize_t_one();
        if den.is_zero() {
            return Err(Error::PoleAtTOne);
        }
        Ok(Self::normalized(self.num.specialize_t_one(), den))
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: Self) -> RationalFunction {
        self.add_ref(rhs)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: Self) -> RationalFunction {
        self.sub_ref(rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: Self) -> RationalFunction {
        self.mul_ref(rhs)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: Self) -> RationalFunction {
        self.div_ref(rhs).expect("division by zero")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        self.neg_ref()
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: Self) -> RationalFunction {
        self.add_ref(&rhs)
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: Self) -> RationalFunction {
        self.sub_ref(&rhs)
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: Self) -> RationalFunction {
        self.mul_ref(&rhs)
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        self.neg_ref()
    }
}

// ---------------------------------------------------------------------------
// Quantum integers.

/// The quantum integer `[n]` for the pair `(v_i, t_i) = (v^d, t^d)`:
/// `((v_i t_i)^n - (v_i t_i^-1)^-n) / (v_i t_i - (v_i t_i^-1)^-1)`.
pub fn quantum_integer(n: u32, d: i64) -> RationalFunction {
    assert!(d >= 1, "the symmetrising exponent must be positive");
    let n = n as i64;
    // numerator: (vt)^dn - v^-dn t^dn ; denominator: v^d t^d - v^-d t^d
    let num = LaurentPoly::vt_pow(d * n, d * n).sub_ref(&LaurentPoly::vt_pow(-d * n, d * n));
    let den = LaurentPoly::vt_pow(d, d).sub_ref(&LaurentPoly::vt_pow(-d, d));
    RationalFunction::normalized(num, den)
}

/// `[n]! = [1][2]...[n]`, with the empty product equal to 1.
pub fn quantum_factorial(n: u32, d: i64) -> RationalFunction {
    let mut out = RationalFunction::one();
    for k in 1..=n {
        out = out.mul_ref(&quantum_integer(k, d));
    }
    out
}

/// The classical one-parameter quantum integer `(v^n - v^-n)/(v - v^-1)`.
pub fn classical_quantum_integer(n: u32) -> RationalFunction {
    let n = n as i64;
    if n == 0 {
        return RationalFunction::zero();
    }
    let num = LaurentPoly::vt_pow(n, 0).sub_ref(&LaurentPoly::vt_pow(-n, 0));
    let den = LaurentPoly::vt_pow(1, 0).sub_ref(&LaurentPoly::vt_pow(-1, 0));
    RationalFunction::normalized(num, den)
}

// ---------------------------------------------------------------------------
// Rendering.  The grammar is `v`, `t`, `^` with integer (possibly negative)
// exponents, `*`, `+`, `-`, `/` and parentheses; the CLI parser reuses it.

fn fmt_coeff(c: &Coeff) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_term(key: &(i64, i64), c: &Coeff, lead: bool) -> String {
    let (a, b) = *key;
    let mut factors: Vec<String> = Vec::new();
    let abs = c.abs();
    let unit_coeff = abs.is_one();
    if !unit_coeff || (a == 0 && b == 0) {
        factors.push(fmt_coeff(&abs));
    }
    if a != 0 {
        factors.push(if a == 1 { "v".into() } else { format!("v^{}", a) });
    }
    if b != 0 {
        factors.push(if b == 1 { "t".into() } else { format!("t^{}", b) });
    }
    let body = factors.join("*");
    if lead {
        if c.is_negative() {
            format!("-{}", body)
        } else {
            body
        }
    } else if c.is_negative() {
        format!(" - {}", body)
    } else {
        format!(" + {}", body)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            write!(f, "{}", fmt_term(k, c, i == 0))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() > 1 {
            write!(f, "({})/({})", self.num, self.den)
        } else {
            write!(f, "{}/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v() -> RationalFunction {
        RationalFunction::v()
    }

    fn t() -> RationalFunction {
        RationalFunction::t()
    }

    fn vi(a: i64, b: i64) -> RationalFunction {
        RationalFunction::vt_pow(a, b)
    }

    #[test]
    fn identity_division() {
        let q = v().div_ref(&v()).unwrap();
        assert!(q.is_one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(v().div_ref(&RationalFunction::zero()).is_err());
    }

    #[test]
    fn difference_of_squares() {
        // (v - v^-1)(v + v^-1) = v^2 - v^-2, expanded by hand
        let a = &v() - &vi(-1, 0);
        let b = &v() + &vi(-1, 0);
        let expect = &vi(2, 0) - &vi(-2, 0);
        assert_eq!(&a * &b, expect);
    }

    #[test]
    fn additive_inverse() {
        let x = (&v() + &t()).div_ref(&(&v() - &t())).unwrap();
        assert!(x.add_ref(&x.neg_ref()).is_zero());
    }

    #[test]
    fn canonical_form_cancels() {
        // (v^2 - 1)/(v - 1) = v + 1
        let num = LaurentPoly::vt_pow(2, 0).sub_ref(&LaurentPoly::one());
        let den = LaurentPoly::vt_pow(1, 0).sub_ref(&LaurentPoly::one());
        let q = RationalFunction::new(num, den).unwrap();
        let expect = &v() + &RationalFunction::one();
        assert_eq!(q, expect);
    }

    #[test]
    fn canonicalization_is_idempotent() {
        let x = (&(&v() - &vi(-1, 0)) * &t())
            .div_ref(&(&vi(2, 2) - &vi(0, 2)))
            .unwrap();
        let renorm = RationalFunction::new(x.num.clone(), x.den.clone()).unwrap();
        assert_eq!(x, renorm);
    }

    #[test]
    fn quantum_integer_small_values() {
        // [0] = 0, [1] = 1, [2] = t(v + v^-1) in symmetric type
        assert!(quantum_integer(0, 1).is_zero());
        assert!(quantum_integer(1, 1).is_one());
        let expect = &t() * &(&v() + &vi(-1, 0));
        assert_eq!(quantum_integer(2, 1), expect);
    }

    #[test]
    fn quantum_factorial_values() {
        assert!(quantum_factorial(0, 1).is_one());
        let expect2 = &t() * &(&v() + &vi(-1, 0));
        assert_eq!(quantum_factorial(2, 1), expect2);
        let expect3 = expect2.mul_ref(&quantum_integer(3, 1));
        assert_eq!(quantum_factorial(3, 1), expect3);
    }

    #[test]
    fn quantum_integer_specializes_to_classical() {
        for n in 0..=8 {
            assert_eq!(
                quantum_integer(n, 1).specialize_t_one().unwrap(),
                classical_quantum_integer(n),
                "mismatch at n = {}",
                n
            );
        }
    }

    #[test]
    fn specialize_t_one_values() {
        let x = &t() * &(&v() + &vi(-1, 0));
        assert_eq!(x.specialize_t_one().unwrap(), &v() + &vi(-1, 0));
        assert!(vi(0, 2).specialize_t_one().unwrap().is_one());
        // 1/(t - 1) has a pole at t = 1
        let pole = RationalFunction::one()
            .div_ref(&(&t() - &RationalFunction::one()))
            .unwrap();
        assert!(pole.specialize_t_one().is_err());
    }

    #[test]
    fn display_round_trips_basic_shapes() {
        assert_eq!(format!("{}", v()), "v");
        assert_eq!(format!("{}", vi(-2, 1)), "v^-2*t");
        let x = &v() - &vi(-1, 0);
        assert_eq!(format!("{}", x), "v - v^-1");
    }
}
