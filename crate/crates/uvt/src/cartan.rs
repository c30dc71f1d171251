//! Cartan data and the combinatorics attached to them.
//!
//! A [`CartanDatum`] stores the integer matrix that refines a Cartan datum
//! into the two non-symmetric bilinear forms `<i,j>` and `[i,j]` together
//! with their symmetrisation `i.j`.  On top of it live the root and weight
//! lattices, positive roots and the half sum `rho`, Weyl groups as explicit
//! reflection tables, Freudenthal weight multiplicities, the kernel of the
//! antisymmetrised form, and the parity lift used for nonzero-degree central
//! elements.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::{Error, Result};

fn rat(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

/// Integer vector over the simple roots: an element of Z[I] (or N[I] / Q
/// depending on context).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RootVec(pub Vec<i64>);

impl RootVec {
    pub fn zero(rank: usize) -> Self {
        RootVec(vec![0; rank])
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        RootVec(v)
    }

    pub fn tr(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        RootVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        RootVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        RootVec(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Self {
        RootVec(self.0.iter().map(|a| a * k).collect())
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn to_weight(&self) -> Weight {
        Weight(self.0.iter().map(|&x| rat(x)).collect())
    }
}

/// Weight with rational coordinates over the simple-root basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Weight(pub Vec<BigRational>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![BigRational::zero(); rank])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Weight(v.iter().map(|&x| rat(x)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn sub_root(&self, nu: &RootVec) -> Self {
        Weight(self.0.iter().zip(&nu.0).map(|(a, b)| a - rat(*b)).collect())
    }

    pub fn add_root(&self, nu: &RootVec) -> Self {
        Weight(self.0.iter().zip(&nu.0).map(|(a, b)| a + rat(*b)).collect())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    /// The coordinates as integers, when the weight lies in the root lattice.
    pub fn to_root_vec(&self) -> Option<RootVec> {
        let mut out = Vec::with_capacity(self.0.len());
        for c in &self.0 {
            if !c.denom().is_one() {
                return None;
            }
            let n = c.numer();
            out.push(i64::try_from(n.clone()).ok()?);
        }
        Some(RootVec(out))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }
}

/// The three bilinear forms attached to the matrix.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FormKind {
    /// `<i,j>`, the matrix entries themselves.
    Angle,
    /// `[i,j] = 2 delta_ij d_i - <i,j>`.
    Square,
    /// `i.j = <i,j> + <j,i>`, the symmetrisation.
    Dot,
}

/// A Cartan datum refined by an integer matrix.
#[derive(Clone, Debug)]
pub struct CartanDatum {
    rank: usize,
    omega: Vec<Vec<i64>>,
    label: String,
}

impl CartanDatum {
    /// Upper-triangular preset for type A: diagonal 1, `-1` just above the
    /// diagonal, zero elsewhere.
    pub fn type_a(n: usize) -> CartanDatum {
        assert!(n >= 1, "rank must be positive");
        let mut omega = vec![vec![0i64; n]; n];
        for i in 0..n {
            omega[i][i] = 1;
            if i + 1 < n {
                omega[i][i + 1] = -1;
            }
        }
        CartanDatum { rank: n, omega, label: format!("A{}", n) }
    }

    /// A user-supplied matrix, validated against the defining conditions.
    pub fn from_omega(omega: Vec<Vec<i64>>) -> Result<CartanDatum> {
        let rank = omega.len();
        if rank == 0 || omega.iter().any(|r| r.len() != rank) {
            return Err(Error::InvalidCartan("matrix must be square and nonempty".into()));
        }
        let mut gcd_diag: i64 = 0;
        for i in 0..rank {
            if omega[i][i] <= 0 {
                return Err(Error::InvalidCartan(format!(
                    "diagonal entry ({},{}) must be positive",
                    i + 1,
                    i + 1
                )));
            }
            gcd_diag = gcd(gcd_diag, omega[i][i]);
            for j in 0..rank {
                if i != j {
                    if omega[i][j] > 0 {
                        return Err(Error::InvalidCartan(format!(
                            "off-diagonal entry ({},{}) must be nonpositive",
                            i + 1,
                            j + 1
                        )));
                    }
                    let s = omega[i][j] + omega[j][i];
                    if s % omega[i][i] != 0 || s / omega[i][i] > 0 {
                        return Err(Error::InvalidCartan(format!(
                            "symmetrisation condition fails at ({},{})",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        if gcd_diag != 1 {
            return Err(Error::InvalidCartan(
                "the gcd of the diagonal entries must be 1".into(),
            ));
        }
        Ok(CartanDatum { rank, omega, label: "custom".into() })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn omega(&self) -> &Vec<Vec<i64>> {
        &self.omega
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// True when every diagonal entry is 1; instantiating any algebra
    /// requires this.
    pub fn is_symmetric_type(&self) -> bool {
        (0..self.rank).all(|i| self.omega[i][i] == 1)
    }

    /// `d_i = (i.i)/2`, the symmetrising exponent of the i-th generator.
    pub fn d(&self, i: usize) -> i64 {
        self.omega[i][i]
    }

    // -- the three forms, on generators and extended bilinearly ------------

    pub fn angle_gen(&self, i: usize, j: usize) -> i64 {
        self.omega[i][j]
    }

    pub fn square_gen(&self, i: usize, j: usize) -> i64 {
        2 * if i == j { self.omega[i][i] } else { 0 } - self.omega[i][j]
    }

    pub fn dot_gen(&self, i: usize, j: usize) -> i64 {
        self.omega[i][j] + self.omega[j][i]
    }

    fn bilinear<F: Fn(usize, usize) -> i64>(&self, f: F, a: &RootVec, b: &RootVec) -> i64 {
        let mut s = 0;
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                if y != 0 {
                    s += x * y * f(i, j);
                }
            }
        }
        s
    }

    pub fn form(&self, kind: FormKind, a: &RootVec, b: &RootVec) -> Result<i64> {
        if a.0.len() != self.rank || b.0.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: a.0.len().max(b.0.len()) });
        }
        Ok(match kind {
            FormKind::Angle => self.bilinear(|i, j| self.angle_gen(i, j), a, b),
            FormKind::Square => self.bilinear(|i, j| self.square_gen(i, j), a, b),
            FormKind::Dot => self.bilinear(|i, j| self.dot_gen(i, j), a, b),
        })
    }

    pub fn angle(&self, a: &RootVec, b: &RootVec) -> i64 {
        self.bilinear(|i, j| self.angle_gen(i, j), a, b)
    }

    pub fn dot(&self, a: &RootVec, b: &RootVec) -> i64 {
        self.bilinear(|i, j| self.dot_gen(i, j), a, b)
    }

    /// `<a,b> - <b,a>`, the antisymmetrised angle form.
    pub fn antisym(&self, a: &RootVec, b: &RootVec) -> i64 {
        self.angle(a, b) - self.angle(b, a)
    }

    // -- rational extensions ------------------------------------------------

    fn bilinear_w<F: Fn(usize, usize) -> i64>(&self, f: F, a: &Weight, b: &Weight) -> BigRational {
        let mut s = BigRational::zero();
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if !y.is_zero() {
                    s += x * y * rat(f(i, j));
                }
            }
        }
        s
    }

    pub fn dot_w(&self, a: &Weight, b: &Weight) -> BigRational {
        self.bilinear_w(|i, j| self.dot_gen(i, j), a, b)
    }

    pub fn angle_w(&self, a: &Weight, b: &Weight) -> BigRational {
        self.bilinear_w(|i, j| self.angle_gen(i, j), a, b)
    }

    /// `<a,b> - <b,a>` for rational arguments.
    pub fn antisym_w(&self, a: &Weight, b: &Weight) -> BigRational {
        self.angle_w(a, b) - self.angle_w(b, a)
    }

    /// `lambda . alpha_i` as a rational number.
    pub fn dot_simple(&self, lambda: &Weight, i: usize) -> BigRational {
        let mut s = BigRational::zero();
        for (j, x) in lambda.0.iter().enumerate() {
            s += x * rat(self.dot_gen(j, i));
        }
        s
    }

    /// The Cartan pairing `2 (lambda . alpha_i) / (alpha_i . alpha_i)`.
    pub fn cartan_pairing(&self, lambda: &Weight, i: usize) -> BigRational {
        self.dot_simple(lambda, i) * rat(2) / rat(self.dot_gen(i, i))
    }

    /// Membership in the weight lattice.
    pub fn in_weight_lattice(&self, lambda: &Weight) -> bool {
        (0..self.rank).all(|i| self.cartan_pairing(lambda, i).denom().is_one())
    }

    pub fn is_dominant(&self, lambda: &Weight) -> bool {
        (0..self.rank).all(|i| !self.cartan_pairing(lambda, i).is_negative())
    }

    /// Simple reflection acting on a weight.
    pub fn reflect(&self, i: usize, lambda: &Weight) -> Weight {
        let c = self.cartan_pairing(lambda, i);
        let mut out = lambda.clone();
        out.0[i] -= c;
        out
    }

    pub fn reflect_root(&self, i: usize, beta: &RootVec) -> RootVec {
        let c = 2 * self.dot(beta, &RootVec::simple(self.rank, i)) / self.dot_gen(i, i);
        let mut out = beta.clone();
        out.0[i] -= c;
        out
    }

    // -- roots, rho, Weyl ---------------------------------------------------

    /// All positive roots, by closure of the simple roots under reflections.
    pub fn positive_roots(&self) -> Result<Vec<RootVec>> {
        let mut seen: std::collections::BTreeSet<RootVec> = Default::default();
        let mut queue: VecDeque<RootVec> = VecDeque::new();
        for i in 0..self.rank {
            let s = RootVec::simple(self.rank, i);
            seen.insert(s.clone());
            queue.push_back(s);
        }
        let bound = 10_000;
        while let Some(beta) = queue.pop_front() {
            for i in 0..self.rank {
                let r = self.reflect_root(i, &beta);
                if !seen.contains(&r) {
                    if seen.len() > bound {
                        return Err(Error::NotFiniteType(
                            "root closure exceeded the configured bound".into(),
                        ));
                    }
                    seen.insert(r.clone());
                    queue.push_back(r);
                }
            }
        }
        Ok(seen.into_iter().filter(|b| b.is_nonneg() && !b.is_zero()).collect())
    }

    /// The half sum of the positive roots.
    pub fn rho(&self) -> Result<Weight> {
        let mut sum = Weight::zero(self.rank);
        for beta in self.positive_roots()? {
            sum = sum.add(&beta.to_weight());
        }
        Ok(sum.scale(&(BigRational::one() / rat(2))))
    }

    /// Enumerate the Weyl group as matrices acting on root coordinates.
    pub fn weyl_group(&self) -> Result<WeylGroup> {
        let n = self.rank;
        let mut gens: Vec<Vec<Vec<i64>>> = Vec::with_capacity(n);
        for i in 0..n {
            // sigma_i(alpha_j) = alpha_j - c_ij alpha_i
            let mut m = vec![vec![0i64; n]; n];
            for j in 0..n {
                m[j][j] = 1;
            }
            for j in 0..n {
                let c = 2 * self.dot_gen(j, i) / self.dot_gen(i, i);
                m[i][j] -= c;
            }
            gens.push(m);
        }
        let id: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        let mut index: HashMap<Vec<Vec<i64>>, usize> = HashMap::new();
        let mut elements = vec![id.clone()];
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        index.insert(id, 0);
        let mut queue = VecDeque::from([0usize]);
        let bound = 2_000_000;
        while let Some(e) = queue.pop_front() {
            for (i, g) in gens.iter().enumerate() {
                let prod = mat_mul_i64(g, &elements[e]);
                if !index.contains_key(&prod) {
                    if elements.len() >= bound {
                        return Err(Error::NotFiniteType(
                            "Weyl enumeration exceeded the configured bound".into(),
                        ));
                    }
                    let mut w = words[e].clone();
                    w.insert(0, i);
                    index.insert(prod.clone(), elements.len());
                    elements.push(prod);
                    words.push(w);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        Ok(WeylGroup { rank: n, elements, words })
    }

    /// The antidominant representative `w0(lambda)` of the orbit.
    pub fn antidominant(&self, lambda: &Weight) -> Weight {
        let mut mu = lambda.clone();
        loop {
            let mut moved = false;
            for i in 0..self.rank {
                if self.cartan_pairing(&mu, i).is_positive() {
                    mu = self.reflect(i, &mu);
                    moved = true;
                }
            }
            if !moved {
                return mu;
            }
        }
    }

    pub fn dominant(&self, lambda: &Weight) -> Weight {
        self.antidominant(&lambda.neg()).neg()
    }

    // -- Freudenthal --------------------------------------------------------

    /// Weight multiplicities of the simple highest-weight module, by the
    /// Freudenthal recursion.  Requires a dominant integral highest weight.
    pub fn weight_multiplicities(&self, lambda: &Weight) -> Result<BTreeMap<Weight, u64>> {
        if !self.in_weight_lattice(lambda) || !self.is_dominant(lambda) {
            return Err(Error::Domain(
                "weight multiplicities need a dominant integral highest weight".into(),
            ));
        }
        let positive = self.positive_roots()?;
        let rho = self.rho()?;
        let lowest = self.antidominant(lambda);
        let span = lambda.sub(&lowest).to_root_vec().ok_or_else(|| {
            Error::Domain("highest minus lowest weight must lie in the root lattice".into())
        })?;
        let depth = span.tr();
        debug_assert!(depth >= 0);

        let lam_rho = lambda.add(&rho);
        let top_norm = self.dot_w(&lam_rho, &lam_rho);

        let mut mults: BTreeMap<Weight, BigRational> = BTreeMap::new();
        mults.insert(lambda.clone(), BigRational::one());

        // iterate over nu in N[I] by increasing height
        let mut layer: Vec<RootVec> = vec![RootVec::zero(self.rank)];
        for _ in 0..depth {
            let mut next: std::collections::BTreeSet<RootVec> = Default::default();
            for nu in &layer {
                for i in 0..self.rank {
                    let mut up = nu.clone();
                    up.0[i] += 1;
                    next.insert(up);
                }
            }
            layer = next.into_iter().collect();
            for nu in &layer {
                let mu = lambda.sub_root(nu);
                let mu_rho = mu.add(&rho);
                let denom = &top_norm - self.dot_w(&mu_rho, &mu_rho);
                if denom.is_zero() || denom.is_negative() {
                    continue;
                }
                let mut num = BigRational::zero();
                for beta in &positive {
                    let bw = beta.to_weight();
                    let mut k = 1i64;
                    loop {
                        let up = mu.add(&bw.scale(&rat(k)));
                        match mults.get(&up) {
                            Some(m) if !m.is_zero() => {
                                num += m * self.dot_w(&up, &bw);
                            }
                            Some(_) => {}
                            None => break,
                        }
                        k += 1;
                    }
                }
                let m = num * rat(2) / denom;
                if !m.is_zero() {
                    mults.insert(mu.clone(), m);
                }
            }
        }

        let mut out = BTreeMap::new();
        for (w, m) in mults {
            if m.is_zero() {
                continue;
            }
            debug_assert!(m.denom().is_one() && !m.is_negative());
            let n = u64::try_from(m.numer().clone())
                .map_err(|_| Error::Domain("multiplicity overflow".into()))?;
            out.insert(w, n);
        }
        Ok(out)
    }

    /// Total dimension by the Weyl dimension formula, used as an independent
    /// oracle against the Freudenthal table.
    pub fn weyl_dimension(&self, lambda: &Weight) -> Result<BigRational> {
        let positive = self.positive_roots()?;
        let rho = self.rho()?;
        let lam_rho = lambda.add(&rho);
        let mut dim = BigRational::one();
        for beta in &positive {
            let bw = beta.to_weight();
            dim *= self.dot_w(&lam_rho, &bw) / self.dot_w(&rho, &bw);
        }
        Ok(dim)
    }

    // -- antisymmetric kernel and parity lift --------------------------------

    /// Integer basis of `{ eta in Q : <i,eta> = <eta,i> for all i }`.
    pub fn antisym_kernel(&self) -> Vec<RootVec> {
        // condition matrix M[i][j] = omega[i][j] - omega[j][i]
        let n = self.rank;
        let m: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| self.omega[i][j] - self.omega[j][i]).collect())
            .collect();
        integer_kernel(&m)
    }

    pub fn in_antisym_kernel(&self, eta: &RootVec) -> bool {
        (0..self.rank).all(|i| {
            let a = RootVec::simple(self.rank, i);
            self.antisym(&a, eta) == 0
        })
    }

    /// Search for `nu` congruent to `eta` componentwise mod 2 with
    /// `nu in Q` and `nu/2` in the weight lattice.  The box is
    /// `|y_i| <= 2 max|x_i| + 4`; absence inside the box is a value.
    pub fn parity_lift(&self, eta: &RootVec) -> Option<RootVec> {
        let n = self.rank;
        let maxabs = eta.0.iter().map(|x| x.abs()).max().unwrap_or(0);
        let bound = 2 * maxabs + 4;
        let mut candidates: Vec<Vec<i64>> = vec![vec![]];
        for i in 0..n {
            let parity = eta.0[i].rem_euclid(2);
            let mut next = Vec::new();
            for c in &candidates {
                let mut y = -bound;
                while y <= bound {
                    if y.rem_euclid(2) == parity {
                        let mut c2 = c.clone();
                        c2.push(y);
                        next.push(c2);
                    }
                    y += 1;
                }
            }
            candidates = next;
        }
        let mut found: Vec<RootVec> = candidates
            .into_iter()
            .map(RootVec)
            .filter(|nu| self.in_two_lambda(nu))
            .collect();
        // deterministic order: smallest box radius, then lexicographic
        found.sort_by_key(|nu| {
            (nu.0.iter().map(|x| x.abs()).max().unwrap_or(0), nu.0.clone())
        });
        found.into_iter().next()
    }

    /// `nu in Q` with `nu/2` in the weight lattice.
    pub fn in_two_lambda(&self, nu: &RootVec) -> bool {
        (0..self.rank).all(|i| {
            let c = 2 * self.dot(nu, &RootVec::simple(self.rank, i)) / self.dot_gen(i, i);
            let exact = 2 * self.dot(nu, &RootVec::simple(self.rank, i)) % self.dot_gen(i, i) == 0;
            exact && c % 2 == 0
        })
    }

    /// Fundamental weight `varpi_i` in root coordinates.
    pub fn fundamental_weight(&self, i: usize) -> Result<Weight> {
        let n = self.rank;
        // solve sum_k c_k a_{jk} = delta_ij where a_{jk} = 2(alpha_k.alpha_j)/(alpha_j.alpha_j)
        let a: Vec<Vec<crate::scalars::RationalFunction>> = (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| {
                        let num = 2 * self.dot_gen(k, j);
                        let den = self.dot_gen(j, j);
                        crate::scalars::RationalFunction::from_coeff(rat(num) / rat(den))
                    })
                    .collect()
            })
            .collect();
        let mut b = vec![crate::scalars::RationalFunction::zero(); n];
        b[i] = crate::scalars::RationalFunction::one();
        let x = crate::linalg::solve(&a, &b)
            .ok_or_else(|| Error::NotFiniteType("Cartan matrix is singular".into()))?;
        let coords = x
            .iter()
            .map(|c| {
                let p = c.numerator().lex_least().map(|(_, c)| c.clone()).unwrap_or_default();
                // constants only: solved over the constant subfield
                debug_assert!(c.denominator().is_one());
                p
            })
            .collect();
        Ok(Weight(coords))
    }

    /// Coordinates of a weight over the fundamental weights, i.e. the Cartan
    /// pairings with every simple root.
    pub fn to_fundamental_coords(&self, lambda: &Weight) -> Vec<BigRational> {
        (0..self.rank).map(|i| self.cartan_pairing(lambda, i)).collect()
    }
}

fn mat_mul_i64(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Basis of the integer kernel `{x : M x = 0}` via row reduction of
/// `[M^T | I]` to Hermite form.
fn integer_kernel(m: &[Vec<i64>]) -> Vec<RootVec> {
    let rows = m.len();
    let n = if rows > 0 { m[0].len() } else { 0 };
    // work rows: [ M^T_row | e_i ]
    let mut work: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut r: Vec<i64> = (0..rows).map(|j| m[j][i]).collect();
            let mut e = vec![0i64; n];
            e[i] = 1;
            r.extend(e);
            r
        })
        .collect();
    let mut pivot_row = 0;
    for c in 0..rows {
        loop {
            let mut best: Option<usize> = None;
            for (i, row) in work.iter().enumerate().skip(pivot_row) {
                if row[c] != 0
                    && best.map_or(true, |b| row[c].abs() < work[b][c].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            work.swap(pivot_row, b);
            if work[pivot_row][c] < 0 {
                for x in &mut work[pivot_row] {
                    *x = -*x;
                }
            }
            let p = work[pivot_row][c];
            let mut clean = true;
            for i in pivot_row + 1..work.len() {
                if work[i][c] != 0 {
                    let q = work[i][c].div_euclid(p);
                    for j in 0..work[i].len() {
                        work[i][j] -= q * work[pivot_row][j];
                    }
                    if work[i][c] != 0 {
                        clean = false;
                    }
                }
            }
            if clean {
                pivot_row += 1;
                break;
            }
        }
    }
    work[pivot_row..]
        .iter()
        .filter(|row| row[..rows].iter().all(|&x| x == 0))
        .map(|row| RootVec(row[rows..].to_vec()))
        .collect()
}

/// The Weyl group as an explicit table of matrices over root coordinates,
/// each tagged with a reduced word in the simple reflections.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    rank: usize,
    elements: Vec<Vec<Vec<i64>>>,
    words: Vec<Vec<usize>>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    pub fn apply(&self, idx: usize, lambda: &Weight) -> Weight {
        let m = &self.elements[idx];
        let n = self.rank;
        let mut out = vec![BigRational::zero(); n];
        for (i, row) in m.iter().enumerate().take(n) {
            for (j, &c) in row.iter().enumerate() {
                if c != 0 {
                    out[i] += rat(c) * &lambda.0[j];
                }
            }
        }
        Weight(out)
    }

    pub fn apply_root(&self, idx: usize, v: &RootVec) -> RootVec {
        let m = &self.elements[idx];
        let n = self.rank;
        let mut out = vec![0i64; n];
        for (i, row) in m.iter().enumerate().take(n) {
            for (j, &c) in row.iter().enumerate() {
                out[i] += c * v.0[j];
            }
        }
        RootVec(out)
    }

    /// Index of the inverse element.
    pub fn inverse(&self, idx: usize) -> usize {
        let n = self.rank;
        let id: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        for k in 0..self.elements.len() {
            if mat_mul_i64(&self.elements[idx], &self.elements[k]) == id {
                return k;
            }
        }
        unreachable!("group is closed under inverses")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_preset_forms() {
        let d = CartanDatum::type_a(2);
        assert_eq!(d.omega(), &vec![vec![1, -1], vec![0, 1]]);
        let a1 = RootVec::simple(2, 0);
        let a2 = RootVec::simple(2, 1);
        assert_eq!(d.form(FormKind::Angle, &a1, &a2).unwrap(), -1);
        assert_eq!(d.form(FormKind::Angle, &a2, &a1).unwrap(), 0);
        assert_eq!(d.form(FormKind::Dot, &a1, &a2).unwrap(), -1);
        // [i,i] = omega_ii on the diagonal
        assert_eq!(d.form(FormKind::Square, &a1, &a1).unwrap(), 1);
        assert_eq!(d.square_gen(0, 0), 1);
        assert_eq!(d.square_gen(0, 1), 1);
        assert_eq!(d.square_gen(1, 0), 0);
    }

    #[test]
    fn form_identity_between_square_and_angle() {
        // [i,j] - [j,i] = <j,i> - <i,j> for all pairs, and i.j symmetric
        for d in [CartanDatum::type_a(1), CartanDatum::type_a(2), CartanDatum::type_a(3)] {
            for i in 0..d.rank() {
                for j in 0..d.rank() {
                    assert_eq!(
                        d.square_gen(i, j) - d.square_gen(j, i),
                        d.angle_gen(j, i) - d.angle_gen(i, j)
                    );
                    assert_eq!(d.dot_gen(i, j), d.dot_gen(j, i));
                }
            }
        }
    }

    #[test]
    fn omega_validation() {
        assert!(CartanDatum::from_omega(vec![vec![1, -1], vec![0, 1]]).is_ok());
        assert!(CartanDatum::from_omega(vec![vec![0, -1], vec![0, 1]]).is_err());
        assert!(CartanDatum::from_omega(vec![vec![1, 1], vec![0, 1]]).is_err());
        assert!(CartanDatum::from_omega(vec![vec![2, -2], vec![-2, 2]]).is_err());
    }

    #[test]
    fn rho_values() {
        // A1: rho = alpha/2, so 2 rho . alpha = 2... i.e. rho . alpha = 1
        let d = CartanDatum::type_a(1);
        let rho = d.rho().unwrap();
        assert_eq!(rho.0[0], rat(1) / rat(2));
        // A2: rho = alpha1 + alpha2
        let d = CartanDatum::type_a(2);
        assert_eq!(d.rho().unwrap(), Weight::from_ints(&[1, 1]));
        // rho . alpha_i = 1 in symmetric type, checked for A3
        let d = CartanDatum::type_a(3);
        let rho = d.rho().unwrap();
        for i in 0..3 {
            assert_eq!(d.dot_simple(&rho, i), rat(1));
        }
    }

    #[test]
    fn weyl_orders() {
        assert_eq!(CartanDatum::type_a(1).weyl_group().unwrap().order(), 2);
        assert_eq!(CartanDatum::type_a(2).weyl_group().unwrap().order(), 6);
        assert_eq!(CartanDatum::type_a(3).weyl_group().unwrap().order(), 24);
    }

    #[test]
    fn weyl_involutions_and_invariance() {
        let d = CartanDatum::type_a(3);
        let w = d.weyl_group().unwrap();
        let lam = Weight::from_ints(&[1, 2, -1]);
        let mu = Weight::from_ints(&[0, 1, 1]);
        for i in 0..3 {
            let r = d.reflect(i, &d.reflect(i, &lam));
            assert_eq!(r, lam);
        }
        for idx in 0..w.order() {
            let a = w.apply(idx, &lam);
            let b = w.apply(idx, &mu);
            assert_eq!(d.dot_w(&a, &b), d.dot_w(&lam, &mu));
        }
    }

    #[test]
    fn freudenthal_a1_adjoint() {
        let d = CartanDatum::type_a(1);
        let lam = Weight::from_ints(&[1]);
        let m = d.weight_multiplicities(&lam).unwrap();
        assert_eq!(m.len(), 3);
        assert!(m.values().all(|&x| x == 1));
        assert_eq!(m.get(&lam), Some(&1));
    }

    #[test]
    fn freudenthal_a2_adjoint() {
        let d = CartanDatum::type_a(2);
        let lam = Weight::from_ints(&[1, 1]);
        let m = d.weight_multiplicities(&lam).unwrap();
        let total: u64 = m.values().sum();
        assert_eq!(total, 8);
        assert_eq!(m.get(&Weight::zero(2)), Some(&2));
        assert_eq!(m.get(&lam), Some(&1));
    }

    #[test]
    fn freudenthal_matches_weyl_dimension() {
        // all dominant lambda in the root lattice with tr <= 4
        for (d, coords) in [
            (CartanDatum::type_a(2), vec![vec![1, 1], vec![2, 2], vec![2, 1]]),
            (CartanDatum::type_a(3), vec![vec![1, 1, 1], vec![1, 2, 1]]),
        ] {
            for c in coords {
                let lam = Weight::from_ints(&c);
                if !d.is_dominant(&lam) {
                    continue;
                }
                let m = d.weight_multiplicities(&lam).unwrap();
                let total: u64 = m.values().sum();
                assert_eq!(rat(total as i64), d.weyl_dimension(&lam).unwrap());
            }
        }
    }

    #[test]
    fn freudenthal_is_weyl_invariant() {
        let d = CartanDatum::type_a(2);
        let lam = Weight::from_ints(&[2, 1]);
        let m = d.weight_multiplicities(&lam).unwrap();
        let w = d.weyl_group().unwrap();
        for (mu, &k) in &m {
            for idx in 0..w.order() {
                assert_eq!(m.get(&w.apply(idx, mu)), Some(&k));
            }
        }
    }

    #[test]
    fn antisym_kernels() {
        // rank 1: everything
        assert_eq!(CartanDatum::type_a(1).antisym_kernel().len(), 1);
        // A2: trivial
        assert!(CartanDatum::type_a(2).antisym_kernel().is_empty());
        // A3: spanned by alpha1 + alpha3
        let k = CartanDatum::type_a(3).antisym_kernel();
        assert_eq!(k.len(), 1);
        let g = &k[0];
        assert!(g == &RootVec(vec![1, 0, 1]) || g == &RootVec(vec![-1, 0, -1]));
    }

    #[test]
    fn parity_lift_examples() {
        let d1 = CartanDatum::type_a(1);
        // eta = alpha: alpha itself lies in 2 Lambda since Lambda = Z alpha/2
        let nu = d1.parity_lift(&RootVec(vec![1])).unwrap();
        assert!(d1.in_two_lambda(&nu));
        assert_eq!(nu.0[0].rem_euclid(2), 1);

        let d3 = CartanDatum::type_a(3);
        let eta = RootVec(vec![1, 0, 1]);
        let nu = d3.parity_lift(&eta).unwrap();
        assert!(d3.in_two_lambda(&nu));
        for i in 0..3 {
            assert_eq!(nu.0[i].rem_euclid(2), eta.0[i].rem_euclid(2));
        }
        // the named lift 2 varpi_2 = alpha1 + 2 alpha2 + alpha3 qualifies too
        assert!(d3.in_two_lambda(&RootVec(vec![1, 2, 1])));

        // eta = 0 lifts to 0
        let z = RootVec::zero(3);
        assert_eq!(d3.parity_lift(&z).unwrap(), z);
    }

    #[test]
    fn fundamental_weights_a3() {
        let d = CartanDatum::type_a(3);
        for i in 0..3 {
            let w = d.fundamental_weight(i).unwrap();
            for j in 0..3 {
                let c = d.cartan_pairing(&w, j);
                assert_eq!(c, if i == j { rat(1) } else { rat(0) });
            }
        }
        // 2 varpi_2 = alpha1 + 2 alpha2 + alpha3
        let w2 = d.fundamental_weight(1).unwrap();
        assert_eq!(w2.scale(&rat(2)), Weight::from_ints(&[1, 2, 1]));
    }
}
