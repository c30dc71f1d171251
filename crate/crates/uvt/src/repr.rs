//! Weight modules at desk scale: truncated Verma modules, their singular
//! vectors, finite-dimensional simple quotients, the diagonal operator that
//! implements the square of the antipode, quantum traces and matrix
//! coefficients.
//!
//! A module stores one exact action matrix per generator over a basis of
//! weight vectors.  The Cartan generators act by
//! `K_i = v^(i.mu) c_{i,mu}` and `K'_i = v^(-i.mu) c_{i,mu}` with
//! `c_{i,mu} = t^(<mu,i> - <i,mu>)`; construction fails if any exponent is
//! fractional for the requested highest weight.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::{BigInt, BigRational, One};

use crate::algebra::{Algebra, UElement};
use crate::cartan::{CartanDatum, RootVec, Weight};
use crate::freealg::Word;
use crate::linalg::{self, Matrix};
use crate::scalars::RationalFunction;
use crate::{Error, Result};

/// Finite slice of a weight module with exact generator action matrices.
#[derive(Clone, Debug)]
pub struct WeightModule {
    datum: Arc<CartanDatum>,
    /// Highest weight.
    pub highest: Weight,
    /// Weight of every basis vector.
    pub basis_weights: Vec<Weight>,
    /// Raising and lowering action matrices, one per generator index.
    e_mats: Vec<Matrix>,
    f_mats: Vec<Matrix>,
    /// Labels for basis vectors (lowering words applied to the top vector),
    /// kept for rendering; quotients relabel by index.
    pub labels: Vec<String>,
    /// `Some(depth)` when the module is a window truncated at that height;
    /// `None` for complete modules.
    pub truncation: Option<i64>,
}

impl WeightModule {
    pub fn dim(&self) -> usize {
        self.basis_weights.len()
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    /// Distinct weights with multiplicities.
    pub fn weight_dims(&self) -> BTreeMap<Weight, usize> {
        let mut out = BTreeMap::new();
        for w in &self.basis_weights {
            *out.entry(w.clone()).or_insert(0) += 1;
        }
        out
    }

    pub fn e_matrix(&self, i: usize) -> &Matrix {
        &self.e_mats[i]
    }

    pub fn f_matrix(&self, i: usize) -> &Matrix {
        &self.f_mats[i]
    }

    /// Diagonal action of `K_eta K'_phi`.
    pub fn cartan_action(&self, eta: &RootVec, phi: &RootVec) -> Result<Vec<RationalFunction>> {
        self.basis_weights
            .iter()
            .map(|mu| cartan_weight_scalar(&self.datum, eta, phi, mu))
            .collect()
    }

    pub fn k_matrix(&self, i: usize) -> Result<Matrix> {
        let rank = self.datum.rank();
        Ok(diag(&self.cartan_action(&RootVec::simple(rank, i), &RootVec::zero(rank))?))
    }

    pub fn kp_matrix(&self, i: usize) -> Result<Matrix> {
        let rank = self.datum.rank();
        Ok(diag(&self.cartan_action(&RootVec::zero(rank), &RootVec::simple(rank, i))?))
    }

    /// Action matrix of an arbitrary normal-form element.
    pub fn action(&self, u: &UElement) -> Result<Matrix> {
        let n = self.dim();
        let mut out = linalg::zeros(n, n);
        for (key, c) in u.terms() {
            // E-word first, then the Cartan diagonal, then the F-word
            let mut m = identity_like(n);
            for &i in key.e_word.0.iter().rev() {
                m = linalg::mat_mul(&self.e_mats[i as usize], &m);
            }
            let cart = self.cartan_action(
                &RootVec(key.k_exp.clone()),
                &RootVec(key.kp_exp.clone()),
            )?;
            m = mul_diag_left(&cart, &m);
            for &i in key.f_word.0.iter().rev() {
                m = linalg::mat_mul(&self.f_mats[i as usize], &m);
            }
            for r in 0..n {
                for cidx in 0..n {
                    if !m[r][cidx].is_zero() {
                        out[r][cidx] = out[r][cidx].add_ref(&m[r][cidx].mul_ref(c));
                    }
                }
            }
        }
        Ok(out)
    }

    /// All weight vectors below the highest weight annihilated by every
    /// raising generator, as full coordinate vectors.
    pub fn singular_vectors(&self) -> Vec<(Weight, Vec<RationalFunction>)> {
        let n = self.dim();
        let rank = self.datum.rank();
        let mut by_weight: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (idx, w) in self.basis_weights.iter().enumerate() {
            by_weight.entry(w.clone()).or_default().push(idx);
        }
        let mut out = Vec::new();
        for (w, cols) in &by_weight {
            if *w == self.highest {
                continue;
            }
            // stack the raising matrices restricted to these columns
            let mut stacked: Matrix = Vec::new();
            for i in 0..rank {
                for r in 0..n {
                    stacked.push(cols.iter().map(|&c| self.e_mats[i][r][c].clone()).collect());
                }
            }
            for ker in linalg::nullspace(&stacked, cols.len()) {
                let mut full = vec![RationalFunction::zero(); n];
                for (pos, &c) in cols.iter().enumerate() {
                    full[c] = ker[pos].clone();
                }
                out.push((w.clone(), full));
            }
        }
        out
    }

    /// The diagonal operator `m_mu -> v^(-2 rho . mu) m_mu`.
    pub fn theta(&self, alg: &Algebra) -> Result<ThetaOperator> {
        let two_rho = alg.rho().scale(&BigRational::from(BigInt::from(2)));
        let diag = self
            .basis_weights
            .iter()
            .map(|mu| {
                let e = self.datum.dot_w(&two_rho, mu);
                let exp = rational_to_i64(&e)?;
                Ok(RationalFunction::vt_pow(-exp, 0))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ThetaOperator { diag })
    }

    /// `tr(u . Theta)` on this module.
    pub fn quantum_trace(&self, alg: &Algebra, u: &UElement) -> Result<RationalFunction> {
        let theta = self.theta(alg)?;
        let m = self.action(u)?;
        let mut out = RationalFunction::zero();
        for i in 0..self.dim() {
            out = out.add_ref(&m[i][i].mul_ref(&theta.diag[i]));
        }
        Ok(out)
    }

    /// `C_{f,m}(u) = f(u.m)` for a dual-basis functional index and a vector.
    pub fn matrix_coefficient(
        &self,
        f_index: usize,
        m: &[RationalFunction],
        u: &UElement,
    ) -> Result<RationalFunction> {
        let mat = self.action(u)?;
        let image = linalg::mat_vec(&mat, m);
        Ok(image[f_index].clone())
    }

    /// Verify the defining relations as matrix identities; used by tests.
    pub fn check_relations(&self, alg: &Algebra) -> Result<()> {
        let rank = self.datum.rank();
        let d = self.datum.clone();
        let n = self.dim();
        for i in 0..rank {
            let ki = self.k_matrix(i)?;
            let kpi = self.kp_matrix(i)?;
            for j in 0..rank {
                let ai = RootVec::simple(rank, i);
                let aj = RootVec::simple(rank, j);
                // K_i E_j = v^(i.j) t^(<j,i>-<i,j>) E_j K_i
                let lhs = linalg::mat_mul(&ki, &self.e_mats[j]);
                let tw = RationalFunction::vt_pow(d.dot(&ai, &aj), d.antisym(&aj, &ai));
                let rhs = scale_mat(&linalg::mat_mul(&self.e_mats[j], &ki), &tw);
                if lhs != rhs {
                    return Err(Error::Domain(format!("K E relation fails at ({i},{j})")));
                }
                // E_i F_j - F_j E_i = delta (K_i - K'_i)/(v_i - v_i^-1),
                // checked away from the truncation boundary where the
                // lowering image would leave the window
                let lhs = sub_mat(
                    &linalg::mat_mul(&self.e_mats[i], &self.f_mats[j]),
                    &linalg::mat_mul(&self.f_mats[j], &self.e_mats[i]),
                );
                let rhs = if i == j {
                    let di = d.d(i);
                    let den = RationalFunction::vt_pow(di, 0)
                        .sub_ref(&RationalFunction::vt_pow(-di, 0));
                    scale_mat(&sub_mat(&ki, &kpi), &den.inv().unwrap())
                } else {
                    linalg::zeros(n, n)
                };
                for col in 0..n {
                    if let Some(depth) = self.truncation {
                        let drop = self.highest.sub(&self.basis_weights[col]);
                        let tr = drop.to_root_vec().map(|r| r.tr()).unwrap_or(depth);
                        if tr + 1 > depth {
                            continue;
                        }
                    }
                    for row in 0..n {
                        if lhs[row][col] != rhs[row][col] {
                            return Err(Error::Domain(format!(
                                "E F relation fails at ({i},{j})"
                            )));
                        }
                    }
                }
            }
            // Serre relations through the algebra's normal form: the raising
            // image of the Serre element is zero, so its action must vanish
            for j in 0..rank {
                if i == j {
                    continue;
                }
                let s = alg.free().serre_element(i, j)?;
                let pos = alg.positive_of_free(&s);
                debug_assert!(pos.is_zero());
            }
        }
        Ok(())
    }

    /// JSON description: weights, dimensions and action matrices in the
    /// scalar grammar.
    pub fn to_json(&self, alg: &Algebra) -> Result<serde_json::Value> {
        use serde_json::json;
        let weights: Vec<serde_json::Value> = self
            .basis_weights
            .iter()
            .map(|w| json!(w.0.iter().map(|c| c.to_string()).collect::<Vec<_>>()))
            .collect();
        let dims: Vec<serde_json::Value> = self
            .weight_dims()
            .iter()
            .map(|(w, d)| {
                json!({
                    "weight": w.0.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "dim": d,
                })
            })
            .collect();
        let rank = self.datum.rank();
        let render_mat = |m: &Matrix| -> serde_json::Value {
            json!(m
                .iter()
                .map(|row| row.iter().map(|c| c.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>())
        };
        let mut actions = serde_json::Map::new();
        for i in 0..rank {
            actions.insert(format!("E{}", i + 1), render_mat(&self.e_mats[i]));
            actions.insert(format!("F{}", i + 1), render_mat(&self.f_mats[i]));
            actions.insert(format!("K{}", i + 1), render_mat(&self.k_matrix(i)?));
            actions.insert(format!("K{}'", i + 1), render_mat(&self.kp_matrix(i)?));
        }
        let _ = alg;
        Ok(json!({
            "highest_weight": self.highest.0.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "dimension": self.dim(),
            "basis_weights": weights,
            "weight_dims": dims,
            "labels": self.labels,
            "actions": serde_json::Value::Object(actions),
        }))
    }
}

/// Diagonal operator with entries `v^(-2 rho . mu)`.
#[derive(Clone, Debug)]
pub struct ThetaOperator {
    pub diag: Vec<RationalFunction>,
}

impl ThetaOperator {
    pub fn matrix(&self) -> Matrix {
        diag(&self.diag)
    }

    pub fn apply(&self, v: &[RationalFunction]) -> Vec<RationalFunction> {
        v.iter().zip(&self.diag).map(|(x, d)| x.mul_ref(d)).collect()
    }

    pub fn inverse(&self) -> ThetaOperator {
        ThetaOperator {
            diag: self.diag.iter().map(|d| d.inv().expect("diagonal is nonzero")).collect(),
        }
    }
}

fn diag(d: &[RationalFunction]) -> Matrix {
    let n = d.len();
    let mut m = linalg::zeros(n, n);
    for i in 0..n {
        m[i][i] = d[i].clone();
    }
    m
}

fn identity_like(n: usize) -> Matrix {
    linalg::identity(n)
}

fn mul_diag_left(d: &[RationalFunction], m: &Matrix) -> Matrix {
    m.iter()
        .enumerate()
        .map(|(i, row)| row.iter().map(|x| x.mul_ref(&d[i])).collect())
        .collect()
}

fn scale_mat(m: &Matrix, c: &RationalFunction) -> Matrix {
    m.iter()
        .map(|row| row.iter().map(|x| x.mul_ref(c)).collect())
        .collect()
}

fn sub_mat(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.sub_ref(y)).collect())
        .collect()
}

fn rational_to_i64(x: &BigRational) -> Result<i64> {
    if !x.denom().is_one() {
        return Err(Error::FractionalExponent(x.to_string()));
    }
    i64::try_from(x.numer().clone())
        .map_err(|_| Error::FractionalExponent(x.to_string()))
}

/// `K_eta K'_phi` acting on the weight `mu`:
/// `v^((eta - phi) . mu) t^(<mu, eta + phi> - <eta + phi, mu>)`.
fn cartan_weight_scalar(
    datum: &CartanDatum,
    eta: &RootVec,
    phi: &RootVec,
    mu: &Weight,
) -> Result<RationalFunction> {
    let diff = eta.sub(phi).to_weight();
    let sum = eta.add(phi).to_weight();
    let vexp = rational_to_i64(&datum.dot_w(&diff, mu))?;
    let texp = rational_to_i64(&datum.antisym_w(mu, &sum))?;
    Ok(RationalFunction::vt_pow(vexp, texp))
}

/// Check that the weight produces integral exponents for every generator.
fn check_weight_integrality(datum: &CartanDatum, lambda: &Weight) -> Result<()> {
    for i in 0..datum.rank() {
        let ai = RootVec::simple(datum.rank(), i);
        rational_to_i64(&datum.dot_w(&ai.to_weight(), lambda))?;
        rational_to_i64(&datum.antisym_w(lambda, &ai.to_weight()))?;
    }
    Ok(())
}

/// Verma module truncated to weights `lambda - nu` with `tr(nu) <= depth`.
/// The basis is the lowering-word basis applied to the top vector; raising
/// actions are computed by straightening.
pub fn verma_truncated(alg: &Algebra, lambda: &Weight, depth: i64) -> Result<WeightModule> {
    let datum = Arc::new(alg.datum().clone());
    check_weight_integrality(&datum, lambda)?;
    let rank = datum.rank();

    // enumerate degrees nu with tr(nu) <= depth, then basis words per degree
    let mut degrees: Vec<RootVec> = vec![RootVec::zero(rank)];
    let mut frontier: Vec<RootVec> = vec![RootVec::zero(rank)];
    for _ in 0..depth {
        let mut next: std::collections::BTreeSet<RootVec> = Default::default();
        for nu in &frontier {
            for i in 0..rank {
                let mut up = nu.clone();
                up.0[i] += 1;
                next.insert(up);
            }
        }
        frontier = next.into_iter().collect();
        degrees.extend(frontier.iter().cloned());
    }
    degrees.sort();
    degrees.dedup();

    // basis: (degree, lowering basis word)
    let mut basis: Vec<(RootVec, Word)> = Vec::new();
    let mut index: BTreeMap<(Vec<i64>, Word), usize> = BTreeMap::new();
    for nu in &degrees {
        let gb = alg.free().graded_basis(nu);
        for w in gb.basis_words() {
            let fw = w.reversed();
            index.insert((nu.0.clone(), fw.clone()), basis.len());
            basis.push((nu.clone(), fw));
        }
    }
    let n = basis.len();
    let basis_weights: Vec<Weight> =
        basis.iter().map(|(nu, _)| lambda.sub_root(nu)).collect();
    let labels: Vec<String> = basis
        .iter()
        .map(|(_, w)| {
            if w.is_empty() {
                "v".to_string()
            } else {
                let parts: Vec<String> =
                    w.0.iter().map(|i| format!("F{}", i + 1)).collect();
                format!("{}*v", parts.join("*"))
            }
        })
        .collect();

    let mut f_mats = vec![linalg::zeros(n, n); rank];
    let mut e_mats = vec![linalg::zeros(n, n); rank];

    for (col, (nu, fw)) in basis.iter().enumerate() {
        for i in 0..rank {
            // F_i action: prepend the letter and reduce
            let mut up = nu.clone();
            up.0[i] += 1;
            if up.tr() <= depth {
                let mut word = vec![i as u8];
                word.extend_from_slice(&fw.0);
                let prod = alg.f_word(&Word(word));
                for (key, c) in prod.terms() {
                    let row = index[&(up.0.clone(), key.f_word.clone())];
                    f_mats[i][row][col] = f_mats[i][row][col].add_ref(c);
                }
            }
            // E_i action: straighten E_i past the lowering word, keep the
            // terms whose raising part is empty, and evaluate the Cartan
            // factor on the top vector
            let e_f = alg.multiply(&alg.e(i), &alg.f_word(fw));
            for (key, c) in e_f.terms() {
                if !key.e_word.is_empty() {
                    continue;
                }
                let down = key.f_word.degree(rank);
                let scalar = cartan_weight_scalar(
                    &datum,
                    &RootVec(key.k_exp.clone()),
                    &RootVec(key.kp_exp.clone()),
                    lambda,
                )?;
                let row = index[&(down.0.clone(), key.f_word.clone())];
                e_mats[i][row][col] =
                    e_mats[i][row][col].add_ref(&c.mul_ref(&scalar));
            }
        }
    }

    Ok(WeightModule {
        datum,
        highest: lambda.clone(),
        basis_weights,
        e_mats,
        f_mats,
        labels,
        truncation: Some(depth),
    })
}

/// The finite-dimensional simple module of a dominant integral weight:
/// quotient of a sufficiently deep Verma truncation by the span generated
/// from its singular vectors by the lowering action.
pub fn simple_module(alg: &Algebra, lambda: &Weight) -> Result<WeightModule> {
    let datum = alg.datum();
    if !datum.in_weight_lattice(lambda) || !datum.is_dominant(lambda) {
        return Err(Error::Domain(
            "simple modules need a dominant integral highest weight".into(),
        ));
    }
    let lowest = datum.antidominant(lambda);
    let span = lambda.sub(&lowest).to_root_vec().ok_or_else(|| {
        Error::Domain("highest minus lowest weight must lie in the root lattice".into())
    })?;
    let depth = span.tr() + 2;
    let verma = verma_truncated(alg, lambda, depth)?;
    let n = verma.dim();
    let rank = datum.rank();

    // span of the maximal submodule inside the window: close the singular
    // vectors under the lowering action
    let mut gens: Vec<Vec<RationalFunction>> = verma
        .singular_vectors()
        .into_iter()
        .map(|(_, v)| v)
        .collect();
    let mut all = gens.clone();
    while !gens.is_empty() {
        let mut next = Vec::new();
        for g in &gens {
            for i in 0..rank {
                let img = linalg::mat_vec(&verma.f_mats[i], g);
                if img.iter().any(|c| !c.is_zero()) {
                    next.push(img);
                }
            }
        }
        // keep only vectors that enlarge the span
        let mut candidate = all.clone();
        let before = linalg::rank(&candidate);
        let mut fresh = Vec::new();
        for v in next {
            candidate.push(v.clone());
            if linalg::rank(&candidate) > before + fresh.len() {
                fresh.push(v);
            } else {
                candidate.pop();
            }
        }
        all = candidate;
        gens = fresh;
    }

    // row-reduce the submodule and take the non-pivot basis vectors as
    // representatives of the quotient
    let mut reduced = all.clone();
    let pivots = row_reduce(&mut reduced);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let keep: Vec<usize> = (0..n).filter(|c| !pivot_set.contains(c)).collect();
    let project = |v: &[RationalFunction]| -> Vec<RationalFunction> {
        let mut w = v.to_vec();
        for (r, &p) in pivots.iter().enumerate() {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for c in 0..n {
                let s = reduced[r][c].mul_ref(&f);
                w[c] = w[c].sub_ref(&s);
            }
        }
        keep.iter().map(|&c| w[c].clone()).collect()
    };

    let m = keep.len();
    let mut e_mats = vec![linalg::zeros(m, m); rank];
    let mut f_mats = vec![linalg::zeros(m, m); rank];
    for (col, &src) in keep.iter().enumerate() {
        for i in 0..rank {
            let e_img: Vec<RationalFunction> =
                (0..n).map(|r| verma.e_mats[i][r][src].clone()).collect();
            for (row, val) in project(&e_img).into_iter().enumerate() {
                e_mats[i][row][col] = val;
            }
            let f_img: Vec<RationalFunction> =
                (0..n).map(|r| verma.f_mats[i][r][src].clone()).collect();
            for (row, val) in project(&f_img).into_iter().enumerate() {
                f_mats[i][row][col] = val;
            }
        }
    }

    Ok(WeightModule {
        datum: Arc::new(datum.clone()),
        highest: lambda.clone(),
        basis_weights: keep.iter().map(|&c| verma.basis_weights[c].clone()).collect(),
        e_mats,
        f_mats,
        labels: keep.iter().map(|&c| verma.labels[c].clone()).collect(),
        truncation: None,
    })
}

/// In-place reduced row echelon form; returns pivot columns.
fn row_reduce(m: &mut Vec<Vec<RationalFunction>>) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows > 0 { m[0].len() } else { 0 };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot nonzero");
        for j in 0..cols {
            m[r][j] = m[r][j].mul_ref(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let s = m[r][j].mul_ref(&f);
                    m[i][j] = m[i][j].sub_ref(&s);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(pivots.len());
    pivots
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
    fn rank_one_verma_layers() {
        // lambda . alpha = 2, depth 3: weights lambda - k alpha, each dim 1
        let a = alg(1);
        let lam = Weight::from_ints(&[1]);
        let m = verma_truncated(&a, &lam, 3).unwrap();
        assert_eq!(m.dim(), 4);
        let dims = m.weight_dims();
        assert!(dims.values().all(|&d| d == 1));
    }

    #[test]
    fn top_vector_actions() {
        let a = alg(2);
        let lam = Weight::from_ints(&[1, 1]);
        let m = verma_truncated(&a, &lam, 2).unwrap();
        let top = 0; // the empty word sorts first
        assert!(m.labels[top] == "v");
        // E_i kills the top vector
        for i in 0..2 {
            for r in 0..m.dim() {
                assert!(m.e_mats[i][r][top].is_zero());
            }
        }
        // K_i scales it by v^(i.lambda) t^(<lambda,i> - <i,lambda>)
        let d = m.datum().clone();
        for i in 0..2 {
            let k = m.k_matrix(i).unwrap();
            let ai = RootVec::simple(2, i);
            let vexp = rational_to_i64(&d.dot_w(&ai.to_weight(), &lam)).unwrap();
            let texp = rational_to_i64(&d.antisym_w(&lam, &ai.to_weight())).unwrap();
            assert_eq!(k[top][top], vt(vexp, texp));
        }
    }

    #[test]
    fn relations_hold_on_modules() {
        let a = alg(2);
        let lam = Weight::from_ints(&[1, 1]);
        let m = verma_truncated(&a, &lam, 3).unwrap();
        m.check_relations(&a).unwrap();
        let a1 = alg(1);
        let m1 = verma_truncated(&a1, &Weight::from_ints(&[2]), 6).unwrap();
        m1.check_relations(&a1).unwrap();
    }

    #[test]
    fn rank_one_singular_vector() {
        // lambda . alpha = m >= 0: the (m+1)-st lowering power of the top
        // vector is singular
        let a = alg(1);
        for m_int in 0..=3i64 {
            // lambda = (m/2) alpha so lambda . alpha = m
            let lam = Weight(vec![BigRational::new(BigInt::from(m_int), BigInt::from(2))]);
            let module = verma_truncated(&a, &lam, m_int + 3).unwrap();
            let sing = module.singular_vectors();
            assert_eq!(sing.len(), 1, "m = {}", m_int);
            let (w, v) = &sing[0];
            let expect_weight = lam.sub_root(&RootVec(vec![m_int + 1]));
            assert_eq!(w, &expect_weight);
            // it is the basis vector F^(m+1) v
            let nonzero: Vec<usize> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, _)| i)
                .collect();
            assert_eq!(nonzero.len(), 1);
        }
    }

    #[test]
    fn generic_weight_has_no_singular_vectors() {
        // lambda . alpha = -2: nothing is singular within the window
        let a = alg(1);
        let lam = Weight::from_ints(&[-1]);
        let m = verma_truncated(&a, &lam, 4).unwrap();
        assert!(m.singular_vectors().is_empty());
    }

    #[test]
    fn rank_one_adjoint_simple() {
        let a = alg(1);
        let lam = Weight::from_ints(&[1]);
        let m = simple_module(&a, &lam).unwrap();
        assert_eq!(m.dim(), 3);
        let dims = m.weight_dims();
        assert_eq!(dims.len(), 3);
        assert!(dims.values().all(|&d| d == 1));
        m.check_relations(&a).unwrap();
    }

    #[test]
    fn a2_adjoint_simple_matches_freudenthal() {
        let a = alg(2);
        let lam = Weight::from_ints(&[1, 1]);
        let m = simple_module(&a, &lam).unwrap();
        assert_eq!(m.dim(), 8);
        let freud = a.datum().weight_multiplicities(&lam).unwrap();
        for (w, d) in m.weight_dims() {
            assert_eq!(freud.get(&w).copied().unwrap_or(0) as usize, d);
        }
        assert_eq!(m.weight_dims().get(&Weight::zero(2)), Some(&2));
        m.check_relations(&a).unwrap();
    }

    #[test]
    fn simple_module_rejects_non_dominant() {
        let a = alg(2);
        assert!(simple_module(&a, &Weight::from_ints(&[-1, 0])).is_err());
    }

    #[test]
    fn theta_values_on_adjoint() {
        let a = alg(1);
        let m = simple_module(&a, &Weight::from_ints(&[1])).unwrap();
        let theta = m.theta(&a).unwrap();
        // weights alpha, 0, -alpha with 2 rho . alpha = 2
        let mut found = std::collections::BTreeSet::new();
        for (w, d) in m.basis_weights.iter().zip(&theta.diag) {
            found.insert((w.clone(), d.clone()));
        }
        let alpha = Weight::from_ints(&[1]);
        assert!(found.contains(&(alpha.clone(), vt(-2, 0))));
        assert!(found.contains(&(Weight::zero(1), R::one())));
        assert!(found.contains(&(alpha.neg(), vt(2, 0))));
        // Theta is invertible
        let _ = theta.inverse();
    }

    #[test]
    fn quantum_trace_values() {
        let a = alg(1);
        let m = simple_module(&a, &Weight::from_ints(&[1])).unwrap();
        // trace of Theta itself: sum of v^(-2 rho . mu)
        let got = m.quantum_trace(&a, &a.one()).unwrap();
        let expect = vt(-2, 0).add_ref(&R::one()).add_ref(&vt(2, 0));
        assert_eq!(got, expect);
        // strictly raising action has zero trace
        assert!(m.quantum_trace(&a, &a.e(0)).unwrap().is_zero());
    }

    #[test]
    fn matrix_coefficients() {
        let a = alg(1);
        let m = simple_module(&a, &Weight::from_ints(&[1])).unwrap();
        let top = 0;
        let mut top_vec = vec![R::zero(); m.dim()];
        top_vec[top] = R::one();
        // C_{f_top, v}(K_1) is the highest-weight scalar
        let got = m.matrix_coefficient(top, &top_vec, &a.k(0)).unwrap();
        assert_eq!(got, vt(2, 0)); // v^(alpha.alpha) with trivial t-part in rank 1
        // C_{f,m}(1) = f(m)
        let got = m.matrix_coefficient(top, &top_vec, &a.one()).unwrap();
        assert!(got.is_one());
        // lowering leaves the weight space
        let got = m.matrix_coefficient(top, &top_vec, &a.f(0)).unwrap();
        assert!(got.is_zero());
    }

    #[test]
    fn theta_conjugates_to_antipode_square() {
        // Theta u = S^2(u) Theta as matrices, for generators
        let a = alg(2);
        let m = simple_module(&a, &Weight::from_ints(&[1, 1])).unwrap();
        let theta = m.theta(&a).unwrap().matrix();
        let gens = [a.e(0), a.e(1), a.f(0), a.f(1), a.k(0), a.kp(1)];
        for g in &gens {
            let lhs = linalg::mat_mul(&theta, &m.action(g).unwrap());
            let s2 = a.antipode(&a.antipode(g, false), false);
            let rhs = linalg::mat_mul(&m.action(&s2).unwrap(), &theta);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn verma_homomorphism_criterion() {
        // E_j F_i^(lambda.i + 1) v = 0 for all j
        let a = alg(2);
        let lam = Weight::from_ints(&[1, 1]);
        let m = verma_truncated(&a, &lam, 4).unwrap();
        let d = a.datum().clone();
        for i in 0..2 {
            let ni = rational_to_i64(&d.dot_simple(&lam, i)).unwrap() + 1;
            let u = a.f_pow(i, ni as u32);
            let mat = m.action(&u).unwrap();
            let mut vec = vec![R::zero(); m.dim()];
            vec[0] = R::one();
            let image = linalg::mat_vec(&mat, &vec);
            for j in 0..2 {
                let e_img = linalg::mat_vec(&m.action(&a.e(j)).unwrap(), &image);
                assert!(
                    e_img.iter().all(|c| c.is_zero()),
                    "E_{} does not kill the singular vector for i = {}",
                    j + 1,
                    i + 1
                );
            }
        }
    }
}
