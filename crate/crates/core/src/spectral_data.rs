//! Discrete spectral data of the unperturbed operator and the perturbation
//! triple `(a, b, κ)`, with the admissibility tests that decide whether the
//! triple defines an operator.

use serde::{Deserialize, Serialize};

use crate::numerics::linalg::{self, CMat};
use crate::numerics::CompensatedSum;
use crate::{Error, Result, C64};

/// Relative tolerance for the equality `κ = Σ t⁻¹ a b̄ μ`.
pub const ADMISSIBILITY_TOL: f64 = 1e-12;
/// Relative singular-value cutoff for the numerical rank of `a` and `b`.
pub const RANK_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub t: f64,
    pub mu: f64,
}

/// Atoms `(t_n, μ_n)` of `μ`, strictly increasing in `t`, none at the origin.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscreteSpectralData {
    atoms: Vec<Atom>,
}

impl DiscreteSpectralData {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidData("no atoms".into()));
        }
        for (n, at) in atoms.iter().enumerate() {
            if !at.t.is_finite() || !at.mu.is_finite() {
                return Err(Error::InvalidData(format!("atom {n} is not finite")));
            }
            if at.t == 0.0 {
                return Err(Error::InvalidData(format!("atom {n} sits at t = 0")));
            }
            if at.mu <= 0.0 {
                return Err(Error::InvalidData(format!(
                    "atom {n} has mass {} <= 0",
                    at.mu
                )));
            }
        }
        for (n, w) in atoms.windows(2).enumerate() {
            if w[1].t <= w[0].t {
                return Err(Error::InvalidData(format!(
                    "atoms {n} and {} are not strictly increasing ({} >= {})",
                    n + 1,
                    w[0].t,
                    w[1].t
                )));
            }
        }
        Ok(DiscreteSpectralData { atoms })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn t(&self) -> Vec<f64> {
        self.atoms.iter().map(|a| a.t).collect()
    }

    pub fn mu(&self) -> Vec<f64> {
        self.atoms.iter().map(|a| a.mu).collect()
    }

    /// Largest `|t_n|`.
    pub fn t_max(&self) -> f64 {
        self.atoms.iter().map(|a| a.t.abs()).fold(0.0, f64::max)
    }

    /// Indices ordered by increasing `|t_n|`, the summation order used for
    /// every finite sum over atoms.
    pub fn abs_order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by(|&i, &j| self.atoms[i].t.abs().total_cmp(&self.atoms[j].t.abs()));
        idx
    }
}

impl<'de> Deserialize<'de> for DiscreteSpectralData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let atoms = Vec::<Atom>::deserialize(d)?;
        DiscreteSpectralData::new(atoms).map_err(serde::de::Error::custom)
    }
}

/// Scalar perturbation data: one value of `a` and `b` per atom plus `κ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankOneData {
    pub base: DiscreteSpectralData,
    pub a: Vec<C64>,
    pub b: Vec<C64>,
    pub kappa: C64,
}

impl RankOneData {
    pub fn new(base: DiscreteSpectralData, a: Vec<C64>, b: Vec<C64>, kappa: C64) -> Result<Self> {
        let n = base.len();
        if a.len() != n || b.len() != n {
            return Err(Error::InvalidData(format!(
                "{} atoms but {} values of a and {} values of b",
                n,
                a.len(),
                b.len()
            )));
        }
        if a.iter()
            .chain(&b)
            .any(|x| !x.re.is_finite() || !x.im.is_finite())
            || !kappa.re.is_finite()
            || !kappa.im.is_finite()
        {
            return Err(Error::InvalidData(
                "non-finite entry in a, b or kappa".into(),
            ));
        }
        if a.iter().all(|x| *x == C64::new(0.0, 0.0)) {
            return Err(Error::InvalidData("a vanishes identically".into()));
        }
        if let Some(k) = b.iter().position(|x| *x == C64::new(0.0, 0.0)) {
            return Err(Error::InvalidData(format!("b vanishes at atom {k}")));
        }
        Ok(RankOneData { base, a, b, kappa })
    }

    /// Convenience constructor from parallel slices.
    pub fn from_parts(t: &[f64], mu: &[f64], a: &[C64], b: &[C64], kappa: C64) -> Result<Self> {
        if t.len() != mu.len() {
            return Err(Error::InvalidData("t and mu differ in length".into()));
        }
        let atoms = t.iter().zip(mu).map(|(&t, &mu)| Atom { t, mu }).collect();
        RankOneData::new(
            DiscreteSpectralData::new(atoms)?,
            a.to_vec(),
            b.to_vec(),
            kappa,
        )
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    /// Residues of `β`: `w_n = a_n b̄_n μ_n`.
    pub fn beta_weights(&self) -> Vec<C64> {
        self.base
            .atoms()
            .iter()
            .zip(self.a.iter().zip(&self.b))
            .map(|(at, (a, b))| a * b.conj() * at.mu)
            .collect()
    }

    /// Residues of `ρ`: `ν_n = |b_n|² μ_n`.
    pub fn rho_weights(&self) -> Vec<f64> {
        self.base
            .atoms()
            .iter()
            .zip(&self.b)
            .map(|(at, b)| b.norm_sqr() * at.mu)
            .collect()
    }

    /// `Σ t_n⁻¹ a_n b̄_n μ_n`, summed in order of increasing `|t_n|`.
    pub fn omega(&self) -> C64 {
        let w = self.beta_weights();
        let t = self.base.t();
        self.base
            .abs_order()
            .into_iter()
            .map(|n| w[n] / t[n])
            .collect::<CompensatedSum>()
            .value()
    }

    /// Tolerance scale `1 + |κ| + Σ|terms|` of the admissibility test.
    fn omega_scale(&self) -> f64 {
        let w = self.beta_weights();
        let t = self.base.t();
        1.0 + self.kappa.norm()
            + w.iter()
                .zip(&t)
                .map(|(w, t)| w.norm() / t.abs())
                .sum::<f64>()
    }

    /// The adjoint triple `(b, a, κ̄)`.
    pub fn adjoint(&self) -> Result<RankOneData> {
        RankOneData::new(
            self.base.clone(),
            self.b.clone(),
            self.a.clone(),
            self.kappa.conj(),
        )
    }

    pub fn to_rank_n(&self) -> RankNData {
        let n = self.len();
        RankNData {
            base: self.base.clone(),
            a: CMat::from_column_slice(n, 1, &self.a),
            b: CMat::from_column_slice(n, 1, &self.b),
            kappa: CMat::from_element(1, 1, self.kappa),
        }
    }
}

/// Matrix perturbation data: `a`, `b` are `N × n`, `κ` is `n × n`.
#[derive(Clone, Debug, PartialEq)]
pub struct RankNData {
    pub base: DiscreteSpectralData,
    pub a: CMat,
    pub b: CMat,
    pub kappa: CMat,
}

impl RankNData {
    pub fn new(base: DiscreteSpectralData, a: CMat, b: CMat, kappa: CMat) -> Result<Self> {
        let nn = base.len();
        let r = a.ncols();
        if a.nrows() != nn || b.nrows() != nn {
            return Err(Error::InvalidData(format!(
                "a is {}x{}, b is {}x{}, expected {nn} rows",
                a.nrows(),
                a.ncols(),
                b.nrows(),
                b.ncols()
            )));
        }
        if b.ncols() != r || kappa.nrows() != r || kappa.ncols() != r || r == 0 {
            return Err(Error::InvalidData(format!(
                "inconsistent rank: a has {r} columns, b has {}, kappa is {}x{}",
                b.ncols(),
                kappa.nrows(),
                kappa.ncols()
            )));
        }
        if a.iter()
            .chain(b.iter())
            .chain(kappa.iter())
            .any(|x| !x.re.is_finite() || !x.im.is_finite())
        {
            return Err(Error::InvalidData(
                "non-finite entry in a, b or kappa".into(),
            ));
        }
        let ra = linalg::numerical_rank(&a, RANK_TOL);
        let rb = linalg::numerical_rank(&b, RANK_TOL);
        if ra != r || rb != r {
            return Err(Error::InvalidData(format!(
                "a and b must have full column rank {r} (got {ra} and {rb})"
            )));
        }
        Ok(RankNData { base, a, b, kappa })
    }

    pub fn rank(&self) -> usize {
        self.a.ncols()
    }

    /// `ω_jk = Σ_n t_n⁻¹ a_{nj} b̄_{nk} μ_n`.
    pub fn omega(&self) -> CMat {
        let r = self.rank();
        let t = self.base.t();
        let mu = self.base.mu();
        let order = self.base.abs_order();
        CMat::from_fn(r, r, |j, k| {
            order
                .iter()
                .map(|&n| self.a[(n, j)] * self.b[(n, k)].conj() * (mu[n] / t[n]))
                .collect::<CompensatedSum>()
                .value()
        })
    }

    /// `b*A⁻¹a`, the matrix compared with `κ` in the admissibility test;
    /// it is the transpose of [`Self::omega`].
    pub fn w_matrix(&self) -> CMat {
        self.omega().transpose()
    }

    pub fn adjoint(&self) -> RankNData {
        RankNData {
            base: self.base.clone(),
            a: self.b.clone(),
            b: self.a.clone(),
            kappa: self.kappa.adjoint(),
        }
    }

    fn omega_scale(&self) -> f64 {
        let t = self.base.t();
        let mu = self.base.mu();
        let terms: f64 = (0..self.base.len())
            .map(|n| self.a.row(n).norm() * self.b.row(n).norm() * mu[n] / t[n].abs())
            .sum();
        1.0 + linalg::singular_values(&self.kappa)
            .first()
            .copied()
            .unwrap_or(0.0)
            + terms
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum KappaMinusOmega {
    Scalar(C64),
    Matrix(Vec<Vec<C64>>),
}

#[derive(Clone, Debug, Serialize)]
pub struct Witnesses {
    /// `|κ − ω|` (rank one) or the smallest singular value of `κ − b*A⁻¹a`.
    pub distance: f64,
    /// Threshold below which the condition is declared to fail.
    pub threshold: f64,
    pub omega: KappaMinusOmega,
    /// Finite data makes `a`, `b` square summable, so the two cases of the
    /// admissibility condition coincide.
    pub finite_data_collapse: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AdmissibilityReport {
    pub condition_a: bool,
    pub condition_a_star: bool,
    pub real_type: bool,
    pub kappa_minus_omega: KappaMinusOmega,
    pub witnesses: Witnesses,
}

pub fn validate(data: &RankOneData) -> AdmissibilityReport {
    let omega = data.omega();
    let scale = data.omega_scale();
    let threshold = ADMISSIBILITY_TOL * scale;
    let diff = data.kappa - omega;
    // adjoint relation: κ̄ against Σ t⁻¹ b ā μ = conj(ω)
    let diff_star = data.kappa.conj() - omega.conj();
    AdmissibilityReport {
        condition_a: diff.norm() > threshold,
        condition_a_star: diff_star.norm() > threshold,
        real_type: classify_real_type(data),
        kappa_minus_omega: KappaMinusOmega::Scalar(diff),
        witnesses: Witnesses {
            distance: diff.norm(),
            threshold,
            omega: KappaMinusOmega::Scalar(omega),
            finite_data_collapse: true,
        },
    }
}

fn to_rows(m: &CMat) -> Vec<Vec<C64>> {
    (0..m.nrows())
        .map(|i| m.row(i).iter().copied().collect())
        .collect()
}

/// Rank-`n` admissibility: `κc = b*A⁻¹a c` only for `c = 0`.
pub fn validate_rank_n(data: &RankNData) -> AdmissibilityReport {
    let w = data.w_matrix();
    let diff = &data.kappa - &w;
    let threshold = ADMISSIBILITY_TOL * data.omega_scale();
    let smin = linalg::sigma_min(&diff);
    let smin_star = linalg::sigma_min(&diff.adjoint());
    let real_type = rank_n_real_type(data);
    AdmissibilityReport {
        condition_a: smin > threshold,
        condition_a_star: smin_star > threshold,
        real_type,
        kappa_minus_omega: KappaMinusOmega::Matrix(to_rows(&diff)),
        witnesses: Witnesses {
            distance: smin,
            threshold,
            omega: KappaMinusOmega::Matrix(to_rows(&data.omega())),
            finite_data_collapse: true,
        },
    }
}

fn is_real(z: C64, scale: f64) -> bool {
    z.im.abs() <= ADMISSIBILITY_TOL * (scale + z.re.abs())
}

/// Real type: every `a_n b̄_n` and `κ` real.
pub fn classify_real_type(data: &RankOneData) -> bool {
    data.a
        .iter()
        .zip(&data.b)
        .all(|(a, b)| is_real(a * b.conj(), a.norm() * b.norm()))
        && is_real(data.kappa, 1.0)
}

/// Entrywise generalization used for rank `n`: all `a_{nj} b̄_{nk}` and all
/// entries of `κ` real.
fn rank_n_real_type(data: &RankNData) -> bool {
    let r = data.rank();
    (0..data.base.len()).all(|n| {
        (0..r).all(|j| {
            (0..r).all(|k| {
                let (x, y) = (data.a[(n, j)], data.b[(n, k)]);
                is_real(x * y.conj(), x.norm() * y.norm())
            })
        })
    }) && data.kappa.iter().all(|z| is_real(*z, 1.0))
}

pub fn omega_matrix(data: &RankNData) -> CMat {
    data.omega()
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneralizedWeakReport {
    pub abs_sum: f64,
    pub signed_sum: C64,
    pub satisfies: bool,
    /// Partial sums of `Σ |a_n b_n| μ_n/|t_n|` in atom order.
    pub abs_partial_sums: Vec<f64>,
}

pub fn generalized_weak_report(data: &RankOneData) -> GeneralizedWeakReport {
    let mut acc = crate::numerics::RealCompensatedSum::default();
    let mut partial = Vec::with_capacity(data.len());
    for (n, at) in data.base.atoms().iter().enumerate() {
        acc.add(data.a[n].norm() * data.b[n].norm() * at.mu / at.t.abs());
        partial.push(acc.value());
    }
    let signed = data.omega();
    GeneralizedWeakReport {
        abs_sum: acc.value(),
        signed_sum: signed,
        satisfies: (data.kappa - signed).norm() > ADMISSIBILITY_TOL * data.omega_scale(),
        abs_partial_sums: partial,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::linalg::c;

    fn one_atom(kappa: f64) -> RankOneData {
        RankOneData::from_parts(
            &[1.0],
            &[1.0],
            &[c(1.0, 0.0)],
            &[c(1.0, 0.0)],
            c(kappa, 0.0),
        )
        .unwrap()
    }

    fn two_atom(b2: C64) -> RankOneData {
        RankOneData::from_parts(
            &[-1.0, 1.0],
            &[1.0, 1.0],
            &[c(1.0, 0.0), c(1.0, 0.0)],
            &[c(1.0, 0.0), b2],
            c(1.0, 0.0),
        )
        .unwrap()
    }

    #[test]
    fn one_atom_admissibility() {
        let r = validate(&one_atom(2.0));
        assert!(r.condition_a && r.condition_a_star && r.real_type);
        let r = validate(&one_atom(1.0));
        assert!(!r.condition_a && !r.condition_a_star);
    }

    #[test]
    fn two_atom_omega_vanishes() {
        let d = two_atom(c(1.0, 0.0));
        assert_eq!(d.omega(), c(0.0, 0.0));
        let r = validate(&d);
        assert!(r.condition_a && r.real_type);
    }

    #[test]
    fn real_type_classification() {
        let d = RankOneData::from_parts(
            &[-1.0, 1.0],
            &[1.0, 1.0],
            &[c(1.0, 0.0), c(1.0, 0.0)],
            &[c(1.0, 0.0), c(-1.0, 0.0)],
            c(1.0, 0.0),
        )
        .unwrap();
        assert!(classify_real_type(&d));
        assert!(!classify_real_type(&two_atom(c(0.0, 1.0))));
    }

    #[test]
    fn rank_two_diagonal_omega() {
        let base =
            DiscreteSpectralData::new(vec![Atom { t: -1.0, mu: 1.0 }, Atom { t: 1.0, mu: 1.0 }])
                .unwrap();
        let id = CMat::identity(2, 2);
        let d = RankNData::new(base, id.clone(), id.clone(), id).unwrap();
        let w = d.omega();
        assert_eq!(w[(0, 0)], c(-1.0, 0.0));
        assert_eq!(w[(1, 1)], c(1.0, 0.0));
        assert_eq!(w[(0, 1)], c(0.0, 0.0));
        // κ = I against ω = diag(−1, 1): the second direction fails
        assert!(!validate_rank_n(&d).condition_a);
    }

    #[test]
    fn structural_errors() {
        assert!(DiscreteSpectralData::new(vec![Atom { t: 0.0, mu: 1.0 }]).is_err());
        assert!(DiscreteSpectralData::new(vec![Atom { t: 1.0, mu: 0.0 }]).is_err());
        assert!(DiscreteSpectralData::new(vec![
            Atom { t: 2.0, mu: 1.0 },
            Atom { t: 1.0, mu: 1.0 }
        ])
        .is_err());
        assert!(RankOneData::from_parts(
            &[1.0],
            &[1.0],
            &[c(0.0, 0.0)],
            &[c(1.0, 0.0)],
            c(1.0, 0.0)
        )
        .is_err());
        assert!(RankOneData::from_parts(
            &[1.0],
            &[1.0],
            &[c(1.0, 0.0)],
            &[c(0.0, 0.0)],
            c(1.0, 0.0)
        )
        .is_err());
    }

    #[test]
    fn generalized_weak_sums() {
        let r = generalized_weak_report(&two_atom(c(1.0, 0.0)));
        assert_eq!(r.abs_sum, 2.0);
        assert_eq!(r.signed_sum, c(0.0, 0.0));
        assert!(r.satisfies);
        assert_eq!(r.abs_partial_sums, vec![1.0, 2.0]);
    }
}
