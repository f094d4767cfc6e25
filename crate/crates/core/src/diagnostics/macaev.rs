//! Invertibility of the coupling matrix `κ − b*A⁻¹a`.

use serde::Serialize;

use crate::numerics::linalg::{self, CMat};
use crate::spectral_data::{validate_rank_n, RankNData};
use crate::C64;

#[derive(Clone, Debug, Serialize)]
pub struct MacaevReport {
    /// `κ − b*A⁻¹a`, row-major.
    pub matrix: Vec<Vec<C64>>,
    pub smallest_singular: f64,
    pub threshold: f64,
    pub invertible: bool,
    /// `I + ω` of the bounded picture, `((κ − b*A⁻¹a) κ⁻¹)ᵀ`; absent for singular `κ`.
    pub bounded_matrix: Option<Vec<Vec<C64>>>,
    pub bounded_smallest_singular: Option<f64>,
}

fn rows(m: &CMat) -> Vec<Vec<C64>> {
    (0..m.nrows())
        .map(|i| m.row(i).iter().copied().collect())
        .collect()
}

pub fn macaev_check(data: &RankNData) -> MacaevReport {
    let report = validate_rank_n(data);
    let diff = &data.kappa - &data.w_matrix();
    let bounded = linalg::inverse(&data.kappa)
        .ok()
        .map(|ki| (&diff * ki).transpose());
    MacaevReport {
        matrix: rows(&diff),
        smallest_singular: report.witnesses.distance,
        threshold: report.witnesses.threshold,
        invertible: report.condition_a,
        bounded_smallest_singular: bounded.as_ref().map(linalg::sigma_min),
        bounded_matrix: bounded.as_ref().map(rows),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::linalg::c;
    use crate::spectral_data::{DiscreteSpectralData, RankOneData};

    #[test]
    fn two_atom_example() {
        let d = RankOneData::from_parts(
            &[-1.0, 1.0],
            &[1.0, 1.0],
            &[c(1.0, 0.0); 2],
            &[c(1.0, 0.0); 2],
            c(1.0, 0.0),
        )
        .unwrap();
        let r = macaev_check(&d.to_rank_n());
        assert_eq!(r.matrix, vec![vec![c(1.0, 0.0)]]);
        assert!(r.invertible);
        assert!((r.smallest_singular - 1.0).abs() < 1e-15);
    }

    #[test]
    fn kappa_equal_to_omega() {
        let d = RankOneData::from_parts(
            &[1.0, 2.0],
            &[1.0, 1.0],
            &[c(1.0, 0.0); 2],
            &[c(1.0, 0.0); 2],
            c(1.5, 0.0),
        )
        .unwrap();
        let r = macaev_check(&d.to_rank_n());
        assert!(!r.invertible);
        assert_eq!(r.smallest_singular, 0.0);
    }

    #[test]
    fn diagonal_rank_two_matches_scalar_cases() {
        // columns supported on disjoint atoms decouple
        let t = [-2.0, -1.0, 1.0, 3.0];
        let base = DiscreteSpectralData::new(
            t.iter()
                .map(|&t| crate::spectral_data::Atom { t, mu: 1.0 })
                .collect(),
        )
        .unwrap();
        let a = CMat::from_row_slice(
            4,
            2,
            &[
                c(1.0, 0.0),
                c(0.0, 0.0),
                c(0.5, 0.2),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.7, 0.0),
                c(0.0, 0.0),
                c(1.0, -0.3),
            ],
        );
        let b = CMat::from_row_slice(
            4,
            2,
            &[
                c(0.3, 0.0),
                c(0.0, 0.0),
                c(1.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.9, 0.1),
                c(0.0, 0.0),
                c(0.4, 0.0),
            ],
        );
        let kappa =
            CMat::from_row_slice(2, 2, &[c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.5)]);
        let d = RankNData::new(base, a.clone(), b.clone(), kappa).unwrap();
        let r = macaev_check(&d);
        let scalar = |col: usize, idx: [usize; 2], k: C64| {
            let s = RankOneData::from_parts(
                &[t[idx[0]], t[idx[1]]],
                &[1.0, 1.0],
                &[a[(idx[0], col)], a[(idx[1], col)]],
                &[b[(idx[0], col)], b[(idx[1], col)]],
                k,
            )
            .unwrap();
            s.kappa - s.omega()
        };
        let d0 = scalar(0, [0, 1], c(2.0, 0.0));
        let d1 = scalar(1, [2, 3], c(-1.0, 0.5));
        assert!((r.matrix[0][0] - d0).norm() < 1e-15);
        assert!((r.matrix[1][1] - d1).norm() < 1e-15);
        assert_eq!(r.matrix[0][1], c(0.0, 0.0));
        assert!((r.smallest_singular - d0.norm().min(d1.norm())).abs() < 1e-14);
    }

    #[test]
    fn adjoint_has_the_same_smallest_singular_value() {
        let d = RankOneData::from_parts(
            &[-2.0, 0.5, 3.0],
            &[1.0, 0.7, 1.5],
            &[c(0.3, 0.8), c(-0.6, 0.1), c(0.5, -0.5)],
            &[c(0.4, 0.1), c(0.9, -0.3), c(-0.2, 0.6)],
            c(0.7, 0.4),
        )
        .unwrap()
        .to_rank_n();
        let r = macaev_check(&d);
        let ra = macaev_check(&d.adjoint());
        assert!((r.smallest_singular - ra.smallest_singular).abs() < 1e-14);
    }
}
