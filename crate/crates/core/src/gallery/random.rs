//! Seeded random rank-one instances for the oracle-equivalence sweeps.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::spectral_data::RankOneData;
use crate::C64;

/// Minimal spacing between atoms.
const MIN_GAP: f64 = 1e-3;
/// Rejection radius around `ω` for `κ`.
const KAPPA_MARGIN: f64 = 0.05;

#[derive(Clone, Copy, Debug)]
pub struct RandomConfig {
    pub min_atoms: usize,
    pub max_atoms: usize,
    pub t_range: (f64, f64),
    pub mu_range: (f64, f64),
    pub b_floor: f64,
    pub kappa_radius: f64,
}

impl Default for RandomConfig {
    fn default() -> Self {
        RandomConfig {
            min_atoms: 2,
            max_atoms: 12,
            t_range: (0.5, 20.0),
            mu_range: (0.1, 10.0),
            b_floor: 0.1,
            kappa_radius: 2.0,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn unit_disc<R: Rng>(rng: &mut R, floor: f64) -> C64 {
    loop {
        let z = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if z.norm() <= 1.0 && z.norm() >= floor {
            return z;
        }
    }
}

/// Real type draws `a_n`, `b_n` with a common phase so that `a_n b̄_n` is
/// real, and a real `κ`.
pub fn random_instance<R: Rng>(rng: &mut R, cfg: &RandomConfig, real_type: bool) -> RankOneData {
    let n = rng.gen_range(cfg.min_atoms..=cfg.max_atoms);
    let mut t: Vec<f64> = Vec::with_capacity(n);
    while t.len() < n {
        let mag = rng.gen_range(cfg.t_range.0..=cfg.t_range.1);
        let x = if rng.gen_bool(0.5) { mag } else { -mag };
        if t.iter().all(|y| (x - y).abs() >= MIN_GAP) {
            t.push(x);
        }
    }
    t.sort_by(f64::total_cmp);
    let mu: Vec<f64> = (0..n)
        .map(|_| rng.gen_range(cfg.mu_range.0..=cfg.mu_range.1))
        .collect();
    let (a, b): (Vec<C64>, Vec<C64>) = (0..n)
        .map(|_| {
            if real_type {
                let phase = C64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
                let ra: f64 = rng.gen_range(-1.0..1.0);
                let rb =
                    rng.gen_range(cfg.b_floor..=1.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                (phase * ra, phase * rb)
            } else {
                (unit_disc(rng, 0.0), unit_disc(rng, cfg.b_floor))
            }
        })
        .unzip();
    let mut a = a;
    if a.iter().all(|z| z.norm() == 0.0) {
        a[0] = C64::new(1.0, 0.0);
    }
    let omega: C64 = (0..n).map(|k| a[k] * b[k].conj() * mu[k] / t[k]).sum();
    let kappa = loop {
        let k = if real_type {
            C64::new(rng.gen_range(-cfg.kappa_radius..cfg.kappa_radius), 0.0)
        } else {
            unit_disc(rng, 0.0) * cfg.kappa_radius
        };
        if (k - omega).norm() >= KAPPA_MARGIN {
            break k;
        }
    };
    RankOneData::from_parts(&t, &mu, &a, &b, kappa).expect("generator respects the invariants")
}
