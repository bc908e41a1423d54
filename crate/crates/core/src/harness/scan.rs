use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{exceeds, min_log_multiple, qstr};
use crate::error::{domain, Result};
use crate::gengcd::log_gcd_outside;
use crate::logreal::LogReal;
use crate::lrs::{compute_s0, PowerSum};
use crate::places::PlaceSet;
use crate::Rational;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanMode {
    Diagonal,
    #[default]
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TubeSearch {
    /// Directions (a, b) range over coprime 1 <= a, b <= max_coeff.
    pub max_coeff: u64,
    pub max_kappa: u64,
}

impl Default for TubeSearch {
    fn default() -> Self {
        TubeSearch { max_coeff: 8, max_kappa: 16 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanConfig {
    #[serde(rename = "F")]
    pub f: PowerSum,
    #[serde(rename = "G")]
    pub g: PowerSum,
    #[serde(with = "qstr")]
    pub epsilon: Rational,
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "extra_S", default = "PlaceSet::empty")]
    pub extra_s: PlaceSet,
    #[serde(default)]
    pub mode: ScanMode,
    #[serde(default)]
    pub tube: TubeSearch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRow {
    pub m: u64,
    pub n: u64,
    /// Sum over places outside S of -log^- max(|F(m)|_v, |G(n)|_v); zero on zero rows.
    pub lhs: LogReal,
    pub flagged: bool,
    /// F(m) = 0 or G(n) = 0; such rows are skipped.
    pub zero: bool,
    pub cluster: Option<usize>,
}

/// Pairs with |b m - a n| <= kappa * log max(m, n), i.e. a log tube around the line (a t, b t).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cluster {
    pub id: usize,
    pub a: u64,
    pub b: u64,
    pub kappa: u64,
    pub size: usize,
}

#[derive(Clone, Debug)]
pub struct ScanReport {
    pub s0: PlaceSet,
    pub s: PlaceSet,
    pub epsilon: Rational,
    pub rows: Vec<ScanRow>,
    pub clusters: Vec<Cluster>,
    pub sporadic: Vec<(u64, u64)>,
}

impl ScanReport {
    pub fn threshold(&self, row: &ScanRow) -> Rational {
        &self.epsilon * Rational::from_integer(row.m.max(row.n).into())
    }

    pub fn flagged(&self) -> impl Iterator<Item = &ScanRow> {
        self.rows.iter().filter(|r| r.flagged)
    }

    pub fn zeros(&self) -> impl Iterator<Item = &ScanRow> {
        self.rows.iter().filter(|r| r.zero)
    }

    /// Largest max(m, n) among flagged rows.
    pub fn flagged_bound(&self) -> Option<u64> {
        self.flagged().map(|r| r.m.max(r.n)).max()
    }
}

/// Minimal kappa placing (m, n) in the tube of direction (a, b).
pub fn tube_kappa(m: u64, n: u64, a: u64, b: u64) -> Option<u64> {
    let r = (b as i128 * m as i128 - a as i128 * n as i128).unsigned_abs() as u64;
    min_log_multiple(r, m.max(n))
}

fn directions(max: u64) -> Vec<(u64, u64)> {
    let mut v: Vec<(u64, u64)> =
        (1..=max).flat_map(|a| (1..=max).map(move |b| (a, b))).filter(|(a, b)| a.gcd(b) == 1).collect();
    v.sort_by_key(|&(a, b)| (a.max(b), a, b));
    v
}

pub fn run_lrs_scan(cfg: &ScanConfig) -> Result<ScanReport> {
    if cfg.epsilon <= Rational::from_integer(0.into()) {
        return domain("epsilon must be positive");
    }
    if cfg.n < 1 {
        return domain("grid bound N must be at least 1");
    }
    let s0 = compute_s0(&cfg.f.roots(), &cfg.g.roots())?;
    let s = s0.union(&cfg.extra_s);
    let fv = cfg.f.eval_range(cfg.n);
    let gv = cfg.g.eval_range(cfg.n);
    let row = |m: u64, n: u64| -> Result<ScanRow> {
        let (a, b) = (&fv[m as usize], &gv[n as usize]);
        if a == &Rational::from_integer(0.into()) || b == &Rational::from_integer(0.into()) {
            return Ok(ScanRow { m, n, lhs: LogReal::zero(), flagged: false, zero: true, cluster: None });
        }
        let lhs = log_gcd_outside(a, b, &s)?.into_inner();
        let flagged = exceeds(&lhs, &(&cfg.epsilon * Rational::from_integer(m.max(n).into())));
        Ok(ScanRow { m, n, lhs, flagged, zero: false, cluster: None })
    };
    let mut rows: Vec<ScanRow> = match cfg.mode {
        ScanMode::Diagonal => (1..=cfg.n).into_par_iter().map(|k| row(k, k)).collect::<Result<_>>()?,
        ScanMode::Full => (1..=cfg.n)
            .into_par_iter()
            .flat_map_iter(|m| (1..=cfg.n).map(move |n| (m, n)))
            .map(|(m, n)| row(m, n))
            .collect::<Result<_>>()?,
    };

    let dirs = directions(cfg.tube.max_coeff);
    let mut kappas: Vec<Option<u64>> = vec![None; dirs.len()];
    let mut sizes = vec![0usize; dirs.len()];
    let mut sporadic = vec![];
    for r in rows.iter_mut().filter(|r| r.flagged) {
        let hit = dirs.iter().enumerate().find_map(|(i, &(a, b))| {
            tube_kappa(r.m, r.n, a, b).filter(|&k| k <= cfg.tube.max_kappa).map(|k| (i, k))
        });
        match hit {
            Some((i, k)) => {
                kappas[i] = Some(kappas[i].map_or(k, |old| old.max(k)));
                sizes[i] += 1;
                r.cluster = Some(i);
            }
            None => sporadic.push((r.m, r.n)),
        }
    }
    // renumber used directions densely in search order
    let mut ids = vec![None; dirs.len()];
    let mut clusters = vec![];
    for (i, &(a, b)) in dirs.iter().enumerate() {
        if let Some(kappa) = kappas[i] {
            ids[i] = Some(clusters.len());
            clusters.push(Cluster { id: clusters.len(), a, b, kappa, size: sizes[i] });
        }
    }
    for r in rows.iter_mut() {
        r.cluster = r.cluster.and_then(|i| ids[i]);
    }
    Ok(ScanReport { s0, s, epsilon: cfg.epsilon.clone(), rows, clusters, sporadic })
}
