//! Finite point sets in the disk, optionally labeled by generation, together
//! with the weights `1 - |z|²` of the measure `μ`.

use std::f64::consts::TAU;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::DiskPoint;

/// Tolerance for a cached weight against `1 - |z|²` recomputed from the
/// coordinates.
const WEIGHT_SLACK: f64 = 8.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SetPoint {
    #[serde(flatten)]
    pub point: DiskPoint,
    #[serde(rename = "gen", default, skip_serializing_if = "Option::is_none")]
    pub generation: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
}

#[derive(Deserialize)]
struct RawPointSet {
    points: Vec<SetPoint>,
}

/// A finite candidate sampling set.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "RawPointSet")]
pub struct PointSet {
    points: Vec<SetPoint>,
}

impl TryFrom<RawPointSet> for PointSet {
    type Error = Error;

    fn try_from(raw: RawPointSet) -> Result<Self> {
        let mut set = PointSet::default();
        for p in raw.points {
            set.push_entry(p)?;
        }
        Ok(set)
    }
}

impl PointSet {
    pub fn new(points: impl IntoIterator<Item = DiskPoint>) -> Self {
        PointSet {
            points: points
                .into_iter()
                .map(|point| SetPoint {
                    point,
                    generation: None,
                    weight: None,
                })
                .collect(),
        }
    }

    fn push_entry(&mut self, entry: SetPoint) -> Result<()> {
        if let Some(w) = entry.weight {
            let computed = entry.point.weight();
            if !(w - computed).abs().le(&WEIGHT_SLACK) {
                return Err(Error::InvalidPointSet(format!(
                    "cached weight {w} differs from 1-|z|^2 = {computed}"
                )));
            }
        }
        self.points.push(entry);
        Ok(())
    }

    pub fn push(&mut self, point: DiskPoint, generation: Option<u32>) {
        self.points.push(SetPoint {
            point,
            generation,
            weight: None,
        });
    }

    /// Push with an exactly known weight, checked against the coordinates.
    pub fn push_weighted(&mut self, point: DiskPoint, generation: Option<u32>, weight: f64) -> Result<()> {
        self.push_entry(SetPoint {
            point,
            generation,
            weight: Some(weight),
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn entries(&self) -> &[SetPoint] {
        &self.points
    }

    pub fn iter(&self) -> impl Iterator<Item = &DiskPoint> + '_ {
        self.points.iter().map(|p| &p.point)
    }

    /// `1 - |z|²`, from the cache when present.
    pub fn weight(&self, i: usize) -> f64 {
        let p = &self.points[i];
        p.weight.unwrap_or_else(|| p.point.weight())
    }

    pub fn generation(&self, i: usize) -> Option<u32> {
        self.points[i].generation
    }

    pub fn filter(&self, keep: impl Fn(&SetPoint) -> bool) -> PointSet {
        PointSet {
            points: self.points.iter().filter(|p| keep(p)).copied().collect(),
        }
    }

    pub fn extend(&mut self, other: &PointSet) {
        self.points.extend_from_slice(&other.points);
    }

    /// Distinct generation labels in order of first appearance.
    pub fn generations(&self) -> Vec<u32> {
        let mut out: Vec<u32> = Vec::new();
        for p in &self.points {
            if let Some(g) = p.generation {
                if !out.contains(&g) {
                    out.push(g);
                }
            }
        }
        out
    }
}

/// Rings `n = n_min..=n_max` of `4^n` equispaced points at radius
/// `1 - 2^{-n}`, keeping arguments in `[lo, hi)` when a sector is given.
pub fn multi_ring(n_min: u32, n_max: u32, sector: Option<(f64, f64)>) -> Result<PointSet> {
    if n_min == 0 || n_max < n_min || n_max > 13 {
        return Err(Error::InvalidPointSet(format!(
            "ring range {n_min}..={n_max} must satisfy 1 <= n_min <= n_max <= 13"
        )));
    }
    let mut set = PointSet::default();
    for n in n_min..=n_max {
        let count = 1usize << (2 * n);
        let depth = 0.5f64.powi(n as i32);
        let radius = 1.0 - depth;
        // (1 - (1-d)^2) = 2d - d^2, exact for d = 2^-n
        let weight = 2.0 * depth - depth * depth;
        for j in 0..count {
            let angle = TAU * j as f64 / count as f64;
            if let Some((lo, hi)) = sector {
                if !(lo <= angle && angle < hi) {
                    continue;
                }
            }
            set.push_weighted(DiskPoint::from_polar(radius, angle)?, Some(n), weight)?;
        }
    }
    Ok(set)
}

/// `count` points uniform in the disk of radius `max_radius`.
pub fn random_disk<R: Rng>(rng: &mut R, count: usize, max_radius: f64) -> Result<PointSet> {
    let mut set = PointSet::default();
    for _ in 0..count {
        let r = max_radius * rng.gen::<f64>().sqrt();
        let t = TAU * rng.gen::<f64>();
        set.push(DiskPoint::from_polar(r, t)?, None);
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_weights_are_exact() {
        let set = multi_ring(1, 6, None).unwrap();
        assert_eq!(set.len(), (1..=6).map(|n| 1usize << (2 * n)).sum::<usize>());
        for (i, z) in set.iter().enumerate() {
            assert!((set.weight(i) - z.weight()).abs() <= WEIGHT_SLACK);
        }
        assert_eq!(set.generations(), (1..=6).collect::<Vec<_>>());
    }

    #[test]
    fn sector_filter_keeps_half() {
        let set = multi_ring(2, 4, Some((std::f64::consts::PI, TAU))).unwrap();
        assert_eq!(set.len(), (2..=4).map(|n| 1usize << (2 * n - 1)).sum::<usize>());
        assert!(set.iter().all(|z| z.im() <= 1e-15));
    }

    #[test]
    fn json_round_trip_and_weight_check() {
        let set = multi_ring(1, 2, None).unwrap();
        let text = serde_json::to_string(&set).unwrap();
        let back: PointSet = serde_json::from_str(&text).unwrap();
        assert_eq!(back, set);
        let bad = r#"{"points":[{"re":0.5,"im":0.0,"weight":0.5}]}"#;
        assert!(serde_json::from_str::<PointSet>(bad).is_err());
        let plain = r#"{"points":[{"re":0.5,"im":0.0,"gen":3}]}"#;
        let set: PointSet = serde_json::from_str(plain).unwrap();
        assert_eq!(set.generation(0), Some(3));
        assert!((set.weight(0) - 0.75).abs() < 1e-15);
    }
}
