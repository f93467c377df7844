//! Maximal point lattices on geodesic balls, with certificates.
//!
//! A lattice of parameter `r` is a point set whose `r/4`-balls are pairwise
//! disjoint (packing), whose `r/2`-balls cover the domain (covering), and
//! whose `r`-balls overlap with bounded multiplicity. Construction is greedy:
//! area-uniform random candidates are accepted whenever they keep the packing
//! property, until a long run of consecutive rejections signals maximality.
//! Maximality is then not taken on faith — packing, covering and multiplicity
//! are certified on a fine grid, and a failed covering certificate triggers
//! another candidate round.

use crate::error::{Error, Result};
use crate::geometry::{geodesic_distance, Point};
use crate::io;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::f64::consts::PI;

/// Certificates measured on the finished lattice.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct Certificates {
    #[serde(rename = "packingOK")]
    pub packing_ok: bool,
    #[serde(rename = "coveringOK")]
    pub covering_ok: bool,
    #[serde(rename = "maxMultiplicity")]
    pub max_multiplicity: u32,
    /// Smallest pairwise center distance observed.
    #[serde(rename = "minPairwiseDistance")]
    pub min_pairwise: f64,
    /// Largest distance from a certification grid point to its nearest center.
    #[serde(rename = "worstCoveringGap")]
    pub worst_covering_gap: f64,
}

/// An `(r, N_d)`-lattice on `B(o, R_dom)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Lattice {
    r: f64,
    #[serde(rename = "R_dom")]
    r_dom: f64,
    seed: u64,
    centers: Vec<Point>,
    certificates: Certificates,
}

/// Multiplicity bound `N_d = 12^d e^{√(d−1)}` for the cover by `r`-balls.
pub fn multiplicity_bound(d: u32) -> Result<f64> {
    if d < 1 {
        return Err(Error::InvalidArgument(format!(
            "dimension must be at least 1, got {d}"
        )));
    }
    Ok(12.0_f64.powi(d as i32) * ((d as f64 - 1.0).sqrt()).exp())
}

/// Greedy maximal construction with certification.
///
/// Candidates are drawn area-uniformly from `B(o, R_dom)` and accepted when
/// at distance at least `r/2` from every accepted center; the stream stops
/// after `10 × (current size)` consecutive rejections. Covering is certified
/// on a grid of spacing `r/8` over the shrunken ball `B(o, R_dom − r)`; if it
/// fails, up to three further candidate rounds are run before giving up.
pub fn build_lattice(r: f64, r_dom: f64, seed: u64) -> Result<Lattice> {
    if !(r > 0.0) || !r_dom.is_finite() || r > r_dom {
        return Err(Error::InvalidArgument(format!(
            "need 0 < r <= R_dom, got r = {r}, R_dom = {r_dom}"
        )));
    }
    if r == r_dom {
        // the covering region degenerates to the origin
        return Ok(Lattice {
            r,
            r_dom,
            seed,
            centers: vec![Point::origin()],
            certificates: Certificates {
                packing_ok: true,
                covering_ok: true,
                max_multiplicity: 1,
                min_pairwise: f64::INFINITY,
                worst_covering_gap: 0.0,
            },
        })
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut index = DiskHash::new(r, r_dom);
    let mut centers = vec![Point::origin()];
    index.insert(Point::origin(), 0);

    for attempt in 0..4u32 {
        greedy_round(&mut rng, &mut index, &mut centers, r, r_dom);
        let certificates = certify(&centers, &index, r, r_dom);
        if certificates.covering_ok {
            return Ok(Lattice {
                r,
                r_dom,
                seed,
                centers,
                certificates,
            });
        }
        if attempt == 3 {
            return Err(Error::CoveringFailed {
                attempts: attempt + 1,
                worst_gap: certificates.worst_covering_gap,
                allowed: 0.5 * r + 0.125 * r,
            });
        }
    }
    unreachable!("the retry loop either returns or errors")
}

fn greedy_round(
    rng: &mut ChaCha8Rng,
    index: &mut DiskHash,
    centers: &mut Vec<Point>,
    r: f64,
    r_dom: f64,
) {
    let cosh_span = r_dom.cosh() - 1.0;
    let mut rejects = 0usize;
    while rejects < 10 * centers.len() {
        let s = (1.0 + rng.random::<f64>() * cosh_span).acosh();
        let theta = rng.random::<f64>() * 2.0 * PI;
        let candidate = Point::from_polar(s, theta);
        if index.min_distance_below(candidate, centers, 0.5 * r) {
            rejects += 1;
        } else {
            index.insert(candidate, centers.len());
            centers.push(candidate);
            rejects = 0;
        }
    }
}

fn certify(centers: &[Point], index: &DiskHash, r: f64, r_dom: f64) -> Certificates {
    // packing: every pair at distance >= r/2 (up to roundoff)
    let mut min_pairwise = f64::INFINITY;
    for (i, &c) in centers.iter().enumerate() {
        for j in index.neighbors(c, 0.75 * r) {
            if j != i {
                min_pairwise = min_pairwise.min(geodesic_distance(c, centers[j]));
            }
        }
    }
    let packing_ok = min_pairwise >= 0.5 * r - 1e-12;

    // covering and multiplicity on a grid of spacing r/8 over B(o, R_dom - r)
    let spacing = 0.125 * r;
    let cover_radius = r_dom - r;
    let mut worst_gap = 0.0f64;
    let mut max_multiplicity = 0u32;
    let mut check = |p: Point| {
        let mut nearest = f64::INFINITY;
        for j in index.neighbors(p, 0.5 * r + 2.0 * spacing) {
            nearest = nearest.min(geodesic_distance(p, centers[j]));
        }
        worst_gap = worst_gap.max(nearest);
        let mut mult = 0u32;
        for j in index.neighbors(p, r) {
            if geodesic_distance(p, centers[j]) < r {
                mult += 1;
            }
        }
        max_multiplicity = max_multiplicity.max(mult);
    };
    check(Point::origin());
    let n_rings = (cover_radius / spacing).ceil() as usize;
    for i in 1..=n_rings {
        let s = (i as f64 * spacing).min(cover_radius);
        let n_theta = ((2.0 * PI * s.sinh()) / spacing).ceil().max(1.0) as usize;
        for k in 0..n_theta {
            check(Point::from_polar(s, 2.0 * PI * k as f64 / n_theta as f64));
        }
    }
    let covering_ok = worst_gap <= 0.5 * r + spacing;
    Certificates {
        packing_ok,
        covering_ok,
        max_multiplicity,
        min_pairwise,
        worst_covering_gap: worst_gap,
    }
}

impl Lattice {
    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn domain_radius(&self) -> f64 {
        self.r_dom
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn centers(&self) -> &[Point] {
        &self.centers
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn certificates(&self) -> &Certificates {
        &self.certificates
    }

    /// Deterministic JSON export (17-significant-digit floats, fixed field
    /// order).
    pub fn to_json(&self) -> Result<String> {
        io::to_json_string(self)
    }

    pub fn from_json(text: &str) -> Result<Lattice> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Bucket index over euclidean disk coordinates. Buckets are sized from the
/// metric distortion at the domain boundary, so a window scan bounded by the
/// euclidean extent of a hyperbolic ball is exact.
struct DiskHash {
    cell: f64,
    buckets: HashMap<(i32, i32), Vec<usize>>,
}

impl DiskHash {
    fn new(r: f64, r_dom: f64) -> Self {
        // euclidean size of a hyperbolic r/2 step at the boundary radius
        let boundary = (0.5 * r_dom).tanh();
        let shrink = 1.0 - boundary * boundary;
        let cell = (0.25 * r * shrink).max(1e-6);
        DiskHash {
            cell,
            buckets: HashMap::new(),
        }
    }

    fn key(&self, p: Point) -> (i32, i32) {
        (
            (p.u() / self.cell).floor() as i32,
            (p.v() / self.cell).floor() as i32,
        )
    }

    fn insert(&mut self, p: Point, id: usize) {
        self.buckets.entry(self.key(p)).or_default().push(id);
    }

    /// Euclidean radius that surely contains the hyperbolic ball B(p, delta).
    fn euclid_reach(&self, p: Point, delta: f64) -> f64 {
        let t = (0.5 * delta).tanh();
        let nz = p.norm_sq().sqrt();
        t * (1.0 - nz * nz) / (1.0 - nz * t).max(1e-12)
    }

    /// Indices of stored points within hyperbolic distance `delta` of `p`
    /// (superset; callers re-check exact distances as needed).
    fn neighbors(&self, p: Point, delta: f64) -> impl Iterator<Item = usize> + '_ {
        let reach = self.euclid_reach(p, delta);
        let w = (reach / self.cell).ceil() as i32;
        let (ku, kv) = self.key(p);
        (-w..=w)
            .flat_map(move |du| (-w..=w).map(move |dv| (ku + du, kv + dv)))
            .filter_map(|k| self.buckets.get(&k))
            .flatten()
            .copied()
    }

    /// True when some stored point lies strictly within `delta` of `p`.
    fn min_distance_below(&self, p: Point, centers: &[Point], delta: f64) -> bool {
        self.neighbors(p, delta)
            .any(|j| geodesic_distance(p, centers[j]) < delta)
    }
}
