//! Rank-gradient arithmetic over doubling towers.
//!
//! Everything here is exact integer/rational bookkeeping on the level
//! data (V_j, k_j, index 2^j): first-Betti lower bounds, the two ratio
//! sequences bracketing the rank-gradient bound, the telescoped limit,
//! volume-growth consistency checks and the commensurable-cover bounds.

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::hvector;
use crate::tower::TowerState;

/// The per-level data the arithmetic needs; extracted from a
/// [`TowerState`] or re-ingested from a tower CSV.
#[derive(Clone, Debug)]
pub struct TowerSummary {
    pub vertices: Vec<u64>,
    pub face_sizes: Vec<Option<u64>>,
    pub indices: Vec<u64>,
}

impl TowerSummary {
    pub fn new(
        vertices: Vec<u64>,
        face_sizes: Vec<Option<u64>>,
        indices: Vec<u64>,
    ) -> Result<TowerSummary> {
        if vertices.is_empty() {
            return Err(Error::Domain("tower has no levels".into()));
        }
        if vertices.len() != face_sizes.len() || vertices.len() != indices.len() {
            return Err(Error::Domain("tower columns have different lengths".into()));
        }
        for (j, &idx) in indices.iter().enumerate() {
            if j > 60 {
                return Err(Error::Overflow("tower index"));
            }
            if idx != 1u64 << j {
                return Err(Error::Domain(format!(
                    "level {j} has index {idx}, expected {}",
                    1u64 << j
                )));
            }
        }
        for (j, &v) in vertices.iter().enumerate() {
            if v % 2 != 0 {
                return Err(Error::OddVertexCount(v as usize));
            }
            let _ = j;
        }
        Ok(TowerSummary {
            vertices,
            face_sizes,
            indices,
        })
    }

    pub fn from_tower(t: &TowerState) -> TowerSummary {
        TowerSummary {
            vertices: t.vertex_counts().iter().map(|&v| v as u64).collect(),
            face_sizes: t
                .face_sizes()
                .iter()
                .map(|k| k.map(|k| k as u64))
                .collect(),
            indices: t.indices(),
        }
    }

    /// Face sizes of the doublings actually observed, in level order.
    fn known_face_sizes(&self) -> Vec<u64> {
        self.face_sizes.iter().flatten().copied().collect()
    }
}

/// Reidemeister-Schreier bound: a subgroup of index `index` in a group
/// of rank `base_rank` has rank at most `index * (base_rank - 1) + 1`.
pub fn rs_upper_bound(base_rank: u64, index: u64) -> u64 {
    assert!(base_rank >= 1 && index >= 1, "rank and index must be positive");
    index
        .checked_mul(base_rank - 1)
        .and_then(|x| x.checked_add(1))
        .expect("rank bound overflow")
}

/// Per-level `V_j/2 - 1`, cross-checked against the h-vector route.
pub fn b1_bound_sequence(t: &TowerState) -> Result<Vec<i64>> {
    let mut out = Vec::with_capacity(t.levels.len());
    for level in &t.levels {
        let b1 = hvector::h1_from_vertex_count(level.polytope.vertex_count())?;
        assert_eq!(
            b1,
            hvector::h_vector(&level.polytope)?.h(1),
            "V/2 - 1 disagrees with the h-vector at a tower level"
        );
        out.push(b1);
    }
    Ok(out)
}

/// One line of a gradient report.
#[derive(Clone, Debug)]
pub struct GradientRow {
    pub level: usize,
    pub index: u64,
    pub vertices: u64,
    /// V_j/2 - 1, the mod-2 first Betti number of the level's cover.
    pub b1_lower: i64,
    /// (V_j - 4) / 2^{j+1}: per-level rank-gradient lower bound from
    /// rank - 1 >= b1 - 1.
    pub ratio_lo: Rational64,
    /// (V_j - 3) / 2^{j+1}: the same sequence shifted by 2^{-(j+1)};
    /// both brackets share the limit.
    pub ratio_hi: Rational64,
    /// V_j/2 - 2: bound surviving passage to a commensurable manifold.
    pub commensurable_b1: i64,
    /// Reidemeister-Schreier ceiling for an assumed base rank.
    pub rs_upper: Option<u64>,
}

/// Ratio sequences and limit estimate for a tower.
#[derive(Clone, Debug)]
pub struct GradientReport {
    pub rows: Vec<GradientRow>,
    /// Telescoped limit `(V_0 - sum k_i 2^{-i}) / 2`, computed from the
    /// observed face sizes with the last one continued forever. None
    /// when no doubling was observed.
    pub limit_estimate: Option<Rational64>,
    /// Whether every observed face size equals the last one, i.e. the
    /// closed form used a genuinely constant sequence.
    pub tail_constant: bool,
}

/// Rank-gradient ratio report from the level data alone.
pub fn rgr_ratios_from_summary(
    s: &TowerSummary,
    base_rank: Option<u64>,
) -> Result<GradientReport> {
    let mut rows = Vec::with_capacity(s.vertices.len());
    for (j, (&v, &index)) in s.vertices.iter().zip(&s.indices).enumerate() {
        let denom = 2 * index as i64;
        rows.push(GradientRow {
            level: j,
            index,
            vertices: v,
            b1_lower: v as i64 / 2 - 1,
            ratio_lo: Rational64::new(v as i64 - 4, denom),
            ratio_hi: Rational64::new(v as i64 - 3, denom),
            commensurable_b1: v as i64 / 2 - 2,
            rs_upper: base_rank.map(|r| rs_upper_bound(r, index)),
        });
    }
    let ks = s.known_face_sizes();
    let limit_estimate = if ks.is_empty() {
        None
    } else {
        Some(closed_form_limit(s.vertices[0], &ks)?)
    };
    let tail_constant = !ks.is_empty() && ks.iter().all(|&k| k == *ks.last().unwrap());
    Ok(GradientReport {
        rows,
        limit_estimate,
        tail_constant,
    })
}

/// Rank-gradient ratio report for a built tower.
pub fn rgr_ratios(t: &TowerState, base_rank: Option<u64>) -> Result<GradientReport> {
    rgr_ratios_from_summary(&TowerSummary::from_tower(t), base_rank)
}

/// Exact limit of `(V_j - c)/2^{j+1}` under the doubling recurrence
/// `V_{j+1} = 2 V_j - 2 k_j`, for a face-size sequence that continues
/// with its last value forever:
/// `(V_0 - sum_{i >= 0} k_i 2^{-i}) / 2`.
pub fn closed_form_limit(v0: u64, face_sizes: &[u64]) -> Result<Rational64> {
    if face_sizes.is_empty() {
        return Err(Error::Domain(
            "closed-form limit needs at least one face size".into(),
        ));
    }
    if face_sizes.len() > 60 {
        return Err(Error::Overflow("closed-form limit"));
    }
    let m = face_sizes.len();
    let mut sum = Rational64::new(0, 1);
    for (i, &k) in face_sizes[..m - 1].iter().enumerate() {
        sum += Rational64::new(k as i64, 1i64 << i);
    }
    // constant tail: k_last * sum_{i >= m-1} 2^{-i} = k_last * 2^{2-m}
    let tail = Rational64::new(face_sizes[m - 1] as i64 * 2, 1i64 << (m - 1));
    sum += tail;
    Ok((Rational64::from_integer(v0 as i64) - sum) / 2)
}

/// The volume sandwich `C(V-8) <= vol <= D(V-10)` for a vertex count
/// and a pair of positive constants.
#[derive(Clone, Debug)]
pub struct AtkinsonInterval {
    pub vertices: u64,
    pub c: Rational64,
    pub d: Rational64,
}

impl AtkinsonInterval {
    pub fn new(vertices: u64, c: Rational64, d: Rational64) -> Result<AtkinsonInterval> {
        if c <= Rational64::new(0, 1) {
            return Err(Error::NonPositiveConstant(c.to_string()));
        }
        if d <= Rational64::new(0, 1) {
            return Err(Error::NonPositiveConstant(d.to_string()));
        }
        Ok(AtkinsonInterval { vertices, c, d })
    }

    pub fn lo(&self) -> Rational64 {
        self.c * Rational64::from_integer(self.vertices as i64 - 8)
    }

    pub fn hi(&self) -> Rational64 {
        self.d * Rational64::from_integer(self.vertices as i64 - 10)
    }

    pub fn is_consistent(&self) -> bool {
        self.lo() <= self.hi()
    }
}

#[derive(Clone, Debug)]
pub struct AtkinsonRow {
    pub level: usize,
    /// Volume in units of the seed volume: 2^j.
    pub volume_proxy: u64,
    /// Required vertex count `2^j (C/D) (V_0 - 8) + 10`.
    pub required: Rational64,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct AtkinsonReport {
    pub rho: Rational64,
    pub seed_interval: AtkinsonInterval,
    /// The volume bound only applies to seeds with more than 8
    /// vertices; rows are empty otherwise.
    pub precondition_ok: bool,
    pub rows: Vec<AtkinsonRow>,
    /// Largest C/D for which every level passes.
    pub max_rho: Option<Rational64>,
}

/// Check the volume-growth consequence `V_j >= 2^j (C/D) (V_0 - 8) + 10`
/// at every level.
pub fn atkinson_check_summary(
    s: &TowerSummary,
    c: Rational64,
    d: Rational64,
) -> Result<AtkinsonReport> {
    let v0 = s.vertices[0];
    let seed_interval = AtkinsonInterval::new(v0, c, d)?;
    let rho = c / d;
    if v0 <= 8 {
        return Ok(AtkinsonReport {
            rho,
            seed_interval,
            precondition_ok: false,
            rows: Vec::new(),
            max_rho: None,
        });
    }
    let base = Rational64::from_integer(v0 as i64 - 8);
    let mut rows = Vec::with_capacity(s.vertices.len());
    let mut max_rho: Option<Rational64> = None;
    for (j, (&v, &index)) in s.vertices.iter().zip(&s.indices).enumerate() {
        let scale = Rational64::from_integer(index as i64);
        let required = rho * scale * base + Rational64::from_integer(10);
        let pass = Rational64::from_integer(v as i64) >= required;
        // the level passes any rho <= (V_j - 10) / (2^j (V_0 - 8))
        let level_max = Rational64::new(v as i64 - 10, 1) / (scale * base);
        max_rho = Some(match max_rho {
            None => level_max,
            Some(m) => m.min(level_max),
        });
        rows.push(AtkinsonRow {
            level: j,
            volume_proxy: index,
            required,
            pass,
        });
    }
    Ok(AtkinsonReport {
        rho,
        seed_interval,
        precondition_ok: true,
        rows,
        max_rho,
    })
}

pub fn atkinson_check(t: &TowerState, c: Rational64, d: Rational64) -> Result<AtkinsonReport> {
    atkinson_check_summary(&TowerSummary::from_tower(t), c, d)
}

/// Bounds surviving to a commensurable manifold's tower: `V_j/2 - 2`,
/// with the cover indices known only as upper bounds 2^j.
#[derive(Clone, Debug)]
pub struct CommensurableBounds {
    pub b1_lower: Vec<i64>,
    pub index_upper_bound: Vec<u64>,
}

pub fn commensurable_bounds(t: &TowerState) -> Result<CommensurableBounds> {
    let s = TowerSummary::from_tower(t);
    Ok(CommensurableBounds {
        b1_lower: s.vertices.iter().map(|&v| v as i64 / 2 - 2).collect(),
        index_upper_bound: s.indices.clone(),
    })
}

/// Render an exact ratio with exactly six decimal places, rounding
/// half away from zero.
pub fn format_ratio(r: Rational64) -> String {
    let scaled = r * Rational64::from_integer(1_000_000);
    let num = *scaled.numer();
    let den = *scaled.denom(); // > 0 after Ratio normalization
    let mut q = num.div_euclid(den);
    let rem = num.rem_euclid(den);
    if 2 * rem >= den {
        q += 1;
    }
    let sign = if q < 0 { "-" } else { "" };
    let q = q.abs();
    format!("{sign}{}.{:06}", q / 1_000_000, q % 1_000_000)
}
