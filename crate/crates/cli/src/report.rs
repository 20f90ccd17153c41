//! JSON report types. Every command wraps its output in [`Report`].
//! Matrices and vectors hold the integer encodings of field elements.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use quadhull_core::search::{SearchResult, WStats};
use quadhull_core::{HullReport, MultReduction, QuadHull};

use crate::format::mat_to_rows;

pub type Matrix = Vec<Vec<u32>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report<T> {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub output: Option<T>,
    pub error: Option<String>,
    pub seconds: f64,
    pub budget_exceeded: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionJson {
    #[serde(rename = "algebra_spec_A")]
    pub algebra_spec_a: String,
    #[serde(rename = "algebra_spec_B")]
    pub algebra_spec_b: String,
    pub phi: Matrix,
    pub omega: Option<Matrix>,
}

impl ReductionJson {
    pub fn new(spec_a: &str, spec_b: &str, r: &MultReduction) -> ReductionJson {
        ReductionJson {
            algebra_spec_a: spec_a.into(),
            algebra_spec_b: spec_b.into(),
            phi: mat_to_rows(r.phi()),
            omega: r.omega().map(mat_to_rows),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// `"not_injective"` or `"form_nonzero_at_canonical_point"`.
    pub kind: String,
    pub kernel_vector: Option<Vec<u32>>,
    /// Quadratic form in `I₂(φ)` over the pairs `i ≤ j`.
    pub form: Option<Vec<u32>>,
    pub form_text: Option<String>,
    /// The form evaluated at the canonical point, in `A`.
    pub value: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub verified: bool,
    pub reduction: Option<ReductionJson>,
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullJson {
    pub k: usize,
    pub n: usize,
    pub dim_i2: usize,
    pub i2_basis: Matrix,
    pub point_counts: BTreeMap<u32, u64>,
    pub ci_proxy: bool,
    pub canonical_in_hull: Option<bool>,
    pub points: Matrix,
    pub secant_points_checked: Option<usize>,
    pub secant_violations: Option<usize>,
}

impl HullJson {
    pub fn new(hull: &QuadHull, n: usize, r: &HullReport) -> HullJson {
        HullJson {
            k: hull.ambient_k(),
            n,
            dim_i2: r.dim_i2,
            i2_basis: hull.i2().basis().iter().map(|v| v.iter().map(|e| e.0).collect()).collect(),
            point_counts: r.point_counts.clone(),
            ci_proxy: r.ci_proxy,
            canonical_in_hull: r.canonical_in_hull,
            points: r.points_m1.iter().map(|v| v.iter().map(|e| e.0).collect()).collect(),
            secant_points_checked: None,
            secant_violations: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerW {
    pub signature: Vec<u32>,
    pub e_cap_w: Vec<usize>,
    pub dim_i2: usize,
    pub point_counts: BTreeMap<u32, u64>,
    pub unique: bool,
}

impl From<&WStats> for PerW {
    fn from(s: &WStats) -> PerW {
        PerW {
            signature: s.signature(),
            e_cap_w: s.e_cap_w.clone(),
            dim_i2: s.dim_i2,
            point_counts: s.point_counts.clone(),
            unique: s.unique,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchJson {
    pub algebra: String,
    pub n: usize,
    #[serde(rename = "count_W")]
    pub count_w: usize,
    #[serde(rename = "per_W")]
    pub per_w: Vec<PerW>,
    pub nodes: u64,
    pub seconds: f64,
}

impl SearchJson {
    pub fn new(algebra: &str, r: &SearchResult, seconds: f64) -> SearchJson {
        SearchJson {
            algebra: algebra.into(),
            n: r.n,
            count_w: r.count(),
            per_w: r.per_w.iter().map(PerW::from).collect(),
            nodes: r.nodes,
            seconds,
        }
    }

    /// Number of subspaces per rational point count of the hull.
    pub fn split(&self) -> BTreeMap<u64, usize> {
        let mut out = BTreeMap::new();
        for w in &self.per_w {
            *out.entry(w.point_counts.get(&1).copied().unwrap_or(0)).or_insert(0) += 1;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RowResult {
    pub k: usize,
    pub n: usize,
    pub expected_count: usize,
    pub expected_split: BTreeMap<u64, usize>,
    pub found_count: Option<usize>,
    pub found_split: Option<BTreeMap<u64, usize>>,
    /// Every `W` has `dim I₂ = binom(k+1, 2) − n`.
    pub dims_ok: Option<bool>,
    /// `"PASS"`, `"FAIL"`, `"SKIPPED"` (needs `--long`) or `"BUDGET"`.
    pub status: String,
    pub nodes: Option<u64>,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TablesOutput {
    pub table: u8,
    pub title: String,
    pub rows: Vec<RowResult>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DelPezzoOutput {
    pub phi: Matrix,
    pub omega: Matrix,
    pub phi_matches_fixture: bool,
    pub omega_matches_fixture: bool,
    pub quadrics: Vec<String>,
    pub i2_basis: Matrix,
    /// `[n, k, d]`.
    pub code: [usize; 3],
    pub dim_square: usize,
    pub hull_points: u64,
    pub canonical_in_hull: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupercodeOutput {
    pub found: bool,
    /// Coordinates of the witness point, each an element of `A`.
    pub point: Option<Matrix>,
    pub reduction: Option<ReductionJson>,
}
