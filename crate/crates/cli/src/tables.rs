//! Expected results of the four minimal-algorithm tables, embedded as data
//! so `tables` diffs a fresh search against published values rather than
//! against a previous run.

use std::collections::BTreeMap;
use std::time::Instant;

use quadhull_core::search::SearchProblem;
use quadhull_core::sym::sym_dim;
use quadhull_core::Algebra;

use crate::driver;
use crate::report::{RowResult, SearchJson, TablesOutput};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `F_{q^k}`.
    Field,
    /// `F_q[t]/(t^k)`.
    Truncated,
}

#[derive(Clone, Copy, Debug)]
pub struct Row {
    pub k: usize,
    pub n: usize,
    pub count: usize,
    /// `(#Z₂(F_q), number of W)`.
    pub split: &'static [(u64, usize)],
    /// Only run with `--long`.
    pub long: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct Table {
    pub id: u8,
    pub q: u32,
    pub family: Family,
    pub rows: &'static [Row],
}

const fn row(k: usize, n: usize, count: usize, split: &'static [(u64, usize)], long: bool) -> Row {
    Row { k, n, count, split, long }
}

pub const TABLES: [Table; 4] = [
    Table {
        id: 1,
        q: 2,
        family: Family::Field,
        rows: &[
            row(2, 3, 1, &[(3, 1)], false),
            row(3, 6, 1, &[(7, 1)], false),
            row(4, 9, 25, &[(9, 25)], false),
            row(5, 13, 2015, &[(13, 2015)], false),
            row(6, 15, 21, &[(15, 21)], true),
        ],
    },
    Table {
        id: 2,
        q: 3,
        family: Family::Field,
        rows: &[
            row(2, 3, 1, &[(4, 1)], false),
            row(3, 6, 1, &[(13, 1)], false),
            row(4, 9, 234, &[(10, 84), (16, 150)], false),
            row(5, 11, 121, &[(11, 121)], true),
        ],
    },
    Table {
        id: 3,
        q: 2,
        family: Family::Truncated,
        rows: &[
            row(2, 3, 1, &[(3, 1)], false),
            row(3, 5, 2, &[(5, 2)], false),
            row(4, 8, 4, &[(9, 4)], false),
            row(5, 11, 112, &[(11, 96), (13, 16)], false),
            row(6, 14, 384, &[(15, 384)], true),
        ],
    },
    Table {
        id: 4,
        q: 3,
        family: Family::Truncated,
        rows: &[
            row(2, 3, 1, &[(4, 1)], false),
            row(3, 5, 3, &[(7, 3)], false),
            row(4, 8, 252, &[(10, 243), (16, 9)], false),
            row(5, 10, 243, &[(13, 243)], true),
        ],
    },
];

pub fn table(id: u8) -> Option<&'static Table> {
    TABLES.iter().find(|t| t.id == id)
}

impl Table {
    pub fn title(&self) -> String {
        match self.family {
            Family::Field => format!("Table {}: q = {}, A_k = F_{{q^k}}", self.id, self.q),
            Family::Truncated => format!("Table {}: q = {}, A_k = F_q[t]/(t^k)", self.id, self.q),
        }
    }

    pub fn spec(&self, k: usize) -> String {
        match self.family {
            Family::Field => format!("gfext:{}:{}", self.q, k),
            Family::Truncated => format!("trunc:{}:{}", self.q, k),
        }
    }

    pub fn algebra(&self, k: usize) -> Result<Algebra, CliError> {
        Ok(match self.family {
            Family::Field => Algebra::gf_ext(self.q, k)?,
            Family::Truncated => Algebra::truncated(self.q, k)?,
        })
    }

    /// Runs one row and compares it with the embedded values.
    pub fn run_row(&self, r: &Row, budget: u64, workers: usize) -> Result<RowResult, CliError> {
        let expected_split: BTreeMap<u64, usize> = r.split.iter().copied().collect();
        let t = Instant::now();
        let p = SearchProblem::new(&self.algebra(r.k)?)?;
        let res = match driver::search(&p, r.n, budget, workers) {
            Ok(res) => res,
            Err(e) if e.is_budget() => {
                return Ok(RowResult {
                    k: r.k,
                    n: r.n,
                    expected_count: r.count,
                    expected_split,
                    found_count: None,
                    found_split: None,
                    dims_ok: None,
                    status: "BUDGET".into(),
                    nodes: Some(budget),
                    seconds: t.elapsed().as_secs_f64(),
                })
            }
            Err(e) => return Err(e),
        };
        let seconds = t.elapsed().as_secs_f64();
        let json = SearchJson::new(&self.spec(r.k), &res, seconds);
        let split = json.split();
        let dims_ok = res.per_w.iter().all(|s| s.dim_i2 + r.n == sym_dim(r.k));
        let pass = res.count() == r.count && split == expected_split && dims_ok;
        Ok(RowResult {
            k: r.k,
            n: r.n,
            expected_count: r.count,
            expected_split,
            found_count: Some(res.count()),
            found_split: Some(split),
            dims_ok: Some(dims_ok),
            status: if pass { "PASS" } else { "FAIL" }.into(),
            nodes: Some(res.nodes),
            seconds,
        })
    }

    pub fn run(&self, long: bool, budget: u64, workers: usize) -> Result<TablesOutput, CliError> {
        let mut rows = Vec::new();
        for r in self.rows {
            if r.long && !long {
                rows.push(RowResult {
                    k: r.k,
                    n: r.n,
                    expected_count: r.count,
                    expected_split: r.split.iter().copied().collect(),
                    found_count: None,
                    found_split: None,
                    dims_ok: None,
                    status: "SKIPPED".into(),
                    nodes: None,
                    seconds: 0.0,
                });
                continue;
            }
            rows.push(self.run_row(r, budget, workers)?);
        }
        Ok(TablesOutput { table: self.id, title: self.title(), rows })
    }
}

pub fn format_split(split: &BTreeMap<u64, usize>) -> String {
    if split.len() == 1 {
        let (pts, _) = split.iter().next().expect("one entry");
        return pts.to_string();
    }
    split.iter().map(|(pts, c)| format!("{c}: {pts}")).collect::<Vec<_>>().join(", ")
}

/// Human rendering in the published layout `k | n | nb. of W | #Z₂(F_q)`.
pub fn render(out: &TablesOutput) -> String {
    let mut s = format!("{}\n", out.title);
    s.push_str(&format!("{:>3} {:>3} {:>10} {:>24}   {:<8} {:>9}\n", "k", "n", "nb. of W", "#Z2(F_q)", "status", "seconds"));
    for r in &out.rows {
        let (count, split) = match (&r.found_count, &r.found_split) {
            (Some(c), Some(sp)) => (c.to_string(), format_split(sp)),
            _ => (format!("({})", r.expected_count), format!("({})", format_split(&r.expected_split))),
        };
        s.push_str(&format!("{:>3} {:>3} {:>10} {:>24}   {:<8} {:>9.2}\n", r.k, r.n, count, split, r.status, r.seconds));
    }
    s
}
