//! Enumeration of reciprocal polynomials with all roots on the unit circle.
//!
//! For even `d`, leading coefficient `c` and height `h`, every tuple
//! `(c_1, .., c_{d/2}) in [-h, h]^(d/2)` defines the reciprocal polynomial
//! `c x^(d/2) ... ` with half coefficients `(c, c_1, .., c_{d/2})`. Each
//! candidate runs through the stages circle, one distinct irreducible
//! factor, content one, not a polynomial in `x^k`, then multiplicative
//! dependence. The tallies form one [`SurveyRow`].
//!
//! Tuples are numbered lexicographically and cut into fixed blocks. With the
//! `parallel` feature the blocks of each checkpoint window run on rayon;
//! results are folded in block order so the row never depends on `jobs`.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::cheb::{
    all_roots_on_circle, all_roots_on_circle_small, expand_reciprocal, HalfCoeffs, SmallTrace,
};
use crate::error::{domain, Error, Result};
use crate::factorize;
use crate::mdep::{self, DependenceReport, MdepConfig};

const BLOCK: u64 = 2048;
const WINDOW: u64 = 64;

/// Counters of one survey cell.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRow {
    pub d: usize,
    pub c: i64,
    pub h: i64,
    pub poly: u64,
    pub circle: u64,
    pub irred: u64,
    pub prim: u64,
    pub non_xm: u64,
    pub dep: u64,
    pub npr: u64,
    pub m1: u64,
    pub m2: u64,
    pub m3: u64,
}

pub const CSV_HEADER: &str = "d,c,h,poly,circle,irred,prim,non_xm,dep,npr,m1,m2,m3";

impl SurveyRow {
    fn empty(d: usize, c: i64, h: i64) -> Self {
        SurveyRow {
            d,
            c,
            h,
            ..Default::default()
        }
    }

    fn counters(&self) -> [u64; 10] {
        [
            self.poly,
            self.circle,
            self.irred,
            self.prim,
            self.non_xm,
            self.dep,
            self.npr,
            self.m1,
            self.m2,
            self.m3,
        ]
    }

    fn add(&mut self, o: &SurveyRow) {
        self.poly += o.poly;
        self.circle += o.circle;
        self.irred += o.irred;
        self.prim += o.prim;
        self.non_xm += o.non_xm;
        self.dep += o.dep;
        self.npr += o.npr;
        self.m1 += o.m1;
        self.m2 += o.m2;
        self.m3 += o.m3;
    }

    pub fn to_csv_line(&self) -> String {
        let mut s = format!("{},{},{}", self.d, self.c, self.h);
        for v in self.counters() {
            let _ = write!(s, ",{v}");
        }
        s
    }

    /// Slash-separated counters from `circle` on.
    pub fn short(&self) -> String {
        self.counters()[1..]
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("/")
    }

    /// Violations of the monotone chain and of the `npr` partition.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let chain = &self.counters()[..7];
        let names = ["poly", "circle", "irred", "prim", "non_xm", "dep", "npr"];
        for i in 1..chain.len() {
            if chain[i] > chain[i - 1] {
                out.push(format!(
                    "{} = {} exceeds {} = {}",
                    names[i],
                    chain[i],
                    names[i - 1],
                    chain[i - 1]
                ));
            }
        }
        let n = self.d / 2;
        if n <= 18 && (2 * self.h as u64 + 1).checked_pow(n as u32) != Some(self.poly) {
            out.push(format!("poly = {} is not (2h+1)^(d/2)", self.poly));
        }
        if self.m1 + self.m2 + self.m3 != self.npr {
            out.push(format!(
                "npr = {} but m1 + m2 + m3 = {}",
                self.npr,
                self.m1 + self.m2 + self.m3
            ));
        }
        out
    }
}

/// Aligned text table of several rows.
pub fn format_table(rows: &[SurveyRow]) -> String {
    let head: Vec<&str> = CSV_HEADER.split(',').collect();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.to_csv_line().split(',').map(str::to_string).collect())
        .collect();
    let widths: Vec<usize> = (0..head.len())
        .map(|i| {
            cells
                .iter()
                .map(|r| r[i].len())
                .chain([head[i].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    let line = |fields: Vec<&str>| {
        fields
            .iter()
            .zip(&widths)
            .map(|(f, w)| format!("{f:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    out.push_str(&line(head.clone()));
    out.push('\n');
    for r in &cells {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
        out.push('\n');
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Stage {
    NotCircle,
    NotIrreducible,
    NotPrimitive,
    ComposedPower,
    Independent,
    PowerReducible,
    Dependent(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateVerdict {
    pub stage: Stage,
    pub report: Option<DependenceReport>,
}

impl CandidateVerdict {
    fn at(stage: Stage) -> Self {
        CandidateVerdict { stage, report: None }
    }
}

/// Runs one candidate through every stage.
pub fn classify_candidate(h: &HalfCoeffs) -> Result<CandidateVerdict> {
    if !all_roots_on_circle(h) {
        return Ok(CandidateVerdict::at(Stage::NotCircle));
    }
    classify_on_circle(h)
}

/// Stages after the circle test.
fn classify_on_circle(h: &HalfCoeffs) -> Result<CandidateVerdict> {
    let p = expand_reciprocal(h);
    let factors = factorize::factor_over_q(&p)?;
    if factors.len() != 1 {
        return Ok(CandidateVerdict::at(Stage::NotIrreducible));
    }
    if !p.content().is_one() {
        return Ok(CandidateVerdict::at(Stage::NotPrimitive));
    }
    if p.detect_composed_power().is_some() {
        return Ok(CandidateVerdict::at(Stage::ComposedPower));
    }
    let f = &factors[0].0;
    let report = mdep::analyze(f, &MdepConfig::default())?;
    let n = f.degree() / 2;
    let stage = if report.m_alpha >= n {
        Stage::Independent
    } else if report.power_reducible.is_some() {
        Stage::PowerReducible
    } else {
        Stage::Dependent(report.m_alpha)
    };
    Ok(CandidateVerdict {
        stage,
        report: Some(report),
    })
}

/// A dependent candidate as logged in the sidecar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepCase {
    pub half_coeffs: Vec<i64>,
    pub stage: Stage,
    pub m_alpha: usize,
    pub power_b: Option<u64>,
    /// Exponent vectors with cofactor `exp(2 pi i power / order)`.
    pub relations: Vec<LoggedRelation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoggedRelation {
    pub exponents: Vec<String>,
    pub order: u64,
    pub power: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyParams {
    pub d: usize,
    pub c: i64,
    pub h: i64,
}

impl SurveyParams {
    pub fn new(d: usize, c: i64, h: i64) -> Result<Self> {
        if d < 2 || d % 2 == 1 {
            return domain(format!("degree must be even and at least 2, got {d}"));
        }
        if c < 2 {
            return domain(format!("leading coefficient must be at least 2, got {c}"));
        }
        if h < 1 {
            return domain(format!("height must be at least 1, got {h}"));
        }
        if factorize::MAX_DEGREE < d {
            return Err(Error::Unsupported(format!(
                "degree {d} exceeds {}",
                factorize::MAX_DEGREE
            )));
        }
        let p = SurveyParams { d, c, h };
        if p.total().is_none() {
            return Err(Error::Unsupported("candidate count overflows u64".into()));
        }
        Ok(p)
    }

    fn total(&self) -> Option<u64> {
        (2 * self.h as u64 + 1).checked_pow((self.d / 2) as u32)
    }

    /// Half coefficients of the candidate with lexicographic index `i`.
    pub fn candidate(&self, mut i: u64) -> Vec<i64> {
        let n = self.d / 2;
        let base = 2 * self.h as u64 + 1;
        let mut c = vec![0i64; n + 1];
        c[0] = self.c;
        for j in (1..=n).rev() {
            c[j] = (i % base) as i64 - self.h;
            i /= base;
        }
        c
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: String,
    pub params: SurveyParams,
    /// Candidates with index below the cursor are tallied.
    pub cursor: u64,
    pub row: SurveyRow,
    pub dep_cases: Vec<DepCase>,
}

impl Checkpoint {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Domain(format!("cannot read checkpoint {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| Error::Domain(format!("malformed checkpoint {}: {e}", path.display())))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        let text = serde_json::to_string_pretty(self).map_err(|e| Error::Internal(e.to_string()))?;
        std::fs::write(&tmp, text)
            .and_then(|_| std::fs::rename(&tmp, path))
            .map_err(|e| Error::Domain(format!("cannot write checkpoint {}: {e}", path.display())))
    }
}

#[derive(Clone, Debug, Default)]
pub struct SurveyOptions {
    /// Worker threads. `Some(1)` runs sequentially, `None` uses every core.
    pub jobs: Option<usize>,
    pub checkpoint: Option<PathBuf>,
    /// Stop after this many checkpoint windows, leaving the rest for a resume.
    pub max_windows: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurveyOutcome {
    /// False when `max_windows` stopped the run early.
    pub complete: bool,
    pub row: SurveyRow,
    pub dep_cases: Vec<DepCase>,
    /// Dependent candidates whose image under `x -> -x` is missing.
    pub unpaired: Vec<Vec<i64>>,
    pub violations: Vec<String>,
}

#[derive(Default)]
struct Tally {
    row: SurveyRow,
    dep: Vec<DepCase>,
}

fn annotate(e: Error, c: &[i64]) -> Error {
    let tag = |m: String| format!("candidate {c:?}: {m}");
    match e {
        Error::Domain(m) => Error::Domain(tag(m)),
        Error::Precision(m) => Error::Precision(tag(m)),
        Error::Unsupported(m) => Error::Unsupported(tag(m)),
        Error::SearchLimit(m) => Error::SearchLimit(tag(m)),
        Error::Internal(m) => Error::Internal(tag(m)),
    }
}

fn log_case(c: &[i64], v: &CandidateVerdict) -> DepCase {
    let rep = v.report.as_ref();
    DepCase {
        half_coeffs: c.to_vec(),
        stage: v.stage,
        m_alpha: rep.map_or(0, |r| r.m_alpha),
        power_b: rep.and_then(|r| r.power_reducible.as_ref().map(|p| p.b)),
        relations: rep
            .map(|r| {
                r.relations
                    .iter()
                    .map(|rel| LoggedRelation {
                        exponents: rel.exponents().iter().map(BigInt::to_string).collect(),
                        order: rel.cofactor().order,
                        power: rel.cofactor().power,
                    })
                    .collect()
            })
            .unwrap_or_default(),
    }
}

fn run_block(params: &SurveyParams, tr: &SmallTrace, lo: u64, hi: u64) -> Result<Tally> {
    let mut t = Tally::default();
    let n = params.d / 2;
    for i in lo..hi {
        t.row.poly += 1;
        let c = params.candidate(i);
        if !all_roots_on_circle_small(tr, &c) {
            continue;
        }
        t.row.circle += 1;
        let h = HalfCoeffs::from_i64s(params.d, &c)?;
        let v = classify_on_circle(&h).map_err(|e| annotate(e, &c))?;
        let depth = match v.stage {
            Stage::NotCircle => 0,
            Stage::NotIrreducible => 1,
            Stage::NotPrimitive => 2,
            Stage::ComposedPower => 3,
            Stage::Independent => 4,
            Stage::PowerReducible => 5,
            Stage::Dependent(_) => 6,
        };
        let r = &mut t.row;
        for (k, slot) in [&mut r.irred, &mut r.prim, &mut r.non_xm, &mut r.dep, &mut r.npr]
            .into_iter()
            .enumerate()
        {
            if depth >= k + 2 {
                *slot += 1;
            }
        }
        if let Stage::Dependent(m) = v.stage {
            match n - m {
                1 => r.m1 += 1,
                2 => r.m2 += 1,
                3 => r.m3 += 1,
                _ => {}
            }
        }
        if depth >= 5 {
            t.dep.push(log_case(&c, &v));
        }
    }
    Ok(t)
}

fn run_window(
    params: &SurveyParams,
    tr: &SmallTrace,
    blocks: &[(u64, u64)],
    parallel: bool,
) -> Result<Vec<Tally>> {
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return blocks
            .par_iter()
            .map(|&(lo, hi)| run_block(params, tr, lo, hi))
            .collect();
    }
    let _ = parallel;
    blocks
        .iter()
        .map(|&(lo, hi)| run_block(params, tr, lo, hi))
        .collect()
}

/// Enumerates and classifies every candidate of one cell.
///
/// With a checkpoint path, progress is saved after every window of blocks
/// and a matching checkpoint is resumed.
pub fn run_survey(params: &SurveyParams, opts: &SurveyOptions) -> Result<SurveyOutcome> {
    let params = SurveyParams::new(params.d, params.c, params.h)?;
    let total = params.total().expect("checked in SurveyParams::new");
    let mut state = Checkpoint {
        version: env!("CARGO_PKG_VERSION").to_string(),
        params: params.clone(),
        cursor: 0,
        row: SurveyRow::empty(params.d, params.c, params.h),
        dep_cases: Vec::new(),
    };
    if let Some(path) = &opts.checkpoint {
        if path.exists() {
            let cp = Checkpoint::load(path)?;
            if cp.params != params {
                return domain(format!(
                    "checkpoint {} belongs to d={} c={} h={}",
                    path.display(),
                    cp.params.d,
                    cp.params.c,
                    cp.params.h
                ));
            }
            state = cp;
        }
    }
    let tr = SmallTrace::new(params.d / 2);
    let parallel = opts.jobs != Some(1);
    let mut windows = 0usize;
    let mut work = || -> Result<()> {
        while state.cursor < total && opts.max_windows.is_none_or(|m| windows < m) {
            windows += 1;
            let end = (state.cursor + BLOCK * WINDOW).min(total);
            let blocks: Vec<(u64, u64)> = (state.cursor..end)
                .step_by(BLOCK as usize)
                .map(|lo| (lo, (lo + BLOCK).min(end)))
                .collect();
            for t in run_window(&params, &tr, &blocks, parallel)? {
                state.row.add(&t.row);
                state.dep_cases.extend(t.dep);
            }
            state.cursor = end;
            if let Some(path) = &opts.checkpoint {
                state.save(path)?;
            }
        }
        Ok(())
    };
    run_with_jobs(opts.jobs, &mut work)?;
    let complete = state.cursor == total;
    let (unpaired, violations) = if complete {
        (unpaired_cases(&state.dep_cases), state.row.invariant_violations())
    } else {
        (Vec::new(), Vec::new())
    };
    Ok(SurveyOutcome {
        complete,
        row: state.row,
        dep_cases: state.dep_cases,
        unpaired,
        violations,
    })
}

#[cfg(feature = "parallel")]
fn run_with_jobs(jobs: Option<usize>, work: &mut (dyn FnMut() -> Result<()> + Send)) -> Result<()> {
    match jobs {
        Some(j) if j > 1 => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?
            .install(work),
        _ => work(),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_with_jobs(_jobs: Option<usize>, work: &mut dyn FnMut() -> Result<()>) -> Result<()> {
    work()
}

/// `x -> -x` sends half coefficient `c_j` to `(-1)^j c_j` for even degree.
pub fn negate_half(c: &[i64]) -> Vec<i64> {
    c.iter()
        .enumerate()
        .map(|(j, &v)| if j % 2 == 1 { -v } else { v })
        .collect()
}

fn unpaired_cases(cases: &[DepCase]) -> Vec<Vec<i64>> {
    let set: HashSet<&Vec<i64>> = cases.iter().map(|c| &c.half_coeffs).collect();
    cases
        .iter()
        .map(|c| &c.half_coeffs)
        .filter(|c| !set.contains(&negate_half(c)))
        .cloned()
        .collect()
}

/// Sidecar JSON of the dependent cases.
pub fn dep_cases_json(cases: &[DepCase]) -> String {
    serde_json::to_string_pretty(cases).expect("dependent cases serialize")
}

/// Number of candidates of a cell, `(2h+1)^(d/2)`.
pub fn candidate_count(d: usize, h: i64) -> Option<u64> {
    (2 * h as u64 + 1).checked_pow((d / 2) as u32)
}
