//! Certificates that a point of a biquotient carries no horizontal flat
//! plane: an exact replay of the case analysis, and a seeded numeric search
//! for the smallest flatness residual.

pub mod exact_so8;
pub mod exact_unitary;
pub mod normalize;
pub mod search;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::action::{eschenburg_free, eschenburg_point, horizontal_basis, so8_point, BiquotientSpec, HorizontalBasis};
use crate::angle::{Angle, ExactTrig};
use crate::config::TOLERANCES;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::QSqrt2;

pub use search::{min_residual_search, SearchConfig, SearchResult};

/// Outcome of one step of the replayed argument.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchReport {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl BranchReport {
    pub fn new(name: &str, passed: bool, detail: String) -> Self {
        BranchReport { name: name.to_string(), passed, detail }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Numeric,
    Both,
}

impl Mode {
    fn exact(self) -> bool {
        matches!(self, Mode::Exact | Mode::Both)
    }
    fn numeric(self) -> bool {
        matches!(self, Mode::Numeric | Mode::Both)
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "numeric" => Ok(Mode::Numeric),
            "both" => Ok(Mode::Both),
            _ => Err(Error::Precondition(format!("unknown mode {s:?} (exact, numeric, both)"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Numeric => "numeric",
            Mode::Both => "both",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    NoFlatPlane,
    FlatPlaneFound,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::NoFlatPlane => "no-flat-plane",
            Verdict::FlatPlaneFound => "flat-plane-found",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// An ordering of the circle weights that was tried and abandoned.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RejectedOrdering {
    pub ordering: Vec<usize>,
    pub failed: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactReport {
    /// Coefficient field of the replay.
    pub field: String,
    pub branches: Vec<BranchReport>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rejected: Vec<RejectedOrdering>,
}

/// A horizontal 2-frame with its lifted generators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub w1: Vec<Vec<f64>>,
    pub w2: Vec<Vec<f64>>,
    pub residual: f64,
    pub horizontality_defect: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericReport {
    pub restarts: usize,
    pub seed: u64,
    pub residual_infimum: f64,
    pub best_restart: usize,
    pub horizontal_dim: usize,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    /// Best residual after each restart, in restart order.
    pub trace: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointCertificate {
    pub spec: BiquotientSpec,
    /// Weights reordered so the replay could run; identity for SO(8).
    pub ordering: Vec<usize>,
    pub point: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<Angle>,
    pub mode: Mode,
    pub verdict: Verdict,
    pub exact: Option<ExactReport>,
    pub numeric: Option<NumericReport>,
    pub residual_infimum: Option<f64>,
    pub restarts: usize,
    pub seed: u64,
}

impl PointCertificate {
    pub fn witness(&self) -> Option<&Witness> {
        self.numeric.as_ref().and_then(|n| n.witness.as_ref())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyOptions {
    pub mode: Mode,
    pub search: SearchConfig,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { mode: Mode::Exact, search: SearchConfig::default() }
    }
}

impl VerifyOptions {
    pub fn new(mode: Mode, restarts: usize, seed: u64) -> Self {
        VerifyOptions { mode, search: SearchConfig::with_restarts(restarts, seed) }
    }
}

fn rows(m: &Mat<f64>) -> Vec<Vec<f64>> {
    (0..m.rows()).map(|r| m.row(r)).collect()
}

fn exact_verdict(branches: &[BranchReport]) -> Verdict {
    if branches.iter().all(|b| b.passed) {
        Verdict::NoFlatPlane
    } else {
        Verdict::Inconclusive
    }
}

/// Runs the search and classifies its infimum.
pub fn numeric_report(basis: &HorizontalBasis, cfg: &SearchConfig) -> Result<NumericReport> {
    let res = min_residual_search(basis, cfg)?;
    let (w1, w2) = search::frame_to_w(basis, &res.frame);
    let setup = &basis.setup;
    let defect = setup.vertical_defect(&setup.tangent(&w1)).max(setup.vertical_defect(&setup.tangent(&w2)));
    let verdict = if res.residual > TOLERANCES.positivity {
        Verdict::NoFlatPlane
    } else if res.residual < TOLERANCES.witness && defect < TOLERANCES.witness {
        Verdict::FlatPlaneFound
    } else {
        Verdict::Inconclusive
    };
    let witness = (verdict == Verdict::FlatPlaneFound).then(|| Witness {
        w1: rows(&w1),
        w2: rows(&w2),
        residual: res.residual,
        horizontality_defect: defect,
    });
    Ok(NumericReport {
        restarts: res.restarts,
        seed: res.seed,
        residual_infimum: res.residual,
        best_restart: res.best_restart,
        horizontal_dim: basis.dim(),
        verdict,
        witness,
        trace: res.trace,
    })
}

/// A concrete flat witness outranks the replay; otherwise an exact
/// certificate decides, and the search only speaks when there is none.
fn combine(exact: Option<&ExactReport>, numeric: Option<&NumericReport>) -> Verdict {
    match (exact.map(|e| e.verdict), numeric.map(|n| n.verdict)) {
        (_, Some(Verdict::FlatPlaneFound)) => Verdict::FlatPlaneFound,
        (Some(Verdict::NoFlatPlane), _) => Verdict::NoFlatPlane,
        (Some(_), Some(Verdict::NoFlatPlane)) => Verdict::Inconclusive,
        (Some(v), None) => v,
        (None, Some(v)) => v,
        (Some(_), Some(v)) => v,
        (None, None) => Verdict::Inconclusive,
    }
}

fn certificate(
    spec: BiquotientSpec,
    ordering: Vec<usize>,
    point: &Mat<f64>,
    theta: Option<Angle>,
    opts: &VerifyOptions,
    exact: Option<ExactReport>,
    numeric: Option<NumericReport>,
) -> PointCertificate {
    let verdict = combine(exact.as_ref(), numeric.as_ref());
    PointCertificate {
        spec,
        ordering,
        point: rows(point),
        theta,
        mode: opts.mode,
        verdict,
        residual_infimum: numeric.as_ref().map(|n| n.residual_infimum),
        restarts: numeric.as_ref().map_or(0, |n| n.restarts),
        seed: opts.search.seed,
        exact,
        numeric,
    }
}

fn verify_so8(spec: BiquotientSpec, theta: Angle, opts: &VerifyOptions) -> Result<PointCertificate> {
    let exact = if opts.mode.exact() {
        if theta.is_half_pi_multiple() {
            return Err(Error::DegenerateAngle(theta.to_string()));
        }
        let (field, branches) = match theta.exact_trig()? {
            ExactTrig::Sqrt2(c, s) => ("Q(sqrt 2)", exact_so8::replay_so8(&spec, c, s)?),
            ExactTrig::Sqrt3(c, s) => ("Q(sqrt 3)", exact_so8::replay_so8(&spec, c, s)?),
        };
        let verdict = exact_verdict(&branches);
        Some(ExactReport { field: field.into(), branches, verdict, rejected: vec![] })
    } else {
        None
    };
    let r = theta.radians();
    let a = so8_point(r.cos(), r.sin());
    let numeric = if opts.mode.numeric() {
        let basis = horizontal_basis(&spec, &a, spec.default_metrics())?;
        Some(numeric_report(&basis, &opts.search)?)
    } else {
        None
    };
    Ok(certificate(spec, (0..4).collect(), &a, Some(theta), opts, exact, numeric))
}

/// The S¹ × G2 quotient at `diag(R(θ), I₆)`.
pub fn verify_m13(theta: Angle, opts: &VerifyOptions) -> Result<PointCertificate> {
    verify_so8(BiquotientSpec::m13(), theta, opts)
}

/// The SO(3) × G2 quotient at `diag(R(θ), I₆)`.
pub fn verify_n11(theta: Angle, opts: &VerifyOptions) -> Result<PointCertificate> {
    verify_so8(BiquotientSpec::n11(), theta, opts)
}

/// Orderings of the weights that put a qualifying pair first, in the order
/// they are tried: pairs `(i, j)` lexicographically, the rest ascending.
pub fn witness_orderings(p: &[i64], q: &[i64]) -> Vec<Vec<usize>> {
    let bad = [2 * q[0], 2 * q[1], q[0] + q[1]];
    let mut out = Vec::new();
    for i in 0..p.len() {
        for j in 0..p.len() {
            if i != j && p[i] != p[j] && !bad.contains(&(p[i] + p[j])) {
                let mut o = vec![i, j];
                o.extend((0..p.len()).filter(|&k| k != i && k != j));
                out.push(o);
            }
        }
    }
    out
}

pub fn permute(p: &[i64], ordering: &[usize]) -> Vec<i64> {
    ordering.iter().map(|&i| p[i]).collect()
}

/// The circle quotient of U(n+1) at the block point with the `π/4` complex
/// rotation in the first two coordinates.
pub fn verify_eschenburg(p: &[i64], q: [i64; 2], opts: &VerifyOptions) -> Result<PointCertificate> {
    let spec = BiquotientSpec::eschenburg(p.to_vec(), q)?;
    if !eschenburg_free(p, &q)? {
        return Err(Error::NotFree { p: p.to_vec(), q: q.to_vec() });
    }
    let orderings = witness_orderings(p, &q);
    if orderings.is_empty() {
        return Err(Error::HypothesisFails { p: p.to_vec(), q: q.to_vec() });
    }

    let mut ordering = orderings[0].clone();
    let exact = if opts.mode.exact() {
        let h = QSqrt2::from_parts(0, 1, 1, 2);
        let mut rejected = Vec::new();
        let mut chosen = None;
        for o in &orderings {
            let branches = exact_unitary::replay_unitary(&permute(p, o), &q, h.clone())?;
            if branches.iter().all(|b| b.passed) {
                chosen = Some((o.clone(), branches));
                break;
            }
            let failed = branches.iter().filter(|b| !b.passed).map(|b| b.name.clone()).collect();
            rejected.push(RejectedOrdering { ordering: o.clone(), failed });
        }
        let report = match chosen {
            Some((o, branches)) => {
                ordering = o;
                ExactReport { field: "Q(sqrt 2)".into(), branches, verdict: Verdict::NoFlatPlane, rejected }
            }
            None => {
                let branches = exact_unitary::replay_unitary(&permute(p, &ordering), &q, h)?;
                ExactReport { field: "Q(sqrt 2)".into(), branches, verdict: Verdict::Inconclusive, rejected }
            }
        };
        Some(report)
    } else {
        None
    };

    let n = p.len() - 1;
    let a = eschenburg_point(n, std::f64::consts::FRAC_1_SQRT_2);
    let numeric = if opts.mode.numeric() {
        let pspec = BiquotientSpec::eschenburg(permute(p, &ordering), q)?;
        let basis = horizontal_basis(&pspec, &a, pspec.default_metrics())?;
        Some(numeric_report(&basis, &opts.search)?)
    } else {
        None
    };
    Ok(certificate(spec, ordering, &a, None, opts, exact, numeric))
}
