//! Relaxation-time comparisons between a chain and its heat-bath variant,
//! checked on exact spectra.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{binomial, binomial_u64, from_small, rat, to_f64, Rational};
use crate::samplers::{ktv_gamma, ChainKind, ChainSpec};
use crate::spectral::tensor::{expand_spectrum, tensor_block_spectrum};
use crate::spectral::transition::{build_transition, decompose_edge_switch, decompose_switch, SwitchDecomposition};
use crate::spectral::{eigenvalues_symmetric, johnson_spectrum, spectral_report, Spectrum, CHECK_TOL, EIGEN_TOL};
use crate::statespace::{
    build_state_graph, check_irreducibility, disjoint_pair_collections, kappa_partition, StateSpace,
};

/// `a <= b` up to the relative tolerance.
pub(crate) fn within(a: f64, b: f64) -> bool {
    if a.is_infinite() || b.is_infinite() {
        return a <= b;
    }
    a <= b + CHECK_TOL * 1f64.max(a.abs()).max(b.abs())
}

/// One checked inequality `left <= right` or `left <= middle <= right`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Inequality {
    pub label: String,
    pub left: f64,
    pub middle: Option<f64>,
    pub right: f64,
    pub pass: bool,
}

impl Inequality {
    pub fn le(label: impl Into<String>, left: f64, right: f64) -> Self {
        Self { label: label.into(), left, middle: None, right, pass: within(left, right) }
    }

    pub fn between(label: impl Into<String>, left: f64, middle: f64, right: f64) -> Self {
        let pass = within(left, middle) && within(middle, right);
        Self { label: label.into(), left, middle: Some(middle), right, pass }
    }
}

/// Eigenvalues of one block chain `P_R`, descending.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSpectrum {
    pub label: String,
    pub eigenvalues: Vec<f64>,
}

/// The block condition `min_R min_{i >= 1} {λ_i^R, α - β(1 - λ_i^R)} >= 0`
/// for one `(α, β)`, and the conclusion it licenses.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameworkCase {
    pub name: String,
    pub alpha: f64,
    pub beta: f64,
    /// Smallest value of the condition; `None` when every block is a single state.
    pub condition_min: Option<f64>,
    /// Block index and eigenvalue attaining `condition_min`.
    pub witness: Option<(usize, f64)>,
    pub condition_holds: bool,
    /// `(1/α) rel_heat <= (1/β) rel`.
    pub conclusion: Option<Inequality>,
}

impl FrameworkCase {
    pub fn passed(&self) -> bool {
        self.condition_holds && self.conclusion.as_ref().is_none_or(|c| c.pass)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub theorem: String,
    pub tolerance: f64,
    pub states: usize,
    pub inequalities: Vec<Inequality>,
    pub cases: Vec<FrameworkCase>,
    /// Relaxation times and parameters behind the inequalities.
    pub values: BTreeMap<String, f64>,
    pub notes: Vec<String>,
}

impl ComparisonReport {
    fn new(theorem: &str, states: usize) -> Self {
        Self {
            theorem: theorem.to_string(),
            tolerance: CHECK_TOL,
            states,
            inequalities: Vec::new(),
            cases: Vec::new(),
            values: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.inequalities.iter().all(|i| i.pass) && self.cases.iter().all(FrameworkCase::passed)
    }

    fn value(&mut self, key: &str, v: f64) {
        self.values.insert(key.to_string(), v);
    }

    fn vacuous(theorem: &str) -> Self {
        let mut r = Self::new(theorem, 1);
        r.notes.push("single state: nothing to compare".into());
        r
    }
}

fn framework_case(
    name: &str,
    blocks: &[BlockSpectrum],
    alpha: f64,
    beta: f64,
    relax: Option<(f64, f64)>,
) -> FrameworkCase {
    let mut worst: Option<(f64, usize, f64)> = None;
    for (b, block) in blocks.iter().enumerate() {
        for &lam in block.eigenvalues.iter().skip(1) {
            let v = lam.min(alpha - beta * (1.0 - lam));
            if worst.is_none_or(|w| v < w.0) {
                worst = Some((v, b, lam));
            }
        }
    }
    let condition_holds = worst.is_none_or(|w| w.0 >= -EIGEN_TOL);
    let conclusion = relax.map(|(rel_heat, rel)| {
        Inequality::le(format!("(1/{alpha}) rel_heat <= (1/{beta}) rel"), rel_heat / alpha, rel / beta)
    });
    FrameworkCase {
        name: name.to_string(),
        alpha,
        beta,
        condition_min: worst.map(|w| w.0),
        witness: worst.map(|w| (w.1, w.2)),
        condition_holds,
        conclusion,
    }
}

/// Checks the block condition for `(α, β)`; on success also evaluates the
/// conclusion when `relax = (rel_heat, rel)` is given.
pub fn check_heatbath_condition(
    blocks: &[BlockSpectrum],
    alpha: f64,
    beta: f64,
    relax: Option<(f64, f64)>,
) -> Result<FrameworkCase> {
    if alpha * beta <= 0.0 {
        return Err(Error::BadParameter(format!("need alpha * beta > 0 (got {alpha}, {beta})")));
    }
    let case = framework_case("heat-bath condition", blocks, alpha, beta, relax);
    if !case.condition_holds {
        let (block, eigenvalue) = case.witness.expect("a violated condition has a witness");
        return Err(Error::ConditionFailed { block, eigenvalue, value: case.condition_min.expect("set") });
    }
    Ok(case)
}

/// Numeric spectra of the blocks `(1 - δ) I + δ [(1 - u l γ) I + γ M(H_N)]`.
pub fn switch_block_spectra(dec: &SwitchDecomposition, delta: f64) -> Result<Vec<BlockSpectrum>> {
    dec.blocks
        .iter()
        .map(|b| {
            let raw = if b.size() == 1 { vec![to_f64(&b.holding)] } else { eigenvalues_symmetric(&b.dense())? };
            Ok(BlockSpectrum {
                label: format!("rows ({}, {}) from state {}", b.pair.0 + 1, b.pair.1 + 1, b.members[0]),
                eigenvalues: raw.into_iter().map(|x| 1.0 - delta + delta * x).collect(),
            })
        })
        .collect()
}

fn require_irreducible(space: &StateSpace) -> Result<()> {
    let components = check_irreducibility(&build_state_graph(space, &ChainKind::KtvSwitch));
    if components.is_irreducible() {
        Ok(())
    } else {
        Err(Error::Reducible(components.count()))
    }
}

fn require_aperiodic(s: &Spectrum) -> Result<()> {
    if s.periodic {
        Err(Error::PeriodicChain(s.lambda_min))
    } else {
        Ok(())
    }
}

fn note_star(report: &mut ComparisonReport, name: &str, s: &Spectrum) {
    if s.star_differs() {
        report.notes.push(format!(
            "{name}: lambda_* = {} differs from lambda_1 = {}; compared against lambda_1",
            s.lambda_star, s.lambda_1
        ));
    }
}

/// `2/(n(n-1)) rel_s <= rel_c <= min{1, (2 r_max + 1)² / (2 n (n-1))} rel_s`
/// for the KTV and Curveball chains, together with the three heat-bath
/// cases that prove it.
pub fn verify_relaxation_comparison(space: &StateSpace) -> Result<ComparisonReport> {
    const NAME: &str = "curveball-vs-ktv";
    if space.len() == 1 {
        return Ok(ComparisonReport::vacuous(NAME));
    }
    require_irreducible(space)?;
    let spec = space.spec();
    let ss = spectral_report(&build_transition(space, &ChainSpec::ktv())?)?;
    let sc = spectral_report(&build_transition(space, &ChainSpec::curveball())?)?;
    require_aperiodic(&ss)?;
    require_aperiodic(&sc)?;
    let (rel_s, rel_c) = (ss.relaxation_second, sc.relaxation_second);
    let nn = (spec.n() * (spec.n() - 1)) as f64;
    let r = spec.r_max() as f64;
    let upper = ((2.0 * r + 1.0).powi(2) / (2.0 * nn)).min(1.0);

    let mut report = ComparisonReport::new(NAME, space.len());
    report.value("rel_ktv", rel_s);
    report.value("rel_curveball", rel_c);
    report.inequalities.push(Inequality::between(
        "2/(n(n-1)) rel_ktv <= rel_curveball <= min{1, (2 r_max + 1)^2 / (2 n (n-1))} rel_ktv",
        2.0 / nn * rel_s,
        rel_c,
        upper * rel_s,
    ));
    let gamma = from_small(ktv_gamma(spec.n()).expect("n >= 2 when there are two states"));
    let blocks = switch_block_spectra(&decompose_switch(space, &gamma)?, 1.0)?;
    let relax = Some((rel_c, rel_s));
    report.cases.push(framework_case("alpha = beta = 1", &blocks, 1.0, 1.0, relax));
    report.cases.push(framework_case(
        "alpha = 1, beta = 2n(n-1)/(2 r_max + 1)^2",
        &blocks,
        1.0,
        2.0 * nn / (2.0 * r + 1.0).powi(2),
        relax,
    ));
    report.cases.push(framework_case("alpha = -1, beta = -n(n-1)/2", &blocks, -1.0, -nn / 2.0, relax));
    note_star(&mut report, "ktv", &ss);
    note_star(&mut report, "curveball", &sc);
    Ok(report)
}

/// Smallest eigenvalue of `P_KTV`; an error if it is negative.
pub fn verify_ktv_nonneg(space: &StateSpace) -> Result<f64> {
    if space.spec().n() < 3 {
        return Err(Error::BadParameter("the KTV non-negativity check needs n >= 3".into()));
    }
    let s = spectral_report(&build_transition(space, &ChainSpec::ktv())?)?;
    let min = *s.eigenvalues.last().expect("nonempty space");
    if min < -EIGEN_TOL {
        return Err(Error::NegativeEigenvalue(min));
    }
    Ok(min)
}

/// `1 - (n + 1)² / (2 n (n - 1))`, a lower bound on every KTV block
/// eigenvalue; non-negative from `n = 5` on.
pub fn ktv_block_bound(n: usize) -> Rational {
    let (a, b) = ((n + 1) as i64, (n * (n - 1)) as i64);
    Rational::one() - rat(a * a, 2 * b)
}

/// Smallest eigenvalue `1 + (μ_min - u l) · 2/(n(n-1))` of a KTV block with
/// `u, l >= 1` trade columns.
pub fn ktv_block_min_eigenvalue(n: usize, u: usize, l: usize) -> Result<Rational> {
    let mu = johnson_spectrum(u + l, u)?.min_eigenvalue();
    let shift = BigInt::from(mu) - BigInt::from(u * l);
    Ok(Rational::one() + Rational::from_integer(shift) * from_small(ktv_gamma(n).expect("n >= 2")))
}

/// Minimum of [`ktv_block_min_eigenvalue`] over all `u, l >= 1`, `u + l <= n`.
pub fn ktv_worst_block(n: usize) -> Result<Rational> {
    let mut worst: Option<Rational> = None;
    for u in 1..n {
        for l in 1..=n - u {
            let v = ktv_block_min_eigenvalue(n, u, l)?;
            if worst.as_ref().is_none_or(|w| v < *w) {
                worst = Some(v);
            }
        }
    }
    Ok(worst.unwrap_or_else(Rational::one))
}

/// `δ = ½ [(n²/4) C(m,2) / C(ρ,2)]⁻¹`, and whether it had to be clamped.
pub fn edge_delta(space: &StateSpace) -> (Rational, bool) {
    let spec = space.spec();
    let pairs = binomial(spec.rho_total() as u64, 2);
    let rows = binomial(spec.m() as u64, 2);
    let n2 = BigInt::from(spec.n() * spec.n());
    if pairs.is_zero() || rows.is_zero() {
        return (rat(1, 2), true);
    }
    let delta = Rational::new(BigInt::from(2) * pairs, n2 * rows);
    if delta >= Rational::one() {
        (rat(1, 2), true)
    } else {
        (delta, false)
    }
}

/// `rel_c <= (1/δ) rel_edge` through the δ-lazy edge-switch chain.
pub fn verify_edge_comparison(space: &StateSpace) -> Result<ComparisonReport> {
    const NAME: &str = "curveball-vs-edge";
    if space.len() == 1 {
        return Ok(ComparisonReport::vacuous(NAME));
    }
    require_irreducible(space)?;
    let (delta, clamped) = edge_delta(space);
    let d = to_f64(&delta);
    let pe = build_transition(space, &ChainSpec::edge())?;
    let lazy = pe.lazy(&delta);
    let se = spectral_report(&pe)?;
    let sl = spectral_report(&lazy)?;
    let sc = spectral_report(&build_transition(space, &ChainSpec::curveball())?)?;
    let (rel_c, rel_e, rel_l) = (sc.relaxation_second, se.relaxation_second, sl.relaxation_second);

    let mut report = ComparisonReport::new(NAME, space.len());
    report.value("delta", d);
    report.value("rel_curveball", rel_c);
    report.value("rel_edge", rel_e);
    report.value("rel_edge_lazy", rel_l);
    if clamped {
        report.notes.push("delta formula gave a value >= 1; used 1/2".into());
    }
    report.inequalities.push(Inequality::le("1/2 <= min holding of the lazy chain", 0.5, to_f64(&lazy.min_holding())));
    report.inequalities.push(Inequality::le("0 <= lambda_min of the lazy chain", 0.0, sl.lambda_min));
    report.inequalities.push(Inequality::le("rel_curveball <= rel_edge_lazy", rel_c, rel_l));
    report.inequalities.push(Inequality::le("rel_curveball <= rel_edge / delta", rel_c, rel_e / d));
    let blocks = switch_block_spectra(&decompose_edge_switch(space)?, d)?;
    report.cases.push(framework_case("lazy blocks, alpha = beta = 1", &blocks, 1.0, 1.0, Some((rel_c, rel_l))));
    if se.periodic {
        report.notes.push("bare edge-switch chain is periodic".into());
    }
    note_star(&mut report, "edge", &se);
    Ok(report)
}

/// The regular-instance bounds: `rel_c <= ((2d+1)/(2d))² rel_edge` and
/// `λ_min(P_edge) >= -(1/d + 1/(4d²))`, plus `(1 + λ_min)⁻¹ <= 4d²/(4d²-4d-1) <= 5/2`
/// for `d >= 2`.
pub fn verify_regular_bounds(space: &StateSpace) -> Result<ComparisonReport> {
    const NAME: &str = "regular-edge-bounds";
    let spec = space.spec();
    let d = spec
        .regular_degree()
        .ok_or_else(|| Error::NotRegular(format!("rows {:?}, columns {:?}", spec.row_sums(), spec.col_sums())))?;
    if d == 0 {
        return Err(Error::NotRegular("degree 0".into()));
    }
    if space.len() == 1 {
        return Ok(ComparisonReport::vacuous(NAME));
    }
    require_irreducible(space)?;
    let df = d as f64;
    let pe = build_transition(space, &ChainSpec::edge())?;
    let se = spectral_report(&pe)?;
    let sc = spectral_report(&build_transition(space, &ChainSpec::curveball())?)?;
    let delta = rat(4 * (d * d) as i64, ((2 * d + 1) * (2 * d + 1)) as i64);
    let sl = spectral_report(&pe.lazy(&delta))?;
    let (rel_c, rel_e, rel_l) = (sc.relaxation_second, se.relaxation_second, sl.relaxation_second);
    let factor = ((2.0 * df + 1.0) / (2.0 * df)).powi(2);

    let mut report = ComparisonReport::new(NAME, space.len());
    report.value("d", df);
    report.value("rel_curveball", rel_c);
    report.value("rel_edge", rel_e);
    report.value("lambda_min_edge", se.lambda_min);
    report.inequalities.push(Inequality::le(
        "-(1/d + 1/(4 d^2)) <= lambda_min(edge)",
        -(1.0 / df + 1.0 / (4.0 * df * df)),
        se.lambda_min,
    ));
    report.inequalities.push(Inequality::le("rel_curveball <= ((2d+1)/(2d))^2 rel_edge", rel_c, factor * rel_e));
    report.inequalities.push(Inequality::le("0 <= lambda_min of the (2d/(2d+1))^2-lazy chain", 0.0, sl.lambda_min));
    let blocks = switch_block_spectra(&decompose_edge_switch(space)?, to_f64(&delta))?;
    report.cases.push(framework_case("lazy blocks, alpha = beta = 1", &blocks, 1.0, 1.0, Some((rel_c, rel_l))));
    if d >= 2 {
        let bound = 4.0 * df * df / (4.0 * df * df - 4.0 * df - 1.0);
        report.inequalities.push(Inequality::le(
            "(1 + lambda_min(edge))^-1 <= 4d^2/(4d^2 - 4d - 1)",
            1.0 / (1.0 + se.lambda_min),
            bound,
        ));
        report.inequalities.push(Inequality::le("4d^2/(4d^2 - 4d - 1) <= 5/2", bound, 2.5));
    }
    note_star(&mut report, "edge", &se);
    Ok(report)
}

/// Closed-form block spectra of the single-pair chain averaged over one
/// collection of `k` disjoint pairs, for every collection and class.
pub fn kappa_block_spectra(space: &StateSpace, k: usize) -> Result<Vec<BlockSpectrum>> {
    let mut out = Vec::new();
    for kappa in disjoint_pair_collections(space.spec().m(), k) {
        for class in kappa_partition(space, &kappa)? {
            let sizes: Vec<usize> =
                class.profile.iter().map(|&(u, l)| binomial_u64((u + l) as u64, u as u64) as usize).collect();
            out.push(BlockSpectrum {
                label: format!("pairs {:?} from state {}", kappa, class.members[0]),
                eigenvalues: expand_spectrum(&tensor_block_spectrum(&sizes)),
            });
        }
    }
    Ok(out)
}

/// `rel_c / k <= rel_{k,c} <= rel_c`.
pub fn verify_k_curveball_bounds(space: &StateSpace, k: usize) -> Result<ComparisonReport> {
    const NAME: &str = "k-curveball-vs-curveball";
    let chain = ChainSpec::k_curveball(k);
    chain.validate(space.spec())?;
    if space.len() == 1 {
        return Ok(ComparisonReport::vacuous(NAME));
    }
    require_irreducible(space)?;
    let sc = spectral_report(&build_transition(space, &ChainSpec::curveball())?)?;
    let skc = spectral_report(&build_transition(space, &chain)?)?;
    let (rel_c, rel_kc) = (sc.relaxation_second, skc.relaxation_second);
    let kf = k as f64;

    let mut report = ComparisonReport::new(NAME, space.len());
    report.value("k", kf);
    report.value("rel_curveball", rel_c);
    report.value("rel_k_curveball", rel_kc);
    report.value("ratio", rel_kc / rel_c);
    report.inequalities.push(Inequality::between(
        "rel_curveball / k <= rel_k_curveball <= rel_curveball",
        rel_c / kf,
        rel_kc,
        rel_c,
    ));
    let blocks = kappa_block_spectra(space, k)?;
    report.cases.push(framework_case("alpha = beta = 1", &blocks, 1.0, 1.0, Some((rel_kc, rel_c))));
    report.cases.push(framework_case("alpha = -1, beta = -k", &blocks, -1.0, -kf, Some((rel_kc, rel_c))));
    Ok(report)
}
