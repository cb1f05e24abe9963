use std::collections::BTreeMap;

use num_traits::One;
use rayon::prelude::*;

use super::report::{Check, ExperimentReport, Parameters, Series};
use super::stats::{count_of, frequency, goodness_of_fit, half_width, two_sample, Bin, Expected};
use super::thresholds::*;
use crate::error::{domain, Error, Result};
use crate::exact::{
    ball_probability, core_size_partial_sum, core_size_prob, deg3_limit, deg3_partial_sum, phi, rational_to_f64,
    sub_triangulation_probability, z_critical, Rational, TriType,
};
use crate::map::{face_tree, rw_reroot, sphere_census, uniform_reroot, FaceKind, RootedMap};
use crate::sample::{
    core_classify, peel_until_ball, sample_free, uipt_ball, uipt_root_degree, uipt_type3_ball, CoreOutcome,
    ExactRng, PeelState, Policy, UniformSampler,
};

/// Samples per independently seeded chunk.
const CHUNK: usize = 1000;

pub const UNRESOLVED: &str = "unresolved";

/// Runs `f` once per sample. Chunk `i` draws from stream `i` of `seed`, so
/// the result depends only on `(seed, samples)` and not on the thread count.
pub fn run_samples<T, F>(seed: u64, samples: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ExactRng) -> T + Sync,
{
    let f = &f;
    (0..samples.div_ceil(CHUNK))
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut rng = ExactRng::with_stream(seed, i as u64);
            let n = CHUNK.min(samples - i * CHUNK);
            (0..n).map(move |_| f(&mut rng)).collect::<Vec<_>>()
        })
        .collect()
}

/// Histogram of `labels`, listing `order` first (zero counts included) and
/// any other label afterwards in sorted order.
pub fn histogram<I: IntoIterator<Item = String>>(labels: I, order: &[String]) -> Vec<Bin> {
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for l in labels {
        *counts.entry(l).or_default() += 1;
    }
    let mut bins: Vec<Bin> = order.iter().map(|l| Bin::new(l.clone(), counts.remove(l).unwrap_or(0))).collect();
    bins.extend(counts.into_iter().map(|(l, c)| Bin::new(l, c)));
    bins
}

fn check_samples(samples: usize) -> Result<()> {
    if samples < MIN_SAMPLES {
        return Err(domain(format!("at least {MIN_SAMPLES} samples are required, got {samples}")));
    }
    Ok(())
}

fn budget_or_unresolved<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(x) => Ok(Some(x)),
        Err(Error::BudgetExhausted { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn unresolved_fraction(bins: &[Bin]) -> f64 {
    frequency(bins, UNRESOLVED)
}

/// Root degree experiment.
///
/// Type III: histogram of the root degree of the type III UIPT against
/// [`deg3_limit`]. Type II: survival function of the root edge degree
/// against the envelope `c * (25/27)^((k-1)/2)`, with `c` fitted at
/// [`DEGREE_TAIL_FIT_K`].
pub fn exp_degree(t: TriType, samples: usize, seed: u64, budget: usize) -> Result<ExperimentReport> {
    check_samples(samples)?;
    let mut params = Parameters { seed, samples, budget: Some(budget), ..Default::default() };
    params.extra.insert("type".into(), t.as_digit().to_string());
    let mut rep = ExperimentReport::new("degree", params);
    match t {
        TriType::TypeIII => degree3(&mut rep, samples, seed, budget)?,
        TriType::TypeII => degree2(&mut rep, samples, seed, budget)?,
    }
    rep.settle(RUN_UNRESOLVED_MAX);
    Ok(rep)
}

fn degree3(rep: &mut ExperimentReport, samples: usize, seed: u64, budget: usize) -> Result<()> {
    let draws = run_samples(seed, samples, |rng| {
        budget_or_unresolved(uipt_type3_ball(1, budget, rng)).map(|b| b.map(|b| (b.map.degree(b.map.root_vertex()), b.restarts)))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let order: Vec<String> = (3..=DEGREE3_K_MAX).map(|k| k.to_string()).collect();
    rep.observed = histogram(
        draws.iter().map(|d| match d {
            Some((k, _)) if *k <= DEGREE3_K_MAX => k.to_string(),
            Some(_) => format!(">{DEGREE3_K_MAX}"),
            None => UNRESOLVED.into(),
        }),
        &order,
    );
    for k in 3..=DEGREE3_K_MAX {
        rep.expected.push(Expected::new(k.to_string(), deg3_limit(k)?, format!("deg3_limit({k})")));
    }
    rep.statistics = Some(goodness_of_fit(&rep.observed, &rep.expected)?);
    rep.unresolved_fraction = unresolved_fraction(&rep.observed);

    let resolved: Vec<&(usize, usize)> = draws.iter().flatten().collect();
    let n = resolved.len() as u64;
    let p3 = if n == 0 { 0.0 } else { count_of(&rep.observed, "3") as f64 / n as f64 };
    let mut c = Check::within("degree_3", "DEGREE3_TOL", p3, rational_to_f64(&deg3_limit(3)?), DEGREE3_TOL);
    let hw = half_width(p3, n);
    if hw > DEGREE3_TOL {
        c = c.informational();
        rep.notes.push(format!(
            "wide confidence interval: the 95% half-width {hw:.4} on the degree 3 frequency exceeds DEGREE3_TOL"
        ));
    }
    rep.checks.push(c);
    let restarts = resolved.iter().map(|d| d.1 as f64).sum::<f64>() / (n.max(1) as f64);
    rep.checks.push(Check::within("mean_restarts", "RESTARTS_TOL", restarts, 1.0, RESTARTS_TOL).informational());
    Ok(())
}

fn degree2(rep: &mut ExperimentReport, samples: usize, seed: u64, budget: usize) -> Result<()> {
    let draws = run_samples(seed, samples, |rng| budget_or_unresolved(uipt_root_degree(Policy::MinDistance, budget, rng)))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let order: Vec<String> = (2..=DEGREE_TAIL_K_MAX).map(|k| k.to_string()).collect();
    rep.observed = histogram(
        draws.iter().map(|d| match d {
            Some(k) if *k <= DEGREE_TAIL_K_MAX => k.to_string(),
            Some(_) => format!(">{DEGREE_TAIL_K_MAX}"),
            None => UNRESOLVED.into(),
        }),
        &order,
    );
    rep.unresolved_fraction = unresolved_fraction(&rep.observed);
    // Unresolved samples count as arbitrarily large degrees.
    let n = draws.len() as f64;
    let tail: Vec<f64> = (0..=DEGREE_TAIL_K_MAX)
        .map(|k| draws.iter().filter(|d| d.is_none_or(|x| x >= k)).count() as f64 / n)
        .collect();
    let (a, b) = DEGREE_TAIL_RATIO;
    let rho = a as f64 / b as f64;
    let env = |k: usize| rho.powf((k as f64 - 1.0) / 2.0);
    let c = tail[DEGREE_TAIL_FIT_K] / env(DEGREE_TAIL_FIT_K);
    let ks: Vec<usize> = (DEGREE_TAIL_FIT_K..=DEGREE_TAIL_K_MAX).collect();
    let worst = ks[1..]
        .iter()
        .map(|&k| if c > 0.0 { tail[k] / (c * env(k)) } else { 0.0 })
        .fold(0.0, f64::max);
    rep.checks.push(Check {
        name: "tail_envelope".into(),
        threshold: "DEGREE_TAIL_RATIO".into(),
        observed: worst,
        target: 1.0,
        tolerance: 0.0,
        passed: worst <= 1.0,
        informational: false,
    });
    let monotone = tail.windows(2).all(|w| w[1] <= w[0]);
    rep.checks.push(Check {
        name: "tail_monotone".into(),
        threshold: "DEGREE_TAIL_K_MAX".into(),
        observed: if monotone { 1.0 } else { 0.0 },
        target: 1.0,
        tolerance: 0.0,
        passed: monotone,
        informational: false,
    });
    rep.series.push(Series { name: "k".into(), values: ks.iter().map(|&k| k as f64).collect() });
    rep.series.push(Series { name: "tail".into(), values: ks.iter().map(|&k| tail[k]).collect() });
    rep.series.push(Series { name: "envelope".into(), values: ks.iter().map(|&k| c * env(k)).collect() });
    rep.series.push(Series { name: "envelope_c".into(), values: vec![c] });
    Ok(())
}

/// Root core experiment: sizes of the root's 3-connected component against
/// `a_3 .. a_8` and the infinite mass `1/2`.
pub fn exp_core(samples: usize, budget: usize, seed: u64) -> Result<ExperimentReport> {
    check_samples(samples)?;
    let params = Parameters { seed, samples, budget: Some(budget), ..Default::default() };
    let mut rep = ExperimentReport::new("core", params);
    let outcomes = run_samples(seed, samples, |rng| core_classify(budget, rng));
    let mut order: Vec<String> = (3..=CORE_K_MAX).map(|k| k.to_string()).collect();
    order.push(format!(">{CORE_K_MAX}"));
    order.push("infinite".into());
    order.push(UNRESOLVED.into());
    rep.observed = histogram(
        outcomes.iter().map(|o| match o {
            CoreOutcome::FiniteCore(n) if *n <= CORE_K_MAX => n.to_string(),
            CoreOutcome::FiniteCore(_) => format!(">{CORE_K_MAX}"),
            CoreOutcome::InfiniteCore => "infinite".into(),
            CoreOutcome::Unresolved => UNRESOLVED.into(),
        }),
        &order,
    );
    for n in 3..=CORE_K_MAX {
        rep.expected.push(Expected::new(n.to_string(), core_size_prob(n)?, format!("core_size_prob({n})")));
    }
    rep.expected.push(Expected::new("infinite", Rational::new(1.into(), 2.into()), "1 - sum of core_size_prob(n) over n"));
    rep.statistics = Some(goodness_of_fit(&rep.observed, &rep.expected)?);
    rep.unresolved_fraction = unresolved_fraction(&rep.observed);
    let f = |l: &str| frequency(&rep.observed, l);
    let p = |n: usize| core_size_prob(n).map(|r| rational_to_f64(&r));
    rep.checks.push(Check::within("infinite", "CORE_INFINITE_TOL", f("infinite"), 0.5, CORE_INFINITE_TOL));
    rep.checks.push(Check::within("size_3", "CORE_SIZE3_TOL", f("3"), p(3)?, CORE_SIZE3_TOL));
    rep.checks.push(Check::within("size_4", "CORE_SIZE4_TOL", f("4"), p(4)?, CORE_SIZE4_TOL));
    rep.settle(RUN_UNRESOLVED_MAX);
    Ok(rep)
}

/// The exact side of the core law: `sum_{n <= N} a_n` against `1/2`.
pub fn core_sum_check() -> Result<Check> {
    let s = rational_to_f64(&core_size_partial_sum(CORE_SUM_N)?);
    Ok(Check::within("core_sum", "CORE_SUM_TOL", s, 0.5, CORE_SUM_TOL))
}

/// The exact side of the type III degree law: `sum_{k <= K} deg3_limit(k)`
/// against `1`.
pub fn degree3_sum_check() -> Result<Check> {
    let s = rational_to_f64(&deg3_partial_sum(DEGREE3_SUM_K)?);
    Ok(Check::within("degree3_sum", "DEGREE3_SUM_TOL", s, 1.0, DEGREE3_SUM_TOL))
}

/// The transformation compared by [`exp_invariance`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvarianceKind {
    /// Uniform re-rooting of a uniform sphere triangulation.
    Reroot,
    /// One random-walk step of the root of a uniform sphere triangulation.
    RandomWalk,
    /// Two peeling policies producing the same UIPT ball.
    Policy,
}

impl InvarianceKind {
    pub fn name(self) -> &'static str {
        match self {
            InvarianceKind::Reroot => "reroot",
            InvarianceKind::RandomWalk => "rw",
            InvarianceKind::Policy => "policy",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InvarianceParams {
    pub samples: usize,
    /// Sphere size for the re-rooting kinds.
    pub vertices: usize,
    /// Ball radius for the policy kind.
    pub radius: usize,
    pub budget: usize,
}

impl Default for InvarianceParams {
    fn default() -> Self {
        InvarianceParams { samples: 100_000, vertices: 6, radius: 1, budget: 1_000_000 }
    }
}

/// Two-sample comparison over canonical codes: fresh against transformed
/// samples, or policy against policy. The first arm goes to `baseline`,
/// the second to `observed`; both are also compared with the exact law
/// where it is available.
pub fn exp_invariance(kind: InvarianceKind, params: InvarianceParams, seed: u64) -> Result<ExperimentReport> {
    check_samples(params.samples)?;
    let mut p = Parameters { seed, samples: params.samples, ..Default::default() };
    p.extra.insert("kind".into(), kind.name().into());
    let mut rep = match kind {
        InvarianceKind::Reroot | InvarianceKind::RandomWalk => {
            p.extra.insert("vertices".into(), params.vertices.to_string());
            let mut rep = ExperimentReport::new("invariance", p);
            reroot_arms(&mut rep, kind, params, seed)?;
            rep
        }
        InvarianceKind::Policy => {
            p.budget = Some(params.budget);
            p.extra.insert("radius".into(), params.radius.to_string());
            let mut rep = ExperimentReport::new("invariance", p);
            policy_arms(&mut rep, params, seed)?;
            rep
        }
    };
    let s = two_sample(rep.baseline.as_deref().unwrap_or_default(), &rep.observed)?;
    rep.checks.push(Check::below("two_sample_tv", "INVARIANCE_TV", s.tv, INVARIANCE_TV));
    rep.notes.push(format!(
        "expected two-sample total variation from sampling noise alone: {:.4} over {} classes",
        s.tv_noise,
        rep.observed.len().max(rep.baseline.as_ref().map_or(0, Vec::len))
    ));
    rep.statistics = Some(s);
    rep.unresolved_fraction = unresolved_fraction(&rep.observed).max(unresolved_fraction(rep.baseline.as_deref().unwrap_or_default()));
    rep.settle(RUN_UNRESOLVED_MAX);
    Ok(rep)
}

fn reroot_arms(rep: &mut ExperimentReport, kind: InvarianceKind, params: InvarianceParams, seed: u64) -> Result<()> {
    let v = params.vertices;
    if v > INVARIANCE_VERTEX_MAX {
        return Err(Error::BoundExceeded { requested: v, bound: INVARIANCE_VERTEX_MAX });
    }
    if v < 3 {
        return Err(domain("a sphere triangulation has at least 3 vertices"));
    }
    let sampler = UniformSampler::new(TriType::TypeII, v - 3, 1)?;
    let pairs = run_samples(seed, params.samples, |rng| -> Result<(String, String)> {
        let fresh = sampler.sample(rng).all_internal()?;
        let base = sampler.sample(rng).all_internal()?;
        let moved = match kind {
            InvarianceKind::Reroot => uniform_reroot(&base, rng)?,
            _ => rw_reroot(&base, rng)?,
        };
        Ok((fresh.code().to_hex(), moved.code().to_hex()))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let census = sphere_census(TriType::TypeII, v)?;
    let mut law: BTreeMap<String, u64> = BTreeMap::new();
    for m in &census {
        *law.entry(m.code().to_hex()).or_default() += 1;
    }
    let size = census.len() as i64;
    let provenance = format!("uniform on sphere_census(II, {v})");
    rep.expected = law
        .iter()
        .map(|(code, c)| Expected::new(code.clone(), Rational::new((*c as i64).into(), size.into()), provenance.clone()))
        .collect();
    let order: Vec<String> = law.keys().cloned().collect();
    rep.baseline = Some(histogram(pairs.iter().map(|p| p.0.clone()), &order));
    rep.observed = histogram(pairs.into_iter().map(|p| p.1), &order);
    rep.reference = Some(goodness_of_fit(&rep.observed, &rep.expected)?);
    Ok(())
}

fn policy_arms(rep: &mut ExperimentReport, params: InvarianceParams, seed: u64) -> Result<()> {
    let r = params.radius;
    let arm = |policy: Policy, seed: u64| -> Result<Vec<Option<RootedMap>>> {
        run_samples(seed, params.samples, |rng| budget_or_unresolved(uipt_ball(r, policy, params.budget, rng)))
            .into_iter()
            .collect()
    };
    let a = arm(Policy::MinDistance, seed)?;
    let b = arm(Policy::Fifo, seed.wrapping_add(0x9e37_79b9_7f4a_7c15))?;
    let label = |m: &Option<RootedMap>| m.as_ref().map_or(UNRESOLVED.to_string(), |m| m.code().to_hex());
    rep.baseline = Some(histogram(a.iter().map(label), &[]));
    rep.observed = histogram(b.iter().map(label), &[]);
    rep.parameters.extra.insert("policies".into(), "min_distance,fifo".into());
    if r == 1 {
        // Balls of radius one are rigid, so each class has an exact
        // probability. Classes are listed from the first arm only, so that
        // the second arm's unlisted classes form an honest tail bucket.
        let mut classes: BTreeMap<String, &RootedMap> = BTreeMap::new();
        for m in a.iter().flatten() {
            classes.entry(m.code().to_hex()).or_insert(m);
        }
        for (code, m) in classes {
            let faces: Vec<usize> = m.faces_of_kind(FaceKind::External).iter().map(|&f| m.face_len(f) - 2).collect();
            let p = ball_probability(TriType::TypeII, m.vertex_count(), &faces)?;
            rep.expected.push(Expected::new(
                code,
                p,
                format!("ball_probability(II, {}, {:?})", m.vertex_count(), faces),
            ));
        }
        rep.reference = Some(goodness_of_fit(&rep.observed, &rep.expected)?);
    }
    Ok(())
}

/// Descriptive growth statistics of the UIPT balls `B_0 .. B_{r_max}`.
///
/// Reports per radius the mean and quantiles of the ball vertex count, the
/// frontier length once the ball is determined, and the largest vertex
/// degree inside the ball, plus a log-log slope of the mean ball size with
/// a bootstrap band. The face tree of the final revealed region is checked
/// for a single unresolved region per level. Nothing here is pass/fail.
pub fn exp_growth(r_max: usize, samples: usize, seed: u64, budget: usize) -> Result<ExperimentReport> {
    if r_max > GROWTH_R_MAX {
        return Err(domain(format!("r_max above {GROWTH_R_MAX}")));
    }
    if samples == 0 {
        return Err(domain("no samples requested"));
    }
    let mut params = Parameters { seed, samples, budget: Some(budget), ..Default::default() };
    params.extra.insert("r_max".into(), r_max.to_string());
    let mut rep = ExperimentReport::new("growth", params);
    let runs = run_samples(seed, samples, |rng| budget_or_unresolved(growth_sample(r_max, budget, rng)))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let done: Vec<&GrowthSample> = runs.iter().flatten().collect();
    rep.observed = histogram(
        runs.iter().map(|g| match g {
            Some(g) if g.single_branch => "single_branch".to_string(),
            Some(_) => "several_branches".to_string(),
            None => UNRESOLVED.to_string(),
        }),
        &["single_branch".into(), "several_branches".into(), UNRESOLVED.into()],
    );
    rep.unresolved_fraction = unresolved_fraction(&rep.observed);
    let nested = done.iter().all(|g| g.ball.windows(2).all(|w| w[0] <= w[1]));
    rep.checks.push(Check {
        name: "balls_nested".into(),
        threshold: "none".into(),
        observed: if nested { 1.0 } else { 0.0 },
        target: 1.0,
        tolerance: 0.0,
        passed: nested,
        informational: true,
    });
    if !done.is_empty() {
        let column = |f: fn(&GrowthSample) -> &Vec<usize>, q: Option<f64>| -> Vec<f64> {
            (0..=r_max)
                .map(|r| {
                    let mut xs: Vec<f64> = done.iter().map(|g| f(g)[r] as f64).collect();
                    match q {
                        None => xs.iter().sum::<f64>() / xs.len() as f64,
                        Some(q) => quantile(&mut xs, q),
                    }
                })
                .collect()
        };
        let ball: fn(&GrowthSample) -> &Vec<usize> = |g| &g.ball;
        let frontier: fn(&GrowthSample) -> &Vec<usize> = |g| &g.frontier;
        let degree: fn(&GrowthSample) -> &Vec<usize> = |g| &g.max_degree;
        rep.series.push(Series { name: "r".into(), values: (0..=r_max).map(|r| r as f64).collect() });
        rep.series.push(Series { name: "ball_mean".into(), values: column(ball, None) });
        for (name, q) in [("ball_q10", 0.1), ("ball_q50", 0.5), ("ball_q90", 0.9)] {
            rep.series.push(Series { name: name.into(), values: column(ball, Some(q)) });
        }
        rep.series.push(Series { name: "frontier_mean".into(), values: column(frontier, None) });
        rep.series.push(Series { name: "frontier_q50".into(), values: column(frontier, Some(0.5)) });
        rep.series.push(Series { name: "max_degree_mean".into(), values: column(degree, None) });
        rep.series.push(Series { name: "max_degree_q90".into(), values: column(degree, Some(0.9)) });
        if let Some(band) = slope_band(&done, r_max, seed) {
            rep.series.push(Series { name: "slope".into(), values: band.to_vec() });
            rep.notes.push(format!(
                "log-log slope of the mean ball size: {:.3} (95% bootstrap band {:.3} .. {:.3})",
                band[0], band[1], band[2]
            ));
        }
    }
    rep.settle(RUN_UNRESOLVED_MAX);
    Ok(rep)
}

struct GrowthSample {
    ball: Vec<usize>,
    frontier: Vec<usize>,
    max_degree: Vec<usize>,
    single_branch: bool,
}

fn growth_sample(r_max: usize, budget: usize, rng: &mut ExactRng) -> Result<GrowthSample> {
    let mut s = PeelState::new();
    let mut g = GrowthSample { ball: vec![1], frontier: vec![3], max_degree: vec![0], single_branch: true };
    for r in 1..=r_max {
        peel_until_ball(&mut s, r, Policy::MinDistance, budget, rng)?;
        let s = &s;
        g.ball.push((0..s.vertex_count()).filter(|&v| s.distance(v) <= r).count());
        g.frontier.push(s.m() + 2);
        let inner = (0..s.vertex_count()).filter(|&v| s.distance(v) < r);
        g.max_degree.push(inner.map(|v| s.degree(v)).max().unwrap_or(0));
    }
    if r_max > 0 {
        let tree = face_tree(&s.revealed(), r_max)?;
        g.single_branch = (1..=r_max).all(|r| tree.level(r).filter(|n| n.unresolved).count() == 1);
    }
    Ok(g)
}

fn quantile(xs: &mut [f64], q: f64) -> f64 {
    xs.sort_by(f64::total_cmp);
    let i = ((xs.len() - 1) as f64 * q).round() as usize;
    xs[i]
}

/// Least-squares slope of `ln(mean |B_r|)` on `ln r` over the upper half of
/// the radii, with a percentile bootstrap band over samples.
fn slope_band(done: &[&GrowthSample], r_max: usize, seed: u64) -> Option<[f64; 3]> {
    let lo = (r_max / 2).max(1);
    if r_max < lo + 1 {
        return None;
    }
    let slope = |pick: &dyn Fn(usize) -> usize| -> f64 {
        let pts: Vec<(f64, f64)> = (lo..=r_max)
            .map(|r| {
                let mean = (0..done.len()).map(|i| done[pick(i)].ball[r] as f64).sum::<f64>() / done.len() as f64;
                ((r as f64).ln(), mean.ln())
            })
            .collect();
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        sxy / sxx
    };
    let est = slope(&|i| i);
    let mut rng = ExactRng::with_stream(seed, u64::MAX);
    let mut boot: Vec<f64> = (0..BOOTSTRAP_ROUNDS)
        .map(|_| {
            let idx: Vec<usize> = (0..done.len()).map(|_| rng.below(done.len() as u64) as usize).collect();
            slope(&|i| idx[i])
        })
        .collect();
    Some([est, quantile(&mut boot, 0.025), quantile(&mut boot, 0.975)])
}

const BOOTSTRAP_ROUNDS: usize = 200;

/// Free sample sizes against `phi(II, n, m) * alpha^-n / Z_m`, and for
/// `m = 0` the frequency of the empty 2-gon against `1/Z_0`.
pub fn exp_free(m: usize, samples: usize, seed: u64) -> Result<ExperimentReport> {
    check_samples(samples)?;
    let mut params = Parameters { seed, samples, ..Default::default() };
    params.extra.insert("m".into(), m.to_string());
    let mut rep = ExperimentReport::new("free", params);
    let sizes = run_samples(seed, samples, |rng| sample_free(m, rng).size);
    let order: Vec<String> = (0..=FREE_SIZE_MAX).map(|n| n.to_string()).collect();
    rep.observed = histogram(
        sizes.iter().map(|&n| if n <= FREE_SIZE_MAX { n.to_string() } else { format!(">{FREE_SIZE_MAX}") }),
        &order,
    );
    let t = TriType::TypeII;
    let z = z_critical(t, m)?;
    let inv_alpha = Rational::one() / t.alpha();
    let mut w = Rational::one();
    for n in 0..=FREE_SIZE_MAX {
        let p = Rational::from_integer(phi(t, n, m)?.into()) * &w / &z;
        rep.expected.push(Expected::new(n.to_string(), p, format!("phi(II, {n}, {m}) * alpha^-{n} / z_critical(II, {m})")));
        w *= &inv_alpha;
    }
    let s = goodness_of_fit(&rep.observed, &rep.expected)?;
    rep.checks.push(Check::below("size_law_tv", "LAW_TV", s.tv, LAW_TV));
    rep.statistics = Some(s);
    if m == 0 {
        let p0 = rational_to_f64(&(Rational::one() / &z));
        rep.checks.push(Check::within("empty", "FREE_EMPTY_TOL", frequency(&rep.observed, "0"), p0, FREE_EMPTY_TOL));
    }
    rep.settle(RUN_UNRESOLVED_MAX);
    Ok(rep)
}

/// Containment of two rigid configurations in the UIPT ball of radius one:
/// the root triangle, and the root triangle together with the triangle on
/// the far side of the root edge having a new apex.
pub fn exp_containment(samples: usize, seed: u64, budget: usize) -> Result<ExperimentReport> {
    check_samples(samples)?;
    let params = Parameters { seed, samples, budget: Some(budget), ..Default::default() };
    let mut rep = ExperimentReport::new("containment", params);
    let draws = run_samples(seed, samples, |rng| {
        budget_or_unresolved(uipt_ball(1, Policy::MinDistance, budget, rng)).map(|b| b.map(|b| contains(&b)))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let order: Vec<String> = ["triangle_and_apex", "triangle_only", "neither", UNRESOLVED].map(String::from).to_vec();
    rep.observed = histogram(
        draws.iter().map(|d| {
            match d {
                Some((true, true)) => "triangle_and_apex",
                Some((true, false)) => "triangle_only",
                Some(_) => "neither",
                None => UNRESOLVED,
            }
            .to_string()
        }),
        &order,
    );
    let t = TriType::TypeII;
    let p1 = sub_triangulation_probability(t, 3, &[1])?;
    let p2 = sub_triangulation_probability(t, 4, &[2])?;
    rep.expected.push(Expected::new("triangle_and_apex", p2.clone(), "sub_triangulation_probability(II, 4, [2])"));
    rep.expected.push(Expected::new(
        "triangle_only",
        &p1 - &p2,
        "sub_triangulation_probability(II, 3, [1]) - sub_triangulation_probability(II, 4, [2])",
    ));
    rep.statistics = Some(goodness_of_fit(&rep.observed, &rep.expected)?);
    rep.unresolved_fraction = unresolved_fraction(&rep.observed);
    let f = |l: &str| frequency(&rep.observed, l);
    rep.checks.push(Check::within(
        "root_triangle",
        "CONTAINMENT_TOL",
        f("triangle_and_apex") + f("triangle_only"),
        rational_to_f64(&p1),
        CONTAINMENT_TOL,
    ));
    rep.checks.push(Check::within("root_triangle_with_apex", "CONTAINMENT_TOL", f("triangle_and_apex"), rational_to_f64(&p2), CONTAINMENT_TOL));
    rep.settle(RUN_UNRESOLVED_MAX);
    Ok(rep)
}

/// Whether `b` contains the root triangle, and the root triangle with a
/// new apex across the root edge.
pub fn contains(b: &RootedMap) -> (bool, bool) {
    if b.is_single_vertex() {
        return (false, false);
    }
    let h = b.root();
    let tri: Vec<usize> = b.face_cycle(h).map(|g| b.origin(g)).collect();
    let root_triangle = b.kind(h) == FaceKind::Internal && tri.len() == 3 && tri[0] != tri[1] && tri[1] != tri[2] && tri[0] != tri[2];
    if !root_triangle {
        return (false, false);
    }
    let t = b.twin(h);
    let far = b.kind(t) == FaceKind::Internal && b.face_len(b.face(t)) == 3 && !tri.contains(&b.head(b.next(t)));
    (true, far)
}

/// Uniform sampler against the census: every rooted triangulation with the
/// given parameters should be equally likely.
pub fn exp_uniform(t: TriType, n: usize, m: usize, samples: usize, seed: u64) -> Result<ExperimentReport> {
    check_samples(samples)?;
    let mut params = Parameters { seed, samples, ..Default::default() };
    params.extra.insert("type".into(), t.as_digit().to_string());
    params.extra.insert("n".into(), n.to_string());
    params.extra.insert("m".into(), m.to_string());
    let mut rep = ExperimentReport::new("uniform", params);
    let sampler = UniformSampler::new(t, n, m)?;
    let codes = run_samples(seed, samples, |rng| sampler.sample(rng).code().to_hex());
    let census = crate::map::brute_force_census(t, n, m)?;
    let size = census.len() as i64;
    let mut law: BTreeMap<String, i64> = BTreeMap::new();
    for c in &census {
        *law.entry(c.code().to_hex()).or_default() += 1;
    }
    rep.expected = law
        .iter()
        .map(|(c, k)| Expected::new(c.clone(), Rational::new((*k).into(), size.into()), format!("uniform on brute_force_census({}, {n}, {m})", t.as_digit())))
        .collect();
    let order: Vec<String> = law.keys().cloned().collect();
    rep.observed = histogram(codes, &order);
    let s = goodness_of_fit(&rep.observed, &rep.expected)?;
    rep.checks.push(Check {
        name: "chi_square_p".into(),
        threshold: "UNIFORM_P_MIN".into(),
        observed: s.p_value,
        target: 1.0,
        tolerance: UNIFORM_P_MIN,
        passed: s.p_value > UNIFORM_P_MIN,
        informational: false,
    });
    rep.statistics = Some(s);
    rep.settle(RUN_UNRESOLVED_MAX);
    Ok(rep)
}
