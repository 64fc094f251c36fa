//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use htea_core::mutation::hamming_pmf_exact;
use htea_core::oracle::{brute_force_max_matching, exact_expected_runtime_jump, LevelChain, LevelProposal};
use htea_core::theory::{heavy_tailed_jump_scale, optimal_rate_band, rate_deviation_penalty, static_rate_bounds};
use htea_core::{
    run, run_many, run_observed, CompleteBipartiteVc, Graph, Jump, Matching, MutationSpec, OneMax, RunConfig,
};
use statrs::distribution::{ChiSquared, ContinuousCDF};

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

fn static_runtime(n: usize, m: usize, p: f64) -> f64 {
    exact_expected_runtime_jump(n, m, &MutationSpec::StaticRate(p)).expect("valid static instance")
}

/// 200 rates evenly spaced in (0, 1/2].
fn rate_grid() -> (Vec<f64>, f64) {
    let step = 0.5 / 200.0;
    ((1..=200).map(|k| k as f64 * step).collect(), step)
}

fn grid_minimum(n: usize, m: usize) -> (f64, f64) {
    let (grid, _) = rate_grid();
    grid.iter().map(|&p| (p, static_runtime(n, m, p))).min_by(|a, b| a.1.total_cmp(&b.1)).expect("non-empty grid")
}

fn static_sandwich() -> Outcome {
    let mut checked = 0;
    let mut tightest = f64::INFINITY;
    for n in [10, 20, 30] {
        for m in [2, 3, 4, 5] {
            if m > n / 2 {
                continue;
            }
            for p in [1.0 / n as f64, 2.0 / n as f64, m as f64 / n as f64, 0.4, 0.5] {
                let t = static_runtime(n, m, p);
                let b = static_rate_bounds(n, m, p).map_err(|e| e.to_string())?;
                if !(b.lower <= t && t <= b.upper) {
                    return Err(format!("n={n} m={m} p={p}: {} <= {t} <= {} violated", b.lower, b.upper));
                }
                tightest = tightest.min((t / b.lower).min(b.upper / t));
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} instances inside bounds, tightest margin factor {tightest:.9}"))
}

fn best_rate_in_band() -> Outcome {
    let (_, step) = rate_grid();
    let mut worst_offset: f64 = 0.0;
    for n in [20, 30, 50] {
        for m in [2, 4, 6] {
            let (p_best, t_min) = grid_minimum(n, m);
            let band = optimal_rate_band(n, m).map_err(|e| e.to_string())?;
            if !(band.lower <= t_min && t_min <= band.upper) {
                return Err(format!("n={n} m={m}: min {t_min} outside [{}, {}]", band.lower, band.upper));
            }
            let offset = (p_best - m as f64 / n as f64).abs() / step;
            if offset > 1.0 {
                return Err(format!("n={n} m={m}: argmin {p_best} is {offset:.2} steps from m/n"));
            }
            worst_offset = worst_offset.max(offset);
        }
    }
    Ok(format!("9 instances in band, argmin at most {worst_offset:.2} grid steps from m/n"))
}

fn deviation_penalty() -> Outcome {
    let (n, m) = (60, 10);
    let (_, t_min) = grid_minimum(n, m);
    let mut notes = Vec::new();
    for eps in [0.3, 0.5] {
        let factor = rate_deviation_penalty(m, eps).map_err(|e| e.to_string())?;
        notes.push(format!("eps={eps} (factor {factor:.3}):"));
        for sign in [-1.0, 1.0] {
            let p = (1.0 + sign * eps) * m as f64 / n as f64;
            let ratio = static_runtime(n, m, p) / t_min;
            if ratio < factor {
                return Err(format!("eps={eps} sign={sign}: slowdown {ratio} < {factor}"));
            }
            notes.push(format!("{ratio:.3}"));
        }
    }
    Ok(format!("slowdowns {}", notes.join(" ")))
}

fn heavy_tailed_scale() -> Outcome {
    let mut ratios = Vec::new();
    for n in [30, 60, 100] {
        for beta in [1.5, 2.0] {
            let proposal = LevelProposal::build(n, &MutationSpec::HeavyTailed(beta)).map_err(|e| e.to_string())?;
            for m in [3, 5, 8] {
                let chain = LevelChain::new(m, proposal.clone()).map_err(|e| e.to_string())?;
                let t = chain.expected_runtime().map_err(|e| e.to_string())?;
                let scale = heavy_tailed_jump_scale(n, m, beta).map_err(|e| e.to_string())?;
                ratios.push((n, m, beta, t / scale));
            }
        }
    }
    let max = ratios.iter().map(|r| r.3).fold(0.0, f64::max);
    let min = ratios.iter().map(|r| r.3).fold(f64::INFINITY, f64::min);
    let detail = format!("calibrated constant {max:.4} (min ratio {min:.4}, spread {:.3})", max / min);
    if max <= 4.0 && max / min < 3.0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn headline_speedup() -> Outcome {
    let (n, m) = (100, 8);
    let classic = static_runtime(n, m, 1.0 / n as f64);
    let heavy = exact_expected_runtime_jump(n, m, &MutationSpec::HeavyTailed(1.5)).map_err(|e| e.to_string())?;
    let detail = format!("classic {classic:.4e}, beta=1.5 {heavy:.4e}, ratio {:.1}", classic / heavy);
    if classic / heavy >= 100.0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn simulation_agreement() -> Outcome {
    let (n, m, runs) = (20, 2, 2000);
    let problem = Jump::new(m, n).map_err(|e| e.to_string())?;
    let mut notes = Vec::new();
    for (seed, spec) in [(61, MutationSpec::HeavyTailed(1.5)), (62, MutationSpec::StaticRate(1.0 / n as f64))] {
        let exact = exact_expected_runtime_jump(n, m, &spec).map_err(|e| e.to_string())?;
        let summary =
            run_many(&problem, &RunConfig::new(n, spec.clone()).with_seed(seed), runs).map_err(|e| e.to_string())?;
        let mean = summary.mean.ok_or("no successful run")?;
        let deviation = (mean - exact) / exact;
        notes.push(format!("{spec:?}: mean {mean:.1} vs {exact:.1} ({:+.2}%)", 100.0 * deviation));
        if deviation.abs() > 0.10 || summary.success_rate < 1.0 {
            return Err(notes.join("; "));
        }
    }
    Ok(notes.join("; "))
}

fn heavy_tailed_law() -> Outcome {
    let (n, beta, draws) = (100, 1.5, 1_000_000);
    let hits = common::heavy_tailed_hits(n, beta, draws, 71);
    let total = draws as f64;
    let mut worst_z: f64 = 0.0;
    for k in 0..=10 {
        let observed: u64 = hits.iter().map(|row| row[k]).sum();
        let p = hamming_pmf_exact(n, &MutationSpec::HeavyTailed(beta), k).map_err(|e| e.to_string())?;
        let z = (observed as f64 - total * p) / (total * p * (1.0 - p)).sqrt();
        if z.abs() > 4.0 {
            return Err(format!("k={k}: z = {z:.2}"));
        }
        worst_z = worst_z.max(z.abs());
    }
    let (stat, df) = common::conditional_binomial_gof(&hits, n);
    let chi = ChiSquared::new(df as f64).map_err(|e| e.to_string())?;
    let p_value = 1.0 - chi.cdf(stat);
    let detail =
        format!("max |z| {worst_z:.2} over k in 0..=10; conditional chi2 {stat:.1} on {df} dof, p = {p_value:.3}");
    if p_value >= 0.001 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn vertex_cover_escape() -> Outcome {
    let (small, n, runs) = (3, 15, 200);
    let problem = CompleteBipartiteVc::new(small, n).map_err(|e| e.to_string())?;
    let trap = problem.large_side_cover();
    let (mut successes, mut trapped, mut trapped_escaped) = (0, 0, 0);
    for k in 0..runs {
        let config =
            RunConfig::new(n, MutationSpec::HeavyTailed(1.5)).with_budget(10_000_000).with_seed(81).with_trial(k);
        let mut visited = false;
        let result = run_observed(&problem, &config, |x, _| visited |= *x == trap).map_err(|e| e.to_string())?;
        successes += result.success as u32;
        if visited {
            trapped += 1;
            trapped_escaped += result.success as u32;
        }
    }
    let rate = successes as f64 / runs as f64;
    let detail =
        format!("success rate {rate:.3}; {trapped} runs visited the large side, {trapped_escaped} of them escaped");
    if rate >= 0.95 && trapped > 0 && trapped_escaped == trapped {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn matching_approximation() -> Outcome {
    let graph = Graph::petersen();
    let opt = brute_force_max_matching(&graph).map_err(|e| e.to_string())?;
    if opt != 5 {
        return Err(format!("maximum matching {opt}, expected 5"));
    }
    let n = graph.edge_count();
    let problem = Matching::new(graph, opt);
    let runs = 100;
    let (mut at_least_three, mut optimal) = (0, 0);
    for k in 0..runs {
        let config =
            RunConfig::new(n, MutationSpec::HeavyTailed(1.5)).with_budget(10_000_000).with_seed(91).with_trial(k);
        let best = run(&problem, &config).map_err(|e| e.to_string())?.best_fitness;
        let size = if best.primary == 0 { best.secondary } else { 0 };
        at_least_three += (size >= 3) as u32;
        optimal += (size >= 5) as u32;
    }
    let detail = format!("{at_least_three}/{runs} runs reach size >= 3, {optimal}/{runs} reach 5");
    if at_least_three == runs as u32 && optimal as f64 >= 0.9 * runs as f64 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn onemax_scale() -> Outcome {
    let mut normalized = Vec::new();
    for (seed, n) in [(101, 100), (102, 200), (103, 400)] {
        let summary = run_many(&OneMax { n }, &RunConfig::new(n, MutationSpec::HeavyTailed(1.5)).with_seed(seed), 200)
            .map_err(|e| e.to_string())?;
        let mean = summary.mean.ok_or("no successful run")?;
        normalized.push((n, mean / (n as f64 * (n as f64).ln())));
    }
    let detail = normalized.iter().map(|(n, r)| format!("n={n}: {r:.3}")).collect::<Vec<_>>().join(", ");
    if normalized.iter().all(|&(_, r)| (0.5..=6.0).contains(&r)) {
        Ok(format!("mean / (n ln n) {detail}"))
    } else {
        Err(format!("mean / (n ln n) {detail}"))
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 10] = [
        ("static-rate runtime inside closed-form bounds", static_sandwich),
        ("best static rate near m/n with runtime in [X/2, 3X]", best_rate_in_band),
        ("penalty for missing the optimal rate", deviation_penalty),
        ("heavy-tailed runtime within a constant of its scale", heavy_tailed_scale),
        ("heavy-tailed speedup on Jump(8, 100)", headline_speedup),
        ("simulated means match exact runtimes", simulation_agreement),
        ("heavy-tailed Hamming distance law", heavy_tailed_law),
        ("vertex cover escapes the large side", vertex_cover_escape),
        ("matching on the Petersen graph", matching_approximation),
        ("OneMax runtime of order n ln n", onemax_scale),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:2} PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:2} FAIL  {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
