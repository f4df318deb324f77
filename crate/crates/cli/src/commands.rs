use serde_json::{json, Value};
use sturmian_core::characterization::{
    enumerate_legal_stable, enumerate_legal_stable_fixed, periodic_exclusion,
    periodic_exclusion_grown, EXCLUSION_HORIZON_CAP,
};
use sturmian_core::config::RunConfig;
use sturmian_core::discrepancy::{component_intervals, frequency, strict_boundary_check};
use sturmian_core::lattice_gas::{
    build_interaction, energy_open, ground_state_search, periodic_energy_density, ratio_string,
    zero_energy_matches_legality, InteractionSpec,
};
use sturmian_core::order_analysis::{
    distance_profile, factor_complexity, factor_set, is_balanced, is_most_homogeneous,
    profile_structure, DistanceProfile,
};
use sturmian_core::sturmian_gen::{generate, GammaSpec, SourceRegistry};
use sturmian_core::verify::run_verify;
use sturmian_core::{Error, Result, RotationParams, Word};

use crate::render::Outcome;
use crate::{Command, WordArgs};

const DECIMALS: u32 = 12;

pub fn dispatch(command: &Command, cfg: &RunConfig) -> (&'static str, Result<Outcome>) {
    match command {
        Command::Generate { from, to, method } => ("generate", cmd_generate(cfg, *from, *to, method.as_deref())),
        Command::Distances => ("distances", cmd_distances(cfg)),
        Command::Complexity { n } => ("complexity", cmd_complexity(cfg, *n)),
        Command::Balance(w) => ("balance", cmd_balance(cfg, w)),
        Command::Homogeneous(w) => ("homogeneous", cmd_homogeneous(cfg, w)),
        Command::Intervals { n } => ("intervals", cmd_intervals(cfg, *n)),
        Command::Frequency { word } => ("frequency", cmd_frequency(cfg, word)),
        Command::Discrepancy {
            word,
            max_word_len,
            max_len,
        } => ("discrepancy", cmd_discrepancy(cfg, word.as_deref(), *max_word_len, *max_len)),
        Command::Characterize { n, max_m } => ("characterize", cmd_characterize(cfg, *n, *max_m)),
        Command::Exclusion { p_max } => ("exclusion", cmd_exclusion(cfg, *p_max)),
        Command::Energy { word, periodic } => ("energy", cmd_energy(cfg, word, *periodic)),
        Command::GroundState { len } => ("ground-state", cmd_ground_state(cfg, *len)),
        Command::Verify { suite } => ("verify", cmd_verify(cfg, suite)),
    }
}

fn profile_for(cfg: &RunConfig, params: &RotationParams, horizon: u64) -> Result<DistanceProfile> {
    match &cfg.profile_override {
        Some(p) => Ok(p.clone()),
        None => distance_profile(params, horizon),
    }
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// The word named by `args` and whether it came from the generator.
fn resolve_word(cfg: &RunConfig, args: &WordArgs) -> Result<(Word, bool)> {
    match (&args.word, args.from, args.to) {
        (Some(w), _, _) => Ok((Word::parse_at(0, w)?, false)),
        (None, Some(from), Some(to)) => Ok((generate(&cfg.rotation()?, from, to)?, true)),
        _ => Err(Error::InvalidParameter("give --word or --from/--to".into())),
    }
}

fn cmd_generate(cfg: &RunConfig, from: i64, to: i64, method: Option<&str>) -> Result<Outcome> {
    if from > to {
        return Err(Error::InvalidParameter(format!("--from {from} is after --to {to}")));
    }
    let gamma = cfg.gamma_spec()?;
    let method = method.unwrap_or(match gamma {
        GammaSpec::Exact(_) => "rotation",
        GammaSpec::Ratio { .. } => "approx",
    });
    let source = SourceRegistry::default().build(method, &gamma, &cfg.psi_value()?)?;
    let word = source.window(from, to)?;
    let rows = word
        .symbols()
        .iter()
        .enumerate()
        .map(|(k, s)| vec![word.index_of(k).to_string(), s.to_string()])
        .collect();
    Ok(Outcome::new(
        json!({ "method": source.name(), "word": word }),
        vec!["index", "symbol"],
        rows,
        word.as_string(),
    ))
}

fn cmd_distances(cfg: &RunConfig) -> Result<Outcome> {
    let params = cfg.rotation()?;
    let profile = profile_for(cfg, &params, cfg.horizon)?;
    let structure = profile_structure(&profile);
    let failure = structure.as_ref().err().map(|e| json!({ "structure": e.to_string() }));
    let structure = match structure {
        Ok(s) => serde_json::to_value(s).unwrap_or(Value::Null),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let rows = profile
        .d
        .iter()
        .enumerate()
        .map(|(j, d)| vec![(j + 1).to_string(), d.to_string()])
        .collect();
    let text = format!(
        "d: {}\nforbidden: {}\nhorizon: {}",
        join(&profile.d),
        join(&profile.forbidden),
        profile.horizon
    );
    Ok(Outcome::new(
        json!({ "profile": profile, "structure": structure }),
        vec!["j", "d_j"],
        rows,
        text,
    )
    .failing_with(failure))
}

fn cmd_complexity(cfg: &RunConfig, n: usize) -> Result<Outcome> {
    let report = factor_complexity(&cfg.rotation()?, n)?;
    let bad: Vec<_> = report.p.iter().filter(|(n, p)| **p != **n + 1).collect();
    let failure = (!bad.is_empty()).then(|| json!({ "p_n_not_n_plus_1": bad }));
    let rows = report
        .p
        .iter()
        .map(|(n, p)| vec![n.to_string(), p.to_string()])
        .collect();
    let text = report
        .p
        .iter()
        .map(|(n, p)| format!("p_{n} = {p}"))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Outcome::new(json!(report), vec!["n", "p_n"], rows, text).failing_with(failure))
}

fn cmd_balance(cfg: &RunConfig, args: &WordArgs) -> Result<Outcome> {
    let (word, generated) = resolve_word(cfg, args)?;
    let verdict = is_balanced(&word);
    let ok = verdict.is_balanced();
    let failure = (generated && !ok).then(|| json!(verdict));
    Ok(Outcome::new(
        json!({ "word": word, "verdict": verdict }),
        vec!["word", "balanced"],
        vec![vec![word.as_string(), ok.to_string()]],
        if ok { "balanced" } else { "unbalanced" }.into(),
    )
    .failing_with(failure))
}

fn cmd_homogeneous(cfg: &RunConfig, args: &WordArgs) -> Result<Outcome> {
    let (word, generated) = resolve_word(cfg, args)?;
    let verdict = is_most_homogeneous(&word)?;
    let ok = verdict.is_homogeneous();
    let failure = (generated && !ok).then(|| json!(verdict));
    Ok(Outcome::new(
        json!({ "word": word, "verdict": verdict }),
        vec!["word", "most_homogeneous"],
        vec![vec![word.as_string(), ok.to_string()]],
        if ok { "most homogeneous" } else { "not most homogeneous" }.into(),
    )
    .failing_with(failure))
}

fn cmd_intervals(cfg: &RunConfig, n: usize) -> Result<Outcome> {
    let arcs = component_intervals(&cfg.rotation()?, n)?;
    let failure = (arcs.intervals.len() != n + 1).then(|| json!({ "count": arcs.intervals.len() }));
    let rows: Vec<Vec<String>> = arcs
        .intervals
        .iter()
        .map(|a| {
            vec![
                a.word.clone(),
                a.start.to_decimal(DECIMALS),
                a.end.to_decimal(DECIMALS),
                a.length().to_decimal(DECIMALS),
            ]
        })
        .collect();
    let text = rows
        .iter()
        .map(|r| format!("{}  [{}, {})  length {}", r[0], r[1], r[2], r[3]))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Outcome::new(json!(arcs), vec!["word", "start", "end", "length"], rows, text).failing_with(failure))
}

fn cmd_frequency(cfg: &RunConfig, word: &str) -> Result<Outcome> {
    let w = Word::parse_at(0, word)?;
    let f = frequency(&cfg.rotation()?, &w)?;
    let decimal = f.to_decimal(DECIMALS);
    Ok(Outcome::new(
        json!({ "word": word, "frequency": f, "frequency_decimal": decimal }),
        vec!["word", "frequency", "frequency_decimal"],
        vec![vec![word.into(), f.to_string(), decimal.clone()]],
        format!("{word}: {decimal}"),
    ))
}

fn cmd_discrepancy(
    cfg: &RunConfig,
    word: Option<&str>,
    max_word_len: usize,
    max_len: Option<usize>,
) -> Result<Outcome> {
    let params = cfg.rotation()?;
    let words: Vec<String> = match word {
        Some(w) => vec![w.to_string()],
        None => {
            let mut all = Vec::new();
            for n in 1..=max_word_len {
                all.extend(component_intervals(&params, n)?.words());
            }
            all
        }
    };
    let max_len = max_len.unwrap_or(cfg.window / 2);
    let reports = words
        .iter()
        .map(|w| strict_boundary_check(&params, &Word::parse_at(0, w)?, max_len, cfg.seed_plan.trials))
        .collect::<Result<Vec<_>>>()?;
    let unstable: Vec<&str> = reports
        .iter()
        .filter(|r| !r.stabilized)
        .map(|r| r.word.as_str())
        .collect();
    let failure = (!unstable.is_empty()).then(|| json!({ "not_stabilized": unstable }));
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                r.word.clone(),
                r.frequency_decimal.clone(),
                r.max_dev.to_decimal(DECIMALS),
                r.horizon.to_string(),
            ]
        })
        .collect();
    let text = reports
        .iter()
        .map(|r| {
            format!(
                "{:>8}  freq {}  C_w {}  {}",
                r.word,
                r.frequency_decimal,
                r.c_w_decimal,
                if r.stabilized { "stable" } else { "growing" }
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Outcome::new(
        json!(reports),
        vec!["word", "frequency_decimal", "max_dev", "horizon"],
        rows,
        text,
    )
    .failing_with(failure))
}

fn cmd_characterize(cfg: &RunConfig, n: usize, max_m: usize) -> Result<Outcome> {
    let params = cfg.rotation()?;
    let stable = match &cfg.profile_override {
        Some(p) => enumerate_legal_stable_fixed(n, p, max_m)?,
        None => enumerate_legal_stable(n, &params, max_m)?,
    };
    let window = generate(&params, 0, cfg.window.max(4 * n) as i64 - 1)?;
    let matches = stable.words == factor_set(&window, n)?;
    let count = stable.words.len();
    let failure = (!matches || count != n + 1).then(|| json!({ "count": count, "matches_factor_set": matches }));
    let rows = stable.words.iter().map(|w| vec![w.clone()]).collect();
    let text = format!(
        "n = {n}, M = {}: {count} legal words, {}\n{}",
        stable.m_used,
        if matches { "equal to the factor set" } else { "NOT equal to the factor set" },
        stable.words.iter().cloned().collect::<Vec<_>>().join("\n")
    );
    Ok(Outcome::new(
        json!({
            "n": n,
            "M_used": stable.m_used,
            "legal_words": stable.words,
            "count": count,
            "matches_factor_set": matches,
        }),
        vec!["word"],
        rows,
        text,
    )
    .failing_with(failure))
}

fn cmd_exclusion(cfg: &RunConfig, p_max: u64) -> Result<Outcome> {
    let params = cfg.rotation()?;
    let mut results = Vec::new();
    let mut rows = Vec::new();
    for p in 1..=p_max {
        let i = match &cfg.profile_override {
            Some(profile) => periodic_exclusion(p, profile)?,
            None => periodic_exclusion_grown(p, &params, EXCLUSION_HORIZON_CAP)?,
        };
        results.push(json!({ "p": p, "i": i, "forbidden_distance": i * p }));
        rows.push(vec![p.to_string(), i.to_string(), (i * p).to_string()]);
    }
    let text = rows
        .iter()
        .map(|r| format!("p = {}: {} * {} = {} is forbidden", r[0], r[1], r[0], r[2]))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Outcome::new(json!(results), vec!["p", "i", "forbidden_distance"], rows, text))
}

fn interaction(cfg: &RunConfig, params: &RotationParams, min_horizon: u64) -> Result<InteractionSpec> {
    let profile = profile_for(cfg, params, cfg.horizon.max(min_horizon))?;
    build_interaction(&profile, cfg.lambda_value()?, cfg.beta_value()?)
}

fn cmd_energy(cfg: &RunConfig, args: &WordArgs, periodic: bool) -> Result<Outcome> {
    let params = cfg.rotation()?;
    let (word, _) = resolve_word(cfg, args)?;
    let spec = interaction(cfg, &params, word.len() as u64)?;
    let summary = spec.summary(params.gamma());
    if periodic {
        let density = periodic_energy_density(&word, &spec, &cfg.tail_tol_value()?)?;
        let lower = ratio_string(&density.lower_bound);
        let text = format!("energy density of ({})^Z >= {lower}", word.as_string());
        return Ok(Outcome::new(
            json!({ "interaction": summary, "word": word, "periodic_density": density }),
            vec!["word", "lower_bound", "value_estimate", "truncated_at"],
            vec![vec![
                word.as_string(),
                lower,
                ratio_string(&density.value_estimate),
                density.truncated_at.to_string(),
            ]],
            text,
        ));
    }
    let energy = energy_open(&word, &spec)?;
    let total = ratio_string(&energy.total);
    Ok(Outcome::new(
        json!({ "interaction": summary, "word": word, "energy": energy }),
        vec!["word", "total", "pair_part", "zero_run_part"],
        vec![vec![
            word.as_string(),
            total.clone(),
            ratio_string(&energy.pair_part),
            ratio_string(&energy.zero_run_part),
        ]],
        format!("E({}) = {total}", word.as_string()),
    ))
}

fn cmd_ground_state(cfg: &RunConfig, len: usize) -> Result<Outcome> {
    let params = cfg.rotation()?;
    let spec = interaction(cfg, &params, len as u64)?;
    let ground = ground_state_search(len, &spec)?;
    let matches = zero_energy_matches_legality(len, &spec, &ground)?;
    let min = ratio_string(&ground.min_energy);
    let zero = ground.min_energy == Default::default();
    let failure = (!zero || !matches).then(|| json!({ "min_energy": min, "matches_legality": matches }));
    let rows = ground.argmin.iter().map(|w| vec![w.clone(), min.clone()]).collect();
    let text = format!(
        "L = {len}: min energy {min}, {} ground states\n{}",
        ground.argmin.len(),
        ground.argmin.join("\n")
    );
    Ok(Outcome::new(
        json!({
            "interaction": spec.summary(params.gamma()),
            "len": len,
            "min_energy": min,
            "argmin": ground.argmin,
            "count": ground.argmin.len(),
            "scanned": ground.scanned,
            "matches_legality": matches,
        }),
        vec!["word", "energy"],
        rows,
        text,
    )
    .failing_with(failure))
}

fn cmd_verify(cfg: &RunConfig, suite: &str) -> Result<Outcome> {
    let report = run_verify(suite, cfg.clone())?;
    let failure = report
        .first_failure()
        .map(|(suite, check)| json!({ "suite": suite, "check": check.name, "detail": check.detail }));
    let mut rows = Vec::new();
    let mut text = Vec::new();
    for r in &report.results {
        for c in &r.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            rows.push(vec![r.suite.clone(), c.name.clone(), status.to_string()]);
            text.push(format!("{status:4}  {}/{}", r.suite, c.name));
        }
    }
    Ok(Outcome::new(
        json!({ "passed": report.passed, "suites": report.results }),
        vec!["suite", "check", "status"],
        rows,
        text.join("\n"),
    )
    .failing_with(failure))
}
