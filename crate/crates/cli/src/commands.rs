use std::path::Path;

use condmc::ecdf::{sup_distance, Ecdf};
use condmc::framework::Diagnostics;
use condmc::gof::{
    conditional_p_values, mle_from_suffstats, suff_stats, Family, GofConfig, GofReport,
    GofStatistic,
};
use condmc::{Execution, RngState, SampleBatch, ThetaPair};
use serde::Serialize;
use serde_json::json;

use crate::error::{CliError, Result};
use crate::io::{
    fmt17, read_data, read_samples, sidecar_path, write_json, write_samples, write_text,
    SampleFile,
};
use crate::setup::{Method, ModelKind, Setup};
use crate::{CompareArgs, GofArgs, SampleArgs, StatArg};

fn param_names(family: Family) -> (&'static str, &'static str) {
    match family {
        Family::Gamma => ("shape", "scale"),
        Family::InvGauss => ("mu", "lambda"),
    }
}

pub fn stats(families: &[Family], data: &Path, as_json: bool) -> Result<()> {
    let d = read_data(data)?;
    let mut out = Vec::new();
    for &family in families {
        let t = suff_stats(d.values(), family)?;
        let (p1, p2) = mle_from_suffstats(&t, d.len())?;
        let (n1, n2) = param_names(family);
        if as_json {
            out.push(json!({
                "family": family,
                "n": d.len(),
                "t1": t.t1,
                "t2": t.t2,
                "mle": { n1: p1, n2: p2 },
            }));
        } else {
            println!("family  {family}");
            println!("n       {}", d.len());
            println!("t1      {:.6}", t.t1);
            println!("t2      {:.6}", t.t2);
            println!("{n1:<8}{p1:.6}");
            println!("{n2:<8}{p2:.6}");
        }
    }
    if as_json {
        println!("{}", serde_json::to_string_pretty(&out)?);
    }
    Ok(())
}

#[derive(Serialize)]
struct Range {
    mean: f64,
    min: f64,
    max: f64,
}

impl Range {
    fn of(v: impl Iterator<Item = f64> + Clone) -> Range {
        let count = v.clone().count().max(1) as f64;
        Range {
            mean: v.clone().sum::<f64>() / count,
            min: v.clone().fold(f64::INFINITY, f64::min),
            max: v.fold(f64::NEG_INFINITY, f64::max),
        }
    }
}

#[derive(Serialize)]
struct ThetaSummary {
    alpha: Range,
    #[serde(skip_serializing_if = "Option::is_none")]
    beta: Option<Range>,
}

fn theta_summary(thetas: &[ThetaPair]) -> Option<ThetaSummary> {
    let first = thetas.first()?;
    Some(ThetaSummary {
        alpha: Range::of(thetas.iter().map(|t| t.alpha())),
        beta: (first.dimension() == 2).then(|| Range::of(thetas.iter().map(|t| t.beta()))),
    })
}

#[derive(Serialize)]
struct SampleMeta<'a> {
    model: ModelKind,
    method: Method,
    n: usize,
    t: Vec<f64>,
    samples: usize,
    seed: u64,
    stream: u64,
    thin: usize,
    chains: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    eps: Option<&'a [f64]>,
    acceptance_rate: f64,
    diagnostics: &'a Diagnostics,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta_hat: Option<ThetaSummary>,
}

pub fn sample(a: &SampleArgs, exec: Execution) -> Result<()> {
    let setup = Setup::new(&a.model)?;
    let method = a.method.unwrap_or_else(|| setup.default_method());
    let mut rng = RngState::new(a.seed, 0);
    let batch = setup.run(method, &a.sampler, exec, &mut rng)?;
    write_samples(&a.out, &SampleFile::from_batch(&batch), a.format)?;
    let meta = SampleMeta {
        model: setup.kind,
        method,
        n: setup.n,
        t: setup.t.values(),
        samples: batch.len(),
        seed: batch.seed,
        stream: batch.stream,
        thin: a.sampler.thin,
        chains: a.sampler.chains,
        eps: (method == Method::Naive).then_some(a.sampler.eps.as_deref()).flatten(),
        acceptance_rate: batch.acceptance_rate(),
        diagnostics: &batch.diagnostics,
        theta_hat: theta_summary(&batch.theta_hats),
    };
    write_json(&sidecar_path(&a.out), &meta)?;
    println!(
        "wrote {} samples to {} (acceptance rate {:.4})",
        batch.len(),
        a.out.display(),
        batch.acceptance_rate()
    );
    Ok(())
}

pub fn gof(a: &GofArgs, exec: Execution) -> Result<()> {
    let data = read_data(&a.data)?;
    let stats: Vec<GofStatistic> = match a.stat {
        StatArg::Ks => vec![GofStatistic::Ks],
        StatArg::Ad => vec![GofStatistic::Ad],
        StatArg::Cvm => vec![GofStatistic::Cvm],
        StatArg::All => GofStatistic::ALL.to_vec(),
    };
    let mut cfg = GofConfig::new(a.k);
    cfg.thin = a.thin;
    cfg.burn_in = a.burn_in;
    cfg.chains = a.chains;
    cfg.prior = a.prior;
    cfg.continuity_correction = a.continuity_correction;
    cfg.exec = exec;

    let families = a.family.families();
    let mut columns: Vec<Vec<GofReport>> = Vec::new();
    for &family in &families {
        let mut rng = RngState::new(a.seed, 0);
        columns.push(conditional_p_values(&data, family, &stats, &cfg, &mut rng)?);
    }

    println!("conditional p-values (n = {}, k = {}, seed {})", data.len(), a.k, a.seed);
    print!("{:<6}", "stat");
    for f in &families {
        print!("{:>10}", f.name());
    }
    println!();
    for (i, s) in stats.iter().enumerate() {
        print!("{:<6}", s.name());
        for col in &columns {
            print!("{:>10.4}", col[i].p_value);
        }
        println!();
    }
    for (f, col) in families.iter().zip(&columns) {
        let (n1, n2) = param_names(*f);
        let r = &col[0];
        let se: Vec<String> = col
            .iter()
            .map(|r| format!("{} {:.4}", r.statistic.name(), r.monte_carlo_se))
            .collect();
        println!(
            "{}: {n1} {:.4}, {n2} {:.4}, acceptance rate {:.4}, se {}",
            f.name(),
            r.mle.0,
            r.mle.1,
            r.acceptance_rate,
            se.join(", ")
        );
    }
    if let Some(out) = &a.out {
        let all: Vec<&GofReport> = columns.iter().flatten().collect();
        write_json(out, &all)?;
    }
    Ok(())
}

fn column(samples: &SampleFile, col: usize, what: &Path) -> Result<Vec<f64>> {
    if col == 0 || col > samples.n {
        return Err(CliError::Usage(format!(
            "{}: column {col} out of range 1..={}",
            what.display(),
            samples.n
        )));
    }
    Ok(samples.rows.iter().map(|r| r[col - 1]).collect())
}

pub fn ecdf(input: &Path, col: usize, out: &Path) -> Result<()> {
    let samples = read_samples(input)?;
    let values = column(&samples, col, input)?;
    let e = Ecdf::new(&values).map_err(|_| CliError::Format {
        path: input.to_path_buf(),
        message: "no samples".into(),
    })?;
    let mut text = String::from("value,ecdf\n");
    for (x, f) in e.points() {
        text.push_str(&format!("{},{}\n", fmt17(x), fmt17(f)));
    }
    write_text(out, &text)
}

#[derive(Serialize)]
struct SamplerSummary {
    method: Method,
    seed: u64,
    samples: usize,
    proposals: u64,
    acceptance_rate: f64,
    solver_failures: u64,
}

impl SamplerSummary {
    fn of(method: Method, seed: u64, b: &SampleBatch) -> Self {
        SamplerSummary {
            method,
            seed,
            samples: b.len(),
            proposals: b.diagnostics.proposals,
            acceptance_rate: b.acceptance_rate(),
            solver_failures: b.diagnostics.solver_failures,
        }
    }
}

pub fn compare(a: &CompareArgs, exec: Execution) -> Result<()> {
    let setup = Setup::new(&a.model)?;
    let seed_b = a.seed_b.unwrap_or(a.seed);
    let batch_a = setup.run(a.method_a, &a.sampler, exec, &mut RngState::new(a.seed, 0))?;
    let batch_b = setup.run(a.method_b, &a.sampler, exec, &mut RngState::new(seed_b, 0))?;
    if a.col == 0 || a.col > setup.n {
        return Err(CliError::Usage(format!("column {} out of range 1..={}", a.col, setup.n)));
    }
    let ecdf_of = |b: &SampleBatch| {
        Ecdf::new(&b.column(a.col - 1)).map_err(CliError::from)
    };
    let d = sup_distance(&ecdf_of(&batch_a)?, &ecdf_of(&batch_b)?);
    let sa = SamplerSummary::of(a.method_a, a.seed, &batch_a);
    let sb = SamplerSummary::of(a.method_b, seed_b, &batch_b);
    if a.json {
        let report = json!({ "column": a.col, "sup_distance": d, "a": sa, "b": sb });
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("sup distance of x{} ECDFs: {d:.4}", a.col);
        for (label, s) in [("A", &sa), ("B", &sb)] {
            println!(
                "{label} {:<10} samples {:>7}  proposals {:>11}  acceptance rate {:.4}",
                format!("{:?}", s.method).to_lowercase(),
                s.samples,
                s.proposals,
                s.acceptance_rate
            );
        }
    }
    Ok(())
}
