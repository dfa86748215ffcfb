//! The coefficient/function mini-language and its JSON config form.
//!
//! Function specs: built-in names `null|one|identity|mobius|phi`, a CSV
//! value table `table:PATH` (`a,value` rows), or a multiplicative
//! prime-power spec `mult:PATH` (JSON).
//!
//! Coefficient specs: `zero`, `harmonic`, the built-in function names,
//! `exotic:p0=P,sigma=S`, `table:PATH` (a Hildebrand table JSON), or
//! `config:PATH` pointing at a JSON document like
//! `{"kind":"exotic_sigma","p0":2,"sigma":2.0}` or
//! `{"kind":"shifted","table":"t.json","null":{...}}`.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::pow::Pow;
use serde::Deserialize;

use ramanujan_core::arith::Factorizer;
use ramanujan_core::clouds::{
    shift_by_null, Coefficient, ExoticSigma, FunctionCoefficient, HarmonicCoefficient,
    TableCoefficient, WeaklyExotic, ZeroCoefficient,
};
use ramanujan_core::hildebrand::ArithmeticFn;

/// Parses `n`, `n/d`, or a plain decimal like `-1.25` into an exact
/// rational.
pub fn parse_rational(text: &str) -> anyhow::Result<BigRational> {
    let s = text.trim();
    if s.is_empty() {
        bail!("empty rational literal");
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let (sign, digits) = match int_part.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, int_part.strip_prefix('+').unwrap_or(int_part)),
        };
        if !digits.chars().all(|c| c.is_ascii_digit())
            || frac_part.is_empty()
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            bail!("malformed decimal literal '{s}'");
        }
        let whole: BigInt = if digits.is_empty() {
            BigInt::from(0)
        } else {
            digits.parse().context("integer part")?
        };
        let frac: BigInt = frac_part.parse().context("fraction part")?;
        let scale = BigInt::from(10).pow(frac_part.len() as u32);
        let numer = (whole * &scale + frac) * BigInt::from(sign);
        return Ok(BigRational::new(numer, scale));
    }
    s.parse::<BigRational>()
        .map_err(|e| anyhow!("malformed rational literal '{s}': {e}"))
}

/// Parses an argument set: `7`, `1..10` (inclusive), or `1,2,5`.
pub fn parse_argument_set(text: &str) -> anyhow::Result<Vec<u64>> {
    let s = text.trim();
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: u64 = lo.trim().parse().context("range start")?;
        let hi: u64 = hi.trim().parse().context("range end")?;
        if lo == 0 || hi < lo {
            bail!("invalid argument range '{s}'");
        }
        return Ok((lo..=hi).collect());
    }
    let args: Vec<u64> = s
        .split(',')
        .map(|part| part.trim().parse::<u64>().context("argument"))
        .collect::<Result<_, _>>()?;
    if args.is_empty() || args.contains(&0) {
        bail!("arguments must be positive integers");
    }
    Ok(args)
}

#[derive(Debug, Deserialize)]
struct MultSpecFile {
    name: String,
    prime_powers: BTreeMap<String, Vec<String>>,
}

/// Parses a function spec. CSV value tables are read fully; use
/// [`validate_function_bound`] to enforce completeness up to a bound.
pub fn parse_function_spec(spec: &str) -> anyhow::Result<ArithmeticFn> {
    if let Some(builtin) = ArithmeticFn::builtin(spec) {
        return Ok(builtin);
    }
    if let Some(path) = spec.strip_prefix("table:") {
        return parse_value_table(Path::new(path));
    }
    if let Some(path) = spec.strip_prefix("mult:") {
        return parse_mult_spec(Path::new(path));
    }
    bail!(
        "unknown function spec '{spec}' (expected null|one|identity|mobius|phi, \
         table:PATH, or mult:PATH)"
    )
}

fn parse_value_table(path: &Path) -> anyhow::Result<ArithmeticFn> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading value table {}", path.display()))?;
    let mut rows: BTreeMap<u64, BigRational> = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (lineno == 0 && line.eq_ignore_ascii_case("a,value")) {
            continue;
        }
        let (a, value) = line
            .split_once(',')
            .ok_or_else(|| anyhow!("line {}: expected 'a,value'", lineno + 1))?;
        let a: u64 = a.trim().parse().with_context(|| format!("line {}", lineno + 1))?;
        if a == 0 {
            bail!("line {}: arguments start at 1", lineno + 1);
        }
        let value =
            parse_rational(value).with_context(|| format!("line {}", lineno + 1))?;
        if rows.insert(a, value).is_some() {
            bail!("line {}: duplicate value for a={a}", lineno + 1);
        }
    }
    let bound = *rows.keys().next_back().ok_or_else(|| anyhow!("empty value table"))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "table".to_string());
    let missing: Vec<u64> = (1..=bound).filter(|a| !rows.contains_key(a)).collect();
    if !missing.is_empty() {
        bail!(
            "value table {} is missing a = {}",
            path.display(),
            missing.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
        );
    }
    Ok(ArithmeticFn::Values { name, values: rows.into_values().collect() })
}

fn parse_mult_spec(path: &Path) -> anyhow::Result<ArithmeticFn> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading multiplicative spec {}", path.display()))?;
    let file: MultSpecFile = serde_json::from_str(&text)
        .with_context(|| format!("parsing multiplicative spec {}", path.display()))?;
    let mut prime_powers = BTreeMap::new();
    for (p, values) in file.prime_powers {
        let p: u64 = p.parse().with_context(|| format!("prime key '{p}'"))?;
        if !ramanujan_core::arith::is_prime(p) {
            bail!("spec key {p} is not prime");
        }
        let values: Vec<BigRational> = values
            .iter()
            .map(|v| parse_rational(v))
            .collect::<Result<_, _>>()
            .with_context(|| format!("values at p={p}"))?;
        prime_powers.insert(p, values);
    }
    Ok(ArithmeticFn::Multiplicative { name: file.name, prime_powers })
}

/// Checks that a function can be evaluated everywhere in `1..=bound`,
/// reporting every gap at once.
pub fn validate_function_bound(
    ctx: &Factorizer,
    func: &ArithmeticFn,
    bound: u64,
) -> anyhow::Result<()> {
    match func {
        ArithmeticFn::Values { name, values } => {
            if (values.len() as u64) < bound {
                let missing: Vec<String> =
                    (values.len() as u64 + 1..=bound).map(|a| a.to_string()).collect();
                bail!(
                    "function '{name}' is missing a = {} (needed for bound {bound})",
                    missing.join(", ")
                );
            }
            Ok(())
        }
        ArithmeticFn::Multiplicative { name, prime_powers } => {
            let mut missing: Vec<String> = Vec::new();
            for p in 2..=bound {
                if !ctx.is_prime(p) {
                    continue;
                }
                let mut pe = p;
                let mut e = 1u32;
                while pe <= bound {
                    let present = prime_powers
                        .get(&p)
                        .is_some_and(|v| v.len() as u32 >= e);
                    if !present {
                        missing.push(format!("{p}^{e}"));
                    }
                    match pe.checked_mul(p) {
                        Some(next) => pe = next,
                        None => break,
                    }
                    e += 1;
                }
            }
            if !missing.is_empty() {
                bail!(
                    "function '{name}' is missing prime powers {} (needed for bound {bound})",
                    missing.join(", ")
                );
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum CoefConfig {
    ExoticSigma { p0: u64, sigma: f64 },
    Shifted { table: String, null: Box<CoefConfig> },
    WeaklyExotic { p0: u64, base: Box<CoefConfig> },
    Table { path: String },
    Zero,
    Harmonic,
    Builtin { name: String },
}

/// Parses a coefficient spec into a boxed evaluator.
pub fn parse_coefficient_spec(
    ctx: &Factorizer,
    spec: &str,
) -> anyhow::Result<Box<dyn Coefficient>> {
    match spec {
        "zero" | "null" => return Ok(Box::new(ZeroCoefficient)),
        "harmonic" => return Ok(Box::new(HarmonicCoefficient)),
        _ => {}
    }
    if let Some(builtin) = ArithmeticFn::builtin(spec) {
        return Ok(Box::new(FunctionCoefficient(builtin)));
    }
    if let Some(params) = spec.strip_prefix("exotic:") {
        return parse_exotic(params).map(|g| Box::new(g) as Box<dyn Coefficient>);
    }
    if let Some(path) = spec.strip_prefix("table:") {
        let table = load_table(ctx, Path::new(path))?;
        return Ok(Box::new(TableCoefficient::new(ctx, table)?));
    }
    if let Some(path) = spec.strip_prefix("config:") {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading coefficient config {path}"))?;
        let config: CoefConfig = serde_json::from_str(&text)
            .with_context(|| format!("parsing coefficient config {path}"))?;
        return build_config(ctx, config);
    }
    bail!(
        "unknown coefficient spec '{spec}' (expected zero|harmonic, a built-in \
         function name, exotic:p0=P,sigma=S, table:PATH, or config:PATH)"
    )
}

fn parse_exotic(params: &str) -> anyhow::Result<ExoticSigma> {
    let mut p0 = None;
    let mut sigma = None;
    for pair in params.split(',') {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| anyhow!("expected key=value in exotic spec, got '{pair}'"))?;
        match key.trim() {
            "p0" => p0 = Some(value.trim().parse::<u64>().context("p0")?),
            "sigma" => sigma = Some(value.trim().parse::<f64>().context("sigma")?),
            other => bail!("unknown exotic parameter '{other}'"),
        }
    }
    let p0 = p0.ok_or_else(|| anyhow!("exotic spec needs p0="))?;
    let sigma = sigma.ok_or_else(|| anyhow!("exotic spec needs sigma="))?;
    Ok(ExoticSigma::new(p0, sigma)?)
}

fn build_config(ctx: &Factorizer, config: CoefConfig) -> anyhow::Result<Box<dyn Coefficient>> {
    Ok(match config {
        CoefConfig::ExoticSigma { p0, sigma } => Box::new(ExoticSigma::new(p0, sigma)?),
        CoefConfig::Shifted { table, null } => {
            let table = load_table(ctx, Path::new(&table))?;
            let finite = TableCoefficient::new(ctx, table)?;
            let null_part = build_config(ctx, *null)?;
            Box::new(shift_by_null(finite, null_part))
        }
        CoefConfig::WeaklyExotic { p0, base } => {
            let base = build_config(ctx, *base)?;
            Box::new(WeaklyExotic::new(p0, base)?)
        }
        CoefConfig::Table { path } => {
            let table = load_table(ctx, Path::new(&path))?;
            Box::new(TableCoefficient::new(ctx, table)?)
        }
        CoefConfig::Zero => Box::new(ZeroCoefficient),
        CoefConfig::Harmonic => Box::new(HarmonicCoefficient),
        CoefConfig::Builtin { name } => {
            let builtin = ArithmeticFn::builtin(&name)
                .ok_or_else(|| anyhow!("unknown built-in function '{name}'"))?;
            Box::new(FunctionCoefficient(builtin))
        }
    })
}

/// Loads a Hildebrand table JSON file.
pub fn load_table(
    ctx: &Factorizer,
    path: &Path,
) -> anyhow::Result<ramanujan_core::hildebrand::HildebrandTable> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading table {}", path.display()))?;
    crate::formats::table_from_json(ctx, &text)
        .with_context(|| format!("parsing table {}", path.display()))
}
