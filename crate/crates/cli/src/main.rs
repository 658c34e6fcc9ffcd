use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use linsplit::numtheory::{
    all_inner_binoms_zero, binom_mod, exponent_coverage, expos_divisibility, gcd_power_polys,
    gcd_power_polys_oracle, is_power_of, ExponentPair, GcdResult, Sign, SignedPowerPoly,
};
use linsplit::qsp::{complexity_log2, scan_parameters, scan_to_tsv, QspParams, POLYLOG_NOTE};
use linsplit::trinomial::{enumerate_splitting_with, verify_theorem, EnumerationMode, SweepConfig, TheoremReport};
use linsplit::{make_field, Error, FieldSpec, LinearizedPoly};
use serde::Serialize;
use serde_json::json;

/// Nullity of linearized polynomials, splitting trinomials and related checks.
#[derive(Parser)]
#[command(name = "linsplit", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Root-space dimension of L = Σ a_i x^(q^i) over GF(q^n).
    Nullity {
        #[command(flatten)]
        field: FieldArgs,
        /// q-degree of L.
        #[arg(long)]
        d: usize,
        /// Coefficient codes as aI=code, comma separated; a_d defaults to 1.
        #[arg(long, default_value = "")]
        coeffs: String,
        #[arg(long, value_enum, default_value_t = NullityMethod::Fast)]
        method: NullityMethod,
    },
    /// All (a, b) for which x^(q^d) - b x^q - a x splits completely.
    Search {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        d: u32,
        #[arg(long, value_enum, default_value_t = Mode::Theorem)]
        mode: Mode,
        /// Worker threads (0: one per core).
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Exhaustively compare the split prediction with the computed nullity.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        part: u8,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: u32,
        /// Extension degrees, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u32>,
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// gcd of x^k ± 1 and x^l ± 1 over the integers.
    Gcd {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
        #[arg(long, value_enum, default_value_t = SignArg::Plus)]
        sign_k: SignArg,
        #[arg(long, value_enum, default_value_t = SignArg::Plus)]
        sign_l: SignArg,
        /// Also run polynomial Euclid and require agreement.
        #[arg(long)]
        oracle: bool,
    },
    /// Binomial coefficients modulo a prime.
    Binom {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
        /// Print C(n, i) mod p instead of the inner-binomial check.
        #[arg(long)]
        i: Option<u64>,
    },
    /// Exponents e1, e2 and the exponent lemma at n = d(d-1) + 1.
    Expos {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: u32,
    },
    /// Attack cost estimate for one parameter set.
    Qsp {
        #[command(flatten)]
        cost: CostArgs,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        m: u32,
    },
    /// Attack cost estimates over ranges of d and m, cheapest first.
    Scan {
        #[command(flatten)]
        cost: CostArgs,
        #[arg(long)]
        d_min: u32,
        #[arg(long)]
        d_max: u32,
        #[arg(long)]
        m_min: u32,
        #[arg(long)]
        m_max: u32,
    },
}

#[derive(clap::Args)]
struct FieldArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    s: u32,
    #[arg(long)]
    n: u32,
}

impl FieldArgs {
    fn build(&self) -> Result<FieldSpec, Failure> {
        Ok(make_field(self.p, self.s, self.n)?)
    }
}

#[derive(clap::Args)]
struct CostArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    n: u32,
    /// Ordinary degree of λ.
    #[arg(long)]
    deg_lambda: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum NullityMethod {
    Fast,
    Bruteforce,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Theorem,
    Exhaustive,
    Both,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Theorem => "theorem",
            Mode::Exhaustive => "exhaustive",
            Mode::Both => "both",
        }
    }
}

impl From<Mode> for EnumerationMode {
    fn from(mode: Mode) -> Self {
        match mode {
            Mode::Theorem => EnumerationMode::Theorem,
            Mode::Exhaustive => EnumerationMode::Exhaustive,
            Mode::Both => EnumerationMode::Both,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

impl From<SignArg> for Sign {
    fn from(sign: SignArg) -> Self {
        match sign {
            SignArg::Plus => Sign::Plus,
            SignArg::Minus => Sign::Minus,
        }
    }
}

enum Failure {
    Input(String),
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_invariant_violation() {
            Failure::Invariant(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

/// Text printed on success; an invariant message turns the run into exit 2 after printing.
struct Outcome {
    text: String,
    violation: Option<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, violation: None }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            match outcome.violation {
                Some(msg) => {
                    eprintln!("invariant violation: {msg}");
                    ExitCode::from(2)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("invariant violation: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Nullity {
            field,
            d,
            coeffs,
            method,
        } => nullity(cli.json, field, *d, coeffs, *method),
        Command::Search {
            field,
            d,
            mode,
            workers,
        } => search(cli.json, field, *d, *mode, *workers),
        Command::Verify {
            part,
            q,
            d,
            n,
            workers,
        } => verify(cli.json, *part, *q, *d, n, *workers),
        Command::Gcd {
            k,
            l,
            sign_k,
            sign_l,
            oracle,
        } => gcd(cli.json, *k, *l, (*sign_k).into(), (*sign_l).into(), *oracle),
        Command::Binom { n, p, i } => binom(cli.json, *n, *p, *i),
        Command::Expos { q, d } => expos(cli.json, *q, *d),
        Command::Qsp { cost, d, m } => qsp(cli.json, cost, *d, *m),
        Command::Scan {
            cost,
            d_min,
            d_max,
            m_min,
            m_max,
        } => scan(cli.json, cost, *d_min..=*d_max, *m_min..=*m_max),
    }
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}

/// Parses `a0=1,a2=5` into coefficient codes `[1, 0, 5, …]` of length `d + 1`.
fn parse_coeffs(spec: &str, d: usize) -> Result<Vec<u64>, Failure> {
    let mut codes = vec![0; d + 1];
    codes[d] = 1;
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let bad = || Failure::Input(format!("bad coefficient {item:?}; expected aI=code"));
        let (name, value) = item.split_once('=').ok_or_else(bad)?;
        let index: usize = name.trim().strip_prefix('a').ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let code: u64 = value.trim().parse().map_err(|_| bad())?;
        if index > d {
            return Err(Failure::Input(format!("coefficient a{index} above the q-degree {d}")));
        }
        codes[index] = code;
    }
    Ok(codes)
}

fn nullity(json: bool, field: &FieldArgs, d: usize, coeffs: &str, method: NullityMethod) -> Result<Outcome, Failure> {
    let spec = field.build()?;
    let codes = parse_coeffs(coeffs, d)?;
    let poly = LinearizedPoly::from_codes(&spec, &codes)?;
    if poly.degree() != d {
        return Err(Failure::Input(format!("a{d} must be nonzero")));
    }
    let (fast, brute) = match method {
        NullityMethod::Fast => (Some(poly.nullity_fast()), None),
        NullityMethod::Bruteforce => (None, Some(poly.nullity_bruteforce())),
        NullityMethod::Both => (Some(poly.nullity_fast()), Some(poly.nullity_bruteforce())),
    };
    let value = fast.or(brute).expect("one method ran");
    let violation = match (fast, brute) {
        (Some(f), Some(b)) if f != b => Some(format!("fast nullity {f} but brute-force nullity {b}")),
        _ => None,
    };
    let text = if json {
        to_json(&json!({
            "field": spec,
            "coeffs": poly.to_codes(),
            "nullity": value,
            "splits_completely": value == d,
        }))
    } else {
        format!("nullity {value}\n")
    };
    Ok(Outcome { text, violation })
}

#[derive(Serialize)]
struct SearchReport {
    p: u64,
    s: u32,
    n: u32,
    q: u64,
    d: u32,
    mode: &'static str,
    count: usize,
    pairs: Vec<PairCodes>,
}

#[derive(Serialize)]
struct PairCodes {
    a: u64,
    b: u64,
}

fn search(json: bool, field: &FieldArgs, d: u32, mode: Mode, workers: usize) -> Result<Outcome, Failure> {
    let spec = field.build()?;
    eprintln!("searching GF({}) with d = {d}", spec.order());
    let pairs = enumerate_splitting_with(&spec, d, mode.into(), &SweepConfig::with_workers(workers))?;
    let report = SearchReport {
        p: spec.p(),
        s: spec.s(),
        n: spec.n(),
        q: spec.q(),
        d,
        mode: mode.name(),
        count: pairs.len(),
        pairs: pairs
            .iter()
            .map(|(a, b)| PairCodes {
                a: spec.encode(a),
                b: spec.encode(b),
            })
            .collect(),
    };
    if json {
        return Ok(Outcome::ok(to_json(&report)));
    }
    let mut text = format!("{} pairs\n", report.count);
    if matches!(mode, Mode::Both) {
        text.push_str("modes agree\n");
    }
    for pair in &report.pairs {
        writeln!(text, "a={} b={}", pair.a, pair.b).unwrap();
    }
    Ok(Outcome::ok(text))
}

fn census_text(report: &TheoremReport) -> String {
    report
        .census
        .iter()
        .map(|(k, v)| format!("nullity_{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn verify(json: bool, part: u8, q: u64, d: u32, n_list: &[u32], workers: usize) -> Result<Outcome, Failure> {
    eprintln!("verifying part {part} for q = {q}, d = {d}");
    let reports = verify_theorem(part, q, d, n_list, &SweepConfig::with_workers(workers))?;
    let total: usize = reports.iter().map(|r| r.counterexamples.len()).sum();
    let violation = (total > 0).then(|| format!("{total} counterexamples"));
    if json {
        return Ok(Outcome {
            text: to_json(&reports),
            violation,
        });
    }
    let mut text = String::from("q\td\tn\tpart\tsplitting\tcounterexamples\tcensus\n");
    for r in &reports {
        writeln!(
            text,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.q,
            r.d,
            r.n,
            r.part,
            r.splitting_count,
            r.counterexamples.len(),
            census_text(r)
        )
        .unwrap();
        for c in &r.counterexamples {
            writeln!(text, "  n={} a={} b={} predicted={:?} nullity={}", r.n, c.a, c.b, c.predicted, c.nullity).unwrap();
        }
    }
    writeln!(text, "{total} counterexamples").unwrap();
    Ok(Outcome { text, violation })
}

fn sign_char(sign: Sign) -> &'static str {
    match sign {
        Sign::Plus => "+",
        Sign::Minus => "-",
    }
}

fn gcd_text(r: &GcdResult) -> String {
    if r.is_trivial {
        "1".to_string()
    } else {
        format!("x^{}{}1", r.g, sign_char(r.const_sign))
    }
}

fn gcd(json: bool, k: u32, l: u32, sign_k: Sign, sign_l: Sign, oracle: bool) -> Result<Outcome, Failure> {
    let a = SignedPowerPoly::new(k, sign_k)?;
    let b = SignedPowerPoly::new(l, sign_l)?;
    let result = gcd_power_polys(a, b);
    let checked = if oracle { Some(gcd_power_polys_oracle(a, b)?) } else { None };
    let violation = checked
        .filter(|c| *c != result)
        .map(|c| format!("closed form gives {} but Euclid gives {}", gcd_text(&result), gcd_text(&c)));
    let lhs = format!("x^{k}{}1", sign_char(sign_k));
    let rhs = format!("x^{l}{}1", sign_char(sign_l));
    let text = if json {
        to_json(&json!({
            "a": lhs,
            "b": rhs,
            "is_trivial": result.is_trivial,
            "g": result.g,
            "const_sign": sign_char(result.const_sign),
            "gcd": gcd_text(&result),
            "oracle_agrees": checked.map(|c| c == result),
        }))
    } else {
        let mut t = format!("gcd({lhs}, {rhs}) = {}\n", gcd_text(&result));
        if checked.is_some() && violation.is_none() {
            t.push_str("oracle agrees\n");
        }
        t
    };
    Ok(Outcome { text, violation })
}

fn binom(json: bool, n: u64, p: u64, i: Option<u64>) -> Result<Outcome, Failure> {
    if let Some(i) = i {
        let r = binom_mod(n, i, p)?;
        let text = if json {
            to_json(&json!({"n": n, "i": i, "p": p, "residue": r}))
        } else {
            format!("C({n}, {i}) mod {p} = {r}\n")
        };
        return Ok(Outcome::ok(text));
    }
    let inner = all_inner_binoms_zero(n, p)?;
    let power = is_power_of(n, p);
    let violation = (inner != power).then(|| format!("inner binomials {inner} but power of p {power}"));
    let text = if json {
        to_json(&json!({"n": n, "p": p, "all_inner_binoms_zero": inner, "is_power_of": power}))
    } else {
        format!("all_inner_binoms_zero {inner}\nis_power_of {power}\n")
    };
    Ok(Outcome { text, violation })
}

fn expos(json: bool, q: u64, d: u32) -> Result<Outcome, Failure> {
    let ExponentPair { e1, e2 } = ExponentPair::new(q, d)?;
    let n = d * (d - 1) + 1;
    let divides = expos_divisibility(q, d)?;
    let coverage = exponent_coverage(d);
    let violation = (!(divides && coverage)).then(|| format!("exponent lemma fails at q = {q}, d = {d}"));
    let text = if json {
        to_json(&json!({
            "q": q,
            "d": d,
            "n": n,
            "e1": e1.to_string(),
            "e2": e2.to_string(),
            "divisibility": divides,
            "coverage": coverage,
        }))
    } else {
        format!("n {n}\ne1 {e1}\ne2 {e2}\ndivisibility {divides}\ncoverage {coverage}\n")
    };
    Ok(Outcome { text, violation })
}

fn qsp(json: bool, cost: &CostArgs, d: u32, m: u32) -> Result<Outcome, Failure> {
    let params = QspParams::new(cost.q, cost.n, d, cost.deg_lambda, m)?;
    let est = complexity_log2(&params);
    let text = if json {
        to_json(&json!({"params": params, "estimate": est, "note": POLYLOG_NOTE}))
    } else {
        format!(
            "log2_relation {:.6}\nlog2_linalg {:.6}\nlog2_total {:.6}\nlog2_inner_factor {:.6}\nbeats_generic {}\nbeats_bruteforce {}\n({POLYLOG_NOTE})\n",
            est.log2_relation_term,
            est.log2_linear_algebra_term,
            est.log2_total,
            est.log2_inner_factor,
            est.beats_generic,
            est.beats_bruteforce
        )
    };
    Ok(Outcome::ok(text))
}

fn scan(
    json: bool,
    cost: &CostArgs,
    d_range: std::ops::RangeInclusive<u32>,
    m_range: std::ops::RangeInclusive<u32>,
) -> Result<Outcome, Failure> {
    let rows = scan_parameters(cost.q, cost.n, d_range, m_range, cost.deg_lambda)?;
    let text = if json { to_json(&rows) } else { scan_to_tsv(&rows) };
    Ok(Outcome::ok(text))
}
