use std::path::PathBuf;
use std::process::ExitCode;

use bqf_core::cumulants::{cumulants_from_moments, moments_from_cumulants};
use bqf_core::matrix::{
    h_series_qf, independence_check, qf_cumulant_iid, qf_oracle_comparison, trace_j_power, zero_sum_checks,
};
use bqf_core::measure::{
    self, levy_atoms, levy_partial_sum_with, moment_consistency, self_energy_eval_with, stieltjes_surrogate,
    tangent_atoms, tangent_convergence, zeta_zigzag_approx, ApproxKind,
};
use bqf_core::partitions::enumerate_interval;
use bqf_core::rational::parse_rational;
use bqf_core::statistics::{
    sample_variance_cumulant, shifted_sos_cumulant, symmetrized_square_cumulant, LinearFormSpec, ShiftVector,
};
use bqf_core::{CumulantSequence, Distribution, Family, HermitianMatrix, Rational};
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod output;

use output::{Cell, Format, Output};

#[derive(Parser, Debug)]
#[command(name = "bqf", version)]
#[command(about = "Exact Boolean cumulants of quadratic forms and the Boolean tangent law")]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Seed for sampled inputs
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Interval partitions
    #[command(subcommand)]
    Partitions(PartitionsCmd),
    /// Cumulants of quadratic forms and sequence conversions
    #[command(subcommand)]
    Cumulants(CumulantsCmd),
    /// Matrix conditions
    #[command(subcommand)]
    Matrix(MatrixCmd),
    /// Statistics built from quadratic forms
    #[command(subcommand)]
    Stats(StatsCmd),
    /// Convergence to the generalized tangent law
    #[command(subcommand)]
    Limit(LimitCmd),
    /// Trace approximations of zeta values, tangent and zigzag numbers
    Approx {
        #[arg(value_parser = parse_kind)]
        kind: ApproxKind,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [100])]
        n: Vec<usize>,
    },
    /// Atomic measures of the tangent law and its Lévy measure
    #[command(subcommand)]
    Measure(MeasureCmd),
}

#[derive(Subcommand, Debug)]
enum PartitionsCmd {
    /// List I(n) in mask order
    Enumerate {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args, Debug)]
struct QfArgs {
    /// Matrix file
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long)]
    order: usize,
}

#[derive(Subcommand, Debug)]
enum CumulantsCmd {
    /// K_1..K_R of the quadratic form
    Qf {
        #[command(flatten)]
        qf: QfArgs,
        #[arg(long, value_parser = parse_dist)]
        dist: Distribution,
    },
    /// Compare the tuple sum against brute-force expansion; without --dist a sequence is drawn from --seed
    OracleCheck {
        #[command(flatten)]
        qf: QfArgs,
        #[arg(long, value_parser = parse_dist)]
        dist: Option<Distribution>,
    },
    /// Moments from --dist, or cumulants from --moments
    Convert {
        #[arg(long, value_parser = parse_dist, conflicts_with = "moments", required_unless_present = "moments")]
        dist: Option<Distribution>,
        #[arg(long, value_delimiter = ',', value_parser = parse_rat, allow_hyphen_values = true)]
        moments: Option<Vec<Rational>>,
        /// Defaults to the number of moments given
        #[arg(long)]
        order: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum MatrixCmd {
    /// Zero-sum conditions and Tr(J A^k) for k ≤ 2n
    Check {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// J A^k B = J B^k A = 0 scan
    Independence {
        /// Two matrix files
        #[arg(long, num_args = 1, required = true)]
        matrix: Vec<PathBuf>,
        #[arg(long)]
        k: Option<usize>,
    },
    /// H-transform of the quadratic form in standard normal variables
    HSeries {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        order: usize,
    },
}

#[derive(Subcommand, Debug)]
enum StatsCmd {
    /// Cumulants of Σ (X_i − X̄)²
    SampleVariance {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_dist)]
        dist: Distribution,
        #[arg(long)]
        order: usize,
    },
    /// Cumulants of Σ (X_i + a_i)² by expansion
    ShiftedSos {
        #[arg(long, value_delimiter = ',', value_parser = parse_rat, allow_hyphen_values = true, required = true)]
        shifts: Vec<Rational>,
        #[arg(long, value_parser = parse_dist, default_value = "gaussian:c=0,v=1")]
        dist: Distribution,
        #[arg(long)]
        order: usize,
    },
    /// Cumulants of Σ_σ L_σ² for a centered linear form
    Symmetrized {
        #[arg(long, value_delimiter = ',', value_parser = parse_rat, allow_hyphen_values = true, required = true)]
        weights: Vec<Rational>,
        #[arg(long, value_parser = parse_dist)]
        dist: Distribution,
        #[arg(long)]
        order: usize,
    },
}

#[derive(Subcommand, Debug)]
enum LimitCmd {
    /// Finite-n cumulants of aP_n + bB_n against the limit
    Tangent {
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        a: Rational,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        b: Rational,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long)]
        order: usize,
    },
}

#[derive(Subcommand, Debug)]
enum MeasureCmd {
    /// Tangent-law atoms
    Atoms {
        #[arg(long, default_value_t = 100)]
        pairs: usize,
    },
    /// Lévy measure atoms, or partial sums against the self-energy at --z
    Levy {
        #[arg(long, default_value_t = 1000)]
        terms: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        z: Vec<f64>,
        #[arg(long, default_value_t = measure::ATOM_GUARD)]
        atom_guard: f64,
        #[arg(long, default_value_t = measure::POLE_GUARD)]
        pole_guard: f64,
    },
    /// Atom moments against the exact moment series
    Moments {
        #[arg(long, default_value_t = 100)]
        pairs: usize,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
}

fn parse_rat(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_dist(s: &str) -> Result<Distribution, String> {
    s.parse().map_err(|e: bqf_core::Error| e.to_string())
}

fn parse_kind(s: &str) -> Result<ApproxKind, String> {
    s.parse().map_err(|e: bqf_core::Error| e.to_string())
}

type Run = Result<Output, String>;

fn err(e: bqf_core::Error) -> String {
    e.to_string()
}

fn load(path: &PathBuf) -> Result<HermitianMatrix, String> {
    HermitianMatrix::load(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn sequence(dist: &Distribution, order: usize) -> Result<CumulantSequence, String> {
    dist.cumulants(order).map_err(err)
}

fn sampled(seed: u64, order: usize) -> Distribution {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..order).map(|_| Rational::new(rng.gen_range(-6..=6).into(), rng.gen_range(1..=4).into()));
    Distribution::Custom(values.collect())
}

fn cumulant_table(order: usize, value: impl Fn(usize) -> Result<Rational, bqf_core::Error>) -> Run {
    let mut out = Output::new("cumulants", &["r", "value"]);
    for r in 1..=order {
        out.row(vec![Cell::int(r), Cell::Rat(value(r).map_err(err)?)]);
    }
    Ok(out)
}

fn run(cli: &Cli) -> Run {
    match &cli.command {
        Command::Partitions(PartitionsCmd::Enumerate { n }) => {
            let all = enumerate_interval(*n).map_err(err)?;
            let mut out = Output::new("partitions", &["index", "blocks", "cuts", "num_blocks"])
                .meta("n", Cell::int(*n))
                .meta("count", Cell::int(all.len()));
            for (i, p) in all.iter().enumerate() {
                let cuts = p.cuts().iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
                out.row(vec![Cell::int(i), Cell::Text(p.to_string()), Cell::Text(cuts), Cell::int(p.num_blocks())]);
            }
            Ok(out)
        }
        Command::Cumulants(CumulantsCmd::Qf { qf, dist }) => {
            let a = load(&qf.matrix)?;
            let k = sequence(dist, 2 * qf.order)?;
            let mut out = Output::new("cumulants", &["r", "value", "nonzero_terms"])
                .meta("n", Cell::int(a.n()))
                .meta("dist", Cell::Text(dist.to_string()));
            for r in 1..=qf.order {
                let report = qf_cumulant_iid(&a, &k, r).map_err(err)?;
                let nonzero = report.nonzero_contributions().len();
                out.row(vec![Cell::int(r), Cell::Rat(report.value), Cell::int(nonzero)]);
            }
            Ok(out)
        }
        Command::Cumulants(CumulantsCmd::OracleCheck { qf, dist }) => {
            let a = load(&qf.matrix)?;
            let dist = dist.clone().unwrap_or_else(|| sampled(cli.seed, 2 * qf.order));
            let k = sequence(&dist, 2 * qf.order)?;
            let cmp = qf_oracle_comparison(&a, &k, qf.order).map_err(err)?;
            let mut out = Output::new("cumulants", &["r", "engine", "oracle", "agree"])
                .meta("n", Cell::int(a.n()))
                .meta("dist", Cell::Text(dist.to_string()))
                .meta("agree", Cell::Bool(cmp.agree()));
            for (r, (e, o)) in cmp.engine.iter().zip(&cmp.oracle).enumerate() {
                out.row(vec![Cell::int(r + 1), Cell::Rat(e.clone()), Cell::Rat(o.clone()), Cell::Bool(e == o)]);
            }
            if cmp.agree() {
                Ok(out)
            } else {
                Err(format!("tuple sum and expansion oracle disagree\n{}", out.render(Format::Plain)))
            }
        }
        Command::Cumulants(CumulantsCmd::Convert { dist, moments, order }) => {
            let mut out = Output::new("sequence", &["k", "cumulant", "moment"]);
            let (cumulants, moments) = match (dist, moments) {
                (Some(d), _) => {
                    let order = order.ok_or("--order is required with --dist")?;
                    let k = sequence(d, order)?;
                    let m = moments_from_cumulants(&k, order).map_err(err)?;
                    out = out.meta("dist", Cell::Text(d.to_string()));
                    (k.values().to_vec(), m)
                }
                (None, Some(m)) => {
                    let order = order.unwrap_or(m.len());
                    let k = cumulants_from_moments(m, order).map_err(err)?;
                    (k.values().to_vec(), m[..order].to_vec())
                }
                (None, None) => unreachable!("clap requires one of --dist, --moments"),
            };
            for (i, (k, m)) in cumulants.into_iter().zip(moments).enumerate() {
                out.row(vec![Cell::int(i + 1), Cell::Rat(k), Cell::Rat(m)]);
            }
            Ok(out)
        }
        Command::Matrix(MatrixCmd::Check { matrix }) => {
            let a = load(matrix)?;
            let report = zero_sum_checks(&a);
            let mut out = Output::new("traces", &["k", "tr_ja_k"])
                .meta("n", Cell::int(a.n()))
                .meta("zero_row_sum", Cell::Bool(report.is_zero_row_sum))
                .meta("tr_ja2_zero", Cell::Bool(report.tr_ja2_zero))
                .meta("tr_jak_zero_upto_2n", Cell::Bool(report.tr_jak_zero_upto_2n))
                .meta("conditions_agree", Cell::Bool(report.conditions_agree()))
                .meta("constant_diagonal", Cell::Bool(report.constant_diagonal));
            for k in 0..=2 * a.n() {
                out.row(vec![Cell::int(k), Cell::Rat(trace_j_power(&a, k).map_err(err)?)]);
            }
            Ok(out)
        }
        Command::Matrix(MatrixCmd::Independence { matrix, k }) => {
            let [pa, pb] = matrix.as_slice() else {
                return Err(format!("independence takes exactly two --matrix files, got {}", matrix.len()));
            };
            let (a, b) = (load(pa)?, load(pb)?);
            let report = independence_check(&a, &b, *k).map_err(err)?;
            let (wk, side) = match report.witness {
                Some((wk, side)) => (Cell::int(wk), Cell::Text(side.to_string())),
                None => (Cell::Text(String::new()), Cell::Text(String::new())),
            };
            Ok(Output::new("witness", &[])
                .meta("independent", Cell::Bool(report.independent))
                .meta("k_max", Cell::int(report.k_max))
                .meta("witness_k", wk)
                .meta("witness_product", side))
        }
        Command::Matrix(MatrixCmd::HSeries { matrix, order }) => {
            let a = load(matrix)?;
            let h = h_series_qf(&a, *order).map_err(err)?;
            let mut out = Output::new("coefficients", &["k", "value"]).meta("n", Cell::int(a.n()));
            for (k, c) in h.coeffs().iter().enumerate().skip(1) {
                out.row(vec![Cell::int(k), Cell::Rat(c.clone())]);
            }
            Ok(out)
        }
        Command::Stats(StatsCmd::SampleVariance { n, dist, order }) => {
            let k = sequence(dist, 2 * order)?;
            Ok(cumulant_table(*order, |r| sample_variance_cumulant(*n, &k, r))?
                .meta("n", Cell::int(*n))
                .meta("dist", Cell::Text(dist.to_string())))
        }
        Command::Stats(StatsCmd::ShiftedSos { shifts, dist, order }) => {
            let a = ShiftVector::new(shifts.clone()).map_err(err)?;
            let family = Family::iid(a.n(), &sequence(dist, 2 * order)?);
            Ok(cumulant_table(*order, |r| shifted_sos_cumulant(&a, &family, r))?
                .meta("s", Cell::Rat(a.s().clone()))
                .meta("dist", Cell::Text(dist.to_string())))
        }
        Command::Stats(StatsCmd::Symmetrized { weights, dist, order }) => {
            let w = LinearFormSpec::new(weights.clone()).map_err(err)?;
            let k = sequence(dist, 2 * order)?;
            Ok(cumulant_table(*order, |r| symmetrized_square_cumulant(&w, &k, r))?
                .meta("n", Cell::int(w.n()))
                .meta("dist", Cell::Text(dist.to_string())))
        }
        Command::Limit(LimitCmd::Tangent { a, b, n, order }) => {
            let rows = tangent_convergence(a, b, n, *order).map_err(err)?;
            let mut out =
                Output::new("rows", &["n", "r", "finite", "limit", "abs_error", "finite_exact", "limit_exact"])
                    .meta("a", Cell::Rat(a.clone()))
                    .meta("b", Cell::Rat(b.clone()))
                    .csv(measure::convergence_csv(&rows));
            for row in rows {
                let s = &row.finite_exact;
                let surd = match s.as_rational() {
                    Some(v) => bqf_core::rational::format_rational(&v),
                    None => format!(
                        "{} + {}*sqrt({})",
                        bqf_core::rational::format_rational(&s.rational),
                        bqf_core::rational::format_rational(&s.sqrt_coeff),
                        bqf_core::rational::format_rational(&s.radicand)
                    ),
                };
                out.row(vec![
                    Cell::int(row.n),
                    Cell::int(row.r),
                    Cell::Float(row.finite),
                    Cell::Float(row.limit),
                    Cell::Float(row.abs_error),
                    Cell::Text(surd),
                    Cell::Rat(row.limit_exact),
                ]);
            }
            Ok(out)
        }
        Command::Approx { kind, k, n } => {
            let mut out = Output::new("rows", &["n", "trace", "approx", "target", "rel_error"])
                .meta("kind", Cell::Text(format!("{kind:?}").to_lowercase()))
                .meta("k", Cell::int(*k));
            for &size in n {
                let res = zeta_zigzag_approx(*kind, *k, size).map_err(err)?;
                out.row(vec![
                    Cell::int(size),
                    Cell::Rat(res.trace),
                    Cell::Float(res.approx),
                    Cell::Float(res.target),
                    Cell::Float(res.rel_error),
                ]);
            }
            Ok(out)
        }
        Command::Measure(MeasureCmd::Atoms { pairs }) => {
            let mu = tangent_atoms(*pairs).map_err(err)?;
            let stieltjes = stieltjes_surrogate(&mu);
            let mut out = Output::new("atoms", &["location", "mass"])
                .meta("pairs", Cell::int(*pairs))
                .meta("total_mass", Cell::Float(mu.total_mass()))
                .meta("stieltjes_surrogate_passed", Cell::Bool(stieltjes.passed))
                .csv(mu.to_csv());
            for &(x, m) in mu.atoms() {
                out.row(vec![Cell::Float(x), Cell::Float(m)]);
            }
            Ok(out)
        }
        Command::Measure(MeasureCmd::Levy { terms, z, atom_guard, pole_guard }) => {
            if z.is_empty() {
                let mu = levy_atoms(*terms).map_err(err)?;
                let mut out = Output::new("atoms", &["location", "mass"])
                    .meta("terms", Cell::int(*terms))
                    .meta("total_mass", Cell::Float(mu.total_mass()))
                    .csv(mu.to_csv());
                for &(x, m) in mu.atoms() {
                    out.row(vec![Cell::Float(x), Cell::Float(m)]);
                }
                return Ok(out);
            }
            let mut out =
                Output::new("rows", &["z", "levy_sum", "self_energy", "abs_error"]).meta("terms", Cell::int(*terms));
            for &point in z {
                let sum = levy_partial_sum_with(point, *terms, *atom_guard).map_err(err)?;
                let exact = self_energy_eval_with(point, *pole_guard).map_err(err)?;
                out.row(vec![
                    Cell::Float(point),
                    Cell::Float(sum),
                    Cell::Float(exact),
                    Cell::Float((sum - exact).abs()),
                ]);
            }
            Ok(out)
        }
        Command::Measure(MeasureCmd::Moments { pairs, order }) => {
            let mu = tangent_atoms(*pairs).map_err(err)?;
            let rows = moment_consistency(&mu, *order).map_err(err)?;
            let mut out = Output::new("moments", &["m", "atom_moment", "series_moment", "error"])
                .meta("pairs", Cell::int(*pairs));
            for row in rows {
                out.row(vec![
                    Cell::int(row.m),
                    Cell::Float(row.atom_moment),
                    Cell::Float(row.series_moment),
                    Cell::Float(row.error),
                ]);
            }
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.render(cli.format));
            ExitCode::SUCCESS
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
