use std::fmt::Write as _;
use std::fs;
use std::io::Write;

use qows_core::io::{
    census_to_json, format_attack_trace, format_census, format_leaders, format_qstring,
    format_qstring_compact, format_quasigroup, parse_leaders, parse_qstring, parse_quasigroup,
    render_iterations, PixmapFormat,
};
use qows_core::{
    apply_leader_sequence, attack_r1, attack_r2, attack_rn, brute_preimages, census_order4,
    classify, e_inverse, e_transform, order4_by_index, permutation_search, preimage_histogram, r1,
    r2, r_n, random_latin, AttackOptions, Budget, ClassifierSettings, LeaderSymbol, OwfSpec,
    QString, Quasigroup, SearchSettings, Symbol,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{
    BenchAttack, Cli, Command, Method, PeriodArgs, QuasigroupArg, SearchArgs, TransformFn,
};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(qows_core::Error),
    Io(String, std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Domain(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{path}: {e}"),
        }
    }
}

impl From<qows_core::Error> for CliError {
    fn from(e: qows_core::Error) -> Self {
        CliError::Domain(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub fn run(cli: &Cli) -> Result<()> {
    let bytes = match cli.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w as usize)
            .build()
            .expect("thread pool")
            .install(|| dispatch(cli))?,
        None => dispatch(cli)?,
    };
    match &cli.out {
        Some(path) => {
            fs::write(path, bytes).map_err(|e| CliError::Io(path.display().to_string(), e))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(&bytes)
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io("stdout".into(), e))
        }
    }
}

/// `# key value` lines shared by every report.
struct Header(String);

impl Header {
    fn new(cli: &Cli, command: &str) -> Self {
        let mut h = Header(String::new());
        h.add("command", command);
        h.add("seed", cli.seed);
        h.add("budget", cli.budget);
        h
    }

    fn add(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        writeln!(self.0, "# {key} {value}").unwrap();
        self
    }

    fn quasigroup(&mut self, src: &Source) -> &mut Self {
        self.add("quasigroup", &src.label);
        self.add("order", src.q.order())
    }
}

struct Source {
    q: Quasigroup,
    label: String,
}

fn load(arg: &QuasigroupArg) -> Result<Source> {
    if let Some(k) = arg.index {
        let q = order4_by_index(k).ok_or_else(|| {
            CliError::Usage(format!("--index must be between 1 and 576, got {k}"))
        })?;
        return Ok(Source {
            q: q.clone(),
            label: format!("#{k}"),
        });
    }
    let path = arg.quasigroup.as_ref().expect("clap requires one source");
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    Ok(Source {
        q: parse_quasigroup(&text)?,
        label: path.display().to_string(),
    })
}

fn motif(order: usize, text: &str) -> Result<QString> {
    Ok(parse_qstring(order, text)?)
}

fn classifier_settings(
    cli: &Cli,
    search: &SearchArgs,
    period: &PeriodArgs,
) -> Result<ClassifierSettings> {
    let motif: Vec<Symbol> = period
        .motif
        .trim()
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| c.to_digit(10).map(|d| d as Symbol))
        .collect::<Option<_>>()
        .ok_or_else(|| CliError::Usage(format!("invalid motif `{}`", period.motif)))?;
    Ok(ClassifierSettings {
        alpha: period.alpha,
        iterations: period.iterations,
        width: period.width,
        motif,
        leaders: period.leader.map(|l| vec![l]),
        search: SearchSettings {
            n: search.n,
            max_len: search.max_leader_len,
            alphabet: search.alphabet,
            budget: Budget(cli.budget),
        },
    })
}

fn search_header(h: &mut Header, s: &ClassifierSettings) {
    h.add("n", s.search.n)
        .add("max_leader_len", s.search.max_len)
        .add("alphabet", s.search.alphabet.name())
        .add("alpha", s.alpha)
        .add("iterations", s.iterations)
        .add("width", s.width)
        .add(
            "motif",
            s.motif.iter().map(|v| v.to_string()).collect::<String>(),
        )
        .add(
            "period_leaders",
            s.leaders.as_ref().map_or("all".to_string(), |l| {
                l.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            }),
        );
}

fn dispatch(cli: &Cli) -> Result<Vec<u8>> {
    let budget = Budget(cli.budget);
    match &cli.command {
        Command::Transform {
            q,
            func,
            input,
            leader,
            leaders,
        } => {
            let src = load(q)?;
            let q = &src.q;
            let a = parse_qstring(q.order(), input)?;
            let need_leader = || {
                leader
                    .ok_or_else(|| CliError::Usage("--leader is required for this function".into()))
            };
            let b = match func {
                TransformFn::E => e_transform(q, need_leader()?, &a)?,
                TransformFn::Einv => e_inverse(q, need_leader()?, &a)?,
                TransformFn::Seq => {
                    let seq = parse_leaders(leaders)?
                        .iter()
                        .map(|l| match *l {
                            LeaderSymbol::Const(c) => Ok(c),
                            LeaderSymbol::Index(_) => {
                                Err(CliError::Usage("--fn E takes constant leaders only".into()))
                            }
                        })
                        .collect::<Result<Vec<_>>>()?;
                    apply_leader_sequence(q, &seq, &a)?
                }
                TransformFn::R1 => r1(q, &a)?,
                TransformFn::R2 => r2(q, &a)?,
                TransformFn::Rn => {
                    let spec = OwfSpec::new(q.clone(), a.len(), parse_leaders(leaders)?)?;
                    r_n(&spec, &a)?
                }
            };
            Ok(format!("{}\n", format_qstring_compact(&b)).into_bytes())
        }

        Command::Invert {
            q,
            method,
            n,
            leaders,
            output_value,
            output,
            first_hit,
        } => {
            let src = load(q)?;
            let s = src.q.order();
            let b = match (output, output_value) {
                (Some(text), _) => parse_qstring(s, text)?,
                (None, Some(v)) => {
                    let n =
                        n.ok_or_else(|| CliError::Usage("--output-value requires --N".into()))?;
                    QString::from_index(s, n, *v)?
                }
                (None, None) => unreachable!("clap requires an output"),
            };
            if let Some(n) = n {
                if *n != b.len() {
                    return Err(CliError::Usage(format!(
                        "--N {n} does not match the output length {}",
                        b.len()
                    )));
                }
            }
            let leaders = parse_leaders(leaders)?;
            if !leaders.is_empty() && matches!(method, Method::AttackR1 | Method::AttackR2) {
                return Err(CliError::Usage(
                    "--leaders applies to brute and attack-rn only".into(),
                ));
            }
            let opts = AttackOptions {
                first_hit: *first_hit,
                budget,
            };
            let trace = match method {
                Method::Brute => brute_preimages(
                    &OwfSpec::new(src.q.clone(), b.len(), leaders.clone())?,
                    &b,
                    budget,
                )?,
                Method::AttackR1 => attack_r1(&src.q, &b, opts)?,
                Method::AttackR2 => attack_r2(&src.q, &b, opts)?,
                Method::AttackRn => attack_rn(
                    &OwfSpec::new(src.q.clone(), b.len(), leaders.clone())?,
                    &b,
                    opts,
                )?,
            };
            let mut h = Header::new(cli, "invert");
            h.quasigroup(&src)
                .add("method", value_name(*method))
                .add("n", b.len())
                .add("leaders", format_leaders(&leaders))
                .add("output", format_qstring(&b))
                .add("output_value", b.to_index())
                .add("first_hit", first_hit);
            let mut out = h.0;
            out.push_str(&format_attack_trace(&trace));
            Ok(out.into_bytes())
        }

        Command::Histogram {
            q,
            n,
            leaders,
            summary,
        } => {
            let src = load(q)?;
            let leaders = parse_leaders(leaders)?;
            let spec = OwfSpec::new(src.q.clone(), *n, leaders.clone())?;
            let hist = preimage_histogram(&spec, budget)?;
            let mut h = Header::new(cli, "histogram");
            h.quasigroup(&src)
                .add("n", n)
                .add("leaders", format_leaders(&leaders));
            let mut out = h.0;
            writeln!(out, "domain_size {}", hist.domain_size).unwrap();
            writeln!(out, "image_size {}", hist.image_size()).unwrap();
            writeln!(out, "permutation {}", hist.is_permutation()).unwrap();
            writeln!(out, "regular {}", hist.is_regular()).unwrap();
            let dist: Vec<String> = hist
                .count_distribution()
                .iter()
                .map(|(c, k)| format!("{c}:{k}"))
                .collect();
            writeln!(out, "distribution {}", dist.join(" ")).unwrap();
            if !summary {
                for (v, c) in hist.counts.iter().enumerate() {
                    writeln!(out, "{v} {c}").unwrap();
                }
            }
            Ok(out.into_bytes())
        }

        Command::Search { q, search } => {
            let src = load(q)?;
            let w = permutation_search(
                &src.q,
                search.n,
                search.max_leader_len,
                search.alphabet,
                budget,
            )?;
            let mut h = Header::new(cli, "search");
            h.quasigroup(&src)
                .add("n", search.n)
                .add("max_leader_len", search.max_leader_len)
                .add("alphabet", search.alphabet.name());
            let mut out = h.0;
            writeln!(
                out,
                "witness {}",
                w.as_ref().map_or("-".to_string(), format_leaders)
            )
            .unwrap();
            Ok(out.into_bytes())
        }

        Command::Census {
            search,
            period,
            json,
        } => {
            let settings = classifier_settings(cli, search, period)?;
            let report = census_order4(&settings)?;
            if *json {
                return Ok(census_to_json(&report).into_bytes());
            }
            // the report carries its own parameter block
            let mut out = format!("# command census\n# seed {}\n", cli.seed);
            out.push_str(&format_census(&report));
            Ok(out.into_bytes())
        }

        Command::Classify { q, search, period } => {
            let src = load(q)?;
            let settings = classifier_settings(cli, search, period)?;
            let c = classify(&src.q, &settings)?;
            let mut h = Header::new(cli, "classify");
            h.quasigroup(&src);
            search_header(&mut h, &settings);
            h.add("threshold", settings.threshold());
            let mut out = h.0;
            writeln!(out, "label {}", c.label).unwrap();
            writeln!(out, "period_at_k {}", c.period_at_k()).unwrap();
            writeln!(out, "profile_leader {}", c.profile_leader).unwrap();
            let finals: Vec<String> = c
                .final_periods
                .iter()
                .map(|(l, p)| format!("{l}:{p}"))
                .collect();
            writeln!(out, "final_periods {}", finals.join(" ")).unwrap();
            writeln!(
                out,
                "witness {}",
                c.permutation_witness
                    .as_ref()
                    .map_or("-".to_string(), format_leaders)
            )
            .unwrap();
            writeln!(out, "search_label {}", c.search_label()).unwrap();
            writeln!(out, "criteria_agree {}", c.criteria_agree()).unwrap();
            writeln!(out, "# iteration period capped").unwrap();
            for s in &c.period_profile {
                writeln!(out, "{} {} {}", s.iteration, s.period, s.capped).unwrap();
            }
            Ok(out.into_bytes())
        }

        Command::Render {
            q,
            leader,
            motif: m,
            width,
            iterations,
            text,
        } => {
            let src = load(q)?;
            let m = motif(src.q.order(), m)?;
            let format = if *text {
                PixmapFormat::Text
            } else {
                PixmapFormat::Binary
            };
            Ok(render_iterations(
                &src.q,
                *leader,
                &m,
                *width,
                *iterations,
                format,
            )?)
        }

        Command::Gen { order } => {
            if !(1..=256).contains(order) {
                return Err(CliError::Usage(format!(
                    "--order must be between 1 and 256, got {order}"
                )));
            }
            let q = random_latin(*order, cli.seed);
            let mut h = Header::new(cli, "gen");
            let mut out = h.add("order", order).0.clone();
            out.push_str(&format_quasigroup(&q));
            Ok(out.into_bytes())
        }

        Command::Bench {
            attack,
            n,
            samples,
            first_hit,
        } => bench(cli, *attack, *n, *samples, *first_hit),
    }
}

fn value_name(v: impl clap::ValueEnum) -> String {
    v.to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string()
}

fn median(v: &mut [u64]) -> u64 {
    v.sort_unstable();
    if v.is_empty() {
        0
    } else {
        v[(v.len() - 1) / 2]
    }
}

fn bench(
    cli: &Cli,
    attack: BenchAttack,
    n: usize,
    samples: usize,
    first_hit: bool,
) -> Result<Vec<u8>> {
    if n == 0 {
        return Err(CliError::Usage("--N must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let opts = AttackOptions {
        first_hit,
        budget: Budget(cli.budget),
    };
    let mut h = Header::new(cli, "bench");
    h.add("attack", value_name(attack))
        .add("n", n)
        .add("samples", samples)
        .add("first_hit", first_hit)
        .add("bound", 4 * 4u64.pow((n / 3) as u32));
    let mut out = h.0;
    writeln!(
        out,
        "# sample quasigroup_seed input guesses lookups preimages"
    )
    .unwrap();
    let mut guesses = Vec::with_capacity(samples);
    for i in 0..samples {
        let (qseed, q) = loop {
            let qseed: u64 = rng.gen();
            let q = random_latin(4, qseed);
            if q.algebraic_probe().is_unstructured() {
                break (qseed, q);
            }
        };
        let a = QString::new(4, (0..n).map(|_| rng.gen_range(0..4)).collect())?;
        let t = match attack {
            BenchAttack::R1 => attack_r1(&q, &r1(&q, &a)?, opts)?,
            BenchAttack::R2 => attack_r2(&q, &r2(&q, &a)?, opts)?,
        };
        if !first_hit && !t.preimages.contains(&a) {
            return Err(CliError::Domain(qows_core::Error::InvalidParameter(
                format!("sample {i}: attack missed the planted input"),
            )));
        }
        writeln!(
            out,
            "{i} {qseed} {} {} {} {}",
            format_qstring_compact(&a),
            t.guesses,
            t.lookups,
            t.preimages.len()
        )
        .unwrap();
        guesses.push(t.guesses);
    }
    let max = guesses.iter().copied().max().unwrap_or(0);
    writeln!(out, "median_guesses {}", median(&mut guesses)).unwrap();
    writeln!(out, "max_guesses {max}").unwrap();
    Ok(out.into_bytes())
}
