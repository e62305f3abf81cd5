use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use parahiggs::algebra::{parse_rational, ProjPoint, Rational};
use parahiggs::assembly::{self, assembly_kit, glue, wall_cross};
use parahiggs::higgs::{canonical_representative, kernel_line, MarkedPoints, RepSpec, Splitting};
use parahiggs::io;
use parahiggs::label::{ComponentLabel, Partition};
use parahiggs::polytope::{
    classify, wall_crossing_graph, wall_list, Chamber, Classification, Parity, Wall, WeightVector,
};
use parahiggs::stability::{
    component_label, destabilizing_search, predicted_stability, stratum_label,
};
use parahiggs::verify::{self, VerifyConfig};

#[derive(Parser)]
#[command(
    name = "parahiggs",
    version,
    about = "Stability, chambers and nilpotent-cone assembly for rank-2 parabolic Higgs bundles on P1 with four marks"
)]
struct Cli {
    /// Position of the first marked point, as p/q; the others sit at 0, 1, ∞.
    #[arg(long, global = true, env = "HIGGS_Z1", default_value = "2")]
    z1: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Cmd {
    /// Locate a weight vector in the wall arrangement.
    Classify {
        /// Four rationals, e.g. 1/10,2/10,3/10,5/10.
        #[arg(long)]
        beta: String,
        #[arg(long)]
        parity: Parity,
    },
    /// List the canonical walls with their aliases and S-equivalence data.
    Walls {
        #[arg(long)]
        parity: Parity,
    },
    /// The wall-crossing graph.
    Graph {
        #[arg(long)]
        parity: Parity,
    },
    /// Oracle verdict for a model point, next to the predicted one.
    Stability {
        /// QPH JSON file, or - for stdin.
        #[arg(long)]
        input: String,
        #[arg(long)]
        beta: String,
    },
    /// The invariant line of a nilpotent field.
    KernelLine {
        #[arg(long)]
        input: String,
    },
    /// Assembly kit, D4 configuration, HN strata, fixed loci and Hitchin sections of a chamber.
    Kit {
        #[arg(long)]
        chamber: Chamber,
    },
    /// What crossing from one chamber into an adjacent one exchanges.
    Cross {
        #[arg(long)]
        from: Chamber,
        #[arg(long)]
        to: Chamber,
    },
    /// Canonical representative of a family, as QPH JSON.
    Representative {
        /// Component label such as L{1,2} or K{} (block families).
        #[arg(long, conflicts_with = "partition")]
        label: Option<String>,
        /// Splitting as m1,m2.
        #[arg(long)]
        splitting: String,
        /// Point inside the family, as [a:b].
        #[arg(long)]
        modulus: Option<String>,
        /// Hitchin-section partition such as {1,2}|{3,4}.
        #[arg(long, requires = "q")]
        partition: Option<String>,
        #[arg(long)]
        q: Option<String>,
    },
    /// Randomized and exhaustive consistency checks.
    Verify {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        parity: Option<Parity>,
        /// Also tabulate every label in every chamber.
        #[arg(long)]
        deep: bool,
    },
}

/// Usage and domain errors; verification failures travel as `Ok((_, false))`.
enum Failure {
    Usage(String),
}

impl From<parahiggs::Error> for Failure {
    fn from(e: parahiggs::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Out = Result<(String, bool), Failure>;

fn read_json(path: &str) -> Result<Value, Failure> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
    }
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))
}

fn parse_splitting(s: &str) -> Result<Splitting, Failure> {
    let bad = || Failure::Usage(format!("splitting must be m1,m2, got {s:?}"));
    let (a, b) = s
        .trim_matches(|c| c == '(' || c == ')')
        .split_once(',')
        .ok_or_else(bad)?;
    let m1 = a.trim().parse().map_err(|_| bad())?;
    let m2 = b.trim().parse().map_err(|_| bad())?;
    Ok(Splitting::new(m1, m2)?)
}

fn no_dot(f: Format, what: &str) -> Result<(), Failure> {
    if f == Format::Dot {
        return Err(Failure::Usage(format!("{what} has no DOT form")));
    }
    Ok(())
}

fn emit(f: Format, v: Value, text: String) -> String {
    match f {
        Format::Json => io::render(&v),
        _ => text + "\n",
    }
}

fn describe(c: &Chamber) -> String {
    match c {
        Chamber::Interior(_) => format!("{c} (type {})", io::kind_name(c)),
        Chamber::Exterior { .. } => format!("{c} (exterior)"),
    }
}

fn classify_cmd(f: Format, beta: &str, parity: Parity) -> Out {
    no_dot(f, "classify")?;
    let b: WeightVector = beta.parse()?;
    let c = classify(&b, parity)?;
    let text = match &c {
        Classification::Chamber(ch) => describe(ch),
        Classification::OnWalls(ws) => {
            format!(
                "on walls: {}",
                ws.iter()
                    .map(Wall::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        }
    };
    Ok((emit(f, io::classification(&c), text), true))
}

fn walls_cmd(f: Format, parity: Parity) -> Out {
    no_dot(f, "walls")?;
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    for w in wall_list(parity) {
        let se = assembly::s_equivalence(&w)?;
        let mut v = io::wall(&w);
        v["s_equivalence"] = io::s_equivalence(&se);
        lines.push(format!(
            "{:<16} {:<9} = {}",
            w.to_string(),
            v["kind"].as_str().unwrap_or(""),
            v["alias"].as_str().unwrap_or("")
        ));
        for (a, b) in &se.identified {
            lines.push(format!("    {a} ~ {b}"));
        }
        rows.push(v);
    }
    Ok((
        emit(
            f,
            json!({"parity": parity.to_string(), "walls": rows}),
            lines.join("\n"),
        ),
        true,
    ))
}

fn graph_cmd(f: Format, parity: Parity) -> Out {
    let g = wall_crossing_graph(parity);
    let out = match f {
        Format::Dot => io::graph_dot(g),
        Format::Json => io::render(&io::graph(g)),
        Format::Text => {
            let mut s = String::new();
            for (i, c) in g.nodes.iter().enumerate() {
                s += &format!("{i:>2} {c} ({})\n", io::kind_name(c));
            }
            for (i, j, w) in &g.edges {
                s += &format!("{i:>2} -- {j:>2} {w}\n");
            }
            s
        }
    };
    Ok((out, true))
}

fn stability_cmd(f: Format, z1: &Rational, input: &str, beta: &str) -> Out {
    no_dot(f, "stability")?;
    let x = io::qph_from(&read_json(input)?, z1)?;
    let b: WeightVector = beta.parse()?;
    let verdict = destabilizing_search(&x, &b)?;
    let stratum = stratum_label(&x)?;
    let label = component_label(&x)?;
    let chamber = match classify(&b, x.splitting.parity())? {
        Classification::Chamber(c) => Some(c),
        Classification::OnWalls(_) => None,
    };
    let predicted = chamber
        .map(|c| predicted_stability(&label, &c))
        .transpose()?;
    let agree = predicted.is_none_or(|p| p == verdict.is_stable());
    let v = json!({
        "verdict": verdict.to_json(),
        "stratum": stratum.to_string(),
        "component": label.to_string(),
        "chamber": chamber.map(|c| c.to_string()),
        "predicted_stable": predicted,
        "agree": agree,
    });
    let pred = predicted.map_or("n/a (on a wall)".to_string(), |p| {
        if p {
            "stable".into()
        } else {
            "not stable".into()
        }
    });
    let text = format!(
        "verdict:   {verdict}\nstratum:   {stratum}\ncomponent: {label}\npredicted: {pred}\nagree:     {agree}"
    );
    Ok((emit(f, v, text), agree))
}

fn kernel_line_cmd(f: Format, z1: &Rational, input: &str) -> Out {
    no_dot(f, "kernel-line")?;
    let x = io::qph_from(&read_json(input)?, z1)?;
    let l = kernel_line(&x.phi, x.splitting)?;
    let s2 = l.s2.as_ref().map_or("none".to_string(), |s| s.to_string());
    Ok((
        emit(
            f,
            io::line(&l),
            format!("j = {}\ns1 = {}\ns2 = {}", l.j, l.s1, s2),
        ),
        true,
    ))
}

fn kit_cmd(f: Format, c: &Chamber) -> Out {
    let kit = assembly_kit(c);
    if f == Format::Dot {
        return Ok((io::kit_dot(&kit)?, true));
    }
    let cfg = glue(&kit)?;
    let strata = assembly::hn_strata(c, 0);
    let fixed = assembly::fixed_loci(c)?;
    let hs = assembly::hitchin_sections(c)?;
    let v = json!({
        "kit": io::kit(&kit),
        "configuration": io::configuration(&cfg),
        "hn_strata": strata.iter().map(io::stratum).collect::<Vec<_>>(),
        "fixed_loci": fixed.iter().map(io::fixed).collect::<Vec<_>>(),
        "hitchin_sections": hs.iter().map(|h| io::hitchin(h, c.parity())).collect::<Vec<_>>(),
    });
    let mut t = format!("{}\n", describe(c));
    for comp in &kit.components {
        t += &format!(
            "  {:<10} {:<18} {:<9} {}\n",
            comp.split.name(c.parity()),
            comp.label.to_string(),
            comp.iso.to_string(),
            match comp.role {
                assembly::Role::Central => "central".to_string(),
                assembly::Role::Tail(s) => format!("tail {s}"),
            }
        );
    }
    t += &format!(
        "D4: central χ={}, tails meet at {}\n",
        cfg.central.euler,
        cfg.intersections
            .iter()
            .map(|i| i.1.clone())
            .collect::<Vec<_>>()
            .join(", ")
    );
    for s in &strata {
        t += &format!(
            "HN {}: {}\n",
            s.splitting,
            if s.nonempty {
                format!("dim {}, {} nodes", s.dimension, s.nodes)
            } else {
                "empty".into()
            }
        );
    }
    Ok((emit(f, v, t.trim_end().to_string()), true))
}

fn cross_cmd(f: Format, a: &Chamber, b: &Chamber) -> Out {
    no_dot(f, "cross")?;
    let m = wall_cross(a, b)?;
    let mut t = format!("{} -> {} across {}\n", m.from, m.to, m.wall);
    for (x, y) in &m.exchanged {
        t += &format!("  {x} <-> {y}\n");
    }
    t += &format!("  fixed: {}", m.fixed.join(", "));
    Ok((emit(f, io::crossing(&m), t), true))
}

fn representative_cmd(
    f: Format,
    z1: &Rational,
    label: Option<&str>,
    splitting: &str,
    modulus: Option<&str>,
    partition: Option<&str>,
    q: Option<&str>,
) -> Out {
    no_dot(f, "representative")?;
    let s = parse_splitting(splitting)?;
    let spec = match (label, partition) {
        (Some(l), None) => RepSpec::Block {
            label: l.parse::<ComponentLabel>()?,
            splitting: s,
            modulus: modulus.map(str::parse::<ProjPoint>).transpose()?,
        },
        (None, Some(p)) => RepSpec::Hitchin {
            partition: p.parse::<Partition>()?,
            q: parse_rational(q.unwrap_or("1"))?,
            splitting: s,
        },
        _ => return Err(Failure::Usage("give either --label or --partition".into())),
    };
    let x = canonical_representative(&spec, &MarkedPoints::new(z1.clone())?)?;
    Ok((io::render(&io::qph(&x)), true))
}

fn verify_cmd(
    f: Format,
    z1: &Rational,
    samples: usize,
    seed: u64,
    parity: Option<Parity>,
    deep: bool,
) -> Out {
    no_dot(f, "verify")?;
    if samples == 0 {
        return Err(Failure::Usage("--samples must be positive".into()));
    }
    let cfg = VerifyConfig {
        z1: z1.clone(),
        seed,
        samples,
        parities: parity.map_or(Parity::both().to_vec(), |p| vec![p]),
        deep,
    };
    let r = verify::run(&cfg)?;
    let ok = r.failures() == 0;
    Ok((emit(f, r.to_json(), r.to_string()), ok))
}

fn run(cli: Cli) -> Out {
    let z1 = parse_rational(&cli.z1)?;
    MarkedPoints::new(z1.clone())?;
    let f = cli.format;
    match cli.cmd {
        Cmd::Classify { beta, parity } => classify_cmd(f, &beta, parity),
        Cmd::Walls { parity } => walls_cmd(f, parity),
        Cmd::Graph { parity } => graph_cmd(f, parity),
        Cmd::Stability { input, beta } => stability_cmd(f, &z1, &input, &beta),
        Cmd::KernelLine { input } => kernel_line_cmd(f, &z1, &input),
        Cmd::Kit { chamber } => kit_cmd(f, &chamber),
        Cmd::Cross { from, to } => cross_cmd(f, &from, &to),
        Cmd::Representative {
            label,
            splitting,
            modulus,
            partition,
            q,
        } => representative_cmd(
            f,
            &z1,
            label.as_deref(),
            &splitting,
            modulus.as_deref(),
            partition.as_deref(),
            q.as_deref(),
        ),
        Cmd::Verify {
            samples,
            seed,
            parity,
            deep,
        } => verify_cmd(f, &z1, samples, seed, parity, deep),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
