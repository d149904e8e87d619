use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use smallrings::cube::{associated_forms, cube_from_triple, ring_of_cube, triple_from_cube, Cube};
use smallrings::cubic::{
    cubic_content, cubic_form_disc, form_from_cubic_ring, ring_from_cubic_form, BinaryCubicForm,
};
use smallrings::padic::{balanced_count, stella_membership, PadicConfig};
use smallrings::quadform::{class_group, compose, discriminant, reduce, BinaryQuadraticForm};
use smallrings::quadring::{
    class_semigroup, form_from_ideal, ideal_from_form, ideal_norm, is_invertible, ring_from_disc,
    QuadIdeal,
};
use smallrings::quartic::{
    count_numerical_resolvents, cubic_resolvent_form, disc_quartic, is_maximal_at_p,
    minimal_resolvent, nonmaximality_conditions, pair_from_ring, ring_from_pair,
    square_divisor_primes,
};
use smallrings::wire::{
    cube_to_json, cubic_form_to_json, form_to_json, from_json, rat_json, CubicRingJson, IdealJson,
    PairJson, QuarticRingJson, RingJson, TripleJson,
};
use smallrings::{Error, Result};

/// Exact computations with quadratic, cubic and quartic rings.
///
/// Negative arguments may follow `--`, as in `classgroup -- -100`.
#[derive(Parser)]
#[command(name = "smallrings", version)]
struct Cli {
    /// Print JSON with integers as decimal strings.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a positive definite form.
    #[command(allow_negative_numbers = true)]
    Reduce { a: BigInt, b: BigInt, c: BigInt },
    /// Compose two primitive forms `a,b,c` of discriminant D.
    #[command(allow_negative_numbers = true)]
    Compose { d: BigInt, f: String, g: String },
    /// Class group of primitive forms of discriminant D < 0.
    #[command(allow_negative_numbers = true)]
    Classgroup { d: BigInt },
    /// Ideal classes of the order of discriminant D < 0, invertible or not.
    #[command(allow_negative_numbers = true)]
    Semigroup { d: BigInt },
    /// Form of a JSON ideal (path, `-` for stdin, or inline JSON).
    IdealForm { ideal: String },
    /// Ideal of a form, in the ring of its discriminant.
    #[command(allow_negative_numbers = true)]
    FormIdeal { a: BigInt, b: BigInt, c: BigInt },
    /// The three forms of a cube `a b c d e f g h`.
    #[command(allow_negative_numbers = true)]
    CubeForms { entries: Vec<BigInt> },
    /// The quadratic ring of a cube.
    #[command(allow_negative_numbers = true)]
    CubeRing { entries: Vec<BigInt> },
    /// The balanced triple and bases of a cube.
    #[command(allow_negative_numbers = true)]
    CubeTriple { entries: Vec<BigInt> },
    /// The cube of a JSON triple with bases.
    TripleCube { triple: String },
    /// Multiplication table of the cubic ring of `p q r s`.
    #[command(allow_negative_numbers = true)]
    CubicRing {
        p: BigInt,
        q: BigInt,
        r: BigInt,
        s: BigInt,
    },
    /// Binary cubic form of a JSON cubic ring table.
    CubicForm { ring: String },
    /// Quartic ring of a JSON pair of ternary forms.
    QuarticRing { pair: String },
    /// Content, numerical resolvent count and cubic resolvent of a JSON pair.
    Resolvent { pair: String },
    /// Maximality of the ring of a JSON pair at the given primes.
    Maximal {
        pair: String,
        /// Defaults to the primes whose square divides the discriminant.
        primes: Vec<u64>,
    },
    /// Number of balanced triples with ideals S_i, S_j, S_k in ℤ_p[pⁿ√u].
    PadicCount {
        p: u64,
        n: u32,
        i: u32,
        j: u32,
        k: u32,
        /// Non-residue u; the least positive one by default.
        #[arg(long, allow_negative_numbers = true)]
        u: Option<i64>,
    },
    /// Whether a signed index triple lies in the stella octangula of size n.
    #[command(allow_negative_numbers = true)]
    Stella { n: u32, i: i64, j: i64, k: i64 },
}

/// What a command prints: human text and the JSON document.
struct Output {
    text: String,
    json: Value,
}

fn payload(arg: &str) -> Result<String> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(arg.to_string());
    }
    let mut s = String::new();
    if arg == "-" {
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Malformed(e.to_string()))?;
    } else {
        s = std::fs::read_to_string(arg).map_err(|e| Error::Malformed(format!("{arg}: {e}")))?;
    }
    Ok(s)
}

fn parse_form(s: &str) -> Result<BinaryQuadraticForm> {
    let parts: Vec<String> = s.split(',').map(|p| p.trim().to_string()).collect();
    smallrings::wire::form_from_json(&parts)
}

fn cube_arg(entries: &[BigInt]) -> Result<Cube> {
    let arr: [BigInt; 8] = entries
        .to_vec()
        .try_into()
        .map_err(|_| Error::Malformed(format!("a cube has 8 entries, got {}", entries.len())))?;
    Ok(Cube(arr))
}

fn table(labels: &[String], t: &[Vec<usize>]) -> String {
    let w = labels.iter().map(String::len).max().unwrap_or(1);
    let mut out = format!("{:w$} |", "");
    for l in labels {
        out += &format!(" {l:>w$}");
    }
    out.push('\n');
    for (l, row) in labels.iter().zip(t) {
        out += &format!("{l:>w$} |");
        for &j in row {
            out += &format!(" {:>w$}", labels[j]);
        }
        out.push('\n');
    }
    out
}

fn index_strings(t: &[Vec<usize>]) -> Vec<Vec<String>> {
    t.iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect()
}

fn ideal_text(i: &QuadIdeal) -> String {
    let [e1, e2] = i.basis();
    format!("<{e1}, {e2}>")
}

fn run(cmd: Command) -> Result<Output> {
    Ok(match cmd {
        Command::Reduce { a, b, c } => {
            let f = BinaryQuadraticForm { a, b, c };
            let (r, m) = reduce(&f)?;
            Output {
                text: format!("{r}\ntransform [[{}, {}], [{}, {}]]", m.a, m.b, m.c, m.d),
                json: json!({
                    "form": form_to_json(&r),
                    "transform": [[m.a.to_string(), m.b.to_string()], [m.c.to_string(), m.d.to_string()]],
                }),
            }
        }
        Command::Compose { d, f, g } => {
            let (f, g) = (parse_form(&f)?, parse_form(&g)?);
            for h in [&f, &g] {
                if discriminant(h) != d {
                    return Err(Error::DiscriminantMismatch(
                        discriminant(h).to_string(),
                        d.to_string(),
                    ));
                }
            }
            let h = compose(&f, &g)?;
            Output {
                text: h.to_string(),
                json: json!({ "form": form_to_json(&h) }),
            }
        }
        Command::Classgroup { d } => {
            let g = class_group(&d)?;
            let labels: Vec<String> = g.elements.iter().map(ToString::to_string).collect();
            let inv: Vec<String> = g.invariants.iter().map(|n| format!("Z/{n}")).collect();
            let structure = if inv.is_empty() {
                "trivial".to_string()
            } else {
                inv.join(" x ")
            };
            Output {
                text: format!(
                    "D = {d}, h = {}, {structure}\n{}",
                    g.order(),
                    table(&labels, &g.table)
                ),
                json: json!({
                    "discriminant": d.to_string(),
                    "order": g.order().to_string(),
                    "invariants": g.invariants.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "elements": g.elements.iter().map(form_to_json).collect::<Vec<_>>(),
                    "table": index_strings(&g.table),
                }),
            }
        }
        Command::Semigroup { d } => {
            let s = class_semigroup(&d)?;
            let labels: Vec<String> = s.classes.iter().map(ToString::to_string).collect();
            let inv: Vec<bool> = s
                .classes
                .iter()
                .map(|f| ideal_from_form(f, &s.ring).map(|i| is_invertible(&i)))
                .collect::<Result<_>>()?;
            let mut text = format!("D = {d}, ring {}\n{}", s.ring, table(&labels, &s.table));
            for (l, i) in labels.iter().zip(&inv) {
                text += &format!("{l} {}\n", if *i { "invertible" } else { "not invertible" });
            }
            Output {
                text: text.trim_end().to_string(),
                json: json!({
                    "discriminant": d.to_string(),
                    "ring": RingJson::from_ring(&s.ring),
                    "classes": s.classes.iter().map(form_to_json).collect::<Vec<_>>(),
                    "invertible": inv,
                    "table": index_strings(&s.table),
                }),
            }
        }
        Command::IdealForm { ideal } => {
            let j: IdealJson = from_json(&payload(&ideal)?)?;
            let i = j.to_ideal()?;
            let f = form_from_ideal(&i);
            Output {
                text: format!("{f}\nnorm {}", ideal_norm(&i)),
                json: json!({ "form": form_to_json(&f), "norm": rat_json(&ideal_norm(&i)) }),
            }
        }
        Command::FormIdeal { a, b, c } => {
            let f = BinaryQuadraticForm { a, b, c };
            let ring = ring_from_disc(&discriminant(&f))?;
            let i = ideal_from_form(&f, &ring)?;
            Output {
                text: format!("{} in {}", ideal_text(&i), ring),
                json: json!(IdealJson::from_ideal(&i)),
            }
        }
        Command::CubeForms { entries } => {
            let q = cube_arg(&entries)?;
            let forms = associated_forms(&q);
            Output {
                text: forms
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("\n"),
                json: json!({ "forms": forms.iter().map(form_to_json).collect::<Vec<_>>() }),
            }
        }
        Command::CubeRing { entries } => {
            let r = ring_of_cube(&cube_arg(&entries)?)?;
            Output {
                text: format!("{r}\ndiscriminant {}", r.disc()),
                json: json!({ "ring": RingJson::from_ring(&r), "discriminant": r.disc().to_string() }),
            }
        }
        Command::CubeTriple { entries } => {
            let (t, bases) = triple_from_cube(&cube_arg(&entries)?)?;
            let mut text = format!("ring {}", t.ring);
            for (k, b) in bases.iter().enumerate() {
                text += &format!("\nI{} = <{}, {}>", k + 1, b[0], b[1]);
            }
            Output {
                text,
                json: json!(TripleJson::from_triple(&bases, &t)),
            }
        }
        Command::TripleCube { triple } => {
            let j: TripleJson = from_json(&payload(&triple)?)?;
            let (t, bases) = j.to_triple()?;
            let q = cube_from_triple(&t, &bases)?;
            Output {
                text: q.to_string(),
                json: json!({ "cube": cube_to_json(&q) }),
            }
        }
        Command::CubicRing { p, q, r, s } => {
            let phi = BinaryCubicForm { p, q, r, s };
            let c = ring_from_cubic_form(&phi);
            Output {
                text: format!(
                    "{c}\ndiscriminant {}\ncontent {}",
                    cubic_form_disc(&phi),
                    cubic_content(&phi)
                ),
                json: json!({
                    "ring": CubicRingJson::from_ring(&c),
                    "discriminant": cubic_form_disc(&phi).to_string(),
                    "content": cubic_content(&phi).to_string(),
                }),
            }
        }
        Command::CubicForm { ring } => {
            let j: CubicRingJson = from_json(&payload(&ring)?)?;
            let phi = form_from_cubic_ring(&j.to_ring()?);
            Output {
                text: phi.to_string(),
                json: json!({ "form": cubic_form_to_json(&phi) }),
            }
        }
        Command::QuarticRing { pair } => {
            let j: PairJson = from_json(&payload(&pair)?)?;
            let q = ring_from_pair(&j.to_pair()?);
            Output {
                text: format!(
                    "{}\ndiscriminant {}",
                    q.to_string().replace(", ξ", "\nξ"),
                    disc_quartic(&q)
                ),
                json: json!({ "ring": QuarticRingJson::from_ring(&q), "discriminant": disc_quartic(&q).to_string() }),
            }
        }
        Command::Resolvent { pair } => {
            let j: PairJson = from_json(&payload(&pair)?)?;
            let p = j.to_pair()?;
            let q = ring_from_pair(&p);
            let min = minimal_resolvent(&q)?;
            let count = count_numerical_resolvents(&q)?;
            let (_, witness) = pair_from_ring(&q)?;
            let form = cubic_resolvent_form(&p);
            Output {
                text: format!(
                    "content {}\nnumerical resolvents {count}\ncubic resolvent {form}",
                    min.content
                ),
                json: json!({
                    "content": min.content.to_string(),
                    "count": count.to_string(),
                    "cubic_resolvent": cubic_form_to_json(&form),
                    "witness": PairJson::from_pair(&witness),
                }),
            }
        }
        Command::Maximal { pair, primes } => {
            let j: PairJson = from_json(&payload(&pair)?)?;
            let p = j.to_pair()?;
            let q = ring_from_pair(&p);
            let disc = disc_quartic(&q);
            if disc == BigInt::from(0) {
                return Err(Error::DegenerateRing);
            }
            let primes = if primes.is_empty() {
                square_divisor_primes(&disc)
            } else {
                primes
            };
            let mut lines = vec![format!("discriminant {disc}")];
            let mut results = Vec::new();
            for pr in primes {
                let res = is_maximal_at_p(&q, pr)?;
                let tags: Vec<String> = nonmaximality_conditions(&p, pr)
                    .iter()
                    .map(ToString::to_string)
                    .collect();
                let witness: Option<Vec<Vec<String>>> = res.witness.as_ref().map(|w| {
                    w.rows()
                        .iter()
                        .map(|r| r.iter().map(rat_json).collect())
                        .collect()
                });
                let mut line = format!(
                    "p = {pr}: {}",
                    if res.maximal {
                        "maximal"
                    } else {
                        "not maximal"
                    }
                );
                if !tags.is_empty() {
                    line += &format!(", conditions {}", tags.join(" "));
                }
                if let Some(w) = &witness {
                    let rows: Vec<String> =
                        w.iter().map(|r| format!("[{}]", r.join(", "))).collect();
                    line += &format!("\n  overring {}", rows.join(" "));
                }
                lines.push(line);
                results.push(json!({ "p": pr.to_string(), "maximal": res.maximal, "conditions": tags, "witness": witness }));
            }
            Output {
                text: lines.join("\n"),
                json: json!({ "discriminant": disc.to_string(), "primes": results }),
            }
        }
        Command::PadicCount { p, n, i, j, k, u } => {
            let cfg = match u {
                Some(u) => PadicConfig::new(p, n, u)?,
                None => PadicConfig::with_default_u(p, n)?,
            };
            let mut idx = [i, j, k];
            idx.sort_unstable();
            let count = balanced_count(&cfg, (idx[0], idx[1], idx[2]))?;
            Output {
                text: count.to_string(),
                json: json!({ "count": count.to_string() }),
            }
        }
        Command::Stella { n, i, j, k } => {
            let s = stella_membership(n, (i, j, k));
            let label = s.tetrahedron.map(|t| t.to_string());
            let text = match &label {
                Some(l) if l == "boundary" => "inside, on both tetrahedra".to_string(),
                Some(l) => format!("inside, tetrahedron {l}"),
                None => "outside".to_string(),
            };
            Output {
                text,
                json: json!({ "inside": s.inside, "tetrahedron": label }),
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("json values serialize")
            } else {
                out.text.trim_end().to_string()
            };
            // a closed pipe is not an error worth reporting
            let _ = writeln!(std::io::stdout(), "{body}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(if matches!(e, Error::Malformed(_)) {
                2
            } else {
                1
            })
        }
    }
}
