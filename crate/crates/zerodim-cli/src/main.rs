//! `zerodim`: command-line driver for markered arrays, subshifts,
//! numerical semigroups, Bratteli diagrams and the compression codecs.
//!
//! Exit status: 0 on success, 1 when an analysis answers in the negative,
//! 2 on bad input.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use zerodim::arrays::{
    auto_cover, entropy_from_rectangles, extract_rectangles, krieger_markers, length_counts, parse_array,
    validate_markers, word_rectangles, write_array, ArrayWindow, MarkerProfile,
};
use zerodim::bratteli::{
    decisive_check, emit_dot, is_simple_upto, k_symbol, parse_diagram, path_to_array, telescope, trapezoid_diagram,
    vershik_orbit, write_diagram, Extremal, FinitePath, OrbitEnd, OrderedBratteliDiagram, RectangleSystem, Status,
    TailPolicy, Vertex,
};
use zerodim::compression::{
    choose_ell, compress, decode, decode_countable, encode_countable, recode, write_countable, CodeFamily,
    CountableLabeling,
};
use zerodim::semigroup::{decompose_pq, frobenius, GeneratorSet};
use zerodim::symbolic::{parse_subshift, SubshiftSpec, Word};

#[derive(Parser)]
#[command(name = "zerodim", version, about = "Zero-dimensional systems: arrays, subshifts and Bratteli diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Caps {
    /// Largest cylinder radius for marker constructions.
    #[arg(long, env = "ZERODIM_MAX_RADIUS", default_value_t = 6)]
    max_radius: usize,
    /// Deepest level a stationary diagram is extended to.
    #[arg(long, env = "ZERODIM_MAX_DEPTH", default_value_t = 24)]
    max_depth: usize,
    /// Most words a listing may print.
    #[arg(long, env = "ZERODIM_MAX_WORDS", default_value_t = 1 << 16)]
    max_words: usize,
}

#[derive(Args)]
struct PathArgs {
    /// Diagram file.
    diagram: PathBuf,
    /// Source vertex of the path (defaults to the first vertex of the level given by the labels).
    #[arg(long)]
    vertex: Option<String>,
    /// Edge orders of the path, top edge first, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    labels: Vec<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a diagram (.bd), subshift (.sub) or array (.arr) file.
    Validate {
        file: PathBuf,
        /// Gap bounds per row for arrays, e.g. `2:3,6:9`.
        #[arg(long)]
        profile: Option<String>,
    },
    /// List (or count) the admissible words of length n.
    Language {
        subshift: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count: bool,
        #[command(flatten)]
        caps: Caps,
    },
    /// Entropy estimate from words of length n, or from rectangles of an array.
    Entropy {
        file: PathBuf,
        #[arg(long, default_value_t = 20)]
        n: usize,
        /// Treat the file as an array and count its k-rectangles.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        profile: Option<String>,
    },
    /// Build n-markers from an automatic cover of radius r and certify them.
    Markers {
        subshift: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        radius: usize,
        #[command(flatten)]
        caps: Caps,
    },
    /// Frobenius number of a generator set.
    Frobenius {
        #[arg(required = true)]
        generators: Vec<u64>,
    },
    /// Write m = p·n + q·(n+1) with p maximal.
    Decompose { m: u64, n: u64 },
    /// Successor (or predecessor) of a finite path.
    Successor {
        #[command(flatten)]
        path: PathArgs,
        #[arg(long)]
        predecessor: bool,
    },
    /// Iterate the successor map.
    Orbit {
        #[command(flatten)]
        path: PathArgs,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        /// Extend all-maximal prefixes through the stationary tail.
        #[arg(long)]
        stationary: bool,
        #[command(flatten)]
        caps: Caps,
    },
    /// Depth-k prefixes of infinite maximal and minimal paths.
    Extremal {
        diagram: PathBuf,
        #[arg(long)]
        depth: usize,
        #[command(flatten)]
        caps: Caps,
    },
    /// Telescope onto the given levels and print the new diagram.
    Telescope {
        diagram: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        keep: Vec<usize>,
        #[command(flatten)]
        caps: Caps,
    },
    /// Simplicity within the truncation.
    Simple {
        diagram: PathBuf,
        #[arg(long)]
        depth: usize,
        #[command(flatten)]
        caps: Caps,
    },
    /// Finite-depth decisiveness analysis.
    Decisive {
        diagram: PathBuf,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        stationary: bool,
        #[command(flatten)]
        caps: Caps,
    },
    /// The k-symbol of a vertex.
    Symbol {
        diagram: PathBuf,
        #[arg(long)]
        vertex: String,
        #[command(flatten)]
        caps: Caps,
    },
    /// The array window of a finite path.
    ToArray {
        #[command(flatten)]
        path: PathArgs,
    },
    /// Trapezoid diagram of rectangles derived from a subshift.
    Trapezoid {
        subshift: PathBuf,
        #[arg(long, default_value_t = 2)]
        block: usize,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Print the naive rectangle diagram instead.
        #[arg(long)]
        naive: bool,
    },
    /// Build the block code for a subshift and recode rows from a file.
    Compress {
        subshift: PathBuf,
        #[command(flatten)]
        code: CodeArgs,
        /// Rows to recode, one per line, written with the subshift's tokens.
        #[arg(long)]
        rows: Option<PathBuf>,
    },
    /// Decode coded rows back to marked rows.
    Decode {
        subshift: PathBuf,
        coded: PathBuf,
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Countable-alphabet encoding of an array window, checked by decoding.
    EncodeCountable {
        array: PathBuf,
        #[arg(long)]
        profile: String,
    },
    /// Graphviz rendering of a diagram.
    Dot {
        diagram: PathBuf,
        /// Extend a stationary diagram to this depth first.
        #[arg(long)]
        depth: Option<usize>,
        #[command(flatten)]
        caps: Caps,
    },
}

#[derive(Args)]
struct CodeArgs {
    /// Block length k.
    #[arg(long)]
    block: usize,
    /// Target alphabet size; defaults to the least integer above 2^h.
    #[arg(long)]
    ell: Option<usize>,
    /// Marker length s.
    #[arg(long, default_value_t = 1)]
    s: usize,
    /// Block length used for the entropy estimate behind the default alphabet.
    #[arg(long, default_value_t = 20)]
    entropy_n: usize,
}

/// An answer that is not an input error.
enum Answer {
    Yes(String),
    No(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    match run(cli.command) {
        Ok(answer) => {
            let (text, code) = match answer {
                Answer::Yes(t) => (t, 0),
                Answer::No(t) => (t, 1),
            };
            print!("# zerodim {} {name}\n{text}", env!("CARGO_PKG_VERSION"));
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Language { .. } => "language",
        Command::Entropy { .. } => "entropy",
        Command::Markers { .. } => "markers",
        Command::Frobenius { .. } => "frobenius",
        Command::Decompose { .. } => "decompose",
        Command::Successor { .. } => "successor",
        Command::Orbit { .. } => "orbit",
        Command::Extremal { .. } => "extremal",
        Command::Telescope { .. } => "telescope",
        Command::Simple { .. } => "simple",
        Command::Decisive { .. } => "decisive",
        Command::Symbol { .. } => "symbol",
        Command::ToArray { .. } => "to-array",
        Command::Trapezoid { .. } => "trapezoid",
        Command::Compress { .. } => "compress",
        Command::Decode { .. } => "decode",
        Command::EncodeCountable { .. } => "encode-countable",
        Command::Dot { .. } => "dot",
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_diagram(path: &Path) -> Result<OrderedBratteliDiagram> {
    parse_diagram(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn load_subshift(path: &Path) -> Result<SubshiftSpec> {
    parse_subshift(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn load_array(path: &Path) -> Result<ArrayWindow> {
    parse_array(&read(path)?).with_context(|| format!("{}", path.display()))
}

/// `2:3,6:9` or `2,6` (a single number means min = max).
fn parse_profile(text: &str) -> Result<MarkerProfile> {
    let bounds = text
        .split(',')
        .map(|part| {
            let (lo, hi) = part.split_once(':').unwrap_or((part, part));
            let lo: usize = lo.trim().parse().with_context(|| format!("bad gap bound `{part}`"))?;
            let hi: usize = hi.trim().parse().with_context(|| format!("bad gap bound `{part}`"))?;
            if lo == 0 || hi < lo {
                bail!("gap bounds `{part}` must satisfy 1 ≤ min ≤ max");
            }
            Ok((lo, hi))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MarkerProfile::new(bounds))
}

/// Extends a stationary diagram to `depth` within the cap; errors otherwise when too shallow.
fn reach(d: OrderedBratteliDiagram, depth: usize, caps: &Caps) -> Result<OrderedBratteliDiagram> {
    if depth > caps.max_depth {
        bail!("depth {depth} exceeds ZERODIM_MAX_DEPTH = {}", caps.max_depth);
    }
    if depth > d.depth() && d.tail().is_none() {
        bail!("depth {depth} exceeds the truncation depth {} and no stationary tail is declared", d.depth());
    }
    Ok(d.extended(depth))
}

fn resolve_path(d: &OrderedBratteliDiagram, args: &PathArgs) -> Result<FinitePath> {
    let level = args.labels.len();
    if level > d.depth() {
        bail!("{level} labels exceed the diagram depth {}", d.depth());
    }
    let source = match &args.vertex {
        Some(name) => d.vertex(level, name)?,
        None => Vertex::new(level, 0),
    };
    Ok(FinitePath::from_labels(d, source, &args.labels)?)
}

fn describe(d: &OrderedBratteliDiagram, p: &FinitePath) -> String {
    format!("{} {:?}", d.name(p.source(d)), p.labels(d))
}

fn run(command: Command) -> Result<Answer> {
    let mut out = String::new();
    match command {
        Command::Validate { file, profile } => {
            let text = read(&file)?;
            match file.extension().and_then(|e| e.to_str()) {
                Some("bd") => {
                    let d = parse_diagram(&text).with_context(|| format!("{}", file.display()))?;
                    let r = d.validate();
                    writeln!(
                        out,
                        "depth {}, {} edges",
                        d.depth(),
                        (1..=d.depth()).map(|k| d.edges(k).len()).sum::<usize>()
                    )?;
                    for (k, v) in &r.no_incoming {
                        writeln!(out, "vertex {v} on level {k} is not reached from level {}", k + 1)?;
                    }
                    for (k, v) in &r.no_outgoing {
                        writeln!(out, "vertex {v} on level {k} has no outgoing edge")?;
                    }
                    for (k, v) in &r.order_gaps {
                        writeln!(out, "vertex {v} on level {k} has non-contiguous edge orders")?;
                    }
                    return Ok(verdict(r.is_valid(), out + if r.is_valid() { "valid\n" } else { "invalid\n" }));
                }
                Some("sub") => {
                    let s = parse_subshift(&text).with_context(|| format!("{}", file.display()))?;
                    writeln!(out, "alphabet {} symbols, memory {}", s.alphabet().len(), s.memory())?;
                    writeln!(out, "valid")?;
                }
                Some("arr") => {
                    let w = parse_array(&text).with_context(|| format!("{}", file.display()))?;
                    let p = match profile {
                        Some(p) => parse_profile(&p)?,
                        None => MarkerProfile::new(vec![(1, usize::MAX); w.height()]),
                    };
                    let r = validate_markers(&w, &p)?;
                    let mut ok = true;
                    for row in &r.rows {
                        writeln!(
                            out,
                            "row {}: {} nesting violation(s), {} gap violation(s), {} inconclusive edge gap(s)",
                            row.row,
                            row.nesting_violations.len(),
                            row.gap_violations.len(),
                            row.inconclusive.len()
                        )?;
                        ok &= row.nesting_violations.is_empty() && row.gap_violations.is_empty();
                    }
                    return Ok(verdict(ok, out + if ok { "valid\n" } else { "invalid\n" }));
                }
                _ => bail!("unknown file type for {}; expected .bd, .sub or .arr", file.display()),
            }
        }
        Command::Language { subshift, n, count, caps } => {
            let s = load_subshift(&subshift)?;
            let total = s.language_count(n);
            if count {
                writeln!(out, "{total}")?;
            } else {
                if total > caps.max_words as u128 {
                    bail!("{total} words exceed ZERODIM_MAX_WORDS = {}; use --count", caps.max_words);
                }
                for w in s.language(n) {
                    writeln!(out, "{}", s.alphabet().render(&w))?;
                }
            }
        }
        Command::Entropy { file, n, k, profile } => match k {
            Some(k) => {
                let w = load_array(&file)?;
                let p = match profile {
                    Some(p) => parse_profile(&p)?,
                    None => MarkerProfile::new(vec![(1, usize::MAX); w.height()]),
                };
                let counts = length_counts(&extract_rectangles(&w, k)?);
                for (len, c) in &counts {
                    writeln!(out, "length {len}: {c} rectangle(s)")?;
                }
                writeln!(out, "{:.6}", entropy_from_rectangles(&counts, &p, k)?)?;
            }
            None => {
                let s = load_subshift(&file)?;
                writeln!(out, "|B_{n}| = {}", s.language_count(n))?;
                writeln!(out, "{:.6}", s.entropy_estimate(n)?)?;
            }
        },
        Command::Markers { subshift, n, radius, caps } => {
            let s = load_subshift(&subshift)?;
            let cover = auto_cover(&s, n, radius);
            writeln!(out, "cover: {} member(s) at radius {radius}", cover.len())?;
            let result = krieger_markers(&s, n, &cover, caps.max_radius)?;
            let r = &result.report;
            writeln!(out, "radius {}, window {}", r.radius, r.window)?;
            writeln!(out, "separated: {}", r.separated)?;
            if let Some(w) = &r.separation_witness {
                writeln!(out, "separation witness: {}", s.alphabet().render(w))?;
            }
            writeln!(
                out,
                "uncovered words: {} ({} of period < {n})",
                r.uncovered.len(),
                r.periodic_uncovered().count()
            )?;
            for w in r.uncovered.iter().take(10) {
                writeln!(out, "  {}", s.alphabet().render(w))?;
            }
            return Ok(verdict(r.separated && r.covered(), out));
        }
        Command::Frobenius { generators } => {
            let g = GeneratorSet::new(generators)?;
            let f = frobenius(&g)?;
            if f.gcd != 1 {
                writeln!(out, "gcd {}", f.gcd)?;
            }
            writeln!(out, "{}", f.frobenius)?;
        }
        Command::Decompose { m, n } => {
            let (p, q) = decompose_pq(m, n)?;
            writeln!(out, "{m} = {p}·{n} + {q}·{}", n + 1)?;
            writeln!(out, "{p} {q}")?;
        }
        Command::Successor { path, predecessor } => {
            let d = load_diagram(&path.diagram)?;
            let p = resolve_path(&d, &path)?;
            let next = if predecessor { p.predecessor(&d) } else { p.successor(&d) };
            return Ok(match next {
                Some(q) => Answer::Yes(format!("{}\n", describe(&d, &q))),
                None => Answer::No(format!("{}\n", if predecessor { "minimal" } else { "maximal" })),
            });
        }
        Command::Orbit { path, steps, stationary, caps } => {
            let d = load_diagram(&path.diagram)?;
            let p = resolve_path(&d, &path)?;
            let policy = if stationary { TailPolicy::StationaryRepeat } else { TailPolicy::TruncateAtK };
            let orbit = vershik_orbit(&d, &p, steps, policy, caps.max_depth)?;
            for q in &orbit.paths {
                writeln!(out, "{}", describe(&orbit.diagram, q))?;
            }
            if orbit.end == OrbitEnd::Maximal {
                writeln!(out, "maximal")?;
            }
        }
        Command::Extremal { diagram, depth, caps } => {
            let d = reach(load_diagram(&diagram)?, depth, &caps)?;
            for (kind, label) in [(Extremal::Max, "maximal"), (Extremal::Min, "minimal")] {
                let paths = d.extremal_paths(depth, kind)?;
                writeln!(out, "{} {label}", paths.len())?;
                for p in paths {
                    writeln!(out, "  {}", describe(&d, &p))?;
                }
            }
        }
        Command::Telescope { diagram, keep, caps } => {
            let last = keep.last().copied().unwrap_or(0);
            let d = load_diagram(&diagram)?;
            let d = if last > d.depth() { reach(d, last, &caps)? } else { d };
            out.push_str(&write_diagram(&telescope(&d, &keep)?.diagram));
        }
        Command::Simple { diagram, depth, caps } => {
            let d = reach(load_diagram(&diagram)?, depth, &caps)?;
            let s = is_simple_upto(&d, depth)?;
            writeln!(out, "witness levels {:?}", s.witness)?;
            return Ok(verdict(s.simple, out + if s.simple { "simple\n" } else { "not simple at this depth\n" }));
        }
        Command::Decisive { diagram, depth, stationary, caps } => {
            let d = load_diagram(&diagram)?;
            let (d, policy) = if stationary {
                if depth > caps.max_depth {
                    bail!("depth {depth} exceeds ZERODIM_MAX_DEPTH = {}", caps.max_depth);
                }
                (d, TailPolicy::StationaryRepeat)
            } else {
                (d, TailPolicy::TruncateAtK)
            };
            let v = decisive_check(&d, depth, policy)?;
            write!(out, "{v}")?;
            return Ok(verdict(v.status != Status::NonDecisive, out));
        }
        Command::Symbol { diagram, vertex, caps } => {
            let d = load_diagram(&diagram)?;
            let v = match d.find_vertex(&vertex) {
                Some(v) => v,
                None => bail!("no vertex `{vertex}`"),
            };
            if v.level > caps.max_depth {
                bail!("level {} exceeds ZERODIM_MAX_DEPTH", v.level);
            }
            out.push_str(&write_array(&k_symbol(&d, v)));
        }
        Command::ToArray { path } => {
            let d = load_diagram(&path.diagram)?;
            let p = resolve_path(&d, &path)?;
            writeln!(out, "rank {}", p.rank(&d))?;
            out.push_str(&write_array(&path_to_array(&d, &p)));
        }
        Command::Trapezoid { subshift, block, depth, naive } => {
            let s = load_subshift(&subshift)?;
            let sys = RectangleSystem::from_subshift(&s, block, depth);
            let t = trapezoid_diagram(&sys, depth)?;
            if naive {
                out.push_str(&write_diagram(&t.naive));
            } else {
                for (k, level) in t.descriptions.iter().enumerate().skip(1) {
                    for (name, desc) in t.diagram.levels()[k].iter().zip(level) {
                        writeln!(out, "# {name} = {desc}")?;
                    }
                }
                out.push_str(&write_diagram(&t.diagram));
            }
        }
        Command::Compress { subshift, code, rows } => {
            let s = load_subshift(&subshift)?;
            let (map, ell) = build_code(&s, &code)?;
            writeln!(out, "ell {ell}, s {}, {} block(s) of length {}", code.s, map.len(), code.block)?;
            for (r, b) in &map.forward {
                writeln!(out, "{} -> {}", r.rows[0].concat(), digits(b))?;
            }
            if let Some(rows) = rows {
                for line in read(&rows)?.lines().filter(|l| !l.trim().is_empty()) {
                    let w = marked_row(&s, line.trim(), code.block)?;
                    writeln!(out, "{}", digits(&recode(&w, &map)?))?;
                }
            }
        }
        Command::Decode { subshift, coded, code } => {
            let s = load_subshift(&subshift)?;
            let (map, _) = build_code(&s, &code)?;
            for line in read(&coded)?.lines().filter(|l| !l.trim().is_empty()) {
                let word = line
                    .trim()
                    .chars()
                    .map(|c| c.to_digit(10).ok_or_else(|| anyhow!("bad coded symbol `{c}`")))
                    .collect::<Result<Vec<_>>>()?;
                let d = decode(&Word(word), &map)?;
                let mut text = String::new();
                for (i, sym) in d.window.rows[0].symbols.iter().enumerate() {
                    text.push_str(sym);
                    if d.window.rows[0].markers.contains(&(i as i64)) {
                        text.push('|');
                    }
                }
                if d.skipped > 0 {
                    writeln!(out, "(skipped {}) {text}", d.skipped)?;
                } else {
                    writeln!(out, "{text}")?;
                }
            }
        }
        Command::EncodeCountable { array, profile } => {
            let w = load_array(&array)?;
            let p = parse_profile(&profile)?;
            let labels = CountableLabeling::from_windows([&w], w.height())?;
            let code = encode_countable(&w, &p, &labels)?;
            writeln!(out, "{}", write_countable(&code))?;
            let back = decode_countable(&code, w.start, w.height(), &labels)?;
            if back != w {
                bail!("decoded window differs from the input");
            }
            writeln!(out, "roundtrip ok, {} label(s)", labels.len())?;
        }
        Command::Dot { diagram, depth, caps } => {
            let d = load_diagram(&diagram)?;
            let d = match depth {
                Some(k) => reach(d, k, &caps)?,
                None => d,
            };
            out.push_str(&emit_dot(&d));
        }
    }
    Ok(Answer::Yes(out))
}

fn verdict(ok: bool, text: String) -> Answer {
    if ok {
        Answer::Yes(text)
    } else {
        Answer::No(text)
    }
}

fn digits(w: &Word) -> String {
    w.0.iter().map(|d| char::from_digit(*d, 10).unwrap_or('?')).collect()
}

fn build_code(s: &SubshiftSpec, code: &CodeArgs) -> Result<(zerodim::compression::CompressionMap, usize)> {
    let ell = match code.ell {
        Some(l) => l,
        None => choose_ell(s.entropy_estimate(code.entropy_n)?)?,
    };
    let mut family = CodeFamily::new(ell, code.s)?;
    let map = compress(&word_rectangles(s, code.block), &mut family)?;
    Ok((map, ell))
}

/// A row written with the subshift's tokens, cut into blocks of the given length.
fn marked_row(s: &SubshiftSpec, line: &str, block: usize) -> Result<ArrayWindow> {
    let compact: String = line.chars().filter(|&c| c != '|').collect();
    let word = s.alphabet().parse_word(&compact)?;
    if block == 0 || word.len() % block != 0 {
        bail!("row length {} is not a multiple of the block length {block}", word.len());
    }
    let markers = (0..=word.len() / block).map(|b| (b * block) as i64 - 1);
    Ok(ArrayWindow::from_word(s.alphabet().tokens(), &word, 0, markers))
}
