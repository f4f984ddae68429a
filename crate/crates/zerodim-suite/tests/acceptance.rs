//! Acceptance suite: one PASS/FAIL line per criterion, with the tolerances
//! and time limits pinned below. Exits non-zero if any criterion fails.

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zerodim::arrays::{
    auto_cover, free_block_rectangles, krieger_markers, word_rectangles, ArrayWindow, MarkerProfile, Row,
    DEFAULT_RADIUS_CAP,
};
use zerodim::bratteli::{
    decisive_check, k_symbol, path_to_array, vershik_orbit, ExtremalCount, FinitePath, Interior, OrbitEnd,
    OrderedBratteliDiagram, Status, TailPolicy, Witness,
};
use zerodim::compression::{
    build_family, choose_ell, compress, decode, decode_countable, encode_countable, recode, CodeFamily,
    CompressionError, CountableLabeling,
};
use zerodim::fixtures;
use zerodim::semigroup::{decompose_pq, frobenius, GeneratorSet};
use zerodim::symbolic::Word;

const SEED: u64 = 0x5eed_2026;

struct Outcome {
    pass: bool,
    detail: String,
    info: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into(), info: Vec::new() }
    }
}

/// Name, time limit in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("entropy convergence", 1, entropy_convergence),
        ("krieger markers", 10, krieger),
        ("frobenius oracle equivalence", 5, frobenius_oracle),
        ("vershik counter", 1, vershik_counter),
        ("conjugacy fixtures", 10, conjugacy_fixtures),
        ("decisiveness verdicts", 10, decisiveness_verdicts),
        ("shift commutation", 10, shift_commutation),
        ("compression roundtrip", 30, compression_roundtrip),
        ("countable codec roundtrip", 5, countable_roundtrip),
        ("structural identity", 5, structural_identity),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let mut out = run();
        let elapsed = t.elapsed();
        if elapsed > Duration::from_secs(*limit) {
            out.pass = false;
            out.detail += &format!("; time limit {limit} s exceeded");
        }
        if !out.pass {
            failed += 1;
        }
        let tag = if out.pass { "PASS" } else { "FAIL" };
        println!("{tag} {:>2} {name} ({:.2} s): {}", i + 1, elapsed.as_secs_f64(), out.detail);
        for line in &out.info {
            println!("        {line}");
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn entropy_convergence() -> Outcome {
    let golden = fixtures::golden();
    let brute = (0u32..1 << 20).filter(|x| x & (x >> 1) == 0).count();
    let count = golden.language_count(20);
    let h = golden.entropy_estimate(20).expect("n > 0");
    let expected = (17711f64).log2() / 20.0;
    let limit = ((1.0 + 5f64.sqrt()) / 2.0).log2();
    let pass = brute == 17711 && count == 17711 && (h - expected).abs() < 1e-12 && (h - limit).abs() < 0.02;
    Outcome::new(
        pass,
        format!("|B_20| = {count} (brute force {brute}), h_20 = {h:.4}, |h_20 - log2 phi| = {:.4}", (h - limit).abs()),
    )
}

fn krieger() -> Outcome {
    let full2 = fixtures::full2();
    let mut pass = true;
    let mut parts = Vec::new();
    for n in 2..=5 {
        let r = n / 2;
        let cover = auto_cover(&full2, n, r);
        match krieger_markers(&full2, n, &cover, DEFAULT_RADIUS_CAP) {
            Ok(out) => {
                let rep = &out.report;
                let ok = rep.separated && rep.covered();
                pass &= ok;
                parts.push(format!(
                    "n={n}: separated={}, radius {}, {} uncovered words of length {} ({} periodic)",
                    rep.separated,
                    rep.radius,
                    rep.uncovered.len(),
                    rep.window + 2 * rep.radius,
                    rep.periodic_uncovered().count()
                ));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("n={n}: {e}"));
                if let Ok(out) = krieger_markers(&full2, n, &cover, 8) {
                    let rep = &out.report;
                    parts.push(format!(
                        "n={n} with the cap raised to 8: separated={}, radius {}, {} uncovered words",
                        rep.separated,
                        rep.radius,
                        rep.uncovered.len()
                    ));
                }
            }
        }
    }
    let mut out = Outcome::new(pass, "every n in 2..=5 must be separated and cover all windows of 2n-1 centers");
    out.info = parts;
    out.info.push(
        "the constant word 0^m is uncovered for every cover: an n-separated set cannot meet a fixed point".into(),
    );
    out
}

/// Is `v` a nonnegative combination of `gens`? Plain coefficient search.
fn representable(v: u64, gens: &[u64]) -> bool {
    match gens.split_first() {
        None => v == 0,
        Some((&g, rest)) => (0..=v / g).any(|c| representable(v - c * g, rest)),
    }
}

fn frobenius_oracle() -> Outcome {
    let mut sets = Vec::new();
    for a in 1..=30u64 {
        sets.push(vec![a]);
        for b in a + 1..=30 {
            sets.push(vec![a, b]);
            for c in b + 1..=30 {
                sets.push(vec![a, b, c]);
            }
        }
    }
    let mut bad = Vec::new();
    for set in &sets {
        let r = frobenius(&GeneratorSet::new(set.clone()).unwrap()).unwrap();
        let g = set.iter().fold(0, |x, &y| zerodim::semigroup::gcd(x, y));
        let reduced: Vec<u64> = set.iter().map(|x| x / g).collect();
        let ok = if reduced[0] == 1 {
            r.frobenius == -(g as i64)
        } else {
            let f = (r.frobenius / g as i64) as u64;
            r.frobenius % g as i64 == 0
                && !representable(f, &reduced)
                && (f + 1..=f + reduced[0]).all(|v| representable(v, &reduced))
        };
        if !ok {
            bad.push(format!("{set:?}"));
        }
    }
    let mut checked = 0;
    for n in 1..=12u64 {
        for m in 0..=n * (n + 1) + 50 {
            checked += 1;
            let best = (0..=m / n).rev().find(|&p| (m - p * n) % (n + 1) == 0);
            let ok = match (decompose_pq(m, n), best) {
                (Ok((p, q)), Some(b)) => p * n + q * (n + 1) == m && p == b,
                (Err(_), None) => true,
                _ => false,
            };
            if !ok {
                bad.push(format!("decompose {m} {n}"));
            }
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!("{} generator sets, {checked} decompositions, mismatches {:?}", sets.len(), bad),
    )
}

fn vershik_counter() -> Outcome {
    let mut failures = Vec::new();
    for k in 1..=10 {
        let d = fixtures::odometer(k);
        let top = d.vertices(k).next().unwrap();
        let start = d.minimal_path(top);
        let total = 1usize << k;
        let orbit = vershik_orbit(&d, &start, total, TailPolicy::TruncateAtK, 0).unwrap();
        let ranks: Vec<u128> = orbit.paths.iter().map(|p| p.rank(&d)).collect();
        let distinct: HashSet<&FinitePath> = orbit.paths.iter().collect();
        let in_order = ranks.iter().enumerate().all(|(i, &r)| r == i as u128 + 1);
        if orbit.paths.len() != total || distinct.len() != total || !in_order || orbit.end != OrbitEnd::Maximal {
            failures.push(k);
        }
    }
    Outcome::new(failures.is_empty(), format!("depths 1..=10, failures at {failures:?}"))
}

/// `(n, order)` of the edge from `w_{n+1}` into `v_n`, or `None` for the all-`w` path.
fn crossing(d: &OrderedBratteliDiagram, p: &FinitePath) -> Option<(usize, usize)> {
    (2..=p.depth()).rev().find_map(|level| {
        let e = d.edge(level, p.edges[level - 1]);
        let from = d.levels()[level][e.source].starts_with('w');
        let to = d.levels()[level - 1][e.target].starts_with('v');
        (from && to).then_some((level - 1, e.order))
    })
}

fn conjugacy_fixtures() -> Outcome {
    let e1 = fixtures::example1().extended(8);
    let mut mismatches = 0;
    let mut total = 0;
    let mut sample = None;
    for k in 2..=8 {
        let w = e1.vertex(k, &e1.levels()[k][1]).unwrap();
        for p in e1.paths_from(w) {
            total += 1;
            let expected: i64 = match crossing(&e1, &p) {
                None => 0,
                Some((n, 2)) => n as i64,
                Some((n, 0)) => -(n as i64),
                Some(_) => unreachable!("example 1 orders are 0, 1, 2"),
            };
            let a = path_to_array(&e1, &p);
            let one =
                (a.start..=a.end()).find(|&c| (1..=k).all(|row| a.symbol(row, c).is_some_and(|s| s.starts_with('w'))));
            if one != Some(expected) {
                mismatches += 1;
                sample.get_or_insert((p.labels(&e1), expected, one));
            }
        }
    }
    let example1_ok = mismatches == 0;

    let e3 = fixtures::example3().extended(8);
    let number = |p: &FinitePath| match crossing(&e3, p) {
        None => 0,
        Some((n, 1)) => 2 * n - 1,
        Some((n, 2)) => 2 * n,
        Some(_) => usize::MAX,
    };
    let mut example3_ok = true;
    for k in 2..=8 {
        let w = e3.vertex(k, &e3.levels()[k][1]).unwrap();
        let start = e3.minimal_path(w);
        let orbit = vershik_orbit(&e3, &start, 2 * (k - 1) + 1, TailPolicy::TruncateAtK, 0).unwrap();
        let numbers: Vec<usize> = orbit.paths.iter().map(number).collect();
        example3_ok &= numbers == (0..=2 * (k - 1)).collect::<Vec<_>>() && orbit.end == OrbitEnd::Maximal;
        for p in e3.paths_from(w) {
            if let Some(q) = p.successor(&e3) {
                example3_ok &= number(&q) == number(&p) + 1;
            }
        }
    }
    let mut out = Outcome::new(
        example1_ok && example3_ok,
        format!(
            "example 1: {} of {total} paths place the 1 as stated; example 3 counts n -> n+1: {example3_ok}",
            total - mismatches
        ),
    );
    if let Some((labels, expected, got)) = sample {
        out.info.push(format!("example 1 path {labels:?}: stated position {expected}, array position {got:?}"));
        out.info.push("the arrays place the 1 at -n for order 2 and +n for order 0: the mirror image of the stated correspondence".into());
    }
    out
}

fn decisiveness_verdicts() -> Outcome {
    let depth = 8;
    let stationary = |d: &OrderedBratteliDiagram| decisive_check(d, depth, TailPolicy::StationaryRepeat).unwrap();
    let mut matched = Vec::new();
    let mut missed = Vec::new();
    let mut record =
        |name: &str, ok: bool| if ok { matched.push(name.to_string()) } else { missed.push(name.to_string()) };

    for (name, d) in
        [("example1", fixtures::example1()), ("example2", fixtures::example2()), ("odometer", fixtures::odometer(1))]
    {
        record(name, stationary(&d).status == Status::DecisiveEvidence);
    }
    let skew = stationary(&fixtures::skew(2));
    record(
        "skew",
        skew.status == Status::NonDecisive
            && matches!(&skew.witness, Some(Witness::Continuity(w)) if w.image_divergence == 1),
    );
    let e3 = stationary(&fixtures::example3());
    record(
        "example3",
        e3.status == Status::NonDecisive
            && e3.witness == Some(Witness::Count { max: ExtremalCount::Finite(1), min: ExtremalCount::Finite(2) }),
    );
    let med = decisive_check(&fixtures::medynets(depth), depth, TailPolicy::TruncateAtK).unwrap();
    let at_u = |i: &Interior| matches!(i, Interior::Large { vertex, .. } if vertex == "u");
    record(
        "medynets",
        med.status == Status::NonDecisive
            && matches!(&med.witness, Some(Witness::Interior { max, min }) if at_u(max) || at_u(min)),
    );
    Outcome::new(missed.is_empty(), format!("{} of 6 verdicts match; missed {missed:?}", matched.len()))
}

fn shift_commutation() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (name, d) in fixtures::DIAGRAM_NAMES.iter().zip(fixtures::all_diagrams(6)) {
        for k in 0..=d.depth().min(6) {
            for p in d.paths_at(k) {
                if let Some(q) = p.successor(&d) {
                    checked += 1;
                    let a = path_to_array(&d, &p).shifted_left();
                    let b = path_to_array(&d, &q);
                    let (lo, hi) = (a.start.max(b.start), a.end().min(b.end()));
                    if a.restrict(lo, hi) != b.restrict(lo, hi) {
                        bad.push(format!("{name} {:?}", p.labels(&d)));
                    }
                }
            }
        }
    }
    Outcome::new(bad.is_empty(), format!("{checked} non-maximal paths, {} mismatches", bad.len()))
}

/// Depth-first over every sequence of at most `left` more blocks appended to
/// `buf`; `ways[i]` counts the parses of `buf[..i]` and grows with it.
fn all_concatenations_parse_once(
    blocks: &[Vec<u32>],
    code: &HashSet<Vec<u32>>,
    buf: &mut Vec<u32>,
    ways: &mut Vec<u64>,
    left: usize,
) -> bool {
    if ways.is_empty() {
        ways.push(1);
    }
    if !buf.is_empty() && ways[buf.len()] != 1 {
        return false;
    }
    left == 0
        || blocks.iter().all(|b| {
            let len = buf.len();
            buf.extend_from_slice(b);
            for end in len + 1..=buf.len() {
                let count =
                    (1..=8.min(end)).filter(|&l| code.contains(&buf[end - l..end])).map(|l| ways[end - l]).sum();
                ways.push(count);
            }
            let ok = all_concatenations_parse_once(blocks, code, buf, ways, left - 1);
            buf.truncate(len);
            ways.truncate(len + 1);
            ok
        })
}

/// Sardinas-Patterson: true when every finite concatenation parses uniquely.
fn uniquely_decodable(code: &HashSet<Vec<u32>>) -> bool {
    let dangling = |a: &[u32], b: &[u32]| (a.len() < b.len() && b.starts_with(a)).then(|| b[a.len()..].to_vec());
    let mut current: BTreeSet<Vec<u32>> = BTreeSet::new();
    for a in code {
        for b in code {
            if let Some(s) = dangling(a, b) {
                current.insert(s);
            }
        }
    }
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    while !current.is_empty() {
        if current.iter().any(|s| code.contains(s)) {
            return false;
        }
        seen.extend(current.iter().cloned());
        let mut next = BTreeSet::new();
        for s in &current {
            for c in code {
                for x in [dangling(c, s), dangling(s, c)].into_iter().flatten() {
                    if !seen.contains(&x) {
                        next.insert(x);
                    }
                }
            }
        }
        current = next;
    }
    true
}

/// A random row of the forbid-"11" subshift cut into blocks of `block`.
fn golden_row(rng: &mut ChaCha8Rng, blocks: usize, block: usize) -> Word {
    let mut w = Vec::with_capacity(blocks * block);
    for _ in 0..blocks * block {
        let s = if w.last() == Some(&1) { 0 } else { rng.gen_range(0..2) };
        w.push(s);
    }
    Word(w)
}

fn compression_roundtrip() -> Outcome {
    let golden = fixtures::golden();
    let rects = word_rectangles(&golden, 8);
    let ell = choose_ell(golden.entropy_estimate(20).unwrap()).unwrap();
    let tokens = golden.alphabet().tokens().to_vec();
    let mut info = Vec::new();

    let roundtrips = |ell: usize, s: usize| -> Result<usize, CompressionError> {
        let map = compress(&rects, &mut CodeFamily::new(ell, s)?)?;
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let mut ok = 0;
        for _ in 0..1000 {
            let blocks = rng.gen_range(1..=8);
            let w = golden_row(&mut rng, blocks, 8);
            let window = ArrayWindow::from_word(&tokens, &w, 0, (0..=blocks as i64).map(|b| 8 * b - 1));
            let back = decode(&recode(&window, &map)?, &map)?;
            ok += usize::from(back.skipped == 0 && back.window == window);
        }
        Ok(ok)
    };

    let attempts: Vec<(usize, Result<usize, CompressionError>)> = (1..=6).map(|s| (s, roundtrips(ell, s))).collect();
    let main_ok = attempts.iter().any(|(_, r)| matches!(r, Ok(1000)));
    for (s, r) in &attempts {
        match r {
            Ok(n) => info.push(format!("ell={ell}, s={s}: {n}/1000 rows roundtrip")),
            Err(e) => info.push(format!("ell={ell}, s={s}: {e}")),
        }
    }
    match roundtrips(ell + 1, 1) {
        Ok(n) => info.push(format!("with ell={} and s=1: {n}/1000 rows roundtrip", ell + 1)),
        Err(e) => info.push(format!("with ell={} and s=1: {e}", ell + 1)),
    }

    let mut unique_ok = true;
    for ell in 2..=3 {
        for s in 1..=2 {
            let blocks: Vec<Vec<u32>> =
                (s + 2..=8).flat_map(|n| build_family(ell, s, n).unwrap()).map(|w| w.0).collect();
            let code: HashSet<Vec<u32>> = blocks.iter().cloned().collect();
            let sp = uniquely_decodable(&code);
            // Literal enumeration of concatenations, as many blocks as stays tractable.
            let reach = (1..=4u32).take_while(|&m| blocks.len().pow(m) <= 5_000_000).max().unwrap_or(1);
            let literal =
                all_concatenations_parse_once(&blocks, &code, &mut Vec::new(), &mut Vec::new(), reach as usize);
            unique_ok &= sp && literal;
            info.push(format!(
                "ell={ell}, s={s}: {} blocks of length <= 8, Sardinas-Patterson {}, every concatenation of <= {reach} blocks parses once: {literal}",
                blocks.len(),
                if sp { "uniquely decodable" } else { "ambiguous" }
            ));
        }
    }
    let mut out = Outcome::new(
        main_ok && unique_ok,
        format!("ell = choose_ell(h) = {ell}, 55 rectangles of length 8; roundtrip at that ell: {main_ok}; unique decomposition: {unique_ok}"),
    );
    out.info = info;
    out
}

/// Random nested markers with row gaps in [2,3], [6,9] and [18,27].
fn countable_window(rng: &mut ChaCha8Rng) -> ArrayWindow {
    let sectors = rng.gen_range(1..=3);
    let mut gaps1 = Vec::new();
    let mut gaps2 = Vec::new();
    let mut gaps3 = Vec::new();
    for _ in 0..sectors {
        let mut top = 0;
        for _ in 0..3 {
            let target = rng.gen_range(6..=9);
            let parts: Vec<usize> = match target {
                6 if rng.gen_bool(0.5) => vec![3, 3],
                6 => vec![2, 2, 2],
                7 => vec![2, 2, 3],
                8 if rng.gen_bool(0.5) => vec![2, 3, 3],
                8 => vec![2, 2, 2, 2],
                _ => vec![3, 3, 3],
            };
            gaps1.extend(parts);
            gaps2.push(target);
            top += target;
        }
        gaps3.push(top);
    }
    let marks = |gaps: &[usize]| -> BTreeSet<i64> {
        std::iter::once(-1)
            .chain(gaps.iter().scan(-1i64, |acc, &g| {
                *acc += g as i64;
                Some(*acc)
            }))
            .collect()
    };
    let width: usize = gaps3.iter().sum();
    let rows = [("a", "b"), ("c", "d"), ("e", "f")]
        .iter()
        .zip([marks(&gaps1), marks(&gaps2), marks(&gaps3)])
        .map(|((x, y), markers)| Row {
            symbols: (0..width).map(|_| if rng.gen_bool(0.5) { x } else { y }.to_string()).collect(),
            markers,
        })
        .collect();
    ArrayWindow::new(0, 1, rows).unwrap()
}

fn countable_roundtrip() -> Outcome {
    let profile = MarkerProfile::new(vec![(2, 3), (6, 9), (18, 27)]);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut roundtrips = 0;
    let mut invariant = true;
    let mut errors = Vec::new();
    for _ in 0..100 {
        let w = countable_window(&mut rng);
        let labels = CountableLabeling::from_windows([&w], 3).unwrap();
        // The code after encoding rows 1..=k is the code of the k-row window.
        for k in 1..=3 {
            let part = ArrayWindow::new(0, 1, w.rows[..k].to_vec()).unwrap();
            let p = MarkerProfile::new(profile.bounds[..k].to_vec());
            match encode_countable(&part, &p, &labels) {
                Ok(code) => {
                    let bounds: Vec<i64> = part.rows[k - 1].markers.iter().copied().collect();
                    invariant &= bounds.windows(2).all(|s| (s[0] + 1..=s[1]).any(|c| code[c as usize].is_none()));
                }
                Err(e) => {
                    invariant = false;
                    errors.push(e.to_string());
                }
            }
        }
        match encode_countable(&w, &profile, &labels).and_then(|c| decode_countable(&c, 0, 3, &labels)) {
            Ok(back) if back == w => roundtrips += 1,
            Ok(_) => errors.push("decoded window differs".into()),
            Err(e) => errors.push(e.to_string()),
        }
    }
    let mut out = Outcome::new(
        roundtrips == 100 && invariant,
        format!("{roundtrips}/100 windows roundtrip; empty slot in every sector after every row: {invariant}"),
    );
    out.info = errors.into_iter().take(3).collect();
    out
}

fn structural_identity() -> Outcome {
    let mut vertices = 0;
    let mut bad = Vec::new();
    for (name, d) in fixtures::DIAGRAM_NAMES.iter().zip(fixtures::all_diagrams(8)) {
        for k in 0..=d.depth().min(8) {
            for v in d.vertices(k) {
                vertices += 1;
                if k_symbol(&d, v).width() as u128 != d.path_count(v) {
                    bad.push(format!("{name}:{}", d.name(v)));
                }
            }
        }
    }
    let free = free_block_rectangles(2).len();
    Outcome::new(
        bad.is_empty() && free >= 16,
        format!("{vertices} vertices, width mismatches {bad:?}; free-block 2-rectangles: {free} (lower bound 16)"),
    )
}
