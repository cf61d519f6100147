//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.
//!
//! Run alone with `cargo test -p lowpm --test acceptance`.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, RngCore};

use lowpm::constructions::random_graph;
use lowpm::graph::choose2;
use lowpm::rng::{instance_rng, seeded};
use lowpm::verify::{
    verify_erdos_gallai, verify_prop2, verify_theorem1, verify_theorem2, verify_tightness, Mode,
    Sampling, VerifyReport,
};
use lowpm::{
    apply_exchange, clique_instance, eg_edge_bound, eg_extremal_graph, enumerate_exchanges,
    local_search_min_weight, oracle_min_weight, parse_instance, proposition2_instance,
    random_with_imbalance, serialize_instance, thm2_bound, Edge, PerfectMatching, SearchPolicy,
    Sign, SignedCompleteGraph, SimpleGraph, Weight, DEFAULT_ORACLE_LIMIT,
};

const SEED: u64 = 20_240_601;
const LIMIT: usize = DEFAULT_ORACLE_LIMIT;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn report_ok(r: &VerifyReport) -> Result<(), String> {
    ensure(r.is_pass(), || format!("{} failures, first: {:?}", r.failures.len(), r.failures.first()))?;
    ensure(r.solver_mismatches() == 0, || {
        format!("{} solver mismatches", r.solver_mismatches())
    })
}

fn within(t: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(t < limit, || format!("{what} took {t:?}, limit {limit:?}"))
}

// ---------------------------------------------------------------------------
// Independent brute-force oracles.

/// Every perfect matching of `0..order`, by straightforward recursion on a
/// vertex list.
fn brute_pms(order: usize) -> Vec<Vec<Edge>> {
    fn rec(vs: &[usize]) -> Vec<Vec<Edge>> {
        if vs.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for i in 1..vs.len() {
            let rest: Vec<usize> = vs[1..]
                .iter()
                .enumerate()
                .filter_map(|(j, &v)| (j + 1 != i).then_some(v))
                .collect();
            for mut p in rec(&rest) {
                p.push((vs[0], vs[i]));
                out.push(p);
            }
        }
        out
    }
    rec(&(0..order).collect::<Vec<_>>())
}

/// Matching number by exhaustive branching: the lowest vertex is either left
/// unmatched or matched to one of its neighbours.
fn brute_matching_number(g: &SimpleGraph) -> usize {
    fn rec(g: &SimpleGraph, free: u32) -> usize {
        if free == 0 {
            return 0;
        }
        let v = free.trailing_zeros() as usize;
        let rest = free & !(1 << v);
        let mut best = rec(g, rest);
        for u in 0..g.order() {
            if rest >> u & 1 == 1 && g.has_edge(v, u) {
                best = best.max(1 + rec(g, rest & !(1 << u)));
            }
        }
        best
    }
    rec(g, ((1u64 << g.order()) - 1) as u32)
}

fn random_signs<R: Rng>(order: usize, p: f64, rng: &mut R) -> SignedCompleteGraph {
    SignedCompleteGraph::from_fn(order, |_, _| {
        if rng.gen_bool(p) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    })
    .unwrap()
}

// ---------------------------------------------------------------------------
// Shared corpus: balanced instances of order <= 12 plus the constructions.

struct Corpus {
    balanced: Vec<(String, SignedCompleteGraph, u64)>,
    other: Vec<SignedCompleteGraph>,
}

fn corpus() -> Corpus {
    let mut balanced = Vec::new();
    // All 20 balanced labelings of K_4.
    for bits in 0u32..64 {
        if bits.count_ones() == 3 {
            let signs = (0..6)
                .map(|i| if bits >> i & 1 == 1 { Sign::Plus } else { Sign::Minus })
                .collect();
            let g = SignedCompleteGraph::from_signs(4, signs).unwrap();
            balanced.push((format!("k4-{bits:02}"), g, bits as u64));
        }
    }
    for (order, count) in [(8usize, 500usize), (12, 200)] {
        for i in 0..count {
            let s = instance_rng(SEED ^ order as u64, i as u64).next_u64();
            let g = random_with_imbalance(order, 0, s).unwrap();
            balanced.push((format!("k{order}-{i:03}"), g, s));
        }
    }
    let mut other = vec![proposition2_instance(2).unwrap(), proposition2_instance(4).unwrap()];
    for (n, k) in [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3), (4, 2)] {
        other.push(clique_instance(n, k).unwrap());
    }
    let mut rng = seeded(SEED);
    for order in [4, 6, 8, 10, 12] {
        for _ in 0..40 {
            let p = rng.gen::<f64>();
            other.push(random_signs(order, p, &mut rng));
        }
        let m = choose2(order) as Weight;
        for s in (-m..=m).step_by(2) {
            if (s - m).rem_euclid(2) == 0 {
                other.push(random_with_imbalance(order, s, rng.next_u64()).unwrap());
            }
        }
    }
    Corpus { balanced, other }
}

// ---------------------------------------------------------------------------
// Criteria.

fn c1_balanced_exhaustive() -> Outcome {
    let t = Instant::now();
    let r = verify_theorem1(1, Sampling::Exhaustive, 0, Mode::Oracle, LIMIT).map_err(|e| e.to_string())?;
    let t = t.elapsed();
    report_ok(&r)?;
    ensure(r.tested == 20 && r.passed == 20, || format!("{}/{} passed", r.passed, r.tested))?;
    within(t, Duration::from_secs(1), "exhaustive K_4")?;
    Ok(format!("20/20 balanced K_4 labelings have a zero-weight matching ({t:?})"))
}

fn c2_balanced_sampled() -> Outcome {
    let mut lines = Vec::new();
    for (n, samples, limit) in [(2, 1000, Duration::from_secs(10)), (3, 200, Duration::from_secs(120))] {
        let t = Instant::now();
        let r = verify_theorem1(n, Sampling::Sampled(samples), SEED, Mode::Both, LIMIT)
            .map_err(|e| e.to_string())?;
        let t = t.elapsed();
        report_ok(&r)?;
        ensure(r.tested == samples && r.passed == samples, || {
            format!("n={n}: {}/{} passed", r.passed, r.tested)
        })?;
        let s = r.solver.as_ref().ok_or("no solver stats")?;
        ensure(s.checked == samples && s.agreed == samples, || {
            format!("n={n}: solver agreed on {}/{}", s.agreed, s.checked)
        })?;
        within(t, limit, &format!("n={n}"))?;
        lines.push(format!("n={n}: {samples}/{samples} min 0, solver agrees ({t:?})"));
    }
    Ok(lines.join("; "))
}

fn c3_two_part_family() -> Outcome {
    let g = proposition2_instance(2).map_err(|e| e.to_string())?;
    ensure(g.sigma_total() == 2, || format!("sigma_total {}", g.sigma_total()))?;
    let all = brute_pms(8);
    ensure(all.len() == 105, || format!("{} perfect matchings", all.len()))?;
    let brute = all.iter().map(|p| g.sigma_edges(p).abs()).min().unwrap();
    let oracle = oracle_min_weight(&g, LIMIT).map_err(|e| e.to_string())?.min_abs_weight;
    ensure(brute == 2 && oracle == 2, || format!("brute {brute}, oracle {oracle}"))?;
    let r = verify_prop2(2, LIMIT).map_err(|e| e.to_string())?;
    report_ok(&r)?;
    Ok("sigma_total 2, min |sigma| 2 over all 105 matchings".into())
}

fn c4_small_imbalance_n2() -> Outcome {
    let r = verify_theorem2(2, 2, 50, SEED, LIMIT).map_err(|e| e.to_string())?;
    report_ok(&r)?;
    let mut per_s = std::collections::BTreeMap::<Weight, usize>::new();
    for row in &r.rows {
        *per_s.entry(row.s).or_default() += 1;
    }
    let want: Vec<Weight> = (-26..=26).step_by(2).collect();
    ensure(per_s.keys().copied().collect::<Vec<_>>() == want, || format!("grid {per_s:?}"))?;
    ensure(per_s.values().all(|&c| c >= 50), || "fewer than 50 per s".into())?;
    ensure(r.rows.iter().all(|row| row.min_weight.unwrap() <= 2), || "min above 2".into())?;
    Ok(format!("{} instances over 27 imbalances, all min <= 2", r.tested))
}

fn c5_imbalance_bound_n3() -> Outcome {
    let t = Instant::now();
    let r = verify_theorem2(3, 2, 12, SEED, LIMIT).map_err(|e| e.to_string())?;
    let t = t.elapsed();
    report_ok(&r)?;
    ensure(r.tested >= 500, || format!("only {} instances", r.tested))?;
    ensure(r.rows.iter().all(|row| row.s.abs() < 44), || "imbalance out of range".into())?;
    within(t, Duration::from_secs(600), "(3,2) sweep")?;
    Ok(format!("{} order-12 instances with |s| < 44, all min <= 2 ({t:?})", r.tested))
}

fn c6_tightness() -> Outcome {
    for n in 1..=50u64 {
        for k in 1..=n {
            let g = clique_instance(n, k).map_err(|e| e.to_string())?;
            let binomial = 2 * choose2((3 * n + k) as usize) as Weight - choose2((4 * n) as usize) as Weight;
            ensure(g.sigma_total() == thm2_bound(n, k) && binomial == thm2_bound(n, k), || {
                format!("(n,k)=({n},{k}): sigma_total {} bound {}", g.sigma_total(), thm2_bound(n, k))
            })?;
        }
    }
    for (n, k) in [(2, 2), (3, 2), (3, 3), (4, 2)] {
        let r = verify_tightness(n, k, LIMIT).map_err(|e| e.to_string())?;
        report_ok(&r)?;
        ensure(!r.partial, || format!("({n},{k}) skipped the oracle"))?;
        let w = oracle_min_weight(&clique_instance(n, k).unwrap(), LIMIT)
            .map_err(|e| e.to_string())?
            .min_abs_weight;
        ensure(w == 2 * k as Weight, || format!("({n},{k}): min {w}"))?;
    }
    Ok("identity holds for 1<=k<=n<=50; min = 2k at (2,2),(3,2),(3,3),(4,2)".into())
}

fn c7_erdos_gallai() -> Outcome {
    for (n, k) in [(2, 1), (2, 2), (3, 1), (3, 2), (3, 3)] {
        let g = eg_extremal_graph(n, k).map_err(|e| e.to_string())?;
        let bound = eg_edge_bound(n, k).map_err(|e| e.to_string())?;
        let nu = g.matching_number() as u64;
        ensure(g.edge_count() as u64 == bound && nu == n - k, || {
            format!("({n},{k}): {} edges (bound {bound}), nu {nu}", g.edge_count())
        })?;
        if g.order() <= 12 {
            ensure(brute_matching_number(&g) as u64 == n - k, || format!("({n},{k}) brute nu"))?;
        }
    }
    let mut total = 0;
    for (n, k) in [(2, 1), (2, 2)] {
        let r = verify_erdos_gallai(n, k, 1000, SEED).map_err(|e| e.to_string())?;
        report_ok(&r)?;
        total += r.rows.len();
    }
    ensure(total >= 1000, || format!("{total} random graphs"))?;
    Ok(format!("5 extremal graphs exact; contrapositive on {total} random order-8 graphs"))
}

fn c8_properties() -> Outcome {
    // Exchange delta soundness.
    let mut rng = seeded(SEED + 8);
    let mut triples = 0usize;
    while triples < 100_000 {
        let order = 2 * rng.gen_range(2..=8);
        let p = rng.gen::<f64>();
        let g = random_signs(order, p, &mut rng);
        for _ in 0..20 {
            let m = PerfectMatching::random(order, &mut rng);
            let w = g.sigma_matching(&m);
            for _ in 0..5 {
                let r = rng.gen_range(2..=4.min(order / 2));
                let xs: Vec<_> = enumerate_exchanges(&g, &m, r).collect();
                let x = &xs[rng.gen_range(0..xs.len())];
                let n = apply_exchange(&m, x).map_err(|e| e.to_string())?;
                let recomputed: Weight = n.pairs().iter().map(|&(a, b)| g.value(a, b)).sum();
                ensure(recomputed == w + x.delta(), || {
                    format!("delta mismatch on {}", serialize_instance(&g))
                })?;
                triples += 1;
            }
        }
    }

    // Blossom against brute force on every order <= 10 corpus graph.
    let c = corpus();
    let mut graphs: Vec<SimpleGraph> = Vec::new();
    for g in c.balanced.iter().map(|(_, g, _)| g).chain(&c.other) {
        if g.order() <= 10 {
            graphs.push(g.sign_subgraph(Sign::Plus));
            graphs.push(g.sign_subgraph(Sign::Minus));
        }
    }
    for order in 1..=10usize {
        for m in 0..=choose2(order) {
            graphs.push(random_graph(order, m, &mut rng).unwrap());
        }
    }
    for (n, k) in [(2, 1), (2, 2)] {
        graphs.push(eg_extremal_graph(n, k).unwrap());
    }
    for g in &graphs {
        let fast = g.maximum_matching();
        let mut seen = vec![false; g.order()];
        for &(a, b) in &fast {
            ensure(g.has_edge(a, b) && !seen[a] && !seen[b], || "blossom returned a non-matching".into())?;
            seen[a] = true;
            seen[b] = true;
        }
        ensure(fast.len() == brute_matching_number(g), || {
            format!("blossom {} vs brute {} on {:?}", fast.len(), brute_matching_number(g), g.edges())
        })?;
    }

    // Round trip on every generated instance.
    let mut round_trips = 0;
    for g in c.balanced.iter().map(|(_, g, _)| g).chain(&c.other) {
        let back = parse_instance(&serialize_instance(g)).map_err(|e| e.to_string())?;
        ensure(&back == g, || "round trip changed the instance".into())?;
        round_trips += 1;
    }
    Ok(format!(
        "{triples} exchange triples, {} blossom graphs, {round_trips} round trips, zero failures",
        graphs.len()
    ))
}

fn c9_solver_plateau() -> Outcome {
    let c = corpus();
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("solver-shortfalls");
    let mut shortfalls = Vec::new();
    for (name, g, seed) in &c.balanced {
        let (m, rep) = local_search_min_weight(g, &SearchPolicy::with_seed(*seed)).map_err(|e| e.to_string())?;
        if g.sigma_matching(&m) != 0 {
            let oracle = oracle_min_weight(g, LIMIT).map_err(|e| e.to_string())?.min_abs_weight;
            std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
            let path = dir.join(format!("{name}.sk"));
            std::fs::write(&path, serialize_instance(g)).map_err(|e| e.to_string())?;
            shortfalls.push(format!("{} (solver {}, oracle {oracle})", path.display(), rep.final_weight));
        }
    }
    ensure(shortfalls.is_empty(), || format!("shortfalls: {}", shortfalls.join(", ")))?;
    Ok(format!("{} balanced instances of order <= 12 all reach weight 0", c.balanced.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 balanced K_4, exhaustive", c1_balanced_exhaustive),
        ("2 balanced K_8 and K_12, sampled", c2_balanced_sampled),
        ("3 two-part family, k=2", c3_two_part_family),
        ("4 small imbalance in K_8", c4_small_imbalance_n2),
        ("5 imbalance bound, (n,k)=(3,2)", c5_imbalance_bound_n3),
        ("6 tightness", c6_tightness),
        ("7 erdos-gallai", c7_erdos_gallai),
        ("8 property suites", c8_properties),
        ("9 solver plateau behavior", c9_solver_plateau),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {name}: PASS ({:.2?}) {detail}", t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL ({:.2?}) {why}", t.elapsed());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
