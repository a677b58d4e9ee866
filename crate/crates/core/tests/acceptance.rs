//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use n2closure::eligibility::is_nk_eligible;
use n2closure::oracle::{
    circumference, find_divergent_closures, find_nk_counterexample, random_connected_graph,
    random_path_triple, Budget, OracleResult, SearchConfig,
};
use n2closure::{
    check_counting_bounds, classify_path, classify_vertex, edge, local_completion, n2_closure,
    n2_eligible_set, n_closure, pull_back_cycle, ChoiceStrategy, Cycle, Graph, Rung,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const PS: [f64; 3] = [0.25, 0.4, 0.6];
const ENSEMBLE: usize = 1_080;

struct Instance {
    graph: Graph,
    oracle: OracleResult,
}

fn oracle(g: &Graph) -> OracleResult {
    circumference(g, Budget::default()).expect("ensemble graphs stay within the oracle budget")
}

/// `ENSEMBLE` connected graphs cycling through n = 4..=12 and the three densities.
fn ensemble() -> Vec<Instance> {
    (0..ENSEMBLE)
        .into_par_iter()
        .map(|i| {
            let n = 4 + i % 9;
            let p = PS[(i / 9) % 3];
            let graph = random_connected_graph(n, p, 1_000 + i as u64).expect("connected sample");
            let oracle = oracle(&graph);
            Instance { graph, oracle }
        })
        .collect()
}

type Check = Result<String, String>;

fn first_failure<T: Sync>(
    items: &[T],
    f: impl Fn(&T) -> Result<(), String> + Sync,
) -> Result<(), String> {
    let errs: Vec<String> = items.par_iter().filter_map(|t| f(t).err()).collect();
    match errs.into_iter().next() {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn describe(g: &Graph) -> String {
    let es: Vec<String> = g.edges().map(|(a, b)| format!("{a}-{b}")).collect();
    format!("n={} edges [{}]", g.n(), es.join(" "))
}

fn c1_completion(ens: &[Instance]) -> Check {
    let checked: usize = ens.iter().map(|i| n2_eligible_set(&i.graph).len()).sum();
    first_failure(ens, |inst| {
        for x in n2_eligible_set(&inst.graph).iter() {
            let gx = local_completion(&inst.graph, x).unwrap().graph_x;
            let c = oracle(&gx).circumference;
            if c != inst.oracle.circumference {
                return Err(format!(
                    "x={x}: {} -> {c} on {}",
                    inst.oracle.circumference,
                    describe(&inst.graph)
                ));
            }
        }
        Ok(())
    })?;
    Ok(format!(
        "{} graphs, {checked} N2-eligible vertices, circumference unchanged",
        ens.len()
    ))
}

fn c2_closure(ens: &[Instance]) -> Check {
    first_failure(ens, |inst| {
        for s in ChoiceStrategy::all(17) {
            let fin = n2_closure(&inst.graph, s)
                .map_err(|e| e.to_string())?
                .final_graph;
            if !n2_eligible_set(&fin).is_empty() {
                return Err(format!(
                    "{s}: N2-eligible vertex left on {}",
                    describe(&inst.graph)
                ));
            }
            let o = oracle(&fin);
            if o.circumference != inst.oracle.circumference
                || o.hamiltonian != inst.oracle.hamiltonian
            {
                return Err(format!(
                    "{s}: circumference {} -> {} on {}",
                    inst.oracle.circumference,
                    o.circumference,
                    describe(&inst.graph)
                ));
            }
        }
        Ok(())
    })?;
    let ham = ens.iter().filter(|i| i.oracle.hamiltonian).count();
    Ok(format!(
        "{} graphs x 4 strategies ({ham} Hamiltonian), closures N2-free, circumference kept",
        ens.len()
    ))
}

fn c3_pull_back(ens: &[Instance]) -> Check {
    // Counts (graph, x) pairs; the ones whose longest G_x cycle uses an added
    // edge must reach 200, drawing extra graphs if the ensemble falls short.
    let mut graphs: Vec<Graph> = ens.iter().map(|i| i.graph.clone()).collect();
    let mut extra = 0u64;
    loop {
        let found = graphs
            .par_iter()
            .map(|g| {
                let (mut total, mut nontrivial) = (0, 0);
                for x in n2_eligible_set(g).iter() {
                    let gx = local_completion(g, x).unwrap().graph_x;
                    let Some(w) = oracle(&gx).witness else {
                        continue;
                    };
                    total += 1;
                    if w.edges().any(|(a, b)| !g.adjacent(a, b)) {
                        nontrivial += 1;
                    }
                    let back = pull_back_cycle(g, x, &w)
                        .map_err(|e| format!("x={x}: {e} on {}", describe(g)))?;
                    if !back.is_valid_in(g) || back.vertex_set() != w.vertex_set() {
                        return Err(format!("x={x}: vertex set changed on {}", describe(g)));
                    }
                }
                Ok((total, nontrivial))
            })
            .collect::<Result<Vec<(usize, usize)>, String>>()?;
        let total: usize = found.iter().map(|f| f.0).sum();
        let nontrivial: usize = found.iter().map(|f| f.1).sum();
        if nontrivial >= 200 {
            return Ok(format!(
                "{total} longest G_x cycles pulled back onto the same vertex set ({nontrivial} through added edges)"
            ));
        }
        if extra >= 5_000 {
            return Err(format!("only {nontrivial} instances use an added edge"));
        }
        for _ in 0..200 {
            let i = extra as usize;
            extra += 1;
            if let Some(g) = random_connected_graph(5 + i % 8, PS[i % 3], 50_000 + extra) {
                graphs.push(g);
            }
        }
    }
}

fn c4_counting() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    // Only triples with X non-empty count towards the 1000; the rest are
    // checked too but the bounds are trivial for them.
    let (mut semi, mut alternating, mut with_x, mut draws) = (0, 0, 0, 0u64);
    while with_x < 1_000 {
        draws += 1;
        if draws > 1_000_000 {
            return Err(format!(
                "only {with_x} semi-alternating triples with X non-empty in {draws} draws"
            ));
        }
        let t = random_path_triple(&mut rng);
        let rung = classify_path(&t.graph, &t.path, &t.xs, &t.ys)
            .map_err(|e| e.to_string())?
            .rung;
        if !rung.is_semi() {
            continue;
        }
        semi += 1;
        if !t.xs.is_empty() {
            with_x += 1;
        }
        let r = check_counting_bounds(&t.path, &t.xs, &t.ys);
        let alt = rung == Rung::Alternating;
        alternating += alt as usize;
        if !r.semi || !r.bound1_holds || (r.bound2_applicable && !r.bound2_holds) {
            return Err(format!(
                "bound violated: {r:?} on path {:?}",
                t.path.vertices()
            ));
        }
        if alt != (t.xs.len() + 1 >= t.ys.len()) {
            return Err(format!(
                "alternating iff |X| >= |Y| - 1 fails on {:?}",
                t.path.vertices()
            ));
        }
    }
    Ok(format!("{with_x} semi-alternating triples with X non-empty ({semi} in all, {alternating} alternating) from {draws} draws"))
}

fn c5_facts(ens: &[Instance]) -> Check {
    first_failure(ens, |inst| {
        let g = &inst.graph;
        let simplicial: Vec<_> = g
            .vertices()
            .filter(|&v| g.is_simplicial(v).unwrap())
            .collect();
        for x in g.vertices() {
            let class = g.equivalence_class(x).unwrap();
            let nb = g.open_neighborhood_of_set(&class).unwrap();
            let fail = |what: &str| Err(format!("{what} at x={x} on {}", describe(g)));
            if !g.is_clique(&class).unwrap() {
                return fail("class not a clique");
            }
            if class.iter().any(|u| nb.iter().any(|w| !g.adjacent(u, w))) {
                return fail("[N(class), class] incomplete");
            }
            if class.union(&nb) != g.closed_neighborhood(x).unwrap() {
                return fail("N[class] != N[x]");
            }
            let gx = local_completion(g, x).unwrap().graph_x;
            for u in class.iter() {
                if gx.closed_neighborhood(u).unwrap() != g.closed_neighborhood(u).unwrap() {
                    return fail("closed neighbourhood of a twin changed");
                }
                if !gx.is_simplicial(u).unwrap() {
                    return fail("twin not simplicial after completion");
                }
            }
            if simplicial.iter().any(|&v| !gx.is_simplicial(v).unwrap()) {
                return fail("simplicial vertex lost");
            }
        }
        Ok(())
    })?;
    let vertices: usize = ens.iter().map(|i| i.graph.n()).sum();
    Ok(format!("{vertices} vertices checked"))
}

fn c6_n3() -> Check {
    let cfg = SearchConfig {
        samples: 100_000,
        seed: 0,
    };
    let w = find_nk_counterexample(3, 8, cfg)
        .map_err(|e| e.to_string())?
        .ok_or("no witness within 100000 samples at n = 8 after exhaustive n <= 7")?;
    let g = &w.graph;
    let r = classify_vertex(g, w.vertex).map_err(|e| e.to_string())?;
    let before = oracle(g);
    let after = oracle(&local_completion(g, w.vertex).unwrap().graph_x);
    let ok = g.is_connected()
        && is_nk_eligible(g, w.vertex, 3).unwrap()
        && !r.n2_eligible
        && after.circumference > before.circumference;
    if !ok {
        return Err(format!("witness fails certification: {}", describe(g)));
    }
    Ok(format!(
        "witness on {} vertices, vertex {}: circumference {} -> {} (Hamiltonian after: {})",
        g.n(),
        w.vertex,
        before.circumference,
        after.circumference,
        after.hamiltonian
    ))
}

fn c7_divergence() -> (bool, String) {
    let cfg = SearchConfig {
        samples: 100_000,
        seed: 0,
    };
    match find_divergent_closures(9, cfg) {
        Err(e) => (false, e.to_string()),
        Ok(None) => (
            true,
            "OPEN: no divergent pair among all graphs with n <= 7 and 100000 samples each at n = 8, 9".into(),
        ),
        Ok(Some(w)) => {
            let a = n2_closure(&w.graph, w.first).unwrap().final_graph;
            let b = n2_closure(&w.graph, w.second).unwrap().final_graph;
            let ok = a == w.first_final
                && b == w.second_final
                && a != b
                && n2_eligible_set(&a).is_empty()
                && n2_eligible_set(&b).is_empty();
            let msg = format!(
                "{} vs {} on {}: {} vs {} edges, both N2-free",
                w.first,
                w.second,
                describe(&w.graph),
                a.edge_count(),
                b.edge_count()
            );
            (ok, msg)
        }
    }
}

fn c8_n_closure(ens: &[Instance]) -> Check {
    first_failure(ens, |inst| {
        let a = n_closure(&inst.graph).unwrap().final_graph;
        let b = n2_closure(&inst.graph, ChoiceStrategy::NFirst)
            .unwrap()
            .final_graph;
        let missing = a.edges().find(|&(u, v)| !b.adjacent(u, v));
        match missing {
            Some(e) => Err(format!("edge {e:?} missing on {}", describe(&inst.graph))),
            None => Ok(()),
        }
    })?;
    Ok(format!(
        "{} graphs: N-closure inside the n-first N2-closure",
        ens.len()
    ))
}

fn labelled(labels: &[&str], edges: &[(&str, &str)]) -> Graph {
    let owned: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
    let g0 = Graph::with_labels(owned.clone(), std::iter::empty()).unwrap();
    let es: Vec<_> = edges
        .iter()
        .map(|(a, b)| (g0.vertex(a).unwrap().0, g0.vertex(b).unwrap().0))
        .collect();
    Graph::with_labels(owned, es).unwrap()
}

fn c9_fixtures() -> Check {
    let k = labelled(
        &["a", "b", "c", "d"],
        &[("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
    );
    let flags: Vec<(bool, bool)> = k
        .vertices()
        .map(|v| classify_vertex(&k, v).unwrap())
        .map(|r| (r.n_eligible, r.n2_eligible))
        .collect();
    if flags != [(true, true), (true, true), (false, false), (false, false)] {
        return Err(format!("K4-minus-cd eligibility {flags:?}"));
    }
    let ka = k.vertex("a").unwrap();
    let added = local_completion(&k, ka).unwrap().added_edges;
    if added != [edge(k.vertex("c").unwrap(), k.vertex("d").unwrap())] {
        return Err("K4-minus-cd completion should add cd only".into());
    }
    for s in ChoiceStrategy::all(1) {
        if n2_closure(&k, s).unwrap().final_graph.edge_count() != 6 {
            return Err(format!("K4-minus-cd closure under {s} is not K4"));
        }
    }

    let w = labelled(
        &["x", "x'", "a", "b", "c"],
        &[
            ("x", "x'"),
            ("x", "a"),
            ("x", "b"),
            ("x", "c"),
            ("x'", "a"),
            ("x'", "b"),
            ("x'", "c"),
            ("a", "b"),
        ],
    );
    let x = w.vertex("x").unwrap();
    let r = classify_vertex(&w, x).unwrap();
    if !(r.n2_eligible && !r.n_eligible && r.chi2 == 1 && r.class_bar_x.len() == 2) {
        return Err(format!("W5 report for x: {r:?}"));
    }
    for s in ChoiceStrategy::all(1) {
        let t = n2_closure(&w, s).unwrap();
        if t.final_graph.edge_count() != 10 || t.steps.len() != 1 {
            return Err(format!("W5 closure under {s} is not K5 in one step"));
        }
    }
    if !n_closure(&w).unwrap().steps.is_empty() {
        return Err("W5 has no N-eligible vertex, the N-closure must be empty".into());
    }
    let wx = local_completion(&w, x).unwrap().graph_x;
    let c = Cycle::from_labels(&wx, &["x", "a", "b", "c", "x'"]).unwrap();
    let back = pull_back_cycle(&w, x, &c).unwrap();
    if back.len() != 5 || !back.is_valid_in(&w) {
        return Err("W5 pull-back of x,a,b,c,x' is not a Hamilton cycle of W5".into());
    }
    Ok("K4-minus-cd closes to K4, W5 closes to K5, x in W5 is N2- but not N-eligible".into())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let ens = ensemble();
    println!(
        "ensemble: {} connected graphs, n in 4..=12, p in {PS:?} ({:.1?})",
        ens.len(),
        start.elapsed()
    );

    let mut failed = 0;
    let mut report = |id: u32, name: &str, t: Instant, r: Result<String, String>| {
        let (tag, msg) = match r {
            Ok(m) => ("PASS", m),
            Err(m) => {
                failed += 1;
                ("FAIL", m)
            }
        };
        println!("criterion {id} {tag} [{name}] {msg} ({:.1?})", t.elapsed());
    };

    let t = Instant::now();
    report(
        1,
        "completion preserves circumference",
        t,
        c1_completion(&ens),
    );
    let t = Instant::now();
    report(2, "closure preserves circumference", t, c2_closure(&ens));
    let t = Instant::now();
    report(3, "pull-back soundness", t, c3_pull_back(&ens));
    let t = Instant::now();
    report(4, "semi-alternating counting bounds", t, c4_counting());
    let t = Instant::now();
    report(5, "twin class and completion facts", t, c5_facts(&ens));
    let t = Instant::now();
    report(6, "N3 counterexample", t, c6_n3());
    let t = Instant::now();
    let (ok, msg) = c7_divergence();
    report(
        7,
        "closure non-uniqueness",
        t,
        if ok { Ok(msg) } else { Err(msg) },
    );
    let t = Instant::now();
    report(8, "N-closure inside n-first closure", t, c8_n_closure(&ens));
    let t = Instant::now();
    report(9, "worked fixtures", t, c9_fixtures());

    println!(
        "acceptance: {} of 9 criteria passed ({:.1?})",
        9 - failed,
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
