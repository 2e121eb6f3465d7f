//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line per
//! criterion and exits non-zero if any fails.
//!
//! Run alone with `cargo test -p placenet-cli --test acceptance`.

mod brute;
mod enumerate;

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use placenet::embed::{nearest_categories, train_skipgram, CategoryCorpus, SkipGramParams};
use placenet::features::{
    algebraic_connectivity, avg_clustering, compute_features, degree_assortativity,
    max_modularity_cnm, FeatureConfig, SpectralOptions, SpectralScope,
};
use placenet::forest::{cross_validated_auc, roc_auc, ForestParams};
use placenet::prevalence::{fractional_counts, log_pearson, PlaceRecord};
use placenet::seeds::derive_seed;
use placenet::similarity::{
    representative_graph, Ensemble, ImportanceVector, Member, RepresentOptions,
};
use placenet::synth::{gen_core_periphery, gen_er};
use placenet::Graph;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use brute::Bits;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn to_graph(b: &Bits) -> Graph {
    let names = (0..b.n()).map(|i| format!("n{i:02}")).collect();
    Graph::from_index_edges(names, &b.edges())
}

fn random_bits(r: &mut ChaCha8Rng, n: usize, p: f64) -> Bits {
    let mut adj = vec![0u32; n];
    for i in 0..n {
        for j in i + 1..n {
            if r.random::<f64>() < p {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    Bits { adj }
}

fn feature_rows(graphs: &[Graph]) -> Vec<Vec<f64>> {
    let cfg = FeatureConfig::default();
    graphs
        .par_iter()
        .map(|g| compute_features(g, &cfg).expect("features").to_vec())
        .collect()
}

fn feature_oracles() -> Outcome {
    let start = Instant::now();
    let levels = enumerate::connected_graphs(7);
    let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
    ensure(counts == [1, 1, 2, 6, 21, 112, 853], || {
        format!("class counts {counts:?}")
    })?;

    let mut suite: Vec<Bits> = levels.into_iter().flatten().collect();
    let classes = suite.len();
    let mut r = ChaCha8Rng::seed_from_u64(0xacce);
    for _ in 0..200 {
        let n = r.random_range(1..=12);
        let p = r.random_range(0.1..0.9);
        suite.push(random_bits(&mut r, n, p));
    }

    let cfg = FeatureConfig::default();
    let results: Vec<Result<f64, String>> = suite
        .par_iter()
        .enumerate()
        .map(|(idx, b)| {
            let lib = compute_features(&to_graph(b), &cfg)
                .map_err(|e| format!("graph {idx}: {e}"))?
                .to_vec();
            let oracle = brute::features(b);
            let mut worst: f64 = 0.0;
            for (f, (x, y)) in lib.iter().zip(&oracle).enumerate() {
                let d = (x - y).abs();
                if d > 1e-6 {
                    return Err(format!(
                        "graph {idx} {:?}: feature {f} = {x}, oracle {y}",
                        b.adj
                    ));
                }
                worst = worst.max(d);
            }
            let bound = brute::exhaustive_modularity(b);
            if lib[9] > bound + 1e-9 {
                return Err(format!(
                    "graph {idx}: modularity {} above exhaustive {bound}",
                    lib[9]
                ));
            }
            Ok(worst)
        })
        .collect();
    let mut worst: f64 = 0.0;
    for res in results {
        worst = worst.max(res?);
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:.1?}")
    })?;
    Ok(format!(
        "{classes} connected classes + 200 random graphs, max deviation {worst:.1e}, {elapsed:.1?}"
    ))
}

fn analytic_values() -> Outcome {
    let g = |edges: &[(&str, &str)]| Graph::from_edges(edges.iter().copied());
    let k4 = g(&[
        ("a", "b"),
        ("a", "c"),
        ("a", "d"),
        ("b", "c"),
        ("b", "d"),
        ("c", "d"),
    ]);
    let k4_minus = g(&[("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")]);
    let k2 = g(&[("a", "b")]);
    let p4 = g(&[("a", "b"), ("b", "c"), ("c", "d")]);
    let s4 = g(&[("h", "a"), ("h", "b"), ("h", "c")]);
    let bridged = g(&[
        ("a", "b"),
        ("b", "c"),
        ("a", "c"),
        ("d", "e"),
        ("e", "f"),
        ("d", "f"),
        ("c", "d"),
    ]);

    let opts = SpectralOptions::default();
    let l2 = |g: &Graph| algebraic_connectivity(g, SpectralScope::LargestComponent, &opts).unwrap();
    let checks = [
        ("lambda2(K4)", l2(&k4), 4.0, 1e-6),
        ("lambda2(K2)", l2(&k2), 2.0, 1e-6),
        ("lambda2(P4)", l2(&p4), 2.0 - 2f64.sqrt(), 1e-6),
        (
            "clustering(K4-e)",
            avg_clustering(&k4_minus),
            5.0 / 6.0,
            1e-9,
        ),
        ("assortativity(S4)", degree_assortativity(&s4), -1.0, 1e-9),
        ("assortativity(P4)", degree_assortativity(&p4), -0.5, 1e-9),
        (
            "modularity(bridged K3s)",
            max_modularity_cnm(&bridged).0,
            6.0 / 7.0 - 0.5,
            1e-12,
        ),
    ];
    for (name, got, want, tol) in checks {
        ensure((got - want).abs() <= tol, || {
            format!("{name} = {got}, expected {want}")
        })?;
    }
    Ok(format!("{} spot values", checks.len()))
}

fn classifier_sanity() -> Outcome {
    let start = Instant::now();
    let master = 31;
    let er: Vec<Graph> = (0..100)
        .map(|i| gen_er(200, 0.02, derive_seed(master, i)))
        .collect();
    let cp: Vec<Graph> = (0..100)
        .map(|i| gen_core_periphery(20, 180, 0.5, 0.02, 0.0145, derive_seed(master, 1000 + i)))
        .collect();
    let params = ForestParams {
        seed: 5,
        ..ForestParams::default()
    };
    let sep = cross_validated_auc(&feature_rows(&er), &feature_rows(&cp), 10, &params)
        .map_err(|e| e.to_string())?
        .folded_auc();
    ensure(sep >= 0.90, || {
        format!("separable folded AUC {sep:.4} < 0.90")
    })?;

    let mut calm = 0;
    let mut worst: f64 = 0.5;
    for run in 0..20u64 {
        let seed = derive_seed(master, 10_000 + run);
        let pool: Vec<Graph> = (0..200)
            .map(|i| gen_er(200, 0.02, derive_seed(seed, i)))
            .collect();
        let rows = feature_rows(&pool);
        let (a, b) = rows.split_at(100);
        let p = ForestParams {
            seed,
            ..ForestParams::default()
        };
        let folded = cross_validated_auc(a, b, 10, &p)
            .map_err(|e| e.to_string())?
            .folded_auc();
        worst = worst.max(folded);
        if folded <= 0.65 {
            calm += 1;
        }
    }
    ensure(calm >= 18, || {
        format!("split-half folded AUC <= 0.65 in only {calm}/20")
    })?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), || {
        format!("took {elapsed:.1?}")
    })?;
    Ok(format!(
        "separable {sep:.4}; split-half <= 0.65 in {calm}/20 (max {worst:.4}); {elapsed:.1?}"
    ))
}

fn auc_exactness() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(4);
    for case in 0..1000 {
        let n = r.random_range(2..=40);
        let levels = r.random_range(1..=8);
        let scores: Vec<f64> = (0..n)
            .map(|_| r.random_range(0..levels) as f64 / 7.0)
            .collect();
        let mut labels: Vec<bool> = (0..n).map(|_| r.random::<bool>()).collect();
        labels[0] = true;
        labels[1] = false;
        labels.shuffle(&mut r);

        let (mut wins2, mut pos, mut neg) = (0u64, 0u64, 0u64);
        for (i, &li) in labels.iter().enumerate() {
            if li {
                pos += 1;
            } else {
                neg += 1;
            }
            for (j, &lj) in labels.iter().enumerate() {
                if li && !lj {
                    wins2 += match scores[i].partial_cmp(&scores[j]).unwrap() {
                        std::cmp::Ordering::Greater => 2,
                        std::cmp::Ordering::Equal => 1,
                        std::cmp::Ordering::Less => 0,
                    };
                }
            }
        }
        let oracle = wins2 as f64 / (2 * pos * neg) as f64;
        let got = roc_auc(&scores, &labels).map_err(|e| e.to_string())?;
        ensure(got == oracle, || {
            format!("case {case}: {got} != pair count {oracle}")
        })?;
        let flipped: Vec<bool> = labels.iter().map(|l| !l).collect();
        let other = roc_auc(&scores, &flipped).map_err(|e| e.to_string())?;
        ensure(got + other == 1.0, || {
            format!("case {case}: {got} + {other} != 1")
        })?;
    }
    Ok("1000 score sets, bitwise equal to pair counts, flip identity exact".into())
}

/// Brute-force representative: ranks from explicit counting over the
/// pooled population, importance-weighted squared deviations from the
/// category mean, smallest id on ties.
fn representative_oracle(cats: &BTreeMap<String, Vec<Member>>, target: &str, w: &[f64]) -> String {
    let pool: Vec<&Member> = cats.values().flatten().collect();
    let rank = |f: usize, x: f64| {
        let below = pool.iter().filter(|m| m.features[f] < x).count() as f64;
        let equal = pool.iter().filter(|m| m.features[f] == x).count() as f64;
        below + (equal + 1.0) / 2.0
    };
    let members = &cats[target];
    let ranks: Vec<Vec<f64>> = members
        .iter()
        .map(|m| (0..w.len()).map(|f| rank(f, m.features[f])).collect())
        .collect();
    let mean: Vec<f64> = (0..w.len())
        .map(|f| ranks.iter().map(|r| r[f]).sum::<f64>() / ranks.len() as f64)
        .collect();
    let mut best: Option<(f64, &str)> = None;
    for (m, r) in members.iter().zip(&ranks) {
        let d = (0..w.len())
            .map(|f| w[f] * (r[f] - mean[f]).powi(2))
            .sum::<f64>()
            .sqrt();
        let better = match best {
            None => true,
            Some((bd, bid)) => d < bd || (d == bd && m.id.as_str() < bid),
        };
        if better {
            best = Some((d, &m.id));
        }
    }
    best.unwrap().1.to_string()
}

fn members(rows: &[(&str, [f64; 2])]) -> Vec<Member> {
    rows.iter()
        .map(|(id, f)| Member {
            id: id.to_string(),
            features: f.to_vec(),
        })
        .collect()
}

fn transform(r: &mut ChaCha8Rng) -> Box<dyn Fn(f64) -> f64> {
    match r.random_range(0..4) {
        0 => {
            let (a, b) = (r.random_range(0.01..100.0), r.random_range(-50.0..50.0));
            Box::new(move |x| a * x + b)
        }
        1 => {
            let c = r.random_range(0.01..0.2);
            Box::new(move |x| (c * x).exp())
        }
        2 => Box::new(|x: f64| x * x * x),
        _ => {
            let s = r.random_range(0.5..3.0);
            Box::new(move |x: f64| x.signum() * x.abs().powf(s) + x)
        }
    }
}

fn representative_selection() -> Outcome {
    let mut cats = BTreeMap::new();
    cats.insert(
        "a".to_string(),
        members(&[
            ("g1", [1.0, 10.0]),
            ("g2", [2.0, 40.0]),
            ("g3", [4.0, 20.0]),
            ("g4", [9.0, 30.0]),
        ]),
    );
    cats.insert(
        "b".to_string(),
        members(&[("h1", [3.0, 5.0]), ("h2", [5.0, 50.0])]),
    );
    let names = vec!["f1".to_string(), "f2".to_string()];
    let iv = ImportanceVector {
        names: names.clone(),
        values: vec![1.0, 0.0],
    };
    let opts = RepresentOptions::default();
    let e = Ensemble::new(names.clone(), cats.clone()).map_err(|e| e.to_string())?;
    let got = representative_graph(&e, "a", &iv, opts).map_err(|e| e.to_string())?;
    let want = representative_oracle(&cats, "a", &iv.values);
    ensure(got == want && got == "g3", || {
        format!("selected {got}, oracle {want}")
    })?;

    let mut r = ChaCha8Rng::seed_from_u64(50);
    for t in 0..50 {
        let fs = [transform(&mut r), transform(&mut r)];
        let moved: BTreeMap<String, Vec<Member>> = cats
            .iter()
            .map(|(c, ms)| {
                let ms = ms
                    .iter()
                    .map(|m| Member {
                        id: m.id.clone(),
                        features: m.features.iter().zip(&fs).map(|(x, f)| f(*x)).collect(),
                    })
                    .collect();
                (c.clone(), ms)
            })
            .collect();
        let w = [r.random_range(0.0..1.0), r.random_range(0.0..1.0)];
        let iv_t = ImportanceVector {
            names: names.clone(),
            values: w.to_vec(),
        };
        let base = representative_graph(&e, "a", &iv_t, opts).map_err(|e| e.to_string())?;
        let e_t = Ensemble::new(names.clone(), moved.clone()).map_err(|e| e.to_string())?;
        let after = representative_graph(&e_t, "a", &iv_t, opts).map_err(|e| e.to_string())?;
        ensure(base == after, || {
            format!("transform {t}: {base} became {after}")
        })?;
        let oracle = representative_oracle(&moved, "a", &w);
        ensure(after == oracle, || {
            format!("transform {t}: {after} but oracle {oracle}")
        })?;
    }
    Ok(format!(
        "selected {got} (oracle {want}); stable under 50 monotone transforms"
    ))
}

fn prevalence_checks() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(6);
    let cats: Vec<String> = (0..8).map(|i| format!("cat{i}")).collect();
    let mut per_region: BTreeMap<String, u64> = BTreeMap::new();
    let records: Vec<PlaceRecord> = (0..10_000)
        .map(|i| {
            let k = r.random_range(1..=3);
            let region = format!("r{:02}", r.random_range(0..50));
            *per_region.entry(region.clone()).or_default() += 1;
            PlaceRecord {
                page_id: format!("p{i}"),
                region_id: region,
                categories: cats.choose_multiple(&mut r, k).cloned().collect(),
            }
        })
        .collect();
    let counts = fractional_counts(&records).map_err(|e| e.to_string())?;
    ensure(counts.total_sixths() == 60_000, || {
        format!("total sixths {}", counts.total_sixths())
    })?;
    ensure(counts.total() == 10_000.0, || {
        format!("total {}", counts.total())
    })?;
    for (region, n) in &per_region {
        let s: u64 = cats.iter().map(|c| counts.sixths(region, c)).sum();
        ensure(s == 6 * n, || {
            format!("region {region}: {s} sixths for {n} records")
        })?;
    }

    let two = PlaceRecord {
        page_id: "x".into(),
        region_id: "r".into(),
        categories: vec!["Bars".into(), "Cafes".into()],
    };
    let c = fractional_counts(&[two]).map_err(|e| e.to_string())?;
    ensure(
        c.weighted_count("r", "Bars") == 0.5 && c.weighted_count("r", "Cafes") == 0.5,
        || "two-category page not split 0.5/0.5".into(),
    )?;

    let x: BTreeMap<String, f64> = (0..100)
        .map(|i| (format!("r{i}"), r.random_range(1.0..500.0)))
        .collect();
    let y: BTreeMap<String, f64> = x.iter().map(|(k, v)| (k.clone(), 3.0 * v)).collect();
    let rho = log_pearson(&x, &y).map_err(|e| e.to_string())?.r;
    ensure((rho - 1.0).abs() <= 1e-12, || {
        format!("log_pearson(x, 3x) = {rho}")
    })?;
    Ok(format!(
        "10000 records conserve mass exactly; 0.5/0.5 split; r(x, 3x) = {rho}"
    ))
}

/// Records over 30 filler labels; `P` and `Q` co-occur in one record out of
/// eight, and appear apart with fillers in a few more.
fn planted_corpus(seed: u64) -> CategoryCorpus {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let fillers: Vec<String> = (0..30).map(|i| format!("L{i:02}")).collect();
    let records = (0..1000)
        .map(|_| {
            let roll = r.random_range(0..100);
            let mut rec: Vec<String> = match roll {
                0..12 => vec!["P".into(), "Q".into()],
                12..15 => vec!["P".into()],
                15..18 => vec!["Q".into()],
                _ => Vec::new(),
            };
            let extra = r.random_range(1..=3 - rec.len().min(2));
            rec.extend(fillers.choose_multiple(&mut r, extra).cloned());
            rec
        })
        .collect();
    CategoryCorpus::new(records).expect("valid corpus")
}

fn embedding_recovery() -> Outcome {
    let start = Instant::now();
    let mut first = 0;
    for seed in 0..10 {
        let model = train_skipgram(
            &planted_corpus(seed),
            &SkipGramParams {
                seed,
                ..Default::default()
            },
        )
        .map_err(|e| e.to_string())?;
        let top = nearest_categories(&model, "P", 1).map_err(|e| e.to_string())?;
        if top[0].0 == "Q" {
            first += 1;
        }
        let l = &model.epoch_losses;
        ensure(l.last() < l.first(), || {
            format!("seed {seed}: loss {l:?} did not decrease")
        })?;
    }
    ensure(first >= 9, || {
        format!("planted partner ranked first in {first}/10 seeds")
    })?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), || {
        format!("took {elapsed:.1?}")
    })?;
    Ok(format!(
        "partner first in {first}/10 seeds, loss decreased in all; {elapsed:.1?}"
    ))
}

const ENSEMBLE: &str = "\
[er]
kind = erdos_renyi
count = 12
n = 60
p = 0.07

[cp]
kind = core_periphery
count = 12
n_core = 10
n_periphery = 50
p_cc = 0.5
p_cp = 0.04
p_pp = 0.02

[scatter]
kind = dyad_triad_scatter
count = 12
n_components = 25
dyad_fraction = 0.6
";

fn placenet(dir: &Path, args: &[&str]) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_placenet"))
        .current_dir(dir)
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!(
            "{args:?} exited {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn pipeline(dir: &Path, seed: &str) -> Result<BTreeMap<String, Vec<u8>>, String> {
    std::fs::write(dir.join("ensemble.cfg"), ENSEMBLE).map_err(|e| e.to_string())?;
    placenet(
        dir,
        &[
            "generate",
            "--config",
            "ensemble.cfg",
            "--out-dir",
            "gen",
            "--seed",
            seed,
        ],
    )?;
    placenet(
        dir,
        &[
            "features",
            "--manifest",
            "gen/manifest.jsonl",
            "--out-dir",
            "feat",
            "--seed",
            seed,
        ],
    )?;
    placenet(
        dir,
        &[
            "similarity",
            "--features",
            "feat/features.csv",
            "--manifest",
            "gen/manifest.jsonl",
            "--out-dir",
            "sim",
            "--folds",
            "4",
            "--trees",
            "40",
            "--seed",
            seed,
        ],
    )?;
    placenet(
        dir,
        &[
            "represent",
            "--features",
            "feat/features.csv",
            "--manifest",
            "gen/manifest.jsonl",
            "--importance",
            "sim/importance.csv",
            "--out-dir",
            "rep",
            "--seed",
            seed,
        ],
    )?;
    let mut files = BTreeMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in std::fs::read_dir(&d).map_err(|e| e.to_string())? {
            let path = entry.map_err(|e| e.to_string())?.path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path.strip_prefix(dir).unwrap().display().to_string();
                files.insert(rel, std::fs::read(&path).map_err(|e| e.to_string())?);
            }
        }
    }
    Ok(files)
}

fn end_to_end_determinism() -> Outcome {
    let dirs: Vec<tempfile::TempDir> = (0..3).map(|_| tempfile::tempdir().unwrap()).collect();
    let a = pipeline(dirs[0].path(), "11")?;
    let b = pipeline(dirs[1].path(), "11")?;
    let c = pipeline(dirs[2].path(), "12")?;
    ensure(a.keys().eq(b.keys()), || "different file sets".into())?;
    for (name, bytes) in &a {
        ensure(b[name] == *bytes, || {
            format!("{name} differs between identical runs")
        })?;
    }
    ensure(
        a["gen/graphs/er_0000.edges"] != c["gen/graphs/er_0000.edges"],
        || "changing the seed left the graphs unchanged".into(),
    )?;
    let features = String::from_utf8_lossy(&a["feat/features.csv"]).to_string();
    let header = features.lines().next().unwrap_or_default();
    ensure(
        header.split(',').count() == 19 && features.lines().count() == 37,
        || "unexpected feature table shape".into(),
    )?;
    Ok(format!(
        "{} output files byte-identical across reruns",
        a.len()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("feature oracle equivalence", feature_oracles),
        ("analytic spot values", analytic_values),
        ("classifier sanity", classifier_sanity),
        ("AUC correctness", auc_exactness),
        ("representative selection", representative_selection),
        ("prevalence", prevalence_checks),
        ("embedding", embedding_recovery),
        ("end-to-end determinism", end_to_end_determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
