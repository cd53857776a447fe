//! Acceptance gate: ten criteria, one PASS/FAIL line each.

mod common;

use std::time::{Duration, Instant};

use common::{brute_clique_partition, brute_minimax, is_strong_ultrametric};
use fclust::harness::{
    generate_dendrograms, generate_morphisms, linkage_counterexample, mixed_corpus, nonexcisive_scheme,
    nonexcisive_space, MorphismCorpusSpec, MorphismGenerator,
};
use fclust::hierarchical::Linkage;
use fclust::invariants::check_functoriality_of_invariant;
use fclust::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(err: fclust::Error) -> String {
    err.to_string()
}

fn names(p: &Partition) -> Vec<Vec<String>> {
    p.blocks().to_vec()
}

fn blocks(v: &[&[&str]]) -> Vec<Vec<String>> {
    v.iter().map(|b| b.iter().map(|s| s.to_string()).collect()).collect()
}

fn nonexcisive_golden() -> Check {
    let x = nonexcisive_space();
    let scheme = nonexcisive_scheme();
    let p = cluster_flat(&scheme, &x).map_err(e)?;
    ensure(names(&p) == blocks(&[&["A", "B", "C"], &["D", "E"]]), || format!("got {p:?}"))?;
    let abc = x.restrict(&["A", "B", "C"]).map_err(e)?;
    let q = cluster_flat(&scheme, &abc).map_err(e)?;
    ensure(names(&q) == blocks(&[&["A"], &["B", "C"]]), || format!("block re-run gave {q:?}"))?;
    let w = is_excisive_on(&scheme, &x).map_err(e)?.ok_or("reported excisive")?;
    ensure(w.block == ["A", "B", "C"], || format!("witness {:?}", w.block))?;
    Ok("partition, re-clustering and witness {A,B,C} match".into())
}

fn linkage_counterexamples() -> Check {
    let (x, y, f) = linkage_counterexample();
    let mut scales = Vec::new();
    for linkage in [Linkage::Complete, Linkage::Average] {
        let w = is_persistence_preserving(&f, &agglomerative(&x, linkage), &agglomerative(&y, linkage))
            .map_err(e)?
            .ok_or_else(|| format!("{linkage:?} reported persistence preserving"))?;
        ensure(w.scale > 3.0 && w.scale < 4.0, || format!("{linkage:?} witness {}", w.scale))?;
        scales.push(format!("{linkage:?} at {} in [{}, {})", w.scale, w.from, w.to));
    }
    let w = is_persistence_preserving(&f, &single_linkage_functor(&x), &single_linkage_functor(&y)).map_err(e)?;
    ensure(w.is_none(), || format!("single linkage violated at {w:?}"))?;
    Ok(format!("{}; single passes", scales.join(", ")))
}

fn rips_representability() -> Check {
    let corpus = mixed_corpus(200, 1..=12, 101).map_err(e)?;
    let mut trials = 0;
    for (i, x) in corpus.iter().enumerate() {
        for delta in x.distance_values() {
            let rips = cluster_flat(&FlatScheme::Rips { delta }, x).map_err(e)?;
            for tag in [CategoryTag::Inj, CategoryTag::Gen] {
                let set = MotifSet::deltas(&[2], delta, tag, false).map_err(e)?;
                let rep = cluster_flat(&FlatScheme::Representable(set), x).map_err(e)?;
                ensure(rep == rips, || format!("space {i}, delta {delta}, {tag:?}"))?;
                trials += 1;
            }
        }
    }
    Ok(format!("0 violations in {trials} comparisons over 200 spaces"))
}

fn factorization() -> Check {
    let corpus = mixed_corpus(200, 1..=10, 202).map_err(e)?;
    let sets = [&[2][..], &[3], &[4], &[3, 4]]
        .iter()
        .map(|sizes| MotifSet::deltas(sizes, 1.0, CategoryTag::Inj, true))
        .collect::<fclust::Result<Vec<_>>>()
        .map_err(e)?;
    let mut trials = 0;
    for (i, x) in corpus.iter().enumerate() {
        for (k, set) in sets.iter().enumerate() {
            ensure(factorize_check(set, x).map_err(e)?, || format!("space {i}, motif set {k}"))?;
            trials += 1;
        }
    }
    Ok(format!("0 violations in {trials} checks"))
}

fn subdominant_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    for t in 0..100 {
        let n = rng.gen_range(1..=7);
        let mut w = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let v = match rng.gen_range(0..3) {
                    0 => f64::from(rng.gen_range(0..6u8)),
                    1 => rng.gen_range(0.0..10.0),
                    _ => f64::from(rng.gen_range(0..30u8)) / 4.0,
                };
                w[i][j] = v;
                w[j][i] = v;
            }
        }
        let u = subdominant_ultrametric(&w).map_err(e)?;
        ensure(u == brute_minimax(&w), || format!("table {t}: {w:?}"))?;
        ensure(is_strong_ultrametric(&u), || format!("table {t} not ultrametric"))?;
    }
    Ok("100 tables match the all-chains minimax".into())
}

fn uniqueness_conditions() -> Check {
    let corpus = mixed_corpus(100, 1..=12, 404).map_err(e)?;
    for (i, x) in corpus.iter().enumerate() {
        let theta = single_linkage_functor(x);
        let mut labels = x.labels().to_vec();
        labels.sort();
        ensure(theta.ground() == labels.as_slice(), || format!("space {i}: ground changed"))?;
        if x.len() >= 2 {
            let sep = x.separation().map_err(e)?;
            ensure(theta.slice(0.0).map_err(e)?.is_discrete(), || format!("space {i}: not discrete at 0"))?;
            ensure(theta.breakpoints()[0] >= sep, || format!("space {i}: merge below separation"))?;
        }
    }
    for delta in [0.25, 1.0, 3.5] {
        let theta = single_linkage_functor(&delta_space(2, delta).map_err(e)?);
        ensure(theta.breakpoints() == [delta], || format!("two-point space at {delta}"))?;
    }
    for delta_c in [0.5, 1.0, 2.0] {
        let d2 = delta_space(2, delta_c).map_err(e)?;
        let open = cluster_flat(&FlatScheme::Rips { delta: delta_c }, &d2).map_err(e)?;
        let strict = cluster_flat(&FlatScheme::RipsStrict { delta: delta_c }, &d2).map_err(e)?;
        ensure(open.is_single_block() && strict.is_discrete(), || format!("boundary at {delta_c}"))?;
        for delta in [delta_c / 2.0, delta_c * 2.0] {
            let d2 = delta_space(2, delta).map_err(e)?;
            let open = cluster_flat(&FlatScheme::Rips { delta: delta_c }, &d2).map_err(e)?;
            let strict = cluster_flat(&FlatScheme::RipsStrict { delta: delta_c }, &d2).map_err(e)?;
            ensure(open == strict, || format!("off-boundary difference at {delta}"))?;
        }
    }
    Ok("conditions I-III on 100 spaces; strict variant differs only at the boundary".into())
}

fn functoriality() -> Check {
    let pool = mixed_corpus(120, 1..=10, 505).map_err(e)?;
    let spec = |generator, tag, seed| MorphismCorpusSpec {
        tag,
        generator,
        count: 300,
        seed,
    };
    let gen = generate_morphisms(&pool, &spec(MorphismGenerator::QuotientCompose, CategoryTag::Gen, 506)).map_err(e)?;
    let mut checks = 0;
    for (i, f) in gen.iter().enumerate() {
        let mut scales = f.source().distance_values();
        scales.extend(f.target().distance_values());
        scales.push(1.0);
        for delta in scales {
            let s = FlatScheme::Rips { delta };
            let px = cluster_flat(&s, f.source()).map_err(e)?;
            let py = cluster_flat(&s, f.target()).map_err(e)?;
            let pulled = pullback_partition(&f.point_map(), &py).map_err(e)?;
            ensure(px.refines(&pulled).map_err(e)?, || format!("rips, GEN morphism {i}, delta {delta}"))?;
            checks += 1;
        }
    }
    let inj = generate_morphisms(&pool, &spec(MorphismGenerator::ShrinkEmbed, CategoryTag::Inj, 507)).map_err(e)?;
    let ne = nonexcisive_scheme();
    for (i, f) in inj.iter().enumerate() {
        let (x, y, map) = (f.source(), f.target(), f.point_map());
        let pulled = pullback_partition(&map, &cluster_flat(&ne, y).map_err(e)?).map_err(e)?;
        ensure(cluster_flat(&ne, x).map_err(e)?.refines(&pulled).map_err(e)?, || format!("nonexcisive, INJ morphism {i}"))?;
        for m in [2, 3] {
            let w = is_persistence_preserving(&map, &trim_functor(x, m).map_err(e)?, &trim_functor(y, m).map_err(e)?)
                .map_err(e)?;
            ensure(w.is_none(), || format!("trim {m}, INJ morphism {i}: {w:?}"))?;
        }
        let w = is_persistence_preserving(&map, &rips_delta_m(x, 3).map_err(e)?, &rips_delta_m(y, 3).map_err(e)?)
            .map_err(e)?;
        ensure(w.is_none(), || format!("clique-transformed single linkage, INJ morphism {i}: {w:?}"))?;
        checks += 4;
    }
    for spec in [InvariantSpec::Separation, InvariantSpec::KMinus { k: 3 }] {
        let rep = check_functoriality_of_invariant(&spec, &inj).map_err(e)?;
        ensure(rep.passed(), || format!("{spec:?}: {:?}", rep.violations))?;
        checks += rep.trials;
    }
    Ok(format!("0 violations in {checks} checks over 300 GEN and 300 INJ morphisms"))
}

fn richness_roundtrip() -> Check {
    let dendrograms = generate_dendrograms(100, 15, 606).map_err(e)?;
    for (i, theta) in dendrograms.iter().enumerate() {
        let back = single_linkage_functor(&dendrogram_to_ultrametric(theta).map_err(e)?);
        ensure(&back == theta, || format!("dendrogram {i}"))?;
    }
    Ok("100 dendrograms recovered exactly".into())
}

fn density_sensitivity() -> Check {
    let delta = 0.75;
    let chain = collinear(&[0.0, 0.75, 1.5, 2.25, 3.0]).map_err(e)?;
    let two = cluster_flat(&FlatScheme::Clique { m: 2, delta }, &chain).map_err(e)?;
    let three = cluster_flat(&FlatScheme::Clique { m: 3, delta }, &chain).map_err(e)?;
    ensure(two.is_single_block(), || format!("m=2 gave {two:?}"))?;
    ensure(three.is_discrete() && three.num_blocks() == 5, || format!("m=3 gave {three:?}"))?;
    let corpus = mixed_corpus(100, 1..=12, 707).map_err(e)?;
    let mut trials = 0;
    for (i, x) in corpus.iter().enumerate() {
        let theta = rips_delta_m(x, 3).map_err(e)?;
        for d in x.distance_values() {
            let clique = cluster_flat(&FlatScheme::Clique { m: 3, delta: d }, x).map_err(e)?;
            ensure(theta.slice(d).map_err(e)? == &clique, || format!("space {i}, delta {d}"))?;
            ensure(clique == brute_clique_partition(x, 3, d), || format!("subset oracle, space {i}, delta {d}"))?;
            trials += 1;
        }
    }
    Ok(format!("chain golden holds; slices agree in {trials} comparisons"))
}

fn scale_behaviour() -> Check {
    let mut corpus = vec![delta_space(2, 1.0).map_err(e)?];
    corpus.extend(mixed_corpus(60, 1..=10, 808).map_err(e)?);
    let lambdas = [0.5, 2.0, 3.0];
    let rips = scale_invariance_probe(&FlatScheme::Rips { delta: 1.0 }, &corpus, &lambdas, 6).map_err(e)?;
    let w = rips.witness.ok_or("rips reported scale-invariant")?;
    let n_max = corpus.iter().map(FiniteMetricSpace::len).max().unwrap_or(0).max(6);
    for (scheme, k) in [
        (FlatScheme::OneBlock, (2..=n_max).collect::<Vec<_>>()),
        (FlatScheme::Singletons, Vec::new()),
    ] {
        let rep = scale_invariance_probe(&scheme, &corpus, &lambdas, 6).map_err(e)?;
        ensure(rep.scale_invariant(), || format!("{scheme:?} not scale-invariant"))?;
        let pat = rep.collapse.ok_or("missing collapse pattern")?;
        ensure(pat.k_set == k, || format!("{scheme:?}: K = {:?}", pat.k_set))?;
        ensure(pat.violations.is_empty(), || format!("{scheme:?}: pattern broken on {:?}", pat.violations))?;
    }
    Ok(format!(
        "rips witness: space {} at lambda {}; constant schemes match K = {{2,..}} and K = {{}}",
        w.space_index, w.lambda
    ))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Check); 10] = [
        ("non-excisive golden", Duration::from_secs(1), nonexcisive_golden),
        ("complete/average linkage counterexample", Duration::from_secs(1), linkage_counterexamples),
        ("representability of Rips", Duration::from_secs(30), rips_representability),
        ("factorization through the motif transform", Duration::from_secs(120), factorization),
        ("sub-dominant ultrametric oracle", Duration::from_secs(10), subdominant_oracle),
        ("uniqueness conditions", Duration::from_secs(10), uniqueness_conditions),
        ("functoriality suites", Duration::from_secs(120), functoriality),
        ("richness round-trip", Duration::from_secs(10), richness_roundtrip),
        ("density sensitivity", Duration::from_secs(30), density_sensitivity),
        ("scale behaviour", Duration::from_secs(10), scale_behaviour),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let outcome = match result {
            Ok(detail) if took <= limit => Ok(detail),
            Ok(detail) => Err(format!("{detail}, but over the time limit")),
            Err(why) => Err(why),
        };
        match outcome {
            Ok(detail) => println!("[PASS] {:>2}. {name} ({took:.2?} / {limit:?}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {:>2}. {name} ({took:.2?} / {limit:?}): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
