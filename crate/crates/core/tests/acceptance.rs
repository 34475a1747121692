// SPDX-License-Identifier: Apache-2.0

//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use topicnet_core::analysis::powerlaw_fit;
use topicnet_core::corpus::{
    Corpus, CorpusDocument, GeneratingLayer, LayerKind, LinguisticMultilayerNetwork,
    ReferenceStats, Revision, TextRecord,
};
use topicnet_core::graph::{er_rewire, orbit, GraphBuilder, LabeledDigraph};
use topicnet_core::induction::{
    induce_atn, induce_generic, induce_ttn, induce_wtn, ArcEvidence, Combinators,
    DefinitionalSetting, InductionConfig, NetworkMode, TopicNetwork, VertexEvidence,
};
use topicnet_core::learning::{
    baseline_b1, baseline_b2, baseline_b3, genetic_search, run_mode, FeatureMatrix, GeneticConfig,
    GoldStandard, Knn, SearchMode, Task,
};
use topicnet_core::similarity::{
    cos_graph, measure, similarity_matrix, CosineParams, MeasureContext, MeasureId, Phi,
};
use topicnet_core::synth::{calibration_corpus, genre_suite, GenreSuiteConfig};
use topicnet_core::topics::{Classifier, TopicScheme};

type Outcome = Result<String, String>;

const TOY: &str = include_str!("../../../fixtures/toy/toy.json");

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 9] = [
        (
            "1 toy reproduction",
            Duration::from_secs(1),
            toy_reproduction,
        ),
        (
            "2 calibration point",
            Duration::from_secs(5),
            calibration_point,
        ),
        ("3 measure axioms", Duration::from_secs(60), measure_axioms),
        ("4 brute-force oracles", Duration::MAX, brute_force_oracles),
        ("5 B1 enumeration", Duration::MAX, b1_enumeration),
        (
            "6 synthetic genre separation",
            Duration::from_secs(600),
            genre_separation,
        ),
        ("7 power-law recovery", Duration::MAX, powerlaw_recovery),
        ("8 genetic search sanity", Duration::MAX, genetic_sanity),
        (
            "9 structural contracts",
            Duration::MAX,
            structural_contracts,
        ),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > limit => Err(format!("{msg}; runtime {took:.2?} exceeds {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS [{name}] {msg} ({took:.2?})"),
            Err(msg) => {
                failed += 1;
                println!("FAIL [{name}] {msg} ({took:.2?})");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn dist_err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

// ---- 1 ----

/// Hand-built author layer of the toy corpus: (a1, a2) and (a3, a4), weight 1.
fn example_lmn(corpus: &Corpus) -> Result<LinguisticMultilayerNetwork<f64>, String> {
    let full = LinguisticMultilayerNetwork::<f64>::from_corpus(corpus).map_err(dist_err)?;
    let mut b = GraphBuilder::new();
    for a in ["a1", "a2", "a3", "a4"] {
        b.add_vertex(a, 1.0).map_err(dist_err)?;
    }
    b.add_arc(0, 1, 1.0, "coauthorship").map_err(dist_err)?;
    b.add_arc(2, 3, 1.0, "coauthorship").map_err(dist_err)?;
    let authors = GeneratingLayer {
        kind: LayerKind::Author,
        graph: b.build(),
        margins: vec![
            vec![(0, 1.0), (1, 1.0)],
            vec![(0, 1.0), (1, 1.0)],
            vec![(2, 1.0), (3, 1.0)],
            vec![(2, 1.0), (3, 1.0)],
        ],
    };
    LinguisticMultilayerNetwork::new(full.text_layer().clone(), vec![authors]).map_err(dist_err)
}

struct ProductSum;

impl Combinators<f64> for ProductSum {
    fn beta(&self, ev: &VertexEvidence<'_, f64>) -> f64 {
        ev.theta
    }

    fn delta(&self, ev: &ArcEvidence<'_, f64>) -> f64 {
        ev.source_theta
            * ev.target_theta
            * ev.source_elements[0].margin
            * ev.target_elements[0].margin
            * (ev.layer_arcs[0] + ev.text_arc)
    }

    fn vertex_layers(&self) -> bool {
        false
    }
}

fn toy_reproduction() -> Outcome {
    let scheme = TopicScheme::sample();
    let corpus = Corpus::from_json(TOY).map_err(dist_err)?;
    let clf = corpus
        .precomputed_topics::<f64>()
        .map_err(dist_err)?
        .ok_or("toy fixture lacks topics")?;
    let lmn = LinguisticMultilayerNetwork::<f64>::from_corpus(&corpus).map_err(dist_err)?;
    let s = DefinitionalSetting::classify(&scheme, 2, &clf, &corpus, &lmn).map_err(dist_err)?;
    let cfg = InductionConfig::default();
    let ttn = induce_ttn(&s, &cfg).map_err(dist_err)?;
    let want = [
        ("mu(510)", ttn.vertex_weight("510"), 1.0),
        ("mu(520)", ttn.vertex_weight("520"), 1.0),
        ("mu(530)", ttn.vertex_weight("530"), 2.0),
        ("nu(510,520)", ttn.arc_weight("510", "520"), 1.0),
        ("nu(530,530)", ttn.arc_weight("530", "530"), 1.0),
    ];
    for (what, got, w) in want {
        check(got == Some(w), || {
            format!("TTN {what} = {got:?}, expected {w}")
        })?;
    }
    check(ttn.graph().arc_count() == 2, || {
        format!("TTN has {} arcs", ttn.graph().arc_count())
    })?;

    let almn = example_lmn(&corpus)?;
    let sa = DefinitionalSetting::classify(&scheme, 2, &clf, &corpus, &almn).map_err(dist_err)?;
    let atn =
        induce_generic(&sa, &[0], &ProductSum, NetworkMode::Generic, &cfg).map_err(dist_err)?;
    let a12 = atn.arc_weight("510", "520");
    check(a12 == Some(2.0), || {
        format!("ATN nu(510,520) = {a12:?}, expected 2")
    })?;

    let wtn = induce_wtn(&s, &ttn, &cfg).map_err(dist_err)?;
    let w12 = wtn.arc_weight("510", "520");
    check(w12 == Some(4.0), || {
        format!("WTN nu(510,520) = {w12:?}, expected 4")
    })?;
    Ok("TTN mu = 1,1,2 and nu = 1,1; ATN nu(v1,v2) = 2; WTN nu(v1,v2) = 4; exact".into())
}

// ---- 2 ----

fn calibration_point() -> Outcome {
    let scheme = TopicScheme::sample();
    let mut worst = 0.0f64;
    let mut arcs = 0;
    for (seed, (texts, authors, act)) in [(12, 2, 3.0), (20, 3, 5.0), (16, 4, 1.5), (8, 1, 10.0)]
        .into_iter()
        .enumerate()
    {
        let (doc, reference) = calibration_corpus(&scheme, 2, texts, authors, act, seed as u64);
        let corpus = Corpus::from_document(doc).map_err(dist_err)?;
        let clf = corpus
            .precomputed_topics::<f64>()
            .map_err(dist_err)?
            .ok_or("no topics")?;
        let lmn = LinguisticMultilayerNetwork::<f64>::from_corpus(&corpus).map_err(dist_err)?;
        let s = DefinitionalSetting::classify(&scheme, 2, &clf, &corpus, &lmn).map_err(dist_err)?;
        let cfg = InductionConfig {
            reference: Some(reference),
            ..Default::default()
        };
        let ttn = induce_ttn(&s, &cfg).map_err(dist_err)?;
        let atn = induce_atn(&s, &ttn, &cfg).map_err(dist_err)?;
        check(same_labels(&ttn, &atn), || {
            format!("seed {seed}: vertex sets differ")
        })?;
        check(ttn.graph().arc_count() == atn.graph().arc_count(), || {
            format!(
                "seed {seed}: {} TTN arcs vs {} ATN arcs",
                ttn.graph().arc_count(),
                atn.graph().arc_count()
            )
        })?;
        for v in ttn.graph().vertices() {
            let a = atn.vertex_weight(&v.label).unwrap_or(f64::NAN);
            worst = worst.max((a - v.weight).abs());
        }
        for (s_, t, w) in labeled_arcs(&ttn) {
            let a = atn.arc_weight(&s_, &t).unwrap_or(f64::NAN);
            worst = worst.max((a - w).abs());
            arcs += 1;
        }
        check(worst <= 1e-9, || {
            format!("seed {seed}: max |ATN - TTN| = {worst:e}")
        })?;
    }
    Ok(format!(
        "4 calibrated corpora, {arcs} arcs, max |ATN - TTN| = {worst:.1e} <= 1e-9"
    ))
}

fn same_labels(a: &TopicNetwork<f64>, b: &TopicNetwork<f64>) -> bool {
    let la: BTreeSet<&str> = a
        .graph()
        .vertices()
        .iter()
        .map(|v| v.label.as_str())
        .collect();
    let lb: BTreeSet<&str> = b
        .graph()
        .vertices()
        .iter()
        .map(|v| v.label.as_str())
        .collect();
    la == lb
}

fn labeled_arcs(t: &TopicNetwork<f64>) -> Vec<(String, String, f64)> {
    let g = t.graph();
    g.arcs()
        .iter()
        .map(|a| {
            (
                g.label(a.source).to_string(),
                g.label(a.target).to_string(),
                a.weight,
            )
        })
        .collect()
}

// ---- 3 ----

const POOL: [&str; 10] = [
    "510", "520", "530", "540", "610", "620", "630", "640", "710", "720",
];

/// Random weighted digraph on a random subset of the label pool.
fn random_graph(rng: &mut ChaCha8Rng, max_n: usize) -> LabeledDigraph<f64> {
    let n = rng.gen_range(1..=max_n.min(POOL.len()));
    let mut labels: Vec<&str> = POOL.to_vec();
    labels.shuffle(rng);
    labels.truncate(n);
    labels.sort_unstable();
    let mut b = GraphBuilder::new();
    for l in &labels {
        b.add_vertex(*l, rng.gen_range(0.1..5.0)).unwrap();
    }
    let density = rng.gen_range(0.0..0.6);
    for i in 0..n {
        for j in 0..n {
            if rng.gen_bool(density) {
                b.add_arc(i, j, rng.gen_range(0.1..5.0), "ttn").unwrap();
            }
        }
    }
    b.build()
}

fn measure_axioms() -> Outcome {
    let scheme = TopicScheme::sample();
    let ctx = MeasureContext::for_scheme(&scheme, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let pairs = 1000;
    let mut tosi_degenerate = 0;
    for p in 0..pairs {
        let a = random_graph(&mut rng, 10);
        let b = if p % 10 == 0 {
            a.clone()
        } else {
            random_graph(&mut rng, 10)
        };
        for m in MeasureId::ALL {
            let ab = measure(m, &a, &b, &ctx).map_err(dist_err)?;
            let ba = measure(m, &b, &a, &ctx).map_err(dist_err)?;
            check(ab.to_bits() == ba.to_bits(), || {
                format!("pair {p}: {m} not symmetric ({ab} vs {ba})")
            })?;
            if m.number() <= 9 {
                check((0.0..=1.0).contains(&ab), || {
                    format!("pair {p}: {m} = {ab} outside [0,1]")
                })?;
            }
            let (lo, hi) = m.range();
            check(ab >= lo && ab <= hi, || {
                format!("pair {p}: {m} = {ab} outside its codomain")
            })?;
            let aa = measure(m, &a, &a, &ctx).map_err(dist_err)?;
            let want = if m == MeasureId::ToSi && aa == 0.0 {
                // no typed triangle: zero feature vector, cosine 0 by convention
                tosi_degenerate += 1;
                0.0
            } else {
                m.self_value()
            };
            check(aa == want, || {
                format!("pair {p}: {m}(G, G) = {aa}, expected {want}")
            })?;
        }
    }
    Ok(format!(
        "{pairs} pairs x 11 measures: symmetric bit-exact, self values exact, measures 1-9 in [0,1] \
         (ToSi self = 0 on {tosi_degenerate} triangle-free graphs by the zero-vector convention, 1 otherwise)"
    ))
}

// ---- 4 ----

fn random_doc(rng: &mut ChaCha8Rng, name: &str) -> CorpusDocument {
    let n = rng.gen_range(1..=20);
    let codes = &POOL[..rng.gen_range(2..=POOL.len())];
    let texts = (0..n)
        .map(|x| {
            let mut topics = BTreeMap::new();
            for _ in 0..rng.gen_range(0..5) {
                topics.insert(
                    codes[rng.gen_range(0..codes.len())].to_string(),
                    rng.gen_range(0.01..1.0),
                );
            }
            let mut links = Vec::new();
            for _ in 0..rng.gen_range(0..4) {
                let y = format!("t{:02}", rng.gen_range(0..n));
                if !links.contains(&y) {
                    links.push(y);
                }
            }
            TextRecord {
                id: format!("t{x:02}"),
                title: String::new(),
                tokens: (0..rng.gen_range(0..6))
                    .map(|_| format!("w{}", rng.gen_range(0..12)))
                    .collect(),
                links,
                topics: Some(topics),
                ..Default::default()
            }
        })
        .collect();
    let revisions = (0..n)
        .flat_map(|x| {
            let k = rng.gen_range(1..4);
            (0..k)
                .map(|_| Revision {
                    text: format!("t{x:02}"),
                    author: format!("a{}", rng.gen_range(0..5)),
                    bytes_added: rng.gen_range(1.0..50.0),
                })
                .collect::<Vec<_>>()
        })
        .collect();
    CorpusDocument {
        name: name.into(),
        texts,
        revisions,
    }
}

/// Text topic network recomputed from the raw corpus with plain loops.
fn naive_ttn(
    corpus: &Corpus,
    top_m: usize,
) -> (BTreeMap<String, f64>, BTreeMap<(String, String), f64>) {
    let theta: Vec<Vec<(String, f64)>> = corpus
        .texts()
        .iter()
        .map(|t| {
            let mut v: Vec<(String, f64)> = corpus
                .to_document()
                .texts
                .iter()
                .find(|r| r.id == t.id)
                .and_then(|r| r.topics.clone())
                .unwrap_or_default()
                .into_iter()
                .filter(|(_, x)| *x > 0.0)
                .collect();
            v.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
            v
        })
        .collect();
    let all: Vec<f64> = theta.iter().flatten().map(|(_, x)| *x).collect();
    let mean = if all.is_empty() {
        0.0
    } else {
        all.iter().sum::<f64>() / all.len() as f64
    };
    let beta: Vec<Vec<(String, f64)>> = theta
        .into_iter()
        .map(|v| {
            v.into_iter()
                .take(top_m)
                .filter(|(_, x)| *x >= mean)
                .collect()
        })
        .collect();
    let mut mu = BTreeMap::new();
    for b in &beta {
        for (c, x) in b {
            *mu.entry(c.clone()).or_insert(0.0) += x;
        }
    }
    let mut nu = BTreeMap::new();
    let texts = corpus.texts();
    for x in 0..texts.len() {
        for y in 0..texts.len() {
            if !texts[x].links.contains(&y) {
                continue;
            }
            for (v, bv) in &beta[x] {
                for (w, bw) in &beta[y] {
                    *nu.entry((v.clone(), w.clone())).or_insert(0.0) += bv * bw;
                }
            }
        }
    }
    (mu, nu)
}

/// Cosine graph similarity written out from its definition.
fn naive_cos(
    g1: &LabeledDigraph<f64>,
    g2: &LabeledDigraph<f64>,
    weighted: bool,
    phi2: bool,
    vertex_part: bool,
) -> f64 {
    let labels: BTreeSet<&str> = g1
        .vertices()
        .iter()
        .chain(g2.vertices())
        .map(|v| v.label.as_str())
        .collect();
    let labels: Vec<&str> = labels.into_iter().collect();
    let n = labels.len();
    let nf = n as f64;
    let table = |g: &LabeledDigraph<f64>| -> (Vec<Vec<f64>>, Vec<f64>, Vec<bool>, Vec<f64>) {
        let pos: Vec<Option<usize>> = labels
            .iter()
            .map(|l| g.vertices().iter().position(|v| v.label == *l))
            .collect();
        let max = g.arcs().iter().map(|a| a.weight).fold(0.0, f64::max);
        let mut d = vec![vec![f64::INFINITY; n]; n];
        for k in 0..n {
            if pos[k].is_some() {
                d[k][k] = 0.0;
            }
        }
        let mut deg = vec![0.0; n];
        for a in g.arcs() {
            let s = pos.iter().position(|p| *p == Some(a.source)).unwrap();
            let t = pos.iter().position(|p| *p == Some(a.target)).unwrap();
            let len = if weighted { max / a.weight } else { 1.0 };
            if len < d[s][t] {
                d[s][t] = len;
            }
            deg[s] += 1.0;
            deg[t] += 1.0;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if d[i][k] + d[k][j] < d[i][j] {
                        d[i][j] = d[i][k] + d[k][j];
                    }
                }
            }
        }
        let present: Vec<bool> = pos.iter().map(Option::is_some).collect();
        let gep: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if !present[i] || !present[j] {
                            0.0
                        } else {
                            let x = if d[i][j] <= nf { d[i][j] } else { nf };
                            1.0 - x / nf
                        }
                    })
                    .collect()
            })
            .collect();
        let mu = pos
            .iter()
            .map(|p| p.map_or(0.0, |i| g.vertices()[i].weight))
            .collect();
        (gep, mu, present, deg)
    };
    let cos = |a: &[f64], b: &[f64]| {
        let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
        let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
        if na == 0.0 || nb == 0.0 {
            0.0
        } else {
            dot / (na * nb)
        }
    };
    let (gep1, mu1, p1, deg1) = table(g1);
    let (gep2, mu2, p2, deg2) = table(g2);
    let mut num = 0.0;
    let mut den = 0.0;
    let mut plain = 0.0;
    for k in 0..n {
        let c = if p1[k] && p2[k] {
            cos(&gep1[k], &gep2[k])
        } else {
            0.0
        };
        let w = if phi2 { deg1[k].max(deg2[k]) } else { 1.0 };
        num += w * c;
        den += w;
        plain += c;
    }
    let ca = if den > 0.0 {
        num / den
    } else if n > 0 {
        plain / nf
    } else {
        0.0
    };
    if vertex_part {
        (cos(&mu1, &mu2) + ca) / 2.0
    } else {
        ca
    }
}

fn brute_force_oracles() -> Outcome {
    let scheme = TopicScheme::sample();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let corpora = 300;
    let mut values = 0;
    for c in 0..corpora {
        let corpus =
            Corpus::from_document(random_doc(&mut rng, &format!("r{c}"))).map_err(dist_err)?;
        let top_m = rng.gen_range(1..=5);
        let clf = corpus
            .precomputed_topics::<f64>()
            .map_err(dist_err)?
            .ok_or("no topics")?;
        let lmn = LinguisticMultilayerNetwork::<f64>::from_corpus(&corpus).map_err(dist_err)?;
        let s =
            DefinitionalSetting::classify(&scheme, 2, &clf as &dyn Classifier<f64>, &corpus, &lmn)
                .map_err(dist_err)?;
        let cfg = InductionConfig {
            top_m,
            ..Default::default()
        };
        let ttn = induce_ttn(&s, &cfg).map_err(dist_err)?;
        let (mu, nu) = naive_ttn(&corpus, top_m);
        let got_mu: BTreeMap<String, f64> = ttn
            .graph()
            .vertices()
            .iter()
            .map(|v| (v.label.clone(), v.weight))
            .collect();
        // topics whose memberships all fall below the threshold carry no vertex
        let want_mu: BTreeMap<String, f64> = mu.into_iter().filter(|(_, x)| *x > 0.0).collect();
        check(got_mu == want_mu, || {
            format!("corpus {c}: mu {got_mu:?} vs naive {want_mu:?}")
        })?;
        let got_nu: BTreeMap<(String, String), f64> = labeled_arcs(&ttn)
            .into_iter()
            .map(|(s, t, w)| ((s, t), w))
            .collect();
        let want_nu: BTreeMap<(String, String), f64> =
            nu.into_iter().filter(|(_, x)| *x > 0.0).collect();
        check(got_nu == want_nu, || {
            format!("corpus {c}: nu {got_nu:?} vs naive {want_nu:?}")
        })?;
        values += got_mu.len() + got_nu.len();
    }
    let pairs = 500;
    let mut worst = 0.0f64;
    for p in 0..pairs {
        let a = random_graph(&mut rng, 8);
        let b = random_graph(&mut rng, 8);
        for (weighted, phi2, vp) in [
            (true, false, false),
            (true, false, true),
            (true, true, true),
            (false, false, false),
            (false, false, true),
            (false, true, false),
        ] {
            let params = CosineParams::new(
                weighted,
                if phi2 { Phi::MaxDegree } else { Phi::Uniform },
                vp,
            );
            let got = cos_graph(&a, &b, &params).map_err(dist_err)?;
            let want = naive_cos(&a, &b, weighted, phi2, vp);
            worst = worst.max((got - want).abs());
            check((got - want).abs() <= 1e-12, || {
                format!("pair {p} (weighted {weighted}, phi2 {phi2}, vertex part {vp}): {got} vs naive {want}")
            })?;
        }
    }
    Ok(format!(
        "{corpora} corpora (<= 20 texts): {values} TTN weights equal the naive loops exactly; \
         {pairs} pairs x 6 cosine variants within {worst:.1e} <= 1e-12"
    ))
}

// ---- 5 ----

fn naive_macro_f(truth: &[usize], pred: &[usize], k: usize) -> f64 {
    let mut total = 0.0;
    for c in 0..k {
        let tp = truth
            .iter()
            .zip(pred)
            .filter(|(t, p)| **t == c && **p == c)
            .count() as f64;
        let size = truth.iter().filter(|t| **t == c).count() as f64;
        let predicted = pred.iter().filter(|p| **p == c).count() as f64;
        let prec = if predicted > 0.0 { tp / predicted } else { 0.0 };
        let rec = if size > 0.0 { tp / size } else { 0.0 };
        total += if prec + rec > 0.0 {
            2.0 * prec * rec / (prec + rec)
        } else {
            0.0
        };
    }
    total / k as f64
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

fn b1_enumeration() -> Outcome {
    let truth = [0, 0, 1, 1];
    let perms = permutations(&truth);
    let exact = perms
        .iter()
        .map(|p| naive_macro_f(&truth, p, 2))
        .sum::<f64>()
        / perms.len() as f64;
    let gold = GoldStandard::new([("i1", "A"), ("i2", "A"), ("i3", "B"), ("i4", "B")])
        .map_err(dist_err)?;
    let got = baseline_b1(&gold, 100_000, 5).map_err(dist_err)?.mean;
    check((got - exact).abs() <= 0.01, || {
        format!("4 items: B1 {got:.4} vs enumerated {exact:.4}")
    })?;
    let singles = GoldStandard::new([("i1", "A"), ("i2", "B")]).map_err(dist_err)?;
    let s = baseline_b1(&singles, 100_000, 6).map_err(dist_err)?.mean;
    check((s - 0.5).abs() <= 0.01, || {
        format!("two singletons: B1 {s:.4}, expected 0.5")
    })?;
    Ok(format!(
        "4 items: B1 {got:.4} vs enumerated {exact:.4}; two singletons: {s:.4} (tolerance 0.01)"
    ))
}

// ---- 6 ----

fn genre_separation() -> Outcome {
    let scheme = TopicScheme::sample();
    let cfg = GenreSuiteConfig::default();
    let suite = genre_suite(&scheme, &cfg);
    let mut nets = Vec::new();
    for sc in &suite {
        let corpus = Corpus::from_document(sc.document.clone()).map_err(dist_err)?;
        let clf = corpus
            .precomputed_topics::<f64>()
            .map_err(dist_err)?
            .ok_or("no topics")?;
        let lmn = LinguisticMultilayerNetwork::<f64>::from_corpus(&corpus).map_err(dist_err)?;
        let s = DefinitionalSetting::classify(&scheme, 2, &clf, &corpus, &lmn).map_err(dist_err)?;
        nets.push(induce_ttn(&s, &InductionConfig::default()).map_err(dist_err)?);
    }
    let gold = GoldStandard::new(
        suite
            .iter()
            .map(|s| (s.document.name.clone(), s.genre.clone())),
    )
    .map_err(dist_err)?;
    let m = MeasureId::CosAVWPhi1;
    let ctx = MeasureContext::for_scheme(&scheme, 2);
    let mat: FeatureMatrix<f64> = similarity_matrix(&nets, m, &ctx).map_err(dist_err)?;
    let knn = Knn::default();
    let task = Task::new(&mat, &gold, &knn).map_err(dist_err)?;
    let observed = run_mode(&task, SearchMode::Ext, &GeneticConfig::ext(11)).map_err(dist_err)?;
    let obs = observed.report.macro_f;

    let ids: Vec<String> = nets.iter().map(|t| t.provenance().corpus.clone()).collect();
    let graphs: Vec<_> = nets.iter().map(|t| t.graph()).collect();
    let reps = 20;
    let ga = GeneticConfig::default();
    let b2 = baseline_b2(
        &ids,
        &graphs,
        m,
        &ctx,
        &gold,
        &knn,
        SearchMode::All,
        &ga,
        reps,
        21,
    )
    .map_err(dist_err)?;
    let b3 =
        baseline_b3(&gold, m.range(), &knn, SearchMode::All, &ga, reps, 22).map_err(dist_err)?;
    let b1 = baseline_b1(&gold, 100_000, 23).map_err(dist_err)?;

    let ext_reps = 3;
    let ext_ga = GeneticConfig::ext(0);
    let b2x = baseline_b2(
        &ids,
        &graphs,
        m,
        &ctx,
        &gold,
        &knn,
        SearchMode::Ext,
        &ext_ga,
        ext_reps,
        31,
    )
    .map_err(dist_err)?;
    let b3x = baseline_b3(
        &gold,
        m.range(),
        &knn,
        SearchMode::Ext,
        &ext_ga,
        ext_reps,
        32,
    )
    .map_err(dist_err)?;
    println!(
        "INFO [6 synthetic genre separation] baselines under ext selection ({ext_reps} reps): B2 {:.3}, B3 {:.3}",
        b2x.mean, b3x.mean
    );

    let summary = format!(
        "3 genres x 10 corpora, {m}: observed ext macro-F {obs:.3} with {} features; \
         B2 {:.3}, B3 {:.3} (all features, {reps} reps); B1 {:.3}",
        observed.selected.len(),
        b2.mean,
        b3.mean,
        b1.mean
    );
    check(obs >= 0.9, || format!("{summary}: observed below 0.9"))?;
    check(b2.mean <= 0.6 && b3.mean <= 0.6, || {
        format!("{summary}: a baseline exceeds 0.6")
    })?;
    check(b1.mean <= 0.45, || format!("{summary}: B1 exceeds 0.45"))?;
    Ok(summary)
}

// ---- 7 ----

fn powerlaw_recovery() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut lines = Vec::new();
    for gamma in [0.5, 1.0, 1.5] {
        let mut w: Vec<f64> = (1..=100).map(|r| 20.0 * (r as f64).powf(-gamma)).collect();
        w.shuffle(&mut rng);
        let f = powerlaw_fit(&w).map_err(dist_err)?;
        check(
            (f.exponent - gamma).abs() <= 0.05 && f.adjusted_r2 >= 0.99,
            || {
                format!(
                    "noiseless gamma {gamma}: fitted {:.4}, adjusted R2 {:.4}",
                    f.exponent, f.adjusted_r2
                )
            },
        )?;
        let mut worst = 0.0f64;
        for _ in 0..10 {
            // 5% multiplicative noise; ranks are taken after the noise
            let noisy: Vec<f64> = (1..=100)
                .map(|r| 20.0 * (r as f64).powf(-gamma) * (1.0 + rng.gen_range(-0.05..0.05)))
                .collect();
            let g = powerlaw_fit(&noisy).map_err(dist_err)?;
            worst = worst.max((g.exponent - gamma).abs());
        }
        check(worst <= 0.1, || {
            format!("noisy gamma {gamma}: worst error {worst:.4}")
        })?;
        lines.push(format!(
            "gamma {gamma}: {:.4} (R2 {:.4}), noisy worst error {worst:.3}",
            f.exponent, f.adjusted_r2
        ));
    }
    Ok(lines.join("; "))
}

// ---- 8 ----

fn genetic_sanity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let n = 12;
    let ids: Vec<String> = (0..n).map(|i| format!("x{i:02}")).collect();
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let f0 = if i < n / 2 {
                rng.gen_range(1.0..2.0)
            } else {
                rng.gen_range(-2.0..-1.0)
            };
            vec![f0, rng.gen_range(-1.0..1.0)]
        })
        .collect();
    let gold = GoldStandard::new(
        ids.iter()
            .enumerate()
            .map(|(i, id)| (id.clone(), if i < n / 2 { "A" } else { "B" })),
    )
    .map_err(dist_err)?;
    let m =
        FeatureMatrix::new(ids, vec!["signal".into(), "noise".into()], rows).map_err(dist_err)?;
    let knn = Knn::default();
    let task = Task::new(&m, &gold, &knn).map_err(dist_err)?;
    let opt = [[true, false], [false, true], [true, true]]
        .iter()
        .map(|mk| task.fitness(mk))
        .fold(f64::MIN, f64::max);
    for seed in 0..10 {
        let out = genetic_search(
            &task,
            &GeneticConfig {
                seed,
                ..Default::default()
            },
        )
        .map_err(dist_err)?;
        check(out.fitness == opt, || {
            format!("seed {seed}: fitness {} vs exhaustive {opt}", out.fitness)
        })?;
        check(task.fitness(&out.mask) == opt, || {
            format!("seed {seed}: returned mask scores below the optimum")
        })?;
        check(out.trajectory.windows(2).all(|w| w[0] <= w[1]), || {
            format!(
                "seed {seed}: elite trajectory decreases: {:?}",
                out.trajectory
            )
        })?;
        check(out.mask[0], || {
            format!("seed {seed}: signal feature dropped")
        })?;
    }
    Ok(format!(
        "exhaustive optimum {opt:.3} reached by all 10 seeds, elite trajectories non-decreasing"
    ))
}

// ---- 9 ----

fn atn_within_ttn(corpus: &Corpus, scheme: &TopicScheme) -> Result<(), String> {
    let clf = corpus
        .precomputed_topics::<f64>()
        .map_err(dist_err)?
        .ok_or("no topics")?;
    let lmn = LinguisticMultilayerNetwork::<f64>::from_corpus(corpus).map_err(dist_err)?;
    let s = DefinitionalSetting::classify(scheme, 2, &clf, corpus, &lmn).map_err(dist_err)?;
    let cfg = InductionConfig {
        reference: Some(ReferenceStats::from_corpus(corpus).map_err(dist_err)?),
        ..Default::default()
    };
    let ttn = induce_ttn(&s, &cfg).map_err(dist_err)?;
    let atn = induce_atn(&s, &ttn, &cfg).map_err(dist_err)?;
    check(same_labels(&ttn, &atn), || {
        format!("{}: ATN and TTN vertex sets differ", corpus.name())
    })?;
    for (s_, t, _) in labeled_arcs(&atn) {
        check(ttn.arc_weight(&s_, &t).is_some(), || {
            format!("{}: ATN arc {s_} -> {t} not in TTN", corpus.name())
        })?;
    }
    Ok(())
}

fn structural_contracts() -> Outcome {
    let scheme = TopicScheme::sample();
    let mut corpora = vec![Corpus::from_json(TOY).map_err(dist_err)?];
    for sc in genre_suite(&scheme, &GenreSuiteConfig::default()) {
        corpora.push(Corpus::from_document(sc.document).map_err(dist_err)?);
    }
    for seed in 0..4 {
        corpora.push(
            Corpus::from_document(
                calibration_corpus(&scheme, 2, 15, seed as usize + 1, 2.0, seed).0,
            )
            .map_err(dist_err)?,
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for c in 0..100 {
        corpora
            .push(Corpus::from_document(random_doc(&mut rng, &format!("r{c}"))).map_err(dist_err)?);
    }
    for c in &corpora {
        atn_within_ttn(c, &scheme)?;
    }

    let graphs = 100;
    for i in 0..graphs {
        let g = random_graph(&mut rng, 10);
        for seed in 0..5 {
            let r = er_rewire(&g, seed);
            check(r.vertices() == g.vertices(), || {
                format!("graph {i}: rewiring changed the vertices")
            })?;
            check(r.arc_count() == g.arc_count(), || {
                format!(
                    "graph {i}: arc count {} -> {}",
                    g.arc_count(),
                    r.arc_count()
                )
            })?;
            let mut a: Vec<f64> = g.arcs().iter().map(|x| x.weight).collect();
            let mut b: Vec<f64> = r.arcs().iter().map(|x| x.weight).collect();
            a.sort_by(f64::total_cmp);
            b.sort_by(f64::total_cmp);
            check(a == b, || format!("graph {i}: arc weight multiset changed"))?;
        }
        for v in 0..g.vertex_count() {
            let mut prev: Option<BTreeSet<String>> = None;
            for n in 0..=4 {
                let o = orbit(&g, v, n).map_err(dist_err)?;
                let labels: BTreeSet<String> =
                    o.vertices().iter().map(|x| x.label.clone()).collect();
                if n == 0 {
                    check(labels.len() == 1 && labels.contains(g.label(v)), || {
                        format!("graph {i}: orbit 0 of {v}")
                    })?;
                }
                if let Some(p) = &prev {
                    check(p.is_subset(&labels), || {
                        format!("graph {i}: orbit {} of {v} not inside orbit {n}", n - 1)
                    })?;
                }
                prev = Some(labels);
            }
        }
    }
    Ok(format!(
        "ATN within TTN on {} corpora; rewiring preserves counts and weights on {graphs} graphs x 5 seeds; \
         orbits nested for n = 0..4 on {graphs} graphs",
        corpora.len()
    ))
}
