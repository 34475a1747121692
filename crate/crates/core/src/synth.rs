// SPDX-License-Identifier: Apache-2.0

//! Seeded synthetic corpora.
//!
//! [`genre_suite`] builds corpora in several genres. A genre fixes a
//! topic profile (how often each topic is a text's main topic) and a link
//! profile (which topics tend to link to which); every corpus draws its texts
//! from a noisy copy of its genre's profiles. [`calibration_corpus`] builds
//! a corpus in which every text has the same authors at the same activity.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::{CorpusDocument, ReferenceStats, Revision, TextRecord};
use crate::topics::TopicScheme;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GenreSuiteConfig {
    pub genres: usize,
    pub corpora_per_genre: usize,
    pub texts_per_corpus: usize,
    /// Number of topic codes (taken from the scheme level) in play.
    pub topics: usize,
    pub links_per_text: f64,
    /// Preferred link targets per topic in a genre's link profile.
    pub targets_per_topic: usize,
    /// Weight of genre-specific deviation in the main-topic profile
    /// (0 = all genres share one profile).
    pub topic_contrast: f64,
    /// Multiplicative per-corpus noise amplitude on both profiles.
    pub noise: f64,
    /// Share of links drawn uniformly at random.
    pub random_links: f64,
    pub authors: usize,
    pub level: u8,
    pub seed: u64,
}

impl Default for GenreSuiteConfig {
    fn default() -> Self {
        GenreSuiteConfig {
            genres: 3,
            corpora_per_genre: 10,
            texts_per_corpus: 40,
            topics: 12,
            links_per_text: 3.0,
            targets_per_topic: 2,
            topic_contrast: 0.3,
            noise: 0.2,
            random_links: 0.1,
            authors: 12,
            level: 2,
            seed: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SyntheticCorpus {
    pub genre: String,
    pub document: CorpusDocument,
}

struct GenreProfile {
    topic: Vec<f64>,
    link: Vec<Vec<f64>>,
}

fn normalized(mut v: Vec<f64>) -> Vec<f64> {
    let s: f64 = v.iter().sum();
    if s > 0.0 {
        v.iter_mut().for_each(|x| *x /= s);
    }
    v
}

fn draw(weights: &[f64], rng: &mut ChaCha8Rng) -> usize {
    let total: f64 = weights.iter().sum();
    let mut u = rng.gen_range(0.0..total.max(f64::MIN_POSITIVE));
    for (i, &w) in weights.iter().enumerate() {
        if u < w {
            return i;
        }
        u -= w;
    }
    weights.len() - 1
}

fn jitter(x: f64, noise: f64, rng: &mut ChaCha8Rng) -> f64 {
    if noise > 0.0 {
        x * (1.0 + rng.gen_range(-noise..=noise))
    } else {
        x
    }
}

fn genre_profile(cfg: &GenreSuiteConfig, base: &[f64], rng: &mut ChaCha8Rng) -> GenreProfile {
    let k = cfg.topics;
    let own: Vec<f64> = normalized((0..k).map(|_| rng.gen_range(0.0..1.0)).collect());
    let topic = normalized(
        base.iter()
            .zip(&own)
            .map(|(b, o)| (1.0 - cfg.topic_contrast) * b + cfg.topic_contrast * o)
            .collect(),
    );
    let mut link = vec![vec![0.0; k]; k];
    let all: Vec<usize> = (0..k).collect();
    for row in link.iter_mut() {
        for &t in all.choose_multiple(rng, cfg.targets_per_topic.min(k)) {
            row[t] = rng.gen_range(0.5..1.0);
        }
    }
    GenreProfile { topic, link }
}

fn make_corpus(
    cfg: &GenreSuiteConfig,
    name: &str,
    codes: &[&str],
    profile: &GenreProfile,
    rng: &mut ChaCha8Rng,
) -> CorpusDocument {
    let k = cfg.topics;
    let topic: Vec<f64> = profile
        .topic
        .iter()
        .map(|&x| jitter(x, cfg.noise, rng))
        .collect();
    let link: Vec<Vec<f64>> = profile
        .link
        .iter()
        .map(|row| row.iter().map(|&x| jitter(x, cfg.noise, rng)).collect())
        .collect();
    let n = cfg.texts_per_corpus;
    let main: Vec<usize> = (0..n).map(|_| draw(&topic, rng)).collect();
    let mut by_topic: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (x, &t) in main.iter().enumerate() {
        by_topic[t].push(x);
    }

    let mut texts: Vec<TextRecord> = (0..n)
        .map(|x| {
            let mut topics = BTreeMap::new();
            topics.insert(codes[main[x]].to_string(), rng.gen_range(0.6..1.0));
            for _ in 0..rng.gen_range(0..3) {
                let t = rng.gen_range(0..k);
                topics
                    .entry(codes[t].to_string())
                    .or_insert(rng.gen_range(0.05..0.4));
            }
            let tokens = (0..10)
                .map(|_| {
                    if rng.gen_bool(0.7) {
                        format!("w{}_{}", main[x], rng.gen_range(0..8))
                    } else {
                        format!("g{}", rng.gen_range(0..20))
                    }
                })
                .collect();
            TextRecord {
                id: format!("x{x:03}"),
                title: format!("{name} text {x}"),
                tokens,
                topics: Some(topics),
                ..Default::default()
            }
        })
        .collect();

    let n_links = (cfg.links_per_text * n as f64).round() as usize;
    let mut attempts = 0;
    let mut made = 0;
    while made < n_links && attempts < 20 * n_links + 100 {
        attempts += 1;
        let x = rng.gen_range(0..n);
        let y = if rng.gen_bool(cfg.random_links.clamp(0.0, 1.0)) {
            rng.gen_range(0..n)
        } else {
            let t = draw(&link[main[x]], rng);
            match by_topic[t].choose(rng) {
                Some(&y) => y,
                None => continue,
            }
        };
        let id = format!("x{y:03}");
        if x != y && !texts[x].links.contains(&id) {
            texts[x].links.push(id);
            made += 1;
        }
    }

    let mut revisions = Vec::new();
    for x in 0..n {
        let m = rng.gen_range(1..=3.min(cfg.authors.max(1)));
        let pool: Vec<usize> = (0..cfg.authors.max(1)).collect();
        for &a in pool.choose_multiple(rng, m) {
            revisions.push(Revision {
                text: format!("x{x:03}"),
                author: format!("{name}-u{a}"),
                bytes_added: (rng.gen_range(0.0f64..1.0).powi(2) * 2000.0).round() + 10.0,
            });
        }
    }
    CorpusDocument {
        name: name.to_string(),
        texts,
        revisions,
    }
}

/// `genres × corpora_per_genre` corpora named `g<genre>-c<index>`, genre
/// labels `genre<genre>`. Topic memberships are stored with each text.
pub fn genre_suite(scheme: &TopicScheme, cfg: &GenreSuiteConfig) -> Vec<SyntheticCorpus> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut codes: Vec<&str> = scheme.codes_at_level(cfg.level);
    codes.shuffle(&mut rng);
    codes.truncate(cfg.topics);
    let cfg = GenreSuiteConfig {
        topics: codes.len(),
        ..cfg.clone()
    };
    let base = normalized((1..=cfg.topics).map(|r| 1.0 / r as f64).collect());
    let profiles: Vec<GenreProfile> = (0..cfg.genres)
        .map(|_| genre_profile(&cfg, &base, &mut rng))
        .collect();
    let mut out = Vec::with_capacity(cfg.genres * cfg.corpora_per_genre);
    for (g, p) in profiles.iter().enumerate() {
        for c in 0..cfg.corpora_per_genre {
            let name = format!("g{g}-c{c:02}");
            out.push(SyntheticCorpus {
                genre: format!("genre{g}"),
                document: make_corpus(&cfg, &name, &codes, p, &mut rng),
            });
        }
    }
    out
}

/// A corpus where every text is written by the same `authors` authors, each
/// adding `activity` bytes, together with the reference statistics of its
/// calibration point. Topics are drawn from the scheme level.
pub fn calibration_corpus(
    scheme: &TopicScheme,
    level: u8,
    texts: usize,
    authors: usize,
    activity: f64,
    seed: u64,
) -> (CorpusDocument, ReferenceStats) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let codes = scheme.codes_at_level(level);
    let mut recs: Vec<TextRecord> = (0..texts)
        .map(|x| {
            let mut topics = BTreeMap::new();
            for _ in 0..rng.gen_range(1..4) {
                topics.insert(
                    codes[rng.gen_range(0..codes.len())].to_string(),
                    rng.gen_range(0.1..1.0),
                );
            }
            TextRecord {
                id: format!("x{x:03}"),
                title: format!("text {x}"),
                tokens: (0..6)
                    .map(|_| format!("w{}", rng.gen_range(0..15)))
                    .collect(),
                topics: Some(topics),
                ..Default::default()
            }
        })
        .collect();
    for x in 0..texts {
        for _ in 0..rng.gen_range(0..4) {
            let id = format!("x{:03}", rng.gen_range(0..texts));
            if !recs[x].links.contains(&id) {
                recs[x].links.push(id);
            }
        }
    }
    let revisions = (0..texts)
        .flat_map(|x| {
            (0..authors).map(move |a| Revision {
                text: format!("x{x:03}"),
                author: format!("a{a}"),
                bytes_added: activity,
            })
        })
        .collect();
    // each text adds 2·ā/(k·ā) to every author pair, loops included
    let stats = ReferenceStats {
        mean_activity: activity,
        mean_author_count: authors as f64,
        mean_coauthorship: 2.0 * texts as f64 / authors as f64,
    };
    (
        CorpusDocument {
            name: "calibration".into(),
            texts: recs,
            revisions,
        },
        stats,
    )
}
