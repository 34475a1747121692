// SPDX-License-Identifier: Apache-2.0

//! End-to-end runs driven by a TOML configuration.
//!
//! A run loads (or generates) corpora, classifies their texts, induces the
//! requested topic networks, computes similarity matrices, classifies the
//! networks against the gold standard, evaluates the random baselines, fits
//! power laws to vertex weights and computes community overlaps. Everything
//! is written below the output directory; `report.json` carries the config
//! hash and seeds.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::analysis::{fuzzy_jaccard, powerlaw_fit, rank_table, CommunityProfile, PowerFit};
use crate::corpus::{Corpus, LinguisticMultilayerNetwork, ReferenceStats};
use crate::induction::{
    induce_atn, induce_ttn, induce_wtn, DefinitionalSetting, InductionConfig, InductionError,
    NetworkMode, TopicNetwork,
};
use crate::learning::{
    baseline_b1, baseline_b2, baseline_b3, baseline_b4, run_mode, EvalReport, FeatureMatrix,
    GeneticConfig, GoldStandard, Knn, ScoreDistribution, SearchMode, Task,
};
use crate::similarity::{similarity_matrix, MeasureContext, MeasureId};
use crate::synth::{genre_suite, GenreSuiteConfig};
use crate::topics::{Classifier, LexiconClassifier, TopicScheme};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("config: {0}")]
    Config(String),
    #[error("{stage}: {message}")]
    Stage {
        stage: &'static str,
        message: String,
    },
    #[error("writing {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

fn stage<E: std::fmt::Display>(stage: &'static str) -> impl Fn(E) -> PipelineError {
    move |e| PipelineError::Stage {
        stage,
        message: e.to_string(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub path: PathBuf,
    /// Gold class of the corpus' networks.
    #[serde(default)]
    pub class: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BaselineConfig {
    pub b1_iterations: usize,
    pub reps: usize,
    pub b1: bool,
    pub b2: bool,
    pub b3: bool,
    pub b4: bool,
    /// Feature selection applied inside the B2–B4 repetitions.
    pub mode: SearchMode,
}

impl Default for BaselineConfig {
    fn default() -> Self {
        BaselineConfig {
            b1_iterations: 100_000,
            reps: 100,
            b1: true,
            b2: true,
            b3: true,
            b4: true,
            mode: SearchMode::All,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub name: String,
    pub seed: u64,
    /// Output directory, relative to the config file.
    pub output: PathBuf,
    /// Topic scheme JSON; the bundled sample scheme when absent.
    pub scheme: Option<PathBuf>,
    /// Lexicon TSV; texts' stored topic memberships are used when absent.
    pub lexicon: Option<PathBuf>,
    /// Gold standard TSV overriding corpus classes.
    pub gold: Option<PathBuf>,
    pub induction: InductionConfig,
    pub modes: Vec<NetworkMode>,
    pub measures: Vec<MeasureId>,
    pub classification: Vec<SearchMode>,
    /// Geodesic cap of the cosine measures.
    pub cap: Option<f64>,
    pub genetic: GeneticConfig,
    pub baselines: BaselineConfig,
    pub corpora: Vec<CorpusEntry>,
    pub synthetic: Option<GenreSuiteConfig>,
    pub export_dot: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            name: "run".into(),
            seed: 0,
            output: PathBuf::from("out"),
            scheme: None,
            lexicon: None,
            gold: None,
            induction: InductionConfig::default(),
            modes: vec![NetworkMode::Ttn],
            measures: vec![MeasureId::CosAVWPhi1],
            classification: vec![SearchMode::All],
            cap: None,
            genetic: GeneticConfig::default(),
            baselines: BaselineConfig::default(),
            corpora: Vec::new(),
            synthetic: None,
            export_dot: false,
        }
    }
}

impl PipelineConfig {
    pub fn from_toml(s: &str) -> Result<Self, PipelineError> {
        let cfg: Self = toml::from_str(s).map_err(|e| PipelineError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        self.induction
            .validate()
            .map_err(|e| PipelineError::Config(e.to_string()))?;
        self.genetic
            .validate()
            .map_err(|e| PipelineError::Config(e.to_string()))?;
        if self.corpora.is_empty() == self.synthetic.is_none() {
            return Err(PipelineError::Config(
                "give either [[corpora]] entries or a [synthetic] section".into(),
            ));
        }
        if self.modes.contains(&NetworkMode::Generic) {
            return Err(PipelineError::Config(
                "mode `generic` cannot be run from a config".into(),
            ));
        }
        Ok(())
    }

    /// Hex SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(
            serde_json::to_vec(self).expect("config serializes"),
        ))
    }
}

/// Induces the requested networks of one corpus, in the order of `modes`.
/// ATN and WTN are derived from the TTN. Without reference statistics in
/// `cfg`, ATN uses statistics estimated on the corpus itself.
pub fn induce_corpus(
    corpus: &Corpus,
    scheme: &TopicScheme,
    classifier: &dyn Classifier<f64>,
    cfg: &InductionConfig,
    modes: &[NetworkMode],
) -> Result<Vec<TopicNetwork<f64>>, InductionError> {
    let lmn = LinguisticMultilayerNetwork::from_corpus(corpus)?;
    let s = DefinitionalSetting::classify(scheme, cfg.level, classifier, corpus, &lmn)?;
    let mut cfg = cfg.clone();
    if cfg.reference.is_none() && modes.contains(&NetworkMode::Atn) {
        cfg.reference = Some(ReferenceStats::from_corpus(corpus)?);
    }
    let ttn = induce_ttn(&s, &cfg)?;
    modes
        .iter()
        .map(|m| match m {
            NetworkMode::Ttn => Ok(ttn.clone()),
            NetworkMode::Atn => induce_atn(&s, &ttn, &cfg),
            NetworkMode::Wtn => induce_wtn(&s, &ttn, &cfg),
            NetworkMode::Generic => Err(InductionError::InvalidConfig(
                "generic mode needs combinators".into(),
            )),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub name: String,
    pub class: String,
    pub texts: usize,
    pub links: usize,
    pub authors: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NetworkSummary {
    pub corpus: String,
    pub mode: NetworkMode,
    pub vertices: usize,
    pub arcs: usize,
    pub power_fit: Option<PowerFit>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationEntry {
    pub network: NetworkMode,
    pub measure: MeasureId,
    pub mode: SearchMode,
    pub macro_f: f64,
    pub features: usize,
    pub selected: Vec<String>,
    pub report: EvalReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaselineEntry {
    pub baseline: String,
    pub network: Option<NetworkMode>,
    pub measure: Option<MeasureId>,
    pub mode: SearchMode,
    pub distribution: ScoreDistribution,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub name: String,
    pub config_hash: String,
    pub induction_hash: String,
    pub seed: u64,
    pub corpora: Vec<CorpusSummary>,
    pub networks: Vec<NetworkSummary>,
    pub classification: Vec<ClassificationEntry>,
    pub baselines: Vec<BaselineEntry>,
    /// Fuzzy Jaccard of the author communities, keyed by corpus pair.
    pub jaccard: BTreeMap<String, BTreeMap<String, f64>>,
}

struct Writer<'a> {
    root: &'a Path,
}

impl Writer<'_> {
    fn put(&self, rel: &str, content: &str) -> Result<(), PipelineError> {
        let path = self.root.join(rel);
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir).map_err(|source| PipelineError::Io {
                path: dir.to_path_buf(),
                source,
            })?;
        }
        fs::write(&path, content).map_err(|source| PipelineError::Io { path, source })
    }
}

fn read(base: &Path, rel: &Path, what: &'static str) -> Result<String, PipelineError> {
    let p = base.join(rel);
    fs::read_to_string(&p).map_err(|e| PipelineError::Stage {
        stage: what,
        message: format!("{}: {e}", p.display()),
    })
}

/// Loads `path`, runs it with paths resolved against its directory.
pub fn run_config_file(path: &Path) -> Result<RunReport, PipelineError> {
    let text = fs::read_to_string(path)
        .map_err(|e| PipelineError::Config(format!("{}: {e}", path.display())))?;
    let cfg = PipelineConfig::from_toml(&text)?;
    let base = path.parent().unwrap_or(Path::new("."));
    run_pipeline(&cfg, base)
}

pub fn run_pipeline(cfg: &PipelineConfig, base: &Path) -> Result<RunReport, PipelineError> {
    cfg.validate()?;
    let out = base.join(&cfg.output);
    let w = Writer { root: &out };

    // scheme and classifier
    let scheme = match &cfg.scheme {
        Some(p) => TopicScheme::from_json(&read(base, p, "scheme")?).map_err(stage("scheme"))?,
        None => TopicScheme::sample(),
    };
    let lexicon = match &cfg.lexicon {
        Some(p) => Some(
            LexiconClassifier::<f64>::from_tsv(&read(base, p, "lexicon")?)
                .and_then(|l| l.projected(&scheme, cfg.induction.level))
                .map_err(stage("lexicon"))?,
        ),
        None => None,
    };

    // ingest
    let mut corpora: Vec<(Corpus, String)> = Vec::new();
    if let Some(syn) = &cfg.synthetic {
        for sc in genre_suite(&scheme, syn) {
            corpora.push((
                Corpus::from_document(sc.document).map_err(stage("ingest"))?,
                sc.genre,
            ));
        }
    }
    for entry in &cfg.corpora {
        let c = Corpus::from_json(&read(base, &entry.path, "ingest")?).map_err(stage("ingest"))?;
        corpora.push((c, entry.class.clone().unwrap_or_default()));
    }
    let gold = match &cfg.gold {
        Some(p) => GoldStandard::from_tsv(&read(base, p, "gold")?).map_err(stage("gold"))?,
        None => GoldStandard::new(
            corpora
                .iter()
                .map(|(c, class)| (c.name().to_string(), class.clone())),
        )
        .map_err(stage("gold"))?,
    };
    let summaries: Vec<CorpusSummary> = corpora
        .iter()
        .map(|(c, class)| CorpusSummary {
            name: c.name().to_string(),
            class: gold.class_of(c.name()).unwrap_or(class).to_string(),
            texts: c.len(),
            links: c.link_count(),
            authors: CommunityProfile::from_corpus(c, None).shares().len(),
        })
        .collect();

    // classify + induce
    let mut nets: BTreeMap<NetworkMode, Vec<TopicNetwork<f64>>> = BTreeMap::new();
    let mut network_summaries = Vec::new();
    let mut rank_csv = String::from("corpus,network,rank,weight\n");
    for (c, _) in &corpora {
        let stored;
        let clf: &dyn Classifier<f64> = match &lexicon {
            Some(l) => l,
            None => {
                stored = c
                    .precomputed_topics::<f64>()
                    .map_err(stage("classify"))?
                    .ok_or_else(|| PipelineError::Stage {
                        stage: "classify",
                        message: format!(
                            "corpus `{}` has no stored topics and no lexicon is configured",
                            c.name()
                        ),
                    })?;
                &stored
            }
        };
        let induced =
            induce_corpus(c, &scheme, clf, &cfg.induction, &cfg.modes).map_err(stage("induce"))?;
        for t in induced {
            let mode = t.mode();
            let weights: Vec<f64> = t.graph().vertices().iter().map(|v| v.weight).collect();
            for (r, x) in rank_table(&weights) {
                let _ = writeln!(rank_csv, "{},{},{r},{x}", c.name(), mode.as_str());
            }
            let stem = format!("networks/{}.{}", c.name(), mode.as_str());
            w.put(&format!("{stem}.json"), &t.to_json())?;
            if cfg.export_dot {
                w.put(&format!("{stem}.dot"), &t.to_dot())?;
            }
            network_summaries.push(NetworkSummary {
                corpus: c.name().to_string(),
                mode,
                vertices: t.graph().vertex_count(),
                arcs: t.graph().arc_count(),
                power_fit: powerlaw_fit(&weights).ok(),
            });
            nets.entry(mode).or_default().push(t);
        }
    }
    w.put("powerfit/rank_weights.csv", &rank_csv)?;
    let mut fit_csv = String::from("corpus,network,exponent,prefactor,adjusted_r2,n\n");
    for s in &network_summaries {
        if let Some(f) = &s.power_fit {
            let _ = writeln!(
                fit_csv,
                "{},{},{},{},{},{}",
                s.corpus,
                s.mode.as_str(),
                f.exponent,
                f.prefactor,
                f.adjusted_r2,
                f.n
            );
        }
    }
    w.put("powerfit/fits.csv", &fit_csv)?;

    // similarity + classification + baselines
    let ctx = MeasureContext {
        cap: cfg.cap,
        ..MeasureContext::for_scheme(&scheme, cfg.induction.level)
    };
    let knn = Knn::default();
    let mut classification = Vec::new();
    let mut baselines = Vec::new();
    let b = &cfg.baselines;
    if b.b1 {
        baselines.push(BaselineEntry {
            baseline: "B1".into(),
            network: None,
            measure: None,
            mode: SearchMode::All,
            distribution: baseline_b1(&gold, b.b1_iterations, cfg.seed)
                .map_err(stage("baselines"))?,
        });
    }
    let mut b3_done: Vec<(f64, f64)> = Vec::new();
    for (&mode, list) in &nets {
        let ids: Vec<String> = list.iter().map(|t| t.provenance().corpus.clone()).collect();
        for &m in &cfg.measures {
            let mat: FeatureMatrix<f64> =
                similarity_matrix(list, m, &ctx).map_err(stage("similarity"))?;
            w.put(
                &format!("matrices/{}.{}.csv", mode.as_str(), m.as_str()),
                &mat.to_csv_string(),
            )?;
            let task = Task::new(&mat, &gold, &knn).map_err(stage("classification"))?;
            for &sm in &cfg.classification {
                let ga = GeneticConfig {
                    seed: cfg.seed,
                    ..cfg.genetic.clone()
                };
                let r = run_mode(&task, sm, &ga).map_err(stage("classification"))?;
                classification.push(ClassificationEntry {
                    network: mode,
                    measure: m,
                    mode: sm,
                    macro_f: r.report.macro_f,
                    features: r.selected.len(),
                    selected: r.selected,
                    report: r.report,
                });
            }
            let ga = GeneticConfig {
                seed: cfg.seed,
                ..cfg.genetic.clone()
            };
            if b.b2 {
                let graphs: Vec<_> = list.iter().map(|t| t.graph()).collect();
                let d = baseline_b2(
                    &ids, &graphs, m, &ctx, &gold, &knn, b.mode, &ga, b.reps, cfg.seed,
                )
                .map_err(stage("baselines"))?;
                baselines.push(BaselineEntry {
                    baseline: "B2".into(),
                    network: Some(mode),
                    measure: Some(m),
                    mode: b.mode,
                    distribution: d,
                });
            }
            if b.b3 && !b3_done.contains(&m.range()) {
                b3_done.push(m.range());
                let sub = gold.clone();
                let d = baseline_b3(&sub, m.range(), &knn, b.mode, &ga, b.reps, cfg.seed)
                    .map_err(stage("baselines"))?;
                baselines.push(BaselineEntry {
                    baseline: "B3".into(),
                    network: None,
                    measure: Some(m),
                    mode: b.mode,
                    distribution: d,
                });
            }
            if b.b4 {
                let k = gold.class_labels().len();
                let d = baseline_b4(&mat, &gold, k, &knn, b.mode, &ga, b.reps, cfg.seed)
                    .map_err(stage("baselines"))?;
                baselines.push(BaselineEntry {
                    baseline: "B4".into(),
                    network: Some(mode),
                    measure: Some(m),
                    mode: b.mode,
                    distribution: d,
                });
            }
        }
    }
    let mut box_csv = String::from("baseline,network,measure,mode,rep,macro_f\n");
    for e in &baselines {
        for (i, s) in e.distribution.scores.iter().enumerate() {
            let _ = writeln!(
                box_csv,
                "{},{},{},{},{i},{s}",
                e.baseline,
                e.network.map_or("", |n| n.as_str()),
                e.measure.map_or("", |m| m.as_str()),
                mode_str(e.mode),
            );
        }
    }
    w.put("baselines/scores.csv", &box_csv)?;
    let mut class_csv = String::from("network,measure,mode,class,precision,recall,f\n");
    for e in &classification {
        for c in &e.report.classes {
            let _ = writeln!(
                class_csv,
                "{},{},{},{},{},{},{}",
                e.network.as_str(),
                e.measure.as_str(),
                mode_str(e.mode),
                c.class,
                c.precision,
                c.recall,
                c.f
            );
        }
    }
    w.put("classification/per_class.csv", &class_csv)?;

    // community overlap
    let profiles: Vec<(String, CommunityProfile)> = corpora
        .iter()
        .map(|(c, _)| (c.name().to_string(), CommunityProfile::from_corpus(c, None)))
        .collect();
    let mut jaccard = BTreeMap::new();
    let mut jac_csv = String::from("a,b,fuzzy_jaccard\n");
    for (a, pa) in &profiles {
        let row: &mut BTreeMap<String, f64> = jaccard.entry(a.clone()).or_default();
        for (b, pb) in &profiles {
            let j = fuzzy_jaccard(pa, pb);
            row.insert(b.clone(), j);
            let _ = writeln!(jac_csv, "{a},{b},{j}");
        }
    }
    w.put("jaccard.csv", &jac_csv)?;
    w.put("gold.tsv", &gold.to_tsv())?;

    let report = RunReport {
        name: cfg.name.clone(),
        config_hash: cfg.hash(),
        induction_hash: cfg.induction.hash(),
        seed: cfg.seed,
        corpora: summaries,
        networks: network_summaries,
        classification,
        baselines,
        jaccard,
    };
    w.put(
        "report.json",
        &serde_json::to_string_pretty(&report).expect("report serializes"),
    )?;
    Ok(report)
}

fn mode_str(m: SearchMode) -> &'static str {
    match m {
        SearchMode::All => "all",
        SearchMode::Opt => "opt",
        SearchMode::Ext => "ext",
    }
}
