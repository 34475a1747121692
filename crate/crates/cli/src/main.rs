// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use topicnet_core::analysis::{fuzzy_jaccard, powerlaw_fit, rank_table, CommunityProfile};
use topicnet_core::corpus::{Corpus, ReferenceStats};
use topicnet_core::induction::{InductionConfig, NetworkMode};
use topicnet_core::learning::{
    baseline_b1, baseline_b2, baseline_b3, baseline_b4, run_mode, FeatureMatrix, GeneticConfig,
    GoldStandard, Knn, SearchMode, Task,
};
use topicnet_core::pipeline::{induce_corpus, run_config_file};
use topicnet_core::similarity::{similarity_matrix, MeasureContext, MeasureId};
use topicnet_core::synth::{genre_suite, GenreSuiteConfig};
use topicnet_core::topics::{Classifier, LexiconClassifier, TopicScheme};
use topicnet_core::TopicNetwork64;

#[derive(Parser)]
#[command(
    name = "topicnet",
    version,
    about = "Induce, compare and classify topic networks"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a corpus and print its summary.
    Ingest {
        corpus: PathBuf,
        /// Write the normalized corpus here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Induce topic networks of one corpus.
    Induce(InduceArgs),
    /// Similarity matrix of all networks in a directory.
    Similarity {
        #[arg(long)]
        networks: PathBuf,
        #[arg(long)]
        measure: String,
        /// Only networks of this mode.
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        scheme: Option<PathBuf>,
        #[arg(long)]
        cap: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Leave-one-out classification of a feature matrix.
    Classify {
        /// One or more matrices; several are joined column-wise.
        #[arg(long, required = true)]
        matrix: Vec<PathBuf>,
        #[arg(long)]
        gold: PathBuf,
        #[arg(long, default_value = "all")]
        mode: String,
        #[command(flatten)]
        ga: GaArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random baseline score distributions.
    Baseline(BaselineArgs),
    /// Power-law fits of network vertex weights.
    Powerfit {
        #[arg(required = true)]
        networks: Vec<PathBuf>,
        /// Rank-weight table for plotting.
        #[arg(long)]
        ranks: Option<PathBuf>,
    },
    /// Fuzzy Jaccard overlap of corpus author communities.
    Jaccard {
        #[arg(required = true, num_args = 2..)]
        corpora: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full pipeline from a TOML config.
    Run { config: PathBuf },
    /// Write a synthetic genre suite and its gold standard.
    Synth {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 3)]
        genres: usize,
        #[arg(long, default_value_t = 10)]
        corpora_per_genre: usize,
        #[arg(long, default_value_t = 40)]
        texts: usize,
        #[arg(long, default_value_t = 0.3)]
        contrast: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args)]
struct InduceArgs {
    corpus: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Comma-separated subset of ttn, atn, wtn.
    #[arg(long, default_value = "ttn,atn,wtn")]
    modes: String,
    #[arg(long)]
    scheme: Option<PathBuf>,
    /// Lexicon TSV; stored text topics are used otherwise.
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Reference statistics JSON for author weighting.
    #[arg(long)]
    reference: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    level: u8,
    #[arg(long, default_value_t = 5)]
    top_m: usize,
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    #[arg(long)]
    dot: bool,
}

#[derive(Args)]
struct GaArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    population: usize,
    #[arg(long, default_value_t = 50)]
    rounds: usize,
    #[arg(long, default_value_t = 500)]
    ext_rounds: usize,
}

impl GaArgs {
    fn config(&self) -> GeneticConfig {
        GeneticConfig {
            population: self.population,
            rounds: self.rounds,
            ext_rounds: self.ext_rounds,
            seed: self.seed,
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    B1,
    B2,
    B3,
    B4,
}

#[derive(Args)]
struct BaselineArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    gold: PathBuf,
    /// Observed matrix (B4).
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Network directory (B2).
    #[arg(long)]
    networks: Option<PathBuf>,
    /// Measure whose networks (B2) or codomain (B3) is used.
    #[arg(long)]
    measure: Option<String>,
    #[arg(long)]
    network_mode: Option<String>,
    /// Number of random classes (B4); defaults to the gold class count.
    #[arg(long)]
    classes: Option<usize>,
    #[arg(long, default_value = "all")]
    mode: String,
    #[arg(long, default_value_t = 100)]
    reps: usize,
    #[arg(long, default_value_t = 100_000)]
    iterations: usize,
    #[command(flatten)]
    ga: GaArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match Cli::parse().cmd {
        Command::Ingest { corpus, out } => {
            let c = load_corpus(&corpus)?;
            let authors = CommunityProfile::from_corpus(&c, None).shares().len();
            let summary = serde_json::json!({
                "name": c.name(),
                "texts": c.len(),
                "links": c.link_count(),
                "dropped_links": c.dropped_links(),
                "revisions": c.history().revisions().len(),
                "authors": authors,
            });
            println!("{}", serde_json::to_string_pretty(&summary)?);
            if let Some(out) = out {
                write(&out, &c.to_json())?;
            }
        }
        Command::Induce(a) => induce(a)?,
        Command::Similarity {
            networks,
            measure,
            mode,
            scheme,
            cap,
            out,
        } => {
            let m = parse_measure(&measure)?;
            let nets = load_networks(&networks, mode.as_deref())?;
            let scheme = load_scheme(scheme.as_deref())?;
            let level = nets[0].provenance().level;
            let ctx = MeasureContext {
                cap,
                ..MeasureContext::for_scheme(&scheme, level)
            };
            let mat = similarity_matrix(&nets, m, &ctx)?;
            emit(out.as_deref(), &mat.to_csv_string())?;
        }
        Command::Classify {
            matrix,
            gold,
            mode,
            ga,
            out,
        } => {
            let m = load_matrices(&matrix)?;
            let gold = load_gold(&gold)?;
            let knn = Knn::default();
            let task = Task::new(&m, &gold, &knn)?;
            let r = run_mode(&task, mode.parse()?, &ga.config())?;
            eprintln!(
                "macro-F {:.4} with {} of {} features",
                r.report.macro_f,
                r.selected.len(),
                m.n_features()
            );
            emit(out.as_deref(), &serde_json::to_string_pretty(&r)?)?;
        }
        Command::Baseline(a) => baseline(a)?,
        Command::Powerfit { networks, ranks } => {
            let mut fits = String::from("network,exponent,prefactor,adjusted_r2,n\n");
            let mut table = String::from("network,rank,weight\n");
            for p in &networks {
                let t = load_network(p)?;
                let name = format!("{}.{}", t.provenance().corpus, t.mode().as_str());
                let w: Vec<f64> = t.graph().vertices().iter().map(|v| v.weight).collect();
                for (r, x) in rank_table(&w) {
                    let _ = writeln!(table, "{name},{r},{x}");
                }
                match powerlaw_fit(&w) {
                    Ok(f) => {
                        let _ = writeln!(
                            fits,
                            "{name},{},{},{},{}",
                            f.exponent, f.prefactor, f.adjusted_r2, f.n
                        );
                    }
                    Err(e) => log::warn!("{name}: {e}"),
                }
            }
            print!("{fits}");
            if let Some(r) = ranks {
                write(&r, &table)?;
            }
        }
        Command::Jaccard { corpora, out } => {
            let profiles: Vec<(String, CommunityProfile)> = corpora
                .iter()
                .map(|p| {
                    load_corpus(p).map(|c| {
                        (
                            c.name().to_string(),
                            CommunityProfile::from_corpus(&c, None),
                        )
                    })
                })
                .collect::<Result<_>>()?;
            let mut csv = String::from("a,b,fuzzy_jaccard\n");
            for (a, pa) in &profiles {
                for (b, pb) in &profiles {
                    let _ = writeln!(csv, "{a},{b},{}", fuzzy_jaccard(pa, pb));
                }
            }
            emit(out.as_deref(), &csv)?;
        }
        Command::Run { config } => {
            let report = run_config_file(&config)?;
            for e in &report.classification {
                println!(
                    "{}\t{}\t{}\tmacro-F {:.4}\tfeatures {}",
                    e.network.as_str(),
                    e.measure.as_str(),
                    serde_json::to_value(e.mode)?.as_str().unwrap_or_default(),
                    e.macro_f,
                    e.features
                );
            }
            for b in &report.baselines {
                println!(
                    "{}\t{}\t{}\tmean {:.4}\tsd {:.4}",
                    b.baseline,
                    b.network.map_or("-", |n| n.as_str()),
                    b.measure.map_or("-", |m| m.as_str()),
                    b.distribution.mean,
                    b.distribution.sd
                );
            }
        }
        Command::Synth {
            out,
            genres,
            corpora_per_genre,
            texts,
            contrast,
            seed,
        } => {
            let cfg = GenreSuiteConfig {
                genres,
                corpora_per_genre,
                texts_per_corpus: texts,
                topic_contrast: contrast,
                seed,
                ..Default::default()
            };
            let suite = genre_suite(&TopicScheme::sample(), &cfg);
            let mut gold = String::new();
            for s in &suite {
                let c = Corpus::from_document(s.document.clone())?;
                write(&out.join(format!("{}.json", c.name())), &c.to_json())?;
                let _ = writeln!(gold, "{}\t{}", c.name(), s.genre);
            }
            write(&out.join("gold.tsv"), &gold)?;
            eprintln!("{} corpora written to {}", suite.len(), out.display());
        }
    }
    Ok(())
}

fn induce(a: InduceArgs) -> Result<()> {
    let corpus = load_corpus(&a.corpus)?;
    let scheme = load_scheme(a.scheme.as_deref())?;
    let modes: Vec<NetworkMode> = a
        .modes
        .split(',')
        .map(|s| s.trim().parse().map_err(anyhow::Error::msg))
        .collect::<Result<_>>()?;
    let reference = match &a.reference {
        Some(p) => Some(ReferenceStats::from_json(&read(p)?)?),
        None => None,
    };
    let cfg = InductionConfig {
        top_m: a.top_m,
        p: a.p,
        level: a.level,
        reference,
    };
    cfg.validate()?;
    let stored;
    let lexicon;
    let clf: &dyn Classifier<f64> = match &a.lexicon {
        Some(p) => {
            lexicon = LexiconClassifier::<f64>::from_tsv(&read(p)?)?.projected(&scheme, a.level)?;
            &lexicon
        }
        None => {
            stored = corpus.precomputed_topics::<f64>()?.with_context(|| {
                format!(
                    "corpus `{}` has no stored topics; pass --lexicon",
                    corpus.name()
                )
            })?;
            &stored
        }
    };
    for t in induce_corpus(&corpus, &scheme, clf, &cfg, &modes)? {
        let stem = format!("{}.{}", corpus.name(), t.mode().as_str());
        write(&a.out.join(format!("{stem}.json")), &t.to_json())?;
        if a.dot {
            write(&a.out.join(format!("{stem}.dot")), &t.to_dot())?;
        }
        eprintln!(
            "{stem}: {} vertices, {} arcs",
            t.graph().vertex_count(),
            t.graph().arc_count()
        );
    }
    Ok(())
}

fn baseline(a: BaselineArgs) -> Result<()> {
    let gold = load_gold(&a.gold)?;
    let mode: SearchMode = a.mode.parse()?;
    let ga = a.ga.config();
    let seed = a.ga.seed;
    let knn = Knn::default();
    let measure = a.measure.as_deref().map(parse_measure).transpose()?;
    let d = match a.kind {
        Kind::B1 => baseline_b1(&gold, a.iterations, seed)?,
        Kind::B2 => {
            let dir = a.networks.as_deref().context("B2 needs --networks")?;
            let m = measure.context("B2 needs --measure")?;
            let nets = load_networks(dir, a.network_mode.as_deref())?;
            let scheme = TopicScheme::sample();
            let ctx = MeasureContext::for_scheme(&scheme, nets[0].provenance().level);
            let ids: Vec<String> = nets.iter().map(|t| t.provenance().corpus.clone()).collect();
            let graphs: Vec<_> = nets.iter().map(|t| t.graph()).collect();
            baseline_b2(&ids, &graphs, m, &ctx, &gold, &knn, mode, &ga, a.reps, seed)?
        }
        Kind::B3 => {
            let range = measure.map_or((0.0, 1.0), |m| m.range());
            baseline_b3(&gold, range, &knn, mode, &ga, a.reps, seed)?
        }
        Kind::B4 => {
            let m = load_matrices(&[a.matrix.context("B4 needs --matrix")?])?;
            let k = a.classes.unwrap_or_else(|| gold.class_labels().len());
            baseline_b4(&m, &gold, k, &knn, mode, &ga, a.reps, seed)?
        }
    };
    emit(a.out.as_deref(), &serde_json::to_string_pretty(&d)?)
}

fn read(p: &Path) -> Result<String> {
    fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
}

fn write(p: &Path, s: &str) -> Result<()> {
    if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(p, s).with_context(|| format!("writing {}", p.display()))
}

fn emit(out: Option<&Path>, s: &str) -> Result<()> {
    match out {
        Some(p) => write(p, s),
        None => {
            print!("{s}");
            if !s.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn load_corpus(p: &Path) -> Result<Corpus> {
    Corpus::from_json(&read(p)?).with_context(|| format!("loading corpus {}", p.display()))
}

fn load_scheme(p: Option<&Path>) -> Result<TopicScheme> {
    Ok(match p {
        Some(p) => TopicScheme::from_json(&read(p)?)?,
        None => TopicScheme::sample(),
    })
}

fn load_gold(p: &Path) -> Result<GoldStandard> {
    GoldStandard::from_tsv(&read(p)?)
        .with_context(|| format!("loading gold standard {}", p.display()))
}

fn load_matrices(paths: &[PathBuf]) -> Result<FeatureMatrix<f64>> {
    let parts: Vec<FeatureMatrix<f64>> = paths
        .iter()
        .map(|p| {
            let f = fs::File::open(p).with_context(|| format!("opening {}", p.display()))?;
            FeatureMatrix::read_csv(f).with_context(|| format!("reading matrix {}", p.display()))
        })
        .collect::<Result<_>>()?;
    if parts.len() == 1 {
        return Ok(parts.into_iter().next().expect("one part"));
    }
    Ok(FeatureMatrix::hconcat(&parts)?)
}

fn load_network(p: &Path) -> Result<TopicNetwork64> {
    TopicNetwork64::from_json(&read(p)?).with_context(|| format!("loading network {}", p.display()))
}

/// Every `*.json` network below `dir` (sorted by file name), optionally of one mode.
fn load_networks(dir: &Path, mode: Option<&str>) -> Result<Vec<TopicNetwork64>> {
    let mode: Option<NetworkMode> = mode
        .map(|m| m.parse().map_err(anyhow::Error::msg))
        .transpose()?;
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("listing {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    let mut nets = Vec::new();
    let mut seen: BTreeMap<String, PathBuf> = BTreeMap::new();
    for p in paths {
        let t = load_network(&p)?;
        if mode.is_some_and(|m| m != t.mode()) {
            continue;
        }
        if let Some(prev) = seen.insert(t.provenance().corpus.clone(), p.clone()) {
            bail!(
                "{} and {} both hold networks of corpus `{}`; select one mode with --mode",
                prev.display(),
                p.display(),
                t.provenance().corpus
            );
        }
        nets.push(t);
    }
    if nets.len() < 2 {
        bail!("need at least two networks in {}", dir.display());
    }
    Ok(nets)
}

fn parse_measure(s: &str) -> Result<MeasureId> {
    s.parse().map_err(|e| anyhow::anyhow!("{e}"))
}
