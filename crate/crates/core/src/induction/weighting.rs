// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;

use super::generic::{ArcEvidence, Combinators, VertexEvidence};
use super::{DefinitionalSetting, InductionConfig, InductionError, NetworkMode, TopicNetwork};
use crate::corpus::{GeneratingLayer, LayerKind};
use crate::graph::GraphBuilder;
use crate::scalar::Scalar;
use crate::topics::TopicDistribution;

/// `2a / (a + b)`: 1 at `a = b`, below 1 for smaller `a`, above for larger.
pub(crate) fn scale<T: Scalar>(a: T, b: T) -> T {
    T::lit(2.0) * a / (a + b)
}

fn activity_factor<T: Scalar>(act: T, mean: T, p: T) -> T {
    if (act - mean).abs() <= T::lit(1e-12) * mean {
        T::one()
    } else if act < mean {
        T::one() / p
    } else {
        p
    }
}

/// Author-weighted membership: `β₁ · c · act / total`.
fn beta2<T: Scalar>(b1: T, act: T, total: T, mean: T, p: T) -> T {
    b1 * (activity_factor(act, mean, p) * (act / total))
}

fn author_layer<'s, T: Scalar>(
    s: &'s DefinitionalSetting<'_, T>,
) -> Result<(usize, &'s GeneratingLayer<T>), InductionError> {
    s.lmn()
        .layers()
        .iter()
        .enumerate()
        .find(|(_, l)| l.kind == LayerKind::Author)
        .ok_or(InductionError::MissingLayer("author"))
}

fn lexicon_layer<'s, T: Scalar>(
    s: &'s DefinitionalSetting<'_, T>,
) -> Result<(usize, &'s GeneratingLayer<T>), InductionError> {
    s.lmn()
        .layers()
        .iter()
        .enumerate()
        .find(|(_, l)| l.kind == LayerKind::Lexicon)
        .ok_or(InductionError::MissingLayer("lexicon"))
}

fn build<T: Scalar>(
    s: &DefinitionalSetting<'_, T>,
    cfg: &InductionConfig,
    mode: NetworkMode,
    mu: BTreeMap<&str, T>,
    nu: BTreeMap<(&str, &str), T>,
) -> Result<TopicNetwork<T>, InductionError> {
    let mut b = GraphBuilder::new();
    for (topic, w) in mu {
        if w > T::zero() {
            b.add_vertex(topic, w)?;
        }
    }
    for ((v, w), weight) in nu {
        if weight > T::zero() {
            let (i, j) = (
                b.index_of(v).expect("arc topic has weight"),
                b.index_of(w).expect("arc topic has weight"),
            );
            b.add_arc(i, j, weight, mode.as_str())?;
        }
    }
    TopicNetwork::new(b.build(), mode, true, s.provenance(cfg))
}

/// Text topic network: topic weights sum the retained memberships, topic
/// arcs sum membership products over hyperlinked text pairs.
pub fn induce_ttn<T: Scalar>(
    s: &DefinitionalSetting<'_, T>,
    cfg: &InductionConfig,
) -> Result<TopicNetwork<T>, InductionError> {
    cfg.validate()?;
    let text_layer = s.lmn().text_layer();
    if text_layer.is_empty() {
        return Err(InductionError::EmptyTextLayer);
    }
    let beta = s.beta1(cfg.top_m);
    let mut mu: BTreeMap<&str, T> = BTreeMap::new();
    for d in &beta {
        for (v, b) in d.iter() {
            let acc = mu.entry(v).or_insert_with(T::zero);
            *acc = *acc + b;
        }
    }
    let mut nu: BTreeMap<(&str, &str), T> = BTreeMap::new();
    for arc in text_layer.arcs() {
        for (v, bv) in beta[arc.source].iter() {
            for (w, bw) in beta[arc.target].iter() {
                let acc = nu.entry((v, w)).or_insert_with(T::zero);
                *acc = *acc + bv * bw;
            }
        }
    }
    build(s, cfg, NetworkMode::Ttn, mu, nu)
}

struct AtnParts<T> {
    beta: Vec<TopicDistribution<T>>,
    totals: Vec<T>,
    omega: BTreeMap<String, T>,
    mean_activity: T,
    mean_coauthorship: T,
    p: T,
}

fn atn_parts<T: Scalar>(
    s: &DefinitionalSetting<'_, T>,
    cfg: &InductionConfig,
    authors: &GeneratingLayer<T>,
) -> Result<AtnParts<T>, InductionError> {
    cfg.validate()?;
    let reference = cfg.reference_or_err()?;
    let beta = s.beta1(cfg.top_m);
    let text_layer = s.lmn().text_layer();
    let totals: Vec<T> = (0..text_layer.vertex_count())
        .map(|x| authors.margin_total(x))
        .collect();
    let n_bar = T::lit(reference.mean_author_count);
    let mut omega_sum: BTreeMap<&str, (T, usize)> = BTreeMap::new();
    for (x, d) in beta.iter().enumerate() {
        if d.is_empty() {
            continue;
        }
        if authors.margins[x].is_empty() {
            return Err(InductionError::UnauthoredText {
                text: text_layer.label(x).to_string(),
                topic: d.codes().next().expect("non-empty").to_string(),
            });
        }
        let omega_x = scale(T::from_count(authors.margins[x].len()), n_bar);
        for v in d.codes() {
            let e = omega_sum.entry(v).or_insert((T::zero(), 0));
            e.0 = e.0 + omega_x;
            e.1 += 1;
        }
    }
    let omega = omega_sum
        .into_iter()
        .map(|(v, (sum, k))| (v.to_string(), sum / T::from_count(k)))
        .collect();
    Ok(AtnParts {
        beta,
        totals,
        omega,
        mean_activity: T::lit(reference.mean_activity),
        mean_coauthorship: T::lit(reference.mean_coauthorship),
        p: T::lit(cfg.p),
    })
}

/// Author topic network over the author layer of the setting.
pub fn induce_atn<T: Scalar>(
    s: &DefinitionalSetting<'_, T>,
    ttn: &TopicNetwork<T>,
    cfg: &InductionConfig,
) -> Result<TopicNetwork<T>, InductionError> {
    let text_layer = s.lmn().text_layer();
    if text_layer.is_empty() {
        return Err(InductionError::EmptyTextLayer);
    }
    let (_, authors) = author_layer(s)?;
    let parts = atn_parts(s, cfg, authors)?;
    let AtnParts {
        beta,
        totals,
        omega,
        mean_activity,
        mean_coauthorship,
        p,
    } = &parts;

    let mut mu: BTreeMap<&str, T> = BTreeMap::new();
    for (x, d) in beta.iter().enumerate() {
        for (v, b) in d.iter() {
            for &(_, act) in &authors.margins[x] {
                let acc = mu.entry(v).or_insert_with(T::zero);
                *acc = *acc + beta2(b, act, totals[x], *mean_activity, *p);
            }
        }
    }
    for (v, w) in mu.iter_mut() {
        *w = omega[*v] * *w;
    }

    let mut nu: BTreeMap<(&str, &str), T> = BTreeMap::new();
    for arc in text_layer.arcs() {
        let (x, y) = (arc.source, arc.target);
        for (v, bv) in beta[x].iter() {
            for (w, bw) in beta[y].iter() {
                for &(r, ar) in &authors.margins[x] {
                    for &(s_, as_) in &authors.margins[y] {
                        if let Some(n2) = authors.graph.arc_weight(r, s_) {
                            let term = scale(n2, *mean_coauthorship)
                                * beta2(bv, ar, totals[x], *mean_activity, *p)
                                * beta2(bw, as_, totals[y], *mean_activity, *p);
                            let acc = nu.entry((v, w)).or_insert_with(T::zero);
                            *acc = *acc + term;
                        }
                    }
                }
            }
        }
    }
    let atn = build(s, cfg, NetworkMode::Atn, mu, nu)?;
    debug_assert_eq!(atn.graph().vertex_count(), ttn.graph().vertex_count());
    Ok(atn)
}

/// Word topic network: arcs of the text topic network re-weighted by the
/// token types shared by linked texts; vertices are copied unchanged.
pub fn induce_wtn<T: Scalar>(
    s: &DefinitionalSetting<'_, T>,
    ttn: &TopicNetwork<T>,
    cfg: &InductionConfig,
) -> Result<TopicNetwork<T>, InductionError> {
    cfg.validate()?;
    let text_layer = s.lmn().text_layer();
    if text_layer.is_empty() {
        return Err(InductionError::EmptyTextLayer);
    }
    let (_, lex) = lexicon_layer(s)?;
    let beta = s.beta1(cfg.top_m);
    let mut nu: BTreeMap<(&str, &str), T> = BTreeMap::new();
    for arc in text_layer.arcs() {
        let (x, y) = (arc.source, arc.target);
        for (v, bv) in beta[x].iter() {
            for (w, bw) in beta[y].iter() {
                for &(r, mr) in &lex.margins[x] {
                    for related in lex.graph.out_arcs(r) {
                        let ms = lex.margin(y, related.target);
                        if ms > T::zero() {
                            let acc = nu.entry((v, w)).or_insert_with(T::zero);
                            *acc = *acc + bv * bw * mr * ms * (related.weight + arc.weight);
                        }
                    }
                }
            }
        }
    }
    let g = ttn.graph();
    let mu: BTreeMap<&str, T> = g
        .vertices()
        .iter()
        .map(|v| (v.label.as_str(), v.weight))
        .collect();
    build(s, cfg, NetworkMode::Wtn, mu, nu)
}

/// Combinators reproducing [`induce_ttn`] (no generating layers).
pub struct TtnCombinators<T> {
    beta: Vec<TopicDistribution<T>>,
}

impl<T: Scalar> TtnCombinators<T> {
    pub fn new(
        s: &DefinitionalSetting<'_, T>,
        cfg: &InductionConfig,
    ) -> Result<Self, InductionError> {
        cfg.validate()?;
        Ok(TtnCombinators {
            beta: s.beta1(cfg.top_m),
        })
    }
}

impl<T: Scalar> Combinators<T> for TtnCombinators<T> {
    fn beta(&self, ev: &VertexEvidence<'_, T>) -> T {
        self.beta[ev.text].get(ev.topic)
    }

    fn delta(&self, ev: &ArcEvidence<'_, T>) -> T {
        self.beta[ev.source_text].get(ev.source_topic)
            * self.beta[ev.target_text].get(ev.target_topic)
    }
}

/// Combinators reproducing [`induce_atn`]; use with the author layer as the
/// only generating layer.
pub struct AtnCombinators<T> {
    parts: AtnParts<T>,
    layer: usize,
}

impl<T: Scalar> AtnCombinators<T> {
    pub fn new(
        s: &DefinitionalSetting<'_, T>,
        cfg: &InductionConfig,
    ) -> Result<Self, InductionError> {
        let (layer, authors) = author_layer(s)?;
        Ok(AtnCombinators {
            parts: atn_parts(s, cfg, authors)?,
            layer,
        })
    }

    /// Index of the author layer, to pass to [`super::induce_generic`].
    pub fn layer(&self) -> usize {
        self.layer
    }
}

impl<T: Scalar> Combinators<T> for AtnCombinators<T> {
    fn alpha(&self, topic: &str, sum: T) -> T {
        match self.parts.omega.get(topic) {
            Some(&o) => o * sum,
            None => T::zero(),
        }
    }

    fn beta(&self, ev: &VertexEvidence<'_, T>) -> T {
        let p = &self.parts;
        beta2(
            p.beta[ev.text].get(ev.topic),
            ev.elements[0].margin,
            p.totals[ev.text],
            p.mean_activity,
            p.p,
        )
    }

    fn delta(&self, ev: &ArcEvidence<'_, T>) -> T {
        let p = &self.parts;
        scale(ev.layer_arcs[0], p.mean_coauthorship)
            * beta2(
                p.beta[ev.source_text].get(ev.source_topic),
                ev.source_elements[0].margin,
                p.totals[ev.source_text],
                p.mean_activity,
                p.p,
            )
            * beta2(
                p.beta[ev.target_text].get(ev.target_topic),
                ev.target_elements[0].margin,
                p.totals[ev.target_text],
                p.mean_activity,
                p.p,
            )
    }
}

/// Combinators equivalent to [`induce_wtn`]; use with the lexicon layer.
pub struct WtnCombinators<T> {
    beta: Vec<TopicDistribution<T>>,
    layer: usize,
}

impl<T: Scalar> WtnCombinators<T> {
    pub fn new(
        s: &DefinitionalSetting<'_, T>,
        cfg: &InductionConfig,
    ) -> Result<Self, InductionError> {
        cfg.validate()?;
        let (layer, _) = lexicon_layer(s)?;
        Ok(WtnCombinators {
            beta: s.beta1(cfg.top_m),
            layer,
        })
    }

    pub fn layer(&self) -> usize {
        self.layer
    }
}

impl<T: Scalar> Combinators<T> for WtnCombinators<T> {
    fn beta(&self, ev: &VertexEvidence<'_, T>) -> T {
        self.beta[ev.text].get(ev.topic)
    }

    fn delta(&self, ev: &ArcEvidence<'_, T>) -> T {
        self.beta[ev.source_text].get(ev.source_topic)
            * self.beta[ev.target_text].get(ev.target_topic)
            * ev.source_elements[0].margin
            * ev.target_elements[0].margin
            * (ev.layer_arcs[0] + ev.text_arc)
    }

    fn vertex_layers(&self) -> bool {
        false
    }
}
