// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;

use super::{DefinitionalSetting, InductionConfig, InductionError, NetworkMode, TopicNetwork};
use crate::graph::GraphBuilder;
use crate::scalar::Scalar;

/// Element `element` of generating layer `layer` linked to a text with
/// margin weight `margin`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Element<T> {
    pub layer: usize,
    pub element: usize,
    pub margin: T,
}

/// Evidence that text `text` is about `topic`, with one linked element per
/// selected generating layer.
#[derive(Clone, Copy, Debug)]
pub struct VertexEvidence<'e, T> {
    pub text: usize,
    pub topic: &'e str,
    pub theta: T,
    pub elements: &'e [Element<T>],
}

/// Evidence for a topic arc coming from the text arc `source_text ->
/// target_text` and one element pair per selected layer, each pair being an
/// arc of its layer with weight `layer_arcs[i]`.
#[derive(Clone, Copy, Debug)]
pub struct ArcEvidence<'e, T> {
    pub source_text: usize,
    pub target_text: usize,
    pub source_topic: &'e str,
    pub target_topic: &'e str,
    pub source_theta: T,
    pub target_theta: T,
    pub source_elements: &'e [Element<T>],
    pub target_elements: &'e [Element<T>],
    pub layer_arcs: &'e [T],
    pub text_arc: T,
}

/// The four evidence combinators. `beta` and `delta` score single pieces of
/// evidence, `alpha` and `gamma` post-process the per-topic and per-arc sums.
/// All must map non-negative input to non-negative output.
pub trait Combinators<T: Scalar>: Sync {
    fn alpha(&self, _topic: &str, sum: T) -> T {
        sum
    }

    fn beta(&self, ev: &VertexEvidence<'_, T>) -> T;

    fn gamma(&self, _source: &str, _target: &str, sum: T) -> T {
        sum
    }

    fn delta(&self, ev: &ArcEvidence<'_, T>) -> T;

    /// When false, vertex sums range over texts only and `beta` sees no
    /// elements.
    fn vertex_layers(&self) -> bool {
        true
    }
}

fn checked<T: Scalar>(what: &'static str, v: T) -> Result<T, InductionError> {
    if v.is_nan() || v < T::zero() {
        Err(InductionError::CombinatorDomain {
            what,
            value: v.as_f64(),
        })
    } else {
        Ok(v)
    }
}

/// Cartesian product of the margin rows of `text` over `layers`.
fn combinations<T: Scalar>(
    s: &DefinitionalSetting<'_, T>,
    layers: &[usize],
    text: usize,
) -> Vec<Vec<Element<T>>> {
    let mut out = vec![Vec::with_capacity(layers.len())];
    for &li in layers {
        let row = &s.lmn().layers()[li].margins[text];
        let mut next = Vec::with_capacity(out.len() * row.len());
        for prefix in &out {
            for &(element, margin) in row {
                let mut c = prefix.clone();
                c.push(Element {
                    layer: li,
                    element,
                    margin,
                });
                next.push(c);
            }
        }
        out = next;
    }
    out
}

/// Evaluates vertex and arc sums over the text layer and the generating
/// layers `layers` (indices into the network's layer list). Topics are
/// drawn from the support of each text's membership distribution;
/// zero-weight vertices and arcs are dropped.
pub fn induce_generic<T: Scalar, C: Combinators<T>>(
    s: &DefinitionalSetting<'_, T>,
    layers: &[usize],
    comb: &C,
    mode: NetworkMode,
    cfg: &InductionConfig,
) -> Result<TopicNetwork<T>, InductionError> {
    let text_layer = s.lmn().text_layer();
    if text_layer.is_empty() {
        return Err(InductionError::EmptyTextLayer);
    }
    if let Some(&bad) = layers.iter().find(|&&l| l >= s.lmn().layers().len()) {
        return Err(InductionError::InvalidConfig(format!(
            "no generating layer {bad}"
        )));
    }
    let n = text_layer.vertex_count();
    let combos: Vec<Vec<Vec<Element<T>>>> = (0..n).map(|x| combinations(s, layers, x)).collect();
    let none: Vec<Vec<Element<T>>> = vec![Vec::new()];

    let mut mu: BTreeMap<&str, T> = BTreeMap::new();
    for x in 0..n {
        let cs = if comb.vertex_layers() {
            &combos[x]
        } else {
            &none
        };
        for (topic, theta) in s.theta()[x].iter() {
            for elements in cs {
                let b = checked(
                    "beta",
                    comb.beta(&VertexEvidence {
                        text: x,
                        topic,
                        theta,
                        elements,
                    }),
                )?;
                let acc = mu.entry(topic).or_insert_with(T::zero);
                *acc = *acc + b;
            }
        }
    }

    let mut nu: BTreeMap<(&str, &str), T> = BTreeMap::new();
    let mut layer_arcs = vec![T::zero(); layers.len()];
    for arc in text_layer.arcs() {
        let (x, y) = (arc.source, arc.target);
        for (vt, tx) in s.theta()[x].iter() {
            for (wt, ty) in s.theta()[y].iter() {
                for cx in &combos[x] {
                    'pairs: for cy in &combos[y] {
                        for (i, &li) in layers.iter().enumerate() {
                            match s.lmn().layers()[li]
                                .graph
                                .arc_weight(cx[i].element, cy[i].element)
                            {
                                Some(w) => layer_arcs[i] = w,
                                None => continue 'pairs,
                            }
                        }
                        let d = checked(
                            "delta",
                            comb.delta(&ArcEvidence {
                                source_text: x,
                                target_text: y,
                                source_topic: vt,
                                target_topic: wt,
                                source_theta: tx,
                                target_theta: ty,
                                source_elements: cx,
                                target_elements: cy,
                                layer_arcs: &layer_arcs,
                                text_arc: arc.weight,
                            }),
                        )?;
                        let acc = nu.entry((vt, wt)).or_insert_with(T::zero);
                        *acc = *acc + d;
                    }
                }
            }
        }
    }

    let mut b = GraphBuilder::new();
    for (topic, sum) in mu {
        let w = checked("alpha", comb.alpha(topic, sum))?;
        if w > T::zero() {
            b.add_vertex(topic, w)?;
        }
    }
    for ((v, w), sum) in nu {
        let weight = checked("gamma", comb.gamma(v, w, sum))?;
        if weight == T::zero() {
            continue;
        }
        match (b.index_of(v), b.index_of(w)) {
            (Some(i), Some(j)) => b.add_arc(i, j, weight, mode.as_str())?,
            _ => log::warn!("dropping arc {v} -> {w}: endpoint has zero weight"),
        }
    }
    TopicNetwork::new(b.build(), mode, true, s.provenance(cfg))
}
