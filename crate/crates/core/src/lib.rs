// SPDX-License-Identifier: Apache-2.0

//! Topic networks induced from linguistic multilayer networks, similarity
//! measures over them, and leave-one-out classification of corpora by the
//! networks they induce.
//!
//! The numeric core is generic over [`Scalar`]; the aliases below fix it to
//! `f64` or `f32`.

pub mod analysis;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod induction;
pub mod learning;
pub mod pipeline;
pub mod scalar;
pub mod similarity;
pub mod synth;
pub mod topics;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Graph64 = graph::LabeledDigraph<f64>;
pub type Graph32 = graph::LabeledDigraph<f32>;
pub type TopicNetwork64 = induction::TopicNetwork<f64>;
pub type TopicNetwork32 = induction::TopicNetwork<f32>;
pub type Lmn64 = corpus::LinguisticMultilayerNetwork<f64>;
pub type Lmn32 = corpus::LinguisticMultilayerNetwork<f32>;
pub type FeatureMatrix64 = learning::FeatureMatrix<f64>;
pub type FeatureMatrix32 = learning::FeatureMatrix<f32>;
