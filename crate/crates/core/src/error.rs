// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

use crate::analysis::AnalysisError;
use crate::corpus::CorpusError;
use crate::graph::GraphError;
use crate::induction::InductionError;
use crate::learning::LearningError;
use crate::pipeline::PipelineError;
use crate::similarity::SimilarityError;
use crate::topics::TopicError;

/// Any error of this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Topic(#[from] TopicError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Induction(#[from] InductionError),
    #[error(transparent)]
    Similarity(#[from] SimilarityError),
    #[error(transparent)]
    Learning(#[from] LearningError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
