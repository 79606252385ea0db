// SPDX-License-Identifier: Apache-2.0

//! Semantic-preserving corruptions of code summarization corpora, BLEU
//! scoring, and the bookkeeping for blind pairwise human evaluation.

pub mod cli;
pub mod corpus;
pub mod eval;
pub mod human;
pub mod lang;
pub mod transform;
