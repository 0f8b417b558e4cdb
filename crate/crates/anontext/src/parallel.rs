//! Multi-threaded versions of `apply` and `run_attack`.
//!
//! Work is split per document and results are collected in input order, so
//! the output does not depend on the worker count or on scheduling.

use anontext_core::{
    apply, transform_document, Aggregated, AnonymizationSpec, AttackError, AttackIndex,
    AttackReport, Corpus, Resources, SpecError,
};
use rayon::prelude::*;
use rayon::ThreadPool;

use crate::error::{Error, Result};

/// A pool with `workers` threads; `0` means one per available core.
pub fn thread_pool(workers: usize) -> Result<ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Other(format!("cannot start worker pool: {e}")))
}

/// Same result as [`anontext_core::apply`]. Aggregation stays sequential.
pub fn apply_parallel(
    corpus: &Corpus,
    spec: &AnonymizationSpec,
    resources: &Resources,
    pool: &ThreadPool,
) -> Result<Aggregated, SpecError> {
    if spec.technique.is_corpus_level() {
        return apply(corpus, spec, resources);
    }
    resources.check(&spec.technique)?;
    let docs = pool.install(|| {
        corpus
            .documents()
            .par_iter()
            .map(|d| transform_document(d, spec, resources))
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(Aggregated {
        corpus: Corpus::new(docs, corpus.task_kind())?,
        dropped: 0,
    })
}

/// Same result as [`anontext_core::run_attack`].
pub fn attack_parallel(anonymized: &Corpus, originals: &Corpus, pool: &ThreadPool) -> Result<AttackReport, AttackError> {
    let index = AttackIndex::new(originals)?;
    let outcomes = pool.install(|| {
        anonymized
            .documents()
            .par_iter()
            .map(|d| index.evaluate(d))
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(AttackReport::from_outcomes(outcomes))
}
