"""Toxic span detection with a BiLSTM-CRF tagger."""

from ._toxspan import (
    CheckpointError,
    DataError,
    Tagger,
    apply_gate,
    categorize,
    char_length,
    crf_log_partition,
    format_span_literal,
    labels_to_spans,
    mean_f1,
    parse_span_literal,
    per_post_scores,
    run_cli,
    spans_to_labels,
    tokenize,
    viterbi,
)

__all__ = [
    "CheckpointError",
    "DataError",
    "Tagger",
    "apply_gate",
    "categorize",
    "char_length",
    "crf_log_partition",
    "format_span_literal",
    "labels_to_spans",
    "mean_f1",
    "parse_span_literal",
    "per_post_scores",
    "run_cli",
    "spans_to_labels",
    "tokenize",
    "viterbi",
]
