"""Identifier similarity benchmark tooling."""

from ._core import (
    ConfigError,
    Embeddings,
    Error,
    InsufficientDataError,
    MissingDataError,
    OovError,
    ParseError,
    UndefinedError,
    ValidationError,
    build_benchmark,
    evaluate,
    krippendorff_alpha,
    levenshtein,
    lex_identifiers,
    lexical_similarity,
    load_vectors,
    needleman_wunsch,
    spearman,
    tokenize_identifier,
    train,
)

__all__ = [
    "ConfigError",
    "Embeddings",
    "Error",
    "InsufficientDataError",
    "MissingDataError",
    "OovError",
    "ParseError",
    "UndefinedError",
    "ValidationError",
    "build_benchmark",
    "evaluate",
    "krippendorff_alpha",
    "levenshtein",
    "lex_identifiers",
    "lexical_similarity",
    "load_vectors",
    "needleman_wunsch",
    "spearman",
    "tokenize_identifier",
    "train",
]
