"""seqkit: executable semantics and bounded checking for an SMT theory of sequences."""

__version__ = "0.1.0"
