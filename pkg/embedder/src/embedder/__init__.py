"""Token-aligned embedding service for BERTScore-style evaluation."""

__version__ = "0.1.0"
