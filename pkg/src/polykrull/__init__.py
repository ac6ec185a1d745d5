"""Krull, Dedekind and UFD tests for rings between Z[X] and Q[X]."""
from __future__ import annotations

__version__ = "0.1.0"
