"""HTTP service over the trained pipeline: analyze text, flag informal
words, and return ranked academic substitutes."""

from .config import ServiceConfig, load_config
from .engine import AnalysisEngine, AnalysisResult, tokenize_with_offsets

__all__ = [
    "AnalysisEngine",
    "AnalysisResult",
    "ServiceConfig",
    "load_config",
    "tokenize_with_offsets",
]
