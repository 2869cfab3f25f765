"""Academic writing aid toolkit.

Builds academic word/phrase resources from contrasting reference corpora,
derives informal-word-identification and paraphrase-ranking datasets from
lexical-substitution data, trains the corresponding models, and serves an
interactive analysis API.
"""

__version__ = "0.1.0"
