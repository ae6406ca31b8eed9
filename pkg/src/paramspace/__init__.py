"""Parameter words over finite alphabets and the word encodings of the
universal triangle-free graph and the universal partial order."""

from .envelopes import EmbeddingType, Envelope, embedding_type, is_canonical_type, minimal_envelope, tau
from .structures import Structure, format_structure, parse_structure
from .words import Alphabet, Space, enumerate_space, format_word, parse_word, substitute

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "Space",
    "Structure",
    "Envelope",
    "EmbeddingType",
    "parse_word",
    "format_word",
    "substitute",
    "enumerate_space",
    "minimal_envelope",
    "embedding_type",
    "tau",
    "is_canonical_type",
    "parse_structure",
    "format_structure",
]
