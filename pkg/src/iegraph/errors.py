"""Exception hierarchy shared across the toolkit.

Everything raised on bad input data derives from ``IEGraphError`` so the
CLI can map data problems to a single exit code. OS-level problems
(missing files, encoding errors) are left to the builtin exceptions.
"""

from __future__ import annotations


class IEGraphError(Exception):
    """Base class for all toolkit errors."""


# --- document wire format -------------------------------------------------

class DocumentError(IEGraphError):
    """A jsonl document record violates the wire format contract."""


class MalformedRecord(DocumentError):
    """Record is not valid JSON or has the wrong structure."""


class UnknownLabel(DocumentError):
    """Entity or relation label outside the closed label sets."""


class SpanOutOfBounds(DocumentError):
    """Token span falls outside the document's global token range."""


class CrossSentenceSpan(DocumentError):
    """Token span does not lie inside a single expected sentence."""


class LengthMismatch(DocumentError):
    """Per-sentence annotation arrays disagree with the sentence count."""


class DuplicateDocKey(DocumentError):
    """Two documents in one corpus share a doc_key."""


class EmptyDocument(DocumentError):
    """Raw text contains no tokens after normalization."""


# --- lexicon ---------------------------------------------------------------

class LexiconError(IEGraphError):
    """Glossary or alias data violates the lexicon contract."""


class FormatError(LexiconError):
    """Lexicon file exists but does not match the expected shape."""


class UnknownCanonical(LexiconError):
    """Alias map key is not a glossary term."""


class DuplicateAlias(LexiconError):
    """Alias listed under two keys, or colliding with a glossary term."""


class EmptyTerm(LexiconError):
    """Term is empty after normalization."""


# --- evaluation ------------------------------------------------------------

class EvaluationError(IEGraphError):
    """Prediction/gold corpora cannot be compared."""


class DocMismatch(EvaluationError):
    """Predicted and gold documents disagree on doc_key or sentences."""


class MissingGold(EvaluationError):
    """Predicted doc_keys with no gold counterpart."""


class MissingPred(EvaluationError):
    """Gold doc_keys with no predicted counterpart."""


class UnknownDoc(EvaluationError):
    """A sidecar annotation references a doc_key not in the corpus."""


# --- export / service ------------------------------------------------------

class UnsupportedFormat(IEGraphError):
    """Requested export format is not implemented."""


class ConfigError(IEGraphError):
    """Service configuration is invalid."""
