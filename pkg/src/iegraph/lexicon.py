"""Glossary of terms of interest, alias map, and term canonicalization.

Alias matching is exact-string after normalization — no stemming, no
edit distance — so behavior is fully predictable. Plural folding is
achieved by listing plurals as aliases. Lexicon files are plain JSON
data: an array of strings for the glossary, an object mapping canonical
term to an array of alias strings.
"""

from __future__ import annotations

import json
import logging
import re
import unicodedata
from dataclasses import dataclass, field

from .errors import DuplicateAlias, EmptyTerm, FormatError, UnknownCanonical

logger = logging.getLogger(__name__)

_WHITESPACE_RUN = re.compile(r"\s+")


def _is_punctuation(char: str) -> bool:
    return unicodedata.category(char).startswith("P")


def normalize_term(raw: str) -> str:
    """Case-fold, collapse whitespace, trim edge whitespace and punctuation.

    May return an empty string for punctuation-only input; callers that
    need a real term must reject that.
    """
    text = _WHITESPACE_RUN.sub(" ", raw.casefold()).strip()
    start, end = 0, len(text)
    while start < end and (_is_punctuation(text[start]) or text[start] == " "):
        start += 1
    while end > start and (_is_punctuation(text[end - 1]) or text[end - 1] == " "):
        end -= 1
    return text[start:end]


@dataclass(frozen=True)
class Lexicon:
    """Immutable glossary + alias map; safe to share across threads.

    ``glossary`` preserves file order; ``aliases`` maps canonical
    glossary term -> alias strings; ``alias_to_canonical`` is the
    derived reverse lookup used by :meth:`canonicalize`.
    """

    glossary: tuple[str, ...]
    aliases: dict[str, tuple[str, ...]] = field(default_factory=dict)
    alias_to_canonical: dict[str, str] = field(default_factory=dict)

    @classmethod
    def empty(cls) -> "Lexicon":
        return cls(glossary=())

    @property
    def glossary_set(self) -> frozenset[str]:
        return frozenset(self.glossary)

    def canonicalize(self, term: str, use_aliases: bool = True) -> str:
        """Normalized, alias-resolved identity of a surface term."""
        normalized = normalize_term(term)
        if not normalized:
            raise EmptyTerm(f"term {term!r} is empty after normalization")
        if use_aliases:
            return self.alias_to_canonical.get(normalized, normalized)
        return normalized


def canonicalize(term: str, lexicon: Lexicon, use_aliases: bool = True) -> str:
    return lexicon.canonicalize(term, use_aliases)


def load_glossary(path: str) -> tuple[str, ...]:
    """Load, normalize, and deduplicate the glossary term array."""
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(data, list) or not all(isinstance(t, str) for t in data):
        raise FormatError(f"{path}: glossary must be a JSON array of strings")
    terms: dict[str, None] = {}
    for raw in data:
        term = normalize_term(raw)
        if not term:
            raise FormatError(f"{path}: glossary entry {raw!r} normalizes to nothing")
        if term in terms:
            logger.warning("glossary %s: %r duplicates %r after normalization", path, raw, term)
            continue
        terms[term] = None
    if not terms:
        raise FormatError(f"{path}: glossary is empty")
    return tuple(terms)


def load_aliases(path: str, glossary: tuple[str, ...]) -> dict[str, tuple[str, ...]]:
    """Load the alias map and cross-validate it against the glossary."""
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise FormatError(f"{path}: alias map must be a JSON object")

    glossary_set = set(glossary)
    aliases: dict[str, tuple[str, ...]] = {}
    owner: dict[str, str] = {}
    for raw_key, raw_values in data.items():
        key = normalize_term(raw_key)
        if key not in glossary_set:
            raise UnknownCanonical(f"{path}: alias key {raw_key!r} is not a glossary term")
        if not isinstance(raw_values, list) or not all(isinstance(v, str) for v in raw_values):
            raise FormatError(f"{path}: aliases for {raw_key!r} must be an array of strings")
        values: dict[str, None] = {}
        for raw_alias in raw_values:
            alias = normalize_term(raw_alias)
            if not alias:
                raise FormatError(f"{path}: alias {raw_alias!r} normalizes to nothing")
            if alias in glossary_set:
                raise DuplicateAlias(f"{path}: alias {raw_alias!r} collides with glossary term {alias!r}")
            if alias in owner and owner[alias] != key:
                raise DuplicateAlias(f"{path}: alias {raw_alias!r} listed under both {owner[alias]!r} and {key!r}")
            owner[alias] = key
            values[alias] = None
        aliases[key] = tuple(values)
    return aliases


def load_lexicon(glossary_path: str | None, aliases_path: str | None = None) -> Lexicon:
    """Convenience loader; aliases require a glossary for cross-validation."""
    if glossary_path is None:
        if aliases_path is not None:
            raise FormatError("an alias map requires a glossary to validate against")
        return Lexicon.empty()
    glossary = load_glossary(glossary_path)
    aliases = load_aliases(aliases_path, glossary) if aliases_path else {}
    reverse = {alias: key for key, values in aliases.items() for alias in values}
    return Lexicon(glossary=glossary, aliases=aliases, alias_to_canonical=reverse)
