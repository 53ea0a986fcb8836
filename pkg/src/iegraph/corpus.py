"""Turn raw text files into model-ready, annotation-empty jsonl documents.

Prediction quality on raw exports degrades badly when hard line wraps
survive into the data, so line-break stripping is on by default and has
to be disabled explicitly. Sentence splitting and tokenization are
deliberately rule-based: deterministic, dependency-free, and good
enough for desk-scale corpora.
"""

from __future__ import annotations

import os
import re

from .documents import Document
from .errors import EmptyDocument

_LINE_BREAK_RUN = re.compile(r"\s*[\r\n]+\s*")
_SENTENCE_GAP = re.compile(r"(?<=[.!?])\s+")

# Detached when leading/trailing on a whitespace-separated chunk.
# Interior hyphens and periods stay put so terms like "smart-contract"
# and "v2.0" survive as single tokens.
PUNCTUATION = set('.,;:!?()[]"\'')


def strip_line_breaks(content: str) -> str:
    """Replace every run of line breaks (plus adjacent whitespace) with one space."""
    return _LINE_BREAK_RUN.sub(" ", content).strip()


def split_sentences(text: str) -> list[str]:
    """Split line-break-free text into sentences.

    A boundary is a '.', '!' or '?' followed by whitespace and an
    uppercase letter or digit; everything else (abbreviations,
    "v2.0"-style tokens) stays inside the sentence.
    """
    sentences: list[str] = []
    start = 0
    for match in _SENTENCE_GAP.finditer(text):
        follow = text[match.end()] if match.end() < len(text) else ""
        if follow.isupper() or follow.isdigit():
            segment = text[start:match.start()].strip()
            if segment:
                sentences.append(segment)
            start = match.end()
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


def tokenize(sentence: str) -> list[str]:
    """Whitespace-split, then detach leading/trailing punctuation as tokens."""
    tokens: list[str] = []
    for chunk in sentence.split():
        leading: list[str] = []
        trailing: list[str] = []
        while chunk and chunk[0] in PUNCTUATION:
            leading.append(chunk[0])
            chunk = chunk[1:]
        while chunk and chunk[-1] in PUNCTUATION:
            trailing.append(chunk[-1])
            chunk = chunk[:-1]
        tokens.extend(leading)
        if chunk:
            tokens.append(chunk)
        tokens.extend(reversed(trailing))
    return tokens


def format_document(doc_id: str, content: str, *, strip_breaks: bool = True,
                    dataset: str | None = None) -> Document:
    """Build an annotation-empty Document from raw text.

    Raises EmptyDocument when the text contains no tokens after
    normalization.
    """
    text = strip_line_breaks(content) if strip_breaks else content.strip()
    sentences = [tokenize(s) for s in split_sentences(text)]
    sentences = [s for s in sentences if s]
    if not sentences:
        raise EmptyDocument(f"document {doc_id!r} contains no tokens")
    empty: tuple[tuple, ...] = tuple(() for _ in sentences)
    return Document(
        doc_key=doc_id,
        sentences=tuple(tuple(s) for s in sentences),
        ner=empty,
        relations=empty,
        dataset=dataset,
    )


def format_directory(path: str, *, strip_breaks: bool = True,
                     dataset: str | None = None) -> list[Document]:
    """Format every ``.txt`` file in ``path``, ordered by doc_id.

    doc_id is the file name minus its extension. Files must be valid
    UTF-8; undecodable bytes are a hard error rather than a silent
    corruption of token offsets.
    """
    names = sorted(
        os.path.splitext(name)[0]
        for name in os.listdir(path)
        if name.endswith(".txt") and os.path.isfile(os.path.join(path, name))
    )
    docs = []
    for doc_id in names:
        with open(os.path.join(path, doc_id + ".txt"), encoding="utf-8") as fh:
            content = fh.read()
        docs.append(format_document(doc_id, content, strip_breaks=strip_breaks, dataset=dataset))
    return docs
