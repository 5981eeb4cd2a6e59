"""Document ingestion and hybrid retrieval over user rule documents.

Documents are split into overlapping character chunks (cut points snap back
to a whitespace boundary when one falls in the trailing 15% of the chunk),
indexed twice, and queried three ways:

* lexical: Okapi BM25 (k1=1.2, b=0.75) over lowercase alphanumeric tokens,
  idf = ln(1 + (N - n + 0.5) / (n + 0.5));
* semantic: exact cosine scan over unit-norm embeddings;
* hybrid: reciprocal-rank fusion of the two, fused(c) = sum over methods of
  1 / (60 + rank_m(c)), each method contributing its top-2k.

The store is immutable after ingestion and safe to query concurrently. The
bundled embedding backend is a hashed bag-of-words (sha256 token bucketing,
d=256, L2-normalized counts): deterministic and offline, which keeps tests
and recorded evaluation runs reproducible. A remote OpenAI-style embeddings
backend is provided for real deployments.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import re
from dataclasses import dataclass, field
from typing import Mapping, Optional, Protocol

import numpy as np

BM25_K1 = 1.2
BM25_B = 0.75
RRF_CONSTANT = 60
SNAP_WINDOW_FRACTION = 0.15

_TOKEN_RE = re.compile(r"[a-z0-9]+")


class EmptyDocument(ValueError):
    """Ingestion was handed an empty document."""


class BadParams(ValueError):
    """chunk_size/overlap combination that cannot make progress."""


class BackendUnavailable(RuntimeError):
    """A remote backend could not be reached."""


def tokenize(text: str) -> list[str]:
    return _TOKEN_RE.findall(text.lower())


# ---------------------------------------------------------------------------
# embedding backends


class EmbeddingBackend(Protocol):
    dim: int

    def embed(self, text: str) -> np.ndarray: ...


def _normalize(vec: np.ndarray) -> np.ndarray:
    norm = float(np.linalg.norm(vec))
    if norm == 0.0:
        return vec
    return vec / norm


class HashedBagOfWordsEmbedder:
    """Deterministic test embedder: hash tokens into buckets, count, L2-norm.

    sha256 keeps the bucketing stable across processes (unlike hash()),
    and bag-of-words makes it order-invariant by construction.
    """

    def __init__(self, dim: int = 256) -> None:
        self.dim = dim

    def _bucket(self, token: str) -> int:
        digest = hashlib.sha256(token.encode("utf-8")).hexdigest()
        return int(digest, 16) % self.dim

    def embed(self, text: str) -> np.ndarray:
        vec = np.zeros(self.dim, dtype=np.float64)
        for token in tokenize(text):
            vec[self._bucket(token)] += 1.0
        return _normalize(vec)


class RemoteEmbedder:
    """OpenAI-style /v1/embeddings client; credential read from an env var."""

    def __init__(
        self,
        endpoint: str,
        model: str,
        dim: int,
        credential_env: str = "EMBEDDING_API_KEY",
        timeout: float = 30.0,
    ) -> None:
        self.endpoint = endpoint.rstrip("/")
        self.model = model
        self.dim = dim
        self.credential_env = credential_env
        self.timeout = timeout

    def embed(self, text: str) -> np.ndarray:
        import httpx

        headers = {}
        key = os.environ.get(self.credential_env)
        if key:
            headers["Authorization"] = f"Bearer {key}"
        try:
            resp = httpx.post(
                f"{self.endpoint}/v1/embeddings",
                json={"model": self.model, "input": [text]},
                headers=headers,
                timeout=self.timeout,
            )
            resp.raise_for_status()
        except Exception as exc:  # noqa: BLE001 - uniform error surface
            raise BackendUnavailable(f"embedding endpoint failed: {exc}") from exc
        data = resp.json()["data"][0]["embedding"]
        vec = np.asarray(data, dtype=np.float64)
        if vec.shape != (self.dim,):
            raise BackendUnavailable(
                f"embedding dimension {vec.shape} does not match configured {self.dim}"
            )
        return _normalize(vec)


# ---------------------------------------------------------------------------
# chunking


@dataclass(frozen=True)
class Chunk:
    chunk_id: str
    doc_id: str
    char_offset: int
    text: str
    embedding: tuple[float, ...] = ()


def chunk_document(doc: str, chunk_size: int = 800, overlap: int = 100) -> list[tuple[int, str]]:
    """Split a document into (char_offset, text) pieces.

    Consecutive pieces share exactly `overlap` characters: after a cut point
    snaps backward to just past the nearest whitespace in the trailing 15%
    of the chunk, the next piece starts at snapped_end - overlap. A snap is
    skipped when it would stall progress (degenerate overlap settings).
    """
    if not doc:
        raise EmptyDocument("cannot chunk an empty document")
    if overlap < 0 or chunk_size <= overlap:
        raise BadParams(f"need chunk_size > overlap >= 0, got {chunk_size}/{overlap}")

    window = max(1, int(chunk_size * SNAP_WINDOW_FRACTION))
    pieces: list[tuple[int, str]] = []
    offset = 0
    while True:
        end = offset + chunk_size
        if end >= len(doc):
            pieces.append((offset, doc[offset:]))
            break
        lo = max(offset + 1, end - window)
        snapped = end
        for i in range(end - 1, lo - 1, -1):
            if doc[i].isspace():
                snapped = i + 1
                break
        if snapped - overlap <= offset:
            snapped = end
        pieces.append((offset, doc[offset:snapped]))
        offset = snapped - overlap
    return pieces


# ---------------------------------------------------------------------------
# the store


@dataclass(frozen=True)
class RetrievalResult:
    chunk_id: str
    lexical_score: float = 0.0
    semantic_score: float = 0.0
    fused_score: float = 0.0
    lexical_rank: Optional[int] = None
    semantic_rank: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "chunk_id": self.chunk_id,
            "lexical_score": self.lexical_score,
            "semantic_score": self.semantic_score,
            "fused_score": self.fused_score,
            "lexical_rank": self.lexical_rank,
            "semantic_rank": self.semantic_rank,
        }


@dataclass
class DocumentStore:
    """Chunks plus the two indexes; read-only once built."""

    embedder: EmbeddingBackend
    chunk_size: int
    overlap: int
    chunks: list[Chunk] = field(default_factory=list)
    postings: dict[str, list[tuple[int, int]]] = field(default_factory=dict)
    lengths: list[int] = field(default_factory=list)
    avg_length: float = 0.0
    matrix: np.ndarray = field(default_factory=lambda: np.zeros((0, 0)))

    def chunk_by_id(self, chunk_id: str) -> Optional[Chunk]:
        for c in self.chunks:
            if c.chunk_id == chunk_id:
                return c
        return None

    def __len__(self) -> int:
        return len(self.chunks)


def _build_indexes(store: DocumentStore) -> None:
    for idx, chunk in enumerate(store.chunks):
        tokens = tokenize(chunk.text)
        store.lengths.append(len(tokens))
        counts: dict[str, int] = {}
        for t in tokens:
            counts[t] = counts.get(t, 0) + 1
        for term, tf in counts.items():
            store.postings.setdefault(term, []).append((idx, tf))
    store.avg_length = (sum(store.lengths) / len(store.lengths)) if store.lengths else 0.0
    if store.chunks:
        store.matrix = np.asarray([c.embedding for c in store.chunks], dtype=np.float64)
    else:
        store.matrix = np.zeros((0, store.embedder.dim))


def ingest(
    documents: Mapping[str, str],
    embedder: EmbeddingBackend,
    chunk_size: int = 800,
    overlap: int = 100,
) -> DocumentStore:
    """Chunk, embed, and index a set of documents keyed by doc_id."""
    store = DocumentStore(embedder=embedder, chunk_size=chunk_size, overlap=overlap)
    for doc_id in sorted(documents):
        try:
            pieces = chunk_document(documents[doc_id], chunk_size, overlap)
        except (EmptyDocument, BadParams) as exc:
            raise type(exc)(f"{doc_id}: {exc}") from exc
        for i, (offset, text) in enumerate(pieces):
            vec = embedder.embed(text)
            store.chunks.append(
                Chunk(
                    chunk_id=f"{doc_id}#{i:03d}",
                    doc_id=doc_id,
                    char_offset=offset,
                    text=text,
                    embedding=tuple(float(x) for x in vec),
                )
            )
    _build_indexes(store)
    return store


# ---------------------------------------------------------------------------
# search


def _bm25_scores(store: DocumentStore, query: str) -> dict[int, float]:
    n_chunks = len(store.chunks)
    scores: dict[int, float] = {}
    if n_chunks == 0 or store.avg_length == 0.0:
        return scores
    for term in tokenize(query):
        postings = store.postings.get(term, [])
        if not postings:
            continue
        n = len(postings)
        idf = math.log(1.0 + (n_chunks - n + 0.5) / (n + 0.5))
        for idx, tf in postings:
            dl = store.lengths[idx]
            denom = tf + BM25_K1 * (1.0 - BM25_B + BM25_B * dl / store.avg_length)
            scores[idx] = scores.get(idx, 0.0) + idf * tf * (BM25_K1 + 1.0) / denom
    return scores


def lexical_search(store: DocumentStore, query: str, k: int = 5) -> list[RetrievalResult]:
    scores = _bm25_scores(store, query)
    ranked = sorted(
        ((idx, s) for idx, s in scores.items() if s > 0.0),
        key=lambda p: (-p[1], store.chunks[p[0]].chunk_id),
    )[:k]
    return [
        RetrievalResult(
            chunk_id=store.chunks[idx].chunk_id,
            lexical_score=s,
            lexical_rank=rank,
        )
        for rank, (idx, s) in enumerate(ranked, start=1)
    ]


def semantic_search(store: DocumentStore, query: str, k: int = 5) -> list[RetrievalResult]:
    if not store.chunks:
        return []
    qvec = store.embedder.embed(query)
    sims = store.matrix @ qvec
    ranked = sorted(
        enumerate(float(s) for s in sims),
        key=lambda p: (-p[1], store.chunks[p[0]].chunk_id),
    )[:k]
    return [
        RetrievalResult(
            chunk_id=store.chunks[idx].chunk_id,
            semantic_score=s,
            semantic_rank=rank,
        )
        for rank, (idx, s) in enumerate(ranked, start=1)
    ]


def hybrid_retrieve(store: DocumentStore, query: str, k: int = 5) -> list[RetrievalResult]:
    """Reciprocal-rank fusion of lexical and semantic top-2k lists."""
    lex = lexical_search(store, query, 2 * k)
    sem = semantic_search(store, query, 2 * k)
    merged: dict[str, RetrievalResult] = {}
    for r in lex:
        merged[r.chunk_id] = RetrievalResult(
            chunk_id=r.chunk_id,
            lexical_score=r.lexical_score,
            lexical_rank=r.lexical_rank,
            fused_score=1.0 / (RRF_CONSTANT + r.lexical_rank),
        )
    for r in sem:
        prev = merged.get(r.chunk_id)
        if prev is None:
            merged[r.chunk_id] = RetrievalResult(
                chunk_id=r.chunk_id,
                semantic_score=r.semantic_score,
                semantic_rank=r.semantic_rank,
                fused_score=1.0 / (RRF_CONSTANT + r.semantic_rank),
            )
        else:
            merged[r.chunk_id] = RetrievalResult(
                chunk_id=prev.chunk_id,
                lexical_score=prev.lexical_score,
                lexical_rank=prev.lexical_rank,
                semantic_score=r.semantic_score,
                semantic_rank=r.semantic_rank,
                fused_score=prev.fused_score + 1.0 / (RRF_CONSTANT + r.semantic_rank),
            )
    ranked = sorted(merged.values(), key=lambda r: (-r.fused_score, r.chunk_id))
    return ranked[:k]


# ---------------------------------------------------------------------------
# snapshots

SNAPSHOT_VERSION = 1


def save_store(store: DocumentStore, path: str) -> None:
    payload = {
        "version": SNAPSHOT_VERSION,
        "dim": store.embedder.dim,
        "chunk_size": store.chunk_size,
        "overlap": store.overlap,
        "chunks": [
            {
                "chunk_id": c.chunk_id,
                "doc_id": c.doc_id,
                "char_offset": c.char_offset,
                "text": c.text,
                "embedding": list(c.embedding),
            }
            for c in store.chunks
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh)


def load_store(path: str, embedder: EmbeddingBackend) -> DocumentStore:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    if payload.get("version") != SNAPSHOT_VERSION:
        raise ValueError(f"unsupported snapshot version {payload.get('version')!r}")
    if payload["dim"] != embedder.dim:
        raise ValueError(
            f"snapshot dimension {payload['dim']} does not match embedder {embedder.dim}"
        )
    store = DocumentStore(
        embedder=embedder,
        chunk_size=payload["chunk_size"],
        overlap=payload["overlap"],
    )
    for c in payload["chunks"]:
        store.chunks.append(
            Chunk(
                chunk_id=c["chunk_id"],
                doc_id=c["doc_id"],
                char_offset=c["char_offset"],
                text=c["text"],
                embedding=tuple(float(x) for x in c["embedding"]),
            )
        )
    _build_indexes(store)
    return store


__all__ = [
    "BM25_K1",
    "BM25_B",
    "RRF_CONSTANT",
    "BackendUnavailable",
    "BadParams",
    "Chunk",
    "DocumentStore",
    "EmbeddingBackend",
    "EmptyDocument",
    "HashedBagOfWordsEmbedder",
    "RemoteEmbedder",
    "RetrievalResult",
    "chunk_document",
    "hybrid_retrieve",
    "ingest",
    "lexical_search",
    "load_store",
    "save_store",
    "semantic_search",
    "tokenize",
]
