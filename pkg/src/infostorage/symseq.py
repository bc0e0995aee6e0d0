"""Symbol sequences, history embedding, and joint transition counting.

Everything downstream (plug-in estimation, storage measures) consumes the
JointCountTable produced here: occurrence counts over
(history-of-k, next-symbol, input-symbol) triples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

# Dense tables are capped at this many history cells (|X|**k); larger
# embeddings must shrink k or the alphabet.
DENSE_HISTORY_CELL_LIMIT = 2**20

DIMS = ("history", "next", "input")


@dataclass(frozen=True)
class Alphabet:
    """A finite symbol domain {0, ..., size-1} with optional display labels."""

    size: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("alphabet size must be >= 1")
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != self.size:
                raise ValueError(
                    f"got {len(labels)} labels for alphabet of size {self.size}"
                )
            if len(set(labels)) != len(labels):
                raise ValueError("alphabet labels must be distinct")
            object.__setattr__(self, "labels", labels)


BINARY = Alphabet(2)


@dataclass(frozen=True)
class SymbolSeries:
    """A finite sequence of small-integer symbols over a declared alphabet."""

    alphabet: Alphabet
    data: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(self.data, dtype=np.int64)
        if arr.ndim != 1:
            raise ValueError("series data must be one-dimensional")
        if arr.size < 1:
            raise ValueError("series must contain at least one symbol")
        lo, hi = int(arr.min()), int(arr.max())
        if lo < 0 or hi >= self.alphabet.size:
            raise ValueError(
                f"symbol out of range: saw values in [{lo}, {hi}] for "
                f"alphabet of size {self.alphabet.size}"
            )
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    def __len__(self) -> int:
        return int(self.data.size)

    @property
    def length(self) -> int:
        return len(self)

    @classmethod
    def from_values(cls, values: Sequence, alphabet: Alphabet | None = None):
        """Ingest arbitrary hashable labels, mapping them to dense codes.

        Labels are assigned codes in sorted order and recorded on the
        alphabet, so output can be mapped back.  If ``alphabet`` is given,
        the values must already be in-range integer codes.
        """
        if alphabet is not None:
            return cls(alphabet, np.asarray(values, dtype=np.int64))
        distinct = sorted(set(values), key=str)
        code = {label: i for i, label in enumerate(distinct)}
        data = np.fromiter((code[v] for v in values), dtype=np.int64, count=len(values))
        return cls(Alphabet(len(distinct), tuple(str(v) for v in distinct)), data)


@dataclass(frozen=True)
class EmbeddingConfig:
    """History length k and input lag L.

    The input symbol paired with the transition x_n -> x_{n+1} is
    u_{n+1-L}.  Lag 0 (the default) pairs u_{n+1} with x_{n+1}.
    """

    k: int
    input_lag: int = 0

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("history length k must be >= 1")
        if self.input_lag < 0:
            raise ValueError("input_lag must be >= 0")


def _check_length(n: int, cfg: EmbeddingConfig) -> int:
    """Return the index of the first analyzed `next` position, or raise."""
    start = cfg.k + max(0, cfg.input_lag - 1)
    if n < start + 1:
        raise ValueError(
            f"series of length {n} too short for k={cfg.k}"
            + (f", input_lag={cfg.input_lag}" if cfg.input_lag > 1 else "")
            + f"; need length >= {start + 1}"
        )
    return start


def history_codes(x: np.ndarray, k: int, base: int) -> np.ndarray:
    """Radix-encode every length-k window of x; codes[i] encodes x[i:i+k].

    The oldest symbol is the most significant digit.
    """
    n = x.size
    codes = np.zeros(n - k + 1, dtype=np.int64)
    for j in range(k):
        codes = codes * base + x[j : j + n - k + 1]
    return codes


def decode_history(code: int, k: int, base: int) -> tuple[int, ...]:
    """Inverse of history_codes for a single code."""
    out = []
    for _ in range(k):
        out.append(code % base)
        code //= base
    return tuple(reversed(out))


def embed(series: SymbolSeries, cfg: EmbeddingConfig) -> list[tuple[tuple[int, ...], int]]:
    """Unroll a series into (length-k history, next symbol) pairs.

    Pair t has history (x_t, ..., x_{t+k-1}) and next x_{t+k}; the first k
    samples seed the first history and are never a `next`.
    """
    k = cfg.k
    n = len(series)
    if n < k + 1:
        raise ValueError(
            f"series of length {n} too short for k={k}; need length >= {k + 1}"
        )
    x = series.data
    return [(tuple(int(v) for v in x[m - k : m]), int(x[m])) for m in range(k, n)]


@dataclass(frozen=True)
class JointCountTable:
    """Counts over (history, next, input) triples; the sufficient statistic.

    ``counts`` has shape (|X|**k, |X|, |U|); the input axis has size 1 when
    counting without an input.  ``transitions`` keeps the per-time-step
    (history code, next, input) triples so local measures stay aligned to
    the analyzed series; ``start_index`` is the position of the first
    analyzed `next` symbol.
    """

    k: int
    alphabet_x: Alphabet
    alphabet_u: Alphabet | None
    counts: np.ndarray
    transitions: np.ndarray | None = None
    start_index: int = 0
    dims: tuple[str, ...] = DIMS

    def __post_init__(self):
        counts = np.ascontiguousarray(self.counts, dtype=np.int64)
        if counts.ndim != 3:
            raise ValueError("counts must be a 3-d array (history, next, input)")
        if counts.min() < 0:
            raise ValueError("counts must be non-negative")
        counts = counts.copy()
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def n_history_cells(self) -> int:
        return self.counts.shape[0]

    def as_dict(self) -> dict:
        """Counts keyed by the live dimensions; histories decoded to tuples."""
        out = {}
        nz = np.argwhere(self.counts)
        for h, x, u in nz:
            key = []
            if "history" in self.dims:
                key.append(decode_history(int(h), self.k, self.alphabet_x.size))
            if "next" in self.dims:
                key.append(int(x))
            if "input" in self.dims:
                key.append(int(u))
            out[key[0] if len(key) == 1 else tuple(key)] = int(
                self.counts[h, x, u]
            )
        return out


def count_joint(
    x: SymbolSeries,
    u: SymbolSeries | None = None,
    cfg: EmbeddingConfig = EmbeddingConfig(1),
) -> JointCountTable:
    """Count (history, next, input) triples over all embedded transitions.

    When a lag L > 1 would reach before the start of the input series, the
    first L-1 transitions are dropped, so the total is always
    N - k - max(0, L-1).
    """
    n = len(x)
    if u is not None and len(u) != n:
        raise ValueError(
            f"input length {len(u)} does not match series length {n}"
        )
    # Lag only matters when inputs are present.
    start = _check_length(n, cfg if u is not None else EmbeddingConfig(cfg.k))
    k = cfg.k
    nx = x.alphabet.size
    nh = nx**k
    if nh > DENSE_HISTORY_CELL_LIMIT:
        raise ValueError(
            f"history space |X|^k = {nh} exceeds the dense table limit "
            f"{DENSE_HISTORY_CELL_LIMIT}; reduce k"
        )
    nu = u.alphabet.size if u is not None else 1

    m = np.arange(start, n)
    codes = history_codes(x.data, k, nx)
    h = codes[m - k]
    xn = x.data[m]
    un = u.data[m - cfg.input_lag] if u is not None else np.zeros(m.size, dtype=np.int64)

    flat = (h * nx + xn) * nu + un
    counts = np.bincount(flat, minlength=nh * nx * nu).reshape(nh, nx, nu)
    transitions = np.stack([h, xn, un], axis=1)
    return JointCountTable(
        k=k,
        alphabet_x=x.alphabet,
        alphabet_u=u.alphabet if u is not None else None,
        counts=counts,
        transitions=transitions,
        start_index=start,
    )


def marginalize(table: JointCountTable, dims: Iterable[str]) -> JointCountTable:
    """Sum out all dimensions not in ``dims`` (the set to keep)."""
    keep = tuple(d for d in DIMS if d in set(dims))
    unknown = set(dims) - set(DIMS)
    if unknown:
        raise ValueError(f"unknown dimensions: {sorted(unknown)}")
    if not keep:
        raise ValueError("dims must be a nonempty subset of (history, next, input)")
    if set(keep) >= set(table.dims):
        raise ValueError("dims must be a proper subset; nothing to marginalize")
    drop_axes = tuple(i for i, d in enumerate(DIMS) if d not in keep)
    counts = table.counts.sum(axis=drop_axes, keepdims=True)
    return JointCountTable(
        k=table.k,
        alphabet_x=table.alphabet_x,
        alphabet_u=table.alphabet_u,
        counts=counts,
        transitions=None,
        start_index=table.start_index,
        dims=keep,
    )
