"""Storage measures for driven processes: AIS, input-corrected AIS, and
interaction information, in local (per time step) and average form.

Every measure of a dataset is evaluated against one shared distribution per
(series, k), so the identity

    local icAIS = local AIS + local interaction

holds exactly, not just in the limit.  Sources can be empirical count
tables (plug-in estimation) or exact joint distributions from the
Markov-chain oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .estimators import (
    Distribution,
    conditional_mutual_information,
    mutual_information,
    plugin_distribution,
)
from .symseq import EmbeddingConfig, JointCountTable, SymbolSeries, count_joint, decode_history

MEASURES = ("ais", "icais", "interaction")

_H_AXIS, _X_AXIS, _U_AXIS = 0, 1, 2


@dataclass(frozen=True)
class LocalProfile:
    """Per-time-step local measure values (bits), aligned to the series.

    ``values[i]`` belongs to the transition whose `next` symbol sits at
    series index ``start_index + i``.
    """

    measure: str
    k: int
    values: np.ndarray
    start_index: int

    def __post_init__(self):
        vals = np.ascontiguousarray(self.values, dtype=np.float64)
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return int(self.values.size)

    @property
    def mean(self) -> float:
        return float(self.values.mean())


@dataclass(frozen=True)
class MeasureResult:
    measure: str
    k: int
    average_bits: float
    n_transitions: int
    source: str  # "empirical" | "oracle"
    local: LocalProfile | None = None


def _as_distribution(source) -> tuple[Distribution, JointCountTable | None]:
    if isinstance(source, Distribution):
        return source, None
    if isinstance(source, JointCountTable):
        return plugin_distribution(source), source
    raise TypeError(f"expected JointCountTable or Distribution, got {type(source)!r}")


def _require_table(source) -> JointCountTable:
    if not isinstance(source, JointCountTable):
        raise TypeError("local profiles need an empirical count table with transitions")
    if source.transitions is None:
        raise ValueError("count table carries no per-transition record")
    return source


def _resolve_k(table: JointCountTable | None, k: int | None) -> int:
    if table is not None:
        return table.k
    if k is None:
        raise ValueError("k must be given when evaluating a bare distribution")
    return k


def _check_input_dim(d: Distribution, table: JointCountTable | None):
    if table is not None and table.alphabet_u is None:
        raise ValueError("measure requires an input dimension; counts have none")
    if d.n_axes != 3:
        raise ValueError("joint distribution must have (history, next, input) axes")


def _local_ais_cells(d: Distribution) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    p_hx = d.probs.sum(axis=_U_AXIS)
    p_h = p_hx.sum(axis=1)
    p_x = p_hx.sum(axis=0)
    return p_hx, p_h, p_x


def _safe_log2(p: np.ndarray, what: str, table: JointCountTable) -> np.ndarray:
    if np.any(p <= 0):
        i = int(np.argmax(p <= 0))
        h, x, _ = table.transitions[i]
        hist = decode_history(int(h), table.k, table.alphabet_x.size)
        raise ValueError(
            f"observed transition (history={hist}, next={int(x)}) has zero "
            f"probability under the supplied distribution ({what})"
        )
    return np.log2(p)


def local_ais(table: JointCountTable, dist: Distribution | None = None) -> LocalProfile:
    """Local active storage per transition:
    log2 p(h, x') - log2 p(h) - log2 p(x').

    ``dist`` defaults to the plug-in distribution of the same table;
    passing a separately estimated (or exact) distribution gives held-out
    local values.
    """
    table = _require_table(table)
    d = dist if dist is not None else plugin_distribution(table)
    p_hx, p_h, p_x = _local_ais_cells(d)
    h, x, _ = table.transitions.T
    vals = (
        _safe_log2(p_hx[h, x], "p(history, next)", table)
        - np.log2(p_h[h])
        - np.log2(p_x[x])
    )
    return LocalProfile("ais", table.k, vals, table.start_index)


def local_icais(table: JointCountTable, dist: Distribution | None = None) -> LocalProfile:
    """Local input-corrected storage per transition:
    log2 p(x' | h, u') - log2 p(x' | u')."""
    table = _require_table(table)
    d = dist if dist is not None else plugin_distribution(table)
    _check_input_dim(d, table)
    p = d.probs
    p_hu = p.sum(axis=_X_AXIS)
    p_xu = p.sum(axis=_H_AXIS)
    p_u = p_xu.sum(axis=0)
    h, x, u = table.transitions.T
    vals = (
        _safe_log2(p[h, x, u], "p(history, next, input)", table)
        + np.log2(p_u[u])
        - np.log2(p_hu[h, u])
        - np.log2(p_xu[x, u])
    )
    return LocalProfile("icais", table.k, vals, table.start_index)


def local_interaction(table: JointCountTable, dist: Distribution | None = None) -> LocalProfile:
    """Local interaction information: local icAIS minus local AIS on the
    shared distribution.  Negative values flag redundancy between history
    and input, positive values synergy."""
    table = _require_table(table)
    d = dist if dist is not None else plugin_distribution(table)
    a = local_ais(table, d)
    c = local_icais(table, d)
    return LocalProfile("interaction", table.k, c.values - a.values, table.start_index)


def ais(source, *, k: int | None = None, local: bool = False) -> MeasureResult:
    """Average active information storage I(history; next), in bits."""
    d, table = _as_distribution(source)
    avg = mutual_information(d, (_H_AXIS,), (_X_AXIS,))
    profile = local_ais(table, d) if local and table is not None else None
    return MeasureResult(
        measure="ais",
        k=_resolve_k(table, k),
        average_bits=avg,
        n_transitions=table.total if table is not None else 0,
        source="empirical" if table is not None else "oracle",
        local=profile,
    )


def icais(source, *, k: int | None = None, local: bool = False) -> MeasureResult:
    """Average input-corrected storage I(history; next | input), in bits."""
    d, table = _as_distribution(source)
    _check_input_dim(d, table)
    avg = conditional_mutual_information(d, (_H_AXIS,), (_X_AXIS,), (_U_AXIS,))
    profile = local_icais(table, d) if local and table is not None else None
    return MeasureResult(
        measure="icais",
        k=_resolve_k(table, k),
        average_bits=avg,
        n_transitions=table.total if table is not None else 0,
        source="empirical" if table is not None else "oracle",
        local=profile,
    )


def interaction(source, *, k: int | None = None, local: bool = False) -> MeasureResult:
    """Average interaction information: icAIS minus AIS, in bits."""
    d, table = _as_distribution(source)
    _check_input_dim(d, table)
    avg = conditional_mutual_information(
        d, (_H_AXIS,), (_X_AXIS,), (_U_AXIS,)
    ) - mutual_information(d, (_H_AXIS,), (_X_AXIS,))
    profile = local_interaction(table, d) if local and table is not None else None
    return MeasureResult(
        measure="interaction",
        k=_resolve_k(table, k),
        average_bits=avg,
        n_transitions=table.total if table is not None else 0,
        source="empirical" if table is not None else "oracle",
        local=profile,
    )


_MEASURE_FNS = {"ais": ais, "icais": icais, "interaction": interaction}
_LOCAL_FNS = {"ais": local_ais, "icais": local_icais, "interaction": local_interaction}


def compute(measure: str, source, *, k: int | None = None, local: bool = False) -> MeasureResult:
    """Dispatch by measure name ('ais' | 'icais' | 'interaction')."""
    try:
        fn = _MEASURE_FNS[measure]
    except KeyError:
        raise ValueError(f"unknown measure {measure!r}; expected one of {MEASURES}")
    return fn(source, k=k, local=local)


def local_profile(measure: str, table: JointCountTable, dist: Distribution | None = None) -> LocalProfile:
    try:
        fn = _LOCAL_FNS[measure]
    except KeyError:
        raise ValueError(f"unknown measure {measure!r}; expected one of {MEASURES}")
    return fn(table, dist)


def ensemble_average(profiles: Sequence[LocalProfile]) -> MeasureResult:
    """Average over a set of homogeneous processes and all time steps."""
    if not profiles:
        raise ValueError("need at least one profile")
    first = profiles[0]
    for p in profiles[1:]:
        if p.measure != first.measure:
            raise ValueError("profiles mix different measures")
        if p.k != first.k:
            raise ValueError("profiles mix different history lengths")
        if len(p) != len(first):
            raise ValueError("profiles have different lengths")
    stacked = np.stack([p.values for p in profiles])
    return MeasureResult(
        measure=first.measure,
        k=first.k,
        average_bits=float(stacked.mean()),
        n_transitions=int(stacked.size),
        source="empirical",
    )


def sweep_k(
    x: SymbolSeries,
    u: SymbolSeries | None,
    k_range: Iterable[int],
    measures: Iterable[str],
    *,
    input_lag: int = 0,
) -> list[MeasureResult]:
    """Evaluate measures for several history lengths on one series.

    All k share the alignment of the largest: the first max(k) samples are
    excluded from `next` positions for every k, so values are comparable.
    """
    ks = sorted(set(int(k) for k in k_range))
    if not ks:
        raise ValueError("empty k range")
    if ks[0] < 1:
        raise ValueError("history lengths must be >= 1")
    measures = list(measures)
    for m in measures:
        if m not in MEASURES:
            raise ValueError(f"unknown measure {m!r}; expected one of {MEASURES}")
    kmax = ks[-1]
    results = []
    for k in ks:
        off = kmax - k
        xs = SymbolSeries(x.alphabet, x.data[off:])
        us = SymbolSeries(u.alphabet, u.data[off:]) if u is not None else None
        table = count_joint(xs, us, EmbeddingConfig(k, input_lag))
        for m in measures:
            results.append(compute(m, table))
    return results
