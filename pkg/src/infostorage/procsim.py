"""Input-process generators, computational units, and the exact oracle.

The oracle builds the Markov chain over composite (input symbol, last k
unit outputs) states, finds its stationary distribution, and derives the
exact joint p(history, next output, next input) that the storage measures
consume.  Feeding that joint to the measures yields analytic values with
no sampling at all.

Pseudorandom generation uses numpy's Philox counter-based generator,
seeded directly with the integer seed, so identical seeds give identical
series across runs and platforms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .estimators import Distribution
from .symseq import BINARY, Alphabet, SymbolSeries

STATE_SPACE_LIMIT = 2**16


class ConvergenceError(RuntimeError):
    """Stationary-distribution iteration failed to reach tolerance."""

    def __init__(self, residual: float, iterations: int):
        super().__init__(
            f"power iteration did not converge: residual {residual:.3e} "
            f"after {iterations} iterations"
        )
        self.residual = residual
        self.iterations = iterations


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


@dataclass(frozen=True)
class ProcessSpec:
    """An input process: i.i.d. Bernoulli draws, or a binary Markov chain
    that repeats its last value with probability p_stay."""

    kind: str  # "bernoulli" | "markov_binary"
    p: float | None = None
    p_stay: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.kind == "bernoulli":
            if self.p is None or not (0.0 <= self.p <= 1.0):
                raise ValueError("bernoulli requires 0 <= p <= 1")
        elif self.kind == "markov_binary":
            if self.p_stay is None or not (0.0 < self.p_stay < 1.0):
                raise ValueError("markov_binary requires 0 < p_stay < 1")
        else:
            raise ValueError(f"unknown process kind {self.kind!r}")

    def transition_matrix(self) -> np.ndarray:
        """Row-stochastic P(u' | u) over the binary input alphabet."""
        if self.kind == "bernoulli":
            row = np.array([1.0 - self.p, self.p])
            return np.vstack([row, row])
        s = self.p_stay
        return np.array([[s, 1.0 - s], [1.0 - s, s]])


def generate_input(spec: ProcessSpec, n: int) -> SymbolSeries:
    """Draw a length-n realization of the input process, reproducibly."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = _rng(spec.seed)
    if spec.kind == "bernoulli":
        data = (rng.random(n) < spec.p).astype(np.int64)
    else:
        first = int(rng.integers(0, 2))
        flips = (rng.random(n - 1) < (1.0 - spec.p_stay)).astype(np.int64)
        data = np.empty(n, dtype=np.int64)
        data[0] = first
        if n > 1:
            data[1:] = (first + np.cumsum(flips)) % 2
    return SymbolSeries(BINARY, data)


@dataclass(frozen=True)
class UnitSpec:
    kind: str  # "forwarding" | "xor_memory"
    initial_state: int = 0

    def __post_init__(self):
        if self.kind not in ("forwarding", "xor_memory"):
            raise ValueError(f"unknown unit kind {self.kind!r}")
        if self.kind == "xor_memory" and self.initial_state not in (0, 1):
            raise ValueError("xor_memory initial state must be 0 or 1")


class Unit:
    """A finite-state transducer driven one input symbol at a time.

    Subclasses define the per-step update (state, input) -> (state, output).
    Units whose internal state is recoverable from recent outputs also
    implement state_from_history, which the oracle needs.
    """

    n_states: int
    input_alphabet: Alphabet
    output_alphabet: Alphabet
    initial_state: int

    def step(self, state: int, u: int) -> tuple[int, int]:
        raise NotImplementedError

    def state_from_history(self, history: tuple[int, ...]) -> int:
        raise NotImplementedError(
            f"{type(self).__name__} cannot recover its state from outputs; "
            "exact oracle unavailable"
        )


class ForwardingUnit(Unit):
    """Stateless unit: the output equals the current input."""

    n_states = 1
    input_alphabet = BINARY
    output_alphabet = BINARY
    initial_state = 0

    def step(self, state: int, u: int) -> tuple[int, int]:
        return 0, u

    def state_from_history(self, history: tuple[int, ...]) -> int:
        return 0


class XorMemoryUnit(Unit):
    """Unit that keeps its last output and emits input XOR that state."""

    n_states = 2
    input_alphabet = BINARY
    output_alphabet = BINARY

    def __init__(self, initial_state: int = 0):
        if initial_state not in (0, 1):
            raise ValueError("initial state must be 0 or 1")
        self.initial_state = initial_state

    def step(self, state: int, u: int) -> tuple[int, int]:
        out = state ^ u
        return out, out

    def state_from_history(self, history: tuple[int, ...]) -> int:
        return history[-1]


class TableUnit(Unit):
    """Arbitrary finite-state transducer given by explicit tables.

    ``next_state`` and ``output`` are (n_states, n_inputs) integer arrays.
    """

    def __init__(self, next_state, output, n_outputs: int, initial_state: int = 0):
        self.next_state = np.asarray(next_state, dtype=np.int64)
        self.output = np.asarray(output, dtype=np.int64)
        if self.next_state.shape != self.output.shape:
            raise ValueError("next_state and output tables must share a shape")
        self.n_states = self.next_state.shape[0]
        self.input_alphabet = Alphabet(self.next_state.shape[1])
        self.output_alphabet = Alphabet(n_outputs)
        if not (0 <= initial_state < self.n_states):
            raise ValueError("initial state out of range")
        self.initial_state = initial_state

    def step(self, state: int, u: int) -> tuple[int, int]:
        return int(self.next_state[state, u]), int(self.output[state, u])


def make_unit(spec: UnitSpec) -> Unit:
    if spec.kind == "forwarding":
        return ForwardingUnit()
    return XorMemoryUnit(spec.initial_state)


def simulate_unit(unit: Unit | UnitSpec, input_series: SymbolSeries) -> SymbolSeries:
    """Run the unit over the whole input series; output has equal length."""
    if isinstance(unit, UnitSpec):
        unit = make_unit(unit)
    if input_series.alphabet.size != unit.input_alphabet.size:
        raise ValueError(
            f"unit expects inputs over {unit.input_alphabet.size} symbols, "
            f"series uses {input_series.alphabet.size}"
        )
    u = input_series.data
    if isinstance(unit, ForwardingUnit):
        return SymbolSeries(unit.output_alphabet, u.copy())
    if isinstance(unit, XorMemoryUnit):
        out = np.bitwise_xor.accumulate(u) ^ unit.initial_state
        return SymbolSeries(unit.output_alphabet, out)
    state = unit.initial_state
    out = np.empty(u.size, dtype=np.int64)
    for i, ui in enumerate(u):
        state, out[i] = unit.step(state, int(ui))
    return SymbolSeries(unit.output_alphabet, out)


@dataclass(frozen=True)
class MarkovChainModel:
    """Markov chain over composite (input symbol, last k outputs) states.

    ``emit[s, u']`` is the unit output produced when input u' arrives in
    state s; ``transition`` is the row-stochastic one-step matrix.
    """

    k: int
    input_alphabet: Alphabet
    output_alphabet: Alphabet
    states: tuple[tuple[int, tuple[int, ...]], ...]
    transition: np.ndarray
    emit: np.ndarray
    input_transition: np.ndarray

    @property
    def n_states(self) -> int:
        return len(self.states)


def build_joint_chain(proc: ProcessSpec, unit: Unit | UnitSpec, k: int) -> MarkovChainModel:
    """Compose the input process law with the unit's deterministic update."""
    if isinstance(unit, UnitSpec):
        unit = make_unit(unit)
    if k < 1:
        raise ValueError("history length k must be >= 1")
    nu = unit.input_alphabet.size
    nx = unit.output_alphabet.size
    nh = nx**k
    n_states = nu * nh
    if n_states > STATE_SPACE_LIMIT:
        raise ValueError(
            f"composite state space of {n_states} states exceeds the "
            f"limit {STATE_SPACE_LIMIT}; reduce k"
        )
    pu = proc.transition_matrix()
    if pu.shape != (nu, nu):
        raise ValueError("input process alphabet does not match the unit")

    histories = list(itertools.product(range(nx), repeat=k))
    hcode = {h: i for i, h in enumerate(histories)}
    states = tuple(
        (u, h) for u in range(nu) for h in histories
    )
    T = np.zeros((n_states, n_states))
    emit = np.zeros((n_states, nu), dtype=np.int64)
    for si, (u, h) in enumerate(states):
        s_unit = unit.state_from_history(h)
        for u2 in range(nu):
            _, x2 = unit.step(s_unit, u2)
            emit[si, u2] = x2
            h2 = h[1:] + (x2,)
            sj = u2 * nh + hcode[h2]
            T[si, sj] += pu[u, u2]
    return MarkovChainModel(
        k=k,
        input_alphabet=unit.input_alphabet,
        output_alphabet=unit.output_alphabet,
        states=states,
        transition=T,
        emit=emit,
        input_transition=pu,
    )


def stationary_from_matrix(
    T: np.ndarray, tol: float = 1e-12, max_iter: int = 10**6
) -> np.ndarray:
    """Stationary row vector of a row-stochastic matrix by power iteration.

    Iterates the lazy chain (I + T)/2 from the uniform start, which shares
    T's stationary distributions and converges even for periodic chains
    (equivalent to averaging successive iterates).
    """
    if tol <= 0:
        raise ValueError("tol must be > 0")
    n = T.shape[0]
    v = np.full(n, 1.0 / n)
    residual = np.inf
    for it in range(1, max_iter + 1):
        vt = v @ T
        residual = float(np.abs(vt - v).sum())
        if residual < tol:
            return v
        v = 0.5 * (v + vt)
    raise ConvergenceError(residual, max_iter)


def stationary_distribution(model: MarkovChainModel, tol: float = 1e-12) -> Distribution:
    """Stationary distribution over the model's composite states."""
    pi = stationary_from_matrix(model.transition, tol)
    pi = np.clip(pi, 0.0, None)
    pi = pi / pi.sum()
    return Distribution((Alphabet(model.n_states),), pi)


def exact_joint(model: MarkovChainModel, tol: float = 1e-12) -> Distribution:
    """Exact stationary joint p(history, next output, next input)."""
    pi = stationary_distribution(model, tol).probs
    nu = model.input_alphabet.size
    nx = model.output_alphabet.size
    nh = nx**model.k
    p = np.zeros((nh, nx, nu))
    for si, (u, _h) in enumerate(model.states):
        hc = si % nh
        for u2 in range(nu):
            p[hc, model.emit[si, u2], u2] += pi[si] * model.input_transition[u, u2]
    p /= p.sum()
    return Distribution(
        (Alphabet(nh), model.output_alphabet, model.input_alphabet), p
    )


def oracle_joint(proc: ProcessSpec, unit: Unit | UnitSpec, k: int, tol: float = 1e-12) -> Distribution:
    """Convenience: build the chain and return its exact joint."""
    return exact_joint(build_joint_chain(proc, unit, k), tol)


def parse_process_spec(text: str, seed: int = 0) -> ProcessSpec:
    """Parse 'bernoulli:p=0.5' or 'markov:p_stay=0.7'."""
    kind, _, rest = text.partition(":")
    params = _parse_params(rest, text)
    if kind == "bernoulli":
        if set(params) != {"p"}:
            raise ValueError(f"bernoulli spec needs exactly p=<float>: {text!r}")
        return ProcessSpec("bernoulli", p=float(params["p"]), seed=seed)
    if kind == "markov":
        if set(params) != {"p_stay"}:
            raise ValueError(f"markov spec needs exactly p_stay=<float>: {text!r}")
        return ProcessSpec("markov_binary", p_stay=float(params["p_stay"]), seed=seed)
    raise ValueError(f"unknown process spec {text!r}")


def parse_unit_spec(text: str) -> UnitSpec:
    """Parse 'forwarding' or 'xor[:init=<0|1>]'."""
    kind, _, rest = text.partition(":")
    params = _parse_params(rest, text)
    if kind == "forwarding":
        if params:
            raise ValueError(f"forwarding takes no parameters: {text!r}")
        return UnitSpec("forwarding")
    if kind == "xor":
        extra = set(params) - {"init"}
        if extra:
            raise ValueError(f"unknown xor parameters {sorted(extra)}: {text!r}")
        return UnitSpec("xor_memory", initial_state=int(params.get("init", 0)))
    raise ValueError(f"unknown unit spec {text!r}")


def _parse_params(rest: str, original: str) -> dict[str, str]:
    if not rest:
        return {}
    params = {}
    for item in rest.split(","):
        key, sep, value = item.partition("=")
        if not sep or not key or not value:
            raise ValueError(f"malformed spec parameter {item!r} in {original!r}")
        params[key] = value
    return params
