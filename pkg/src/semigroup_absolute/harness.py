"""Verification of centrality on truncated path spaces, and walk simulation."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import sqrt

import numpy as np

from .latgeo import DistributionPoint
from .wordcalc import MAX_WIDTH, ResourceLimitError, RewriteSystem, normal_form

DEFAULT_DEPTH = 6


@dataclass(frozen=True)
class Witness:
    vertex: tuple[int, ...]
    level: int
    path_a: tuple[int, ...]
    path_b: tuple[int, ...]
    prob_a: Fraction
    prob_b: Fraction

    def describe(self, symbols=None) -> str:
        def word(p):
            return "".join(symbols[i] for i in p) if symbols else str(list(p))

        return (f"level {self.level}, vertex {list(self.vertex)}: "
                f"{word(self.path_a)} has {self.prob_a}, {word(self.path_b)} has {self.prob_b}")


@dataclass
class VerificationReport:
    depth: int
    passed: bool
    witnesses: list[Witness] = field(default_factory=list)
    arithmetic: str = "exact"

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"


def _require_exact(mu: DistributionPoint):
    if mu.mode != "exact":
        raise ValueError("centrality is checked in exact arithmetic only; pass rational weights")


def _step(v, g):
    return tuple(x + (i == g) for i, x in enumerate(v))


def verify_central(rs: RewriteSystem, mu: DistributionPoint, depth: int = DEFAULT_DEPTH,
                   max_width: int = MAX_WIDTH) -> VerificationReport:
    """Check that all paths of equal length into each vertex carry equal probability.

    Level by level: once every vertex of level ``n`` has a single path
    probability, the paths into level ``n + 1`` are exactly one edge longer,
    so comparing ``p(source) * mu(g)`` over incoming edges covers every word.
    Each vertex keeps its lexicographically least word for witnesses.
    """
    _require_exact(mu)
    n = rs.nvars
    zero = normal_form(rs, (0,) * n)
    # element -> (least word, word exponent vector, probability)
    level = {zero: ((), (0,) * n, Fraction(1))}
    for lev in range(1, depth + 1):
        incoming: dict = {}
        for src in sorted(level, key=lambda e: level[e][0]):
            word, vec, prob = level[src]
            for g in range(n):
                v2 = _step(vec, g)
                tgt = normal_form(rs, v2)
                incoming.setdefault(tgt, []).append((word + (g,), v2, prob * mu[g]))
        if len(incoming) > max_width:
            raise ResourceLimitError(f"level {lev} has {len(incoming)} vertices")
        witnesses = []
        nxt = {}
        for tgt, cands in incoming.items():
            cands.sort(key=lambda c: c[0])
            first = cands[0]
            nxt[tgt] = first
            other = next((c for c in cands if c[2] != first[2]), None)
            if other is not None:
                witnesses.append(Witness(tgt, lev, first[0], other[0], first[2], other[2]))
        if witnesses:
            witnesses.sort(key=lambda w: rs.order.key(w.vertex), reverse=True)
            return VerificationReport(depth, False, witnesses)
        level = nxt
    return VerificationReport(depth, True)


def _vertex_values(rs, mu, depth):
    """Per level, the cylinder probability of the least word into each vertex."""
    n = rs.nvars
    zero = normal_form(rs, (0,) * n)
    tables = [{zero: ((), (0,) * n, Fraction(1))}]
    for _ in range(depth):
        nxt = {}
        for src in sorted(tables[-1], key=lambda e: tables[-1][e][0]):
            word, vec, prob = tables[-1][src]
            for g in range(n):
                v2 = _step(vec, g)
                tgt = normal_form(rs, v2)
                cand = (word + (g,), v2, prob * mu[g])
                if tgt not in nxt or cand[0] < nxt[tgt][0]:
                    nxt[tgt] = cand
        tables.append(nxt)
    return [{k: v[2] for k, v in t.items()} for t in tables]


def verify_shift(rs: RewriteSystem, mu: DistributionPoint, prefix, depth: int) -> bool:
    """Conditioning on ``prefix`` and translating back reproduces the measure.

    The cylinder of a path is priced by its endpoint vertex, so the check is
    ``nu(prefix . w) / nu(prefix) == nu(w)`` for every vertex reached by a
    continuation ``w`` of length at most ``depth``.
    """
    _require_exact(mu)
    prefix = tuple(prefix)
    n = rs.nvars
    pvec = tuple(sum(1 for g in prefix if g == i) for i in range(n))
    if any(mu[g] == 0 for g in prefix):
        raise ValueError("prefix has probability zero")
    values = _vertex_values(rs, mu, len(prefix) + depth)
    p_prefix = values[len(prefix)][normal_form(rs, pvec)]
    for m in range(depth + 1):
        for elem, p in values[m].items():
            joined = normal_form(rs, tuple(a + b for a, b in zip(pvec, elem)))
            if values[len(prefix) + m][joined] != p_prefix * p:
                return False
    return True


@dataclass
class WalkSample:
    seed: int
    steps: tuple[int, ...]
    endpoint: tuple[int, ...]


@dataclass
class SimulationStats:
    trials: int
    steps: int
    freq: dict
    exact: dict
    max_sigma: float | None
    llr_trend: list[float] | None = None

    def to_dict(self, symbols=None) -> dict:
        def key(v):
            return ",".join(map(str, v))

        return {
            "trials": self.trials,
            "steps": self.steps,
            "freq": {key(k): v for k, v in self.freq.items()},
            "exact": {key(k): str(v) for k, v in self.exact.items()},
            "max_sigma": self.max_sigma,
            "llr_trend": self.llr_trend,
        }


def endpoint_distribution(rs: RewriteSystem, mu: DistributionPoint, steps: int) -> dict:
    """Exact law of the walk's position after ``steps`` steps."""
    n = rs.nvars
    dist = {normal_form(rs, (0,) * n): Fraction(1)}
    for _ in range(steps):
        nxt: dict = {}
        for v, p in dist.items():
            for g in range(n):
                if mu[g]:
                    w = normal_form(rs, _step(v, g))
                    nxt[w] = nxt.get(w, 0) + p * mu[g]
        dist = nxt
    return dist


def walk(rs: RewriteSystem, mu: DistributionPoint, steps: int, seed: int) -> WalkSample:
    rng = np.random.default_rng(seed)
    p = np.array([float(w) for w in mu.weights])
    seq = tuple(int(g) for g in rng.choice(len(p), size=steps, p=p / p.sum()))
    counts = tuple(seq.count(i) for i in range(rs.nvars))
    return WalkSample(seed, seq, normal_form(rs, counts))


def _llr_trend(choices, mu: DistributionPoint, alt: DistributionPoint) -> list[float]:
    """Mean cumulative log-likelihood ratio ``log(d mu / d alt)`` after each step.

    Linear growth is the finite-sample face of mutual singularity; nothing
    is asserted about it.
    """
    p = np.array([float(w) for w in mu.weights])
    q = np.array([float(w) for w in alt.weights])
    with np.errstate(divide="ignore"):
        step_llr = np.log(p) - np.log(q)
    per_step = step_llr[choices]
    return [float(x) for x in np.cumsum(per_step, axis=1).mean(axis=0)]


def simulate(rs: RewriteSystem, mu: DistributionPoint, steps: int, trials: int, seed: int,
             alt: DistributionPoint | None = None) -> SimulationStats:
    """Seeded i.i.d.-increment walks compared with the exact endpoint law.

    With ``alt`` the stats also carry the likelihood-ratio trend of the
    sampled paths against that second step distribution.
    """
    if alt is not None and len(alt) != rs.nvars:
        raise ValueError("alt has the wrong number of weights")
    if trials == 0:
        return SimulationStats(0, steps, {}, {}, None)
    rng = np.random.default_rng(seed)
    n = rs.nvars
    p = np.array([float(w) for w in mu.weights])
    choices = rng.choice(n, size=(trials, steps), p=p / p.sum())
    counts = np.zeros((trials, n), dtype=np.int64)
    for g in range(n):
        counts[:, g] = (choices == g).sum(axis=1)
    uniq, tally = np.unique(counts, axis=0, return_counts=True)
    freq: dict = {}
    for row, c in zip(uniq, tally):
        e = normal_form(rs, tuple(int(x) for x in row))
        freq[e] = freq.get(e, 0) + int(c)
    freq = {k: v / trials for k, v in sorted(freq.items())}

    exact: dict = {}
    max_sigma = None
    if mu.mode == "exact":
        exact = dict(sorted(endpoint_distribution(rs, mu, steps).items()))
        max_sigma = 0.0
        for e, pe in exact.items():
            pe = float(pe)
            if 0 < pe < 1:
                sd = sqrt(pe * (1 - pe) / trials)
                max_sigma = max(max_sigma, abs(freq.get(e, 0.0) - pe) / sd)
    trend = _llr_trend(choices, mu, alt) if alt is not None and steps else None
    return SimulationStats(trials, steps, freq, exact, max_sigma, trend)
