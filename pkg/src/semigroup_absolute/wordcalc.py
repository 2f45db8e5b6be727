"""Word problem, Cayley levels and central relation pairs.

Equality in a finitely presented commutative monoid is membership in a
binomial congruence on exponent vectors.  We decide it with a completed
rewrite system of pure-difference binomials ``x^lead -> x^trail``: critical
pairs of such rules are again pure differences, so no coefficients appear.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import NamedTuple

from .presentation import Presentation, RelationPair, Vector

log = logging.getLogger(__name__)

MAX_RULES = 10_000
MAX_STEPS = 1_000_000
MAX_WIDTH = 1_000_000


class ResourceLimitError(RuntimeError):
    pass


@dataclass(frozen=True)
class MonomialOrder:
    """Degree-compatible term order on exponent vectors.

    ``elimination`` compares the block ``[:block_split]`` first (degrevlex)
    and breaks ties on the remaining block (degrevlex), so any vector with a
    nonzero entry in the first block beats every vector supported on the
    second block.
    """

    kind: str = "degrevlex"
    block_split: int = 0

    def __post_init__(self):
        if self.kind not in ("degrevlex", "deglex", "elimination"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, v: Vector):
        if self.kind == "degrevlex":
            return _degrevlex(v)
        if self.kind == "deglex":
            return (sum(v), tuple(v))
        k = self.block_split
        return (_degrevlex(v[:k]), _degrevlex(v[k:]))

    def greater(self, u: Vector, v: Vector) -> bool:
        return self.key(u) > self.key(v)

    def orient(self, u: Vector, v: Vector) -> tuple[Vector, Vector]:
        return (u, v) if self.key(u) > self.key(v) else (v, u)


def _degrevlex(v):
    return (sum(v), tuple(-x for x in reversed(v)))


DEGREVLEX = MonomialOrder()
DEGLEX = MonomialOrder("deglex")


class BinomialRule(NamedTuple):
    lead: Vector
    trail: Vector


def _divides(a: Vector, b: Vector) -> bool:
    return all(x <= y for x, y in zip(a, b))


@dataclass
class RewriteSystem:
    rules: list[BinomialRule]
    order: MonomialOrder
    confluent: bool
    nvars: int
    symbols: tuple[str, ...] = ()
    steps: int = 0

    def normal_form(self, v: Vector) -> Vector:
        return normal_form(self, v)

    def __len__(self):
        return len(self.rules)


def _reduce(rules, v, budget=None):
    """Fully reduce ``v``; returns (normal form, steps used)."""
    v = list(v)
    steps = 0
    changed = True
    while changed:
        changed = False
        for lead, trail in rules:
            # apply the rule as many times as it divides
            k = None
            for x, l in zip(v, lead):
                if l:
                    q = x // l
                    if k is None or q < k:
                        k = q
                        if k == 0:
                            break
            if k:
                for i in range(len(v)):
                    v[i] += k * (trail[i] - lead[i])
                steps += 1
                changed = True
                if budget is not None and steps > budget:
                    raise ResourceLimitError("rewriting step limit exceeded")
    return tuple(v), steps


def normal_form(rs: RewriteSystem, v: Vector) -> Vector:
    """Canonical representative of ``v`` under a confluent system."""
    return _reduce(rs.rules, v)[0]


def complete_pairs(pairs, nvars: int, order: MonomialOrder = DEGREVLEX, *,
                   max_rules: int = MAX_RULES, max_steps: int = MAX_STEPS,
                   symbols=()) -> RewriteSystem:
    """Buchberger completion for pure-difference binomials.

    Critical pairs whose leads have disjoint support are skipped (they always
    reduce to zero).  On exhausting a resource cap the partial system is
    returned with ``confluent=False``.
    """
    rules: list[BinomialRule] = []
    queue: list = []
    steps = 0
    counter = 0

    def add(u, v):
        nonlocal steps, counter
        u, su = _reduce(rules, u, max_steps - steps)
        steps += su
        v, sv = _reduce(rules, v, max_steps - steps)
        steps += sv
        if u == v:
            return
        lead, trail = order.orient(u, v)
        new = BinomialRule(lead, trail)
        for old in rules:
            if any(a and b for a, b in zip(old.lead, lead)):
                lcm = tuple(max(a, b) for a, b in zip(old.lead, lead))
                counter += 1
                heapq.heappush(queue, (order.key(lcm), counter, old, new, lcm))
        rules.append(new)
        if len(rules) > max_rules:
            raise ResourceLimitError("rule limit exceeded")

    confluent = True
    try:
        for u, v in pairs:
            add(tuple(u), tuple(v))
        while queue:
            _, _, r1, r2, lcm = heapq.heappop(queue)
            s1 = tuple(m - a + b for m, a, b in zip(lcm, r1.lead, r1.trail))
            s2 = tuple(m - a + b for m, a, b in zip(lcm, r2.lead, r2.trail))
            add(s1, s2)
    except ResourceLimitError as exc:
        log.warning("completion stopped early: %s", exc)
        confluent = False

    if confluent:
        rules = _interreduce(rules, order)
    return RewriteSystem(rules, order, confluent, nvars, tuple(symbols), steps)


def _interreduce(rules, order):
    rules = sorted(rules, key=lambda r: order.key(r.lead))
    kept: list[BinomialRule] = []
    for r in rules:
        if not any(_divides(k.lead, r.lead) for k in kept):
            kept.append(r)
    out = []
    for i, r in enumerate(kept):
        others = kept[:i] + kept[i + 1:]
        out.append(BinomialRule(r.lead, _reduce(others, r.trail)[0]))
    return out


def complete(p: Presentation, order: MonomialOrder = DEGREVLEX, **limits) -> RewriteSystem:
    """Confluent rewrite system deciding equality in the monoid presented by ``p``."""
    pairs = [(r.lhs, r.rhs) for r in p.relations]
    return complete_pairs(pairs, p.size, order, symbols=p.symbols, **limits)


def presentation_of(rs: RewriteSystem) -> Presentation:
    """A presentation whose relations are the rules of ``rs``."""
    from .presentation import GeneratorSet

    symbols = rs.symbols or tuple(f"s{i}" for i in range(rs.nvars))
    rels = tuple(RelationPair(r.lead, r.trail) for r in rs.rules)
    return Presentation(GeneratorSet(tuple(symbols)), rels)


def _units(n):
    return [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


@dataclass
class CayleyLevels:
    """The dynamic graph truncated at ``depth``.

    ``levels[n]`` lists the normal forms reachable by words of length ``n``
    (largest first in the monomial order); ``edges[n]`` lists
    ``(source, generator, target)`` index triples from level ``n`` to ``n+1``.
    """

    depth: int
    levels: list[list[Vector]]
    edges: list[list[tuple[int, int, int]]]

    def sizes(self):
        return [len(l) for l in self.levels]

    def index(self, level: int, element: Vector) -> int:
        return self.levels[level].index(element)


def cayley_levels(rs: RewriteSystem, depth: int, max_width: int = MAX_WIDTH) -> CayleyLevels:
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    units = _units(rs.nvars)
    zero = normal_form(rs, (0,) * rs.nvars)
    levels = [[zero]]
    edges = []
    for _ in range(depth):
        prev = levels[-1]
        targets = {}
        raw = []
        for i, v in enumerate(prev):
            for g, e in enumerate(units):
                w = normal_form(rs, _add(v, e))
                targets.setdefault(w, None)
                raw.append((i, g, w))
        if len(targets) > max_width:
            raise ResourceLimitError(f"level width {len(targets)} exceeds {max_width}")
        nxt = sorted(targets, key=rs.order.key, reverse=True)
        pos = {w: j for j, w in enumerate(nxt)}
        edges.append([(i, g, pos[w]) for i, g, w in raw])
        levels.append(nxt)
    return CayleyLevels(depth, levels, edges)


@dataclass
class CentralPairSet:
    pairs: list[RelationPair]
    exact: bool
    depth_bound: int | None = None

    def differences(self):
        return [r.difference for r in self.pairs]

    def __len__(self):
        return len(self.pairs)


def _canonical_pairs(pairs):
    """Orient each pair with the deglex-larger side first and sort."""
    out = set()
    for u, v in pairs:
        u, v = DEGLEX.orient(tuple(u), tuple(v))
        out.add((u, v))
    return sorted(out, key=lambda p: (sum(p[0]), DEGLEX.key(p[0]), DEGLEX.key(p[1])))


def minimalize(pairs, nvars: int):
    """Drop pairs lying in the congruence generated by the remaining ones."""
    pairs = _canonical_pairs(pairs)
    kept = []
    for u, v in pairs:
        if kept:
            rs = complete_pairs(kept, nvars)
            if rs.confluent and normal_form(rs, u) == normal_form(rs, v):
                continue
        kept.append((u, v))
    i = len(kept) - 1
    while i >= 0 and len(kept) > 1:
        others = kept[:i] + kept[i + 1:]
        rs = complete_pairs(others, nvars)
        u, v = kept[i]
        if rs.confluent and normal_form(rs, u) == normal_form(rs, v):
            kept = others
        i -= 1
    return kept


def central_pairs_exact(p: Presentation, *, fallback_depth: int = 6,
                        max_rules: int = MAX_RULES, max_steps: int = MAX_STEPS) -> CentralPairSet:
    """Generators of the congruence of equal-length pairs with equal value.

    The pairs form the kernel of ``N^S -> G x N``, ``s -> (s, 1)``.  The
    target is presented with one auxiliary symbol per generator and a degree
    symbol ``t``; adding the rules ``x_s = y_s t`` and completing under an
    elimination order with the auxiliaries in the high block leaves the
    kernel generators as the rules supported on the ``x`` block.
    """
    n = p.size
    width = 2 * n + 1  # layout: y_0..y_{n-1}, t, x_0..x_{n-1}
    pairs = []
    for r in p.relations:
        pairs.append((r.lhs + (0,) + (0,) * n, r.rhs + (0,) + (0,) * n))
    for s in range(n):
        x = [0] * width
        x[n + 1 + s] = 1
        yt = [0] * width
        yt[s] = 1
        yt[n] = 1
        pairs.append((tuple(x), tuple(yt)))
    order = MonomialOrder("elimination", n + 1)
    rs = complete_pairs(pairs, width, order, max_rules=max_rules, max_steps=max_steps)
    if not rs.confluent:
        log.warning("elimination did not finish; enumerating up to depth %d", fallback_depth)
        base = complete(p, max_rules=max_rules, max_steps=max_steps)
        return central_pairs_enumerated(base, fallback_depth)
    found = []
    for lead, trail in rs.rules:
        if any(lead[: n + 1]) or any(trail[: n + 1]):
            continue
        found.append((lead[n + 1:], trail[n + 1:]))
    kept = minimalize(found, n)
    return CentralPairSet([RelationPair(u, v) for u, v in kept], True, None)


def central_pairs_enumerated(rs: RewriteSystem, depth: int, max_width: int = MAX_WIDTH) -> CentralPairSet:
    """All equal-length pairs up to ``depth`` with equal normal form, minimalized.

    Serves as the brute-force counterpart of :func:`central_pairs_exact`.
    """
    n = rs.nvars
    found = []
    for length in range(1, depth + 1):
        groups: dict[Vector, list[Vector]] = {}
        count = 0
        for combo in combinations_with_replacement(range(n), length):
            v = [0] * n
            for g in combo:
                v[g] += 1
            v = tuple(v)
            groups.setdefault(normal_form(rs, v), []).append(v)
            count += 1
            if count > max_width:
                raise ResourceLimitError("too many words to enumerate")
        for members in groups.values():
            first = members[0]
            found.extend((first, other) for other in members[1:])
    kept = minimalize(found, n) if found else []
    return CentralPairSet([RelationPair(u, v) for u, v in kept], False, depth)


def is_branching(p: Presentation, rs: RewriteSystem | None = None) -> bool:
    """True when every rule of the completed system joins words of equal length."""
    rs = rs or complete(p)
    return all(sum(r.lead) == sum(r.trail) for r in rs.rules)


class CancellativityWitness(NamedTuple):
    a: Vector
    b: Vector
    c: Vector


def cancellativity_witness(rs: RewriteSystem, depth: int) -> CancellativityWitness | None:
    """Search elements up to ``depth`` for ``a != b`` with ``a + c = b + c``.

    ``c`` can be taken to be a generator: a collision ``a + c = b + c`` for a
    longer ``c`` yields one for some generator along any word for ``c``.
    Returns ``None`` when nothing is found, which proves nothing.
    """
    levels = cayley_levels(rs, depth)
    elements = []
    seen = set()
    for level in levels.levels:
        for v in level:
            if v not in seen:
                seen.add(v)
                elements.append(v)
    for g, e in enumerate(_units(rs.nvars)):
        buckets: dict[Vector, Vector] = {}
        for v in elements:
            w = normal_form(rs, _add(v, e))
            if w in buckets:
                return CancellativityWitness(buckets[w], v, e)
            buckets[w] = v
    return None
