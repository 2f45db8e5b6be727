"""The absolute of a presented commutative semigroup.

The ergodic central measures are the i.i.d.-increment measures whose step
distribution ``mu`` satisfies ``prod mu^m = prod mu^n`` for every pair of
equal-length words ``m``, ``n`` with the same value.  A generating family of
such pairs cuts out the same subset of the simplex, so everything here works
from the finite family produced by :mod:`wordcalc`.
"""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from . import latgeo
from .latgeo import (
    ChartBasis,
    DistributionPoint,
    IntegerLattice,
    ProjectedPolytope,
)
from .presentation import Presentation, RelationPair, Vector, serialize
from .wordcalc import (
    MAX_RULES,
    MAX_STEPS,
    CentralPairSet,
    RewriteSystem,
    ResourceLimitError,
    central_pairs_exact,
    complete,
    is_branching,
    normal_form,
    presentation_of,
)

log = logging.getLogger(__name__)

MAX_SUPPORT_SIZE = 20


@dataclass(frozen=True)
class CentralityEquation:
    pair: RelationPair
    reduced_pair: RelationPair

    @property
    def lhs(self) -> Vector:
        return self.pair.lhs

    @property
    def rhs(self) -> Vector:
        return self.pair.rhs

    def holds(self, mu, tol: float = 1e-12) -> bool:
        left = _monomial(self.lhs, mu.weights)
        right = _monomial(self.rhs, mu.weights)
        if mu.mode == "exact":
            return left == right
        return abs(left - right) <= tol

    def format(self, symbols, var: str = "mu") -> str:
        def side(v):
            parts = []
            for k, s in zip(v, symbols):
                if k == 1:
                    parts.append(f"{var}({s})")
                elif k:
                    parts.append(f"{var}({s})^{k}")
            return "*".join(parts) or "1"

        return f"{side(self.lhs)} = {side(self.rhs)}"


def _monomial(exponents, weights):
    out = 1
    for k, w in zip(exponents, weights):
        if k:
            out *= w ** k
    return out


def centrality_equations(cp: CentralPairSet) -> list[CentralityEquation]:
    eqs = []
    for r in cp.pairs:
        common = [min(a, b) for a, b in zip(r.lhs, r.rhs)]
        reduced = RelationPair(
            tuple(a - c for a, c in zip(r.lhs, common)),
            tuple(b - c for b, c in zip(r.rhs, common)),
        )
        eqs.append(CentralityEquation(r, reduced))
    return eqs


def is_precentral(eqs, mu: DistributionPoint) -> bool:
    """Exact check of every centrality equation; ``0 = 0`` counts as satisfied."""
    return all(e.holds(mu) for e in eqs)


def violated_equations(eqs, mu: DistributionPoint) -> list[CentralityEquation]:
    return [e for e in eqs if not e.holds(mu)]


@dataclass(frozen=True)
class Stratum:
    support: frozenset[int]
    lattice: IntegerLattice
    dimension: int
    sample: DistributionPoint
    is_main: bool
    exact: bool = True

    @property
    def mask(self) -> int:
        return sum(1 << i for i in self.support)


def strata(eqs, size: int, exact: bool = True, max_size: int = MAX_SUPPORT_SIZE) -> list[Stratum]:
    """Decompose the solution set by the support of ``mu``.

    On the face with support ``T``, an equation with exactly one side
    supported in ``T`` has no solution (a positive monomial against zero),
    one with neither side in ``T`` reads ``0 = 0``, and the rest become
    linear in ``log mu`` with differences spanning a lattice on ``T``.
    """
    if size > max_size:
        raise ResourceLimitError(f"{size} generators exceed the support-enumeration cap {max_size}")
    supports = [[i for i, k in enumerate(e.lhs) if k] for e in eqs]
    supports_r = [[i for i, k in enumerate(e.rhs) if k] for e in eqs]
    out = []
    for mask in range((1 << size) - 1, 0, -1):
        T = frozenset(i for i in range(size) if mask >> i & 1)
        diffs = []
        ok = True
        for e, ls, rs in zip(eqs, supports, supports_r):
            lin = all(i in T for i in ls)
            rin = all(i in T for i in rs)
            if lin != rin:
                ok = False
                break
            if lin:
                diffs.append(e.pair.difference)
        if not ok:
            continue
        lattice = IntegerLattice.from_generators(diffs, size)
        out.append(Stratum(
            support=T,
            lattice=lattice,
            dimension=len(T) - 1 - lattice.rank,
            sample=DistributionPoint.uniform(size, sorted(T)),
            is_main=len(T) == size,
            exact=exact,
        ))
    return out


def stratum_point(st: Stratum, t) -> DistributionPoint:
    """Exact point of ``st`` from positive parameters ``t`` (one per stratum dimension)."""
    return latgeo.rational_point_on_lambda(st.lattice, t, sorted(st.support))


@dataclass
class Options:
    max_rules: int = MAX_RULES
    max_steps: int = MAX_STEPS
    fallback_depth: int = 6
    max_support_size: int = MAX_SUPPORT_SIZE


@dataclass
class AbsoluteDescriptor:
    digest: str
    generators: tuple[str, ...]
    declared_class: str
    central_pairs: CentralPairSet
    equations: list[CentralityEquation]
    reduced_relation_lattice: IntegerLattice
    central_lattice: IntegerLattice
    dimension: int
    group_rank: int
    branching: bool
    chart: ChartBasis
    polytope: ProjectedPolytope
    strata: list[Stratum]
    topology_claim: str
    exact: bool

    @property
    def main_stratum(self) -> Stratum:
        return next(s for s in self.strata if s.is_main)


def presentation_digest(p: Presentation) -> str:
    return hashlib.sha256(serialize(p).encode()).hexdigest()[:16]


def _topology_claim(declared: str, dimension: int, exact: bool) -> str:
    if declared in ("group", "cancellative"):
        return f"closed_disk({dimension})"
    return "compact_stratified" if exact else "unknown"


def describe_absolute(p: Presentation, options: Options | None = None) -> AbsoluteDescriptor:
    opts = options or Options()
    cp = central_pairs_exact(
        p,
        fallback_depth=opts.fallback_depth,
        max_rules=opts.max_rules,
        max_steps=opts.max_steps,
    )
    eqs = centrality_equations(cp)
    L = latgeo.difference_lattice(p)
    Lc = latgeo.central_sublattice(L)
    dim = latgeo.absolute_dimension(Lc, p.size)
    rs = complete(p, max_rules=opts.max_rules, max_steps=opts.max_steps)
    parts = strata(eqs, p.size, exact=cp.exact, max_size=opts.max_support_size)
    main = next(s for s in parts if s.is_main)
    if main.dimension != dim:
        log.warning("main stratum dimension %d differs from lattice dimension %d", main.dimension, dim)
    return AbsoluteDescriptor(
        digest=presentation_digest(p),
        generators=p.symbols,
        declared_class=p.declared_class,
        central_pairs=cp,
        equations=eqs,
        reduced_relation_lattice=L,
        central_lattice=Lc,
        dimension=dim,
        group_rank=latgeo.group_of_fractions_rank(L, p.size),
        branching=is_branching(p, rs),
        chart=latgeo.chart(Lc),
        polytope=latgeo.project_simplex(Lc),
        strata=parts,
        topology_claim=_topology_claim(p.declared_class, dim, cp.exact),
        exact=cp.exact,
    )


@dataclass
class CharacterTable:
    """Multiplicative functional on the branching monoid induced by ``mu``.

    The value at an (element, level) vertex is ``scale**level`` times the
    product of ``mu`` along any word of that length reaching the element.
    """

    mu: DistributionPoint
    rs: RewriteSystem
    scale: Fraction | float = 1
    _reps: list = field(default_factory=list, repr=False, compare=False)

    def value(self, word: Vector):
        """Value at the vertex reached by the exponent vector ``word``."""
        return self.scale ** sum(word) * _monomial(word, self.mu.weights)

    def value_at(self, element: Vector, level: int):
        """Value at ``(element, level)``; zero when no word of that length reaches it."""
        target = normal_form(self.rs, element)
        rep = self._representatives(level).get(target)
        return 0 if rep is None else self.value(rep)

    def generator_values(self):
        n = self.rs.nvars
        return [self.value(tuple(1 if i == j else 0 for i in range(n))) for j in range(n)]

    def _representatives(self, level: int) -> dict:
        n = self.rs.nvars
        if not self._reps:
            zero = (0,) * n
            self._reps.append({normal_form(self.rs, zero): zero})
        while len(self._reps) <= level:
            nxt = {}
            for v in self._reps[-1].values():
                for g in range(n):
                    w = tuple(x + (i == g) for i, x in enumerate(v))
                    nxt.setdefault(normal_form(self.rs, w), w)
            self._reps.append(nxt)
        return self._reps[level]


def character_from(mu: DistributionPoint, rs: RewriteSystem, equations=None) -> CharacterTable:
    """Normalized character of the branching monoid attached to a precentral ``mu``."""
    if equations is None:
        equations = centrality_equations(central_pairs_exact(presentation_of(rs)))
    if not is_precentral(equations, mu):
        raise ValueError("mu is not precentral; the character would be ill-defined")
    return CharacterTable(mu, rs)


def scale_character(ct: CharacterTable, lam) -> CharacterTable:
    """Move along the fiber ``(0, inf)``: multiply the value at level ``n`` by ``lam**n``."""
    if lam <= 0:
        raise ValueError("scale must be positive")
    return CharacterTable(ct.mu, ct.rs, ct.scale * lam, ct._reps)


def compare_quotient(p1: Presentation, p2: Presentation, options: Options | None = None) -> bool:
    """Whether the two presentations have the same central lattice and strata."""
    if p1.symbols != p2.symbols:
        raise ValueError("presentations use different generator sets")
    d1 = describe_absolute(p1, options)
    d2 = describe_absolute(p2, options)
    if d1.central_lattice != d2.central_lattice:
        return False

    def shape(d):
        return sorted((s.mask, s.lattice.basis, s.dimension) for s in d.strata)

    return shape(d1) == shape(d2)
