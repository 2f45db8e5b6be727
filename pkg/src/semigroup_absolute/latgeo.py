"""Lattices of relation vectors and the geometry of monomial solution sets.

For a lattice ``K`` of sum-zero integer vectors, the solution set in the
probability simplex of the monomial equations attached to ``K`` is a closed
disk.  This module provides its interior chart (softmax / centered log), its
polytope model (the image of the simplex under a linear quotient by ``K``),
and the two numerical solvers that realise points of it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .intlinalg import dot, hnf, integer_kernel, mat_vec
from .presentation import Presentation, relation_difference

FLOAT_SUM_TOL = 1e-12


class NumericalError(RuntimeError):
    pass


@dataclass(frozen=True)
class IntegerLattice:
    basis: tuple[tuple[int, ...], ...]
    dim: int

    @classmethod
    def from_generators(cls, vectors, dim: int) -> "IntegerLattice":
        vecs = [tuple(v) for v in vectors if any(v)]
        return cls(tuple(hnf(vecs, dim)) if vecs else (), dim)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v) -> bool:
        if not any(v):
            return True
        if not self.basis:
            return False
        return tuple(hnf(list(self.basis) + [tuple(v)], self.dim)) == self.basis

    def rows(self):
        return [list(r) for r in self.basis]


@dataclass(frozen=True)
class DistributionPoint:
    weights: tuple
    mode: str = "exact"

    def __post_init__(self):
        if self.mode not in ("exact", "float"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")
        total = sum(self.weights)
        if self.mode == "exact":
            if total != 1:
                raise ValueError(f"weights sum to {total}, not 1")
        elif abs(total - 1) > FLOAT_SUM_TOL:
            raise ValueError(f"weights sum to {total}, not 1")

    @classmethod
    def exact(cls, weights) -> "DistributionPoint":
        return cls(tuple(Fraction(w) for w in weights), "exact")

    @classmethod
    def from_floats(cls, weights) -> "DistributionPoint":
        return cls(tuple(float(w) for w in weights), "float")

    @classmethod
    def uniform(cls, n: int, support=None) -> "DistributionPoint":
        support = range(n) if support is None else list(support)
        k = len(support)
        return cls.exact(Fraction(1, k) if i in support else 0 for i in range(n))

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, w in enumerate(self.weights) if w)

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __getitem__(self, i):
        return self.weights[i]

    def as_array(self) -> np.ndarray:
        return np.array([float(w) for w in self.weights])


@dataclass(frozen=True)
class ChartBasis:
    """Integer rows spanning the orthogonal complement of ``span(K)`` in the sum-zero hyperplane."""

    complement_basis: tuple[tuple[int, ...], ...]
    size: int

    @property
    def dimension(self) -> int:
        return len(self.complement_basis)

    def matrix(self) -> np.ndarray:
        return np.array(self.complement_basis, dtype=float).reshape(self.dimension, self.size)


@dataclass(frozen=True)
class Facet:
    normal: tuple
    offset: Fraction

    def value(self, y):
        return dot(self.normal, y)


@dataclass(frozen=True)
class ProjectedPolytope:
    projection: tuple[tuple[int, ...], ...]
    vertex_images: tuple[tuple[Fraction, ...], ...]
    hull_vertices: tuple[int, ...]
    facets: tuple[Facet, ...]

    @property
    def dimension(self) -> int:
        return len(self.projection)

    def vertices(self):
        return [self.vertex_images[i] for i in self.hull_vertices]

    def project(self, mu) -> tuple:
        return mat_vec(self.projection, tuple(mu))

    def contains(self, y, strict: bool = False, tol: float = 0.0) -> bool:
        for f in self.facets:
            v = f.value(y) - f.offset
            if strict and v >= -tol:
                return False
            if not strict and v > tol:
                return False
        return True

    def on_boundary(self, y) -> bool:
        return self.contains(y) and any(f.value(y) == f.offset for f in self.facets)

    def face_supports(self) -> set[frozenset[int]]:
        """Index sets ``{s : rho(e_s) in F}`` over all nonempty faces ``F``."""
        n = len(self.vertex_images)
        top = frozenset(range(n))
        facet_sets = [
            frozenset(i for i, y in enumerate(self.vertex_images) if f.value(y) == f.offset)
            for f in self.facets
        ]
        faces = {top}
        frontier = [top]
        while frontier:
            new = []
            for face in frontier:
                for fs in facet_sets:
                    sub = face & fs
                    if sub and sub not in faces:
                        faces.add(sub)
                        new.append(sub)
            frontier = new
        return faces


def difference_lattice(p: Presentation) -> IntegerLattice:
    """Lattice spanned by ``lhs - rhs`` over the defining relations."""
    return IntegerLattice.from_generators((relation_difference(r) for r in p.relations), p.size)


def central_sublattice(L: IntegerLattice) -> IntegerLattice:
    """``L`` intersected with the sum-zero hyperplane."""
    if not L.basis:
        return L
    sums = [[sum(row) for row in L.basis]]
    coeffs = integer_kernel(sums, L.rank)
    vecs = [tuple(sum(c * row[j] for c, row in zip(x, L.basis)) for j in range(L.dim)) for x in coeffs]
    return IntegerLattice.from_generators(vecs, L.dim)


def absolute_dimension(Lc: IntegerLattice, size: int) -> int:
    return size - 1 - Lc.rank


def group_of_fractions_rank(L: IntegerLattice, size: int) -> int:
    return size - L.rank


def chart(Lc: IntegerLattice) -> ChartBasis:
    rows = [list(r) for r in Lc.basis] + [[1] * Lc.dim]
    return ChartBasis(tuple(integer_kernel(rows, Lc.dim)), Lc.dim)


def exp_map(c: ChartBasis, w) -> DistributionPoint:
    w = np.asarray(w, dtype=float).reshape(c.dimension)
    v = w @ c.matrix() if c.dimension else np.zeros(c.size)
    v = v - v.max()
    e = np.exp(v)
    return DistributionPoint.from_floats(e / e.sum())


def log_map(c: ChartBasis, mu: DistributionPoint) -> np.ndarray:
    """Chart coordinates of the mean-centered log vector of a positive ``mu``."""
    p = mu.as_array()
    if np.any(p <= 0):
        raise ValueError("log_map is defined only on the open simplex")
    ell = np.log(p)
    ell -= ell.mean()
    if c.dimension == 0:
        return np.zeros(0)
    coords, *_ = np.linalg.lstsq(c.matrix().T, ell, rcond=None)
    return coords


def _facet_normal(points):
    """Primitive integer normal of the hyperplane through ``points`` (d of them in R^d), or None."""
    d = len(points[0])
    base = points[0]
    diffs = [[x - y for x, y in zip(p, base)] for p in points[1:]]
    den = 1
    for row in diffs:
        for x in row:
            den = math.lcm(den, Fraction(x).denominator)
    rows = [[int(Fraction(x) * den) for x in row] for row in diffs]
    ker = integer_kernel(rows, d) if rows else integer_kernel([], d)
    if len(ker) != 1:
        return None
    return ker[0]


def convex_hull(points) -> tuple[tuple[int, ...], tuple[Facet, ...]]:
    """Exact hull of rational points that affinely span their ambient space.

    Brute force over d-subsets; fine for the handful of generators a
    presentation has.  Returns (vertex indices, facets).
    """
    pts = [tuple(Fraction(x) for x in p) for p in points]
    if not pts:
        return (), ()
    d = len(pts[0])
    if d == 0:
        return (0,), ()
    distinct = []
    for i, p in enumerate(pts):
        if p not in [pts[j] for j in distinct]:
            distinct.append(i)
    facets = {}
    for combo in combinations(distinct, d):
        normal = _facet_normal([pts[i] for i in combo])
        if normal is None:
            continue
        vals = [dot(normal, p) for p in pts]
        off = dot(normal, pts[combo[0]])
        if all(v <= off for v in vals):
            facets.setdefault((normal, off), Facet(normal, off))
        if all(v >= off for v in vals):
            neg = tuple(-x for x in normal)
            facets.setdefault((neg, -off), Facet(neg, -off))
    facets = tuple(sorted(facets.values(), key=lambda f: (f.normal, f.offset)))
    verts = []
    for i in distinct:
        tight = [f.normal for f in facets if f.value(pts[i]) == f.offset]
        if tight and len(hnf(tight, d)) == d:
            verts.append(i)
    return tuple(verts), facets


def project_simplex(Lc: IntegerLattice) -> ProjectedPolytope:
    """Image of the simplex under the rational quotient ``mu -> C mu``.

    ``C`` is the chart basis, whose kernel on the sum-zero hyperplane is
    exactly ``span(Lc)``.
    """
    c = chart(Lc)
    C = c.complement_basis
    n = Lc.dim
    images = tuple(tuple(Fraction(C[j][s]) for j in range(len(C))) for s in range(n))
    verts, facets = convex_hull(images)
    return ProjectedPolytope(C, images, verts, facets)


def _monomial_sides(kappa, mu):
    left = right = 1
    for k, m in zip(kappa, mu):
        if k > 0:
            left *= m ** k
        elif k < 0:
            right *= m ** (-k)
    return left, right


def lambda_membership(K_vectors, mu: DistributionPoint, tol: float = 1e-12) -> bool:
    """Whether ``mu`` satisfies ``prod mu^{k+} = prod mu^{k-}`` for every ``k`` in ``K_vectors``."""
    for kappa in K_vectors:
        left, right = _monomial_sides(kappa, mu.weights)
        if mu.mode == "exact":
            if left != right:
                return False
        elif abs(left - right) > tol:
            return False
    return True


def segment_root(kappa, a: DistributionPoint, b: DistributionPoint, tol: float = 1e-12) -> DistributionPoint:
    """The unique point of the segment ``[a, b]`` solving the monomial equation of ``kappa``.

    ``a`` and ``b`` must be the endpoints of a chord of the simplex and
    ``kappa`` parallel to ``a - b``.  Along the chord the positive-exponent
    side decreases and the negative-exponent side increases, so bisection on
    their difference converges to the single crossing.
    """
    n = len(kappa)
    if len(a) != n or len(b) != n:
        raise ValueError("dimension mismatch")
    if sum(kappa) != 0 or not any(kappa):
        raise ValueError("kappa must be a nonzero sum-zero vector")
    diff = [Fraction(x) - Fraction(y) for x, y in zip(a.weights, b.weights)]
    # kappa must be a multiple of a - b
    i0 = next(i for i in range(n) if diff[i] != 0) if any(diff) else None
    if i0 is None or kappa[i0] == 0:
        raise ValueError("kappa is not parallel to a - b")
    factor = Fraction(kappa[i0]) / diff[i0]
    if any(Fraction(k) != factor * d for k, d in zip(kappa, diff)):
        raise ValueError("kappa is not parallel to a - b")
    if factor < 0:
        a, b = b, a
    av = [float(x) for x in a.weights]
    bv = [float(x) for x in b.weights]
    leaves_at_a = any(x == 0 and y > 0 for x, y in zip(a.weights, b.weights))
    leaves_at_b = any(y == 0 and x > 0 for x, y in zip(a.weights, b.weights))
    if not (leaves_at_a and leaves_at_b):
        raise ValueError("segment endpoints do not lie on the boundary of the simplex along this line")

    def gap(t):
        # relative, since high-degree monomials can be tiny
        mu = [(1 - t) * x + t * y for x, y in zip(av, bv)]
        left, right = _monomial_sides(kappa, mu)
        scale = max(left, right)
        return (left - right) / scale if scale else 0.0, mu

    lo, hi = 0.0, 1.0
    mu = av
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        g, mu = gap(mid)
        if abs(g) <= tol * 1e-3 or mid in (lo, hi):
            break
        if g > 0:
            lo = mid
        else:
            hi = mid
    total = sum(mu)
    return DistributionPoint.from_floats([m / total for m in mu])


def birch_lift(poly: ProjectedPolytope, Lc: IntegerLattice, target, tol: float = 1e-10,
               max_iter: int = 200) -> DistributionPoint:
    """The unique point of the solution set projecting onto ``target``.

    It is the maximum-entropy distribution on the fiber, which has the form
    ``softmax(theta @ C)``; ``theta`` solves the convex dual
    ``min logsumexp(theta @ C) - theta . target`` by damped Newton steps.
    """
    d = poly.dimension
    y = np.array([float(t) for t in target], dtype=float)
    if len(y) != d:
        raise ValueError(f"target has dimension {len(y)}, expected {d}")
    exact_target = all(isinstance(t, (int, Fraction)) for t in target)
    if exact_target:
        if not poly.contains(tuple(target), strict=True):
            raise ValueError("target is not interior to the polytope")
    elif not poly.contains(tuple(y), strict=True, tol=0.0):
        raise ValueError("target is not interior to the polytope")
    C = np.array(poly.projection, dtype=float).reshape(d, Lc.dim)
    n = Lc.dim
    if d == 0:
        return DistributionPoint.from_floats(np.full(n, 1.0 / n))

    def evaluate(theta):
        v = theta @ C
        m = v.max()
        e = np.exp(v - m)
        z = e.sum()
        return m + math.log(z) - theta @ y, e / z

    theta = np.zeros(d)
    f, mu = evaluate(theta)
    for it in range(max_iter):
        grad = C @ mu - y
        if np.max(np.abs(grad)) <= tol * 1e-2:
            break
        H = (C * mu) @ C.T - np.outer(C @ mu, C @ mu)
        try:
            step = np.linalg.solve(H, grad)
        except np.linalg.LinAlgError:
            step, *_ = np.linalg.lstsq(H, grad, rcond=None)
        dec = float(grad @ step)
        if dec < 1e-30:
            break
        t = 1.0
        cand = theta - step
        f_new, mu_new = evaluate(cand)
        # inside the quadratic region f changes below float resolution, so
        # the Armijo test is meaningless there and full steps are taken
        if dec > 1e-12:
            while f_new > f - 1e-4 * t * dec:
                t *= 0.5
                if t < 1e-12:
                    raise NumericalError("birch_lift line search stalled")
                cand = theta - t * step
                f_new, mu_new = evaluate(cand)
        theta, f, mu = cand, f_new, mu_new
    else:
        raise NumericalError(f"birch_lift did not converge: residual {np.max(np.abs(C @ mu - y)):.3e}")
    residual = np.max(np.abs(C @ mu - y))
    if residual > tol:
        raise NumericalError(f"birch_lift residual {residual:.3e} above {tol:.1e}")
    return DistributionPoint.from_floats(mu / mu.sum())


def saturated_complement(Lc: IntegerLattice, support: Sequence[int] | None = None):
    """Integer basis of the sum-zero vectors on ``support`` orthogonal to ``Lc``."""
    n = Lc.dim
    support = list(range(n)) if support is None else sorted(support)
    rows = [[r[s] for s in support] for r in Lc.basis] + [[1] * len(support)]
    ker = integer_kernel(rows, len(support))
    out = []
    for k in ker:
        full = [0] * n
        for s, x in zip(support, k):
            full[s] = x
        out.append(tuple(full))
    return out


def rational_point_on_lambda(Lc: IntegerLattice, t, support: Sequence[int] | None = None) -> DistributionPoint:
    """Exact point with ``mu_s`` proportional to ``prod_j t_j ** A[j][s]`` on ``support``.

    ``A`` is the saturated complement basis, so every monomial equation of
    ``Lc`` holds with exact rational equality.
    """
    A = saturated_complement(Lc, support)
    t = [Fraction(x) for x in t]
    if len(t) != len(A):
        raise ValueError(f"expected {len(A)} parameters, got {len(t)}")
    if any(x <= 0 for x in t):
        raise ValueError("parameters must be positive")
    n = Lc.dim
    support = set(range(n) if support is None else support)
    raw = []
    for s in range(n):
        if s not in support:
            raw.append(Fraction(0))
            continue
        w = Fraction(1)
        for tj, row in zip(t, A):
            w *= tj ** row[s]
        raw.append(w)
    total = sum(raw)
    return DistributionPoint.exact(w / total for w in raw)
