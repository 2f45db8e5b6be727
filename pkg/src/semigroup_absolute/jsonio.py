"""JSON form of :class:`AbsoluteDescriptor`.

Rationals are written as strings (``"1/3"``), lattice bases as integer
lists, supports as generator names.  :func:`descriptor_from_dict` inverts
:func:`descriptor_to_dict` exactly.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .absolute import AbsoluteDescriptor, Stratum, centrality_equations
from .latgeo import (
    ChartBasis,
    DistributionPoint,
    Facet,
    IntegerLattice,
    ProjectedPolytope,
)
from .presentation import RelationPair
from .wordcalc import CentralPairSet


def _q(x) -> str:
    return str(Fraction(x))


def _lattice(L: IntegerLattice):
    return [list(r) for r in L.basis]


def descriptor_to_dict(d: AbsoluteDescriptor) -> dict:
    names = d.generators
    return {
        "generators": list(names),
        "class": d.declared_class,
        "digest": d.digest,
        "reduced_relation_lattice": _lattice(d.reduced_relation_lattice),
        "central_lattice": _lattice(d.central_lattice),
        "absolute_dimension": d.dimension,
        "group_of_fractions_rank": d.group_rank,
        "branching": d.branching,
        "equations": [{"lhs": list(e.lhs), "rhs": list(e.rhs)} for e in d.equations],
        "chart": {"complement_basis": [list(r) for r in d.chart.complement_basis]},
        "polytope": {
            "vertices": [[_q(x) for x in v] for v in d.polytope.vertices()],
            "facets": [
                {"normal": list(f.normal), "offset": _q(f.offset)} for f in d.polytope.facets
            ],
        },
        "strata": [
            {
                "support": [names[i] for i in sorted(s.support)],
                "dimension": s.dimension,
                "lattice": _lattice(s.lattice),
                "sample": [_q(w) for w in s.sample.weights],
                "exact": s.exact,
            }
            for s in d.strata
        ],
        "topology_claim": d.topology_claim,
        "exact": d.exact,
    }


def descriptor_from_dict(data: dict) -> AbsoluteDescriptor:
    names = tuple(data["generators"])
    n = len(names)
    exact = data["exact"]
    pairs = [RelationPair(tuple(e["lhs"]), tuple(e["rhs"])) for e in data["equations"]]
    cp = CentralPairSet(pairs, exact, None)

    def lattice(rows):
        return IntegerLattice(tuple(tuple(r) for r in rows), n)

    C = tuple(tuple(r) for r in data["chart"]["complement_basis"])
    images = tuple(tuple(Fraction(C[j][s]) for j in range(len(C))) for s in range(n))
    verts = [tuple(Fraction(x) for x in v) for v in data["polytope"]["vertices"]]
    hull = tuple(images.index(v) for v in verts)
    facets = tuple(
        Facet(tuple(f["normal"]), Fraction(f["offset"])) for f in data["polytope"]["facets"]
    )
    strata = []
    for s in data["strata"]:
        support = frozenset(names.index(x) for x in s["support"])
        strata.append(Stratum(
            support=support,
            lattice=lattice(s["lattice"]),
            dimension=s["dimension"],
            sample=DistributionPoint.exact(Fraction(w) for w in s["sample"]),
            is_main=len(support) == n,
            exact=s["exact"],
        ))
    return AbsoluteDescriptor(
        digest=data["digest"],
        generators=names,
        declared_class=data["class"],
        central_pairs=cp,
        equations=centrality_equations(cp),
        reduced_relation_lattice=lattice(data["reduced_relation_lattice"]),
        central_lattice=lattice(data["central_lattice"]),
        dimension=data["absolute_dimension"],
        group_rank=data["group_of_fractions_rank"],
        branching=data["branching"],
        chart=ChartBasis(C, n),
        polytope=ProjectedPolytope(C, images, hull, facets),
        strata=strata,
        topology_claim=data["topology_claim"],
        exact=exact,
    )


def dumps(d: AbsoluteDescriptor, indent: int | None = 2) -> str:
    return json.dumps(descriptor_to_dict(d), indent=indent)


def loads(text: str) -> AbsoluteDescriptor:
    return descriptor_from_dict(json.loads(text))
