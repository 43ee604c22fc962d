"""TQFT vector spaces from trivalent spines.

A handlebody H deformation-retracts onto a spine S; the vector space of the
boundary surface Y = dH has a basis indexed by labelings of the internal
edges of S by 0..r-2 that are admissible at every trivalent vertex (boundary
legs carry fixed labels).  The solid torus is the special case of a circle
spine, whose basis vector b_k is the core curve carrying the k-th projector.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd

from . import skein as sk
from .linalg import mat_inv, mat_vec
from .recoupling import admissible, check_label, hopf_pairing
from .scalars import QuantumParams

SPINE_SCHEMA_VERSION = 1


class SpineFormatError(ValueError):
    """Malformed spine description."""


@dataclass
class Spine:
    """Trivalent spine: vertices are triples of edge/leg names; every
    internal edge name appears exactly twice in vertex triples (possibly both
    at one vertex, a loop), every leg name exactly once.  Edge names listed
    in `edges` but absent from all vertices are free circles (the torus
    spine is one free circle and no vertices).  `boundary` assigns labels to
    legs."""
    edges: list
    vertices: list
    boundary: dict = field(default_factory=dict)

    def __post_init__(self):
        counts = {}
        for tri in self.vertices:
            if len(tri) != 3:
                raise SpineFormatError(f"vertex {tri} is not trivalent")
            for name in tri:
                counts[name] = counts.get(name, 0) + 1
        for e in self.edges:
            if counts.get(e, 0) not in (0, 2):
                raise SpineFormatError(f"internal edge {e} has {counts.get(e, 0)} ends")
        for leg in self.boundary:
            if counts.get(leg, 0) != 1:
                raise SpineFormatError(f"leg {leg} must appear at exactly one vertex")
        known = set(self.edges) | set(self.boundary)
        for name in counts:
            if name not in known:
                raise SpineFormatError(f"name {name} is neither a listed edge nor a leg")
        if len(set(self.edges)) != len(self.edges):
            raise SpineFormatError("duplicate edge names")

    def to_json(self):
        return {"version": SPINE_SCHEMA_VERSION, "edges": list(self.edges),
                "vertices": [list(t) for t in self.vertices],
                "boundary": dict(self.boundary)}

    @staticmethod
    def from_json(obj) -> "Spine":
        try:
            if obj.get("version", SPINE_SCHEMA_VERSION) != SPINE_SCHEMA_VERSION:
                raise SpineFormatError(f"unsupported spine schema version {obj.get('version')}")
            return Spine([str(e) for e in obj["edges"]],
                         [[str(x) for x in t] for t in obj["vertices"]],
                         {str(k): int(v) for k, v in obj.get("boundary", {}).items()})
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, SpineFormatError):
                raise
            raise SpineFormatError(f"malformed spine JSON: {exc}") from exc


def torus_spine() -> Spine:
    return Spine(edges=["a"], vertices=[])


def theta_spine() -> Spine:
    """Genus-2 spine: two vertices joined by three edges."""
    return Spine(edges=["x", "y", "z"], vertices=[["x", "y", "z"], ["x", "y", "z"]])


def dumbbell_spine() -> Spine:
    """Genus-2 spine: two loops joined by a bar."""
    return Spine(edges=["x", "m", "y"], vertices=[["x", "x", "m"], ["y", "y", "m"]])


def four_punctured_sphere_spine(labels, channel="h") -> Spine:
    """H-shaped spine for the 4-punctured sphere: legs 1..4, one internal
    edge.  channel='h' pairs legs (1,2)(3,4); channel='v' pairs (2,3)(1,4)."""
    l1, l2, l3, l4 = labels
    if channel == "h":
        verts = [["p1", "p2", "m"], ["p3", "p4", "m"]]
    elif channel == "v":
        verts = [["p2", "p3", "m"], ["p4", "p1", "m"]]
    else:
        raise SpineFormatError(f"unknown channel {channel!r}")
    return Spine(edges=["m"], vertices=verts,
                 boundary={"p1": l1, "p2": l2, "p3": l3, "p4": l4})


def basis(params: QuantumParams, spine: Spine):
    """All admissible edge labelings, lexicographic in the order of
    spine.edges; each is a dict edge name -> label."""
    for leg, lab in spine.boundary.items():
        check_label(params, lab)
    out = []
    names = list(spine.edges)
    for combo in itertools.product(range(params.r - 1), repeat=len(names)):
        labeling = dict(zip(names, combo))
        ok = True
        for tri in spine.vertices:
            vals = [labeling.get(x, spine.boundary.get(x)) for x in tri]
            if not admissible(params, *vals):
                ok = False
                break
        if ok:
            out.append(labeling)
    return out


def dim(params: QuantumParams, spine: Spine) -> int:
    return len(basis(params, spine))


def handlebody_vector(params: QuantumParams, spine: Spine):
    """Z(H) in the spine basis: the indicator of the all-zero labeling."""
    if spine.boundary:
        raise SpineFormatError("handlebody vector needs a closed boundary surface")
    bas = basis(params, spine)
    zero = {e: 0 for e in spine.edges}
    return [params.one() if lab == zero else params.zero() for lab in bas]


# ----------------------------------------------------------------------------
# solid torus expansions


def _axis_word(q: int):
    """Braid word on q+1 strands taking strand q+1 once around strands 1..q
    (over on the way out, under on the way back)."""
    return list(range(q, 0, -1)) + list(range(1, q + 1))


def torus_curve_link(p: int, q: int, axis_label) -> sk.LabeledLink:
    """The (p,q) curve of the boundary torus pushed into the solid torus,
    together with the core of the complementary solid torus labeled
    `axis_label`; as a link in S^3."""
    if gcd(p, q) != 1:
        raise sk.DomainError(f"({p},{q}) is not coprime")
    if q < 0:
        p, q = -p, -q
    if q == 0:
        # meridian: a contractible circle split from the axis
        return sk.split_union(sk.unknot_link(1, 0), sk.unknot_link(axis_label, 0))
    word = [i if p > 0 else -i for _ in range(abs(p)) for i in range(1, q)]
    word += _axis_word(q)
    return sk.closed_braid_link(word, q + 1, labels=[1, axis_label], framings=[0, 0])


def expand_solid_torus(params: QuantumParams, p: int, q: int):
    """Coordinates of the pushed-in (p,q) curve in the core-projector basis
    b_0..b_{r-2} of the solid torus, extracted by pairing with the dual
    solid torus (Hopf pairing Gram matrix, inverted exactly)."""
    r = params.r
    pairings = [sk.evaluate(params, torus_curve_link(p, q, j)) for j in range(r - 1)]
    gram = [[hopf_pairing(params, j, k) for k in range(r - 1)] for j in range(r - 1)]
    return mat_vec(mat_inv(params, gram), pairings)


@dataclass
class CurveOnSpine:
    """A curve on the boundary surface recorded by unsigned edge weights."""
    weights: dict

    def check_realizable(self, spine: Spine):
        for tri in spine.vertices:
            w = [self.weights.get(x, 0) for x in tri]
            if sum(w) % 2:
                raise SpineFormatError(f"odd weight sum at vertex {tri}")
            if w[0] > w[1] + w[2] or w[1] > w[0] + w[2] or w[2] > w[0] + w[1]:
                raise SpineFormatError(f"weights at vertex {tri} violate triangle bound")
        return True
