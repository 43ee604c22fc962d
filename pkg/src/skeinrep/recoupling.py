"""Recoupling data at a 4r-th root of unity: loop values, theta and
tetrahedral coefficients, 6j symbols / F-matrices, twist coefficients, and
encirclement eigenvalues.

Every closed form here has a brute-force oracle built from honest
Temperley-Lieb diagram calculus (the *_oracle functions); the test suite
checks them against each other exactly.  Sign and normalization conventions
are spelled out in CONVENTIONS.md at the repository root.
"""
from __future__ import annotations

from functools import lru_cache

from .scalars import QuantumParams, Scalar
from . import linalg
from .tl import (
    TLElement,
    crossing_element,
    encircle_element,
    encircle_eigenvalue_scalar,
    jones_wenzl,
)


def valid_label(params: QuantumParams, k: int) -> bool:
    return 0 <= k <= params.r - 2


def check_label(params: QuantumParams, k: int):
    if not valid_label(params, k):
        raise ValueError(f"label {k} outside 0..{params.r - 2}")


def admissible(params: QuantumParams, a: int, b: int, c: int) -> bool:
    """Vertex admissibility: triangle inequalities, even parity, and
    a+b+c <= 2r-4."""
    for k in (a, b, c):
        check_label(params, k)
    if (a + b + c) % 2:
        return False
    if a > b + c or b > c + a or c > a + b:
        return False
    return a + b + c <= 2 * params.r - 4


def loop_value(params: QuantumParams, k: int) -> Scalar:
    """d_k = (-1)^k [k+1], the value of a closed k-labeled loop."""
    check_label(params, k)
    return params.d_k(k)


def loop_value_oracle(params: QuantumParams, k: int) -> Scalar:
    return jones_wenzl(params, k).markov_trace()


def _sign(params: QuantumParams, n: int) -> Scalar:
    return params.one() if n % 2 == 0 else -params.one()


def theta(params: QuantumParams, a: int, b: int, c: int) -> Scalar:
    """Theta network with edge labels a, b, c.

    With x=(a+b-c)/2, y=(b+c-a)/2, z=(c+a-b)/2:
      theta = (-1)^{x+y+z} [x+y+z+1]! [x]! [y]! [z]! / ([x+y]! [y+z]! [z+x]!)
    Returns the zero Scalar on an inadmissible triple.
    """
    if not admissible(params, a, b, c):
        return params.zero()
    x, y, z = (a + b - c) // 2, (b + c - a) // 2, (c + a - b) // 2
    f = params.quantum_factorial
    num = f(x + y + z + 1) * f(x) * f(y) * f(z)
    den = f(x + y) * f(y + z) * f(z + x)
    return _sign(params, x + y + z) * num / den


def vertex_morphism(params: QuantumParams, a: int, b: int, c: int) -> TLElement:
    """The trivalent vertex as a TL morphism a(+)b -> c.

    The rightmost x = (a+b-c)/2 strands of the a-block turn back into the
    leftmost x strands of the b-block; projectors sit on all three cables.
    """
    if not admissible(params, a, b, c):
        raise ValueError(f"inadmissible vertex ({a},{b},{c})")
    x = (a + b - c) // 2
    bottom = jones_wenzl(params, a).tensor(jones_wenzl(params, b))
    mid = TLElement.identity(params, a - x) \
        .tensor(TLElement.caps(params, x)) \
        .tensor(TLElement.identity(params, b - x))
    return bottom * mid * jones_wenzl(params, c)


def theta_oracle(params: QuantumParams, a: int, b: int, c: int) -> Scalar:
    if not admissible(params, a, b, c):
        raise ValueError("oracle needs an admissible triple")
    v = vertex_morphism(params, a, b, c)
    return (v.flip() * v).markov_trace()


def tet(params: QuantumParams, a: int, b: int, c: int, d: int, e: int, f: int) -> Scalar:
    """Tetrahedral network with vertex triples (a,b,e), (c,d,e), (a,c,f),
    (b,d,f); closed form per the convention document.

    With vertex half-sums a_i and quadrilateral half-sums b_j:
      a_1=(a+b+e)/2, a_2=(c+d+e)/2, a_3=(a+c+f)/2, a_4=(b+d+f)/2
      b_1=(a+d+e+f)/2, b_2=(b+c+e+f)/2, b_3=(a+b+c+d)/2
      tet = (prod_{i,j} [b_j - a_i]! / prod of edge factorials)
            * sum_{s=max a_i}^{min b_j} (-1)^s [s+1]! /
              (prod_i [s - a_i]! prod_j [b_j - s]!)
    Returns the zero Scalar if any vertex is inadmissible.
    """
    triples = [(a, b, e), (c, d, e), (a, c, f), (b, d, f)]
    if not all(admissible(params, *t) for t in triples):
        return params.zero()
    av = [(a + b + e) // 2, (c + d + e) // 2, (a + c + f) // 2, (b + d + f) // 2]
    bv = [(a + d + e + f) // 2, (b + c + e + f) // 2, (a + b + c + d) // 2]
    fq = params.quantum_factorial
    pref_num = params.one()
    for bj in bv:
        for ai in av:
            pref_num = pref_num * fq(bj - ai)
    pref_den = params.one()
    for edge in (a, b, c, d, e, f):
        pref_den = pref_den * fq(edge)
    total = params.zero()
    for s in range(max(av), min(bv) + 1):
        term = _sign(params, s) * fq(s + 1)
        den = params.one()
        for ai in av:
            den = den * fq(s - ai)
        for bj in bv:
            den = den * fq(bj - s)
        total = total + term / den
    return pref_num / pref_den * total


def tet_oracle(params: QuantumParams, a: int, b: int, c: int, d: int, e: int, f: int) -> Scalar:
    """Brute-force tetrahedron: compose four vertex morphisms and close."""
    triples = [(a, b, e), (c, d, e), (a, c, f), (b, d, f)]
    if not all(admissible(params, *t) for t in triples):
        return params.zero()
    v1bar = vertex_morphism(params, a, b, e).flip()          # e -> a(+)b
    v3 = vertex_morphism(params, a, f, c)                    # a(+)f -> c
    v4 = vertex_morphism(params, f, b, d)                    # f(+)b -> d
    mid = TLElement.identity(params, a) \
        .tensor(TLElement.cups(params, f)) \
        .tensor(TLElement.identity(params, b))
    v2 = vertex_morphism(params, c, d, e)                    # c(+)d -> e
    x = v1bar * mid * v3.tensor(v4) * v2
    return x.markov_trace()


def six_j(params: QuantumParams, a: int, b: int, c: int, d: int, e: int, f: int) -> Scalar:
    """Normalized 6j symbol: the F-matrix entry taking the (a,b)(c,d)
    fusion channel e to the (b,c)(a,d) channel f:

      {a b e; c d f} = tet(b,a,c,d,e,f) * d_f / (theta(b,c,f) theta(a,d,f))
    """
    tf = theta(params, b, c, f)
    ta = theta(params, a, d, f)
    if tf.is_zero() or ta.is_zero():
        return params.zero()
    return tet(params, b, a, c, d, e, f) * loop_value(params, f) / (tf * ta)


def f_matrix_channels(params: QuantumParams, a: int, b: int, c: int, d: int):
    """Admissible middle labels for the two pants decompositions of the
    4-holed sphere with boundary (a,b,c,d): (e rows, f columns)."""
    es = [e for e in range(params.r - 1)
          if admissible(params, a, b, e) and admissible(params, c, d, e)]
    fs = [f for f in range(params.r - 1)
          if admissible(params, b, c, f) and admissible(params, a, d, f)]
    return es, fs


def f_matrix(params: QuantumParams, a: int, b: int, c: int, d: int):
    """F-matrix rows indexed by channel e, columns by channel f."""
    es, fs = f_matrix_channels(params, a, b, c, d)
    return [[six_j(params, a, b, c, d, e, f) for f in fs] for e in es]


def twist_coefficient(params: QuantumParams, k: int) -> Scalar:
    """Scalar by which a positive kink acts on a k-labeled strand:
    (-1)^k A^{k(k+2)}.  The sign is the oracle-determined one (a single
    positive kink on an unlabeled strand resolves to -A^3)."""
    check_label(params, k)
    return _sign(params, k) * params.a_pow(k * (k + 2))


def _block_cross_word(k1: int, k2: int):
    """Braid word (on k1+k2 strands) moving the first k1-block past the
    next k2-block, all positive crossings."""
    word = []
    for i in range(k1, 0, -1):
        for j in range(k2):
            word.append(i + j)
    return word


def curl_element(params: QuantumParams, k: int, positive: bool = True) -> TLElement:
    """Endomorphism of a k-cable given by one kink of the whole cable."""
    m = 3 * k
    cur = TLElement.identity(params, k).tensor(TLElement.cups(params, k))
    for g in _block_cross_word(k, k):
        cur = cur * crossing_element(params, m, g, positive=positive)
    cur = cur * TLElement.identity(params, k).tensor(TLElement.caps(params, k))
    return cur


def twist_coefficient_oracle(params: QuantumParams, k: int) -> Scalar:
    """Kink a P_k-cabled strand in honest diagram calculus and read off the
    eigenvalue."""
    check_label(params, k)
    if k == 0:
        return params.one()
    pk = jones_wenzl(params, k)
    kinked = pk * curl_element(params, k, positive=True) * pk
    # kinked = mu_k * P_k; read the identity-diagram coefficient
    mu = kinked.identity_coefficient()
    if not (kinked - pk.scale(mu)).is_zero():
        raise AssertionError("kinked projector is not proportional to the projector")
    return mu


def encircle_eigenvalue(params: QuantumParams, k: int) -> Scalar:
    """Eigenvalue of an unlabeled loop around a k-labeled strand:
    -(A^{2(k+1)} + A^{-2(k+1)})."""
    check_label(params, k)
    return encircle_eigenvalue_scalar(params, k)


def encircle_eigenvalue_oracle(params: QuantumParams, k: int) -> Scalar:
    pk = jones_wenzl(params, k)
    hit = pk * encircle_element(params, k, 1) * pk
    lam = hit.identity_coefficient()
    if not (hit - pk.scale(lam)).is_zero():
        raise AssertionError("encircled projector is not proportional to the projector")
    return lam


def hopf_pairing(params: QuantumParams, j: int, k: int) -> Scalar:
    """Value of the 0-framed Hopf link with labels j, k:
    S~_{jk} = (-1)^{j+k} [(j+1)(k+1)]."""
    check_label(params, j)
    check_label(params, k)
    return _sign(params, j + k) * params.quantum_int((j + 1) * (k + 1))


def hopf_pairing_oracle(params: QuantumParams, j: int, k: int) -> Scalar:
    """Close a j-cable through a k-labeled encircling loop."""
    x = jones_wenzl(params, j) * encircle_element(params, j, k)
    return x.markov_trace()


def dump_tables(params: QuantumParams):
    """All recoupling data for one (r, s), JSON-ready; used by the CLI."""
    r = params.r
    labels = list(range(r - 1))
    thetas = {}
    for a in labels:
        for b in labels:
            for c in labels:
                if admissible(params, a, b, c):
                    thetas[f"{a},{b},{c}"] = theta(params, a, b, c).to_json()
    sixjs = {}
    for a in labels:
        for b in labels:
            for c in labels:
                for d in labels:
                    es, fs = f_matrix_channels(params, a, b, c, d)
                    for e in es:
                        for f in fs:
                            v = six_j(params, a, b, c, d, e, f)
                            if not v.is_zero():
                                sixjs[f"{a},{b},{c},{d};{e},{f}"] = v.to_json()
    return {
        "r": r,
        "s": params.s,
        "d": [loop_value(params, k).to_json() for k in labels],
        "twist": [twist_coefficient(params, k).to_json() for k in labels],
        "encircle": [encircle_eigenvalue(params, k).to_json() for k in labels],
        "hopf": [[hopf_pairing(params, j, k).to_json() for k in labels] for j in labels],
        "theta": thetas,
        "six_j": sixjs,
    }
