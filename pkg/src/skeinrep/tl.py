"""Temperley-Lieb category over the cyclotomic Scalars.

A diagram is a planar perfect matching of nb bottom points and nt top
points; closed loops created by stacking contribute a factor of
d = -A^2 - A^{-2}.  Endomorphism diagrams (nb = nt = n) form the algebra
TL_n with basis the Catalan(n) crossingless matchings.

Point numbering: bottom 0..nb-1 left to right, then top nb..nb+nt-1 left to
right.  The circular boundary order (for planarity and the parenthesis
encoding) walks the bottom left to right, then the top right to left.

Diagram-pair composition results are memoized globally; they are independent
of the root of unity, so the cache is shared across parameter contexts.
"""
from __future__ import annotations

from functools import lru_cache

from .scalars import QuantumParams, Scalar


class TLDiagram:
    """A crossingless matching with nb bottom and nt top boundary points."""

    __slots__ = ("nb", "nt", "pairs", "_hash")

    def __init__(self, nb: int, nt: int, pairs):
        self.nb = nb
        self.nt = nt
        self.pairs = tuple(sorted(tuple(sorted(p)) for p in pairs))
        self._hash = hash((nb, nt, self.pairs))
        if 2 * len(self.pairs) != nb + nt:
            raise ValueError("not a perfect matching")

    def __eq__(self, other):
        return (self.nb, self.nt, self.pairs) == (other.nb, other.nt, other.pairs)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"TLDiagram({self.nb}->{self.nt}, '{self.parens()}')"

    def circular_order(self):
        return list(range(self.nb)) + list(range(self.nb + self.nt - 1, self.nb - 1, -1))

    def is_planar(self) -> bool:
        """Standard nesting criterion in the circular boundary order."""
        pos = {p: i for i, p in enumerate(self.circular_order())}
        spans = sorted((min(pos[a], pos[b]), max(pos[a], pos[b])) for a, b in self.pairs)
        stack = []
        for lo, hi in spans:
            while stack and stack[-1] < lo:
                stack.pop()
            if stack and stack[-1] < hi:
                return False
            stack.append(hi)
        return True

    def parens(self) -> str:
        """Balanced-parenthesis encoding along the circular boundary order."""
        order = self.circular_order()
        pos = {p: i for i, p in enumerate(order)}
        partner = {}
        for a, b in self.pairs:
            partner[a] = b
            partner[b] = a
        return "".join("(" if pos[partner[p]] > pos[p] else ")" for p in order)

    @staticmethod
    def from_parens(nb: int, nt: int, s: str) -> "TLDiagram":
        order = list(range(nb)) + list(range(nb + nt - 1, nb - 1, -1))
        if len(s) != len(order):
            raise ValueError("parenthesis string has wrong length")
        stack, pairs = [], []
        for p, ch in zip(order, s):
            if ch == "(":
                stack.append(p)
            elif ch == ")":
                if not stack:
                    raise ValueError("unbalanced parenthesis string")
                pairs.append((stack.pop(), p))
            else:
                raise ValueError(f"bad character {ch!r} in matching string")
        if stack:
            raise ValueError("unbalanced parenthesis string")
        return TLDiagram(nb, nt, pairs)

    @staticmethod
    def identity(n: int) -> "TLDiagram":
        return TLDiagram(n, n, [(i, n + i) for i in range(n)])

    @staticmethod
    def e_gen(n: int, i: int) -> "TLDiagram":
        """Turn-back generator e_i (1-indexed, 1 <= i <= n-1)."""
        if not 1 <= i <= n - 1:
            raise ValueError(f"generator index {i} out of range for {n} strands")
        pairs = [(i - 1, i), (n + i - 1, n + i)]
        pairs += [(j, n + j) for j in range(n) if j not in (i - 1, i)]
        return TLDiagram(n, n, pairs)


def _noncrossing_matchings(points):
    """All noncrossing perfect matchings of an ordered point list."""
    if not points:
        yield ()
        return
    first, rest = points[0], points[1:]
    for idx in range(0, len(rest), 2):
        left, right = rest[:idx], rest[idx + 1:]
        for m1 in _noncrossing_matchings(left):
            for m2 in _noncrossing_matchings(right):
                yield ((first, rest[idx]),) + m1 + m2


@lru_cache(maxsize=None)
def _hom_basis(nb: int, nt: int):
    if (nb + nt) % 2:
        return ()
    order = list(range(nb)) + list(range(nb + nt - 1, nb - 1, -1))
    diags = [TLDiagram(nb, nt, m) for m in _noncrossing_matchings(order)]
    return tuple(sorted(diags, key=lambda d: d.parens()))


def tl_basis(n: int):
    """The Catalan(n) diagrams of TL_n in canonical (parenthesis-lex) order."""
    return list(_hom_basis(n, n))


_COMPOSE_CACHE: dict = {}


def _compose_diagrams(lo: TLDiagram, hi: TLDiagram):
    """Stack hi on top of lo (lo's top glued to hi's bottom).

    Returns (composed TLDiagram, number of closed loops).
    """
    key = (lo, hi)
    hit = _COMPOSE_CACHE.get(key)
    if hit is not None:
        return hit
    if lo.nt != hi.nb:
        raise ValueError("strand-count mismatch in composition")
    n_mid = lo.nt
    # Node labels: ('b', i) new bottom, ('t', j) new top, ('m', k) interface.
    adj = {}

    def link(u, v):
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)

    for a, b in lo.pairs:
        ua = ("b", a) if a < lo.nb else ("m", a - lo.nb)
        ub = ("b", b) if b < lo.nb else ("m", b - lo.nb)
        link(ua, ub)
    for a, b in hi.pairs:
        ua = ("m", a) if a < hi.nb else ("t", a - hi.nb)
        ub = ("m", b) if b < hi.nb else ("t", b - hi.nb)
        link(ua, ub)
    seen = set()
    pairs = []
    loops = 0
    # Walk open paths from boundary nodes, then count leftover interior cycles.
    for start in [("b", i) for i in range(lo.nb)] + [("t", j) for j in range(hi.nt)]:
        if start in seen:
            continue
        seen.add(start)
        prev, cur = start, adj[start][0]
        while cur[0] == "m":
            seen.add(cur)
            nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
            prev, cur = cur, nxt
        seen.add(cur)
        ea = start[1] if start[0] == "b" else lo.nb + start[1]
        eb = cur[1] if cur[0] == "b" else lo.nb + cur[1]
        if ea < eb or (ea == eb and start != cur):
            pairs.append((ea, eb))
    for k in range(n_mid):
        node = ("m", k)
        if node in seen:
            continue
        loops += 1
        prev, cur = node, adj[node][0]
        seen.add(node)
        while cur != node:
            seen.add(cur)
            nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
            prev, cur = cur, nxt
    result = (TLDiagram(lo.nb, hi.nt, pairs), loops)
    _COMPOSE_CACHE[key] = result
    return result


class TLElement:
    """Finite Scalar-linear combination of TL diagrams sharing (nb, nt)."""

    __slots__ = ("params", "nb", "nt", "terms")

    def __init__(self, params: QuantumParams, nb: int, nt: int, terms=None):
        self.params = params
        self.nb = nb
        self.nt = nt
        self.terms = {}
        if terms:
            for diag, coeff in terms.items():
                if (diag.nb, diag.nt) != (nb, nt):
                    raise ValueError("diagram shape mismatch")
                if not coeff.is_zero():
                    self.terms[diag] = coeff

    # ----- constructors -----

    @staticmethod
    def zero(params, nb, nt=None):
        return TLElement(params, nb, nb if nt is None else nt)

    @staticmethod
    def identity(params, n):
        return TLElement(params, n, n, {TLDiagram.identity(n): params.one()})

    @staticmethod
    def e(params, n, i):
        return TLElement(params, n, n, {TLDiagram.e_gen(n, i): params.one()})

    @staticmethod
    def from_diagram(params, diag, coeff=None):
        return TLElement(params, diag.nb, diag.nt,
                         {diag: coeff if coeff is not None else params.one()})

    @staticmethod
    def cups(params, k):
        """0 -> 2k morphism of k nested cups."""
        return TLElement.from_diagram(params, TLDiagram(0, 2 * k, [(i, 2 * k - 1 - i) for i in range(k)]))

    @staticmethod
    def caps(params, k):
        """2k -> 0 morphism of k nested caps."""
        return TLElement.from_diagram(params, TLDiagram(2 * k, 0, [(i, 2 * k - 1 - i) for i in range(k)]))

    # ----- linear structure -----

    def __add__(self, other):
        if (self.nb, self.nt) != (other.nb, other.nt):
            raise ValueError("shape mismatch")
        terms = dict(self.terms)
        for diag, coeff in other.terms.items():
            acc = terms.get(diag)
            terms[diag] = coeff if acc is None else acc + coeff
        return TLElement(self.params, self.nb, self.nt, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TLElement(self.params, self.nb, self.nt,
                         {diag: -coeff for diag, coeff in self.terms.items()})

    def scale(self, scalar: Scalar):
        return TLElement(self.params, self.nb, self.nt,
                         {diag: scalar * coeff for diag, coeff in self.terms.items()})

    # ----- category structure -----

    def then(self, other: "TLElement") -> "TLElement":
        """self followed upward by other: other stacked on top of self."""
        if self.nt != other.nb:
            raise ValueError(f"strand-count mismatch: {self.nt} vs {other.nb}")
        p = self.params
        d = p.loop_d()
        dpow = {0: p.one()}
        terms = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                diag, loops = _compose_diagrams(d1, d2)
                while len(dpow) <= loops:
                    dpow[len(dpow)] = dpow[len(dpow) - 1] * d
                coeff = c1 * c2 * dpow[loops]
                acc = terms.get(diag)
                terms[diag] = coeff if acc is None else acc + coeff
        return TLElement(p, self.nb, other.nt, terms)

    def __mul__(self, other):
        """Algebra product x * y = y stacked on top of x (apply x first)."""
        return self.then(other)

    def tensor(self, other: "TLElement") -> "TLElement":
        nb, nt = self.nb + other.nb, self.nt + other.nt
        terms = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                def sh(p):
                    if p < d2.nb:
                        return self.nb + p
                    return self.nb + other.nb + self.nt + (p - d2.nb)

                def sl(p):
                    return p if p < self.nb else p + other.nb

                pairs = [(sl(a), sl(b)) for a, b in d1.pairs]
                pairs += [(sh(a), sh(b)) for a, b in d2.pairs]
                diag = TLDiagram(nb, nt, pairs)
                coeff = c1 * c2
                acc = terms.get(diag)
                terms[diag] = coeff if acc is None else acc + coeff
        return TLElement(self.params, nb, nt, terms)

    def flip(self) -> "TLElement":
        """Vertical mirror: swap bottom and top (the adjoint diagram)."""
        terms = {}
        for diag, coeff in self.terms.items():
            def mp(p):
                return p + diag.nt if p < diag.nb else p - diag.nb
            fd = TLDiagram(diag.nt, diag.nb, [(mp(a), mp(b)) for a, b in diag.pairs])
            acc = terms.get(fd)
            terms[fd] = coeff if acc is None else acc + coeff
        return TLElement(self.params, self.nt, self.nb, terms)

    def rotate180(self) -> "TLElement":
        """Half-turn rotation of every diagram."""
        terms = {}
        for diag, coeff in self.terms.items():
            def mp(p):
                if p < diag.nb:
                    return diag.nt + (diag.nb - 1 - p)
                return (diag.nb + diag.nt - 1 - p)
            rd = TLDiagram(diag.nt, diag.nb, [(mp(a), mp(b)) for a, b in diag.pairs])

            acc = terms.get(rd)
            terms[rd] = coeff if acc is None else acc + coeff
        return TLElement(self.params, self.nt, self.nb, terms)

    def markov_trace(self) -> Scalar:
        """Close top point i to bottom point i; each closed loop contributes d."""
        if self.nb != self.nt:
            raise ValueError("Markov trace requires an endomorphism")
        p = self.params
        d = p.loop_d()
        total = p.zero()
        for diag, coeff in self.terms.items():
            parent = list(range(self.nb))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            loops = 0
            for a, b in diag.pairs:
                ra = find(a - self.nb if a >= self.nb else a)
                rb = find(b - self.nb if b >= self.nb else b)
                if ra == rb:
                    loops += 1
                else:
                    parent[ra] = rb
            total = total + coeff * d ** loops
        return total

    # ----- queries -----

    def coefficient(self, diag: TLDiagram) -> Scalar:
        return self.terms.get(diag, self.params.zero())

    def identity_coefficient(self) -> Scalar:
        return self.coefficient(TLDiagram.identity(self.nb))

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, TLElement):
            return NotImplemented
        return (self.nb, self.nt) == (other.nb, other.nt) and self.terms == other.terms

    def __repr__(self):
        return f"TLElement({self.nb}->{self.nt}, {len(self.terms)} terms)"

    def to_json(self):
        return {"n": self.nb, "n_top": self.nt,
                "terms": [{"matching": diag.parens(), "coeff": coeff.to_json()}
                          for diag, coeff in sorted(self.terms.items(), key=lambda kv: kv[0].parens())]}

    @staticmethod
    def from_json(params, obj):
        nb = int(obj["n"])
        nt = int(obj.get("n_top", nb))
        terms = {}
        for t in obj["terms"]:
            diag = TLDiagram.from_parens(nb, nt, t["matching"])
            terms[diag] = Scalar.from_json(params, t["coeff"])
        return TLElement(params, nb, nt, terms)


# ----- named operations -----


_JW_CACHE: dict = {}


def jones_wenzl(params: QuantumParams, k: int) -> TLElement:
    """The Jones-Wenzl projector P_k via the Wenzl recursion.

    P_n = P_{n-1} - (Delta_{n-2}/Delta_{n-1}) P_{n-1} e_{n-1} P_{n-1} with
    Delta_k = (-1)^k [k+1]; valid for k <= r-2 (the recursion divides by
    [n], which vanishes first at n = r).
    """
    if k < 0:
        raise ValueError("negative strand count")
    if k > params.r - 2:
        raise ValueError(f"P_{k} undefined at r={params.r}: labels stop at r-2={params.r - 2}")
    key = (params.r, params.s, k)
    hit = _JW_CACHE.get(key)
    if hit is not None:
        return hit
    _JW_CACHE.setdefault((params.r, params.s, 0), TLElement.identity(params, 0))
    for n in range(1, k + 1):
        key_n = (params.r, params.s, n)
        if key_n in _JW_CACHE:
            continue
        prev = _JW_CACHE[(params.r, params.s, n - 1)]
        wide = prev.tensor(TLElement.identity(params, 1))
        if n == 1:
            proj = wide
        else:
            # Delta_{n-2}/Delta_{n-1} with Delta_k = (-1)^k [k+1] (loop d is negative)
            ratio = params.d_k(n - 2) / params.d_k(n - 1)
            proj = wide - (wide * TLElement.e(params, n, n - 1) * wide).scale(ratio)
        _JW_CACHE[key_n] = proj
    return _JW_CACHE[key]


def resolve_braid(params: QuantumParams, word, n: int) -> TLElement:
    """Image of a braid word in TL_n via the Kauffman relation.

    Generators are signed integers: +i is sigma_i (1-indexed), -i its inverse.
    sigma_i -> A * id + A^{-1} * e_i.
    """
    out = TLElement.identity(params, n)
    for g in word:
        i = abs(g)
        if not 1 <= i <= n - 1:
            raise ValueError(f"generator {g} out of range for {n} strands")
        a = params.a_pow(1 if g > 0 else -1)
        ainv = params.a_pow(-1 if g > 0 else 1)
        gen = TLElement.identity(params, n).scale(a) + TLElement.e(params, n, i).scale(ainv)
        out = out * gen
    return out


def crossing_element(params: QuantumParams, n: int, i: int, positive: bool = True) -> TLElement:
    return resolve_braid(params, [i if positive else -i], n)


def braid_absorption_check(params: QuantumParams, word, k: int) -> Scalar:
    """Return the scalar lambda with braid * P_k = lambda * P_k.

    Raises if the product is not proportional to P_k or if lambda differs
    from A^{c(word)} (signed crossing count) -- either would be a bug.
    """
    pk = jones_wenzl(params, k)
    prod = resolve_braid(params, word, k) * pk
    writhe = sum(1 if g > 0 else -1 for g in word)
    lam = params.a_pow(writhe)
    if not (prod - pk.scale(lam)).is_zero():
        raise AssertionError("braid absorption failed: product is not A^c(b) * P_k")
    return lam


def encircle_element(params: QuantumParams, n: int, label: int = 1) -> TLElement:
    """Endomorphism of n strands given by a closed label-`label` loop around them.

    Built as: nested cups on the right, pass the inner new cable leftward over
    the n strands, back rightward underneath, then nested caps.  With label 0
    this is d^0 = the identity times d_0... (a vacuous loop); label k cables
    the loop by k and inserts P_k.
    """
    k = label
    if k == 0:
        return TLElement.identity(params, n)
    ident_n = TLElement.identity(params, n)
    m = n + 2 * k
    cur = ident_n.tensor(TLElement.cups(params, k))
    for j in range(k):
        # strand currently at position n + j (0-indexed) must travel to position j
        src = n + j
        for pos in range(src, j, -1):
            cur = cur * crossing_element(params, m, pos, positive=True)
    # insert P_k on the loop cable now sitting at positions 0..k-1
    cur = cur * jones_wenzl(params, k).tensor(TLElement.identity(params, m - k))
    # return pass uses the same crossing type: the loop goes over on one side
    # of the cable and under on the other, which is two like-signed crossings
    for j in range(k - 1, -1, -1):
        src = j
        dst = n + j
        for pos in range(src + 1, dst + 1):
            cur = cur * crossing_element(params, m, pos, positive=True)
    cur = cur * ident_n.tensor(TLElement.caps(params, k))
    return cur


def sector_projectors(params: QuantumParams, n: int):
    """Central idempotents z_m of TL_n, m the through-label, via Lagrange
    interpolation in the encircling-loop element.

    Returns the list [z_m] for m = n mod 2, ..., min(n, r-1) (step 2).
    Labels m > r-1 fold back onto lower ones (the loop eigenvalues satisfy
    lambda_m = lambda_{2r-2-m}), and when n >= r-1 the top entry z_{r-1} is
    the projector onto the trace-zero part of the algebra.
    """
    if n == 0:
        return [TLElement.identity(params, 0)]
    # Group generic through-labels m = n%2, n%2+2, ..., n into eigenvalue
    # classes: lambda_m depends only on +/-(m+1) mod 4r (via A^{2(m+1)}), so
    # fold m+1 into c in 0..2r and group.  The first classes are the honest
    # sectors m <= r-2; later ones are trace-zero (negligible) sectors.
    twor = 2 * params.r
    classes = {}  # fold class -> list of generic labels
    for m in range(n % 2, n + 1, 2):
        t = (m + 1) % twor
        c = min(t, twor - t)
        classes.setdefault(c, []).append(m)
    labels = sorted(classes, key=lambda c: classes[c][0])
    reps = {c: classes[c][0] for c in classes}
    E = encircle_element(params, n, 1)
    lams = {c: -(params.a_pow(2 * c) + params.a_pow(-2 * c)) for c in labels}
    for i, a in enumerate(labels):
        for b in labels[i + 1:]:
            if lams[a] == lams[b]:
                raise ValueError(f"loop eigenvalues collide for classes {a},{b} at r={params.r}, s={params.s}")
    ident = TLElement.identity(params, n)

    def apply_poly(coeffs):
        """Evaluate a Scalar-coefficient polynomial at E (Horner)."""
        acc = TLElement.zero(params, n, n)
        for c in reversed(coeffs):
            acc = acc * E + ident.scale(c)
        return acc

    def product_elt(exps):
        acc = ident
        for m in labels:
            factor = E - ident.scale(lams[m])
            for _ in range(exps[m]):
                acc = acc * factor
        return acc

    # Folded classes can carry a nilpotent part of E; the Jordan depth is at
    # most the number of generic labels in the class.  Start there and refine
    # the minimal-polynomial multiplicities downward.
    exps = {c: len(classes[c]) for c in labels}
    if not product_elt(exps).is_zero():
        raise AssertionError("encircling element minimal polynomial not found")
    for c in labels:
        while exps[c] > 0:
            trial = dict(exps)
            trial[c] -= 1
            if product_elt(trial).is_zero():
                exps = trial
            else:
                break

    # Hermite interpolation: z_m = q_m(x) * g_m(x) evaluated at E, where
    # q_m = prod_{j != m} (x - lambda_j)^{e_j} and g_m is the power-series
    # inverse of q_m around lambda_m, truncated to order e_m.
    out = []
    one, zero = params.one(), params.zero()
    for m in labels:
        if exps[m] == 0:
            out.append(TLElement.zero(params, n, n))
            continue
        e_m = exps[m]
        # q_m expanded in y = x - lambda_m, truncated to degree e_m - 1
        q = [one]
        for j in labels:
            if j == m:
                continue
            root = lams[m] - lams[j]  # (x - lambda_j) = y + (lambda_m - lambda_j)
            for _ in range(exps[j]):
                q = [(q[i] if i < len(q) else zero) * root +
                     (q[i - 1] if 0 < i <= len(q) else zero)
                     for i in range(min(len(q) + 1, e_m))]
        # g = 1/q as a truncated power series in y
        g = [q[0].inverse()]
        for i in range(1, e_m):
            acc = zero
            for t in range(1, i + 1):
                if t < len(q):
                    acc = acc + q[t] * g[i - t]
            g.append(-(acc) * g[0])
        # h(y) = g(y) * prod_{j != m} (y + lambda_m - lambda_j)^{e_j}, full degree
        h = list(g)
        for j in labels:
            if j == m:
                continue
            root = lams[m] - lams[j]
            for _ in range(exps[j]):
                h = [(h[i] if i < len(h) else zero) * root +
                     (h[i - 1] if 0 < i <= len(h) else zero)
                     for i in range(len(h) + 1)]
        # shift back: coefficients in x of h(x - lambda_m)
        coeffs = [zero] * len(h)
        shift = [one]  # (x - lambda_m)^t coefficients
        for t, ht in enumerate(h):
            for i, sc in enumerate(shift):
                coeffs[i] = coeffs[i] + ht * sc
            # multiply shift by (x - lambda_m)
            shift = [(-lams[m]) * shift[0]] + \
                    [shift[i - 1] - lams[m] * shift[i] if i < len(shift) else shift[i - 1]
                     for i in range(1, len(shift) + 1)]
        out.append(apply_poly(coeffs))
    return out


def encircle_eigenvalue_scalar(params: QuantumParams, k: int) -> Scalar:
    """Eigenvalue of an unlabeled loop encircling a k-labeled strand:
    -(A^{2(k+1)} + A^{-2(k+1)})."""
    return -(params.a_pow(2 * (k + 1)) + params.a_pow(-2 * (k + 1)))


def markov_trace(x: TLElement) -> Scalar:
    return x.markov_trace()
