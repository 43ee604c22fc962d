import itertools
import math

import pytest

from skeinrep import linalg
from skeinrep import recoupling as rc
from skeinrep.scalars import make_params


RS = [3, 4, 5, 6]


@pytest.mark.parametrize("r", RS)
def test_admissible(r):
    p = make_params(r)
    assert rc.admissible(p, 0, 0, 0)
    if r >= 3:
        assert not rc.admissible(p, 1, 1, 1)  # parity
    if r == 5:
        assert not rc.admissible(p, 3, 3, 2)  # 8 > 2r-4 = 6
    for a, b, c in itertools.product(range(r - 1), repeat=3):
        ok = rc.admissible(p, a, b, c)
        manual = ((a + b + c) % 2 == 0 and a <= b + c and b <= c + a
                  and c <= a + b and a + b + c <= 2 * r - 4)
        assert ok == manual


@pytest.mark.parametrize("r", RS)
def test_loop_values(r):
    p = make_params(r)
    d = p.loop_d()
    assert rc.loop_value(p, 0).is_one()
    assert rc.loop_value(p, 1) == d
    prev2, prev1 = None, None
    for k in range(r - 1):
        dk = rc.loop_value(p, k)
        assert dk == rc.loop_value_oracle(p, k)
        if k >= 2:
            assert dk == d * prev1 - prev2  # Chebyshev recursion
        prev2, prev1 = prev1, dk
    if r == 5:
        assert abs(rc.loop_value(p, 2).embed() - 1.618033988749895) < 1e-12


@pytest.mark.parametrize("r", [3, 4, 5])
def test_theta_vs_oracle(r):
    p = make_params(r)
    for a, b, c in itertools.product(range(r - 1), repeat=3):
        if rc.admissible(p, a, b, c):
            val = rc.theta(p, a, b, c)
            assert val == rc.theta_oracle(p, a, b, c)
            assert not val.is_zero()
        else:
            assert rc.theta(p, a, b, c).is_zero()


@pytest.mark.parametrize("r", RS)
def test_theta_special_values(r):
    p = make_params(r)
    assert rc.theta(p, 0, 0, 0).is_one()
    for k in range(r - 1):
        assert rc.theta(p, 0, k, k) == rc.loop_value(p, k)
    if r >= 4:
        assert rc.theta(p, 1, 1, 2) == rc.loop_value(p, 2)


@pytest.mark.parametrize("r", [3, 4, 5])
def test_tet_vs_oracle(r):
    p = make_params(r)
    labels = range(r - 1)
    for tup in itertools.product(labels, repeat=6):
        a, b, c, d, e, f = tup
        triples = [(a, b, e), (c, d, e), (a, c, f), (b, d, f)]
        if all(rc.admissible(p, *t) for t in triples):
            assert rc.tet(p, *tup) == rc.tet_oracle(p, *tup), tup
        else:
            assert rc.tet(p, *tup).is_zero()


@pytest.mark.parametrize("r", RS)
def test_tet_zero_label_reduces_to_theta(r):
    p = make_params(r)
    for b, d, f in itertools.product(range(r - 1), repeat=3):
        if rc.admissible(p, b, d, f):
            # a=0 forces e=b, c=f; the tetrahedron collapses to a theta
            assert rc.tet(p, 0, b, f, d, b, f) == rc.theta(p, b, d, f)
    assert rc.tet(p, 0, 0, 0, 0, 0, 0).is_one()


@pytest.mark.parametrize("r", RS)
def test_f_matrix_inverse_pairs(r):
    p = make_params(r)
    labels = range(r - 1)
    for a, b, c, d in itertools.product(labels, repeat=4):
        es, fs = rc.f_matrix_channels(p, a, b, c, d)
        if not es:
            continue
        assert len(es) == len(fs)
        F1 = rc.f_matrix(p, a, b, c, d)
        F2 = rc.f_matrix(p, b, c, d, a)
        assert linalg.is_identity(p, linalg.mat_mul(F1, F2)), (a, b, c, d)


def test_f_matrix_unitarity_numeric():
    p = make_params(5)
    a = b = c = d = 1
    es, fs = rc.f_matrix_channels(p, a, b, c, d)
    F = rc.f_matrix(p, a, b, c, d)

    def norm(e, t1, t2):
        return abs((rc.theta(p, *t1) * rc.theta(p, *t2) / rc.loop_value(p, e)).embed())

    n = len(es)
    U = [[F[i][j].embed() * math.sqrt(norm(fs[j], (b, c, fs[j]), (a, d, fs[j]))
                                      / norm(es[i], (a, b, es[i]), (c, d, es[i])))
          for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            dot = sum(U[i][k] * U[j][k].conjugate() for k in range(n))
            assert abs(dot - (1 if i == j else 0)) < 1e-10


@pytest.mark.parametrize("r", RS)
def test_twist_coefficients(r):
    p = make_params(r)
    assert rc.twist_coefficient(p, 0).is_one()
    for k in range(r - 1):
        mu = rc.twist_coefficient(p, k)
        assert mu == rc.twist_coefficient_oracle(p, k)
        assert abs(abs(mu.embed()) - 1) < 1e-12
    assert rc.twist_coefficient(p, 1) == -p.a_pow(3)


@pytest.mark.parametrize("r", RS)
def test_encircle_eigenvalues(r):
    p = make_params(r)
    assert rc.encircle_eigenvalue(p, 0) == p.loop_d()
    vals = []
    for k in range(r - 1):
        lam = rc.encircle_eigenvalue(p, k)
        assert lam == rc.encircle_eigenvalue_oracle(p, k)
        vals.append(lam)
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            assert vals[i] != vals[j], f"eigenvalues for {i},{j} collide at r={r}"


@pytest.mark.parametrize("r", RS)
def test_hopf_pairing(r):
    p = make_params(r)
    for j in range(r - 1):
        for k in range(r - 1):
            v = rc.hopf_pairing(p, j, k)
            assert v == rc.hopf_pairing_oracle(p, j, k)
            assert v == rc.hopf_pairing(p, k, j)
    assert rc.hopf_pairing(p, 0, 0).is_one()
    assert rc.hopf_pairing(p, 0, k) == rc.loop_value(p, k)


def test_dump_tables():
    p = make_params(4)
    tables = rc.dump_tables(p)
    assert tables["r"] == 4
    assert len(tables["d"]) == 3
    assert "0,1,1" in tables["theta"]
