"""Spine bases, dimensions, and solid-torus expansions."""
import pytest

from skeinrep import tqft
from skeinrep.recoupling import admissible
from skeinrep.scalars import make_params
from skeinrep.skein import DomainError
from skeinrep.tqft import (CurveOnSpine, Spine, SpineFormatError, basis, dim,
                           dumbbell_spine, expand_solid_torus,
                           four_punctured_sphere_spine, handlebody_vector,
                           theta_spine, torus_spine)


@pytest.fixture(params=[3, 4, 5, 6])
def params(request):
    return make_params(request.param)


def test_spine_validation():
    with pytest.raises(SpineFormatError):
        Spine(edges=["a"], vertices=[["a", "b"]])
    with pytest.raises(SpineFormatError):
        Spine(edges=["a"], vertices=[["a", "a", "a"]])  # edge with 3 ends
    with pytest.raises(SpineFormatError):
        Spine(edges=[], vertices=[["a", "b", "c"]])  # unknown names


def test_spine_json_roundtrip():
    sp = four_punctured_sphere_spine([1, 1, 2, 0])
    assert Spine.from_json(sp.to_json()).to_json() == sp.to_json()


def test_torus_dimension(params):
    bas = basis(params, torus_spine())
    assert len(bas) == params.r - 1
    assert [b["a"] for b in bas] == list(range(params.r - 1))


def test_theta_spine_r3():
    bas = basis(make_params(3), theta_spine())
    tuples = {tuple(b[e] for e in "xyz") for b in bas}
    assert tuples == {(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)}


def test_genus2_dimension_matches_brute_force(params):
    r = params.r
    got = dim(params, theta_spine())
    brute = sum(1 for x in range(r - 1) for y in range(r - 1) for z in range(r - 1)
                if admissible(params, x, y, z))
    assert got == brute


def test_four_punctured_sphere_channels(params):
    for labels in ([1, 1, 1, 1], [1, 2, 1, 0], [2, 2, 2, 2]):
        if max(labels) > params.r - 2:
            continue
        dh = dim(params, four_punctured_sphere_spine(labels, "h"))
        dv = dim(params, four_punctured_sphere_spine(labels, "v"))
        assert dh == dv  # the change-of-channel matrix is square


def test_four_punctured_sphere_example():
    bas = basis(make_params(4), four_punctured_sphere_spine([1, 1, 1, 1]))
    assert [b["m"] for b in bas] == [0, 2]


def test_handlebody_vector(params):
    for spine in (torus_spine(), theta_spine(), dumbbell_spine()):
        v = handlebody_vector(params, spine)
        nz = [i for i, x in enumerate(v) if not x.is_zero()]
        assert nz == [0]
        assert v[0].is_one()
    with pytest.raises(SpineFormatError):
        handlebody_vector(params, four_punctured_sphere_spine([0, 0, 0, 0]))


def test_meridian_expansion(params):
    v = expand_solid_torus(params, 1, 0)
    assert v[0] == params.loop_d()
    assert all(x.is_zero() for x in v[1:])


def test_core_expansion(params):
    v = expand_solid_torus(params, 0, 1)
    assert v[1].is_one()
    assert all(x.is_zero() for i, x in enumerate(v) if i != 1)


def test_expansion_triangular(params):
    r = params.r
    for (p, q) in [(1, 1), (2, 1), (-1, 1), (1, 2), (-1, 2), (1, 3), (2, 3)]:
        v = expand_solid_torus(params, p, q)
        for k, x in enumerate(v):
            if k > q or (k - q) % 2:
                assert x.is_zero(), (p, q, k)
        if q <= r - 2:
            assert not v[q].is_zero(), (p, q)


def test_non_coprime_rejected(params):
    with pytest.raises(DomainError):
        expand_solid_torus(params, 2, 2)


def test_curve_weights_realizability():
    sp = theta_spine()
    CurveOnSpine({"x": 1, "y": 1, "z": 0}).check_realizable(sp)
    with pytest.raises(SpineFormatError):
        CurveOnSpine({"x": 1, "y": 0, "z": 0}).check_realizable(sp)
    with pytest.raises(SpineFormatError):
        CurveOnSpine({"x": 4, "y": 1, "z": 1}).check_realizable(sp)
