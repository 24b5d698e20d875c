import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conerank.cones import (
    PLUS_INFINITY,
    AttributeVector,
    ConeShape,
    PolyCone,
    classify_cone,
    cone_contains,
    cone_coordinates,
    dominates,
)


def vec(*components, label=None):
    return AttributeVector(tuple(components), label)


class TestAttributeVector:
    def test_rejects_single_component(self):
        with pytest.raises(ValueError):
            vec(1.0)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            vec(1.0, math.nan)
        with pytest.raises(ValueError):
            vec(1.0, math.inf)

    def test_coerces_to_floats(self):
        assert vec(1, 2).components == (1.0, 2.0)


class TestPolyCone:
    def test_rejects_k_one(self):
        with pytest.raises(ValueError):
            PolyCone(1, 0.0)

    def test_rejects_rho_below_bound(self):
        with pytest.raises(ValueError):
            PolyCone(2, -0.5000001)
        with pytest.raises(ValueError):
            PolyCone(3, -0.34)

    def test_bound_equality_allowed(self):
        assert PolyCone(2, -0.5).rho == -0.5
        assert PolyCone(4, -0.25).is_diagonal_ray

    def test_snap_to_bound_is_opt_in(self):
        near = -1.0 / 3.0 + 1e-13
        assert PolyCone(3, near).rho == near
        assert PolyCone(3, near, snap_to_bound=True).rho == -1.0 / 3.0
        # an interior decimal like -0.3333 stays interior either way
        assert PolyCone(3, -0.3333, snap_to_bound=True).rho == -0.3333

    def test_half_space_is_symbolic(self):
        cone = PolyCone(4, PLUS_INFINITY)
        assert cone.is_half_space
        assert not cone.is_diagonal_ray


class TestConeCoordinates:
    def test_basic_substitution(self):
        r = cone_coordinates(vec(1, 2), PolyCone(2, 1.0))
        assert r.components == (4.0, 5.0)

    def test_equal_components_vanish_at_ray(self):
        for t in (-3.0, 0.0, 1.0, 7.5):
            r = cone_coordinates(vec(t, t, t), PolyCone(3, -1.0 / 3.0))
            assert all(abs(c) < 1e-12 for c in r.components)

    def test_rho_zero_is_identity(self):
        assert cone_coordinates(vec(1, 2), PolyCone(2, 0.0)).components == (1.0, 2.0)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            cone_coordinates(vec(1, 2, 3), PolyCone(2, 0.0))

    def test_half_space_rejected(self):
        with pytest.raises(ValueError):
            cone_coordinates(vec(1, 2), PolyCone(2, PLUS_INFINITY))


class TestConeContains:
    def test_diagonal_at_ray(self):
        assert cone_contains(vec(1, 1), PolyCone(2, -0.5))

    def test_off_diagonal_at_ray(self):
        assert not cone_contains(vec(1, 0), PolyCone(2, -0.5))

    def test_negative_diagonal_excluded_at_ray(self):
        assert not cone_contains(vec(-1, -1), PolyCone(2, -0.5))

    def test_half_space(self):
        assert not cone_contains(vec(-3, 1), PolyCone(2, PLUS_INFINITY))
        assert cone_contains(vec(-1, 1), PolyCone(2, PLUS_INFINITY))

    def test_orthant(self):
        assert cone_contains(vec(0, 2), PolyCone(2, 0.0))
        assert not cone_contains(vec(-1e-300, 2), PolyCone(2, 0.0))

    def test_tolerance_is_configurable(self):
        barely_out = vec(-1e-13, 1)
        assert not cone_contains(barely_out, PolyCone(2, 0.0))
        assert cone_contains(barely_out, PolyCone(2, 0.0), tol=1e-12)


class TestDominates:
    def test_componentwise_improvement_orthant(self):
        assert dominates(vec(2, 1), vec(1, 1), PolyCone(2, 0.0))

    def test_same_pair_fails_in_narrow_cone(self):
        assert not dominates(vec(2, 1), vec(1, 1), PolyCone(2, -0.5))

    def test_identical_vectors_never_dominate(self):
        for rho in (-0.5, 0.0, 1.0):
            assert not dominates(vec(1, 1), vec(1, 1), PolyCone(2, rho))
        assert not dominates(vec(1, 1), vec(1, 1), PolyCone(2, PLUS_INFINITY))

    def test_boundary_difference_counts(self):
        # difference (1, 1) sits on the boundary of the rho=-1/2 cone
        assert dominates(vec(2, 2), vec(1, 1), PolyCone(2, -0.5))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            dominates(vec(1, 2, 3), vec(1, 2), PolyCone(2, 0.0))


class TestClassifyCone:
    @pytest.mark.parametrize(
        "k,rho,shape",
        [
            (2, 0.0, ConeShape.ORTHANT),
            (3, PLUS_INFINITY, ConeShape.HALF_SPACE),
            (3, -1.0 / 3.0, ConeShape.DIAGONAL_RAY),
            (2, 0.25, ConeShape.SUPERSET_OF_ORTHANT),
            (2, 2.0, ConeShape.SUPERSET_OF_ORTHANT),
            (3, -0.25, ConeShape.SUBSET_OF_ORTHANT),
            (2, -0.5, ConeShape.DIAGONAL_RAY),
        ],
    )
    def test_shapes(self, k, rho, shape):
        assert classify_cone(PolyCone(k, rho)) is shape


# --- property tests --------------------------------------------------------
#
# Components are drawn from integers and rho from dyadic rationals so all
# float arithmetic below is exact and the algebraic identities hold bitwise.

_DYADIC_RHO = st.sampled_from([-0.5, -0.25, -0.125, 0.0, 0.25, 0.5, 1.0, 2.0])
_INT_COMPONENTS = st.integers(min_value=-1000, max_value=1000)


def _int_vec(k):
    return st.tuples(*([_INT_COMPONENTS] * k))


@given(
    k=st.integers(2, 5),
    data=st.data(),
    alpha=st.integers(-8, 8),
    beta=st.integers(-8, 8),
)
@settings(max_examples=200, deadline=None)
def test_transform_linearity(k, data, alpha, beta):
    rho = data.draw(_DYADIC_RHO)
    if rho < -1.0 / k:
        rho = 0.25
    cone = PolyCone(k, rho)
    y = data.draw(_int_vec(k))
    z = data.draw(_int_vec(k))
    combo = tuple(alpha * a + beta * b for a, b in zip(y, z))
    lhs = cone_coordinates(AttributeVector(combo), cone).components
    ry = cone_coordinates(AttributeVector(y), cone).components
    rz = cone_coordinates(AttributeVector(z), cone).components
    rhs = tuple(alpha * a + beta * b for a, b in zip(ry, rz))
    scale = max(1.0, max(abs(v) for v in lhs + rhs))
    assert all(abs(a - b) <= 1e-12 * scale for a, b in zip(lhs, rhs))


@given(k=st.integers(2, 5), data=st.data())
@settings(max_examples=300, deadline=None)
def test_dominance_matches_coordinatewise_form(k, data):
    rho = data.draw(_DYADIC_RHO)
    if rho < -1.0 / k:
        rho = 0.0
    cone = PolyCone(k, rho)
    y = AttributeVector(data.draw(_int_vec(k)))
    ybar = AttributeVector(data.draw(_int_vec(k)))
    ry = cone_coordinates(y, cone).components
    rybar = cone_coordinates(ybar, cone).components
    coordinatewise = (
        y.components != ybar.components
        and all(a >= b for a, b in zip(ry, rybar))
    )
    if cone.is_diagonal_ray:
        coordinatewise = coordinatewise and sum(y.components) >= sum(ybar.components)
    assert dominates(y, ybar, cone) == coordinatewise


@given(k=st.integers(2, 5), data=st.data())
@settings(max_examples=300, deadline=None)
def test_cone_nesting(k, data):
    rhos = sorted(data.draw(st.tuples(_DYADIC_RHO, _DYADIC_RHO)))
    rho1, rho2 = (max(r, -1.0 / k) for r in rhos)
    v = AttributeVector(data.draw(_int_vec(k)))
    if sum(v.components) < 0:
        return
    if cone_contains(v, PolyCone(k, rho1)):
        assert cone_contains(v, PolyCone(k, rho2))


@given(k=st.integers(2, 5), t=st.integers(0, 1000), bump=st.integers(1, 1000))
@settings(max_examples=200, deadline=None)
def test_ray_membership_requires_equal_nonnegative(k, t, bump):
    cone = PolyCone(k, -1.0 / k)
    tol = 1e-12
    assert cone_contains(AttributeVector((float(t),) * k), cone, tol=tol)
    assert not cone_contains(AttributeVector((float(-t - 1),) * k), cone, tol=tol)
    uneven = (float(t + bump),) + (float(t),) * (k - 1)
    assert not cone_contains(AttributeVector(uneven), cone, tol=tol)


@given(k=st.integers(2, 5), data=st.data())
@settings(max_examples=200, deadline=None)
def test_rho_zero_is_componentwise_nonnegativity(k, data):
    v = AttributeVector(data.draw(_int_vec(k)))
    assert cone_contains(v, PolyCone(k, 0.0)) == all(
        c >= 0 for c in v.components
    )
