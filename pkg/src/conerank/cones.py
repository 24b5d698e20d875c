"""Polyhedral cone family, cone coordinates, membership, and dominance.

The cone family is parameterized by a single real ``rho``.  For dimension
``k`` and ``rho >= -1/k`` the cone is::

    { v in R^k : v_l + rho * sum(v) >= 0  for every l }

Special members: ``rho = 0`` is the nonnegative orthant, ``rho -> +inf``
degenerates to the half-space ``sum(v) >= 0`` (represented symbolically by
:data:`PLUS_INFINITY`), and ``rho = -1/k`` is the nonnegative diagonal ray.
"""

from __future__ import annotations

import math
from dataclasses import InitVar, dataclass
from enum import Enum

__all__ = [
    "PLUS_INFINITY",
    "AttributeVector",
    "PolyCone",
    "ConeCoordinates",
    "ConeShape",
    "cone_coordinates",
    "cone_contains",
    "dominates",
    "classify_cone",
]

_BOUND_SNAP_SLACK = 1e-12


class _PlusInfinity:
    """Symbolic marker for the half-space limit of the cone family.

    Kept symbolic (not ``float('inf')``) so the half-space case never mixes
    infinities into arithmetic.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "PLUS_INFINITY"


PLUS_INFINITY = _PlusInfinity()


@dataclass(frozen=True)
class AttributeVector:
    """A point in attribute space with an optional label.

    Components must be finite and there must be at least two of them;
    single-attribute problems reduce to plain sorting and are rejected.
    """

    components: tuple[float, ...]
    label: str | None = None

    def __post_init__(self):
        comps = tuple(float(c) for c in self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) < 2:
            raise ValueError("attribute vectors need at least 2 components")
        if not all(math.isfinite(c) for c in comps):
            raise ValueError(f"non-finite component in {comps!r}")

    def __len__(self):
        return len(self.components)

    def relabel(self, label: str) -> "AttributeVector":
        return AttributeVector(self.components, label)


@dataclass(frozen=True)
class PolyCone:
    """One member of the cone family: dimension ``k`` and parameter ``rho``.

    ``rho`` must be ``>= -1/k`` (equality allowed) or :data:`PLUS_INFINITY`.
    With ``snap_to_bound=True`` a ``rho`` within 1e-12 of ``-1/k`` is snapped
    to the exact bound; by default values are taken literally, so a decimal
    like ``-0.3333`` with ``k=3`` stays an interior parameter.
    """

    k: int
    rho: float | _PlusInfinity
    snap_to_bound: InitVar[bool] = False

    def __post_init__(self, snap_to_bound):
        if self.k < 2:
            raise ValueError("cone dimension k must be >= 2")
        if self.rho is PLUS_INFINITY:
            return
        rho = float(self.rho)
        if not math.isfinite(rho):
            raise ValueError("rho must be finite or PLUS_INFINITY")
        bound = -1.0 / self.k
        if snap_to_bound and abs(rho - bound) <= _BOUND_SNAP_SLACK:
            rho = bound
        if rho < bound:
            raise ValueError(f"rho={rho} below the lower bound -1/k={bound}")
        object.__setattr__(self, "rho", rho)

    @property
    def is_half_space(self) -> bool:
        return self.rho is PLUS_INFINITY

    @property
    def is_diagonal_ray(self) -> bool:
        return not self.is_half_space and self.rho == -1.0 / self.k


@dataclass(frozen=True)
class ConeCoordinates:
    """An attribute vector expressed in the cone's slack coordinates."""

    components: tuple[float, ...]

    def __len__(self):
        return len(self.components)


class ConeShape(Enum):
    ORTHANT = "orthant"
    HALF_SPACE = "half_space"
    DIAGONAL_RAY = "diagonal_ray"
    SUPERSET_OF_ORTHANT = "superset_of_orthant"
    SUBSET_OF_ORTHANT = "subset_of_orthant"


def _check_dim(v: AttributeVector, cone: PolyCone):
    if len(v) != cone.k:
        raise ValueError(f"vector has {len(v)} components, cone expects {cone.k}")


def cone_coordinates(y: AttributeVector, cone: PolyCone) -> ConeCoordinates:
    """Map ``y`` to the coordinates in which the cone is the orthant.

    Component ``l`` of the result is ``y_l + rho * sum(y)``.  The map is
    linear in ``y``.  Undefined for the half-space member; classify against
    the sum directly instead.
    """
    _check_dim(y, cone)
    if cone.is_half_space:
        raise ValueError("cone coordinates are undefined for the half-space cone")
    total = math.fsum(y.components)
    shift = cone.rho * total
    return ConeCoordinates(tuple(c + shift for c in y.components))


def cone_contains(v: AttributeVector, cone: PolyCone, tol: float = 0.0) -> bool:
    """Membership test: every slack coordinate ``>= -tol``.

    The default ``tol=0.0`` is strict IEEE comparison; boundary membership
    is then decided by the exact floating-point slack values.  At the ray
    member (``rho == -1/k``) the slack inequalities alone would also admit
    the negative diagonal, which is not in the limit of the family; the
    additional ``sum(v) >= -tol`` condition closes that gap.  For every
    ``rho > -1/k`` the sum condition is already implied by the slacks.
    """
    _check_dim(v, cone)
    total = math.fsum(v.components)
    if cone.is_half_space:
        return total >= -tol
    r = cone_coordinates(v, cone)
    if not all(c >= -tol for c in r.components):
        return False
    if cone.is_diagonal_ray and total < -tol:
        return False
    return True


def dominates(
    y: AttributeVector, ybar: AttributeVector, cone: PolyCone, tol: float = 0.0
) -> bool:
    """True when ``y`` differs from ``ybar`` and ``y - ybar`` is in the cone.

    The inequality side uses ``tol`` like :func:`cone_contains`; the
    ``y != ybar`` side is exact componentwise equality, never tolerant.
    """
    if len(y) != len(ybar):
        raise ValueError("vectors have different lengths")
    _check_dim(y, cone)
    if y.components == ybar.components:
        return False
    diff = AttributeVector(
        tuple(a - b for a, b in zip(y.components, ybar.components))
    )
    return cone_contains(diff, cone, tol=tol)


def classify_cone(cone: PolyCone) -> ConeShape:
    """Place the cone among the family's qualitative regimes."""
    if cone.is_half_space:
        return ConeShape.HALF_SPACE
    if cone.rho == 0.0:
        return ConeShape.ORTHANT
    if cone.is_diagonal_ray:
        return ConeShape.DIAGONAL_RAY
    if cone.rho > 0.0:
        return ConeShape.SUPERSET_OF_ORTHANT
    return ConeShape.SUBSET_OF_ORTHANT
