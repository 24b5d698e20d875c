"""Catalog of assessment functions that aggregate attributes into scores.

Two broad groups are covered: functions that never rank a componentwise-
dominated alternative above its dominator (dominance-consistent, PDCA), and
functions that deliberately can, rewarding balanced attribute profiles
instead (dominance-inconsistent, PDIA).  The generalized min-form family
with a negative balance parameter is the main PDIA instrument; at
``rho = -1/k`` it scores pure deviation from the equal-components ray.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from itertools import product

from .cones import AttributeVector

__all__ = [
    "P_TO_ZERO",
    "P_TO_NEG_INF",
    "P_TO_POS_INF",
    "Family",
    "Classification",
    "DomainError",
    "AssessmentSpec",
    "GridAxis",
    "ContourGrid",
    "evaluate",
    "classify",
    "pdia_witness",
    "benchmark_curve_point",
    "benchmark_curve_values",
    "BENCHMARK_CURVE_MARKS",
    "contour_sample",
]


class _Limit:
    """Symbolic order-parameter limit; avoids overflowing the raw formula."""

    __slots__ = ("_name",)

    def __init__(self, name):
        self._name = name

    def __repr__(self):
        return self._name


P_TO_ZERO = _Limit("P_TO_ZERO")
P_TO_NEG_INF = _Limit("P_TO_NEG_INF")
P_TO_POS_INF = _Limit("P_TO_POS_INF")


class Family(Enum):
    MEAN_ORDER_P = "mean_order_p"
    CES = "ces"
    COBB_DOUGLAS = "cobb_douglas"
    LEONTIEF = "leontief"
    CHEBYSHEV = "chebyshev"
    AUG_LEONTIEF = "aug_leontief"
    GEN_LEONTIEF = "gen_leontief"
    PIECEWISE_BALANCE = "piecewise_balance"
    SMOOTH_PDIA = "smooth_pdia"


class Classification(Enum):
    PDCA = "pdca"
    PDIA = "pdia"
    PDIA_LOCALLY_PDCA = "pdia_locally_pdca"


class DomainError(ValueError):
    """The evaluation point violates the function's domain."""


_POSITIVE_DOMAIN = (Family.MEAN_ORDER_P, Family.CES, Family.COBB_DOUGLAS)
# loosest admissible balance parameter over all k >= 2; the exact -1/k
# bound is re-checked at evaluation time once the dimension is known
_RHO_FLOOR = -0.5


@dataclass(frozen=True)
class AssessmentSpec:
    """A family tag plus that family's parameters.

    Use the per-family constructors (:meth:`leontief`, :meth:`ces`, ...)
    rather than filling fields by hand; construction validates that exactly
    the parameters the family needs are present and in range.
    """

    family: Family
    p: float | _Limit | None = None
    scale: float | None = None
    coefficients: tuple[float, ...] | None = None
    exponents: tuple[float, ...] | None = None
    reference: tuple[float, ...] | None = None
    rho: float | None = None
    cap_slope: float | None = None
    ideal: tuple[float, ...] | None = None

    def __post_init__(self):
        for name in ("coefficients", "exponents", "reference", "ideal"):
            val = getattr(self, name)
            if val is not None:
                object.__setattr__(self, name, tuple(float(v) for v in val))
        required = {
            Family.MEAN_ORDER_P: ("p",),
            Family.CES: ("p", "scale", "coefficients"),
            Family.COBB_DOUGLAS: ("scale", "exponents"),
            Family.LEONTIEF: (),
            Family.CHEBYSHEV: ("reference",),
            Family.AUG_LEONTIEF: ("rho",),
            Family.GEN_LEONTIEF: ("rho",),
            Family.PIECEWISE_BALANCE: ("rho", "cap_slope"),
            Family.SMOOTH_PDIA: ("p", "rho", "ideal"),
        }[self.family]
        all_fields = (
            "p", "scale", "coefficients", "exponents",
            "reference", "rho", "cap_slope", "ideal",
        )
        for name in all_fields:
            val = getattr(self, name)
            if name in required and val is None:
                raise ValueError(f"{self.family.value} requires parameter {name!r}")
            if name not in required and val is not None:
                raise ValueError(f"{self.family.value} does not take {name!r}")
        self._validate()

    def _validate(self):
        fam = self.family
        if fam is Family.MEAN_ORDER_P:
            if isinstance(self.p, _Limit):
                if self.p not in (P_TO_ZERO, P_TO_NEG_INF):
                    raise ValueError("mean order limit must be P_TO_ZERO or P_TO_NEG_INF")
            elif not math.isfinite(self.p) or self.p == 0.0:
                raise ValueError("mean order p must be finite and non-zero, or a limit tag")
        elif fam is Family.CES:
            if isinstance(self.p, _Limit) or not self.p < 1 or self.p == 0.0:
                raise ValueError("CES needs finite p < 1, p != 0")
            if self.scale <= 0 or any(c <= 0 for c in self.coefficients):
                raise ValueError("CES scale and coefficients must be positive")
        elif fam is Family.COBB_DOUGLAS:
            if self.scale <= 0 or any(a <= 0 for a in self.exponents):
                raise ValueError("Cobb-Douglas scale and exponents must be positive")
        elif fam is Family.AUG_LEONTIEF:
            if not (math.isfinite(self.rho) and self.rho >= 0.0):
                raise ValueError("augmented min form needs finite rho >= 0")
        elif fam in (Family.GEN_LEONTIEF, Family.PIECEWISE_BALANCE):
            if not (math.isfinite(self.rho) and self.rho >= _RHO_FLOOR):
                raise ValueError(f"rho must be finite and >= {_RHO_FLOOR}")
            if fam is Family.PIECEWISE_BALANCE and self.cap_slope <= 0:
                raise ValueError("cap_slope must be positive")
        elif fam is Family.SMOOTH_PDIA:
            if isinstance(self.p, _Limit):
                if self.p is not P_TO_POS_INF:
                    raise ValueError("smooth balance limit must be P_TO_POS_INF")
            elif not (math.isfinite(self.p) and self.p >= 1.0):
                raise ValueError("smooth balance needs p >= 1 or P_TO_POS_INF")
            if not math.isfinite(self.rho):
                raise ValueError("rho must be finite")

    # -- per-family constructors -------------------------------------------

    @classmethod
    def mean_order(cls, p):
        return cls(Family.MEAN_ORDER_P, p=p)

    @classmethod
    def ces(cls, scale, coefficients, p):
        return cls(Family.CES, p=p, scale=float(scale), coefficients=tuple(coefficients))

    @classmethod
    def cobb_douglas(cls, scale, exponents):
        return cls(Family.COBB_DOUGLAS, scale=float(scale), exponents=tuple(exponents))

    @classmethod
    def leontief(cls):
        return cls(Family.LEONTIEF)

    @classmethod
    def chebyshev(cls, reference):
        return cls(Family.CHEBYSHEV, reference=tuple(reference))

    @classmethod
    def augmented_leontief(cls, rho):
        return cls(Family.AUG_LEONTIEF, rho=float(rho))

    @classmethod
    def generalized_leontief(cls, rho):
        return cls(Family.GEN_LEONTIEF, rho=float(rho))

    @classmethod
    def piecewise_balance(cls, rho, cap_slope):
        return cls(Family.PIECEWISE_BALANCE, rho=float(rho), cap_slope=float(cap_slope))

    @classmethod
    def smooth_balance(cls, p, rho, ideal):
        return cls(Family.SMOOTH_PDIA, p=p, rho=float(rho), ideal=tuple(ideal))


def _require_len(name, values, k):
    if len(values) != k:
        raise ValueError(f"{name} has length {len(values)}, point has {k}")


def _check_balance_rho(rho: float, k: int):
    if rho < -1.0 / k:
        raise DomainError(f"rho={rho} below -1/k={-1.0 / k} for k={k}")


def evaluate(spec: AssessmentSpec, y: AttributeVector) -> float:
    """Value of the selected assessment function at ``y``.

    Mean-order, CES, and Cobb-Douglas require strictly positive components.
    The smooth balance form requires the point to sit weakly below its
    ideal.  Limit tags resolve to the closed-form limits: ``P_TO_ZERO`` to
    the component product, ``P_TO_NEG_INF`` to the minimum, ``P_TO_POS_INF``
    to the maximum deviation.
    """
    c = y.components
    k = len(c)
    fam = spec.family

    if fam in _POSITIVE_DOMAIN and any(v <= 0.0 for v in c):
        raise DomainError(f"{fam.value} requires strictly positive components")

    if fam is Family.MEAN_ORDER_P:
        if spec.p is P_TO_ZERO:
            return math.prod(c)
        if spec.p is P_TO_NEG_INF:
            return min(c)
        return math.fsum(v**spec.p for v in c) ** (1.0 / spec.p)

    if fam is Family.CES:
        _require_len("coefficients", spec.coefficients, k)
        inner = math.fsum(a * v**spec.p for a, v in zip(spec.coefficients, c))
        return spec.scale * inner ** (1.0 / spec.p)

    if fam is Family.COBB_DOUGLAS:
        _require_len("exponents", spec.exponents, k)
        return spec.scale * math.prod(
            v**a for a, v in zip(spec.exponents, c)
        )

    if fam is Family.LEONTIEF:
        return min(c)

    if fam is Family.CHEBYSHEV:
        _require_len("reference", spec.reference, k)
        return min(v - ref for v, ref in zip(c, spec.reference))

    if fam in (Family.AUG_LEONTIEF, Family.GEN_LEONTIEF):
        if fam is Family.GEN_LEONTIEF:
            _check_balance_rho(spec.rho, k)
        total = math.fsum(c)
        return min(v + spec.rho * total for v in c)

    if fam is Family.PIECEWISE_BALANCE:
        _check_balance_rho(spec.rho, k)
        total = math.fsum(c)
        return min(min(v + spec.rho * total for v in c), spec.cap_slope * total)

    if fam is Family.SMOOTH_PDIA:
        _require_len("ideal", spec.ideal, k)
        devs = tuple(ih - v for ih, v in zip(spec.ideal, c))
        if any(d < 0.0 for d in devs):
            raise DomainError("point exceeds its ideal in some component")
        dev_sum = math.fsum(devs)
        if spec.p is P_TO_POS_INF:
            norm = max(devs)
        else:
            norm = math.fsum(d**spec.p for d in devs) ** (1.0 / spec.p)
        return -(norm + spec.rho * dev_sum)

    raise AssertionError(f"unhandled family {fam!r}")


def classify(spec: AssessmentSpec) -> Classification:
    """Dominance behavior of the function: consistent, inconsistent, or
    inconsistent-but-locally-consistent."""
    fam = spec.family
    if fam is Family.GEN_LEONTIEF:
        return Classification.PDCA if spec.rho >= 0.0 else Classification.PDIA
    if fam in (Family.PIECEWISE_BALANCE, Family.SMOOTH_PDIA):
        return Classification.PDIA_LOCALLY_PDCA
    return Classification.PDCA


def pdia_witness(
    spec: AssessmentSpec, k: int
) -> tuple[AttributeVector, AttributeVector]:
    """A concrete dominance reversal: a pair ``(y, y')`` with ``y'``
    componentwise above ``y`` yet scored strictly lower.

    Found by a deterministic scan over a small lattice; a dominance-
    consistent spec is rejected up front, and exhausting the scan without a
    reversal raises, which signals a misclassified function.
    """
    if classify(spec) is Classification.PDCA:
        raise ValueError("spec is dominance-consistent; no reversal exists")

    if spec.family is Family.SMOOTH_PDIA:
        _require_len("ideal", spec.ideal, k)
        bases = [
            tuple(ih - u for ih, u in zip(spec.ideal, offs))
            for offs in product(range(4), repeat=k)
        ]
    else:
        bases = [tuple(float(v) for v in pt) for pt in product(range(1, 5), repeat=k)]

    for base in bases:
        try:
            base_val = evaluate(spec, AttributeVector(base))
        except DomainError:
            continue
        for axis in range(k):
            for step in (1.0, 2.0, 3.0):
                raised = tuple(
                    v + step if i == axis else v for i, v in enumerate(base)
                )
                try:
                    raised_val = evaluate(spec, AttributeVector(raised))
                except DomainError:
                    continue
                if raised_val < base_val:
                    return AttributeVector(base), AttributeVector(raised)
    raise RuntimeError(
        "no dominance reversal found within the scan bound; "
        "the spec appears dominance-consistent"
    )


# --- benchmark curve -------------------------------------------------------
#
# A space curve with three marked points, used as a fixed verification
# target.  The trigonometric constants make the lower endpoint land exactly
# on the balanced point (2, 2, 2); their 4-decimal roundings are 2.2426 and
# 9.0710.  The third coordinate is affine in the parameter, from 2 at
# t = -pi/4 up to 7 at t = 0.

_CURVE_X0 = 6.0 * math.cos(math.pi / 4.0) - 2.0
_CURVE_Y0 = 2.0 + 10.0 * math.sin(math.pi / 4.0)

#: Marked points: the balanced endpoint, an interior point 52% along the
#: parameter range, and the componentwise-maximal endpoint.
BENCHMARK_CURVE_MARKS = (
    ("diagonal", -math.pi / 4.0),
    ("circle", -0.12 * math.pi),
    ("bullet", 0.0),
)


def benchmark_curve_point(t: float) -> AttributeVector:
    """Point of the benchmark curve at parameter ``t`` in ``[-pi/4, 0]``."""
    if not -math.pi / 4.0 - 1e-12 <= t <= 1e-12:
        raise ValueError("curve parameter must lie in [-pi/4, 0]")
    x = 6.0 * math.cos(t) - _CURVE_X0
    y = 10.0 * math.sin(t) + _CURVE_Y0
    z = 2.0 + 5.0 * (t + math.pi / 4.0) / (math.pi / 4.0)
    return AttributeVector((x, y, z))


def benchmark_curve_values(rho: float) -> list[tuple[str, float]]:
    """Generalized min-form values at the curve's three marked points."""
    if rho < -1.0 / 3.0:
        raise ValueError("rho must be >= -1/3 for the 3-dimensional curve")
    spec = AssessmentSpec.generalized_leontief(rho)
    return [
        (name, evaluate(spec, benchmark_curve_point(t)))
        for name, t in BENCHMARK_CURVE_MARKS
    ]


# --- contour grids ---------------------------------------------------------


@dataclass(frozen=True)
class GridAxis:
    """Inclusive sampling range ``start, start+step, ..., stop``."""

    start: float
    stop: float
    step: float

    def __post_init__(self):
        if self.step <= 0:
            raise ValueError("step must be positive")
        if self.stop < self.start:
            raise ValueError("stop must not be below start")

    @property
    def count(self) -> int:
        return int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1

    def points(self) -> list[float]:
        return [self.start + i * self.step for i in range(self.count)]


@dataclass(frozen=True)
class ContourGrid:
    """Dense row-major evaluation of a spec over a rectangular grid.

    ``values`` holds one entry per grid point, the first axis varying
    slowest; points outside the spec's domain hold ``None`` (serialized as
    JSON null) rather than a NaN that could leak into arithmetic.
    """

    spec: AssessmentSpec
    axes: tuple[GridAxis, ...]
    values: tuple[float | None, ...]

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(ax.count for ax in self.axes)

    def value_at(self, indices: tuple[int, ...]) -> float | None:
        flat = 0
        for idx, ax in zip(indices, self.axes):
            if not 0 <= idx < ax.count:
                raise IndexError(f"index {indices} outside grid {self.shape}")
            flat = flat * ax.count + idx
        return self.values[flat]


def contour_sample(spec: AssessmentSpec, axes) -> ContourGrid:
    """Evaluate ``spec`` over the grid spanned by two or three axes."""
    axes = tuple(axes)
    if len(axes) not in (2, 3):
        raise ValueError("contour grids support 2 or 3 axes")
    values = []
    for point in product(*(ax.points() for ax in axes)):
        try:
            values.append(evaluate(spec, AttributeVector(point)))
        except DomainError:
            values.append(None)
    return ContourGrid(spec=spec, axes=axes, values=tuple(values))
