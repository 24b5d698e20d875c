"""Efficiency machinery over finite alternative sets.

Provides the brute-force dominance screen, the positivity offset, the
max-min scalarization, the constructive multiplier test for efficiency,
bounded-trade-off certification, and a numerical witness showing that
trade-off ratios can grow without bound on a smooth frontier.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .cones import AttributeVector, PolyCone, cone_coordinates, dominates

__all__ = [
    "AlternativeSet",
    "OffsetSet",
    "ScalarizationParams",
    "EfficiencyRecord",
    "EfficiencyReport",
    "DEFAULT_SIGMA_GRID",
    "offset_set",
    "scalarization_value",
    "maximize_scalarization",
    "efficient_subset",
    "efficiency_test",
    "proper_efficiency_certificate",
    "tradeoff_constant",
    "improperness_witness_circle",
]

#: Certification grid used when no sigma is supplied: largest certifying
#: sigma gives the smallest trade-off bound, so the grid is scanned downward.
DEFAULT_SIGMA_GRID = tuple(10.0**-i for i in range(7))


@dataclass(frozen=True)
class AlternativeSet:
    """A finite, uniformly dimensioned, uniquely labeled set of alternatives."""

    alternatives: tuple[AttributeVector, ...]

    def __post_init__(self):
        alts = tuple(self.alternatives)
        object.__setattr__(self, "alternatives", alts)
        if not alts:
            raise ValueError("alternative set must be non-empty")
        k = len(alts[0])
        if any(len(a) != k for a in alts):
            raise ValueError("alternatives have mixed dimensions")
        labels = [a.label for a in alts]
        if any(lab is None for lab in labels):
            raise ValueError("every alternative in a set needs a label")
        if len(set(labels)) != len(labels):
            raise ValueError("alternative labels must be unique")

    @classmethod
    def from_points(cls, points, labels=None) -> "AlternativeSet":
        """Build a set from raw component tuples, auto-labeling when needed."""
        pts = list(points)
        if labels is None:
            labels = [f"a{i + 1}" for i in range(len(pts))]
        return cls(
            tuple(
                AttributeVector(tuple(p), lab) for p, lab in zip(pts, labels)
            )
        )

    @property
    def k(self) -> int:
        return len(self.alternatives[0])

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(a.label for a in self.alternatives)

    def __len__(self):
        return len(self.alternatives)

    def index_of(self, label: str) -> int:
        for i, a in enumerate(self.alternatives):
            if a.label == label:
                return i
        raise KeyError(f"unknown label {label!r}")

    @cached_property
    def matrix(self) -> np.ndarray:
        m = np.array([a.components for a in self.alternatives], dtype=float)
        m.setflags(write=False)
        return m


@dataclass(frozen=True)
class OffsetSet:
    """An alternative set translated so all slack coordinates are positive.

    ``base`` is the already-shifted set, ``shift`` the applied translation
    (always a multiple of the all-ones direction) and ``epsilon`` the
    positivity margin the shift guarantees.  Construct through
    :func:`offset_set`, which establishes the margin.
    """

    base: AlternativeSet
    shift: AttributeVector
    epsilon: float


@dataclass(frozen=True)
class ScalarizationParams:
    """Positive per-component multipliers ``lam`` and sum emphasis ``sigma``."""

    lam: tuple[float, ...]
    sigma: float = 0.0

    def __post_init__(self):
        lam = tuple(float(v) for v in self.lam)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "sigma", float(self.sigma))
        if any(v <= 0 for v in lam):
            raise ValueError("all multipliers must be strictly positive")
        if self.sigma < 0:
            raise ValueError("sigma must be non-negative")


@dataclass(frozen=True)
class EfficiencyRecord:
    label: str
    efficient: bool
    dominator_label: str | None = None
    lambda_used: tuple[float, ...] | None = None
    tradeoff_bound: float | None = None


@dataclass(frozen=True)
class EfficiencyReport:
    records: tuple[EfficiencyRecord, ...]

    def record(self, label: str) -> EfficiencyRecord:
        for r in self.records:
            if r.label == label:
                return r
        raise KeyError(f"unknown label {label!r}")

    @property
    def efficient_labels(self) -> tuple[str, ...]:
        return tuple(r.label for r in self.records if r.efficient)


def _base(zset: AlternativeSet | OffsetSet) -> AlternativeSet:
    return zset.base if isinstance(zset, OffsetSet) else zset


def _coord_matrix(zset: AlternativeSet | OffsetSet, cone: PolyCone) -> np.ndarray:
    base = _base(zset)
    if base.k != cone.k:
        raise ValueError(f"set has k={base.k}, cone expects k={cone.k}")
    if cone.is_half_space:
        raise ValueError("slack coordinates are undefined for the half-space cone")
    y = base.matrix
    return y + cone.rho * y.sum(axis=1, keepdims=True)


def offset_set(
    zset: AlternativeSet | OffsetSet,
    cone: PolyCone,
    epsilon: float | None = None,
) -> OffsetSet:
    """Translate the set along the all-ones direction until every slack
    coordinate is at least ``epsilon``.

    A shift of ``c`` in every attribute moves every slack coordinate by
    ``c * (1 + k*rho)``, so a single scalar suffices for any ``rho > -1/k``.
    At ``rho == -1/k`` the slack coordinates of each point sum to zero and
    positivity is unattainable; that parameter is rejected, as is the
    half-space cone.  When ``epsilon`` is omitted it defaults to 1e-3 of the
    largest absolute slack value in the set (with floor 1e-9).
    """
    base = _base(zset)
    if cone.is_half_space:
        raise ValueError("offset is undefined for the half-space cone")
    if cone.is_diagonal_ray:
        raise ValueError(
            "slack coordinates always sum to zero at rho == -1/k; "
            "positive offsets do not exist"
        )
    r = _coord_matrix(base, cone)
    if epsilon is None:
        epsilon = max(1e-3 * float(np.abs(r).max()), 1e-9)
    epsilon = float(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")

    gain = 1.0 + cone.k * cone.rho
    lowest = float(r.min())
    c = max(0.0, (epsilon - lowest) / gain)
    scale = max(1.0, abs(c), float(np.abs(base.matrix).max()))
    shifted = base
    for attempt in range(16):
        shifted = AlternativeSet(
            tuple(
                AttributeVector(tuple(v + c for v in a.components), a.label)
                for a in base.alternatives
            )
        )
        new_low = float(_coord_matrix(shifted, cone).min())
        if new_low >= epsilon:
            break
        # rounding left a sliver below the margin; nudge the shift up by the
        # shortfall or a geometrically growing ulp-scale bump, whichever is
        # larger, so cancellation noise cannot stall the loop
        c += max((epsilon - new_low) / gain, 2.0**attempt * 1e-15 * scale)
    else:
        raise ArithmeticError("offset failed to reach the positivity margin")
    return OffsetSet(
        base=shifted,
        shift=AttributeVector((c,) * cone.k),
        epsilon=epsilon,
    )


def scalarization_value(
    y: AttributeVector, cone: PolyCone, params: ScalarizationParams
) -> float:
    """``min_l  lam_l * (r_l + sigma * sum(r))`` of the slack coordinates."""
    if len(params.lam) != cone.k:
        raise ValueError("multiplier length does not match cone dimension")
    r = cone_coordinates(y, cone).components
    rsum = math.fsum(r)
    return min(
        lam * (rl + params.sigma * rsum) for lam, rl in zip(params.lam, r)
    )


def _scalarization_values(
    zset: AlternativeSet | OffsetSet, cone: PolyCone, params: ScalarizationParams
) -> np.ndarray:
    r = _coord_matrix(zset, cone)
    tau = r + params.sigma * r.sum(axis=1, keepdims=True)
    return (np.asarray(params.lam) * tau).min(axis=1)


def maximize_scalarization(
    zset: AlternativeSet | OffsetSet, cone: PolyCone, params: ScalarizationParams
) -> tuple[list[str], float]:
    """All labels attaining the maximal scalarization value, in input order."""
    base = _base(zset)
    values = _scalarization_values(base, cone, params)
    best = float(values.max())
    labels = [base.labels[i] for i in np.flatnonzero(values == best)]
    return labels, best


def efficient_subset(
    zset: AlternativeSet | OffsetSet, cone: PolyCone
) -> EfficiencyReport:
    """Brute-force pairwise dominance screen, O(n^2 k).

    An alternative is efficient when no other one dominates it.  Dominance
    between finite-``rho`` alternatives follows :func:`conerank.cones.dominates`
    applied to the difference vector; for the half-space cone an alternative
    dominates another when its component sum is strictly greater.  The
    recorded witness is always the lowest-index dominator.
    """
    base = _base(zset)
    y = base.matrix
    n = len(base)
    if cone.is_half_space:
        sums = y.sum(axis=1)
        dom = sums[:, None] > sums[None, :]
    else:
        if base.k != cone.k:
            raise ValueError(f"set has k={base.k}, cone expects k={cone.k}")
        diff = y[:, None, :] - y[None, :, :]
        dsum = diff.sum(axis=2)
        slack = diff + cone.rho * dsum[:, :, None]
        dom = (slack >= 0.0).all(axis=2)
        dom &= (y[:, None, :] != y[None, :, :]).any(axis=2)
        if cone.is_diagonal_ray:
            dom &= dsum >= 0.0
    np.fill_diagonal(dom, False)

    records = []
    for j in range(n):
        col = dom[:, j]
        if col.any():
            witness = int(np.argmax(col))
            records.append(
                EfficiencyRecord(
                    label=base.labels[j],
                    efficient=False,
                    dominator_label=base.labels[witness],
                )
            )
        else:
            records.append(EfficiencyRecord(label=base.labels[j], efficient=True))
    return EfficiencyReport(tuple(records))


def efficiency_test(
    zb: OffsetSet | AlternativeSet, label: str, cone: PolyCone
) -> tuple[bool, tuple[float, ...]]:
    """Constructive scalarization test for efficiency of one alternative.

    Sets the multipliers to the reciprocals of the tested alternative's slack
    coordinates (all of which must be positive, which :func:`offset_set`
    guarantees) and maximizes the plain weighted minimum.  The alternative
    passes when it attains the maximum and no co-maximizer dominates it; the
    co-maximizer rule resolves ties created by the min's weak monotonicity
    without admitting dominated points.
    """
    base = _base(zb)
    idx = base.index_of(label)
    r = _coord_matrix(base, cone)
    rbar = r[idx]
    if (rbar <= 0.0).any():
        raise ValueError(
            "the tested alternative has non-positive slack coordinates; "
            "apply offset_set first"
        )
    lam = 1.0 / rbar
    lam_out = tuple(float(v) for v in lam)
    values = (lam * r).min(axis=1)
    best = values.max()
    if values[idx] != best:
        return False, lam_out
    co_max = [int(i) for i in np.flatnonzero(values == best) if i != idx]
    target = base.alternatives[idx]
    for m in co_max:
        if dominates(base.alternatives[m], target, cone):
            return False, lam_out
    return True, lam_out


def proper_efficiency_certificate(
    zb: OffsetSet | AlternativeSet,
    label: str,
    cone: PolyCone,
    sigma: float | None = None,
) -> tuple[bool, float]:
    """Certify bounded trade-offs by unique maximization at positive sigma.

    With multipliers ``1 / (rbar_l + sigma * sum(rbar))`` the alternative is
    certified when it is the unique maximizer; the associated trade-off bound
    is ``(1 + (k-1) * sigma) / sigma``.  When no ``sigma`` is supplied the
    default grid is scanned from the largest value down (smallest bound
    first) and the first certifying sigma is reported; if none certifies,
    the bound of the smallest grid value is returned with ``False``.
    """
    if sigma is not None:
        if sigma <= 0:
            raise ValueError("sigma must be strictly positive")
        grid = (float(sigma),)
    else:
        grid = DEFAULT_SIGMA_GRID
    base = _base(zb)
    idx = base.index_of(label)
    r = _coord_matrix(base, cone)
    rbar = r[idx]
    k = cone.k

    bound = math.inf
    for s in grid:
        bound = (1.0 + (k - 1) * s) / s
        lam = 1.0 / (rbar + s * rbar.sum())
        if (lam <= 0.0).any():
            raise ValueError(
                "non-positive multipliers; apply offset_set before certifying"
            )
        tau = r + s * r.sum(axis=1, keepdims=True)
        values = (lam * tau).min(axis=1)
        best = values.max()
        if values[idx] == best and int((values == best).sum()) == 1:
            return True, bound
    return False, bound


def tradeoff_constant(
    zb: OffsetSet | AlternativeSet, label: str, cone: PolyCone
) -> float:
    """Smallest bound covering all gain/loss ratios against the alternative.

    For every other alternative with a slack gain in some component, the best
    achievable ratio pairs that gain with the largest slack loss; the result
    is the maximum of those ratios over the whole set, or 0.0 when nothing
    gains anywhere.  Only defined for efficient alternatives (checked with
    the brute-force screen), which guarantees every gainer also loses
    somewhere, so the result is always finite.
    """
    base = _base(zb)
    idx = base.index_of(label)
    if not efficient_subset(base, cone).records[idx].efficient:
        raise ValueError(f"{label!r} is not efficient under this cone")
    r = _coord_matrix(base, cone)
    rbar = r[idx]
    worst = 0.0
    for j in range(len(base)):
        if j == idx:
            continue
        delta = r[j] - rbar
        best_gain = float(delta.max())
        if best_gain <= 0.0:
            continue
        best_loss = float(-delta.min())
        if best_loss <= 0.0:
            raise ValueError(
                f"{label!r} gains nowhere against {base.labels[j]!r}; "
                "the efficiency precondition is violated"
            )
        worst = max(worst, best_gain / best_loss)
    return worst


def improperness_witness_circle(
    deltas: list[float] | tuple[float, ...],
) -> list[tuple[float, float]]:
    """Trade-off ratios along the unit circle approaching its tangency point.

    For the cone with ``rho = 1`` in the plane, the tangency point of the
    line ``y_1 + rho*(y_1 + y_2) = sqrt(5)`` with the unit circle is
    ``(2*sqrt(5)/5, sqrt(5)/5)``.  For each offset ``delta`` the second
    coordinate is raised by ``delta`` along the circle and the gain/loss
    ratio of the slack coordinates against the tangency point is returned.
    The ratios grow without bound as ``delta`` shrinks.
    """
    ds = [float(d) for d in deltas]
    if not ds:
        raise ValueError("at least one delta is required")
    if any(d <= 0 for d in ds):
        raise ValueError("deltas must be positive")
    if any(b >= a for a, b in zip(ds, ds[1:])):
        raise ValueError("deltas must be strictly decreasing")

    s5 = math.sqrt(5.0)
    rbar1 = s5
    rbar2 = 4.0 * s5 / 5.0
    out = []
    for d in ds:
        y2 = s5 / 5.0 + d
        if y2 > 1.0:
            raise ValueError(f"delta={d} pushes the point off the circle")
        y1 = math.sqrt(1.0 - y2 * y2)
        gain = (y1 + 2.0 * y2) - rbar2
        loss = rbar1 - (2.0 * y1 + y2)
        out.append((d, gain / loss))
    return out
