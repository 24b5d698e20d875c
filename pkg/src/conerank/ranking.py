"""Weighted-attribute ranking engine and ranking comparison metrics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from scipy.stats import kendalltau

from .assess import AssessmentSpec, DomainError, evaluate
from .cones import AttributeVector
from .efficiency import AlternativeSet

__all__ = [
    "EPI_WEIGHTS",
    "WeightVector",
    "RankEntry",
    "RankingResult",
    "RankingComparison",
    "apply_weights",
    "epi_composite",
    "rank",
    "compare_rankings",
]


@dataclass(frozen=True)
class WeightVector:
    """Strictly positive attribute weights."""

    weights: tuple[float, ...]

    def __post_init__(self):
        w = tuple(float(v) for v in self.weights)
        object.__setattr__(self, "weights", w)
        if not w:
            raise ValueError("weight vector must be non-empty")
        if any(v <= 0 for v in w):
            raise ValueError("weights must be strictly positive")

    def __len__(self):
        return len(self.weights)


#: Composite-index weights of the environmental performance dataset:
#: climate 0.38, health 0.20, ecosystems 0.42 (they sum to 1).
EPI_WEIGHTS = WeightVector((0.38, 0.20, 0.42))


@dataclass(frozen=True)
class RankEntry:
    rank: int
    label: str
    score: float


@dataclass(frozen=True)
class RankingResult:
    """Ordered scoring of an alternative set.

    Entries are sorted by descending score; equal scores share a competition
    rank (1, 2, 2, 4) and are listed alphabetically within the tie.
    ``tie_groups`` collects the label groups that share a score.
    """

    entries: tuple[RankEntry, ...]
    tie_groups: tuple[tuple[str, ...], ...]
    spec: AssessmentSpec
    weights: WeightVector
    name: str = ""

    @property
    def labels_in_order(self) -> tuple[str, ...]:
        return tuple(e.label for e in self.entries)

    def rank_of(self, label: str) -> int:
        for e in self.entries:
            if e.label == label:
                return e.rank
        raise KeyError(f"unknown label {label!r}")


@dataclass(frozen=True)
class RankingComparison:
    kendall_tau: float
    top_k_overlap: dict[int, float] = field(compare=False)
    max_displacement: int = 0


def apply_weights(zset: AlternativeSet, w: WeightVector) -> AlternativeSet:
    """Scale every attribute by its weight, keeping labels."""
    if len(w) != zset.k:
        raise ValueError(f"{len(w)} weights for k={zset.k} attributes")
    return AlternativeSet(
        tuple(
            AttributeVector(
                tuple(wi * ci for wi, ci in zip(w.weights, a.components)),
                a.label,
            )
            for a in zset.alternatives
        )
    )


def epi_composite(pcc: float, hlt: float, eco: float) -> float:
    """The environmental composite: 0.38*climate + 0.20*health + 0.42*eco."""
    for v in (pcc, hlt, eco):
        if not math.isfinite(v):
            raise ValueError("composite inputs must be finite")
    w = EPI_WEIGHTS.weights
    return w[0] * pcc + w[1] * hlt + w[2] * eco


def rank(
    zset: AlternativeSet,
    spec: AssessmentSpec,
    w: WeightVector,
    name: str = "",
) -> RankingResult:
    """Score the weighted alternatives with ``spec`` and order them.

    Scores are computed on the raw weighted attribute values (no positivity
    offset is applied; scores are absolute, not an efficiency screen).  A
    domain violation is reported with the offending label.
    """
    weighted = apply_weights(zset, w)
    scored = []
    for alt in weighted.alternatives:
        try:
            scored.append((alt.label, evaluate(spec, alt)))
        except DomainError as exc:
            raise DomainError(f"alternative {alt.label!r}: {exc}") from exc

    scored.sort(key=lambda item: (-item[1], item[0]))
    scores = [s for _, s in scored]
    entries = []
    for i, (label, score) in enumerate(scored):
        position = 1 + sum(1 for s in scores if s > score)
        entries.append(RankEntry(rank=position, label=label, score=score))

    groups = []
    i = 0
    while i < len(scored):
        j = i
        while j < len(scored) and scored[j][1] == scored[i][1]:
            j += 1
        if j - i > 1:
            groups.append(tuple(label for label, _ in scored[i:j]))
        i = j
    return RankingResult(
        entries=tuple(entries),
        tie_groups=tuple(groups),
        spec=spec,
        weights=w,
        name=name,
    )


def compare_rankings(r1: RankingResult, r2: RankingResult) -> RankingComparison:
    """Tie-aware rank correlation, top-k overlap, and worst displacement.

    Kendall's tau (the tie-aware b variant) is computed over competition
    ranks on the common label universe; overlap fractions use the first
    ``min(k, n)`` displayed entries for k in {5, 10, 20}.
    """
    labels1 = set(r1.labels_in_order)
    labels2 = set(r2.labels_in_order)
    if labels1 != labels2:
        raise ValueError("rankings cover different label sets")
    universe = sorted(labels1)
    ranks1 = [r1.rank_of(lab) for lab in universe]
    ranks2 = [r2.rank_of(lab) for lab in universe]

    tau = kendalltau(ranks1, ranks2, variant="b").statistic
    if math.isnan(tau):
        tau = 0.0

    n = len(universe)
    overlap = {}
    for k in (5, 10, 20):
        eff = min(k, n)
        top1 = set(r1.labels_in_order[:eff])
        top2 = set(r2.labels_in_order[:eff])
        overlap[k] = len(top1 & top2) / eff

    displacement = max(
        abs(r1.rank_of(lab) - r2.rank_of(lab)) for lab in universe
    )
    return RankingComparison(
        kendall_tau=float(tau),
        top_k_overlap=overlap,
        max_displacement=int(displacement),
    )
