"""CSV ingestion, the bundled sample dataset, and result serialization.

CSV files follow RFC 4180 with a mandatory header row, UTF-8 encoded.
Whole lines starting with ``#`` are provenance comments and are ignored.
Row numbers in warnings count the header as row 1 (comment lines excluded).
"""

from __future__ import annotations

import csv
import json
import math
import os
import tempfile
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .assess import AssessmentSpec, ContourGrid, GridAxis, _Limit
from .cones import AttributeVector
from .efficiency import (
    AlternativeSet,
    EfficiencyRecord,
    EfficiencyReport,
    OffsetSet,
)
from .ranking import RankingComparison, RankingResult, WeightVector

__all__ = [
    "DatasetSchema",
    "EPI_SCHEMA",
    "load_csv",
    "load_scores",
    "save_csv",
    "fixture_epi_sample",
    "to_jsonable",
    "dumps_json",
    "write_json",
    "write_text",
    "rankings_table",
]


@dataclass(frozen=True)
class DatasetSchema:
    """Column mapping: one label column, ordered attribute columns, and an
    optional published-composite column used for cross-checks only."""

    label_column: str
    attribute_columns: tuple[str, ...]
    score_column: str | None = None

    def __post_init__(self):
        cols = tuple(self.attribute_columns)
        object.__setattr__(self, "attribute_columns", cols)
        if not cols:
            raise ValueError("at least one attribute column is required")
        if self.label_column in cols:
            raise ValueError("label column cannot also be an attribute column")


EPI_SCHEMA = DatasetSchema(
    label_column="country",
    attribute_columns=("PCC", "HLT", "ECO"),
    score_column="EPI",
)


def _read_rows(path) -> tuple[list[str], list[tuple[int, dict[str, str]]]]:
    text = Path(path).read_text(encoding="utf-8")
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    rows = list(csv.reader(lines))
    if not rows:
        raise ValueError(f"{path}: no header row")
    header = [h.strip() for h in rows[0]]
    data = []
    for rowno, row in enumerate(rows[1:], start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        data.append((rowno, dict(zip(header, (c.strip() for c in row)))))
    return header, data


def _parse_number(cell: str) -> float:
    value = float(cell)
    if not math.isfinite(value):
        raise ValueError("non-finite value")
    return value


def load_csv(path, schema: DatasetSchema) -> tuple[AlternativeSet, list[str]]:
    """Read one alternative per data row.

    Rows with a missing or unparseable attribute cell are dropped and
    reported in the warnings; duplicate labels and an empty result are hard
    errors, as are schema columns absent from the header.
    """
    header, data = _read_rows(path)
    needed = [schema.label_column, *schema.attribute_columns]
    missing = [c for c in needed if c not in header]
    if missing:
        raise ValueError(f"{path}: missing columns {missing}")

    warnings: list[str] = []
    alternatives: list[AttributeVector] = []
    seen: set[str] = set()
    for rowno, row in data:
        label = row.get(schema.label_column, "")
        if not label:
            warnings.append(f"row {rowno}: missing {schema.label_column}")
            continue
        values = []
        bad = None
        for col in schema.attribute_columns:
            cell = row.get(col, "")
            if not cell:
                bad = f"row {rowno}: missing {col}"
                break
            try:
                values.append(_parse_number(cell))
            except ValueError:
                bad = f"row {rowno}: unparseable {col} {cell!r}"
                break
        if bad:
            warnings.append(bad)
            continue
        if label in seen:
            raise ValueError(f"{path}: duplicate label {label!r} at row {rowno}")
        seen.add(label)
        alternatives.append(AttributeVector(tuple(values), label))

    if not alternatives:
        raise ValueError(f"{path}: no valid data rows")
    return AlternativeSet(tuple(alternatives)), warnings


def load_scores(path, schema: DatasetSchema) -> dict[str, float]:
    """Published composite scores keyed by label (rows lacking one skipped)."""
    if schema.score_column is None:
        raise ValueError("schema has no score column")
    header, data = _read_rows(path)
    if schema.score_column not in header:
        raise ValueError(f"{path}: missing column {schema.score_column!r}")
    scores = {}
    for _, row in data:
        label = row.get(schema.label_column, "")
        cell = row.get(schema.score_column, "")
        if not label or not cell:
            continue
        try:
            scores[label] = _parse_number(cell)
        except ValueError:
            continue
    return scores


def save_csv(zset: AlternativeSet, path, schema: DatasetSchema, comments=()):
    """Write the set back out; floats use shortest round-trip formatting."""
    lines = [f"# {c}" for c in comments]
    lines.append(",".join([schema.label_column, *schema.attribute_columns]))
    for alt in zset.alternatives:
        cells = [alt.label, *(repr(v) for v in alt.components)]
        lines.append(",".join(cells))
    _atomic_write(path, "\n".join(lines) + "\n")


def fixture_epi_sample() -> AlternativeSet:
    """The bundled 20-country environmental-performance sample (k = 3)."""
    ref = resources.files("conerank").joinpath("data/epi2022_sample.csv")
    with resources.as_file(ref) as path:
        zset, warnings = load_csv(path, EPI_SCHEMA)
    if warnings:
        raise AssertionError(f"bundled sample is malformed: {warnings}")
    return zset


# --- serialization ---------------------------------------------------------


def to_jsonable(obj):
    """Recursively convert result objects to plain JSON-ready structures."""
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if isinstance(obj, _Limit):
        return repr(obj)
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, AttributeVector):
        return {"label": obj.label, "components": list(obj.components)}
    if isinstance(obj, AlternativeSet):
        return {"alternatives": to_jsonable(list(obj.alternatives))}
    if isinstance(obj, OffsetSet):
        return {
            "base": to_jsonable(obj.base),
            "shift": to_jsonable(obj.shift),
            "epsilon": obj.epsilon,
        }
    if isinstance(obj, EfficiencyRecord):
        return {
            "label": obj.label,
            "efficient": obj.efficient,
            "dominator_label": obj.dominator_label,
            "lambda_used": to_jsonable(obj.lambda_used),
            "tradeoff_bound": obj.tradeoff_bound,
        }
    if isinstance(obj, EfficiencyReport):
        return {"records": to_jsonable(list(obj.records))}
    if isinstance(obj, AssessmentSpec):
        out = {"family": obj.family.value}
        for name in (
            "p", "scale", "coefficients", "exponents",
            "reference", "rho", "cap_slope", "ideal",
        ):
            val = getattr(obj, name)
            if val is not None:
                out[name] = to_jsonable(val)
        return out
    if isinstance(obj, WeightVector):
        return list(obj.weights)
    if isinstance(obj, RankingResult):
        return {
            "name": obj.name,
            "entries": [
                {"rank": e.rank, "label": e.label, "score": e.score}
                for e in obj.entries
            ],
            "tie_groups": to_jsonable(list(obj.tie_groups)),
            "provenance": {
                "spec": to_jsonable(obj.spec),
                "weights": to_jsonable(obj.weights),
                "rho": obj.spec.rho,
            },
        }
    if isinstance(obj, RankingComparison):
        return {
            "kendall_tau": obj.kendall_tau,
            "top_k_overlap": {str(k): v for k, v in sorted(obj.top_k_overlap.items())},
            "max_displacement": obj.max_displacement,
        }
    if isinstance(obj, GridAxis):
        return {
            "start": obj.start,
            "stop": obj.stop,
            "step": obj.step,
            "count": obj.count,
        }
    if isinstance(obj, ContourGrid):
        return {
            "spec": to_jsonable(obj.spec),
            "axes": to_jsonable(list(obj.axes)),
            "order": "row-major",
            "values": list(obj.values),
        }
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_json(obj) -> str:
    """Deterministic JSON text (sorted keys, stable float repr)."""
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2) + "\n"


def _atomic_write(path, text: str):
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def write_json(obj, path):
    _atomic_write(path, dumps_json(obj))


def write_text(text: str, path):
    _atomic_write(path, text)


def rankings_table(results: list[RankingResult]) -> str:
    """Side-by-side league table: a rank column plus one column per ranking."""
    if not results:
        raise ValueError("no rankings to tabulate")
    n = max(len(r.entries) for r in results)
    headers = [r.name or r.spec.family.value for r in results]
    columns = []
    for r in results:
        col = [e.label for e in r.entries]
        col += [""] * (n - len(col))
        columns.append(col)
    widths = [
        max(len(headers[i]), *(len(v) for v in columns[i])) for i in range(len(columns))
    ]
    lines = [
        "  ".join(["rank"] + [h.ljust(w) for h, w in zip(headers, widths)]).rstrip()
    ]
    for row in range(n):
        cells = [f"{row + 1:>4d}"]
        cells += [columns[i][row].ljust(widths[i]) for i in range(len(columns))]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"
