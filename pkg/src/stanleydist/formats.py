"""Text formats: rationals as "p/q", the moments CSV, and JSON documents.

Moments CSV (schema version 1), UTF-8, comma separated, one header row::

    schema_version,n,mean,m_2,...,m_R,alpha_2,alpha_4,...,q_3,q_5,...

``alpha_{2r}`` columns hold even standardized moments, ``q_{2r+1}`` columns
hold m_{2r+1} / m_2**r (the odd standardized moment times sqrt(m_2)). Every
value cell is a lowest-terms "p/q" string; standardized cells are empty
when n = 1.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Iterable, TextIO

from .distexact import DistributionTable
from .moments import MomentTable
from .montecarlo import EmpiricalHistogram

__all__ = [
    "SCHEMA_VERSION",
    "MomentsCSVError",
    "histogram_to_csv",
    "histogram_to_json",
    "moment_columns",
    "moment_row",
    "parse_rational",
    "rational_str",
    "read_moments_csv",
    "table_to_csv",
    "table_to_json",
    "write_moments_csv",
]

SCHEMA_VERSION = 1


class MomentsCSVError(ValueError):
    pass


def rational_str(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def moment_columns(max_moment: int) -> list[str]:
    cols = ["schema_version", "n", "mean"]
    cols += [f"m_{r}" for r in range(2, max_moment + 1)]
    cols += [f"alpha_{r}" for r in range(2, max_moment + 1, 2)]
    cols += [f"q_{r}" for r in range(3, max_moment + 1, 2)]
    return cols


def moment_row(mt: MomentTable) -> dict[str, str]:
    row = {"schema_version": str(SCHEMA_VERSION), "n": str(mt.n), "mean": rational_str(mt.mean)}
    for r, v in mt.central.items():
        row[f"m_{r}"] = rational_str(v)
    for r in range(2, mt.max_moment + 1, 2):
        row[f"alpha_{r}"] = rational_str(mt.std_even[r]) if mt.standardized else ""
    for r in range(3, mt.max_moment + 1, 2):
        row[f"q_{r}"] = rational_str(mt.std_odd_q[r]) if mt.standardized else ""
    return row


def write_moments_csv(tables: Iterable[MomentTable], out: TextIO, max_moment: int) -> None:
    writer = csv.DictWriter(out, fieldnames=moment_columns(max_moment), lineterminator="\n")
    writer.writeheader()
    for mt in tables:
        writer.writerow(moment_row(mt))


def read_moments_csv(src: TextIO, required: Iterable[str] = ()) -> dict[int, dict[str, Fraction]]:
    """Parse a moments CSV into ``{n: {column: Fraction}}``.

    Columns other than schema_version and n are parsed as rationals; empty
    cells are dropped. Any name in ``required`` missing from the header
    raises :class:`MomentsCSVError` naming it.
    """
    reader = csv.DictReader(src)
    header = reader.fieldnames or []
    if "n" not in header:
        raise MomentsCSVError("missing column 'n'")
    for col in required:
        if col not in header:
            raise MomentsCSVError(f"missing column {col!r}")
    rows: dict[int, dict[str, Fraction]] = {}
    for line in reader:
        version = line.get("schema_version")
        if version not in (None, "", str(SCHEMA_VERSION)):
            raise MomentsCSVError(f"unsupported schema_version {version!r}")
        n = int(line["n"])
        if n in rows:
            raise MomentsCSVError(f"duplicate row for n={n}")
        rows[n] = {
            k: parse_rational(v) for k, v in line.items() if k not in ("schema_version", "n") and v not in (None, "")
        }
    return rows


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def table_to_json(t: DistributionTable) -> str:
    return _dump(
        {
            "schema_version": SCHEMA_VERSION,
            "kind": "DistributionTable",
            "n": t.n,
            "convention": t.convention.value,
            "counts": [str(c) for c in t.counts],
        }
    )


def table_to_csv(t: DistributionTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "count"])
    for k, c in enumerate(t.counts, start=1):
        w.writerow([k, c])
    return buf.getvalue()


def histogram_to_json(h: EmpiricalHistogram, tv: float | None = None) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "EmpiricalHistogram",
        "n": h.n,
        "samples": h.samples,
        "seed": h.seed,
        "convention": h.convention.value,
        "counts": [str(c) for c in h.counts],
    }
    if tv is not None:
        doc["tv_distance"] = tv
    return _dump(doc)


def histogram_to_csv(h: EmpiricalHistogram) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "count"])
    for k, c in enumerate(h.counts, start=1):
        w.writerow([k, c])
    return buf.getvalue()
