"""Comparison of the genus-3 enumeration with the printed classification table.

The packaged file ``data/table_s3.json`` holds every printed row verbatim
together with its corrected canonical form and the list of errata applied.
:func:`compare_s3` classifies each row as ``match`` (printed text agrees up
to notation), ``errata`` (agrees after the recorded corrections) or
``mismatch``, and lists enumerated classes absent from the table.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .abelian import enumerate_abelian, factor_generators, format_abelian
from .notation import ParseError, parse_abelian, parse_factor_pair

S3_DEGREES = ((2, 2), (2, 4), (2, 8), (4, 4))
S3_GENUS = 3
MATCH, ERRATA, MISMATCH = "match", "errata", "mismatch"


def load_golden(path=None) -> dict:
    if path is None:
        text = resources.files("ssc").joinpath("data/table_s3.json").read_text()
    else:
        text = Path(path).read_text()
    return json.loads(text)


def s3_classes() -> list:
    """``(abelian data set, factor pair)`` for every genus-3 class of the table's degrees."""
    out = []
    for m, n in S3_DEGREES:
        out += [(a, factor_generators(a)) for a in enumerate_abelian(m, n, S3_GENUS)]
    return out


def _key(a_text, f_text):
    """Canonical strings of a printed row, or ``None`` if it does not parse."""
    try:
        a = parse_abelian(a_text, lenient=True)
        g, f = parse_factor_pair(f_text, lenient=True)
    except ParseError:
        return None
    return format_abelian(a), f"[{g};{f}]"


@dataclass(frozen=True)
class RowResult:
    row: int
    status: str
    abelian: str
    factors: str
    errata: tuple = ()

    def to_json(self) -> dict:
        return {"row": self.row, "status": self.status, "abelian": self.abelian,
                "factors": self.factors, "errata": list(self.errata)}


@dataclass(frozen=True)
class TableComparison:
    rows: tuple
    unlisted: tuple = field(default=())  # (abelian, factors) strings

    @property
    def counts(self) -> dict:
        out = {MATCH: 0, ERRATA: 0, MISMATCH: 0}
        for r in self.rows:
            out[r.status] += 1
        return out

    @property
    def enumerated(self) -> int:
        return sum(1 for r in self.rows if r.status != MISMATCH) + len(self.unlisted)

    def to_json(self) -> dict:
        return {"rows": [r.to_json() for r in self.rows],
                "unlisted": [{"abelian": a, "factors": f} for a, f in self.unlisted],
                "counts": self.counts, "enumerated": self.enumerated}


def compare_s3(golden=None) -> TableComparison:
    golden = golden if golden is not None else load_golden()
    found = {(format_abelian(a), str(fp)) for a, fp in s3_classes()}
    claimed = set()
    rows = []
    for row in golden["rows"]:
        printed = _key(row["printed_abelian"], row["printed_factors"])
        corrected = (row["abelian"], row["factors"])
        if printed in found and not row["errata"]:
            status, key = MATCH, printed
        elif corrected in found:
            status, key = ERRATA, corrected
        else:
            status, key = MISMATCH, corrected
        if status != MISMATCH:
            claimed.add(key)
        rows.append(RowResult(row["row"], status, key[0], key[1],
                              tuple(e["kind"] for e in row["errata"])))
    unlisted = tuple(sorted(found - claimed))
    return TableComparison(tuple(rows), unlisted)
