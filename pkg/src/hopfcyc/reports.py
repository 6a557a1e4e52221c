"""Report objects and deterministic JSON/CSV emission."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction


def qstr(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def qparse(s):
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise ValueError(f"rational must be a string 'p/q' or an integer, got {s!r}")
    return Fraction(s.strip())


def jsonable(x):
    if isinstance(x, Fraction):
        return qstr(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if hasattr(x, "__dataclass_fields__"):
        return jsonable(asdict(x))
    return repr(x)


def dumps(obj):
    return json.dumps(jsonable(obj), sort_keys=True, indent=2) + "\n"


@dataclass
class CohomologyReport:
    kind: str
    dims: dict
    truncation: dict
    exactness: str = "exact"
    source: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(v is True or (isinstance(v, dict) and v.get("ok", True)) for v in self.checks.values())

    def to_json(self):
        return dumps(self)

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["kind", "degree", "dim", "exactness", "truncation"])
        trunc = ";".join(f"{k}={v}" for k, v in sorted(self.truncation.items()))
        for deg in sorted(self.dims, key=lambda d: (str(type(d)), d)):
            w.writerow([self.kind, deg, self.dims[deg], self.exactness, trunc])
        return buf.getvalue()
