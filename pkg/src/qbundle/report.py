"""Suite outcome records shared by every verification routine."""
from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass
class Case:
    name: str
    status: str
    lhs: str = ""
    rhs: str = ""
    witness: str = ""
    ms: float = 0.0

    def __post_init__(self):
        if self.status not in (PASS, FAIL, INCONCLUSIVE):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == FAIL and not self.witness:
            self.witness = "lhs != rhs"

    def as_dict(self, timing=True):
        return {
            "name": self.name,
            "status": self.status,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "witness": self.witness,
            "ms": round(self.ms, 3) if timing else 0,
        }


@dataclass
class SuiteReport:
    suite: str
    cases: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def add(self, name, ok, lhs="", rhs="", witness="", ms=0.0):
        if ok is True:
            status = PASS
        elif ok is False:
            status = FAIL
        else:
            status = ok
        case = Case(name, status, str(lhs), str(rhs), str(witness) if status != PASS else "", ms)
        self.cases.append(case)
        return case

    def extend(self, other):
        self.cases.extend(other.cases)
        for k, v in other.notes.items():
            self.notes.setdefault(k, v)
        return self

    @property
    def passed(self):
        return all(c.status == PASS for c in self.cases)

    @property
    def failed(self):
        return [c for c in self.cases if c.status == FAIL]

    @property
    def inconclusive(self):
        return [c for c in self.cases if c.status == INCONCLUSIVE]

    def counts(self):
        out = {PASS: 0, FAIL: 0, INCONCLUSIVE: 0}
        for c in self.cases:
            out[c.status] += 1
        return out

    def pattern(self):
        """(name, status) pairs; used to compare runs at different q."""
        return [(c.name, c.status) for c in self.cases]

    def as_dict(self, timing=True):
        d = {"suite": self.suite, "cases": [c.as_dict(timing) for c in self.cases]}
        if self.notes:
            d["notes"] = {k: self.notes[k] for k in sorted(self.notes)}
        return d

    def __repr__(self):
        c = self.counts()
        return f"SuiteReport({self.suite!r}, pass={c[PASS]}, fail={c[FAIL]}, inconclusive={c[INCONCLUSIVE]})"


@contextmanager
def stopwatch():
    box = [0.0]
    t0 = time.perf_counter()
    try:
        yield box
    finally:
        box[0] = (time.perf_counter() - t0) * 1000.0
