"""Pass/fail bookkeeping for verification suites."""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import VerificationFailure
from .exact import fmt

SCHEMA = "mirec/1"


def _plain(v):
    if isinstance(v, Fraction):
        return fmt(v)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    return v


@dataclass
class Check:
    name: str
    status: str            # "pass", "fail" or "range-advisory"
    detail: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.status != "fail"


class Report:
    """Ordered list of named checks with an overall verdict."""

    def __init__(self, title, **meta):
        self.title = title
        self.meta = meta
        self.checks = []

    def check(self, name, passed, **detail):
        self.checks.append(Check(name, "pass" if passed else "fail", detail))
        return passed

    def advisory(self, name, **detail):
        self.checks.append(Check(name, "range-advisory", detail))

    def extend(self, other, prefix=""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.detail))
        return self

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def raise_on_failure(self):
        bad = self.failures()
        if bad:
            raise VerificationFailure(f"{self.title}: {bad[0].name} failed",
                                      witness={"check": bad[0].name, **_plain(bad[0].detail)})
        return self

    def as_dict(self):
        return {
            "schema": SCHEMA,
            "title": self.title,
            "meta": _plain(self.meta),
            "ok": self.ok,
            "checks": [{"name": c.name, "status": c.status, "detail": _plain(c.detail)}
                       for c in self.checks],
        }
