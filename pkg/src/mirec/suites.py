"""Verification suites driven by a job configuration.

Each suite takes a :class:`JobConfig` and returns a list of reports. Library
errors raised inside a suite become a failed check carrying the error code,
so a run always produces a complete report.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import re

from .bridge import verify_bridge
from .closure import verify_closure
from .errors import MirecError
from .exact import Poly, fmt, rational_sqrt
from .family import ParameterSet
from .multi import MultiIndexed, index_set, verify_family
from .rconst import (conjecture_poly, extract_table, grid_table, pochhammer_factor_check,
                     verify_relations, xpoly)
from .recvar import VarRecurrence, verify_shift_identity, verify_variable_recurrence
from .report import Report

SUITES = ("family", "var", "const", "closure", "bridge")

_RATIONAL = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


class ConfigError(ValueError):
    """A configuration that cannot be run (bad value or mode mismatch)."""


def parse_rational(text):
    """Exact rational from ``p`` or ``p/q``; rejects unreduced fractions."""
    text = str(text).strip()
    m = _RATIONAL.match(text)
    if not m:
        raise ConfigError(f"not a rational: {text!r}")
    num = int(m.group(1))
    if m.group(2) is None:
        return Fraction(num)
    den = int(m.group(2))
    if den == 0:
        raise ConfigError(f"zero denominator: {text!r}")
    value = Fraction(num, den)
    if value.denominator != den:
        raise ConfigError(f"fraction not in lowest terms: {text!r}")
    return value


def parse_list(text, item=parse_rational):
    if isinstance(text, (list, tuple)):
        return [item(t) for t in text]
    text = str(text).strip()
    if not text:
        return []
    return [item(t) for t in text.split(",")]


@dataclass
class JobConfig:
    family: str
    params: list
    q: Fraction | None = None
    N: int | None = None
    D: tuple = ()
    Y: list = field(default_factory=lambda: [Fraction(1)])
    X: list | None = None
    nmax: int = 4
    seed: int = 0

    def __post_init__(self):
        if self.family not in ("R", "qR"):
            raise ConfigError(f"family must be R or qR, not {self.family!r}")
        if self.family == "qR" and self.q is None:
            raise ConfigError("qR needs --q")
        if self.family == "R" and self.q is not None:
            raise ConfigError("R takes no q")
        want = (3, 4) if self.N is not None else (4,)
        if len(self.params) not in want:
            raise ConfigError("give a,b,c,d (or b,c,d with N)")
        try:
            self.D = index_set(self.D)
        except (ValueError, MirecError) as exc:
            raise ConfigError(str(exc)) from exc
        if self.nmax < 0:
            raise ConfigError("nmax must be non-negative")

    @property
    def finite(self):
        return self.N is not None

    def lam(self, **override):
        vals = dict(zip("bcd", self.params[-3:]))
        vals.update(override)
        try:
            if self.finite:
                lam = ParameterSet.finite(self.family, vals["b"], vals["c"], vals["d"], self.N, self.q)
                if len(self.params) == 4 and self.params[0] != lam.a:
                    raise ConfigError(f"finite mode needs a = {fmt(lam.a)}")
                return lam
            a = override.get("a", self.params[0])
            return ParameterSet(self.family, a, vals["b"], vals["c"], vals["d"], self.q)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    @property
    def Y_poly(self):
        return Poly(self.Y)

    def as_dict(self):
        out = {"family": self.family, "params": [fmt(v) for v in self.params],
               "N": self.N if self.finite else "indeterminate", "D": list(self.D),
               "Y": [fmt(v) for v in self.Y], "nmax": self.nmax, "seed": self.seed}
        if self.q is not None:
            out["q"] = fmt(self.q)
        if self.X is not None:
            out["X"] = [fmt(v) for v in self.X]
        return out


def _x_and_band(cfg, fam):
    if cfg.X is not None:
        X = Poly(cfg.X)
        return X, X.degree
    return xpoly(cfg.D, cfg.Y_poly, cfg.lam(), fam)


def suite_family(cfg):
    return [verify_family(cfg.D, cfg.lam(), cfg.nmax if not cfg.finite else None)]


def suite_var(cfg):
    if cfg.finite:
        raise ConfigError("the var suite needs indeterminate parameters")
    lam = cfg.lam()
    fam = MultiIndexed(cfg.D, lam)
    rec = VarRecurrence(lam)
    out = [verify_variable_recurrence(cfg.D, n, lam, fam, rec) for n in range(cfg.nmax + 1)]
    out.append(verify_shift_identity(lam, min(len(cfg.D) + 1, 3), cfg.nmax))
    return out


def suite_const(cfg):
    lam = cfg.lam()
    fam = MultiIndexed(cfg.D, lam)
    X, L = _x_and_band(cfg, fam)
    if cfg.finite:
        table = grid_table(fam, X, L)
        rep = Report("lattice expansion", D=list(fam.D), L=L, **lam.as_dict())
        if lam.N >= L:
            for n, row in extract_table(fam, X, L, lam.N - L).rows.items():
                rep.check(f"lattice row equals polynomial row n={n}", table.rows[n] == row)
        return [rep, verify_relations(fam, X, L, table)]
    table = extract_table(fam, X, L, cfg.nmax)
    out = [verify_relations(fam, X, L, table, finite=False)]
    K = 2 * L
    if cfg.X is None and cfg.nmax >= K + 2:
        _, rep = conjecture_poly(L, lam, table, range(K + 1), range(K + 1, cfg.nmax + 1))
        out.append(rep)
    if cfg.X is None:
        out.append(pochhammer_factor_check(cfg.D, cfg.Y_poly, lam, range(min(cfg.nmax, 2) + 1)))
    return out


def suite_closure(cfg):
    if not cfg.finite:
        raise ConfigError("the closure suite needs finite parameters (--N)")
    lam = cfg.lam()
    fam = MultiIndexed(cfg.D, lam)
    X, L = _x_and_band(cfg, fam)
    return [verify_closure(cfg.D, X, L, lam, fam)]


def suite_bridge(cfg):
    return [verify_bridge(cfg.lam(), index_sets=(cfg.D,), nmax=cfg.nmax)]


RUNNERS = {"family": suite_family, "var": suite_var, "const": suite_const,
           "closure": suite_closure, "bridge": suite_bridge}


def compatible(suite, cfg):
    """None when ``suite`` can run on ``cfg``, else the reason it cannot."""
    if suite == "var" and cfg.finite:
        return "the var suite needs indeterminate parameters"
    if suite == "closure" and not cfg.finite:
        return "the closure suite needs finite parameters (--N)"
    if suite == "bridge" and cfg.family == "qR":
        d = cfg.params[-1]
        M = len(cfg.D)
        if rational_sqrt(d) is None or rational_sqrt(d * cfg.q ** M) is None:
            return "the bridge suite needs rational square roots of d and d q^M"
    return None


def run_suite(suite, cfg):
    """Reports of one suite; library errors become failed checks."""
    try:
        return RUNNERS[suite](cfg)
    except MirecError as exc:
        rep = Report(suite, **cfg.as_dict())
        rep.check(f"{suite}: {exc.code}", False, code=exc.code, message=str(exc))
        return [rep]
