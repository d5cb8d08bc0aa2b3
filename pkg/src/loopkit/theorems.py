"""Mechanical verification of companion-nuclearity facts on a loop.

Each ``verify_*`` function recomputes the pseudoautomorphism pairs it
needs (reports must be self-contained audit trails, so nothing is taken
from the caller) and returns a :class:`VerificationReport`.  Structural
preconditions are enforced as typed errors; :func:`verify_loop` turns
those into first-class PRECONDITION entries so a corpus sweep never
silently skips a loop.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .core import LoopTable
from .identities import builtin, holds
from .nuclei import NucleusKind, nucleus
from .pseudo import (
    NotWCIPError,
    PreconditionError,
    enumerate_pseudo,
    has_wcip,
    is_automorphism,
    is_pseudo,
)

__all__ = [
    "CheckResult",
    "VerificationReport",
    "NucleusNotTrivialError",
    "NotCommutativeIPError",
    "verify_right_companions_nuclear",
    "verify_left_companions",
    "verify_companion_identity",
    "verify_middle_right_nuclei",
    "verify_trivial_left_nucleus",
    "verify_commutative_ip",
    "squaring_is_permutation",
    "CHECKS",
    "CHECK_GROUPS",
    "resolve_check_names",
    "verify_loop",
    "format_report",
    "report_records",
    "records_to_jsonl",
]


class NucleusNotTrivialError(PreconditionError):
    def __init__(self):
        super().__init__("left nucleus is not trivial")


class NotCommutativeIPError(PreconditionError):
    def __init__(self, reason: str):
        super().__init__(f"not a commutative inverse property loop: {reason}")


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # "PASS" | "FAIL" | "PRECONDITION"
    witness: dict | None = None
    note: str = ""

    def __post_init__(self):
        if self.status == "FAIL" and not self.witness:
            raise ValueError(f"FAIL entry {self.name!r} must carry a witness")


@dataclass(frozen=True)
class VerificationReport:
    loop_id: str
    checks: tuple = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.status == "PASS" for c in self.checks)


def _require_wcip(L):
    if not has_wcip(L):
        raise NotWCIPError()


def _left_nucleus_counterexample(L, c):
    """First (x, y) with (c*x)*y != c*(x*y), or None."""
    t = L.table
    for x in range(L.n):
        for y in range(L.n):
            if t[t[c][x]][y] != t[c][t[x][y]]:
                return x, y
    return None


def _automorphism_counterexample(L, sigma):
    t = L.table
    s = sigma.images
    for x in range(L.n):
        for y in range(L.n):
            if s[t[x][y]] != t[s[x]][s[y]]:
                return x, y
    return None


def squaring_is_permutation(L: LoopTable) -> bool:
    """True iff x -> x*x is a bijection (unique square roots)."""
    seen = [False] * L.n
    for x in range(L.n):
        s = L.table[x][x]
        if seen[s]:
            return False
        seen[s] = True
    return True


def verify_right_companions_nuclear(L: LoopTable, loop_id: str = "loop") -> VerificationReport:
    """Every right-pseudoautomorphism companion lies in the left nucleus.

    Requires the weak commutative inverse property.
    """
    _require_wcip(L)
    n_left = set(nucleus(L, NucleusKind.LEFT))
    for pair in enumerate_pseudo(L, NucleusKind.RIGHT):
        if pair.companion not in n_left:
            x, y = _left_nucleus_counterexample(L, pair.companion)
            witness = {
                "sigma": list(pair.sigma.images),
                "c": pair.companion,
                "x": x,
                "y": y,
            }
            return VerificationReport(
                loop_id, (CheckResult("right-companions-nuclear", "FAIL", witness),)
            )
    return VerificationReport(loop_id, (CheckResult("right-companions-nuclear", "PASS"),))


def verify_left_companions(L: LoopTable, loop_id: str = "loop") -> VerificationReport:
    """For every left pair (sigma, c): c^{-1} is also a companion of sigma
    and c*c lies in the left nucleus.  Requires WCIP."""
    _require_wcip(L)
    n_left = set(nucleus(L, NucleusKind.LEFT))
    inv_check: CheckResult | None = None
    sq_check: CheckResult | None = None
    for pair in enumerate_pseudo(L, NucleusKind.LEFT):
        c = pair.companion
        if inv_check is None and not is_pseudo(L, NucleusKind.LEFT, pair.sigma, L.inverse(c)):
            inv_check = CheckResult(
                "left-companion-inverse",
                "FAIL",
                {"sigma": list(pair.sigma.images), "c": c, "c_inv": L.inverse(c)},
            )
        if sq_check is None and L.table[c][c] not in n_left:
            x, y = _left_nucleus_counterexample(L, L.table[c][c])
            sq_check = CheckResult(
                "left-companion-square-nuclear",
                "FAIL",
                {"sigma": list(pair.sigma.images), "c": c, "x": x, "y": y},
            )
        if inv_check is not None and sq_check is not None:
            break
    if inv_check is None:
        inv_check = CheckResult("left-companion-inverse", "PASS")
    if sq_check is None:
        sq_check = CheckResult("left-companion-square-nuclear", "PASS")
    return VerificationReport(loop_id, (inv_check, sq_check))


def verify_companion_identity(L: LoopTable, loop_id: str = "loop") -> VerificationReport:
    """y\\c == c*y^{-1} for every right-pseudoautomorphism companion c.

    This is the workhorse identity behind companion nuclearity; checking
    it separately catches bugs the set-level checks could mask.
    """
    _require_wcip(L)
    comps = sorted({p.companion for p in enumerate_pseudo(L, NucleusKind.RIGHT)})
    for c in comps:
        for y in range(L.n):
            if L.ldiv(y, c) != L.mul(c, L.inverse(y)):
                witness = {"c": c, "y": y}
                return VerificationReport(
                    loop_id, (CheckResult("companion-identity", "FAIL", witness),)
                )
    return VerificationReport(loop_id, (CheckResult("companion-identity", "PASS"),))


def verify_middle_right_nuclei(L: LoopTable, loop_id: str = "loop") -> VerificationReport:
    """Middle and right nuclei coincide on WCIP loops."""
    _require_wcip(L)
    nm = nucleus(L, NucleusKind.MIDDLE)
    nr = nucleus(L, NucleusKind.RIGHT)
    if nm != nr:
        diff = sorted(set(nm) ^ set(nr))
        witness = {"element": diff[0], "middle": list(nm), "right": list(nr)}
        return VerificationReport(
            loop_id, (CheckResult("middle-right-nuclei-equal", "FAIL", witness),)
        )
    return VerificationReport(loop_id, (CheckResult("middle-right-nuclei-equal", "PASS"),))


def verify_trivial_left_nucleus(L: LoopTable, loop_id: str = "loop") -> VerificationReport:
    """On a WCIP loop with trivial left nucleus, every right
    pseudoautomorphism is an automorphism; when squaring is additionally a
    bijection, so is every left pseudoautomorphism."""
    _require_wcip(L)
    if nucleus(L, NucleusKind.LEFT) != (0,):
        raise NucleusNotTrivialError()
    checks = []
    bad = None
    for pair in enumerate_pseudo(L, NucleusKind.RIGHT):
        if not is_automorphism(L, pair.sigma):
            x, y = _automorphism_counterexample(L, pair.sigma)
            bad = {"sigma": list(pair.sigma.images), "c": pair.companion, "x": x, "y": y}
            break
    checks.append(
        CheckResult("right-pseudos-automorphic", "PASS")
        if bad is None
        else CheckResult("right-pseudos-automorphic", "FAIL", bad)
    )
    if squaring_is_permutation(L):
        bad = None
        for pair in enumerate_pseudo(L, NucleusKind.LEFT):
            if not is_automorphism(L, pair.sigma):
                x, y = _automorphism_counterexample(L, pair.sigma)
                bad = {"sigma": list(pair.sigma.images), "c": pair.companion, "x": x, "y": y}
                break
        checks.append(
            CheckResult("left-pseudos-automorphic", "PASS")
            if bad is None
            else CheckResult("left-pseudos-automorphic", "FAIL", bad)
        )
    else:
        checks[0] = CheckResult(
            checks[0].name,
            checks[0].status,
            checks[0].witness,
            note="squaring is not a bijection; left clause not applicable",
        )
    return VerificationReport(loop_id, tuple(checks))


def verify_commutative_ip(L: LoopTable, loop_id: str = "loop") -> VerificationReport:
    """On a commutative inverse property loop, all three nuclei coincide
    and every pseudoautomorphism of every kind is an automorphism."""
    if not holds(L, builtin("COMM")):
        raise NotCommutativeIPError("not commutative")
    if not (holds(L, builtin("LIP")) and holds(L, builtin("RIP"))):
        raise NotCommutativeIPError("inverse property fails")
    checks = []
    nuclei_by_kind = {k: nucleus(L, k) for k in NucleusKind}
    vals = set(nuclei_by_kind.values())
    if len(vals) != 1:
        witness = {k.value: list(v) for k, v in nuclei_by_kind.items()}
        checks.append(CheckResult("nuclei-coincide", "FAIL", witness))
    else:
        checks.append(CheckResult("nuclei-coincide", "PASS"))
    bad = None
    for kind in NucleusKind:
        for pair in enumerate_pseudo(L, kind):
            if not is_automorphism(L, pair.sigma):
                x, y = _automorphism_counterexample(L, pair.sigma)
                bad = {
                    "kind": kind.value,
                    "sigma": list(pair.sigma.images),
                    "c": pair.companion,
                    "x": x,
                    "y": y,
                }
                break
        if bad:
            break
    checks.append(
        CheckResult("all-pseudos-automorphic", "PASS")
        if bad is None
        else CheckResult("all-pseudos-automorphic", "FAIL", bad)
    )
    return VerificationReport(loop_id, tuple(checks))


# -- corpus runner --------------------------------------------------------------

CHECKS = {
    "right-companions-nuclear": verify_right_companions_nuclear,
    "left-companions": verify_left_companions,
    "companion-identity": verify_companion_identity,
    "middle-right-nuclei": verify_middle_right_nuclei,
    "trivial-left-nucleus": verify_trivial_left_nucleus,
    "commutative-ip": verify_commutative_ip,
}

CHECK_GROUPS = {
    "main": ("right-companions-nuclear", "left-companions"),
    "all": tuple(CHECKS),
}


def resolve_check_names(names) -> tuple:
    out: list[str] = []
    for name in names:
        expanded = CHECK_GROUPS.get(name, (name,))
        for n in expanded:
            if n not in CHECKS:
                raise KeyError(f"unknown check {n!r}")
            if n not in out:
                out.append(n)
    return tuple(out)


def verify_loop(L: LoopTable, loop_id: str = "loop", names=("main",)) -> VerificationReport:
    """Run the named checks, recording precondition failures as entries."""
    checks: list[CheckResult] = []
    for name in resolve_check_names(names):
        try:
            checks.extend(CHECKS[name](L, loop_id).checks)
        except PreconditionError as err:
            checks.append(CheckResult(name, "PRECONDITION", None, str(err)))
    return VerificationReport(loop_id, tuple(checks))


# -- serialization ----------------------------------------------------------------


def _format_value(v) -> str:
    if isinstance(v, (list, tuple)):
        return ",".join(str(x) for x in v)
    return str(v)


def format_report(report: VerificationReport) -> str:
    """One line per check: ``loopid check STATUS [witness] [(note)]``."""
    lines = []
    for ch in report.checks:
        parts = [report.loop_id, ch.name, ch.status]
        if ch.witness:
            parts.append(" ".join(f"{k}={_format_value(v)}" for k, v in ch.witness.items()))
        if ch.note:
            parts.append(f"({ch.note})")
        lines.append(" ".join(parts))
    return "\n".join(lines)


def report_records(report: VerificationReport) -> list[dict]:
    return [
        {
            "loop": report.loop_id,
            "check": ch.name,
            "status": ch.status,
            "witness": ch.witness,
            "note": ch.note,
        }
        for ch in report.checks
    ]


def records_to_jsonl(reports) -> str:
    lines = []
    for rep in reports:
        for rec in report_records(rep):
            lines.append(json.dumps(rec, sort_keys=True))
    return "\n".join(lines) + ("\n" if lines else "")
