"""
Check results and suite reports.

A report is deterministic given its inputs: checks are kept in insertion
order (suites add them in a fixed order), JSON keys are sorted and wall time
is only written when explicitly requested.
"""
import json
import logging
from dataclasses import dataclass, field

logger = logging.getLogger(__name__)

REPORT_SCHEMA = "qlab-report/1"

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass
class CheckResult:
    name: str
    status: str
    residual: str = "0"
    witness: str = None
    reason: str = None
    seconds: float = 0.0

    @property
    def passed(self):
        return self.status == PASS

    def to_dict(self, timings=False):
        data = {"name": self.name, "status": self.status, "residual": self.residual}
        if self.witness is not None:
            data["witness"] = self.witness
        if self.reason is not None:
            data["reason"] = self.reason
        if timings:
            data["seconds"] = round(self.seconds, 6)
        return data


@dataclass
class SuiteReport:
    suite: str
    parameters: dict
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def add(self, check):
        self.checks.append(check)
        logger.debug(f"{self.suite}: {check.name} -> {check.status} (residual {check.residual})")
        return check

    def extend(self, checks):
        for check in checks:
            self.add(check)

    @property
    def passed(self):
        return all(c.status != FAIL for c in self.checks)

    def counts(self):
        return {status: sum(1 for c in self.checks if c.status == status) for status in (PASS, FAIL, SKIP)}

    def to_dict(self, timings=False):
        return {
            "schema": REPORT_SCHEMA,
            "suite": self.suite,
            "parameters": self.parameters,
            "passed": self.passed,
            "counts": self.counts(),
            "checks": [c.to_dict(timings) for c in self.checks],
            "data": self.data,
        }

    def to_json(self, timings=False):
        return json.dumps(self.to_dict(timings), sort_keys=True, indent=2) + "\n"

    def to_text(self, timings=False):
        lines = [f"suite {self.suite} {json.dumps(self.parameters, sort_keys=True)}"]
        for c in self.checks:
            line = f"  [{c.status.upper():4}] {c.name}  residual={c.residual}"
            if c.witness:
                line += f"  witness={c.witness}"
            if c.reason:
                line += f"  ({c.reason})"
            if timings:
                line += f"  {c.seconds:.3f}s"
            lines.append(line)
        counts = self.counts()
        lines.append(f"{'PASSED' if self.passed else 'FAILED'}: {counts[PASS]} pass, {counts[FAIL]} fail, {counts[SKIP]} skip")
        return "\n".join(lines) + "\n"


def exact_check(name, lhs, rhs):
    """Compare two Operators exactly; the residual is '0' or the first offending entry."""
    difference = lhs.first_difference(rhs)
    if difference is None:
        return CheckResult(name, PASS)
    i, j, value = difference
    return CheckResult(name, FAIL, residual=value.serialize(),
                       witness=f"({lhs.row_labels[i]}, {lhs.col_labels[j]})")


def float_check(name, residual, tol):
    status = PASS if residual <= tol else FAIL
    # round-off below 1e-12 depends on BLAS summation order; keep reports stable
    text = "<1e-12" if residual < 1e-12 else f"{residual:.1e}"
    return CheckResult(name, status, residual=text)


def bool_check(name, ok, witness=None):
    return CheckResult(name, PASS if ok else FAIL, witness=None if ok else witness)


def skip(name, reason):
    return CheckResult(name, SKIP, residual="-", reason=reason)
