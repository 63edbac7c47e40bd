"""Machine-readable pass/fail reports for validation and property suites."""

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    residual: float | None = None
    tolerance: float | None = None
    detail: str = ""

    def as_dict(self):
        return {"name": self.name, "passed": self.passed,
                "residual": self.residual, "tolerance": self.tolerance,
                "detail": self.detail}


@dataclass
class CheckReport:
    checks: list = field(default_factory=list)

    def add(self, name, passed, residual=None, tolerance=None, detail=""):
        self.checks.append(CheckResult(name, bool(passed), residual, tolerance, detail))
        return self.checks[-1]

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def as_dict(self):
        return {"passed": self.passed, "checks": [c.as_dict() for c in self.checks]}

    def lines(self):
        out = []
        for c in self.checks:
            status = "pass" if c.passed else "FAIL"
            extra = ""
            if c.residual is not None:
                extra = f"  residual={c.residual:.3e}"
                if c.tolerance is not None:
                    extra += f" (tol {c.tolerance:.1e})"
            if c.detail:
                extra += f"  {c.detail}"
            out.append(f"[{status}] {c.name}{extra}")
        return out
