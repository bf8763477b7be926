"""Axiom reports shared by the checkers and the command line."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any

from .exact_scalars import CycNumber, RootOfUnity


@dataclass
class Failure:
    axiom: str
    witness: tuple
    lhs: Any
    rhs: Any


@dataclass
class AxiomReport:
    suite: str
    instances: int = 0
    failures: list[Failure] = field(default_factory=list)
    elapsed: float = 0.0
    info: dict = field(default_factory=dict)
    _start: float = field(default_factory=time.perf_counter, repr=False)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, axiom: str, witness: tuple, lhs, rhs, equal: bool | None = None) -> bool:
        self.instances += 1
        ok = (lhs == rhs) if equal is None else equal
        if not ok:
            self.failures.append(Failure(axiom, tuple(witness), lhs, rhs))
        return ok

    def finish(self) -> "AxiomReport":
        self.elapsed = time.perf_counter() - self._start
        return self

    def to_json(self, timing: bool = False) -> dict:
        # elapsed time is opt-in so that repeated runs give identical output
        out = {
            "suite": self.suite,
            "passed": self.passed,
            "instances": self.instances,
            "failures": [
                {"axiom": f.axiom, "witness": [_plain(w) for w in f.witness],
                 "lhs": _plain(f.lhs), "rhs": _plain(f.rhs)}
                for f in self.failures
            ],
        }
        if self.info:
            out["info"] = {k: _plain(v) for k, v in self.info.items()}
        if timing:
            out["elapsed"] = round(self.elapsed, 6)
        return out

    def summary(self) -> str:
        state = "PASS" if self.passed else f"FAIL ({len(self.failures)} failures)"
        return f"{self.suite}: {state}, {self.instances} instances"


def scalar_json(x: CycNumber) -> dict:
    z = complex(x)
    d = x.to_json()
    exp = x.root_exponent()
    if exp is not None:
        d["root"] = {"k": exp[0], "N": exp[1]}
    d["float"] = [round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0]
    return d


def _plain(v):
    if isinstance(v, RootOfUnity):
        v = v.cyc
    if isinstance(v, CycNumber):
        return scalar_json(v)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (int, float, str, bool)) or v is None:
        return v
    return str(v)
