"""Structured pass/fail records shared by every check."""

from __future__ import annotations

import json
import math
import zlib
from dataclasses import dataclass, field
from typing import Any

import numpy as np


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one check.

    ``max_residual`` is a float for numerical checks and 0 or a count of
    failing cases for exact ones (tolerance 0). ``topic`` is a short tag
    naming the construction the check belongs to; it is serialized under
    the ``paper_section`` key of the report schema.
    """

    context: str
    check: str
    passed: bool
    max_residual: float = 0.0
    tolerance: float = 0.0
    samples: int = 0
    seed: int | None = None
    topic: str = ""
    details: dict = field(default_factory=dict)
    invariant: Any = None

    def __bool__(self) -> bool:
        return self.passed

    def to_json_dict(self) -> dict:
        body = {
            "context": self.context,
            "check": self.check,
            "samples": self.samples,
            "seed": self.seed,
            "max_residual": _json_number(self.max_residual),
            "tolerance": self.tolerance,
            "pass": bool(self.passed),
            "paper_section": self.topic,
        }
        if self.invariant is not None:
            body["invariant"] = _jsonable(self.invariant)
        if self.details:
            body["details"] = _jsonable(self.details)
        return body

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return (f"[{verdict}] {self.context} :: {self.check} "
                f"(max_residual={self.max_residual:.3g}, tol={self.tolerance:g}, n={self.samples})")


def _json_number(x):
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        return str(x)
    return x


def _jsonable(obj):
    from fractions import Fraction

    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (bool, int, str)) or obj is None:
        return obj
    if isinstance(obj, float):
        return _json_number(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, np.generic):
        return _jsonable(obj.item())
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in obj]
        return sorted(items, key=repr) if isinstance(obj, (set, frozenset)) else items
    return str(obj)


def exact_report(context: str, check: str, failures: list, topic: str, samples: int,
                 **details) -> VerificationReport:
    """Report for a zero-tolerance check: pass iff no failing case was collected."""
    if failures:
        details = dict(details, first_failure=failures[0])
    return VerificationReport(context=context, check=check, passed=not failures,
                              max_residual=float(len(failures)), tolerance=0.0,
                              samples=samples, topic=topic, details=details)


def make_rng(seed: int | None, stream: str = "") -> "np.random.Generator":
    """Independent generator per (seed, stream name); same inputs give the same draws."""
    base = 0 if seed is None else int(seed)
    return np.random.default_rng(np.random.SeedSequence([base, zlib.crc32(stream.encode())]))
