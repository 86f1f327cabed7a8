"""Plain result records and their JSON serialization.

All CLI output and all acceptance bookkeeping flow through the dataclasses
here, so the on-disk format lives in exactly one place.  Serialization is
deterministic: keys are sorted, floats use Python's shortest round-trip repr
(the ``json`` default), and the timestamp is optional so byte-identical
reruns are possible.
"""

from __future__ import annotations

import dataclasses
import json
import time
from dataclasses import dataclass, field
from typing import Any

SCHEMA_VERSION = 1


@dataclass
class CheckResult:
    """Outcome of one pointwise identity (or residual) check.

    ``convergence_order`` is the observed order between the two finest
    resolutions, or None when the residual sits at the rounding floor on both
    grids (``floored`` is then True and the order ratio is meaningless).
    """

    name: str
    scenario: str
    resolution: int
    max_residual: float
    passed: bool
    convergence_order: float | None = None
    coarse_resolution: int | None = None
    coarse_residual: float | None = None
    floored: bool = False
    tolerance: float | None = None
    min_order: float | None = None
    note: str = ""

    def to_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)


@dataclass
class IntegralReport:
    """Two sides of an integral identity on one compact surface."""

    formula: str
    scenario: str
    resolution: int
    lhs: float
    rhs: float
    residual: float
    relative_residual: float
    normalization: float
    passed: bool
    tolerance: float | None = None

    def to_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)


@dataclass
class HarnessReport:
    """Curvature comparison of a graph against the slice value of its base.

    For a genuine graph the report records the signed gap between the scalar
    curvature (Gauss curvature when n = 2) of the graph and of the slices of
    the same product, together with the grid point where the decisive sign
    was attained.  Constant graphs short-circuit to a slice report instead.
    """

    kind: str                      # "graph" | "slice"
    scenario: str
    epsilon: int
    dimension: int                 # hypersurface dimension n
    resolution: int
    gap_min: float
    gap_max: float
    witness_min: tuple[float, ...]
    witness_max: tuple[float, ...]
    expected_sign_ok: bool
    theta_range: tuple[float, float]
    detail: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        d = dataclasses.asdict(self)
        d["witness_min"] = list(self.witness_min)
        d["witness_max"] = list(self.witness_max)
        d["theta_range"] = list(self.theta_range)
        return d


@dataclass
class CompletenessVerdict:
    """Spacelike-bound bookkeeping for the Lorentzian radial graphs.

    ``sup_du_sq`` is the supremum of |Du|^2 over the whole graph, available in
    closed form (the gradient bound is monotone in the radius and converges to
    1 + 1/K).  ``sampled_max`` is the largest value actually attained on the
    sampled window, which must stay below the closed-form bound.
    """

    epsilon: int
    K: float | None
    sup_du_sq: float
    closed_form_value: float | None
    sampled_max: float
    sample_range: tuple[float, float]
    samples: int
    criterion_met: bool
    bound_respected: bool

    def to_dict(self) -> dict[str, Any]:
        d = dataclasses.asdict(self)
        d["sample_range"] = list(self.sample_range)
        return d


def make_envelope(command: str, config: dict[str, Any], results: list[Any],
                  passed: bool, timestamp: bool = True) -> dict[str, Any]:
    """Wrap a list of report dataclasses in the common output envelope."""
    body: dict[str, Any] = {
        "schema": SCHEMA_VERSION,
        "command": command,
        "config": config,
        "results": [r.to_dict() if hasattr(r, "to_dict") else r for r in results],
        "passed": bool(passed),
    }
    if timestamp:
        body["generated_at"] = time.strftime("%Y-%m-%dT%H:%M:%S", time.gmtime())
    return body


def dump_json(obj: dict[str, Any]) -> str:
    """Deterministic JSON encoding (sorted keys, trailing newline)."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
