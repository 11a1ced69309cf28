"""Structured pass/fail reports, run configuration, and the seeded RNG policy.

Reports serialize to JSON with sorted keys so that two runs with the same
RunConfig produce byte-identical output except for the elapsed_ms fields.

Randomness policy (frozen): every random draw comes from numpy's Philox
counter-based bit generator keyed by the 64-bit run seed and a per-use stream
index, so any shard can regenerate any instance independently of processing
order.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any

import numpy as np

PASS = "pass"
FAIL = "fail"

#: Stream index bases for Philox keys; one block per randomized check.
STREAM_CLAIM1 = 1 << 20
STREAM_CLAIM2 = 2 << 20
STREAM_CHAIN = 3 << 20
STREAM_KR_SAMPLES = 4 << 20
STREAM_FOLKLORE_SAMPLES = 5 << 20

_MASK64 = (1 << 64) - 1


def rng_for(seed: int, stream: int) -> np.random.Generator:
    """Philox generator keyed by (seed, stream); independent of call order."""
    key = np.array([seed & _MASK64, stream & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


@dataclass
class VerificationReport:
    """One check's outcome: status, parameters, integer counts, witnesses.

    Witness entries are graph6 strings or lists of "u-v" edge strings; a
    failing report must carry at least one witness.
    """

    check_name: str
    status: str
    parameters: dict[str, Any]
    counts: dict[str, int]
    witnesses: list[Any]
    elapsed_ms: int

    def __post_init__(self) -> None:
        if self.status not in (PASS, FAIL):
            raise ValueError(f"status must be {PASS!r} or {FAIL!r}")
        if self.status == FAIL and not self.witnesses:
            raise ValueError("failing report must carry a witness")
        for key, value in self.counts.items():
            if not isinstance(value, int) or isinstance(value, bool):
                raise ValueError(f"count {key!r} is not an integer")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict[str, Any]:
        return {
            "check_name": self.check_name,
            "status": self.status,
            "parameters": self.parameters,
            "counts": self.counts,
            "witnesses": self.witnesses,
            "elapsed_ms": self.elapsed_ms,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "VerificationReport":
        return cls(
            check_name=data["check_name"],
            status=data["status"],
            parameters=dict(data["parameters"]),
            counts={k: int(v) for k, v in data["counts"].items()},
            witnesses=list(data["witnesses"]),
            elapsed_ms=int(data["elapsed_ms"]),
        )

    def summary_line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        keys = ", ".join(f"{k}={v}" for k, v in sorted(self.counts.items()))
        return f"[{flag}] {self.check_name} ({self.elapsed_ms} ms) {keys}"


def dumps_reports(reports: list[VerificationReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], sort_keys=True, indent=2)


def loads_reports(text: str) -> list[VerificationReport]:
    return [VerificationReport.from_dict(d) for d in json.loads(text)]


def strip_timing(data: Any) -> Any:
    """Copy of parsed JSON with every elapsed_ms removed, for byte comparisons."""
    if isinstance(data, dict):
        return {k: strip_timing(v) for k, v in data.items() if k != "elapsed_ms"}
    if isinstance(data, list):
        return [strip_timing(v) for v in data]
    return data


class Stopwatch:
    def __enter__(self) -> "Stopwatch":
        self._start = time.perf_counter()
        return self

    def __exit__(self, *exc) -> None:
        self.elapsed_ms = int((time.perf_counter() - self._start) * 1000)


DEFAULT_GUARDS: dict[str, int] = {
    "oracle_n": 6,         # brute-force maximal-triangle-free scan
    "enumeration_n": 9,    # backtracking enumeration / growth table
    "hujter_tuza_m": 8,    # exhaustive Hujter-Tuza verification
    "folklore_n": 12,      # full folklore family enumeration
}


@dataclass
class RunConfig:
    """Seed, shard count, per-operation guards, and output path for a run."""

    seed: int = 1
    shards: int = 1
    guards: dict[str, int] = field(default_factory=dict)
    output_path: str | None = None

    def __post_init__(self) -> None:
        if self.shards < 1:
            raise ValueError("shards must be positive")
        unknown = set(self.guards) - set(DEFAULT_GUARDS)
        if unknown:
            raise ValueError(f"unknown guard keys: {sorted(unknown)}")
        merged = dict(DEFAULT_GUARDS)
        merged.update(self.guards)
        self.guards = merged

    def guard(self, key: str) -> int:
        return self.guards[key]
