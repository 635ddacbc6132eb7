"""Verification reports and serialized instance corpora.

Reports are plain JSON-serializable records; a report reloaded from disk
compares equal to the original (bit-identical float round-trip through
repr-based JSON).
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .config import Config
from .errors import DimensionError

__all__ = ["IdentityResult", "VerificationReport", "InstanceCorpus"]


@dataclass(frozen=True)
class IdentityResult:
    """Aggregate of one identity over a batch of instances."""

    name: str
    instances: int
    failures: int
    max_residual: float

    @property
    def passed(self) -> bool:
        return self.failures == 0


@dataclass
class VerificationReport:
    suite: str
    seed: int
    identities: list[IdentityResult]
    config: dict
    wall_time: float
    version: str = "0.1.0"

    @property
    def instances(self) -> int:
        return sum(r.instances for r in self.identities)

    @property
    def failures(self) -> int:
        return sum(r.failures for r in self.identities)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    @property
    def max_residual(self) -> float:
        return max((r.max_residual for r in self.identities), default=0.0)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "passed": self.passed,
            "instances": self.instances,
            "failures": self.failures,
            "max_residual": self.max_residual,
            "wall_time": self.wall_time,
            "version": self.version,
            "config": self.config,
            "identities": [asdict(r) for r in self.identities],
        }

    def write(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=1, sort_keys=True))

    @classmethod
    def read(cls, path: str | Path) -> "VerificationReport":
        raw = json.loads(Path(path).read_text())
        return cls(
            suite=raw["suite"],
            seed=raw["seed"],
            identities=[
                IdentityResult(
                    name=r["name"],
                    instances=r["instances"],
                    failures=r["failures"],
                    max_residual=r["max_residual"],
                )
                for r in raw["identities"]
            ],
            config=raw["config"],
            wall_time=raw["wall_time"],
            version=raw.get("version", "unknown"),
        )

    def summary_lines(self) -> list[str]:
        lines = []
        for r in self.identities:
            status = "pass" if r.passed else "FAIL"
            lines.append(
                f"[{status}] {self.suite}/{r.name}: {r.instances} instances, "
                f"{r.failures} failures, max residual {r.max_residual:.3e}"
            )
        status = "PASS" if self.passed else "FAIL"
        lines.append(
            f"{status} suite {self.suite}: {self.instances} instances in "
            f"{self.wall_time:.1f} s"
        )
        return lines


@dataclass
class InstanceCorpus:
    """Seeded, regenerable corpus of randomized instances.

    Only the generator parameters and the seed are authoritative; the
    serialized instances exist for audit and are reproduced bit-identically
    from (seed, spec) by ``phaseweyl.corpus.generate``.
    """

    seed: int
    spec: dict
    instances: list = field(default_factory=list)

    def __post_init__(self):
        n_min = int(self.spec.get("n_min", 1))
        n_max = int(self.spec.get("n_max", n_min))
        if n_min < 1 or n_max < n_min:
            raise DimensionError(f"invalid dimension range [{n_min}, {n_max}]")

    def to_dict(self) -> dict:
        return {"seed": self.seed, "spec": self.spec, "instances": self.instances}

    def write(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=1, sort_keys=True))

    @classmethod
    def read(cls, path: str | Path) -> "InstanceCorpus":
        raw = json.loads(Path(path).read_text())
        return cls(seed=raw["seed"], spec=raw["spec"], instances=raw["instances"])


def timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - t0


def make_report(suite: str, cfg: Config, results: list[IdentityResult], wall: float) -> VerificationReport:
    return VerificationReport(
        suite=suite,
        seed=cfg.seed,
        identities=results,
        config=cfg.as_dict(),
        wall_time=wall,
    )
