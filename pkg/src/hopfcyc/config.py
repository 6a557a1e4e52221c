"""Run configuration shared by the CLI, the golden corpus and the scripts."""
from __future__ import annotations

import os
from dataclasses import asdict, dataclass, field


class ConfigError(ValueError):
    pass


def env_threads():
    raw = os.environ.get("HOPFCYC_THREADS", "1")
    try:
        n = int(raw)
    except ValueError as e:
        raise ConfigError(f"HOPFCYC_THREADS must be a positive integer, got {raw!r}") from e
    if n < 1:
        raise ConfigError(f"HOPFCYC_THREADS must be >= 1, got {n}")
    return n


@dataclass
class RunConfig:
    command: str
    hopf: str = "builtin:z2"
    D: int | None = None
    dtot: int = 8
    n_max: int = 3
    n: int = 2
    q: str | None = None
    delta: str | None = None
    sigma: str | None = None
    output: str | None = None
    fmt: str = "json"
    threads: int = 1
    seed: int = 0
    checks: tuple = ()
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("D", "dtot", "n_max", "n"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise ConfigError(f"{name} must be >= 0, got {v}")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")
        if self.fmt not in ("json", "csv"):
            raise ConfigError(f"format must be json or csv, got {self.fmt!r}")

    def record(self):
        """The part of the config that determines the report (threads and output path do not)."""
        d = asdict(self)
        for k in ("output", "threads", "fmt"):
            d.pop(k)
        d["checks"] = list(self.checks)
        return d
