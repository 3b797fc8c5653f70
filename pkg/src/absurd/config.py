"""Process-wide settings: the trial-division bound and the factoring budget.

Settings live in a context variable so threads and nested ``configure``
blocks each see a consistent, read-only snapshot.
"""
from __future__ import annotations

import os
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, replace

DEFAULT_PHAT = 1000
DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class Config:
    phat: int = DEFAULT_PHAT
    factor_budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.phat < 2:
            raise ValueError(f"phat must be >= 2, got {self.phat}")
        if self.factor_budget < 0:
            raise ValueError(f"factor budget must be >= 0, got {self.factor_budget}")

    @classmethod
    def from_env(cls, environ=None) -> Config:
        environ = os.environ if environ is None else environ
        return cls(
            phat=int(environ.get("ABSURD_PHAT", DEFAULT_PHAT)),
            factor_budget=int(environ.get("ABSURD_BUDGET", DEFAULT_BUDGET)),
        )


_current: ContextVar[Config] = ContextVar("absurd_config", default=Config())


def get_config() -> Config:
    return _current.get()


@contextmanager
def configure(config: Config | None = None, **changes):
    """Temporarily install ``config`` (or the current one with ``changes``)."""
    new = replace(config or _current.get(), **changes)
    token = _current.set(new)
    try:
        yield new
    finally:
        _current.reset(token)
