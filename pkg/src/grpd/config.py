"""Enumeration caps.

``GRPD_NODE_CAP`` in the environment overrides every cap below; it is
read at call time so tests and the CLI can set it per run.
"""

import os

from .errors import ConfigError

CYCLE_CAP = 10**6
NODE_CAP = 10**6
WITNESS_SAMPLE = 16
OMEGA_SAMPLE = 2


def _override():
    raw = os.environ.get("GRPD_NODE_CAP")
    if raw is None:
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"GRPD_NODE_CAP must be an integer, got {raw!r}") from None
    if value < 1:
        raise ConfigError("GRPD_NODE_CAP must be positive")
    return value


def cycle_cap() -> int:
    o = _override()
    return CYCLE_CAP if o is None else o


def node_cap() -> int:
    o = _override()
    return NODE_CAP if o is None else o
