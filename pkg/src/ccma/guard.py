"""Enumeration guard: refuse desk-scale-unfriendly exhaustive loops."""

import os

from .errors import GuardExceeded

DEFAULT_LIMIT = 1 << 20
ENV_VAR = "CCMA_GUARD_LIMIT"


def guard_limit(override=None):
    """Active guard limit: explicit override > env var > default."""
    if override is not None:
        return int(override)
    env = os.environ.get(ENV_VAR)
    if env:
        return int(env)
    return DEFAULT_LIMIT


def check_guard(size, what, limit=None):
    lim = guard_limit(limit)
    if size > lim:
        raise GuardExceeded(what, size, lim)
    return size
