import logging
import os
from typing import FrozenSet, Iterable, Optional

GUARD_ENV_VAR = "PY_DIGRAPHPACKING_GUARD"
DEFAULT_ENUMERATION_GUARD = 20

VertexSet = FrozenSet[int]


class GuardExceededError(RuntimeError):
    """Raised when an exhaustive search is asked to enumerate subsets of too many vertices."""

    def __init__(self, n: int, guard: int, what: str = "exact solver", from_environment: bool = True):
        self.n = n
        self.guard = guard
        self.what = what
        self.from_environment = from_environment
        hint = f"set {GUARD_ENV_VAR} to raise it" if from_environment else "fixed limit"
        super().__init__(f"{what} guard exceeded: order {n} > guard {guard} ({hint})")

    # Worker processes send exceptions back pickled
    def __reduce__(self):
        return self.__class__, (self.n, self.guard, self.what, self.from_environment)


class DigraphParseError(ValueError):

    def __init__(self, line_number: int, message: str):
        self.line_number = line_number
        self.message = message
        super().__init__(f"line {line_number}: {message}")

    def __reduce__(self):
        return self.__class__, (self.line_number, self.message)


def get_enumeration_guard() -> int:
    """
    Largest order the exact (subset enumeration) solvers accept.

    :return: Value of PY_DIGRAPHPACKING_GUARD if set, otherwise 20.
    """

    raw = os.environ.get(GUARD_ENV_VAR)
    if raw is None or raw.strip() == "":
        return DEFAULT_ENUMERATION_GUARD

    try:
        guard = int(raw)
    except ValueError:
        raise ValueError(f"{GUARD_ENV_VAR} must be an integer, got {raw!r}")
    if guard < 0:
        raise ValueError(f"{GUARD_ENV_VAR} must be non-negative, got {guard}")

    logging.debug(f"Enumeration guard overridden from environment: {guard}")
    return guard


def check_guard(n: int, guard: Optional[int] = None, what: str = "exact solver",
                from_environment: Optional[bool] = None) -> None:
    """
    :param guard: Explicit limit; the environment guard when None.
    :param from_environment: Whether the limit follows PY_DIGRAPHPACKING_GUARD, for the error hint.
        Defaults to `guard is None`.
    """

    limit = get_enumeration_guard() if guard is None else guard
    if n > limit:
        raise GuardExceededError(n, limit, what, guard is None if from_environment is None else from_environment)


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> VertexSet:
    members = []
    v = 0
    while mask:
        if mask & 1:
            members.append(v)
        mask >>= 1
        v += 1
    return frozenset(members)


def iter_bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
