import logging
import time
from collections.abc import Callable
from functools import wraps
from typing import ParamSpec, TypeVar

from .constants import SERVICE_NAME

P = ParamSpec('P')
R = TypeVar('R')

logger = logging.getLogger(SERVICE_NAME)


def logged_stage(stage: str) -> Callable[[Callable[P, R]], Callable[P, R]]:
    """
    Log how long a builder or verifier took.
    The wrapped function's own messages carry the counts.
    """

    def decorator(func: Callable[P, R]) -> Callable[P, R]:
        @wraps(func)
        def wrapper(*args: P.args, **kwargs: P.kwargs) -> R:
            started = time.perf_counter()
            result = func(*args, **kwargs)
            logger.debug(f'{stage} finished in {time.perf_counter() - started:.3f}s')
            return result

        return wrapper

    return decorator


def wrap_residue(value: int, modulus: int) -> int:
    """Residue of value modulo modulus, taken in 1..modulus instead of 0..modulus-1."""
    return (value - 1) % modulus + 1
