"""Finite field context for F_{q^2}.

The heavy lifting is done by ``galois``: it builds the exp/log lookup
tables for the field and compiles vectorised ufuncs over them. This module
only fixes the parameters, validates them, and offers a few helpers that
the rest of the package needs repeatedly.
"""

from functools import lru_cache
from math import comb

import galois
import numpy as np

from src.config import config
from src.exceptions import FieldError
from src.logger import logger


class FieldContext:
    """Immutable description of F_{q^2}.

    Canonical element order is the integer representation galois uses,
    so ``elements`` is sorted and deterministic across runs.
    """

    def __init__(self, q: int):
        self.q = q
        self.order = q * q
        self.GF = galois.GF(self.order)
        self.p = int(self.GF.characteristic)
        self.elements = self.GF.elements

    def __repr__(self) -> str:
        return f"FieldContext(q={self.q}, GF({self.order}))"

    @property
    def zero(self):
        return self.GF(0)

    @property
    def one(self):
        return self.GF(1)

    def __call__(self, values):
        return self.GF(values)

    def zeros(self, shape):
        return self.GF.Zeros(shape)

    def integer(self, n: int):
        """Image of the integer n in the prime subfield."""
        return self.GF(n % self.p)

    def binomial(self, n: int, k: int):
        """Binomial coefficient C(n, k) reduced into the field."""
        if k < 0 or k > n:
            return self.GF(0)
        return self.integer(comb(n, k))

    def random(self, size, rng: np.random.Generator, nonzero: bool = False):
        low = 1 if nonzero else 0
        return self.GF(rng.integers(low, self.order, size=size))

    def sort_key(self, element) -> int:
        return int(element)


@lru_cache(maxsize=16)
def make_field(q: int) -> FieldContext:
    """Build (or fetch the cached) context for F_{q^2}."""
    if not isinstance(q, (int, np.integer)) or q < 2 or not galois.is_prime_power(int(q)):
        raise FieldError(f"q must be a prime power, got {q!r}")
    q = int(q)
    if q * q > config.field.max_order:
        raise FieldError(
            f"field size q^2={q * q} exceeds the supported bound {config.field.max_order}"
        )
    ctx = FieldContext(q)
    logger.debug(f"Built {ctx}")
    return ctx
