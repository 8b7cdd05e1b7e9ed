"""Small modular-arithmetic primitives used to build and evaluate plans."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import ConfigurationError, ContractViolation


@dataclass(frozen=True)
class Modulus:
    """A static modulus ``q`` and the bit count ``n`` of its residues.

    ``n`` is ``ceil(log2(q))``, so a power of two ``q = 2**m`` gets ``n = m``.
    """

    q: int

    def __post_init__(self) -> None:
        if isinstance(self.q, bool) or not isinstance(self.q, int):
            raise ConfigurationError(f"modulus must be an integer, got {self.q!r}")
        if self.q < 2:
            raise ConfigurationError(f"modulus must be >= 2, got {self.q}")

    @property
    def n(self) -> int:
        return (self.q - 1).bit_length()

    @property
    def is_power_of_two(self) -> bool:
        return self.q & (self.q - 1) == 0


def as_modulus(q: int | Modulus) -> Modulus:
    return q if isinstance(q, Modulus) else Modulus(q)


def conditional_subtract(value: int, q: int) -> int:
    """Reduce ``value`` in ``[0, 2q)`` to ``[0, q)`` with one select.

    Both candidates are formed and the comparison bit picks one, so the
    work done does not depend on which branch is taken.
    """
    if not 0 <= value < 2 * q:
        raise ContractViolation(f"conditional_subtract needs 0 <= value < {2 * q}, got {value}")
    return (value, value - q)[value >= q]


def pow2_mod(i: int, q: int) -> int:
    """Return ``2**i mod q`` by repeated doubling; no operand exceeds ``2q``."""
    if q < 2:
        raise ConfigurationError(f"modulus must be >= 2, got {q}")
    if i < 0:
        raise ContractViolation(f"exponent must be nonnegative, got {i}")
    r = 1
    for _ in range(i):
        r = conditional_subtract(r << 1, q)
    return r
