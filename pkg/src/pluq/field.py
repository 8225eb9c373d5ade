"""Arithmetic modulo a word-size prime, tuned for delayed modular reduction.

A ``PrimeField`` fixes the modulus and the numpy storage strategy used by the
dense kernels: residues are kept canonical in ``[0, p)`` and row/column dot
products are accumulated without intermediate reduction as long as the partial
sums provably fit the accumulator (float64 mantissa for small p, int64
otherwise), reducing once at the end.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

# Default ceiling on the modulus: with p < 2**26 a dot product of length
# ~2**11 accumulates exactly in a signed 64-bit integer.
DEFAULT_MODULUS_BOUND = 1 << 26
# Hard ceiling even with allow_large_modulus: a single product must fit int64.
ABSOLUTE_MODULUS_BOUND = 1 << 31

_F64_EXACT = 1 << 53
_I64_EXACT = (1 << 63) - 1


def is_prime(p: int) -> bool:
    """Trial division up to sqrt(p); cheap for word-size moduli."""
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d <= isqrt(p):
        if p % d == 0:
            return False
        d += 2
    return True


def inverse_mod(a: int, p: int) -> int:
    """Multiplicative inverse of a mod p via the extended Euclid algorithm."""
    a %= p
    if a == 0:
        raise ZeroDivisionError("inverse of 0 requested; upstream pivot logic is broken")
    old_r, r = a, p
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    return old_s % p


class PrimeField:
    """The field Z/pZ for a prime p, with accumulation bounds for the kernels.

    ``dtype`` is float64 when every dot product up to length 2**13 is exact in
    the 53-bit mantissa (p < ~2**20), which lets the kernels run on BLAS; for
    larger p storage falls back to int64 and products are chunked.
    """

    __slots__ = ("p", "dtype", "max_accumulate")

    def __init__(self, p: int, *, allow_large_modulus: bool = False):
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"modulus must be a prime integer, got {p!r}")
        bound = ABSOLUTE_MODULUS_BOUND if allow_large_modulus else DEFAULT_MODULUS_BOUND
        if p >= bound:
            raise ValueError(
                f"modulus {p} exceeds the bound {bound}; pass allow_large_modulus=True "
                f"for p up to 2**31 (per-product reduction)"
            )
        self.p = p
        sq = (p - 1) ** 2
        if sq * 8192 <= _F64_EXACT:
            self.dtype = np.float64
            self.max_accumulate = max(1, _F64_EXACT // sq - 1) if sq else _F64_EXACT
        else:
            self.dtype = np.int64
            self.max_accumulate = max(1, _I64_EXACT // sq - 1) if sq else _I64_EXACT

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    # -- scalar operations --------------------------------------------------

    def element(self, value: int) -> "FieldElement":
        return FieldElement(int(value) % self.p, self)

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def inv(self, a: int) -> int:
        return inverse_mod(a, self.p)

    def dot_accumulate(self, u, v, counts=None) -> int:
        """Canonical residue of sum(u_i * v_i) with delayed reduction.

        One reduction is charged for the whole sum; if the length exceeds the
        overflow-safe bound the sum is chunked and each extra flush charges one
        more reduction.
        """
        uu = [e.value if isinstance(e, FieldElement) else int(e) % self.p for e in u]
        vv = [e.value if isinstance(e, FieldElement) else int(e) % self.p for e in v]
        if len(uu) != len(vv):
            raise ValueError(f"dot product length mismatch: {len(uu)} vs {len(vv)}")
        chunk = self.max_accumulate
        acc = 0
        reductions = 0
        for lo in range(0, len(uu), chunk):
            acc = sum((a * b for a, b in zip(uu[lo : lo + chunk], vv[lo : lo + chunk])), acc) % self.p
            reductions += 1
        if not uu:
            acc %= self.p
            reductions = 1
        if counts is not None:
            counts.field_mul += len(uu)
            counts.field_add += max(0, len(uu) - 1)
            counts.modular_reductions += reductions
        return acc

    # -- numpy helpers ------------------------------------------------------

    def asarray(self, values) -> np.ndarray:
        """Validated canonical-residue array in this field's storage dtype."""
        arr = np.asarray(values)
        if arr.size and (np.any(arr < 0) or np.any(arr >= self.p)):
            raise ValueError(f"entries must be canonical residues in [0, {self.p})")
        if arr.dtype != self.dtype:
            arr = arr.astype(self.dtype)
        return arr

    def matmul_mod(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Exact (a @ b) % p, chunking the inner dimension when it could overflow."""
        k = a.shape[-1]
        if k == 0:
            return np.zeros((a.shape[0], b.shape[-1]), dtype=self.dtype)
        if k <= self.max_accumulate:
            return (a @ b) % self.p
        out = np.zeros((a.shape[0], b.shape[-1]), dtype=self.dtype)
        step = self.max_accumulate
        for lo in range(0, k, step):
            out += a[:, lo : lo + step] @ b[lo : lo + step]
            out %= self.p
        return out


@dataclass(frozen=True)
class FieldElement:
    """Canonical residue 0 <= value < p with operator sugar for small-scale use.

    The dense kernels work on raw arrays; this wrapper exists for the scalar
    API and the brute-force oracles.
    """

    value: int
    field: PrimeField

    def __post_init__(self):
        if not 0 <= self.value < self.field.p:
            raise ValueError(f"{self.value} is not a canonical residue mod {self.field.p}")

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.field.p != self.field.p:
            raise ValueError(f"mismatched moduli: {self.field.p} vs {other.field.p}")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field.add(self.value, other.value), self.field)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field.sub(self.value, other.value), self.field)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field.mul(self.value, other.value), self.field)

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field.neg(self.value), self.field)

    def inv(self) -> "FieldElement":
        return FieldElement(self.field.inv(self.value), self.field)

    def __int__(self) -> int:
        return self.value
