"""Dense exact-integer polynomials and the brute-force quotient expansion.

Coefficient lists are plain Python ints, index = exponent, so products of
cyclotomic factors never overflow.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate
from typing import Iterable, Optional, Sequence, Tuple

DEFAULT_DEGREE_CAP = 1_000_000


class CapExceeded(Exception):
    """Raised when an expansion would exceed the configured degree cap."""

    def __init__(self, degree: int, cap: int):
        super().__init__(f"expected degree {degree} exceeds degree cap {cap}")
        self.degree = degree
        self.cap = cap


def _trim(coeffs: Sequence[int]) -> Tuple[int, ...]:
    end = len(coeffs)
    while end and coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[:end])


@dataclass(frozen=True)
class IntPoly:
    """Polynomial in q with integer coefficients; ``coeffs[k]`` multiplies q**k.

    The zero polynomial has empty ``coeffs`` and degree ``-inf``.
    """

    coeffs: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(tuple(int(c) for c in self.coeffs)))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPoly":
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> float:
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> int:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __iter__(self):
        return iter(self.coeffs)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        return poly_mul(self, other)

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self), len(other))
        return IntPoly(tuple(self[k] + other[k] for k in range(n)))

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def substitute_power(self, e: int) -> "IntPoly":
        """Return p(q**e)."""
        if e < 1:
            raise ValueError("exponent must be positive")
        if not self.coeffs:
            return self
        out = [0] * ((len(self.coeffs) - 1) * e + 1)
        out[::e] = self.coeffs
        return IntPoly(out)

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"


ONE = IntPoly((1,))
ZERO = IntPoly(())


@dataclass(frozen=True)
class QuotientSpec:
    """The rational function prod(1 - q**a for a in A) / prod(1 - q**b for b in B)."""

    A: Tuple[int, ...] = ()
    B: Tuple[int, ...] = ()

    def __post_init__(self):
        A = tuple(sorted(int(a) for a in self.A))
        B = tuple(sorted(int(b) for b in self.B))
        if any(x < 1 for x in A + B):
            raise ValueError("quotient exponents must be positive integers")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def expected_degree(self) -> int:
        return sum(self.A) - sum(self.B)

    def reduced(self) -> "QuotientSpec":
        """Cancel exponents common to both sides; the rational function is unchanged."""
        from collections import Counter

        ca, cb = Counter(self.A), Counter(self.B)
        common = ca & cb
        return QuotientSpec(tuple((ca - common).elements()), tuple((cb - common).elements()))


def poly_mul(p: IntPoly, r: IntPoly) -> IntPoly:
    if p.is_zero() or r.is_zero():
        return ZERO
    if len(p) < len(r):
        p, r = r, p
    out = [0] * (len(p) + len(r) - 1)
    pc = p.coeffs
    # iterate over the sparser/shorter factor
    for j, c in enumerate(r.coeffs):
        if c == 0:
            continue
        for i, a in enumerate(pc, j):
            out[i] += a * c
    return IntPoly(out)


def poly_divexact(num: IntPoly, den: IntPoly) -> Optional[IntPoly]:
    """Exact quotient in Z[q], or None if ``den`` does not divide ``num``."""
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if num.is_zero():
        return ZERO
    if len(den) > len(num):
        return None
    rem = list(num.coeffs)
    d = den.coeffs
    lead = d[-1]
    dl = len(d) - 1
    quot = [0] * (len(rem) - dl)
    for k in range(len(quot) - 1, -1, -1):
        c = rem[k + dl]
        if c == 0:
            continue
        qk, r = divmod(c, lead)
        if r:
            return None
        quot[k] = qk
        for i, di in enumerate(d):
            if di:
                rem[k + i] -= qk * di
    if any(rem[:dl]):
        return None
    return IntPoly(quot)


def mul_one_minus_qpow(coeffs: list, a: int) -> list:
    """Multiply a coefficient list by (1 - q**a)."""
    out = list(coeffs) + [0] * a
    for k, c in enumerate(coeffs):
        out[k + a] -= c
    return out


def div_one_minus_qpow(coeffs: list, b: int) -> Optional[list]:
    """Divide a coefficient list by (1 - q**b); None when inexact.

    Dividing by (1 - q**b) is a running sum along each residue class mod b;
    the division is exact iff the last b running sums vanish.
    """
    n = len(coeffs)
    if n == 0:
        return []
    if n <= b:
        return None if any(coeffs) else []
    out = [0] * n
    for r in range(b):
        out[r::b] = accumulate(coeffs[r::b])
    if any(out[n - b:]):
        return None
    return out[: n - b]


def expand_quotient(spec: QuotientSpec, degree_cap: int = DEFAULT_DEGREE_CAP) -> Optional[IntPoly]:
    """Expand the quotient exactly; None when it is not a polynomial."""
    spec = spec.reduced()
    if len(spec.B) > len(spec.A):
        # pole of order #B - #A at q = 1
        return None
    degree = spec.expected_degree
    if degree < 0:
        return None
    if degree > degree_cap:
        raise CapExceeded(degree, degree_cap)
    coeffs = [1]
    for a in spec.A:
        coeffs = mul_one_minus_qpow(coeffs, a)
    for b in reversed(spec.B):
        coeffs = div_one_minus_qpow(coeffs, b)
        if coeffs is None:
            return None
    return IntPoly(coeffs)


def product(polys: Iterable[IntPoly]) -> IntPoly:
    out = ONE
    for p in polys:
        out = poly_mul(out, p)
    return out


def _require_nonzero(p: IntPoly) -> None:
    if p.is_zero():
        raise ValueError("zero polynomial has no coefficients to inspect")


def min_coefficient(p: IntPoly) -> int:
    _require_nonzero(p)
    return min(p.coeffs)


def max_abs_coeff(p: IntPoly) -> int:
    _require_nonzero(p)
    return max(abs(c) for c in p.coeffs)


def is_flat(p: IntPoly) -> bool:
    return max_abs_coeff(p) <= 1


def first_negative(p: IntPoly) -> Optional[Tuple[int, int]]:
    """(exponent, value) of the lowest-degree negative coefficient, if any."""
    for k, c in enumerate(p.coeffs):
        if c < 0:
            return k, c
    return None
