"""Cyclotomic polynomials, divisor multisets and the polynomiality test.

Convention: Phi_n is monic, Phi_1 = q - 1, and prod_{d | n} Phi_d = q**n - 1.
Since 1 - q**a = -(q**a - 1), a polynomial quotient with #A - #B = s equals
(-1)**s times the product of Phi_d over the delta multiset.
"""
from __future__ import annotations

import math
import threading
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Tuple

from .polyq import IntPoly, QuotientSpec, poly_divexact, product


@dataclass(frozen=True)
class FactorProfile:
    n: int
    prime_factors: Tuple[int, ...]
    omega: int
    radical: int


@lru_cache(maxsize=None)
def factorize(n: int) -> Tuple[Tuple[int, int], ...]:
    """Prime factorization of n by trial division, as ((p, e), ...)."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def factor_profile(n: int) -> FactorProfile:
    primes = tuple(p for p, _ in factorize(n))
    return FactorProfile(n=n, prime_factors=primes, omega=len(primes), radical=math.prod(primes))


def omega(n: int) -> int:
    return len(factorize(n))


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == ((n, 1),)


def euler_phi(n: int) -> int:
    out = n
    for p, _ in factorize(n):
        out -= out // p
    return out


@lru_cache(maxsize=None)
def divisors(n: int) -> Tuple[int, ...]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return tuple(sorted(divs))


_cyclo_lock = threading.Lock()
_cyclo_cache: dict = {}


def cyclotomic_poly(n: int) -> IntPoly:
    """The monic n-th cyclotomic polynomial (memoized)."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    cached = _cyclo_cache.get(n)
    if cached is not None:
        return cached
    prof = factor_profile(n)
    if n == 1:
        poly = IntPoly((-1, 1))
    elif prof.omega == 1 and n == prof.radical:
        poly = IntPoly((1,) * n)
    elif n != prof.radical:
        poly = cyclotomic_poly(prof.radical).substitute_power(n // prof.radical)
    else:
        # squarefree, n = m * p: Phi_m(q**p) = Phi_m(q) * Phi_n(q)
        p = prof.prime_factors[-1]
        m = n // p
        base = cyclotomic_poly(m)
        poly = poly_divexact(base.substitute_power(p), base)
        assert poly is not None
    with _cyclo_lock:
        _cyclo_cache.setdefault(n, poly)
    return poly


def divisor_multiset(M: Iterable[int]) -> Tuple[int, ...]:
    """Sorted multiset union of the divisor sets D(m) for m in M."""
    out = []
    for m in M:
        if m < 1:
            raise ValueError("entries must be positive")
        out.extend(divisors(m))
    return tuple(sorted(out))


def polynomiality_delta(spec: QuotientSpec) -> Optional[Tuple[int, ...]]:
    """Delta = U D(a) minus U D(b) if U D(b) is a sub-multiset of U D(a), else None."""
    if len(spec.A) < len(spec.B):
        raise ValueError("polynomiality test needs #A >= #B")
    count = Counter()
    for a in spec.A:
        count.update(divisors(a))
    for b in spec.B:
        for d in divisors(b):
            c = count[d]
            if not c:
                return None
            count[d] = c - 1
    return tuple(sorted(count.elements()))


def delta_product(delta: Iterable[int]) -> IntPoly:
    """prod of Phi_d over a multiset of indices."""
    return product(cyclotomic_poly(d) for d in delta)


@dataclass(frozen=True)
class CGFForm:
    alpha: int
    beta: int
    cyclo_indices: Tuple[int, ...]

    def expand(self) -> IntPoly:
        body = delta_product(self.cyclo_indices)
        return IntPoly((0,) * self.beta + tuple(self.alpha * c for c in body.coeffs))


def _primes_upto(n: int):
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [p for p in range(n + 1) if sieve[p]]


def _phi_candidates(max_degree: int):
    """All d >= 2 with phi(d) <= max_degree, largest first."""
    primes = _primes_upto(max_degree + 1)
    found = []

    def walk(i, d, ph):
        if d > 1:
            found.append(d)
        for j in range(i, len(primes)):
            p = primes[j]
            pe, phe = p, ph * (p - 1)
            if phe > max_degree:
                break
            while phe <= max_degree:
                walk(j + 1, d * pe, phe)
                pe *= p
                phe *= p

    walk(0, 1, 1)
    return sorted(found, reverse=True)


def cgf_form(p: IntPoly) -> Optional[CGFForm]:
    """Write p as alpha * q**beta * prod Phi_d, or None if p is not a CGF."""
    if p.is_zero() or min(p.coeffs) < 0:
        raise ValueError("cgf_form needs a nonzero polynomial with non-negative coefficients")
    beta = next(k for k, c in enumerate(p.coeffs) if c)
    rest = IntPoly(p.coeffs[beta:])
    indices = []
    # Phi_1 never divides a non-negative nonzero polynomial (p(1) > 0)
    for d in _phi_candidates(int(rest.degree)):
        if rest.degree == 0:
            break
        if euler_phi(d) > rest.degree:
            continue
        phi = cyclotomic_poly(d)
        while True:
            quot = poly_divexact(rest, phi)
            if quot is None:
                break
            indices.append(d)
            rest = quot
    if rest.degree != 0 or rest.coeffs[0] <= 0:
        return None
    return CGFForm(alpha=rest.coeffs[0], beta=beta, cyclo_indices=tuple(sorted(indices)))
