"""Instance families from the positivity conjectures and batch scanners for them.

gk:      binom(n, k)_q / binom(n, l)_q, canonical region 1 <= l < k <= n/2.
stanton: prod (1 - q**(m+i))**a_i / (1 - q**i)**a_i with m >= n = len(a).
"""
from __future__ import annotations

import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import product
from typing import Iterable, Iterator, Optional, Tuple

from .certify import CertifyConfig, certify_nonnegativity
from .cyclotomic import polynomiality_delta
from .polyq import CapExceeded, QuotientSpec


@dataclass(frozen=True)
class GKInstance:
    n: int
    k: int
    l: int

    def normalized(self) -> "GKInstance":
        n, k, l = self.n, self.k, self.l
        if not 0 <= l <= k <= n:
            raise ValueError(f"need 0 <= l <= k <= n, got {(n, k, l)}")
        return GKInstance(n, min(k, n - k), min(l, n - l))

    @property
    def key(self) -> str:
        return f"gk:{self.n},{self.k},{self.l}"


@dataclass(frozen=True)
class StantonInstance:
    m: int
    a: Tuple[int, ...]

    def __post_init__(self):
        a = tuple(int(x) for x in self.a)
        if any(x < 0 for x in a) or self.m < 0:
            raise ValueError("m and the exponents a_i must be non-negative")
        while a and a[-1] == 0:
            a = a[:-1]
        object.__setattr__(self, "a", a)

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def key(self) -> str:
        return f"stanton:{self.m};{','.join(map(str, self.a))}"


def _factorial_multiset(n: int) -> Counter:
    return Counter(range(1, n + 1))


def gk_spec(inst: GKInstance) -> QuotientSpec:
    """[l]! [n-l]! / ([k]! [n-k]!) with common factors cancelled."""
    inst = inst.normalized()
    n, k, l = inst.n, inst.k, inst.l
    num = _factorial_multiset(l) + _factorial_multiset(n - l)
    den = _factorial_multiset(k) + _factorial_multiset(n - k)
    common = num & den
    return QuotientSpec(tuple((num - common).elements()), tuple((den - common).elements()))


def stanton_spec(inst: StantonInstance) -> QuotientSpec:
    A, B = [], []
    for i, ai in enumerate(inst.a, 1):
        A += [inst.m + i] * ai
        B += [i] * ai
    return QuotientSpec(tuple(A), tuple(B))


def corollary_bound(family: str, params) -> bool:
    """Sufficient bound under which the fast path settles the instance.

    gk: params = (n, k, l); stanton: params = (m, n).
    """
    if family == "gk":
        n, k, l = params
        return 2 * k * ((k - 1) // 2) + k - l < n
    if family == "stanton":
        m, n = params
        return 2 * n * (n // 2) - 2 < m
    raise ValueError(f"unknown family {family!r}")


def is_symmetric(a: Iterable[int]) -> bool:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a == a[::-1]


@dataclass
class ScanRecord:
    family: str
    key: str
    params: dict
    spec: Tuple[Tuple[int, ...], Tuple[int, ...]]
    polynomial: bool
    verdict: Optional[bool]
    certificates: Tuple[str, ...] = ()
    min_coefficient: Optional[int] = None
    negative: Optional[Tuple[int, int]] = None  # (exponent, value) when verdict is False
    corollary: bool = False
    fast_path: bool = False
    symmetric: Optional[bool] = None
    error: Optional[str] = None
    wall_us: int = 0

    def as_dict(self, timings: bool = False) -> dict:
        out = asdict(self)
        out["spec"] = {"A": list(self.spec[0]), "B": list(self.spec[1])}
        out["certificates"] = list(self.certificates)
        out["negative"] = list(self.negative) if self.negative else None
        if not timings:
            del out["wall_us"]
        return out


def gk_instances(n_max: int, n_min: int = 1) -> Iterator[GKInstance]:
    for n in range(n_min, n_max + 1):
        for k in range(2, n // 2 + 1):
            for l in range(1, k):
                yield GKInstance(n, k, l)


def stanton_instances(n_max: int, m_max: int, a_max: int) -> Iterator[StantonInstance]:
    """Sequences with a_n >= 1 and m from n to m_max."""
    for n in range(1, n_max + 1):
        for head in product(range(a_max + 1), repeat=n - 1):
            for last in range(1, a_max + 1):
                a = head + (last,)
                for m in range(n, m_max + 1):
                    yield StantonInstance(m, a)


def evaluate_instance(inst, config: CertifyConfig = CertifyConfig()) -> ScanRecord:
    t0 = time.perf_counter_ns()
    if isinstance(inst, GKInstance):
        family = "gk"
        spec = gk_spec(inst)
        params = {"n": inst.n, "k": inst.k, "l": inst.l}
        cor = corollary_bound("gk", (inst.n, inst.k, inst.l))
        sym = None
    else:
        family = "stanton"
        spec = stanton_spec(inst)
        params = {"m": inst.m, "a": list(inst.a)}
        cor = corollary_bound("stanton", (inst.m, inst.n))
        sym = is_symmetric(inst.a)
    rec = ScanRecord(
        family=family,
        key=inst.key,
        params=params,
        spec=(spec.A, spec.B),
        polynomial=False,
        verdict=None,
        corollary=cor,
        symmetric=sym,
    )
    if len(spec.A) >= len(spec.B) and polynomiality_delta(spec) is not None:
        rec.polynomial = True
        try:
            report = certify_nonnegativity(spec, config)
        except CapExceeded as exc:
            rec.error = str(exc)
        else:
            rec.verdict = report.nonnegative
            rec.certificates = report.kinds()
            rec.fast_path = report.find("SelmerFastPath") is not None
            neg = report.find("OracleNegative")
            if neg is not None:
                rec.negative = (neg.exponent, neg.value)
            ok = report.find("OracleNonNegative")
            if ok is not None:
                rec.min_coefficient = ok.min_coefficient
            elif neg is not None:
                rec.min_coefficient = None
    rec.wall_us = (time.perf_counter_ns() - t0) // 1000
    return rec


def _evaluate_packed(args):
    return evaluate_instance(*args)


def scan_family(
    family: str,
    *,
    n_max: int,
    m_max: int = 0,
    a_max: int = 0,
    config: CertifyConfig = CertifyConfig(),
    jobs: int = 1,
    skip: Iterable[str] = (),
) -> Iterator[ScanRecord]:
    """Yield one ScanRecord per instance in canonical order.

    ``skip`` holds instance keys already processed (resuming a scan).
    With jobs > 1 instances are evaluated in worker processes; output order
    and content are the same as a serial run, apart from wall times.
    """
    if family == "gk":
        instances = gk_instances(n_max)
    elif family == "stanton":
        instances = stanton_instances(n_max, m_max, a_max)
    else:
        raise ValueError(f"unknown family {family!r}")
    skip = set(skip)
    todo = (inst for inst in instances if inst.key not in skip)
    if jobs <= 1:
        for inst in todo:
            yield evaluate_instance(inst, config)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(_evaluate_packed, ((inst, config) for inst in todo), chunksize=16)


@dataclass
class ScanSummary:
    instances: int = 0
    polynomial: int = 0
    certified_nonnegative: int = 0
    undetermined: int = 0
    fast_path: int = 0
    violations: list = field(default_factory=list)
    corollary_misses: list = field(default_factory=list)  # bound holds, spec polynomial, no fast path
    errors: list = field(default_factory=list)

    def add(self, rec: ScanRecord) -> None:
        self.instances += 1
        if rec.error:
            self.errors.append(rec.key)
        if not rec.polynomial:
            return
        self.polynomial += 1
        self.fast_path += rec.fast_path
        if rec.verdict is True:
            self.certified_nonnegative += 1
        elif rec.verdict is False:
            self.violations.append(rec.key)
        else:
            self.undetermined += 1
        if rec.corollary and not rec.fast_path:
            self.corollary_misses.append(rec.key)
