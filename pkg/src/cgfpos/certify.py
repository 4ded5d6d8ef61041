"""Non-negativity certificates for polynomial quotients of q-integers.

Every certificate carries enough data for :func:`verify_certificate` to
re-check it without repeating the search that produced it.  The one
exception is ``HsopHolds``: the claim quantifies over all subsets, so the
verifier re-checks every subset with the plain semigroup routines instead
of the bitset search used here.
"""
from __future__ import annotations

import math
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import ClassVar, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .cyclotomic import divisors, factorize, is_prime, omega, polynomiality_delta
from .polyq import (
    DEFAULT_DEGREE_CAP,
    IntPoly,
    QuotientSpec,
    expand_quotient,
    first_negative,
)
from .semigroup import GeneratorSet, count_representable

LATTICE_MODES = ("nonneg-pkjoin", "nonneg-omega", "flat-omega")


# ---------------------------------------------------------------- certificates


@dataclass(frozen=True)
class NotPolynomial:
    kind: ClassVar[str] = "NotPolynomial"


@dataclass(frozen=True)
class HsopHolds:
    subsets_checked: int
    kind: ClassVar[str] = "HsopHolds"


@dataclass(frozen=True)
class HsopFails:
    witness: Tuple[int, ...]  # value set T taken from B
    index_count: int  # #I_T
    representable: int  # #(A in <T>)
    kind: ClassVar[str] = "HsopFails"

    @property
    def deficit(self) -> int:
        return self.index_count - self.representable


@dataclass(frozen=True)
class SelmerFastPath:
    bound: Optional[int]  # None when n <= 1: polynomiality alone suffices
    a1: Optional[int]
    kind: ClassVar[str] = "SelmerFastPath"


@dataclass(frozen=True)
class LatticePkJoin:
    blocks: Tuple[Tuple[int, int, int], ...]  # (p, k, d): block {p**k * e : e | d}
    kind: ClassVar[str] = "LatticePkJoin"


@dataclass(frozen=True)
class LatticeOmega:
    blocks: Tuple[Tuple[int, ...], ...]
    mode: str = "nonneg"
    kind: ClassVar[str] = "LatticeOmega"


@dataclass(frozen=True)
class DivisibilityBijection:
    pairing: Tuple[int, ...]  # B[j] divides A[pairing[j]]
    kind: ClassVar[str] = "DivisibilityBijection"


@dataclass(frozen=True)
class FlatnessLocal:
    blocks: Tuple[Tuple[int, ...], ...]
    kind: ClassVar[str] = "FlatnessLocal"


@dataclass(frozen=True)
class OracleNonNegative:
    min_coefficient: int
    kind: ClassVar[str] = "OracleNonNegative"


@dataclass(frozen=True)
class OracleNegative:
    exponent: int
    value: int
    kind: ClassVar[str] = "OracleNegative"


@dataclass(frozen=True)
class PolyaMultiplier:
    k: int
    kind: ClassVar[str] = "PolyaMultiplier"


Certificate = Union[
    NotPolynomial,
    HsopHolds,
    HsopFails,
    SelmerFastPath,
    LatticePkJoin,
    LatticeOmega,
    DivisibilityBijection,
    FlatnessLocal,
    OracleNonNegative,
    OracleNegative,
    PolyaMultiplier,
]

CERTIFICATE_TYPES = {
    cls.kind: cls
    for cls in (
        NotPolynomial,
        HsopHolds,
        HsopFails,
        SelmerFastPath,
        LatticePkJoin,
        LatticeOmega,
        DivisibilityBijection,
        FlatnessLocal,
        OracleNonNegative,
        OracleNegative,
        PolyaMultiplier,
    )
}

# kinds that on their own prove the quotient has non-negative coefficients
SUFFICIENT_KINDS = frozenset(
    {"SelmerFastPath", "LatticePkJoin", "LatticeOmega", "DivisibilityBijection", "HsopHolds", "OracleNonNegative"}
)


def certificate_to_dict(cert: Certificate) -> dict:
    out = {"kind": cert.kind}
    out.update(asdict(cert))
    return out


def _as_tuple(value):
    if isinstance(value, list):
        return tuple(_as_tuple(v) for v in value)
    return value


def certificate_from_dict(data: dict) -> Certificate:
    data = dict(data)
    kind = data.pop("kind", None)
    cls = CERTIFICATE_TYPES.get(kind)
    if cls is None:
        raise ValueError(f"unknown certificate kind {kind!r}")
    names = {f for f in cls.__dataclass_fields__ if f != "kind"}
    if set(data) != names:
        raise ValueError(f"{kind}: expected fields {sorted(names)}, got {sorted(data)}")
    return cls(**{k: _as_tuple(v) for k, v in data.items()})


# ------------------------------------------------------------- HSOP condition


def _close_under(reach: int, v: int, top: int, mask: int) -> int:
    # closure of a bitset under x -> x + v, restricted to [0, top]
    shift = v
    while shift <= top:
        reach |= (reach << shift) & mask
        shift <<= 1
    return reach


def _value_subset_search(A: Sequence[int], B: Sequence[int], need):
    """Search value sets T of B for #(A in <T>) < need(#I_T).

    ``need`` must be non-decreasing.  Returns (failure or None, nodes visited),
    failure = (T, #I_T, count).  A subtree is cut once every element of A
    is representable at the required level for the largest possible #I.
    """
    values = sorted(set(B))
    mult = Counter(B)
    a_counts = sorted(Counter(A).items())
    top = max(A) if A else 0
    mask = (1 << (top + 1)) - 1
    ceiling = need(len(B))
    stack = [(0, 1, 0, ())]
    visited = 0
    while stack:
        start, reach, icount, T = stack.pop()
        for j in range(start, len(values)):
            v = values[j]
            r2 = _close_under(reach, v, top, mask)
            ic2 = icount + mult[v]
            T2 = T + (v,)
            cnt = sum(c for a, c in a_counts if (r2 >> a) & 1)
            visited += 1
            if cnt < need(ic2):
                return (T2, ic2, cnt), visited
            if cnt >= ceiling:
                continue
            stack.append((j + 1, r2, ic2, T2))
    return None, visited


def hsop_test(A: Sequence[int], B: Sequence[int]) -> Union[HsopHolds, HsopFails]:
    """Decide whether an empty weighted complete intersection of degrees A in P(B) exists.

    Only value sets T of B need checking: for fixed T the binding index set
    is I_T = {i : b_i in T}, the largest one generating the same semigroup.
    """
    if len(A) != len(B):
        raise ValueError("hsop_test needs #A == #B")
    fail, visited = _value_subset_search(A, B, lambda k: k)
    if fail is None:
        return HsopHolds(subsets_checked=visited)
    T, ic, cnt = fail
    return HsopFails(witness=T, index_count=ic, representable=cnt)


class HypothesisError(ValueError):
    """Inputs violate the hypotheses of the sub-critical criterion."""

    def __init__(self, failures: List[str]):
        super().__init__("; ".join(failures))
        self.failures = failures


def hall_condition_subcritical(A: Sequence[int], B: Sequence[int]) -> bool:
    """Sufficient test for a weighted complete intersection when #A < #B.

    Hypotheses (checked, raised as HypothesisError): no a equals any b, and
    every (n-1)-subset of B has gcd 1.  With n = 1 the second is vacuous.
    """
    m, n = len(A), len(B)
    if m >= n:
        raise ValueError("sub-critical test needs #A < #B")
    failures = []
    shared = sorted(set(A) & set(B))
    if shared:
        failures.append(f"linear cone: degrees {shared} occur in both A and B")
    if n >= 2:
        for i in range(n):
            g = math.gcd(*B[:i], *B[i + 1 :])
            if g != 1:
                failures.append(f"not well-formed: gcd of B without index {i} is {g}")
                break
    if failures:
        raise HypothesisError(failures)
    if m == 0:
        return True
    fail, _ = _value_subset_search(A, B, lambda k: min(m, k))
    return fail is None


# --------------------------------------------------------------- fast path


def selmer_fast_path(spec: QuotientSpec) -> Optional[SelmerFastPath]:
    A, B = spec.A, spec.B
    n = len(A)
    if len(B) != n:
        return None
    if polynomiality_delta(spec) is None:
        return None
    if n <= 1:
        return SelmerFastPath(bound=None, a1=A[0] if A else None)
    bound = 2 * B[-1] * (B[-2] // 2) - B[0]
    if bound < A[0]:
        return SelmerFastPath(bound=bound, a1=A[0])
    return None


# --------------------------------------------------------- division lattice


def bijection_criterion(A: Sequence[int], B: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """A pairing f with B[j] | A[f[j]] for all j, found by bipartite matching."""
    n = len(A)
    if len(B) != n:
        raise ValueError("bijection criterion needs #A == #B")
    pairing = [-1] * n
    used = [False] * n
    # equal values can always be paired with each other without losing a perfect matching
    for j, b in enumerate(B):
        for i, a in enumerate(A):
            if not used[i] and a == b:
                pairing[j], used[i] = i, True
                break
    rows = [j for j in range(n) if pairing[j] < 0]
    cols = [i for i in range(n) if not used[i]]
    if rows:
        dense = np.array([[A[i] % B[j] == 0 for i in cols] for j in rows], dtype=np.int8)
        if not dense.any(axis=1).all():
            return None
        match = maximum_bipartite_matching(csr_matrix(dense), perm_type="column")
        if (match < 0).any():
            return None
        for r, c in enumerate(match):
            pairing[rows[r]] = cols[int(c)]
    return tuple(pairing)


class _CapHit(Exception):
    pass


def _backtrack(remaining: Counter, choices, cap: int):
    """Partition ``remaining`` into blocks; ``choices`` proposes blocks for the largest element.

    Returns (labels or None, complete); complete is False when the state cap was hit.
    """
    if not remaining:
        return [], True
    path = []
    frames = [iter(choices(remaining))]
    states = 0
    while frames:
        advanced = False
        for label, block in frames[-1]:
            if all(remaining[x] > 0 for x in block):
                for x in block:
                    remaining[x] -= 1
                    if not remaining[x]:
                        del remaining[x]
                path.append((label, block))
                states += 1
                if not remaining:
                    return [lab for lab, _ in path], True
                if states >= cap:
                    return None, False
                frames.append(iter(choices(remaining)))
                advanced = True
                break
        if not advanced:
            frames.pop()
            if path:
                _, block = path.pop()
                remaining.update(block)
    return None, True


def _pkjoin_choices(remaining):
    x = max(remaining)
    if x == 1:
        return
    for p, e in reversed(factorize(x)):
        pk = p**e
        d = x // pk
        yield (p, e, d), tuple(pk * f for f in divisors(d))


def _omega_choices(threshold: int, allow_one: bool):
    def choices(remaining):
        x = max(remaining)
        if x == 1 and not allow_one:
            return
        w = omega(x)
        if w <= threshold:
            yield (x,), (x,)
        elif w == threshold + 1:
            # partner d = x/p with p exactly dividing x, largest partner first
            for p, e in factorize(x):
                if e == 1:
                    d = x // p
                    if d == 1 and not allow_one:
                        continue
                    yield (d, x), (d, x)

    return choices


def lattice_search(delta: Sequence[int], mode: str, backtrack_cap: int = 100_000):
    """Like :func:`lattice_decompose` but also reports whether the search was complete."""
    if mode not in LATTICE_MODES:
        raise ValueError(f"unknown lattice mode {mode!r}; expected one of {LATTICE_MODES}")
    remaining = Counter(delta)
    if mode == "nonneg-pkjoin":
        labels, complete = _backtrack(remaining, _pkjoin_choices, backtrack_cap)
        return (tuple(labels) if labels is not None else None), complete
    nonneg = mode == "nonneg-omega"
    threshold = 1 if nonneg else 2
    labels, complete = _backtrack(remaining, _omega_choices(threshold, allow_one=not nonneg), backtrack_cap)
    if labels is None:
        return None, complete
    pairs = [blk for blk in labels if len(blk) == 2]
    singles = Counter(blk[0] for blk in labels if len(blk) == 1)
    if nonneg:
        # type-a blocks are sets; stack equal values into separate layers
        layers = []
        depth = max(singles.values(), default=0)
        for level in range(1, depth + 1):
            layers.append(tuple(sorted(x for x, c in singles.items() if c >= level)))
    else:
        # a product of several flat factors need not be flat: keep singletons
        layers = [(x,) for x in sorted(singles.elements())]
    blocks = sorted(layers + pairs, key=lambda blk: (blk[0], blk))
    return tuple(blocks), complete


def lattice_decompose(delta: Sequence[int], mode: str, backtrack_cap: int = 100_000):
    """Partition delta into blocks certifying non-negativity or per-block flatness.

    nonneg-pkjoin: blocks {p**k * e : e | d} with p prime not dividing d,
    returned as (p, k, d) triples.  nonneg-omega / flat-omega: sets of
    indices with omega <= 1 (resp. 2), or covering pairs (d, d*p) with
    p not dividing d and omega(d) <= 1 (resp. 2).  None when no
    decomposition was found within the backtracking cap.
    """
    return lattice_search(delta, mode, backtrack_cap)[0]


# ------------------------------------------------------------------- Pólya


def polya_multiplier(p: IntPoly, k_max: int = 4096) -> Optional[int]:
    """Least k <= k_max with (1 + q)**k * p coefficient-wise non-negative."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    coeffs = list(p.coeffs)
    low = next(c for c in coeffs if c)
    # lowest and highest coefficients are invariant under multiplication by 1 + q
    if low < 0 or coeffs[-1] < 0:
        return None
    for k in range(k_max + 1):
        if min(coeffs) >= 0:
            return k
        coeffs = [a + b for a, b in zip(coeffs + [0], [0] + coeffs)]
    return None


# ----------------------------------------------------------------- cascade


@dataclass(frozen=True)
class CertifyConfig:
    degree_cap: int = DEFAULT_DEGREE_CAP
    hsop_distinct_cap: int = 24
    polya_kmax: int = 4096
    lattice_backtrack_cap: int = 100_000
    run_bijection: bool = True
    run_selmer: bool = True
    run_lattice: bool = True
    run_hsop: bool = True
    run_oracle: bool = True
    run_polya: bool = False
    keep_coefficients: bool = False


@dataclass
class CertificateReport:
    spec: QuotientSpec
    polynomial: bool
    nonnegative: Optional[bool]  # None = undetermined
    delta: Optional[Tuple[int, ...]] = None
    certificates: List[Certificate] = field(default_factory=list)
    timings: Dict[str, int] = field(default_factory=dict)  # microseconds
    notes: Dict[str, str] = field(default_factory=dict)
    coefficients: Optional[IntPoly] = None

    def find(self, kind: str) -> Optional[Certificate]:
        return next((c for c in self.certificates if c.kind == kind), None)

    def kinds(self) -> Tuple[str, ...]:
        return tuple(c.kind for c in self.certificates)

    @property
    def hsop(self) -> Optional[bool]:
        if self.find("HsopHolds"):
            return True
        if self.find("HsopFails"):
            return False
        return None


class _Stage:
    def __init__(self, report: CertificateReport, name: str):
        self.report, self.name = report, name

    def __enter__(self):
        self.t0 = time.perf_counter_ns()
        return self

    def __exit__(self, *exc):
        self.report.timings[self.name] = (time.perf_counter_ns() - self.t0) // 1000
        return False


def certify_nonnegativity(spec: QuotientSpec, config: CertifyConfig = CertifyConfig()) -> CertificateReport:
    """Run the certificate cascade, cheapest reasons first, oracle last."""
    report = CertificateReport(spec=spec, polynomial=False, nonnegative=None)
    square = len(spec.A) == len(spec.B)

    with _Stage(report, "delta"):
        delta = polynomiality_delta(spec) if len(spec.A) >= len(spec.B) else None
    report.delta = delta
    report.polynomial = delta is not None

    if not report.polynomial:
        report.certificates.append(NotPolynomial())
        if config.run_oracle:
            with _Stage(report, "oracle"):
                if expand_quotient(spec, config.degree_cap) is not None:
                    raise RuntimeError(f"polynomiality test and exact division disagree on {spec}")
        return report

    if config.run_bijection and square:
        with _Stage(report, "bijection"):
            pairing = bijection_criterion(spec.A, spec.B)
        if pairing is not None:
            report.certificates.append(DivisibilityBijection(pairing))

    if config.run_selmer and square:
        with _Stage(report, "selmer"):
            fast = selmer_fast_path(spec)
        if fast is not None:
            report.certificates.append(fast)

    if config.run_lattice:
        cap = config.lattice_backtrack_cap
        with _Stage(report, "lattice"):
            found = {}
            for mode in LATTICE_MODES:
                blocks, complete = lattice_search(delta, mode, cap)
                found[mode] = blocks
                if blocks is None and not complete:
                    report.notes[mode] = "backtracking cap reached; no decomposition found"
        # the delta product equals the quotient only up to the sign (-1)**(#A - #B)
        if square and found["nonneg-pkjoin"] is not None:
            report.certificates.append(LatticePkJoin(found["nonneg-pkjoin"]))
        if square and found["nonneg-omega"] is not None:
            report.certificates.append(LatticeOmega(found["nonneg-omega"], "nonneg"))
        if found["flat-omega"] is not None:
            report.certificates.append(FlatnessLocal(found["flat-omega"]))

    if config.run_hsop and square:
        distinct = len(set(spec.B))
        if distinct > config.hsop_distinct_cap:
            report.notes["hsop"] = f"skipped: {distinct} distinct denominator degrees exceed cap {config.hsop_distinct_cap}"
        else:
            with _Stage(report, "hsop"):
                report.certificates.append(hsop_test(spec.A, spec.B))

    expansion = None
    if config.run_oracle:
        with _Stage(report, "oracle"):
            expansion = expand_quotient(spec, config.degree_cap)
        if expansion is None:
            raise RuntimeError(f"polynomiality test and exact division disagree on {spec}")
        neg = first_negative(expansion)
        if neg is None:
            report.certificates.append(OracleNonNegative(min(expansion.coeffs)))
            report.nonnegative = True
        else:
            report.certificates.append(OracleNegative(*neg))
            report.nonnegative = False
        if config.keep_coefficients:
            report.coefficients = expansion
    else:
        if any(c.kind in SUFFICIENT_KINDS for c in report.certificates):
            report.nonnegative = True

    if config.run_polya and expansion is not None:
        with _Stage(report, "polya"):
            k = polya_multiplier(expansion, config.polya_kmax)
        if k is not None:
            report.certificates.append(PolyaMultiplier(k))
    return report


# ---------------------------------------------------------------- verifier


def _delta_of(spec: QuotientSpec) -> Optional[Tuple[int, ...]]:
    if len(spec.A) < len(spec.B):
        return None
    return polynomiality_delta(spec)


def _omega_blocks_ok(spec: QuotientSpec, blocks, threshold: int, nonneg: bool, singletons: bool) -> bool:
    delta = _delta_of(spec)
    if delta is None or Counter(x for blk in blocks for x in blk) != Counter(delta):
        return False
    if nonneg and len(spec.A) != len(spec.B):
        return False
    for blk in blocks:
        if nonneg and 1 in blk:
            return False
        if len(blk) == 2 and blk[0] < blk[1] and blk[1] % blk[0] == 0 and is_prime(blk[1] // blk[0]):
            d, p = blk[0], blk[1] // blk[0]
            if d % p and omega(d) <= threshold:
                continue
        if len(set(blk)) != len(blk) or (singletons and len(blk) != 1):
            return False
        if any(omega(x) > threshold for x in blk):
            return False
    return True


def _expansion(spec: QuotientSpec) -> Optional[IntPoly]:
    return expand_quotient(spec, max(DEFAULT_DEGREE_CAP, spec.expected_degree))


def verify_certificate(spec: QuotientSpec, cert: Certificate) -> bool:
    """Independently confirm the claim a certificate makes about ``spec``."""
    A, B = spec.A, spec.B
    kind = cert.kind
    if kind == "NotPolynomial":
        return _expansion(spec) is None
    if kind == "HsopHolds":
        if len(A) != len(B):
            return False
        values = sorted(set(B))
        for mask in range(1, 1 << len(values)):
            T = [v for i, v in enumerate(values) if mask >> i & 1]
            need = sum(1 for b in B if b in T)
            if count_representable(A, GeneratorSet(T)) < need:
                return False
        return True
    if kind == "HsopFails":
        T = cert.witness
        if len(A) != len(B) or not T or not set(T) <= set(B):
            return False
        need = sum(1 for b in B if b in T)
        got = count_representable(A, GeneratorSet(T))
        return need == cert.index_count and got == cert.representable and got < need
    if kind == "SelmerFastPath":
        if len(A) != len(B) or _delta_of(spec) is None:
            return False
        if len(A) <= 1:
            return cert.bound is None
        bound = 2 * B[-1] * (B[-2] // 2) - B[0]
        return cert.bound == bound and cert.a1 == A[0] and bound < A[0]
    if kind == "LatticePkJoin":
        delta = _delta_of(spec)
        if delta is None or len(A) != len(B):
            return False
        union = Counter()
        for p, k, d in cert.blocks:
            if not is_prime(p) or k < 1 or d < 1 or d % p == 0:
                return False
            union.update(p**k * e for e in divisors(d))
        return union == Counter(delta)
    if kind == "LatticeOmega":
        if cert.mode not in ("nonneg", "flat"):
            return False
        nonneg = cert.mode == "nonneg"
        return _omega_blocks_ok(spec, cert.blocks, 1 if nonneg else 2, nonneg, singletons=not nonneg)
    if kind == "FlatnessLocal":
        return _omega_blocks_ok(spec, cert.blocks, 2, nonneg=False, singletons=True)
    if kind == "DivisibilityBijection":
        f = cert.pairing
        return (
            len(A) == len(B) == len(f)
            and sorted(f) == list(range(len(A)))
            and all(A[f[j]] % B[j] == 0 for j in range(len(B)))
        )
    if kind in ("OracleNonNegative", "OracleNegative", "PolyaMultiplier"):
        p = _expansion(spec)
        if p is None:
            return False
        if kind == "OracleNonNegative":
            return first_negative(p) is None and min(p.coeffs) == cert.min_coefficient
        if kind == "OracleNegative":
            return first_negative(p) == (cert.exponent, cert.value)
        coeffs = list(p.coeffs)
        for _ in range(cert.k):
            coeffs = [a + b for a, b in zip(coeffs + [0], [0] + coeffs)]
        return min(coeffs) >= 0
    raise ValueError(f"unknown certificate kind {kind!r}")
