"""Exact tools for deciding polynomiality and certifying non-negativity of
quotients prod(1 - q**a) / prod(1 - q**b) of q-integers."""

from .certify import (
    CertificateReport,
    CertifyConfig,
    bijection_criterion,
    certify_nonnegativity,
    hall_condition_subcritical,
    hsop_test,
    lattice_decompose,
    polya_multiplier,
    selmer_fast_path,
    verify_certificate,
)
from .conjectures import (
    GKInstance,
    StantonInstance,
    corollary_bound,
    gk_spec,
    is_symmetric,
    scan_family,
    stanton_spec,
)
from .cyclotomic import (
    cgf_form,
    cyclotomic_poly,
    divisor_multiset,
    factor_profile,
    polynomiality_delta,
)
from .polyq import (
    CapExceeded,
    IntPoly,
    QuotientSpec,
    expand_quotient,
    is_flat,
    max_abs_coeff,
    min_coefficient,
    poly_divexact,
    poly_mul,
)
from .semigroup import (
    GeneratorSet,
    apery_set,
    count_representable,
    frobenius_number,
    selmer_bound,
    semigroup_contains,
)

__version__ = "0.1.0"
