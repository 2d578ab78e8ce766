"""Exact sum-of-squares certificates for two-letter matrix word sums.

The package expands the sum of all length-p words with r B letters into
cyclic trace classes, verifies Hermitian-square certificates for those
sums exactly over the Gaussian rationals, searches for new certificates
over a fixed sandwich ansatz, and cross-validates everything against
brute-force numerics on random positive semidefinite matrices.
"""

from .certificate import (
    AnsatzMismatchError,
    Certificate,
    CertificateFormatError,
    CertificateStructureError,
    GramMatrix,
    PsdCheckResult,
    SandwichBlock,
    VerifyReport,
    bundled_certificate,
    bundled_path,
    certificate_expansion,
    certificate_from_json,
    certificate_to_json,
    expand_gram,
    gram_from_vectors,
    load_ansatz,
    load_certificate,
    psd_check_exact,
    quadratic_form,
    reduce_pair,
    save_certificate,
    swap_certificate,
    verify_against,
    verify_certificate,
)
from .numeric import (
    ConvergenceError,
    EigResult,
    NotPsdError,
    bmv_coefficients,
    derive_seed,
    eval_certificate_numeric,
    gaussian_stream,
    hermitian_eig,
    psd_sqrt,
    random_hermitian,
    random_psd,
    trace_hurwitz_numeric,
    trace_word_product,
    uniform_stream,
)
from .rational import GaussianRational, grat
from .search import (
    ConstraintMap,
    SearchOptions,
    SearchOutcome,
    SearchStatus,
    UnderdeterminedAnsatzError,
    UnreachableTargetError,
    build_constraint_map,
    determined_gram,
    feasibility_search,
    prove_infeasible_determined,
)
from .validation import (
    TrialConfig,
    TrialReport,
    bmv_check_trials,
    validate_certificate_trials,
)
from .words import (
    CyclicClass,
    TracePolynomial,
    canonical_rotation,
    hurwitz_expand,
    least_rotation,
    reverse_class,
    reverse_word,
    swap_letters,
    swap_word,
)

__version__ = "0.1.0"

__all__ = [
    "AnsatzMismatchError",
    "Certificate",
    "CertificateFormatError",
    "CertificateStructureError",
    "ConstraintMap",
    "ConvergenceError",
    "CyclicClass",
    "EigResult",
    "GaussianRational",
    "GramMatrix",
    "NotPsdError",
    "PsdCheckResult",
    "SandwichBlock",
    "SearchOptions",
    "SearchOutcome",
    "SearchStatus",
    "TracePolynomial",
    "TrialConfig",
    "TrialReport",
    "UnderdeterminedAnsatzError",
    "UnreachableTargetError",
    "VerifyReport",
    "bmv_check_trials",
    "bmv_coefficients",
    "build_constraint_map",
    "bundled_certificate",
    "bundled_path",
    "canonical_rotation",
    "certificate_expansion",
    "certificate_from_json",
    "certificate_to_json",
    "derive_seed",
    "determined_gram",
    "eval_certificate_numeric",
    "expand_gram",
    "feasibility_search",
    "gaussian_stream",
    "gram_from_vectors",
    "grat",
    "hermitian_eig",
    "hurwitz_expand",
    "least_rotation",
    "load_ansatz",
    "load_certificate",
    "prove_infeasible_determined",
    "psd_check_exact",
    "psd_sqrt",
    "quadratic_form",
    "random_hermitian",
    "random_psd",
    "reduce_pair",
    "reverse_class",
    "reverse_word",
    "save_certificate",
    "swap_certificate",
    "swap_letters",
    "swap_word",
    "trace_hurwitz_numeric",
    "trace_word_product",
    "uniform_stream",
    "validate_certificate_trials",
    "verify_against",
    "verify_certificate",
    "__version__",
]
