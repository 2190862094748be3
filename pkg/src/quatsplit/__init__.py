"""Splitting of quaternion algebras over Q and quadratic fields, and
non-split certificates for symbol algebras of degree n."""

from .arith import factorize, is_prime, kronecker, legendre, mod_pow, p_adic_valuation
from .errors import CapacityError, DomainError
from .fppoly import FpPolynomial, extension_degree, factor, is_irreducible, poly_binomial
from .quadfield import QuadraticField, SplittingType, make_field, splitting_type
from .quatalg import (
    INFINITE,
    Place,
    QuaternionAlgebra,
    corollary31_sufficient,
    hilbert_symbol,
    hilbert_symbol_oracle,
    ramified_places,
    splits_over_Q,
    splits_over_quadratic,
    theorem31_sufficient,
)
from .symbolalg import (
    NonSplitCertificate,
    SymbolAlgebraSpec,
    find_alpha,
    nonsplit_certificate,
    residue_conditions_hold,
)

__version__ = "0.1.0"
