"""Verification-grade numerics for shifted convolutions of twisted
divisor sums: characters, L-functions, Bessel/hypergeometric special
functions, Eisenstein Fourier expansions, and the spectral-piece closed
forms, with a CLI for sums, fits, growth scans, and verification suites.
"""

from .chars import (
    DirichletCharacter,
    char_conjugate,
    char_eval,
    char_product,
    character,
    even_nontrivial_characters,
    gauss_sum,
    trivial_character,
)
from .divsum import (
    ConvolutionParams,
    SigmaTable,
    default_params,
    hecke_sequence,
    lk_series,
    lk_star,
    ramanujan_defect,
    shifted_sum,
    sieve_sigma,
    sigma,
    sigma_series_defect,
)
from .eisenstein import (
    Cusp,
    EisensteinFamily,
    UpperHalfPoint,
    c_mellin_closed,
    eisenstein_star,
    r_coeff_mellin_closed,
    r_fourier_coefficient,
    v_fourier_coefficient,
)
from .errors import (
    AccuracyError,
    CertificateError,
    DomainError,
    PoleError,
    ResourceError,
    ShiftconvError,
)
from .lfun import (
    EulerMaclaurinSpec,
    completed_l,
    dirichlet_l,
    functional_equation_defect,
    hurwitz_zeta,
    zeta,
)
from .special import (
    QuadratureSpec,
    bessel_k,
    bessel_mellin_closed,
    bessel_product_mellin_closed,
    gamma,
    hyp2f1,
    mellin_quadrature,
)
from .spectral import (
    FitResult,
    SpectralTruncation,
    lk_R,
    lk_V,
    lk_cont,
    main_term,
    perron_demo,
    residual_fit,
    theorem_exponents,
    vertical_growth_fit,
)

__version__ = "0.1.0"
