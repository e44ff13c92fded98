"""lplab: zero localization and Laguerre-Polya membership tests for
order-zero entire series with positive Taylor coefficients."""

__version__ = "0.1.0"

from .series import (  # noqa: F401
    EvalResult,
    FamilyKind,
    QuotientView,
    SeriesFamily,
    coefficient_log,
    evaluate,
    evaluate_section,
    quotients,
    tail_bound,
)
from .polyroots import (  # noqa: F401
    RealPolynomial,
    RootBracket,
    is_real_rooted,
    isolate_real_roots,
    refine,
    section_polynomial,
)
from .zerocount import (  # noqa: F401
    WindingResult,
    count_zeros_in_disk,
    min_modulus_on_circle,
    rho_radius,
    s2_root_modulus,
)
from .criteria import (  # noqa: F401
    CriterionReport,
    Verdict,
    classify_euler,
    cubic_section_threshold,
    hutchinson_test,
    necessary_q2,
    sign_test_euler,
    sign_test_theta,
    six_term_section_test,
)
from .constants import (  # noqa: F401
    Bracket,
    c_n,
    critical_a,
    q_infinity,
    threshold_table,
    transition_scan,
)
