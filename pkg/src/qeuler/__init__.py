"""Higher-order q-Euler polynomials: exact expansions, series sums, p-adic
fermionic sums and Barnes-type q-zeta functions."""

from .characters import (DirichletCharacter, chi_eval, enumerate_characters, real_characters,
                         trivial_character)
from .errors import (BudgetError, DegenerateParameterError, DivergenceError, DomainError,
                     NonInvertibleError, PathError, PreconditionError, QEulerError,
                     ReductionError, SeriesOrderError, UnsupportedFormError)
from .families import (FamilySpec, Form, Kind, Path, PolyValue, TruncationReport, gf_expand,
                       gf_value, generating_series, series_sum)
from .identities import (binomial_shift_in_x, check_bernoulli_difference,
                         check_difference_identity, check_distribution)
from .padic import (IntegrandPoly, PadicInt, check_q_limit, check_shift_identity,
                    convergence_report, fermionic_sum, fermionic_sum_multi, oracle_residue,
                    reduce_rational)
from .qzeta import ComplexVal, ZetaParams, check_interpolation, check_mellin, l_qr, zeta_qr
from .report import Report
from .series import (DEFAULT_ORDER, QBracketContext, Rational, TruncSeries, binom, qbinom,
                     qbracket, ts_exp_linear, ts_inv, ts_mul)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
