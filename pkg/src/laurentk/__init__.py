"""Exact algebra of finitely generated modules over Q[X, X^-1].

Classification by Smith normal form, supports and circle-spectra,
localization, Laurent-valued traces, dynamical zeta functions and the
module-level equivariant K-theory examples built on them.
"""

from .laurent import (
    ONE,
    X,
    ZERO,
    LaurentPoly,
    canonical_associate,
    cyclotomic,
    evaluate,
    gcd,
    lcm,
    numeric_roots,
    parse_poly,
    squarefree_part,
)
from .ratfunc import RationalFunction
from .series import TruncatedSeries, series_exp, series_log
from .matrix import smith_form, smith_normal_form
from .modules import (
    GradedModule,
    InvariantFactors,
    PresentedModule,
    Support,
    annihilator,
    classify,
    direct_sum,
    solve_linear,
    support,
)
from .localize import (
    GradedModuleMap,
    GradedTrace,
    LocalizedModule,
    graded_trace,
    localize,
    localized_trace,
    module_trace,
    verify_endomorphism,
)
from .dynamics import (
    KTheoryAction,
    ToralAutomorphism,
    char_function,
    ck_spectrum,
    commutativity_obstruction,
    lefschetz_sign_check,
    periodic_points,
    tspec_of_crossed_product,
    zeta_identity_check,
)
from .models import (
    CP1Element,
    EvaluationComponent,
    FixedPointData,
    RootOfUnity,
    baum_connes_module,
    cp1_multiplication_matrix,
    cp1_twisted_trace,
    euler_number,
    fixed_point_sheaf_module,
    lefschetz_crosscheck,
    slice_module,
)

__version__ = "0.1.0"
