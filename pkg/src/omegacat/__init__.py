"""Finite strict ω-categories, reversible cylinders and the folk model structure, checked exhaustively."""
from types import ModuleType as _ModuleType

from .core import (Cell, CategoryBuilder, FiniteOmegaCat, OmegaFunctor, act_left, act_right, constant_functor,
                   coproduct, identity, product, pullback, shift_hom)
from .cylinders import (Cylinder, CylinderCalculus, GammaCat, cyl_act_left, cyl_act_right, cyl_compose, cyl_concat,
                        cyl_mult, cyl_source, cyl_target, cyl_unit, gamma, gamma_functor, triv_cylinder)
from .equivalence import (EqvWitness, congruence_suite, is_reversible, is_trivial_fibration, is_weak_equivalence,
                          left_divide, omega_equiv, right_divide, weak_injectivity_check)
from .errors import (BoundaryError, BudgetExceeded, CrossCheckError, NotReversible, OmegaError, StructuralError,
                     Unsupported)
from .gluing import (GluCat, charweq, check_top_bot_fibrations, equiv_factor_witness, glue, transport_bottomup,
                     transport_topdown)
from .kernels import BACKEND_NAME
from .modelcheck import (ImmersionCertificate, LiftingProblem, find_lift, immersion_implies_weq, is_immersion,
                         pushout_immersion_suite, retract_check, soa_stage)
from .polygraph import (Polygraph, PolyMorphism, boundary_globe, free_category, globe, globe_inclusion,
                        pair_functor, pushout_polygraph)
from .report import CheckReport
from .search import enumerate_functors, find_functor, find_isomorphism
from .suite import SuiteConfig, run_suite
from .transfer import collapse, include, is_equivalence_of_categories, lambda_nat, truncate
from .validate import validate_category, validate_functor

__version__ = "0.1.0"

__all__ = sorted(name for name, value in globals().items()
                 if not name.startswith("_") and not isinstance(value, _ModuleType))
