"""optdeg: exact symbolic computation of algebraic degrees of optimization
over varieties, with p-norm distance degrees, conormal/polar multidegree
extraction, closed-form degree formulas, and radical-tower checks."""

from .errors import *  # noqa: F401,F403
from .fields import DEFAULT_PRIME, PrimeField, RationalField, field_from_spec
from .rings import (GREVLEX, LEX, OrderSpec, Polynomial, RationalFunction,
                    RingContext)
from .parsing import (format_polynomial, format_rational_function,
                      parse_polynomial, parse_rational_function)
from .matrices import PolyMatrix, derationalize, jacobian, random_linear_change
from .groebner import (DEFAULT_BUDGET, GroebnerBasis, Ideal, degree_via_sections,
                       degree_zero_dim, dimension, eliminate, groebner_basis,
                       intersect, normal_form, saturate, vanishes_on_variety)
from .critical import (DegreeReport, EvolutePolynomial, PNorm, RationalGradient,
                       VarietySpec, algebraic_degree, ci_degree_bound_check,
                       critical_ideal_affine, data_ring, evolute_curve,
                       projective_critical_ideal, projective_pnorm_degree,
                       singular_locus_ideal)
from .conormal import (BidegreeClass, PolarClassVector, bidegree_class,
                       joint_correspondence_ideal, polar_classes,
                       pnorm_degree_via_polar, s_conormal_ideal)
from .towers import (ParametrizationSpec, TowerLevel, TowerSpec, TowerSystem,
                     build_tower_system, tower_dimension_check,
                     tower_incidence_ideals, tower_jacobian_rank, tower_ring)
from . import formulas
