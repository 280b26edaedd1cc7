"""Exact arithmetic for congruence-monoid actions on rings of integers.

Residue groups, congruence monoids, constructible-ideal semilattices, ray
class quotients, primitive-ideal windows, and the constructive witnesses
connecting them, over Q and quadratic fields, in exact rational arithmetic.
"""

from .classgroup import (ClassGroupData, class_group, principal_generator,
                         reduced_forms_count)
from .constructions import (QuotientPair, approx_element, cutdown_pair,
                            element_with_residue, in_localization, in_ray,
                            monoid_quotient_rep, ray_generates_check,
                            second_generator)
from .errors import (CongmonError, ContextMismatchError,
                     FactorBoundExceededError, NonCoprimeModuliError,
                     NotCoprimeError, NotInKmError, NotInKmGammaError,
                     PreconditionError, ScaleExceededError,
                     SearchBoundExceededError, SpecParseError)
from .fields import (AlgebraicNumber, NumberField, format_element,
                     parse_element, parse_field, quadratic_field,
                     rational_field)
from .functorial import (MonoidDescriptor, field_inclusion_check,
                         induced_modulus, leq_pairs, monoid_inclusion_check,
                         project_residue, ray_positivity_detect)
from .ideals import (FractionalIdeal, PrimeIdeal, crt_solve, factor_ideal,
                     ideal_combine, parse_ideal, primes_above,
                     principal_ideal, totally_positive_lift, uniformizer,
                     valuation)
from .primitive import (INF, PrimeWindow, PrimitiveIdealDescriptor,
                        TruncatedPoint, boundary_defect_data, closure_of,
                        extremal_ideals, ideal_leq, orbit_reach_check,
                        quasi_orbit_membership, zero_set)
from .rayclass import (QuotientClassGroup, hm_order, is_right_lcm,
                       prime_class_order, quotient_group)
from .residues import (Modulus, ResidueClass, ResidueSubgroup,
                       enumerate_monoid, image_of_units, in_congruence_monoid,
                       parse_gamma, parse_modulus, residue_group, residue_of,
                       residue_of_fraction)
from .semilattice import (ConstructibleIdeal, SemigroupElement,
                          check_relations, embed_full, faithfulness_witness,
                          independence_witness, meet, act,
                          parse_constructible, prime_in_class_avoiding)
from .units import UnitGroupData, pell_fundamental, torsion_units, unit_group

__version__ = "0.1.0"
