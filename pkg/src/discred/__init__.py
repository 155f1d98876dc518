"""Exact classification of disconnected reductive groups.

A connected reductive group is encoded by its based root datum; a
disconnected group with that identity component and component group
Gamma is classified by a degree-2 cohomology class of Gamma in the
finite part of the center.  Everything here runs in exact integer
arithmetic.
"""

from .abgroup import (AbHom, DiagonalizableGroup, FGAbelianGroup,
                      torsion_at, torsion_inclusion)
from .autbrd import (AdHom, BRDAutomorphism, ad_from_element_images,
                     ad_from_generator_images, brd_automorphism,
                     diagram_automorphisms, induced_center_action,
                     is_brd_automorphism, trivial_ad, validate_ad)
from .cohomology import (Cochain, CohomologyClass, CohomologyGroup,
                         GammaModule, cohomology_group, differential,
                         eckmann_check, gamma_module, is_cocycle,
                         stabilized_h2, trivial_module)
from .errors import (BudgetExceededError, DiscredError, InternalCheckError,
                     ValidationError)
from .exactlin import IntMatrix, smith_normal_form, solve_integer
from .extension import (Classification, DisconnectedGroupDescriptor,
                        ExtensionModel, build_extension, classify,
                        cocycle_witness, extensions_equivalent,
                        extract_cocycle, pushout, quotient_mod_center)
from .grouptable import FiniteGroup, cyclic, from_generators, validate_table
from .rootdatum import (BasedRootDatum, RootDatum, center, dynkin,
                        positive_systems, validate, validate_based,
                        weyl_generate)

__version__ = "0.1.0"
