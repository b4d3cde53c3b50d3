"""charlab: a numerical laboratory for surface-group character varieties.

Computes twisted group cohomology at flat representations, evaluates the
Goldman symplectic pairing two independent ways (bar complex and twisted
simplicial cup product), and verifies that the monodromy pullback of the
character-variety pairing matches the period-geometric pairing for C* on
hyperelliptic curves.
"""

__version__ = "0.1.0"

from .abelian_rh import (HyperellipticCurve, PeriodData, holomorphic_basis,
                         periods, rh_pullback_check, serre_gram, serre_pairing)
from .errors import (ChainConstructionError, CharlabError, NonCocycleError,
                     QuadratureError, RankAmbiguousError, RefinementError)
from .goldman_form import (BarTwoChain, GoldmanMatrix, closedness_residual,
                           fundamental_cycle, goldman_matrix, goldman_pairing,
                           pairing_operator)
from .lie_backend import (GL, SL, TORUS, InvariantForm, LieGroupSpec,
                          ad_action, ad_matrix, algebra_basis, algebra_coords,
                          algebra_matrix, form_gram, group_spec)
from .rep_variety import (Representation, conjugate, is_irreducible, perturb,
                          random_flat_representation, refine,
                          relation_residual,
                          upper_triangular_flat_representation)
from .simplicial_oracle import (TriangulatedSurfaceComplex, TwistedEvaluator,
                                build_complex, simplicial_pairing,
                                transport_cocycle)
from .surface_group import (SurfaceGroupPresentation, Word, cochain_on_word,
                            evaluate_word, fox_derivative, free_reduce,
                            presentation, relator, word_from_ints,
                            word_to_ints)
from .twisted_cohomology import (CohomologySpaces, coboundary_matrix,
                                 cocycle_matrix, cocycle_residual, cohomology,
                                 transport_cochain)
