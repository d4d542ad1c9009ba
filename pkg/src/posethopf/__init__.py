"""Exact growth models and subHopf closure certification on finite posets."""

from .algebra import (Inconsistent, Scalar, Solution, Underdetermined,
                      solve_linear_exact)
from .counting import (forest_partitions, linear_extensions,
                       num_linear_extensions, psi, qbinom,
                       series_coefficients, shuffles, templates)
from .errors import (CycleDetected, DomainError, InexactDivision,
                     IndexOutOfRange, NonHomogeneous, NonzeroConstantTerm,
                     NotAForest, PosetHopfError, SizeExceeded, SizeMismatch,
                     ZeroModel)
from .growth import (Couplings, GrowthModel, cm_model, csg_couplings,
                     csg_model, dse_model, dust_couplings, foissy_dse_model,
                     forest_couplings, forest_probability, grow_distribution,
                     m_operator, tp_couplings, tp_probability,
                     tree_couplings, tree_probability)
from .hopf import (PosetVector, TensorVector, antipode, coproduct,
                   coproduct_vector, counit, reduced_coproduct)
from .posets import (EMPTY, POINT, LabelledPoset, Poset, antichain,
                     anti_corolla, b_s, canon, canonicalize, chain, corolla,
                     components, diamond, disjoint_union, enumerate_posets,
                     from_json, from_text, max_n, to_json, to_text,
                     transitive_closure)
from .subhopf import (ClosureReport, beta_first_order, beta_forest,
                      check_closure, csg_generators, gamma_direct,
                      gamma_formula)

__version__ = "0.1.0"
