from .polyrep import IndexPair, XEntry, XFamily, Monomial, Polynomial, apply_P, apply_Q, apply_e, apply_D, pi_apply, check_homomorphism, check_weyl_relations, check_raising_commutation
from .cycles import CyclePartition, canonical_cycle_partitions
from .hermform import FormContext, LevelBasisElement, expand_basis, form_recursive, form_operator_push, form_jk_oracle, form_on_basis, form_on_polynomials, basis_decomposition, check_contravariance, check_well_definedness, check_hermitian_symmetry
from .gram import BasisBox, GramMatrix, HighestWeight, Verdict, enumerate_basis, gram_matrix, monomial_gram, check_positive_definite, translate_basis, check_translation_invariance, check_highest_weight, scan_mu, gram_determinant, radical_basis
