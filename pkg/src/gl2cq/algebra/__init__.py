from .scalar import GaussianRational, ExactPoint, RootOfUnity, NumericSpec, Scalar, scalar_add, scalar_mul, scalar_conj, scalar_eval
from .qtorus import TorusElement, torus_mul, torus_product, kappa, torus_deg, torus_bar, render_monomial
from .liealg import LieElement, E, E_of, c_s, c_t, d_s, d_t, bracket, omega, invariant_form, check_jacobi, check_invariance, parse_generator
