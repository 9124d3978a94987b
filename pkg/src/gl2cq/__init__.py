"""
Exact computations with the extended affine Lie algebra gl_2(C_q)~, its
free-field representation on a polynomial space and the contravariant
hermitian form of that representation.
"""

try:
    from .__version__ import __version__
except ImportError:
    __version__ = "0.0.0"
