"""confext: exact classification of extensions of finite irreducible conformal modules.

The package computes Ext(W, V) for pairs of irreducible conformal
modules over the Virasoro conformal algebra, current conformal
algebras, their semidirect sum, and the semidirect sum with a
1-dimensional abelian current.  Cocycle and coboundary spaces are
produced by exact linear algebra over Q or a quadratic field
Q(sqrt(d)); every reported basis cocycle can be certified against an
independent truncated mode-algebra verifier.
"""

from .exactnum import RAT, Rational, Scalar, UniPoly, parse_scalar

__all__ = [
    "RAT",
    "Rational",
    "Scalar",
    "UniPoly",
    "parse_scalar",
    "solve_ext",
    "classify_vir_parametric",
    "recursion_coeff",
    "triviality_certificate",
    "ConfAlgebra",
    "ExtProblem",
    "OneDim",
    "VirMod",
    "CurMod",
    "VirCurMod",
    "VirAbMod",
]


def __getattr__(name):
    if name in ("solve_ext", "classify_vir_parametric", "recursion_coeff", "triviality_certificate"):
        from . import extsolver

        return getattr(extsolver, name)
    if name in ("ConfAlgebra", "ExtProblem", "OneDim", "VirMod", "CurMod", "VirCurMod", "VirAbMod"):
        from . import confmod

        return getattr(confmod, name)
    raise AttributeError(name)
