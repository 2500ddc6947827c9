"""Variable-exponent modulars and Luxemburg-type norms.

A modular is a quantity of the form sum(c_a * lam**-e_a) evaluated at
lam = 1: for the Lebesgue case c_i = |u_i|^h(x_i) w_i over interior cells,
for the Gagliardo case c_ij = |u_i - u_j|^p_ij k_ij w_i w_j over the pair
table.  The corresponding norm is the unique lam > 0 at which the scaled
modular equals 1 (zero for the zero function); it is found by monotone
bisection, since lam -> modular(u/lam) is strictly decreasing.

Norm and modular are linked by the standard envelope inequalities: with
e- and e+ the extreme exponents, norm <= 1 implies norm**e+ <= modular <=
norm**e-, and the reversed exponents hold for norm >= 1; equivalently
min(t**e-, t**e+) <= modular <= max(t**e-, t**e+) at t = norm.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ExponentOutOfRange

__all__ = [
    "ModularReport",
    "lebesgue_modular",
    "luxemburg_norm",
    "gagliardo_modular",
    "gagliardo_seminorm",
    "exponent_values",
    "conjugate_exponent_values",
]

DEFAULT_TOL = 1e-10
MAX_BISECT = 200


@dataclass
class ModularReport:
    """Modular of u itself plus the norm located by bisection."""

    modular_value: float
    luxemburg_norm: float
    bisection_iterations: int
    bracket: tuple


def exponent_values(h, x):
    """Evaluate a pointwise exponent (callable, array, or scalar) at x."""
    if callable(h):
        vals = np.asarray(h(x), dtype=float)
        if vals.shape != np.shape(x):
            vals = np.broadcast_to(vals, np.shape(x)).astype(float)
        return vals
    vals = np.asarray(h, dtype=float)
    if vals.ndim == 0:
        return np.full(np.shape(x), float(vals))
    if vals.shape != np.shape(x):
        raise ValueError("exponent array shape %r does not match points" % (vals.shape,))
    return vals


def conjugate_exponent_values(h, x):
    """Pointwise conjugate exponent h' with 1/h + 1/h' = 1."""
    hv = exponent_values(h, x)
    return hv / (hv - 1.0)


def _lebesgue_coeffs(u, h):
    g = u.grid
    hv = exponent_values(h, g.interior_centers)
    if np.min(hv) <= 1.0:
        raise ExponentOutOfRange(
            "pointwise exponent must exceed 1; min is %g" % float(np.min(hv))
        )
    c = np.abs(u.interior) ** hv * g.interior_widths
    keep = c > 0.0
    return c[keep], hv[keep], hv


def lebesgue_modular(u, h):
    """Interval integral of |u(x)|^h(x), midpoint quadrature."""
    c, _, _ = _lebesgue_coeffs(u, h)
    return float(np.sum(c))


def _bisect_lambda(coeffs, exps, upper_guess, tol):
    """Smallest lam with sum(coeffs * lam**-exps) <= 1, to |modular - 1| <= tol.

    Bracket: machine-tiny below; above, the supplied guess doubled until the
    scaled modular drops below 1 (monotonicity guarantees the bracketing).
    """

    def scaled(lam):
        with np.errstate(over="ignore"):
            return float(np.sum(coeffs * lam ** (-exps)))

    lo = np.finfo(float).tiny
    hi = max(float(upper_guess), lo * 4.0)
    iters = 0
    while scaled(hi) > 1.0:
        hi *= 2.0
        iters += 1
    bracket = (lo, hi)
    lam = hi
    for _ in range(MAX_BISECT):
        mid = 0.5 * (lo + hi)
        val = scaled(mid)
        iters += 1
        if abs(val - 1.0) <= tol:
            lam = mid
            break
        if val > 1.0:
            lo = mid
        else:
            hi = mid
        lam = hi
        if (hi - lo) <= np.finfo(float).eps * hi:
            break
    return lam, iters, bracket


def luxemburg_norm(u, h, tol=DEFAULT_TOL):
    """Luxemburg norm of u in the variable-exponent Lebesgue space for h.

    Returns the norm together with the plain modular of u and the bisection
    diagnostics; the zero function short-circuits to norm 0.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    c, e, hv = _lebesgue_coeffs(u, h)
    modular = float(np.sum(c))
    if modular == 0.0:
        return ModularReport(0.0, 0.0, 0, (0.0, 0.0))
    measure = float(np.sum(u.grid.interior_widths))
    guess = 1.0 + float(np.max(np.abs(u.interior))) * measure ** (1.0 / float(np.min(hv)))
    lam, iters, bracket = _bisect_lambda(c, e, guess, tol)
    return ModularReport(modular, lam, iters, bracket)


def gagliardo_modular(u, ctx):
    """Two-point modular of the difference quotients against the singular
    kernel, summed over the pair table (requires a W0 function)."""
    ctx._check_function(u)
    return ctx.sp_modular(u.values)


def gagliardo_seminorm(u, ctx, tol=DEFAULT_TOL):
    """Gagliardo-Slobodetskii seminorm of a W0 function by bisection on the
    scaled two-point modular."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    ctx._check_function(u)
    c, e = ctx.pair_coeffs(u.values)
    modular = float(np.sum(c))
    if modular == 0.0:
        return ModularReport(0.0, 0.0, 0, (0.0, 0.0))
    p_min = float(np.min(e))
    guess = 1.0 + modular ** (1.0 / p_min)
    lam, iters, bracket = _bisect_lambda(c, e, guess, tol)
    return ModularReport(modular, lam, iters, bracket)
