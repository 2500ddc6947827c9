"""Discrete fractional p(x)-Laplacian on the cell grid.

All nonlocal quantities reduce to sums over ordered cell pairs (i, j),
i != j, with pairs where both cells lie on the exterior collar excluded
(such pairs are outside the operator's support set).  Each unordered pair
is therefore counted twice, which realizes the factor 2 of the
principal-value definition without a separate constant.  Per pair the
table holds the distance d_ij, the exponent p_ij = p(x_i, x_j) and the
kernel weight d_ij**-(N + s*p_ij).

The operator value on a cell is the exact gradient, with respect to
interior cell values weighted by cell measures, of the discrete nonlocal
energy sum_(i,j) (1/p_ij) |u_i - u_j|^p_ij k_ij w_i w_j.  Diagonal pairs
drop out identically for cellwise-constant data, so no principal-value
cutoff parameter appears.
"""

import numpy as np

from .errors import ContextMismatch, GridMismatch, NotW0
from .exponents import validate_assumptions
from .grid import GridFunction

__all__ = [
    "OperatorContext",
    "build_context",
    "apply_operator",
    "weak_form",
    "monotonicity_gap",
    "convexity_inequality_check",
]

#: precompute the dense pair table up to this many total cells
DENSE_LIMIT = 4096

#: row block size for the matrix-free path
BLOCK = 256


class OperatorContext:
    """Grid + exponent field + (optionally precomputed) pair table."""

    def __init__(self, grid, field, summary=None, dense=None):
        self.grid = grid
        self.field = field
        self.summary = summary
        n_tot = grid.n_total
        self.dense = (n_tot <= DENSE_LIMIT) if dense is None else bool(dense)
        self.w = grid.widths
        self.x = grid.centers
        self.q_interior = np.asarray(field.q(grid.interior_centers), dtype=float)
        if self.dense:
            K, P = self._build_block(0, n_tot)
            self.K = K
            self.P = P
        else:
            self.K = None
            self.P = None

    def _build_block(self, i0, i1):
        """Kernel and exponent rows i0:i1 against all columns; excluded
        pairs carry kernel weight exactly 0."""
        x, field, grid = self.x, self.field, self.grid
        d = np.abs(x[i0:i1, None] - x[None, :])
        p = np.asarray(field.p(x[i0:i1, None], x[None, :]), dtype=float)
        allowed = grid.interior_mask[i0:i1, None] | grid.interior_mask[None, :]
        allowed &= d > 0.0
        d_safe = np.where(allowed, d, 1.0)
        k = d_safe ** -(field.spatial_dim + field.s * p)
        k[~allowed] = 0.0
        return k, p

    def _blocks(self, rows=None):
        """Yield (i0, i1, K_block, P_block); ``rows`` restricts to a slice."""
        lo, hi = (0, self.grid.n_total) if rows is None else (rows.start, rows.stop)
        if self.dense:
            yield lo, hi, self.K[lo:hi], self.P[lo:hi]
        else:
            for i0 in range(lo, hi, BLOCK):
                i1 = min(i0 + BLOCK, hi)
                k, p = self._build_block(i0, i1)
                yield i0, i1, k, p

    # -- pair reductions ----------------------------------------------------

    def sp_modular(self, vals):
        """sum over pairs of |u_i - u_j|^p_ij k_ij w_i w_j."""
        tot = 0.0
        for i0, i1, K, P in self._blocks():
            du = np.abs(vals[i0:i1, None] - vals[None, :])
            tot += float(np.einsum("ij,i,j->", du**P * K, self.w[i0:i1], self.w))
        return tot

    def i1(self, vals):
        """Nonlocal energy sum over pairs of (1/p_ij) |u_i - u_j|^p_ij k_ij w_i w_j."""
        tot = 0.0
        for i0, i1, K, P in self._blocks():
            du = np.abs(vals[i0:i1, None] - vals[None, :])
            tot += float(np.einsum("ij,i,j->", du**P / P * K, self.w[i0:i1], self.w))
        return tot

    def pair_stats(self, vals):
        """(i1, sp_modular) in a single pass over the table."""
        e = 0.0
        rho = 0.0
        for i0, i1, K, P in self._blocks():
            du = np.abs(vals[i0:i1, None] - vals[None, :])
            t = du**P * K
            rho += float(np.einsum("ij,i,j->", t, self.w[i0:i1], self.w))
            e += float(np.einsum("ij,i,j->", t / P, self.w[i0:i1], self.w))
        return e, rho

    def apply(self, vals):
        """Operator values on interior cells: 2 sum_j |du|^(p-2) du k_ij w_j."""
        g = self.grid
        out = np.zeros(g.n)
        for i0, i1, K, P in self._blocks(rows=g.interior_slice):
            du = vals[i0:i1, None] - vals[None, :]
            a = np.abs(du) ** (P - 2.0) * du
            out[i0 - g.interior_slice.start : i1 - g.interior_slice.start] = 2.0 * (
                (a * K) @ self.w
            )
        return out

    def weak(self, uvals, vvals):
        """Pair sum |du|^(p-2) du dv k_ij w_i w_j."""
        tot = 0.0
        for i0, i1, K, P in self._blocks():
            du = uvals[i0:i1, None] - uvals[None, :]
            dv = vvals[i0:i1, None] - vvals[None, :]
            a = np.abs(du) ** (P - 2.0) * du
            tot += float(np.einsum("ij,i,j->", a * dv * K, self.w[i0:i1], self.w))
        return tot

    def gap(self, uvals, vvals):
        """Pair sum (|du|^(p-2) du - |dv|^(p-2) dv)(du - dv) k w w.

        Each summand is a product of same-signed factors, so the reduction
        stays nonnegative up to roundoff.
        """
        tot = 0.0
        for i0, i1, K, P in self._blocks():
            du = uvals[i0:i1, None] - uvals[None, :]
            dv = vvals[i0:i1, None] - vvals[None, :]
            au = np.abs(du) ** (P - 2.0) * du
            av = np.abs(dv) ** (P - 2.0) * dv
            tot += float(
                np.einsum("ij,i,j->", (au - av) * (du - dv) * K, self.w[i0:i1], self.w)
            )
        return tot

    def pair_coeffs(self, vals):
        """Flattened (coeff, exponent) arrays with coeff = |du|^p k w w > 0.

        The scaled modular of u/lam is then sum(coeff * lam**-exponent);
        used by the seminorm bisection and the ray scaling root-find.
        """
        cs = []
        es = []
        for i0, i1, K, P in self._blocks():
            du = np.abs(vals[i0:i1, None] - vals[None, :])
            c = du**P * K * np.outer(self.w[i0:i1], self.w)
            keep = c > 0.0
            cs.append(c[keep])
            es.append(P[keep])
        return np.concatenate(cs), np.concatenate(es)

    def sp_grad_interior(self, vals, lam=1.0):
        """Measure-weighted gradient of sum |du/lam|^p k w w on interior cells:
        (2/lam) sum_j p_ij |du/lam|^(p-1) sgn(du) k_ij w_j."""
        g = self.grid
        out = np.zeros(g.n)
        for i0, i1, K, P in self._blocks(rows=g.interior_slice):
            du = (vals[i0:i1, None] - vals[None, :]) / lam
            a = P * np.abs(du) ** (P - 1.0) * np.sign(du)
            out[i0 - g.interior_slice.start : i1 - g.interior_slice.start] = (
                2.0 / lam
            ) * ((a * K) @ self.w)
        return out

    def sp_dlambda(self, vals, lam):
        """d/d lam of sum |du/lam|^p k w w (negative for nonzero u)."""
        tot = 0.0
        for i0, i1, K, P in self._blocks():
            du = np.abs(vals[i0:i1, None] - vals[None, :]) / lam
            tot += float(
                np.einsum("ij,i,j->", P * du**P * K, self.w[i0:i1], self.w)
            )
        return -tot / lam

    def _check_function(self, u, require_w0=True):
        if not u.grid.compatible_with(self.grid):
            raise ContextMismatch("grid function does not match the context grid")
        if require_w0 and not u.w0:
            raise NotW0("operation requires exterior values pinned to zero")


def build_context(grid, field, validate=True, sample_resolution=65, dense=None):
    """Assemble the operator context; validates the exponent field against
    the grid's truncated region unless told otherwise."""
    summary = (
        validate_assumptions(field, grid.domain, sample_resolution) if validate else None
    )
    return OperatorContext(grid, field, summary=summary, dense=dense)


def apply_operator(u, ctx):
    """Apply the nonlocal operator to a W0 grid function.

    Returns a W0 grid function holding the operator values on interior
    cells; the operator acts on interior unknowns only, so collar entries
    of the result are stored as zeros.
    """
    ctx._check_function(u)
    return GridFunction.from_interior(ctx.grid, ctx.apply(u.values))


def weak_form(u, v, ctx):
    """Duality pairing of the operator at u against v (both W0)."""
    if not u.grid.compatible_with(v.grid):
        raise GridMismatch("u and v live on different grids")
    ctx._check_function(u)
    ctx._check_function(v)
    return ctx.weak(u.values, v.values)


def monotonicity_gap(u, v, ctx):
    """Pairing of the operator difference against u - v; nonnegative, and
    strictly positive for u != v."""
    if not u.grid.compatible_with(v.grid):
        raise GridMismatch("u and v live on different grids")
    ctx._check_function(u)
    ctx._check_function(v)
    return ctx.gap(u.values, v.values)


def convexity_inequality_check(r, s_val, pbar, tol=1e-12):
    """Check pbar |r|^(pbar-2) r (s_val - r) <= |s_val|^pbar - |r|^pbar
    up to ``tol`` times a magnitude scale.  Broadcasts over array inputs."""
    r = np.asarray(r, dtype=float)
    s_val = np.asarray(s_val, dtype=float)
    pbar = np.asarray(pbar, dtype=float)
    if np.any(pbar < 2.0):
        raise ValueError("pbar must be >= 2")
    rp = np.abs(r) ** pbar
    sp = np.abs(s_val) ** pbar
    lhs = pbar * np.abs(r) ** (pbar - 2.0) * r * (s_val - r)
    rhs = sp - rp
    ok = lhs <= rhs + tol * (1.0 + sp + rp)
    return bool(ok) if ok.ndim == 0 else ok
