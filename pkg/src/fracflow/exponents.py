"""Variable exponents p(x, y) and q(x) with admissibility validation.

The two-point exponent p drives the nonlocal kernel, the one-point
exponent q drives the reaction.  Admissibility of a pair (p, q, s):

  (a1)  2 <= p- <= p(x, y) <= p+ < infinity on the truncated pair set,
  (a2)  p symmetric, p(x, y) = p(y, x),
  (a3)  p+ < q- <= q(x) <= q+ < p*_s(x)/2 + 1 pointwise on the interval,
  (a4)  s * p+ < N,

where p*_s(x) = N pbar(x) / (N - s pbar(x)) with pbar(x) = p(x, x) is the
critical exponent of the fractional Sobolev embedding.  Extrema are taken
over the truncated computational region (the interval padded by the collar),
since extrema over an unbounded set are not computable and the discrete
operator's support is exactly the truncated region.

Fields are supplied as closed-form vectorized callables, optionally with
declared analytic bounds; validation cross-checks declared bounds against
dense sampling so a too-optimistic declaration cannot silently shrink the
extrema.
"""

from dataclasses import dataclass

import numpy as np

from .errors import AssumptionViolated, DegenerateDenominator, ConfigError

__all__ = [
    "ExponentField",
    "ExponentSummary",
    "validate_assumptions",
    "critical_exponent",
    "make_exponent_field",
]


@dataclass
class ExponentField:
    """Closed-form exponent maps plus the fractional order.

    ``p(x, y)`` and ``q(x)`` must accept numpy arrays and broadcast.
    ``p_bounds`` / ``q_bounds`` are optional declared (min, max) pairs over
    the truncated region; ``symmetry_tol`` is 0 for closed forms and may be
    relaxed (1e-12) for tabulated fields.
    """

    p: callable
    q: callable
    s: float
    spatial_dim: int = 1
    p_bounds: tuple = None
    q_bounds: tuple = None
    p_name: str = "custom"
    q_name: str = "custom"
    symmetry_tol: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.s < 1.0:
            raise ValueError("fractional order s must lie in (0, 1), got %r" % self.s)
        if self.spatial_dim < 1:
            raise ValueError("spatial_dim must be a positive integer")

    def pbar(self, x):
        """Diagonal exponent p(x, x)."""
        x = np.asarray(x, dtype=float)
        return np.asarray(self.p(x, x), dtype=float)


@dataclass
class ExponentSummary:
    """Validated extrema of an exponent field over the truncated region."""

    p_minus: float
    p_plus: float
    q_minus: float
    q_plus: float
    min_critical_bound: float  # pointwise min of p*_s(x)/2 + 1 over the interval

    def __post_init__(self):
        assert self.p_minus <= self.p_plus and self.q_minus <= self.q_plus


def critical_exponent(field, x):
    """Critical embedding exponent p*_s(x) = N pbar(x) / (N - s pbar(x))."""
    N = field.spatial_dim
    pbar = float(field.pbar(x))
    denom = N - field.s * pbar
    if denom <= 0.0:
        raise DegenerateDenominator(
            "N - s*pbar(x) = %g <= 0 at x=%r" % (denom, x)
        )
    return N * pbar / denom


def _pair_samples(domain, resolution):
    """Sample points for the truncated pair set: both axes over the padded
    interval, keeping only pairs with at least one coordinate inside the
    closed interval (pairs with both points exterior do not belong)."""
    lo = domain.a - domain.exterior_radius
    hi = domain.b + domain.exterior_radius
    xs = np.linspace(lo, hi, resolution)
    X, Y = np.meshgrid(xs, xs, indexing="ij")
    in_omega = (xs >= domain.a) & (xs <= domain.b)
    keep = in_omega[:, None] | in_omega[None, :]
    return X[keep], Y[keep]


def _check_declared(kind, declared, sampled_min, sampled_max, witness):
    lo, hi = declared
    tol = 1e-12 * (1.0 + abs(lo) + abs(hi))
    if sampled_min < lo - tol or sampled_max > hi + tol:
        raise ValueError(
            "declared %s bounds (%g, %g) do not contain sampled extrema (%g, %g) "
            "near %r; declared bounds must never underestimate"
            % (kind, lo, hi, sampled_min, sampled_max, witness)
        )
    return float(lo), float(hi)


def validate_assumptions(field, domain, sample_resolution=65):
    """Check (a1)-(a4) by dense sampling over the truncated region.

    Returns the validated extrema; raises AssumptionViolated naming the
    first failing assumption together with a witnessing sample point.
    """
    if sample_resolution < 2:
        raise ValueError("sample_resolution must be at least 2")
    N = field.spatial_dim

    X, Y = _pair_samples(domain, sample_resolution)
    P = np.asarray(field.p(X, Y), dtype=float)

    # (a2) symmetry, checked before extrema so asymmetric fields fail loudly
    Pt = np.asarray(field.p(Y, X), dtype=float)
    gap = np.abs(P - Pt)
    if np.max(gap) > field.symmetry_tol:
        k = int(np.argmax(gap))
        raise AssumptionViolated(
            "a2",
            "p is not symmetric: p(x,y)=%g vs p(y,x)=%g" % (P[k], Pt[k]),
            witness=(float(X[k]), float(Y[k])),
        )

    if not np.all(np.isfinite(P)):
        k = int(np.argmin(np.isfinite(P)))
        raise AssumptionViolated(
            "a1", "p is not finite", witness=(float(X[k]), float(Y[k]))
        )
    kmin, kmax = int(np.argmin(P)), int(np.argmax(P))
    p_minus, p_plus = float(P[kmin]), float(P[kmax])
    if field.p_bounds is not None:
        p_minus, p_plus = _check_declared(
            "p", field.p_bounds, p_minus, p_plus, (float(X[kmax]), float(Y[kmax]))
        )
    if p_minus < 2.0:
        raise AssumptionViolated(
            "a1",
            "p must be >= 2 everywhere; min sampled p = %g" % p_minus,
            witness=(float(X[kmin]), float(Y[kmin])),
        )

    # (a4) before (a3): it guarantees the critical exponent is defined
    if field.s * p_plus >= N:
        raise AssumptionViolated(
            "a4",
            "s*p+ = %g must be < N = %d" % (field.s * p_plus, N),
            witness=(float(X[kmax]), float(Y[kmax])),
        )

    xs = np.linspace(domain.a, domain.b, sample_resolution)
    Q = np.asarray(field.q(xs), dtype=float)
    jmin, jmax = int(np.argmin(Q)), int(np.argmax(Q))
    q_minus, q_plus = float(Q[jmin]), float(Q[jmax])
    if field.q_bounds is not None:
        q_minus, q_plus = _check_declared(
            "q", field.q_bounds, q_minus, q_plus, float(xs[jmax])
        )

    pbar = np.asarray(field.pbar(xs), dtype=float)
    crit = N * pbar / (N - field.s * pbar)  # denominators positive by (a4)
    bound = crit / 2.0 + 1.0
    jb = int(np.argmin(bound))
    min_bound = float(bound[jb])

    if not q_minus > p_plus:
        raise AssumptionViolated(
            "a3",
            "need p+ < q-; got p+ = %g, q- = %g" % (p_plus, q_minus),
            witness=float(xs[jmin]),
        )
    if not q_plus < min_bound:
        raise AssumptionViolated(
            "a3",
            "need q+ < p*_s(x)/2 + 1 pointwise; got q+ = %g, min bound = %g"
            % (q_plus, min_bound),
            witness=float(xs[jb]),
        )

    return ExponentSummary(
        p_minus=p_minus,
        p_plus=p_plus,
        q_minus=q_minus,
        q_plus=q_plus,
        min_critical_bound=min_bound,
    )


# --- built-in fields -------------------------------------------------------
#
# "constant"           p(x,y) = v                      q(x) = v
# "affine-radial"      p(x,y) = a + b*(x^2 + y^2)/2    (p only)
# "bump" / "bump-q"    q(x)   = a + b*x^2              (q only)


def _sq_range(lo, hi):
    """Range of x^2 over [lo, hi]."""
    top = max(lo * lo, hi * hi)
    bot = 0.0 if lo <= 0.0 <= hi else min(lo * lo, hi * hi)
    return bot, top


def _affine_radial_bounds(a_coef, b_coef, domain):
    """Extrema of a + b*(x^2+y^2)/2 over the truncated pair set (one leg
    constrained to the closed interval, the other to the padded interval)."""
    nsq_o, msq_o = _sq_range(domain.a, domain.b)
    nsq_f, msq_f = _sq_range(
        domain.a - domain.exterior_radius, domain.b + domain.exterior_radius
    )
    cands = [
        a_coef + b_coef * (u + v) / 2.0
        for u in (nsq_o, msq_o)
        for v in (nsq_f, msq_f)
    ]
    return min(cands), max(cands)


def _bump_bounds(a_coef, b_coef, domain):
    nsq, msq = _sq_range(domain.a, domain.b)
    vals = (a_coef + b_coef * nsq, a_coef + b_coef * msq)
    return min(vals), max(vals)


def _constant2(v):
    def p(x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return np.full(np.broadcast(x, y).shape, float(v))

    return p


def _constant1(v):
    def q(x):
        x = np.asarray(x, dtype=float)
        return np.full(x.shape, float(v))

    return q


def make_exponent_field(
    s,
    p_kind="constant",
    p_params=None,
    q_kind="constant",
    q_params=None,
    domain=None,
    spatial_dim=1,
):
    """Assemble an ExponentField from named built-in exponent shapes.

    Declared analytic bounds are attached whenever the truncated region is
    known (``domain`` given) or the shape is constant.
    """
    p_params = dict(p_params or {})
    q_params = dict(q_params or {})

    if p_kind == "constant":
        v = float(p_params.get("value", 2.0))
        p_fn, p_bounds = _constant2(v), (v, v)
    elif p_kind == "affine-radial":
        a_coef = float(p_params.get("a", 2.0))
        b_coef = float(p_params.get("b", 0.0))

        def p_fn(x, y, _a=a_coef, _b=b_coef):
            x = np.asarray(x, dtype=float)
            y = np.asarray(y, dtype=float)
            return _a + _b * (x**2 + y**2) / 2.0

        p_bounds = _affine_radial_bounds(a_coef, b_coef, domain) if domain else None
    else:
        raise ConfigError("unknown p exponent kind %r" % p_kind)

    if q_kind == "constant":
        v = float(q_params.get("value", 3.0))
        q_fn, q_bounds = _constant1(v), (v, v)
    elif q_kind in ("bump", "bump-q"):
        a_coef = float(q_params.get("a", 3.0))
        b_coef = float(q_params.get("b", 0.0))

        def q_fn(x, _a=a_coef, _b=b_coef):
            x = np.asarray(x, dtype=float)
            return _a + _b * x**2

        q_bounds = _bump_bounds(a_coef, b_coef, domain) if domain else None
    else:
        raise ConfigError("unknown q exponent kind %r" % q_kind)

    return ExponentField(
        p=p_fn,
        q=q_fn,
        s=float(s),
        spatial_dim=spatial_dim,
        p_bounds=p_bounds,
        q_bounds=q_bounds,
        p_name=p_kind,
        q_name=q_kind,
    )
