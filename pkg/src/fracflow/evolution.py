"""Time integration of the nonlocal reaction-diffusion flow.

The flow u_t = -(operator value) + |u|^(q-2) u dissipates the energy, so an
attempted step is accepted only if the energy does not increase beyond a
small tolerance; otherwise the step size is halved.  Two steppers are
available: forward Euler, and an implicit-explicit proximal step that is
implicit in the monotone nonlocal part (a strictly convex minimization,
solved by damped gradient iteration) and explicit in the reaction.

Along the run the engine records, per accepted step, the energy balance
residual |sum_k dt_k ||(u_{k+1}-u_k)/dt_k||_2^2 + E(u_n) - E(u_0)|, the
probe-space norm, and the state's position relative to the potential well;
crossing the blow-up cap on the L^2 norm terminates the run with a
finite-time estimate.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .energy import IN_EXTERIOR, classify, energy, energy_gradient
from .errors import AuditFailed, InnerSolveStalled, NonFinite
from .grid import GridFunction, l2_norm
from .modular import luxemburg_norm

__all__ = [
    "StepControl",
    "SimState",
    "Sample",
    "TrajectoryRecord",
    "AuditRow",
    "AuditResult",
    "make_state",
    "step_explicit",
    "step_imex",
    "run",
    "blowup_inequality_audit",
    "exterior_invariance_check",
    "REACHED_FINAL_TIME",
    "BLOWUP_CAP_HIT",
    "STEP_UNDERFLOW",
    "MAX_STEPS",
]

REACHED_FINAL_TIME = "ReachedFinalTime"
BLOWUP_CAP_HIT = "BlowUpCapHit"
STEP_UNDERFLOW = "StepUnderflow"
MAX_STEPS = "MaxSteps"

SCHEME_EXPLICIT = "explicit"
SCHEME_IMEX = "imex"


@dataclass
class StepControl:
    """Adaptive time-stepping parameters."""

    dt_init: float = 1e-3
    dt_min: float = 1e-12
    dt_max: float = 1e-2
    t_final: float = 1.0
    energy_increase_tol: float = 1e-10
    blowup_cap: float = 1e6
    max_steps: int = 200_000
    scheme: str = SCHEME_EXPLICIT
    inner_tol: float = 1e-8
    inner_max: int = 300

    def __post_init__(self):
        if not (0.0 < self.dt_min <= self.dt_init <= self.dt_max):
            raise ValueError("need 0 < dt_min <= dt_init <= dt_max")
        if self.blowup_cap <= 0.0 or self.t_final <= 0.0:
            raise ValueError("blowup_cap and t_final must be positive")
        if self.scheme not in (SCHEME_EXPLICIT, SCHEME_IMEX):
            raise ValueError("scheme must be %r or %r" % (SCHEME_EXPLICIT, SCHEME_IMEX))


@dataclass
class SimState:
    """State of the flow at one time: function, energy report, phi = l2^2/2."""

    t: float
    u: GridFunction
    report: object
    phi: float


@dataclass
class Sample:
    """Per accepted step summary; ``dt`` is the step that produced it."""

    t: float
    dt: float
    energy: float
    nehari: float
    phi: float
    l2: float
    lux_r: float
    modular_sp: float
    modular_q: float
    well_class: str
    residual: float
    grad_l2: float


@dataclass
class TrajectoryRecord:
    samples: list
    termination: str
    t_max_estimate: float = None
    t_max_extrapolated: float = None
    rate_constant: float = None  # measured inf of phi' / phi^(q+/2) past phi>1

    def column(self, name):
        return np.array([getattr(s, name) for s in self.samples])


def make_state(u, ctx, t=0.0):
    with np.errstate(over="ignore", invalid="ignore"):
        rep = energy(u, ctx)
    return SimState(t=float(t), u=u, report=rep, phi=0.5 * rep.l2**2)


def _finish(u_new, ctx, t_new):
    if not np.all(np.isfinite(u_new)):
        raise NonFinite("state update produced non-finite values")
    unew = GridFunction.from_interior(ctx.grid, u_new)
    state = make_state(unew, ctx, t=t_new)
    if not np.isfinite(state.report.energy):
        raise NonFinite("energy overflowed at the updated state")
    return state


def step_explicit(state, dt, ctx):
    """Forward Euler step u+ = u - dt * grad E(u)."""
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    with np.errstate(over="ignore", invalid="ignore"):
        g = energy_gradient(state.u, ctx)
        u_new = state.u.interior - dt * g.interior
    return _finish(u_new, ctx, state.t + dt)


def step_imex(state, dt, ctx, inner_tol=1e-8, inner_max=300):
    """Proximal step: implicit in the nonlocal part, explicit reaction.

    u+ minimizes J(v) = ||v - u||^2/(2 dt) + I1(v) - <reaction(u), v>, a
    strictly convex objective.  Solved by damped gradient iteration with
    step size seeded at dt (the inverse curvature of the dominant quadratic
    term), accepting trials on strict residual decrease; for this objective
    the damping condition coincides with descent, so the objective falls
    monotonically up to roundoff while the residual converges to the
    floating-point floor.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    g = ctx.grid
    wi = g.interior_widths
    u0 = state.u.interior
    react = np.abs(u0) ** (ctx.q_interior - 2.0) * u0

    def residual(v_int):
        full = np.zeros(g.n_total)
        full[g.interior_slice] = v_int
        return (v_int - u0) / dt + ctx.apply(full) - react

    def wnorm(r):
        return float(np.sqrt(np.dot(r * r, wi)))

    v = u0.copy()
    r = residual(v)
    r0 = wnorm(r)
    if r0 == 0.0:
        return _finish(v, ctx, state.t + dt)
    target = inner_tol * max(1.0, r0)
    alpha = dt
    rnorm = r0
    for _ in range(inner_max):
        if rnorm <= target:
            return _finish(v, ctx, state.t + dt)
        a = alpha
        accepted = False
        for _ in range(60):
            trial = v - a * r
            rt = residual(trial)
            rtn = wnorm(rt)
            if np.isfinite(rtn) and rtn < rnorm:
                v, r, rnorm = trial, rt, rtn
                alpha = min(a * 2.0, 4.0 * dt)
                accepted = True
                break
            a *= 0.5
        if not accepted:
            break
    if rnorm <= target:
        return _finish(v, ctx, state.t + dt)
    raise InnerSolveStalled(
        "proximal residual %g above tolerance %g" % (rnorm, target)
    )


def _sample_from(state, ctx, geometry, r_probe, dt, residual):
    grad = energy_gradient(state.u, ctx)
    lux = luxemburg_norm(state.u, r_probe).luxemburg_norm
    rep = state.report
    return Sample(
        t=state.t,
        dt=dt,
        energy=rep.energy,
        nehari=rep.nehari,
        phi=state.phi,
        l2=rep.l2,
        lux_r=lux,
        modular_sp=rep.gagliardo_modular,
        modular_q=rep.q_modular,
        well_class=classify(state.u, geometry, ctx),
        residual=residual,
        grad_l2=l2_norm(grad),
    )


def _extrapolate_tmax(record, q_plus):
    """Integrate phi' = c * phi^(q+/2) from the last sample to infinity
    using the measured rate constant; None when not measurable."""
    c = record.rate_constant
    if c is None or c <= 0.0 or q_plus <= 2.0:
        return None
    phi_last = record.samples[-1].phi
    t_last = record.samples[-1].t
    return t_last + phi_last ** (1.0 - q_plus / 2.0) / (c * (q_plus / 2.0 - 1.0))


def _measure_rate_constant(samples, q_plus):
    """Infimum of forward-difference phi' over phi^(q+/2) on steps with
    phi > 1; the reported constant of the blow-up differential inequality."""
    ratios = []
    for k in range(len(samples) - 1):
        if samples[k].phi <= 1.0:
            continue
        dt = samples[k + 1].dt
        phip = (samples[k + 1].phi - samples[k].phi) / dt
        ratios.append(phip / samples[k].phi ** (q_plus / 2.0))
    return float(min(ratios)) if ratios else None


def run(u0, control, ctx, geometry, r_probe=2.0):
    """Integrate from u0 with energy-based step acceptance.

    Steps until the final time, the blow-up cap, step underflow, or the step
    budget; rejected steps halve dt and are not recorded.  The returned
    record holds one sample per accepted step plus the initial state.
    """
    ctx._check_function(u0)
    state = make_state(u0, ctx, t=0.0)
    e0 = state.report.energy
    samples = [_sample_from(state, ctx, geometry, r_probe, dt=0.0, residual=0.0)]
    diss = 0.0
    dt = min(max(control.dt_init, control.dt_min), control.dt_max)
    termination = None
    t_max_estimate = None
    accepted = 0

    while True:
        remaining = control.t_final - state.t
        if remaining <= 1e-6 * dt:  # absorbs accumulated roundoff in t
            termination = REACHED_FINAL_TIME
            break
        if accepted >= control.max_steps:
            termination = MAX_STEPS
            break
        dt_eff = min(dt, remaining)
        try:
            if control.scheme == SCHEME_IMEX:
                new = step_imex(
                    state, dt_eff, ctx, inner_tol=control.inner_tol,
                    inner_max=control.inner_max,
                )
            else:
                new = step_explicit(state, dt_eff, ctx)
        except NonFinite:
            termination = BLOWUP_CAP_HIT
            t_max_estimate = state.t
            break
        except InnerSolveStalled:
            dt = dt_eff / 2.0
            if dt < control.dt_min:
                termination = STEP_UNDERFLOW
                break
            continue
        if new.report.energy <= state.report.energy + control.energy_increase_tol:
            diss += float(
                np.dot(
                    (new.u.interior - state.u.interior) ** 2,
                    ctx.grid.interior_widths,
                )
            ) / dt_eff
            state = new
            accepted += 1
            residual = abs(diss + state.report.energy - e0)
            samples.append(
                _sample_from(state, ctx, geometry, r_probe, dt=dt_eff, residual=residual)
            )
            if state.report.l2 >= control.blowup_cap:
                termination = BLOWUP_CAP_HIT
                t_max_estimate = state.t
                break
        else:
            dt = dt_eff / 2.0
            if dt < control.dt_min:
                termination = STEP_UNDERFLOW
                break

    record = TrajectoryRecord(
        samples=samples,
        termination=termination,
        t_max_estimate=t_max_estimate,
    )
    if termination == BLOWUP_CAP_HIT and e0 < 0.0 and ctx.summary is not None:
        q_plus = ctx.summary.q_plus
        record.rate_constant = _measure_rate_constant(samples, q_plus)
        record.t_max_extrapolated = _extrapolate_tmax(record, q_plus)
    return record


@dataclass
class AuditRow:
    t: float
    dt: float
    phi: float
    phi_prime: float
    identity_gap: float  # |phi' + I|, zero up to the step tolerance
    bound_margin: float  # phi' - (-p+ E0 + (1 - p+/q-) rho_q), >= -tol
    ratio: float  # phi' / phi^(q+/2), only meaningful past phi > 1
    tol: float


@dataclass
class AuditResult:
    rows: list
    rate_constant: float
    first_t_phi_above_one: float
    passed: bool = True


def blowup_inequality_audit(record, ctx, e0, tol_factor=5.0):
    """Verify the discrete blow-up inequality chain on an E(u0) < 0 run.

    Per accepted step: (i) the forward difference of phi matches
    rho_q - rho_sp up to a tolerance scaling with dt and the local rate of
    change; (ii) phi' >= -p+ E0 + (1 - p+/q-) rho_q up to the same
    tolerance; (iii) phi eventually exceeds 1 and the measured infimum of
    phi'/phi^(q+/2) beyond that point is strictly positive (the constant is
    reported, never assumed).  Raises AuditFailed at the first violation.
    """
    if e0 >= 0.0:
        raise ValueError("audit requires a trajectory started at negative energy")
    summary = ctx.summary
    if summary is None:
        raise ValueError("context carries no validated exponent summary")
    p_plus, q_minus, q_plus = summary.p_plus, summary.q_minus, summary.q_plus
    c1 = 1.0 - p_plus / q_minus
    samples = record.samples
    rows = []
    first_above = None
    for k in range(len(samples) - 1):
        cur, nxt = samples[k], samples[k + 1]
        dt = nxt.dt
        phip = (nxt.phi - cur.phi) / dt
        scale = 1.0 + cur.grad_l2**2 + abs(nxt.nehari - cur.nehari) / dt
        tol = tol_factor * dt * scale
        identity_gap = abs(phip - (-cur.nehari))
        if identity_gap > tol:
            raise AuditFailed(
                "phi' identity off by %g (tol %g) at step %d" % (identity_gap, tol, k),
                step=k,
            )
        bound = -p_plus * e0 + c1 * cur.modular_q
        margin = phip - bound
        if margin < -tol:
            raise AuditFailed(
                "phi' lower bound violated by %g (tol %g) at step %d"
                % (-margin, tol, k),
                step=k,
            )
        if first_above is None and cur.phi > 1.0:
            first_above = cur.t
        ratio = phip / cur.phi ** (q_plus / 2.0) if cur.phi > 1.0 else np.nan
        rows.append(
            AuditRow(
                t=cur.t,
                dt=dt,
                phi=cur.phi,
                phi_prime=phip,
                identity_gap=identity_gap,
                bound_margin=margin,
                ratio=ratio,
                tol=tol,
            )
        )
    if first_above is None:
        raise AuditFailed("phi never exceeded 1; blow-up regime not reached")
    rate = _measure_rate_constant(samples, q_plus)
    if rate is None or rate <= 0.0:
        raise AuditFailed("measured rate constant is not positive past phi > 1")
    return AuditResult(rows=rows, rate_constant=rate, first_t_phi_above_one=first_above)


def exterior_invariance_check(record):
    """True iff every sample up to termination sits in the well exterior.

    Emits a warning (and returns the literal all-samples answer) when the
    record is empty or does not start in the exterior, since the invariance
    claim presumes exterior initial data.
    """
    if not record.samples:
        warnings.warn("empty trajectory record; invariance is vacuous", stacklevel=2)
        return True
    if record.samples[0].well_class != IN_EXTERIOR:
        warnings.warn(
            "initial state is %s, not %s; invariance check presumes exterior "
            "initial data" % (record.samples[0].well_class, IN_EXTERIOR),
            stacklevel=2,
        )
    return all(s.well_class == IN_EXTERIOR for s in record.samples)
