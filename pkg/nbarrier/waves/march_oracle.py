"""
Time-marching oracle for the wave speed and profile.

The parabolic system is integrated by the method of lines in a frame moving
with speed ``c``:

    u_t = u_xx + c u_x + u (1 - u - a1 v)
    v_t = d v_xx + c v_x + k v (1 - a2 u - v)

The horizon is split into chunks; after each one ``c`` is corrected by the
measured drift of the ``u = 1/2`` level set, so the front stays near the
middle of [-L, L].  The speed is the slope of the accumulated front position
over the last fifth of the horizon.
"""
from __future__ import annotations

from typing import List, Optional, Tuple

import numpy as np
import scipy.sparse as sp
from scipy.integrate import solve_ivp

from ..errors import CFLViolation, NotBistable, NotTraveling
from ..model.params import ScaledParams, bistable
from ..utils.logging_system import setup_log_system
from .profile import LEFT_STATE, RIGHT_STATE, SolverConfig, WaveProfile, boundary_terms, fd_operators, residual

logger = setup_log_system("march_oracle")

MAX_HALVINGS = 10
SAMPLES_PER_CHUNK = 40
TAIL_FRACTION = 0.2
# Allowed relative disagreement between the two halves of the tail.
SPEED_DRIFT = 1e-3


class _MovingFrame:
    def __init__(self, p: ScaledParams, cfg: SolverConfig) -> None:
        self.a1, self.a2 = float(p.a1), float(p.a2)
        self.d, self.k = float(p.d), float(p.k)
        self.m = cfg.N - 1
        self.d1, self.d2 = fd_operators(self.m, cfg.h)
        self.bu1, self.bu2 = boundary_terms(LEFT_STATE[0], RIGHT_STATE[0], self.m, cfg.h)
        self.bv1, self.bv2 = boundary_terms(LEFT_STATE[1], RIGHT_STATE[1], self.m, cfg.h)
        self.c = 0.0

    def rhs(self, t: float, y: np.ndarray) -> np.ndarray:
        u, v = y[: self.m], y[self.m :]
        du = self.d2 @ u + self.bu2 + self.c * (self.d1 @ u + self.bu1) + u * (1 - u - self.a1 * v)
        dv = (
            self.d * (self.d2 @ v + self.bv2)
            + self.c * (self.d1 @ v + self.bv1)
            + self.k * v * (1 - self.a2 * u - v)
        )
        return np.concatenate([du, dv])

    def jac(self, t: float, y: np.ndarray) -> sp.csc_matrix:
        u, v = y[: self.m], y[self.m :]
        uu = self.d2 + self.c * self.d1 + sp.diags(1 - 2 * u - self.a1 * v)
        vv = self.d * self.d2 + self.c * self.d1 + sp.diags(self.k * (1 - self.a2 * u - 2 * v))
        return sp.bmat(
            [[uu, sp.diags(-self.a1 * u)], [sp.diags(-self.k * self.a2 * v), vv]],
            format="csc",
        )


def level_set(x: np.ndarray, u: np.ndarray, level: float = 0.5) -> float:
    """First crossing of ``u = level`` from above, linearly interpolated."""
    below = np.nonzero(u < level)[0]
    if below.size == 0 or below[0] == 0:
        raise NotTraveling("the u = 1/2 level set left the computational domain")
    j = below[0]
    u0, u1 = u[j - 1], u[j]
    return float(x[j - 1] + (u0 - level) / (u0 - u1) * (x[j] - x[j - 1]))


def _explicit_dt(cfg: SolverConfig, d: float) -> float:
    limit = cfg.h**2 / (2.0 * max(1.0, d))
    dt = cfg.march_dt if cfg.march_dt is not None else 0.9 * limit
    halvings = 0
    while dt > limit:
        if halvings == MAX_HALVINGS:
            raise CFLViolation(f"explicit step {cfg.march_dt:g} exceeds the stability limit {limit:.3g}")
        dt *= 0.5
        halvings += 1
    if halvings:
        logger.warning(f"explicit step halved {halvings} times to {dt:.3g}")
    return dt


def _euler_chunk(frame: _MovingFrame, y: np.ndarray, t_eval: np.ndarray, dt: float):
    """Forward Euler through ``t_eval`` with a step no larger than ``dt``."""
    samples = [y.copy()]
    for t0, t1 in zip(t_eval[:-1], t_eval[1:]):
        n_steps = int(np.ceil((t1 - t0) / dt - 1e-12))
        step = (t1 - t0) / n_steps
        for i in range(n_steps):
            y = y + step * frame.rhs(t0 + i * step, y)
        if not np.all(np.isfinite(y)) or np.abs(y).max() > 10.0:
            raise CFLViolation(f"explicit integration became unstable before t={t1:.4g}")
        samples.append(y.copy())
    return y, np.array(samples).T


def _slope(t: np.ndarray, y: np.ndarray) -> float:
    return float(np.polyfit(t, y, 1)[0])


def march_oracle(
    p: ScaledParams,
    cfg: Optional[SolverConfig] = None,
    t_end: float = 200.0,
    initial: Optional[WaveProfile] = None,
) -> WaveProfile:
    """
    Integrate the parabolic system and return the recentred final frame.

    Parameters
    ----------
    p : ScaledParams
        Bistable scaled parameters.
    cfg : SolverConfig, optional
        Grid, stepping method and number of frame-speed corrections.
    t_end : float
        Time horizon.
    initial : WaveProfile, optional
        Starting profile; its ``theta`` seeds the frame speed.  A step from
        e2 to e3 at x = 0 is used otherwise.

    Raises
    ------
    CFLViolation
        The explicit step stayed unstable.
    NotTraveling
        The front speed did not settle, or the front left the domain.
    """
    cfg = cfg or SolverConfig()
    if not bistable(p):
        raise NotBistable(f"oracle needs a1 > 1 and a2 > 1, got a1={p.a1}, a2={p.a2}")
    if not t_end > 0:
        raise ValueError(f"t_end must be > 0, got {t_end!r}")

    x = cfg.grid()
    xi = x[1:-1]
    frame = _MovingFrame(p, cfg)
    if initial is None:
        u0 = np.where(xi < 0, 1.0, np.where(xi > 0, 0.0, 0.5))
        v0 = 1.0 - u0
    else:
        u0 = np.interp(xi, initial.grid, initial.u)
        v0 = np.interp(xi, initial.grid, initial.v)
        frame.c = initial.theta
    y = np.concatenate([u0, v0])

    dt = _explicit_dt(cfg, frame.d) if cfg.march_method == "explicit" else None
    edges = np.linspace(0.0, t_end, cfg.oracle_chunks + 1)
    times: List[float] = []
    positions: List[float] = []
    shift = 0.0
    m = frame.m
    for i in range(cfg.oracle_chunks):
        t0, t1 = float(edges[i]), float(edges[i + 1])
        t_eval = np.linspace(t0, t1, SAMPLES_PER_CHUNK + 1)
        if dt is None:
            sol = solve_ivp(frame.rhs, (t0, t1), y, method="BDF", t_eval=t_eval, jac=frame.jac, rtol=1e-8, atol=1e-10)
            if not sol.success:
                raise NotTraveling(f"time integration failed: {sol.message}")
            y, states = sol.y[:, -1], sol.y
        else:
            y, states = _euler_chunk(frame, y, t_eval, dt)
        fronts = np.array([level_set(xi, states[:m, j]) for j in range(states.shape[1])])
        positions.extend((shift + frame.c * (t_eval - t0) + fronts).tolist())
        times.extend(t_eval.tolist())
        shift += frame.c * (t1 - t0)
        drift = (fronts[-1] - fronts[0]) / (t1 - t0)
        logger.debug(f"chunk {i + 1}/{cfg.oracle_chunks}: frame speed {frame.c:.6g}, drift {drift:.3e}")
        frame.c += drift

    speed, halves = _tail_speed(np.array(times), np.array(positions))

    u = np.concatenate([[LEFT_STATE[0]], y[:m], [RIGHT_STATE[0]]])
    v = np.concatenate([[LEFT_STATE[1]], y[m:], [RIGHT_STATE[1]]])
    min_value = float(min(u.min(), v.min()))
    np.clip(u, 0.0, None, out=u)
    np.clip(v, 0.0, None, out=v)
    center = level_set(x, u, cfg.phase_anchor)
    profile = WaveProfile(
        x - center,
        u,
        v,
        speed,
        meta={
            "method": f"march-{cfg.march_method}",
            "t_end": t_end,
            "frame_speed": frame.c,
            "tail_slopes": list(halves),
            "min_value": min_value,
            "L": cfg.L,
            "N": cfg.N,
            "eps_bc": cfg.eps_bc,
            "config_hash": cfg.config_hash(),
        },
    )
    profile.meta["residual"] = residual(profile, p)
    logger.info(f"oracle speed {speed:.8g} (residual {profile.meta['residual']:.3e})")
    return profile


def _tail_speed(times: np.ndarray, positions: np.ndarray) -> Tuple[float, Tuple[float, float]]:
    start = times[-1] - TAIL_FRACTION * (times[-1] - times[0])
    mask = times >= start
    t, y = times[mask], positions[mask]
    if t.size < 4:
        raise NotTraveling("too few samples in the final part of the horizon")
    speed = _slope(t, y)
    half = t.size // 2
    first, second = _slope(t[: half + 1], y[: half + 1]), _slope(t[half:], y[half:])
    if abs(first - second) > SPEED_DRIFT * max(1.0, abs(speed)):
        raise NotTraveling(f"front speed still changing: {first:.6g} then {second:.6g}")
    return speed, (first, second)
