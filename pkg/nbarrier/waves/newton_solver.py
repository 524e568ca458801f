"""
Newton solver for the (e2, e3)-travelling wave with the speed as an unknown.

Unknowns are the interior samples of ``u`` and ``v`` plus ``theta``; the
extra equation is the phase condition ``u(0) = phase_anchor``.  The Jacobian
is assembled as a sparse block matrix and each step is damped by
backtracking on the max-norm residual.  When Newton stalls from the tanh
guess, the solve is retried along a parameter path starting at the
symmetric set (a1, a2, d, k) = (2, 2, 1, 1).
"""
from __future__ import annotations

from typing import List, Optional, Tuple

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import spsolve

from ..errors import NoConvergence, NonPositiveSolution, NotBistable
from ..model.params import ScaledParams, bistable
from ..utils.logging_system import setup_log_system
from .profile import LEFT_STATE, RIGHT_STATE, SolverConfig, WaveProfile, boundary_terms, fd_operators, residual

logger = setup_log_system("newton_solver")

# Clipping tolerance for tiny negative values after convergence.
NEGATIVE_TOL = 1e-8
_MIN_DAMPING = 2.0**-12
_EASY_START = ScaledParams(a1=2.0, a2=2.0, d=1.0, k=1.0)


class _WaveSystem:
    """Residual and Jacobian of the discretised wave equations for one parameter set."""

    def __init__(self, p: ScaledParams, cfg: SolverConfig) -> None:
        self.a1, self.a2 = float(p.a1), float(p.a2)
        self.d, self.k = float(p.d), float(p.k)
        self.m = cfg.N - 1
        self.h = cfg.h
        self.anchor_index = cfg.N // 2 - 1
        self.anchor = cfg.phase_anchor
        self.d1, self.d2 = fd_operators(self.m, self.h)
        self.bu1, self.bu2 = boundary_terms(LEFT_STATE[0], RIGHT_STATE[0], self.m, self.h)
        self.bv1, self.bv2 = boundary_terms(LEFT_STATE[1], RIGHT_STATE[1], self.m, self.h)

    def split(self, z: np.ndarray) -> Tuple[np.ndarray, np.ndarray, float]:
        m = self.m
        return z[:m], z[m : 2 * m], float(z[-1])

    def residual(self, z: np.ndarray) -> np.ndarray:
        u, v, theta = self.split(z)
        r_u = self.d2 @ u + self.bu2 + theta * (self.d1 @ u + self.bu1) + u * (1 - u - self.a1 * v)
        r_v = (
            self.d * (self.d2 @ v + self.bv2)
            + theta * (self.d1 @ v + self.bv1)
            + self.k * v * (1 - self.a2 * u - v)
        )
        return np.concatenate([r_u, r_v, [u[self.anchor_index] - self.anchor]])

    def jacobian(self, z: np.ndarray) -> sp.csc_matrix:
        u, v, theta = self.split(z)
        uu = self.d2 + theta * self.d1 + sp.diags(1 - 2 * u - self.a1 * v)
        uv = sp.diags(-self.a1 * u)
        vu = sp.diags(-self.k * self.a2 * v)
        vv = self.d * self.d2 + theta * self.d1 + sp.diags(self.k * (1 - self.a2 * u - 2 * v))
        u_theta = sp.csr_matrix((self.d1 @ u + self.bu1).reshape(-1, 1))
        v_theta = sp.csr_matrix((self.d1 @ v + self.bv1).reshape(-1, 1))
        phase = sp.csr_matrix(([1.0], ([0], [self.anchor_index])), shape=(1, self.m))
        return sp.bmat(
            [
                [uu, uv, u_theta],
                [vu, vv, v_theta],
                [phase, None, None],
            ],
            format="csc",
        )


def initial_guess(cfg: SolverConfig) -> np.ndarray:
    """tanh front of unit width between e2 and e3, speed 0; optional seeded jitter."""
    x = cfg.grid()[1:-1]
    u = 0.5 * (1 - np.tanh(x))
    v = 0.5 * (1 + np.tanh(x))
    if cfg.jitter_seed is not None:
        rng = np.random.default_rng(cfg.jitter_seed)
        u = np.clip(u + 1e-3 * rng.standard_normal(u.size), 0.0, 1.0)
        v = np.clip(v + 1e-3 * rng.standard_normal(v.size), 0.0, 1.0)
    return np.concatenate([u, v, [0.0]])


def _newton(system: _WaveSystem, z: np.ndarray, cfg: SolverConfig) -> Tuple[np.ndarray, float, int]:
    F = system.residual(z)
    norm = float(np.abs(F).max())
    for it in range(cfg.max_iter + 1):
        logger.debug(f"newton iter {it}: residual {norm:.3e}, theta {z[-1]:.6g}")
        if norm <= cfg.tol:
            return z, norm, it
        if it == cfg.max_iter:
            break
        try:
            dz = spsolve(system.jacobian(z), -F)
        except RuntimeError as e:
            raise NoConvergence(f"singular Newton system: {e}", last_residual=norm) from e
        if not np.all(np.isfinite(dz)):
            raise NoConvergence("Newton step is not finite", last_residual=norm)
        t = 1.0
        while t >= _MIN_DAMPING:
            trial = z + t * dz
            F_trial = system.residual(trial)
            trial_norm = float(np.abs(F_trial).max())
            if np.isfinite(trial_norm) and trial_norm < norm:
                break
            t *= 0.5
        else:
            raise NoConvergence(f"line search failed at iteration {it}", last_residual=norm)
        z, F, norm = trial, F_trial, trial_norm
    raise NoConvergence(f"no convergence in {cfg.max_iter} iterations", last_residual=norm)


def continuation_path(target: ScaledParams, steps: int, start: ScaledParams = _EASY_START) -> List[ScaledParams]:
    """Geometric interpolation of (a1, a2, d, k) from ``start`` to ``target``, both included."""
    names = ("a1", "a2", "d", "k")
    lo = np.log([float(getattr(start, n)) for n in names])
    hi = np.log([float(getattr(target, n)) for n in names])
    path = []
    for s in np.linspace(0.0, 1.0, steps + 1):
        values = np.exp(lo + s * (hi - lo))
        path.append(ScaledParams(*values.tolist()))
    path[-1] = target
    return path


def _solve_path(path: List[ScaledParams], cfg: SolverConfig, z: np.ndarray) -> Tuple[np.ndarray, float, int]:
    total = 0
    norm = float("nan")
    for i, q in enumerate(path):
        logger.debug(f"continuation step {i + 1}/{len(path)}: a1={q.a1}, a2={q.a2}, d={q.d}, k={q.k}")
        z, norm, its = _newton(_WaveSystem(q, cfg), z, cfg)
        total += its
    return z, norm, total


def solve_wave(p: ScaledParams, cfg: Optional[SolverConfig] = None) -> WaveProfile:
    """
    Compute the (e2, e3)-wave and its speed by Newton's method.

    Raises
    ------
    NotBistable
        ``p`` is not in the bistable regime.
    NoConvergence
        Newton stalled, directly and along the continuation path.
    NonPositiveSolution
        The converged profile dips below ``-1e-8``.
    """
    cfg = cfg or SolverConfig()
    if not bistable(p):
        raise NotBistable(f"wave solve needs a1 > 1 and a2 > 1, got a1={p.a1}, a2={p.a2}")

    z0 = initial_guess(cfg)
    continued = False
    if cfg.continuation is not None:
        z, norm, iterations = _solve_path(list(cfg.continuation) + [p], cfg, z0)
        continued = True
    else:
        try:
            z, norm, iterations = _newton(_WaveSystem(p, cfg), z0, cfg)
        except NoConvergence as e:
            logger.warning(f"direct Newton solve failed ({e}); retrying with continuation")
            z, norm, iterations = _solve_path(continuation_path(p, cfg.continuation_steps), cfg, z0)
            continued = True

    m = cfg.N - 1
    u = np.concatenate([[LEFT_STATE[0]], z[:m], [RIGHT_STATE[0]]])
    v = np.concatenate([[LEFT_STATE[1]], z[m : 2 * m], [RIGHT_STATE[1]]])
    min_value = float(min(u.min(), v.min()))
    if min_value < -NEGATIVE_TOL:
        raise NonPositiveSolution(f"profile reaches {min_value:.3e} below zero")
    np.clip(u, 0.0, None, out=u)
    np.clip(v, 0.0, None, out=v)

    profile = WaveProfile(
        cfg.grid(),
        u,
        v,
        float(z[-1]),
        meta={
            "method": "newton",
            "iterations": iterations,
            "continuation": continued,
            "newton_residual": norm,
            "min_value": min_value,
            "L": cfg.L,
            "N": cfg.N,
            "tol": cfg.tol,
            "eps_bc": cfg.eps_bc,
            "config_hash": cfg.config_hash(),
        },
    )
    profile.meta["residual"] = residual(profile, p)
    logger.info(f"wave solved: theta={profile.theta:.8g}, residual={profile.meta['residual']:.3e}")
    return profile
