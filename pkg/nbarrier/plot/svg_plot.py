"""
Phase-plane figures as standalone SVG.

Colour legend: red ``1 - u - a1 v = 0``, blue ``1 - a2 u - v = 0``, green
the conic F = 0, magenta the two q-lines, yellow the p-line and a dashed
black trajectory.  Every element carries a ``class`` naming its role so the
output can be inspected without rendering it.
"""
from __future__ import annotations

import math
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..barrier.nbarrier import Barrier, barrier_geometry
from ..errors import InconsistentInputs
from ..model.params import ScaledParams
from ..tangent.tangent_line import TangentSolution, tangency_residuals
from ..utils.artifacts import format_float
from ..waves.profile import WaveProfile

ns_svg = "http://www.w3.org/2000/svg"

SIZE = 480
MARGIN = 40
CONIC_SAMPLES = 201
COLORS = {
    "nullcline-u": "red",
    "nullcline-v": "blue",
    "conic": "green",
    "q-line": "magenta",
    "p-line": "yellow",
    "trajectory": "black",
    "tangency": "black",
    "axis": "#444444",
}


def demangle(k: str) -> str:
    return k.rstrip("_").replace("_", "-")


def rounder(x, prec: int = 3):
    if isinstance(x, float):
        xr = round(x, ndigits=prec)
        if (xr % 1) == 0:
            return int(xr)
        return xr
    return x


def props_repr(d: Dict[str, object]) -> str:
    return " ".join(f'{demangle(k)}="{rounder(v)}"' for k, v in d.items())


class Element:
    def __init__(self, tag: str, unary: bool = True, text: str = "", **attr) -> None:
        self.tag = tag
        self.unary = unary
        self.text = text
        self.attr = attr

    def svg(self) -> str:
        props = props_repr(self.attr)
        pre = " " if props else ""
        if self.unary:
            return f"<{self.tag}{pre}{props} />"
        return f"<{self.tag}{pre}{props}>{self.text}</{self.tag}>"


class Canvas:
    """Maps phase-plane coordinates in [0, extent]^2 to pixels, y pointing up."""

    def __init__(self, extent: float, size: int = SIZE, margin: int = MARGIN) -> None:
        self.extent = extent
        self.size = size
        self.margin = margin
        self.elements: List[Element] = []

    def px(self, u: float, v: float) -> Tuple[float, float]:
        span = self.size - 2 * self.margin
        return (
            self.margin + span * float(u) / self.extent,
            self.size - self.margin - span * float(v) / self.extent,
        )

    def line(self, a: Tuple[float, float], b: Tuple[float, float], role: str, **attr) -> None:
        (x1, y1), (x2, y2) = self.px(*a), self.px(*b)
        self.elements.append(
            Element("line", class_=role, x1=x1, y1=y1, x2=x2, y2=y2, stroke=COLORS[role], stroke_width=1.5, **attr)
        )

    def path(self, points: Iterable[Tuple[float, float]], role: str, **attr) -> None:
        coords = [self.px(u, v) for u, v in points]
        d = "M " + " L ".join(f"{rounder(x)} {rounder(y)}" for x, y in coords)
        self.elements.append(Element("path", class_=role, d=d, fill="none", stroke=COLORS[role], stroke_width=1.5, **attr))

    def marker(self, u: float, v: float, role: str, **attr) -> None:
        x, y = self.px(u, v)
        self.elements.append(Element("circle", class_=role, cx=x, cy=y, r=3.0, fill=COLORS[role], **attr))

    def svg(self) -> str:
        root = {"width": self.size, "height": self.size, "viewBox": f"0 0 {self.size} {self.size}", "xmlns": ns_svg}
        body = "\n".join(e.svg() for e in self.elements)
        return f"<svg {props_repr(root)}>\n{body}\n</svg>\n"


def conic_points(p: ScaledParams, alpha: float, beta: float, samples: int = CONIC_SAMPLES) -> List[Tuple[float, float]]:
    """Branch of F(u, v) = 0 joining (0, 1) to (1, 0)."""
    a1, a2, k = float(p.a1), float(p.a2), float(p.k)
    points = []
    for u in np.linspace(0.0, 1.0, samples):
        b = alpha * a1 * u + beta * k * (a2 * u - 1)
        c = alpha * u * (u - 1)
        root = math.sqrt(max(b * b - 4 * beta * k * c, 0.0))
        v = -2 * c / (b + root) if b > 0 else (root - b) / (2 * beta * k)
        points.append((float(u), max(v, 0.0)))
    return points


def _check_inputs(p: ScaledParams, barrier: Optional[Barrier], tangent: Optional[TangentSolution]) -> None:
    if barrier is not None and tangent is not None:
        raise InconsistentInputs("give either a barrier or a tangent solution, not both")
    if barrier is not None and not math.isclose(float(barrier.d), float(p.d), rel_tol=1e-12):
        raise InconsistentInputs(f"barrier was built for d={barrier.d}, parameters have d={p.d}")
    if tangent is not None:
        if not math.isclose(tangent.d, float(p.d), rel_tol=1e-12):
            raise InconsistentInputs(f"tangent solution was built for d={tangent.d}, parameters have d={p.d}")
        conic, _, _ = tangency_residuals(p, tangent)
        if abs(conic) > 1e-8:
            raise InconsistentInputs("tangency point does not lie on the conic of these parameters")


def render_svg(
    p: ScaledParams,
    barrier: Optional[Barrier] = None,
    tangent: Optional[TangentSolution] = None,
    profile: Optional[WaveProfile] = None,
) -> str:
    """
    Phase-plane SVG for ``p`` with optional barrier lines and trajectory.

    Parameters
    ----------
    p : ScaledParams
        Parameters whose nullclines are drawn.
    barrier : Barrier, optional
        N-barrier to draw; its weights also select the conic.
    tangent : TangentSolution, optional
        Tangent construction; drawn as its barrier plus the tangency marker.
    profile : WaveProfile, optional
        Trajectory ``(u(x), v(x))``; an empty or missing profile gives a
        geometry-only figure.
    """
    _check_inputs(p, barrier, tangent)
    if tangent is not None:
        barrier = tangent.as_barrier()

    a1, a2 = float(p.a1), float(p.a2)
    extent_candidates = [1.1, 1.0 / a1 * 1.05, 1.0 / a2 * 1.05]
    geometry = barrier_geometry(barrier) if barrier is not None else {}
    for (u0, _), (_, v1) in geometry.values():
        extent_candidates.extend([u0 * 1.05, v1 * 1.05])
    trajectory: Sequence[Tuple[float, float]] = []
    if profile is not None and profile.u.size:
        trajectory = list(zip(profile.u.tolist(), profile.v.tolist()))
        extent_candidates.extend([float(profile.u.max()) * 1.05, float(profile.v.max()) * 1.05])
    canvas = Canvas(max(extent_candidates))

    origin, x_end, y_end = (0.0, 0.0), (canvas.extent, 0.0), (0.0, canvas.extent)
    canvas.line(origin, x_end, "axis")
    canvas.line(origin, y_end, "axis")
    canvas.line((1.0, 0.0), (0.0, 1.0 / a1), "nullcline-u")
    canvas.line((1.0 / a2, 0.0), (0.0, 1.0), "nullcline-v")

    if barrier is not None:
        alpha, beta = float(barrier.weights.alpha), float(barrier.weights.beta)
        canvas.path(conic_points(p, alpha, beta), "conic")
        levels = {"q_inner": barrier.lambda1, "q_outer": barrier.lambda2, "p_line": barrier.eta}
        for key, (a, b) in geometry.items():
            role = "p-line" if key == "p_line" else "q-line"
            canvas.line(a, b, role, data_name=key, data_level=format_float(levels[key]))
    if tangent is not None:
        canvas.marker(tangent.u_t, tangent.v_t, "tangency", data_u=format_float(tangent.u_t), data_v=format_float(tangent.v_t))
    if trajectory:
        canvas.path(trajectory, "trajectory", stroke_dasharray="4 3")
    return canvas.svg()
