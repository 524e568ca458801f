"""
nbarrier package.

A priori bounds for travelling waves of the diffusive Lotka-Volterra
competition system by the N-barrier maximum principle.  It includes the
parameter model, the N-barrier and tangent-line bounds, a wave solver with
a time-marching oracle for checking them, the three-species nonexistence
criterion and a command-line front end.
"""

__version__ = "0.1.0"

__all__ = [
    "model",
    "barrier",
    "tangent",
    "waves",
    "nonexist",
    "plot",
    "commands",
]
