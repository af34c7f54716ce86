"""Parametric test curves: the Hopf link, torus links and planar circles."""
import numpy as np

from mgli.geometry import ParametricCurve, Structure, sample_parametric

TWO_PI = 2 * np.pi


def hopf_link():
    """The two unit circles of the worked Hopf example.

    The first lies in the xy-plane around the origin, the second in the
    xz-plane around ``(1, 0, 0)``. Their linking integral is -1.
    """
    def c1(t):
        a = TWO_PI * t
        return np.stack([np.cos(a), np.sin(a), np.zeros_like(a)], axis=-1)

    def dc1(t):
        a = TWO_PI * t
        return TWO_PI * np.stack([-np.sin(a), np.cos(a), np.zeros_like(a)], axis=-1)

    def c2(t):
        a = TWO_PI * t
        return np.stack([np.cos(a) + 1, np.zeros_like(a), np.sin(a)], axis=-1)

    def dc2(t):
        a = TWO_PI * t
        return TWO_PI * np.stack([-np.sin(a), np.zeros_like(a), np.cos(a)], axis=-1)

    return ParametricCurve(c1, True, dc1), ParametricCurve(c2, True, dc2)


def circle(center=(0.0, 0.0, 0.0), radius=1.0):
    """Counter-clockwise circle in a plane parallel to xy."""
    center = np.asarray(center, dtype=float)

    def func(t):
        a = TWO_PI * t
        return center + radius * np.stack([np.cos(a), np.sin(a), np.zeros_like(a)], axis=-1)

    def deriv(t):
        a = TWO_PI * t
        return radius * TWO_PI * np.stack([-np.sin(a), np.cos(a), np.zeros_like(a)], axis=-1)

    return ParametricCurve(func, True, deriv)


def torus_link_component(p, q, k, major=2.0, minor=1.0):
    """Component ``k`` of the ``(p, q)`` torus link with ``gcd(p, q) = p``.

    Each component winds once around the core and ``q/p`` times around the
    tube; components are offset by ``2*pi*k/p`` in the tube angle.
    """
    wind = q // p

    def func(t):
        phi = TWO_PI * t
        theta = wind * phi + TWO_PI * k / p
        rho = major + minor * np.cos(theta)
        return np.stack([rho * np.cos(phi), rho * np.sin(phi), minor * np.sin(theta)], axis=-1)

    return ParametricCurve(func, True)


def sampled_structure(curves: dict, n: int) -> Structure:
    return Structure({name: sample_parametric(c, n) for name, c in curves.items()})
