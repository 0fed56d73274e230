"""Independent test oracles.

Nothing in this module imports the package under test: eigenvalues come
from closed-form characteristic polynomials (quadratic formula, Ferrari's
quartic), the constrained expectation from a literal enumeration of the
full eight-variable product distribution, and the sign-model correlation
from its analytic sawtooth.
"""

from __future__ import annotations

import math
from itertools import product

import numpy as np


def charpoly_coefficients(m: np.ndarray) -> list[float]:
    """Coefficients [1, c3, c2, c1, c0] of det(tI - M) via Faddeev-LeVerrier."""
    n = m.shape[0]
    coeffs = [1.0]
    mk = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        mk = m @ mk
        ck = -np.trace(mk).real / k
        coeffs.append(ck)
        mk = mk + ck * np.eye(n)
    return coeffs


def _real_cubic_roots(b: float, c: float, d: float) -> list[float]:
    # Real roots of z^3 + b z^2 + c z + d (Cardano / trigonometric form).
    p = c - b * b / 3.0
    q = 2.0 * b**3 / 27.0 - b * c / 3.0 + d
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    if disc > 0.0:
        u = -q / 2.0 + math.sqrt(disc)
        v = -q / 2.0 - math.sqrt(disc)
        t = math.copysign(abs(u) ** (1.0 / 3.0), u) + math.copysign(abs(v) ** (1.0 / 3.0), v)
        return [t - b / 3.0]
    r = math.sqrt(max(0.0, -(p**3) / 27.0))
    if r == 0.0:
        return [-b / 3.0]
    phi = math.acos(max(-1.0, min(1.0, -q / (2.0 * r))))
    scale = 2.0 * math.sqrt(-p / 3.0)
    return [scale * math.cos((phi + 2.0 * math.pi * k) / 3.0) - b / 3.0 for k in range(3)]


def _quartic_real_roots(c3: float, c2: float, c1: float, c0: float) -> list[float]:
    # All-real-root quartic t^4 + c3 t^3 + c2 t^2 + c1 t + c0 (Ferrari).
    a = c3
    p = c2 - 3.0 * a * a / 8.0
    q = c1 - a * c2 / 2.0 + a**3 / 8.0
    r = c0 - a * c1 / 4.0 + a * a * c2 / 16.0 - 3.0 * a**4 / 256.0
    shift = -a / 4.0
    if abs(q) < 1e-12:
        disc = max(0.0, p * p - 4.0 * r)
        s = math.sqrt(disc)
        roots = []
        for y2 in ((-p + s) / 2.0, (-p - s) / 2.0):
            y = math.sqrt(max(0.0, y2))
            roots += [y, -y]
        return sorted(root + shift for root in roots)
    resolvent = _real_cubic_roots(p, p * p / 4.0 - r, -q * q / 8.0)
    m = max(resolvent)
    if m <= 0.0:
        raise ValueError("Ferrari resolvent has no positive root")
    s2m = math.sqrt(2.0 * m)
    roots = []
    for sign in (1.0, -1.0):
        bq = sign * s2m
        cq = p / 2.0 + m - sign * q / (2.0 * s2m)
        disc = max(0.0, bq * bq - 4.0 * cq)
        sd = math.sqrt(disc)
        roots += [(-bq + sd) / 2.0, (-bq - sd) / 2.0]
    return sorted(root + shift for root in roots)


def charpoly_eigenvalues(m: np.ndarray) -> list[float]:
    """Eigenvalues of a 2x2 or 4x4 Hermitian matrix in ascending order,
    computed from the characteristic polynomial in closed form."""
    m = np.asarray(m, dtype=complex)
    if m.shape == (2, 2):
        tr = np.trace(m).real
        det = (m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]).real
        d = math.sqrt(max(0.0, tr * tr - 4.0 * det))
        return [(tr - d) / 2.0, (tr + d) / 2.0]
    if m.shape == (4, 4):
        _, c3, c2, c1, c0 = charpoly_coefficients(m)
        return _quartic_real_roots(c3, c2, c1, c0)
    raise ValueError(f"unsupported shape {m.shape}")


def conditioned_expectation_eight_variable(q: tuple[float, float, float, float]) -> tuple[float, float]:
    """(expectation, conditioning mass) by enumerating the full product law.

    Enumerates all 2^8 outcomes of four independent pairs with per-pair law
    p(n; k, l) = (1 + k l q_n)/4, keeps the outcomes satisfying
    x3 = x1, x2 = x4, y2 = y1, y3 = y4, and averages
    x1 y1 + x1 y4 + x4 y1 - x4 y4 over the conditioned law.
    """
    q1, q2, q3, q4 = q

    def p(qn: float, k: int, l: int) -> float:
        return (1.0 + k * l * qn) / 4.0

    num = 0.0
    mass = 0.0
    for x1, y1, x2, y2, x3, y3, x4, y4 in product((-1, 1), repeat=8):
        if x3 != x1 or x2 != x4 or y2 != y1 or y3 != y4:
            continue
        w = p(q1, x1, y1) * p(q2, x2, y2) * p(q3, x3, y3) * p(q4, x4, y4)
        mass += w
        num += w * (x1 * y1 + x1 * y4 + x4 * y1 - x4 * y4)
    if mass <= 0.0:
        raise ZeroDivisionError("conditioning mass is zero")
    return num / mass, mass


def sign_model_sawtooth(alpha: float, beta: float) -> float:
    """Analytic correlation of the uniform sign model: -1 + 4 d / pi,
    where d folds |alpha - beta| into [0, pi/2]."""
    d = abs(alpha - beta) % math.pi
    d = min(d, math.pi - d)
    return -1.0 + 4.0 * d / math.pi


def random_angle_tuple(rng: np.random.Generator) -> tuple[float, float, float, float]:
    return tuple(float(v) for v in rng.uniform(0.0, math.pi, 4))
