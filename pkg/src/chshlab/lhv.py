"""Local-hidden-variable models and the two CHSH experiment protocols.

A hidden-variable model draws a latent value lambda per emitted photon pair
and answers each station's analyzer deterministically from (angle, lambda).
Two protocols are implemented:

* same-lambda: all four analyzer combinations are evaluated on a single
  lambda draw per trial. The per-trial combination
  (a1 + a2) b1 + (a1 - a2) b2 is then identically +-2, so the estimated
  mean lies in [-2, 2] deterministically, not just statistically.
* independent-pairs: each trial uses four photon pairs with independent
  latent values lambda_1..lambda_4, one analyzer combination each, and
  accumulates a1 b1 + a2 b2 + a3 b3 - a4 b4, which is only bounded by
  [-4, 4].

The quantum analogue of the independent-pairs protocol samples the four
pair outcomes from the singlet joint law instead of a shared lambda; its
mean converges to the sum of the four singlet correlations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .quantum import _outcomes_from_uniforms, joint_distribution, sample_pairs


@dataclass(frozen=True)
class AngleConfig:
    """The four analyzer angles (radians) parameterizing a CHSH run."""

    alpha1: float
    alpha2: float
    beta1: float
    beta2: float

    def astuple(self) -> tuple[float, float, float, float]:
        return (self.alpha1, self.alpha2, self.beta1, self.beta2)


def tsirelson_angles() -> AngleConfig:
    """The standard maximal-violation configuration (pi/4, 0, pi/8, 3pi/8)."""
    return AngleConfig(math.pi / 4, 0.0, math.pi / 8, 3 * math.pi / 8)


def angle_pairs(config: AngleConfig) -> tuple[tuple[float, float], ...]:
    """Analyzer settings of the four pairs in the independent-pairs protocol.

    Pair n gets (alpha, beta) from the fixed assignment
    ((alpha1, beta1), (alpha1, beta2), (alpha2, beta1), (alpha2, beta2)).
    """
    return (
        (config.alpha1, config.beta1),
        (config.alpha1, config.beta2),
        (config.alpha2, config.beta1),
        (config.alpha2, config.beta2),
    )


@dataclass(frozen=True)
class CorrelationEstimate:
    """Monte Carlo estimate: sample mean, stderr = sample std / sqrt(n)."""

    mean: float
    stderr: float
    n_samples: int


@dataclass(frozen=True)
class HiddenVariableModel:
    """A latent-variable sampler plus deterministic +-1 response functions.

    ``sample(rng, size)`` draws lambda values (scalar when size is None,
    ndarray otherwise). ``respond_a(angle, lam)`` and ``respond_b`` accept
    scalar or array lambda and must return only -1 or +1, deterministically
    in (angle, lambda). ``support`` is the lambda interval used by the
    quadrature estimator; only one-dimensional lambdas are supported there.
    """

    name: str
    sample: Callable
    respond_a: Callable
    respond_b: Callable
    support: tuple[float, float]
    is_lhv: bool = True


@dataclass(frozen=True)
class QuantumMimicModel:
    """Samples joint pair outcomes directly from the singlet law.

    Deliberately NOT a local-hidden-variable model: there is no shared
    latent variable and no per-station response function, so it is rejected
    by the same-lambda estimator and by the quadrature oracle. It exists
    only to cross-check the quantum independent-pairs estimator through the
    model interface.
    """

    name: str = "quantum-mimic"
    is_lhv: bool = False

    def sample_outcomes(self, alpha, beta, n, rng):
        return sample_pairs(joint_distribution(alpha, beta), n, rng)


Model = Union[HiddenVariableModel, QuantumMimicModel]


def _sign_response(angle: float, lam) -> np.ndarray:
    # sign(cos 2(angle - lam)) with sign(0) := +1 so responses are total.
    return np.where(np.cos(2.0 * (np.asarray(angle) - lam)) >= 0.0, 1, -1)


def reference_sign_model() -> HiddenVariableModel:
    """The classic sign model: lambda uniform on [0, pi).

    A(alpha, lambda) = sign(cos 2(alpha - lambda)) and B = -A(beta, lambda),
    giving perfect anticorrelation at equal settings and the sawtooth
    correlation -1 + 4 d / pi, where d folds |alpha - beta| into [0, pi/2].
    """
    return HiddenVariableModel(
        name="sign",
        sample=lambda rng, size=None: rng.uniform(0.0, math.pi, size),
        respond_a=_sign_response,
        respond_b=lambda angle, lam: -_sign_response(angle, lam),
        support=(0.0, math.pi),
    )


def get_model(name: str) -> Model:
    """Look up a shipped model by name ('sign' or 'quantum-mimic')."""
    if name == "sign":
        return reference_sign_model()
    if name == "quantum-mimic":
        return QuantumMimicModel()
    raise ValueError(f"unknown model name: {name!r}")


def _require_lhv(model: Model, what: str) -> HiddenVariableModel:
    if not isinstance(model, HiddenVariableModel) or not model.is_lhv:
        raise ValueError(f"{what} requires a local-hidden-variable model, got {model.name!r}")
    return model


def _responses(model: HiddenVariableModel, angle: float, lam: np.ndarray, station: str) -> np.ndarray:
    out = np.asarray(model.respond_a(angle, lam) if station == "a" else model.respond_b(angle, lam))
    if not np.all(np.abs(out) == 1):
        raise ValueError(f"model {model.name!r} respond_{station} returned values outside {{-1, +1}}")
    return out


def _estimate(samples: np.ndarray) -> CorrelationEstimate:
    n = samples.size
    if n < 2:
        raise ValueError("need at least 2 samples")
    mean = float(np.mean(samples))
    stderr = float(np.std(samples, ddof=1) / math.sqrt(n))
    return CorrelationEstimate(mean=mean, stderr=stderr, n_samples=n)


def correlation_mc(
    model: Model, alpha: float, beta: float, n: int, rng: np.random.Generator
) -> CorrelationEstimate:
    """Monte Carlo mean of A(alpha, lambda) B(beta, lambda) over n lambda draws."""
    m = _require_lhv(model, "correlation_mc")
    lam = m.sample(rng, n)
    a = _responses(m, alpha, lam, "a")
    b = _responses(m, beta, lam, "b")
    return _estimate((a * b).astype(float))


def correlation_quadrature(
    model: Model, alpha: float, beta: float, grid_points: int = 100_000
) -> float:
    """Deterministic midpoint-rule average of A*B over the lambda support.

    Serves as the analytic oracle for :func:`correlation_mc`. Only models
    with a declared one-dimensional support are accepted; grid_points must
    be at least 1000 to keep the midpoint error well under 1e-3 for the
    piecewise-constant sign responses.
    """
    m = _require_lhv(model, "correlation_quadrature")
    if m.support is None or len(m.support) != 2:
        raise ValueError(f"model {m.name!r} does not declare a one-dimensional lambda support")
    if grid_points < 1000:
        raise ValueError("grid_points must be at least 1000")
    lo, hi = m.support
    lam = lo + (np.arange(grid_points) + 0.5) * ((hi - lo) / grid_points)
    a = _responses(m, alpha, lam, "a")
    b = _responses(m, beta, lam, "b")
    return float(np.mean(a * b))


def parity_identity(a1: int, a2: int, b1: int, b2: int) -> int:
    """(a1 + a2) b1 + (a1 - a2) b2, which equals +-2 for all sign choices."""
    for v in (a1, a2, b1, b2):
        if v not in (-1, 1):
            raise ValueError(f"inputs must be -1 or +1, got {v!r}")
    return (a1 + a2) * b1 + (a1 - a2) * b2


def chsh_same_lambda(
    model: Model, config: AngleConfig, n: int, rng: np.random.Generator
) -> CorrelationEstimate:
    """Same-lambda protocol: one lambda per trial drives all four responses.

    Every per-trial value of (a1 + a2) b1 + (a1 - a2) b2 is +-2, so the
    returned mean is deterministically inside [-2, 2].
    """
    m = _require_lhv(model, "chsh_same_lambda")
    lam = m.sample(rng, n)
    a1 = _responses(m, config.alpha1, lam, "a")
    a2 = _responses(m, config.alpha2, lam, "a")
    b1 = _responses(m, config.beta1, lam, "b")
    b2 = _responses(m, config.beta2, lam, "b")
    s = (a1 + a2) * b1 + (a1 - a2) * b2
    return _estimate(s.astype(float))


def chsh_independent(
    model: Model, config: AngleConfig, n: int, rng: np.random.Generator
) -> CorrelationEstimate:
    """Independent-pairs protocol: four fresh lambdas per trial.

    Trial t draws lambda_1..lambda_4 (trial-major stream order) and
    accumulates a1 b1 + a2 b2 + a3 b3 - a4 b4 with the station settings of
    :func:`angle_pairs`. Per-trial values lie in {-4, -2, 0, 2, 4}; the mean
    is deterministically inside [-4, 4]. A QuantumMimicModel is accepted
    here (and only here) and reproduces :func:`quantum_chsh_independent`.
    """
    if isinstance(model, QuantumMimicModel):
        return _quantum_independent(config, n, rng)
    m = _require_lhv(model, "chsh_independent")
    lam = m.sample(rng, (n, 4))
    pairs = angle_pairs(config)
    a = [
        _responses(m, pairs[j][0], lam[:, j], "a")
        for j in range(4)
    ]
    b = [
        _responses(m, pairs[j][1], lam[:, j], "b")
        for j in range(4)
    ]
    s = a[0] * b[0] + a[1] * b[1] + a[2] * b[2] - a[3] * b[3]
    return _estimate(s.astype(float))


def _quantum_independent(config: AngleConfig, n: int, rng: np.random.Generator) -> CorrelationEstimate:
    # One uniform per pair, trial-major: u[t, j] drives pair j+1 of trial t.
    u = rng.random((n, 4))
    products = []
    for j, (alpha, beta) in enumerate(angle_pairs(config)):
        x, y = _outcomes_from_uniforms(joint_distribution(alpha, beta), u[:, j])
        products.append(x * y)
    s = products[0] + products[1] + products[2] - products[3]
    return _estimate(s.astype(float))


def quantum_chsh_independent(
    config: AngleConfig, n: int, rng: np.random.Generator
) -> CorrelationEstimate:
    """Quantum independent-pairs run: four singlet pairs sampled per trial.

    The mean converges to q1 + q2 + q3 - q4, the signed sum of the four
    singlet correlations, whose magnitude never exceeds 2 sqrt(2).
    """
    if n < 2:
        raise ValueError("need at least 2 trials")
    return _quantum_independent(config, n, rng)
