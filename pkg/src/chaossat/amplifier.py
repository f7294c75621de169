"""Logistic-map amplification of the success amplitude.

The post-computation qubit is encoded as a diagonal density matrix whose
z-polarization carries the iterate x_m; starting from x_0 = q^2, the map
x -> a x (1-x) at a = 3.71 pushes any nonzero q^2 above 1/2 within 2n
steps while leaving q^2 = 0 pinned at the fixed point, so the threshold
crossing is a one-sided exact SAT test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

DEFAULT_A = 3.71
DEFAULT_THRESHOLD = 0.5


@dataclass(frozen=True)
class LogisticParams:
    a: float = DEFAULT_A
    max_steps: int = 0
    threshold: float = DEFAULT_THRESHOLD

    def __post_init__(self):
        if not 0.0 <= self.a <= 4.0:
            raise ValueError(f"map parameter must lie in [0, 4], got {self.a}")
        if self.max_steps < 0:
            raise ValueError(f"max_steps must be >= 0, got {self.max_steps}")


@dataclass(frozen=True)
class ChaosTrajectory:
    xs: tuple[float, ...]
    first_crossing: int | None


@dataclass(frozen=True)
class QubitDensity:
    """Diagonal 2x2 density matrix (p0, p1)."""

    p0: float
    p1: float

    def __post_init__(self):
        if self.p0 < -1e-12 or self.p1 < -1e-12 or abs(self.p0 + self.p1 - 1.0) > 1e-10:
            raise ValueError(f"not a diagonal density matrix: ({self.p0}, {self.p1})")

    def z_polarization(self) -> float:
        """Expectation of sigma_z, i.e. p0 - p1."""
        return self.p0 - self.p1


def density_from_q(q_squared: float) -> QubitDensity:
    """Post-measurement qubit q^2 |1><1| + (1 - q^2) |0><0|."""
    if not 0.0 <= q_squared <= 1.0:
        raise ValueError(f"q^2 must lie in [0, 1], got {q_squared}")
    return QubitDensity(1.0 - q_squared, q_squared)


def density_from_iterate(x: float) -> QubitDensity:
    """Amplifier register state (I + x sigma_z) / 2; z_polarization() == x."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"iterate must lie in [0, 1], got {x}")
    return QubitDensity((1.0 + x) / 2.0, (1.0 - x) / 2.0)


def logistic_step(x: float, a: float = DEFAULT_A) -> float:
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    if not 0.0 <= a <= 4.0:
        raise ValueError(f"map parameter must lie in [0, 4], got {a}")
    return a * x * (1.0 - x)


def iterate(q_squared: float, params: LogisticParams) -> ChaosTrajectory:
    """Trajectory x_0 .. x_max_steps from x_0 = q^2, with first threshold crossing.

    The crossing is strict (x_m > threshold) and latches at the first hit,
    step 0 included.
    """
    x = float(q_squared)
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"q^2 must lie in [0, 1], got {x}")
    xs = [x]
    first_crossing = 0 if x > params.threshold else None
    for m in range(1, params.max_steps + 1):
        x = logistic_step(x, params.a)
        xs.append(x)
        if first_crossing is None and x > params.threshold:
            first_crossing = m
    return ChaosTrajectory(tuple(xs), first_crossing)


def iterate_oracle(
    q_squared, params: LogisticParams, precision_bits: int
) -> ChaosTrajectory:
    """Extended-precision rerun of iterate, certifying the crossing decision.

    The default a = 3.71 is taken as the rational 371/100 rounded once to
    the working precision; per-step error growth is bounded by a factor a,
    hence the required mantissa of 64 + 2 * max_steps bits.
    """
    if precision_bits < 64 + 2 * params.max_steps:
        raise ValueError(
            f"precision_bits={precision_bits} below required "
            f"{64 + 2 * params.max_steps}"
        )
    with mp.workprec(precision_bits):
        if isinstance(q_squared, Fraction):
            x = mpf(q_squared.numerator) / q_squared.denominator
        else:
            x = mpf(q_squared)
        if not 0 <= x <= 1:
            raise ValueError(f"q^2 must lie in [0, 1], got {q_squared}")
        a = mpf(371) / 100 if params.a == DEFAULT_A else mpf(params.a)
        threshold = mpf(params.threshold)
        xs = [float(x)]
        first_crossing = 0 if x > threshold else None
        for m in range(1, params.max_steps + 1):
            x = a * x * (1 - x)
            xs.append(float(x))
            if first_crossing is None and x > threshold:
                first_crossing = m
    return ChaosTrajectory(tuple(xs), first_crossing)


def decide_sat(q_squared: float, params: LogisticParams) -> tuple[str, ChaosTrajectory]:
    """SAT iff the trajectory crosses the threshold within max_steps."""
    trajectory = iterate(q_squared, params)
    decision = "SAT" if trajectory.first_crossing is not None else "UNSAT"
    return decision, trajectory


def params_for_instance(n: int, a: float = DEFAULT_A) -> LogisticParams:
    """Default amplifier setting for an n-variable instance: 2n steps."""
    return LogisticParams(a=a, max_steps=2 * n)
