"""Two-level open-system discriminator.

A nonzero success amplitude q selects dissipative dynamics with jump
operator D = |e0><e1| (populations and coherence decay exponentially);
q = 0 selects a purely Hamiltonian evolution with integer levels, which
is exactly periodic.  Watching whether the trajectory damps or recurs
therefore distinguishes q > 0 from q = 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

_P1 = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=np.complex128)  # D+ D = |e1><e1|
_D = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=np.complex128)  # |e0><e1|


class ClassificationError(RuntimeError):
    """The trajectory fits neither printed dynamical case."""


@dataclass(frozen=True)
class TwoLevelState:
    """2x2 density matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128)
        object.__setattr__(self, "matrix", m)
        if m.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
        if np.abs(m - m.conj().T).max() > 1e-10:
            raise ValueError("density matrix must be Hermitian")
        if abs(np.trace(m).real - 1.0) > 1e-10:
            raise ValueError(f"trace must be 1, got {np.trace(m)}")
        if np.linalg.eigvalsh(m).min() < -1e-10:
            raise ValueError("density matrix must be positive semidefinite")

    @property
    def p1(self) -> float:
        return float(self.matrix[1, 1].real)

    @property
    def coherence(self) -> complex:
        return complex(self.matrix[0, 1])

    @classmethod
    def from_amplitudes(cls, alpha0: complex, alpha1: complex) -> "TwoLevelState":
        psi = np.array([alpha0, alpha1], dtype=np.complex128)
        psi /= np.linalg.norm(psi)
        return cls(np.outer(psi, psi.conj()))

    @classmethod
    def from_q(cls, q: float) -> "TwoLevelState":
        if not 0.0 <= q <= 1.0:
            raise ValueError(f"q must lie in [0, 1], got {q}")
        return cls.from_amplitudes(math.sqrt(1.0 - q * q), q)

    @classmethod
    def plus(cls) -> "TwoLevelState":
        return cls.from_amplitudes(1.0, 1.0)


@dataclass(frozen=True)
class DissipativeParams:
    gamma: complex = 1.0 + 0.0j

    def __post_init__(self):
        if complex(self.gamma).real <= 0.0:
            raise ValueError(f"Re gamma must be positive, got {self.gamma}")


@dataclass(frozen=True)
class HamiltonianParams:
    """Integer levels E0 < E1; effective Hamiltonian diag(E0 + 1, E1)."""

    e0: int
    e1: int

    def __post_init__(self):
        if not (isinstance(self.e0, int) and isinstance(self.e1, int)):
            raise ValueError("energy levels must be integers")
        if self.e0 >= self.e1:
            raise ValueError(f"requires E0 < E1, got {self.e0}, {self.e1}")

    @property
    def detuning(self) -> int:
        return (self.e0 + 1) - self.e1

    @property
    def period(self) -> float | None:
        return None if self.detuning == 0 else 2.0 * math.pi / abs(self.detuning)


@dataclass(frozen=True)
class TrajectoryRecord:
    times: np.ndarray
    p1: np.ndarray
    coherence: np.ndarray  # complex upper off-diagonal entries

    def __post_init__(self):
        if len(self.times) == 0:
            raise ValueError("empty trajectory")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")

    @property
    def abs_c(self) -> np.ndarray:
        return np.abs(self.coherence)


def generator_apply(rho: TwoLevelState, params: DissipativeParams) -> np.ndarray:
    """Time derivative of rho under the dissipative generator.

    i Im(gamma) [rho, D+D] - Re(gamma) {D+D, rho} + 2 Re(gamma) D rho D+.
    The sandwich coefficient is doubled relative to the anticommutator so
    the generator is traceless (trace-preserving semigroup); see the
    module's notes on normalization.
    """
    g = complex(params.gamma)
    m = rho.matrix
    commutator = m @ _P1 - _P1 @ m
    anticommutator = _P1 @ m + m @ _P1
    sandwich = _D @ m @ _D.conj().T
    return 1j * g.imag * commutator - g.real * anticommutator + 2.0 * g.real * sandwich


def _rhs(p1: float, c: complex, g: complex) -> tuple[float, complex]:
    # generator_apply specialized to (p1, coherence); dp0/dt = -dp1/dt
    return -2.0 * g.real * p1, (1j * g.imag - g.real) * c


def evolve_dissipative(
    rho0: TwoLevelState,
    params: DissipativeParams,
    t_final: float,
    dt: float = 1e-3,
) -> TrajectoryRecord:
    """Fixed-step RK4 integration of the dissipative master equation.

    Aborts if trace or positivity drifts beyond tolerance (1e-9 / 1e-8),
    which for this linear 2x2 system indicates an integration bug rather
    than stiffness.
    """
    if dt <= 0 or t_final <= 0:
        raise ValueError("dt and t_final must be positive")
    g = complex(params.gamma)
    steps = int(round(t_final / dt))
    p0 = 1.0 - rho0.p1
    p1 = rho0.p1
    c = rho0.coherence
    times = [0.0]
    p1s = [p1]
    cs = [c]
    for k in range(1, steps + 1):
        dp1_a, dc_a = _rhs(p1, c, g)
        dp1_b, dc_b = _rhs(p1 + 0.5 * dt * dp1_a, c + 0.5 * dt * dc_a, g)
        dp1_c, dc_c = _rhs(p1 + 0.5 * dt * dp1_b, c + 0.5 * dt * dc_b, g)
        dp1_d, dc_d = _rhs(p1 + dt * dp1_c, c + dt * dc_c, g)
        dp1 = (dp1_a + 2.0 * dp1_b + 2.0 * dp1_c + dp1_d) * (dt / 6.0)
        p1 += dp1
        p0 -= dp1
        c += (dc_a + 2.0 * dc_b + 2.0 * dc_c + dc_d) * (dt / 6.0)
        times.append(k * dt)
        p1s.append(p1)
        cs.append(c)
        trace_drift = abs(p0 + p1 - 1.0)
        min_eig = 0.5 * (1.0 - math.sqrt((p0 - p1) ** 2 + 4.0 * abs(c) ** 2))
        if trace_drift > 1e-9 or min_eig < -1e-8:
            raise RuntimeError(
                f"state invariant violated at t={k * dt}: "
                f"trace drift {trace_drift}, min eigenvalue {min_eig}"
            )
    return TrajectoryRecord(np.array(times), np.array(p1s), np.array(cs))


def hamiltonian_state_at(
    rho0: TwoLevelState, params: HamiltonianParams, t: float
) -> np.ndarray:
    """rho(t) = exp(-iHt) rho0 exp(iHt) with H = diag(E0 + 1, E1)."""
    phases = np.exp(-1j * np.array([params.e0 + 1, params.e1]) * t)
    u = np.diag(phases)
    return u @ rho0.matrix @ u.conj().T


def evolve_hamiltonian(
    rho0: TwoLevelState,
    params: HamiltonianParams,
    t_final: float,
    dt: float = 1e-3,
) -> TrajectoryRecord:
    """Exact unitary evolution sampled on a fixed grid; populations constant."""
    if dt <= 0 or t_final <= 0:
        raise ValueError("dt and t_final must be positive")
    steps = int(round(t_final / dt))
    times = np.arange(steps + 1) * dt
    delta = params.detuning
    c0 = rho0.coherence
    # rho(t)_{01} = c0 exp(-i ((E0+1) - E1) t)
    cs = c0 * np.exp(-1j * delta * times)
    p1s = np.full(steps + 1, rho0.p1)
    return TrajectoryRecord(times, p1s, cs)


def classify(record: TrajectoryRecord, decay_floor: float = 0.01) -> str:
    """DAMPED, OSCILLATORY or STATIONARY.

    Damping: the signal p1 + |c| over the last half of the run stays below
    decay_floor times its initial value.  Oscillation: the complex
    coherence leaves its initial value by more than 1e-6 and later returns
    within 1e-6 of it (periodic recurrence).  Anything else - including a
    signal that never moves - is stationary.
    """
    signal = record.p1 + record.abs_c
    half = len(signal) // 2
    initial = signal[0]
    if initial > 0.0 and float(signal[half:].max()) < decay_floor * initial:
        return "DAMPED"
    departure = np.abs(record.coherence - record.coherence[0])
    left = np.flatnonzero(departure > 1e-6)
    if left.size:
        first_left = left[0]
        if np.any(departure[first_left:] < 1e-6):
            return "OSCILLATORY"
    return "STATIONARY"


def discriminate(
    q: float,
    gamma: complex = 1.0 + 0.0j,
    energies: HamiltonianParams = HamiltonianParams(0, 2),
    t_final: float | None = None,
    dt: float = 1e-3,
) -> tuple[str, str, TrajectoryRecord]:
    """Decide q_nonzero vs q_zero from the dynamical behavior.

    0 < q < 1 selects the dissipative case on the state built from q;
    q = 0 selects the Hamiltonian case probed with the coherent |+> state.
    q = 1 has no dissipative coupling term in either printed case and is
    rejected.  Returns (decision, classification, record).
    """
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"q must lie in [0, 1], got {q}")
    if q == 1.0:
        raise ValueError("q = 1 (alpha_0 = 0) is outside both dynamical cases")
    if q > 0.0:
        params = DissipativeParams(gamma)
        horizon = t_final if t_final is not None else 10.0 / complex(gamma).real
        record = evolve_dissipative(TwoLevelState.from_q(q), params, horizon, dt)
    else:
        period = energies.period
        if period is None:
            raise ValueError("degenerate levels (E0 + 1 = E1) give no oscillation")
        horizon = t_final if t_final is not None else 3.0 * period
        record = evolve_hamiltonian(TwoLevelState.plus(), energies, horizon, period / 1000.0)
    verdict = classify(record)
    if q > 0.0 and verdict == "DAMPED":
        return "q_nonzero", verdict, record
    if q == 0.0 and verdict == "OSCILLATORY":
        return "q_zero", verdict, record
    raise ClassificationError(
        f"trajectory classified {verdict}, inconsistent with q={q}"
    )
