"""Dense state-vector engine with bit-indexed gate application.

Qubit 1 is the most significant bit of the amplitude index, so the
register reads left to right like a tensor product.  Classical gates act
as conditional amplitude swaps on numpy views; only the Hadamard block
mixes amplitudes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .compiler import QubitLayout
from .gates import GateOp, GateSequence

DEFAULT_WIDTH_CAP = 26

_SQRT1_2 = 1.0 / math.sqrt(2.0)


class WidthCapError(ValueError):
    """Register would exceed the configured memory bound."""


def check_width(width: int, cap: int = DEFAULT_WIDTH_CAP) -> None:
    if width > cap:
        raise WidthCapError(f"width {width} exceeds cap {cap}")
    if width < 1:
        raise ValueError(f"width must be >= 1, got {width}")


@dataclass
class StateVector:
    """2^width complex amplitudes; qubit 1 is the most significant index bit."""

    width: int
    amps: np.ndarray

    def __post_init__(self):
        self.amps = np.asarray(self.amps, dtype=np.complex128)
        if self.amps.shape != (2**self.width,):
            raise ValueError(
                f"expected {2**self.width} amplitudes, got shape {self.amps.shape}"
            )

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def copy(self) -> "StateVector":
        return StateVector(self.width, self.amps.copy())


@dataclass(frozen=True)
class MeasurementOutcome:
    probability: float
    post_state: StateVector | None


def init_state(layout: QubitLayout | int, cap: int = DEFAULT_WIDTH_CAP) -> StateVector:
    """The all-zeros basis state for a layout (or explicit width)."""
    width = layout if isinstance(layout, int) else layout.total
    check_width(width, cap)
    amps = np.zeros(2**width, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(width, amps)


def _swap_flip(view: np.ndarray, controls, target_axis: int) -> None:
    """Swap the target-axis halves of the subarray selected by the controls."""
    idx0 = [slice(None)] * view.ndim
    for axis, value in controls:
        idx0[axis] = value
    idx1 = list(idx0)
    idx0[target_axis] = 0
    idx1[target_axis] = 1
    i0, i1 = tuple(idx0), tuple(idx1)
    tmp = view[i0].copy()
    view[i0] = view[i1]
    view[i1] = tmp


def _apply_op(view: np.ndarray, op: GateOp) -> None:
    if op.kind == "H_BLOCK":
        for wire in op.wires:
            axis = wire - 1
            idx0 = [slice(None)] * view.ndim
            idx1 = [slice(None)] * view.ndim
            idx0[axis] = 0
            idx1[axis] = 1
            i0, i1 = tuple(idx0), tuple(idx1)
            a0 = view[i0].copy()
            a1 = view[i1]
            view[i0] = (a0 + a1) * _SQRT1_2
            view[i1] = (a0 - a1) * _SQRT1_2
        return
    target_axis = op.target - 1
    # effective control value 1 means bit == (1 XOR negate flag)
    controls = [
        (w - 1, 0 if neg else 1) for w, neg in zip(op.controls, op.control_flags())
    ]
    if op.kind in ("NOT", "CN", "COPY", "CCN", "AND"):
        _swap_flip(view, controls, target_axis)
    elif op.kind == "OR":
        # OR(u,v,w) = CN(u,w) CN(v,w) CCN(u,v,w): flip on u, on v, and on both
        _swap_flip(view, controls[:1], target_axis)
        _swap_flip(view, controls[1:], target_axis)
        _swap_flip(view, controls, target_axis)
    else:
        raise ValueError(f"unknown gate kind {op.kind!r}")


def apply(state: StateVector, seq: GateSequence) -> StateVector:
    """Run a gate sequence, returning a new state."""
    if seq.width != state.width:
        raise ValueError(f"sequence width {seq.width} != state width {state.width}")
    out = state.amps.copy()
    view = out.reshape((2,) * state.width)
    for op in seq.ops:
        _apply_op(view, op)
    return StateVector(state.width, out)


def success_probability(state: StateVector, layout: QubitLayout) -> float:
    """Probability that the result qubit (the last wire) reads 1."""
    if state.width != layout.total:
        raise ValueError(f"state width {state.width} != layout total {layout.total}")
    pairs = state.amps.reshape(-1, 2)
    return float(np.sum(np.abs(pairs[:, 1]) ** 2))


def post_measure(state: StateVector, layout: QubitLayout) -> MeasurementOutcome:
    """Project onto result-qubit = 1 and renormalize."""
    probability = success_probability(state, layout)
    if probability <= 0.0:
        return MeasurementOutcome(probability, None)
    amps = state.amps.copy()
    pairs = amps.reshape(-1, 2)
    pairs[:, 0] = 0.0
    amps /= math.sqrt(probability)
    return MeasurementOutcome(probability, StateVector(state.width, amps))


def estimate_q(state: StateVector, layout: QubitLayout, shots: int, seed: int) -> float:
    """Sampled estimate of q = sqrt(success probability); deterministic per seed."""
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    probability = success_probability(state, layout)
    rng = np.random.default_rng(seed)
    successes = int(rng.binomial(shots, min(max(probability, 0.0), 1.0)))
    return math.sqrt(successes / shots)
