"""Quantum information metrics: entropies, mutual-entropy variants, entropy exchange.

All operators are finite-dimensional matrices.  Logarithms default to
base 2; eigenvalues within 1e-10 below zero are clamped, anything lower
is an invariant violation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

EIG_CLAMP = 1e-10
SUPPORT_TOL = 1e-12


class InvariantError(ValueError):
    """An operator violated a structural invariant (Hermiticity, trace, PSD)."""


def _log_factor(base) -> float:
    if base == 2:
        return math.log(2.0)
    if base == "e" or base == math.e:
        return 1.0
    raise ValueError(f"log base must be 2 or e, got {base!r}")


def _clamped_eigh(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    values, vectors = np.linalg.eigh(matrix)
    if values.min() < -EIG_CLAMP:
        raise InvariantError(f"negative eigenvalue {values.min()} beyond tolerance")
    return np.clip(values, 0.0, None), vectors


@dataclass(frozen=True)
class DensityMatrix:
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128)
        object.__setattr__(self, "matrix", m)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvariantError(f"expected a square matrix, got shape {m.shape}")
        if np.abs(m - m.conj().T).max() > 1e-12:
            raise InvariantError("density matrix must be Hermitian")
        if abs(np.trace(m).real - 1.0) > 1e-12:
            raise InvariantError(f"trace must be 1, got {np.trace(m)}")
        if np.linalg.eigvalsh(m).min() < -EIG_CLAMP:
            raise InvariantError("density matrix must be positive semidefinite")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def pure(cls, vector) -> "DensityMatrix":
        v = np.asarray(vector, dtype=np.complex128)
        v = v / np.linalg.norm(v)
        return cls(np.outer(v, v.conj()))

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityMatrix":
        return cls(np.eye(dim) / dim)


@dataclass(frozen=True)
class KrausChannel:
    """Trace-preserving channel rho -> sum_j A_j rho A_j+."""

    kraus: tuple[np.ndarray, ...]

    def __post_init__(self):
        ops = tuple(np.asarray(a, dtype=np.complex128) for a in self.kraus)
        object.__setattr__(self, "kraus", ops)
        if not ops:
            raise InvariantError("channel needs at least one Kraus operator")
        d_in = ops[0].shape[1]
        total = sum(a.conj().T @ a for a in ops)
        if np.abs(total - np.eye(d_in)).max() > 1e-10:
            raise InvariantError("Kraus operators must satisfy sum A+ A = I")

    @property
    def dim_in(self) -> int:
        return self.kraus[0].shape[1]

    def __call__(self, rho: DensityMatrix) -> DensityMatrix:
        out = sum(a @ rho.matrix @ a.conj().T for a in self.kraus)
        return DensityMatrix(out)

    def is_rank1_pvm(self, tol: float = 1e-10) -> bool:
        """Each operator a rank-1 orthogonal projection, mutually orthogonal."""
        d = self.dim_in
        if len(self.kraus) != d:
            return False
        for a in self.kraus:
            if a.shape != (d, d):
                return False
            if np.abs(a - a.conj().T).max() > tol:
                return False
            if np.abs(a @ a - a).max() > tol:
                return False
            if abs(np.trace(a).real - 1.0) > tol:
                return False
        for i, a in enumerate(self.kraus):
            for b in self.kraus[i + 1 :]:
                if np.abs(a @ b).max() > tol:
                    return False
        return True

    @classmethod
    def unitary(cls, u) -> "KrausChannel":
        return cls((np.asarray(u, dtype=np.complex128),))

    @classmethod
    def pvm_from_basis(cls, vectors) -> "KrausChannel":
        cols = np.asarray(vectors, dtype=np.complex128)
        return cls(tuple(np.outer(cols[:, j], cols[:, j].conj()) for j in range(cols.shape[1])))

    @classmethod
    def depolarizing(cls, dim: int) -> "KrausChannel":
        """Completely depolarizing channel rho -> I/dim."""
        ops = []
        for i in range(dim):
            for j in range(dim):
                e = np.zeros((dim, dim), dtype=np.complex128)
                e[i, j] = 1.0 / math.sqrt(dim)
                ops.append(e)
        return cls(tuple(ops))


@dataclass(frozen=True)
class Ensemble:
    priors: tuple[float, ...]
    states: tuple[DensityMatrix, ...]

    def __post_init__(self):
        if len(self.priors) != len(self.states):
            raise InvariantError("priors and states must align")
        if any(p < 0 for p in self.priors):
            raise InvariantError("priors must be nonnegative")
        if abs(sum(self.priors) - 1.0) > 1e-12:
            raise InvariantError(f"priors must sum to 1, got {sum(self.priors)}")
        dims = {s.dim for s in self.states}
        if len(dims) != 1:
            raise InvariantError("all signal states must share a dimension")

    def mixture(self) -> DensityMatrix:
        return DensityMatrix(
            sum(p * s.matrix for p, s in zip(self.priors, self.states))
        )


def vn_entropy(rho: DensityMatrix, base=2) -> float:
    """-sum lambda log lambda over the eigenvalues (0 log 0 = 0)."""
    factor = _log_factor(base)
    values, _ = _clamped_eigh(rho.matrix)
    positive = values[values > 0]
    return float(-(positive * np.log(positive)).sum() / factor)


def relative_entropy(sigma: DensityMatrix, rho: DensityMatrix, base=2) -> float:
    """Umegaki relative entropy tr sigma (log sigma - log rho); +inf off support."""
    if sigma.dim != rho.dim:
        raise ValueError(f"dimension mismatch {sigma.dim} != {rho.dim}")
    factor = _log_factor(base)
    rho_vals, rho_vecs = _clamped_eigh(rho.matrix)
    support = rho_vals > SUPPORT_TOL
    if not support.all():
        kernel = rho_vecs[:, ~support]
        leak = np.trace(kernel.conj().T @ sigma.matrix @ kernel).real
        if leak > 1e-10:
            return math.inf
    sig_vals, _ = _clamped_eigh(sigma.matrix)
    positive = sig_vals[sig_vals > 0]
    term1 = float((positive * np.log(positive)).sum())
    overlaps = np.einsum(
        "ij,jk,ki->i", rho_vecs.conj().T, sigma.matrix, rho_vecs
    ).real
    term2 = float((overlaps[support] * np.log(rho_vals[support])).sum())
    value = (term1 - term2) / factor
    return max(value, 0.0) if value > -1e-9 else value


def _spectral_projections(rho: DensityMatrix) -> list[tuple[float, np.ndarray]]:
    """Rank-1 eigenpairs, eigenvalues descending, zero modes dropped."""
    values, vectors = _clamped_eigh(rho.matrix)
    order = np.argsort(values)[::-1]
    pairs = []
    for idx in order:
        if values[idx] <= SUPPORT_TOL:
            continue
        v = vectors[:, idx]
        pairs.append((float(values[idx]), np.outer(v, v.conj())))
    return pairs


def ohya_mutual(
    rho: DensityMatrix,
    channel: KrausChannel,
    base=2,
    degenerate_search_budget: int = 0,
    seed: int = 0,
) -> float:
    """Weighted relative entropy of channeled eigenprojections vs the output.

    sum_n lambda_n S(Lambda E_n, Lambda rho) over the spectral
    decomposition of rho.  With a positive budget, random orthonormal
    rotations inside degenerate eigenspaces are also tried and the
    maximum is returned (the supremum over orthogonal decompositions can
    in principle live there).
    """
    if rho.dim != channel.dim_in:
        raise ValueError(f"dimension mismatch {rho.dim} != {channel.dim_in}")
    out = channel(rho)

    def value_for(pairs) -> float:
        return sum(
            lam * relative_entropy(channel(DensityMatrix(proj)), out, base)
            for lam, proj in pairs
        )

    best = value_for(_spectral_projections(rho))
    if degenerate_search_budget > 0:
        values, vectors = _clamped_eigh(rho.matrix)
        groups: list[list[int]] = []
        for idx in np.argsort(values)[::-1]:
            if values[idx] <= SUPPORT_TOL:
                continue
            if groups and abs(values[groups[-1][0]] - values[idx]) < 1e-10:
                groups[-1].append(idx)
            else:
                groups.append([idx])
        if any(len(g) > 1 for g in groups):
            rng = np.random.default_rng(seed)
            for _ in range(degenerate_search_budget):
                pairs = []
                for group in groups:
                    block = vectors[:, group]
                    if len(group) > 1:
                        z = rng.normal(size=(len(group), len(group))) + 1j * rng.normal(
                            size=(len(group), len(group))
                        )
                        q, r = np.linalg.qr(z)
                        q = q * (np.diagonal(r) / np.abs(np.diagonal(r)))
                        block = block @ q
                    for j, idx in enumerate(group):
                        v = block[:, j]
                        pairs.append((float(values[idx]), np.outer(v, v.conj())))
                best = max(best, value_for(pairs))
    return best


def holevo_mutual(ensemble: Ensemble, channel: KrausChannel, base=2) -> float:
    """S(Lambda sigma) - sum lambda_n S(Lambda sigma_n)."""
    out_mix = channel(ensemble.mixture())
    return vn_entropy(out_mix, base) - sum(
        p * vn_entropy(channel(s), base) for p, s in zip(ensemble.priors, ensemble.states)
    )


def exchange_matrix(rho: DensityMatrix, channel: KrausChannel) -> np.ndarray:
    """W with W_ij = tr(A_i+ rho A_j) / tr(Lambda rho)."""
    if rho.dim != channel.dim_in:
        raise ValueError(f"dimension mismatch {rho.dim} != {channel.dim_in}")
    ops = channel.kraus
    w = np.array(
        [[np.trace(a.conj().T @ rho.matrix @ b) for b in ops] for a in ops],
        dtype=np.complex128,
    )
    out_trace = np.trace(channel(rho).matrix).real
    w /= out_trace
    if np.abs(w - w.conj().T).max() > 1e-10 or abs(np.trace(w).real - 1.0) > 1e-10:
        raise InvariantError("exchange matrix is not a density matrix")
    if np.linalg.eigvalsh(w).min() < -1e-10:
        raise InvariantError("exchange matrix is not positive semidefinite")
    return w


def entropy_exchange(rho: DensityMatrix, channel: KrausChannel, base=2) -> float:
    """-tr W log W for the exchange matrix W."""
    return vn_entropy(DensityMatrix(exchange_matrix(rho, channel)), base)


def coherent_informations(
    rho: DensityMatrix, channel: KrausChannel, base=2
) -> tuple[float, float]:
    """(I2, I3) = (S(out) - Se, S(rho) + S(out) - Se)."""
    s_out = vn_entropy(channel(rho), base)
    s_e = entropy_exchange(rho, channel, base)
    return s_out - s_e, vn_entropy(rho, base) + s_out - s_e


def theorem7_report(rho: DensityMatrix, channel: KrausChannel, base=2, tol: float = 1e-10) -> dict:
    """Compare the mutual-entropy variants for a rank-1 PVM channel.

    Checks that I1 <= min(S(rho), S(out)), I2 = 0 and I3 = S(rho), each
    within tol.  Refuses channels that are not rank-1 PVMs.
    """
    if not channel.is_rank1_pvm():
        raise ValueError("channel is not a rank-1 projection valued measure")
    s_rho = vn_entropy(rho, base)
    s_out = vn_entropy(channel(rho), base)
    i1 = ohya_mutual(rho, channel, base)
    i2, i3 = coherent_informations(rho, channel, base)
    checks = {
        "i1_bounded": i1 <= min(s_rho, s_out) + tol,
        "i2_zero": abs(i2) < tol,
        "i3_equals_entropy": abs(i3 - s_rho) < tol,
    }
    return {
        "I1": i1,
        "I2": i2,
        "I3": i3,
        "S_rho": s_rho,
        "S_out": s_out,
        "inequalities_hold": checks,
    }
