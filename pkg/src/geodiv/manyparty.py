"""Many-party correlation of multi-qubit states from k-local Gibbs families.

Pauli strings are stored as a bit-flip mask plus a phase vector: for a
computational basis state ``|x>``, ``P|x> = phase[x] |x ^ flip>``. Site 0
is the most significant bit, matching ``np.kron`` ordering.
"""

import itertools
import logging
from dataclasses import dataclass
from math import comb

import numpy as np

from .config import OptimizerConfig
from .errors import DimensionMismatch, NotConverged, OutOfRange
from .quantum import as_density_matrix, partial_trace, quantum_relative_entropy, von_neumann_entropy

log = logging.getLogger(__name__)

MAX_QUBITS = 8
DEFAULT_TOLERANCE = 1e-7

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def pauli_matrix(label: str) -> np.ndarray:
    """Dense tensor product of single-qubit Paulis, e.g. ``"XIZ"``."""
    out = np.ones((1, 1), dtype=complex)
    for c in label:
        out = np.kron(out, _PAULI[c])
    return out


def _flip_and_phase(label: str):
    n = len(label)
    x = np.arange(2**n)
    flip = 0
    phase = np.ones(2**n, dtype=complex)
    for site, c in enumerate(label):
        shift = n - 1 - site
        bit = (x >> shift) & 1
        sign = 1 - 2 * bit
        if c in "XY":
            flip |= 1 << shift
        if c == "Y":
            phase = phase * 1j * sign
        elif c == "Z":
            phase = phase * sign
    return flip, phase


@dataclass(frozen=True)
class KLocalBasis:
    """Pauli strings with between 1 and ``k`` non-identity factors."""

    n_sites: int
    k: int
    labels: tuple[str, ...]
    flips: np.ndarray
    phases: np.ndarray

    def __len__(self):
        return len(self.labels)

    @property
    def dim(self) -> int:
        return 2**self.n_sites

    @property
    def operators(self) -> list[np.ndarray]:
        return [pauli_matrix(label) for label in self.labels]

    def hamiltonian(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        if theta.shape != (len(self),):
            raise DimensionMismatch(f"{theta.size} coefficients for {len(self)} operators")
        x = np.arange(self.dim)
        H = np.zeros((self.dim, self.dim), dtype=complex)
        for f, ph, th in zip(self.flips, self.phases, theta):
            H[x ^ f, x] += th * ph
        return 0.5 * (H + H.conj().T)

    def expectations(self, rho) -> np.ndarray:
        """``Tr(rho P)`` for every string ``P``."""
        rho = np.asarray(rho)
        x = np.arange(self.dim)
        cols = x[None, :] ^ self.flips[:, None]
        vals = np.sum(rho[x[None, :], cols] * self.phases, axis=1)
        return np.real(vals)


def klocal_basis(n: int, k: int) -> KLocalBasis:
    if not 1 <= n <= MAX_QUBITS:
        raise OutOfRange(f"n must be in 1..{MAX_QUBITS}, got {n}")
    if not 1 <= k <= n:
        raise OutOfRange(f"k must be in 1..{n}, got {k}")
    labels = []
    for weight in range(1, k + 1):
        for sites in itertools.combinations(range(n), weight):
            for paulis in itertools.product("XYZ", repeat=weight):
                label = ["I"] * n
                for s, c in zip(sites, paulis):
                    label[s] = c
                labels.append("".join(label))
    assert len(labels) == sum(comb(n, j) * 3**j for j in range(1, k + 1))
    fp = [_flip_and_phase(label) for label in labels]
    return KLocalBasis(
        n_sites=n,
        k=k,
        labels=tuple(labels),
        flips=np.array([f for f, _ in fp], dtype=np.int64),
        phases=np.array([ph for _, ph in fp]),
    )


def _log_partition(H):
    w, U = np.linalg.eigh(H)
    top = w[-1]
    e = np.exp(w - top)
    z = e.sum()
    sigma = (U * (e / z)) @ U.conj().T
    return top + np.log(z), 0.5 * (sigma + sigma.conj().T)


def gibbs_state(theta, basis: KLocalBasis) -> np.ndarray:
    """``exp(H) / Tr exp(H)`` for ``H = sum_a theta_a P_a``."""
    return _log_partition(basis.hamiltonian(theta))[1]


def n_qubits(rho) -> int:
    d = np.asarray(rho).shape[0]
    n = d.bit_length() - 1
    if d < 2 or 2**n != d:
        raise DimensionMismatch(f"dimension {d} is not a power of two")
    if n > MAX_QUBITS:
        raise OutOfRange(f"{n} qubits exceeds the limit of {MAX_QUBITS}")
    return n


@dataclass
class QuantumProjectionReport:
    sigma_hat: np.ndarray
    theta: np.ndarray
    divergence: float
    iterations: int
    gradient_residual: float
    free_energy: float


def maxent_project_quantum(rho, k: int, cfg: OptimizerConfig | None = None) -> QuantumProjectionReport:
    """Project ``rho`` onto the k-local Gibbs family by free-energy minimization.

    Minimizes ``F(theta) = log Tr exp(H(theta)) - theta . b`` with
    ``b_a = Tr(rho P_a)``, starting from the maximally mixed state. Each step
    follows the negative gradient, optionally scaled by the inverse
    variances ``1 - <P_a>^2``, with a Barzilai-Borwein trial length and
    Armijo backtracking, so accepted steps never increase ``F``.
    """
    cfg = cfg or OptimizerConfig(tolerance=DEFAULT_TOLERANCE)
    rho = as_density_matrix(rho)
    n = n_qubits(rho)
    basis = klocal_basis(n, k)
    b = basis.expectations(rho)

    def evaluate(theta):
        logz, sigma = _log_partition(basis.hamiltonian(theta))
        mean = basis.expectations(sigma)
        return logz - theta @ b, mean - b, mean, sigma

    theta = np.zeros(len(basis))
    F, g, mean, sigma = evaluate(theta)
    residual = float(np.max(np.abs(g)))
    step = 1.0
    prev = None
    it = 0
    while residual > cfg.tolerance and it < cfg.max_iterations:
        scale = np.maximum(1.0 - mean**2, 1e-8) if cfg.precondition else np.ones_like(g)
        d = -g / scale
        if prev is not None:
            s, y = theta - prev[0], g - prev[1]
            sy = float(s @ y)
            if sy > 0:
                step = float(np.clip((s * scale) @ s / sy, 1e-6, 1e6))
        slope = float(g @ d)
        alpha = step
        for _ in range(60):
            cand = theta + alpha * d
            F_new, g_new, mean_new, sigma_new = evaluate(cand)
            if F_new <= F + 1e-4 * alpha * slope:
                break
            alpha *= 0.5
        else:
            log.debug("line search stalled at residual %.2e", residual)
            break
        prev = (theta, g)
        theta, F, g, mean, sigma = cand, F_new, g_new, mean_new, sigma_new
        residual = float(np.max(np.abs(g)))
        it += 1

    report = QuantumProjectionReport(
        sigma_hat=sigma,
        theta=theta,
        divergence=quantum_relative_entropy(rho, sigma),
        iterations=it,
        gradient_residual=residual,
        free_energy=float(F),
    )
    if residual > cfg.tolerance:
        raise NotConverged(
            f"Gibbs fit stopped after {it} iterations with gradient residual {residual:.3e}",
            report,
        )
    log.debug("Gibbs fit converged in %d iterations (residual %.2e)", it, residual)
    return report


def many_party_correlation(rho, k: int, cfg: OptimizerConfig | None = None) -> QuantumProjectionReport:
    """``inf`` of the relative entropy from ``rho`` to the k-local Gibbs family."""
    return maxent_project_quantum(rho, k, cfg)


def quantum_multi_information(rho, site_dims=None) -> float:
    """``sum_i S(rho_i) - S(rho)`` over single-site reductions (qubits by default)."""
    rho = as_density_matrix(rho)
    if site_dims is None:
        site_dims = [2] * n_qubits(rho)
    parts = sum(
        von_neumann_entropy(partial_trace(rho, site_dims, [i])) for i in range(len(site_dims))
    )
    return max(parts - von_neumann_entropy(rho), 0.0)
