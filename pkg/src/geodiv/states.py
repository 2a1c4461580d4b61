"""Random states and the JSON state-file format.

State files are JSON objects with a ``kind`` key:

* ``{"kind": "simplex", "p": [...]}``
* ``{"kind": "density", "dim": d, "re": [[...]], "im": [[...]]}``
* ``{"kind": "multiqubit", "n": n, "re": [[...]], "im": [[...]]}``
* ``{"kind": "joint", "cards": [...], "p": [...]}``

Loading checks the target type's invariants with a 1e-9 admission
tolerance, then renormalizes (and symmetrizes matrices).
"""

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .classical import as_joint
from .errors import DimensionMismatch, InvalidState
from .linalg import as_hermitian
from .manyparty import MAX_QUBITS
from .quantum import as_density_matrix
from .simplex import as_probability_vector

ADMISSION_TOL = 1e-9
DENSITY_FLOOR = 1e-3

KINDS = ("simplex", "density", "multiqubit", "joint")


def random_probability(n: int, rng: np.random.Generator) -> np.ndarray:
    """Normalized exponential variates (a flat Dirichlet draw)."""
    e = rng.exponential(size=n)
    return e / e.sum()


def random_density(dim: int, rng: np.random.Generator, floor: float = DENSITY_FLOOR) -> np.ndarray:
    """``G G^dagger / Tr + floor * I``, renormalized; ``G`` complex Gaussian."""
    G = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = G @ G.conj().T
    rho = rho / np.trace(rho).real + floor * np.eye(dim)
    rho = rho / np.trace(rho).real
    return 0.5 * (rho + rho.conj().T)


def random_diagonal_density(dim: int, rng: np.random.Generator) -> np.ndarray:
    return np.diag(random_probability(dim, rng)).astype(complex)


def random_joint(cards, rng: np.random.Generator) -> np.ndarray:
    cards = tuple(int(c) for c in cards)
    return random_probability(int(np.prod(cards)), rng).reshape(cards)


def bell_mixture(eps: float) -> np.ndarray:
    """``(1 - eps) |Phi+><Phi+| + eps I/4``."""
    phi = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
    return (1 - eps) * np.outer(phi, phi.conj()) + eps * np.eye(4) / 4


def correlated_bits(eps: float) -> np.ndarray:
    """Two bits with ``p(00) = p(11) = 1/2 - eps`` and ``p(01) = p(10) = eps``."""
    return np.array([[0.5 - eps, eps], [eps, 0.5 - eps]])


@dataclass
class State:
    kind: str
    data: np.ndarray

    @property
    def flat(self) -> np.ndarray:
        """Weights as a flat vector (simplex and joint kinds)."""
        return self.data.ravel()


def _matrix(doc, dim):
    try:
        re = np.asarray(doc["re"], dtype=float)
        im = np.asarray(doc.get("im", np.zeros_like(re)), dtype=float)
    except (ValueError, TypeError) as exc:
        raise InvalidState(f"matrix arrays must be rectangular numbers: {exc}") from exc
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise DimensionMismatch(f"expected {dim}x{dim} re/im arrays, got {re.shape} and {im.shape}")
    M = as_hermitian(re + 1j * im, tol=ADMISSION_TOL)
    tr = float(np.trace(M).real)
    if abs(tr - 1) > ADMISSION_TOL:
        raise InvalidState(f"trace is {tr!r}, not 1")
    return as_density_matrix(M / tr)


def _weights(values):
    try:
        p = np.asarray(values, dtype=float)
    except (ValueError, TypeError) as exc:
        raise InvalidState(f"weights must be a flat numeric array: {exc}") from exc
    if p.ndim != 1:
        raise DimensionMismatch("weights must be a flat array")
    total = float(p.sum())
    if abs(total - 1) > ADMISSION_TOL:
        raise InvalidState(f"weights sum to {total!r}, not 1")
    return p / total


def state_from_dict(doc: dict) -> State:
    if not isinstance(doc, dict) or doc.get("kind") not in KINDS:
        raise InvalidState(f"state file needs 'kind' in {KINDS}")
    kind = doc["kind"]
    try:
        if kind == "simplex":
            return State(kind, as_probability_vector(_weights(doc["p"])))
        if kind == "joint":
            return State(kind, as_joint(_weights(doc["p"]), doc["cards"]))
        if kind == "density":
            return State(kind, _matrix(doc, int(doc["dim"])))
        n = int(doc["n"])
        if not 1 <= n <= MAX_QUBITS:
            raise DimensionMismatch(f"multiqubit states need 1..{MAX_QUBITS} qubits, got {n}")
        return State(kind, _matrix(doc, 2**n))
    except KeyError as exc:
        raise InvalidState(f"{kind} state is missing field {exc}") from exc


def state_to_dict(state: State) -> dict:
    d = state.data
    if state.kind == "simplex":
        return {"kind": "simplex", "p": d.tolist()}
    if state.kind == "joint":
        return {"kind": "joint", "cards": list(d.shape), "p": d.ravel().tolist()}
    mats = {"re": d.real.tolist(), "im": d.imag.tolist()}
    if state.kind == "density":
        return {"kind": "density", "dim": d.shape[0], **mats}
    return {"kind": "multiqubit", "n": d.shape[0].bit_length() - 1, **mats}


def load_state(path) -> State:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidState(f"{path}: not valid JSON ({exc})") from exc
    return state_from_dict(doc)


def save_state(path, state: State) -> None:
    Path(path).write_text(json.dumps(state_to_dict(state)))
