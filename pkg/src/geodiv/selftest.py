"""Seeded oracle-equivalence suites behind ``geodiv selftest``.

Every suite draws its cases from its own generator seeded by
``(seed, suite index)``, so a fixed seed reproduces the same case list
regardless of which suites run. ``trials`` sets the number of random cases
per suite; zero runs nothing.
"""

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import classical, manyparty, quantum, simplex
from .linalg import dlog_frechet, eig_hermitian, log_hermitian
from .quadrature import eguchi_metric_check, gauss_legendre_unit
from .states import (
    bell_mixture,
    correlated_bits,
    random_density,
    random_diagonal_density,
    random_joint,
    random_probability,
)


@dataclass
class Check:
    label: str
    error: float
    tol: float
    inputs: dict = field(default_factory=dict, repr=False)

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.error) and self.error <= self.tol)


@dataclass
class SuiteResult:
    name: str
    checks: list
    seconds: float

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def worst(self) -> Check | None:
        if not self.checks:
            return None
        return max(self.checks, key=lambda c: c.error / c.tol if np.isfinite(c.error) else np.inf)


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        if np.iscomplexobj(x):
            return {"re": x.real.tolist(), "im": x.imag.tolist()}
        return x.tolist()
    if isinstance(x, np.generic):
        return x.item()
    return x


def failure_record(suite: str, check: Check) -> dict:
    return {
        "suite": suite,
        "label": check.label,
        "error": check.error,
        "tol": check.tol,
        "inputs": _jsonable(check.inputs),
    }


def classical_identity(rng, trials):
    checks = []
    for i in range(trials):
        n = (2, 3, 5, 10)[i % 4]
        p, q = random_probability(n, rng), random_probability(n, rng)
        d = simplex.canonical_divergence_simplex(p, q)
        ds = simplex.dual_divergence_simplex(p, q)
        io = {"p": p, "q": q}
        checks.append(Check(f"D(p,q)=KL(p,q) n={n}", abs(d - simplex.kl(p, q)), 1e-8, io))
        checks.append(Check(f"D*(p,q)=KL(q,p) n={n}", abs(ds - simplex.kl(q, p)), 1e-8, io))
    return checks


def quantum_identity(rng, trials):
    checks = []
    for i in range(trials):
        d = (2, 3, 4, 8)[i % 4]
        r1, r2 = random_density(d, rng), random_density(d, rng)
        io = {"rho1": r1, "rho2": r2}
        c = quantum.canonical_divergence_quantum(r1, r2)
        cs = quantum.dual_divergence_quantum(r1, r2)
        checks.append(Check(f"D=Q(r1,r2) dim={d}", abs(c - quantum.quantum_relative_entropy(r1, r2)), 1e-7, io))
        checks.append(Check(f"D*=Q(r2,r1) dim={d}", abs(cs - quantum.quantum_relative_entropy(r2, r1)), 1e-7, io))
    return checks


def commuting_reduction(rng, trials):
    checks = []
    for i in range(trials):
        d = 2 + i % 5
        r1, r2 = random_diagonal_density(d, rng), random_diagonal_density(d, rng)
        p, q = np.diag(r1).real, np.diag(r2).real
        io = {"p": p, "q": q}
        pairs = [
            ("Q vs KL", quantum.quantum_relative_entropy(r1, r2), simplex.kl(p, q)),
            ("D_q vs D", quantum.canonical_divergence_quantum(r1, r2), simplex.canonical_divergence_simplex(p, q)),
            ("D*_q vs D*", quantum.dual_divergence_quantum(r1, r2), simplex.dual_divergence_simplex(p, q)),
        ]
        for name, a, b in pairs:
            checks.append(Check(f"{name} dim={d}", abs(a - b), 1e-9, io))
    return checks


def eguchi_recovery(rng, trials):
    checks = []
    for i in range(trials):
        p = np.full(3, 1 / 3) if i == 0 else 0.2 + 0.4 * random_probability(3, rng)
        xi = p[:-1]
        g = simplex.fisher_chart_metric(p)

        def kl_chart(a, b):
            return simplex.kl(simplex.chart_to_simplex(a), simplex.chart_to_simplex(b))

        dev1 = eguchi_metric_check(kl_chart, xi, g, 1e-3, simplex.in_chart_domain)
        dev2 = eguchi_metric_check(kl_chart, xi, g, 5e-4, simplex.in_chart_domain)
        io = {"p": p}
        checks.append(Check("Fisher from KL, h=1e-3", dev1, 1e-5, io))
        checks.append(Check("O(h^2): |dev(h)/dev(h/2) - 4|", abs(dev1 / dev2 - 4.0), 1.0, io))
    return checks


def classical_complexity(rng, trials):
    checks = []
    if trials == 0:
        return checks
    eps = 0.05
    bits = correlated_bits(eps)
    oracle = 2 * math.log(2) + 2 * ((0.5 - eps) * math.log(0.5 - eps) + eps * math.log(eps))
    rep = classical.complexity_classical(bits, classical.singletons(2))
    checks.append(Check("correlated bits eps=0.05", abs(rep.divergence - oracle), 1e-6))

    p = random_joint((2, 3, 2), rng)
    rep = classical.ipf_project(p, classical.singletons(3))
    io = {"p": p}
    checks.append(Check("singletons -> product of marginals",
                        float(np.max(np.abs(rep.projection - classical.product_of_marginals(p)))), 1e-9, io))
    checks.append(Check("singletons -> multi-information",
                        abs(rep.divergence - classical.multi_information(p)), 1e-9, io))

    parity = np.array([[[1.0 if (a ^ b ^ c) == 0 else 1e-3 for c in (0, 1)] for b in (0, 1)] for a in (0, 1)])
    parity /= parity.sum()
    for label, joint in [("parity mixture", 0.9 * parity + 0.1 / 8), ("random 3-bit", random_joint((2, 2, 2), rng))]:
        rep = classical.ipf_project(joint, classical.pairs(3))
        checks.append(Check(f"{label}: pairwise residual", rep.residual, 1e-9, {"p": joint}))
        checks.append(Check(f"{label}: IPF sweeps", rep.iterations, 2000, {"p": joint}))

    p = random_joint((2, 3, 2), rng)
    fam = classical.pairs(3)
    rep = classical.ipf_project(p, fam)
    for _ in range(trials):
        q = classical.exponential_family_member(p.shape, fam, rng)
        gap = simplex.kl(p.ravel(), q.ravel()) - rep.divergence - simplex.kl(rep.projection.ravel(), q.ravel())
        checks.append(Check("Pythagorean relation", abs(gap), 1e-7, {"p": p, "q": q}))
    return checks


def quantum_complexity(rng, trials):
    checks = []
    if trials == 0:
        return checks
    rho = bell_mixture(1e-6)
    checks.append(Check("Bell eps=1e-6: I = 2 ln 2",
                        abs(manyparty.quantum_multi_information(rho) - 2 * math.log(2)), 1e-4))
    for i in range(trials):
        n = 2 + i % 2
        k = 1 + i % n if n > 1 else 1
        basis = manyparty.klocal_basis(n, min(k, n - 1) if n > 1 else 1)
        theta = 0.3 * rng.standard_normal(len(basis))
        sigma = manyparty.gibbs_state(theta, basis)
        rep = manyparty.maxent_project_quantum(sigma, basis.k)
        checks.append(Check(f"Gibbs round trip n={n} k={basis.k}", rep.divergence, 1e-8, {"theta": theta}))

        rho = random_density(2**n, rng, floor=1e-2)
        q1 = manyparty.many_party_correlation(rho, 1).divergence
        checks.append(Check(f"Q(rho,E_1) = I(rho) n={n}",
                            abs(q1 - manyparty.quantum_multi_information(rho)), 1e-5, {"rho": rho}))

        rho3 = random_density(8, rng, floor=1e-2)
        a = manyparty.many_party_correlation(rho3, 1).divergence
        b = manyparty.many_party_correlation(rho3, 2).divergence
        io = {"rho": rho3}
        checks.append(Check("Q(rho,E_1) >= Q(rho,E_2)", max(b - a, 0.0), 1e-9, io))
        checks.append(Check("Q(rho,E_2) >= 0", max(-b, 0.0), 1e-12, io))
    return checks


def _bogoliubov_by_quadrature(rho, A, B, npoints=64):
    w, U = eig_hermitian(rho)
    x, wts = gauss_legendre_unit(npoints)
    total = 0.0
    for s, ws in zip(x, wts):
        left = (U * w**s) @ U.conj().T
        right = (U * w ** (1 - s)) @ U.conj().T
        total += ws * np.trace(left @ A @ right @ B).real
    return total


def numerics_substrate(rng, trials):
    checks = []
    for i in range(trials):
        d = 2 + i % 4
        rho = random_density(d, rng, floor=1e-2)
        G = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        A = 0.5 * (G + G.conj().T)
        G = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        B = 0.5 * (G + G.conj().T)
        io = {"rho": rho, "A": A, "B": B}
        closed = quantum.bogoliubov_inner(rho, A, B)
        checks.append(Check(f"Bogoliubov vs 64-pt quadrature dim={d}",
                            abs(closed - _bogoliubov_by_quadrature(rho, A, B)), 1e-9, io))

        # well-conditioned base point and a unit-norm direction
        P = np.eye(d) + d * rho
        V = A / np.linalg.norm(A, 2)
        exact = dlog_frechet(P, V)
        logP = log_hermitian(P)
        errs = []
        for h in (1e-4, 1e-5):
            fwd = (log_hermitian(P + h * V) - logP) / h
            errs.append(float(np.max(np.abs(fwd - exact))))
        h = 1e-4
        central = (log_hermitian(P + h * V) - log_hermitian(P - h * V)) / (2 * h)
        io = {"P": P, "V": V}
        checks.append(Check(f"dlog vs central difference dim={d}",
                            float(np.max(np.abs(central - exact))), 1e-7, io))
        checks.append(Check("dlog O(h): |err(1e-4)/err(1e-5) - 10|", abs(errs[0] / errs[1] - 10.0), 2.0, io))
    return checks


SUITES = [
    ("classical-identity", classical_identity, 100),
    ("quantum-identity", quantum_identity, 50),
    ("commuting-reduction", commuting_reduction, 20),
    ("eguchi-recovery", eguchi_recovery, 5),
    ("classical-complexity", classical_complexity, 20),
    ("quantum-complexity", quantum_complexity, 10),
    ("numerics-substrate", numerics_substrate, 20),
]


def run_selftest(seed: int = 0, trials: int | None = None, only=None) -> list[SuiteResult]:
    results = []
    for index, (name, suite, default_trials) in enumerate(SUITES):
        if only and name not in only:
            continue
        rng = np.random.default_rng([seed, index])
        start = time.perf_counter()
        checks = suite(rng, default_trials if trials is None else trials)
        results.append(SuiteResult(name, checks, time.perf_counter() - start))
    return results


def format_table(results) -> str:
    lines = [f"{'suite':<22} {'cases':>6} {'worst error':>12} {'tol':>9} {'time/s':>7}  status"]
    for r in results:
        w = r.worst
        err = f"{w.error:.3e}" if w else "-"
        tol = f"{w.tol:.0e}" if w else "-"
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{r.name:<22} {len(r.checks):>6} {err:>12} {tol:>9} {r.seconds:>7.2f}  {status}")
    return "\n".join(lines)
