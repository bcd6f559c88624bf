"""Shared test oracles: high-precision brute-force 2F1 and parameter draws."""

from __future__ import annotations

import mpmath as mp

from dengfan import BarrierParams


def hyp2f1_bruteforce(a, b, c, z, tol="1e-18", max_terms=100_000):
    """Term-by-term 2F1 series in 40-digit arithmetic; independent of the
    package's evaluator (no transformations, no stopping heuristics)."""
    with mp.workdps(40):
        a, b, c, z = mp.mpc(a), mp.mpc(b), mp.mpc(c), mp.mpc(z)
        tol = mp.mpf(tol)
        term = mp.mpc(1)
        total = mp.mpc(1)
        for n in range(max_terms):
            term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
            total += term
            if abs(term) <= tol * abs(total):
                break
        else:
            raise RuntimeError("brute-force series did not converge")
        return complex(total)


def draw_barrier_params(rng, symmetric: bool | None = None) -> BarrierParams:
    """A random physically sane parameter set (moderate deformations keep the
    hypergeometric parameter magnitudes in well-conditioned territory)."""
    q = float(rng.uniform(0.3, 0.95))
    if symmetric is None:
        symmetric = bool(rng.integers(0, 2))
    q_tilde = q if symmetric else float(rng.uniform(0.3, 0.95))
    return BarrierParams(
        v0=float(rng.uniform(0.05, 2.5)),
        a=float(rng.uniform(0.5, 1.6)),
        x_e=float(rng.uniform(0.0, 1.2)),
        q=q,
        q_tilde=q_tilde,
        m=float(rng.uniform(0.5, 1.5)),
    )
