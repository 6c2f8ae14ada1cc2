"""Floating-point checks of the two equivariant maps out of G(2n, n).

Points of G(2n, n) are orthogonal projection matrices P (symmetric,
idempotent, trace n); the involution sends P to E - P.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

IDENTITY_TOL = 1e-9
EIGEN_TOL = 1e-7
EQUIVARIANCE_TOL = 1e-12


def random_projection(n: int, seed, max_draws: int = 16) -> np.ndarray:
    """P = Q Q^T for Q a 2n x n orthonormal frame from a seeded Gaussian sample.

    `seed` is anything numpy's default_rng accepts.  A rank-deficient draw is
    replaced by the next draw of the same generator.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(seed)
    for _ in range(max_draws):
        a = rng.standard_normal((2 * n, n))
        q, r = np.linalg.qr(a)
        if np.min(np.abs(np.diag(r))) > 1e-10:
            return q @ q.T
    raise RuntimeError(f"no full-rank sample in {max_draws} draws")


def projection_from_frame(q: np.ndarray) -> np.ndarray:
    return q @ q.T


def complement(p: np.ndarray) -> np.ndarray:
    return np.eye(p.shape[0]) - p


def sphere_map(p: np.ndarray) -> np.ndarray:
    """(P11 - 1/2, P12, ..., P1,2n): odd under P -> E - P and never zero."""
    f = p[0].astype(float).copy()
    f[0] -= 0.5
    return f


def block_embed(l: np.ndarray, s: int) -> np.ndarray:
    """L (+) ... (+) L, s copies on the diagonal."""
    if s < 1:
        raise ValueError("need at least one copy")
    return np.kron(np.eye(s), l)


def projection_errors(p: np.ndarray, n: int) -> dict[str, float]:
    return {
        "symmetry": float(np.max(np.abs(p - p.T))),
        "idempotency": float(np.max(np.abs(p @ p - p))),
        "trace": float(abs(np.trace(p) - n)),
    }


def spectrum_error(p: np.ndarray, n: int) -> float:
    """Distance of the sorted eigenvalues from n zeros followed by n ones."""
    ev = np.linalg.eigvalsh(p)
    target = np.repeat([0.0, 1.0], n)
    return float(np.max(np.abs(ev - target)))


@dataclass
class NumericSummary:
    n: int
    seed: int
    samples: int
    minNorm: float
    maxNorm: float
    maxEquivarianceError: float
    maxIdempotencyError: float
    maxSymmetryError: float
    maxTraceError: float
    maxEmbedEquivarianceError: float
    passed: bool

    def to_dict(self) -> dict:
        return asdict(self)


def verify_numeric(n: int, samples: int, seed: int = 0, copies: int = 2) -> NumericSummary:
    """Sample projections and measure how far the map identities are from exact.

    Sample i uses the generator seeded with (seed, i), so runs are reproducible.
    The block embedding is checked with `copies` summands.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    norms = np.empty(samples)
    equiv = idem = sym = tr = embed = 0.0
    eye_big = np.eye(2 * n * copies)
    for i in range(samples):
        p = random_projection(n, (seed, i))
        errs = projection_errors(p, n)
        q = complement(p)
        errs_q = projection_errors(q, n)
        idem = max(idem, errs["idempotency"], errs_q["idempotency"])
        sym = max(sym, errs["symmetry"], errs_q["symmetry"])
        tr = max(tr, errs["trace"], errs_q["trace"])
        f = sphere_map(p)
        norms[i] = np.linalg.norm(f)
        equiv = max(equiv, float(np.max(np.abs(sphere_map(q) + f))))
        big = block_embed(p, copies)
        embed = max(embed, float(np.max(np.abs(block_embed(q, copies) - (eye_big - big)))))
    norm_err = float(np.max(np.abs(norms - 0.5)))
    passed = (norm_err <= IDENTITY_TOL and equiv <= EQUIVARIANCE_TOL and idem <= IDENTITY_TOL
              and sym <= IDENTITY_TOL and tr <= IDENTITY_TOL and embed <= EQUIVARIANCE_TOL)
    return NumericSummary(n, seed, samples, float(norms.min()), float(norms.max()), equiv,
                          idem, sym, tr, embed, passed)
