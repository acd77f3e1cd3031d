"""Categorical-distribution primitives and seeded randomness.

Everything downstream treats a 1-D float array summing to one as a
categorical distribution, and a multi-dimensional array whose axis 0 sums to
one for every fixed index of the remaining axes as a conditional table.
"""

import numpy as np

from .errors import InvalidDistribution, InvalidInput, ShapeError

EPS = 1e-16
TOL = 1e-9


def make_rng(seed):
    """Return a ``numpy.random.Generator`` seeded with ``seed``.

    ``seed`` may be an int, a ``SeedSequence`` or an existing generator
    (returned unchanged).
    """
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def normalize(v):
    v = np.asarray(v, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise InvalidDistribution(f"expected a non-empty vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)) or np.any(v < 0):
        raise InvalidDistribution(f"entries must be finite and non-negative: {v}")
    total = v.sum()
    if total <= 0:
        raise InvalidDistribution("cannot normalize a vector that sums to zero")
    return v / total


def normalize_columns(table):
    """Normalize a conditional table along axis 0."""
    table = np.asarray(table, dtype=float)
    sums = table.sum(axis=0, keepdims=True)
    if np.any(sums <= 0):
        raise InvalidDistribution("conditional table has a column summing to zero")
    return table / sums


def softmax(logits, temperature=1.0):
    logits = np.asarray(logits, dtype=float)
    if not np.all(np.isfinite(logits)):
        raise InvalidInput(f"softmax received non-finite logits: {logits}")
    if temperature <= 0:
        raise InvalidInput(f"temperature must be positive, got {temperature}")
    z = logits / temperature
    z = z - z.max()
    e = np.exp(z)
    return e / e.sum()


def log_stable(p):
    return np.log(np.asarray(p, dtype=float) + EPS)


def kl_divergence(p, q):
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise ShapeError(f"kl_divergence shape mismatch: {p.shape} vs {q.shape}")
    return float(np.sum(p * (log_stable(p) - log_stable(q))))


def entropy(p):
    p = np.asarray(p, dtype=float)
    return float(-np.sum(p * log_stable(p)))


def column_entropies(table):
    """Entropy of every column of a conditional table (reduces axis 0)."""
    table = np.asarray(table, dtype=float)
    return -np.sum(table * log_stable(table), axis=0)


def is_categorical(p, tol=TOL):
    p = np.asarray(p, dtype=float)
    return (
        p.ndim == 1
        and p.size >= 1
        and bool(np.all(np.isfinite(p)))
        and bool(np.all(p >= 0))
        and abs(p.sum() - 1.0) <= tol
    )


def sample(rng, p):
    """Draw one outcome index from categorical ``p``."""
    p = np.asarray(p, dtype=float)
    cdf = np.cumsum(p)
    u = rng.random() * cdf[-1]
    idx = int(np.searchsorted(cdf, u, side="right"))
    # guard against landing past the end through round-off or on a zero-mass tail
    idx = min(idx, p.size - 1)
    while p[idx] == 0 and idx > 0:
        idx -= 1
    return idx


def dirichlet_sample(rng, alphas):
    """Draw from a Dirichlet by normalizing independent Gamma variates."""
    alphas = np.asarray(alphas, dtype=float)
    if alphas.ndim != 1 or alphas.size == 0 or np.any(~(alphas > 0)):
        raise InvalidInput(f"Dirichlet concentrations must be positive: {alphas}")
    g = rng.gamma(alphas)
    # all-underflow is possible only for tiny alphas; fall back to a one-hot draw
    if g.sum() <= 0:
        g = np.zeros_like(alphas)
        g[sample(rng, alphas / alphas.sum())] = 1.0
    return g / g.sum()


def argmax_tiebreak(v, rng, rtol=1e-12):
    """Index of the maximum of ``v``; exact (to ``rtol``) ties broken uniformly by ``rng``."""
    v = np.asarray(v, dtype=float)
    if v.size == 0:
        raise InvalidInput("argmax of an empty vector")
    best = v.max()
    ties = np.flatnonzero(v >= best - rtol * max(1.0, abs(best)))
    if ties.size == 1:
        return int(ties[0])
    return int(ties[rng.integers(ties.size)])
