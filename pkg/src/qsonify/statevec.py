"""Small dense state-vector toolkit.

Everything here works on plain numpy arrays: a state is a 1-d complex
array, an operator a square complex matrix, a distribution a 1-d float
array indexed by outcome value.  The spaces involved are tiny (28 and 8
dimensions) so nothing is sparse.
"""

import numpy as np

NORM_TOL = 1e-9
CLAMP_TOL = 1e-14

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)

GENERATOR_ID = "numpy.random.PCG64"


class SeededSampler:
    """Deterministic outcome sampler.

    Wraps a numpy ``Generator`` on the PCG64 bit generator.  One sampler is
    owned by one simulation; identical seeds and call sequences give
    identical draws.
    """

    generator_id = GENERATOR_ID

    def __init__(self, seed):
        seed = int(seed)
        if not 0 <= seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = seed
        self.rng = np.random.Generator(np.random.PCG64(seed))

    def __repr__(self):
        return f"SeededSampler(seed={self.seed})"


def kron(a, b):
    """Kronecker product with ``a`` as the slow (outer) index."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != b.ndim:
        raise ValueError("kron operands must both be vectors or both be matrices")
    return np.kron(a, b)


def is_unitary(u, tol=1e-12):
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return bool(np.allclose(u.conj().T @ u, np.eye(u.shape[0]), rtol=0, atol=tol))


def apply(u, psi):
    u = np.asarray(u)
    psi = np.asarray(psi)
    if u.shape != (psi.shape[0], psi.shape[0]):
        raise ValueError(f"operator of shape {u.shape} cannot act on a state of dimension {psi.shape[0]}")
    return u @ psi


def basis_state(index, dim):
    psi = np.zeros(dim, dtype=complex)
    psi[index] = 1.0
    return psi


def norm(psi):
    return float(np.linalg.norm(psi))


def _clamp(p):
    # Roundoff may leave values a hair below zero; anything larger is a bug.
    if np.any(p < -CLAMP_TOL):
        raise ArithmeticError(f"negative probability {p.min():.3e} beyond roundoff")
    if np.any(p < 0):
        p = np.where(p < 0, 0.0, p)
        p = p / p.sum()
    return p


def born_probabilities(psi):
    """Squared amplitude magnitudes of a normalized state."""
    psi = np.asarray(psi)
    n = norm(psi)
    if abs(n - 1.0) > NORM_TOL:
        raise ValueError(f"state is not normalized (norm {n!r})")
    return _clamp(np.abs(psi) ** 2)


def marginal_sites(psi, n_sites):
    """Site distribution of a coin-by-site state, summed over the coin.

    The flat layout is ``coin * n_sites + site``, so the heads block is
    ``psi[:n_sites]`` and the tails block ``psi[n_sites:]``.
    """
    psi = np.asarray(psi)
    if psi.shape[0] % 2 or psi.shape[0] != 2 * n_sites:
        raise ValueError(f"state of dimension {psi.shape[0]} is not a coin x {n_sites}-site state")
    n = norm(psi)
    if abs(n - 1.0) > NORM_TOL:
        raise ValueError(f"state is not normalized (norm {n!r})")
    return _clamp(np.abs(psi[:n_sites]) ** 2 + np.abs(psi[n_sites:]) ** 2)


def sample(dist, sampler, shots):
    """Draw ``shots`` independent outcome indices from ``dist``."""
    dist = np.asarray(dist, dtype=float)
    if dist.size == 0:
        raise ValueError("cannot sample from an empty distribution")
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    return sampler.rng.choice(dist.size, size=shots, p=dist).tolist()
