"""Discrete-time coined quantum walk on a ring of sites.

The walker lives in coin (x) site space.  Each step tosses the coin with a
Hadamard and then moves the walker one site right on heads, left on tails,
wrapping around the ring.  In quantum mode the walker's position is read
from the uncollapsed state every step; in classical mode the state is
collapsed onto the sampled site (coin reset to heads) after each read,
which reduces the dynamics to an ordinary nearest-neighbour random walk.
"""

from dataclasses import dataclass, field

import numpy as np

from .statevec import (
    HADAMARD,
    SeededSampler,
    apply,
    basis_state,
    kron,
    marginal_sites,
    sample,
)

HEADS = np.array([1, 0], dtype=complex)
TAILS = np.array([0, 1], dtype=complex)

MODES = ("quantum", "classical")


@dataclass(frozen=True)
class WalkConfig:
    steps: int
    mode: str = "quantum"
    n_sites: int = 14
    start: int = 7
    seed: int = 0

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.n_sites < 2:
            raise ValueError(f"n_sites must be >= 2, got {self.n_sites}")
        if not 0 <= self.start < self.n_sites:
            raise ValueError(f"start must be in [0, {self.n_sites - 1}], got {self.start}")
        if self.steps < 1:
            raise ValueError(f"steps must be >= 1, got {self.steps}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


@dataclass(frozen=True)
class WalkState:
    psi: np.ndarray
    step_count: int = 0


@dataclass(eq=False)
class WalkTrace:
    """Sampled positions plus the exact site distribution behind each sample.

    ``distributions[i]`` is the marginal the ``i``-th position was drawn
    from, so plots and checks never need to re-run the walk.
    """

    positions: list
    config: WalkConfig
    distributions: np.ndarray = field(default=None)

    def __eq__(self, other):
        if not isinstance(other, WalkTrace):
            return NotImplemented
        if self.positions != other.positions or self.config != other.config:
            return False
        if self.distributions is None or other.distributions is None:
            return self.distributions is other.distributions
        return np.array_equal(self.distributions, other.distributions)


def build_coin_op(n_sites):
    """Hadamard on the coin, identity on the sites."""
    return kron(HADAMARD, np.identity(n_sites, dtype=complex))


def shift_right(n_sites):
    """|j+1 mod n><j|"""
    return np.roll(np.identity(n_sites, dtype=complex), 1, axis=0)


def shift_left(n_sites):
    """|j-1 mod n><j|"""
    return np.roll(np.identity(n_sites, dtype=complex), -1, axis=0)


def build_move_op(n_sites):
    """Coin-conditioned shift: heads moves +1, tails moves -1 (mod n_sites)."""
    if n_sites < 2:
        raise ValueError(f"n_sites must be >= 2, got {n_sites}")
    return (kron(np.outer(HEADS, HEADS), shift_right(n_sites))
            + kron(np.outer(TAILS, TAILS), shift_left(n_sites)))


def init_state(config):
    """Coin heads, walker on ``config.start``."""
    if not 0 <= config.start < config.n_sites:
        raise ValueError(f"start must be in [0, {config.n_sites - 1}], got {config.start}")
    return WalkState(kron(HEADS, basis_state(config.start, config.n_sites)), 0)


def _step(state, config, sampler, coin_op, move_op):
    psi = apply(move_op, apply(coin_op, state.psi))
    probs = marginal_sites(psi, config.n_sites)
    pos = sample(probs, sampler, 1)[0]
    if config.mode == "classical":
        psi = kron(HEADS, basis_state(pos, config.n_sites))
    return pos, probs, WalkState(psi, state.step_count + 1)


def step(state, config, sampler):
    """Toss, move and read the walker's position once.

    Returns ``(position, next_state)``.  In quantum mode ``next_state`` is
    the uncollapsed post-move state; in classical mode it is the basis
    state at ``position`` with the coin back on heads.
    """
    pos, _, nxt = _step(state, config, sampler,
                        build_coin_op(config.n_sites), build_move_op(config.n_sites))
    return pos, nxt


def run_walk(config, record_distributions=True):
    sampler = SeededSampler(config.seed)
    coin_op = build_coin_op(config.n_sites)
    move_op = build_move_op(config.n_sites)
    state = init_state(config)
    positions = []
    dists = []
    for _ in range(config.steps):
        pos, probs, state = _step(state, config, sampler, coin_op, move_op)
        positions.append(int(pos))
        if record_distributions:
            dists.append(probs)
    return WalkTrace(positions, config, np.array(dists) if record_distributions else None)


def exact_marginals(n_steps, n_sites=14, start=7):
    """Uncollapsed site distributions after steps 1..n_steps (row i is step i+1)."""
    coin_op = build_coin_op(n_sites)
    move_op = build_move_op(n_sites)
    psi = kron(HEADS, basis_state(start, n_sites))
    out = []
    for _ in range(n_steps):
        psi = move_op @ (coin_op @ psi)
        out.append(marginal_sites(psi, n_sites))
    return np.array(out)


def position_std(dist):
    """Standard deviation of the site index under ``dist`` (no ring unwrapping)."""
    dist = np.asarray(dist)
    sites = np.arange(dist.size)
    mean = np.dot(dist, sites)
    return float(np.sqrt(np.dot(dist, (sites - mean) ** 2)))
