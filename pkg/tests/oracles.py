"""Independent reference computations for the simulators.

Nothing here calls into the package's operator builders: the walk oracle
propagates amplitudes in a dict keyed by (coin, site) following the
toss/shift rules directly, and the Grover oracle iterates the textbook
reflections built from outer products.
"""

import math

import numpy as np


def walk_marginals_by_expansion(n_steps, n_sites=14, start=7):
    """Site distributions after each step, by explicit term-by-term expansion."""
    r = 1 / math.sqrt(2)
    amps = {(0, start): 1.0}
    out = []
    for _ in range(n_steps):
        tossed = {}
        for (coin, site), a in amps.items():
            # heads -> (heads + tails)/sqrt2, tails -> (heads - tails)/sqrt2
            tossed[(0, site)] = tossed.get((0, site), 0.0) + r * a
            sign = 1.0 if coin == 0 else -1.0
            tossed[(1, site)] = tossed.get((1, site), 0.0) + sign * r * a
        moved = {}
        for (coin, site), a in tossed.items():
            nxt = (site + 1) % n_sites if coin == 0 else (site - 1) % n_sites
            moved[(coin, nxt)] = moved.get((coin, nxt), 0.0) + a
        amps = moved
        p = np.zeros(n_sites)
        for (_, site), a in amps.items():
            p[site] += abs(a) ** 2
        out.append(p)
    return np.array(out)


def grover_by_reflections(marked, iterations, n=8):
    """Final state of Grover search from the uniform state, as a length-n vector."""
    s = np.full(n, 1 / math.sqrt(n))
    m = np.zeros(n)
    m[marked] = 1.0
    oracle = np.identity(n) - 2 * np.outer(m, m)
    diffuser = 2 * np.outer(s, s) - np.identity(n)
    psi = s.copy()
    for _ in range(iterations):
        psi = diffuser @ (oracle @ psi)
    return psi


def classical_walk_std(steps):
    """Unbounded +-1 walk with fair steps: variance equals the step count."""
    return math.sqrt(steps)
