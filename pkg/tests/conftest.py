import itertools

import numpy as np
import pytest
from hypothesis import settings

from tavis3.model import LABELS, enumerate_sector

settings.register_profile("default", max_examples=50, deadline=None)
settings.load_profile("default")

PERMUTATIONS = list(itertools.permutations(range(3)))


def permute_label(label, perm):
    """Move the state of atom i to slot perm[i]."""
    out = [None] * 3
    for i, c in enumerate(label):
        out[perm[i]] = c
    return "".join(out)


def sector_permutation(M, perm):
    """Permutation matrix P on sector M with P|a, n> = |pi(a), n>."""
    sector = enumerate_sector(M)
    where = {(a.label, n): k for k, (a, n) in enumerate(sector.basis)}
    P = np.zeros((sector.dim, sector.dim))
    for k, (a, n) in enumerate(sector.basis):
        P[where[permute_label(a.label, perm), n], k] = 1.0
    return P


def kron_hamiltonian(cutoff):
    """H/(hbar gamma) on the full truncated product space, from ladder and Pauli matrices.

    Basis ordering: (atomic index 1..8 in LABELS order) x (n = 0..cutoff),
    flattened as k * (cutoff + 1) + n.
    """
    a = np.diag(np.sqrt(np.arange(1, cutoff + 1)), 1)
    raise_ = np.array([[0, 1], [0, 0]])  # |e><g| with e = 0, g = 1
    eye2 = np.eye(2)
    h = np.zeros((8 * (cutoff + 1),) * 2)
    for i in range(3):
        ops = [eye2, eye2, eye2]
        ops[i] = raise_
        sp = np.kron(np.kron(ops[0], ops[1]), ops[2])
        term = np.kron(sp, a)
        h += term + term.T
    # reorder the 2x2x2 product basis (e=0, g=1 per atom) into LABELS order
    product = ["".join(bits) for bits in itertools.product("eg", repeat=3)]
    order = [product.index(s) for s in LABELS]
    idx = np.array([o * (cutoff + 1) + n for o in order for n in range(cutoff + 1)])
    return h[np.ix_(idx, idx)]


@pytest.fixture(scope="session")
def kron_h20():
    return kron_hamiltonian(20)
