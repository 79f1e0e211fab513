"""Seeded random generation of elements, unitaries and vector states.

Every sampler is a pure function of its seed (or an explicit numpy
Generator), so experiment outputs are reproducible.
"""

import numpy as np

from .algebra import AlgebraShape, Element, PureState
from .errors import InfeasibleRank, ZeroElement

__all__ = [
    "haar_unitary",
    "ginibre",
    "standard_normal_complex",
    "sample_element",
    "random_pure_state",
    "random_rank_one_pair",
    "parse_rank_profile",
]


def _generator(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def standard_normal_complex(rng: np.random.Generator, size) -> np.ndarray:
    return rng.standard_normal(size) + 1j * rng.standard_normal(size)


def ginibre(n: int, rng) -> np.ndarray:
    """n x n matrix with iid standard complex Gaussian entries."""
    return standard_normal_complex(_generator(rng), (n, n))


def haar_unitary(n: int, rng) -> np.ndarray:
    """Haar-distributed unitary via QR of a Ginibre matrix with the phase of
    R's diagonal absorbed into Q (makes the factorization unique)."""
    g = ginibre(n, rng)
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def parse_rank_profile(profile) -> tuple[str, int]:
    """Normalize a rank profile to (kind, k).

    Accepted: "full", "deficient:K", "projection:K", ("deficient", K), ...
    """
    if isinstance(profile, str):
        if profile == "full":
            return "full", 0
        if ":" in profile:
            kind, _, num = profile.partition(":")
            if kind in ("deficient", "projection"):
                try:
                    return kind, int(num)
                except ValueError:
                    pass
        raise InfeasibleRank(f"unrecognized rank profile {profile!r}")
    kind, k = profile
    if kind == "full":
        return "full", 0
    if kind not in ("deficient", "projection"):
        raise InfeasibleRank(f"unrecognized rank profile kind {kind!r}")
    return kind, int(k)


def sample_element(shape, rank_profile, rng_seed) -> Element:
    """Draw a random element with a prescribed rank structure.

    full            iid complex Gaussian blocks (invertible almost surely)
    deficient:k     assembled rank exactly total_dim - k; the kernel sits in
                    a single (seeded-random feasible) block when k fits in
                    one, otherwise spreads over blocks lowest index first
    projection:k    random rank-k projection from leading columns of
                    blockwise Haar unitaries, rank split at random
    """
    shape = shape if isinstance(shape, AlgebraShape) else AlgebraShape(shape)
    rng = _generator(rng_seed)
    kind, k = parse_rank_profile(rank_profile)

    if kind == "full":
        return Element(shape, [ginibre(n, rng) for n in shape.blocks])

    if kind == "deficient":
        if k >= shape.total_dim:
            if k == shape.total_dim:
                raise ZeroElement("rank 0 would leave the zero element")
            raise InfeasibleRank(f"cannot remove {k} of {shape.total_dim} dimensions")
        if k < 1:
            raise InfeasibleRank("deficiency must be at least 1")
        kernel_dims = [0] * shape.m
        feasible = [i for i, n in enumerate(shape.blocks) if n >= k]
        if feasible:
            kernel_dims[int(rng.choice(feasible))] = k
        else:
            left = k
            for i, n in enumerate(shape.blocks):
                take = min(n, left)
                kernel_dims[i] = take
                left -= take
                if left == 0:
                    break
        blocks = []
        for n, kd in zip(shape.blocks, kernel_dims):
            r = n - kd
            if r == 0:
                blocks.append(np.zeros((n, n), dtype=complex))
                continue
            left_f = standard_normal_complex(rng, (n, r))
            right_f = standard_normal_complex(rng, (n, r))
            blocks.append(left_f @ right_f.conj().T)
        return Element(shape, blocks)

    # projection:k
    if not 1 <= k <= shape.total_dim:
        raise InfeasibleRank(f"projection rank {k} not in [1, {shape.total_dim}]")
    slots = np.concatenate([np.full(n, i) for i, n in enumerate(shape.blocks)])
    chosen = rng.choice(len(slots), size=k, replace=False)
    ranks = [int(np.sum(slots[chosen] == i)) for i in range(shape.m)]
    blocks = []
    for n, r in zip(shape.blocks, ranks):
        if r == 0:
            blocks.append(np.zeros((n, n), dtype=complex))
        else:
            u = haar_unitary(n, rng)[:, :r]
            blocks.append(u @ u.conj().T)
    return Element(shape, blocks)


def random_pure_state(shape, rng_seed) -> PureState:
    """Vector state with the block picked proportionally to its dimension and
    a Haar-uniform unit vector inside it."""
    shape = shape if isinstance(shape, AlgebraShape) else AlgebraShape(shape)
    rng = _generator(rng_seed)
    weights = np.array(shape.blocks, dtype=float)
    idx = int(rng.choice(shape.m, p=weights / weights.sum()))
    v = standard_normal_complex(rng, shape.blocks[idx])
    return PureState(shape, idx, v / np.linalg.norm(v))


def random_rank_one_pair(shape, rng_seed) -> Element:
    """Rank-one element u w* supported in a seeded-random block."""
    shape = shape if isinstance(shape, AlgebraShape) else AlgebraShape(shape)
    rng = _generator(rng_seed)
    idx = int(rng.integers(shape.m))
    n = shape.blocks[idx]
    u = standard_normal_complex(rng, n)
    w = standard_normal_complex(rng, n)
    blocks = [np.zeros((m, m), dtype=complex) for m in shape.blocks]
    blocks[idx] = np.outer(u / np.linalg.norm(u), (w / np.linalg.norm(w)).conj())
    return Element(shape, blocks)
