"""The twelve lattice directions and their coset bookkeeping.

Direction ``k`` (1..12) points at roughly ``15*(k-1)`` degrees. Each vector is
the shortest integer vector with that angle (within 5 degrees) whose parity
class is fixed by ``k``: odd ``k`` alternate between the ``(1,0)`` and ``(0,1)``
classes, even ``k`` sit in the ``(1,1)`` class. Odd components sharing a parity
class sample the same polyphase component of the image, just shifted, which
is what makes the transform redundant and the inverse merge possible.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

N_DIRECTIONS = 12

# coset representatives t_1, t_2, t_3 of the three odd polyphase components
COSET_REPRESENTATIVES = {1: (1, 0), 2: (0, 1), 3: (1, 1)}

_VECTORS = (
    (0, 0),
    (1, 0), (3, 1), (2, 1), (1, 1), (1, 2), (1, 3),
    (0, 1), (-1, 3), (-1, 2), (-1, 1), (-2, 1), (-3, 1),
)


@dataclass(frozen=True)
class DirectionSet:
    vectors: tuple[tuple[int, int], ...]
    cosets: dict[int, tuple[int, ...]]
    offsets: dict[int, tuple[int, int]]
    alphas: dict[int, Fraction]

    def __hash__(self) -> int:
        return hash(self.vectors)

    @property
    def indices(self) -> range:
        return range(1, len(self.vectors))

    def coset_of(self, k: int) -> int:
        for m, members in self.cosets.items():
            if k in members:
                return m
        raise KeyError(k)

    def alpha(self, k: int) -> float:
        return float(self.alphas[self.coset_of(k)])

    def angle(self, k: int) -> float:
        """Angle of ``s_k`` in degrees, in ``[0, 180)``."""
        sx, sy = self.vectors[k]
        return math.degrees(math.atan2(sy, sx)) % 180.0

    @staticmethod
    def nominal_angle(k: int) -> float:
        return 15.0 * (k - 1)


@lru_cache(maxsize=None)
def direction_vectors() -> DirectionSet:
    """Build the fixed 12-direction table.

    Returns
    -------
    DirectionSet
        ``vectors[k]`` is ``s_k`` as ``(x, y)`` for ``k = 0..12`` (``s_0`` is the
        origin). ``cosets`` maps 1, 2, 3 to the direction indices whose vectors
        are congruent to ``(1,0)``, ``(0,1)``, ``(1,1)`` mod 2; ``offsets[k]`` is
        ``v_k`` with ``s_k = t_m + 2 v_k``; ``alphas`` are the per-coset update
        weights 1/3, 1/3, 1/6 (one over the coset size, so each coset sum acts
        as an average).
    """
    cosets: dict[int, list[int]] = {1: [], 2: [], 3: []}
    offsets = {}
    parity_to_coset = {rep: m for m, rep in COSET_REPRESENTATIVES.items()}
    for k in range(1, N_DIRECTIONS + 1):
        sx, sy = _VECTORS[k]
        m = parity_to_coset[(sx % 2, sy % 2)]
        tx, ty = COSET_REPRESENTATIVES[m]
        cosets[m].append(k)
        offsets[k] = ((sx - tx) // 2, (sy - ty) // 2)
    return DirectionSet(
        vectors=_VECTORS,
        cosets={m: tuple(ks) for m, ks in cosets.items()},
        offsets=offsets,
        alphas={m: Fraction(1, len(ks)) for m, ks in cosets.items()},
    )
