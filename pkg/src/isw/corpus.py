"""The standard corpus of small inverse semigroups used by the acceptance suite."""
from __future__ import annotations

from functools import lru_cache

from .constructors import (
    brandt,
    chain,
    cyclic_group,
    dihedral_group_d4,
    direct_product,
    quaternion_group,
    strong_semilattice_of_groups,
    symmetric_group_s3,
    symmetric_inverse_monoid,
    trivial,
)


def clifford_z2_z2():
    """Z2 over Z2 on the 2-chain, identity link: commutative, KMM class 1."""
    z2 = cyclic_group(2)
    return strong_semilattice_of_groups(chain(2), [z2, z2], {(1, 0): [0, 1]},
                                        name="clifford_z2_z2")


def clifford_d4_z2():
    """D4 over Z2 on the 2-chain, linked by a surjection onto Z2: KMM class 2."""
    d4 = dihedral_group_d4()
    # rotations (the cyclic subgroup of order 4) go to 0, reflections to 1
    rotations = {d4.idempotents[0]}
    r = next(x for x in d4.elements if d4.labels[x] == "[1,2,3,0]")
    y = r
    while y not in rotations:
        rotations.add(y)
        y = d4.mul(y, r)
    link = [0 if x in rotations else 1 for x in d4.elements]
    return strong_semilattice_of_groups(chain(2), [cyclic_group(2), d4], {(1, 0): link},
                                        name="clifford_d4_z2")


def _named(S, name):
    S.name = name
    return S


BUILDERS = {
    "trivial": trivial,
    "chain2": lambda: chain(2),
    "chain3": lambda: chain(3),
    "chain4": lambda: chain(4),
    "Z2": lambda: cyclic_group(2),
    "Z4": lambda: cyclic_group(4),
    "S3": symmetric_group_s3,
    "D4": dihedral_group_d4,
    "Q8": quaternion_group,
    "B2": lambda: brandt(trivial(), 2, name="B2"),
    "B_Z2_2": lambda: brandt(cyclic_group(2), 2, name="B_Z2_2"),
    "IS1": lambda: symmetric_inverse_monoid(1),
    "IS2": lambda: symmetric_inverse_monoid(2),
    "IS3": lambda: symmetric_inverse_monoid(3),
    "clifford_z2_z2": clifford_z2_z2,
    "clifford_d4_z2": clifford_d4_z2,
    "B2xZ2": lambda: direct_product(brandt(trivial(), 2), cyclic_group(2), name="B2xZ2"),
    "S3xchain2": lambda: direct_product(symmetric_group_s3(), chain(2), name="S3xchain2"),
}


@lru_cache(maxsize=None)
def standard_corpus():
    """Name -> semigroup, in a fixed order."""
    return {name: _named(build(), name) for name, build in BUILDERS.items()}
