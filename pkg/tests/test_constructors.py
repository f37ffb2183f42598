from math import comb, factorial

import numpy as np
import pytest

from isw.constructors import (
    PartialBijection,
    all_partial_bijections,
    brandt,
    chain,
    close_partial_bijections,
    cyclic_group,
    dihedral_group_d4,
    direct_product,
    quaternion_group,
    relabel,
    strong_semilattice_of_groups,
    symmetric_group_s3,
    symmetric_inverse_monoid,
    trivial,
)
from isw.errors import DegreeTooLarge, EmptyGeneratorSet, LinksNotFunctorial, NotAGroup
from isw.semigroup import classical_center, is_clifford, is_commutative, is_group, is_semilattice


def _is_order(n):
    return sum(comb(n, k) ** 2 * factorial(k) for k in range(n + 1))


def test_partial_bijection_basics():
    f = PartialBijection.of(1, None, 0)
    g = PartialBijection.of(2, 0, None)
    assert (f * g).image == (0, None, 2)  # left to right: g(f(i))
    assert f.inverse().image == (2, 0, None)
    assert f.domain == {0, 2} and f.rank == 2
    with pytest.raises(ValueError):
        PartialBijection.of(0, 0)
    with pytest.raises(ValueError):
        PartialBijection.of(3)


def test_all_partial_bijections_counts():
    for n in range(4):
        assert len(all_partial_bijections(n)) == _is_order(n)


def test_closure_of_all_maps_on_two_points():
    S, emb = close_partial_bijections(all_partial_bijections(2))
    assert S.order == 7 == _is_order(2)
    for x in S.elements:
        for y in S.elements:
            assert emb[S.mul(x, y)] == emb[x] * emb[y]


def test_closure_small_cases():
    S, _ = close_partial_bijections([PartialBijection.of(1, 0)])
    assert S.order == 2 and is_group(S)
    S, _ = close_partial_bijections([PartialBijection.of(None, None)])
    assert S.order == 1
    with pytest.raises(EmptyGeneratorSet):
        close_partial_bijections([])


def test_closure_is_deterministic_under_generator_order():
    gens = [PartialBijection.of(1, 2, 0), PartialBijection.of(0, None, 2)]
    a, _ = close_partial_bijections(gens)
    b, _ = close_partial_bijections(gens[::-1])
    assert a == b


@pytest.mark.parametrize("n,order", [(1, 2), (2, 7), (3, 34)])
def test_symmetric_inverse_monoid_orders(n, order):
    assert symmetric_inverse_monoid(n).order == order == _is_order(n)


def test_symmetric_inverse_monoid_guard():
    with pytest.raises(DegreeTooLarge):
        symmetric_inverse_monoid(5)
    with pytest.raises(DegreeTooLarge):
        symmetric_inverse_monoid(0)


def test_groups():
    assert symmetric_group_s3().order == 6 and not is_commutative(symmetric_group_s3())
    for G in (dihedral_group_d4(), quaternion_group()):
        assert G.order == 8 and is_group(G) and len(classical_center(G)) == 2
    # D4 has five involutions, Q8 only one
    inv_count = lambda G: sum(1 for x in G.elements if G.mul(x, x) in G.idempotents
                              and x not in G.idempotents)
    assert inv_count(dihedral_group_d4()) == 5
    assert inv_count(quaternion_group()) == 1


def test_brandt():
    B = brandt(trivial(), 2)
    assert B.order == 5 and len(B.idempotents) == 3
    assert brandt(trivial(), 1).order == 2
    assert brandt(cyclic_group(2), 2).order == 9
    with pytest.raises(NotAGroup):
        brandt(chain(2), 2)


def test_strong_semilattice_examples():
    z2 = cyclic_group(2)
    S = strong_semilattice_of_groups(chain(2), [z2, z2], {(1, 0): [0, 1]})
    assert S.order == 4 and is_commutative(S) and is_clifford(S)
    T = strong_semilattice_of_groups(chain(2), [trivial(), symmetric_group_s3()], {})
    assert T.order == 7 and not is_commutative(T) and is_clifford(T)
    G = symmetric_group_s3()
    assert strong_semilattice_of_groups(trivial(), [G], {}) == G


def test_strong_semilattice_rejects_bad_links():
    z2 = cyclic_group(2)
    with pytest.raises(LinksNotFunctorial):
        strong_semilattice_of_groups(chain(2), [z2, z2], {(1, 0): [1, 0]})
    with pytest.raises(ValueError):
        strong_semilattice_of_groups(chain(2), [z2, z2], {})


def test_strong_semilattice_composes_links():
    z2 = cyclic_group(2)
    S = strong_semilattice_of_groups(chain(3), [z2, z2, z2], {(2, 1): [0, 1], (1, 0): [0, 1]})
    assert S.order == 6 and is_commutative(S)


def test_direct_products():
    S = symmetric_inverse_monoid(2)
    P = direct_product(trivial(), S)
    assert np.array_equal(P.table, S.table)
    C = direct_product(chain(2), chain(2))
    assert C.order == 4 and is_semilattice(C)
    B = direct_product(brandt(trivial(), 2), cyclic_group(2))
    assert B.order == 10 and len(B.idempotents) == 3


def test_relabel_is_isomorphic():
    S = brandt(trivial(), 2)
    perm = [4, 2, 0, 1, 3]
    T = relabel(S, perm)
    for x in S.elements:
        for y in S.elements:
            assert T.mul(perm[x], perm[y]) == perm[S.mul(x, y)]
