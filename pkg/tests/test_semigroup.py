import numpy as np
import pytest

from isw.constructors import brandt, chain, cyclic_group, symmetric_group_s3, symmetric_inverse_monoid, trivial
from isw.errors import (
    IdempotentsDoNotCommute,
    MalformedTable,
    NonUniqueInverse,
    NotAssociative,
    NotRegular,
    OrderTooLarge,
)
from isw.semigroup import (
    InverseSemigroup,
    classical_center,
    green_relations,
    identity_element,
    is_clifford,
    is_commutative,
    is_group,
    is_semilattice,
    subsemigroup_table,
)


def test_trivial_table():
    S = InverseSemigroup.from_cayley_table([[0]])
    assert S.order == 1 and S.idempotents == (0,)
    assert is_group(S)


def test_two_chain_is_inverse_with_self_inverses():
    S = InverseSemigroup.from_cayley_table([[0, 0], [0, 1]])
    assert S.inv.tolist() == [0, 1]
    assert len(S.idempotents) == 2


def test_brandt_round_trip():
    B = brandt(trivial(), 2)
    again = InverseSemigroup.from_cayley_table(B.table.tolist())
    assert again == B
    assert np.array_equal(again.inv, B.inv)


@pytest.mark.parametrize("table,err", [
    ([[0, 1]], MalformedTable),
    ([[0, 2], [1, 0]], MalformedTable),
    ([[-1]], MalformedTable),
    ([], MalformedTable),
    # left zero band: associative, regular, idempotents do not commute
    ([[0, 0], [1, 1]], IdempotentsDoNotCommute),
    # (0*1)*1 = 1*1 = 0 but 0*(1*1) = 0*0 = 1
    ([[1, 1], [1, 0]], NotAssociative),
])
def test_validation_errors(table, err):
    with pytest.raises(err) as info:
        InverseSemigroup.from_cayley_table(table)
    assert info.value.witness is not None or err is MalformedTable


def test_not_regular():
    # null semigroup {0, a} with every product 0: a has no inverse
    with pytest.raises(NotRegular) as info:
        InverseSemigroup.from_cayley_table([[0, 0], [0, 0]])
    assert info.value.witness is not None


def test_rectangular_band_fails_on_commuting_idempotents():
    # regular, but every element has four inverses; the commuting check comes first
    t = [[0, 1, 0, 1], [0, 1, 0, 1], [2, 3, 2, 3], [2, 3, 2, 3]]
    with pytest.raises(IdempotentsDoNotCommute) as info:
        InverseSemigroup.from_cayley_table(t)
    assert not isinstance(info.value, NonUniqueInverse)


def test_order_guard():
    with pytest.raises(OrderTooLarge):
        InverseSemigroup.from_cayley_table(chain(5).table, max_order=4)


def test_inverse_laws_on_is3():
    S = symmetric_inverse_monoid(3)
    t, inv = S.table, S.inv
    x = np.arange(S.order)
    assert np.array_equal(t[t[x, inv], x], x)
    assert np.array_equal(t[t[inv, x], inv], inv)
    assert np.array_equal(inv[inv], x)
    # (xy)⁻¹ = y⁻¹x⁻¹
    assert np.array_equal(inv[t], t[inv[None, :], inv[:, None]])


def test_tables_are_read_only():
    S = chain(2)
    with pytest.raises(ValueError):
        S.table[0, 0] = 1


def test_green_relations_group_and_semilattice():
    G = symmetric_group_s3()
    assert all(r.is_universal() for r in green_relations(G))
    C = chain(3)
    assert all(r.is_identity() for r in green_relations(C))


def test_green_h_on_is2():
    S = symmetric_inverse_monoid(2)
    _, _, H = green_relations(S)
    sizes = sorted(len(b) for b in H.blocks)
    assert sizes == [1, 1, 1, 1, 1, 2]
    unit = next(b for b in H.blocks if len(b) == 2)
    assert identity_element(S) in unit


def test_green_against_ideal_definition():
    # a L b iff S^1 a = S^1 b, computed directly from the table
    for S in (symmetric_inverse_monoid(2), brandt(cyclic_group(2), 2)):
        L, R, _ = green_relations(S)
        left = [frozenset(S.table[:, a].tolist()) | {a} for a in S.elements]
        right = [frozenset(S.table[a, :].tolist()) | {a} for a in S.elements]
        for a in S.elements:
            for b in S.elements:
                assert L.related(a, b) == (left[a] == left[b])
                assert R.related(a, b) == (right[a] == right[b])


def test_classical_center_and_flags():
    B2 = brandt(trivial(), 2)
    assert classical_center(B2) == {0}
    assert not is_clifford(B2) and not is_group(B2)
    assert len(B2.idempotents) == 3
    S3 = symmetric_group_s3()
    assert classical_center(S3) == {identity_element(S3)}
    Z4 = cyclic_group(4)
    assert classical_center(Z4) == set(Z4.elements)
    assert is_commutative(Z4) and is_clifford(Z4) and is_clifford(chain(3))
    assert is_semilattice(chain(3)) and not is_semilattice(Z4)
    IS2 = symmetric_inverse_monoid(2)
    assert not is_group(IS2) and len(IS2.idempotents) == 4


def test_subsemigroup_table():
    S = symmetric_inverse_monoid(2)
    sub, members = subsemigroup_table(S, S.idempotents)
    assert sub.order == 4 and is_semilattice(sub)
    for i, a in enumerate(members):
        for j, b in enumerate(members):
            assert members[sub.mul(i, j)] == S.mul(a, b)
