import random
from itertools import permutations, product

import pytest

from kcat.errors import InvalidOrder, NoIdentity, NoInverse, NotAssociative
from kcat.groups import (
    cyclic_group,
    direct_product,
    group_from_table,
    klein_four,
    parse_group_flag,
    symmetric_group,
)
from kcat.errors import GroupAxiomError
from oracles import is_group_table


def accepts(table) -> bool:
    try:
        group_from_table(table)
    except GroupAxiomError:
        return False
    return True


def test_trivial_group():
    G = cyclic_group(1)
    assert G.order == 1 and G.table == ((0,),) and G.names == ("1",)


def test_cyclic_two():
    assert [list(r) for r in cyclic_group(2).table] == [[0, 1], [1, 0]]


def test_cyclic_three_inverse():
    G = cyclic_group(3)
    assert G.inv(1) == 2
    assert G.names == ("1", "t", "t^2")


def test_order_zero():
    with pytest.raises(InvalidOrder):
        cyclic_group(0)


def test_klein_self_inverse():
    V = klein_four()
    assert V.order == 4
    assert all(V.inv(a) == a for a in V.elements)


def test_no_inverse_witness():
    with pytest.raises(NoInverse) as e:
        group_from_table([[0, 1], [1, 1]])
    assert e.value.witness == (1,)


def test_no_identity():
    with pytest.raises(NoIdentity):
        group_from_table([[1, 0], [0, 0]])


def test_not_associative_witness():
    # a Latin square with identity 0 that is not a group
    table = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    assert not is_group_table(table)
    with pytest.raises(NotAssociative) as e:
        group_from_table(table)
    a, b, c = e.value.witness
    assert table[table[a][b]][c] != table[a][table[b][c]]


def test_direct_product_is_klein():
    P = direct_product(cyclic_group(2), cyclic_group(2))
    assert P.table == klein_four().table


def test_symmetric_group():
    S3 = symmetric_group(3)
    assert S3.order == 6 and S3.name(S3.identity) == "1"
    assert any(S3.mul(a, b) != S3.mul(b, a) for a in S3.elements for b in S3.elements)
    assert is_group_table(S3.table)


def test_flags():
    assert parse_group_flag("cyclic:4").order == 4
    assert parse_group_flag("sym:3").order == 6
    assert parse_group_flag("klein").order == 4
    with pytest.raises(ValueError):
        parse_group_flag("dihedral:4")


@pytest.mark.parametrize("n", [1, 2, 3])
def test_validation_is_total_exhaustive(n):
    for flat in product(range(n), repeat=n * n):
        table = [list(flat[i * n:(i + 1) * n]) for i in range(n)]
        assert accepts(table) == is_group_table(table), table


def _relabel(table, perm):
    n = len(table)
    inv = {p: i for i, p in enumerate(perm)}
    return [[perm[table[inv[a]][inv[b]]] for b in range(n)] for a in range(n)]


def test_validation_is_total_sampled_up_to_8():
    rng = random.Random(8)
    groups = [cyclic_group(n) for n in range(1, 9)] + [klein_four(), symmetric_group(3),
                                                      direct_product(cyclic_group(2), klein_four())]
    checked = {True: 0, False: 0}
    for G in groups:
        n = G.order
        for _ in range(40):
            perm = list(range(n))
            rng.shuffle(perm)
            t = _relabel([list(r) for r in G.table], perm)
            if rng.random() < 0.6 and n > 1:
                i, j = rng.randrange(n), rng.randrange(n)
                t[i][j] = rng.randrange(n)
            got, want = accepts(t), is_group_table(t)
            assert got == want
            checked[want] += 1
    for n in range(2, 9):
        for _ in range(30):
            t = [[rng.randrange(n) for _ in range(n)] for _ in range(n)]
            assert accepts(t) == is_group_table(t)
    assert checked[True] > 50 and checked[False] > 50


def test_every_small_group_table_satisfies_axioms():
    for G in [cyclic_group(n) for n in range(1, 9)] + [klein_four(), symmetric_group(3)]:
        for a, b in product(G.elements, repeat=2):
            assert G.mul(G.inv(a), a) == G.identity
        assert is_group_table(G.table)
        assert sorted(permutations(range(G.order), 1))
