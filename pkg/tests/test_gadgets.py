import itertools
import json
from fractions import Fraction

import numpy as np
import pytest

from csl.gadgets import (
    CONGESTION_PATHS,
    DegenerateValues,
    GadgetProduct,
    auction_gadget,
    congestion_gadget,
    congestion_table,
    designed_item,
    normal_form_gadget,
    one_factorization,
    product,
    top_two,
)


def test_prisoners_payoffs():
    g = normal_form_gadget(3, 1, 2)
    assert g.utility(("D", "D", "D")) == (1, 1, 0)
    assert g.utility(("C", "C", "D")) == (3, 3, 0)
    assert g.utility(("C", "D", "D")) == (0, 5, 0)
    assert g.players == [1, 2]
    assert g.default == ("D", "D", "D")


def test_gadget_rejects_self_pair():
    with pytest.raises(ValueError):
        normal_form_gadget(2, 1, 1)
    with pytest.raises(ValueError):
        congestion_gadget(3, 1, 4)


def test_singleton_product():
    g = normal_form_gadget(3, 2, 3)
    p = product([g])
    assert p.joint_size() == g.joint_size()
    for combo in itertools.product(("C", "D"), repeat=2):
        prof = ("D",) + combo
        assert p.utility(tuple((a,) for a in prof)) == g.utility(prof)


def test_product_sizes_and_default_utility():
    p = product([normal_form_gadget(3, 1, 2), normal_form_gadget(3, 1, 3)])
    assert [len(a) for a in p.actions] == [4, 2, 2]
    assert p.utility(p.default)[0] == 2


def test_disjoint_product_default():
    p = product([normal_form_gadget(4, 1, 2), normal_form_gadget(4, 3, 4)])
    assert p.utility(p.default) == (1, 1, 1, 1)


def test_congestion_costs():
    t = congestion_table()
    assert t["S-1-2-T", "S-1-2-T"] == (-4, -4)
    assert t["S-1-T", "S-2-T"] == (Fraction(-7, 2), Fraction(-7, 2))
    assert t["S-1-T", "S-1-2-T"][0] == Fraction(-9, 2)
    # joint move to split paths beats the default for a merged pair
    assert sum(t["S-1-T", "S-2-T"]) > sum(t["S-1-2-T", "S-1-2-T"])
    # the default is a pure equilibrium for separate players
    for p in CONGESTION_PATHS:
        assert t[p, "S-1-2-T"][0] <= t["S-1-2-T", "S-1-2-T"][0]


def test_congestion_gadget_payoffs_exact():
    g = congestion_gadget(3, 3, 1)
    u = g.utility(g.default)
    assert u == (-4, 0, -4)
    assert all(isinstance(x, (int, Fraction)) for x in u)


def test_gadget_product_validation():
    with pytest.raises(ValueError):
        GadgetProduct(4, "graphical", ((1, 2), (2, 3)))
    with pytest.raises(ValueError):
        GadgetProduct(4, "bogus", ((1, 2),))
    g = GadgetProduct(4, "congestion", ((1, 2), (3, 4)))
    assert g.k == 2
    assert g.expand().joint_size() == 3 ** 4


def test_to_json_roundtrip():
    d = json.loads(normal_form_gadget(3, 1, 2).to_json())
    assert d["players"] == [1, 2] and len(d["table"]) == 4


@pytest.mark.parametrize("n, count, size", [(2, 1, 1), (3, 3, 1), (4, 3, 2), (7, 7, 3), (8, 7, 4)])
def test_one_factorization_shape(n, count, size):
    sched = one_factorization(n)
    assert len(sched) == count
    assert all(len(m) == size for m in sched)
    edges = [e for m in sched for e in m]
    assert sorted(edges) == list(itertools.combinations(range(1, n + 1), 2))


def test_one_factorization_two():
    assert one_factorization(2).matchings == (((1, 2),),)
    with pytest.raises(ValueError):
        one_factorization(1)


def test_auction_reserves():
    v = (0.9, 0.5, 0.3)
    np.testing.assert_array_equal(auction_gadget(v, [2]).reserves, [0.9, 0.5, 0.9])
    np.testing.assert_array_equal(auction_gadget(v, []).reserves, [0.9, 0.9, 0.9])
    with pytest.raises(DegenerateValues):
        auction_gadget((0.7, 0.7, 0.1), [2])
    with pytest.raises(ValueError):
        auction_gadget(v, [1])


def test_auction_is_read_only():
    a = auction_gadget((0.9, 0.5, 0.3), [2])
    with pytest.raises(ValueError):
        a.reserves[0] = 0.0
    np.testing.assert_array_equal(a.bids, a.values)


def test_top_two_single_agent():
    assert top_two(np.array([0.4])) == (1, 0.4, 0.0)


def test_designed_item():
    np.testing.assert_array_equal(designed_item(3, 2), [0, 1, 0])
    np.testing.assert_array_equal(designed_item(1, 1), [1])
    with pytest.raises(ValueError):
        designed_item(3, 4)
