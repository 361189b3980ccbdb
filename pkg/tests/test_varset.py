from hypothesis import given
from hypothesis import strategies as st

from dgl.varset import ALL, EMPTY, Variable, VarSet

_vars = st.builds(Variable, st.sampled_from("xyzvw"), st.integers(0, 1))
_varsets = st.builds(
    VarSet, st.booleans(), st.frozensets(_vars, max_size=4))


def test_prime_base():
    x = Variable("x")
    assert x.prime == Variable("x", 1)
    assert x.prime.base == x
    assert str(x.prime) == "x'"


def test_constants():
    assert EMPTY.is_empty and not EMPTY.is_all
    assert ALL.is_all and not ALL.is_empty
    assert Variable("q", 1) in ALL
    assert Variable("q", 1) not in EMPTY


@given(_varsets, _varsets, _vars)
def test_union_membership(a, b, v):
    assert (v in (a | b)) == (v in a or v in b)


@given(_varsets, _varsets, _vars)
def test_intersection_membership(a, b, v):
    assert (v in (a & b)) == (v in a and v in b)


@given(_varsets, _vars)
def test_complement_membership(a, v):
    assert (v in ~a) == (v not in a)


@given(_varsets, _varsets, _vars)
def test_difference_membership(a, b, v):
    assert (v in (a - b)) == (v in a and v not in b)


@given(_varsets, _vars)
def test_add(a, v):
    assert v in a.add(v)
    if v in a:
        # identity on members keeps taboo threading allocation-free
        assert a.add(v) is a


@given(_varsets, _varsets)
def test_disjoint_agrees_with_intersection(a, b):
    meet = a & b
    if meet.cofinite:
        assert not a.disjoint(b)
    else:
        assert a.disjoint(b) == (not meet.members)


def test_str_forms():
    x, y = Variable("x"), Variable("y")
    assert str(VarSet.finite([x, x.prime])) == "{x,x'}"
    assert str(VarSet.finite([y, x])) == "{x,y}"
    assert str(ALL) == "all"
    assert str(VarSet.all_but([x])) == "all \\ {x}"
    assert str(EMPTY) == "{}"
