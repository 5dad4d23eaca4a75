from hypothesis import given, strategies as st

from cubeslides.laurent import Laurent

terms = st.dictionaries(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), st.integers(-5, 5), max_size=6)


@given(terms, terms, terms)
def test_ring_laws(a, b, c):
    a, b, c = Laurent(2, a), Laurent(2, b), Laurent(2, c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert (a - a) == Laurent(2)


@given(terms, terms)
def test_evaluation_is_multiplicative(a, b):
    a, b = Laurent(2, a), Laurent(2, b)
    assert (a * b).evaluate_at_ones() == a.evaluate_at_ones() * b.evaluate_at_ones()


def test_negative_exponents_cancel():
    x = Laurent.variable(1, 0)
    xinv = Laurent.variable(1, 0, -1)
    assert x * xinv == Laurent.one(1)
    s = (x + xinv) * (x + xinv)
    assert s.coefficient((0,)) == 2 and s.coefficient((2,)) == 1 and s.coefficient((-2,)) == 1
    assert len(s) == 3
