import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from starrep import FreeStarAlgebra, bar, leading, star_poly, star_word, word_compare
from starrep.scalars import QI, Scalar


@pytest.fixture
def xy():
    return FreeStarAlgebra(["x", "y"])


@pytest.fixture
def q21():
    # the tripotent-family order: q2 above q1
    return FreeStarAlgebra(["q1", "q2"], order=["q2*", "q1*", "q2", "q1"])


def W(alg, text):
    return alg.word_from_text(text)


def test_compare_length_dominates(xy):
    assert word_compare(W(xy, "y"), W(xy, "x x"), xy) < 0


def test_compare_lexicographic_tiebreak(xy):
    assert word_compare(W(xy, "x x"), W(xy, "x y"), xy) > 0


def test_compare_degree_five_heads(q21):
    u = W(q21, "q2 q1 q2 q1 q1")
    v = W(q21, "q1 q2 q1 q2 q1")
    assert word_compare(u, v, q21) > 0


def test_compare_equal_iff_identical(xy):
    w = W(xy, "x y x*")
    assert word_compare(w, tuple(w), xy) == 0


def test_star_word_anti_multiplicative(xy):
    assert star_word(W(xy, "x y")) == W(xy, "y* x*")


def test_star_word_involution(xy):
    assert star_word(star_word(W(xy, "x* y x"))) == W(xy, "x* y x")
    assert star_word(W(xy, "x*")) == W(xy, "x")


def test_star_word_alternating_family(xy):
    # (x (x*x)^k)* = x* (x x*)^k
    for k in range(4):
        u = W(xy, " ".join(["x"] + ["x*", "x"] * k))
        v = W(xy, " ".join(["x*"] + ["x", "x*"] * k))
        assert star_word(u) == v


def test_only_finitely_many_words_below(xy):
    # well-foundedness spot check: count words at most x y in the order
    target = W(xy, "x y")
    letters = list(xy.letters())
    below = [
        w
        for n in range(3)
        for w in _all_words(letters, n)
        if word_compare(w, target, xy) <= 0
    ]
    # unit, all four length-1 words, then (y,*) and (x,y) at length 2
    assert len(below) == 1 + 4 + 5


def _all_words(letters, n):
    if n == 0:
        return [()]
    out = [()]
    for _ in range(n):
        out = [w + (g,) for w in out for g in letters]
    return out


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_monomial_order_property(data):
    alg = FreeStarAlgebra(["x", "y"])
    letters = list(alg.letters())
    words = st.lists(st.sampled_from(letters), min_size=0, max_size=4).map(tuple)
    u, v, p, q = (data.draw(words) for _ in range(4))
    cu, cv = alg.word_key(u), alg.word_key(v)
    if cu < cv:
        assert alg.word_key(p + u + q) < alg.word_key(p + v + q)


# -- polynomial operations -----------------------------------------------------


def test_leading_simple(xy):
    f = xy.word_poly(W(xy, "x x")) - xy.word_poly(W(xy, "x"))
    w, c = leading(f)
    assert w == W(xy, "x x") and c == Scalar.one()


def test_leading_of_zero_raises(xy):
    with pytest.raises(ValueError):
        leading(xy.zero())
    with pytest.raises(ValueError):
        bar(xy.zero())


def test_star_poly_conjugate_linear(xy):
    f = xy.word_poly(W(xy, "x y"), Scalar.imag_unit())
    assert star_poly(f) == xy.word_poly(W(xy, "y* x*"), Scalar.imag_unit() * Scalar.from_rational(-1))


def test_bar_cubic(q21):
    f = (
        q21.word_poly(W(q21, "q1 q1 q1"))
        - q21.word_poly(W(q21, "q1"))
    )
    assert bar(f) == q21.word_poly(W(q21, "q1"))


def test_bar_non_monic():
    alg = FreeStarAlgebra(["x"])
    f = alg.word_poly(W(alg, "x x"), 2) - alg.word_poly(W(alg, "x"), 4)
    # bar(f) = head - lc^{-1} f = 2 x
    assert bar(f) == alg.word_poly(W(alg, "x"), 2)
    w, c = f.leading()
    assert f == (alg.word_poly(w) - bar(f)) * c


def test_star_antihomomorphism_random(xy):
    rng = random.Random(7)
    letters = list(xy.letters())
    for _ in range(40):
        f = _random_poly(xy, rng, letters)
        g = _random_poly(xy, rng, letters)
        assert star_poly(f * g) == star_poly(g) * star_poly(f)
        assert star_poly(star_poly(f)) == f


def _random_poly(alg, rng, letters):
    terms = {}
    for _ in range(rng.randint(1, 4)):
        w = tuple(rng.choice(letters) for _ in range(rng.randint(0, 3)))
        terms[w] = Scalar.from_qi(QI(rng.randint(-3, 3), rng.randint(-2, 2)))
    return alg.poly(terms)


def test_mul_distributes(xy):
    x = xy.gen_poly("x")
    y = xy.gen_poly("y")
    assert (x + y) * (x - y) == x * x - x * y + y * x - y * y


def test_substitute_parameter():
    alg = FreeStarAlgebra(["q"], parameter="a")
    f = alg.word_poly(W(alg, "q"), Scalar.parameter()) - alg.one()
    at2 = f.substitute_parameter(2)
    assert at2 == alg.word_poly(W(alg, "q"), 2) - alg.one()
    at0 = f.substitute_parameter(0)
    assert at0 == -alg.one()  # the q-term vanishes entirely


def test_algebra_name_validation():
    with pytest.raises(ValueError):
        FreeStarAlgebra(["i"])
    with pytest.raises(ValueError):
        FreeStarAlgebra(["x", "x"])
    with pytest.raises(ValueError):
        FreeStarAlgebra(["x"], order=["x"])  # must list the star too
    with pytest.raises(ValueError):
        FreeStarAlgebra(["x"], parameter="x")
