"""Word algebra, exact slopes, and cutting-sequence coding."""

import math
import random
from fractions import Fraction

import pytest

from ctlab.words import (
    BoundaryWord,
    FreeAutomorphism,
    GridIncidenceError,
    Quad,
    christoffel_word,
    circle_interval,
    circle_point,
    concat,
    continued_fraction,
    cutting_sequence,
    enumerate_reduced_words,
    inverse_word,
    is_admissible_intercept,
    is_reduced,
    reduce_word,
)

GOLDEN = Quad(-1, 1, 5, 2)  # (sqrt(5) - 1) / 2


# -- independent oracles -----------------------------------------------------


def reduce_oracle(w):
    # repeated single-pass cancellation until fixed point
    prev = None
    w = list(w)
    while w != prev:
        prev = list(w)
        out = []
        i = 0
        while i < len(w):
            if i + 1 < len(w) and w[i + 1] == inverse_word(w[i]):
                i += 2
            else:
                out.append(w[i])
                i += 1
        w = out
    return "".join(w)


def cutting_oracle(slope_f, intercept_f, depth, direction):
    # float crossing-time simulation, independent of the exact-arithmetic path
    x0, y0 = 0.5, intercept_f + slope_f * 0.5
    events = []
    for k in range(1, depth + 2):
        x = x0 + direction * (k if direction > 0 else k - 1 + 1)  # placeholder, replaced below
    events = []
    # vertical crossings
    for j in range(depth + 2):
        if direction > 0:
            t = j + 0.5
        else:
            t = j + 0.5
        events.append((t, "a" if direction > 0 else "A"))
    # horizontal crossings
    sy = slope_f * direction
    if sy != 0.0:
        letter = "b" if sy > 0 else "B"
        m = math.floor(y0) + 1 if sy > 0 else math.floor(y0)
        for _ in range(depth + 2):
            t = (m - y0) / sy
            events.append((t, letter))
            m += 1 if sy > 0 else -1
    events.sort()
    return "".join(x for _, x in events[:depth])


# -- reduction --------------------------------------------------------------


def test_reduce_examples():
    assert reduce_word("abB") == "a"
    assert reduce_word("") == ""
    assert reduce_word("aAbBab") == "ab"
    assert reduce_word("aAbBab") == reduce_oracle("aAbBab")


def test_reduce_idempotent_and_nonincreasing():
    rng = random.Random(7)
    for _ in range(300):
        w = "".join(rng.choice("abAB") for _ in range(rng.randrange(0, 40)))
        r = reduce_word(w)
        assert r == reduce_oracle(w)
        assert reduce_word(r) == r
        assert len(r) <= len(w)
        assert is_reduced(r)


def test_concat_and_inverse():
    assert concat("ab", "Ba") == "aa"
    rng = random.Random(3)
    for _ in range(100):
        w = reduce_word("".join(rng.choice("abAB") for _ in range(15)))
        assert concat(w, inverse_word(w)) == ""


# -- exact quadratic numbers --------------------------------------------------


def test_quad_field_axioms_fuzz():
    rng = random.Random(11)
    for _ in range(200):
        x = Quad(rng.randrange(-9, 10), rng.randrange(-9, 10), 5, rng.randrange(1, 9))
        y = Quad(rng.randrange(-9, 10), rng.randrange(-9, 10), 5, rng.randrange(1, 9))
        assert abs(float(x + y) - (float(x) + float(y))) < 1e-9
        assert abs(float(x * y) - float(x) * float(y)) < 1e-9
        if y.sign() != 0:
            assert abs(float(x / y) - float(x) / float(y)) < 1e-9
            assert (x / y) * y == x


def test_quad_order_and_floor():
    assert Quad.sqrt(2) > 1
    assert Quad.sqrt(2) < Fraction(3, 2)
    assert GOLDEN.floor() == 0
    assert (GOLDEN + 10).floor() == 10
    assert (-GOLDEN).floor() == -1
    assert Quad(4, 1, 4, 2) == 3  # sqrt(4) folds into the rational part


def test_continued_fractions():
    assert continued_fraction(Quad(1, 1, 5, 2), 7) == [1] * 7
    assert continued_fraction(Quad.sqrt(2), 7) == [1, 2, 2, 2, 2, 2, 2]
    assert continued_fraction(Fraction(7, 3), 9) == [2, 3]
    assert continued_fraction(GOLDEN, 5) == [0, 1, 1, 1, 1]
    with pytest.raises(ValueError):
        continued_fraction(GOLDEN, 0)


def test_continued_fraction_matches_float_expansion():
    rng = random.Random(5)
    for _ in range(40):
        d = rng.choice([2, 3, 5, 7, 13])
        x = Quad(rng.randrange(1, 20), 1, d, rng.randrange(1, 7))
        exact = continued_fraction(x, 8)
        v = float(x)
        approx = []
        for _ in range(8):
            a = math.floor(v)
            approx.append(a)
            v = 1.0 / (v - a)
        assert exact == approx


# -- cutting sequences --------------------------------------------------------


def test_cutting_slope_one():
    assert cutting_sequence(1, Fraction(-1, 3), 4, +1) == "abab"
    assert cutting_sequence(1, Fraction(1, 3), 4, -1) == "ABAB"


def test_cutting_matches_float_oracle():
    rng = random.Random(19)
    for _ in range(40):
        c = Fraction(rng.randrange(1, 96), 97)
        for direction in (+1, -1):
            got = cutting_sequence(GOLDEN, c, 25, direction)
            assert got == cutting_oracle(float(GOLDEN), float(c), 25, direction)


def test_cutting_reduced_and_balanced():
    # Sturmian balance: counts of 'a' in equal-length factors differ by <= 1
    w = cutting_sequence(GOLDEN, Fraction(2, 7), 60, +1)
    assert is_reduced(w)
    assert set(w) <= {"a", "b"}
    for size in (3, 5, 8, 13):
        counts = {w[i : i + size].count("a") for i in range(len(w) - size + 1)}
        assert max(counts) - min(counts) <= 1


def test_cutting_prefix_stable():
    c = Fraction(1, 3)
    w20 = cutting_sequence(GOLDEN, c, 20, +1)
    w30 = cutting_sequence(GOLDEN, c, 30, +1)
    assert w30.startswith(w20)
    b20 = cutting_sequence(GOLDEN, c, 20, -1)
    b30 = cutting_sequence(GOLDEN, c, 30, -1)
    assert b30.startswith(b20)


def test_cutting_negative_slope_letters():
    w = cutting_sequence(-GOLDEN, Fraction(1, 3), 20, +1)
    assert set(w) <= {"a", "B"}
    w = cutting_sequence(-GOLDEN, Fraction(1, 3), 20, -1)
    assert set(w) <= {"A", "b"}


def test_grid_incidence_detected():
    with pytest.raises(GridIncidenceError):
        cutting_sequence(1, 0, 5, +1)  # y = x runs through the lattice
    with pytest.raises(GridIncidenceError):
        cutting_sequence(Fraction(1, 2), Fraction(1, 2), 8, +1)  # hits (1, 1)
    with pytest.raises(GridIncidenceError):
        cutting_sequence(Fraction(1, 2), Fraction(3, 4), 8, +1)  # start on a wall


def test_admissible_intercepts():
    assert is_admissible_intercept(GOLDEN, Fraction(1, 3))
    assert not is_admissible_intercept(GOLDEN, 2)
    assert not is_admissible_intercept(Fraction(2, 3), Fraction(1, 3))  # 3 | 3
    assert is_admissible_intercept(Fraction(2, 3), Fraction(1, 5))


# -- Christoffel words --------------------------------------------------------


def christoffel_oracle(p, q):
    # lattice path from (0,0) to (q,p) staying weakly below the segment
    word = []
    x = y = 0
    while (x, y) != (q, p):
        # step right if the next vertical move would overshoot the line
        if q * (y + 1) > p * (x + 1) or (q * (y + 1) == p * (x + 1) and (x + 1, y + 1) != (q, p)):
            word.append("a")
            x += 1
        else:
            word.append("b")
            y += 1
    return "".join(word)


@pytest.mark.parametrize("p,q", [(0, 1), (1, 1), (2, 3), (3, 5), (5, 8), (1, 4)])
def test_christoffel(p, q):
    w = christoffel_word(p, q)
    assert len(w) == p + q
    assert w.count("a") == q and w.count("b") == p
    # rotation class matches the lattice-path oracle
    doubled = w + w
    assert christoffel_oracle(p, q) in doubled


def test_christoffel_lowest_terms():
    with pytest.raises(ValueError):
        christoffel_word(2, 4)


# -- boundary words -----------------------------------------------------------


def test_periodic_boundary_word():
    w = BoundaryWord.periodic("", "ab")
    assert w.prefix(9) == "ababababa"
    assert w.prefix(4) == "abab"  # nested prefixes
    u = BoundaryWord.periodic("aB", "a")
    assert u.prefix(6) == "aBaaaa"


def test_periodic_collapse_rejected():
    with pytest.raises(ValueError):
        BoundaryWord.periodic("", "aA")
    w = BoundaryWord.periodic("a", "Ab")  # junction cancellation: a·AbAb... = bAbA...
    assert w.prefix(5) == "bAbAb"


def test_translate_boundary_word():
    xi = BoundaryWord.periodic("", "b")
    assert BoundaryWord.translate("aB", xi).prefix(8) == "abbbbbbb"
    assert BoundaryWord.translate("B", xi).prefix(5) == "bbbbb"  # full cancellation shift


def test_cutting_boundary_word_lazy():
    xi = BoundaryWord.cutting(GOLDEN, Fraction(1, 3), +1)
    assert xi.prefix(12) == cutting_sequence(GOLDEN, Fraction(1, 3), 12, +1)
    assert xi.prefix(40) == cutting_sequence(GOLDEN, Fraction(1, 3), 40, +1)


def test_finite_boundary_word_exhausts():
    xi = BoundaryWord.from_word("abab")
    assert xi.prefix(4) == "abab"
    with pytest.raises(ValueError):
        xi.prefix(5)


# -- circular order -----------------------------------------------------------


def planar_order_oracle(length):
    # recursively lay out the tree in the plane: children of a vertex appear
    # in the cyclic order a,b,A,B starting just past the return direction
    out = []

    def visit(prefix, arc_letters):
        for x in arc_letters:
            w = prefix + x
            if len(w) == length:
                out.append(w)
            else:
                start = "abAB".index(inverse_word(x))
                visit(w, ["abAB"[(start + 1 + j) % 4] for j in range(3)])

    visit("", list("abAB"))
    return out


def test_circle_intervals_are_ordered_and_disjoint():
    for length in (1, 2, 3):
        words = planar_order_oracle(length)
        intervals = [circle_interval(w) for w in words]
        for (lo1, hi1), (lo2, hi2) in zip(intervals, intervals[1:]):
            assert hi1 <= lo2 or (lo1, hi1) == (lo2, hi2)
        assert intervals == sorted(intervals)
        # exact cover of [0, 1)
        assert intervals[0][0] == 0
        assert intervals[-1][1] == 1


def test_circle_interval_nesting():
    lo1, hi1 = circle_interval("ab")
    lo2, hi2 = circle_interval("aba")
    assert lo1 <= lo2 < hi2 <= hi1
    assert lo1 <= circle_point("ab") < hi1


def test_circle_interval_rejects_unreduced():
    with pytest.raises(ValueError):
        circle_interval("aA")


# -- automorphisms ------------------------------------------------------------


def test_automorphism_basics():
    phi = FreeAutomorphism("aab", "ab")
    assert phi("a") == "aab"
    assert phi("A") == "BAA"
    assert phi("") == ""
    assert phi.abelianization() == ((2, 1), (1, 1))


def test_automorphism_is_homomorphism():
    phi = FreeAutomorphism("aab", "ab")
    rng = random.Random(23)
    for _ in range(60):
        u = reduce_word("".join(rng.choice("abAB") for _ in range(8)))
        v = reduce_word("".join(rng.choice("abAB") for _ in range(8)))
        assert phi(concat(u, v)) == concat(phi(u), phi(v))


def test_automorphism_compose_abelianization():
    phi = FreeAutomorphism("a", "ab")
    psi = FreeAutomorphism("ab", "b")
    comp = phi.compose(psi)
    ((a11, a12), (a21, a22)) = phi.abelianization()
    ((b11, b12), (b21, b22)) = psi.abelianization()
    expected = (
        (a11 * b11 + a12 * b21, a11 * b12 + a12 * b22),
        (a21 * b11 + a22 * b21, a21 * b12 + a22 * b22),
    )
    assert comp.abelianization() == expected


def test_enumerate_reduced_words():
    words = list(enumerate_reduced_words(2))
    assert words[0] == ""
    assert len(words) == 1 + 4 + 12
    assert all(is_reduced(w) for w in words)
