"""Rank-2 free-group word algebra and boundary coding.

Words over the alphabet ``a b A B`` (capitals are inverses) represent
elements of the free group F2 = <a, b>.  Infinite reduced words encode
points of the group boundary; a straight line of irrational slope crossing
the unit square grid produces a Sturmian cutting sequence that realises a
geodesic boundary point symbolically.

Slopes are carried exactly: rationals as `fractions.Fraction`, quadratic
irrationals as `Quad` values (p + q*sqrt(d))/r over the integers.  Every
grid-crossing comparison is decided in exact integer arithmetic so that
deep word prefixes are reproducible bit for bit.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence, Union

LETTERS = "abAB"

_INVERSE = {"a": "A", "A": "a", "b": "B", "B": "b"}


class GridIncidenceError(ValueError):
    """The cutting line meets a lattice point or two grid walls at once."""


def inverse_letter(x: str) -> str:
    return _INVERSE[x]


def inverse_word(w: str) -> str:
    return "".join(_INVERSE[x] for x in reversed(w))


def is_reduced(w: str) -> bool:
    return all(w[i + 1] != _INVERSE[w[i]] for i in range(len(w) - 1))


def reduce_word(letters: Iterable[str]) -> str:
    """Freely reduce a letter sequence (stack cancellation of xX pairs)."""
    out: list[str] = []
    for x in letters:
        if x not in _INVERSE:
            raise ValueError(f"not a generator letter: {x!r}")
        if out and out[-1] == _INVERSE[x]:
            out.pop()
        else:
            out.append(x)
    return "".join(out)


def concat(*words: str) -> str:
    return reduce_word(itertools.chain.from_iterable(words))


def word_length(w: str) -> int:
    return len(reduce_word(w))


def enumerate_reduced_words(max_length: int, include_identity: bool = True) -> Iterator[str]:
    """All reduced words of length <= max_length, shortest first, lexicographic."""
    if include_identity:
        yield ""
    frontier = [""]
    for _ in range(max_length):
        nxt = []
        for w in frontier:
            for x in LETTERS:
                if w and x == _INVERSE[w[-1]]:
                    continue
                nxt.append(w + x)
        for w in nxt:
            yield w
        frontier = nxt


def is_cyclically_reduced(w: str) -> bool:
    return bool(w) and is_reduced(w) and w[0] != _INVERSE[w[-1]]


# ---------------------------------------------------------------------------
# Exact quadratic arithmetic
# ---------------------------------------------------------------------------

Real = Union["Quad", Fraction, int]


class Quad:
    """Exact real of the form (p + q*sqrt(d)) / r with integers p, q, r.

    Normalised so that r > 0, gcd(p, q, r) == 1 and q == 0 implies d == 0.
    Perfect-square d is folded into the rational part, so the value is
    irrational exactly when q != 0.  Instances of a common d (or with one
    side rational) support exact field arithmetic and total order.
    """

    __slots__ = ("p", "q", "d", "r")

    def __init__(self, p: int, q: int = 0, d: int = 0, r: int = 1):
        if r == 0:
            raise ZeroDivisionError("denominator r == 0")
        if d < 0:
            raise ValueError("d must be nonnegative")
        if q != 0 and d > 0:
            s = math.isqrt(d)
            if s * s == d:
                p, q, d = p + q * s, 0, 0
        if q == 0:
            d = 0
        if d == 0:
            # q*sqrt(0) contributes nothing
            q = 0
        if r < 0:
            p, q, r = -p, -q, -r
        g = math.gcd(math.gcd(abs(p), abs(q)), r)
        if g > 1:
            p, q, r = p // g, q // g, r // g
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "r", r)

    def __setattr__(self, *a):  # immutable
        raise AttributeError("Quad is immutable")

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_fraction(cls, x: Union[Fraction, int]) -> "Quad":
        f = Fraction(x)
        return cls(f.numerator, 0, 0, f.denominator)

    @classmethod
    def sqrt(cls, d: int) -> "Quad":
        if d < 0:
            raise ValueError("negative radicand")
        return cls(0, 1, d, 1)

    def _coerce(self, other: Real) -> "Quad":
        if isinstance(other, Quad):
            if other.q != 0 and self.q != 0 and other.d != self.d:
                raise ValueError(f"incompatible radicands {self.d} and {other.d}")
            return other
        if isinstance(other, (int, Fraction)):
            return Quad.from_fraction(other)
        return NotImplemented  # type: ignore[return-value]

    def _common_d(self, other: "Quad") -> int:
        return self.d if self.q != 0 else other.d

    # -- predicates ----------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("irrational Quad")
        return Fraction(self.p, self.r)

    def sign(self) -> int:
        """Exact sign of the value."""
        p, q, d = self.p, self.q, self.d
        if q == 0:
            return (p > 0) - (p < 0)
        if p == 0:
            return (q > 0) - (q < 0)
        if p > 0 and q > 0:
            return 1
        if p < 0 and q < 0:
            return -1
        # mixed signs: compare p^2 with q^2 d
        if p * p > q * q * d:
            return (p > 0) - (p < 0)
        if p * p < q * q * d:
            return (q > 0) - (q < 0)
        return 0

    # -- arithmetic ----------------------------------------------------------

    def __neg__(self) -> "Quad":
        return Quad(-self.p, -self.q, self.d, self.r)

    def __add__(self, other: Real) -> "Quad":
        o = self._coerce(other)
        d = self._common_d(o)
        return Quad(self.p * o.r + o.p * self.r, self.q * o.r + o.q * self.r, d, self.r * o.r)

    __radd__ = __add__

    def __sub__(self, other: Real) -> "Quad":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Real) -> "Quad":
        return (-self) + other

    def __mul__(self, other: Real) -> "Quad":
        o = self._coerce(other)
        d = self._common_d(o)
        p = self.p * o.p + self.q * o.q * d
        q = self.p * o.q + self.q * o.p
        return Quad(p, q, d, self.r * o.r)

    __rmul__ = __mul__

    def inverse(self) -> "Quad":
        n = self.p * self.p - self.q * self.q * self.d
        if n == 0:
            raise ZeroDivisionError("division by zero Quad")
        return Quad(self.r * self.p, -self.r * self.q, self.d, n)

    def __truediv__(self, other: Real) -> "Quad":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other: Real) -> "Quad":
        return self._coerce(other) * self.inverse()

    # -- order and conversion --------------------------------------------------

    def _cmp(self, other: Real) -> int:
        return (self - other).sign()

    def __eq__(self, other) -> bool:
        try:
            return self._cmp(other) == 0
        except (ValueError, TypeError):
            return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational:
            return hash(self.as_fraction())
        return hash((self.p, self.q, self.d, self.r))

    def __lt__(self, other: Real) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: Real) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: Real) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: Real) -> bool:
        return self._cmp(other) >= 0

    def __float__(self) -> float:
        return (self.p + self.q * math.sqrt(self.d)) / self.r

    def __repr__(self) -> str:
        if self.is_rational:
            return f"Quad({self.p}/{self.r})"
        return f"Quad(({self.p}{self.q:+d}*sqrt({self.d}))/{self.r})"

    def floor(self) -> int:
        n = math.floor(float(self))
        while self._cmp(n) < 0:
            n -= 1
        while self._cmp(n + 1) >= 0:
            n += 1
        return n


def as_quad(x: Union[Real, float]) -> Quad:
    if isinstance(x, Quad):
        return x
    if isinstance(x, float):
        return Quad.from_fraction(Fraction(x).limit_denominator(10**12))
    return Quad.from_fraction(x)


# ---------------------------------------------------------------------------
# Cutting sequences
# ---------------------------------------------------------------------------


def _crossing_stream(slope: Quad, intercept: Fraction, direction: int) -> Iterator[str]:
    """Letters of the grid-crossing sequence of y = slope*x + intercept.

    The line is traced from the mid-cell start point (1/2, intercept +
    slope/2) with x-velocity ``direction``.  Crossing a vertical wall emits
    a/A (sign of the x-motion), crossing a horizontal wall emits b/B (sign
    of the y-motion).  Simultaneous crossings raise GridIncidenceError.
    """
    s = slope
    y0 = s / 2 + intercept
    if (y0 - y0.floor()).sign() == 0:
        raise GridIncidenceError("start point lies on a horizontal wall")
    m0 = y0.floor()
    s_sign = s.sign()
    up = (s_sign > 0) == (direction > 0)  # y increases along the traced ray
    v_letter = "a" if direction > 0 else "A"
    h_letter = ("b" if up else "B") if s_sign != 0 else None

    half = Fraction(1, 2)
    kv = 0  # verticals emitted so far
    kh = 0  # horizontals emitted so far
    while True:
        if s_sign == 0:
            yield v_letter
            kv += 1
            continue
        tv = Quad.from_fraction(kv + half)
        # level of the next horizontal crossing
        m = (m0 + 1 + kh) if up else (m0 - kh)
        if direction > 0:
            th = (Quad.from_fraction(m) - intercept) / s - half
        else:
            th = (Quad.from_fraction(-m) + intercept) / s + half
        c = (tv - th).sign()
        if c == 0:
            raise GridIncidenceError("line passes through a lattice point")
        if c < 0:
            yield v_letter
            kv += 1
        else:
            yield h_letter
            kh += 1


def cutting_sequence(
    slope: Union[Quad, Fraction, int],
    intercept: Union[Fraction, int],
    depth: int,
    direction: int = 1,
) -> str:
    """First ``depth`` letters of the cutting sequence of the slope line.

    ``direction`` +1 traces the line with increasing x (letters a/b or a/B
    depending on the slope's sign), -1 with decreasing x (inverse letters).
    The output is freely reduced by construction and prefix-stable in depth.
    """
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    stream = _crossing_stream(as_quad(slope), Fraction(intercept), direction)
    return "".join(itertools.islice(stream, depth))


def is_admissible_intercept(slope: Union[Quad, Fraction, int], intercept: Union[Fraction, int]) -> bool:
    """True when the slope line from this intercept avoids all lattice points
    (and the mid-cell start point avoids the horizontal walls)."""
    s = as_quad(slope)
    c = Fraction(intercept)
    if not s.is_rational:
        # c + s*k is irrational for k != 0; only k == 0 could hit the grid
        return c.denominator != 1
    sf = s.as_fraction()
    if (c + sf / 2).denominator == 1:
        return False
    # c + s*k integral for some integer k  <=>  den(c) divides den(s)
    return sf.denominator % c.denominator != 0


def christoffel_word(p: int, q: int) -> str:
    """Lower Christoffel word of slope p/q: q letters a and p letters b.

    Represents the conjugacy class of the simple closed curve of slope p/q.
    """
    if q < 0 or p < 0 or (p == 0 and q == 0):
        raise ValueError("need nonnegative p, q, not both zero")
    if math.gcd(p, q) != 1:
        raise ValueError("p/q must be in lowest terms")
    n = p + q
    out = []
    for i in range(1, n + 1):
        out.append("b" if (i * p) % n < p else "a")
    return "".join(out)


def continued_fraction(x: Union[Quad, Fraction, int], k: int) -> list[int]:
    """First k partial quotients of x, exact for rationals and quadratics.

    Rational input terminates early (Euclid's algorithm); quadratic input
    is eventually periodic and never terminates on its own.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    v = as_quad(x)
    out: list[int] = []
    for _ in range(k):
        a = v.floor()
        out.append(a)
        frac = v - a
        if frac.sign() == 0:
            break
        v = frac.inverse()
    return out


# ---------------------------------------------------------------------------
# Boundary words
# ---------------------------------------------------------------------------


class BoundaryWord:
    """A point of the boundary of F2: an infinite (or depth-capped) reduced word.

    Wraps a deterministic letter stream; ``prefix(n)`` materialises the first
    n letters, extending the stream lazily.  Prefixes are nested by
    construction.
    """

    def __init__(self, letters: Iterator[str], label: str = "", finite: bool = False):
        self._iter = letters
        self._cache: list[str] = []
        self.label = label
        self.finite = finite

    def prefix(self, n: int) -> str:
        if n < 0:
            raise ValueError("negative depth")
        while len(self._cache) < n:
            try:
                x = next(self._iter)
            except StopIteration:
                raise ValueError(
                    f"boundary word {self.label or '<anonymous>'} provides only "
                    f"{len(self._cache)} letters, {n} requested"
                ) from None
            if self._cache and x == _INVERSE[self._cache[-1]]:
                raise ValueError("letter stream is not reduced")
            self._cache.append(x)
        return "".join(self._cache[:n])

    def available(self) -> int:
        """Letters materialised so far (a lower bound for finite streams)."""
        return len(self._cache)

    def __repr__(self) -> str:
        head = "".join(self._cache[:12])
        return f"BoundaryWord({self.label or head + '...'})"

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_word(cls, w: str) -> "BoundaryWord":
        w = reduce_word(w)
        return cls(iter(w), label=w, finite=True)

    @classmethod
    def periodic(cls, head: str, cycle: str) -> "BoundaryWord":
        head = reduce_word(head)
        cycle = reduce_word(cycle)
        if not cycle:
            raise ValueError("empty cycle")

        def gen() -> Iterator[str]:
            w = head
            emitted = 0
            stalls = 0
            while True:
                w2 = reduce_word(w + cycle)
                if len(w2) <= len(w):
                    stalls += 1
                    if stalls > 2:
                        raise ValueError(f"{head!r}·{cycle!r}^∞ collapses to a finite word")
                else:
                    stalls = 0
                w = w2
                stable = max(0, len(w) - len(cycle))
                while emitted < stable:
                    yield w[emitted]
                    emitted += 1

        label = f"{head}({cycle})^inf" if head else f"({cycle})^inf"
        return cls(gen(), label=label)

    @classmethod
    def cutting(
        cls,
        slope: Union[Quad, Fraction, int],
        intercept: Union[Fraction, int],
        direction: int = 1,
    ) -> "BoundaryWord":
        stream = _crossing_stream(as_quad(slope), Fraction(intercept), direction)
        return cls(stream, label=f"cut(dir={direction:+d})")

    @classmethod
    def translate(cls, g: str, xi: "BoundaryWord") -> "BoundaryWord":
        """Left action of the group element g on the boundary point xi."""
        g = reduce_word(g)

        def gen() -> Iterator[str]:
            n = len(g) + 8
            emitted = 0
            while True:
                w = reduce_word(g + xi.prefix(n))
                while emitted < n - len(g):
                    yield w[emitted]
                    emitted += 1
                n += 8

        return cls(gen(), label=f"{g}·{xi.label}", finite=xi.finite)


# ---------------------------------------------------------------------------
# Circular order on the boundary
# ---------------------------------------------------------------------------


def circle_interval(prefix: str) -> tuple[Fraction, Fraction]:
    """Exact arc [lo, hi) of boundary points whose words start with ``prefix``.

    The circle carries the planar cyclic order of the tree: quarters in the
    order a, b, A, B around the identity, and after a letter x the three
    admissible continuations split the arc in thirds, ordered cyclically
    starting just past the return direction x^{-1}.
    """
    lo = Fraction(0)
    width = Fraction(1)
    prev = None
    for x in prefix:
        if x not in _INVERSE:
            raise ValueError(f"not a generator letter: {x!r}")
        if prev is None:
            width = Fraction(1, 4)
            lo = LETTERS.index(x) * width
        else:
            ret = _INVERSE[prev]
            if x == ret:
                raise ValueError("prefix is not reduced")
            start = LETTERS.index(ret)
            children = [LETTERS[(start + 1 + j) % 4] for j in range(3)]
            width /= 3
            lo += children.index(x) * width
        prev = x
    return lo, lo + width


def circle_point(prefix: str) -> Fraction:
    """Deterministic representative angle (interval midpoint) for a prefix."""
    lo, hi = circle_interval(prefix)
    return (lo + hi) / 2


# ---------------------------------------------------------------------------
# Free-group automorphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FreeAutomorphism:
    """Automorphism of F2 given by the images of the two generators."""

    image_a: str
    image_b: str

    def __post_init__(self):
        object.__setattr__(self, "image_a", reduce_word(self.image_a))
        object.__setattr__(self, "image_b", reduce_word(self.image_b))

    def __call__(self, w: str) -> str:
        table = {
            "a": self.image_a,
            "A": inverse_word(self.image_a),
            "b": self.image_b,
            "B": inverse_word(self.image_b),
        }
        return reduce_word(itertools.chain.from_iterable(table[x] for x in w))

    def compose(self, other: "FreeAutomorphism") -> "FreeAutomorphism":
        """self ∘ other."""
        return FreeAutomorphism(self(other.image_a), self(other.image_b))

    @staticmethod
    def identity() -> "FreeAutomorphism":
        return FreeAutomorphism("a", "b")

    def abelianization(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """Induced matrix on H1 = Z^2, columns = images of a, b."""

        def col(w: str) -> tuple[int, int]:
            ea = w.count("a") - w.count("A")
            eb = w.count("b") - w.count("B")
            return ea, eb

        ca, cb = col(self.image_a), col(self.image_b)
        return ((ca[0], cb[0]), (ca[1], cb[1]))
