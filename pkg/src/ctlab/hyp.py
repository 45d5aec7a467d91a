"""Hyperbolic plane and Riemann-sphere geometry.

The hyperbolic plane is the upper half-plane {Im z > 0}; its ideal boundary
is R u {oo}.  The sphere at infinity of hyperbolic 3-space is the unit
2-sphere, reached from C u {oo} by stereographic lift, and carries the
chordal metric (Euclidean distance of unit vectors).  Working on the sphere
avoids the metric blow-up at oo when comparing boundary images.

Mobius maps are 2x2 complex matrices with determinant normalised to 1.
Composition keeps the arithmetic sign lift (so commutator traces are
well-defined); equality and hashing go through the canonical projective
representative with nonnegative real trace.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

INFINITY = math.inf

ExtendedComplex = Union[complex, float]  # complex value or the point INFINITY

DEFAULT_EPS = 1e-9
CLASSIFY_MARGIN = 1e-6


class IndeterminateMapError(ValueError):
    """Raised when a map is too close to +/- identity to classify."""


def is_infinity(z: ExtendedComplex) -> bool:
    return not isinstance(z, complex) and math.isinf(z)


@dataclass(frozen=True)
class PlanePoint:
    """A point of the open upper half-plane."""

    z: complex

    def __post_init__(self):
        object.__setattr__(self, "z", complex(self.z))
        if not self.z.imag > 0:
            raise ValueError(f"not in the upper half-plane: {self.z}")


@dataclass(frozen=True)
class SpherePoint:
    """A unit vector on S^2, the stereographic image of C u {oo}."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        n = math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)
        if abs(n - 1.0) > 1e-12:
            raise ValueError(f"not a unit vector (norm {n})")

    @classmethod
    def from_complex(cls, w: ExtendedComplex) -> "SpherePoint":
        if is_infinity(w):
            return cls(0.0, 0.0, 1.0)
        w = complex(w)
        n2 = w.real * w.real + w.imag * w.imag
        if math.isinf(n2) or math.isnan(n2):
            return cls(0.0, 0.0, 1.0)
        d = n2 + 1.0
        v = (2.0 * w.real / d, 2.0 * w.imag / d, (n2 - 1.0) / d)
        n = math.sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])
        return cls(v[0] / n, v[1] / n, v[2] / n)

    def to_complex(self) -> ExtendedComplex:
        if abs(self.z - 1.0) < 1e-15:
            return INFINITY
        return complex(self.x, self.y) / (1.0 - self.z)


def chordal(p: SpherePoint, q: SpherePoint) -> float:
    """Chordal distance: Euclidean distance between the unit vectors."""
    return math.sqrt((p.x - q.x) ** 2 + (p.y - q.y) ** 2 + (p.z - q.z) ** 2)


def chordal_complex(z: ExtendedComplex, w: ExtendedComplex) -> float:
    return chordal(SpherePoint.from_complex(z), SpherePoint.from_complex(w))


@dataclass(frozen=True)
class Geodesic2:
    """A hyperbolic-plane geodesic, recorded by its two ideal endpoints."""

    e1: float
    e2: float

    def __post_init__(self):
        if self.e1 == self.e2:
            raise ValueError("geodesic endpoints must be distinct")


@dataclass(frozen=True)
class MapClass:
    """Classification of a Mobius map with its fixed point(s) on C u {oo}.

    For loxodromic maps ``fixed`` is (attracting, repelling).
    """

    kind: str  # elliptic | parabolic | loxodromic
    fixed: tuple


class MobiusMap:
    """Projective 2x2 complex matrix acting on H^2 and on C u {oo}."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: complex, b: complex, c: complex, d: complex):
        a, b, c, d = complex(a), complex(b), complex(c), complex(d)
        det = a * d - b * c
        if abs(det) < 1e-30:
            raise ValueError("singular matrix")
        s = cmath.sqrt(det)
        object.__setattr__(self, "a", a / s)
        object.__setattr__(self, "b", b / s)
        object.__setattr__(self, "c", c / s)
        object.__setattr__(self, "d", d / s)

    def __setattr__(self, *a):
        raise AttributeError("MobiusMap is immutable")

    @staticmethod
    def identity() -> "MobiusMap":
        return MobiusMap(1, 0, 0, 1)

    @property
    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def trace(self) -> complex:
        """Trace of the stored SL2 lift (sign as produced by the arithmetic)."""
        return self.a + self.d

    def canonical(self) -> tuple:
        """Projectively normalised entries: Re(trace) >= 0, ties broken by the
        first nonzero entry's argument lying in [0, pi)."""
        t = self.trace()
        flip = False
        if t.real < 0:
            flip = True
        elif t.real == 0:
            for e in self.entries:
                if e != 0:
                    ang = cmath.phase(e)
                    flip = not (0 <= ang < math.pi)
                    break
        if flip:
            return (-self.a, -self.b, -self.c, -self.d)
        return self.entries

    def __matmul__(self, other: "MobiusMap") -> "MobiusMap":
        return MobiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MobiusMap):
            return NotImplemented
        return all(abs(x - y) < 1e-9 for x, y in zip(self.canonical(), other.canonical()))

    def __hash__(self) -> int:
        return hash(tuple(complex(round(e.real, 6), round(e.imag, 6)) for e in self.canonical()))

    def __repr__(self) -> str:
        return f"MobiusMap({self.a:.6g}, {self.b:.6g}, {self.c:.6g}, {self.d:.6g})"

    # -- actions ---------------------------------------------------------------

    def apply(self, z: ExtendedComplex) -> ExtendedComplex:
        """Fractional-linear action on C u {oo}, handled projectively."""
        if is_infinity(z):
            if self.c == 0:
                return INFINITY
            return self.a / self.c
        z = complex(z)
        num = self.a * z + self.b
        den = self.c * z + self.d
        if den == 0:
            return INFINITY
        w = num / den
        if math.isinf(abs(w)) or math.isnan(w.real) or math.isnan(w.imag):
            return INFINITY
        return w

    def apply_plane(self, p: PlanePoint) -> PlanePoint:
        w = self.apply(p.z)
        if is_infinity(w):
            raise ValueError("image left the upper half-plane")
        return PlanePoint(w)

    def apply_sphere(self, p: SpherePoint) -> SpherePoint:
        return SpherePoint.from_complex(self.apply(p.to_complex()))

    # -- classification ---------------------------------------------------------

    def is_near_identity(self, eps: float = DEFAULT_EPS) -> bool:
        i = MobiusMap.identity().entries
        dist_plus = max(abs(x - y) for x, y in zip(self.entries, i))
        dist_minus = max(abs(x + y) for x, y in zip(self.entries, i))
        return min(dist_plus, dist_minus) < eps

    def fixed_points(self) -> tuple:
        """Solutions of m(z) = z, one or two points of C u {oo}."""
        if abs(self.c) < 1e-14:
            if abs(self.a - self.d) < 1e-14:
                return (INFINITY,)
            return (INFINITY, self.b / (self.d - self.a))
        disc = cmath.sqrt((self.a - self.d) ** 2 + 4 * self.b * self.c)
        z1 = (self.a - self.d + disc) / (2 * self.c)
        z2 = (self.a - self.d - disc) / (2 * self.c)
        if abs(z1 - z2) < 1e-12:
            return (z1,)
        return (z1, z2)

    def classify(self, margin: float = CLASSIFY_MARGIN) -> MapClass:
        """Elliptic, parabolic, or loxodromic, with fixed points.

        Raises IndeterminateMapError for near-identity input.
        """
        if self.is_near_identity():
            raise IndeterminateMapError("map is within eps of +/- identity")
        t = self.trace()
        t2 = t * t
        if abs(t2 - 4) < margin:
            fps = self.fixed_points()
            return MapClass("parabolic", (fps[0],))
        if abs(t.imag) < margin and t2.real < 4:
            return MapClass("elliptic", self.fixed_points())
        # loxodromic: order fixed points as (attracting, repelling)
        disc = cmath.sqrt(t2 - 4)
        lam1 = (t + disc) / 2
        lam2 = (t - disc) / 2
        if abs(lam1) < abs(lam2):
            lam1, lam2 = lam2, lam1
        return MapClass("loxodromic", (self._fixed_for_eigenvalue(lam1), self._fixed_for_eigenvalue(lam2)))

    def _fixed_for_eigenvalue(self, lam: complex) -> ExtendedComplex:
        if abs(self.c) > 1e-14:
            return (lam - self.d) / self.c
        # triangular: fixed points are oo (eigenvalue a) and b/(d-a)
        if abs(lam - self.a) < abs(lam - self.d):
            return INFINITY
        return self.b / (self.d - self.a)


# ---------------------------------------------------------------------------
# Metric operations
# ---------------------------------------------------------------------------


def hyp_distance(z: PlanePoint, w: PlanePoint) -> float:
    """Hyperbolic distance in the upper half-plane."""
    dz = z.z - w.z
    arg = 1.0 + (dz.real * dz.real + dz.imag * dz.imag) / (2.0 * z.z.imag * w.z.imag)
    return math.acosh(max(arg, 1.0))


def nearest_point_projection(z: PlanePoint, g: Geodesic2) -> PlanePoint:
    """Closest point of the geodesic to z, in closed form.

    Conjugate the geodesic to the imaginary axis by an orientation-preserving
    real map sending its endpoints to 0 and oo; the projection of u onto the
    axis is i|u|; pull back.
    """
    if math.isinf(g.e1) or math.isinf(g.e2):
        e = g.e2 if math.isinf(g.e1) else g.e1
        return PlanePoint(complex(e, abs(z.z - e)))
    lo, hi = sorted((g.e1, g.e2))
    t = MobiusMap(1, -lo, -1, hi)  # det = hi - lo > 0 keeps the half-plane
    u = t.apply(z.z)
    if is_infinity(u):
        raise ValueError("projection undefined")
    w = t.inverse().apply(complex(0.0, abs(u)))
    return PlanePoint(w)
