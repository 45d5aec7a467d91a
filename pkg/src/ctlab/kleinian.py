"""Fiber representations of punctured-torus bundles and boundary-map samples.

A hyperbolic once-punctured-torus bundle is determined by a monodromy in
SL(2, Z) with |trace| > 2.  The fiber subgroup is free on a, b with
parabolic commutator; its trace coordinates (x, y, z) = (tr A, tr B, tr AB)
satisfy the Markov identity x^2 + y^2 + z^2 = xyz and are fixed by the
polynomial trace action the monodromy induces.  We solve that system
numerically, lift the solution to matrices in a pinned normal form
(commutator parabolic fixed at infinity with unit translation, attracting
fixed point of A at 0), and approximate the boundary extension of the orbit
map by pushing a sphere basepoint with word-prefix evaluations.

Discreteness is never certified here: it is inherited from the construction
and probed by residuals and Jorgensen-inequality spot checks only.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.optimize import root

from .hyp import INFINITY, ExtendedComplex, MobiusMap, SpherePoint, chordal, is_infinity
from .words import FreeAutomorphism, BoundaryWord, reduce_word

BASEPOINT = 1j  # pushed to the sphere for all boundary-image samples

MARKOV_TOL = 1e-9
CONJUGACY_TOL = 1e-6


class MonodromyError(ValueError):
    pass


class SolverError(RuntimeError):
    """Root finding failed; carries the best residual seen."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (best residual {residual:.3e})")
        self.residual = residual


class FuchsianBranchError(RuntimeError):
    """The candidate triple is real: a Fuchsian, not degenerate, group."""


class RepresentationError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# Monodromy
# ---------------------------------------------------------------------------

# elementary mapping classes and their induced automorphisms
_PHI_T = FreeAutomorphism("a", "ab")
_PHI_T_INV = FreeAutomorphism("a", "Ab")
_PHI_S = FreeAutomorphism("b", "A")
_PHI_S_INV = FreeAutomorphism("B", "a")
_PHI_NEG = FreeAutomorphism("A", "B")


@dataclass(frozen=True)
class Monodromy:
    """An SL(2,Z) matrix with |trace| > 2 (pseudo-Anosov on the punctured torus)."""

    m11: int
    m12: int
    m21: int
    m22: int

    def __post_init__(self):
        if self.m11 * self.m22 - self.m12 * self.m21 != 1:
            raise MonodromyError("determinant must be 1")
        if abs(self.trace()) <= 2:
            raise MonodromyError("|trace| must exceed 2")

    @classmethod
    def from_string(cls, text: str) -> "Monodromy":
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            raise MonodromyError(f"expected 4 comma-separated integers, got {text!r}")
        try:
            a, b, c, d = (int(p) for p in parts)
        except ValueError as exc:
            raise MonodromyError(str(exc)) from None
        return cls(a, b, c, d)

    def trace(self) -> int:
        return self.m11 + self.m22

    def rows(self) -> tuple:
        return ((self.m11, self.m12), (self.m21, self.m22))

    def apply_slope_quadratic(self) -> tuple:
        """Coefficients (A, B, C) of the fixed-slope equation A s^2 + B s + C = 0."""
        return (self.m12, self.m11 - self.m22, -self.m21)

    def _st_word(self) -> list:
        """Decompose the matrix as a word in T = [[1,1],[0,1]] and S = [[0,-1],[1,0]].

        Returns a list of (symbol, power) with symbols 'T', 'S', 'N' (= -I).
        """
        m = [[self.m11, self.m12], [self.m21, self.m22]]
        word: list = []
        while m[1][0] != 0:
            a, c = m[0][0], m[1][0]
            q = a // c
            # T^{-q} then S^{-1} on the left; record T^q S on the decomposition
            m = [[m[0][0] - q * m[1][0], m[0][1] - q * m[1][1]], [m[1][0], m[1][1]]]
            m = [[m[1][0], m[1][1]], [-m[0][0], -m[0][1]]]
            if q:
                word.append(("T", q))
            word.append(("S", 1))
        # now m is upper triangular with diagonal +-1
        if m[0][0] == -1:
            word.append(("N", 1))
            m = [[-m[0][0], -m[0][1]], [-m[1][0], -m[1][1]]]
        if m[0][1]:
            word.append(("T", m[0][1]))
        return word

    def induced_automorphism(self) -> FreeAutomorphism:
        """A free-group automorphism whose action on H1 is this matrix."""
        phi = FreeAutomorphism.identity()
        for sym, power in self._st_word():
            if sym == "T":
                step = _PHI_T if power > 0 else _PHI_T_INV
                for _ in range(abs(power)):
                    phi = phi.compose(step)
            elif sym == "S":
                phi = phi.compose(_PHI_S)
            else:
                phi = phi.compose(_PHI_NEG)
        if phi.abelianization() != self.rows():
            raise MonodromyError("internal decomposition error")  # defensive
        return phi

    def __str__(self) -> str:
        return f"[[{self.m11},{self.m12}],[{self.m21},{self.m22}]]"


# ---------------------------------------------------------------------------
# Trace coordinates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MarkovTriple:
    """Trace coordinates (tr A, tr B, tr AB) of a punctured-torus pair."""

    x: complex
    y: complex
    z: complex

    def residual(self) -> float:
        x, y, z = self.x, self.y, self.z
        return abs(x * x + y * y + z * z - x * y * z)

    def is_real(self, tol: float = 1e-8) -> bool:
        return max(abs(self.x.imag), abs(self.y.imag), abs(self.z.imag)) < tol

    def conjugate(self) -> "MarkovTriple":
        return MarkovTriple(self.x.conjugate(), self.y.conjugate(), self.z.conjugate())

    def as_tuple(self) -> tuple:
        return (self.x, self.y, self.z)


def reject_fuchsian(triple: MarkovTriple, tol: float = 1e-8) -> MarkovTriple:
    """Pass through non-real triples; raise FuchsianBranchError on real ones."""
    if triple.is_real(tol):
        raise FuchsianBranchError(
            f"real Markov triple ({triple.x:.6g}, {triple.y:.6g}, {triple.z:.6g}) "
            "is a Fuchsian branch"
        )
    return triple


def _trace_lift(x: complex, y: complex, z: complex) -> tuple:
    """Any SL2 pair with traces (x, y, z); used only to evaluate trace polynomials."""
    disc = cmath.sqrt(z * z - 4)
    eta = (z + disc) / 2
    if abs(eta) < 1e-9:
        eta = (z - disc) / 2
    a = np.array([[x, -1.0], [1.0, 0.0]], dtype=complex)
    b = np.array([[0.0, eta], [-1.0 / eta, y]], dtype=complex)
    return a, b


def _word_matrix(word: str, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    mats = {"a": a, "b": b, "A": np.linalg.inv(a), "B": np.linalg.inv(b)}
    m = np.eye(2, dtype=complex)
    for ch in word:
        m = m @ mats[ch]
    return m


def trace_action(mono: Monodromy, triple: MarkovTriple) -> MarkovTriple:
    """Polynomial action on trace coordinates induced by the monodromy.

    Evaluated via any matrix lift of the triple; word traces are polynomials
    in (x, y, z), so the lift does not matter.
    """
    phi = mono.induced_automorphism()
    a, b = _trace_lift(triple.x, triple.y, triple.z)
    ma = _word_matrix(phi.image_a, a, b)
    mb = _word_matrix(phi.image_b, a, b)
    return MarkovTriple(complex(np.trace(ma)), complex(np.trace(mb)), complex(np.trace(ma @ mb)))


# ---------------------------------------------------------------------------
# Representation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Representation:
    """Images of the generators, with the solved triple and its diagnostics."""

    rho_a: MobiusMap
    rho_b: MobiusMap
    triple: MarkovTriple
    monodromy: Monodromy
    markov_residual: float
    commutator_residual: float
    conjugacy_residual: float

    def letter_maps(self) -> dict:
        return {
            "a": self.rho_a,
            "b": self.rho_b,
            "A": self.rho_a.inverse(),
            "B": self.rho_b.inverse(),
        }

    def evaluate(self, word: str) -> MobiusMap:
        """Homomorphic image of a word (freely reduced first)."""
        # scalar fast path: products of det-1 matrices, normalised once at the end
        table = {k: m.entries for k, m in self.letter_maps().items()}
        a, b, c, d = 1.0 + 0j, 0j, 0j, 1.0 + 0j
        for ch in reduce_word(word):
            e, f, g, h = table[ch]
            a, b, c, d = a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h
        return MobiusMap(a, b, c, d)


def commutator_trace(rho_a: MobiusMap, rho_b: MobiusMap) -> complex:
    k = rho_a @ rho_b @ rho_a.inverse() @ rho_b.inverse()
    return k.trace()


def verify_monodromy_conjugacy(rep_or_pair, mono: Monodromy) -> float:
    """Max trace defect |tr rho(phi(g)) - tr rho(g)| over g in {a, b, ab}.

    Traces are compared projectively (up to a sign of the SL2 lift).
    """
    if isinstance(rep_or_pair, Representation):
        rep = rep_or_pair
    else:
        rep = _BarePair(*rep_or_pair)
    phi = mono.induced_automorphism()
    worst = 0.0
    for g in ("a", "b", "ab"):
        t1 = rep.evaluate(phi(g)).trace()
        t2 = rep.evaluate(g).trace()
        worst = max(worst, min(abs(t1 - t2), abs(t1 + t2)))
    return worst


class _BarePair:
    def __init__(self, rho_a: MobiusMap, rho_b: MobiusMap):
        self.rho_a = rho_a
        self.rho_b = rho_b

    def evaluate(self, word: str) -> MobiusMap:
        table = {
            "a": self.rho_a,
            "b": self.rho_b,
            "A": self.rho_a.inverse(),
            "B": self.rho_b.inverse(),
        }
        m = MobiusMap.identity()
        for ch in reduce_word(word):
            m = m @ table[ch]
        return m


def _lift_normal_form(triple: MarkovTriple) -> tuple:
    """Matrices for the triple with [A,B] = [[-1,1],[0,-1]] and A attracting at 0."""
    x, y, z = triple.as_tuple()
    disc = cmath.sqrt(x * x - 4)
    alpha = (x + disc) / 2
    if abs(alpha) > 1:
        alpha = (x - disc) / 2
    if abs(abs(alpha) - 1) < 1e-9:
        raise RepresentationError("generator a is not loxodromic; cannot pin its fixed points")
    denom = alpha - 1 / alpha
    p = (z - y / alpha) / denom
    s = y - p
    if abs(p * s - 1) < 1e-12:
        raise RepresentationError("reducible pair: generators share a fixed point")
    a0 = np.array([[alpha, 0.0], [0.0, 1.0 / alpha]], dtype=complex)
    b0 = np.array([[p, 1.0], [p * s - 1.0, s]], dtype=complex)
    k0 = a0 @ b0 @ np.linalg.inv(a0) @ np.linalg.inv(b0)
    if abs(np.trace(k0) + 2) > 1e-6:
        raise RepresentationError(f"commutator trace {np.trace(k0):.6g} is not -2")
    ka, kb, kc, kd = k0.ravel()
    if abs(kc) < 1e-13:
        conj = np.eye(2, dtype=complex)
    else:
        zeta = (ka - kd) / (2 * kc)
        if abs(zeta) < 1e-12:
            raise RepresentationError("commutator fixed point collides with the a-axis")
        conj = np.array([[1.0, 0.0], [1.0, -zeta]], dtype=complex)
        conj = conj / cmath.sqrt(np.linalg.det(conj))
    k1 = conj @ k0 @ np.linalg.inv(conj)
    if k1[0, 0].real > 0:
        k1 = -k1
    kappa = k1[0, 1]
    if abs(kappa) < 1e-12:
        raise RepresentationError("commutator degenerated to the identity")
    mu = cmath.sqrt(1.0 / kappa)
    gauge = np.array([[mu, 0.0], [0.0, 1.0 / mu]], dtype=complex) @ conj
    gauge_inv = np.linalg.inv(gauge)
    a = gauge @ a0 @ gauge_inv
    b = gauge @ b0 @ gauge_inv
    return MobiusMap(*a.ravel()), MobiusMap(*b.ravel())


def solve_fiber_representation(
    mono: Monodromy,
    seed: int = 0,
    attempts: int = 60,
    residual_tol: float = 1e-11,
) -> Representation:
    """Solve Markov + monodromy-fixed-point trace equations and lift to matrices.

    Multivariate root finding from randomized complex seeds.  Real (Fuchsian)
    solutions and the trivial triple are rejected; among the two conjugate
    degenerate branches the one with Im(tr A) > 0 is returned.
    """
    phi = mono.induced_automorphism()
    wa, wb = phi.image_a, phi.image_b

    def residuals(v: np.ndarray) -> np.ndarray:
        x, y, z = v[0] + 1j * v[1], v[2] + 1j * v[3], v[4] + 1j * v[5]
        a, b = _trace_lift(x, y, z)
        ma = _word_matrix(wa, a, b)
        mb = _word_matrix(wb, a, b)
        eqs = (
            np.trace(ma) - x,
            np.trace(mb) - y,
            np.trace(ma @ mb) - z,
            x * x + y * y + z * z - x * y * z,
        )
        return np.array([f for e in eqs for f in (e.real, e.imag)])

    rng = random.Random(seed)
    best = math.inf
    saw_fuchsian = False
    for _ in range(attempts):
        x0 = np.array([rng.uniform(-3, 3) for _ in range(6)])
        try:
            res = root(residuals, x0, method="lm", options={"maxiter": 4000})
        except Exception:
            continue
        if not res.success:
            continue
        r = float(np.max(np.abs(residuals(res.x))))
        best = min(best, r)
        if r > residual_tol:
            continue
        triple = MarkovTriple(
            complex(res.x[0], res.x[1]),
            complex(res.x[2], res.x[3]),
            complex(res.x[4], res.x[5]),
        )
        if abs(triple.x) + abs(triple.y) + abs(triple.z) < 0.5:
            continue  # trivial (reducible) solution
        if triple.is_real():
            saw_fuchsian = True
            continue
        if triple.x.imag < 0:
            triple = triple.conjugate()
        rho_a, rho_b = _lift_normal_form(triple)
        markov_res = triple.residual()
        comm_res = abs(commutator_trace(rho_a, rho_b) + 2)
        conj_res = verify_monodromy_conjugacy((rho_a, rho_b), mono)
        if comm_res > MARKOV_TOL or conj_res > CONJUGACY_TOL:
            continue
        return Representation(
            rho_a=rho_a,
            rho_b=rho_b,
            triple=triple,
            monodromy=mono,
            markov_residual=markov_res,
            commutator_residual=comm_res,
            conjugacy_residual=conj_res,
        )
    if saw_fuchsian:
        raise FuchsianBranchError(
            "only the real (Fuchsian) branch was found; no degenerate solution"
        )
    raise SolverError(f"no solution for monodromy {mono}", best)


# ---------------------------------------------------------------------------
# Boundary-map samples
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CTSample:
    """One boundary-image approximation with its convergence diagnostic."""

    word: str
    point: SpherePoint
    estimate: float
    depth: int
    status: str  # converged | undecided

    def __post_init__(self):
        if self.estimate < 0:
            raise ValueError("negative convergence estimate")


def _orbit_point(rep: Representation, word: str) -> SpherePoint:
    m = rep.evaluate(word)
    return SpherePoint.from_complex(m.apply(BASEPOINT))


def ct_image(
    rep: Representation,
    xi: BoundaryWord,
    depth: int,
    tol: float = 1e-3,
    stride: int = 5,
) -> CTSample:
    """Boundary image of xi approximated by the depth-n orbit of the basepoint.

    The convergence estimate is the chordal distance between the depth-n and
    depth-(n - stride) images; when it exceeds tol the sample is reported
    with status "undecided" (the raw orbit point is still recorded).
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    word = xi.prefix(depth)
    point = _orbit_point(rep, word)
    shallow = _orbit_point(rep, word[: max(0, depth - stride)])
    estimate = chordal(point, shallow)
    status = "converged" if estimate <= tol else "undecided"
    return CTSample(word=word, point=point, estimate=estimate, depth=depth, status=status)


def periodic_image(rep: Representation, head: str, cycle: str) -> SpherePoint:
    """Exact image of head·cycle^inf: push the cycle's terminal fixed point.

    Uses the attracting fixed point for loxodromic cycles and the unique
    fixed point for parabolic ones.
    """
    m = rep.evaluate(cycle)
    cls = m.classify()
    if cls.kind == "elliptic":
        raise RepresentationError(f"cycle {cycle!r} is elliptic; no boundary limit")
    fixed = cls.fixed[0]
    image = rep.evaluate(head).apply(fixed)
    return SpherePoint.from_complex(image)


def jorgensen_value(rep: Representation, g: str, h: str) -> float:
    """|tr^2(G) - 4| + |tr[G,H] - 2| for the subgroup generated by two words.

    Discrete nonelementary pairs satisfy >= 1; reported as a spot check only.
    """
    mg = rep.evaluate(g)
    mh = rep.evaluate(h)
    t = mg.trace()
    comm = mg @ mh @ mg.inverse() @ mh.inverse()
    return abs(t * t - 4) + abs(comm.trace() - 2)
