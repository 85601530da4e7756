"""The signature-(1,1) indefinite inner-product space on C^2.

Inner product <z,w> = z1*conj(w1) - z2*conj(w2), its unit ball, the
indefinite Moebius maps phi_a, the sharp-adjoint calculus and random
generators for sharp-unitaries and contractions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DomainViolation,
    NeutralBasePoint,
    OutsideBall,
    ProbeSingular,
    SingularDenominator,
)
from .scalars import conj, imag_part, modulus_sq, real_part, to_float

DEFAULT_TOL = 1e-12


@dataclass(frozen=True)
class KVector:
    z1: object
    z2: object

    def __add__(self, other):
        return KVector(self.z1 + other.z1, self.z2 + other.z2)

    def __sub__(self, other):
        return KVector(self.z1 - other.z1, self.z2 - other.z2)

    def __neg__(self):
        return KVector(-self.z1, -self.z2)

    def scale(self, c):
        return KVector(c * self.z1, c * self.z2)

    def is_zero(self, tol=DEFAULT_TOL):
        return math.sqrt(abs(modulus_sq(self.z1)) + abs(modulus_sq(self.z2))) <= tol

    def to_float(self):
        return KVector(to_float(self.z1), to_float(self.z2))

    def norm_max(self):
        return max(abs(to_float(self.z1)), abs(to_float(self.z2)))


ZERO = KVector(0.0 + 0.0j, 0.0 + 0.0j)


@dataclass(frozen=True)
class KMatrix:
    """2x2 complex matrix acting on KVectors."""

    t11: complex
    t12: complex
    t21: complex
    t22: complex

    def apply(self, v: KVector) -> KVector:
        return KVector(self.t11 * v.z1 + self.t12 * v.z2,
                       self.t21 * v.z1 + self.t22 * v.z2)

    def __matmul__(self, other: "KMatrix") -> "KMatrix":
        return KMatrix(
            self.t11 * other.t11 + self.t12 * other.t21,
            self.t11 * other.t12 + self.t12 * other.t22,
            self.t21 * other.t11 + self.t22 * other.t21,
            self.t21 * other.t12 + self.t22 * other.t22,
        )

    def entries(self):
        return (self.t11, self.t12, self.t21, self.t22)

    def to_numpy(self):
        return np.array([[self.t11, self.t12], [self.t21, self.t22]],
                        dtype=np.complex128)


IDENTITY = KMatrix(1, 0, 0, 1)
J = KMatrix(1, 0, 0, -1)


def k_inner(z: KVector, w: KVector):
    """<z,w> = z1*conj(w1) - z2*conj(w2). Conjugate-symmetric."""
    return z.z1 * conj(w.z1) - z.z2 * conj(w.z2)


def self_inner(z: KVector):
    """<z,z> as a real number (exact Fraction in the rational backend)."""
    return modulus_sq(z.z1) - modulus_sq(z.z2)


def is_neutral(z: KVector, tol=DEFAULT_TOL) -> bool:
    s = self_inner(z)
    if not isinstance(s, float):
        return s == 0
    scale = max(1.0, abs(modulus_sq(z.z1)) + abs(modulus_sq(z.z2)))
    return abs(s) <= tol * scale


def in_unit_ball(z: KVector) -> bool:
    return self_inner(z) < 1


def in_domain_omega_a(z: KVector, a: KVector, tol=DEFAULT_TOL) -> bool:
    """z in Omega with <z,a> != 1 (the domain of phi_a)."""
    if not in_unit_ball(z):
        return False
    d = 1 - k_inner(z, a)
    if not isinstance(d, complex):
        return bool(d)
    return abs(d) > tol


def proj(a: KVector, z: KVector):
    """Indefinite orthogonal projection onto span(a): (P_a z, Q_a z).

    P_a z = (<z,a>/<a,a>) a; P_a is idempotent and self-adjoint for the
    indefinite inner product. a = 0 is handled by the caller's phi_0
    convention, not here.
    """
    saa = self_inner(a)
    if saa == 0 or (isinstance(saa, float) and is_neutral(a)):
        raise NeutralBasePoint("projection base point is neutral")
    p = a.scale(k_inner(z, a) / saa)
    return p, z - p


def moebius(a: KVector, z: KVector, tol=DEFAULT_TOL) -> KVector:
    """The indefinite Moebius involution phi_a of the unit ball.

    phi_0(z) = -z; otherwise
    phi_a(z) = (a - P_a z - s_a Q_a z) / (1 - <z,a>)
    with s_a = sqrt(1 - <a,a>) > 0 since a is inside the ball.
    Float backend only (the square root is irrational in general).
    """
    a = a.to_float()
    z = z.to_float()
    if a.is_zero(tol):
        return -z
    saa = self_inner(a)
    if is_neutral(a, tol):
        raise NeutralBasePoint("phi_a undefined for nonzero neutral a")
    if saa >= 1:
        raise OutsideBall(f"base point has <a,a> = {saa} >= 1")
    denom = 1 - k_inner(z, a)
    if abs(denom) <= tol:
        raise SingularDenominator("<z,a> = 1 in phi_a")
    s_a = math.sqrt(1 - saa)
    p, q = proj(a, z)
    num = a - p - q.scale(s_a)
    return num.scale(1.0 / denom)


def sharp_adjoint(t: KMatrix) -> KMatrix:
    """Adjoint for the indefinite inner product: T# = J T^H J."""
    return KMatrix(conj(t.t11), -conj(t.t21), -conj(t.t12), conj(t.t22))


def is_sharp_unitary(t: KMatrix, tol=1e-10) -> bool:
    """True iff ||T# T - I||_max <= tol."""
    prod = sharp_adjoint(t) @ t
    res = max(abs(prod.t11 - 1), abs(prod.t12),
              abs(prod.t21), abs(prod.t22 - 1))
    return res <= tol


def gram_defect(t: KMatrix):
    """The Hermitian 2x2 matrix J - T^H J T (PSD iff T is a K-contraction)."""
    th = KMatrix(conj(t.t11), conj(t.t21), conj(t.t12), conj(t.t22))
    p = th @ J @ t
    return KMatrix(1 - p.t11, -p.t12, -p.t21, -1 - p.t22)


def is_k_contraction(t: KMatrix, tol=1e-10) -> bool:
    """<Tz,Tz> <= <z,z> for all z, via the minimum eigenvalue of J - T^H J T.

    The 2x2 Hermitian eigenvalues are closed-form: mean +- sqrt of the
    half-difference squared plus |offdiag|^2.
    """
    h = gram_defect(t)
    a = h.t11.real
    c = h.t22.real
    b = h.t12
    mean = 0.5 * (a + c)
    rad = math.sqrt((0.5 * (a - c)) ** 2 + abs(b) ** 2)
    scale = max(1.0, abs(a), abs(c), abs(b))
    return mean - rad >= -tol * scale


def composition_factor(a: KVector, b: KVector, tol=DEFAULT_TOL):
    """Factor phi_b . phi_a = T phi_c with c = phi_a(b) and T sharp-unitary.

    psi = phi_b . phi_a . phi_c is linear with psi(0) = 0, so T is read off
    by probing psi at t*e1 and t*e2 and dividing by t. Probe scale 1/4,
    falling back to 1/8 if a denominator becomes singular.
    """
    a = a.to_float()
    b = b.to_float()
    for v, name in ((a, "a"), (b, "b")):
        if not v.is_zero(tol) and is_neutral(v, tol):
            raise NeutralBasePoint(f"{name} is a nonzero neutral vector")
    if not in_domain_omega_a(b, a, tol):
        raise DomainViolation("b is not in Omega_a")
    c = moebius(a, b, tol)

    def psi(z):
        return moebius(b, moebius(a, moebius(c, z, tol), tol), tol)

    for t in (0.25, 0.125):
        try:
            col1 = psi(KVector(t + 0.0j, 0.0 + 0.0j)).scale(1.0 / t)
            col2 = psi(KVector(0.0 + 0.0j, t + 0.0j)).scale(1.0 / t)
        except SingularDenominator:
            continue
        return KMatrix(col1.z1, col2.z1, col1.z2, col2.z2), c
    raise ProbeSingular("both probe scales hit a singular denominator")


def sample_su11(seed: int) -> KMatrix:
    """Deterministic random sharp-unitary e^{i theta} [[alpha, beta],
    [conj(beta), conj(alpha)]] with |alpha|^2 - |beta|^2 = 1."""
    rng = np.random.default_rng(seed)
    t = rng.uniform(0.0, 1.5)
    pa, pb, theta = rng.uniform(0.0, 2.0 * math.pi, 3)
    alpha = math.cosh(t) * complex(math.cos(pa), math.sin(pa))
    beta = math.sinh(t) * complex(math.cos(pb), math.sin(pb))
    phase = complex(math.cos(theta), math.sin(theta))
    return KMatrix(phase * alpha, phase * beta,
                   phase * conj(beta), phase * conj(alpha))


def sample_k_contraction(seed: int) -> KMatrix:
    """Deterministic random K-contraction U1 diag(h1, h2) U2 with
    |h1| <= 1 <= |h2| and U_i sharp-unitary."""
    rng = np.random.default_rng(seed)
    h1 = rng.uniform(0.0, 1.0)
    h2 = rng.uniform(1.0, 3.0)
    s1, s2 = rng.integers(0, 2**32, 2)
    u1 = sample_su11(int(s1))
    u2 = sample_su11(int(s2))
    return u1 @ KMatrix(h1, 0, 0, h2) @ u2


def assert_real_self_inner(z: KVector, tol=DEFAULT_TOL):
    """<z,z> must be real; guards against malformed inner products."""
    v = k_inner(z, z)
    im = imag_part(v)
    if isinstance(im, float):
        assert abs(im) <= tol * max(1.0, abs(real_part(v)))
    else:
        assert im == 0
    return real_part(v)
