"""Unit-disk geometry: the quadratic embedding into C^2, the Bergman
kernel, the invariant distance rho and disk automorphisms."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .krein import KVector, k_inner
from .scalars import QComplex, conj, modulus_sq, to_float

BOUNDARY_MARGIN = 1e-12
SAMPLING_CAP = 0.95


@dataclass(frozen=True)
class DiskPoint:
    """Point of the open unit disk; |value| < 1 enforced at construction."""

    value: object

    def __post_init__(self):
        m = modulus_sq(self.value)
        if isinstance(self.value, QComplex):
            if m >= 1:
                raise ValueError(f"|{self.value}| >= 1, not in the open disk")
        elif m >= (1.0 - BOUNDARY_MARGIN) ** 2:
            raise ValueError(f"|{self.value}| too close to the unit circle")

    def to_complex(self) -> complex:
        return to_float(self.value)


def phi(lam: DiskPoint) -> KVector:
    """Quadratic embedding lam -> (sqrt(2)*lam, lam^2). Float backend."""
    z = lam.to_complex()
    return KVector(math.sqrt(2.0) * z, z * z)


def phi_unchecked(w: complex) -> KVector:
    """The same embedding applied to an arbitrary complex number (used to
    push disk maps whose range leaves the disk through the embedding)."""
    w = complex(w)
    return KVector(math.sqrt(2.0) * w, w * w)


def unembed(v: KVector) -> complex:
    """Recover lam from Phi(lam); only valid on the image of phi."""
    return complex(v.z1) / math.sqrt(2.0)


def bergman_kernel(z: DiskPoint, lam: DiskPoint):
    """k(z, lam) = 1 / (1 - conj(lam) z)^2."""
    a = z.value
    b = lam.value
    d = 1 - conj(b) * a
    return 1 / (d * d)


def pseudo_hyperbolic(lam: DiskPoint, mu: DiskPoint) -> float:
    """d(lam, mu) = |(lam - mu) / (1 - conj(mu) lam)| in [0, 1)."""
    a = lam.to_complex()
    b = mu.to_complex()
    return abs((a - b) / (1 - conj(b) * a))


def rho(lam: DiskPoint, mu: DiskPoint) -> float:
    """Invariant distance sqrt(2 d^2 - d^4) with d pseudo-hyperbolic."""
    d2 = pseudo_hyperbolic(lam, mu) ** 2
    return math.sqrt(d2 * (2.0 - d2))


def rho_from_kernel(lam: DiskPoint, mu: DiskPoint) -> float:
    """Same distance computed from the Bergman kernel:
    sqrt(1 - |k(lam,mu)|^2 / (k(lam,lam) k(mu,mu)))."""
    klm = complex(bergman_kernel(lam, mu))
    kll = complex(bergman_kernel(lam, lam)).real
    kmm = complex(bergman_kernel(mu, mu)).real
    val = 1.0 - abs(klm) ** 2 / (kll * kmm)
    return math.sqrt(max(val, 0.0))


def disk_mobius(a: DiskPoint, z: DiskPoint) -> DiskPoint:
    """Self-inverse disk automorphism m_a(z) = (a - z) / (1 - conj(a) z)."""
    return DiskPoint(mobius_value(a.to_complex(), z.to_complex()))


def mobius_value(a: complex, z: complex) -> complex:
    return (a - z) / (1 - conj(a) * z)


def sample_disk(rng: np.random.Generator, max_mod: float = SAMPLING_CAP) -> DiskPoint:
    """Uniform in modulus squared and angle, capped away from the boundary."""
    r = max_mod * math.sqrt(rng.uniform(0.0, 1.0))
    th = rng.uniform(0.0, 2.0 * math.pi)
    return DiskPoint(complex(r * math.cos(th), r * math.sin(th)))


def sample_distinct_pair(rng: np.random.Generator, max_mod: float = SAMPLING_CAP,
                         min_gap: float = 1e-3):
    while True:
        p = sample_disk(rng, max_mod)
        q = sample_disk(rng, max_mod)
        if abs(p.to_complex() - q.to_complex()) >= min_gap:
            return p, q


class BlaschkeProduct:
    """scale * e^{i theta} * prod_k m_{a_k}(z): a Schur function that is an
    automorphism exactly when degree = 1 and scale = 1."""

    def __init__(self, zeros, front_phase: complex, scale: float):
        self.zeros = [z.to_complex() for z in zeros]
        self.front_phase = front_phase
        self.scale = scale

    def __call__(self, z: complex) -> complex:
        w = self.scale * self.front_phase
        for a in self.zeros:
            w *= mobius_value(a, z)
        return w

    @property
    def is_automorphism(self) -> bool:
        return len(self.zeros) == 1 and self.scale == 1.0


def sample_blaschke(rng: np.random.Generator, automorphism: bool = False) -> BlaschkeProduct:
    """Degree in {1,2,3}, zeros from the disk sampler, a unimodular front
    factor, and an overall scale in [0.5, 1]."""
    if automorphism:
        degree, scale = 1, 1.0
    else:
        degree = int(rng.integers(1, 4))
        scale = rng.uniform(0.5, 1.0)
    zeros = [sample_disk(rng) for _ in range(degree)]
    th = rng.uniform(0.0, 2.0 * math.pi)
    return BlaschkeProduct(zeros, complex(math.cos(th), math.sin(th)), scale)


def phi_kernel_identity_residual(z: DiskPoint, lam: DiskPoint) -> float:
    """|(1 - <Phi z, Phi lam>) - (1 - z conj(lam))^2|; zero in exact math."""
    lhs = 1 - k_inner(phi(z), phi(lam))
    rhs = (1 - z.to_complex() * conj(lam.to_complex())) ** 2
    return abs(lhs - rhs)
