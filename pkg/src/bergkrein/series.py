"""The indefinite kernel 1/(1 - <z,l>) on the ball and its split into two
positive-definite partial-sum kernels, with rigorous truncation bounds and
finite Gram checks of the embedding identities."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import comb

from ._kernels import split_sum
from .disk import DiskPoint, bergman_kernel, phi
from .errors import RadiusViolation, SingularDenominator
from .krein import KVector, k_inner
from .pick import GRAM_PSD_TOL, HermitianMatrix, psd_float
from .scalars import QComplex, conj, modulus_sq, to_float

TRUNCATION_CAP = 200
BOUND_TARGET = 1e-10


@dataclass(frozen=True)
class BallPoint:
    """Point of the Euclidean unit ball |z1|^2 + |z2|^2 < 1 in C^2."""

    value: KVector

    def __post_init__(self):
        if self.euclid_sq() >= 1:
            raise ValueError("point outside the Euclidean unit ball")

    def euclid_sq(self):
        return modulus_sq(self.value.z1) + modulus_sq(self.value.z2)

    def is_exact(self):
        return isinstance(self.value.z1, QComplex)


def k_indef(z: KVector, lam: KVector):
    """Closed-form indefinite kernel 1 / (1 - <z, lam>)."""
    d = 1 - k_inner(z, lam)
    if isinstance(d, QComplex):
        if not d:
            raise SingularDenominator("<z, lam> = 1")
        return 1 / d
    if abs(d) <= 1e-14:
        raise SingularDenominator("<z, lam> = 1")
    return 1.0 / d


def _split_products(z: BallPoint, lam: BallPoint):
    x = z.value.z1 * conj(lam.value.z1)
    y = z.value.z2 * conj(lam.value.z2)
    return x, y


def kernel_split(z: BallPoint, lam: BallPoint, n_max: int):
    """Partial sums (K_plus, K_minus) truncated at outer index n_max.

    K_plus collects the even powers of z2*conj(lam2) in the binomial
    expansion of sum_n <z,lam>^n, K_minus the odd powers; both have
    nonnegative integer coefficients, and K_plus - K_minus converges to
    the closed-form kernel.
    """
    if n_max < 0:
        raise ValueError("truncation order must be >= 0")
    x, y = _split_products(z, lam)
    if isinstance(x, QComplex) and isinstance(y, QComplex):
        kp = QComplex(1)
        km = QComplex(0)
        for n in range(1, n_max + 1):
            for k in range(n + 1):
                term = comb(n, k) * _qpow(x, n - k) * _qpow(y, k)
                if k % 2 == 0:
                    kp = kp + term
                else:
                    km = km + term
        return kp, km
    kp, km = split_sum(complex(x), complex(y), n_max)
    return complex(kp), complex(km)


def _qpow(x: QComplex, n: int) -> QComplex:
    out = QComplex(1)
    for _ in range(n):
        out = out * x
    return out


def k_plus(z: BallPoint, lam: BallPoint, n_max: int):
    return kernel_split(z, lam, n_max)[0]


def k_minus(z: BallPoint, lam: BallPoint, n_max: int):
    return kernel_split(z, lam, n_max)[1]


def truncation_bound(z: BallPoint, lam: BallPoint, n_max: int) -> float:
    """Geometric tail bound r^(N+1)/(1-r) with r the product of the two
    Euclidean norms; dominates |K - (K_plus - K_minus)| and each tail."""
    r = math.sqrt(float(z.euclid_sq())) * math.sqrt(float(lam.euclid_sq()))
    if r == 0.0:
        return 0.0
    return r ** (n_max + 1) / (1.0 - r)


def embedding_radius() -> float:
    """Largest r with Phi(r D) inside the Euclidean ball: 2r^2 + r^4 = 1,
    i.e. r = sqrt(sqrt(2) - 1)."""
    return math.sqrt(math.sqrt(2.0) - 1.0)


def _truncation_for_radius(r: float, target: float, cap: int) -> int:
    if r <= 0.0:
        return 0
    n = 0
    while r ** (n + 1) / (1.0 - r) > target and n < cap:
        n += 1
    return n


def choose_truncation(points, target: float = BOUND_TARGET, cap: int = TRUNCATION_CAP) -> int:
    """Least N with the worst pairwise truncation bound below target
    (capped); the worst pair is the diagonal one at the largest norm."""
    r = 0.0
    for p in points:
        r = max(r, math.sqrt(float(p.euclid_sq())))
    return _truncation_for_radius(r * r, target, cap)


def pair_truncation(z: BallPoint, lam: BallPoint, target: float = BOUND_TARGET,
                    cap: int = TRUNCATION_CAP) -> int:
    """Least N with truncation_bound(z, lam, N) below target (capped)."""
    r = math.sqrt(float(z.euclid_sq())) * math.sqrt(float(lam.euclid_sq()))
    return _truncation_for_radius(r, target, cap)


@dataclass
class EmbeddingReport:
    n_truncation: int
    bound: float
    psd_plus: bool
    psd_minus: bool
    min_eig_plus: float
    min_eig_minus: float
    max_diff_residual: float
    diff_ok: bool
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.psd_plus and self.psd_minus and self.diff_ok

    def to_json(self):
        return {
            "N": self.n_truncation,
            "bound": self.bound,
            "gram_plus_psd": self.psd_plus,
            "gram_minus_psd": self.psd_minus,
            "min_eig_plus": self.min_eig_plus,
            "min_eig_minus": self.min_eig_minus,
            "max_diff_residual": self.max_diff_residual,
            "diff_matches_bergman": self.diff_ok,
            "passed": self.passed,
        }


def gram_embedding_check(points, n_max: int | None = None) -> EmbeddingReport:
    """Finite-sample content of the isometric embedding: the split Grams at
    the embedded points are each PSD, and their difference reproduces the
    Bergman kernel values within the truncation bound."""
    radius = embedding_radius()
    for p in points:
        if abs(p.to_complex()) > radius:
            raise RadiusViolation(
                f"|{p.to_complex()}| > embedding radius {radius}")
    balls = [BallPoint(phi(p)) for p in points]
    if n_max is None:
        n_max = choose_truncation(balls)
    n = len(points)
    gp = [[None] * n for _ in range(n)]
    gm = [[None] * n for _ in range(n)]
    bound = 0.0
    max_resid = 0.0
    for i in range(n):
        for j in range(n):
            kp, km = kernel_split(balls[i], balls[j], n_max)
            gp[i][j] = kp
            gm[i][j] = km
            b = truncation_bound(balls[i], balls[j], n_max)
            bound = max(bound, b)
            target = complex(bergman_kernel(points[i], points[j]))
            max_resid = max(max_resid, abs((kp - km) - target))
    mp = HermitianMatrix.from_rows(gp)
    mm = HermitianMatrix.from_rows(gm)
    tol = GRAM_PSD_TOL + bound
    vp = psd_float(mp, tol)
    vm = psd_float(mm, tol)
    return EmbeddingReport(
        n_truncation=n_max,
        bound=bound,
        psd_plus=vp.is_psd,
        psd_minus=vm.is_psd,
        min_eig_plus=float(vp.witness),
        min_eig_minus=float(vm.witness),
        max_diff_residual=max_resid,
        diff_ok=max_resid <= bound + 1e-12,
    )
