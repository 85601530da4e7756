"""Pick matrices, PSD testing (float and exact), the two-point Schur
interpolant and the constructive indefinite two-point interpolant with its
contraction factor and Gram-positivity certificates."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ._kernels import hermitian_eigenvalues
from .disk import DiskPoint, mobius_value, phi, rho, sample_disk
from .errors import (
    DimensionMismatch,
    DimensionTooLarge,
    DuplicateNodes,
    Infeasible,
    LengthMismatch,
    NonPositiveSelfInner,
    NotHermitian,
    SingularDenominator,
)
from .krein import KMatrix, KVector, is_k_contraction, k_inner, moebius, self_inner
from .scalars import QComplex, conj, format_qcomplex, modulus_sq, to_float

EXACT_DIM_LIMIT = 4
PICK_PSD_TOL = 1e-10
GRAM_PSD_TOL = 1e-8
FEASIBILITY_SLACK = 1e-12
JACOBI_OFF_TOL = 1e-14


@dataclass(frozen=True)
class HermitianMatrix:
    """Square matrix with entries[j][i] = conj(entries[i][j]), generic over
    the scalar backend."""

    entries: tuple

    @property
    def n(self):
        return len(self.entries)

    @classmethod
    def from_rows(cls, rows, tol=1e-8):
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionMismatch("matrix is not square")
        exact = any(isinstance(x, QComplex) for r in rows for x in r)
        scale = 1.0 if exact else max(
            1.0, max(abs(to_float(x)) for r in rows for x in r))
        out = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                a = rows[i][j]
                b = conj(rows[j][i])
                if exact:
                    if a != b:
                        raise NotHermitian(f"entries ({i},{j})/({j},{i}) differ")
                    out[i][j] = a
                    out[j][i] = conj(a)
                else:
                    a = complex(a)
                    b = complex(b)
                    if abs(a - b) > tol * scale:
                        raise NotHermitian(
                            f"entries ({i},{j})/({j},{i}) differ by {abs(a - b)}")
                    m = 0.5 * (a + b)
                    if i == j:
                        m = complex(m.real, 0.0)
                    out[i][j] = m
                    out[j][i] = conj(m)
        return cls(tuple(tuple(r) for r in out))

    def is_exact(self):
        return any(isinstance(x, QComplex) for r in self.entries for x in r)

    def to_numpy(self):
        return np.array(
            [[to_float(x) for x in row] for row in self.entries],
            dtype=np.complex128)

    def submatrix(self, idx):
        return HermitianMatrix(
            tuple(tuple(self.entries[i][j] for j in idx) for i in idx))

    def to_strings(self):
        out = []
        for row in self.entries:
            out.append([format_qcomplex(x) if isinstance(x, QComplex)
                        else repr(complex(x)) for x in row])
        return out


@dataclass(frozen=True)
class PsdVerdict:
    is_psd: bool
    mode: str  # "float" or "exact"
    witness: object  # min eigenvalue, or (index tuple, Fraction) in exact mode

    def to_json(self):
        if self.mode == "float":
            w = float(self.witness)
        elif self.witness is None:
            w = None
        else:
            idx, val = self.witness
            w = {"indices": list(idx), "value": format_qcomplex(QComplex(val))}
        return {"mode": self.mode, "is_psd": self.is_psd, "witness": w}


@dataclass(frozen=True)
class TwoPointProblem:
    lam1: DiskPoint
    lam2: DiskPoint
    om1: DiskPoint
    om2: DiskPoint

    def __post_init__(self):
        if abs(self.lam1.to_complex() - self.lam2.to_complex()) <= 1e-10:
            raise DuplicateNodes("interpolation nodes coincide")

    def rho_nodes(self):
        return rho(self.lam1, self.lam2)

    def rho_targets(self):
        return rho(self.om1, self.om2)


@dataclass(frozen=True)
class LinearStep:
    matrix: KMatrix


@dataclass(frozen=True)
class MoebiusStep:
    base: KVector

    def __post_init__(self):
        if self.base.is_zero():
            return
        s = float(self_inner(self.base.to_float()))
        if abs(s) <= 1e-12:
            raise NonPositiveSelfInner("Moebius step base is nonzero neutral")
        if s >= 1:
            raise NonPositiveSelfInner("Moebius step base outside the ball")


@dataclass(frozen=True)
class RationalMapChain:
    """Composition of primitive maps, applied right-to-left (steps[-1] first,
    as in function composition notation)."""

    steps: tuple

    def __call__(self, z: KVector) -> KVector:
        return eval_chain(self, z)

    def describe(self):
        out = []
        for s in self.steps:
            if isinstance(s, LinearStep):
                out.append({"kind": "linear",
                            "matrix": [repr(complex(e)) for e in s.matrix.entries()]})
            else:
                out.append({"kind": "moebius",
                            "base": [repr(complex(s.base.z1)),
                                     repr(complex(s.base.z2))]})
        return out


def pick_matrix(lams, oms) -> HermitianMatrix:
    """Classical Pick matrix [(1 - w_i conj(w_j)) / (1 - l_i conj(l_j))]."""
    if len(lams) != len(oms):
        raise LengthMismatch(f"{len(lams)} nodes vs {len(oms)} targets")
    if len(lams) < 1:
        raise LengthMismatch("need at least one node")
    vals = [p.value for p in lams]
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            if isinstance(vals[i], QComplex) and isinstance(vals[j], QComplex):
                if vals[i] == vals[j]:
                    raise DuplicateNodes(f"nodes {i} and {j} coincide")
            elif abs(to_float(vals[i]) - to_float(vals[j])) <= 1e-10:
                raise DuplicateNodes(f"nodes {i} and {j} coincide")
    wv = [p.value for p in oms]
    n = len(vals)
    rows = [[(1 - wv[i] * conj(wv[j])) / (1 - vals[i] * conj(vals[j]))
             for j in range(n)] for i in range(n)]
    return HermitianMatrix.from_rows(rows)


def pick_matrix_squared(lams, oms) -> HermitianMatrix:
    """Entrywise square of the Pick matrix (Schur product P . P)."""
    p = pick_matrix(lams, oms)
    return hadamard(p, p)


def hadamard(a: HermitianMatrix, b: HermitianMatrix) -> HermitianMatrix:
    if a.n != b.n:
        raise DimensionMismatch(f"{a.n} vs {b.n}")
    return HermitianMatrix(tuple(
        tuple(a.entries[i][j] * b.entries[i][j] for j in range(a.n))
        for i in range(a.n)))


def psd_float(a: HermitianMatrix, tol=PICK_PSD_TOL) -> PsdVerdict:
    """PSD verdict from the minimum eigenvalue (cyclic Jacobi sweeps)."""
    m = a.to_numpy()
    scale = max(1.0, float(np.max(np.abs(m))))
    eigs = hermitian_eigenvalues(m, JACOBI_OFF_TOL * scale)
    mineig = float(eigs[0])
    return PsdVerdict(mineig >= -tol * scale, "float", mineig)


def det_exact(a: HermitianMatrix) -> Fraction:
    """Exact determinant of an exact Hermitian matrix (real rational)."""
    if a.n > EXACT_DIM_LIMIT:
        raise DimensionTooLarge(f"exact determinant limited to n <= {EXACT_DIM_LIMIT}")
    d = _det_cofactor([list(r) for r in a.entries])
    if not isinstance(d, QComplex):
        d = QComplex(d)
    assert d.im == 0, "Hermitian determinant must be real"
    return d.re


def _det_cofactor(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = QComplex(0)
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def psd_exact(a: HermitianMatrix) -> PsdVerdict:
    """Exact PSD test: every principal minor (all index subsets) must be
    nonnegative; the first negative one, in subset-size order, is the witness."""
    if a.n > EXACT_DIM_LIMIT:
        raise DimensionTooLarge(f"exact PSD test limited to n <= {EXACT_DIM_LIMIT}")
    for size in range(1, a.n + 1):
        for idx in itertools.combinations(range(a.n), size):
            minor = det_exact(a.submatrix(idx))
            if minor < 0:
                return PsdVerdict(False, "exact", (idx, minor))
    return PsdVerdict(True, "exact", None)


@dataclass(frozen=True)
class SchurInterpolant:
    """f = m_{w1} o (c . m_{l1}) with |c| <= 1; a Schur function hitting
    both target values."""

    c: complex
    lam1: complex
    om1: complex

    def __call__(self, z: complex) -> complex:
        return mobius_value(self.om1, self.c * mobius_value(self.lam1, z))


def solve_schur_two_point(p: TwoPointProblem) -> SchurInterpolant:
    l1, l2 = p.lam1.to_complex(), p.lam2.to_complex()
    w1, w2 = p.om1.to_complex(), p.om2.to_complex()
    if w1 == w2:
        c = 0.0 + 0.0j
    else:
        c = mobius_value(w1, w2) / mobius_value(l1, l2)
    if abs(c) > 1.0 + FEASIBILITY_SLACK:
        raise Infeasible(
            f"|c| = {abs(c)} > 1: no Schur interpolant",
            rho_nodes=p.rho_nodes(), rho_targets=p.rho_targets())
    return SchurInterpolant(c, l1, w1)


def negative_unit_orthogonal(x: KVector) -> KVector:
    """mu with <mu,x> = 0 and <mu,mu> = -1; the canonical conjugate-swap
    formula (conj x2, conj x1)/sqrt(<x,x>), and (0,1) for x = 0."""
    if x.is_zero():
        return KVector(0.0 + 0.0j, 1.0 + 0.0j)
    s = float(self_inner(x.to_float()))
    if s <= 0:
        raise NonPositiveSelfInner(f"<x,x> = {s} <= 0")
    r = 1.0 / math.sqrt(s)
    return KVector(r * conj(to_float(x.z2)), r * conj(to_float(x.z1)))


def _outer_with_j_row(col: KVector, row_src: KVector) -> KMatrix:
    """col * (conj(row_src.z1), -conj(row_src.z2)): the matrix of
    z -> <z, row_src> col."""
    r1 = conj(to_float(row_src.z1))
    r2 = -conj(to_float(row_src.z2))
    c1 = to_float(col.z1)
    c2 = to_float(col.z2)
    return KMatrix(c1 * r1, c1 * r2, c2 * r1, c2 * r2)


def build_contraction_T(p: TwoPointProblem) -> KMatrix:
    """The contraction T z = (<z,l>/<l,l>) w - <z,mu> nu with
    l = phi_{Phi(l2)}(Phi(l1)), w = phi_{Phi(w2)}(Phi(w1)) and mu, nu the
    canonical negative unit vectors orthogonal to l and w."""
    rl = p.rho_nodes()
    rw = p.rho_targets()
    if rw > rl + FEASIBILITY_SLACK:
        raise Infeasible(
            f"rho(targets) = {rw} > rho(nodes) = {rl}",
            rho_nodes=rl, rho_targets=rw)
    lam_vec = moebius(phi(p.lam2), phi(p.lam1))
    om_vec = moebius(phi(p.om2), phi(p.om1))
    s = float(self_inner(lam_vec))  # = rho(nodes)^2 > 0: nodes are distinct
    mu = negative_unit_orthogonal(lam_vec)
    nu = negative_unit_orthogonal(om_vec)
    t1 = _outer_with_j_row(om_vec.scale(1.0 / s), lam_vec)
    t2 = _outer_with_j_row(nu, mu)
    return KMatrix(t1.t11 - t2.t11, t1.t12 - t2.t12,
                   t1.t21 - t2.t21, t1.t22 - t2.t22)


def solve_indefinite_two_point(p: TwoPointProblem) -> RationalMapChain:
    """Interpolant F = phi_{Phi(w2)} o T o phi_{Phi(l2)} sending Phi(l_j)
    to Phi(w_j) with positive ratio-kernel Grams."""
    t = build_contraction_T(p)
    return RationalMapChain((
        MoebiusStep(phi(p.om2)),
        LinearStep(t),
        MoebiusStep(phi(p.lam2)),
    ))


def eval_chain(f: RationalMapChain, z: KVector) -> KVector:
    """Apply the chain right-to-left; singular denominators are reported
    with the failing step index."""
    v = z
    for idx in range(len(f.steps) - 1, -1, -1):
        step = f.steps[idx]
        try:
            if isinstance(step, LinearStep):
                v = step.matrix.apply(v)
            else:
                v = moebius(step.base, v)
        except SingularDenominator as exc:
            raise SingularDenominator(str(exc), step_index=idx) from exc
    return v


def ratio_kernel_gram(evaluate, points) -> HermitianMatrix:
    """Gram matrix [(1 - <F Phi(z_i), F Phi(z_j)>) / (1 - <Phi(z_i), Phi(z_j)>)].

    PSD Grams at every point set are the membership evidence for the class
    of self-maps whose pullback along the embedding dominates the kernel.
    """
    vs = [phi(pt) for pt in points]
    ws = [evaluate(v) for v in vs]
    n = len(points)
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            denom = 1 - k_inner(vs[i], vs[j])
            if abs(denom) <= 1e-14:
                raise SingularDenominator(f"kernel denominator vanished at ({i},{j})")
            rows[i][j] = (1 - k_inner(ws[i], ws[j])) / denom
    return HermitianMatrix.from_rows(rows)


def lift_disk_map(f):
    """Turn a scalar disk map f into a self-map of the embedded image:
    Phi(lam) -> Phi(f(lam)). Only meaningful on the image of the embedding."""
    def evaluate(v: KVector) -> KVector:
        from .disk import phi_unchecked, unembed
        return phi_unchecked(f(unembed(v)))
    return evaluate


@dataclass
class EquivalenceReport:
    psd_squared: bool
    psd_classical: bool
    rho_ordered: bool
    solver_ok: bool
    rho_nodes: float
    rho_targets: float
    interp_residual: float = float("nan")
    min_gram_eig: float = float("nan")
    details: dict = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        flags = {self.psd_squared, self.psd_classical,
                 self.rho_ordered, self.solver_ok}
        return len(flags) == 1

    def to_json(self):
        return {
            "squared_pick_psd": self.psd_squared,
            "classical_pick_psd": self.psd_classical,
            "rho_ordered": self.rho_ordered,
            "solver_ok": self.solver_ok,
            "agree": self.agree,
            "rho_nodes": self.rho_nodes,
            "rho_targets": self.rho_targets,
            "interp_residual": self.interp_residual,
            "min_gram_eig": self.min_gram_eig,
        }


def interpolation_residual(chain: RationalMapChain, p: TwoPointProblem) -> float:
    r = 0.0
    for lam, om in ((p.lam1, p.om1), (p.lam2, p.om2)):
        got = eval_chain(chain, phi(lam))
        want = phi(om)
        diff = got - want
        r = max(r, math.sqrt(abs(modulus_sq(diff.z1)) + abs(modulus_sq(diff.z2))))
    return r


def gram_certificate(chain: RationalMapChain, trials: int, seed: int,
                     grid_size: int = 8):
    """Min eigenvalue of the ratio-kernel Gram over seeded random grids."""
    rng = np.random.default_rng(seed)
    worst = float("inf")
    for _ in range(trials):
        pts = [sample_disk(rng) for _ in range(grid_size)]
        g = ratio_kernel_gram(lambda v: eval_chain(chain, v), pts)
        worst = min(worst, float(psd_float(g, GRAM_PSD_TOL).witness))
    return worst


def check_equivalences(p: TwoPointProblem, trials: int = 16, seed: int = 0) -> EquivalenceReport:
    """Evaluate the four equivalent solvability conditions and report their
    agreement: squared-Pick PSD, classical-Pick PSD, distance ordering, and
    constructive solver success with Gram evidence."""
    lams = [p.lam1, p.lam2]
    oms = [p.om1, p.om2]
    rep = EquivalenceReport(
        psd_squared=psd_float(pick_matrix_squared(lams, oms)).is_psd,
        psd_classical=psd_float(pick_matrix(lams, oms)).is_psd,
        rho_ordered=p.rho_targets() <= p.rho_nodes() + PICK_PSD_TOL,
        solver_ok=False,
        rho_nodes=p.rho_nodes(),
        rho_targets=p.rho_targets(),
    )
    try:
        chain = solve_indefinite_two_point(p)
    except Infeasible:
        return rep
    rep.interp_residual = interpolation_residual(chain, p)
    rep.min_gram_eig = gram_certificate(chain, trials, seed)
    rep.solver_ok = (rep.interp_residual < 1e-9
                     and rep.min_gram_eig >= -GRAM_PSD_TOL)
    return rep


def contraction_gram_difference(t: KMatrix, vectors) -> HermitianMatrix:
    """The matrix [<l_i, l_j> - <T l_i, T l_j>], PSD for K-contractions."""
    tv = [t.apply(v) for v in vectors]
    n = len(vectors)
    rows = [[k_inner(vectors[i], vectors[j]) - k_inner(tv[i], tv[j])
             for j in range(n)] for i in range(n)]
    return HermitianMatrix.from_rows(rows)


__all__ = [
    "HermitianMatrix", "PsdVerdict", "TwoPointProblem", "RationalMapChain",
    "LinearStep", "MoebiusStep", "SchurInterpolant", "EquivalenceReport",
    "pick_matrix", "pick_matrix_squared", "hadamard", "psd_float",
    "psd_exact", "det_exact", "solve_schur_two_point",
    "negative_unit_orthogonal", "build_contraction_T",
    "solve_indefinite_two_point", "eval_chain", "ratio_kernel_gram",
    "lift_disk_map", "check_equivalences", "interpolation_residual",
    "gram_certificate", "contraction_gram_difference", "is_k_contraction",
]
