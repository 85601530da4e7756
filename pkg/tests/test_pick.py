import math
from fractions import Fraction

import numpy as np
import pytest

from bergkrein.disk import DiskPoint, phi, rho, sample_disk, sample_distinct_pair
from bergkrein.errors import (
    DimensionTooLarge,
    DuplicateNodes,
    Infeasible,
    LengthMismatch,
    NonPositiveSelfInner,
    NotHermitian,
    SingularDenominator,
)
from bergkrein.krein import KVector, is_k_contraction, k_inner, self_inner
from bergkrein.pick import (
    HermitianMatrix,
    LinearStep,
    MoebiusStep,
    TwoPointProblem,
    build_contraction_T,
    check_equivalences,
    contraction_gram_difference,
    det_exact,
    eval_chain,
    gram_certificate,
    hadamard,
    interpolation_residual,
    lift_disk_map,
    negative_unit_orthogonal,
    pick_matrix,
    pick_matrix_squared,
    psd_exact,
    psd_float,
    ratio_kernel_gram,
    solve_indefinite_two_point,
    solve_schur_two_point,
)
from bergkrein.scalars import QComplex

Q = lambda *a: QComplex(*a)

NODES3 = [DiskPoint(Q(Fraction(2, 3))), DiskPoint(Q(Fraction(3, 4))),
          DiskPoint(Q(0))]
TARGETS3 = [DiskPoint(Q(Fraction(1, 3))), DiskPoint(Q(Fraction(1, 4))),
            DiskPoint(Q(0))]


def test_hermitian_validation():
    with pytest.raises(NotHermitian):
        HermitianMatrix.from_rows([[1 + 0j, 1j], [1j, 1 + 0j]])
    m = HermitianMatrix.from_rows([[2 + 0j, 1 - 1j], [1 + 1j, 3 + 0j]])
    assert m.entries[0][1] == 1 - 1j
    # diagonal imaginary dust is stripped
    m2 = HermitianMatrix.from_rows([[2 + 1e-12j, 0j], [0j, 1 + 0j]])
    assert m2.entries[0][0].imag == 0.0


def test_pick_matrix_exact_values():
    p = pick_matrix(NODES3, TARGETS3)
    assert p.entries[0][0] == Q(Fraction(8, 5))
    assert p.entries[0][1] == Q(Fraction(11, 6))
    assert p.entries[1][1] == Q(Fraction(15, 7))
    assert p.entries[2][2] == Q(1)
    sq = pick_matrix_squared(NODES3, TARGETS3)
    assert sq.entries[0][0] == Q(Fraction(64, 25))
    assert sq.entries[0][1] == Q(Fraction(121, 36))
    assert sq.entries[1][1] == Q(Fraction(225, 49))
    assert hadamard(p, p).entries == sq.entries


def test_exact_determinants():
    p = pick_matrix(NODES3, TARGETS3)
    sq = pick_matrix_squared(NODES3, TARGETS3)
    assert det_exact(p) == Fraction(-11, 1260)
    assert det_exact(sq.submatrix((0, 1))) == Fraction(29087, 63504)
    assert det_exact(sq) == Fraction(45119, 1587600)


def test_exact_psd_verdicts():
    p = pick_matrix(NODES3, TARGETS3)
    sq = pick_matrix_squared(NODES3, TARGETS3)
    vp = psd_exact(p)
    assert not vp.is_psd
    idx, val = vp.witness
    assert idx == (0, 1, 2) and val == Fraction(-11, 1260)
    vsq = psd_exact(sq)
    assert vsq.is_psd and vsq.witness is None


def test_float_psd_matches_exact_example():
    nodes = [DiskPoint(complex(p.to_complex())) for p in NODES3]
    targets = [DiskPoint(complex(p.to_complex())) for p in TARGETS3]
    assert not psd_float(pick_matrix(nodes, targets)).is_psd
    assert psd_float(pick_matrix_squared(nodes, targets)).is_psd


def test_pick_matrix_errors():
    a = DiskPoint(0.5 + 0j)
    b = DiskPoint(0.25 + 0j)
    with pytest.raises(LengthMismatch):
        pick_matrix([a, b], [a])
    with pytest.raises(LengthMismatch):
        pick_matrix([], [])
    with pytest.raises(DuplicateNodes):
        pick_matrix([a, a], [a, b])
    with pytest.raises(DimensionTooLarge):
        det_exact(HermitianMatrix.from_rows(
            [[Q(1) if i == j else Q(0) for j in range(5)] for i in range(5)]))


def test_psd_float_against_numpy():
    # independent float oracle: numpy.linalg.eigvalsh
    rng = np.random.default_rng(0)
    for _ in range(100):
        n = int(rng.integers(1, 7))
        b = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        h = b @ b.conj().T - rng.uniform(0, 2) * np.eye(n)
        m = HermitianMatrix.from_rows(h.tolist())
        v = psd_float(m, 1e-10)
        ref = float(np.linalg.eigvalsh(h)[0])
        scale = max(1.0, float(np.max(np.abs(h))))
        assert abs(float(v.witness) - ref) < 1e-9 * scale
        if abs(ref) > 1e-8 * scale:
            assert v.is_psd == (ref > 0)


def test_two_point_problem_validation():
    a = DiskPoint(0.5 + 0j)
    with pytest.raises(DuplicateNodes):
        TwoPointProblem(a, DiskPoint(0.5 + 0j), a, a)


def test_schur_solver_feasible():
    p = TwoPointProblem(DiskPoint(0j), DiskPoint(0.5 + 0j),
                        DiskPoint(0j), DiskPoint(0.25 + 0j))
    f = solve_schur_two_point(p)
    assert abs(f(0)) < 1e-14
    assert abs(f(0.5) - 0.25) < 1e-14
    assert abs(f.c) <= 1
    # constant-target case uses c = 0
    q = TwoPointProblem(DiskPoint(0j), DiskPoint(0.5 + 0j),
                        DiskPoint(0.3 + 0j), DiskPoint(0.3 + 0j))
    g = solve_schur_two_point(q)
    assert g.c == 0
    assert abs(g(0) - 0.3) < 1e-14 and abs(g(0.5) - 0.3) < 1e-14


def test_schur_solver_infeasible():
    # 0 -> 0 and 1/2 -> 3/4 needs |c| = 3/2 > 1
    p = TwoPointProblem(DiskPoint(0j), DiskPoint(0.5 + 0j),
                        DiskPoint(0j), DiskPoint(0.75 + 0j))
    with pytest.raises(Infeasible) as ei:
        solve_schur_two_point(p)
    assert ei.value.rho_targets > ei.value.rho_nodes
    with pytest.raises(Infeasible):
        build_contraction_T(p)
    with pytest.raises(Infeasible):
        solve_indefinite_two_point(p)


def test_schur_maps_disk_to_disk():
    rng = np.random.default_rng(1)
    solved = 0
    while solved < 50:
        l1, l2 = sample_distinct_pair(rng, 0.8)
        w1, w2 = sample_distinct_pair(rng, 0.8)
        try:
            f = solve_schur_two_point(TwoPointProblem(l1, l2, w1, w2))
        except Infeasible:
            continue
        for _ in range(20):
            z = sample_disk(rng).to_complex()
            assert abs(f(z)) < 1.0 + 1e-12
        solved += 1


def test_negative_unit_orthogonal():
    x = KVector(2 + 0j, 1 + 0j)  # <x,x> = 3
    mu = negative_unit_orthogonal(x)
    assert abs(mu.z1 - 1 / math.sqrt(3)) < 1e-15
    assert abs(mu.z2 - 2 / math.sqrt(3)) < 1e-15
    assert abs(k_inner(mu, x)) < 1e-15
    assert abs(self_inner(mu) + 1) < 1e-15
    z = negative_unit_orthogonal(KVector(0j, 0j))
    assert z.z1 == 0 and z.z2 == 1
    with pytest.raises(NonPositiveSelfInner):
        negative_unit_orthogonal(KVector(1 + 0j, 2 + 0j))


def test_negative_unit_orthogonal_random():
    rng = np.random.default_rng(2)
    for _ in range(200):
        x = KVector(complex(rng.normal(), rng.normal()),
                    complex(rng.normal(), rng.normal()))
        if self_inner(x) <= 1e-3:
            continue
        mu = negative_unit_orthogonal(x)
        assert abs(k_inner(mu, x)) < 1e-12 * max(1.0, x.norm_max())
        assert abs(self_inner(mu) + 1) < 1e-12


def test_contraction_example():
    p = TwoPointProblem(DiskPoint(0j), DiskPoint(0.5 + 0j),
                        DiskPoint(0j), DiskPoint(0.25 + 0j))
    t = build_contraction_T(p)
    assert is_k_contraction(t)
    # T must carry lam_vec to om_vec; <lam,lam> = 7/16, <om,om> = 31/256
    lam_vec = KVector(-math.sqrt(2) / 2, -0.25 + 0j)
    om_vec = KVector(-math.sqrt(2) / 4, -0.0625 + 0j)
    assert abs(self_inner(lam_vec) - 7 / 16) < 1e-15
    assert abs(self_inner(om_vec) - 31 / 256) < 1e-15
    img = t.apply(lam_vec)
    assert abs(img.z1 - om_vec.z1) < 1e-12 and abs(img.z2 - om_vec.z2) < 1e-12


def test_contraction_gram_difference_psd():
    rng = np.random.default_rng(3)
    solved = 0
    while solved < 30:
        l1, l2 = sample_distinct_pair(rng, 0.8)
        w1, w2 = sample_distinct_pair(rng, 0.8)
        p = TwoPointProblem(l1, l2, w1, w2)
        try:
            t = build_contraction_T(p)
        except Infeasible:
            continue
        vecs = [KVector(complex(rng.normal(), rng.normal()) * 0.3,
                        complex(rng.normal(), rng.normal()) * 0.3)
                for _ in range(5)]
        g = contraction_gram_difference(t, vecs)
        assert psd_float(g, 1e-8).is_psd
        solved += 1


def test_solve_indefinite_interpolates():
    rng = np.random.default_rng(4)
    solved = 0
    while solved < 50:
        l1, l2 = sample_distinct_pair(rng, 0.8)
        w1, w2 = sample_distinct_pair(rng, 0.8)
        p = TwoPointProblem(l1, l2, w1, w2)
        try:
            chain = solve_indefinite_two_point(p)
        except Infeasible:
            continue
        assert interpolation_residual(chain, p) < 1e-9
        assert len(chain.steps) == 3
        assert isinstance(chain.steps[0], MoebiusStep)
        assert isinstance(chain.steps[1], LinearStep)
        assert isinstance(chain.steps[2], MoebiusStep)
        solved += 1


def test_eval_chain_singular_step_index():
    # a Moebius step with <z, base> = 1 reports which step failed
    base = KVector(0.5 + 0j, 0j)
    chain_obj = solve_indefinite_two_point(
        TwoPointProblem(DiskPoint(0j), DiskPoint(0.5 + 0j),
                        DiskPoint(0j), DiskPoint(0.25 + 0j)))
    from bergkrein.pick import RationalMapChain
    bad = RationalMapChain((MoebiusStep(base),))
    with pytest.raises(SingularDenominator) as ei:
        eval_chain(bad, KVector(2 + 0j, 0j))
    assert ei.value.step_index == 0
    assert chain_obj is not None


def test_ratio_kernel_gram_witness_for_non_schur_map():
    # f(z) = z + 1/2 leaves the disk (|f(1/2)| = 1), and a Gram at {0, 1/2}
    # picks that up with a negative eigenvalue
    f = lambda z: z + 0.5
    pts = [DiskPoint(0j), DiskPoint(0.5 + 0j)]
    g = ratio_kernel_gram(lift_disk_map(f), pts)
    assert not psd_float(g, 1e-10).is_psd


def test_ratio_kernel_gram_psd_for_schur_map():
    rng = np.random.default_rng(5)
    from bergkrein.disk import sample_blaschke
    for _ in range(20):
        f = sample_blaschke(rng)
        pts = [sample_disk(rng) for _ in range(6)]
        g = ratio_kernel_gram(lift_disk_map(f), pts)
        assert psd_float(g, 1e-8).is_psd


def test_gram_certificate_deterministic():
    chain = solve_indefinite_two_point(
        TwoPointProblem(DiskPoint(0j), DiskPoint(0.5 + 0j),
                        DiskPoint(0j), DiskPoint(0.25 + 0j)))
    a = gram_certificate(chain, trials=4, seed=7)
    b = gram_certificate(chain, trials=4, seed=7)
    assert a == b
    assert a >= -1e-8


def test_check_equivalences_agreement():
    rng = np.random.default_rng(6)
    for _ in range(40):
        l1, l2 = sample_distinct_pair(rng, 0.85)
        w1, w2 = sample_distinct_pair(rng, 0.85)
        p = TwoPointProblem(l1, l2, w1, w2)
        rep = check_equivalences(p, trials=4, seed=0)
        assert rep.agree
        if rep.solver_ok:
            assert rep.rho_targets <= rep.rho_nodes + 1e-9
            assert rep.interp_residual < 1e-9
        j = rep.to_json()
        assert j["agree"] is True


def test_rho_ordering_iff_pick_psd():
    # rho(targets) <= rho(nodes) exactly when the squared Pick matrix is PSD
    rng = np.random.default_rng(7)
    for _ in range(200):
        l1, l2 = sample_distinct_pair(rng, 0.85)
        w1, w2 = sample_distinct_pair(rng, 0.85)
        p = TwoPointProblem(l1, l2, w1, w2)
        gap = p.rho_targets() - p.rho_nodes()
        if abs(gap) < 1e-6:
            continue
        psd = psd_float(pick_matrix_squared([l1, l2], [w1, w2])).is_psd
        assert psd == (gap < 0)
