"""Seeded property suites over the library's identities.

Each suite returns a plain dict of worst-case residuals / counters so the
CLI can serialize it and the test suite can assert on it.
"""
from __future__ import annotations

import math

import numpy as np

from .disk import (
    DiskPoint,
    phi,
    rho,
    rho_from_kernel,
    sample_blaschke,
    sample_disk,
    sample_distinct_pair,
)
from .errors import BergkreinError, Infeasible
from .krein import (
    KVector,
    composition_factor,
    is_k_contraction,
    k_inner,
    moebius,
    sample_k_contraction,
    sample_su11,
    self_inner,
    sharp_adjoint,
)
from .pick import (
    GRAM_PSD_TOL,
    TwoPointProblem,
    build_contraction_T,
    check_equivalences,
    contraction_gram_difference,
    pick_matrix,
    pick_matrix_squared,
    psd_float,
    ratio_kernel_gram,
    solve_schur_two_point,
)
from .series import (
    BallPoint,
    k_indef,
    kernel_split,
    pair_truncation,
    truncation_bound,
)


def sample_omega(rng, nonneutral=True, min_self=0.05, max_z2=1.0):
    """Random vector in the indefinite unit ball; optionally bounded away
    from the neutral cone so identity denominators stay healthy."""
    while True:
        r2 = rng.uniform(0.0, max_z2)
        th1, th2 = rng.uniform(0.0, 2.0 * math.pi, 2)
        m1 = rng.uniform(0.0, 0.9 * (1.0 + r2 * r2))
        z1 = math.sqrt(m1) * complex(math.cos(th1), math.sin(th1))
        z2 = r2 * complex(math.cos(th2), math.sin(th2))
        v = KVector(z1, z2)
        if nonneutral and abs(self_inner(v)) < min_self:
            continue
        return v


def _in_domain(z, a, margin=1e-2):
    return abs(1 - k_inner(z, a)) > margin and self_inner(z) < 1


def _rel(diff, *vals):
    scale = max([1.0] + [abs(v) for v in vals])
    return abs(diff) / scale


def _vec_norm(v: KVector) -> float:
    return math.sqrt(abs(v.z1) ** 2 + abs(v.z2) ** 2)


def moebius_identity_suite(trials: int = 10_000, seed: int = 0) -> dict:
    """Worst residuals of the six Moebius-map identities over random draws."""
    rng = np.random.default_rng(seed)
    worst = {k: 0.0 for k in ("i", "ii", "iii", "iv", "v", "vi")}
    for _ in range(trials):
        a = sample_omega(rng)
        z = sample_omega(rng, nonneutral=False)
        w = sample_omega(rng, nonneutral=False)
        if not (_in_domain(z, a) and _in_domain(w, a)):
            continue
        # (i) phi_a(0) = a, phi_a(a) = 0
        r = _vec_norm(moebius(a, KVector(0j, 0j)) - a)
        r = max(r, _vec_norm(moebius(a, a)))
        worst["i"] = max(worst["i"], r)
        fz = moebius(a, z)
        fw = moebius(a, w)
        # (ii) 1 - <phi_a z, phi_a w> factorizes
        lhs = 1 - k_inner(fz, fw)
        rhs = ((1 - self_inner(a)) * (1 - k_inner(z, w))
               / ((1 - k_inner(z, a)) * (1 - k_inner(a, w))))
        worst["ii"] = max(worst["ii"], _rel(lhs - rhs, lhs, rhs))
        # (iii) 1 - <phi_a z, w> factorizes
        lhs = 1 - k_inner(fz, w)
        rhs = (1 - k_inner(a, w)) / (1 - k_inner(z, a)) * (1 - k_inner(z, fw))
        worst["iii"] = max(worst["iii"], _rel(lhs - rhs, lhs, rhs))
        # (iv) involution
        worst["iv"] = max(worst["iv"], _vec_norm(moebius(a, fz) - z))
        # (v) T phi_a(T# z) = phi_{Ta}(z) for sharp-unitary T
        t = sample_su11(int(rng.integers(0, 2**32)))
        ta = t.apply(a)
        tsz = sharp_adjoint(t).apply(z)
        if _in_domain(tsz, a) and _in_domain(z, ta):
            lhsv = t.apply(moebius(a, tsz))
            rhsv = moebius(ta, z)
            worst["v"] = max(worst["v"],
                             _vec_norm(lhsv - rhsv) / max(1.0, _vec_norm(rhsv)))
        # (vi) rho(z,w)^2 = <phi_{Phi w}(Phi z), same>
        p = sample_disk(rng)
        q = sample_disk(rng)
        img = moebius(phi(q), phi(p))
        worst["vi"] = max(worst["vi"],
                          abs(rho(p, q) ** 2 - self_inner(img)))
    return worst


def factorization_suite(pairs: int = 1000, z_per_pair: int = 100, seed: int = 0) -> dict:
    """Worst sharp-unitarity and pointwise factorization residuals of the
    composition factorization phi_b . phi_a = T phi_{phi_a(b)}."""
    rng = np.random.default_rng(seed)
    worst_unitary = 0.0
    worst_pointwise = 0.0
    done = 0
    while done < pairs:
        a = sample_omega(rng)
        b = sample_omega(rng)
        if not _in_domain(b, a):
            continue
        try:
            t, c = composition_factor(a, b)
        except BergkreinError:
            continue
        prod = sharp_adjoint(t) @ t
        res = max(abs(prod.t11 - 1), abs(prod.t12),
                  abs(prod.t21), abs(prod.t22 - 1))
        worst_unitary = max(worst_unitary, res)
        checked = 0
        while checked < z_per_pair:
            z = sample_omega(rng, nonneutral=False)
            if not (_in_domain(z, a) and _in_domain(z, c)):
                continue
            fa = moebius(a, z)
            if not _in_domain(fa, b):
                continue
            lhs = moebius(b, fa)
            rhs = t.apply(moebius(c, z))
            worst_pointwise = max(worst_pointwise, _vec_norm(lhs - rhs))
            checked += 1
        done += 1
    return {"unitary": worst_unitary, "pointwise": worst_pointwise}


def distance_suite(pairs: int = 1000, triples: int = 10_000, seed: int = 0) -> dict:
    """rho vs its kernel form, Moebius invariance, the Schwarz-Pick
    inequality for Schur functions and the sampled triangle inequality."""
    rng = np.random.default_rng(seed)
    out = {
        "kernel_agreement": 0.0,
        "invariance": 0.0,
        "schwarz_pick_slack": 0.0,
        "automorphism_equality": 0.0,
        "triangle_slack": 0.0,
        "product_identity": 0.0,
        "bridge_vi": 0.0,
    }
    for _ in range(pairs):
        p = sample_disk(rng)
        q = sample_disk(rng)
        out["kernel_agreement"] = max(out["kernel_agreement"],
                                      abs(rho(p, q) - rho_from_kernel(p, q)))
        m = sample_blaschke(rng, automorphism=True)
        out["invariance"] = max(
            out["invariance"],
            abs(rho(DiskPoint(m(p.to_complex())), DiskPoint(m(q.to_complex())))
                - rho(p, q)))
        f = sample_blaschke(rng)
        fp, fq = f(p.to_complex()), f(q.to_complex())
        out["schwarz_pick_slack"] = max(
            out["schwarz_pick_slack"],
            rho(DiskPoint(fp), DiskPoint(fq)) - rho(p, q))
        g = sample_blaschke(rng, automorphism=True)
        out["automorphism_equality"] = max(
            out["automorphism_equality"],
            abs(rho(DiskPoint(g(p.to_complex())), DiskPoint(g(q.to_complex())))
                - rho(p, q)))
        # (1 - <Pl,Pl>)(1 - <Pm,Pm>) / |1 - <Pl,Pm>|^2 = 1 - rho^2
        vl, vm = phi(p), phi(q)
        lhs = ((1 - self_inner(vl)) * (1 - self_inner(vm))
               / abs(1 - k_inner(vl, vm)) ** 2)
        rhs = 1 - rho(p, q) ** 2
        out["product_identity"] = max(out["product_identity"], _rel(lhs - rhs, lhs, rhs))
        out["bridge_vi"] = max(
            out["bridge_vi"],
            abs(rho(p, q) ** 2 - self_inner(moebius(vm, vl))))
    for _ in range(triples):
        p, q, r = (sample_disk(rng) for _ in range(3))
        out["triangle_slack"] = max(
            out["triangle_slack"], rho(p, r) - rho(p, q) - rho(q, r))
    return out


def contraction_gram_suite(trials: int = 200, grid: int = 6, seed: int = 0) -> dict:
    """Random contractions composed with Moebius maps have PSD ratio-kernel
    Grams; also checks the Gram-difference comparison for contractions."""
    rng = np.random.default_rng(seed)
    worst_gram = float("inf")
    worst_diff = float("inf")
    for i in range(trials):
        t = sample_k_contraction(int(rng.integers(0, 2**32)))
        a = sample_omega(rng)
        pts = [sample_disk(rng) for _ in range(grid)]
        try:
            g = ratio_kernel_gram(lambda v: t.apply(moebius(a, v)), pts)
        except BergkreinError:
            continue
        worst_gram = min(worst_gram, float(psd_float(g, GRAM_PSD_TOL).witness))
        vecs = [sample_omega(rng, nonneutral=False, max_z2=0.8) for _ in range(4)]
        d = contraction_gram_difference(t, vecs)
        worst_diff = min(worst_diff, float(psd_float(d, GRAM_PSD_TOL).witness))
    return {"min_gram_eig": worst_gram, "min_diff_eig": worst_diff}


def random_problem(rng) -> TwoPointProblem:
    l1, l2 = sample_distinct_pair(rng, max_mod=0.9)
    return TwoPointProblem(l1, l2, sample_disk(rng), sample_disk(rng))


def equivalence_suite(problems: int = 1000, seed: int = 0,
                      gram_trials: int = 16) -> dict:
    """Agreement of the four solvability conditions over random two-point
    problems, plus worst certificates over the feasible ones."""
    rng = np.random.default_rng(seed)
    agree = 0
    feasible = 0
    worst_interp = 0.0
    worst_gram = float("inf")
    contraction_failures = 0
    disagreements = []
    for i in range(problems):
        p = random_problem(rng)
        rep = check_equivalences(p, trials=gram_trials,
                                 seed=int(rng.integers(0, 2**32)))
        if rep.agree:
            agree += 1
        elif len(disagreements) < 5:
            disagreements.append(rep.to_json())
        if rep.solver_ok:
            feasible += 1
            worst_interp = max(worst_interp, rep.interp_residual)
            worst_gram = min(worst_gram, rep.min_gram_eig)
            if not is_k_contraction(build_contraction_T(p)):
                contraction_failures += 1
    return {
        "problems": problems,
        "agree": agree,
        "feasible": feasible,
        "worst_interp_residual": worst_interp,
        "worst_gram_eig": worst_gram,
        "contraction_failures": contraction_failures,
        "disagreements": disagreements,
    }


def pick_distance_suite(trials: int = 1000, seed: int = 0) -> dict:
    """Squared-Pick positivity tracks the distance ordering, the closed-form
    determinant identity holds, and Schur feasibility tracks classical-Pick
    positivity."""
    rng = np.random.default_rng(seed)
    mismatches = 0
    det_residual = 0.0
    schur_mismatches = 0
    for _ in range(trials):
        l1, l2 = sample_distinct_pair(rng)
        m1, m2 = sample_disk(rng), sample_disk(rng)
        msq = pick_matrix_squared([l1, l2], [m1, m2])
        psd = psd_float(msq).is_psd
        ordered = rho(m1, m2) <= rho(l1, l2) + 1e-10
        near_tie = abs(rho(m1, m2) - rho(l1, l2)) < 1e-9
        if psd != ordered and not near_tie:
            mismatches += 1
        # det M * prod(1-<Pl_i,Pl_i>) = |1-<Pm1,Pm2>|^2 (rho_l^2 - rho_m^2)
        e = msq.entries
        det = (e[0][0] * e[1][1] - e[0][1] * e[1][0]).real
        vl1, vl2 = phi(l1), phi(l2)
        vm1, vm2 = phi(m1), phi(m2)
        lhs = det * (1 - self_inner(vl1)) * (1 - self_inner(vl2))
        rhs = (abs(1 - k_inner(vm1, vm2)) ** 2
               * (rho(l1, l2) ** 2 - rho(m1, m2) ** 2))
        det_residual = max(det_residual, _rel(lhs - rhs, lhs, rhs))
        try:
            prob = TwoPointProblem(l1, l2, m1, m2)
        except BergkreinError:
            continue
        classical = psd_float(pick_matrix([l1, l2], [m1, m2])).is_psd
        try:
            solve_schur_two_point(prob)
            schur_ok = True
        except Infeasible:
            schur_ok = False
        if schur_ok != classical and not near_tie:
            schur_mismatches += 1
    return {"mismatches": mismatches, "det_residual": det_residual,
            "schur_mismatches": schur_mismatches}


FLOAT_NOISE = 1e-12  # rounding allowance: the bound is exact-arithmetic


def series_suite(pairs: int = 1000, seed: int = 0) -> dict:
    """Truncation bound dominates the actual error on random ball pairs,
    with the truncation order chosen by the bound rule per pair."""
    rng = np.random.default_rng(seed)
    violations = 0
    worst_margin = float("inf")
    for _ in range(pairs):
        z = _sample_ball(rng)
        lam = _sample_ball(rng)
        n_max = pair_truncation(z, lam)
        kp, km = kernel_split(z, lam, n_max)
        err = abs((kp - km) - k_indef(z.value, lam.value))
        bound = truncation_bound(z, lam, n_max)
        worst_margin = min(worst_margin, bound + FLOAT_NOISE - err)
        if err > bound + FLOAT_NOISE:
            violations += 1
    return {"violations": violations, "worst_margin": worst_margin}


def _sample_ball(rng, max_norm: float = 0.9) -> BallPoint:
    r = max_norm * math.sqrt(rng.uniform(0.0, 1.0))
    split = rng.uniform(0.0, 1.0)
    th1, th2 = rng.uniform(0.0, 2.0 * math.pi, 2)
    m1 = r * math.sqrt(split)
    m2 = r * math.sqrt(1.0 - split)
    return BallPoint(KVector(m1 * complex(math.cos(th1), math.sin(th1)),
                             m2 * complex(math.cos(th2), math.sin(th2))))


def identity_report(trials: int = 500, seed: int = 0) -> dict:
    """Condensed residual report across all suites (CLI verify-identities)."""
    return {
        "moebius_identities": moebius_identity_suite(trials=trials, seed=seed),
        "factorization": factorization_suite(pairs=max(trials // 10, 10), z_per_pair=20,
                             seed=seed + 1),
        "distance": distance_suite(pairs=trials, triples=trials * 2,
                                   seed=seed + 2),
        "pick_distance": pick_distance_suite(trials=trials, seed=seed + 3),
        "contraction_grams": contraction_gram_suite(trials=max(trials // 10, 10),
                                     seed=seed + 4),
    }
