"""Acceptance suite: one printed PASS/FAIL line per criterion, then an assert."""

import math
import random
import time
from fractions import Fraction as F

import numpy as np
import pytest

from corpus import (
    G_H,
    G_RM,
    HAMMING_7_4,
    RM_8_4,
    SPC3_VN,
    bad_rp2,
    codes_corpus,
    hamming_rm,
    gldpc_corpus,
    good_rp2,
    random_ldpc_with_degree2,
    random_rp2,
    regular_3_6,
    tiny_dgldpc,
)
from dgldpc.asymptotics import (
    GrowthSolver,
    check_exponent,
    classify,
    exact_growth_rate,
    single_pair_linear_coeff,
    small_alpha_expansion,
    stability_bound,
    stopping_set_expansion,
    variable_exponent,
)
from dgldpc.binary_codes import brute_force_cn_stopping, hamming_code, spc_code
from dgldpc.ensemble import Ensemble, derive
from dgldpc.oracle import bivariate_power, exact_average_spectrum, monte_carlo_spectrum, poly_power_coeff
from dgldpc.specfile import load_ensemble

from pathlib import Path

SPECS = Path(__file__).resolve().parent.parent / "specs"


@pytest.fixture
def report(capsys):
    def emit(k: int, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\nCRITERION {k} {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail

    return emit


def lambda_prime_0(ens: Ensemble) -> F:
    return sum((t.fraction for t in ens.vn_types if t.code.length == 2), F(0))


def rho_prime_1(ens: Ensemble) -> F:
    return sum((t.fraction * (t.code.length - 1) for t in ens.cn_types), F(0))


def test_criterion_1_hamming_rm_reproduction(report):
    start = time.perf_counter()
    ens = load_ensemble(SPECS / "hamming_rm.json")
    par = derive(ens)
    elapsed = time.perf_counter() - start
    got = {
        "generators": (ens.vn_types[0].code.generator.to_strings(), ens.vn_types[1].code.generator.to_strings()),
        "lambdas": par.lambdas,
        "cn": (par.s, par.h),
        "r": par.r,
        "psi": par.psi,
        "T": par.T,
        "Y_v": sorted(t + 1 for t in par.Y_v),
        "P": {t + 1: set(pts) for t, pts in par.P_t.items()},
        "R": par.design_rate,
    }
    want = {
        "generators": (G_H, G_RM),
        "lambdas": (F(7, 15), F(8, 15)),
        "cn": ((15,), (11,)),
        "r": 3,
        "psi": F(3, 2),
        "T": F(1, 2),
        "Y_v": [1],
        "P": {1: {(3, 3)}},
        "R": F(1, 2),
    }
    ok = got == want and elapsed < 1.0
    report(1, ok, f"r={par.r} psi={par.psi} T={par.T} Y_v={got['Y_v']} P={got['P']} R={par.design_rate} in {elapsed:.3f}s")


def test_criterion_2_ldpc_reduction(report):
    rows, ok = [], True
    for seed in range(12):
        ens = random_ldpc_with_degree2(random.Random(seed))
        start = time.perf_counter()
        par = derive(ens)
        bound = stability_bound(par)
        elapsed = time.perf_counter() - start
        lp, rp = lambda_prime_0(ens), rho_prime_1(ens)
        exact = par.C == rp and par.C * par.V == lp * rp
        close = abs(bound - 1 / float(lp * rp)) <= 1e-10 * (1 / float(lp * rp))
        ok &= exact and close and elapsed < 1.0
        rows.append(f"CV={par.C * par.V}{'' if exact else '!'} bound_err={abs(bound * float(lp * rp) - 1):.1e}")
    report(2, ok, f"{len(rows)} specs; " + "; ".join(rows))


def test_criterion_3_gldpc_reduction(report):
    rows, ok, rs = [], True, set()
    for ens in gldpc_corpus():
        par = derive(ens)
        exp = small_alpha_expansion(par)
        p, r = par.p, par.r
        rs.add(r)
        t_min = par.q.index(p)
        delta_min = float(par.delta[t_min])
        k_gldpc = (
            math.log(math.e * delta_min)
            + p / r * math.log(par.C)
            + float(p / par.psi) * math.log(p * float(par.int_lambda) / math.e)
        )
        coeff_ok = exp.alpha_log_alpha_coeff == p - F(p, r) - 1
        k_ok = abs(exp.linear_coeff - k_gldpc) <= 1e-10 * max(1.0, abs(k_gldpc))
        ok &= coeff_ok and k_ok
        rows.append(f"r={r},p={p}: coeff={exp.alpha_log_alpha_coeff} K_err={abs(exp.linear_coeff - k_gldpc):.1e}")
    ok &= len(rows) >= 5 and rs >= {2, 3, 4}
    report(3, ok, "; ".join(rows))


def test_criterion_4_single_pair_consistency(report):
    candidates = [hamming_rm(), good_rp2(), bad_rp2(), regular_3_6(), *gldpc_corpus()]
    from corpus import random_ensemble

    candidates += [random_ensemble(random.Random(seed)) for seed in range(150)]
    checked, worst = 0, 0.0
    for ens in candidates:
        par = derive(ens)
        if not par.expansion_applicable or len(par.dominant.pairs()) != 1:
            continue
        general = small_alpha_expansion(par).linear_coeff
        single = single_pair_linear_coeff(par)
        worst = max(worst, abs(general - single) / max(abs(general), 1e-300))
        checked += 1
    ok = checked >= 10 and worst <= 1e-10
    report(4, ok, f"{checked} singleton-pair ensembles, worst relative difference {worst:.2e}")


def _gaps(values):
    return all(a > b for a, b in zip(values, values[1:])) and values[-1] < 0.05


def test_criterion_5_component_exponent_convergence(report):
    start = time.perf_counter()
    ells = (20, 40, 80, 160)
    rows, ok = [], True
    for code, ratio in [(spc_code(4), F(1)), (HAMMING_7_4, F(3, 2)), (RM_8_4, F(2)), (spc_code(6), F(3, 2))]:
        value, _ = check_exponent(code.weight_enum, float(ratio))
        gaps = [abs(math.log(poly_power_coeff(list(code.weight_enum.coeffs), l, int(ratio * l))) / l - value) for l in ells]
        ok &= _gaps(gaps)
        rows.append(f"A {code.name}@{ratio}: " + ",".join(f"{g:.4f}" for g in gaps))
    for code, (a, b) in [(HAMMING_7_4, (F(3, 2), F(7, 2))), (RM_8_4, (F(2), F(4))), (RM_8_4, (F(3, 2), F(4)))]:
        value, _, _ = variable_exponent(code.io_enum, float(a), float(b))
        gaps = []
        for l in ells:
            table = bivariate_power(dict(code.io_enum.items()), l, int(a * l))
            row = table[int(a * l)]
            gaps.append(abs(math.log(row[int(b * l)]) / l - value))
        ok &= _gaps(gaps)
        rows.append(f"B {code.name}@({a},{b}): " + ",".join(f"{g:.4f}" for g in gaps))
    elapsed = time.perf_counter() - start
    ok &= elapsed < 30
    report(5, ok, "; ".join(rows) + f"; {elapsed:.1f}s")


def test_criterion_6_exact_vs_monte_carlo(report):
    start = time.perf_counter()
    rows, ok = [], True
    for name, ens, n, seed in [("ldpc(2,4)", Ensemble.ldpc({2: 1}, {4: 1}), 4, 1), ("spc3/hamming7", tiny_dgldpc(), 7, 7)]:
        exact = exact_average_spectrum(ens, n)
        mc = monte_carlo_spectrum(ens, n, 2000, seed)
        worst = 0.0
        for w in exact.weights:
            diff = abs(mc[w] - float(exact[w]))
            se = mc.standard_error(w)
            if se == 0:
                good = diff == 0
                z = 0.0 if good else math.inf
            else:
                z = diff / se
                good = z <= 3
            ok &= good
            worst = max(worst, z)
        N = len(exact.weights) - 1
        ok &= N <= 16
        rows.append(f"{name} N={N}: max |z|={worst:.2f}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 120
    report(6, ok, "; ".join(rows) + f"; {elapsed:.1f}s")


def test_criterion_7_finite_n_convergence(report):
    start = time.perf_counter()
    alpha = 0.05
    rows, ok = [], True
    for name, ens in (("good", good_rp2()), ("bad", bad_rp2())):
        verdict = classify(ens).verdict
        G = exact_growth_rate(ens, alpha)
        gaps = []
        for n in (120, 240, 480, 960):
            w = round(alpha * n)
            gaps.append(abs(exact_average_spectrum(ens, n, weights=[w]).log_growth(w) - G))
        ok &= all(a > b for a, b in zip(gaps, gaps[1:]))
        rows.append(f"{name}({verdict}) G={G:.5f} gaps=" + ",".join(f"{g:.5f}" for g in gaps))
    ok &= {classify(good_rp2()).verdict, classify(bad_rp2()).verdict} == {"Good", "Bad"}
    elapsed = time.perf_counter() - start
    ok &= elapsed < 300
    report(7, ok, "; ".join(rows) + f"; {elapsed:.1f}s")


def test_criterion_8_remainder_exponent(report):
    rows, ok = [], True
    alphas = np.geomspace(1e-4, 1e-2, 9)
    for name, ens in (("hamming_rm", hamming_rm()), ("good", good_rp2()), ("bad", bad_rp2()), ("3-6", regular_3_6())):
        par = derive(ens)
        exp = small_alpha_expansion(par)
        solver = GrowthSolver(par)
        ratios = [(solver.point(float(a)).value - exp(float(a))) / float(a) ** float(exp.xi) for a in alphas]
        same_sign = all(r > 0 for r in ratios) or all(r < 0 for r in ratios)
        band = max(map(abs, ratios)) / min(map(abs, ratios)) if same_sign else math.inf
        ok &= band <= 10
        rows.append(f"{name} xi={exp.xi} R in [{min(ratios):.3g},{max(ratios):.3g}] band={band:.2f}")
    report(8, ok, "; ".join(rows))


def test_criterion_9_classification_vs_sign(report):
    rows, ok = [], True
    for seed in range(10):
        ens = random_rp2(random.Random(seed))
        par = derive(ens)
        verdict = classify(par).verdict
        g = exact_growth_rate(ens, 1e-5)
        match = (verdict == "Good" and g < 0) or (verdict == "Bad" and g > 0)
        ok &= match and abs(par.C * par.V - 1) > F(1, 20)
        rows.append(f"CV={float(par.C * par.V):.3f} {verdict} G={g:+.2e}")
    report(9, ok, "; ".join(rows))


def test_criterion_10_stopping_sets(report):
    ok, notes = True, []
    for s in range(2, 9):
        phi = spc_code(s).cn_stopping_enum
        closed = [1, 0] + [math.comb(s, u) for u in range(2, s + 1)]
        ok &= list(phi.coeffs) == closed and phi == brute_force_cn_stopping(spc_code(s).generator)
    notes.append("SPC(2..8) closed form and brute force")

    components = {c.key: c for c in codes_corpus()}
    for ens in (good_rp2(), bad_rp2(), *(random_rp2(random.Random(s)) for s in range(10))):
        for t in (*ens.vn_types, *ens.cn_types):
            components.setdefault(t.code.key, t.code)
    cn_checked = vn_checked = 0
    for code in components.values():
        if code.weight_enum.min_nonzero_weight() == 2:
            ok &= code.cn_stopping_enum[2] == code.weight_enum[2]
            cn_checked += 1
        if code.io_enum.min_output_weight() == 2:
            ok &= code.vn_stopping_enum.output_slice(2) == code.io_enum.output_slice(2)
            vn_checked += 1
    notes.append(f"phi_2=A_2 on {cn_checked} codes, theta_u2=B_u2 on {vn_checked} codes")

    worst = 0.0
    for seed in range(12):
        ens = random_ldpc_with_degree2(random.Random(seed))
        target = math.log(float(lambda_prime_0(ens) * rho_prime_1(ens)))
        got = stopping_set_expansion(ens).linear_coeff
        worst = max(worst, abs(got - target))
        ok &= abs(got - target) <= 1e-10
    notes.append(f"LDPC stopping linear coeff worst error {worst:.1e} over 12 specs")
    report(10, ok, "; ".join(notes))
