import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from corpus import (
    HAMMING_7_4,
    bad_rp2,
    hamming_rm,
    gldpc_corpus,
    ldpc,
    random_ensemble,
    random_ldpc_with_degree2,
    regular_3_6,
)
from dgldpc.binary_codes import BitMatrix, ComponentCode, repetition_code, spc_code
from dgldpc.ensemble import (
    CNType,
    Ensemble,
    VNType,
    derive,
    dominant_set,
    q_polynomials,
    realizability_period,
    smallest_realizable_n,
    validate_graph_realizability,
)
from dgldpc.errors import NotApplicableError, RealizabilityError, SpecError

seeds = st.integers(0, 2**32 - 1)


def rho_prime_1(ens):
    return sum((t.fraction * (t.code.length - 1) for t in ens.cn_types), F(0))


def lambda_prime_0(ens):
    return sum((t.fraction for t in ens.vn_types if t.code.length == 2), F(0))


class TestExamples:
    def test_hamming_rm(self):
        par = derive(hamming_rm())
        assert par.design_rate == F(1, 2)
        assert (par.r, par.psi) == (3, F(3, 2))
        dom = dominant_set(par)
        assert dom.T == F(1, 2)
        assert dom.Y_v == frozenset({0})
        assert dom.P == {0: ((3, 3),)}
        assert par.int_lambda == F(2, 15)

    def test_hamming_rm_q_polynomials_are_cubic_monomials(self):
        Q1, Q2, P = q_polynomials(hamming_rm())
        assert Q1.is_monomial() and Q2.is_monomial()
        assert Q1.degree == Q2.degree == 3
        assert P is None

    def test_regular_3_6(self):
        par = derive(regular_3_6())
        assert (par.int_lambda, par.int_rho) == (F(1, 3), F(1, 6))
        assert par.edges_per_n == 3
        assert par.design_rate == F(1, 2)
        assert par.cns_per_n == F(1, 2)

    def test_ldpc_dominant_pair(self):
        dom = dominant_set(bad_rp2())
        assert dom.T == 0
        assert dom.pairs() == {(1, 2)}

    def test_ldpc_stability_polynomial(self):
        ens = ldpc({2: F(3, 10), 4: F(7, 10)}, {5: 1})
        Q1, _, P = q_polynomials(ens)
        assert P.terms == {1: pytest.approx(0.3, rel=1e-15)}
        assert Q1(1.0) == pytest.approx(float(derive(ens).C) * 0.3, rel=1e-12)

    @pytest.mark.parametrize("ens", gldpc_corpus(), ids=lambda e: str(derive(e).r))
    def test_repetition_vns_dominant_pair(self, ens):
        par = derive(ens)
        t_min = min(range(len(par.q)), key=lambda t: par.q[t])
        assert par.P_t[t_min] == ((1, par.p),)

    def test_chi_and_second_distances(self):
        par = derive(hamming_rm())
        # (3,3) sits on the line; Hamming's (2,3) is next: ((3 - 3/2)/2 - 1/2) * 2 = 1/2
        assert par.chi == F(1, 2)
        assert par.r_bar == 4
        assert par.p_bar == 4

    def test_sentinels(self):
        par = derive(ldpc({2: 1}, {2: 1}))
        assert par.r_bar is None and par.p_bar is None and par.chi is None


class TestRealizability:
    def test_3_6_at_4(self):
        counts = validate_graph_realizability(regular_3_6(), 4)
        assert counts.edges == 12
        assert counts.vn_counts == (4,)
        assert counts.cn_counts == (2,)
        assert counts.with_dims(regular_3_6()) == (4, 2)

    def test_hamming_rm_rounds_up(self):
        with pytest.raises(RealizabilityError) as info:
            validate_graph_realizability(hamming_rm(), 15)
        assert info.value.suggested_n == 16
        counts = validate_graph_realizability(hamming_rm(), 16)
        assert counts.edges == 120
        assert counts.vn_counts == (8, 8)
        assert counts.cn_counts == (8,)

    @pytest.mark.parametrize("n", [0, -3])
    def test_nonpositive(self, n):
        with pytest.raises(RealizabilityError):
            validate_graph_realizability(regular_3_6(), n)

    @settings(max_examples=40)
    @given(seeds, st.integers(1, 500))
    def test_suggestion_is_realizable(self, seed, n):
        ens = random_ensemble(random.Random(seed))
        m = smallest_realizable_n(ens, n)
        assert m >= n and m % realizability_period(ens) == 0
        counts = validate_graph_realizability(ens, m)
        assert sum(c * t.code.length for c, t in zip(counts.vn_counts, ens.vn_types)) == counts.edges
        assert sum(c * t.code.length for c, t in zip(counts.cn_counts, ens.cn_types)) == counts.edges


class TestConstruction:
    def test_identical_generators_merge(self):
        ens = Ensemble(
            (VNType(repetition_code(3), F(1, 4)), VNType(repetition_code(3), F(1, 4)), VNType(HAMMING_7_4, F(1, 2))),
            (CNType(spc_code(6), F(1)),),
        )
        assert len(ens.vn_types) == 2
        assert ens.lambdas == (F(1, 2), F(1, 2))

    def test_different_representations_stay_distinct(self):
        other = ComponentCode(BitMatrix.from_strings(["1000111", "0100110", "0010101", "0001011"][::-1]))
        ens = Ensemble(
            (VNType(HAMMING_7_4, F(1, 2)), VNType(other, F(1, 2))),
            (CNType(spc_code(6), F(1)),),
        )
        assert len(ens.vn_types) == 2

    @pytest.mark.parametrize(
        "lam, rho",
        [({3: F(1, 2)}, {6: 1}), ({3: 1}, {6: F(3, 2), 4: F(-1, 2)}), ({3: 1}, {6: 0})],
    )
    def test_fraction_validation(self, lam, rho):
        with pytest.raises(SpecError):
            ldpc(lam, rho)

    def test_string_fractions(self):
        assert ldpc({3: "1/2", 4: "1/2"}, {6: "1"}).lambdas == (F(1, 2), F(1, 2))

    def test_distance_one_check_rejected(self):
        with pytest.raises(SpecError):
            derive(Ensemble((VNType(repetition_code(3), F(1)),), (CNType(ComponentCode(BitMatrix.identity(2)), F(1)),)))

    def test_distance_one_variable_flagged(self):
        ident = ComponentCode(BitMatrix.identity(1))
        par = derive(Ensemble((VNType(ident, F(1, 2)), VNType(repetition_code(3), F(1, 2))), (CNType(spc_code(4), F(1)),)))
        assert par.p == 1
        assert par.issues and not par.expansion_applicable
        with pytest.raises(NotApplicableError):
            par.T


class TestInvariants:
    @given(seeds)
    def test_node_fractions_are_distributions(self, seed):
        par = derive(random_ensemble(random.Random(seed)))
        assert sum(par.delta) == 1
        assert sum(par.gamma) == 1
        assert all(d > 0 for d in par.delta + par.gamma)

    @given(seeds)
    def test_ldpc_reductions(self, seed):
        ens = random_ldpc_with_degree2(random.Random(seed))
        par = derive(ens)
        assert par.C == rho_prime_1(ens)
        assert par.V == lambda_prime_0(ens)
        assert par.C * par.V == lambda_prime_0(ens) * rho_prime_1(ens)

    @given(seeds)
    def test_dominant_set_brute_force(self, seed):
        par = derive(random_ensemble(random.Random(seed)))
        if not par.expansion_applicable:
            return
        slopes = {}
        for t, code in enumerate(par.ensemble.vn_types):
            b = code.code.io_enum
            for (i, j), c in b.items():
                if i > 0 and c > 0:
                    slopes[(t, i, j)] = (j - par.psi) / i
        T = min(slopes.values())
        assert par.T == T
        assert par.Y_v == frozenset(t for (t, _, _), s in slopes.items() if s == T)
        assert par.dominant.pairs() == {(i, j) for (_, i, j), s in slopes.items() if s == T}

    @given(seeds, st.integers(2, 9))
    def test_dominant_set_ignores_lambda_scale(self, seed, factor):
        rng = random.Random(seed)
        ens = random_ensemble(rng)
        weights = [t.fraction * (factor if i % 2 else 1) for i, t in enumerate(ens.vn_types)]
        total = sum(weights)
        rescaled = Ensemble(
            tuple(VNType(t.code, w / total) for t, w in zip(ens.vn_types, weights)),
            ens.cn_types,
        )
        a, b = derive(ens), derive(rescaled)
        if a.expansion_applicable:
            assert (a.T, a.Y_v, dict(a.P_t), a.chi) == (b.T, b.Y_v, dict(b.P_t), b.chi)

    @given(seeds)
    def test_ordering_and_signs(self, seed):
        par = derive(random_ensemble(random.Random(seed)))
        assert 1 < par.psi <= 2
        assert (par.psi == 2) == (par.r == 2)
        assert par.C > 0
        if par.r_bar is not None:
            assert par.r_bar > par.r
        if par.p_bar is not None:
            assert par.p_bar > par.p
        if par.expansion_applicable:
            assert par.T >= 0
            assert (par.T == 0) == par.rp2
            if par.rp2:
                assert par.Y_v == par.X_v

    @given(seeds)
    def test_q1_positive_and_consistent(self, seed):
        par = derive(random_ensemble(random.Random(seed)))
        if not par.expansion_applicable:
            return
        Q1, Q2, P = q_polynomials(par)
        assert Q1.all_positive() and Q2.all_positive()
        assert (P is not None) == par.rp2
        if P is not None:
            assert P.all_positive()
            assert P(1.0) == pytest.approx(float(par.V), rel=1e-12)

    def test_derived_is_immutable(self):
        par = derive(regular_3_6())
        with pytest.raises(AttributeError):
            par.C = F(1)
