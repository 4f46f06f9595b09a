"""Ensembles and component codes shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction as F

from dgldpc.binary_codes import (
    BitMatrix,
    ComponentCode,
    hamming_code,
    reed_muller_first_order,
    repetition_code,
    spc_code,
)
from dgldpc.ensemble import CNType, Ensemble, VNType, derive

G_H = ["1000111", "0100110", "0010101", "0001011"]
G_RM = ["11111111", "11110000", "11001100", "10101010"]

HAMMING_7_4 = ComponentCode.from_strings(G_H, "hamming(7,4)")
RM_8_4 = ComponentCode.from_strings(G_RM, "rm(8,4)")
SPC3_VN = ComponentCode.from_strings(["101", "011"], "spc(3)")


def hamming_rm() -> Ensemble:
    return Ensemble(
        (VNType(HAMMING_7_4, F(7, 15), "H"), VNType(RM_8_4, F(8, 15), "RM")),
        (CNType(hamming_code(4), F(1), "H15"),),
        "hamming-rm",
    )


def ldpc(lam: dict, rho: dict) -> Ensemble:
    """LDPC from edge-perspective ``{node degree: fraction}`` maps."""
    return Ensemble.ldpc(lam, rho)


def regular_3_6() -> Ensemble:
    return ldpc({3: 1}, {6: 1})


def good_rp2() -> Ensemble:
    return ldpc({2: F(1, 7), 3: F(6, 7)}, {6: 1})


def bad_rp2() -> Ensemble:
    return ldpc({2: F(2, 5), 3: F(3, 5)}, {6: 1})


def tiny_dgldpc() -> Ensemble:
    """SPC(3) variable nodes with Hamming(7,4) check nodes; n=7 gives N=14."""
    return Ensemble((VNType(SPC3_VN, F(1)),), (CNType(HAMMING_7_4, F(1)),), "tiny")


def gldpc(vn_degrees: dict, cn_codes: list[tuple[ComponentCode, F]]) -> Ensemble:
    vns = tuple(VNType(repetition_code(d), F(f), f"v{d}") for d, f in vn_degrees.items())
    cns = tuple(CNType(c, F(f), c.name) for c, f in cn_codes)
    return Ensemble(vns, cns)


def gldpc_corpus() -> list[Ensemble]:
    """Repetition variable nodes with check-node minimum distance 2, 3 or 4."""
    return [
        gldpc({2: F(1, 3), 4: F(2, 3)}, [(hamming_code(3), F(1))]),
        gldpc({3: F(1)}, [(hamming_code(3), F(1, 2)), (spc_code(7), F(1, 2))]),
        gldpc({3: F(1, 2), 5: F(1, 2)}, [(reed_muller_first_order(3), F(1))]),
        gldpc({2: F(1, 5), 3: F(4, 5)}, [(reed_muller_first_order(3), F(3, 4)), (hamming_code(3), F(1, 4))]),
        gldpc({2: F(1, 4), 3: F(3, 4)}, [(spc_code(6), F(1))]),
        gldpc({4: F(1)}, [(hamming_code(4), F(1))]),
    ]


def random_fractions(rng: random.Random, k: int, denom: int = 60) -> list[F]:
    cuts = sorted(rng.sample(range(1, denom), k - 1))
    parts = [b - a for a, b in zip([0, *cuts], [*cuts, denom])]
    return [F(p, denom) for p in parts]


VN_POOL = [repetition_code(2), repetition_code(3), repetition_code(5), SPC3_VN, HAMMING_7_4, RM_8_4]
CN_POOL = [spc_code(3), spc_code(6), hamming_code(3), hamming_code(4), repetition_code(3)]


def random_ensemble(rng: random.Random) -> Ensemble:
    vns = rng.sample(VN_POOL, rng.randint(1, 3))
    cns = rng.sample(CN_POOL, rng.randint(1, 3))
    lam = random_fractions(rng, len(vns))
    rho = random_fractions(rng, len(cns))
    return Ensemble(
        tuple(VNType(c, f) for c, f in zip(vns, lam)),
        tuple(CNType(c, f) for c, f in zip(cns, rho)),
    )


def random_ldpc_with_degree2(rng: random.Random) -> Ensemble:
    vdeg = sorted({2, *rng.sample(range(3, 9), rng.randint(1, 3))})
    cdeg = sorted(rng.sample(range(3, 11), rng.randint(1, 3)))
    return ldpc(dict(zip(vdeg, random_fractions(rng, len(vdeg)))), dict(zip(cdeg, random_fractions(rng, len(cdeg)))))


def random_rp2(rng: random.Random) -> Ensemble:
    """Random ensemble with r = p = 2 whose C*V is at least 0.05 away from 1."""
    vn_pool = [repetition_code(2), repetition_code(3), repetition_code(4), SPC3_VN, HAMMING_7_4]
    cn_pool = [spc_code(4), spc_code(5), spc_code(6), spc_code(8), hamming_code(3)]
    while True:
        vns = [vn_pool[0] if rng.random() < 0.5 else SPC3_VN] + rng.sample(vn_pool[1:], rng.randint(1, 2))
        vns = list({v.key: v for v in vns}.values())
        cns = [rng.choice(cn_pool[:4])] + rng.sample(cn_pool, rng.randint(0, 1))
        cns = list({c.key: c for c in cns}.values())
        lam = random_fractions(rng, len(vns))
        rho = random_fractions(rng, len(cns))
        ens = Ensemble(
            tuple(VNType(c, f) for c, f in zip(vns, lam)),
            tuple(CNType(c, f) for c, f in zip(cns, rho)),
        )
        par = derive(ens)
        if par.rp2 and abs(par.C * par.V - 1) > F(1, 20):
            return ens


def codes_corpus() -> list[ComponentCode]:
    return [
        repetition_code(2),
        repetition_code(3),
        spc_code(3),
        spc_code(6),
        SPC3_VN,
        HAMMING_7_4,
        RM_8_4,
        hamming_code(4),
        ComponentCode(BitMatrix.from_strings(["110100", "011010", "101001"]), name="shortened"),
    ]
