"""Message compression: lambda profiles, self-reconstruction and MDS coding."""

import dataclasses
from fractions import Fraction

import pytest

from macc import (
    NotApplicable,
    SingularSystem,
    build_scheme,
    compressed_decode,
    compressed_deliver,
    compressed_load,
    coverable_messages,
    demand_suite,
    full_view_rounds,
    lambda_profile,
    library_for_scheme,
    mn_pda,
    partition_pda,
    r_cor1,
    r_cor2,
    r_rk,
    reconstructable_messages,
)


def binomial_instances(k_max: int):
    """All (k, l, t) with tl + 1 < k < tl + l, the regime where every
    lambda_h is positive for the binomial family."""
    out = []
    for k in range(2, k_max + 1):
        for l in range(2, k + 1):
            for t in range(1, k // l + 1):
                if t * l + 1 < k < t * l + l:
                    out.append((k, l, t))
    return out


def test_lambda_worked_examples():
    assert lambda_profile(mn_pda(4, 2), 3).lambdas == (1, 1)
    assert lambda_profile(mn_pda(3, 1), 3).lambdas == (1,)
    prof = lambda_profile(mn_pda(4, 2), 2)  # K = 6: slack closes
    assert prof.lambdas == (0, 0)
    assert not prof.applicable
    assert not lambda_profile(mn_pda(4, 0), 3).applicable


def test_lambda_partition_family():
    for q, l in [(2, 2), (2, 3), (3, 3), (3, 5)]:
        p, _ = partition_pda(2, q)
        prof = lambda_profile(p, l)
        if l >= q:
            assert prof.applicable
            assert set(prof.lambdas) == {l - q + 1}
        else:
            assert not prof.applicable


def test_full_view_rounds_against_grid(scheme832):
    k = scheme832.params.k
    for user in range(1, k + 1):
        expect = []
        for g in range(1, k + 1):
            grid = scheme832.u(g).grid
            if all(row[user - 1] for row in grid):
                expect.append(g)
        assert full_view_rounds(scheme832, user) == tuple(expect)
        assert len(expect) == lambda_profile(scheme832.pda, 3).total


def test_reconstructable_counts(scheme832):
    s = scheme832.pda.s
    total = lambda_profile(scheme832.pda, 3).total
    for user in (1, 4, 8):
        rec = reconstructable_messages(scheme832, user)
        assert len(rec) == total * s
        cov = coverable_messages(scheme832, user)
        assert rec <= cov
    # the coverable set is strictly larger here: partially-seen rounds
    # still have messages whose constituents all fall inside the view
    assert len(coverable_messages(scheme832, 1)) == 14
    assert len(reconstructable_messages(scheme832, 1)) == 8


def test_compressed_batch_shape(scheme832):
    lib = library_for_scheme(scheme832, packet_bytes=2, seed=11)
    demand = (1, 2, 3, 4, 5, 6, 7, 8)
    batch = compressed_deliver(lib, scheme832, demand)
    assert (batch.m1, batch.m2) == (24, 32)
    assert batch.field_width == 8
    assert len(batch.payloads) == 24
    assert batch.coding_matrix.shape == (24, 32)
    assert compressed_load(scheme832) == Fraction(1, 2)


def test_compressed_end_to_end(scheme832):
    lib = library_for_scheme(scheme832, packet_bytes=2, seed=12)
    for demand in demand_suite(8, 8, seed=2, n_random=3):
        batch = compressed_deliver(lib, scheme832, demand)
        for u in range(1, 9):
            got = compressed_decode(lib, scheme832, demand, batch, u)
            assert got == lib.file_bytes(demand[u - 1]), (demand, u)


def test_compressed_partition_instance():
    p, _ = partition_pda(2, 2)
    s = build_scheme(p, 6, 2)
    assert compressed_load(s) == Fraction(2, 3)
    lib = library_for_scheme(s, packet_bytes=1, seed=6)
    demand = (3, 1, 4, 1, 5, 2)
    batch = compressed_deliver(lib, s, demand)
    assert (batch.m1, batch.m2) == (8, 12)
    for u in range(1, 7):
        assert compressed_decode(lib, s, demand, batch, u) == lib.file_bytes(demand[u - 1])


def test_compressed_wide_field():
    # force the 16-bit field on an instance that fits in 8 bits
    s = build_scheme(mn_pda(2, 1), 4, 3)
    lib = library_for_scheme(s, packet_bytes=2, seed=8)
    demand = (2, 1, 4, 3)
    batch = compressed_deliver(lib, s, demand, field_width=16)
    assert batch.field_width == 16
    for u in range(1, 5):
        assert compressed_decode(lib, s, demand, batch, u) == lib.file_bytes(demand[u - 1])


def test_not_applicable_raises():
    s = build_scheme(mn_pda(4, 2), 6, 2)
    lib = library_for_scheme(s, packet_bytes=1, seed=0)
    with pytest.raises(NotApplicable):
        compressed_deliver(lib, s, (1, 2, 3, 4, 5, 6))
    with pytest.raises(NotApplicable):
        compressed_load(s)


def test_tampered_batch_is_rejected(scheme832):
    lib = library_for_scheme(scheme832, packet_bytes=1, seed=1)
    demand = (1, 1, 1, 1, 1, 1, 1, 1)
    batch = compressed_deliver(lib, scheme832, demand)
    bad = dataclasses.replace(
        batch,
        m1=batch.m1 - 1,
        payloads=batch.payloads[:-1],
        coding_matrix=batch.coding_matrix[:-1],
    )
    with pytest.raises(SingularSystem):
        compressed_decode(lib, scheme832, demand, bad, 1)


def test_square_corner_compressed_load():
    for k, l, t in binomial_instances(12):
        k_prime = k - t * (l - 1)
        scheme = build_scheme(mn_pda(k_prime, t), k, l)
        prof = lambda_profile(scheme.pda, l)
        assert prof.applicable, (k, l, t)
        assert set(prof.lambdas) == {t + l - k_prime}
        want = Fraction((k - t * l) ** 2, k)
        assert compressed_load(scheme) == want
        assert r_cor1(k, l, t) == want
        assert r_rk(k, l, t) == want


def test_partition_corner_compressed_load():
    for q in (2, 3):
        for l in range(q, q + 3):
            for m in (2, 3):
                p, _ = partition_pda(m, q)
                k = m * (q + l - 1)
                scheme = build_scheme(p, k, l)
                want = Fraction(2 * (q - 1) ** 2, q + l - 1)
                assert compressed_load(scheme) == want
                assert r_cor2(q, l) == want
