import itertools
from fractions import Fraction as Fr

import pytest

from zccs.expr import parse_gbf_expr
from zccs.gbf import GBF
from zccs.pbf import (
    PBF,
    ConstructionParams,
    HFunction,
    bits_of,
    build_lambda_member,
    build_m_lambda,
    build_n_lambda,
    build_omega_member,
    check_h_condition,
    eval_pbf,
    eval_pbf_phase,
    phase_table,
)


def mono(*vs):
    return frozenset(vs)


def test_derived_quantities(ref48_params):
    P = ref48_params
    assert (P.total_vars, P.sigma, P.K, P.N, P.Z, P.M_total) == (7, 6, 4, 96, 8, 48)
    assert list(P.lambdas())[:4] == [(0, 0, 0), (1, 0, 0), (2, 0, 0), (0, 1, 0)]
    assert len(list(P.lambdas())) == 12


def test_m_lambda_example(ref48_params):
    M = build_m_lambda(ref48_params, (1, 0, 0))
    assert M == PBF(7, {mono(1, 2): 1, mono(0): 1, mono(3): Fr(2, 3), mono(4): Fr(4, 3)})
    M = build_m_lambda(ref48_params, (2, 1, 1))
    assert M == PBF(7, {mono(1, 2): 1, mono(0): 1, mono(3): Fr(4, 3), mono(4): Fr(8, 3),
                        mono(5): 1, mono(6): 1})
    assert build_m_lambda(ref48_params, (0, 0, 0)) == PBF.from_gbf(ref48_params.g, 7)


def test_lambda_range(ref48_params):
    with pytest.raises(ValueError):
        build_m_lambda(ref48_params, (3, 0, 0))
    with pytest.raises(ValueError):
        build_n_lambda(ref48_params, (0, 2, 0))
    with pytest.raises(ValueError):
        build_m_lambda(ref48_params, (0, 0))


def test_n_lambda_example(ref48_params):
    N = build_n_lambda(ref48_params, (0, 0, 0))
    # (1-y1)(1-y2) + (1-y0) = 2 - y0 - y1 - y2 + y1 y2, mod 2
    assert N == PBF(7, {mono(1, 2): 1, mono(0): 1, mono(1): 1, mono(2): 1})


def test_n_and_m_share_tail(ref48_params):
    P = ref48_params
    for lam in P.lambdas():
        M, N = build_m_lambda(P, lam), build_n_lambda(P, lam)
        for k in range(3, 7):
            assert M.coeff(k) == N.coeff(k)
        for y in itertools.product((0, 1), repeat=7):
            flipped = tuple(1 - b for b in y[:3]) + y[3:]
            assert (eval_pbf(N, y) - eval_pbf(M, flipped)) % 2 == 0


def test_omega_examples(ref48_params):
    P = ref48_params
    base = build_m_lambda(P, (0, 0, 0))
    assert build_omega_member(P, 0, (0, 0, 0), (0,), 0) == base
    # (v0 + r0) = 2 contributes 2 * (q/2) y0 = 0 mod q
    assert build_omega_member(P, 1, (0, 0, 0), (1,), 0) == base
    with_vn = build_omega_member(P, 0, (0, 0, 0), (0,), 1)
    assert with_vn == base + PBF(7, {mono(1): 1})


def test_lambda_member_examples(ref48_params):
    P = ref48_params
    N0 = build_n_lambda(P, (0, 0, 0))
    assert build_lambda_member(P, 0, (0, 0, 0), (0,), 0) == (N0 + PBF(7, {mono(1): 1})).reduce_mod(2)
    assert build_lambda_member(P, 1, (0, 0, 0), (1,), 0) == (N0 + PBF(7, {mono(1): 1})).reduce_mod(2)


def test_lambda_member_constant_offset():
    g = parse_gbf_expr("2*y1*y2", 4, 3)
    P = ConstructionParams(4, g, 1, (0,), 1)
    member = build_lambda_member(P, 0, (), (1,), 1)
    N = build_n_lambda(P, ())
    # (q/2)(1 - y0) = 2 - 2 y0: the 2 lands on the empty monomial
    assert member.coeff() == (N.coeff() + 2) % 4
    assert member.coeff(0) == (N.coeff(0) - 2) % 4


def test_member_range_checks(ref48_params):
    with pytest.raises(ValueError):
        build_omega_member(ref48_params, 2, (0, 0, 0), (0,), 0)
    with pytest.raises(ValueError):
        build_omega_member(ref48_params, 0, (0, 0, 0), (0, 1), 0)


def test_eval_pbf_phase():
    P = PBF(7, {mono(1, 2): 1, mono(0): 1, mono(3): Fr(2, 3), mono(4): Fr(4, 3)})
    # value 2/3 at y3 = 1 -> omega_2^(2/3) = exp(2j pi/3) -> exponent 2 of 6
    assert eval_pbf(P, (0, 0, 0, 1, 0, 0, 0)) == Fr(2, 3)
    assert eval_pbf_phase(P, (0, 0, 0, 1, 0, 0, 0), 2, 6) == 2
    assert eval_pbf_phase(PBF(3), (1, 0, 1), 2, 2) == 0
    assert eval_pbf_phase(PBF.from_gbf(GBF(2, 1, cst=1)), (0,), 2, 2) == 1
    with pytest.raises(ValueError):
        eval_pbf_phase(P, (0, 0, 0, 1, 0, 0, 0), 2, 2)


def test_phase_table_matches_pointwise(ref48_params):
    P = ref48_params
    member = build_omega_member(P, 1, (2, 1, 0), (1,), 1)
    table = phase_table(member, 2, 6)
    for idx in range(2**7):
        assert table[idx] == eval_pbf_phase(member, bits_of(idx, 7), 2, 6)


def test_phase_factorises(ref48_params):
    """phase = g-part phase + sum_i lambda_i * i_i * sigma / p_i  (mod sigma)."""
    P = ref48_params
    sigma = P.sigma
    for r, lam, v, vn in itertools.product(range(2), P.lambdas(), [(0,), (1,)], (0, 1)):
        member = build_omega_member(P, r, lam, v, vn)
        table = phase_table(member, P.q, sigma)
        for idx in range(2**7):
            j = idx & 7
            digits = (idx >> 3) & 3, (idx >> 5) & 1, (idx >> 6) & 1
            extra = sum(x * d * sigma // p for x, d, p in zip(lam, digits, P.primes))
            assert table[idx] == (table[j] + extra) % sigma


def test_phases_integral_for_lcm():
    g = parse_gbf_expr("2*y0*y1", 4, 2)
    P = ConstructionParams(4, g, 0, (), 0, (3, 5), (2, 3))
    assert P.sigma == 60
    for lam in P.lambdas():
        for vn in (0, 1):
            phase_table(build_omega_member(P, 0, lam, (), vn), 4, 60)
            phase_table(build_lambda_member(P, 0, lam, (), vn), 4, 60)


def test_integer_sum_equals_xor():
    g = parse_gbf_expr("2*y3*y4 + 3*y1*y2 + y0", 4, 5)
    P = ConstructionParams(4, g, 3, (0, 1, 2), 3, (3,))
    for r in range(8):
        for v in itertools.product((0, 1), repeat=3):
            x = tuple(a ^ b for a, b in zip(v, bits_of(r, 3)))
            for vn in (0, 1):
                a = phase_table(build_omega_member(P, r, (1,), v, vn), 4, P.sigma)
                b = phase_table(build_omega_member(P, 0, (1,), x, vn), 4, P.sigma)
                assert (a == b).all()
                a = phase_table(build_lambda_member(P, r, (1,), v, vn), 4, P.sigma)
                b = phase_table(build_lambda_member(P, 0, (1,), x, vn), 4, P.sigma)
                assert (a == b).all()


def test_h_condition():
    assert check_h_condition(HFunction(2, (0, 1, 1, 0))).ok
    assert check_h_condition(HFunction(2, (1, 1))).c == 0
    rep = check_h_condition(HFunction(4, (0, 2, 2, 0)))
    assert rep.ok and rep.c == 0
    assert check_h_condition(HFunction(4, (1, 3, 3, 1))).c == 1
    assert not check_h_condition(HFunction(4, (0, 1, 0, 1))).ok


def test_h_path_form():
    assert HFunction.from_path(2, (0, 1)).table == (0, 0, 0, 1)
    assert HFunction.from_path(2, (1, 0)).table == (0, 0, 0, 1)
    h = HFunction.from_path(4, (0, 1), (1, 0), 3)
    assert h.table == (3, 0, 3, 2)
    assert h((1,), 1) == 2
    with pytest.raises(ValueError):
        HFunction.from_path(2, (0, 0))
    with pytest.raises(ValueError):
        HFunction(2, (0, 1, 0))


def test_params_validation():
    g = parse_gbf_expr("y1*y2+y0", 2, 3)
    with pytest.raises(ValueError, match="2\\*2"):
        ConstructionParams(2, g, 1, (0,), 1, (4,))
    with pytest.raises(ValueError):
        ConstructionParams(2, g, 1, (0,), 1, (5,), (2,))
    with pytest.raises(ValueError):
        ConstructionParams(2, g, 1, (0,), 1, (2,), (1,), strict=True)
    ConstructionParams(2, g, 1, (0,), 1, (3,), (2,), strict=True)
    with pytest.raises(ValueError):
        ConstructionParams(2, g, 1, (1,), 0)  # path check fails
    with pytest.raises(ValueError):
        ConstructionParams(2, g, 1, (0,), 1, h=HFunction(2, (0, 1)))
    with pytest.raises(ValueError):
        ConstructionParams(4, g, 1, (0,), 1)
    assert ConstructionParams(2, g, 1, (0,), 1, (7, 2)).widths == (3, 1)
