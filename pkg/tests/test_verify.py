import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zccs.exactnum import CycloSum
from zccs.expr import parse_gbf_expr
from zccs.seqgen import CodeSet, CodeSetParams, PhaseSequence, generate_ccc
from zccs.verify import (
    Optimality,
    accf,
    accf_complex,
    check_ccc,
    check_optimality,
    check_zccs,
    correlate_fft,
    measure_zcz,
)

from .conftest import brute_correlation


def seqs(max_len=12):
    @st.composite
    def build(draw):
        sigma = draw(st.sampled_from([2, 4, 6, 12]))
        n = draw(st.integers(1, max_len))
        a = draw(st.lists(st.integers(0, sigma - 1), min_size=n, max_size=n))
        b = draw(st.lists(st.integers(0, sigma - 1), min_size=n, max_size=n))
        return PhaseSequence(sigma, a), PhaseSequence(sigma, b)
    return build()


def test_accf_example():
    x, y = PhaseSequence(2, (0, 0)), PhaseSequence(2, (0, 1))
    assert complex(accf(x, y, 1)) == pytest.approx(1)
    assert accf(x, y, 1).integer_value() == 1
    assert accf(x, x, 0).integer_value() == 2
    assert accf(x, y, 2) == CycloSum(2)
    with pytest.raises(ValueError):
        accf(x, PhaseSequence(4, (0, 0)), 0)


@settings(max_examples=100, deadline=None)
@given(seqs())
def test_accf_symmetry(pair):
    x, y = pair
    for tau in range(-len(x) + 1, len(x)):
        assert accf(x, y, tau) == accf(y, x, -tau).conjugate()
        assert complex(accf(x, y, tau)) == pytest.approx(accf_complex(x, y, tau), abs=1e-9)


@settings(max_examples=100, deadline=None)
@given(seqs(40))
def test_fft_matches_direct(pair):
    x, y = pair
    n = len(x)
    c = correlate_fft(x, y)
    direct = [accf_complex(x, y, t) for t in range(-(n - 1), n)]
    assert np.allclose(c, direct, atol=1e-9)
    # Parseval-type identity: sum over shifts of A_x(tau) = |sum x|^2
    a = correlate_fft(x, x)
    assert abs(a.sum() - abs(x.to_complex().sum()) ** 2) < 1e-8


def test_optimality():
    assert check_optimality(48, 4, 96, 8) is Optimality.OPTIMAL
    assert check_optimality(47, 4, 96, 8) is Optimality.SUBOPTIMAL
    assert check_optimality(49, 4, 96, 8) is Optimality.INVALID
    assert check_optimality(4, 4, 8, 8) is Optimality.OPTIMAL
    with pytest.raises(ValueError):
        check_optimality(1, 1, 1, 0)


def test_ref48_engines(ref48_set):
    S = ref48_set
    for engine in ("exact", "float"):
        rep = check_zccs(S, 8, engine=engine)
        assert rep.passed and rep.peak_value == 384, rep.summary()
        assert not check_zccs(S, 9, engine=engine).passed
    assert check_zccs(S, 8, ordered=False, jobs=2).passed


def test_monotone_in_z(ref48_set):
    results = [check_zccs(ref48_set, z).passed for z in range(1, 12)]
    assert results == sorted(results, reverse=True)
    assert measure_zcz(ref48_set) == 8


def test_violations_match_brute(ref48_set):
    rep = check_zccs(ref48_set, 9)
    assert rep.violations
    for v in rep.violations[:25]:
        assert v.tau in (8, -8)
        assert abs(brute_correlation(ref48_set, v.d1, v.d2, v.tau)) == pytest.approx(v.magnitude)


def test_negative_controls(ref48_set):
    E = ref48_set.exponents.copy()
    E[5, 2, 17] = (E[5, 2, 17] + 1) % 6
    bad = ref48_set.with_exponents(E)
    for engine in ("exact", "float"):
        rep = check_zccs(bad, 8, engine=engine)
        assert not rep.passed
        assert all(5 in (v.d1, v.d2) for v in rep.violations)
    assert measure_zcz(bad) < 8


def test_ccc_checks():
    g = parse_gbf_expr("y0*y1", 2, 2)
    S = generate_ccc(g, 0, (), 0)
    assert check_ccc(S).passed
    dup = CodeSet((S.codes[0], S.codes[0]), S.params)
    rep = check_ccc(dup)
    assert not rep.passed
    assert any(v.kind == "corr" and (v.d1, v.d2) == (0, 1) for v in rep.violations)
    one = CodeSet(S.codes[:1], CodeSetParams(1, 2, 4, 4, 2))
    rep = check_ccc(one)
    assert not rep.passed and rep.violations[0].kind == "shape"


def test_z_range(ref48_set):
    with pytest.raises(ValueError):
        check_zccs(ref48_set, 0)
    with pytest.raises(ValueError):
        check_zccs(ref48_set, 97)
    with pytest.raises(ValueError):
        check_zccs(ref48_set, 8, engine="magic")
