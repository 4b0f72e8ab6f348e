import numpy as np
import pytest

from zccs import ConstructionParams, HFunction, generate_zccs, parse_gbf_expr

ACCEPTANCE_LINES: list[str] = []


def brute_correlation(S, d1, d2, tau):
    """Direct complex sum over rows, independent of zccs.verify."""
    total = 0j
    for a, b in zip(S.codes[d1].exponents, S.codes[d2].exponents):
        x = np.exp(2j * np.pi * a / S.sigma)
        y = np.exp(2j * np.pi * b / S.sigma)
        n = len(x)
        for i in range(n):
            j = i - tau
            if 0 <= j < n:
                total += x[i] * np.conj(y[j])
    return total


def brute_is_zccs(S, Z, tol=1e-9):
    K, N = S.params.K, S.params.N
    for d1 in range(len(S)):
        for d2 in range(len(S)):
            for tau in range(-(Z - 1), Z):
                v = brute_correlation(S, d1, d2, tau)
                want = K * N if (d1 == d2 and tau == 0) else 0
                if abs(v - want) > tol * K * N:
                    return False
    return True


@pytest.fixture(scope="session")
def ref48_params():
    g = parse_gbf_expr("y1*y2+y0", 2, 3)
    h = HFunction(2, (0, 0, 0, 1))  # h(v0, v1) = v0 v1
    return ConstructionParams(2, g, 1, (0,), 1, (3, 2, 2), (2, 1, 1), h)


@pytest.fixture(scope="session")
def ref48_set(ref48_params):
    return generate_zccs(ref48_params)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
