import pytest

from causalbounds import analyze_graph, optimize_effect

IV_TEXT = """\
node Z side=left
node X
node Y
edge Z -> X
edge X -> Y
"""

IV_FLAGGED_TEXT = """\
node Z side=left
node X exposure
node Y outcome
edge Z -> X
edge X -> Y
"""

IV_MONOTONE_TEXT = """\
node Z side=left
node X
node Y
edge Z -> X monotone
edge X -> Y
"""

MEDIATION_TEXT = """\
node X side=left
node Y
node M
edge X -> Y
edge X -> M
edge M -> Y
"""

MENDELIAN_TEXT = """\
node Z side=left card=3
node X
node Y
edge Z -> X
edge X -> Y
"""

RIGHT_ONLY_TEXT = """\
node X
node Y
edge X -> Y
"""

RISKDIFF = "p{Y(X = 1) = 1} - p{Y(X = 0) = 1}"

CDE0 = "p{Y(M = 0, X = 1) = 1} - p{Y(M = 0, X = 0) = 1}"
CDE1 = "p{Y(M = 1, X = 1) = 1} - p{Y(M = 1, X = 0) = 1}"
NDE0 = "p{Y(M(X = 0), X = 1) = 1} - p{Y(M(X = 0), X = 0) = 1}"
NDE1 = "p{Y(M(X = 1), X = 1) = 1} - p{Y(M(X = 1), X = 0) = 1}"

MEDIATION_VALUES = {
    "p00_0": "1426/1888", "p10_0": "97/1888", "p01_0": "332/1888", "p11_0": "33/1888",
    "p00_1": "1081/1918", "p10_1": "86/1918", "p01_1": "669/1918", "p11_1": "82/1918",
}

MENDELIAN_VALUES = {
    "p00_0": 0.83, "p00_1": 0.88, "p00_2": 0.72,
    "p10_0": 0.11, "p10_1": 0.05, "p10_2": 0.20,
    "p01_0": 0.05, "p01_1": 0.06, "p01_2": 0.05,
    "p11_0": 0.01, "p11_1": 0.01, "p11_2": 0.03,
}


@pytest.fixture(scope="session")
def iv_problem():
    return analyze_graph(IV_TEXT, None, RISKDIFF)


@pytest.fixture(scope="session")
def iv_bounds(iv_problem):
    return optimize_effect(iv_problem)


@pytest.fixture(scope="session")
def iv_monotone_problem():
    return analyze_graph(IV_MONOTONE_TEXT, None, RISKDIFF)


@pytest.fixture(scope="session")
def iv_monotone_bounds(iv_monotone_problem):
    return optimize_effect(iv_monotone_problem)


@pytest.fixture(scope="session")
def mediation_problem():
    return analyze_graph(MEDIATION_TEXT, None, CDE0)


@pytest.fixture(scope="session")
def right_only_problem():
    return analyze_graph(RIGHT_ONLY_TEXT, None, "p{Y(X = 1) = 1}")
