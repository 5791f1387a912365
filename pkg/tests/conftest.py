import pytest
from hypothesis import settings, HealthCheck, strategies as st

from iqflag.symalg import RatFun, SignedPerm, XLaurent

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def X(i, d, e=1):
    return RatFun(XLaurent.var(i, d, e))


def Q(e, d):
    return RatFun(XLaurent.qpow(e, d))


@st.composite
def laurent(draw, d, terms=3, span=2):
    k = draw(st.integers(1, terms))
    out = XLaurent(d)
    for _ in range(k):
        qe = draw(st.integers(-span, span))
        xe = [draw(st.integers(-span, span)) for _ in range(d)]
        c = draw(st.integers(-3, 3).filter(bool))
        out = out + XLaurent.monomial(qe, xe, c)
    return out


@st.composite
def signed_perms(draw, d):
    perm = draw(st.permutations(list(range(d))))
    signs = [draw(st.booleans()) for _ in range(d)]
    return SignedPerm(perm, signs)


@pytest.fixture
def x2():
    return X(1, 2), X(2, 2)


# criterion number -> (ok, detail), filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
