import os

import pytest
from hypothesis import HealthCheck, settings

from flipsym.algebra import Z, rf_var
from flipsym.curve import MobiusMap, default_curve, validate_curve

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], print_blob=True
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def extra_curves():
    z = rf_var(Z)
    return {
        # rational x with a finite pole, two ramification points
        "joukowski": validate_curve(z + 1 / z, MobiusMap(-1, 3, 0)),
        # iota with a finite pole
        "square-mobius": validate_curve(z * z, MobiusMap(1, 3, 2)),
        # degree 3, sigma only as a series
        "cubic": validate_curve(z ** 3 - 3 * z, MobiusMap(-1, 5, 0)),
    }


@pytest.fixture(scope="session")
def curve():
    return default_curve()


@pytest.fixture(scope="session")
def curves():
    return extra_curves()


# acceptance report: one line per criterion in the terminal summary

_ACCEPTANCE: dict = {}


@pytest.fixture(scope="session")
def acceptance():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")
