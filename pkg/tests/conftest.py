import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=30,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def solids():
    """name -> (n, edges, closure) for every catalog solid."""
    from cohconf import catalog
    from cohconf.wl import wl_close_graph

    out = {}
    for name in catalog.SOLIDS:
        n, edges = catalog.load_graph(name)
        out[name] = (n, list(edges), wl_close_graph(edges, n))
    return out


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "REPORT", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.REPORT:
        terminalreporter.write_line(line)
