import pytest

from brandrank import kernels


@pytest.fixture(params=["numba", "numpy"])
def backend(request, monkeypatch):
    """Run a test once per kernel backend."""
    if request.param == "numpy":
        monkeypatch.setattr(kernels, "use_numba", lambda: False)
    elif not kernels.use_numba():
        pytest.skip("numba unavailable")
    return request.param


@pytest.fixture(scope="session")
def fixture200(tmp_path_factory):
    """The 200-node synthetic community written as CSVs."""
    from brandrank.synthetic import SyntheticSpec, generate_synthetic, write_community

    out = tmp_path_factory.mktemp("fixture200")
    write_community(out, generate_synthetic(SyntheticSpec(node_count=200, planted_influencer_count=3,
                                                          seed=5)))
    return out


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
