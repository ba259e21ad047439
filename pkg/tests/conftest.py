import numpy as np
import pytest

from fracsusy import CyclicSpec, LinearSpec, TabulatedSpec


def random_cyclic(k, seed=0):
    rng = np.random.default_rng(seed)
    return CyclicSpec(rng.uniform(0.5, 2.0, k))


def random_tabulated(k, n_max, seed=0):
    rng = np.random.default_rng(seed)
    return TabulatedSpec(rng.uniform(0.0, 2.0, (k, n_max + k + 1)))


LINEAR_SPECS = [LinearSpec(0.0, 1.0), LinearSpec(2.0, 5.0), LinearSpec(-2.0, 5.0), LinearSpec(-2.0, 41.0)]


def spec_sweep(k, n_max=24, seed=0):
    return [*LINEAR_SPECS, random_cyclic(k, seed), random_tabulated(k, n_max, seed)]


@pytest.fixture(params=[2, 3, 4, 5])
def k(request):
    return request.param


ACCEPTANCE_LINES = []


@pytest.fixture
def record_criterion():
    """Record one ``CRITERION n: PASS|FAIL detail`` line and return the flag."""

    def record(number, ok, detail):
        line = f"CRITERION {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
