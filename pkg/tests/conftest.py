import zlib

import numpy as np
import pytest

from wcauchy import ScanPolicy, SpaceConfig, make_weight_family

ACCEPTANCE = {}


@pytest.fixture
def rng(request):
    # one stream per test, stable across runs and test ordering
    return np.random.default_rng(zlib.crc32(request.node.name.encode()))


@pytest.fixture(scope="session")
def fam():
    cache = {}

    def get(family, n_max=2048):
        key = (family, n_max)
        if key not in cache:
            cache[key] = make_weight_family(family, n_max)
        return cache[key]
    return get


@pytest.fixture(scope="session")
def scan():
    return ScanPolicy()


def space(p=2.0, beta="one", delta="one", D=16, n_max=None):
    return SpaceConfig.build(p, beta, delta, D, n_max)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, line = ACCEPTANCE[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {n:2d}. {line}")
