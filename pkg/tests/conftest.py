import numpy as np
import pytest

from entangle.chains import Chain, RngStream


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_pair(gen):
    p = gen.random((4, 3))
    return p[:2], p[2:]


def rotation(gen):
    q, r = np.linalg.qr(gen.standard_normal((3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def square(z=0.0, size=1.0, offset=(0.0, 0.0)):
    x, y = offset
    v = [(x, y, z), (x + size, y, z), (x + size, y + size, z), (x, y + size, z)]
    return Chain(np.array(v), closed=True)


def stream(*key, seed=7):
    return RngStream(seed, key)


DESK_SEED = 42


@pytest.fixture(scope="session")
def desk_run():
    from entangle.ensemble import reproduce_all

    return reproduce_all("desk", seed=DESK_SEED, threads=1)


@pytest.fixture(scope="session")
def desk_cli_dir(tmp_path_factory):
    from entangle.cli import main

    out = tmp_path_factory.mktemp("desk")
    assert main(["reproduce", "--scale", "desk", "--seed", str(DESK_SEED), "--threads", "4", "--out", str(out)]) == 0
    return out


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
