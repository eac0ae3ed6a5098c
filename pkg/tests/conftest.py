import logging

import pytest

from config.run_config import RunConfig
from tests.worked_examples import N15_BLOCKS, N15_OVERLAPS


@pytest.fixture(autouse=True)
def reset_root_logger():
    """The CLI binds a handler to the captured stderr; drop it after each test"""
    yield
    root = logging.getLogger()
    for handler in root.handlers[:]:
        if type(handler) is logging.StreamHandler:
            root.removeHandler(handler)
    root.setLevel(logging.WARNING)


@pytest.fixture
def make_config():
    """RunConfig factory with exact-mode defaults"""
    def _make(**overrides) -> RunConfig:
        values = {
            "n": 15,
            "base": 2,
            "blocks": N15_BLOCKS,
            "overlaps": N15_OVERLAPS,
            "shots": 0,
            "top_k": 2,
            "max_combos": 2,
            "seed": 7,
            "backend": "analytic",
            "retries": 1,
        }
        values.update(overrides)
        return RunConfig(**values)
    return _make


@pytest.fixture
def cli_args():
    """argv builder for the factoring command"""
    def _args(n, base, blocks, overlaps, **flags):
        argv = ["--n", str(n), "--blocks", blocks, "--overlaps", overlaps]
        if base is not None:
            argv += ["--base", str(base)]
        for name, value in flags.items():
            option = "--" + name.replace("_", "-")
            if value is True:
                argv.append(option)
            else:
                argv += [option, str(value)]
        return argv
    return _args
