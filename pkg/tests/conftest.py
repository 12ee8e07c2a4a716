import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rtk.corpus import pipeline_corpus, random_involution_pair  # noqa: E402
from rtk.pipeline import PipelineOptions, run_pipeline  # noqa: E402

RANDOM_SEED = 20261015
_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n = mark.args[0]
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        detail = getattr(item, "criterion_detail", "")
        _CRITERIA[n] = ("PASS" if rep.passed else "FAIL", item.name, detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        status, name, detail = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {name}  {detail}".rstrip())


@pytest.fixture
def record(request):
    """Attach a one-line detail to the criterion summary and echo it."""
    def _record(text: str) -> None:
        request.node.criterion_detail = text
        print(text)
    return _record


@pytest.fixture(scope="session")
def random_pairs():
    rng = random.Random(RANDOM_SEED)
    return [random_involution_pair(rng, max_vertices=8) for _ in range(100)]


class _PipelineCache:
    def __init__(self):
        self.runs = {}

    def get(self, name: str, radius: int):
        key = (name, radius)
        if key not in self.runs:
            pair = pipeline_corpus()[name]
            self.runs[key] = run_pipeline(pair, PipelineOptions(radius=radius), name=name)
        return self.runs[key]


@pytest.fixture(scope="session")
def pipelines():
    return _PipelineCache()
