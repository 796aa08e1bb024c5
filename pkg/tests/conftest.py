import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from shinglejoin import ShingleProfile  # noqa: E402


def profile(doc_id, k, entries):
    return ShingleProfile.from_entries(doc_id, k, entries)


@pytest.fixture
def adversarial_profiles():
    """One shingle repeated 1000 times vs two single shingles sharing it."""
    heavy = profile("heavy", 2, [("aa", 1000)])
    light = profile("light", 2, [("aa", 1), ("ab", 1)])
    return [heavy, light]


@pytest.fixture
def adversarial_corpus(tmp_path):
    root = tmp_path / "adversarial"
    root.mkdir()
    (root / "heavy.txt").write_text("a" * 1001)
    (root / "light.txt").write_text("aab")
    return root


small_texts = st.text(alphabet="abcd ", max_size=40)


@st.composite
def profiles_strategy(draw, min_size=0, max_size=12, k=2):
    texts = draw(st.lists(st.text(alphabet="abc", max_size=30), min_size=min_size,
                          max_size=max_size))
    from shinglejoin import RunConfig, build_profile
    config = RunConfig(k=k, normalize_whitespace=False)
    return [build_profile(f"d{i:02d}", t, config) for i, t in enumerate(texts)]


_acceptance_results = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    key = (marker.args[0], marker.args[1])
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = "SKIP" if report.skipped else ("PASS" if report.passed else "FAIL")
        previous = _acceptance_results.get(key, [])
        _acceptance_results[key] = previous + [(item.name, status)]


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), outcomes in sorted(_acceptance_results.items()):
        statuses = {s for _, s in outcomes}
        overall = "FAIL" if "FAIL" in statuses else ("PASS" if "PASS" in statuses else "SKIP")
        detail = ", ".join(f"{name}={s}" for name, s in outcomes if s != "PASS")
        line = f"AC{number} {overall}: {title}"
        terminalreporter.write_line(line + (f" ({detail})" if detail else ""))
