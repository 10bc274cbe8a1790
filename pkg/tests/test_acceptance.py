"""One pass/fail line per acceptance criterion, at exact (zero) tolerance.

Every comparison inside the checks is exact rational arithmetic; there are
no tolerances to tune.  A failing criterion lists its failing lines verbatim
in the assertion message.
"""

import pytest

from logfano.acceptance import CHECK_IDS, format_line, run_checks, summarize


@pytest.fixture(scope="module")
def results():
    lines = run_checks()
    return lines, summarize(lines)


def test_every_criterion_reports(results):
    lines, summary = results
    assert tuple(summary) == CHECK_IDS
    assert all(isinstance(ln.ok, bool) for ln in lines)


@pytest.mark.parametrize("check_id", CHECK_IDS)
def test_criterion(check_id, results):
    lines, summary = results
    failing = [format_line(ln) for ln in lines if ln.check == check_id and not ln.ok]
    assert summary[check_id], "\n".join(failing)
