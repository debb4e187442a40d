"""One test per acceptance criterion; each prints a PASS/FAIL line with timing."""

import pytest

from khspan.verify import CHECKS, run_check

CRITERIA = [
    ("figure8", "figure-8 worked example"),
    ("filtration", "figure-8 filtration"),
    ("thistlethwaite", "tree expansion equals state sum"),
    ("euler", "graded Euler characteristic"),
    ("direct", "direct incidence patterns"),
    ("collapse", "tree complex homology and direct incidences"),
    ("spectral", "spectral sequence pages"),
    ("mutation", "Kinoshita-Terasaka and Conway"),
    ("control", "figure-8 versus trefoil"),
    ("properties", "property suite"),
    ("probe", "conjecture evidence on mutant pairs"),
]


def test_every_check_is_listed():
    assert [name for name, _ in CRITERIA] == list(CHECKS)


@pytest.mark.parametrize("name, label", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(name, label, capsys):
    result = run_check(name)
    with capsys.disabled():
        print(f"\n{result.line()}  [{label}]")
    assert result.passed, result.detail
