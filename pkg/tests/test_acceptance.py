"""One test per acceptance criterion; a summary line per criterion is printed at the end."""

import pytest

from sfgroups import acceptance as acc


def check(record, result):
    record(result)
    print(result.line())
    assert result.passed, result.detail


def test_criterion_1_order16(record_criterion):
    check(record_criterion, acc.criterion_enumeration(1, 2, 4, 1800))


def test_criterion_2_order27(record_criterion):
    check(record_criterion, acc.criterion_enumeration(2, 3, 3, 3600))


def test_criterion_3_order32(record_criterion, request):
    if not request.config.getoption("--long-run"):
        record_criterion(acc.CriterionResult(3, "order 2^5 classification", None, "needs --long-run", 0.0))
        pytest.skip("order 32 needs --long-run")
    check(record_criterion, acc.criterion_enumeration(3, 2, 5, 86_400, long_run=True))


def test_criterion_4_census(record_criterion):
    check(record_criterion, acc.criterion_census())


def test_criterion_5_mid(record_criterion):
    check(record_criterion, acc.criterion_mid())


def test_criterion_6_properties(record_criterion):
    check(record_criterion, acc.criterion_properties())


def test_criterion_7_characters(record_criterion):
    check(record_criterion, acc.criterion_characters())


def test_criterion_8_zv(record_criterion):
    check(record_criterion, acc.criterion_zv())


def test_criterion_9_isomorphism(record_criterion):
    check(record_criterion, acc.criterion_isomorphism())
