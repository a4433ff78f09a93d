"""Runs the docstring examples embedded in the library modules."""
from __future__ import annotations

import doctest

import pytest

import flab.combinatorics
import flab.free_lie
import flab.graded_lie
import flab.rings


@pytest.mark.parametrize("module", [
    flab.rings,
    flab.combinatorics,
    flab.free_lie,
    flab.graded_lie,
], ids=lambda m: m.__name__)
def test_module_doctests(module):
    result = doctest.testmod(module)
    assert result.attempted > 0
    assert result.failed == 0
