"""Shared fixtures; the plain builders live in helpers.py."""

import pytest

from helpers import make_instance


@pytest.fixture
def small_problem():
    problem, _ = make_instance(n=30, d=5, seed=1)
    return problem
