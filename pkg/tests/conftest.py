import os

import pytest


@pytest.fixture(autouse=True)
def _run_from_tests_dir(monkeypatch):
    """tests reference fixtures as data/..., relative to this directory"""
    monkeypatch.chdir(os.path.dirname(os.path.abspath(__file__)))
