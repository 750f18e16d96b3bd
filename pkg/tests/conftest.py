from __future__ import annotations

import pytest

from graypaste.compose import parse_labelling
from graypaste.corpus import fixed_schemes, load_data, random_corpus
from graypaste.rewriting import RewriteSystem


@pytest.fixture(scope="session")
def fixed():
    return fixed_schemes()


@pytest.fixture(scope="session")
def corpus():
    return random_corpus(200, seed=0, max_faces=7)


@pytest.fixture(scope="session")
def intro_labels():
    return parse_labelling(load_data("intro_labels"))


@pytest.fixture
def system(fixed):
    return lambda name: RewriteSystem.from_scheme(fixed[name])
