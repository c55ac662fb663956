import random

import pytest
from hypothesis import strategies as st

from mccool.freelie import Alphabet, LieElement, abc_alphabet, x_alphabet
from mccool.words import lyndon_tuples


def lie_elements(alphabet: Alphabet, degree: int, max_terms: int = 4, max_coeff: int = 4):
    """Hypothesis strategy for sparse homogeneous elements of fixed degree."""
    words = lyndon_tuples(alphabet.size, degree)
    term = st.tuples(st.sampled_from(words), st.integers(-max_coeff, max_coeff))
    return st.lists(term, min_size=0, max_size=max_terms).map(
        lambda terms: LieElement(
            alphabet,
            degree,
            _accumulate(terms),
        )
    )


def _accumulate(terms):
    coeffs = {}
    for word, c in terms:
        coeffs[word] = coeffs.get(word, 0) + c
    return {w: c for w, c in coeffs.items() if c}


def random_lie_element(rng: random.Random, alphabet, degree, terms=3, spread=3):
    words = lyndon_tuples(alphabet.size, degree)
    coeffs = {}
    for _ in range(terms):
        w = rng.choice(words)
        coeffs[w] = coeffs.get(w, 0) + rng.randint(-spread, spread)
    return LieElement(alphabet, degree, {w: c for w, c in coeffs.items() if c})


@pytest.fixture
def abc():
    return abc_alphabet()


@pytest.fixture
def x3():
    return x_alphabet(3)


@pytest.fixture
def rng():
    return random.Random(20240817)
