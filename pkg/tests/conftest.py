import pytest
from hypothesis import HealthCheck, settings, strategies as st

from paramspace.words import GRAPH_ALPHABET, POSET_ALPHABET, parse_word

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def words(draw, alphabet, k=None, min_len=0, max_len=8, max_k=3):
    """A valid word: first occurrences of the parameters in order."""
    letters = list(alphabet)
    n = draw(st.integers(min_len, max_len))
    if k is None:
        k = draw(st.integers(0, min(max_k, n)))
    if k > n:
        n = k
    firsts = sorted(draw(st.lists(st.integers(0, n - 1), min_size=k, max_size=k, unique=True))) if k else []
    out, nxt = [], 0
    for p in range(n):
        if nxt < k and p == firsts[nxt]:
            out.append(nxt)
            nxt += 1
        else:
            out.append(draw(st.sampled_from(letters + list(range(nxt)))))
    return tuple(out)


@pytest.fixture
def gw():
    return lambda text: parse_word(text, GRAPH_ALPHABET)


@pytest.fixture
def pw():
    return lambda text: parse_word(text, POSET_ALPHABET)
