import sys
from fractions import Fraction

from hypothesis import settings, strategies as st

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


def rationals(bound: int = 30):
    return st.builds(Fraction, st.integers(-bound, bound), st.integers(1, 12))


def rational_vectors(size: int, nonzero_first: bool = False):
    vec = st.lists(rationals(), min_size=size, max_size=size)
    if nonzero_first:
        vec = vec.filter(lambda v: v[0] != 0)
    return vec


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
