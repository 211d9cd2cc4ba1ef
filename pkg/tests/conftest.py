import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from ribbon_genus.presentation import Presentation  # noqa: E402

# derandomized: every run draws the same examples
settings.register_profile(
    "repo", derandomize=True, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")

GENERATOR_NAMES = ("a", "b", "c", "d")


@st.composite
def presentations(draw, max_gens=3, max_rels=3, max_len=5, max_total=8, min_len=1):
    """Random raw presentations; words are not freely reduced on purpose."""
    n = draw(st.integers(1, max_gens))
    k = draw(st.integers(0, max_rels))
    budget = max_total
    rels = []
    for _ in range(k):
        if budget < min_len:
            break
        length = draw(st.integers(min_len, min(max_len, budget)))
        budget -= length
        word = draw(st.lists(st.tuples(st.integers(0, n - 1), st.sampled_from((1, -1))),
                             min_size=length, max_size=length))
        rels.append(tuple(word))
    return Presentation(GENERATOR_NAMES[:n], tuple(rels))


@st.composite
def covering_presentations(draw, **kw):
    """Presentations in which every generator occurs."""
    p = draw(presentations(**kw))
    used = {g for r in p.relators for g, _ in r}
    missing = [g for g in range(p.n) if g not in used]
    if missing:
        p = Presentation(p.generators, p.relators + (tuple((g, 1) for g in missing),))
    return p


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
