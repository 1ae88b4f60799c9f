# Copyright (c) 2020, Vercer Ltd. Rights set out in LICENCE.txt

from hypothesis import settings
from hypothesis import strategies as st

from soloist import formula as f
from soloist.constants import Comparator
from soloist.trace import Trace, TraceEntry


# oracle evaluation is quadratic, so single examples can be slow
settings.register_profile("soloist", deadline=None, max_examples=100)
settings.load_profile("soloist")

ATOMS = ["a0", "a1", "a2", "a3"]


@st.composite
def traces(draw, max_length=40, atoms=ATOMS, max_gap=10):
    gaps = draw(st.lists(st.integers(min_value=1, max_value=max_gap), min_size=1, max_size=max_length))
    entries = []
    timestamp = 0
    for position, gap in enumerate(gaps, start=1):
        timestamp += gap
        names = draw(st.sets(st.sampled_from(atoms), min_size=1))
        entries.append(TraceEntry(position, timestamp, frozenset(names)))
    return Trace(entries)


@st.composite
def intervals(draw, max_bound=30):
    lo = draw(st.integers(min_value=0, max_value=max_bound))
    if draw(st.booleans()):
        return f.Interval(lo=lo, lo_closed=draw(st.booleans()))
    hi = draw(st.integers(min_value=lo, max_value=max_bound + 10))
    if hi == lo:
        return f.Interval(lo=lo, hi=hi, lo_closed=True, hi_closed=True)
    return f.Interval(lo=lo, hi=hi, lo_closed=draw(st.booleans()), hi_closed=draw(st.booleans()))


comparators = st.sampled_from(list(Comparator))

leaves = st.one_of(st.sampled_from(ATOMS).map(f.atom), st.just(f.TRUE), st.just(f.FALSE))


def _extend(children):
    windows = st.integers(min_value=0, max_value=30)
    return st.one_of(
        children.map(f.negation),
        st.lists(children, min_size=2, max_size=3).map(lambda operands: f.conjunction(*operands)),
        st.lists(children, min_size=2, max_size=3).map(lambda operands: f.disjunction(*operands)),
        st.builds(f.until, intervals(), children, children),
        st.builds(f.since, intervals(), children, children),
        st.builds(f.count, comparators, st.integers(min_value=0, max_value=4), windows, children),
        st.builds(f.avg_dist, comparators, st.integers(min_value=0, max_value=15), windows, children, children),
        st.integers(min_value=1, max_value=30).flatmap(
            lambda window: st.builds(
                f.max_count,
                comparators,
                st.integers(min_value=0, max_value=4),
                st.just(window),
                st.integers(min_value=1, max_value=window),
                children,
            )
        ),
    )


core_formulae = st.recursive(leaves, _extend, max_leaves=6)
