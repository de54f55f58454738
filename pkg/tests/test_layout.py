import pytest
from hypothesis import given, strategies as st

from artifact.adders import build_p1, build_p2, build_p3
from artifact.complement import build_negate, build_subtractor
from artifact.layout import (GridLayout, LayoutError, make_adder_layout, make_divider_layout,
                             make_multiplier_layout, make_plus1_layout, make_subtractor_layout,
                             subscript_row_violations)
from artifact.muldiv import build_divider, build_multiplier


@pytest.mark.parametrize("variant", ["I", "II", "III"])
@pytest.mark.parametrize("n", [1, 2, 5, 9])
def test_adder_layout_size(variant, n):
    layout, _ = make_adder_layout(n, variant)
    assert layout.size == 3 * n + 2


@pytest.mark.parametrize("n", [1, 3, 6])
def test_multiplier_layout_is_8n_plus_6(n):
    layout, regs = make_multiplier_layout(n)
    assert layout.size == 8 * n + 6
    # A is the upper half of the B column
    assert [regs.qubit("A", j) for j in range(n)] == [regs.qubit("B", n + j) for j in range(n)]


@pytest.mark.parametrize("n,m", [(1, 1), (3, 2), (4, 4)])
def test_divider_layout_sizes(n, m):
    assert make_divider_layout(n, m)[0].size == 5 * (n + m + 1)
    assert make_divider_layout(n, m, with_remainder=True)[0].size == 5 * (n + m + 1) + 4
    assert make_divider_layout(n, m, zero_safe=True)[0].size == 5 * (n + m + 1) + 1


def test_divider_aliases():
    _, regs = make_divider_layout(3, 2)
    assert regs.qubit("B", 0) == regs.qubit("B'", 3)
    assert regs.qubit("C'", 1) == regs.qubit("C", 4)
    assert regs.has("A'", 2) and not regs.has("A'", 3)


@pytest.mark.parametrize("bad", [0, -1, 2.5])
def test_rejects_non_positive_width(bad):
    with pytest.raises(LayoutError):
        make_adder_layout(bad, "I")


def test_divider_rejects_wide_divisor():
    with pytest.raises(LayoutError):
        make_divider_layout(2, 3)


def test_unknown_variant():
    with pytest.raises(LayoutError):
        make_adder_layout(2, "IV")


def test_duplicate_coordinates_rejected():
    with pytest.raises(LayoutError):
        GridLayout(((0, 0), (0, 0)))


def test_span_and_label():
    _, regs = make_subtractor_layout(3)
    span = regs.span("C", 4, 0)
    assert len(span) == 5
    assert [regs.label(q) for q in span] == [("C", s) for s in range(4, -1, -1)]
    with pytest.raises(LayoutError):
        regs.qubit("C", 9)


@pytest.mark.parametrize("builder", [
    lambda: build_p1(3), lambda: build_p2(3), lambda: build_p3(3), lambda: build_negate(3),
    lambda: build_subtractor(3), lambda: build_multiplier(2),
    lambda: build_divider(3, 2, zero_safe=True), lambda: build_divider(2, 1, with_remainder=False),
])
def test_rows_equal_subscripts(builder):
    c = builder()
    assert subscript_row_violations(c.layout, c.registers) == []


def test_plus1_layout_top_flag():
    assert make_plus1_layout(3)[0].size == 2 * 3 + 3
    assert make_plus1_layout(3, top=False)[0].size == 2 * 3 + 2


@given(st.sets(st.tuples(st.integers(-3, 3), st.integers(0, 3)), min_size=1, max_size=20))
def test_edges_are_exactly_the_adjacent_pairs(points):
    layout = GridLayout(tuple(sorted(points)))
    n = layout.size
    brute = {(p, q) for p in range(n) for q in range(p + 1, n) if layout.adjacent(p, q)}
    assert {tuple(sorted(e)) for e in layout.edges()} == brute
