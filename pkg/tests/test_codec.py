from __future__ import annotations

from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from syntropy.codec import (
    EncodingScheme,
    SubtreeMultiset,
    decode_symbol,
    encode_subtree,
    extract_symbols,
)
from syntropy.errors import InvalidNodeError
from syntropy.frontend import node_count, parse

import oracle
from conftest import build_tree, fixture_files, heap_tree

STRUCT = EncodingScheme.STRUCT_ONLY
VALUE = EncodingScheme.STRUCT_VALUE


# --- spec'd shapes at depth 1 -------------------------------------------------


def test_single_node_tree_single_symbol():
    tree = build_tree(("X", "x"))
    ms = extract_symbols(tree, 1, STRUCT)
    assert ms.total == 1
    assert dict(ms.counts) == {"(1:X[])": 1}
    assert decode_symbol("(1:X[])", STRUCT) == ("X", ())


def test_three_node_tree_symbols():
    tree = build_tree(("A", [("B", "b"), ("C", "c")]))
    ms = extract_symbols(tree, 1, STRUCT)
    assert ms.total == 3
    decoded = Counter()
    for sym, count in ms.counts.items():
        decoded[decode_symbol(sym, STRUCT)] += count
    assert decoded == Counter({("A", (("B",), ("C",))): 1, ("B", ()): 1, ("C", ()): 1})


def test_value_scheme_leaf_carries_lexeme():
    tree = build_tree(("identifier", "foo"))
    sym = encode_subtree(tree, 0, 1, VALUE)
    assert decode_symbol(sym, VALUE) == ("identifier", "foo", ())


def test_value_scheme_internal_carries_sentinel():
    tree = build_tree(("assignment", [("identifier", "x"), ("number", "1")]))
    sym = encode_subtree(tree, 0, 1, VALUE)
    decoded = decode_symbol(sym, VALUE)
    assert decoded == ("assignment", None, (("identifier",), ("number",)))


def test_struct_scheme_pair_form_at_depth_one():
    tree = build_tree(("assignment", [("identifier", "x"), ("number", "1")]))
    sym = encode_subtree(tree, 0, 1, STRUCT)
    assert decode_symbol(sym, STRUCT) == ("assignment", (("identifier",), ("number",)))


def test_invalid_node_and_depth_rejected():
    tree = build_tree(("X", "x"))
    with pytest.raises(InvalidNodeError):
        encode_subtree(tree, 5, 1, STRUCT)
    with pytest.raises(ValueError):
        encode_subtree(tree, 0, 0, STRUCT)
    with pytest.raises(ValueError):
        extract_symbols(tree, -1, STRUCT)


def test_multiset_rejects_nonpositive_counts():
    with pytest.raises(ValueError):
        SubtreeMultiset.from_counts({"a": 0})


# --- oracle equivalence -------------------------------------------------------


@pytest.mark.parametrize("lang,path", fixture_files()[::5])
@pytest.mark.parametrize("depth", [1, 2, 3])
@pytest.mark.parametrize("scheme", [STRUCT, VALUE])
def test_extraction_matches_tree_walk_oracle(lang, path, depth, scheme):
    tree = parse(lang, path.read_text(encoding="utf-8"))
    ms = extract_symbols(tree, depth, scheme)
    decoded = Counter()
    for sym, count in ms.counts.items():
        decoded[decode_symbol(sym, scheme)] += count
    assert decoded == oracle.walk_symbol_shapes(tree, depth, scheme.value)


def test_python_value_symbols_match_oracle_on_pinned_snippet():
    tree = parse("python", "x = 1")
    ms = extract_symbols(tree, 1, VALUE)
    assert ms.total == node_count(tree) == 4
    decoded = Counter()
    for sym, count in ms.counts.items():
        decoded[decode_symbol(sym, VALUE)] += count
    assert decoded == oracle.walk_symbol_shapes(tree, 1, "value")


# --- spec invariants ----------------------------------------------------------


@pytest.mark.parametrize("lang,path", fixture_files())
def test_cardinality_equals_node_count(lang, path):
    tree = parse(lang, path.read_text(encoding="utf-8"))
    for depth in (1, 2, 3):
        for scheme in (STRUCT, VALUE):
            assert extract_symbols(tree, depth, scheme).total == node_count(tree)


RENAMED_PAIRS = [
    ("python", "def add(a, b):\n    return a + b\n", "def add(u, v):\n    return u + v\n"),
    ("python", "total = price * count\n", "amount = cost * qty\n"),
    ("sql", "SELECT name FROM users", "SELECT title FROM books"),
]


@pytest.mark.parametrize("lang,original,renamed", RENAMED_PAIRS)
def test_struct_only_insensitive_to_renaming(lang, original, renamed):
    ms_a = extract_symbols(parse(lang, original), 1, STRUCT)
    ms_b = extract_symbols(parse(lang, renamed), 1, STRUCT)
    assert ms_a.counts == ms_b.counts


@pytest.mark.parametrize("lang,original,renamed", RENAMED_PAIRS)
def test_struct_value_sensitive_to_renaming(lang, original, renamed):
    ms_a = extract_symbols(parse(lang, original), 1, VALUE)
    ms_b = extract_symbols(parse(lang, renamed), 1, VALUE)
    assert ms_a.counts != ms_b.counts


def test_collision_freedom_adversarial_type_names():
    one_child = build_tree(("A", [("BC", "t")]))
    two_children = build_tree(("A", [("B", "t"), ("C", "u")]))
    assert encode_subtree(one_child, 0, 1, STRUCT) != encode_subtree(two_children, 0, 1, STRUCT)

    # separator characters inside names cannot forge a boundary
    tricky = build_tree(("A[", [("1:B", "x")]))
    plain = build_tree(("A", [("[1:B", "x")]))
    assert encode_subtree(tricky, 0, 1, STRUCT) != encode_subtree(plain, 0, 1, STRUCT)
    assert decode_symbol(encode_subtree(tricky, 0, 1, STRUCT), STRUCT) == ("A[", (("1:B",),))


def test_lexeme_with_separator_bytes_roundtrips():
    tree = build_tree(("S", [("str", "a)(7:weird[\t\n]")]))
    sym = encode_subtree(tree, 1, 1, VALUE)
    assert decode_symbol(sym, VALUE) == ("str", "a)(7:weird[\t\n]", ())


# --- depth semantics ----------------------------------------------------------


def test_depth_frontier_distinguishes_leaf_from_cutoff():
    shallow = build_tree(("A", [("B", "b")]))
    deep = build_tree(("A", [("B", [("C", "c")])]))
    # identical to depth 1: B shows as a bare type either way
    assert encode_subtree(shallow, 0, 1, STRUCT) == encode_subtree(deep, 0, 1, STRUCT)
    # depth 2 separates "B is a leaf" from "B has a child"
    assert encode_subtree(shallow, 0, 2, STRUCT) != encode_subtree(deep, 0, 2, STRUCT)


def test_truncation_at_tree_boundary_no_padding():
    tree = build_tree(("A", [("B", "b")]))
    assert encode_subtree(tree, 0, 5, STRUCT) == encode_subtree(tree, 0, 2, STRUCT)


# --- property tests -----------------------------------------------------------


def _shapes():
    leaf = st.tuples(
        st.sampled_from(["A", "B", "C", "D[", "1:E"]),
        st.text(alphabet="xyz():[]=\t", max_size=4),
    )
    return st.recursive(
        leaf,
        lambda inner: st.tuples(
            st.sampled_from(["A", "B", "C", "N"]), st.lists(inner, min_size=1, max_size=4)
        ),
        max_leaves=25,
    )


@settings(max_examples=60, deadline=None)
@given(shape=_shapes(), depth=st.integers(1, 4), scheme=st.sampled_from([STRUCT, VALUE]))
def test_property_roundtrip_and_cardinality(shape, depth, scheme):
    tree = build_tree(shape)
    ms = extract_symbols(tree, depth, scheme)
    assert ms.total == node_count(tree)
    decoded = Counter()
    for sym, count in ms.counts.items():
        decoded[decode_symbol(sym, scheme)] += count
    assert decoded == oracle.walk_symbol_shapes(tree, depth, scheme.value)


@settings(max_examples=40, deadline=None)
@given(
    shape_a=_shapes(),
    shape_b=_shapes(),
    d1=st.integers(1, 3),
    extra=st.integers(1, 3),
    scheme=st.sampled_from([STRUCT, VALUE]),
)
def test_property_depth_monotone_refinement(shape_a, shape_b, d1, extra, scheme):
    # symbols that differ at a shallow bound differ at every deeper bound
    tree_a = build_tree(shape_a)
    tree_b = build_tree(shape_b)
    shallow_a = encode_subtree(tree_a, 0, d1, scheme)
    shallow_b = encode_subtree(tree_b, 0, d1, scheme)
    if shallow_a != shallow_b:
        assert encode_subtree(tree_a, 0, d1 + extra, scheme) != encode_subtree(
            tree_b, 0, d1 + extra, scheme
        )


def test_synthetic_heap_tree_extraction():
    tree = heap_tree(500, branching=3)
    for scheme in (STRUCT, VALUE):
        ms = extract_symbols(tree, 2, scheme)
        assert ms.total == 500
