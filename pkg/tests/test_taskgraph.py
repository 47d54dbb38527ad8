from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings

from nnn.diagnostics import NNNError
from nnn.model import AtomicTask, CompositeMode, CompositeTask
from nnn.taskgraph import compile_graph, is_valid_trace, natural_key, to_dot, topological_order
from oracles import forest_traces, precedence, transitive_reduction
from strategies import task_forests

SEQ, PAR = CompositeMode.SEQUENTIAL, CompositeMode.PARALLEL


def t(i: str) -> AtomicTask:
    return AtomicTask(i, f"task {i}")


def test_corpus_tasks_are_unordered(corpus_doc):
    g = compile_graph(corpus_doc)
    assert g.nodes == ("0", "1", "2", "3")
    assert g.edges == frozenset()
    assert topological_order(g) == ["0", "1", "2", "3"]


def test_sequence_links_neighbours_only():
    g = compile_graph([CompositeTask(SEQ, (t("a"), t("b"), t("c")))])
    assert g.edges == {("a", "b"), ("b", "c")}
    assert g.precedes("a", "c") and not g.precedes("c", "a")


def test_parallel_block_inside_sequence():
    g = compile_graph([CompositeTask(SEQ, (t("a"), CompositeTask(PAR, (t("b"), t("c"))), t("d")))])
    assert g.edges == {("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")}
    assert is_valid_trace(g, ["a", "c", "b", "d"])
    assert not is_valid_trace(g, ["a", "b", "d", "c"])


def test_sequence_of_parallels_is_complete_bipartite():
    g = compile_graph(
        [CompositeTask(SEQ, (CompositeTask(PAR, (t("a"), t("b"))), CompositeTask(PAR, (t("c"), t("d")))))]
    )
    assert g.edges == {(x, y) for x in "ab" for y in "cd"}


def test_empty_composites_are_transparent():
    g = compile_graph([CompositeTask(SEQ, (t("a"), CompositeTask(PAR, ()), t("b")))])
    assert g.edges == {("a", "b")}


def test_duplicate_atomic_id():
    with pytest.raises(NNNError) as err:
        compile_graph([t("a"), CompositeTask(SEQ, (t("b"), t("a")))])
    assert err.value.code == "E-DUP-ID"


def test_trace_must_cover_each_task_once():
    g = compile_graph([t("a"), t("b")])
    assert is_valid_trace(g, ["b", "a"])
    assert not is_valid_trace(g, ["a"])
    assert not is_valid_trace(g, ["a", "a"])
    assert not is_valid_trace(g, ["a", "b", "c"])


def test_natural_key_numeric_vs_lexicographic():
    assert sorted(["10", "9", "2"], key=natural_key(["10", "9", "2"])) == ["2", "9", "10"]
    assert sorted(["10", "9", "x"], key=natural_key(["10", "9", "x"])) == ["10", "9", "x"]


def test_topological_tie_break_is_numeric():
    g = compile_graph([t("10"), t("9"), CompositeTask(SEQ, (t("11"), t("2")))])
    assert topological_order(g) == ["9", "10", "11", "2"]


def test_dot_output():
    g = compile_graph([CompositeTask(SEQ, (AtomicTask("a", 'say "hi" ' + "x" * 50), t("b")))])
    dot = to_dot(g, "demo")
    assert dot.startswith('digraph "demo" {')
    assert '"a" -> "b";' in dot
    assert '\\"hi\\"' in dot
    label = dot.split("label=")[1].split("]")[0]
    text = label[1:-1].replace('\\"', '"').removeprefix("a: ")
    assert text.endswith("...") and len(text) == 40


@settings(max_examples=150, deadline=None)
@given(task_forests(max_atoms=6))
def test_edges_are_reduction_of_oracle_precedence(roots):
    g = compile_graph(roots)
    assert set(g.edges) == transitive_reduction(precedence(forest_traces(roots)))


@settings(max_examples=150, deadline=None)
@given(task_forests(max_atoms=5))
def test_trace_validity_matches_enumeration(roots):
    g = compile_graph(roots)
    admissible = forest_traces(roots)
    for perm in itertools.permutations(g.nodes):
        assert is_valid_trace(g, perm) == (perm in admissible)


@settings(max_examples=150, deadline=None)
@given(task_forests())
def test_topological_order_is_valid_and_deterministic(roots):
    g = compile_graph(roots)
    order = topological_order(g)
    assert is_valid_trace(g, order)
    assert order == topological_order(compile_graph(roots))
