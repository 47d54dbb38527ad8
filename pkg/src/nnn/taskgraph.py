"""Precedence DAG over atomic tasks.

Sequential composites order their children; parallel composites (and the
flat list of top-level tasks) impose no order. The stored edge set is the
transitive reduction of the implied precedence relation.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from nnn.diagnostics import NNNError, diag
from nnn.model import AtomicTask, CompositeMode, GuidelineDocument, TaskNode, TasksSection

_NUMERIC = re.compile(r"^[+-]?\d+$")
DOT_LABEL_MAX = 40


@dataclass(frozen=True)
class TaskGraph:
    nodes: tuple[str, ...]
    edges: frozenset[tuple[str, str]]
    texts: dict[str, str] = field(default_factory=dict, compare=False, hash=False)

    def successors(self, node: str) -> list[str]:
        return sorted((b for a, b in self.edges if a == node), key=natural_key(self.nodes))

    def precedes(self, a: str, b: str) -> bool:
        """True when ``a`` must run before ``b`` (reachability, not just an edge)."""
        stack, seen = [a], {a}
        while stack:
            for nxt in self.successors(stack.pop()):
                if nxt == b:
                    return True
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return False


def natural_key(ids: Iterable[str]):
    """Numeric order when every id is an integer literal, else lexicographic."""
    ids = list(ids)
    if ids and all(_NUMERIC.match(i) for i in ids):
        return lambda i: (int(i), i)
    return lambda i: (0, i)


def _roots_of(tasks) -> tuple[TaskNode, ...]:
    if isinstance(tasks, GuidelineDocument):
        return tasks.body.tasks.roots if tasks.body.tasks else ()
    if isinstance(tasks, TasksSection):
        return tasks.roots
    return tuple(tasks)


def _build(node: TaskNode, atoms: list[AtomicTask], edges: set[tuple[str, str]]) -> tuple[list[str], list[str]]:
    """Collect atoms and edges; return (entry ids, exit ids) of the subtree."""
    if isinstance(node, AtomicTask):
        atoms.append(node)
        return [node.id], [node.id]
    parts = [_build(child, atoms, edges) for child in node.children]
    parts = [p for p in parts if p[0]]
    if not parts:
        return [], []
    if node.mode == CompositeMode.SEQUENTIAL:
        for (_, exits), (entries, _) in zip(parts, parts[1:]):
            edges.update((a, b) for a in exits for b in entries)
        return parts[0][0], parts[-1][1]
    return [i for p in parts for i in p[0]], [i for p in parts for i in p[1]]


def _assert_acyclic(nodes: Sequence[str], edges: frozenset[tuple[str, str]]) -> None:
    indegree = {n: 0 for n in nodes}
    for _, b in edges:
        indegree[b] += 1
    ready = [n for n, d in indegree.items() if d == 0]
    visited = 0
    while ready:
        n = ready.pop()
        visited += 1
        for a, b in edges:
            if a == n:
                indegree[b] -= 1
                if indegree[b] == 0:
                    ready.append(b)
    if visited != len(nodes):  # unreachable for tree input
        raise AssertionError("task graph contains a cycle")


def compile_graph(tasks: TasksSection | GuidelineDocument | Sequence[TaskNode]) -> TaskGraph:
    """Compile a task composition tree; top-level nodes run in parallel.

    Raises NNNError(E-DUP-ID) when an atomic id repeats.
    """
    atoms: list[AtomicTask] = []
    edges: set[tuple[str, str]] = set()
    for root in _roots_of(tasks):
        _build(root, atoms, edges)
    seen: set[str] = set()
    for task in atoms:
        if task.id in seen:
            raise NNNError(diag("E-DUP-ID", "/guideline/tasks", f"task id {task.id!r} appears more than once"))
        seen.add(task.id)
    nodes = tuple(t.id for t in atoms)
    frozen = frozenset(edges)
    _assert_acyclic(nodes, frozen)
    return TaskGraph(nodes, frozen, {t.id: t.text for t in atoms})


def is_valid_trace(graph: TaskGraph, trace: Sequence[str]) -> bool:
    """True iff the trace runs every task exactly once and respects every edge."""
    if len(trace) != len(graph.nodes) or set(trace) != set(graph.nodes):
        return False
    position = {t: i for i, t in enumerate(trace)}
    if len(position) != len(trace):
        return False
    return all(position[a] < position[b] for a, b in graph.edges)


def topological_order(graph: TaskGraph) -> list[str]:
    """Deterministic order: among ready tasks, smallest id first."""
    key = natural_key(graph.nodes)
    indegree = {n: 0 for n in graph.nodes}
    succ: dict[str, list[str]] = {n: [] for n in graph.nodes}
    for a, b in graph.edges:
        indegree[b] += 1
        succ[a].append(b)
    heap = [(key(n), n) for n, d in indegree.items() if d == 0]
    heapq.heapify(heap)
    order: list[str] = []
    while heap:
        _, n = heapq.heappop(heap)
        order.append(n)
        for b in succ[n]:
            indegree[b] -= 1
            if indegree[b] == 0:
                heapq.heappush(heap, (key(b), b))
    return order


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", " ") + '"'


def _truncate(text: str, limit: int = DOT_LABEL_MAX) -> str:
    return text if len(text) <= limit else text[: limit - 3] + "..."


def to_dot(graph: TaskGraph, name: str = "tasks") -> str:
    key = natural_key(graph.nodes)
    lines = [f"digraph {_dot_quote(name)} {{", "  node [shape=box];"]
    for n in sorted(graph.nodes, key=key):
        text = _truncate(graph.texts.get(n, ""))
        label = f"{n}: {text}" if text else n
        lines.append(f"  {_dot_quote(n)} [label={_dot_quote(label)}];")
    for a, b in sorted(graph.edges, key=lambda e: (key(e[0]), key(e[1]))):
        lines.append(f"  {_dot_quote(a)} -> {_dot_quote(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
