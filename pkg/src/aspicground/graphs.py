"""Strongly connected components and condensation ordering."""

from __future__ import annotations

import heapq
from typing import Callable, Hashable, Iterable, Mapping, Collection, TypeVar

T = TypeVar("T", bound=Hashable)


def strongly_connected_components(vertices: Iterable[T], edges: Mapping[T, Collection[T]]) -> list[list[T]]:
    """Tarjan's algorithm, iterative.

    ``edges[v]`` lists the successors of ``v``.  Components are returned in
    reverse topological order of the condensation (sinks first).
    """
    index: dict[T, int] = {}
    low: dict[T, int] = {}
    on_stack: set[T] = set()
    stack: list[T] = []
    result: list[list[T]] = []
    counter = 0

    for root in vertices:
        if root in index:
            continue
        work: list[tuple[T, Iterable[T]]] = [(root, iter(edges.get(root, ())))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(edges.get(w, ()))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp: list[T] = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                result.append(comp)
    return result


def topological_components(
    vertices: Iterable[T],
    edges: Mapping[T, Collection[T]],
    key: Callable[[T], str] = str,
) -> list[list[T]]:
    """SCCs in topological order (sources first).

    Among components that are ready at the same time the one with the
    smallest ``key`` of its members goes first, so the order is deterministic.
    Members of each component are sorted by ``key``.
    """
    vertices = list(vertices)
    comps = [sorted(c, key=key) for c in strongly_connected_components(vertices, edges)]
    comp_of = {v: i for i, c in enumerate(comps) for v in c}
    succ: list[set[int]] = [set() for _ in comps]
    indegree = [0] * len(comps)
    for v in vertices:
        for w in edges.get(v, ()):
            a, b = comp_of[v], comp_of[w]
            if a != b and b not in succ[a]:
                succ[a].add(b)
                indegree[b] += 1
    heap = [(key(c[0]), i) for i, c in enumerate(comps) if indegree[i] == 0]
    heapq.heapify(heap)
    order: list[list[T]] = []
    while heap:
        _, i = heapq.heappop(heap)
        order.append(comps[i])
        for j in succ[i]:
            indegree[j] -= 1
            if indegree[j] == 0:
                heapq.heappush(heap, (key(comps[j][0]), j))
    return order
