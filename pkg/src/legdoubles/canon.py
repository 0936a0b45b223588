"""Canonical labeling of small multigraphs given by weight matrices.

Individualization-refinement without automorphism pruning: an ordered
equitable partition is refined, the first smallest non-trivial cell is
branched on, and the smallest relabeled weight matrix over all leaves is
the canonical code.  The leaf count is bounded; callers that only need a
cache key can fall back to an exact but non-canonical key.
"""

from __future__ import annotations

from typing import Sequence

from .errors import ResourceError

DEFAULT_LEAF_BUDGET = 5000


def _refine(cells: list[list[int]], W: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    while True:
        col = [0] * n
        for ci, cell in enumerate(cells):
            for v in cell:
                col[v] = ci
        out: list[list[int]] = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                row = W[v]
                sig = tuple(sorted((col[u], row[u]) for u in range(n) if row[u] and u != v))
                groups.setdefault((row[v], sig), []).append(v)
            if len(groups) > 1:
                split = True
                for key in sorted(groups):
                    out.append(groups[key])
            else:
                out.append(cell)
        cells = out
        if not split:
            return cells


def canonical_order(W: Sequence[Sequence[int]], colors: Sequence[int] | None = None,
                    leaf_budget: int = DEFAULT_LEAF_BUDGET) -> tuple[tuple, list[int]]:
    """Return ``(code, order)`` where ``order[i]`` is the vertex placed at position ``i``.

    ``code`` is invariant under simultaneous row/column permutation of ``W``
    (and of ``colors``).  Raises ResourceError when more than ``leaf_budget``
    leaves would be explored.
    """
    n = len(W)
    if n == 0:
        return ((), ()), []
    if colors is None:
        cells = [list(range(n))]
        color_sig: tuple = ()
    else:
        by_color: dict = {}
        for v, c in enumerate(colors):
            by_color.setdefault(c, []).append(v)
        cells = [by_color[c] for c in sorted(by_color)]
        color_sig = tuple(sorted(colors))
    best: list = [None, None]
    leaves = [0]

    def visit(cells):
        cells = _refine(cells, W, n)
        for i, cell in enumerate(cells):
            if len(cell) > 1:
                break
        else:
            leaves[0] += 1
            if leaves[0] > leaf_budget:
                raise ResourceError("canonical labeling leaf budget exceeded")
            order = [cell[0] for cell in cells]
            code = tuple(tuple(W[a][b] for b in order) for a in order)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, order
            return
        size = min(len(c) for c in cells if len(c) > 1)
        idx = next(i for i, c in enumerate(cells) if len(c) == size)
        target = cells[idx]
        for v in target:
            rest = [u for u in target if u != v]
            visit(cells[:idx] + [[v], rest] + cells[idx + 1:])

    visit(cells)
    return (color_sig, best[0]), best[1]


def canonical_code(W: Sequence[Sequence[int]], colors: Sequence[int] | None = None,
                   leaf_budget: int = DEFAULT_LEAF_BUDGET) -> tuple:
    return canonical_order(W, colors, leaf_budget)[0]
