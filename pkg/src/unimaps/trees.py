"""Rooted plane trees: parenthesis codes with exact uniform sampling
and height truncation.

A plane tree with n edges is stored as a tuple of children lists, with
vertices numbered 0..n in depth-first (preorder) order so that vertex 0
is the root and every child has a larger id than its parent.  The
balanced-parenthesis code walks the contour: "(" the first time an edge
is traversed, ")" the second time.  A single vertex has the empty code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


def catalan(n: int) -> int:
    """n-th Catalan number (2n)! / (n! (n+1)!), the number of plane trees
    with n edges.  catalan(0) == 1 counts the single-vertex tree."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return math.comb(2 * n, n) // (n + 1)


@dataclass(frozen=True)
class PlaneTree:
    """Rooted plane tree with preorder-numbered vertices.

    children[v] lists the children of v from first to last.  The root is
    vertex 0.  Preorder numbering means children appear in increasing id
    order and every subtree occupies a contiguous id range.
    """

    children: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = 0
        for v, cs in enumerate(self.children):
            for c in cs:
                if not (v < c < len(self.children)):
                    raise ValueError("children must be preorder-numbered")
                seen += 1
        if seen != len(self.children) - 1:
            raise ValueError("not a tree: edge count mismatch")

    @property
    def n_vertices(self) -> int:
        return len(self.children)

    @property
    def n_edges(self) -> int:
        return len(self.children) - 1

    def parents(self) -> list[int]:
        """parent[v] for every non-root vertex; parent[0] == -1."""
        par = [-1] * self.n_vertices
        for v, cs in enumerate(self.children):
            for c in cs:
                par[c] = v
        return par

    def heights(self) -> list[int]:
        """Distance from the root for every vertex (preorder single pass)."""
        h = [0] * self.n_vertices
        for v, cs in enumerate(self.children):
            for c in cs:
                h[c] = h[v] + 1
        return h

    def height(self) -> int:
        return max(self.heights())

    def count_at_height(self, r: int) -> int:
        return sum(1 for h in self.heights() if h == r)

    def truncate(self, r: int) -> "PlaneTree":
        """Subtree of all vertices at height <= r, child order preserved."""
        if r < 0:
            raise ValueError("radius must be >= 0")
        h = self.heights()
        keep = [v for v in range(self.n_vertices) if h[v] <= r]
        relabel = {v: i for i, v in enumerate(keep)}
        new_children = tuple(
            tuple(relabel[c] for c in self.children[v] if h[c] <= r) for v in keep
        )
        return PlaneTree(new_children)

    def code(self) -> str:
        return plane_code(self)

    def degrees(self) -> list[int]:
        """Graph degree of each vertex: children plus one for the parent edge."""
        return [len(cs) + (1 if v > 0 else 0) for v, cs in enumerate(self.children)]


def plane_code(tree: PlaneTree) -> str:
    """Balanced-parenthesis contour code; "" for the single-vertex tree."""
    out = []
    # iterative DFS: (vertex, index of next child to visit)
    stack = [(0, 0)]
    while stack:
        v, i = stack.pop()
        if i < len(tree.children[v]):
            stack.append((v, i + 1))
            out.append("(")
            stack.append((tree.children[v][i], 0))
        elif stack:
            out.append(")")
    return "".join(out)


def parse_plane_code(code: str) -> PlaneTree:
    """Inverse of plane_code.  Raises ValueError on unbalanced input."""
    children: list[list[int]] = [[]]
    stack = [0]
    nxt = 1
    for ch in code:
        if ch == "(":
            children.append([])
            children[stack[-1]].append(nxt)
            stack.append(nxt)
            nxt += 1
        elif ch == ")":
            stack.pop()
            if not stack:
                raise ValueError("unbalanced code")
        else:
            raise ValueError(f"bad character {ch!r} in code")
    if len(stack) != 1:
        raise ValueError("unbalanced code")
    return PlaneTree(tuple(tuple(cs) for cs in children))


def unordered_code(tree: PlaneTree) -> str:
    """Canonical code invariant under reordering of children.

    Children codes are sorted at every vertex (AHU style), so two trees
    get the same string exactly when they are isomorphic as rooted
    unordered trees.  The root contributes no outer parentheses, matching
    plane_code on the single-vertex tree.
    """
    n = tree.n_vertices
    codes: list[str] = [""] * n
    # children always have larger ids, so a reverse sweep sees them first
    for v in range(n - 1, -1, -1):
        parts = sorted("(" + codes[c] + ")" for c in tree.children[v])
        codes[v] = "".join(parts)
    return codes[0]


def plane_embeddings_count(tree: PlaneTree) -> int:
    """Number of distinct plane trees with this tree's unordered shape.

    Product over vertices of the multinomial counting distinguishable
    orderings of the child subtrees.
    """
    n = tree.n_vertices
    codes: list[str] = [""] * n
    total = 1
    for v in range(n - 1, -1, -1):
        child_codes = ["(" + codes[c] + ")" for c in tree.children[v]]
        mult: dict[str, int] = {}
        for cc in child_codes:
            mult[cc] = mult.get(cc, 0) + 1
        ways = math.factorial(len(child_codes))
        for m in mult.values():
            ways //= math.factorial(m)
        total *= ways
        codes[v] = "".join(sorted(child_codes))
    return total


@lru_cache(maxsize=32)
def _codes_with_edges(n: int) -> tuple[str, ...]:
    if n == 0:
        return ("",)
    out = []
    for a in range(n):
        for first in _codes_with_edges(a):
            for rest in _codes_with_edges(n - 1 - a):
                out.append("(" + first + ")" + rest)
    return tuple(out)


def enumerate_plane_trees(n: int):
    """Yield all catalan(n) plane trees with n edges."""
    if n < 0:
        raise ValueError("n must be >= 0")
    for code in _codes_with_edges(n):
        yield parse_plane_code(code)


def sample_plane_tree(n: int, rng: np.random.Generator) -> PlaneTree:
    """Exactly uniform plane tree with n edges via the cycle lemma.

    Shuffle n up-steps and n+1 down-steps; of the 2n+1 cyclic rotations
    exactly one stays nonnegative until the final step.  Rotating to just
    after the first minimum of the partial sums and dropping the last
    down-step leaves a uniform Dyck word of length 2n.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return PlaneTree(((),))
    steps = np.ones(2 * n + 1, dtype=np.int8)
    steps[n:] = -1
    steps = rng.permutation(steps)
    sums = np.cumsum(steps)
    cut = int(np.argmin(sums)) + 1  # first position attaining the minimum
    word = np.roll(steps, -cut)[: 2 * n]
    return _tree_from_dyck(word)


def _tree_from_dyck(word) -> PlaneTree:
    children: list[list[int]] = [[]]
    stack = [0]
    nxt = 1
    for s in word:
        if s > 0:
            children.append([])
            children[stack[-1]].append(nxt)
            stack.append(nxt)
            nxt += 1
        else:
            stack.pop()
    return PlaneTree(tuple(tuple(cs) for cs in children))
