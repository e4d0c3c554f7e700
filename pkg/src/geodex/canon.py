"""Canonical forms, isomorphism testing and automorphism orbits.

The labeling algorithm is ordinary iterated neighbourhood refinement down
to an equitable ordered partition, then backtracking over the vertices of
a target cell.  Every discrete leaf yields a relabeling; the canonical
form is the lexicographically smallest adjacency encoding over all
leaves.  Leaves that tie for the minimum differ from each other exactly by
the automorphisms of the digraph, which is where the orbit partition
comes from.  No randomisation and no hashing order is involved anywhere,
so the bytes are stable across runs and processes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Digraph


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Relabeling-invariant encoding; equal bytes if and only if isomorphic.

    Layout: the order as 4 big-endian bytes, then the row-major adjacency
    bitmatrix of the canonically relabeled digraph packed most significant
    bit first.
    """

    data: bytes

    def hex(self) -> str:
        return self.data.hex()


@dataclass(frozen=True)
class OrbitPartition:
    """Automorphism orbits, numbered 0.. in order of first appearance."""

    orbit_id: tuple[int, ...]
    orbit_count: int


def _refine(g: Digraph, cells: list[list[int]]) -> list[list[int]]:
    # split cells by (out-degree, in-degree, out-colour multiset, in-colour
    # multiset) until no cell splits; cell order is preserved, new cells are
    # ordered by signature
    n = g.n
    while True:
        colour = [0] * n
        for ci, cell in enumerate(cells):
            for v in cell:
                colour[v] = ci
        new_cells: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                osig = sorted(colour[w] for w in g.out[v])
                isig = sorted(colour[w] for w in g.in_lists[v])
                sig = (len(osig), len(isig), tuple(osig), tuple(isig))
                groups.setdefault(sig, []).append(v)
            if len(groups) == 1:
                new_cells.append(cell)
            else:
                changed = True
                for sig in sorted(groups):
                    new_cells.append(sorted(groups[sig]))
        if not changed:
            return new_cells
        cells = new_cells


def _target_cell(cells: list[list[int]]) -> int | None:
    # lowest-indexed largest non-singleton cell
    best = None
    best_size = 1
    for ci, cell in enumerate(cells):
        if len(cell) > best_size:
            best = ci
            best_size = len(cell)
    return best


def _rows_for(g: Digraph, lab: list[int]) -> tuple[int, ...]:
    # adjacency of the relabeled digraph, one integer per new row, bit
    # n-1-j set when new vertex i has an arc to new vertex j
    n = g.n
    rows = [0] * n
    for v in range(n):
        r = 0
        for w in g.out[v]:
            r |= 1 << (n - 1 - lab[w])
        rows[lab[v]] = r
    return tuple(rows)


def _best_labelings(g: Digraph) -> tuple[tuple[int, ...], list[list[int]]]:
    """Minimal adjacency rows over all discrete refinements, with every
    labeling that attains them."""
    n = g.n
    best_rows: tuple[int, ...] | None = None
    best_labs: list[list[int]] = []

    def walk(cells: list[list[int]]) -> None:
        nonlocal best_rows, best_labs
        cells = _refine(g, cells)
        target = _target_cell(cells)
        if target is None:
            lab = [0] * n
            for pos, cell in enumerate(cells):
                lab[cell[0]] = pos
            rows = _rows_for(g, lab)
            if best_rows is None or rows < best_rows:
                best_rows = rows
                best_labs = [lab]
            elif rows == best_rows:
                best_labs.append(lab)
            return
        cell = cells[target]
        for v in cell:
            child = cells[:target] + [[v], [w for w in cell if w != v]] + cells[target + 1 :]
            walk(child)

    if n == 0:
        return (), [[]]
    walk([list(range(n))])
    assert best_rows is not None
    return best_rows, best_labs


def _pack(n: int, rows: tuple[int, ...]) -> bytes:
    bits = 0
    for r in rows:
        bits = (bits << n) | r
    nbytes = (n * n + 7) // 8
    bits <<= nbytes * 8 - n * n
    return n.to_bytes(4, "big") + bits.to_bytes(nbytes, "big")


def canonical_form(g: Digraph) -> CanonicalForm:
    """Canonical byte encoding of the isomorphism class of g."""
    if g.n < 1:
        raise ValueError("canonical form requires at least one vertex")
    rows, _ = _best_labelings(g)
    return CanonicalForm(_pack(g.n, rows))


def canonical_relabelling(g: Digraph) -> list[int]:
    """One labeling (vertex -> new index) attaining the canonical form."""
    if g.n < 1:
        raise ValueError("canonical form requires at least one vertex")
    _, labs = _best_labelings(g)
    return list(labs[0])


def are_isomorphic(g: Digraph, h: Digraph) -> bool:
    """Canonical-form equality; digraphs of different order are never isomorphic."""
    if g.n != h.n:
        return False
    if g.n == 0:
        return True
    return canonical_form(g) == canonical_form(h)


def automorphism_orbits(g: Digraph) -> OrbitPartition:
    """Orbit partition of the vertices under the full automorphism group.

    The labelings tying for the canonical encoding are in bijection with
    the automorphisms, so union-find over those permutations yields the
    exact orbits; orbit_count == 1 means vertex-transitive.
    """
    if g.n < 1:
        raise ValueError("orbit partition requires at least one vertex")
    _, labs = _best_labelings(g)
    n = g.n
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    base = labs[0]
    inv_base = [0] * n
    for v, pos in enumerate(base):
        inv_base[pos] = v
    for lab in labs[1:]:
        for v in range(n):
            a, b = find(v), find(inv_base[lab[v]])
            if a != b:
                parent[a] = b
    ids = [-1] * n
    count = 0
    for v in range(n):
        root = find(v)
        if ids[root] == -1:
            ids[root] = count
            count += 1
        ids[v] = ids[root]
    return OrbitPartition(orbit_id=tuple(ids), orbit_count=count)
