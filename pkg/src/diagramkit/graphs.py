"""Weighted graphs of exceptional curves and their rewriting calculus.

A vertex models an irreducible curve F with F^2 < 0: it carries the weight
-F^2 (a positive integer) and the arithmetic genus.  Edges carry the
pairwise intersection number; an absent edge means intersection 0 and a
multiplicity-1 edge is called simple.  All values are immutable; every
operation returns a new graph.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .exact import SymMatrix


@dataclass(frozen=True, order=True)
class Vertex:
    id: str
    weight: int
    genus: int = 0


@dataclass(frozen=True)
class BlowdownStep:
    """Record of one contraction: the removed vertex and its neighbors."""

    vertex: str
    neighbors: tuple[str, ...]


class WeightedGraph:
    """Immutable vertex-weighted, genus-labeled multigraph (no self-edges).

    Vertices are kept sorted by id; edges as (u, v, multiplicity) with
    u < v.  Equality and hashing are structural.
    """

    __slots__ = ("vertices", "edges", "__dict__")

    def __init__(self, vertices, edges=()):
        verts: list[Vertex] = []
        for v in vertices:
            if not isinstance(v, Vertex):
                v = Vertex(*v)
            if v.weight < 1:
                raise ValueError(f"vertex {v.id!r} has weight {v.weight} < 1")
            if v.genus < 0:
                raise ValueError(f"vertex {v.id!r} has negative genus")
            verts.append(v)
        verts.sort(key=lambda v: v.id)
        ids = [v.id for v in verts]
        if len(set(ids)) != len(ids):
            dup = next(i for i in ids if ids.count(i) > 1)
            raise ValueError(f"duplicate vertex id {dup!r}")
        idset = set(ids)
        norm: dict[tuple[str, str], int] = {}
        for e in edges:
            u, v, m = e if len(e) == 3 else (*e, 1)
            if u not in idset or v not in idset:
                missing = u if u not in idset else v
                raise ValueError(f"edge endpoint {missing!r} is not a vertex")
            if u == v:
                raise ValueError(f"self-edge at {u!r}")
            if m < 1:
                raise ValueError(f"edge {u!r}-{v!r} has multiplicity {m} < 1")
            key = (u, v) if u < v else (v, u)
            if key in norm:
                raise ValueError(f"duplicate edge {key[0]!r}-{key[1]!r}")
            norm[key] = int(m)
        object.__setattr__(self, "vertices", tuple(verts))
        object.__setattr__(self, "edges", tuple(sorted((u, v, m) for (u, v), m in norm.items())))

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("WeightedGraph is immutable")

    # -- basic queries -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def ids(self) -> tuple[str, ...]:
        return tuple(v.id for v in self.vertices)

    @cached_property
    def _by_id(self) -> dict[str, Vertex]:
        return {v.id: v for v in self.vertices}

    @cached_property
    def adjacency(self) -> dict[str, dict[str, int]]:
        adj: dict[str, dict[str, int]] = {v.id: {} for v in self.vertices}
        for u, v, m in self.edges:
            adj[u][v] = m
            adj[v][u] = m
        return adj

    def vertex(self, vid: str) -> Vertex:
        try:
            return self._by_id[vid]
        except KeyError:
            raise KeyError(f"unknown vertex id {vid!r}") from None

    def has_vertex(self, vid: str) -> bool:
        return vid in self._by_id

    def multiplicity(self, u: str, v: str) -> int:
        return self.adjacency[u].get(v, 0)

    def neighbors(self, vid: str) -> tuple[str, ...]:
        return tuple(sorted(self.adjacency[vid]))

    def degree(self, vid: str) -> int:
        return len(self.adjacency[vid])

    def simple_edges(self) -> tuple[tuple[str, str], ...]:
        return tuple((u, v) for u, v, m in self.edges if m == 1)

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = {self.ids[0]}
        queue = deque(seen)
        while queue:
            for w in self.adjacency[queue.popleft()]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == self.n

    def induced(self, ids) -> "WeightedGraph":
        keep = set(ids)
        unknown = keep - set(self.ids)
        if unknown:
            raise KeyError(f"unknown vertex ids {sorted(unknown)!r}")
        return WeightedGraph(
            (v for v in self.vertices if v.id in keep),
            ((u, v, m) for u, v, m in self.edges if u in keep and v in keep),
        )

    def relabeled(self, mapping: dict[str, str]) -> "WeightedGraph":
        return WeightedGraph(
            (Vertex(mapping[v.id], v.weight, v.genus) for v in self.vertices),
            ((mapping[u], mapping[v], m) for u, v, m in self.edges),
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WeightedGraph)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        vs = ", ".join(
            f"{v.id}:{v.weight}" + (f"(g{v.genus})" if v.genus else "")
            for v in self.vertices
        )
        es = ", ".join(f"{u}-{v}" + (f"x{m}" if m > 1 else "") for u, v, m in self.edges)
        return f"WeightedGraph[{vs} | {es}]"


# -- matrix and canonical class ---------------------------------------


def intersection_matrix(g: WeightedGraph) -> SymMatrix:
    """Gram matrix (F_i . F_j): diagonal -weight, off-diagonal multiplicity.

    Rows follow ``g.ids`` order.
    """
    index = {vid: i for i, vid in enumerate(g.ids)}
    rows = [[Fraction(0)] * g.n for _ in range(g.n)]
    for v in g.vertices:
        rows[index[v.id]][index[v.id]] = Fraction(-v.weight)
    for u, v, m in g.edges:
        rows[index[u]][index[v]] = Fraction(m)
        rows[index[v]][index[u]] = Fraction(m)
    return SymMatrix(rows)


def canonical_class(g: WeightedGraph) -> dict[str, int]:
    """K . F_i = -F_i^2 - 2 + 2 p_a(F_i) = weight - 2 + 2 genus, per vertex."""
    return {v.id: v.weight - 2 + 2 * v.genus for v in g.vertices}


# -- blowups and blowdowns ---------------------------------------------


def _fresh(g: WeightedGraph, new_id: str) -> None:
    if g.has_vertex(new_id):
        raise ValueError(f"new vertex id {new_id!r} already present")


def blowup_vertex(g: WeightedGraph, v: str, new_id: str) -> WeightedGraph:
    """Attach a fresh weight-1 genus-0 vertex to v; v's weight grows by 1."""
    base = g.vertex(v)
    _fresh(g, new_id)
    verts = [Vertex(w.id, w.weight + 1, w.genus) if w.id == v else w for w in g.vertices]
    verts.append(Vertex(new_id, 1, 0))
    edges = list(g.edges) + [(min(v, new_id), max(v, new_id), 1)]
    return WeightedGraph(verts, edges)


def blowup_edge(g: WeightedGraph, u: str, v: str, new_id: str) -> WeightedGraph:
    """Split a simple edge u-v by a fresh weight-1 vertex; both ends grow by 1."""
    g.vertex(u), g.vertex(v)
    _fresh(g, new_id)
    m = g.multiplicity(u, v)
    if m == 0:
        raise ValueError(f"no edge {u!r}-{v!r}")
    if m != 1:
        raise ValueError(f"edge {u!r}-{v!r} has multiplicity {m}; only simple edges split")
    verts = [
        Vertex(w.id, w.weight + 1, w.genus) if w.id in (u, v) else w for w in g.vertices
    ]
    verts.append(Vertex(new_id, 1, 0))
    key = (u, v) if u < v else (v, u)
    edges = [e for e in g.edges if (e[0], e[1]) != key]
    edges.append((min(u, new_id), max(u, new_id), 1))
    edges.append((min(v, new_id), max(v, new_id), 1))
    return WeightedGraph(verts, edges)


def contractible(g: WeightedGraph, e: str) -> bool:
    """True when blowdown(g, e) is defined (e is an exceptional (-1)-vertex)."""
    vert = g.vertex(e)
    if vert.weight != 1 or vert.genus != 0:
        return False
    nbrs = g.neighbors(e)
    if len(nbrs) > 2:
        return False
    if any(g.multiplicity(e, u) != 1 for u in nbrs):
        return False
    if any(g.vertex(u).weight < 2 for u in nbrs):
        return False
    if len(nbrs) == 2 and g.multiplicity(nbrs[0], nbrs[1]) != 0:
        return False
    return True


def blowdown(g: WeightedGraph, e: str) -> WeightedGraph:
    """Inverse of the two blowups: remove e, decrement its neighbors' weights.

    With two neighbors a simple edge is restored between them.  Rejected
    unless the configuration is one a blowup could have produced: e has
    weight 1 and genus 0, at most two neighbors, simple incidences only,
    neighbors of weight >= 2 that are not already adjacent.
    """
    vert = g.vertex(e)
    if vert.weight != 1 or vert.genus != 0:
        raise ValueError(f"vertex {e!r} is not a contractible (-1)-vertex")
    nbrs = g.neighbors(e)
    if len(nbrs) > 2:
        raise ValueError(f"vertex {e!r} has {len(nbrs)} neighbors; at most 2 allowed")
    if any(g.multiplicity(e, u) != 1 for u in nbrs):
        raise ValueError(f"vertex {e!r} has a non-simple incidence")
    if any(g.vertex(u).weight < 2 for u in nbrs):
        raise ValueError(f"a neighbor of {e!r} would drop below weight 1")
    if len(nbrs) == 2 and g.multiplicity(nbrs[0], nbrs[1]) != 0:
        raise ValueError(f"neighbors of {e!r} are already adjacent")
    verts = [
        Vertex(w.id, w.weight - 1, w.genus) if w.id in nbrs else w
        for w in g.vertices
        if w.id != e
    ]
    edges = [ed for ed in g.edges if e not in (ed[0], ed[1])]
    if len(nbrs) == 2:
        u, v = sorted(nbrs)
        edges.append((u, v, 1))
    return WeightedGraph(verts, edges)


def reduce_to_minimal(g: WeightedGraph) -> tuple[WeightedGraph, list[BlowdownStep]]:
    """Blow down contractible weight-1 genus-0 vertices until none remain.

    Returns the fixed point and the contraction log.  Each pass contracts
    the first contractible vertex in id order, so the run is deterministic;
    vertices of weight 1 that are not contractible (too many neighbors,
    non-simple incidence, adjacent neighbors) are left in place.
    """
    steps: list[BlowdownStep] = []
    current = g
    while True:
        target = next((v.id for v in current.vertices if contractible(current, v.id)), None)
        if target is None:
            return current, steps
        steps.append(BlowdownStep(target, current.neighbors(target)))
        current = blowdown(current, target)


def is_minimal(g: WeightedGraph) -> bool:
    """No weight-1 genus-0 vertices at all."""
    return all(v.weight != 1 or v.genus != 0 for v in g.vertices)


# -- distances ----------------------------------------------------------


def _bfs_distances(g: WeightedGraph, start: str) -> dict[str, int]:
    dist = {start: 0}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def distance_pairs(g: WeightedGraph, rho_min: int, rho_max: int) -> int:
    """Unordered vertex pairs at graph distance in [rho_min, rho_max].

    Distance counts edges of a shortest path and ignores multiplicities
    and weights; unreachable pairs are excluded.
    """
    if rho_min < 1:
        raise ValueError("rho_min must be at least 1")
    if rho_max < rho_min:
        raise ValueError("empty distance range")
    count = 0
    for u in g.ids:
        dist = _bfs_distances(g, u)
        for v, d in dist.items():
            if v > u and rho_min <= d <= rho_max:
                count += 1
    return count


def diameter(g: WeightedGraph) -> int | None:
    """Largest pairwise distance; None when the graph is disconnected."""
    if g.n == 0:
        return 0
    best = 0
    for u in g.ids:
        dist = _bfs_distances(g, u)
        if len(dist) != g.n:
            return None
        best = max(best, max(dist.values()))
    return best


# -- canonical form -----------------------------------------------------


def _refine(g: WeightedGraph, colors: dict[str, int]) -> dict[str, int]:
    while True:
        sigs = {
            vid: (
                colors[vid],
                tuple(sorted((m, colors[u]) for u, m in g.adjacency[vid].items())),
            )
            for vid in g.ids
        }
        ranks = {s: i for i, s in enumerate(sorted(set(sigs.values())))}
        fresh = {vid: ranks[sigs[vid]] for vid in g.ids}
        if fresh == colors:
            return colors
        colors = fresh


def _initial_colors(g: WeightedGraph) -> dict[str, int]:
    keys = {v.id: (v.weight, v.genus) for v in g.vertices}
    ranks = {k: i for i, k in enumerate(sorted(set(keys.values())))}
    return {vid: ranks[key] for vid, key in keys.items()}


def _serialize(g: WeightedGraph, order: tuple[str, ...]):
    pos = {vid: i for i, vid in enumerate(order)}
    verts = tuple((g.vertex(vid).weight, g.vertex(vid).genus) for vid in order)
    edges = tuple(
        sorted(
            (min(pos[u], pos[v]), max(pos[u], pos[v]), m) for u, v, m in g.edges
        )
    )
    return (verts, edges)


def canonical_order(g: WeightedGraph) -> tuple[str, ...]:
    """Vertex ordering realizing the canonical form.

    Individualization-refinement search: color classes are refined by
    weighted neighborhoods, non-singleton cells are split by trying each
    member, and the lexicographically least serialization wins.
    """
    if g.n == 0:
        return ()
    best_key = None
    best_order: tuple[str, ...] = ()

    def search(colors: dict[str, int]) -> None:
        nonlocal best_key, best_order
        cells: dict[int, list[str]] = {}
        for vid, c in colors.items():
            cells.setdefault(c, []).append(vid)
        target = next(
            (sorted(cells[c]) for c in sorted(cells) if len(cells[c]) > 1), None
        )
        if target is None:
            order = tuple(sorted(g.ids, key=lambda vid: colors[vid]))
            key = _serialize(g, order)
            if best_key is None or key < best_key:
                best_key, best_order = key, order
            return
        for vid in target:
            bumped = {
                w: colors[w] * 2 + (0 if w == vid else 1) for w in g.ids
            }
            search(_refine(g, bumped))

    search(_refine(g, _initial_colors(g)))
    return best_order


def canonical_form(g: WeightedGraph) -> bytes:
    """Label-independent fingerprint: equal iff graphs are isomorphic."""
    cached = g.__dict__.get("_canonical_form")
    if cached is None:
        cached = repr(_serialize(g, canonical_order(g))).encode()
        g.__dict__["_canonical_form"] = cached
    return cached


def canonical_relabel(g: WeightedGraph, prefix: str = "v") -> WeightedGraph:
    """Rename vertices to prefix00..prefixNN along the canonical order.

    Zero-padded suffixes keep id order aligned with canonical order.
    """
    order = canonical_order(g)
    mapping = {vid: f"{prefix}{i:02d}" for i, vid in enumerate(order)}
    return g.relabeled(mapping)


def isomorphic(a: WeightedGraph, b: WeightedGraph) -> bool:
    return canonical_form(a) == canonical_form(b)


# -- small constructors used across the package ------------------------


def chain(weights, prefix: str = "c", genus=None) -> WeightedGraph:
    """Path graph with the given weights and simple edges."""
    weights = list(weights)
    genera = list(genus) if genus is not None else [0] * len(weights)
    verts = [Vertex(f"{prefix}{i:02d}", w, genera[i]) for i, w in enumerate(weights)]
    edges = [
        (f"{prefix}{i:02d}", f"{prefix}{i+1:02d}", 1) for i in range(len(weights) - 1)
    ]
    return WeightedGraph(verts, edges)


def cycle(weights, prefix: str = "c") -> WeightedGraph:
    weights = list(weights)
    if len(weights) < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    verts = [Vertex(f"{prefix}{i:02d}", w) for i, w in enumerate(weights)]
    n = len(weights)
    edges = [(f"{prefix}{i:02d}", f"{prefix}{(i+1) % n:02d}", 1) for i in range(n)]
    return WeightedGraph(verts, edges)


def star(center_weight: int, leaf_weights, prefix: str = "s") -> WeightedGraph:
    verts = [Vertex(f"{prefix}c", center_weight)]
    edges = []
    for i, w in enumerate(leaf_weights):
        verts.append(Vertex(f"{prefix}{i:02d}", w))
        edges.append((f"{prefix}c", f"{prefix}{i:02d}", 1))
    return WeightedGraph(verts, edges)


def connected_vertex_subsets(g: WeightedGraph):
    """Yield every connected vertex subset exactly once, deterministically.

    Subsets are grown from their least vertex (id order); the enumeration
    order is therefore fixed, which downstream code relies on for stable
    witnesses.
    """
    ids = list(g.ids)
    for i, start in enumerate(ids):
        smaller = set(ids[:i])

        def grow(subset: tuple[str, ...], forbidden: frozenset[str]):
            yield subset
            members = set(subset)
            frontier = sorted(
                {
                    u
                    for vid in subset
                    for u in g.adjacency[vid]
                    if u not in members and u not in forbidden
                }
            )
            banned = set(forbidden)
            for v in frontier:
                yield from grow(tuple(sorted(members | {v})), frozenset(banned))
                banned.add(v)

        yield from grow((start,), frozenset(smaller))
