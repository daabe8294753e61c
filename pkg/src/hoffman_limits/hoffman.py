"""Hoffman graphs: graphs whose vertices are labelled slim or fat.

Fat vertices are pairwise non-adjacent and each has a slim neighbour.  The
eigenvalues of a Hoffman graph are those of ``B = A_s - C C^T`` where
``A_s`` is the slim adjacency matrix and ``C`` the slim-by-fat incidence
matrix; an ordinary graph is the all-slim case, with ``B = A``.

Catalog entries (slim vertices first, then fats):

``H2``
    slim ``0``; fats ``1, 2`` both on ``0``.  ``B = [-2]``.
``H3``
    slim edge ``0-1``; fat ``2`` on both, private fats ``3`` on ``0``
    and ``4`` on ``1``.  ``B = -2I``.
``H8``
    slim path ``0-1-2``; one private fat per slim vertex (``3, 4, 5``).
    ``B = A(P3) - I``, smallest eigenvalue ``-1-sqrt(2)``.
``H9``
    slim ``0..3`` with edges ``01, 02, 23``; fat ``4`` on ``0``, fat ``5``
    on ``2``, fat ``6`` on ``1`` and ``3``.  ``B`` is a signed 4-cycle minus
    ``I``, smallest eigenvalue ``-1-sqrt(2)``.
``HWN``
    slim paw (triangle ``0,1,2``, pendant ``3`` on ``0``); private fats
    ``4, 5, 6, 7`` on ``0, 1, 2, 3``.  ``B = A(paw) - I``, smallest
    eigenvalue the smallest root of ``x^3+2x^2-2x-2``.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterable, Mapping, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components as _sparse_components

from .errors import InputError, ValidityError
from .graph import SimpleGraph, induced_subgraph, make_graph
from .linalg import DEFAULT_TOL, lambda_min
from .poly import IntPolynomial, char_poly, min_root, poly_divides
from .spectra import ALPHA0_POLY, ALPHA1_POLY

__all__ = [
    "Label",
    "HoffmanGraph",
    "SumSpec",
    "make_hoffman",
    "hoffman_from_fat",
    "b_matrix",
    "b_matrix_sparse",
    "hlambda_min",
    "slim_graph",
    "induced_hoffman",
    "hsum",
    "verify_decomposition",
    "clique_extension",
    "catalog",
    "CATALOG_NAMES",
    "CATALOG_POLYS",
    "certify_entry",
    "hoffman_to_json",
    "hoffman_from_json",
]


class Label(enum.Enum):
    SLIM = "s"
    FAT = "f"

    @classmethod
    def coerce(cls, x) -> "Label":
        if isinstance(x, cls):
            return x
        key = str(x).lower()
        if key in ("s", "slim"):
            return cls.SLIM
        if key in ("f", "fat"):
            return cls.FAT
        raise InputError(f"unknown vertex label {x!r}")


@dataclass(frozen=True)
class HoffmanGraph:
    graph: SimpleGraph
    fat: frozenset[int]

    @cached_property
    def slim(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.graph.n) if v not in self.fat)

    @cached_property
    def fats(self) -> tuple[int, ...]:
        return tuple(sorted(self.fat))

    @property
    def labels(self) -> tuple[Label, ...]:
        return tuple(Label.FAT if v in self.fat else Label.SLIM for v in range(self.graph.n))

    def fat_neighbors(self, v: int) -> list[int]:
        return [u for u in self.graph.nbrs[v] if u in self.fat]

    def __repr__(self) -> str:
        return f"HoffmanGraph(slim={len(self.slim)}, fat={len(self.fat)}, m={self.graph.m})"


def _validate(graph: SimpleGraph, fat: frozenset[int]) -> None:
    for f in sorted(fat):
        if not 0 <= f < graph.n:
            raise InputError(f"fat vertex {f} outside 0..{graph.n - 1}")
        nb = graph.nbrs[f]
        if not nb:
            raise ValidityError(f"fat vertex {f} has no slim neighbour")
        for u in nb:
            if u in fat:
                raise ValidityError(f"fat vertices {f} and {u} are adjacent")


def make_hoffman(graph: SimpleGraph, labels: Sequence) -> HoffmanGraph:
    if len(labels) != graph.n:
        raise InputError(f"{len(labels)} labels for {graph.n} vertices")
    fat = frozenset(v for v, x in enumerate(labels) if Label.coerce(x) is Label.FAT)
    _validate(graph, fat)
    return HoffmanGraph(graph, fat)


def hoffman_from_fat(graph: SimpleGraph, fat: Iterable[int]) -> HoffmanGraph:
    fat = frozenset(fat)
    _validate(graph, fat)
    return HoffmanGraph(graph, fat)


def b_matrix(H: HoffmanGraph) -> np.ndarray:
    """Dense ``A_s - C C^T``, rows and columns in increasing slim order."""
    slim = H.slim
    pos = {v: i for i, v in enumerate(slim)}
    s = len(slim)
    B = np.zeros((s, s), dtype=np.int64)
    for v in slim:
        i = pos[v]
        for u in H.graph.nbrs[v]:
            if u in pos:
                B[i, pos[u]] += 1
    for f in H.fats:
        idx = [pos[u] for u in H.graph.nbrs[f]]
        B[np.ix_(idx, idx)] -= 1
    return B


def b_matrix_sparse(H: HoffmanGraph) -> sp.csr_matrix:
    A = H.graph.sparse_adjacency()
    slim = np.array(H.slim, dtype=np.int64)
    fats = np.array(H.fats, dtype=np.int64)
    As = A[slim][:, slim]
    if len(fats) == 0:
        return sp.csr_matrix(As)
    C = A[slim][:, fats]
    B = (As - C @ C.T).tocsr()
    B.eliminate_zeros()
    return B


def hlambda_min(H: HoffmanGraph, tol: float = DEFAULT_TOL) -> float:
    """Smallest eigenvalue of ``B(H)``.

    ``B`` is split into its irreducible diagonal blocks first; for a sum
    of Hoffman graphs these are no larger than the summands, so identical
    blocks are solved once.
    """
    s = len(H.slim)
    if s == 0:
        raise InputError("Hoffman graph without slim vertices has no eigenvalues")
    if s <= 200:
        return lambda_min(b_matrix(H), tol)
    B = b_matrix_sparse(H)
    ncomp, comp = _sparse_components(B, directed=False)
    order = np.argsort(comp, kind="stable")
    bounds = np.searchsorted(comp[order], np.arange(ncomp + 1))
    cache: dict[bytes, float] = {}
    best = np.inf
    for c in range(ncomp):
        idx = order[bounds[c] : bounds[c + 1]]
        block = B[idx][:, idx].toarray()
        key = block.tobytes() + bytes(str(block.shape), "ascii")
        if key not in cache:
            cache[key] = lambda_min(block, tol)
        best = min(best, cache[key])
    return float(best)


def slim_graph(H: HoffmanGraph) -> SimpleGraph:
    return induced_subgraph(H.graph, H.slim)


def induced_hoffman(H: HoffmanGraph, vertices: Iterable[int]) -> HoffmanGraph:
    """Induced Hoffman subgraph; vertex ``vertices[i]`` becomes ``i``."""
    vs = list(vertices)
    sub = induced_subgraph(H.graph, vs)
    fat = frozenset(i for i, v in enumerate(vs) if v in H.fat)
    _validate(sub, fat)
    return HoffmanGraph(sub, fat)


@dataclass(frozen=True)
class SumSpec:
    """Summands plus the classes of fat vertices to identify.

    Each class is a collection of ``(summand_index, fat_vertex)`` pairs and
    becomes one fat vertex of the sum.  Fats in no class stay private.
    """

    summands: tuple[HoffmanGraph, ...]
    fat_sharing: tuple[tuple[tuple[int, int], ...], ...] = ()

    def __init__(self, summands: Sequence[HoffmanGraph], fat_sharing: Iterable[Iterable[Sequence[int]]] = ()):
        object.__setattr__(self, "summands", tuple(summands))
        object.__setattr__(
            self, "fat_sharing", tuple(tuple((int(i), int(f)) for i, f in cls) for cls in fat_sharing)
        )


def _check_sumspec(spec: SumSpec) -> dict[tuple[int, int], int]:
    if not spec.summands:
        raise InputError("a sum needs at least one summand")
    owner: dict[tuple[int, int], int] = {}
    for c, members in enumerate(spec.fat_sharing):
        used = set()
        for i, f in members:
            if not 0 <= i < len(spec.summands):
                raise InputError(f"summand index {i} out of range")
            if f not in spec.summands[i].fat:
                raise InputError(f"vertex {f} is not a fat vertex of summand {i}")
            if i in used:
                raise ValidityError(f"fat class {c} contains two fat vertices of summand {i}")
            if (i, f) in owner:
                raise InputError(f"fat vertex {f} of summand {i} appears in two classes")
            used.add(i)
            owner[(i, f)] = c
    return owner


def hsum(spec: SumSpec, return_maps: bool = False):
    """The sum of the summands, glued along the shared fat classes.

    Slim vertices of the result come first, summand by summand in their
    original order, followed by the fat vertices in order of first
    appearance.  Slim vertices of different summands are adjacent exactly
    when they share a fat neighbour; sharing two raises
    :class:`ValidityError`.

    With ``return_maps`` the result is ``(H, slim_maps, fat_maps)`` where
    ``slim_maps[i][v]`` / ``fat_maps[i][f]`` give the new index of vertex
    ``v`` / ``f`` of summand ``i``.
    """
    owner = _check_sumspec(spec)
    slim_maps: list[dict[int, int]] = []
    nslim = 0
    for H in spec.summands:
        slim_maps.append({v: nslim + k for k, v in enumerate(H.slim)})
        nslim += len(H.slim)

    fat_maps: list[dict[int, int]] = []
    class_id: dict[int, int] = {}
    nxt = nslim
    for i, H in enumerate(spec.summands):
        fm = {}
        for f in H.fats:
            c = owner.get((i, f))
            if c is None:
                fm[f] = nxt
                nxt += 1
            else:
                if c not in class_id:
                    class_id[c] = nxt
                    nxt += 1
                fm[f] = class_id[c]
        fat_maps.append(fm)
    total = nxt

    adj: list[set[int]] = [set() for _ in range(total)]
    part = [0] * nslim
    for i, H in enumerate(spec.summands):
        sm, fm = slim_maps[i], fat_maps[i]
        for v in H.slim:
            x = sm[v]
            part[x] = i
            for u in H.graph.nbrs[v]:
                y = sm.get(u)
                if y is None:
                    y = fm[u]
                    adj[y].add(x)
                adj[x].add(y)

    members = {F: [x for x in adj[F]] for F in range(nslim, total)}
    for x in range(nslim):
        fats = [F for F in adj[x] if F >= nslim]
        if not fats:
            continue
        px = part[x]
        seen: set[int] = set()
        for F in fats:
            for y in members[F]:
                if part[y] != px:
                    if y in seen:
                        raise ValidityError(
                            f"slim vertices {x} and {y} of different summands share two fat neighbours"
                        )
                    seen.add(y)
        adj[x] |= seen

    G = SimpleGraph._from_sets(total, adj)
    H = HoffmanGraph(G, frozenset(range(nslim, total)))
    _validate(G, H.fat)
    if return_maps:
        return H, slim_maps, fat_maps
    return H


def verify_decomposition(H: HoffmanGraph, parts: Sequence[Iterable[int]]) -> bool:
    """True iff ``H`` is the sum of the induced Hoffman subgraphs on ``parts``.

    Each part is a set of slim vertices; its induced Hoffman subgraph
    includes every fat neighbour of the part.
    """
    part_of: dict[int, int] = {}
    for p, vs in enumerate(parts):
        vs = list(vs)
        if not vs:
            return False
        for v in vs:
            if v in H.fat or not 0 <= v < H.graph.n or v in part_of:
                return False
            part_of[v] = p
    if len(part_of) != len(H.slim):
        return False

    nbrs = H.graph.nbrs
    fat = H.fat
    for x in H.slim:
        px = part_of[x]
        via_fat = Counter(
            y for F in nbrs[x] if F in fat for y in nbrs[F] if y != x and part_of[y] != px
        )
        if via_fat and max(via_fat.values()) > 1:
            return False
        direct = {y for y in nbrs[x] if y not in fat and part_of[y] != px}
        if direct != set(via_fat):
            return False
    return True


def clique_extension(H: HoffmanGraph, n: int) -> SimpleGraph:
    """Replace every fat vertex by a slim ``n``-clique joined to its neighbours.

    Slim vertices keep their relative order and come first; the clique of
    the ``j``-th fat vertex occupies ``s + j*n .. s + (j+1)*n - 1``.
    """
    if n < 1:
        raise InputError("clique size must be at least 1")
    slim = H.slim
    pos = {v: i for i, v in enumerate(slim)}
    s = len(slim)
    edges = [(pos[u], pos[v]) for u, v in H.graph.edges() if u in pos and v in pos]
    for j, f in enumerate(H.fats):
        clique = range(s + j * n, s + (j + 1) * n)
        edges += [(a, b) for a in clique for b in clique if a < b]
        edges += [(a, pos[u]) for a in clique for u in H.graph.nbrs[f]]
    return make_graph(s + n * len(H.fats), edges)


_CATALOG_SPECS: dict[str, tuple[int, list[tuple[int, int]], list[int]]] = {
    "H2": (3, [(0, 1), (0, 2)], [1, 2]),
    "H3": (5, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 4)], [2, 3, 4]),
    "H8": (6, [(0, 1), (1, 2), (0, 3), (1, 4), (2, 5)], [3, 4, 5]),
    "H9": (7, [(0, 1), (0, 2), (2, 3), (0, 4), (2, 5), (1, 6), (3, 6)], [4, 5, 6]),
    "HWN": (8, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (1, 5), (2, 6), (3, 7)], [4, 5, 6, 7]),
}

CATALOG_NAMES = tuple(_CATALOG_SPECS)

# exact smallest eigenvalue of each entry, as the minimal polynomial of its value
CATALOG_POLYS: Mapping[str, IntPolynomial] = {
    "H2": IntPolynomial((2, 1)),
    "H3": IntPolynomial((2, 1)),
    "H8": ALPHA0_POLY,
    "H9": ALPHA0_POLY,
    "HWN": ALPHA1_POLY,
}


def catalog(name: str) -> HoffmanGraph:
    key = name.upper()
    if key not in _CATALOG_SPECS:
        raise InputError(f"unknown catalog entry {name!r}; available: {', '.join(CATALOG_NAMES)}")
    n, edges, fat = _CATALOG_SPECS[key]
    return hoffman_from_fat(make_graph(n, edges), fat)


def certify_entry(H: HoffmanGraph, poly: IntPolynomial, tol: float = DEFAULT_TOL) -> bool:
    """Exact and numeric agreement of ``lambda_min(H)`` with the smallest root of ``poly``."""
    cp = char_poly(b_matrix(H).tolist())
    return poly_divides(poly, cp) and abs(hlambda_min(H, tol) - min_root(poly)) <= tol


def hoffman_to_json(H: HoffmanGraph) -> dict[str, Any]:
    return {"n": H.graph.n, "edges": [list(e) for e in H.graph.edges()], "fat": list(H.fats)}


def hoffman_from_json(doc: Mapping[str, Any]) -> HoffmanGraph:
    try:
        G = make_graph(int(doc["n"]), [tuple(e) for e in doc["edges"]])
        fat = [int(v) for v in doc.get("fat", [])]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed Hoffman graph JSON: {exc}") from None
    return hoffman_from_fat(G, fat)
