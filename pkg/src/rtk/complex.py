"""Finite abstract simplicial complexes, face posets, subdivisions and group actions.

Vertices may be any hashable value built from ``str``, ``int``, tuples and
frozensets (derived complexes name their vertices by the cells they came
from).  Every ordering in this module goes through :func:`vertex_key`, so the
output of every construction is deterministic.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Any, Hashable, Iterable, Mapping, Sequence

Vertex = Hashable
Simplex = frozenset


class ComplexError(ValueError):
    """Invalid simplicial data."""


class NonSimplicialMapError(ComplexError):
    """A vertex map sends a simplex to a non-simplex."""

    def __init__(self, message: str, simplex: Sequence = ()):
        super().__init__(message)
        self.simplex = tuple(simplex)


@lru_cache(maxsize=1 << 18)
def vertex_key(v) -> tuple:
    """Total order on vertex identifiers (ints < strs < tuples < frozensets < others)."""
    if isinstance(v, str):
        return (1, v)
    if isinstance(v, int) and not isinstance(v, bool):
        return (0, v)
    if isinstance(v, tuple):
        return (2, tuple(vertex_key(x) for x in v))
    if isinstance(v, frozenset):
        return (3, tuple(sorted(vertex_key(x) for x in v)))
    sk = getattr(v, "sort_key", None)
    if sk is not None:
        return (4, sk())
    raise TypeError(f"unsupported vertex identifier {v!r}")


def vertex_label(v) -> str:
    """Flat string name of a vertex, used when serialising."""
    if isinstance(v, str):
        return v
    if isinstance(v, int):
        return str(v)
    if isinstance(v, tuple):
        return "(" + "|".join(vertex_label(x) for x in v) + ")"
    if isinstance(v, frozenset):
        inner = ",".join(vertex_label(x) for x in sorted(v, key=vertex_key))
        return "{" + inner + "}"
    label = getattr(v, "label", None)
    if label is not None:
        return label()
    return str(v)


def sort_vertices(vs: Iterable) -> tuple:
    return tuple(sorted(vs, key=vertex_key))


def simplex_key(s: Iterable) -> tuple:
    ks = sorted(vertex_key(v) for v in s)
    return (len(ks), tuple(ks))


def _reduce_to_maximal(simplices: Iterable[frozenset]) -> list[frozenset]:
    """Drop every simplex that is a face of another one."""
    uniq = sorted(set(simplices), key=len, reverse=True)
    kept: list[frozenset] = []
    by_vertex: dict[Any, list[frozenset]] = {}
    empty: list = []
    for s in uniq:
        # any coface contains every vertex of s; scan the shortest bucket
        bucket = min((by_vertex.get(u, empty) for u in s), key=len)
        if any(s <= t for t in bucket):
            continue
        kept.append(s)
        for u in s:
            by_vertex.setdefault(u, []).append(s)
    return kept


@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    """A finite abstract simplicial complex stored by its maximal simplices.

    Build instances with :func:`from_maximal_simplices` (validating) or
    :meth:`build` (trusted input, still normalised).
    """

    vertices: tuple
    maximal_simplices: tuple

    @classmethod
    def build(cls, vertices: Iterable, simplices: Iterable[Iterable]) -> "SimplicialComplex":
        simplices = [frozenset(s) for s in simplices]
        simplices = [s for s in simplices if s]
        verts = set(vertices)
        for s in simplices:
            verts |= s
        covered = set().union(*simplices) if simplices else set()
        simplices.extend(frozenset([v]) for v in verts - covered)
        maximal = sorted(_reduce_to_maximal(simplices), key=simplex_key)
        return cls(sort_vertices(verts), tuple(maximal))

    @classmethod
    def empty(cls) -> "SimplicialComplex":
        return cls((), ())

    # -- derived data -------------------------------------------------
    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def simplices(self) -> frozenset:
        out = set()
        for m in self.maximal_simplices:
            if m in out:
                continue
            ms = tuple(m)
            for k in range(1, len(ms) + 1):
                out.update(frozenset(c) for c in itertools.combinations(ms, k))
        return frozenset(out)

    @cached_property
    def _by_dim(self) -> dict[int, list[tuple]]:
        idx = self.index
        out: dict[int, list[tuple]] = {}
        for s in self.simplices:
            out.setdefault(len(s) - 1, []).append(tuple(sorted(s, key=idx.__getitem__)))
        for k in out:
            out[k].sort(key=lambda t: tuple(idx[v] for v in t))
        return out

    def faces(self, k: int) -> list[tuple]:
        """Simplices of dimension ``k`` as vertex tuples in canonical orientation."""
        return self._by_dim.get(k, [])

    @property
    def dim(self) -> int:
        return max((len(s) for s in self.maximal_simplices), default=0) - 1

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.faces(k)) for k in range(self.dim + 1))

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector))

    def __len__(self) -> int:
        return len(self.simplices)

    def __contains__(self, simplex) -> bool:
        return frozenset(simplex) in self.simplices

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return (set(self.vertices) == set(other.vertices)
                and set(self.maximal_simplices) == set(other.maximal_simplices))

    def __hash__(self) -> int:
        return hash((frozenset(self.vertices), frozenset(self.maximal_simplices)))

    def __repr__(self) -> str:
        return f"SimplicialComplex(n_vertices={len(self.vertices)}, f={self.f_vector})"

    def sorted_simplex(self, s: Iterable) -> tuple:
        return tuple(sorted(s, key=self.index.__getitem__))

    @cached_property
    def adjacency(self) -> dict:
        adj = {v: set() for v in self.vertices}
        for m in self.maximal_simplices:
            for a in m:
                adj[a].update(m)
        for v in adj:
            adj[v].discard(v)
        return adj

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        todo = [self.vertices[0]]
        while todo:
            v = todo.pop()
            for u in self.adjacency[v]:
                if u not in seen:
                    seen.add(u)
                    todo.append(u)
        return len(seen) == len(self.vertices)

    @cached_property
    def _maximal_by_vertex(self) -> dict:
        out: dict = {}
        for m in self.maximal_simplices:
            for v in m:
                out.setdefault(v, []).append(m)
        return out

    def full_subcomplex(self, vs: Iterable) -> "SimplicialComplex":
        keep = set(vs)
        missing = keep - set(self.index)
        if missing:
            raise ComplexError(f"unknown vertices {sorted(map(vertex_label, missing))}")
        if 4 * len(keep) > len(self.vertices):
            pieces = {m & keep for m in self.maximal_simplices}
        else:
            star = self._maximal_by_vertex
            pieces = {m & keep for v in keep for m in star[v]}
        return SimplicialComplex.build(keep, pieces)

    def subcomplex(self, simplices: Iterable[Iterable]) -> "SimplicialComplex":
        """Closure of the given simplices (which must lie in this complex)."""
        simplices = [frozenset(s) for s in simplices]
        for s in simplices:
            if s not in self.simplices:
                raise ComplexError(f"{self._fmt(s)} is not a simplex")
        return SimplicialComplex.build((), simplices)

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return all(m in other.simplices for m in self.maximal_simplices)

    def relabel(self, mapping: Mapping) -> "SimplicialComplex":
        return SimplicialComplex.build(
            (mapping[v] for v in self.vertices),
            (frozenset(mapping[v] for v in m) for m in self.maximal_simplices))

    def _fmt(self, s) -> str:
        return "[" + ", ".join(vertex_label(v) for v in sort_vertices(s)) + "]"


def from_maximal_simplices(vertices: Iterable, maximal_simplices: Iterable[Sequence]) -> SimplicialComplex:
    """Validating constructor.

    >>> from_maximal_simplices("abc", [("a", "b"), ("b", "c"), ("a", "c")]).f_vector
    (3, 3)
    """
    vertices = list(vertices)
    declared = set(vertices)
    if len(declared) != len(vertices):
        raise ComplexError("duplicate vertex declaration")
    simplices = []
    for pos, s in enumerate(maximal_simplices):
        s = list(s)
        if not s:
            raise ComplexError(f"maximal simplex #{pos} is empty")
        if len(set(s)) != len(s):
            raise ComplexError(f"maximal simplex #{pos} {s} repeats a vertex")
        bad = [v for v in s if v not in declared]
        if bad:
            raise ComplexError(f"maximal simplex #{pos} {s} mentions undeclared vertex {bad[0]!r}")
        simplices.append(frozenset(s))
    return SimplicialComplex.build(vertices, simplices)


def simplex(vertices: Iterable) -> SimplicialComplex:
    """The full simplex on the given vertices."""
    vs = list(vertices)
    return SimplicialComplex.build(vs, [vs] if vs else [])


def boundary_of_simplex(vertices: Iterable) -> SimplicialComplex:
    vs = list(vertices)
    return SimplicialComplex.build(vs, itertools.combinations(vs, len(vs) - 1))


# ---------------------------------------------------------------------------
# Face posets
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FacePoset:
    """Face poset of a regular cell complex.

    ``facets`` maps every cell payload to its codimension-one faces; the
    strict order is the transitive closure of that covering relation.
    """

    cells: tuple                 # ((dim, payload), ...) in canonical order
    facets: Mapping

    @classmethod
    def from_facets(cls, dims: Mapping, facets: Mapping) -> "FacePoset":
        cells = tuple(sorted(((dims[p], p) for p in dims), key=lambda c: (c[0], vertex_key(c[1]))))
        fac = {p: tuple(sorted(facets.get(p, ()), key=vertex_key)) for p in dims}
        poset = cls(cells, fac)
        poset.validate()
        return poset

    @classmethod
    def of_complex(cls, K: SimplicialComplex) -> "FacePoset":
        dims = {s: len(s) - 1 for s in K.simplices}
        facets = {s: [s - {v} for v in s] if len(s) > 1 else [] for s in K.simplices}
        return cls.from_facets(dims, facets)

    @classmethod
    def product(cls, P: "FacePoset", Q: "FacePoset") -> "FacePoset":
        """Cells p x q of the product cell structure, of dimension dim p + dim q."""
        dims, facets = {}, {}
        for dp, p in P.cells:
            for dq, q in Q.cells:
                dims[(p, q)] = dp + dq
                facets[(p, q)] = [(f, q) for f in P.facets[p]] + [(p, f) for f in Q.facets[q]]
        return cls.from_facets(dims, facets)

    def validate(self) -> None:
        dim = self.dim_map
        for p, fs in self.facets.items():
            for f in fs:
                if f not in dim:
                    raise ComplexError(f"face {f!r} of {p!r} is not a cell")
                if dim[f] != dim[p] - 1:
                    raise ComplexError(f"covering cells {f!r} < {p!r} do not differ by one in dimension")

    @cached_property
    def dim_map(self) -> dict:
        return {p: d for d, p in self.cells}

    @cached_property
    def below(self) -> dict:
        """payload -> frozenset of all strict faces."""
        out: dict = {}
        for _, p in self.cells:          # cells are sorted by dimension
            acc = set()
            for f in self.facets[p]:
                acc.add(f)
                acc |= out[f]
            out[p] = frozenset(acc)
        return out

    def less(self, a, b) -> bool:
        return a in self.below[b]

    def order_pairs(self) -> list[tuple]:
        return [(a, b) for _, b in self.cells for a in sorted(self.below[b], key=vertex_key)]

    def maximal_cells(self) -> list:
        covered = set()
        for fs in self.facets.values():
            covered.update(fs)
        return [p for _, p in self.cells if p not in covered]

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** d for d, _ in self.cells)

    def __len__(self) -> int:
        return len(self.cells)


def barycentric_subdivision(P) -> SimplicialComplex:
    """Order complex of a face poset (or of a simplicial complex's face poset).

    The vertex of the subdivision belonging to a cell is the cell's payload;
    for a simplicial complex that is the simplex as a frozenset.
    """
    if isinstance(P, SimplicialComplex):
        chains = []
        for m in P.maximal_simplices:
            for perm in itertools.permutations(sort_vertices(m)):
                chains.append(frozenset(frozenset(perm[:k]) for k in range(1, len(perm) + 1)))
        return SimplicialComplex.build((), chains)
    chains = []

    def descend(cell, chain):
        fs = P.facets[cell]
        if not fs:
            chains.append(frozenset(chain))
            return
        for f in fs:
            chain.append(f)
            descend(f, chain)
            chain.pop()

    for top in P.maximal_cells():
        descend(top, [top])
    return SimplicialComplex.build((p for _, p in P.cells), chains)


# ---------------------------------------------------------------------------
# Local structure
# ---------------------------------------------------------------------------

def is_flag(K: SimplicialComplex) -> bool:
    """Every clique of the 1-skeleton spans a simplex."""
    adj = K.adjacency
    simplices = K.simplices
    for s in simplices:
        it = iter(s)
        common = set(adj[next(it)])
        for u in it:
            common &= adj[u]
        for v in common:
            if s | {v} not in simplices:
                return False
    return True


def is_full_subcomplex(L: SimplicialComplex, A: SimplicialComplex) -> bool:
    if not set(L.vertices) <= set(A.vertices) or not L.is_subcomplex_of(A):
        raise ComplexError("first argument is not a subcomplex of the second")
    return A.full_subcomplex(L.vertices).simplices == L.simplices


def _check_vertex(K: SimplicialComplex, v) -> None:
    if v not in K.index:
        raise ComplexError(f"unknown vertex {vertex_label(v)!r}")


def closed_star(K: SimplicialComplex, v) -> SimplicialComplex:
    _check_vertex(K, v)
    return SimplicialComplex.build((), (m for m in K.maximal_simplices if v in m))


def link(K: SimplicialComplex, v) -> SimplicialComplex:
    _check_vertex(K, v)
    return SimplicialComplex.build((), (m - {v} for m in K.maximal_simplices if v in m))


def cone(N: SimplicialComplex, apex="*") -> SimplicialComplex:
    if apex in N.index:
        raise ComplexError(f"apex {apex!r} collides with a vertex of the base")
    if not N.vertices:
        return SimplicialComplex.build([apex], [])
    return SimplicialComplex.build([apex], (m | {apex} for m in N.maximal_simplices))


def find_isomorphism(A: SimplicialComplex, B: SimplicialComplex, cap: int = 64) -> dict | None:
    """Exhaustive backtracking search for a simplicial isomorphism A -> B.

    Raises ``ComplexError`` when either complex has more than ``cap`` vertices.
    """
    if max(len(A.vertices), len(B.vertices)) > cap:
        raise ComplexError(f"isomorphism search cap of {cap} vertices exceeded")
    if A.f_vector != B.f_vector or len(A.vertices) != len(B.vertices):
        return None

    def profile(K):
        prof = {v: [0] * (K.dim + 2) for v in K.vertices}
        for s in K.simplices:
            for v in s:
                prof[v][len(s)] += 1
        return {v: tuple(p) for v, p in prof.items()}

    pa, pb = profile(A), profile(B)
    if sorted(pa.values()) != sorted(pb.values()):
        return None
    order = sorted(A.vertices, key=lambda v: (-len(A.adjacency[v]), vertex_key(v)))
    # visit vertices adjacent to already placed ones first
    placed_order, seen = [], set()
    for root in order:
        if root in seen:
            continue
        queue = deque([root])
        seen.add(root)
        while queue:
            v = queue.popleft()
            placed_order.append(v)
            for u in sorted(A.adjacency[v], key=vertex_key):
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
    bsimp = B.simplices
    mapping: dict = {}
    used: set = set()

    def consistent(v, w) -> bool:
        for u in A.adjacency[v]:
            if u in mapping and mapping[u] not in B.adjacency[w]:
                return False
        for u in B.adjacency[w]:
            pre = [x for x, y in mapping.items() if y == u]
            if pre and pre[0] not in A.adjacency[v]:
                return False
        return True

    def extend(i) -> bool:
        if i == len(placed_order):
            return all(frozenset(mapping[v] for v in s) in bsimp for s in A.maximal_simplices)
        v = placed_order[i]
        for w in B.vertices:
            if w in used or pb[w] != pa[v] or not consistent(v, w):
                continue
            mapping[v] = w
            used.add(w)
            if extend(i + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    return dict(mapping) if extend(0) else None


# ---------------------------------------------------------------------------
# Maps and actions
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SimplicialMap:
    domain: SimplicialComplex
    codomain: SimplicialComplex
    vertex_map: Mapping

    def __post_init__(self):
        for v in self.domain.vertices:
            if v not in self.vertex_map:
                raise ComplexError(f"vertex {vertex_label(v)!r} has no image")
            if self.vertex_map[v] not in self.codomain.index:
                raise ComplexError(f"image of {vertex_label(v)!r} is not a vertex of the codomain")
        cod = self.codomain.simplices
        for m in self.domain.maximal_simplices:
            if frozenset(self.vertex_map[v] for v in m) not in cod:
                raise NonSimplicialMapError(
                    f"simplex {self.domain._fmt(m)} is sent to a non-simplex", sort_vertices(m))

    def __call__(self, s):
        if isinstance(s, (frozenset, set)):
            return frozenset(self.vertex_map[v] for v in s)
        return self.vertex_map[s]

    def is_injective(self) -> bool:
        return len(set(self.vertex_map[v] for v in self.domain.vertices)) == len(self.domain.vertices)

    def image(self) -> SimplicialComplex:
        return SimplicialComplex.build((), (self(m) for m in self.domain.maximal_simplices))

    def compose(self, other: "SimplicialMap") -> "SimplicialMap":
        """``self o other``."""
        return SimplicialMap(other.domain, self.codomain,
                             {v: self.vertex_map[other.vertex_map[v]] for v in other.domain.vertices})


def check_automorphism(K: SimplicialComplex, gen: Mapping, name: str = "generator") -> dict:
    """Complete a partial vertex map (unlisted vertices fixed) and validate it."""
    full = {v: gen.get(v, v) for v in K.vertices}
    for v, w in gen.items():
        if v not in K.index:
            raise ComplexError(f"{name}: unknown vertex {vertex_label(v)!r}")
        if w not in K.index:
            raise ComplexError(f"{name}: image {vertex_label(w)!r} of {vertex_label(v)!r} is not a vertex")
    if len(set(full.values())) != len(full):
        raise ComplexError(f"{name}: vertex map is not a bijection")
    simp = K.simplices
    for m in K.maximal_simplices:
        img = frozenset(full[v] for v in m)
        if img not in simp:
            raise NonSimplicialMapError(
                f"{name}: simplex {K._fmt(m)} is sent to {K._fmt(img)}, which is not a simplex",
                sort_vertices(m))
    return full


class GroupAction:
    """A finite permutation group acting on a complex by simplicial automorphisms.

    Elements are indexed; index 0 is the identity and the rest are listed in
    breadth-first order from the generators.  ``table[i][j]`` is the index of
    ``g_i o g_j``.
    """

    def __init__(self, complex: SimplicialComplex, generators: Sequence[Mapping], *,
                 _elements: Sequence[tuple] | None = None, max_order: int = 100_000):
        self.complex = complex
        self.generators = tuple(check_automorphism(complex, g, f"generator {i}")
                                for i, g in enumerate(generators)) if _elements is None else tuple(generators)
        idx = complex.index
        verts = complex.vertices
        if _elements is None:
            ident = tuple(range(len(verts)))
            gens = [tuple(idx[g[v]] for v in verts) for g in self.generators]
            elements, seen = [ident], {ident: 0}
            queue = deque([ident])
            while queue:
                e = queue.popleft()
                for g in gens:
                    prod = tuple(g[i] for i in e)
                    if prod not in seen:
                        seen[prod] = len(elements)
                        elements.append(prod)
                        queue.append(prod)
                        if len(elements) > max_order:
                            raise ComplexError("group order exceeds cap")
            _elements = elements
        self.elements = tuple(tuple(e) for e in _elements)
        self._pos = {e: i for i, e in enumerate(self.elements)}
        n = len(self.elements)
        self.table = [[self._pos[tuple(a[i] for i in b)] for b in self.elements] for a in self.elements]
        self._inv = [next(j for j in range(n) if self.table[i][j] == 0) for i in range(n)]
        self._maps = [{verts[i]: verts[e[i]] for i in range(len(verts))} for e in self.elements]

    @classmethod
    def trivial(cls, K: SimplicialComplex) -> "GroupAction":
        return cls(K, [])

    @property
    def order(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"GroupAction(order={self.order}, on={self.complex!r})"

    def vertex_map(self, g: int) -> dict:
        return self._maps[g]

    def apply(self, g: int, v):
        return self._maps[g][v]

    def apply_simplex(self, g: int, s) -> frozenset:
        m = self._maps[g]
        return frozenset(m[v] for v in s)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def generator_indices(self) -> list[int]:
        idx = self.complex.index
        verts = self.complex.vertices
        return [self._pos[tuple(idx[g[v]] for v in verts)] for g in self.generators]

    def verify_group(self) -> bool:
        """Exhaustive check of the group axioms on the multiplication table."""
        n = self.order
        T = self.table
        for a in range(n):
            if T[0][a] != a or T[a][0] != a or T[a][self._inv[a]] != 0 or T[self._inv[a]][a] != 0:
                return False
            for b in range(n):
                for c in range(n):
                    if T[T[a][b]][c] != T[a][T[b][c]]:
                        return False
        return True

    def is_subgroup(self, H: Iterable[int]) -> bool:
        H = set(H)
        if 0 not in H:
            return False
        return all(self.table[a][b] in H for a in H for b in H)

    def subgroup_generated(self, gens: Iterable[int]) -> frozenset:
        gens = list(gens)
        out, todo = {0}, [0]
        while todo:
            a = todo.pop()
            for g in gens:
                c = self.table[a][g]
                if c not in out:
                    out.add(c)
                    todo.append(c)
        return frozenset(out)

    def normalizer(self, H: Iterable[int]) -> frozenset:
        H = frozenset(H)
        return frozenset(g for g in range(self.order)
                         if {self.table[self.table[g][h]][self._inv[g]] for h in H} == H)

    def restrict(self, sub: SimplicialComplex) -> "GroupAction":
        """Restriction to a stable subcomplex, keeping element indices."""
        for g in range(self.order):
            for m in sub.maximal_simplices:
                if self.apply_simplex(g, m) not in sub.simplices:
                    raise ComplexError("subcomplex is not stable under the action")
        idx = sub.index
        elements = [tuple(idx[self._maps[g][v]] for v in sub.vertices) for g in range(self.order)]
        gens = [{v: self._maps[g][v] for v in sub.vertices} for g in self.generator_indices()]
        return GroupAction(sub, gens, _elements=elements)

    def transport(self, K: SimplicialComplex, mapping: Mapping) -> "GroupAction":
        """Same group acting on ``K`` through a bijection ``mapping: self.complex -> K``."""
        inv = {w: v for v, w in mapping.items()}
        idx = K.index
        elements = [tuple(idx[mapping[self._maps[g][inv[w]]]] for w in K.vertices)
                    for g in range(self.order)]
        gens = [{w: mapping[self._maps[g][inv[w]]] for w in K.vertices} for g in self.generator_indices()]
        return GroupAction(K, gens, _elements=elements)


def induced_action_on_sd(act: GroupAction) -> GroupAction:
    """The action on the barycentric subdivision, with the same element indexing."""
    sd = barycentric_subdivision(act.complex)
    idx = sd.index
    elements = [tuple(idx[act.apply_simplex(g, s)] for s in sd.vertices) for g in range(act.order)]
    gens = [{s: act.apply_simplex(g, s) for s in sd.vertices} for g in act.generator_indices()]
    return GroupAction(sd, gens, _elements=elements)


def is_admissible(act: GroupAction) -> bool:
    """Setwise simplex stabilisers fix their simplices pointwise."""
    for g in range(1, act.order):
        m = act.vertex_map(g)
        moved = {v for v in act.complex.vertices if m[v] != v}
        if not moved:
            continue
        for s in act.complex.simplices:
            if s & moved and frozenset(m[v] for v in s) == s:
                return False
    return True


def vertex_orbits(act: GroupAction) -> dict:
    """vertex -> canonical orbit representative (least member)."""
    rep = {}
    for v in act.complex.vertices:          # vertices are sorted, so the first hit is least
        if v in rep:
            continue
        for g in range(act.order):
            rep.setdefault(act.apply(g, v), v)
    return rep


def is_regular(act: GroupAction) -> bool:
    """Orbit-space condition: the vertex-orbit quotient realises the orbit space.

    No simplex has two vertices in one orbit, and simplices with the same
    vertex orbits form a single orbit of simplices.
    """
    rep = vertex_orbits(act)
    groups: dict = {}
    for s in act.complex.simplices:
        img = frozenset(rep[v] for v in s)
        if len(img) != len(s):
            return False
        groups.setdefault(img, []).append(s)
    for members in groups.values():
        if len(members) == 1:
            continue
        orbit = {act.apply_simplex(g, members[0]) for g in range(act.order)}
        if any(m not in orbit for m in members):
            return False
    return True


def quotient_complex(act: GroupAction) -> SimplicialComplex:
    """Simplicial orbit complex.

    Requires an admissible action.  When the vertex-orbit quotient would not
    be the orbit space, the action is passed to the barycentric subdivision
    first (one subdivision of an admissible action always suffices).
    """
    if not is_admissible(act):
        raise ComplexError("action is not admissible; subdivide first")
    for _ in range(2):
        if is_regular(act):
            rep = vertex_orbits(act)
            return SimplicialComplex.build(set(rep.values()),
                                           (frozenset(rep[v] for v in m) for m in act.complex.maximal_simplices))
        act = induced_action_on_sd(act)
    raise ComplexError("action did not become regular after subdivision")


def fixed_subcomplex(act: GroupAction, H: Iterable[int] | None = None) -> SimplicialComplex:
    """Simplices fixed pointwise by every element of ``H`` (default: the whole group)."""
    H = list(range(act.order)) if H is None else list(H)
    if not act.is_subgroup(H):
        raise ComplexError(f"{sorted(H)} is not a subgroup")
    if not is_admissible(act):
        raise ComplexError("action is not admissible; compute in the subdivision")
    fixed = [v for v in act.complex.vertices if all(act.apply(h, v) == v for h in H)]
    return act.complex.full_subcomplex(fixed)
