"""Right-angled Coxeter groups of flag complexes.

Generators are numbered by their position in the declared generator order;
words are tuples of those numbers.  Elements are stored in shortlex normal
form (shortest, then lexicographically least reduced word), which makes them
hashable labels.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .complex import SimplicialComplex, vertex_label, vertex_key

DEFAULT_BALL_CAP = 6


class RacgError(ValueError):
    pass


@dataclass(frozen=True)
class RacgElement:
    """An element of W as its shortlex normal form."""

    word: tuple
    graph: "CommutationGraph" = field(compare=False, repr=False, hash=False)

    def __len__(self) -> int:
        return len(self.word)

    def __mul__(self, other: "RacgElement") -> "RacgElement":
        return self.graph.multiply(self, other)

    def inverse(self) -> "RacgElement":
        return self.graph.invert(self)

    def is_identity(self) -> bool:
        return not self.word

    def sort_key(self) -> tuple:
        return (len(self.word), self.word)

    def label(self) -> str:
        if not self.word:
            return "e"
        return ".".join(self.graph.names[i] for i in self.word)

    def __str__(self) -> str:
        return self.label()


class CommutationGraph:
    """Simple graph on an ordered generator set; edges are commuting pairs."""

    def __init__(self, generators: Sequence, edges: Iterable[tuple] = (), *,
                 ball_cap: int = DEFAULT_BALL_CAP):
        self.generators = tuple(generators)
        if len(set(self.generators)) != len(self.generators):
            raise RacgError("repeated generator")
        self.index = {g: i for i, g in enumerate(self.generators)}
        self.names = [vertex_label(g) for g in self.generators]
        self._name_index = {n: i for i, n in enumerate(self.names)}
        self.mask = [0] * len(self.generators)
        self.edges = set()
        for a, b in edges:
            i, j = self.index[a], self.index[b]
            if i == j:
                raise RacgError("loops are not allowed")
            self.mask[i] |= 1 << j
            self.mask[j] |= 1 << i
            self.edges.add((min(i, j), max(i, j)))
        self.edges = frozenset(self.edges)
        self.ball_cap = ball_cap
        self.identity = RacgElement((), self)
        self._nf = lru_cache(maxsize=1 << 20)(self._normal_form_reduced)
        self._coset_cache: dict = {}

    @classmethod
    def from_complex(cls, N: SimplicialComplex, **kw) -> "CommutationGraph":
        return cls(N.vertices, [tuple(e) for e in N.faces(1)], **kw)

    def __len__(self) -> int:
        return len(self.generators)

    def __repr__(self) -> str:
        return f"CommutationGraph(n={len(self)}, edges={len(self.edges)})"

    def commute(self, i: int, j: int) -> bool:
        return bool(self.mask[i] >> j & 1)

    def is_complete(self) -> bool:
        n = len(self)
        return len(self.edges) == n * (n - 1) // 2

    # -- words -----------------------------------------------------------
    def to_word(self, symbols: Iterable) -> tuple:
        """Translate generator objects or their names into a word of indices."""
        out = []
        for x in symbols:
            if x in self.index:
                out.append(self.index[x])
            elif isinstance(x, str) and x in self._name_index:
                out.append(self._name_index[x])
            else:
                raise RacgError(f"unknown generator {x!r}")
        return tuple(out)

    def _valid(self, word: Iterable) -> tuple:
        word = tuple(word)
        n = len(self)
        for x in word:
            if not (isinstance(x, int) and 0 <= x < n):
                raise RacgError(f"unknown generator index {x!r}")
        return word

    def parse(self, text: str) -> "RacgElement":
        """Generator names separated by ``.``, ``,`` or spaces; ``#i`` names index i.

        Names are matched longest-first, so labels that themselves contain
        separators (derived vertices such as ``{0,1}``) still parse.
        ``e`` or the empty string is the identity.
        """
        text = text.strip()
        if text in ("", "e"):
            return self.identity
        names = sorted(self._name_index, key=len, reverse=True)
        word, pos = [], 0
        while pos < len(text):
            if text[pos] in "., \t":
                pos += 1
                continue
            if text[pos] == "#":
                end = pos + 1
                while end < len(text) and text[end].isdigit():
                    end += 1
                word.append(self._valid([int(text[pos + 1:end])])[0] if end > pos + 1 else -1)
                if word[-1] < 0:
                    raise RacgError(f"bad index token at offset {pos} in {text!r}")
                pos = end
                continue
            hit = next((n for n in names if text.startswith(n, pos)), None)
            if hit is None:
                raise RacgError(f"unknown generator at offset {pos} in {text!r}")
            word.append(self._name_index[hit])
            pos += len(hit)
        return self.normal_form(word)

    def reduce(self, word: Iterable) -> tuple:
        """A reduced word (of generator indices) for the same element.

        Appending a letter either cancels the last occurrence of it that is
        separated from the end only by commuting letters, or extends the word.
        """
        out: list = []
        mask = self.mask
        for s in self._valid(word):
            m = mask[s]
            for k in range(len(out) - 1, -1, -1):
                t = out[k]
                if t == s:
                    del out[k]
                    break
                if not m >> t & 1:
                    out.append(s)
                    break
            else:
                out.append(s)
        return tuple(out)

    def _normal_form_reduced(self, w: tuple) -> tuple:
        # repeatedly pull the least letter that commutes past everything before it
        mask = self.mask
        w = list(w)
        res = []
        while w:
            seen, best, bpos = 0, None, None
            for pos, t in enumerate(w):
                if not seen & ~mask[t] and (best is None or t < best):
                    best, bpos = t, pos
                seen |= 1 << t
            res.append(best)
            del w[bpos]
        return tuple(res)

    def normal_form(self, word: Iterable) -> RacgElement:
        return RacgElement(self._nf(self.reduce(word)), self)

    def element(self, word: Iterable) -> RacgElement:
        return self.normal_form(word)

    def _check(self, *xs: RacgElement) -> None:
        for x in xs:
            if x.graph is not self:
                raise RacgError("element belongs to a different commutation graph")

    def multiply(self, x: RacgElement, y: RacgElement) -> RacgElement:
        self._check(x, y)
        if not y.word:
            return x
        if not x.word:
            return y
        return RacgElement(self._nf(self.reduce(x.word + y.word)), self)

    def invert(self, x: RacgElement) -> RacgElement:
        self._check(x)
        return RacgElement(self._nf(x.word[::-1]), self)

    def generator(self, i: int) -> RacgElement:
        return RacgElement(self._valid([i]), self)

    # -- parabolics ------------------------------------------------------
    def parabolic(self, J: Iterable) -> frozenset:
        """Generator index set (validated)."""
        return frozenset(self._valid(J))

    def is_finite_parabolic(self, J: Iterable) -> bool:
        J = sorted(self.parabolic(J))
        return all(self.commute(a, b) for i, a in enumerate(J) for b in J[i + 1:])

    def parabolic_elements(self, J: Iterable, cap: int = 1 << 12) -> list[RacgElement]:
        """Closure of W_J; raises once more than ``cap`` elements appear."""
        J = sorted(self.parabolic(J))
        out = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for j in J:
                    y = self.multiply(x, RacgElement((j,), self))
                    if y not in out:
                        out.add(y)
                        nxt.append(y)
                        if len(out) > cap:
                            raise RacgError("parabolic closure exceeded cap")
            frontier = nxt
        return sorted(out, key=RacgElement.sort_key)

    def min_coset_rep(self, w: RacgElement, J: Iterable) -> RacgElement:
        """Shortest element of the coset w W_J."""
        self._check(w)
        Jm = 0
        for j in (J if isinstance(J, frozenset) else self.parabolic(J)):
            Jm |= 1 << j
        key = (w.word, Jm)
        hit = self._coset_cache.get(key)
        if hit is not None:
            return hit
        word = list(w.word)
        mask = self.mask
        changed = True
        while changed and Jm:
            changed = False
            after = 0
            for pos in range(len(word) - 1, -1, -1):
                t = word[pos]
                if Jm >> t & 1 and not after & ~mask[t]:
                    del word[pos]
                    changed = True
                    break
                after |= 1 << t
        res = RacgElement(self._nf(tuple(word)), self)
        if len(self._coset_cache) > 1 << 20:
            self._coset_cache.clear()
        self._coset_cache[key] = res
        return res

    # -- enumeration -----------------------------------------------------
    def ball(self, r: int) -> list[RacgElement]:
        """All elements of length <= r in shortlex order."""
        if r < 0:
            raise RacgError("radius must be nonnegative")
        if r > self.ball_cap:
            raise RacgError(f"radius {r} exceeds ball cap {self.ball_cap}")
        layers = [[self.identity]]
        seen = {self.identity}
        for k in range(r):
            nxt = set()
            for x in layers[-1]:
                for s in range(len(self)):
                    y = RacgElement(self._nf(self.reduce(x.word + (s,))), self)
                    if len(y) == k + 1 and y not in seen:
                        nxt.add(y)
            seen |= nxt
            layers.append(sorted(nxt, key=RacgElement.sort_key))
        return [x for layer in layers for x in layer]

    # -- automorphisms -----------------------------------------------------
    def check_symmetry(self, perm: Sequence[int]) -> None:
        n = len(self)
        if sorted(perm) != list(range(n)):
            raise RacgError("not a permutation of the generators")
        for a, b in self.edges:
            p, q = perm[a], perm[b]
            if (min(p, q), max(p, q)) not in self.edges:
                raise RacgError(f"symmetry does not preserve the edge {self.names[a]}-{self.names[b]}")

    def twist(self, x: RacgElement, perm: Sequence[int], *, check: bool = True) -> RacgElement:
        """Apply a graph symmetry letterwise and renormalise."""
        self._check(x)
        if check:
            self.check_symmetry(perm)
        return RacgElement(self._nf(tuple(perm[i] for i in x.word)), self)

    def commutator_index(self) -> int:
        """[W : [W, W]]; the abelianisation is (Z/2)^|I|."""
        return 2 ** len(self)


# ---------------------------------------------------------------------------
# W x| G
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SemidirectElement:
    w: RacgElement
    g: int

    def sort_key(self) -> tuple:
        return (self.w.sort_key(), self.g)

    def label(self) -> str:
        return f"{self.w.label()}|{self.g}"

    def __str__(self) -> str:
        return self.label()


class SemidirectProduct:
    """W x| G for a finite G acting on the generators by graph symmetries.

    ``perms[g][i]`` is the image of generator ``i`` under group element ``g``
    and ``table[a][b]`` the index of ``g_a g_b``.  The product
    ``(v, g)(w, h) = (v w^g, g h)`` is the one for which
    ``(v, g).[w, x] = [v w^g, g.x]`` is a left action.
    """

    def __init__(self, graph: CommutationGraph, perms: Sequence[Sequence[int]], table):
        self.graph = graph
        self.perms = [tuple(p) for p in perms]
        for p in self.perms:
            graph.check_symmetry(p)
        self.table = table
        n = len(self.perms)
        self.inv = [next(b for b in range(n) if table[a][b] == 0) for a in range(n)]
        self.identity = SemidirectElement(graph.identity, 0)

    @classmethod
    def trivial(cls, graph: CommutationGraph) -> "SemidirectProduct":
        return cls(graph, [tuple(range(len(graph)))], [[0]])

    @property
    def group_order(self) -> int:
        return len(self.perms)

    def element(self, w, g: int = 0) -> SemidirectElement:
        if not isinstance(w, RacgElement):
            w = self.graph.normal_form(w)
        if not 0 <= g < len(self.perms):
            raise RacgError(f"unknown group element {g}")
        return SemidirectElement(w, g)

    def twist(self, w: RacgElement, g: int) -> RacgElement:
        if g == 0:
            return w
        return self.graph.twist(w, self.perms[g], check=False)

    def multiply(self, p: SemidirectElement, q: SemidirectElement) -> SemidirectElement:
        return SemidirectElement(self.graph.multiply(p.w, self.twist(q.w, p.g)), self.table[p.g][q.g])

    def inverse(self, p: SemidirectElement) -> SemidirectElement:
        gi = self.inv[p.g]
        return SemidirectElement(self.twist(self.graph.invert(p.w), gi), gi)

    def conjugate(self, p: SemidirectElement, c: SemidirectElement) -> SemidirectElement:
        """c^{-1} p c."""
        return self.multiply(self.multiply(self.inverse(c), p), c)

    def elements(self, r: int) -> list[SemidirectElement]:
        return [SemidirectElement(w, g) for w in self.graph.ball(r) for g in range(len(self.perms))]

    def closure(self, gens: Iterable[SemidirectElement], cap: int = 4096) -> frozenset | None:
        """Subgroup generated by ``gens``; ``None`` if it outgrows ``cap``."""
        gens = list(gens)
        out = {self.identity}
        todo = [self.identity]
        while todo:
            a = todo.pop()
            for g in gens:
                c = self.multiply(a, g)
                if c not in out:
                    out.add(c)
                    if len(out) > cap:
                        return None
                    todo.append(c)
        return frozenset(out)

    def order_of(self, p: SemidirectElement, cap: int = 4096) -> int | None:
        x, k = p, 1
        while x != self.identity:
            x = self.multiply(x, p)
            k += 1
            if k > cap:
                return None
        return k
