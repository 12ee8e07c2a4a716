"""Integer simplicial homology through Smith normal form.

Boundary matrices are kept sparse (column -> {row: coefficient}).  Homology
first eliminates unit pivots sparsely and hands whatever is left to the dense
Smith normal form, which works over Python integers (no overflow).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .complex import GroupAction, SimplicialComplex, is_admissible, ComplexError

Column = dict  # row index -> nonzero int


@dataclass
class ChainComplexData:
    """Ordered bases per dimension and boundary maps ``d[k]: C_k -> C_{k-1}``."""

    bases: list                     # bases[k] = list of cells (sorted vertex tuples)
    boundaries: list                # boundaries[k] = list of Column, one per basis element of C_k

    @property
    def top(self) -> int:
        return len(self.bases) - 1

    def rank(self, k: int) -> int:
        return len(self.bases[k]) if 0 <= k < len(self.bases) else 0

    def dense(self, k: int) -> list[list[int]]:
        rows, cols = self.rank(k - 1), self.rank(k)
        M = [[0] * cols for _ in range(rows)]
        if 0 < k < len(self.bases):
            for j, col in enumerate(self.boundaries[k]):
                for i, v in col.items():
                    M[i][j] = v
        return M

    def check_dd_zero(self) -> bool:
        for k in range(2, len(self.bases)):
            lower = self.boundaries[k - 1]
            for col in self.boundaries[k]:
                acc: dict = {}
                for i, v in col.items():
                    for r, w in lower[i].items():
                        acc[r] = acc.get(r, 0) + v * w
                if any(acc.values()):
                    return False
        return True


def chain_complex(K: SimplicialComplex) -> ChainComplexData:
    """Simplicial chains with the sorted-vertex orientation and signs (-1)^i."""
    if not K.vertices:
        return ChainComplexData([], [])
    bases = [K.faces(k) for k in range(K.dim + 1)]
    boundaries: list = [[{} for _ in bases[0]]]
    for k in range(1, len(bases)):
        pos = {s: i for i, s in enumerate(bases[k - 1])}
        cols = []
        for s in bases[k]:
            cols.append({pos[s[:i] + s[i + 1:]]: (-1) ** i for i in range(len(s))})
        boundaries.append(cols)
    return ChainComplexData(bases, boundaries)


def orbit_chain_complex(act: GroupAction) -> ChainComplexData:
    """Cellular chains of the orbit space of an admissible action.

    One cell per orbit of simplices, represented by its least member; a face
    contributes with the orientation sign of the group element carrying it
    onto its orbit representative.
    """
    if not is_admissible(act):
        raise ComplexError("orbit chains need an admissible action")
    K = act.complex
    if not K.vertices:
        return ChainComplexData([], [])
    idx = K.index
    bases, projections = [], []
    for k in range(K.dim + 1):
        reps, proj = [], {}
        for s in K.faces(k):                       # sorted, so the first of each orbit is least
            if s in proj:
                continue
            r = len(reps)
            reps.append(s)
            for g in range(act.order):
                img = tuple(act.apply(g, v) for v in s)
                t = tuple(sorted(img, key=idx.__getitem__))
                if t not in proj:
                    proj[t] = (r, _perm_sign([t.index(v) for v in img]))
        bases.append(reps)
        projections.append(proj)
    boundaries: list = [[{} for _ in bases[0]]]
    for k in range(1, len(bases)):
        cols = []
        for s in bases[k]:
            col: dict = {}
            for i in range(len(s)):
                r, sign = projections[k - 1][s[:i] + s[i + 1:]]
                col[r] = col.get(r, 0) + (-1) ** i * sign
            cols.append({r: v for r, v in col.items() if v})
        boundaries.append(cols)
    return ChainComplexData(bases, boundaries)


def _perm_sign(perm: list[int]) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def smith_normal_form(matrix):
    """Return ``(D, L, R)`` with ``matrix == L @ D @ R``, ``L``, ``R`` unimodular.

    ``D`` is diagonal with nonnegative entries d1 | d2 | ... .
    """
    A = [list(map(int, row)) for row in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    L = [[int(i == j) for j in range(m)] for i in range(m)]
    R = [[int(i == j) for j in range(n)] for i in range(n)]
    _snf_inplace(A, L, R)
    return A, L, R


def smith_diagonal(matrix) -> list[int]:
    """Nonzero invariant factors only (no transforms)."""
    A = [list(map(int, row)) for row in matrix]
    _snf_inplace(A, None, None)
    return [A[i][i] for i in range(min(len(A), len(A[0]) if A else 0)) if A[i][i]]


def _snf_inplace(A, L, R) -> None:
    m = len(A)
    n = len(A[0]) if m else 0

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if L is not None:
            for row in L:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if R is not None:
            R[i], R[j] = R[j], R[i]

    def add_row(dst, src, q):          # row_dst += q * row_src
        if q == 0:
            return
        rs, rd = A[src], A[dst]
        for c in range(n):
            if rs[c]:
                rd[c] += q * rs[c]
        if L is not None:
            for row in L:
                row[src] -= q * row[dst]

    def add_col(dst, src, q):          # col_dst += q * col_src
        if q == 0:
            return
        for row in A:
            if row[src]:
                row[dst] += q * row[src]
        if R is not None:
            rd, rs = R[dst], R[src]
            for c in range(n):
                if rd[c]:
                    rs[c] -= q * rd[c]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        if L is not None:
            for row in L:
                row[i] = -row[i]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = A[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            return
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                cand = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            negate_row(t)


def _sparse_divisors(cols: list[Column], mod: int | None = None) -> tuple[int, list[int]]:
    """Rank and invariant factors > 1 of a sparse integer matrix.

    Unit pivots are eliminated sparsely; the residue goes to the dense SNF.
    Over GF(mod) every nonzero entry is a unit, so only the rank is returned.
    """
    colmap = {j: dict(c) for j, c in enumerate(cols) if c}
    rowmap: dict = {}
    for j, c in colmap.items():
        if mod:
            c = {i: v % mod for i, v in c.items() if v % mod}
            colmap[j] = c
        for i, v in c.items():
            rowmap.setdefault(i, {})[j] = v
    rank = 0

    def is_unit(v):
        return v % mod != 0 if mod else v in (1, -1)

    progress = True
    while progress:
        progress = False
        for j in sorted(colmap, key=lambda c: len(colmap[c])):
            col = colmap.get(j)
            if not col:
                colmap.pop(j, None)
                continue
            piv = None
            for i, v in col.items():
                if is_unit(v) and (piv is None or len(rowmap[i]) < len(rowmap[piv])):
                    piv = i
            if piv is None:
                continue
            a = col[piv]
            ainv = pow(a, -1, mod) if mod else a
            prow = rowmap[piv]
            for i in [i for i in col if i != piv]:
                f = col[i] * ainv
                row = rowmap[i]
                for c2, w in prow.items():
                    nv = row.get(c2, 0) - f * w
                    if mod:
                        nv %= mod
                    if nv:
                        row[c2] = nv
                        colmap[c2][i] = nv
                    else:
                        row.pop(c2, None)
                        colmap[c2].pop(i, None)
                if not row:
                    del rowmap[i]
            for c2 in prow:
                if c2 != j:
                    colmap[c2].pop(piv, None)
            del rowmap[piv]
            del colmap[j]
            rank += 1
            progress = True
    colmap = {j: c for j, c in colmap.items() if c}
    if not colmap:
        return rank, []
    rows = sorted({i for c in colmap.values() for i in c})
    rpos = {i: k for k, i in enumerate(rows)}
    dense = [[0] * len(colmap) for _ in rows]
    for k, c in enumerate(colmap.values()):
        for i, v in c.items():
            dense[rpos[i]][k] = v
    if mod:
        return rank + _rank_mod(dense, mod), []
    diag = smith_diagonal(dense)
    return rank + len(diag), [d for d in diag if d > 1]


def _rank_mod(M, p: int) -> int:
    M = [[x % p for x in row] for row in M]
    rank, ncols = 0, len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(M)) if M[r][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][c], -1, p)
        for r in range(len(M)):
            if r != rank and M[r][c]:
                f = M[r][c] * inv
                M[r] = [(x - f * y) % p for x, y in zip(M[r], M[rank])]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# Homology
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HomologyResult:
    betti: tuple
    torsion: tuple                    # torsion[k] = tuple of invariant factors > 1
    coefficients: str = "Z"

    def normalized(self) -> tuple:
        b, t = list(self.betti), [tuple(x) for x in self.torsion]
        while b and b[-1] == 0 and not t[-1]:
            b.pop()
            t.pop()
        return (tuple(b), tuple(t))

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomologyResult):
            return NotImplemented
        return self.coefficients == other.coefficients and self.normalized() == other.normalized()

    def __hash__(self) -> int:
        return hash((self.coefficients, self.normalized()))

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti))

    def is_acyclic(self) -> bool:
        return self.normalized() == ((1,), ((),))

    def lines(self) -> list[str]:
        ring = "Z" if self.coefficients == "Z" else self.coefficients
        out = []
        for k, (b, tors) in enumerate(zip(self.betti, self.torsion)):
            parts = []
            if b:
                parts.append(ring if b == 1 else f"{ring}^{b}")
            parts += [f"Z/{t}" for t in tors]
            out.append(f"H_{k} = " + (" ⊕ ".join(parts) if parts else "0"))
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines())

    def to_json(self) -> dict:
        return {"coefficients": self.coefficients,
                "dimensions": [{"k": k, "betti": b, "torsion": list(t)}
                               for k, (b, t) in enumerate(zip(self.betti, self.torsion))]}


def homology_of_chains(C: ChainComplexData, mod: int | None = None) -> HomologyResult:
    top = C.top
    ranks, divisors = [0] * (top + 2), [[] for _ in range(top + 2)]
    for k in range(1, top + 1):
        ranks[k], divisors[k] = _sparse_divisors(C.boundaries[k], mod)
    betti = tuple(C.rank(k) - ranks[k] - ranks[k + 1] for k in range(top + 1))
    torsion = tuple(tuple(divisors[k + 1]) for k in range(top + 1))
    return HomologyResult(betti, torsion, "Z" if mod is None else f"Z/{mod}")


def homology(K, mod: int | None = None) -> HomologyResult:
    """Homology of a complex (or of a ready-made chain complex)."""
    C = K if isinstance(K, ChainComplexData) else chain_complex(K)
    return homology_of_chains(C, mod)


def quotient_homology(act: GroupAction, mod: int | None = None) -> HomologyResult:
    """Homology of the orbit space of an admissible action."""
    return homology_of_chains(orbit_chain_complex(act), mod)


def is_acyclic(K) -> bool:
    """Reduced homology vanishes (the empty complex is not acyclic)."""
    return homology(K).is_acyclic()
