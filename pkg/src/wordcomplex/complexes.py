"""Delta-complex gluing data: word complexes, joins, collapses, subdivision.

A complex stores opaque integer cell ids graded by dimension plus a
codimension-one face table: faces[c][i] is the cell obtained by deleting
position i (0-based) of c. All higher boundary maps arise by composing
single deletions, which is unambiguous once the simplicial identities
d_i d_j = d_{j-1} d_i (i < j) hold; validate() checks them directly.

The incidence number of a codimension-one pair is the signed count of
deletions, with position i carrying sign (-1)^(i+1) (the sign of the
order-preserving injection missing 1-based index i+1).

Every cell carries a provenance label: the subword for a word complex, a
pair of factor labels for a join (None marking the empty side), or a
(cell, flag) pair for a barycentric subdivision. Labels are unique per
complex, so derived constructions stay explainable in test failures.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional

from .words import Word, distinct_subwords, format_word


def _label_key(label):
    """Deterministic sort key over nested labels (ints, tuples, None)."""
    if label is None:
        return (0,)
    if isinstance(label, int):
        return (1, label)
    return (2, tuple(_label_key(x) for x in label))


class DeltaComplex:
    def __init__(self, cells_by_dim, faces, labels, name=""):
        self.cells_by_dim: list[list[int]] = [list(cs) for cs in cells_by_dim]
        while self.cells_by_dim and not self.cells_by_dim[-1]:
            self.cells_by_dim.pop()
        self.faces: dict[int, tuple[int, ...]] = dict(faces)
        self.labels: dict[int, object] = dict(labels)
        self.name = name
        self.dim_of: dict[int, int] = {
            c: d for d, cs in enumerate(self.cells_by_dim) for c in cs
        }
        self.id_of_label: dict[object, int] = {self.labels[c]: c for c in self.labels}
        if len(self.id_of_label) != len(self.labels):
            raise ValueError("cell labels must be unique")
        self._coface_slots: Optional[dict[int, tuple[tuple[int, int], ...]]] = None

    # -- basic queries ------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.cells_by_dim) - 1

    @property
    def n_cells(self) -> int:
        return sum(len(cs) for cs in self.cells_by_dim)

    def cells(self, n: Optional[int] = None) -> list[int]:
        if n is None:
            return [c for cs in self.cells_by_dim for c in cs]
        if 0 <= n <= self.dim:
            return list(self.cells_by_dim[n])
        return []

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(cs) for cs in self.cells_by_dim)

    def reduced_euler(self) -> int:
        return sum((-1) ** d * len(cs) for d, cs in enumerate(self.cells_by_dim)) - 1

    def face(self, c: int, i: int) -> int:
        return self.faces[c][i]

    def restricted_to(self, c: int, keep: Iterable[int]) -> int:
        """Iterated face keeping only the given positions of c.

        Deleting positions in descending order keeps lower indices stable,
        so the result is independent of order by the simplicial identities.
        """
        keep = set(keep)
        for p in range(self.dim_of[c], -1, -1):
            if p not in keep:
                c = self.faces[c][p]
        return c

    def vertices_of(self, c: int) -> tuple[int, ...]:
        return tuple(
            self.restricted_to(c, (i,)) for i in range(self.dim_of[c] + 1)
        )

    def coface_slots(self) -> dict[int, tuple[tuple[int, int], ...]]:
        """For each cell, the (coface, face index) pairs hitting it."""
        if self._coface_slots is None:
            slots: dict[int, list[tuple[int, int]]] = {c: [] for c in self.dim_of}
            for c in self.dim_of:
                for i, f in enumerate(self.faces[c]):
                    slots[f].append((c, i))
            self._coface_slots = {
                c: tuple(sorted(v)) for c, v in slots.items()
            }
        return self._coface_slots

    # -- structural checks --------------------------------------------------

    def validate(self) -> None:
        """Check dimensions of faces and the simplicial identities."""
        for c, d in self.dim_of.items():
            fs = self.faces[c]
            if len(fs) != (d + 1 if d >= 1 else 0):
                raise ValueError(f"cell {c} of dim {d} has {len(fs)} faces")
            for f in fs:
                if self.dim_of[f] != d - 1:
                    raise ValueError(f"face of {c} has wrong dimension")
        for c, d in self.dim_of.items():
            if d < 2:
                continue
            fs = self.faces[c]
            for j in range(d + 1):
                for i in range(j):
                    if self.faces[fs[j]][i] != self.faces[fs[i]][j - 1]:
                        raise ValueError(
                            f"simplicial identity fails at cell {c}, i={i}, j={j}"
                        )

    def without(self, removed: Iterable[int]) -> "DeltaComplex":
        """Subcomplex with the given cells dropped; ids are preserved.

        The remainder must be face-closed, otherwise the face table would
        dangle and the result would not be a complex.
        """
        removed = set(removed)
        keep = [c for c in self.dim_of if c not in removed]
        for c in keep:
            for f in self.faces[c]:
                if f in removed:
                    raise ValueError(
                        f"removing cells would orphan face {f} of cell {c}"
                    )
        cells_by_dim = [
            [c for c in cs if c not in removed] for cs in self.cells_by_dim
        ]
        return DeltaComplex(
            cells_by_dim,
            {c: self.faces[c] for c in keep},
            {c: self.labels[c] for c in keep},
            name=self.name,
        )

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"<DeltaComplex{tag} f={self.f_vector()}>"


# ---------------------------------------------------------------------------
# Construction from a word


def build(word: Word) -> DeltaComplex:
    """The complex whose n-cells are the distinct (n+1)-letter subwords.

    The face at deletion position i of a cell is the subword with that
    letter removed; equal subwords index a single cell, which is exactly
    the gluing.
    """
    if not word:
        raise ValueError("cannot build a complex from the empty word")
    by_dim: dict[int, list[Word]] = {}
    for u in distinct_subwords(word):
        by_dim.setdefault(len(u) - 1, []).append(u)
    cells_by_dim: list[list[int]] = []
    labels: dict[int, object] = {}
    ids: dict[Word, int] = {}
    next_id = 0
    for d in range(len(word)):
        row = []
        for u in sorted(by_dim.get(d, [])):
            ids[u] = next_id
            labels[next_id] = u
            row.append(next_id)
            next_id += 1
        cells_by_dim.append(row)
    faces = {}
    for u, c in ids.items():
        if len(u) == 1:
            faces[c] = ()
        else:
            faces[c] = tuple(ids[u[:i] + u[i + 1 :]] for i in range(len(u)))
    name = format_word(word) if all(0 <= a <= 25 for a in word) else repr(word)
    return DeltaComplex(cells_by_dim, faces, labels, name=name)


# ---------------------------------------------------------------------------
# Incidence numbers


def deletion_sign(i: int) -> int:
    """Sign of the face injection missing position i (0-based)."""
    return -1 if i % 2 == 0 else 1


def incidence(X: DeltaComplex, sigma: int, tau: int) -> int:
    """Signed count of deletions carrying tau to sigma."""
    if X.dim_of[sigma] != X.dim_of[tau] - 1:
        raise ValueError("incidence needs dim(sigma) = dim(tau) - 1")
    return sum(deletion_sign(i) for i, f in enumerate(X.faces[tau]) if f == sigma)


# ---------------------------------------------------------------------------
# Join


def empty_complex() -> DeltaComplex:
    return DeltaComplex([], {}, {}, name="empty")


def join(X: DeltaComplex, Y: DeltaComplex) -> DeltaComplex:
    """Join of two complexes: cells are pairs graded by i + j + 1.

    Internally each factor is augmented with a formal empty cell so that
    faces lying entirely inside one factor exist; pairs with an empty side
    appear in the public cell list as copies of the other factor's cells,
    and the doubly empty pair is dropped.
    """
    if X.n_cells == 0:
        return Y
    if Y.n_cells == 0:
        return X

    # key: (x id or None, y id or None), None marking the formal empty cell
    keys = []
    for x in X.dim_of:
        keys.append((x, None))
    for y in Y.dim_of:
        keys.append((None, y))
    for x in X.dim_of:
        for y in Y.dim_of:
            keys.append((x, y))

    def pair_dim(key) -> int:
        x, y = key
        dx = X.dim_of[x] if x is not None else -1
        dy = Y.dim_of[y] if y is not None else -1
        return dx + dy + 1

    def pair_label(key):
        x, y = key
        return (
            X.labels[x] if x is not None else None,
            Y.labels[y] if y is not None else None,
        )

    keys.sort(key=lambda k: (pair_dim(k), _label_key(pair_label(k))))
    ids = {k: i for i, k in enumerate(keys)}
    cells_by_dim: list[list[int]] = [[] for _ in range(pair_dim(keys[-1]) + 1)]
    labels = {}
    faces = {}
    for k in keys:
        c = ids[k]
        d = pair_dim(k)
        cells_by_dim[d].append(c)
        labels[c] = pair_label(k)
        if d == 0:
            faces[c] = ()
            continue
        x, y = k
        dx = X.dim_of[x] if x is not None else -1
        fs = []
        for pos in range(d + 1):
            if pos <= dx:
                nx = X.faces[x][pos] if dx >= 1 else None
                fs.append(ids[(nx, y)])
            else:
                dy = Y.dim_of[y]
                ny = Y.faces[y][pos - dx - 1] if dy >= 1 else None
                fs.append(ids[(x, ny)])
        faces[c] = tuple(fs)
    name = f"({X.name})*({Y.name})"
    return DeltaComplex(cells_by_dim, faces, labels, name=name)


# ---------------------------------------------------------------------------
# Isomorphism testing


def _refine_colors(X: DeltaComplex, Y: DeltaComplex) -> tuple[dict, dict]:
    """Joint color refinement on face structure; isomorphisms preserve colors."""
    colX = {c: X.dim_of[c] for c in X.dim_of}
    colY = {c: Y.dim_of[c] for c in Y.dim_of}
    for _ in range(X.n_cells + 1):
        table: dict[object, int] = {}

        def recolor(Z, col):
            new = {}
            for c in Z.dim_of:
                sig = (col[c], tuple(col[f] for f in Z.faces[c]))
                if sig not in table:
                    table[sig] = len(table)
                new[c] = table[sig]
            return new

        newX, newY = recolor(X, colX), recolor(Y, colY)
        if len(set(newX.values())) == len(set(colX.values())) and len(
            set(newY.values())
        ) == len(set(colY.values())):
            return newX, newY
        colX, colY = newX, newY
    return colX, colY


def is_isomorphic(X: DeltaComplex, Y: DeltaComplex) -> bool:
    """Search for dimension-preserving bijections commuting with every face
    map; commuting with single deletions suffices since they compose to all
    boundary maps."""
    if X.f_vector() != Y.f_vector():
        return False
    colX, colY = _refine_colors(X, Y)

    def counts(col):
        out: dict[int, int] = {}
        for v in col.values():
            out[v] = out.get(v, 0) + 1
        return out

    if counts(colX) != counts(colY):
        return False

    candidates = {c: [d for d in Y.dim_of if colY[d] == colX[c]] for c in X.dim_of}
    # assign from the top dimension down; assigning a cell forces its faces
    order = sorted(X.dim_of, key=lambda c: (-X.dim_of[c], len(candidates[c])))
    assignment: dict[int, int] = {}
    used: set[int] = set()

    def propagate(c: int, d: int, trail: list[int]) -> bool:
        if c in assignment:
            return assignment[c] == d
        if d in used:
            return False
        assignment[c] = d
        used.add(d)
        trail.append(c)
        for i, f in enumerate(X.faces[c]):
            if not propagate(f, Y.faces[d][i], trail):
                return False
        return True

    def undo(trail: list[int]) -> None:
        for c in trail:
            used.discard(assignment.pop(c))

    def search(idx: int) -> bool:
        while idx < len(order) and order[idx] in assignment:
            idx += 1
        if idx == len(order):
            return True
        c = order[idx]
        for d in candidates[c]:
            trail: list[int] = []
            if propagate(c, d, trail):
                if search(idx + 1):
                    return True
            undo(trail)
        return False

    return search(0)


# ---------------------------------------------------------------------------
# Elementary collapses


@dataclass(frozen=True)
class FreePair:
    sigma: int
    tau: int
    face_index: int


def free_pairs(X: DeltaComplex) -> list[FreePair]:
    """All pairs satisfying the three collapse conditions: sigma is hit by
    exactly one deletion slot overall, that slot belongs to tau, and tau is
    maximal."""
    slots = X.coface_slots()
    out = []
    for sigma in X.dim_of:
        if len(slots[sigma]) != 1:
            continue
        tau, i = slots[sigma][0]
        if slots[tau]:
            continue
        out.append(FreePair(sigma, tau, i))
    out.sort(key=lambda p: (X.dim_of[p.sigma], _label_key(X.labels[p.sigma])))
    return out


def elementary_collapse(X: DeltaComplex, sigma: int, tau: int) -> DeltaComplex:
    """Remove a free pair; raises naming the violated condition if invalid."""
    if sigma not in X.dim_of or tau not in X.dim_of:
        raise ValueError("cells not in the complex")
    if X.dim_of[sigma] != X.dim_of[tau] - 1:
        raise ValueError("collapse condition (1) fails: dimensions not adjacent")
    hits = [i for i, f in enumerate(X.faces[tau]) if f == sigma]
    if len(hits) != 1:
        raise ValueError(
            f"collapse condition (1) fails: {len(hits)} deletions of tau hit sigma"
        )
    slots = X.coface_slots()
    others = [s for s in slots[sigma] if s[0] != tau]
    if others:
        raise ValueError(
            "collapse condition (2) fails: sigma is a face of another cell"
        )
    if slots[tau]:
        raise ValueError("collapse condition (3) fails: tau is not maximal")
    return X.without({sigma, tau})


def collapse_all(X: DeltaComplex) -> DeltaComplex:
    """Greedily collapse free pairs (highest dimension first) to a fixpoint."""
    while True:
        pairs = free_pairs(X)
        if not pairs:
            return X
        p = pairs[-1]
        X = elementary_collapse(X, p.sigma, p.tau)


# ---------------------------------------------------------------------------
# Barycentric subdivision


@lru_cache(maxsize=None)
def _flags(dim: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """All strictly increasing chains of nonempty position subsets of a
    dim-cell ending at the full set."""
    full = tuple(range(dim + 1))
    subsets = [
        tuple(s)
        for size in range(1, dim + 2)
        for s in combinations(range(dim + 1), size)
    ]
    chains_to: dict[tuple[int, ...], list[tuple]] = {}
    for s in subsets:  # combinations order lists subsets before their supersets
        chains = [(s,)]
        sset = set(s)
        for t in subsets:
            if len(t) < len(s) and set(t) < sset:
                chains.extend(chain + (s,) for chain in chains_to[t])
        chains_to[s] = chains
    return tuple(chains_to[full])


def barycentric_subdivide(X: DeltaComplex) -> DeltaComplex:
    """Subdivision with one cell per (cell, flag) pair.

    A flag is a chain A_0 < ... < A_n of position subsets of the cell with
    A_n full; its vertices are the barycenters of the faces spanned by the
    A_i. Deleting A_i (i < n) keeps the carrier; deleting A_n re-roots the
    flag at the face spanned by A_{n-1}, with positions renumbered inside
    that face. Realizations agree, so homology must be preserved; callers
    check that rather than assume it.
    """
    keys = []
    for c in X.dim_of:
        for flag in _flags(X.dim_of[c]):
            keys.append((c, flag))
    keys.sort(key=lambda k: (len(k[1]) - 1, _label_key((X.labels[k[0]], k[1]))))
    ids = {k: i for i, k in enumerate(keys)}
    cells_by_dim: list[list[int]] = [[] for _ in range(X.dim + 1)]
    labels = {}
    faces = {}
    for c, flag in keys:
        i = ids[(c, flag)]
        n = len(flag) - 1
        cells_by_dim[n].append(i)
        labels[i] = (X.labels[c], flag)
        if n == 0:
            faces[i] = ()
            continue
        fs = []
        for k in range(n + 1):
            if k < n:
                fs.append(ids[(c, flag[:k] + flag[k + 1 :])])
            else:
                base = flag[n - 1]
                carrier = X.restricted_to(c, base)
                rank = {p: r for r, p in enumerate(base)}
                renamed = tuple(
                    tuple(rank[p] for p in subset) for subset in flag[:n]
                )
                fs.append(ids[(carrier, renamed)])
        faces[i] = tuple(fs)
    return DeltaComplex(cells_by_dim, faces, labels, name=f"sd({X.name})")


# ---------------------------------------------------------------------------
# Recognition predicates


def is_simplicial(X: DeltaComplex) -> bool:
    """True when every cell has distinct vertices and no two cells of the
    same dimension share a vertex set."""
    seen: set[tuple[int, frozenset[int]]] = set()
    for c, d in X.dim_of.items():
        verts = X.vertices_of(c)
        if len(set(verts)) != len(verts):
            return False
        key = (d, frozenset(verts))
        if key in seen:
            return False
        seen.add(key)
    return True


def is_pseudomanifold(X: DeltaComplex) -> bool:
    """Pure top dimension d >= 1, every (d-1)-cell hit by exactly two
    deletion slots, and the top cells strongly connected through them."""
    d = X.dim
    if d < 1:
        return False
    slots = X.coface_slots()
    for c, dc in X.dim_of.items():
        if dc < d and not slots[c]:
            return False  # not pure: a maximal cell below the top dimension
    ridges = X.cells(d - 1)
    for r in ridges:
        if len([s for s in slots[r] if X.dim_of[s[0]] == d]) != 2:
            return False
    top = X.cells(d)
    parent = {c: c for c in top}

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    for r in ridges:
        (a, _), (b, _) = slots[r]
        parent[find(a)] = find(b)
    return len({find(c) for c in top}) == 1


# ---------------------------------------------------------------------------
# Exports


def to_json_dict(X: DeltaComplex, word: Optional[Word] = None) -> dict:
    cells = []
    for c in X.cells():
        label = X.labels[c]
        subword = None
        if isinstance(label, tuple) and all(isinstance(a, int) for a in label):
            subword = format_word(label)
        cells.append({"id": c, "dim": X.dim_of[c], "subword": subword})
    boundary = [
        {"cell": c, "face_index": i, "target": f}
        for c in X.cells()
        for i, f in enumerate(X.faces[c])
    ]
    return {
        "word": format_word(word) if word is not None else None,
        "f_vector": list(X.f_vector()),
        "cells": cells,
        "boundary": boundary,
    }


def to_dot(X: DeltaComplex) -> str:
    """Face poset as a Hasse diagram; edge labels count deletion slots."""
    lines = ["digraph face_poset {", "  rankdir=BT;", "  node [shape=box];"]
    for c in X.cells():
        label = X.labels[c]
        if isinstance(label, tuple) and all(isinstance(a, int) for a in label):
            text = format_word(label)
        else:
            text = str(label)
        lines.append(f'  c{c} [label="{text} (dim {X.dim_of[c]})"];')
    for c in X.cells():
        mult: dict[int, int] = {}
        for f in X.faces[c]:
            mult[f] = mult.get(f, 0) + 1
        for f in sorted(mult):
            lines.append(f'  c{f} -> c{c} [label="{mult[f]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
