"""Finitely presented simplicial sets.

A simplicial set is stored through its nondegenerate cells.  Every face of a
cell is a :class:`Simplex`, i.e. a nondegenerate cell together with a
degeneracy word ``s_{j1} s_{j2} ... s_{jr}`` in normal form
``j1 > j2 > ... > jr``.  Faces and degeneracies of arbitrary simplices are
computed from the stored table through the simplicial identities.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

DEFAULT_DIMENSION_BOUND = 6
CAPACITY = 9  # standard simplices are named by digit strings


class SimplicialError(ValueError):
    """Structural problem with a presentation or construction."""


class CapacityError(SimplicialError):
    pass


class Cell(NamedTuple):
    dim: int
    name: str


class Simplex(NamedTuple):
    """``s_{degs[0]} s_{degs[1]} ... (cell)`` with ``degs`` strictly decreasing."""

    cell: Cell
    degs: tuple[int, ...] = ()

    @property
    def dim(self) -> int:
        return self.cell.dim + len(self.degs)

    @property
    def degenerate(self) -> bool:
        return bool(self.degs)

    def __str__(self):
        return format_simplex(self)


def format_simplex(x: Simplex) -> str:
    word = " ".join(f"s_{j}" for j in x.degs)
    return f"{word}({x.cell.name})" if word else f"({x.cell.name})"


def normalize_word(word: Sequence[int]) -> tuple[int, ...]:
    """Normal form of a degeneracy word via ``s_i s_j = s_{j+1} s_i`` (i <= j)."""
    w = list(word)
    changed = True
    while changed:
        changed = False
        for k in range(len(w) - 1):
            if w[k] <= w[k + 1]:
                w[k], w[k + 1] = w[k + 1] + 1, w[k]
                changed = True
    return tuple(w)


def total_degeneracy(cell: Cell, dim: int) -> Simplex:
    """The unique degenerate ``dim``-simplex on a vertex."""
    if cell.dim != 0:
        raise SimplicialError("total degeneracy is defined on vertices")
    return Simplex(cell, tuple(range(dim - 1, -1, -1)))


def degenerate_to(cell: Cell, dim: int) -> Simplex:
    """``s_{dim-1} ... s_{cell.dim}`` applied to ``cell`` (last-vertex repetition)."""
    return Simplex(cell, tuple(range(dim - 1, cell.dim - 1, -1)))


@dataclass(frozen=True, eq=False)
class SimplicialSet:
    cells: dict[int, tuple[str, ...]]
    faces: dict[tuple[Cell, int], Simplex]
    labels: dict[Cell, str] = field(default_factory=dict)
    dimension_bound: int = DEFAULT_DIMENSION_BOUND

    # -- inventory -------------------------------------------------------
    @property
    def top_dim(self) -> int:
        dims = [d for d, names in self.cells.items() if names]
        return max(dims) if dims else -1

    def cells_in(self, dim: int) -> list[Cell]:
        return [Cell(dim, n) for n in self.cells.get(dim, ())]

    def all_cells(self) -> list[Cell]:
        return [c for d in sorted(self.cells) for c in self.cells_in(d)]

    def n_cells(self, dim: int | None = None) -> int:
        if dim is None:
            return sum(len(v) for v in self.cells.values())
        return len(self.cells.get(dim, ()))

    def counts(self) -> tuple[int, ...]:
        return tuple(self.n_cells(d) for d in range(self.top_dim + 1))

    def has_cell(self, cell: Cell) -> bool:
        return cell.name in self._name_sets().get(cell.dim, ())

    def _name_sets(self) -> dict[int, frozenset]:
        cache = self.__dict__.get("_names_cache")
        if cache is None:
            cache = {d: frozenset(v) for d, v in self.cells.items()}
            object.__setattr__(self, "_names_cache", cache)
        return cache

    def cell_order(self) -> dict[Cell, int]:
        cache = self.__dict__.get("_order_cache")
        if cache is None:
            cache = {c: i for i, c in enumerate(self.all_cells())}
            object.__setattr__(self, "_order_cache", cache)
        return cache

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * len(v) for d, v in self.cells.items())

    def vertices(self) -> list[Cell]:
        return self.cells_in(0)

    # -- simplicial operators ---------------------------------------------
    def face(self, x: Simplex | Cell, i: int) -> Simplex:
        if isinstance(x, Cell):
            x = Simplex(x)
        n = x.dim
        if n < 1 or not 0 <= i <= n:
            raise SimplicialError(f"face d_{i} undefined on a {n}-simplex")
        prefix: list[int] = []
        degs = x.degs
        for pos, j in enumerate(degs):
            if i < j:
                prefix.append(j - 1)
            elif i == j or i == j + 1:
                return Simplex(x.cell, normalize_word(prefix + list(degs[pos + 1:])))
            else:
                prefix.append(j)
                i -= 1
        try:
            target = self.faces[(x.cell, i)]
        except KeyError:
            raise SimplicialError(f"missing face {x.cell.name}.face({i})") from None
        return Simplex(target.cell, normalize_word(prefix + list(target.degs)))

    def degeneracy(self, x: Simplex | Cell, i: int) -> Simplex:
        if isinstance(x, Cell):
            x = Simplex(x)
        if not 0 <= i <= x.dim:
            raise SimplicialError(f"degeneracy s_{i} undefined on a {x.dim}-simplex")
        return Simplex(x.cell, normalize_word((i,) + x.degs))

    def face_by_vertices(self, x: Simplex, keep: Sequence[int]) -> Simplex:
        """Restrict ``x`` to the sub-simplex spanned by the vertex indices ``keep``."""
        keep = sorted(keep)
        drop = [v for v in range(x.dim + 1) if v not in keep]
        for v in reversed(drop):
            x = self.face(x, v)
        return x

    def vertex(self, x: Simplex | Cell, i: int) -> Cell:
        if isinstance(x, Cell):
            x = Simplex(x)
        v = self.face_by_vertices(x, [i])
        return v.cell

    def simplices(self, k: int) -> list[Simplex]:
        """All k-simplices (degenerate ones included) in canonical order."""
        out = []
        for m in range(0, k + 1):
            cells = self.cells_in(m)
            if not cells:
                continue
            words = [tuple(sorted(c, reverse=True))
                     for c in itertools.combinations(range(k), k - m)]
            for cell in cells:
                for w in words:
                    out.append(Simplex(cell, w))
        return out

    def boundary_faces(self, x: Simplex) -> tuple[Simplex, ...]:
        return tuple(self.face(x, i) for i in range(x.dim + 1))

    # -- checks -----------------------------------------------------------
    def validate(self) -> "ValidationReport":
        return validate(self)

    def __eq__(self, other):
        if not isinstance(other, SimplicialSet):
            return NotImplemented
        return (self.dimension_bound == other.dimension_bound
                and {d: v for d, v in self.cells.items() if v}
                == {d: v for d, v in other.cells.items() if v}
                and self.faces == other.faces and self.labels == other.labels)

    __hash__ = None

    def __repr__(self):
        return f"SimplicialSet(counts={self.counts()})"


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    message: str = "valid"
    identity: str | None = None
    cell: Cell | None = None

    def __bool__(self):
        return self.ok


def _word_ok(word: tuple[int, ...], base_dim: int) -> bool:
    if any(word[k] <= word[k + 1] for k in range(len(word) - 1)):
        return False
    # applied right to left: s_{word[-1]} acts on base_dim, and so on
    d = base_dim
    for j in reversed(word):
        if not 0 <= j <= d:
            return False
        d += 1
    return True


def validate(X: SimplicialSet) -> ValidationReport:
    """Exhaustive check of the presentation and the face-face identities."""
    for d, names in X.cells.items():
        if len(set(names)) != len(names):
            dup = next(n for n in names if names.count(n) > 1)
            return ValidationReport(False, f"duplicate cell id {dup!r} in dimension {d}",
                                    "unique ids", Cell(d, dup))
    if X.top_dim > X.dimension_bound:
        return ValidationReport(False, f"cells above dimension_bound {X.dimension_bound}",
                                "dimension bound")
    for (cell, i), y in X.faces.items():
        if not X.has_cell(cell):
            return ValidationReport(False, f"face entry for unknown cell {cell.name}",
                                    "face table", cell)
        if not 0 <= i <= cell.dim or cell.dim == 0:
            return ValidationReport(False, f"face index {i} out of range", "face table", cell)
        if not X.has_cell(y.cell):
            return ValidationReport(False, f"{cell.name}.face({i}) names unknown cell "
                                           f"{y.cell.name}", "face table", cell)
        if y.dim != cell.dim - 1:
            return ValidationReport(False, f"{cell.name}.face({i}) has dimension {y.dim}, "
                                           f"expected {cell.dim - 1}", "face dimension", cell)
        if not _word_ok(y.degs, y.cell.dim):
            return ValidationReport(False, f"{cell.name}.face({i}) degeneracy word "
                                           f"{y.degs} is not a valid normal form",
                                    "normal form", cell)
    for cell in X.all_cells():
        for i in range(cell.dim + 1 if cell.dim >= 1 else 0):
            if (cell, i) not in X.faces:
                return ValidationReport(False, f"missing {cell.name}.face({i})",
                                        "face table", cell)
    for cell in X.all_cells():
        n = cell.dim
        if n < 2:
            continue
        x = Simplex(cell)
        for j in range(1, n + 1):
            for i in range(j):
                lhs = X.face(X.face(x, j), i)
                rhs = X.face(X.face(x, i), j - 1)
                if lhs != rhs:
                    ident = f"d_{i} d_{j} = d_{j - 1} d_{i}"
                    return ValidationReport(
                        False, f"{ident} fails on {cell.name}: {lhs} != {rhs}", ident, cell)
    for cell in X.labels:
        if not X.has_cell(cell):
            return ValidationReport(False, f"label on unknown cell {cell.name}", "labels", cell)
    return ValidationReport(True)


# ---------------------------------------------------------------------------
# maps


@dataclass(frozen=True, eq=False)
class SimplicialMap:
    source: SimplicialSet
    target: SimplicialSet
    assignment: dict[Cell, Simplex]

    def __call__(self, x: Simplex | Cell) -> Simplex:
        if isinstance(x, Cell):
            x = Simplex(x)
        image = self.assignment[x.cell]
        return Simplex(image.cell, normalize_word(x.degs + image.degs))

    def check(self) -> ValidationReport:
        for cell in self.source.all_cells():
            if cell not in self.assignment:
                return ValidationReport(False, f"no image for {cell.name}", "map", cell)
            if self(cell).dim != cell.dim:
                return ValidationReport(False, f"image of {cell.name} has wrong dimension",
                                        "map", cell)
            for i in range(cell.dim + 1 if cell.dim else 0):
                lhs = self(self.source.face(cell, i))
                rhs = self.target.face(self(cell), i)
                if lhs != rhs:
                    return ValidationReport(False, f"f d_{i} != d_{i} f on {cell.name}",
                                            f"f d_{i} = d_{i} f", cell)
        return ValidationReport(True)

    def compose(self, after: "SimplicialMap") -> "SimplicialMap":
        """``after o self``."""
        return SimplicialMap(self.source, after.target,
                             {c: after(self(c)) for c in self.source.all_cells()})

    def is_injective_on_cells(self) -> bool:
        images = [self(c) for c in self.source.all_cells()]
        return all(not y.degenerate for y in images) and len(set(images)) == len(images)


def identity_map(X: SimplicialSet) -> SimplicialMap:
    return SimplicialMap(X, X, {c: Simplex(c) for c in X.all_cells()})


# ---------------------------------------------------------------------------
# construction helpers


class Builder:
    """Accumulates cells and faces in insertion order."""

    def __init__(self, dimension_bound: int = DEFAULT_DIMENSION_BOUND):
        self.cells: dict[int, list[str]] = {}
        self.faces: dict[tuple[Cell, int], Simplex] = {}
        self.labels: dict[Cell, str] = {}
        self.dimension_bound = dimension_bound

    def add(self, dim: int, name: str, faces: Sequence[Simplex | Cell] = (),
            label: str | None = None) -> Cell:
        cell = Cell(dim, name)
        names = self.cells.setdefault(dim, [])
        if name in names:
            raise SimplicialError(f"duplicate cell id {name!r} in dimension {dim}")
        if dim > 0 and len(faces) != dim + 1:
            raise SimplicialError(f"a {dim}-cell needs {dim + 1} faces")
        names.append(name)
        for i, y in enumerate(faces):
            self.faces[(cell, i)] = y if isinstance(y, Simplex) else Simplex(y)
        if label is not None:
            self.labels[cell] = label
        return cell

    def build(self) -> SimplicialSet:
        top = max((d for d, v in self.cells.items() if v), default=0)
        return SimplicialSet({d: tuple(v) for d, v in sorted(self.cells.items()) if v},
                             dict(self.faces), dict(self.labels),
                             max(self.dimension_bound, top))


def empty() -> SimplicialSet:
    return Builder().build()


def _subset_name(vs: Iterable[int]) -> str:
    return "".join(str(v) for v in vs)


def standard_simplex(n: int, *, dimension_bound: int = DEFAULT_DIMENSION_BOUND) -> SimplicialSet:
    """Delta^n with nondegenerate cells the nonempty subsets of {0..n}."""
    return _simplex_subcomplex(n, lambda s: True, dimension_bound)


def _simplex_subcomplex(n: int, keep, dimension_bound: int) -> SimplicialSet:
    if n < 0:
        raise SimplicialError("negative dimension")
    if n > CAPACITY:
        raise CapacityError(f"standard simplices are supported up to dimension {CAPACITY}")
    b = Builder(max(dimension_bound, n))
    for k in range(n + 1):
        for s in itertools.combinations(range(n + 1), k + 1):
            if not keep(s):
                continue
            faces = [Cell(k - 1, _subset_name(s[:i] + s[i + 1:])) for i in range(k + 1)] if k else []
            b.add(k, _subset_name(s), faces)
    return b.build()


def subcomplex(X: SimplicialSet, cells: Iterable[Cell]) -> tuple[SimplicialSet, SimplicialMap]:
    """Subcomplex on a face-closed set of cells, with its inclusion."""
    keep = set(cells)
    b = Builder(X.dimension_bound)
    for c in X.all_cells():
        if c not in keep:
            continue
        faces = [X.faces[(c, i)] for i in range(c.dim + 1)] if c.dim else []
        for y in faces:
            if y.cell not in keep:
                raise SimplicialError(f"cell set is not closed under faces at {c.name}")
        b.add(c.dim, c.name, faces, X.labels.get(c))
    Y = b.build()
    return Y, SimplicialMap(Y, X, {c: Simplex(c) for c in Y.all_cells()})


def boundary(n: int) -> tuple[SimplicialSet, SimplicialMap]:
    """The boundary of Delta^n with its inclusion into Delta^n."""
    if n < 1:
        raise SimplicialError("boundary(n) needs n >= 1")
    full = standard_simplex(n)
    top = Cell(n, _subset_name(range(n + 1)))
    return subcomplex(full, [c for c in full.all_cells() if c != top])


def horn(n: int, k: int) -> tuple[SimplicialSet, SimplicialMap]:
    """The horn Lambda^n_k (union of the faces d_i, i != k) and its inclusion."""
    if n < 1 or not 0 <= k <= n:
        raise SimplicialError(f"horn({n}, {k}) out of range")
    full = standard_simplex(n)
    top = _subset_name(range(n + 1))
    missing = _subset_name(v for v in range(n + 1) if v != k)
    return subcomplex(full, [c for c in full.all_cells() if c.name not in (top, missing)])


def rename(X: SimplicialSet, mapping: Mapping[Cell, str]) -> SimplicialSet:
    def r(c: Cell) -> Cell:
        return Cell(c.dim, mapping.get(c, c.name))

    b = Builder(X.dimension_bound)
    for c in X.all_cells():
        faces = [Simplex(r(X.faces[(c, i)].cell), X.faces[(c, i)].degs)
                 for i in range(c.dim + 1)] if c.dim else []
        b.add(c.dim, r(c).name, faces, X.labels.get(c))
    return b.build()


def relabel(X: SimplicialSet, labels: Mapping[Cell, str]) -> SimplicialSet:
    new = dict(X.labels)
    new.update(labels)
    return SimplicialSet(X.cells, X.faces, new, X.dimension_bound)


def disjoint_union(X: SimplicialSet, Y: SimplicialSet, prefixes=("0.", "1.")
                   ) -> tuple[SimplicialSet, SimplicialMap, SimplicialMap]:
    b = Builder(max(X.dimension_bound, Y.dimension_bound))
    maps = []
    for Z, pre in ((X, prefixes[0]), (Y, prefixes[1])):
        assign = {}
        for c in Z.all_cells():
            faces = [Simplex(Cell(y.cell.dim, pre + y.cell.name), y.degs)
                     for y in (Z.faces[(c, i)] for i in range(c.dim + 1))] if c.dim else []
            new = b.add(c.dim, pre + c.name, faces, Z.labels.get(c))
            assign[c] = Simplex(new)
        maps.append(assign)
    U = b.build()
    return U, SimplicialMap(X, U, maps[0]), SimplicialMap(Y, U, maps[1])


# ---------------------------------------------------------------------------
# products


def _degset(x: Simplex) -> frozenset[int]:
    return frozenset(x.degs)


def _factor_pair(X: SimplicialSet, Y: SimplicialSet, x: Simplex, y: Simplex
                 ) -> tuple[tuple[int, ...], Simplex, Simplex]:
    """Write ``(x, y) = s_J (x', y')`` with ``(x', y')`` nondegenerate."""
    word: list[int] = []
    while True:
        common = _degset(x) & _degset(y)
        if not common:
            return normalize_word(word), x, y
        i = max(common)
        x, y = X.face(x, i), Y.face(y, i)
        word.append(i)


def _pair_name(x: Simplex, y: Simplex) -> str:
    def tag(s: Simplex) -> str:
        return "".join(f"s{j}" for j in s.degs) + ":" + s.cell.name
    return f"<{tag(x)}|{tag(y)}>"


@dataclass(frozen=True, eq=False)
class Product:
    space: SimplicialSet
    pairs: dict[Cell, tuple[Simplex, Simplex]]
    proj_left: SimplicialMap
    proj_right: SimplicialMap

    def cell_of(self, x: Simplex, y: Simplex) -> Simplex:
        """The product simplex with the given components, in normal form."""
        word, a, b = _factor_pair(self.proj_left.target, self.proj_right.target, x, y)
        return Simplex(self._index[(a, b)], word)

    @property
    def _index(self) -> dict:
        cache = self.__dict__.get("_idx")
        if cache is None:
            cache = {v: k for k, v in self.pairs.items()}
            object.__setattr__(self, "_idx", cache)
        return cache


def product(X: SimplicialSet, Y: SimplicialSet) -> Product:
    """The simplicial product, cells enumerated by the shuffle description."""
    pairs: dict[tuple[Simplex, Simplex], Cell] = {}
    order: list[tuple[int, Simplex, Simplex]] = []
    for a in X.all_cells():
        for c in Y.all_cells():
            p, q = a.dim, c.dim
            for n in range(max(p, q), p + q + 1):
                for A in itertools.combinations(range(n), n - p):
                    rest = [i for i in range(n) if i not in A]
                    for B in itertools.combinations(rest, n - q):
                        x = Simplex(a, tuple(sorted(A, reverse=True)))
                        y = Simplex(c, tuple(sorted(B, reverse=True)))
                        order.append((n, x, y))
    order.sort(key=lambda t: t[0])
    top = max((t[0] for t in order), default=0)
    b = Builder(max(X.dimension_bound, Y.dimension_bound, top))
    for n, x, y in order:
        name = _pair_name(x, y)
        faces = []
        if n:
            for i in range(n + 1):
                word, fx, fy = _factor_pair(X, Y, X.face(x, i), Y.face(y, i))
                faces.append(Simplex(pairs[(fx, fy)], word))
        pairs[(x, y)] = b.add(n, name, faces)
    P = b.build()
    cells = {v: k for k, v in pairs.items()}
    left = SimplicialMap(P, X, {c: xy[0] for c, xy in cells.items()})
    right = SimplicialMap(P, Y, {c: xy[1] for c, xy in cells.items()})
    return Product(P, cells, left, right)


def product_with_interval(X: SimplicialSet) -> Product:
    return product(X, standard_simplex(1))


# ---------------------------------------------------------------------------
# cones


def cone(X: SimplicialSet, apex: str = "c") -> tuple[SimplicialSet, SimplicialMap]:
    """The join Delta^0 * X (apex is vertex 0) with the inclusion of X."""
    b = Builder(X.dimension_bound if X.top_dim + 1 <= X.dimension_bound else X.top_dim + 1)

    def cname(c: Cell) -> str:
        return f"{apex}*{c.name}"

    apex_cell = None
    for c in X.all_cells():
        faces = [X.faces[(c, i)] for i in range(c.dim + 1)] if c.dim else []
        b.add(c.dim, c.name, faces, X.labels.get(c))
    apex_cell = b.add(0, apex)
    for c in X.all_cells():
        faces = [Simplex(c)]
        if c.dim == 0:
            faces.append(Simplex(apex_cell))
        else:
            for i in range(c.dim + 1):
                y = X.faces[(c, i)]
                faces.append(Simplex(Cell(y.cell.dim + 1, cname(y.cell)),
                                     tuple(j + 1 for j in y.degs)))
        b.add(c.dim + 1, cname(c), faces)
    C = b.build()
    return C, SimplicialMap(X, C, {c: Simplex(c) for c in X.all_cells()})


# ---------------------------------------------------------------------------
# quotients


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def _as_simplex(x: Simplex | Cell) -> Simplex:
    return x if isinstance(x, Simplex) else Simplex(x)


def glue(X: SimplicialSet, identifications: Iterable[tuple[Simplex | Cell, Simplex | Cell]]
         ) -> tuple[SimplicialSet, SimplicialMap]:
    """Quotient of X by the simplicial congruence generated by the pairs.

    The congruence is closed under all faces and degeneracies (union-find
    congruence closure over every simplex up to the top cell dimension), so the
    result does not depend on the order of the identifications.  Surviving
    nondegenerate classes keep the name of their earliest cell.
    """
    pairs = [(_as_simplex(a), _as_simplex(b)) for a, b in identifications]
    for a, b in pairs:
        if a.dim != b.dim:
            raise SimplicialError(f"cannot identify {a} (dim {a.dim}) with {b} (dim {b.dim})")
        for s in (a, b):
            if not X.has_cell(s.cell) or not _word_ok(s.degs, s.cell.dim):
                raise SimplicialError(f"{s} is not a simplex of the input")
    top = X.top_dim
    universe: list[Simplex] = []
    for k in range(top + 1):
        universe.extend(X.simplices(k))
    index = {s: i for i, s in enumerate(universe)}
    uf = _UnionFind(len(universe))
    work = [(index[a], index[b]) for a, b in pairs if a.dim <= top]
    while work:
        i, j = work.pop()
        if not uf.union(i, j):
            continue
        x, y = universe[i], universe[j]
        n = x.dim
        if n >= 1:
            for f in range(n + 1):
                work.append((index[X.face(x, f)], index[X.face(y, f)]))
        if n + 1 <= top:
            for s in range(n + 1):
                work.append((index[X.degeneracy(x, s)], index[X.degeneracy(y, s)]))

    members: dict[int, list[int]] = {}
    for i in range(len(universe)):
        members.setdefault(uf.find(i), []).append(i)
    order = X.cell_order()
    degenerate_member: dict[int, Simplex] = {}
    rep_cell: dict[int, Cell] = {}
    for root, ms in members.items():
        degs = [universe[m] for m in ms if universe[m].degenerate]
        if degs:
            degenerate_member[root] = degs[0]
        else:
            rep_cell[root] = min((universe[m].cell for m in ms), key=order.__getitem__)

    ez_cache: dict[int, Simplex] = {}

    def ez(i: int) -> Simplex:
        root = uf.find(i)
        if root in ez_cache:
            return ez_cache[root]
        if root in rep_cell:
            out = Simplex(rep_cell[root])
        else:
            m = degenerate_member[root]
            j = m.degs[0]
            inner = ez(index[X.face(m, j)])
            out = Simplex(inner.cell, normalize_word((j,) + inner.degs))
        ez_cache[root] = out
        return out

    b = Builder(X.dimension_bound)
    kept = sorted(rep_cell.values(), key=order.__getitem__)
    for c in kept:
        faces = [ez(index[X.face(Simplex(c), i)]) for i in range(c.dim + 1)] if c.dim else []
        b.add(c.dim, c.name, faces, X.labels.get(c))
    Q = b.build()
    proj = SimplicialMap(X, Q, {c: ez(index[Simplex(c)]) for c in X.all_cells()})
    return Q, proj


def collapse(X: SimplicialSet, cells: Iterable[Cell], to_vertex: Cell | None = None
             ) -> tuple[SimplicialSet, SimplicialMap]:
    """Collapse the subcomplex generated by ``cells`` to one of its vertices."""
    closed: set[Cell] = set()
    stack = list(cells)
    while stack:
        c = stack.pop()
        if c in closed:
            continue
        closed.add(c)
        stack.extend(X.faces[(c, i)].cell for i in range(c.dim + 1) if c.dim)
    cells = sorted(closed)
    if not cells:
        return glue(X, [])
    if to_vertex is None:
        to_vertex = next(c for c in cells if c.dim == 0)
    return glue(X, [(Simplex(c), total_degeneracy(to_vertex, c.dim)) for c in cells])


def pushout(f: SimplicialMap, g: SimplicialMap, prefixes=("0.", "1.")
            ) -> tuple[SimplicialSet, SimplicialMap, SimplicialMap]:
    """Pushout of ``X <-f- A -g-> Y`` along maps injective on cells."""
    if f.source is not g.source and f.source != g.source:
        raise SimplicialError("pushout legs must share their source")
    for leg in (f, g):
        if not leg.is_injective_on_cells():
            raise SimplicialError("pushout legs must be injective on cells")
    U, iX, iY = disjoint_union(f.target, g.target, prefixes)
    ids = [(iX(f(c)), iY(g(c))) for c in f.source.all_cells()]
    P, proj = glue(U, ids)
    return P, iX.compose(proj), iY.compose(proj)


# ---------------------------------------------------------------------------
# text format

_FACE_RE = re.compile(r"^(\S+)\.face\((\d+)\) = ((?:s_\d+ ?)*)\((.*)\)$")


def dumps(X: SimplicialSet) -> str:
    lines = ["sset", f"dimension_bound {X.dimension_bound}"]
    for d in sorted(X.cells):
        names = X.cells[d]
        if not names:
            continue
        lines.append(f"cells {d} : " + " ".join(names))
        for n in names:
            for i in range(d + 1 if d else 0):
                y = X.faces[(Cell(d, n), i)]
                lines.append(f"{n}.face({i}) = {format_simplex(y)}")
    for c in X.all_cells():
        if c in X.labels:
            lines.append(f"label {c.dim} {c.name} = {X.labels[c]}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> SimplicialSet:
    lines = [ln.rstrip("\n") for ln in text.splitlines()]
    lines = [ln for ln in lines if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or lines[0].strip() != "sset":
        raise SimplicialError("missing 'sset' header")
    cells: dict[int, list[str]] = {}
    faces: dict[tuple[Cell, int], Simplex] = {}
    labels: dict[Cell, str] = {}
    bound = DEFAULT_DIMENSION_BOUND
    current: int | None = None
    for ln in lines[1:]:
        if ln.startswith("dimension_bound "):
            bound = int(ln.split()[1])
        elif ln.startswith("cells "):
            head, _, names = ln.partition(" : ")
            current = int(head.split()[1])
            cells[current] = names.split()
        elif ln.startswith("label "):
            head, _, text_ = ln.partition(" = ")
            _, d, name = head.split(maxsplit=2)
            labels[Cell(int(d), name)] = text_
        else:
            m = _FACE_RE.match(ln)
            if not m or current is None:
                raise SimplicialError(f"cannot parse line: {ln!r}")
            name, i, word, target = m.groups()
            degs = tuple(int(t[2:]) for t in word.split())
            faces[(Cell(current, name), int(i))] = Simplex(
                Cell(current - 1 - len(degs), target), degs)
    X = SimplicialSet({d: tuple(v) for d, v in sorted(cells.items())}, faces, labels, bound)
    report = validate(X)
    if not report.ok:
        raise SimplicialError(f"invalid model: {report.message}")
    return X


def iter_cells_with_faces(X: SimplicialSet) -> Iterator[tuple[Cell, tuple[Simplex, ...]]]:
    for c in X.all_cells():
        yield c, tuple(X.faces[(c, i)] for i in range(c.dim + 1)) if c.dim else ()
