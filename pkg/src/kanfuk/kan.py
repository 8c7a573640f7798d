"""Horn filling, Kan completion, homology, fundamental groups and homotopy search."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from . import gf2
from .simplicial import (Builder, Cell, Product, SimplicialError, SimplicialMap,
                         SimplicialSet, Simplex, normalize_word, product_with_interval,
                         standard_simplex, total_degeneracy)
from .smith import SmithForm, matvec, smith_normal_form


class NotKanError(SimplicialError):
    pass


class BudgetExceeded(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# horns


@dataclass(frozen=True, eq=False)
class HornProblem:
    """A map ``horn(n, k) -> complex`` given by its codimension-one faces.

    ``faces[i]`` is the image of the face ``d_i`` of the standard simplex for
    every ``i != k``.
    """

    complex: SimplicialSet
    n: int
    k: int
    faces: dict[int, Simplex]

    def is_valid(self) -> bool:
        X = self.complex
        if set(self.faces) != {i for i in range(self.n + 1) if i != self.k}:
            return False
        if any(y.dim != self.n - 1 for y in self.faces.values()):
            return False
        for i, j in itertools.combinations(sorted(self.faces), 2):
            if self.n >= 2 and X.face(self.faces[j], i) != X.face(self.faces[i], j - 1):
                return False
        return True

    def describe(self) -> str:
        parts = [f"{i}:{self.faces[i]}" for i in sorted(self.faces)]
        return f"Λ^{self.n}_{self.k} @ " + " ".join(parts)

    def matches(self, z: Simplex) -> bool:
        X = self.complex
        return z.dim == self.n and all(X.face(z, i) == y for i, y in self.faces.items())


class _SimplexIndex:
    """Face-tuple lookup for the n-simplices of a complex (degenerate included)."""

    def __init__(self, X: SimplicialSet):
        self.X = X
        self._simplices: dict[int, list[Simplex]] = {}
        self._by_faces: dict[tuple[int, int], dict[tuple, Simplex]] = {}

    def simplices(self, n: int) -> list[Simplex]:
        if n not in self._simplices:
            self._simplices[n] = self.X.simplices(n)
        return self._simplices[n]

    def lookup(self, n: int, k: int, faces: dict[int, Simplex]) -> Simplex | None:
        key = (n, k)
        if key not in self._by_faces:
            table: dict[tuple, Simplex] = {}
            for z in self.simplices(n):
                t = tuple(self.X.face(z, i) for i in range(n + 1) if i != k)
                table.setdefault(t, z)
            self._by_faces[key] = table
        return self._by_faces[key].get(tuple(faces[i] for i in sorted(faces)))


def find_filler(p: HornProblem) -> Simplex | None:
    """A simplex (possibly degenerate) whose faces agree with the horn, or None."""
    for z in p.complex.simplices(p.n):
        if p.matches(z):
            return z
    return None


def iter_horns(X: SimplicialSet, n: int, k: int, index: _SimplexIndex | None = None
               ) -> Iterator[HornProblem]:
    """All maps ``horn(n, k) -> X`` by backtracking over compatible faces."""
    index = index or _SimplexIndex(X)
    if n == 1:
        for v in index.simplices(0):
            yield HornProblem(X, 1, k, {1 - k: v})
        return
    cands = index.simplices(n - 1)
    slots = [i for i in range(n + 1) if i != k]
    chosen: dict[int, Simplex] = {}

    def rec(pos: int):
        if pos == len(slots):
            yield HornProblem(X, n, k, dict(chosen))
            return
        j = slots[pos]
        for y in cands:
            ok = True
            for i in slots[:pos]:
                # i < j: d_i y_j = d_{j-1} y_i
                if X.face(y, i) != X.face(chosen[i], j - 1):
                    ok = False
                    break
            if ok:
                chosen[j] = y
                yield from rec(pos + 1)
                del chosen[j]

    yield from rec(0)


@dataclass(frozen=True)
class KanReport:
    status: str  # "kan", "not_kan", "inconclusive"
    examined: int
    failure: HornProblem | None = None
    lines: tuple[str, ...] = ()

    @property
    def is_kan(self) -> bool:
        return self.status == "kan"

    def __str__(self):
        head = f"status={self.status} examined={self.examined}"
        if self.failure is not None:
            head += f" first_unfilled={self.failure.describe()}"
        return head


def is_kan(X: SimplicialSet, max_dim: int, budget: int = 200_000,
           record: bool = False) -> KanReport:
    """Check every horn of dimension <= max_dim, in (n, k, face) order."""
    index = _SimplexIndex(X)
    examined = 0
    lines: list[str] = []
    for n in range(1, max_dim + 1):
        for k in range(n + 1):
            for p in iter_horns(X, n, k, index):
                if examined >= budget:
                    return KanReport("inconclusive", examined, None, tuple(lines))
                examined += 1
                filled = index.lookup(n, k, p.faces) is not None
                if record:
                    lines.append(f"{p.describe()} : {'filled' if filled else 'unfilled'}")
                if not filled:
                    return KanReport("not_kan", examined, p, tuple(lines))
    return KanReport("kan", examined, None, tuple(lines))


def horn_report_lines(X: SimplicialSet, max_dim: int, budget: int = 10_000) -> list[str]:
    """One line per horn problem, stopping at the budget."""
    index = _SimplexIndex(X)
    out = []
    for n in range(1, max_dim + 1):
        for k in range(n + 1):
            for p in iter_horns(X, n, k, index):
                if len(out) >= budget:
                    return out
                filled = index.lookup(n, k, p.faces) is not None
                out.append(f"{p.describe()} : {'filled' if filled else 'unfilled'}")
    return out


@dataclass(frozen=True, eq=False)
class KanCompletion:
    complex: SimplicialSet
    inclusion: SimplicialMap
    certified: bool
    attached: int


def _copy_into(X: SimplicialSet) -> Builder:
    b = Builder(X.dimension_bound)
    for c in X.all_cells():
        fs = [X.faces[(c, i)] for i in range(c.dim + 1)] if c.dim else []
        b.add(c.dim, c.name, fs, X.labels.get(c))
    return b


def _attach_filler(b: Builder, X: SimplicialSet, p: HornProblem, serial: int) -> None:
    n, k = p.n, p.k
    y = p.faces
    if n == 1:
        raise SimplicialError("1-dimensional horns always have degenerate fillers")
    w_faces = []
    for j in range(n):
        if j < k:
            w_faces.append(X.face(y[j], k - 1))
        else:
            w_faces.append(X.face(y[j + 1], k))
    w = b.add(n - 1, f"h{serial}", w_faces)
    z_faces = [Simplex(w) if i == k else y[i] for i in range(n + 1)]
    b.add(n, f"f{serial}", z_faces)


def kan_complete(X: SimplicialSet, max_dim: int, budget: int = 64,
                 check_budget: int = 200_000) -> KanCompletion:
    """Attach free fillers (an elementary expansion each) until Kan or out of budget.

    Every pass scans horns in (n, k, face) order on the current complex and
    fills the first unfillable one; this makes the result deterministic.
    """
    current = X
    attached = 0
    names = {c.name for c in X.all_cells()}
    serial = 0
    while True:
        report = is_kan(current, max_dim, check_budget)
        if report.status == "kan":
            break
        if report.status == "inconclusive" or attached >= budget:
            return _finish(X, current, False, attached)
        b = _copy_into(current)
        while f"h{serial}" in names or f"f{serial}" in names:
            serial += 1
        _attach_filler(b, current, report.failure, serial)
        names.update({f"h{serial}", f"f{serial}"})
        serial += 1
        attached += 1
        current = b.build()
    return _finish(X, current, True, attached)


def _finish(X, Y, certified, attached) -> KanCompletion:
    inc = SimplicialMap(X, Y, {c: Simplex(c) for c in X.all_cells()})
    return KanCompletion(Y, inc, certified, attached)


# ---------------------------------------------------------------------------
# homology


def boundary_matrix(X: SimplicialSet, n: int, mod2: bool = False) -> list[list[int]]:
    """Matrix of the normalized boundary C_n -> C_{n-1} (rows = (n-1)-cells)."""
    rows = X.cells_in(n - 1)
    cols = X.cells_in(n)
    pos = {c: i for i, c in enumerate(rows)}
    M = [[0] * len(cols) for _ in rows]
    if n <= 0:
        return M
    for j, c in enumerate(cols):
        for i in range(n + 1):
            y = X.faces[(c, i)]
            if not y.degenerate:
                M[pos[y.cell]][j] += -1 if i % 2 else 1
    if mod2:
        M = [[v % 2 for v in row] for row in M]
    return M


@dataclass(frozen=True)
class HomologyGroup:
    degree: int
    rank: int
    torsion: tuple[int, ...] = ()
    field: str = "Z"

    def __str__(self):
        if self.field == "F2":
            body = f"F2^{self.rank}" if self.rank else "0"
            return f"H_{self.degree} = {body}"
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return f"H_{self.degree} = " + (" (+) ".join(parts) if parts else "0")

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def short(self) -> str:
        return str(self).split(" = ", 1)[1]


@dataclass(frozen=True)
class _Cycles:
    smith: SmithForm  # of the boundary out of degree n
    dim: int
    quotient: SmithForm  # of the boundary into degree n, in cycle coordinates


def _cycle_data(X: SimplicialSet, n: int) -> _Cycles:
    N = X.n_cells(n)
    Dn = boundary_matrix(X, n) if n > 0 else [[0] * N for _ in range(0)]
    S = smith_normal_form(Dn, X.n_cells(n - 1) if n > 0 else 0, N)
    r = S.rank
    B = boundary_matrix(X, n + 1)
    M = len(B[0]) if B else X.n_cells(n + 1)
    VB = [[sum(S.V_inv[i][k] * B[k][j] for k in range(N)) for j in range(M)]
          for i in range(N)]
    K = VB[r:]
    Q = smith_normal_form(K, N - r, M)
    return _Cycles(S, N, Q)


def homology(X: SimplicialSet, degrees: Sequence[int] | range | None = None,
             ring: str = "Z") -> list[HomologyGroup]:
    """Homology of the normalized chain complex over Z (Smith form) or F2 (ranks)."""
    if degrees is None:
        degrees = range(0, X.top_dim + 1)
    out = []
    for n in degrees:
        if ring == "F2":
            N = X.n_cells(n)
            rk_out = gf2.rank(_columns_mod2(X, n)) if n > 0 else 0
            rk_in = gf2.rank(_columns_mod2(X, n + 1))
            out.append(HomologyGroup(n, N - rk_out - rk_in, (), "F2"))
            continue
        if ring != "Z":
            raise ValueError(f"unknown coefficient ring {ring!r}")
        data = _cycle_data(X, n)
        kdim = data.dim - data.smith.rank
        diag = data.quotient.diagonal
        out.append(HomologyGroup(n, kdim - len(diag), tuple(d for d in diag if d > 1)))
    return out


def _columns_mod2(X: SimplicialSet, n: int) -> list[int]:
    M = boundary_matrix(X, n, mod2=True)
    cols = X.n_cells(n)
    return [sum(M[i][j] << i for i in range(len(M))) for j in range(cols)]


def homology_class(X: SimplicialSet, n: int, chain: dict[Cell, int]) -> tuple[int, ...]:
    """Coordinates of a cycle in H_n: torsion coordinates (mod d) then free ones."""
    cells = X.cells_in(n)
    z = [chain.get(c, 0) for c in cells]
    if n > 0:
        Dn = boundary_matrix(X, n)
        if any(sum(row[j] * z[j] for j in range(len(z))) for row in Dn):
            raise ValueError("chain is not a cycle")
    data = _cycle_data(X, n)
    r = data.smith.rank
    c = matvec(data.smith.V_inv, z)[r:]
    y = matvec(data.quotient.U, c) if c else []
    out = []
    for i, d in enumerate(data.quotient.diagonal):
        if d > 1:
            out.append(y[i] % d)
    out.extend(y[len(data.quotient.diagonal):])
    return tuple(out)


def betti_numbers(X: SimplicialSet, ring: str = "F2") -> list[int]:
    return [g.rank for g in homology(X, ring=ring)]


# ---------------------------------------------------------------------------
# fundamental group


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relations: tuple[tuple[tuple[str, int], ...], ...]
    moves: int = 0

    @property
    def is_trivial(self) -> bool:
        return not self.generators

    def __str__(self):
        def word(w):
            return " ".join(g if e == 1 else f"{g}^-1" for g, e in w) or "1"
        rels = ", ".join(word(r) for r in self.relations)
        return f"< {', '.join(self.generators)} | {rels} >"


def _free_reduce(w: list[tuple[str, int]]) -> list[tuple[str, int]]:
    out: list[tuple[str, int]] = []
    for g in w:
        if out and out[-1][0] == g[0] and out[-1][1] == -g[1]:
            out.pop()
        else:
            out.append(g)
    while len(out) >= 2 and out[0][0] == out[-1][0] and out[0][1] == -out[-1][1]:
        out = out[1:-1]
    return out


def _inverse(w):
    return [(g, -e) for g, e in reversed(w)]


def pi1_presentation(X: SimplicialSet, basepoint: Cell | None = None,
                     move_budget: int = 10_000) -> Presentation:
    """Edge-path group: generators off a spanning tree, relations from 2-cells."""
    verts = X.vertices()
    if not verts:
        raise SimplicialError("empty simplicial set")
    basepoint = basepoint or verts[0]
    edges = X.cells_in(1)
    adj: dict[Cell, list[tuple[Cell, Cell]]] = {v: [] for v in verts}
    for e in edges:
        a, b = X.faces[(e, 1)].cell, X.faces[(e, 0)].cell
        adj[a].append((e, b))
        adj[b].append((e, a))
    seen = {basepoint}
    tree: set[Cell] = set()
    stack = [basepoint]
    while stack:
        v = stack.pop(0)
        for e, w in adj[v]:
            if w not in seen:
                seen.add(w)
                tree.add(e)
                stack.append(w)
    if len(seen) != len(verts):
        raise SimplicialError("simplicial set is not connected")
    gens = [e.name for e in edges if e not in tree]

    def letter(y: Simplex) -> list[tuple[str, int]]:
        if y.degenerate or y.cell in tree:
            return []
        return [(y.cell.name, 1)]

    rels = []
    for c in X.cells_in(2):
        d0, d1, d2 = (X.faces[(c, i)] for i in range(3))
        rels.append(letter(d2) + letter(d0) + _inverse(letter(d1)))
    return _tietze(gens, rels, move_budget)


def _tietze(gens: list[str], rels: list[list[tuple[str, int]]], budget: int) -> Presentation:
    gens = list(gens)
    rels = [r for r in (_free_reduce(r) for r in rels) if r]
    moves = 0
    progress = True
    while progress and moves < budget:
        progress = False
        for idx, r in enumerate(rels):
            counts: dict[str, int] = {}
            for g, _ in r:
                counts[g] = counts.get(g, 0) + 1
            once = [g for g in sorted(counts) if counts[g] == 1]
            if not once:
                continue
            g = once[0]
            pos = next(i for i, (h, _) in enumerate(r) if h == g)
            e = r[pos][1]
            # r = u g^e v  =>  g = (v u)^{-e}
            rest = r[pos + 1:] + r[:pos]
            sub = _inverse(rest) if e == 1 else rest
            new_rels = []
            for j, s in enumerate(rels):
                if j == idx:
                    continue
                w: list[tuple[str, int]] = []
                for h, f in s:
                    if h == g:
                        w.extend(sub if f == 1 else _inverse(sub))
                    else:
                        w.append((h, f))
                w = _free_reduce(w)
                if w:
                    new_rels.append(w)
            rels = new_rels
            gens.remove(g)
            moves += 1
            progress = True
            break
    uniq = []
    for r in rels:
        t = tuple(r)
        if t not in uniq:
            uniq.append(t)
    return Presentation(tuple(gens), tuple(uniq), moves)


# ---------------------------------------------------------------------------
# homotopy classes


@dataclass(frozen=True, eq=False)
class HomotopyClass:
    complex: SimplicialSet
    basepoint: Cell
    representative: Simplex

    def __post_init__(self):
        n = self.representative.dim
        if n >= 1:
            target = total_degeneracy(self.basepoint, n - 1)
            for i in range(n + 1):
                if self.complex.face(self.representative, i) != target:
                    raise ValueError(f"face {i} of the representative is not the basepoint")

    @property
    def dim(self) -> int:
        return self.representative.dim


@dataclass(frozen=True)
class HomotopyResult:
    verdict: str  # "yes" or "no-within-budget"
    nodes: int
    homotopy: dict | None = None

    def __bool__(self):
        return self.verdict == "yes"

    def __str__(self):
        return self.verdict


def hurewicz_image(a: HomotopyClass) -> tuple[int, ...]:
    """Homology coordinates of the class of the representative."""
    X = a.complex
    n = a.dim
    rep = a.representative
    chain = {} if rep.degenerate else {rep.cell: 1}
    return homology_class(X, n, chain)


def homotopic(a: HomotopyClass, b: HomotopyClass, budget: int = 100_000,
              assume_kan: bool = False, kan_budget: int = 200_000) -> HomotopyResult:
    """Search for a homotopy rel boundary on the prism Delta^n x I.

    ``yes`` comes with the homotopy as a certificate; ``no-within-budget`` is
    not a proof of anything.  The complex must be Kan up to dimension n + 1,
    checked here unless ``assume_kan`` is set.
    """
    X = a.complex
    if b.complex is not X or a.basepoint != b.basepoint or a.dim != b.dim:
        raise ValueError("classes must share complex, basepoint and dimension")
    n = a.dim
    if not assume_kan:
        rep = is_kan(X, n + 1, kan_budget)
        if rep.status != "kan":
            raise NotKanError(f"complex is not Kan-certified up to dimension {n + 1} "
                              f"({rep.status})")
    P: Product = product_with_interval(standard_simplex(n))
    prism = P.space
    top = Cell(n, "".join(str(i) for i in range(n + 1)))
    fixed: dict[Cell, Simplex] = {}
    free: list[Cell] = []
    for c in prism.all_cells():
        x, t = P.pairs[c]
        # x lies on the boundary of Delta^n iff its nondegenerate part is not the top cell
        t_end = t.cell.dim == 0
        on_base_boundary = x.cell != top
        if on_base_boundary:
            fixed[c] = total_degeneracy(a.basepoint, c.dim)
        elif t_end:
            end = a if t.cell.name == "0" else b
            fixed[c] = Simplex(end.representative.cell,
                               normalize_word(x.degs + end.representative.degs))
        else:
            free.append(c)
    free.sort(key=lambda c: c.dim)
    by_dim: dict[int, list[Simplex]] = {}
    nodes = 0
    assign = dict(fixed)

    def image(y: Simplex) -> Simplex:
        im = assign[y.cell]
        return Simplex(im.cell, normalize_word(y.degs + im.degs))

    def consistent(c: Cell, z: Simplex) -> bool:
        for i in range(c.dim + 1):
            f = prism.faces[(c, i)]
            if f.cell in assign and X.face(z, i) != image(f):
                return False
        return True

    def rec(pos: int) -> bool:
        nonlocal nodes
        if pos == len(free):
            return True
        c = free[pos]
        cands = by_dim.setdefault(c.dim, X.simplices(c.dim))
        for z in cands:
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded
            if consistent(c, z):
                assign[c] = z
                if rec(pos + 1):
                    return True
                del assign[c]
        return False

    # the constant homotopy is tried first when the ends agree
    if a.representative == b.representative:
        const = {c: Simplex(a.representative.cell, normalize_word(
            P.pairs[c][0].degs + a.representative.degs)) if P.pairs[c][0].cell == top
            else total_degeneracy(a.basepoint, c.dim) for c in prism.all_cells()}
        H = SimplicialMap(prism, X, const)
        if H.check().ok:
            return HomotopyResult("yes", 0, const)
    try:
        found = rec(0)
    except BudgetExceeded:
        return HomotopyResult("no-within-budget", nodes)
    if found:
        H = SimplicialMap(prism, X, dict(assign))
        assert H.check().ok
        return HomotopyResult("yes", nodes, dict(assign))
    return HomotopyResult("no-within-budget", nodes)
