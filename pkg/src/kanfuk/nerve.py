"""The A-infinity nerve of a finite category over F2.

An n-simplex assigns to every vertex subset ``I = (i0 < ... < ik)`` of
``[n]`` with ``k >= 1`` an element ``f_I`` of ``hom(obj(i0), obj(ik))`` of
degree ``k - 1``, subject to the coherence equation at every face::

    mu^1 f_I + sum_{0<m<k} f_{I - i_m}
             + sum_{s>=2} sum_{I = J1 u ... u Js} mu^s(f_J1, ..., f_Js) = 0

where the inner sum runs over decompositions of ``I`` into ``s`` consecutive
intervals sharing endpoints.  Edges are the closed degree-0 morphisms.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

import numpy as np

from . import gf2
from .ainfinity import (AInfinityCategory, AInfinityError, CategoryBuilder,
                        HomologyCategory, homology_category, is_c_isomorphism)
from .simplicial import Builder, Cell, SimplicialSet, Simplex, normalize_word

Face = tuple[int, ...]


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class NerveSimplex:
    vertex_objects: tuple[str, ...]
    face_data: tuple[tuple[Face, int], ...]  # sorted by face

    @property
    def n(self) -> int:
        return len(self.vertex_objects) - 1

    def data(self) -> dict[Face, int]:
        return dict(self.face_data)

    def __getitem__(self, face: Sequence[int]) -> int:
        return self.data()[tuple(face)]

    def face(self, i: int) -> "NerveSimplex":
        keep = [v for v in range(self.n + 1) if v != i]
        pos = {v: k for k, v in enumerate(keep)}
        new = [(tuple(pos[v] for v in J), f) for J, f in self.face_data if i not in J]
        objs = tuple(self.vertex_objects[v] for v in keep)
        return NerveSimplex(objs, tuple(sorted(new)))

    def restrict(self, vertices: Sequence[int]) -> "NerveSimplex":
        vs = sorted(vertices)
        pos = {v: k for k, v in enumerate(vs)}
        new = [(tuple(pos[v] for v in J), f) for J, f in self.face_data if set(J) <= set(vs)]
        return NerveSimplex(tuple(self.vertex_objects[v] for v in vs), tuple(sorted(new)))

    def degeneracy(self, C: AInfinityCategory, i: int) -> "NerveSimplex":
        """Insert the unit on the repeated vertex ``i = i + 1``."""
        objs = self.vertex_objects[:i + 1] + self.vertex_objects[i:]
        data = self.data()
        new = {}
        for J in all_faces(self.n + 1):
            if i in J and i + 1 in J:
                new[J] = C.unit(objs[i]) if len(J) == 2 else 0
            else:
                new[J] = data[tuple(v if v <= i else v - 1 for v in J)]
        return NerveSimplex(objs, tuple(sorted(new.items())))

    def edges(self) -> list[tuple[int, int, int]]:
        return [(J[0], J[1], f) for J, f in self.face_data if len(J) == 2]


def all_faces(n: int, min_size: int = 2) -> list[Face]:
    """Vertex subsets of [n] with at least ``min_size`` elements, by size then lex."""
    out = []
    for k in range(min_size, n + 2):
        out.extend(itertools.combinations(range(n + 1), k))
    return out


def decompositions(I: Face, s: int) -> Iterator[tuple[Face, ...]]:
    """Splittings of ``I`` into ``s`` consecutive blocks of size >= 2 sharing endpoints."""
    k = len(I) - 1
    for cuts in itertools.combinations(range(1, k), s - 1):
        bounds = (0,) + cuts + (k,)
        yield tuple(I[bounds[t]:bounds[t + 1] + 1] for t in range(s))


def coherence_residual(C: AInfinityCategory, objs: Sequence[str], data: Mapping[Face, int],
                       top: Face | None = None, candidate: int | None = None) -> int:
    """Left side of the coherence equation at ``top`` (default: the whole simplex).

    ``candidate`` overrides ``data[top]``; missing lower faces raise KeyError.
    """
    if top is None:
        top = tuple(range(len(objs)))
    k = len(top) - 1
    f_top = data[top] if candidate is None else candidate
    a, b = objs[top[0]], objs[top[-1]]
    total = C.mu1(a, b, f_top)
    for m in range(1, k):
        total ^= data[top[:m] + top[m + 1:]]
    for s in range(2, k + 1):
        for blocks in decompositions(top, s):
            xs = [data[J] for J in blocks]
            if not all(xs):
                continue
            chain = tuple(objs[J[0]] for J in blocks) + (b,)
            total ^= C.apply(s, chain, xs)
    return total


def extend_simplex(C: AInfinityCategory, objs: Sequence[str], boundary: Mapping[Face, int],
                   graded: bool = True) -> gf2.Coset | None:
    """All ``f_top`` (of degree n - 1 when graded) closing the simplex, or None."""
    n = len(objs) - 1
    top = tuple(range(n + 1))
    a, b = objs[0], objs[-1]
    if (a, b) not in C.homs:
        return None  # no morphisms at all, not even zero
    H = C.hom(a, b)
    R0 = coherence_residual(C, objs, boundary, top, candidate=0)
    slots = [i for i in range(len(H)) if not graded or H.degrees[i] == n - 1]
    full = C.mu1_columns(a, b)
    cols = [full[i] for i in slots]
    sol = gf2.solve_affine(cols, R0)
    if sol is None:
        return None

    def lift(v: int) -> int:
        return sum(1 << slots[i] for i in gf2.bit_indices(v))

    return gf2.Coset(lift(sol.particular), tuple(lift(v) for v in sol.basis))


def is_coherent(C: AInfinityCategory, x: NerveSimplex) -> bool:
    data = x.data()
    for J in all_faces(x.n):
        objs = [x.vertex_objects[v] for v in J]
        sub = {tuple(range(len(J))): data[J]}
        pos = {v: k for k, v in enumerate(J)}
        for K, f in data.items():
            if set(K) <= set(J):
                sub[tuple(pos[v] for v in K)] = f
        if coherence_residual(C, objs, sub):
            return False
        H = C.hom(objs[0], objs[-1])
        if data[J] & ~H.degree_mask(len(J) - 2):
            return False
    return True


# ---------------------------------------------------------------------------
# nerve enumeration


class NerveBudgetExceeded(RuntimeError):
    pass


def iter_simplices(C: AInfinityCategory, n: int, budget: int | None = None
                   ) -> Iterator[NerveSimplex]:
    """Every n-simplex, built face by face (edges, triangles, ...) in lex order."""
    if n == 0:
        for o in C.objects:
            yield NerveSimplex((o,), ())
        return
    # a face is solved as soon as all of its subfaces are known
    faces = sorted(all_faces(n), key=lambda J: (J[-1], len(J), J))
    count = 0
    for objs in itertools.product(C.objects, repeat=n + 1):
        if any((objs[i], objs[j]) not in C.homs
               for i in range(n + 1) for j in range(i + 1, n + 1)):
            continue
        data: dict[Face, int] = {}

        def rec(pos: int):
            nonlocal count
            if pos == len(faces):
                count += 1
                if budget is not None and count > budget:
                    raise NerveBudgetExceeded
                yield NerveSimplex(tuple(objs), tuple(sorted(data.items())))
                return
            J = faces[pos]
            sobjs = [objs[v] for v in J]
            loc = {v: k for k, v in enumerate(J)}
            sub = {tuple(loc[v] for v in K): data[K] for K in data if set(K) <= set(J)}
            coset = extend_simplex(C, sobjs, sub)
            if coset is None:
                return
            for f in coset:
                data[J] = f
                yield from rec(pos + 1)
            del data[J]

        yield from rec(0)


@dataclass(frozen=True, eq=False)
class NerveComplex:
    category: AInfinityCategory
    complex: SimplicialSet
    simplices: dict[Cell, NerveSimplex]
    index: dict[NerveSimplex, Simplex]  # every enumerated simplex in normal form

    def cell_of(self, x: NerveSimplex) -> Simplex:
        return self.index[x]

    def all_simplices(self, n: int) -> list[NerveSimplex]:
        return [x for x in self.index if x.n == n]


def nerve(C: AInfinityCategory, max_dim: int, budget: int | None = 200_000) -> NerveComplex:
    """The nerve up to ``max_dim`` (requires units above dimension 0)."""
    if max_dim > 4:
        raise PreconditionError("nerve is supported up to dimension 4")
    if max_dim > 0 and any(o not in C.units for o in C.objects):
        raise PreconditionError("degeneracies need a declared unit on every object")
    b = Builder(max(max_dim, 1))
    cells: dict[Cell, NerveSimplex] = {}
    index: dict[NerveSimplex, Simplex] = {}
    for n in range(0, max_dim + 1):
        serial = 0
        for x in iter_simplices(C, n, budget):
            ez = None
            for j in range(n):
                y = x.face(j)
                if y.degeneracy(C, j) == x:
                    inner = index[y]
                    ez = Simplex(inner.cell, normalize_word((j,) + inner.degs))
                    break
            if ez is not None:
                index[x] = ez
                continue
            name = x.vertex_objects[0] if n == 0 else f"n{n}_{serial}"
            serial += 1
            faces = [index[x.face(i)] for i in range(n + 1)] if n else []
            cell = b.add(n, name, faces, _label(C, x))
            cells[cell] = x
            index[x] = Simplex(cell)
    return NerveComplex(C, b.build(), cells, index)


def _label(C: AInfinityCategory, x: NerveSimplex) -> str:
    parts = ["".join(map(str, J)) + "=" + C.hom(x.vertex_objects[J[0]],
                                                   x.vertex_objects[J[-1]]).format(f)
             for J, f in x.face_data]
    return " ".join([",".join(x.vertex_objects)] + parts)


def maximal_kan_subcomplex(N: NerveComplex, H: HomologyCategory | None = None) -> NerveComplex:
    """Keep exactly the simplices all of whose edges are c-isomorphisms."""
    C = N.category
    H = H or homology_category(C)
    cache: dict[tuple[str, str, int], bool] = {}

    def good(x: NerveSimplex) -> bool:
        for i, j, f in x.edges():
            key = (x.vertex_objects[i], x.vertex_objects[j], f)
            if key not in cache:
                cache[key] = is_c_isomorphism(H, key[0], key[1], f)
            if not cache[key]:
                return False
        return True

    b = Builder(N.complex.dimension_bound)
    cells = {}
    index = {}
    for c in N.complex.all_cells():
        x = N.simplices[c]
        if not good(x):
            continue
        faces = [N.complex.faces[(c, i)] for i in range(c.dim + 1)] if c.dim else []
        new = b.add(c.dim, c.name, faces, N.complex.labels.get(c))
        cells[new] = x
    kept = set(cells)
    for x, s in N.index.items():
        if s.cell in kept:
            index[x] = s
    return NerveComplex(C, b.build(), cells, index)


# ---------------------------------------------------------------------------
# the 4-simplex obstruction


def obstruction_objects() -> tuple[str, ...]:
    return tuple(f"L{i}" for i in range(5))


@dataclass(frozen=True)
class ObstructionFixtureConfig:
    correlator: int = 1
    skip_pattern: str = "transitive"  # or "consecutive"
    max_hom_dim: int = 12
    exact_pairs: tuple[int, int] = (1, 3)  # range for the number of (a_k, b_k) pairs
    extra_closed: tuple[int, int] = (0, 3)
    extra_elsewhere: tuple[int, int] = (0, 2)


def obstruction_fixture(seed: int, cfg: ObstructionFixtureConfig | None = None, **overrides
                         ) -> AInfinityCategory:
    """Random category on L0..L4 shaped like the obstruction setting.

    hom(Li, Lj), i < j, contains the degree-0 generator g_ij; composition of
    generators follows ``skip_pattern``; mu^3 vanishes; the only nonzero mu^4
    is on (g01, g12, g23, g34) and equals ``correlator * w`` plus a random
    exact term in hom(L0, L4).  The class of w spans the degree-2 homology of
    hom(L0, L4) and the stored pairing functional is dual to it.
    """
    cfg = cfg or ObstructionFixtureConfig()
    if overrides:
        cfg = ObstructionFixtureConfig(**{**cfg.__dict__, **overrides})
    rng = np.random.default_rng(seed)
    objs = obstruction_objects()
    b = CategoryBuilder(objs)
    for i, o in enumerate(objs):
        b.hom(o, o, [(f"1_{i}", 0)])
        b.unit(o, f"1_{i}")
    for i, j in itertools.combinations(range(5), 2):
        if (i, j) == (0, 4):
            continue
        extra = int(rng.integers(cfg.extra_elsewhere[0], cfg.extra_elsewhere[1] + 1))
        basis = [(f"g{i}{j}", 0)] + [(f"x{i}{j}_{t}", 2) for t in range(extra)]
        b.hom(objs[i], objs[j], basis)
    # hom(L0, L4): g04 (deg 0), w (deg 2), pairs a_k (deg 2) / b_k (deg 3), closed z (deg 3)
    budget = cfg.max_hom_dim - 2
    npairs = int(rng.integers(cfg.exact_pairs[0], cfg.exact_pairs[1] + 1))
    npairs = max(0, min(npairs, budget // 2))
    nz = int(rng.integers(cfg.extra_closed[0], cfg.extra_closed[1] + 1))
    nz = max(0, min(nz, budget - 2 * npairs))
    deg2 = 1 + npairs  # w, a_1.. a_k in the old basis
    deg3 = npairs + nz  # b_1.. b_k, z_1.. z_nz
    # old coordinates: deg2 vector bit 0 = w, bit k = a_k; deg3 bit k-1 = b_k, then z's
    P2 = gf2.random_invertible(deg2, rng)  # columns: new basis vectors in old coordinates
    P3 = gf2.random_invertible(deg3, rng) if deg3 else []
    P2i = gf2.inverse(P2)
    names2 = [f"v{t}" for t in range(deg2)]
    names3 = [f"v{deg2 + t}" for t in range(deg3)]
    b.hom("L0", "L4", [("g04", 0)] + [(n, 2) for n in names2] + [(n, 3) for n in names3])
    H04 = b.homs[("L0", "L4")]

    def embed2(old: int) -> int:  # old deg-2 coordinates -> element of hom(L0, L4)
        new = gf2.apply(P2i, old)
        return sum(1 << (1 + t) for t in gf2.bit_indices(new))

    # mu^1 on new degree-3 basis vectors: old b_k -> old a_k
    for t in range(deg3):
        old = P3[t]
        image_old = 0
        for k in gf2.bit_indices(old):
            if k < npairs:
                image_old ^= 1 << (k + 1)
        if image_old:
            b.set_raw(1, ("L0", "L4"), (1 + deg2 + t,), embed2(image_old))
    b.strict_units()
    # generator compositions
    for i, j, k in itertools.combinations(range(5), 3):
        consecutive = j == i + 1 and k == j + 1
        if cfg.skip_pattern == "transitive" or consecutive:
            b.set_mu((objs[i], objs[j], objs[k]), [f"g{i}{j}", f"g{j}{k}"], f"g{i}{k}")
        elif cfg.skip_pattern != "consecutive":
            raise ValueError(f"unknown skip pattern {cfg.skip_pattern!r}")
    # mu^4 = correlator * w + mu^1(random degree-3 element)
    rho_old = int(rng.integers(0, 1 << deg3)) if deg3 else 0
    exact_old = 0
    for k in gf2.bit_indices(rho_old):
        if k < npairs:
            exact_old ^= 1 << (k + 1)
    value_old = (1 if cfg.correlator else 0) ^ exact_old
    b.set_raw(4, objs, (0, 0, 0, 0), embed2(value_old))
    # pairing functional: phi(old w) = 1, phi(old a_k) = 0, zero off degree 2
    phi = 0
    for t in range(deg2):
        if P2[t] & 1:
            phi |= 1 << (1 + t)
    b.tags["pairing L0 L4"] = H04.format(phi)
    b.tags["generators"] = " ".join(f"g{i}{j}" for i, j in itertools.combinations(range(5), 2))
    b.tags["skip_pattern"] = cfg.skip_pattern
    return b.build()


def generator(C: AInfinityCategory, i: int, j: int) -> int:
    return C.hom(f"L{i}", f"L{j}").element([f"g{i}{j}"])


def pairing(C: AInfinityCategory, a: str = "L0", b: str = "L4") -> int:
    key = f"pairing {a} {b}"
    if key not in C.tags:
        raise PreconditionError(f"category carries no '{key}' tag")
    text = C.tags[key]
    return 0 if text == "0" else C.hom(a, b).element(t.strip() for t in text.split("+"))


def correlator(C: AInfinityCategory) -> int:
    """``<mu^4(g01, g12, g23, g34), pairing>`` in F2."""
    objs = obstruction_objects()
    v = C.apply(4, objs, [generator(C, i, i + 1) for i in range(4)])
    return gf2.dot(v, pairing(C))


def obstruction_boundary(C: AInfinityCategory) -> dict[Face, int]:
    """Boundary data of the 4-simplex: generators on edges, zero on 2- and 3-faces."""
    data: dict[Face, int] = {}
    for J in all_faces(4):
        if J == (0, 1, 2, 3, 4):
            continue
        data[J] = generator(C, J[0], J[1]) if len(J) == 2 else 0
    return data


def check_obstruction_preconditions(C: AInfinityCategory) -> None:
    objs = obstruction_objects()
    if tuple(C.objects) != objs:
        raise PreconditionError("objects must be L0..L4")
    for i, j in itertools.combinations(range(5), 2):
        H = C.hom(objs[i], objs[j])
        if f"g{i}{j}" not in H.basis:
            raise PreconditionError(f"missing generator g{i}{j}")
        g = generator(C, i, j)
        if C.mu1(objs[i], objs[j], g):
            raise PreconditionError(f"generator g{i}{j} is not closed")
    for i, j, k in itertools.combinations(range(5), 3):
        if C.mu2(objs[i], objs[j], objs[k], generator(C, i, j), generator(C, j, k)) != \
                generator(C, i, k):
            raise PreconditionError(
                f"mu^2(g{i}{j}, g{j}{k}) != g{i}{k}: the boundary faces cannot vanish")
    for i, j, k, l in itertools.combinations(range(5), 4):
        if C.apply(3, (objs[i], objs[j], objs[k], objs[l]),
                   [generator(C, i, j), generator(C, j, k), generator(C, k, l)]):
            raise PreconditionError(f"mu^3 does not vanish on (g{i}{j}, g{j}{k}, g{k}{l})")
    data = obstruction_boundary(C)
    for J in all_faces(4):
        if len(J) in (3, 4):
            objs_J = [objs[v] for v in J]
            loc = {v: k for k, v in enumerate(J)}
            sub = {tuple(loc[v] for v in K): data[K] for K in data if set(K) <= set(J)}
            if coherence_residual(C, objs_J, sub):
                raise PreconditionError(f"face {J} with zero data is not coherent")


@dataclass(frozen=True)
class ObstructionReport:
    correlator: int
    simplex_exists: bool
    solutions: int

    @property
    def consistent(self) -> bool:
        return self.simplex_exists == (self.correlator == 0)

    def __str__(self):
        return f"correlator={self.correlator} simplex_exists={str(self.simplex_exists).lower()}"


def obstruction_report(C: AInfinityCategory) -> ObstructionReport:
    check_obstruction_preconditions(C)
    coset = extend_simplex(C, obstruction_objects(), obstruction_boundary(C))
    return ObstructionReport(correlator(C), coset is not None,
                             0 if coset is None else len(coset))


def obstruction_theorem_check(C: AInfinityCategory) -> bool:
    """Whether "the 4-simplex exists iff the correlator vanishes" holds on C."""
    return obstruction_report(C).consistent
