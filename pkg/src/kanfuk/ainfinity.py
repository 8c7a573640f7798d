"""Finite A-infinity categories over F2.

Hom spaces are finite dimensional with a chosen basis; an element is a bitmask
over that basis.  Composition is written in diagrammatic order: for a chain
``(o0, ..., od)`` the inputs are ``x1 in hom(o0, o1), ..., xd in hom(o_{d-1}, od)``
and ``mu^d(x1, ..., xd) in hom(o0, od)``.  Degrees are homological, so ``mu^d``
has degree ``d - 2``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from . import gf2

DEFAULT_ARITY_BOUND = 5

Chain = tuple[str, ...]
Table = dict[tuple[int, ...], int]


class AInfinityError(ValueError):
    pass


@dataclass(frozen=True)
class HomSpace:
    basis: tuple[str, ...]
    degrees: tuple[int, ...]

    def __len__(self):
        return len(self.basis)

    def index(self, name: str) -> int:
        return self.basis.index(name)

    def element(self, names: Iterable[str]) -> int:
        v = 0
        for n in names:
            v ^= 1 << self.index(n)
        return v

    def names(self, v: int) -> list[str]:
        return [self.basis[i] for i in gf2.bit_indices(v)]

    def format(self, v: int) -> str:
        return " + ".join(self.names(v)) or "0"

    def degree_mask(self, deg: int) -> int:
        return sum(1 << i for i, d in enumerate(self.degrees) if d == deg)

    def homogeneous_degree(self, v: int) -> int | None:
        """The common degree of the basis elements in ``v`` (None if mixed or zero)."""
        ds = {self.degrees[i] for i in gf2.bit_indices(v)}
        return ds.pop() if len(ds) == 1 else None


EMPTY = HomSpace((), ())


@dataclass(frozen=True, eq=False)
class AInfinityCategory:
    objects: tuple[str, ...]
    homs: dict[tuple[str, str], HomSpace]
    mu: dict[int, dict[Chain, Table]]
    units: dict[str, int] = field(default_factory=dict)
    arity_bound: int = DEFAULT_ARITY_BOUND
    tags: dict[str, str] = field(default_factory=dict)

    def hom(self, a: str, b: str) -> HomSpace:
        return self.homs.get((a, b), EMPTY)

    def table(self, d: int, chain: Chain) -> Table:
        return self.mu.get(d, {}).get(tuple(chain), {})

    def apply(self, d: int, chain: Chain, xs: Sequence[int]) -> int:
        """Multilinear evaluation of ``mu^d`` on elements."""
        if d > self.arity_bound or d < 1:
            return 0
        table = self.table(d, chain)
        if not table:
            return 0
        out = 0
        for idx in itertools.product(*(gf2.bit_indices(x) for x in xs)):
            out ^= table.get(idx, 0)
        return out

    def mu1(self, a: str, b: str, x: int) -> int:
        return self.apply(1, (a, b), (x,))

    def mu1_columns(self, a: str, b: str) -> list[int]:
        t = self.table(1, (a, b))
        return [t.get((i,), 0) for i in range(len(self.hom(a, b)))]

    def mu2(self, a: str, b: str, c: str, x: int, y: int) -> int:
        return self.apply(2, (a, b, c), (x, y))

    def unit(self, a: str) -> int:
        if a not in self.units:
            raise AInfinityError(f"no unit declared on {a}")
        return self.units[a]

    def chains(self, length: int) -> Iterator[Chain]:
        """Object chains of the given number of arrows with all homs nonzero."""
        def rec(chain):
            if len(chain) == length + 1:
                yield tuple(chain)
                return
            for o in self.objects:
                if len(self.hom(chain[-1], o)):
                    yield from rec(chain + [o])
        for o in self.objects:
            yield from rec([o])

    def __eq__(self, other):
        if not isinstance(other, AInfinityCategory):
            return NotImplemented
        return (self.objects == other.objects and _clean_homs(self.homs) == _clean_homs(other.homs)
                and _clean_mu(self.mu) == _clean_mu(other.mu) and self.units == other.units
                and self.arity_bound == other.arity_bound and self.tags == other.tags)

    __hash__ = None

    def with_entry(self, d: int, chain: Chain, idx: tuple[int, ...], value: int
                   ) -> "AInfinityCategory":
        mu = {k: {c: dict(t) for c, t in v.items()} for k, v in self.mu.items()}
        mu.setdefault(d, {}).setdefault(tuple(chain), {})[tuple(idx)] = value
        return AInfinityCategory(self.objects, dict(self.homs), mu, dict(self.units),
                                 self.arity_bound, dict(self.tags))


def _clean_homs(h):
    return {k: v for k, v in h.items() if len(v)}


def _clean_mu(mu):
    out = {}
    for d, chains in mu.items():
        for c, t in chains.items():
            for idx, v in t.items():
                if v:
                    out[(d, c, idx)] = v
    return out


# ---------------------------------------------------------------------------
# building


class CategoryBuilder:
    """Name-based construction of a category."""

    def __init__(self, objects: Sequence[str], arity_bound: int = DEFAULT_ARITY_BOUND):
        self.objects = tuple(objects)
        self.homs: dict[tuple[str, str], HomSpace] = {}
        self.mu: dict[int, dict[Chain, Table]] = {}
        self.units: dict[str, int] = {}
        self.tags: dict[str, str] = {}
        self.arity_bound = arity_bound

    def hom(self, a: str, b: str, basis: Mapping[str, int] | Sequence[tuple[str, int]]):
        items = list(basis.items()) if isinstance(basis, Mapping) else list(basis)
        self.homs[(a, b)] = HomSpace(tuple(n for n, _ in items), tuple(d for _, d in items))
        return self

    def _locate(self, name: str, a: str, b: str) -> int:
        return self.homs[(a, b)].index(name)

    def set_mu(self, chain: Sequence[str], inputs: Sequence[str], output: Iterable[str] | str):
        chain = tuple(chain)
        d = len(chain) - 1
        if len(inputs) != d:
            raise AInfinityError("arity does not match the chain")
        idx = tuple(self._locate(n, chain[i], chain[i + 1]) for i, n in enumerate(inputs))
        if isinstance(output, str):
            output = [output] if output else []
        val = self.homs[(chain[0], chain[-1])].element(output)
        self.mu.setdefault(d, {}).setdefault(chain, {})[idx] = val
        return self

    def set_raw(self, d: int, chain: Chain, idx: tuple[int, ...], value: int):
        self.mu.setdefault(d, {}).setdefault(tuple(chain), {})[tuple(idx)] = value
        return self

    def unit(self, a: str, name: str):
        self.units[a] = self.homs[(a, a)].element([name])
        return self

    def strict_units(self):
        """Make every declared unit a strict two-sided identity for mu^2."""
        for a, e in self.units.items():
            ei = gf2.bit_indices(e)
            if len(ei) != 1:
                raise AInfinityError("strict units must be basis elements")
            for (x, y), H in self.homs.items():
                for i in range(len(H)):
                    if x == a:
                        self.set_raw(2, (a, a, y), (ei[0], i), 1 << i)
                    if y == a:
                        self.set_raw(2, (x, a, a), (i, ei[0]), 1 << i)
        return self

    def build(self) -> AInfinityCategory:
        return AInfinityCategory(self.objects, dict(self.homs),
                                 {d: {c: dict(t) for c, t in v.items()} for d, v in self.mu.items()},
                                 dict(self.units), self.arity_bound, dict(self.tags))


# ---------------------------------------------------------------------------
# relations


@dataclass(frozen=True)
class RelationReport:
    ok: bool
    arity: int | None = None
    chain: Chain | None = None
    inputs: tuple[str, ...] | None = None
    value: str | None = None
    kind: str = "relation"
    checked: int = 0

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return f"ok checked={self.checked}"
        return (f"violation kind={self.kind} arity={self.arity} chain=({','.join(self.chain)}) "
                f"inputs=({','.join(self.inputs)}) value={self.value}")


def relation_value(C: AInfinityCategory, chain: Chain, xs: Sequence[int]) -> int:
    """``sum mu^{r+1+t}(x_1..x_r, mu^s(x_{r+1}..x_{r+s}), ..)`` over F2."""
    n = len(xs)
    total = 0
    for s in range(1, n + 1):
        if s > C.arity_bound or n - s + 1 > C.arity_bound:
            continue
        for r in range(0, n - s + 1):
            inner = C.apply(s, chain[r:r + s + 1], xs[r:r + s])
            if not inner:
                continue
            outer_chain = chain[:r + 1] + chain[r + s:]
            outer_xs = tuple(xs[:r]) + (inner,) + tuple(xs[r + s:])
            total ^= C.apply(n - s + 1, outer_chain, outer_xs)
    return total


def _check_degrees(C: AInfinityCategory, max_arity: int) -> RelationReport | None:
    for d in sorted(C.mu):
        if d > max_arity:
            continue
        for chain in sorted(C.mu[d]):
            target = C.hom(chain[0], chain[-1])
            srcs = [C.hom(chain[i], chain[i + 1]) for i in range(d)]
            for idx in sorted(C.mu[d][chain]):
                v = C.mu[d][chain][idx]
                if not v:
                    continue
                want = sum(srcs[i].degrees[j] for i, j in enumerate(idx)) + d - 2
                if v & ~target.degree_mask(want):
                    names = tuple(srcs[i].basis[j] for i, j in enumerate(idx))
                    return RelationReport(False, d, chain, names, target.format(v), "degree")
    return None


def _check_homological_units(C: AInfinityCategory) -> RelationReport | None:
    """Declared units act as two-sided identities on every closed element up to
    exact terms."""
    for a in sorted(C.units):
        e = C.units[a]
        for b in C.objects:
            for left in (True, False):
                src, dst = (a, b) if left else (b, a)
                H = C.hom(src, dst)
                if not len(H):
                    continue
                cols = C.mu1_columns(src, dst)
                bounds = [c for c in cols if c]
                for z in gf2.kernel(cols):
                    prod = C.mu2(a, a, b, e, z) if left else C.mu2(b, a, a, z, e)
                    if not gf2.in_span(bounds, prod ^ z):
                        chain = (a, a, b) if left else (b, a, a)
                        ins = (C.hom(a, a).format(e), H.format(z)) if left else (
                            H.format(z), C.hom(a, a).format(e))
                        return RelationReport(False, 2, chain, ins, H.format(prod), "unit")
    return None


def check_relations(C: AInfinityCategory, max_arity: int | None = None,
                    degrees: bool = True) -> RelationReport:
    """Check the A-infinity relations on every basis tuple of arity <= max_arity.

    Also checks that every table entry has the degree ``sum + d - 2`` (unless
    ``degrees`` is off) and that declared units are closed.
    """
    max_arity = C.arity_bound if max_arity is None else max_arity
    if max_arity > C.arity_bound:
        raise AInfinityError("max_arity exceeds the arity bound")
    if degrees:
        bad = _check_degrees(C, max_arity)
        if bad is not None:
            return bad
    for a, e in sorted(C.units.items()):
        if C.mu1(a, a, e):
            return RelationReport(False, 1, (a, a), tuple(C.hom(a, a).names(e)),
                                  C.hom(a, a).format(C.mu1(a, a, e)), "unit")
    bad = _check_homological_units(C)
    if bad is not None:
        return bad
    checked = 0
    for n in range(1, max_arity + 1):
        for chain in C.chains(n):
            spaces = [C.hom(chain[i], chain[i + 1]) for i in range(n)]
            for idx in itertools.product(*(range(len(s)) for s in spaces)):
                xs = tuple(1 << i for i in idx)
                checked += 1
                v = relation_value(C, chain, xs)
                if v:
                    names = tuple(spaces[i].basis[j] for i, j in enumerate(idx))
                    return RelationReport(False, n, chain, names,
                                          C.hom(chain[0], chain[-1]).format(v), "relation",
                                          checked)
    return RelationReport(True, checked=checked)


# ---------------------------------------------------------------------------
# homology category


@dataclass(frozen=True, eq=False)
class HomologySpace:
    """``H = ker mu^1 / im mu^1`` with representatives and a retraction."""

    source: str
    target: str
    representatives: tuple[int, ...]
    boundaries: tuple[int, ...]
    _ech: gf2.Echelon = field(repr=False, compare=False)

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def section(self, h: int) -> int:
        return gf2.apply(self.representatives, h)

    def retract(self, z: int) -> int:
        residual, combo = self._ech.reduce(z)
        if residual:
            raise AInfinityError("element is not closed")
        return combo

    def is_exact(self, z: int) -> bool:
        return gf2.in_span(self.boundaries, z)


def _homology_space(C: AInfinityCategory, a: str, b: str, order: Sequence[int] | None = None
                    ) -> HomologySpace:
    cols = C.mu1_columns(a, b)
    n = len(cols)
    cycles = gf2.kernel(cols)
    bounds = gf2.span_basis(cols)
    ech = gf2.Echelon()
    for v in bounds:
        ech.add(v, 0)
    if order is not None:
        cycles = [cycles[i] for i in order if i < len(cycles)] + cycles[len(order):]
    reps = []
    for z in cycles:
        residual, _ = ech.reduce(z)
        if residual and ech.add(z, 1 << len(reps)):
            reps.append(z)
    del n
    return HomologySpace(a, b, tuple(reps), tuple(bounds), ech)


@dataclass(frozen=True, eq=False)
class HomologyCategory:
    category: AInfinityCategory
    spaces: dict[tuple[str, str], HomologySpace]

    @property
    def objects(self):
        return self.category.objects

    def space(self, a: str, b: str) -> HomologySpace:
        if (a, b) not in self.spaces:
            self.spaces[(a, b)] = _homology_space(self.category, a, b)
        return self.spaces[(a, b)]

    def compose(self, a: str, b: str, c: str, u: int, v: int) -> int:
        """``[mu^2(x, y)]`` for classes u in H(a,b), v in H(b,c)."""
        x = self.space(a, b).section(u)
        y = self.space(b, c).section(v)
        return self.space(a, c).retract(self.category.mu2(a, b, c, x, y))

    def class_of(self, a: str, b: str, z: int) -> int:
        return self.space(a, b).retract(z)

    def unit_class(self, a: str) -> int:
        return self.class_of(a, a, self.category.unit(a))

    def verify_well_defined(self) -> bool:
        """Composition is independent of representatives on all basis cosets."""
        C = self.category
        for (a, b) in sorted(C.homs):
            for c in C.objects:
                if not len(C.hom(b, c)):
                    continue
                Hab, Hbc = self.space(a, b), self.space(b, c)
                Hac = self.space(a, c)
                for x in list(Hab.representatives) + [0]:
                    for bd in Hbc.boundaries:
                        if not Hac.is_exact(C.mu2(a, b, c, x, bd)):
                            return False
                for y in list(Hbc.representatives) + [0]:
                    for bd in Hab.boundaries:
                        if not Hac.is_exact(C.mu2(a, b, c, bd, y)):
                            return False
        return True

    def is_associative(self) -> bool:
        C = self.category
        for a, b, c, d in itertools.product(C.objects, repeat=4):
            for i in range(self.space(a, b).dim):
                for j in range(self.space(b, c).dim):
                    for k in range(self.space(c, d).dim):
                        u, v, w = 1 << i, 1 << j, 1 << k
                        lhs = self.compose(a, c, d, self.compose(a, b, c, u, v), w)
                        rhs = self.compose(a, b, d, u, self.compose(b, c, d, v, w))
                        if lhs != rhs:
                            return False
        return True


def homology_category(C: AInfinityCategory, order: Mapping | None = None) -> HomologyCategory:
    spaces = {}
    for a in C.objects:
        for b in C.objects:
            o = order.get((a, b)) if order else None
            spaces[(a, b)] = _homology_space(C, a, b, o)
    return HomologyCategory(C, spaces)


def is_c_isomorphism(C: AInfinityCategory | HomologyCategory, a: str, b: str, f: int) -> bool:
    """Whether ``[f]`` in H(a, b) has a two-sided inverse in the homology category."""
    H = C if isinstance(C, HomologyCategory) else homology_category(C)
    cat = H.category
    if cat.mu1(a, b, f):
        raise AInfinityError("f is not closed")
    Haa, Hbb, Hba = H.space(a, a).dim, H.space(b, b).dim, H.space(b, a).dim
    one_a = H.unit_class(a) if Haa else 0
    one_b = H.unit_class(b) if Hbb else 0
    u = H.class_of(a, b, f)
    cols = []
    for j in range(Hba):
        g = 1 << j
        cols.append(H.compose(a, b, a, u, g) | (H.compose(b, a, b, g, u) << Haa))
    return gf2.solve(cols, one_a | (one_b << Haa)) is not None


def opposite(C: AInfinityCategory) -> AInfinityCategory:
    homs = {(b, a): H for (a, b), H in C.homs.items()}
    mu: dict[int, dict[Chain, Table]] = {}
    for d, chains in C.mu.items():
        for chain, t in chains.items():
            mu.setdefault(d, {})[tuple(reversed(chain))] = {
                tuple(reversed(idx)): v for idx, v in t.items()}
    return AInfinityCategory(C.objects, homs, mu, dict(C.units), C.arity_bound, dict(C.tags))


def full_subcategory(C: AInfinityCategory, objects: Iterable[str]) -> AInfinityCategory:
    keep = [o for o in C.objects if o in set(objects)]
    if not keep:
        raise AInfinityError("empty object subset")
    ks = set(keep)
    homs = {k: v for k, v in C.homs.items() if k[0] in ks and k[1] in ks}
    mu = {d: {c: dict(t) for c, t in chains.items() if set(c) <= ks}
          for d, chains in C.mu.items()}
    units = {a: e for a, e in C.units.items() if a in ks}
    tags = {k: v for k, v in C.tags.items()
            if not k.startswith("pairing ") or set(k.split()[1:3]) <= ks}
    return AInfinityCategory(tuple(keep), homs, mu, units, C.arity_bound, tags)


# ---------------------------------------------------------------------------
# solving for mu^3


def mu3_cocycle_space(C: AInfinityCategory, normalized: bool = True) -> tuple[list, gf2.Coset | None]:
    """Solutions ``mu^3`` of the arity-4 relation with ``mu^4 = 0`` fixed.

    Unknowns are the degree-compatible entries of ``mu^3`` on basis triples
    (entries involving a declared unit are set to zero when ``normalized``).
    Returns the list of unknown slots and the affine solution set.
    """
    unit_bits = {(a, a): C.units[a] for a in C.units}
    slots = []  # (chain, idx, output bit)
    for chain in C.chains(3):
        spaces = [C.hom(chain[i], chain[i + 1]) for i in range(3)]
        target = C.hom(chain[0], chain[3])
        for idx in itertools.product(*(range(len(s)) for s in spaces)):
            if normalized and any(
                    (1 << j) & unit_bits.get((chain[i], chain[i + 1]), 0) for i, j in enumerate(idx)):
                continue
            want = sum(spaces[i].degrees[j] for i, j in enumerate(idx)) + 1
            for o in range(len(target)):
                if target.degrees[o] == want:
                    slots.append((chain, idx, o))
    lower = {k: v for k, v in C.mu.items() if k not in (3, 4)}

    def relation_vector(mu3: Mapping) -> int:
        mu = dict(lower)
        mu[3] = mu3
        D = AInfinityCategory(C.objects, C.homs, mu, C.units, 4, C.tags)
        vec = 0
        pos = 0
        for n in (3, 4):
            for chain in D.chains(n):
                spaces = [D.hom(chain[i], chain[i + 1]) for i in range(n)]
                tlen = len(D.hom(chain[0], chain[-1]))
                for idx in itertools.product(*(range(len(s)) for s in spaces)):
                    v = relation_value(D, chain, tuple(1 << i for i in idx))
                    vec |= v << pos
                    pos += tlen
        return vec

    zero = relation_vector({})
    cols = []
    for chain, idx, o in slots:
        cols.append(relation_vector({chain: {idx: 1 << o}}) ^ zero)
    return slots, gf2.solve_affine(cols, zero)


def with_mu3(C: AInfinityCategory, slots, solution: int, arity_bound: int | None = None
             ) -> AInfinityCategory:
    mu = {k: {c: dict(t) for c, t in v.items()} for k, v in C.mu.items()}
    mu[3] = {}
    for k in gf2.bit_indices(solution):
        chain, idx, o = slots[k]
        t = mu[3].setdefault(chain, {})
        t[idx] = t.get(idx, 0) ^ (1 << o)
    return AInfinityCategory(C.objects, C.homs, mu, C.units,
                             C.arity_bound if arity_bound is None else arity_bound, C.tags)


# ---------------------------------------------------------------------------
# text format

_MU_RE = re.compile(r"^mu (\d+) \(([^)]*)\) : \(([^)]*)\) -> (.*)$")


def dumps(C: AInfinityCategory) -> str:
    lines = ["ainf", f"arity_bound {C.arity_bound}", "objects " + " ".join(C.objects)]
    for a in C.objects:
        for b in C.objects:
            H = C.hom(a, b)
            if len(H):
                lines.append(f"hom {a} {b} : " + " ".join(
                    f"{n}:{d}" for n, d in zip(H.basis, H.degrees)))
    for a in C.objects:
        if a in C.units:
            lines.append(f"unit {a} = {C.hom(a, a).format(C.units[a])}")
    for k in sorted(C.tags):
        lines.append(f"tag {k} = {C.tags[k]}")
    for d in sorted(C.mu):
        for chain in sorted(C.mu[d]):
            srcs = [C.hom(chain[i], chain[i + 1]) for i in range(d)]
            tgt = C.hom(chain[0], chain[-1])
            for idx in sorted(C.mu[d][chain]):
                v = C.mu[d][chain][idx]
                if v:
                    ins = ",".join(srcs[i].basis[j] for i, j in enumerate(idx))
                    lines.append(f"mu {d} ({','.join(chain)}) : ({ins}) -> {tgt.format(v)}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> AInfinityCategory:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or lines[0] != "ainf":
        raise AInfinityError("missing 'ainf' header")
    arity = DEFAULT_ARITY_BOUND
    b: CategoryBuilder | None = None
    pending_units = []
    for ln in lines[1:]:
        if ln.startswith("arity_bound "):
            arity = int(ln.split()[1])
        elif ln.startswith("objects "):
            b = CategoryBuilder(ln.split()[1:], arity)
        elif b is None:
            raise AInfinityError("objects line must precede data")
        elif ln.startswith("hom "):
            head, _, basis = ln.partition(" : ")
            _, x, y = head.split()
            items = []
            for tok in basis.split():
                n, _, d = tok.rpartition(":")
                items.append((n, int(d)))
            b.hom(x, y, items)
        elif ln.startswith("unit "):
            head, _, val = ln.partition(" = ")
            pending_units.append((head.split()[1], val))
        elif ln.startswith("tag "):
            head, _, val = ln.partition(" = ")
            b.tags[head[4:]] = val
        elif ln.startswith("mu "):
            m = _MU_RE.match(ln)
            if not m:
                raise AInfinityError(f"cannot parse line: {ln!r}")
            d, chain, ins, out = m.groups()
            chain = tuple(chain.split(","))
            if int(d) != len(chain) - 1:
                raise AInfinityError(f"arity mismatch in line: {ln!r}")
            ins = tuple(ins.split(",")) if ins else ()
            outs = [] if out.strip() == "0" else [t.strip() for t in out.split("+")]
            b.set_mu(chain, ins, outs)
        else:
            raise AInfinityError(f"cannot parse line: {ln!r}")
    if b is None:
        raise AInfinityError("no objects line")
    b.arity_bound = arity
    for a, val in pending_units:
        b.units[a] = b.homs[(a, a)].element(
            [] if val == "0" else [t.strip() for t in val.split("+")])
    return b.build()


def element(C: AInfinityCategory, a: str, b: str, text: str) -> int:
    if text.strip() == "0":
        return 0
    return C.hom(a, b).element(t.strip() for t in text.split("+"))


# ---------------------------------------------------------------------------
# library fixtures


def field_f2() -> AInfinityCategory:
    """One object, hom = F2 in degree 0, mu^2 = multiplication."""
    b = CategoryBuilder(["pt"])
    b.hom("pt", "pt", [("e", 0)])
    b.unit("pt", "e").strict_units()
    return b.build()


def dg_triangle() -> AInfinityCategory:
    """A dg category on three objects with mu^{>=3} = 0.

    hom(X0, X1) and hom(X1, X2) are small complexes P and Q, hom(X0, X2) is
    P (x) Q with the Leibniz differential and mu^2 the tensor map.
    """
    P = [("p", 0), ("q", 1), ("r", 0)]
    dP = {"q": ["r"]}
    Q = [("s", 0), ("u", 1), ("du", 0)]
    dQ = {"u": ["du"]}
    b = CategoryBuilder(["X0", "X1", "X2"])
    for o in ("X0", "X1", "X2"):
        b.hom(o, o, [(f"e{o[1]}", 0)])
        b.unit(o, f"e{o[1]}")
    b.hom("X0", "X1", P)
    b.hom("X1", "X2", Q)
    b.hom("X0", "X2", [(f"{a}.{c}", da + dc) for a, da in P for c, dc in Q])
    b.strict_units()
    for a, _ in P:
        if a in dP:
            b.set_mu(("X0", "X1"), [a], dP[a])
    for c, _ in Q:
        if c in dQ:
            b.set_mu(("X1", "X2"), [c], dQ[c])
    for a, _ in P:
        for c, _ in Q:
            b.set_mu(("X0", "X1", "X2"), [a, c], f"{a}.{c}")
            out: dict[str, int] = {}
            for t in [f"{x}.{c}" for x in dP.get(a, [])] + [f"{a}.{y}" for y in dQ.get(c, [])]:
                out[t] = out.get(t, 0) ^ 1
            terms = [t for t, v in out.items() if v]
            if terms:
                b.set_mu(("X0", "X2"), [f"{a}.{c}"], terms)
    return b.build()


def exterior_algebra() -> AInfinityCategory:
    """Exterior algebra on x (degree 0) and y (degree 1) with a solved nonzero mu^3."""
    b = CategoryBuilder(["A"])
    b.hom("A", "A", [("1", 0), ("x", 0), ("y", 1), ("xy", 1)])
    b.unit("A", "1").strict_units()
    b.set_mu(("A", "A", "A"), ["x", "y"], "xy")
    b.set_mu(("A", "A", "A"), ["y", "x"], "xy")
    C = b.build()
    slots, coset = mu3_cocycle_space(C)
    if coset is None or not coset.basis:
        raise AInfinityError("no nonzero mu^3 solves the arity-4 relation")
    # the first nonzero solution in enumeration order that also satisfies arity 5
    for k in range(1, len(coset)):
        sol = coset.particular
        for i in gf2.bit_indices(k):
            sol ^= coset.basis[i]
        D = with_mu3(C, slots, sol)
        if check_relations(D).ok:
            return D
    return with_mu3(C, slots, coset.particular ^ coset.basis[0], arity_bound=4)


def library() -> dict[str, AInfinityCategory]:
    return {"field": field_f2(), "dg": dg_triangle(), "exterior": exterior_algebra()}
