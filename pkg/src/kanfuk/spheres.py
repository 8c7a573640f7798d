"""Small simplicial models of S^3, D^4 and S^4.

``S^3`` is Delta^3 with every proper face collapsed to a point, ``D^4`` is its
cone and ``S^4`` is two such cones glued along ``S^3``.  In the glued model the
"minus" cone carries the distinguished 4-cell.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .kan import homology
from .simplicial import (Cell, SimplicialMap, SimplicialSet, Simplex, cone, dumps, glue,
                         pushout, rename, standard_simplex, total_degeneracy)

POINT = "pt"
TOP3 = "s3"


def build_s3_mod() -> SimplicialSet:
    D = standard_simplex(3)
    base = Cell(0, "0")
    ids = [(c, total_degeneracy(base, c.dim)) for c in D.all_cells() if c.dim < 3]
    Q, _ = glue(D, ids)
    return rename(Q, {base: POINT, Cell(3, "0123"): TOP3})


def _cone_on_s3(apex: str) -> tuple[SimplicialSet, SimplicialMap]:
    return cone(build_s3_mod(), apex=apex)


def build_d4_mod(apex: str = "apex") -> SimplicialSet:
    return _cone_on_s3(apex)[0]


@dataclass(frozen=True, eq=False)
class SphereModelBundle:
    s3: SimplicialSet
    d4_minus: SimplicialSet
    d4_plus: SimplicialSet
    s4: SimplicialSet
    boundary_minus: SimplicialMap  # s3 -> d4_minus
    boundary_plus: SimplicialMap  # s3 -> d4_plus
    half_minus: SimplicialMap  # d4_minus -> s4
    half_plus: SimplicialMap  # d4_plus -> s4
    sigma4: Cell
    sigma0_0: Cell
    sigma0_1: Cell
    sigma1: Cell

    @property
    def inclusions(self) -> tuple[SimplicialMap, ...]:
        return (self.boundary_minus, self.boundary_plus, self.half_minus, self.half_plus)


def build_s4_mod() -> SphereModelBundle:
    s3 = build_s3_mod()
    dm, im = cone(s3, apex="apex")
    dp, ip = cone(s3, apex="apex")
    S4, jm, jp = pushout(im, ip, ("minus.", "plus."))
    # the shared S^3 keeps the minus-side names; drop the prefix there
    names = {Cell(0, "minus." + POINT): POINT, Cell(3, "minus." + TOP3): TOP3}
    S4r = rename(S4, names)
    remap = {c: Simplex(Cell(c.dim, names.get(c, c.name))) for c in S4.all_cells()}
    ren = SimplicialMap(S4, S4r, remap)
    jm, jp = jm.compose(ren), jp.compose(ren)
    sigma4 = jm(Cell(4, f"apex*{TOP3}")).cell
    sigma0_0 = jm(Cell(0, "apex")).cell
    sigma0_1 = jm(Cell(0, POINT)).cell
    sigma1 = jm(Cell(1, f"apex*{POINT}")).cell
    return SphereModelBundle(s3, dm, dp, S4r, im, ip, jm, jp,
                             sigma4, sigma0_0, sigma0_1, sigma1)


def distinguished_cells(bundle: SphereModelBundle) -> tuple[Cell, Cell, Cell, Cell]:
    return bundle.sigma4, bundle.sigma0_0, bundle.sigma0_1, bundle.sigma1


def homology_report(name: str, X: SimplicialSet, top: int = 4) -> list[str]:
    return [f"{name} {g}" for g in homology(X, range(top + 1))]


def write_models(out: Path) -> list[Path]:
    """Write the three models in the text format; returns the written paths."""
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    b = build_s4_mod()
    paths = []
    for fname, X in (("s3_mod.sset", b.s3), ("d4_mod.sset", b.d4_minus), ("s4_mod.sset", b.s4)):
        p = out / fname
        p.write_text(dumps(X))
        paths.append(p)
    return paths
