"""Command-line entry point.

Exit codes: 0 on success, 1 on a domain error, 2 on a usage error.  Errors
print one line ``error: <reason>`` on stderr.  Floats are printed with 9
significant digits.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import ainfinity, hofer, kan, maslov, nerve, simplicial, spheres
from .config import ConfigError, load_config


def fmt(x: float) -> str:
    return "%.9g" % x


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read_sset(path) -> simplicial.SimplicialSet:
    return simplicial.loads(Path(path).read_text())


def _read_category(path) -> ainfinity.AInfinityCategory:
    return ainfinity.loads(Path(path).read_text())


# ---------------------------------------------------------------------------
# handlers; each returns a list of output lines


def cmd_simplicial_info(a, cfg):
    X = _read_sset(a.input)
    rep = X.validate()
    out = [f"counts {' '.join(map(str, X.counts()))}",
           f"euler_characteristic {X.euler_characteristic()}",
           f"valid {str(rep.ok).lower()}"]
    if not rep.ok:
        out.append(f"violation {rep.message}")
    return out


def cmd_simplicial_validate(a, cfg):
    rep = _read_sset(a.input).validate()
    if not rep.ok:
        raise simplicial.SimplicialError(rep.message)
    return ["valid true"]


def cmd_kan_check(a, cfg):
    X = _read_sset(a.input)
    if a.horns:
        return kan.horn_report_lines(X, a.max_dim, cfg.budget("kan_check"))
    return [str(kan.is_kan(X, a.max_dim, cfg.budget("kan_check")))]


def cmd_kan_complete(a, cfg):
    X = _read_sset(a.input)
    res = kan.kan_complete(X, a.max_dim, cfg.budget("kan"), cfg.budget("kan_check"))
    if a.out:
        Path(a.out).write_text(simplicial.dumps(res.complex))
    out = [f"attached {res.attached}", f"certified {str(res.certified).lower()}"]
    out += [str(g) for g in kan.homology(res.complex, range(a.max_dim))]
    return out


def cmd_kan_homology(a, cfg):
    X = _read_sset(a.input)
    top = X.top_dim if a.max_degree is None else a.max_degree
    return [str(g) for g in kan.homology(X, range(top + 1), a.ring)]


def cmd_spheres_build(a, cfg):
    out_dir = Path(a.out)
    paths = spheres.write_models(out_dir)
    b = spheres.build_s4_mod()
    lines = [f"wrote {p.name}" for p in paths]
    for name, X in (("s3_mod", b.s3), ("d4_mod", b.d4_minus), ("s4_mod", b.s4)):
        lines.append(f"{name} cells {X.n_cells()}")
        lines += spheres.homology_report(name, X)
    (out_dir / "homology.txt").write_text("\n".join(lines) + "\n")
    return lines


def cmd_ainf_check(a, cfg):
    C = _read_category(a.category)
    rep = ainfinity.check_relations(C, a.max_arity)
    if not rep.ok:
        raise ainfinity.AInfinityError(str(rep))
    return [str(rep)]


def cmd_ainf_homology(a, cfg):
    C = _read_category(a.category)
    H = ainfinity.homology_category(C)
    out = []
    for x in C.objects:
        for y in C.objects:
            if (x, y) in C.homs:
                out.append(f"H({x},{y}) dim {H.space(x, y).dim}")
    return out


def _nerve_lines(N: nerve.NerveComplex, labels: bool) -> list[str]:
    X = N.complex
    out = [f"counts {' '.join(map(str, X.counts()))}"]
    if labels:
        out += [f"{c.dim} {c.name} {X.labels.get(c, '')}" for c in X.all_cells()]
    return out


def cmd_nerve_build(a, cfg):
    C = _read_category(a.category)
    N = nerve.nerve(C, a.max_dim, cfg.budget("nerve"))
    if a.out:
        Path(a.out).write_text(simplicial.dumps(N.complex))
    return _nerve_lines(N, a.labels)


def cmd_nerve_kan_sub(a, cfg):
    C = _read_category(a.input)
    N = nerve.nerve(C, a.max_dim, cfg.budget("nerve"))
    K = nerve.maximal_kan_subcomplex(N)
    return _nerve_lines(K, a.labels)


def cmd_nerve_obstruct(a, cfg):
    rep = nerve.obstruction_report(_read_category(a.category))
    return [str(rep)]


def cmd_maslov_loop(a, cfg):
    l = maslov.load_angles(a.angles, closed=True, sign=a.sign)
    return [str(maslov.maslov_of_loop(l))]


def cmd_maslov_index(a, cfg):
    return [str(maslov.fredholm_index(a.r, a.chi, a.maslov))]


def cmd_maslov_dim(a, cfg):
    return [str(maslov.expected_dimension(a.d, a.maslov, a.degs))]


def cmd_hofer_lplus(a, cfg):
    p = hofer.load_path(a.path)
    return [fmt(hofer.l_plus(p, cfg.tol("lplus_scale")))]


def cmd_hofer_area(a, cfg):
    p = hofer.load_path(a.path)
    spec = hofer.CouplingFormSpec(p, a.delta, a.grid, cfg.tol("holonomy"))
    res = hofer.area_functional(spec, return_details=True)
    return [fmt(res.area), f"residual {fmt(res.max_residual)}"]


def cmd_hofer_minimax(a, cfg):
    f = hofer.load_family(a.family)
    m, v = hofer.family_max(f)
    out = [f"family_max {fmt(m)} vertex {v}"]
    steps = cfg.budget("descent") if a.descend is None else a.descend
    if steps > 0:
        r = hofer.descend_family(f, steps)
        out.append(str(r))
        out.append("note: descent is a heuristic stand-in for the analytic lower bound "
                   "and certifies nothing")
    return out


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kanfuk", description="simplicial, A-infinity and Hofer computations")
    p.add_argument("--config", help="key = value run configuration")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def group(name):
        g = sub.add_parser(name)
        return g.add_subparsers(dest="action", parser_class=_Parser)

    s = group("simplicial")
    c = s.add_parser("info"); c.add_argument("--in", dest="input", required=True)
    c.set_defaults(func=cmd_simplicial_info)
    c = s.add_parser("validate"); c.add_argument("--in", dest="input", required=True)
    c.set_defaults(func=cmd_simplicial_validate)

    k = group("kan")
    c = k.add_parser("check")
    c.add_argument("--in", dest="input", required=True)
    c.add_argument("--max-dim", type=int, default=2)
    c.add_argument("--horns", action="store_true", help="one line per horn problem")
    c.set_defaults(func=cmd_kan_check)
    c = k.add_parser("complete")
    c.add_argument("--in", dest="input", required=True)
    c.add_argument("--max-dim", type=int, default=2)
    c.add_argument("--out")
    c.set_defaults(func=cmd_kan_complete)
    c = k.add_parser("homology")
    c.add_argument("--in", dest="input", required=True)
    c.add_argument("--ring", choices=["Z", "F2"], default="Z")
    c.add_argument("--max-degree", type=int)
    c.set_defaults(func=cmd_kan_homology)

    sp = group("spheres")
    c = sp.add_parser("build"); c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_spheres_build)

    ai = group("ainf")
    c = ai.add_parser("check")
    c.add_argument("--category", required=True)
    c.add_argument("--max-arity", type=int)
    c.set_defaults(func=cmd_ainf_check)
    c = ai.add_parser("homology"); c.add_argument("--category", required=True)
    c.set_defaults(func=cmd_ainf_homology)

    nv = group("nerve")
    c = nv.add_parser("build")
    c.add_argument("--category", required=True)
    c.add_argument("--max-dim", type=int, default=2)
    c.add_argument("--out")
    c.add_argument("--labels", action="store_true")
    c.set_defaults(func=cmd_nerve_build)
    c = nv.add_parser("kan-sub")
    c.add_argument("--in", dest="input", required=True)
    c.add_argument("--max-dim", type=int, default=2)
    c.add_argument("--labels", action="store_true")
    c.set_defaults(func=cmd_nerve_kan_sub)
    c = nv.add_parser("obstruct"); c.add_argument("--category", required=True)
    c.set_defaults(func=cmd_nerve_obstruct)

    ms = group("maslov")
    c = ms.add_parser("loop")
    c.add_argument("--angles", required=True)
    c.add_argument("--sign", type=int, choices=[-1, 1], default=-1)
    c.set_defaults(func=cmd_maslov_loop)
    c = ms.add_parser("index")
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--chi", type=int, required=True)
    c.add_argument("--maslov", type=int, required=True)
    c.set_defaults(func=cmd_maslov_index)
    c = ms.add_parser("dim")
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--maslov", type=int, required=True)
    c.add_argument("--degs", type=int, nargs="+", required=True)
    c.set_defaults(func=cmd_maslov_dim)

    hf = group("hofer")
    c = hf.add_parser("lplus"); c.add_argument("--path", required=True)
    c.set_defaults(func=cmd_hofer_lplus)
    c = hf.add_parser("area")
    c.add_argument("--path", required=True)
    c.add_argument("--delta", type=float, default=0.05)
    c.add_argument("--grid", type=int, default=512)
    c.set_defaults(func=cmd_hofer_area)
    c = hf.add_parser("minimax")
    c.add_argument("--family", required=True)
    c.add_argument("--descend", type=int)
    c.set_defaults(func=cmd_hofer_minimax)
    return p


DOMAIN_ERRORS = (ValueError, RuntimeError, KeyError, OSError)


def _one_line(e: BaseException) -> str:
    msg = str(e) or type(e).__name__
    return " ".join(msg.split())


def dispatch(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
        if getattr(a, "func", None) is None:
            raise UsageError("missing or unknown subcommand")
    except UsageError as e:
        stdout.write(parser.format_usage())
        stderr.write(f"error: {_one_line(e)}\n")
        return 2
    try:
        cfg = load_config(a.config)
        lines = a.func(a, cfg)
    except (ConfigError, *DOMAIN_ERRORS) as e:
        stderr.write(f"error: {_one_line(e)}\n")
        return 1
    for ln in lines:
        stdout.write(ln + "\n")
    return 0


def main(argv: list[str] | None = None) -> int:
    return dispatch(argv)


if __name__ == "__main__":
    sys.exit(main())
