"""Command-line front end: ``pseudofree <subcommand> ...``.

Exit status is 0 when every checked property holds, 1 when one fails and 2
for usage errors, unreadable or malformed input, and exceeded caps.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Any

from . import census as census_mod
from .complexes import (
    ComplexError,
    SimplicialComplex,
    barycentric_subdivision,
    euler_characteristic,
    format_complex,
    is_flag,
    link_and_star,
    pi1_presentation,
    read_complex,
)
from .coxeter import CapExceeded as CoxeterCap
from .coxeter import parse_system
from .davis import CapExceeded as DavisCap
from .davis import DavisComplex, davis_chain_complex, fixed_set, mask_to_signs, signs_to_mask, vertex_link
from .example32 import poincare_sphere, run_pipeline
from .gamma import CapExceeded as GammaCap
from .gamma import ThetaMap, comparison_map_check, gamma_image_subgroup, gamma_member, pseudo_free_verdict
from .heisenberg import selftest
from .homology import AbelianGroup, ChainComplexError, homology, simplicial_chain_complex
from .unil import structure_set

PASS, FAIL, INFO = "pass", "fail", "info"
INCONCLUSIVE = census_mod.INCONCLUSIVE

CAP_ERRORS = (CoxeterCap, DavisCap, GammaCap, census_mod.BudgetExceeded)


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: str
    inputs: dict[str, Any] = field(default_factory=dict)
    verdicts: list[dict[str, Any]] = field(default_factory=list)
    witnesses: list[str] = field(default_factory=list)
    timing_ms: int = 0

    def verdict(self, name: str, status: str, value: Any = None, detail: str = "") -> None:
        v: dict[str, Any] = {"name": name, "status": status}
        if value is not None:
            v["value"] = value
        if detail:
            v["detail"] = detail
        self.verdicts.append(v)

    def check(self, name: str, ok: bool, value: Any = None, detail: str = "") -> None:
        self.verdict(name, PASS if ok else FAIL, value, detail)

    @property
    def failed(self) -> bool:
        return any(v["status"] == FAIL for v in self.verdicts)

    def to_json(self) -> dict:
        return {"command": self.command, "inputs": self.inputs, "verdicts": self.verdicts,
                "witnesses": self.witnesses, "timing_ms": self.timing_ms}

    def to_text(self) -> str:
        mark = {PASS: "[ok]  ", FAIL: "[FAIL]", INFO: "      ", INCONCLUSIVE: "[??]  "}
        lines = [f"{self.command}: " + ", ".join(f"{k}={v}" for k, v in self.inputs.items())]
        for v in self.verdicts:
            line = f"  {mark.get(v['status'], '      ')} {v['name']}"
            if "value" in v:
                line += f": {_text_value(v['value'])}"
            if "detail" in v:
                line += f" ({v['detail']})"
            lines.append(line)
        for w in self.witnesses:
            lines.append(f"  witness: {w}")
        lines.append(f"  time: {self.timing_ms} ms")
        return "\n".join(lines)


def _text_value(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return "[" + ", ".join(_text_value(x) for x in v) + "]"
    return str(v)


# -- helpers ------------------------------------------------------------------------


def _load_complex(path: str) -> SimplicialComplex:
    try:
        return read_complex(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _positive(name: str, value: int | None) -> int | None:
    if value is not None and value <= 0:
        raise UsageError(f"{name} must be positive, got {value}")
    return value


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise UsageError(f"{name}={raw!r} is not an integer") from exc
    return _positive(name, value)


def _homology_text(groups) -> list[str]:
    return [str(g) for g in groups]


def _parse_signs(text: str, n: int) -> int:
    toks = text.replace(",", " ").split()
    if len(toks) != n:
        raise UsageError(f"sign vector needs {n} entries, got {len(toks)}")
    try:
        return signs_to_mask(int(t) for t in toks)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _signs_text(mask: int, n: int) -> str:
    return " ".join("-" if x < 0 else "+" for x in mask_to_signs(mask, n))


# -- subcommands --------------------------------------------------------------------


def cmd_complex(args, rep: Report) -> None:
    k = _load_complex(args.file)
    rep.inputs["file"] = args.file
    rep.verdict("f_vector", INFO, k.f_vector())
    rep.verdict("euler_characteristic", INFO, euler_characteristic(k))
    everything = not (args.flag or args.subdivide or args.homology or args.pi1 or args.link)
    if args.flag or everything:
        rep.verdict("flag", INFO, is_flag(k))
    if args.homology or everything:
        rep.verdict("homology", INFO, _homology_text(homology(simplicial_chain_complex(k))))
    if args.subdivide:
        b = barycentric_subdivision(k)
        rep.verdict("subdivision_f_vector", INFO, b.f_vector())
        rep.check("subdivision_is_flag", is_flag(b))
        if args.emit:
            rep.witnesses.extend(format_complex(b).splitlines())
    if args.link is not None:
        if args.link not in k.vertices:
            raise UsageError(f"unknown vertex {args.link!r}")
        link, star, comp = link_and_star(k, args.link)
        rep.verdict("link_f_vector", INFO, link.f_vector())
        rep.verdict("star_complement_homology", INFO,
                    _homology_text(homology(simplicial_chain_complex(comp))))
    if args.pi1:
        if not k.is_connected():
            raise UsageError("fundamental group needs a connected complex")
        p = pi1_presentation(k).simplify()
        rep.verdict("pi1_generators", INFO, p.ngens)
        rep.verdict("pi1_relators", INFO, len(p.relators))
        rep.verdict("pi1_abelianization", INFO, str(p.abelianization()))
        h = homology(simplicial_chain_complex(k))
        h1 = h[1] if len(h) > 1 else AbelianGroup(0)
        rep.check("abelianization_matches_H1", p.abelianization() == h1)


def _max_s(args) -> int:
    return _positive("--max-s", args.max_s) or _env_int("DF_MAX_S", 16)


def cmd_davis(args, rep: Report) -> None:
    k = _load_complex(args.file)
    rep.inputs["file"] = args.file
    p = DavisComplex(k, max_s=_max_s(args))
    rep.verdict("f_vector", INFO, p.f_vector())
    rep.verdict("cell_count", INFO, p.cell_count())
    rep.verdict("euler_characteristic", INFO, p.euler_characteristic())
    everything = not (args.links or args.homology or args.fixed)
    if args.homology or everything:
        h = homology(davis_chain_complex(p))
        rep.verdict("homology", INFO, _homology_text(h))
        chi = sum((-1) ** d * g.rank for d, g in enumerate(h))
        rep.check("euler_characteristic_matches_homology", chi == p.euler_characteristic())
    if args.links or everything:
        bad = [v for v in range(1 << p.n) if not vertex_link(p, v).matches_base]
        rep.check("every_vertex_link_is_K", not bad, 1 << p.n, "vertices checked")
        rep.witnesses.extend(f"link mismatch at {_signs_text(v, p.n)}" for v in bad[:10])
    if args.fixed:
        e = _parse_signs(args.fixed, p.n)
        r = fixed_set(p, e)
        rep.verdict("fixed_cells", INFO, r.fixed_cells)
        rep.verdict("fixed_set_discrete", INFO, r.is_discrete)
        for tau in r.violations:
            rep.witnesses.append(f"positive-dimensional fixed slice in free coordinates "
                                 f"{' '.join(map(str, k.labels(tau)))}")


def cmd_gamma(args, rep: Report) -> None:
    k = _load_complex(args.file)
    rep.inputs["file"] = args.file
    t = ThetaMap(k)
    rep.verdict("dimension", INFO, t.n)
    rep.verdict("simplices", INFO, t.size)
    rep.verdict("theta_surjective", INFO, t.is_surjective())
    everything = not (args.theta or args.member or args.pseudofree or args.comparison)
    if args.theta:
        out = t(tuple(mask_to_signs(_parse_signs(args.theta, t.size), t.size)))
        rep.verdict("theta", INFO, list(out))
    if args.member:
        sys_ = t.system
        try:
            w = sys_.parse_word(args.member)
        except (KeyError, ValueError) as exc:
            raise UsageError(f"bad word: {exc}") from exc
        rep.verdict("gamma_member", INFO, gamma_member(t, w))
    if args.pseudofree or everything:
        sub = gamma_image_subgroup(t)
        rep.verdict("image_subgroup_order", INFO, len(sub))
        rep.check("image_subgroup_index", len(sub) << t.n == 1 << t.size, 1 << t.n)
        r = pseudo_free_verdict(k, max_s=_max_s(args))
        rep.check("direct_route_discrete", r.direct_ok)
        rep.check("comparison_route_discrete", r.comparison_ok)
        rep.check("routes_agree", r.routes_agree)
        rep.check("pseudo_free", r.ok, detail=f"{r.elements_checked} non-trivial elements")
        for e, tau in r.witnesses[:20]:
            rep.witnesses.append(f"e = {_signs_text(e, t.size)} fixes a positive-dimensional "
                                 f"slice of stratum {tau:#x}")
    if args.comparison or everything:
        c = comparison_map_check(k, seed=args.seed)
        rep.check("comparison_equivariant", c.equivariant, c.pairs_checked, "pairs checked")
        rep.check("comparison_injective_on_cubes", c.injective_on_cubes)
        rep.verdict("comparison_exhaustive", INFO, c.exhaustive)


def cmd_census(args, rep: Report) -> None:
    radius = _positive("--radius", args.radius)
    if args.crystal is not None:
        if args.crystal <= 0:
            raise UsageError("--crystal needs a positive lattice rank")
        model = census_mod.CrystalModel(args.crystal, radius or _env_int("DF_BALL_R", census_mod.DEFAULT_BALL_R))
        rep.inputs["crystal"] = args.crystal
    else:
        try:
            with open(args.racg) as fh:
                system = parse_system(fh.read())
        except OSError as exc:
            raise UsageError(f"cannot read {args.racg}: {exc.strerror or exc}") from exc
        except ValueError as exc:
            raise UsageError(f"{args.racg}: {exc}") from exc
        model = census_mod.RACGModel(system, radius or _env_int("DF_BALL_L", census_mod.DEFAULT_BALL_L))
        rep.inputs["racg"] = args.racg
    rep.inputs["radius"] = model.radius
    c = census_mod.dihedral_subgroups(model)
    rep.verdict("ball_size", INFO, len(model.elements()))
    rep.verdict("involution_classes", INFO, len(c.involution_classes))
    rep.verdict("involution_class_reps", INFO, [model.fmt(cl[0]) for cl in c.involution_classes])
    rep.verdict("dihedral_records", INFO, len(c.records))
    mid = census_mod.mid_count(c)
    rep.verdict("mid_count", INFO, mid.count, mid.confidence)
    rep.witnesses.extend(mid.witnesses)
    if args.properties:
        pr = census_mod.property_checks(c)
        rep.verdict("C_1_fin", pr.c_1_fin)
        rep.verdict("M_fbc_vc", pr.m_fbc_vc)
        rep.witnesses.extend(pr.witnesses)


def _read_mid(value: str) -> tuple[int, str, dict]:
    try:
        return int(value), census_mod.EXACT, {}
    except ValueError:
        pass
    try:
        with open(value) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {value}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{value}: not a census report ({exc})") from exc
    checked = {}
    count = confidence = None
    for v in data.get("verdicts", []):
        if v.get("name") == "mid_count":
            count, confidence = v.get("value"), v.get("detail", census_mod.LOWER_BOUND)
        elif v.get("name") == "C_1_fin":
            checked["1"] = v["status"]
        elif v.get("name") == "M_fbc_vc":
            checked["2"] = v["status"]
    if not isinstance(count, int):
        raise UsageError(f"{value}: no mid_count verdict")
    return count, confidence, checked


def cmd_structset(args, rep: Report) -> None:
    count, confidence, checked = _read_mid(args.mid)
    rep.inputs.update(n=args.n, mid=args.mid)
    try:
        s = structure_set(args.n, count, confidence, checked)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rep.verdict("epsilon", INFO, -1 if args.n % 2 else 1)
    rep.verdict("unil_summand", INFO, str(s.summand))
    rep.verdict("mid_count", INFO, s.index_count, s.confidence)
    rep.verdict("singleton", INFO, s.singleton)
    rep.verdict("structure_set", INFO, s.describe())
    if s.outside_hypotheses:
        rep.verdict("outside-theorem-hypotheses", INFO, True, "the classification needs n > 4")
    for item in s.checklist:
        rep.verdict(f"hypothesis_{item['hypothesis']}", INFO, item["status"], item["statement"])


def cmd_example32(args, rep: Report) -> None:
    if args.sphere:
        m_complex = _load_complex(args.sphere)
        rep.inputs["sphere"] = args.sphere
    else:
        m_complex = poincare_sphere()
        rep.inputs["sphere"] = "<bundled poincare.cplx>"
    rep.inputs.update(m=args.m, n=args.n)
    try:
        r = run_pipeline(m_complex, args.m, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    for v in r.verdicts:
        rep.check(v.name, v.ok, detail=v.detail)
    rep.witnesses.extend(r.witnesses)


def cmd_heisenberg(args, rep: Report) -> None:
    samples = _positive("--samples", args.samples)
    rep.inputs.update(samples=samples, seed=args.seed)
    fails = selftest(samples, args.seed)
    for name, count in fails.items():
        rep.check(name, count == 0, count, "failures")


# -- entry point ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pseudofree", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "json"), default="human")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("complex", parents=[common], help="flag test, subdivision, homology, pi1")
    p.add_argument("file")
    p.add_argument("--flag", action="store_true")
    p.add_argument("--subdivide", action="store_true")
    p.add_argument("--emit", action="store_true", help="with --subdivide, list the subdivision facets")
    p.add_argument("--homology", action="store_true")
    p.add_argument("--pi1", action="store_true")
    p.add_argument("--link", metavar="VERTEX")

    p = sub.add_parser("davis", parents=[common], help="Davis complex cells, links, homology, fixed sets")
    p.add_argument("file")
    p.add_argument("--links", action="store_true")
    p.add_argument("--homology", action="store_true")
    p.add_argument("--fixed", metavar="SIGNS", help="e.g. '-1 1 1'")
    p.add_argument("--max-s", type=int)

    p = sub.add_parser("gamma", parents=[common], help="theta, membership, pseudo-freeness, comparison map")
    p.add_argument("file")
    p.add_argument("--theta", metavar="SIGNS")
    p.add_argument("--member", metavar="WORD")
    p.add_argument("--pseudofree", action="store_true")
    p.add_argument("--comparison", action="store_true")
    p.add_argument("--max-s", type=int)

    p = sub.add_parser("census", parents=[common], help="involutions and infinite dihedral subgroups")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--racg", metavar="SYSTEM_FILE")
    g.add_argument("--crystal", type=int, metavar="N")
    p.add_argument("--radius", type=int)
    p.add_argument("--properties", action="store_true")

    p = sub.add_parser("structset", parents=[common], help="UNil summand and structure-set shape")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mid", required=True, help="class count or a census JSON report")

    p = sub.add_parser("example32", parents=[common], help="homology checks from M up to L")
    p.add_argument("--sphere", help="homology sphere facet file (default: bundled Poincare sphere)")
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--n", type=int, default=7)

    p = sub.add_parser("heisenberg", parents=[common], help="randomised group-law checks")
    p.add_argument("--selftest", action="store_true", help="run the property suite (the default)")
    p.add_argument("--samples", type=int, default=10_000)
    return ap


COMMANDS = {
    "complex": cmd_complex,
    "davis": cmd_davis,
    "gamma": cmd_gamma,
    "census": cmd_census,
    "structset": cmd_structset,
    "example32": cmd_example32,
    "heisenberg": cmd_heisenberg,
}


def run(argv: list[str] | None = None) -> tuple[int, Report | None]:
    args = build_parser().parse_args(argv)
    rep = Report(args.command)
    start = time.perf_counter_ns()
    try:
        COMMANDS[args.command](args, rep)
    except (UsageError, ComplexError, ChainComplexError) as exc:
        print(f"pseudofree {args.command}: error: {exc}", file=sys.stderr)
        return 2, None
    except CAP_ERRORS as exc:
        print(f"pseudofree {args.command}: cap exceeded: {exc}", file=sys.stderr)
        return 2, None
    rep.timing_ms = (time.perf_counter_ns() - start) // 1_000_000
    text = json.dumps(rep.to_json(), indent=2) if args.format == "json" else rep.to_text()
    if args.output:
        try:
            with open(args.output, "w") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            print(f"pseudofree: cannot write {args.output}: {exc.strerror or exc}", file=sys.stderr)
            return 2, rep
    else:
        print(text)
    return (1 if rep.failed else 0), rep


def main(argv: list[str] | None = None) -> int:
    try:
        return run(argv)[0]
    except SystemExit as exc:  # argparse usage errors
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
