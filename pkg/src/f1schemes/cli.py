"""Command-line interface.

Exit codes: 0 success, 1 a mathematical verdict failed, 2 bad input or
configuration, 3 an enumeration budget was exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from . import budget as budget_mod
from .cones import Fan, canonical_json, catalogue_fan, fan_validate
from .errors import BudgetExceeded, F1Error, InputError, UnsupportedError
from .verdicts import Status

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    path: str | None = None
    output_format: str = "text"
    budget: int | None = None
    bound: int = 3
    max_size: int = 3
    q: tuple[int, ...] = ()
    options: dict = field(default_factory=dict)

    KEYS = ("budget", "bound", "max_size", "format", "q")

    def __post_init__(self):
        if self.output_format not in ("text", "json"):
            raise InputError(f"unknown output format {self.output_format!r}")
        for name in ("budget", "bound", "max_size"):
            val = getattr(self, name)
            if val is not None and (not isinstance(val, int) or val <= 0):
                raise InputError(f"{name} must be a positive integer, got {val!r}")
        if any(not isinstance(x, int) or x <= 1 for x in self.q):
            raise InputError("q values must be prime powers")

    @staticmethod
    def file_overrides(path: str) -> dict:
        """Settings from a JSON config file; unknown keys are rejected."""
        data = _load_json(path)
        if not isinstance(data, dict):
            raise InputError("config file must hold a JSON object")
        unknown = set(data) - set(RunConfig.KEYS)
        if unknown:
            raise InputError(f"unknown config keys: {sorted(unknown)}")
        return data


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _load_fan(path: str) -> Fan:
    if path.startswith("catalog:"):
        return catalogue_fan(path.split(":", 1)[1])
    data = _load_json(path)
    if not isinstance(data, dict):
        raise InputError(f"{path}: a fan file holds a JSON object")
    return Fan.from_json(data)


def _parse_q(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise InputError(f"bad --q list {text!r}") from None


def _target(spec: str):
    """A monoid name, a semiring name, or a path to a JSON monoid spec.

    Monoid names win on a clash (``Z/n``); prefix ``ring:`` or ``monoid:`` to choose.
    """
    from .monoids import monoid_from_json, named_monoid
    from .rings import named_semiring

    if spec.startswith("ring:"):
        return named_semiring(spec[5:])
    if spec.startswith("monoid:"):
        return named_monoid(spec[7:])
    for parse in (named_monoid, named_semiring):
        try:
            return parse(spec)
        except InputError:
            pass
    if os.path.exists(spec):
        return monoid_from_json(_load_json(spec))
    raise InputError(f"unknown target {spec!r}")


# -- commands ----------------------------------------------------------------


def cmd_fan(cfg: RunConfig) -> tuple[dict, int]:
    fan = _load_fan(cfg.path)
    v = fan_validate(fan)
    cones = [{"dim": c.dimension, "rays": c.to_json()} for c in fan.cones]
    report = {"command": "fan", "dim": fan.dim, "valid": v.valid, "cones": cones,
              "maximal": [c.to_json() for c in fan.maximal_cones]}
    if not v.valid:
        report["first_violation"] = v.first_violation
    return report, EXIT_OK if v.valid else EXIT_FAIL


def cmd_toric(cfg: RunConfig) -> tuple[dict, int]:
    from .schemes import count_points_report, points, validate_atlas
    from .toric import build_toric_atlas, toric_base_change

    fan = _load_fan(cfg.path)
    opts = cfg.options
    report: dict = {"command": "toric"}
    code = EXIT_OK
    if opts.get("count"):
        if not cfg.q:
            raise InputError("--count needs --q")
        rows = [count_points_report(fan, q) for q in cfg.q]
        report["counts"] = rows
        if not all(r["agree"] for r in rows):
            code = EXIT_FAIL
        return report, code
    atlas = build_toric_atlas(fan)
    if opts.get("basechange"):
        atlas = toric_base_change(fan, opts["basechange"])
    if opts.get("points"):
        target = _target(opts["points"])
        ps = points(atlas, target, cfg.budget)
        report["points"] = ps.to_json()
        report["target"] = opts["points"]
        return report, code
    v = validate_atlas(atlas)
    report["atlas"] = atlas.to_json()
    report["validation"] = v.to_json()
    return report, EXIT_OK if v.valid else EXIT_FAIL


def cmd_gln(cfg: RunConfig) -> tuple[dict, int]:
    from .groups import gl_order_formula, gln_f1, gln_points_matrix
    from .rings import FiniteSemiring, prime_power

    n = cfg.options["n"]
    if n < 1:
        raise InputError("n must be positive")
    spec = cfg.options["target"]
    target = _target(spec)
    report = {"command": "gln", "n": n, "target": spec}
    if isinstance(target, FiniteSemiring):
        g = gln_points_matrix(n, target, cfg.budget)
        report["model"] = "matrices with a two-sided inverse"
        pk = prime_power(target.size) if target.name.startswith("F") else None
        if pk is not None:
            report["closed_form"] = gl_order_formula(n, target.size)
    else:
        g = gln_f1(n).points(target)
        report["model"] = "S_n semidirect (B^x)^n"
    report["order"] = g.order
    ok = g.check_axioms() if g.order <= 200 else True
    report["group_axioms"] = ok
    if "closed_form" in report and report["closed_form"] != g.order:
        ok = False
    return report, EXIT_OK if ok else EXIT_FAIL


def cmd_descent(cfg: RunConfig) -> tuple[dict, int]:
    from .descent import (cover_from_json, descent_equivalence_check, discover_covers,
                          enumerate_asets, is_conservative_bounded, is_flat_bounded,
                          pretopology_check, sheaf_equalizer_check)

    bound = cfg.bound
    if cfg.options.get("search"):
        covers = [r.cover for r in discover_covers(cfg.max_size, bound)]
        entries = []
        ok = True
        partial = False
        for c in covers:
            d = descent_equivalence_check(c, bound, cfg.budget)
            eqs = [sheaf_equalizer_check(c, m) for m in enumerate_asets(c.base, bound)]
            ok &= d.verdict.ok and all(e.ok for e in eqs)
            partial |= d.verdict.status is Status.PARTIAL
            entries.append({"base": c.base.to_json(), "target": c.legs[0].target.to_json(),
                            "images": list(c.legs[0].images), "split": d.split,
                            "descent": d.verdict.status.value,
                            "equalizer": all(e.ok for e in eqs)})
        pre = pretopology_check(covers, bound, cfg.max_size)
        ok &= pre.ok
        report = {"command": "descent", "mode": "search", "max_size": cfg.max_size,
                  "bound": bound, "covers": entries, "pretopology": pre.to_json(),
                  "split_only": all(e["split"] for e in entries)}
        return report, EXIT_BUDGET if partial else (EXIT_OK if ok else EXIT_FAIL)
    if not cfg.path:
        raise InputError("descent needs a cover file or --search")
    data = _load_json(cfg.path)
    if not isinstance(data, dict):
        raise InputError("a cover file holds a JSON object")
    cover = cover_from_json(data)
    flat = [is_flat_bounded(f, bound, cfg.budget) for f in cover.legs]
    cons = is_conservative_bounded(cover, bound, cfg.budget)
    report = {"command": "descent", "mode": "cover", "bound": bound,
              "flat": [v.to_json() for v in flat], "conservative": cons.to_json()}
    verdicts = flat + [cons]
    if all(v.ok for v in verdicts):
        eqs = [sheaf_equalizer_check(cover, m) for m in enumerate_asets(cover.base, bound)]
        d = descent_equivalence_check(cover, bound, cfg.budget)
        report["equalizer"] = {"modules": len(eqs), "ok": all(e.ok for e in eqs)}
        report["descent"] = d.to_json()
        verdicts += eqs + [d.verdict]
    else:
        report["descent"] = "skipped: the cover is not faithfully flat up to the bound"
    if any(v.status is Status.PARTIAL for v in verdicts):
        return report, EXIT_BUDGET
    return report, EXIT_OK if all(v.ok for v in verdicts) else EXIT_FAIL


COMMANDS = {"fan": cmd_fan, "toric": cmd_toric, "gln": cmd_gln, "descent": cmd_descent}


# -- text rendering -------------------------------------------------------


def _table_str(m: dict) -> str:
    return "/".join("".join(str(x) for x in row) for row in m["table"])


def render_text(report: dict) -> str:
    cmd = report["command"]
    lines: list[str] = []
    if cmd == "fan":
        lines.append(f"fan in dimension {report['dim']}: "
                     f"{'valid' if report['valid'] else 'INVALID'}, {len(report['cones'])} cones")
        for c in report["cones"]:
            lines.append(f"  dim {c['dim']}: {c['rays']}")
        if not report["valid"]:
            lines.append(f"first violation: {json.dumps(report['first_violation'], sort_keys=True)}")
    elif cmd == "toric":
        if "counts" in report:
            for r in report["counts"]:
                lines.append(f"q={r['q']}: glue={r['glue']} cone_sum={r['cone_sum']} "
                             f"{'ok' if r['agree'] else 'MISMATCH'}")
        elif "points" in report:
            p = report["points"]
            lines.append(f"{p['count']} points over {report['target']}")
            for pt in p["points"]:
                lines.append(f"  chart {pt['chart']}: {pt['images']}")
        else:
            atlas = report["atlas"]
            lines.append(f"atlas over {atlas['base']}: {len(atlas['charts'])} charts")
            for c in atlas["charts"]:
                desc = c["algebra"]["presentation"] if "algebra" in c else \
                    f"monoid gens {c['monoid']['gens']} inverted {c['monoid']['inverted']}"
                lines.append(f"  {c['label']} cone {c.get('cone')}: {desc}")
                if "algebra" in c:
                    gens = ", ".join(f"{k}={v}" for k, v in c["algebra"]["generators"].items())
                    lines.append(f"      {gens}")
            for o in atlas["overlaps"]:
                if o["i"] >= o["j"]:
                    continue
                desc = o["algebra"]["presentation"] if "algebra" in o else \
                    f"monoid gens {o['monoid']['gens']} inverted {o['monoid']['inverted']}"
                kinds = f"{o['left']['certificate']['kind']}/{o['right']['certificate']['kind']}"
                lines.append(f"  overlap ({o['i']},{o['j']}): {desc} [{kinds}]")
            v = report["validation"]
            status = "valid" if v["valid"] else "INVALID"
            conds = " ".join(f"({k}){'ok' if c['ok'] else 'FAIL'}"
                             for k, c in sorted(v["conditions"].items()))
            lines.append(f"validation: {status} {conds}")
    elif cmd == "gln":
        extra = f" (closed form {report['closed_form']})" if "closed_form" in report else ""
        lines.append(f"Gl_{report['n']} over {report['target']}: order {report['order']}{extra}")
        lines.append(f"  model: {report['model']}; group axioms "
                     f"{'hold' if report['group_axioms'] else 'FAIL'}")
    elif cmd == "descent":
        if report["mode"] == "search":
            lines.append(f"{len(report['covers'])} faithfully flat covers among monoids of size "
                         f"<= {report['max_size']} (module bound {report['bound']})")
            for c in report["covers"]:
                lines.append(f"  {_table_str(c['base'])} -> {_table_str(c['target'])} "
                             f"{c['images']}: descent "
                             f"{c['descent']}, equalizer {'ok' if c['equalizer'] else 'FAIL'}"
                             f"{', split' if c['split'] else ''}")
            lines.append(f"pretopology: {report['pretopology']['status']}")
            if report["split_only"]:
                lines.append("note: verified on split covers only")
        else:
            lines.append(f"flat: {', '.join(v['status'] for v in report['flat'])}")
            lines.append(f"conservative: {report['conservative']['status']}")
            if isinstance(report["descent"], str):
                lines.append(f"descent: {report['descent']}")
            else:
                lines.append(f"equalizer: {'ok' if report['equalizer']['ok'] else 'FAIL'} "
                             f"on {report['equalizer']['modules']} modules")
                d = report["descent"]
                lines.append(f"descent: {d['verdict']['status']}"
                             f"{' (split cover)' if d['split'] else ''}")
    return "\n".join(lines) + "\n"


# -- entry point -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default=None)
    common.add_argument("--budget", type=int, default=None,
                        help=f"enumeration budget (default: ${budget_mod.ENV_VAR} or "
                             f"{budget_mod.FALLBACK_BUDGET})")
    common.add_argument("--config", help="JSON file with budget/bound/max_size/format/q")

    p = argparse.ArgumentParser(prog="f1schemes", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("fan", parents=[common], help="validate a fan")
    f.add_argument("path", help="fan JSON file, or catalog:NAME")

    t = sub.add_parser("toric", parents=[common], help="toric scheme of a fan")
    t.add_argument("path", help="fan JSON file, or catalog:NAME")
    mode = t.add_mutually_exclusive_group()
    mode.add_argument("--charts", action="store_true", help="list charts and overlaps (default)")
    mode.add_argument("--basechange", choices=["N", "Z"])
    mode.add_argument("--points", metavar="TARGET", help="monoid or semiring name (ring:/monoid: prefix to choose), or JSON file")
    mode.add_argument("--count", action="store_true", help="count points over F_q")
    t.add_argument("--q", default=None, help="comma separated prime powers")

    g = sub.add_parser("gln", parents=[common], help="points of Gl_n")
    g.add_argument("n", type=int)
    g.add_argument("target", help="F1, a monoid name (Fq*:q, Z/n, ...) or a semiring (Fq:q, B)")

    d = sub.add_parser("descent", parents=[common], help="bounded descent checks")
    d.add_argument("path", nargs="?", help="cover JSON file")
    d.add_argument("--bound", type=int, default=None, help="module size bound")
    d.add_argument("--search", action="store_true", help="discover covers among small monoids")
    d.add_argument("--max-size", type=int, default=None, dest="max_size")
    return p


def _config_from_args(args) -> RunConfig:
    over = RunConfig.file_overrides(args.config) if getattr(args, "config", None) else {}

    def pick(name, default):
        val = getattr(args, name, None)
        if val is None:
            val = over.get(name)
        return default if val is None else val

    q = getattr(args, "q", None)
    qs = _parse_q(q) if q else tuple(over.get("q", ()))
    opts = {}
    if args.command == "toric":
        opts = {"count": args.count, "basechange": args.basechange, "points": args.points}
    elif args.command == "gln":
        opts = {"n": args.n, "target": args.target}
    elif args.command == "descent":
        opts = {"search": args.search}
    return RunConfig(
        command=args.command,
        path=getattr(args, "path", None),
        output_format=pick("format", "text"),
        budget=pick("budget", None),
        bound=pick("bound", 3),
        max_size=pick("max_size", 3),
        q=qs,
        options=opts,
    )


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
        budget_mod.set_default_budget(cfg.budget)
        report, code = COMMANDS[cfg.command](cfg)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, UnsupportedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except F1Error as exc:
        # an invalid fan handed to the toric builder is a verdict, not bad syntax
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    finally:
        budget_mod.set_default_budget(None)
    if cfg.output_format == "json":
        sys.stdout.write(canonical_json(report))
    else:
        sys.stdout.write(render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
