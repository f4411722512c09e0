"""Command line entry point: ``polarflip VERB --input FILE [options]``.

Exit codes: 0 ok, 1 a checked property failed, 2 bad input, 3 a search or
enumeration budget ran out.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from .arrangement import Arrangement, ArrangementError, GeneralPositionViolation
from .faces import enumerate_faces, face_counts
from .fixtures import NAMED
from .flag import Flag, FlagError, FlagSearchExhausted, build_flag, verify_flag
from .followup import NotCentral, decide_followup_2d, is_followup, ssfol_flag, ssfol_order, \
    supersolvable_filtration
from .lattice import intersection_lattice
from .morse import minimality_report
from .polar import build_polar_order
from .scalar import ScalarError
from .svg import NotPlanar, render_svg_2d
from .sweep import LimitExceeded, default_orderings, enumerate_special_orderings, flip, \
    initial_state, sign_string

VERBS = ("faces", "lattice", "flag", "sweep", "polar", "morse", "followup", "supersolvable", "render")
OK, VIOLATION, BAD_INPUT, EXHAUSTED = 0, 1, 2, 3


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    verb: str
    input: str
    flag_file: str | None = None
    seed: int = 0
    limit: int = 10000
    scalar: str | None = None
    out: str | None = None
    format: str = "json"


def load_arrangement(cfg: RunConfig) -> Arrangement:
    """A JSON file, or ``fixture:NAME`` for one of the built-in examples."""
    if cfg.input.startswith("fixture:"):
        name = cfg.input.split(":", 1)[1]
        if name not in NAMED:
            raise InputError(f"unknown fixture {name!r}; known: {', '.join(sorted(NAMED))}")
        return NAMED[name]()
    try:
        text = Path(cfg.input).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {cfg.input}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{cfg.input}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    if cfg.scalar and "scalar" not in data:
        data["scalar"] = cfg.scalar
    try:
        return Arrangement.from_json(data)
    except (ArrangementError, ScalarError) as exc:
        raise InputError(f"{cfg.input}: {exc}") from exc


def load_flag(cfg: RunConfig, arr: Arrangement) -> Flag:
    if cfg.flag_file is None:
        return build_flag(arr, seed=cfg.seed, retries=min(cfg.limit, 1000))
    try:
        data = json.loads(Path(cfg.flag_file).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {cfg.flag_file}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{cfg.flag_file}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    if isinstance(data, dict) and isinstance(data.get("flag"), dict):
        data = data["flag"]  # a saved report of the flag verb
    try:
        flag = Flag.from_json(arr, data)
    except (KeyError, TypeError, ScalarError) as exc:
        raise InputError(f"{cfg.flag_file}: malformed flag: {exc}") from exc
    report = verify_flag(arr, flag)
    if not report.ok:
        raise InputError(f"{cfg.flag_file}: not a general flag: {report.failures()}")
    return flag


def cmd_faces(cfg, arr):
    counts = face_counts(enumerate_faces(arr))
    d = arr.dim
    named = {"chambers": counts.get(d, 0), "vertices": counts.get(0, 0)}
    if d >= 2:
        named["edges"] = counts.get(1, 0)
    rows = [{"dim": k, "count": counts.get(k, 0)} for k in range(d + 1)]
    return {**named, "by_dim": rows}, OK


def cmd_lattice(cfg, arr):
    L = intersection_lattice(arr)
    return {"char_poly": L.char_poly, "betti": list(L.betti), "chambers": L.chambers,
            "bounded_chambers": L.bounded_chambers, "flats": len(L.flats)}, OK


def cmd_flag(cfg, arr):
    flag = load_flag(cfg, arr)
    report = verify_flag(arr, flag)
    return {"flag": flag.to_json(), "verify": report.to_json()}, OK if report.ok else VIOLATION


def cmd_sweep(cfg, arr):
    flag = load_flag(cfg, arr)
    levels = []
    for k in range(flag.d + 1):
        orders = enumerate_special_orderings(flag, k, limit=cfg.limit)
        levels.append({"k": k, "count": len(orders),
                       "orderings": [[sign_string(v) for v in o] for o in orders]})
    return {"flag": flag.to_json(), "levels": levels}, OK


def cmd_polar(cfg, arr):
    flag = load_flag(cfg, arr)
    order = build_polar_order(flag, default_orderings(flag))
    return {"flag": flag.to_json(), "order": order.to_rows()}, OK


def cmd_morse(cfg, arr):
    flag = load_flag(cfg, arr)
    order = build_polar_order(flag, default_orderings(flag))
    report = minimality_report(arr, order)
    report["critical"] = [r["critical"] for r in report["rows"]]
    return report, OK if report["pass"] else VIOLATION


def cmd_followup(cfg, arr):
    if cfg.flag_file is not None:
        flag = load_flag(cfg, arr)
        ok, cert = is_followup(flag)
        return {"followup": ok, "witness": flag.to_json() if ok else None, "certificate": cert}, OK
    if arr.dim != 2:
        raise InputError("follow-up search needs a planar arrangement or a --flag-file")
    return decide_followup_2d(arr, random_budget=4, seed=cfg.seed).to_json(), OK


def cmd_supersolvable(cfg, arr):
    try:
        filt = supersolvable_filtration(arr)
    except NotCentral as exc:
        raise InputError(str(exc)) from exc
    if filt is None:
        return {"supersolvable": False, "filtration": None}, OK
    flag = ssfol_flag(arr, filt, seed=cfg.seed, budget=min(cfg.limit, 1000))
    order = build_polar_order(flag, ssfol_order(arr, filt, flag))
    report = minimality_report(arr, order)
    return {"supersolvable": True, "filtration": filt.to_json(), "flag": flag.to_json(),
            "minimality": report}, OK if report["pass"] else VIOLATION


def cmd_render(cfg, arr):
    """The flag, with the first ``--limit`` vertices of the top level swept."""
    flag = load_flag(cfg, arr) if arr.dim == 2 else None
    if flag is None:
        raise NotPlanar(f"expected a planar arrangement, got dimension {arr.dim}")
    state = initial_state(flag, 2)
    for v in default_orderings(flag)[2][:cfg.limit]:
        state = flip(state, v)
    svg = render_svg_2d(arr, flag, state).split("\n", 1)
    return f"{svg[0]}\n<desc>seed={cfg.seed} limit={cfg.limit}</desc>\n{svg[1]}", OK


COMMANDS = {v: globals()[f"cmd_{v}"] for v in VERBS}


def _tsv(verb: str, report: dict) -> str:
    if verb == "faces":
        rows = [(r["dim"], r["count"]) for r in report["by_dim"]]
        head = ("dim", "count")
    elif verb == "lattice":
        rows = list(enumerate(report["betti"]))
        head = ("codim", "betti")
    elif verb == "polar":
        head = ("rank", "face", "codim", "k", "j", "point", "least_facet")
        rows = [tuple(r[h] for h in head) for r in report["order"]]
    elif verb == "sweep":
        head = ("k", "index", "ordering")
        rows = [(lv["k"], i, " ".join(o)) for lv in report["levels"] for i, o in enumerate(lv["orderings"])]
    elif verb == "morse":
        head = ("dim", "critical", "betti", "pass")
        rows = [tuple(r[h] for h in head) for r in report["rows"]]
    else:
        head = ("key", "value")
        rows = [(k, json.dumps(v, sort_keys=True)) for k, v in report.items() if k != "config"]
    cfg = report.get("config", {})
    lines = ["# " + " ".join(f"{k}={cfg[k]}" for k in ("seed", "limit"))]
    lines.append("\t".join(head))
    lines += ["\t".join("" if x is None else str(x) for x in r) for r in rows]
    return "\n".join(lines) + "\n"


def run(cfg: RunConfig) -> tuple[str, int]:
    """Execute one verb and return the rendered report and the exit code."""
    try:
        arr = load_arrangement(cfg)
        body, code = COMMANDS[cfg.verb](cfg, arr)
    except (InputError, GeneralPositionViolation, NotPlanar) as exc:
        return json.dumps({"error": str(exc), "config": asdict(cfg)}) + "\n", BAD_INPUT
    except (FlagSearchExhausted, LimitExceeded) as exc:
        return json.dumps({"error": str(exc), "budget_exhausted": True, "config": asdict(cfg)}) + "\n", EXHAUSTED
    except FlagError as exc:
        return json.dumps({"error": str(exc), "config": asdict(cfg)}) + "\n", VIOLATION
    if isinstance(body, str):
        return body, code
    body["config"] = asdict(cfg)
    if cfg.format == "tsv":
        return _tsv(cfg.verb, body), code
    return json.dumps(body, indent=1, sort_keys=True) + "\n", code


def parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polarflip", description=__doc__.splitlines()[0])
    p.add_argument("verb", choices=VERBS)
    p.add_argument("--input", required=True, help="arrangement JSON file or fixture:NAME")
    p.add_argument("--flag-file", default=None, help="flag JSON to use instead of a seeded search")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--limit", type=int, default=10000, help="enumeration cap or retry budget")
    p.add_argument("--scalar", default=None, help="rational or quadratic:N when the file omits it")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "tsv", "svg"), default=None)
    return p


def main(argv=None) -> int:
    args = parser().parse_args(argv)
    fmt = args.format or ("svg" if args.verb == "render" else "json")
    if (fmt == "svg") != (args.verb == "render"):
        print(f"format {fmt} does not apply to {args.verb}", file=sys.stderr)
        return BAD_INPUT
    cfg = RunConfig(verb=args.verb, input=args.input, flag_file=args.flag_file, seed=args.seed,
                    limit=args.limit, scalar=args.scalar, out=args.out, format=fmt)
    text, code = run(cfg)
    if cfg.out and code in (OK, VIOLATION):
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
