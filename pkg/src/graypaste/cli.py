"""Command-line front end: ``graypaste <command> scheme.json [options]``.

Exit status 0 on success, 1 when the input is rejected or a check finds a
counterexample (a JSON report with a ``kind`` field is printed), 2 on usage
and parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .compose import (
    LabellingError,
    check_labelling,
    compose,
    free_labelling,
    parse_labelling,
    word_to_steps,
)
from .relations import LimitExceeded, relations_report
from .rewriting import STRATEGIES, RewriteSystem
from .scheme import PARSE_KINDS, SchemeError, load_scheme, scheme_to_document, to_dot

COMMANDS = (
    "validate",
    "faces",
    "relations",
    "extensions",
    "normalize",
    "compose",
    "coherence-check",
    "exchange-graph",
)
DEFAULT_LIMIT = 10


class UsageError(ValueError):
    pass


class Failure(Exception):
    """A rejected input or failed check; carries the JSON report."""

    def __init__(self, payload: dict):
        super().__init__(payload.get("kind", "failure"))
        self.payload = payload


@dataclass
class RunConfig:
    command: str
    scheme: Path
    labels: Path | None = None
    strategy: str = "leftmost"
    mode: str = "auto"
    seed: int | None = None
    limit: int = DEFAULT_LIMIT
    format: str = "json"
    out: Path | None = None
    mirror: bool = False
    emit: bool = False
    order: str = "normal"
    start: str | None = None
    witness: bool = False

    def check(self) -> None:
        if self.limit <= 0:
            raise UsageError("--limit must be positive")
        needs_seed = self.mode == "sampled" or self.strategy == "random"
        may_use_seed = needs_seed or (self.command == "coherence-check" and self.mode == "auto")
        if needs_seed and self.seed is None:
            raise UsageError("--seed is required with --mode sampled or --strategy random")
        if self.seed is not None and not may_use_seed:
            raise UsageError("--seed only applies to --mode sampled or --strategy random")


def _default_limit() -> int:
    raw = os.environ.get("GRAYPASTE_LIMIT")
    if raw is None:
        return DEFAULT_LIMIT
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"GRAYPASTE_LIMIT must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("scheme", type=Path, help="scheme document (JSON)")
    common.add_argument("--labels", type=Path, help="labelling document (JSON)")
    common.add_argument("--limit", type=int, help="face-count guard (default 10, or $GRAYPASTE_LIMIT)")
    common.add_argument("--format", choices=("json", "text", "dot"), default=None)
    common.add_argument("--out", type=Path, help="write the artifact here instead of stdout")
    common.add_argument("--mirror", action="store_true", help="read rotations clockwise (swaps sigma and tau)")

    parser = argparse.ArgumentParser(prog="graypaste", description="Pasting schemes, their composition orders and coherence certificates.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("validate", parents=[common], help="validate a scheme")
    p.add_argument("--emit", action="store_true", help="print the canonical scheme document")
    sub.add_parser("faces", parents=[common], help="list faces with their boundary paths")
    sub.add_parser("relations", parents=[common], help="face relations and the comparability report")
    sub.add_parser("extensions", parents=[common], help="all admissible face strings")
    p = sub.add_parser("normalize", parents=[common], help="rewrite face strings to the normal form")
    p.add_argument("--strategy", choices=STRATEGIES, default="leftmost")
    p.add_argument("--seed", type=int)
    p.add_argument("--from", dest="start", help="face string to normalize (space or comma separated); default all")
    p = sub.add_parser("compose", parents=[common], help="composite term of a face string")
    p.add_argument("--order", default="normal", help="'normal' or a face string")
    p.add_argument("--witness", action="store_true", help="also print interchangers along the normalization")
    p = sub.add_parser("coherence-check", parents=[common], help="contractibility certificate")
    p.add_argument("--mode", choices=("auto", "exhaustive", "sampled"), default="auto")
    p.add_argument("--seed", type=int)
    sub.add_parser("exchange-graph", parents=[common], help="exchange graph of face strings (DOT)")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    fmt = ns.format or ("dot" if ns.command == "exchange-graph" else "json")
    cfg = RunConfig(
        command=ns.command,
        scheme=ns.scheme,
        labels=ns.labels,
        strategy=getattr(ns, "strategy", "leftmost"),
        mode=getattr(ns, "mode", "auto"),
        seed=getattr(ns, "seed", None),
        limit=ns.limit if ns.limit is not None else _default_limit(),
        format=fmt,
        out=ns.out,
        mirror=ns.mirror,
        emit=getattr(ns, "emit", False),
        order=getattr(ns, "order", "normal"),
        start=getattr(ns, "start", None),
        witness=getattr(ns, "witness", False),
    )
    cfg.check()
    return cfg


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def _read_json(path: Path):
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemeError("malformed", f"{path}: {exc}") from exc


def _parse_string(text: str) -> list:
    return [x for x in text.replace(",", " ").split() if x]


def _resolve_string(text: str, system: RewriteSystem) -> tuple:
    by_name = {str(f): f for f in system.faces}
    names = _parse_string(text)
    unknown = [n for n in names if n not in by_name]
    if unknown:
        raise UsageError(f"unknown faces {unknown}")
    s = tuple(by_name[n] for n in names)
    if not system.is_object(s):
        raise Failure({"kind": "not-an-object", "string": list(names)})
    return s


def _labelling(cfg: RunConfig, scheme):
    if cfg.labels is None:
        return free_labelling(scheme)
    lab = parse_labelling(_read_json(cfg.labels))
    report = check_labelling(scheme, lab)
    if not report.ok:
        raise Failure({"kind": "labelling", **report.to_json()})
    return lab


def _text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(f"{pad}- {_scalar(v)}" if not isinstance(v, dict) else f"{pad}-\n{_text(v, indent + 1)}" for v in obj)
    return pad + _scalar(obj)


def _scalar(v) -> str:
    if isinstance(v, list):
        return " ".join(map(str, v))
    if v is None:
        return "-"
    return str(v)


def execute(cfg: RunConfig):
    """Run one command; returns (payload, exit status).

    The payload is a dict for JSON/text output or a ready string for DOT.
    """
    doc = _read_json(cfg.scheme)
    scheme = load_scheme(doc, mirror=cfg.mirror)
    system = RewriteSystem.from_scheme(scheme)
    cmd = cfg.command
    if cmd == "validate":
        if cfg.format == "dot":
            return to_dot(scheme), 0
        return (scheme_to_document(scheme) if cfg.emit else {"valid": True, **scheme.to_json()}), 0
    if cmd == "faces":
        return {"faces": [f.to_json() for f in scheme.faces], "exterior": scheme.exterior.to_json()}, 0
    if cmd == "relations":
        rep = relations_report(scheme)
        return rep, 0 if rep["comparability"]["ok"] else 1
    if cmd == "extensions":
        objs = system.objects(cfg.limit)
        return {"count": len(objs), "extensions": [list(s) for s in objs]}, 0
    if cmd == "exchange-graph":
        system.objects(cfg.limit)
        return system.exchange_dot(cfg.limit), 0
    if cmd == "normalize":
        starts = [_resolve_string(cfg.start, system)] if cfg.start else system.objects(cfg.limit)
        runs = []
        for s in starts:
            nf, word = system.normalize(s, cfg.strategy, cfg.seed)
            runs.append({"source": list(s), "rho": system.rho(s), "normal_form": list(nf), "word": list(word.positions)})
        return {"strategy": cfg.strategy, "seed": cfg.seed, "runs": runs}, 0
    if cmd == "compose":
        lab = _labelling(cfg, scheme)
        if cfg.order == "normal":
            objs = system.objects(cfg.limit)
            s = system.normalize(objs[0])[0] if objs else ()
        else:
            s = _resolve_string(cfg.order, system)
        term = compose(s, scheme)
        out = {"order": list(s), "composite": term.render(lab), "entries": [c.render(lab) for c in term.entries]}
        if cfg.witness:
            _, word = system.normalize(s)
            out["witness"] = [
                {"position": sw.position, "step": st.render(lab), **st.square(lab)}
                for sw, st in zip(word.swaps(), word_to_steps(word, scheme))
            ]
        if cfg.format == "text":
            lines = [out["composite"]] + [w["step"] for w in out.get("witness", [])]
            return "\n".join(lines) + "\n", 0
        return out, 0
    if cmd == "coherence-check":
        mode = system.auto_mode(cfg.limit) if cfg.mode == "auto" else cfg.mode
        if mode == "sampled" and cfg.seed is None:
            raise UsageError("this scheme is above the exhaustive threshold; pass --seed")
        cert = system.check_contractibility(mode, cfg.seed, limit=cfg.limit)
        if not cert["certified"]:
            return {"kind": "counterexample", **cert}, 1
        return cert, 0
    raise UsageError(f"unknown command {cmd!r}")


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def _render(payload, fmt: str) -> str:
    if isinstance(payload, str):
        return payload
    if fmt == "text":
        return _text(payload) + "\n"
    return dump_json(payload)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        payload, status = execute(cfg)
    except UsageError as exc:
        sys.stdout.write(dump_json({"kind": "usage", "message": str(exc)}))
        return 2
    except LimitExceeded as exc:
        sys.stdout.write(dump_json({"kind": "limit-exceeded", "message": str(exc), "size": exc.size, "limit": exc.limit}))
        return 2
    except SchemeError as exc:
        sys.stdout.write(dump_json(exc.to_json()))
        return 2 if exc.kind in PARSE_KINDS else 1
    except LabellingError as exc:
        sys.stdout.write(dump_json(exc.to_json()))
        return 2
    except Failure as exc:
        sys.stdout.write(dump_json(exc.payload))
        return 1
    _emit(_render(payload, cfg.format), cfg.out)
    return status


if __name__ == "__main__":
    sys.exit(main())
