"""Command line entry point: ``primsolv <subcommand> [options]``.

Exit status: 0 on success, 1 when a theorem verdict fails, 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path

from . import constructions, gluck, verifier
from .constructions import CatalogLimits, ImportError_
from .perm import NotSolvableError

CSV_VERSION = "1"


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    max_field: int = 243
    max_dim: int = 6
    max_degree: int = 243
    odd_only: bool = False
    threshold: int = verifier.DEFAULT_THRESHOLD
    format: str = "json"
    output: str | None = None
    jobs: int = 1
    imports: list = field(default_factory=list)
    group: str | None = None
    seed: int | None = None

    def validate(self):
        for name in ("max_field", "max_dim", "max_degree"):
            if getattr(self, name) < 1:
                raise UsageError(f"--{name.replace('_', '-')} must be positive")
        if self.threshold < 0:
            raise UsageError("--threshold must be >= 0")
        if self.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        if self.format not in ("json", "csv", "md"):
            raise UsageError(f"unknown format {self.format!r}")

    def limits(self):
        return CatalogLimits(max_field=self.max_field, max_dim=self.max_dim,
                             max_degree=self.max_degree, imports=tuple(self.imports))


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-field", type=int, default=None,
                        help="largest p^m for semilinear families (default 243)")
    common.add_argument("--max-dim", type=int, default=None,
                        help="largest dimension for wreath products (default 6)")
    common.add_argument("--max-degree", type=int, default=None,
                        help="largest p^n for any catalog entry (default 243)")
    common.add_argument("--odd-only", action="store_true", default=None,
                        help="keep only odd-order entries")
    common.add_argument("-L", "--threshold", type=int, default=None,
                        help="good-orbit derived length threshold (default 9)")
    common.add_argument("--format", choices=("json", "csv", "md"), default=None)
    common.add_argument("-o", "--output", default=None, help="write here instead of stdout")
    common.add_argument("-j", "--jobs", type=int, default=None, help="worker processes")
    common.add_argument("--import", dest="imports", action="append", default=None,
                        metavar="FILE", help="add a JSON group file to the catalog")
    common.add_argument("--config", default=None,
                        help="JSON file with option defaults; flags win")
    common.add_argument("--seed", type=int, default=None,
                        help="enable randomized base search with this seed")

    parser = argparse.ArgumentParser(prog="primsolv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("catalog", parents=[common], help="list catalog entries and flags")
    for name, text in (("analyze", "per-orbit centralizer report"),
                       ("gluck", "power-set orbit table and Gluck checks")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--group", required=True, help="catalog label, group name or JSON file")
    sub.add_parser("verify", parents=[common], help="full theorem sweep")
    sub.add_parser("min-dl", parents=[common], help="two-point derived lengths")
    return parser


def make_config(args):
    """Merge flags over the optional config file over built-in defaults."""
    cfg = {}
    if args.config:
        try:
            cfg = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(cfg, dict):
            raise UsageError("config file must hold a JSON object")
    known = {f.name for f in fields(RunConfig)}
    unknown = set(cfg) - known
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    values = {"subcommand": args.subcommand}
    for f in fields(RunConfig):
        if f.name == "subcommand":
            continue
        flag = getattr(args, f.name, None)
        if flag is not None:
            values[f.name] = flag
        elif f.name in cfg:
            values[f.name] = cfg[f.name]
    conf = RunConfig(**values)
    conf.validate()
    return conf


# ---------------------------------------------------------------------------

_SEMILINEAR = re.compile(r"Gamma\((\d+)\^(\d+);d=(\d+),e=(\d+),c=(\d+)\)")


def resolve_group(name, conf):
    """A catalog entry from a file path, a group name or a catalog label."""
    path = Path(name)
    if name.endswith(".json") or path.is_file():
        if not path.is_file():
            raise UsageError(f"no such file: {name}")
        return constructions.import_group(path)
    mt = _SEMILINEAR.fullmatch(name)
    if mt:
        p, m, d, e, c = map(int, mt.groups())
        try:
            M = constructions.semilinear_subgroup(p, m, d, e, c)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return constructions.make_entry(name, M, "semilinear",
                                        params=dict(p=p, m=m, d=d, e=e, c=c))
    try:
        return constructions.make_entry(name, constructions.named_group(name), "named")
    except ValueError:
        pass
    for entry in load_catalog(conf):
        if entry.label == name:
            return entry
    raise UsageError(f"unknown group label {name!r}")


def load_catalog(conf):
    entries = constructions.catalog(conf.limits())
    if conf.odd_only:
        entries = [e for e in entries if e.odd_order]
    return entries


def _table(rows, header, fmt):
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue()
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    for row in rows:
        lines.append("| " + " | ".join("" if x is None else str(x) for x in row) + " |")
    return "\n".join(lines) + "\n"


def _dump(obj):
    return json.dumps(obj, indent=2) + "\n"


def cmd_catalog(conf):
    entries = load_catalog(conf)
    rows = []
    for e in entries:
        rows.append([e.label, e.provenance, e.degree, e.order(), e.irreducible,
                     e.odd_order, e.primitive_affine])
    header = ["label", "provenance", "degree", "order", "irreducible", "odd_order",
              "primitive_affine"]
    if conf.format == "json":
        return _dump({"entries": [dict(zip(header, r)) for r in rows]}), 0
    return _table(rows, header, conf.format), 0


def cmd_analyze(conf):
    entry = resolve_group(conf.group, conf)
    if not entry.is_matrix:
        raise UsageError(f"{conf.group} is a permutation group; analyze needs a matrix group")
    try:
        report = verifier.analyze(entry.group, conf.threshold, entry.label)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if conf.format == "json":
        return _dump({"schema_version": verifier.SCHEMA_VERSION, **report.to_dict()}), 0
    header = ["representative", "vector", "size", "centralizer_order", "derived_length",
              "abelian", "cyclic"]
    rows = [[r.representative, " ".join(map(str, r.vector)), r.size, r.centralizer_order,
             r.derived_length, r.abelian, r.cyclic] for r in report.rows]
    text = _table(rows, header, conf.format)
    if conf.format == "md":
        text = (f"## {report.label}\n\n|G| = {report.group_order}, dl(G) = "
                f"{report.group_derived_length}, r = {report.r}, good orbits = "
                f"{report.good_count} (threshold {report.threshold})\n\n" + text)
    return text, 0


def cmd_gluck(conf):
    entry = resolve_group(conf.group, conf)
    S = constructions.affine_group(entry.group) if entry.is_matrix else entry.group
    if S.degree > gluck.MAX_DEGREE:
        raise UsageError(f"degree {S.degree} exceeds the power-set bound {gluck.MAX_DEGREE}")
    table = gluck.SubsetOrbitTable(S)
    if conf.format == "csv":
        return table.to_csv(), 0
    verdicts = verifier.gluck_checks(S, gluck.MAX_DEGREE)
    failed = any(v.status == "fail" for v in verdicts)
    if conf.format == "json":
        return _dump({"label": entry.label, "degree": S.degree, "order": S.order(),
                      "orbits": len(table),
                      "regular_orbits": len(table.regular_ids()),
                      "verdicts": [v.to_dict() for v in verdicts]}), int(failed)
    rows = [[v.claim, v.status, json.dumps(v.witness)] for v in verdicts]
    return _table(rows, ["claim", "status", "witness"], "md"), int(failed)


def cmd_verify(conf):
    entries = load_catalog(conf)
    report = verifier.verify_catalog(entries, conf.threshold, conf.jobs, seed=conf.seed)
    code = 1 if verifier.report_failed(report) else 0
    if conf.format == "json":
        return _dump(report), code
    summary = report["summary"]
    rows = [[c, k["pass"], k["fail"], k["n/a"]] for c, k in summary["claims"].items()]
    text = _table(rows, ["claim", "pass", "fail", "n/a"], conf.format)
    if conf.format == "md":
        text = (f"# Verification sweep\n\n{len(entries)} entries, threshold "
                f"{conf.threshold}\n\n" + text +
                f"\nmax over catalog of min two-point derived length: "
                f"{summary['max_min_two_point_dl']}\n"
                f"untested at desk scale: {', '.join(summary['untested_at_desk_scale']) or '-'}\n")
        for f in summary["failures"]:
            text += f"\nFAIL {f['label']} {f['claim']} {json.dumps(f['witness'])}"
    return text, code


def cmd_min_dl(conf):
    rows = []
    for e in load_catalog(conf):
        if not e.primitive_affine:
            continue
        x, y, dl = verifier.min_two_point_dl(constructions.affine_group(e.group))
        rows.append([e.label, e.degree, e.order(), x, y, dl])
    header = ["label", "degree", "linear_order", "x", "y", "min_dl"]
    if conf.format == "json":
        return _dump({"rows": [dict(zip(header, r)) for r in rows],
                      "max_min_dl": max((r[-1] for r in rows), default=None)}), 0
    return _table(rows, header, conf.format), 0


COMMANDS = {"catalog": cmd_catalog, "analyze": cmd_analyze, "verify": cmd_verify,
            "gluck": cmd_gluck, "min-dl": cmd_min_dl}


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        conf = make_config(args)
        text, code = COMMANDS[conf.subcommand](conf)
    except UsageError as exc:
        print(f"primsolv: error: {exc}", file=sys.stderr)
        return 2
    except ImportError_ as exc:
        print(f"primsolv: error: malformed group file: {exc}", file=sys.stderr)
        return 2
    except (NotSolvableError, ValueError) as exc:
        print(f"primsolv: error: {exc}", file=sys.stderr)
        return 2
    if conf.output:
        Path(conf.output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
