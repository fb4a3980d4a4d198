"""Command line entry point.

Exit status is 0 on success, 1 when a verification fails and 2 on a
usage error.  Output is deterministic: JSON is written with sorted keys
and every listing has a fixed order.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import bott, horo, oddsymp
from .rootsys import build_root_system, UnsupportedRootSystem, Weight

COMMANDS = (
    "basis",
    "hasse",
    "qchevalley",
    "semisimple",
    "oddsymp-present",
    "oddsymp-verify",
    "bott",
    "verify-claims",
)
FORMATS = ("json", "dot", "markdown")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    case: int | None = None
    n: int | None = None
    m: int | None = None
    q: Fraction | None = None
    format: str | None = None
    out: str | None = None
    claims: str | None = None
    lie: str = "G2"
    weight: tuple[int, ...] | None = None
    quantum: bool = False
    verify: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.format is None:
            self.format = "dot" if self.command == "hasse" else "json"
        if self.format not in FORMATS:
            raise UsageError(f"unknown format {self.format!r}")
        if self.format == "dot" and self.command != "hasse":
            raise UsageError("dot output is only available for hasse")


def _rational(text) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"--q expects a rational a/b, got {text!r}") from exc


def _weight(text) -> tuple[int, ...]:
    if isinstance(text, (list, tuple)):
        return tuple(int(c) for c in text)
    try:
        return tuple(int(c) for c in str(text).split(","))
    except ValueError as exc:
        raise UsageError(f"--weight expects comma separated integers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="horo", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--case", type=int, choices=range(1, 6))
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--q", help="rational value a/b for the quantum parameter")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--out", help="write output here instead of standard output")
    p.add_argument("--claims", help="JSON claims file for verify-claims")
    p.add_argument("--config", help="JSON file whose keys override the flags")
    p.add_argument("--lie", help="root system for bott, e.g. G2, B3, C4, F4")
    p.add_argument("--weight", help="weight for bott in fundamental weight coordinates, e.g. --weight=-2,1")
    p.add_argument("--quantum", action="store_true", help="hasse: include q-edges")
    p.add_argument("--verify", action="store_true", help="qchevalley: compare with the reference table")
    return p


def config_from_args(argv) -> RunConfig:
    parser = build_parser()
    ns = parser.parse_args(argv)
    values = {k: v for k, v in vars(ns).items() if v is not None and k != "config"}
    if ns.config:
        try:
            with open(ns.config) as fh:
                override = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {ns.config}: {exc}") from exc
        if not isinstance(override, dict):
            raise UsageError("config file must hold a JSON object")
        values.update(override)
    if "q" in values:
        values["q"] = _rational(values["q"])
    if "weight" in values:
        values["weight"] = _weight(values["weight"])
    known = set(RunConfig.__dataclass_fields__)
    unknown = set(values) - known
    if unknown:
        raise UsageError("unknown config keys: " + ", ".join(sorted(unknown)))
    return RunConfig(**values)


# ---------------------------------------------------------------------------
# commands


def _variety(cfg: RunConfig) -> horo.HoroVariety:
    if cfg.case is None:
        raise UsageError("--case is required")
    try:
        if cfg.case == 1:
            return horo.build_variety(1, 3 if cfg.n is None else cfg.n)
        if cfg.case == 3:
            return horo.build_variety(3, 3 if cfg.n is None else cfg.n, 3 if cfg.m is None else cfg.m)
        return horo.build_variety(cfg.case)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _cmd_basis(cfg):
    X = _variety(cfg)
    rows = {
        tag: [{"label": horo.label_name(X, a), "degree": horo.degree(X, a)} for a in horo.cohomology_basis(X, tag)]
        for tag in ("A", "B")
    }
    doc = {
        "variety": X.name,
        "dim": X.dim_X,
        "c1": X.c1_X,
        "betti": horo.betti_numbers(X),
        "basis_A": rows["A"],
        "basis_B": rows["B"],
    }
    if cfg.format == "markdown":
        lines = [f"### {X.name}", "", f"dim {X.dim_X}, c1 {X.c1_X}, betti {doc['betti']}", ""]
        lines += ["| degree | basis A | basis B |", "|---|---|---|"]
        for a, b in zip(rows["A"], sorted(rows["B"], key=lambda r: r["degree"])):
            lines.append(f"| {a['degree']} | {a['label']} | {b['label']} |")
        return "\n".join(lines) + "\n", 0
    return horo.dumps(doc), 0


def _cmd_hasse(cfg):
    X = _variety(cfg)
    graph = horo.export_hasse(X, quantum=cfg.quantum)
    if cfg.format == "dot":
        return horo.hasse_to_dot(graph), 0
    if cfg.format == "markdown":
        lines = [f"### {graph['variety']}", "", "| source | target | coeff | qpow |", "|---|---|---|---|"]
        lines += [f"| {e['source']} | {e['target']} | {e['coeff']} | {e['qpow']} |" for e in graph["edges"]]
        return "\n".join(lines) + "\n", 0
    return horo.dumps(graph), 0


def _cmd_qchevalley(cfg):
    X = _variety(cfg)
    text = horo.table_to_markdown(X) if cfg.format == "markdown" else horo.dumps(horo.table_to_json(X))
    if not cfg.verify:
        return text, 0
    entry = horo.golden_entry(X.case_tag, X.params)
    if entry is None:
        raise UsageError(f"no reference table for {X.name}")
    diff = horo.golden_diff(X, entry)
    for d in diff:
        print(f"mismatch at table line {d['line']}: h * {d['lhs']}: table {d['expected']}, engine {d['engine']}", file=sys.stderr)
    return text, 1 if diff else 0


def _cmd_semisimple(cfg):
    X = _variety(cfg)
    q = Fraction(1) if cfg.q is None else cfg.q
    rep = horo.semisimplicity_report(X, q)
    if cfg.format == "markdown":
        lines = [f"### {rep['variety']} at q = {rep['q']}", ""] + [f"- {k}: {rep[k]}" for k in sorted(rep) if k not in ("variety", "q")]
        return "\n".join(lines) + "\n", 0
    return horo.dumps(rep), 0


def _odd_params(cfg):
    if cfg.n is None or cfg.m is None:
        raise UsageError("--n and --m are required")
    if cfg.n < 2 or not 2 <= cfg.m <= cfg.n:
        raise UsageError("need n >= 2 and 2 <= m <= n")
    return cfg.n, cfg.m


def _cmd_oddsymp_present(cfg):
    n, m = _odd_params(cfg)
    doc = oddsymp.presentation_json(n, m)
    if cfg.format == "markdown":
        lines = [f"### QH(IG({m}, {2 * n + 1}))", "", f"rank {doc['rank']}, hilbert {doc['hilbert']}", ""]
        for rel in doc["relations"]:
            lhs = oddsymp.d_poly if rel["name"][0] == "d" else oddsymp.b_poly
            expr = str(lhs(int(rel["name"][1:]), n, m)).replace("t", "tau'")
            lines.append(f"- {rel['name']}: {expr} = {rel['rhs']}")
        return "\n".join(lines) + "\n", 0
    return horo.dumps(doc), 0


def _cmd_oddsymp_verify(cfg):
    n, m = _odd_params(cfg)
    flat = oddsymp.flatness_report(n, m)
    hilb = oddsymp.hilbert_series(n, m)
    sets = oddsymp.enumerate_index_sets(m, 2 * n + 1, "odd")
    round_trip = all(
        oddsymp.partition_to_index(oddsymp.index_to_partition(s), n, m, "odd") == s for s in sets
    )
    doc = {
        "n": n,
        "m": m,
        "ranks": flat["ranks"],
        "index_sets": flat["index_sets"],
        "free": flat["free"],
        "hilbert": hilb,
        "palindromic": hilb == hilb[::-1],
        "bijection_round_trip": round_trip,
    }
    doc["pass"] = doc["free"] and doc["palindromic"] and round_trip
    if cfg.format == "markdown":
        lines = [f"### IG({m}, {2 * n + 1})", ""] + [f"- {k}: {doc[k]}" for k in sorted(doc)]
        return "\n".join(lines) + "\n", 0 if doc["pass"] else 1
    return horo.dumps(doc), 0 if doc["pass"] else 1


def _cmd_bott(cfg):
    if cfg.weight is None:
        raise UsageError("--weight is required")
    lie = cfg.lie
    name, rank = (lie, 2) if lie == "G2" else (lie, 4) if lie == "F4" else (lie[:1], None)
    try:
        rank = rank if rank is not None else int(lie[1:])
        rs = build_root_system(name, rank)
    except (ValueError, UnsupportedRootSystem) as exc:
        raise UsageError(f"unsupported root system {lie!r}") from exc
    if len(cfg.weight) != rs.rank:
        raise UsageError(f"{lie} weights need {rs.rank} coordinates")
    res = bott.line_bundle_cohomology(rs, Weight(cfg.weight))
    doc = {"lie": lie, "weight": list(cfg.weight), **res.as_dict()}
    if cfg.format == "markdown":
        if res.outcome == "all_zero":
            return f"H^*(G/B, L{list(cfg.weight)}) = 0\n", 0
        return f"H^{res.degree}(G/B, L{list(cfg.weight)}) = V{list(res.highest_weight.coords)}, dimension {res.dimension}\n", 0
    return horo.dumps(doc), 0


def _cmd_verify_claims(cfg):
    try:
        claims = bott.load_claims(cfg.claims)
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot load claims: {exc}") from exc
    verdicts = bott.verify_claims(claims)
    refuted = [v for v in verdicts if v.verdict == "refuted"]
    for v in refuted:
        print(f"refuted: {v.claim.name} ({v.reason})", file=sys.stderr)
    if cfg.format == "markdown":
        text = bott.report_to_markdown(verdicts)
    else:
        counts = {k: sum(v.verdict == k for v in verdicts) for k in ("verified", "refuted", "not_decidable")}
        text = horo.dumps({"summary": counts, "claims": [v.as_dict() for v in verdicts]})
    return text, 1 if refuted else 0


_DISPATCH = {
    "basis": _cmd_basis,
    "hasse": _cmd_hasse,
    "qchevalley": _cmd_qchevalley,
    "semisimple": _cmd_semisimple,
    "oddsymp-present": _cmd_oddsymp_present,
    "oddsymp-verify": _cmd_oddsymp_verify,
    "bott": _cmd_bott,
    "verify-claims": _cmd_verify_claims,
}


def run(cfg: RunConfig) -> int:
    try:
        text, status = _DISPATCH[cfg.command](cfg)
    except horo.UnsupportedCase as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


def main(argv=None) -> int:
    try:
        cfg = config_from_args(sys.argv[1:] if argv is None else argv)
        return run(cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        # argparse exits 0 for --help and 2 for bad flags
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
