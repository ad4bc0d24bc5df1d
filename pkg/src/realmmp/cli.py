"""Command-line front end.

    realmmp classify  GERM...
    realmmp blowup    GERM... --weights 1,1,1,1
    realmmp extract   GERM...
    realmmp resolve   GERM... [--prefer low|high]
    realmmp replay    SCRIPT...

A GERM is a file in the germ format or an inline equation (``;`` separates
lines). Exit status: 0 ok, 1 error, 2 unresolved verdict.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from .blowup import (BlowupWeights, chart_singularity_report, exceptional_divisor_report,
                     weighted_blowup)
from .germ import Germ, classify_terminal, parse_germ
from .gextract import UNRESOLVED, g_extraction_decide
from .topology import replay_mmp, resolve_real

VERBS = ("classify", "blowup", "extract", "resolve", "replay")
EXIT_OK, EXIT_ERROR, EXIT_UNRESOLVED = 0, 1, 2


@dataclass
class Request:
    verb: str
    inputs: list
    weights: tuple | None = None
    format: str = "text"
    truncation: int | None = None
    prefer: str = "low"

    def __post_init__(self):
        if self.verb not in VERBS:
            raise ValueError(f"unknown verb {self.verb!r}")
        if not self.inputs:
            raise ValueError(f"{self.verb} needs at least one input")
        if self.format not in ("text", "structured"):
            raise ValueError(f"unknown format {self.format!r}")


@dataclass
class Report:
    verb: str
    input: str
    verdict: str = ""
    case_tag: str = ""
    citation: str = ""
    discrepancies: list = field(default_factory=list)
    charts: list = field(default_factory=list)
    ledger: dict | None = None
    details: dict = field(default_factory=dict)
    error: str = ""
    status: int = EXIT_OK

    def to_dict(self):
        d = {"verb": self.verb, "input": self.input, "verdict": self.verdict,
             "case_tag": self.case_tag, "citation": self.citation,
             "discrepancies": self.discrepancies, "charts": self.charts,
             "ledger": self.ledger, "status": self.status}
        d.update(self.details)
        if self.error:
            d["error"] = self.error
        return d

    def to_text(self) -> str:
        lines = [f"== {self.verb} {self.input}"]
        if self.error:
            lines.append(f"error: {self.error}")
            return "\n".join(lines)
        lines.append(f"verdict: {self.verdict}")
        lines.append(f"case: {self.case_tag}")
        if self.citation:
            lines.append(f"citation: {self.citation}")
        for d in self.discrepancies:
            lines.append(f"discrepancy: {_flat(d)}")
        for c in self.charts:
            lines.append(f"chart: {c}")
        for key, val in self.details.items():
            if isinstance(val, list):
                for v in val:
                    lines.append(f"{key}: {_flat(v)}")
            elif val not in (None, ""):
                lines.append(f"{key}: {_flat(val)}")
        if self.ledger is not None:
            lines.append(f"ledger: {json.dumps(self.ledger, sort_keys=True)}")
        return "\n".join(lines)


def _flat(v):
    return json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else str(v)


def read_input(ref: str) -> tuple[str, str]:
    """(label, text) for a path or an inline germ."""
    if os.path.isfile(ref):
        with open(ref, encoding="utf-8") as fh:
            return ref, fh.read()
    return ref, ref.replace(";", "\n")


def parse_germ_file(text: str, truncation: int | None = None):
    """Germ and optional weights from the germ file format."""
    return parse_germ(text, truncation)


def _classify(germ: Germ, rep: Report):
    cls = classify_terminal(germ)
    rep.verdict = "terminal" if cls.terminal else cls.tag
    rep.case_tag = cls.tag
    rep.citation = f"normal form table, row {cls.tag}" if cls.terminal else ""
    rep.details["classification"] = cls.describe()
    if cls.witnesses:
        rep.details["witnesses"] = list(cls.witnesses)


def _blowup(germ: Germ, w, rep: Report):
    res = weighted_blowup(germ, w)
    cls = classify_terminal(germ)
    rep.verdict = "blown-up"
    rep.case_tag = cls.tag
    rep.discrepancies = [{"weights": list(res.weights.weights), "weight_formula": str(res.discrepancy),
                          "jacobian": None if res.discrepancy_jacobian is None
                          else str(res.discrepancy_jacobian),
                          "jacobian_status": res.jacobian_status}]
    div = exceptional_divisor_report(res)
    rep.details["exceptional_divisor"] = {
        "equation": str(div.equation), "multiplicity": div.multiplicity, "shape": div.shape,
        "geometrically_irreducible": div.geometrically_irreducible, "k_irreducible": div.k_irreducible}
    points = []
    for ch in res.charts:
        rep.charts.append(ch.describe())
        sr = chart_singularity_report(ch)
        for p in sr.points:
            points.append({"chart": p.chart, "kind": p.kind, "real": p.real, "stabilizer": p.stabilizer,
                           "index": p.index, "note": p.note,
                           "coordinates": None if p.coordinates is None else [str(c) for c in p.coordinates],
                           "germ": str(p.germ) if p.germ is not None else None,
                           "class": p.classification.tag if p.classification else None})
        for c in sr.fixed_curves + sr.singular_curves + sr.flags:
            points.append({"chart": ch.source_variables[ch.index], "kind": "locus", "note": c})
    rep.details["points"] = points


def _extract(germ: Germ, rep: Report):
    dec = g_extraction_decide(germ)
    d = dec.to_dict()
    rep.verdict = dec.verdict
    rep.case_tag = dec.case
    rep.citation = dec.citation
    rep.discrepancies = [{"weights": list(e.weights), "discrepancy": str(e.discrepancy)}
                         for e in dec.extractions]
    if dec.witness is not None:
        rep.discrepancies.append({"weights": list(dec.witness.weights),
                                  "discrepancy": str(dec.witness.discrepancy), "witness": True})
    rep.details.update({k: d[k] for k in ("reason", "extractions", "witness", "notes") if d[k]})
    if dec.verdict == UNRESOLVED:
        rep.status = EXIT_UNRESOLVED


def _resolve(germ: Germ, prefer: str, rep: Report):
    res = resolve_real(germ, prefer=prefer)
    cls = classify_terminal(germ)
    rep.case_tag = cls.tag
    rep.verdict = "resolved" if res.complete else "partial"
    rep.discrepancies = [{"weights": list(s.weights), "discrepancy": str(s.discrepancy)} for s in res.steps]
    rep.charts = res.intermediate_equations
    rep.ledger = dict(res.ledger.to_dict(), delta=res.delta)
    rep.details["surfaces"] = [s.surface for s in res.steps]
    rep.details["stop_reason"] = res.stop_reason
    if not res.complete and res.stop_reason.startswith(f"verdict {UNRESOLVED}"):
        rep.verdict = UNRESOLVED
        rep.status = EXIT_UNRESOLVED


def _replay(text: str, base_dir: str, rep: Report):
    res = replay_mmp(text, base_dir=base_dir)
    rep.verdict = "replayed"
    rep.case_tag = "script"
    rep.ledger = dict(res.ledger.to_dict(), delta=res.delta)
    rep.details["steps"] = [f"{s.kind} {s.germ} {'' if s.weights is None else s.weights} -> {s.surface}".strip()
                            for s in res.steps]


def run(request: Request) -> tuple[int, list]:
    """Evaluate every input; the exit status is the worst one."""
    reports = []
    for ref in request.inputs:
        label, text = ("", "")
        rep = Report(request.verb, ref)
        try:
            label, text = read_input(ref)
            rep.input = label
            if request.verb == "replay":
                base = os.path.dirname(os.path.abspath(label)) if os.path.isfile(label) else os.getcwd()
                _replay(text, base, rep)
            else:
                germ, file_weights = parse_germ_file(text, request.truncation)
                if request.verb == "classify":
                    _classify(germ, rep)
                elif request.verb == "blowup":
                    w = request.weights or file_weights
                    if w is None:
                        raise ValueError("blowup needs --weights or a 'weights' line")
                    _blowup(germ, w, rep)
                elif request.verb == "extract":
                    _extract(germ, rep)
                else:
                    _resolve(germ, request.prefer, rep)
        except Exception as exc:  # every failure maps to exit 1 with a diagnostic
            rep.error = f"{type(exc).__name__}: {exc}"
            rep.status = EXIT_ERROR
        reports.append(rep)
    statuses = {r.status for r in reports}
    status = EXIT_ERROR if EXIT_ERROR in statuses else EXIT_UNRESOLVED if EXIT_UNRESOLVED in statuses \
        else EXIT_OK
    return status, reports


def _corpus(path: str) -> list:
    if not os.path.isdir(path):
        raise ValueError(f"corpus {path} is not a directory")
    return [os.path.join(path, f) for f in sorted(os.listdir(path))
            if os.path.isfile(os.path.join(path, f)) and not f.startswith(".")]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="realmmp", description="Real terminal 3-fold singularities.")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("inputs", nargs="*", help="germ or script files, or inline equations")
    p.add_argument("--weights", type=lambda s: BlowupWeights.parse(s).weights, default=None,
                   help="blow-up weights a,b,c,d")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--truncation", type=int, default=None,
                   help="treat the equation as known only below this total degree")
    p.add_argument("--corpus", default=None, help="directory of inputs (batch mode)")
    p.add_argument("--prefer", choices=("low", "high"), default="low",
                   help="resolve: which g-extraction to take when several exist")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        inputs = list(args.inputs) + (_corpus(args.corpus) if args.corpus else [])
        req = Request(args.verb, inputs, args.weights, args.format, args.truncation, args.prefer)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    status, reports = run(req)
    for r in reports:
        if req.format == "structured":
            print(json.dumps(r.to_dict(), sort_keys=True))
        else:
            print(r.to_text())
        if r.error:
            print(f"{r.input}: {r.error}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
