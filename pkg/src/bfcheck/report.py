"""Report documents: line-delimited JSON for machines, plain text for people.

Machine output is one JSON object per line, keys sorted, no whitespace::

    {"record":"header","schema_version":1,"tool":"bfcheck","tool_version":...,"command":...,"inputs":[...]}
    {"record":"group","index":0,"spec":...,"status":...,"report":{...},"error":null}
    {"record":"row", ...}                      (sharpness table rows)
    {"record":"summary","passed":...,"skipped":...,"violations":...,"errors":...}
    {"record":"timing","seconds":...}          (only with --timing)

Timing is opt-in so that runs with identical inputs produce identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import __version__

SCHEMA_VERSION = 1

OP_SYMBOLS = {"<=": "≤", ">=": "≥", "==": "=", "<": "<", ">": ">"}


@dataclass
class ReportDocument:
    command: str
    inputs: list[str]
    entries: list[dict] = field(default_factory=list)
    rows: list[dict] = field(default_factory=list)
    timing: float | None = None
    tool_version: str = __version__
    schema_version: int = SCHEMA_VERSION

    @property
    def summary(self) -> dict:
        statuses = [e["status"] for e in self.entries]
        return {
            "passed": statuses.count("pass"),
            "skipped": statuses.count("skipped"),
            "violations": statuses.count("violation"),
            "errors": statuses.count("error") + statuses.count("internal-error"),
            "internal_errors": statuses.count("internal-error"),
        }

    def to_lines(self, include_timing: bool = False) -> list[str]:
        out = [
            _dump({
                "record": "header",
                "schema_version": self.schema_version,
                "tool": "bfcheck",
                "tool_version": self.tool_version,
                "command": self.command,
                "inputs": self.inputs,
            })
        ]
        for i, e in enumerate(self.entries):
            out.append(_dump({"record": "group", "index": i, **e}))
        for row in self.rows:
            out.append(_dump({"record": "row", **row}))
        out.append(_dump({"record": "summary", **self.summary}))
        if include_timing and self.timing is not None:
            out.append(_dump({"record": "timing", "seconds": round(self.timing, 6)}))
        return out

    @classmethod
    def from_lines(cls, lines) -> "ReportDocument":
        doc = None
        for line in lines:
            if not line.strip():
                continue
            rec = json.loads(line)
            kind = rec.pop("record")
            if kind == "header":
                doc = cls(
                    command=rec["command"],
                    inputs=rec["inputs"],
                    tool_version=rec["tool_version"],
                    schema_version=rec["schema_version"],
                )
            elif doc is None:
                raise ValueError("report does not start with a header record")
            elif kind == "group":
                rec.pop("index")
                doc.entries.append(rec)
            elif kind == "row":
                doc.rows.append(rec)
            elif kind == "timing":
                doc.timing = rec["seconds"]
            elif kind == "summary":
                if rec != doc.summary:
                    raise ValueError("summary record does not match the group records")
        if doc is None:
            raise ValueError("empty report")
        return doc


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# -- text rendering -------------------------------------------------------------


def format_check(c: dict) -> str:
    name = c["name"][:1].upper() + c["name"][1:]
    verdict = "PASS" if c["ok"] else "FAIL"
    if c.get("lhs") is None:
        line = f"{name}: {verdict}"
    else:
        line = f"{name}: {c['lhs']} {OP_SYMBOLS[c['op']]} {c['rhs']} {verdict}"
    if c.get("detail"):
        line += f" ({c['detail']})"
    return line


def render_group(entry: dict) -> list[str]:
    status = entry["status"]
    rep = entry.get("report")
    if rep is None:
        return [f"{entry['spec']}: {status.upper()}: {entry.get('error')}"]
    lines = [f"{entry['spec']} ({rep['backend']}, |G| = {rep['order']})"]
    series = " > ".join(str(x) for x in rep["derived_series"])
    lines.append(f"  branch: {rep['branch']}   solvable: {'yes' if rep['solvable'] else 'no'}   derived series: {series}")
    lines.append(f"  |Z| = {rep['center_order']}   k(G) = {rep['class_count']}")
    claim = rep.get("claim")
    if claim:
        lines.append(
            f"  t = {claim['t_label']}   |C_G(t)| = {claim['centralizer_t']}   |t^G| = {claim['class_size_t']}"
            f"   i(Z) = {claim['central_involutions']}   |W| = {claim['W_count']}"
        )
        lines += ["    " + format_check(c) for c in claim["checks"]]
    wit = rep.get("witness")
    if wit:
        lines.append(f"  x = {wit['x_label']}   |C_G(x)| = {wit['max_centralizer']}")
        lines += ["    " + format_check(c) for c in wit["checks"]]
    lines += ["    " + format_check(c) for c in rep.get("extra_checks", ())]
    if rep.get("all_t"):
        a = rep["all_t"]
        lines.append(f"  all t: {a['passed']}/{a['checked']} passed")
    lines.append(f"  verdict: {status.upper()}")
    return lines


def render_summary(doc: ReportDocument) -> str:
    s = doc.summary
    return (
        f"{len(doc.entries)} group(s): {s['passed']} passed, {s['violations']} violations, "
        f"{s['errors']} errors, {s['skipped']} skipped (capacity)"
    )
