"""Regenerate the published tables and region censuses and diff them against golden data.

Seven artifacts are produced: the four bound tables, the region tables of
P_4 and BP_3, and the P_3(2) census together with its K_{3,3} witness.
Each mismatch is reported per cell.  Cells listed under ``errata`` in the
golden file are known misprints; they are reported but only fail the run
in strict mode.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .bounds import TABLE_COLUMNS, make_table
from .embedding import canonical_signature, construction_rotation, expand_word, trace_faces
from .graph import build_graph
from .labeling import algra
from .minor import find_k33, verify_k33, witness_json
from .perm import GroupParams

ARTIFACTS = ("table1", "table2", "table3", "table4", "regions_pn4", "regions_bpn3", "census_pmn32")
GROUPS = {
    "tables": ARTIFACTS[:4],
    "regions": ARTIFACTS[4:6],
    "census": ARTIFACTS[6:],
}


def load_golden(path=None) -> dict:
    if path is None:
        text = resources.files("pancake_genus").joinpath("data/golden.json").read_text()
    else:
        text = Path(path).read_text()
    return json.loads(text)


@dataclass
class Diff:
    artifact: str
    cell: dict
    expected: object
    actual: object
    erratum: str | None = None

    def to_json(self) -> dict:
        out = {"artifact": self.artifact, "cell": self.cell, "expected": self.expected, "actual": self.actual}
        if self.erratum:
            out["erratum"] = self.erratum
        return out

    def __str__(self):
        tag = " (documented erratum)" if self.erratum else ""
        where = ", ".join(f"{k}={v}" for k, v in self.cell.items())
        return f"{self.artifact} [{where}]: expected {self.expected!r}, got {self.actual!r}{tag}"


@dataclass
class ReproReport:
    artifacts: dict = field(default_factory=dict)
    diffs: list[Diff] = field(default_factory=list)

    @property
    def mismatches(self) -> list[Diff]:
        return [d for d in self.diffs if not d.erratum]

    @property
    def errata(self) -> list[Diff]:
        return [d for d in self.diffs if d.erratum]

    def ok(self, strict: bool = False) -> bool:
        return not (self.diffs if strict else self.mismatches)

    def summary(self) -> dict:
        return {
            "artifacts": sorted(self.artifacts),
            "mismatches": [d.to_json() for d in self.mismatches],
            "errata": [d.to_json() for d in self.errata],
        }


def _erratum(golden, artifact, cell):
    for e in golden.get("errata", []):
        if e["artifact"] == artifact and e["cell"] == cell:
            return e["note"]
    return None


def _table_artifact(which, golden, report):
    name = f"table{which}"
    cols = list(TABLE_COLUMNS[which])
    rows = [list(r) for r in make_table(which)]
    report.artifacts[name] = {"table": which, "columns": cols, "rows": rows}
    want = golden["tables"][str(which)]
    if len(want["rows"]) != len(rows):
        report.diffs.append(Diff(name, {"rows": "count"}, len(want["rows"]), len(rows)))
    nkey = 2 if which == 3 else 1
    for exp, got in zip(want["rows"], rows):
        for col, e, a in zip(cols, exp, got):
            if e != a:
                cell = dict(zip(cols[:nkey], exp[:nkey]), column=col)
                report.diffs.append(Diff(name, cell, e, a, _erratum(golden, name, cell)))


def _graph_and_census(entry):
    g = build_graph(GroupParams(entry["m"], entry["n"]))
    labeling = algra(g) if g.m <= 2 else None
    return g, trace_faces(g, construction_rotation(g, labeling))


def _expected_signatures(entry, m):
    counts = Counter()
    if "rows" in entry:
        for row in entry["rows"]:
            counts[canonical_signature(expand_word(row["word"]), m)] += 1
    for item in entry.get("signatures", []):
        counts[canonical_signature(expand_word(item["word"]), m)] += item["count"]
    return counts


def _check_census(name, entry, g, census, golden, report):
    for key, actual in (("regions", census.region_count), ("genus", census.embedding_genus)):
        if entry[key] != actual:
            report.diffs.append(Diff(name, {"field": key}, entry[key], actual))
    want = _expected_signatures(entry, g.m)
    got = census.signature_counts()
    for sig in sorted(set(want) | set(got)):
        if want[sig] != got[sig]:
            report.diffs.append(Diff(name, {"signature": sig}, want[sig], got[sig]))


def seed_row_check(g, census, edge, word) -> str | None:
    """Why a printed (seed edge, boundary word) row is inconsistent, or None.

    Seed edges are read as undirected: either orientation may carry the face.
    """
    try:
        a, b = (g.index(v) for v in edge)
    except (KeyError, ValueError) as exc:
        return f"unknown vertex: {exc}"
    sig = canonical_signature(expand_word(word), g.m)
    try:
        sides = [census.face_at(g, a, b).signature, census.face_at(g, b, a).signature]
    except KeyError:
        return "not an edge"
    if sig in sides:
        return None
    return "edge lies on " + " and ".join(sides)


def _region_artifact(name, golden, report):
    entry = golden["censuses"][name]
    g, census = _graph_and_census(entry)
    _check_census(name, entry, g, census, golden, report)
    rows = []
    for i, row in enumerate(entry["rows"], start=1):
        problem = seed_row_check(g, census, row["edge"], row["word"])
        rows.append({"edge": row["edge"], "word": row["word"], "consistent": problem is None, "detail": problem})
        if problem:
            cell = {"row": i, "column": "edge"}
            report.diffs.append(Diff(name, cell, row["word"], problem, _erratum(golden, name, cell)))
    out = census.to_json(g, seeds=True)
    out["graph"] = g.name
    out["printed_rows"] = rows
    report.artifacts[name] = out


def _census_artifact(name, golden, report):
    entry = golden["censuses"][name]
    g, census = _graph_and_census(entry)
    _check_census(name, entry, g, census, golden, report)
    witness = find_k33(g, seeds=entry["minor_seeds"])
    check = verify_k33(g, witness)
    if not check:
        report.diffs.append(Diff(name, {"field": "minor"}, "verified K_3,3 minor", check.problems))
    out = census.to_json(g)
    out["graph"] = g.name
    out["minor"] = witness_json(g, witness)
    # an embedding of genus 1 plus a non-planarity certificate pins the genus
    out["genus_certified"] = census.embedding_genus if (check and census.embedding_genus == 1) else None
    report.artifacts[name] = out


def reproduce(only=None, golden=None) -> ReproReport:
    """Rebuild the selected artifacts (all by default) and diff them."""
    if not isinstance(golden, dict):
        golden = load_golden(golden)
    wanted = set(ARTIFACTS)
    if only:
        wanted = set()
        for item in ([only] if isinstance(only, str) else only):
            if item in GROUPS:
                wanted.update(GROUPS[item])
            elif item in ARTIFACTS:
                wanted.add(item)
            else:
                raise ValueError(f"unknown artifact or group {item!r}")
    report = ReproReport()
    for which in (1, 2, 3, 4):
        if f"table{which}" in wanted:
            _table_artifact(which, golden, report)
    for name in ("regions_pn4", "regions_bpn3"):
        if name in wanted:
            _region_artifact(name, golden, report)
    if "census_pmn32" in wanted:
        _census_artifact("census_pmn32", golden, report)
    return report


def write_bundle(report: ReproReport, out_dir) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, data in sorted(report.artifacts.items()):
        p = out / f"{name}.json"
        p.write_text(json.dumps(data, sort_keys=True, indent=1) + "\n")
        paths.append(p)
    p = out / "report.json"
    p.write_text(json.dumps(report.summary(), sort_keys=True, indent=1) + "\n")
    paths.append(p)
    return paths
