"""Instance files, outcome files and report rendering.

The canonical instance format is one JSON document::

    {"categories": {"vr": ["c1", "e"], "ews": "e", "traits": ["t"]},
     "quotas": {"total": 3, "per_category": {"c1": 1, "e": 1}, "hr": {"o": {"t": 1}}},
     "individuals": [{"id": "i1", "score": "80.5", "memberships": ["c1"],
                      "traits": [], "ews_eligible": false}]}

``individuals`` may instead be a path (relative to the JSON file) to a CSV
file with columns ``id,score,memberships,traits,ews_eligible``; set-valued
columns are separated by ``;``.
"""
from __future__ import annotations

import csv
import json
from decimal import Decimal, InvalidOperation
from pathlib import Path
from typing import Mapping, Optional

from .model import (OPEN, TIE_REJECT, CategorySpace, Individual, Instance, ReservationVector,
                    validate_instance)
from .rules import ChoiceOutcome

SCHEMA_VERSION = "1.0"
CSV_COLUMNS = ("id", "score", "memberships", "traits", "ews_eligible")
_TRUE = {"1", "true", "yes", "y"}
_FALSE = {"", "0", "false", "no", "n"}


class InstanceError(ValueError):
    """Unreadable or invalid input. ``problems`` holds one located message each."""

    def __init__(self, problems, source="<input>"):
        self.problems = list(problems) if not isinstance(problems, str) else [problems]
        self.source = source
        super().__init__("\n".join(f"{source}: {p}" for p in self.problems))


class _Reader:
    """Collects type errors with the JSON path where they happened."""

    def __init__(self):
        self.problems = []

    def fail(self, path, msg):
        self.problems.append(f"{path}: {msg}")

    def get(self, obj, key, path, kind, default=None, required=True):
        if key not in obj:
            if required:
                self.fail(path, f"missing field {key!r}")
            return default
        value = obj[key]
        if not _is(value, kind):
            self.fail(f"{path}.{key}", f"expected {_kind_name(kind)}, got {type(value).__name__}")
            return default
        return value

    def strings(self, values, path):
        out = []
        for k, x in enumerate(values):
            if isinstance(x, str):
                out.append(x)
            else:
                self.fail(f"{path}[{k}]", f"expected string, got {type(x).__name__}")
        return out

    def count(self, value, path):
        if not _is(value, int) or value < 0:
            self.fail(path, f"expected a non-negative integer, got {value!r}")
            return 0
        return value


def _is(value, kind):
    if kind is int:
        return isinstance(value, int) and not isinstance(value, bool)
    return isinstance(value, kind)


def _kind_name(kind):
    names = {list: "array", dict: "object", str: "string", int: "integer", bool: "boolean"}
    if isinstance(kind, tuple):
        return " or ".join(names.get(k, k.__name__) for k in kind)
    return names.get(kind, kind.__name__)


def _score(value, path, r):
    if isinstance(value, bool) or not isinstance(value, (str, int, float)):
        r.fail(path, f"expected a decimal string, got {type(value).__name__}")
        return None
    try:
        d = Decimal(value if not isinstance(value, float) else repr(value))
    except InvalidOperation:
        r.fail(path, f"not a decimal number: {value!r}")
        return None
    if not d.is_finite():
        r.fail(path, f"not a finite number: {value!r}")
        return None
    return d


def _categories(data, r):
    cats = r.get(data, "categories", "$", dict, {})
    vr = r.strings(r.get(cats, "vr", "$.categories", list, []), "$.categories.vr")
    ews = r.get(cats, "ews", "$.categories", (str, type(None)), None, required=False)
    traits = r.strings(r.get(cats, "traits", "$.categories", list, [], required=False),
                       "$.categories.traits")
    open_id = r.get(cats, "open", "$.categories", str, OPEN, required=False)
    return CategorySpace(tuple(vr), ews, tuple(traits), open_id)


def _quotas(data, cats, r):
    q = r.get(data, "quotas", "$", dict, {})
    total = r.count(r.get(q, "total", "$.quotas", int, 0), "$.quotas.total")
    per = r.get(q, "per_category", "$.quotas", dict, {})
    vr = {}
    for c, n in per.items():
        path = f"$.quotas.per_category.{c}"
        if c not in cats.vr:
            r.fail(path, f"unknown category {c!r}")
        vr[c] = r.count(n, path)
    hr = {}
    for v, ts in r.get(q, "hr", "$.quotas", dict, {}, required=False).items():
        path = f"$.quotas.hr.{v}"
        if v not in cats.all:
            r.fail(path, f"unknown category {v!r}")
        if not isinstance(ts, dict):
            r.fail(path, "expected object")
            continue
        hr[v] = {}
        for t, n in ts.items():
            if t not in cats.traits:
                r.fail(f"{path}.{t}", f"unknown trait {t!r}")
            hr[v][t] = r.count(n, f"{path}.{t}")
    return ReservationVector(total, vr, hr, cats.open)


def _individual(raw, path, cats, r):
    if not isinstance(raw, dict):
        r.fail(path, "expected object")
        return None
    i = r.get(raw, "id", path, str)
    score = None
    if "score" in raw:
        score = _score(raw["score"], f"{path}.score", r)
    else:
        r.fail(path, "missing field 'score'")
    members = r.strings(r.get(raw, "memberships", path, list, [], required=False),
                        f"{path}.memberships")
    traits = r.strings(r.get(raw, "traits", path, list, [], required=False), f"{path}.traits")
    flag = r.get(raw, "ews_eligible", path, bool, False, required=False)
    for k, c in enumerate(members):
        if c not in cats.vr:
            r.fail(f"{path}.memberships[{k}]", f"unknown category {c!r}")
    for k, t in enumerate(traits):
        if t not in cats.traits:
            r.fail(f"{path}.traits[{k}]", f"unknown trait {t!r}")
    if i is None or score is None:
        return None
    return Individual(i, score, frozenset(members), frozenset(traits), flag)


def _flag(text, where, r):
    t = text.strip().lower()
    if t in _TRUE:
        return True
    if t not in _FALSE:
        r.fail(where, f"not a boolean: {text!r}")
    return False


def read_individuals_csv(path, categories: CategorySpace) -> tuple:
    path = Path(path)
    r = _Reader()
    people = []
    try:
        handle = path.open(newline="", encoding="utf-8")
    except OSError as exc:
        raise InstanceError(str(exc), str(path)) from None
    with handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames or []
        missing = [c for c in ("id", "score") if c not in header]
        if missing:
            raise InstanceError([f"line 1: missing column(s) {', '.join(missing)}"], str(path))
        for row in reader:
            where = f"line {reader.line_num}"
            score = _score(row["score"].strip(), f"{where}, column score", r)

            def split(col):
                return [x.strip() for x in (row.get(col) or "").split(";") if x.strip()]

            members, traits = split("memberships"), split("traits")
            for c in members:
                if c not in categories.vr:
                    r.fail(f"{where}, column memberships", f"unknown category {c!r}")
            for t in traits:
                if t not in categories.traits:
                    r.fail(f"{where}, column traits", f"unknown trait {t!r}")
            flag = _flag(row.get("ews_eligible") or "", f"{where}, column ews_eligible", r)
            i = row["id"].strip()
            if not i:
                r.fail(f"{where}, column id", "empty id")
            elif score is not None:
                people.append(Individual(i, score, frozenset(members), frozenset(traits), flag))
    if r.problems:
        raise InstanceError(r.problems, str(path))
    return tuple(people)


def instance_from_dict(data, source: str = "<input>", base_dir: Optional[Path] = None,
                       validate: bool = True) -> Instance:
    r = _Reader()
    if not isinstance(data, dict):
        raise InstanceError("$: expected a JSON object", source)
    cats = _categories(data, r)
    quotas = _quotas(data, cats, r)
    raw = data.get("individuals", [])
    if isinstance(raw, str):
        if r.problems:
            raise InstanceError(r.problems, source)
        csv_path = (base_dir or Path(".")) / raw
        people = read_individuals_csv(csv_path, cats)
    elif isinstance(raw, list):
        people = tuple(p for k, x in enumerate(raw)
                       if (p := _individual(x, f"$.individuals[{k}]", cats, r)) is not None)
    else:
        r.fail("$.individuals", "expected array or CSV path")
        people = ()
    tie = r.get(data, "tie_policy", "$", str, TIE_REJECT, required=False)
    if r.problems:
        raise InstanceError(r.problems, source)
    instance = Instance(cats, quotas, people, tie)
    if validate:
        report = validate_instance(instance)
        if not report.ok:
            raise InstanceError(report.violations, source)
    return instance


def parse_instance(path, individuals_csv=None, validate: bool = True) -> Instance:
    """Load and validate an instance file; ``individuals_csv`` overrides the individuals."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InstanceError(str(exc), str(path)) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}", str(path)) from None
    if individuals_csv is not None and isinstance(data, dict):
        data = dict(data, individuals=str(Path(individuals_csv).resolve()))
    return instance_from_dict(data, str(path), path.parent, validate)


def instance_to_dict(instance: Instance) -> dict:
    cats = instance.categories
    out = {"categories": {"vr": list(cats.vr), "ews": cats.ews, "traits": list(cats.traits)}}
    if cats.open != OPEN:
        out["categories"]["open"] = cats.open
    out["quotas"] = instance.quotas.to_dict()
    out["individuals"] = [
        {"id": ind.id, "score": str(ind.score), "memberships": sorted(ind.memberships),
         "traits": sorted(ind.traits), "ews_eligible": ind.ews_eligible}
        for ind in instance.individuals]
    if instance.tie_policy != TIE_REJECT:
        out["tie_policy"] = instance.tie_policy
    return out


def dump_instance(instance: Instance, path) -> None:
    Path(path).write_text(json.dumps(instance_to_dict(instance), indent=2) + "\n", encoding="utf-8")


# -- outcomes ----------------------------------------------------------------

def outcome_to_dict(outcome: ChoiceOutcome, instance: Instance) -> dict:
    return {
        "rule": outcome.rule,
        "precedence": list(outcome.precedence) if outcome.precedence else None,
        "profile": outcome.profile,
        "chosen": {v: instance.ranked(outcome[v]) for v in instance.categories.all},
        "aggregate": instance.ranked(outcome.aggregate),
    }


def outcome_from_dict(data, instance: Instance, source: str = "<outcome>") -> ChoiceOutcome:
    """Read ``{"chosen": {category: [ids]}}`` (extra fields are ignored)."""
    if isinstance(data, dict) and isinstance(data.get("outcome"), dict):
        data = data["outcome"]
    if not isinstance(data, dict) or not isinstance(data.get("chosen"), dict):
        raise InstanceError("$.chosen: expected an object of category -> id list", source)
    problems, chosen = [], {}
    for v, ids in data["chosen"].items():
        path = f"$.chosen.{v}"
        if v not in instance.categories.all:
            problems.append(f"{path}: unknown category {v!r}")
            continue
        if not isinstance(ids, list):
            problems.append(f"{path}: expected array")
            continue
        for k, i in enumerate(ids):
            if i not in instance.by_id:
                problems.append(f"{path}[{k}]: unknown individual {i!r}")
        chosen[v] = frozenset(i for i in ids if i in instance.by_id)
    if problems:
        raise InstanceError(problems, source)
    return ChoiceOutcome(chosen, data.get("rule") or "given", None, data.get("profile") or "")


def read_json(path, source=None):
    path = Path(path)
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise InstanceError(str(exc), source or str(path)) from None
    except json.JSONDecodeError as exc:
        raise InstanceError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}",
                            source or str(path)) from None


# -- reports -----------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, Decimal):
        return str(x)
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    raise TypeError(f"not serializable: {type(x).__name__}")


def emit_report(result: Mapping, format: str = "json") -> bytes:
    """Serialize a command result. Field order is the insertion order of ``result``."""
    doc = {"schema_version": SCHEMA_VERSION, **result}
    if format == "json":
        return (json.dumps(doc, separators=(",", ":"), default=_jsonable) + "\n").encode()
    if format == "table":
        return ("\n".join(_table(doc)) + "\n").encode()
    raise ValueError(f"unknown report format {format!r}")


def _selection_rows(outcome, scores, cutoffs):
    lines = [f"  {'category':<12} {'n':>3}  {'cut-off':>9}  selected (score)"]
    for v, ids in outcome["chosen"].items():
        sel = ", ".join(f"{i} ({scores[i]})" for i in ids) or "-"
        lines.append(f"  {v:<12} {len(ids):>3}  {cutoffs.get(v, '-'):>9}  {sel}")
    lines.append(f"  aggregate: {', '.join(outcome['aggregate']) or '-'}")
    return lines


def _verdict_rows(verdicts):
    lines = []
    for v in verdicts:
        lines.append(f"  {v['axiom']:<22} {'PASS' if v['pass'] else 'FAIL'}")
        if v["witness"]:
            w = v["witness"]
            lines.append(f"    witness: category {w['category']}, "
                         f"{', '.join(w['individuals'])}: {w['condition']}")
    return lines


def _policy_rows(report):
    lines = []
    for name, r in report["policies"].items():
        lines.append(f"policy {name}")
        scores = report.get("scores", {})
        lines.extend(_selection_rows(r, scores, r["cutoffs"]))
        lines.append("  by group: " + ", ".join(f"{g}={n}" for g, n in r["group_totals"].items()))
    for pair, d in report["differences"].items():
        if d["only_first"] or d["only_second"]:
            lines.append(f"{pair}: only first {d['only_first']}, only second {d['only_second']}")
    return lines


def _table(doc) -> list:
    cmd = doc.get("command", "")
    head = [f"{cmd} (schema {doc['schema_version']})"]
    if cmd == "validate":
        return head + [f"  ok: {doc['ok']}"] + [f"  error: {m}" for m in doc["violations"]] + \
            [f"  warning: {m}" for m in doc["warnings"]]
    if cmd == "allocate":
        return head + [f"  policy: {doc['policy']}  profile: {doc['outcome']['profile']}"] + \
            _selection_rows(doc["outcome"], doc["scores"], doc["cutoffs"])
    if cmd == "audit":
        return head + [f"  outcome: {doc['outcome']['rule']}  profile: {doc['profile']}"] + \
            _verdict_rows(doc["verdicts"]) + [f"  all pass: {doc['passed']}"]
    if cmd == "suffering":
        return head + [f"  {k}: {v}" for k, v in doc.items()
                       if k not in ("schema_version", "command")]
    if cmd in ("compare", "simulate"):
        rows = head
        for run in doc.get("runs", [doc]):
            if "seed" in run:
                rows.append(f"seed {run['seed']}")
            rows.extend(_policy_rows(run["report"]))
        return rows
    if cmd == "oracle":
        rows = head
        for r in doc["results"]:
            rows.append(f"  {r['theorem']:<24} {'PASS' if r['passed'] else 'FAIL'}  "
                        f"checked={r['checked']} skipped={r['skipped']}")
            for cx in r["counterexamples"]:
                rows.append(f"    counterexample: seed {cx['seed']} shape {cx['shape']} "
                            f"hr={cx['hr']} {json.dumps(cx['witness'], default=_jsonable)}")
        return rows
    return head + [f"  {k}: {json.dumps(v, default=_jsonable)}" for k, v in doc.items()
                   if k not in ("schema_version", "command")]
