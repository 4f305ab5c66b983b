"""JSON and CSV documents for devices, instances, arrivals and reports.

Delays and other unbounded integers travel as decimal strings so that
exponential-size values survive any JSON reader. Output is canonical
(sorted, fixed indentation, LF newlines) so identical inputs produce
identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Dict, Mapping, Optional, Tuple, Union

import jsonschema

from .analysis import AnalysisReport, sci
from .device import Arc, Device, Node, ReadoutSpec, validate
from .oracles import OracleResult
from .problems import (
    PROBLEM_TYPES,
    Diophantine,
    ExactCover,
    Hamiltonian,
    InstanceError,
    ProblemInstance,
    SubsetSum,
    TspDecision,
    UnboundedSubsetSum,
)
from .simulator import Arrival, ArrivalMap, Decision


class FormatError(ValueError):
    """Base class for document errors."""


class MalformedDocument(FormatError):
    """The text is not parseable JSON / CSV."""


class SchemaViolation(FormatError):
    """The document parses but does not match its schema."""


class InvariantViolation(FormatError):
    """The document is well-typed but describes an invalid object."""


DECIMAL = {"type": "string", "pattern": "^(0|[1-9][0-9]*)$"}
NODE_ID = {"type": "integer", "minimum": 0}
COUNT = {"type": "integer", "minimum": 0}

READOUT_SCHEMA = {
    "type": "object",
    "required": ["lo", "hi"],
    "properties": {"lo": DECIMAL, "hi": DECIMAL, "description": {"type": "string"}},
    "additionalProperties": False,
}

DEVICE_SCHEMA = {
    "type": "object",
    "required": ["nodes", "arcs", "start", "destination"],
    "properties": {
        "nodes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "internal_delay"],
                "properties": {
                    "id": NODE_ID,
                    "internal_delay": DECIMAL,
                    "label": {"type": "string"},
                },
                "additionalProperties": False,
            },
        },
        "arcs": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["from", "to", "delay"],
                "properties": {"from": NODE_ID, "to": NODE_ID, "delay": DECIMAL},
                "additionalProperties": False,
            },
        },
        "start": NODE_ID,
        "destination": NODE_ID,
        "readout": READOUT_SCHEMA,
    },
    "additionalProperties": False,
}


def _instance_schema(problem, props, required):
    return {
        "type": "object",
        "required": ["problem"] + required,
        "properties": {"problem": {"const": problem}, **props},
        "additionalProperties": False,
    }


_VALUES = {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1}
_PAIR = {"type": "array", "items": COUNT, "minItems": 2, "maxItems": 2}
_TRIPLE = {"type": "array", "items": COUNT, "minItems": 3, "maxItems": 3}

INSTANCE_SCHEMA = {
    "oneOf": [
        _instance_schema("subset_sum", {"values": _VALUES, "target": COUNT}, ["values", "target"]),
        _instance_schema(
            "unbounded_subset_sum", {"values": _VALUES, "target": COUNT}, ["values", "target"]
        ),
        _instance_schema(
            "diophantine",
            {"coefficients": _VALUES, "constant": COUNT, "require_positive": {"type": "boolean"}},
            ["coefficients", "constant"],
        ),
        _instance_schema(
            "hamiltonian",
            {"n": {"type": "integer", "minimum": 1}, "arcs": {"type": "array", "items": _PAIR}},
            ["n", "arcs"],
        ),
        _instance_schema(
            "exact_cover",
            {
                "universe_size": COUNT,
                "collection": {
                    "type": "array",
                    "minItems": 1,
                    "items": {"type": "array", "items": COUNT, "minItems": 1},
                },
            },
            ["universe_size", "collection"],
        ),
        _instance_schema(
            "tsp_decision",
            {
                "n": {"type": "integer", "minimum": 2},
                "arcs": {"type": "array", "items": _TRIPLE},
                "bound": COUNT,
            },
            ["n", "arcs", "bound"],
        ),
    ]
}


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _load(text: str, schema, what: str):
    try:
        doc = json.loads(text)
    except (json.JSONDecodeError, TypeError) as exc:
        raise MalformedDocument(f"{what}: not valid JSON ({exc})") from exc
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaViolation(f"{what}: {exc.message} at {where}") from exc
    return doc


def _ratio(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _parse_ratio(s: str) -> Fraction:
    num, den = s.split("/")
    return Fraction(int(num), int(den))


# -- devices -----------------------------------------------------------------

def readout_to_dict(readout: ReadoutSpec) -> dict:
    return {"lo": str(readout.lo), "hi": str(readout.hi), "description": readout.description}


def write_device(device: Device, readout: Optional[ReadoutSpec] = None) -> str:
    doc = {
        "nodes": [
            {"id": n.id, "internal_delay": str(n.internal_delay), "label": n.label}
            for n in device.nodes
        ],
        "arcs": [
            {"from": a.src, "to": a.dst, "delay": str(a.delay)} for a in device.arcs
        ],
        "start": device.start,
        "destination": device.destination,
    }
    if readout is not None:
        doc["readout"] = readout_to_dict(readout)
    return _dump(doc)


def read_device(text: str) -> Tuple[Device, Optional[ReadoutSpec]]:
    """Parse a device document; the readout is None when absent.

    Raises MalformedDocument, SchemaViolation or InvariantViolation.
    """
    doc = _load(text, DEVICE_SCHEMA, "device document")
    device = Device(
        nodes=tuple(
            Node(n["id"], int(n["internal_delay"]), n.get("label", "")) for n in doc["nodes"]
        ),
        arcs=tuple(Arc(a["from"], a["to"], int(a["delay"])) for a in doc["arcs"]),
        start=doc["start"],
        destination=doc["destination"],
    )
    problems = validate(device)
    if problems:
        raise InvariantViolation("device document: " + "; ".join(problems))
    readout = None
    if "readout" in doc:
        r = doc["readout"]
        try:
            readout = ReadoutSpec(int(r["lo"]), int(r["hi"]), r.get("description", ""))
        except ValueError as exc:
            raise InvariantViolation(f"device document: {exc}") from exc
    return device, readout


# -- instances ---------------------------------------------------------------

def instance_to_dict(inst: ProblemInstance) -> dict:
    if isinstance(inst, (SubsetSum, UnboundedSubsetSum)):
        return {"problem": inst.kind, "values": list(inst.values), "target": inst.target}
    if isinstance(inst, Diophantine):
        return {
            "problem": inst.kind,
            "coefficients": list(inst.coefficients),
            "constant": inst.constant,
            "require_positive": inst.require_positive,
        }
    if isinstance(inst, Hamiltonian):
        return {"problem": inst.kind, "n": inst.n, "arcs": [list(a) for a in sorted(inst.arcs)]}
    if isinstance(inst, ExactCover):
        return {
            "problem": inst.kind,
            "universe_size": inst.universe_size,
            "collection": [sorted(c) for c in inst.collection],
        }
    if isinstance(inst, TspDecision):
        return {
            "problem": inst.kind,
            "n": inst.n,
            "arcs": [[i, j, w] for (i, j), w in sorted(inst.weights.items())],
            "bound": inst.bound,
        }
    raise TypeError(f"not a problem instance: {inst!r}")


def write_instance(inst: ProblemInstance) -> str:
    return _dump(instance_to_dict(inst))


def read_instance(text: str) -> ProblemInstance:
    doc = _load(text, INSTANCE_SCHEMA, "instance document")
    kind = doc.pop("problem")
    try:
        if kind in ("hamiltonian",):
            return Hamiltonian(doc["n"], frozenset(tuple(a) for a in doc["arcs"]))
        if kind == "tsp_decision":
            weights = {}
            for i, j, w in doc["arcs"]:
                if (i, j) in weights:
                    raise InstanceError(f"arc ({i}, {j}) listed twice")
                weights[(i, j)] = w
            return TspDecision(doc["n"], weights, doc["bound"])
        if kind == "exact_cover":
            return ExactCover(doc["universe_size"], tuple(frozenset(c) for c in doc["collection"]))
        return PROBLEM_TYPES[kind](**doc)
    except InstanceError as exc:
        raise InvariantViolation(f"instance document: {exc}") from exc


# -- arrivals ----------------------------------------------------------------

CSV_HEADER = ("time", "count", "intensity_num", "intensity_den")


def write_arrivals_csv(arrivals: Union[ArrivalMap, Mapping[int, Arrival]]) -> str:
    entries = arrivals.entries if isinstance(arrivals, ArrivalMap) else arrivals
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for t in sorted(entries):
        a = entries[t]
        writer.writerow([t, a.count, a.intensity.numerator, a.intensity.denominator])
    return buf.getvalue()


def read_arrivals_csv(text: str) -> Dict[int, Arrival]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise MalformedDocument(f"arrivals CSV must start with {','.join(CSV_HEADER)}")
    entries = {}
    for lineno, row in enumerate(rows[1:], start=2):
        try:
            t, count, num, den = (int(x) for x in row)
        except ValueError as exc:
            raise MalformedDocument(f"arrivals CSV line {lineno}: {row!r}") from exc
        if t in entries or (entries and t < max(entries)):
            raise SchemaViolation(f"arrivals CSV line {lineno}: times must strictly ascend")
        if den <= 0 or count < 0:
            raise SchemaViolation(f"arrivals CSV line {lineno}: bad count or denominator")
        entries[t] = Arrival(count, Fraction(num, den))
    return entries


# -- reports -----------------------------------------------------------------

def report_to_dict(report: AnalysisReport) -> dict:
    weakest = report.min_arrival_intensity
    return {
        "unit_length": sci(report.unit_length),
        "total_cable_length": sci(report.total_cable_length),
        "max_delay": str(report.max_delay),
        "num_arcs": report.num_arcs,
        "num_nodes": report.num_nodes,
        "min_arrival_intensity": None if weakest is None else _ratio(weakest),
        "dynamic_range_bits": report.dynamic_range_bits,
        "arrival_count_total": str(report.arrival_count_total),
    }


def write_report(report: AnalysisReport) -> str:
    return _dump(report_to_dict(report))


def read_report(text: str) -> AnalysisReport:
    """Parse a report document. Lengths come back at their printed precision."""
    try:
        doc = json.loads(text)
        weakest = doc["min_arrival_intensity"]
        return AnalysisReport(
            unit_length=Fraction(doc["unit_length"]),
            total_cable_length=Fraction(doc["total_cable_length"]),
            max_delay=int(doc["max_delay"]),
            num_arcs=doc["num_arcs"],
            num_nodes=doc["num_nodes"],
            min_arrival_intensity=None if weakest is None else _parse_ratio(weakest),
            dynamic_range_bits=doc["dynamic_range_bits"],
            arrival_count_total=int(doc["arrival_count_total"]),
        )
    except (json.JSONDecodeError, KeyError, ValueError, TypeError) as exc:
        raise MalformedDocument(f"report document: {exc}") from exc


# -- decisions and oracle results -------------------------------------------

def decision_to_dict(decision: Decision, readout: ReadoutSpec) -> dict:
    return {
        "answer": decision.answer.value,
        "multiplicity": str(decision.multiplicity),
        "intensity": _ratio(decision.intensity),
        "hit_times": [str(t) for t in decision.hit_times],
        "readout": readout_to_dict(readout),
    }


def oracle_to_dict(result: OracleResult) -> dict:
    doc = {
        "answer": result.answer,
        "count": str(result.count),
        "witnesses": [list(w) for w in result.witnesses],
    }
    if result.min_weight is not None:
        doc["min_weight"] = result.min_weight
    return doc


def dumps(doc) -> str:
    return _dump(doc)
