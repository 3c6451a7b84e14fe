"""Descriptor file parsing and emission.

A descriptor file is a JSON document with a version tag, a list of block
records and an optional list of tree records:

    {
      "version": 1,
      "blocks": [
        {"label": "b1", "p": 3, "ell": 2, "chi_values": [2, -1],
         "is_principal": false, "inertial_index": 2}
      ],
      "trees": [
        {"label": "t1", "p": 3, "ell": 2,
         "vertices": ["c", "v1", "v2"],
         "planar": {"c": ["v1", "v2"], "v1": ["c"], "v2": ["c"]},
         "exceptional": "c", "multiplicity": 4}
      ]
    }

Integers are decimal with no exponents; floating point values are rejected.
Unknown fields are rejected by name.  Errors carry the JSON path of the
offending value.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .blocks import BlockDescriptor
from .groups import GroupSpec, is_prime
from .trees import BrauerTree

FORMAT_VERSION = 1

_BLOCK_FIELDS = {
    "label", "p", "ell", "chi_values", "is_principal",
    "centralizer_equal", "normalizer_equal", "inertial_index",
}
_TREE_FIELDS = {
    "label", "p", "ell", "vertices", "planar", "exceptional", "multiplicity",
}
_TOP_FIELDS = {"version", "blocks", "trees"}


class _Float(float):
    """Marker for floats seen by the JSON parser, so validation can reject
    them with a positioned error instead of silently truncating."""


@dataclass
class ParseIssue:
    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.path}: {self.message}"


class DescriptorError(ValueError):
    def __init__(self, issues: list[ParseIssue]):
        self.issues = issues
        super().__init__("; ".join(str(i) for i in issues))


@dataclass
class DescriptorFile:
    version: int = FORMAT_VERSION
    blocks: list[BlockDescriptor] = field(default_factory=list)
    trees: list[BrauerTree] = field(default_factory=list)


class _Validator:
    def __init__(self) -> None:
        self.issues: list[ParseIssue] = []

    def fail(self, path: str, message: str) -> None:
        self.issues.append(ParseIssue(path, message))

    def require_int(self, value, path: str) -> int | None:
        if isinstance(value, bool) or not isinstance(value, int):
            self.fail(path, "integer required")
            return None
        return value

    def require_str(self, value, path: str) -> str | None:
        if not isinstance(value, str):
            self.fail(path, "string required")
            return None
        return value

    def require_bool(self, value, path: str) -> bool | None:
        if not isinstance(value, bool):
            self.fail(path, "boolean required")
            return None
        return value

    def group(self, record: dict, path: str) -> GroupSpec | None:
        p = self.require_int(record.get("p"), f"{path}.p")
        ell = self.require_int(record.get("ell"), f"{path}.ell")
        if p is None or ell is None:
            return None
        if not is_prime(p):
            self.fail(f"{path}.p", "p must be prime")
            return None
        if ell < 1:
            self.fail(f"{path}.ell", "ell must be at least 1")
            return None
        return GroupSpec(p, ell)


def _reject_unknown(v: _Validator, record: dict, allowed: set, path: str) -> None:
    for key in sorted(set(record) - allowed):
        v.fail(f"{path}.{key}", "unknown field")


def _parse_block(v: _Validator, record, path: str) -> BlockDescriptor | None:
    if not isinstance(record, dict):
        v.fail(path, "object required")
        return None
    _reject_unknown(v, record, _BLOCK_FIELDS, path)
    group = v.group(record, path)
    if group is None:
        return None
    chi = None
    if "chi_values" in record:
        raw = record["chi_values"]
        if not isinstance(raw, list):
            v.fail(f"{path}.chi_values", "array required")
            return None
        chi = []
        for k, entry in enumerate(raw):
            value = v.require_int(entry, f"{path}.chi_values[{k}]")
            if value is None:
                return None
            chi.append(value)
        if len(chi) != group.ell:
            v.fail(f"{path}.chi_values", f"expected {group.ell} values, got {len(chi)}")
            return None
    flags = {}
    for name in ("is_principal", "centralizer_equal", "normalizer_equal"):
        if name in record:
            value = v.require_bool(record[name], f"{path}.{name}")
            if value is None:
                return None
            flags[name] = value
    e = None
    if "inertial_index" in record:
        e = v.require_int(record["inertial_index"], f"{path}.inertial_index")
        if e is None:
            return None
    label = record.get("label", "")
    if not isinstance(label, str):
        v.fail(f"{path}.label", "string required")
        return None
    try:
        return BlockDescriptor(
            group=group,
            chi_values=tuple(chi) if chi is not None else None,
            inertial_index=e,
            label=label,
            **flags,
        )
    except ValueError as exc:
        v.fail(path, str(exc))
        return None


def _parse_tree(v: _Validator, record, path: str) -> BrauerTree | None:
    if not isinstance(record, dict):
        v.fail(path, "object required")
        return None
    _reject_unknown(v, record, _TREE_FIELDS, path)
    group = v.group(record, path)
    if group is None:
        return None
    raw_vertices = record.get("vertices")
    if not isinstance(raw_vertices, list):
        v.fail(f"{path}.vertices", "array required")
        return None
    vertices = []
    for k, entry in enumerate(raw_vertices):
        name = v.require_str(entry, f"{path}.vertices[{k}]")
        if name is None:
            return None
        vertices.append(name)
    raw_planar = record.get("planar")
    if not isinstance(raw_planar, dict):
        v.fail(f"{path}.planar", "object required")
        return None
    planar = {}
    for vertex, neighbours in raw_planar.items():
        if not isinstance(neighbours, list):
            v.fail(f"{path}.planar.{vertex}", "array required")
            return None
        out = []
        for k, entry in enumerate(neighbours):
            name = v.require_str(entry, f"{path}.planar.{vertex}[{k}]")
            if name is None:
                return None
            out.append(name)
        planar[vertex] = tuple(out)
    exceptional = None
    if record.get("exceptional") is not None:
        exceptional = v.require_str(record["exceptional"], f"{path}.exceptional")
        if exceptional is None:
            return None
    multiplicity = 1
    if "multiplicity" in record:
        m = v.require_int(record["multiplicity"], f"{path}.multiplicity")
        if m is None:
            return None
        multiplicity = m
    label = record.get("label", "")
    if not isinstance(label, str):
        v.fail(f"{path}.label", "string required")
        return None
    return BrauerTree(
        vertices=tuple(vertices),
        planar=planar,
        defect=group,
        multiplicity=multiplicity,
        exceptional=exceptional,
        label=label,
    )


def _check_floats(value, path: str, v: _Validator) -> None:
    if isinstance(value, _Float):
        v.fail(path, "integer required")
    elif isinstance(value, dict):
        for key, entry in value.items():
            _check_floats(entry, f"{path}.{key}", v)
    elif isinstance(value, list):
        for k, entry in enumerate(value):
            _check_floats(entry, f"{path}[{k}]", v)


def parse_descriptor(text: str) -> DescriptorFile:
    """Parse and fully validate a descriptor document.

    Raises DescriptorError carrying one positioned issue per problem; a
    syntactically broken document yields a single issue with the line and
    column reported by the JSON parser.
    """
    v = _Validator()
    try:
        data = json.loads(text, parse_float=_Float)
    except json.JSONDecodeError as exc:
        raise DescriptorError(
            [ParseIssue(f"line {exc.lineno} column {exc.colno}", exc.msg)]
        ) from exc
    if not isinstance(data, dict):
        raise DescriptorError([ParseIssue("$", "top-level object required")])
    _check_floats(data, "$", v)
    if v.issues:
        raise DescriptorError(v.issues)
    _reject_unknown(v, data, _TOP_FIELDS, "$")
    version = v.require_int(data.get("version"), "$.version")
    if version is not None and version != FORMAT_VERSION:
        v.fail("$.version", f"unsupported version {version}")
    out = DescriptorFile(version=version or FORMAT_VERSION)
    raw_blocks = data.get("blocks", [])
    if not isinstance(raw_blocks, list):
        v.fail("$.blocks", "array required")
        raw_blocks = []
    for k, record in enumerate(raw_blocks):
        block = _parse_block(v, record, f"$.blocks[{k}]")
        if block is not None:
            out.blocks.append(block)
    raw_trees = data.get("trees", [])
    if not isinstance(raw_trees, list):
        v.fail("$.trees", "array required")
        raw_trees = []
    for k, record in enumerate(raw_trees):
        tree = _parse_tree(v, record, f"$.trees[{k}]")
        if tree is not None:
            out.trees.append(tree)
    if v.issues:
        raise DescriptorError(v.issues)
    return out


def block_record(b: BlockDescriptor) -> dict:
    record: dict = {"label": b.label, "p": b.group.p, "ell": b.group.ell}
    if b.chi_values is not None:
        record["chi_values"] = list(b.chi_values)
    for name in ("is_principal", "centralizer_equal", "normalizer_equal"):
        value = getattr(b, name)
        if value is not None:
            record[name] = value
    if b.inertial_index is not None:
        record["inertial_index"] = b.inertial_index
    return record


def tree_record(t: BrauerTree) -> dict:
    return {
        "label": t.label,
        "p": t.defect.p,
        "ell": t.defect.ell,
        "vertices": list(t.vertices),
        "planar": {v: list(ns) for v, ns in t.planar.items()},
        "exceptional": t.exceptional,
        "multiplicity": t.multiplicity,
    }


def emit_descriptor(doc: DescriptorFile) -> str:
    data: dict = {"version": doc.version}
    if doc.blocks:
        data["blocks"] = [block_record(b) for b in doc.blocks]
    if doc.trees:
        data["trees"] = [tree_record(t) for t in doc.trees]
    return json.dumps(data, indent=2, sort_keys=True) + "\n"
