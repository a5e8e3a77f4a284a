"""JSON documents for models and quantum systems.

Model documents are fully explicit: every proposition map lists every
proper state exactly once, with ``null`` marking the zero state, so a
forgotten entry is a parse error rather than a silent default.  The
builtin propositions ONE and ZERO are implicit and may not be redefined.
Serialization is canonical (fixed key order, sorted names, two-space
indent, trailing newline), so equal models produce identical bytes.

Quantum documents carry complex matrices as nested arrays of ``[re, im]``
pairs; a depth-2 array is a ket ``v`` standing for the density matrix
``v v†``, a depth-3 array is a matrix.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import core
from .errors import StructuralError


def _fail(path: str, message: str):
    raise StructuralError(f"{path}: {message}")


def _reject_duplicate_keys(pairs):
    d = {}
    for key, value in pairs:
        if key in d:
            raise StructuralError(f"duplicate key {key!r}")
        d[key] = value
    return d


def _load_json(text: str):
    try:
        return json.loads(text, object_pairs_hook=_reject_duplicate_keys)
    except json.JSONDecodeError as e:
        raise StructuralError(f"not valid JSON: line {e.lineno} column {e.colno}: {e.msg}") from None


def _require_object(value, path: str) -> dict:
    if not isinstance(value, dict):
        _fail(path, "must be a JSON object")
    return value


def _require_string_list(value, path: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(s, str) for s in value):
        _fail(path, "must be an array of strings")
    return value


def _check_keys(obj: dict, allowed: tuple[str, ...], required: tuple[str, ...], path: str):
    unknown = sorted(set(obj) - set(allowed))
    if unknown:
        _fail(path, f"unknown key(s) {unknown}")
    missing = [k for k in required if k not in obj]
    if missing:
        _fail(path, f"missing required key(s) {missing}")


# ---------------------------------------------------------------------------
# Model documents


def _parse_map(obj, space: core.StateSpace, path: str) -> core.PropMap:
    if not isinstance(obj, dict):
        _fail(path, "must be an object mapping every state to a state or null")
    table = {}
    for state, target in obj.items():
        if state not in space:
            _fail(f"{path}.{state}", f"unknown state {state!r}")
        if target is None:
            table[state] = core.ZERO
        elif isinstance(target, str):
            if target not in space:
                _fail(f"{path}.{state}", f"unknown state {target!r}")
            table[state] = target
        else:
            _fail(f"{path}.{state}", "map values must be state names or null")
    missing = [s for s in space.states if s not in table]
    if missing:
        _fail(path, f"missing entries for state(s) {missing}; maps must be total")
    return core.PropMap(space, table)


def _parse_partition(obj, path: str) -> core.Partition:
    _require_object(obj, path)
    _check_keys(obj, ("subsystems", "local", "global"), ("subsystems", "local", "global"), path)
    subsystems = _require_string_list(obj["subsystems"], f"{path}.subsystems")
    local = _require_object(obj["local"], f"{path}.local")
    for name, target in local.items():
        if not isinstance(target, str):
            _fail(f"{path}.local.{name}", "subsystem tag must be a string")
    global_tags = _require_string_list(obj["global"], f"{path}.global")
    try:
        return core.Partition(tuple(subsystems), dict(local), tuple(global_tags))
    except StructuralError as e:
        _fail(path, str(e))


def parse_model(text: str) -> core.Model:
    """Parse a model document; structural problems raise with field context.

    Only structure is checked here.  A parseable model can still break
    the laws; run `core.validate_model` for that.
    """
    data = _load_json(text)
    _require_object(data, "$")
    _check_keys(data, ("states", "propositions", "observables", "partition"), ("states",), "$")
    try:
        space = core.StateSpace(tuple(_require_string_list(data["states"], "states")))
    except StructuralError as e:
        _fail("states", str(e))

    propositions = []
    props_raw = _require_object(data.get("propositions", {}), "propositions")
    for name, body in props_raw.items():
        path = f"propositions.{name}"
        if name in core.RESERVED_PROPOSITION_NAMES:
            _fail(path, f"{name} is a builtin proposition and cannot be redefined")
        _require_object(body, path)
        _check_keys(body, ("yes", "no"), ("yes", "no"), path)
        yes = _parse_map(body["yes"], space, f"{path}.yes")
        no = _parse_map(body["no"], space, f"{path}.no")
        propositions.append(core.Proposition(name, yes, no))

    prop_by_name = {p.name: p for p in propositions}
    prop_by_name["ONE"] = core.make_one(space)
    prop_by_name["ZERO"] = core.make_zero(space)

    observables = []
    obs_raw = _require_object(data.get("observables", {}), "observables")
    for name, body in obs_raw.items():
        path = f"observables.{name}"
        _require_object(body, path)
        _check_keys(body, ("spectrum", "family"), ("spectrum", "family"), path)
        spectrum = _require_string_list(body["spectrum"], f"{path}.spectrum")
        family_raw = _require_object(body["family"], f"{path}.family")
        family = {}
        for value, ref in family_raw.items():
            if not isinstance(ref, str):
                _fail(f"{path}.family.{value}", "family entries must name propositions")
            if ref not in prop_by_name:
                _fail(f"{path}.family.{value}", f"unknown proposition {ref!r}")
            family[value] = prop_by_name[ref]
        try:
            observables.append(core.Observable(name, tuple(spectrum), family))
        except StructuralError as e:
            _fail(path, str(e))

    partition = None
    if "partition" in data:
        partition = _parse_partition(data["partition"], "partition")

    return core.Model.build(space, propositions, observables, partition)


def serialize_model(model: core.Model) -> str:
    """Canonical JSON for a model; equal models give identical bytes."""
    states = model.space.states

    def map_obj(m: core.PropMap) -> dict:
        return {z: (None if m.table[z] is core.ZERO else m.table[z]) for z in states}

    doc: dict = {
        "states": list(states),
        "propositions": {
            name: {"yes": map_obj(p.yes), "no": map_obj(p.no)}
            for name, p in sorted(model.propositions.items())
            if name not in core.RESERVED_PROPOSITION_NAMES
        },
        "observables": {
            name: {
                "spectrum": list(o.spectrum),
                "family": {value: o.family[value].name for value in o.spectrum},
            }
            for name, o in sorted(model.observables.items())
        },
    }
    if model.partition is not None:
        part = model.partition
        doc["partition"] = {
            "subsystems": sorted(part.subsystems),
            "local": {name: part.local_tags[name] for name in sorted(part.local_tags)},
            "global": sorted(part.global_tags),
        }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# Quantum documents


@dataclass(frozen=True)
class ObservableSpec:
    """Observable declaration: spectrum values naming projectors."""

    name: str
    spectrum: tuple[str, ...]
    family: dict[str, str]

    def __post_init__(self):
        object.__setattr__(self, "family", dict(self.family))


@dataclass(frozen=True)
class QuantumDocument:
    """Parsed quantum system: seeds, projectors, observables, knobs."""

    dimension: int
    seeds: tuple[tuple[str, np.ndarray], ...]
    propositions: tuple[tuple[str, np.ndarray], ...]
    observables: tuple[ObservableSpec, ...]
    cap: Optional[int] = None
    tolerance: Optional[float] = None
    partition: Optional[core.Partition] = None


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def _parse_complex(entry, path: str) -> complex:
    if not isinstance(entry, list) or len(entry) != 2 or not all(_is_number(x) for x in entry):
        _fail(path, "complex entries must be [re, im] number pairs")
    return complex(entry[0], entry[1])


def _entry_depth(value) -> int:
    depth = 0
    while isinstance(value, list):
        depth += 1
        value = value[0] if value else None
    return depth


def _parse_vector(value, dim: int, path: str) -> np.ndarray:
    if not isinstance(value, list) or len(value) != dim:
        _fail(path, f"vector must have {dim} entries")
    v = np.array([_parse_complex(e, f"{path}[{i}]") for i, e in enumerate(value)])
    return np.outer(v, v.conj())


def _parse_matrix(value, dim: int, path: str) -> np.ndarray:
    if not isinstance(value, list) or len(value) != dim:
        _fail(path, f"matrix must have {dim} rows")
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != dim:
            _fail(f"{path}[{i}]", f"matrix rows must have {dim} entries")
        rows.append([_parse_complex(e, f"{path}[{i}][{j}]") for j, e in enumerate(row)])
    return np.array(rows)


def _parse_state_entry(value, dim: int, path: str) -> np.ndarray:
    # Depth 2 is a ket (meaning v v†), depth 3 a density matrix.
    depth = _entry_depth(value)
    if depth == 2:
        return _parse_vector(value, dim, path)
    if depth == 3:
        return _parse_matrix(value, dim, path)
    _fail(path, "state must be a vector of [re, im] pairs or a matrix of them")


def parse_quantum(text: str) -> QuantumDocument:
    """Parse a quantum document; numeric validity is checked downstream."""
    data = _load_json(text)
    _require_object(data, "$")
    _check_keys(
        data,
        ("dimension", "seeds", "propositions", "observables", "cap", "tolerance", "partition"),
        ("dimension", "seeds", "propositions"),
        "$",
    )
    dim = data["dimension"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        _fail("dimension", "must be a positive integer")

    seeds_raw = _require_object(data["seeds"], "seeds")
    if not seeds_raw:
        _fail("seeds", "at least one seed state is required")
    seeds = tuple((name, _parse_state_entry(value, dim, f"seeds.{name}")) for name, value in seeds_raw.items())

    props_raw = _require_object(data["propositions"], "propositions")
    if not props_raw:
        _fail("propositions", "at least one projector is required")
    propositions = tuple(
        (name, _parse_matrix(value, dim, f"propositions.{name}")) for name, value in props_raw.items()
    )
    prop_names = {name for name, _ in propositions}

    observables = []
    obs_raw = _require_object(data.get("observables", {}), "observables")
    for name, body in obs_raw.items():
        path = f"observables.{name}"
        _require_object(body, path)
        _check_keys(body, ("spectrum", "family"), ("spectrum", "family"), path)
        spectrum = _require_string_list(body["spectrum"], f"{path}.spectrum")
        family_raw = _require_object(body["family"], f"{path}.family")
        if sorted(family_raw) != sorted(set(spectrum)):
            _fail(f"{path}.family", "family labels must match the spectrum exactly")
        family = {}
        for value, ref in family_raw.items():
            if not isinstance(ref, str) or ref not in prop_names:
                _fail(f"{path}.family.{value}", f"unknown projector {ref!r}")
            family[value] = ref
        observables.append(ObservableSpec(name, tuple(spectrum), family))

    cap = data.get("cap")
    if cap is not None and (not isinstance(cap, int) or isinstance(cap, bool) or cap < 1):
        _fail("cap", "must be a positive integer")
    tolerance = data.get("tolerance")
    if tolerance is not None:
        if not _is_number(tolerance) or tolerance < 0:
            _fail("tolerance", "must be a non-negative number")
        tolerance = float(tolerance)

    partition = None
    if "partition" in data:
        partition = _parse_partition(data["partition"], "partition")

    return QuantumDocument(dim, seeds, propositions, tuple(observables), cap, tolerance, partition)
