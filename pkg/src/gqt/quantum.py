"""Finite-dimensional density-matrix backend.

Quantum states are density matrices acted on by projectors, `z -> PzP`
with trace normalization; branches whose trace falls below the tolerance
collapse to the zero state.  `close_orbit` discretizes a quantum system
into a finite model by following all projector actions from a set of
seed states, which gives the core calculus an independent source of
ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from . import core
from .errors import OrbitCapExceeded, StructuralError

DEFAULT_TOL = 1e-9
DEFAULT_CAP = 256


def _as_matrix(value, what: str) -> np.ndarray:
    m = np.asarray(value, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise StructuralError(f"{what} must be a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.view(float))):
        raise StructuralError(f"{what} contains non-finite entries")
    return m


def _is_hermitian(m: np.ndarray, tol: float) -> bool:
    return np.abs(m - m.conj().T).max() <= tol


class DensityState:
    """Hermitian positive-semidefinite matrix with positive trace.

    Not necessarily normalized; a state and any positive multiple of it
    describe the same physics, so comparisons go through `states_equal`.
    """

    __slots__ = ("matrix",)

    def __init__(self, matrix, tol: float = DEFAULT_TOL):
        m = _as_matrix(matrix, "density matrix")
        if not _is_hermitian(m, tol):
            raise StructuralError("density matrix is not hermitian within tolerance")
        eigenvalues = np.linalg.eigvalsh(m)
        if eigenvalues.min() < -tol:
            raise StructuralError("density matrix has a negative eigenvalue beyond tolerance")
        if m.trace().real <= tol:
            raise StructuralError("density matrix trace must exceed the tolerance")
        m.flags.writeable = False
        self.matrix = m

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def trace(self) -> float:
        return float(self.matrix.trace().real)

    def normalized(self) -> np.ndarray:
        return self.matrix / self.matrix.trace().real

    def __repr__(self) -> str:
        return f"DensityState(dim={self.dimension}, trace={self.trace():.9f})"


class Projector:
    """Hermitian idempotent matrix."""

    __slots__ = ("matrix",)

    def __init__(self, matrix, tol: float = DEFAULT_TOL):
        m = _as_matrix(matrix, "projector")
        if not _is_hermitian(m, tol):
            raise StructuralError("projector is not hermitian within tolerance")
        if np.abs(m @ m - m).max() > tol:
            raise StructuralError("projector is not idempotent within tolerance")
        m.flags.writeable = False
        self.matrix = m

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def complement(self) -> "Projector":
        return Projector(np.eye(self.dimension) - self.matrix)

    def __repr__(self) -> str:
        return f"Projector(dim={self.dimension})"


def states_equal(z1: DensityState, z2: DensityState, tol: float = DEFAULT_TOL) -> bool:
    """Equality up to scalar factors: compare trace-normalized matrices entrywise."""
    if z1.dimension != z2.dimension:
        raise StructuralError("density matrices have different dimensions")
    return bool(np.abs(z1.normalized() - z2.normalized()).max() <= tol)


def expectation(z: DensityState, observable_matrix, tol: float = DEFAULT_TOL) -> float:
    """Expectation value of a hermitian matrix in the given state."""
    a = _as_matrix(observable_matrix, "observable matrix")
    if a.shape[0] != z.dimension:
        raise StructuralError("observable matrix dimension does not match the state")
    if not _is_hermitian(a, tol):
        raise StructuralError("observable matrix is not hermitian within tolerance")
    value = np.trace(z.matrix @ a) / z.matrix.trace()
    return float(value.real)


def act_observable(z: DensityState, observable_matrix, tol: float = DEFAULT_TOL) -> Union[DensityState, core._ZeroState]:
    """Two-sided action `A z A`, unnormalized; zero when the trace vanishes."""
    a = _as_matrix(observable_matrix, "observable matrix")
    if a.shape[0] != z.dimension:
        raise StructuralError("observable matrix dimension does not match the state")
    if not _is_hermitian(a, tol):
        raise StructuralError("observable matrix is not hermitian within tolerance")
    m = a @ z.matrix @ a
    if m.trace().real <= tol:
        return core.ZERO
    return DensityState(m, tol)


def act_projector(z: DensityState, p: Projector, tol: float = DEFAULT_TOL) -> Union[DensityState, core._ZeroState]:
    """Projective measurement branch `P z P`, trace-normalized."""
    if p.dimension != z.dimension:
        raise StructuralError("projector dimension does not match the state")
    m = p.matrix @ z.matrix @ p.matrix
    trace = m.trace().real
    if trace <= tol:
        return core.ZERO
    return DensityState(m / trace, tol)


@dataclass(frozen=True)
class QuantumProposition:
    """Yes/no actions induced by a projector and its complement."""

    name: str
    projector: Projector
    tol: float = DEFAULT_TOL

    def act(self, outcome: str, z: DensityState):
        if outcome == "yes":
            return act_projector(z, self.projector, self.tol)
        if outcome == "no":
            return act_projector(z, self.projector.complement(), self.tol)
        raise StructuralError(f"outcome must be 'yes' or 'no', got {outcome!r}")


def make_quantum_proposition(p: Projector, name: str = "P", tol: float = DEFAULT_TOL) -> QuantumProposition:
    return QuantumProposition(name, p, tol)


@dataclass(frozen=True)
class ProjectorFamily:
    """Named family of matrices meant to partition the identity.

    Members are stored as raw matrices so that `validate_projector_family`
    can report rather than refuse families that break the laws.
    """

    name: str
    labels: tuple[str, ...]
    members: dict[str, np.ndarray]

    def __post_init__(self):
        if not self.labels:
            raise StructuralError(f"projector family {self.name!r} must not be empty")
        if set(self.labels) != set(self.members):
            raise StructuralError(f"projector family {self.name!r}: labels and members disagree")
        converted = {}
        dim = None
        for label in self.labels:
            m = _as_matrix(self.members[label], f"family member {label!r}")
            if dim is None:
                dim = m.shape[0]
            elif m.shape[0] != dim:
                raise StructuralError(f"projector family {self.name!r}: members have mixed dimensions")
            converted[label] = m
        object.__setattr__(self, "members", converted)

    @property
    def dimension(self) -> int:
        return self.members[self.labels[0]].shape[0]


def validate_projector_family(family: ProjectorFamily, tol: float = DEFAULT_TOL) -> list[core.Violation]:
    """Each member a projector, pairwise orthogonal, summing to the identity."""
    out: list[core.Violation] = []
    for label in family.labels:
        m = family.members[label]
        if not _is_hermitian(m, tol):
            residue = float(np.abs(m - m.conj().T).max())
            out.append(
                core.Violation("projector-hermitian", (family.name, label), (), f"max |M - M†| = {residue:.9f}")
            )
        residue = float(np.abs(m @ m - m).max())
        if residue > tol:
            out.append(
                core.Violation("projector-idempotent", (family.name, label), (), f"max |MM - M| = {residue:.9f}")
            )
    for i, l1 in enumerate(family.labels):
        for l2 in family.labels[i + 1 :]:
            residue = float(np.abs(family.members[l1] @ family.members[l2]).max())
            if residue > tol:
                out.append(
                    core.Violation("orthogonality", (family.name, l1, l2), (), f"max |M1 M2| = {residue:.9f}")
                )
    total = sum(family.members[l] for l in family.labels)
    residue = float(np.abs(total - np.eye(family.dimension)).max())
    if residue > tol:
        out.append(
            core.Violation("resolution-of-identity", (family.name,), (), f"max |sum - I| = {residue:.9f}")
        )
    return out


# ---------------------------------------------------------------------------
# Orbit closure


@dataclass(frozen=True)
class Orbit:
    """A closed orbit: the induced finite model plus the state matrices.

    `matrices` holds one trace-normalized density matrix per model state,
    in discovery order (states are named s0, s1, ... as found).
    """

    model: core.Model
    matrices: tuple[np.ndarray, ...]


def close_orbit(
    seeds: Sequence[DensityState],
    propositions: Sequence[tuple[str, Projector]],
    cap: int = DEFAULT_CAP,
    tol: float = DEFAULT_TOL,
) -> Orbit:
    """Saturate the seed states under all yes/no projector actions.

    Breadth-first and deterministic: seeds are taken in order, then each
    discovered state is expanded with the propositions in the given
    order, yes-image before no-image.  Raises OrbitCapExceeded when more
    than `cap` distinct states appear.
    """
    if cap < 1:
        raise StructuralError("orbit cap must be at least 1")
    if not seeds:
        raise StructuralError("at least one seed state is required")
    if not propositions:
        raise StructuralError("at least one proposition is required")
    dim = seeds[0].dimension
    for s in seeds:
        if s.dimension != dim:
            raise StructuralError("seed states have mixed dimensions")
    names = []
    for name, p in propositions:
        if p.dimension != dim:
            raise StructuralError(f"projector {name!r} dimension does not match the seeds")
        if name in names:
            raise StructuralError(f"duplicate proposition name {name!r}")
        names.append(name)

    mats: list[np.ndarray] = []

    def find(m: np.ndarray) -> Optional[int]:
        for i, known in enumerate(mats):
            if np.abs(known - m).max() <= tol:
                return i
        return None

    def add(m: np.ndarray, processed: int) -> int:
        if len(mats) >= cap:
            discovered = [f"s{i}" for i in range(len(mats))]
            raise OrbitCapExceeded(
                f"orbit closure exceeded cap {cap}: {len(mats)} states discovered, "
                f"{len(mats) - processed} still unexpanded",
                cap,
                discovered=discovered,
                frontier=discovered[processed:],
            )
        mats.append(m)
        return len(mats) - 1

    for s in seeds:
        m = s.normalized()
        if find(m) is None:
            add(m, 0)

    actions = []
    for name, p in propositions:
        actions.append((name, "yes", p.matrix))
        actions.append((name, "no", p.complement().matrix))

    transitions: dict[tuple[str, str, int], core.StateRef] = {}
    i = 0
    while i < len(mats):
        for name, side, pm in actions:
            img = pm @ mats[i] @ pm
            trace = img.trace().real
            if trace <= tol:
                transitions[(name, side, i)] = core.ZERO
            else:
                img = img / trace
                j = find(img)
                if j is None:
                    j = add(img, i)
                transitions[(name, side, i)] = j
        i += 1

    state_names = tuple(f"s{k}" for k in range(len(mats)))
    space = core.StateSpace(state_names)

    def table(name: str, side: str) -> core.PropMap:
        entries = {}
        for k in range(len(mats)):
            target = transitions[(name, side, k)]
            entries[state_names[k]] = core.ZERO if target is core.ZERO else state_names[target]
        return core.PropMap(space, entries)

    props = [core.Proposition(name, table(name, "yes"), table(name, "no")) for name, _ in propositions]
    model = core.Model.build(space, props)
    return Orbit(model, tuple(m for m in mats))


def orbit_closure(
    seeds: Sequence[DensityState],
    propositions: Sequence[tuple[str, Projector]],
    cap: int = DEFAULT_CAP,
    tol: float = DEFAULT_TOL,
) -> core.Model:
    """Like `close_orbit` but returning only the induced model."""
    return close_orbit(seeds, propositions, cap, tol).model


# ---------------------------------------------------------------------------
# Building models from quantum documents


def document_families(doc) -> list[ProjectorFamily]:
    matrices = dict(doc.propositions)
    return [
        ProjectorFamily(spec.name, spec.spectrum, {v: matrices[spec.family[v]] for v in spec.spectrum})
        for spec in doc.observables
    ]


def family_violations(doc, tol: Optional[float] = None) -> list[core.Violation]:
    """Projector-family law report for every observable of a quantum document."""
    eff_tol = _effective_tol(doc, tol)
    out: list[core.Violation] = []
    for family in document_families(doc):
        out.extend(validate_projector_family(family, eff_tol))
    return out


def _effective_tol(doc, tol: Optional[float]) -> float:
    if tol is not None:
        return tol
    if doc.tolerance is not None:
        return doc.tolerance
    return DEFAULT_TOL


def _effective_cap(doc, cap: Optional[int]) -> int:
    if cap is not None:
        return cap
    if doc.cap is not None:
        return doc.cap
    return DEFAULT_CAP


def document_orbit(doc, cap: Optional[int] = None, tol: Optional[float] = None) -> Orbit:
    """Close the orbit of a quantum document's seeds under its projectors."""
    eff_tol = _effective_tol(doc, tol)
    eff_cap = _effective_cap(doc, cap)
    projectors = [(name, Projector(m, eff_tol)) for name, m in doc.propositions]
    seeds = [DensityState(m, eff_tol) for _, m in doc.seeds]
    return close_orbit(seeds, projectors, cap=eff_cap, tol=eff_tol)


def attach_document_observables(model: core.Model, doc) -> core.Model:
    """Rebuild an orbit model with the document's observables and partition."""
    props = [p for n, p in model.propositions.items() if n not in core.RESERVED_PROPOSITION_NAMES]
    observables = [
        core.Observable(spec.name, spec.spectrum, {v: model.propositions[spec.family[v]] for v in spec.spectrum})
        for spec in doc.observables
    ]
    return core.Model.build(model.space, props, observables, doc.partition)


def document_model(doc, cap: Optional[int] = None, tol: Optional[float] = None) -> core.Model:
    """Full pipeline: orbit closure plus observables and partition."""
    orbit = document_orbit(doc, cap=cap, tol=tol)
    return attach_document_observables(orbit.model, doc)
