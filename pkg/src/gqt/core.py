"""Finite calculus of propositions, observables, and models.

A model is a finite set of named states plus one improper zero state that
absorbs impossible measurement branches.  A proposition acts on states
through a pair of total maps giving the post-measurement state for the
"yes" and "no" outcomes; an observable bundles mutually exclusive,
jointly complete propositions indexed by a finite spectrum.  Everything
here is immutable and pure, and all reported orders are deterministic:
states sort by name, spectra keep declaration order.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import (
    AmbiguousRealization,
    DomainError,
    EntanglementPreconditionError,
    IncompatibleOperands,
    StructuralError,
)

RESERVED_PROPOSITION_NAMES = ("ONE", "ZERO")

# Serialized spelling of the zero state; not a legal proper-state name.
ZERO_TOKEN = "null"


class _ZeroState:
    """Singleton tag for the improper zero state."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "ZERO"


ZERO = _ZeroState()

StateRef = Union[str, _ZeroState]


def show_state(ref: StateRef) -> str:
    return ZERO_TOKEN if ref is ZERO else ref


def _step(table: Mapping[str, StateRef], ref: StateRef) -> StateRef:
    # One application of a map table; the zero state is absorbing.
    return ZERO if ref is ZERO else table[ref]


@dataclass(frozen=True)
class StateSpace:
    """Ordered finite set of proper state names."""

    states: tuple[str, ...]

    def __post_init__(self):
        if not self.states:
            raise StructuralError("state space must not be empty")
        seen = set()
        for name in self.states:
            if not isinstance(name, str) or not name:
                raise StructuralError(f"state names must be non-empty strings, got {name!r}")
            if name == ZERO_TOKEN:
                raise StructuralError(f"state name {ZERO_TOKEN!r} is reserved for the zero state")
            if name in seen:
                raise StructuralError(f"duplicate state name {name!r}")
            seen.add(name)

    def __contains__(self, name: object) -> bool:
        return name in self.states

    def __len__(self) -> int:
        return len(self.states)


@dataclass(frozen=True)
class PropMap:
    """Total map from proper states to states-or-zero.

    The zero state never appears as a key: it is absorbing, so every map
    implicitly sends it to itself.
    """

    space: StateSpace
    table: Mapping[str, StateRef]

    def __post_init__(self):
        table = dict(self.table)
        object.__setattr__(self, "table", table)
        names = set(self.space.states)
        missing = [s for s in self.space.states if s not in table]
        if missing:
            raise StructuralError(f"map is not total: missing entries for {missing}")
        extra = sorted(k for k in table if k not in names)
        if extra:
            raise StructuralError(f"map has entries for unknown states {extra}")
        for s, target in table.items():
            if target is not ZERO and target not in names:
                raise StructuralError(f"map sends {s!r} to unknown state {target!r}")

    def __call__(self, z: StateRef) -> StateRef:
        if z is ZERO:
            return ZERO
        try:
            return self.table[z]
        except (KeyError, TypeError):
            raise StructuralError(f"unknown state {z!r}") from None


def identity_map(space: StateSpace) -> PropMap:
    return PropMap(space, {s: s for s in space.states})


def constant_zero_map(space: StateSpace) -> PropMap:
    return PropMap(space, {s: ZERO for s in space.states})


@dataclass(frozen=True)
class Proposition:
    """Named yes/no question with a post-measurement map for each outcome."""

    name: str
    yes: PropMap
    no: PropMap

    def __post_init__(self):
        if not self.name or not isinstance(self.name, str):
            raise StructuralError("proposition name must be a non-empty string")
        if self.yes.space != self.no.space:
            raise StructuralError(f"proposition {self.name!r}: yes/no maps use different state spaces")

    @property
    def space(self) -> StateSpace:
        return self.yes.space

    def side(self, outcome: str) -> PropMap:
        if outcome == "yes":
            return self.yes
        if outcome == "no":
            return self.no
        raise StructuralError(f"outcome must be 'yes' or 'no', got {outcome!r}")


def make_one(space: StateSpace) -> Proposition:
    """The always-true proposition: yes leaves states alone, no never happens."""
    return Proposition("ONE", identity_map(space), constant_zero_map(space))


def make_zero(space: StateSpace) -> Proposition:
    """The never-true proposition, the negation of ONE."""
    return Proposition("ZERO", constant_zero_map(space), identity_map(space))


_NEGATED_RESERVED = {"ONE": "ZERO", "ZERO": "ONE"}


def negate(p: Proposition) -> Proposition:
    """Swap the outcome maps.  Involutive; ONE and ZERO trade places."""
    if p.name in _NEGATED_RESERVED:
        name = _NEGATED_RESERVED[p.name]
    elif p.name.startswith("¬"):
        name = p.name[1:]
    else:
        name = "¬" + p.name
    return Proposition(name, p.no, p.yes)


@dataclass(frozen=True)
class DerivedProposition:
    """One known outcome map of a derived yes/no question.

    Conjunction and adjunction pin down only one side of the result; the
    other side is left undefined rather than guessed, and `realize` can
    look the full proposition up in a model.
    """

    known_side: str
    known_map: PropMap
    provenance: str

    def __post_init__(self):
        if self.known_side not in ("yes", "no"):
            raise StructuralError(f"known_side must be 'yes' or 'no', got {self.known_side!r}")
        table = self.known_map.table
        for z in self.known_map.space.states:
            w = table[z]
            if w is not ZERO and table[w] != w:
                raise StructuralError(f"derived map is not idempotent at {z!r}")


class ModalStatus(Enum):
    IMPOSSIBLE = "impossible"
    POSSIBLE = "possible"
    CERTAIN = "certain"


class PairClass(Enum):
    COMPATIBLE = "compatible"
    COMPLEMENTARY = "complementary"
    STRONGLY_COMPLEMENTARY = "strongly-complementary"


@dataclass(frozen=True)
class Violation:
    """A broken law, with the subject names and witnessing states."""

    law: str
    subjects: tuple[str, ...]
    witness: tuple[str, ...]
    detail: str = ""

    def __str__(self) -> str:
        head = f"[{self.law}] {' '.join(self.subjects)}"
        return f"{head}: {self.detail}" if self.detail else head


@dataclass(frozen=True)
class CommutationWitness:
    """A state where two propositions fail to commute on the given sides."""

    p_name: str
    q_name: str
    p_side: str
    q_side: str
    state: str
    pq: StateRef
    qp: StateRef


@dataclass(frozen=True)
class PairEvidence:
    """Why a pair of observables got its classification."""

    witness: Optional[CommutationWitness]
    common: tuple[tuple[str, str, str], ...]


@dataclass(frozen=True)
class Observable:
    """Finite spectrum of values, each answered by one proposition."""

    name: str
    spectrum: tuple[str, ...]
    family: Mapping[str, Proposition]

    def __post_init__(self):
        object.__setattr__(self, "family", dict(self.family))
        if not self.name or not isinstance(self.name, str):
            raise StructuralError("observable name must be a non-empty string")
        if not self.spectrum:
            raise StructuralError(f"observable {self.name!r}: spectrum must be non-empty")
        seen = set()
        for value in self.spectrum:
            if not isinstance(value, str) or not value:
                raise StructuralError(f"observable {self.name!r}: spectrum values must be non-empty strings")
            if value in seen:
                raise StructuralError(f"observable {self.name!r}: duplicate spectrum value {value!r}")
            seen.add(value)
        missing = [v for v in self.spectrum if v not in self.family]
        if missing:
            raise StructuralError(f"observable {self.name!r}: family has no proposition for value(s) {missing}")
        extra = sorted(v for v in self.family if v not in seen)
        if extra:
            raise StructuralError(f"observable {self.name!r}: family has propositions for unknown value(s) {extra}")
        space = self.family[self.spectrum[0]].space
        for value in self.spectrum:
            if self.family[value].space != space:
                raise StructuralError(f"observable {self.name!r}: family members use different state spaces")

    @property
    def space(self) -> StateSpace:
        return self.family[self.spectrum[0]].space

    def branch(self, value: str) -> Proposition:
        try:
            return self.family[value]
        except KeyError:
            raise StructuralError(f"observable {self.name!r} has no value {value!r}") from None


def observable_from_proposition(p: Proposition, name: Optional[str] = None) -> Observable:
    """Two-valued observable asking the proposition itself."""
    return Observable(name or p.name, ("yes", "no"), {"yes": p, "no": negate(p)})


@dataclass(frozen=True)
class Partition:
    """Split of a model into subsystems, tagging observables local or global."""

    subsystems: tuple[str, ...]
    local_tags: Mapping[str, str]
    global_tags: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "local_tags", dict(self.local_tags))
        if not self.subsystems:
            raise StructuralError("partition must name at least one subsystem")
        seen = set()
        for name in self.subsystems:
            if not isinstance(name, str) or not name:
                raise StructuralError("subsystem names must be non-empty strings")
            if name in seen:
                raise StructuralError(f"duplicate subsystem name {name!r}")
            seen.add(name)


@dataclass(frozen=True)
class Model:
    """A state space with named propositions and observables.

    `propositions` always contains the builtins ONE and ZERO; use
    `Model.build` rather than the raw constructor so they are injected
    and cross-references are checked.
    """

    space: StateSpace
    propositions: Mapping[str, Proposition]
    observables: Mapping[str, Observable]
    partition: Optional[Partition] = None

    def __post_init__(self):
        object.__setattr__(self, "propositions", dict(self.propositions))
        object.__setattr__(self, "observables", dict(self.observables))

    @classmethod
    def build(
        cls,
        space: StateSpace,
        propositions: Iterable[Proposition] = (),
        observables: Iterable[Observable] = (),
        partition: Optional[Partition] = None,
    ) -> "Model":
        props: dict[str, Proposition] = {"ONE": make_one(space), "ZERO": make_zero(space)}
        for p in propositions:
            if p.space != space:
                raise StructuralError(f"proposition {p.name!r} is over a different state space")
            if p.name in RESERVED_PROPOSITION_NAMES:
                if p != props[p.name]:
                    raise StructuralError(f"proposition name {p.name!r} is reserved")
                continue
            if p.name in props:
                raise StructuralError(f"duplicate proposition name {p.name!r}")
            props[p.name] = p
        obs: dict[str, Observable] = {}
        for a in observables:
            if a.name in obs:
                raise StructuralError(f"duplicate observable name {a.name!r}")
            if a.space != space:
                raise StructuralError(f"observable {a.name!r} is over a different state space")
            for value in a.spectrum:
                member = a.family[value]
                if props.get(member.name) != member:
                    raise StructuralError(
                        f"observable {a.name!r}: family member {member.name!r} is not a proposition of the model"
                    )
            obs[a.name] = a
        return cls(space, props, obs, partition)

    def proposition(self, name: str) -> Proposition:
        try:
            return self.propositions[name]
        except KeyError:
            raise StructuralError(f"unknown proposition {name!r}") from None

    def observable(self, name: str) -> Observable:
        try:
            return self.observables[name]
        except KeyError:
            raise StructuralError(f"unknown observable {name!r}") from None


# ---------------------------------------------------------------------------
# Proposition-level operations


def validate_proposition(p: Proposition, space: StateSpace) -> list[Violation]:
    """Check idempotence, mutual annihilation, and consistency pointwise.

    Returns one violation per law per witnessing state; empty means the
    proposition satisfies all three laws on the given space.
    """
    if p.space != space:
        raise StructuralError(f"proposition {p.name!r} is not defined over the given state space")
    out: list[Violation] = []
    for side_name, m in (("yes", p.yes), ("no", p.no)):
        table = m.table
        for z in space.states:
            w = table[z]
            if w is not ZERO and table[w] != w:
                out.append(
                    Violation(
                        f"idempotence-{side_name}",
                        (p.name,),
                        (z,),
                        f"{side_name}({side_name}({z})) = {show_state(table[w])} "
                        f"but {side_name}({z}) = {show_state(w)}",
                    )
                )
    yes_t, no_t = p.yes.table, p.no.table
    for z in space.states:
        w = _step(no_t, yes_t[z])
        if w is not ZERO:
            out.append(
                Violation("annihilation", (p.name,), (z,), f"no(yes({z})) = {show_state(w)}, expected {ZERO_TOKEN}")
            )
        w = _step(yes_t, no_t[z])
        if w is not ZERO:
            out.append(
                Violation("annihilation", (p.name,), (z,), f"yes(no({z})) = {show_state(w)}, expected {ZERO_TOKEN}")
            )
    for z in space.states:
        if yes_t[z] is ZERO and no_t[z] is ZERO:
            out.append(Violation("consistency", (p.name,), (z,), f"both outcomes are impossible at {z}"))
    return out


def apply(p: Proposition, outcome: str, z: StateRef) -> StateRef:
    """Post-measurement state after asking `p` and getting `outcome`."""
    return p.side(outcome)(z)


def compose(f: PropMap, g: PropMap) -> PropMap:
    """The map `f after g`; zero is absorbing throughout."""
    if f.space != g.space:
        raise StructuralError("cannot compose maps over different state spaces")
    f_t, g_t = f.table, g.table
    return PropMap(f.space, {z: _step(f_t, g_t[z]) for z in f.space.states})


def modal_status(p: Proposition, z: StateRef) -> ModalStatus:
    """Impossible, certain, or genuinely open at a proper state."""
    if z is ZERO:
        raise DomainError("modal status is undefined for the zero state")
    yes, no = p.yes(z), p.no(z)
    if yes is ZERO:
        return ModalStatus.IMPOSSIBLE
    if no is ZERO:
        return ModalStatus.CERTAIN
    return ModalStatus.POSSIBLE


def eigenstates_of_proposition(p: Proposition) -> list[tuple[str, str]]:
    """States fixed by one of the outcome maps, sorted by state name."""
    out = []
    for z in sorted(p.space.states):
        if p.yes.table[z] == z:
            out.append((z, "yes"))
        if p.no.table[z] == z:
            out.append((z, "no"))
    return out


_SIDE_PAIRS = (("yes", "yes"), ("yes", "no"), ("no", "yes"), ("no", "no"))


def is_compatible_propositions(p: Proposition, q: Proposition) -> tuple[bool, Optional[CommutationWitness]]:
    """Do all four outcome maps of `p` commute with those of `q`?

    On failure the witness records the first state (scanning sides in a
    fixed order, states in declaration order) where the two application
    orders disagree.
    """
    if p.space != q.space:
        raise StructuralError("propositions are over different state spaces")
    for sp, sq in _SIDE_PAIRS:
        mp = p.side(sp).table
        mq = q.side(sq).table
        for z in p.space.states:
            pq = _step(mp, mq[z])
            qp = _step(mq, mp[z])
            if pq != qp:
                return False, CommutationWitness(p.name, q.name, sp, sq, z, pq, qp)
    return True, None


def conjunction(p: Proposition, q: Proposition) -> DerivedProposition:
    """Sequential "and": defined only for compatible propositions."""
    ok, witness = is_compatible_propositions(p, q)
    if not ok:
        raise IncompatibleOperands(f"{p.name} and {q.name} are not compatible; conjunction is undefined", witness)
    return DerivedProposition("yes", compose(p.yes, q.yes), f"{p.name} AND {q.name}")


def adjunction(p: Proposition, q: Proposition) -> DerivedProposition:
    """Sequential "or", via the negations: defined only for compatible propositions."""
    ok, witness = is_compatible_propositions(p, q)
    if not ok:
        raise IncompatibleOperands(f"{p.name} and {q.name} are not compatible; adjunction is undefined", witness)
    return DerivedProposition("no", compose(p.no, q.no), f"{p.name} OR {q.name}")


def realize(model: Model, d: DerivedProposition) -> Optional[Proposition]:
    """Find the unique model proposition matching a derived one, if any."""
    if d.known_map.space != model.space:
        raise StructuralError("derived proposition is over a different state space")
    table = d.known_map.table
    matches = [p for _, p in sorted(model.propositions.items()) if p.side(d.known_side).table == table]
    if not matches:
        return None
    if len(matches) > 1:
        raise AmbiguousRealization(
            f"{d.provenance}: {len(matches)} propositions share the {d.known_side}-map",
            candidates=[p.name for p in matches],
        )
    return matches[0]


# ---------------------------------------------------------------------------
# Observable-level operations


def validate_observable(a: Observable, space: StateSpace) -> list[Violation]:
    """Check mutual exclusion and joint completeness of the family."""
    if a.space != space:
        raise StructuralError(f"observable {a.name!r} is not defined over the given state space")
    out: list[Violation] = []
    for i, v1 in enumerate(a.spectrum):
        m1 = a.family[v1].yes.table
        for v2 in a.spectrum[i + 1 :]:
            m2 = a.family[v2].yes.table
            for z in space.states:
                if _step(m1, m2[z]) is not ZERO:
                    out.append(
                        Violation(
                            "mutual-exclusion", (a.name, v1, v2), (z,), f"value {v1} stays possible after {v2} at {z}"
                        )
                    )
                if _step(m2, m1[z]) is not ZERO:
                    out.append(
                        Violation(
                            "mutual-exclusion", (a.name, v2, v1), (z,), f"value {v2} stays possible after {v1} at {z}"
                        )
                    )
    for z in space.states:
        if all(a.family[v].yes.table[z] is ZERO for v in a.spectrum):
            out.append(Violation("completeness", (a.name,), (z,), f"every value is impossible at {z}"))
    return out


def eigenstates_of_observable(a: Observable) -> list[tuple[str, str]]:
    """States fixed by some branch, with the value; sorted by state name."""
    out = []
    for z in sorted(a.space.states):
        for value in a.spectrum:
            if a.family[value].yes.table[z] == z:
                out.append((z, value))
    return out


def common_eigenstates(a: Observable, b: Observable) -> list[tuple[str, str, str]]:
    """States that are simultaneously eigenstates of both observables."""
    if a.space != b.space:
        raise StructuralError("observables are over different state spaces")
    out = []
    for z in sorted(a.space.states):
        a_vals = [v for v in a.spectrum if a.family[v].yes.table[z] == z]
        if not a_vals:
            continue
        b_vals = [v for v in b.spectrum if b.family[v].yes.table[z] == z]
        out.extend((z, va, vb) for va in a_vals for vb in b_vals)
    return out


def classify_pair(a: Observable, b: Observable) -> tuple[PairClass, PairEvidence]:
    """Compatible, complementary, or strongly complementary.

    Compatible means every branch of `a` commutes with every branch of
    `b` on all four outcome sides; strongly complementary additionally
    means the pair has no common eigenstate.
    """
    if a.space != b.space:
        raise StructuralError("observables are over different state spaces")
    witness = None
    for va in a.spectrum:
        for vb in b.spectrum:
            ok, w = is_compatible_propositions(a.family[va], b.family[vb])
            if not ok:
                witness = w
                break
        if witness is not None:
            break
    common = tuple(common_eigenstates(a, b))
    if witness is None:
        return PairClass.COMPATIBLE, PairEvidence(None, common)
    if not common:
        return PairClass.STRONGLY_COMPLEMENTARY, PairEvidence(witness, common)
    return PairClass.COMPLEMENTARY, PairEvidence(witness, common)


def measure_sequence(model: Model, z: StateRef, steps: Sequence[tuple[str, str]]) -> StateRef:
    """Fold a sequence of (observable, value) filters over a start state.

    Each step applies the yes-map of the named branch; once the zero
    state is reached it absorbs every later step.
    """
    if z is not ZERO and z not in model.space:
        raise StructuralError(f"unknown state {z!r}")
    current = z
    for obs_name, value in steps:
        branch = model.observable(obs_name).branch(value)
        current = branch.yes(current)
    return current


# ---------------------------------------------------------------------------
# Entanglement


def check_entanglement_preconditions(model: Model, global_name: str, local_names: Sequence[str]) -> list[Violation]:
    """Report why an entanglement query would be meaningless.

    Structural problems (no partition, unknown or untagged observables)
    raise; genuine law failures (locals that do not commute across
    subsystems, a global compatible with a local) come back as report
    entries.
    """
    part = model.partition
    if part is None:
        raise StructuralError("model has no partition")
    g = model.observable(global_name)
    if global_name not in part.global_tags:
        raise StructuralError(f"observable {global_name!r} is not tagged global in the partition")
    for name in local_names:
        model.observable(name)
        if name not in part.local_tags:
            raise StructuralError(f"observable {name!r} is not tagged local in the partition")
    out: list[Violation] = []
    for i, l1 in enumerate(local_names):
        for l2 in local_names[i + 1 :]:
            if part.local_tags[l1] == part.local_tags[l2]:
                continue
            cls_, ev = classify_pair(model.observable(l1), model.observable(l2))
            if cls_ is not PairClass.COMPATIBLE:
                w = ev.witness
                out.append(
                    Violation(
                        "entangle-locals-compatible",
                        (l1, l2),
                        (w.state,) if w is not None else (),
                        f"local observables {l1} and {l2} on different subsystems are {cls_.value}",
                    )
                )
    for name in local_names:
        cls_, _ = classify_pair(g, model.observable(name))
        if cls_ is PairClass.COMPATIBLE:
            out.append(
                Violation(
                    "entangle-global-complementary",
                    (global_name, name),
                    (),
                    f"global observable {global_name} is compatible with local {name}",
                )
            )
    return out


def entangled_states(model: Model, global_name: str, local_names: Sequence[str]) -> list[str]:
    """Eigenstates of the global observable that no listed local resolves."""
    report = check_entanglement_preconditions(model, global_name, local_names)
    if report:
        raise EntanglementPreconditionError("entanglement preconditions failed", report)
    global_eigen = {z for z, _ in eigenstates_of_observable(model.observable(global_name))}
    local_eigen: set[str] = set()
    for name in local_names:
        local_eigen.update(z for z, _ in eigenstates_of_observable(model.observable(name)))
    return sorted(global_eigen - local_eigen)


# ---------------------------------------------------------------------------
# Whole-model operations


def _builtin_violations(model: Model) -> list[Violation]:
    out = []
    for name, want in (("ONE", make_one(model.space)), ("ZERO", make_zero(model.space))):
        got = model.propositions.get(name)
        if got is None:
            out.append(Violation("builtin-structure", (name,), (), f"builtin proposition {name} is missing"))
        elif got != want:
            out.append(Violation("builtin-structure", (name,), (), f"builtin proposition {name} is malformed"))
    return out


def _partition_violations(model: Model) -> list[Violation]:
    part = model.partition
    if part is None:
        return []
    out = []
    for name in sorted(part.local_tags):
        if name not in model.observables:
            out.append(Violation("partition-reference", (name,), (), f"local tag names unknown observable {name!r}"))
        target = part.local_tags[name]
        if target not in part.subsystems:
            out.append(
                Violation("partition-reference", (name,), (), f"local tag for {name!r} names unknown subsystem {target!r}")
            )
    for name in part.global_tags:
        if name not in model.observables:
            out.append(Violation("partition-reference", (name,), (), f"global tag names unknown observable {name!r}"))
    for name in sorted(set(part.local_tags) & set(part.global_tags)):
        out.append(Violation("partition-overlap", (name,), (), f"observable {name!r} is tagged both local and global"))
    return out


def validate_model(model: Model) -> list[Violation]:
    """Aggregate report: builtins, every proposition, every observable, partition."""
    out = _builtin_violations(model)
    for name in sorted(model.propositions):
        out.extend(validate_proposition(model.propositions[name], model.space))
    for name in sorted(model.observables):
        out.extend(validate_observable(model.observables[name], model.space))
    out.extend(_partition_violations(model))
    return out


def _rebuild(model: Model, space: StateSpace, convert) -> Model:
    """Rebuild a model over a new space, mapping every PropMap through `convert`."""
    props = {}
    for name, p in model.propositions.items():
        if name in RESERVED_PROPOSITION_NAMES:
            continue
        props[name] = Proposition(name, convert(p.yes), convert(p.no))
    full = dict(props)
    full["ONE"] = make_one(space)
    full["ZERO"] = make_zero(space)
    observables = [
        Observable(o.name, o.spectrum, {v: full[o.family[v].name] for v in o.spectrum})
        for o in model.observables.values()
    ]
    return Model.build(space, props.values(), observables, model.partition)


def rename_states(model: Model, mapping: Mapping[str, str]) -> Model:
    """Rename every state; the mapping must cover the whole space."""
    missing = [s for s in model.space.states if s not in mapping]
    if missing:
        raise StructuralError(f"rename mapping is missing states {missing}")
    space = StateSpace(tuple(mapping[s] for s in model.space.states))

    def convert(m: PropMap) -> PropMap:
        return PropMap(
            space,
            {mapping[z]: (ZERO if t is ZERO else mapping[t]) for z, t in m.table.items()},
        )

    return _rebuild(model, space, convert)


def reachable_submodel(model: Model, seeds: Sequence[str]) -> Model:
    """Restrict the model to states reachable from the seeds.

    Reachability follows every outcome map of every proposition, so the
    restricted maps stay total.
    """
    for s in seeds:
        if s not in model.space:
            raise StructuralError(f"unknown state {s!r}")
    if not seeds:
        raise StructuralError("at least one seed state is required")
    reached = set(seeds)
    frontier = list(seeds)
    tables = [p.side(side).table for p in model.propositions.values() for side in ("yes", "no")]
    while frontier:
        z = frontier.pop()
        for table in tables:
            t = table[z]
            if t is not ZERO and t not in reached:
                reached.add(t)
                frontier.append(t)
    keep = tuple(s for s in model.space.states if s in reached)
    space = StateSpace(keep)

    def convert(m: PropMap) -> PropMap:
        return PropMap(space, {z: m.table[z] for z in keep})

    return _rebuild(model, space, convert)
