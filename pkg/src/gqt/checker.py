"""Seeded random model generation and whole-model law checking.

The generator only emits valid models: propositions are built by
partitioning states into yes-eigenstates, no-eigenstates, and contingent
states that map into the first two groups, which satisfies idempotence,
annihilation, and consistency by construction.  Observable families pick
pairwise-annihilating propositions and pad the uncovered states with a
remainder branch.  `check_laws` re-verifies everything from scratch, so
under fuzzing any reported violation is an implementation bug.
"""

from __future__ import annotations

import dataclasses
import random
from dataclasses import dataclass
from typing import Optional

from . import core
from .core import ZERO, Violation, _step
from .errors import StructuralError

# Laws re-checked by check_laws, in report order.
LAW_IDS = (
    "PP=P",
    "P·negP=0",
    "consistency",
    "0P=P0=0",
    "1P=P1=P",
    "1ANDP=P",
    "mutual-exclusion",
    "completeness",
    "compat-implies-joint-eigenstate",
    "strongcomp-implies-comp",
    "compat-order-independence",
)

_MAX_SEED = 2**64


@dataclass(frozen=True)
class GeneratorParams:
    """Knobs for the random model generator."""

    n_states: int
    n_props: int = 0
    n_obs: int = 0
    max_spectrum: int = 4
    seed: int = 0

    def __post_init__(self):
        if not 1 <= self.n_states <= 64:
            raise StructuralError(f"n_states must be in 1..64, got {self.n_states}")
        if not 0 <= self.n_props <= 16:
            raise StructuralError(f"n_props must be in 0..16, got {self.n_props}")
        if not 0 <= self.n_obs <= 8:
            raise StructuralError(f"n_obs must be in 0..8, got {self.n_obs}")
        if not 2 <= self.max_spectrum <= 8:
            raise StructuralError(f"max_spectrum must be in 2..8, got {self.max_spectrum}")
        if not 0 <= self.seed < _MAX_SEED:
            raise StructuralError("seed must be an unsigned 64-bit integer")


def _random_proposition(rng: random.Random, space: core.StateSpace, name: str) -> core.Proposition:
    # Partition states: yes-eigen, no-eigen, contingent.  Contingent states
    # map into the eigen groups, so both outcome maps are idempotent and
    # mutually annihilating by construction.
    cats = {}
    for s in space.states:
        r = rng.random()
        cats[s] = "Y" if r < 0.4 else ("N" if r < 0.8 else "C")
    if all(c == "C" for c in cats.values()):
        cats[rng.choice(space.states)] = rng.choice("YN")
    yes_eigen = [s for s in space.states if cats[s] == "Y"]
    no_eigen = [s for s in space.states if cats[s] == "N"]
    yes = {}
    no = {}
    for s in space.states:
        c = cats[s]
        if c == "Y":
            yes[s] = s
            no[s] = ZERO
        elif c == "N":
            yes[s] = ZERO
            no[s] = s
        else:
            yes[s] = rng.choice(yes_eigen) if yes_eigen else ZERO
            no[s] = rng.choice(no_eigen) if no_eigen else ZERO
    return core.Proposition(name, core.PropMap(space, yes), core.PropMap(space, no))


def _mutually_annihilating(p: core.Proposition, q: core.Proposition, space: core.StateSpace) -> bool:
    p_yes, q_yes = p.yes.table, q.yes.table
    for z in space.states:
        if _step(p_yes, q_yes[z]) is not ZERO:
            return False
        if _step(q_yes, p_yes[z]) is not ZERO:
            return False
    return True


def _remainder_proposition(
    rng: random.Random,
    space: core.StateSpace,
    name: str,
    uncovered: list[str],
    kill: set[str],
) -> core.Proposition:
    # Yes fixes every uncovered state and is impossible on the yes-eigen
    # states of the selected branches; covered non-eigen states are
    # contingent.  Keeps the family exclusive and makes it complete.
    uncovered_set = set(uncovered)
    kill_list = [z for z in space.states if z in kill]
    yes = {}
    no = {}
    for z in space.states:
        if z in uncovered_set:
            yes[z] = z
            no[z] = ZERO
        elif z in kill:
            yes[z] = ZERO
            no[z] = z
        else:
            yes[z] = rng.choice(uncovered) if (uncovered and rng.random() < 0.5) else ZERO
            no[z] = rng.choice(kill_list)
    return core.Proposition(name, core.PropMap(space, yes), core.PropMap(space, no))


def _random_observable(
    rng: random.Random,
    space: core.StateSpace,
    name: str,
    pool: list[core.Proposition],
    max_spectrum: int,
) -> tuple[core.Observable, list[core.Proposition]]:
    target = rng.randint(2, max_spectrum)
    chosen: list[core.Proposition] = []
    if pool:
        for p in rng.sample(pool, len(pool)):
            if len(chosen) >= target - 1:
                break
            if all(_mutually_annihilating(p, q, space) for q in chosen):
                chosen.append(p)
    uncovered = [z for z in space.states if all(p.yes.table[z] is ZERO for p in chosen)]
    kill = {z for p in chosen for z in space.states if p.yes.table[z] == z}
    pads: list[core.Proposition] = []
    if uncovered:
        pad = _remainder_proposition(rng, space, f"{name}rest", uncovered, kill)
        chosen.append(pad)
        pads.append(pad)
    spectrum = tuple(f"v{i}" for i in range(len(chosen)))
    family = {f"v{i}": p for i, p in enumerate(chosen)}
    return core.Observable(name, spectrum, family), pads


def generate_model(params: GeneratorParams) -> core.Model:
    """Deterministic pseudo-random valid model for the given parameters."""
    rng = random.Random(params.seed)
    space = core.StateSpace(tuple(f"s{i}" for i in range(params.n_states)))
    props = [_random_proposition(rng, space, f"P{k}") for k in range(params.n_props)]
    observables = []
    pads: list[core.Proposition] = []
    for j in range(params.n_obs):
        obs, extra = _random_observable(rng, space, f"A{j}", props, params.max_spectrum)
        observables.append(obs)
        pads.extend(extra)
    return core.Model.build(space, props + pads, observables)


# ---------------------------------------------------------------------------
# Law checking


def check_laws(model: core.Model) -> list[Violation]:
    """Re-verify every supported law against the model, from scratch.

    Covers the pointwise proposition laws, composition with the builtin
    ONE and ZERO, the conjunction identity with ONE, observable exclusion
    and completeness, and three theorems about observable pairs.  The
    conjunction of a proposition with its own negation is the annihilation
    composite, so it is reported under "P·negP=0".
    """
    out: list[Violation] = []
    space = model.space
    states = space.states
    one = model.propositions.get("ONE")
    zero = model.propositions.get("ZERO")

    for name in sorted(model.propositions):
        p = model.propositions[name]
        for side in ("yes", "no"):
            table = p.side(side).table
            for z in states:
                w = table[z]
                if w is not ZERO and table[w] != w:
                    out.append(Violation("PP=P", (name, side), (z,), f"{side} map is not idempotent at {z}"))
        yes_t, no_t = p.yes.table, p.no.table
        for z in states:
            if _step(no_t, yes_t[z]) is not ZERO or _step(yes_t, no_t[z]) is not ZERO:
                out.append(Violation("P·negP=0", (name,), (z,), f"outcome maps do not annihilate at {z}"))
        for z in states:
            if yes_t[z] is ZERO and no_t[z] is ZERO:
                out.append(Violation("consistency", (name,), (z,), f"both outcomes are impossible at {z}"))
        if zero is not None:
            zero_t = zero.yes.table
            for z in states:
                if _step(zero_t, yes_t[z]) is not ZERO or _step(yes_t, zero_t[z]) is not ZERO:
                    out.append(Violation("0P=P0=0", (name,), (z,), f"composition with ZERO is not ZERO at {z}"))
        if one is not None:
            one_t = one.yes.table
            for z in states:
                if _step(one_t, yes_t[z]) != yes_t[z] or _step(yes_t, one_t[z]) != yes_t[z]:
                    out.append(Violation("1P=P1=P", (name,), (z,), f"composition with ONE changes the map at {z}"))
            # conjunction with ONE: both orders must reproduce the yes map
            for z in states:
                if _step(one_t, yes_t[z]) != yes_t[z]:
                    out.append(Violation("1ANDP=P", (name,), (z,), f"ONE AND {name} differs from {name} at {z}"))
                    break

    for name in sorted(model.observables):
        out.extend(core.validate_observable(model.observables[name], space))

    obs_names = sorted(model.observables)
    for i, na in enumerate(obs_names):
        for nb in obs_names[i:]:
            a = model.observables[na]
            b = model.observables[nb]
            cls_, ev = core.classify_pair(a, b)
            common = set(ev.common)
            if cls_ is core.PairClass.COMPATIBLE and not common:
                out.append(
                    Violation(
                        "strongcomp-implies-comp",
                        (na, nb),
                        (),
                        "pair has no common eigenstate yet classifies as compatible",
                    )
                )
            if cls_ is not core.PairClass.COMPATIBLE:
                continue
            for z in states:
                if not _joint_eigenstate_reachable(a, b, z, common):
                    out.append(
                        Violation(
                            "compat-implies-joint-eigenstate",
                            (na, nb),
                            (z,),
                            "no common eigenstate reachable by one measurement of each",
                        )
                    )
            for va in a.spectrum:
                ma = a.family[va].yes.table
                for vb in b.spectrum:
                    mb = b.family[vb].yes.table
                    for z in states:
                        if _step(ma, mb[z]) != _step(mb, ma[z]):
                            out.append(
                                Violation(
                                    "compat-order-independence",
                                    (na, va, nb, vb),
                                    (z,),
                                    f"measurement order changes the outcome at {z}",
                                )
                            )
    return out


def _joint_eigenstate_reachable(a: core.Observable, b: core.Observable, z: str, common: set) -> bool:
    for va in a.spectrum:
        w1 = a.family[va].yes.table[z]
        if w1 is ZERO:
            continue
        for vb in b.spectrum:
            w2 = b.family[vb].yes.table[w1]
            if w2 is ZERO:
                continue
            if (w2, va, vb) in common:
                return True
    return False


def violation_holds(model: core.Model, v: Violation) -> bool:
    """Replay a reported violation against a model.

    Returns True when the cited law still fails at the cited witness;
    used to make counterexamples self-verifying.
    """
    law = v.law
    if law in ("PP=P", "idempotence-yes", "idempotence-no"):
        if law == "PP=P":
            name, side = v.subjects
        else:
            (name,) = v.subjects
            side = law.split("-")[1]
        table = model.proposition(name).side(side).table
        w = table[v.witness[0]]
        return w is not ZERO and table[w] != w
    if law in ("P·negP=0", "annihilation"):
        p = model.proposition(v.subjects[0])
        z = v.witness[0]
        return (
            _step(p.no.table, p.yes.table[z]) is not ZERO
            or _step(p.yes.table, p.no.table[z]) is not ZERO
        )
    if law == "consistency":
        p = model.proposition(v.subjects[0])
        z = v.witness[0]
        return p.yes.table[z] is ZERO and p.no.table[z] is ZERO
    if law == "0P=P0=0":
        p = model.proposition(v.subjects[0])
        zero_t = model.proposition("ZERO").yes.table
        z = v.witness[0]
        return _step(zero_t, p.yes.table[z]) is not ZERO or _step(p.yes.table, zero_t[z]) is not ZERO
    if law in ("1P=P1=P", "1ANDP=P"):
        p = model.proposition(v.subjects[0])
        one_t = model.proposition("ONE").yes.table
        z = v.witness[0]
        return _step(one_t, p.yes.table[z]) != p.yes.table[z] or _step(p.yes.table, one_t[z]) != p.yes.table[z]
    if law == "mutual-exclusion":
        obs_name, v1, v2 = v.subjects
        a = model.observable(obs_name)
        z = v.witness[0]
        return _step(a.family[v1].yes.table, a.family[v2].yes.table[z]) is not ZERO
    if law == "completeness":
        a = model.observable(v.subjects[0])
        z = v.witness[0]
        return all(a.family[val].yes.table[z] is ZERO for val in a.spectrum)
    if law == "strongcomp-implies-comp":
        a = model.observable(v.subjects[0])
        b = model.observable(v.subjects[1])
        cls_, ev = core.classify_pair(a, b)
        return cls_ is core.PairClass.COMPATIBLE and not ev.common
    if law == "compat-implies-joint-eigenstate":
        a = model.observable(v.subjects[0])
        b = model.observable(v.subjects[1])
        cls_, ev = core.classify_pair(a, b)
        if cls_ is not core.PairClass.COMPATIBLE:
            return False
        return not _joint_eigenstate_reachable(a, b, v.witness[0], set(ev.common))
    if law == "compat-order-independence":
        na, va, nb, vb = v.subjects
        ma = model.observable(na).family[va].yes.table
        mb = model.observable(nb).family[vb].yes.table
        z = v.witness[0]
        return _step(ma, mb[z]) != _step(mb, ma[z])
    raise StructuralError(f"cannot replay unknown law {law!r}")


# ---------------------------------------------------------------------------
# Fuzzing


@dataclass(frozen=True)
class FuzzCounterexample:
    """First failure seen for one law, with a minimized model."""

    law: str
    seed: int
    violation: Violation
    model: core.Model


@dataclass(frozen=True)
class FuzzSummary:
    params: GeneratorParams
    n_models: int
    n_violations: int
    first_by_law: dict[str, FuzzCounterexample]

    def __post_init__(self):
        object.__setattr__(self, "first_by_law", dict(self.first_by_law))


def minimize_counterexample(model: core.Model, violation: Violation) -> core.Model:
    """Shrink a model to the reachable closure of the violation's witnesses."""
    seeds = [w for w in violation.witness if w in model.space]
    if not seeds:
        return model
    return core.reachable_submodel(model, seeds)


def fuzz(params: GeneratorParams, n_models: int) -> FuzzSummary:
    """Generate models from consecutive seeds and law-check each one."""
    if n_models < 0:
        raise StructuralError("n_models must be non-negative")
    first: dict[str, FuzzCounterexample] = {}
    total = 0
    for i in range(n_models):
        run = dataclasses.replace(params, seed=(params.seed + i) % _MAX_SEED)
        model = generate_model(run)
        violations = check_laws(model)
        total += len(violations)
        for v in violations:
            if v.law not in first:
                first[v.law] = FuzzCounterexample(v.law, run.seed, v, minimize_counterexample(model, v))
    return FuzzSummary(params, n_models, total, first)
