"""Core calculus: propositions, observables, classification, entanglement."""

import pytest

from gqt import core
from gqt.core import ZERO, ModalStatus, PairClass
from gqt.errors import (
    AmbiguousRealization,
    DomainError,
    EntanglementPreconditionError,
    IncompatibleOperands,
    StructuralError,
)

from conftest import make_qzx, mutate_entry


def space4():
    return core.StateSpace(("a", "b", "c", "d"))


# ---------------------------------------------------------------------------
# Construction and structural errors


def test_state_space_rejects_duplicates_and_zero_token():
    with pytest.raises(StructuralError):
        core.StateSpace(("a", "a"))
    with pytest.raises(StructuralError):
        core.StateSpace(())
    with pytest.raises(StructuralError):
        core.StateSpace(("a", "null"))
    with pytest.raises(StructuralError):
        core.StateSpace(("a", ""))


def test_prop_map_must_be_total():
    space = space4()
    with pytest.raises(StructuralError, match="not total"):
        core.PropMap(space, {"a": "a", "b": ZERO, "c": "a"})
    with pytest.raises(StructuralError, match="unknown state"):
        core.PropMap(space, {"a": "a", "b": ZERO, "c": "a", "d": "zz"})
    with pytest.raises(StructuralError):
        core.PropMap(space, {"a": "a", "b": ZERO, "c": "a", "d": "d", "e": "a"})


def test_prop_map_zero_is_absorbing():
    m = core.identity_map(space4())
    assert m(ZERO) is ZERO
    assert m("a") == "a"
    with pytest.raises(StructuralError):
        m("zz")


def test_proposition_requires_matching_spaces():
    s1, s2 = space4(), core.StateSpace(("x", "y"))
    with pytest.raises(StructuralError):
        core.Proposition("P", core.identity_map(s1), core.constant_zero_map(s2))


def test_observable_family_must_cover_spectrum():
    qzx = make_qzx()
    z0 = qzx.propositions["Z0"]
    with pytest.raises(StructuralError, match="no proposition for value"):
        core.Observable("A", ("0", "1"), {"0": z0})
    with pytest.raises(StructuralError, match="unknown value"):
        core.Observable("A", ("0",), {"0": z0, "1": z0})
    with pytest.raises(StructuralError, match="duplicate spectrum value"):
        core.Observable("A", ("0", "0"), {"0": z0})


def test_model_build_injects_builtins_and_rejects_redefinition(qzx):
    assert set(core.RESERVED_PROPOSITION_NAMES) <= set(qzx.propositions)
    assert qzx.propositions["ONE"] == core.make_one(qzx.space)
    space = qzx.space
    rogue = core.Proposition("ONE", core.constant_zero_map(space), core.identity_map(space))
    with pytest.raises(StructuralError, match="reserved"):
        core.Model.build(space, [rogue])
    # passing the genuine builtin through is allowed (idempotent rebuild)
    rebuilt = core.Model.build(space, qzx.propositions.values(), qzx.observables.values())
    assert rebuilt == qzx


def test_model_build_rejects_foreign_family_member(qzx):
    foreign = core.Proposition("F", core.identity_map(qzx.space), core.constant_zero_map(qzx.space))
    obs = core.Observable("A", ("v",), {"v": foreign})
    with pytest.raises(StructuralError, match="not a proposition of the model"):
        core.Model.build(qzx.space, [], [obs])


# ---------------------------------------------------------------------------
# validate_proposition


def test_builtins_validate_clean(qzx):
    assert core.validate_proposition(qzx.propositions["ONE"], qzx.space) == []
    assert core.validate_proposition(qzx.propositions["ZERO"], qzx.space) == []


def test_qzx_propositions_validate_clean(qzx):
    for name in ("Z0", "Z1", "X0", "X1"):
        assert core.validate_proposition(qzx.propositions[name], qzx.space) == []


def test_redirected_entry_breaks_annihilation(qzx):
    # send Z0.yes(zp) to zp itself: zp is not a yes-eigenstate, so the
    # no-map no longer annihilates the yes-image
    broken = mutate_entry(qzx, "Z0", "yes", "zp", "zp")
    report = core.validate_proposition(broken.propositions["Z0"], qzx.space)
    laws = {(v.law, v.witness) for v in report}
    assert ("annihilation", ("zp",)) in laws


def test_idempotence_violation_witness():
    space = core.StateSpace(("a", "b"))
    yes = core.PropMap(space, {"a": "b", "b": ZERO})
    no = core.PropMap(space, {"a": ZERO, "b": "b"})
    # yes(a) = b but yes(b) = ZERO: not idempotent at a; also b claims
    # both outcomes in a tangled way, caught separately
    p = core.Proposition("P", yes, no)
    report = core.validate_proposition(p, space)
    assert any(v.law == "idempotence-yes" and v.witness == ("a",) for v in report)


def test_consistency_violation():
    space = core.StateSpace(("a",))
    p = core.Proposition("P", core.constant_zero_map(space), core.constant_zero_map(space))
    report = core.validate_proposition(p, space)
    assert [v.law for v in report] == ["consistency"]
    assert report[0].witness == ("a",)


def test_validate_proposition_space_mismatch(qzx):
    with pytest.raises(StructuralError):
        core.validate_proposition(qzx.propositions["Z0"], core.StateSpace(("x",)))


# ---------------------------------------------------------------------------
# negate / apply / compose / modal status


def test_negate_is_involutive(qzx):
    for name in ("Z0", "X1"):
        p = qzx.propositions[name]
        n = core.negate(p)
        assert n.name == "¬" + name
        assert n.yes == p.no and n.no == p.yes
        assert core.negate(n) == p


def test_negate_swaps_builtins(qzx):
    one = qzx.propositions["ONE"]
    assert core.negate(one) == qzx.propositions["ZERO"]
    assert core.negate(qzx.propositions["ZERO"]) == one


def test_apply_matches_tables(qzx):
    z0 = qzx.propositions["Z0"]
    assert core.apply(z0, "yes", "zp") == "z0"
    assert core.apply(z0, "no", "zp") == "z1"
    assert core.apply(z0, "yes", "z1") is ZERO
    assert core.apply(z0, "yes", ZERO) is ZERO
    with pytest.raises(StructuralError):
        core.apply(z0, "maybe", "z0")
    with pytest.raises(StructuralError):
        core.apply(z0, "yes", "nope")


def test_compose_is_associative_action(qzx):
    z0, x0 = qzx.propositions["Z0"], qzx.propositions["X0"]
    assert core.compose(z0.yes, z0.yes) == z0.yes
    assert core.compose(z0.yes, z0.no) == core.constant_zero_map(qzx.space)
    one = qzx.propositions["ONE"]
    assert core.compose(one.yes, x0.yes) == x0.yes
    assert core.compose(x0.yes, one.yes) == x0.yes
    with pytest.raises(StructuralError):
        core.compose(z0.yes, core.identity_map(core.StateSpace(("q",))))


def test_modal_status(qzx):
    z0 = qzx.propositions["Z0"]
    assert core.modal_status(z0, "z0") is ModalStatus.CERTAIN
    assert core.modal_status(z0, "z1") is ModalStatus.IMPOSSIBLE
    assert core.modal_status(z0, "zp") is ModalStatus.POSSIBLE
    assert core.modal_status(qzx.propositions["ZERO"], "z0") is ModalStatus.IMPOSSIBLE
    assert core.modal_status(qzx.propositions["ONE"], "zm") is ModalStatus.CERTAIN
    with pytest.raises(DomainError):
        core.modal_status(z0, ZERO)


def test_eigenstates_of_proposition(qzx):
    z0 = qzx.propositions["Z0"]
    assert core.eigenstates_of_proposition(z0) == [("z0", "yes"), ("z1", "no")]
    neg = core.negate(z0)
    assert core.eigenstates_of_proposition(neg) == [("z0", "no"), ("z1", "yes")]
    one = qzx.propositions["ONE"]
    assert core.eigenstates_of_proposition(one) == [(z, "yes") for z in sorted(qzx.space.states)]


# ---------------------------------------------------------------------------
# Compatibility, conjunction, realization


def test_compatibility_with_negation_and_builtins(qzx):
    for name, p in qzx.propositions.items():
        ok, witness = core.is_compatible_propositions(p, core.negate(p))
        assert ok and witness is None, name
        ok, _ = core.is_compatible_propositions(p, qzx.propositions["ONE"])
        assert ok
        ok, _ = core.is_compatible_propositions(p, qzx.propositions["ZERO"])
        assert ok


def test_z_and_x_are_incompatible(qzx):
    z0, x0 = qzx.propositions["Z0"], qzx.propositions["X0"]
    ok, witness = core.is_compatible_propositions(z0, x0)
    assert not ok
    # replay the witness on the raw maps
    mp = z0.side(witness.p_side).table
    mq = x0.side(witness.q_side).table
    z = witness.state
    pq = mp[mq[z]] if mq[z] is not ZERO else ZERO
    qp = mq[mp[z]] if mp[z] is not ZERO else ZERO
    assert pq == witness.pq and qp == witness.qp and pq != qp


def test_conjunction_with_one_reproduces_yes_map(qzx):
    z0 = qzx.propositions["Z0"]
    d = core.conjunction(qzx.propositions["ONE"], z0)
    assert d.known_side == "yes"
    assert d.known_map == z0.yes
    assert core.realize(qzx, d) == z0


def test_conjunction_with_own_negation_is_never(qzx):
    z0 = qzx.propositions["Z0"]
    d = core.conjunction(z0, core.negate(z0))
    assert d.known_map == core.constant_zero_map(qzx.space)
    assert core.realize(qzx, d) == qzx.propositions["ZERO"]


def test_conjunction_of_incompatible_raises(qzx):
    with pytest.raises(IncompatibleOperands) as exc:
        core.conjunction(qzx.propositions["Z0"], qzx.propositions["X0"])
    assert exc.value.witness is not None
    with pytest.raises(IncompatibleOperands):
        core.adjunction(qzx.propositions["Z0"], qzx.propositions["X0"])


def test_adjunction_with_negation_is_always(qzx):
    z0 = qzx.propositions["Z0"]
    d = core.adjunction(z0, core.negate(z0))
    assert d.known_side == "no"
    assert d.known_map == core.constant_zero_map(qzx.space)
    assert core.realize(qzx, d) == qzx.propositions["ONE"]


def test_realize_returns_none_when_unmatched(qzx):
    space = qzx.space
    const_zp = core.PropMap(space, {z: "zp" for z in space.states})
    d = core.DerivedProposition("yes", const_zp, "synthetic")
    assert core.realize(qzx, d) is None


def test_realize_ambiguity(bell):
    # PsiP, PsiM, and builtin ZERO all share the constant-zero yes map
    d = core.conjunction(bell.propositions["PsiP"], bell.propositions["PsiM"])
    with pytest.raises(AmbiguousRealization) as exc:
        core.realize(bell, d)
    assert set(exc.value.candidates) == {"PsiP", "PsiM", "ZERO"}


def test_derived_proposition_must_be_idempotent(qzx):
    space = qzx.space
    bad = core.PropMap(space, {"z0": "zp", "zp": "zm", "zm": "zm", "z1": ZERO})
    with pytest.raises(StructuralError, match="idempotent"):
        core.DerivedProposition("yes", bad, "bad")


# ---------------------------------------------------------------------------
# Observables


def test_validate_observable_clean(qzx, bell, bistable):
    for model in (qzx, bell, bistable):
        for obs in model.observables.values():
            assert core.validate_observable(obs, model.space) == []


def test_observable_from_proposition_validates(qzx):
    obs = core.observable_from_proposition(qzx.propositions["Z0"])
    assert core.validate_observable(obs, qzx.space) == []
    assert obs.spectrum == ("yes", "no")


def test_mutual_exclusion_violation(qzx):
    z0 = qzx.propositions["Z0"]
    obs = core.Observable("BAD", ("0", "1"), {"0": z0, "1": z0})
    report = core.validate_observable(obs, qzx.space)
    assert any(v.law == "mutual-exclusion" for v in report)
    v = next(v for v in report if v.law == "mutual-exclusion")
    assert v.subjects[0] == "BAD"
    assert v.witness[0] in qzx.space.states


def test_completeness_violation():
    space = core.StateSpace(("a", "b"))
    only_a = core.Proposition(
        "OA",
        core.PropMap(space, {"a": "a", "b": ZERO}),
        core.PropMap(space, {"a": ZERO, "b": "b"}),
    )
    never = core.Proposition("NV", core.constant_zero_map(space), core.identity_map(space))
    obs = core.Observable("A", ("hit", "miss"), {"hit": only_a, "miss": never})
    report = core.validate_observable(obs, space)
    assert [(v.law, v.witness) for v in report] == [("completeness", ("b",))]


def test_eigenstates_of_observable(qzx, bell):
    assert core.eigenstates_of_observable(qzx.observables["Z"]) == [("z0", "0"), ("z1", "1")]
    assert core.eigenstates_of_observable(qzx.observables["X"]) == [("zm", "-"), ("zp", "+")]
    assert core.eigenstates_of_observable(bell.observables["BELL"]) == [("phiM", "phi-"), ("phiP", "phi+")]


def test_classify_qzx_pairs(qzx):
    z, x = qzx.observables["Z"], qzx.observables["X"]
    cls_, ev = core.classify_pair(z, x)
    assert cls_ is PairClass.STRONGLY_COMPLEMENTARY
    assert ev.common == ()
    assert ev.witness is not None
    cls_, ev = core.classify_pair(z, z)
    assert cls_ is PairClass.COMPATIBLE
    assert ev.witness is None
    assert core.common_eigenstates(z, x) == []


def test_classify_bell_pairs(bell):
    za, zb, bell_obs = bell.observables["ZA"], bell.observables["ZB"], bell.observables["BELL"]
    cls_, ev = core.classify_pair(za, zb)
    assert cls_ is PairClass.COMPATIBLE
    assert list(ev.common) == [("s00", "0", "0"), ("s11", "1", "1")]
    for local in (za, zb):
        cls_, ev = core.classify_pair(bell_obs, local)
        assert cls_ is PairClass.STRONGLY_COMPLEMENTARY
        assert ev.common == ()


def test_complementary_with_common_eigenstate():
    # Two observables sharing the eigenstate "e" but disagreeing on the
    # contingent state "c": complementary, not strongly complementary.
    space = core.StateSpace(("e", "f", "c"))
    pa = core.Proposition(
        "PA",
        core.PropMap(space, {"e": "e", "f": ZERO, "c": "e"}),
        core.PropMap(space, {"e": ZERO, "f": "f", "c": "f"}),
    )
    pb = core.Proposition(
        "PB",
        core.PropMap(space, {"e": "e", "f": ZERO, "c": ZERO}),
        core.PropMap(space, {"e": ZERO, "f": "f", "c": "f"}),
    )
    a = core.observable_from_proposition(pa, "A")
    b = core.observable_from_proposition(pb, "B")
    assert core.validate_observable(a, space) == []
    assert core.validate_observable(b, space) == []
    cls_, ev = core.classify_pair(a, b)
    assert cls_ is PairClass.COMPLEMENTARY
    assert ("e", "yes", "yes") in ev.common
    assert ev.witness is not None


def test_bistable_is_strongly_complementary(bistable):
    cls_, ev = core.classify_pair(bistable.observables["PERCEPT"], bistable.observables["ATTENTION"])
    assert cls_ is PairClass.STRONGLY_COMPLEMENTARY
    assert ev.common == ()


# ---------------------------------------------------------------------------
# Measurement sequences


def test_measure_sequence_bell(bell):
    assert core.measure_sequence(bell, "phiP", [("ZA", "0"), ("BELL", "phi+")]) == "phiP"
    assert core.measure_sequence(bell, "phiP", [("BELL", "phi+"), ("ZA", "0")]) == "s00"
    assert core.measure_sequence(bell, "phiP", []) == "phiP"
    assert core.measure_sequence(bell, "phiP", [("ZA", "0"), ("ZA", "1")]) is ZERO
    # zero absorbs everything afterwards
    assert core.measure_sequence(bell, "phiP", [("ZA", "0"), ("ZA", "1"), ("BELL", "phi+")]) is ZERO


def test_measure_sequence_errors(bell):
    with pytest.raises(StructuralError):
        core.measure_sequence(bell, "nope", [("ZA", "0")])
    with pytest.raises(StructuralError):
        core.measure_sequence(bell, "phiP", [("NOPE", "0")])
    with pytest.raises(StructuralError):
        core.measure_sequence(bell, "phiP", [("ZA", "7")])


def test_order_independence_for_compatible_pair(bell):
    za, zb = bell.observables["ZA"], bell.observables["ZB"]
    for z in bell.space.states:
        for va in za.spectrum:
            for vb in zb.spectrum:
                left = core.measure_sequence(bell, z, [("ZA", va), ("ZB", vb)])
                right = core.measure_sequence(bell, z, [("ZB", vb), ("ZA", va)])
                assert left == right


# ---------------------------------------------------------------------------
# Entanglement


def test_bell_entangled_states(bell):
    assert core.check_entanglement_preconditions(bell, "BELL", ["ZA", "ZB"]) == []
    assert core.entangled_states(bell, "BELL", ["ZA", "ZB"]) == ["phiM", "phiP"]


def test_entangled_states_subset_property(bell):
    states = core.entangled_states(bell, "BELL", ["ZA", "ZB"])
    global_eigen = {z for z, _ in core.eigenstates_of_observable(bell.observables["BELL"])}
    assert set(states) <= global_eigen
    for name in ("ZA", "ZB"):
        local_eigen = {z for z, _ in core.eigenstates_of_observable(bell.observables[name])}
        assert not (set(states) & local_eigen)


def test_entanglement_structural_errors(bell, qzx):
    with pytest.raises(StructuralError, match="no partition"):
        core.check_entanglement_preconditions(qzx, "Z", ["X"])
    with pytest.raises(StructuralError, match="unknown observable"):
        core.check_entanglement_preconditions(bell, "NOPE", ["ZA"])
    with pytest.raises(StructuralError, match="not tagged local"):
        core.check_entanglement_preconditions(bell, "BELL", ["ZA", "BELL"])
    with pytest.raises(StructuralError, match="not tagged global"):
        core.check_entanglement_preconditions(bell, "ZA", ["ZB"])


def test_entanglement_precondition_violations(bell):
    # tag BELL local on subsystem A as well: global vs local BELL is
    # self-compatible, which the report must call out
    part = core.Partition(("A", "B"), {"ZA": "A", "ZB": "B", "BELL": "A"}, ("BELL",))
    model = core.Model(bell.space, bell.propositions, bell.observables, part)
    report = core.check_entanglement_preconditions(model, "BELL", ["BELL", "ZB"])
    laws = {v.law for v in report}
    assert "entangle-global-complementary" in laws
    with pytest.raises(EntanglementPreconditionError) as exc:
        core.entangled_states(model, "BELL", ["BELL", "ZB"])
    assert exc.value.report


def test_locals_must_commute_across_subsystems(bell):
    # pretend the Bell-basis observable is a local of subsystem B and ask
    # for entanglement relative to it: ZA vs BELL do not commute
    part = core.Partition(("A", "B"), {"ZA": "A", "BELL": "B"}, ("BELL",))
    model = core.Model(bell.space, bell.propositions, bell.observables, part)
    report = core.check_entanglement_preconditions(model, "BELL", ["ZA", "BELL"])
    laws = {v.law for v in report}
    assert "entangle-locals-compatible" in laws


# ---------------------------------------------------------------------------
# Whole-model validation and plumbing


def test_validate_model_clean(qzx, bell, bistable):
    for model in (qzx, bell, bistable):
        assert core.validate_model(model) == []


def test_validate_model_flags_broken_builtin(qzx):
    broken = dict(qzx.propositions)
    broken["ONE"] = core.Proposition("ONE", core.constant_zero_map(qzx.space), core.constant_zero_map(qzx.space))
    model = core.Model(qzx.space, broken, qzx.observables)
    report = core.validate_model(model)
    assert any(v.law == "builtin-structure" and v.subjects == ("ONE",) for v in report)


def test_validate_model_flags_partition_problems(bell):
    part = core.Partition(("A",), {"ZA": "A", "GHOST": "A"}, ("BELL", "PHANTOM"))
    model = core.Model(bell.space, bell.propositions, bell.observables, part)
    report = core.validate_model(model)
    laws = [v.law for v in report]
    assert laws.count("partition-reference") >= 2
    part = core.Partition(("A", "B"), {"ZA": "A", "BELL": "B"}, ("BELL",))
    model = core.Model(bell.space, bell.propositions, bell.observables, part)
    assert any(v.law == "partition-overlap" for v in core.validate_model(model))


def test_rename_states_roundtrip(qzx):
    fwd = {"z0": "a", "zp": "b", "zm": "c", "z1": "d"}
    renamed = core.rename_states(qzx, fwd)
    assert renamed.space.states == ("a", "b", "c", "d")
    assert core.validate_model(renamed) == []
    assert renamed.propositions["Z0"].yes.table["b"] == "a"
    back = core.rename_states(renamed, {v: k for k, v in fwd.items()})
    assert back == qzx
    with pytest.raises(StructuralError):
        core.rename_states(qzx, {"z0": "a"})
    with pytest.raises(StructuralError):
        core.rename_states(qzx, {"z0": "a", "zp": "a", "zm": "c", "z1": "d"})


def test_reachable_submodel(bell):
    sub = core.reachable_submodel(bell, ["s00"])
    # from s00: PhiP.yes -> phiP, PhiP.no -> phiM, ZA0.no -> ZERO...
    # phiP and phiM then reach s11, so everything is reachable here
    assert set(sub.space.states) == set(bell.space.states)
    # a state with no outgoing discovery: the uniform never-proposition
    space = core.StateSpace(("a", "b"))
    p = core.Proposition(
        "P",
        core.PropMap(space, {"a": "a", "b": ZERO}),
        core.PropMap(space, {"a": ZERO, "b": "b"}),
    )
    model = core.Model.build(space, [p])
    sub = core.reachable_submodel(model, ["a"])
    assert sub.space.states == ("a",)
    assert core.validate_model(sub) == []
    with pytest.raises(StructuralError):
        core.reachable_submodel(model, ["zz"])
    with pytest.raises(StructuralError):
        core.reachable_submodel(model, [])


def test_model_lookup_errors(qzx):
    with pytest.raises(StructuralError):
        qzx.proposition("NOPE")
    with pytest.raises(StructuralError):
        qzx.observable("NOPE")
    with pytest.raises(StructuralError):
        qzx.observables["Z"].branch("7")
