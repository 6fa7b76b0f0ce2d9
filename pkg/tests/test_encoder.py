import re

import pytest

from cpsfr.encoder import (
    Base,
    Completion,
    Horizon,
    Mitigation,
    allsat_axioms,
    config_action_rules,
    default_values,
    encode,
    encode_statement,
    framework_axioms,
    holds_lit,
    impacted_lit,
    occurs_lit,
    open_completion_atoms,
    task_axioms,
)
from cpsfr.errors import HorizonTooSmallError, UnknownGoalError
from cpsfr.language import EMPTY_SCENARIO, parse_domain
from cpsfr.model import SAT_ALL, ConcernId, Impacts, SatAtom, SpecLit, Triggers
from cpsfr.solver import enumerate_answer_sets


def stmt_of(spec, cls):
    return [s for s in spec.statements if isinstance(s, cls)][0]


class TestHorizon:
    def test_steps(self):
        assert list(Horizon(2).steps) == [0, 1, 2]
        assert list(Horizon(0).steps) == [0]

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            Horizon(-1)


class TestLiteralHelpers:
    def test_holds(self, lkas):
        prop = lkas.property_named("cam[rate25fps]")
        assert str(holds_lit(prop, 3)) == "holds(cam[rate25fps],3)"
        assert str(holds_lit(prop, 0, positive=False)) == "-holds(cam[rate25fps],0)"

    def test_occurs(self, lkas):
        act = lkas.action_named("Attack")
        assert str(occurs_lit(act, 1)) == "occurs(Attack,1)"

    def test_impacted(self, lkas):
        prop = lkas.property_named("cam[allFramesStored]")
        assert str(impacted_lit(False, prop, 0)) == "impacted(neg,cam[allFramesStored],0)"
        assert str(impacted_lit(True, prop, 2)) == "impacted(pos,cam[allFramesStored],2)"


class TestDefaultValues:
    def test_lkas_defaults(self, lkas):
        values = default_values(lkas)
        assert len(values) == 9
        rendered = {str(k): v for k, v in values.items()}
        assert rendered["cam[allFramesStored]"] is True
        assert all(v is True for v in values.values())
        assert SAT_ALL not in values

    def test_explicit_default_overrides_sat(self):
        spec = parse_domain(
            "aspect A.\nconcern A.B.\ndefault sat(A.B) = false.\n", "<d>"
        )
        values = default_values(spec)
        rendered = {str(k): v for k, v in values.items()}
        assert rendered == {"sat(A)": True, "sat(A.B)": False}

    def test_sat_all_default_skipped(self):
        spec = parse_domain("aspect A.\ndefault sat(all) = false.\n", "<d>")
        assert SAT_ALL not in default_values(spec)


class TestStatementTranslation:
    def test_impacts_one_rule_per_step(self, lkas):
        rules = encode_statement(stmt_of(lkas, Impacts), 2)
        assert len(rules) == 3
        assert rules[0].render() == (
            "impacted(neg,cam[allFramesStored],0) :- "
            "holds(cam[basicOne],0), -holds(cam[rate25fps],0), "
            "holds(cam_mem[encr],0)"
            "."
        )

    def test_causes_next_step_gated_on_occurrence(self, lkas):
        causes = [s for s in lkas.statements if type(s).__name__ == "Causes"][0]
        rules = encode_statement(causes, 2)
        assert len(rules) == 2
        assert rules[0].render() == "-holds(cam[rate25fps],1) :- occurs(Attack,0)."
        assert rules[1].render() == "-holds(cam[rate25fps],2) :- occurs(Attack,1)."

    def test_causes_vanish_at_horizon_zero(self, lkas):
        causes = [s for s in lkas.statements if type(s).__name__ == "Causes"][0]
        assert encode_statement(causes, 0) == []

    def test_triggers_same_step(self, lkas):
        rules = encode_statement(stmt_of(lkas, Triggers), 1)
        assert [r.render() for r in rules] == [
            "occurs(NavShutdown,0) :- -holds(sat(Functional),0).",
            "occurs(NavShutdown,1) :- -holds(sat(Functional),1).",
        ]

    def test_default_contributes_nothing(self, lkas):
        default = [s for s in lkas.statements if type(s).__name__ == "Default"][0]
        assert encode_statement(default, 3) == []


class TestConfigActionRules:
    def test_effect_laws(self, lkas):
        rules = config_action_rules(lkas, 2)
        # one config, two actions, two transitions
        assert len(rules) == 4
        assert rules[0].render() == (
            "holds(cam[basicOne],1) :- occurs(MakeTrue(cam[basicOne]),0)."
        )
        assert rules[1].render() == (
            "-holds(cam[basicOne],1) :- occurs(MakeFalse(cam[basicOne]),0)."
        )

    def test_none_at_horizon_zero(self, lkas):
        assert config_action_rules(lkas, 0) == []


class TestFrameworkAxioms:
    def test_counts_without_scenario(self, lkas):
        # per step: 5 link rules, 5 edge rules, 9 defaults, 2 bridges
        # at 0: 5 closed-world inits (plain unobserved non-default props)
        # per transition: 6 inertial fluents, both polarities
        assert len(framework_axioms(lkas, 0)) == 26
        assert len(framework_axioms(lkas, 1)) == 26 + 21 + 12

    def test_counts_with_design1(self, lkas, design1):
        # all five plain properties observed, so no closed-world inits
        rules = framework_axioms(lkas, 0, design1)
        assert len(rules) == 21 + 6
        facts = [r for r in rules if r.is_fact]
        assert len(facts) == 6

    def test_concern_failure_shape(self, lkas):
        rendered = {r.render() for r in framework_axioms(lkas, 0)}
        assert (
            "-holds(sat(Functional.Functionality),0) :- "
            "not holds(cam[allFramesStored],0)." in rendered
        )

    def test_child_failure_shape(self, lkas):
        rendered = {r.render() for r in framework_axioms(lkas, 0)}
        assert (
            "-holds(sat(Functional),0) :- "
            "-holds(sat(Functional.Functionality),0)." in rendered
        )

    def test_default_rule_shape(self, lkas):
        rendered = {r.render() for r in framework_axioms(lkas, 0)}
        assert (
            "holds(cam[allFramesStored],0) :- "
            "not -holds(cam[allFramesStored],0)." in rendered
        )

    def test_impact_bridges_both_polarities(self, lkas):
        rendered = {r.render() for r in framework_axioms(lkas, 0)}
        assert (
            "-holds(cam[allFramesStored],0) :- "
            "impacted(neg,cam[allFramesStored],0)." in rendered
        )
        assert (
            "holds(cam[allFramesStored],0) :- "
            "impacted(pos,cam[allFramesStored],0)." in rendered
        )

    def test_observation_facts(self, lkas, design1):
        facts = {r.render() for r in framework_axioms(lkas, 0, design1) if r.is_fact}
        assert "holds(cam[basicOne],0)." in facts
        assert "-holds(cam[rate25fps],0)." in facts

    def test_init_excludes_configs_and_defaults(self, lkas):
        rendered = {r.render() for r in framework_axioms(lkas, 0)}
        # plain unobserved property: closed-world init present
        assert (
            "holds(cam[rate25fps],0) :- not -holds(cam[rate25fps],0)." in rendered
        )
        # configuration: stays open
        assert (
            "holds(cam[basicOne],0) :- not -holds(cam[basicOne],0)." not in rendered
        )

    def test_init_suppressed_for_open_atoms(self, lkas, partial1):
        prop = lkas.property_named("cam_mem[encr]")
        init = "holds(cam_mem[encr],0) :- not -holds(cam_mem[encr],0)."
        plain = {r.render() for r in framework_axioms(lkas, 0, partial1)}
        opened = {
            r.render()
            for r in framework_axioms(lkas, 0, partial1, frozenset({prop}))
        }
        assert init in plain and init not in opened

    def test_inertia_only_for_non_default_fluents(self, lkas):
        rendered = {r.render() for r in framework_axioms(lkas, 1)}
        assert (
            "holds(cam[rate25fps],1) :- holds(cam[rate25fps],0), "
            "not -holds(cam[rate25fps],1)." in rendered
        )
        assert (
            "-holds(cam[rate25fps],1) :- -holds(cam[rate25fps],0), "
            "not holds(cam[rate25fps],1)." in rendered
        )
        assert not any("holds(cam[allFramesStored],0)," in r for r in rendered)


class TestAllSatAxioms:
    def test_shape(self, lkas):
        rules = allsat_axioms(lkas, 0)
        assert [r.render() for r in rules] == [
            "holds(sat(all),0) :- not -holds(sat(all),0).",
            "-holds(sat(all),0) :- -holds(sat(Functional),0).",
            "-holds(sat(all),0) :- -holds(sat(Timing),0).",
            "-holds(sat(all),0) :- -holds(sat(Trustworthiness),0).",
        ]

    def test_empty_spec_still_has_allsat(self):
        spec = parse_domain("", "<e>")
        prog = encode(spec, EMPTY_SCENARIO, 0)
        models = enumerate_answer_sets(prog)
        assert [str(m) for m in models] == ["{holds(sat(all),0)}"]


class TestOpenCompletionAtoms:
    def test_partial1(self, lkas, partial1):
        assert [str(a) for a in open_completion_atoms(lkas, partial1)] == [
            "cam_mem[encr]"
        ]

    def test_fully_observed(self, lkas, design1):
        assert open_completion_atoms(lkas, design1) == ()

    def test_no_scenario_opens_all_non_defaults(self, lkas):
        names = [str(a) for a in open_completion_atoms(lkas, None)]
        assert len(names) == 6
        assert "cam[basicOne]" in names
        assert "cam[allFramesStored]" not in names


class TestTaskAxioms:
    def test_base_adds_nothing(self, lkas):
        assert task_axioms(lkas, Base(), 0) == ([], [])

    def test_completion_choice_and_goal(self, lkas, partial1):
        goal = SpecLit(SatAtom(lkas.forest.resolve(("Trustworthiness",))), True)
        rules, weak = task_axioms(lkas, Completion(goal), 0, partial1)
        assert weak == []
        assert [r.render() for r in rules] == [
            "holds(cam_mem[encr],0) | -holds(cam_mem[encr],0).",
            ":- not holds(sat(Trustworthiness),0).",
        ]

    def test_completion_negative_goal(self, lkas, partial1):
        goal = SpecLit(SatAtom(lkas.forest.resolve(("Confidentiality",))), False)
        rules, _ = task_axioms(lkas, Completion(goal), 0, partial1)
        assert rules[-1].render() == (
            ":- not -holds(sat(Trustworthiness.Security.Cybersecurity."
            "Confidentiality),0)."
        )

    def test_completion_probe_has_no_constraint(self, lkas, partial1):
        rules, _ = task_axioms(lkas, Completion(None), 0, partial1)
        assert len(rules) == 1 and rules[0].is_choice

    def test_mitigation_choices_goal_and_weak(self, lkas):
        goal = SpecLit(SAT_ALL, True)
        cands = (lkas.action_named("MakeFalse(cam[basicOne])"),
                 lkas.action_named("MakeTrue(cam[basicOne])"))
        rules, weak = task_axioms(lkas, Mitigation(goal, 1, cands), 2)
        assert [r.render() for r in rules] == [
            "occurs(MakeFalse(cam[basicOne]),1) | -occurs(MakeFalse(cam[basicOne]),1).",
            "occurs(MakeTrue(cam[basicOne]),1) | -occurs(MakeTrue(cam[basicOne]),1).",
            ":- not holds(sat(all),2).",
        ]
        assert [w.render() for w in weak] == [
            ":~ occurs(MakeFalse(cam[basicOne]),1).",
            ":~ occurs(MakeTrue(cam[basicOne]),1).",
        ]

    def test_mitigation_without_minimize_has_no_weak(self, lkas):
        goal = SpecLit(SAT_ALL, True)
        cands = (lkas.action_named("Attack"),)
        _, weak = task_axioms(lkas, Mitigation(goal, 0, cands, minimize=False), 1)
        assert weak == []

    def test_mitigation_horizon_too_small(self, lkas):
        goal = SpecLit(SAT_ALL, True)
        cands = (lkas.action_named("Attack"),)
        with pytest.raises(HorizonTooSmallError):
            task_axioms(lkas, Mitigation(goal, 1, cands), 1)

    def test_goal_must_be_sat_literal(self, lkas, partial1):
        prop = lkas.property_named("cam[rate25fps]")
        with pytest.raises(UnknownGoalError):
            task_axioms(lkas, Completion(SpecLit(prop, True)), 0, partial1)

    def test_goal_concern_must_exist(self, lkas, partial1):
        ghost = SpecLit(SatAtom(ConcernId(("Ghost",))), True)
        with pytest.raises(UnknownGoalError):
            task_axioms(lkas, Completion(ghost), 0, partial1)

    def test_sat_all_goal_accepted(self, lkas, partial1):
        rules, _ = task_axioms(lkas, Completion(SpecLit(SAT_ALL, True)), 0, partial1)
        assert rules[-1].render() == ":- not holds(sat(all),0)."


class TestEncode:
    def test_design1_horizon_zero_rule_count(self, lkas, design1):
        prog = encode(lkas, design1, 0)
        assert len(prog.rules) == 33
        assert prog.weak == ()

    def test_statement_rules_lead(self, lkas, design1):
        prog = encode(lkas, design1, 0)
        assert prog.rules[0].render().startswith("impacted(neg,")

    def test_history_fact_present(self, lkas, attacked):
        prog = encode(lkas, attacked, 1)
        assert any(r.render() == "occurs(Attack,0)." for r in prog.rules)

    def test_history_needs_following_step(self, lkas, attacked):
        with pytest.raises(HorizonTooSmallError):
            encode(lkas, attacked, 0)

    def test_step_locality(self, lkas, attacked):
        prog = encode(lkas, attacked, 2)
        steps = {
            atom.args[-1] for atom in prog.atom_table
        }
        assert steps and all(isinstance(s, int) and 0 <= s <= 2 for s in steps)

    def test_deterministic(self, lkas, attacked):
        a = encode(lkas, attacked, 2)
        b = encode(lkas, attacked, 2)
        assert a.rules == b.rules and a.weak == b.weak
        assert a.dump() == b.dump()

    def test_completion_opens_atoms_in_full_program(self, lkas, partial1):
        goal = SpecLit(SatAtom(lkas.forest.resolve(("Trustworthiness",))), True)
        prog = encode(lkas, partial1, 0, Completion(goal))
        rendered = [r.render() for r in prog.rules]
        assert "holds(cam_mem[encr],0) | -holds(cam_mem[encr],0)." in rendered
        assert (
            "holds(cam_mem[encr],0) :- not -holds(cam_mem[encr],0)."
            not in rendered
        )

    def test_mitigation_weak_constraints_reach_program(self, lkas, design1):
        goal = SpecLit(SAT_ALL, True)
        cands = (lkas.action_named("MakeFalse(cam[basicOne])"),)
        prog = encode(lkas, design1, 1, Mitigation(goal, 0, cands))
        assert [w.render() for w in prog.weak] == [
            ":~ occurs(MakeFalse(cam[basicOne]),0)."
        ]

    def test_int_and_horizon_arguments_agree(self, lkas, design1):
        assert encode(lkas, design1, Horizon(1)) == encode(lkas, design1, 1)
