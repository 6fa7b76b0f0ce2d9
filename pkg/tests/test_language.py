import pytest

from cpsfr.errors import (
    CpsfError,
    QuerySyntaxError,
    UnknownAtomError,
    UnknownConcernError,
)
from cpsfr.language import (
    EMPTY_SCENARIO,
    ParseError,
    QueryExpr,
    Scenario,
    SourceSpan,
    format_errors,
    parse_domain,
    parse_query,
    parse_scenario,
    render_domain,
    render_scenario,
)
from cpsfr.model import Causes, Default, Impacts, SpecLit, Triggers


MINI = """\
aspect Trust.
aspect Functional.
concern Trust.Security.Privacy.
property cam[encr] addresses Privacy.
config cam[basicOne].
action Attack.
default cam[encr] = true.
cam[basicOne] impacts- cam[encr].
Attack causes -cam[encr] if cam[basicOne].
-sat(Privacy) triggers Attack.
"""


def parsed(text, filename="<t>"):
    spec = parse_domain(text, filename)
    assert not isinstance(spec, list), format_errors(spec)
    return spec


def errors_of(text):
    result = parse_domain(text, "<t>")
    assert isinstance(result, list)
    return result


class TestDomainParsing:
    def test_lkas_shape(self, lkas):
        assert len(lkas.forest.aspects) == 3
        assert len(lkas.forest.concerns) == 8
        assert len(lkas.properties) == 7
        assert len(lkas.actions) == 4
        assert len(lkas.statements) == 4

    def test_underscore_path_splitting(self, lkas):
        prop = lkas.property_named("cam_mem[encr]")
        assert prop.system_path == ("cam", "mem")
        assert prop.prop_name == "encr"

    def test_statement_kinds(self):
        spec = parsed(MINI)
        kinds = [type(s).__name__ for s in spec.statements]
        assert kinds == ["Default", "Impacts", "Causes", "Triggers"]

    def test_impacts_negative_condition(self, lkas):
        impacts = [s for s in lkas.statements if isinstance(s, Impacts)][0]
        rendered = {str(l) for l in impacts.condition}
        assert rendered == {"cam_mem[encr]", "-cam[rate25fps]", "cam[basicOne]"}
        assert not impacts.positive
        assert str(impacts.target) == "cam[allFramesStored]"

    def test_causes_with_condition(self):
        spec = parsed(MINI)
        causes = [s for s in spec.statements if isinstance(s, Causes)][0]
        assert causes.action.name == "Attack"
        assert str(causes.effect) == "-cam[encr]"
        assert str(causes.condition) == "cam[basicOne]"

    def test_trigger_on_sat_literal(self):
        spec = parsed(MINI)
        trig = [s for s in spec.statements if isinstance(s, Triggers)][0]
        assert str(trig.condition) == "-sat(Trust.Security.Privacy)"

    def test_prefix_closure_of_concern_decl(self):
        spec = parsed("aspect A.\nconcern A.B.C.\n")
        dotted = {c.dotted for c in spec.forest.concerns}
        assert dotted == {"A", "A.B", "A.B.C"}

    def test_comments_and_blank_lines(self):
        spec = parsed("# header\n\naspect A. # trailing\n# another\n")
        assert len(spec.forest.aspects) == 1


class TestParseErrors:
    def test_one_error_per_bad_statement(self):
        errs = errors_of(
            "aspect A.\n"
            "concern A.B\n"
            "property x[y addresses B.\n"
        )
        assert len(errs) == 2

    def test_unclosed_bracket_single_error(self):
        errs = errors_of("aspect X.\nproperty cam[encr addresses X.\n")
        assert len(errs) == 1
        assert errs[0].span.line == 2

    def test_three_bad_statements_three_errors(self):
        errs = errors_of(
            "aspect A.\n"
            "property x[.\n"
            "property [y].\n"
            "concern .\n"
        )
        assert len(errs) == 3

    def test_errors_sorted_by_position(self):
        errs = errors_of("property x[.\nproperty y[.\n")
        positions = [(e.span.line, e.span.col) for e in errs]
        assert positions == sorted(positions)

    def test_span_points_at_offending_token(self):
        errs = errors_of("aspect 9x.\n")
        assert errs[0].span.line == 1
        assert errs[0].span.col == 8

    def test_unknown_concern_in_addresses(self):
        errs = errors_of("aspect A.\nproperty p[x] addresses Nope.\n")
        assert any(e.code == "UnknownConcern" for e in errs)

    def test_ambiguous_concern(self):
        errs = errors_of(
            "aspect A.\naspect B.\nconcern A.X.\nconcern B.X.\n"
            "property p[q] addresses X.\n"
        )
        assert any(e.code == "AmbiguousConcern" for e in errs)

    def test_reserved_all_not_addressable(self):
        errs = errors_of("aspect A.\nproperty p[x] addresses all.\n")
        assert any(e.code == "ReservedName" for e in errs)

    def test_config_may_not_address(self):
        errs = errors_of("aspect A.\nconfig c[x] addresses A.\n")
        assert len(errs) == 1

    def test_duplicate_property_kind_conflict(self):
        errs = errors_of("aspect A.\nproperty p[x].\nconfig p[x].\n")
        assert any(e.code == "DuplicateProperty" for e in errs)

    def test_contradictory_condition(self):
        errs = errors_of(
            "aspect A.\nproperty p[x].\nproperty p[y].\n"
            "p[x] & -p[x] impacts- p[y].\n"
        )
        assert any(e.code == "ContradictoryCondition" for e in errs)

    def test_unknown_action_in_causes(self):
        errs = errors_of("aspect A.\nproperty p[x].\nGhost causes p[x].\n")
        assert any(e.code == "UnknownAction" for e in errs)

    def test_parse_error_str_has_location(self):
        err = errors_of("aspect 9x.\n")[0]
        assert str(err).startswith("<t>:1:8: ")


class TestScenarioParsing:
    def test_design1_observations(self, design1):
        assert len(design1.observations) == 6
        obs = design1.observation_map()
        rendered = {str(k): v for k, v in obs.items()}
        assert rendered["cam[rate25fps]"] is False
        assert rendered["cam[basicOne]"] is True

    def test_attacked_history(self, attacked):
        assert len(attacked.history) == 1
        (action, step), = attacked.history
        assert action.name == "Attack" and step == 0
        assert attacked.last_step() == 0

    def test_empty_scenario(self):
        assert EMPTY_SCENARIO.last_step() is None
        assert EMPTY_SCENARIO.observations == frozenset()

    def test_unknown_atom(self, lkas):
        result = parse_scenario(
            "scenario s {\n  obs cam[ghost] = true.\n}\n", lkas
        )
        assert isinstance(result, list)
        assert any(e.code == "UnknownAtom" for e in result)

    def test_contradictory_obs(self, lkas):
        result = parse_scenario(
            "scenario s {\n  obs cam[basicOne] = true.\n  obs cam[basicOne] = false.\n}\n",
            lkas,
        )
        assert isinstance(result, list)
        assert any(e.code == "ContradictoryObs" for e in result)
        assert result[0].span.line == 3

    def test_duplicate_consistent_obs_deduped(self, lkas):
        result = parse_scenario(
            "scenario s {\n  obs cam[basicOne] = true.\n  obs cam[basicOne] = true.\n}\n",
            lkas,
        )
        assert isinstance(result, Scenario)
        assert len(result.observations) == 1

    def test_unknown_action_in_history(self, lkas):
        result = parse_scenario(
            "scenario s {\n  history Ghost @ 0.\n}\n", lkas
        )
        assert isinstance(result, list)
        assert any(e.code == "UnknownAction" for e in result)


class TestQueryParsing:
    def test_sat_suffix_resolution(self, lkas):
        q = parse_query("sat(Confidentiality)@0", lkas)
        assert str(q) == "sat(Trustworthiness.Security.Cybersecurity.Confidentiality)@0"

    def test_negated_property(self, lkas):
        q = parse_query("-cam[allFramesStored]@2", lkas)
        assert not q.target.positive
        assert q.step == 2

    def test_default_step_zero(self, lkas):
        assert parse_query("sat(all)", lkas).step == 0

    def test_sat_all(self, lkas):
        q = parse_query("sat(all)@1", lkas)
        assert str(q.target.atom) == "sat(all)"

    def test_unknown_property(self, lkas):
        with pytest.raises(UnknownAtomError):
            parse_query("cam[ghost]@0", lkas)

    def test_unknown_concern(self, lkas):
        with pytest.raises(UnknownConcernError):
            parse_query("sat(Privacy)@0", lkas)

    def test_syntax_error(self, lkas):
        with pytest.raises(QuerySyntaxError):
            parse_query("sat(Functional)@", lkas)

    def test_negative_step_rejected(self, lkas):
        with pytest.raises(QuerySyntaxError):
            parse_query("sat(Functional)@-1", lkas)


class TestRendering:
    def test_domain_round_trip_fixpoint(self, lkas):
        once = render_domain(lkas)
        reparsed = parse_domain(once, "<render>")
        assert not isinstance(reparsed, list)
        assert render_domain(reparsed) == once

    def test_round_trip_preserves_structure(self, lkas):
        reparsed = parse_domain(render_domain(lkas), "<render>")
        assert reparsed.forest == lkas.forest
        assert reparsed.properties == lkas.properties
        assert reparsed.links == lkas.links
        assert reparsed.actions == lkas.actions
        assert reparsed.statements == lkas.statements

    def test_round_trip_preserves_kind(self, lkas):
        # property identity ignores kind, so check it explicitly
        reparsed = parse_domain(render_domain(lkas), "<render>")
        kinds = {str(p): p.kind for p in reparsed.properties}
        assert kinds["cam[basicOne]"] == "Configuration"
        assert kinds["cam[rate25fps]"] == "Property"

    def test_scenario_round_trip(self, lkas, attacked):
        text = render_scenario(attacked)
        reparsed = parse_scenario(text, lkas, "<render>")
        assert reparsed == attacked
        assert render_scenario(reparsed) == text

    def test_generated_action_not_renderable(self, lkas, design1):
        make = lkas.action_named("MakeTrue(cam[basicOne])")
        bad = Scenario(
            "s", design1.observations, frozenset({(make, 0)})
        )
        with pytest.raises(CpsfError) as exc:
            render_scenario(bad)
        assert exc.value.code == "UnrenderableAction"


class TestSpanAndErrorTypes:
    def test_source_span_str(self):
        assert str(SourceSpan("f.cpsf", 3, 7, 2)) == "f.cpsf:3:7"

    def test_source_span_validation(self):
        with pytest.raises(ValueError):
            SourceSpan("f", 0, 1, 1)

    def test_query_expr_str(self, lkas):
        q = QueryExpr(SpecLit(lkas.property_named("cam[basicOne]"), False), 1)
        assert str(q) == "-cam[basicOne]@1"

    def test_format_errors(self):
        errs = errors_of("aspect 9x.\nproperty [.\n")
        text = format_errors(errs)
        assert text.count("\n") == len(errs) - 1 or text.endswith("\n") is False
        assert "<t>:1:" in text
