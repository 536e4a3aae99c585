import dataclasses

import pytest
from oracles import forward_oracle, reverse_oracle

from contract_wfst import TropicalWeight, is_deterministic, string_weight
from contract_wfst.contract import (
    LITIGATION_NOTE,
    ContractSpec,
    ContractState,
    ContractTransition,
    builtin_manufacturing_contract,
    compile_contract,
    cost_report,
    fixture_text,
    format_dollars,
    format_report,
    parse_contract_spec,
    write_contract_spec,
)
from contract_wfst.errors import (
    ContractError,
    DanglingStateRef,
    DuplicateStateId,
    NegativeWeight,
    ParseError,
)

T = TropicalWeight

SMALL = """\
[initial]
0

[states]
0 | open | n/a
1 | done | 2

[transitions]
0 -> 1 | pay : receipt | $5 | 2

[finals]
1
"""


@pytest.fixture
def spec():
    return builtin_manufacturing_contract()


class TestCompile:
    def test_shape(self, spec):
        m = compile_contract(spec)
        assert (m.num_states, m.num_arcs) == (7, 12)
        assert m.start == 0 and sorted(m.finals) == [2, 5]
        assert is_deterministic(m)

    def test_alphabetical_labels(self, spec):
        m = compile_contract(spec)
        assert [s for _, s in m.isymbols] == ["<eps>", "a", "c", "e", "g", "i", "k"]
        assert [s for _, s in m.osymbols] == ["<eps>", "b", "d", "f", "h", "j", "l"]

    def test_weights(self, spec):
        m = compile_contract(spec)
        assert string_weight(m, "a e i", "b f j") == T(30000)
        assert string_weight(m, "a g e k i", "b h f l j") == T(60000)
        assert string_weight(m, "c", "d") == T(30000)

    def test_single_state(self):
        spec = ContractSpec((ContractState(0, "only"),), (), 0, (0,))
        m = compile_contract(spec)
        assert m.num_states == 1 and m.num_arcs == 0
        assert string_weight(m, []) == T(0)

    def test_dangling_state(self, spec):
        bad = dataclasses.replace(spec, transitions=spec.transitions + (ContractTransition(0, 9, "a", "b", 1),))
        with pytest.raises(DanglingStateRef):
            compile_contract(bad)
        with pytest.raises(DanglingStateRef):
            compile_contract(dataclasses.replace(spec, finals=(8,)))

    def test_duplicate_state(self, spec):
        with pytest.raises(DuplicateStateId):
            compile_contract(dataclasses.replace(spec, states=spec.states + (ContractState(0, "again"),)))

    def test_negative_weight(self, spec):
        bad = dataclasses.replace(spec, transitions=(ContractTransition(0, 1, "a", "b", -1),))
        with pytest.raises(NegativeWeight):
            compile_contract(bad)

    def test_breach_label_must_be_used(self, spec):
        bad = dataclasses.replace(spec, transitions=spec.transitions[:7])
        with pytest.raises(ContractError):
            compile_contract(bad)

    def test_breach_states(self, spec):
        assert spec.breach_input == "c"
        assert spec.breach_states == (2,)
        assert len(spec.breach_events) == 31


class TestTextFormat:
    def test_shipped_file_is_the_builtin(self, spec):
        assert parse_contract_spec(fixture_text("manufacturing.contract")) == spec

    def test_round_trip(self, spec):
        assert parse_contract_spec(write_contract_spec(spec)) == spec
        small = parse_contract_spec(SMALL)
        assert parse_contract_spec(write_contract_spec(small)) == small

    def test_small(self):
        s = parse_contract_spec(SMALL)
        assert s.transitions == (ContractTransition(0, 1, "pay", "receipt", 5, ("2",)),)
        assert s.state(0).sections == ()
        assert s.description == ""

    def test_comments_are_skipped(self):
        assert parse_contract_spec("# header\n" + SMALL.replace("[finals]", "# end\n[finals]")) == parse_contract_spec(SMALL)

    @pytest.mark.parametrize(
        "old, new, section",
        [
            ("$5", "$-5", "transitions"),
            ("$5", "$5.50", "transitions"),
            ("0 -> 1", "0 => 1", "transitions"),
            ("pay : receipt", "pay receipt", "transitions"),
            ("0 | open | n/a", "0 | open", "states"),
            ("0 | open | n/a\n1 | done | 2\n", "", "states"),
            ("[initial]\n0\n", "[initial]\n0\n1\n", "initial"),
        ],
    )
    def test_malformed(self, old, new, section):
        with pytest.raises(ParseError) as info:
            parse_contract_spec(SMALL.replace(old, new))
        assert info.value.section == section

    def test_unknown_section(self):
        with pytest.raises(ParseError):
            parse_contract_spec(SMALL + "\n[extras]\nx\n")

    def test_dangling_reference_in_file(self):
        with pytest.raises(DanglingStateRef):
            compile_contract(parse_contract_spec(SMALL.replace("0 -> 1", "0 -> 4")))


class TestReport:
    def test_rows_match_oracles(self, spec):
        m = compile_contract(spec)
        report = cost_report(spec)
        assert [r.from_start.value for r in report.rows] == forward_oracle(m)
        assert [r.to_final.value for r in report.rows] == reverse_oracle(m)

    def test_completions(self, spec):
        report = cost_report(spec)
        assert report.row(0).completion == ("a:b", "e:f", "i:j")
        assert report.row(4).completion == ("e:f", "i:j")
        assert report.row(5).completion == ()

    def test_litigation_note(self, spec):
        report = cost_report(spec)
        assert LITIGATION_NOTE in report.row(2).notes
        assert all(LITIGATION_NOTE not in report.row(q).notes for q in (0, 1, 3, 4, 5, 6))

    def test_unreachable_and_dead_states(self):
        spec = parse_contract_spec(
            SMALL.replace("1 | done | 2", "1 | done | 2\n2 | orphan | n/a\n3 | stuck | n/a").replace(
                "$5 | 2", "$5 | 2\n0 -> 3 | wait : nothing | $1 | n/a"
            )
        )
        report = cost_report(spec)
        assert report.row(2).notes == ("no accepting path", "unreachable")
        assert report.row(2).from_start.is_zero()
        assert report.row(3).completion is None
        assert report.row(3).notes == ("no accepting path",)

    def test_plain_format(self, spec):
        lines = format_report(cost_report(spec)).splitlines()
        assert lines[0] == "state\tlabel\tfrom_start\tto_final\tcompletion\tnotes"
        assert lines[1] == "0\tSTART\t0\t30000\ta:b e:f i:j\t"
        assert lines[6] == "5\tTERM/contract complete\t30000\t0\t-\t"

    def test_pretty_format(self, spec):
        text = format_report(cost_report(spec), pretty=True)
        row = next(line for line in text.splitlines() if "litigation" in line)
        assert "$30,000" in row and "$0" in row and LITIGATION_NOTE in row

    @pytest.mark.parametrize(
        "value, text", [(0, "$0"), (5, "$5"), (30000, "$30,000"), (2.5, "$2.50"), (float("inf"), "Infinity")]
    )
    def test_dollars(self, value, text):
        assert format_dollars(T(value)) == text
