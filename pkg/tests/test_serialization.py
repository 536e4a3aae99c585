import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import random_machine

from contract_wfst import TropicalWeight, Wfst
from contract_wfst.contract import fixture_text
from contract_wfst.errors import (
    DuplicateId,
    DuplicateSymbol,
    MissingEpsilon,
    MultipleInitials,
    NoInitialState,
    NonUnitInitial,
    ParseError,
    SerializationError,
    UnknownSymbol,
)
from contract_wfst.fst import SymbolTable
from contract_wfst.serialization import (
    export_dot,
    normalize_initial,
    parse_att,
    parse_state_names,
    parse_symbols,
    write_att,
    write_state_names,
    write_symbols,
)

T = TropicalWeight


class TestParseAtt:
    def test_arc_and_final_lines(self):
        m = parse_att("0 1 3 4 2.5\n1 2 1 1\n2\n1 7\n")
        assert m.num_states == 3 and m.num_arcs == 2
        assert m.start == 0
        assert m.finals == {2: T(0), 1: T(7)}
        assert m.arcs(0)[0].weight == T(2.5)
        assert m.arcs(1)[0].weight == T(0)

    def test_single_final_line(self):
        m = parse_att("0\n")
        assert m.num_states == 1 and m.start == 0 and m.finals == {0: T(0)}

    def test_first_line_source_is_initial(self):
        m = parse_att("3 0 1 1\n0\n")
        assert m.start == 3 and m.num_states == 4

    def test_tabs_and_blank_lines(self):
        assert parse_att("0\t1\t1\t1\n\n1\n") == parse_att("0 1 1 1\n1\n")

    @pytest.mark.parametrize(
        "text, lineno",
        [
            ("0 1 a\n", 1),
            ("0 1 1 1\n0 1 1 1 2 3\n", 2),
            ("0 1 1 1 abc\n", 1),
            ("0 1 1 1 -2\n", 1),
            ("x 1 1 1\n", 1),
            ("0 1 1 1\n1 Infinity\n0 -1 1 1\n", 3),
            ("0 1 1 1 Infinity\n", 1),
        ],
    )
    def test_malformed(self, text, lineno):
        with pytest.raises(ParseError) as info:
            parse_att(text)
        assert info.value.line == lineno

    def test_empty(self):
        with pytest.raises(ParseError):
            parse_att("\n\n")

    def test_symbols_need_table(self):
        with pytest.raises(ParseError):
            parse_att("0 1 a b\n")

    @pytest.mark.parametrize("line", ["0 1 z a", "0 1 a 2"])
    def test_with_table_every_label_is_a_symbol(self, line):
        t = SymbolTable.from_symbols("ab")
        with pytest.raises(UnknownSymbol):
            parse_att(line + "\n", t, t)

    def test_symbolic_labels(self):
        t = SymbolTable.from_symbols("ab")
        m = parse_att("0 1 a b\n1\n", t, t)
        assert (m.arcs(0)[0].ilabel, m.arcs(0)[0].olabel) == (1, 2)


class TestWriteAtt:
    def test_shipped_contract_text(self, contract):
        assert write_att(contract) == fixture_text("manufacturing.fst.txt")

    def test_unit_weights_are_omitted(self):
        m = parse_att("0 1 1 1\n1\n")
        assert write_att(m) == "0\t1\t1\t1\n1\n"

    def test_numeric_labels(self, contract):
        text = write_att(contract, symbols=False)
        assert text.splitlines()[0] == "0\t1\t1\t1\t15000"

    def test_no_initial(self):
        m = Wfst()
        m.add_state()
        with pytest.raises(NoInitialState):
            write_att(m)

    def test_multiple_initials(self):
        m = Wfst()
        m.add_states(2)
        m.set_initial(0)
        m.set_initial(1)
        m.set_final(1)
        with pytest.raises(MultipleInitials):
            write_att(m)
        n = normalize_initial(m)
        assert len(n.initial) == 1
        assert n.num_states == 3
        assert parse_att(write_att(n)) == n

    def test_non_unit_initial(self):
        m = Wfst()
        m.add_state()
        m.set_initial(0, 4)
        m.set_final(0)
        with pytest.raises(NonUnitInitial):
            write_att(m)
        n = normalize_initial(m)
        assert n.initial == {n.start: T(0)}
        assert write_att(n)

    def test_isolated_initial(self):
        m = Wfst()
        m.add_states(3)
        m.set_initial(0)
        m.add_arc(1, 1, 1, 1, 2)
        with pytest.raises(SerializationError):
            write_att(m)

    @settings(max_examples=80, deadline=None)
    @given(st.integers(0, 2**32))
    def test_round_trip(self, seed):
        rng = random.Random(seed)
        m = random_machine(rng, epsilon_inputs=True)
        m.set_final(0, rng.randint(0, 3))
        m.set_final(m.num_states - 1, rng.randint(0, 3))
        assert parse_att(write_att(m)) == m


class TestSymbols:
    def test_round_trip(self):
        t = parse_symbols(fixture_text("manufacturing.isyms"))
        assert [s for _, s in t] == ["<eps>", "a", "c", "e", "g", "i", "k"]
        assert write_symbols(t) == fixture_text("manufacturing.isyms")

    def test_symbols_with_spaces(self):
        t = parse_symbols("<eps> 0\ngoods received\t1\n")
        assert t.find("goods received") == 1

    @pytest.mark.parametrize(
        "text, error",
        [
            ("<eps> 0\na 1\na 2\n", DuplicateSymbol),
            ("<eps> 0\na 1\nb 1\n", DuplicateId),
            ("a 1\n", MissingEpsilon),
            ("<eps> 0\na\n", ParseError),
            ("<eps> 0\na x\n", ParseError),
        ],
    )
    def test_errors(self, text, error):
        with pytest.raises(error):
            parse_symbols(text)

    def test_unknown_lookup(self):
        t = parse_symbols("<eps> 0\na 1\n")
        with pytest.raises(UnknownSymbol):
            t.find("b")

    def test_state_names(self):
        text = fixture_text("manufacturing.states.syms")
        names = parse_state_names(text)
        assert names[0] == "START" and names[5] == "TERM/contract complete"
        assert write_state_names(names) == text
        with pytest.raises(DuplicateId):
            parse_state_names("a 0\nb 0\n")


class TestDot:
    def test_contract(self, contract):
        dot = export_dot(contract)
        assert dot.startswith('digraph "FST" {\n')
        assert "  5 [shape=doublecircle]" in dot
        assert "  0 [style=bold]" in dot
        assert '  0 -> 1 [label="a:b/15000"]' in dot
        assert 'label="i:j/0"' in dot
        assert dot.endswith("}\n")

    def test_suppress_unit_weights(self, contract):
        dot = export_dot(contract, suppress_unit_weights=True)
        assert '[label="i:j"]' in dot
        assert "a:b/15000" in dot

    def test_state_names(self, contract):
        names = parse_state_names(fixture_text("manufacturing.states.syms"))
        dot = export_dot(contract, names)
        assert '  2 [shape=doublecircle, label="litigation"]' in dot
        assert 'label="\\"cure period\\" has elapsed"' in dot

    def test_no_finals_means_no_double_circle(self):
        m = parse_att("0 1 1 1\n1\n")
        m.set_final(1, T.zero())
        assert "doublecircle" not in export_dot(m)

    def test_final_weight_in_label(self):
        m = parse_att("0 1 1 1\n1 4\n")
        assert '1 [shape=doublecircle, label="1/4"]' in export_dot(m)

    def test_deterministic_text(self, contract):
        assert export_dot(contract) == export_dot(contract.copy())
