"""Text interchange: AT&T/OpenFst arc lists, symbol tables and DOT drawings.

AT&T text lists one arc per line (``src dst isym osym [weight]``) and one
final state per line (``state [weight]``).  The source of the first line
is the initial state.  Output uses single tabs and omits unit weights;
input accepts any run of blanks and either form of weight.
"""

from __future__ import annotations

import re
from typing import Dict, List, Mapping, Optional

from .errors import (
    DuplicateId,
    DuplicateSymbol,
    InfiniteArcWeight,
    MissingEpsilon,
    MultipleInitials,
    NegativeWeight,
    NoInitialState,
    NonUnitInitial,
    ParseError,
    SerializationError,
    WeightParseError,
)
from .fst import EPSILON, EPSILON_SYMBOL, SymbolTable, Wfst
from .semiring import TropicalWeight, format_weight, parse_weight

__all__ = [
    "parse_att",
    "write_att",
    "normalize_initial",
    "parse_symbols",
    "write_symbols",
    "parse_state_names",
    "write_state_names",
    "export_dot",
]


def _label(token: str, table: Optional[SymbolTable], lineno: int) -> int:
    if table is not None:
        return table.find(token)
    if token.isdigit():
        return int(token)
    raise ParseError(f"label {token!r} is not an integer and no symbol table was given", lineno)


def _weight(token: str, lineno: int) -> TropicalWeight:
    try:
        return parse_weight(token)
    except (WeightParseError, NegativeWeight) as e:
        raise ParseError(str(e), lineno) from None


def _state(token: str, lineno: int) -> int:
    if not token.isdigit():
        raise ParseError(f"state {token!r} is not a non-negative integer", lineno)
    return int(token)


def parse_att(
    text: str,
    isymbols: Optional[SymbolTable] = None,
    osymbols: Optional[SymbolTable] = None,
) -> Wfst:
    """Machine from AT&T text.

    States are created up to the largest id mentioned.  Labels go through
    the symbol tables when given and are read as integers otherwise.
    """
    m = Wfst(isymbols, osymbols)
    first = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        fields = raw.split()
        if not fields:
            continue
        if len(fields) not in (1, 2, 4, 5):
            raise ParseError(
                f"expected 1-2 fields (final) or 4-5 fields (arc), got {len(fields)}", lineno
            )
        src = _state(fields[0], lineno)
        if len(fields) <= 2:
            _grow(m, src)
            w = _weight(fields[1], lineno) if len(fields) == 2 else TropicalWeight.one()
            m.set_final(src, w)
        else:
            dst = _state(fields[1], lineno)
            _grow(m, max(src, dst))
            ilabel = _label(fields[2], isymbols, lineno)
            olabel = _label(fields[3], osymbols, lineno)
            w = _weight(fields[4], lineno) if len(fields) == 5 else TropicalWeight.one()
            try:
                m.add_arc(src, ilabel, olabel, w, dst)
            except InfiniteArcWeight as e:
                raise ParseError(str(e), lineno) from None
        if first is None:
            first = src
    if first is None:
        raise ParseError("empty machine: no arc or final lines")
    m.set_initial(first)
    return m


def _grow(m: Wfst, q: int) -> None:
    while m.num_states <= q:
        m.add_state()


def normalize_initial(m: Wfst) -> Wfst:
    """Copy of ``m`` with a single initial state of unit weight.

    Returns ``m`` itself when it already qualifies; otherwise adds a new
    initial state with epsilon arcs carrying the old initial weights.
    """
    if not m.initial:
        raise NoInitialState("machine has no initial state")
    if len(m.initial) == 1 and next(iter(m.initial.values())).is_one():
        return m
    n = m.copy()
    s = n.add_state()
    for q in sorted(m.initial):
        n.add_arc(s, EPSILON, EPSILON, m.initial[q], q)
    n.initial = {s: TropicalWeight.one()}
    return n


def write_att(m: Wfst, symbols: bool = True) -> str:
    """AT&T text for ``m``: the initial state's block first, then the others by id.

    Each state's block is its arcs followed by its final line.  With
    ``symbols`` true, attached symbol tables are used for labels.
    States with no arcs that are not final have no line; trailing ones are
    therefore dropped on a round trip.
    """
    if not m.initial:
        raise NoInitialState("machine has no initial state")
    if len(m.initial) > 1:
        raise MultipleInitials(f"{len(m.initial)} initial states; call normalize_initial first")
    start = m.start
    if not m.initial[start].is_one():
        raise NonUnitInitial(
            f"initial weight {m.initial[start]} is not representable; call normalize_initial first"
        )
    if not m.arcs(start) and start not in m.finals:
        raise SerializationError(
            f"initial state {start} has no arcs and is not final; it cannot be marked in AT&T text"
        )
    isyms = m.isymbols if symbols else None
    osyms = m.osymbols if symbols else None
    lines: List[str] = []
    for q in [start] + [q for q in m.states() if q != start]:
        for a in m.arcs(q):
            fields = [
                str(a.source),
                str(a.target),
                isyms.find(a.ilabel) if isyms is not None else str(a.ilabel),
                osyms.find(a.olabel) if osyms is not None else str(a.olabel),
            ]
            if not a.weight.is_one():
                fields.append(format_weight(a.weight))
            lines.append("\t".join(fields))
        if q in m.finals:
            w = m.finals[q]
            lines.append(str(q) if w.is_one() else f"{q}\t{format_weight(w)}")
    return "".join(line + "\n" for line in lines)


# symbol tables

_SYMBOL_LINE = re.compile(r"^(.*\S)\s+(\d+)\s*$")


def _symbol_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        if not raw.strip():
            continue
        match = _SYMBOL_LINE.match(raw.strip())
        if match is None:
            raise ParseError(f"expected 'symbol<TAB>id', got {raw!r}", lineno)
        yield lineno, match.group(1), int(match.group(2))


def parse_symbols(text: str, name: str = "") -> SymbolTable:
    """Symbol table from ``symbol<TAB>id`` lines; must bind ``<eps>`` to 0.

    The symbol is everything before the last blank run, so symbols may
    contain spaces.
    """
    table = SymbolTable(name, epsilon=None)
    for lineno, symbol, key in _symbol_lines(text):
        if symbol in table:
            raise DuplicateSymbol(f"line {lineno}: symbol {symbol!r} listed twice")
        if key in table:
            raise DuplicateId(f"line {lineno}: id {key} listed twice")
        table.add_symbol(symbol, key)
    if EPSILON not in table or table.find(EPSILON) != EPSILON_SYMBOL:
        raise MissingEpsilon(f"symbol table must bind {EPSILON_SYMBOL} to {EPSILON}")
    return table


def write_symbols(table: SymbolTable) -> str:
    return "".join(f"{symbol}\t{key}\n" for key, symbol in table)


def parse_state_names(text: str) -> Dict[int, str]:
    """State names in symbol-table layout (``name<TAB>state``); no epsilon entry."""
    names: Dict[int, str] = {}
    seen = set()
    for lineno, name, q in _symbol_lines(text):
        if q in names:
            raise DuplicateId(f"line {lineno}: state {q} named twice")
        if name in seen:
            raise DuplicateSymbol(f"line {lineno}: name {name!r} used twice")
        names[q] = name
        seen.add(name)
    return names


def write_state_names(names: Mapping[int, str]) -> str:
    return "".join(f"{names[q]}\t{q}\n" for q in sorted(names))


# DOT

def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(
    m: Wfst,
    state_names: Optional[Mapping[int, str]] = None,
    *,
    suppress_unit_weights: bool = False,
    title: str = "FST",
) -> str:
    """Graphviz drawing of ``m``.

    Initial states are bold, final states double circles, arcs are labeled
    ``in:out/weight``.  The same machine always yields the same text.
    """
    lines = [
        f"digraph {_quote(title)} {{",
        "  rankdir=LR;",
        "  node [shape=circle];",
    ]
    for q in m.states():
        attrs = []
        if q in m.finals:
            attrs.append("shape=doublecircle")
        if q in m.initial:
            attrs.append("style=bold")
        label = None
        if state_names is not None and q in state_names:
            label = state_names[q]
        if q in m.finals and not m.finals[q].is_one():
            label = f"{label if label is not None else q}/{format_weight(m.finals[q])}"
        if label is not None:
            attrs.append(f"label={_quote(label)}")
        lines.append(f"  {q} [{', '.join(attrs)}]" if attrs else f"  {q}")
    for a in m.arcs():
        label = f"{m.isym(a.ilabel)}:{m.osym(a.olabel)}"
        if not (suppress_unit_weights and a.weight.is_one()):
            label += f"/{format_weight(a.weight)}"
        lines.append(f"  {a.source} -> {a.target} [label={_quote(label)}]")
    lines.append("}")
    return "\n".join(lines) + "\n"
