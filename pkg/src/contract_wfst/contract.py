"""Contracts as weighted transducers.

A :class:`ContractSpec` lists the states of an agreement, the events that
move it between states (input event : output event, with a dollar cost to
the party whose perspective is modeled), the start and end states, and a
catalog of breach events.  All breach events share one input label and
lead to a single breach state.

The ``.contract`` text format is line oriented::

    [description]
    free text
    [initial]
    0
    [states]
    0 | START | n/a
    [transitions]
    0 -> 1 | a : b | $15,000 | 4, 5
    [finals]
    5
    [breach-events]
    c | Breach of delivery terms | 7

``#`` starts a comment line.  ``$`` and thousands separators in weights
are optional.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from typing import Dict, List, Optional, Sequence, Tuple

from .algorithms import REVERSE, shortest_distance, shortest_path
from .errors import (
    ContractError,
    DanglingStateRef,
    DuplicateStateId,
    NegativeWeight,
    NoAcceptingPath,
    ParseError,
)
from .fst import SymbolTable, Wfst
from .semiring import TropicalWeight

NOT_APPLICABLE = "n/a"


def _sections(text: str) -> Tuple[str, ...]:
    text = text.strip()
    if not text or text == NOT_APPLICABLE:
        return ()
    return tuple(s.strip() for s in text.split(",") if s.strip())


def _format_sections(sections: Sequence[str]) -> str:
    return ", ".join(sections) if sections else NOT_APPLICABLE


@dataclass(frozen=True)
class ContractState:
    id: int
    label: str
    sections: Tuple[str, ...] = ()


@dataclass(frozen=True)
class ContractTransition:
    source: int
    target: int
    input: str
    output: str
    weight: int
    sections: Tuple[str, ...] = ()

    @property
    def event(self) -> str:
        return f"{self.input}:{self.output}"


@dataclass(frozen=True)
class BreachEvent:
    event: str
    description: str
    section: str


@dataclass(frozen=True)
class ContractSpec:
    states: Tuple[ContractState, ...]
    transitions: Tuple[ContractTransition, ...]
    initial: int
    finals: Tuple[int, ...]
    breach_events: Tuple[BreachEvent, ...] = ()
    description: str = ""

    def state(self, q: int) -> ContractState:
        for s in self.states:
            if s.id == q:
                return s
        raise DanglingStateRef(f"no state {q}")

    @property
    def breach_input(self) -> Optional[str]:
        labels = {b.event for b in self.breach_events}
        return labels.pop() if len(labels) == 1 else None

    @property
    def breach_states(self) -> Tuple[int, ...]:
        """States entered by the breach event."""
        label = self.breach_input
        if label is None:
            return ()
        return tuple(sorted({t.target for t in self.transitions if t.input == label}))

    def check(self) -> None:
        """Raise on the first broken invariant."""
        if not self.states:
            raise ContractError("a contract needs at least one state")
        ids = set()
        for s in self.states:
            if s.id < 0:
                raise ContractError(f"state id {s.id} is negative")
            if s.id in ids:
                raise DuplicateStateId(f"state {s.id} declared twice")
            ids.add(s.id)
        for t in self.transitions:
            for q in (t.source, t.target):
                if q not in ids:
                    raise DanglingStateRef(f"transition {t.source} -> {t.target} uses undeclared state {q}")
            if t.weight < 0:
                raise NegativeWeight(f"transition {t.source} -> {t.target} has negative weight {t.weight}")
            if not t.input or not t.output:
                raise ContractError(f"transition {t.source} -> {t.target} needs input and output events")
        for q in (self.initial, *self.finals):
            if q not in ids:
                raise DanglingStateRef(f"initial/final state {q} is not declared")
        labels = {b.event for b in self.breach_events}
        if len(labels) > 1:
            raise ContractError(f"breach events must share one input event, got {sorted(labels)}")
        if labels and not any(t.input in labels for t in self.transitions):
            raise ContractError(f"breach event {labels.pop()!r} labels no transition")


def input_symbols(spec: ContractSpec) -> SymbolTable:
    return SymbolTable.from_symbols(sorted({t.input for t in spec.transitions}), "input events")


def output_symbols(spec: ContractSpec) -> SymbolTable:
    return SymbolTable.from_symbols(sorted({t.output for t in spec.transitions}), "output events")


def state_names(spec: ContractSpec) -> Dict[int, str]:
    return {s.id: s.label for s in spec.states}


def compile_contract(spec: ContractSpec) -> Wfst:
    """One state per contract state (same ids), one arc per transition.

    Event labels are numbered alphabetically from 1 on each tape.  The
    initial and final states get unit weight.
    """
    spec.check()
    m = Wfst(input_symbols(spec), output_symbols(spec))
    m.add_states(max(s.id for s in spec.states) + 1)
    for t in spec.transitions:
        m.add_arc(t.source, t.input, t.output, t.weight, t.target)
    m.set_initial(spec.initial)
    for f in spec.finals:
        m.set_final(f)
    return m


# reports

LITIGATION_NOTE = "litigation costs not modeled"


@dataclass(frozen=True)
class CostRow:
    state: int
    label: str
    from_start: TropicalWeight
    to_final: TropicalWeight
    completion: Optional[Tuple[str, ...]]  # None when no final state is reachable
    notes: Tuple[str, ...] = ()


@dataclass(frozen=True)
class CostReport:
    rows: Tuple[CostRow, ...]

    def row(self, q: int) -> CostRow:
        for r in self.rows:
            if r.state == q:
                return r
        raise KeyError(q)


def cost_report(spec: ContractSpec) -> CostReport:
    """Cheapest cost to reach each state and to finish from it."""
    m = compile_contract(spec)
    forward = shortest_distance(m)
    backward = shortest_distance(m, REVERSE)
    breach = set(spec.breach_states)
    rows = []
    for s in sorted(spec.states, key=lambda s: s.id):
        notes = []
        if s.id in breach:
            notes.append(LITIGATION_NOTE)
        try:
            path, _ = shortest_path(m, s.id, to_final=backward)
            completion = tuple(f"{m.isym(a.ilabel)}:{m.osym(a.olabel)}" for a in path.arcs)
        except NoAcceptingPath:
            completion = None
            notes.append("no accepting path")
        if forward[s.id].is_zero():
            notes.append("unreachable")
        rows.append(CostRow(s.id, s.label, forward[s.id], backward[s.id], completion, tuple(notes)))
    return CostReport(tuple(rows))


def format_dollars(w: TropicalWeight) -> str:
    if w.is_zero():
        return "Infinity"
    v = w.value
    if v.is_integer():
        return f"${int(v):,}"
    return f"${v:,.2f}"


def _completion_text(c: Optional[Tuple[str, ...]]) -> str:
    if c is None:
        return "none"
    return " ".join(c) if c else "-"


REPORT_COLUMNS = ("state", "label", "from_start", "to_final", "completion", "notes")


def format_report(report: CostReport, pretty: bool = False) -> str:
    """Tab-separated table, or aligned columns with dollar amounts when ``pretty``."""
    rows = []
    for r in report.rows:
        if pretty:
            costs = (format_dollars(r.from_start), format_dollars(r.to_final))
        else:
            costs = (str(r.from_start), str(r.to_final))
        rows.append((str(r.state), r.label, *costs, _completion_text(r.completion), "; ".join(r.notes)))
    if not pretty:
        return "".join("\t".join(row) + "\n" for row in [REPORT_COLUMNS, *rows])
    table = [REPORT_COLUMNS, *rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(REPORT_COLUMNS))]
    right = {0, 2, 3}
    out = []
    for row in table:
        cells = [c.rjust(w) if i in right else c.ljust(w) for i, (c, w) in enumerate(zip(row, widths))]
        out.append("  ".join(cells).rstrip())
    return "\n".join(out) + "\n"


# text format

SECTIONS = ("description", "initial", "states", "transitions", "finals", "breach-events")

_TRANSITION = re.compile(r"^(\d+)\s*->\s*(\d+)$")
_WEIGHT = re.compile(r"^\$?\s*(\d{1,3}(,\d{3})+|\d+)$")


def _parse_dollars(text: str, lineno: int) -> int:
    s = text.strip()
    match = _WEIGHT.match(s)
    if match is None:
        raise ParseError(f"weight {s!r} is not a non-negative whole dollar amount", lineno, "transitions")
    return int(match.group(1).replace(",", ""))


def _int(text: str, lineno: int, section: str) -> int:
    s = text.strip()
    if not s.isdigit():
        raise ParseError(f"expected a state id, got {s!r}", lineno, section)
    return int(s)


def _split(line: str, n: int, lineno: int, section: str) -> List[str]:
    parts = [p.strip() for p in line.split("|")]
    if len(parts) != n:
        raise ParseError(f"expected {n} '|'-separated fields, got {len(parts)}", lineno, section)
    return parts


def parse_contract_spec(text: str) -> ContractSpec:
    current = None
    seen = set()
    description: List[str] = []
    initial: List[int] = []
    states: List[ContractState] = []
    transitions: List[ContractTransition] = []
    finals: List[int] = []
    breaches: List[BreachEvent] = []

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip().lower()
            if current not in SECTIONS:
                raise ParseError(f"unknown section [{current}]", lineno)
            if current in seen:
                raise ParseError("section appears twice", lineno, current)
            seen.add(current)
            continue
        if current == "description":
            description.append(line)
            continue
        if not line:
            continue
        if current is None:
            raise ParseError("content before the first section header", lineno)
        if current == "initial":
            initial.append(_int(line, lineno, current))
        elif current == "finals":
            finals.append(_int(line, lineno, current))
        elif current == "states":
            q, label, secs = _split(line, 3, lineno, current)
            if not label:
                raise ParseError("state label is empty", lineno, current)
            states.append(ContractState(_int(q, lineno, current), label, _sections(secs)))
        elif current == "transitions":
            arrow, events, weight, secs = _split(line, 4, lineno, current)
            match = _TRANSITION.match(arrow)
            if match is None:
                raise ParseError(f"expected 'src -> dst', got {arrow!r}", lineno, current)
            ins, colon, outs = events.partition(":")
            if not colon or not ins.strip() or not outs.strip():
                raise ParseError(f"expected 'input : output', got {events!r}", lineno, current)
            transitions.append(
                ContractTransition(
                    int(match.group(1)),
                    int(match.group(2)),
                    ins.strip(),
                    outs.strip(),
                    _parse_dollars(weight, lineno),
                    _sections(secs),
                )
            )
        elif current == "breach-events":
            event, desc, sec = _split(line, 3, lineno, current)
            breaches.append(BreachEvent(event, desc, sec))

    if not states:
        raise ParseError("a contract needs states", section="states")
    if len(initial) != 1:
        raise ParseError(f"expected exactly one initial state, got {len(initial)}", section="initial")
    while description and not description[-1]:
        description.pop()
    while description and not description[0]:
        description.pop(0)
    spec = ContractSpec(
        tuple(states),
        tuple(transitions),
        initial[0],
        tuple(finals),
        tuple(breaches),
        "\n".join(description),
    )
    spec.check()
    return spec


def write_contract_spec(spec: ContractSpec) -> str:
    out = []
    if spec.description:
        out.append("[description]")
        out.extend(spec.description.splitlines())
        out.append("")
    out += ["[initial]", str(spec.initial), "", "[states]"]
    out += [f"{s.id} | {s.label} | {_format_sections(s.sections)}" for s in spec.states]
    out += ["", "[transitions]"]
    out += [
        f"{t.source} -> {t.target} | {t.input} : {t.output} | ${t.weight:,} | {_format_sections(t.sections)}"
        for t in spec.transitions
    ]
    out += ["", "[finals]"]
    out += [str(f) for f in spec.finals]
    if spec.breach_events:
        out += ["", "[breach-events]"]
        out += [f"{b.event} | {b.description} | {b.section}" for b in spec.breach_events]
    return "\n".join(out) + "\n"


# the manufacturing agreement

MANUFACTURING_DESCRIPTION = """\
Widget manufacturing agreement, modeled from the buyer's side. Weights are
the buyer's dollar costs: $30,000 total price paid in two halves, $10,000
of lost profit per month of delay, $30,000 for any breach.
Extensions the agreement allows are always granted, and no party ever
offers a cure for a breach, so neither choice appears as an arc.
All breach events are lumped into one input event, c, leading to the
litigation state; litigation itself carries no cost here.
The agreement's transition table prices e:f at $30,000, but the remaining
payment is half of the $30,000 price, so e:f is $15,000; only that value
gives a $30,000 cheapest completion.
g:h and k:l are six-week delays costed at $15,000 (1.5 months at $10,000)."""

_STATES = (
    (0, "START", ()),
    (1, "production period has elapsed", ("8",)),
    (2, "litigation", ("9", "18-37")),
    (3, "produce shipped", ("4", "7")),
    (4, "six week production extension period elapses", ("8",)),
    (5, "TERM/contract complete", ()),
    (6, '"cure period" has elapsed', ("8",)),
)

_TRANSITIONS = (
    (0, 1, "a", "b", 15000, ("4", "5")),
    (1, 3, "e", "f", 15000, ("4", "8")),
    (4, 3, "e", "f", 15000, ("4", "8")),
    (1, 4, "g", "h", 15000, ("8",)),
    (3, 5, "i", "j", 0, ("8",)),
    (6, 5, "i", "j", 0, ("8",)),
    (3, 6, "k", "l", 15000, ("10",)),
    (0, 2, "c", "d", 30000, ("*", "18")),
    (1, 2, "c", "d", 30000, ("*", "18")),
    (3, 2, "c", "d", 30000, ("*", "18")),
    (4, 2, "c", "d", 30000, ("*", "18")),
    (6, 2, "c", "d", 30000, ("*", "18")),
)

_BREACHES = (
    ("Products insufficient quality and quantity", "1"),
    ("Products not in compliance with standards and warranties", "1(a)"),
    ("Manufacturer does not provide parts, labor, or materials", "1(b)"),
    ("Manufacturer does not make its facility and product available for inspection", "1(c)"),
    ("Manufacturer does not provide QC or product information upon request", "1(d)"),
    ("Manufacturer utilizes unauthorized subcontractors and suppliers", "1(e)"),
    ("Manufacturer does not provide batch and lot codes", "1(f)"),
    ("Manufacturer does not provide certificate of analysis", "1(g)"),
    ("Manufacturer does not provide date of manufacturer on products", "1(h)"),
    ("Manufacturer does not maintain manufacturing certifications or GMPs", "2(a)"),
    ("Manufacturer does not maintain emergency action plan", "2(b)"),
    ("Manufacturer does not assist in product enhancement and product development", "2(c)"),
    ("Manufacturer does not provide management supports", "2(d)"),
    ("Manufacturer does not provide assistance with product development in developing markets", "2(e)"),
    ("Manufacturer does not make its facility available for inspection", "2(f)"),
    ("Manufacturer does not comply with price increase/price decease procedures", "3(a), (b)"),
    ("Manufacturer does not remit down payment or final payment", "4"),
    ("Manufacturer does not meet manufacturing requirements (e.g. compliance manufacturing laws)", "6(a)"),
    ("Product does not comply with laws in target market", "6(b)"),
    ("Product does not comply with labeling requirements", "6(c)"),
    ("Breach of delivery terms", "7"),
    ("Delay of delivery of product, including after six week extension period", "8"),
    ("Manufacturer does not provide and maintain an inspection procedure and quality assurance program", "10"),
    ("Buyer or Manufacturer breach of confidentiality program", "11"),
    ("Buyer IP infringement", "12"),
    ("Seller IP infringement", "12"),
    ("Manufacturer failure to notify of inspection event", "13"),
    ("Manufacturer failure to notify of return or recall", "14"),
    ("Manufacturer failure to notify of regulatory action", "15"),
    ("Buyer or seller: bankruptcy, liquidation, government action (including litigation), or material breach", "16"),
    ("Manufacturer failure to maintain insurance", "17"),
)


def builtin_manufacturing_contract() -> ContractSpec:
    """The widget manufacturing agreement: 7 states, 12 transitions, finals 2 and 5."""
    return ContractSpec(
        states=tuple(ContractState(*s) for s in _STATES),
        transitions=tuple(ContractTransition(*t) for t in _TRANSITIONS),
        initial=0,
        finals=(2, 5),
        breach_events=tuple(BreachEvent("c", d, s) for d, s in _BREACHES),
        description=MANUFACTURING_DESCRIPTION,
    )


BUILTIN = {"manufacturing": builtin_manufacturing_contract}


def fixture_text(name: str) -> str:
    """Contents of a shipped data file, e.g. ``manufacturing.fst.txt``."""
    return resources.files("contract_wfst").joinpath("data", name).read_text(encoding="utf-8")
