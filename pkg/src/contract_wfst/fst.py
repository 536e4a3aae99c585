"""Weighted finite-state transducer data model.

States are dense integers starting at 0.  Labels are non-negative integers
with 0 reserved for epsilon on both tapes; symbol tables, when attached,
translate labels to text.  Arcs are kept per source state in insertion
order and parallel arcs are allowed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .errors import (
    BrokenPath,
    DuplicateId,
    DuplicateSymbol,
    InfiniteArcWeight,
    NoInitialState,
    NonAcceptingPath,
    NonTerminating,
    UnknownState,
    UnknownSymbol,
)
from .semiring import TropicalWeight, WeightLike

EPSILON = 0
EPSILON_SYMBOL = "<eps>"

Label = int
StateId = int


class SymbolTable:
    """Bijection between text symbols and integer labels.

    A fresh table already holds ``<eps>`` at 0.
    """

    def __init__(self, name: str = "", epsilon: str = EPSILON_SYMBOL):
        self.name = name
        self._by_symbol: Dict[str, int] = {}
        self._by_id: Dict[int, str] = {}
        if epsilon is not None:
            self.add_symbol(epsilon, EPSILON)

    @classmethod
    def from_symbols(cls, symbols: Iterable[str], name: str = "") -> "SymbolTable":
        """Table with ``symbols`` numbered 1, 2, ... in the given order."""
        table = cls(name)
        for s in symbols:
            table.add_symbol(s)
        return table

    def add_symbol(self, symbol: str, key: Optional[int] = None) -> int:
        if symbol in self._by_symbol:
            if key is None or self._by_symbol[symbol] == key:
                return self._by_symbol[symbol]
            raise DuplicateSymbol(f"symbol {symbol!r} already has id {self._by_symbol[symbol]}")
        if key is None:
            key = max(self._by_id, default=-1) + 1
        if key < 0:
            raise ValueError(f"symbol ids must be non-negative, got {key}")
        if key in self._by_id:
            raise DuplicateId(f"id {key} already bound to {self._by_id[key]!r}")
        self._by_symbol[symbol] = key
        self._by_id[key] = symbol
        return key

    def find(self, key: Union[int, str]):
        """Id for a symbol, or symbol for an id.  Raises UnknownSymbol."""
        try:
            if isinstance(key, str):
                return self._by_symbol[key]
            return self._by_id[key]
        except KeyError:
            raise UnknownSymbol(key, self.name or None) from None

    def __contains__(self, key) -> bool:
        if isinstance(key, str):
            return key in self._by_symbol
        return key in self._by_id

    def __iter__(self) -> Iterator[Tuple[int, str]]:
        for k in sorted(self._by_id):
            yield k, self._by_id[k]

    def __len__(self) -> int:
        return len(self._by_id)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymbolTable):
            return NotImplemented
        return self._by_id == other._by_id

    def __repr__(self) -> str:
        return f"SymbolTable({self.name!r}, {len(self)} symbols)"

    def copy(self) -> "SymbolTable":
        t = SymbolTable(self.name, epsilon=None)
        for k, s in self:
            t.add_symbol(s, k)
        return t


@dataclass(frozen=True)
class Arc:
    source: StateId
    ilabel: Label
    olabel: Label
    weight: TropicalWeight
    target: StateId


@dataclass(frozen=True)
class Path:
    """Consecutive arcs starting at ``start``.  ``start`` matters for empty paths."""

    start: StateId
    arcs: Tuple[Arc, ...] = ()

    @property
    def end(self) -> StateId:
        return self.arcs[-1].target if self.arcs else self.start

    @classmethod
    def of(cls, arcs: Sequence[Arc]) -> "Path":
        if not arcs:
            raise BrokenPath("an empty path needs an explicit start state")
        return cls(arcs[0].source, tuple(arcs))


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str
    state: Optional[StateId] = None
    arc: Optional[int] = None

    def __str__(self):
        return f"{self.code}: {self.message}"


class Wfst:
    """Mutable weighted transducer over the tropical semiring.

    >>> m = Wfst()
    >>> q0, q1 = m.add_state(), m.add_state()
    >>> m.set_initial(q0)
    >>> m.set_final(q1)
    >>> _ = m.add_arc(q0, 1, 2, 5, q1)
    >>> m.num_states, m.num_arcs
    (2, 1)
    """

    def __init__(
        self,
        isymbols: Optional[SymbolTable] = None,
        osymbols: Optional[SymbolTable] = None,
        weight_type=TropicalWeight,
    ):
        self.weight_type = weight_type
        self.isymbols = isymbols
        self.osymbols = osymbols
        self._arcs: List[List[Arc]] = []
        self.initial: Dict[StateId, TropicalWeight] = {}
        self.finals: Dict[StateId, TropicalWeight] = {}

    # construction

    def add_state(self) -> StateId:
        self._arcs.append([])
        return len(self._arcs) - 1

    def add_states(self, n: int) -> range:
        start = len(self._arcs)
        for _ in range(n):
            self.add_state()
        return range(start, start + n)

    def _check_state(self, q) -> None:
        if not (isinstance(q, int) and 0 <= q < len(self._arcs)):
            raise UnknownState(f"no state {q!r} (machine has {len(self._arcs)} states)")

    def _label(self, label, table: Optional[SymbolTable]) -> int:
        if isinstance(label, str):
            if table is None:
                raise UnknownSymbol(label, "(no symbol table)")
            return table.find(label)
        if not isinstance(label, int) or label < 0:
            raise ValueError(f"labels are non-negative integers, got {label!r}")
        return label

    def add_arc(self, source: StateId, ilabel, olabel, weight: WeightLike, target: StateId) -> Arc:
        """Append an arc.  Labels may be ids or symbols of the attached tables."""
        self._check_state(source)
        self._check_state(target)
        w = self.weight_type.coerce(weight)
        if w.is_zero():
            raise InfiniteArcWeight(f"arc {source}->{target} has weight {w}; omit the arc instead")
        arc = Arc(
            source,
            self._label(ilabel, self.isymbols),
            self._label(olabel, self.osymbols),
            w,
            target,
        )
        self._arcs[source].append(arc)
        return arc

    def set_initial(self, q: StateId, weight: WeightLike = 0) -> None:
        self._check_state(q)
        w = self.weight_type.coerce(weight)
        if w.is_zero():
            self.initial.pop(q, None)
        else:
            self.initial[q] = w

    def set_final(self, q: StateId, weight: WeightLike = 0) -> None:
        """Make ``q`` final.  A zero (infinite) weight removes it from F."""
        self._check_state(q)
        w = self.weight_type.coerce(weight)
        if w.is_zero():
            self.finals.pop(q, None)
        else:
            self.finals[q] = w

    # inspection

    @property
    def num_states(self) -> int:
        return len(self._arcs)

    @property
    def num_arcs(self) -> int:
        return sum(len(a) for a in self._arcs)

    def states(self) -> range:
        return range(len(self._arcs))

    def arcs(self, q: Optional[StateId] = None) -> List[Arc]:
        """Arcs leaving ``q``, or every arc in state order when ``q`` is None."""
        if q is None:
            return [a for arcs in self._arcs for a in arcs]
        self._check_state(q)
        return list(self._arcs[q])

    def final_weight(self, q: StateId) -> TropicalWeight:
        return self.finals.get(q, self.weight_type.zero())

    def initial_weight(self, q: StateId) -> TropicalWeight:
        return self.initial.get(q, self.weight_type.zero())

    @property
    def start(self) -> Optional[StateId]:
        """The initial state when there is exactly one."""
        if len(self.initial) == 1:
            return next(iter(self.initial))
        return None

    def copy(self) -> "Wfst":
        m = Wfst(
            self.isymbols.copy() if self.isymbols is not None else None,
            self.osymbols.copy() if self.osymbols is not None else None,
            self.weight_type,
        )
        m._arcs = [list(a) for a in self._arcs]
        m.initial = dict(self.initial)
        m.finals = dict(self.finals)
        return m

    def __eq__(self, other) -> bool:
        """Structural equality: same ids, same arcs in the same order, same weights."""
        if not isinstance(other, Wfst):
            return NotImplemented
        return (
            self._arcs == other._arcs
            and self.initial == other.initial
            and self.finals == other.finals
        )

    __hash__ = None

    def __repr__(self) -> str:
        return (
            f"<Wfst {self.num_states} states, {self.num_arcs} arcs, "
            f"initial={sorted(self.initial)}, finals={sorted(self.finals)}>"
        )

    # label helpers

    def isym(self, label: int) -> str:
        if self.isymbols is not None and label in self.isymbols:
            return self.isymbols.find(label)
        return str(label)

    def osym(self, label: int) -> str:
        if self.osymbols is not None and label in self.osymbols:
            return self.osymbols.find(label)
        return str(label)

    def encode_input(self, x) -> Tuple[int, ...]:
        return _encode(x, self.isymbols, "input")

    def encode_output(self, y) -> Tuple[int, ...]:
        return _encode(y, self.osymbols, "output")


def _encode(s, table: Optional[SymbolTable], side: str) -> Tuple[int, ...]:
    """Labels from a whitespace-separated string or a sequence of labels/symbols."""
    if isinstance(s, str):
        s = s.split()
    out = []
    for tok in s:
        if isinstance(tok, int):
            out.append(tok)
        elif table is not None:
            out.append(table.find(tok))
        elif tok.isdigit():
            out.append(int(tok))
        else:
            raise UnknownSymbol(tok, f"{side} labels (no symbol table)")
    return tuple(out)


def validate(m: Wfst) -> List[Diagnostic]:
    """Every broken invariant of ``m`` as a diagnostic; empty when valid."""
    diags: List[Diagnostic] = []
    n = m.num_states
    if not m.initial:
        diags.append(Diagnostic("NoInitialState", "machine has no initial state"))
    for kind, weights in (("initial", m.initial), ("final", m.finals)):
        for q, w in weights.items():
            if not (0 <= q < n):
                diags.append(Diagnostic("UnknownState", f"{kind} weight on missing state {q}", state=q))
            elif w.is_zero():
                diags.append(Diagnostic("ZeroWeight", f"{kind} weight of state {q} is zero", state=q))
    for q in m.states():
        for i, a in enumerate(m._arcs[q]):
            if a.source != q:
                diags.append(Diagnostic("MisplacedArc", f"arc {i} of state {q} claims source {a.source}", q, i))
            if not (0 <= a.target < n):
                diags.append(Diagnostic("UnknownState", f"arc {i} of state {q} targets missing state {a.target}", q, i))
            if a.weight.is_zero():
                diags.append(Diagnostic("InfiniteArcWeight", f"arc {i} of state {q} has zero weight", q, i))
            for label, table, side in ((a.ilabel, m.isymbols, "input"), (a.olabel, m.osymbols, "output")):
                if label != EPSILON and table is not None and label not in table:
                    diags.append(
                        Diagnostic("UnknownSymbol", f"arc {i} of state {q}: {side} label {label} not in symbol table", q, i)
                    )
    return diags


def path_weight(m: Wfst, path: Path) -> TropicalWeight:
    """Weight of an accepting path: initial weight, arc weights, final weight, multiplied."""
    if path.start not in m.initial:
        raise BrokenPath(f"path starts at {path.start}, which is not an initial state")
    w = m.initial[path.start]
    q = path.start
    for k, a in enumerate(path.arcs):
        if a.source != q:
            raise BrokenPath(f"arc {k} leaves state {a.source}, expected {q}")
        w = w.times(a.weight)
        q = a.target
    if q not in m.finals:
        raise NonAcceptingPath(f"path ends in non-final state {q}")
    return w.times(m.finals[q])


def _depth_bound(m: Wfst, n_symbols: int, cycle_budget: int) -> int:
    return n_symbols + m.num_arcs * cycle_budget


def string_weight(m: Wfst, x, y=None, *, cycle_budget: int = 2) -> TropicalWeight:
    """Sum over all accepting paths whose tapes read ``x`` and write ``y``.

    Brute force.  ``x`` and ``y`` are whitespace-separated symbol strings or
    label sequences; with ``y=None`` any output is accepted.  Paths longer
    than ``len(x) + len(y) + cycle_budget * num_arcs`` arcs are not explored;
    if such a path could still match, NonTerminating is raised.
    """
    xs = m.encode_input(x)
    ys = None if y is None else m.encode_output(y)
    zero = m.weight_type.zero()
    limit = _depth_bound(m, len(xs) + (len(ys) if ys is not None else 0), cycle_budget)
    total = zero

    # explicit stack: (state, input pos, output pos, weight so far, depth)
    stack = [(q, 0, 0, w, 0) for q, w in m.initial.items()]
    while stack:
        q, i, j, w, depth = stack.pop()
        if i == len(xs) and (ys is None or j == len(ys)) and q in m.finals:
            total = total.plus(w.times(m.finals[q]))
        for a in m._arcs[q]:
            ni, nj = i, j
            if a.ilabel != EPSILON:
                if i == len(xs) or xs[i] != a.ilabel:
                    continue
                ni += 1
            if a.olabel != EPSILON and ys is not None:
                if j == len(ys) or ys[j] != a.olabel:
                    continue
                nj += 1
            if depth == limit:
                raise NonTerminating(
                    f"path search exceeded {limit} arcs; the machine has a cycle "
                    "that consumes no matching symbols"
                )
            stack.append((a.target, ni, nj, w.times(a.weight), depth + 1))
    return total


def accepted_relation(
    m: Wfst, max_input_length: int, *, cycle_budget: int = 2
) -> Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], TropicalWeight]:
    """Every (input, output) pair with input length <= ``max_input_length``.

    Maps each pair to its summed path weight.  Same search and same bound
    as :func:`string_weight`, but without fixing the strings up front.
    """
    limit = _depth_bound(m, max_input_length, cycle_budget)
    rel: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], TropicalWeight] = {}
    stack = [(q, (), (), w, 0) for q, w in m.initial.items()]
    while stack:
        q, xs, ys, w, depth = stack.pop()
        if q in m.finals:
            key = (xs, ys)
            fw = w.times(m.finals[q])
            rel[key] = rel[key].plus(fw) if key in rel else fw
        for a in m._arcs[q]:
            nx = xs
            if a.ilabel != EPSILON:
                if len(xs) == max_input_length:
                    continue
                nx = xs + (a.ilabel,)
            ny = ys + (a.olabel,) if a.olabel != EPSILON else ys
            if depth == limit:
                raise NonTerminating(f"path search exceeded {limit} arcs")
            stack.append((a.target, nx, ny, w.times(a.weight), depth + 1))
    return rel


def reverse(m: Wfst) -> Wfst:
    """Machine accepting the reversed strings with the same weights.

    State ids of ``m`` are kept; one extra state (the last id) is the new
    initial state, with an epsilon arc to every former final state
    carrying its final weight.  Former initial states become final with
    their initial weight.
    """
    r = Wfst(m.isymbols, m.osymbols, m.weight_type)
    r.add_states(m.num_states)
    for a in m.arcs():
        r._arcs[a.target].append(Arc(a.target, a.ilabel, a.olabel, a.weight, a.source))
    super_initial = r.add_state()
    for f in sorted(m.finals):
        r._arcs[super_initial].append(Arc(super_initial, EPSILON, EPSILON, m.finals[f], f))
    r.set_initial(super_initial)
    for q, w in m.initial.items():
        r.set_final(q, w)
    return r


def is_deterministic(m: Wfst) -> bool:
    """At most one initial state, no epsilon inputs, no repeated input label per state."""
    if len(m.initial) > 1:
        return False
    for arcs in m._arcs:
        seen = set()
        for a in arcs:
            if a.ilabel == EPSILON or a.ilabel in seen:
                return False
            seen.add(a.ilabel)
    return True


def nondeterministic_states(m: Wfst) -> List[Tuple[StateId, Label, List[StateId]]]:
    """(state, input label, targets) for every input label that branches.

    Epsilon-input arcs are reported under label 0.
    """
    found = []
    for q, arcs in enumerate(m._arcs):
        targets: Dict[int, List[int]] = {}
        for a in arcs:
            targets.setdefault(a.ilabel, []).append(a.target)
        for label in sorted(targets):
            if label == EPSILON or len(targets[label]) > 1:
                found.append((q, label, targets[label]))
    return found


def require_initial(m: Wfst) -> None:
    if not m.initial:
        raise NoInitialState("machine has no initial state")
