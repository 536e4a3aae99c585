"""Shortest distance, shortest path and weighted determinization."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .errors import (
    InputEpsilon,
    NoAcceptingPath,
    NonFunctional,
    NonSubsequential,
    NonTerminating,
    StateBudgetExceeded,
    UnknownState,
)
from .fst import EPSILON, Arc, Path, StateId, Wfst, require_initial, reverse
from .semiring import TropicalWeight

FORWARD = "forward"
REVERSE = "reverse"

DEFAULT_RELAXATION_LIMIT = 10**6
DEFAULT_MAX_STATES = 10_000


@dataclass(frozen=True)
class DistanceVector:
    """Per-state shortest distances.

    ``forward``: from the initial states.  ``reverse``: to the final states.
    Unreachable entries are the semiring zero (infinity).
    """

    distances: Tuple[TropicalWeight, ...]
    direction: str = FORWARD

    def __getitem__(self, q: int) -> TropicalWeight:
        return self.distances[q]

    def __len__(self) -> int:
        return len(self.distances)

    def __iter__(self):
        return iter(self.distances)

    def values(self) -> List[float]:
        return [w.value for w in self.distances]


def _relax(m: Wfst, limit: int) -> List[TropicalWeight]:
    # Generic single-source shortest distance with a FIFO queue.  ``r``
    # holds weight added to d[q] since q was last processed; for an
    # idempotent plus this is plain label-correcting relaxation.
    zero = m.weight_type.zero()
    d = [zero] * m.num_states
    r = [zero] * m.num_states
    queue = deque()
    queued = [False] * m.num_states
    for q in sorted(m.initial):
        w = m.initial[q]
        d[q] = d[q].plus(w)
        r[q] = r[q].plus(w)
        if not queued[q]:
            queue.append(q)
            queued[q] = True
    relaxations = 0
    while queue:
        q = queue.popleft()
        queued[q] = False
        rq, r[q] = r[q], zero
        for a in m._arcs[q]:
            relaxations += 1
            if relaxations > limit:
                raise NonTerminating(
                    f"shortest distance exceeded {limit} relaxations; "
                    "weights may violate the semiring contract"
                )
            cand = rq.times(a.weight)
            t = a.target
            new = d[t].plus(cand)
            if new != d[t]:
                d[t] = new
                r[t] = r[t].plus(cand)
                if not queued[t]:
                    queue.append(t)
                    queued[t] = True
    return d


def shortest_distance(
    m: Wfst, direction: str = FORWARD, *, relaxation_limit: int = DEFAULT_RELAXATION_LIMIT
) -> DistanceVector:
    """Sum over all paths of the path weight, per state.

    ``forward`` distances run from the initial states (initial weights
    included); ``reverse`` distances run to the final states (final weights
    included) and are computed as forward distances on the reversed machine.
    """
    if direction == FORWARD:
        require_initial(m)
        return DistanceVector(tuple(_relax(m, relaxation_limit)), FORWARD)
    if direction == REVERSE:
        rev = reverse(m)
        d = _relax(rev, relaxation_limit)
        # last state of the reversed machine is its synthetic initial state
        return DistanceVector(tuple(d[: m.num_states]), REVERSE)
    raise ValueError(f"direction must be {FORWARD!r} or {REVERSE!r}, got {direction!r}")


def shortest_path(m: Wfst, start: StateId, *, to_final: Optional[DistanceVector] = None) -> Tuple[Path, TropicalWeight]:
    """A cheapest path from ``start`` to a final state, and its weight.

    The weight excludes initial weights and includes the final weight, so
    it equals the reverse distance of ``start``.  Among equally cheap paths
    the lexicographically smallest sequence of (target id, input label) is
    returned; stopping at a final state sorts before continuing.
    """
    if not (isinstance(start, int) and 0 <= start < m.num_states):
        raise UnknownState(f"no state {start!r}")
    dist = to_final if to_final is not None else shortest_distance(m, REVERSE)
    best = dist[start]
    if best.is_zero():
        raise NoAcceptingPath(f"no final state is reachable from state {start}")

    def tight_arcs(q):
        arcs = [a for a in m._arcs[q] if a.weight.times(dist[a.target]) == dist[q]]
        return sorted(arcs, key=lambda a: (a.target, a.ilabel, a.olabel))

    def stops(q):
        return q in m.finals and m.finals[q] == dist[q]

    # Depth-first over arcs that stay on a cheapest route, in tie-break
    # order, refusing to revisit a state on the current path (only
    # zero-weight cycles could make that tight).
    on_path = {start}
    arcs: List[Arc] = []
    iters = [iter(tight_arcs(start))]
    if stops(start):
        return Path(start), best
    while iters:
        for a in iters[-1]:
            if a.target in on_path:
                continue
            arcs.append(a)
            on_path.add(a.target)
            if stops(a.target):
                return Path(start, tuple(arcs)), best
            iters.append(iter(tight_arcs(a.target)))
            break
        else:
            iters.pop()
            if arcs:
                on_path.discard(arcs.pop().target)
    raise NoAcceptingPath(f"no simple cheapest path from state {start}")  # pragma: no cover


def coaccessible(m: Wfst) -> List[bool]:
    """Which states can reach a final state."""
    preds: List[List[int]] = [[] for _ in m.states()]
    for a in m.arcs():
        preds[a.target].append(a.source)
    seen = [False] * m.num_states
    stack = list(m.finals)
    for q in stack:
        seen[q] = True
    while stack:
        q = stack.pop()
        for p in preds[q]:
            if not seen[p]:
                seen[p] = True
                stack.append(p)
    return seen


Residual = Tuple[StateId, TropicalWeight, Tuple[int, ...]]


@dataclass(frozen=True)
class SubsetState:
    """Working state of the determinizer.

    Each residual is ``(original state, leftover weight, leftover output)``,
    sorted by state then leftover output.
    """

    residuals: Tuple[Residual, ...]

    @property
    def states(self) -> Tuple[StateId, ...]:
        return tuple(q for q, _, _ in self.residuals)

    @property
    def key(self):
        return tuple((q, w.value, out) for q, w, out in self.residuals)

    def __str__(self):
        parts = []
        for q, w, out in self.residuals:
            s = f"{q}/{w}"
            if out:
                s += "[" + " ".join(map(str, out)) + "]"
            parts.append(s)
        return "{" + ", ".join(parts) + "}"


@dataclass
class Determinization:
    """Result of :func:`determinize_with_subsets`."""

    fst: Wfst
    subsets: List[SubsetState]

    def merged(self) -> List[Tuple[StateId, Tuple[StateId, ...]]]:
        """(result state, original states) for subsets holding several states.

        A merged subset means some input sequence leads to several original
        states at once.
        """
        return [(i, s.states) for i, s in enumerate(self.subsets) if len(set(s.states)) > 1]


def _common_prefix(strings) -> Tuple[int, ...]:
    strings = list(strings)
    first = strings[0]
    n = len(first)
    for s in strings[1:]:
        n = min(n, len(s))
        for i in range(n):
            if s[i] != first[i]:
                n = i
                break
    return first[:n]


def _forced_outputs(m: Wfst, live: List[bool]) -> List[Optional[Tuple[int, ...]]]:
    """Per state, the output every completion to a final state starts with.

    Longest common prefix over completions, by fixpoint iteration from the
    final states (each value only shrinks once set).  None for states that
    cannot reach a final state.
    """
    forced: List[Optional[Tuple[int, ...]]] = [None] * m.num_states
    for f in m.finals:
        forced[f] = ()
    changed = True
    while changed:
        changed = False
        for a in m.arcs():
            tail = forced[a.target]
            if tail is None or not live[a.source]:
                continue
            cand = ((a.olabel,) if a.olabel != EPSILON else ()) + tail
            old = forced[a.source]
            new = cand if old is None else _common_prefix((old, cand))
            if new != old:
                forced[a.source] = new
                changed = True
    return forced


def _check_functional(acc: Dict[Tuple[int, Tuple[int, ...]], TropicalWeight]) -> None:
    pending: Dict[int, Tuple[int, ...]] = {}
    for q, out in acc:
        if q in pending and pending[q] != out:
            raise NonFunctional(
                f"state {q} is reached by one input with two different outputs "
                f"{pending[q]} and {out}"
            )
        pending[q] = out


def determinize_with_subsets(m: Wfst, max_states: int = DEFAULT_MAX_STATES) -> Determinization:
    """Weighted subset construction, keeping the subset behind each new state."""
    if max_states < 1:
        raise ValueError("max_states must be positive")
    require_initial(m)
    for a in m.arcs():
        if a.ilabel == EPSILON:
            raise InputEpsilon(f"state {a.source} has an epsilon-input arc to {a.target}")

    W = m.weight_type
    live = coaccessible(m)
    # Residual outputs are kept label-pushed: output a state is bound to
    # produce is owed up front, so it can be emitted as early as possible.
    forced = _forced_outputs(m, live)
    result = Wfst(m.isymbols, m.osymbols, W)
    subsets: List[SubsetState] = []
    index: Dict[tuple, int] = {}

    def intern(acc: Dict[Tuple[int, Tuple[int, ...]], TropicalWeight], norm: TropicalWeight, emitted: int) -> int:
        _check_functional(acc)
        residuals = sorted(
            ((q, w.divide(norm), out[emitted:]) for (q, out), w in acc.items()),
            key=lambda t: (t[0], t[2]),
        )
        subset = SubsetState(tuple(residuals))
        k = subset.key
        if k in index:
            return index[k]
        if len(subsets) >= max_states:
            raise StateBudgetExceeded(max_states)
        sid = result.add_state()
        index[k] = sid
        subsets.append(subset)
        return sid

    start_acc: Dict[Tuple[int, Tuple[int, ...]], TropicalWeight] = {}
    for q, w in m.initial.items():
        if live[q]:
            start_acc[(q, forced[q])] = w
    if not start_acc:
        result.set_initial(result.add_state())
        subsets.append(SubsetState(()))
        return Determinization(result, subsets)
    norm = W.zero()
    for w in start_acc.values():
        norm = norm.plus(w)
    start = intern(start_acc, norm, 0)
    result.set_initial(start, norm)

    done = 0
    while done < len(subsets):
        sid, subset = done, subsets[done]
        done += 1

        final_w = W.zero()
        final_out = None
        for q, w, out in subset.residuals:
            if q in m.finals:
                if final_out is not None and out != final_out:
                    raise NonFunctional(
                        f"original states {subset.states} end one input with different outputs"
                    )
                final_out = out
                final_w = final_w.plus(w.times(m.finals[q]))
        if final_out:
            raise NonSubsequential(
                f"output {final_out} is still pending when the input ends in subset {subset}"
            )
        if not final_w.is_zero():
            result.set_final(sid, final_w)

        by_label: Dict[int, Dict[Tuple[int, Tuple[int, ...]], TropicalWeight]] = {}
        for q, w, out in subset.residuals:
            for a in m._arcs[q]:
                if not live[a.target]:
                    continue
                acc = by_label.setdefault(a.ilabel, {})
                pushed = ((a.olabel,) if a.olabel != EPSILON else ()) + forced[a.target]
                key = (a.target, out + pushed[len(forced[q]):])
                cand = w.times(a.weight)
                acc[key] = acc[key].plus(cand) if key in acc else cand

        for label in sorted(by_label):
            acc = by_label[label]
            arc_w = W.zero()
            for w in acc.values():
                arc_w = arc_w.plus(w)
            # Arcs carry one output symbol, so emit at most one symbol of
            # the common prefix and leave the rest pending.
            emit = _common_prefix(out for _, out in acc)[:1]
            target = intern(acc, arc_w, len(emit))
            olabel = emit[0] if emit else EPSILON
            result._arcs[sid].append(Arc(sid, label, olabel, arc_w, target))

    return Determinization(result, subsets)


def determinize(m: Wfst, max_states: int = DEFAULT_MAX_STATES) -> Wfst:
    """Equivalent machine with at most one arc per state and input label.

    In the tropical semiring each input keeps its cheapest weight.  Raises
    InputEpsilon for epsilon-input arcs, StateBudgetExceeded after
    ``max_states`` result states, NonFunctional when one input has several
    outputs and NonSubsequential when an output cannot be emitted before
    the input ends.
    """
    return determinize_with_subsets(m, max_states).fst


def canonical_form(m: Wfst):
    """Renumbering-independent description of a deterministic machine.

    States are numbered in breadth-first order from the initial state,
    following arcs by input label.  Unreachable states are dropped.
    Two deterministic machines are isomorphic iff their canonical forms
    are equal.
    """
    start = m.start
    if start is None:
        return (None, (), ())
    order = {start: 0}
    queue = deque([start])
    while queue:
        q = queue.popleft()
        for a in sorted(m._arcs[q], key=lambda a: (a.ilabel, a.olabel, a.weight.value, a.target)):
            if a.target not in order:
                order[a.target] = len(order)
                queue.append(a.target)
    arcs = sorted(
        (order[a.source], a.ilabel, a.olabel, a.weight.value, order[a.target])
        for q in order
        for a in m._arcs[q]
    )
    finals = sorted((order[q], w.value) for q, w in m.finals.items() if q in order)
    return (m.initial[start].value, tuple(arcs), tuple(finals))
