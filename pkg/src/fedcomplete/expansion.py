"""The adaptive triple-pattern operator.

Evaluates a pattern at a root source, detects incompleteness by comparing
per-subject object counts against aggregated-multiplicity estimates, and
expands breadth-first through relevance-ranked foreign templates, rewriting
the pattern into each target schema and translating results back into the
root vocabulary. Every template is visited at most once; expansion stops
as soon as the answers look complete or no linked template remains.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Optional, Union

from .errors import NoMappingError, UnboundPredicateError
from .profile import Catalog, MoleculeTemplate, Number, normalize_number
from .query import SolutionMapping, TriplePattern, Variable
from .ranking import rank, relevance, relevant_templates
from .rdf import Iri, Literal, Term
from .sameas import SameAsClosure

if TYPE_CHECKING:
    from .federation import Federation


@dataclass(frozen=True)
class TraceEvent:
    step: int
    endpoint: str
    pattern: TriplePattern
    gained: int
    reason: str  # "root" or "expand"
    score: Optional[Number] = None
    note: Optional[str] = None
    # visited template key, for audits; not part of the serialized format
    template: Optional[tuple[str, str]] = None

    def format(self) -> str:
        reason = self.reason if self.reason == "root" else f"expand:{format_number(self.score)}"
        line = (
            f"step={self.step} endpoint={self.endpoint} pattern={self.pattern} "
            f"gained={self.gained} reason={reason}"
        )
        if self.note:
            line += f" note={self.note}"
        return line


@dataclass
class PatternAnswer:
    mappings: frozenset[SolutionMapping]
    provenance: dict[SolutionMapping, frozenset[str]]
    trace: list[TraceEvent]

    def sources(self) -> set[str]:
        out: set[str] = set()
        for endpoints in self.provenance.values():
            out |= endpoints
        return out


def format_number(value: Optional[Number]) -> str:
    if value is None:
        return "-"
    value = normalize_number(value)
    return str(value)


def serialize_trace(events: Iterable[TraceEvent]) -> str:
    return "".join(e.format() + "\n" for e in events)


def _unify(pattern: TriplePattern, subject: Term, predicate: Term, obj: Term) -> Optional[dict[Variable, Term]]:
    bindings: dict[Variable, Term] = {}
    for pt, t in ((pattern.subject, subject), (pattern.predicate, predicate), (pattern.object, obj)):
        if isinstance(pt, Variable):
            bound = bindings.get(pt)
            if bound is not None and bound != t:
                return None
            bindings[pt] = t
        elif pt != t:
            return None
    return bindings


def map_pattern(
    tp: TriplePattern,
    from_mt: MoleculeTemplate,
    to_mt: MoleculeTemplate,
    sameas: SameAsClosure,
) -> TriplePattern:
    """Rewrite tp into to_mt's schema.

    The predicate follows a property link recorded on from_mt, preferring a
    target predicate that to_mt actually describes (highest promised
    multiplicity first). Bound subject/object IRIs are rewritten through the
    entity closure when a correspondent exists at the target endpoint;
    variables and literals pass through unchanged.
    """
    if isinstance(tp.predicate, Variable):
        raise UnboundPredicateError("cannot map a pattern with an unbound predicate")
    links = sorted(from_mt.predicate_links(tp.predicate.value, to_mt.endpoint))
    if not links:
        raise NoMappingError(
            f"no property link from {tp.predicate.value} to endpoint {to_mt.endpoint}"
        )
    described = [p for p in links if p in to_mt.dtp]
    if described:
        target = sorted(described, key=lambda p: (-to_mt.dtp[p].amd, p))[0]
    else:
        target = links[0]

    def rewrite(term):
        if isinstance(term, Iri):
            rep = sameas.representative_at(term, to_mt.endpoint)
            if rep is not None:
                return rep
        return term

    return TriplePattern(rewrite(tp.subject), Iri(target), rewrite(tp.object))


def is_incomplete(
    answers: Union[PatternAnswer, Iterable[SolutionMapping]],
    tp: TriplePattern,
    mt: MoleculeTemplate,
    sameas: Optional[SameAsClosure] = None,
) -> bool:
    """Do the answers fall short of mt's multiplicity estimate for tp?

    True when there are no answers at all, or when some subject among the
    answers (unified across the sameAs closure) has fewer distinct objects
    than mt's aggregated multiplicity for tp's predicate. A predicate
    absent from mt's description yields False on non-empty answers: there
    is no estimate to fall short of.
    """
    mappings = answers.mappings if isinstance(answers, PatternAnswer) else set(answers)
    if not mappings:
        return True
    if isinstance(tp.predicate, Variable):
        raise UnboundPredicateError("incompleteness is undefined for an unbound predicate")
    entry = mt.dtp.get(tp.predicate.value)
    if entry is None:
        return False

    def canon(term: Term) -> Term:
        if sameas is None or isinstance(term, Literal):
            return term
        return sameas.canonical(term)

    groups: dict[Term, set[Term]] = {}
    for mapping in mappings:
        subject = mapping.get(tp.subject) if isinstance(tp.subject, Variable) else tp.subject
        obj = mapping.get(tp.object) if isinstance(tp.object, Variable) else tp.object
        if subject is None or obj is None:
            continue
        groups.setdefault(canon(subject), set()).add(canon(obj))
    return any(len(objects) < entry.amd for objects in groups.values())


def evaluate_pattern(
    tp: TriplePattern,
    root: MoleculeTemplate,
    catalog: Catalog,
    federation: "Federation",
    expand: bool = True,
) -> PatternAnswer:
    """Evaluate tp starting at the root template's endpoint.

    With expand=True the operator widens the evaluation breadth-first
    through ranked relevant templates while the accumulated answers are
    incomplete with respect to the root's own estimate or the promise of a
    discovered-but-unvisited candidate. A root without an estimate for the
    predicate expands only when its own evaluation came back empty and a
    property link exists to follow.
    """
    sameas = federation.sameas
    root_endpoint = root.endpoint

    def translate(term: Term) -> Term:
        if isinstance(term, Literal):
            return term
        return sameas.to_vocabulary(term, root_endpoint)

    def evaluate_at(endpoint_id: str, pattern: TriplePattern) -> set[SolutionMapping]:
        found: set[SolutionMapping] = set()
        for triple in federation.request(endpoint_id, pattern):
            bindings = _unify(pattern, triple.subject, triple.predicate, triple.object)
            if bindings is not None:
                found.add(SolutionMapping((v, translate(t)) for v, t in bindings.items()))
        return found

    provenance: dict[SolutionMapping, set[str]] = {}
    trace: list[TraceEvent] = []
    unbound = isinstance(tp.predicate, Variable)

    for mapping in evaluate_at(root_endpoint, tp):
        provenance.setdefault(mapping, set()).add(root_endpoint)
    note = "unbound-predicate-root-only" if unbound and expand else None
    trace.append(TraceEvent(0, root_endpoint, tp, len(provenance), "root", None, note, root.key()))

    if expand and not unbound:
        visited = {root.key()}
        queued: set[tuple[str, str]] = set()
        frontier: deque[tuple[MoleculeTemplate, TriplePattern, Number]] = deque()

        def discover(from_mt: MoleculeTemplate, from_tp: TriplePattern):
            found = []
            mapped_by_key: dict[tuple[str, str], TriplePattern] = {}
            for mt in relevant_templates(from_tp, from_mt, catalog):
                key = mt.key()
                if key in visited or key in queued:
                    continue
                try:
                    mapped = map_pattern(from_tp, from_mt, mt, sameas)
                except NoMappingError:
                    continue
                score = relevance(mapped, mt)
                if score is None:
                    continue
                found.append((mt, score))
                mapped_by_key[key] = mapped
                queued.add(key)
            return [(mt, mapped_by_key[mt.key()], score) for mt, score in rank(found)]

        frontier.extend(discover(root, tp))
        root_entry = root.dtp.get(tp.predicate.value)

        def answers_incomplete() -> bool:
            current = set(provenance)
            if not current:
                return True
            if root_entry is None:
                return False
            if is_incomplete(current, tp, root, sameas):
                return True
            return any(is_incomplete(current, mapped, mt, sameas) for mt, mapped, _ in frontier)

        step = 1
        while frontier and answers_incomplete():
            mt, mapped_tp, score = frontier.popleft()
            queued.discard(mt.key())
            visited.add(mt.key())
            gained = 0
            for mapping in evaluate_at(mt.endpoint, mapped_tp):
                if mapping not in provenance:
                    provenance[mapping] = set()
                    gained += 1
                provenance[mapping].add(mt.endpoint)
            trace.append(
                TraceEvent(step, mt.endpoint, mapped_tp, gained, "expand", score, None, mt.key())
            )
            step += 1
            frontier.extend(discover(mt, mapped_tp))

    return PatternAnswer(
        frozenset(provenance),
        {m: frozenset(e) for m, e in provenance.items()},
        trace,
    )
