"""Cost model: which foreign templates can complete a pattern, and in what order.

A foreign template is relevant to a root template when the root records
both a class correspondence to it and a property correspondence for the
pattern's predicate landing on a predicate the template actually
describes. Relevance is the aggregated multiplicity the template promises
for the (mapped) predicate; candidates are ranked by descending relevance
with a deterministic (endpoint, class) tiebreak.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .errors import UnboundPredicateError
from .profile import Catalog, MoleculeTemplate, Number
from .query import TriplePattern, Variable


def relevant_templates(
    tp: TriplePattern,
    root: MoleculeTemplate,
    catalog: Catalog,
) -> list[MoleculeTemplate]:
    """All templates (other than the root) able to contribute answers for tp.

    Requires a bound predicate: with a variable predicate no property
    correspondence can be consulted.
    """
    if isinstance(tp.predicate, Variable):
        raise UnboundPredicateError(
            f"cannot compute relevant templates for unbound predicate ?{tp.predicate.name}"
        )
    predicate = tp.predicate.value
    out = []
    for mt in catalog.templates():
        if mt.key() == root.key():
            continue
        if mt.class_iri not in root.corresponding_classes(mt.endpoint):
            continue
        linked = root.predicate_links(predicate, mt.endpoint)
        if any(p_prime in mt.dtp for p_prime in linked):
            out.append(mt)
    return out


def relevance(tp: TriplePattern, mt: MoleculeTemplate) -> Optional[Number]:
    """The multiplicity mt promises for tp's predicate, or None if undescribed.

    The pattern must already be mapped into mt's vocabulary.
    """
    if isinstance(tp.predicate, Variable):
        raise UnboundPredicateError(
            f"relevance is undefined for unbound predicate ?{tp.predicate.name}"
        )
    entry = mt.dtp.get(tp.predicate.value)
    return entry.amd if entry is not None else None


def rank(
    candidates: Iterable[tuple[MoleculeTemplate, Number]],
) -> list[tuple[MoleculeTemplate, Number]]:
    """Sort by descending score; ties by (endpoint, class) ascending."""
    return sorted(candidates, key=lambda c: (-c[1], c[0].endpoint, c[0].class_iri))
