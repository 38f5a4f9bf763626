"""Forward-chaining reasoner for the supported fragment.

The closure is computed in strata, because no rule in the fragment lets
individual-level facts feed back into the class or property hierarchies:

1. class hierarchy (told edges, equivalences, ``C == D and ...`` definitions),
   iterated together with unsatisfiability detection;
2. object/data property hierarchies, inverses, domains and ranges;
3. links (sub-properties, inverses, symmetric/transitive flags), computed on
   identity-group representatives;
4. types (assertions, domain/range, upward propagation, classification of
   conjunctive definitions) to a fixpoint;
5. consistency checks over the result.

:func:`naive_fixpoint_oracle` in :mod:`descriptorkb.oracle` computes the same
closure by blind rule iteration and is kept independent of this module.
"""

from __future__ import annotations

import logging
from collections import defaultdict, deque
from typing import Iterable

import networkx as nx

from .entities import (
    NOTHING,
    THING,
    Axiom,
    BareClass,
    CardinalityKind,
    DataPair,
    DataRestriction,
    EntityKind,
    EntityRef,
    Expression,
    ObjectPair,
    ObjectRestriction,
    is_legal,
)
from .snapshot import ConsistencyReport, InferenceSnapshot, Violation
from .store import Characteristic, OntologyStore

log = logging.getLogger(__name__)

E = Expression
_C, _I, _OP, _DP = (
    EntityKind.CLASS,
    EntityKind.INDIVIDUAL,
    EntityKind.OBJECT_PROPERTY,
    EntityKind.DATA_PROPERTY,
)


class ReasonerError(RuntimeError):
    pass


def _closure(nodes: Iterable, edges: dict) -> dict:
    """Reflexive-transitive reachability by BFS from every node."""
    reach = {}
    for start in nodes:
        seen = {start}
        queue = deque([start])
        while queue:
            for nxt in edges.get(queue.popleft(), ()):
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        reach[start] = seen
    return reach


def _invert(reach: dict) -> dict:
    below = defaultdict(set)
    for x, ups in reach.items():
        for y in ups:
            below[y].add(x)
    return below


def _groups(reach: dict) -> dict:
    return {x: frozenset(y for y in ups if x in reach[y]) for x, ups in reach.items()}


class _Hierarchy:
    """Reachability, equivalence groups and strict views of one entity kind."""

    def __init__(self, nodes, edges):
        self.nodes = sorted(nodes)
        self.reach = _closure(self.nodes, edges)
        self.below = _invert(self.reach)
        self.group = _groups(self.reach)

    def strict_up(self, x):
        return self.reach[x] - self.group[x]

    def strict_down(self, x):
        return self.below[x] - self.group[x]

    def partition(self) -> frozenset:
        return frozenset(set(self.group.values()))


class _Run:
    def __init__(self, store: OntologyStore):
        self.store = store
        self.una = store.unique_names
        decl = store.declarations
        self.classes = {e for e in decl if e.kind is _C}
        self.individuals = {e for e in decl if e.kind is _I}
        self.oprops = {e for e in decl if e.kind is _OP}
        self.dprops = {e for e in decl if e.kind is _DP}
        self.by_expr = defaultdict(list)
        for ax in store.axioms:
            self.by_expr[(ax.subject.kind, ax.expression)].append(ax)
        self.entailed: set[Axiom] = set()

    def axioms(self, kind, expr):
        return self.by_expr.get((kind, expr), ())

    # -- TBox ---------------------------------------------------------------
    def classify_classes(self):
        edges = defaultdict(set)
        for c in self.classes:
            edges[c].add(THING)
            edges[NOTHING].add(c)
        for ax in self.axioms(_C, E.SUPER):
            edges[ax.subject].add(ax.obj)
        for ax in self.axioms(_C, E.SUB):
            edges[ax.obj].add(ax.subject)
        for ax in self.axioms(_C, E.EQUIVALENT):
            edges[ax.subject].add(ax.obj)
            edges[ax.obj].add(ax.subject)
        self.definitions = defaultdict(set)
        for ax in self.axioms(_C, E.EQUIVALENT_RESTRICTION):
            self.definitions[ax.subject].add(ax.obj)
            if isinstance(ax.obj, BareClass):
                edges[ax.subject].add(ax.obj.cls)
        told_disjoint = {(ax.subject, ax.obj) for ax in self.axioms(_C, E.DISJOINT)}

        while True:
            h = _Hierarchy(self.classes, edges)
            fresh = set()
            for a, b in told_disjoint:
                for x in h.below[a] & h.below[b]:
                    if NOTHING not in h.reach[x]:
                        fresh.add(x)
            if not fresh:
                break
            for x in fresh:
                edges[x].add(NOTHING)
        self.ch = h
        nothing_group = h.group[NOTHING]
        self.unsatisfiable = frozenset(nothing_group - {NOTHING})

        disjoint = set()
        for a, b in told_disjoint:
            for x in h.below[a] - nothing_group:
                for y in h.below[b] - nothing_group:
                    disjoint.add((x, y))
                    disjoint.add((y, x))
        self.class_disjoint = disjoint

        out = self.entailed
        for c in self.classes:
            for d in h.strict_up(c):
                out.add(Axiom(E.SUPER, c, d))
            for d in h.strict_down(c):
                out.add(Axiom(E.SUB, c, d))
            for d in h.group[c]:
                if d != c:
                    out.add(Axiom(E.EQUIVALENT, c, d))
            for r in self.definitions.get(c, ()):
                out.add(Axiom(E.EQUIVALENT_RESTRICTION, c, r))
        for x, y in disjoint:
            out.add(Axiom(E.DISJOINT, x, y))

    # -- RBox -----------------------------------------------------------------
    def _property_hierarchy(self, kind, nodes):
        edges = defaultdict(set)
        for ax in self.axioms(kind, E.SUPER):
            edges[ax.subject].add(ax.obj)
        for ax in self.axioms(kind, E.SUB):
            edges[ax.obj].add(ax.subject)
        for ax in self.axioms(kind, E.EQUIVALENT):
            edges[ax.subject].add(ax.obj)
            edges[ax.obj].add(ax.subject)
        h = _Hierarchy(nodes, edges)
        out = self.entailed
        for p in nodes:
            for q in h.strict_up(p):
                out.add(Axiom(E.SUPER, p, q))
            for q in h.strict_down(p):
                out.add(Axiom(E.SUB, p, q))
            for q in h.group[p]:
                if q != p:
                    out.add(Axiom(E.EQUIVALENT, p, q))
        for ax in self.axioms(kind, E.DISJOINT):
            for x in h.below[ax.subject]:
                for y in h.below[ax.obj]:
                    out.add(Axiom(E.DISJOINT, x, y))
                    out.add(Axiom(E.DISJOINT, y, x))
        # domains and ranges are inherited from super-properties
        domains, ranges = defaultdict(set), defaultdict(set)
        for expr, table in ((E.DOMAIN, domains), (E.RANGE, ranges)):
            for ax in self.axioms(kind, expr):
                for p in h.below[ax.subject]:
                    table[p].add(ax.obj)
                    out.add(Axiom(expr, p, ax.obj))
        return h, domains, ranges

    def classify_properties(self):
        self.oh, self.o_domains, self.o_ranges = self._property_hierarchy(_OP, self.oprops)
        self.dh, self.d_domains, _ = self._property_hierarchy(_DP, self.dprops)
        self.inverse_of = defaultdict(set)
        for ax in self.axioms(_OP, E.INVERSE):
            self.inverse_of[ax.subject].add(ax.obj)
            self.inverse_of[ax.obj].add(ax.subject)
            for p in self.oh.group[ax.subject]:
                for q in self.oh.group[ax.obj]:
                    self.entailed.add(Axiom(E.INVERSE, p, q))
                    self.entailed.add(Axiom(E.INVERSE, q, p))
        self.transitive = {p for p in self.oprops if self.store.has_characteristic(p, Characteristic.TRANSITIVE)}
        self.symmetric = {p for p in self.oprops if self.store.has_characteristic(p, Characteristic.SYMMETRIC)}

    # -- ABox ----------------------------------------------------------------
    def identity(self):
        parent = {i: i for i in self.individuals}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for ax in self.axioms(_I, E.EQUIVALENT):
            ra, rb = find(ax.subject), find(ax.obj)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        members = defaultdict(set)
        for i in self.individuals:
            members[find(i)].add(i)
        self.rep = {i: find(i) for i in self.individuals}
        self.members = {r: frozenset(ms) for r, ms in members.items()}
        self.different = set()
        for ax in self.axioms(_I, E.DISJOINT):
            self.different.add((ax.subject, ax.obj))
        self.different_reps = {(self.rep[a], self.rep[b]) for a, b in self.different}

    def close_links(self):
        rep = self.rep
        links = set()
        by_subject = defaultdict(set)  # (P, a) -> {b}
        by_object = defaultdict(set)   # (P, b) -> {a}
        queue = deque((ax.obj.prop, rep[ax.subject], rep[ax.obj.value]) for ax in self.axioms(_I, E.OBJECT_LINK))
        oh = self.oh
        while queue:
            link = queue.popleft()
            if link in links:
                continue
            links.add(link)
            p, a, b = link
            by_subject[(p, a)].add(b)
            by_object[(p, b)].add(a)
            for q in oh.reach[p]:
                if q != p:
                    queue.append((q, a, b))
            for q in self.inverse_of.get(p, ()):
                queue.append((q, b, a))
            if p in self.symmetric:
                queue.append((p, b, a))
            if p in self.transitive:
                for c in list(by_subject.get((p, b), ())):
                    queue.append((p, a, c))
                for z in list(by_object.get((p, a), ())):
                    queue.append((p, z, b))
        self.links = links
        self.fillers = by_subject

        dlinks = set()
        for ax in self.axioms(_I, E.DATA_LINK):
            for q in self.dh.reach[ax.obj.prop]:
                dlinks.add((q, rep[ax.subject], ax.obj.value))
        self.dlinks = dlinks
        self.dfillers = defaultdict(set)
        for p, a, lit in dlinks:
            self.dfillers[(p, a)].add(lit)

    def _max_distinct(self, reps) -> int:
        reps = sorted(reps)
        if self.una or len(reps) < 2:
            return len(reps)
        graph = nx.Graph()
        graph.add_nodes_from(reps)
        graph.add_edges_from((a, b) for a, b in self.different_reps if a != b and a in graph and b in graph)
        _, size = nx.max_weight_clique(graph, weight=None)
        return size

    def _satisfies(self, r, ind, types) -> bool:
        if isinstance(r, BareClass):
            return r.cls in types[ind]
        kind = r.cardinality.kind
        if kind not in (CardinalityKind.SOME, CardinalityKind.MIN):
            return False
        need = 1 if kind is CardinalityKind.SOME else r.cardinality.n
        if isinstance(r, ObjectRestriction):
            good = {b for b in self.fillers.get((r.prop, ind), ()) if r.filler in types[b]}
            if len(good) < need:
                return False
            return need == 1 or self._max_distinct(good) >= need
        if isinstance(r, DataRestriction):
            good = {lit for lit in self.dfillers.get((r.prop, ind), ()) if lit.datatype == r.filler}
            return len(good) >= need
        return False

    def close_types(self):
        reach = self.ch.reach
        types = {r: set() for r in self.members}

        def add(ind, cls):
            new = reach[cls] - types[ind]
            if new:
                types[ind] |= new
                return True
            return False

        for r in self.members:
            add(r, THING)
        for ax in self.axioms(_I, E.TYPE):
            add(self.rep[ax.subject], ax.obj)
        for ax in self.axioms(_C, E.INSTANCE):
            add(self.rep[ax.obj], ax.subject)
        for p, a, b in self.links:
            for r in self.o_domains.get(p, ()):
                if isinstance(r, BareClass):
                    add(a, r.cls)
            for r in self.o_ranges.get(p, ()):
                if isinstance(r, BareClass):
                    add(b, r.cls)
        for p, a, _ in self.dlinks:
            for r in self.d_domains.get(p, ()):
                if isinstance(r, BareClass):
                    add(a, r.cls)

        defined = sorted(self.definitions.items())
        changed = True
        while changed:
            changed = False
            for cls, conj in defined:
                for ind in self.members:
                    if cls in types[ind]:
                        continue
                    if all(self._satisfies(r, ind, types) for r in conj):
                        changed |= add(ind, cls)
        self.types = types

    def emit_abox(self):
        out = self.entailed
        rep, members = self.rep, self.members
        for i in self.individuals:
            for c in self.types[rep[i]]:
                out.add(Axiom(E.TYPE, i, c))
                out.add(Axiom(E.INSTANCE, c, i))
            for j in members[rep[i]]:
                if j != i:
                    out.add(Axiom(E.EQUIVALENT, i, j))
        for p, a, b in self.links:
            for x in members[a]:
                for y in members[b]:
                    out.add(Axiom(E.OBJECT_LINK, x, ObjectPair(p, y)))
        for p, a, lit in self.dlinks:
            for x in members[a]:
                out.add(Axiom(E.DATA_LINK, x, DataPair(p, lit)))
        for a, b in self.different:
            for x in members[rep[a]]:
                for y in members[rep[b]]:
                    if x != y:
                        out.add(Axiom(E.DISJOINT, x, y))
                        out.add(Axiom(E.DISJOINT, y, x))

    # -- consistency -----------------------------------------------------------
    def check(self) -> ConsistencyReport:
        found = set()
        rep = self.rep
        disjoint = self.class_disjoint
        for i in self.individuals:
            ts = sorted(self.types[rep[i]])
            for n, a in enumerate(ts):
                for b in ts[n + 1:]:
                    if (a, b) in disjoint:
                        found.add(Violation("V1", (i, a, b), f"{i} is an instance of disjoint classes {a} and {b}"))
        for a, b in self.different:
            if a < b and rep[a] == rep[b]:
                found.add(Violation("V2", (a, b), f"{a} and {b} are both same and different"))
        for i in self.individuals:
            r_i = rep[i]
            for cls in self.types[r_i]:
                for r in self.definitions.get(cls, ()):
                    v = self._check_restriction(i, r_i, cls, r)
                    if v:
                        found.update(v)
            if NOTHING in self.types[r_i]:
                found.add(Violation("V5", (i,), f"{i} is an instance of an unsatisfiable class"))
        return ConsistencyReport(tuple(sorted(found, key=_violation_key)), self.unsatisfiable)

    def _check_restriction(self, i, r_i, cls, r):
        if not isinstance(r, (ObjectRestriction, DataRestriction)):
            return ()
        kind = r.cardinality.kind
        if kind in (CardinalityKind.MAX, CardinalityKind.EXACT):
            n = r.cardinality.n
            if isinstance(r, ObjectRestriction):
                good = {b for b in self.fillers.get((r.prop, r_i), ()) if r.filler in self.types[b]}
                over = len(good) > n and self._max_distinct(good) > n
            else:
                good = {lit for lit in self.dfillers.get((r.prop, r_i), ()) if lit.datatype == r.filler}
                over = len(good) > n
            if over:
                return (Violation("V3", (i, cls), f"more than {n} distinct {r.prop} fillers of {r.filler} ({r})"),)
        elif kind is CardinalityKind.ONLY and isinstance(r, ObjectRestriction):
            out = []
            for b in self.fillers.get((r.prop, r_i), ()):
                if any((t, r.filler) in self.class_disjoint for t in self.types[b]):
                    for y in self.members[b]:
                        out.append(Violation("V4", (i, cls, y), f"{y} is disjoint with {r.filler} ({r})"))
            return out
        return ()


def _violation_key(v: Violation):
    return (v.rule, tuple(e.iri for e in v.entities), v.detail)


def compute_closure(store: OntologyStore, sequence: int = 0) -> InferenceSnapshot:
    """Compute the inferred closure of ``store`` without publishing it."""
    run = _Run(store)
    run.classify_classes()
    run.classify_properties()
    run.identity()
    run.close_links()
    run.close_types()
    run.emit_abox()
    report = run.check()
    return InferenceSnapshot(
        entailed=frozenset(run.entailed),
        class_groups=run.ch.partition(),
        object_property_groups=run.oh.partition(),
        data_property_groups=run.dh.partition(),
        individual_groups=frozenset(run.members.values()),
        consistency=report,
        sequence=sequence,
    )


def synchronise_reasoner(store: OntologyStore) -> InferenceSnapshot:
    """Run the reasoner, publish the snapshot on the store and clear staleness."""
    store.sync_count += 1
    snapshot = compute_closure(store, store.sync_count)
    store.publish(snapshot)
    if not snapshot.consistent:
        log.info("store %s is inconsistent: %d violation(s)", store.name, len(snapshot.consistency.violations))
    return snapshot


def _snapshot_of(store: OntologyStore) -> InferenceSnapshot:
    if store.snapshot is None:
        raise ReasonerError(f"store {store.name!r} has not been synchronised with the reasoner")
    return store.snapshot


def entailed_entity_set(store: OntologyStore, subject: EntityRef, expression: Expression) -> frozenset:
    """Entity set of ``subject`` for ``expression`` in the last published snapshot."""
    snapshot = _snapshot_of(store)
    if not is_legal(subject.kind, expression):
        raise ReasonerError(f"{expression} is not defined for a {subject.kind} ground")
    return snapshot.entity_set(subject, expression)


def is_entailed(store: OntologyStore, axiom: Axiom) -> bool:
    return axiom in _snapshot_of(store)
