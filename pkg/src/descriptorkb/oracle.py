"""Naive fixpoint oracle.

Blindly applies every rule to the whole fact set until nothing new appears,
then reads the entailed axioms off the final facts.  It is deliberately slow
and shares no rule code with :mod:`descriptorkb.reasoner`; tests compare the
two.  Keep stores small (roughly 15 classes, 20 individuals).
"""

from __future__ import annotations

from itertools import combinations

from .entities import (
    NOTHING,
    THING,
    Axiom,
    BareClass,
    CardinalityKind,
    DataPair,
    DataRestriction,
    EntityKind,
    Expression,
    ObjectPair,
    ObjectRestriction,
)
from .snapshot import ConsistencyReport, InferenceSnapshot, Violation
from .store import Characteristic, OntologyStore

E = Expression
K = EntityKind


def _told(store, kind, expr):
    return [(ax.subject, ax.obj) for ax in store.axioms if ax.subject.kind is kind and ax.expression is expr]


def _by_first(pairs):
    out = {}
    for a, b in pairs:
        out.setdefault(a, set()).add(b)
    return out


def _transitive_step(pairs):
    nxt = _by_first(pairs)
    return {(a, c) for a, b in pairs for c in nxt.get(b, ())}


class _Facts:
    def __init__(self, store: OntologyStore):
        self.store = store
        decl = store.declarations
        self.classes = sorted(e for e in decl if e.kind is K.CLASS)
        self.inds = sorted(e for e in decl if e.kind is K.INDIVIDUAL)
        self.oprops = sorted(e for e in decl if e.kind is K.OBJECT_PROPERTY)
        self.dprops = sorted(e for e in decl if e.kind is K.DATA_PROPERTY)

        self.csub = set()
        self.psub = set()
        self.dsub = set()
        self.same = set()
        self.link = set()
        self.dlink = set()
        self.type = set()

        self.told_cdisj = _told(store, K.CLASS, E.DISJOINT)
        self.told_inv = _told(store, K.OBJECT_PROPERTY, E.INVERSE)
        self.told_diff = _told(store, K.INDIVIDUAL, E.DISJOINT)
        self.definitions = {}
        for c, r in _told(store, K.CLASS, E.EQUIVALENT_RESTRICTION):
            self.definitions.setdefault(c, set()).add(r)
        self.transitive = {p for p in self.oprops if store.has_characteristic(p, Characteristic.TRANSITIVE)}
        self.symmetric = {p for p in self.oprops if store.has_characteristic(p, Characteristic.SYMMETRIC)}

    # each rule returns candidate facts as (relation-name, tuple)
    def rules(self):
        s = self.store
        out = []

        # class subsumption
        csub = set()
        for c in self.classes:
            csub |= {(c, c), (c, THING), (NOTHING, c)}
        for a, b in _told(s, K.CLASS, E.SUPER):
            csub.add((a, b))
        for a, b in _told(s, K.CLASS, E.SUB):
            csub.add((b, a))
        for a, b in _told(s, K.CLASS, E.EQUIVALENT):
            csub |= {(a, b), (b, a)}
        for c, r in _told(s, K.CLASS, E.EQUIVALENT_RESTRICTION):
            if isinstance(r, BareClass):
                csub.add((c, r.cls))
        csub |= _transitive_step(self.csub)
        for a, b in self.told_cdisj:
            for x in self.classes:
                if (x, a) in self.csub and (x, b) in self.csub:
                    csub.add((x, NOTHING))
        out.append(("csub", csub))

        # property subsumption
        for name, kind, props, current in (
            ("psub", K.OBJECT_PROPERTY, self.oprops, self.psub),
            ("dsub", K.DATA_PROPERTY, self.dprops, self.dsub),
        ):
            sub = {(p, p) for p in props}
            for a, b in _told(s, kind, E.SUPER):
                sub.add((a, b))
            for a, b in _told(s, kind, E.SUB):
                sub.add((b, a))
            for a, b in _told(s, kind, E.EQUIVALENT):
                sub |= {(a, b), (b, a)}
            sub |= _transitive_step(current)
            out.append((name, sub))

        # individual identity
        same = {(i, i) for i in self.inds}
        for a, b in _told(s, K.INDIVIDUAL, E.EQUIVALENT):
            same |= {(a, b), (b, a)}
        same |= {(b, a) for a, b in self.same}
        same |= _transitive_step(self.same)
        out.append(("same", same))

        # object links
        link = {(pair.prop, a, pair.value) for a, pair in _told(s, K.INDIVIDUAL, E.OBJECT_LINK)}
        sups = _by_first(self.psub)
        sames = _by_first(self.same)
        for p, a, b in self.link:
            for q in sups.get(p, ()):
                link.add((q, a, b))
            for x, y in self.told_inv:
                if x == p:
                    link.add((y, b, a))
                if y == p:
                    link.add((x, b, a))
            if p in self.symmetric:
                link.add((p, b, a))
            for a2 in sames.get(a, ()):
                link.add((p, a2, b))
            for b2 in sames.get(b, ()):
                link.add((p, a, b2))
        for p in self.transitive:
            pairs = {(a, b) for q, a, b in self.link if q == p}
            link |= {(p, a, c) for a, c in _transitive_step(pairs)}
        out.append(("link", link))

        dlink = {(pair.prop, a, pair.value) for a, pair in _told(s, K.INDIVIDUAL, E.DATA_LINK)}
        dsups = _by_first(self.dsub)
        for p, a, lit in self.dlink:
            for q in dsups.get(p, ()):
                dlink.add((q, a, lit))
            for a2 in sames.get(a, ()):
                dlink.add((p, a2, lit))
        out.append(("dlink", dlink))

        # types
        typ = {(i, THING) for i in self.inds}
        for a, c in _told(s, K.INDIVIDUAL, E.TYPE):
            typ.add((a, c))
        for c, a in _told(s, K.CLASS, E.INSTANCE):
            typ.add((a, c))
        ups = _by_first(self.csub)
        for a, c in self.type:
            for d in ups.get(c, ()):
                typ.add((a, d))
            for a2 in sames.get(a, ()):
                typ.add((a2, c))
        for q, r in _told(s, K.OBJECT_PROPERTY, E.DOMAIN):
            if isinstance(r, BareClass):
                for p, a, b in self.link:
                    if (p, q) in self.psub:
                        typ.add((a, r.cls))
        for q, r in _told(s, K.OBJECT_PROPERTY, E.RANGE):
            if isinstance(r, BareClass):
                for p, a, b in self.link:
                    if (p, q) in self.psub:
                        typ.add((b, r.cls))
        for q, r in _told(s, K.DATA_PROPERTY, E.DOMAIN):
            if isinstance(r, BareClass):
                for p, a, _ in self.dlink:
                    if (p, q) in self.dsub:
                        typ.add((a, r.cls))
        for c, conj in self.definitions.items():
            for i in self.inds:
                if all(self.holds(i, r) for r in conj):
                    typ.add((i, c))
        out.append(("type", typ))
        return out

    # -- distinctness, by enumeration --------------------------------------
    def distinct(self, x, y) -> bool:
        if (x, y) in self.same:
            return False
        if self.store.unique_names:
            return True
        for u, v in self.told_diff:
            if ((x, u) in self.same and (y, v) in self.same) or ((x, v) in self.same and (y, u) in self.same):
                return True
        return False

    def has_distinct(self, fillers, n) -> bool:
        """Is there a set of ``n`` pairwise-distinct fillers?"""
        for combo in combinations(sorted(fillers), n):
            if all(self.distinct(x, y) for x, y in combinations(combo, 2)):
                return True
        return False

    def object_fillers(self, i, r):
        return {b for p, a, b in self.link if p == r.prop and a == i and (b, r.filler) in self.type}

    def data_fillers(self, i, r):
        return {lit for p, a, lit in self.dlink if p == r.prop and a == i and lit.datatype == r.filler}

    def holds(self, i, r) -> bool:
        if isinstance(r, BareClass):
            return (i, r.cls) in self.type
        if isinstance(r, ObjectRestriction):
            if r.cardinality.kind is CardinalityKind.SOME:
                return bool(self.object_fillers(i, r))
            if r.cardinality.kind is CardinalityKind.MIN:
                return self.has_distinct(self.object_fillers(i, r), r.cardinality.n)
        if isinstance(r, DataRestriction):
            if r.cardinality.kind is CardinalityKind.SOME:
                return bool(self.data_fillers(i, r))
            if r.cardinality.kind is CardinalityKind.MIN:
                return len(self.data_fillers(i, r)) >= r.cardinality.n
        return False

    def saturate(self):
        while True:
            grew = False
            for name, candidates in self.rules():
                current = getattr(self, name)
                fresh = candidates - current
                if fresh:
                    current |= fresh
                    grew = True
            if not grew:
                return


def naive_fixpoint_oracle(store: OntologyStore) -> InferenceSnapshot:
    f = _Facts(store)
    f.saturate()
    s = store
    out = set()

    def equiv(rel, a, b):
        return (a, b) in rel and (b, a) in rel

    # classes
    unsat_all = {c for c in f.classes if (c, NOTHING) in f.csub}
    for a in f.classes:
        for b in f.classes:
            if (a, b) in f.csub:
                if (b, a) in f.csub:
                    if a != b:
                        out.add(Axiom(E.EQUIVALENT, a, b))
                else:
                    out.add(Axiom(E.SUPER, a, b))
                    out.add(Axiom(E.SUB, b, a))
    cdisj = set()
    for a, b in f.told_cdisj:
        for x in f.classes:
            for y in f.classes:
                if (x, a) in f.csub and (y, b) in f.csub and x not in unsat_all and y not in unsat_all:
                    cdisj |= {(x, y), (y, x)}
    for x, y in cdisj:
        out.add(Axiom(E.DISJOINT, x, y))
    for c, conj in f.definitions.items():
        for r in conj:
            out.add(Axiom(E.EQUIVALENT_RESTRICTION, c, r))

    # properties
    for kind, props, rel in ((K.OBJECT_PROPERTY, f.oprops, f.psub), (K.DATA_PROPERTY, f.dprops, f.dsub)):
        for a in props:
            for b in props:
                if (a, b) in rel:
                    if (b, a) in rel:
                        if a != b:
                            out.add(Axiom(E.EQUIVALENT, a, b))
                    else:
                        out.add(Axiom(E.SUPER, a, b))
                        out.add(Axiom(E.SUB, b, a))
        for a, b in _told(s, kind, E.DISJOINT):
            for x in props:
                for y in props:
                    if (x, a) in rel and (y, b) in rel:
                        out.add(Axiom(E.DISJOINT, x, y))
                        out.add(Axiom(E.DISJOINT, y, x))
        for expr in (E.DOMAIN, E.RANGE):
            for q, r in _told(s, kind, expr):
                for p in props:
                    if (p, q) in rel:
                        out.add(Axiom(expr, p, r))
    for p, q in f.told_inv:
        for x in f.oprops:
            for y in f.oprops:
                if equiv(f.psub, x, p) and equiv(f.psub, y, q):
                    out.add(Axiom(E.INVERSE, x, y))
                    out.add(Axiom(E.INVERSE, y, x))

    # individuals
    for a, c in f.type:
        out.add(Axiom(E.TYPE, a, c))
        out.add(Axiom(E.INSTANCE, c, a))
    for a, b in f.same:
        if a != b:
            out.add(Axiom(E.EQUIVALENT, a, b))
    for p, a, b in f.link:
        out.add(Axiom(E.OBJECT_LINK, a, ObjectPair(p, b)))
    for p, a, lit in f.dlink:
        out.add(Axiom(E.DATA_LINK, a, DataPair(p, lit)))
    for u, v in f.told_diff:
        for x in f.inds:
            for y in f.inds:
                if x != y and (x, u) in f.same and (y, v) in f.same:
                    out.add(Axiom(E.DISJOINT, x, y))
                    out.add(Axiom(E.DISJOINT, y, x))

    # consistency
    found = set()
    types_of = _by_first(f.type)
    for i in f.inds:
        ts = types_of.get(i, set())
        for a in ts:
            for b in ts:
                if a < b and (a, b) in cdisj:
                    found.add(Violation("V1", (i, a, b), f"{i} is an instance of disjoint classes {a} and {b}"))
        if NOTHING in ts:
            found.add(Violation("V5", (i,), f"{i} is an instance of an unsatisfiable class"))
        for c in ts:
            for r in f.definitions.get(c, ()):
                if not isinstance(r, (ObjectRestriction, DataRestriction)):
                    continue
                kind = r.cardinality.kind
                if kind in (CardinalityKind.MAX, CardinalityKind.EXACT):
                    n = r.cardinality.n
                    if isinstance(r, ObjectRestriction):
                        over = f.has_distinct(f.object_fillers(i, r), n + 1)
                    else:
                        over = len(f.data_fillers(i, r)) > n
                    if over:
                        found.add(Violation("V3", (i, c), f"more than {n} distinct {r.prop} fillers of {r.filler} ({r})"))
                elif kind is CardinalityKind.ONLY and isinstance(r, ObjectRestriction):
                    for p, a, b in f.link:
                        if p == r.prop and a == i:
                            if any((t, r.filler) in cdisj for t in types_of.get(b, ())):
                                found.add(Violation("V4", (i, c, b), f"{b} is disjoint with {r.filler} ({r})"))
    for a, b in f.told_diff:
        if a < b and (a, b) in f.same:
            found.add(Violation("V2", (a, b), f"{a} and {b} are both same and different"))
    violations = tuple(sorted(found, key=lambda v: (v.rule, tuple(e.iri for e in v.entities), v.detail)))

    def partition(items, rel):
        return frozenset(frozenset(y for y in items if equiv(rel, x, y)) for x in items)

    return InferenceSnapshot(
        entailed=frozenset(out),
        class_groups=partition(f.classes, f.csub),
        object_property_groups=partition(f.oprops, f.psub),
        data_property_groups=partition(f.dprops, f.dsub),
        individual_groups=partition(f.inds, f.same),
        consistency=ConsistencyReport(violations, frozenset(unsat_all - {NOTHING})),
    )
