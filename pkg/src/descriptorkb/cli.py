"""Command line front end.

Exit codes: 0 ok, 1 inconsistency / differences found, 2 usage or parse error.
"""

from __future__ import annotations

import sys
from typing import Optional

import click

from .entities import NOTHING, THING, EntityKind, Expression, is_legal, qualify, sort_elements
from .reasoner import ReasonerError, entailed_entity_set, synchronise_reasoner
from .scenarios import SCENARIOS, ScenarioError
from .store import OntologyStore
from .syntax import ParseError, canonical, dump, parse, render_axiom

E = Expression
K = EntityKind


class Failure(click.ClickException):
    """Usage or input error; always exit code 2."""

    exit_code = 2


def _load(path: str, unique_names: bool = True):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise Failure(f"{path}: {exc.strerror}") from None
    try:
        doc = parse(data)
        return doc, doc.to_store(unique_names=unique_names)
    except ParseError as exc:
        raise Failure(f"{path}: {exc}") from None


def _emit(porcelain: bool, key: str, value, text: Optional[str] = None) -> None:
    click.echo(f"{key}={value}" if porcelain else (text if text is not None else f"{key}: {value}"))


@click.group()
@click.version_option(package_name="descriptorkb")
def main():
    """Validate, classify, query and diff ontology files; replay the descriptor demos."""


@main.command()
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--porcelain", is_flag=True, help="key=value output.")
def validate(file, porcelain):
    """Parse FILE and report how many statements it holds."""
    doc, store = _load(file)
    n = len(doc.statements)
    if porcelain:
        click.echo("status=ok")
        click.echo(f"statements={n}")
        click.echo(f"axioms={len(store)}")
    else:
        click.echo(f"ok: {n} statements, {len(store)} stored axioms")


def _tree_children(store: OntologyStore, reason: bool) -> dict:
    """Direct subclasses of every class, skipping the Nothing group."""
    classes = store.entities(K.CLASS)
    if reason:
        snap = store.snapshot
        nothing = next(g for g in snap.class_groups if NOTHING in g)
        rep = {c: min(g) for g in snap.class_groups for c in g}
        subs = {c: {d for d in snap.entity_set(c, E.SUB) if d not in nothing} for c in classes}
        children = {}
        for g in snap.class_groups:
            if NOTHING in g:
                continue
            r = min(g)
            below = subs[r]
            direct = {d for d in below if not any(d in subs[e] for e in below)}
            children[r] = sorted({rep[d] for d in direct})
        labels = {min(g): " = ".join(str(c) for c in sorted(g, key=lambda c: (c != THING, c))) for g in snap.class_groups}
        return {"children": children, "labels": labels, "root": rep[THING]}
    children = {c: sorted(d for d in store.enumerate(c, E.SUB) if d != NOTHING) for c in classes}
    has_parent = {d for c in classes for d in children[c] if c != THING}
    children[THING] = sorted(set(children[THING]) | {c for c in classes if c not in has_parent and c not in (THING, NOTHING)})
    return {"children": children, "labels": {c: str(c) for c in classes}, "root": THING}


def _tree_lines(tree: dict) -> list[tuple[int, object]]:
    out = []

    def walk(node, depth, path):
        out.append((depth, node))
        for child in tree["children"].get(node, ()):
            if child not in path:
                walk(child, depth + 1, path | {child})

    walk(tree["root"], 0, {tree["root"]})
    return out


@main.command()
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--no-reason", is_flag=True, help="Show asserted hierarchy only; skip reasoning.")
@click.option("--no-una", is_flag=True, help="Drop the unique-name assumption.")
@click.option("--porcelain", is_flag=True, help="key=value output.")
def classify(file, no_reason, no_una, porcelain):
    """Check consistency and print the class hierarchy under owl:Thing."""
    _, store = _load(file, unique_names=not no_una)
    consistent = True
    if no_reason:
        _emit(porcelain, "consistent", "unknown", "consistent: unknown (reasoning disabled)")
    else:
        snap = synchronise_reasoner(store)
        consistent = snap.consistent
        report = snap.consistency
        _emit(porcelain, "consistent", "true" if consistent else "false", f"consistent: {'yes' if consistent else 'no'}")
        unsat = ",".join(str(c) for c in sorted(report.unsatisfiable))
        _emit(porcelain, "unsatisfiable", unsat, f"unsatisfiable: {unsat or 'none'}")
        for v in report.violations:
            _emit(porcelain, "violation", f"{v.rule} {' '.join(map(str, v.entities))}|{v.detail}", f"violation {v}")
    tree = _tree_children(store, not no_reason)
    if porcelain:
        for parent, kids in sorted(tree["children"].items()):
            for kid in kids:
                click.echo(f"edge={parent} {kid}")
    else:
        click.echo("hierarchy:")
        for depth, node in _tree_lines(tree):
            click.echo("  " * (depth + 1) + tree["labels"][node])
    sys.exit(0 if consistent else 1)


def _resolve_ground(store: OntologyStore, ground: str, expr: Expression, kind: Optional[str]):
    iri = ground if ":" in ground or ground.startswith("<") else qualify(ground)
    candidates = [r for r in store.lookup(iri) if r.kind is not K.DATATYPE]
    if kind:
        candidates = [r for r in candidates if r.kind.value == kind]
    if not candidates:
        raise Failure(f"unknown ground {iri}")
    legal = [r for r in candidates if is_legal(r.kind, expr)]
    if not legal:
        kinds = "/".join(r.kind.value for r in candidates)
        raise Failure(f"{expr} is not defined for a {kinds} ground")
    if len(legal) > 1:
        raise Failure(f"{iri} is ambiguous; pass --kind")
    return legal[0]


@main.command()
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--ground", required=True, help="Entity IRI, e.g. :ROOM (bare names get the ':' prefix).")
@click.option("--expr", "expr_name", required=True, help="Expression, e.g. Super, Instance, ObjectLink.")
@click.option("--kind", type=click.Choice([k.value for k in EntityKind if k is not K.DATATYPE]), help="Disambiguate a punned IRI.")
@click.option("--no-reason", is_flag=True, help="Asserted axioms only.")
@click.option("--no-una", is_flag=True, help="Drop the unique-name assumption.")
def query(file, ground, expr_name, kind, no_reason, no_una):
    """Print the entity set of GROUND for EXPR, one element per line."""
    try:
        expr = Expression.parse(expr_name)
    except ValueError as exc:
        raise Failure(str(exc)) from None
    _, store = _load(file, unique_names=not no_una)
    ref = _resolve_ground(store, ground, expr, kind)
    if no_reason:
        elements = store.enumerate(ref, expr)
    else:
        synchronise_reasoner(store)
        try:
            elements = entailed_entity_set(store, ref, expr)
        except ReasonerError as exc:  # pragma: no cover - guarded above
            raise Failure(str(exc)) from None
    for x in sort_elements(elements):
        click.echo(str(x))


@main.command()
@click.argument("scenario", type=click.Choice(sorted(SCENARIOS)))
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--output", type=click.Path(dir_okay=False), help="Write the resulting ontology here.")
def demo(scenario, file, output):
    """Replay a descriptor walkthrough (listing2 or listing3) against FILE."""
    _, store = _load(file)
    try:
        run = SCENARIOS[scenario](store)
    except ScenarioError as exc:
        raise Failure(str(exc)) from None
    for line in run.lines:
        click.echo(line)
    if output:
        dump(store, output)


def diff_lines(a: OntologyStore, b: OntologyStore) -> list[str]:
    """Removed/Added statements taking ``a`` to ``b`` (declarations ignored)."""

    def statements(store):
        out = {render_axiom(canonical(ax)) for ax in store.axioms}
        for prop, flags in store.characteristics.items():
            for flag in flags:
                out.add(f"{flag.value.capitalize()}ObjectProperty({prop})")
        return out

    sa, sb = statements(a), statements(b)
    return [f"Removed {s}" for s in sorted(sa - sb)] + [f"Added {s}" for s in sorted(sb - sa)]


@main.command()
@click.argument("file_a", type=click.Path(dir_okay=False))
@click.argument("file_b", type=click.Path(dir_okay=False))
def diff(file_a, file_b):
    """Print the axioms removed and added going from FILE_A to FILE_B."""
    _, a = _load(file_a)
    _, b = _load(file_b)
    lines = diff_lines(a, b)
    for line in lines:
        click.echo(line)
    sys.exit(1 if lines else 0)


if __name__ == "__main__":  # pragma: no cover
    main()
