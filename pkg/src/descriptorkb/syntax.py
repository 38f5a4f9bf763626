"""Functional-style syntax subset: parse a document into a store and back.

Only asserted content is written.  Serialization is canonical: prefixes
first, then one statement per line sorted by (form, subject, rest).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

from .entities import (
    DATA_FORM_KINDS,
    OBJECT_FORM_KINDS,
    ONLY,
    SUPPORTED_DATATYPES,
    THING,
    TOP_OBJECT_PROPERTY,
    Axiom,
    BareClass,
    Cardinality,
    CardinalityKind,
    ClassCardinality,
    DataPair,
    DataRestriction,
    EntityKind,
    EntityRef,
    Expression,
    Literal,
    ObjectPair,
    ObjectRestriction,
    XSD_STRING,
    mirror,
    validate_axiom,
)
from .store import BUILTINS, Characteristic, OntologyStore, StoreError

E = Expression
K = EntityKind

BUILTIN_PREFIXES = {
    "owl:": "http://www.w3.org/2002/07/owl#",
    "xsd:": "http://www.w3.org/2001/XMLSchema#",
    "rdf:": "http://www.w3.org/1999/02/22-rdf-syntax-ns#",
    "rdfs:": "http://www.w3.org/2000/01/rdf-schema#",
}


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str  # "(", ")", "=", "iri", "name", "int", "string"
    text: str
    line: int
    column: int
    datatype: Optional["Token"] = None


_NAME_RE = re.compile(r"[A-Za-z_:][A-Za-z0-9_\-.:]*")
_INT_RE = re.compile(r"[0-9]+")


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    start = text.rfind("\n", 0, offset) + 1
    return line, offset - start + 1


def _bad_iri(body: str) -> bool:
    return any(c in body for c in ' \t\r\n<"{}|\\^`')


def tokenize(text: str) -> Iterator[Token]:
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            i += 1
            continue
        if ch == "#":
            end = text.find("\n", i)
            i = n if end < 0 else end
            continue
        line, col = _position(text, i)
        if ch in "()=":
            yield Token(ch, ch, line, col)
            i += 1
        elif ch == "<":
            end = text.find(">", i + 1)
            if end < 0:
                raise ParseError("unterminated IRI", line, col)
            if _bad_iri(text[i + 1:end]):
                raise ParseError("invalid character in IRI", line, col)
            yield Token("iri", text[i:end + 1], line, col)
            i = end + 1
        elif ch == '"':
            j, buf = i + 1, []
            while True:
                if j >= n:
                    raise ParseError("unterminated string", line, col)
                c = text[j]
                if c == '"':
                    break
                if c == "\\":
                    if j + 1 >= n or text[j + 1] not in '"\\':
                        raise ParseError("invalid escape in string", *_position(text, j))
                    buf.append(text[j + 1])
                    j += 2
                    continue
                buf.append(c)
                j += 1
            i = j + 1
            dt = None
            if text.startswith("^^", i):
                i += 2
                dline, dcol = _position(text, i)
                if i < n and text[i] == "<":
                    end = text.find(">", i + 1)
                    if end < 0:
                        raise ParseError("unterminated IRI", dline, dcol)
                    if _bad_iri(text[i + 1:end]):
                        raise ParseError("invalid character in IRI", dline, dcol)
                    dt = Token("iri", text[i:end + 1], dline, dcol)
                    i = end + 1
                else:
                    m = _NAME_RE.match(text, i)
                    if not m:
                        raise ParseError("expected a datatype after '^^'", dline, dcol)
                    dt = Token("name", m.group(), dline, dcol)
                    i = m.end()
            elif text.startswith("@", i):
                raise ParseError("language tags are not supported", *_position(text, i))
            yield Token("string", "".join(buf), line, col, dt)
        elif "0" <= ch <= "9":
            m = _INT_RE.match(text, i)
            yield Token("int", m.group(), line, col)
            i = m.end()
        else:
            m = _NAME_RE.match(text, i)
            if not m:
                raise ParseError(f"unexpected character {ch!r}", line, col)
            yield Token("name", m.group(), line, col)
            i = m.end()


# -- document model ----------------------------------------------------------


@dataclass
class Statement:
    form: str
    line: int
    column: int
    items: list = field(default_factory=list)  # EntityRef | Axiom | (prop, Characteristic)


@dataclass
class Document:
    prefixes: dict[str, str]
    ontology_iri: Optional[str]
    statements: list[Statement]

    def to_store(self, name: Optional[str] = None, unique_names: bool = True) -> OntologyStore:
        if not name:
            name = _name_from_iri(self.ontology_iri) or "ontology"
        iri = self.ontology_iri.strip("<>") if self.ontology_iri else None
        store = OntologyStore(name, dict(self.prefixes), iri, unique_names)
        for st in self.statements:
            for item in st.items:
                try:
                    if isinstance(item, EntityRef):
                        store.declare(item)
                    elif isinstance(item, Axiom):
                        store.assert_axiom(item)
                    else:
                        store.set_characteristic(item[0], item[1], True)
                except (StoreError, ValueError) as exc:
                    raise ParseError(str(exc), st.line, st.column) from exc
        return store


def _name_from_iri(iri: Optional[str]) -> Optional[str]:
    if not iri:
        return None
    body = iri.strip("<>").rstrip("/#")
    return re.split(r"[#/]", body)[-1] or None


_DECL_KINDS = {
    "Class": K.CLASS,
    "NamedIndividual": K.INDIVIDUAL,
    "ObjectProperty": K.OBJECT_PROPERTY,
    "DataProperty": K.DATA_PROPERTY,
    "Datatype": K.DATATYPE,
}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = list(tokenize(text))
        self.pos = 0
        self.prefixes: dict[str, str] = {}

    # token helpers
    def peek(self) -> Optional[Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def end_position(self) -> tuple[int, int]:
        return _position(self.text, len(self.text))

    def error(self, message: str, tok: Optional[Token] = None) -> ParseError:
        tok = tok or self.peek()
        if tok is None:
            return ParseError(message + " (at end of input)", *self.end_position())
        return ParseError(message, tok.line, tok.column)

    def next(self, kind: Optional[str] = None, text: Optional[str] = None) -> Token:
        tok = self.peek()
        if tok is None:
            want = text or kind or "token"
            raise self.error(f"expected {want!r}")
        if (kind and tok.kind != kind) or (text and tok.text != text):
            raise self.error(f"expected {text or kind!r}, found {tok.text!r}", tok)
        self.pos += 1
        return tok

    def at(self, kind: str, text: Optional[str] = None) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == kind and (text is None or tok.text == text)

    # document
    def document(self) -> Document:
        while self.at("name", "Prefix"):
            self.prefix()
        ontology_iri = None
        statements: list[Statement] = []
        if self.peek() is not None:
            self.next("name", "Ontology")
            self.next("(")
            if self.at("iri"):
                ontology_iri = self.next().text
                if self.at("iri"):  # version IRI
                    self.next()
            while not self.at(")"):
                if self.peek() is None:
                    raise self.error("missing ')' closing Ontology")
                statements.append(self.statement())
            self.next(")")
            if self.peek() is not None:
                raise self.error("unexpected content after Ontology(...)")
        return Document(dict(self.prefixes), ontology_iri, statements)

    def prefix(self):
        self.next("name", "Prefix")
        self.next("(")
        tok = self.next("name")
        if not tok.text.endswith(":") or tok.text.count(":") != 1:
            raise self.error("prefix name must end with ':'", tok)
        self.next("=")
        iri = self.next("iri")
        if tok.text in self.prefixes:
            raise self.error(f"duplicate prefix {tok.text!r}", tok)
        self.prefixes[tok.text] = iri.text[1:-1]
        self.next(")")

    def iri(self, tok: Token) -> str:
        if tok.kind == "iri":
            full = tok.text[1:-1]
            for p, base in list(self.prefixes.items()) + list(BUILTIN_PREFIXES.items()):
                if base and full.startswith(base) and len(full) > len(base):
                    local = full[len(base):]
                    if _NAME_RE.fullmatch(p + local):
                        return p + local
            return tok.text
        if tok.kind != "name" or ":" not in tok.text:
            raise self.error(f"expected an IRI, found {tok.text!r}", tok)
        pfx = tok.text[: tok.text.index(":") + 1]
        if pfx not in self.prefixes and pfx not in BUILTIN_PREFIXES:
            raise self.error(f"undeclared prefix {pfx!r}", tok)
        if tok.text == pfx:
            raise self.error("prefixed name has no local part", tok)
        return tok.text

    def ref(self, kind: EntityKind) -> EntityRef:
        tok = self.peek()
        if tok is None or tok.kind not in ("iri", "name"):
            raise self.error(f"expected a {kind} IRI")
        self.pos += 1
        iri = self.iri(tok)
        ref = EntityRef(kind, iri)
        if kind is K.DATATYPE and ref not in SUPPORTED_DATATYPES:
            raise self.error(f"unsupported datatype {iri}", tok)
        if kind is K.OBJECT_PROPERTY and ref == TOP_OBJECT_PROPERTY:
            raise self.error(f"{iri} is only allowed inside a class cardinality", tok)
        return ref

    def literal(self) -> Literal:
        tok = self.next("string")
        dt = XSD_STRING
        if tok.datatype is not None:
            dt = EntityRef(K.DATATYPE, self.iri(tok.datatype))
            if dt not in SUPPORTED_DATATYPES:
                raise self.error(f"unsupported datatype {dt.iri}", tok.datatype)
        try:
            return Literal(tok.text, dt)
        except ValueError as exc:
            raise self.error(str(exc), tok) from None

    def cardinality_number(self) -> int:
        tok = self.next("int")
        n = int(tok.text)
        if n < 1:
            raise self.error("cardinality must be a positive integer", tok)
        return n

    # class expressions
    def is_complex(self) -> bool:
        tok = self.peek()
        nxt = self.tokens[self.pos + 1] if self.pos + 1 < len(self.tokens) else None
        return tok is not None and tok.kind == "name" and nxt is not None and nxt.kind == "("

    def restriction_atom(self):
        """A named class or a single restriction (no nesting)."""
        if not self.is_complex():
            return BareClass(self.ref(K.CLASS))
        head = self.next("name")
        form = head.text
        if form in OBJECT_FORM_KINDS:
            kind = OBJECT_FORM_KINDS[form]
            self.next("(")
            n = self.cardinality_number() if kind not in (CardinalityKind.SOME, CardinalityKind.ONLY) else None
            ptok = self.peek()
            if ptok is not None and ptok.kind in ("name", "iri") and self.iri_or_none(ptok) == TOP_OBJECT_PROPERTY.iri:
                self.pos += 1
                prop = TOP_OBJECT_PROPERTY
            else:
                prop = self.ref(K.OBJECT_PROPERTY)
            if self.at(")"):
                filler = THING
            else:
                if self.is_complex():
                    raise self.error("nested class expressions are not supported")
                filler = self.ref(K.CLASS)
            self.next(")")
            card = Cardinality(kind, n)
            if prop == TOP_OBJECT_PROPERTY:
                return ClassCardinality(card, filler)
            return ObjectRestriction(card, prop, filler)
        if form in DATA_FORM_KINDS:
            kind = DATA_FORM_KINDS[form]
            self.next("(")
            n = self.cardinality_number() if kind not in (CardinalityKind.SOME, CardinalityKind.ONLY) else None
            prop = self.ref(K.DATA_PROPERTY)
            if self.is_complex():
                raise self.error("data ranges other than named datatypes are not supported")
            filler = self.ref(K.DATATYPE)
            self.next(")")
            return DataRestriction(Cardinality(kind, n), prop, filler)
        raise self.error(f"unsupported class expression {form!r}", head)

    def iri_or_none(self, tok: Token) -> Optional[str]:
        try:
            return self.iri(tok)
        except ParseError:
            return None

    def class_expression(self) -> list:
        """Restriction atoms, or a flat ObjectIntersectionOf of them."""
        if self.at("name", "ObjectIntersectionOf") and self.is_complex():
            self.next()
            self.next("(")
            atoms = []
            while not self.at(")"):
                if self.peek() is None:
                    raise self.error("missing ')'")
                if self.at("name", "ObjectIntersectionOf") and self.is_complex():
                    raise self.error("nested intersections are not supported")
                atoms.append(self.restriction_atom())
            self.next(")")
            if not atoms:
                raise self.error("ObjectIntersectionOf needs at least one operand")
            return atoms
        return [self.restriction_atom()]

    # statements
    def statement(self) -> Statement:
        head = self.next("name")
        handler = _HANDLERS.get(head.text)
        if handler is None:
            raise self.error(f"unknown statement form {head.text!r}", head)
        st = Statement(head.text, head.line, head.column)
        self.next("(")
        handler(self, st)
        self.next(")")
        for item in st.items:
            if isinstance(item, Axiom):
                result = validate_axiom(item)
                if not result:
                    raise ParseError(result.reason, head.line, head.column)
        return st

    def refs(self, kind: EntityKind, minimum: int = 2) -> list[EntityRef]:
        out = []
        while not self.at(")"):
            if self.peek() is None:
                raise self.error("missing ')'")
            out.append(self.ref(kind))
        if len(out) < minimum:
            raise self.error(f"expected at least {minimum} arguments")
        return out


def _pairwise(st: Statement, expr: Expression, refs: list[EntityRef]):
    for n, a in enumerate(refs):
        for b in refs[n + 1:]:
            st.items.append(Axiom(expr, a, b))


def _h_declaration(p: _Parser, st: Statement):
    tok = p.next("name")
    kind = _DECL_KINDS.get(tok.text)
    if kind is None:
        raise p.error(f"unknown entity type {tok.text!r}", tok)
    p.next("(")
    st.items.append(p.ref(kind))
    p.next(")")


def _h_subclass(p, st):
    a = p.ref(K.CLASS)
    if p.is_complex():
        raise p.error("SubClassOf supports named classes only")
    b = p.ref(K.CLASS)
    st.items.append(Axiom(E.SUPER, a, b))


def _h_equivalent_classes(p, st):
    first = p.ref(K.CLASS)
    if p.is_complex():
        for atom in p.class_expression():
            st.items.append(Axiom(E.EQUIVALENT_RESTRICTION, first, atom))
        if not p.at(")"):
            raise p.error("EquivalentClasses with a class expression takes exactly two arguments")
        return
    rest = p.refs(K.CLASS, minimum=1)
    _pairwise(st, E.EQUIVALENT, [first] + rest)


def _h_disjoint_classes(p, st):
    _pairwise(st, E.DISJOINT, p.refs(K.CLASS))


def _h_class_assertion(p, st):
    if p.is_complex():
        raise p.error("ClassAssertion supports named classes only")
    c = p.ref(K.CLASS)
    a = p.ref(K.INDIVIDUAL)
    st.items.append(Axiom(E.TYPE, a, c))


def _h_object_assertion(p, st):
    prop = p.ref(K.OBJECT_PROPERTY)
    a = p.ref(K.INDIVIDUAL)
    b = p.ref(K.INDIVIDUAL)
    st.items.append(Axiom(E.OBJECT_LINK, a, ObjectPair(prop, b)))


def _h_data_assertion(p, st):
    prop = p.ref(K.DATA_PROPERTY)
    a = p.ref(K.INDIVIDUAL)
    st.items.append(Axiom(E.DATA_LINK, a, DataPair(prop, p.literal())))


def _sub_property(kind):
    def handler(p, st):
        a = p.ref(kind)
        b = p.ref(kind)
        st.items.append(Axiom(E.SUPER, a, b))

    return handler


def _nary(kind, expr):
    def handler(p, st):
        refs = p.refs(kind)
        if expr is E.DISJOINT and kind is K.INDIVIDUAL and len(set(refs)) != len(refs):
            raise p.error("DifferentIndividuals repeats an individual")
        _pairwise(st, expr, refs)

    return handler


def _h_inverse(p, st):
    a = p.ref(K.OBJECT_PROPERTY)
    b = p.ref(K.OBJECT_PROPERTY)
    st.items.append(Axiom(E.INVERSE, a, b))


def _domain_range(kind, expr):
    def handler(p, st):
        prop = p.ref(kind)
        tok = p.peek()
        if (
            kind is K.DATA_PROPERTY
            and expr is E.RANGE
            and tok is not None
            and tok.kind in ("name", "iri")
            and not p.is_complex()
            and EntityRef(K.DATATYPE, p.iri(tok)) in SUPPORTED_DATATYPES
        ):
            st.items.append(Axiom(expr, prop, DataRestriction(ONLY, prop, p.ref(K.DATATYPE))))
            return
        for atom in p.class_expression():
            st.items.append(Axiom(expr, prop, atom))

    return handler


def _characteristic(flag):
    def handler(p, st):
        st.items.append((p.ref(K.OBJECT_PROPERTY), flag))

    return handler


_HANDLERS = {
    "Declaration": _h_declaration,
    "SubClassOf": _h_subclass,
    "EquivalentClasses": _h_equivalent_classes,
    "DisjointClasses": _h_disjoint_classes,
    "ClassAssertion": _h_class_assertion,
    "ObjectPropertyAssertion": _h_object_assertion,
    "DataPropertyAssertion": _h_data_assertion,
    "SubObjectPropertyOf": _sub_property(K.OBJECT_PROPERTY),
    "SubDataPropertyOf": _sub_property(K.DATA_PROPERTY),
    "EquivalentObjectProperties": _nary(K.OBJECT_PROPERTY, E.EQUIVALENT),
    "EquivalentDataProperties": _nary(K.DATA_PROPERTY, E.EQUIVALENT),
    "DisjointObjectProperties": _nary(K.OBJECT_PROPERTY, E.DISJOINT),
    "DisjointDataProperties": _nary(K.DATA_PROPERTY, E.DISJOINT),
    "InverseObjectProperties": _h_inverse,
    "ObjectPropertyDomain": _domain_range(K.OBJECT_PROPERTY, E.DOMAIN),
    "ObjectPropertyRange": _domain_range(K.OBJECT_PROPERTY, E.RANGE),
    "DataPropertyDomain": _domain_range(K.DATA_PROPERTY, E.DOMAIN),
    "DataPropertyRange": _domain_range(K.DATA_PROPERTY, E.RANGE),
    "TransitiveObjectProperty": _characteristic(Characteristic.TRANSITIVE),
    "SymmetricObjectProperty": _characteristic(Characteristic.SYMMETRIC),
    "SameIndividual": _nary(K.INDIVIDUAL, E.EQUIVALENT),
    "DifferentIndividuals": _nary(K.INDIVIDUAL, E.DISJOINT),
}

STATEMENT_FORMS = frozenset(_HANDLERS)


def _decode(data: Union[str, bytes]) -> str:
    if isinstance(data, str):
        return data
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        good = data[: exc.start].decode("utf-8")
        raise ParseError("invalid UTF-8", *_position(good, len(good))) from None


def parse(text: Union[str, bytes]) -> Document:
    """Parse text into a :class:`Document`; every failure is a :class:`ParseError`."""
    return _Parser(_decode(text)).document()


def parse_document(text: Union[str, bytes], name: Optional[str] = None, unique_names: bool = True) -> OntologyStore:
    return parse(text).to_store(name, unique_names)


def load(path, name: Optional[str] = None, unique_names: bool = True) -> OntologyStore:
    with open(path, "rb") as fh:
        return parse_document(fh.read(), name, unique_names)


# -- serialization ---------------------------------------------------------------

_SYMMETRIC_FORMS = {
    (K.CLASS, E.EQUIVALENT): "EquivalentClasses",
    (K.CLASS, E.DISJOINT): "DisjointClasses",
    (K.INDIVIDUAL, E.EQUIVALENT): "SameIndividual",
    (K.INDIVIDUAL, E.DISJOINT): "DifferentIndividuals",
    (K.OBJECT_PROPERTY, E.EQUIVALENT): "EquivalentObjectProperties",
    (K.OBJECT_PROPERTY, E.DISJOINT): "DisjointObjectProperties",
    (K.OBJECT_PROPERTY, E.INVERSE): "InverseObjectProperties",
    (K.DATA_PROPERTY, E.EQUIVALENT): "EquivalentDataProperties",
    (K.DATA_PROPERTY, E.DISJOINT): "DisjointDataProperties",
}
_SUPER_FORMS = {
    K.CLASS: "SubClassOf",
    K.OBJECT_PROPERTY: "SubObjectPropertyOf",
    K.DATA_PROPERTY: "SubDataPropertyOf",
}
_DOMAIN_RANGE_FORMS = {
    (K.OBJECT_PROPERTY, E.DOMAIN): "ObjectPropertyDomain",
    (K.OBJECT_PROPERTY, E.RANGE): "ObjectPropertyRange",
    (K.DATA_PROPERTY, E.DOMAIN): "DataPropertyDomain",
    (K.DATA_PROPERTY, E.RANGE): "DataPropertyRange",
}


def canonical(axiom: Axiom) -> Axiom:
    """Pick one representative out of an axiom and its mirror."""
    twin = mirror(axiom)
    if twin is None:
        return axiom
    if axiom.expression in (E.SUB, E.INSTANCE):
        return twin
    if axiom.expression in (E.SUPER, E.TYPE):
        return axiom
    return min(axiom, twin, key=lambda a: (a.subject.iri, str(a.obj)))


def _statement_parts(axiom: Axiom) -> tuple[str, str, str]:
    """(form, subject text, remaining arguments) of a canonical axiom."""
    ax = canonical(axiom)
    kind, expr, s, o = ax.subject.kind, ax.expression, ax.subject, ax.obj
    if (kind, expr) in _SYMMETRIC_FORMS:
        return _SYMMETRIC_FORMS[(kind, expr)], s.iri, str(o)
    if expr is E.SUPER:
        return _SUPER_FORMS[kind], s.iri, str(o)
    if expr is E.TYPE:
        return "ClassAssertion", o.iri, s.iri
    if expr is E.OBJECT_LINK:
        return "ObjectPropertyAssertion", o.prop.iri, f"{s} {o.value}"
    if expr is E.DATA_LINK:
        return "DataPropertyAssertion", o.prop.iri, f"{s} {o.value}"
    if expr is E.EQUIVALENT_RESTRICTION:
        return "EquivalentClasses", s.iri, f"ObjectIntersectionOf({o})"
    if (kind, expr) in _DOMAIN_RANGE_FORMS:
        if (
            kind is K.DATA_PROPERTY
            and expr is E.RANGE
            and isinstance(o, DataRestriction)
            and o.cardinality == ONLY
            and o.prop == s
        ):
            return _DOMAIN_RANGE_FORMS[(kind, expr)], s.iri, o.filler.iri
        return _DOMAIN_RANGE_FORMS[(kind, expr)], s.iri, str(o)
    raise ValueError(f"cannot render {axiom}")  # pragma: no cover


def _line(form: str, subject: str, rest: str) -> str:
    return f"{form}({subject} {rest})" if rest else f"{form}({subject})"


def render_axiom(axiom: Axiom) -> str:
    """One parseable statement for a single axiom (mirrors render identically)."""
    return _line(*_statement_parts(axiom))


def _ordered(parts):
    return [_line(*p) for p in sorted(set(parts))]


def statement_lines(store: OntologyStore, declarations: bool = True) -> list[str]:
    parts = []
    if declarations:
        for ref in store.declarations:
            if ref in BUILTINS:
                continue
            parts.append(("Declaration", f"{ref.kind.value}({ref.iri})", ""))
    restrictions: dict[EntityRef, list] = {}
    for ax in store.axioms:
        if ax.expression is E.EQUIVALENT_RESTRICTION:
            restrictions.setdefault(ax.subject, []).append(ax.obj)
            continue
        parts.append(_statement_parts(ax))
    for cls, atoms in restrictions.items():
        body = " ".join(sorted(str(a) for a in atoms))
        parts.append(("EquivalentClasses", cls.iri, f"ObjectIntersectionOf({body})"))
    for prop, flags in store.characteristics.items():
        for flag in flags:
            form = "TransitiveObjectProperty" if flag is Characteristic.TRANSITIVE else "SymmetricObjectProperty"
            parts.append((form, prop.iri, ""))
    return _ordered(parts)


def serialize_store(store: OntologyStore) -> str:
    lines = [f"Prefix({p}=<{base}>)" for p, base in sorted(store.prefixes.items())]
    lines.append(f"Ontology(<{store.iri.strip('<>')}>" if store.iri else "Ontology(")
    lines.extend(statement_lines(store))
    lines.append(")")
    return "\n".join(lines) + "\n"


def dump(store: OntologyStore, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_store(store))
