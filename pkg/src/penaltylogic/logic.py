"""Propositional language: AST, parser, printer and semantics.

Grammar (precedence from low to high)::

    formula ::= iff
    iff     ::= imp ( '<->' imp )*        (left-assoc)
    imp     ::= or ( '->' or )*           (right-assoc)
    or      ::= and ( '|' and )*          (left-assoc)
    and     ::= unary ( '&' unary )*      (left-assoc)
    unary   ::= '!' unary | atom | 'T' | 'F' | '(' formula ')'

``T`` and ``F`` are reserved for the tautology and the contradiction.

Semantic checks (entailment, consistency, equivalence) work on truth tables
packed into Python integers: bit ``i`` of the table is set when the ``i``-th
interpretation of the vocabulary satisfies the formula.  Interpretations are
numbered by binary counting with the first atom of the vocabulary as the most
significant bit, so index 0 is the all-false assignment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

from penaltylogic.errors import CapExceededError, FormulaSyntaxError, VocabularyError

#: Largest vocabulary enumerated exhaustively.
MAX_VARIABLES = 24

_ATOM_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
RESERVED = frozenset({"T", "F"})


class Formula:
    """Base class of the formula AST.  Nodes are immutable and hashable."""

    __slots__ = ()

    def atoms(self) -> frozenset[str]:
        return vocabulary(self)

    def __str__(self) -> str:
        return to_text(self)

    # Operator sugar for building formulas in code and tests.
    def __and__(self, other: Formula) -> Formula:
        return And(self, other)

    def __or__(self, other: Formula) -> Formula:
        return Or(self, other)

    def __invert__(self) -> Formula:
        return Not(self)

    def __rshift__(self, other: Formula) -> Formula:
        return Implies(self, other)


@dataclass(frozen=True, repr=False)
class _Top(Formula):
    def __repr__(self) -> str:
        return "Top"


@dataclass(frozen=True, repr=False)
class _Bottom(Formula):
    def __repr__(self) -> str:
        return "Bottom"


TOP: Formula = _Top()
BOTTOM: Formula = _Bottom()


@dataclass(frozen=True)
class Atom(Formula):
    name: str

    def __post_init__(self):
        if not isinstance(self.name, str) or not _ATOM_RE.match(self.name):
            raise ValueError(f"invalid atom name {self.name!r}")
        if self.name in RESERVED:
            raise ValueError(f"atom name {self.name!r} is reserved")


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


_BINARY = (And, Or, Implies, Iff)


def conjunction(formulas: Iterable[Formula]) -> Formula:
    """Left-nested conjunction of ``formulas``; ``TOP`` when empty."""
    result: Optional[Formula] = None
    for f in formulas:
        result = f if result is None else And(result, f)
    return TOP if result is None else result


def disjunction(formulas: Iterable[Formula]) -> Formula:
    """Left-nested disjunction of ``formulas``; ``BOTTOM`` when empty."""
    result: Optional[Formula] = None
    for f in formulas:
        result = f if result is None else Or(result, f)
    return BOTTOM if result is None else result


def vocabulary(*formulas: Formula) -> frozenset[str]:
    """Set of atom names occurring in any of ``formulas``."""
    names: set[str] = set()
    stack = list(formulas)
    while stack:
        f = stack.pop()
        if isinstance(f, Atom):
            names.add(f.name)
        elif isinstance(f, Not):
            stack.append(f.arg)
        elif isinstance(f, _BINARY):
            stack.append(f.left)
            stack.append(f.right)
    return frozenset(names)


def make_vocabulary(names: Iterable[str]) -> tuple[str, ...]:
    """Canonical vocabulary: duplicate-free and sorted by name."""
    return tuple(sorted(set(names)))


def check_cap(vocab: Sequence[str], cap: int = MAX_VARIABLES) -> None:
    if len(vocab) > cap:
        raise CapExceededError(
            f"vocabulary has {len(vocab)} atoms; enumeration cap is {cap}"
        )


# --------------------------------------------------------------------------
# Parsing

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<op><->|->|[!&|()])|(?P<ident>[A-Za-z][A-Za-z0-9_]*)"
)


@dataclass(frozen=True)
class _Token:
    kind: str  # "op", "ident" or "eof"
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(
                f"unexpected character {text[pos]!r}", line, pos - line_start + 1
            )
        kind = m.lastgroup
        if kind == "ws":
            chunk = m.group()
            newlines = chunk.count("\n")
            if newlines:
                line += newlines
                line_start = pos + chunk.rindex("\n") + 1
        else:
            tokens.append(_Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(_Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.pos]

    def _accept(self, op: str) -> bool:
        tok = self.current
        if tok.kind == "op" and tok.text == op:
            self.pos += 1
            return True
        return False

    def _fail(self, expected: str):
        tok = self.current
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise FormulaSyntaxError(f"expected {expected}, found {found}", tok.line, tok.column)

    def parse(self) -> Formula:
        f = self.iff()
        if self.current.kind != "eof":
            self._fail("end of input")
        return f

    def iff(self) -> Formula:
        f = self.imp()
        while self._accept("<->"):
            f = Iff(f, self.imp())
        return f

    def imp(self) -> Formula:
        f = self.disj()
        if self._accept("->"):
            return Implies(f, self.imp())
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self._accept("|"):
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self._accept("&"):
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.current
        if self._accept("!"):
            return Not(self.unary())
        if self._accept("("):
            f = self.iff()
            if not self._accept(")"):
                self._fail("')'")
            return f
        if tok.kind == "ident":
            self.pos += 1
            if tok.text == "T":
                return TOP
            if tok.text == "F":
                return BOTTOM
            return Atom(tok.text)
        self._fail("a formula")
        raise AssertionError  # unreachable


def parse_formula(text: str) -> Formula:
    """Parse ``text`` into a :class:`Formula`.

    >>> parse_formula("a & (b | c)")
    And(left=Atom(name='a'), right=Or(left=Atom(name='b'), right=Atom(name='c')))

    Raises:
        FormulaSyntaxError: on empty input or malformed text.
    """
    if not text or not text.strip():
        raise FormulaSyntaxError("empty formula", 1, 1)
    return _Parser(text).parse()


def as_formula(value: Union[Formula, str]) -> Formula:
    return parse_formula(value) if isinstance(value, str) else value


# --------------------------------------------------------------------------
# Printing

_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}
_SYMBOL = {Iff: "<->", Implies: "->", Or: "|", And: "&"}


def _prec(f: Formula) -> int:
    return _PREC.get(type(f), 5)


def to_text(f: Formula) -> str:
    """Render ``f`` in the parser's syntax with minimal parentheses.

    The output re-parses to exactly the same tree.
    """
    if isinstance(f, _Top):
        return "T"
    if isinstance(f, _Bottom):
        return "F"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        inner = to_text(f.arg)
        return "!" + (inner if _prec(f.arg) >= 5 else f"({inner})")
    p = _PREC[type(f)]
    left, right = to_text(f.left), to_text(f.right)
    if isinstance(f, Implies):
        # right-associative: a same-level left operand needs parentheses
        left_paren = _prec(f.left) <= p
        right_paren = _prec(f.right) < p
    else:
        left_paren = _prec(f.left) < p
        right_paren = _prec(f.right) <= p
    if left_paren:
        left = f"({left})"
    if right_paren:
        right = f"({right})"
    return f"{left} {_SYMBOL[type(f)]} {right}"


# --------------------------------------------------------------------------
# Interpretations


@dataclass(frozen=True)
class Interpretation:
    """A total truth assignment over a vocabulary."""

    vocabulary: tuple[str, ...]
    values: tuple[bool, ...]

    def __post_init__(self):
        if len(self.vocabulary) != len(self.values):
            raise ValueError("vocabulary and values differ in length")

    @classmethod
    def from_index(cls, vocab: Sequence[str], index: int) -> Interpretation:
        n = len(vocab)
        values = tuple(bool((index >> (n - 1 - j)) & 1) for j in range(n))
        return cls(tuple(vocab), values)

    @classmethod
    def from_mapping(
        cls, mapping: Mapping[str, bool], vocab: Optional[Sequence[str]] = None
    ) -> Interpretation:
        vocab = make_vocabulary(mapping) if vocab is None else tuple(vocab)
        missing = [a for a in vocab if a not in mapping]
        if missing or set(mapping) - set(vocab):
            raise VocabularyError(f"assignment does not match vocabulary {vocab}")
        return cls(vocab, tuple(bool(mapping[a]) for a in vocab))

    @classmethod
    def from_true_atoms(cls, true_atoms: Iterable[str], vocab: Sequence[str]) -> Interpretation:
        true_set = set(true_atoms)
        unknown = true_set - set(vocab)
        if unknown:
            raise VocabularyError(f"atoms {sorted(unknown)} not in vocabulary")
        return cls(tuple(vocab), tuple(a in true_set for a in vocab))

    @property
    def index(self) -> int:
        i = 0
        for v in self.values:
            i = (i << 1) | v
        return i

    def as_dict(self) -> dict[str, bool]:
        return dict(zip(self.vocabulary, self.values))

    def __getitem__(self, name: str) -> bool:
        try:
            return self.values[self.vocabulary.index(name)]
        except ValueError:
            raise VocabularyError(f"atom {name!r} not in interpretation") from None

    def true_atoms(self) -> frozenset[str]:
        return frozenset(a for a, v in zip(self.vocabulary, self.values) if v)

    def restrict(self, vocab: Sequence[str]) -> Interpretation:
        d = self.as_dict()
        return Interpretation(tuple(vocab), tuple(d[a] for a in vocab))

    def __str__(self) -> str:
        return format_interpretation(self)


def format_interpretation(w: Interpretation) -> str:
    """Signed-literal rendering, e.g. ``a b !c``."""
    return " ".join(a if v else "!" + a for a, v in zip(w.vocabulary, w.values))


def parse_interpretation(text: str, vocab: Optional[Sequence[str]] = None) -> Interpretation:
    """Parse ``"a b !c"`` (commas also accepted).

    Atoms of ``vocab`` that are not mentioned default to false.
    """
    mapping: dict[str, bool] = {}
    for lit in text.replace(",", " ").split():
        name, value = (lit[1:], False) if lit.startswith(("!", "~", "-")) else (lit, True)
        Atom(name)  # validates the name
        if mapping.get(name, value) != value:
            raise ValueError(f"atom {name!r} assigned both ways")
        mapping[name] = value
    if vocab is None:
        vocab = make_vocabulary(mapping)
    extra = set(mapping) - set(vocab)
    if extra:
        raise VocabularyError(f"atoms {sorted(extra)} not in vocabulary")
    return Interpretation(tuple(vocab), tuple(mapping.get(a, False) for a in vocab))


@dataclass(frozen=True)
class PartialAssignment:
    """A partial truth assignment; atoms of ``vocabulary`` may be unassigned."""

    vocabulary: tuple[str, ...]
    assignment: tuple[tuple[str, bool], ...] = ()

    def __post_init__(self):
        extra = {a for a, _ in self.assignment} - set(self.vocabulary)
        if extra:
            raise VocabularyError(f"atoms {sorted(extra)} not in vocabulary")

    @classmethod
    def from_mapping(cls, vocab: Sequence[str], mapping: Mapping[str, bool]) -> PartialAssignment:
        return cls(tuple(vocab), tuple(sorted(mapping.items())))

    def as_dict(self) -> dict[str, bool]:
        return dict(self.assignment)

    def completions(self) -> Iterator[Interpretation]:
        fixed = self.as_dict()
        free = [a for a in self.vocabulary if a not in fixed]
        for i in range(1 << len(free)):
            values = dict(fixed)
            for j, a in enumerate(free):
                values[a] = bool((i >> (len(free) - 1 - j)) & 1)
            yield Interpretation.from_mapping(values, self.vocabulary)


def enumerate_interpretations(
    vocab: Sequence[str], cap: int = MAX_VARIABLES
) -> Iterator[Interpretation]:
    """Yield all ``2**len(vocab)`` interpretations in binary-counting order."""
    vocab = tuple(vocab)
    if len(set(vocab)) != len(vocab):
        raise ValueError("vocabulary contains duplicates")
    check_cap(vocab, cap)
    for i in range(1 << len(vocab)):
        yield Interpretation.from_index(vocab, i)


# --------------------------------------------------------------------------
# Evaluation


def _eval(f: Formula, values: Mapping[str, bool]) -> bool:
    if isinstance(f, Atom):
        try:
            return values[f.name]
        except KeyError:
            raise VocabularyError(f"atom {f.name!r} not assigned") from None
    if isinstance(f, Not):
        return not _eval(f.arg, values)
    if isinstance(f, And):
        return _eval(f.left, values) and _eval(f.right, values)
    if isinstance(f, Or):
        return _eval(f.left, values) or _eval(f.right, values)
    if isinstance(f, Implies):
        return (not _eval(f.left, values)) or _eval(f.right, values)
    if isinstance(f, Iff):
        return _eval(f.left, values) == _eval(f.right, values)
    return isinstance(f, _Top)


def evaluate(f: Formula, w: Union[Interpretation, Mapping[str, bool]]) -> bool:
    """Two-valued truth value of ``f`` under a total interpretation.

    Raises:
        VocabularyError: if an atom of ``f`` is not covered by ``w``.
    """
    values = w.as_dict() if isinstance(w, Interpretation) else w
    return _eval(f, values)


def kleene(f: Formula, values: Mapping[str, bool]) -> Optional[bool]:
    """Strong-Kleene value of ``f``; ``None`` stands for unknown."""
    if isinstance(f, Atom):
        return values.get(f.name)
    if isinstance(f, Not):
        v = kleene(f.arg, values)
        return None if v is None else not v
    if isinstance(f, And):
        a = kleene(f.left, values)
        if a is False:
            return False
        b = kleene(f.right, values)
        if b is False:
            return False
        return True if (a and b) else None
    if isinstance(f, Or):
        a = kleene(f.left, values)
        if a is True:
            return True
        b = kleene(f.right, values)
        if b is True:
            return True
        return False if (a is False and b is False) else None
    if isinstance(f, Implies):
        a = kleene(f.left, values)
        if a is False:
            return True
        b = kleene(f.right, values)
        if b is True:
            return True
        return False if (a is True and b is False) else None
    if isinstance(f, Iff):
        a = kleene(f.left, values)
        if a is None:
            return None
        b = kleene(f.right, values)
        return None if b is None else a == b
    return isinstance(f, _Top)


def partial_evaluate(
    f: Formula, p: Union[PartialAssignment, Interpretation, Mapping[str, bool]]
) -> Optional[bool]:
    """Sound three-valued evaluation under a partial assignment.

    Returns ``True``/``False`` only when every completion of ``p`` agrees;
    ``None`` means unknown.  Uses Kleene tables, so it is not complete:
    ``a | !a`` under the empty assignment is ``None``.
    """
    if isinstance(p, (PartialAssignment, Interpretation)):
        missing = vocabulary(f) - set(p.vocabulary)
        if missing:
            raise VocabularyError(f"atoms {sorted(missing)} outside the vocabulary")
        p = p.as_dict()
    return kleene(f, p)


# --------------------------------------------------------------------------
# Truth tables


@lru_cache(maxsize=4096)
def atom_table(n: int, j: int) -> int:
    """Truth table of the ``j``-th atom of an ``n``-atom vocabulary."""
    block = 1 << (n - 1 - j)
    period = 2 * block
    unit = ((1 << block) - 1) << block
    reps = (1 << n) // period
    return unit * (((1 << (period * reps)) - 1) // ((1 << period) - 1))


def full_table(n: int) -> int:
    return (1 << (1 << n)) - 1


def truth_table(f: Formula, vocab: Sequence[str]) -> int:
    """Bitmask of the interpretations of ``vocab`` that satisfy ``f``."""
    vocab = tuple(vocab)
    check_cap(vocab)
    position = {a: j for j, a in enumerate(vocab)}
    missing = vocabulary(f) - position.keys()
    if missing:
        raise VocabularyError(f"atoms {sorted(missing)} outside the vocabulary")
    n = len(vocab)
    full = full_table(n)
    memo: dict[Formula, int] = {}

    def table(g: Formula) -> int:
        hit = memo.get(g)
        if hit is not None:
            return hit
        if isinstance(g, Atom):
            t = atom_table(n, position[g.name])
        elif isinstance(g, Not):
            t = full ^ table(g.arg)
        elif isinstance(g, And):
            t = table(g.left) & table(g.right)
        elif isinstance(g, Or):
            t = table(g.left) | table(g.right)
        elif isinstance(g, Implies):
            t = (full ^ table(g.left)) | table(g.right)
        elif isinstance(g, Iff):
            t = full ^ (table(g.left) ^ table(g.right))
        else:
            t = full if isinstance(g, _Top) else 0
        memo[g] = t
        return t

    return table(f)


def entails(f: Formula, g: Formula) -> bool:
    """Classical consequence ``f |= g``."""
    vocab = make_vocabulary(vocabulary(f, g))
    return truth_table(f, vocab) & ~truth_table(g, vocab) == 0


def equivalent(f: Formula, g: Formula) -> bool:
    vocab = make_vocabulary(vocabulary(f, g))
    return truth_table(f, vocab) == truth_table(g, vocab)


def is_consistent(formulas: Iterable[Formula]) -> bool:
    """True iff some interpretation satisfies every formula (vacuously for none)."""
    formulas = list(formulas)
    vocab = make_vocabulary(vocabulary(*formulas))
    table = full_table(len(vocab))
    for f in formulas:
        table &= truth_table(f, vocab)
        if not table:
            return False
    return True


def is_satisfiable(f: Formula) -> bool:
    return is_consistent([f])


def models(f: Formula, vocab: Sequence[str]) -> list[Interpretation]:
    t = truth_table(f, vocab)
    return [Interpretation.from_index(vocab, i) for i in range(1 << len(vocab)) if (t >> i) & 1]


# --------------------------------------------------------------------------
# Canonical form


def _sort_key(f: Formula) -> tuple[int, str]:
    return (len(to_text(f)), to_text(f))


def canonicalize(f: Formula) -> Formula:
    """Syntactic normal form used to merge duplicate formulas.

    Flattens and sorts conjunctions and disjunctions, removes duplicate
    operands and neutral constants, eliminates double negation and orders the
    operands of ``<->``.  The result is logically equivalent to ``f``.
    """
    if isinstance(f, Not):
        inner = canonicalize(f.arg)
        if isinstance(inner, Not):
            return inner.arg
        if isinstance(inner, _Top):
            return BOTTOM
        if isinstance(inner, _Bottom):
            return TOP
        return Not(inner)
    if isinstance(f, (And, Or)):
        op = type(f)
        neutral, absorbing = (_Top, _Bottom) if op is And else (_Bottom, _Top)
        operands: list[Formula] = []
        stack = [f]
        while stack:
            g = stack.pop()
            if isinstance(g, op):
                stack.append(g.right)
                stack.append(g.left)
            else:
                operands.append(canonicalize(g))
        flat: set[Formula] = set()
        for g in operands:
            if isinstance(g, op):  # canonical child of the same kind
                flat.update(_flatten(g, op))
            else:
                flat.add(g)
        if any(isinstance(g, absorbing) for g in flat):
            return TOP if absorbing is _Top else BOTTOM
        flat = {g for g in flat if not isinstance(g, neutral)}
        if not flat:
            return TOP if neutral is _Top else BOTTOM
        ordered = sorted(flat, key=_sort_key)
        result = ordered[0]
        for g in ordered[1:]:
            result = op(result, g)
        return result
    if isinstance(f, Implies):
        return Implies(canonicalize(f.left), canonicalize(f.right))
    if isinstance(f, Iff):
        a, b = sorted((canonicalize(f.left), canonicalize(f.right)), key=_sort_key)
        return Iff(a, b)
    return f


def _flatten(f: Formula, op: type) -> list[Formula]:
    if isinstance(f, op):
        return _flatten(f.left, op) + _flatten(f.right, op)
    return [f]


def clause_literals(f: Formula) -> Optional[list[tuple[str, bool]]]:
    """Literals of ``f`` if its canonical form is a clause, else ``None``.

    ``F`` is the empty clause.  Each literal is ``(atom, positive)``.
    """
    g = canonicalize(f)
    if isinstance(g, _Bottom):
        return []
    lits = []
    for part in _flatten(g, Or):
        if isinstance(part, Atom):
            lits.append((part.name, True))
        elif isinstance(part, Not) and isinstance(part.arg, Atom):
            lits.append((part.arg.name, False))
        else:
            return None
    return lits
