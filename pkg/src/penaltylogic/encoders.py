"""Graph front end and weighted-CNF interoperability.

Maximum clique is encoded with one unit-penalty item per vertex and one
inviolable ``!x | !y`` per pair of non-adjacent vertices; the cheapest
interpretations are then exactly the indicator vectors of maximum cliques.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Union

from penaltylogic.errors import CapExceededError, FormulaSyntaxError
from penaltylogic.kb import INF, Cost, PenaltyKB
from penaltylogic.logic import (
    MAX_VARIABLES,
    Atom,
    Formula,
    Interpretation,
    Not,
    Or,
    clause_literals,
    disjunction,
)
from penaltylogic.solver import SearchConfig, min_cost_interpretations


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]

    def __post_init__(self):
        vertices = tuple(self.vertices)
        if len(set(vertices)) != len(vertices):
            raise ValueError("duplicate vertex names")
        for v in vertices:
            Atom(v)  # vertex names double as atom names
        edges = frozenset(frozenset(e) for e in self.edges)
        known = set(vertices)
        for e in edges:
            if len(e) != 2:
                raise ValueError(f"self-loop or malformed edge {sorted(e)}")
            if not e <= known:
                raise ValueError(f"edge {sorted(e)} uses an undeclared vertex")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str]]) -> Graph:
        return cls(tuple(vertices), frozenset(frozenset(e) for e in edges))

    def adjacent(self, x: str, y: str) -> bool:
        return frozenset((x, y)) in self.edges

    def non_edges(self) -> list[tuple[str, str]]:
        return [(x, y) for x, y in combinations(self.vertices, 2) if not self.adjacent(x, y)]

    def is_clique(self, vertices: Iterable[str]) -> bool:
        return all(self.adjacent(x, y) for x, y in combinations(list(vertices), 2))


@dataclass(frozen=True)
class CliqueResult:
    vertices: frozenset[str]
    size: int
    cost: Cost


def encode_max_clique(g: Graph) -> PenaltyKB:
    """Penalty base whose cheapest interpretations are the maximum cliques of ``g``."""
    pairs: list[tuple[Formula, Cost]] = [(Atom(v), Fraction(1)) for v in g.vertices]
    for x, y in g.non_edges():
        pairs.append((Or(Not(Atom(x)), Not(Atom(y))), INF))
    return PenaltyKB.from_pairs(pairs)


def decode_clique(w: Interpretation, g: Graph) -> frozenset[str]:
    return frozenset(v for v in g.vertices if w[v])


def solve_max_clique(g: Graph, cap: int = MAX_VARIABLES) -> CliqueResult:
    """A maximum clique of ``g`` via the penalty encoding.

    Raises:
        CapExceededError: if ``g`` has more than ``cap`` vertices.
    """
    if len(g.vertices) > cap:
        raise CapExceededError(f"{len(g.vertices)} vertices; cap is {cap}")
    pk = encode_max_clique(g)
    result = min_cost_interpretations(
        pk, SearchConfig(witness_mode="one", max_variables=cap), g.vertices
    )
    clique = decode_clique(result.witness, g)
    if not g.is_clique(clique):
        raise AssertionError(f"decoded vertex set {sorted(clique)} is not a clique")
    return CliqueResult(clique, len(clique), result.optimum)


def read_dimacs_graph(text: str) -> Graph:
    """Parse DIMACS ``p edge n m`` text; vertices are named ``v1`` .. ``vn``."""
    n: Optional[int] = None
    edges: set[frozenset[str]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if n is not None:
                raise FormulaSyntaxError("duplicate problem line", lineno, 1)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise FormulaSyntaxError("expected 'p edge <n> <m>'", lineno, 1)
            try:
                n, _ = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormulaSyntaxError("non-integer size in problem line", lineno, 1) from None
            if n < 0:
                raise FormulaSyntaxError("negative vertex count", lineno, 1)
        elif parts[0] == "e":
            if n is None:
                raise FormulaSyntaxError("edge before problem line", lineno, 1)
            if len(parts) != 3:
                raise FormulaSyntaxError("expected 'e <u> <v>'", lineno, 1)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise FormulaSyntaxError("non-integer endpoint", lineno, 1) from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise FormulaSyntaxError(f"endpoint out of range 1..{n}", lineno, 1)
            if u == v:
                raise FormulaSyntaxError(f"self-loop on vertex {u}", lineno, 1)
            e = frozenset((f"v{u}", f"v{v}"))
            if e in edges:
                raise FormulaSyntaxError(f"duplicate edge {u} {v}", lineno, 1)
            edges.add(e)
        else:
            raise FormulaSyntaxError(f"unknown line type {parts[0]!r}", lineno, 1)
    if n is None:
        raise FormulaSyntaxError("missing 'p edge' line", 1, 1)
    return Graph(tuple(f"v{i}" for i in range(1, n + 1)), frozenset(edges))


def format_dimacs_graph(g: Graph) -> str:
    index = {v: i for i, v in enumerate(g.vertices, start=1)}
    edges = sorted(tuple(sorted(index[v] for v in e)) for e in g.edges)
    lines = [f"p edge {len(g.vertices)} {len(edges)}"]
    lines += [f"e {u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def export_wcnf(pk: PenaltyKB, scale: Union[int, Fraction] = 1) -> str:
    """Weighted-CNF text for a clausal knowledge base.

    Finite penalties are multiplied by ``scale`` and must then be integers.
    Hard clauses get the top weight ``1 + sum of finite weights``.  Comment
    lines record atom names and the scale so :func:`read_wcnf` can invert
    the export.

    Raises:
        ValueError: on a non-clausal formula or a non-integral weight.
    """
    scale = Fraction(scale)
    if scale <= 0:
        raise ValueError("scale must be positive")
    vocab = pk.vocabulary
    number = {a: i for i, a in enumerate(vocab, start=1)}
    clauses = []
    for it in pk.items:
        lits = clause_literals(it.formula)
        if lits is None:
            raise ValueError(f"formula {it.formula} is not a clause")
        weight = None
        if it.penalty != INF:
            scaled = it.penalty * scale
            if scaled.denominator != 1:
                raise ValueError(f"weight {it.penalty} is not integral at scale {scale}")
            weight = scaled.numerator
        clauses.append((weight, [number[a] if pos else -number[a] for a, pos in lits]))
    top = 1 + sum(w for w, _ in clauses if w is not None)
    lines = [f"c var {i} {a}" for a, i in number.items()]
    if scale != 1:
        lines.append(f"c scale {scale}")
    lines.append(f"p wcnf {len(vocab)} {len(clauses)} {top}")
    for w, lits in clauses:
        lines.append(" ".join(str(x) for x in [top if w is None else w, *lits, 0]))
    return "\n".join(lines) + "\n"


def read_wcnf(text: str) -> PenaltyKB:
    """Parse weighted-CNF text; weights at or above the top weight are inviolable."""
    names: dict[int, str] = {}
    scale = Fraction(1)
    header = None
    pairs: list[tuple[Formula, Cost]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts:
            continue
        if parts[0] == "c":
            if len(parts) == 4 and parts[1] == "var":
                names[int(parts[2])] = parts[3]
            elif len(parts) == 3 and parts[1] == "scale":
                scale = Fraction(parts[2])
            continue
        if parts[0] == "p":
            if len(parts) != 5 or parts[1] != "wcnf":
                raise FormulaSyntaxError("expected 'p wcnf <vars> <clauses> <top>'", lineno, 1)
            header = (int(parts[2]), int(parts[3]), int(parts[4]))
            continue
        if header is None:
            raise FormulaSyntaxError("clause before problem line", lineno, 1)
        nums = [int(x) for x in parts]
        if nums[-1] != 0:
            raise FormulaSyntaxError("clause must end with 0", lineno, len(raw))
        weight, lits = nums[0], nums[1:-1]
        if any(abs(x) > header[0] or x == 0 for x in lits):
            raise FormulaSyntaxError("literal out of range", lineno, 1)
        atoms = [Atom(names.get(abs(x), f"x{abs(x)}")) for x in lits]
        clause = disjunction(a if x > 0 else Not(a) for a, x in zip(atoms, lits))
        if weight <= 0:
            raise FormulaSyntaxError("clause weight must be positive", lineno, 1)
        pairs.append((clause, INF if weight >= header[2] else Fraction(weight) / scale))
    if header is None:
        raise FormulaSyntaxError("missing 'p wcnf' line", 1, 1)
    if len(pairs) != header[1]:
        raise FormulaSyntaxError(f"header declares {header[1]} clauses, found {len(pairs)}", 1, 1)
    return PenaltyKB.from_pairs(pairs)
