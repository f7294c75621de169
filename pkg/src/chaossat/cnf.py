"""CNF instances: DIMACS parsing, truth evaluation, brute-force model counting."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

DEFAULT_BRUTE_FORCE_LIMIT = 24


class DimacsParseError(ValueError):
    """Raised on malformed DIMACS input; carries the offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class BruteForceLimitError(ValueError):
    """Raised when an instance is too large for exhaustive enumeration."""


@dataclass(frozen=True)
class Literal:
    """A Boolean variable (1-based) or its negation."""

    variable: int
    negated: bool = False

    def __post_init__(self):
        if self.variable < 1:
            raise ValueError(f"variable index must be >= 1, got {self.variable}")


@dataclass(frozen=True)
class Clause:
    """A nonempty disjunction of literals, duplicate-free."""

    literals: tuple[Literal, ...]

    def __post_init__(self):
        if len(self.literals) == 0:
            raise ValueError("clause must contain at least one literal")
        seen = set()
        for lit in self.literals:
            key = (lit.variable, lit.negated)
            if key in seen:
                raise ValueError(f"duplicate literal {key} in clause")
            seen.add(key)

    def __len__(self):
        return len(self.literals)


@dataclass(frozen=True)
class CnfInstance:
    """A conjunction of clauses over n Boolean variables."""

    n: int
    clauses: tuple[Clause, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"variable count must be >= 1, got {self.n}")
        if len(self.clauses) == 0:
            raise ValueError("instance must contain at least one clause")
        for clause in self.clauses:
            for lit in clause.literals:
                if lit.variable > self.n:
                    raise ValueError(
                        f"variable {lit.variable} exceeds declared count {self.n}"
                    )

    @property
    def m(self) -> int:
        return len(self.clauses)


def parse_dimacs(text: str) -> CnfInstance:
    """Parse DIMACS CNF text into a CnfInstance.

    Accepts optional ``c`` comment lines, a single ``p cnf n m`` header and
    exactly m zero-terminated clauses.  Clause tokens may span lines.
    """
    n = None
    m = None
    header_line = 0
    clauses: list[Clause] = []
    current: list[Literal] = []
    current_keys: set[tuple[int, bool]] = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if n is not None:
                raise DimacsParseError("duplicate problem header", lineno)
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsParseError(f"malformed header {line!r}", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsParseError(f"non-integer header fields in {line!r}", lineno)
            if n < 1 or m < 1:
                raise DimacsParseError(f"header requires n >= 1 and m >= 1, got {line!r}", lineno)
            header_line = lineno
            continue
        if n is None:
            raise DimacsParseError("clause data before 'p cnf' header", lineno)
        for token in line.split():
            try:
                value = int(token)
            except ValueError:
                raise DimacsParseError(f"non-integer token {token!r}", lineno)
            if value == 0:
                if not current:
                    raise DimacsParseError("empty clause", lineno)
                clauses.append(Clause(tuple(current)))
                current = []
                current_keys = set()
                continue
            variable = abs(value)
            if variable > n:
                raise DimacsParseError(f"variable {variable} exceeds n={n}", lineno)
            key = (variable, value < 0)
            if key in current_keys:
                raise DimacsParseError(f"duplicate literal {value} in clause", lineno)
            current_keys.add(key)
            current.append(Literal(variable, value < 0))

    last = len(text.splitlines()) or 1
    if n is None:
        raise DimacsParseError("missing 'p cnf' header", last)
    if current:
        raise DimacsParseError("unterminated clause at end of input", last)
    if len(clauses) != m:
        raise DimacsParseError(
            f"header on line {header_line} declares {m} clauses, found {len(clauses)}", last
        )
    return CnfInstance(n, tuple(clauses))


def render_dimacs(instance: CnfInstance) -> str:
    """Serialize an instance back to DIMACS text (inverse of parse_dimacs)."""
    lines = [f"p cnf {instance.n} {instance.m}"]
    for clause in instance.clauses:
        nums = [(-lit.variable if lit.negated else lit.variable) for lit in clause.literals]
        lines.append(" ".join(str(v) for v in nums) + " 0")
    return "\n".join(lines) + "\n"


def to_json(instance: CnfInstance) -> str:
    """Canonical JSON form {"n": int, "clauses": [[signed ints]]}."""
    clauses = [
        [(-lit.variable if lit.negated else lit.variable) for lit in clause.literals]
        for clause in instance.clauses
    ]
    return json.dumps({"n": instance.n, "clauses": clauses})


def from_json(text: str) -> CnfInstance:
    data = json.loads(text)
    clauses = tuple(
        Clause(tuple(Literal(abs(v), v < 0) for v in clause)) for clause in data["clauses"]
    )
    return CnfInstance(int(data["n"]), clauses)


def evaluate(instance: CnfInstance, bits) -> int:
    """Truth value of the conjunction under an assignment (sequence of 0/1)."""
    if len(bits) != instance.n:
        raise ValueError(f"assignment length {len(bits)} != n={instance.n}")
    for clause in instance.clauses:
        if not any(
            (1 - bits[lit.variable - 1] if lit.negated else bits[lit.variable - 1])
            for lit in clause.literals
        ):
            return 0
    return 1


def count_satisfying(instance: CnfInstance, limit: int = DEFAULT_BRUTE_FORCE_LIMIT) -> int:
    """Number of satisfying assignments, by exhaustive enumeration.

    Bit k of the assignment index is variable k read from the most
    significant position, matching the simulator's qubit ordering.
    """
    n = instance.n
    if n > limit:
        raise BruteForceLimitError(f"n={n} exceeds brute-force limit {limit}")
    indices = np.arange(2**n, dtype=np.uint32)
    sat = np.ones(2**n, dtype=bool)
    for clause in instance.clauses:
        clause_sat = np.zeros(2**n, dtype=bool)
        for lit in clause.literals:
            bit = (indices >> (n - lit.variable)) & 1
            clause_sat |= (bit == 0) if lit.negated else (bit == 1)
        sat &= clause_sat
    return int(np.count_nonzero(sat))


def assignment_from_index(index: int, n: int) -> tuple[int, ...]:
    """Bits of a basis index, variable 1 first (most significant bit)."""
    return tuple((index >> (n - k)) & 1 for k in range(1, n + 1))
