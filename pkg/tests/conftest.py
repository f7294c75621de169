import random

import pytest

from chaossat import cnf


def random_instance(rng: random.Random, max_vars: int = 8, max_clauses: int = 12,
                    max_total: int | None = None):
    """Random CNF instance; optionally rejection-sampled to a circuit width."""
    from chaossat import compiler

    while True:
        n = rng.randint(1, max_vars)
        m = rng.randint(1, max_clauses)
        clauses = []
        for _ in range(m):
            card = rng.randint(1, min(3, n))
            variables = rng.sample(range(1, n + 1), card)
            clauses.append(
                cnf.Clause(tuple(cnf.Literal(v, rng.random() < 0.5) for v in variables))
            )
        instance = cnf.CnfInstance(n, tuple(clauses))
        if max_total is None:
            return instance
        if compiler.compute_layout(instance).total <= max_total:
            return instance


@pytest.fixture
def rng():
    return random.Random(20240817)


# acceptance verdict lines, emitted after the run so capture cannot eat them
CRITERION_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERION_LINES):
            terminalreporter.write_line(line)
