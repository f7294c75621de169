import math

import numpy as np
import pytest
from conftest import random_instance

from chaossat import cnf, compiler, simulator
from chaossat.cnf import Clause, CnfInstance, Literal
from chaossat.gates import GateOp, GateSequence
from chaossat.simulator import WidthCapError


def clause(*nums):
    return Clause(tuple(Literal(abs(v), v < 0) for v in nums))


class TestInitState:
    def test_three_qubits(self):
        state = simulator.init_state(3)
        assert np.array_equal(state.amps, [1, 0, 0, 0, 0, 0, 0, 0])

    def test_one_qubit(self):
        assert np.array_equal(simulator.init_state(1).amps, [1, 0])

    def test_width_cap(self):
        with pytest.raises(WidthCapError):
            simulator.init_state(27)


class TestApply:
    def test_hadamard_on_zero(self):
        state = simulator.apply(
            simulator.init_state(1), GateSequence(1, (GateOp("H_BLOCK", (1,)),))
        )
        assert np.allclose(state.amps, [1 / math.sqrt(2), 1 / math.sqrt(2)])

    def test_cn_flips_conditionally(self):
        # |10> has index 2 with qubit 1 as the most significant bit
        start = simulator.StateVector(2, np.array([0, 0, 1, 0], dtype=complex))
        state = simulator.apply(start, GateSequence(2, (GateOp("CN", (1, 2)),)))
        assert np.allclose(state.amps, [0, 0, 0, 1])

    def test_circuit_produces_uniform_truth_superposition(self):
        inst = CnfInstance(2, (clause(1, 2),))
        circuit = compiler.compile(inst)
        state = simulator.apply(simulator.init_state(circuit.layout), circuit.sequence)
        n, total = inst.n, circuit.layout.total
        nonzero = {
            index: amp for index, amp in enumerate(state.amps) if abs(amp) > 1e-12
        }
        assert len(nonzero) == 4
        for index, amp in nonzero.items():
            assert amp == pytest.approx(0.5)
            bits = cnf.assignment_from_index(index, total)
            assert bits[-1] == cnf.evaluate(inst, bits[:n])

    def test_width_mismatch(self):
        with pytest.raises(ValueError):
            simulator.apply(simulator.init_state(2), GateSequence(3, ()))

    def test_norm_preserved_per_gate(self, rng):
        inst = random_instance(rng, max_vars=6, max_clauses=8)
        circuit = compiler.compile(inst)
        state = simulator.init_state(circuit.layout)
        for op in circuit.sequence.ops:
            state = simulator.apply(
                state, GateSequence(circuit.layout.total, (op,))
            )
            assert abs(state.norm() - 1.0) < 1e-12


class TestSuccessProbability:
    def test_three_quarters(self):
        inst = CnfInstance(2, (clause(1, 2),))
        circuit = compiler.compile(inst)
        state = simulator.apply(simulator.init_state(circuit.layout), circuit.sequence)
        assert simulator.success_probability(state, circuit.layout) == pytest.approx(0.75)

    def test_unsat_is_zero(self):
        inst = CnfInstance(1, (clause(1), clause(-1)))
        circuit = compiler.compile(inst)
        state = simulator.apply(simulator.init_state(circuit.layout), circuit.sequence)
        assert simulator.success_probability(state, circuit.layout) < 1e-12

    def test_unit_clause_half(self):
        inst = CnfInstance(1, (clause(1),))
        circuit = compiler.compile(inst)
        state = simulator.apply(simulator.init_state(circuit.layout), circuit.sequence)
        assert simulator.success_probability(state, circuit.layout) == pytest.approx(0.5)

    def test_matches_oracle(self, rng):
        for _ in range(30):
            inst = random_instance(rng, max_vars=6, max_clauses=8, max_total=18)
            circuit = compiler.compile(inst)
            state = simulator.apply(
                simulator.init_state(circuit.layout), circuit.sequence
            )
            probability = simulator.success_probability(state, circuit.layout)
            expected = cnf.count_satisfying(inst) / 2**inst.n
            assert probability == pytest.approx(expected, abs=1e-10)


class TestPostMeasure:
    def test_satisfiable_projects_onto_success(self):
        inst = CnfInstance(2, (clause(1, 2),))
        circuit = compiler.compile(inst)
        state = simulator.apply(simulator.init_state(circuit.layout), circuit.sequence)
        outcome = simulator.post_measure(state, circuit.layout)
        assert outcome.probability == pytest.approx(0.75)
        assert abs(outcome.post_state.norm() - 1.0) < 1e-12
        pairs = outcome.post_state.amps.reshape(-1, 2)
        assert np.all(pairs[:, 0] == 0)

    def test_unsatisfiable_gives_no_state(self):
        inst = CnfInstance(1, (clause(1), clause(-1)))
        circuit = compiler.compile(inst)
        state = simulator.apply(simulator.init_state(circuit.layout), circuit.sequence)
        outcome = simulator.post_measure(state, circuit.layout)
        assert outcome.probability < 1e-12
        assert outcome.post_state is None

    def test_completeness(self):
        inst = CnfInstance(2, (clause(1, 2), clause(-1, 2)))
        circuit = compiler.compile(inst)
        state = simulator.apply(simulator.init_state(circuit.layout), circuit.sequence)
        probability = simulator.success_probability(state, circuit.layout)
        pairs = state.amps.reshape(-1, 2)
        complement = float(np.sum(np.abs(pairs[:, 0]) ** 2))
        assert probability + complement == pytest.approx(1.0, abs=1e-10)


class TestEstimateQ:
    def _state(self, *clauses_):
        inst = CnfInstance(2, tuple(clauses_))
        circuit = compiler.compile(inst)
        state = simulator.apply(simulator.init_state(circuit.layout), circuit.sequence)
        return state, circuit.layout

    def test_probability_zero(self):
        inst = CnfInstance(1, (clause(1), clause(-1)))
        circuit = compiler.compile(inst)
        state = simulator.apply(simulator.init_state(circuit.layout), circuit.sequence)
        assert simulator.estimate_q(state, circuit.layout, 1000, 7) == 0.0

    def test_probability_one(self):
        state, layout = self._state(clause(1, -1))
        assert simulator.estimate_q(state, layout, 1000, 7) == 1.0

    def test_seeded_golden(self):
        state, layout = self._state(clause(1, 2))
        estimate = simulator.estimate_q(state, layout, 100_000, 42)
        assert estimate == 0.8674848701850656  # frozen draw, Bernoulli(3/4)
        assert abs(estimate - math.sqrt(0.75)) < 0.01
