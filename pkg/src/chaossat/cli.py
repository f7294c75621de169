"""Command-line front end.

Subcommands expose each stage (oracle, compile, simulate, amplify,
lindblad, entropy) and `solve` runs the full pipeline: parse, compile,
simulate, extract q^2 and decide satisfiability with the selected
discriminator.  Exit codes follow the SAT-solver convention: 10 SAT,
20 UNSAT, 1 errors, 2 engine/oracle disagreement.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

import numpy as np

from . import amplifier, cnf, compiler, entropy, lindblad, simulator
from .gates import sequence_to_json

EXIT_SAT = 10
EXIT_UNSAT = 20
EXIT_ERROR = 1
EXIT_DISAGREEMENT = 2


def _fmt(value: float) -> float:
    # float round-trips through repr; json.dumps uses repr, which is
    # shortest-exact (17 significant digits when needed)
    return float(value)


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _read_instance(path: str) -> cnf.CnfInstance:
    with open(path) as handle:
        return cnf.parse_dimacs(handle.read())


def _parse_q2(text: str) -> float:
    if "/" in text:
        frac = Fraction(text)
        return frac.numerator / frac.denominator
    return float(text)


def _write_csv(path: str | None, header: str, rows) -> None:
    lines = [header] + [",".join(repr(v) for v in row) for row in rows]
    text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w") as handle:
            handle.write(text)
    else:
        print(text, end="")


def cmd_oracle(args) -> int:
    instance = _read_instance(args.path)
    r = cnf.count_satisfying(instance, limit=args.width_cap)
    _emit({"n": instance.n, "m": instance.m, "r": r, "total_assignments": 2**instance.n})
    return EXIT_SAT if r > 0 else EXIT_UNSAT


def cmd_compile(args) -> int:
    instance = _read_instance(args.path)
    circuit = compiler.compile(instance)
    layout = circuit.layout
    _emit(
        {
            "n": layout.n,
            "m": instance.m,
            "mu": layout.mu,
            "total_qubits": layout.total,
            "gate_count": len(circuit.sequence.ops),
            "clause_starts": list(layout.s),
            "circuit": json.loads(sequence_to_json(circuit.sequence)),
        }
    )
    return 0


def cmd_simulate(args) -> int:
    instance = _read_instance(args.path)
    circuit = compiler.compile(instance)
    layout = circuit.layout
    state = simulator.init_state(layout, cap=args.width_cap)
    state = simulator.apply(state, circuit.sequence)
    probability = simulator.success_probability(state, layout)
    payload = {
        "probability": _fmt(probability),
        "r_inferred": _fmt(probability * 2**layout.n),
        "layout": {"n": layout.n, "mu": layout.mu, "total": layout.total},
    }
    if args.dump_amplitudes:
        if layout.total > 12:
            print("amplitude dump capped at width 12", file=sys.stderr)
            return EXIT_ERROR
        payload["amplitudes"] = [[_fmt(a.real), _fmt(a.imag)] for a in state.amps]
    _emit(payload)
    return 0


def cmd_amplify(args) -> int:
    q2 = _parse_q2(args.q2)
    params = amplifier.LogisticParams(a=args.a, max_steps=args.steps, threshold=args.threshold)
    decision, trajectory = amplifier.decide_sat(q2, params)
    _write_csv(args.csv, "step,x", list(enumerate(trajectory.xs)))
    _emit({"decision": decision, "first_crossing": trajectory.first_crossing})
    return EXIT_SAT if decision == "SAT" else EXIT_UNSAT


def cmd_lindblad(args) -> int:
    gamma = complex(args.gamma_re, args.gamma_im)
    energies = lindblad.HamiltonianParams(args.e0, args.e1)
    decision, classification, record = lindblad.discriminate(
        args.q, gamma, energies, t_final=args.t_final, dt=args.dt
    )
    rows = zip(record.times, record.p1, record.abs_c)
    _write_csv(args.csv, "t,p1,abs_c", [(t, p, c) for t, p, c in rows])
    _emit({"classification": classification, "decision": decision})
    return 0


def cmd_entropy(args) -> int:
    with open(args.input) as handle:
        data = json.load(handle)

    def matrix(entries):
        return np.array([[complex(re, im) for re, im in row] for row in entries])

    rho = entropy.DensityMatrix(matrix(data["rho"]))
    channel = entropy.KrausChannel(tuple(matrix(k) for k in data["channel"]["kraus"]))
    base = data.get("base", 2)
    s_rho = entropy.vn_entropy(rho, base)
    s_out = entropy.vn_entropy(channel(rho), base)
    s_e = entropy.entropy_exchange(rho, channel, base)
    i1 = entropy.ohya_mutual(rho, channel, base)
    i2, i3 = entropy.coherent_informations(rho, channel, base)
    payload = {
        "S": _fmt(s_rho),
        "S_out": _fmt(s_out),
        "S_e": _fmt(s_e),
        "I1": _fmt(i1),
        "I2": _fmt(i2),
        "I3": _fmt(i3),
    }
    if channel.is_rank1_pvm():
        report = entropy.theorem7_report(rho, channel, base)
        payload["theorem7"] = report["inequalities_hold"]
    _emit(payload)
    return 0


def cmd_solve(args) -> int:
    timings = {}
    start = time.perf_counter()
    instance = _read_instance(args.path)
    timings["parse"] = time.perf_counter() - start

    start = time.perf_counter()
    r = cnf.count_satisfying(instance)
    timings["oracle"] = time.perf_counter() - start

    start = time.perf_counter()
    circuit = compiler.compile(instance)
    layout = circuit.layout
    timings["compile"] = time.perf_counter() - start

    start = time.perf_counter()
    state = simulator.init_state(layout, cap=args.width_cap)
    state = simulator.apply(state, circuit.sequence)
    probability = simulator.success_probability(state, layout)
    timings["simulate"] = time.perf_counter() - start

    steps = args.steps if args.steps is not None else 2 * instance.n
    report = {
        "n": instance.n,
        "m": instance.m,
        "mu": layout.mu,
        "total_qubits": layout.total,
        "gate_count": len(circuit.sequence.ops),
        "r": r,
        "probability": _fmt(probability),
    }
    verdicts = []
    if args.engine in ("chaos", "both"):
        start = time.perf_counter()
        params = amplifier.LogisticParams(a=args.a, max_steps=steps)
        decision, trajectory = amplifier.decide_sat(probability, params)
        timings["amplify"] = time.perf_counter() - start
        report["chaos"] = {
            "decision": decision,
            "first_crossing": trajectory.first_crossing,
        }
        verdicts.append(decision)
    if args.engine in ("lindblad", "both"):
        q = float(np.sqrt(probability))
        if q >= 1.0 - 1e-12:  # simulated tautologies round to just under 1
            report["lindblad"] = {"decision": "unsupported", "reason": "q = 1"}
            if args.engine == "lindblad":
                report["status"] = "FAILED"
                _emit({**report, "timings": timings})
                return EXIT_ERROR
        else:
            start = time.perf_counter()
            gamma = complex(args.gamma_re, args.gamma_im)
            decision, classification, _ = lindblad.discriminate(q, gamma)
            timings["lindblad"] = time.perf_counter() - start
            report["lindblad"] = {
                "decision": decision,
                "classification": classification,
            }
            verdicts.append("SAT" if decision == "q_nonzero" else "UNSAT")
    report["timings"] = {k: _fmt(v) for k, v in timings.items()}

    expected = "SAT" if r > 0 else "UNSAT"
    if any(v != expected for v in verdicts):
        report["status"] = "FAILED"
        _emit(report)
        return EXIT_DISAGREEMENT
    report["status"] = expected
    _emit(report)
    return EXIT_SAT if expected == "SAT" else EXIT_UNSAT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chaossat")
    parser.add_argument("--width-cap", type=int, default=simulator.DEFAULT_WIDTH_CAP)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("oracle", help="brute-force satisfying-assignment count")
    p.add_argument("path")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("compile", help="emit the compiled circuit as JSON")
    p.add_argument("path")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("simulate", help="state-vector run and success probability")
    p.add_argument("path")
    p.add_argument("--dump-amplitudes", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("amplify", help="logistic-map amplification of q^2")
    p.add_argument("--q2", required=True, help="initial value, float or rational like 1/1024")
    p.add_argument("--a", type=float, default=amplifier.DEFAULT_A)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--threshold", type=float, default=amplifier.DEFAULT_THRESHOLD)
    p.add_argument("--csv", default=None)
    p.set_defaults(func=cmd_amplify)

    p = sub.add_parser("lindblad", help="open-system damping vs oscillation probe")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--gamma-re", type=float, default=1.0)
    p.add_argument("--gamma-im", type=float, default=0.0)
    p.add_argument("--e0", type=int, default=0)
    p.add_argument("--e1", type=int, default=2)
    p.add_argument("--t-final", type=float, default=None)
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--csv", default=None)
    p.set_defaults(func=cmd_lindblad)

    p = sub.add_parser("entropy", help="mutual-entropy metrics from a JSON spec")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("solve", help="full pipeline on a DIMACS file")
    p.add_argument("path")
    p.add_argument("--engine", choices=("chaos", "lindblad", "both"), default="chaos")
    p.add_argument("--a", type=float, default=amplifier.DEFAULT_A)
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--gamma-re", type=float, default=1.0)
    p.add_argument("--gamma-im", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_solve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
