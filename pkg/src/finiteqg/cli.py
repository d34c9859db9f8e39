"""Command-line front end.

Subcommands: verify, haar, dual, orbits, clifford, vergnioux,
classical-orbits.  Input files follow the schemas in
:mod:`finiteqg.io`; bare file names are also resolved against the data
files shipped with the package.  Exit codes: 0 all checks pass, 1 a
numeric check failed, 2 malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from . import classical, clifford, io, orbits
from .core import DEFAULT_SEED, Tolerance
from .duality import dualize, mult_unitary
from .haar import HaarError, haar_state
from .hopf import HopfAxiomError, verify_hopf
from .wedderburn import WedderburnError


class Run:
    """Collects named checks and structured results for one command."""

    def __init__(self, command, inputs, tol: Tolerance, seed: int):
        self.report = {
            "command": command,
            "inputs": [str(p) for p in inputs],
            "tolerance": tol.eps,
            "seed": seed,
            "checks": [],
            "results": {},
        }
        self.tol = tol

    def check(self, name: str, residual: float, scale: float = 1.0,
              passed=None):
        ok = (bool(passed) if passed is not None
              else self.tol.is_zero(float(residual), scale))
        self.report["checks"].append({
            "name": name,
            "residual": float(residual),
            "tolerance": self.tol.eps,
            "passed": ok,
        })

    def flag(self, name: str, ok: bool):
        self.report["checks"].append({
            "name": name, "residual": 0.0 if ok else 1.0,
            "tolerance": self.tol.eps, "passed": bool(ok),
        })

    def result(self, key, value):
        self.report["results"][key] = value

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.report["checks"])

    def emit(self, json_path=None) -> int:
        for c in self.report["checks"]:
            mark = "PASS" if c["passed"] else "FAIL"
            print(f"[{mark}] {c['name']:<38s} residual={c['residual']:.3e}")
        for key, value in self.report["results"].items():
            print(f"{key}: {json.dumps(value)}")
        status = 0 if self.passed else 1
        print("status:", "ok" if status == 0 else "CHECKS FAILED")
        if json_path:
            Path(json_path).write_text(
                json.dumps(self.report, indent=1, sort_keys=True))
        return status


def resolve(path_str: str) -> Path:
    p = Path(path_str)
    if p.exists():
        return p
    packaged = resources.files("finiteqg") / "data" / path_str
    if packaged.is_file():
        return Path(str(packaged))
    raise io.SchemaError(f"no such input file: {path_str}")


def _complex_list(vec):
    # result values are rounded for display; residuals stay exact
    return [[round(float(v.real), 12), round(float(v.imag), 12)]
            for v in np.asarray(vec)]


def _load_verified_hopf(run: Run, path, tol):
    H = io.load_hopf(path, tol, verify=False)
    rep = verify_hopf(H, tol)
    for name, res in sorted(rep.residuals.items()):
        run.check(f"hopf:{name}", res, rep.scales.get(name, 1.0))
    if not rep.passed:
        raise HopfAxiomError("input fails Hopf axioms: "
                             + ", ".join(rep.failures()), rep)
    return H


def cmd_verify(args, run: Run, tol):
    H = io.load_hopf(resolve(args.hopf), tol, verify=False)
    rep = verify_hopf(H, tol)
    for name, res in sorted(rep.residuals.items()):
        run.check(name, res, rep.scales.get(name, 1.0))
    run.result("name", H.name)
    run.result("blocks", [int(n) for n in H.algebra.block_dims])


def cmd_haar(args, run: Run, tol):
    H = _load_verified_hopf(run, resolve(args.hopf), tol)
    h = haar_state(H, tol)
    run.check("haar_system_residual", h.residual)
    run.check("gram_positive", 0.0,
              passed=h.min_gram_eigenvalue() > 1e-12)
    run.result("haar_vector", _complex_list(h.vector))
    run.result("gram_min_eigenvalue", h.min_gram_eigenvalue())


def cmd_dual(args, run: Run, tol):
    H = _load_verified_hopf(run, resolve(args.hopf), tol)
    D = dualize(H, tol, args.seed)
    w = mult_unitary(D, tol)
    for name, res in sorted(w.residuals.items()):
        run.check(f"mult_unitary:{name}", res)
    run.result("dual_blocks", [int(n) for n in D.irr_dims])


def _load_morphism(run: Run, D, H, sub_path, tol, seed):
    kind, matrix = io.load_subgroup(sub_path, H.dim)
    if kind == "pi":
        return orbits.subgroup_from_dual_matrix(D, matrix, tol)
    return clifford.quotient_subgroup(H, D, matrix, tol)


def _orbit_pipeline(run: Run, args, tol):
    H = _load_verified_hopf(run, resolve(args.hopf), tol)
    D = dualize(H, tol, args.seed)
    m = _load_morphism(run, D, H, resolve(args.subgroup), tol, args.seed)
    run.result("subgroup_dim", int(m.rank))
    run.result("subgroup_normal", bool(m.normal))
    X = orbits.homogeneous_space(D, m, tol, args.seed)
    run.result("homogeneous_blocks", [int(n) for n in X.block_dims])
    alpha = orbits.homogeneous_action(D, X, tol)
    P = orbits.relation(alpha, tol)
    run.flag("relation_symmetric", P.symmetric)
    run.flag("relation_equivalence", P.is_equivalence)
    run.check("invariant_projections", P.invariance_residual)
    run.result("relation", P.relation.astype(int).tolist())
    run.result("classes", [list(map(int, c)) for c in P.classes])
    return D, m, X, alpha, P


def cmd_orbits(args, run: Run, tol):
    D, m, X, alpha, P = _orbit_pipeline(run, args, tol)
    rep = orbits.central_supports(D, X, P, tol)
    run.check("central_support_class_sums", rep.class_sum_residual)
    run.check("central_support_orthogonality", rep.orthogonality_residual)
    run.flag("supports_match_relation", rep.supports_match_relation)
    run.result("supports", [sorted(map(int, s)) for s in rep.supports])


def cmd_clifford(args, run: Run, tol):
    D, m, X, alpha, P = _orbit_pipeline(run, args, tol)
    T = clifford.restriction_table(D, X, P, tol)
    run.flag("one_orbit_per_row", T.one_orbit_per_row)
    run.flag("dimension_count", T.dimension_count_ok)
    rep = clifford.kac_constancy_check(D, X, T, P, tol)
    run.flag("dims_constant_on_classes", rep.dims_constant)
    run.flag("mults_constant_on_classes", rep.mults_constant)
    run.check("markov_trace_proportionality", rep.markov_residual)
    run.result("irr_dims", [int(n) for n in D.irr_dims])
    run.result("restriction_table", T.mult.tolist())
    if not m.normal:
        run.result("note", "subgroup not normal: homogeneous-space blocks "
                           "are not irreducibles of a quotient-side subgroup")


def cmd_vergnioux(args, run: Run, tol):
    H = _load_verified_hopf(run, resolve(args.hopf), tol)
    D = dualize(H, tol, args.seed)
    m = _load_morphism(run, D, H, resolve(args.subgroup), tol, args.seed)
    V = clifford.vergnioux_relation(D, m, tol, args.seed)
    run.flag("fusion_equals_support", V.agree)
    run.flag("support_projection_positivity", V.support_positivity_ok)
    run.result("fusion_route", V.fusion.astype(int).tolist())
    run.result("support_route", V.support.astype(int).tolist())
    run.result("classes", [list(map(int, c)) for c in V.classes])


def cmd_classical_orbits(args, run: Run, tol):
    H = _load_verified_hopf(run, resolve(args.hopf), tol)
    M = io.load_magic(resolve(args.magic), H)
    rep = classical.verify_magic(M, tol)
    for name, res in sorted(rep.residuals.items()):
        run.check(f"magic:{name}", res)
    rep.raise_for_failure()
    co = classical.classical_orbits(M, tol)
    run.check("counting_measure_invariance", co.counting_residual)
    h = haar_state(H, tol)
    hv = classical.haar_values(M, h, co.partition, tol)
    run.check("haar_values_on_class", hv.on_class_residual)
    run.check("haar_values_off_class", hv.off_class_residual)
    run.result("classes", [list(map(int, c)) for c in co.classes])
    run.result("ergodic", bool(co.ergodic))
    run.result("haar_values", np.round(hv.values, 12).tolist())


COMMANDS = {
    "verify": (cmd_verify, ["hopf"]),
    "haar": (cmd_haar, ["hopf"]),
    "dual": (cmd_dual, ["hopf"]),
    "orbits": (cmd_orbits, ["hopf", "subgroup"]),
    "clifford": (cmd_clifford, ["hopf", "subgroup"]),
    "vergnioux": (cmd_vergnioux, ["hopf", "subgroup"]),
    "classical-orbits": (cmd_classical_orbits, ["hopf", "magic"]),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finiteqg",
        description="finite quantum groups: verification, Haar states, "
                    "duality, orbits, restriction tables")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, positionals) in COMMANDS.items():
        p = sub.add_parser(name)
        for pos in positionals:
            p.add_argument(pos)
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--json", dest="json_path", default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    tol = Tolerance(args.tol)
    handler, positionals = COMMANDS[args.command]
    inputs = [getattr(args, p) for p in positionals]
    run = Run(args.command, inputs, tol, args.seed)
    try:
        handler(args, run, tol)
    except io.SchemaError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except (HopfAxiomError, HaarError, WedderburnError,
            orbits.MorphismError, clifford.NormalityError,
            ValueError) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        run.emit(args.json_path)
        return 1
    return run.emit(args.json_path)


if __name__ == "__main__":
    sys.exit(main())
