"""Command-line interface: ``bicomplex {split,eig,measure,verify}``.

Every command prints one JSON report on stdout.  Exit codes:

    0  success
    1  parse or usage error
    2  matrix is not self-adjoint
    3  eigensolver did not converge, or a residual exceeded its tolerance
    4  vector is not cyclic (or no cyclic vector exists)
"""
from __future__ import annotations

import argparse
import hashlib
import sys
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__, io
from .errors import NoConvergence, NotCyclic, NotSelfAdjoint, ParseError
from .hilbert import norm_real
from .measure import WEIGHT_TOL, unitary_to_l2
from .operators import (
    RANK_TOL,
    RESIDUAL_TOL,
    SELF_ADJOINT_TOL,
    find_cyclic_vector,
    hermitian_eig,
    krylov_ranks,
    self_adjoint_defect,
    spectral_decompose,
)
from .verify import FAULTS, run_verify

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NOT_SELF_ADJOINT = 2
EXIT_NO_CONVERGENCE = 3
EXIT_NOT_CYCLIC = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _load_input(path):
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path} is not UTF-8") from exc
    matrix, vector = io.parse_matrix_file(io.loads(text))
    digest = hashlib.sha256(raw).hexdigest()
    return matrix, vector, {"sha256": digest, "n": matrix.n}


def _report(command, inputs=None, **sections):
    out = {"command": command, "version": __version__}
    if inputs is not None:
        out["inputs"] = inputs
    out.update(sections)
    return out


def _is_within(residual, tol, scale):
    return bool(residual <= tol * (1.0 + scale))


# --------------------------------------------------------------------------
# commands; each returns (exit_code, report)
# --------------------------------------------------------------------------

def cmd_split(args):
    t, _, inputs = _load_input(args.input)
    t1, t2 = t.components()
    return EXIT_OK, _report(
        "split", inputs,
        tolerances={},
        outputs={"component1": io.complex_matrix_to_json(t1),
                 "component2": io.complex_matrix_to_json(t2)},
    )


def cmd_eig(args):
    t, _, inputs = _load_input(args.input)
    tols = {"self_adjoint": args.self_adjoint_tol, "residual": args.tol}
    try:
        dec = spectral_decompose(t, self_adjoint_tol=args.self_adjoint_tol)
    except NotSelfAdjoint as exc:
        return EXIT_NOT_SELF_ADJOINT, _report(
            "eig", inputs, tolerances=tols,
            error={"type": "NotSelfAdjoint", "message": str(exc)},
            residuals={"symmetry_defect": exc.defect},
        )
    except NoConvergence as exc:
        return EXIT_NO_CONVERGENCE, _report(
            "eig", inputs, tolerances=tols,
            error={"type": "NoConvergence", "message": str(exc)},
            residuals={"off_diagonal": exc.off_diagonal},
        )
    scale = t.norm_x()
    verdicts = {
        "reconstruction": _is_within(dec.residual, args.tol, scale),
        "unitarity": bool(dec.unitarity_defect <= args.tol),
    }
    code = EXIT_OK if all(verdicts.values()) else EXIT_NO_CONVERGENCE
    return code, _report(
        "eig", inputs, tolerances=tols,
        outputs={
            "U": dec.U.to_list(),
            "M": [h.to_list() for h in dec.M],
            "M_idempotent": [[h.a1 + 0.0, h.a2 + 0.0] for h in dec.M],
            "component_spectra": [(dec.component_spectra[0] + 0.0).tolist(),
                                  (dec.component_spectra[1] + 0.0).tolist()],
        },
        residuals={"reconstruction": dec.residual, "unitarity": dec.unitarity_defect,
                   "symmetry_defect": self_adjoint_defect(t), "norm_x": scale},
        verdicts=verdicts,
    )


def _multiplicities(values, gap):
    counts, last = [], None
    for v in values:
        if last is not None and v - last <= gap:
            counts[-1] += 1
        else:
            counts.append(1)
        last = v
    return max(counts)


def cmd_measure(args):
    t, file_vector, inputs = _load_input(args.input)
    tols = {"rank": args.tol, "weight": args.weight_tol, "residual": RESIDUAL_TOL,
            "weight_sum": 1e-12}
    vector = file_vector
    if args.vector is not None:
        text = args.vector
        doc = io.loads(text) if text.lstrip().startswith(("[", "{")) else io.load(text)
        vector = io.parse_vector(doc, "vector", t.n)
    try:
        if args.find_cyclic:
            vector = find_cyclic_vector(t, tol=args.tol)
            if vector is None:
                t1, t2 = t.components()
                gap = 1e-10 * (1.0 + t.norm_x())
                mult = [_multiplicities(hermitian_eig(tc, hermitian_tol=np.inf)[0], gap)
                        for tc in (t1, t2)]
                return EXIT_NOT_CYCLIC, _report(
                    "measure", inputs, tolerances=tols,
                    error={"type": "NotCyclic",
                           "message": "no cyclic vector exists: a component spectrum is not simple"},
                    outputs={"max_multiplicity": mult},
                )
        if vector is None:
            raise ParseError("measure needs a vector: use --vector, a 'vector' entry, or --find-cyclic")
        rep = unitary_to_l2(t, vector, tol=args.tol, weight_tol=args.weight_tol)
    except NotSelfAdjoint as exc:
        return EXIT_NOT_SELF_ADJOINT, _report(
            "measure", inputs, tolerances=tols,
            error={"type": "NotSelfAdjoint", "message": str(exc)},
            residuals={"symmetry_defect": exc.defect},
        )
    except NotCyclic as exc:
        ranks = exc.ranks if exc.ranks is not None else krylov_ranks(t, vector, args.tol)
        return EXIT_NOT_CYCLIC, _report(
            "measure", inputs, tolerances=tols,
            error={"type": type(exc).__name__, "message": str(exc)},
            outputs={"krylov_ranks": list(ranks), "vector": vector.to_list()},
        )
    moments = rep.moment_residuals(t)
    residuals = {
        "weight_sum": [abs(float(rep.measure.weights1.sum()) - 1.0),
                       abs(float(rep.measure.weights2.sum()) - 1.0)],
        "moments": {str(m): r for m, r in moments.items()},
        "intertwining": [rep.intertwining_residual(c, t) for c in (1, 2)],
        "isometry": [rep.isometry_defect(c) for c in (1, 2)],
        "constant_image": [rep.constant_defect(c) for c in (1, 2)],
    }
    verdicts = {
        "weight_sum": max(residuals["weight_sum"]) <= 1e-12,
        "moments": max(moments.values()) <= RESIDUAL_TOL,
        "intertwining": max(residuals["intertwining"]) <= RESIDUAL_TOL,
        "isometry": max(residuals["isometry"]) <= RESIDUAL_TOL,
        "constant_image": max(residuals["constant_image"]) <= RESIDUAL_TOL,
    }
    code = EXIT_OK if all(verdicts.values()) else EXIT_NO_CONVERGENCE
    return code, _report(
        "measure", inputs, tolerances=tols,
        outputs={
            "vector": vector.to_list(),
            "vector_norm_real": norm_real(vector),
            "found_cyclic": bool(args.find_cyclic),
            "krylov_ranks": [t.n, t.n],
            "measure": rep.measure.to_dict(),
            "support_radius": [rep.measure.radius1, rep.measure.radius2],
            "U1": io.complex_matrix_to_json(rep.U1),
            "U2": io.complex_matrix_to_json(rep.U2),
        },
        residuals=residuals,
        verdicts=verdicts,
    )


def cmd_verify(args):
    matrix, inputs = None, None
    if args.input is not None:
        matrix, _, inputs = _load_input(args.input)
    if args.trials < 0:
        raise ParseError("--trials must be >= 0")
    results = run_verify(seed=args.seed, trials=args.trials, matrix=matrix, fault=args.inject_fault)
    return EXIT_OK, _report(
        "verify", inputs,
        parameters={"seed": args.seed, "trials": args.trials},
        families=[r.to_dict() for r in results],
        passed=all(r.passed for r in results),
    )


# --------------------------------------------------------------------------
# entry point
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bicomplex", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, input_required=True):
        p.add_argument("--input", required=input_required, metavar="PATH",
                       help="matrix file (JSON)")
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="pretty", action="store_false",
                         help="compact machine output (default)")
        fmt.add_argument("--pretty", dest="pretty", action="store_true",
                         help="indented output")
        p.set_defaults(pretty=False)

    p = sub.add_parser("split", help="idempotent components of a matrix")
    common(p)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("eig", help="spectral decomposition U T U* = M")
    common(p)
    p.add_argument("--tol", type=float, default=RESIDUAL_TOL,
                   help="relative reconstruction tolerance (default %(default)g)")
    p.add_argument("--self-adjoint-tol", type=float, default=SELF_ADJOINT_TOL,
                   help="relative symmetry tolerance (default %(default)g)")
    p.set_defaults(func=cmd_eig)

    p = sub.add_parser("measure", help="spectral measure of a cyclic vector")
    common(p)
    p.add_argument("--vector", metavar="PATH|JSON",
                   help="vector file or inline JSON array of 4-tuples")
    p.add_argument("--find-cyclic", action="store_true",
                   help="construct a cyclic vector instead of reading one")
    p.add_argument("--tol", type=float, default=RANK_TOL,
                   help="relative Krylov rank tolerance (default %(default)g)")
    p.add_argument("--weight-tol", type=float, default=WEIGHT_TOL,
                   help="smallest admissible atom weight (default %(default)g)")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("verify", help="randomized invariant suites")
    common(p, input_required=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--inject-fault", choices=FAULTS, default=None, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    command = None
    pretty = False
    try:
        args = parser.parse_args(argv)
        command, pretty = args.command, args.pretty
        code, report = args.func(args)
    except ParseError as exc:
        code = EXIT_USAGE
        report = _report(command or "?", error={"type": "ParseError", "message": str(exc)})
        print(f"bicomplex: {exc}", file=sys.stderr)
    sys.stdout.write(io.dumps(report, pretty=pretty) + "\n")
    if code != EXIT_OK and "error" in report and code != EXIT_USAGE:
        print(f"bicomplex: {report['error']['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
