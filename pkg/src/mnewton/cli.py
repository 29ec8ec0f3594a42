"""Command-line front end for batch verification and report emission.

Exit codes: 0 all requested checks pass, 1 at least one check failed
(margins in the report), 2 input or usage error.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import charcoeff, forms, mclass, niep, pairsums, serialize
from .errors import ConstructionError, GenerationError, InputError

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-9, help="check tolerance")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--override-caps", action="store_true",
                        help="lift the size caps on exhaustive computations")

    p = argparse.ArgumentParser(
        prog="mnewton",
        description="Verification of coefficient inequalities for M- and inverse "
                    "M-matrices, subset-overlap quadratic forms, and NIEP screening.")
    sub = p.add_subparsers(dest="command", required=True)

    cl = sub.add_parser("classify", parents=[common],
                        help="classify a matrix as Z / P / M / inverse-M")
    cl.add_argument("--input", required=True, help="matrix JSON file")

    co = sub.add_parser("coeffs", parents=[common],
                        help="normalized characteristic-polynomial coefficients")
    co.add_argument("--input", help="matrix JSON file")
    co.add_argument("--spectrum", help="spectrum JSON file")

    ne = sub.add_parser("newton", parents=[common],
                        help="Newton inequality margins of a matrix or spectrum")
    ne.add_argument("--input", help="matrix JSON file")
    ne.add_argument("--spectrum", help="spectrum JSON file")

    sf = sub.add_parser("sfunc", parents=[common],
                        help="pair-sum split inequalities (ratio and pointwise)")
    sf.add_argument("--input", required=True, help="matrix JSON file")
    sf.add_argument("--m", type=int, help="split size m (all feasible when omitted)")
    sf.add_argument("--k", type=int, help="overlap k (all feasible when omitted)")

    fo = sub.add_parser("forms", parents=[common],
                        help="build a subset-overlap form, check PSD and structure")
    fo.add_argument("--n", type=int, required=True)
    fo.add_argument("--m", type=int, required=True)
    fo.add_argument("--kind", choices=forms.FORM_KINDS, default="psi")
    fo.add_argument("--export-csv", help="write the form entries as dense CSV")
    fo.add_argument("--export-json", help="write the form as JSON")

    idp = sub.add_parser("identity", parents=[common],
                         help="exact rational overlap-weight identity sum")
    idp.add_argument("--n", type=int, required=True)
    idp.add_argument("--m", type=int, required=True)

    ns = sub.add_parser("niep-screen", parents=[common],
                        help="necessary-condition screening of candidate spectra")
    ns.add_argument("--spectrum", required=True,
                    help="spectrum JSON file, or a directory of them")
    ns.add_argument("--jll-bound", type=int, default=niep.DEFAULT_JLL_BOUND)
    ns.add_argument("--moment-k", type=int, default=niep.DEFAULT_MOMENT_K)

    ge = sub.add_parser("gen", parents=[common],
                        help="emit a seeded matrix of a requested class as JSON")
    ge.add_argument("--input", help="generator-spec JSON file")
    ge.add_argument("--kind", choices=mclass.GENERATOR_KINDS)
    ge.add_argument("--n", type=int)
    ge.add_argument("--seed", type=int)
    ge.add_argument("--margin", type=float, default=0.1)
    return p


def _load_matrix(path: str):
    return serialize.matrix_from_dict(serialize.load_json(path))


def _load_spectrum(path: str):
    return serialize.spectrum_from_dict(serialize.load_json(path))


def _cmd_classify(args):
    a = _load_matrix(args.input)
    rep = mclass.classify(a, tol=args.tol)
    return True, {
        "command": "classify",
        "n": int(a.shape[0]),
        "tol": args.tol,
        "is_z": rep.is_z,
        "is_p": rep.is_p,
        "m_class": rep.m_class,
        "is_inverse_m": rep.is_inverse_m,
        "witnesses": [[list(alpha), value] for alpha, value in rep.witnesses],
        "z_violations": [[list(ij), value] for ij, value in rep.z_violations],
    }


def _coeffs_from_args(args):
    if (args.input is None) == (args.spectrum is None):
        raise InputError("provide exactly one of --input or --spectrum")
    if args.input is not None:
        return charcoeff.normalized_coeffs(_load_matrix(args.input))
    return charcoeff.coeffs_from_spectrum(_load_spectrum(args.spectrum))


def _cmd_coeffs(args):
    c = _coeffs_from_args(args)
    return True, {"command": "coeffs", "n": int(c.size - 1),
                  "coeffs": [float(x) for x in c]}


def _cmd_newton(args):
    c = _coeffs_from_args(args)
    rep = charcoeff.newton_check(c, tol=args.tol)
    return rep.holds, {
        "command": "newton",
        "n": int(c.size - 1),
        "tol": args.tol,
        "coeffs": [float(x) for x in c],
        "margins": [float(x) for x in rep.margins],
        "holds": rep.holds,
        "worst_j": rep.worst_j,
    }


def _cmd_sfunc(args):
    a = _load_matrix(args.input)
    sums = pairsums.MinorPairSums(a, override_cap=args.override_caps)
    n = sums.n
    if args.k is not None and args.m is None:
        raise InputError("flag --k requires --m")
    if args.m is not None:
        if args.k is not None:
            params = [(args.m, args.k)]
        else:
            params = [(m, k) for m, k in pairsums.feasible_ratio_params(n)
                      if m == args.m]
    else:
        params = pairsums.feasible_ratio_params(n)
    if not params:
        raise InputError(f"no feasible (m, k) parameters for n = {n}")
    checks = []
    worst = None
    for m, k in params:
        ratio = pairsums.ratio_check(a, m, k, tol=args.tol, sums=sums)
        point = pairsums.pointwise_check(a, m, k, tol=args.tol, sums=sums)
        checks.append({
            "m": m, "k": k,
            "ratio_margin": ratio.margin, "ratio_holds": ratio.holds,
            "pointwise_margin": point.margin, "pointwise_holds": point.holds,
        })
        key = ratio.margin / ratio.scale
        if worst is None or key < worst[0]:
            worst = (key, m, k)
    holds = all(c["ratio_holds"] and c["pointwise_holds"] for c in checks)
    return holds, {
        "command": "sfunc",
        "n": n,
        "tol": args.tol,
        "checks": checks,
        "holds": holds,
        "worst": {"m": worst[1], "k": worst[2]},
    }


def _cmd_forms(args):
    form = forms.build_form(args.n, args.m, args.kind,
                            override_cap=args.override_caps)
    is_psd, min_eig = forms.psd_check(form, tol=max(args.tol, 1e-12))
    structure = forms.structure_checks(args.n, args.m, tol=max(args.tol, 1e-12),
                                       override_cap=args.override_caps)
    if args.export_csv:
        serialize.form_to_csv(form, args.export_csv)
    if args.export_json:
        with open(args.export_json, "w", encoding="utf-8") as fh:
            fh.write(serialize.dumps_report(serialize.form_to_dict(form)))
    ok = is_psd and structure.ok
    return ok, {
        "command": "forms",
        "n": args.n, "m": args.m, "kind": args.kind,
        "dim": form.dim,
        "is_psd": is_psd,
        "min_eigenvalue": min_eig,
        "structure": {
            "gramian_exact": structure.gramian_exact,
            "complement_exact": structure.complement_exact,
            "reciprocal_max_dev": structure.reciprocal_max_dev,
            "affine_max_dev": structure.affine_max_dev,
            "null_vector_max": structure.null_vector_max,
            "ok": structure.ok,
        },
    }


def _cmd_identity(args):
    total = forms.binomial_identity_sum(args.n, args.m)
    ok = total == 0
    return ok, {"command": "identity", "n": args.n, "m": args.m,
                "sum": str(total), "is_zero": ok}


def _screen_report(rep: niep.ScreeningReport) -> dict:
    return {
        "n": rep.n,
        "conditions": {
            c.name: {"status": c.status, "margin": c.margin,
                     "witness": c.witness, "note": c.note}
            for c in rep.conditions
        },
        "params": {"moment_k": rep.moment_k, "jll_bound": rep.jll_bound,
                   "tol": rep.tol},
        "all_pass": rep.all_pass,
    }


def _cmd_niep_screen(args):
    path = Path(args.spectrum)
    kwargs = {"moment_k": args.moment_k, "jll_bound": args.jll_bound,
              "tol": args.tol}
    if path.is_dir():
        files = sorted(f for f in path.iterdir() if f.suffix == ".json")
        if not files:
            raise InputError(f"no .json spectra found in {path}")
        def one(f):
            rep = _screen_report(niep.screen(_load_spectrum(str(f)), **kwargs))
            rep["file"] = f.name
            return rep
        with ThreadPoolExecutor() as pool:
            reports = list(pool.map(one, files))
        ok = all(r["all_pass"] for r in reports)
        return ok, {"command": "niep-screen", "reports": reports, "all_pass": ok}
    rep = _screen_report(niep.screen(_load_spectrum(str(path)), **kwargs))
    rep["command"] = "niep-screen"
    return rep["all_pass"], rep


def _cmd_gen(args):
    if args.input is not None:
        spec = serialize.generator_spec_from_dict(serialize.load_json(args.input))
    else:
        if args.kind is None or args.n is None or args.seed is None:
            raise InputError("gen requires --input or all of --kind/--n/--seed")
        spec = mclass.GeneratorSpec(kind=args.kind, n=args.n, seed=args.seed,
                                    margin=args.margin)
    return True, serialize.matrix_to_dict(mclass.generate(spec))


_HANDLERS = {
    "classify": _cmd_classify,
    "coeffs": _cmd_coeffs,
    "newton": _cmd_newton,
    "sfunc": _cmd_sfunc,
    "forms": _cmd_forms,
    "identity": _cmd_identity,
    "niep-screen": _cmd_niep_screen,
    "gen": _cmd_gen,
}


def _render_text(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines: list[str] = []
    if isinstance(value, dict):
        for key, val in value.items():
            if isinstance(val, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.extend(_render_text(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {val}")
    elif isinstance(value, list):
        for val in value:
            if isinstance(val, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_render_text(val, indent + 1))
            else:
                lines.append(f"{pad}- {val}")
    else:
        lines.append(f"{pad}{value}")
    return lines


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.tol <= 0:
        print("error: field 'tol' must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        ok, report = _HANDLERS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GenerationError, ConstructionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        print(serialize.dumps_report(report))
    else:
        print("\n".join(_render_text(serialize.jsonable(report))))
    return EXIT_OK if ok else EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
