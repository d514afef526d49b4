"""Command line entry point.  Every command prints one JSON document.

Exit codes: 0 success, 1 usage, 2 domain error, 3 resource guard,
4 relation check or calibration failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .errors import CalibrationError, DomainError, ResourceError

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_RESOURCE, EXIT_RELATION = 0, 1, 2, 3, 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


def _load(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path} is not valid JSON: {exc.msg}") from exc


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


# hecke-p1


def _window(args, d):
    from .bundles import DegreeWindow

    return DegreeWindow.parse(d, args.window, args.p, args.bound)


def cmd_hecke_matrix(args) -> int:
    from .bundles import degree_law_holds, hecke_matrix

    if not 1 <= args.k <= args.d:
        raise DomainError("k must lie in 1..d")
    m = hecke_matrix(args.k, _window(args, args.d))
    _emit({"d": args.d, "p": args.p, **m.to_json(), "degree_law": degree_law_holds(m)})
    return EXIT_OK


def cmd_satake(args) -> int:
    from .bundles import satake_check

    res = satake_check(args.d, args.p, _window(args, args.d))
    _emit(res)
    return EXIT_OK if res["commutators_zero"] else EXIT_RELATION


# surface models


def cmd_sl2_model(args) -> int:
    from .surface import build_efk, calibrate_sl2, check_quantum_relations, grassmann_sl2_model

    model = grassmann_sl2_model(args.d, args.p)
    out = {"d": args.d, "p": args.p, "model": model.to_json()}
    if args.calibrate:
        try:
            calib = calibrate_sl2(model)
        except CalibrationError as exc:
            out["calibration"] = None
            out["relations"] = exc.report.to_json() if exc.report else None
            _emit(out)
            return EXIT_RELATION
        out["calibration"] = calib.to_json()
        out["relations"] = check_quantum_relations(model, {0: build_efk(model, 0, calib)}, [[2]]).to_json()
    _emit(out)
    return EXIT_OK


def _cartan_rows(data):
    if isinstance(data, dict):
        data = data.get("cartan", data.get("matrix"))
    if not isinstance(data, list):
        raise DomainError("Cartan file must hold a matrix (list of rows) or {\"cartan\": rows}")
    return data


def cmd_serre_check(args) -> int:
    from .cartan import GeneralizedCartanMatrix
    from .surface import IncidenceModel, build_efk, calibrate_sl2, check_quantum_relations

    model = IncidenceModel.from_json(_load(args.model))
    gcm = GeneralizedCartanMatrix.of(_cartan_rows(_load(args.cartan)))
    comps = sorted(model.components)
    if len(comps) != gcm.size:
        raise DomainError(f"model has {len(comps)} components but the Cartan matrix has {gcm.size} nodes")
    ops, calibs = {}, {}
    for node, comp in enumerate(comps):
        try:
            calib = calibrate_sl2(model, comp)
        except CalibrationError as exc:
            _emit({"calibrated": False, "component": comp, "relations": exc.report.to_json() if exc.report else None})
            return EXIT_RELATION
        calibs[str(comp)] = calib.to_json()
        ops[node] = build_efk(model, comp, calib)
    report = check_quantum_relations(model, ops, gcm)
    _emit({"calibrated": True, "calibrations": calibs, **report.to_json()})
    return EXIT_OK if report.all_hold else EXIT_RELATION


# curve configurations


def cmd_classify(args) -> int:
    from .curves import CurveConfig, classify_config, kodaira_config

    data = _load(args.config)
    if isinstance(data, dict) and "kodaira" in data:
        cfg = kodaira_config(str(data["kodaira"]))
    else:
        cfg = CurveConfig.from_json(data)
    _emit(classify_config(cfg))
    return EXIT_OK


# presentations


def cmd_presentation_emit(args) -> int:
    from .presentations import (
        presentation_extended_toroidal,
        presentation_quantum_km,
        presentation_to_json,
        presentation_toroidal,
    )

    if args.kind == "extended":
        if args.n is None:
            raise DomainError("--n is required for the extended presentation")
        p = presentation_extended_toroidal(args.n)
    else:
        if args.cartan is None:
            raise DomainError("--cartan is required for this presentation kind")
        rows = _cartan_rows(_load(args.cartan))
        p = presentation_quantum_km(rows) if args.kind == "km" else presentation_toroidal(rows)
    _emit(presentation_to_json(p, args.truncation))
    return EXIT_OK


def cmd_presentation_check(args) -> int:
    from .presentations import Representation, check_representation, presentation_from_json

    if args.truncation < 0:
        raise DomainError("truncation must be nonnegative")
    p = presentation_from_json(_load(args.presentation))
    rep = Representation.from_json(_load(args.rep))
    report = check_representation(p.expand(args.truncation), rep)
    _emit({"kind": p.kind, "truncation": args.truncation, **report.to_json()})
    return EXIT_OK if report.all_hold else EXIT_RELATION


# periodic flags


def _model(args):
    from .flags import TruncatedModel

    return TruncatedModel(args.d, args.n, args.q, args.N)


def cmd_flags_census(args) -> int:
    from .flags import dimension_vectors, enumerate_flags, enumerate_lattices, interior_flags

    m = _model(args)
    lattices = [len(enumerate_lattices(m, k)) for k in range(m.ambient_dim + 1)]
    flags = []
    for v in dimension_vectors(m):
        c = len(enumerate_flags(m, v))
        if c:
            flags.append({"dims": list(v), "count": c})
    _emit(
        {
            "model": m.to_json(),
            "lattices_by_dim": lattices,
            "flags": flags,
            "total_flags": sum(x["count"] for x in flags),
            "interior_flags": len(interior_flags(m)),
        }
    )
    return EXIT_OK


def cmd_flags_orbits(args) -> int:
    from .flags import all_flags, orbit_invariant, random_automorphism, validate_periodic_matrix

    m = _model(args)
    flags = all_flags(m)
    counts: dict = {}
    valid = sums_ok = True
    for a in flags:
        ja = a.jumps(m.d)
        for b in flags:
            inv = orbit_invariant(a, b, m)
            counts[inv] = counts.get(inv, 0) + 1
            valid &= validate_periodic_matrix(inv, m.d, m.n)
            jb = b.jumps(m.d)
            sums_ok &= all(inv.row_sum(i) == ja[i] and inv.col_sum(i) == jb[i] for i in range(m.n))
    rng = random.Random(args.seed)
    broken = 0
    for _ in range(args.samples):
        g = random_automorphism(m, rng)
        a, b = rng.choice(flags), rng.choice(flags)
        broken += orbit_invariant(g.apply_flag(a), g.apply_flag(b), m) != orbit_invariant(a, b, m)
    rows = sorted(({"invariant": k.to_json()["entries"], "pairs": v} for k, v in counts.items()), key=lambda r: r["invariant"])
    _emit(
        {
            "model": m.to_json(),
            "flags": len(flags),
            "invariants": rows,
            "all_valid": valid,
            "sums_match_jumps": sums_ok,
            "automorphism_samples": args.samples,
            "automorphism_failures": broken,
        }
    )
    return EXIT_OK if valid and sums_ok and not broken else EXIT_RELATION


def cmd_flags_convolve(args) -> int:
    from .flags import all_flags, composable_indicators, convolve, delta_diagonal, invariant_table, is_automorphism_invariant

    m = _model(args)
    flags = all_flags(m)
    table = invariant_table(m, flags)
    invs = sorted(set(table.values()), key=lambda x: x.entries)
    rng = random.Random(args.seed)
    unit = delta_diagonal(flags)
    trials = []
    for _ in range(args.samples):
        f, g, h = composable_indicators(table, flags, rng)
        fg = convolve(f, g)
        trials.append(
            {
                "associative": convolve(fg, h) == convolve(f, convolve(g, h)),
                "left_unit": convolve(unit, f) == f,
                "right_unit": convolve(f, unit) == f,
                "product_support": len(fg),
                "automorphism_invariant": is_automorphism_invariant(fg, m, samples=3, seed=args.seed),
            }
        )
    ok = all(all(v for k, v in t.items() if k != "product_support") for t in trials)
    _emit({"model": m.to_json(), "flags": len(flags), "orbits": len(invs), "trials": trials, "all_hold": ok})
    return EXIT_OK if ok else EXIT_RELATION


def cmd_flags_relations(args) -> int:
    from .flags import check_affine_relations

    m = _model(args)
    try:
        res = check_affine_relations(m, margin=args.margin)
    except CalibrationError as exc:
        _emit({"model": m.to_json(), "calibrated": False, "relations": exc.report.to_json() if exc.report else None})
        return EXIT_RELATION
    _emit({"model": m.to_json(), "calibrated": True, **res.to_json()})
    return EXIT_OK if res.all_hold else EXIT_RELATION


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="heckelab", description="Exact computations behind the heckelab library.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    hk = sub.add_parser("hecke-p1", help="Hecke operators on bundles over P^1")
    hks = hk.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name, fn in (("matrix", cmd_hecke_matrix), ("satake-check", cmd_satake)):
        sp = hks.add_parser(name)
        sp.add_argument("--d", type=int, required=True)
        sp.add_argument("--p", type=int, required=True)
        if name == "matrix":
            sp.add_argument("--k", type=int, required=True)
        sp.add_argument("--window", required=True, help="total degree range lo:hi")
        sp.add_argument("--bound", type=int, default=8, help="bound on individual summand degrees")
        sp.set_defaults(func=fn)

    sl = sub.add_parser("sl2-model", help="Grassmannian incidence model")
    sl.add_argument("--d", type=int, required=True)
    sl.add_argument("--p", type=int, required=True)
    sl.add_argument("--calibrate", action="store_true")
    sl.set_defaults(func=cmd_sl2_model)

    se = sub.add_parser("serre-check", help="quantum Kac-Moody relations on an incidence model")
    se.add_argument("--model", required=True)
    se.add_argument("--cartan", required=True)
    se.set_defaults(func=cmd_serre_check)

    cf = sub.add_parser("classify-fiber", help="affine type of a curve configuration")
    cf.add_argument("--config", required=True)
    cf.set_defaults(func=cmd_classify)

    pr = sub.add_parser("presentation", help="emit or check presentations")
    prs = pr.add_subparsers(dest="action", required=True, parser_class=_Parser)
    em = prs.add_parser("emit")
    em.add_argument("--kind", choices=["km", "toroidal", "extended"], required=True)
    em.add_argument("--cartan")
    em.add_argument("--n", type=int)
    em.add_argument("--truncation", type=int)
    em.set_defaults(func=cmd_presentation_emit)
    ck = prs.add_parser("check")
    ck.add_argument("--presentation", required=True)
    ck.add_argument("--rep", required=True)
    ck.add_argument("--truncation", type=int, required=True)
    ck.set_defaults(func=cmd_presentation_check)

    fl = sub.add_parser("flags", help="periodic lattice flags")
    fls = fl.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name, fn in (
        ("census", cmd_flags_census),
        ("orbits", cmd_flags_orbits),
        ("convolve", cmd_flags_convolve),
        ("relations", cmd_flags_relations),
    ):
        sp = fls.add_parser(name)
        sp.add_argument("--d", type=int, required=True)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--q", type=int, required=True)
        sp.add_argument("--N", type=int, required=True)
        if name in ("orbits", "convolve"):
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--samples", type=int, default=100 if name == "orbits" else 3)
        if name == "relations":
            sp.add_argument("--margin", type=int)
        sp.set_defaults(func=fn)
    return p


def _join_negative_values(argv: list[str]) -> list[str]:
    """Let `--window -6:0` through; argparse would read -6:0 as an option."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok == "--window" and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"--window={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _join_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        sys.stderr.write(f"heckelab: error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    try:
        return args.func(args)
    except ResourceError as exc:
        _emit({"error": "resource", "message": str(exc)})
        return EXIT_RESOURCE
    except DomainError as exc:
        _emit({"error": "domain", "message": str(exc)})
        return EXIT_DOMAIN
    except CalibrationError as exc:
        _emit({"error": "calibration", "message": str(exc)})
        return EXIT_RELATION


if __name__ == "__main__":
    sys.exit(main())
