"""Command-line entry point.

Exit codes: 0 success, 1 domain error (or a failed ``verify``), 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import classes, hall, oig, orientation, solvers, transduct
from ._validation import as_fraction
from .config import Config
from .exceptions import OIGError


def fmt_rational(x) -> str:
    x = Fraction(x)
    return f"{x} (≈ {float(x):.6g})"


def _emit(text: str, out=None):
    if out:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _read_graph(path):
    with open(path) as fh:
        return oig.import_json(fh.read())


def _read_orientation(g, path):
    with open(path) as fh:
        return orientation.loads(g, fh.read())


def _parse_sample(text, hclass):
    parts = [p for p in text.replace(" ", "").split(",") if p]
    out = []
    for p in parts:
        if p.lstrip("-").isdigit():
            out.append(int(p))
        else:
            out.append(hclass.point_index(p))
    return tuple(out)


# -- subcommands ---------------------------------------------------------

def cmd_class_gen(args, cfg):
    if args.kind == "cantor":
        h = classes.gen_cantor(args.d, cap=cfg.cantor_cap)
    elif args.kind == "random":
        seed = cfg.seed if args.seed is None else args.seed
        h = classes.gen_random(args.points, args.labels, args.hypotheses, seed)
    else:
        h = classes.gen_full(args.points, args.labels)
    _emit(_json(h.to_dict()), args.output)


def cmd_class_validate(args, cfg):
    h = classes.load_class(args.file)
    print(f"ok: {len(h)} hypotheses over {h.num_points} points, {h.num_labels} labels")


def cmd_oig_build(args, cfg):
    h = classes.load_class(args.cls)
    S = _parse_sample(args.sample, h)
    g = (oig.build_agnostic_oig(h, S, cap=cfg.agnostic_cap) if args.agnostic
         else oig.build_oig(h, S))
    _emit(oig.export(g, "json"), args.output)


def cmd_hall(args, cfg):
    g = _read_graph(args.graph)
    if args.method == "brute":
        value = hall.hall_density_brute(g, cap=cfg.vertex_cap)
    else:
        value = hall.hall_density_flow(g)
    if args.deterministic:
        value = Fraction(value.numerator // value.denominator)
    print(fmt_rational(value))


def cmd_hall_complexity(args, cfg):
    h = classes.load_class(args.cls)
    mode = oig.AGNOSTIC if args.agnostic else oig.REALIZABLE
    threads = cfg.resolve_threads(args.threads)
    res = hall.hall_complexity(h, args.n, mode, args.deterministic, cap=cfg.sequence_cap,
                               method=args.method, n_jobs=threads if threads > 1 else None)
    print(_json(res.to_dict()))


def cmd_orient(args, cfg):
    g = _read_graph(args.graph)
    if args.algo == "flow":
        o = solvers.flow_orient(g, args.alpha)
        if o.is_deterministic():
            o = o.to_deterministic(g)
    elif args.algo == "kcore":
        o = solvers.kcore_orient(g).orientation
    else:
        sol = solvers.maxent_solve(g, None if args.alpha is None else as_fraction(args.alpha),
                                   tol=cfg.kkt_tol, lambda_cap=cfg.lambda_cap,
                                   max_iter=cfg.max_iter)
        if args.solution:
            _emit(_json(sol.to_dict()), args.solution)
        o = solvers.maxent_sampler(g, sol)
    _emit(orientation.dumps(g, o), args.output)


def cmd_regularizer(args, cfg):
    g = _read_graph(args.graph)
    table = solvers.extract_regularizer(solvers.kcore_orient(g), g.n)
    _emit(_json(table.to_dict()), args.output)


def cmd_simulate(args, cfg):
    g = _read_graph(args.graph)
    o = _read_orientation(g, args.learner)
    learner = transduct.TransductiveLearner.from_orientation(g, o)
    errs = transduct.vertex_errors(g, learner)
    j = max(range(len(errs)), key=lambda k: errs[k])
    rep = transduct.ErrorReport(errs[j], tuple(g.sample or ()), g.vertices[j], tuple(errs))
    print(_json(rep.to_dict()))


def cmd_verify(args, cfg):
    g = _read_graph(args.graph)
    o = _read_orientation(g, args.orient)
    check = orientation.verify_coorientation if args.coorient else orientation.verify_orientation
    ok = check(g, o, args.alpha)
    kind = "coorientation" if args.coorient else "orientation"
    print(f"{kind} at alpha={as_fraction(args.alpha)}: {'ok' if ok else 'FAILED'}")
    return 0 if ok else 1


def cmd_demo_cantor(args, cfg):
    seed = cfg.seed if args.seed is None else args.seed
    rep = transduct.cantor_failure_demo(args.d, args.m, trials=args.trials, seed=seed,
                                        strict=args.strict)
    if args.json:
        print(_json(rep.to_dict()))
        return
    print(f"expected_error: {fmt_rational(rep.expected_error)}")
    print(f"threshold_exceeded: {str(rep.threshold_exceeded).lower()}")
    if not rep.in_proof_regime:
        print("note: m >= d/4, outside the regime where the error is guaranteed to be >= 1/2")
    if rep.trials:
        print(f"monte_carlo: {rep.mc_estimate:.4f} over {rep.trials} trials "
              f"(sigma {rep.mc_sigma:.4f}, within 3 sigma: {str(rep.mc_within_3sigma).lower()})")


def cmd_export(args, cfg):
    g = _read_graph(args.graph)
    _emit(oig.export(g, args.format), args.output)


# -- parser --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="oiglab", description=__doc__.splitlines()[0])
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--threads", type=int, help="worker count (overrides OIGLAB_THREADS)")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("class", help="generate or validate hypothesis classes")
    csub = c.add_subparsers(dest="action", required=True)
    g = csub.add_parser("gen")
    g.add_argument("--kind", choices=["cantor", "random", "full"], required=True)
    g.add_argument("--d", type=int, default=4)
    g.add_argument("--points", type=int, default=3)
    g.add_argument("--labels", type=int, default=2)
    g.add_argument("--hypotheses", type=int, default=4)
    g.add_argument("--seed", type=int)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_class_gen)
    v = csub.add_parser("validate")
    v.add_argument("file")
    v.set_defaults(func=cmd_class_validate)

    o = sub.add_parser("oig", help="build one-inclusion graphs")
    osub = o.add_subparsers(dest="action", required=True)
    b = osub.add_parser("build")
    b.add_argument("--class", dest="cls", required=True)
    b.add_argument("--sample", required=True, help="comma-separated point indices or names")
    b.add_argument("--agnostic", action="store_true")
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_oig_build)

    h = sub.add_parser("hall", help="Hall density of a graph")
    h.add_argument("graph")
    h.add_argument("--method", choices=["brute", "flow"], default="flow")
    h.add_argument("--deterministic", action="store_true", help="report the floor")
    h.set_defaults(func=cmd_hall)

    hc = sub.add_parser("hall-complexity", help="Hall complexity of a class")
    hc.add_argument("--class", dest="cls", required=True)
    hc.add_argument("--n", type=int, required=True)
    hc.add_argument("--agnostic", action="store_true")
    hc.add_argument("--deterministic", action="store_true")
    hc.add_argument("--method", choices=["brute", "flow"], default="flow")
    hc.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    hc.set_defaults(func=cmd_hall_complexity)

    r = sub.add_parser("orient", help="orient a graph")
    r.add_argument("graph")
    r.add_argument("--algo", choices=["kcore", "flow", "maxent"], required=True)
    r.add_argument("--alpha", help="target in-degree p/q (default: Hall density)")
    r.add_argument("--solution", help="also write the max-entropy dual solution here")
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_orient)

    rg = sub.add_parser("regularizer", help="regularizer from k-core peeling")
    rsub = rg.add_subparsers(dest="action", required=True)
    x = rsub.add_parser("extract")
    x.add_argument("graph")
    x.add_argument("-o", "--output")
    x.set_defaults(func=cmd_regularizer)

    s = sub.add_parser("simulate", help="transductive errors of a learner")
    s.add_argument("graph")
    s.add_argument("--learner", required=True, help="orientation JSON file")
    s.set_defaults(func=cmd_simulate)

    vf = sub.add_parser("verify", help="check an (co)orientation property")
    vf.add_argument("graph")
    vf.add_argument("--orient", required=True)
    vf.add_argument("--alpha", required=True)
    vf.add_argument("--coorient", action="store_true")
    vf.set_defaults(func=cmd_verify)

    d = sub.add_parser("demo", help="demonstrations")
    dsub = d.add_subparsers(dest="action", required=True)
    ca = dsub.add_parser("cantor")
    ca.add_argument("--d", type=int, required=True)
    ca.add_argument("--m", type=int, required=True)
    ca.add_argument("--trials", type=int, default=0)
    ca.add_argument("--seed", type=int)
    ca.add_argument("--json", action="store_true")
    ca.add_argument("--strict", action="store_true", help="require m < d/4")
    ca.set_defaults(func=cmd_demo_cantor)

    ex = sub.add_parser("export", help="export a graph")
    ex.add_argument("graph")
    ex.add_argument("--format", choices=["dot", "json"], required=True)
    ex.add_argument("-o", "--output")
    ex.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = Config.load(args.config)
        rc = args.func(args, cfg)
    except (OIGError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0 if rc is None else rc


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
