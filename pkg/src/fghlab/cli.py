"""Command-line front end.

Formulas are given on the command line, models and simulation scenarios in
JSON files. Every command is deterministic: the same invocation produces
byte-identical output. Exit codes: 0 for any computed verdict (refuted and
negative verdicts included), 1 for an internal verification failure, 2 for
input errors, 3 when the prover's node budget runs out
(FGHLAB_NODE_BUDGET overrides the default).
"""

import argparse
import json
import sys

from . import classical, extensions, fghsim, glprover, kripke, surgery
from .formula import parse_formula, print_formula


def _emit(obj):
    print(json.dumps(obj, sort_keys=True))


def _load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_model(path):
    return kripke.model_from_dict(_load_json(path))


def _cmd_classify(args):
    f = parse_formula(args.formula)
    verdict = classical.classify(f)
    if args.json:
        _emit({"classification": verdict})
    else:
        print(verdict)
    return 0


def _print_substitution(sub, args):
    if args.json:
        _emit({"fresh": args.fresh,
               "substitution": {name: print_formula(g)
                                for name, g in sub.items()}})
    else:
        for name in sorted(sub):
            print("%s := %s" % (name, print_formula(sub[name])))
    return 0


def _cmd_lemma1(args):
    f = parse_formula(args.formula)
    return _print_substitution(
        classical.lemma1_synthesize(f, fresh=args.fresh), args)


def _cmd_lemma2(args):
    f = parse_formula(args.formula)
    q_names = [q for q in args.parameters.split(",") if q]
    return _print_substitution(
        classical.lemma2_synthesize(f, q_names, fresh=args.fresh), args)


def _cmd_decide_gl(args):
    f = parse_formula(args.formula)
    verdict = glprover.gl_proves(f)
    if isinstance(verdict, glprover.Proved):
        if args.json:
            _emit({"verdict": "proved",
                   "trace": {"expansions": verdict.trace.expansions,
                             "assignments": verdict.trace.assignments_tried,
                             "goals": verdict.trace.distinct_goals}})
        else:
            print("PROVED")
    else:
        model = kripke.model_to_dict(verdict.countermodel)
        if args.json:
            _emit({"verdict": "refuted", "countermodel": model})
        else:
            print("REFUTED")
            _emit(model)
    return 0


def _bit_result(bit, args):
    if args.json:
        _emit({"proved": bit})
    else:
        print("PROVED" if bit else "NOT PROVED")
    return 0


def _cmd_decide_gls(args):
    return _bit_result(extensions.gls_proves(parse_formula(args.formula)),
                       args)


def _cmd_decide_glw_box(args):
    return _bit_result(
        extensions.glw_proves_box(parse_formula(args.formula)), args)


def _cmd_decide_glw_negbox(args):
    return _bit_result(
        extensions.glw_proves_negbox(parse_formula(args.formula)), args)


def _cmd_decide_glnfs(args):
    return _bit_result(
        extensions.glnfs_proves(args.s, parse_formula(args.formula)), args)


def _cmd_nontrifling(args):
    report = extensions.nontrifling(parse_formula(args.formula))
    if args.json:
        _emit(report.to_dict())
    else:
        print("NONTRIFLING" if report.verdict else "TRIFLING")
    return 0


def _finish_merge(cert, args):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(kripke.model_to_dict(cert.model), fh, sort_keys=True)
            fh.write("\n")
    _emit(cert.to_dict())
    return 0


def _cmd_merge_nontrifling(args):
    cert = surgery.merge_nontrifling(
        _load_model(args.model), _load_model(args.model0),
        parse_formula(args.formula), args.chain_len)
    return _finish_merge(cert, args)


def _cmd_merge_mt(args):
    cert = surgery.merge_mt(
        _load_model(args.model), _load_model(args.model0),
        parse_formula(args.formula))
    return _finish_merge(cert, args)


def _cmd_merge_mt4(args):
    cert = surgery.merge_mt4(
        _load_model(args.model), _load_model(args.model0),
        parse_formula(args.formula), args.s)
    return _finish_merge(cert, args)


def _position(raw):
    if raw is None:
        return fghsim.ABSENT
    if not isinstance(raw, int) or raw < 0:
        raise ValueError("witness position must be null or a natural number")
    return raw


def _report_out(payload, report, args):
    if args.json:
        _emit({"run": payload, "report": [e.to_dict() for e in report]})
    else:
        for key in sorted(payload):
            print("%s: %s" % (key, json.dumps(payload[key], sort_keys=True)))
        for e in report:
            line = "%s %s" % (e.status.upper(), e.name)
            print(line if not e.detail else line + ": " + e.detail)
    return 0


def _cmd_simulate_solovay(args):
    sc = _load_json(args.scenario)
    model = (kripke.model_from_dict(sc["model"]) if "model" in sc
             else _load_model(sc["model_file"]))
    a = parse_formula(sc["formula"])
    proofs = {int(k): v for k, v in sc.get("neg_lambda_proofs", {}).items()}
    run = fghsim.solovay_run(
        model, _position(sc.get("sigma_pos")),
        _position(sc.get("fa_proof_pos")), proofs, sc["horizon"])
    report = fghsim.solovay_check(run, model, a)
    return _report_out(run.to_dict(), report, args)


def _cmd_simulate_rosser(args):
    sc = _load_json(args.scenario)
    events = {int(k): v for k, v in sc.get("events", {}).items()}
    stream = fghsim.ProofStream(sc["horizon"], events,
                                sc.get("infinite_proofs", False))
    tau0 = _position(sc.get("tau0_pos"))
    tau1 = _position(sc.get("tau1_pos"))
    run = fghsim.rosser_run(stream, tau0, tau1)
    report = fghsim.mtr_check(run, stream, tau0, tau1)
    return _report_out(run.to_dict(), report, args)


def _cmd_enumerate_models(args):
    names = tuple(v for v in args.variables.split(",") if v)
    count = 0
    for m in kripke.enumerate_models(args.max_worlds, names):
        count += 1
        if not args.count:
            _emit(kripke.model_to_dict(m))
    if args.count:
        print(count)
    return 0


def _add_json(p):
    p.add_argument("--json", action="store_true",
                   help="emit JSON instead of plain text")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="fghlab",
        description="deciders, model surgery and proof-stream simulations "
                    "for provability logic")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized property suites; accepted "
                             "on every call for reproducible wrappers")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="truth-table classification")
    p.add_argument("formula")
    _add_json(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("synthesize", help="classical formula synthesis")
    syn = p.add_subparsers(dest="kind", required=True)
    p1 = syn.add_parser("lemma1")
    p1.add_argument("formula")
    p1.add_argument("--fresh", default="r")
    _add_json(p1)
    p1.set_defaults(func=_cmd_lemma1)
    p2 = syn.add_parser("lemma2")
    p2.add_argument("formula")
    p2.add_argument("--parameters", required=True,
                    help="comma-separated parameter variables")
    p2.add_argument("--fresh", default="r")
    _add_json(p2)
    p2.set_defaults(func=_cmd_lemma2)

    p = sub.add_parser("decide", help="theoremhood in GL and extensions")
    dec = p.add_subparsers(dest="logic", required=True)
    for name, func in (("gl", _cmd_decide_gl), ("gls", _cmd_decide_gls),
                       ("glw-box", _cmd_decide_glw_box),
                       ("glw-negbox", _cmd_decide_glw_negbox)):
        q = dec.add_parser(name)
        q.add_argument("formula")
        _add_json(q)
        q.set_defaults(func=func)
    q = dec.add_parser("gl-nfs")
    q.add_argument("formula")
    q.add_argument("-s", type=int, required=True,
                   help="height marker index")
    _add_json(q)
    q.set_defaults(func=_cmd_decide_glnfs)

    p = sub.add_parser("nontrifling", help="nontrifling classification")
    p.add_argument("formula")
    _add_json(p)
    p.set_defaults(func=_cmd_nontrifling)

    p = sub.add_parser("merge", help="verified model merges")
    mer = p.add_subparsers(dest="shape", required=True)
    q = mer.add_parser("nontrifling")
    q.add_argument("model")
    q.add_argument("model0")
    q.add_argument("formula")
    q.add_argument("--chain-len", type=int, default=3)
    q.add_argument("--out", help="write the merged model to this file")
    _add_json(q)
    q.set_defaults(func=_cmd_merge_nontrifling)
    q = mer.add_parser("mt")
    q.add_argument("model")
    q.add_argument("model0")
    q.add_argument("formula")
    q.add_argument("--out")
    _add_json(q)
    q.set_defaults(func=_cmd_merge_mt)
    q = mer.add_parser("mt4")
    q.add_argument("model")
    q.add_argument("model0")
    q.add_argument("formula")
    q.add_argument("-s", type=int, required=True)
    q.add_argument("--out")
    _add_json(q)
    q.set_defaults(func=_cmd_merge_mt4)

    p = sub.add_parser("simulate", help="proof-stream simulations")
    sim = p.add_subparsers(dest="style", required=True)
    q = sim.add_parser("solovay")
    q.add_argument("scenario", help="JSON scenario file")
    _add_json(q)
    q.set_defaults(func=_cmd_simulate_solovay)
    q = sim.add_parser("rosser")
    q.add_argument("scenario", help="JSON scenario file")
    _add_json(q)
    q.set_defaults(func=_cmd_simulate_rosser)

    p = sub.add_parser("enumerate-models",
                       help="canonical rooted frames with valuations")
    p.add_argument("--max-worlds", type=int, required=True)
    p.add_argument("--variables", default="",
                   help="comma-separated variable names")
    p.add_argument("--count", action="store_true")
    _add_json(p)
    p.set_defaults(func=_cmd_enumerate_models)

    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except glprover.BudgetExceeded as e:
        print("error: %s" % e, file=sys.stderr)
        return 3
    except surgery.ClaimFail as e:
        print("error: %s" % e, file=sys.stderr)
        return 1
    except json.JSONDecodeError as e:
        print("error: bad JSON: %s" % e, file=sys.stderr)
        return 2
    except KeyError as e:
        print("error: missing field %s" % e, file=sys.stderr)
        return 2
    except (ValueError, TypeError, OSError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
