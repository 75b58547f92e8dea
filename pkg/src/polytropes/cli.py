"""Command-line driver.

    polytropes kleene --input c.json
    polytropes eigen --input c.json
    polytropes binomials --n 5 --m 2
    polytropes relations --n 4
    polytropes enumerate --n 5 --mode maximal --out run5
    polytropes resume run5
    polytropes classify --n 4 --records run4/kept.jsonl --out cls4
    polytropes verify --n 4 --level full

Exit status: 0 success, 1 a verification mismatch, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import sys
import time
from collections import Counter

from . import __version__
from .binomials import BadBlockSize, enumerate_binomials, kernel_dimension, relation_circuits
from .core import NegativeCycle, WeightMatrix, format_rational, kleene_star
from .fans import (ConeRecord, CorruptCheckpoint, EnumerationRun, SeedFailure,
                   enumerate_all_cones, filter_boundary, group_by_linearity)
from .geometry import classify, polytrope_of, shape_of, vertices

TABLE1_N4 = {4: 1, 5: 1, 6: 5, 7: 6, 8: 34, 9: 38, 10: 81, 11: 101, 12: 151, 13: 144,
             14: 154, 15: 116, 16: 92, 17: 46, 18: 28, 19: 9, 20: 6}
TABLE3_N4 = {1: 123, 2: 10, 3: 89, 5: 19, 6: 2, 9: 19, 15: 2, 18: 3, 27: 3, 37: 1,
             42: 1, 81: 1}


class UsageError(Exception):
    pass


def _sha256(path):
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def _write_json(path, obj):
    tmp = path + ".tmp"
    with open(tmp, "w") as f:
        json.dump(obj, f, indent=2, sort_keys=True)
        f.write("\n")
    os.replace(tmp, path)


def _write_records(path, records):
    with open(path, "w") as f:
        for r in records:
            f.write(json.dumps(r.to_json(), sort_keys=True, separators=(",", ":")) + "\n")


def read_records(path):
    with open(path) as f:
        return [ConeRecord.from_json(json.loads(line)) for line in f if line.strip()]


def _write_hist_csv(path, key, hist):
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow([key, "classes"])
        for k, v in sorted(hist.items()):
            w.writerow([k, v])


def _load_matrix(path):
    try:
        with open(path) as f:
            return WeightMatrix.from_json(f.read())
    except (OSError, ValueError, TypeError, ZeroDivisionError) as e:
        raise UsageError("--input %s: %s" % (path, e))


def _emit(args, obj, text):
    if args.json:
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(text)


# -- small commands ----------------------------------------------------

def cmd_kleene(args):
    c = _load_matrix(args.input)
    try:
        s = kleene_star(c)
    except NegativeCycle as e:
        print("error: %s" % e, file=sys.stderr)
        return 1
    _emit(args, s.to_json(), str(s))
    return 0


def cmd_eigen(args):
    c = _load_matrix(args.input)
    lam, _ = polytrope_of(c)
    sh = shape_of(c)
    trop = [[format_rational(x) for x in v] for v in sh.tropical_vertices]
    text = "lambda = %s\ntropical vertices (chart y_n = 0):\n" % format_rational(lam)
    text += "\n".join("  (" + ", ".join(v) + ")" for v in trop)
    _emit(args, {"lambda": format_rational(lam), "tropical_vertices": trop}, text)
    return 0


def cmd_binomials(args):
    try:
        bs = enumerate_binomials(args.n, args.m)
    except BadBlockSize as e:
        raise UsageError("--m: %s" % e)
    obj = {"n": args.n, "m": args.m, "count": len(bs), "binomials": [b.sparse() for b in bs]}
    lines = ["%d binomials (n=%d, m=%d)" % (len(bs), args.n, args.m)]
    for k, b in enumerate(bs):
        lines.append("%3d  " % k + " ".join("%+d*c%s" % (t["coef"], t["edge"].replace(",", ""))
                                            for t in b.sparse()))
    _emit(args, obj, "\n".join(lines))
    return 0


def cmd_relations(args):
    obj = {"n": args.n, "kernel_dimension": kernel_dimension(args.n)}
    text = "kernel dimension %d" % obj["kernel_dimension"]
    if args.n <= 5:
        classes = relation_circuits(args.n)
        obj["circuit_classes"] = len(classes)
        obj["circuits"] = sum(len(c) for c in classes)
        obj["class_sizes"] = [len(c) for c in classes]
        obj["representatives"] = [[list(t) for t in c[0].terms] for c in classes]
        text += "\n%d circuit classes, %d circuits" % (obj["circuit_classes"], obj["circuits"])
    _emit(args, obj, text)
    return 0


# -- enumeration runs --------------------------------------------------

def _summary_maximal(run, records):
    return {"n": run.n, "mode": "maximal", "winner": run.winner, "family": run.family,
            "complete": run.done, "classes": len(run.visited),
            "chambers": sum(run.visited.values()), "expanded": run.expanded,
            "frontier": len(run.frontier),
            "orbit_sizes": {str(k): v for k, v in sorted(Counter(run.visited.values()).items())},
            "boundary_Rn": sum(r.boundary_Rn for r in records) if run.done else None}


def _finish_maximal(run, outdir, manifest):
    # witnesses are built once the search is complete; a partial run only
    # reports counts and keeps its checkpoint
    records = run.records() if run.done else []
    outputs = ["summary.json"]
    if run.done:
        _write_records(os.path.join(outdir, "records.jsonl"), records)
        outputs.insert(0, "records.jsonl")
    summary = _summary_maximal(run, records)
    _write_json(os.path.join(outdir, "summary.json"), summary)
    manifest["end"] = time.strftime("%Y-%m-%dT%H:%M:%S")
    manifest["counts"] = {"classes": summary["classes"], "complete": summary["complete"]}
    manifest["outputs"] = {name: _sha256(os.path.join(outdir, name)) for name in outputs}
    manifest["checkpoint_sha256"] = _sha256(os.path.join(outdir, "checkpoint.json"))
    _write_json(os.path.join(outdir, "manifest.json"), manifest)
    return summary


def _all_cones(n, outdir):
    if n != 4:
        raise UsageError("--mode all is only supported for --n 4")
    allc = enumerate_all_cones(n)
    kept, removed = filter_boundary(allc)
    groups, t3 = group_by_linearity(kept)
    t1 = classify(kept)
    _write_records(os.path.join(outdir, "records.jsonl"), allc)
    _write_records(os.path.join(outdir, "kept.jsonl"), kept)
    _write_hist_csv(os.path.join(outdir, "table1.csv"), "vertices", t1)
    _write_hist_csv(os.path.join(outdir, "table3.csv"), "group_size", t3)
    return {"n": n, "mode": "all", "classes": len(allc), "removed": len(removed),
            "kept": len(kept), "groups": len(groups),
            "table1": {str(k): v for k, v in t1.items()},
            "table3": {str(k): v for k, v in t3.items()},
            "dims": {str(k): v for k, v in sorted(Counter(r.dim for r in allc).items())}}


def cmd_enumerate(args):
    if not 3 <= args.n <= 6:
        raise UsageError("--n must be between 3 and 6")
    outdir = args.out or "run-n%d-%s" % (args.n, args.mode)
    os.makedirs(outdir, exist_ok=True)
    manifest = {"version": __version__, "command": args.argv,
                "n": args.n, "mode": args.mode, "seed": args.seed, "threads": args.threads,
                "flags": {"winner": args.winner, "family": args.family,
                          "oracle": args.oracle, "max_nodes": args.max_nodes},
                "start": time.strftime("%Y-%m-%dT%H:%M:%S")}
    if args.mode == "all":
        summary = _all_cones(args.n, outdir)
        _write_json(os.path.join(outdir, "summary.json"), summary)
        manifest["end"] = time.strftime("%Y-%m-%dT%H:%M:%S")
        manifest["counts"] = {k: summary[k] for k in ("classes", "removed", "kept", "groups")}
        manifest["outputs"] = {name: _sha256(os.path.join(outdir, name)) for name in
                               ("records.jsonl", "kept.jsonl", "table1.csv", "table3.csv",
                                "summary.json")}
        _write_json(os.path.join(outdir, "manifest.json"), manifest)
    else:
        run = EnumerationRun(args.n, args.winner, args.family, args.seed, args.oracle)
        _write_json(os.path.join(outdir, "manifest.json"), manifest)
        ckpt = os.path.join(outdir, "checkpoint.json")
        try:
            run.run(max_nodes=args.max_nodes, checkpoint=ckpt, progress=_progress(args))
        except SeedFailure as e:
            print("error: %s" % e, file=sys.stderr)
            return 1
        summary = _finish_maximal(run, outdir, manifest)
    _emit(args, summary, _summary_text(summary))
    return 0


def _progress(args):
    if not args.verbose:
        return None

    def show(run):
        print("expanded %d  classes %d  frontier %d"
              % (run.expanded, len(run.visited), len(run.frontier)), file=sys.stderr)
    return show


def _summary_text(s):
    if s["mode"] == "all":
        return ("n=%d: %d cone classes, %d removed, %d kept, %d linearity groups"
                % (s["n"], s["classes"], s["removed"], s["kept"], s["groups"]))
    state = "complete" if s["complete"] else "partial (frontier %d)" % s["frontier"]
    return ("n=%d: %d classes of maximal cones, %d chambers, %s"
            % (s["n"], s["classes"], s["chambers"], state))


def cmd_resume(args):
    outdir = args.rundir
    try:
        with open(os.path.join(outdir, "manifest.json")) as f:
            manifest = json.load(f)
    except (OSError, ValueError) as e:
        raise UsageError("%s: no readable manifest (%s)" % (outdir, e))
    if manifest.get("mode") != "maximal":
        raise UsageError("only maximal runs can be resumed")
    ckpt = os.path.join(outdir, "checkpoint.json")
    try:
        run = EnumerationRun.load(ckpt)
    except OSError as e:
        raise UsageError("%s: no checkpoint (%s)" % (outdir, e))
    except CorruptCheckpoint as e:
        print("CorruptCheckpoint: %s" % e, file=sys.stderr)
        return 2
    if run.done and os.path.exists(os.path.join(outdir, "summary.json")):
        with open(os.path.join(outdir, "summary.json")) as f:
            summary = json.load(f)
        if summary.get("complete"):
            _emit(args, summary, _summary_text(summary) + " (nothing to resume)")
            return 0
    run.run(max_nodes=args.max_nodes, checkpoint=ckpt, progress=_progress(args))
    manifest.setdefault("resumed", []).append(time.strftime("%Y-%m-%dT%H:%M:%S"))
    summary = _finish_maximal(run, outdir, manifest)
    _emit(args, summary, _summary_text(summary))
    return 0


def cmd_classify(args):
    try:
        records = read_records(args.records)
    except (OSError, ValueError, KeyError) as e:
        raise UsageError("--records %s: %s" % (args.records, e))
    if args.n is not None and any(r.sign.n != args.n for r in records):
        raise UsageError("--n %d does not match the records" % args.n)
    outdir = args.out or "."
    os.makedirs(outdir, exist_ok=True)
    per = []
    for r in records:
        vs = vertices(polytrope_of(r.witness)[1])
        per.append({"id": r.id, "vertex_count": len(vs),
                    "vertices": [[format_rational(x) for x in v] for v in vs]})
    hist = dict(sorted(Counter(p["vertex_count"] for p in per).items()))
    _write_hist_csv(os.path.join(outdir, "histogram.csv"), "vertices", hist)
    _write_json(os.path.join(outdir, "classes.json"), per)
    obj = {"records": len(records), "histogram": {str(k): v for k, v in hist.items()}}
    _emit(args, obj, "\n".join("%3d vertices: %d" % kv for kv in hist.items()))
    return 0


# -- verification ------------------------------------------------------

def _check(report, name, got, want):
    ok = got == want
    report.append({"check": name, "ok": ok, "got": got, "want": want})
    return ok


def verify(n, level="quick", seed=0):
    """List of check results for the published counts at this n."""
    from .fans import brute_force_chambers, enumerate_maximal

    rep = []
    if n == 4:
        _check(rep, "binomials", len(enumerate_binomials(4, 2)), 6)
        _check(rep, "kernel dimension", kernel_dimension(4), 1)
        maxi = enumerate_maximal(4, seed=seed)
        _check(rep, "maximal classes", len(maxi), 6)
        _check(rep, "orbit sizes", sorted(r.orbit_size for r in maxi), [6, 6, 6, 8, 12, 24])
        _check(rep, "chambers", sum(r.orbit_size for r in maxi), 62)
        _check(rep, "maximal vertex counts", [shape_of(r.witness).vertex_count for r in maxi],
               [20] * 6)
        if level == "full":
            _check(rep, "brute-force chambers", len(brute_force_chambers(4)), 62)
            allc = enumerate_all_cones(4, maxi)
            kept, removed = filter_boundary(allc)
            _check(rep, "all cones", len(allc), 1026)
            _check(rep, "removed", len(removed), 13)
            _check(rep, "kept", len(kept), 1013)
            groups, t3 = group_by_linearity(kept)
            _check(rep, "groups", len(groups), 273)
            _check(rep, "table 3", t3, TABLE3_N4)
            _check(rep, "table 1", classify(kept), TABLE1_N4)
    elif n == 5:
        _check(rep, "binomials", len(enumerate_binomials(5, 2)), 30)
        if level == "full":
            maxi = enumerate_maximal(5, seed=seed, records=False)
            _check(rep, "maximal classes", len(maxi.visited), 27248)
    else:
        raise UsageError("verify supports --n 4 or --n 5")
    return rep


def cmd_verify(args):
    rep = verify(args.n, args.level, args.seed)
    bad = [r for r in rep if not r["ok"]]
    text = "\n".join("%s  %s: %r" % ("ok  " if r["ok"] else "FAIL", r["check"], r["got"])
                     for r in rep)
    _emit(args, {"n": args.n, "level": args.level, "checks": rep, "ok": not bad}, text)
    return 1 if bad else 0


# -- parser ------------------------------------------------------------

def _global_flags(suppress):
    # subcommands repeat the global flags; SUPPRESS keeps their defaults from
    # overwriting a value given before the subcommand name
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--seed", type=int, default=d(0))
    g.add_argument("--threads", type=int, default=d(1),
                   help="accepted for compatibility; work runs on one thread")
    g.add_argument("--out", default=d(None))
    g.add_argument("--json", action="store_true", default=d(False))
    g.add_argument("-v", "--verbose", action="store_true", default=d(False))
    return g


def build_parser():
    common = _global_flags(True)
    p = argparse.ArgumentParser(prog="polytropes", parents=[_global_flags(False)])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("kleene", parents=[common], help="shortest-path closure of a matrix")
    s.add_argument("--input", required=True)
    s.set_defaults(func=cmd_kleene)

    s = sub.add_parser("eigen", parents=[common], help="lambda(c) and tropical vertices")
    s.add_argument("--input", required=True)
    s.set_defaults(func=cmd_eigen)

    s = sub.add_parser("binomials", parents=[common], help="list bipartite binomials")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, default=2)
    s.set_defaults(func=cmd_binomials)

    s = sub.add_parser("relations", parents=[common], help="linear relations among binomials")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_relations)

    s = sub.add_parser("enumerate", parents=[common], help="enumerate cone classes")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--mode", choices=("maximal", "all"), default="maximal")
    s.add_argument("--winner", choices=("min", "max"), default="min")
    s.add_argument("--family", choices=("matchings", "rotations"), default="matchings")
    s.add_argument("--oracle", choices=("auto", "circuits", "lp", "exact"), default="auto")
    s.add_argument("--max-nodes", type=int, default=None)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("resume", parents=[common], help="continue a checkpointed run")
    s.add_argument("rundir")
    s.add_argument("--max-nodes", type=int, default=None)
    s.set_defaults(func=cmd_resume)

    s = sub.add_parser("classify", parents=[common], help="vertex-count histogram of records")
    s.add_argument("--n", type=int, default=None)
    s.add_argument("--records", required=True)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("verify", parents=[common], help="check the published counts")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--level", choices=("quick", "full"), default="quick")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    args.argv = argv
    try:
        return args.func(args)
    except UsageError as e:
        print("usage error: %s" % e, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
