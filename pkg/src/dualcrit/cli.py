"""Command-line front end.

Exit codes: 0 when the property holds or the command succeeded, 1 when the
property fails, 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import certificates, cubic, exact, generators, kdc, planar, szegedy
from .graph import GraphError, MultiGraph, format_edge_list, normalize_to_simple, parse_edge_list

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _graph(args) -> MultiGraph:
    return parse_edge_list(_read_text(args.inp))


def _seed(args) -> int:
    env = os.environ.get("DUALCRIT_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"DUALCRIT_SEED must be an integer, got {env!r}") from None
    return args.seed


def _vertex_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"bad vertex list {text!r}") from None


def _emit(args, payload: dict, human: str | None = None) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True))
    else:
        print(human if human is not None else json.dumps(payload, indent=2, sort_keys=True))


def _write(path: str | None, payload: dict) -> None:
    if path:
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")


# --------------------------------------------------------------------------
# commands


def cmd_check(args) -> int:
    G = _graph(args)
    if args.method == "exact":
        ordering = exact.find_good_ordering(G)
        dc = ordering is not None
        payload = {"dual_critical": dc, "method": "exact"}
        if dc:
            payload["certificate"] = ordering.as_json()
        human = f"dual-critical: {dc}"
        if dc:
            human += f"\nordering: {' '.join(map(str, ordering.order))}"
    else:
        res = szegedy.szegedy_is_dc(G, args.variant, _seed(args), args.trials)
        dc = res.is_dc
        payload = res.as_json() | {"method": "szegedy"}
        human = f"dual-critical: {res.label} ({res.reason})"
    _write(args.out, payload.get("certificate", payload))
    _emit(args, payload, human)
    return EXIT_OK if dc else EXIT_FAIL


def cmd_todd(args) -> int:
    G = _graph(args)
    T = _vertex_list(args.T)
    order = exact.find_t_odd_ordering(G, T)
    payload = {"T": sorted(T), "exists": order is not None}
    if order is not None:
        payload["certificate"] = {"ordering": list(order), "T": sorted(T)}
    _write(args.out, payload.get("certificate", payload))
    _emit(args, payload, f"T-odd orientation: {order is not None}")
    return EXIT_OK if order is not None else EXIT_FAIL


def cmd_sdc(args) -> int:
    G = _graph(args)
    sdc = exact.is_super_dual_critical(G)
    _emit(args, {"super_dual_critical": sdc}, f"super-dual-critical: {sdc}")
    return EXIT_OK if sdc else EXIT_FAIL


def cmd_kpart(args) -> int:
    G = _graph(args)
    P = kdc.recursive_kdc(G, args.k) if args.method == "recursive" else kdc.fpt_kdc(G, args.k)
    payload = {"k": args.k, "exists": P is not None}
    if P is not None:
        payload["certificate"] = {"k": args.k, "classes": [sorted(c) for c in P]}
    _write(args.out, payload.get("certificate", payload))
    human = f"{args.k}-dual-critical: {P is not None}"
    if P is not None:
        human += "\n" + " | ".join(" ".join(map(str, sorted(c))) for c in P)
    _emit(args, payload, human)
    return EXIT_OK if P is not None else EXIT_FAIL


def cmd_kernel(args) -> int:
    G = _graph(args)
    res = kdc.kernelize(G, args.k)
    payload = res.as_json()
    _write(args.out, payload)
    _emit(args, payload)
    return EXIT_OK


def cmd_maxdc(args) -> int:
    G = _graph(args)
    value = kdc.maxdc(G, args.method)
    payload = {"maxdc": value, "contractions_needed": G.n - value}
    _emit(args, payload, f"maxdc: {value}\ncontractions needed: {G.n - value}")
    return EXIT_OK


def cmd_cubic(args) -> int:
    G = _graph(args)
    report = cubic.cubic_suite(G)
    payload = report.as_json()
    _write(args.out, payload)
    _emit(args, payload)
    return EXIT_OK if report.unanimous and report.conditions["1"] else EXIT_FAIL


def cmd_planar(args) -> int:
    R = planar.parse_rotation(_read_text(args.inp))
    if args.check == "faces":
        faces = planar.trace_faces(R)
        payload = {"faces": [[f"{d >> 1}{'-' if d & 1 else '+'}" for d in f] for f in faces]}
        _emit(args, payload, f"{len(faces)} faces")
        return EXIT_OK
    if args.check == "dual":
        D = planar.dual_rotation(R)
        if args.json:
            _emit(args, {"n": D.graph.n, "edges": [list(e) for e in D.graph.edges]})
        else:
            print(D.to_text(), end="")
        return EXIT_OK
    report = planar.duality_check(R)
    _emit(args, report.as_json())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_audit(args) -> int:
    variants = ["literal", "zerodiag"] if args.variant == "both" else [args.variant]
    report = szegedy.audit_against_exact(args.nmax, variants, _seed(args), args.trials, args.nmin)
    _write(args.out, report)
    summary = {v: {key: r[key] for key in ("graphs", "agree", "false_true", "false_false")}
               for v, r in report["variants"].items()}
    _emit(args, {"n_max": args.nmax, "summary": summary})
    return EXIT_OK


def cmd_gen(args) -> int:
    G = generators.generate(args.kind, _seed(args), n=args.n, m=args.m, loops=args.loops,
                            clique=args.clique, isolates=args.isolates)
    text = format_edge_list(G)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    if args.json:
        print(json.dumps({"n": G.n, "edges": [list(e) for e in G.edges]}))
    elif not args.out:
        print(text, end="")
    return EXIT_OK


def cmd_simplify(args) -> int:
    H = normalize_to_simple(_graph(args))
    if args.json:
        print(json.dumps({"n": H.n, "edges": [list(e) for e in H.edges]}))
    else:
        print(format_edge_list(H), end="")
    return EXIT_OK


def cmd_verify(args) -> int:
    G = _graph(args)
    chosen = [(k, getattr(args, k.replace("-", "_"))) for k in certificates.KINDS]
    chosen = [(k, path) for k, path in chosen if path]
    if args.cert:
        chosen.append((None, args.cert))
    if len(chosen) != 1:
        raise UsageError("give exactly one certificate file")
    kind, path = chosen[0]
    try:
        cert = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise UsageError(f"certificate is not JSON: {exc}") from None
    if isinstance(cert, dict) and "certificate" in cert:
        cert = cert["certificate"]
    try:
        res = certificates.verify(G, cert, kind)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(str(exc)) from None
    _emit(args, {"valid": res.ok, "reason": res.reason},
          "valid" if res.ok else f"invalid: {res.reason}")
    return EXIT_OK if res.ok else EXIT_FAIL


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dualcrit", description="Dual-critical graph toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def command(name, fn, help, graph=True):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        if graph:
            sp.add_argument("--in", dest="inp", required=True, help="edge-list file, '-' for stdin")
        sp.set_defaults(fn=fn)
        return sp

    sp = command("check", cmd_check, "decide dual-criticality")
    sp.add_argument("--method", choices=("exact", "szegedy"), default="exact")
    sp.add_argument("--variant", choices=("literal", "zerodiag"), default="literal")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=szegedy.DEFAULT_TRIALS)
    sp.add_argument("--out", help="write the certificate here")

    sp = command("todd", cmd_todd, "find a T-odd acyclic orientation")
    sp.add_argument("--T", required=True, help="vertices of T, comma or space separated")
    sp.add_argument("--out")

    command("sdc", cmd_sdc, "decide super-dual-criticality")

    sp = command("kpart", cmd_kpart, "find a good k-partition")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--method", choices=("fpt", "recursive"), default="fpt")
    sp.add_argument("--out")

    sp = command("kernel", cmd_kernel, "kernelize for parameter k")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--out")

    sp = command("maxdc", cmd_maxdc, "largest k with a good k-partition")
    sp.add_argument("--method", choices=("auto", "fpt"), default="auto")

    sp = command("cubic", cmd_cubic, "equivalence suite for 3-regular graphs")
    sp.add_argument("--out")

    sp = command("planar", cmd_planar, "faces, dual and duality checks of an embedding")
    sp.add_argument("--check", choices=("duality", "faces", "dual"), default="duality")

    sp = command("audit", cmd_audit, "compare the randomized test with the exact one", graph=False)
    sp.add_argument("--nmax", type=int, default=6)
    sp.add_argument("--nmin", type=int, default=1)
    sp.add_argument("--variant", choices=("literal", "zerodiag", "both"), default="both")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=szegedy.DEFAULT_TRIALS)
    sp.add_argument("--out")

    sp = command("gen", cmd_gen, "generate a graph", graph=False)
    sp.add_argument("kind", choices=("random", "dc", "cubic", "evenclique_isolates"))
    sp.add_argument("--n", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--loops", action="store_true")
    sp.add_argument("--clique", type=int)
    sp.add_argument("--isolates", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")

    command("simplify", cmd_simplify, "equivalent simple graph")

    sp = command("verify", cmd_verify, "re-check a certificate")
    sp.add_argument("--cert", help="certificate JSON (kind detected)")
    for kind in certificates.KINDS:
        sp.add_argument(f"--{kind}", metavar="FILE", help=f"{kind} certificate JSON")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.fn(args)
    except (UsageError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
