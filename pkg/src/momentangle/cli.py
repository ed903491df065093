"""Command-line front end.

Usage:
  momentangle vectors --example torus9
  momentangle betti complex.txt --space zk --method koszul --format json
  momentangle verify --example boundary-simplex:3 --sphere

Exit codes: 0 ok, 1 verification failure, 2 input error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import library
from .cells import CapExceeded, bigraded_betti, build_complex_for
from .complex import ComplexError, SimplicialComplex, format_facets, manifold_status, parse_facets
from .cubical import cc, cub
from .koszul import (FundamentalClassError, betti_table, build_koszul_complex,
                     full_koszul_crosscheck, fundamental_class)
from .reports import (SPACES, arrangement_descriptor, euler_poly_closed, euler_poly_direct,
                      glb_report, verify_identities)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class CommandFailed(Exception):
    """Raised by a command whose result is a failed check."""

    def __init__(self, text: str, payload=None):
        super().__init__(text)
        self.text = text
        self.payload = payload if payload is not None else {"ok": False, "message": text}


def _fmt_vec(v) -> str:
    return "(" + ", ".join(map(str, v)) + ")"


def load_complex(args) -> SimplicialComplex:
    if args.example:
        K = library.by_name(args.example)
    elif args.input:
        try:
            text = Path(args.input).read_text()
        except OSError as exc:
            raise ComplexError(f"cannot read {args.input}: {exc.strerror}") from None
        K = parse_facets(text)
    else:
        raise ComplexError("give an input file or --example NAME")
    return K


def _proper(K: SimplicialComplex) -> SimplicialComplex:
    K.require_proper()
    return K


# ---------------------------------------------------------------------------
# commands: each returns (text, json-able payload)

def cmd_fvector(K, args):
    f = K.f_vector()
    return f"f = {_fmt_vec(f)}", {"f": list(f)}


def cmd_hvector(K, args):
    h = K.h_vector()
    return f"h = {_fmt_vec(h)}", {"h": list(h)}


def cmd_vectors(K, args):
    f, h = K.f_vector(), K.h_vector()
    return (f"f = {_fmt_vec(f)}; h = {_fmt_vec(h)}",
            {"m": K.m, "n": K.n, "f": list(f), "h": list(h), "euler": K.euler_number()})


def cmd_status(K, args):
    st = manifold_status(K, attested=args.manifold)
    d = st.as_dict()
    lines = [f"{k}: {v}" for k, v in d.items() if k != "orientation"]
    return "\n".join(lines), d


def _table(K, space, method, args):
    if space == "zk":
        return betti_table(K, method, args.jobs, args.max_m)
    if method != "cellular":
        raise ComplexError(f"method {method!r} is only available for --space zk")
    return bigraded_betti(build_complex_for(space, K, args.max_m), args.jobs)


def cmd_betti(K, args):
    _proper(K)
    table = _table(K, args.space, args.method, args)
    if args.compare:
        other = _table(K, args.space, args.compare, args)
        diff = table.diff(other)
        payload = {"table": table.to_json(), "compare": other.to_json(),
                   "diff": [{"q": -a, "p2": b, args.method: x, args.compare: y}
                            for (a, b), (x, y) in diff.items()]}
        text = table.format() + f"\nordinary: {_fmt_vec(table.ordinary())}\n"
        if diff:
            text += f"{args.method} and {args.compare} differ at " + ", ".join(
                f"({a},{b}): {x} vs {y}" for (a, b), (x, y) in diff.items())
            raise CommandFailed(text, payload)
        text += f"{args.method} and {args.compare} agree"
        return text, payload
    return (table.format() + f"\nordinary: {_fmt_vec(table.ordinary())}", table.to_json())


def cmd_cells(K, args):
    _proper(K)
    if args.space == "koszul":
        C = build_koszul_complex(K, args.max_m)
    else:
        C = build_complex_for(args.space, K, args.max_m)
    data = C.dims_json()
    lines = [f"{C.name}: {C.size} cells"]
    lines += [f"  q={row['q']} 2p={row['p2']}: {row['dim']}" for row in data["table"]]
    return "\n".join(lines), data


def cmd_verify(K, args):
    rep = verify_identities(K, sphere=args.sphere, manifold=args.manifold,
                            orientable=args.orientable, jobs=args.jobs, max_m=args.max_m)
    text = rep.format()
    payload = {"ok": rep.ok, "checks": rep.to_json()}
    if not rep.ok:
        raise CommandFailed(text, payload)
    return text, payload


def cmd_euler_poly(K, args):
    _proper(K)
    if args.method == "direct":
        P = euler_poly_direct(args.space, K, args.max_m)
    elif args.method == "closed":
        P = euler_poly_closed(args.space, K)
    else:
        d = euler_poly_direct(args.space, K, args.max_m)
        c = euler_poly_closed(args.space, K)
        P = d - c
        payload = {"space": args.space, "direct": list(d.coeffs), "closed": list(c.coeffs),
                   "diff": [] if P.coeffs == (0,) else list(P.coeffs)}
        if P.coeffs != (0,):
            raise CommandFailed(f"direct - closed = {P}", payload)
        return "direct - closed = 0 (no difference)", payload
    return str(P), {"space": args.space, "method": args.method, "coeffs": list(P.coeffs),
                    "polynomial": str(P)}


def cmd_cubical(K, args):
    C = cub(K) if args.which == "cub" else cc(K)
    if args.off:
        return C.to_off().rstrip("\n"), {"off": C.to_off()}
    counts = C.face_counts()
    return (f"{C.name}(K): dimension {C.dimension}, faces {_fmt_vec(counts)}, "
            f"euler {C.euler_number()}",
            {"name": C.name, "dimension": C.dimension, "face_counts": counts,
             "euler": C.euler_number()})


def cmd_arrangement(K, args):
    _proper(K)
    d = arrangement_descriptor(K, betti_table(K, "cellular", args.jobs, args.max_m))
    lines = [f"coordinate arrangement in C^{d['m']}:"]
    for pl in d["planes"]:
        lines.append(f"  {pl['equations']}  (dim {pl['complex_dimension']})")
    lines.append(f"complement Betti numbers: {_fmt_vec(d['betti'])}; euler {d['euler']}")
    return "\n".join(lines), d


def cmd_glb(K, args):
    _proper(K)
    g = glb_report(K, betti_table(K, "cellular", args.jobs, args.max_m))
    lines = [f"h = {_fmt_vec(g['h'])}"]
    for key, label in (("h12", "h1 <= h2"), ("h23", "h2 <= h3")):
        r = g[key]
        lines.append(f"{label}: h-side {r['h_side']} (slack {r['h_slack']}), "
                     f"betti-side {r['betti_side']} (slack {r['betti_slack']}), "
                     f"equivalent {r['equivalent']}")
    for k, v in g["higher"].items():
        lines.append(f"{k}: {v} (h-side only)")
    return "\n".join(lines), g


def cmd_fclass(K, args):
    _proper(K)
    try:
        fc = fundamental_class(K, args.max_m)
    except FundamentalClassError as exc:
        raise CommandFailed(f"no fundamental class: {exc}") from None
    text = f"[{fc.monomial}] in bidegree {fc.bidegree} (total degree {fc.total_degree}), up to sign"
    return text, {"monomial": str(fc.monomial), "q": -fc.bidegree[0], "p2": fc.bidegree[1],
                  "total_degree": fc.total_degree}


def cmd_crosscheck(K, args):
    _proper(K)
    p_max = args.p_max if args.p_max is not None else min(K.m, 4)
    full = full_koszul_crosscheck(K, p_max, args.max_m, args.jobs)
    ref = betti_table(K, "koszul", args.jobs, args.max_m)
    ref_cut = {bd: v for bd, v in ref.items() if bd[1] <= 2 * p_max}
    diff = {bd: (full[bd], ref_cut.get(bd, 0))
            for bd in set(full.values) | set(ref_cut) if full[bd] != ref_cut.get(bd, 0)}
    payload = {"p_max": p_max, "agree": not diff, "table": full.to_json()}
    if diff:
        raise CommandFailed(f"full Koszul complex disagrees at {sorted(diff)}", payload)
    return f"full Koszul complex agrees with C*(K) for 2p <= {2 * p_max}", payload


def cmd_facets(K, args):
    return format_facets(K).rstrip("\n"), {"m": K.m, "facets": [list(f) for f in K.facet_lists()]}


COMMANDS = {
    "fvector": (cmd_fvector, "print the f-vector"),
    "hvector": (cmd_hvector, "print the h-vector"),
    "vectors": (cmd_vectors, "print f- and h-vectors"),
    "status": (cmd_status, "pseudomanifold / orientability status"),
    "betti": (cmd_betti, "bigraded Betti numbers"),
    "cells": (cmd_cells, "cell counts per bidegree"),
    "verify": (cmd_verify, "check identities; exit 1 on a failed check"),
    "euler-poly": (cmd_euler_poly, "Euler characteristic generating polynomial"),
    "cubical": (cmd_cubical, "cubical complexes cub(K) and cc(K)"),
    "arrangement": (cmd_arrangement, "coordinate subspace arrangement"),
    "glb": (cmd_glb, "lower bound inequalities on both sides"),
    "fclass": (cmd_fclass, "fundamental class representative"),
    "crosscheck": (cmd_crosscheck, "full Koszul complex against C*(K)"),
    "facets": (cmd_facets, "print the facet list"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", nargs="?", help="facet file")
    common.add_argument("--example", help="built-in complex, e.g. torus9, boundary-simplex:3")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--output", type=Path, default=None)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--max-m", type=int, default=None,
                        help="raise or lower the vertex cap (default per pipeline)")

    ap = argparse.ArgumentParser(prog="momentangle",
                                 description="Moment-angle complexes of simplicial complexes")
    sub = ap.add_subparsers(dest="command", required=True)
    parsers = {name: sub.add_parser(name, parents=[common], help=help_)
               for name, (_, help_) in COMMANDS.items()}

    p = parsers["betti"]
    p.add_argument("--space", choices=SPACES, default="zk")
    p.add_argument("--method", choices=("cellular", "koszul", "hochster"), default="cellular")
    p.add_argument("--compare", choices=("cellular", "koszul", "hochster"), default=None)

    parsers["cells"].add_argument("--space", choices=SPACES + ("koszul",), default="zk")

    p = parsers["verify"]
    p.add_argument("--sphere", action="store_true", help="attest |K| is a sphere")
    p.add_argument("--manifold", action="store_true", help="attest |K| is a manifold")
    p.add_argument("--orientable", action="store_true", help="attest orientability")

    parsers["status"].add_argument("--manifold", action="store_true")

    p = parsers["euler-poly"]
    p.add_argument("--space", choices=SPACES, default="zk")
    p.add_argument("--method", choices=("direct", "closed", "diff"), default="direct")

    p = parsers["cubical"]
    p.add_argument("--which", choices=("cub", "cc"), default="cub")
    p.add_argument("--off", action="store_true", help="emit OFF-style text")

    parsers["crosscheck"].add_argument("--p-max", type=int, default=None)
    return ap


def _emit(args, text: str, payload) -> None:
    out = json.dumps(payload, indent=2, sort_keys=True) if args.format == "json" else text
    if args.output is not None:
        args.output.parent.mkdir(parents=True, exist_ok=True)
        args.output.write_text(out + "\n")
    else:
        print(out)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.jobs < 1 or (args.max_m is not None and args.max_m < 1):
        print("error: --jobs and --max-m must be positive", file=sys.stderr)
        return EXIT_INPUT
    fn = COMMANDS[args.command][0]
    try:
        K = load_complex(args)
        text, payload = fn(K, args)
    except CommandFailed as exc:
        _emit(args, exc.text, exc.payload)
        return EXIT_FAIL
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ComplexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(args, text, payload)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
