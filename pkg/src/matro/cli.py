"""``matro`` command line: summaries, Bergman complexes, nested set complexes.

Results are printed as plain text by default or as one JSON document with
``--json``.  Errors exit with 2 (invalid input), 3 (unparseable input) or
4 (input valid but not accepted by the command) and carry a ``code`` field.
"""

import argparse
import json
import sys
import time

from . import bergman as bg
from . import lattice as lt
from . import io
from .bits import elements_of, lowest
from .errors import BadParameters, MatroError, ParseError, PreconditionError, ValidationError
from .matroid import integer_weights, parse_rational


def labels(mask):
    return [e + 1 for e in elements_of(mask)]


def flat_list(M, flats):
    """Flats as 1-based lists ordered by (rank, elements)."""
    return [labels(F) for F in sorted(flats, key=lambda F: (M.rank(F), labels(F)))]


def blocks(partition):
    return [labels(b) for b in sorted(partition, key=lowest)]


def summary(name, M):
    return {
        "name": name,
        "n": M.n,
        "r": M.r,
        "bases": len(M.bases),
        "connected": M.is_connected(),
        "loops": labels(M.loops),
    }


# ------------------------------------------------------------------ commands


def cmd_info(M, args):
    L = lt.flats(M)
    return {"flats_per_rank": list(L.profile()), "components": [labels(c) for c in M.components]}


def cmd_bergman(M, args):
    if args.mode == "facets":
        facets = bg.bergman_facets(M, args.threads)
        return {"count": len(facets), "facets": [blocks(p) for p in facets]}
    if args.mode == "fvector":
        return {"f_vector": list(bg.bergman_f_vector(M))}
    faces = bg.bergman_faces(M)
    return {
        "count": len(faces),
        "faces": [
            {"dim": f.dim, "blocks": blocks(f.blocks), "vertices": flat_list(M, f.vertices)}
            for f in faces
        ],
    }


def cmd_nested(M, args):
    if args.mode == "triangulation":
        if args.building != "min":
            raise BadParameters("--mode triangulation uses the minimal building set only")
        tris = bg.triangulations(M, args.threads)
        out = [
            {
                "facet": blocks(t.partition),
                "subdivided": t.subdivided,
                "simplices": [flat_list(M, s) for s in t.simplices],
            }
            for t in tris
        ]
        return {"facets": len(tris), "subdivided": sum(t.subdivided for t in tris), "triangulation": out}
    if args.building == "min":
        bg.bergman_facets(M, args.threads)
    facets = bg.nested_facets(M, args.building)
    if args.mode == "fvector":
        fv = bg.f_vector(bg.nested_faces(facets), lambda S: len(S) - 1)
        return {"building": args.building, "f_vector": list(fv), "reduced_euler": bg.euler_characteristic(fv)}
    return {"building": args.building, "count": len(facets), "facets": [flat_list(M, S) for S in facets]}


def cmd_check(M, args):
    ok, witness = bg.equality_criterion(M)
    out = {"verdict": "EQUAL" if ok else "NOT-EQUAL"}
    if witness:
        F, G = witness
        out["witness"] = {"F": labels(F), "G": labels(G)}
    return out


def cmd_member(M, args):
    w = [parse_rational(x) for x in args.w.split(",")] if args.w.strip() else []
    integer_weights(w, M.n)
    inside = bg.bergman_membership(M, w)
    Mw = M.max_weight(w)
    return {
        "w": [str(x) for x in w],
        "verdict": "IN" if inside else "OUT",
        "face_matroid": {
            "bases": len(Mw.bases),
            "loops": labels(Mw.loops),
            "components": [labels(c) for c in Mw.components],
        },
    }


def cmd_polytope(M, args):
    P = lt.polytope_facets(M)
    return {
        "dimension": P.dimension,
        "equation": {"sum": list(range(1, M.n + 1)), "rhs": P.rank_sum},
        "flacet_inequalities": [{"flat": labels(F), "rhs": k} for F, k in P.flacet_rows],
        "nonnegativity": [{"element": i + 1, "facet": facet} for i, facet in P.nonnegativity],
    }


COMMANDS = {
    "info": cmd_info,
    "bergman": cmd_bergman,
    "nested": cmd_nested,
    "check": cmd_check,
    "member": cmd_member,
    "polytope": cmd_polytope,
}


# ------------------------------------------------------------------ text output


def _fmt(lst):
    return "{" + ",".join(str(x) for x in lst) + "}" if lst else "{}"


def _flats(fl):
    return " < ".join(_fmt(F) for F in fl) if fl else "(empty)"


def render_text(doc):
    m = doc["matroid"]
    res = doc["result"]
    cmd = doc["command"]["name"]
    lines = [
        f"{m['name']}: n={m['n']} r={m['r']} bases={m['bases']} "
        f"{'connected' if m['connected'] else 'disconnected'} loops={_fmt(m['loops'])}"
    ]
    if cmd == "info":
        lines.append("flats per rank: " + " ".join(str(x) for x in res["flats_per_rank"]))
        lines.append("components: " + " ".join(_fmt(c) for c in res["components"]))
    elif cmd == "bergman" and "facets" in res:
        lines.append(f"{res['count']} facets")
        lines += ["  " + " | ".join(_fmt(b) for b in p) for p in res["facets"]]
    elif cmd == "bergman" and "faces" in res:
        lines.append(f"{res['count']} faces")
        for f in res["faces"]:
            lines.append(f"  dim {f['dim']}: " + " | ".join(_fmt(b) for b in f["blocks"]))
    elif cmd == "nested" and "triangulation" in res:
        lines.append(f"{res['facets']} Bergman facets, {res['subdivided']} subdivided")
        for t in res["triangulation"]:
            head = "  " + " | ".join(_fmt(b) for b in t["facet"])
            if not t["subdivided"]:
                lines.append(head + ": not subdivided")
                continue
            lines.append(head + f": {len(t['simplices'])} simplices")
            lines += ["    " + _flats(s) for s in t["simplices"]]
    elif cmd == "nested" and "facets" in res:
        lines.append(f"{res['count']} nested facets ({res['building']} building set)")
        lines += ["  " + _flats(S) for S in res["facets"]]
    elif cmd == "check":
        line = res["verdict"]
        if "witness" in res:
            line += f": M[{_fmt(res['witness']['F'])}, {_fmt(res['witness']['G'])}] is disconnected"
        lines.append(line)
    elif cmd == "member":
        fm = res["face_matroid"]
        lines.append(f"w = ({', '.join(res['w'])}): {res['verdict']}")
        lines.append(
            f"M_w: bases={fm['bases']} loops={_fmt(fm['loops'])} components="
            + " ".join(_fmt(c) for c in fm["components"])
        )
    elif cmd == "polytope":
        lines.append(f"dimension {res['dimension']}")
        lines.append(f"sum x_i = {res['equation']['rhs']}")
        for row in res["flacet_inequalities"]:
            lines.append(f"  sum_{_fmt(row['flat'])} x_i <= {row['rhs']}")
        for row in res["nonnegativity"]:
            note = "" if row["facet"] else "  (redundant)"
            lines.append(f"  x_{row['element']} >= 0{note}")
    else:
        for k, v in res.items():
            lines.append(f"{k}: {v}")
    if "timing" in doc:
        lines.append(f"time: {doc['timing']['seconds']:.3f} s")
    return "\n".join(lines)


# ------------------------------------------------------------------ entry point


def parser():
    p = argparse.ArgumentParser(prog="matro", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("spec", help="MatroidSpec JSON file, or a bundled example name such as r10")
    common.add_argument("--json", action="store_true", help="print one JSON result document")
    common.add_argument("--threads", type=int, default=None, help="threads for the per-basis loop")
    common.add_argument("--timing", action="store_true", help="include wall-clock time (output no longer deterministic)")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("info", parents=[common])
    b = sub.add_parser("bergman", parents=[common])
    b.add_argument("--mode", choices=["facets", "faces", "fvector"], default="facets")
    n = sub.add_parser("nested", parents=[common])
    n.add_argument("--building", choices=["min", "max"], default="min")
    n.add_argument("--mode", choices=["facets", "fvector", "triangulation"], default="facets")
    sub.add_parser("check", parents=[common])
    m = sub.add_parser("member", parents=[common])
    m.add_argument("--w", required=True, help='comma-separated rationals, e.g. "1,0,1/2,-3"')
    sub.add_parser("polytope", parents=[common])
    return p


def _category(e):
    return next(c.__name__ for c in (ValidationError, ParseError, PreconditionError, MatroError) if isinstance(e, c))


def run(argv=None):
    """Return (exit status, stdout text, stderr text)."""
    args = parser().parse_args(argv)
    start = time.perf_counter()
    try:
        name, M = io.load(args.spec)
        result = COMMANDS[args.command](M, args)
    except MatroError as e:
        err = {"error": {"code": e.code, "category": _category(e), "message": str(e)}}
        if args.json:
            return e.exit_code, json.dumps(err, indent=2), ""
        return e.exit_code, "", f"matro: error [{e.code}]: {e}"
    echo = {k: v for k, v in vars(args).items() if k not in ("json", "timing", "threads")}
    echo["name"] = echo.pop("command")
    doc = {"command": echo, "matroid": summary(name, M), "result": result}
    if args.timing:
        doc["timing"] = {"seconds": time.perf_counter() - start}
    text = json.dumps(doc, indent=2) if args.json else render_text(doc)
    return 0, text, ""


def main(argv=None):
    status, out, err = run(argv)
    if out:
        print(out)
    if err:
        print(err, file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
