"""Command line interface.

Every command writes a JSON report to stdout and a short summary to stderr.
Exit codes: 0 all checks pass, 1 a property failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import logging
import os
import random
import sys
import time
from dataclasses import asdict
from pathlib import Path

from . import __version__
from .corpus import FAMILIES, file_stem, generate
from .cyclespace import (
    bipartite_via_2faces,
    cycle_space_dimension,
    facial_basis,
    is_bipartite,
    oracle_decompose,
    random_even_subgraph,
    reconstruct,
)
from .decompose import PrefixContext, decompose, odd_facial_witness
from .dot import graph_to_dot
from .exceptions import FacialCyclesError, InputError, NoCoordinates, NotALattice, NotEven
from .formats import dump_json, format_rational, load_polytope, points_to_dict
from .complex import EdgeSet
from .shelling import line_shelling

log = logging.getLogger("facialcycles")


class PropertyFailure(Exception):
    pass


def _summary(msg: str) -> None:
    print(msg, file=sys.stderr)


def _emit_dot(path, text: str) -> None:
    if path:
        Path(path).write_text(text)


def _edges(e: EdgeSet) -> list:
    return [f"{u}-{v}" for u, v in e]


def _need_points(poly, what: str) -> None:
    if poly.points is None:
        raise NoCoordinates(f"{what} needs vertex coordinates; the input is combinatorial only")


def parse_target(text: str, graph) -> EdgeSet:
    """``"u-v,u-v,..."`` or ``"random:<k>:<seed>"``."""
    text = text.strip()
    if text.startswith("random:"):
        parts = text.split(":")
        if len(parts) != 3 or not parts[1].isdigit() or not parts[2].isdigit():
            raise InputError(f"--target: expected random:<k>:<seed>, got {text!r}")
        rng = random.Random(f"target:{parts[2]}")
        return random_even_subgraph(graph, rng, int(parts[1]))
    bits = 0
    tokens = [t for t in text.replace(",", " ").split() if t]
    for pos, tok in enumerate(tokens):
        try:
            u, v = (int(x) for x in tok.split("-"))
            eid = graph.edge_id(u, v)
        except (ValueError, KeyError):
            raise InputError(f"--target item {pos} ({tok!r}) is not an edge u-v of the graph") from None
        if bits >> eid & 1:
            raise InputError(f"--target item {pos} ({tok!r}) repeats an edge")
        bits |= 1 << eid
    return EdgeSet(bits, graph)


# -- commands ----------------------------------------------------------------


def cmd_lattice(args, poly):
    lat = poly.lattice
    _summary(f"dimension {lat.polytope_dim}, f-vector {lat.f_vector}")
    _emit_dot(args.emit_dot, graph_to_dot(lat.graph, "polytope"))
    return {
        "dim": lat.polytope_dim,
        "f_vector": list(lat.f_vector),
        "faces_by_dim": [[list(f) for f in fs] for fs in lat.faces_by_dim],
    }


def _shelling_dict(sh) -> dict:
    cert = sh.certificate
    return {
        "order": list(sh.order),
        "base_point": [format_rational(c) for c in cert.base_point],
        "direction": [format_rational(c) for c in cert.direction],
        "pierce_params": [format_rational(t) for t in cert.pierce_params],
        "steps": [asdict(r) for r in sh.per_step_reports],
        "valid": sh.valid,
    }


def cmd_shelling(args, poly):
    _need_points(poly, "a line shelling")
    sh = line_shelling(poly.lattice, poly.points, args.seed)
    _summary(f"shelling order {list(sh.order)}; all step checks {'pass' if sh.valid else 'FAIL'}")
    res = _shelling_dict(sh)
    if not sh.valid:
        raise PropertyFailure(res)
    return res


def cmd_decompose(args, poly):
    lat = poly.lattice
    g = lat.graph
    try:
        target = parse_target(args.target, g)
        if args.method in ("proof", "both"):
            _need_points(poly, "the proof method")
        basis = facial_basis(lat)
        methods = ["proof", "oracle"] if args.method == "both" else [args.method]
        res = {"target": _edges(target), "methods": {}}
        recon = {}
        for m in methods:
            if m == "proof":
                dec = decompose(target, poly, args.seed)
            else:
                dec = oracle_decompose(basis, target)
                if dec is None:
                    raise PropertyFailure({"method": "oracle", "error": "target outside facial span"})
            back = reconstruct(basis, dec.two_face_ids)
            recon[m] = back.bits
            res["methods"][m] = {
                "two_face_ids": list(dec.two_face_ids),
                "two_faces": [list(lat.two_faces[i]) for i in dec.two_face_ids],
                "reconstruction": "EXACT" if back.bits == target.bits else "MISMATCH",
            }
            _summary(f"{m}: {len(dec.two_face_ids)} facial cycles, "
                     f"RECONSTRUCTION={res['methods'][m]['reconstruction']}")
    except NotEven as exc:
        raise InputError(f"TargetNotEven: odd-degree vertices {exc.odd_vertices}") from None
    if len(methods) == 2:
        agree = recon["proof"] == recon["oracle"] == target.bits
        res["agree_on_target"] = agree
        _summary(f"AGREE_ON_TARGET={'true' if agree else 'false'}")
    _emit_dot(args.emit_dot, graph_to_dot(g, "target", highlight=target))
    if any(v["reconstruction"] != "EXACT" for v in res["methods"].values()) or \
            res.get("agree_on_target") is False:
        raise PropertyFailure(res)
    return res


def cmd_bipartite(args, poly):
    lat = poly.lattice
    g = lat.graph
    direct = is_bipartite(g)
    via = bipartite_via_2faces(lat)
    res = {"is_bipartite": direct.bipartite, "bipartite_via_2faces": via,
           "equivalent": direct.bipartite == via}
    if not direct.bipartite:
        method = "proof" if poly.points is not None and lat.polytope_dim >= 2 else "oracle"
        wid = odd_facial_witness(poly, args.seed, method)
        res["odd_cycle"] = list(direct.odd_cycle.vertices)
        res["odd_facial_witness"] = {"two_face_id": wid, "two_face": list(lat.two_faces[wid]),
                                     "method": method}
        _emit_dot(args.emit_dot, graph_to_dot(g, "odd_cycle", highlight=direct.odd_cycle.edge_set))
    else:
        _emit_dot(args.emit_dot, graph_to_dot(g, "coloring", colors=direct.coloring))
    _summary(f"bipartite={direct.bipartite} via 2-faces={via} "
             f"EQUIVALENT={'true' if res['equivalent'] else 'false'}")
    if not res["equivalent"]:
        raise PropertyFailure(res)
    return res


def cmd_corpus(args):
    pts = generate(args.family, args.dim, args.n, args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{file_stem(args.family, args.dim, args.n, args.seed)}.json"
    path.write_text(dump_json(points_to_dict(pts)))
    _summary(f"wrote {path} ({len(pts)} vertices)")
    return {"family": args.family, "dim": args.dim, "n": args.n, "files": [
        {"path": path.name, "vertices": len(pts)}]}


def verify_polytope(poly, seeds: int, samples: int, seed: int) -> list:
    """Run the full property battery; returns check records sorted by id."""
    lat = poly.lattice
    g = lat.graph
    checks = {}
    basis = facial_basis(lat)

    expected = len(g.edges) - g.vertex_count + 1
    checks["rank"] = {
        "status": "PASS" if basis.rank == expected == cycle_space_dimension(g) else "FAIL",
        "rank": basis.rank, "expected": expected}

    direct = is_bipartite(g)
    via = bipartite_via_2faces(lat)
    rec = {"is_bipartite": direct.bipartite, "bipartite_via_2faces": via}
    ok = direct.bipartite == via
    if ok and not direct.bipartite:
        wid = odd_facial_witness(poly, seed, "proof" if poly.points is not None else "oracle")
        rec["odd_facial_witness"] = wid
        ok = len(basis.rows[wid]) % 2 == 1
    rec["status"] = "PASS" if ok else "FAIL"
    checks["bipartite_equivalence"] = rec

    if lat.polytope_dim == 3:
        acc = 0
        for r in basis.rows:
            acc ^= r.bits
        checks["facial_xor_empty"] = {"status": "PASS" if acc == 0 else "FAIL",
                                      "residual_edges": _edges(EdgeSet(acc, g))}

    rng = random.Random(f"verify:{seed}")
    ctx = PrefixContext(lat, poly.points, seed) if poly.points is not None else None
    dec_rec = {"status": "PASS", "samples": samples, "methods": ["oracle"]}
    if ctx is not None:
        dec_rec["methods"] = ["proof", "oracle"]
    for i in range(samples):
        target = random_even_subgraph(g, rng)
        failure = None
        odec = oracle_decompose(basis, target)
        if odec is None or reconstruct(basis, odec.two_face_ids).bits != target.bits:
            failure = "oracle did not reconstruct the target"
        elif ctx is not None:
            try:
                pdec = decompose(target, poly, seed, context=ctx)
            except FacialCyclesError as exc:
                failure = f"proof method raised {type(exc).__name__}: {exc}"
            else:
                if reconstruct(basis, pdec.two_face_ids).bits != target.bits:
                    failure = "proof method did not reconstruct the target"
        if failure:
            dec_rec.update(status="FAIL", failing_sample=i, target=_edges(target), error=failure)
            break
    checks["decomposition"] = dec_rec

    if poly.points is None:
        checks["shelling"] = {"status": "SKIP", "reason": "no coordinates"}
    else:
        sh_rec = {"status": "PASS", "seeds": seeds}
        for s in range(seeds):
            try:
                sh = line_shelling(lat, poly.points, s)
            except FacialCyclesError as exc:
                sh_rec.update(status="FAIL", seed=s, error=f"{type(exc).__name__}: {exc}")
                break
            if not sh.valid:
                sh_rec.update(status="FAIL", seed=s, shelling=_shelling_dict(sh))
                break
        checks["shelling"] = sh_rec
    return [{"id": k, **checks[k]} for k in sorted(checks)]


def cmd_verify(args, poly):
    checks = verify_polytope(poly, args.seeds, args.samples, args.seed)
    status = "FAIL" if any(c["status"] == "FAIL" for c in checks) else "PASS"
    for c in checks:
        _summary(f"{c['id']}: {c['status']}")
    _summary(status)
    res = {"status": status, "checks": checks}
    if status == "FAIL":
        raise PropertyFailure(res)
    return res


# -- driver ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="facialcycles",
                                description="Face lattices, shellings and facial-cycle decompositions.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_, input_=True):
        sp = sub.add_parser(name, help=help_)
        if input_:
            sp.add_argument("input", help="PolytopeFile JSON")
        sp.add_argument("--seed", type=int, default=0, help="seed (default 0)")
        sp.add_argument("--timing", action="store_true", help="include wall time in the report")
        return sp

    sp = add("lattice", "print the face lattice and f-vector")
    sp.add_argument("--emit-dot", metavar="PATH", help="write the graph as DOT")
    add("shelling", "compute and verify a line shelling")
    sp = add("decompose", "decompose an even subgraph into facial cycles")
    sp.add_argument("--target", required=True, help='"u-v,u-v,..." or "random:<k>:<seed>"')
    sp.add_argument("--method", choices=("proof", "oracle", "both"), default="both")
    sp.add_argument("--emit-dot", metavar="PATH", help="write the graph with the target highlighted")
    sp = add("bipartite", "compare bipartiteness of the graph and of the 2-faces")
    sp.add_argument("--emit-dot", metavar="PATH", help="write colouring or odd cycle as DOT")
    sp = add("corpus", "write a polytope file from a family", input_=False)
    sp.add_argument("--family", choices=FAMILIES, required=True)
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--n", type=int, help="vertex count (cyclic) or sample size (random)")
    sp.add_argument("--out", required=True, help="output directory")
    sp = add("verify", "run the full property battery on one polytope")
    sp.add_argument("--seeds", type=int, default=3, help="shelling seeds 0..k-1 (default 3)")
    sp.add_argument("--samples", type=int, default=20, help="random even subgraphs (default 20)")
    return p


COMMANDS = {"lattice": cmd_lattice, "shelling": cmd_shelling, "decompose": cmd_decompose,
            "bipartite": cmd_bipartite, "verify": cmd_verify}


def main(argv=None) -> int:
    level = os.environ.get("FC_LOG")
    if level:
        logging.basicConfig(level=level.upper(), stream=sys.stderr,
                            format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    started = time.perf_counter()
    report = {"command": args.command, "input_digest": None, "seed": args.seed}
    code = 0
    try:
        if args.command == "corpus":
            report["results"] = cmd_corpus(args)
        else:
            try:
                report["input_digest"] = hashlib.sha256(Path(args.input).read_bytes()).hexdigest()
            except OSError as exc:
                raise InputError(f"{args.input}: {exc.strerror}") from None
            try:
                poly, _ = load_polytope(args.input)
            except NotALattice as exc:
                if args.command != "verify":
                    raise
                report["results"] = {"status": "FAIL", "checks": [
                    {"id": "lattice", "status": "FAIL", "error": f"NotALattice: {exc}"}]}
                _summary(f"lattice: FAIL (NotALattice: {exc})")
                code = 1
            else:
                report["results"] = COMMANDS[args.command](args, poly)
    except PropertyFailure as exc:
        report["results"] = exc.args[0]
        code = 1
    except InputError as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        _summary(f"error: {exc}")
        code = 2
    except FacialCyclesError as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        _summary(f"error: {type(exc).__name__}: {exc}")
        code = 1
    if args.timing:
        report["wall_time_s"] = round(time.perf_counter() - started, 6)
    sys.stdout.write(dump_json(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
