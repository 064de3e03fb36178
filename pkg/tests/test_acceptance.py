"""End-to-end acceptance checks over the desk-scale corpus.

Each test prints one ``CRITERION <k> PASS|FAIL`` line; the lines are also
repeated in pytest's terminal summary. Run standalone with
``pytest tests/test_acceptance.py -v``.
"""

import contextlib
import io
import random
import time

import pytest

from facialcycles.cli import main
from facialcycles.corpus import crosspolytope, cube, cyclic, random_polytope, simplex
from facialcycles.cyclespace import (
    bipartite_via_2faces,
    facial_basis,
    is_bipartite,
    oracle_decompose,
    random_even_subgraph,
    reconstruct,
)
from facialcycles.decompose import PrefixContext, decompose_with_trace, odd_facial_witness
from facialcycles.exceptions import FacialCyclesError, InternalAssertion
from facialcycles.formats import dump_json, points_to_dict
from facialcycles.geometry import Polytope
from facialcycles.shelling import line_shelling

import conftest

pytestmark = pytest.mark.acceptance

SAMPLES = 50
SHELLING_SEEDS = range(5)


def corpus_points():
    out = {}
    for d in range(2, 7):
        out[f"simplex{d}"] = simplex(d)
    for d in range(2, 6):
        out[f"cube{d}"] = cube(d)
    for d in (3, 4):
        out[f"cross{d}"] = crosspolytope(d)
    for n in (6, 7, 8):
        out[f"cyclic4_n{n}"] = cyclic(n, 4)
    for i in range(20):
        n = 8 + i % 7
        out[f"random3_n{n}_s{i}"] = random_polytope(3, n, i)
    for i in range(10):
        n = 8 + i % 5
        out[f"random4_n{n}_s{i}"] = random_polytope(4, n, i)
    return out


def record(k, ok, detail):
    line = f"CRITERION {k} {'PASS' if ok else 'FAIL'}: {detail}"
    print(line)
    conftest.ACCEPTANCE_LINES.append(line)
    return ok


@pytest.fixture(scope="module")
def corpus():
    t0 = time.perf_counter()
    polys = {name: Polytope.from_points(pts) for name, pts in corpus_points().items()}
    return polys, time.perf_counter() - t0


@pytest.fixture(scope="module")
def workload(corpus):
    """Criterion 2's run: proof method and oracle on 50 targets per polytope."""
    polys, _ = corpus
    t0 = time.perf_counter()
    rows = []
    for name, poly in polys.items():
        basis = facial_basis(poly.lattice)
        rng = random.Random(f"acceptance:{name}")
        ctx = PrefixContext(poly.lattice, poly.points, seed=0)
        for i in range(SAMPLES):
            target = random_even_subgraph(poly.graph, rng)
            row = {"name": name, "sample": i, "target": target.bits, "crossings": 0}
            try:
                dec, trace = decompose_with_trace(target, poly, context=ctx)
            except InternalAssertion as exc:
                row["assertion"] = str(exc)
            except FacialCyclesError as exc:
                row["error"] = f"{type(exc).__name__}: {exc}"
            else:
                row["proof"] = reconstruct(basis, dec.two_face_ids).bits
                row["crossings"] = sum(r["kind"] == "crossing" for r in trace)
                row["measure_ok"] = all(r["measure_W"] < r["measure"] and r["j"] >= 2
                                        for r in trace if r["kind"] == "crossing")
            odec = oracle_decompose(basis, target)
            row["oracle"] = None if odec is None else reconstruct(basis, odec.two_face_ids).bits
            rows.append(row)
    return rows, time.perf_counter() - t0


def test_criterion_1_rank_identity(corpus):
    polys, build_time = corpus
    t0 = time.perf_counter()
    bad = []
    for name, poly in polys.items():
        g = poly.graph
        rank = facial_basis(poly.lattice).rank
        if rank != len(g.edges) - g.vertex_count + 1:
            bad.append((name, rank))
    elapsed = build_time + time.perf_counter() - t0
    ok = not bad and elapsed < 60
    record(1, ok, f"{len(polys)} polytopes, rank mismatches {bad}, {elapsed:.1f}s (< 60s)")
    assert ok


def test_criterion_2_reconstruction(workload):
    rows, elapsed = workload
    proof_bad = [(r["name"], r["sample"]) for r in rows if r.get("proof") != r["target"]]
    oracle_bad = [(r["name"], r["sample"]) for r in rows if r["oracle"] is None]
    ok = not proof_bad and not oracle_bad and elapsed < 120
    record(2, ok, f"{len(rows)} targets, proof failures {proof_bad[:5]}, oracle failures "
                  f"{oracle_bad[:5]}, {elapsed:.1f}s (< 120s)")
    assert ok


def test_criterion_3_method_agreement(workload):
    rows, _ = workload
    bad = [(r["name"], r["sample"]) for r in rows
           if not (r.get("proof") == r["oracle"] == r["target"])]
    ok = not bad
    record(3, ok, f"{len(rows)} targets, disagreements {bad[:5]}")
    assert ok


def test_criterion_4_bipartite_equivalence(corpus):
    polys, _ = corpus
    bad = []
    for name, poly in polys.items():
        lat = poly.lattice
        direct = bool(is_bipartite(lat.graph))
        if direct != bipartite_via_2faces(lat):
            bad.append((name, "disagree"))
        if name.startswith("cube") and not direct:
            bad.append((name, "cube not bipartite"))
        if name.startswith(("simplex", "cross")):
            if direct:
                bad.append((name, "reported bipartite"))
                continue
            w = odd_facial_witness(poly, seed=0)
            if w is None or len(lat.two_faces[w]) % 2 == 0:
                bad.append((name, "no odd facial witness"))
    ok = not bad
    record(4, ok, f"{len(polys)} polytopes, problems {bad}")
    assert ok


def test_criterion_5_shelling_validity(corpus):
    polys, _ = corpus
    bad = []
    runs = 0
    for name, poly in polys.items():
        for seed in SHELLING_SEEDS:
            runs += 1
            try:
                sh = line_shelling(poly.lattice, poly.points, seed)
            except FacialCyclesError as exc:
                bad.append((name, seed, type(exc).__name__))
                continue
            for r in sh.per_step_reports:
                # None marks a vacuous check: polygon edges meet in points
                if not (r.intersection_nonempty and r.intersection_pure_codim2
                        and r.intersection_strongly_connected is not False
                        and r.prefix_strongly_connected
                        and r.intersection_graph_connected is not False):
                    bad.append((name, seed, r.step_index))
                if poly.dim >= 3 and r.intersection_graph_connected is not True:
                    bad.append((name, seed, r.step_index, "graph"))
    ok = not bad
    record(5, ok, f"{runs} shellings, failures {bad[:5]}")
    assert ok


def test_criterion_6_facial_xor_in_dimension_3(corpus):
    polys, _ = corpus
    checked, bad = 0, []
    for name, poly in polys.items():
        if poly.dim != 3:
            continue
        checked += 1
        basis = facial_basis(poly.lattice)
        if reconstruct(basis, range(len(basis.rows))):
            bad.append(name)
    ok = checked > 0 and not bad
    record(6, ok, f"{checked} 3-polytopes, nonempty XOR {bad}")
    assert ok


def test_criterion_7_no_internal_assertions(workload):
    rows, _ = workload
    bad = [(r["name"], r["sample"], r["assertion"]) for r in rows if "assertion" in r]
    measure = [(r["name"], r["sample"]) for r in rows if r.get("measure_ok") is False]
    crossings = sum(r["crossings"] for r in rows)
    ok = not bad and not measure and crossings > 0
    record(7, ok, f"{len(rows)} targets, {crossings} crossing surgeries, "
                  f"assertion failures {bad[:3]}, measure violations {measure[:3]}")
    assert ok


def _verify_report(path, seed):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(["verify", str(path), "--seed", str(seed)])
    return code, out.getvalue().encode()


def test_criterion_8_determinism(corpus, tmp_path):
    names = ["simplex4", "cube4", "cross3", "cyclic4_n7", "random3_n8_s0", "random4_n9_s1"]
    pts = corpus_points()
    bad = []
    for name in names:
        path = tmp_path / f"{name}.json"
        path.write_text(dump_json(points_to_dict(pts[name])))
        for seed in (0, 7):
            first = _verify_report(path, seed)
            second = _verify_report(path, seed)
            if first != second or first[0] != 0:
                bad.append((name, seed, first[0]))
    ok = not bad
    record(8, ok, f"{len(names) * 2} repeated verify runs, differing or failing {bad}")
    assert ok
