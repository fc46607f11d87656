"""Acceptance gate: one test per shipped criterion, each with its time budget.

Every test records a single PASS/FAIL verdict line (echoed in the terminal
summary via conftest) and enforces both the check and its time budget with
assertions.
"""

import random
import time

import pytest

import conftest

from qschub import checks
from qschub.grassmann import (
    dual_partition,
    grassmannian_parabolic,
    min_degree_diagonal,
    partition_of_coset,
    partitions_in_box,
    qproduct_grassmann,
)
from qschub.parabolic import make_parabolic
from qschub.quantum import (
    min_occurring_degrees,
    multiply_classes,
    qproduct_GB,
    raising_witness_report,
)

FLAG_INSTANCES = {
    "A1": ("A", 1, ()),
    "A2": ("A", 2, ()),
    "A3": ("A", 3, ()),
    "B2": ("B", 2, ()),
    "G2": ("G", 2, ()),
}
GR_INSTANCES = {"gr 2 4": (2, 4), "gr 2 5": (2, 5), "gr 3 6": (3, 6)}

_flag_cache = {}
_gr_cache = {}


def flag(label):
    if label not in _flag_cache:
        _flag_cache[label] = make_parabolic(*FLAG_INSTANCES[label])
    return _flag_cache[label]


def gr(label):
    if label not in _gr_cache:
        _gr_cache[label] = grassmannian_parabolic(*GR_INSTANCES[label])
    return _gr_cache[label]


def report(name, passed, elapsed, budget, detail=""):
    status = "PASS" if passed else "FAIL"
    suffix = f" :: {detail}" if detail else ""
    line = f"{status} {name} [{elapsed:.2f}s / budget {budget:.0f}s]{suffix}"
    print(line)
    conftest.ACCEPTANCE_LINES.append(line)
    assert passed, f"{name}: {detail}"
    assert elapsed < budget, f"{name} exceeded its {budget}s budget ({elapsed:.2f}s)"


def test_criterion_1_golden_product():
    t0 = time.monotonic()
    got = qproduct_grassmann(4, 9, (5, 4, 4, 3), (5, 4, 4, 1))
    ok = got == {
        (2, (5, 3, 2, 2)): 1,
        (2, (5, 3, 3, 1)): 1,
        (2, (5, 4, 2, 1)): 1,
        (3, (3,)): 1,
        (3, (2, 1)): 2,
        (3, (1, 1, 1)): 1,
    }
    report("criterion-1 golden product Gr(4,9)", ok,
           time.monotonic() - t0, 10, detail="" if ok else repr(got))


def test_criterion_2_minimal_degree_flag_sweep():
    t0 = time.monotonic()
    bad = []
    for label in FLAG_INSTANCES:
        P = flag(label)
        for u in P.cosets():
            for v in P.cosets():
                got = set(min_occurring_degrees(qproduct_GB(P, u, v)))
                want = set(P.min_chain_degrees(u, v))
                if got != want:
                    bad.append((label, u, v, got, want))
    report("criterion-2 minimal-degree frontiers on full flags", not bad,
           time.monotonic() - t0, 300,
           detail="" if not bad else f"{len(bad)} mismatches, first: {bad[0]}")


def test_criterion_3_grassmannian_triple_agreement():
    t0 = time.monotonic()
    bad = []
    for label, (k, n) in GR_INSTANCES.items():
        P = gr(label)
        for u in P.cosets():
            lam = partition_of_coset(P, u)
            for v in P.cosets():
                mu = partition_of_coset(P, v)
                prod = qproduct_grassmann(k, n, lam, mu)
                minima = set(min_occurring_degrees_dict(prod))
                chain = {d[0] for d in P.min_chain_degrees(u, v)}
                diag = {min_degree_diagonal(k, n, lam, mu)}
                if not (minima == chain == diag):
                    bad.append((label, lam, mu, minima, chain, diag))
    report("criterion-3 Grassmannian minimal-degree triple agreement", not bad,
           time.monotonic() - t0, 300,
           detail="" if not bad else f"{len(bad)} mismatches, first: {bad[0]}")


def min_occurring_degrees_dict(prod):
    degrees = {d for d, _ in prod}
    return {d for d in degrees if not any(e < d for e in degrees)}


def test_criterion_4_quantum_monk():
    t0 = time.monotonic()
    rows = []
    for label in ("A2", "A3"):
        rows.extend(checks.check_quantum_monk(flag(label), label))
    bad = [r for r in rows if not r.passed]
    report("criterion-4 quantum Monk coefficient pattern", not bad,
           time.monotonic() - t0, 60,
           detail="" if not bad else bad[0].detail)


def test_criterion_5_nonvanishing():
    t0 = time.monotonic()
    bad = []
    for label in FLAG_INSTANCES:
        P = flag(label)
        for u in P.cosets():
            for v in P.cosets():
                if qproduct_GB(P, u, v).is_zero:
                    bad.append((label, u, v))
    for label, (k, n) in GR_INSTANCES.items():
        box = list(partitions_in_box(k, n))
        for lam in box:
            for mu in box:
                if not qproduct_grassmann(k, n, lam, mu):
                    bad.append((label, lam, mu))
    report("criterion-5 products never vanish", not bad,
           time.monotonic() - t0, 300,
           detail="" if not bad else f"first zero: {bad[0]}")


def test_criterion_6_ring_axioms():
    t0 = time.monotonic()
    issues = []

    for label in FLAG_INSTANCES:
        P = flag(label)
        cosets = P.cosets()
        for u in cosets:
            for v in cosets:
                if qproduct_GB(P, u, v) != qproduct_GB(P, v, u):
                    issues.append(("commutativity", label, u, v))
        rng = random.Random(f"acceptance-6|{label}")
        pair = lambda a, b, _P=P: qproduct_GB(_P, a, b)
        for _ in range(100):
            a, b, c = (rng.choice(cosets) for _ in range(3))
            left = multiply_classes(qproduct_GB(P, a, b), pair(c, P.identity_coset()), pair)
            right = multiply_classes(pair(a, P.identity_coset()), qproduct_GB(P, b, c), pair)
            if left != right:
                issues.append(("associativity", label, a, b, c))
        top = max(cosets, key=lambda x: x.length)
        zero = (0,) * len(P.q_index)
        for u in cosets:
            for v in cosets:
                got = qproduct_GB(P, u, v).coefficient(zero, top)
                if got != (1 if v == P.dual(u) else 0):
                    issues.append(("classical-duality", label, u, v))

    for label, (k, n) in GR_INSTANCES.items():
        box = list(partitions_in_box(k, n))
        full = (n - k,) * k
        for lam in box:
            for mu in box:
                if qproduct_grassmann(k, n, lam, mu) != qproduct_grassmann(k, n, mu, lam):
                    issues.append(("commutativity", label, lam, mu))
                got = qproduct_grassmann(k, n, lam, mu).get((0, full), 0)
                if got != (1 if mu == dual_partition(k, n, lam) else 0):
                    issues.append(("classical-duality", label, lam, mu))
        rng = random.Random(f"acceptance-6|{label}")
        for _ in range(100):
            a, b, c = (rng.choice(box) for _ in range(3))
            if grassmann_triple(k, n, a, b, c) != grassmann_triple(k, n, c, b, a):
                issues.append(("associativity", label, a, b, c))

    report("criterion-6 ring axioms (both engines)", not issues,
           time.monotonic() - t0, 300,
           detail="" if not issues else f"{len(issues)} issues, first: {issues[0]}")


def grassmann_triple(k, n, a, b, c):
    """(a*b)*c as a plain dict, q-degrees accumulated."""
    out = {}
    for (d1, nu), c1 in qproduct_grassmann(k, n, a, b).items():
        for (d2, rho), c2 in qproduct_grassmann(k, n, nu, c).items():
            key = (d1 + d2, rho)
            out[key] = out.get(key, 0) + c1 * c2
            if out[key] == 0:
                del out[key]
    return out


def test_criterion_7_structural_invariants():
    t0 = time.monotonic()
    issues = []

    # grading and nonnegativity on every product term, all instances
    for label in FLAG_INSTANCES:
        P = flag(label)
        chern = {i: P.chern_number(P.system.simple_roots[i]) for i in P.q_index}
        for u in P.cosets():
            for v in P.cosets():
                for (d, w), coeff in qproduct_GB(P, u, v).terms.items():
                    if coeff <= 0:
                        issues.append(("nonnegativity", label, u, v, w, coeff))
                    expected = u.length + v.length - sum(
                        di * chern[i] for di, i in zip(d, P.q_index)
                    )
                    if w.length != expected:
                        issues.append(("grading", label, u, v, w))
    for label, (k, n) in GR_INSTANCES.items():
        for lam in partitions_in_box(k, n):
            for mu in partitions_in_box(k, n):
                for (d, nu), coeff in qproduct_grassmann(k, n, lam, mu).items():
                    if coeff <= 0:
                        issues.append(("nonnegativity", label, lam, mu, nu, coeff))
                    if sum(nu) != sum(lam) + sum(mu) - d * n:
                        issues.append(("grading", label, lam, mu, nu))

    # W_P-invariance of curve degrees, exhaustively over W_P
    for label in ("gr 2 4", "gr 2 5", "gr 3 6"):
        rows = checks.check_wp_degree_invariance(gr(label), label)
        issues.extend(r for r in rows if not r.passed)
    rows = checks.check_wp_degree_invariance(make_parabolic("B", 2, (0,)), "B2 P1")
    issues.extend(r for r in rows if not r.passed)

    # Bruhat duality on the quotient
    for label in list(FLAG_INSTANCES) + list(GR_INSTANCES):
        P = flag(label) if label in FLAG_INSTANCES else gr(label)
        for u in P.cosets():
            for v in P.cosets():
                if P.bruhat_leq(u, v) != P.bruhat_leq(P.dual(v), P.dual(u)):
                    issues.append(("bruhat-duality", label, u, v))

    report("criterion-7 structural invariants", not issues,
           time.monotonic() - t0, 120,
           detail="" if not issues else f"{len(issues)} issues, first: {issues[0]}")


def test_criterion_8_raising_witnesses():
    t0 = time.monotonic()
    bad = []
    for label, P in (("gr 2 4", gr("gr 2 4")), ("A2", flag("A2")), ("A3", flag("A3"))):
        rep = raising_witness_report(P)
        if not rep.all_found:
            bad.append((label, rep.failures[:3]))
    report("criterion-8 raising-witness search", not bad,
           time.monotonic() - t0, 120,
           detail="" if not bad else repr(bad))
