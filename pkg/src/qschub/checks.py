"""Verification sweeps: every structural property the engine promises, runnable
per instance and aggregated by the CLI's verify command.

Each check returns CheckResult rows instead of raising, so a sweep always
produces a full report; the CLI turns any failed row into exit status 3.
The default suite covers the full flags of A1, A2, A3, B2, G2 and the
Grassmannians Gr(2,4), Gr(2,5), Gr(3,6), plus the golden Gr(4,9) product
as a sign-convention tripwire.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass

from . import grassmann
from .parabolic import ParabolicData, make_parabolic
from .quantum import (
    QClass,
    min_occurring_degrees,
    multiply_classes,
    qproduct_GB,
    quantum_chevalley,
    raising_witness_report,
)
from .weyl import WeylGroup, simple_reflection

__all__ = [
    "CheckResult",
    "run_instance_checks",
    "DEFAULT_SUITE",
    "GOLDEN_GR49",
]

# The anchor product on Gr(4,9): sigma_{5443} * sigma_{5441}.
GOLDEN_GR49 = {
    (2, (5, 3, 2, 2)): 1,
    (2, (5, 3, 3, 1)): 1,
    (2, (5, 4, 2, 1)): 1,
    (3, (3,)): 1,
    (3, (2, 1)): 2,
    (3, (1, 1, 1)): 1,
}

_ASSOC_TRIPLES = 100


@dataclass
class CheckResult:
    instance: str
    name: str
    passed: bool
    checked: int
    detail: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


def _result(instance, name, failures, checked):
    """Collapse a failure list into one row, keeping the first few samples."""
    detail = "; ".join(failures[:3])
    if len(failures) > 3:
        detail += f"; ... {len(failures)} failures total"
    return CheckResult(instance, name, not failures, checked, detail)


# ---------------------------------------------------------------------------
# structural checks, any instance


def check_pairing_integrality(P: ParabolicData, label: str) -> list:
    system = P.system
    bad = []
    count = 0
    for alpha in system.positive_roots:
        for i in range(system.rank):
            count += 1
            h = system.pairing(alpha, system.fundamental_weights[i])
            if h.denominator != 1 or h < 0:
                bad.append(f"h_{alpha.coeffs}(w{i + 1}) = {h}")
    return [_result(label, "pairing-integrality", bad, count)]


def check_weyl_structure(P: ParabolicData, label: str) -> list:
    system = P.system
    W = WeylGroup(system)
    bad = []
    count = 2
    if W.expected_order is not None and W.order != W.expected_order:
        bad.append(f"|W| = {W.order}, expected {W.expected_order}")
    wo = W.longest
    npos = len(system.positive_roots)
    if wo.length != npos or (wo * wo).length != 0:
        bad.append("longest element is not a length-|R+| involution")
    for w in W.elements:
        count += 2
        if (wo * w).length != npos - w.length:
            bad.append(f"l(wo*w) != l(wo)-l(w) at {w.word()}")
        for i in range(system.rank):
            if abs((w * simple_reflection(system, i)).length - w.length) != 1:
                bad.append(f"l(w*s{i + 1}) != l(w)+-1 at {w.word()}")
    return [_result(label, "weyl-structure", bad, count)]


def check_bruhat_duality(P: ParabolicData, label: str) -> list:
    cosets = P.cosets()
    dim = P.dim
    bad = []
    count = 0
    for u in cosets:
        count += 2
        du = P.dual(u)
        if P.dual(du) != u:
            bad.append(f"dual not involutive at {u.word()}")
        if du.length != dim - u.length:
            bad.append(f"dual length off at {u.word()}")
    for u in cosets:
        for v in cosets:
            count += 1
            if P.bruhat_leq(u, v) != P.bruhat_leq(P.dual(v), P.dual(u)):
                bad.append(f"u<=v vs dual(v)<=dual(u) differ at {u.word()},{v.word()}")
    return [_result(label, "bruhat-duality", bad, count)]


def check_wp_degree_invariance(P: ParabolicData, label: str) -> list:
    from .weyl import enumerate_parabolic_subgroup

    bad = []
    count = 0
    wp = enumerate_parabolic_subgroup(P.system, P.delta_P)
    for w in wp:
        for alpha in P.crossing_roots:
            count += 1
            image = w.apply_root(alpha)
            coeffs = image.coeffs
            if all(c <= 0 for c in coeffs):
                image = -image
            if not P.is_crossing(image):
                bad.append(f"W_P moved {alpha.coeffs} out of the crossing set")
                continue
            if P.degree_of_root(image) != P.degree_of_root(alpha):
                bad.append(f"degree changed under W_P at {alpha.coeffs}")
    return [_result(label, "wp-degree-invariance", bad, count)]


def check_graph_structure(P: ParabolicData, label: str) -> list:
    g = P.graph()
    bad = []
    count = 0
    for (i, j), (root, deg) in g.edges.items():
        count += 1
        if not any(c > 0 for c in deg):
            bad.append(f"edge {i}-{j} has zero degree")
        du = P.dual(g.nodes[i])
        dv = P.dual(g.nodes[j])
        got = P.adjacency(du, dv)
        if got is None or got[1] != deg:
            bad.append(f"dual edge {i}-{j} missing or degree mismatch")
    # covers generate the Bruhat order
    n = g.node_count
    reach = [[False] * n for _ in range(n)]
    for i in range(n):
        reach[i][i] = True
    covers = [
        (i, j) if g.nodes[i].length < g.nodes[j].length else (j, i)
        for (i, j) in g.edges
        if abs(g.nodes[i].length - g.nodes[j].length) == 1
    ]
    changed = True
    while changed:
        changed = False
        for i, j in covers:
            # propagate: anything reaching i also reaches j
            for s in range(n):
                if reach[s][i] and not reach[s][j]:
                    reach[s][j] = True
                    changed = True
    for a in range(n):
        for b in range(n):
            count += 1
            if reach[a][b] != P.bruhat_leq(g.nodes[a], g.nodes[b]):
                bad.append(
                    f"cover closure vs bruhat_leq differ at "
                    f"{g.nodes[a].word()},{g.nodes[b].word()}"
                )
    return [_result(label, "graph-structure", bad, count)]


def check_chain_symmetry(P: ParabolicData, label: str) -> list:
    # Dualizing every node of a chain and reversing it turns a (u,v)-chain
    # into a (v,u)-chain of the same degree, so the frontier must be
    # symmetric in its arguments; that IS the duality statement (plain
    # frontier(dual u, dual v) equality is false already on A1).
    cosets = P.cosets()
    bad = []
    count = 0
    for u in cosets:
        for v in cosets:
            count += 1
            f_uv = set(P.min_chain_degrees(u, v))
            if f_uv != set(P.min_chain_degrees(v, u)):
                bad.append(f"frontier not symmetric at {u.word()},{v.word()}")
            if ((0,) * len(P.q_index) in f_uv) != P.bruhat_leq(u, P.dual(v)):
                bad.append(f"zero-degree chain vs u<=dual(v) at {u.word()},{v.word()}")
    return [_result(label, "chain-symmetry", bad, count)]


# ---------------------------------------------------------------------------
# product sweeps


def _grading_ok(P: ParabolicData, c: QClass, total_len: int) -> bool:
    for (d, w), _coeff in c.terms.items():
        drop = sum(
            di * P.chern_number(P.system.simple_roots[bi])
            for di, bi in zip(d, P.q_index)
        )
        if w.length != total_len - drop:
            return False
    return True


def _flag_product_sweep(P: ParabolicData, label: str, guard: int) -> list:
    cosets = P.cosets()
    zero = (0,) * len(P.q_index)
    top = max(cosets, key=lambda c: c.length)
    rows = {
        name: []
        for name in (
            "nonvanishing",
            "grading",
            "nonnegativity",
            "commutativity",
            "minimal-degree-agreement",
            "chevalley-column",
            "classical-duality",
        )
    }
    count = 0
    for u in cosets:
        for v in cosets:
            count += 1
            prod = qproduct_GB(P, u, v, max_group_order=guard)
            if prod.is_zero:
                rows["nonvanishing"].append(f"zero product at {u.word()},{v.word()}")
                continue
            if not _grading_ok(P, prod, u.length + v.length):
                rows["grading"].append(f"grading broken at {u.word()},{v.word()}")
            if any(c <= 0 for c in prod.terms.values()):
                rows["nonnegativity"].append(
                    f"nonpositive coefficient at {u.word()},{v.word()}"
                )
            if prod.terms != qproduct_GB(P, v, u, max_group_order=guard).terms:
                rows["commutativity"].append(
                    f"not commutative at {u.word()},{v.word()}"
                )
            if set(min_occurring_degrees(prod)) != set(P.min_chain_degrees(u, v)):
                rows["minimal-degree-agreement"].append(
                    f"min degrees vs chains at {u.word()},{v.word()}"
                )
            classical_top = prod.coefficient(zero, top)
            expect_top = 1 if v == P.dual(u) else 0
            if classical_top != expect_top:
                rows["classical-duality"].append(
                    f"top classical coefficient {classical_top} at "
                    f"{u.word()},{v.word()}"
                )
            if u.length == 1:
                beta = u.min_rep.word()[0]
                if prod.terms != quantum_chevalley(P, beta, v).terms:
                    rows["chevalley-column"].append(
                        f"divisor column differs from Chevalley at "
                        f"s{beta + 1},{v.word()}"
                    )
    return [_result(label, name, bad, count) for name, bad in rows.items()]


def _flag_associativity(P: ParabolicData, label: str, guard: int) -> list:
    cosets = P.cosets()
    rng = random.Random(f"{label}|assoc")
    bad = []

    def prod(u, v):
        return qproduct_GB(P, u, v, max_group_order=guard)

    for _ in range(_ASSOC_TRIPLES):
        u, v, w = (rng.choice(cosets) for _ in range(3))
        left = multiply_classes(prod(u, v), QClass.basis(P, w), prod)
        right = multiply_classes(QClass.basis(P, u), prod(v, w), prod)
        if left.terms != right.terms:
            bad.append(f"associativity fails at {u.word()},{v.word()},{w.word()}")
    return [_result(label, "associativity", bad, _ASSOC_TRIPLES)]


def _grassmann_product_sweep(P: ParabolicData, label: str) -> list:
    k, n = P.grassmannian_shape()
    parts = list(grassmann.partitions_in_box(k, n))
    full_box = tuple([n - k] * k)
    rows = {
        name: []
        for name in (
            "nonvanishing",
            "grading",
            "nonnegativity",
            "commutativity",
            "degree-triple-agreement",
            "chevalley-column",
            "classical-duality",
            "monotone-chains",
        )
    }
    count = 0
    for lam in parts:
        u = grassmann.coset_of_partition(P, lam)
        for mu in parts:
            count += 1
            v = grassmann.coset_of_partition(P, mu)
            prod = grassmann.qproduct_grassmann(k, n, lam, mu)
            tag = f"{lam},{mu}"
            if not prod:
                rows["nonvanishing"].append(f"zero product at {tag}")
                continue
            if any(
                sum(lam) + sum(mu) != sum(nu) + d * n for (d, nu) in prod
            ):
                rows["grading"].append(f"grading broken at {tag}")
            if any(c <= 0 for c in prod.values()):
                rows["nonnegativity"].append(f"nonpositive coefficient at {tag}")
            if prod != grassmann.qproduct_grassmann(k, n, mu, lam):
                rows["commutativity"].append(f"not commutative at {tag}")
            diag = grassmann.min_degree_diagonal(k, n, lam, mu)
            occurring = {(min(d for (d, _nu) in prod),)}
            chains = set(P.min_chain_degrees(u, v))
            if not (occurring == {(diag,)} == chains):
                rows["degree-triple-agreement"].append(
                    f"diagonal {diag} vs chains {chains} vs product at {tag}"
                )
            mono_ok = grassmann.monotone_chain_exists(k, n, lam, mu, diag) and (
                diag == 0 or not grassmann.monotone_chain_exists(k, n, lam, mu, diag - 1)
            )
            if not mono_ok:
                rows["monotone-chains"].append(f"monotone chain mismatch at {tag}")
            classical_top = prod.get((0, full_box), 0)
            expect_top = 1 if mu == grassmann.dual_partition(k, n, lam) else 0
            if classical_top != expect_top:
                rows["classical-duality"].append(f"duality pairing off at {tag}")
            if lam == (1,):
                chev = quantum_chevalley(P, k - 1, v)
                as_coset = {
                    ((d,), grassmann.coset_of_partition(P, nu)): c
                    for (d, nu), c in prod.items()
                }
                if chev.terms != as_coset:
                    rows["chevalley-column"].append(
                        f"rim-hook column differs from Chevalley at {tag}"
                    )
    return [_result(label, name, bad, count) for name, bad in rows.items()]


def _grassmann_associativity(P: ParabolicData, label: str) -> list:
    k, n = P.grassmannian_shape()
    parts = list(grassmann.partitions_in_box(k, n))
    rng = random.Random(f"{label}|assoc")
    bad = []

    def prod_dict(lam, mu):
        return grassmann.qproduct_grassmann(k, n, lam, mu)

    def mult(ca: dict, cb: dict) -> dict:
        out: dict = {}
        for (d1, lam), a in ca.items():
            for (d2, mu), b in cb.items():
                for (d3, nu), c in prod_dict(lam, mu).items():
                    key = (d1 + d2 + d3, nu)
                    out[key] = out.get(key, 0) + a * b * c
        return {key: c for key, c in out.items() if c}

    for _ in range(_ASSOC_TRIPLES):
        lam, mu, nu = (rng.choice(parts) for _ in range(3))
        left = mult(prod_dict(lam, mu), {(0, nu): 1})
        right = mult({(0, lam): 1}, prod_dict(mu, nu))
        if left != right:
            bad.append(f"associativity fails at {lam},{mu},{nu}")
    return [_result(label, "associativity", bad, _ASSOC_TRIPLES)]


def check_partition_dictionary(P: ParabolicData, label: str) -> list:
    k, n = P.grassmannian_shape()
    cosets = P.cosets()
    bad = []
    count = 0
    by_partition = {}
    for u in cosets:
        count += 1
        lam = grassmann.partition_of_coset(P, u)
        by_partition[lam] = u
        if grassmann.coset_of_partition(P, lam) != u:
            bad.append(f"dictionary round trip fails at {u.word()}")
        dual_lam = grassmann.partition_of_coset(P, P.dual(u))
        if dual_lam != grassmann.dual_partition(k, n, lam):
            bad.append(f"dual vs complement-rotation differ at {lam}")
    if len(by_partition) != len(cosets):
        bad.append("partition labels not distinct")
    for lam, u in by_partition.items():
        for mu, v in by_partition.items():
            count += 1
            padded_mu = mu + (0,) * (k - len(mu))
            contains = all(
                a <= b for a, b in zip(lam + (0,) * (k - len(lam)), padded_mu)
            )
            if P.bruhat_leq(u, v) != contains:
                bad.append(f"containment vs Bruhat at {lam},{mu}")
            if u == v:
                continue
            adj = P.adjacency(u, v)
            if (adj is not None) != grassmann.rimhook_adjacent(lam, mu, k):
                bad.append(f"adjacency vs rim hook at {lam},{mu}")
            if adj is not None and adj[1] != (1,):
                bad.append(f"edge degree not 1 at {lam},{mu}")
    return [_result(label, "partition-dictionary", bad, count)]


def check_quantum_monk(P: ParabolicData, label: str) -> list:
    """Type-A full flag: Chevalley terms vs direct permutation arithmetic."""
    system = P.system
    n = system.rank + 1
    bad = []
    count = 0

    def inversions(p):
        return sum(
            1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j]
        )

    for u in P.cosets():
        up = grassmann.weyl_to_perm(u.min_rep)
        lu = u.length
        for r in range(system.rank):
            count += 1
            expected: dict = {}
            for a in range(1, n):
                for b in range(a + 1, n + 1):
                    if not a <= r + 1 < b:
                        continue
                    vp = list(up)
                    vp[a - 1], vp[b - 1] = vp[b - 1], vp[a - 1]
                    lv = inversions(vp)
                    v = P.to_coset(grassmann.perm_to_weyl(system, tuple(vp)))
                    zero = (0,) * system.rank
                    if lv == lu + 1:
                        expected[(zero, v)] = expected.get((zero, v), 0) + 1
                    if lv == lu + 1 - 2 * (b - a):
                        deg = tuple(
                            1 if a - 1 <= i <= b - 2 else 0 for i in range(system.rank)
                        )
                        expected[(deg, v)] = expected.get((deg, v), 0) + 1
            got = quantum_chevalley(P, r, u)
            if got.terms != expected:
                bad.append(f"Monk pattern differs at {u.word()}, node {r + 1}")
    return [_result(label, "quantum-monk", bad, count)]


def check_raising_witness(P: ParabolicData, label: str, guard: int) -> list:
    report = raising_witness_report(P, max_group_order=guard)
    bad = [f"no witness for {u.word()} <= {v.word()}" for u, v in report.failures]
    return [_result(label, "raising-witness", bad, report.pairs_checked)]


def check_golden_product(P: ParabolicData, label: str) -> list:
    got = grassmann.qproduct_grassmann(4, 9, (5, 4, 4, 3), (5, 4, 4, 1))
    ok = got == GOLDEN_GR49
    detail = "" if ok else f"got {sorted(got.items())}"
    return [CheckResult(label, "golden-product", ok, 1, detail)]


# ---------------------------------------------------------------------------
# suite wiring

DEFAULT_SUITE = (
    ("A1", "flag"),
    ("A2", "flag"),
    ("A3", "flag"),
    ("B2", "flag"),
    ("G2", "flag"),
    ("gr", "2", "4"),
    ("gr", "2", "5"),
    ("gr", "3", "6"),
    ("gr", "4", "9"),
)

_SMALL_GROUP = 1000


def build_instance(tokens, max_elements: int = 10 ** 6) -> tuple[str, ParabolicData]:
    """Resolve ("gr","2","4") or ("A3","flag") or ("A3","2") style tokens."""
    tokens = tuple(str(t) for t in tokens)
    if not tokens:
        raise ValueError("empty instance description")
    label = " ".join(tokens)
    if tokens[0].lower() == "gr":
        if len(tokens) != 3:
            raise ValueError("Grassmannian instances read: gr <k> <n>")
        try:
            k, n = int(tokens[1]), int(tokens[2])
        except ValueError:
            raise ValueError(f"gr needs integers, got {tokens[1:]}") from None
        return label, grassmann.grassmannian_parabolic(k, n, max_elements=max_elements)
    head = tokens[0]
    if len(head) < 2 or head[0].upper() not in "ABCDEFG":
        raise ValueError(f"cannot read instance type from {head!r}")
    try:
        rank = int(head[1:])
    except ValueError:
        raise ValueError(f"cannot read rank from {head!r}") from None
    type_label = head[0].upper()
    rest = tokens[1:]
    if rest in ((), ("flag",)):  # bare "A1" is the full flag
        retained = tuple(range(rank))
    else:
        try:
            marked = sorted(int(t) for t in rest)
        except ValueError:
            raise ValueError(
                f"instance tail must be 'flag' or 1-based node indices, got {rest}"
            ) from None
        if not marked:
            raise ValueError("at least one node must be kept out of Delta_P")
        if any(not 1 <= m <= rank for m in marked):
            raise ValueError(f"node indices must lie in 1..{rank}: {marked}")
        retained = tuple(m - 1 for m in marked)
    delta_p = tuple(i for i in range(rank) if i not in retained)
    return label, make_parabolic(type_label, rank, delta_p, max_elements=max_elements)


def run_instance_checks(tokens, max_group_order: int = 240) -> list:
    """All applicable checks for one instance; returns CheckResult rows."""
    label, P = build_instance(tokens)
    k_n = P.grassmannian_shape()
    node_count = len(P.cosets())
    results: list = []
    if k_n == (4, 9):
        # kept to its role as golden-product tripwire; sweeps are desk-scale only
        results.extend(check_golden_product(P, label))
        return results
    results.extend(check_pairing_integrality(P, label))
    from .weyl import _GROUP_ORDER

    expected = _GROUP_ORDER.get((P.system.type_label, P.system.rank))
    if expected is not None and expected <= _SMALL_GROUP:
        results.extend(check_weyl_structure(P, label))
    results.extend(check_bruhat_duality(P, label))
    results.extend(check_wp_degree_invariance(P, label))
    results.extend(check_graph_structure(P, label))
    results.extend(check_chain_symmetry(P, label))
    if not P.delta_P:
        results.extend(_flag_product_sweep(P, label, max_group_order))
        results.extend(_flag_associativity(P, label, max_group_order))
        if P.system.type_label == "A":
            results.extend(check_quantum_monk(P, label))
        results.extend(check_raising_witness(P, label, max_group_order))
    elif k_n is not None:
        results.extend(check_partition_dictionary(P, label))
        results.extend(_grassmann_product_sweep(P, label))
        results.extend(_grassmann_associativity(P, label))
        results.extend(check_raising_witness(P, label, max_group_order))
    return results
