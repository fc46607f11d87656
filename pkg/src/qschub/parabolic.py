"""Parabolic quotients W/W_P: cosets, curve degrees, and chain search.

A parabolic datum is a root system together with the set Delta_P of
simple roots generating W_P (Delta_P = Delta is rejected; the quotient
must be a proper flag variety).  Cosets are stored through their
minimal-length representatives, found by stripping right descents that
lie in Delta_P.

Every positive root alpha outside R_P^+ ("crossing" root) carries two
integers used throughout:

* its degree vector d(alpha): the coefficient of alpha^vee over the
  coroots dual to Delta \\ Delta_P, i.e. coordinate n_beta (b,b)/(a,a)
  for each retained node beta — the curve class of the T-stable curve
  attached to alpha;
* its Chern number n_alpha = 4(rho_P, alpha)/(alpha, alpha) with
  2 rho_P the sum of the crossing roots — the degree of the tangent
  bundle on that curve, which controls the length drop in the quantum
  Chevalley formula.

Two cosets are adjacent when one is the projection of the other times a
reflection; the resulting edge-weighted graph supports a multi-objective
shortest-path search (`min_chain_degrees`) returning the Pareto frontier
of degrees of chains joining two classes, where a chain may start at any
coset above u and must end below the dual of v.  Labels are pruned by
componentwise dominance; since edge degrees are nonnegative and any
revisit is dominated by the shorter path, non-dominated labels always
come from simple paths, which bounds every coordinate by
(#nodes) * (largest edge coordinate) and guarantees termination.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

from .roots import Root, RootSystem, build_root_system
from .weyl import (
    DEFAULT_ENUMERATION_GUARD,
    GroupSizeGuardError,
    WeylElem,
    bruhat_leq_W,
    format_word,
    identity,
    longest_element,
    reflection_of_root,
    simple_reflection,
    weyl_group_order,
)

__all__ = [
    "Degree",
    "Coset",
    "ChainWitness",
    "BruhatGraph",
    "ParabolicData",
    "make_parabolic",
    "degree_leq",
    "degree_add",
    "pareto_minima",
]

Degree = tuple  # tuple[int, ...], one coordinate per retained node


def degree_leq(a: Degree, b: Degree) -> bool:
    """Componentwise order on degree vectors."""
    return all(x <= y for x, y in zip(a, b))


def degree_add(a: Degree, b: Degree) -> Degree:
    return tuple(x + y for x, y in zip(a, b))


def pareto_minima(degrees: Iterable[Degree]) -> tuple[Degree, ...]:
    """The minimal elements of a finite set under componentwise order."""
    pool = sorted(set(degrees))
    out = []
    for d in pool:
        if not any(degree_leq(e, d) for e in out):
            out.append(d)
    return tuple(out)


@dataclass(frozen=True)
class Coset:
    """A coset of W_P, held by its minimal-length representative."""

    min_rep: WeylElem
    length: int

    def word(self) -> tuple[int, ...]:
        return self.min_rep.word()

    def sort_key(self):
        return (self.length, self.word())

    def __repr__(self) -> str:
        return f"Coset[{format_word(self.word())}]"

    def __eq__(self, other) -> bool:
        return isinstance(other, Coset) and self.min_rep == other.min_rep

    def __hash__(self) -> int:
        return hash(self.min_rep)


@dataclass(frozen=True)
class ChainWitness:
    """One chain realizing a frontier degree, for display purposes."""

    degree: Degree
    nodes: tuple[Coset, ...]
    edge_roots: tuple[Root, ...]
    edge_degrees: tuple[Degree, ...]


@dataclass
class BruhatGraph:
    """Adjacency graph on W/W_P with degree-weighted edges."""

    nodes: tuple[Coset, ...]
    index: dict
    # canonical (i, j) with i < j -> (witness root, degree vector)
    edges: dict
    adj: tuple  # adj[i] = tuple of (j, degree, root)

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)


class ParabolicData:
    """A proper parabolic quotient and its cached combinatorics."""

    def __init__(self, system: RootSystem, delta_P: Iterable[int],
                 max_elements: int = DEFAULT_ENUMERATION_GUARD):
        delta_P = frozenset(delta_P)
        if not delta_P <= set(range(system.rank)):
            raise ValueError(
                f"delta_P {sorted(delta_P)} not a subset of 0..{system.rank - 1}"
            )
        if delta_P == set(range(system.rank)):
            raise ValueError("delta_P equals the whole node set: the quotient is a point")
        self.system = system
        self.delta_P = delta_P
        self.max_elements = max_elements
        self.delta_P_sorted = tuple(sorted(delta_P))
        self.q_index = tuple(sorted(set(range(system.rank)) - delta_P))
        self.R_P_plus = tuple(
            a for a in system.positive_roots
            if all(a.coeffs[j] == 0 for j in self.q_index)
        )
        rp = set(self.R_P_plus)
        self.crossing_roots = tuple(a for a in system.positive_roots if a not in rp)
        self.two_rho_P = tuple(
            sum(a.coeffs[j] for a in self.crossing_roots)
            for j in range(system.rank)
        )
        self._degree = {}
        self._chern = {}
        self._cosets = None
        self._graph = None
        self._dual = {}
        self._divisor_engine = None

    # -- small derived data ----------------------------------------------

    @property
    def dim(self) -> int:
        """Complex dimension of the quotient = number of crossing roots."""
        return len(self.crossing_roots)

    @property
    def label(self) -> str:
        if not self.delta_P:
            return f"{self.system.label} flag"
        return f"{self.system.label} omit {','.join(str(i + 1) for i in self.q_index)}"

    def grassmannian_shape(self) -> Optional[tuple[int, int]]:
        """(k, n) when this is a type-A quotient by one retained node."""
        if self.system.type_label == "A" and len(self.q_index) == 1:
            return (self.q_index[0] + 1, self.system.rank + 1)
        return None

    def is_crossing(self, alpha: Root) -> bool:
        return any(alpha.coeffs[j] != 0 for j in self.q_index)

    def degree_of_root(self, alpha: Root) -> Degree:
        """Degree vector of the curve attached to a crossing root.

        Coordinate for retained node beta is n_beta (b, b)/(a, a) where
        alpha = sum n_beta b; always a nonnegative integer.
        """
        got = self._degree.get(alpha.coeffs)
        if got is not None:
            return got
        self.system._require_root(alpha)
        if not alpha.is_positive or not self.is_crossing(alpha):
            raise ValueError(
                f"degree is defined for positive roots outside R_P^+, got {alpha}"
            )
        coords = []
        for j in self.q_index:
            c = Fraction(alpha.coeffs[j] * 2 * self.system.symmetrizer[j], alpha.norm)
            assert c.denominator == 1 and c >= 0
            coords.append(int(c))
        deg = tuple(coords)
        self._degree[alpha.coeffs] = deg
        return deg

    def chern_number(self, alpha: Root) -> int:
        """n_alpha = 4(rho_P, alpha)/(alpha, alpha); a positive integer."""
        got = self._chern.get(alpha.coeffs)
        if got is not None:
            return got
        self.system._require_root(alpha)
        if not alpha.is_positive or not self.is_crossing(alpha):
            raise ValueError(
                f"Chern number is defined for positive roots outside R_P^+, got {alpha}"
            )
        n = Fraction(2 * self.system.inner(self.two_rho_P, alpha.coeffs), alpha.norm)
        assert n.denominator == 1 and n > 0, f"bad Chern number {n} for {alpha}"
        n = int(n)
        self._chern[alpha.coeffs] = n
        return n

    def rho_pairing(self, i: int) -> Fraction:
        """h_{b_i}(rho_P); vanishes on Delta_P, positive on retained nodes."""
        b = self.system.simple_roots[i]
        return Fraction(self.system.inner(b.coeffs, self.two_rho_P), b.norm)

    # -- cosets ------------------------------------------------------------

    def to_coset(self, w: WeylElem) -> Coset:
        """Project onto the minimal-length coset representative."""
        if w.system is not self.system:
            raise ValueError("element belongs to a different root system")
        while True:
            for i in self.delta_P_sorted:
                if w.is_right_descent(i):
                    w = w * simple_reflection(self.system, i)
                    break
            else:
                break
        length = w._length if w._length is not None else w.length
        return Coset(w, length)

    def identity_coset(self) -> Coset:
        return Coset(identity(self.system), 0)

    def dual(self, u: Coset) -> Coset:
        """The coset of w_o u, of complementary length."""
        got = self._dual.get(u)
        if got is None:
            got = self.to_coset(longest_element(self.system) * u.min_rep)
            assert got.length == self.dim - u.length
            self._dual[u] = got
        return got

    def bruhat_leq(self, u: Coset, v: Coset) -> bool:
        """Quotient Bruhat order (induced on minimal representatives)."""
        return bruhat_leq_W(u.min_rep, v.min_rep)

    def cosets(self) -> tuple[Coset, ...]:
        """All cosets, sorted by (length, canonical word).

        Minimal representatives are closed downward under left
        multiplication by simple reflections, so a level-synchronous BFS
        by s_i * w finds each exactly once.
        """
        if self._cosets is not None:
            return self._cosets
        if not self.delta_P and weyl_group_order(self.system) > self.max_elements:
            # full flag: every group element is its own coset, so the size
            # is known up front and an oversized request can refuse early
            raise GroupSizeGuardError(f"W/W_P for {self.label}", self.max_elements)
        start = self.identity_coset()
        seen = {start.min_rep.mat: start}
        level = [start]
        while level:
            nxt = []
            for u in level:
                w = u.min_rep
                for i in range(self.system.rank):
                    if w.is_left_descent(i):
                        continue  # s_i w is shorter
                    cand = simple_reflection(self.system, i) * w
                    cand._length = u.length + 1
                    if cand.mat in seen:
                        continue
                    # keep only minimal representatives
                    if any(cand.is_right_descent(j) for j in self.delta_P):
                        continue
                    c = Coset(cand, u.length + 1)
                    seen[cand.mat] = c
                    if len(seen) > self.max_elements:
                        raise GroupSizeGuardError(
                            f"W/W_P for {self.label}", self.max_elements
                        )
                    nxt.append(c)
            level = nxt
        self._cosets = tuple(sorted(seen.values(), key=Coset.sort_key))
        return self._cosets

    # -- adjacency and the Bruhat graph -------------------------------------

    def adjacency(self, u: Coset, v: Coset) -> Optional[tuple[Root, Degree]]:
        """A crossing root t with [u t] = v, and its degree, if one exists."""
        if u == v:
            raise ValueError("adjacency is a relation between distinct cosets")
        for alpha in self.crossing_roots:
            if self.to_coset(u.min_rep * reflection_of_root(self.system, alpha)) == v:
                return (alpha, self.degree_of_root(alpha))
        return None

    def graph(self) -> BruhatGraph:
        if self._graph is not None:
            return self._graph
        nodes = self.cosets()
        index = {u: i for i, u in enumerate(nodes)}
        edges = {}
        adj = [[] for _ in nodes]
        for i, u in enumerate(nodes):
            for alpha in self.crossing_roots:
                t = reflection_of_root(self.system, alpha)
                v = self.to_coset(u.min_rep * t)
                j = index[v]
                assert j != i, "a crossing reflection fixed a coset"
                key = (min(i, j), max(i, j))
                deg = self.degree_of_root(alpha)
                prev = edges.get(key)
                if prev is None:
                    edges[key] = (alpha, deg)
                else:
                    # all realizing roots of one edge must agree in degree
                    assert prev[1] == deg, (
                        f"edge {key} carries degrees {prev[1]} and {deg}"
                    )
        for (i, j), (alpha, deg) in edges.items():
            adj[i].append((j, deg, alpha))
            adj[j].append((i, deg, alpha))
        self._graph = BruhatGraph(
            nodes=nodes,
            index=index,
            edges=edges,
            adj=tuple(tuple(sorted(a, key=lambda e: e[0])) for a in adj),
        )
        return self._graph

    # -- chain search --------------------------------------------------------

    def min_chain_degrees(self, u: Coset, v: Coset) -> tuple[Degree, ...]:
        """Pareto frontier of degrees of chains from u to v."""
        frontier, _ = self._chain_search(u, v, witnesses=False)
        return frontier

    def min_chain_witnesses(
        self, u: Coset, v: Coset
    ) -> tuple[tuple[Degree, ...], tuple[ChainWitness, ...]]:
        return self._chain_search(u, v, witnesses=True)

    def _chain_search(self, u: Coset, v: Coset, witnesses: bool):
        g = self.graph()
        vdual = self.dual(v)
        sources = [i for i, x in enumerate(g.nodes) if self.bruhat_leq(u, x)]
        sinks = {i for i, x in enumerate(g.nodes) if self.bruhat_leq(x, vdual)}
        assert sources and sinks, "u and v-dual give nonempty up/down sets"
        m = len(self.q_index)
        zero = (0,) * m
        # belt-and-braces coordinate bound: non-dominated labels come from
        # simple paths, so no coordinate can exceed #nodes * max edge coord
        maxcoord = max(
            (max(deg) for (_, deg) in g.edges.values()), default=0
        )
        bound = g.node_count * maxcoord
        labels: list[dict] = [dict() for _ in g.nodes]
        parents: list[dict] = [dict() for _ in g.nodes] if witnesses else labels
        work = deque()
        for i in sources:
            labels[i][zero] = True
            if witnesses:
                parents[i][zero] = None
            work.append((i, zero))
        while work:
            i, d = work.popleft()
            if d not in labels[i]:
                continue  # dominated since queued
            for j, edeg, alpha in g.adj[i]:
                nd = degree_add(d, edeg)
                if any(c > bound for c in nd):
                    continue
                lj = labels[j]
                if nd in lj or any(degree_leq(e, nd) for e in lj):
                    continue
                for e in [e for e in lj if degree_leq(nd, e)]:
                    del lj[e]
                    if witnesses:
                        parents[j].pop(e, None)
                lj[nd] = True
                if witnesses:
                    parents[j][nd] = (i, d, alpha, edeg)
                work.append((j, nd))
        frontier = pareto_minima(
            d for i in sinks for d in labels[i]
        )
        assert frontier, "chain frontier is never empty"
        if not witnesses:
            return frontier, ()
        found = []
        for d in frontier:
            sink = min(i for i in sinks if d in labels[i])
            path_nodes = [sink]
            roots: list[Root] = []
            degs: list[Degree] = []
            cur, cd = sink, d
            while parents[cur][cd] is not None:
                pi, pd, alpha, edeg = parents[cur][cd]
                roots.append(alpha)
                degs.append(edeg)
                path_nodes.append(pi)
                cur, cd = pi, pd
            found.append(
                ChainWitness(
                    degree=d,
                    nodes=tuple(g.nodes[i] for i in reversed(path_nodes)),
                    edge_roots=tuple(reversed(roots)),
                    edge_degrees=tuple(reversed(degs)),
                )
            )
        return frontier, tuple(found)


@lru_cache(maxsize=None)
def make_parabolic(type_label: str, rank: int, delta_P: tuple[int, ...],
                   max_elements: int = DEFAULT_ENUMERATION_GUARD) -> ParabolicData:
    """Cached ParabolicData factory; delta_P is a sorted tuple, 0-based."""
    return ParabolicData(build_root_system(type_label, rank), delta_P,
                         max_elements=max_elements)
