"""Higher-order matching polynomials M_r(K) = sum_j (-1)^j p_r(K, j) x^{N-(r+1)j}.

p_r(K, j) counts sets of j vertex-disjoint simple paths with r edges each.
Brute-force counts are the ground truth; the closed forms are tested against them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

from .exact import Poly, substitute_power
from .hypergeom import HypParams, delta_vec, laurent_to_poly, pfq_coeffs
from .operators import SystemSpec, build_P
from .report import CheckReport


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1; adj[v] is a neighbour bitmask."""

    n: int
    adj: tuple[int, ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in range(u + 1, self.n) if self.adj[u] >> v & 1]


@dataclass(frozen=True)
class MultipartiteGraph:
    """Complete k-partite graph; vertices numbered consecutively part by part."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts or any(p < 1 for p in parts):
            raise GraphError("parts must be a nonempty list of positive integers")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def complete(cls, n: int) -> "MultipartiteGraph":
        return cls((1,) * n)

    @property
    def N(self) -> int:
        return sum(self.parts)

    def graph(self) -> Graph:
        color = [s for s, size in enumerate(self.parts) for _ in range(size)]
        N = len(color)
        return Graph.from_edges(N, ((u, v) for u in range(N) for v in range(u + 1, N) if color[u] != color[v]))


def parse_edge_list(text: str) -> Graph:
    """One "u v" pair per line, 0-indexed; blank lines and '#' comments ignored."""
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError as exc:
            raise GraphError(f"line {lineno}: vertices must be integers") from exc
        if u < 0 or v < 0:
            raise GraphError(f"line {lineno}: negative vertex")
        edges.append((u, v))
    n = 1 + max((max(e) for e in edges), default=-1)
    return Graph.from_edges(n, edges)


def load_edge_list(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text())


def _as_graph(g: Graph | MultipartiteGraph) -> Graph:
    return g.graph() if isinstance(g, MultipartiteGraph) else g


# enumeration ------------------------------------------------------------------------

def r_paths(g: Graph, r: int) -> list[tuple[int, ...]]:
    """All simple paths with r edges, each listed once (first vertex < last)."""
    if r < 1:
        raise ValueError("r must be positive")
    out = []

    def grow(path: list[int], used: int) -> None:
        if len(path) == r + 1:
            if path[0] < path[-1]:
                out.append(tuple(path))
            return
        nbrs = g.adj[path[-1]] & ~used
        while nbrs:
            w = (nbrs & -nbrs).bit_length() - 1
            nbrs &= nbrs - 1
            path.append(w)
            grow(path, used | 1 << w)
            path.pop()

    for v in range(g.n):
        grow([v], 1 << v)
    return out


def packing_counts(g: Graph | MultipartiteGraph, r: int) -> list[int]:
    """[p_r(g, 0), p_r(g, 1), ...] up to the largest nonzero j."""
    g = _as_graph(g)
    by_min: dict[int, list[int]] = {}
    for p in r_paths(g, r):
        mask = sum(1 << v for v in p)
        by_min.setdefault(min(p), []).append(mask)

    @lru_cache(maxsize=None)
    def count(avail: int) -> tuple[int, ...]:
        # decide the lowest available vertex: uncovered, or the minimum of a path
        if not avail:
            return (1,)
        v = (avail & -avail).bit_length() - 1
        acc = list(count(avail & ~(1 << v)))
        for mask in by_min.get(v, ()):
            if mask & avail == mask:
                sub = count(avail & ~mask)
                acc += [0] * (len(sub) + 1 - len(acc))
                for j, c in enumerate(sub):
                    acc[j + 1] += c
        return tuple(acc)

    counts = list(count((1 << g.n) - 1))
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return counts


def count_path_packings(g: Graph | MultipartiteGraph, r: int, j: int) -> int:
    if j < 0:
        raise ValueError("j must be nonnegative")
    counts = packing_counts(g, r)
    return counts[j] if j < len(counts) else 0


@dataclass(frozen=True)
class MatchRecord:
    r: int
    counts: tuple[int, ...]
    polynomial: Poly


def matching_record(g: Graph | MultipartiteGraph, r: int) -> MatchRecord:
    g = _as_graph(g)
    counts = packing_counts(g, r)
    terms = {g.n - (r + 1) * j: Fraction((-1) ** j * c) for j, c in enumerate(counts)}
    return MatchRecord(r, tuple(counts), laurent_to_poly(terms))


def matching_poly_oracle(g: Graph | MultipartiteGraph, r: int) -> Poly:
    return matching_record(g, r).polynomial


# closed forms ----------------------------------------------------------------------------

def complete_spec(r: int) -> SystemSpec:
    """G = d/dx, q(G) = -G^{r+1}/2."""
    return SystemSpec.pure_power("continuous", (), 1, r + 1, Fraction(-1, 2))


def complete_sum(n: int, r: int) -> Poly:
    return laurent_to_poly({
        n - (r + 1) * j: Fraction((-1) ** j * math.factorial(n), math.factorial(n - (r + 1) * j) * math.factorial(j) * 2**j)
        for j in range(n // (r + 1) + 1)
    })


def complete_hyp(n: int, r: int) -> Poly:
    """x^n F(Delta(r+1; -n); -; (-1)^r (r+1)^{r+1} / (2 x^{r+1}))."""
    h = HypParams(tuple(delta_vec(r + 1, -n)), (), Fraction((-1) ** r * (r + 1) ** (r + 1), 2), -(r + 1))
    return h.expand(n)


def formula_complete(n: int, r: int) -> Poly:
    """M_r(K_n) from the closed form; the three equivalent expressions must agree."""
    explicit = complete_sum(n, r)
    hyp = complete_hyp(n, r)
    ggh = build_P(complete_spec(r), n)
    if not explicit == hyp == ggh:
        raise AssertionError(f"complete-graph forms disagree at n={n}, r={r}")
    return explicit


def _half(r: int) -> int:
    if r < 1 or r % 2 == 0:
        raise ValueError("r must be a positive odd integer")
    return (r + 1) // 2


def _multipartite_terms(parts: Sequence[int], r: int) -> dict[int, Fraction]:
    """Laurent terms of x^N F(Delta(h; -n_1) ... Delta(h; -n_k); -; -(r+1)^{r+1}/(2x)^{r+1})."""
    h = _half(r)
    upper = [a for n in parts for a in delta_vec(h, -n)]
    z = Fraction(-((r + 1) ** (r + 1)), 2 ** (r + 1))
    N = sum(parts)
    cs = pfq_coeffs(upper, ())
    return {N - (r + 1) * j: c * z**j for j, c in enumerate(cs) if c}


def bipartite_spec(n: int, m: int, r: int) -> SystemSpec:
    """alpha = [n - m], rho = 1, q = -G^h in the variable y = x^2."""
    return SystemSpec.pure_power("continuous", (n - m,), 1, _half(r), -1)


def formula_bipartite(n: int, m: int, r: int) -> Poly:
    """M_r(K_{n,m}) for odd r and n >= m, with half-length blocks Delta(h; .), h = (r+1)/2.

    Also asserts M_r(K_{n,m}) = x^{n-m} P_m(x^2) for the system of ``bipartite_spec``.
    """
    _half(r)
    if n < m or m < 1:
        raise ValueError("need n >= m >= 1")
    poly = laurent_to_poly(_multipartite_terms((n, m), r))
    ggh = substitute_power(build_P(bipartite_spec(n, m, r), m), 1, 2)
    ggh = laurent_to_poly({k + n - m: c for k, c in enumerate(ggh.coeffs)})
    if poly != ggh:
        raise AssertionError(f"bipartite closed form differs from x^(n-m) P_m(x^2) at ({n}, {m}, {r})")
    return poly


def conjecture_multipartite(parts: Sequence[int], r: int) -> CheckReport:
    """Compare the k-partite closed form with brute force; records evidence only."""
    g = MultipartiteGraph(tuple(parts))
    report = CheckReport("matching_conjecture", {"parts": list(g.parts), "r": r})
    conj = _multipartite_terms(g.parts, r)
    oracle = {g.N - (r + 1) * j: Fraction((-1) ** j * c) for j, c in enumerate(packing_counts(g, r))}
    exps = sorted(set(conj) | set(oracle), reverse=True)
    diff = [k for k in exps if conj.get(k, 0) != oracle.get(k, 0)]
    report.data = {
        "outcome": "EQUAL" if not diff else "DIFFERENT",
        "oracle": {k: oracle[k] for k in sorted(oracle, reverse=True)},
        "conjecture": {k: conj[k] for k in sorted(conj, reverse=True)},
    }
    if diff:
        k = diff[0]
        report.data["first_difference"] = {"exponent": k, "oracle": oracle.get(k, 0), "conjecture": conj.get(k, 0)}
        report.fail(f"x^{k}: oracle {oracle.get(k, 0)} vs conjecture {conj.get(k, 0)}")
    return report.finish()


def complete_check(n_max: int, rs: Sequence[int] = (1, 2, 3)) -> CheckReport:
    report = CheckReport("matching_complete", {"n_max": n_max, "r": list(rs)})
    for r in rs:
        for n in range(1, n_max + 1):
            oracle = matching_poly_oracle(MultipartiteGraph.complete(n), r)
            try:
                formula = formula_complete(n, r)
            except AssertionError as exc:
                report.fail(str(exc))
                continue
            if oracle != formula:
                report.fail(f"K_{n}, r={r}: oracle {oracle} vs formula {formula}")
    return report.finish()


def bipartite_check(total_max: int, r: int = 1) -> CheckReport:
    report = CheckReport("matching_bipartite", {"n_plus_m_max": total_max, "r": r})
    for total in range(2, total_max + 1):
        for m in range(1, total // 2 + 1):
            n = total - m
            try:
                formula = formula_bipartite(n, m, r)
            except AssertionError as exc:
                report.fail(str(exc))
                continue
            if formula != matching_poly_oracle(MultipartiteGraph((n, m)), r):
                report.fail(f"K_{{{n},{m}}}, r={r}: closed form differs from oracle")
    return report.finish()


def part_vectors(N_max: int, min_parts: int = 1) -> list[tuple[int, ...]]:
    """Nonincreasing part vectors with sum <= N_max."""
    out = []

    def rec(prefix: list[int], remaining: int, cap: int) -> None:
        if prefix and len(prefix) >= min_parts:
            out.append(tuple(prefix))
        for p in range(min(cap, remaining), 0, -1):
            rec(prefix + [p], remaining - p, p)

    rec([], N_max, N_max)
    return sorted(out, key=lambda v: (sum(v), len(v), v))


__all__ = [
    "Graph", "GraphError", "MultipartiteGraph", "parse_edge_list", "load_edge_list", "r_paths",
    "packing_counts", "count_path_packings", "MatchRecord", "matching_record", "matching_poly_oracle",
    "complete_spec", "complete_sum", "complete_hyp", "formula_complete", "bipartite_spec",
    "formula_bipartite", "conjecture_multipartite", "complete_check", "bipartite_check", "part_vectors",
]
