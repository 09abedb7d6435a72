"""Exact combinatorial oracles: maximum t-intersecting families by clique
search, transposition-graph neighbourhoods, and Hoffman tightness checks.

Vertex sets are small (at most 6! = 720) so cliques are Python-int bitsets.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np

from . import interval, permcore
from .characters import residual_norm_sq
from .families import Family, contained_in_t_coset, is_t_intersecting
from .permcore import Permutation
from .spectral import WeightedCayleySpec, cayley_spectrum, hoffman_bound

SEARCH_MAX_DEGREE = 6
NEIGHBORHOOD_MAX_DEGREE = 6
NAIVE_MAX_DEGREE = 4
CROSS_MAX_DEGREE = 4  # closed-pair enumeration blows up at n = 5

PROVED = "proved-optimal"
BOUND_ONLY = "bound-only"


@dataclass
class AgreementGraph:
    """sigma ~ pi iff they agree on at least t points; vertices in lexicographic order."""

    n: int
    t: int
    group: str
    vertices: list[Permutation]
    adj: list[int]
    fixmask: list[int]

    @classmethod
    def build(cls, n: int, t: int, group: str = "sym") -> AgreementGraph:
        if group not in ("sym", "alt"):
            raise ValueError(f"group must be 'sym' or 'alt', got {group!r}")
        if t < 1:
            raise ValueError("t must be at least 1")
        permcore.check_degree(n, SEARCH_MAX_DEGREE)
        verts = list(permcore.enumerate_group(n, even_only=(group == "alt")))
        arr = np.array([p.images for p in verts], dtype=np.int8)
        agree = (arr[:, None, :] == arr[None, :, :]).sum(axis=2) >= t
        np.fill_diagonal(agree, False)
        weights = 1 << np.arange(len(verts), dtype=object)
        adj = [int(weights[row].sum()) for row in agree]
        fixmask = [sum(1 << (i - 1) for i in p.fixed_points()) for p in verts]
        return cls(n, t, group, verts, adj, fixmask)

    def __len__(self) -> int:
        return len(self.vertices)

    def family(self, bits: int | list[int]) -> Family:
        idx = _bits(bits) if isinstance(bits, int) else bits
        return Family(self.n, (self.vertices[i] for i in idx))


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class _Timeout(Exception):
    pass


@dataclass
class SearchResult:
    optimum: int
    witness: Family
    status: str
    stats: dict = field(default_factory=dict)
    elapsed: float = 0.0  # wall clock, kept out of the canonical JSON

    def to_json(self) -> dict:
        return {
            "optimum": self.optimum,
            "status": self.status,
            "witness": self.witness.to_json(),
            "stats": dict(self.stats),
        }


class _CliqueSearch:
    """Branch and bound with greedy colouring bounds (bitset style).

    With ``nontrivial`` set, a clique only counts once the points fixed by
    all its members number fewer than t, which (with the identity in the
    clique) is exactly not lying in a t-coset.
    """

    def __init__(self, g: AgreementGraph, nontrivial: bool = False, deadline: float | None = None):
        self.g = g
        self.nontrivial = nontrivial
        self.deadline = deadline
        self.nodes = 0
        self.full_fix = (1 << g.n) - 1

    def _colour(self, p: int) -> tuple[list[int], list[int]]:
        adj = self.g.adj
        order, bounds = [], []
        colour = 0
        while p:
            colour += 1
            q = p
            while q:
                low = q & -q
                v = low.bit_length() - 1
                q &= ~adj[v] & ~low
                p &= ~low
                order.append(v)
                bounds.append(colour)
        return order, bounds

    def _feasible(self, fix: int) -> bool:
        return not self.nontrivial or bin(fix).count("1") < self.g.t

    def _hopeless(self, fix: int, p: int) -> bool:
        # every extension keeps at least the points fixed by the clique and all candidates
        if not self.nontrivial:
            return False
        for v in _bits(p):
            fix &= self.g.fixmask[v]
        return bin(fix).count("1") >= self.g.t

    def run(self, target: int = 0, root: list[int] | None = None) -> tuple[int, list[int]]:
        """Largest clique extending ``root`` (default: the identity). With a
        positive target, stop at the first clique of that size."""
        g = self.g
        root = [0] if root is None else root
        cand = (1 << len(g)) - 1
        fix = self.full_fix
        for v in root:
            cand &= g.adj[v]
            fix &= g.fixmask[v]
        self.best = list(root) if self._feasible(fix) else []
        self.target = target
        self._expand(list(root), cand, fix)
        return len(self.best), self.best

    def _expand(self, r: list[int], p: int, fix: int) -> bool:
        self.nodes += 1
        if self.deadline is not None and self.nodes % 256 == 0 and time.monotonic() > self.deadline:
            raise _Timeout
        if self._hopeless(fix, p):
            return False
        order, bounds = self._colour(p)
        goal = max(len(self.best), self.target - 1)
        for k in range(len(order) - 1, -1, -1):
            if len(r) + bounds[k] <= goal:
                return False
            v = order[k]
            r.append(v)
            nfix = fix & self.g.fixmask[v]
            np_ = p & self.g.adj[v]
            if len(r) > len(self.best) and self._feasible(nfix):
                self.best = list(r)
                if self.target and len(r) >= self.target:
                    return True
                goal = max(len(self.best), self.target - 1)
            if np_ and self._expand(r, np_, nfix):
                return True
            r.pop()
            p &= ~(1 << v)
        return False


def _lex_min_clique(g: AgreementGraph, size: int, nontrivial: bool, deadline) -> list[int]:
    """Lexicographically least clique of the given size containing the identity."""
    chosen = [0]
    cand = g.adj[0]
    while len(chosen) < size:
        for v in _bits(cand):
            s = _CliqueSearch(g, nontrivial, deadline)
            got, _ = s.run(target=size, root=chosen + [v])
            if got >= size:
                chosen.append(v)
                cand &= g.adj[v] & ~((1 << (v + 1)) - 1)
                break
        else:
            raise RuntimeError("lost the optimum while extracting a witness")
    return chosen


def _search(n: int, t: int, group: str, nontrivial: bool, timeout: float | None) -> SearchResult:
    start = time.monotonic()
    g = AgreementGraph.build(n, t, group)
    deadline = None if timeout is None else start + timeout
    s = _CliqueSearch(g, nontrivial, deadline)
    status = PROVED
    stats: dict = {"vertices": len(g)}
    try:
        opt, best = s.run()
    except _Timeout:
        status = BOUND_ONLY
        best = s.best
        opt = len(best)
    stats["nodes"] = s.nodes
    if status == PROVED and opt:
        try:
            best = _lex_min_clique(g, opt, nontrivial, deadline)
        except _Timeout:
            stats["witness"] = "first found (timed out before lexicographic tie-break)"
    res = SearchResult(opt, g.family(best), status, stats)
    res.elapsed = time.monotonic() - start
    return res


def max_t_intersecting(n: int, t: int, group: str = "sym", *, timeout: float | None = None) -> SearchResult:
    """Maximum t-intersecting family of S_n or A_n (identity fixed by symmetry)."""
    return _search(n, t, group, False, timeout)


def max_nontrivial_t_intersecting(
    n: int, t: int, group: str = "sym", *, timeout: float | None = None
) -> SearchResult:
    """Maximum t-intersecting family lying in no t-coset. Optimum 0 means the
    feasible set is empty."""
    res = _search(n, t, group, True, timeout)
    if res.optimum == 0:
        res.stats["note"] = "empty feasible set"
    return res


def all_max_cliques_with_identity(n: int, t: int, group: str = "sym", size: int | None = None) -> list[Family]:
    """Every clique of the given size (default: the optimum) containing the identity."""
    g = AgreementGraph.build(n, t, group)
    if size is None:
        size = _CliqueSearch(g).run()[0]
    out: list[Family] = []

    def rec(r: list[int], p: int):
        if len(r) == size:
            out.append(g.family(list(r)))
            return
        order, bounds = _CliqueSearch(g)._colour(p)
        for k in range(len(order) - 1, -1, -1):
            if len(r) + bounds[k] < size:
                return
            v = order[k]
            r.append(v)
            rec(r, p & g.adj[v])
            r.pop()
            p &= ~(1 << v)

    rec([0], g.adj[0])
    return sorted(out, key=lambda f: f.to_json())


def naive_max_t_intersecting(n: int, t: int, group: str = "sym") -> int:
    """Exhaustive clique enumeration with no bounding, for cross-checking."""
    permcore.check_degree(n, NAIVE_MAX_DEGREE)
    g = AgreementGraph.build(n, t, group)
    best = 0

    def rec(size: int, p: int):
        nonlocal best
        best = max(best, size)
        for v in _bits(p):
            rec(size + 1, p & g.adj[v] & ~((1 << (v + 1)) - 1))

    rec(0, (1 << len(g)) - 1)
    return best


def max_cross_product(n: int, t: int) -> tuple[int, list[tuple[Family, Family]]]:
    """Maximum |F||G| over t-cross-intersecting pairs in S_n, with every optimal pair.

    Optimal pairs are closed (F = common neighbourhood of G and vice versa), so
    it is enough to walk the intersections of closed neighbourhoods.
    """
    permcore.check_degree(n, CROSS_MAX_DEGREE)
    verts = list(permcore.enumerate_group(n))
    arr = np.array([p.images for p in verts], dtype=np.int8)
    agree = (arr[:, None, :] == arr[None, :, :]).sum(axis=2) >= t
    weights = 1 << np.arange(len(verts), dtype=object)
    nbr = [int(weights[row].sum()) for row in agree]
    full = (1 << len(verts)) - 1

    def common(bits: int) -> int:
        out = full
        for v in _bits(bits):
            out &= nbr[v]
        return out

    # closed G-sets: full set plus all intersections of neighbourhoods
    seen = {full}
    frontier = [full]
    while frontier:
        nxt = []
        for s in frontier:
            for m in nbr:
                x = s & m
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
    best, pairs = 0, []
    for gset in sorted(seen):
        fset = common(gset)
        val = bin(fset).count("1") * bin(gset).count("1")
        if val > best:
            best, pairs = val, []
        if val == best and val:
            pairs.append((fset, gset))
    fam = lambda b: Family(n, (verts[i] for i in _bits(b)))
    return best, [(fam(f), fam(g)) for f, g in pairs]


# Transposition graph ----------------------------------------------------------


def _transposition_neighbours(n: int) -> np.ndarray:
    tab = permcore.perm_table(n)
    cols = []
    for i, j in ((i, j) for i in range(n) for j in range(i + 1, n)):
        swapped = tab.copy()
        swapped[:, [i, j]] = swapped[:, [j, i]]  # sigma * (i j)
        cols.append(permcore.rank_array(swapped))
    return np.stack(cols, axis=1)


def neighborhood_profile(x: Family) -> list[int]:
    """|N_h(X)| for h = 0, 1, ... until the whole group is reached."""
    n = x.n
    permcore.check_degree(n, NEIGHBORHOOD_MAX_DEGREE)
    if not len(x):
        return [0]
    nbrs = _transposition_neighbours(n)
    dist = np.full(math.factorial(n), -1, dtype=np.int64)
    layer = np.array(sorted(permcore.rank(p) for p in x.members), dtype=np.int64)
    dist[layer] = 0
    sizes = [len(layer)]
    while sizes[-1] < len(dist):
        nxt = np.unique(nbrs[layer].ravel())
        nxt = nxt[dist[nxt] < 0]
        dist[nxt] = len(sizes)
        sizes.append(sizes[-1] + len(nxt))
        layer = nxt
    return sizes


def transposition_neighborhood(x: Family, h: int) -> int:
    """Number of permutations within h transpositions of some member of X."""
    if h < 0:
        raise ValueError("h must be non-negative")
    prof = neighborhood_profile(x)
    return prof[min(h, len(prof) - 1)]


@dataclass(frozen=True)
class MaureyRow:
    h: int
    exact: int
    bound: interval.Interval
    holds: bool

    def to_json(self) -> dict:
        return {"h": self.h, "exact": self.exact, "bound_upper": str(self.bound.hi), "holds": self.holds}


@dataclass(frozen=True)
class MaureyReport:
    n: int
    size: int
    h0: interval.Interval
    rows: tuple[MaureyRow, ...]

    @property
    def holds(self) -> bool:
        return all(r.holds for r in self.rows)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "size": self.size,
            "h0": [str(self.h0.lo), str(self.h0.hi)],
            "rows": [r.to_json() for r in self.rows],
            "holds": self.holds,
        }


def maurey_h0(n: int, size: int) -> interval.Interval:
    gamma = Fraction(size, math.factorial(n))
    if not 0 < gamma < 1:
        raise ValueError("need 0 < |X| < n!")
    return interval.sqrt(Fraction(n - 1, 2) * interval.log(1 / gamma))


def maurey_bound(n: int, size: int, h: int) -> interval.Interval:
    """Enclosure of (1 - exp(-2(h-h0)^2/(n-1))) n!, for h at or above h0."""
    h0 = maurey_h0(n, size)
    if h < h0.hi:
        raise ValueError(f"h={h} is not certified to be >= h0")
    y = 2 * (h - h0).sqr() / (n - 1)
    return (1 - interval.exp(-y)) * math.factorial(n)


def maurey_check(x: Family) -> MaureyReport:
    """Compare exact neighbourhood sizes with the isoperimetric bound for each
    integer h >= h0 up to the diameter n-1 (beyond it N_h is everything and the
    bound is below n!). Ties with h0 count as out of range only if certified."""
    n = x.n
    h0 = maurey_h0(n, len(x))
    prof = neighborhood_profile(x)
    rows = []
    h = max(0, math.ceil(h0.hi))
    while h <= n - 1:
        exact = prof[min(h, len(prof) - 1)]
        b = maurey_bound(n, len(x), h)
        rows.append(MaureyRow(h, exact, b, b.hi <= exact))
        h += 1
    return MaureyReport(n, len(x), h0, tuple(rows))


# Hoffman tightness ------------------------------------------------------------


@dataclass(frozen=True)
class TightnessReport:
    size: int
    bound: Fraction
    tight: bool
    residual: Fraction | None
    coset: object
    t_intersecting: bool

    @property
    def consistent(self) -> bool:
        """Meeting the bound forces residual 0 and a t-coset."""
        if not self.tight:
            return True
        return self.residual == 0 and self.coset is not None

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "bound": str(self.bound),
            "tight": self.tight,
            "residual_V_t": None if self.residual is None else str(self.residual),
            "coset": None if self.coset is None else [list(p) for p in self.coset.pairs],
            "t_intersecting": self.t_intersecting,
            "consistent": self.consistent,
            "verdict": "tight" if self.tight else "not tight",
        }


def verify_hoffman_tightness(family: Family, t: int, spec: WeightedCayleySpec) -> TightnessReport:
    if spec.n != family.n:
        raise ValueError("spec and family have different degrees")
    bound = hoffman_bound(cayley_spectrum(spec)).bound
    tight = len(family) == bound
    residual = residual_norm_sq(family.indicator(), t) if tight else None
    coset = contained_in_t_coset(family, t) if tight and len(family) else None
    return TightnessReport(len(family), bound, tight, residual, coset, is_t_intersecting(family, t))


__all__ = [
    "AgreementGraph",
    "SearchResult",
    "all_max_cliques_with_identity",
    "max_cross_product",
    "max_nontrivial_t_intersecting",
    "max_t_intersecting",
    "maurey_bound",
    "maurey_check",
    "maurey_h0",
    "naive_max_t_intersecting",
    "neighborhood_profile",
    "transposition_neighborhood",
    "verify_hoffman_tightness",
]
