"""Seeded searches for trees where the Q_3 slide structure breaks down.

Two phenomena are searched for:

``excess``
    a tree of Q_n (n >= 4) and direction i with more than k_i - 1
    i-slidable edges;
``dependent``
    a tree and direction with exactly k_i - 1 i-slidable edges that cannot
    all be slid independently.

Candidates are uniform random trees, each followed by a short random walk
of edge slides. The search is split into rounds; round ``r`` draws from
child stream ``r`` of the seed, so the reported witness is the same
whether rounds run sequentially or across worker processes.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import hypercube as hc
from .errors import DependentSlides
from .hypercube import CubeEdge
from .rng import DEFAULT_SEED, RNG_NAME, CubeRandom
from .slides import (
    SlideMove,
    all_moves,
    apply_move,
    is_slidable,
    slidable_edges,
    slide_class,
    vertical_of,
)
from .trees import SpanningTree, direction_monomial, from_edges, random_spanning_tree

EXCESS = "excess"
DEPENDENT = "dependent"

DEFAULT_BUDGET = 100_000
DEFAULT_WALK = 8
# largest k_i whose 2^(k_i - 1) slide subsets are tried in the dependence search
DEFAULT_MAX_K = 8


class WitnessNotFound(Exception):
    def __init__(self, kind: str, candidates: int):
        super().__init__(f"no {kind} witness among {candidates} candidates")
        self.kind = kind
        self.candidates = candidates


@dataclass
class Witness:
    kind: str
    tree: SpanningTree
    dir: int
    slidable: list[CubeEdge]
    epsilon: tuple[int, ...] | None = None
    cycle: list[int] | None = None
    seed: int | None = None
    candidates: int | None = None
    extra: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.tree.n

    @property
    def k(self) -> int:
        return direction_monomial(self.tree)[self.dir - 1]

    def to_record(self) -> dict:
        rec = {
            "n": self.n,
            "kind": self.kind,
            "tree": [[e.lower, e.dir] for e in self.tree.sorted_edges],
            "dir": self.dir,
            "k": self.k,
            "slidable": [[e.lower, e.dir] for e in self.slidable],
        }
        if self.epsilon is not None:
            rec["epsilon"] = list(self.epsilon)
        if self.cycle is not None:
            rec["cycle"] = list(self.cycle)
        if self.seed is not None:
            rec["seed"] = self.seed
            rec["rng"] = RNG_NAME
        if self.candidates is not None:
            rec["candidates"] = self.candidates
        rec.update(self.extra)
        return rec

    @classmethod
    def from_record(cls, rec: dict) -> Witness:
        tree = from_edges(rec["n"], [tuple(e) for e in rec["tree"]])
        eps = rec.get("epsilon")
        return cls(
            kind=rec["kind"],
            tree=tree,
            dir=rec["dir"],
            slidable=[CubeEdge(*e) for e in rec.get("slidable", [])],
            epsilon=tuple(eps) if eps is not None else None,
            cycle=rec.get("cycle"),
            seed=rec.get("seed"),
            candidates=rec.get("candidates"),
            extra={k: v for k, v in rec.items() if k == "label"},
        )


def _check_excess(tree: SpanningTree, i: int, min_excess: int, k_exact: int | None) -> Witness | None:
    k = direction_monomial(tree)[i - 1]
    if k_exact is not None and k != k_exact:
        return None
    moves = slidable_edges(tree, i)
    if len(moves) - (k - 1) >= min_excess:
        return Witness(EXCESS, tree, i, [m.edge for m in moves])
    return None


def _check_dependent(tree: SpanningTree, i: int, max_k: int, k_exact: int | None) -> Witness | None:
    k = direction_monomial(tree)[i - 1]
    if k > max_k or (k_exact is not None and k != k_exact):
        return None
    moves = slidable_edges(tree, i)
    if len(moves) != k - 1:
        return None
    try:
        slide_class(tree, i)
    except DependentSlides as exc:
        return Witness(DEPENDENT, tree, i, [m.edge for m in moves], epsilon=exc.epsilon, cycle=exc.cycle)
    return None


def examine(kind: str, tree: SpanningTree, params: dict) -> Witness | None:
    for i in range(1, tree.n + 1):
        if kind == EXCESS:
            w = _check_excess(tree, i, params.get("min_excess", 1), params.get("k"))
        else:
            w = _check_dependent(tree, i, params.get("max_k", DEFAULT_MAX_K), params.get("k"))
        if w is not None:
            return w
    return None


def _run_round(kind: str, n: int, seed: int, r: int, walk: int, params: dict, limit: int):
    rng = CubeRandom(seed).child(r)
    tree = random_spanning_tree(n, rng=rng)
    examined = 0
    for step in range(walk + 1):
        if examined >= limit:
            break
        if step:
            tree = apply_move(tree, rng.choice(all_moves(tree)))
        examined += 1
        w = examine(kind, tree, params)
        if w is not None:
            return w, examined
    return None, examined


def search(
    kind: str,
    n: int,
    budget: int = DEFAULT_BUDGET,
    seed: int = DEFAULT_SEED,
    walk: int = DEFAULT_WALK,
    workers: int = 1,
    **params,
) -> Witness:
    """Run the seeded search; ``budget`` caps the number of candidate trees examined.

    Extra keyword filters: ``k`` restricts to directions with exactly that
    many edges; ``min_excess`` (excess search) is the required surplus over
    k_i - 1; ``max_k`` (dependent search) bounds the subsets tried.
    """
    if kind not in (EXCESS, DEPENDENT):
        raise ValueError(f"unknown search kind {kind!r}")
    if n <= 3:
        raise ValueError(
            f"{kind} witnesses cannot exist for n={n}: in Q_3 every tree has exactly "
            "k_i - 1 independently slidable edges per direction"
        )
    per_round = walk + 1
    examined = 0
    r = 0
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        while examined < budget:
            batch = []
            left = budget - examined
            while left > 0 and len(batch) < max(workers, 1):
                batch.append((r, min(per_round, left)))
                left -= per_round
                r += 1
            args = [(kind, n, seed, rr, walk, params, lim) for rr, lim in batch]
            if pool is None:
                results = [_run_round(*a) for a in args]
            else:
                results = list(pool.map(_run_round, *zip(*args)))
            for w, count in results:
                examined += count
                if w is not None:
                    w.seed = seed
                    w.candidates = examined
                    return w
    finally:
        if pool is not None:
            pool.shutdown()
    raise WitnessNotFound(kind, examined)


def search_excess_slides(n: int = 4, budget: int = DEFAULT_BUDGET, seed: int = DEFAULT_SEED, **kw) -> Witness:
    return search(EXCESS, n, budget, seed, **kw)


def search_dependent_slides(n: int = 5, budget: int = DEFAULT_BUDGET, seed: int = DEFAULT_SEED, **kw) -> Witness:
    return search(DEPENDENT, n, budget, seed, **kw)


# ---------------------------------------------------------------------------
# Independent re-checks
# ---------------------------------------------------------------------------

def check_cycle(n: int, edge_set, cycle: list[int]) -> bool:
    """``cycle`` is a closed walk of distinct vertices along edges of ``edge_set``."""
    if len(cycle) < 5 or cycle[0] != cycle[-1]:
        return False
    if len(set(cycle[:-1])) != len(cycle) - 1:
        return False
    for a, b in zip(cycle, cycle[1:]):
        try:
            if hc.edge_between(a, b) not in edge_set:
                return False
        except ValueError:
            return False
    return all(0 <= v < 1 << n for v in cycle)


def verify_witness(w: Witness) -> None:
    """Re-derive the witness claims from scratch; raises AssertionError on mismatch."""
    tree = SpanningTree(w.tree.n, w.tree.edges)
    k = direction_monomial(tree)[w.dir - 1]
    found = [e for e in tree.sorted_edges if e.dir != w.dir and is_slidable(tree, e, w.dir)]
    assert found == sorted(w.slidable, key=hc.edge_sort_key), "slidable list mismatch"
    if w.kind == EXCESS:
        assert len(found) > k - 1, f"{len(found)} slidable edges is not an excess over k-1={k - 1}"
        return
    assert w.kind == DEPENDENT, w.kind
    assert len(found) == k - 1, f"expected exactly k-1={k - 1} slidable edges, got {len(found)}"
    assert w.epsilon is not None and len(w.epsilon) == len(found)
    moved = {e for e, bit in zip(found, w.epsilon) if bit}
    slid = (tree.edges - moved) | {hc.sigma_edge(e, w.dir) for e in moved}
    assert len(slid) == len(tree.edges)
    assert w.cycle is not None and check_cycle(tree.n, slid, w.cycle), "cycle certificate failed"


def excess_followups(w: Witness) -> list[dict]:
    """For each slidable edge: slide it and report how slidability changed."""
    out = []
    for e in w.slidable:
        after = apply_move(w.tree, SlideMove(e, w.dir, vertical_of(e, w.dir)))
        now = [m.edge for m in slidable_edges(after, w.dir)]
        lost = [g for g in w.slidable if g != e and g in after.edges and g not in now]
        out.append({"edge": e, "slidable_after": now, "lost": lost})
    return out


def load_fixtures(path) -> list[Witness]:
    with open(path) as fh:
        return [Witness.from_record(r) for r in json.load(fh)]


def save_fixture(path, witness: Witness, label: str | None = None) -> None:
    """Add a witness to a JSON fixture list, replacing any entry with the same label."""
    try:
        with open(path) as fh:
            records = json.load(fh)
    except FileNotFoundError:
        records = []
    rec = witness.to_record()
    if label is not None:
        rec["label"] = label
    key = rec.get("label", rec["kind"])
    records = [r for r in records if r.get("label", r["kind"]) != key]
    records.append(rec)
    with open(path, "w") as fh:
        json.dump(records, fh, indent=1)
        fh.write("\n")
