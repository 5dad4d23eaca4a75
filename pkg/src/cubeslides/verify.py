"""Exhaustive checks over the spanning trees of Q_3, grouped into suites.

Each suite returns a list of ``Check`` rows; the CLI ``verify`` verb prints
them. Every check recomputes its facts from the primitive operations.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Callable

from . import bijection as bj
from . import hypercube as hc
from . import slide_graph as sg
from . import slides as sl
from . import trees as tr
from .errors import DependentSlides


@dataclass
class Check:
    suite: str
    name: str
    passed: bool
    detail: str = ""

    def to_record(self) -> dict:
        return {"suite": self.suite, "check": self.name, "passed": self.passed, "detail": self.detail}


def _trees() -> list[tr.SpanningTree]:
    return list(tr.enumerate_spanning_trees(3))


def suite_weights() -> list[Check]:
    ts = _trees()
    out = []
    counts = (len(ts), tr.formula_count(3), tr.kirchhoff_count(3))
    out.append(Check("weights", "tree count 384 by enumeration, formula, determinant",
                     counts == (384, 384, 384), str(counts)))
    agree = sum(tr.dd_monomial_edgewise(t) == tr.dd_monomial_oriented(t) for t in ts)
    out.append(Check("weights", "edgewise and oriented x-monomials agree", agree == 384, f"{agree}/384"))
    bounded = 0
    for t in ts:
        k = tr.direction_monomial(t)
        x = tr.dd_monomial_oriented(t)
        bounded += all(1 - ki <= xi <= ki - 1 and (xi + ki) % 2 == 1 for ki, xi in zip(k, x))
    out.append(Check("weights", "x-exponent parity and range", bounded == 384, f"{bounded}/384"))
    same = tr.weighted_tree_sum(ts) == tr.weighted_count_product(3)
    out.append(Check("weights", "weighted count identity", same))
    return out


def suite_slides() -> list[Check]:
    ts = _trees()
    counts_ok = four_ok = unique_ok = flips_ok = class_ok = 0
    pairs = 0
    for t in ts:
        k = tr.direction_monomial(t)
        up, down = tr.up_down_counts(t)
        four_ok += len(sl.all_moves(t)) == 4
        for i in (1, 2, 3):
            moves = sl.slidable_edges(t, i)
            n_down = sum(m.vertical == sl.DOWN for m in moves)
            counts_ok += (len(moves) == k[i - 1] - 1 and n_down == up[i - 1]
                          and len(moves) - n_down == down[i - 1] - 1)
            for m in moves:
                flips = sl.flipped_edges(t, m.edge, i)
                ok = (flips == sl.predicted_reversals(t, m.edge, i)
                      and m.edge not in flips
                      and sum(f.dir == i for f in flips) == 1)
                flips_ok += ok
            for e1, e2 in sl.minimal_pairs(t, i):
                pairs += 1
                on_path = sl.slidable_on_path(t, sl.edge_path(t, e1, e2), i)
                if len(on_path) != 1 or sl.find_slidable_on_path(t, e1, e2, i) != on_path[0]:
                    continue
                after = sl.slide(t, on_path[0], i)
                again = sl.slidable_on_path(after, sl.edge_path(after, e1, e2), i)
                unique_ok += again == [hc.sigma_edge(on_path[0], i)]
            try:
                cls = sl.slide_class(t, i)
                class_ok += len(cls) == 2 ** (k[i - 1] - 1)
            except DependentSlides:
                pass
    return [
        Check("slides", "k_i-1 slidable edges, u_i down, d_i-1 up", counts_ok == 3 * 384, f"{counts_ok}/1152"),
        Check("slides", "exactly four slides per tree", four_ok == 384, f"{four_ok}/384"),
        Check("slides", "unique slidable edge on each minimal path, before and after",
              unique_ok == pairs, f"{unique_ok}/{pairs}"),
        Check("slides", "orientation flips equal cycle-component edges, one i-edge",
              flips_ok == 4 * 384, f"{flips_ok}/1536"),
        Check("slides", "slide classes independent of size 2^(k_i-1)", class_ok == 3 * 384, f"{class_ok}/1152"),
    ]


def suite_retraction() -> list[Check]:
    ts = _trees()
    images = {t: sl.retract(t) for t in ts}
    idem = sum(sl.retract(u) == u for u in images.values())
    fibres = Counter(images.values())
    upright = {t for t in ts if tr.is_upright(t)}
    idem_i = sum(sl.retract_i(sl.retract_i(t, i), i) == sl.retract_i(t, i) for t in ts for i in (1, 2, 3))
    return [
        Check("retraction", "retraction is idempotent", idem == 384, f"{idem}/384"),
        Check("retraction", "image is exactly the 24 upright trees",
              set(fibres) == upright and len(upright) == 24, f"{len(fibres)} images, {len(upright)} upright"),
        Check("retraction", "every fibre has 16 trees", set(fibres.values()) == {16}, str(sorted(set(fibres.values())))),
        Check("retraction", "single-direction retractions idempotent", idem_i == 3 * 384, f"{idem_i}/1152"),
    ]


def suite_bijection() -> list[Check]:
    ts = _trees()
    images = {}
    weight_ok = round_ok = 0
    for t in ts:
        ss = bj.phi_forward(t)
        images[tuple(sorted(ss.items()))] = t
        weight_ok += bj.section_weight(3, ss) == tr.weight(t)
        round_ok += bj.phi_inverse(ss) == t
    all_ss = {tuple(sorted(s.items())) for s in bj.all_signed_sections(3)}
    fibre_signs: dict[tuple, set] = {}
    for key in images:
        dirs = tuple((s, d) for s, (d, _) in key)
        fibre_signs.setdefault(dirs, set()).add(tuple(sign for _, (_, sign) in key))
    full = set(itertools.product((1, -1), repeat=4))
    fibres_ok = all(v == full for v in fibre_signs.values()) and len(fibre_signs) == 24
    return [
        Check("bijection", "forward map is a bijection onto signed sections",
              set(images) == all_ss and len(images) == 384, f"{len(images)} images of {len(all_ss)}"),
        Check("bijection", "weight preserving", weight_ok == 384, f"{weight_ok}/384"),
        Check("bijection", "inverse recovers every tree", round_ok == 384, f"{round_ok}/384"),
        Check("bijection", "signs exhaust {+1,-1}^4 on each fibre", fibres_ok, f"{len(fibre_signs)} fibres"),
    ]


def suite_graph() -> list[Check]:
    g = sg.build(3)
    comps = sg.components(g)
    sizes = Counter(c.size for c in comps)
    degrees = {len(adj) for adj in g.adjacency.values()}
    sig_census = Counter(tuple(sorted(tr.direction_monomial(t), reverse=True)) for t in g.trees.values())
    q4 = [c for c in comps if c.size == 16]
    big = [c for c in comps if c.size == 64]
    return [
        Check("graph", "384 nodes of degree 4, 768 edges",
              len(g.nodes) == 384 and degrees == {4} and len(g.edges()) == 768),
        Check("graph", "12 components of size 16 and 3 of size 64",
              sizes == Counter({16: 12, 64: 3}), str(dict(sizes))),
        Check("graph", "size-16 components certified as 4-cubes", all(c.q4_isomorphic for c in q4), f"{len(q4)}"),
        Check("graph", "size-64 components have 4 upright trees", all(c.upright_count == 4 for c in big)),
        Check("graph", "signature census 96/96/192",
              sig_census == Counter({(4, 2, 1): 96, (3, 3, 1): 96, (3, 2, 2): 192}), str(dict(sig_census))),
    ]


SUITES: dict[str, Callable[[], list[Check]]] = {
    "weights": suite_weights,
    "slides": suite_slides,
    "retraction": suite_retraction,
    "bijection": suite_bijection,
    "graph": suite_graph,
}


def run(suite: str = "all") -> list[Check]:
    names = list(SUITES) if suite == "all" else [suite]
    out = []
    for name in names:
        out.extend(SUITES[name]())
    return out
