"""Upright trees, sections, and the signed-section bijection for Q_3.

A *section* assigns to every nonempty subset S of [n] an element of S; a
*signed section* does the same for subsets of size at least 2 and adds a
sign. Upright trees of Q_n correspond to sections. For n = 3 every
spanning tree corresponds to exactly one signed section, with weights
preserved; ``phi_forward`` and ``phi_inverse`` realise that
correspondence.
"""

from __future__ import annotations

import itertools
import math

from . import hypercube as hc
from .hypercube import CubeEdge
from .laurent import Laurent
from .rng import CubeRandom
from .slides import DOWN, UP, downward_moves, reversed_edge, slidable_edges, slide
from .trees import ROOT, SpanningTree, is_upright

PLUS, MINUS, ZERO = "P", "N", "Z"

Section = dict  # subset bits -> chosen element (1-based)
SignedSection = dict  # subset bits -> (element, sign)


def _size(s: int) -> int:
    return bin(s).count("1")


def section_of_upright(tree: SpanningTree) -> Section:
    """Direction of the first edge on the root path from each nonempty subset."""
    if not is_upright(tree):
        raise ValueError("tree is not upright")
    parent = tree.parent
    return {s: (s ^ parent[s]).bit_length() for s in range(1, 1 << tree.n)}


def validate_section(n: int, phi: Section, min_size: int = 1) -> None:
    domain = {s for s in range(1, 1 << n) if _size(s) >= min_size}
    if set(phi) != domain:
        raise ValueError("section domain must be every subset of size >= %d" % min_size)
    for s, d in phi.items():
        if not (1 <= d <= n and s >> (d - 1) & 1):
            raise ValueError(f"choice {d} is not an element of {hc.fmt_subset(s)}")


def upright_of_section(n: int, phi: Section) -> SpanningTree:
    """The upright tree joining each S to S minus its chosen element."""
    validate_section(n, phi)
    return SpanningTree(n, frozenset(CubeEdge(s & ~(1 << (d - 1)), d) for s, d in phi.items()))


def all_sections(n: int):
    subsets = list(range(1, 1 << n))
    for choice in itertools.product(*(hc.subset(s) for s in subsets)):
        yield dict(zip(subsets, choice))


def count_signed_sections(n: int) -> int:
    return math.prod(2 * _size(s) for s in range(1 << n) if _size(s) >= 2)


def all_signed_sections(n: int = 3):
    subsets = [s for s in range(1 << n) if _size(s) >= 2]
    options = [[(d, sg) for d in hc.subset(s) for sg in (1, -1)] for s in subsets]
    for choice in itertools.product(*options):
        yield dict(zip(subsets, choice))


def validate_signed_section(n: int, ss: SignedSection) -> None:
    validate_section(n, {s: d for s, (d, _) in ss.items()}, min_size=2)
    for s, (_, sign) in ss.items():
        if sign not in (1, -1):
            raise ValueError(f"sign for {hc.fmt_subset(s)} must be +1 or -1")


def section_weight(n: int, ss: SignedSection) -> Laurent:
    """q_1..q_n times q_d x_d^sign over the chosen (element, sign) pairs."""
    q = [1] * n
    x = [0] * n
    for d, sign in ss.values():
        q[d - 1] += 1
        x[d - 1] += sign
    return Laurent.monomial(q + x)


def signed_section_to_record(ss: SignedSection, n: int = 3) -> dict:
    return {
        "n": n,
        "choices": [{"set": s, "dir": d, "sign": sg} for s, (d, sg) in sorted(ss.items())],
    }


def signed_section_from_record(rec: dict) -> SignedSection:
    ss = {int(c["set"]): (int(c["dir"]), int(c["sign"])) for c in rec["choices"]}
    validate_signed_section(rec.get("n", 3), ss)
    return ss


# ---------------------------------------------------------------------------
# The bijection for Q_3
# ---------------------------------------------------------------------------

def _root_component(tree: SpanningTree, removed: set[CubeEdge]) -> set[int]:
    seen = {ROOT}
    stack = [ROOT]
    while stack:
        x = stack.pop()
        for y in tree.adjacency[x]:
            if y not in seen and hc.edge_between(x, y) not in removed:
                seen.add(y)
                stack.append(y)
    return seen


def edge_partition(tree: SpanningTree, i: int) -> dict[CubeEdge, str]:
    """Label each i-edge by the kind of i-slide that reverses it.

    ``P`` edges are reversed by a downward slide, ``N`` edges by an upward
    slide, and the single ``Z`` edge by none; the ``Z`` edge is the one left
    in the root component once the slidable edges are removed.
    """
    labels: dict[CubeEdge, str] = {}
    moves = slidable_edges(tree, i)
    for m in moves:
        f = reversed_edge(tree, m.edge, i)
        if f in labels:
            raise AssertionError(f"{f} reversed by two different {i}-slides")
        labels[f] = PLUS if m.vertical == DOWN else MINUS
    rest = [e for e in tree.edges_in(i) if e not in labels]
    if len(rest) != 1:
        raise AssertionError(f"expected one unreversible {i}-edge, found {len(rest)}")
    z = rest[0]
    comp = _root_component(tree, {m.edge for m in moves})
    if z.lower not in comp or z.upper not in comp:
        raise AssertionError(f"unreversible edge {z} is not in the root component")
    labels[z] = ZERO
    return labels


def _transport(tracked: dict[int, dict[CubeEdge, str]], e: CubeEdge, i: int) -> None:
    labels = tracked.get(e.dir)
    if labels is not None and e in labels:
        labels[hc.sigma_edge(e, i)] = labels.pop(e)


def _require_q3(n: int) -> None:
    if n != 3:
        raise ValueError("the signed-section bijection is defined for Q_3 only")


def phi_forward(tree: SpanningTree, rng: CubeRandom | None = None) -> SignedSection:
    """Signed section of a spanning tree of Q_3.

    The unsigned part is the section of the retracted upright tree. For the
    signs, the i-edges are labelled P/N/Z just before the downward i-slides
    of the retraction, the labels follow their edges through the remaining
    slides, and the Z label is then moved onto the edge at the root if it
    ended up elsewhere. ``rng`` shuffles the order of each batch of parallel
    slides; the result must not depend on it.
    """
    _require_q3(tree.n)
    tracked: dict[int, dict[CubeEdge, str]] = {}
    cur = tree
    for i in (3, 2, 1):
        tracked[i] = edge_partition(cur, i)
        moves = downward_moves(cur, i)
        if rng is not None:
            rng.shuffle(moves)
        for m in moves:
            cur = slide(cur, m.edge, i)
            _transport(tracked, m.edge, i)
    if not is_upright(cur):
        raise AssertionError("retraction did not reach an upright tree")
    section = section_of_upright(cur)
    for i, labels in tracked.items():
        if set(labels) != set(cur.edges_in(i)):
            raise AssertionError(f"lost track of the {i}-edges")
        z = next(e for e, lab in labels.items() if lab == ZERO)
        at_root = CubeEdge(ROOT, i)
        if z != at_root:
            labels[z], labels[at_root] = labels[at_root], ZERO
    out: SignedSection = {}
    for s, d in section.items():
        if _size(s) < 2:
            continue
        lab = tracked[d][CubeEdge(s & ~(1 << (d - 1)), d)]
        if lab == ZERO:
            raise AssertionError(f"first edge from {hc.fmt_subset(s)} carries the Z label")
        out[s] = (d, 1 if lab == PLUS else -1)
    return out


def phi_inverse(ss: SignedSection) -> SpanningTree:
    """Spanning tree of Q_3 with the given signed section.

    Rebuilds the upright tree, labels its edges from the signs, then undoes
    the retraction direction by direction, reversing the P-labelled edges by
    upward slides. When the edge no slide can reverse carries P, the
    Z-labelled edge is reversed in its place.
    """
    n = 3
    validate_signed_section(n, ss)
    phi = {s: d for s, (d, _) in ss.items()}
    for i in range(1, n + 1):
        phi[1 << (i - 1)] = i
    cur = upright_of_section(n, phi)
    tracked: dict[int, dict[CubeEdge, str]] = {}
    for i in range(1, n + 1):
        labels = {}
        for e in cur.edges_in(i):
            if e.lower == ROOT:
                labels[e] = ZERO
            else:
                labels[e] = PLUS if ss[e.upper][1] == 1 else MINUS
        tracked[i] = labels
    for i in range(1, n + 1):
        labels = tracked[i]
        moves = slidable_edges(cur, i)
        if any(m.vertical != UP for m in moves):
            raise AssertionError(f"tree is not upright in direction {i}")
        reversing = {reversed_edge(cur, m.edge, i): m for m in moves}
        stuck = [e for e in labels if e not in reversing]
        if len(stuck) != 1:
            raise AssertionError(f"expected one unreversible {i}-edge")
        targets = {e for e, lab in labels.items() if lab == PLUS}
        if stuck[0] in targets:
            targets.discard(stuck[0])
            targets.add(next(e for e, lab in labels.items() if lab == ZERO))
        for f in sorted(targets, key=hc.edge_sort_key):
            m = reversing[f]
            cur = slide(cur, m.edge, i)
            _transport(tracked, m.edge, i)
    if phi_forward(cur) != ss:
        raise ValueError("signed section does not round-trip; it is inconsistent")
    return cur
