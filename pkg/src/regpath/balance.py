"""Turn each alternating closed trail into a k-balanced set of paths.

Per trail (r >= 2) the dispatch is:
  (a) no trapped links: attach every matching edge to a side whose path
      stays a path; the result is balanced for free because a length-(2k+1)
      path only arises with both end edges in the matching;
  (b) trapped links, but not all of them: split the trail into runs of
      untrapped paths (decomposed as in (a)) and nice extensions of the
      maximal trapped sequences (decomposed by the pair/triple peel
      recursion);
  (c) every link trapped: peel one non-exceptional pair, or one exceptional
      triple, at a scanned index and recurse via (b)'s machinery.

1-closed trails are emitted as 2k-cycles upstream.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass

from .errors import ContractViolation, ExceptionalError, SearchExhausted
from .graph import (
    CycleWalk,
    Decomposition,
    Edge,
    Graph,
    PathWalk,
    canonical_encode,
    compute_girth,
)
from .odd_decomp import OddDecomposition
from .pathsplit import enumerate_two_path_splits
from .trails import (
    AlternatingClosedTrail,
    Extension,
    LinkClass,
    build_alternating_closed_trails,
    check_cyclic_exceptional_span,
    detect_exceptional,
    extension_is_nice,
    maximal_trapped_sequences,
    path_nice_for,
    reverse_trail,
    window_exceptional,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuasiBalanceWitness:
    """The vertices where a quasi-balanced decomposition of an extension may
    legitimately be unbalanced: odd-degree vertices incident to a flank edge
    that is part of the extension."""

    extension: Extension
    excused: frozenset[int]


def quasi_balance_witness(ext: Extension) -> QuasiBalanceWitness:
    deg = ext.degrees()
    flank_vertices = {v for e in ext.flanks for v in e}
    excused = frozenset(v for v in flank_vertices if deg[v] % 2 == 1)
    return QuasiBalanceWitness(ext, excused)


def _ends_by_class(paths, k: int) -> tuple[Counter, Counter]:
    low: Counter = Counter()
    high: Counter = Counter()
    for p in paths:
        target = high if p.length >= 2 * k + 1 else low
        target[p.first] += 1
        target[p.last] += 1
    return low, high


def _quasi_balanced(paths, k: int, excused: frozenset[int]) -> bool:
    low, high = _ends_by_class(paths, k)
    return all(high[v] <= low[v] for v in high if v not in excused)


def _pair_key(a: PathWalk, b: PathWalk):
    return tuple(sorted((canonical_encode(a), canonical_encode(b))))


def pair_decompose(ext: Extension, k: int) -> tuple[PathWalk, PathWalk]:
    """Quasi-k-balanced split of a path-link-path extension into two paths.

    Raises ExceptionalError iff the extension contains an exceptional
    subgraph (then necessarily k = 3). An empty search otherwise is a bug
    trap: existence is guaranteed for girth >= 2k-2 hosts.
    """
    if len(ext.paths) != 2 or len(ext.links) != 1:
        raise ValueError("pair_decompose expects exactly two paths and one core link")
    if detect_exceptional(ext, k):
        raise ExceptionalError(ext)
    excused = quasi_balance_witness(ext).excused
    candidates = [
        (a, b)
        for a, b in enumerate_two_path_splits(ext.edge_set, 2 * k - 1, 2 * k + 1)
        if _quasi_balanced((a, b), k, excused)
    ]
    if not candidates:
        girth = compute_girth(Graph.from_edges(max(v for e in ext.edge_set for v in e) + 1, ext.edge_set))
        hint = "girth precondition violated" if girth < 2 * k - 2 else "bug trap: girth holds"
        raise SearchExhausted(f"no quasi-balanced 2-path split exists ({hint})")
    return min(candidates, key=lambda ab: _pair_key(*ab))


def _attach(path: PathWalk, e: Edge) -> PathWalk:
    """Extend the path by a matching edge incident to one of its ends."""
    if path.first in e:
        far = e[0] if e[1] == path.first else e[1]
        vs = (far,) + path.vertices
    elif path.last in e:
        far = e[0] if e[1] == path.last else e[1]
        vs = path.vertices + (far,)
    else:
        raise ContractViolation(f"edge {e} touches no end of {path.vertices}")
    return PathWalk(vs)


def nice_extension_decompose(ext: Extension, k: int) -> list[PathWalk]:
    """Decompose a nice extension of a trapped sequence s(j, l) into l + 2
    paths, peeling a leading pair, or a leading triple when the pair is
    blocked by an exceptional subgraph (k = 3; never twice in a row)."""
    paths, links = ext.paths, ext.links
    if not paths:
        return []
    if len(paths) == 1:
        if ext.left is not None:
            raise ContractViolation("degenerate remainder cannot carry a left flank")
        return [_attach(paths[0], ext.right) if ext.right else paths[0]]
    if len(paths) == 2:
        try:
            a, b = pair_decompose(ext, k)
        except ExceptionalError as exc:  # excluded for nice extensions
            raise ContractViolation("nice base extension turned out exceptional") from exc
        return [a, b]

    if ext.left is not None and not path_nice_for(paths[0], ext.left):
        # Niceness permits a malicious leading flank only when the flank
        # wraps around to the final path; re-seat it on the nice side.
        last = paths[-1]
        wraps = last.first in ext.left or last.last in ext.left
        if ext.right is None and wraps and path_nice_for(last, ext.left):
            ext = Extension(paths, links, left=None, right=ext.left)
        else:
            raise ContractViolation("extension is not nice at its leading flank")
    return nice_extension_decompose_oriented(ext, k)


def nice_extension_decompose_oriented(ext: Extension, k: int) -> list[PathWalk]:
    paths, links = ext.paths, ext.links
    head = Extension(paths[0:2], (links[0],), left=ext.left, right=links[1])
    try:
        a, b = pair_decompose(head, k)
        log.debug("peeled pair at head of extension (%d paths left)", len(paths) - 2)
        rest = Extension(paths[2:], links[2:], left=None, right=ext.right)
        return [a, b] + nice_extension_decompose(rest, k)
    except ExceptionalError:
        if k != 3:
            raise ContractViolation("exceptional subgraph with k != 3")
        first = _attach(paths[0], ext.left) if ext.left else paths[0]
        have_third_link = len(links) > 2
        after = links[2] if have_third_link else ext.right
        head2 = Extension(paths[1:3], (links[1],), left=links[0], right=after)
        try:
            c, d = pair_decompose(head2, k)
        except ExceptionalError as exc:  # consecutive exceptionals cannot happen
            raise ContractViolation("exceptional subgraphs in consecutive windows") from exc
        log.debug("peeled exceptional triple at head of extension")
        rest = Extension(
            paths[3:], links[3:], left=None, right=ext.right if have_third_link else None
        )
        return [first, c, d] + nice_extension_decompose(rest, k)


def _assign_link(left_path: PathWalk, e: Edge, right_path: PathWalk) -> int:
    """0 to attach e to the left path, 1 for the right; prefers left."""
    if path_nice_for(left_path, e):
        return 0
    if path_nice_for(right_path, e):
        return 1
    raise ContractViolation(f"untrapped link {e} has no nice side")


def _decompose_untrapped_trail(w: AlternatingClosedTrail, k: int) -> list[PathWalk]:
    """Case (a): every link attaches to a nice side independently."""
    assigned: dict[int, list[Edge]] = {i: [] for i in range(w.r)}
    for i in range(w.r):
        side = _assign_link(w.path(i), w.link(i), w.path(i + 1))
        assigned[(i + side) % w.r].append(w.link(i))
    out = []
    for i in range(w.r):
        p = w.path(i)
        for e in assigned[i]:
            p = _attach(p, e)
        out.append(p)
    return out


def _decompose_run(
    paths: list[PathWalk], inner: list[Edge], left: Edge | None, right: Edge | None, k: int
) -> list[PathWalk]:
    """Greedy attachment over a linear run of untrapped paths; boundary
    flanks attach inward (their outer path is not part of the run)."""
    assigned: dict[int, list[Edge]] = {i: [] for i in range(len(paths))}
    if left is not None:
        if not path_nice_for(paths[0], left):
            raise ContractViolation("boundary flank qualified without a nice inner path")
        assigned[0].append(left)
    if right is not None:
        if not path_nice_for(paths[-1], right):
            raise ContractViolation("boundary flank qualified without a nice inner path")
        assigned[len(paths) - 1].append(right)
    for i, e in enumerate(inner):
        assigned[i + _assign_link(paths[i], e, paths[i + 1])].append(e)
    out = []
    for i, p in enumerate(paths):
        for e in assigned[i]:
            p = _attach(p, e)
        out.append(p)
    return out


def _decompose_mixed_trail(w: AlternatingClosedTrail, k: int) -> list[PathWalk]:
    """Case (b): runs of untrapped paths plus nice extensions of the maximal
    trapped sequences; leftover matching edges re-root onto a sequence end
    path that is nice for them."""
    r = w.r
    report = maximal_trapped_sequences(w)
    trapped = report.trapped

    in_seq: set[int] = set()
    seq_of_initial: dict[int, int] = {}
    seq_of_final: dict[int, int] = {}
    for s_idx, (j, l) in enumerate(report.sequences):
        seq_of_initial[j % r] = s_idx
        seq_of_final[(j + l + 1) % r] = s_idx
        for t in range(l + 2):
            in_seq.add((j + t) % r)

    free = [i for i in range(r) if i not in in_seq]  # paths outside every sequence
    free_set = set(free)

    # Qualify untrapped links into the run region when a free path is nice.
    run_links: set[int] = set()
    for i in range(r):
        if trapped[i]:
            continue
        if (i in free_set and path_nice_for(w.path(i), w.link(i))) or (
            (i + 1) % r in free_set and path_nice_for(w.path(i + 1), w.link(i))
        ):
            run_links.add(i)

    # Re-root every leftover matching edge onto a nice sequence end path.
    seq_left_flank: dict[int, Edge] = {}
    seq_right_flank: dict[int, Edge] = {}
    for i in range(r):
        if trapped[i] or i in run_links:
            continue
        e = w.link(i)
        slots: list[tuple[int, int, int]] = []
        s_right = seq_of_final.get(i)
        if s_right is not None and path_nice_for(w.path(i), e):
            slots.append((report.sequences[s_right][0], 1, s_right))
        s_left = seq_of_initial.get((i + 1) % r)
        if s_left is not None and path_nice_for(w.path(i + 1), e):
            slots.append((report.sequences[s_left][0], 0, s_left))
        if not slots:
            raise ContractViolation(f"leftover matching edge {e} has no nice sequence slot")
        _, side, s_idx = min(slots)
        if side == 0:
            seq_left_flank[s_idx] = e
        else:
            seq_right_flank[s_idx] = e

    out: list[PathWalk] = []

    visited: set[int] = set()
    for i in sorted(free):
        if i in visited or (i - 1) % r in free_set:
            continue  # only start a run at its left boundary
        run = []
        t = i
        while t not in visited and t in free_set:
            run.append(t)
            visited.add(t)
            t = (t + 1) % r
        inner = [w.link(run[a]) for a in range(len(run) - 1)]
        left = w.link(run[0] - 1) if (run[0] - 1) % r in run_links else None
        right = w.link(run[-1]) if run[-1] in run_links else None
        out.extend(_decompose_run([w.path(t) for t in run], inner, left, right, k))

    for s_idx, (j, l) in enumerate(report.sequences):
        ext = Extension(
            paths=tuple(w.path(j + t) for t in range(l + 2)),
            links=tuple(w.link(j + t) for t in range(l + 1)),
            left=seq_left_flank.get(s_idx),
            right=seq_right_flank.get(s_idx),
        )
        if not extension_is_nice(ext):
            raise ContractViolation("assembled sequence extension is not nice")
        out.extend(nice_extension_decompose(ext, k))
    return out


def _decompose_cyclic_trapped(w: AlternatingClosedTrail, k: int) -> list[PathWalk]:
    """Case (c): the whole trail is one cyclic trapped sequence."""
    r = w.r
    if r == 2:
        if not check_cyclic_exceptional_span(w, 0, 1, k):
            raise ContractViolation("cyclic span of two paths matched the exceptional template")
        ext = Extension(paths=w.paths, links=(w.link(0),), right=w.link(1))
        return list(pair_decompose(ext, k))

    for view in (w, reverse_trail(w)):
        for j in range(r):
            right_exc = window_exceptional(
                view.path(j), view.link(j), view.path(j + 1), view.link(j + 1), None, k
            )
            left_exc = window_exceptional(
                view.path(j), view.link(j), view.path(j + 1), None, view.link(j - 1), k
            )
            if right_exc or left_exc:
                continue
            head = Extension(
                paths=(view.path(j), view.path(j + 1)),
                links=(view.link(j),),
                left=view.link(j - 1),
                right=view.link(j + 1),
            )
            a, b = pair_decompose(head, k)
            rest = Extension(
                paths=tuple(view.path(j + 2 + t) for t in range(r - 2)),
                links=tuple(view.link(j + 2 + t) for t in range(r - 3)),
            )
            return [a, b] + nice_extension_decompose(rest, k)

    # Every index is blocked; peel around one exceptional window instead.
    for view in (w, reverse_trail(w)):
        for j in range(r):
            if not window_exceptional(
                view.path(j), view.link(j), view.path(j + 1), view.link(j + 1), None, k
            ):
                continue
            head = Extension(
                paths=(view.path(j + 1), view.path(j + 2)),
                links=(view.link(j + 1),),
                left=view.link(j),
                right=view.link(j + 2),
            )
            try:
                a, b = pair_decompose(head, k)
            except ExceptionalError as exc:
                raise ContractViolation("window after an exceptional one is exceptional") from exc
            rest = Extension(
                paths=tuple(view.path(j + 3 + t) for t in range(r - 2)),
                links=tuple(view.link(j + 3 + t) for t in range(r - 3)),
            )
            return [a, b] + nice_extension_decompose(rest, k)
    raise ContractViolation("cyclic trapped trail admits no peel index")


def balanced_decompose_trail(w: AlternatingClosedTrail, k: int) -> list[PathWalk]:
    """Exactly r paths partitioning E(w), lengths in {2k-1, 2k, 2k+1},
    k-balanced at every vertex, with equally many extreme lengths."""
    if w.r < 2:
        raise ValueError("1-closed trails are emitted as 2k-cycles upstream")
    report = maximal_trapped_sequences(w)
    if report.cyclic:
        out = _decompose_cyclic_trapped(w, k)
    elif report.sequences:
        out = _decompose_mixed_trail(w, k)
    else:
        out = _decompose_untrapped_trail(w, k)
    _audit_trail_decomposition(w, out, k)
    return out


def _audit_trail_decomposition(w: AlternatingClosedTrail, out: list[PathWalk], k: int) -> None:
    if len(out) != w.r:
        raise ContractViolation(f"trail produced {len(out)} paths, expected {w.r}")
    edges: list[Edge] = [e for p in out for e in p.edge_set]
    if len(edges) != len(set(edges)) or set(edges) != set(w.edge_set):
        raise ContractViolation("trail decomposition does not partition the trail edges")
    lengths = Counter(p.length for p in out)
    if any(l not in (2 * k - 1, 2 * k, 2 * k + 1) for l in lengths):
        raise ContractViolation(f"off-contract path lengths {sorted(lengths)}")
    if lengths[2 * k - 1] != lengths[2 * k + 1]:
        raise ContractViolation("unequal counts of extreme path lengths")
    if not _quasi_balanced(out, k, frozenset()):
        raise ContractViolation("trail decomposition is not balanced at some vertex")


def decompose_balanced(g: Graph, m: frozenset[Edge], dec: OddDecomposition) -> Decomposition:
    """Whole-graph stage: 2k-cycles from 1-closed trails, balanced paths from
    the rest; the union is k-balanced with all cycles of length 2k."""
    k = dec.k
    trails = build_alternating_closed_trails(m, dec)
    elements: list = []
    for w in trails:
        if w.r == 1:
            elements.append(CycleWalk(w.paths[0].vertices))
        else:
            elements.extend(balanced_decompose_trail(w, k))
    result = Decomposition(tuple(elements), k)
    if len(result.elements) != len(dec.paths):
        raise ContractViolation("element count disagrees with the path count")
    got = Counter(e for el in result.elements for e in el.edge_set)
    if set(got) != set(g.edge_set) or any(c != 1 for c in got.values()):
        raise ContractViolation("stage output does not partition E(G)")
    counts = result.length_counts()
    if counts.get(2 * k - 1, 0) != counts.get(2 * k + 1, 0):
        raise ContractViolation("global extreme-length counts differ")
    if not _quasi_balanced(result.paths, k, frozenset()):
        raise ContractViolation("stage output unbalanced at some vertex")
    return result
