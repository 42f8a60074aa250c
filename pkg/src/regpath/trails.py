"""Alternating closed trails over (matching, path-decomposition) pairs, and
the structural classifiers driving the balance engine: trapped links,
nice/malicious flanks, maximal trapped sequences, and the rigid k=3
exceptional-subgraph template.

All cyclic index arithmetic goes through AlternatingClosedTrail.path/.link,
which normalize mod r; nothing else indexes the cyclic lists directly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

from .errors import ValidationError
from .graph import Edge, PathWalk, norm_edge
from .odd_decomp import OddDecomposition


@dataclass(frozen=True)
class AlternatingClosedTrail:
    """Cyclic sequence P0 e0 P1 e1 ... P_{r-1} e_{r-1} (indices mod r).

    paths[i] is oriented along the trail: links[i] joins paths[i].last to
    paths[i+1].first, and links[r-1] closes back to paths[0].first.
    """

    paths: tuple[PathWalk, ...]
    links: tuple[Edge, ...]

    @property
    def r(self) -> int:
        return len(self.paths)

    def path(self, i: int) -> PathWalk:
        return self.paths[i % self.r]

    def link(self, i: int) -> Edge:
        return self.links[i % self.r]

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        out: set[Edge] = set(self.links)
        for p in self.paths:
            out |= p.edge_set
        return frozenset(out)

    @cached_property
    def vertex_set(self) -> frozenset[int]:
        out: set[int] = set()
        for p in self.paths:
            out |= p.vertex_set
        return frozenset(out)


def check_trail(w: AlternatingClosedTrail) -> None:
    """Structural invariants; builders call this, hand-crafted fixtures may not."""
    r = w.r
    if r < 1 or len(w.links) != r:
        raise ValidationError("trail needs equally many paths and links")
    if len({p.edge_set for p in w.paths}) != r:
        raise ValidationError("paths in a trail must be distinct")
    if len(set(w.links)) != r:
        raise ValidationError("links in a trail must be distinct")
    for i in range(r):
        e = w.link(i)
        if norm_edge(w.path(i).last, w.path(i + 1).first) != e:
            raise ValidationError(f"link {i} does not join its neighboring path ends")
    path_edges: set[Edge] = set()
    for p in w.paths:
        if path_edges & p.edge_set:
            raise ValidationError("paths in a trail share an edge")
        path_edges |= p.edge_set
    if path_edges & set(w.links):
        raise ValidationError("a link reuses a path edge")


def reverse_trail(w: AlternatingClosedTrail) -> AlternatingClosedTrail:
    paths = (w.paths[0].reversed(),) + tuple(p.reversed() for p in w.paths[:0:-1])
    links = tuple(reversed(w.links))
    return AlternatingClosedTrail(paths, links)


def build_alternating_closed_trails(
    m: frozenset[Edge], dec: OddDecomposition
) -> tuple[AlternatingClosedTrail, ...]:
    """Partition the union of the paths and the matching into alternating
    closed trails. Each matching edge joins the two paths owning its
    endpoints; that pairing is 2-regular on path ids, so it splits into
    cycles, one trail per cycle. A trail with r = 1 is a 2k-cycle."""
    mate: dict[int, int] = {}
    for u, v in m:
        if u in mate or v in mate:
            raise ValidationError("matching has a repeated vertex")
        mate[u], mate[v] = v, u

    epi = dec.endpoint_index
    for p in dec.paths:
        for v in (p.first, p.last):
            if v not in mate:
                raise ValidationError(f"path end {v} is not covered by the matching")

    trails: list[AlternatingClosedTrail] = []
    unvisited = set(range(len(dec.paths)))
    while unvisited:
        start = min(unvisited)
        entry = min(dec.paths[start].first, dec.paths[start].last)
        pid = start
        trail_pids: set[int] = set()
        seq_paths: list[PathWalk] = []
        seq_links: list[Edge] = []
        while True:
            p = dec.paths[pid]
            if p.first != entry:
                p = p.reversed()
            if p.first != entry:
                raise ValidationError("endpoint_index inconsistent with path ends")
            seq_paths.append(p)
            trail_pids.add(pid)
            unvisited.discard(pid)
            exit_v = p.last
            far = mate[exit_v]
            seq_links.append(norm_edge(exit_v, far))
            nxt = epi.get(far)
            if nxt is None or not (0 <= nxt < len(dec.paths)):
                raise ValidationError(f"matching partner {far} ends no path")
            if nxt == start:
                if far != seq_paths[0].first:
                    raise ValidationError("trail fails to close on the start path")
                break
            if nxt in trail_pids:
                raise ValidationError("pairing revisits a path before closing")
            pid, entry = nxt, far
        w = AlternatingClosedTrail(tuple(seq_paths), tuple(seq_links))
        check_trail(w)
        trails.append(w)
    return tuple(trails)


class LinkClass(enum.Enum):
    NICE_BOTH = "nice-both"
    NICE_LEFT = "nice-left"    # left path nice, right path malicious
    NICE_RIGHT = "nice-right"  # right path nice, left path malicious
    TRAPPED = "trapped"


def _link_end(e: Edge, p: PathWalk) -> int:
    hits = [v for v in e if v in (p.first, p.last)]
    if not hits:
        raise ValidationError(f"link {e} does not touch an end of {p.vertices}")
    return hits[0]


def path_nice_for(p: PathWalk, e: Edge) -> bool:
    """p is nice for its incident matching edge e when the partner endpoint
    of e is not an internal vertex of p."""
    x = _link_end(e, p)
    far = e[0] if e[1] == x else e[1]
    return far not in p.internal


def classify_link(pp: PathWalk, e: Edge, pn: PathWalk) -> LinkClass:
    left_nice = path_nice_for(pp, e)
    right_nice = path_nice_for(pn, e)
    if left_nice and right_nice:
        return LinkClass.NICE_BOTH
    if left_nice:
        return LinkClass.NICE_LEFT
    if right_nice:
        return LinkClass.NICE_RIGHT
    return LinkClass.TRAPPED


@dataclass(frozen=True)
class TrappedReport:
    link_classes: tuple[LinkClass, ...]
    sequences: tuple[tuple[int, int], ...]  # (j, l): links e_j..e_{j+l} all trapped
    cyclic: bool  # every link trapped

    @property
    def trapped(self) -> tuple[bool, ...]:
        return tuple(c is LinkClass.TRAPPED for c in self.link_classes)


def circular_runs(flags) -> tuple[tuple[int, int], ...]:
    """Maximal runs of consecutive True entries in a cyclic sequence, as
    (start, length - 1) pairs; a single all-True run wraps the whole cycle."""
    r = len(flags)
    if all(flags):
        return ((0, r - 1),)
    runs: list[tuple[int, int]] = []
    i = 0
    while i < r:
        if flags[i] and not flags[(i - 1) % r]:
            l = 0
            while flags[(i + l + 1) % r]:
                l += 1
            runs.append((i, l))
            i += l + 1
        else:
            i += 1
    return tuple(runs)


def maximal_trapped_sequences(w: AlternatingClosedTrail) -> TrappedReport:
    r = w.r
    classes = tuple(classify_link(w.path(i), w.link(i), w.path(i + 1)) for i in range(r))
    trapped = [c is LinkClass.TRAPPED for c in classes]
    return TrappedReport(classes, circular_runs(trapped), all(trapped))


@dataclass(frozen=True)
class Extension:
    """A trapped-core slice of a trail plus optional flanking matching edges.

    paths = P_j..P_{j+l+1}, links = e_j..e_{j+l}; `left` is e_{j-1} when
    included, `right` is e_{j+l+1}. Degenerate slices (one path, or even
    none) appear as peel remainders.
    """

    paths: tuple[PathWalk, ...]
    links: tuple[Edge, ...]
    left: Edge | None = None
    right: Edge | None = None

    def __post_init__(self):
        if self.paths and len(self.links) != len(self.paths) - 1:
            raise ValidationError("an extension needs one link between consecutive paths")
        if not self.paths and (self.links or self.left or self.right):
            raise ValidationError("empty extension cannot carry edges")
        if self.left is not None and self.right is not None and self.left == self.right:
            raise ValidationError("the same flank edge cannot be attached twice")

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        out: set[Edge] = set(self.links)
        for p in self.paths:
            out |= p.edge_set
        if self.left:
            out.add(self.left)
        if self.right:
            out.add(self.right)
        return frozenset(out)

    @property
    def flanks(self) -> tuple[Edge, ...]:
        return tuple(e for e in (self.left, self.right) if e is not None)

    def reversed(self) -> "Extension":
        return Extension(
            paths=tuple(p.reversed() for p in reversed(self.paths)),
            links=tuple(reversed(self.links)),
            left=self.right,
            right=self.left,
        )

    def degrees(self) -> dict[int, int]:
        deg: dict[int, int] = {}
        for u, v in self.edge_set:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        return deg


def extension_is_nice(ext: Extension) -> bool:
    if ext.left is not None and not path_nice_for(ext.paths[0], ext.left):
        return False
    if ext.right is not None and not path_nice_for(ext.paths[-1], ext.right):
        return False
    return True


def matches_exceptional_template(pp: PathWalk, e: Edge, pn: PathWalk, after: Edge, k: int) -> bool:
    """The rigid obstruction: paths x0..x5 and y0..y5 linked by e = x5 y0
    with y0 = x1, y2 = x3, y4 = x5, and the onward matching edge returning
    from y5 into y2. Orientations are forced by e, so this is O(1)."""
    if k != 3 or pp.length != 5 or pn.length != 5:
        return False
    for a in e:
        b = e[0] if e[1] == a else e[1]
        if a not in (pp.first, pp.last) or b not in (pn.first, pn.last):
            continue
        xs = pp.vertices if pp.last == a else pp.vertices[::-1]
        ys = pn.vertices if pn.first == b else pn.vertices[::-1]
        if ys[0] != xs[1] or ys[2] != xs[3] or ys[4] != xs[5]:
            continue
        if ys[5] not in after:
            continue
        far = after[0] if after[1] == ys[5] else after[1]
        if far == ys[2]:
            return True
    return False


def window_exceptional(
    pp: PathWalk, e: Edge, pn: PathWalk, after: Edge | None, before: Edge | None, k: int
) -> bool:
    """Exceptional check for one path-link-path window with its neighboring
    matching edges: forward reading uses `after`, the mirrored reading uses
    `before`."""
    if after is not None and matches_exceptional_template(pp, e, pn, after, k):
        return True
    if before is not None and matches_exceptional_template(pn.reversed(), e, pp.reversed(), before, k):
        return True
    return False


def detect_exceptional(ext: Extension, k: int) -> bool:
    """True iff the extension contains an exceptional subgraph."""
    npaths = len(ext.paths)
    for i in range(npaths - 1):
        after = ext.links[i + 1] if i + 1 < len(ext.links) else ext.right
        before = ext.links[i - 1] if i >= 1 else ext.left
        if window_exceptional(ext.paths[i], ext.links[i], ext.paths[i + 1], after, before, k):
            return True
    return False


def trail_exceptional_indices(w: AlternatingClosedTrail, k: int) -> list[int]:
    """Indices i where the forward window P_i e_i P_{i+1} e_{i+1} matches."""
    out = []
    for i in range(w.r):
        if matches_exceptional_template(w.path(i), w.link(i), w.path(i + 1), w.link(i + 1), k):
            out.append(i)
    return out


def check_cyclic_exceptional_span(w: AlternatingClosedTrail, j: int, l: int, k: int) -> bool:
    """Runtime self-check: a cyclic span s(j, l) containing an exceptional
    subgraph must have l >= 2. Returns the assertion outcome (True = pass)."""
    cyclic = l == w.r - 1
    if not cyclic or l >= 2:
        return True
    for i in range(j, j + l + 1):
        if window_exceptional(
            w.path(i), w.link(i), w.path(i + 1), w.link(i + 1), w.link(i - 1), k
        ):
            return False
    return True


@dataclass(frozen=True)
class ContextReport:
    """Follow-up audit around an exceptional window at index i."""

    index: int
    neighbor_links_distinct: bool
    next_left_form_clear: bool   # e_i P_{i+1} e_{i+1} P_{i+2} not exceptional
    next_right_form_clear: bool  # P_{i+1} e_{i+1} P_{i+2} e_{i+2} not exceptional

    @property
    def ok(self) -> bool:
        return self.neighbor_links_distinct and self.next_left_form_clear and self.next_right_form_clear


def exceptional_context_check(w: AlternatingClosedTrail, i: int, k: int = 3) -> ContextReport:
    """Given an exceptional window at i, verify its guaranteed surroundings;
    a failed report is a bug trap, never an expected outcome."""
    if not matches_exceptional_template(w.path(i), w.link(i), w.path(i + 1), w.link(i + 1), k):
        return ContextReport(i, True, True, True)
    distinct = w.link(i - 1) != w.link(i + 1)
    left_form = matches_exceptional_template(
        w.path(i + 2).reversed(), w.link(i + 1), w.path(i + 1).reversed(), w.link(i), k
    )
    right_form = matches_exceptional_template(
        w.path(i + 1), w.link(i + 1), w.path(i + 2), w.link(i + 2), k
    )
    return ContextReport(i, distinct, not left_form, not right_form)


def format_trail(w: AlternatingClosedTrail) -> str:
    """Annotated dump for diagnostics."""
    rep = maximal_trapped_sequences(w)
    lines = [f"alternating closed trail, r = {w.r}"]
    for i in range(w.r):
        p = w.path(i)
        lines.append(f"  P{i}: {'-'.join(map(str, p.vertices))}")
        lines.append(f"  e{i}: {w.link(i)}  [{rep.link_classes[i].value}]")
    if rep.cyclic:
        lines.append("  cyclic trapped sequence")
    elif rep.sequences:
        lines.append(
            "  maximal trapped sequences: " + ", ".join(f"s({j},{l})" for j, l in rep.sequences)
        )
    return "\n".join(lines)
