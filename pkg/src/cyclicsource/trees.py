"""Planar embedded Brauer trees: validation, construction, comparison.

A tree is stored with a cyclic ordering of the neighbours of every vertex
(the planar embedding), an optional exceptional vertex with multiplicity m,
and the defect group it belongs to.  The numerical constraints of cyclic
block theory are e * m = p^ell - 1 and e | p - 1 for e the number of edges.

Comparison comes in two strengths: `similar` ignores the embedding and asks
for a tree isomorphism matching exceptional vertices and multiplicities;
`planar_isomorphic` additionally preserves the cyclic orderings.  Embeddings
are oriented, so mirror images are similar but not planar-isomorphic.  Both
are decided through canonical codes of the tree rooted at the exceptional
vertex, or at the graph-theoretic center when there is none.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groups import GroupSpec


@dataclass(frozen=True)
class BrauerTree:
    vertices: tuple[str, ...]
    planar: dict[str, tuple[str, ...]]  # vertex -> neighbours in cyclic order
    defect: GroupSpec
    multiplicity: int = 1
    exceptional: str | None = None
    label: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(
            self, "planar", {v: tuple(ns) for v, ns in self.planar.items()}
        )

    @property
    def edges(self) -> frozenset[frozenset[str]]:
        out = set()
        for v, neighbours in self.planar.items():
            for w in neighbours:
                out.add(frozenset((v, w)))
        return frozenset(out)

    @property
    def num_edges(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class TypeFunction:
    signs: dict[str, int] = field(default_factory=dict)  # vertex -> +-1


def validate(t: BrauerTree) -> list[str]:
    """All structural and numerical invariants; each violation is named.
    An empty list means the tree is valid."""
    violations: list[str] = []
    vset = set(t.vertices)
    if len(vset) != len(t.vertices):
        violations.append("duplicate vertex identifiers")
    if not vset:
        violations.append("no vertices")
        return violations
    for v in t.planar:
        if v not in vset:
            violations.append(f"planar order for unknown vertex {v!r}")
    for v, neighbours in t.planar.items():
        if len(set(neighbours)) != len(neighbours):
            violations.append(f"repeated neighbour in cyclic order at {v!r}")
        for w in neighbours:
            if w not in vset:
                violations.append(f"edge to unknown vertex {w!r} at {v!r}")
            elif v not in t.planar.get(w, ()):
                violations.append(f"edge {v!r}-{w!r} not mirrored at {w!r}")
        if v in neighbours:
            violations.append(f"loop at {v!r}")
    if violations:
        return violations

    edges = t.edges
    e = len(edges)
    if e < 1:
        violations.append("no edges")
    if len(vset) != e + 1:
        violations.append("not a tree: |vertices| != |edges| + 1")
    # connectivity (with |V| = |E| + 1 this also rules out cycles)
    seen = set()
    stack = [t.vertices[0]]
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        stack.extend(w for w in t.planar.get(v, ()) if w not in seen)
    if seen != vset:
        violations.append("not a tree: graph is disconnected or has a cycle")

    group = t.defect
    if t.multiplicity < 1:
        violations.append("multiplicity must be positive")
    if t.exceptional is not None and t.exceptional not in vset:
        violations.append(f"exceptional vertex {t.exceptional!r} unknown")
    if t.exceptional is None and t.multiplicity != 1:
        violations.append("multiplicity > 1 requires an exceptional vertex")
    if e * t.multiplicity != group.order - 1:
        violations.append(
            f"e*m != p^ell - 1 ({e}*{t.multiplicity} != {group.order - 1})"
        )
    if e >= 1 and (group.p - 1) % e != 0:
        violations.append(f"e does not divide p - 1 ({e} does not divide {group.p - 1})")
    return violations


def type_functions(t: BrauerTree) -> tuple[TypeFunction, TypeFunction]:
    """The two proper sign 2-colorings of the tree (unique up to a global
    flip, since trees are bipartite and connected)."""
    signs: dict[str, int] = {t.vertices[0]: 1}
    stack = [t.vertices[0]]
    while stack:
        v = stack.pop()
        for w in t.planar.get(v, ()):
            if w not in signs:
                signs[w] = -signs[v]
                stack.append(w)
    flipped = {v: -s for v, s in signs.items()}
    return TypeFunction(signs), TypeFunction(flipped)


def star(e: int, m: int, group: GroupSpec,
         leaf_names: tuple[str, ...] | None = None) -> BrauerTree:
    """The star tree: e edges around one central vertex, exceptional at the
    center when m > 1.  The cyclic order at the center is the leaf order."""
    if e < 1:
        raise ValueError("a star needs at least one edge")
    if e * m != group.order - 1:
        raise ValueError(f"e*m != p^ell - 1 ({e}*{m} != {group.order - 1})")
    if (group.p - 1) % e != 0:
        raise ValueError(f"e does not divide p - 1 ({e} does not divide {group.p - 1})")
    if leaf_names is None:
        leaf_names = tuple(f"v{i + 1}" for i in range(e))
    if len(leaf_names) != e:
        raise ValueError(f"need {e} leaf names, got {len(leaf_names)}")
    center = "c"
    planar = {center: tuple(leaf_names)}
    for leaf in leaf_names:
        planar[leaf] = (center,)
    return BrauerTree(
        vertices=(center,) + tuple(leaf_names),
        planar=planar,
        defect=group,
        multiplicity=m,
        exceptional=center if m > 1 else None,
    )


# ---------------------------------------------------------------------------
# canonical codes


def _center(t: BrauerTree) -> list[str]:
    """The 1 or 2 middle vertices, found by stripping leaves layer by layer."""
    degree = {v: len(t.planar.get(v, ())) for v in t.vertices}
    remaining = set(t.vertices)
    leaves = [v for v in remaining if degree[v] <= 1]
    while len(remaining) > 2:
        next_leaves = []
        for v in leaves:
            remaining.discard(v)
            for w in t.planar.get(v, ()):
                if w in remaining:
                    degree[w] -= 1
                    if degree[w] == 1:
                        next_leaves.append(w)
        leaves = next_leaves
    return sorted(remaining)


def _unordered_code(t: BrauerTree, v: str, parent: str | None):
    children = [w for w in t.planar.get(v, ()) if w != parent]
    return tuple(sorted(_unordered_code(t, w, v) for w in children))


def _min_rotation(seq: tuple) -> tuple:
    if not seq:
        return seq
    return min(seq[i:] + seq[:i] for i in range(len(seq)))


def _planar_code(t: BrauerTree, v: str, parent: str | None):
    order = t.planar.get(v, ())
    if parent is None:
        children = order
    else:
        idx = order.index(parent)
        children = order[idx + 1 :] + order[:idx]
    codes = tuple(_planar_code(t, w, v) for w in children)
    if parent is None:
        # the embedding fixes only the cyclic order at the root
        codes = _min_rotation(codes)
    return codes


def _roots(t: BrauerTree) -> list[str]:
    if t.exceptional is not None:
        return [t.exceptional]
    return _center(t)


def canonical_code(t: BrauerTree):
    """Embedding-free canonical form, rooted at the exceptional vertex or at
    the center; ties between two center vertices resolve to the smaller code."""
    code = min(_unordered_code(t, r, None) for r in _roots(t))
    return (t.multiplicity, t.exceptional is not None, code)


def canonical_planar_code(t: BrauerTree):
    """Canonical form preserving the oriented embedding (rotations at the
    root allowed, reflections not)."""
    code = min(_planar_code(t, r, None) for r in _roots(t))
    return (t.multiplicity, t.exceptional is not None, code)


def similar(t1: BrauerTree, t2: BrauerTree) -> bool:
    """Tree isomorphism matching exceptional vertices and multiplicities,
    ignoring the planar embedding."""
    return canonical_code(t1) == canonical_code(t2)


def planar_isomorphic(t1: BrauerTree, t2: BrauerTree) -> bool:
    """Isomorphism of oriented planar embedded trees; implies `similar`."""
    return canonical_planar_code(t1) == canonical_planar_code(t2)


def strongly_similar(b1: tuple[BrauerTree, "WResult"],
                     b2: tuple[BrauerTree, "WResult"]) -> bool:
    """Same defect group, similar trees, and isomorphic source modules."""
    t1, w1 = b1
    t2, w2 = b2
    return (
        t1.defect == t2.defect
        and similar(t1, t2)
        and w1.jordan == w2.jordan
    )
