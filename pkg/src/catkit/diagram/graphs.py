"""Port-graph normal form for diagram terms.

``to_graph`` flattens a typechecked term into an open graph whose wires
record only connectivity: identities and symmetries vanish, duality
bends become plain wire turns, daggers flip subgraphs in place, and
closed circles of bare wire are tracked as labelled loops.  ``graph_eq``
then decides equality of terms modulo the dagger compact symmetric
monoidal axioms by boundary-preserving labelled-graph isomorphism.

Terminals are tuples: ('n', node_id, port) attaches to a node port,
('i', k) / ('o', k) to the k-th boundary input / output.  Box ports are
numbered with domain ports first, codomain ports after; spider legs are
interchangeable and their port numbers carry no meaning.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass

from .terms import (
    UNIT,
    Cap,
    Cup,
    Dagger,
    Gen,
    Id,
    ObjectWord,
    Par,
    Seq,
    Spider,
    Swap,
    typecheck,
)


@dataclass(frozen=True)
class BoxNode:
    """Generator occurrence with ordered ports: dom ports then cod ports."""

    name: str
    daggered: bool
    dom: object
    cod: object

    @property
    def n_ports(self):
        return len(self.dom) + len(self.cod)

    def flipped(self):
        return BoxNode(self.name, not self.daggered, self.cod, self.dom)


@dataclass(frozen=True)
class SpiderNode:
    """Undirected frobenius node; all legs are interchangeable."""

    atom: str
    degree: int
    genus: int = 0

    @property
    def n_ports(self):
        return self.degree

    def flipped(self):
        return self


@dataclass(frozen=True)
class OpenGraph:
    """Immutable open graph with ordered, typed boundaries.

    loops is a sorted tuple of atom labels, one entry per closed circle
    of bare wire.
    """

    nodes: tuple
    wires: tuple
    input_types: tuple
    output_types: tuple
    loops: tuple = ()


class _Piece:
    """Mutable graph fragment used while flattening a term."""

    __slots__ = ("nodes", "wires", "dom", "cod", "loops")

    def __init__(self, nodes, wires, dom, cod, loops=()):
        self.nodes = list(nodes)
        self.wires = list(wires)
        self.dom = dom
        self.cod = cod
        self.loops = list(loops)


def _shift_terminal(t, d_node, d_in, d_out):
    kind = t[0]
    if kind == "n":
        return ("n", t[1] + d_node, t[2])
    if kind == "i":
        return ("i", t[1] + d_in)
    return ("o", t[1] + d_out)


def _par(left, right):
    d_node, d_in, d_out = len(left.nodes), len(left.dom), len(left.cod)
    wires = list(left.wires)
    for a, b in right.wires:
        wires.append(
            (
                _shift_terminal(a, d_node, d_in, d_out),
                _shift_terminal(b, d_node, d_in, d_out),
            )
        )
    return _Piece(
        left.nodes + right.nodes,
        wires,
        left.dom.tensor(right.dom),
        left.cod.tensor(right.cod),
        left.loops + right.loops,
    )


def _resolve_joints(wires, joint_atoms):
    """Contract degree-2 splice points; all-joint cycles become loops.

    Each joint terminal ('j', k) has exactly two incident wire ends.
    Chains between ordinary terminals collapse to single wires; cycles
    made entirely of joints are removed and recorded as loops labelled
    by the atom at splice position k.
    """
    def is_joint(t):
        return t[0] == "j"

    incidence = defaultdict(list)
    for wid, (a, b) in enumerate(wires):
        if is_joint(a):
            incidence[a].append((wid, 0))
        if is_joint(b):
            incidence[b].append((wid, 1))
    for ends in incidence.values():
        assert len(ends) == 2

    kept = []
    loops = []
    visited = set()

    def other_end(joint, entry):
        first, second = incidence[joint]
        return second if first == entry else first

    # Chains: walk from each wire with at least one ordinary endpoint.
    for wid, (a, b) in enumerate(wires):
        if wid in visited:
            continue
        if not is_joint(a) and not is_joint(b):
            visited.add(wid)
            kept.append((a, b))
            continue
        if is_joint(a) and is_joint(b):
            continue
        if is_joint(a):
            start, joint, entry = b, a, (wid, 0)
        else:
            start, joint, entry = a, b, (wid, 1)
        visited.add(wid)
        while True:
            nwid, nend = other_end(joint, entry)
            visited.add(nwid)
            far = wires[nwid][1 - nend]
            if is_joint(far):
                joint = far
                entry = (nwid, 1 - nend)
                continue
            kept.append((start, far))
            break

    # Remaining wires connect joints only and close up into cycles.
    for wid, (a, b) in enumerate(wires):
        if wid in visited:
            continue
        visited.add(wid)
        loops.append(joint_atoms[a[1]])
        target = (wid, 0)
        joint, entry = b, (wid, 1)
        while True:
            nwid, nend = other_end(joint, entry)
            if (nwid, nend) == target:
                break
            visited.add(nwid)
            joint = wires[nwid][1 - nend]
            entry = (nwid, 1 - nend)

    return kept, loops


def _seq(after, before):
    """Glue before's outputs to after's inputs through fresh joints."""
    assert before.cod == after.dom
    d_node = len(before.nodes)
    wires = []
    for a, b in before.wires:
        wires.append(
            (
                a if a[0] != "o" else ("j", a[1]),
                b if b[0] != "o" else ("j", b[1]),
            )
        )
    def remap(t):
        if t[0] == "i":
            return ("j", t[1])
        if t[0] == "n":
            return ("n", t[1] + d_node, t[2])
        return t

    for a, b in after.wires:
        wires.append((remap(a), remap(b)))
    joint_atoms = [atom for atom, _ in before.cod.factors]
    kept, new_loops = _resolve_joints(wires, joint_atoms)
    return _Piece(
        before.nodes + after.nodes,
        kept,
        before.dom,
        after.cod,
        before.loops + after.loops + new_loops,
    )


def _flip(piece):
    """Exchange boundaries, dagger-mark boxes, and remap box ports."""
    nodes = [node.flipped() for node in piece.nodes]

    def remap(t):
        if t[0] == "i":
            return ("o", t[1])
        if t[0] == "o":
            return ("i", t[1])
        nid, port = t[1], t[2]
        node = piece.nodes[nid]
        if isinstance(node, BoxNode):
            n_dom = len(node.dom)
            n_cod = len(node.cod)
            port = n_cod + port if port < n_dom else port - n_dom
        return ("n", nid, port)

    wires = [(remap(a), remap(b)) for a, b in piece.wires]
    return _Piece(nodes, wires, piece.cod, piece.dom, piece.loops)


def _build(term, sig):
    if isinstance(term, Gen):
        decl = sig.generators[term.name]
        node = BoxNode(term.name, False, decl.dom, decl.cod)
        wires = [(("i", k), ("n", 0, k)) for k in range(len(decl.dom))]
        wires += [
            (("n", 0, len(decl.dom) + j), ("o", j))
            for j in range(len(decl.cod))
        ]
        return _Piece([node], wires, decl.dom, decl.cod)
    if isinstance(term, Id):
        word = sig.normalize(term.word)
        wires = [(("i", k), ("o", k)) for k in range(len(word))]
        return _Piece([], wires, word, word)
    if isinstance(term, Seq):
        return _seq(_build(term.after, sig), _build(term.before, sig))
    if isinstance(term, Par):
        return _par(_build(term.left, sig), _build(term.right, sig))
    if isinstance(term, Swap):
        left = sig.normalize(term.left)
        right = sig.normalize(term.right)
        n1, n2 = len(left), len(right)
        wires = [(("i", k), ("o", n2 + k)) for k in range(n1)]
        wires += [(("i", n1 + j), ("o", j)) for j in range(n2)]
        return _Piece([], wires, left.tensor(right), right.tensor(left))
    if isinstance(term, Cup):
        cod = sig.normalize(
            ObjectWord(((term.atom, True), (term.atom, False)))
        )
        return _Piece([], [(("o", 0), ("o", 1))], UNIT, cod)
    if isinstance(term, Cap):
        dom = sig.normalize(
            ObjectWord(((term.atom, False), (term.atom, True)))
        )
        return _Piece([], [(("i", 0), ("i", 1))], dom, UNIT)
    if isinstance(term, Dagger):
        return _flip(_build(term.inner, sig))
    if isinstance(term, Spider):
        k, l = term.legs_in, term.legs_out
        node = SpiderNode(term.atom, k + l)
        wires = [(("i", i), ("n", 0, i)) for i in range(k)]
        wires += [(("n", 0, k + j), ("o", j)) for j in range(l)]
        dom = ObjectWord(((term.atom, False),) * k)
        cod = ObjectWord(((term.atom, False),) * l)
        return _Piece([node], wires, dom, cod)
    raise TypeError(f"not a diagram term: {term!r}")


def to_graph(term, sig):
    """Flatten a term into its open-graph normal form."""
    typecheck(term, sig)
    piece = _build(term, sig)
    return OpenGraph(
        nodes=tuple(piece.nodes),
        wires=tuple((a, b) for a, b in piece.wires),
        input_types=piece.dom.factors,
        output_types=piece.cod.factors,
        loops=tuple(sorted(piece.loops)),
    )


def _edge_key(u, v):
    return (u, v) if repr(u) <= repr(v) else (v, u)


def _skeleton(graph):
    """Vertex-coloured multigraph encoding used by the matcher.

    Boxes expand into a hub vertex plus one vertex per port (coloured by
    port index) so an isomorphism must respect box port order; spiders
    stay single vertices so their legs may permute freely; boundary
    vertices get singleton colours, pinning them pointwise.
    """
    verts = {}
    edges = Counter()
    for k, factor in enumerate(graph.input_types):
        verts[("i", k)] = ("in", k, factor)
    for k, factor in enumerate(graph.output_types):
        verts[("o", k)] = ("out", k, factor)
    for nid, node in enumerate(graph.nodes):
        if isinstance(node, SpiderNode):
            verts[("s", nid)] = ("spider", node.atom, node.degree, node.genus)
        else:
            verts[("b", nid)] = (
                "box",
                node.name,
                node.daggered,
                node.dom.factors,
                node.cod.factors,
            )
            for p in range(node.n_ports):
                verts[("p", nid, p)] = ("port", p)
                edges[_edge_key(("b", nid), ("p", nid, p))] += 1

    def vert_of(t):
        if t[0] in ("i", "o"):
            return t
        nid = t[1]
        if isinstance(graph.nodes[nid], SpiderNode):
            return ("s", nid)
        return ("p", nid, t[2])

    for a, b in graph.wires:
        edges[_edge_key(vert_of(a), vert_of(b))] += 1
    return verts, edges


def _adjacency(verts, edges):
    adj = {v: Counter() for v in verts}
    for (u, v), mult in edges.items():
        adj[u][v] += mult
        if u != v:
            adj[v][u] += mult
    return adj


def _refine(col1, adj1, col2, adj2):
    """Joint colour refinement; colours stay comparable across graphs."""
    def compress(*sig_maps):
        palette = {}
        for sigs in sig_maps:
            for s in sigs.values():
                palette.setdefault(repr(s), s)
        order = {key: i for i, key in enumerate(sorted(palette))}
        return [
            {v: order[repr(s)] for v, s in sigs.items()} for sigs in sig_maps
        ]

    col1, col2 = compress(col1, col2)
    while True:
        sig1 = {
            v: (c, tuple(sorted((col1[u], m) for u, m in adj1[v].items())))
            for v, c in col1.items()
        }
        sig2 = {
            v: (c, tuple(sorted((col2[u], m) for u, m in adj2[v].items())))
            for v, c in col2.items()
        }
        new1, new2 = compress(sig1, sig2)
        if len(set(new1.values())) == len(set(col1.values())) and len(
            set(new2.values())
        ) == len(set(col2.values())):
            return new1, new2
        col1, col2 = new1, new2


def graph_eq(g1, g2):
    """Boundary-, label-, and box-port-order-preserving isomorphism."""
    if g1.input_types != g2.input_types:
        return False
    if g1.output_types != g2.output_types:
        return False
    if g1.loops != g2.loops:
        return False
    verts1, edges1 = _skeleton(g1)
    verts2, edges2 = _skeleton(g2)
    if len(verts1) != len(verts2) or sum(edges1.values()) != sum(
        edges2.values()
    ):
        return False
    adj1 = _adjacency(verts1, edges1)
    adj2 = _adjacency(verts2, edges2)
    col1, col2 = _refine(verts1, adj1, verts2, adj2)
    if sorted(Counter(col1.values()).items()) != sorted(
        Counter(col2.values()).items()
    ):
        return False

    by_colour = defaultdict(list)
    for v, c in col2.items():
        by_colour[c].append(v)
    # Small candidate sets first keeps the search near-deterministic.
    order = sorted(col1, key=lambda v: (len(by_colour[col1[v]]), repr(v)))
    mapping = {}
    used = set()

    def extend(i):
        if i == len(order):
            return True
        v = order[i]
        for w in by_colour[col1[v]]:
            if w in used:
                continue
            if adj1[v].get(v, 0) != adj2[w].get(w, 0):
                continue
            ok = True
            for u, mult in adj1[v].items():
                if u in mapping and adj2[w].get(mapping[u], 0) != mult:
                    ok = False
                    break
            if not ok:
                continue
            mapping[v] = w
            used.add(w)
            if extend(i + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    if not extend(0):
        return False
    # Full verification: the mapped edge multiset must match exactly.
    remapped = Counter()
    for (u, v), mult in edges1.items():
        remapped[_edge_key(mapping[u], mapping[v])] += mult
    return remapped == edges2
