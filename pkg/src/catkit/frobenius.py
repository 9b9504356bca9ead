"""Spider fusion and the two-dimensional cobordism skeleton.

Graphs over atoms carrying commutative dagger frobenius structure
rewrite to a normal form: adjacent same-atom spiders merge, a wire with
both endpoints on one spider is a handle (counted as genus, or
discarded when the structure is special), and leftover degree-2
handle-free spiders are plain wires.  Reading boundary attachments and
genus off the normal form classifies terms over a single frobenius
atom up to surface homeomorphism.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .diagram.graphs import BoxNode, OpenGraph, SpiderNode, to_graph
from .diagram.terms import (
    Cap,
    Cup,
    Dagger,
    Gen,
    Id,
    Par,
    Seq,
    Signature,
    Spider,
    Swap,
    TypeMismatch,
    typecheck,
)


def cob_signature(atom="A"):
    """Signature with a single self-dual frobenius atom."""
    sig = Signature()
    sig.declare_object(atom, frobenius=True, self_dual=True)
    return sig


def delta(atom="A"):
    """Comultiplication spider, 1 leg in and 2 out."""
    return Spider(atom, 1, 2)


def eps(atom="A"):
    """Counit spider, 1 leg in and none out."""
    return Spider(atom, 1, 0)


def mu(atom="A"):
    """Multiplication spider, 2 legs in and 1 out."""
    return Spider(atom, 2, 1)


def unit(atom="A"):
    """Unit spider, no legs in and 1 out."""
    return Spider(atom, 0, 1)


def spiderize(graph, sig):
    """Check a graph is ready for spider fusion and hand it back.

    Diagram flattening already renders frobenius nodes as spiders and
    duality bends as bare connectivity, so the content is unchanged;
    this validates that every spider sits on an atom flagged frobenius.
    Boxes are opaque bystanders and allowed.
    """
    for node in graph.nodes:
        if isinstance(node, SpiderNode):
            decl = sig.objects.get(node.atom)
            if decl is None or not decl.frobenius:
                raise ValueError(
                    f"spider node on non-frobenius atom {node.atom!r}"
                )
    return graph


class _FuseState:
    """Mutable working copy of a graph during fusion."""

    def __init__(self, graph):
        self.boxes = {}
        self.spiders = {}  # nid -> [atom, degree, genus]
        for nid, node in enumerate(graph.nodes):
            if isinstance(node, SpiderNode):
                self.spiders[nid] = [node.atom, node.degree, node.genus]
            else:
                self.boxes[nid] = node
        self.wires = dict(enumerate(graph.wires))
        self.next_wid = len(graph.wires)
        self.fresh_port = itertools.count(10 ** 6)
        self.input_types = graph.input_types
        self.output_types = graph.output_types
        self.loops = list(graph.loops)

    def _on_spider(self, t):
        return t[0] == "n" and t[1] in self.spiders

    def _self_loop_wids(self, nid):
        return [
            wid
            for wid, (a, b) in self.wires.items()
            if a[0] == "n" and b[0] == "n" and a[1] == b[1] == nid
        ]

    def sites(self):
        """All applicable rewrite sites, in deterministic order."""
        out = []
        for wid in sorted(self.wires):
            a, b = self.wires[wid]
            if self._on_spider(a) and self._on_spider(b):
                if a[1] == b[1]:
                    out.append(("loop", wid))
                elif self.spiders[a[1]][0] == self.spiders[b[1]][0]:
                    out.append(("merge", wid))
        for nid in sorted(self.spiders):
            atom, degree, genus = self.spiders[nid]
            if degree == 2 and genus == 0 and not self._self_loop_wids(nid):
                out.append(("drop", nid))
        return out

    def apply(self, site, special):
        kind, key = site
        if kind == "loop":
            a, _ = self.wires.pop(key)
            rec = self.spiders[a[1]]
            rec[1] -= 2
            if not special:
                rec[2] += 1
        elif kind == "merge":
            a, b = self.wires.pop(key)
            keep, gone = a[1], b[1]
            for wid, (u, v) in list(self.wires.items()):
                changed = False
                if u[0] == "n" and u[1] == gone:
                    u = ("n", keep, next(self.fresh_port))
                    changed = True
                if v[0] == "n" and v[1] == gone:
                    v = ("n", keep, next(self.fresh_port))
                    changed = True
                if changed:
                    self.wires[wid] = (u, v)
            krec, grec = self.spiders[keep], self.spiders[gone]
            krec[1] = krec[1] + grec[1] - 2
            krec[2] += grec[2]
            del self.spiders[gone]
        else:  # drop a degree-2 handle-free spider
            nid = key
            incident = [
                (wid, idx)
                for wid, ends in self.wires.items()
                for idx, t in enumerate(ends)
                if t[0] == "n" and t[1] == nid
            ]
            assert len(incident) == 2
            (w1, i1), (w2, i2) = incident
            far1 = self.wires[w1][1 - i1]
            far2 = self.wires[w2][1 - i2]
            del self.wires[w1]
            del self.wires[w2]
            self.wires[self.next_wid] = (far1, far2)
            self.next_wid += 1
            del self.spiders[nid]

    def freeze(self):
        order = sorted(list(self.boxes) + list(self.spiders))
        renum = {old: new for new, old in enumerate(order)}
        nodes = []
        for old in order:
            if old in self.boxes:
                nodes.append(self.boxes[old])
            else:
                atom, degree, genus = self.spiders[old]
                nodes.append(SpiderNode(atom, degree, genus))
        counters = {new: itertools.count() for new in range(len(nodes))}

        def remap(t):
            if t[0] != "n":
                return t
            new = renum[t[1]]
            return ("n", new, next(counters[new]))

        wires = []
        for wid in sorted(self.wires):
            a, b = self.wires[wid]
            wires.append((remap(a), remap(b)))
        graph = OpenGraph(
            tuple(nodes),
            tuple(wires),
            self.input_types,
            self.output_types,
            tuple(sorted(self.loops)),
        )
        # degree bookkeeping must agree with actual wire attachments
        ends = {}
        for a, b in graph.wires:
            for t in (a, b):
                if t[0] == "n":
                    ends[t[1]] = ends.get(t[1], 0) + 1
        for nid, node in enumerate(graph.nodes):
            if isinstance(node, SpiderNode):
                assert ends.get(nid, 0) == node.degree
        return graph


def fuse(graph, special=False, rng=None):
    """Rewrite a spider graph to its fused normal form.

    With special=True a handle is the identity and self-loop wires are
    discarded; otherwise each adds one to its spider's genus.  rng,
    when given, picks among applicable rewrite sites at random; any
    order reaches the same normal form up to graph equality.
    """
    state = _FuseState(graph)
    while True:
        sites = state.sites()
        if not sites:
            break
        state.apply(sites[0] if rng is None else rng.choice(sites), special)
    return state.freeze()


def fuse_trace(graph, special=False, rng=None):
    """Every intermediate graph from the input to the normal form."""
    state = _FuseState(graph)
    frames = [state.freeze()]
    while True:
        sites = state.sites()
        if not sites:
            break
        state.apply(sites[0] if rng is None else rng.choice(sites), special)
        frames.append(state.freeze())
    return frames


@dataclass(frozen=True)
class ComponentClass:
    """One connected piece: boundary attachments plus genus."""

    inputs: tuple
    outputs: tuple
    genus: int

    def render(self):
        ins = ", ".join(str(i) for i in self.inputs)
        outs = ", ".join(str(i) for i in self.outputs)
        return f"component(in=[{ins}], out=[{outs}], genus={self.genus})"


@dataclass(frozen=True)
class CobordismClass:
    """Multiset of component classes covering every boundary position."""

    atom: str
    components: tuple

    def render_lines(self):
        return [c.render() for c in self.components]


def _comp_key(comp):
    return (comp.inputs, comp.outputs, comp.genus)


def term_atoms(term):
    """Atom names appearing in a generator-free term."""
    if isinstance(term, (Cup, Cap, Spider)):
        return {term.atom}
    if isinstance(term, Id):
        return {atom for atom, _ in term.word.factors}
    if isinstance(term, Swap):
        return {atom for atom, _ in term.left.factors} | {
            atom for atom, _ in term.right.factors
        }
    if isinstance(term, Seq):
        return term_atoms(term.after) | term_atoms(term.before)
    if isinstance(term, Par):
        return term_atoms(term.left) | term_atoms(term.right)
    if isinstance(term, Dagger):
        return term_atoms(term.inner)
    if isinstance(term, Gen):
        raise ValueError(
            f"unsupported foreign generator {term.name!r} in a cobordism term"
        )
    raise TypeError(f"not a diagram term: {term!r}")


def reverse_term(term):
    """Turn a generator-free term end for end: spider legs swap roles.

    This is reversal of the underlying surface, not a matrix adjoint,
    so it stays meaningful for presentations without dagger structure.
    Bends assume a self-dual atom (cup and cap trade places).  The
    input must already be dagger-free; see strip_daggers.
    """
    if isinstance(term, Spider):
        return Spider(term.atom, term.legs_out, term.legs_in)
    if isinstance(term, Id):
        return term
    if isinstance(term, Swap):
        return Swap(term.right, term.left)
    if isinstance(term, Cup):
        return Cap(term.atom)
    if isinstance(term, Cap):
        return Cup(term.atom)
    if isinstance(term, Seq):
        return Seq(reverse_term(term.before), reverse_term(term.after))
    if isinstance(term, Par):
        return Par(reverse_term(term.left), reverse_term(term.right))
    if isinstance(term, Gen):
        raise ValueError(
            f"unsupported foreign generator {term.name!r} in a cobordism term"
        )
    raise TypeError(f"not a dagger-free term: {term!r}")


def strip_daggers(term):
    """Rewrite every dagger into a structural reversal of its body."""
    if isinstance(term, Dagger):
        return reverse_term(strip_daggers(term.inner))
    if isinstance(term, Seq):
        return Seq(strip_daggers(term.after), strip_daggers(term.before))
    if isinstance(term, Par):
        return Par(strip_daggers(term.left), strip_daggers(term.right))
    return term


def _single_atom(terms_atoms, sig):
    atoms = set(terms_atoms)
    if len(atoms) > 1:
        raise ValueError(f"expected a single atom, found {sorted(atoms)}")
    if atoms:
        return atoms.pop()
    for name, decl in sig.objects.items():
        if decl.frobenius:
            return name
    return "A"


def _components(graph):
    """Connected components grouped as ComponentClass values."""
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    def key_of(t):
        if t[0] == "n":
            return ("node", t[1])
        return t

    items = [("i", k) for k in range(len(graph.input_types))]
    items += [("o", k) for k in range(len(graph.output_types))]
    items += [("node", nid) for nid in range(len(graph.nodes))]
    for item in items:
        parent[item] = item
    for a, b in graph.wires:
        union(key_of(a), key_of(b))

    groups = {}
    for item in items:
        groups.setdefault(find(item), []).append(item)
    comps = []
    for members in groups.values():
        ins = tuple(sorted(k for tag, k in members if tag == "i"))
        outs = tuple(sorted(k for tag, k in members if tag == "o"))
        genus = sum(
            graph.nodes[k].genus
            for tag, k in members
            if tag == "node" and isinstance(graph.nodes[k], SpiderNode)
        )
        comps.append(ComponentClass(ins, outs, genus))
    comps.extend(ComponentClass((), (), 0) for _ in graph.loops)
    return comps


def classify_cob(term, sig=None):
    """Classify a term over one frobenius atom up to homeomorphism.

    The term may use spiders, identities, swaps, cups, caps, and
    daggers; generator boxes are unsupported.  Closed pieces appear as
    components with empty boundary lists.
    """
    atom = _single_atom(term_atoms(term), sig or Signature())
    if sig is None:
        sig = cob_signature(atom)
    graph = to_graph(term, sig)
    for node in graph.nodes:
        if isinstance(node, BoxNode):
            raise ValueError(
                f"unsupported foreign generator {node.name!r} "
                "in a cobordism term"
            )
    fused = fuse(spiderize(graph, sig), special=False)
    comps = sorted(_components(fused), key=_comp_key)
    return CobordismClass(atom, tuple(comps))


def eq_cob(t1, t2, sig=None):
    """Homeomorphism equality for two terms with matching boundaries."""
    if sig is None:
        atom = _single_atom(term_atoms(t1) | term_atoms(t2), Signature())
        sig = cob_signature(atom)
    type1 = typecheck(t1, sig)
    type2 = typecheck(t2, sig)
    if type1 != type2:
        raise TypeMismatch(
            f"boundary mismatch: {type1[0]} -> {type1[1]} "
            f"vs {type2[0]} -> {type2[1]}"
        )
    return classify_cob(t1, sig) == classify_cob(t2, sig)
