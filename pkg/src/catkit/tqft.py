"""Matrix interpretations of diagram terms.

An Interpretation assigns a dimension to every object atom, a matrix to
every generator, and a Frobenius presentation to every atom that carries
spiders; interpret() then pushes a term through by structural recursion.
evaluate_cob() is the special case of a single atom governed entirely by
one verified Frobenius presentation, and evaluate_graph() contracts a
port graph directly so rewrites can be checked against the same
semantics they are supposed to preserve.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace

import numpy as np

from .diagram import (
    Cap,
    Cup,
    Dagger,
    Gen,
    Id,
    ObjectWord,
    OpenGraph,
    Par,
    Seq,
    Signature,
    Spider,
    SpiderNode,
    Swap,
    UnknownName,
    typecheck,
)
from .frobenius import cob_signature, strip_daggers, term_atoms
from .lawcheck import LawEntry, LawReport
from .matcat import (
    MatrixMorphism,
    ShapeMismatch,
    compose,
    counit_eps,
    dagger,
    max_deviation,
    swap_matrix,
    tensor,
    unit_eta,
)
from . import scalars
from .scalars import BOOL, COMPLEX, NAT, SemiringTag, join_tags


@dataclass(frozen=True)
class FrobeniusPresentation:
    """Comonoid (delta, eps) and monoid (mu, unit_e) matrices on one object.

    The flags record which optional laws the presentation claims; they are
    promises checked by verify_frobenius, not facts enforced here.  Only the
    shapes are validated on construction.
    """

    dim: int
    delta: MatrixMorphism
    eps: MatrixMorphism
    mu: MatrixMorphism
    unit_e: MatrixMorphism
    commutative: bool = False
    special: bool = False
    dagger: bool = False

    def __post_init__(self) -> None:
        d = self.dim
        if d < 0:
            raise ValueError("dimension must be nonnegative")
        for m, r, c, name in [
            (self.delta, d * d, d, "delta"),
            (self.eps, 1, d, "eps"),
            (self.mu, d, d * d, "mu"),
            (self.unit_e, d, 1, "unit_e"),
        ]:
            if m.rows != r or m.cols != c:
                raise ShapeMismatch(
                    f"{name} must be {r}x{c} for dimension {d}, got {m.rows}x{m.cols}"
                )
        join_tags(join_tags(self.delta.tag, self.eps.tag), join_tags(self.mu.tag, self.unit_e.tag))

    @property
    def tag(self) -> SemiringTag:
        return self.delta.tag


def basis_frobenius(d: int, tag: SemiringTag = COMPLEX) -> FrobeniusPresentation:
    """The copy/delete presentation attached to the standard basis.

    delta copies basis vectors, eps deletes them, and the monoid half is the
    adjoint pair; every optional flag holds.
    """
    delta = MatrixMorphism.zeros(tag, d * d, d)
    one = scalars.one(tag).value
    for i in range(d):
        delta.data[i * d + i, i] = one
    eps = MatrixMorphism(tag, [[1] * d], shape=(1, d))
    return FrobeniusPresentation(
        dim=d,
        delta=delta,
        eps=eps,
        mu=dagger(delta),
        unit_e=dagger(eps),
        commutative=True,
        special=True,
        dagger=True,
    )


def xor_frobenius(tag: SemiringTag = COMPLEX) -> FrobeniusPresentation:
    """Frobenius structure of the two-element group algebra.

    Multiplication is exclusive-or on basis indices.  Commutative and
    dagger, but mu . delta = 2 id, so it is special only over booleans;
    this makes it the standard witness that genus is semantically visible.
    """
    delta = MatrixMorphism(tag, [[1, 0], [0, 1], [0, 1], [1, 0]])
    eps = MatrixMorphism(tag, [[1, 0]])
    mu = MatrixMorphism(tag, [[1, 0, 0, 1], [0, 1, 1, 0]])
    unit_e = MatrixMorphism(tag, [[1], [0]])
    return FrobeniusPresentation(
        dim=2,
        delta=delta,
        eps=eps,
        mu=mu,
        unit_e=unit_e,
        commutative=True,
        special=(tag.kind == "bool"),
        dagger=True,
    )


def hopf_group_z2(tag: SemiringTag = COMPLEX):
    """Bimonoid of the two-element group: basis copy with xor multiplication.

    Returns (presentation, antipode).  The pairing is deliberately mixed --
    comonoid from the basis, monoid from the group -- so it is a bialgebra
    and a Hopf algebra (the antipode is the identity since every element is
    its own inverse), but not a Frobenius pairing.
    """
    delta = MatrixMorphism(tag, [[1, 0], [0, 0], [0, 0], [0, 1]])
    eps = MatrixMorphism(tag, [[1, 1]])
    mu = MatrixMorphism(tag, [[1, 0, 0, 1], [0, 1, 1, 0]])
    unit_e = MatrixMorphism(tag, [[1], [0]])
    p = FrobeniusPresentation(2, delta, eps, mu, unit_e)
    return p, MatrixMorphism.identity(tag, 2)


def verify_frobenius(p: FrobeniusPresentation) -> LawReport:
    """Check the (co)monoid, Frobenius, and flagged laws as matrix equations.

    Failures are report entries, never exceptions, so unverifiable data over
    restrictive semirings is reported rather than rejected.
    """
    tag = p.tag
    tol = tag.tolerance
    d = p.dim
    ident = MatrixMorphism.identity(tag, d)
    frob_mid = compose(p.delta, p.mu)

    checks = [
        ("coassociativity", compose(tensor(p.delta, ident), p.delta), compose(tensor(ident, p.delta), p.delta)),
        ("counit-left", compose(tensor(p.eps, ident), p.delta), ident),
        ("counit-right", compose(tensor(ident, p.eps), p.delta), ident),
        ("associativity", compose(p.mu, tensor(p.mu, ident)), compose(p.mu, tensor(ident, p.mu))),
        ("unit-left", compose(p.mu, tensor(p.unit_e, ident)), ident),
        ("unit-right", compose(p.mu, tensor(ident, p.unit_e)), ident),
        ("frobenius-left", compose(tensor(ident, p.mu), tensor(p.delta, ident)), frob_mid),
        ("frobenius-right", compose(tensor(p.mu, ident), tensor(ident, p.delta)), frob_mid),
    ]
    entries = []
    for name, lhs, rhs in checks:
        dev = max_deviation(lhs, rhs)
        entries.append(LawEntry(name, "frobenius", dev <= tol, dev))
    if p.commutative:
        sigma = swap_matrix(tag, d, d)
        dev = max(
            max_deviation(compose(sigma, p.delta), p.delta),
            max_deviation(compose(p.mu, sigma), p.mu),
        )
        entries.append(LawEntry("commutativity", "frobenius", dev <= tol, dev))
    if p.special:
        dev = max_deviation(compose(p.mu, p.delta), ident)
        entries.append(LawEntry("speciality", "frobenius", dev <= tol, dev))
    if p.dagger:
        dev = max(
            max_deviation(dagger(p.delta), p.mu),
            max_deviation(dagger(p.eps), p.unit_e),
        )
        entries.append(LawEntry("dagger-structure", "frobenius", dev <= tol, dev))
    return LawReport(entries=entries)


def spider_matrix(p: FrobeniusPresentation, k: int, l: int, genus: int = 0) -> MatrixMorphism:
    """Matrix of the (k, l, genus) spider: merge k legs, thread genus handles,
    then branch into l legs.

    Trees are left combs; by associativity any tree shape gives the same
    matrix once the presentation verifies.
    """
    if min(k, l, genus) < 0:
        raise ValueError("leg counts and genus must be nonnegative")
    tag = p.tag
    ident = MatrixMorphism.identity(tag, p.dim)
    merge = p.unit_e if k == 0 else ident
    for _ in range(k - 1):
        merge = compose(p.mu, tensor(merge, ident))
    branch = p.eps if l == 0 else ident
    for _ in range(l - 1):
        branch = compose(tensor(branch, ident), p.delta)
    handle = compose(p.mu, p.delta)
    out = merge
    for _ in range(genus):
        out = compose(handle, out)
    return compose(branch, out)


@dataclass
class Interpretation:
    """Assignment of matrix data to a diagram signature."""

    tag: SemiringTag
    object_dims: dict
    gen_matrices: dict = field(default_factory=dict)
    frobenius_data: dict = field(default_factory=dict)
    signature: Signature | None = None
    element_names: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        for atom, p in self.frobenius_data.items():
            if p.tag.kind != self.tag.kind:
                raise ValueError(f"frobenius data for {atom!r} uses {p.tag.kind}, not {self.tag.kind}")
            declared = self.object_dims.setdefault(atom, p.dim)
            if declared != p.dim:
                raise ValueError(
                    f"atom {atom!r} declared with dimension {declared} "
                    f"but its frobenius data has dimension {p.dim}"
                )
        for name, m in self.gen_matrices.items():
            if m.tag.kind != self.tag.kind:
                raise ValueError(f"generator {name!r} uses {m.tag.kind}, not {self.tag.kind}")
            if self.signature is None or name not in self.signature.generators:
                continue
            decl = self.signature.generators[name]
            rows, cols = self.word_dim(decl.cod), self.word_dim(decl.dom)
            if m.rows != rows or m.cols != cols:
                raise ValueError(
                    f"generator {name!r} needs a {rows}x{cols} matrix "
                    f"for {decl.dom} -> {decl.cod}, got {m.rows}x{m.cols}"
                )

    def atom_dim(self, atom: str) -> int:
        if atom not in self.object_dims:
            raise UnknownName(f"no dimension declared for atom {atom!r}")
        return self.object_dims[atom]

    def word_dim(self, word: ObjectWord) -> int:
        n = 1
        for atom, _ in word.factors:
            n *= self.atom_dim(atom)
        return n


def interpret(term, interp: Interpretation) -> MatrixMorphism:
    """Evaluate a term to its matrix by structural recursion."""
    if interp.signature is not None:
        typecheck(term, interp.signature)
    return _interpret(term, interp)


def _interpret(t, interp: Interpretation) -> MatrixMorphism:
    tag = interp.tag
    if isinstance(t, Gen):
        m = interp.gen_matrices.get(t.name)
        if m is None:
            raise UnknownName(f"no matrix assigned to generator {t.name!r}")
        return m
    if isinstance(t, Id):
        return MatrixMorphism.identity(tag, interp.word_dim(t.word))
    if isinstance(t, Seq):
        return compose(_interpret(t.after, interp), _interpret(t.before, interp))
    if isinstance(t, Par):
        return tensor(_interpret(t.left, interp), _interpret(t.right, interp))
    if isinstance(t, Swap):
        return swap_matrix(tag, interp.word_dim(t.left), interp.word_dim(t.right))
    if isinstance(t, Cup):
        return unit_eta(tag, interp.atom_dim(t.atom))
    if isinstance(t, Cap):
        return counit_eps(tag, interp.atom_dim(t.atom))
    if isinstance(t, Dagger):
        return dagger(_interpret(t.inner, interp))
    if isinstance(t, Spider):
        p = interp.frobenius_data.get(t.atom)
        if p is None:
            raise UnknownName(f"no frobenius data for atom {t.atom!r}")
        return spider_matrix(p, t.legs_in, t.legs_out)
    raise TypeError(f"not a diagram term: {t!r}")


def evaluate_cob(term, p: FrobeniusPresentation) -> MatrixMorphism:
    """Evaluate a single-atom cobordism term from one presentation.

    The presentation must verify (including its claimed flags) before any
    evaluation happens.  Daggers flip the underlying surface end for
    end, so they are removed structurally up front; a matrix adjoint
    would only agree for presentations with dagger structure.
    """
    report = verify_frobenius(p)
    if not report.ok:
        bad = ", ".join(e.name for e in report.surprises())
        raise ValueError(f"presentation failed verification: {bad}")
    atoms = term_atoms(term)
    if len(atoms) > 1:
        raise ValueError(f"expected a single atom, found {sorted(atoms)}")
    atom = atoms.pop() if atoms else "A"
    term = strip_daggers(term)
    interp = Interpretation(
        tag=p.tag,
        object_dims={atom: p.dim},
        frobenius_data={atom: p},
        signature=cob_signature(atom),
    )
    return interpret(term, interp)


def check_frobenius_morphism(
    theta: MatrixMorphism, p: FrobeniusPresentation, q: FrobeniusPresentation
) -> LawReport:
    """Does theta commute with both comonoid and monoid structure?"""
    if theta.cols != p.dim or theta.rows != q.dim:
        raise ShapeMismatch(
            f"morphism must be {q.dim}x{p.dim}, got {theta.rows}x{theta.cols}"
        )
    tag = join_tags(theta.tag, join_tags(p.tag, q.tag))
    tol = tag.tolerance
    pair = tensor(theta, theta)
    checks = [
        ("morphism-comultiplication", compose(q.delta, theta), compose(pair, p.delta)),
        ("morphism-counit", compose(q.eps, theta), p.eps),
        ("morphism-multiplication", compose(theta, p.mu), compose(q.mu, pair)),
        ("morphism-unit", compose(theta, p.unit_e), q.unit_e),
    ]
    entries = []
    for name, lhs, rhs in checks:
        dev = max_deviation(lhs, rhs)
        entries.append(LawEntry(name, "frobenius-morphism", dev <= tol, dev))
    return LawReport(entries=entries)


def conjugate_presentation(
    p: FrobeniusPresentation, f: MatrixMorphism, f_inv: MatrixMorphism
) -> FrobeniusPresentation:
    """Transport a presentation along an invertible change of basis.

    Commutativity and speciality survive conjugation; the dagger flag is
    dropped since it only survives unitary changes of basis.
    """
    tag = p.tag
    ident = MatrixMorphism.identity(tag, p.dim)
    if (
        max_deviation(compose(f, f_inv), ident) > tag.tolerance
        or max_deviation(compose(f_inv, f), ident) > tag.tolerance
    ):
        raise ValueError("change of basis is not mutually inverse")
    return replace(
        p,
        delta=compose(tensor(f, f), compose(p.delta, f_inv)),
        eps=compose(p.eps, f_inv),
        mu=compose(f, compose(p.mu, tensor(f_inv, f_inv))),
        unit_e=compose(f, p.unit_e),
        dagger=False,
    )


_TAGS = {"bool": BOOL, "complex": COMPLEX, "nat": NAT}


def interpretation_from_data(data: dict, sig: Signature | None = None, tolerance=None) -> Interpretation:
    """Build an Interpretation from plain JSON-style data.

    Expected keys: "semiring"; "objects" mapping atoms to a dimension or to
    a list of element names; "generators" mapping names to row-major entry
    lists (complex entries may be [re, im] pairs) or, over booleans, to
    {"rel": [[x, y], ...]} pair lists resolved against element names;
    "frobenius" mapping atoms to "basis" or to explicit delta/eps/mu/e
    matrices, whose optional flags are measured from the data.
    """
    kind = data.get("semiring")
    if kind not in _TAGS:
        raise ValueError(f"unknown semiring {kind!r}; expected bool, complex, or nat")
    tag = _TAGS[kind]
    if tolerance is not None and kind == "complex":
        tag = SemiringTag(kind, tolerance)

    object_dims = {}
    element_names = {}
    for atom, value in data.get("objects", {}).items():
        if isinstance(value, int):
            object_dims[atom] = value
        elif isinstance(value, list):
            object_dims[atom] = len(value)
            element_names[atom] = [str(x) for x in value]
        else:
            raise ValueError(f"object {atom!r} needs a dimension or element list")

    def element_index(atom, x):
        names = element_names.get(atom)
        if isinstance(x, str):
            if names is None:
                raise ValueError(f"atom {atom!r} has no named elements for {x!r}")
            if x not in names:
                raise ValueError(f"unknown element {x!r} of atom {atom!r}")
            return names.index(x)
        return int(x)

    gen_matrices = {}
    for name, value in data.get("generators", {}).items():
        if isinstance(value, dict) and "rel" in value:
            if tag.kind != "bool":
                raise ValueError("pair-list generators are only meaningful over booleans")
            if sig is None or name not in sig.generators:
                raise ValueError(f"pair-list generator {name!r} needs a declared signature")
            decl = sig.generators[name]
            if len(decl.dom) != 1 or len(decl.cod) != 1:
                raise ValueError(f"pair-list generator {name!r} needs single-atom endpoints")
            dom_atom = decl.dom.factors[0][0]
            cod_atom = decl.cod.factors[0][0]
            rows, cols = object_dims[cod_atom], object_dims[dom_atom]
            m = MatrixMorphism.zeros(tag, rows, cols)
            for x, y in value["rel"]:
                m.data[element_index(cod_atom, y), element_index(dom_atom, x)] = True
            gen_matrices[name] = m
        else:
            gen_matrices[name] = MatrixMorphism(tag, value)

    frobenius_data = {}
    for atom, value in data.get("frobenius", {}).items():
        if value == "basis":
            if atom not in object_dims:
                raise ValueError(f"frobenius atom {atom!r} has no declared dimension")
            frobenius_data[atom] = basis_frobenius(object_dims[atom], tag)
            continue
        delta = MatrixMorphism(tag, value["delta"])
        eps = MatrixMorphism(tag, value["eps"])
        mu = MatrixMorphism(tag, value["mu"])
        unit_e = MatrixMorphism(tag, value["e"])
        d = delta.cols
        tol = tag.tolerance
        sigma = swap_matrix(tag, d, d)
        commutative = (
            max_deviation(compose(sigma, delta), delta) <= tol
            and max_deviation(compose(mu, sigma), mu) <= tol
        )
        special = max_deviation(compose(mu, delta), MatrixMorphism.identity(tag, d)) <= tol
        daggered = (
            max_deviation(dagger(delta), mu) <= tol
            and max_deviation(dagger(eps), unit_e) <= tol
        )
        frobenius_data[atom] = FrobeniusPresentation(
            d, delta, eps, mu, unit_e,
            commutative=commutative, special=special, dagger=daggered,
        )

    return Interpretation(
        tag=tag,
        object_dims=object_dims,
        gen_matrices=gen_matrices,
        frobenius_data=frobenius_data,
        signature=sig,
        element_names=element_names,
    )


def _backend_dtype(tag: SemiringTag):
    # Booleans contract as int64 counts and are thresholded at the end.
    if tag.kind == "bool":
        return np.int64
    if tag.kind == "complex":
        return np.complex128
    return object


def _as_backend(m: MatrixMorphism, tag: SemiringTag) -> np.ndarray:
    if tag.kind == "bool":
        return m.data.astype(np.int64)
    return m.data


def _terminal_atom(graph: OpenGraph, t) -> str:
    if t[0] == "i":
        return graph.input_types[t[1]][0]
    if t[0] == "o":
        return graph.output_types[t[1]][0]
    node = graph.nodes[t[1]]
    if isinstance(node, SpiderNode):
        return node.atom
    port, nd = t[2], len(node.dom)
    word = node.dom if port < nd else node.cod
    return word.factors[port if port < nd else port - nd][0]


def _trace_dups(arr, wids, dtype):
    while True:
        first = {}
        dup = None
        for i, w in enumerate(wids):
            if w in first:
                dup = (first[w], i)
                break
            first[w] = i
        if dup is None:
            return arr, wids
        i, j = dup
        # trace of a 2-d array comes back as a bare scalar; renormalize
        arr = np.asarray(np.trace(arr, axis1=i, axis2=j), dtype=dtype)
        wids = [w for k, w in enumerate(wids) if k not in (i, j)]


def evaluate_graph(graph: OpenGraph, interp: Interpretation) -> MatrixMorphism:
    """Contract an open graph to its matrix.

    Graph wires are undirected, so a spider's legs carry no orientation;
    this is only sound when every spider tensor is invariant under leg
    permutation and the pairing eps . mu it induces is the plain identity
    pairing.  Both hold for commutative presentations whose pairing matches
    the Kronecker cup, and that is checked up front.  Boxes keep their
    orientation from the stored domain/codomain split, so no condition is
    needed for them.
    """
    tag = interp.tag
    dtype = _backend_dtype(tag)
    spider_atoms = {n.atom for n in graph.nodes if isinstance(n, SpiderNode)}
    for atom in sorted(spider_atoms):
        p = interp.frobenius_data.get(atom)
        if p is None:
            raise UnknownName(f"no frobenius data for atom {atom!r}")
        pairing = compose(p.eps, p.mu)
        if not p.commutative or max_deviation(pairing, counit_eps(tag, p.dim)) > tag.tolerance:
            raise ValueError(
                f"presentation for {atom!r} is directional; "
                "graph contraction needs a commutative presentation with the identity pairing"
            )

    wire_dim = []
    port_wire = {}
    boundary_wire = {}
    for wid, (a, b) in enumerate(graph.wires):
        wire_dim.append(interp.atom_dim(_terminal_atom(graph, a)))
        for t in (a, b):
            if t[0] == "n":
                port_wire[(t[1], t[2])] = wid
            else:
                boundary_wire[(t[0], t[1])] = wid

    tensors = []
    for nid, node in enumerate(graph.nodes):
        if isinstance(node, SpiderNode):
            p = interp.frobenius_data[node.atom]
            mat = spider_matrix(p, node.degree, 0, node.genus)
            arr = _as_backend(mat, tag).reshape((p.dim,) * node.degree)
            wids = [port_wire[(nid, port)] for port in range(node.degree)]
        else:
            m = interp.gen_matrices.get(node.name)
            if m is None:
                raise UnknownName(f"no matrix assigned to generator {node.name!r}")
            if node.daggered:
                m = dagger(m)
            dom_dims = [interp.atom_dim(atom) for atom, _ in node.dom.factors]
            cod_dims = [interp.atom_dim(atom) for atom, _ in node.cod.factors]
            arr = _as_backend(m, tag).reshape(tuple(cod_dims) + tuple(dom_dims))
            # Axis order is cod legs then dom legs; ports are dom-first.
            perm = list(range(len(cod_dims), len(cod_dims) + len(dom_dims)))
            perm += list(range(len(cod_dims)))
            arr = np.transpose(arr, perm)
            wids = [port_wire[(nid, port)] for port in range(node.n_ports)]
        arr, wids = _trace_dups(arr, wids, dtype)
        tensors.append((arr, wids))

    merged = True
    while merged:
        merged = False
        for i in range(len(tensors)):
            for j in range(i + 1, len(tensors)):
                shared = sorted(set(tensors[i][1]) & set(tensors[j][1]))
                if not shared:
                    continue
                a_arr, a_wids = tensors[i]
                b_arr, b_wids = tensors[j]
                ax_a = [a_wids.index(w) for w in shared]
                ax_b = [b_wids.index(w) for w in shared]
                arr = np.tensordot(a_arr, b_arr, axes=(ax_a, ax_b))
                wids = [w for w in a_wids if w not in shared]
                wids += [w for w in b_wids if w not in shared]
                arr, wids = _trace_dups(arr, wids, dtype)
                tensors[i] = (arr, wids)
                tensors.pop(j)
                merged = True
                break
            if merged:
                break

    def one():
        return 1 if tag.kind != "complex" else 1 + 0j

    scalar = one()
    live = []
    for arr, wids in tensors:
        if wids:
            live.append((arr, wids))
        else:
            scalar = scalar * arr.item()
    for atom in graph.loops:
        d = interp.atom_dim(atom)
        scalar = scalar * ((1 if d > 0 else 0) if tag.kind == "bool" else d)

    out_dims = [interp.atom_dim(atom) for atom, _ in graph.output_types]
    in_dims = [interp.atom_dim(atom) for atom, _ in graph.input_types]
    positions = [("o", k) for k in range(len(out_dims))]
    positions += [("i", k) for k in range(len(in_dims))]
    links = []
    wire_positions = {}
    for pos in positions:
        wire_positions.setdefault(boundary_wire[pos], []).append(pos)
    for w, pts in wire_positions.items():
        if len(pts) == 2:
            links.append(tuple(pts))

    rows = 1
    for d in out_dims:
        rows *= d
    cols = 1
    for d in in_dims:
        cols *= d
    result = np.zeros((rows, cols), dtype=dtype)
    if dtype is object:
        result[...] = 0
    all_dims = out_dims + in_dims
    for assign in itertools.product(*[range(d) for d in all_dims]):
        value_at = dict(zip(positions, assign))
        if any(value_at[a] != value_at[b] for a, b in links):
            continue
        val = scalar
        for arr, wids in live:
            idx = tuple(value_at[wire_positions[w][0]] for w in wids)
            val = val * arr[idx]
        row = 0
        for k in range(len(out_dims)):
            row = row * out_dims[k] + assign[k]
        col = 0
        for k in range(len(in_dims)):
            col = col * in_dims[k] + assign[len(out_dims) + k]
        result[row, col] = val
    if tag.kind == "bool":
        entries = (result > 0).tolist()
    else:
        entries = result.tolist()
    return MatrixMorphism(tag, entries, shape=(rows, cols))
