"""Terms over a signature with dagger compact symmetric monoidal structure.

A Signature declares named atomic objects, each optionally flagged as
carrying frobenius structure or as self-dual, plus typed generator
morphisms between tensor words of atoms.  DiagramTerm trees combine
generators with sequential composition, tensoring, symmetries, duality
bends, daggers, and spider nodes.  ``typecheck`` assigns every term a
unique (domain, codomain) pair of words or raises TypeMismatch.
"""

from __future__ import annotations

from dataclasses import dataclass


class DiagramError(Exception):
    """Base class for term, type, and parse problems."""


class TypeMismatch(DiagramError):
    """A term does not admit a consistent domain/codomain assignment."""


class UnknownName(DiagramError):
    """A term references a generator or atom missing from the signature."""


@dataclass(frozen=True)
class ObjectWord:
    """Tensor word over atomic objects; the empty word is the unit I.

    Each factor is a pair (atom, dual) where dual marks the dual object.
    """

    factors: tuple = ()

    @classmethod
    def atom(cls, name, dual=False):
        return cls(((name, bool(dual)),))

    @classmethod
    def of(cls, *names):
        """Word of plain (non-dual) atoms in the given order."""
        return cls(tuple((n, False) for n in names))

    def tensor(self, other):
        return ObjectWord(self.factors + other.factors)

    def dual(self):
        """Reversed word with every factor's variance flipped."""
        return ObjectWord(tuple((a, not d) for a, d in reversed(self.factors)))

    def __len__(self):
        return len(self.factors)

    def __str__(self):
        if not self.factors:
            return "I"
        return " x ".join(a + ("*" if d else "") for a, d in self.factors)


UNIT = ObjectWord()


@dataclass(frozen=True)
class ObjectDecl:
    name: str
    frobenius: bool = False
    self_dual: bool = False


@dataclass(frozen=True)
class GenDecl:
    name: str
    dom: ObjectWord
    cod: ObjectWord


class Signature:
    """Named atoms plus typed generator symbols.

    Atoms referenced by a generator type are registered automatically
    with default flags; structure flags require an explicit
    declare_object call before first use.
    """

    def __init__(self):
        self.objects = {}
        self.generators = {}

    def declare_object(self, name, frobenius=False, self_dual=False):
        if name in self.objects:
            raise ValueError(f"object {name!r} declared twice")
        if name in self.generators:
            raise ValueError(f"name {name!r} already used by a generator")
        decl = ObjectDecl(name, bool(frobenius), bool(self_dual))
        self.objects[name] = decl
        return decl

    def declare_generator(self, name, dom, cod):
        if name in self.generators:
            raise ValueError(f"generator {name!r} declared twice")
        if name in self.objects:
            raise ValueError(f"name {name!r} already used by an object")
        for word in (dom, cod):
            for atom, _ in word.factors:
                self.ensure_atom(atom)
        decl = GenDecl(name, self.normalize(dom), self.normalize(cod))
        self.generators[name] = decl
        return decl

    def ensure_atom(self, name):
        """Register an atom with default flags if it is not yet known."""
        if name not in self.objects:
            self.objects[name] = ObjectDecl(name)
        return self.objects[name]

    def is_self_dual(self, atom):
        return self.objects[atom].self_dual

    def is_frobenius(self, atom):
        return self.objects[atom].frobenius

    def normalize(self, word):
        """Erase the dual mark on self-dual atoms."""
        factors = []
        for atom, dual in word.factors:
            decl = self.objects.get(atom)
            if decl is None:
                raise UnknownName(f"unknown object {atom!r}")
            factors.append((atom, dual and not decl.self_dual))
        return ObjectWord(tuple(factors))

    def dual_atom(self, atom):
        """Single-factor word for the dual of an atom."""
        return self.normalize(ObjectWord.atom(atom, dual=True))


class DiagramTerm:
    """Base class; instances are immutable trees."""

    __slots__ = ()


@dataclass(frozen=True)
class Gen(DiagramTerm):
    """Occurrence of a named generator."""

    name: str


@dataclass(frozen=True)
class Id(DiagramTerm):
    """Identity on a word; Id(UNIT) is the empty diagram."""

    word: ObjectWord


@dataclass(frozen=True)
class Seq(DiagramTerm):
    """Sequential composite: `before` is applied first, then `after`."""

    after: DiagramTerm
    before: DiagramTerm


@dataclass(frozen=True)
class Par(DiagramTerm):
    """Side-by-side tensor of two terms."""

    left: DiagramTerm
    right: DiagramTerm


@dataclass(frozen=True)
class Swap(DiagramTerm):
    """Symmetry left x right -> right x left; pure wire crossing."""

    left: ObjectWord
    right: ObjectWord


@dataclass(frozen=True)
class Cup(DiagramTerm):
    """Duality unit I -> A* x A for a single atom."""

    atom: str


@dataclass(frozen=True)
class Cap(DiagramTerm):
    """Duality counit A x A* -> I for a single atom."""

    atom: str


@dataclass(frozen=True)
class Dagger(DiagramTerm):
    """Adjoint of a term; swaps domain and codomain."""

    inner: DiagramTerm


@dataclass(frozen=True)
class Spider(DiagramTerm):
    """Frobenius node with legs_in inputs and legs_out outputs."""

    atom: str
    legs_in: int
    legs_out: int


def typecheck(term, sig):
    """Return the (dom, cod) pair of words for a term.

    Raises TypeMismatch when sequential composition does not line up or
    a spider sits on a non-frobenius atom, and UnknownName for
    undeclared generators or atoms.
    """
    if isinstance(term, Gen):
        decl = sig.generators.get(term.name)
        if decl is None:
            raise UnknownName(f"unknown generator {term.name!r}")
        return decl.dom, decl.cod
    if isinstance(term, Id):
        word = sig.normalize(term.word)
        return word, word
    if isinstance(term, Seq):
        bdom, bcod = typecheck(term.before, sig)
        adom, acod = typecheck(term.after, sig)
        if bcod != adom:
            raise TypeMismatch(
                f"cannot compose: first stage produces {bcod} "
                f"but second expects {adom}"
            )
        return bdom, acod
    if isinstance(term, Par):
        ldom, lcod = typecheck(term.left, sig)
        rdom, rcod = typecheck(term.right, sig)
        return ldom.tensor(rdom), lcod.tensor(rcod)
    if isinstance(term, Swap):
        left = sig.normalize(term.left)
        right = sig.normalize(term.right)
        return left.tensor(right), right.tensor(left)
    if isinstance(term, Cup):
        cod = sig.normalize(
            ObjectWord(((term.atom, True), (term.atom, False)))
        )
        return UNIT, cod
    if isinstance(term, Cap):
        dom = sig.normalize(
            ObjectWord(((term.atom, False), (term.atom, True)))
        )
        return dom, UNIT
    if isinstance(term, Dagger):
        dom, cod = typecheck(term.inner, sig)
        return cod, dom
    if isinstance(term, Spider):
        decl = sig.objects.get(term.atom)
        if decl is None:
            raise UnknownName(f"unknown object {term.atom!r}")
        if not decl.frobenius:
            raise TypeMismatch(
                f"spider legs require a frobenius atom, got {term.atom!r}"
            )
        if term.legs_in < 0 or term.legs_out < 0:
            raise TypeMismatch("spider leg counts must be nonnegative")
        dom = ObjectWord(((term.atom, False),) * term.legs_in)
        cod = ObjectWord(((term.atom, False),) * term.legs_out)
        return dom, cod
    raise TypeError(f"not a diagram term: {term!r}")


def _endpoints(term, sig):
    """Single factors (dom, cod) for a term typed atom -> atom."""
    dom, cod = typecheck(term, sig)
    if len(dom.factors) != 1 or len(cod.factors) != 1:
        raise TypeMismatch(
            "transpose, name, and coname support terms typed between "
            f"single atoms, got {dom} -> {cod}"
        )
    return dom.factors[0], cod.factors[0]


def _dual_word(sig, factor):
    atom, dual = factor
    return sig.normalize(ObjectWord.atom(atom, not dual))


def _eta(sig, factor):
    """Bend typed I -> dual(factor) x factor."""
    atom, dual = factor
    if not dual:
        return Cup(atom)
    plain = sig.normalize(ObjectWord.atom(atom))
    starred = sig.normalize(ObjectWord.atom(atom, True))
    return Seq(Swap(starred, plain), Cup(atom))


def _eps(sig, factor):
    """Bend typed factor x dual(factor) -> I."""
    atom, dual = factor
    if not dual:
        return Cap(atom)
    plain = sig.normalize(ObjectWord.atom(atom))
    starred = sig.normalize(ObjectWord.atom(atom, True))
    return Seq(Cap(atom), Swap(starred, plain))


def transpose(term, sig):
    """Bend a term t: A -> B into B* -> A* using one cup and one cap."""
    a, b = _endpoints(term, sig)
    a_star = _dual_word(sig, a)
    b_star = _dual_word(sig, b)
    bottom = Par(_eta(sig, a), Id(b_star))
    middle = Par(Id(a_star), Par(term, Id(b_star)))
    top = Par(Id(a_star), _eps(sig, b))
    return Seq(top, Seq(middle, bottom))


def name(term, sig):
    """State I -> A* x B encoding a term t: A -> B."""
    a, _ = _endpoints(term, sig)
    return Seq(Par(Id(_dual_word(sig, a)), term), _eta(sig, a))


def coname(term, sig):
    """Effect A x B* -> I encoding a term t: A -> B."""
    _, b = _endpoints(term, sig)
    return Seq(_eps(sig, b), Par(term, Id(_dual_word(sig, b))))
