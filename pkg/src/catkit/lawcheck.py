"""Harness that machine-checks the equational laws against concrete matrices.

Every check returns a LawReport: a list of named equations, each with a
pass/fail verdict and the worst deviation observed over the instances tried.
Counterexample entries are marked expect_fail; for those a *pass* is the
surprising outcome, and assert_expected treats it as a harness error.

Checks are deterministic given their seed, which is recorded in the report.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .matcat import (
    MatrixMorphism,
    ShapeMismatch,
    assoc_iso,
    compose,
    counit_eps,
    dagger,
    left_unit_iso,
    max_deviation,
    right_unit_iso,
    scalar_multiple,
    swap_matrix,
    tensor,
    unit_eta,
)
from .scalars import BOOL, COMPLEX, SemiringTag, mul


@dataclass(frozen=True)
class LawEntry:
    """Outcome of one named equation.

    deviation is the worst gap seen over all instances; passed is true iff
    that gap is within the semiring tolerance.  expect_fail marks entries
    that document counterexamples rather than laws.
    """

    name: str
    anchor: str
    passed: bool
    deviation: float
    expect_fail: bool = False
    witness: str | None = None

    @property
    def as_expected(self) -> bool:
        return self.passed != self.expect_fail


@dataclass
class LawReport:
    entries: list[LawEntry] = field(default_factory=list)
    seed: int | None = None

    @property
    def ok(self) -> bool:
        return all(e.as_expected for e in self.entries)

    def surprises(self) -> list[LawEntry]:
        return [e for e in self.entries if not e.as_expected]

    def entry(self, name: str) -> LawEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def names(self) -> list[str]:
        return [e.name for e in self.entries]

    def render(self) -> str:
        lines = []
        width = max((len(e.name) for e in self.entries), default=4)
        for e in self.entries:
            if e.expect_fail:
                status = "FAIL (unexpected pass)" if e.passed else "fail (expected)"
            else:
                status = "pass" if e.passed else "FAIL"
            line = "%-*s  %-22s  deviation=%.3g" % (width, e.name, status, e.deviation)
            if e.witness:
                line += "  [%s]" % e.witness
            lines.append(line)
        if self.seed is not None:
            lines.append("seed=%d" % self.seed)
        return "\n".join(lines)


def merge_reports(reports) -> LawReport:
    """Combine independent reports; entries are ordered by law name."""
    entries = []
    seed = None
    for r in reports:
        entries.extend(r.entries)
        if seed is None:
            seed = r.seed
    entries.sort(key=lambda e: e.name)
    return LawReport(entries=entries, seed=seed)


def assert_expected(report: LawReport) -> None:
    """Abort on any law that came out opposite to its expectation."""
    bad = report.surprises()
    if bad:
        parts = []
        for e in bad:
            kind = "unexpectedly passed" if e.expect_fail else "failed"
            parts.append("%s %s (deviation %.3g)" % (e.name, kind, e.deviation))
        raise RuntimeError("law check aborted: " + "; ".join(parts))


def random_matrix(tag: SemiringTag, rows: int, cols: int, rng: random.Random) -> MatrixMorphism:
    """Random matrix with entries drawn per semiring kind."""
    if tag.kind == "bool":
        entries = [[rng.random() < 0.5 for _ in range(cols)] for _ in range(rows)]
    elif tag.kind == "nat":
        entries = [[rng.randrange(4) for _ in range(cols)] for _ in range(rows)]
    else:
        entries = [
            [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(cols)]
            for _ in range(rows)
        ]
    return MatrixMorphism(tag, entries, shape=(rows, cols))


def flip_entry(m: MatrixMorphism, i: int, j: int) -> MatrixMorphism:
    """Toggle one entry between zero and one (mutation testing helper)."""
    rows = m.tolist()
    v = m.entry(i, j).value
    if m.tag.kind == "bool":
        rows[i][j] = not v
    else:
        rows[i][j] = 0 if v != 0 else 1
    return MatrixMorphism(m.tag, rows, shape=(m.rows, m.cols))


def _entry(name, anchor, dev, tol, witness=None, expect_fail=False) -> LawEntry:
    return LawEntry(
        name=name,
        anchor=anchor,
        passed=dev <= tol,
        deviation=dev,
        expect_fail=expect_fail,
        witness=witness,
    )


def _worst(pairs):
    """Max deviation over (lhs, rhs) pairs plus a witness for the worst one."""
    dev = 0.0
    witness = None
    for label, lhs, rhs in pairs:
        d = max_deviation(lhs, rhs)
        if d > dev:
            dev = d
            witness = label
    return dev, witness


def check_coherence(tag: SemiringTag, max_dim: int = 3) -> LawReport:
    """Pentagon, triangle, unit and symmetry coherence on explicit permutations.

    The monoidal structure on matrices is strict, so the associator and the
    unit isomorphisms are built as explicit (identity) permutation matrices
    and the diagrams are still multiplied out in full; the symmetry is a
    genuine permutation.  Covers every dimension tuple with entries <= max_dim.
    """
    if max_dim > 5:
        raise ValueError("coherence check is capped at dimension 5")
    dims = range(max_dim + 1)
    tol = tag.tolerance

    def ident(n):
        return MatrixMorphism.identity(tag, n)

    pent = []
    for a, b, c, d in itertools.product(dims, repeat=4):
        inner = compose(assoc_iso(tag, a, b * c, d), tensor(assoc_iso(tag, a, b, c), ident(d)))
        lhs = compose(tensor(ident(a), assoc_iso(tag, b, c, d)), inner)
        rhs = compose(assoc_iso(tag, a, b, c * d), assoc_iso(tag, a * b, c, d))
        pent.append(((a, b, c, d), lhs, rhs))
    tri = []
    for a, b in itertools.product(dims, repeat=2):
        lhs = compose(tensor(ident(a), left_unit_iso(tag, b)), assoc_iso(tag, a, 1, b))
        rhs = tensor(right_unit_iso(tag, a), ident(b))
        tri.append(((a, b), lhs, rhs))
    sym_inv = []
    sym_unit = []
    for a, b in itertools.product(dims, repeat=2):
        lhs = compose(swap_matrix(tag, b, a), swap_matrix(tag, a, b))
        sym_inv.append(((a, b), lhs, ident(a * b)))
    for a in dims:
        lhs = compose(left_unit_iso(tag, a), swap_matrix(tag, a, 1))
        sym_unit.append(((a,), lhs, right_unit_iso(tag, a)))
    hexa = []
    for a, b, c in itertools.product(dims, repeat=3):
        lhs = compose(assoc_iso(tag, b, c, a), compose(swap_matrix(tag, a, b * c), assoc_iso(tag, a, b, c)))
        rhs = compose(
            tensor(ident(b), swap_matrix(tag, a, c)),
            compose(assoc_iso(tag, b, a, c), tensor(swap_matrix(tag, a, b), ident(c))),
        )
        hexa.append(((a, b, c), lhs, rhs))
    lam = left_unit_iso(tag, 1)
    rho = right_unit_iso(tag, 1)

    entries = []
    for name, pairs in [
        ("pentagon", pent),
        ("triangle", tri),
        ("symmetry-inverse", sym_inv),
        ("symmetry-unit", sym_unit),
        ("hexagon", hexa),
    ]:
        dev, wit = _worst([("dims %s" % (lbl,), l, r) for lbl, l, r in pairs])
        entries.append(_entry(name, "coherence", dev, tol, wit))
    entries.insert(2, _entry("unit-scalar-equality", "coherence", max_deviation(lam, rho), tol))
    return LawReport(entries=entries)


def check_naturality_squares(
    interp,
    samples: int = 5,
    seed: int = 7,
    transpose_sigma: bool = False,
    sigma_flip: tuple[int, int, int, int] | None = None,
) -> LawReport:
    """Naturality of the symmetry, associator and unit isos on random matrices.

    Dimensions come from the interpretation's object dimensions; matrices are
    freshly sampled.  transpose_sigma and sigma_flip inject deliberate bugs
    into the symmetry so the harness can prove it would notice one.
    """
    tag = interp.tag
    pool = sorted(set(interp.object_dims.values())) or [2, 3]
    rng = random.Random(seed)
    tol = tag.tolerance

    def sigma(a, b):
        m = swap_matrix(tag, a, b)
        if transpose_sigma:
            m = dagger(m)
        if sigma_flip is not None and sigma_flip[:2] == (a, b):
            m = flip_entry(m, sigma_flip[2], sigma_flip[3])
        return m

    def ident(n):
        return MatrixMorphism.identity(tag, n)

    sym = []
    for a, b in itertools.product(pool, repeat=2):
        for s in range(samples):
            c, d = rng.choice(pool), rng.choice(pool)
            f = random_matrix(tag, c, a, rng)
            g = random_matrix(tag, d, b, rng)
            lhs = compose(sigma(c, d), tensor(f, g))
            rhs = compose(tensor(g, f), sigma(a, b))
            sym.append(("dims (%d,%d)->(%d,%d) sample %d" % (a, b, c, d, s), lhs, rhs))
    asc = []
    for a, b, c in itertools.product(pool, repeat=3):
        a2, b2, c2 = rng.choice(pool), rng.choice(pool), rng.choice(pool)
        f = random_matrix(tag, a2, a, rng)
        g = random_matrix(tag, b2, b, rng)
        h = random_matrix(tag, c2, c, rng)
        lhs = compose(assoc_iso(tag, a2, b2, c2), tensor(tensor(f, g), h))
        rhs = compose(tensor(f, tensor(g, h)), assoc_iso(tag, a, b, c))
        asc.append(("dims (%d,%d,%d)" % (a, b, c), lhs, rhs))
    lun = []
    run = []
    for a in pool:
        for s in range(samples):
            a2 = rng.choice(pool)
            f = random_matrix(tag, a2, a, rng)
            lhs = compose(f, left_unit_iso(tag, a))
            rhs = compose(left_unit_iso(tag, a2), tensor(ident(1), f))
            lun.append(("dim %d sample %d" % (a, s), lhs, rhs))
            lhs = compose(f, right_unit_iso(tag, a))
            rhs = compose(right_unit_iso(tag, a2), tensor(f, ident(1)))
            run.append(("dim %d sample %d" % (a, s), lhs, rhs))

    entries = []
    for name, pairs in [
        ("symmetry-naturality", sym),
        ("associativity-naturality", asc),
        ("left-unit-naturality", lun),
        ("right-unit-naturality", run),
    ]:
        dev, wit = _worst(pairs)
        entries.append(_entry(name, "naturality", dev, tol, wit))
    return LawReport(entries=entries, seed=seed)


def check_scalar_laws(tag: SemiringTag, samples: int = 100, seed: int = 11) -> LawReport:
    """Commutativity of the scalar monoid and the scalar-multiple exchange laws."""
    rng = random.Random(seed)
    tol = tag.tolerance
    commute = []
    comp_law = []
    tens_law = []
    for k in range(samples):
        s = random_matrix(tag, 1, 1, rng)
        t = random_matrix(tag, 1, 1, rng)
        commute.append(("sample %d" % k, compose(s, t), compose(t, s)))
        sv, tv = s.entry(0, 0), t.entry(0, 0)
        a, b, c = rng.randrange(1, 4), rng.randrange(1, 4), rng.randrange(1, 4)
        f = random_matrix(tag, b, a, rng)
        g = random_matrix(tag, c, b, rng)
        lhs = compose(scalar_multiple(tv, g), scalar_multiple(sv, f))
        rhs = scalar_multiple(mul(tv, sv), compose(g, f))
        comp_law.append(("sample %d" % k, lhs, rhs))
        h = random_matrix(tag, rng.randrange(1, 4), rng.randrange(1, 4), rng)
        lhs = tensor(scalar_multiple(sv, f), scalar_multiple(tv, h))
        rhs = scalar_multiple(mul(sv, tv), tensor(f, h))
        tens_law.append(("sample %d" % k, lhs, rhs))
    entries = []
    for name, pairs in [
        ("scalar-commutativity", commute),
        ("scalar-compose-exchange", comp_law),
        ("scalar-tensor-exchange", tens_law),
    ]:
        dev, wit = _worst(pairs)
        entries.append(_entry(name, "scalars", dev, tol, wit))
    return LawReport(entries=entries, seed=seed)


def check_compact_structure(
    tag: SemiringTag,
    dims=range(7),
    eta_flip: tuple[int, int] | None = None,
) -> LawReport:
    """Snake equations, dagger compatibility of the compact pair, circle value.

    eta_flip=(n, i) corrupts entry i of the cup at dimension n, for mutation
    coverage.
    """
    tol = tag.tolerance

    def eta_at(n):
        m = unit_eta(tag, n)
        if eta_flip is not None and eta_flip[0] == n:
            m = flip_entry(m, eta_flip[1], 0)
        return m

    def ident(n):
        return MatrixMorphism.identity(tag, n)

    snake_r = []
    snake_l = []
    dag = []
    circ = []
    for n in dims:
        eta = eta_at(n)
        eps = counit_eps(tag, n)
        lhs = compose(tensor(eps, ident(n)), tensor(ident(n), eta))
        snake_r.append(("dim %d" % n, lhs, ident(n)))
        lhs = compose(tensor(ident(n), eps), tensor(eta, ident(n)))
        snake_l.append(("dim %d" % n, lhs, ident(n)))
        dag.append(("dim %d" % n, compose(dagger(eta), swap_matrix(tag, n, n)), eps))
        if tag.kind == "bool":
            expected = MatrixMorphism(tag, [[n > 0]])
        elif tag.kind == "nat":
            expected = MatrixMorphism(tag, [[n]])
        else:
            expected = MatrixMorphism(tag, [[complex(n)]])
        circ.append(("dim %d" % n, compose(eps, eta), expected))
    entries = []
    for name, pairs in [
        ("snake-right", snake_r),
        ("snake-left", snake_l),
        ("dagger-compactness", dag),
        ("circle-dimension", circ),
    ]:
        dev, wit = _worst(pairs)
        entries.append(_entry(name, "compact", dev, tol, wit))
    return LawReport(entries=entries)


def check_hopf_bialgebra(p, antipode: MatrixMorphism) -> LawReport:
    """Hopf law and bialgebra compatibility for a (co)monoid pair.

    p supplies the comonoid (delta, eps) and the monoid (mu, unit_e); the
    pairing need not be Frobenius.  The unit/counit scalar eps . e is checked
    against 1; its actual value is recorded in the witness since conventions
    for that scalar vary.
    """
    d = p.dim
    if antipode.rows != d or antipode.cols != d:
        raise ShapeMismatch(
            "antipode must be %dx%d, got %dx%d" % (d, d, antipode.rows, antipode.cols)
        )
    tag = antipode.tag
    tol = tag.tolerance
    ident = MatrixMorphism.identity(tag, d)
    e_after_eps = compose(p.unit_e, p.eps)

    hopf_l = compose(p.mu, compose(tensor(ident, antipode), p.delta))
    hopf_r = compose(p.mu, compose(tensor(antipode, ident), p.delta))
    mid = tensor(ident, tensor(swap_matrix(tag, d, d), ident))
    bial_mult = compose(tensor(p.mu, p.mu), compose(mid, tensor(p.delta, p.delta)))
    scalar = compose(p.eps, p.unit_e)

    checks = [
        ("hopf-left", "hopf", hopf_l, e_after_eps, None),
        ("hopf-right", "hopf", hopf_r, e_after_eps, None),
        ("bialgebra-mult-comult", "bialgebra", compose(p.delta, p.mu), bial_mult, None),
        ("bialgebra-mult-counit", "bialgebra", compose(p.eps, p.mu), tensor(p.eps, p.eps), None),
        ("bialgebra-unit-comult", "bialgebra", compose(p.delta, p.unit_e), tensor(p.unit_e, p.unit_e), None),
        (
            "bialgebra-unit-counit",
            "bialgebra",
            scalar,
            MatrixMorphism.identity(tag, 1),
            "eps . e = %r" % (scalar.entry(0, 0).value,),
        ),
    ]
    entries = []
    for name, anchor, lhs, rhs, wit in checks:
        dev = max_deviation(lhs, rhs)
        entries.append(_entry(name, anchor, dev, tol, wit))
    return LawReport(entries=entries)


def negative_suite() -> LawReport:
    """The three counterexamples that must fail.

    (a) the basis copy map is not natural against a superposition state;
    (b) the same square fails for relations;
    (c) the singleton carries no product structure in the category of
        relations, by exhaustive search over the four projection pairs.
    A pass of any of these is a harness failure; see assert_expected.
    """
    entries = []
    for tag, name, witness in [
        (
            COMPLEX,
            "no-uniform-copying-complex",
            "copying a superposition yields (1,0,0,1); the product state is (1,1,1,1)",
        ),
        (
            BOOL,
            "no-uniform-copying-bool",
            "relation {(0,0),(1,1)} differs from the full product relation",
        ),
    ]:
        delta2 = MatrixMorphism(tag, [[1, 0], [0, 0], [0, 0], [0, 1]])
        delta1 = MatrixMorphism(tag, [[1]])
        f = MatrixMorphism(tag, [[1], [1]])
        lhs = compose(delta2, f)
        rhs = compose(tensor(f, f), delta1)
        dev = max_deviation(lhs, rhs)
        entries.append(_entry(name, "no-cloning", dev, tag.tolerance, witness, expect_fail=True))

    # Candidate products on the singleton: projections and cones are all 1x1
    # relations, so each is just a bit; composition is conjunction.
    found = False
    for p1, p2 in itertools.product([False, True], repeat=2):
        works = True
        for r1, r2 in itertools.product([False, True], repeat=2):
            mediators = [r for r in (False, True) if (p1 and r) == r1 and (p2 and r) == r2]
            if len(mediators) != 1:
                works = False
                break
        if works:
            found = True
    entries.append(
        LawEntry(
            name="no-product-on-singleton-rel",
            anchor="no-cloning",
            passed=found,
            deviation=0.0 if found else 1.0,
            expect_fail=True,
            witness="checked 4 projection pairs against 4 cone demands",
        )
    )
    return LawReport(entries=entries)


# Every named equation, mapped to the check or test that decides it.  The
# harness's tests assert this list verbatim so additions stay deliberate.
LAW_MANIFEST: tuple[tuple[str, str], ...] = (
    ("interchange", "tests/test_diagram.py + acceptance 3"),
    ("pentagon", "lawcheck.check_coherence"),
    ("triangle", "lawcheck.check_coherence"),
    ("unit-scalar-equality", "lawcheck.check_coherence"),
    ("symmetry-inverse", "lawcheck.check_coherence"),
    ("symmetry-unit", "lawcheck.check_coherence"),
    ("hexagon", "lawcheck.check_coherence"),
    ("symmetry-naturality", "lawcheck.check_naturality_squares"),
    ("associativity-naturality", "lawcheck.check_naturality_squares"),
    ("left-unit-naturality", "lawcheck.check_naturality_squares"),
    ("right-unit-naturality", "lawcheck.check_naturality_squares"),
    ("scalar-commutativity", "lawcheck.check_scalar_laws"),
    ("scalar-compose-exchange", "lawcheck.check_scalar_laws"),
    ("scalar-tensor-exchange", "lawcheck.check_scalar_laws"),
    ("snake-right", "lawcheck.check_compact_structure"),
    ("snake-left", "lawcheck.check_compact_structure"),
    ("dagger-compactness", "lawcheck.check_compact_structure"),
    ("circle-dimension", "lawcheck.check_compact_structure"),
    ("transpose-involution", "tests/test_diagram.py"),
    ("name-coname-composition", "tests/test_diagram.py"),
    ("coassociativity", "tqft.verify_frobenius"),
    ("counit-left", "tqft.verify_frobenius"),
    ("counit-right", "tqft.verify_frobenius"),
    ("associativity", "tqft.verify_frobenius"),
    ("unit-left", "tqft.verify_frobenius"),
    ("unit-right", "tqft.verify_frobenius"),
    ("frobenius-left", "tqft.verify_frobenius"),
    ("frobenius-right", "tqft.verify_frobenius"),
    ("commutativity", "tqft.verify_frobenius"),
    ("speciality", "tqft.verify_frobenius"),
    ("dagger-structure", "tqft.verify_frobenius"),
    ("spider-fusion", "tests/test_frobenius.py"),
    ("hopf-left", "lawcheck.check_hopf_bialgebra"),
    ("hopf-right", "lawcheck.check_hopf_bialgebra"),
    ("bialgebra-mult-comult", "lawcheck.check_hopf_bialgebra"),
    ("bialgebra-mult-counit", "lawcheck.check_hopf_bialgebra"),
    ("bialgebra-unit-comult", "lawcheck.check_hopf_bialgebra"),
    ("bialgebra-unit-counit", "lawcheck.check_hopf_bialgebra"),
    ("no-uniform-copying-complex", "lawcheck.negative_suite"),
    ("no-uniform-copying-bool", "lawcheck.negative_suite"),
    ("no-product-on-singleton-rel", "lawcheck.negative_suite"),
    ("biproduct-orthogonality", "tests/test_matcat.py + acceptance 4"),
    ("biproduct-completeness", "tests/test_matcat.py + acceptance 4"),
    ("projector-spectrum", "tests/test_matcat.py + acceptance 4"),
    ("functoriality-compose", "tests/test_tqft.py + acceptance 7"),
    ("functoriality-tensor", "tests/test_tqft.py + acceptance 7"),
    ("frobenius-morphism", "tqft.check_frobenius_morphism"),
)
