"""catkit: categorical structures as executable artifacts.

Subpackages and modules:

- scalars: tagged semiring scalars (bool / nat / complex)
- matcat: the matrix category over a semiring, with biproducts,
  Kronecker tensor, dagger, and compact structure
- diagram: the free dagger compact symmetric monoidal category over a
  signature, with a port-graph normal form deciding equality
- frobenius: spider fusion and the 2-dimensional cobordism classifier
- tqft: interpretations of diagrams as matrices, Frobenius
  presentations, and cobordism evaluation
- lawcheck: a harness checking the equational laws, including the
  negative examples that must fail
- cli: the catkit command-line front end
"""

from .scalars import BOOL, COMPLEX, NAT, ScalarValue, SemiringTag, complex_tag
from .matcat import MatrixMorphism
from .diagram import (
    ObjectWord,
    ParseError,
    Signature,
    TypeMismatch,
    UnknownName,
    graph_eq,
    parse,
    to_graph,
    typecheck,
)
from .frobenius import classify_cob, cob_signature, eq_cob, fuse, spiderize
from .lawcheck import LAW_MANIFEST, LawEntry, LawReport, assert_expected, merge_reports
from .tqft import (
    FrobeniusPresentation,
    Interpretation,
    basis_frobenius,
    evaluate_cob,
    evaluate_graph,
    interpret,
    interpretation_from_data,
    verify_frobenius,
    xor_frobenius,
)

__all__ = [
    "BOOL",
    "COMPLEX",
    "NAT",
    "ScalarValue",
    "SemiringTag",
    "complex_tag",
    "MatrixMorphism",
    "ObjectWord",
    "ParseError",
    "Signature",
    "TypeMismatch",
    "UnknownName",
    "graph_eq",
    "parse",
    "to_graph",
    "typecheck",
    "classify_cob",
    "cob_signature",
    "eq_cob",
    "fuse",
    "spiderize",
    "LAW_MANIFEST",
    "LawEntry",
    "LawReport",
    "assert_expected",
    "merge_reports",
    "FrobeniusPresentation",
    "Interpretation",
    "basis_frobenius",
    "evaluate_cob",
    "evaluate_graph",
    "interpret",
    "interpretation_from_data",
    "verify_frobenius",
    "xor_frobenius",
]
