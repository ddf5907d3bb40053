"""Classification of anticommutative algebras within the identity
hierarchy, plus the nilpotency and semiprimeness-witness utilities."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Algebra
from .engine import CheckReport, check_identity
from .identities import builtin_catalog
from .subspaces import (
    Subspace,
    full_space,
    ideal_closure,
    jacobian_span,
    power_chain,
    product_subspace,
)


@dataclass
class TypeVerdict:
    """Where an algebra sits in the identity hierarchy.

    Implications lie => malcev => anticommutative and first_type =>
    second_type are asserted on construction; they are theorems over the
    rationals, so a violation means a broken checker.
    """

    anticommutative: bool
    lie: bool
    malcev: bool
    second_type: bool
    first_type: bool
    witnesses: dict = field(default_factory=dict)

    def __post_init__(self):
        assert not self.lie or self.malcev
        assert not self.malcev or self.anticommutative
        assert not self.first_type or self.second_type

    def summary(self) -> list:
        return [
            ("anticommutative", self.anticommutative),
            ("lie", self.lie),
            ("malcev", self.malcev),
            ("second_type", self.second_type),
            ("first_type", self.first_type),
        ]


def anticommutative_sweep(algebra: Algebra):
    """e_i e_j = -(e_j e_i) and e_i e_i = 0 over all basis pairs.

    Structural by construction, but swept anyway so the claim is a checked
    fact rather than an assumption.  Returns None or a witness pair.
    """
    for i in range(algebra.dim):
        if algebra.basis_product(i, i):
            return (i, i)
        for j in range(i + 1, algebra.dim):
            fwd = algebra.basis_product(i, j)
            bwd = algebra.basis_product(j, i)
            if {k: -c for k, c in fwd.items()} != bwd:
                return (i, j)
    return None


def classify(algebra: Algebra, jobs: int = 1) -> TypeVerdict:
    """Run the hierarchy checks: anticommutativity sweep, Jacobi, Malcev,
    the second-type pair, and the first-type product law."""
    catalog = builtin_catalog()

    def run(name: str) -> CheckReport:
        return check_identity(algebra, catalog[name].identity, jobs=jobs)

    witnesses: dict = {}

    def record(name: str) -> bool:
        report = run(name)
        if not report.ok and report.counterexample is not None:
            witnesses[name] = report.counterexample
        return report.ok

    anticommutative = anticommutative_sweep(algebra) is None
    jacobi = record("jacobi")
    malcev = record("malcev")
    eq3a = record("second_type_3a")
    eq3b = record("second_type_3b")
    eq4 = record("first_type_4")
    return TypeVerdict(
        anticommutative=anticommutative,
        lie=anticommutative and jacobi,
        malcev=malcev,
        second_type=malcev and eq3a and eq3b,
        first_type=malcev and eq4,
        witnesses=witnesses,
    )


def is_nilpotent(algebra: Algebra, k_cap: int | None = None):
    """(True, c) with A^c = 0 and A^(c-1) != 0, or (False, None).

    The class convention matches the power chain: nilpotent of class c
    means every product of c factors vanishes.  The chain is strictly
    descending until it stabilizes, so dim + 2 powers decide.
    """
    cap = k_cap if k_cap is not None else algebra.dim + 2
    chain = power_chain(algebra, max(cap, 2))
    previous = None
    for k, space in enumerate(chain, start=1):
        if space.is_zero():
            return True, k
        if previous is not None and space == previous:
            return False, None
        previous = space
    return False, None


def semiprime_witness(algebra: Algebra, jobs: int = 1) -> Subspace | None:
    """A nonzero square-zero ideal, when the Jacobian span is nonzero.

    Requires the second-type pair to hold (checked); then the ideal closure
    of J(A, A, A) squares to zero, so a non-Lie algebra in this class is
    never semiprime.  Returns None for Lie algebras (J = 0): no witness.
    """
    catalog = builtin_catalog()
    for name in ("second_type_3a", "second_type_3b"):
        report = check_identity(algebra, catalog[name].identity, jobs=jobs)
        if not report.ok:
            raise ValueError(f"precondition failed: {name} does not hold")
    ambient = full_space(algebra)
    jspan = jacobian_span(algebra, ambient, ambient, ambient)
    if jspan.is_zero():
        return None
    witness = ideal_closure(algebra, jspan)
    square = product_subspace(algebra, witness, witness)
    assert square.is_zero(), "square-zero witness failed; checker broken"
    return witness
