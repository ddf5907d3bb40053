"""Acceptance suite: one test per criterion, each printing a pass/fail
line (run with `pytest -s` to see them; `pytest -v` names them anyway).

Every check is exact rational arithmetic; the runtime bounds are the
stated single-threaded targets.
"""

import random
import subprocess
import sys
import time
from itertools import combinations

import pytest

from malcevlab import (
    builtin_catalog,
    central_extension,
    check_identity,
    check_skew_symmetric,
    free_anticommutative,
    is_nilpotent,
    jacobian_span,
    lie_kernel,
    multilinear_quotient,
    parse_map,
    power_chain,
    product_subspace,
    quotient_algebra,
    semiprime_witness,
    subalgebra_generate,
)
from malcevlab.construct import SECOND_TYPE_PSI_ENTRIES, bilinear_form_from_entries
from malcevlab.engine import evaluate_identity, random_element, random_substitutions_vanish

CATALOG = builtin_catalog()


def ident(name):
    return CATALOG[name].identity


class timer:
    def __enter__(self):
        self.start = time.monotonic()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.monotonic() - self.start
        return False


def report(number, passed, text, elapsed=None):
    mark = "PASS" if passed else "FAIL"
    extra = f" [{elapsed:.2f}s]" if elapsed is not None else ""
    print(f"criterion {number:02d} {mark}: {text}{extra}")
    assert passed, f"criterion {number}: {text}"


def test_criterion_01_construction():
    with timer() as t:
        free = free_anticommutative(4, 4)
        quotient = multilinear_quotient(free)
        psi = bilinear_form_from_entries(quotient, SECOND_TYPE_PSI_ENTRIES)
        extended = central_extension(quotient, psi)
        layers = quotient.words_per_degree()
        ok = quotient.dim == 22 and layers == [4, 6, 12] and extended.dim == 23
    report(1, ok and t.elapsed < 1.0,
           f"construction: layers {layers}, dims {quotient.dim}/{extended.dim}", t.elapsed)


def test_criterion_02_witness_minus_3v(atilde):
    with timer() as t:
        e = atilde.basis_element
        value = atilde.multiply(atilde.jacobian(e(0), e(1), e(2)), e(3))
        expected = e(22).scale(-3)
        ok = value == expected
    report(2, ok and t.elapsed < 1.0, "[J(x1,x2,x3), x4] = -3*v exactly", t.elapsed)


def test_criterion_03_classification(atilde):
    with timer() as t:
        malcev = check_identity(atilde, ident("malcev"))
        eq3a = check_identity(atilde, ident("second_type_3a"))
        eq3b = check_identity(atilde, ident("second_type_3b"))
        eq4 = check_identity(atilde, ident("first_type_4"))
        eq5 = check_identity(atilde, ident("first_type_5"))
        ok = (
            malcev.ok and eq3a.ok and eq3b.ok
            and malcev.tuples_checked == 23 ** 4
            and eq4.status == "fails"
            and eq4.counterexample.indices == (0, 1, 2, 3)
            and atilde.format_element(eq4.counterexample.residual) == "-2*v"
            and eq5.status == "fails"
            and eq5.counterexample.indices == (0, 1, 2, 3)
            and atilde.format_element(eq5.counterexample.residual) == "-3*v"
        )
        # independent re-verification of the first_type_5 witness through
        # the dense evaluation path
        assignment = {
            v: atilde.basis_element(i)
            for v, i in zip(eq5.identity.variables, eq5.counterexample.indices)
        }
        redo = evaluate_identity(atilde, eq5.identity, assignment)
        ok = ok and redo == eq5.counterexample.residual and not redo.is_zero()
    report(3, ok and t.elapsed < 60.0,
           "23-dim example: malcev + second type hold, first type fails with verified witnesses",
           t.elapsed)


def test_criterion_04_skew_symmetry(atilde):
    with timer() as t:
        xi = check_skew_symmetric(atilde, parse_map("x1,x2,x3,x4 | J(x1,x2,x3*x4)", name="xi"))
        zeta = check_skew_symmetric(atilde, parse_map("x1,x2,x3,x4 | J(x1,x2,x3)*x4", name="zeta"))
        sigma = check_skew_symmetric(
            atilde, parse_map("x1,x2,x3,x4,x5 | J(x1*x2,x3*x4,x5)", name="sigma")
        )
        ok = (
            xi.ok and zeta.ok and sigma.ok
            and xi.tuples_checked == 23 ** 4
            and sigma.tuples_checked == 23 ** 5
        )
    report(4, ok and t.elapsed < 600.0,
           "xi, zeta skew-symmetric over 23^4 tuples; sigma over 23^5", t.elapsed)


def test_criterion_05_structure_suite(atilde):
    chain = power_chain(atilde, 5)
    with timer() as t_a:
        kernel = lie_kernel(atilde)
        quotient, _ = quotient_algebra(atilde, kernel)
        ok_a = (
            kernel.contains_subspace(chain[2])
            and check_identity(quotient, ident("jacobi")).ok
            and is_nilpotent(quotient)[0]
        )
    report(5, ok_a and t_a.elapsed < 60.0,
           "part A: A^3 in the Lie kernel, A/N(A) nilpotent Lie", t_a.elapsed)

    with timer() as t_b:
        _, restricted = subalgebra_generate(atilde, chain[1].row_elements())
        ok_b = restricted.dim == 19 and check_identity(restricted, ident("jacobi")).ok
    report(5, ok_b and t_b.elapsed < 60.0, "part B: A^2 is a Lie algebra", t_b.elapsed)

    with timer() as t_c:
        ok_c = check_identity(atilde, ident("two_w_jacobian")).ok
    report(5, ok_c and t_c.elapsed < 60.0,
           "part C: 2wJ(x,y,z) = 3J(w,x,yz) exhaustively", t_c.elapsed)

    with timer() as t_d:
        spans = {}
        for i in range(1, 5):
            for j in range(i, 5):
                for k in range(j, 5):
                    spans[(i, j, k)] = jacobian_span(
                        atilde, chain[i - 1], chain[j - 1], chain[k - 1]
                    )
        ok_d = all(sp.is_zero() for (i, j, k), sp in spans.items() if i + j + k >= 5)
        for (i, j, k), sp in spans.items():
            if sp.is_zero():
                continue
            for r in range(max(1, 5 - (i + j + k)), 5):
                ok_d = ok_d and product_subspace(atilde, sp, chain[r - 1]).is_zero()
        jspan = spans[(1, 1, 1)]
        ja = product_subspace(atilde, jspan, chain[0])
        ok_d = ok_d and product_subspace(atilde, ja, chain[0]).is_zero()
    report(5, ok_d and t_d.elapsed < 60.0,
           "part D: all Jacobian-span vanishing conditions (i+j+k >= 5, products, (JA)A)",
           t_d.elapsed)

    with timer() as t_e:
        jspan = jacobian_span(atilde, chain[0], chain[0], chain[0])
        ok_e = not jspan.is_zero() and product_subspace(atilde, jspan, jspan).is_zero()
    report(5, ok_e and t_e.elapsed < 60.0, "part E: J(A,A,A)^2 = 0", t_e.elapsed)


def test_criterion_06_fourth_power_in_kernel(atilde):
    with timer() as t:
        chain = power_chain(atilde, 4)
        kernel = lie_kernel(atilde)
        ok = chain[3].dim == 1 and kernel.contains_subspace(chain[3])
    report(6, ok and t.elapsed < 1.0, "A^4 contained in the Lie kernel", t.elapsed)


def test_criterion_07_three_generated(atilde):
    eq4 = ident("first_type_4")
    with timer() as t:
        ok = True
        for subset in combinations(range(4), 3):
            _, restricted = subalgebra_generate(
                atilde, [atilde.basis_element(i) for i in subset]
            )
            ok = ok and check_identity(restricted, eq4).ok
        rng = random.Random(0)
        for _ in range(50):
            gens = [random_element(atilde, rng) for _ in range(3)]
            _, restricted = subalgebra_generate(atilde, gens)
            ok = ok and check_identity(restricted, eq4).ok
    report(7, ok and t.elapsed < 120.0,
           "all 3-generated subalgebras (4 subsets + 50 seeded triples) satisfy first_type_4",
           t.elapsed)


def _first_type_three_ways(algebra):
    eq1 = check_identity(algebra, ident("first_type_1")).ok
    eq2 = check_identity(algebra, ident("first_type_2")).ok
    malcev = check_identity(algebra, ident("malcev")).ok
    eq4 = check_identity(algebra, ident("first_type_4")).ok
    eq5 = check_identity(algebra, ident("first_type_5")).ok
    return (eq1 and eq2, malcev and eq4, malcev and eq5), malcev


def test_criterion_08_first_type_equivalences(animals):
    with timer() as t:
        ok = True
        for name, algebra in animals.items():
            ways, malcev = _first_type_three_ways(algebra)
            ok = ok and len(set(ways)) == 1
            if ways[0]:
                ok = (
                    ok
                    and malcev
                    and check_identity(algebra, ident("second_type_3a")).ok
                    and check_identity(algebra, ident("second_type_3b")).ok
                )
    report(8, ok and t.elapsed < 120.0,
           "first-type characterizations agree on the zoo; defining pair implies Malcev + second type",
           t.elapsed)


SAGLE = ("malcev_linear", "sagle_2_14", "sagle_2_15", "jacobian_shift_6")


def test_criterion_09_sagle_regression(animals):
    with timer() as t:
        ok = True
        malcev_members = []
        for name, algebra in animals.items():
            if name == "free_3_5":
                continue
            if check_identity(algebra, ident("malcev")).ok:
                malcev_members.append(name)
                for sagle_name in SAGLE:
                    ok = ok and check_identity(algebra, ident(sagle_name)).ok
        ok = ok and "octonion_malcev" in malcev_members
        free35 = animals["free_3_5"]
        for sagle_name in SAGLE:
            rep = check_identity(free35, ident(sagle_name))
            ok = ok and rep.status == "fails" and rep.counterexample is not None
    report(9, ok and t.elapsed < 120.0,
           "the four Malcev-theorem identities hold on every Malcev zoo member "
           "and fail on free(3,5) with witnesses", t.elapsed)


@pytest.mark.xfail(
    strict=True,
    reason="spec defect: free(3,3) truncates every 3-fold product, so it is a "
    "2-step nilpotent Lie algebra and the four identities hold there "
    "vacuously; they cannot fail as the criterion literally states "
    "(see the regression on free(3,5) instead)",
)
def test_criterion_09_literal_free_3_3(animals):
    free33 = animals["free_3_3"]
    assert any(not check_identity(free33, ident(name)).ok for name in SAGLE)


def test_criterion_10_semiprime_witness(atilde, animals):
    with timer() as t:
        witness = semiprime_witness(atilde)
        ok = witness is not None and witness.dim > 0
        ok = ok and product_subspace(atilde, witness, witness).is_zero()
        for name in ("abelian_3", "cross_product", "heisenberg", "free_2_3", "free_3_3"):
            ok = ok and semiprime_witness(animals[name]) is None
    report(10, ok and t.elapsed < 10.0,
           "nonzero square-zero witness ideal on the 23-dim example; none on Lie members",
           t.elapsed)


def test_criterion_11_oracle_crosscheck(animals):
    with timer() as t:
        ok = True
        pairs = 0
        for name, entry in CATALOG.items():
            if entry.identity.is_multilinear:
                continue
            for zoo_name, algebra in animals.items():
                exhaustive = check_identity(algebra, entry.identity).ok
                rng = random.Random(f"0:crosscheck:{name}:{zoo_name}")
                all_zero, _ = random_substitutions_vanish(
                    algebra, entry.identity, rng, samples=100
                )
                ok = ok and (all_zero == exhaustive)
                pairs += 1
        ok = ok and pairs >= 3 * len(animals)
    report(11, ok and t.elapsed < 120.0,
           f"{pairs} (identity, algebra) pairs: 100 seeded substitutions agree with "
           "the exhaustive linearized verdict", t.elapsed)


def test_criterion_12_determinism(tmp_path):
    with timer() as t:
        cmd = [sys.executable, "-m", "malcevlab.cli", "verify-paper", "--seed", "0"]
        first = subprocess.run(cmd, capture_output=True, text=True, timeout=1200)
        second = subprocess.run(cmd, capture_output=True, text=True, timeout=1200)
        ok = (
            first.returncode == 0
            and second.returncode == 0
            and first.stdout == second.stdout
            and len(first.stdout) > 0
        )
    report(12, ok, "two verify-paper --seed 0 runs exit 0 with byte-identical reports",
           t.elapsed)
