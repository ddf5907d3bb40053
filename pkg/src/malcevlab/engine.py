"""Exhaustive identity checking over basis tuples.

A multilinear identity vanishes for all elements iff it vanishes on every
tuple of basis elements, so exhaustive enumeration of the dim^n basis
tuples is a complete decision procedure.  Non-multilinear identities are
first fully linearized, which is an equivalent identity over the rationals.

The evaluator compiles the identity's terms into a shared-subterm DAG and
hoists each subterm to the outermost enumeration depth at which all its
variables are bound, so e.g. in a 5-variable check the subterm x1*x2 is
recomputed dim^2 times rather than dim^5 times.  Values are sparse
coefficient dicts; with integral structure constants every intermediate
stays a Python int, which is what keeps the 23^5-tuple checks affordable.

Enumeration is lexicographic; parallel runs partition the first axis and
merge by lexicographically smallest counterexample, so reports do not
depend on the number of jobs.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Algebra, Element
from .identities import Identity, IdentityError, linearize
from .rationals import normalize


@dataclass(frozen=True)
class Counterexample:
    indices: tuple            # basis index per variable of the checked form
    residual: Element         # nonzero value of lhs - rhs at those indices
    transposition: tuple | None = None  # (i, i+1) for skew-symmetry failures

    def describe(self, algebra: Algebra) -> str:
        labels = ", ".join(algebra.labels[i] for i in self.indices)
        text = f"({labels}) -> {algebra.format_element(self.residual)}"
        if self.transposition is not None:
            i, j = self.transposition
            text += f" under swap of arguments {i + 1},{j + 1}"
        return text


@dataclass(frozen=True)
class CheckReport:
    status: str               # "holds" | "fails"
    identity: Identity        # the form actually evaluated (post-linearization)
    tuples_checked: int       # lexicographic rank of the decision point
    counterexample: Counterexample | None = None

    @property
    def ok(self) -> bool:
        return self.status == "holds"


def _compile(terms, variables):
    """Build the shared-subterm evaluation program.

    Returns (n_slots, var_slot_per_axis, muls_by_depth, weighted) where
    muls_by_depth[d] lists (slot, left, right) products computable once the
    d-th variable is bound.
    """
    axis = {v: i for i, v in enumerate(variables)}
    n_vars = len(variables)
    interned: dict = {}
    exprs: list = []   # ('var', axis) or ('mul', l, r)
    depth: list = []

    def intern(tree):
        if isinstance(tree, str):
            key = ("v", axis[tree])
        else:
            l = intern(tree[0])
            r = intern(tree[1])
            key = ("m", l, r)
        slot = interned.get(key)
        if slot is None:
            slot = len(exprs)
            interned[key] = slot
            if key[0] == "v":
                exprs.append(("var", key[1]))
                depth.append(key[1])
            else:
                exprs.append(("mul", key[1], key[2]))
                depth.append(max(depth[key[1]], depth[key[2]]))
        return slot

    weighted = tuple((coeff, intern(tree)) for coeff, tree in terms)
    var_slot = [None] * n_vars
    muls_by_depth = [[] for _ in range(n_vars)]
    for slot, expr in enumerate(exprs):
        if expr[0] == "var":
            var_slot[expr[1]] = slot
        else:
            muls_by_depth[depth[slot]].append((slot, expr[1], expr[2]))
    return len(exprs), var_slot, [tuple(m) for m in muls_by_depth], weighted


def _scan(algebra, program, n_vars, first_indices, collect):
    """Evaluate the program over basis tuples.

    With collect=None, stops at the first tuple with nonzero residual and
    returns (indices, residual_dict) or None.  With a dict, stores every
    nonzero residual keyed by tuple and returns None.
    """
    n_slots, var_slot, muls_by_depth, weighted = program
    values = [None] * n_slots
    idx = [0] * n_vars
    dim = algebra.dim
    mul = algebra.multiply_sparse
    last = n_vars - 1

    def run(d, todo):
        vs = var_slot[d]
        my_muls = muls_by_depth[d]
        for i in todo:
            idx[d] = i
            if vs is not None:
                values[vs] = {i: 1}
            for slot, l, r in my_muls:
                values[slot] = mul(values[l], values[r])
            if d == last:
                acc: dict = {}
                for coeff, slot in weighted:
                    for k, x in values[slot].items():
                        w = acc.get(k)
                        if w is None:
                            acc[k] = coeff * x
                        else:
                            w = w + coeff * x
                            if w:
                                acc[k] = w
                            else:
                                del acc[k]
                if acc:
                    if collect is None:
                        return tuple(idx), acc
                    collect[tuple(idx)] = acc
            else:
                hit = run(d + 1, range(dim))
                if hit is not None:
                    return hit
        return None

    return run(0, first_indices)


def _sparse_element(algebra, vec: dict) -> Element:
    coords = [0] * algebra.dim
    for k, c in vec.items():
        coords[k] = c
    return Element(coords)


def _rank(indices, dim) -> int:
    r = 0
    for i in indices:
        r = r * dim + i
    return r


# Worker-side state, installed once per process by the pool initializer so
# the algebra and program are pickled per worker, not per task.
_WORKER_STATE = None


def _init_worker(algebra, program, n_vars):
    global _WORKER_STATE
    _WORKER_STATE = (algebra, program, n_vars)


def _scan_index(i):
    algebra, program, n_vars = _WORKER_STATE
    return _scan(algebra, program, n_vars, (i,), None)


def _collect_index(i):
    algebra, program, n_vars = _WORKER_STATE
    found: dict = {}
    _scan(algebra, program, n_vars, (i,), found)
    return found


def _pool(algebra, program, n_vars, jobs):
    return multiprocessing.get_context("fork").Pool(
        jobs, initializer=_init_worker, initargs=(algebra, program, n_vars)
    )


# below this many tuples, pool startup costs more than the whole scan
_PARALLEL_THRESHOLD = 100_000


def _use_pool(dim: int, n_vars: int, jobs: int) -> bool:
    return jobs > 1 and dim >= jobs and dim ** n_vars >= _PARALLEL_THRESHOLD


def check_identity(algebra: Algebra, ident: Identity, jobs: int = 1) -> CheckReport:
    """Decide an identity on an algebra by exhaustive basis-tuple evaluation.

    Multilinear identities are checked directly (complete by bilinearity);
    anything else is fully linearized first.  The report carries the form
    that was actually evaluated, the lexicographically first counterexample
    if any, and the number of tuples up to the decision point.
    """
    checked = ident if ident.is_multilinear else linearize(ident)
    terms = checked.residual_terms()
    n_vars = len(checked.variables)
    dim = algebra.dim
    total = dim ** n_vars
    if not terms or dim == 0:
        return CheckReport("holds", checked, total)
    program = _compile(terms, checked.variables)

    if _use_pool(dim, n_vars, jobs):
        hit = None
        # ordered consumption: the first hit seen is the lexicographically
        # smallest, and breaking lets the context manager kill the rest
        with _pool(algebra, program, n_vars, jobs) as pool:
            for result in pool.imap(_scan_index, range(dim)):
                if result is not None:
                    hit = result
                    break
    else:
        hit = _scan(algebra, program, n_vars, range(dim), None)

    if hit is None:
        return CheckReport("holds", checked, total)
    indices, residual = hit
    witness = Counterexample(indices, _sparse_element(algebra, residual))
    return CheckReport("fails", checked, _rank(indices, dim) + 1, witness)


def check_skew_symmetric(algebra: Algebra, map_ident: Identity, jobs: int = 1) -> CheckReport:
    """Verify a multilinear map is skew-symmetric under adjacent swaps.

    For every basis n-tuple t and every transposition (i, i+1) the value at
    the swapped tuple must be the negation of the value at t.  The map is
    evaluated once per tuple with only nonzero values retained; every
    violating (tuple, transposition) pair has at least one nonzero side, so
    scanning the nonzero set finds all violations.  The reported one is the
    first in lexicographic (tuple, transposition) order.
    """
    if not map_ident.is_multilinear:
        raise IdentityError(f"{map_ident.name}: skew check requires a multilinear map")
    terms = map_ident.residual_terms()
    n_vars = len(map_ident.variables)
    dim = algebra.dim
    total = dim ** n_vars
    if not terms or dim == 0 or n_vars < 2:
        return CheckReport("holds", map_ident, total)
    program = _compile(terms, map_ident.variables)

    if _use_pool(dim, n_vars, jobs):
        nonzero: dict = {}
        with _pool(algebra, program, n_vars, jobs) as pool:
            for part in pool.imap_unordered(_collect_index, range(dim)):
                nonzero.update(part)
    else:
        nonzero = {}
        _scan(algebra, program, n_vars, range(dim), nonzero)

    best = None
    for t, value in nonzero.items():
        for ax in range(n_vars - 1):
            swapped = list(t)
            swapped[ax], swapped[ax + 1] = swapped[ax + 1], swapped[ax]
            s = tuple(swapped)
            other = nonzero.get(s, {})
            residual = dict(other)
            for k, c in value.items():
                w = residual.get(k, 0) + c
                if w:
                    residual[k] = w
                else:
                    residual.pop(k, None)
            if residual:
                at = min(t, s)
                key = (at, ax)
                if best is None or key < best[0]:
                    best = (key, residual)
    if best is None:
        return CheckReport("holds", map_ident, total)
    (at, ax), residual = best
    witness = Counterexample(at, _sparse_element(algebra, residual), (ax, ax + 1))
    return CheckReport("fails", map_ident, total, counterexample=witness)


# -- dense evaluation (independent of the compiled path) -------------------


def evaluate_term(algebra: Algebra, tree, assignment: dict) -> Element:
    if isinstance(tree, str):
        return assignment[tree]
    return algebra.multiply(
        evaluate_term(algebra, tree[0], assignment),
        evaluate_term(algebra, tree[1], assignment),
    )


def evaluate_identity(algebra: Algebra, ident: Identity, assignment: dict) -> Element:
    """lhs - rhs at the given variable assignment, via plain Element
    arithmetic.  This is the slow reference path used to re-verify
    counterexamples and to cross-check linearization."""
    out = algebra.zero()
    for coeff, tree in ident.residual_terms():
        out = out + evaluate_term(algebra, tree, assignment).scale(coeff)
    return out


def random_element(algebra: Algebra, rng, num_range: int = 6, den_range: int = 4) -> Element:
    """Seeded random element with small rational coordinates."""
    coords = [
        Fraction(rng.randint(-num_range, num_range), rng.randint(1, den_range))
        for _ in range(algebra.dim)
    ]
    return Element([normalize(c) for c in coords])


def random_substitutions_vanish(algebra: Algebra, ident: Identity, rng, samples: int = 100):
    """Evaluate the identity at seeded random rational points.

    Returns (all_zero, hits) where hits counts nonzero residuals.  For a
    failing identity a random rational substitution is nonzero outside a
    measure-zero set, so this agrees with the exhaustive verdict in
    practice and serves as its cross-check.
    """
    hits = 0
    for _ in range(samples):
        assignment = {v: random_element(algebra, rng) for v in ident.variables}
        if not evaluate_identity(algebra, ident, assignment).is_zero():
            hits += 1
    return hits == 0, hits
