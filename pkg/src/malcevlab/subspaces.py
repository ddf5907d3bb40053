"""Exact subspace calculus: canonical echelon subspaces, products, powers,
the Lie kernel, Jacobian spans, ideal closures, quotients, and generated
subalgebras.

Subspaces are stored as reduced row echelon matrices over the rationals
with no zero rows; that form is unique, so two subspaces are equal iff
their matrices are identical.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import Algebra, DimensionMismatch, Element
from .rationals import normalize


class NotAnIdealError(ValueError):
    """Quotient requested by a subspace that is not an ideal."""

    def __init__(self, row_index: int, basis_index: int, escaping: Element):
        super().__init__(
            f"not an ideal: (row {row_index}) * e_{basis_index} escapes the subspace"
        )
        self.row_index = row_index
        self.basis_index = basis_index
        self.escaping = escaping


class _Echelon:
    """Mutable reduced-row-echelon accumulator."""

    def __init__(self, width: int):
        self.width = width
        self.rows: list[list] = []       # sorted by pivot column
        self.pivots: list[int] = []

    def reduce(self, vec) -> list:
        """Eliminate the pivot coordinates of vec; returns the residual."""
        vec = list(vec)
        for row, p in zip(self.rows, self.pivots):
            c = vec[p]
            if c:
                for k in range(p, self.width):
                    if row[k]:
                        vec[k] -= c * row[k]
        return vec

    def insert(self, vec) -> bool:
        """Add a vector to the span; True if the rank grew."""
        vec = self.reduce(vec)
        pivot = next((k for k, c in enumerate(vec) if c), None)
        if pivot is None:
            return False
        lead = vec[pivot]
        row = [normalize(Fraction(c, 1) / lead) if c else 0 for c in vec]
        row[pivot] = 1
        # clear the new pivot column from existing rows
        for other in self.rows:
            c = other[pivot]
            if c:
                for k in range(pivot, self.width):
                    if row[k]:
                        other[k] = normalize(other[k] - c * row[k])
        at = next((t for t, p in enumerate(self.pivots) if p > pivot), len(self.pivots))
        self.rows.insert(at, row)
        self.pivots.insert(at, pivot)
        return True

    def subspace(self) -> "Subspace":
        return Subspace._make(
            self.width,
            tuple(tuple(normalize(c) for c in row) for row in self.rows),
            tuple(self.pivots),
        )


class Subspace:
    """Canonical echelon-form subspace of Q^ambient_dim."""

    __slots__ = ("ambient_dim", "rows", "pivots")

    def __init__(self, ambient_dim: int, vectors=()):
        ech = _Echelon(ambient_dim)
        for v in vectors:
            ech.insert(_as_coords(v, ambient_dim))
        built = ech.subspace()
        self.ambient_dim = ambient_dim
        self.rows = built.rows
        self.pivots = built.pivots

    @classmethod
    def _make(cls, ambient_dim, rows, pivots) -> "Subspace":
        self = object.__new__(cls)
        self.ambient_dim = ambient_dim
        self.rows = rows
        self.pivots = pivots
        return self

    @property
    def dim(self) -> int:
        return len(self.rows)

    def is_zero(self) -> bool:
        return not self.rows

    def _echelon(self) -> _Echelon:
        ech = _Echelon(self.ambient_dim)
        ech.rows = [list(r) for r in self.rows]
        ech.pivots = list(self.pivots)
        return ech

    def reduce(self, vec) -> list:
        return self._echelon().reduce(_as_coords(vec, self.ambient_dim))

    def contains(self, vec) -> bool:
        return not any(self.reduce(vec))

    def contains_subspace(self, other: "Subspace") -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch()
        ech = self._echelon()
        return all(not any(ech.reduce(list(r))) for r in other.rows)

    def add(self, other: "Subspace") -> "Subspace":
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch()
        ech = self._echelon()
        for r in other.rows:
            ech.insert(list(r))
        return ech.subspace()

    def row_elements(self):
        return [Element(r) for r in self.rows]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.rows))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def _as_coords(vec, width) -> list:
    coords = list(vec.coords) if isinstance(vec, Element) else list(vec)
    if len(coords) != width:
        raise DimensionMismatch()
    return coords


def _sparse(row) -> dict:
    return {i: c for i, c in enumerate(row) if c}


def _jac_sparse(algebra: Algebra, u: dict, v: dict, w: dict) -> dict:
    mul = algebra.multiply_sparse
    out = dict(mul(mul(u, v), w))
    for part in (mul(mul(v, w), u), mul(mul(w, u), v)):
        for k, c in part.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def _dense(vec: dict, width) -> list:
    row = [0] * width
    for k, c in vec.items():
        row[k] = c
    return row


def span(algebra: Algebra, gens) -> Subspace:
    """Canonical subspace spanned by the given elements."""
    return Subspace(algebra.dim, gens)


def full_space(algebra: Algebra) -> Subspace:
    return Subspace(algebra.dim, [algebra.basis_element(i) for i in range(algebra.dim)])


def product_subspace(algebra: Algebra, left: Subspace, right: Subspace) -> Subspace:
    """Span of {uv : u in left, v in right}; spanning-set products suffice
    by bilinearity."""
    if left.ambient_dim != algebra.dim or right.ambient_dim != algebra.dim:
        raise DimensionMismatch()
    ech = _Echelon(algebra.dim)
    lrows = [_sparse(r) for r in left.rows]
    rrows = [_sparse(r) for r in right.rows]
    for u in lrows:
        for v in rrows:
            prod = algebra.multiply_sparse(u, v)
            if prod:
                ech.insert(_dense(prod, algebra.dim))
    return ech.subspace()


def power_chain(algebra: Algebra, k_max: int) -> list:
    """[A^1, ..., A^k_max] with A^k = sum of A^i A^j over i + j = k
    (all association patterns); the chain is descending."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    chain = [full_space(algebra)]
    for k in range(2, k_max + 1):
        ech = _Echelon(algebra.dim)
        for i in range(1, k // 2 + 1):
            left, right = chain[i - 1], chain[k - i - 1]
            for u in (_sparse(r) for r in left.rows):
                for v in (_sparse(r) for r in right.rows):
                    prod = algebra.multiply_sparse(u, v)
                    if prod:
                        ech.insert(_dense(prod, algebra.dim))
        chain.append(ech.subspace())
    return chain


def lie_kernel(algebra: Algebra) -> Subspace:
    """N(A) = {x : J(x, A, A) = 0}, solved as an exact linear system over
    all basis pairs."""
    dim = algebra.dim
    constraints = _Echelon(dim)
    basis = [{i: 1} for i in range(dim)]
    for j in range(dim):
        for k in range(j + 1, dim):
            columns: dict = {}
            for i in range(dim):
                if i == j or i == k:
                    continue  # J with a repeated argument vanishes
                jac = _jac_sparse(algebra, basis[i], basis[j], basis[k])
                for c, val in jac.items():
                    row = columns.get(c)
                    if row is None:
                        row = columns[c] = [0] * dim
                    row[i] = val
            for row in columns.values():
                constraints.insert(row)
            if len(constraints.rows) == dim:
                return Subspace(dim)  # kernel already forced to zero
    return _nullspace(constraints, dim)


def _nullspace(constraints: _Echelon, dim: int) -> Subspace:
    pivot_set = set(constraints.pivots)
    free_cols = [c for c in range(dim) if c not in pivot_set]
    ech = _Echelon(dim)
    for f in free_cols:
        vec = [0] * dim
        vec[f] = 1
        for row, p in zip(constraints.rows, constraints.pivots):
            if row[f]:
                vec[p] = -row[f]
        ech.insert(vec)
    return ech.subspace()


def jacobian_span(algebra: Algebra, u_space: Subspace, v_space: Subspace, w_space: Subspace) -> Subspace:
    """Span of J(u, v, w) over spanning-row triples (sufficient by
    multilinearity)."""
    for s in (u_space, v_space, w_space):
        if s.ambient_dim != algebra.dim:
            raise DimensionMismatch()
    ech = _Echelon(algebra.dim)
    us = [_sparse(r) for r in u_space.rows]
    vs = [_sparse(r) for r in v_space.rows]
    ws = [_sparse(r) for r in w_space.rows]
    for u in us:
        for v in vs:
            for w in ws:
                jac = _jac_sparse(algebra, u, v, w)
                if jac:
                    ech.insert(_dense(jac, algebra.dim))
    return ech.subspace()


def ideal_closure(algebra: Algebra, seed: Subspace) -> Subspace:
    """Smallest subspace containing seed and closed under multiplication by
    the whole algebra; terminates because dimension is bounded."""
    current = seed
    ambient = full_space(algebra)
    while True:
        grown = current.add(product_subspace(algebra, current, ambient))
        if grown == current:
            return current
        current = grown


def quotient_algebra(algebra: Algebra, ideal: Subspace):
    """Quotient by a verified ideal.

    Returns (quotient, project) where the quotient's basis is the set of
    non-pivot coordinates of the ideal's echelon form and project maps
    elements onto quotient coordinates.
    """
    if ideal.ambient_dim != algebra.dim:
        raise DimensionMismatch()
    ech = ideal._echelon()
    for t, row in enumerate(ideal.rows):
        u = _sparse(row)
        for j in range(algebra.dim):
            prod = algebra.multiply_sparse(u, {j: 1})
            if prod and any(ech.reduce(_dense(prod, algebra.dim))):
                raise NotAnIdealError(t, j, algebra._from_sparse(prod))

    pivot_set = set(ideal.pivots)
    complement = [c for c in range(algebra.dim) if c not in pivot_set]
    position = {c: t for t, c in enumerate(complement)}

    def project(element: Element) -> Element:
        residual = ech.reduce(_as_coords(element, algebra.dim))
        return Element([residual[c] for c in complement])

    products: dict = {}
    for a in range(len(complement)):
        for b in range(a + 1, len(complement)):
            prod = algebra.multiply_sparse({complement[a]: 1}, {complement[b]: 1})
            if not prod:
                continue
            residual = ech.reduce(_dense(prod, algebra.dim))
            vec = {position[c]: residual[c] for c in complement if residual[c]}
            if vec:
                products[(a, b)] = vec
    labels = [algebra.labels[c] for c in complement]
    name = f"{algebra.name}/I" if algebra.name else ""
    return Algebra(len(complement), labels, products, name=name), project


def subalgebra_generate(algebra: Algebra, gens):
    """Close the given elements under products.

    Returns (subspace, restricted) where restricted is the generated
    subalgebra as a standalone Algebra over the subspace's echelon rows.
    """
    ech = _Echelon(algebra.dim)
    for g in gens:
        ech.insert(_as_coords(g, algebra.dim))
    while True:
        rows = [_sparse(r) for r in ech.rows]
        grew = False
        for a in range(len(rows)):
            for b in range(a + 1, len(rows)):
                prod = algebra.multiply_sparse(rows[a], rows[b])
                if prod and ech.insert(_dense(prod, algebra.dim)):
                    grew = True
        if not grew:
            break
    sub = ech.subspace()

    m = sub.dim
    products: dict = {}
    for a in range(m):
        for b in range(a + 1, m):
            prod = algebra.multiply_sparse(_sparse(sub.rows[a]), _sparse(sub.rows[b]))
            dense = _dense(prod, algebra.dim)
            coords = {t: dense[p] for t, p in enumerate(sub.pivots) if dense[p]}
            # closure guarantees the product lies in the subspace
            check = list(dense)
            for t, c in coords.items():
                if c:
                    for k, rv in enumerate(sub.rows[t]):
                        if rv:
                            check[k] -= c * rv
            assert not any(check), "generated subspace not closed under products"
            if coords:
                products[(a, b)] = coords
    labels = [algebra.format_element(Element(r), compact=True) for r in sub.rows]
    name = f"{algebra.name}<gen>" if algebra.name else ""
    return sub, Algebra(m, labels, products, name=name)
